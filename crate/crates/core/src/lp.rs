//! Phase-one simplex for small dense feasibility problems `A x = b, x >= 0`.

const PIVOT_EPS: f64 = 1e-12;

/// Returns a nonnegative solution of `a x = b` if the minimal total
/// infeasibility is at most `tol`. Uses Bland's rule, so it terminates on
/// degenerate problems.
pub(crate) fn nonnegative_solution(a: &[Vec<f64>], b: &[f64], tol: f64) -> Option<Vec<f64>> {
    let m = a.len();
    assert_eq!(m, b.len(), "row count mismatch");
    let n = a.first().map_or(0, Vec::len);
    let width = n + m + 1;
    let rhs = n + m;

    let mut t = vec![vec![0.0; width]; m];
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), n, "ragged constraint matrix");
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i][j] = sign * row[j];
        }
        t[i][n + i] = 1.0;
        t[i][rhs] = sign * b[i];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of the artificial-sum objective; z[rhs] holds its negation.
    let mut z = vec![0.0; width];
    for row in &t {
        for j in 0..n {
            z[j] -= row[j];
        }
        z[rhs] -= row[rhs];
    }

    let max_iter = 50 * (n + m).max(1);
    for _ in 0..max_iter {
        let Some(enter) = (0..n + m).find(|&j| z[j] < -PIVOT_EPS) else {
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter] > PIVOT_EPS {
                let ratio = row[rhs] / row[enter];
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((k, best)) => {
                        if ratio < best - PIVOT_EPS
                            || (ratio <= best + PIVOT_EPS && basis[i] < basis[k])
                        {
                            Some((i, ratio))
                        } else {
                            Some((k, best))
                        }
                    }
                };
            }
        }
        let Some((r, _)) = leave else {
            break;
        };
        pivot(&mut t, &mut z, r, enter);
        basis[r] = enter;
    }

    if -z[rhs] > tol {
        return None;
    }
    let mut x = vec![0.0; n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = t[i][rhs].max(0.0);
        }
    }
    let worst = a
        .iter()
        .zip(b)
        .map(|(row, bi)| (row.iter().zip(&x).map(|(p, q)| p * q).sum::<f64>() - bi).abs())
        .fold(0.0, f64::max);
    (worst <= tol.max(1e-9) * 10.0).then_some(x)
}

fn pivot(t: &mut [Vec<f64>], z: &mut [f64], r: usize, c: usize) {
    let p = t[r][c];
    for v in t[r].iter_mut() {
        *v /= p;
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r {
            let f = row[c];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
            }
        }
    }
    let f = z[c];
    for (v, pv) in z.iter_mut().zip(&pivot_row) {
        *v -= f * pv;
    }
}
