//! Derivative-free local minimization used to polish grid minima.

pub(crate) struct NelderMead {
    pub max_iter: usize,
    pub f_tol: f64,
}

impl NelderMead {
    /// Minimizes `f` starting from a simplex around `x0` with edge `step`.
    /// Returns the best point and value found.
    pub fn minimize<F>(&self, f: F, x0: &[f64], step: f64) -> (Vec<f64>, f64)
    where
        F: Fn(&[f64]) -> f64,
    {
        let n = x0.len();
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push((x0.to_vec(), f(x0)));
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += step;
            let v = f(&x);
            simplex.push((x, v));
        }

        for _ in 0..self.max_iter {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let (best, worst) = (simplex[0].1, simplex[n].1);
            if (worst - best).abs() <= self.f_tol {
                break;
            }
            let centroid: Vec<f64> = (0..n)
                .map(|k| simplex[..n].iter().map(|(x, _)| x[k]).sum::<f64>() / n as f64)
                .collect();
            let along = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&simplex[n].0)
                    .map(|(c, w)| c + t * (w - c))
                    .collect()
            };
            let xr = along(-1.0);
            let fr = f(&xr);
            if fr < simplex[0].1 {
                let xe = along(-2.0);
                let fe = f(&xe);
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            } else if fr < simplex[n - 1].1 {
                simplex[n] = (xr, fr);
            } else {
                let xc = if fr < simplex[n].1 { along(-0.5) } else { along(0.5) };
                let fc = f(&xc);
                if fc < simplex[n].1.min(fr) {
                    simplex[n] = (xc, fc);
                } else {
                    let x_best = simplex[0].0.clone();
                    for (x, v) in simplex.iter_mut().skip(1) {
                        for (xi, bi) in x.iter_mut().zip(&x_best) {
                            *xi = bi + 0.5 * (*xi - bi);
                        }
                        *v = f(x);
                    }
                }
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        simplex.swap_remove(0)
    }
}
