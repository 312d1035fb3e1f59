//! Dense complex linear algebra for the small Hermitian operators used by
//! the two-qubit compositions.
//!
//! Two-qubit matrices use the basis order |00⟩, |01⟩, |10⟩, |11⟩, i.e. the
//! first tensor factor (party A) is the most significant index.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hermiticity is checked against this absolute tolerance, scaled by the
/// largest entry magnitude when that exceeds one.
pub const HERMITIAN_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || dim.checked_mul(dim) != Some(entries.len()) {
            return Err(Error::Shape {
                dim,
                len: entries.len(),
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter(
                "matrix entries must be finite".into(),
            ));
        }
        Ok(Self { dim, entries })
    }

    /// Builds a matrix from real rows; convenient for the literal matrices
    /// quoted in the scenarios.
    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self { dim: N, entries }
    }

    pub fn outer(ket: &[Complex64]) -> Self {
        let dim = ket.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for a in ket {
            for b in ket {
                entries.push(a * b.conj());
            }
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Option<Complex64> {
        (row < self.dim && col < self.dim).then(|| self.entries[row * self.dim + col])
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.entries[c * n + r] = self.entries[r * n + c].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i]).sum()
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let d = n * m;
        let mut out = Self::zeros(d);
        for i1 in 0..n {
            for j1 in 0..n {
                let a = self.entries[i1 * n + j1];
                if a == ZERO {
                    continue;
                }
                for i2 in 0..m {
                    for j2 in 0..m {
                        out.entries[(i1 * m + i2) * d + (j1 * m + j2)] =
                            a * other.entries[i2 * m + j2];
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let scale = self.max_abs().max(1.0);
        self.max_abs_diff(&self.adjoint()) <= tol * scale
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        assert!(r < self.dim && c < self.dim, "index ({r}, {c}) out of bounds");
        &self.entries[r * self.dim + c]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.entries[r * n + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    out.entries[r * n + c] += a * rhs.entries[k * n + c];
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|c| {
                    let z = self.entries[r * self.dim + c];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Which tensor factor of a two-qubit operator an operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subsystem {
    A,
    B,
}

/// Self-adjoint complex matrix. Carrier for states, effects and the Pauli
/// operators.
///
/// Serialized as `{"dim": d, "entries": [[re, im], ...]}`, row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OperatorDoc", into = "OperatorDoc")]
pub struct HermitianOperator(ComplexMatrix);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorDoc {
    dim: usize,
    entries: Vec<Complex64>,
}

impl TryFrom<OperatorDoc> for HermitianOperator {
    type Error = Error;

    fn try_from(doc: OperatorDoc) -> Result<Self> {
        HermitianOperator::new(ComplexMatrix::from_entries(doc.dim, doc.entries)?)
    }
}

impl From<HermitianOperator> for OperatorDoc {
    fn from(op: HermitianOperator) -> Self {
        OperatorDoc {
            dim: op.0.dim,
            entries: op.0.entries,
        }
    }
}

impl fmt::Debug for HermitianOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hermitian{:?}", self.0)
    }
}

impl HermitianOperator {
    /// Accepts `m` if it equals its adjoint within [`HERMITIAN_TOL`]; the
    /// stored matrix is the exact Hermitian part ½(M + M†).
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_hermitian(HERMITIAN_TOL) {
            return Err(Error::NotHermitian {
                deviation: m.max_abs_diff(&m.adjoint()),
            });
        }
        Ok(Self::hermitian_part(&m))
    }

    fn hermitian_part(m: &ComplexMatrix) -> Self {
        let adj = m.adjoint();
        Self((m + &adj).scale(Complex64::new(0.5, 0.0)))
    }

    pub fn identity(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(ComplexMatrix::zeros(dim))
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = ComplexMatrix::zeros(n);
        for (i, &x) in diag.iter().enumerate() {
            m.entries[i * n + i] = Complex64::new(x, 0.0);
        }
        Self(m)
    }

    /// Real symmetric literal matrix. Panics if it is not symmetric.
    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        Self::new(ComplexMatrix::from_real_rows(rows)).expect("literal matrix must be symmetric")
    }

    /// Pauli operator σ_i with σ_0 = I.
    pub fn pauli(i: usize) -> Self {
        let e = match i {
            0 => [ONE, ZERO, ZERO, ONE],
            1 => [ZERO, ONE, ONE, ZERO],
            2 => [ZERO, -I, I, ZERO],
            3 => [ONE, ZERO, ZERO, -ONE],
            _ => panic!("Pauli index {i} out of range"),
        };
        Self(ComplexMatrix {
            dim: 2,
            entries: e.to_vec(),
        })
    }

    /// Rank-one projector |ψ⟩⟨ψ| (not normalized).
    pub fn projector(ket: &[Complex64]) -> Self {
        Self(ComplexMatrix::outer(ket))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// Tr[self · other], real for Hermitian arguments.
    pub fn trace_with(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "operator dimension mismatch");
        let n = self.dim();
        let mut acc = 0.0;
        for r in 0..n {
            for c in 0..n {
                // Tr[AB] = Σ A_rc B_cr, and B_cr = conj(B_rc).
                acc += (self.0.entries[r * n + c] * other.0.entries[r * n + c].conj()).re;
            }
        }
        acc
    }

    /// ⟨ψ|self|ψ⟩.
    pub fn expectation(&self, ket: &[Complex64]) -> f64 {
        let n = self.dim();
        assert_eq!(ket.len(), n, "ket dimension mismatch");
        let mut acc = ZERO;
        for (r, kr) in ket.iter().enumerate() {
            let row: Complex64 = self.0.entries[r * n..(r + 1) * n]
                .iter()
                .zip(ket)
                .map(|(w, k)| w * k)
                .sum();
            acc += kr.conj() * row;
        }
        acc.re
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self(self.0.kron(&other.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.scale(Complex64::new(s, 0.0)))
    }

    /// I − self.
    pub fn complement(&self) -> Self {
        &Self::identity(self.dim()) - self
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.0.max_abs_diff(&other.0) <= tol
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0.max_abs_diff(&other.0)
    }

    /// Transpose on one tensor factor of a two-qubit operator.
    pub fn partial_transpose(&self, subsystem: Subsystem) -> Result<Self> {
        self.require_dim(4)?;
        let mut out = ComplexMatrix::zeros(4);
        for i1 in 0..2 {
            for i2 in 0..2 {
                for j1 in 0..2 {
                    for j2 in 0..2 {
                        let (r, c) = match subsystem {
                            Subsystem::A => (j1 * 2 + i2, i1 * 2 + j2),
                            Subsystem::B => (i1 * 2 + j2, j1 * 2 + i2),
                        };
                        out.entries[(i1 * 2 + i2) * 4 + (j1 * 2 + j2)] = self.0.entries[r * 4 + c];
                    }
                }
            }
        }
        Ok(Self(out))
    }

    /// Hilbert–Schmidt coefficients c_ij = Tr[W σ_i⊗σ_j] of a two-qubit
    /// operator, so that W = ¼ Σ c_ij σ_i⊗σ_j.
    pub fn pauli_decompose(&self) -> Result<PauliCoefficients> {
        self.require_dim(4)?;
        let mut c = [[0.0; 4]; 4];
        for (i, row) in c.iter_mut().enumerate() {
            for (j, cij) in row.iter_mut().enumerate() {
                *cij = self.trace_with(&Self::pauli(i).tensor(&Self::pauli(j)));
            }
        }
        Ok(PauliCoefficients(c))
    }

    /// All eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let n = self.dim();
        if n == 1 {
            return vec![self.0.entries[0].re];
        }
        if n == 2 {
            let a = self.0.entries[0].re;
            let d = self.0.entries[3].re;
            let b = self.0.entries[1].norm();
            let mean = 0.5 * (a + d);
            let r = (0.25 * (a - d) * (a - d) + b * b).sqrt();
            return vec![mean - r, mean + r];
        }
        // H = X + iY is unitarily similar to the real symmetric block matrix
        // [[X, -Y], [Y, X]], whose spectrum is that of H with each value doubled.
        let m = 2 * n;
        let mut s = vec![0.0; m * m];
        for r in 0..n {
            for c in 0..n {
                let z = self.0.entries[r * n + c];
                s[r * m + c] = z.re;
                s[(r + n) * m + (c + n)] = z.re;
                s[r * m + (c + n)] = -z.im;
                s[(r + n) * m + c] = z.im;
            }
        }
        let mut all = jacobi_eigenvalues(s, m);
        all.sort_by(f64::total_cmp);
        all.into_iter().step_by(2).collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn is_psd(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }

    pub(crate) fn require_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::UnsupportedDimension {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

impl Add for &HermitianOperator {
    type Output = HermitianOperator;
    fn add(self, rhs: Self) -> HermitianOperator {
        HermitianOperator(&self.0 + &rhs.0)
    }
}

impl Sub for &HermitianOperator {
    type Output = HermitianOperator;
    fn sub(self, rhs: Self) -> HermitianOperator {
        HermitianOperator(&self.0 - &rhs.0)
    }
}

impl Neg for &HermitianOperator {
    type Output = HermitianOperator;
    fn neg(self) -> HermitianOperator {
        self.scale(-1.0)
    }
}

impl std::iter::Sum for HermitianOperator {
    fn sum<It: Iterator<Item = Self>>(mut iter: It) -> Self {
        let first = iter.next().expect("sum of an empty operator sequence");
        iter.fold(first, |acc, x| &acc + &x)
    }
}

/// Cyclic Jacobi rotations on a real symmetric matrix; returns the diagonal
/// once the off-diagonal mass is negligible.
fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    let scale = a.iter().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q] * a[p * n + q])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

/// Real 4×4 table of Hilbert–Schmidt coefficients; index 0 is the identity
/// and 1..=3 are σ_x, σ_y, σ_z.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PauliCoefficients(pub [[f64; 4]; 4]);

impl PauliCoefficients {
    /// ¼(c₀₀ I⊗I + Σ tᵢ σᵢ⊗σᵢ).
    pub fn diagonal(c00: f64, t: [f64; 3]) -> Self {
        let mut c = [[0.0; 4]; 4];
        c[0][0] = c00;
        for i in 0..3 {
            c[i + 1][i + 1] = t[i];
        }
        Self(c)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    /// The diagonal correlations (c_xx, c_yy, c_zz).
    pub fn correlations(&self) -> [f64; 3] {
        [self.0[1][1], self.0[2][2], self.0[3][3]]
    }

    /// `Some(t)` if only c₀₀ and the diagonal correlations are non-zero.
    pub fn pauli_diagonal(&self, tol: f64) -> Option<[f64; 3]> {
        let off = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j)
            .all(|(i, j)| self.0[i][j].abs() <= tol);
        off.then(|| self.correlations())
    }

    pub fn reconstruct(&self) -> HermitianOperator {
        let mut acc = HermitianOperator::zeros(4);
        for i in 0..4 {
            for j in 0..4 {
                let c = self.0[i][j];
                if c != 0.0 {
                    let term = HermitianOperator::pauli(i).tensor(&HermitianOperator::pauli(j));
                    acc = &acc + &term.scale(0.25 * c);
                }
            }
        }
        acc
    }
}

/// Real 3-vector with norm at most one, parametrizing ½(I + m·σ).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct BlochVector([f64; 3]);

/// Norms up to `1 + BLOCH_SLACK` are accepted and rescaled onto the sphere.
pub const BLOCH_SLACK: f64 = 1e-9;

impl BlochVector {
    pub fn new(m: [f64; 3]) -> Result<Self> {
        let norm = (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]).sqrt();
        if !norm.is_finite() || norm > 1.0 + BLOCH_SLACK {
            return Err(Error::InvalidBlochVector { norm });
        }
        if norm > 1.0 {
            return Ok(Self(m.map(|x| x / norm)));
        }
        Ok(Self(m))
    }

    /// Unit vector at polar angle `theta` and azimuth `phi`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self([st * cp, st * sp, ct])
    }

    pub const fn x() -> Self {
        Self([1.0, 0.0, 0.0])
    }
    pub const fn y() -> Self {
        Self([0.0, 1.0, 0.0])
    }
    pub const fn z() -> Self {
        Self([0.0, 0.0, 1.0])
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn negated(&self) -> Self {
        Self(self.0.map(|x| -x))
    }

    /// Polar and azimuthal angles of the direction of `self`.
    pub fn angles(&self) -> (f64, f64) {
        let [x, y, z] = self.0;
        let r = self.norm();
        if r == 0.0 {
            return (0.0, 0.0);
        }
        ((z / r).clamp(-1.0, 1.0).acos(), y.atan2(x))
    }

    /// ½(I + m·σ).
    pub fn density(&self) -> HermitianOperator {
        let [x, y, z] = self.0;
        HermitianOperator(ComplexMatrix {
            dim: 2,
            entries: vec![
                Complex64::new(0.5 * (1.0 + z), 0.0),
                Complex64::new(0.5 * x, -0.5 * y),
                Complex64::new(0.5 * x, 0.5 * y),
                Complex64::new(0.5 * (1.0 - z), 0.0),
            ],
        })
    }
}

impl TryFrom<[f64; 3]> for BlochVector {
    type Error = Error;
    fn try_from(m: [f64; 3]) -> Result<Self> {
        Self::new(m)
    }
}

impl From<BlochVector> for [f64; 3] {
    fn from(b: BlochVector) -> Self {
        b.0
    }
}

pub fn tensor(a: &HermitianOperator, b: &HermitianOperator) -> HermitianOperator {
    a.tensor(b)
}

pub fn partial_transpose(w: &HermitianOperator, subsystem: Subsystem) -> Result<HermitianOperator> {
    w.partial_transpose(subsystem)
}

pub fn pauli_decompose(w: &HermitianOperator) -> Result<PauliCoefficients> {
    w.pauli_decompose()
}

pub fn min_eigenvalue(h: &HermitianOperator) -> f64 {
    h.min_eigenvalue()
}

/// ½(I + m·σ) for a Bloch vector given as raw components.
pub fn bloch_state(m: [f64; 3]) -> Result<HermitianOperator> {
    Ok(BlochVector::new(m)?.density())
}

/// Computational-basis ket |i⟩ in dimension `dim`.
pub fn basis_ket(dim: usize, i: usize) -> Vec<Complex64> {
    let mut v = vec![ZERO; dim];
    v[i] = ONE;
    v
}

pub fn kron_ket(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// Ket of the pure qubit state with unit Bloch vector `m`.
pub fn bloch_ket(m: &BlochVector) -> Vec<Complex64> {
    let (theta, phi) = m.angles();
    vec![
        Complex64::new((0.5 * theta).cos(), 0.0),
        Complex64::from_polar((0.5 * theta).sin(), phi),
    ]
}

/// The Bell states |φ±⟩ = (|00⟩ ± |11⟩)/√2 and |ψ±⟩ = (|01⟩ ± |10⟩)/√2 as
/// density operators.
pub mod bell {
    use super::*;

    fn state(a: usize, b: usize, sign: f64) -> HermitianOperator {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut ket = vec![ZERO; 4];
        ket[a] = Complex64::new(s, 0.0);
        ket[b] = Complex64::new(sign * s, 0.0);
        HermitianOperator::projector(&ket)
    }

    pub fn phi_plus() -> HermitianOperator {
        state(0, 3, 1.0)
    }
    pub fn phi_minus() -> HermitianOperator {
        state(0, 3, -1.0)
    }
    pub fn psi_plus() -> HermitianOperator {
        state(1, 2, 1.0)
    }
    pub fn psi_minus() -> HermitianOperator {
        state(1, 2, -1.0)
    }
}
