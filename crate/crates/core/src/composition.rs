//! Composition rules for two qubits.
//!
//! | rule    | state cone          | effect cone          |
//! |---------|---------------------|----------------------|
//! | Minimal | separable           | POPT                 |
//! | Quantum | PSD                 | PSD                  |
//! | Maximal | POPT                | separable            |
//!
//! POPT (positive on pure tensors) membership is decided numerically by a
//! grid search over pairs of Bloch vectors followed by local refinement.
//! Separability is never decided, only verified from an explicit
//! [`SeparableCertificate`].

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measurement::Measurement;
use crate::nelder_mead::NelderMead;
use crate::operator::{bell, BlochVector, HermitianOperator, PauliCoefficients, Subsystem};
use crate::Settings;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CompositionRule {
    Minimal,
    Maximal,
    Quantum,
}

impl CompositionRule {
    pub const ALL: [CompositionRule; 3] = [Self::Minimal, Self::Quantum, Self::Maximal];

    pub fn name(self) -> &'static str {
        match self {
            Self::Minimal => "minimal",
            Self::Maximal => "maximal",
            Self::Quantum => "quantum",
        }
    }
}

impl std::str::FromStr for CompositionRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "minimal" | "min" => Ok(Self::Minimal),
            "maximal" | "max" => Ok(Self::Maximal),
            "quantum" | "q" => Ok(Self::Quantum),
            other => Err(Error::InvalidParameter(format!("unknown composition rule `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductTerm {
    pub a: HermitianOperator,
    pub b: HermitianOperator,
}

/// Decomposition `Σ_i π_i^A ⊗ π_i^B` with PSD qubit factors.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SeparableCertificate {
    pub terms: Vec<ProductTerm>,
}

impl SeparableCertificate {
    pub fn new(terms: Vec<ProductTerm>) -> Self {
        Self { terms }
    }

    /// Weighted products of pure qubit states `w · ½(I+m·σ) ⊗ ½(I+n·σ)`.
    pub fn from_bloch(terms: &[(f64, BlochVector, BlochVector)]) -> Self {
        Self {
            terms: terms
                .iter()
                .map(|(w, m, n)| ProductTerm {
                    a: m.density().scale(*w),
                    b: n.density(),
                })
                .collect(),
        }
    }

    /// The certified operator `Σ a ⊗ b`.
    pub fn operator(&self) -> Result<HermitianOperator> {
        let mut acc = HermitianOperator::zeros(4);
        for t in &self.terms {
            t.a.require_dim(2)?;
            t.b.require_dim(2)?;
            acc = &acc + &t.a.tensor(&t.b);
        }
        Ok(acc)
    }

    /// Every factor PSD within `tol` and the term sum equal to `target`
    /// within `tol`.
    pub fn verify(&self, target: &HermitianOperator, tol: f64) -> Result<bool> {
        target.require_dim(4)?;
        let sum = self.operator()?;
        let factors_ok = self
            .terms
            .iter()
            .all(|t| t.a.is_psd(tol) && t.b.is_psd(tol));
        Ok(factors_ok && sum.approx_eq(target, tol))
    }
}

/// An operator together with the optional separability certificates some
/// rules require: `certificate` covers the operator itself and
/// `complement_certificate` covers `I − operator`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertifiedOperator {
    pub operator: HermitianOperator,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<SeparableCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement_certificate: Option<SeparableCertificate>,
}

impl CertifiedOperator {
    pub fn plain(operator: HermitianOperator) -> Self {
        Self {
            operator,
            certificate: None,
            complement_certificate: None,
        }
    }

    pub fn with_certificate(operator: HermitianOperator, certificate: SeparableCertificate) -> Self {
        Self {
            operator,
            certificate: Some(certificate),
            complement_certificate: None,
        }
    }

    pub fn effect(
        operator: HermitianOperator,
        certificate: SeparableCertificate,
        complement: SeparableCertificate,
    ) -> Self {
        Self {
            operator,
            certificate: Some(certificate),
            complement_certificate: Some(complement),
        }
    }

    /// Product state ½(I+m·σ) ⊗ ½(I+n·σ) with its one-term certificate.
    pub fn product_state(m: BlochVector, n: BlochVector) -> Self {
        let cert = SeparableCertificate::from_bloch(&[(1.0, m, n)]);
        Self::with_certificate(m.density().tensor(&n.density()), cert)
    }
}

impl From<HermitianOperator> for CertifiedOperator {
    fn from(op: HermitianOperator) -> Self {
        Self::plain(op)
    }
}

/// Result of minimizing `⟨a⊗b|W|a⊗b⟩` over pure product states.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoptVerdict {
    pub member: bool,
    /// The minimizing product pair, reported only for non-members.
    pub witness: Option<(BlochVector, BlochVector)>,
    pub min_value: f64,
    pub minimizer: (BlochVector, BlochVector),
    /// Exact minimum from the Pauli-diagonal closed form, when it applies.
    pub diagonal_min: Option<f64>,
}

fn extended(m: &BlochVector) -> [f64; 4] {
    let [x, y, z] = m.components();
    [1.0, x, y, z]
}

/// `Tr[W (½(I+m·σ) ⊗ ½(I+n·σ))] = ¼ Σ c_ij m̃_i ñ_j` with m̃ = (1, m).
pub fn product_expectation(c: &PauliCoefficients, m: &BlochVector, n: &BlochVector) -> f64 {
    let (mt, nt) = (extended(m), extended(n));
    let acc: f64 = c
        .0
        .iter()
        .zip(mt)
        .map(|(row, mi)| mi * row.iter().zip(nt).map(|(cij, nj)| cij * nj).sum::<f64>())
        .sum();
    0.25 * acc
}

/// Exact pure-tensor minimum of ¼(c₀₀ + Σ tᵢ mᵢ nᵢ): the largest |tᵢ| is
/// attained with anti-aligned (or aligned, for negative tᵢ) unit vectors.
pub fn pauli_diagonal_minimum(c00: f64, t: [f64; 3]) -> (f64, (BlochVector, BlochVector)) {
    let axis = (0..3)
        .max_by(|&a, &b| t[a].abs().total_cmp(&t[b].abs()))
        .unwrap_or(0);
    let mut m = [0.0; 3];
    m[axis] = 1.0;
    let mut n = [0.0; 3];
    n[axis] = if t[axis] >= 0.0 { -1.0 } else { 1.0 };
    let m = BlochVector::new(m).expect("unit axis");
    let n = BlochVector::new(n).expect("unit axis");
    (0.25 * (c00 - t[axis].abs()), (m, n))
}

fn grid_points(density: usize) -> Vec<BlochVector> {
    let mut pts = Vec::with_capacity(density * density);
    for k in 0..density {
        let theta = PI * k as f64 / (density - 1) as f64;
        for l in 0..density {
            let phi = 2.0 * PI * l as f64 / density as f64;
            pts.push(BlochVector::from_angles(theta, phi));
        }
    }
    pts
}

/// Best response on one side: for fixed `v = (v₀, v⃗)` the minimum of
/// `v₀ + v⃗·n` over unit `n` is `v₀ − |v⃗|` at `n = −v⃗/|v⃗|`.
fn best_response(v: [f64; 4], fallback: BlochVector) -> (f64, BlochVector) {
    let norm = (v[1] * v[1] + v[2] * v[2] + v[3] * v[3]).sqrt();
    if norm <= f64::MIN_POSITIVE {
        return (v[0], fallback);
    }
    let n = BlochVector::new([-v[1] / norm, -v[2] / norm, -v[3] / norm]).expect("unit vector");
    (v[0] - norm, n)
}

fn row_contraction(c: &PauliCoefficients, m: &BlochVector) -> [f64; 4] {
    let mt = extended(m);
    let mut v = [0.0; 4];
    for (j, vj) in v.iter_mut().enumerate() {
        *vj = (0..4).map(|i| c.0[i][j] * mt[i]).sum();
    }
    v
}

fn column_contraction(c: &PauliCoefficients, n: &BlochVector) -> [f64; 4] {
    let nt = extended(n);
    let mut u = [0.0; 4];
    for (i, ui) in u.iter_mut().enumerate() {
        *ui = (0..4).map(|j| c.0[i][j] * nt[j]).sum();
    }
    u
}

/// Decides whether `w` is positive on pure tensors.
///
/// Scans a `grid_density × grid_density` (polar × azimuthal) grid on each
/// Bloch sphere, polishes the best pair with Nelder–Mead on the four angles
/// and then with alternating exact best responses. Pauli-diagonal inputs are
/// also checked against the closed-form minimum.
pub fn popt_membership(w: &HermitianOperator, grid_density: usize, tol: f64) -> Result<PoptVerdict> {
    w.require_dim(4)?;
    if grid_density < 2 {
        return Err(Error::InvalidParameter("grid density must be at least 2".into()));
    }
    let c = w.pauli_decompose()?;
    let pts = grid_points(grid_density);

    let mut best = (f64::INFINITY, 0usize, 0usize);
    for (ia, a) in pts.iter().enumerate() {
        let v = row_contraction(&c, a);
        for (ib, b) in pts.iter().enumerate() {
            let [x, y, z] = b.components();
            let val = v[0] + v[1] * x + v[2] * y + v[3] * z;
            if val < best.0 {
                best = (val, ia, ib);
            }
        }
    }
    let (mut m, mut n) = (pts[best.1], pts[best.2]);
    let mut value = 0.25 * best.0;

    let (ta, pa) = m.angles();
    let (tb, pb) = n.angles();
    let objective = |x: &[f64]| {
        product_expectation(
            &c,
            &BlochVector::from_angles(x[0], x[1]),
            &BlochVector::from_angles(x[2], x[3]),
        )
    };
    let nm = NelderMead {
        max_iter: 2000,
        f_tol: 1e-15,
    };
    let step = PI / (grid_density - 1) as f64;
    let (x, v) = nm.minimize(objective, &[ta, pa, tb, pb], step);
    if v < value {
        value = v;
        m = BlochVector::from_angles(x[0], x[1]);
        n = BlochVector::from_angles(x[2], x[3]);
    }

    for _ in 0..200 {
        let start = value;
        let (vn, n_new) = best_response(row_contraction(&c, &m), n);
        if 0.25 * vn < value {
            n = n_new;
            value = 0.25 * vn;
        }
        let (vm, m_new) = best_response(column_contraction(&c, &n), m);
        if 0.25 * vm < value {
            m = m_new;
            value = 0.25 * vm;
        }
        if value >= start - 1e-17 {
            break;
        }
    }

    let diagonal_min = c.pauli_diagonal(1e-12).map(|t| {
        let (exact, pair) = pauli_diagonal_minimum(c.get(0, 0), t);
        if exact < value {
            value = exact;
            (m, n) = pair;
        }
        exact
    });

    let member = value >= -tol;
    Ok(PoptVerdict {
        member,
        witness: (!member).then_some((m, n)),
        min_value: value,
        minimizer: (m, n),
        diagonal_min,
    })
}

fn require_unit_trace(w: &HermitianOperator, tol: f64) -> Result<()> {
    let tr = w.trace();
    if (tr - 1.0).abs() > tol {
        return Err(Error::InvalidParameter(format!(
            "a normalized state needs unit trace, got {tr}"
        )));
    }
    Ok(())
}

/// Normalized-state membership under `rule`. The minimal rule refuses to
/// decide separability and only verifies an attached certificate.
pub fn is_state(w: &CertifiedOperator, rule: CompositionRule, settings: &Settings) -> Result<bool> {
    let op = &w.operator;
    op.require_dim(4)?;
    require_unit_trace(op, settings.tol)?;
    match rule {
        CompositionRule::Quantum => Ok(op.is_psd(settings.tol)),
        CompositionRule::Maximal => {
            Ok(popt_membership(op, settings.grid_density, settings.tol)?.member)
        }
        CompositionRule::Minimal => {
            let cert = w
                .certificate
                .as_ref()
                .ok_or(Error::CertificateRequired("minimal-composition states"))?;
            cert.verify(op, settings.tol)
        }
    }
}

/// Effect membership under `rule`: both `E` and `I − E` must lie in the
/// rule's effect cone.
pub fn is_effect(e: &CertifiedOperator, rule: CompositionRule, settings: &Settings) -> Result<bool> {
    let op = &e.operator;
    op.require_dim(4)?;
    let complement = op.complement();
    match rule {
        CompositionRule::Quantum => Ok(op.is_psd(settings.tol) && complement.is_psd(settings.tol)),
        CompositionRule::Minimal => {
            let (g, tol) = (settings.grid_density, settings.tol);
            Ok(popt_membership(op, g, tol)?.member && popt_membership(&complement, g, tol)?.member)
        }
        CompositionRule::Maximal => {
            let (Some(cert), Some(comp)) = (&e.certificate, &e.complement_certificate) else {
                return Err(Error::CertificateRequired(
                    "maximal-composition effects and their complements",
                ));
            };
            Ok(cert.verify(op, settings.tol)? && comp.verify(&complement, settings.tol)?)
        }
    }
}

/// Elements valid under `rule` and summing to the identity.
pub fn is_measurement(
    m: &Measurement<CertifiedOperator>,
    rule: CompositionRule,
    settings: &Settings,
) -> Result<bool> {
    if m.is_empty() {
        return Ok(false);
    }
    for e in m.iter() {
        if !is_effect(e, rule, settings)? {
            return Ok(false);
        }
    }
    let sum: HermitianOperator = m.iter().map(|e| e.operator.clone()).sum();
    Ok(sum.approx_eq(&HermitianOperator::identity(4), settings.tol))
}

fn two_outcome(e: CertifiedOperator) -> Measurement<CertifiedOperator> {
    let complement = CertifiedOperator {
        operator: e.operator.complement(),
        certificate: e.complement_certificate.clone(),
        complement_certificate: e.certificate.clone(),
    };
    Measurement::new(vec![e, complement])
}

/// The three two-outcome measurements `{E_j, I − E_j}` of the minimal
/// composition strategy.
///
/// `E₁ = ½(I⊗I + X⊗X + Z⊗Z)` and `E₂ = ½(I⊗I + X⊗X − Z⊗Z)` are POPT but
/// not PSD; `E₃ = I ⊗ ½(I + Z)` reads the second qubit in the Z basis. On
/// a product state `Tr[E_j ρ_mn] = ½(1 + m_x n_x ± m_z n_z)`.
pub fn min_composition_measurements() -> [Measurement<CertifiedOperator>; 3] {
    let e1 = HermitianOperator::from_real_rows([
        [1.0, 0.0, 0.0, 0.5],
        [0.0, 0.0, 0.5, 0.0],
        [0.0, 0.5, 0.0, 0.0],
        [0.5, 0.0, 0.0, 1.0],
    ]);
    let e2 = HermitianOperator::from_real_rows([
        [0.0, 0.0, 0.0, 0.5],
        [0.0, 1.0, 0.5, 0.0],
        [0.0, 0.5, 1.0, 0.0],
        [0.5, 0.0, 0.0, 0.0],
    ]);
    let (z, mz) = (BlochVector::z(), BlochVector::z().negated());
    let e3 = CertifiedOperator::effect(
        HermitianOperator::identity(2).tensor(&z.density()),
        SeparableCertificate::from_bloch(&[(1.0, z, z), (1.0, mz, z)]),
        SeparableCertificate::from_bloch(&[(1.0, z, mz), (1.0, mz, mz)]),
    );
    [
        two_outcome(CertifiedOperator::plain(e1)),
        two_outcome(CertifiedOperator::plain(e2)),
        two_outcome(e3),
    ]
}

/// Product encodings for the three-bit minimal-composition strategy, indexed
/// by the input string with the first bit most significant:
/// |+⟩|+⟩, |−⟩|−⟩, |0⟩|0⟩, |1⟩|1⟩, |1⟩|0⟩, |0⟩|1⟩, |+⟩|−⟩, |−⟩|+⟩.
pub fn min_composition_encodings() -> Vec<CertifiedOperator> {
    let (p, m) = (BlochVector::x(), BlochVector::x().negated());
    let (zero, one) = (BlochVector::z(), BlochVector::z().negated());
    [
        (p, p),
        (m, m),
        (zero, zero),
        (one, one),
        (one, zero),
        (zero, one),
        (p, m),
        (m, p),
    ]
    .into_iter()
    .map(|(a, b)| CertifiedOperator::product_state(a, b))
    .collect()
}

/// Correlation measurement `{½(I + σ⊗σ), ½(I − σ⊗σ)}` along one Pauli axis,
/// each element certified as a sum of two product projectors.
pub fn correlation_measurement(axis: usize) -> Measurement<CertifiedOperator> {
    let dir = match axis {
        1 => BlochVector::x(),
        2 => BlochVector::y(),
        3 => BlochVector::z(),
        _ => panic!("Pauli axis must be 1, 2 or 3"),
    };
    let neg = dir.negated();
    let sigma = HermitianOperator::pauli(axis);
    let corr = sigma.tensor(&sigma);
    let id = HermitianOperator::identity(4);
    let same = SeparableCertificate::from_bloch(&[(1.0, dir, dir), (1.0, neg, neg)]);
    let opposite = SeparableCertificate::from_bloch(&[(1.0, dir, neg), (1.0, neg, dir)]);
    let c = CertifiedOperator::effect((&id + &corr).scale(0.5), same.clone(), opposite.clone());
    let ac = CertifiedOperator::effect((&id - &corr).scale(0.5), opposite, same);
    Measurement::with_labels(vec![c, ac], vec!["c".into(), "ac".into()])
}

/// The XX, YY and ZZ correlation measurements.
pub fn correlation_measurements() -> [Measurement<CertifiedOperator>; 3] {
    [1, 2, 3].map(correlation_measurement)
}

/// Eight POPT encodings whose correlations (c_xx, c_yy, c_zz) run through
/// all sign patterns, indexed so that bit k is 0 exactly when the k-th
/// correlation is +1: Γ(φ⁺), ψ⁺, φ⁺, Γ(ψ⁺), φ⁻, Γ(ψ⁻), Γ(φ⁻), ψ⁻, where Γ is
/// the partial transpose on B.
pub fn pauli_sign_encodings() -> Vec<HermitianOperator> {
    let gamma = |w: HermitianOperator| {
        w.partial_transpose(Subsystem::B)
            .expect("Bell states are two-qubit operators")
    };
    vec![
        gamma(bell::phi_plus()),
        bell::psi_plus(),
        bell::phi_plus(),
        gamma(bell::psi_plus()),
        bell::phi_minus(),
        gamma(bell::psi_minus()),
        gamma(bell::phi_minus()),
        bell::psi_minus(),
    ]
}
