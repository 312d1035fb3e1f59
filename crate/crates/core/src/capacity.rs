//! Perfect distinguishability, information capacity and information
//! dimension, and a checker for the trace accounting that bounds the number
//! of perfectly distinguishable states of `k` composed `d`-level systems by
//! `d^k`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::composition::{is_effect, is_state, popt_membership, CertifiedOperator, CompositionRule};
use crate::error::{Error, Result};
use crate::gpt::{GptSystem, GptVector};
use crate::lp::nonnegative_solution;
use crate::measurement::Measurement;
use crate::operator::{kron_ket, HermitianOperator};
use crate::Settings;

/// Largest number of extremal states for which subsets are enumerated.
pub const MAX_EXHAUSTIVE_STATES: usize = 16;

/// Candidate states to be perfectly distinguished.
#[derive(Clone, Debug, PartialEq)]
pub enum DistinguishabilityInstance {
    /// A polytopic system; the measurement is searched for by linear
    /// programming.
    Polytope {
        system: GptSystem,
        states: Vec<GptVector>,
    },
    /// Two qubits under a composition rule; only verification of a proposed
    /// measurement is supported.
    Composite {
        rule: CompositionRule,
        states: Vec<CertifiedOperator>,
        measurement: Option<Measurement<CertifiedOperator>>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum DistinguishingMeasurement {
    Polytope(Measurement<GptVector>),
    Composite(Measurement<CertifiedOperator>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Distinguishability {
    pub distinguishable: bool,
    pub measurement: Option<DistinguishingMeasurement>,
}

pub fn perfectly_distinguishable(
    inst: &DistinguishabilityInstance,
    settings: &Settings,
) -> Result<Distinguishability> {
    match inst {
        DistinguishabilityInstance::Polytope { system, states } => {
            let m = distinguishing_measurement(system, states, settings.tol)?;
            Ok(Distinguishability {
                distinguishable: m.is_some(),
                measurement: m.map(DistinguishingMeasurement::Polytope),
            })
        }
        DistinguishabilityInstance::Composite {
            rule,
            states,
            measurement,
        } => {
            let Some(m) = measurement else {
                return Err(Error::UnsupportedOracle(
                    "composite systems support verification of a proposed measurement only".into(),
                ));
            };
            let ok = verify_distinguishing_measurement(*rule, states, m, settings)?;
            Ok(Distinguishability {
                distinguishable: ok,
                measurement: ok.then(|| DistinguishingMeasurement::Composite(m.clone())),
            })
        }
    }
}

/// Searches for effects `E_i = Σ_r c_ir f_r` (`f_r` the extremal effect rays,
/// `c_ir >= 0`) with `Σ_i E_i = u` and `E_i·ω_j = δ_ij`.
pub fn distinguishing_measurement(
    system: &GptSystem,
    states: &[GptVector],
    tol: f64,
) -> Result<Option<Measurement<GptVector>>> {
    if states.is_empty() {
        return Err(Error::InvalidParameter("candidate list is empty".into()));
    }
    for (i, w) in states.iter().enumerate() {
        if !system.is_valid_state_tol(w, tol) {
            return Err(Error::InvalidParameter(format!(
                "candidate {i} is not a state of {}",
                system.name()
            )));
        }
    }
    let rays = system.extremal_effects();
    let (m, r) = (states.len(), rays.len());
    if r == 0 {
        return Ok(None);
    }
    let var = |i: usize, ray: usize| i * r + ray;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let unit = system.unit_effect();
    for k in 0..3 {
        let mut row = vec![0.0; m * r];
        for i in 0..m {
            for (ray, f) in rays.iter().enumerate() {
                row[var(i, ray)] = f.coords[k];
            }
        }
        a.push(row);
        b.push(unit.coords[k]);
    }
    for i in 0..m {
        for (j, w) in states.iter().enumerate() {
            let mut row = vec![0.0; m * r];
            for (ray, f) in rays.iter().enumerate() {
                row[var(i, ray)] = f.dot(w);
            }
            a.push(row);
            b.push(if i == j { 1.0 } else { 0.0 });
        }
    }
    let Some(x) = nonnegative_solution(&a, &b, tol) else {
        return Ok(None);
    };
    let effects = (0..m)
        .map(|i| {
            rays.iter()
                .enumerate()
                .fold(GptVector::effect([0.0; 3]), |acc, (ray, f)| {
                    acc + f.scale(x[var(i, ray)])
                })
        })
        .collect();
    Ok(Some(Measurement::new(effects)))
}

/// Checks a proposed measurement against composite candidates: every state
/// and effect valid under `rule`, effects summing to the identity, and
/// `Tr[E_i W_j] = δ_ij`.
pub fn verify_distinguishing_measurement(
    rule: CompositionRule,
    states: &[CertifiedOperator],
    measurement: &Measurement<CertifiedOperator>,
    settings: &Settings,
) -> Result<bool> {
    if states.is_empty() {
        return Err(Error::InvalidParameter("candidate list is empty".into()));
    }
    if measurement.len() != states.len() {
        return Ok(false);
    }
    for w in states {
        if !is_state(w, rule, settings)? {
            return Ok(false);
        }
    }
    for e in measurement.iter() {
        if !is_effect(e, rule, settings)? {
            return Ok(false);
        }
    }
    let sum: HermitianOperator = measurement.iter().map(|e| e.operator.clone()).sum();
    if !sum.approx_eq(&HermitianOperator::identity(4), settings.tol) {
        return Ok(false);
    }
    for (i, e) in measurement.iter().enumerate() {
        for (j, w) in states.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            if (e.operator.trace_with(&w.operator) - want).abs() > settings.tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn subset_states(system: &GptSystem, mask: u32) -> Vec<GptVector> {
    system
        .extremal_states()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, w)| *w)
        .collect()
}

fn require_enumerable(system: &GptSystem) -> Result<usize> {
    let n = system.extremal_states().len();
    if n > MAX_EXHAUSTIVE_STATES {
        return Err(Error::UnsupportedOracle(format!(
            "{} has {n} extremal states; exhaustive search supports at most {MAX_EXHAUSTIVE_STATES}",
            system.name()
        )));
    }
    Ok(n)
}

/// Size of the largest set of extremal states distinguishable by a single
/// measurement.
///
/// Grows candidate sets one state at a time and only extends sets all of
/// whose one-smaller subsets were distinguishable.
pub fn information_capacity(system: &GptSystem, tol: f64) -> Result<usize> {
    let n = require_enumerable(system)?;
    let mut good: Vec<u32> = (0..n as u32).map(|i| 1 << i).collect();
    let mut size = 1;
    loop {
        let mut next: Vec<u32> = Vec::new();
        for &set in &good {
            let top = 32 - set.leading_zeros();
            for extra in top..n as u32 {
                let cand = set | (1 << extra);
                let subsets_ok = (0..n as u32)
                    .filter(|i| cand & (1 << i) != 0)
                    .all(|i| good.binary_search(&(cand & !(1 << i))).is_ok());
                if subsets_ok
                    && distinguishing_measurement(system, &subset_states(system, cand), tol)?.is_some()
                {
                    next.push(cand);
                }
            }
        }
        if next.is_empty() {
            return Ok(size);
        }
        next.sort_unstable();
        next.dedup();
        good = next;
        size += 1;
    }
}

/// Size of the largest set of extremal states that are distinguishable
/// pairwise.
pub fn information_dimension(system: &GptSystem, tol: f64) -> Result<usize> {
    let n = require_enumerable(system)?;
    let mut adjacent = vec![0u32; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let pair = [system.state(i), system.state(j)];
            if distinguishing_measurement(system, &pair, tol)?.is_some() {
                adjacent[i] |= 1 << j;
                adjacent[j] |= 1 << i;
            }
        }
    }
    let best = (1u32..(1u32 << n))
        .filter(|&set| {
            (0..n).all(|i| set & (1 << i) == 0 || (set & !(1 << i)) & !adjacent[i] == 0)
        })
        .map(u32::count_ones)
        .max()
        .unwrap_or(0);
    Ok(best as usize)
}

/// Classical capacity bound of `k` composed `d`-level quantum systems, with
/// capacity `d^k` at every `k` and hence `log₂ d` bits per system.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolevoBound {
    pub d: usize,
    pub bits_per_system: f64,
    /// The regularized capacity equals `log₂ 𝓘` only when the information
    /// capacity is additive; that is assumed, not proven, here.
    pub additivity_assumed: bool,
}

impl HolevoBound {
    /// `d^k`, the number of perfectly distinguishable states of `k` systems.
    pub fn capacity_states(&self, k: u32) -> Result<u64> {
        (self.d as u64)
            .checked_pow(k)
            .ok_or_else(|| Error::InvalidParameter(format!("{}^{k} overflows", self.d)))
    }

    pub fn bits_for(&self, k: u32) -> f64 {
        k as f64 * self.bits_per_system
    }
}

pub fn holevo_capacity_bound(d: usize) -> Result<HolevoBound> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("local dimension must be at least 2, got {d}")));
    }
    Ok(HolevoBound {
        d,
        bits_per_system: (d as f64).log2(),
        additivity_assumed: true,
    })
}

/// States fed to the accounting checker. Minimal compositions use pure
/// product states given by their local kets; maximal compositions use POPT
/// operators.
#[derive(Clone, Debug, PartialEq)]
pub enum AccountingStates {
    Product(Vec<Vec<Vec<Complex64>>>),
    Popt(Vec<HermitianOperator>),
}

/// Every trace in the chain `d^k = Σ Tr E_i = Σ Tr[E_i W_i] + Σ Tr[E_i C_i]`,
/// where `C_i` is the complement `I − W_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AccountingReport {
    pub rule: CompositionRule,
    pub n: usize,
    pub d_pow_k: usize,
    /// Σ Tr(E_i).
    pub trace_sum: f64,
    /// Tr(E_i) for each effect.
    pub effect_traces: Vec<f64>,
    /// Tr[E_i W_i].
    pub per_state_hits: Vec<f64>,
    /// Tr[E_i C_i].
    pub residuals: Vec<f64>,
    /// Largest |Tr[E_i W_j]| over i ≠ j.
    pub max_cross_talk: f64,
    /// How each complement was shown to pair nonnegatively with effects:
    /// number of product projectors for minimal, POPT minimum for maximal.
    pub complement_checks: Vec<f64>,
    /// n ≤ d^k follows from the verified chain.
    pub bound_holds: bool,
}

/// Orthonormal basis of `C^d` whose first element is `ket` (normalized).
fn completed_basis(ket: &[Complex64]) -> Result<Vec<Vec<Complex64>>> {
    let d = ket.len();
    let norm = ket.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-12 || !norm.is_finite() {
        return Err(Error::InvalidParameter("local ket must be nonzero".into()));
    }
    let mut basis: Vec<Vec<Complex64>> = vec![ket.iter().map(|z| z / norm).collect()];
    for i in 0..d {
        let mut v = crate::operator::basis_ket(d, i);
        for b in &basis {
            let overlap: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= overlap * bi;
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-8 {
            basis.push(v.into_iter().map(|z| z / n).collect());
        }
        if basis.len() == d {
            break;
        }
    }
    Ok(basis)
}

/// Σ over all product basis vectors except the first (which is `a_i`).
fn product_complement(locals: &[Vec<Complex64>]) -> Result<(HermitianOperator, usize)> {
    let bases = locals
        .iter()
        .map(|k| completed_basis(k))
        .collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let total: usize = dims.iter().product();
    let dim: usize = locals.iter().map(Vec::len).product();
    let mut acc = HermitianOperator::zeros(dim);
    let mut count = 0;
    for idx in 1..total {
        let mut rem = idx;
        let mut ket = vec![Complex64::new(1.0, 0.0)];
        for (p, basis) in bases.iter().enumerate().rev() {
            let digit = rem % dims[p];
            rem /= dims[p];
            ket = kron_ket(&basis[digit], &ket);
        }
        acc = &acc + &HermitianOperator::projector(&ket);
        count += 1;
    }
    Ok((acc, count))
}

/// Verifies the trace accounting for a claimed perfectly distinguishing
/// measurement of `k` composed `d`-level systems.
///
/// Each complement is shown to pair nonnegatively with the effects: under
/// the minimal rule `P_i = I − |a_i⟩⟨a_i|` is rebuilt as a sum of product
/// projectors, under the maximal rule `Y_i = I − W_i` is tested for POPT
/// membership. A negative residual is an [`Error::AccountingViolation`].
pub fn verify_capacity_accounting(
    rule: CompositionRule,
    states: &AccountingStates,
    measurement: &Measurement<HermitianOperator>,
    d: usize,
    k: u32,
    settings: &Settings,
) -> Result<AccountingReport> {
    let tol = settings.tol;
    let d_pow_k = d
        .checked_pow(k)
        .ok_or_else(|| Error::InvalidParameter("d^k overflows".into()))?;
    let n = measurement.len();
    if n == 0 {
        return Err(Error::InvalidParameter("measurement is empty".into()));
    }
    for e in measurement.iter() {
        if e.dim() != d_pow_k {
            return Err(Error::UnsupportedDimension {
                expected: d_pow_k,
                found: e.dim(),
            });
        }
    }
    let sum: HermitianOperator = measurement.iter().cloned().sum();
    if !sum.approx_eq(&HermitianOperator::identity(d_pow_k), tol) {
        return Err(Error::InvalidParameter("measurement does not sum to the identity".into()));
    }

    let (operators, complements, checks): (Vec<HermitianOperator>, Vec<HermitianOperator>, Vec<f64>) =
        match (rule, states) {
            (CompositionRule::Minimal, AccountingStates::Product(kets)) => {
                let mut ops = Vec::new();
                let mut comps = Vec::new();
                let mut checks = Vec::new();
                for locals in kets {
                    if locals.len() != k as usize || locals.iter().any(|l| l.len() != d) {
                        return Err(Error::InvalidParameter(format!(
                            "product states need {k} local kets of dimension {d}"
                        )));
                    }
                    let norm: Vec<Vec<Complex64>> = locals
                        .iter()
                        .map(|l| {
                            let s = l.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                            l.iter().map(|z| z / s).collect()
                        })
                        .collect();
                    let ket = norm[1..].iter().fold(norm[0].clone(), |acc, l| kron_ket(&acc, l));
                    let projector = HermitianOperator::projector(&ket);
                    let (p, count) = product_complement(&norm)?;
                    if !p.approx_eq(&projector.complement(), tol) {
                        return Err(Error::InvalidParameter(
                            "product basis does not resolve the identity".into(),
                        ));
                    }
                    ops.push(projector);
                    comps.push(p);
                    checks.push(count as f64);
                }
                (ops, comps, checks)
            }
            (CompositionRule::Maximal, AccountingStates::Popt(ws)) => {
                let mut comps = Vec::new();
                let mut checks = Vec::new();
                for (i, w) in ws.iter().enumerate() {
                    if w.dim() != 4 || d_pow_k != 4 {
                        return Err(Error::UnsupportedOracle(
                            "POPT complements are only decided for two qubits".into(),
                        ));
                    }
                    let y = w.complement();
                    let verdict = popt_membership(&y, settings.grid_density, settings.tol)?;
                    if !verdict.member {
                        return Err(Error::AccountingViolation {
                            index: i,
                            residual: verdict.min_value,
                        });
                    }
                    comps.push(y);
                    checks.push(verdict.min_value);
                }
                (ws.clone(), comps, checks)
            }
            (CompositionRule::Quantum, _) => {
                return Err(Error::UnsupportedOracle(
                    "accounting is defined for the minimal and maximal rules".into(),
                ))
            }
            _ => {
                return Err(Error::InvalidParameter(
                    "minimal accounting takes product kets, maximal takes POPT operators".into(),
                ))
            }
        };

    if operators.len() != n {
        return Err(Error::InvalidParameter(format!(
            "{} states for a {n}-outcome measurement",
            operators.len()
        )));
    }

    let effect_traces: Vec<f64> = measurement.iter().map(HermitianOperator::trace).collect();
    let trace_sum: f64 = effect_traces.iter().sum();
    let per_state_hits: Vec<f64> = measurement
        .iter()
        .zip(&operators)
        .map(|(e, w)| e.trace_with(w))
        .collect();
    let residuals: Vec<f64> = measurement
        .iter()
        .zip(&complements)
        .map(|(e, c)| e.trace_with(c))
        .collect();
    if let Some((index, &residual)) = residuals.iter().enumerate().find(|(_, &r)| r < -tol) {
        return Err(Error::AccountingViolation { index, residual });
    }
    let mut max_cross_talk: f64 = 0.0;
    for (i, e) in measurement.iter().enumerate() {
        for (j, w) in operators.iter().enumerate() {
            if i != j {
                max_cross_talk = max_cross_talk.max(e.trace_with(w).abs());
            }
        }
    }
    let hits_ok = per_state_hits.iter().all(|h| (h - 1.0).abs() <= tol);
    let bound_holds =
        hits_ok && (trace_sum - d_pow_k as f64).abs() <= tol && n as f64 <= trace_sum + tol;
    Ok(AccountingReport {
        rule,
        n,
        d_pow_k,
        trace_sum,
        effect_traces,
        per_state_hits,
        residuals,
        max_cross_talk,
        complement_checks: checks,
        bound_holds,
    })
}

/// Computational product basis of `k` qubits, as local kets.
pub fn computational_product_basis(d: usize, k: u32) -> Vec<Vec<Vec<Complex64>>> {
    let total = d.pow(k);
    (0..total)
        .map(|mut idx| {
            let mut locals = vec![Vec::new(); k as usize];
            for p in (0..k as usize).rev() {
                locals[p] = crate::operator::basis_ket(d, idx % d);
                idx /= d;
            }
            locals
        })
        .collect()
}

/// Projective measurement onto the computational basis of dimension `dim`.
pub fn computational_measurement(dim: usize) -> Measurement<HermitianOperator> {
    Measurement::new(
        (0..dim)
            .map(|i| HermitianOperator::projector(&crate::operator::basis_ket(dim, i)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::{pauli_sign_encodings, SeparableCertificate};
    use crate::gpt::{classical_bit, octagon, square_bit};
    use crate::operator::BlochVector;

    const TOL: f64 = 1e-9;

    #[test]
    fn square_pair_distinguished_by_diagonal_effects() {
        let sq = square_bit();
        let m = distinguishing_measurement(&sq, &[sq.state(0), sq.state(2)], TOL)
            .unwrap()
            .expect("ω₀ and ω₂ are distinguishable");
        assert!(sq.is_valid_measurement(&m));
        for (i, e) in m.iter().enumerate() {
            for (j, w) in [sq.state(0), sq.state(2)].iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((e.dot(w) - want).abs() < 1e-9);
            }
        }
        // {e₀, e₂} is one such measurement
        let named = Measurement::new(vec![sq.effect(0), sq.effect(2)]);
        assert!(sq.is_valid_measurement(&named));
        assert_eq!(sq.effect(0).dot(&sq.state(0)), 1.0);
        assert_eq!(sq.effect(0).dot(&sq.state(2)), 0.0);
    }

    #[test]
    fn square_triple_is_not_distinguishable() {
        let sq = square_bit();
        let states = [sq.state(0), sq.state(1), sq.state(2)];
        assert!(distinguishing_measurement(&sq, &states, TOL).unwrap().is_none());
    }

    #[test]
    fn capacities() {
        assert_eq!(information_capacity(&square_bit(), TOL).unwrap(), 2);
        assert_eq!(information_dimension(&square_bit(), TOL).unwrap(), 4);
        assert_eq!(information_capacity(&octagon(), TOL).unwrap(), 2);
        assert_eq!(information_dimension(&octagon(), TOL).unwrap(), 2);
        assert_eq!(information_capacity(&classical_bit(), TOL).unwrap(), 2);
        assert_eq!(information_dimension(&classical_bit(), TOL).unwrap(), 2);
    }

    #[test]
    fn capacities_stable_across_tolerances() {
        for tol in [1e-12, 1e-10, 1e-8, 1e-6] {
            assert_eq!(information_capacity(&square_bit(), tol).unwrap(), 2, "{tol}");
            assert_eq!(information_dimension(&square_bit(), tol).unwrap(), 4, "{tol}");
            assert_eq!(information_capacity(&octagon(), tol).unwrap(), 2, "{tol}");
            assert_eq!(information_dimension(&octagon(), tol).unwrap(), 2, "{tol}");
        }
    }

    #[test]
    fn oversized_systems_refused() {
        let big = crate::gpt::polygon_system(17).unwrap();
        assert!(matches!(information_capacity(&big, TOL), Err(Error::UnsupportedOracle(_))));
    }

    #[test]
    fn composite_requires_a_proposed_measurement() {
        let inst = DistinguishabilityInstance::Composite {
            rule: CompositionRule::Quantum,
            states: vec![],
            measurement: None,
        };
        assert!(matches!(
            perfectly_distinguishable(&inst, &Settings::default()),
            Err(Error::UnsupportedOracle(_))
        ));
    }

    #[test]
    fn product_basis_verified_under_every_rule() {
        let (z, mz) = (BlochVector::z(), BlochVector::z().negated());
        let locals = [(z, z), (z, mz), (mz, z), (mz, mz)];
        let states: Vec<CertifiedOperator> = locals
            .iter()
            .map(|&(a, b)| CertifiedOperator::product_state(a, b))
            .collect();
        let effects: Vec<CertifiedOperator> = locals
            .iter()
            .map(|&(a, b)| {
                let others: Vec<_> = locals
                    .iter()
                    .filter(|&&p| p != (a, b))
                    .map(|&(x, y)| (1.0, x, y))
                    .collect();
                CertifiedOperator::effect(
                    a.density().tensor(&b.density()),
                    SeparableCertificate::from_bloch(&[(1.0, a, b)]),
                    SeparableCertificate::from_bloch(&others),
                )
            })
            .collect();
        let m = Measurement::new(effects);
        for rule in CompositionRule::ALL {
            let inst = DistinguishabilityInstance::Composite {
                rule,
                states: states.clone(),
                measurement: Some(m.clone()),
            };
            assert!(perfectly_distinguishable(&inst, &Settings::default()).unwrap().distinguishable);
        }
    }

    #[test]
    fn minimal_accounting_on_product_basis() {
        let r = verify_capacity_accounting(
            CompositionRule::Minimal,
            &AccountingStates::Product(computational_product_basis(2, 2)),
            &computational_measurement(4),
            2,
            2,
            &Settings::default(),
        )
        .unwrap();
        assert_eq!(r.n, 4);
        assert_eq!(r.d_pow_k, 4);
        assert!((r.trace_sum - 4.0).abs() < 1e-12);
        assert!(r.residuals.iter().all(|x| x.abs() < 1e-12));
        assert!(r.per_state_hits.iter().all(|x| (x - 1.0).abs() < 1e-12));
        assert_eq!(r.complement_checks, vec![3.0; 4]);
        assert!(r.bound_holds);
    }

    #[test]
    fn complement_of_00_is_the_other_three_projectors() {
        let locals = computational_product_basis(2, 2).remove(0);
        let (p, count) = product_complement(&locals).unwrap();
        assert_eq!(count, 3);
        assert!(p.approx_eq(&HermitianOperator::diagonal(&[0.0, 1.0, 1.0, 1.0]), 1e-15));
    }

    #[test]
    fn minimal_accounting_three_qubits() {
        let r = verify_capacity_accounting(
            CompositionRule::Minimal,
            &AccountingStates::Product(computational_product_basis(2, 3)),
            &computational_measurement(8),
            2,
            3,
            &Settings::default(),
        )
        .unwrap();
        assert_eq!((r.n, r.d_pow_k), (8, 8));
        assert!(r.bound_holds);
    }

    #[test]
    fn maximal_accounting_and_complements_of_sign_encodings() {
        let ws: Vec<HermitianOperator> = (0..4)
            .map(|i| HermitianOperator::projector(&crate::operator::basis_ket(4, i)))
            .collect();
        let r = verify_capacity_accounting(
            CompositionRule::Maximal,
            &AccountingStates::Popt(ws),
            &computational_measurement(4),
            2,
            2,
            &Settings::default(),
        )
        .unwrap();
        assert!(r.bound_holds && (r.trace_sum - 4.0).abs() < 1e-12);

        for w in pauli_sign_encodings() {
            let y = w.complement();
            assert!(popt_membership(&y, 32, TOL).unwrap().member);
        }
    }

    #[test]
    fn invalid_claim_is_an_accounting_violation() {
        // W gives 1.5 on |00⟩, so I − W is negative there.
        let w = HermitianOperator::diagonal(&[1.5, -0.5, 0.0, 0.0]);
        let ws = vec![
            w,
            HermitianOperator::diagonal(&[0.0, 1.0, 0.0, 0.0]),
            HermitianOperator::diagonal(&[0.0, 0.0, 1.0, 0.0]),
            HermitianOperator::diagonal(&[0.0, 0.0, 0.0, 1.0]),
        ];
        let err = verify_capacity_accounting(
            CompositionRule::Maximal,
            &AccountingStates::Popt(ws),
            &computational_measurement(4),
            2,
            2,
            &Settings::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::AccountingViolation { index: 0, .. }));
    }

    #[test]
    fn holevo_bounds() {
        let b = holevo_capacity_bound(2).unwrap();
        assert_eq!(b.bits_per_system, 1.0);
        assert_eq!(b.bits_for(2), 2.0);
        assert_eq!(b.capacity_states(3).unwrap(), 8);
        assert_eq!(b.bits_for(3), 3.0);
        assert!((holevo_capacity_bound(3).unwrap().bits_per_system - 3f64.log2()).abs() < 1e-15);
        assert!(holevo_capacity_bound(1).is_err());
    }
}
