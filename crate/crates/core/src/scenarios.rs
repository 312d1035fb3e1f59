//! Named end-to-end reproductions.
//!
//! Each scenario builds its system and strategy from the other modules,
//! runs it and compares the outcome against expected values. Expected
//! values are kept in closed form (entropy expressions, square roots) and
//! evaluated at run time.

use std::f64::consts::FRAC_1_SQRT_2;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::capacity::{
    computational_measurement, computational_product_basis, information_capacity, information_dimension,
    verify_capacity_accounting, AccountingStates,
};
use crate::composition::{
    correlation_measurements, is_effect, is_measurement, min_composition_encodings, min_composition_measurements,
    pauli_sign_encodings, popt_membership, CertifiedOperator, CompositionRule, ProductTerm, SeparableCertificate,
};
use crate::error::{Error, Result};
use crate::game::{binary_entropy, ic_check, play_ic_game, Composite, Decoding, GameReport, Guess, IcStrategy, Polytope};
use crate::gpt::{octagon, square_bit, GptSystem};
use crate::measurement::Measurement;
use crate::operator::{basis_ket, bloch_state, BlochVector, HermitianOperator};
use crate::Settings;

/// Number of random strategies in the quantum sweep.
pub const QUANTUM_SWEEP_SIZE: usize = 1200;

/// Number of random operators per family in the cone-inclusion sweep.
pub const CONE_SAMPLES_PER_FAMILY: usize = 60;

/// How `actual` is compared with `expected`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    AtMost,
    AtLeast,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub pass: bool,
}

impl Check {
    fn compare(name: &str, expected: f64, actual: f64, tolerance: f64, relation: Relation) -> Self {
        let pass = match relation {
            Relation::Equal => (actual - expected).abs() <= tolerance,
            Relation::AtMost => actual <= expected + tolerance,
            Relation::AtLeast => actual >= expected - tolerance,
        };
        Self {
            name: name.to_string(),
            expected,
            actual,
            tolerance,
            relation,
            pass: pass && actual.is_finite(),
        }
    }

    pub fn equal(name: &str, expected: f64, actual: f64, tolerance: f64) -> Self {
        Self::compare(name, expected, actual, tolerance, Relation::Equal)
    }

    pub fn at_most(name: &str, bound: f64, actual: f64, tolerance: f64) -> Self {
        Self::compare(name, bound, actual, tolerance, Relation::AtMost)
    }

    pub fn at_least(name: &str, bound: f64, actual: f64, tolerance: f64) -> Self {
        Self::compare(name, bound, actual, tolerance, Relation::AtLeast)
    }

    /// Boolean outcome encoded as 1 (true) or 0 (false).
    pub fn flag(name: &str, expected: bool, actual: bool) -> Self {
        Self::equal(name, f64::from(u8::from(expected)), f64::from(u8::from(actual)), 0.0)
    }

    pub fn count(name: &str, expected: usize, actual: usize) -> Self {
        Self::equal(name, expected as f64, actual as f64, 0.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub anchor: String,
    pub checks: Vec<Check>,
    pub pass: bool,
    #[serde(default, rename = "score", skip_serializing_if = "Option::is_none")]
    pub score_bits: Option<f64>,
    #[serde(default, rename = "bound", skip_serializing_if = "Option::is_none")]
    pub bound_bits: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl ScenarioReport {
    pub const CSV_HEADER: &'static str = "scenario,score_bits,bound_bits,violation,pass";

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{}",
            self.scenario,
            opt(self.score_bits),
            opt(self.bound_bits),
            self.violation.map(|v| v.to_string()).unwrap_or_default(),
            self.pass
        )
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Default)]
struct Outcome {
    checks: Vec<Check>,
    game: Option<GameReport>,
}

impl Outcome {
    fn push(&mut self, c: Check) {
        self.checks.push(c);
    }
}

/// A registered reproduction.
#[derive(Clone, Copy)]
pub struct Scenario {
    pub name: &'static str,
    /// The result being reproduced.
    pub anchor: &'static str,
    /// The system or composition rule involved.
    pub setting: &'static str,
    runner: fn(&Settings) -> Result<Outcome>,
}

impl std::fmt::Debug for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Scenario")
            .field("name", &self.name)
            .field("setting", &self.setting)
            .finish()
    }
}

impl Scenario {
    pub fn run(&self, settings: &Settings) -> Result<ScenarioReport> {
        settings.validate()?;
        let start = Instant::now();
        let out = (self.runner)(settings)?;
        let elapsed = start.elapsed().as_secs_f64() * 1e3;
        Ok(ScenarioReport {
            scenario: self.name.to_string(),
            anchor: self.anchor.to_string(),
            pass: out.checks.iter().all(|c| c.pass),
            score_bits: out.game.as_ref().map(|g| g.score),
            bound_bits: out.game.as_ref().map(|g| g.bound),
            violation: out.game.as_ref().map(|g| g.violation),
            checks: out.checks,
            wall_time_ms: Some(elapsed),
        })
    }
}

pub fn builtin_registry() -> Vec<Scenario> {
    vec![
        Scenario {
            name: "min-ic3",
            anchor: "three-bit game over the minimal composition scores 3 - h(1/4) > 2",
            setting: "two qubits, minimal composition",
            runner: min_ic3,
        },
        Scenario {
            name: "max-ic3",
            anchor: "three-bit game over the maximal composition is won with certainty, score 3 > 2",
            setting: "two qubits, maximal composition",
            runner: max_ic3,
        },
        Scenario {
            name: "square-ic2",
            anchor: "two-bit game with one square bit is won with certainty, score 2 > 1",
            setting: "square bit",
            runner: square_ic2,
        },
        Scenario {
            name: "octagon-ic2",
            anchor: "two-bit game with one octagon system scores 2 - h(1 - 1/sqrt 2) > 1",
            setting: "octagon",
            runner: octagon_ic2,
        },
        Scenario {
            name: "quantum-ic3-baseline",
            anchor: "two qubits carry two bits perfectly and the score stays at the bound 2",
            setting: "two qubits, quantum composition",
            runner: quantum_baseline,
        },
        Scenario {
            name: "quantum-ic3-sweep",
            anchor: "random valid quantum strategies never exceed the bound 2",
            setting: "two qubits, quantum composition",
            runner: quantum_sweep,
        },
        Scenario {
            name: "capacity-square",
            anchor: "square bit: capacity 2 but four pairwise distinguishable states",
            setting: "square bit",
            runner: capacity_square,
        },
        Scenario {
            name: "capacity-octagon",
            anchor: "octagon: capacity and information dimension both 2",
            setting: "octagon",
            runner: capacity_octagon,
        },
        Scenario {
            name: "prop1-accounting",
            anchor: "minimal composition of two qubits distinguishes at most 4 states",
            setting: "two qubits, minimal composition",
            runner: prop1_accounting,
        },
        Scenario {
            name: "prop2-accounting",
            anchor: "maximal composition of two qubits distinguishes at most 4 states",
            setting: "two qubits, maximal composition",
            runner: prop2_accounting,
        },
        Scenario {
            name: "cone-structure",
            anchor: "separable, positive and POPT cones are nested; E1 is POPT but not positive",
            setting: "two qubits, all compositions",
            runner: cone_structure,
        },
    ]
}

pub fn registry_names() -> Vec<String> {
    builtin_registry().iter().map(|s| s.name.to_string()).collect()
}

pub fn find_scenario(name: &str) -> Result<Scenario> {
    builtin_registry()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::NotFound {
            name: name.to_string(),
            registry: registry_names(),
        })
}

pub fn run_scenario(name: &str, settings: &Settings) -> Result<ScenarioReport> {
    find_scenario(name)?.run(settings)
}

/// Runs the whole registry on scoped threads; reports come back in
/// registry order.
pub fn run_all(settings: &Settings) -> Vec<(Scenario, Result<ScenarioReport>)> {
    let registry = builtin_registry();
    std::thread::scope(|s| {
        let handles: Vec<_> = registry
            .iter()
            .map(|sc| s.spawn(move || sc.run(settings)))
            .collect();
        registry
            .iter()
            .zip(handles)
            .map(|(sc, h)| {
                let r = h
                    .join()
                    .unwrap_or_else(|_| Err(Error::InvalidParameter(format!("scenario {} panicked", sc.name))));
                (*sc, r)
            })
            .collect()
    })
}

fn game_checks(out: &mut Outcome, r: &GameReport, per_bit: &[f64], score: f64, bound: f64, tol: f64) {
    for (k, (&want, &got)) in per_bit.iter().zip(&r.per_bit_mi).enumerate() {
        out.push(Check::equal(&format!("mi_bit{}", k + 1), want, got, tol));
    }
    out.push(Check::equal("score_bits", score, r.score, tol));
    out.push(Check::equal("bound_bits", bound, r.bound, 0.0));
    out.push(Check::flag("violation", score > bound, r.violation));
}

pub fn min_ic3_strategy() -> IcStrategy<CertifiedOperator, CertifiedOperator> {
    IcStrategy::deterministic(
        3,
        min_composition_encodings(),
        min_composition_measurements().into_iter().map(Decoding::binary).collect(),
    )
}

fn min_ic3(settings: &Settings) -> Result<Outcome> {
    let r = play_ic_game(&min_ic3_strategy(), &Composite::new(CompositionRule::Minimal, *settings))?;
    let third = 1.0 - binary_entropy(0.25)?;
    let mut out = Outcome::default();
    game_checks(&mut out, &r, &[1.0, 1.0, third], 2.0 + third, 2.0, 1e-9);
    out.game = Some(r);
    Ok(out)
}

pub fn max_ic3_strategy() -> IcStrategy<CertifiedOperator, CertifiedOperator> {
    IcStrategy::deterministic(
        3,
        pauli_sign_encodings().into_iter().map(CertifiedOperator::plain).collect(),
        correlation_measurements().into_iter().map(Decoding::binary).collect(),
    )
}

fn max_ic3(settings: &Settings) -> Result<Outcome> {
    let strategy = max_ic3_strategy();
    let theory = Composite::new(CompositionRule::Maximal, *settings);
    let r = play_ic_game(&strategy, &theory)?;
    let mut out = Outcome::default();
    game_checks(&mut out, &r, &[1.0; 3], 3.0, 2.0, 1e-9);

    let br = &strategy.branches[0];
    let mut members = 0;
    for w in &br.encoding {
        if popt_membership(&w.operator, settings.grid_density, settings.tol)?.member {
            members += 1;
        }
    }
    out.push(Check::count("popt_encodings", 8, members));

    let mut certified = 0;
    for d in &br.decodings {
        let all_certified = d
            .measurement
            .iter()
            .all(|e| e.certificate.is_some() && e.complement_certificate.is_some());
        if all_certified && is_measurement(&d.measurement, CompositionRule::Maximal, settings)? {
            certified += 1;
        }
    }
    out.push(Check::count("certified_decodings", 3, certified));

    // Reversing each decoding's outcomes under fixed guesses flips every guess.
    let mut swapped = strategy.clone();
    for d in &mut swapped.branches[0].decodings {
        d.measurement.effects.reverse();
        d.measurement.labels.reverse();
    }
    let rs = play_ic_game(&swapped, &theory)?;
    let max_success = rs.success.iter().copied().fold(0.0, f64::max);
    out.push(Check::equal("swapped_success", 0.0, max_success, 1e-12));
    out.game = Some(r);
    Ok(out)
}

pub fn square_ic2_strategy() -> (GptSystem, IcStrategy<crate::gpt::GptVector, crate::gpt::GptVector>) {
    let sq = square_bit();
    // 00→ω₀, 01→ω₁, 10→ω₃, 11→ω₂
    let encoding = vec![sq.state(0), sq.state(1), sq.state(3), sq.state(2)];
    let m1 = Measurement::new(vec![sq.effect(0), sq.effect(2)]);
    let m2 = Measurement::new(vec![sq.effect(3), sq.effect(1)]);
    let s = IcStrategy::deterministic(2, encoding, vec![Decoding::binary(m1), Decoding::binary(m2)]);
    (sq, s)
}

fn square_ic2(settings: &Settings) -> Result<Outcome> {
    let (sq, s) = square_ic2_strategy();
    let r = play_ic_game(&s, &Polytope::new(sq, settings.tol))?;
    let mut out = Outcome::default();
    game_checks(&mut out, &r, &[1.0, 1.0], 2.0, 1.0, 1e-9);
    out.game = Some(r);
    Ok(out)
}

pub fn octagon_ic2_strategy() -> (GptSystem, IcStrategy<crate::gpt::GptVector, crate::gpt::GptVector>) {
    let oct = octagon();
    let u = *oct.unit_effect();
    // 00→ω₀ (angle 0), 01→ω₁ (π/4), 10→ω₅ (5π/4), 11→ω₄ (π)
    let encoding = vec![oct.state(0), oct.state(1), oct.state(5), oct.state(4)];
    // effects 0 and 2 sit at π/8 and 5π/8
    let (e0, e2) = (oct.effect(0), oct.effect(2));
    let bit1 = Decoding::binary(Measurement::new(vec![e0, u - e0]));
    let bit2 = Decoding::new(Measurement::new(vec![e2, u - e2]), vec![Guess::One, Guess::Zero]);
    (oct, IcStrategy::deterministic(2, encoding, vec![bit1, bit2]))
}

fn octagon_ic2(settings: &Settings) -> Result<Outcome> {
    let (oct, s) = octagon_ic2_strategy();
    let r = play_ic_game(&s, &Polytope::new(oct, settings.tol))?;
    let q = 1.0 - FRAC_1_SQRT_2;
    let second = 1.0 - binary_entropy(q)?;
    let mut out = Outcome::default();
    game_checks(&mut out, &r, &[1.0, second], 1.0 + second, 1.0, 1e-9);
    out.push(Check::equal("success_bit1", 1.0, r.success[0], 1e-12));
    out.push(Check::equal("success_bit2", FRAC_1_SQRT_2, r.success[1], 1e-12));
    out.game = Some(r);
    Ok(out)
}

fn local_z(bit: usize) -> HermitianOperator {
    HermitianOperator::projector(&basis_ket(2, bit))
}

pub fn quantum_baseline_strategy() -> IcStrategy<CertifiedOperator, CertifiedOperator> {
    let id = HermitianOperator::identity(2);
    let encoding = (0..8)
        .map(|a| CertifiedOperator::plain(local_z((a >> 2) & 1).tensor(&local_z((a >> 1) & 1))))
        .collect();
    let on_a = Measurement::new(vec![local_z(0).tensor(&id).into(), local_z(1).tensor(&id).into()]);
    let on_b = Measurement::new(vec![id.tensor(&local_z(0)).into(), id.tensor(&local_z(1)).into()]);
    let trivial = Measurement::new(vec![HermitianOperator::identity(4).into()]);
    IcStrategy::deterministic(
        3,
        encoding,
        vec![
            Decoding::binary(on_a),
            Decoding::binary(on_b),
            Decoding::new(trivial, vec![Guess::Zero]),
        ],
    )
}

fn quantum_baseline(settings: &Settings) -> Result<Outcome> {
    let r = play_ic_game(&quantum_baseline_strategy(), &Composite::new(CompositionRule::Quantum, *settings))?;
    let mut out = Outcome::default();
    game_checks(&mut out, &r, &[1.0, 1.0, 0.0], 2.0, 2.0, 1e-12);
    out.push(Check::flag("ic_check", true, ic_check(&r, 2.0)));
    out.game = Some(r);
    Ok(out)
}

fn random_ket(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-3 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

fn random_psd(rng: &mut ChaCha8Rng, dim: usize, rank: usize) -> HermitianOperator {
    (0..rank)
        .map(|_| HermitianOperator::projector(&random_ket(rng, dim)).scale(rng.gen_range(0.05..1.0)))
        .sum()
}

fn random_state(rng: &mut ChaCha8Rng, pure: bool) -> HermitianOperator {
    let rank = if pure { 1 } else { rng.gen_range(1..=4) };
    let p = random_psd(rng, 4, rank);
    let tr = p.trace();
    p.scale(1.0 / tr)
}

/// Orthogonal projector onto the span of `rank` random vectors.
fn random_projector(rng: &mut ChaCha8Rng, rank: usize) -> HermitianOperator {
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    while basis.len() < rank {
        let mut v = random_ket(rng, 4);
        for b in &basis {
            let overlap: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= overlap * bi;
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-3 {
            basis.push(v.into_iter().map(|z| z / n).collect());
        }
    }
    basis.iter().map(|k| HermitianOperator::projector(k)).sum()
}

fn random_effect(rng: &mut ChaCha8Rng) -> HermitianOperator {
    if rng.gen_bool(0.5) {
        let rank = rng.gen_range(1..=3);
        random_projector(rng, rank)
    } else {
        let rank = rng.gen_range(1..=4);
        let p = random_psd(rng, 4, rank);
        let top = p.eigenvalues().last().copied().unwrap_or(1.0).max(1e-12);
        p.scale(rng.gen_range(0.0..1.0) / top)
    }
}

fn random_guess(rng: &mut ChaCha8Rng) -> Guess {
    match rng.gen_range(0..5) {
        0 => Guess::Random,
        1 | 2 => Guess::Zero,
        _ => Guess::One,
    }
}

fn binary_decoding(e: HermitianOperator, guesses: [Guess; 2]) -> Decoding<CertifiedOperator> {
    let c = e.complement();
    Decoding::new(Measurement::new(vec![e.into(), c.into()]), guesses.to_vec())
}

/// A random quantum strategy. Families alternate between fully random
/// mixed strategies, pure encodings with projective decodings, and small
/// perturbations of the perfect two-bit baseline.
fn random_quantum_strategy(rng: &mut ChaCha8Rng, family: usize) -> IcStrategy<CertifiedOperator, CertifiedOperator> {
    match family % 3 {
        0 | 1 => {
            let pure = family % 3 == 1;
            let encoding = (0..8).map(|_| random_state(rng, pure).into()).collect();
            let decodings = (0..3)
                .map(|_| {
                    let e = if pure {
                        let rank = rng.gen_range(1..=3);
                        random_projector(rng, rank)
                    } else {
                        random_effect(rng)
                    };
                    binary_decoding(e, [random_guess(rng), random_guess(rng)])
                })
                .collect();
            IcStrategy::deterministic(3, encoding, decodings)
        }
        _ => {
            let eps: f64 = rng.gen_range(0.0..0.3);
            let base = quantum_baseline_strategy();
            let br = &base.branches[0];
            let encoding = br
                .encoding
                .iter()
                .map(|w| {
                    let noise = random_state(rng, false);
                    (&w.operator.scale(1.0 - eps) + &noise.scale(eps)).into()
                })
                .collect();
            let id = HermitianOperator::identity(2);
            let base_effects = [
                local_z(0).tensor(&id),
                id.tensor(&local_z(0)),
                HermitianOperator::identity(4).scale(0.5),
            ];
            let decodings = base_effects
                .iter()
                .map(|e| {
                    let noise = random_effect(rng);
                    binary_decoding(&e.scale(1.0 - eps) + &noise.scale(eps), [Guess::Zero, Guess::One])
                })
                .collect();
            IcStrategy::deterministic(3, encoding, decodings)
        }
    }
}

fn quantum_sweep(settings: &Settings) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let theory = Composite::new(CompositionRule::Quantum, *settings);
    let mut max_score = f64::NEG_INFINITY;
    let mut played = 0;
    for i in 0..QUANTUM_SWEEP_SIZE {
        let s = random_quantum_strategy(&mut rng, i);
        let r = play_ic_game(&s, &theory)?;
        max_score = max_score.max(r.score);
        played += 1;
    }
    let mut out = Outcome::default();
    out.push(Check::at_least("strategies", 1000.0, played as f64, 0.0));
    out.push(Check::at_most("max_score_bits", 2.0, max_score, 1e-6));
    Ok(out)
}

fn capacity_checks(out: &mut Outcome, sys: &GptSystem, capacity: usize, dimension: usize, tol: f64) -> Result<()> {
    let c = information_capacity(sys, tol)?;
    let d = information_dimension(sys, tol)?;
    out.push(Check::count("information_capacity", capacity, c));
    out.push(Check::count("information_dimension", dimension, d));
    out.push(Check::flag("dimension_mismatch", dimension > capacity, d > c));
    Ok(())
}

fn capacity_square(settings: &Settings) -> Result<Outcome> {
    let mut out = Outcome::default();
    capacity_checks(&mut out, &square_bit(), 2, 4, settings.tol)?;
    Ok(out)
}

fn capacity_octagon(settings: &Settings) -> Result<Outcome> {
    let mut out = Outcome::default();
    capacity_checks(&mut out, &octagon(), 2, 2, settings.tol)?;
    Ok(out)
}

fn accounting_checks(out: &mut Outcome, r: &crate::capacity::AccountingReport) {
    out.push(Check::count("n", 4, r.n));
    out.push(Check::count("d_pow_k", 4, r.d_pow_k));
    out.push(Check::equal("trace_sum", 4.0, r.trace_sum, 1e-9));
    let min_residual = r.residuals.iter().copied().fold(f64::INFINITY, f64::min);
    out.push(Check::at_least("min_residual", 0.0, min_residual, 1e-9));
    out.push(Check::flag("bound_holds", true, r.bound_holds));
}

fn prop1_accounting(settings: &Settings) -> Result<Outcome> {
    let r = verify_capacity_accounting(
        CompositionRule::Minimal,
        &AccountingStates::Product(computational_product_basis(2, 2)),
        &computational_measurement(4),
        2,
        2,
        settings,
    )?;
    let mut out = Outcome::default();
    accounting_checks(&mut out, &r);
    Ok(out)
}

fn prop2_accounting(settings: &Settings) -> Result<Outcome> {
    let states = (0..4)
        .map(|i| HermitianOperator::projector(&basis_ket(4, i)))
        .collect();
    let r = verify_capacity_accounting(
        CompositionRule::Maximal,
        &AccountingStates::Popt(states),
        &computational_measurement(4),
        2,
        2,
        settings,
    )?;
    let mut out = Outcome::default();
    accounting_checks(&mut out, &r);
    let mut members = 0;
    for w in pauli_sign_encodings() {
        if popt_membership(&w.complement(), settings.grid_density, settings.tol)?.member {
            members += 1;
        }
    }
    out.push(Check::count("popt_complements", 8, members));
    Ok(out)
}

fn random_bloch(rng: &mut ChaCha8Rng) -> BlochVector {
    let theta = rng.gen_range(-1.0f64..1.0).acos();
    let phi = rng.gen_range(0.0..std::f64::consts::TAU);
    BlochVector::from_angles(theta, phi)
}

fn random_local_psd(rng: &mut ChaCha8Rng) -> HermitianOperator {
    let r: f64 = rng.gen_range(0.0..1.0);
    let m = random_bloch(rng).components().map(|x| r * x);
    bloch_state(m)
        .expect("norm at most 1")
        .scale(rng.gen_range(0.1..2.0))
}

/// Separable, then PSD, then POPT: counts operators that belong to an inner
/// cone but fail an outer test.
pub fn cone_inclusion_counterexamples(settings: &Settings, per_family: usize) -> Result<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed ^ 0xC0FE);
    let mut sampled = 0;
    let mut counterexamples = 0;
    for _ in 0..per_family {
        let terms = (0..rng.gen_range(1..=4))
            .map(|_| ProductTerm {
                a: random_local_psd(&mut rng),
                b: random_local_psd(&mut rng),
            })
            .collect();
        let cert = SeparableCertificate::new(terms);
        let op = cert.operator()?;
        let inner = cert.verify(&op, settings.tol)?;
        let psd = op.is_psd(settings.tol);
        let popt = popt_membership(&op, settings.grid_density, settings.tol)?.member;
        if !(inner && psd && popt) {
            counterexamples += 1;
        }
        sampled += 1;
    }
    for _ in 0..per_family {
        let rank = rng.gen_range(1..=4);
        let op = random_psd(&mut rng, 4, rank);
        let psd = op.is_psd(settings.tol);
        let popt = popt_membership(&op, settings.grid_density, settings.tol)?.member;
        if !(psd && popt) {
            counterexamples += 1;
        }
        sampled += 1;
    }
    // Effects of the maximal composition are separable; its effect cone sits
    // inside the quantum one, which sits inside the minimal one.
    for _ in 0..per_family / 2 {
        let e = random_local_psd(&mut rng).tensor(&random_local_psd(&mut rng));
        let top = e.eigenvalues().last().copied().unwrap_or(1.0).max(1e-12);
        let e = e.scale(1.0 / top);
        let quantum = is_effect(&e.clone().into(), CompositionRule::Quantum, settings)?;
        let minimal = is_effect(&e.into(), CompositionRule::Minimal, settings)?;
        if !(quantum && minimal) {
            counterexamples += 1;
        }
        sampled += 1;
    }
    Ok((sampled, counterexamples))
}

fn cone_structure(settings: &Settings) -> Result<Outcome> {
    let mut out = Outcome::default();
    let e1 = min_composition_measurements()[0].effects[0].clone();
    out.push(Check::flag("e1_minimal_effect", true, is_effect(&e1, CompositionRule::Minimal, settings)?));
    out.push(Check::flag("e1_quantum_effect", false, is_effect(&e1, CompositionRule::Quantum, settings)?));
    out.push(Check::equal("e1_min_eigenvalue", -0.5, e1.operator.min_eigenvalue(), 1e-9));
    let (sampled, bad) = cone_inclusion_counterexamples(settings, CONE_SAMPLES_PER_FAMILY)?;
    out.push(Check::at_least("sampled_operators", 100.0, sampled as f64, 0.0));
    out.push(Check::count("counterexamples", 0, bad));
    Ok(out)
}
