//! The information-causality game IC-N.
//!
//! Alice receives `N` uniform bits `a = (a₁, …, a_N)` and sends one system
//! prepared according to her encoding. Bob receives a uniform index `b` and
//! must output `β = a_b`. The score is `I_N = Σ_k I(a_k : β | b = k)`, and
//! the principle demands `I_N <= Θ` with `Θ` the capacity of the
//! transmitted system in bits.
//!
//! Input strings are indexed as binary numbers with `a₁` the most
//! significant bit, so `"011"` is index 3.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::capacity::{holevo_capacity_bound, information_capacity};
use crate::composition::{is_measurement, is_state, CertifiedOperator, CompositionRule};
use crate::error::{Error, Result};
use crate::gpt::{clip_probability, probability_with_tol, GptSystem, GptVector};
use crate::measurement::Measurement;
use crate::Settings;

/// Largest supported number of bits; all distributions are enumerated.
pub const MAX_BITS: usize = 8;

/// Slack allowed when comparing a score against its bound.
pub const IC_SLACK: f64 = 1e-9;

/// A system together with its probability rule and validity tests.
pub trait Theory {
    type State;
    type Effect;

    fn describe(&self) -> String;
    fn is_state(&self, s: &Self::State) -> Result<bool>;
    fn is_measurement(&self, m: &Measurement<Self::Effect>) -> Result<bool>;
    fn probability(&self, e: &Self::Effect, s: &Self::State) -> Result<f64>;
    /// Θ, the classical capacity of one transmitted system in bits.
    fn capacity_bits(&self) -> Result<f64>;
}

/// Two qubits under a composition rule. Capacity is two bits under every
/// rule: `d^k` states at `d = 2` per system.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Composite {
    pub rule: CompositionRule,
    pub settings: Settings,
}

impl Composite {
    pub fn new(rule: CompositionRule, settings: Settings) -> Self {
        Self { rule, settings }
    }
}

impl Theory for Composite {
    type State = CertifiedOperator;
    type Effect = CertifiedOperator;

    fn describe(&self) -> String {
        format!("{} composition of two qubits", self.rule.name())
    }

    fn is_state(&self, s: &CertifiedOperator) -> Result<bool> {
        is_state(s, self.rule, &self.settings)
    }

    fn is_measurement(&self, m: &Measurement<CertifiedOperator>) -> Result<bool> {
        is_measurement(m, self.rule, &self.settings)
    }

    fn probability(&self, e: &CertifiedOperator, s: &CertifiedOperator) -> Result<f64> {
        clip_probability(e.operator.trace_with(&s.operator), self.settings.tol)
    }

    fn capacity_bits(&self) -> Result<f64> {
        Ok(holevo_capacity_bound(2)?.bits_for(2))
    }
}

/// A polytopic system. Its capacity is taken as `log₂` of the information
/// capacity, i.e. additivity is assumed.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope {
    pub system: GptSystem,
    pub tol: f64,
}

impl Polytope {
    pub fn new(system: GptSystem, tol: f64) -> Self {
        Self { system, tol }
    }
}

impl Theory for Polytope {
    type State = GptVector;
    type Effect = GptVector;

    fn describe(&self) -> String {
        self.system.name().to_string()
    }

    fn is_state(&self, s: &GptVector) -> Result<bool> {
        Ok(self.system.is_valid_state_tol(s, self.tol))
    }

    fn is_measurement(&self, m: &Measurement<GptVector>) -> Result<bool> {
        Ok(self.system.is_valid_measurement_tol(m, self.tol))
    }

    fn probability(&self, e: &GptVector, s: &GptVector) -> Result<f64> {
        probability_with_tol(e, s, self.tol)
    }

    fn capacity_bits(&self) -> Result<f64> {
        Ok((information_capacity(&self.system, self.tol)? as f64).log2())
    }
}

/// Bob's output for one measurement outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Guess {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    /// A fair coin independent of everything else.
    #[serde(rename = "random")]
    Random,
}

impl Guess {
    fn prob_zero(self) -> f64 {
        match self {
            Guess::Zero => 1.0,
            Guess::One => 0.0,
            Guess::Random => 0.5,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Guess::Zero => Guess::One,
            Guess::One => Guess::Zero,
            Guess::Random => Guess::Random,
        }
    }
}

/// A measurement and the guess attached to each of its outcomes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decoding<E> {
    pub measurement: Measurement<E>,
    pub guesses: Vec<Guess>,
}

impl<E> Decoding<E> {
    pub fn new(measurement: Measurement<E>, guesses: Vec<Guess>) -> Self {
        Self {
            measurement,
            guesses,
        }
    }

    /// Two-outcome measurement with guess 0 on the first outcome.
    pub fn binary(measurement: Measurement<E>) -> Self {
        Self::new(measurement, vec![Guess::Zero, Guess::One])
    }
}

/// Nonnegative rational mixing weight, written `"p/q"` in JSON.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Weight {
    num: u64,
    den: u64,
}

impl Weight {
    pub const ONE: Weight = Weight { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter("weight denominator is zero".into()));
        }
        Ok(Self { num, den })
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Default for Weight {
    fn default() -> Self {
        Weight::ONE
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl TryFrom<String> for Weight {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("weight `{s}` is not of the form p/q"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        Weight::new(num, den)
    }
}

impl From<Weight> for String {
    fn from(w: Weight) -> String {
        w.to_string()
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Exact rational test that the weights sum to one.
fn weights_sum_to_one(weights: impl Iterator<Item = Weight>) -> bool {
    let (mut num, mut den) = (0u128, 1u128);
    for w in weights {
        let (wn, wd) = (w.num as u128, w.den as u128);
        let Some(n) = num.checked_mul(wd).and_then(|x| wn.checked_mul(den).and_then(|y| x.checked_add(y)))
        else {
            return false;
        };
        let Some(d) = den.checked_mul(wd) else {
            return false;
        };
        let g = gcd(n, d).max(1);
        (num, den) = (n / g, d / g);
    }
    num == den
}

/// One deterministic strategy: an encoding for every input string and a
/// decoding for every bit index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Branch<S, E> {
    #[serde(default)]
    pub weight: Weight,
    pub encoding: Vec<S>,
    pub decodings: Vec<Decoding<E>>,
}

/// A convex mixture of deterministic strategies; the mixing variable plays
/// the role of classical shared randomness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IcStrategy<S, E> {
    pub n_bits: usize,
    pub branches: Vec<Branch<S, E>>,
}

impl<S, E> IcStrategy<S, E> {
    pub fn deterministic(n_bits: usize, encoding: Vec<S>, decodings: Vec<Decoding<E>>) -> Self {
        Self {
            n_bits,
            branches: vec![Branch {
                weight: Weight::ONE,
                encoding,
                decodings,
            }],
        }
    }

    /// Structural checks that do not depend on the theory.
    pub fn validate_shape(&self) -> Result<()> {
        let n = self.n_bits;
        if n == 0 || n > MAX_BITS {
            return Err(Error::StrategyInvalid(format!(
                "n_bits must be between 1 and {MAX_BITS}, got {n}"
            )));
        }
        if self.branches.is_empty() {
            return Err(Error::StrategyInvalid("strategy has no branches".into()));
        }
        if !weights_sum_to_one(self.branches.iter().map(|b| b.weight)) {
            return Err(Error::StrategyInvalid("mixture weights do not sum to 1".into()));
        }
        for (bi, br) in self.branches.iter().enumerate() {
            if br.encoding.len() != 1 << n {
                return Err(Error::StrategyInvalid(format!(
                    "branch {bi}: encoding has {} entries, expected {}",
                    br.encoding.len(),
                    1usize << n
                )));
            }
            if br.decodings.len() != n {
                return Err(Error::StrategyInvalid(format!(
                    "branch {bi}: {} decodings for {n} bits",
                    br.decodings.len()
                )));
            }
            for (k, dec) in br.decodings.iter().enumerate() {
                if dec.guesses.len() != dec.measurement.len() || dec.guesses.is_empty() {
                    return Err(Error::StrategyInvalid(format!(
                        "branch {bi}: decoding for bit {} has {} outcomes but {} guesses",
                        k + 1,
                        dec.measurement.len(),
                        dec.guesses.len()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Input string of `n` bits for index `a`, first bit leftmost.
pub fn bit_string(a: usize, n: usize) -> String {
    (0..n).map(|k| if bit(a, k, n) == 1 { '1' } else { '0' }).collect()
}

/// Bit `k` (0-based from the left) of input index `a`.
pub fn bit(a: usize, k: usize, n: usize) -> usize {
    (a >> (n - 1 - k)) & 1
}

/// Full outcome of a game.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameReport {
    pub n_bits: usize,
    /// `joint[a][b][β] = p(a, b, β)` with `b` 0-based.
    pub joint: Vec<Vec<[f64; 2]>>,
    /// `I(a_k : β | b = k)` in bits.
    pub per_bit_mi: Vec<f64>,
    /// `p(β = a_k | b = k)`.
    pub success: Vec<f64>,
    pub score: f64,
    pub bound: f64,
    pub violation: bool,
}

impl GameReport {
    pub const CSV_HEADER: &'static str = "n_bits,score_bits,bound_bits,violation";

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.n_bits, self.score, self.bound, self.violation)
    }
}

fn wrap(context: String) -> impl FnOnce(Error) -> Error {
    move |e| Error::StrategyInvalid(format!("{context}: {e}"))
}

/// Plays the game exactly by enumerating all inputs.
pub fn play_ic_game<T: Theory>(strategy: &IcStrategy<T::State, T::Effect>, theory: &T) -> Result<GameReport> {
    strategy.validate_shape()?;
    let n = strategy.n_bits;
    let inputs = 1usize << n;
    let multi = strategy.branches.len() > 1;

    // p(β = 0 | a, b), mixed over branches
    let mut p_zero = vec![vec![0.0; n]; inputs];
    for (bi, br) in strategy.branches.iter().enumerate() {
        let prefix = if multi { format!("branch {bi}, ") } else { String::new() };
        for (a, s) in br.encoding.iter().enumerate() {
            let ctx = format!("{prefix}encoding of {}", bit_string(a, n));
            if !theory.is_state(s).map_err(wrap(ctx.clone()))? {
                return Err(Error::StrategyInvalid(format!(
                    "{ctx} is not a valid state of the {}",
                    theory.describe()
                )));
            }
        }
        for (k, dec) in br.decodings.iter().enumerate() {
            let ctx = format!("{prefix}decoding measurement for bit {}", k + 1);
            if !theory.is_measurement(&dec.measurement).map_err(wrap(ctx.clone()))? {
                return Err(Error::StrategyInvalid(format!(
                    "{ctx} is not a valid measurement of the {}",
                    theory.describe()
                )));
            }
        }
        let w = br.weight.value();
        for (a, s) in br.encoding.iter().enumerate() {
            for (k, dec) in br.decodings.iter().enumerate() {
                let mut pz = 0.0;
                for (e, g) in dec.measurement.iter().zip(&dec.guesses) {
                    let p = theory
                        .probability(e, s)
                        .map_err(wrap(format!("{prefix}bit {} on input {}", k + 1, bit_string(a, n))))?;
                    pz += p * g.prob_zero();
                }
                p_zero[a][k] += w * pz.clamp(0.0, 1.0);
            }
        }
    }

    let pa = 1.0 / inputs as f64;
    let pb = 1.0 / n as f64;
    let joint: Vec<Vec<[f64; 2]>> = p_zero
        .iter()
        .map(|row| row.iter().map(|&z| [pa * pb * z, pa * pb * (1.0 - z)]).collect())
        .collect();

    let mut per_bit_mi = Vec::with_capacity(n);
    let mut success = Vec::with_capacity(n);
    for k in 0..n {
        let mut table = vec![vec![0.0; 2]; 2];
        for (a, row) in p_zero.iter().enumerate() {
            let x = bit(a, k, n);
            table[x][0] += pa * row[k];
            table[x][1] += pa * (1.0 - row[k]);
        }
        per_bit_mi.push(mutual_information(&table)?);
        success.push(table[0][0] + table[1][1]);
    }
    let score = per_bit_mi.iter().sum();
    let bound = theory.capacity_bits()?;
    let mut report = GameReport {
        n_bits: n,
        joint,
        per_bit_mi,
        success,
        score,
        bound,
        violation: false,
    };
    report.violation = !ic_check(&report, bound);
    Ok(report)
}

/// `I(X:Y)` in bits for a joint table `p[x][y]`.
pub fn mutual_information(joint: &[Vec<f64>]) -> Result<f64> {
    let cols = joint.first().map_or(0, Vec::len);
    if joint.is_empty() || cols == 0 || joint.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidDistribution("table must be a nonempty rectangle".into()));
    }
    let mut total = 0.0;
    for &p in joint.iter().flatten() {
        if !p.is_finite() || p < 0.0 {
            return Err(Error::InvalidDistribution(format!("entry {p} is not a probability")));
        }
        total += p;
    }
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution(format!("entries sum to {total}")));
    }
    let px: Vec<f64> = joint.iter().map(|r| r.iter().sum()).collect();
    let py: Vec<f64> = (0..cols).map(|c| joint.iter().map(|r| r[c]).sum()).collect();
    let mut mi = 0.0;
    for (x, row) in joint.iter().enumerate() {
        for (y, &p) in row.iter().enumerate() {
            if p > 0.0 {
                mi += p * (p / (px[x] * py[y])).log2();
            }
        }
    }
    Ok(mi.max(0.0))
}

/// `h(p) = −p log₂ p − (1−p) log₂(1−p)`, zero at the endpoints.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("{p} is not a probability")));
    }
    let term = |x: f64| if x > 0.0 { -x * x.log2() } else { 0.0 };
    Ok(term(p) + term(1.0 - p))
}

/// `true` iff the score respects the bound, `I_N <= Θ`.
pub fn ic_check(report: &GameReport, theta_bits: f64) -> bool {
    report.score <= theta_bits + IC_SLACK
}
