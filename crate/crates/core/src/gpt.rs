//! Polytopic GPT systems in three real dimensions: regular polygons, the
//! square bit and the classical bit.
//!
//! States are normalized by their last coordinate; the probability of an
//! effect `e` on a state `ω` is the Euclidean pairing `e·ω`.

use std::f64::consts::PI;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measurement::Measurement;
use crate::DEFAULT_TOL;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    State,
    Effect,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GptVector {
    pub coords: [f64; 3],
    pub role: Role,
}

impl GptVector {
    pub const fn state(coords: [f64; 3]) -> Self {
        Self {
            coords,
            role: Role::State,
        }
    }

    pub const fn effect(coords: [f64; 3]) -> Self {
        Self {
            coords,
            role: Role::Effect,
        }
    }

    pub const fn unit() -> Self {
        Self::effect([0.0, 0.0, 1.0])
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            coords: self.coords.map(|x| s * x),
            role: self.role,
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    fn is_finite(&self) -> bool {
        self.coords.iter().all(|x| x.is_finite())
    }
}

impl Add for GptVector {
    type Output = GptVector;
    fn add(self, rhs: Self) -> Self {
        Self {
            coords: [
                self.coords[0] + rhs.coords[0],
                self.coords[1] + rhs.coords[1],
                self.coords[2] + rhs.coords[2],
            ],
            role: self.role,
        }
    }
}

impl Sub for GptVector {
    type Output = GptVector;
    fn sub(self, rhs: Self) -> Self {
        self + rhs.scale(-1.0)
    }
}

/// Probability of effect `e` on state `omega`.
///
/// Values within `tol` of `[0, 1]` are clipped into it; larger excursions are
/// reported as [`Error::InvalidPairing`].
pub fn probability_with_tol(e: &GptVector, omega: &GptVector, tol: f64) -> Result<f64> {
    if e.role != Role::Effect || omega.role != Role::State {
        return Err(Error::InvalidParameter(
            "probability pairs an effect with a state".into(),
        ));
    }
    clip_probability(e.dot(omega), tol)
}

pub fn probability(e: &GptVector, omega: &GptVector) -> Result<f64> {
    probability_with_tol(e, omega, DEFAULT_TOL)
}

pub(crate) fn clip_probability(value: f64, tol: f64) -> Result<f64> {
    if !value.is_finite() || value < -tol || value > 1.0 + tol {
        return Err(Error::InvalidPairing { value });
    }
    Ok(value.clamp(0.0, 1.0))
}

/// A polytopic system: finitely many extremal states and the extremal rays
/// of its effect cone, plus the unit effect.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SystemDoc", into = "SystemDoc")]
pub struct GptSystem {
    name: String,
    extremal_states: Vec<GptVector>,
    extremal_effects: Vec<GptVector>,
    unit_effect: GptVector,
}

/// JSON layout of a system: plain coordinate triples grouped by role.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct SystemDoc {
    name: String,
    states: Vec<[f64; 3]>,
    effects: Vec<[f64; 3]>,
    unit: [f64; 3],
}

impl TryFrom<SystemDoc> for GptSystem {
    type Error = Error;
    fn try_from(doc: SystemDoc) -> Result<Self> {
        GptSystem::new(
            doc.name,
            doc.states.into_iter().map(GptVector::state).collect(),
            doc.effects.into_iter().map(GptVector::effect).collect(),
            GptVector::effect(doc.unit),
        )
    }
}

impl From<GptSystem> for SystemDoc {
    fn from(s: GptSystem) -> Self {
        SystemDoc {
            name: s.name,
            states: s.extremal_states.iter().map(|v| v.coords).collect(),
            effects: s.extremal_effects.iter().map(|v| v.coords).collect(),
            unit: s.unit_effect.coords,
        }
    }
}

impl GptSystem {
    /// Validates the system invariants: normalized states, every extremal
    /// effect a probability on every extremal state, and `u·ω = 1`.
    pub fn new(
        name: impl Into<String>,
        extremal_states: Vec<GptVector>,
        extremal_effects: Vec<GptVector>,
        unit_effect: GptVector,
    ) -> Result<Self> {
        let tol = DEFAULT_TOL;
        if extremal_states.is_empty() {
            return Err(Error::InvalidParameter("system has no states".into()));
        }
        let all = extremal_states
            .iter()
            .chain(&extremal_effects)
            .chain(std::iter::once(&unit_effect));
        if all.clone().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("coordinates must be finite".into()));
        }
        for (i, w) in extremal_states.iter().enumerate() {
            if (w.coords[2] - 1.0).abs() > tol {
                return Err(Error::InvalidParameter(format!(
                    "state {i} is not normalized (last coordinate {})",
                    w.coords[2]
                )));
            }
            if (unit_effect.dot(w) - 1.0).abs() > tol {
                return Err(Error::InvalidParameter(format!(
                    "unit effect gives {} on state {i}",
                    unit_effect.dot(w)
                )));
            }
            for (j, e) in extremal_effects.iter().enumerate() {
                let p = e.dot(w);
                if p < -tol || p > 1.0 + tol {
                    return Err(Error::InvalidParameter(format!(
                        "effect {j} gives {p} on state {i}"
                    )));
                }
            }
        }
        Ok(Self {
            name: name.into(),
            extremal_states: extremal_states
                .into_iter()
                .map(|v| GptVector::state(v.coords))
                .collect(),
            extremal_effects: extremal_effects
                .into_iter()
                .map(|v| GptVector::effect(v.coords))
                .collect(),
            unit_effect: GptVector::effect(unit_effect.coords),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn extremal_states(&self) -> &[GptVector] {
        &self.extremal_states
    }

    pub fn extremal_effects(&self) -> &[GptVector] {
        &self.extremal_effects
    }

    pub fn unit_effect(&self) -> &GptVector {
        &self.unit_effect
    }

    pub fn state(&self, i: usize) -> GptVector {
        self.extremal_states[i]
    }

    pub fn effect(&self, i: usize) -> GptVector {
        self.extremal_effects[i]
    }

    /// `0 <= e·ω <= 1` on every extremal state.
    pub fn is_valid_effect_tol(&self, e: &GptVector, tol: f64) -> bool {
        e.is_finite()
            && self.extremal_states.iter().all(|w| {
                let p = e.dot(w);
                p >= -tol && p <= 1.0 + tol
            })
    }

    pub fn is_valid_effect(&self, e: &GptVector) -> bool {
        self.is_valid_effect_tol(e, DEFAULT_TOL)
    }

    /// Normalized and inside the convex hull of the extremal states, checked
    /// through the dual description: every extremal effect is a probability.
    pub fn is_valid_state_tol(&self, w: &GptVector, tol: f64) -> bool {
        w.is_finite()
            && (self.unit_effect.dot(w) - 1.0).abs() <= tol
            && self.extremal_effects.iter().all(|e| {
                let p = e.dot(w);
                p >= -tol && p <= 1.0 + tol
            })
    }

    pub fn is_valid_measurement_tol(&self, m: &Measurement<GptVector>, tol: f64) -> bool {
        if m.is_empty() || !m.iter().all(|e| self.is_valid_effect_tol(e, tol)) {
            return false;
        }
        let sum = m
            .iter()
            .fold(GptVector::effect([0.0; 3]), |acc, &e| acc + e);
        sum.max_abs_diff(&self.unit_effect) <= tol
    }

    pub fn is_valid_measurement(&self, m: &Measurement<GptVector>) -> bool {
        self.is_valid_measurement_tol(m, DEFAULT_TOL)
    }
}

pub fn is_valid_effect(sys: &GptSystem, e: &GptVector) -> bool {
    sys.is_valid_effect(e)
}

pub fn is_valid_measurement(sys: &GptSystem, m: &Measurement<GptVector>) -> bool {
    sys.is_valid_measurement(m)
}

/// Regular `n`-gon system with state radius `sqrt(sec(π/n))`.
///
/// For even `n` the effects sit at the odd multiples of `π/n` with weight ½;
/// for odd `n` they sit at the state angles with weight `1/(1 + r²)`. In both
/// cases each extremal effect reaches 1 on some state and 0 on another.
pub fn polygon_system(n: usize) -> Result<GptSystem> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "polygon needs at least 3 vertices, got {n}"
        )));
    }
    let nf = n as f64;
    let r2 = 1.0 / (PI / nf).cos();
    let r = r2.sqrt();
    let states = (0..n)
        .map(|i| {
            let a = 2.0 * PI * i as f64 / nf;
            GptVector::state([r * a.cos(), r * a.sin(), 1.0])
        })
        .collect();
    let effects = (0..n)
        .map(|i| {
            if n.is_multiple_of(2) {
                let a = (2 * i + 1) as f64 * PI / nf;
                GptVector::effect([0.5 * r * a.cos(), 0.5 * r * a.sin(), 0.5])
            } else {
                let a = 2.0 * PI * i as f64 / nf;
                let w = 1.0 / (1.0 + r2);
                GptVector::effect([w * r * a.cos(), w * r * a.sin(), w])
            }
        })
        .collect();
    GptSystem::new(format!("{n}-gon"), states, effects, GptVector::unit())
}

pub fn octagon() -> GptSystem {
    polygon_system(8).expect("octagon parameters are valid")
}

/// The square bit with axis-aligned states ω₀ = (1,0,1), ω₁ = (0,1,1),
/// ω₂ = (−1,0,1), ω₃ = (0,−1,1) and diagonal effects e₀ = ½(1,1,1),
/// e₁ = ½(−1,1,1), e₂ = ½(−1,−1,1), e₃ = ½(1,−1,1).
pub fn square_bit() -> GptSystem {
    let states = [[1.0, 0.0, 1.0], [0.0, 1.0, 1.0], [-1.0, 0.0, 1.0], [0.0, -1.0, 1.0]];
    let effects = [[1.0, 1.0, 1.0], [-1.0, 1.0, 1.0], [-1.0, -1.0, 1.0], [1.0, -1.0, 1.0]];
    GptSystem::new(
        "square-bit",
        states.into_iter().map(GptVector::state).collect(),
        effects
            .into_iter()
            .map(|c| GptVector::effect(c.map(|x| 0.5 * x)))
            .collect(),
        GptVector::unit(),
    )
    .expect("square bit is a valid system")
}

/// The classical bit (1-simplex) embedded in the same coordinates.
pub fn classical_bit() -> GptSystem {
    GptSystem::new(
        "classical-bit",
        vec![
            GptVector::state([1.0, 0.0, 1.0]),
            GptVector::state([-1.0, 0.0, 1.0]),
        ],
        vec![
            GptVector::effect([0.5, 0.0, 0.5]),
            GptVector::effect([-0.5, 0.0, 0.5]),
        ],
        GptVector::unit(),
    )
    .expect("classical bit is a valid system")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    // Independent closed form for the even polygon pairing:
    // ½(1 + r² cos(gap)) with r² = sec(π/n).
    fn even_gon_pairing(n: usize, gap: f64) -> f64 {
        0.5 * (1.0 + gap.cos() / (PI / n as f64).cos())
    }

    fn state_at(sys: &GptSystem, angle: f64) -> GptVector {
        let n = sys.extremal_states().len();
        let i = (angle / (2.0 * PI / n as f64)).round() as usize % n;
        sys.state(i)
    }

    fn effect_at_odd_multiple(sys: &GptSystem, k: usize) -> GptVector {
        // effect index i sits at (2i + 1)π/n
        sys.effect((k - 1) / 2)
    }

    #[test]
    fn octagon_pairings() {
        let oct = octagon();
        let e1 = effect_at_odd_multiple(&oct, 1);
        let w0 = state_at(&oct, 0.0);
        // gap π/8 → 1
        assert!((probability(&e1, &w0).unwrap() - 1.0).abs() < 1e-12);
        // the effect at π/8 on the state at π/4 is also a gap of π/8
        let w_quarter = state_at(&oct, PI / 4.0);
        assert!((probability(&e1, &w_quarter).unwrap() - 1.0).abs() < 1e-12);
        // gap π + π/8 → 0
        let e9 = effect_at_odd_multiple(&oct, 9);
        assert!(probability(&e9, &w0).unwrap().abs() < 1e-12);
        // gap 3π/8 → 1/√2, gap 5π/8 → 1 − 1/√2
        let e3 = effect_at_odd_multiple(&oct, 3);
        let e5 = effect_at_odd_multiple(&oct, 5);
        assert!((probability(&e3, &w0).unwrap() - FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((probability(&e5, &w0).unwrap() - (1.0 - FRAC_1_SQRT_2)).abs() < 1e-12);
        assert!((even_gon_pairing(8, PI / 4.0) - 0.5 * (1.0 + (PI / 4.0).cos() / (PI / 8.0).cos())).abs() < 1e-15);
        assert!((even_gon_pairing(8, 3.0 * PI / 8.0) - FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn even_gon_matches_closed_form() {
        for n in [4usize, 6, 8, 10] {
            let sys = polygon_system(n).unwrap();
            for (j, e) in sys.extremal_effects().iter().enumerate() {
                for (i, w) in sys.extremal_states().iter().enumerate() {
                    let gap = (2 * j + 1) as f64 * PI / n as f64 - 2.0 * PI * i as f64 / n as f64;
                    assert!((e.dot(w) - even_gon_pairing(n, gap)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn square_examples() {
        let sq = square_bit();
        assert_eq!(probability(&sq.effect(0), &sq.state(0)).unwrap(), 1.0);
        assert_eq!(probability(&sq.effect(0), &sq.state(2)).unwrap(), 0.0);
        assert_eq!(probability(&sq.effect(1), &sq.state(3)).unwrap(), 0.0);
        for w in sq.extremal_states() {
            assert_eq!(probability(sq.unit_effect(), w).unwrap(), 1.0);
        }
    }

    #[test]
    fn effect_validity() {
        let sq = square_bit();
        assert!(!sq.is_valid_effect(&(sq.effect(0) + sq.effect(3))));
        assert!(sq.is_valid_effect(&sq.unit_effect().scale(0.5)));

        let oct = octagon();
        let complement = *oct.unit_effect() - oct.effect(0);
        assert!(oct.is_valid_effect(&complement));
        // u − e at π/8 is the effect at 9π/8
        assert!(complement.max_abs_diff(&oct.effect(4)) < 1e-12);
    }

    #[test]
    fn measurement_validity() {
        let sq = square_bit();
        assert!(sq.is_valid_measurement(&Measurement::new(vec![sq.effect(0), sq.effect(2)])));
        assert!(!sq.is_valid_measurement(&Measurement::new(vec![sq.effect(0), sq.effect(1)])));
        assert!(sq.is_valid_measurement(&Measurement::new(vec![*sq.unit_effect()])));
    }

    #[test]
    fn pairing_errors_and_clipping() {
        let sq = square_bit();
        let too_big = sq.effect(0) + sq.effect(3);
        assert!(matches!(
            probability(&too_big, &sq.state(0)),
            Err(Error::InvalidPairing { .. })
        ));
        let nudged = sq.effect(0).scale(1.0 + 1e-12);
        assert_eq!(probability(&nudged, &sq.state(0)).unwrap(), 1.0);
        assert!(probability(&sq.state(0), &sq.state(0)).is_err());
    }

    #[test]
    fn polygon_rejects_degenerate() {
        assert!(matches!(polygon_system(2), Err(Error::InvalidParameter(_))));
        assert!(polygon_system(3).is_ok());
    }

    #[test]
    fn all_polygon_pairings_are_probabilities() {
        for n in 3..=16 {
            let sys = polygon_system(n).unwrap();
            for e in sys.extremal_effects() {
                let values: Vec<f64> = sys.extremal_states().iter().map(|w| e.dot(w)).collect();
                assert!(values.iter().all(|&p| (-1e-12..=1.0 + 1e-12).contains(&p)), "n={n}");
                // each extremal effect touches both 0 and 1
                assert!(values.iter().any(|&p| (p - 1.0).abs() < 1e-12), "n={n}");
                assert!(values.iter().any(|&p| p.abs() < 1e-12), "n={n}");
            }
        }
    }

    #[test]
    fn complements_are_antipodal_effects() {
        for n in [4usize, 8] {
            let sys = polygon_system(n).unwrap();
            for i in 0..n {
                let c = *sys.unit_effect() - sys.effect(i);
                assert!(c.max_abs_diff(&sys.effect((i + n / 2) % n)) < 1e-12);
            }
        }
    }

    #[test]
    fn system_json_roundtrip() {
        let oct = octagon();
        let json = serde_json::to_string(&oct).unwrap();
        let back: GptSystem = serde_json::from_str(&json).unwrap();
        assert_eq!(back, oct);
        assert!(serde_json::from_str::<GptSystem>(
            r#"{"name":"bad","states":[[1,0,2]],"effects":[],"unit":[0,0,1]}"#
        )
        .is_err());
    }
}
