use num_complex::Complex64;
use proptest::prelude::*;

use infocausal::capacity::{computational_measurement, verify_capacity_accounting, AccountingStates};
use infocausal::composition::{
    popt_membership, product_expectation, pauli_diagonal_minimum, CertifiedOperator, CompositionRule,
};
use infocausal::game::{play_ic_game, Branch, Composite, Decoding, IcStrategy, Weight};
use infocausal::gpt::polygon_system;
use infocausal::operator::{bloch_ket, kron_ket, PauliCoefficients};
use infocausal::scenarios::{min_ic3_strategy, quantum_baseline_strategy};
use infocausal::{BlochVector, ComplexMatrix, HermitianOperator, Measurement, Settings, Subsystem};

fn hermitian(dim: usize) -> impl Strategy<Value = HermitianOperator> {
    prop::collection::vec(-1.0f64..1.0, 2 * dim * dim).prop_map(move |v| {
        let mut m = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let k = 2 * (i * dim + j);
                let z = if i == j { Complex64::new(v[k], 0.0) } else { Complex64::new(v[k], v[k + 1]) };
                m[i * dim + j] = z;
                m[j * dim + i] = z.conj();
            }
        }
        HermitianOperator::new(ComplexMatrix::from_entries(dim, m).unwrap()).unwrap()
    })
}

fn bloch() -> impl Strategy<Value = BlochVector> {
    (-1.0f64..1.0, 0.0..std::f64::consts::TAU).prop_map(|(c, phi)| BlochVector::from_angles(c.acos(), phi))
}

fn transpose(h: &HermitianOperator) -> HermitianOperator {
    let d = h.dim();
    let m = h.matrix();
    let e = (0..d * d).map(|k| m[(k % d, k / d)]).collect();
    HermitianOperator::new(ComplexMatrix::from_entries(d, e).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pauli_decomposition_round_trips(w in hermitian(4)) {
        let c = w.pauli_decompose().unwrap();
        prop_assert!(c.reconstruct().approx_eq(&w, 1e-12));
        prop_assert!((c.get(0, 0) - w.trace()).abs() < 1e-12);
    }

    #[test]
    fn partial_transpose_is_an_involution(w in hermitian(4)) {
        for s in [Subsystem::A, Subsystem::B] {
            let g = w.partial_transpose(s).unwrap();
            prop_assert!(g.partial_transpose(s).unwrap().approx_eq(&w, 1e-15));
            prop_assert!((g.trace() - w.trace()).abs() < 1e-12);
        }
        let both = w.partial_transpose(Subsystem::A).unwrap().partial_transpose(Subsystem::B).unwrap();
        prop_assert!(both.approx_eq(&transpose(&w), 1e-15));
    }

    #[test]
    fn partial_transpose_of_products(a in hermitian(2), b in hermitian(2)) {
        let g = a.tensor(&b).partial_transpose(Subsystem::B).unwrap();
        prop_assert!(g.approx_eq(&a.tensor(&transpose(&b)), 1e-15));
    }

    #[test]
    fn tensor_traces_multiply(a in hermitian(2), b in hermitian(2)) {
        prop_assert!((a.tensor(&b).trace() - a.trace() * b.trace()).abs() < 1e-12);
    }

    #[test]
    fn spectrum_sums_to_trace(w in hermitian(4)) {
        let ev = w.eigenvalues();
        prop_assert_eq!(ev.len(), 4);
        prop_assert!((ev.iter().sum::<f64>() - w.trace()).abs() < 1e-10);
        prop_assert!(ev.windows(2).all(|p| p[0] <= p[1]));
        let sq: f64 = ev.iter().map(|x| x * x).sum();
        prop_assert!((sq - w.trace_with(&w)).abs() < 1e-9);
    }

    #[test]
    fn gram_matrices_are_positive(w in hermitian(4)) {
        let g = HermitianOperator::new(w.matrix() * w.matrix()).unwrap();
        prop_assert!(g.is_psd(1e-9));
        prop_assert!(popt_membership(&g, 16, 1e-9).unwrap().member);
    }

    #[test]
    fn product_expectation_matches_trace(w in hermitian(4), m in bloch(), n in bloch()) {
        let c = w.pauli_decompose().unwrap();
        let rho = m.density().tensor(&n.density());
        prop_assert!((product_expectation(&c, &m, &n) - w.trace_with(&rho)).abs() < 1e-12);
        let ket = kron_ket(&bloch_ket(&m), &bloch_ket(&n));
        prop_assert!((w.expectation(&ket) - w.trace_with(&rho)).abs() < 1e-12);
    }

    #[test]
    fn popt_minimum_is_a_lower_bound(w in hermitian(4), m in bloch(), n in bloch()) {
        let v = popt_membership(&w, 16, 1e-9).unwrap();
        let c = w.pauli_decompose().unwrap();
        prop_assert!(v.min_value <= product_expectation(&c, &m, &n) + 1e-12);
        let (a, b) = v.minimizer;
        prop_assert!((product_expectation(&c, &a, &b) - v.min_value).abs() < 1e-12);
    }

    #[test]
    fn pauli_diagonal_minimum_is_exact(c00 in -1.0f64..3.0, t in prop::array::uniform3(-1.0f64..1.0)) {
        let w = PauliCoefficients::diagonal(c00, t).reconstruct();
        let (exact, (m, n)) = pauli_diagonal_minimum(c00, t);
        let v = popt_membership(&w, 8, 1e-9).unwrap();
        prop_assert!((v.min_value - exact).abs() < 1e-9);
        let c = w.pauli_decompose().unwrap();
        prop_assert!((product_expectation(&c, &m, &n) - exact).abs() < 1e-12);
    }

    #[test]
    fn polygon_pairings_are_probabilities(n in 3usize..=16) {
        let sys = polygon_system(n).unwrap();
        for e in sys.extremal_effects() {
            for w in sys.extremal_states() {
                let p = e.dot(w);
                prop_assert!((-1e-12..=1.0 + 1e-12).contains(&p));
            }
        }
    }

    #[test]
    fn rotated_product_bases_pass_minimal_accounting(a in bloch(), b in bloch()) {
        let locals: Vec<Vec<Vec<Complex64>>> = [(a, b), (a, b.negated()), (a.negated(), b), (a.negated(), b.negated())]
            .iter()
            .map(|(x, y)| vec![bloch_ket(x), bloch_ket(y)])
            .collect();
        let effects: Vec<HermitianOperator> = locals
            .iter()
            .map(|l| HermitianOperator::projector(&kron_ket(&l[0], &l[1])))
            .collect();
        let r = verify_capacity_accounting(
            CompositionRule::Minimal,
            &AccountingStates::Product(locals),
            &Measurement::new(effects),
            2,
            2,
            &Settings::default(),
        )
        .unwrap();
        prop_assert!(r.bound_holds);
        prop_assert!((r.trace_sum - 4.0).abs() < 1e-9);
        prop_assert!(r.residuals.iter().all(|&x| x >= -1e-9));
        prop_assert!(r.max_cross_talk < 1e-9);
    }

    #[test]
    fn mixtures_mix_joint_distributions(p in 1u64..10) {
        let q = 10 - p;
        let a = quantum_baseline_strategy();
        let b = min_ic3_strategy();
        let theory = Composite::new(CompositionRule::Quantum, Settings::default());
        // the minimal-composition encodings are product states, valid quantum states;
        // pair them with the baseline decodings so both branches are quantum
        let b_branch = Branch {
            weight: Weight::new(q, 10).unwrap(),
            encoding: b.branches[0].encoding.clone(),
            decodings: a.branches[0].decodings.clone(),
        };
        let a_branch = Branch { weight: Weight::new(p, 10).unwrap(), ..a.branches[0].clone() };
        let mixed = IcStrategy { n_bits: 3, branches: vec![a_branch, b_branch.clone()] };
        let only_b = IcStrategy::deterministic(3, b_branch.encoding, b_branch.decodings);
        let ra = play_ic_game(&a, &theory).unwrap();
        let rb = play_ic_game(&only_b, &theory).unwrap();
        let rm = play_ic_game(&mixed, &theory).unwrap();
        let (wa, wb) = (p as f64 / 10.0, q as f64 / 10.0);
        for x in 0..8 {
            for k in 0..3 {
                for beta in 0..2 {
                    let want = wa * ra.joint[x][k][beta] + wb * rb.joint[x][k][beta];
                    prop_assert!((rm.joint[x][k][beta] - want).abs() < 1e-12);
                }
            }
        }
        prop_assert!(rm.score <= 2.0 + 1e-9);
    }

    #[test]
    fn flipping_every_guess_keeps_information(flip in prop::collection::vec(any::<bool>(), 3)) {
        let theory = Composite::new(CompositionRule::Minimal, Settings::default());
        let base = min_ic3_strategy();
        let mut flipped = base.clone();
        for (d, f) in flipped.branches[0].decodings.iter_mut().zip(&flip) {
            if *f {
                d.guesses = d.guesses.iter().map(|g| g.flipped()).collect();
            }
        }
        let r0 = play_ic_game(&base, &theory).unwrap();
        let r1 = play_ic_game(&flipped, &theory).unwrap();
        for (k, &f) in flip.iter().enumerate() {
            prop_assert!((r0.per_bit_mi[k] - r1.per_bit_mi[k]).abs() < 1e-12);
            let want = if f { 1.0 - r0.success[k] } else { r0.success[k] };
            prop_assert!((r1.success[k] - want).abs() < 1e-12);
        }
    }
}

#[test]
fn decodings_with_one_outcome_carry_no_information() {
    let theory = Composite::new(CompositionRule::Quantum, Settings::default());
    let mut s = quantum_baseline_strategy();
    let trivial: Measurement<CertifiedOperator> = Measurement::new(vec![HermitianOperator::identity(4).into()]);
    s.branches[0].decodings[0] = Decoding::new(trivial, vec![infocausal::game::Guess::Random]);
    let r = play_ic_game(&s, &theory).unwrap();
    assert!(r.per_bit_mi[0].abs() < 1e-15);
    assert!((r.success[0] - 0.5).abs() < 1e-15);
    assert!((r.score - 1.0).abs() < 1e-12);
}

#[test]
fn computational_measurement_sums_to_identity() {
    for dim in [2, 4, 8] {
        let total: HermitianOperator = computational_measurement(dim).effects.into_iter().sum();
        assert!(total.approx_eq(&HermitianOperator::identity(dim), 0.0));
    }
}
