use lattice_cover::decide::construct_embedding;
use lattice_cover::embedding::{
    diagonal_into_e8, e8_into_e8, e8_into_hyperbolic, five_pair_mixed, five_pair_same_sign, frame_in_e8, h_into_h,
    hyperbolic_pair, l_matrix, single_into_h, two_k_h_into_diag,
};
use lattice_cover::forms::{e8_form, Sign};
use lattice_cover::oracle::{brute_force_embedding, orthogonal_frame_search, SearchOutcome};
use lattice_cover::{Embedding, FormInvariants, Parity};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Node {
    /// `diag(1, -1)`
    Mixed,
    H,
    E8,
    /// `⟨1⟩⁸`
    Unit8,
}

/// A random constructor output whose source is `from`.
fn edge(rng: &mut StdRng, from: Node) -> (Embedding, Node) {
    match from {
        Node::Mixed => match rng.gen_range(0..2) {
            0 => (hyperbolic_pair(rng.gen_range(1..=4)), Node::H),
            _ => (five_pair_mixed(), Node::Mixed),
        },
        Node::H => match rng.gen_range(0..2) {
            0 => (h_into_h(rng.gen_range(1..=5)), Node::H),
            _ => (two_k_h_into_diag(rng.gen_range(1..=4)), Node::Mixed),
        },
        Node::E8 => match rng.gen_range(0..2) {
            0 => (l_matrix([2, 4, 6][rng.gen_range(0..3)]).unwrap(), Node::Unit8),
            _ => (
                e8_into_e8([4, 8, 12][rng.gen_range(0..3)], Sign::Plus).unwrap(),
                Node::E8,
            ),
        },
        Node::Unit8 => match rng.gen_range(0..2) {
            0 => (
                diagonal_into_e8([2, 4, 6][rng.gen_range(0..3)], 8, Sign::Plus).unwrap(),
                Node::E8,
            ),
            _ => {
                let p = five_pair_same_sign(Sign::Plus);
                let e = (0..3).fold(p.clone(), |acc, _| Embedding::direct_sum(&acc, &p).unwrap());
                (e, Node::Unit8)
            }
        },
    }
}

fn random_chain(rng: &mut StdRng) -> Vec<Embedding> {
    let mut node = [Node::Mixed, Node::H, Node::E8, Node::Unit8][rng.gen_range(0..4)];
    let len = rng.gen_range(2..=4);
    (0..len)
        .map(|_| {
            let (e, next) = edge(rng, node);
            node = next;
            e
        })
        .collect()
}

#[test]
fn composition_multiplies_degrees_on_random_chains() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..100 {
        let chain = random_chain(&mut rng);
        let expected: u64 = chain.iter().map(Embedding::degree).product();
        let composed = chain[1..]
            .iter()
            .try_fold(chain[0].clone(), |acc, e| Embedding::compose(&acc, e))
            .unwrap();
        assert_eq!(composed.degree(), expected);
        assert!(composed.verify());
        assert_eq!(composed.source(), chain[0].source());
        assert_eq!(composed.target(), chain.last().unwrap().target());
    }
}

#[test]
fn mismatched_chain_is_rejected() {
    let a = hyperbolic_pair(1);
    let b = l_matrix(2).unwrap();
    assert!(Embedding::compose(&a, &b).is_err());
}

fn sample_constructions() -> Vec<Embedding> {
    let mut out = vec![
        five_pair_mixed(),
        five_pair_same_sign(Sign::Plus),
        five_pair_same_sign(Sign::Minus),
    ];
    for k in 1..=4 {
        out.push(hyperbolic_pair(k));
        out.push(h_into_h(k));
        out.push(two_k_h_into_diag(k));
        out.push(single_into_h(k, Sign::Plus));
        out.push(single_into_h(k, Sign::Minus));
    }
    for d in [2, 4, 6] {
        out.push(l_matrix(d).unwrap());
        for s in [Sign::Plus, Sign::Minus] {
            out.push(diagonal_into_e8(d, 8, s).unwrap());
            out.push(diagonal_into_e8(d, 3, s).unwrap());
        }
    }
    for d in [4, 8, 12] {
        for s in [Sign::Plus, Sign::Minus] {
            out.push(e8_into_e8(d, s).unwrap());
            out.push(e8_into_hyperbolic(d, s).unwrap());
        }
    }
    out
}

#[test]
fn sources_never_outrank_targets() {
    let mut all = sample_constructions();
    let k3 = FormInvariants::new(3, 19, Parity::Even);
    for m in [
        FormInvariants::new(4, 20, Parity::Odd),
        FormInvariants::new(3, 19, Parity::Even),
    ] {
        for d in [4, 6, 8] {
            if let Ok(e) = construct_embedding(&k3, &m, d) {
                all.push(e);
            }
        }
    }
    for e in &all {
        assert!(e.verify());
        let (s, t) = (e.source().signature(), e.target().signature());
        assert!(s.n_plus <= t.n_plus && s.n_minus <= t.n_minus, "{:?} -> {:?}", s, t);
    }
}

#[test]
fn frames_are_deterministic() {
    for k in [2u64, 4, 6] {
        let cached = frame_in_e8(k).unwrap();
        let fresh = orthogonal_frame_search(&e8_form(Sign::Plus), &BigInt::from(k), 8)
            .unwrap()
            .unwrap();
        assert_eq!(cached, fresh);
        assert_eq!(frame_in_e8(k).unwrap(), cached);
    }
    assert!(frame_in_e8(1).is_none());
}

#[test]
fn oracle_finds_every_definite_construction() {
    let definite: Vec<Embedding> = sample_constructions()
        .into_iter()
        .filter(|e| {
            let t = e.target().signature();
            e.target().rank() <= 8 && (t.is_positive_definite() || t.is_negative_definite())
        })
        .collect();
    assert!(definite.len() >= 10);
    for e in &definite {
        let outcome = brute_force_embedding(e.source(), e.target(), e.degree(), 0).unwrap();
        match outcome {
            SearchOutcome::Found(found) => {
                assert!(found.verify());
                assert_eq!(found.degree(), e.degree());
            }
            other => panic!("oracle missed a degree-{} construction: {other:?}", e.degree()),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn amplification_composes(seed in any::<u64>(), a in 1u64..=6, b in 1u64..=6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let chain = random_chain(&mut rng);
        let e = &chain[0];
        let twice = e.amplify(a).amplify(b);
        let once = e.amplify(a * b);
        prop_assert_eq!(twice.matrix(), once.matrix());
        prop_assert_eq!(twice.degree(), once.degree());
        prop_assert_eq!(once.degree(), e.degree() * (a * b) * (a * b));
        prop_assert!(once.verify());
    }

    #[test]
    fn direct_sums_of_equal_degree_verify(k in 1u64..=6) {
        let a = hyperbolic_pair(k);
        let b = h_into_h(2 * k);
        let sum = Embedding::direct_sum(&a, &b).unwrap();
        prop_assert!(sum.verify());
        prop_assert_eq!(sum.degree(), 2 * k);
    }
}
