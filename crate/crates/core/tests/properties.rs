use graphinv::combination::GraphCombination;
use graphinv::degree::{moduli_degree, moduli_degree_with, DegreeSolver, RandomGamma};
use graphinv::eval::{evaluate, evaluate_combination, random_distinct_configuration, Configuration};
use graphinv::graph::{enumerate_noncrossing, Edge, Graph, WeightVector};
use graphinv::kempe::{kempe_decompose, lift_graph, neutralize, Bipartition};
use graphinv::linalg::RationalMatrix;
use graphinv::rational::{int, Rational};
use graphinv::sample::{random_combination, random_graph, random_regular_graph};
use graphinv::straighten::{straighten, Straightener};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_graph(seed: u64) -> (Graph, Configuration) {
    let mut r = rng(seed);
    let n = r.gen_range(2..=8);
    let edges = r.gen_range(0..=2 * n);
    let g = random_graph(n, edges, &mut r);
    let c = random_distinct_configuration(n, &mut r);
    (g, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_idempotent_and_signed(seed in any::<u64>()) {
        let (g, c) = small_graph(seed);
        let (canon, sign) = g.canonicalize();
        let (again, s2) = canon.graph().canonicalize();
        prop_assert_eq!(&again, &canon);
        prop_assert!(!s2.is_negative());
        let v = evaluate(&g, &c).unwrap();
        let w = evaluate(canon.graph(), &c).unwrap();
        prop_assert_eq!(v, w * int(sign.to_i64()));
    }

    #[test]
    fn multidegree_is_additive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=7);
        let g = random_graph(n, r.gen_range(0..6), &mut r);
        let h = random_graph(n, r.gen_range(0..6), &mut r);
        let sum: Vec<usize> = g.multidegree().iter().zip(h.multidegree()).map(|(a, b)| a + b).collect();
        prop_assert_eq!(g.multiply(&h).unwrap().multidegree(), sum);
    }

    #[test]
    fn crossing_is_symmetric_and_orientation_free(a in 1usize..=8, b in 1usize..=8, c in 1usize..=8, d in 1usize..=8) {
        prop_assume!(a != b && c != d);
        let one = Graph::new(8, vec![Edge::new(a, b), Edge::new(c, d)]).unwrap();
        let two = Graph::new(8, vec![Edge::new(d, c), Edge::new(b, a)]).unwrap();
        prop_assert_eq!(one.is_noncrossing(), two.is_noncrossing());
    }

    #[test]
    fn straightening_is_sound_and_idempotent(seed in any::<u64>()) {
        let (g, c) = small_graph(seed);
        let out = straighten(&GraphCombination::singleton(&g));
        prop_assert!(out.iter().all(|(h, _)| h.is_noncrossing()));
        prop_assert_eq!(evaluate_combination(&out, &c).unwrap(), evaluate(&g, &c).unwrap());
        prop_assert_eq!(straighten(&out), out);
    }

    #[test]
    fn straightening_is_linear(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 2 * r.gen_range(2..=4);
        let comb = random_combination(n, 2, 4, &mut r);
        let mut s = Straightener::new();
        let whole = s.straighten(&comb);
        let mut parts = GraphCombination::zero(n, vec![2; n]);
        for (g, k) in comb.iter() {
            parts.add_assign_scaled(&s.straighten_graph(g.graph()), k).unwrap();
        }
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn kempe_decomposition_is_sound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 2 * r.gen_range(1..=4);
        let d = r.gen_range(1..=3);
        let g = random_regular_graph(n, d, &mut r);
        let c = random_distinct_configuration(n, &mut r);
        let products = kempe_decompose(&g).unwrap();
        let mut total = Rational::zero();
        for p in &products {
            prop_assert_eq!(p.factors.len(), d);
            prop_assert!(p.factors.iter().all(Graph::is_perfect_matching));
            prop_assert_eq!(p.product_graph(n).multidegree(), vec![d; n]);
            total += p.evaluate(&c).unwrap();
        }
        prop_assert_eq!(total, evaluate(&g, &c).unwrap());
    }

    #[test]
    fn neutralize_leaves_only_crossing_edges(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 2 * r.gen_range(2..=4);
        let g = random_regular_graph(n, r.gen_range(1..=3), &mut r);
        let b = Bipartition::halves(n).unwrap();
        let out = neutralize(&g, &b).unwrap();
        prop_assert!(out.iter().all(|(h, _)| h.edges().iter().all(|&e| b.is_neutral(e))));
        let c = random_distinct_configuration(n, &mut r);
        prop_assert_eq!(evaluate_combination(&out, &c).unwrap(), evaluate(&g, &c).unwrap());
    }

    #[test]
    fn lift_is_regular_and_projects_back(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(3..=5);
        let w: Vec<u32> = (0..n).map(|_| r.gen_range(1..=3)).collect();
        let total: u32 = w.iter().sum();
        prop_assume!(total % 2 == 0 && w.iter().all(|&x| 2 * x <= total));
        let wv = WeightVector::new(w.clone()).unwrap();
        // a graph of multidegree d·w: project a random regular graph on the copies
        let d = r.gen_range(1..=2);
        let copies: Vec<usize> = w.iter().enumerate().flat_map(|(i, &x)| std::iter::repeat(i + 1).take(x as usize)).collect();
        let up = random_regular_graph(total as usize, d, &mut r);
        let edges: Vec<Edge> = up.edges().iter().map(|e| Edge::new(copies[e.tail - 1], copies[e.head - 1])).collect();
        prop_assume!(edges.iter().all(|e| e.tail != e.head));
        let g = Graph::new(n, edges).unwrap();
        let lifted = lift_graph(&g, &wv).unwrap();
        prop_assert_eq!(lifted.degree, d);
        prop_assert_eq!(lifted.graph.regular_degree(), Some(d));
        let c = random_distinct_configuration(n, &mut r);
        let spread = Configuration::new(lifted.projection.iter().map(|&v| c.points()[v - 1].clone()).collect()).unwrap();
        prop_assert_eq!(evaluate(&lifted.graph, &spread).unwrap(), evaluate(&g, &c).unwrap());
    }

    #[test]
    fn ratios_are_projectively_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 2 * r.gen_range(2..=4);
        let g = random_regular_graph(n, 2, &mut r);
        let h = random_regular_graph(n, 2, &mut r);
        let c = random_distinct_configuration(n, &mut r);
        let (a, b, cc, d) = loop {
            let m: Vec<i64> = (0..4).map(|_| r.gen_range(-9..=9)).collect();
            if m[0] * m[3] - m[1] * m[2] != 0 {
                break (int(m[0]), int(m[1]), int(m[2]), int(m[3]));
            }
        };
        let moved = c.mobius(&a, &b, &cc, &d);
        let (gh, gh2) = (evaluate(&h, &c).unwrap(), evaluate(&h, &moved).unwrap());
        prop_assume!(!gh.is_zero());
        prop_assert_eq!(evaluate(&g, &c).unwrap() / gh, evaluate(&g, &moved).unwrap() / gh2);
    }

    #[test]
    fn rank_is_transpose_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (rows, cols) = (r.gen_range(1..=6), r.gen_range(1..=6));
        // low-rank products make the check meaningful
        let k = r.gen_range(0..=3);
        let left: Vec<Vec<i64>> = (0..rows).map(|_| (0..k).map(|_| r.gen_range(-3..=3)).collect()).collect();
        let right: Vec<Vec<i64>> = (0..k).map(|_| (0..cols).map(|_| r.gen_range(-3..=3)).collect()).collect();
        let data: Vec<Vec<Rational>> = (0..rows)
            .map(|i| (0..cols).map(|j| int((0..k).map(|t| left[i][t] * right[t][j]).sum())).collect())
            .collect();
        let m = RationalMatrix::from_rows(data).unwrap();
        let rank = m.rank();
        prop_assert!(rank <= k);
        prop_assert_eq!(rank, m.transpose().rank());
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.len() + rank, cols);
        for v in kernel {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
        }
    }
}

#[test]
fn catalan_and_riordan_counts() {
    let counts: Vec<usize> =
        (4..=14).step_by(2).map(|n| enumerate_noncrossing(n, &vec![1; n]).unwrap().len()).collect();
    assert_eq!(counts, vec![2, 5, 14, 42, 132, 429]);
    assert_eq!(enumerate_noncrossing(8, &[2; 8]).unwrap().len(), 91);
}

#[test]
fn noncrossing_basis_is_independent() {
    let mut r = rng(9);
    for (n, d) in [(6, 1), (8, 1), (6, 2), (5, 2)] {
        let basis = enumerate_noncrossing(n, &vec![d; n]).unwrap();
        let rows: Vec<Vec<Rational>> = (0..basis.len() + 3)
            .map(|_| {
                let c = random_distinct_configuration(n, &mut r);
                basis.iter().map(|g| evaluate(g, &c).unwrap()).collect()
            })
            .collect();
        assert_eq!(RationalMatrix::from_rows(rows).unwrap().rank(), basis.len(), "n={n} d={d}");
    }
}

#[test]
fn degree_does_not_depend_on_gamma() {
    let mut r = rng(20);
    let mut tested = 0;
    while tested < 20 {
        let n = r.gen_range(3..=8);
        let w: Vec<u32> = (0..n).map(|_| r.gen_range(1..=4)).collect();
        let wv = WeightVector::new(w).unwrap();
        let Ok(expected) = moduli_degree(&wv) else { continue };
        tested += 1;
        assert_eq!(DegreeSolver::without_memo().degree(&wv).unwrap(), expected);
        for seed in 0..5 {
            let mut chooser = RandomGamma(rng(seed));
            assert_eq!(moduli_degree_with(&wv, &mut chooser).unwrap(), expected, "{wv}");
        }
    }
}

#[test]
fn degree_scales_with_weights() {
    let three = num_bigint::BigUint::from(3u32);
    for d in [2u32, 3] {
        let scaled = moduli_degree(&WeightVector::new(vec![d; 6]).unwrap()).unwrap();
        assert_eq!(scaled, num_bigint::BigUint::from(d.pow(3)) * &three);
    }
}
