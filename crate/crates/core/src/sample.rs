//! Seeded random inputs for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::combination::GraphCombination;
use crate::graph::{Edge, Graph};
use crate::rational::int;

fn oriented<R: Rng + ?Sized>(a: usize, b: usize, rng: &mut R) -> Edge {
    if rng.gen_bool(0.5) {
        Edge::new(a, b)
    } else {
        Edge::new(b, a)
    }
}

/// `edges` uniformly random edges between distinct vertices of `1..=n`, each
/// with a random orientation.
pub fn random_graph<R: Rng + ?Sized>(n: usize, edges: usize, rng: &mut R) -> Graph {
    assert!(n >= 2, "a loopless edge needs two vertices");
    let list = (0..edges)
        .map(|_| {
            let a = rng.gen_range(1..=n);
            let mut b = rng.gen_range(1..n);
            if b >= a {
                b += 1;
            }
            oriented(a, b, rng)
        })
        .collect();
    Graph::new(n, list).expect("edges are in range and loopless")
}

pub fn random_matching<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    assert!(n % 2 == 0, "perfect matchings need an even vertex count");
    let mut vs: Vec<usize> = (1..=n).collect();
    vs.shuffle(rng);
    let edges = vs.chunks(2).map(|p| oriented(p[0], p[1], rng)).collect();
    Graph::new(n, edges).expect("matching is valid")
}

/// Union of `d` random perfect matchings: a `d`-regular multigraph.
pub fn random_regular_graph<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Graph {
    let edges = (0..d).flat_map(|_| random_matching(n, rng).edges().to_vec()).collect();
    Graph::new(n, edges).expect("matchings are valid")
}

/// A combination of `terms` random `d`-regular graphs with small nonzero
/// integer coefficients.
pub fn random_combination<R: Rng + ?Sized>(n: usize, d: usize, terms: usize, rng: &mut R) -> GraphCombination {
    let mut c = GraphCombination::zero(n, vec![d; n]);
    for _ in 0..terms {
        let g = random_regular_graph(n, d, rng);
        let k = loop {
            let k = rng.gen_range(-5i64..=5);
            if k != 0 {
                break k;
            }
        };
        c.add_graph(&g, &int(k)).expect("same multidegree");
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = random_graph(5, 7, &mut rng);
        assert_eq!(g.edge_count(), 7);
        assert!(random_matching(8, &mut rng).is_perfect_matching());
        assert_eq!(random_regular_graph(6, 3, &mut rng).regular_degree(), Some(3));
        let c = random_combination(6, 2, 4, &mut rng);
        assert_eq!(c.degree(), &[2; 6]);
    }
}
