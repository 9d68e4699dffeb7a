//! Plücker exchange, straightening onto the non-crossing basis, and the
//! clump map that identifies runs of adjacent vertices.
//!
//! With endpoints `i < j < k < l` and every edge oriented from its smaller
//! to its larger endpoint, the three pairings of `{i, j, k, l}` satisfy
//!
//! ```text
//! X[ik·jl] = X[ij·kl] + X[il·jk]
//! ```
//!
//! on any residual graph. Affinely this is
//! `(c−a)(d−b) = (b−a)(d−c) + (d−a)(c−b)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combination::GraphCombination;
use crate::error::{Error, Result};
use crate::graph::{enumerate_noncrossing, CanonicalGraph, Edge, Graph, Sign};
use crate::rational::Rational;

/// The two graphs (with signs) that `g` equals after exchanging edges `e1`
/// and `e2`, which must have four distinct endpoints.
pub(crate) fn exchange_terms(g: &Graph, e1: usize, e2: usize) -> Result<[(Graph, Sign); 2]> {
    let edges = g.edges();
    for index in [e1, e2] {
        if index >= edges.len() {
            return Err(Error::EdgeIndexOutOfRange { index, len: edges.len() });
        }
    }
    let (a, b) = (edges[e1], edges[e2]);
    if e1 == e2 || a.touches(b.tail) || a.touches(b.head) {
        return Err(Error::SharedEndpoint(e1, e2));
    }
    let orient = |e: Edge| if e.tail < e.head { Sign::Plus } else { Sign::Minus };
    let sign = orient(a) * orient(b);
    let mut ends = [a.tail, a.head, b.tail, b.head];
    ends.sort_unstable();
    let [i, j, k, l] = ends;
    let (sa, sb) = (a.span(), b.span());
    let pairing = |x: (usize, usize), y: (usize, usize)| (sa == x && sb == y) || (sa == y && sb == x);

    let ij_kl = [Edge::new(i, j), Edge::new(k, l)];
    let ik_jl = [Edge::new(i, k), Edge::new(j, l)];
    let il_jk = [Edge::new(i, l), Edge::new(j, k)];
    let neg = sign * Sign::Minus;
    let (first, second) = if pairing((i, k), (j, l)) {
        ((ij_kl, sign), (il_jk, sign))
    } else if pairing((i, j), (k, l)) {
        ((ik_jl, sign), (il_jk, neg))
    } else {
        debug_assert!(pairing((i, l), (j, k)));
        ((ik_jl, sign), (ij_kl, neg))
    };

    let residual: Vec<Edge> = edges
        .iter()
        .enumerate()
        .filter(|&(idx, _)| idx != e1 && idx != e2)
        .map(|(_, &e)| e)
        .collect();
    let build = |pair: [Edge; 2]| {
        let mut e = residual.clone();
        e.extend_from_slice(&pair);
        Graph::new_unchecked(g.n(), e)
    };
    Ok([(build(first.0), first.1), (build(second.0), second.1)])
}

/// Rewrites `X_g` as the two-term combination obtained by exchanging edges
/// `e1` and `e2`.
pub fn plucker_exchange(g: &Graph, e1: usize, e2: usize) -> Result<GraphCombination> {
    let terms = exchange_terms(g, e1, e2)?;
    let mut out = GraphCombination::zero(g.n(), g.multidegree());
    for (graph, sign) in &terms {
        out.add_unchecked(graph, &Rational::from_integer(sign.to_i64().into()));
    }
    Ok(out)
}

/// Sum of Euclidean chord lengths with the vertices on a unit-circumradius
/// regular n-gon. Strictly decreases under every straightening exchange.
pub fn chord_length(g: &Graph) -> f64 {
    let n = g.n() as f64;
    g.edges()
        .iter()
        .map(|e| {
            let (a, b) = e.span();
            (std::f64::consts::PI * (b - a) as f64 / n).sin()
        })
        .sum::<f64>()
        * 2.0
}

type Expansion = Arc<Vec<(CanonicalGraph, BigInt)>>;

/// Straightening engine with a per-instance memo of single-graph expansions.
/// The memo never changes results; it only avoids recomputation.
#[derive(Default)]
pub struct Straightener {
    memo: HashMap<CanonicalGraph, Expansion>,
    use_memo: bool,
}

impl Straightener {
    pub fn new() -> Self {
        Straightener { memo: HashMap::new(), use_memo: true }
    }

    /// An engine that recomputes every expansion.
    pub fn without_memo() -> Self {
        Straightener { memo: HashMap::new(), use_memo: false }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Integer expansion of a single canonical graph in the non-crossing
    /// basis.
    pub fn expand(&mut self, g: &CanonicalGraph) -> Expansion {
        if let Some(hit) = self.memo.get(g) {
            return hit.clone();
        }
        let result: Expansion = match crate::graph::first_crossing(g.edges()) {
            None => Arc::new(vec![(g.clone(), BigInt::one())]),
            Some((e1, e2)) => {
                let terms = exchange_terms(g, e1, e2).expect("crossing edges have distinct endpoints");
                let mut acc: BTreeMap<CanonicalGraph, BigInt> = BTreeMap::new();
                for (graph, sign) in terms {
                    debug_assert!(
                        chord_length(&graph) < chord_length(g) - 1e-9,
                        "exchange must shorten total chord length"
                    );
                    let (canon, flip) = graph.canonicalize();
                    let s = BigInt::from((sign * flip).to_i64());
                    for (basis, coeff) in self.expand(&canon).iter() {
                        let entry = acc.entry(basis.clone()).or_insert_with(BigInt::zero);
                        *entry += coeff * &s;
                    }
                }
                Arc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            }
        };
        if self.use_memo {
            self.memo.insert(g.clone(), result.clone());
        }
        result
    }

    pub fn straighten(&mut self, c: &GraphCombination) -> GraphCombination {
        let mut out = GraphCombination::zero(c.n(), c.degree().to_vec());
        for (g, coeff) in c.iter() {
            for (basis, k) in self.expand(g).iter() {
                out.add_canonical(basis.clone(), coeff * Rational::from_integer(k.clone()));
            }
        }
        out
    }

    pub fn straighten_graph(&mut self, g: &Graph) -> GraphCombination {
        self.straighten(&GraphCombination::singleton(g))
    }
}

/// Expresses `c` in the non-crossing basis.
pub fn straighten(c: &GraphCombination) -> GraphCombination {
    Straightener::new().straighten(c)
}

/// An ordered partition of `1..=n` into consecutive non-empty intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clumps {
    n: usize,
    /// 1-based clump index of each vertex.
    target: Vec<usize>,
    sizes: Vec<usize>,
}

impl Clumps {
    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        let n: usize = sizes.iter().sum();
        if sizes.contains(&0) {
            return Err(Error::NonContiguousClump(n));
        }
        let target = sizes
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| std::iter::repeat(i + 1).take(s))
            .collect();
        Ok(Clumps { n, target, sizes: sizes.to_vec() })
    }

    /// Validates explicit vertex lists: each must be a run of consecutive
    /// labels, and together they must cover `1..=n` in order.
    pub fn from_sets(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let mut next = 1;
        for set in sets {
            if set.is_empty() {
                return Err(Error::NonContiguousClump(n));
            }
            for &v in set {
                if v != next {
                    return Err(Error::NonContiguousClump(n));
                }
                next += 1;
            }
        }
        if next != n + 1 {
            return Err(Error::NonContiguousClump(n));
        }
        Clumps::from_sizes(&sets.iter().map(Vec::len).collect::<Vec<_>>())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn image(&self, v: usize) -> usize {
        self.target[v - 1]
    }

    /// Image of one graph, or `None` when an edge lands inside a clump.
    pub fn map_graph(&self, g: &Graph) -> Option<Graph> {
        let mut edges = Vec::with_capacity(g.edge_count());
        for e in g.edges() {
            let (t, h) = (self.image(e.tail), self.image(e.head));
            if t == h {
                return None;
            }
            edges.push(Edge::new(t, h));
        }
        Some(Graph::new_unchecked(self.count(), edges))
    }

    pub fn map_degree(&self, degree: &[usize]) -> Vec<usize> {
        let mut out = vec![0; self.count()];
        for (v, d) in degree.iter().enumerate() {
            out[self.target[v] - 1] += d;
        }
        out
    }
}

/// Identifies the vertices of each clump; graphs acquiring a loop map to 0.
pub fn clump_map(c: &GraphCombination, clumps: &Clumps) -> Result<GraphCombination> {
    if c.n() != clumps.n() {
        return Err(Error::VertexCountMismatch(c.n(), clumps.n()));
    }
    let mut out = GraphCombination::zero(clumps.count(), clumps.map_degree(c.degree()));
    for (g, coeff) in c.iter() {
        if let Some(image) = clumps.map_graph(g) {
            out.add_unchecked(&image, coeff);
        }
    }
    Ok(out)
}

/// Non-crossing perfect matchings `G` on `clumps.n()` vertices whose image
/// under the clump map is `±h`.
pub fn noncrossing_lifts(h: &Graph, clumps: &Clumps) -> Result<Vec<CanonicalGraph>> {
    if h.n() != clumps.count() {
        return Err(Error::VertexCountMismatch(clumps.count(), h.n()));
    }
    let target = h.canonicalize().0;
    let lifts = enumerate_noncrossing(clumps.n(), &vec![1; clumps.n()])?
        .into_iter()
        .filter(|g| clumps.map_graph(g).is_some_and(|img| img.canonicalize().0 == target))
        .collect();
    Ok(lifts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{evaluate, evaluate_combination, Configuration};
    use crate::rational::int;

    fn g(n: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph::from_pairs(n, pairs).unwrap()
    }

    fn combo(n: usize, terms: &[(i64, &[(usize, usize)])]) -> GraphCombination {
        let graphs: Vec<(Graph, Rational)> = terms.iter().map(|(c, p)| (g(n, p), int(*c))).collect();
        let deg = graphs[0].0.multidegree();
        GraphCombination::from_terms(n, deg, graphs.iter().map(|(gr, c)| (gr, c.clone()))).unwrap()
    }

    fn configs() -> Vec<Configuration> {
        ["0,1,2,3", "0,1,3,7", "-2,5,1/3,inf"]
            .iter()
            .map(|s| Configuration::parse_affine_list(s).unwrap())
            .collect()
    }

    #[test]
    fn exchange_on_square_diagonals() {
        let out = plucker_exchange(&g(4, &[(1, 3), (2, 4)]), 0, 1).unwrap();
        assert_eq!(out, combo(4, &[(1, &[(1, 2), (3, 4)]), (1, &[(1, 4), (2, 3)])]));
        // oracle: 4 = 1 + 3 at (0,1,2,3)
        for c in configs() {
            let lhs = evaluate(&g(4, &[(1, 3), (2, 4)]), &c).unwrap();
            assert_eq!(lhs, evaluate_combination(&out, &c).unwrap());
        }
    }

    #[test]
    fn exchange_every_pairing_and_orientation() {
        let pairings: [[(usize, usize); 2]; 3] = [[(1, 3), (2, 4)], [(1, 2), (3, 4)], [(1, 4), (2, 3)]];
        let c = Configuration::parse_affine_list("0,1,3,7,-4").unwrap();
        for pair in pairings {
            for flips in 0..4 {
                let orient = |e: (usize, usize), f: bool| if f { (e.1, e.0) } else { e };
                let a = orient(pair[0], flips & 1 == 1);
                let b = orient(pair[1], flips & 2 == 2);
                let graph = g(5, &[(5, 1), a, b]);
                let out = plucker_exchange(&graph, 1, 2).unwrap();
                assert_eq!(out.len(), 2);
                assert_eq!(evaluate(&graph, &c).unwrap(), evaluate_combination(&out, &c).unwrap());
            }
        }
    }

    #[test]
    fn spectators_pass_through() {
        let out = plucker_exchange(&g(6, &[(1, 4), (2, 5), (3, 6)]), 0, 1).unwrap();
        assert_eq!(out.len(), 2);
        for (graph, _) in out.iter() {
            assert!(graph.edges().contains(&Edge::new(3, 6)));
        }
    }

    #[test]
    fn exchange_errors() {
        assert_eq!(plucker_exchange(&g(4, &[(1, 2), (2, 4)]), 0, 1), Err(Error::SharedEndpoint(0, 1)));
        assert!(matches!(
            plucker_exchange(&g(4, &[(1, 2), (3, 4)]), 0, 5),
            Err(Error::EdgeIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn straighten_examples() {
        let out = straighten(&GraphCombination::singleton(&g(4, &[(1, 3), (2, 4)])));
        assert_eq!(out, combo(4, &[(1, &[(1, 2), (3, 4)]), (1, &[(1, 4), (2, 3)])]));
        let nc = combo(6, &[(3, &[(1, 2), (3, 6), (4, 5)]), (-2, &[(1, 6), (2, 3), (4, 5)])]);
        assert_eq!(straighten(&nc), nc);
        let three_term = combo(4, &[(1, &[(1, 3), (2, 4)]), (-1, &[(1, 2), (3, 4)]), (-1, &[(1, 4), (2, 3)])]);
        assert!(straighten(&three_term).is_zero());
    }

    #[test]
    fn memo_is_transparent() {
        let graph = g(8, &[(1, 5), (2, 6), (3, 7), (4, 8), (1, 3), (6, 8), (2, 7), (4, 5)]);
        let with = Straightener::new().straighten_graph(&graph);
        let without = Straightener::without_memo().straighten_graph(&graph);
        assert_eq!(with, without);
        assert!(with.iter().all(|(h, _)| h.is_noncrossing()));
    }

    #[test]
    fn unique_noncrossing_lift() {
        for sizes in [&[2, 1, 1, 1, 1][..], &[2, 2, 1, 1], &[1, 2, 1, 2], &[2, 1, 1, 1, 1, 1, 1]] {
            let clumps = Clumps::from_sizes(sizes).unwrap();
            let w: Vec<usize> = sizes.to_vec();
            let hs = enumerate_noncrossing(clumps.count(), &w).unwrap();
            assert!(!hs.is_empty());
            for h in hs {
                assert_eq!(noncrossing_lifts(&h, &clumps).unwrap().len(), 1, "{h} over {sizes:?}");
            }
        }
    }

    #[test]
    fn clump_examples() {
        let clumps = Clumps::from_sizes(&[2, 1, 1]).unwrap();
        let out = clump_map(&GraphCombination::singleton(&g(4, &[(1, 3), (2, 4)])), &clumps).unwrap();
        assert_eq!(out, GraphCombination::singleton(&g(3, &[(1, 2), (1, 3)])));
        let zero = clump_map(&GraphCombination::singleton(&g(4, &[(1, 2), (3, 4)])), &clumps).unwrap();
        assert!(zero.is_zero());
        let identity = Clumps::from_sizes(&[1, 1, 1, 1]).unwrap();
        let input = combo(4, &[(2, &[(1, 3), (2, 4)]), (5, &[(1, 2), (3, 4)])]);
        assert_eq!(clump_map(&input, &identity).unwrap(), input);
    }

    #[test]
    fn clump_validation() {
        assert!(Clumps::from_sets(4, &[vec![1, 2], vec![3], vec![4]]).is_ok());
        assert_eq!(Clumps::from_sets(4, &[vec![1, 3], vec![2], vec![4]]), Err(Error::NonContiguousClump(4)));
        assert_eq!(Clumps::from_sets(4, &[vec![1, 2], vec![3]]), Err(Error::NonContiguousClump(4)));
        assert_eq!(Clumps::from_sizes(&[2, 0, 2]), Err(Error::NonContiguousClump(4)));
    }
}
