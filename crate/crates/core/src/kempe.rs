//! Decomposition of regular graph invariants into products of perfect
//! matchings, and the lift from weighted to equal-weight graphs.
//!
//! Vertices are split into positive and negative halves. Exchanging a
//! positive edge with a negative edge yields two graphs whose new edges both
//! cross the split, so repeating this removes every positive edge. A regular
//! graph with only crossing edges is bipartite, and Hall's theorem then peels
//! off one perfect matching at a time.

use std::fmt;

use num_traits::One;

use crate::combination::GraphCombination;
use crate::error::{Error, Result};
use crate::eval::{evaluate, Configuration};
use crate::graph::{Edge, Graph, WeightVector};
use crate::rational::{format_rational, Rational};
use crate::straighten::exchange_terms;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    positive: Vec<bool>,
}

impl Bipartition {
    /// `positives` are 1-based labels; the rest of `1..=n` is negative.
    pub fn new(n: usize, positives: &[usize]) -> Result<Self> {
        if n % 2 != 0 {
            return Err(Error::OddVertexCount(n));
        }
        let mut positive = vec![false; n];
        for &v in positives {
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            positive[v - 1] = true;
        }
        let count = positive.iter().filter(|&&p| p).count();
        if count != n / 2 || count != positives.len() {
            return Err(Error::LengthMismatch { expected: n / 2, actual: positives.len() });
        }
        Ok(Bipartition { positive })
    }

    /// `{1..n/2}` versus `{n/2+1..n}`.
    pub fn halves(n: usize) -> Result<Self> {
        Bipartition::new(n, &(1..=n / 2).collect::<Vec<_>>())
    }

    pub fn n(&self) -> usize {
        self.positive.len()
    }

    pub fn is_positive(&self, v: usize) -> bool {
        self.positive[v - 1]
    }

    pub fn positives(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&v| self.is_positive(v)).collect()
    }

    pub fn negatives(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&v| !self.is_positive(v)).collect()
    }

    pub fn is_neutral(&self, e: Edge) -> bool {
        self.is_positive(e.tail) != self.is_positive(e.head)
    }

    fn is_positive_edge(&self, e: Edge) -> bool {
        self.is_positive(e.tail) && self.is_positive(e.head)
    }

    fn is_negative_edge(&self, e: Edge) -> bool {
        !self.is_positive(e.tail) && !self.is_positive(e.head)
    }
}

/// A signed product of perfect matchings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingProduct {
    pub coeff: Rational,
    pub factors: Vec<Graph>,
}

impl MatchingProduct {
    pub fn evaluate(&self, c: &Configuration) -> Result<Rational> {
        let mut acc = self.coeff.clone();
        for f in &self.factors {
            acc *= evaluate(f, c)?;
        }
        Ok(acc)
    }

    /// Edge union of the factors.
    pub fn product_graph(&self, n: usize) -> Graph {
        let edges = self.factors.iter().flat_map(|f| f.edges().iter().copied()).collect();
        Graph::new_unchecked(n, edges)
    }
}

impl fmt::Display for MatchingProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", format_rational(&self.coeff))?;
        for factor in &self.factors {
            write!(f, "·X[{factor}]")?;
        }
        Ok(())
    }
}

/// Perfect matching inside a regular graph whose edges all cross `b`.
///
/// Positive vertices are first matched greedily to their smallest free
/// neighbor, then augmenting paths (neighbors tried in increasing order)
/// match the rest. Regularity guarantees Hall's condition.
pub fn hall_matching(g: &Graph, b: &Bipartition) -> Result<Graph> {
    let chosen = hall_matching_indices(g, b)?;
    Ok(Graph::new_unchecked(g.n(), chosen.into_iter().map(|i| g.edges()[i]).collect()))
}

fn hall_matching_indices(g: &Graph, b: &Bipartition) -> Result<Vec<usize>> {
    let n = g.n();
    if b.n() != n {
        return Err(Error::VertexCountMismatch(n, b.n()));
    }
    match g.regular_degree() {
        Some(d) if d >= 1 => {}
        _ => return Err(Error::NotNeutralRegular),
    }
    if !g.edges().iter().all(|&e| b.is_neutral(e)) {
        return Err(Error::NotNeutralRegular);
    }
    // adjacency of each positive vertex: (negative neighbor, edge index)
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    for (idx, e) in g.edges().iter().enumerate() {
        let (p, q) = if b.is_positive(e.tail) { (e.tail, e.head) } else { (e.head, e.tail) };
        adj[p].push((q, idx));
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    // match_of_negative[q] = (positive vertex, edge index)
    let mut match_of_negative: Vec<Option<(usize, usize)>> = vec![None; n + 1];
    let mut matched = vec![false; n + 1];
    let positives = b.positives();
    for &p in &positives {
        if let Some(&(q, idx)) = adj[p].iter().find(|(q, _)| match_of_negative[*q].is_none()) {
            match_of_negative[q] = Some((p, idx));
            matched[p] = true;
        }
    }
    fn augment(
        p: usize,
        adj: &[Vec<(usize, usize)>],
        seen: &mut [bool],
        match_of_negative: &mut [Option<(usize, usize)>],
    ) -> bool {
        for &(q, idx) in &adj[p] {
            if seen[q] {
                continue;
            }
            seen[q] = true;
            let free = match match_of_negative[q] {
                None => true,
                Some((other, _)) => augment(other, adj, seen, match_of_negative),
            };
            if free {
                match_of_negative[q] = Some((p, idx));
                return true;
            }
        }
        false
    }
    for &p in &positives {
        if !matched[p] {
            let mut seen = vec![false; n + 1];
            if !augment(p, &adj, &mut seen, &mut match_of_negative) {
                return Err(Error::NotNeutralRegular);
            }
            matched[p] = true;
        }
    }
    let mut chosen: Vec<usize> = match_of_negative.iter().flatten().map(|&(_, idx)| idx).collect();
    chosen.sort_unstable();
    Ok(chosen)
}

/// Rewrites a regular graph as a combination of graphs whose edges all
/// cross `b`, exchanging the smallest positive edge with the smallest
/// negative edge until no positive edge remains.
pub fn neutralize(g: &Graph, b: &Bipartition) -> Result<GraphCombination> {
    if b.n() != g.n() {
        return Err(Error::VertexCountMismatch(g.n(), b.n()));
    }
    if g.regular_degree().is_none() {
        return Err(Error::NotRegular);
    }
    let mut out = GraphCombination::zero(g.n(), g.multidegree());
    let mut work: Vec<(Graph, Rational)> = vec![(g.clone(), Rational::one())];
    while let Some((graph, coeff)) = work.pop() {
        let (canon, sign) = graph.canonicalize();
        let coeff = if sign.is_negative() { -coeff } else { coeff };
        let edges = canon.edges();
        let pos = edges.iter().position(|&e| b.is_positive_edge(e));
        let neg = edges.iter().position(|&e| b.is_negative_edge(e));
        match (pos, neg) {
            (None, None) => out.add_canonical(canon, coeff),
            (Some(p), Some(q)) => {
                for (next, s) in exchange_terms(&canon, p, q)? {
                    let c = if s.is_negative() { -coeff.clone() } else { coeff.clone() };
                    work.push((next, c));
                }
            }
            // regular graphs have as many positive edges as negative ones
            _ => return Err(Error::NotRegular),
        }
    }
    Ok(out)
}

/// Balanced 2-colouring when the graph is bipartite; otherwise `None`.
/// The smallest vertex of each component is coloured positive.
fn bipartite_split(g: &Graph) -> Option<Bipartition> {
    let n = g.n();
    let mut adj = vec![Vec::new(); n + 1];
    for e in g.edges() {
        adj[e.tail].push(e.head);
        adj[e.head].push(e.tail);
    }
    let mut colour: Vec<Option<bool>> = vec![None; n + 1];
    for start in 1..=n {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(true);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let c = colour[v]?;
            for &u in &adj[v] {
                match colour[u] {
                    None => {
                        colour[u] = Some(!c);
                        stack.push(u);
                    }
                    Some(cu) if cu == c => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let positives: Vec<usize> = (1..=n).filter(|&v| colour[v] == Some(true)).collect();
    Bipartition::new(n, &positives).ok()
}

/// Writes `X_g` for a d-regular graph on an even number of vertices as a
/// signed sum of products of `d` perfect matchings.
///
/// The split is a balanced 2-colouring when `g` is already bipartite (then
/// no exchanges are needed), and otherwise `{1..n/2} | {n/2+1..n}`.
pub fn kempe_decompose(g: &Graph) -> Result<Vec<MatchingProduct>> {
    let n = g.n();
    if n % 2 != 0 {
        return Err(Error::OddVertexCount(n));
    }
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    if d == 0 {
        return Ok(vec![MatchingProduct { coeff: Rational::one(), factors: Vec::new() }]);
    }
    let split = match bipartite_split(g) {
        Some(b) => b,
        None => Bipartition::halves(n)?,
    };
    let neutral = if g.edges().iter().all(|&e| split.is_neutral(e)) {
        None
    } else {
        Some(neutralize(g, &split)?)
    };
    let terms: Vec<(Graph, Rational)> = match neutral {
        None => vec![(g.clone(), Rational::one())],
        Some(c) => c.iter().map(|(h, k)| (h.graph().clone(), k.clone())).collect(),
    };
    let mut out = Vec::with_capacity(terms.len());
    for (graph, coeff) in terms {
        out.push(MatchingProduct { coeff, factors: peel_matchings(&graph, &split)? });
    }
    Ok(out)
}

fn peel_matchings(g: &Graph, b: &Bipartition) -> Result<Vec<Graph>> {
    let mut residual = g.clone();
    let mut factors = Vec::new();
    while !residual.is_empty() {
        let chosen = hall_matching_indices(&residual, b)?;
        let mut taken = vec![false; residual.edge_count()];
        for &i in &chosen {
            taken[i] = true;
        }
        factors.push(Graph::new_unchecked(g.n(), chosen.iter().map(|&i| residual.edges()[i]).collect()));
        let rest = residual
            .edges()
            .iter()
            .enumerate()
            .filter(|(i, _)| !taken[*i])
            .map(|(_, &e)| e)
            .collect();
        residual = Graph::new_unchecked(g.n(), rest);
    }
    Ok(factors)
}

/// A d-regular graph on `|w|` vertices covering a graph of multidegree
/// `d·w`, with the covering map on vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedGraph {
    pub graph: Graph,
    /// `projection[v-1]` is the vertex of the original graph under `v`.
    pub projection: Vec<usize>,
    pub degree: usize,
}

/// Splits vertex `i` into `w_i` copies; the edges at `i` are handed to its
/// copies round-robin in edge order, so every copy gets valence `d`.
pub fn lift_graph(g: &Graph, w: &WeightVector) -> Result<LiftedGraph> {
    if g.n() != w.n() {
        return Err(Error::VertexCountMismatch(g.n(), w.n()));
    }
    let deg = g.multidegree();
    let not_multiple = || Error::NotMultipleOfWeight { degree: deg.clone(), weights: w.weights().to_vec() };
    let first = w.weights()[0] as usize;
    if deg[0] == 0 || deg[0] % first != 0 {
        return Err(not_multiple());
    }
    let d = deg[0] / first;
    if deg.iter().zip(w.weights()).any(|(&x, &wi)| x != d * wi as usize) {
        return Err(not_multiple());
    }
    let mut offset = Vec::with_capacity(w.n());
    let mut projection = Vec::with_capacity(w.total() as usize);
    for (i, &wi) in w.weights().iter().enumerate() {
        offset.push(projection.len());
        projection.extend(std::iter::repeat(i + 1).take(wi as usize));
    }
    let mut counter = vec![0usize; w.n()];
    let mut copy_of = |v: usize| {
        let wi = w.weights()[v - 1] as usize;
        let c = offset[v - 1] + counter[v - 1] % wi + 1;
        counter[v - 1] += 1;
        c
    };
    let edges = g
        .edges()
        .iter()
        .map(|e| {
            let t = copy_of(e.tail);
            let h = copy_of(e.head);
            Edge::new(t, h)
        })
        .collect();
    Ok(LiftedGraph { graph: Graph::new_unchecked(projection.len(), edges), projection, degree: d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::evaluate_combination;
    use crate::rational::int;

    fn g(n: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph::from_pairs(n, pairs).unwrap()
    }

    fn cfgs(n: usize) -> Vec<Configuration> {
        let lists = ["0,1,2,3,5,8,13,21", "3,-1,4,1/2,-5,9,2,6", "7,0,-3,11,1/3,-2,5,inf"];
        lists
            .iter()
            .map(|s| {
                let pts: Vec<&str> = s.split(',').take(n).collect();
                Configuration::parse_affine_list(&pts.join(",")).unwrap()
            })
            .collect()
    }

    #[test]
    fn hall_examples() {
        let b = Bipartition::halves(4).unwrap();
        let m = g(4, &[(1, 3), (2, 4)]);
        assert_eq!(hall_matching(&m, &b).unwrap(), m);
        let square = g(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]);
        assert_eq!(hall_matching(&square, &b).unwrap(), g(4, &[(1, 3), (2, 4)]));
        let doubled = g(4, &[(1, 3), (1, 3), (2, 4), (2, 4)]);
        assert_eq!(hall_matching(&doubled, &b).unwrap(), g(4, &[(1, 3), (2, 4)]));
    }

    #[test]
    fn hall_on_complete_bipartite() {
        let b = Bipartition::halves(6).unwrap();
        let graph = g(6, &[(1, 4), (1, 6), (2, 5), (2, 4), (3, 4), (3, 5), (1, 5), (2, 6), (3, 6)]);
        let m = hall_matching(&graph, &b).unwrap();
        assert!(m.is_perfect_matching());
    }

    #[test]
    fn hall_rejects_bad_input() {
        let b = Bipartition::halves(4).unwrap();
        assert_eq!(hall_matching(&g(4, &[(1, 2), (3, 4)]), &b), Err(Error::NotNeutralRegular));
        assert_eq!(hall_matching(&g(4, &[(1, 3)]), &b), Err(Error::NotNeutralRegular));
    }

    #[test]
    fn neutralize_examples() {
        let b = Bipartition::halves(4).unwrap();
        let m = g(4, &[(1, 3), (2, 4)]);
        assert_eq!(neutralize(&m, &b).unwrap(), GraphCombination::singleton(&m));

        let graph = g(4, &[(1, 2), (3, 4), (1, 3), (2, 4)]);
        let out = neutralize(&graph, &b).unwrap();
        let expected = GraphCombination::from_terms(
            4,
            vec![2; 4],
            [
                (&g(4, &[(1, 3), (2, 4), (1, 3), (2, 4)]), int(1)),
                (&g(4, &[(1, 4), (2, 3), (1, 3), (2, 4)]), int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(out, expected);
        for c in cfgs(4) {
            assert_eq!(evaluate(&graph, &c).unwrap(), evaluate_combination(&out, &c).unwrap());
        }
        assert_eq!(neutralize(&g(4, &[(1, 2)]), &b), Err(Error::NotRegular));
    }

    #[test]
    fn decompose_examples() {
        let cycle = g(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]);
        let out = kempe_decompose(&cycle).unwrap();
        assert_eq!(
            out,
            vec![MatchingProduct { coeff: int(1), factors: vec![g(4, &[(1, 2), (3, 4)]), g(4, &[(2, 3), (4, 1)])] }]
        );

        let graph = g(4, &[(1, 2), (3, 4), (1, 3), (2, 4)]);
        let out = kempe_decompose(&graph).unwrap();
        for c in cfgs(4) {
            let total: Rational = out.iter().map(|p| p.evaluate(&c).unwrap()).sum();
            assert_eq!(total, evaluate(&graph, &c).unwrap());
        }

        let k4 = g(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        let out = kempe_decompose(&k4).unwrap();
        assert!(out.len() >= 2);
        for c in cfgs(4) {
            let total: Rational = out.iter().map(|p| p.evaluate(&c).unwrap()).sum();
            assert_eq!(total, evaluate(&k4, &c).unwrap());
        }

        let m = g(6, &[(1, 4), (2, 6), (5, 3)]);
        assert_eq!(kempe_decompose(&m).unwrap(), vec![MatchingProduct { coeff: int(1), factors: vec![m.clone()] }]);
    }

    #[test]
    fn decompose_errors() {
        assert_eq!(kempe_decompose(&g(3, &[(1, 2), (2, 3), (3, 1)])), Err(Error::OddVertexCount(3)));
        assert_eq!(kempe_decompose(&g(4, &[(1, 2), (2, 3)])), Err(Error::NotRegular));
    }

    #[test]
    fn lift_examples() {
        let w = WeightVector::new(vec![2, 1, 1]).unwrap();
        let lifted = lift_graph(&g(3, &[(1, 2), (1, 3)]), &w).unwrap();
        assert_eq!(lifted.graph, g(4, &[(1, 3), (2, 4)]));
        assert_eq!(lifted.projection, vec![1, 1, 2, 3]);
        assert_eq!(lifted.degree, 1);

        let m = g(4, &[(1, 3), (2, 4), (1, 2), (3, 4)]);
        let lifted = lift_graph(&m, &WeightVector::ones(4)).unwrap();
        assert_eq!(lifted.graph, m);
        assert_eq!(lifted.projection, vec![1, 2, 3, 4]);

        // the square with a single top edge, doubled sides and a tripled bottom
        let w = WeightVector::new(vec![1, 1, 2, 2]).unwrap();
        let square = g(4, &[(1, 2), (1, 3), (2, 4), (3, 4), (3, 4), (3, 4)]);
        let lifted = lift_graph(&square, &w).unwrap();
        assert_eq!(lifted.graph.n(), 6);
        assert_eq!(lifted.graph.regular_degree(), Some(2));
        assert_eq!(lifted.degree, 2);

        assert!(matches!(lift_graph(&g(3, &[(1, 2)]), &w3()), Err(Error::NotMultipleOfWeight { .. })));
    }

    fn w3() -> WeightVector {
        WeightVector::new(vec![1, 1, 1]).unwrap()
    }
}
