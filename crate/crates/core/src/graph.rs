//! Directed loopless multigraphs on the labeled vertices `1..=n`.
//!
//! A graph `Γ` indexes the invariant `X_Γ`, the product over its edges of the
//! 2×2 brackets of the endpoint coordinates. Reversing an edge negates the
//! invariant, so every graph has a canonical form (all edges `tail < head`,
//! edges sorted) together with the sign picked up while flipping.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// Positive integer weights `w = (w₁, …, w_n)` attached to the points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("at least one weight is required".into()));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidWeights("weights must be positive".into()));
        }
        Ok(WeightVector(weights))
    }

    /// `n` copies of weight one.
    pub fn ones(n: usize) -> Self {
        WeightVector(vec![1; n.max(1)])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&w| u64::from(w)).sum()
    }

    pub fn weights(&self) -> &[u32] {
        &self.0
    }

    /// 1 if the total weight is even, 2 if it is odd: the lowest-degree
    /// invariants have multidegree `epsilon · w`.
    pub fn epsilon(&self) -> u32 {
        if self.total() % 2 == 0 {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

pub fn epsilon(w: &WeightVector) -> u32 {
    w.epsilon()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub const fn new(tail: usize, head: usize) -> Self {
        Edge { tail, head }
    }

    pub fn reversed(self) -> Self {
        Edge::new(self.head, self.tail)
    }

    /// Endpoints as `(min, max)`.
    pub fn span(self) -> (usize, usize) {
        if self.tail < self.head {
            (self.tail, self.head)
        } else {
            (self.head, self.tail)
        }
    }

    pub fn touches(self, v: usize) -> bool {
        self.tail == v || self.head == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}–{}", self.tail, self.head)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_flips(flips: usize) -> Self {
        if flips % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// A directed loopless multigraph. Edge order is preserved as given; it only
/// matters for operations that address edges by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        for e in &edges {
            for v in [e.tail, e.head] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if e.tail == e.head {
                return Err(Error::LoopEdge(e.tail));
            }
        }
        Ok(Graph { n, edges })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Graph::new(n, pairs.iter().map(|&(t, h)| Edge::new(t, h)).collect())
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new() }
    }

    pub(crate) fn new_unchecked(n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.iter().all(|e| e.tail != e.head && e.tail >= 1 && e.head >= 1 && e.tail.max(e.head) <= n));
        Graph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn multidegree(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.tail - 1] += 1;
            deg[e.head - 1] += 1;
        }
        deg
    }

    /// `Some(d)` if every vertex has valence `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.multidegree();
        let d = *deg.first()?;
        deg.iter().all(|&x| x == d).then_some(d)
    }

    pub fn is_perfect_matching(&self) -> bool {
        self.regular_degree() == Some(1)
    }

    /// Edge-multiset union, written `Γ·Δ`.
    pub fn multiply(&self, other: &Graph) -> Result<Graph> {
        if self.n != other.n {
            return Err(Error::VertexCountMismatch(self.n, other.n));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Graph { n: self.n, edges })
    }

    pub fn canonicalize(&self) -> (CanonicalGraph, Sign) {
        let mut flips = 0;
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|&e| {
                if e.tail > e.head {
                    flips += 1;
                    e.reversed()
                } else {
                    e
                }
            })
            .collect();
        edges.sort_unstable();
        (CanonicalGraph(Graph { n: self.n, edges }), Sign::from_flips(flips))
    }

    /// Pairs of edge indices `(i, j)`, `i < j`, whose chords cross when the
    /// vertices sit on a regular n-gon in order. Edges sharing an endpoint
    /// never cross.
    pub fn crossing_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                if chords_cross(self.edges[i], self.edges[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_noncrossing(&self) -> bool {
        first_crossing(&self.edges).is_none()
    }

    /// The same graph with `f` applied to every vertex label.
    pub fn relabel(&self, n: usize, f: impl Fn(usize) -> usize) -> Result<Graph> {
        Graph::new(n, self.edges.iter().map(|e| Edge::new(f(e.tail), f(e.head))).collect())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            return write!(f, "1");
        }
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

pub fn multidegree(g: &Graph) -> Vec<usize> {
    g.multidegree()
}

pub fn canonicalize(g: &Graph) -> (CanonicalGraph, Sign) {
    g.canonicalize()
}

pub fn multiply(g: &Graph, h: &Graph) -> Result<Graph> {
    g.multiply(h)
}

pub fn crossing_pairs(g: &Graph) -> Vec<(usize, usize)> {
    g.crossing_pairs()
}

pub(crate) fn chords_cross(e: Edge, f: Edge) -> bool {
    let (a, b) = e.span();
    let (c, d) = f.span();
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let inside = |x: usize| a < x && x < b;
    inside(c) != inside(d)
}

pub(crate) fn first_crossing(edges: &[Edge]) -> Option<(usize, usize)> {
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if chords_cross(edges[i], edges[j]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// A graph with every edge oriented `tail < head` and edges sorted. This is
/// the key under which invariants are stored in combinations and memo tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalGraph(Graph);

impl CanonicalGraph {
    pub fn graph(&self) -> &Graph {
        &self.0
    }

    pub fn into_graph(self) -> Graph {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.0.edges
    }

    /// Canonical product; the product of canonical graphs is canonical after
    /// re-sorting, with no sign change.
    pub fn product(&self, other: &CanonicalGraph) -> CanonicalGraph {
        debug_assert_eq!(self.n(), other.n());
        let mut edges = self.0.edges.clone();
        edges.extend_from_slice(&other.0.edges);
        edges.sort_unstable();
        CanonicalGraph(Graph { n: self.n(), edges })
    }
}

impl std::ops::Deref for CanonicalGraph {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.0
    }
}

impl fmt::Display for CanonicalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// All non-crossing canonical graphs on `n` vertices with multidegree
/// `degree`, in lexicographic order.
///
/// Vertices are scanned left to right with a stack of open edge ends: a
/// vertex closes some number of ends from the top of the stack and opens the
/// rest of its valence. Non-crossing forces last-in-first-out closing, and the
/// number closed at each vertex determines the graph, so every graph is
/// produced exactly once.
pub fn enumerate_noncrossing(n: usize, degree: &[usize]) -> Result<Vec<CanonicalGraph>> {
    if degree.len() != n {
        return Err(Error::LengthMismatch { expected: n, actual: degree.len() });
    }
    let sum: usize = degree.iter().sum();
    if sum % 2 != 0 {
        return Err(Error::OddDegreeSum(sum));
    }
    // suffix[v] = total valence of vertices v..n (0-based)
    let mut suffix = vec![0; n + 1];
    for v in (0..n).rev() {
        suffix[v] = suffix[v + 1] + degree[v];
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    let mut edges = Vec::with_capacity(sum / 2);
    scan_noncrossing(n, degree, &suffix, 0, &mut stack, &mut edges, &mut out);
    out.sort_unstable();
    Ok(out)
}

fn scan_noncrossing(
    n: usize,
    degree: &[usize],
    suffix: &[usize],
    v: usize,
    stack: &mut Vec<usize>,
    edges: &mut Vec<Edge>,
    out: &mut Vec<CanonicalGraph>,
) {
    if v == n {
        if stack.is_empty() {
            let mut e = edges.clone();
            e.sort_unstable();
            out.push(CanonicalGraph(Graph { n, edges: e }));
        }
        return;
    }
    let d = degree[v];
    let max_close = d.min(stack.len());
    for close in 0..=max_close {
        let open = d - close;
        let remaining_open = stack.len() - close + open;
        // every open end must be closable by later vertices
        if remaining_open > suffix[v + 1] {
            continue;
        }
        let mut popped = Vec::with_capacity(close);
        for _ in 0..close {
            let origin = stack.pop().expect("close <= stack len");
            edges.push(Edge::new(origin, v + 1));
            popped.push(origin);
        }
        stack.extend(std::iter::repeat(v + 1).take(open));
        scan_noncrossing(n, degree, suffix, v + 1, stack, edges, out);
        stack.truncate(stack.len() - open);
        for origin in popped.into_iter().rev() {
            edges.pop();
            stack.push(origin);
        }
    }
}

/// All perfect matchings of the given (sorted) vertex list, as canonical edge
/// lists, in lexicographic order.
pub fn perfect_matchings_of(vertices: &[usize]) -> Vec<Vec<Edge>> {
    fn rec(rest: &[usize], acc: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        let Some((&first, tail)) = rest.split_first() else {
            out.push(acc.clone());
            return;
        };
        for i in 0..tail.len() {
            acc.push(Edge::new(first, tail[i]));
            let remaining: Vec<usize> = tail.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
            rec(&remaining, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if vertices.len() % 2 == 0 {
        rec(vertices, &mut Vec::new(), &mut out);
    }
    out
}

/// Non-crossing perfect matchings of a vertex subset (crossing judged in the
/// cyclic order of the whole n-gon, which restricts to the subset's order).
pub fn noncrossing_matchings_of(vertices: &[usize]) -> Vec<Vec<Edge>> {
    perfect_matchings_of(vertices)
        .into_iter()
        .filter(|m| first_crossing(m).is_none())
        .collect()
}
