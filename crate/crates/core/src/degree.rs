//! Degree of the moduli space `M_w` of weighted points on the line.
//!
//! The recursion cuts `M_w` by the hyperplane section `X_Γ = 0` for a graph
//! `Γ` of multidegree `w`. Each edge `jk` of `Γ` contributes the locus where
//! `p_j = p_k`, which is `M_{w'}` with `j` and `k` merged, counted with the
//! edge multiplicity.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::WeightVector;

/// An edge `j–k` of `Γ` with multiplicity, indices into the sorted weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GammaEdge {
    pub j: usize,
    pub k: usize,
    pub multiplicity: u32,
}

/// Chooses the graph `Γ` in the splitting step. Receives weights sorted in
/// decreasing order.
pub trait GammaChooser {
    fn choose(&mut self, weights: &[u32]) -> Vec<GammaEdge>;
}

/// Joins the two vertices of largest remaining degree, ties broken by index.
#[derive(Clone, Copy, Debug, Default)]
pub struct GreedyGamma;

impl GammaChooser for GreedyGamma {
    fn choose(&mut self, weights: &[u32]) -> Vec<GammaEdge> {
        greedy_gamma(weights)
    }
}

/// Builds `Γ` one random edge at a time, for checking that the result does
/// not depend on the choice.
pub struct RandomGamma<R>(pub R);

impl<R: Rng> GammaChooser for RandomGamma<R> {
    fn choose(&mut self, weights: &[u32]) -> Vec<GammaEdge> {
        random_gamma(weights, &mut self.0)
    }
}

pub fn greedy_gamma(weights: &[u32]) -> Vec<GammaEdge> {
    let mut rem: Vec<u32> = weights.to_vec();
    let mut mult: HashMap<(usize, usize), u32> = HashMap::new();
    loop {
        let mut order: Vec<usize> = (0..rem.len()).filter(|&i| rem[i] > 0).collect();
        if order.is_empty() {
            break;
        }
        order.sort_by_key(|&i| (std::cmp::Reverse(rem[i]), i));
        let (a, b) = (order[0], order[1]);
        rem[a] -= 1;
        rem[b] -= 1;
        *mult.entry((a.min(b), a.max(b))).or_default() += 1;
    }
    collect_edges(mult)
}

/// A loopless multigraph with degree sequence `weights` exists iff the sum is
/// even and no entry exceeds half of it.
fn realizable(rem: &[u32]) -> bool {
    let total: u64 = rem.iter().map(|&x| u64::from(x)).sum();
    total % 2 == 0 && rem.iter().all(|&x| 2 * u64::from(x) <= total)
}

pub fn random_gamma<R: Rng + ?Sized>(weights: &[u32], rng: &mut R) -> Vec<GammaEdge> {
    let mut rem: Vec<u32> = weights.to_vec();
    let mut mult: HashMap<(usize, usize), u32> = HashMap::new();
    while rem.iter().any(|&x| x > 0) {
        let live: Vec<usize> = (0..rem.len()).filter(|&i| rem[i] > 0).collect();
        let a = *live.choose(rng).expect("nonempty");
        // pairing with a vertex of maximal remaining degree always stays
        // realizable, so this is never empty
        let partners: Vec<usize> = live
            .iter()
            .copied()
            .filter(|&b| {
                b != a && {
                    let mut next = rem.clone();
                    next[a] -= 1;
                    next[b] -= 1;
                    realizable(&next)
                }
            })
            .collect();
        let b = *partners.choose(rng).expect("nonempty");
        rem[a] -= 1;
        rem[b] -= 1;
        *mult.entry((a.min(b), a.max(b))).or_default() += 1;
    }
    collect_edges(mult)
}

fn collect_edges(mult: HashMap<(usize, usize), u32>) -> Vec<GammaEdge> {
    let mut edges: Vec<GammaEdge> =
        mult.into_iter().map(|((j, k), m)| GammaEdge { j: j + 1, k: k + 1, multiplicity: m }).collect();
    edges.sort_by_key(|e| (e.j, e.k));
    edges
}

fn sorted_desc(mut w: Vec<u32>) -> Vec<u32> {
    w.sort_unstable_by(|a, b| b.cmp(a));
    w
}

fn total(w: &[u32]) -> u64 {
    w.iter().map(|&x| u64::from(x)).sum()
}

/// Merges positions `j < k` (1-based) into one vertex and re-sorts.
fn merge(w: &[u32], j: usize, k: usize) -> Vec<u32> {
    let mut out: Vec<u32> = w
        .iter()
        .enumerate()
        .filter(|&(i, _)| i + 1 != j && i + 1 != k)
        .map(|(_, &x)| x)
        .collect();
    out.push(w[j - 1] + w[k - 1]);
    sorted_desc(out)
}

fn validate(w: &WeightVector) -> Result<Vec<u32>> {
    let weights = sorted_desc(w.weights().to_vec());
    let t = total(&weights);
    if t % 2 != 0 {
        return Err(Error::OddTotalWeight(t));
    }
    if weights.iter().any(|&x| 2 * u64::from(x) > t) {
        return Err(Error::EmptyModuli(w.weights().to_vec()));
    }
    if weights.len() < 3 {
        return Err(Error::DegenerateModuli(w.weights().to_vec()));
    }
    Ok(weights)
}

/// True when some weight is exactly half the total, so that no point of
/// `M_w` is stable.
pub fn is_boundary(w: &WeightVector) -> bool {
    let t = w.total();
    w.weights().iter().any(|&x| 2 * u64::from(x) == t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeTrace {
    pub weights: Vec<u32>,
    #[serde(serialize_with = "as_decimal")]
    pub degree: BigUint,
    pub step: TraceStep,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "camelCase")]
pub enum TraceStep {
    /// Three points: `M_w` is a point.
    Point,
    /// `(d,d,d,d)`: the line embedded by the `d`-uple Veronese.
    Veronese,
    /// Two weights outweigh the rest; `w - e_j - e_k` has the same quotient.
    Reduce { j: usize, k: usize, child: Box<DegreeTrace> },
    /// Hyperplane section by `X_Γ`.
    Split { gamma: Vec<GammaEdge>, branches: Vec<Branch> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub edge: GammaEdge,
    #[serde(serialize_with = "as_decimal")]
    pub contribution: BigUint,
    /// Absent when `w_j + w_k` is half the total: that locus is not a
    /// component.
    pub child: Option<Box<DegreeTrace>>,
}

fn as_decimal<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Memoized evaluator. The memo is keyed on the sorted weights and is only
/// used with the deterministic `Γ`.
#[derive(Debug)]
pub struct DegreeSolver {
    memo: HashMap<Vec<u32>, BigUint>,
    use_memo: bool,
}

impl DegreeSolver {
    pub fn new() -> Self {
        DegreeSolver { memo: HashMap::new(), use_memo: true }
    }

    pub fn without_memo() -> Self {
        DegreeSolver { memo: HashMap::new(), use_memo: false }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn degree(&mut self, w: &WeightVector) -> Result<BigUint> {
        let weights = validate(w)?;
        Ok(self.degree_sorted(&weights))
    }

    fn degree_sorted(&mut self, w: &[u32]) -> BigUint {
        if self.use_memo {
            if let Some(d) = self.memo.get(w) {
                return d.clone();
            }
        }
        let d = recurse(w, &mut GreedyGamma, &mut |child, _| self.degree_sorted(child));
        if self.use_memo {
            self.memo.insert(w.to_vec(), d.clone());
        }
        d
    }
}

impl Default for DegreeSolver {
    fn default() -> Self {
        DegreeSolver::new()
    }
}

/// One level of the recursion; `sub` computes the degree of a child.
fn recurse(
    w: &[u32],
    chooser: &mut dyn GammaChooser,
    sub: &mut dyn FnMut(&[u32], &mut dyn GammaChooser) -> BigUint,
) -> BigUint {
    match plan(w, chooser) {
        Plan::Point => BigUint::one(),
        Plan::Veronese(d) => BigUint::from(d),
        Plan::Reduce { child, .. } => sub(&child, chooser),
        Plan::Split { branches, .. } => {
            let mut acc = BigUint::zero();
            for (edge, child) in branches {
                if let Some(child) = child {
                    acc += sub(&child, chooser) * edge.multiplicity;
                }
            }
            acc
        }
    }
}

enum Plan {
    Point,
    Veronese(u32),
    Reduce { j: usize, k: usize, child: Vec<u32> },
    Split { gamma: Vec<GammaEdge>, branches: Vec<(GammaEdge, Option<Vec<u32>>)> },
}

/// Decides the rule that applies to sorted, validated weights.
fn plan(w: &[u32], chooser: &mut dyn GammaChooser) -> Plan {
    let n = w.len();
    if n == 3 {
        return Plan::Point;
    }
    let t = total(w);
    if 2 * u64::from(w[0] + w[1]) > t {
        let mut child: Vec<u32> = w.to_vec();
        child[0] -= 1;
        child[1] -= 1;
        child.retain(|&x| x > 0);
        return Plan::Reduce { j: 1, k: 2, child: sorted_desc(child) };
    }
    if n == 4 {
        debug_assert!(w.iter().all(|&x| x == w[0]));
        return Plan::Veronese(w[0]);
    }
    let gamma = chooser.choose(w);
    let branches = gamma
        .iter()
        .map(|&e| {
            let pair = 2 * u64::from(w[e.j - 1] + w[e.k - 1]);
            (e, (pair < t).then(|| merge(w, e.j, e.k)))
        })
        .collect();
    Plan::Split { gamma, branches }
}

/// `deg M_w` with the deterministic `Γ` and a fresh memo.
pub fn moduli_degree(w: &WeightVector) -> Result<BigUint> {
    DegreeSolver::new().degree(w)
}

/// `deg M_w` recomputed from scratch with `Γ` supplied by `chooser` at every
/// splitting step.
pub fn moduli_degree_with(w: &WeightVector, chooser: &mut dyn GammaChooser) -> Result<BigUint> {
    fn go(w: &[u32], chooser: &mut dyn GammaChooser) -> BigUint {
        recurse(w, chooser, &mut |child, c| go(child, c))
    }
    let weights = validate(w)?;
    Ok(go(&weights, chooser))
}

/// The full recursion tree with the deterministic `Γ`.
pub fn degree_trace(w: &WeightVector) -> Result<DegreeTrace> {
    fn go(w: &[u32], memo: &mut DegreeSolver) -> DegreeTrace {
        let step = match plan(w, &mut GreedyGamma) {
            Plan::Point => TraceStep::Point,
            Plan::Veronese(_) => TraceStep::Veronese,
            Plan::Reduce { j, k, child } => TraceStep::Reduce { j, k, child: Box::new(go(&child, memo)) },
            Plan::Split { gamma, branches } => TraceStep::Split {
                gamma,
                branches: branches
                    .into_iter()
                    .map(|(edge, child)| {
                        let child = child.map(|c| Box::new(go(&c, memo)));
                        let contribution =
                            child.as_ref().map_or_else(BigUint::zero, |c| &c.degree * edge.multiplicity);
                        Branch { edge, contribution, child }
                    })
                    .collect(),
            },
        };
        let degree = memo.degree_sorted(w);
        DegreeTrace { weights: w.to_vec(), degree, step }
    }
    let weights = validate(w)?;
    Ok(go(&weights, &mut DegreeSolver::new()))
}

impl fmt::Display for DegreeTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}

impl DegreeTrace {
    fn write_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        let w = WeightVector::new(self.weights.clone()).map_err(|_| fmt::Error)?;
        match &self.step {
            TraceStep::Point => writeln!(f, "{pad}{w}: point, deg = 1"),
            TraceStep::Veronese => writeln!(f, "{pad}{w}: Veronese, deg = {}", self.degree),
            TraceStep::Reduce { j, k, child } => {
                writeln!(f, "{pad}{w}: subtract e{j} + e{k}, deg = {}", self.degree)?;
                child.write_indented(f, depth + 1)
            }
            TraceStep::Split { gamma, branches } => {
                let edges: Vec<String> = gamma
                    .iter()
                    .map(|e| {
                        if e.multiplicity == 1 {
                            format!("{}–{}", e.j, e.k)
                        } else {
                            format!("({}–{})^{}", e.j, e.k, e.multiplicity)
                        }
                    })
                    .collect();
                writeln!(f, "{pad}{w}: Γ = {}, deg = {}", edges.join("·"), self.degree)?;
                for b in branches {
                    match &b.child {
                        None => writeln!(f, "{pad}  {}–{}: not a component", b.edge.j, b.edge.k)?,
                        Some(child) => {
                            writeln!(
                                f,
                                "{pad}  {}–{} × {} contributes {}",
                                b.edge.j, b.edge.k, b.edge.multiplicity, b.contribution
                            )?;
                            child.write_indented(f, depth + 2)?;
                        }
                    }
                }
                Ok(())
            }
        }
    }
}
