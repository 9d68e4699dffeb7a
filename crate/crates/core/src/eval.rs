//! Exact evaluation of graph invariants at point configurations.
//!
//! Evaluation is the correctness oracle for everything symbolic in the
//! crate: two combinations are equal as invariants iff they agree at every
//! configuration, and random rational configurations detect inequality.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combination::GraphCombination;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, WeightVector};
use crate::rational::{format_rational, int, parse_rational, Rational};

/// A point `[u : v]` of the projective line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePoint {
    pub u: Rational,
    pub v: Rational,
}

impl ProjectivePoint {
    /// The affine point `[x : 1]`.
    pub fn affine(x: Rational) -> Self {
        ProjectivePoint { u: x, v: Rational::one() }
    }

    pub fn infinity() -> Self {
        ProjectivePoint { u: Rational::one(), v: Rational::zero() }
    }

    pub fn coincides(&self, other: &ProjectivePoint) -> bool {
        bracket(self, other).is_zero()
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            write!(f, "inf")
        } else {
            write!(f, "{}", format_rational(&(&self.u / &self.v)))
        }
    }
}

/// `u_b v_a − u_a v_b`, the factor contributed by an edge `a → b`.
fn bracket(a: &ProjectivePoint, b: &ProjectivePoint) -> Rational {
    &b.u * &a.v - &a.u * &b.v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    points: Vec<ProjectivePoint>,
}

impl Configuration {
    pub fn new(points: Vec<ProjectivePoint>) -> Result<Self> {
        if let Some(i) = points.iter().position(|p| p.u.is_zero() && p.v.is_zero()) {
            return Err(Error::ZeroPoint(i + 1));
        }
        Ok(Configuration { points })
    }

    pub fn from_affine(xs: impl IntoIterator<Item = Rational>) -> Self {
        Configuration { points: xs.into_iter().map(ProjectivePoint::affine).collect() }
    }

    /// Parses the shorthand `"0,1,2,inf"` (rationals or `inf`).
    pub fn parse_affine_list(s: &str) -> Result<Self> {
        let points = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                if tok.eq_ignore_ascii_case("inf") || tok == "∞" {
                    Ok(ProjectivePoint::infinity())
                } else {
                    parse_rational(tok).map(ProjectivePoint::affine)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Configuration::new(points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    /// Value of the edge `a → b` (1-based vertices).
    pub fn edge_value(&self, e: Edge) -> Rational {
        bracket(&self.points[e.tail - 1], &self.points[e.head - 1])
    }

    /// Applies `p ↦ (a p + b) / (c p + d)` to every point.
    pub fn mobius(&self, a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Configuration {
        let points = self
            .points
            .iter()
            .map(|p| ProjectivePoint { u: a * &p.u + b * &p.v, v: c * &p.u + d * &p.v })
            .collect();
        Configuration { points }
    }

    /// Coincidence classes as lists of 0-based indices, in order of first
    /// appearance.
    pub fn coincidence_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, p) in self.points.iter().enumerate() {
            match classes.iter_mut().find(|c| self.points[c[0]].coincides(p)) {
                Some(c) => c.push(i),
                None => classes.push(vec![i]),
            }
        }
        classes
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stability {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl Stability {
    pub fn as_str(self) -> &'static str {
        match self {
            Stability::Stable => "stable",
            Stability::StrictlySemistable => "strictlySemistable",
            Stability::Unstable => "unstable",
        }
    }
}

/// Compares the heaviest coincidence class against half the total weight.
pub fn stability(c: &Configuration, w: &WeightVector) -> Result<Stability> {
    if c.len() != w.n() {
        return Err(Error::LengthMismatch { expected: w.n(), actual: c.len() });
    }
    let heaviest = c
        .coincidence_classes()
        .iter()
        .map(|class| class.iter().map(|&i| u64::from(w.weights()[i])).sum::<u64>())
        .max()
        .unwrap_or(0);
    Ok(match (2 * heaviest).cmp(&w.total()) {
        std::cmp::Ordering::Less => Stability::Stable,
        std::cmp::Ordering::Equal => Stability::StrictlySemistable,
        std::cmp::Ordering::Greater => Stability::Unstable,
    })
}

pub fn evaluate(g: &Graph, c: &Configuration) -> Result<Rational> {
    if g.n() != c.len() {
        return Err(Error::LengthMismatch { expected: g.n(), actual: c.len() });
    }
    let mut acc = Rational::one();
    for &e in g.edges() {
        let v = c.edge_value(e);
        if v.is_zero() {
            return Ok(v);
        }
        acc *= v;
    }
    Ok(acc)
}

pub fn evaluate_combination(comb: &GraphCombination, c: &Configuration) -> Result<Rational> {
    if comb.n() != c.len() {
        return Err(Error::LengthMismatch { expected: comb.n(), actual: c.len() });
    }
    let mut acc = Rational::zero();
    for (g, coeff) in comb.iter() {
        acc += coeff * evaluate(g, c)?;
    }
    Ok(acc)
}

/// Half-width of the integer grid affine coordinates are drawn from.
pub const SAMPLE_RANGE: i64 = 10_000;

/// A seeded stable configuration: distinct affine integer points drawn
/// uniformly from `[-SAMPLE_RANGE, SAMPLE_RANGE]`.
pub fn random_stable_configuration(w: &WeightVector, seed: u64) -> Result<Configuration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_stable_configuration_with(w, &mut rng)
}

pub fn random_stable_configuration_with<R: Rng + ?Sized>(w: &WeightVector, rng: &mut R) -> Result<Configuration> {
    let total = w.total();
    if w.weights().iter().any(|&x| 2 * u64::from(x) >= total) {
        return Err(Error::NoStableConfiguration(w.weights().to_vec()));
    }
    Ok(random_distinct_configuration(w.n(), rng))
}

/// Seeded `n` distinct affine integer points.
pub fn seeded_configuration(n: usize, seed: u64) -> Configuration {
    random_distinct_configuration(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// `n` distinct affine integer points (distinct points are stable for any
/// weights admitting stable configurations).
pub fn random_distinct_configuration<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Configuration {
    let mut xs: Vec<i64> = Vec::with_capacity(n);
    while xs.len() < n {
        let x = rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE);
        if !xs.contains(&x) {
            xs.push(x);
        }
    }
    Configuration::from_affine(xs.into_iter().map(int))
}
