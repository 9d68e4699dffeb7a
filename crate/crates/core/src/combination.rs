use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{CanonicalGraph, Graph};
use crate::rational::{format_rational, Rational};

/// A formal rational combination of graphs sharing one multidegree: an
/// element of a graded piece of the invariant ring, written in the graph
/// generators. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCombination {
    n: usize,
    degree: Vec<usize>,
    terms: BTreeMap<CanonicalGraph, Rational>,
}

impl GraphCombination {
    pub fn zero(n: usize, degree: Vec<usize>) -> Self {
        GraphCombination { n, degree, terms: BTreeMap::new() }
    }

    /// `X_g` as a one-term combination (the sign of canonicalization goes
    /// into the coefficient).
    pub fn singleton(g: &Graph) -> Self {
        let mut c = GraphCombination::zero(g.n(), g.multidegree());
        c.add_unchecked(g, &Rational::one());
        c
    }

    pub fn from_terms<'a>(
        n: usize,
        degree: Vec<usize>,
        terms: impl IntoIterator<Item = (&'a Graph, Rational)>,
    ) -> Result<Self> {
        let mut c = GraphCombination::zero(n, degree);
        for (g, coeff) in terms {
            c.add_graph(g, &coeff)?;
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> &[usize] {
        &self.degree
    }

    pub fn terms(&self) -> &BTreeMap<CanonicalGraph, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &CanonicalGraph) -> Rational {
        self.terms.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_graph(&mut self, g: &Graph, coeff: &Rational) -> Result<()> {
        if g.n() != self.n {
            return Err(Error::VertexCountMismatch(self.n, g.n()));
        }
        let deg = g.multidegree();
        if deg != self.degree {
            return Err(Error::MultidegreeMismatch { expected: self.degree.clone(), actual: deg });
        }
        self.add_unchecked(g, coeff);
        Ok(())
    }

    pub(crate) fn add_unchecked(&mut self, g: &Graph, coeff: &Rational) {
        let (c, sign) = g.canonicalize();
        let signed = if sign.is_negative() { -coeff.clone() } else { coeff.clone() };
        self.add_canonical(c, signed);
    }

    pub(crate) fn add_canonical(&mut self, g: CanonicalGraph, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(g) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &GraphCombination, scale: &Rational) -> Result<()> {
        if other.n != self.n {
            return Err(Error::VertexCountMismatch(self.n, other.n));
        }
        if other.degree != self.degree && !other.is_zero() {
            return Err(Error::MultidegreeMismatch { expected: self.degree.clone(), actual: other.degree.clone() });
        }
        for (g, c) in &other.terms {
            self.add_canonical(g.clone(), c * scale);
        }
        Ok(())
    }

    pub fn scaled(&self, scale: &Rational) -> GraphCombination {
        let mut out = GraphCombination::zero(self.n, self.degree.clone());
        for (g, c) in &self.terms {
            out.add_canonical(g.clone(), c * scale);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalGraph, &Rational)> {
        self.terms.iter()
    }
}

impl fmt::Display for GraphCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})·X[{}]", format_rational(c), g)?;
        }
        Ok(())
    }
}
