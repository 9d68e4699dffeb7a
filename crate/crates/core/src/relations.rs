//! Relations among the matching invariants, normal forms, and ideal
//! membership with certificates.
//!
//! Two normal forms are used:
//!
//! * [`reduce_to_noncrossing_vars`] substitutes the straightened expansion
//!   for every matching variable. The result is a polynomial in the
//!   non-crossing matching variables, i.e. the image modulo the linear (sign
//!   and Plücker) relations.
//! * [`ring_normal_form`] multiplies each monomial out into a single regular
//!   graph and straightens it. Non-crossing graphs are a basis of each graded
//!   piece, so a polynomial vanishes on the moduli space iff this is zero.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combination::GraphCombination;
use crate::error::{Error, Result};
use crate::eval::{evaluate, Configuration};
use crate::graph::{enumerate_noncrossing, noncrossing_matchings_of, perfect_matchings_of, CanonicalGraph, Edge, Graph};
use crate::linalg::{in_span, RationalMatrix};
use crate::rational::{format_rational, primitive_integer_vector, Rational};
use crate::straighten::{Clumps, Straightener};

/// A sorted multiset of canonical graphs.
pub type Monomial = Vec<CanonicalGraph>;

/// A polynomial in the graph variables `X_Γ`, homogeneous in the number of
/// factors. Factors are usually perfect matchings; clump images are the
/// exception.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphPolynomial {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl GraphPolynomial {
    pub fn zero(n: usize) -> Self {
        GraphPolynomial { n, terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of factors per monomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Vec::len)
    }

    /// Adds `coeff · ∏ factors`, canonicalizing each factor.
    pub fn add_term(&mut self, factors: &[Graph], coeff: &Rational) -> Result<()> {
        let mut sign = crate::graph::Sign::Plus;
        let mut mono = Vec::with_capacity(factors.len());
        for f in factors {
            if f.n() != self.n {
                return Err(Error::VertexCountMismatch(self.n, f.n()));
            }
            let (c, s) = f.canonicalize();
            sign = sign * s;
            mono.push(c);
        }
        mono.sort_unstable();
        if let Some(first) = self.terms.keys().next() {
            if first.len() != mono.len() {
                return Err(Error::DegreeMismatch { expected: first.len(), actual: mono.len() });
            }
            let expected = product_degree(self.n, first);
            let actual = product_degree(self.n, &mono);
            if expected != actual {
                return Err(Error::MultidegreeMismatch { expected, actual });
            }
        }
        let coeff = if sign.is_negative() { -coeff.clone() } else { coeff.clone() };
        self.add_monomial(mono, coeff);
        Ok(())
    }

    pub(crate) fn add_monomial(&mut self, mono: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
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

    pub fn evaluate(&self, c: &Configuration) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (mono, coeff) in &self.terms {
            let mut term = coeff.clone();
            for f in mono {
                term *= evaluate(f, c)?;
            }
            acc += term;
        }
        Ok(acc)
    }

    fn scaled(&self, k: &Rational) -> GraphPolynomial {
        let mut out = GraphPolynomial::zero(self.n);
        for (m, c) in &self.terms {
            out.add_monomial(m.clone(), c * k);
        }
        out
    }

    /// Multiplies every monomial by `mono`.
    pub fn times_monomial(&self, mono: &[CanonicalGraph]) -> GraphPolynomial {
        let mut out = GraphPolynomial::zero(self.n);
        for (m, c) in &self.terms {
            let mut merged: Monomial = m.iter().chain(mono).cloned().collect();
            merged.sort_unstable();
            out.add_monomial(merged, c.clone());
        }
        out
    }

    pub fn add_assign(&mut self, other: &GraphPolynomial) {
        for (m, c) in &other.terms {
            self.add_monomial(m.clone(), c.clone());
        }
    }

    /// `Some(k)` with `self = k · other`, both nonzero.
    pub fn ratio_to(&self, other: &GraphPolynomial) -> Option<Rational> {
        let (m, c) = other.terms.iter().next()?;
        let k = self.terms.get(m)? / c;
        (self.scaled(&Rational::one()) == other.scaled(&k)).then_some(k)
    }
}

fn product_degree(n: usize, mono: &[CanonicalGraph]) -> Vec<usize> {
    let mut deg = vec![0; n];
    for f in mono {
        for (d, x) in deg.iter_mut().zip(f.multidegree()) {
            *d += x;
        }
    }
    deg
}

impl fmt::Display for GraphPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", format_rational(c))?;
            for factor in mono {
                write!(f, "·X[{factor}]")?;
            }
        }
        Ok(())
    }
}

fn require_even(n: usize) -> Result<()> {
    if n % 2 != 0 {
        Err(Error::OddVertexCount(n))
    } else {
        Ok(())
    }
}

fn matching_graph(n: usize, edges: &[Edge]) -> Graph {
    Graph::new_unchecked(n, edges.to_vec())
}

/// Every three-term Plücker relation among perfect matchings:
/// `X[ik·jl·Γ] − X[ij·kl·Γ] − X[il·jk·Γ] = 0` for each 4-subset
/// `i<j<k<l` and each perfect matching Γ of the other vertices.
pub fn plucker_linear_relations(n: usize) -> Result<Vec<GraphCombination>> {
    require_even(n)?;
    if n < 4 {
        return Err(Error::VertexCountTooSmall { n, min: 4 });
    }
    let mut out = Vec::new();
    for quad in (1..=n).combinations(4) {
        let (i, j, k, l) = (quad[0], quad[1], quad[2], quad[3]);
        let rest: Vec<usize> = (1..=n).filter(|v| !quad.contains(v)).collect();
        for gamma in perfect_matchings_of(&rest) {
            let with = |pair: [(usize, usize); 2]| {
                let mut e = gamma.clone();
                e.extend(pair.iter().map(|&(a, b)| Edge::new(a, b)));
                matching_graph(n, &e)
            };
            let crossing = with([(i, k), (j, l)]);
            let left = with([(i, j), (k, l)]);
            let right = with([(i, l), (j, k)]);
            let mut c = GraphCombination::zero(n, vec![1; n]);
            c.add_unchecked(&crossing, &Rational::one());
            c.add_unchecked(&left, &-Rational::one());
            c.add_unchecked(&right, &-Rational::one());
            out.push(c);
        }
    }
    Ok(out)
}

/// The quadrics `X[Γ₁Δ₁]X[Γ₂Δ₂] − X[Γ₁Δ₂]X[Γ₂Δ₁]` where the Δⱼ are the two
/// non-crossing matchings of a 4-set and the Γᵢ range over pairs of distinct
/// non-crossing matchings of its complement. When the complement also has
/// four vertices, each partition is taken once.
pub fn simple_binomial_relations(n: usize) -> Result<Vec<GraphPolynomial>> {
    require_even(n)?;
    let mut out = Vec::new();
    for quad in (1..=n).combinations(4) {
        let rest: Vec<usize> = (1..=n).filter(|v| !quad.contains(v)).collect();
        if rest.len() == 4 && quad[0] != 1 {
            continue;
        }
        let deltas = noncrossing_matchings_of(&quad);
        let gammas = noncrossing_matchings_of(&rest);
        debug_assert_eq!(deltas.len(), 2);
        for (g1, g2) in gammas.iter().tuple_combinations() {
            let join = |a: &[Edge], b: &[Edge]| {
                let mut e = a.to_vec();
                e.extend_from_slice(b);
                matching_graph(n, &e)
            };
            let (d1, d2) = (&deltas[0], &deltas[1]);
            let mut p = GraphPolynomial::zero(n);
            p.add_term(&[join(g1, d1), join(g2, d2)], &Rational::one())?;
            p.add_term(&[join(g1, d2), join(g2, d1)], &-Rational::one())?;
            out.push(p);
        }
    }
    Ok(out)
}

/// Monomials of a fixed degree in a fixed variable list, in lexicographic
/// order, with a reverse index.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(vars: &[CanonicalGraph], degree: usize) -> Self {
        let mut vars = vars.to_vec();
        vars.sort_unstable();
        let monomials: Vec<Monomial> = if degree == 0 {
            vec![Vec::new()]
        } else {
            vars.iter().cloned().combinations_with_replacement(degree).collect()
        };
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialBasis { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `p`; `None` if `p` uses a monomial outside the basis.
    pub fn coordinates(&self, p: &GraphPolynomial) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.len()];
        for (m, c) in p.terms() {
            v[self.position(m)?] = c.clone();
        }
        Some(v)
    }
}

/// The non-crossing perfect matchings of `1..=n`, in lexicographic order.
pub fn noncrossing_variables(n: usize) -> Vec<CanonicalGraph> {
    enumerate_noncrossing(n, &vec![1; n]).expect("even degree sum for even n")
}

/// Straightened expansion of one matching variable.
pub fn expand_variable(m: &Graph) -> Result<GraphCombination> {
    expand_variable_with(&mut Straightener::new(), m)
}

pub fn expand_variable_with(s: &mut Straightener, m: &Graph) -> Result<GraphCombination> {
    if !m.is_perfect_matching() {
        return Err(Error::NotAMatching);
    }
    Ok(s.straighten_graph(m))
}

/// Substitutes the non-crossing expansion for every matching variable.
pub fn reduce_to_noncrossing_vars(p: &GraphPolynomial) -> Result<GraphPolynomial> {
    reduce_to_noncrossing_vars_with(&mut Straightener::new(), p)
}

pub fn reduce_to_noncrossing_vars_with(s: &mut Straightener, p: &GraphPolynomial) -> Result<GraphPolynomial> {
    let mut out = GraphPolynomial::zero(p.n());
    for (mono, coeff) in p.terms() {
        let mut partial: Vec<(Monomial, BigInt)> = vec![(Vec::new(), BigInt::one())];
        for factor in mono {
            if !factor.is_perfect_matching() {
                return Err(Error::NotAMatching);
            }
            let expansion = s.expand(factor);
            let mut next = Vec::with_capacity(partial.len() * expansion.len());
            for (m, k) in &partial {
                for (g, c) in expansion.iter() {
                    let mut m2 = m.clone();
                    m2.push(g.clone());
                    next.push((m2, k * c));
                }
            }
            partial = next;
        }
        for (mut m, k) in partial {
            m.sort_unstable();
            out.add_monomial(m, coeff * Rational::from_integer(k));
        }
    }
    Ok(out)
}

/// Multiplies each monomial out into one graph and straightens the sum.
pub fn ring_normal_form(p: &GraphPolynomial) -> GraphCombination {
    ring_normal_form_with(&mut Straightener::new(), p)
}

pub fn ring_normal_form_with(s: &mut Straightener, p: &GraphPolynomial) -> GraphCombination {
    let degree = p.terms().keys().next().map(|m| product_degree(p.n(), m)).unwrap_or_else(|| vec![0; p.n()]);
    let mut out = GraphCombination::zero(p.n(), degree);
    for (mono, coeff) in p.terms() {
        let product = mono
            .iter()
            .skip(1)
            .fold(mono.first().cloned().unwrap_or_else(|| Graph::empty(p.n()).canonicalize().0), |acc, f| acc.product(f));
        for (g, k) in s.expand(&product).iter() {
            out.add_canonical(g.clone(), coeff * Rational::from_integer(k.clone()));
        }
    }
    out
}

/// Linear map from degree-`k` monomials in non-crossing matchings to the
/// non-crossing basis of multidegree `(k,…,k)`; columns are monomials.
pub fn normal_form_matrix(s: &mut Straightener, n: usize, k: usize) -> (MonomialBasis, Vec<CanonicalGraph>, RationalMatrix) {
    let vars = noncrossing_variables(n);
    let monos = MonomialBasis::new(&vars, k);
    let targets = enumerate_noncrossing(n, &vec![k; n]).expect("even degree sum");
    let row_of: HashMap<&CanonicalGraph, usize> = targets.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut m = RationalMatrix::zeros(targets.len(), monos.len());
    for (j, mono) in monos.monomials.iter().enumerate() {
        let product = mono.iter().skip(1).fold(mono[0].clone(), |acc, f| acc.product(f));
        for (g, c) in s.expand(&product).iter() {
            m.set(row_of[g], j, Rational::from_integer(c.clone()));
        }
    }
    (monos, targets, m)
}

/// Kernel of the degree-2 normal-form map: the space of quadric relations
/// in the non-crossing variables.
#[derive(Clone, Debug)]
pub struct QuadricSpace {
    pub monomials: MonomialBasis,
    pub target_dimension: usize,
    pub basis: Vec<Vec<Rational>>,
}

impl QuadricSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn quadric_relation_space(n: usize) -> Result<QuadricSpace> {
    require_even(n)?;
    if n < 4 {
        return Err(Error::VertexCountTooSmall { n, min: 4 });
    }
    let mut s = Straightener::new();
    let (monomials, targets, m) = normal_form_matrix(&mut s, n, 2);
    Ok(QuadricSpace { monomials, target_dimension: targets.len(), basis: m.kernel_basis() })
}

fn segre_six() -> &'static GraphPolynomial {
    static CELL: OnceLock<GraphPolynomial> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut s = Straightener::new();
        let (monos, _, m) = normal_form_matrix(&mut s, 6, 3);
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len(), 1, "the cubic relations of six points form a line");
        let ints = primitive_integer_vector(&kernel[0]);
        let mut p = GraphPolynomial::zero(6);
        for (mono, c) in monos.monomials.iter().zip(ints) {
            p.add_monomial(mono.clone(), Rational::from_integer(c));
        }
        p
    })
}

/// The Segre cubic relation. For six points it is the primitive integer
/// generator of the cubic relations among the five non-crossing matchings
/// (first coefficient positive in lexicographic monomial order); for more
/// points every factor is extended by the edges `7–8, 9–10, …`.
pub fn segre_cubic(n: usize) -> Result<GraphPolynomial> {
    require_even(n)?;
    if n < 6 {
        return Err(Error::VertexCountTooSmall { n, min: 6 });
    }
    let base = segre_six();
    if n == 6 {
        return Ok(base.clone());
    }
    let extra: Vec<Edge> = (7..=n).step_by(2).map(|a| Edge::new(a, a + 1)).collect();
    let mut out = GraphPolynomial::zero(n);
    for (mono, c) in base.terms() {
        let factors: Vec<Graph> = mono
            .iter()
            .map(|f| {
                let mut e = f.edges().to_vec();
                e.extend_from_slice(&extra);
                Graph::new_unchecked(n, e)
            })
            .collect();
        out.add_term(&factors, c)?;
    }
    Ok(out)
}

fn permutation_sign(perm: &[usize]) -> crate::graph::Sign {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = perm[v];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    crate::graph::Sign::from_flips(transpositions)
}

/// `Σ_σ sgn(σ) · X[σ(Γ)]^i` over all permutations of the vertices, with
/// coinciding terms merged.
pub fn odd_power_relation(n: usize, matching: &Graph, exponent: usize) -> Result<GraphPolynomial> {
    require_even(n)?;
    if matching.n() != n {
        return Err(Error::VertexCountMismatch(n, matching.n()));
    }
    if !matching.is_perfect_matching() {
        return Err(Error::NotAMatching);
    }
    if exponent % 2 == 0 || exponent <= 1 || exponent + 1 >= n {
        return Err(Error::BadExponent { exponent, n });
    }
    let mut acc: BTreeMap<CanonicalGraph, i64> = BTreeMap::new();
    for perm in (0..n).permutations(n) {
        let image: Vec<Edge> = matching
            .edges()
            .iter()
            .map(|e| Edge::new(perm[e.tail - 1] + 1, perm[e.head - 1] + 1))
            .collect();
        let (canon, flip) = Graph::new_unchecked(n, image).canonicalize();
        // an odd power keeps the orientation sign
        let s = (permutation_sign(&perm) * flip).to_i64();
        *acc.entry(canon).or_insert(0) += s;
    }
    let mut out = GraphPolynomial::zero(n);
    for (g, c) in acc {
        out.add_monomial(vec![g; exponent], Rational::from_integer(c.into()));
    }
    Ok(out)
}

/// One summand `coeff · cofactor · generator` of a membership certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateTerm {
    pub generator_index: usize,
    pub cofactor: Monomial,
    pub coeff: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub certificate: Vec<CertificateTerm>,
    /// Dimension of the ambient degree-`k` space and of the spanning set.
    pub rows: usize,
    pub columns: usize,
}

/// Decides whether `candidate` lies in the ideal generated by `generators`
/// in degree `k`, working in the polynomial ring on the non-crossing
/// matching variables (the linear relations are divided out first).
pub fn ideal_membership(candidate: &GraphPolynomial, generators: &[GraphPolynomial], k: usize) -> Result<Membership> {
    let mut s = Straightener::new();
    let n = candidate.n();
    if let Some(d) = candidate.degree() {
        if d != k {
            return Err(Error::DegreeMismatch { expected: k, actual: d });
        }
    }
    let reduced_candidate = reduce_to_noncrossing_vars_with(&mut s, candidate)?;
    if reduced_candidate.is_zero() {
        return Ok(Membership { member: true, certificate: Vec::new(), rows: 0, columns: 0 });
    }
    let mut reduced_gens = Vec::with_capacity(generators.len());
    for g in generators {
        if g.n() != n {
            return Err(Error::VertexCountMismatch(n, g.n()));
        }
        if let Some(d) = g.degree() {
            if d > k {
                return Err(Error::DegreeMismatch { expected: k, actual: d });
            }
        }
        reduced_gens.push(reduce_to_noncrossing_vars_with(&mut s, g)?);
    }
    let vars = noncrossing_variables(n);
    let target = MonomialBasis::new(&vars, k);
    let mut cofactor_bases: HashMap<usize, MonomialBasis> = HashMap::new();
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    let mut labels: Vec<(usize, Monomial)> = Vec::new();
    for (gi, g) in reduced_gens.iter().enumerate() {
        let Some(d) = g.degree() else { continue };
        let cofactors = cofactor_bases.entry(k - d).or_insert_with(|| MonomialBasis::new(&vars, k - d));
        for mono in &cofactors.monomials {
            let product = g.times_monomial(mono);
            columns.push(target.coordinates(&product).expect("products of non-crossing variables"));
            labels.push((gi, mono.clone()));
        }
    }
    let rhs = target.coordinates(&reduced_candidate).expect("reduced candidate uses non-crossing variables");
    let matrix = RationalMatrix::from_columns(target.len(), &columns)?;
    let solution = in_span(&rhs, &matrix)?;
    let certificate = match &solution {
        None => Vec::new(),
        Some(x) => x
            .iter()
            .zip(labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, (generator_index, cofactor))| CertificateTerm { generator_index, cofactor, coeff: c.clone() })
            .collect(),
    };
    Ok(Membership { member: solution.is_some(), certificate, rows: target.len(), columns: columns.len() })
}

/// Checks `reduce(candidate) = Σ coeff · cofactor · reduce(generator)`
/// identically.
pub fn verify_certificate(
    candidate: &GraphPolynomial,
    generators: &[GraphPolynomial],
    certificate: &[CertificateTerm],
) -> Result<bool> {
    let mut s = Straightener::new();
    let lhs = reduce_to_noncrossing_vars_with(&mut s, candidate)?;
    let mut rhs = GraphPolynomial::zero(candidate.n());
    for term in certificate {
        let g = generators.get(term.generator_index).ok_or(Error::DimensionMismatch {
            expected: generators.len(),
            actual: term.generator_index,
        })?;
        let reduced = reduce_to_noncrossing_vars_with(&mut s, g)?;
        rhs.add_assign(&reduced.times_monomial(&term.cofactor).scaled(&term.coeff));
    }
    Ok(lhs == rhs)
}

/// Applies the clump map factorwise; monomials with a factor that acquires
/// a loop vanish.
pub fn clump_polynomial(p: &GraphPolynomial, clumps: &Clumps) -> Result<GraphPolynomial> {
    if p.n() != clumps.n() {
        return Err(Error::VertexCountMismatch(p.n(), clumps.n()));
    }
    let mut out = GraphPolynomial::zero(clumps.count());
    'terms: for (mono, c) in p.terms() {
        let mut factors = Vec::with_capacity(mono.len());
        for f in mono {
            match clumps.map_graph(f) {
                Some(g) => factors.push(g),
                None => continue 'terms,
            }
        }
        out.add_term(&factors, c)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::straighten::straighten;

    fn g(n: usize, pairs: &[(usize, usize)]) -> Graph {
        Graph::from_pairs(n, pairs).unwrap()
    }

    fn configs(n: usize) -> Vec<Configuration> {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(11);
        (0..10).map(|_| crate::eval::random_distinct_configuration(n, &mut rng)).collect()
    }

    #[test]
    fn plucker_counts_and_zero() {
        assert_eq!(plucker_linear_relations(4).unwrap().len(), 1);
        let six = plucker_linear_relations(6).unwrap();
        assert_eq!(six.len(), 15);
        for r in &six {
            assert!(straighten(r).is_zero());
        }
        assert_eq!(plucker_linear_relations(5), Err(Error::OddVertexCount(5)));
    }

    #[test]
    fn plucker_relations_reduce_to_zero_as_linear_polynomials() {
        for r in plucker_linear_relations(6).unwrap() {
            let mut p = GraphPolynomial::zero(6);
            for (graph, c) in r.iter() {
                p.add_term(&[graph.graph().clone()], c).unwrap();
            }
            assert!(reduce_to_noncrossing_vars(&p).unwrap().is_zero());
        }
    }

    #[test]
    fn simple_binomial_counts() {
        assert!(simple_binomial_relations(6).unwrap().is_empty());
        let eight = simple_binomial_relations(8).unwrap();
        assert_eq!(eight.len(), 35);
        for r in &eight {
            assert!(ring_normal_form(r).is_zero());
            for c in configs(8).iter().take(3) {
                assert!(r.evaluate(c).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn expand_variable_examples() {
        let nc = g(4, &[(1, 2), (3, 4)]);
        assert_eq!(expand_variable(&nc).unwrap(), GraphCombination::singleton(&nc));
        let out = expand_variable(&g(4, &[(1, 3), (2, 4)])).unwrap();
        let expected = GraphCombination::from_terms(
            4,
            vec![1; 4],
            [(&g(4, &[(1, 2), (3, 4)]), int(1)), (&g(4, &[(1, 4), (2, 3)]), int(1))],
        )
        .unwrap();
        assert_eq!(out, expected);
        assert_eq!(expand_variable(&g(4, &[(1, 2), (2, 3)])), Err(Error::NotAMatching));
    }

    #[test]
    fn reduce_keeps_noncrossing_polynomials() {
        let mut p = GraphPolynomial::zero(6);
        p.add_term(&[g(6, &[(1, 2), (3, 4), (5, 6)]), g(6, &[(1, 6), (2, 3), (4, 5)])], &int(3)).unwrap();
        assert_eq!(reduce_to_noncrossing_vars(&p).unwrap(), p);
    }

    #[test]
    fn reduce_preserves_values() {
        let mut p = GraphPolynomial::zero(6);
        p.add_term(&[g(6, &[(1, 4), (2, 5), (3, 6)]), g(6, &[(1, 3), (2, 6), (4, 5)])], &int(2)).unwrap();
        p.add_term(&[g(6, &[(2, 1), (3, 5), (4, 6)]), g(6, &[(1, 5), (2, 4), (3, 6)])], &int(-7)).unwrap();
        let r = reduce_to_noncrossing_vars(&p).unwrap();
        for c in configs(6) {
            assert_eq!(p.evaluate(&c).unwrap(), r.evaluate(&c).unwrap());
        }
    }

    #[test]
    fn quadric_dimensions_small() {
        assert_eq!(quadric_relation_space(4).unwrap().dimension(), 0);
        let six = quadric_relation_space(6).unwrap();
        assert_eq!(six.monomials.len(), 15);
        assert_eq!(six.dimension(), 0);
    }

    #[test]
    fn segre_six_is_a_nontrivial_relation() {
        let s = segre_cubic(6).unwrap();
        assert_eq!(s.degree(), Some(3));
        assert!(ring_normal_form(&s).is_zero());
        assert!(!reduce_to_noncrossing_vars(&s).unwrap().is_zero());
        for c in configs(6) {
            assert!(s.evaluate(&c).unwrap().is_zero());
        }
        assert_eq!(segre_cubic(4), Err(Error::VertexCountTooSmall { n: 4, min: 6 }));
        assert_eq!(segre_cubic(7), Err(Error::OddVertexCount(7)));
    }

    #[test]
    fn segre_eight_extends_six() {
        let six = segre_cubic(6).unwrap();
        let eight = segre_cubic(8).unwrap();
        assert_eq!(six.len(), eight.len());
        for ((m6, c6), (m8, c8)) in six.terms().iter().zip(eight.terms()) {
            assert_eq!(c6, c8);
            for (f6, f8) in m6.iter().zip(m8) {
                let mut e = f6.edges().to_vec();
                e.push(Edge::new(7, 8));
                assert_eq!(f8.edges(), e.as_slice());
            }
        }
        for c in configs(8) {
            assert!(eight.evaluate(&c).unwrap().is_zero());
        }
    }

    #[test]
    fn odd_power_six_three() {
        let gamma = g(6, &[(1, 2), (3, 4), (5, 6)]);
        let r = odd_power_relation(6, &gamma, 3).unwrap();
        assert!(!r.is_zero());
        assert!(r.len() <= 15);
        for c in configs(6) {
            assert!(r.evaluate(&c).unwrap().is_zero());
        }
        assert!(ring_normal_form(&r).is_zero());
        let reduced = reduce_to_noncrossing_vars(&r).unwrap();
        let segre = reduce_to_noncrossing_vars(&segre_cubic(6).unwrap()).unwrap();
        assert!(reduced.ratio_to(&segre).is_some_and(|k| !k.is_zero()));
    }

    #[test]
    fn odd_power_errors() {
        let gamma = g(6, &[(1, 2), (3, 4), (5, 6)]);
        assert_eq!(odd_power_relation(6, &gamma, 2), Err(Error::BadExponent { exponent: 2, n: 6 }));
        assert_eq!(odd_power_relation(6, &gamma, 5), Err(Error::BadExponent { exponent: 5, n: 6 }));
        assert_eq!(odd_power_relation(6, &gamma, 1), Err(Error::BadExponent { exponent: 1, n: 6 }));
        assert_eq!(odd_power_relation(6, &g(6, &[(1, 2), (2, 3)]), 3), Err(Error::NotAMatching));
    }

    #[test]
    fn membership_trivial_cases() {
        let zero = GraphPolynomial::zero(6);
        let m = ideal_membership(&zero, &[], 3).unwrap();
        assert!(m.member && m.certificate.is_empty());
        let six = segre_cubic(6).unwrap();
        let m = ideal_membership(&six, &simple_binomial_relations(6).unwrap(), 3).unwrap();
        assert!(!m.member);
        assert!(matches!(ideal_membership(&six, &[], 2), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn membership_of_a_generator_multiple() {
        let gens = simple_binomial_relations(8).unwrap();
        let x = noncrossing_variables(8);
        let candidate = gens[3].times_monomial(&[x[5].clone()]).scaled(&int(-2));
        let m = ideal_membership(&candidate, &gens, 3).unwrap();
        assert!(m.member);
        assert!(verify_certificate(&candidate, &gens, &m.certificate).unwrap());
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), crate::graph::Sign::Plus);
        assert_eq!(permutation_sign(&[1, 0, 2]), crate::graph::Sign::Minus);
        assert_eq!(permutation_sign(&[1, 2, 0]), crate::graph::Sign::Plus);
    }
}
