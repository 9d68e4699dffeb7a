//! The acceptance suite: each criterion bundles a few exact checks and a
//! wall-clock budget.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chart::{collision_limit, gamma_discrepancies, verify_chart};
use crate::error::Result;
use crate::eval::{evaluate, evaluate_combination, random_distinct_configuration, Configuration};
use crate::graph::{enumerate_noncrossing, Graph, WeightVector};
use crate::kempe::kempe_decompose;
use crate::linalg::{rank, RationalMatrix};
use crate::relations::{
    clump_polynomial, ideal_membership, odd_power_relation, plucker_linear_relations, quadric_relation_space,
    reduce_to_noncrossing_vars_with, ring_normal_form, ring_normal_form_with, segre_cubic, simple_binomial_relations,
    verify_certificate, GraphPolynomial, MonomialBasis,
};
use crate::sample::{random_graph, random_regular_graph};
use crate::straighten::{noncrossing_lifts, Clumps, Straightener};
use crate::degree::moduli_degree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Tier {
    /// Reduced sample counts; skips the n = 8 membership solve.
    Quick,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub limit: Duration,
}

impl CriterionResult {
    pub fn checks_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn within_limit(&self) -> bool {
        self.elapsed <= self.limit
    }

    pub fn passed(&self) -> bool {
        self.checks_passed() && self.within_limit()
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{status}] {}. {} ({:.2}s of {}s)",
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs()
        )?;
        if !self.within_limit() {
            write!(f, " over time budget")?;
        }
        for c in self.checks.iter().filter(|c| !c.passed) {
            write!(f, "\n    failed: {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, name: impl Into<String>, actual: T, expected: T) {
        let passed = actual == expected;
        self.push(name, passed, format!("got {actual:?}, expected {expected:?}"));
    }

    /// Records an error as a failed check instead of aborting the criterion.
    fn ok<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.push(name, false, format!("{} ({e})", e.name()));
                None
            }
        }
    }
}

pub const CRITERIA: [(u8, &str, u64); 9] = [
    (1, "degree golden values", 10),
    (2, "degree scaling law", 10),
    (3, "non-crossing counts", 5),
    (4, "quadric relation space", 30),
    (5, "Segre cubic membership", 120),
    (6, "oracle property suites", 120),
    (7, "odd-power relation", 60),
    (8, "chart identities", 60),
    (9, "clump reduction", 30),
];

pub fn run_criterion(id: u8, seed: u64, tier: Tier) -> Option<CriterionResult> {
    let &(_, title, secs) = CRITERIA.iter().find(|c| c.0 == id)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(u64::from(id)));
    let mut checks = Checks(Vec::new());
    let start = Instant::now();
    match id {
        1 => degree_golden(&mut checks),
        2 => degree_scaling(&mut checks),
        3 => counting(&mut checks),
        4 => quadrics(&mut checks),
        5 => segre_membership(&mut checks, tier),
        6 => oracle_suites(&mut checks, &mut rng, tier),
        7 => odd_power(&mut checks),
        8 => chart(&mut checks, &mut rng, tier),
        9 => clumps(&mut checks),
        _ => unreachable!(),
    }
    Some(CriterionResult { id, title, checks: checks.0, elapsed: start.elapsed(), limit: Duration::from_secs(secs) })
}

pub fn run_all(seed: u64, tier: Tier) -> Vec<CriterionResult> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.0, seed, tier)).collect()
}

fn degree_of(checks: &mut Checks, w: &[u32], expected: u64) {
    let name = format!("deg M{:?}", w);
    let Some(wv) = checks.ok(&name, WeightVector::new(w.to_vec())) else { return };
    if let Some(d) = checks.ok(&name, moduli_degree(&wv)) {
        checks.eq(name, d, BigUint::from(expected));
    }
}

fn degree_golden(checks: &mut Checks) {
    for (n, d) in [(4, 1), (6, 3), (8, 40), (10, 1225)] {
        degree_of(checks, &vec![1; n], d);
    }
    degree_of(checks, &[2, 2, 2, 2, 2], 5);
    for d in 1..=5 {
        degree_of(checks, &[d; 4], u64::from(d));
    }
    for w in [&[3, 2, 1][..], &[2, 2, 2], &[2, 2, 1, 1], &[2, 1, 1, 1, 1]] {
        degree_of(checks, w, 1);
    }
}

fn degree_scaling(checks: &mut Checks) {
    degree_of(checks, &[2; 6], 8 * 3);
    degree_of(checks, &[3; 6], 27 * 3);
    degree_of(checks, &[2; 8], 32 * 40);
}

fn counting(checks: &mut Checks) {
    let count = |n: usize, d: usize| enumerate_noncrossing(n, &vec![d; n]).map(|v| v.len());
    if let Some(c) = checks.ok("matchings n=8", count(8, 1)) {
        checks.eq("non-crossing matchings on 8 vertices", c, 14);
    }
    if let Some(c) = checks.ok("2-regular n=8", count(8, 2)) {
        checks.eq("non-crossing 2-regular graphs on 8 vertices", c, 91);
    }
    let mut catalan = Vec::new();
    for n in (4..=12).step_by(2) {
        if let Some(c) = checks.ok("catalan", count(n, 1)) {
            catalan.push(c);
        }
    }
    checks.eq("Catalan numbers for n = 4..12", catalan, vec![2, 5, 14, 42, 132]);
}

/// Coordinates of `reduce(p)` in the degree-`k` monomial basis.
fn reduced_coordinates(
    s: &mut Straightener,
    basis: &MonomialBasis,
    p: &GraphPolynomial,
) -> Result<Option<Vec<crate::rational::Rational>>> {
    Ok(basis.coordinates(&reduce_to_noncrossing_vars_with(s, p)?))
}

fn quadrics(checks: &mut Checks) {
    let Some(space) = checks.ok("quadric space n=8", quadric_relation_space(8)) else { return };
    checks.eq("dim of quadric relations, n=8", space.dimension(), 14);
    let Some(gens) = checks.ok("simple binomials n=8", simple_binomial_relations(8)) else { return };
    checks.eq("simple binomial count, n=8", gens.len(), 35);
    let mut s = Straightener::new();
    let mut columns = Vec::new();
    let mut all_relations = true;
    for g in &gens {
        let Some(Some(coords)) = checks.ok("reduce simple binomial", reduced_coordinates(&mut s, &space.monomials, g))
        else {
            return;
        };
        all_relations &= ring_normal_form_with(&mut s, g).is_zero();
        columns.push(coords);
    }
    checks.push("simple binomials are relations", all_relations, "ring normal form vanishes");
    if let Some(m) = checks.ok("matrix", RationalMatrix::from_columns(space.monomials.len(), &columns)) {
        checks.eq("rank of reduced simple binomials", rank(&m), 14);
        let mut joint = columns.clone();
        joint.extend(space.basis.iter().cloned());
        if let Some(j) = checks.ok("matrix", RationalMatrix::from_columns(space.monomials.len(), &joint)) {
            checks.eq("simple binomials span the quadric space", rank(&j), 14);
        }
    }
    if let Some(six) = checks.ok("quadric space n=6", quadric_relation_space(6)) {
        checks.eq("dim of quadric relations, n=6", six.dimension(), 0);
    }
}

fn segre_membership(checks: &mut Checks, tier: Tier) {
    for n in [6, 8] {
        let Some(segre) = checks.ok("segre", segre_cubic(n)) else { return };
        checks.push(format!("ring normal form of Segre cubic, n={n}"), ring_normal_form(&segre).is_zero(), "");
        if n == 6 {
            let reduced = checks.ok("reduce", crate::relations::reduce_to_noncrossing_vars(&segre));
            checks.push(
                "Segre cubic is nonzero modulo linear relations, n=6",
                reduced.is_some_and(|r| !r.is_zero()),
                "",
            );
        }
        if n == 8 && tier == Tier::Quick {
            continue;
        }
        let Some(gens) = checks.ok("simple binomials", simple_binomial_relations(n)) else { return };
        let Some(m) = checks.ok("membership", ideal_membership(&segre, &gens, 3)) else { return };
        let expected = n == 8;
        checks.eq(format!("Segre cubic in simple binomial ideal, n={n}"), m.member, expected);
        if m.member {
            let ok = checks.ok("certificate", verify_certificate(&segre, &gens, &m.certificate));
            checks.push(
                format!("certificate re-verifies, n={n}"),
                ok == Some(true),
                format!("{} terms", m.certificate.len()),
            );
        }
    }
}

fn configurations<R: Rng>(n: usize, count: usize, rng: &mut R) -> Vec<Configuration> {
    (0..count).map(|_| random_distinct_configuration(n, rng)).collect()
}

fn oracle_suites<R: Rng>(checks: &mut Checks, rng: &mut R, tier: Tier) {
    let (graphs, regular) = match tier {
        Tier::Quick => (50, 25),
        Tier::Full => (200, 100),
    };
    // straightening soundness
    let mut s = Straightener::new();
    let mut bad = Vec::new();
    for _ in 0..graphs {
        let n = rng.gen_range(4..=8);
        let edges = rng.gen_range(1..=2 * n);
        let g = random_graph(n, edges, rng);
        let out = s.straighten_graph(&g);
        let c = random_distinct_configuration(n, rng);
        let sound = out.iter().all(|(h, _)| h.is_noncrossing())
            && evaluate(&g, &c).ok() == evaluate_combination(&out, &c).ok();
        if !sound {
            bad.push(g.to_string());
        }
    }
    checks.push(format!("straightening soundness on {graphs} random graphs"), bad.is_empty(), bad.join("; "));

    // Kempe soundness
    let mut bad = Vec::new();
    for _ in 0..regular {
        let n = 2 * rng.gen_range(2..=4);
        let d = rng.gen_range(1..=3);
        let g = random_regular_graph(n, d, rng);
        let c = random_distinct_configuration(n, rng);
        let sound = match kempe_decompose(&g) {
            Ok(products) => {
                let factors_ok =
                    products.iter().all(|p| p.factors.len() == d && p.factors.iter().all(Graph::is_perfect_matching));
                let total: Option<crate::rational::Rational> =
                    products.iter().map(|p| p.evaluate(&c).ok()).sum::<Option<_>>();
                factors_ok && total == evaluate(&g, &c).ok()
            }
            Err(_) => false,
        };
        if !sound {
            bad.push(g.to_string());
        }
    }
    checks.push(format!("Kempe soundness on {regular} random regular graphs"), bad.is_empty(), bad.join("; "));

    // every generated relation vanishes
    let mut failures = Vec::new();
    for n in [4, 6, 8] {
        let cs = configurations(n, 10, rng);
        if let Some(rels) = checks.ok("plucker", plucker_linear_relations(n)) {
            for (i, r) in rels.iter().enumerate() {
                if cs.iter().any(|c| !evaluate_combination(r, c).is_ok_and(|v| v.is_zero())) {
                    failures.push(format!("plucker n={n} #{i}"));
                }
            }
        }
        let mut polys: Vec<(String, GraphPolynomial)> = Vec::new();
        if let Some(rels) = checks.ok("simple binomials", simple_binomial_relations(n)) {
            polys.extend(rels.into_iter().enumerate().map(|(i, p)| (format!("simple binomial n={n} #{i}"), p)));
        }
        if n >= 6 {
            if let Some(p) = checks.ok("segre", segre_cubic(n)) {
                polys.push((format!("segre n={n}"), p));
            }
        }
        if n == 6 {
            let gamma = Graph::from_pairs(6, &[(1, 2), (3, 4), (5, 6)]).expect("valid");
            if let Some(p) = checks.ok("odd power", odd_power_relation(6, &gamma, 3)) {
                polys.push(("odd power n=6".into(), p));
            }
        }
        for (name, p) in polys {
            if cs.iter().any(|c| !p.evaluate(c).is_ok_and(|v| v.is_zero())) {
                failures.push(name);
            }
        }
    }
    checks.push("generated relations vanish at 10 configurations each", failures.is_empty(), failures.join("; "));

    // non-crossing bases have full-rank evaluation matrices
    for (n, d) in [(6, 1), (8, 1), (6, 2)] {
        let Some(basis) = checks.ok("basis", enumerate_noncrossing(n, &vec![d; n])) else { continue };
        let cs = configurations(n, basis.len() + 5, rng);
        let rows: Vec<Vec<_>> =
            cs.iter().map(|c| basis.iter().map(|g| evaluate(g, c).expect("lengths agree")).collect()).collect();
        if let Some(m) = checks.ok("matrix", RationalMatrix::from_rows(rows)) {
            checks.eq(format!("evaluation rank of the basis for n={n}, degree {d}"), rank(&m), basis.len());
        }
    }
}

fn odd_power(checks: &mut Checks) {
    let gamma = Graph::from_pairs(6, &[(1, 2), (3, 4), (5, 6)]).expect("valid");
    let Some(p) = checks.ok("odd power", odd_power_relation(6, &gamma, 3)) else { return };
    checks.push("odd power relation has ring normal form 0", ring_normal_form(&p).is_zero(), "");
    let Some(segre) = checks.ok("segre", segre_cubic(6)) else { return };
    let mut s = Straightener::new();
    let a = checks.ok("reduce", reduce_to_noncrossing_vars_with(&mut s, &p));
    let b = checks.ok("reduce", reduce_to_noncrossing_vars_with(&mut s, &segre));
    if let (Some(a), Some(b)) = (a, b) {
        let ratio = a.ratio_to(&b);
        checks.push(
            "odd power relation is a nonzero multiple of the Segre cubic",
            ratio.as_ref().is_some_and(|r| !r.is_zero()),
            ratio.map_or("not proportional".into(), |r| format!("ratio {}", crate::rational::format_rational(&r))),
        );
    }
}

fn chart<R: Rng>(checks: &mut Checks, rng: &mut R, tier: Tier) {
    let samples = match tier {
        Tier::Quick => 10,
        Tier::Full => 50,
    };
    for n in [8, 10] {
        let mut failed = Vec::new();
        let mut gamma_failed = Vec::new();
        for c in configurations(n, samples, rng) {
            match verify_chart(&c) {
                Ok(r) if r.passed() => {}
                _ => failed.push(c.to_string()),
            }
            match gamma_discrepancies(&c, 3) {
                Ok(bad) if bad.is_empty() => {}
                _ => gamma_failed.push(c.to_string()),
            }
        }
        checks.push(format!("chart identities at {samples} configurations, n={n}"), failed.is_empty(), failed.join("; "));
        checks.push(
            format!("ratios independent of the good matching, n={n}"),
            gamma_failed.is_empty(),
            gamma_failed.join("; "),
        );
        let limit = collision_limit(n / 2);
        let zero = crate::chart::chart_coordinates(&limit).map(|p| p.is_zero_matrix());
        checks.push(format!("W vanishes at the collision limit, n={n}"), zero == Ok(true), format!("{zero:?}"));
        let report = verify_chart(&limit).map(|r| r.passed());
        checks.push(format!("chart identities at the collision limit, n={n}"), report == Ok(true), "");
    }
}

fn clumps(checks: &mut Checks) {
    for sizes in [&[2, 1, 1, 1, 1][..], &[2, 2, 1, 1]] {
        let Some(cl) = checks.ok("clumps", Clumps::from_sizes(sizes)) else { continue };
        let Some(hs) = checks.ok("basis", enumerate_noncrossing(cl.count(), sizes)) else { continue };
        let mut bad = Vec::new();
        for h in &hs {
            match noncrossing_lifts(h, &cl) {
                Ok(l) if l.len() == 1 => {}
                Ok(l) => bad.push(format!("{h}: {} lifts", l.len())),
                Err(e) => bad.push(format!("{h}: {e}")),
            }
        }
        checks.push(format!("unique non-crossing lift for w={sizes:?} ({} graphs)", hs.len()), bad.is_empty(), bad.join("; "));
    }
    // six points carry no simple binomials, so the first two weights are
    // checked vacuously; eight points exercise the map in earnest
    for sizes in [&[2, 1, 1, 1, 1][..], &[2, 2, 1, 1], &[2, 1, 1, 1, 1, 1, 1], &[2, 2, 1, 1, 1, 1], &[1, 2, 2, 1, 2]] {
        let Some(cl) = checks.ok("clumps", Clumps::from_sizes(sizes)) else { continue };
        let Some(gens) = checks.ok("simple binomials", simple_binomial_relations(cl.n())) else { continue };
        let mut bad = Vec::new();
        let mut s = Straightener::new();
        for (i, g) in gens.iter().enumerate() {
            match clump_polynomial(g, &cl) {
                Ok(img) if img.is_zero() || ring_normal_form_with(&mut s, &img).is_zero() => {}
                _ => bad.push(i.to_string()),
            }
        }
        checks.push(
            format!("clumped simple binomials are relations for w={sizes:?} ({} generators)", gens.len()),
            bad.is_empty(),
            bad.join(", "),
        );
    }
}
