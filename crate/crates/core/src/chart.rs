//! Affine chart around the strictly semistable point where the first half of
//! the points has collided and so has the second half.
//!
//! On `n = 2m` points, call an edge good if it joins `a ≤ m` to `b > m`. The
//! chart is the locus `U_P` where every good edge is nonzero, and its
//! coordinates are ratios of invariants built from good matchings:
//!
//! ```text
//! W_ij = X[1i · j(2m) · Γ] / X[1j · i(2m) · Γ]
//! Z_ij = X[1j · i(2m) · Γ] / X[1(2m) · ji · Γ]
//! ```
//!
//! for `1 < i ≤ m < j < 2m`, with `Γ` a good matching on the other vertices.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::{evaluate, Configuration};
use crate::graph::{Edge, Graph};
use crate::rational::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPoint {
    pub m: usize,
    /// Row `r` is `i = r + 2`, column `s` is `j = m + 1 + s`.
    pub w: Vec<Vec<Rational>>,
    pub z: Vec<Vec<Rational>>,
}

impl ChartPoint {
    pub fn w_entry(&self, i: usize, j: usize) -> &Rational {
        &self.w[i - 2][j - self.m - 1]
    }

    pub fn z_entry(&self, i: usize, j: usize) -> &Rational {
        &self.z[i - 2][j - self.m - 1]
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.w.iter().flatten().all(Zero::is_zero)
    }
}

fn write_matrix(f: &mut fmt::Formatter<'_>, name: &str, rows: &[Vec<Rational>]) -> fmt::Result {
    writeln!(f, "{name} =")?;
    for row in rows {
        let cells: Vec<String> = row.iter().map(format_rational).collect();
        writeln!(f, "  [{}]", cells.join(", "))?;
    }
    Ok(())
}

impl fmt::Display for ChartPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_matrix(f, "W", &self.w)?;
        write_matrix(f, "Z", &self.z)
    }
}

fn half(c: &Configuration) -> Result<usize> {
    let n = c.len();
    if n % 2 != 0 {
        return Err(Error::OddVertexCount(n));
    }
    if n < 4 {
        return Err(Error::VertexCountTooSmall { n, min: 4 });
    }
    Ok(n / 2)
}

/// Fails with the first good pair `(a, b)` whose points coincide.
pub fn check_in_chart(c: &Configuration) -> Result<()> {
    let m = half(c)?;
    let pts = c.points();
    for a in 1..=m {
        for b in m + 1..=2 * m {
            if pts[a - 1].coincides(&pts[b - 1]) {
                return Err(Error::NotInChart(a, b));
            }
        }
    }
    Ok(())
}

/// Number of good matchings available for the entry `(i, j)`.
pub fn gamma_choices(m: usize) -> usize {
    (1..=m.saturating_sub(2)).product()
}

/// The good matching on `{2..m} ∖ {i}` and `{m+1..2m−1} ∖ {j}` that pairs
/// the `t`-th leftover of the first half with the `perm[t]`-th leftover of
/// the second half.
pub fn good_matching(m: usize, i: usize, j: usize, perm: &[usize]) -> Vec<Edge> {
    let first: Vec<usize> = (2..=m).filter(|&v| v != i).collect();
    let second: Vec<usize> = (m + 1..2 * m).filter(|&v| v != j).collect();
    debug_assert_eq!(perm.len(), first.len());
    first.iter().zip(perm).map(|(&a, &p)| Edge::new(a, second[p])).collect()
}

/// The `index`-th permutation of `0..len` in lexicographic order.
pub fn nth_permutation(len: usize, mut index: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..len).collect();
    let mut out = Vec::with_capacity(len);
    for k in (0..len).rev() {
        let f: usize = (1..=k).product();
        out.push(pool.remove(index / f));
        index %= f;
    }
    out
}

fn graph_with(n: usize, head: [Edge; 2], gamma: &[Edge]) -> Graph {
    let mut edges = head.to_vec();
    edges.extend_from_slice(gamma);
    Graph::new(n, edges).expect("chart graphs are loopless and in range")
}

fn ratio(num: &Graph, den: &Graph, c: &Configuration) -> Result<Rational> {
    let d = evaluate(den, c)?;
    debug_assert!(!d.is_zero(), "good matchings do not vanish on the chart");
    Ok(evaluate(num, c)? / d)
}

/// `(W_ij, Z_ij)` computed with the good matching selected by `perm`.
pub fn chart_entry(c: &Configuration, i: usize, j: usize, perm: &[usize]) -> Result<(Rational, Rational)> {
    let m = half(c)?;
    check_in_chart(c)?;
    if !(1 < i && i <= m && m < j && j < 2 * m) {
        return Err(Error::VertexOutOfRange { vertex: if 1 < i && i <= m { j } else { i }, n: 2 * m });
    }
    if perm.len() != m - 2 {
        return Err(Error::LengthMismatch { expected: m - 2, actual: perm.len() });
    }
    let n = 2 * m;
    let gamma = good_matching(m, i, j, perm);
    let top = n;
    let w_num = graph_with(n, [Edge::new(1, i), Edge::new(j, top)], &gamma);
    let shared = graph_with(n, [Edge::new(1, j), Edge::new(i, top)], &gamma);
    // `j → i` rather than `i → j`: with this orientation the identity reads
    // Z(W − 1) = +1
    let z_den = graph_with(n, [Edge::new(1, top), Edge::new(j, i)], &gamma);
    Ok((ratio(&w_num, &shared, c)?, ratio(&shared, &z_den, c)?))
}

/// `W` and `Z` with the deterministic matching (first half paired with
/// second half in increasing order).
pub fn chart_coordinates(c: &Configuration) -> Result<ChartPoint> {
    let m = half(c)?;
    check_in_chart(c)?;
    let identity: Vec<usize> = (0..m - 2).collect();
    let mut w = Vec::with_capacity(m - 1);
    let mut z = Vec::with_capacity(m - 1);
    for i in 2..=m {
        let mut w_row = Vec::with_capacity(m - 1);
        let mut z_row = Vec::with_capacity(m - 1);
        for j in m + 1..2 * m {
            let (wv, zv) = chart_entry(c, i, j, &identity)?;
            w_row.push(wv);
            z_row.push(zv);
        }
        w.push(w_row);
        z.push(z_row);
    }
    Ok(ChartPoint { m, w, z })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChartFailure {
    pub identity: &'static str,
    pub entries: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChartReport {
    pub minors_checked: usize,
    pub entries_checked: usize,
    pub failures: Vec<ChartFailure>,
}

impl ChartReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `W_ij W_kl = W_il W_kj` for every 2×2 minor and `Z_ij (W_ij − 1) = 1`
/// for every entry.
pub fn check_chart_point(p: &ChartPoint) -> ChartReport {
    let m = p.m;
    let rows = 2..=m;
    let cols: Vec<usize> = (m + 1..2 * m).collect();
    let mut failures = Vec::new();
    let mut minors = 0;
    for i in rows.clone() {
        for k in i + 1..=m {
            for (a, &j) in cols.iter().enumerate() {
                for &l in &cols[a + 1..] {
                    minors += 1;
                    let lhs = p.w_entry(i, j) * p.w_entry(k, l);
                    let rhs = p.w_entry(i, l) * p.w_entry(k, j);
                    if lhs != rhs {
                        failures.push(ChartFailure { identity: "rank", entries: vec![(i, j), (k, l), (i, l), (k, j)] });
                    }
                }
            }
        }
    }
    let mut entries = 0;
    for i in rows {
        for &j in &cols {
            entries += 1;
            let w = p.w_entry(i, j);
            if p.z_entry(i, j) * (w - Rational::one()) != Rational::one() {
                failures.push(ChartFailure { identity: "inverse", entries: vec![(i, j)] });
            }
        }
    }
    ChartReport { minors_checked: minors, entries_checked: entries, failures }
}

pub fn verify_chart(c: &Configuration) -> Result<ChartReport> {
    Ok(check_chart_point(&chart_coordinates(c)?))
}

/// Recomputes every entry with up to `alternatives` other good matchings and
/// returns the entries where a value differs.
pub fn gamma_discrepancies(c: &Configuration, alternatives: usize) -> Result<Vec<(usize, usize)>> {
    let p = chart_coordinates(c)?;
    let m = p.m;
    let count = gamma_choices(m).min(alternatives + 1);
    let mut bad = Vec::new();
    for i in 2..=m {
        for j in m + 1..2 * m {
            for idx in 1..count {
                let (wv, zv) = chart_entry(c, i, j, &nth_permutation(m - 2, idx))?;
                if &wv != p.w_entry(i, j) || &zv != p.z_entry(i, j) {
                    bad.push((i, j));
                    break;
                }
            }
        }
    }
    Ok(bad)
}

/// `(0, …, 0, ∞, …, ∞)` with `m` of each.
pub fn collision_limit(m: usize) -> Configuration {
    use crate::eval::ProjectivePoint;
    let mut points = vec![ProjectivePoint::affine(Rational::zero()); m];
    points.extend(std::iter::repeat(ProjectivePoint::infinity()).take(m));
    Configuration::new(points).expect("no zero vectors")
}
