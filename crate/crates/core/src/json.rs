//! JSON interchange formats. Vertices are 1-based and every rational is a
//! string such as `"-3/4"`.

use serde::{Deserialize, Serialize};

use crate::combination::GraphCombination;
use crate::error::{Error, Result};
use crate::eval::{Configuration, ProjectivePoint};
use crate::graph::{CanonicalGraph, Edge, Graph};
use crate::kempe::MatchingProduct;
use crate::linalg::RationalMatrix;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::relations::{CertificateTerm, GraphPolynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().iter().map(|e| [e.tail, e.head]).collect() }
    }
}

impl From<&CanonicalGraph> for GraphJson {
    fn from(g: &CanonicalGraph) -> Self {
        GraphJson::from(g.graph())
    }
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().map(|&[t, h]| Edge::new(t, h)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinationJson {
    pub n: usize,
    pub degree: Vec<usize>,
    pub terms: Vec<TermJson>,
}

impl From<&GraphCombination> for CombinationJson {
    fn from(c: &GraphCombination) -> Self {
        CombinationJson {
            n: c.n(),
            degree: c.degree().to_vec(),
            terms: c
                .iter()
                .map(|(g, coeff)| TermJson {
                    coeff: format_rational(coeff),
                    edges: g.edges().iter().map(|e| [e.tail, e.head]).collect(),
                })
                .collect(),
        }
    }
}

impl CombinationJson {
    pub fn to_combination(&self) -> Result<GraphCombination> {
        let mut c = GraphCombination::zero(self.n, self.degree.clone());
        for t in &self.terms {
            let g = GraphJson { n: self.n, edges: t.edges.clone() }.to_graph()?;
            c.add_graph(&g, &parse_rational(&t.coeff)?)?;
        }
        Ok(c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationJson {
    pub points: Vec<[String; 2]>,
}

impl From<&Configuration> for ConfigurationJson {
    fn from(c: &Configuration) -> Self {
        ConfigurationJson {
            points: c.points().iter().map(|p| [format_rational(&p.u), format_rational(&p.v)]).collect(),
        }
    }
}

impl ConfigurationJson {
    pub fn to_configuration(&self) -> Result<Configuration> {
        let points = self
            .points
            .iter()
            .map(|[u, v]| Ok(ProjectivePoint { u: parse_rational(u)?, v: parse_rational(v)? }))
            .collect::<Result<Vec<_>>>()?;
        Configuration::new(points)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingProductJson {
    pub coeff: String,
    pub factors: Vec<GraphJson>,
}

impl From<&MatchingProduct> for MatchingProductJson {
    fn from(p: &MatchingProduct) -> Self {
        MatchingProductJson { coeff: format_rational(&p.coeff), factors: p.factors.iter().map(GraphJson::from).collect() }
    }
}

impl MatchingProductJson {
    pub fn to_product(&self) -> Result<MatchingProduct> {
        let factors = self.factors.iter().map(GraphJson::to_graph).collect::<Result<Vec<_>>>()?;
        if let Some(bad) = factors.iter().position(|f| !f.is_perfect_matching()) {
            return Err(Error::Parse(format!("factor {} is not a perfect matching", bad + 1)));
        }
        Ok(MatchingProduct { coeff: parse_rational(&self.coeff)?, factors })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialTermJson {
    pub coeff: String,
    pub monomial: Vec<GraphJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub n: usize,
    pub terms: Vec<MonomialTermJson>,
}

impl From<&GraphPolynomial> for PolynomialJson {
    fn from(p: &GraphPolynomial) -> Self {
        PolynomialJson {
            n: p.n(),
            terms: p
                .terms()
                .iter()
                .map(|(mono, coeff)| MonomialTermJson {
                    coeff: format_rational(coeff),
                    monomial: mono.iter().map(GraphJson::from).collect(),
                })
                .collect(),
        }
    }
}

impl PolynomialJson {
    pub fn to_polynomial(&self) -> Result<GraphPolynomial> {
        let mut p = GraphPolynomial::zero(self.n);
        for t in &self.terms {
            let factors = t.monomial.iter().map(GraphJson::to_graph).collect::<Result<Vec<_>>>()?;
            p.add_term(&factors, &parse_rational(&t.coeff)?)?;
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateTermJson {
    pub generator_index: usize,
    pub cofactor_monomial: Vec<GraphJson>,
    pub coeff: String,
}

impl From<&CertificateTerm> for CertificateTermJson {
    fn from(t: &CertificateTerm) -> Self {
        CertificateTermJson {
            generator_index: t.generator_index,
            cofactor_monomial: t.cofactor.iter().map(GraphJson::from).collect(),
            coeff: format_rational(&t.coeff),
        }
    }
}

pub fn matrix_json(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(format_rational).collect()).collect()
}

pub fn rows_json(rows: &[Vec<Rational>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(format_rational).collect()).collect()
}

/// Reads any of the schemas above from text.
pub fn from_str<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn graph_round_trip_keeps_order() {
        let g = Graph::from_pairs(4, &[(3, 1), (2, 4)]).unwrap();
        let j = GraphJson::from(&g);
        assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"n":4,"edges":[[3,1],[2,4]]}"#);
        assert_eq!(from_str::<GraphJson>(r#"{"n":4,"edges":[[3,1],[2,4]]}"#).unwrap().to_graph().unwrap(), g);
        assert!(matches!(
            from_str::<GraphJson>(r#"{"n":2,"edges":[[1,1]]}"#).unwrap().to_graph(),
            Err(Error::LoopEdge(1))
        ));
    }

    #[test]
    fn combination_round_trip() {
        let mut c = GraphCombination::zero(4, vec![1; 4]);
        c.add_graph(&Graph::from_pairs(4, &[(1, 2), (3, 4)]).unwrap(), &Rational::new(3.into(), 2.into())).unwrap();
        c.add_graph(&Graph::from_pairs(4, &[(1, 4), (2, 3)]).unwrap(), &int(-1)).unwrap();
        let text = serde_json::to_string(&CombinationJson::from(&c)).unwrap();
        assert!(text.contains(r#""coeff":"3/2""#), "{text}");
        assert_eq!(from_str::<CombinationJson>(&text).unwrap().to_combination().unwrap(), c);
    }

    #[test]
    fn configuration_round_trip() {
        let c = Configuration::parse_affine_list("0,1/2,-3,inf").unwrap();
        let text = serde_json::to_string(&ConfigurationJson::from(&c)).unwrap();
        assert_eq!(from_str::<ConfigurationJson>(&text).unwrap().to_configuration().unwrap(), c);
        let zero = r#"{"points":[["0","0"]]}"#;
        assert_eq!(from_str::<ConfigurationJson>(zero).unwrap().to_configuration(), Err(Error::ZeroPoint(1)));
    }

    #[test]
    fn polynomial_round_trip() {
        let a = Graph::from_pairs(4, &[(1, 2), (3, 4)]).unwrap();
        let b = Graph::from_pairs(4, &[(1, 4), (2, 3)]).unwrap();
        let mut p = GraphPolynomial::zero(4);
        p.add_term(&[a.clone(), b.clone()], &int(2)).unwrap();
        p.add_term(&[a.clone(), a], &int(-1)).unwrap();
        let text = serde_json::to_string(&PolynomialJson::from(&p)).unwrap();
        assert_eq!(from_str::<PolynomialJson>(&text).unwrap().to_polynomial().unwrap(), p);
    }

    #[test]
    fn bad_input_is_a_parse_error() {
        assert!(matches!(from_str::<GraphJson>("{"), Err(Error::Parse(_))));
        let bad = MatchingProductJson { coeff: "1".into(), factors: vec![GraphJson { n: 4, edges: vec![[1, 2]] }] };
        assert!(matches!(bad.to_product(), Err(Error::Parse(_))));
    }
}
