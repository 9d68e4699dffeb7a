//! Reading graphs, combinations, polynomials and configurations from files,
//! stdin (`-`) or inline shorthand.

use std::io::Read;

use graphinv::combination::GraphCombination;
use graphinv::eval::Configuration;
use graphinv::graph::{Edge, Graph, WeightVector};
use graphinv::json::{CombinationJson, ConfigurationJson, GraphJson, PolynomialJson};
use graphinv::relations::GraphPolynomial;
use serde_json::Value;

use crate::CliError;

pub fn read_source(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
    }
}

/// `"1-2,3-4"` (an en dash also works); each pair is `tail-head`.
pub fn parse_edges(n: usize, s: &str) -> Result<Graph, CliError> {
    let mut edges = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (a, b) = tok
            .split_once(['-', '–'])
            .ok_or_else(|| CliError::Usage(format!("edge `{tok}` should look like `1-2`")))?;
        let parse = |x: &str| {
            x.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("edge `{tok}` has a non-numeric endpoint")))
        };
        edges.push(Edge::new(parse(a)?, parse(b)?));
    }
    Ok(Graph::new(n, edges)?)
}

pub fn parse_weights(s: &str) -> Result<WeightVector, CliError> {
    let weights = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| CliError::Usage(format!("weight `{}` is not a positive integer", t.trim()))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WeightVector::new(weights)?)
}

pub fn parse_degree(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("degree entry `{}` is not an integer", t.trim()))))
        .collect()
}

/// A graph or a combination: combinations are recognized by their `terms`.
pub enum Invariant {
    Graph(Graph),
    Combination(GraphCombination),
}

impl Invariant {
    pub fn n(&self) -> usize {
        match self {
            Invariant::Graph(g) => g.n(),
            Invariant::Combination(c) => c.n(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Invariant::Graph(g) => serde_json::to_value(GraphJson::from(g)).expect("serializable"),
            Invariant::Combination(c) => serde_json::to_value(CombinationJson::from(c)).expect("serializable"),
        }
    }
}

fn parse_value(text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Module(graphinv::Error::Parse(e.to_string())))
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| CliError::Module(graphinv::Error::Parse(e.to_string())))
}

/// A report from this tool is accepted wherever its payload is: the first
/// of the JSON pointers present in the report is used.
fn unwrap_report(value: Value, pointers: &[&str]) -> Value {
    if value.get("command").is_none() {
        return value;
    }
    pointers.iter().find_map(|p| value.pointer(p).cloned()).unwrap_or(value)
}

pub fn parse_invariant(text: &str) -> Result<Invariant, CliError> {
    let value = unwrap_report(
        parse_value(text)?,
        &["/outputs/result", "/inputs/invariant", "/inputs/graph"],
    );
    if value.get("terms").is_some() {
        Ok(Invariant::Combination(from_value::<CombinationJson>(value)?.to_combination()?))
    } else {
        Ok(Invariant::Graph(from_value::<GraphJson>(value)?.to_graph()?))
    }
}

/// From `--input FILE` or from `--n` with `--edges`.
pub fn invariant_from_args(input: Option<&str>, n: Option<usize>, edges: Option<&str>) -> Result<Invariant, CliError> {
    match (input, n, edges) {
        (Some(path), None, None) => parse_invariant(&read_source(path)?),
        (None, Some(n), Some(e)) => Ok(Invariant::Graph(parse_edges(n, e)?)),
        _ => Err(CliError::Usage("give either --input FILE or both --n and --edges".into())),
    }
}

pub fn graph_from_args(input: Option<&str>, n: Option<usize>, edges: Option<&str>) -> Result<Graph, CliError> {
    match invariant_from_args(input, n, edges)? {
        Invariant::Graph(g) => Ok(g),
        Invariant::Combination(_) => Err(CliError::Usage("expected a single graph, not a combination".into())),
    }
}

/// From `--config FILE` (JSON) or `--points "0,1,inf"`.
pub fn configuration_from_args(config: Option<&str>, points: Option<&str>) -> Result<Option<Configuration>, CliError> {
    match (config, points) {
        (Some(path), None) => {
            let text = read_source(path)?;
            let trimmed = text.trim();
            if trimmed.starts_with('{') {
                let value = unwrap_report(parse_value(trimmed)?, &["/inputs/configuration"]);
                Ok(Some(from_value::<ConfigurationJson>(value)?.to_configuration()?))
            } else {
                Ok(Some(Configuration::parse_affine_list(trimmed)?))
            }
        }
        (None, Some(p)) => Ok(Some(Configuration::parse_affine_list(p)?)),
        (None, None) => Ok(None),
        (Some(_), Some(_)) => Err(CliError::Usage("give at most one of --config and --points".into())),
    }
}

/// One polynomial; a report holding exactly one relation also works.
pub fn polynomial_from_file(path: &str) -> Result<GraphPolynomial, CliError> {
    let mut list = polynomials_from_file(path)?;
    if list.len() != 1 {
        return Err(CliError::Usage(format!("{path}: expected one polynomial, found {}", list.len())));
    }
    Ok(list.remove(0))
}

/// A file holding either one polynomial or a list of them (a `relations`
/// report is accepted too, via its `relations` array).
pub fn polynomials_from_file(path: &str) -> Result<Vec<GraphPolynomial>, CliError> {
    let value = unwrap_report(
        parse_value(&read_source(path)?)?,
        &["/outputs/relations", "/inputs/candidate"],
    );
    let list = match value {
        Value::Array(items) => items,
        v @ Value::Object(_) => vec![v],
        _ => return Err(CliError::Usage(format!("{path}: expected a polynomial or a list of polynomials"))),
    };
    list.into_iter().map(|v| Ok(from_value::<PolynomialJson>(v)?.to_polynomial()?)).collect()
}
