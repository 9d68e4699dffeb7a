use std::fmt::Write as _;

use graphinv::chart::{chart_coordinates, check_chart_point};
use graphinv::degree::{degree_trace, is_boundary, moduli_degree};
use graphinv::eval::{
    evaluate, evaluate_combination, random_stable_configuration, seeded_configuration, stability, Configuration,
};
use graphinv::graph::{enumerate_noncrossing, Graph, WeightVector};
use graphinv::json::{
    rows_json, CertificateTermJson, CombinationJson, ConfigurationJson, GraphJson, MatchingProductJson, PolynomialJson,
};
use graphinv::kempe::{kempe_decompose, lift_graph};
use graphinv::rational::format_rational;
use graphinv::relations::{
    ideal_membership, odd_power_relation, plucker_linear_relations, segre_cubic, simple_binomial_relations,
    verify_certificate, GraphPolynomial,
};
use graphinv::straighten::Straightener;
use graphinv::verify::{run_all, Tier};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::input::{
    configuration_from_args, graph_from_args, invariant_from_args, parse_degree, parse_edges, parse_weights,
    polynomial_from_file, polynomials_from_file, Invariant,
};
use crate::report::Report;
use crate::{Cli, CliError, Command, RelationType};

/// Largest vertex count `check-ideal` accepts without `--allow-heavy`.
const LIGHT_MEMBERSHIP_LIMIT: usize = 8;

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let seed = cli.seed;
    match &cli.command {
        Command::Eval { invariant, config, weights } => {
            let inv = invariant_from_args(invariant.input.as_deref(), invariant.n, invariant.edges.as_deref())?;
            let weights = weights.as_deref().map(parse_weights).transpose()?;
            eval(seed, inv, configuration_from_args(config.config.as_deref(), config.points.as_deref())?, weights)
        }
        Command::Straighten { invariant } => {
            let inv = invariant_from_args(invariant.input.as_deref(), invariant.n, invariant.edges.as_deref())?;
            straighten(seed, inv)
        }
        Command::Basis { n, degree, regular } => {
            let degree = match (degree, regular) {
                (Some(d), None) => parse_degree(d)?,
                (None, Some(d)) => vec![*d; *n],
                _ => vec![1; *n],
            };
            basis(seed, *n, degree)
        }
        Command::Kempe { invariant, weights } => {
            let g = graph_from_args(invariant.input.as_deref(), invariant.n, invariant.edges.as_deref())?;
            let weights = weights.as_deref().map(parse_weights).transpose()?;
            kempe(seed, g, weights)
        }
        Command::Relations { n, kind, matching, exponent } => relations(seed, *n, *kind, matching.as_deref(), *exponent),
        Command::CheckIdeal { candidate, n, generators, degree, allow_heavy } => {
            check_ideal(seed, candidate, *n, generators, *degree, *allow_heavy)
        }
        Command::Degree { weights, trace } => degree(seed, &parse_weights(weights)?, *trace),
        Command::Chart { config, random } => {
            let c = match random {
                Some(n) => seeded_configuration(*n, seed),
                None => configuration_from_args(config.config.as_deref(), config.points.as_deref())?
                    .ok_or_else(|| CliError::Usage("give --config FILE, --points, or --random N".into()))?,
            };
            chart(seed, c)
        }
        Command::VerifyAll { quick, .. } => Ok(verify_all(seed, if *quick { Tier::Quick } else { Tier::Full })),
    }
}

fn to_value<T: serde::Serialize>(x: T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn eval(seed: u64, inv: Invariant, config: Option<Configuration>, weights: Option<WeightVector>) -> Result<Report, CliError> {
    let n = inv.n();
    let c = match (config, &weights) {
        (Some(c), _) => c,
        (None, Some(w)) => random_stable_configuration(w, seed)?,
        (None, None) => random_stable_configuration(&WeightVector::ones(n), seed)?,
    };
    let value = match &inv {
        Invariant::Graph(g) => evaluate(g, &c)?,
        Invariant::Combination(comb) => evaluate_combination(comb, &c)?,
    };
    let mut outputs = json!({ "value": format_rational(&value) });
    let mut text = format!("{}\n", format_rational(&value));
    let mut inputs = json!({ "invariant": inv.to_json(), "configuration": to_value(ConfigurationJson::from(&c)) });
    if let Some(w) = &weights {
        let s = stability(&c, w)?;
        outputs["stability"] = json!(s.as_str());
        inputs["weights"] = json!(w.weights());
        let _ = writeln!(text, "{}", s.as_str());
    }
    Ok(Report::new("eval", seed, inputs, outputs, text))
}

fn straighten(seed: u64, inv: Invariant) -> Result<Report, CliError> {
    let mut s = Straightener::new();
    let out = match &inv {
        Invariant::Graph(g) => s.straighten_graph(g),
        Invariant::Combination(c) => s.straighten(c),
    };
    let mut report = Report::new(
        "straighten",
        seed,
        json!({ "invariant": inv.to_json() }),
        json!({ "result": to_value(CombinationJson::from(&out)), "terms": out.len() }),
        format!("{out}\n"),
    );
    // the result must agree with the input at a sampled configuration
    let c = seeded_configuration(inv.n(), seed);
    let before = match &inv {
        Invariant::Graph(g) => evaluate(g, &c)?,
        Invariant::Combination(comb) => evaluate_combination(comb, &c)?,
    };
    let after = evaluate_combination(&out, &c)?;
    report.check("agrees at a sampled configuration", before == after, "");
    report.check("result is non-crossing", out.iter().all(|(g, _)| g.is_noncrossing()), "");
    Ok(report)
}

fn basis(seed: u64, n: usize, degree: Vec<usize>) -> Result<Report, CliError> {
    let graphs = enumerate_noncrossing(n, &degree)?;
    let mut text = String::new();
    for g in &graphs {
        let _ = writeln!(text, "{g}");
    }
    Ok(Report::new(
        "basis",
        seed,
        json!({ "n": n, "degree": degree }),
        json!({ "count": graphs.len(), "graphs": graphs.iter().map(|g| to_value(GraphJson::from(g))).collect::<Vec<_>>() }),
        text,
    ))
}

fn kempe(seed: u64, g: Graph, weights: Option<WeightVector>) -> Result<Report, CliError> {
    let mut inputs = json!({ "graph": to_value(GraphJson::from(&g)) });
    let mut outputs = json!({});
    let (target, c, lifted_c) = match &weights {
        Some(w) => {
            inputs["weights"] = json!(w.weights());
            let lifted = lift_graph(&g, w)?;
            outputs["lifted"] = json!({
                "graph": to_value(GraphJson::from(&lifted.graph)),
                "projection": lifted.projection,
                "degree": lifted.degree,
            });
            let c = seeded_configuration(g.n(), seed);
            let spread = Configuration::new(lifted.projection.iter().map(|&v| c.points()[v - 1].clone()).collect())?;
            (lifted.graph, c, Some(spread))
        }
        None => {
            let c = seeded_configuration(g.n(), seed);
            (g.clone(), c, None)
        }
    };
    let products = kempe_decompose(&target)?;
    outputs["products"] = to_value(products.iter().map(MatchingProductJson::from).collect::<Vec<_>>());
    let mut text = String::new();
    if weights.is_some() {
        let _ = writeln!(text, "lifted: X[{target}]");
    }
    for p in &products {
        let _ = writeln!(text, "{p}");
    }
    let mut report = Report::new("kempe", seed, inputs, outputs, text);
    let at = lifted_c.as_ref().unwrap_or(&c);
    let mut sum = graphinv::rational::Rational::zero();
    for p in &products {
        sum += p.evaluate(at)?;
    }
    report.check("products sum to the graph at a sampled configuration", sum == evaluate(&g, &c)?, "");
    Ok(report)
}

fn default_matching(n: usize) -> Result<Graph, CliError> {
    let pairs: Vec<(usize, usize)> = (1..n).step_by(2).map(|a| (a, a + 1)).collect();
    Ok(Graph::from_pairs(n, &pairs)?)
}

fn relations(seed: u64, n: usize, kind: RelationType, matching: Option<&str>, exponent: usize) -> Result<Report, CliError> {
    let mut inputs = json!({ "n": n, "type": kind_name(kind) });
    let (values, lines): (Vec<Value>, Vec<String>) = match kind {
        RelationType::Plucker => {
            let rels = plucker_linear_relations(n)?;
            (rels.iter().map(|r| to_value(CombinationJson::from(r))).collect(), rels.iter().map(|r| r.to_string()).collect())
        }
        RelationType::SimpleBinomial => polys(simple_binomial_relations(n)?),
        RelationType::Segre => polys(vec![segre_cubic(n)?]),
        RelationType::OddPower => {
            let m = match matching {
                Some(e) => parse_edges(n, e)?,
                None => default_matching(n)?,
            };
            inputs["matching"] = to_value(GraphJson::from(&m));
            inputs["exponent"] = json!(exponent);
            polys(vec![odd_power_relation(n, &m, exponent)?])
        }
    };
    let mut text = String::new();
    for l in &lines {
        let _ = writeln!(text, "{l}");
    }
    Ok(Report::new("relations", seed, inputs, json!({ "count": values.len(), "relations": values }), text))
}

fn polys(list: Vec<GraphPolynomial>) -> (Vec<Value>, Vec<String>) {
    (list.iter().map(|p| to_value(PolynomialJson::from(p))).collect(), list.iter().map(|p| p.to_string()).collect())
}

fn kind_name(kind: RelationType) -> &'static str {
    match kind {
        RelationType::Plucker => "plucker",
        RelationType::SimpleBinomial => "simple-binomial",
        RelationType::Segre => "segre",
        RelationType::OddPower => "odd-power",
    }
}

fn check_ideal(
    seed: u64,
    candidate: &str,
    n: Option<usize>,
    generators: &str,
    degree: Option<usize>,
    allow_heavy: bool,
) -> Result<Report, CliError> {
    let need_n = || n.ok_or_else(|| CliError::Usage(format!("--candidate {candidate} needs --n")));
    let cand = match candidate {
        "segre" => segre_cubic(need_n()?)?,
        "odd-power" => {
            let n = need_n()?;
            odd_power_relation(n, &default_matching(n)?, 3)?
        }
        path => polynomial_from_file(path)?,
    };
    let n = cand.n();
    if n > LIGHT_MEMBERSHIP_LIMIT && !allow_heavy {
        return Err(CliError::Usage(format!(
            "membership for n = {n} can run for a very long time; pass --allow-heavy to attempt it"
        )));
    }
    let gens = match generators {
        "simple-binomial" => simple_binomial_relations(n)?,
        path => polynomials_from_file(path)?,
    };
    let k = degree.or(cand.degree()).unwrap_or(0);
    let m = ideal_membership(&cand, &gens, k)?;
    let verdict = if m.member { "member" } else { "not a member" };
    let certificate: Vec<CertificateTermJson> = m.certificate.iter().map(CertificateTermJson::from).collect();
    let mut report = Report::new(
        "check-ideal",
        seed,
        json!({
            "candidate": to_value(PolynomialJson::from(&cand)),
            "generators": generators,
            "generatorCount": gens.len(),
            "degree": k,
        }),
        json!({
            "member": m.member,
            "certificate": to_value(certificate),
            "rows": m.rows,
            "columns": m.columns,
        }),
        format!("{verdict}\n"),
    );
    if m.member {
        let ok = verify_certificate(&cand, &gens, &m.certificate)?;
        report.check("certificate re-verifies", ok, format!("{} terms", m.certificate.len()));
    }
    Ok(report)
}

fn degree(seed: u64, w: &WeightVector, trace: bool) -> Result<Report, CliError> {
    let d = moduli_degree(w)?;
    let boundary = is_boundary(w);
    let mut outputs = json!({ "degree": d.to_string(), "boundary": boundary });
    let mut text = format!("{d}\n");
    if boundary {
        text.push_str("boundary: every semistable configuration is strictly semistable\n");
    }
    if trace {
        let t = degree_trace(w)?;
        outputs["trace"] = to_value(&t);
        text.push_str(&t.to_string());
    }
    Ok(Report::new("degree", seed, json!({ "weights": w.weights(), "trace": trace }), outputs, text))
}

fn chart(seed: u64, c: Configuration) -> Result<Report, CliError> {
    let p = chart_coordinates(&c)?;
    let r = check_chart_point(&p);
    let mut text = p.to_string();
    let _ = writeln!(
        text,
        "{}: {} minors and {} entries checked",
        if r.passed() { "identities hold" } else { "identities FAIL" },
        r.minors_checked,
        r.entries_checked
    );
    let mut report = Report::new(
        "chart",
        seed,
        json!({ "configuration": to_value(ConfigurationJson::from(&c)) }),
        json!({ "m": p.m, "W": rows_json(&p.w), "Z": rows_json(&p.z), "report": to_value(&r) }),
        text,
    );
    report.check("rank one and Z(W - 1) = 1", r.passed(), format!("{} failures", r.failures.len()));
    Ok(report)
}

fn verify_all(seed: u64, tier: Tier) -> Report {
    let results = run_all(seed, tier);
    let mut text = String::new();
    for r in &results {
        let _ = writeln!(text, "{r}");
    }
    let mut report = Report::new(
        "verify-all",
        seed,
        json!({ "tier": to_value(tier) }),
        json!({ "criteria": to_value(&results) }),
        text,
    );
    for r in &results {
        let detail = if r.within_limit() { String::new() } else { "over time budget".to_string() };
        report.check(format!("{}. {}", r.id, r.title), r.passed(), detail);
    }
    report
}
