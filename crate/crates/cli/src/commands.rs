use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use flowseries::dend::{build_dend_named, phi, DendSeries, NamedDend};
use flowseries::exactcoeff::Coefficient;
use flowseries::flows::{
    component_count, connected_flows_gf, count_flows, enumerate_flows, flows_gf, rho, saturated_series, small_flows_gf,
    unit_exit_gf, unit_exit_t_gf, FlowClass, Shape,
};
use flowseries::prelie::{build_named, NamedSeries, SeriesValue};
use flowseries::symfun::{groupring_idempotent_check, quasi_idempotent_check, IdempotentFamily, GROUP_RING_LIMIT};
use flowseries::trees::{enumerate_pbtrees, enumerate_rooted_trees, linear, RootedTree};
use flowseries::verify::{
    run_conjecture_scan, run_theorem_suite, ConjectureLimits, Fault, Report, SuiteConfig,
};

use crate::output::Output;

pub const MAX_DEGREE: usize = 8;
pub const MAX_TREE_SIZE: usize = 12;
pub const MAX_DYCK: usize = 10;
pub const MAX_IDEMPOTENT: usize = 7;

fn check_limit(what: &str, value: usize, max: usize) -> Result<()> {
    if value == 0 || value > max {
        bail!("{what} must be between 1 and {max}, got {value}");
    }
    Ok(())
}

pub fn trees(size: usize, planar: bool) -> Result<Output> {
    check_limit("--size", size, MAX_TREE_SIZE)?;
    if planar {
        let ts = enumerate_pbtrees(size);
        let rows: Vec<Vec<String>> = ts
            .iter()
            .map(|t| vec![t.to_string(), t.canopy().map(|w| w.to_string()).unwrap_or_default()])
            .collect();
        let json = json!({
            "degree": size,
            "trees": ts.iter().map(|t| json!({"pbt": t.to_string(), "canopy": t.canopy().map(|w| w.to_string()).unwrap_or_default()})).collect::<Vec<_>>(),
        });
        return Ok(Output::new(json, vec!["pbt", "canopy"], rows));
    }
    let ts = enumerate_rooted_trees(size);
    let rows: Vec<Vec<String>> = ts.iter().map(|t| vec![t.code().to_string(), t.aut().to_string()]).collect();
    let json = json!({
        "size": size,
        "trees": ts.iter().map(|t| json!({"tree": t.code(), "aut": t.aut().to_string()})).collect::<Vec<_>>(),
    });
    Ok(Output::new(json, vec!["tree", "aut"], rows))
}

pub fn flow(code: &str, class: &str, order: usize) -> Result<Output> {
    let t: RootedTree = code.parse().with_context(|| format!("malformed tree {code:?}"))?;
    check_limit("tree size", t.size(), MAX_TREE_SIZE)?;
    let class = FlowClass::parse(class).with_context(|| format!("unknown flow class {class:?}"))?;
    let e = flows_gf(&t);
    let d = small_flows_gf(&t);
    let f = unit_exit_gf(&t);
    let ft = unit_exit_t_gf(&t);
    let ec = connected_flows_gf(&t)?;
    let es = saturated_series(&t);
    let counts = count_flows(&t, class, order as u32);
    let mut rows = vec![
        vec!["E".to_string(), e.to_string()],
        vec!["D".to_string(), d.to_string()],
        vec!["Ec".to_string(), ec.to_string()],
        vec!["F".to_string(), f.to_string()],
        vec!["F_t".to_string(), ft.as_ref().map(|v| v.to_string()).unwrap_or_else(|err| format!("undefined: {err}"))],
        vec!["Es".to_string(), es.to_string()],
    ];
    for (&(size, exit), n) in &counts.counts {
        rows.push(vec![format!("{}[size={size},exit={exit}]", class.name()), n.to_string()]);
    }
    let json = json!({
        "tree": t.code(),
        "E": e.to_wire(),
        "D": d.to_wire(),
        "Ec": ec.to_wire(),
        "F": f.to_wire(),
        "F_t": ft.map(|v| v.to_wire()).unwrap_or(Value::Null),
        "Es": es.to_wire(),
        "oracle": {
            "class": class.name(),
            "max_exit": order,
            "counts": counts.counts.iter().map(|(&(size, exit), n)| json!({"size": size, "exit": exit, "count": n})).collect::<Vec<_>>(),
        },
    });
    Ok(Output::new(json, vec!["quantity", "value"], rows))
}

fn dend_output(label: &str, s: &DendSeries<impl Coefficient>) -> Output {
    let rows = s.nonzero().map(|(t, v)| vec![t.to_string(), v.to_string()]).collect();
    let mut json = s.to_wire();
    json["name"] = Value::String(label.to_string());
    Output::new(json, vec!["pbt", "value"], rows)
}

pub fn series(name: &str, degree: usize, order: usize) -> Result<Output> {
    check_limit("--degree", degree, MAX_DEGREE)?;
    let parsed: NamedSeries = name.parse()?;
    let value = build_named(parsed, degree, order)?;
    let rows = value.rows().into_iter().map(|(t, v)| vec![t, v]).collect();
    let mut json = value.to_wire();
    json["name"] = Value::String(name.to_string());
    Ok(Output::new(json, vec!["tree", "value"], rows))
}

pub fn dend(name: &str, degree: usize) -> Result<Output> {
    check_limit("--degree", degree, MAX_DEGREE)?;
    let parsed: NamedDend = name.parse()?;
    Ok(dend_output(name, &build_dend_named(parsed, degree)))
}

pub fn phi_image(name: &str, degree: usize, order: usize) -> Result<Output> {
    check_limit("--degree", degree, MAX_DEGREE)?;
    let parsed: NamedSeries = name.parse()?;
    let label = format!("phi({name})");
    Ok(match build_named(parsed, degree, order)? {
        SeriesValue::Rational(s) => dend_output(&label, &phi(&s)),
        SeriesValue::BPoly(s) => dend_output(&label, &phi(&s)),
        SeriesValue::Fraction(s) => dend_output(&label, &phi(&s)),
        SeriesValue::TSeries(s) => dend_output(&label, &phi(&s)),
    })
}

pub fn idempotent(family: &str, n: usize) -> Result<Output> {
    check_limit("--n", n, MAX_IDEMPOTENT)?;
    let family: IdempotentFamily = family.parse()?;
    let x = family.elements(n)?.pop().expect("n >= 1");
    let scalar = family.expected_scalar(n);
    let report = quasi_idempotent_check(&x, &scalar)?;
    let oracle = if n <= GROUP_RING_LIMIT.min(5) { Some(groupring_idempotent_check(&x, &scalar)?) } else { None };
    let holds = report.holds() && oracle.as_ref().is_none_or(Option::is_none);
    let verdict = if holds { "pass" } else { "FAIL" };
    let kind = if family.is_conjecture() { "conjecture" } else { "theorem" };
    let rows: Vec<Vec<String>> = x.rows().into_iter().map(|(d, w, c)| vec![d.to_string(), w, c]).collect();
    let json = json!({
        "family": family.to_string(),
        "n": n,
        "kind": kind,
        "verdict": verdict,
        "scalar": scalar.to_wire(),
        "square_mismatch": report.square_mismatch.as_ref().map(|w| w.to_string()),
        "identity_coefficient": report.identity_coefficient.to_wire(),
        "normalized": report.normalized,
        "group_ring_mismatch": oracle.as_ref().map(|m| m.as_ref().map(|p| p.to_string())),
        "group_ring_checked": oracle.is_some(),
        "ribbon": x.to_wire(),
    });
    let mut out = Output::new(json, vec!["degree", "word", "coefficient"], rows)
        .note(format!("{family}_{n} · {family}_{n} = ({scalar}) {family}_{n}: {verdict} ({kind})"));
    if let Some(w) = &report.square_mismatch {
        out = out.note(format!("first differing word: {w}"));
    }
    if holds || family.is_conjecture() {
        Ok(out)
    } else {
        out.exit_code = 1;
        Ok(out)
    }
}

pub fn verify(
    theorems: bool,
    conjectures: bool,
    degree: usize,
    order: usize,
    seed: u64,
    limit: Option<usize>,
    fault: Option<Fault>,
) -> Result<(Report, Output)> {
    check_limit("--degree", degree, MAX_DEGREE)?;
    let (theorems, conjectures) = if !theorems && !conjectures { (true, true) } else { (theorems, conjectures) };
    let mut checks = Vec::new();
    if theorems {
        checks.extend(run_theorem_suite(&SuiteConfig { degree, t_order: order, seed, fault }));
    }
    if conjectures {
        let limits = limit.map(ConjectureLimits::capped).unwrap_or_default();
        checks.extend(run_conjecture_scan(&limits));
    }
    let report = Report { degree, t_order: order, seed, checks };
    let rows = report
        .checks
        .iter()
        .map(|c| {
            vec![
                c.id.clone(),
                c.status.as_str().to_string(),
                c.witness.clone().unwrap_or_default(),
                format!("{:.1}", c.wall_time_ms),
            ]
        })
        .collect();
    let mut out = Output::new(report.to_json(), vec!["check", "status", "witness", "ms"], rows);
    out.exit_code = report.exit_code();
    Ok((report, out))
}

pub fn dyck(n: usize) -> Result<Output> {
    check_limit("--n", n, MAX_DYCK)?;
    let t = linear(n)?;
    let shape = Shape::of(&t);
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for f in enumerate_flows(&t, FlowClass::Closed, 0) {
        let p = rho(&f)?;
        let outputs: String = f.outputs.iter().map(|&o| if o { '1' } else { '0' }).collect();
        let inputs: Vec<String> = f.inputs.iter().map(u32::to_string).collect();
        let rates: Vec<String> = f.rates.iter().map(u32::to_string).collect();
        let comps = component_count(&shape, &f.rates);
        rows.push(vec![outputs.clone(), inputs.join(" "), rates.join(" "), p.to_string(), p.peaks().to_string(), comps.to_string()]);
        items.push(json!({
            "outputs": outputs,
            "inputs": f.inputs,
            "rates": f.rates,
            "path": p.to_string(),
            "peaks": p.peaks(),
            "components": comps,
        }));
    }
    let json = json!({"n": n, "flows": items});
    Ok(Output::new(json, vec!["outputs", "inputs", "rates", "path", "peaks", "components"], rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use flowseries::exactcoeff::FlowFraction;
    use flowseries::trees::fork;

    /// Reads a fraction back from its JSON form.
    fn fraction_from_wire(v: &Value) -> Result<FlowFraction> {
        let pole = v["pole"].as_u64().context("missing pole")? as u32;
        let matrix = v["num"]
            .as_array()
            .context("missing num")?
            .iter()
            .map(|row| {
                row.as_array()
                    .context("row is not an array")?
                    .iter()
                    .map(|c| Ok(flowseries::exactcoeff::parse_rational(c.as_str().context("coefficient is not a string")?)?))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FlowFraction::from_numerator_matrix(&matrix, pole))
    }

    #[test]
    fn fraction_json_round_trip() {
        let t = fork(2, 2).unwrap();
        let out = flow(t.code(), "all", 4).unwrap();
        assert_eq!(fraction_from_wire(&out.json["E"]).unwrap(), flows_gf(&t));
        assert_eq!(fraction_from_wire(&out.json["Ec"]).unwrap(), connected_flows_gf(&t).unwrap());
    }

    #[test]
    fn limits_and_names_are_checked() {
        assert!(series("nope", 3, 4).is_err());
        assert!(dend("sQ", 3).is_err());
        assert!(series("E_t", 0, 4).is_err());
        assert!(flow("(()", "all", 4).is_err());
        assert!(flow("(())", "sideways", 4).is_err());
        assert!(idempotent("D", 9).is_err());
    }

    #[test]
    fn one_tree_of_size_one() {
        let out = trees(1, false).unwrap();
        assert_eq!(out.rows, vec![vec!["()".to_string(), "1".to_string()]]);
    }
}
