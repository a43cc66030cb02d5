//! Subcommand implementations. Each returns the data to print and an exit status.

use std::fmt::Write as _;
use std::fs;
use std::time::Instant;

use serde_json::json;
use sparse_hyper::cleanup::{peel_bound, peel_with_order, PeelOrder};
use sparse_hyper::extremal::{
    bes_bounds, chain_check, exact_max, greedy_pack, known_limit, PackOrder, SolveStatus, SolverOptions,
};
use sparse_hyper::freeness::{find_violation, is_family_free, ConstraintFamily, FreenessConstraint, SearchOutcome};
use sparse_hyper::increment::{crucial_constants, density_increment, IncrementStatus};
use sparse_hyper::{Hypergraph, Rational};

use crate::config::{Format, Order, Params, Table, UsageError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    Failed,
    Exhausted,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Failed => 1,
            Status::Exhausted => 2,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl From<UsageError> for CliError {
    fn from(e: UsageError) -> Self {
        CliError::Usage(e.0)
    }
}

impl From<sparse_hyper::Error> for CliError {
    fn from(e: sparse_hyper::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

pub type Outcome = Result<(String, Status), CliError>;

fn require<T: Copy>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    Ok(Params::require(value, flag)?)
}

fn progress(p: &Params, msg: impl FnOnce() -> String) {
    if !p.quiet {
        eprintln!("{}", msg());
    }
}

fn read_input(p: &Params) -> Result<Hypergraph, CliError> {
    let path = p.input.as_ref().ok_or_else(|| CliError::Usage("missing --input".into()))?;
    let text = fs::read_to_string(path).map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))?;
    Hypergraph::from_text(&text).map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))
}

fn write_output(p: &Params, h: &Hypergraph) -> Result<(), CliError> {
    if let Some(path) = &p.output {
        fs::write(path, h.to_text()).map_err(|e| CliError::Failure(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Failure(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Failure(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Failure(e.to_string()))
}

fn json_lines(values: &[serde_json::Value]) -> String {
    values.iter().map(|v| format!("{v}\n")).collect()
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn ratio(x: Rational) -> String {
    x.to_string()
}

/// A single `G(v, e)` constraint when `--v` is given, otherwise the system
/// for `(k, e)`: the sparse constraint alone, or the full constrained family
/// from level `--t` when that is given.
fn family_from(p: &Params, r: usize) -> Result<ConstraintFamily, CliError> {
    let e = require(p.e, "e")?;
    if let Some(v) = p.v {
        return Ok(ConstraintFamily::single(FreenessConstraint::new(v, e)?));
    }
    let k = p
        .k
        .ok_or_else(|| CliError::Usage("give either --v or --k together with --e".into()))?;
    Ok(match p.t {
        Some(t) => ConstraintFamily::constrained(r, k, e, t)?,
        None => ConstraintFamily::single(FreenessConstraint::sparse(r, k, e)?),
    })
}

fn describe_family(family: &ConstraintFamily) -> String {
    let mut parts: Vec<String> = family.constraints.iter().map(|c| c.to_string()).collect();
    if let Some(rule) = family.codegree_rule {
        parts.push(format!("codegree(k={},e={})", rule.k, rule.e));
    }
    parts.join(" ")
}

fn outcome_status(o: &SearchOutcome) -> &'static str {
    match o {
        SearchOutcome::Free { .. } => "free",
        SearchOutcome::Violation { .. } => "violation",
        SearchOutcome::BudgetExhausted { .. } => "budget-exhausted",
    }
}

pub fn check(p: &Params) -> Outcome {
    let h = read_input(p)?;
    let family = family_from(p, h.r())?;
    let budget = p.budget();
    let report = if family.constraints.len() == 1 && family.codegree_rule.is_none() {
        // A single constraint avoids the thread pool entirely.
        let c = family.constraints[0];
        let outcome = find_violation(&h, c, budget)?;
        sparse_hyper::freeness::FamilyReport {
            verdicts: vec![sparse_hyper::freeness::ConstraintVerdict { constraint: c, outcome }],
            codegree: None,
        }
    } else {
        is_family_free(&h, &family, budget)?
    };

    let status = if report.all_free() {
        Status::Success
    } else if report.first_violation().is_some() || report.codegree.as_ref().is_some_and(|c| !c.satisfied()) {
        Status::Failed
    } else {
        Status::Exhausted
    };
    if let Some((_, conf)) = report.first_violation() {
        let witness = h.retain_edges(|id| conf.edge_ids.binary_search(&id).is_ok());
        write_output(p, &witness)?;
    }

    let single = report.verdicts.len() == 1 && report.codegree.is_none();
    let out = match p.format() {
        Format::Text => {
            let mut out = String::new();
            for v in &report.verdicts {
                let line = match &v.outcome {
                    SearchOutcome::Violation { configuration, .. } => format!(
                        "violation edges {} union {}",
                        join(&configuration.edge_ids, ","),
                        join(&configuration.union, ",")
                    ),
                    other => outcome_status(other).to_string(),
                };
                if single {
                    let _ = writeln!(out, "{line}");
                } else {
                    let _ = writeln!(out, "{}: {line}", v.constraint);
                }
            }
            if let Some(cv) = &report.codegree {
                let _ = writeln!(
                    out,
                    "codegree(k={},e={}): {} offending subsets",
                    cv.rule.k,
                    cv.rule.e,
                    cv.offenders.len()
                );
            }
            if !single {
                let summary = match status {
                    Status::Success => "free",
                    Status::Failed => "not free",
                    Status::Exhausted => "budget-exhausted",
                };
                let _ = writeln!(out, "{summary}");
            }
            out
        }
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = report
                .verdicts
                .iter()
                .map(|v| {
                    let conf = v.outcome.violation();
                    vec![
                        v.constraint.to_string(),
                        outcome_status(&v.outcome).to_string(),
                        conf.map_or(String::new(), |c| join(&c.edge_ids, " ")),
                        conf.map_or(String::new(), |c| join(&c.union, " ")),
                        v.outcome.nodes().to_string(),
                    ]
                })
                .collect();
            if let Some(cv) = &report.codegree {
                rows.push(vec![
                    format!("codegree(k={},e={})", cv.rule.k, cv.rule.e),
                    if cv.satisfied() { "free" } else { "violation" }.to_string(),
                    String::new(),
                    join(&cv.offenders.iter().map(|(s, _)| s.to_string()).collect::<Vec<_>>(), " "),
                    String::new(),
                ]);
            }
            csv_table(&["constraint", "status", "edges", "union", "nodes"], &rows)?
        }
        Format::JsonLines => {
            let mut values: Vec<_> = report
                .verdicts
                .iter()
                .map(|v| json!({"constraint": {"v": v.constraint.v, "e": v.constraint.e}, "outcome": v.outcome}))
                .collect();
            if let Some(cv) = &report.codegree {
                values.push(json!({"codegree": cv}));
            }
            json_lines(&values)
        }
    };
    Ok((out, status))
}

pub fn peel(p: &Params) -> Outcome {
    let h = read_input(p)?;
    let k = require(p.k, "k")?;
    let e = require(p.e, "e")?;
    let order = match p.order.unwrap_or(Order::Canonical) {
        Order::Canonical => PeelOrder::Canonical,
        Order::Random => PeelOrder::Shuffled { seed: p.seed.unwrap_or(0) },
    };
    let (peeled, log) = peel_with_order(&h, k, e, order)?;
    let bound = peel_bound(h.n(), k, e)?;
    write_output(p, &peeled)?;
    progress(p, || format!("peeled {} of {} edges", log.len(), h.edge_count()));

    let out = match p.format() {
        Format::Text => {
            let mut out = String::new();
            for r in &log.entries {
                let _ = writeln!(
                    out,
                    "remove {} (edge {}) via {} codegree {}",
                    join(&r.edge, " "),
                    r.edge_id,
                    r.subset,
                    r.codegree
                );
            }
            let _ = writeln!(out, "removed {} of {} edges, bound {bound}", log.len(), h.edge_count());
            out
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = log
                .entries
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    vec![
                        i.to_string(),
                        r.edge_id.to_string(),
                        join(&r.edge, " "),
                        join(r.subset.vertices(), " "),
                        r.codegree.to_string(),
                    ]
                })
                .collect();
            csv_table(&["step", "edge_id", "edge", "subset", "codegree"], &rows)?
        }
        Format::JsonLines => {
            let mut values: Vec<_> = log
                .entries
                .iter()
                .enumerate()
                .map(|(i, r)| json!({"step": i, "removal": r}))
                .collect();
            values.push(json!({"removed": log.len(), "edges": h.edge_count(), "bound": bound.to_string()}));
            json_lines(&values)
        }
    };
    Ok((out, Status::Success))
}

pub fn extract(p: &Params) -> Outcome {
    let h = read_input(p)?;
    let t = require(p.t, "t")?;
    let e = require(p.e, "e")?;
    let k = require(p.k, "k")?;
    let outcome = density_increment(&h, t, e, k, p.budget())?;
    write_output(p, &outcome.result)?;
    let status = match &outcome.status {
        IncrementStatus::Completed => Status::Success,
        IncrementStatus::Aborted { reason, .. } => {
            eprintln!("aborted: {reason}");
            Status::Failed
        }
        IncrementStatus::BudgetExhausted { .. } => Status::Exhausted,
    };
    let trace = &outcome.trace;
    let yes_no = |b: Option<bool>| match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "undecided",
    };

    let out = match p.format() {
        Format::Csv => trace.to_csv(),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "x {}", trace.x);
            for s in &trace.steps {
                let _ = writeln!(
                    out,
                    "step {} X {} config {} I(X) {} e {}->{} v {}->{}",
                    s.j,
                    join(&s.removed_vertices, ","),
                    join(&s.configuration, ","),
                    join(&s.i_of_x, ","),
                    s.e_before,
                    s.e_after,
                    s.v_before,
                    s.v_after
                );
            }
            let _ = writeln!(out, "status {}", match &outcome.status {
                IncrementStatus::Completed => "completed".to_string(),
                IncrementStatus::Aborted { step, .. } => format!("aborted at step {step}"),
                IncrementStatus::BudgetExhausted { step, .. } => format!("budget-exhausted at step {step}"),
            });
            let _ = writeln!(out, "accounting {}", yes_no(Some(trace.accounting_holds())));
            let _ = writeln!(out, "output free {}", yes_no(outcome.conclusions.free));
            let _ = writeln!(out, "vertex fraction {}", yes_no(outcome.conclusions.vertex_fraction));
            let _ = writeln!(out, "density nondecreasing {}", yes_no(outcome.conclusions.density_nondecreasing));
            out
        }
        Format::JsonLines => {
            let mut values: Vec<_> = trace.steps.iter().map(|s| json!(s)).collect();
            values.push(json!({
                "status": outcome.status,
                "conclusions": outcome.conclusions,
                "hypothesis": trace.hypothesis,
                "vertices": outcome.vertices,
                "edges": outcome.edges,
            }));
            json_lines(&values)
        }
    };
    Ok((out, status))
}

pub fn solve(p: &Params) -> Outcome {
    let n = require(p.n, "n")?;
    let r = p.r();
    let family = family_from(p, r)?;
    let options = SolverOptions {
        budget: p.budget(),
        threads: p.threads.unwrap_or(1),
    };
    let start = Instant::now();
    let res = exact_max(n, r, &family, options)?;
    progress(p, || format!("searched {} nodes in {:.2?}", res.nodes, start.elapsed()));
    write_output(p, &res.witness)?;
    let status = match res.status {
        SolveStatus::ProvenOptimal => Status::Success,
        SolveStatus::BudgetExhausted => Status::Exhausted,
    };
    let constraints = describe_family(&family);
    let out = match p.format() {
        Format::Text => format!(
            "optimum {}\nstatus {}\nconstraints {constraints}\nnodes {}\n",
            res.optimum, res.status, res.nodes
        ),
        Format::Csv => csv_table(
            &["n", "r", "constraints", "optimum", "status", "nodes"],
            &[vec![
                n.to_string(),
                r.to_string(),
                constraints,
                res.optimum.to_string(),
                res.status.to_string(),
                res.nodes.to_string(),
            ]],
        )?,
        Format::JsonLines => json_lines(&[json!({
            "n": n,
            "r": r,
            "constraints": constraints,
            "optimum": res.optimum,
            "status": res.status,
            "nodes": res.nodes,
            "certificates": res.certificates,
            "witness": res.witness.edges(),
        })]),
    };
    Ok((out, status))
}

pub fn construct(p: &Params) -> Outcome {
    let n = require(p.n, "n")?;
    let e = require(p.e, "e")?;
    let r = p.r();
    let seed = p.seed.unwrap_or(0);
    let order = match p.order.unwrap_or(Order::Random) {
        Order::Canonical => PackOrder::Lex,
        Order::Random => PackOrder::Random,
    };
    let start = Instant::now();
    let packing = greedy_pack(n, r, e, seed, order, p.budget())?;
    progress(p, || format!("packed {} edges in {:.2?}", packing.hypergraph.edge_count(), start.elapsed()));
    if packing.undecided > 0 {
        eprintln!("warning: {} candidates rejected after budget exhaustion", packing.undecided);
    }
    write_output(p, &packing.hypergraph)?;
    let status = if packing.verified() { Status::Success } else { Status::Failed };
    let rep = &packing.report;
    let out = match p.format() {
        Format::Text => {
            let mut out = format!(
                "edges {}\ntarget {}\nratio {} ({:.6})\n",
                rep.edges,
                ratio(rep.target),
                ratio(rep.ratio),
                rep.ratio_f64
            );
            for v in &packing.verification {
                let _ = writeln!(out, "{}: {}", v.constraint, outcome_status(&v.outcome));
            }
            let _ = writeln!(out, "undecided {}", packing.undecided);
            out
        }
        Format::Csv => csv_table(
            &["n", "r", "e", "seed", "edges", "target", "ratio", "verified", "undecided"],
            &[vec![
                n.to_string(),
                r.to_string(),
                e.to_string(),
                seed.to_string(),
                rep.edges.to_string(),
                ratio(rep.target),
                format!("{:.9}", rep.ratio_f64),
                packing.verified().to_string(),
                packing.undecided.to_string(),
            ]],
        )?,
        Format::JsonLines => json_lines(&[json!({
            "n": n,
            "r": r,
            "e": e,
            "seed": seed,
            "edges": rep.edges,
            "target": ratio(rep.target),
            "ratio": ratio(rep.ratio),
            "verification": packing.verification,
            "undecided": packing.undecided,
        })]),
    };
    Ok((out, status))
}

fn range_or(value: Option<usize>, default: std::ops::RangeInclusive<usize>) -> Vec<usize> {
    value.map_or_else(|| default.collect(), |v| vec![v])
}

pub fn limits(p: &Params) -> Outcome {
    let (header, rows): (Vec<&str>, Vec<Vec<String>>) = match p.table.unwrap_or(Table::Limits) {
        Table::Limits => {
            let mut rows = Vec::new();
            for r in range_or(p.r, 3..=8) {
                for k in range_or(p.k, 1..=r.saturating_sub(1)) {
                    for e in range_or(p.e, 2..=6) {
                        let rec = known_limit(r, k, e)?;
                        rows.push(vec![
                            r.to_string(),
                            k.to_string(),
                            e.to_string(),
                            rec.value.map_or("unknown".to_string(), ratio),
                            rec.source.map_or(String::new(), |s| s.to_string()),
                            rec.flags.join("; "),
                        ]);
                    }
                }
            }
            (vec!["r", "k", "e", "value", "source", "flags"], rows)
        }
        Table::Exponents => {
            let r = p.r();
            let v = require(p.v, "v")?;
            let e = require(p.e, "e")?;
            let b = bes_bounds(p.n.map(|n| n as u64), r, v, e)?;
            let fmt = |x: Option<f64>| x.map_or(String::new(), |x| format!("{x:.6}"));
            let row = vec![
                r.to_string(),
                v.to_string(),
                e.to_string(),
                ratio(b.lower_exponent),
                b.upper_exponent.to_string(),
                p.n.map_or(String::new(), |n| n.to_string()),
                fmt(b.lower_value),
                fmt(b.upper_value),
            ];
            (vec!["r", "v", "e", "lower_exponent", "upper_exponent", "n", "lower_value", "upper_value"], vec![row])
        }
        Table::Constants => {
            let mut rows = Vec::new();
            for r in range_or(p.r, 3..=8) {
                let c = crucial_constants(r)?;
                rows.push(vec![
                    r.to_string(),
                    ratio(c.alpha_squared),
                    c.alpha.map_or(String::new(), ratio),
                    format!("{:.9}", c.alpha_f64),
                    ratio(c.delta),
                    ratio(c.b),
                ]);
            }
            (vec!["r", "alpha_squared", "alpha", "alpha_approx", "delta", "b"], rows)
        }
    };
    let out = match p.format() {
        Format::Text => {
            let mut out = format!("{}\n", header.join(" "));
            for row in &rows {
                let cells: Vec<&str> = row.iter().map(String::as_str).filter(|c| !c.is_empty()).collect();
                let _ = writeln!(out, "{}", cells.join(" "));
            }
            out
        }
        Format::Csv => csv_table(&header, &rows)?,
        Format::JsonLines => {
            let values: Vec<_> = rows
                .iter()
                .map(|row| {
                    let map: serde_json::Map<String, serde_json::Value> = header
                        .iter()
                        .zip(row)
                        .map(|(h, c)| (h.to_string(), json!(c)))
                        .collect();
                    serde_json::Value::Object(map)
                })
                .collect();
            json_lines(&values)
        }
    };
    Ok((out, Status::Success))
}

pub fn chain(p: &Params) -> Outcome {
    let n = require(p.n, "n")?;
    let e = require(p.e, "e")?;
    let k = require(p.k, "k")?;
    let r = p.r();
    let options = SolverOptions {
        budget: p.budget(),
        threads: p.threads.unwrap_or(1),
    };
    let rep = chain_check(n, r, e, k, options)?;
    let status = match (rep.status, rep.holds()) {
        (SolveStatus::BudgetExhausted, _) => Status::Exhausted,
        (_, true) => Status::Success,
        (_, false) => Status::Failed,
    };
    let out = match p.format() {
        Format::Text => {
            let mut out = format!("f {}\n", rep.unconstrained);
            for (t, f) in &rep.constrained {
                let _ = writeln!(out, "f^({t}) {f}");
            }
            let _ = writeln!(out, "peel allowance {}", rep.peel_allowance);
            let _ = writeln!(out, "monotone {}", rep.monotone);
            let _ = writeln!(out, "peel inequality {}", rep.peel_inequality);
            let _ = writeln!(out, "status {}", rep.status);
            out
        }
        Format::Csv => {
            let mut rows = vec![vec![String::from("none"), rep.unconstrained.to_string()]];
            rows.extend(rep.constrained.iter().map(|(t, f)| vec![t.to_string(), f.to_string()]));
            csv_table(&["t", "optimum"], &rows)?
        }
        Format::JsonLines => json_lines(&[json!(rep)]),
    };
    Ok((out, status))
}
