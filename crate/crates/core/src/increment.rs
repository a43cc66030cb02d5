//! Structure around a bad configuration and the density-increment loop.
//!
//! A bad configuration is `t-1` distinct edges whose union `X` has at most
//! `x = (t-1)r - (t-2)k - 1` vertices. The loop repeatedly deletes such a
//! configuration together with `I(X)`, the outside edges meeting `X` in
//! exactly `k-1` vertices, and then deletes the vertices of `X`. Every
//! quantity the density argument relies on is recorded per step; the
//! asymptotic conclusions are evaluated and reported, never assumed.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, exact_sqrt, for_each_subset};
use crate::error::{Error, Result};
use crate::extremal::{exact_max, to_f64, SolveStatus, SolverOptions};
use crate::freeness::{
    find_violation, is_family_free, Configuration, ConstraintFamily, FreenessConstraint, SearchOutcome,
};
use crate::hypergraph::{EdgeId, Hypergraph, Relabeling, SubsetKey, Vertex};
use crate::Rational;

/// Largest `C(n', r')` for which the exact bound on `|I(X)|` is attempted.
const EXACT_BOUND_MAX_CANDIDATES: u128 = 45;

/// `x = (t-1) r - (t-2) k - 1`, the largest union of a bad configuration.
pub fn bad_union_size(r: usize, k: usize, t: usize) -> Result<usize> {
    let x = (t as i64 - 1) * r as i64 - (t as i64 - 2) * k as i64 - 1;
    usize::try_from(x)
        .ok()
        .filter(|&x| x > 0)
        .ok_or_else(|| Error::InvalidParameters(format!("bad-configuration size is {x} for r={r}, k={k}, t={t}")))
}

/// The constants of the density-increment argument for uniformity `r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrucialConstants {
    pub r: usize,
    /// `(3r^2 - 4r - 14) / (3r^2 + 2r - 8)`.
    pub alpha_squared: Rational,
    /// `alpha` itself when `alpha_squared` is the square of a rational.
    pub alpha: Option<Rational>,
    pub alpha_f64: f64,
    /// `1 / ((3r - 4)(r - 1) + 1)`.
    pub delta: Rational,
    /// `max{ 1/(r(r-1)) - delta/(r(r-2)), 1/(2r^2 - 2r - 5) }`.
    pub b: Rational,
}

pub fn crucial_constants(r: usize) -> Result<CrucialConstants> {
    if !(3..=1_000_000).contains(&r) {
        return Err(Error::InvalidParameters(format!("constants need r >= 3, got {r}")));
    }
    let r = r as i128;
    let alpha_squared = Rational::new(3 * r * r - 4 * r - 14, 3 * r * r + 2 * r - 8);
    let alpha = match (exact_sqrt(*alpha_squared.numer()), exact_sqrt(*alpha_squared.denom())) {
        (Some(a), Some(b)) => Some(Rational::new(a, b)),
        _ => None,
    };
    let delta = Rational::new(1, (3 * r - 4) * (r - 1) + 1);
    let first = Rational::new(1, r * (r - 1)) - delta / Rational::from_integer(r * (r - 2));
    let second = Rational::new(1, 2 * r * r - 2 * r - 5);
    Ok(CrucialConstants {
        r: r as usize,
        alpha_f64: to_f64(alpha_squared).sqrt(),
        alpha_squared,
        alpha,
        delta,
        b: first.max(second),
    })
}

/// Measurements around one bad configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralReport {
    pub k: usize,
    pub configuration: Vec<EdgeId>,
    /// Union of the configuration.
    pub x: Vec<Vertex>,
    pub x_expected: usize,
    pub size_ok: bool,
    /// Outside edges with `|A ∩ X| = k - 1`.
    pub i_of_x: Vec<EdgeId>,
    /// Outside edges with `|A ∩ X| >= k`.
    pub intersection_violations: Vec<EdgeId>,
    /// `max{e-t+1, f_{r-k+1}(n-|X|, (e-t+1)(r-k+1)-(e-t), e-t+1)}` when solved exactly.
    pub exact_bound: Option<usize>,
    pub exact_bound_ok: Option<bool>,
    /// `(n - |X|) / (r - k)`.
    pub fallback_bound: Rational,
    /// `|I(X)| < (n - |X|) / (r - k)`.
    pub fallback_ok: bool,
    /// Pairs of edges in `I(X)` with the same trace outside `X`.
    pub projection_collisions: usize,
}

impl StructuralReport {
    /// Whether all three structural assertions held on this input.
    pub fn all_hold(&self) -> bool {
        self.size_ok
            && self.intersection_violations.is_empty()
            && self.exact_bound_ok.unwrap_or(self.fallback_ok)
    }
}

/// Measures the three structural assertions for `configuration` in `h`.
///
/// The configuration must consist of `t-1` distinct edges whose union has at
/// most `x` vertices. Nothing is asserted: the guarantees only hold when `h`
/// satisfies the constrained-family hypotheses.
pub fn structural_analyze(
    h: &Hypergraph,
    configuration: &[EdgeId],
    k: usize,
    t: usize,
    e: usize,
    options: SolverOptions,
) -> Result<StructuralReport> {
    let r = h.r();
    if t < 3 || k < 1 || k >= r {
        return Err(Error::InvalidParameters(format!(
            "structure needs t >= 3 and 1 <= k < r, got t = {t}, k = {k}, r = {r}"
        )));
    }
    let x_expected = bad_union_size(r, k, t)?;
    let mut ids = configuration.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if ids.len() != t - 1 || configuration.len() != t - 1 {
        return Err(Error::NotBadConfiguration(format!(
            "expected {} distinct edges, got {configuration:?}",
            t - 1
        )));
    }
    let x = h.union(&ids)?;
    if x.len() > x_expected {
        return Err(Error::NotBadConfiguration(format!(
            "union has {} vertices, more than {x_expected}",
            x.len()
        )));
    }

    let mut i_of_x = Vec::new();
    let mut intersection_violations = Vec::new();
    for (id, edge) in h.edges().iter().enumerate() {
        if ids.binary_search(&id).is_ok() {
            continue;
        }
        let meet = edge.iter().filter(|v| x.binary_search(v).is_ok()).count();
        if meet == k - 1 {
            i_of_x.push(id);
        } else if meet >= k {
            intersection_violations.push(id);
        }
    }

    let mut traces: Vec<Vec<Vertex>> = i_of_x
        .iter()
        .map(|&id| {
            h.edges()[id]
                .iter()
                .copied()
                .filter(|v| x.binary_search(v).is_err())
                .collect()
        })
        .collect();
    traces.sort_unstable();
    let projection_collisions = traces.windows(2).filter(|w| w[0] == w[1]).count();

    let remaining = h.n() - x.len();
    let fallback_bound = Rational::new(remaining as i128, (r - k) as i128);
    let fallback_ok = Rational::from_integer(i_of_x.len() as i128) < fallback_bound;

    let exact_bound = exact_i_bound(remaining, r, k, t, e, options)?;
    Ok(StructuralReport {
        k,
        configuration: ids,
        size_ok: x.len() == x_expected,
        x,
        x_expected,
        exact_bound_ok: exact_bound.map(|b| i_of_x.len() <= b),
        exact_bound,
        i_of_x,
        intersection_violations,
        fallback_bound,
        fallback_ok,
        projection_collisions,
    })
}

fn exact_i_bound(
    remaining: usize,
    r: usize,
    k: usize,
    t: usize,
    e: usize,
    options: SolverOptions,
) -> Result<Option<usize>> {
    if e + 1 < t + 2 {
        // e - t + 1 < 2: the inner constraint is not a configuration constraint.
        return Ok(None);
    }
    let size = e - t + 1;
    let link_r = r - k + 1;
    if binomial(remaining as u64, link_r as u64)? > EXACT_BOUND_MAX_CANDIDATES {
        return Ok(None);
    }
    let constraint = FreenessConstraint::new(size * link_r - (e - t), size)?;
    let res = exact_max(remaining, link_r, &ConstraintFamily::single(constraint), options)?;
    Ok((res.status == SolveStatus::ProvenOptimal).then(|| res.optimum.max(size)))
}

/// `J(X) = {A \ X : A ∈ I(X)}` on the vertices outside `X`.
pub fn projection(h: &Hypergraph, report: &StructuralReport) -> Result<(Hypergraph, Relabeling)> {
    let inside = h.retain_edges(|id| report.i_of_x.binary_search(&id).is_ok());
    let relabel_probe = inside.delete_vertices(&report.x)?.1;
    let traces: Vec<Vec<Vertex>> = inside
        .edges()
        .iter()
        .map(|edge| edge.iter().filter_map(|&v| relabel_probe.to_new(v)).collect())
        .collect();
    let j = Hypergraph::build(relabel_probe.new_to_old.len(), h.r() - report.k + 1, traces)?;
    Ok((j, relabel_probe))
}

/// Whether the input met the hypotheses under which the loop's conclusions are guaranteed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisFlags {
    /// The constrained-family system at `(r, k, e, t)`; `None` when undecided or `t > e - 1`.
    pub property: Option<bool>,
    /// `|F| / n^2 >= b`; `None` for `r < 3`.
    pub density: Option<bool>,
    /// `k != 2`: the loop runs, but the density conclusions are not claimed.
    pub beyond_k2: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncrementStep {
    pub j: usize,
    /// `X_j` in original vertex ids.
    pub removed_vertices: Vec<Vertex>,
    /// The bad configuration, original edge ids.
    pub configuration: Vec<EdgeId>,
    /// `I(X_j)`, original edge ids.
    pub i_of_x: Vec<EdgeId>,
    pub e_before: usize,
    pub v_before: usize,
    pub e_after: usize,
    pub v_after: usize,
    /// `e_j / v_j^2`.
    pub density_before: Option<Rational>,
    /// `y = x (j + 1)`, vertices removed so far.
    pub y: usize,
    /// `e_{j+1} > e_j - v_j/(r-2)`; `None` for `r <= 2`.
    pub step_bound: Option<bool>,
    /// `e_{j+1} > e_0 - (v_0 + ... + v_j)/(r-2)`; `None` for `r <= 2`.
    pub cumulative_bound: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncrementTrace {
    pub r: usize,
    pub k: usize,
    pub t: usize,
    pub e: usize,
    pub x: usize,
    pub constants: Option<CrucialConstants>,
    pub hypothesis: HypothesisFlags,
    pub e0: usize,
    pub v0: usize,
    pub steps: Vec<IncrementStep>,
}

impl IncrementTrace {
    /// `v_{j+1} = v_j - x` and `e_{j+1} = e_j - |I(X_j)| - (t-1)` on every
    /// step, with consecutive steps chained.
    pub fn accounting_holds(&self) -> bool {
        let mut e = self.e0;
        let mut v = self.v0;
        for step in &self.steps {
            if step.e_before != e || step.v_before != v {
                return false;
            }
            if step.v_after + self.x != step.v_before
                || step.e_after + step.i_of_x.len() + (self.t - 1) != step.e_before
                || step.configuration.len() != self.t - 1
            {
                return false;
            }
            e = step.e_after;
            v = step.v_after;
        }
        true
    }

    /// `v_j = v_0 - x j` for every recorded step.
    pub fn vertex_identity_holds(&self) -> bool {
        self.steps
            .iter()
            .all(|s| s.v_before + self.x * s.j == self.v0 && s.v_after + s.y == self.v0)
    }

    /// `(j, e_j, v_j)` for `j = 0..=steps`.
    pub fn series(&self) -> Vec<(usize, usize, usize)> {
        let mut out = vec![(0, self.e0, self.v0)];
        for s in &self.steps {
            out.push((s.j + 1, s.e_after, s.v_after));
        }
        out
    }

    /// CSV with header `j,e_j,v_j,density`; density is blank when `v_j = 0`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,e_j,v_j,density\n");
        for (j, e, v) in self.series() {
            let density = if v == 0 {
                String::new()
            } else {
                format!("{:.9}", e as f64 / (v as f64 * v as f64))
            };
            let _ = writeln!(out, "{j},{e},{v},{density}");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum IncrementStatus {
    Completed,
    BudgetExhausted { step: usize, nodes: u64 },
    /// A configuration whose shape the argument rules out; nothing was deleted for it.
    Aborted { step: usize, reason: String },
}

/// The three conclusions, evaluated on the output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusions {
    /// Output is free of `G_r(x, t-1)`; `None` if the check ran out of budget.
    pub free: Option<bool>,
    /// `|V(F')| >= alpha n`; `None` for `r < 3`.
    pub vertex_fraction: Option<bool>,
    /// `|F'| / |V(F')|^2 >= |F| / n^2`; `None` when a vertex count is zero.
    pub density_nondecreasing: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IncrementOutcome {
    /// Final hypergraph on the surviving vertices, re-indexed densely.
    pub result: Hypergraph,
    /// Original ids of the surviving vertices.
    pub vertices: Vec<Vertex>,
    /// Original ids of the surviving edges.
    pub edges: Vec<EdgeId>,
    pub trace: IncrementTrace,
    pub status: IncrementStatus,
    pub conclusions: Conclusions,
}

fn density(e: usize, v: usize) -> Option<Rational> {
    (v > 0).then(|| Rational::new(e as i128, (v * v) as i128))
}

/// Runs the deletion loop until no bad configuration remains.
///
/// Each step takes the lexicographically first bad configuration from the
/// canonical freeness search. The loop aborts, deleting nothing for that
/// step, when the union is not of size exactly `x` or when an outside edge
/// meets `X` in a number of vertices other than `0` or `k-1`.
pub fn density_increment(h: &Hypergraph, t: usize, e: usize, k: usize, budget: u64) -> Result<IncrementOutcome> {
    let r = h.r();
    if t < 3 || k < 2 || k >= r {
        return Err(Error::InvalidParameters(format!(
            "increment needs t >= 3 and 2 <= k < r, got t = {t}, k = {k}, r = {r}"
        )));
    }
    let x = bad_union_size(r, k, t)?;
    let bad = FreenessConstraint::new(x, t - 1)?;
    let constants = (r >= 3).then(|| crucial_constants(r)).transpose()?;

    let property = match ConstraintFamily::constrained(r, k, e, t) {
        Ok(family) => {
            let report = is_family_free(h, &family, budget)?;
            (!report.any_exhausted()).then(|| report.all_free())
        }
        Err(_) => None,
    };
    let n = h.n();
    let e0 = h.edge_count();
    let hypothesis = HypothesisFlags {
        property,
        density: match (&constants, density(e0, n)) {
            (Some(c), Some(d)) => Some(d >= c.b),
            _ => None,
        },
        beyond_k2: k != 2,
    };

    let mut current = h.clone();
    let mut vertices: Vec<Vertex> = (0..n as Vertex).collect();
    let mut edges: Vec<EdgeId> = (0..e0).collect();
    let mut steps = Vec::new();
    let mut removed_total: usize = 0;
    let mut status = IncrementStatus::Completed;

    loop {
        let j = steps.len();
        let configuration = match find_violation(&current, bad, budget)? {
            SearchOutcome::Free { .. } => break,
            SearchOutcome::BudgetExhausted { nodes } => {
                status = IncrementStatus::BudgetExhausted { step: j, nodes };
                break;
            }
            SearchOutcome::Violation { configuration, .. } => configuration,
        };
        if configuration.union.len() != x {
            status = IncrementStatus::Aborted {
                step: j,
                reason: format!(
                    "bad configuration spans {} vertices, expected exactly {x}",
                    configuration.union.len()
                ),
            };
            break;
        }
        let xs = &configuration.union;
        let mut i_of_x = Vec::new();
        let mut stray = Vec::new();
        for (id, edge) in current.edges().iter().enumerate() {
            if configuration.edge_ids.binary_search(&id).is_ok() {
                continue;
            }
            match edge.iter().filter(|v| xs.binary_search(v).is_ok()).count() {
                0 => {}
                m if m == k - 1 => i_of_x.push(id),
                _ => stray.push(edges[id]),
            }
        }
        if !stray.is_empty() {
            status = IncrementStatus::Aborted {
                step: j,
                reason: format!("edges {stray:?} meet X_{j} outside the expected pattern"),
            };
            break;
        }

        let e_before = current.edge_count();
        let v_before = current.n();
        let (next, relabel) = current.delete_vertices(xs)?;
        let e_after = e_before - i_of_x.len() - (t - 1);
        debug_assert_eq!(next.edge_count(), e_after);
        let v_after = next.n();
        removed_total += x;

        let original = |ids: &[EdgeId]| ids.iter().map(|&id| edges[id]).collect::<Vec<_>>();
        let step_bound = (r > 2).then(|| e_after * (r - 2) + v_before > e_before * (r - 2));
        let visited: usize = steps.iter().map(|s: &IncrementStep| s.v_before).sum::<usize>() + v_before;
        let cumulative_bound = (r > 2).then(|| e_after * (r - 2) + visited > e0 * (r - 2));
        steps.push(IncrementStep {
            j,
            removed_vertices: xs.iter().map(|&v| vertices[v as usize]).collect(),
            configuration: original(&configuration.edge_ids),
            i_of_x: original(&i_of_x),
            e_before,
            v_before,
            e_after,
            v_after,
            density_before: density(e_before, v_before),
            y: removed_total,
            step_bound,
            cumulative_bound,
        });

        let survivors: Vec<EdgeId> = current
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, edge)| edge.iter().all(|v| xs.binary_search(v).is_err()))
            .map(|(id, _)| edges[id])
            .collect();
        edges = survivors;
        vertices = relabel.new_to_old.iter().map(|&v| vertices[v as usize]).collect();
        current = next;
    }

    let free = match find_violation(&current, bad, budget)? {
        SearchOutcome::Free { .. } => Some(true),
        SearchOutcome::Violation { .. } => Some(false),
        SearchOutcome::BudgetExhausted { .. } => None,
    };
    let v_final = current.n();
    let conclusions = Conclusions {
        free,
        vertex_fraction: constants.as_ref().map(|c| {
            Rational::from_integer((v_final * v_final) as i128) >= c.alpha_squared * Rational::from_integer((n * n) as i128)
        }),
        density_nondecreasing: match (density(current.edge_count(), v_final), density(e0, n)) {
            (Some(after), Some(before)) => Some(after >= before),
            _ => None,
        },
    };

    Ok(IncrementOutcome {
        trace: IncrementTrace {
            r,
            k,
            t,
            e,
            x,
            constants,
            hypothesis,
            e0,
            v0: n,
            steps,
        },
        result: current,
        vertices,
        edges,
        status,
        conclusions,
    })
}

/// Codegree bound check on a graph free of `G_r(er-(e-1)k, e)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodegreeUpperReport {
    pub precondition: SearchOutcome,
    pub max_codegree: usize,
    pub argmax: Option<SubsetKey>,
    /// `n / (r - k)`.
    pub bound: Rational,
    /// `max codegree < n/(r-k)`; `None` unless the precondition held.
    pub below_bound: Option<bool>,
    pub links_checked: usize,
    /// Links that are not `G_{r-k+1}(e(r-k+1)-(e-1), e)`-free.
    pub link_failures: Vec<(SubsetKey, Configuration)>,
    pub links_undecided: usize,
}

impl CodegreeUpperReport {
    pub fn passed(&self) -> bool {
        self.below_bound == Some(true) && self.link_failures.is_empty() && self.links_undecided == 0
    }
}

pub fn codegree_upper_check(h: &Hypergraph, k: usize, e: usize, budget: u64) -> Result<CodegreeUpperReport> {
    let r = h.r();
    if k < 1 || k >= r || e < 2 {
        return Err(Error::InvalidParameters(format!(
            "codegree bound needs 1 <= k < r and e >= 2, got k = {k}, r = {r}, e = {e}"
        )));
    }
    let precondition = find_violation(h, FreenessConstraint::sparse(r, k, e)?, budget)?;
    let bound = Rational::new(h.n() as i128, (r - k) as i128);

    let mut subsets: Vec<Vec<Vertex>> = Vec::new();
    for edge in h.edges() {
        for_each_subset(edge, k - 1, |s| subsets.push(s.to_vec()));
    }
    subsets.sort_unstable();
    subsets.dedup();

    let mut report = CodegreeUpperReport {
        precondition,
        max_codegree: 0,
        argmax: None,
        bound,
        below_bound: None,
        links_checked: 0,
        link_failures: Vec::new(),
        links_undecided: 0,
    };
    if !report.precondition.is_free() {
        return Ok(report);
    }

    let link_constraint = FreenessConstraint::sparse(r - k + 1, 1, e)?;
    for s in subsets {
        let key = SubsetKey::from_sorted(s)?;
        let degree = h.codegree(&key)?;
        if degree > report.max_codegree {
            report.max_codegree = degree;
            report.argmax = Some(key.clone());
        }
        let (link, _) = h.link(&key)?;
        report.links_checked += 1;
        match find_violation(&link, link_constraint, budget)? {
            SearchOutcome::Free { .. } => {}
            SearchOutcome::Violation { configuration, .. } => report.link_failures.push((key, configuration)),
            SearchOutcome::BudgetExhausted { .. } => report.links_undecided += 1,
        }
    }
    report.below_bound = Some(Rational::from_integer(report.max_codegree as i128) < report.bound);
    Ok(report)
}
