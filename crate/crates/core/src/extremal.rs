//! Exact Turán numbers at small `n`, greedy packings, witness-certified
//! lower bounds and the closed-form exponents and limits.

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cleanup::{peel, peel_bound};
use crate::combinatorics::{binomial, for_each_subset};
use crate::error::{Error, Result};
use crate::freeness::{
    find_violation, find_violation_through, is_family_free, CodegreeRule, ConstraintFamily, ConstraintVerdict,
    FreenessConstraint, SearchOutcome,
};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::{Rational, DEFAULT_BUDGET};

/// Largest vertex count the exact solver accepts (edges are `u64` masks).
pub const SOLVER_MAX_N: usize = 64;
const SOLVER_MAX_CANDIDATES: u128 = 1 << 20;
/// Branching depth used to split the exact search into independent subproblems.
const SPLIT_DEPTH: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    pub budget: u64,
    pub threads: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            budget: DEFAULT_BUDGET,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    ProvenOptimal,
    BudgetExhausted,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::ProvenOptimal => "proven-optimal",
            SolveStatus::BudgetExhausted => "budget-exhausted",
        })
    }
}

/// Which bounds the search leaned on, with how often they fired.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificates {
    /// The first candidate edge was fixed into every nonempty solution.
    pub symmetry_first_edge: bool,
    /// Size of the lexicographic greedy solution used as the starting incumbent.
    pub greedy_incumbent: usize,
    /// Nodes cut by `|chosen| + |still-compatible candidates| <= incumbent`.
    pub capacity_prunes: u64,
    /// Nodes cut because some subset could no longer reach codegree `e`.
    pub codegree_completion_prunes: u64,
    pub subproblems: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub optimum: usize,
    pub witness: Hypergraph,
    pub nodes: u64,
    pub status: SolveStatus,
    pub certificates: BoundCertificates,
}

struct Instance {
    constraints: Vec<FreenessConstraint>,
    candidates: Vec<u64>,
    /// Codegree rule threshold and, per candidate, the indices of its `(k-1)`-subsets.
    rule: Option<(usize, Vec<Vec<usize>>, usize)>,
}

impl Instance {
    /// Whether `cand` can join `chosen` without completing a bad configuration.
    fn fits(&self, chosen: &[u64], cand: u64) -> bool {
        self.constraints.iter().all(|c| {
            c.e == 0 || chosen.len() + 1 < c.e || !completes(chosen, 0, c.e - 1, cand, c.v as u32)
        })
    }
}

// Is there a set of `left` chosen edges (from `start` on) whose union with `acc` has at most `v` vertices?
fn completes(chosen: &[u64], start: usize, left: usize, acc: u64, v: u32) -> bool {
    if acc.count_ones() > v {
        return false;
    }
    if left == 0 {
        return true;
    }
    (start..=chosen.len().saturating_sub(left)).any(|i| completes(chosen, i + 1, left - 1, acc | chosen[i], v))
}

#[derive(Clone)]
struct Node {
    chosen: Vec<usize>,
    masks: Vec<u64>,
    pending: Vec<usize>,
    codegrees: Vec<u32>,
}

struct Worker<'a> {
    inst: &'a Instance,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    incumbent: usize,
    best: Option<Vec<usize>>,
    capacity_prunes: u64,
    completion_prunes: u64,
}

impl<'a> Worker<'a> {
    fn new(inst: &'a Instance, budget: u64, incumbent: usize) -> Self {
        Worker {
            inst,
            budget,
            nodes: 0,
            exhausted: false,
            incumbent,
            best: None,
            capacity_prunes: 0,
            completion_prunes: 0,
        }
    }

    fn include(&self, node: &Node, cand: usize) -> Node {
        let mut next = node.clone();
        next.chosen.push(cand);
        next.masks.push(self.inst.candidates[cand]);
        if let Some((_, subsets, _)) = &self.inst.rule {
            for &s in &subsets[cand] {
                next.codegrees[s] += 1;
            }
        }
        next.pending = node.pending[1..]
            .iter()
            .copied()
            .filter(|&d| self.inst.fits(&next.masks, self.inst.candidates[d]))
            .collect();
        next
    }

    fn exclude(node: &Node) -> Node {
        let mut next = node.clone();
        next.pending.remove(0);
        next
    }

    fn rule_satisfied(&self, node: &Node) -> bool {
        match &self.inst.rule {
            None => true,
            Some((e, _, _)) => node.codegrees.iter().all(|&c| c == 0 || c as usize >= *e),
        }
    }

    /// Can every positive codegree below `e` still be lifted by pending candidates?
    fn completable(&self, node: &Node) -> bool {
        let Some((e, subsets, count)) = &self.inst.rule else {
            return true;
        };
        let mut reach = node.codegrees.clone();
        reach.resize(*count, 0);
        for &d in &node.pending {
            for &s in &subsets[d] {
                reach[s] += 1;
            }
        }
        node.codegrees
            .iter()
            .zip(&reach)
            .all(|(&c, &total)| c == 0 || total as usize >= *e)
    }

    /// Returns `false` once the budget runs out.
    fn tick(&mut self) -> bool {
        if self.nodes >= self.budget {
            self.exhausted = true;
            return false;
        }
        self.nodes += 1;
        true
    }

    fn solve(&mut self, node: Node) {
        if !self.tick() {
            return;
        }
        if node.chosen.len() + node.pending.len() <= self.incumbent {
            self.capacity_prunes += 1;
            return;
        }
        if !self.completable(&node) {
            self.completion_prunes += 1;
            return;
        }
        if node.pending.is_empty() {
            if self.rule_satisfied(&node) {
                self.incumbent = node.chosen.len();
                self.best = Some(node.chosen);
            }
            return;
        }
        let first = node.pending[0];
        let with = self.include(&node, first);
        self.solve(with);
        if self.exhausted {
            return;
        }
        self.solve(Self::exclude(&node));
    }

    /// Expands the top `depth` branching levels into independent subproblems.
    fn split(&mut self, node: Node, depth: usize, out: &mut Vec<Node>) {
        if depth == 0 || node.pending.is_empty() {
            out.push(node);
            return;
        }
        if !self.tick() {
            return;
        }
        if node.chosen.len() + node.pending.len() <= self.incumbent {
            self.capacity_prunes += 1;
            return;
        }
        if !self.completable(&node) {
            self.completion_prunes += 1;
            return;
        }
        let first = node.pending[0];
        let with = self.include(&node, first);
        self.split(with, depth - 1, out);
        self.split(Self::exclude(&node), depth - 1, out);
    }
}

fn candidate_edges(n: usize, r: usize) -> Result<Vec<Vec<Vertex>>> {
    if n > SOLVER_MAX_N {
        return Err(Error::InvalidParameters(format!(
            "exact solver supports n <= {SOLVER_MAX_N}, got {n}"
        )));
    }
    if binomial(n as u64, r as u64)? > SOLVER_MAX_CANDIDATES {
        return Err(Error::InvalidParameters(format!("C({n},{r}) candidate edges is too many")));
    }
    let vertices: Vec<Vertex> = (0..n as Vertex).collect();
    let mut out = Vec::new();
    for_each_subset(&vertices, r, |s| out.push(s.to_vec()));
    Ok(out)
}

fn to_mask(edge: &[Vertex]) -> u64 {
    edge.iter().fold(0, |m, &v| m | (1u64 << v))
}

/// Maximum number of edges of an `r`-graph on `n` vertices satisfying every
/// constraint in `family`, by branch and bound over the `C(n, r)` candidate
/// edges in lexicographic order.
///
/// The search is split into independent subproblems that never share an
/// incumbent, so the optimum, node count and witness do not depend on
/// `options.threads`.
pub fn exact_max(n: usize, r: usize, family: &ConstraintFamily, options: SolverOptions) -> Result<SearchResult> {
    if r == 0 {
        return Err(Error::InvalidUniformity(r));
    }
    family.validate_for(r)?;
    if options.budget == 0 {
        return Err(Error::InvalidParameters("solver budget must be positive".into()));
    }
    let edges = candidate_edges(n, r)?;
    let candidates: Vec<u64> = edges.iter().map(|e| to_mask(e)).collect();

    let rule = family.codegree_rule.map(|CodegreeRule { k, e }| {
        let mut ids: HashMap<Vec<Vertex>, usize> = HashMap::new();
        let per_candidate = edges
            .iter()
            .map(|edge| {
                let mut mine = Vec::new();
                for_each_subset(edge, k - 1, |s| {
                    let next = ids.len();
                    mine.push(*ids.entry(s.to_vec()).or_insert(next));
                });
                mine
            })
            .collect::<Vec<_>>();
        (e, per_candidate, ids.len())
    });
    let subset_count = rule.as_ref().map_or(0, |r| r.2);
    let inst = Instance {
        constraints: family.constraints.clone(),
        candidates,
        rule,
    };

    let empty = Hypergraph::empty(n, r)?;
    let mut certificates = BoundCertificates::default();
    if inst.candidates.is_empty() {
        return Ok(SearchResult {
            optimum: 0,
            witness: empty,
            nodes: 0,
            status: SolveStatus::ProvenOptimal,
            certificates,
        });
    }

    // Lexicographic greedy, peeled when a codegree rule is present.
    let mut greedy: Vec<usize> = Vec::new();
    let mut greedy_masks: Vec<u64> = Vec::new();
    for (i, &m) in inst.candidates.iter().enumerate() {
        if inst.fits(&greedy_masks, m) {
            greedy.push(i);
            greedy_masks.push(m);
        }
    }
    let mut greedy_graph = Hypergraph::build(n, r, greedy.iter().map(|&i| edges[i].clone()))?;
    if let Some(CodegreeRule { k, e }) = family.codegree_rule {
        if e >= 2 {
            greedy_graph = peel(&greedy_graph, k, e)?.0;
        }
    }
    certificates.greedy_incumbent = greedy_graph.edge_count();

    // Vertex permutations act transitively on r-sets, so some optimal
    // nonempty solution contains the first candidate.
    certificates.symmetry_first_edge = true;
    let root = Node {
        chosen: vec![0],
        masks: vec![inst.candidates[0]],
        pending: (1..inst.candidates.len())
            .filter(|&d| inst.fits(&[inst.candidates[0]], inst.candidates[d]))
            .collect(),
        codegrees: {
            let mut c = vec![0u32; subset_count];
            if let Some((_, subsets, _)) = &inst.rule {
                for &s in &subsets[0] {
                    c[s] += 1;
                }
            }
            c
        },
    };

    let incumbent = greedy_graph.edge_count();
    let mut splitter = Worker::new(&inst, options.budget, incumbent);
    let mut tasks = Vec::new();
    splitter.split(root, SPLIT_DEPTH, &mut tasks);
    certificates.subproblems = tasks.len();
    certificates.capacity_prunes = splitter.capacity_prunes;
    certificates.codegree_completion_prunes = splitter.completion_prunes;
    let mut nodes = splitter.nodes;
    let mut exhausted = splitter.exhausted;

    let per_task = if tasks.is_empty() {
        0
    } else {
        (options.budget.saturating_sub(nodes) / tasks.len() as u64).max(1)
    };
    let run = |task: &Node| {
        let mut w = Worker::new(&inst, per_task, incumbent);
        w.solve(task.clone());
        (w.best, w.nodes, w.exhausted, w.capacity_prunes, w.completion_prunes)
    };
    let results: Vec<_> = if options.threads > 1 && !exhausted {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.threads)
            .build()
            .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))?;
        pool.install(|| tasks.par_iter().map(run).collect())
    } else if exhausted {
        Vec::new()
    } else {
        tasks.iter().map(run).collect()
    };

    let mut best: Option<Vec<usize>> = None;
    for (found, task_nodes, task_exhausted, cap, comp) in results {
        nodes += task_nodes;
        exhausted |= task_exhausted;
        certificates.capacity_prunes += cap;
        certificates.codegree_completion_prunes += comp;
        if let Some(found) = found {
            if best.as_ref().is_none_or(|b| found.len() > b.len()) {
                best = Some(found);
            }
        }
    }

    let witness = match best {
        Some(ids) => Hypergraph::build(n, r, ids.iter().map(|&i| edges[i].clone()))?,
        None => greedy_graph,
    };
    Ok(SearchResult {
        optimum: witness.edge_count(),
        witness,
        nodes,
        status: if exhausted {
            SolveStatus::BudgetExhausted
        } else {
            SolveStatus::ProvenOptimal
        },
        certificates,
    })
}

/// Exact values along `f >= f^(e-1) >= ... >= f^(2)` at one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub n: usize,
    pub r: usize,
    pub e: usize,
    pub k: usize,
    /// `f_r(n, er-(e-1)k, e)`.
    pub unconstrained: usize,
    /// `(t, f_r^(t))` for `t = e-1` down to `2`.
    pub constrained: Vec<(usize, usize)>,
    /// `(e-1) C(n, k-1)`.
    pub peel_allowance: u128,
    pub monotone: bool,
    /// `f - (e-1) C(n, k-1) <= f^(e-1)`.
    pub peel_inequality: bool,
    pub status: SolveStatus,
    pub nodes: u64,
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.monotone && self.peel_inequality
    }
}

pub fn chain_check(n: usize, r: usize, e: usize, k: usize, options: SolverOptions) -> Result<ChainReport> {
    if e < 3 || k < 1 || k >= r {
        return Err(Error::InvalidParameters(format!(
            "chain needs e >= 3 and 1 <= k < r, got e = {e}, k = {k}, r = {r}"
        )));
    }
    let sparse = FreenessConstraint::sparse(r, k, e)?;
    let mut status = SolveStatus::ProvenOptimal;
    let mut nodes = 0;
    let mut solve = |family: &ConstraintFamily| -> Result<usize> {
        let res = exact_max(n, r, family, options)?;
        nodes += res.nodes;
        if res.status == SolveStatus::BudgetExhausted {
            status = SolveStatus::BudgetExhausted;
        }
        Ok(res.optimum)
    };
    let unconstrained = solve(&ConstraintFamily::single(sparse))?;
    let mut constrained = Vec::new();
    for t in (2..e).rev() {
        constrained.push((t, solve(&ConstraintFamily::constrained(r, k, e, t)?)?));
    }
    let peel_allowance = peel_bound(n, k, e)?;
    let mut chain = vec![unconstrained];
    chain.extend(constrained.iter().map(|&(_, f)| f));
    let monotone = chain.windows(2).all(|w| w[0] >= w[1]);
    let top = constrained.first().map_or(unconstrained, |&(_, f)| f);
    let peel_inequality = (unconstrained as u128).saturating_sub(peel_allowance) <= top as u128;
    Ok(ChainReport {
        n,
        r,
        e,
        k,
        unconstrained,
        constrained,
        peel_allowance,
        monotone,
        peel_inequality,
        status,
        nodes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PackOrder {
    Random,
    Lex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub n: usize,
    pub r: usize,
    pub edges: usize,
    /// `n^2 / (r^2 - r)`.
    pub target: Rational,
    pub ratio: Rational,
    pub ratio_f64: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Packing {
    pub hypergraph: Hypergraph,
    pub report: DensityReport,
    /// Full freeness search for each `t = 2..=e`.
    pub verification: Vec<ConstraintVerdict>,
    /// Candidates rejected only because a conflict search ran out of budget.
    pub undecided: usize,
}

impl Packing {
    pub fn verified(&self) -> bool {
        self.verification.iter().all(|v| v.outcome.is_free())
    }
}

/// The packing constraints `G_r(tr - 2(t-1), t)` for `2 <= t <= e`.
pub fn packing_constraints(r: usize, e: usize) -> Result<Vec<FreenessConstraint>> {
    (2..=e).map(|t| FreenessConstraint::sparse(r, 2, t)).collect()
}

/// Greedy edge insertion in `order`, keeping every packing constraint.
pub fn greedy_pack(n: usize, r: usize, e: usize, seed: u64, order: PackOrder, budget: u64) -> Result<Packing> {
    if r < 2 || n < r || e < 2 {
        return Err(Error::InvalidParameters(format!(
            "packing needs 2 <= r <= n and e >= 2, got n = {n}, r = {r}, e = {e}"
        )));
    }
    let constraints = packing_constraints(r, e)?;
    let vertices: Vec<Vertex> = (0..n as Vertex).collect();
    let mut candidates = Vec::new();
    for_each_subset(&vertices, r, |s| candidates.push(s.to_vec()));
    if order == PackOrder::Random {
        candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }

    let mut current = Hypergraph::empty(n, r)?;
    let mut undecided = 0;
    let mut pending: Vec<Vec<Vertex>> = Vec::new();
    for cand in candidates {
        // `pending` holds accepted edges not yet folded into `current`.
        let mut conflict = pending.iter().any(|p| shared(p, &cand) >= 2);
        if !conflict && !pending.is_empty() {
            current = Hypergraph::build(n, r, current.edges().iter().chain(pending.iter()))?;
            pending.clear();
        }
        if !conflict {
            for &c in &constraints {
                match find_violation_through(&current, c, &cand, budget)? {
                    SearchOutcome::Free { .. } => {}
                    SearchOutcome::Violation { .. } => {
                        conflict = true;
                        break;
                    }
                    SearchOutcome::BudgetExhausted { .. } => {
                        undecided += 1;
                        conflict = true;
                        break;
                    }
                }
            }
        }
        if !conflict {
            pending.push(cand);
        }
    }
    let hypergraph = Hypergraph::build(n, r, current.edges().iter().chain(pending.iter()))?;

    let verification = constraints
        .iter()
        .map(|&c| {
            find_violation(&hypergraph, c, budget).map(|outcome| ConstraintVerdict { constraint: c, outcome })
        })
        .collect::<Result<Vec<_>>>()?;
    let target = Rational::new((n * n) as i128, (r * r - r) as i128);
    let ratio = Rational::from_integer(hypergraph.edge_count() as i128) / target;
    Ok(Packing {
        report: DensityReport {
            n,
            r,
            edges: hypergraph.edge_count(),
            target,
            ratio,
            ratio_f64: to_f64(ratio),
        },
        hypergraph,
        verification,
        undecided,
    })
}

fn shared(a: &[Vertex], b: &[Vertex]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

/// First candidate edge that could still be added to a packing without
/// breaking any constraint `t = 2..=e`, or `None` if `h` is maximal.
///
/// Assumes `h` itself satisfies every packing constraint.
pub fn addable_edge(h: &Hypergraph, e: usize, budget: u64) -> Result<Option<Vec<Vertex>>> {
    let constraints = packing_constraints(h.r(), e)?;
    let vertices: Vec<Vertex> = (0..h.n() as Vertex).collect();
    let mut all = Vec::new();
    for_each_subset(&vertices, h.r(), |s| all.push(s.to_vec()));
    for cand in all {
        if h.edge_id(&cand).is_some() {
            continue;
        }
        let mut blocked = false;
        for &c in &constraints {
            match find_violation_through(h, c, &cand, budget)? {
                SearchOutcome::Free { .. } => {}
                SearchOutcome::Violation { .. } => {
                    blocked = true;
                    break;
                }
                SearchOutcome::BudgetExhausted { nodes } => return Err(Error::BudgetExhausted { nodes }),
            }
        }
        if !blocked {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

/// Certified `liminf f_r(n, er-(e-1)k, e) / n^k >= |F| / m^k` from a witness
/// `F` on `m` vertices that is sparse at size `e` and strict at sizes `2..e`.
pub fn lower_bound_from_witness(f: &Hypergraph, r: usize, k: usize, e: usize, budget: u64) -> Result<Rational> {
    if f.r() != r {
        return Err(Error::InvalidParameters(format!("witness has uniformity {}, expected {r}", f.r())));
    }
    if k < 1 || k >= r || e < 2 {
        return Err(Error::InvalidParameters(format!("need 1 <= k < r and e >= 2, got k = {k}, e = {e}")));
    }
    let report = is_family_free(f, &ConstraintFamily::witness(r, k, e)?, budget)?;
    for verdict in &report.verdicts {
        match &verdict.outcome {
            SearchOutcome::Free { .. } => {}
            SearchOutcome::Violation { configuration, .. } => {
                return Err(Error::ConstraintViolated {
                    constraint: verdict.constraint,
                    configuration: configuration.clone(),
                })
            }
            SearchOutcome::BudgetExhausted { nodes } => return Err(Error::BudgetExhausted { nodes: *nodes }),
        }
    }
    let m = f.n() as i128;
    let denominator = m.checked_pow(k as u32).ok_or(Error::Overflow("m^k"))?;
    if denominator == 0 {
        return Err(Error::InvalidParameters("witness has no vertices".into()));
    }
    Ok(Rational::new(f.edge_count() as i128, denominator))
}

/// Growth exponents of `f_r(n, v, e)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BesBounds {
    pub r: usize,
    pub v: usize,
    pub e: usize,
    /// `(er - v) / (e - 1)`.
    pub lower_exponent: Rational,
    /// Its ceiling.
    pub upper_exponent: i128,
    pub n: Option<u64>,
    pub lower_value: Option<f64>,
    pub upper_value: Option<f64>,
}

pub fn bes_bounds(n: Option<u64>, r: usize, v: usize, e: usize) -> Result<BesBounds> {
    if e < 2 {
        return Err(Error::InvalidParameters(format!("exponent needs e >= 2, got {e}")));
    }
    if v < r {
        return Err(Error::InvalidParameters(format!("need v >= r, got v = {v}, r = {r}")));
    }
    let lower = Rational::new((e * r) as i128 - v as i128, e as i128 - 1);
    let upper = lower.ceil().to_integer();
    let pow = |x: f64| n.map(|n| (n as f64).powf(x));
    Ok(BesBounds {
        r,
        v,
        e,
        lower_exponent: lower,
        upper_exponent: upper,
        n,
        lower_value: pow(to_f64(lower)),
        upper_value: pow(upper as f64),
    })
}

/// Where a known limit value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitSource {
    /// `(e-1) / ((e-1)(r-1) + 1)` for `k = 1`.
    LinearRegime,
    /// The stated value `1/5` of `lim f_3(n,5,3)/n^2`.
    TriplesFiveThree,
    /// The stated value `7/36` of `lim f_3(n,6,4)/n^2`.
    TriplesSixFour,
    /// `1/(r^2 - r - 1)` for `k = 2, e = 3`.
    QuadraticThree,
    /// `2 / (k! (2 C(r,k) - 1))` for `e = 3`.
    GeneralThree,
    /// `C(r,k)^{-1} / k!` for `e = 4`.
    GeneralFour,
}

impl LimitSource {
    pub fn describe(self) -> &'static str {
        match self {
            LimitSource::LinearRegime => "k=1 closed form (e-1)/((e-1)(r-1)+1)",
            LimitSource::TriplesFiveThree => "stated value of lim f_3(n,5,3)/n^2",
            LimitSource::TriplesSixFour => "stated value of lim f_3(n,6,4)/n^2",
            LimitSource::QuadraticThree => "closed form 1/(r^2-r-1) for k=2, e=3",
            LimitSource::GeneralThree => "closed form 2/(k!(2C(r,k)-1)) for e=3",
            LimitSource::GeneralFour => "closed form 1/(k! C(r,k)) for e=4",
        }
    }
}

impl fmt::Display for LimitSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LimitSource::LinearRegime => "linear-regime",
            LimitSource::TriplesFiveThree => "triples-5-3",
            LimitSource::TriplesSixFour => "triples-6-4",
            LimitSource::QuadraticThree => "quadratic-e3",
            LimitSource::GeneralThree => "general-e3",
            LimitSource::GeneralFour => "general-e4",
        })
    }
}

/// `lim f_r(n, er-(e-1)k, e) / n^k` where a value is known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitRecord {
    pub r: usize,
    pub k: usize,
    pub e: usize,
    pub value: Option<Rational>,
    pub source: Option<LimitSource>,
    pub flags: Vec<String>,
}

fn factorial(k: usize) -> i128 {
    (1..=k as i128).product()
}

/// `2 / (k! (2 C(r,k) - 1))`.
pub fn general_three_limit(r: usize, k: usize) -> Result<Rational> {
    let c = binomial(r as u64, k as u64)? as i128;
    Ok(Rational::new(2, factorial(k) * (2 * c - 1)))
}

/// `1 / (k! C(r,k))`.
pub fn general_four_limit(r: usize, k: usize) -> Result<Rational> {
    let c = binomial(r as u64, k as u64)? as i128;
    Ok(Rational::new(1, factorial(k) * c))
}

/// `(e-1) / ((e-1)(r-1) + 1)`.
pub fn linear_limit(r: usize, e: usize) -> Rational {
    let a = e as i128 - 1;
    Rational::new(a, a * (r as i128 - 1) + 1)
}

pub fn known_limit(r: usize, k: usize, e: usize) -> Result<LimitRecord> {
    if k < 1 || k >= r || e < 2 {
        return Err(Error::InvalidParameters(format!(
            "limits are indexed by r > k >= 1 and e >= 2, got r = {r}, k = {k}, e = {e}"
        )));
    }
    if r > 30 {
        return Err(Error::InvalidParameters(format!("r = {r} too large for exact evaluation")));
    }
    let mut flags = Vec::new();
    let (value, source) = if k == 1 {
        flags.push(
            "displayed k=1 limit carries an extra factor n on the right-hand side; returned without it".to_string(),
        );
        let value = linear_limit(r, e);
        if e == 4 && general_four_limit(r, 1)? != value {
            flags.push(format!(
                "e=4 closed form evaluates to {} at k=1",
                general_four_limit(r, 1)?
            ));
        }
        (Some(value), Some(LimitSource::LinearRegime))
    } else if e == 3 {
        let general = general_three_limit(r, k)?;
        if (r, k) == (3, 2) {
            (Some(Rational::new(1, 5)), Some(LimitSource::TriplesFiveThree))
        } else if k == 2 {
            let value = Rational::new(1, (r * r - r - 1) as i128);
            if value != general {
                flags.push(format!("e=3 closed form evaluates to {general}"));
            }
            (Some(value), Some(LimitSource::QuadraticThree))
        } else {
            (Some(general), Some(LimitSource::GeneralThree))
        }
    } else if e == 4 {
        let general = general_four_limit(r, k)?;
        if (r, k) == (3, 2) {
            flags.push(format!(
                "consistency: e=4 closed form gives {general} at (r,k)=(3,2), stated value is 7/36"
            ));
            (Some(Rational::new(7, 36)), Some(LimitSource::TriplesSixFour))
        } else {
            (Some(general), Some(LimitSource::GeneralFour))
        }
    } else {
        flags.push("no value known for these parameters".to_string());
        (None, None)
    };
    Ok(LimitRecord {
        r,
        k,
        e,
        value,
        source,
        flags,
    })
}

/// Checks `|H| < n/(r-1)` for a graph free of `G_r(er-(e-1), e)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UppSizeReport {
    pub precondition: SearchOutcome,
    pub edges: usize,
    /// `n / (r - 1)`.
    pub bound: Rational,
    /// `None` when the precondition failed or was not decided.
    pub holds: Option<bool>,
}

pub fn upp_size_check(h: &Hypergraph, e: usize, budget: u64) -> Result<UppSizeReport> {
    if h.r() < 2 {
        return Err(Error::InvalidParameters("size bound needs r >= 2".into()));
    }
    let constraint = FreenessConstraint::sparse(h.r(), 1, e)?;
    let precondition = find_violation(h, constraint, budget)?;
    let bound = Rational::new(h.n() as i128, h.r() as i128 - 1);
    let holds = precondition
        .is_free()
        .then(|| Rational::from_integer(h.edge_count() as i128) < bound);
    Ok(UppSizeReport {
        precondition,
        edges: h.edge_count(),
        bound,
        holds,
    })
}

pub(crate) fn to_f64(x: Rational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(v: usize, e: usize) -> ConstraintFamily {
        ConstraintFamily::single(FreenessConstraint::new(v, e).unwrap())
    }

    #[test]
    fn small_exact_values() {
        let o = SolverOptions::default();
        let res = exact_max(4, 3, &single(5, 3), o).unwrap();
        assert_eq!(res.optimum, 2);
        assert_eq!(res.status, SolveStatus::ProvenOptimal);
        assert_eq!(exact_max(5, 3, &single(5, 3), o).unwrap().optimum, 2);
        assert_eq!(exact_max(3, 3, &single(5, 3), o).unwrap().optimum, 1);
        assert_eq!(exact_max(2, 3, &single(5, 3), o).unwrap().optimum, 0);
        assert_eq!(exact_max(4, 4, &single(9, 4), o).unwrap().optimum, 1);
    }

    #[test]
    fn small_budget_reports_exhaustion() {
        let o = SolverOptions { budget: 3, threads: 1 };
        let res = exact_max(7, 3, &single(5, 3), o).unwrap();
        assert_eq!(res.status, SolveStatus::BudgetExhausted);
        assert!(res.optimum >= 1, "greedy incumbent survives");
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let fam = single(5, 3);
        let one = exact_max(7, 3, &fam, SolverOptions::default()).unwrap();
        let four = exact_max(7, 3, &fam, SolverOptions { threads: 4, ..Default::default() }).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn upp_examples() {
        let h = Hypergraph::build(6, 3, [[0, 1, 2], [3, 4, 5]]).unwrap();
        let rep = upp_size_check(&h, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.holds, Some(true));
        assert_eq!(rep.bound, Rational::from_integer(3));
        let empty = Hypergraph::empty(6, 3).unwrap();
        assert_eq!(upp_size_check(&empty, 3, DEFAULT_BUDGET).unwrap().holds, Some(true));
        let k4 = Hypergraph::complete(4, 3).unwrap();
        let rep = upp_size_check(&k4, 3, DEFAULT_BUDGET).unwrap();
        assert!(rep.precondition.violation().is_some());
        assert_eq!(rep.holds, None);
    }

    #[test]
    fn bes_exponents() {
        let b = bes_bounds(None, 3, 5, 3).unwrap();
        assert_eq!((b.lower_exponent, b.upper_exponent), (Rational::from_integer(2), 2));
        let b = bes_bounds(Some(10), 3, 6, 4).unwrap();
        assert_eq!((b.lower_exponent, b.upper_exponent), (Rational::from_integer(2), 2));
        assert_eq!(b.upper_value, Some(100.0));
        let b = bes_bounds(None, 4, 10, 3).unwrap();
        assert_eq!((b.lower_exponent, b.upper_exponent), (Rational::from_integer(1), 1));
        let b = bes_bounds(None, 3, 6, 3).unwrap();
        assert_eq!((b.lower_exponent, b.upper_exponent), (Rational::new(3, 2), 2));
        assert!(bes_bounds(None, 3, 5, 1).is_err());
    }

    #[test]
    fn limit_table() {
        assert_eq!(known_limit(3, 2, 3).unwrap().value, Some(Rational::new(1, 5)));
        assert_eq!(known_limit(4, 2, 3).unwrap().value, Some(Rational::new(1, 11)));
        let pasch = known_limit(3, 2, 4).unwrap();
        assert_eq!(pasch.value, Some(Rational::new(7, 36)));
        assert!(pasch.flags.iter().any(|f| f.contains("1/6")));
        let lin = known_limit(3, 1, 3).unwrap();
        assert_eq!(lin.value, Some(Rational::new(2, 5)));
        assert!(!lin.flags.is_empty());
        assert_eq!(known_limit(5, 3, 3).unwrap().value, Some(Rational::new(2, 6 * 19)));
        assert_eq!(known_limit(5, 3, 4).unwrap().value, Some(Rational::new(1, 60)));
        assert_eq!(known_limit(3, 2, 5).unwrap().value, None);
        assert!(known_limit(3, 3, 3).is_err());
        assert!(known_limit(3, 0, 3).is_err());
        assert!(known_limit(3, 2, 1).is_err());
    }
}
