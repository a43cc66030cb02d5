//! `G_r(v,e)`-freeness: no `e` distinct edges span at most `v` vertices.
//!
//! The search is a depth-first walk over edge ids in increasing order with
//! the running union kept as vertex multiplicities. Since the union only
//! grows, a partial configuration whose union exceeds `v` is cut, and an
//! extension must meet the current union in at least `r - (v - |U|)`
//! vertices. When that requirement drops to zero any later edge qualifies,
//! which is what keeps disconnected bad configurations reachable.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph, SubsetKey, Vertex};

/// "Every `e` distinct edges span at least `v + 1` vertices."
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreenessConstraint {
    pub v: usize,
    pub e: usize,
}

impl FreenessConstraint {
    pub fn new(v: usize, e: usize) -> Result<Self> {
        if e < 2 {
            return Err(Error::InvalidParameters(format!(
                "configuration size e = {e} must be at least 2"
            )));
        }
        Ok(FreenessConstraint { v, e })
    }

    /// `(e r - (e-1) k, e)`, the sparse constraint whose extremal number grows like `n^k`.
    pub fn sparse(r: usize, k: usize, e: usize) -> Result<Self> {
        let v = (e * r) as i64 - ((e as i64 - 1) * k as i64);
        Self::new(non_negative(v, "sparse threshold")?, e)
    }

    /// `(i r - (i-1) k - 1, i)`, one strictly tighter constraint per size `i`.
    pub fn strict(r: usize, k: usize, i: usize) -> Result<Self> {
        let v = (i * r) as i64 - (i as i64 - 1) * k as i64 - 1;
        Self::new(non_negative(v, "strict threshold")?, i)
    }

    /// Largest deficiency `e r - |X|` an `e`-edge set may have in a free graph.
    pub fn max_free_deficiency(&self, r: usize) -> i64 {
        (self.e * r) as i64 - self.v as i64 - 1
    }
}

fn non_negative(v: i64, what: &str) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::InvalidParameters(format!("{what} is negative ({v})")))
}

impl fmt::Display for FreenessConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{})", self.v, self.e)
    }
}

/// Every `(k-1)`-subset has codegree `0` or at least `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodegreeRule {
    pub k: usize,
    pub e: usize,
}

/// Simultaneous freeness constraints plus an optional codegree rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintFamily {
    pub constraints: Vec<FreenessConstraint>,
    pub codegree_rule: Option<CodegreeRule>,
}

impl ConstraintFamily {
    pub fn new(constraints: Vec<FreenessConstraint>, codegree_rule: Option<CodegreeRule>) -> Result<Self> {
        if constraints.is_empty() {
            return Err(Error::InvalidParameters("constraint family is empty".into()));
        }
        if let Some(rule) = codegree_rule {
            if rule.k == 0 {
                return Err(Error::InvalidParameters("codegree rule needs k >= 1".into()));
            }
        }
        Ok(ConstraintFamily {
            constraints,
            codegree_rule,
        })
    }

    pub fn single(constraint: FreenessConstraint) -> Self {
        ConstraintFamily {
            constraints: vec![constraint],
            codegree_rule: None,
        }
    }

    /// The system defining `f_r^(t)(n, er-(e-1)k, e)`: sparse at size `e`,
    /// strict at every size `t..=e-1`, and codegree `0` or `>= e` on `(k-1)`-subsets.
    pub fn constrained(r: usize, k: usize, e: usize, t: usize) -> Result<Self> {
        if t < 2 || t > e.saturating_sub(1) {
            return Err(Error::InvalidParameters(format!("need 2 <= t <= e-1, got t = {t}, e = {e}")));
        }
        let mut constraints = vec![FreenessConstraint::sparse(r, k, e)?];
        for i in t..e {
            constraints.push(FreenessConstraint::strict(r, k, i)?);
        }
        Self::new(constraints, Some(CodegreeRule { k, e }))
    }

    /// The hypotheses on a witness for the certified lower bound: sparse at
    /// size `e` and strict at every size `2..=e-1`, no codegree rule.
    pub fn witness(r: usize, k: usize, e: usize) -> Result<Self> {
        let mut constraints = vec![FreenessConstraint::sparse(r, k, e)?];
        for i in 2..e {
            constraints.push(FreenessConstraint::strict(r, k, i)?);
        }
        Self::new(constraints, None)
    }

    pub(crate) fn validate_for(&self, r: usize) -> Result<()> {
        if let Some(rule) = self.codegree_rule {
            if rule.k == 0 || rule.k >= r {
                return Err(Error::InvalidParameters(format!(
                    "codegree rule k = {} must be below r = {r}",
                    rule.k
                )));
            }
        }
        Ok(())
    }
}

/// A set of edges with their union; a witness that some constraint fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    pub edge_ids: Vec<EdgeId>,
    pub union: Vec<Vertex>,
    /// `|edges| * r - |union|`.
    pub deficiency: usize,
}

impl Configuration {
    /// Recomputes the union from `h`.
    pub fn from_edges(h: &Hypergraph, mut edge_ids: Vec<EdgeId>) -> Result<Self> {
        edge_ids.sort_unstable();
        let union = h.union(&edge_ids)?;
        let deficiency = edge_ids.len() * h.r() - union.len();
        Ok(Configuration {
            edge_ids,
            union,
            deficiency,
        })
    }

    pub fn union_size(&self) -> usize {
        self.union.len()
    }
}

/// Result of a single freeness search. Exhaustion is never reported as free.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SearchOutcome {
    Free { nodes: u64 },
    Violation { configuration: Configuration, nodes: u64 },
    BudgetExhausted { nodes: u64 },
}

impl SearchOutcome {
    pub fn is_free(&self) -> bool {
        matches!(self, SearchOutcome::Free { .. })
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, SearchOutcome::BudgetExhausted { .. })
    }

    pub fn violation(&self) -> Option<&Configuration> {
        match self {
            SearchOutcome::Violation { configuration, .. } => Some(configuration),
            _ => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            SearchOutcome::Free { nodes }
            | SearchOutcome::Violation { nodes, .. }
            | SearchOutcome::BudgetExhausted { nodes } => *nodes,
        }
    }
}

struct Exhausted;

/// Depth-first configuration search over one hypergraph and one constraint.
struct ConfigSearch<'a> {
    h: &'a Hypergraph,
    v: usize,
    e: usize,
    budget: u64,
    nodes: u64,
    /// Only extend by edges meeting the union; any id order.
    connected: bool,
    /// Edge id equal to the seed, which must not be reused.
    seed_id: Option<EdgeId>,
    seeded: bool,
    multiplicity: Vec<u32>,
    union: Vec<Vertex>,
    chosen: Vec<EdgeId>,
    stamp: Vec<u32>,
    generation: u32,
}

impl<'a> ConfigSearch<'a> {
    fn new(h: &'a Hypergraph, c: FreenessConstraint, budget: u64, connected: bool) -> Self {
        ConfigSearch {
            h,
            v: c.v,
            e: c.e,
            budget,
            nodes: 0,
            connected,
            seed_id: None,
            seeded: false,
            multiplicity: vec![0; h.n()],
            union: Vec::new(),
            chosen: Vec::new(),
            stamp: vec![0; h.edge_count()],
            generation: 0,
        }
    }

    fn depth(&self) -> usize {
        self.chosen.len() + usize::from(self.seeded)
    }

    fn add(&mut self, edge: &[Vertex]) {
        for &x in edge {
            let m = &mut self.multiplicity[x as usize];
            if *m == 0 {
                self.union.push(x);
            }
            *m += 1;
        }
    }

    fn remove(&mut self, edge: &[Vertex]) {
        for &x in edge {
            let m = &mut self.multiplicity[x as usize];
            *m -= 1;
            if *m == 0 {
                let pos = self.union.iter().rposition(|&u| u == x).unwrap();
                self.union.swap_remove(pos);
            }
        }
    }

    fn overlap(&self, id: EdgeId) -> usize {
        self.h.edges()[id]
            .iter()
            .filter(|&&x| self.multiplicity[x as usize] > 0)
            .count()
    }

    fn candidates(&mut self) -> Vec<EdgeId> {
        let r = self.h.r();
        let slack = self.v - self.union.len();
        let need = r.saturating_sub(slack);
        let must_touch = self.connected && self.depth() > 0;
        let min_overlap = if must_touch { need.max(1) } else { need };
        let after = if self.connected {
            0
        } else {
            self.chosen.last().map_or(0, |&l| l + 1)
        };
        let m = self.h.edge_count();

        if min_overlap == 0 {
            return (after..m)
                .filter(|&id| Some(id) != self.seed_id && !self.chosen.contains(&id))
                .collect();
        }

        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
        let mut pool = Vec::new();
        let union = self.union.clone();
        if min_overlap >= 2 {
            for (i, &a) in union.iter().enumerate() {
                for &b in &union[i + 1..] {
                    for &id in self.h.pair_edges(a, b) {
                        if self.stamp[id] != self.generation {
                            self.stamp[id] = self.generation;
                            pool.push(id);
                        }
                    }
                }
            }
        } else {
            for &a in &union {
                for &id in self.h.incident_edges(a) {
                    if self.stamp[id] != self.generation {
                        self.stamp[id] = self.generation;
                        pool.push(id);
                    }
                }
            }
        }
        let mut out: Vec<EdgeId> = pool
            .into_iter()
            .filter(|&id| {
                id >= after
                    && Some(id) != self.seed_id
                    && !self.chosen.contains(&id)
                    && self.overlap(id) >= min_overlap
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Walks every configuration reachable from the current state; `visit`
    /// returns `true` to stop.
    fn walk(&mut self, visit: &mut dyn FnMut(&Self) -> bool) -> std::result::Result<bool, Exhausted> {
        if self.depth() == self.e {
            return Ok(visit(self));
        }
        for id in self.candidates() {
            if self.nodes >= self.budget {
                return Err(Exhausted);
            }
            self.nodes += 1;
            let edge = &self.h.edges()[id];
            self.add(edge);
            self.chosen.push(id);
            let stop = if self.union.len() <= self.v {
                self.walk(visit)
            } else {
                Ok(false)
            };
            self.chosen.pop();
            self.remove(&self.h.edges()[id]);
            if stop? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn configuration(&self) -> Configuration {
        let mut edge_ids = self.chosen.clone();
        edge_ids.sort_unstable();
        let mut union = self.union.clone();
        union.sort_unstable();
        let edges = edge_ids.len() + usize::from(self.seeded);
        Configuration {
            deficiency: edges * self.h.r() - union.len(),
            edge_ids,
            union,
        }
    }
}

fn check_budget(budget: u64) -> Result<()> {
    if budget == 0 {
        return Err(Error::InvalidParameters("search budget must be positive".into()));
    }
    Ok(())
}

/// Looks for `c.e` distinct edges spanning at most `c.v` vertices.
///
/// Returns the lexicographically first such edge-id set in the canonical
/// search order.
pub fn find_violation(h: &Hypergraph, c: FreenessConstraint, budget: u64) -> Result<SearchOutcome> {
    check_budget(budget)?;
    if h.edge_count() < c.e {
        return Ok(SearchOutcome::Free { nodes: 0 });
    }
    let mut search = ConfigSearch::new(h, c, budget, false);
    let mut found = None;
    let result = search.walk(&mut |s| {
        found = Some(s.configuration());
        true
    });
    let nodes = search.nodes;
    match (result, found) {
        (Err(Exhausted), _) => Ok(SearchOutcome::BudgetExhausted { nodes }),
        (Ok(_), Some(configuration)) => {
            debug_assert_eq!(h.union_size(&configuration.edge_ids).ok(), Some(configuration.union.len()));
            Ok(SearchOutcome::Violation { configuration, nodes })
        }
        (Ok(_), None) => Ok(SearchOutcome::Free { nodes }),
    }
}

/// Collected witnesses from [`enumerate_violations`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub configurations: Vec<Configuration>,
    pub nodes: u64,
    pub exhausted: bool,
}

/// Up to `max_count` violating configurations, in canonical order.
pub fn enumerate_violations(
    h: &Hypergraph,
    c: FreenessConstraint,
    max_count: usize,
    budget: u64,
) -> Result<Enumeration> {
    check_budget(budget)?;
    let mut configurations = Vec::new();
    if max_count == 0 || h.edge_count() < c.e {
        return Ok(Enumeration {
            configurations,
            nodes: 0,
            exhausted: false,
        });
    }
    let mut search = ConfigSearch::new(h, c, budget, false);
    let result = search.walk(&mut |s| {
        configurations.push(s.configuration());
        configurations.len() >= max_count
    });
    Ok(Enumeration {
        configurations,
        nodes: search.nodes,
        exhausted: result.is_err(),
    })
}

/// Searches for a violating configuration made of the edge `seed` (not
/// necessarily in `h`) plus `c.e - 1` edges of `h`, grown through
/// intersections with the running union.
///
/// Only connected configurations are explored. That is exhaustive whenever
/// `h` already satisfies the strict constraints at every smaller size, since
/// a minimal violating configuration is then connected.
pub fn find_violation_through(
    h: &Hypergraph,
    c: FreenessConstraint,
    seed: &[Vertex],
    budget: u64,
) -> Result<SearchOutcome> {
    check_budget(budget)?;
    if seed.len() != h.r() || seed.iter().any(|&x| x as usize >= h.n()) {
        return Err(Error::InvalidParameters(format!("seed edge {seed:?} does not fit the hypergraph")));
    }
    let mut sorted = seed.to_vec();
    sorted.sort_unstable();
    let mut search = ConfigSearch::new(h, c, budget, true);
    search.seed_id = h.edge_id(&sorted);
    search.seeded = true;
    search.add(&sorted);
    if search.union.len() > search.v {
        return Ok(SearchOutcome::Free { nodes: 0 });
    }
    let mut found = None;
    let result = search.walk(&mut |s| {
        found = Some(s.configuration());
        true
    });
    let nodes = search.nodes;
    Ok(match (result, found) {
        (Err(Exhausted), _) => SearchOutcome::BudgetExhausted { nodes },
        (Ok(_), Some(configuration)) => SearchOutcome::Violation { configuration, nodes },
        (Ok(_), None) => SearchOutcome::Free { nodes },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintVerdict {
    pub constraint: FreenessConstraint,
    pub outcome: SearchOutcome,
}

/// Codegree-rule check; `offenders` lists every subset with codegree in `[1, e-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodegreeVerdict {
    pub rule: CodegreeRule,
    pub offenders: Vec<(SubsetKey, usize)>,
}

impl CodegreeVerdict {
    pub fn satisfied(&self) -> bool {
        self.offenders.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub verdicts: Vec<ConstraintVerdict>,
    pub codegree: Option<CodegreeVerdict>,
}

impl FamilyReport {
    pub fn all_free(&self) -> bool {
        self.verdicts.iter().all(|v| v.outcome.is_free())
            && self.codegree.as_ref().is_none_or(CodegreeVerdict::satisfied)
    }

    pub fn any_exhausted(&self) -> bool {
        self.verdicts.iter().any(|v| v.outcome.is_exhausted())
    }

    pub fn first_violation(&self) -> Option<(FreenessConstraint, &Configuration)> {
        self.verdicts
            .iter()
            .find_map(|v| v.outcome.violation().map(|c| (v.constraint, c)))
    }
}

/// All `(k-1)`-subsets whose codegree lies in `[1, e-1]`, in lexicographic order.
pub fn check_codegree_rule(h: &Hypergraph, rule: CodegreeRule) -> Result<CodegreeVerdict> {
    if rule.k == 0 || rule.k > h.r() {
        return Err(Error::InvalidParameters(format!(
            "codegree rule k = {} needs 1 <= k <= r = {}",
            rule.k,
            h.r()
        )));
    }
    let mut counts = std::collections::BTreeMap::<Vec<Vertex>, usize>::new();
    for edge in h.edges() {
        crate::combinatorics::for_each_subset(edge, rule.k - 1, |s| {
            *counts.entry(s.to_vec()).or_default() += 1;
        });
    }
    let offenders = counts
        .into_iter()
        .filter(|&(_, c)| c < rule.e)
        .map(|(s, c)| (SubsetKey::from_sorted(s).expect("edge subsets are sorted"), c))
        .collect();
    Ok(CodegreeVerdict { rule, offenders })
}

/// One verdict per constraint plus the codegree rule; nothing short-circuits.
/// Constraints are searched in parallel.
pub fn is_family_free(h: &Hypergraph, family: &ConstraintFamily, budget: u64) -> Result<FamilyReport> {
    family.validate_for(h.r())?;
    let verdicts = family
        .constraints
        .par_iter()
        .map(|&constraint| {
            find_violation(h, constraint, budget).map(|outcome| ConstraintVerdict { constraint, outcome })
        })
        .collect::<Result<Vec<_>>>()?;
    let codegree = family
        .codegree_rule
        .map(|rule| check_codegree_rule(h, rule))
        .transpose()?;
    Ok(FamilyReport { verdicts, codegree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_BUDGET;

    fn fano() -> Hypergraph {
        Hypergraph::build(
            7,
            3,
            [
                [0, 1, 2],
                [0, 3, 4],
                [0, 5, 6],
                [1, 3, 5],
                [1, 4, 6],
                [2, 3, 6],
                [2, 4, 5],
            ],
        )
        .unwrap()
    }

    fn c(v: usize, e: usize) -> FreenessConstraint {
        FreenessConstraint::new(v, e).unwrap()
    }

    #[test]
    fn k4_violates_five_three() {
        let k4 = Hypergraph::complete(4, 3).unwrap();
        let out = find_violation(&k4, c(5, 3), DEFAULT_BUDGET).unwrap();
        let conf = out.violation().expect("violation");
        assert_eq!(conf.edge_ids, vec![0, 1, 2]);
        assert_eq!(conf.union_size(), 4);
        assert_eq!(conf.deficiency, 5);
    }

    #[test]
    fn fano_is_five_three_free() {
        assert!(find_violation(&fano(), c(5, 3), DEFAULT_BUDGET).unwrap().is_free());
        // A triangle of lines spans six points.
        let out = find_violation(&fano(), c(6, 3), DEFAULT_BUDGET).unwrap();
        assert_eq!(out.violation().unwrap().union_size(), 6);
    }

    #[test]
    fn too_few_edges_is_vacuously_free() {
        let h = Hypergraph::build(5, 3, [[0, 1, 2], [0, 1, 3]]).unwrap();
        assert_eq!(find_violation(&h, c(100, 3), 1).unwrap(), SearchOutcome::Free { nodes: 0 });
    }

    #[test]
    fn budget_exhaustion_is_not_freedom() {
        let out = find_violation(&fano(), c(5, 3), 3).unwrap();
        assert_eq!(out, SearchOutcome::BudgetExhausted { nodes: 3 });
        assert!(find_violation(&fano(), c(5, 3), 0).is_err());
    }

    #[test]
    fn disconnected_bad_configurations_are_found() {
        // Two disjoint edges plus an edge inside the first one's vertex set
        // would be impossible, so use v large enough that a disjoint pair counts.
        let h = Hypergraph::build(9, 3, [[0, 1, 2], [3, 4, 5], [6, 7, 8]]).unwrap();
        let out = find_violation(&h, c(6, 2), DEFAULT_BUDGET).unwrap();
        assert_eq!(out.violation().unwrap().edge_ids, vec![0, 1]);
        let out = find_violation(&h, c(8, 3), DEFAULT_BUDGET).unwrap();
        assert!(out.is_free());
        let out = find_violation(&h, c(9, 3), DEFAULT_BUDGET).unwrap();
        assert_eq!(out.violation().unwrap().edge_ids, vec![0, 1, 2]);
    }

    #[test]
    fn enumeration_examples() {
        let k4 = Hypergraph::complete(4, 3).unwrap();
        let all = enumerate_violations(&k4, c(5, 3), 10, DEFAULT_BUDGET).unwrap();
        assert_eq!(all.configurations.len(), 4);
        assert!(all.configurations.iter().all(|c| c.union_size() == 4));
        let ids: Vec<_> = all.configurations.iter().map(|c| c.edge_ids.clone()).collect();
        assert_eq!(ids, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);

        assert!(enumerate_violations(&fano(), c(5, 3), 10, DEFAULT_BUDGET)
            .unwrap()
            .configurations
            .is_empty());

        let none = enumerate_violations(&k4, c(5, 3), 0, DEFAULT_BUDGET).unwrap();
        assert!(none.configurations.is_empty());
        assert_eq!(none.nodes, 0);
    }

    #[test]
    fn family_report_on_fano() {
        let fam = ConstraintFamily::new(vec![c(5, 3)], Some(CodegreeRule { k: 2, e: 3 })).unwrap();
        let report = is_family_free(&fano(), &fam, DEFAULT_BUDGET).unwrap();
        assert!(report.all_free());
        assert!(report.codegree.unwrap().satisfied());
    }

    #[test]
    fn codegree_rule_offenders() {
        let h = Hypergraph::build(6, 3, [[1, 2, 3], [1, 4, 5]]).unwrap();
        let fam = ConstraintFamily::new(vec![c(5, 3)], Some(CodegreeRule { k: 2, e: 3 })).unwrap();
        let report = is_family_free(&h, &fam, DEFAULT_BUDGET).unwrap();
        assert!(!report.all_free());
        let verdict = report.codegree.unwrap();
        let two = SubsetKey::new(vec![2]).unwrap();
        assert!(verdict.offenders.contains(&(two, 1)));
        assert_eq!(verdict.offenders.len(), 5);
    }

    #[test]
    fn empty_graph_satisfies_everything() {
        let h = Hypergraph::empty(6, 3).unwrap();
        let fam = ConstraintFamily::new(vec![c(5, 3), c(3, 2)], Some(CodegreeRule { k: 2, e: 3 })).unwrap();
        assert!(is_family_free(&h, &fam, DEFAULT_BUDGET).unwrap().all_free());
    }

    #[test]
    fn seeded_search_finds_pasch() {
        // Pasch configuration: 4 triples on 6 points, each point in two.
        let h = Hypergraph::build(6, 3, [[0, 1, 2], [0, 3, 4], [1, 3, 5]]).unwrap();
        let out = find_violation_through(&h, c(6, 4), &[2, 4, 5], DEFAULT_BUDGET).unwrap();
        assert_eq!(out.violation().unwrap().edge_ids, vec![0, 1, 2]);
        assert_eq!(out.violation().unwrap().union_size(), 6);
        let out = find_violation_through(&h, c(6, 4), &[2, 4, 3], DEFAULT_BUDGET).unwrap();
        assert!(out.violation().is_some());
        let h = Hypergraph::build(7, 3, [[0, 1, 2], [0, 3, 4], [1, 3, 5]]).unwrap();
        let out = find_violation_through(&h, c(6, 4), &[2, 4, 6], DEFAULT_BUDGET).unwrap();
        assert!(out.is_free());
    }

    #[test]
    fn constructors() {
        assert_eq!(FreenessConstraint::sparse(3, 2, 3).unwrap(), c(5, 3));
        assert_eq!(FreenessConstraint::strict(3, 2, 2).unwrap(), c(3, 2));
        assert_eq!(FreenessConstraint::sparse(3, 1, 3).unwrap(), c(7, 3));
        assert!(FreenessConstraint::new(5, 1).is_err());
        let fam = ConstraintFamily::constrained(3, 2, 4, 2).unwrap();
        assert_eq!(fam.constraints, vec![c(6, 4), c(3, 2), c(4, 3)]);
        assert!(ConstraintFamily::constrained(3, 2, 3, 3).is_err());
        let w = ConstraintFamily::witness(3, 2, 3).unwrap();
        assert_eq!(w.constraints, vec![c(5, 3), c(3, 2)]);
        assert!(ConstraintFamily::new(vec![], None).is_err());
    }
}
