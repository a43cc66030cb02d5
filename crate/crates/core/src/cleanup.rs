//! Codegree peeling: delete edges through `(k-1)`-subsets of codegree in
//! `[1, e-1]` until every such subset has codegree `0` or at least `e`.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, for_each_subset};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph, SubsetKey, Vertex};

/// One deleted edge and the subset responsible for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Removal {
    /// Id of the edge in the input hypergraph.
    pub edge_id: EdgeId,
    pub edge: Vec<Vertex>,
    pub subset: SubsetKey,
    /// Codegree of `subset` just before this removal, always in `[1, e-1]`.
    pub codegree: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovalLog {
    pub entries: Vec<Removal>,
}

impl RemovalLog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// How many removals each subset was responsible for.
    pub fn responsibility_counts(&self) -> BTreeMap<&SubsetKey, usize> {
        let mut counts = BTreeMap::new();
        for entry in &self.entries {
            *counts.entry(&entry.subset).or_default() += 1;
        }
        counts
    }
}

/// Which offending subset and edge to remove next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeelOrder {
    /// Least offending subset, then its least incident edge.
    Canonical,
    /// Uniformly random offending subset and incident edge.
    Shuffled { seed: u64 },
}

/// `(e-1) * C(n, k-1)`, the most edges peeling can delete.
pub fn peel_bound(n: usize, k: usize, e: usize) -> Result<u128> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be at least 1".into()));
    }
    let subsets = binomial(n as u64, (k - 1) as u64)?;
    (e.saturating_sub(1) as u128)
        .checked_mul(subsets)
        .ok_or(Error::Overflow("peel bound"))
}

/// Peels with the canonical order.
pub fn peel(h: &Hypergraph, k: usize, e: usize) -> Result<(Hypergraph, RemovalLog)> {
    peel_with_order(h, k, e, PeelOrder::Canonical)
}

pub fn peel_with_order(h: &Hypergraph, k: usize, e: usize, order: PeelOrder) -> Result<(Hypergraph, RemovalLog)> {
    if k < 1 || k >= h.r() {
        return Err(Error::InvalidParameters(format!(
            "peeling needs 1 <= k < r, got k = {k}, r = {}",
            h.r()
        )));
    }
    if e < 2 {
        return Err(Error::InvalidParameters(format!("peeling threshold e = {e} must be at least 2")));
    }

    let mut incidence: BTreeMap<Vec<Vertex>, BTreeSet<EdgeId>> = BTreeMap::new();
    for (id, edge) in h.edges().iter().enumerate() {
        for_each_subset(edge, k - 1, |s| {
            incidence.entry(s.to_vec()).or_default().insert(id);
        });
    }
    let mut offending: BTreeSet<Vec<Vertex>> = incidence
        .iter()
        .filter(|(_, ids)| ids.len() < e)
        .map(|(s, _)| s.clone())
        .collect();

    let mut rng = match order {
        PeelOrder::Canonical => None,
        PeelOrder::Shuffled { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut alive = vec![true; h.edge_count()];
    let mut log = RemovalLog::default();

    while !offending.is_empty() {
        let subset = match rng.as_mut() {
            None => offending.first().cloned().unwrap(),
            Some(rng) => offending.iter().nth(rng.gen_range(0..offending.len())).cloned().unwrap(),
        };
        let ids = &incidence[&subset];
        let codegree = ids.len();
        let edge_id = match rng.as_mut() {
            None => *ids.first().unwrap(),
            Some(rng) => *ids.iter().nth(rng.gen_range(0..ids.len())).unwrap(),
        };

        alive[edge_id] = false;
        let edge = h.edges()[edge_id].clone();
        for_each_subset(&edge, k - 1, |s| {
            let ids = incidence.get_mut(s).unwrap();
            ids.remove(&edge_id);
            // Codegrees only drop, so a subset stays offending until it empties.
            if ids.is_empty() {
                incidence.remove(s);
                offending.remove(s);
            } else if ids.len() < e && !offending.contains(s) {
                offending.insert(s.to_vec());
            }
        });
        log.entries.push(Removal {
            edge_id,
            edge,
            subset: SubsetKey::from_sorted(subset).expect("subsets of sorted edges are sorted"),
            codegree,
        });
    }

    Ok((h.retain_edges(|id| alive[id]), log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeness::{check_codegree_rule, CodegreeRule};

    #[test]
    fn two_triples_peel_to_nothing() {
        let h = Hypergraph::build(6, 3, [[1, 2, 3], [1, 4, 5]]).unwrap();
        let (peeled, log) = peel(&h, 2, 3).unwrap();
        assert!(peeled.is_empty());
        assert_eq!(log.len(), 2);
        // Vertex 1 has codegree 2 and is least, so it is blamed first.
        assert_eq!(log.entries[0].subset.vertices(), &[1]);
        assert_eq!(log.entries[0].codegree, 2);
    }

    #[test]
    fn complete_five_is_untouched() {
        let k5 = Hypergraph::complete(5, 3).unwrap();
        let (peeled, log) = peel(&k5, 2, 3).unwrap();
        assert_eq!(peeled, k5);
        assert!(log.is_empty());
    }

    #[test]
    fn pendant_edge_is_removed() {
        let mut edges = Hypergraph::complete(5, 3).unwrap().edges().to_vec();
        edges.push(vec![0, 5, 6]);
        let h = Hypergraph::build(7, 3, edges).unwrap();
        let (peeled, log) = peel(&h, 2, 3).unwrap();
        assert_eq!(peeled.edges(), Hypergraph::complete(5, 3).unwrap().edges());
        assert_eq!(peeled.n(), 7, "peeling keeps the vertex set");
        assert_eq!(log.len(), 1);
        assert_eq!(log.entries[0].edge, vec![0, 5, 6]);
        assert!([vec![5], vec![6]].contains(&log.entries[0].subset.vertices().to_vec()));
    }

    #[test]
    fn bound_examples() {
        assert_eq!(peel_bound(5, 2, 3).unwrap(), 10);
        assert_eq!(peel_bound(6, 3, 4).unwrap(), 45);
        assert_eq!(peel_bound(10, 2, 2).unwrap(), 10);
        assert_eq!(peel_bound(10, 1, 4).unwrap(), 3);
        assert!(peel_bound(5, 0, 3).is_err());
        assert!(peel_bound(4000, 40, 3).is_err());
    }

    #[test]
    fn k_equals_one_blames_the_empty_set() {
        let h = Hypergraph::build(6, 3, [[0, 1, 2], [3, 4, 5]]).unwrap();
        let (peeled, log) = peel(&h, 1, 3).unwrap();
        assert!(peeled.is_empty());
        assert!(log.entries.iter().all(|r| r.subset.is_empty()));
        let (kept, log) = peel(&h, 1, 2).unwrap();
        assert_eq!(kept, h);
        assert!(log.is_empty());
    }

    #[test]
    fn rejects_bad_parameters() {
        let h = Hypergraph::complete(5, 3).unwrap();
        assert!(peel(&h, 3, 3).is_err());
        assert!(peel(&h, 0, 3).is_err());
        assert!(peel(&h, 2, 1).is_err());
    }

    #[test]
    fn shuffled_order_still_meets_the_rule() {
        let h = Hypergraph::build(
            8,
            3,
            [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3], [0, 4, 5], [4, 6, 7], [2, 5, 6]],
        )
        .unwrap();
        for seed in 0..20 {
            let (peeled, log) = peel_with_order(&h, 2, 3, PeelOrder::Shuffled { seed }).unwrap();
            let verdict = check_codegree_rule(&peeled, CodegreeRule { k: 2, e: 3 }).unwrap();
            assert!(verdict.satisfied());
            assert!(log.len() as u128 <= peel_bound(8, 2, 3).unwrap());
        }
    }
}
