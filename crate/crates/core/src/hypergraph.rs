//! Canonical storage for r-uniform hypergraphs.
//!
//! Vertices are the dense ids `0..n`. Edges are strictly increasing vertex
//! arrays kept in lexicographic order without duplicates, so an edge id is
//! simply its rank in that order. Operations that shrink the vertex set
//! re-index densely and hand back a [`Relabeling`].

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::combinatorics::for_each_subset;
use crate::error::{Error, Result};

pub type Vertex = u32;
pub type EdgeId = usize;

/// Largest `n` for which edges are mirrored as `u128` bitsets.
pub const BITSET_LIMIT: usize = 128;

/// A strictly increasing set of vertex ids, used as a codegree query.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetKey(Vec<Vertex>);

impl SubsetKey {
    /// Builds a key from ids in any order; repeated ids are rejected.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::UnsortedSubset(vertices));
        }
        Ok(SubsetKey(vertices))
    }

    /// Builds a key from ids that must already be strictly increasing.
    pub fn from_sorted(vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedSubset(vertices));
        }
        Ok(SubsetKey(vertices))
    }

    pub fn empty() -> Self {
        SubsetKey(Vec::new())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether every vertex of the key lies in the sorted `edge`.
    pub fn is_subset_of(&self, edge: &[Vertex]) -> bool {
        self.0.iter().all(|v| edge.binary_search(v).is_ok())
    }
}

impl fmt::Display for SubsetKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Old/new vertex ids after a vertex-deleting operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relabeling {
    /// `new_to_old[new] = old`.
    pub new_to_old: Vec<Vertex>,
    /// `old_to_new[old]`, `None` for deleted vertices.
    pub old_to_new: Vec<Option<Vertex>>,
}

impl Relabeling {
    fn keeping(n: usize, keep: impl Fn(Vertex) -> bool) -> Self {
        let mut new_to_old = Vec::new();
        let mut old_to_new = vec![None; n];
        for old in 0..n as Vertex {
            if keep(old) {
                old_to_new[old as usize] = Some(new_to_old.len() as Vertex);
                new_to_old.push(old);
            }
        }
        Relabeling {
            new_to_old,
            old_to_new,
        }
    }

    pub fn to_old(&self, new: Vertex) -> Vertex {
        self.new_to_old[new as usize]
    }

    pub fn to_new(&self, old: Vertex) -> Option<Vertex> {
        self.old_to_new.get(old as usize).copied().flatten()
    }
}

type SubsetIndex = HashMap<Vec<Vertex>, Vec<EdgeId>>;

/// An r-uniform hypergraph on the vertex ids `0..n`.
///
/// Values are immutable once built; every transforming operation returns a
/// new hypergraph. Codegree indices are built lazily per subset size.
#[derive(Clone)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<Vertex>>,
    masks: Option<Vec<u128>>,
    // indices[s] maps each s-subset of some edge to the ids of the edges containing it.
    indices: Vec<OnceLock<SubsetIndex>>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Hypergraph {
    /// Normalizes `edges` into a hypergraph: every edge is sorted, duplicates
    /// collapse, and the edge list ends up in lexicographic order.
    pub fn build<I, E>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        if r == 0 {
            return Err(Error::InvalidUniformity(r));
        }
        let mut normalized = Vec::new();
        for (index, edge) in edges.into_iter().enumerate() {
            let edge = edge.as_ref();
            let as_u64 = || edge.iter().map(|&v| u64::from(v)).collect::<Vec<_>>();
            if let Some(&vertex) = edge.iter().find(|&&v| v as usize >= n) {
                return Err(Error::VertexOutOfRange {
                    index,
                    edge: as_u64(),
                    vertex: u64::from(vertex),
                    n,
                });
            }
            let mut sorted = edge.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != r || edge.len() != r {
                return Err(Error::WrongEdgeSize {
                    index,
                    edge: as_u64(),
                    expected: r,
                    found: sorted.len(),
                });
            }
            normalized.push(sorted);
        }
        normalized.sort_unstable();
        normalized.dedup();
        Ok(Self::from_canonical(n, r, normalized))
    }

    /// The hypergraph with no edges.
    pub fn empty(n: usize, r: usize) -> Result<Self> {
        Self::build(n, r, std::iter::empty::<Vec<Vertex>>())
    }

    /// The complete r-graph on `n` vertices.
    pub fn complete(n: usize, r: usize) -> Result<Self> {
        let vertices: Vec<Vertex> = (0..n as Vertex).collect();
        let mut edges = Vec::new();
        for_each_subset(&vertices, r, |s| edges.push(s.to_vec()));
        Self::build(n, r, edges)
    }

    // Caller guarantees sorted, deduplicated, valid edges.
    pub(crate) fn from_canonical(n: usize, r: usize, edges: Vec<Vec<Vertex>>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let masks = (n <= BITSET_LIMIT).then(|| {
            edges
                .iter()
                .map(|e| e.iter().fold(0u128, |m, &v| m | (1u128 << v)))
                .collect()
        });
        Hypergraph {
            n,
            r,
            edges,
            masks,
            indices: (0..r).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Result<&[Vertex]> {
        self.edges
            .get(id)
            .map(Vec::as_slice)
            .ok_or(Error::UnknownEdge {
                id,
                count: self.edges.len(),
            })
    }

    /// The id of `edge` (given sorted), if present.
    pub fn edge_id(&self, edge: &[Vertex]) -> Option<EdgeId> {
        self.edges
            .binary_search_by(|e| e.as_slice().cmp(edge))
            .ok()
    }

    /// Bitset mirror of an edge, available when `n <= 128`.
    pub fn mask(&self, id: EdgeId) -> Option<u128> {
        self.masks.as_ref().and_then(|m| m.get(id).copied())
    }

    fn index(&self, size: usize) -> &SubsetIndex {
        self.indices[size].get_or_init(|| {
            let mut map: SubsetIndex = HashMap::new();
            for (id, edge) in self.edges.iter().enumerate() {
                for_each_subset(edge, size, |s| map.entry(s.to_vec()).or_default().push(id));
            }
            map
        })
    }

    /// Ids of the edges containing `subset`, in increasing order.
    pub fn edges_containing(&self, subset: &SubsetKey) -> Result<&[EdgeId]> {
        if subset.len() >= self.r {
            return Err(Error::SubsetTooLarge {
                size: subset.len(),
                r: self.r,
            });
        }
        Ok(self
            .index(subset.len())
            .get(subset.vertices())
            .map_or(&[][..], Vec::as_slice))
    }

    /// Number of edges containing `subset`.
    pub fn codegree(&self, subset: &SubsetKey) -> Result<usize> {
        self.edges_containing(subset).map(<[EdgeId]>::len)
    }

    /// Ids of edges through a single vertex.
    pub fn incident_edges(&self, vertex: Vertex) -> &[EdgeId] {
        if self.r <= 1 {
            // The size-1 index only exists for r >= 2.
            return self
                .edge_id(&[vertex])
                .map_or(&[][..], |id| std::slice::from_ref(&self.identity_ids()[id]));
        }
        self.index(1).get(&[vertex][..]).map_or(&[][..], Vec::as_slice)
    }

    fn identity_ids(&self) -> &[EdgeId] {
        // Ids are positions; the size-0 index holds all of them in order.
        self.index(0).get(&[][..]).map_or(&[][..], Vec::as_slice)
    }

    /// Ids of edges containing both `a` and `b`; empty when `r < 3`
    /// unless `{a, b}` is itself an edge of a 2-graph.
    pub(crate) fn pair_edges(&self, a: Vertex, b: Vertex) -> &[EdgeId] {
        let key = if a < b { [a, b] } else { [b, a] };
        if self.r <= 2 {
            return self
                .edge_id(&key)
                .filter(|_| self.r == 2)
                .map_or(&[][..], |id| std::slice::from_ref(&self.identity_ids()[id]));
        }
        self.index(2).get(&key[..]).map_or(&[][..], Vec::as_slice)
    }

    /// Vertex degrees, indexed by vertex id.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for edge in &self.edges {
            for &v in edge {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    /// `|∪ A_i|` over the listed edges.
    pub fn union_size(&self, ids: &[EdgeId]) -> Result<usize> {
        self.check_ids(ids)?;
        match &self.masks {
            Some(masks) => Ok(ids
                .iter()
                .fold(0u128, |acc, &id| acc | masks[id])
                .count_ones() as usize),
            None => Ok(self.union_by_arrays(ids).len()),
        }
    }

    /// The sorted union of the listed edges.
    pub fn union(&self, ids: &[EdgeId]) -> Result<Vec<Vertex>> {
        self.check_ids(ids)?;
        Ok(self.union_by_arrays(ids))
    }

    pub(crate) fn union_by_arrays(&self, ids: &[EdgeId]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = ids.iter().flat_map(|&id| self.edges[id].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn check_ids(&self, ids: &[EdgeId]) -> Result<()> {
        match ids.iter().find(|&&id| id >= self.edges.len()) {
            Some(&id) => Err(Error::UnknownEdge {
                id,
                count: self.edges.len(),
            }),
            None => Ok(()),
        }
    }

    /// The `(r - |T|)`-graph `{A \ T : T ⊆ A}` on the vertices outside `T`,
    /// re-indexed densely.
    pub fn link(&self, subset: &SubsetKey) -> Result<(Hypergraph, Relabeling)> {
        let containing = self.edges_containing(subset)?;
        let relabel = Relabeling::keeping(self.n, |v| subset.vertices().binary_search(&v).is_err());
        let mut edges: Vec<Vec<Vertex>> = containing
            .iter()
            .map(|&id| {
                self.edges[id]
                    .iter()
                    .filter_map(|&v| relabel.to_new(v))
                    .collect()
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let link = Hypergraph::from_canonical(relabel.new_to_old.len(), self.r - subset.len(), edges);
        Ok((link, relabel))
    }

    /// Removes the vertices in `deleted` and every edge meeting them.
    pub fn delete_vertices(&self, deleted: &[Vertex]) -> Result<(Hypergraph, Relabeling)> {
        let mut gone = vec![false; self.n];
        for &v in deleted {
            if v as usize >= self.n {
                return Err(Error::VertexOutOfRange {
                    index: 0,
                    edge: deleted.iter().map(|&v| u64::from(v)).collect(),
                    vertex: u64::from(v),
                    n: self.n,
                });
            }
            gone[v as usize] = true;
        }
        let relabel = Relabeling::keeping(self.n, |v| !gone[v as usize]);
        // Relabeling is monotone, so lexicographic order is preserved.
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| !gone[v as usize]))
            .map(|e| e.iter().map(|&v| relabel.old_to_new[v as usize].unwrap()).collect())
            .collect();
        Ok((
            Hypergraph::from_canonical(relabel.new_to_old.len(), self.r, edges),
            relabel,
        ))
    }

    /// Sub-hypergraph on the same vertex set keeping the edges for which
    /// `keep` returns true.
    pub fn retain_edges(&self, mut keep: impl FnMut(EdgeId) -> bool) -> Hypergraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(id, _)| keep(*id))
            .map(|(_, e)| e.clone())
            .collect();
        Hypergraph::from_canonical(self.n, self.r, edges)
    }

    /// A copy with one more edge (no-op if the edge is already present).
    pub fn with_edge(&self, edge: &[Vertex]) -> Result<Hypergraph> {
        Hypergraph::build(self.n, self.r, self.edges.iter().map(Vec::as_slice).chain([edge]))
    }

    /// A copy on `n` vertices, `n` at least the current count.
    pub fn with_vertex_count(&self, n: usize) -> Result<Hypergraph> {
        if n < self.n {
            return Err(Error::InvalidParameters(format!(
                "cannot shrink vertex count from {} to {n}",
                self.n
            )));
        }
        Ok(Hypergraph::from_canonical(n, self.r, self.edges.clone()))
    }

    /// Serializes to the `n r m` text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.r, self.edges.len());
        for edge in &self.edges {
            let line: Vec<String> = edge.iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the `n r m` text format. Errors carry 1-based line numbers.
    pub fn from_text(text: &str) -> Result<Hypergraph> {
        let mut lines = text.split('\n');
        let header = lines.next().unwrap_or("");
        let fields = parse_fields(header, 1)?;
        let [n, r, m] = fields[..] else {
            return Err(parse_error(1, format!("header needs 3 fields \"n r m\", found {}", fields.len())));
        };
        let (n, r, m) = (n as usize, r as usize, m as usize);
        if r == 0 {
            return Err(parse_error(1, "uniformity must be positive".into()));
        }
        let mut edges = Vec::with_capacity(m);
        for i in 0..m {
            let line_no = i + 2;
            let line = match lines.next() {
                Some(l) if !l.is_empty() => l,
                _ => {
                    return Err(parse_error(
                        line_no,
                        format!("expected {m} edge lines, found {i}"),
                    ))
                }
            };
            let ids = parse_fields(line, line_no)?;
            if ids.len() != r {
                return Err(parse_error(line_no, format!("expected {r} ids, found {}", ids.len())));
            }
            if ids.windows(2).any(|w| w[0] >= w[1]) {
                return Err(parse_error(line_no, "ids must be strictly increasing".into()));
            }
            if let Some(bad) = ids.iter().find(|&&v| v >= n as u64) {
                return Err(parse_error(line_no, format!("id {bad} out of range for n = {n}")));
            }
            edges.push(ids.into_iter().map(|v| v as Vertex).collect::<Vec<_>>());
        }
        for (offset, rest) in lines.enumerate() {
            if !rest.is_empty() {
                return Err(parse_error(m + 2 + offset, "unexpected content after the last edge".into()));
            }
        }
        Hypergraph::build(n, r, edges)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn parse_error(line: usize, message: String) -> Error {
    Error::Parse { line, message }
}

fn parse_fields(line: &str, line_no: usize) -> Result<Vec<u64>> {
    line.split(' ')
        .map(|tok| {
            if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                return Err(parse_error(line_no, format!("malformed field {tok:?}")));
            }
            tok.parse::<u64>()
                .map_err(|e| parse_error(line_no, format!("field {tok:?}: {e}")))
        })
        .collect()
}
