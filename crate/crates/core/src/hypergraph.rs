//! Hypergraphs over action vertices.
//!
//! A hyperedge is a non-empty set of vertex indices. A valid hypergraph has no
//! empty edges, no duplicates, and its edges cover every vertex. Edges are kept
//! in canonical order: by cardinality, then lexicographically.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::action_space::ActionSpace;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Hyperedge {
    vertices: Vec<usize>,
}

impl Hyperedge {
    /// Builds an edge from any vertex list; vertices are sorted and deduplicated.
    pub fn new(vertices: impl Into<Vec<usize>>) -> Result<Self> {
        let mut vertices = vertices.into();
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(Error::InvalidHypergraph("empty hyperedge".into()));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// 1-based label such as `{1,4}`.
    pub fn label(&self) -> String {
        let inner: Vec<String> = self.vertices.iter().map(|v| (v + 1).to_string()).collect();
        format!("{{{}}}", inner.join(","))
    }

    fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.vertices.cmp(&other.vertices))
    }

    pub fn project_action(&self, a: &[usize]) -> Vec<usize> {
        self.vertices.iter().map(|&v| a[v]).collect()
    }

    /// Number of sub-action combinations enclosed by the edge.
    pub fn output_count(&self, space: &ActionSpace) -> usize {
        let card = space.cardinalities();
        self.vertices.iter().map(|&v| card[v]).product()
    }

    /// Mixed-radix position of the projected sub-tuple, last enclosed vertex fastest.
    pub fn local_index(&self, space: &ActionSpace, a: &[usize]) -> usize {
        let card = space.cardinalities();
        self.vertices.iter().fold(0, |acc, &v| acc * card[v] + a[v])
    }
}

impl fmt::Display for Hyperedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Which hypergraph condition a candidate edge list breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoVertices,
    EmptyEdge { edge: usize },
    VertexOutOfRange { edge: usize, vertex: usize },
    DuplicateEdge { first: usize, second: usize },
    Uncovered { vertices: Vec<usize> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoVertices => write!(f, "vertex set is empty"),
            Violation::EmptyEdge { edge } => write!(f, "empty hyperedge at position {edge}"),
            Violation::VertexOutOfRange { edge, vertex } => {
                write!(
                    f,
                    "hyperedge {edge} references vertex {vertex} outside the space"
                )
            }
            Violation::DuplicateEdge { first, second } => {
                write!(f, "hyperedges {first} and {second} are identical")
            }
            Violation::Uncovered { vertices } => {
                write!(f, "cover: vertices {vertices:?} belong to no hyperedge")
            }
        }
    }
}

/// Checks the hypergraph conditions on a raw edge list.
pub fn validate(n_vertices: usize, edges: &[Vec<usize>]) -> std::result::Result<(), Violation> {
    if n_vertices == 0 {
        return Err(Violation::NoVertices);
    }
    let mut canon: Vec<Vec<usize>> = Vec::with_capacity(edges.len());
    let mut covered = vec![false; n_vertices];
    for (i, e) in edges.iter().enumerate() {
        if e.is_empty() {
            return Err(Violation::EmptyEdge { edge: i });
        }
        if let Some(&vertex) = e.iter().find(|&&v| v >= n_vertices) {
            return Err(Violation::VertexOutOfRange { edge: i, vertex });
        }
        let mut c = e.clone();
        c.sort_unstable();
        c.dedup();
        if let Some(first) = canon.iter().position(|p| p == &c) {
            return Err(Violation::DuplicateEdge { first, second: i });
        }
        for &v in &c {
            covered[v] = true;
        }
        canon.push(c);
    }
    let missing: Vec<usize> = (0..n_vertices).filter(|&v| !covered[v]).collect();
    if !missing.is_empty() {
        return Err(Violation::Uncovered { vertices: missing });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    n_vertices: usize,
    edges: Vec<Hyperedge>,
}

impl Hypergraph {
    /// Validates and canonicalizes a custom edge list.
    pub fn new(n_vertices: usize, edges: &[Vec<usize>]) -> Result<Self> {
        validate(n_vertices, edges).map_err(|v| Error::InvalidHypergraph(v.to_string()))?;
        let mut edges = edges
            .iter()
            .map(|e| Hyperedge::new(e.clone()))
            .collect::<Result<Vec<_>>>()?;
        edges.sort_by(Hyperedge::canonical_cmp);
        Ok(Self { n_vertices, edges })
    }

    /// All hyperedges of order at most `rank`.
    pub fn rank(n_vertices: usize, rank: usize) -> Result<Self> {
        if rank == 0 || rank > n_vertices {
            return Err(Error::InvalidRank { rank, n_vertices });
        }
        let mut edges = Vec::new();
        for c in 1..=rank {
            edges.extend(complete_uniform(n_vertices, c)?);
        }
        Ok(Self { n_vertices, edges })
    }

    /// The single edge spanning every vertex (a flat, standard model).
    pub fn full_edge(n_vertices: usize) -> Result<Self> {
        Self::new(n_vertices, &[(0..n_vertices).collect()])
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Maximum edge cardinality.
    pub fn max_order(&self) -> usize {
        self.edges.iter().map(Hyperedge::order).max().unwrap_or(0)
    }

    /// True when the edges are exactly the singletons.
    pub fn is_one_complete(&self) -> bool {
        self.edges.len() == self.n_vertices
            && self
                .edges
                .iter()
                .enumerate()
                .all(|(i, e)| e.vertices() == [i])
    }

    pub fn edge_lists(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|e| e.vertices().to_vec()).collect()
    }
}

/// All `c`-subsets of `0..n_vertices`, lexicographic.
pub fn complete_uniform(n_vertices: usize, c: usize) -> Result<Vec<Hyperedge>> {
    if c == 0 || c > n_vertices {
        return Err(Error::InvalidOrder {
            order: c,
            n_vertices,
        });
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..c).collect();
    loop {
        out.push(Hyperedge {
            vertices: idx.clone(),
        });
        // advance the rightmost index that still has room
        let Some(i) = (0..c).rev().find(|&i| idx[i] < n_vertices - c + i) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..c {
            idx[j] = idx[j - 1] + 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Powerset filter over bitmasks.
    fn brute_edges(n: usize, r: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (1u32..(1 << n))
            .map(|m| (0..n).filter(|&v| m & (1 << v) != 0).collect::<Vec<_>>())
            .filter(|e| e.len() <= r)
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    #[test]
    fn validate_examples() {
        assert_eq!(validate(3, &[vec![0], vec![1, 2]]), Ok(()));
        assert_eq!(
            validate(3, &[vec![0], vec![1]]),
            Err(Violation::Uncovered { vertices: vec![2] })
        );
        assert_eq!(
            validate(3, &[vec![0, 1, 2], vec![]]),
            Err(Violation::EmptyEdge { edge: 1 })
        );
        assert!(matches!(
            validate(3, &[vec![0, 1, 2], vec![2, 1, 0]]),
            Err(Violation::DuplicateEdge {
                first: 0,
                second: 1
            })
        ));
        assert!(matches!(
            validate(2, &[vec![0, 2]]),
            Err(Violation::VertexOutOfRange { edge: 0, vertex: 2 })
        ));
        assert!(validate(3, &[vec![0], vec![1]])
            .unwrap_err()
            .to_string()
            .starts_with("cover"));
    }

    #[test]
    fn complete_uniform_examples() {
        let e = complete_uniform(3, 1).unwrap();
        assert_eq!(
            e.iter().map(|e| e.vertices().to_vec()).collect::<Vec<_>>(),
            vec![vec![0], vec![1], vec![2]]
        );
        let e = complete_uniform(6, 2).unwrap();
        let brute: Vec<_> = brute_edges(6, 2)
            .into_iter()
            .filter(|e| e.len() == 2)
            .collect();
        assert_eq!(brute.len(), 15);
        assert_eq!(
            e.iter().map(|e| e.vertices().to_vec()).collect::<Vec<_>>(),
            brute
        );
        assert_eq!(complete_uniform(3, 3).unwrap()[0].vertices(), &[0, 1, 2]);
        assert!(matches!(
            complete_uniform(3, 0),
            Err(Error::InvalidOrder { .. })
        ));
        assert!(matches!(
            complete_uniform(3, 4),
            Err(Error::InvalidOrder { .. })
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Hypergraph::rank(3, 3).unwrap().n_edges(), 7);
        assert_eq!(Hypergraph::rank(6, 2).unwrap().n_edges(), 21);
        assert_eq!(Hypergraph::rank(1, 1).unwrap().edge_lists(), vec![vec![0]]);
        assert!(matches!(
            Hypergraph::rank(3, 0),
            Err(Error::InvalidRank { .. })
        ));
        assert!(matches!(
            Hypergraph::rank(3, 4),
            Err(Error::InvalidRank { .. })
        ));
    }

    #[test]
    fn projection_and_counts() {
        let a = [4, 1, 3];
        assert_eq!(
            Hyperedge::new(vec![0, 2]).unwrap().project_action(&a),
            vec![4, 3]
        );
        assert_eq!(
            Hyperedge::new(vec![0, 1, 2]).unwrap().project_action(&a),
            vec![4, 1, 3]
        );
        let hips = Hyperedge::new(vec![0, 3]).unwrap();
        assert_eq!(hips.label(), "{1,4}");
        assert_eq!(hips.project_action(&[1, 2, 3, 4, 0, 1]), vec![1, 4]);

        let six = ActionSpace::uniform(6, 5).unwrap();
        assert_eq!(Hyperedge::new(vec![0]).unwrap().output_count(&six), 5);
        assert_eq!(hips.output_count(&six), 25);
        let s = ActionSpace::new(vec![3, 3, 2]).unwrap();
        assert_eq!(Hyperedge::new(vec![0, 1, 2]).unwrap().output_count(&s), 18);
    }

    #[test]
    fn local_index_examples() {
        let s = ActionSpace::new(vec![3, 3, 2]).unwrap();
        assert_eq!(
            Hyperedge::new(vec![0]).unwrap().local_index(&s, &[2, 1, 0]),
            2
        );
        let s4 = ActionSpace::new(vec![5, 2, 2]).unwrap();
        assert_eq!(
            Hyperedge::new(vec![0])
                .unwrap()
                .local_index(&s4, &[3, 1, 1]),
            3
        );
        // sub-tuples of the (3,2) sub-space in order: 00 01 10 11 20 21
        let sub = [[0, 0], [0, 1], [1, 0], [1, 1], [2, 0], [2, 1]];
        let pos = sub.iter().position(|t| t == &[2, 1]).unwrap();
        assert_eq!(pos, 5);
        assert_eq!(
            Hyperedge::new(vec![0, 2])
                .unwrap()
                .local_index(&s, &[2, 0, 1]),
            5
        );
        for e in Hypergraph::rank(3, 3).unwrap().edges() {
            assert_eq!(e.local_index(&s, &[0, 0, 0]), 0);
        }
    }

    #[test]
    fn canonical_order() {
        let h = Hypergraph::new(3, &[vec![2, 1], vec![0], vec![1]]).unwrap();
        assert_eq!(h.edge_lists(), vec![vec![0], vec![1], vec![1, 2]]);
        assert!(Hypergraph::rank(4, 1).unwrap().is_one_complete());
        assert!(!Hypergraph::rank(4, 2).unwrap().is_one_complete());
        assert!(Hypergraph::new(3, &[vec![0], vec![1]]).is_err());
    }

    #[test]
    fn output_sharing() {
        let s = ActionSpace::new(vec![3, 3, 2]).unwrap();
        for e in Hypergraph::rank(3, 3).unwrap().edges() {
            let mut counts = vec![0usize; e.output_count(&s)];
            for a in s.enumerate() {
                counts[e.local_index(&s, &a)] += 1;
            }
            let expect = s.total_size() / e.output_count(&s);
            assert!(counts.iter().all(|&c| c == expect));
        }
    }

    proptest! {
        #[test]
        fn edge_count_formula(n in 1usize..=10, r_frac in 0.0f64..1.0) {
            let r = 1 + ((n as f64) * r_frac) as usize;
            let r = r.min(n);
            let h = Hypergraph::rank(n, r).unwrap();
            let formula: usize = (1..=r).map(|c| binom(n, c)).sum();
            prop_assert_eq!(h.n_edges(), formula);
            prop_assert_eq!(h.edge_lists(), brute_edges(n, r));
            prop_assert!(validate(n, &h.edge_lists()).is_ok());
            if r == n {
                prop_assert_eq!(h.n_edges(), (1usize << n) - 1);
            }
        }

        #[test]
        fn validate_rejects_missing_vertex(n in 2usize..=8, r in 1usize..=3, drop in 0usize..8) {
            let r = r.min(n);
            let drop = drop % n;
            let edges: Vec<Vec<usize>> = Hypergraph::rank(n, r).unwrap().edge_lists()
                .into_iter().filter(|e| !e.contains(&drop)).collect();
            let is_uncovered = matches!(validate(n, &edges), Err(Violation::Uncovered { .. }));
            prop_assert!(is_uncovered);
        }
    }
}
