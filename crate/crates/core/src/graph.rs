//! Pivot graphs and nested pivot-graph structures.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::election::{Candidate, MAX_CANDIDATES};
use crate::error::{Error, Result};

/// Undirected graph on candidates `0..m`, stored as adjacency bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct PivotGraph {
    m: usize,
    adj: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    m: usize,
    edges: Vec<(Candidate, Candidate)>,
}

impl From<PivotGraph> for GraphRepr {
    fn from(g: PivotGraph) -> Self {
        GraphRepr {
            m: g.m,
            edges: g.edges(),
        }
    }
}

impl TryFrom<GraphRepr> for PivotGraph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        PivotGraph::from_edges(r.m, &r.edges)
    }
}

impl PivotGraph {
    pub fn empty(m: usize) -> Self {
        assert!(m <= MAX_CANDIDATES, "at most {MAX_CANDIDATES} candidates");
        PivotGraph { m, adj: vec![0; m] }
    }

    pub fn complete(m: usize) -> Self {
        let mut g = PivotGraph::empty(m);
        for a in 0..m {
            for b in a + 1..m {
                g.add_edge(a, b);
            }
        }
        g
    }

    /// Edges from `center` to each leaf.
    pub fn star(m: usize, center: Candidate, leaves: impl IntoIterator<Item = Candidate>) -> Self {
        let mut g = PivotGraph::empty(m);
        for leaf in leaves {
            if leaf != center {
                g.add_edge(center, leaf);
            }
        }
        g
    }

    pub fn from_edges(m: usize, edges: &[(Candidate, Candidate)]) -> Result<Self> {
        if m > MAX_CANDIDATES {
            return Err(Error::capacity("pivot graph candidates", MAX_CANDIDATES as u64, m as u64));
        }
        let mut g = PivotGraph::empty(m);
        for &(a, b) in edges {
            if a >= m || b >= m {
                return Err(Error::structural(format!("edge ({a},{b}) outside 0..{m}")));
            }
            if a == b {
                return Err(Error::structural(format!("self-loop at {a}")));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn add_edge(&mut self, a: Candidate, b: Candidate) {
        debug_assert!(a != b);
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    pub fn has_edge(&self, a: Candidate, b: Candidate) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn neighbors(&self, c: Candidate) -> u64 {
        self.adj[c]
    }

    /// Edges as `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Candidate, Candidate)> {
        let mut out = Vec::new();
        for a in 0..self.m {
            let mut higher = self.adj[a] >> (a + 1) << (a + 1);
            while higher != 0 {
                let b = higher.trailing_zeros() as usize;
                out.push((a, b));
                higher &= higher - 1;
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|x| x.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|&x| x == 0)
    }

    /// Bitmask of vertices with at least one edge.
    pub fn active(&self) -> u64 {
        self.adj
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .fold(0, |acc, (c, _)| acc | 1 << c)
    }

    pub fn is_subgraph_of(&self, other: &PivotGraph) -> bool {
        self.m == other.m && self.adj.iter().zip(&other.adj).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &PivotGraph) -> PivotGraph {
        PivotGraph {
            m: self.m,
            adj: self.adj.iter().zip(&other.adj).map(|(a, b)| a | b).collect(),
        }
    }

    /// True iff the edges form a complete graph on the active vertices.
    pub fn is_clique_on_active(&self) -> bool {
        let active = self.active();
        (0..self.m)
            .filter(|c| active >> c & 1 == 1)
            .all(|c| self.adj[c] == active & !(1 << c))
    }
}

/// Nested pivot graphs `H_1 ⊆ H_2 ⊆ … ⊆ H_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<PivotGraph>", into = "Vec<PivotGraph>")]
pub struct PivotGraphStructure {
    graphs: Vec<PivotGraph>,
}

impl From<PivotGraphStructure> for Vec<PivotGraph> {
    fn from(s: PivotGraphStructure) -> Self {
        s.graphs
    }
}

impl TryFrom<Vec<PivotGraph>> for PivotGraphStructure {
    type Error = Error;
    fn try_from(graphs: Vec<PivotGraph>) -> Result<Self> {
        PivotGraphStructure::new(graphs)
    }
}

impl PivotGraphStructure {
    /// Validates that the structure is non-empty, shares `m`, and is nested.
    pub fn new(graphs: Vec<PivotGraph>) -> Result<Self> {
        let first = graphs
            .first()
            .ok_or_else(|| Error::structural("a structure needs at least one level"))?;
        for (j, pair) in graphs.windows(2).enumerate() {
            if pair[0].m != first.m || pair[1].m != first.m {
                return Err(Error::structural("levels disagree on the number of candidates"));
            }
            if !pair[0].is_subgraph_of(&pair[1]) {
                return Err(Error::structural(format!(
                    "level {} is not contained in level {}",
                    j + 1,
                    j + 2
                )));
            }
        }
        Ok(PivotGraphStructure { graphs })
    }

    pub fn single(graph: PivotGraph) -> Self {
        PivotGraphStructure { graphs: vec![graph] }
    }

    pub fn levels(&self) -> &[PivotGraph] {
        &self.graphs
    }

    pub fn k(&self) -> usize {
        self.graphs.len()
    }

    pub fn m(&self) -> usize {
        self.graphs[0].m
    }

    pub fn outermost(&self) -> &PivotGraph {
        self.graphs.last().expect("non-empty by construction")
    }

    /// Graphviz text: one cluster per level, nodes labeled by `names`.
    pub fn to_dot(&self, names: &[String]) -> String {
        let mut out = String::from("graph pivot_structure {\n");
        for (j, g) in self.graphs.iter().enumerate() {
            let level = j + 1;
            let _ = writeln!(out, "  subgraph cluster_h{level} {{");
            let _ = writeln!(out, "    label=\"H{level}\";");
            for c in 0..g.m {
                let _ = writeln!(out, "    h{level}_{c} [label=\"{}\"];", dot_escape(name_of(names, c)));
            }
            for (a, b) in g.edges() {
                let _ = writeln!(out, "    h{level}_{a} -- h{level}_{b};");
            }
            out.push_str("  }\n");
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn name_of(names: &[String], c: Candidate) -> String {
    names.get(c).cloned().unwrap_or_else(|| format!("c{c}"))
}

fn dot_escape(s: String) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_and_cliques() {
        let g = PivotGraph::from_edges(5, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(g.is_clique_on_active());
        let h = PivotGraph::from_edges(3, &[(1, 2)]).unwrap();
        assert!(h.is_clique_on_active());
        let path = PivotGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!path.is_clique_on_active());
        assert!(PivotGraph::empty(4).is_clique_on_active());
        assert_eq!(PivotGraph::complete(5).edge_count(), 10);
    }

    #[test]
    fn rejects_bad_edges_and_nesting() {
        assert!(PivotGraph::from_edges(3, &[(1, 1)]).is_err());
        assert!(PivotGraph::from_edges(3, &[(1, 3)]).is_err());
        let a = PivotGraph::from_edges(3, &[(0, 1)]).unwrap();
        let b = PivotGraph::from_edges(3, &[(1, 2)]).unwrap();
        assert!(PivotGraphStructure::new(vec![a.clone(), b]).is_err());
        assert!(PivotGraphStructure::new(vec![a.clone(), PivotGraph::complete(3)]).is_ok());
        assert!(PivotGraphStructure::new(vec![]).is_err());
    }

    #[test]
    fn serde_round_trip_keeps_edges() {
        let s = PivotGraphStructure::new(vec![
            PivotGraph::from_edges(3, &[(0, 1)]).unwrap(),
            PivotGraph::complete(3),
        ])
        .unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"[{"m":3,"edges":[[0,1]]},{"m":3,"edges":[[0,1],[0,2],[1,2]]}]"#);
        let back: PivotGraphStructure = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let bad = r#"[{"m":3,"edges":[[0,1],[1,2]]},{"m":3,"edges":[[0,1]]}]"#;
        assert!(serde_json::from_str::<PivotGraphStructure>(bad).is_err());
    }

    #[test]
    fn dot_has_one_cluster_per_level() {
        let s = PivotGraphStructure::new(vec![PivotGraph::empty(2), PivotGraph::complete(2)]).unwrap();
        let dot = s.to_dot(&["w".into(), "b".into()]);
        assert_eq!(dot.matches("subgraph").count(), 2);
        assert!(dot.contains("h2_0 -- h2_1;"));
        assert!(dot.contains("h1_0 [label=\"w\"]"));
    }
}
