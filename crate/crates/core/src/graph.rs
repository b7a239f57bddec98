//! Connected directed graphs with legs, together with the two exceptional
//! vertexless graphs: the edge `↑` and the wheel `↻`.
//!
//! Edges are directed from their `src` vertex to their `tgt` vertex; either
//! endpoint may be absent. An edge with no `src` is an input leg of the
//! graph, an edge with no `tgt` is an output leg, and the single edge of `↑`
//! is both. A `closed` edge has no endpoints at all and is the wheel marker;
//! in connected graphs it only occurs as the unique edge of `↻`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which graphical category a graph lives in.
///
/// `WheelFree` is the category Γ of simply connected acyclic graphs.
/// `WheeledA` admits every connected wheeled graph including the exceptional
/// loop `↻`; `WheeledB` is its full subcategory without `↻`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Flavor {
    #[serde(rename = "wheel-free")]
    WheelFree,
    #[serde(rename = "wheeled-a")]
    WheeledA,
    #[serde(rename = "wheeled-b")]
    WheeledB,
}

impl Flavor {
    pub fn is_wheeled(self) -> bool {
        matches!(self, Flavor::WheeledA | Flavor::WheeledB)
    }

    pub fn admits_loop(self) -> bool {
        self == Flavor::WheeledA
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Flavor::WheelFree => "wheel-free",
            Flavor::WheeledA => "wheeled-a",
            Flavor::WheeledB => "wheeled-b",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "free" | "wheel-free" | "gamma" | "g" => Ok(Flavor::WheelFree),
            "a" | "wheeled-a" => Ok(Flavor::WheeledA),
            "b" | "wheeled-b" => Ok(Flavor::WheeledB),
            other => Err(format!("unknown flavor `{other}` (expected free|A|B)")),
        }
    }
}

/// Index of a vertex within its graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

/// Index of an edge within its graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// One edge record: optional producing vertex, optional consuming vertex,
/// and the wheel marker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeRec {
    pub src: Option<VertexId>,
    pub tgt: Option<VertexId>,
    pub closed: bool,
}

/// Boundary profile of a graph: its input legs and output legs.
///
/// For every connected graph other than `↑` the two sets are disjoint; the
/// single edge of `↑` is both an input and an output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub inputs: BTreeSet<EdgeId>,
    pub outputs: BTreeSet<EdgeId>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("the exceptional loop only exists in the wheeled-a flavor")]
    LoopNotAdmitted,
    #[error("closed edge {0} has an endpoint")]
    ClosedEdgeWithEndpoint(EdgeId),
    #[error("closed edge {0} in a graph with vertices")]
    ClosedEdgeBesideVertices(EdgeId),
    #[error("edge {0} refers to a vertex out of range")]
    DanglingVertexRef(EdgeId),
    #[error("graph is not connected")]
    Disconnected,
    #[error("wheel-free graph contains a directed cycle")]
    DirectedCycle,
    #[error("contracting a leg of the wrong polarity: {0}")]
    BadContraction(String),
}

/// A finite connected directed graph with legs.
///
/// Vertices are the indices `0..vertex_count`. Invariants (checked by
/// [`Graph::check`]) follow the conventions above; use the constructors for
/// the standard graphs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    flavor: Flavor,
    vertex_count: u32,
    edges: Vec<EdgeRec>,
}

impl Graph {
    /// Builds a graph from raw parts and checks all flavor invariants.
    pub fn new(flavor: Flavor, vertex_count: u32, edges: Vec<EdgeRec>) -> Result<Self, GraphError> {
        let g = Graph { flavor, vertex_count, edges };
        g.check()?;
        Ok(g)
    }

    /// Builds without validation. Only for internal construction sites that
    /// produce structurally valid graphs by construction.
    pub(crate) fn new_unchecked(flavor: Flavor, vertex_count: u32, edges: Vec<EdgeRec>) -> Self {
        let g = Graph { flavor, vertex_count, edges };
        debug_assert_eq!(g.check(), Ok(()));
        g
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count as usize
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn edge(&self, e: EdgeId) -> &EdgeRec {
        &self.edges[e.index()]
    }

    pub fn edges(&self) -> &[EdgeRec] {
        &self.edges
    }

    pub fn src(&self, e: EdgeId) -> Option<VertexId> {
        self.edges[e.index()].src
    }

    pub fn tgt(&self, e: EdgeId) -> Option<VertexId> {
        self.edges[e.index()].tgt
    }

    pub fn is_closed_edge(&self, e: EdgeId) -> bool {
        self.edges[e.index()].closed
    }

    /// Input legs of the graph: non-closed edges with no producing vertex.
    pub fn inputs(&self) -> BTreeSet<EdgeId> {
        self.edge_ids()
            .filter(|&e| !self.is_closed_edge(e) && self.src(e).is_none())
            .collect()
    }

    /// Output legs of the graph: non-closed edges with no consuming vertex.
    pub fn outputs(&self) -> BTreeSet<EdgeId> {
        self.edge_ids()
            .filter(|&e| !self.is_closed_edge(e) && self.tgt(e).is_none())
            .collect()
    }

    pub fn profile(&self) -> Profile {
        Profile { inputs: self.inputs(), outputs: self.outputs() }
    }

    /// Inner edges: both endpoints present, plus all closed edges.
    pub fn inner_edges(&self) -> BTreeSet<EdgeId> {
        self.edge_ids()
            .filter(|&e| {
                let rec = self.edge(e);
                rec.closed || (rec.src.is_some() && rec.tgt.is_some())
            })
            .collect()
    }

    /// `S^inp`: inner edges together with input legs.
    pub fn s_inp(&self) -> BTreeSet<EdgeId> {
        let mut s = self.inner_edges();
        s.extend(self.inputs());
        s
    }

    /// `S^out`: inner edges together with output legs.
    pub fn s_out(&self) -> BTreeSet<EdgeId> {
        let mut s = self.inner_edges();
        s.extend(self.outputs());
        s
    }

    /// Edges consumed by `v` (the vertex's inputs).
    pub fn inputs_of(&self, v: VertexId) -> BTreeSet<EdgeId> {
        self.edge_ids().filter(|&e| self.tgt(e) == Some(v)).collect()
    }

    /// Edges produced by `v` (the vertex's outputs).
    pub fn outputs_of(&self, v: VertexId) -> BTreeSet<EdgeId> {
        self.edge_ids().filter(|&e| self.src(e) == Some(v)).collect()
    }

    /// Total incidence count of `v`; a self-loop counts twice.
    pub fn valence(&self, v: VertexId) -> usize {
        self.inputs_of(v).len() + self.outputs_of(v).len()
    }

    /// A `(1;1)`-vertex, i.e. one input and one output. Substituting `↑`
    /// there is the codegeneracy at `v`.
    pub fn is_unary(&self, v: VertexId) -> bool {
        self.inputs_of(v).len() == 1 && self.outputs_of(v).len() == 1
    }

    pub fn unary_vertices(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.is_unary(v)).collect()
    }

    /// True when the graph is `↑`.
    pub fn is_exceptional_edge(&self) -> bool {
        self.vertex_count == 0 && self.edges.len() == 1 && !self.edges[0].closed
    }

    /// True when the graph is `↻`.
    pub fn is_exceptional_loop(&self) -> bool {
        self.vertex_count == 0 && self.edges.len() == 1 && self.edges[0].closed
    }

    /// True when the graph is the isolated vertex `•`.
    pub fn is_isolated_vertex(&self) -> bool {
        self.vertex_count == 1 && self.edges.is_empty()
    }

    /// Structurally wheel-free: no closed edge and no directed cycle.
    pub fn is_wheel_free(&self) -> bool {
        !self.edges.iter().any(|e| e.closed) && !self.has_directed_cycle()
    }

    fn has_directed_cycle(&self) -> bool {
        // Kahn peeling on the inner-edge multigraph.
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for rec in &self.edges {
            if let (Some(_), Some(t)) = (rec.src, rec.tgt) {
                indeg[t.index()] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0usize;
        while let Some(v) = queue.pop() {
            removed += 1;
            for rec in &self.edges {
                if rec.src == Some(VertexId(v as u32)) {
                    if let Some(t) = rec.tgt {
                        indeg[t.index()] -= 1;
                        if indeg[t.index()] == 0 {
                            queue.push(t.index());
                        }
                    }
                }
            }
        }
        removed < n
    }

    /// Validates all structural invariants for the graph's flavor.
    pub fn check(&self) -> Result<(), GraphError> {
        for (i, rec) in self.edges.iter().enumerate() {
            let e = EdgeId(i as u32);
            if rec.closed && (rec.src.is_some() || rec.tgt.is_some()) {
                return Err(GraphError::ClosedEdgeWithEndpoint(e));
            }
            for end in [rec.src, rec.tgt].into_iter().flatten() {
                if end.0 >= self.vertex_count {
                    return Err(GraphError::DanglingVertexRef(e));
                }
            }
            if rec.closed && self.vertex_count > 0 {
                return Err(GraphError::ClosedEdgeBesideVertices(e));
            }
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        match self.flavor {
            Flavor::WheelFree => {
                if self.edges.iter().any(|e| e.closed) || self.has_directed_cycle() {
                    return Err(GraphError::DirectedCycle);
                }
            }
            Flavor::WheeledB => {
                if self.is_exceptional_loop() {
                    return Err(GraphError::LoopNotAdmitted);
                }
            }
            Flavor::WheeledA => {}
        }
        Ok(())
    }

    /// Connectivity of the underlying incidence structure. The vertexless
    /// graphs `↑` and `↻` and the isolated vertex `•` count as connected;
    /// the empty graph does not.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return self.edges.len() == 1;
        }
        // With vertices present, every edge needs at least one endpoint.
        if self.edges.iter().any(|e| e.src.is_none() && e.tgt.is_none()) {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for rec in &self.edges {
                if let (Some(s), Some(t)) = (rec.src, rec.tgt) {
                    if s.index() == v && !seen[t.index()] {
                        seen[t.index()] = true;
                        stack.push(t.index());
                    }
                    if t.index() == v && !seen[s.index()] {
                        seen[s.index()] = true;
                        stack.push(s.index());
                    }
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Degree of the graph in the given flavor.
    ///
    /// Wheel-free degree is the vertex count. The wheeled degree is 0 for
    /// `↑`, 1 for `•`, and otherwise `|vertices| + |inner edges| + 1`.
    pub fn degree(&self, flavor: Flavor) -> usize {
        match flavor {
            Flavor::WheelFree => self.vertex_count(),
            Flavor::WheeledA | Flavor::WheeledB => {
                if self.is_exceptional_edge() {
                    0
                } else if self.is_isolated_vertex() {
                    1
                } else {
                    self.vertex_count() + self.inner_edges().len() + 1
                }
            }
        }
    }

    /// The simpler candidate degree `|vertices| + |inner edges|`, kept for
    /// the axiom-(i) necessity check where it must fail on `• → ↻`.
    pub fn degree_unshifted(&self) -> usize {
        self.vertex_count() + self.inner_edges().len()
    }

    /// Relabels the graph along a vertex permutation and an edge permutation.
    /// `vperm[old] = new`, `eperm[old] = new`.
    pub fn relabel(&self, vperm: &[u32], eperm: &[u32]) -> Graph {
        let mut edges = vec![
            EdgeRec { src: None, tgt: None, closed: false };
            self.edges.len()
        ];
        for (old, rec) in self.edges.iter().enumerate() {
            edges[eperm[old] as usize] = EdgeRec {
                src: rec.src.map(|v| VertexId(vperm[v.index()])),
                tgt: rec.tgt.map(|v| VertexId(vperm[v.index()])),
                closed: rec.closed,
            };
        }
        Graph { flavor: self.flavor, vertex_count: self.vertex_count, edges }
    }

    /// Same graph viewed in another flavor, if admissible there.
    pub fn with_flavor(&self, flavor: Flavor) -> Result<Graph, GraphError> {
        Graph::new(flavor, self.vertex_count, self.edges.clone())
    }
}

/// The corolla `C(n;m)`: one vertex, `n` input legs and `m` output legs.
/// `C(0;0)` is the isolated vertex `•`.
pub fn corolla(flavor: Flavor, n: usize, m: usize) -> Graph {
    let v = VertexId(0);
    let mut edges = Vec::with_capacity(n + m);
    for _ in 0..n {
        edges.push(EdgeRec { src: None, tgt: Some(v), closed: false });
    }
    for _ in 0..m {
        edges.push(EdgeRec { src: Some(v), tgt: None, closed: false });
    }
    Graph::new_unchecked(flavor, 1, edges)
}

/// The isolated vertex `•`, identified with `C(0;0)`.
pub fn isolated_vertex(flavor: Flavor) -> Graph {
    corolla(flavor, 0, 0)
}

/// The exceptional edge `↑`: one edge, no vertices.
pub fn exceptional_edge(flavor: Flavor) -> Graph {
    Graph::new_unchecked(
        flavor,
        0,
        vec![EdgeRec { src: None, tgt: None, closed: false }],
    )
}

/// The exceptional loop `↻`: one closed edge, no vertices, empty boundary.
pub fn exceptional_loop(flavor: Flavor) -> Result<Graph, GraphError> {
    if !flavor.admits_loop() {
        return Err(GraphError::LoopNotAdmitted);
    }
    Ok(Graph::new_unchecked(
        flavor,
        0,
        vec![EdgeRec { src: None, tgt: None, closed: true }],
    ))
}

/// Fuses an input leg `i` and an output leg `j` of a wheeled graph into a
/// single edge running from `j`'s producer to `i`'s consumer. Contracting
/// the edge of `↑` (where `i = j`) yields `↻`.
pub fn contract(g: &Graph, i: EdgeId, j: EdgeId) -> Result<Graph, GraphError> {
    if !g.flavor().is_wheeled() {
        return Err(GraphError::BadContraction(
            "contraction only exists in wheeled flavors".into(),
        ));
    }
    if !g.inputs().contains(&i) {
        return Err(GraphError::BadContraction(format!("{i} is not an input leg")));
    }
    if !g.outputs().contains(&j) {
        return Err(GraphError::BadContraction(format!("{j} is not an output leg")));
    }
    if i == j {
        // Only ↑ has a leg of both polarities; the contraction closes it.
        return exceptional_loop(g.flavor());
    }
    let fused = EdgeRec { src: g.src(j), tgt: g.tgt(i), closed: g.src(j).is_none() && g.tgt(i).is_none() };
    let mut edges = Vec::with_capacity(g.edge_count() - 1);
    for e in g.edge_ids() {
        if e == i {
            edges.push(fused);
        } else if e != j {
            edges.push(*g.edge(e));
        }
    }
    Graph::new(g.flavor(), g.vertex_count, edges)
}

/// `ξ¹₁C(1;1)`: the contracted corolla with one vertex and one self-incident
/// inner edge. The running counterexample graph of the wheeled theory.
pub fn contracted_unary_corolla(flavor: Flavor) -> Result<Graph, GraphError> {
    let c = corolla(flavor, 1, 1);
    let i = *c.inputs().iter().next().unwrap();
    let j = *c.outputs().iter().next().unwrap();
    contract(&c, i, j)
}

/// A linear chain of `n` unary vertices: one input leg, `n-1` inner edges,
/// one output leg. `chain(1) = C(1;1)`.
pub fn chain(flavor: Flavor, n: usize) -> Graph {
    assert!(n >= 1);
    let mut edges = Vec::with_capacity(n + 1);
    edges.push(EdgeRec { src: None, tgt: Some(VertexId(0)), closed: false });
    for k in 0..n - 1 {
        edges.push(EdgeRec {
            src: Some(VertexId(k as u32)),
            tgt: Some(VertexId(k as u32 + 1)),
            closed: false,
        });
    }
    edges.push(EdgeRec { src: Some(VertexId(n as u32 - 1)), tgt: None, closed: false });
    Graph::new_unchecked(flavor, n as u32, edges)
}

/// The closed cycle on two unary vertices, i.e. the Figure-5 family at
/// `n = m = 1`: gluing `C(1;1)` to `C(1;1)` along both legs.
pub fn two_cycle(flavor: Flavor) -> Result<Graph, GraphError> {
    Graph::new(
        flavor,
        2,
        vec![
            EdgeRec { src: Some(VertexId(0)), tgt: Some(VertexId(1)), closed: false },
            EdgeRec { src: Some(VertexId(1)), tgt: Some(VertexId(0)), closed: false },
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corolla_shape() {
        let c = corolla(Flavor::WheelFree, 2, 1);
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.edge_count(), 3);
        assert!(c.inner_edges().is_empty());
        assert_eq!(c.inputs().len(), 2);
        assert_eq!(c.outputs().len(), 1);
    }

    #[test]
    fn corolla_zero_zero_is_isolated_vertex() {
        let c = corolla(Flavor::WheeledA, 0, 0);
        assert!(c.is_isolated_vertex());
        assert_eq!(c, isolated_vertex(Flavor::WheeledA));
    }

    #[test]
    fn exceptional_edge_shape() {
        let up = exceptional_edge(Flavor::WheelFree);
        assert_eq!(up.vertex_count(), 0);
        assert_eq!(up.edge_count(), 1);
        let e = EdgeId(0);
        assert_eq!(up.inputs(), BTreeSet::from([e]));
        assert_eq!(up.outputs(), BTreeSet::from([e]));
        assert!(up.is_exceptional_edge());
    }

    #[test]
    fn exceptional_loop_shape() {
        let wheel = exceptional_loop(Flavor::WheeledA).unwrap();
        assert_eq!(wheel.edge_count(), 1);
        assert!(wheel.inputs().is_empty());
        assert!(wheel.outputs().is_empty());
        assert_eq!(wheel.inner_edges(), BTreeSet::from([EdgeId(0)]));
        assert!(exceptional_loop(Flavor::WheeledB).is_err());
        assert!(exceptional_loop(Flavor::WheelFree).is_err());
    }

    #[test]
    fn degrees() {
        let up = exceptional_edge(Flavor::WheeledA);
        let dot = isolated_vertex(Flavor::WheeledA);
        let wheel = exceptional_loop(Flavor::WheeledA).unwrap();
        assert_eq!(up.degree(Flavor::WheeledA), 0);
        assert_eq!(dot.degree(Flavor::WheeledA), 1);
        assert_eq!(wheel.degree(Flavor::WheeledA), 2);
        let c11 = corolla(Flavor::WheelFree, 1, 1);
        assert_eq!(c11.degree(Flavor::WheelFree), 1);
        assert_eq!(c11.with_flavor(Flavor::WheeledA).unwrap().degree(Flavor::WheeledA), 2);
    }

    #[test]
    fn contract_unary_corolla() {
        let xi = contracted_unary_corolla(Flavor::WheeledA).unwrap();
        assert_eq!(xi.vertex_count(), 1);
        assert_eq!(xi.edge_count(), 1);
        assert_eq!(xi.inner_edges().len(), 1);
        assert_eq!(xi.src(EdgeId(0)), Some(VertexId(0)));
        assert_eq!(xi.tgt(EdgeId(0)), Some(VertexId(0)));
        // Γ↻-degree 3: one vertex, one inner edge, plus the shift.
        assert_eq!(xi.degree(Flavor::WheeledA), 3);
    }

    #[test]
    fn contract_exceptional_edge_gives_loop() {
        let up = exceptional_edge(Flavor::WheeledA);
        let e = EdgeId(0);
        let got = contract(&up, e, e).unwrap();
        assert!(got.is_exceptional_loop());
    }

    #[test]
    fn contract_bigger_corolla() {
        // ξ of C(2;1): one vertex, one self-incident edge, one remaining input.
        let c = corolla(Flavor::WheeledA, 2, 1);
        let i = *c.inputs().iter().next().unwrap();
        let j = *c.outputs().iter().next().unwrap();
        let g = contract(&c, i, j).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.inner_edges().len(), 1);
        assert_eq!(g.inputs().len(), 1);
        assert_eq!(g.outputs().len(), 0);
        let loop_edge = *g.inner_edges().iter().next().unwrap();
        assert_eq!(g.src(loop_edge), g.tgt(loop_edge));
    }

    #[test]
    fn contract_rejects_wrong_polarity() {
        let c = corolla(Flavor::WheeledA, 1, 1);
        let i = *c.inputs().iter().next().unwrap();
        let j = *c.outputs().iter().next().unwrap();
        assert!(contract(&c, j, i).is_err());
        assert!(contract(&c.with_flavor(Flavor::WheelFree).unwrap(), i, j).is_err());
    }

    #[test]
    fn wheel_free_rejects_cycles_and_loops() {
        assert!(two_cycle(Flavor::WheelFree).is_err());
        assert!(two_cycle(Flavor::WheeledB).is_ok());
        let self_loop = Graph::new(
            Flavor::WheelFree,
            1,
            vec![EdgeRec { src: Some(VertexId(0)), tgt: Some(VertexId(0)), closed: false }],
        );
        assert_eq!(self_loop.unwrap_err(), GraphError::DirectedCycle);
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::new(
            Flavor::WheelFree,
            2,
            vec![EdgeRec { src: Some(VertexId(0)), tgt: None, closed: false }],
        );
        assert_eq!(g.unwrap_err(), GraphError::Disconnected);
        // A free-floating edge beside a vertex is also disconnected.
        let g = Graph::new(Flavor::WheelFree, 1, vec![EdgeRec { src: None, tgt: None, closed: false }]);
        assert_eq!(g.unwrap_err(), GraphError::Disconnected);
    }

    #[test]
    fn closed_edge_only_in_the_loop() {
        let g = Graph::new(
            Flavor::WheeledA,
            1,
            vec![EdgeRec { src: None, tgt: None, closed: true }],
        );
        assert_eq!(g.unwrap_err(), GraphError::ClosedEdgeBesideVertices(EdgeId(0)));
    }

    #[test]
    fn chain_shape() {
        let g = chain(Flavor::WheelFree, 3);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.inner_edges().len(), 2);
        assert_eq!(g.inputs().len(), 1);
        assert_eq!(g.outputs().len(), 1);
        assert!(g.vertices().all(|v| g.is_unary(v)));
        assert_eq!(chain(Flavor::WheelFree, 1), corolla(Flavor::WheelFree, 1, 1));
    }

    #[test]
    fn s_inp_s_out() {
        let g = chain(Flavor::WheelFree, 2);
        assert_eq!(g.s_inp().len(), 2); // inner edge + input leg
        assert_eq!(g.s_out().len(), 2);
        let up = exceptional_edge(Flavor::WheelFree);
        assert_eq!(up.s_inp().len(), 1);
    }
}
