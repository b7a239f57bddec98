//! Subgraphs of a connected graph: edge subgraphs `↑_e`, connected vertex
//! spans, corollas at vertices, and the whole wheel when the ambient graph
//! is `↻`.
//!
//! A span keeps self-incident edges inner; the corolla at a vertex splits
//! them into an input and an output slot. The two notions coincide for
//! vertices without self-loops, so `Corolla(v)` is only a distinct value at
//! self-looped vertices (which exist in wheeled flavors only).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, EdgeRec, Graph, VertexId};

/// A subgraph of an ambient graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Subgraph {
    /// The copy of `↑` sitting at one edge.
    Edge(EdgeId),
    /// The full subgraph induced by a nonempty connected vertex set: every
    /// incident edge belongs to it; edges with one endpoint outside become
    /// legs, edges with both endpoints inside (including self-loops) are
    /// inner.
    Span(BTreeSet<VertexId>),
    /// The corolla at a self-looped vertex: incident self-loops appear as
    /// both an input and an output leg instead of staying inner. For
    /// loop-free vertices use `Span({v})`, which is the same subgraph.
    Corolla(VertexId),
    /// `↻` as a subgraph of itself.
    Wheel,
}

impl Subgraph {
    /// The corolla of `v` in `g`, in normal form: `Corolla(v)` when `v`
    /// carries a self-loop and `Span({v})` otherwise.
    pub fn corolla_at(g: &Graph, v: VertexId) -> Subgraph {
        if has_self_loop(g, v) {
            Subgraph::Corolla(v)
        } else {
            Subgraph::Span(BTreeSet::from([v]))
        }
    }

    /// The vertices of the ambient graph covered by this subgraph.
    pub fn span_vertices(&self) -> BTreeSet<VertexId> {
        match self {
            Subgraph::Span(w) => w.clone(),
            Subgraph::Corolla(v) => BTreeSet::from([*v]),
            Subgraph::Edge(_) | Subgraph::Wheel => BTreeSet::new(),
        }
    }

    pub fn is_edge(&self) -> bool {
        matches!(self, Subgraph::Edge(_))
    }

    /// The vertex whose corolla this is, if the subgraph is a corolla of
    /// the ambient graph.
    pub fn as_corolla(&self, g: &Graph) -> Option<VertexId> {
        match self {
            Subgraph::Corolla(v) => Some(*v),
            Subgraph::Span(w) if w.len() == 1 => {
                let v = *w.iter().next().unwrap();
                (!has_self_loop(g, v)).then_some(v)
            }
            _ => None,
        }
    }

    /// Checks that the subgraph is well-formed inside `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        match self {
            Subgraph::Edge(e) => e.index() < g.edge_count(),
            Subgraph::Wheel => g.is_exceptional_loop(),
            Subgraph::Corolla(v) => v.index() < g.vertex_count() && has_self_loop(g, *v),
            Subgraph::Span(w) => {
                !w.is_empty()
                    && w.iter().all(|v| v.index() < g.vertex_count())
                    && span_is_connected(g, w)
            }
        }
    }

    /// Input legs of the subgraph, as edges of the ambient graph.
    pub fn input_boundary(&self, g: &Graph) -> BTreeSet<EdgeId> {
        match self {
            Subgraph::Edge(e) => BTreeSet::from([*e]),
            Subgraph::Wheel => BTreeSet::new(),
            Subgraph::Corolla(v) => g.inputs_of(*v),
            Subgraph::Span(w) => g
                .edge_ids()
                .filter(|&e| {
                    let rec = g.edge(e);
                    incident_to(rec, w) && !rec.src.is_some_and(|s| w.contains(&s))
                })
                .collect(),
        }
    }

    /// Output legs of the subgraph, as edges of the ambient graph.
    pub fn output_boundary(&self, g: &Graph) -> BTreeSet<EdgeId> {
        match self {
            Subgraph::Edge(e) => BTreeSet::from([*e]),
            Subgraph::Wheel => BTreeSet::new(),
            Subgraph::Corolla(v) => g.outputs_of(*v),
            Subgraph::Span(w) => g
                .edge_ids()
                .filter(|&e| {
                    let rec = g.edge(e);
                    incident_to(rec, w) && !rec.tgt.is_some_and(|t| w.contains(&t))
                })
                .collect(),
        }
    }

    /// All ambient edges belonging to the subgraph.
    pub fn edges_in(&self, g: &Graph) -> BTreeSet<EdgeId> {
        match self {
            Subgraph::Edge(e) => BTreeSet::from([*e]),
            Subgraph::Wheel => g.edge_ids().collect(),
            Subgraph::Corolla(v) => g
                .edge_ids()
                .filter(|&e| g.src(e) == Some(*v) || g.tgt(e) == Some(*v))
                .collect(),
            Subgraph::Span(w) => g.edge_ids().filter(|&e| incident_to(g.edge(e), w)).collect(),
        }
    }

    /// Ambient edges that are inner to the subgraph: both endpoints inside
    /// and, for corollas, not a (split) self-loop.
    pub fn inner_edges_in(&self, g: &Graph) -> BTreeSet<EdgeId> {
        match self {
            Subgraph::Edge(_) => BTreeSet::new(),
            Subgraph::Corolla(_) => BTreeSet::new(),
            Subgraph::Wheel => g.edge_ids().collect(),
            Subgraph::Span(w) => g
                .edge_ids()
                .filter(|&e| {
                    let rec = g.edge(e);
                    rec.src.is_some_and(|s| w.contains(&s))
                        && rec.tgt.is_some_and(|t| w.contains(&t))
                })
                .collect(),
        }
    }

    /// Realizes the subgraph as a standalone graph. The second component
    /// maps the standalone edge ids back to ambient edge ids (a split
    /// self-loop appears twice); the third maps standalone vertices back.
    pub fn to_graph(&self, g: &Graph) -> (Graph, Vec<EdgeId>, Vec<VertexId>) {
        match self {
            Subgraph::Edge(e) => {
                (crate::graph::exceptional_edge(g.flavor()), vec![*e], vec![])
            }
            Subgraph::Wheel => (g.clone(), vec![EdgeId(0)], vec![]),
            Subgraph::Corolla(v) => {
                let ins: Vec<EdgeId> = g.inputs_of(*v).into_iter().collect();
                let outs: Vec<EdgeId> = g.outputs_of(*v).into_iter().collect();
                let c = crate::graph::corolla(g.flavor(), ins.len(), outs.len());
                // Corolla edges are emitted inputs first, then outputs.
                let mut edge_back = ins;
                edge_back.extend(outs);
                (c, edge_back, vec![*v])
            }
            Subgraph::Span(w) => {
                let verts: Vec<VertexId> = w.iter().copied().collect();
                let vmap = |v: VertexId| {
                    w.iter().position(|&x| x == v).map(|i| VertexId(i as u32))
                };
                let mut edge_back = Vec::new();
                let mut edges = Vec::new();
                for e in g.edge_ids() {
                    let rec = g.edge(e);
                    if !incident_to(rec, w) {
                        continue;
                    }
                    edge_back.push(e);
                    edges.push(EdgeRec {
                        src: rec.src.and_then(vmap),
                        tgt: rec.tgt.and_then(vmap),
                        closed: false,
                    });
                }
                let sub = Graph::new_unchecked(g.flavor(), verts.len() as u32, edges);
                (sub, edge_back, verts)
            }
        }
    }
}

pub(crate) fn has_self_loop(g: &Graph, v: VertexId) -> bool {
    g.edge_ids().any(|e| g.src(e) == Some(v) && g.tgt(e) == Some(v))
}

fn incident_to(rec: &EdgeRec, w: &BTreeSet<VertexId>) -> bool {
    rec.src.is_some_and(|s| w.contains(&s)) || rec.tgt.is_some_and(|t| w.contains(&t))
}

fn span_is_connected(g: &Graph, w: &BTreeSet<VertexId>) -> bool {
    let verts: Vec<VertexId> = w.iter().copied().collect();
    if verts.is_empty() {
        return false;
    }
    let mut seen = BTreeSet::from([verts[0]]);
    let mut stack = vec![verts[0]];
    while let Some(v) = stack.pop() {
        for e in g.edge_ids() {
            let rec = g.edge(e);
            if let (Some(s), Some(t)) = (rec.src, rec.tgt) {
                if s == v && w.contains(&t) && seen.insert(t) {
                    stack.push(t);
                }
                if t == v && w.contains(&s) && seen.insert(s) {
                    stack.push(s);
                }
            }
        }
    }
    seen.len() == w.len()
}

/// Enumerates every subgraph of `g`: all edge subgraphs, all connected
/// vertex spans, corollas at self-looped vertices, and the wheel for `↻`.
pub fn subgraphs_of(g: &Graph) -> Vec<Subgraph> {
    let mut out: Vec<Subgraph> = g.edge_ids().map(Subgraph::Edge).collect();
    let n = g.vertex_count();
    for mask in 1u32..(1 << n) {
        let w: BTreeSet<VertexId> =
            (0..n).filter(|i| mask & (1 << i) != 0).map(|i| VertexId(i as u32)).collect();
        if span_is_connected(g, &w) {
            out.push(Subgraph::Span(w));
        }
    }
    for v in g.vertices() {
        if has_self_loop(g, v) {
            out.push(Subgraph::Corolla(v));
        }
    }
    if g.is_exceptional_loop() {
        out.push(Subgraph::Wheel);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        chain, contracted_unary_corolla, exceptional_edge, exceptional_loop, isolated_vertex,
        Flavor,
    };

    #[test]
    fn exceptional_edge_has_only_itself() {
        let up = exceptional_edge(Flavor::WheeledA);
        let subs = subgraphs_of(&up);
        assert_eq!(subs, vec![Subgraph::Edge(EdgeId(0))]);
    }

    #[test]
    fn loop_has_edge_and_wheel() {
        let wheel = exceptional_loop(Flavor::WheeledA).unwrap();
        let subs = subgraphs_of(&wheel);
        assert_eq!(subs.len(), 2);
        assert!(subs.contains(&Subgraph::Edge(EdgeId(0))));
        assert!(subs.contains(&Subgraph::Wheel));
    }

    #[test]
    fn two_vertex_chain_has_six_subgraphs() {
        // 3 edge subgraphs, 2 corolla spans, the whole graph.
        let g = chain(Flavor::WheelFree, 2);
        assert_eq!(subgraphs_of(&g).len(), 6);
    }

    #[test]
    fn contracted_corolla_subgraphs() {
        // ↑_e, the whole graph (loop inner), and the split corolla.
        let xi = contracted_unary_corolla(Flavor::WheeledA).unwrap();
        let subs = subgraphs_of(&xi);
        assert_eq!(subs.len(), 3);
        assert!(subs.contains(&Subgraph::Corolla(VertexId(0))));
        let whole = Subgraph::Span(BTreeSet::from([VertexId(0)]));
        assert!(subs.contains(&whole));
        assert!(whole.input_boundary(&xi).is_empty());
        let corolla = Subgraph::Corolla(VertexId(0));
        assert_eq!(corolla.input_boundary(&xi), BTreeSet::from([EdgeId(0)]));
        assert_eq!(corolla.output_boundary(&xi), BTreeSet::from([EdgeId(0)]));
    }

    #[test]
    fn isolated_vertex_has_one_subgraph() {
        let dot = isolated_vertex(Flavor::WheelFree);
        assert_eq!(
            subgraphs_of(&dot),
            vec![Subgraph::Span(BTreeSet::from([VertexId(0)]))]
        );
    }

    #[test]
    fn span_boundaries() {
        let g = chain(Flavor::WheelFree, 2);
        let s = Subgraph::corolla_at(&g, VertexId(0));
        assert_eq!(s.input_boundary(&g), BTreeSet::from([EdgeId(0)]));
        assert_eq!(s.output_boundary(&g), BTreeSet::from([EdgeId(1)]));
        let whole = Subgraph::Span([VertexId(0), VertexId(1)].into());
        assert_eq!(whole.input_boundary(&g), BTreeSet::from([EdgeId(0)]));
        assert_eq!(whole.output_boundary(&g), BTreeSet::from([EdgeId(2)]));
    }

    #[test]
    fn disconnected_span_rejected() {
        let g = chain(Flavor::WheelFree, 3);
        let w = Subgraph::Span([VertexId(0), VertexId(2)].into());
        assert!(!w.is_valid_in(&g));
    }

    #[test]
    fn corolla_only_at_looped_vertices() {
        let g = chain(Flavor::WheeledA, 2);
        assert!(!Subgraph::Corolla(VertexId(0)).is_valid_in(&g));
        assert_eq!(
            Subgraph::corolla_at(&g, VertexId(0)),
            Subgraph::Span(BTreeSet::from([VertexId(0)]))
        );
    }

    #[test]
    fn span_to_graph_roundtrip() {
        let g = chain(Flavor::WheelFree, 3);
        let (sub, edge_back, verts) =
            Subgraph::Span([VertexId(0), VertexId(1)].into()).to_graph(&g);
        assert_eq!(sub.vertex_count(), 2);
        assert_eq!(sub.edge_count(), 3); // leg in, inner, leg out (cut)
        assert_eq!(verts, vec![VertexId(0), VertexId(1)]);
        assert_eq!(edge_back.len(), 3);
    }

    #[test]
    fn corolla_to_graph_splits_loop() {
        let xi = contracted_unary_corolla(Flavor::WheeledA).unwrap();
        let (sub, edge_back, verts) = Subgraph::Corolla(VertexId(0)).to_graph(&xi);
        assert_eq!(sub.vertex_count(), 1);
        assert_eq!(sub.edge_count(), 2);
        assert_eq!(edge_back, vec![EdgeId(0), EdgeId(0)]);
        assert_eq!(verts, vec![VertexId(0)]);
        assert!(sub.inner_edges().is_empty());
    }
}
