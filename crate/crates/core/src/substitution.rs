//! Graph substitution: replacing every vertex of a host graph by a graph
//! with matching boundary, fusing edges along the correspondences.
//!
//! Inserting `↑` at a `(1;1)`-vertex fuses its two incident edges; this is
//! the degenerate reduction underlying codegeneracy maps. Inserting `↻` at a
//! `(0;0)`-vertex is legal in wheeled flavors only.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{corolla, EdgeId, EdgeRec, Graph, VertexId};

/// A graph to insert at a host vertex, with explicit boundary
/// correspondences. `input_map` matches the inserted graph's input legs to
/// the host vertex's inputs; `output_map` its output legs to the vertex's
/// outputs. The two maps are kept separate because the single edge of `↑`
/// plays both roles at once.
#[derive(Debug, Clone)]
pub struct Insertion {
    pub graph: Graph,
    pub input_map: BTreeMap<EdgeId, EdgeId>,
    pub output_map: BTreeMap<EdgeId, EdgeId>,
}

impl Insertion {
    /// The identity insertion: the corolla with the vertex's own profile,
    /// legs matched to the incident edges in sorted order.
    pub fn corolla_of(host: &Graph, v: VertexId) -> Insertion {
        let ins: Vec<EdgeId> = host.inputs_of(v).into_iter().collect();
        let outs: Vec<EdgeId> = host.outputs_of(v).into_iter().collect();
        let c = corolla(host.flavor(), ins.len(), outs.len());
        let c_in: Vec<EdgeId> = c.inputs().into_iter().collect();
        let c_out: Vec<EdgeId> = c.outputs().into_iter().collect();
        Insertion {
            graph: c,
            input_map: c_in.into_iter().zip(ins).collect(),
            output_map: c_out.into_iter().zip(outs).collect(),
        }
    }

    /// Inserting `↑` at a unary vertex; the degenerate reduction.
    pub fn edge_at(host: &Graph, v: VertexId) -> Insertion {
        assert!(host.is_unary(v), "↑ only fits a (1;1)-vertex");
        let up = crate::graph::exceptional_edge(host.flavor());
        let e = EdgeId(0);
        let b_in = *host.inputs_of(v).iter().next().unwrap();
        let b_out = *host.outputs_of(v).iter().next().unwrap();
        Insertion {
            graph: up,
            input_map: BTreeMap::from([(e, b_in)]),
            output_map: BTreeMap::from([(e, b_out)]),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubstitutionError {
    #[error("vertex {0} has no insertion assigned")]
    MissingVertex(VertexId),
    #[error("profile mismatch at vertex {0}")]
    ProfileMismatch(VertexId),
    #[error("inserting ↻ at vertex {0}: only legal at a (0;0)-vertex in a wheeled flavor")]
    WheelIntoVertex(VertexId),
    #[error("substitution result is not a valid graph: {0}")]
    BadResult(String),
}

/// Where a result edge came from: a host edge, or an inner edge of the graph
/// inserted at some host vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeOrigin {
    Host(EdgeId),
    Inner(VertexId, EdgeId),
}

/// Result of a substitution, with enough provenance to transport
/// decorations and build the induced maps.
#[derive(Debug, Clone)]
pub struct Substituted {
    pub graph: Graph,
    /// Result edge id for every host edge and every inserted inner edge.
    pub edge_class: BTreeMap<EdgeOrigin, EdgeId>,
    /// Result vertex for every vertex of every inserted graph.
    pub vertex_map: BTreeMap<(VertexId, VertexId), VertexId>,
}

impl Substituted {
    pub fn host_edge(&self, e: EdgeId) -> EdgeId {
        self.edge_class[&EdgeOrigin::Host(e)]
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Substitutes `at[v]` into every vertex `v` of `host`. Every vertex must
/// receive an insertion whose boundary is in bijection with the vertex's
/// profile via the given maps.
pub fn substitute(
    host: &Graph,
    at: &BTreeMap<VertexId, Insertion>,
) -> Result<Substituted, SubstitutionError> {
    for v in host.vertices() {
        let ins = at.get(&v).ok_or(SubstitutionError::MissingVertex(v))?;
        let h = &ins.graph;
        if h.is_exceptional_loop() {
            let ok = host.flavor().is_wheeled() && host.valence(v) == 0;
            if !ok {
                return Err(SubstitutionError::WheelIntoVertex(v));
            }
            continue;
        }
        let hin = h.inputs();
        let hout = h.outputs();
        let vin = host.inputs_of(v);
        let vout = host.outputs_of(v);
        let in_ok = ins.input_map.len() == hin.len()
            && hin.iter().all(|e| ins.input_map.contains_key(e))
            && ins.input_map.values().collect::<std::collections::BTreeSet<_>>().len() == vin.len()
            && ins.input_map.values().all(|e| vin.contains(e));
        let out_ok = ins.output_map.len() == hout.len()
            && hout.iter().all(|e| ins.output_map.contains_key(e))
            && ins.output_map.values().collect::<std::collections::BTreeSet<_>>().len()
                == vout.len()
            && ins.output_map.values().all(|e| vout.contains(e));
        if !in_ok || !out_ok {
            return Err(SubstitutionError::ProfileMismatch(v));
        }
    }

    // Flatten all candidate edges into one index space for union-find.
    let mut origins: Vec<EdgeOrigin> = host.edge_ids().map(EdgeOrigin::Host).collect();
    let mut slot: BTreeMap<EdgeOrigin, usize> =
        origins.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    for v in host.vertices() {
        for e in at[&v].graph.edge_ids() {
            let o = EdgeOrigin::Inner(v, e);
            slot.insert(o, origins.len());
            origins.push(o);
        }
    }

    let mut uf = UnionFind::new(origins.len());
    for v in host.vertices() {
        let ins = &at[&v];
        for (&leg, &host_edge) in ins.input_map.iter().chain(ins.output_map.iter()) {
            uf.union(slot[&EdgeOrigin::Inner(v, leg)], slot[&EdgeOrigin::Host(host_edge)]);
        }
    }

    // One result edge per class that contains a host edge or an inserted
    // inner edge; boundary legs of inserted graphs always fuse into host
    // edges, so classes are enumerated by their minimal member.
    let mut class_repr: BTreeMap<usize, Vec<EdgeOrigin>> = BTreeMap::new();
    for (i, &o) in origins.iter().enumerate() {
        let member_counts = match o {
            EdgeOrigin::Host(_) => true,
            EdgeOrigin::Inner(v, e) => {
                let g = &at[&v].graph;
                let rec = g.edge(e);
                rec.closed || (rec.src.is_some() && rec.tgt.is_some())
            }
        };
        if member_counts {
            class_repr.entry(uf.find(i)).or_default().push(o);
        }
    }

    // Result vertex numbering: inserted vertices in (host vertex, inner
    // vertex) order.
    let mut vertex_map = BTreeMap::new();
    let mut next_v = 0u32;
    for v in host.vertices() {
        for w in at[&v].graph.vertices() {
            vertex_map.insert((v, w), VertexId(next_v));
            next_v += 1;
        }
    }

    let mut edge_class: BTreeMap<EdgeOrigin, EdgeId> = BTreeMap::new();
    let mut edges: Vec<EdgeRec> = Vec::new();
    for (root, members) in &class_repr {
        let id = EdgeId(edges.len() as u32);
        let mut src = None;
        let mut tgt = None;
        let mut closed = false;
        let mut open_in = false;
        let mut open_out = false;
        for &o in members {
            match o {
                EdgeOrigin::Host(e) => {
                    let rec = host.edge(e);
                    if rec.closed {
                        closed = true;
                    }
                    if !rec.closed && rec.src.is_none() {
                        open_in = true;
                    }
                    if !rec.closed && rec.tgt.is_none() {
                        open_out = true;
                    }
                }
                EdgeOrigin::Inner(v, e) => {
                    let g = &at[&v].graph;
                    let rec = g.edge(e);
                    if rec.closed {
                        closed = true;
                    }
                    if let Some(s) = rec.src {
                        debug_assert!(src.is_none(), "two producers in one edge class");
                        src = Some(vertex_map[&(v, s)]);
                    }
                    if let Some(t) = rec.tgt {
                        debug_assert!(tgt.is_none(), "two consumers in one edge class");
                        tgt = Some(vertex_map[&(v, t)]);
                    }
                }
            }
        }
        // Also pick up producers/consumers contributed through inserted
        // boundary legs: a host edge out of vertex u continues into the
        // graph inserted at u via the matched leg, whose own src may sit at
        // an inserted vertex. Those legs are in the same class already, so
        // scan the full class (including legs) for endpoints.
        for (i, &o) in origins.iter().enumerate() {
            if uf.find(i) != *root {
                continue;
            }
            if let EdgeOrigin::Inner(v, e) = o {
                let rec = at[&v].graph.edge(e);
                if let Some(s) = rec.src {
                    let rv = vertex_map[&(v, s)];
                    debug_assert!(src.is_none() || src == Some(rv));
                    src = Some(rv);
                }
                if let Some(t) = rec.tgt {
                    let rv = vertex_map[&(v, t)];
                    debug_assert!(tgt.is_none() || tgt == Some(rv));
                    tgt = Some(rv);
                }
            }
        }
        // A class with no endpoints is the free edge when an end stayed
        // open (a host leg), and a closed wheel when every end was consumed.
        if src.is_none() && tgt.is_none() && !closed && !open_in && !open_out {
            closed = true;
        }
        let _ = (open_in, open_out);
        for &o in members {
            edge_class.insert(o, id);
        }
        edges.push(EdgeRec { src, tgt, closed });
    }

    // Record class ids for boundary legs of inserted graphs too.
    let mut full_class: BTreeMap<EdgeOrigin, EdgeId> = BTreeMap::new();
    for (i, &o) in origins.iter().enumerate() {
        let root = uf.find(i);
        if let Some(&id) = class_repr.get(&root).and_then(|m| m.first()).and_then(|r| edge_class.get(r))
        {
            full_class.insert(o, id);
        }
    }

    let graph = Graph::new(host.flavor(), next_v, edges)
        .map_err(|e| SubstitutionError::BadResult(e.to_string()))?;
    Ok(Substituted { graph, edge_class: full_class, vertex_map })
}

/// Substitutes `↑` at every vertex in `degenerate` and the identity corolla
/// everywhere else: the simultaneous degenerate reduction `G(↑_D)`.
pub fn reduce_at(host: &Graph, degenerate: &[VertexId]) -> Result<Substituted, SubstitutionError> {
    let mut at = BTreeMap::new();
    for v in host.vertices() {
        if degenerate.contains(&v) {
            at.insert(v, Insertion::edge_at(host, v));
        } else {
            at.insert(v, Insertion::corolla_of(host, v));
        }
    }
    substitute(host, &at)
}

/// The identity substitution: a corolla at every vertex.
pub fn identity_substitution(host: &Graph) -> Substituted {
    reduce_at(host, &[]).expect("identity substitution is always valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::canonical_key;
    use crate::graph::{
        chain, contracted_unary_corolla, corolla, exceptional_loop, isolated_vertex, Flavor,
    };

    #[test]
    fn unit_law_on_chain() {
        let g = chain(Flavor::WheelFree, 3);
        let s = identity_substitution(&g);
        assert_eq!(canonical_key(&s.graph).unwrap(), canonical_key(&g).unwrap());
        assert_eq!(s.graph.vertex_count(), g.vertex_count());
        assert_eq!(s.graph.edge_count(), g.edge_count());
    }

    #[test]
    fn reduce_chain_fuses_edges() {
        // Two-vertex chain, ↑ at the second vertex: edges b_in and b_out fuse.
        let g = chain(Flavor::WheelFree, 2);
        let s = reduce_at(&g, &[VertexId(1)]).unwrap();
        assert_eq!(s.graph.vertex_count(), 1);
        assert_eq!(s.graph.edge_count(), 2);
        assert_eq!(s.host_edge(EdgeId(1)), s.host_edge(EdgeId(2)));
        assert_ne!(s.host_edge(EdgeId(0)), s.host_edge(EdgeId(1)));
    }

    #[test]
    fn reduce_unary_corolla_gives_exceptional_edge() {
        let g = corolla(Flavor::WheelFree, 1, 1);
        let s = reduce_at(&g, &[VertexId(0)]).unwrap();
        assert!(s.graph.is_exceptional_edge());
    }

    #[test]
    fn reduce_contracted_corolla_gives_loop() {
        let g = contracted_unary_corolla(Flavor::WheeledA).unwrap();
        let s = reduce_at(&g, &[VertexId(0)]).unwrap();
        assert!(s.graph.is_exceptional_loop());
    }

    #[test]
    fn wheel_into_isolated_vertex() {
        let dot = isolated_vertex(Flavor::WheeledA);
        let wheel = exceptional_loop(Flavor::WheeledA).unwrap();
        let at = BTreeMap::from([(
            VertexId(0),
            Insertion { graph: wheel, input_map: BTreeMap::new(), output_map: BTreeMap::new() },
        )]);
        let s = substitute(&dot, &at).unwrap();
        assert!(s.graph.is_exceptional_loop());
    }

    #[test]
    fn wheel_into_proper_vertex_rejected() {
        let g = corolla(Flavor::WheeledA, 1, 1);
        let wheel = exceptional_loop(Flavor::WheeledA).unwrap();
        let at = BTreeMap::from([(
            VertexId(0),
            Insertion { graph: wheel, input_map: BTreeMap::new(), output_map: BTreeMap::new() },
        )]);
        assert_eq!(substitute(&g, &at).unwrap_err(), SubstitutionError::WheelIntoVertex(VertexId(0)));
    }

    #[test]
    fn profile_mismatch_rejected() {
        let g = corolla(Flavor::WheelFree, 2, 1);
        let mut at = BTreeMap::new();
        // C(1;1) into a (2;1)-vertex.
        let c = corolla(Flavor::WheelFree, 1, 1);
        let c_in = *c.inputs().iter().next().unwrap();
        let c_out = *c.outputs().iter().next().unwrap();
        at.insert(
            VertexId(0),
            Insertion {
                graph: c,
                input_map: BTreeMap::from([(c_in, EdgeId(0))]),
                output_map: BTreeMap::from([(c_out, EdgeId(2))]),
            },
        );
        assert!(matches!(
            substitute(&g, &at).unwrap_err(),
            SubstitutionError::ProfileMismatch(_)
        ));
    }

    #[test]
    fn expand_vertex_into_chain() {
        // Substituting a 2-chain into C(1;1)'s vertex gives a 2-chain.
        let host = corolla(Flavor::WheelFree, 1, 1);
        let inner = chain(Flavor::WheelFree, 2);
        let h_in = *inner.inputs().iter().next().unwrap();
        let h_out = *inner.outputs().iter().next().unwrap();
        let at = BTreeMap::from([(
            VertexId(0),
            Insertion {
                graph: inner.clone(),
                input_map: BTreeMap::from([(h_in, EdgeId(0))]),
                output_map: BTreeMap::from([(h_out, EdgeId(1))]),
            },
        )]);
        let s = substitute(&host, &at).unwrap();
        assert_eq!(canonical_key(&s.graph).unwrap(), canonical_key(&inner).unwrap());
    }

    #[test]
    fn associativity_two_stage() {
        // Reduce a 3-chain at {1} then at the image of {2}, versus both at once.
        let g = chain(Flavor::WheelFree, 3);
        let one = reduce_at(&g, &[VertexId(1), VertexId(2)]).unwrap();
        let first = reduce_at(&g, &[VertexId(1)]).unwrap();
        let v2_image = first.vertex_map[&(VertexId(2), VertexId(0))];
        let second = reduce_at(&first.graph, &[v2_image]).unwrap();
        assert_eq!(
            canonical_key(&one.graph).unwrap(),
            canonical_key(&second.graph).unwrap()
        );
        assert!(one.graph.is_exceptional_edge() == second.graph.is_exceptional_edge());
    }

    #[test]
    fn inner_edge_count_additive() {
        // |edgei| of G(H_v) = surviving host inner edges + Σ inserted inner edges.
        let host = chain(Flavor::WheelFree, 2);
        let inner = chain(Flavor::WheelFree, 2);
        let h_in = *inner.inputs().iter().next().unwrap();
        let h_out = *inner.outputs().iter().next().unwrap();
        let mut at = BTreeMap::new();
        at.insert(
            VertexId(0),
            Insertion {
                graph: inner.clone(),
                input_map: BTreeMap::from([(h_in, EdgeId(0))]),
                output_map: BTreeMap::from([(h_out, EdgeId(1))]),
            },
        );
        at.insert(VertexId(1), Insertion::corolla_of(&host, VertexId(1)));
        let s = substitute(&host, &at).unwrap();
        assert_eq!(
            s.graph.inner_edges().len(),
            host.inner_edges().len() + inner.inner_edges().len()
        );
    }
}
