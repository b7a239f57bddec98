//! Finite one-colored (wheeled) properads as graph algebras, the two
//! concrete examples (set-endomorphisms and Boolean matrices), and the
//! nerve functor into truncated graphical sets.

use std::collections::BTreeMap;

use rand::Rng;

use crate::catalog::CatalogCtx;
use crate::graph::{EdgeId, Flavor, Graph, VertexId};
use crate::presheaf::TruncatedPresheaf;
use crate::subgraph::Subgraph;
use crate::substitution::Substituted;

/// Per-vertex decoration: a component element plus explicit slot-to-edge
/// bijections for the vertex's inputs and outputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexDecoration {
    pub element: u32,
    pub in_slots: Vec<EdgeId>,
    pub out_slots: Vec<EdgeId>,
}

/// A finite properad presented through its components and a graph
/// evaluation. `eval` receives a decorated graph together with the desired
/// slot order of the result's boundary and returns the composite element of
/// `component(|inputs|, |outputs|)`.
pub trait FiniteProperad: Sync {
    fn flavor(&self) -> Flavor;
    fn arity_bound(&self) -> usize;
    fn component_size(&self, inputs: usize, outputs: usize) -> usize;
    fn eval(&self, g: &Graph, dec: &[VertexDecoration], inputs: &[EdgeId], outputs: &[EdgeId])
        -> u32;
    fn name(&self) -> String;
}

/// The endomorphism properad of a finite set: `component(n,m)` is every
/// function from `n`-tuples to `m`-tuples, and evaluation composes
/// functions along the dataflow of a wheel-free graph.
pub struct EndProperad {
    pub set_size: usize,
    pub arity_bound: usize,
}

impl EndProperad {
    pub fn new(set_size: usize, arity_bound: usize) -> Self {
        assert!(set_size >= 1);
        EndProperad { set_size, arity_bound }
    }

    fn tuples(&self, len: usize) -> usize {
        self.set_size.pow(len as u32)
    }

    /// Function elements are mixed-radix tables: for each input tuple index
    /// the index of the output tuple.
    fn apply(&self, element: u32, n: usize, m: usize, input_tuple: usize) -> usize {
        let base = self.tuples(m);
        let mut table = element as usize;
        for _ in 0..input_tuple {
            table /= base;
        }
        table % base
    }

    /// Evaluation by edge-value propagation in a chosen vertex order; the
    /// order must be topological (callers can pass any valid one).
    pub fn eval_in_order(
        &self,
        g: &Graph,
        dec: &[VertexDecoration],
        inputs: &[EdgeId],
        outputs: &[EdgeId],
        order: &[VertexId],
    ) -> u32 {
        assert!(g.is_wheel_free(), "set endomorphisms have no trace");
        let k = self.set_size;
        let out_base = self.tuples(outputs.len());
        let mut result = 0u64;
        let mut weight = 1u64;
        for input_tuple in 0..self.tuples(inputs.len()) {
            let mut edge_val: Vec<Option<usize>> = vec![None; g.edge_count()];
            let mut rem = input_tuple;
            for &e in inputs {
                edge_val[e.index()] = Some(rem % k);
                rem /= k;
            }
            for &v in order {
                let d = &dec[v.index()];
                let mut in_tuple = 0usize;
                let mut w = 1usize;
                for &e in &d.in_slots {
                    in_tuple += edge_val[e.index()].expect("order must be topological") * w;
                    w *= k;
                }
                let mut out_tuple =
                    self.apply(d.element, d.in_slots.len(), d.out_slots.len(), in_tuple);
                for &e in &d.out_slots {
                    edge_val[e.index()] = Some(out_tuple % k);
                    out_tuple /= k;
                }
            }
            let mut out_idx = 0usize;
            let mut w = 1usize;
            for &e in outputs {
                out_idx += edge_val[e.index()].expect("outputs must be reached") * w;
                w *= k;
            }
            result += out_idx as u64 * weight;
            weight *= out_base as u64;
        }
        u32::try_from(result).expect("component sizes stay in range")
    }

    /// A canonical topological order over the inner-edge dataflow.
    pub fn topological_order(g: &Graph) -> Vec<VertexId> {
        let n = g.vertex_count();
        let mut indeg = vec![0usize; n];
        for e in g.edge_ids() {
            if let (Some(_), Some(t)) = (g.src(e), g.tgt(e)) {
                indeg[t.index()] += 1;
            }
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(VertexId(v as u32));
            for e in g.edge_ids() {
                if g.src(e) == Some(VertexId(v as u32)) {
                    if let Some(t) = g.tgt(e) {
                        indeg[t.index()] -= 1;
                        if indeg[t.index()] == 0 {
                            ready.push(t.index());
                        }
                    }
                }
            }
        }
        assert_eq!(order.len(), n, "graph has a directed cycle");
        order
    }
}

impl FiniteProperad for EndProperad {
    fn flavor(&self) -> Flavor {
        Flavor::WheelFree
    }

    fn arity_bound(&self) -> usize {
        self.arity_bound
    }

    fn component_size(&self, inputs: usize, outputs: usize) -> usize {
        self.tuples(outputs).pow(self.tuples(inputs) as u32)
    }

    fn eval(
        &self,
        g: &Graph,
        dec: &[VertexDecoration],
        inputs: &[EdgeId],
        outputs: &[EdgeId],
    ) -> u32 {
        self.eval_in_order(g, dec, inputs, outputs, &Self::topological_order(g))
    }

    fn name(&self) -> String {
        format!("end{}", self.set_size)
    }
}

/// Boolean matrices under tensor-network contraction: `component(n,m)` is
/// the set of relations between `k^n` inputs and `k^m` outputs, and
/// evaluation sums over all index assignments of inner and closed edges in
/// the Boolean semiring. The trace of the identity is 1, so `eval(↻) = 1`.
pub struct MatrixEnd {
    pub index_size: usize,
    pub arity_bound: usize,
    pub flavor: Flavor,
}

impl MatrixEnd {
    pub fn new(index_size: usize, arity_bound: usize, flavor: Flavor) -> Self {
        assert!(index_size >= 1 && flavor.is_wheeled());
        MatrixEnd { index_size, arity_bound, flavor }
    }

    fn bit(&self, element: u32, n: usize, out_idx: usize, in_idx: usize) -> bool {
        let pos = out_idx * self.index_size.pow(n as u32) + in_idx;
        element & (1 << pos) != 0
    }
}

impl FiniteProperad for MatrixEnd {
    fn flavor(&self) -> Flavor {
        self.flavor
    }

    fn arity_bound(&self) -> usize {
        self.arity_bound
    }

    fn component_size(&self, inputs: usize, outputs: usize) -> usize {
        1usize << self.index_size.pow((inputs + outputs) as u32)
    }

    fn eval(
        &self,
        g: &Graph,
        dec: &[VertexDecoration],
        inputs: &[EdgeId],
        outputs: &[EdgeId],
    ) -> u32 {
        let k = self.index_size;
        let free: Vec<EdgeId> = g
            .edge_ids()
            .filter(|e| !inputs.contains(e) && !outputs.contains(e))
            .collect();
        let mut result = 0u32;
        for out_idx in 0..k.pow(outputs.len() as u32) {
            'pair: for in_idx in 0..k.pow(inputs.len() as u32) {
                let mut edge_val = vec![0usize; g.edge_count()];
                let mut assigned = vec![false; g.edge_count()];
                let mut rem = in_idx;
                for &e in inputs {
                    edge_val[e.index()] = rem % k;
                    assigned[e.index()] = true;
                    rem /= k;
                }
                let mut rem = out_idx;
                for &e in outputs {
                    let val = rem % k;
                    rem /= k;
                    // An edge serving as both boundary input and output
                    // (the edge of ↑) pins one shared value.
                    if assigned[e.index()] && edge_val[e.index()] != val {
                        continue 'pair;
                    }
                    edge_val[e.index()] = val;
                    assigned[e.index()] = true;
                }
                let mut any = false;
                for assignment in 0..k.pow(free.len() as u32) {
                    let mut rem = assignment;
                    for &e in &free {
                        edge_val[e.index()] = rem % k;
                        rem /= k;
                    }
                    let ok = g.vertices().all(|v| {
                        let d = &dec[v.index()];
                        let mut vin = 0usize;
                        let mut w = 1usize;
                        for &e in &d.in_slots {
                            vin += edge_val[e.index()] * w;
                            w *= k;
                        }
                        let mut vout = 0usize;
                        let mut w = 1usize;
                        for &e in &d.out_slots {
                            vout += edge_val[e.index()] * w;
                            w *= k;
                        }
                        self.bit(d.element, d.in_slots.len(), vout, vin)
                    });
                    if ok {
                        any = true;
                        break;
                    }
                }
                if any {
                    let pos = out_idx * k.pow(inputs.len() as u32) + in_idx;
                    result |= 1 << pos;
                }
            }
        }
        result
    }

    fn name(&self) -> String {
        format!("matrixend{}", self.index_size)
    }
}

/// Decoration slots for a catalog vertex, in the fixed sorted-edge
/// convention the nerve uses everywhere.
pub fn sorted_slots(g: &Graph, v: VertexId) -> (Vec<EdgeId>, Vec<EdgeId>) {
    (
        g.inputs_of(v).into_iter().collect(),
        g.outputs_of(v).into_iter().collect(),
    )
}

/// Encodes/decodes nerve elements as mixed-radix tuples of per-vertex
/// component elements.
pub struct NerveIndex {
    pub sizes: Vec<usize>,
}

impl NerveIndex {
    pub fn new(p: &dyn FiniteProperad, g: &Graph) -> Self {
        let sizes = g
            .vertices()
            .map(|v| {
                let (ins, outs) = sorted_slots(g, v);
                p.component_size(ins.len(), outs.len())
            })
            .collect();
        NerveIndex { sizes }
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().product::<usize>().max(1)
    }

    pub fn decode(&self, mut idx: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.sizes.len());
        for &s in &self.sizes {
            out.push(idx % s as u32);
            idx /= s as u32;
        }
        out
    }

    pub fn encode(&self, elems: &[u32]) -> u32 {
        let mut idx = 0u64;
        let mut weight = 1u64;
        for (&e, &s) in elems.iter().zip(&self.sizes) {
            idx += e as u64 * weight;
            weight *= s as u64;
        }
        idx as u32
    }
}

/// Full decoration of `g` from a nerve element, in sorted-slot convention.
pub fn decoration_of(p: &dyn FiniteProperad, g: &Graph, elems: &[u32]) -> Vec<VertexDecoration> {
    g.vertices()
        .map(|v| {
            let (ins, outs) = sorted_slots(g, v);
            VertexDecoration { element: elems[v.index()], in_slots: ins, out_slots: outs }
        })
        .collect()
}

/// The nerve of a finite properad: values are decorations in the sorted
/// slot convention; a morphism acts by evaluating each target sub-decoration
/// down to a single element per source vertex.
pub fn nerve(ctx: &CatalogCtx, p: &dyn FiniteProperad, bound: usize) -> TruncatedPresheaf {
    let included = crate::presheaf::included_graphs(ctx, bound);
    let mut card = BTreeMap::new();
    for &g in &included {
        card.insert(g, NerveIndex::new(p, ctx.graph(g)).total());
    }
    let mut actions = std::collections::HashMap::new();
    for &gi in &included {
        for &ki in &included {
            for (pos, m) in ctx.hom(gi, ki).iter().enumerate() {
                let table: Vec<u32> = (0..card[&ki] as u32)
                    .map(|x| nerve_action(ctx, p, gi, ki, m, x))
                    .collect();
                actions.insert((gi, ki, pos), table);
            }
        }
    }
    TruncatedPresheaf { bound, card, actions }
}

/// Action of `m: G → K` on a nerve element of `K`: each source vertex
/// receives the evaluation of its assigned subgraph's decoration, with the
/// result's slots matched to the vertex's edges through the edge action.
pub fn nerve_action(
    ctx: &CatalogCtx,
    p: &dyn FiniteProperad,
    gi: usize,
    ki: usize,
    m: &crate::morphism::GraphMorphism,
    x: u32,
) -> u32 {
    let g = ctx.graph(gi);
    let k = ctx.graph(ki);
    let k_elems = NerveIndex::new(p, k).decode(x);
    let mut out = Vec::with_capacity(g.vertex_count());
    for v in g.vertices() {
        let sub = m.map_vertex(v);
        let (piece, edge_back, vert_back) = sub.to_graph(k);
        // Transport the target decoration to the piece: slot edges are
        // identified through `edge_back`, which is injective except for a
        // split self-loop, whose two occurrences are disambiguated by role.
        let piece_dec: Vec<VertexDecoration> = piece
            .vertices()
            .map(|w| {
                let kv = vert_back[w.index()];
                let element = k_elems[kv.index()];
                let to_piece = |amb: &EdgeId, role_inputs: bool| -> EdgeId {
                    let candidates: Vec<EdgeId> = piece
                        .edge_ids()
                        .filter(|&pe| {
                            edge_back[pe.index()] == *amb
                                && if role_inputs {
                                    piece.tgt(pe) == Some(w)
                                } else {
                                    piece.src(pe) == Some(w)
                                }
                        })
                        .collect();
                    candidates[0]
                };
                let in_slots: Vec<EdgeId> =
                    k.inputs_of(kv).iter().map(|e| to_piece(e, true)).collect();
                let out_slots: Vec<EdgeId> =
                    k.outputs_of(kv).iter().map(|e| to_piece(e, false)).collect();
                VertexDecoration { element, in_slots, out_slots }
            })
            .collect();
        // Result boundary order: v's sorted edges, translated into piece
        // edges through f0 (role-aware for the exceptional edge piece).
        let (v_ins, v_outs) = sorted_slots(g, v);
        let boundary = |edges: &[EdgeId], want_inputs: bool| -> Vec<EdgeId> {
            edges
                .iter()
                .map(|&e| {
                    let amb = m.map_edge(e);
                    piece
                        .edge_ids()
                        .find(|&pe| {
                            edge_back[pe.index()] == amb
                                && if want_inputs {
                                    piece.src(pe).is_none() && !piece.is_closed_edge(pe)
                                } else {
                                    piece.tgt(pe).is_none() && !piece.is_closed_edge(pe)
                                }
                        })
                        .expect("boundary edge present in the piece")
                })
                .collect()
        };
        let ins = boundary(&v_ins, true);
        let outs = boundary(&v_outs, false);
        out.push(p.eval(&piece, &piece_dec, &ins, &outs));
    }
    NerveIndex::new(p, g).encode(&out)
}

/// Outcome of the algebra-axiom check.
#[derive(Debug, Clone)]
pub struct AlgebraReport {
    pub unit_checked: usize,
    pub substitution_checked: usize,
    pub failure: Option<String>,
}

impl AlgebraReport {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

/// Verifies the unit law on every component element and substitution
/// compatibility on sampled catalog substitutions with random decorations.
pub fn check_algebra_axioms(
    ctx: &CatalogCtx,
    p: &dyn FiniteProperad,
    samples: usize,
    seed: u64,
) -> AlgebraReport {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);

    // Unit: evaluating a corolla decorated by x returns x.
    let mut unit_checked = 0usize;
    for n in 0..=p.arity_bound() {
        for mm in 0..=(p.arity_bound() - n) {
            let c = crate::graph::corolla(p.flavor(), n, mm);
            let (ins, outs) = sorted_slots(&c, VertexId(0));
            for x in 0..p.component_size(n, mm) as u32 {
                let dec = vec![VertexDecoration {
                    element: x,
                    in_slots: ins.clone(),
                    out_slots: outs.clone(),
                }];
                let got = p.eval(&c, &dec, &ins, &outs);
                unit_checked += 1;
                if got != x {
                    return AlgebraReport {
                        unit_checked,
                        substitution_checked: 0,
                        failure: Some(format!(
                            "unit law fails on C({n};{mm}) element {x}: got {got}"
                        )),
                    };
                }
            }
        }
    }

    // Substitution compatibility on random host/insert pairs.
    let hosts: Vec<usize> = (0..ctx.len())
        .filter(|&i| {
            let g = ctx.graph(i);
            g.vertex_count() >= 1 && (p.flavor() != Flavor::WheelFree || g.is_wheel_free())
        })
        .collect();
    let mut substitution_checked = 0usize;
    let mut attempts = 0usize;
    while substitution_checked < samples && attempts < samples * 50 {
        attempts += 1;
        let host = ctx.graph(hosts[rng.gen_range(0..hosts.len())]).clone();
        let v = VertexId(rng.gen_range(0..host.vertex_count()) as u32);
        // Insert a compatible catalog graph with at least one vertex.
        let n_in = host.inputs_of(v).len();
        let n_out = host.outputs_of(v).len();
        let candidates: Vec<usize> = (0..ctx.len())
            .filter(|&i| {
                let h = ctx.graph(i);
                h.vertex_count() >= 1
                    && h.inputs().len() == n_in
                    && h.outputs().len() == n_out
                    && (p.flavor() != Flavor::WheelFree || h.is_wheel_free())
            })
            .collect();
        if candidates.is_empty() {
            continue;
        }
        let inner = ctx.graph(candidates[rng.gen_range(0..candidates.len())]).clone();
        if let Some(fail) =
            substitution_case(p, &host, v, &inner, &mut rng)
        {
            return AlgebraReport {
                unit_checked,
                substitution_checked,
                failure: Some(fail),
            };
        }
        substitution_checked += 1;
    }
    AlgebraReport { unit_checked, substitution_checked, failure: None }
}

fn substitution_case(
    p: &dyn FiniteProperad,
    host: &Graph,
    v: VertexId,
    inner: &Graph,
    rng: &mut impl Rng,
) -> Option<String> {
    use crate::substitution::{substitute, Insertion};
    let mut at: BTreeMap<VertexId, Insertion> = BTreeMap::new();
    for u in host.vertices() {
        if u == v {
            let h_in: Vec<EdgeId> = inner.inputs().into_iter().collect();
            let h_out: Vec<EdgeId> = inner.outputs().into_iter().collect();
            let v_in: Vec<EdgeId> = host.inputs_of(v).into_iter().collect();
            let v_out: Vec<EdgeId> = host.outputs_of(v).into_iter().collect();
            at.insert(
                u,
                Insertion {
                    graph: inner.clone(),
                    input_map: h_in.into_iter().zip(v_in).collect(),
                    output_map: h_out.into_iter().zip(v_out).collect(),
                },
            );
        } else {
            at.insert(u, Insertion::corolla_of(host, u));
        }
    }
    let Ok(sub) = substitute(host, &at) else { return None };
    if p.flavor() == Flavor::WheelFree && !sub.graph.is_wheel_free() {
        return None;
    }

    // Random decorations of the inserted graph and the other host vertices.
    let inner_dec: Vec<VertexDecoration> = inner
        .vertices()
        .map(|w| {
            let (ins, outs) = sorted_slots(inner, w);
            VertexDecoration {
                element: rng.gen_range(0..p.component_size(ins.len(), outs.len()) as u32),
                in_slots: ins,
                out_slots: outs,
            }
        })
        .collect();
    let host_elems: Vec<u32> = host
        .vertices()
        .map(|u| {
            let (ins, outs) = sorted_slots(host, u);
            rng.gen_range(0..p.component_size(ins.len(), outs.len()) as u32)
        })
        .collect();

    // Route 1: evaluate the inserted graph, then the host.
    let v_in: Vec<EdgeId> = host.inputs_of(v).into_iter().collect();
    let v_out: Vec<EdgeId> = host.outputs_of(v).into_iter().collect();
    let at_v = &at[&v];
    let inner_inputs: Vec<EdgeId> = v_in
        .iter()
        .map(|hv| *at_v.input_map.iter().find(|(_, host_e)| *host_e == hv).unwrap().0)
        .collect();
    let inner_outputs: Vec<EdgeId> = v_out
        .iter()
        .map(|hv| *at_v.output_map.iter().find(|(_, host_e)| *host_e == hv).unwrap().0)
        .collect();
    let collapsed = p.eval(inner, &inner_dec, &inner_inputs, &inner_outputs);
    let host_dec: Vec<VertexDecoration> = host
        .vertices()
        .map(|u| {
            let (ins, outs) = sorted_slots(host, u);
            VertexDecoration {
                element: if u == v { collapsed } else { host_elems[u.index()] },
                in_slots: ins,
                out_slots: outs,
            }
        })
        .collect();
    let host_in: Vec<EdgeId> = host.inputs().into_iter().collect();
    let host_out: Vec<EdgeId> = host.outputs().into_iter().collect();
    let route1 = p.eval(host, &host_dec, &host_in, &host_out);

    // Route 2: evaluate the substituted graph with transported decorations.
    let route2 = eval_substituted(p, host, &at, &sub, &inner_dec, &host_elems, v);
    if route1 != route2 {
        return Some(format!(
            "substitution compatibility fails: host {host:?}, vertex {v}, inner {inner:?}: {route1} vs {route2}"
        ));
    }
    None
}

fn eval_substituted(
    p: &dyn FiniteProperad,
    host: &Graph,
    at: &BTreeMap<VertexId, crate::substitution::Insertion>,
    sub: &Substituted,
    inner_dec: &[VertexDecoration],
    host_elems: &[u32],
    v: VertexId,
) -> u32 {
    use crate::substitution::EdgeOrigin;
    let result = &sub.graph;
    let mut dec: Vec<VertexDecoration> = vec![
        VertexDecoration { element: 0, in_slots: vec![], out_slots: vec![] };
        result.vertex_count()
    ];
    for (&(hu, wu), &rv) in &sub.vertex_map {
        let ins_graph = &at[&hu].graph;
        let (ins, outs) = sorted_slots(ins_graph, wu);
        let element = if hu == v {
            inner_dec[wu.index()].element
        } else {
            host_elems[hu.index()]
        };
        dec[rv.index()] = VertexDecoration {
            element,
            in_slots: ins
                .iter()
                .map(|&e| sub.edge_class[&EdgeOrigin::Inner(hu, e)])
                .collect(),
            out_slots: outs
                .iter()
                .map(|&e| sub.edge_class[&EdgeOrigin::Inner(hu, e)])
                .collect(),
        };
    }
    let inputs: Vec<EdgeId> = host.inputs().into_iter().map(|e| sub.host_edge(e)).collect();
    let outputs: Vec<EdgeId> = host.outputs().into_iter().map(|e| sub.host_edge(e)).collect();
    p.eval(&sub.graph, &dec, &inputs, &outputs)
}

/// A properad wrapper with a deliberately corrupted evaluation (two output
/// slots swapped on multi-output graphs); the algebra axioms must flag it.
pub struct Corrupted<'a>(pub &'a dyn FiniteProperad);

impl FiniteProperad for Corrupted<'_> {
    fn flavor(&self) -> Flavor {
        self.0.flavor()
    }

    fn arity_bound(&self) -> usize {
        self.0.arity_bound()
    }

    fn component_size(&self, inputs: usize, outputs: usize) -> usize {
        self.0.component_size(inputs, outputs)
    }

    fn eval(
        &self,
        g: &Graph,
        dec: &[VertexDecoration],
        inputs: &[EdgeId],
        outputs: &[EdgeId],
    ) -> u32 {
        if outputs.len() >= 2 && g.vertex_count() >= 1 {
            let mut swapped = outputs.to_vec();
            swapped.swap(0, 1);
            return self.0.eval(g, dec, inputs, &swapped);
        }
        self.0.eval(g, dec, inputs, outputs)
    }

    fn name(&self) -> String {
        format!("{}-corrupted", self.0.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{enumerate_graphs, Bounds};
    use crate::graph::{chain, corolla, exceptional_edge, exceptional_loop};

    #[test]
    fn end_eval_on_edge_is_identity() {
        let p = EndProperad::new(2, 3);
        let up = exceptional_edge(Flavor::WheelFree);
        let e = EdgeId(0);
        let got = p.eval(&up, &[], &[e], &[e]);
        // The identity function's table: output tuple = input tuple.
        let expected = (0..2).fold(0u32, |acc, i| acc + (i as u32) * 2u32.pow(i));
        assert_eq!(got, expected);
    }

    #[test]
    fn end_eval_composes_unary_functions() {
        let p = EndProperad::new(2, 3);
        let g = chain(Flavor::WheelFree, 2);
        // f = NOT (table: 0↦1, 1↦0 → 1 + 0*2 = 1), g = NOT; g∘f = id.
        let not_table = 1u32 + 0 * 2;
        let dec: Vec<VertexDecoration> = g
            .vertices()
            .map(|v| {
                let (ins, outs) = sorted_slots(&g, v);
                VertexDecoration { element: not_table, in_slots: ins, out_slots: outs }
            })
            .collect();
        let ins: Vec<EdgeId> = g.inputs().into_iter().collect();
        let outs: Vec<EdgeId> = g.outputs().into_iter().collect();
        let got = p.eval(&g, &dec, &ins, &outs);
        let id_table = 0 + 1 * 2;
        assert_eq!(got, id_table);
    }

    #[test]
    fn end_eval_order_independent() {
        let p = EndProperad::new(2, 3);
        let g = chain(Flavor::WheelFree, 3);
        let dec: Vec<VertexDecoration> = g
            .vertices()
            .map(|v| {
                let (ins, outs) = sorted_slots(&g, v);
                VertexDecoration { element: 1, in_slots: ins, out_slots: outs }
            })
            .collect();
        let ins: Vec<EdgeId> = g.inputs().into_iter().collect();
        let outs: Vec<EdgeId> = g.outputs().into_iter().collect();
        let orders = [
            vec![VertexId(0), VertexId(1), VertexId(2)],
            EndProperad::topological_order(&g),
        ];
        let vals: Vec<u32> =
            orders.iter().map(|o| p.eval_in_order(&g, &dec, &ins, &outs, o)).collect();
        assert_eq!(vals[0], vals[1]);
    }

    #[test]
    fn matrix_eval_on_edge_is_identity_matrix() {
        let p = MatrixEnd::new(2, 3, Flavor::WheeledA);
        let up = exceptional_edge(Flavor::WheeledA);
        let e = EdgeId(0);
        let got = p.eval(&up, &[], &[e], &[e]);
        // Identity relation: bits at out == in.
        let expected = (0..2).fold(0u32, |acc, i| acc | 1 << (i * 2 + i));
        assert_eq!(got, expected);
    }

    #[test]
    fn matrix_eval_trace() {
        let p = MatrixEnd::new(2, 3, Flavor::WheeledA);
        // Trace of a (1;1)-matrix on the contracted corolla.
        let xi = crate::graph::contracted_unary_corolla(Flavor::WheeledA).unwrap();
        let (ins, outs) = sorted_slots(&xi, VertexId(0));
        let identity = 0b1001u32;
        let dec = vec![VertexDecoration { element: identity, in_slots: ins, out_slots: outs }];
        assert_eq!(p.eval(&xi, &dec, &[], &[]), 1);
        let no_fixed = 0b0110u32; // the swap matrix has empty trace diagonal? bits at (0,1),(1,0)
        let (ins, outs) = sorted_slots(&xi, VertexId(0));
        let dec = vec![VertexDecoration { element: no_fixed, in_slots: ins, out_slots: outs }];
        assert_eq!(p.eval(&xi, &dec, &[], &[]), 0);
    }

    #[test]
    fn matrix_eval_wheel_is_one() {
        let p = MatrixEnd::new(2, 3, Flavor::WheeledA);
        let wheel = exceptional_loop(Flavor::WheeledA).unwrap();
        assert_eq!(p.eval(&wheel, &[], &[], &[]), 1);
    }

    #[test]
    fn nerve_values_and_functoriality() {
        let ctx = CatalogCtx::new(enumerate_graphs(
            Flavor::WheelFree,
            Bounds { max_vertices: 2, max_inner: 1, max_valence: 2, max_legs: 2 },
        ));
        let p = EndProperad::new(2, 3);
        let k = nerve(&ctx, &p, 9);
        let up = ctx.catalog.class_of(&exceptional_edge(Flavor::WheelFree)).unwrap();
        assert_eq!(k.cardinality(up), 1);
        let c11 = ctx.catalog.class_of(&corolla(Flavor::WheelFree, 1, 1)).unwrap();
        assert_eq!(k.cardinality(c11), p.component_size(1, 1));
        assert_eq!(k.validate(&ctx), Ok(()));
    }

    #[test]
    fn wheeled_nerve_functorial_with_exceptional_coface() {
        let ctx = CatalogCtx::new(enumerate_graphs(
            Flavor::WheeledA,
            Bounds { max_vertices: 1, max_inner: 1, max_valence: 2, max_legs: 2 },
        ));
        let p = MatrixEnd::new(2, 3, Flavor::WheeledA);
        let k = nerve(&ctx, &p, 9);
        assert_eq!(k.validate(&ctx), Ok(()));
        // NP(↻) is a singleton; the exceptional coface evaluates the trace.
        let wheel = ctx
            .catalog
            .class_of(&exceptional_loop(Flavor::WheeledA).unwrap())
            .unwrap();
        assert_eq!(k.cardinality(wheel), 1);
        let dot = ctx
            .catalog
            .class_of(&crate::graph::isolated_vertex(Flavor::WheeledA))
            .unwrap();
        let d = &ctx.hom(dot, wheel)[0];
        let table = k.action_of(&ctx, dot, wheel, d);
        // The wheel's one decoration pulls back to the scalar 1 at `•`.
        assert_eq!(table, &vec![1u32]);
    }

    #[test]
    fn algebra_axioms_hold_and_corruption_detected() {
        let ctx = CatalogCtx::new(enumerate_graphs(
            Flavor::WheelFree,
            Bounds { max_vertices: 2, max_inner: 2, max_valence: 3, max_legs: 3 },
        ));
        let p = EndProperad::new(2, 3);
        let report = check_algebra_axioms(&ctx, &p, 40, 7);
        assert!(report.pass(), "{:?}", report.failure);
        let bad = Corrupted(&p);
        let report = check_algebra_axioms(&ctx, &bad, 60, 7);
        assert!(!report.pass());
    }
}
