//! Graphical maps between (wheeled) graphs: an edge action `f0` and a
//! vertex-to-subgraph action `f1`, valid when the assembled image embeds as
//! a subgraph of the target.
//!
//! Hom-sets are enumerated exhaustively; everything downstream (Reedy
//! axioms, EZ structure, Segal conditions) is built on these enumerations.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{EdgeId, Graph, VertexId};
use crate::subgraph::Subgraph;

/// A morphism of graphs: total edge map plus a subgraph of the target for
/// every source vertex. Endpoints are part of the value; two morphisms are
/// equal only when their endpoints, `f0`, and `f1` all agree.
#[derive(Debug, Clone)]
pub struct GraphMorphism {
    source: Arc<Graph>,
    target: Arc<Graph>,
    f0: Vec<EdgeId>,
    f1: Vec<Subgraph>,
}

impl PartialEq for GraphMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.f0 == other.f0
            && self.f1 == other.f1
            && *self.source == *other.source
            && *self.target == *other.target
    }
}

impl Eq for GraphMorphism {}

impl PartialOrd for GraphMorphism {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GraphMorphism {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&*self.source, &*self.target, &self.f0, &self.f1).cmp(&(
            &*other.source,
            &*other.target,
            &other.f0,
            &other.f1,
        ))
    }
}

impl std::hash::Hash for GraphMorphism {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.source.hash(state);
        self.target.hash(state);
        self.f0.hash(state);
        self.f1.hash(state);
    }
}

/// Why a candidate morphism fails validation.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MorphismInvalid {
    #[error("malformed data: {0}")]
    Malformed(String),
    #[error("closed-edge violation: {0} must land on a closed edge")]
    ClosedEdgeViolation(EdgeId),
    #[error("profile mismatch at vertex {0}")]
    ProfileMismatch(VertexId),
    #[error("image not a subgraph: {0}")]
    ImageNotSubgraph(String),
}

/// Coarse classification of a valid morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MorphismClass {
    Isomorphism,
    Codegeneracy,
    InnerCoface,
    OuterCoface,
    ExceptionalInnerCoface,
    Composite,
}

impl GraphMorphism {
    pub fn new(
        source: Arc<Graph>,
        target: Arc<Graph>,
        f0: Vec<EdgeId>,
        f1: Vec<Subgraph>,
    ) -> Self {
        GraphMorphism { source, target, f0, f1 }
    }

    pub fn identity(g: Arc<Graph>) -> Self {
        let f0 = g.edge_ids().collect();
        let f1 = g.vertices().map(|v| Subgraph::corolla_at(&g, v)).collect();
        GraphMorphism { source: g.clone(), target: g, f0, f1 }
    }

    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Graph> {
        &self.target
    }

    pub fn f0(&self) -> &[EdgeId] {
        &self.f0
    }

    pub fn f1(&self) -> &[Subgraph] {
        &self.f1
    }

    pub fn map_edge(&self, e: EdgeId) -> EdgeId {
        self.f0[e.index()]
    }

    pub fn map_vertex(&self, v: VertexId) -> &Subgraph {
        &self.f1[v.index()]
    }

    pub fn is_identity(&self) -> bool {
        *self.source == *self.target && *self == GraphMorphism::identity(self.source.clone())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    /// Full validity check: totality, the closed-edge rule, per-vertex
    /// profile bijections, and embedding of the assembled image.
    pub fn check(&self) -> Result<(), MorphismInvalid> {
        let g = &*self.source;
        let k = &*self.target;
        if self.f0.len() != g.edge_count() || self.f1.len() != g.vertex_count() {
            return Err(MorphismInvalid::Malformed("f0/f1 arity".into()));
        }
        if self.f0.iter().any(|e| e.index() >= k.edge_count()) {
            return Err(MorphismInvalid::Malformed("f0 out of range".into()));
        }
        for e in g.edge_ids() {
            if g.is_closed_edge(e) && !k.is_closed_edge(self.map_edge(e)) {
                return Err(MorphismInvalid::ClosedEdgeViolation(e));
            }
        }
        for v in g.vertices() {
            let s = self.map_vertex(v);
            if !s.is_valid_in(k) {
                return Err(MorphismInvalid::ImageNotSubgraph(format!(
                    "f1({v}) is not a subgraph of the target"
                )));
            }
            let want_in = s.input_boundary(k);
            let want_out = s.output_boundary(k);
            let got_in: BTreeSet<EdgeId> =
                g.inputs_of(v).iter().map(|&e| self.map_edge(e)).collect();
            let got_out: BTreeSet<EdgeId> =
                g.outputs_of(v).iter().map(|&e| self.map_edge(e)).collect();
            if got_in != want_in
                || got_out != want_out
                || got_in.len() != g.inputs_of(v).len()
                || got_out.len() != g.outputs_of(v).len()
            {
                return Err(MorphismInvalid::ProfileMismatch(v));
            }
        }
        // Span disjointness across vertices.
        let mut covered: BTreeSet<VertexId> = BTreeSet::new();
        for v in g.vertices() {
            for w in self.map_vertex(v).span_vertices() {
                if !covered.insert(w) {
                    return Err(MorphismInvalid::ImageNotSubgraph(format!(
                        "overlapping spans at target vertex {w}"
                    )));
                }
            }
        }
        self.check_image(&covered)
    }

    /// Assembles the substituted image and verifies it embeds as a subgraph.
    fn check_image(&self, span: &BTreeSet<VertexId>) -> Result<(), MorphismInvalid> {
        let g = &*self.source;
        let k = &*self.target;

        // Union-find over source edges; each class must land on a single
        // target edge injectively and with matching incidence.
        let mut parent: Vec<usize> = (0..g.edge_count()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for v in g.vertices() {
            if self.map_vertex(v).is_edge() {
                // Edge-valued vertex: everything incident fuses together.
                let incident: Vec<EdgeId> = g
                    .inputs_of(v)
                    .into_iter()
                    .chain(g.outputs_of(v))
                    .collect();
                for pair in incident.windows(2) {
                    let (a, b) = (find(&mut parent, pair[0].index()), find(&mut parent, pair[1].index()));
                    if a != b {
                        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                        parent[hi] = lo;
                    }
                }
            }
        }

        struct ClassInfo {
            image: EdgeId,
            src: Option<VertexId>,
            tgt: Option<VertexId>,
            closed: bool,
            open_in: bool,
            open_out: bool,
        }
        let mut classes: BTreeMap<usize, ClassInfo> = BTreeMap::new();
        for e in g.edge_ids() {
            let root = find(&mut parent, e.index());
            let image = self.map_edge(e);
            let info = classes.entry(root).or_insert(ClassInfo {
                image,
                src: None,
                tgt: None,
                closed: false,
                open_in: false,
                open_out: false,
            });
            if info.image != image {
                return Err(MorphismInvalid::ImageNotSubgraph(format!(
                    "edge class around {e} maps to two distinct target edges"
                )));
            }
            let rec = g.edge(e);
            if rec.closed {
                info.closed = true;
            }
            if !rec.closed && rec.src.is_none() {
                info.open_in = true;
            }
            if !rec.closed && rec.tgt.is_none() {
                info.open_out = true;
            }
            // Endpoint placement: the producing end survives when the vertex
            // maps to a span or corolla; it then sits at the covered target
            // vertex that produces the image edge.
            if let Some(sv) = rec.src {
                let w = self.map_vertex(sv).span_vertices();
                if !w.is_empty() {
                    match k.src(image) {
                        Some(ks) if w.contains(&ks) => {
                            if info.src.is_some() && info.src != Some(ks) {
                                return Err(MorphismInvalid::ImageNotSubgraph(
                                    "two producers in one edge class".into(),
                                ));
                            }
                            info.src = Some(ks);
                        }
                        _ => {
                            return Err(MorphismInvalid::ImageNotSubgraph(format!(
                                "edge {e} leaves the span assigned to its producer"
                            )));
                        }
                    }
                }
            }
            if let Some(tv) = rec.tgt {
                let w = self.map_vertex(tv).span_vertices();
                if !w.is_empty() {
                    match k.tgt(image) {
                        Some(kt) if w.contains(&kt) => {
                            if info.tgt.is_some() && info.tgt != Some(kt) {
                                return Err(MorphismInvalid::ImageNotSubgraph(
                                    "two consumers in one edge class".into(),
                                ));
                            }
                            info.tgt = Some(kt);
                        }
                        _ => {
                            return Err(MorphismInvalid::ImageNotSubgraph(format!(
                                "edge {e} leaves the span assigned to its consumer"
                            )));
                        }
                    }
                }
            }
        }

        // Inner edges of the inserted subgraphs are their own classes with
        // identity image; collect them for completeness and injectivity.
        let mut images: BTreeSet<EdgeId> = BTreeSet::new();
        for info in classes.values() {
            if !images.insert(info.image) {
                return Err(MorphismInvalid::ImageNotSubgraph(
                    "two edge classes share a target edge".into(),
                ));
            }
        }
        for v in g.vertices() {
            for e in self.map_vertex(v).inner_edges_in(k) {
                if !images.insert(e) {
                    return Err(MorphismInvalid::ImageNotSubgraph(
                        "inner edge of an inserted subgraph collides with another image".into(),
                    ));
                }
            }
        }

        for info in classes.values() {
            let image = info.image;
            let derived_closed = info.closed
                || (info.src.is_none()
                    && info.tgt.is_none()
                    && !info.open_in
                    && !info.open_out);
            if derived_closed && !k.is_closed_edge(image) {
                return Err(MorphismInvalid::ImageNotSubgraph(format!(
                    "a fused cycle lands on the open edge {image}"
                )));
            }
            match info.src {
                Some(w) => {
                    if k.src(image) != Some(w) {
                        return Err(MorphismInvalid::ImageNotSubgraph(format!(
                            "producer mismatch at {image}"
                        )));
                    }
                }
                None => {
                    if !derived_closed {
                        if let Some(ks) = k.src(image) {
                            if span.contains(&ks) {
                                return Err(MorphismInvalid::ImageNotSubgraph(format!(
                                    "{image} is produced inside the image span but its class is open"
                                )));
                            }
                        }
                    }
                }
            }
            match info.tgt {
                Some(w) => {
                    if k.tgt(image) != Some(w) {
                        return Err(MorphismInvalid::ImageNotSubgraph(format!(
                            "consumer mismatch at {image}"
                        )));
                    }
                }
                None => {
                    if !derived_closed {
                        if let Some(kt) = k.tgt(image) {
                            if span.contains(&kt) {
                                return Err(MorphismInvalid::ImageNotSubgraph(format!(
                                    "{image} is consumed inside the image span but its class is open"
                                )));
                            }
                        }
                    }
                }
            }
        }

        // Completeness: a vertex span carries every incident target edge.
        if !span.is_empty() {
            for e in k.edge_ids() {
                let rec = k.edge(e);
                let incident = rec.src.is_some_and(|s| span.contains(&s))
                    || rec.tgt.is_some_and(|t| span.contains(&t));
                if incident && !images.contains(&e) {
                    return Err(MorphismInvalid::ImageNotSubgraph(format!(
                        "target edge {e} is incident to the image span but missed by the image"
                    )));
                }
            }
        }
        Ok(())
    }

    /// True iff `f0` is a structure-preserving bijection and every vertex
    /// maps to a corolla, bijectively.
    pub fn is_isomorphism(&self) -> bool {
        let g = &*self.source;
        let k = &*self.target;
        if g.vertex_count() != k.vertex_count() || g.edge_count() != k.edge_count() {
            return false;
        }
        let mut seen_edges = BTreeSet::new();
        for e in g.edge_ids() {
            let image = self.map_edge(e);
            if !seen_edges.insert(image) {
                return false;
            }
            if g.is_closed_edge(e) != k.is_closed_edge(image) {
                return false;
            }
        }
        let mut seen = BTreeSet::new();
        self.f1
            .iter()
            .all(|s| s.as_corolla(&self.target).is_some_and(|w| seen.insert(w)))
    }

    /// No vertex maps to an edge: membership in the plus subcategory.
    pub fn in_plus(&self) -> bool {
        !self.f1.iter().any(|s| s.is_edge())
    }

    /// Isomorphism, or: every vertex maps to an edge or corolla, every
    /// target corolla is hit, the source has a vertex, and collapsing the
    /// edge-valued vertices induces an isomorphism onto the target.
    /// Membership in the minus subcategory (isomorphisms composed with
    /// iterated codegeneracies).
    ///
    /// The last clause only has content for the vertexless wheeled target
    /// `↻`, where the corolla-cover condition is vacuous and would wrongly
    /// admit degenerate maps factoring through `↑`.
    pub fn in_minus(&self) -> bool {
        if self.is_isomorphism() {
            return true;
        }
        if self.source.vertex_count() == 0 {
            return false;
        }
        let mut hit: BTreeSet<VertexId> = BTreeSet::new();
        for s in &self.f1 {
            if s.is_edge() {
                continue;
            }
            match s.as_corolla(&self.target) {
                Some(w) => {
                    hit.insert(w);
                }
                None => return false,
            }
        }
        if hit.len() != self.target.vertex_count() {
            return false;
        }
        self.collapse_is_iso()
    }

    /// Fuses the source's edges across its edge-valued vertices and checks
    /// the induced edge map is a bijection onto the target's edges that
    /// preserves and reflects wheel markers.
    fn collapse_is_iso(&self) -> bool {
        let g = &*self.source;
        let k = &*self.target;
        let mut parent: Vec<usize> = (0..g.edge_count()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for v in g.vertices() {
            if self.map_vertex(v).is_edge() {
                let incident: Vec<EdgeId> =
                    g.inputs_of(v).into_iter().chain(g.outputs_of(v)).collect();
                for pair in incident.windows(2) {
                    let (a, b) =
                        (find(&mut parent, pair[0].index()), find(&mut parent, pair[1].index()));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        // Anchored classes end at a surviving vertex or a leg; anchorless
        // classes are cycles fully consumed by the collapse and must land
        // on wheel edges.
        let mut class_anchor: BTreeMap<usize, bool> = BTreeMap::new();
        let mut class_image: BTreeMap<usize, EdgeId> = BTreeMap::new();
        for e in g.edge_ids() {
            let root = find(&mut parent, e.index());
            class_image.insert(root, self.map_edge(e));
            let rec = g.edge(e);
            let anchored = rec.closed
                || rec.src.is_none()
                || rec.tgt.is_none()
                || rec.src.is_some_and(|v| !self.map_vertex(v).is_edge())
                || rec.tgt.is_some_and(|v| !self.map_vertex(v).is_edge());
            *class_anchor.entry(root).or_insert(false) |= anchored;
        }
        if class_image.len() != k.edge_count() {
            return false;
        }
        let mut seen: BTreeSet<EdgeId> = BTreeSet::new();
        for (root, image) in &class_image {
            if !seen.insert(*image) {
                return false;
            }
            let class_closed = !class_anchor[root]
                || g.edge_ids().any(|e| {
                    find(&mut parent, e.index()) == *root && g.is_closed_edge(e)
                });
            if class_closed != k.is_closed_edge(*image) {
                return false;
            }
        }
        true
    }

    /// Classification per degree arithmetic in the source's flavor.
    pub fn classify(&self) -> MorphismClass {
        if self.is_isomorphism() {
            return MorphismClass::Isomorphism;
        }
        if self.in_minus() {
            let drops = self.f1.iter().filter(|s| s.is_edge()).count();
            if drops == 1 {
                return MorphismClass::Codegeneracy;
            }
            return MorphismClass::Composite;
        }
        let flavor = self.source.flavor();
        let rises = self.target.degree(flavor) as isize - self.source.degree(flavor) as isize;
        if self.in_plus() && rises == 1 {
            if self.source.is_isolated_vertex() && self.target.is_exceptional_loop() {
                return MorphismClass::ExceptionalInnerCoface;
            }
            let covered: usize = self.f1.iter().map(|s| s.span_vertices().len()).sum();
            if covered == self.target.vertex_count() {
                return MorphismClass::InnerCoface;
            }
            return MorphismClass::OuterCoface;
        }
        MorphismClass::Composite
    }
}

/// `g ∘ f`; errors when the endpoints do not line up on the nose.
pub fn compose(g: &GraphMorphism, f: &GraphMorphism) -> Result<GraphMorphism, MorphismInvalid> {
    if *f.target != *g.source {
        return Err(MorphismInvalid::Malformed("endpoint mismatch in composition".into()));
    }
    let f0 = f.f0.iter().map(|&e| g.map_edge(e)).collect();
    let mut f1 = Vec::with_capacity(f.f1.len());
    for s in &f.f1 {
        let image = match s {
            Subgraph::Edge(e) => Subgraph::Edge(g.map_edge(*e)),
            Subgraph::Wheel => Subgraph::Wheel,
            // A corolla forwards to whatever the second map assigns the
            // covered vertex; same for a loop-free single-vertex span.
            Subgraph::Corolla(w) => g.map_vertex(*w).clone(),
            Subgraph::Span(w) if w.len() == 1 => {
                let v = *w.iter().next().unwrap();
                if crate::subgraph::has_self_loop(&f.target, v) {
                    // A loop-closed corolla: its loops stay closed, so the
                    // image keeps the covered vertices span-style.
                    span_image(g, f, w)
                } else {
                    g.map_vertex(v).clone()
                }
            }
            Subgraph::Span(w) => span_image(g, f, w),
        };
        f1.push(image);
    }
    let out = GraphMorphism::new(f.source.clone(), g.target.clone(), f0, f1);
    if out.check().is_ok() {
        return Ok(out);
    }
    // The structural image is occasionally not a legal subgraph value (a
    // source thread fused onto both sides of one target edge). Morphisms
    // are determined by their edge action, so rebuild the unique vertex
    // action compatible with the composite edge action.
    reconstruct(f.source.clone(), g.target.clone(), out.f0)
}

/// The unique morphism with the given edge action, found by searching
/// vertex assignments whose boundaries match the fixed `f0`.
pub fn reconstruct(
    source: Arc<Graph>,
    target: Arc<Graph>,
    f0: Vec<EdgeId>,
) -> Result<GraphMorphism, MorphismInvalid> {
    let subs = crate::subgraph::subgraphs_of(&target);
    let mut candidates: Vec<Vec<Subgraph>> = Vec::new();
    for v in source.vertices() {
        let want_in: BTreeSet<EdgeId> =
            source.inputs_of(v).iter().map(|&e| f0[e.index()]).collect();
        let want_out: BTreeSet<EdgeId> =
            source.outputs_of(v).iter().map(|&e| f0[e.index()]).collect();
        let opts: Vec<Subgraph> = subs
            .iter()
            .filter(|s| {
                s.input_boundary(&target) == want_in && s.output_boundary(&target) == want_out
            })
            .cloned()
            .collect();
        if opts.is_empty() {
            return Err(MorphismInvalid::Malformed(
                "composite admits no vertex action for its edge action".into(),
            ));
        }
        candidates.push(opts);
    }
    let mut found: Option<GraphMorphism> = None;
    let mut pick = vec![0usize; candidates.len()];
    loop {
        let f1: Vec<Subgraph> = pick
            .iter()
            .enumerate()
            .map(|(i, &j)| candidates[i][j].clone())
            .collect();
        let m = GraphMorphism::new(source.clone(), target.clone(), f0.clone(), f1);
        if m.check().is_ok() {
            assert!(
                found.is_none(),
                "edge action admits two distinct vertex actions; faithfulness violated"
            );
            found = Some(m);
        }
        let mut i = 0;
        loop {
            if i == pick.len() {
                return found.ok_or(MorphismInvalid::Malformed(
                    "no valid vertex action for the composite edge action".into(),
                ));
            }
            pick[i] += 1;
            if pick[i] < candidates[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Image of a (loop-closed) span under the second factor of a composition.
fn span_image(g: &GraphMorphism, f: &GraphMorphism, w: &BTreeSet<VertexId>) -> Subgraph {
    let mut union: BTreeSet<VertexId> = BTreeSet::new();
    let mut saw_wheel = false;
    for v in w {
        match g.map_vertex(*v) {
            Subgraph::Edge(_) => {}
            Subgraph::Wheel => saw_wheel = true,
            other => union.extend(other.span_vertices()),
        }
    }
    if !union.is_empty() {
        Subgraph::Span(union)
    } else if saw_wheel {
        Subgraph::Wheel
    } else {
        // The span collapses: all its edges fuse into one edge of the
        // final target. A boundaryless span collapses to a cycle, i.e. the
        // whole wheel; anything else stays a thread on an edge subgraph.
        let sub = Subgraph::Span(w.clone());
        let e0 = *sub
            .edges_in(&f.target)
            .iter()
            .next()
            .expect("spans in connected graphs touch an edge");
        let k = g.map_edge(e0);
        let boundaryless = sub.input_boundary(&f.target).is_empty()
            && sub.output_boundary(&f.target).is_empty();
        if boundaryless {
            Subgraph::Wheel
        } else {
            Subgraph::Edge(k)
        }
    }
}

/// Exhaustively enumerates all valid morphisms `source → target`.
///
/// The search walks the source's vertices, assigning each a candidate
/// subgraph of the target with a matching boundary and extending `f0`
/// consistently; the full validity check prunes the survivors.
pub fn hom_set(
    source: Arc<Graph>,
    target: Arc<Graph>,
    target_subgraphs: &[Subgraph],
) -> Vec<GraphMorphism> {
    let g = &*source;
    let k = &*target;
    let mut out = Vec::new();

    if g.vertex_count() == 0 {
        // ↑ maps to any edge; ↻ only to closed edges.
        let e = EdgeId(0);
        for cand in k.edge_ids() {
            if g.is_closed_edge(e) && !k.is_closed_edge(cand) {
                continue;
            }
            let m = GraphMorphism::new(source.clone(), target.clone(), vec![cand], vec![]);
            if m.is_valid() {
                out.push(m);
            }
        }
        return out;
    }

    // Pre-index candidate subgraphs by boundary sizes.
    let mut by_profile: BTreeMap<(usize, usize), Vec<&Subgraph>> = BTreeMap::new();
    for s in target_subgraphs {
        let key = (s.input_boundary(k).len(), s.output_boundary(k).len());
        by_profile.entry(key).or_default().push(s);
    }

    let verts: Vec<VertexId> = g.vertices().collect();
    let mut f0: Vec<Option<EdgeId>> = vec![None; g.edge_count()];
    let mut f1: Vec<Subgraph> = vec![Subgraph::Wheel; g.vertex_count()];
    search(
        g,
        k,
        &by_profile,
        &verts,
        0,
        &mut f0,
        &mut f1,
        &mut |f0, f1| {
            let m = GraphMorphism::new(
                source.clone(),
                target.clone(),
                f0.iter().map(|e| e.unwrap()).collect(),
                f1.to_vec(),
            );
            if m.is_valid() {
                out.push(m);
            }
        },
    );
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &Graph,
    k: &Graph,
    by_profile: &BTreeMap<(usize, usize), Vec<&Subgraph>>,
    verts: &[VertexId],
    depth: usize,
    f0: &mut Vec<Option<EdgeId>>,
    f1: &mut Vec<Subgraph>,
    emit: &mut dyn FnMut(&[Option<EdgeId>], &[Subgraph]),
) {
    if depth == verts.len() {
        if f0.iter().all(|e| e.is_some()) {
            emit(f0, f1);
        }
        return;
    }
    let v = verts[depth];
    let ins: Vec<EdgeId> = g.inputs_of(v).into_iter().collect();
    let outs: Vec<EdgeId> = g.outputs_of(v).into_iter().collect();
    if let Some(cands) = by_profile.get(&(ins.len(), outs.len())) {
        for cand in cands {
            let want_in: Vec<EdgeId> = cand.input_boundary(k).into_iter().collect();
            let want_out: Vec<EdgeId> = cand.output_boundary(k).into_iter().collect();
            for in_perm in permutations_of(want_in.len()) {
                if !assignment_consistent(f0, &ins, &want_in, &in_perm) {
                    continue;
                }
                for out_perm in permutations_of(want_out.len()) {
                    if !assignment_consistent(f0, &outs, &want_out, &out_perm) {
                        continue;
                    }
                    // Self-loops appear in both lists; cross-check.
                    let mut trial: Vec<(EdgeId, EdgeId)> = Vec::new();
                    for (i, &e) in ins.iter().enumerate() {
                        trial.push((e, want_in[in_perm[i]]));
                    }
                    for (i, &e) in outs.iter().enumerate() {
                        trial.push((e, want_out[out_perm[i]]));
                    }
                    let mut consistent = true;
                    let mut assigned: Vec<(EdgeId, EdgeId)> = Vec::new();
                    for &(e, img) in &trial {
                        match f0[e.index()] {
                            Some(prev) if prev != img => {
                                consistent = false;
                                break;
                            }
                            Some(_) => {}
                            None => {
                                if let Some(&(_, other)) =
                                    assigned.iter().find(|&&(ae, _)| ae == e)
                                {
                                    if other != img {
                                        consistent = false;
                                        break;
                                    }
                                } else {
                                    assigned.push((e, img));
                                }
                            }
                        }
                    }
                    if !consistent {
                        continue;
                    }
                    for &(e, img) in &assigned {
                        f0[e.index()] = Some(img);
                    }
                    f1[v.index()] = (*cand).clone();
                    search(g, k, by_profile, verts, depth + 1, f0, f1, emit);
                    for &(e, _) in &assigned {
                        f0[e.index()] = None;
                    }
                }
            }
        }
    }
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for v in 0..n {
                if !p.contains(&v) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

fn assignment_consistent(
    f0: &[Option<EdgeId>],
    edges: &[EdgeId],
    want: &[EdgeId],
    perm: &[usize],
) -> bool {
    edges
        .iter()
        .enumerate()
        .all(|(i, &e)| f0[e.index()].is_none_or(|prev| prev == want[perm[i]]))
}

/// Convenience wrapper computing the target's subgraphs on the fly.
pub fn hom_set_graphs(source: &Graph, target: &Graph) -> Vec<GraphMorphism> {
    let subs = crate::subgraph::subgraphs_of(target);
    hom_set(Arc::new(source.clone()), Arc::new(target.clone()), &subs)
}

/// All isomorphisms between two graphs.
pub fn isomorphisms_between(a: &Graph, b: &Graph) -> Vec<GraphMorphism> {
    hom_set_graphs(a, b).into_iter().filter(|m| m.is_isomorphism()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        chain, contracted_unary_corolla, corolla, exceptional_edge, exceptional_loop,
        isolated_vertex, two_cycle, Flavor,
    };

    fn arc(g: Graph) -> Arc<Graph> {
        Arc::new(g)
    }

    #[test]
    fn identity_is_valid() {
        for g in [
            exceptional_edge(Flavor::WheeledA),
            exceptional_loop(Flavor::WheeledA).unwrap(),
            isolated_vertex(Flavor::WheeledA),
            corolla(Flavor::WheeledA, 2, 1),
            chain(Flavor::WheeledA, 3),
            two_cycle(Flavor::WheeledA).unwrap(),
        ] {
            let id = GraphMorphism::identity(arc(g));
            assert_eq!(id.check(), Ok(()));
            assert!(id.is_isomorphism());
            assert!(id.in_plus() && id.in_minus());
            assert_eq!(id.classify(), MorphismClass::Isomorphism);
        }
    }

    #[test]
    fn edge_into_loop_valid_not_iso() {
        let up = arc(exceptional_edge(Flavor::WheeledA));
        let wheel = arc(exceptional_loop(Flavor::WheeledA).unwrap());
        let ms = hom_set_graphs(&up, &wheel);
        assert_eq!(ms.len(), 1);
        assert!(!ms[0].is_isomorphism());
        assert!(ms[0].in_plus());
        assert!(!ms[0].in_minus());
        // Degree 0 → 2: not a single coface by degree arithmetic.
        assert_eq!(ms[0].classify(), MorphismClass::Composite);
    }

    #[test]
    fn no_map_from_loop_to_edge() {
        let up = exceptional_edge(Flavor::WheeledA);
        let wheel = exceptional_loop(Flavor::WheeledA).unwrap();
        assert!(hom_set_graphs(&wheel, &up).is_empty());
        let xi = contracted_unary_corolla(Flavor::WheeledA).unwrap();
        assert!(hom_set_graphs(&wheel, &xi).is_empty());
        assert_eq!(hom_set_graphs(&wheel, &wheel).len(), 1);
    }

    #[test]
    fn hom_edge_to_edge_is_singleton() {
        let up = exceptional_edge(Flavor::WheeledA);
        assert_eq!(hom_set_graphs(&up, &up).len(), 1);
    }

    #[test]
    fn hom_from_edge_counts_edges() {
        let g = chain(Flavor::WheelFree, 2);
        let up = exceptional_edge(Flavor::WheelFree);
        assert_eq!(hom_set_graphs(&up, &g).len(), g.edge_count());
    }

    #[test]
    fn exceptional_inner_coface() {
        let dot = arc(isolated_vertex(Flavor::WheeledA));
        let wheel = arc(exceptional_loop(Flavor::WheeledA).unwrap());
        let ms = hom_set_graphs(&dot, &wheel);
        assert_eq!(ms.len(), 1);
        let d = &ms[0];
        assert_eq!(*d.map_vertex(VertexId(0)), Subgraph::Wheel);
        assert!(d.in_plus());
        assert_eq!(d.classify(), MorphismClass::ExceptionalInnerCoface);
    }

    #[test]
    fn codegeneracy_of_unary_corolla() {
        let c = arc(corolla(Flavor::WheelFree, 1, 1));
        let up = arc(exceptional_edge(Flavor::WheelFree));
        let ms = hom_set_graphs(&c, &up);
        assert_eq!(ms.len(), 1);
        let s = &ms[0];
        assert!(s.in_minus() && !s.in_plus());
        assert_eq!(s.classify(), MorphismClass::Codegeneracy);
    }

    #[test]
    fn codegeneracy_to_loop_exists() {
        let xi = contracted_unary_corolla(Flavor::WheeledA).unwrap();
        let wheel = exceptional_loop(Flavor::WheeledA).unwrap();
        let ms = hom_set_graphs(&xi, &wheel);
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].classify(), MorphismClass::Codegeneracy);
    }

    #[test]
    fn automorphisms_of_two_input_corolla() {
        let c = corolla(Flavor::WheelFree, 2, 1);
        let autos = isomorphisms_between(&c, &c);
        assert_eq!(autos.len(), 2);
    }

    #[test]
    fn compose_identity() {
        let g = arc(chain(Flavor::WheelFree, 2));
        let id = GraphMorphism::identity(g.clone());
        let up = arc(exceptional_edge(Flavor::WheelFree));
        for m in hom_set_graphs(&g, &up) {
            assert_eq!(compose(&m, &id).unwrap(), m);
        }
    }

    #[test]
    fn codegeneracy_compose_section_is_identity() {
        let c = arc(corolla(Flavor::WheelFree, 1, 1));
        let up = arc(exceptional_edge(Flavor::WheelFree));
        let s = hom_set_graphs(&c, &up).remove(0);
        let sections: Vec<GraphMorphism> = hom_set_graphs(&up, &c)
            .into_iter()
            .filter(|d| compose(&s, d).unwrap().is_identity())
            .collect();
        assert_eq!(sections.len(), 2);
    }

    #[test]
    fn two_codegeneracies_compose_to_double_reduction() {
        let g = arc(chain(Flavor::WheelFree, 3));
        let mid = arc(chain(Flavor::WheelFree, 2));
        let up = arc(exceptional_edge(Flavor::WheelFree));
        let first = hom_set_graphs(&g, &mid)
            .into_iter()
            .find(|m| m.classify() == MorphismClass::Codegeneracy)
            .unwrap();
        let second = hom_set_graphs(&mid, &up).remove(0);
        let comp = compose(&second, &first).unwrap();
        // Everything lands on the single edge of ↑.
        assert!(comp.f0().iter().all(|&e| e == EdgeId(0)));
        assert!(comp.in_minus());
        assert_eq!(comp.classify(), MorphismClass::Composite);
    }

    #[test]
    fn inner_and_outer_cofaces_classified() {
        let c11 = arc(corolla(Flavor::WheelFree, 1, 1));
        let two = arc(chain(Flavor::WheelFree, 2));
        let ms = hom_set_graphs(&c11, &two);
        assert!(ms
            .iter()
            .any(|m| m.classify() == MorphismClass::InnerCoface));
        assert!(ms
            .iter()
            .any(|m| m.classify() == MorphismClass::OuterCoface));
    }

    #[test]
    fn diagnostic_reasons() {
        let wheel = arc(exceptional_loop(Flavor::WheeledA).unwrap());
        let up = arc(exceptional_edge(Flavor::WheeledA));
        let bad = GraphMorphism::new(wheel, up, vec![EdgeId(0)], vec![]);
        assert_eq!(bad.check(), Err(MorphismInvalid::ClosedEdgeViolation(EdgeId(0))));
    }

    #[test]
    fn faithfulness_on_small_pairs() {
        let pairs = [
            (chain(Flavor::WheelFree, 2), chain(Flavor::WheelFree, 2)),
            (chain(Flavor::WheelFree, 2), corolla(Flavor::WheelFree, 1, 1)),
            (corolla(Flavor::WheelFree, 2, 1), corolla(Flavor::WheelFree, 2, 1)),
        ];
        for (a, b) in pairs {
            let ms = hom_set_graphs(&a, &b);
            let mut seen = BTreeSet::new();
            for m in &ms {
                assert!(seen.insert(m.f0().to_vec()), "two morphisms share f0");
            }
        }
    }
}
