//! Segal cores, the Segal condition, the exceptional wheel horn, and the
//! strong-pushout pullback check.
//!
//! The Segal machinery never materializes the core presheaf for checking:
//! maps out of `Sc[G]` are computed as the finite limit over the incidence
//! category `B_G` (families of corolla values agreeing at edges).

use std::collections::BTreeMap;

use crate::catalog::{class_in, CatalogCtx};
use crate::graph::{exceptional_edge, EdgeId, Flavor, VertexId};
use crate::morphism::GraphMorphism;
use crate::presheaf::TruncatedPresheaf;
use crate::subgraph::Subgraph;

/// The incidence category `B_G`: objects the vertices and edges of `G`,
/// one arrow `e → v` for each way `e` is an input or output of `v`.
#[derive(Debug, Clone)]
pub struct SegalDiagram {
    pub graph: usize,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    /// `(edge, vertex, is_input)`; a self-loop contributes both polarities.
    pub arrows: Vec<(EdgeId, VertexId, bool)>,
}

pub fn segal_diagram(ctx: &CatalogCtx, g_idx: usize) -> SegalDiagram {
    let g = ctx.graph(g_idx);
    let mut arrows = Vec::new();
    for v in g.vertices() {
        for e in g.inputs_of(v) {
            arrows.push((e, v, true));
        }
        for e in g.outputs_of(v) {
            arrows.push((e, v, false));
        }
    }
    SegalDiagram {
        graph: g_idx,
        vertices: g.vertices().collect(),
        edges: g.edge_ids().collect(),
        arrows,
    }
}

/// The vertex piece of the Segal diagram at `v`: for a loop-free vertex
/// this is the corolla with `v`'s profile together with the subgraph
/// inclusion `C_v → G`; for a self-looped vertex it is the loop-closed
/// corolla (the one-vertex span realized as a graph) with the span
/// inclusion. Returns the piece's catalog index and the inclusion.
pub fn corolla_inclusion(ctx: &CatalogCtx, g_idx: usize, v: VertexId) -> (usize, GraphMorphism) {
    let g = ctx.graph(g_idx);
    let span = Subgraph::Span(std::collections::BTreeSet::from([v]));
    let (piece, edge_back, _) = span.to_graph(g);
    let (key, _canon, _vperm, eperm) =
        crate::catalog::canonicalize(&piece).expect("vertex pieces stay within budget");
    let c_idx = ctx
        .catalog
        .position(&key)
        .expect("vertex pieces of catalog graphs are catalog graphs");
    let rep = ctx.graph(c_idx);
    let mut f0 = vec![EdgeId(0); rep.edge_count()];
    for (pe, &amb) in edge_back.iter().enumerate() {
        f0[eperm[pe] as usize] = amb;
    }
    let m = GraphMorphism::new(rep.clone(), g.clone(), f0, vec![Subgraph::corolla_at(g, v)]);
    debug_assert_eq!(m.check(), Ok(()));
    (c_idx, m)
}

/// The edge inclusion `↑ → G` picking edge `e`.
pub fn edge_inclusion(ctx: &CatalogCtx, g_idx: usize, e: EdgeId) -> (usize, GraphMorphism) {
    let up = exceptional_edge(ctx.flavor());
    let up_idx = class_in(&ctx.catalog, &up);
    let m =
        GraphMorphism::new(ctx.graph(up_idx).clone(), ctx.graph(g_idx).clone(), vec![e], vec![]);
    debug_assert_eq!(m.check(), Ok(()));
    (up_idx, m)
}

/// The edge of the vertex piece that the inclusion sends to `e`, as the
/// map `↑ → piece` used in the Segal diagram. The inclusion is injective
/// on edges, so the preimage is unique.
fn corolla_leg_pick(
    ctx: &CatalogCtx,
    inclusion: &GraphMorphism,
    e: EdgeId,
    c_idx: usize,
) -> GraphMorphism {
    let rep = ctx.graph(c_idx);
    let pe = rep
        .edge_ids()
        .find(|&pe| inclusion.map_edge(pe) == e)
        .expect("edge incident to the piece");
    let up_idx = class_in(&ctx.catalog, &exceptional_edge(ctx.flavor()));
    let m = GraphMorphism::new(ctx.graph(up_idx).clone(), rep.clone(), vec![pe], vec![]);
    debug_assert_eq!(m.check(), Ok(()));
    m
}

/// Maps out of the Segal core: families of corolla values agreeing in
/// `K(↑)` at every incident edge. For vertexless graphs the limit collapses
/// to `K(↑)`.
pub fn core_families(ctx: &CatalogCtx, k: &TruncatedPresheaf, g_idx: usize) -> Vec<Vec<u32>> {
    let g = ctx.graph(g_idx);
    if g.vertex_count() == 0 {
        let up_idx = class_in(&ctx.catalog, &exceptional_edge(ctx.flavor()));
        return (0..k.cardinality(up_idx) as u32).map(|x| vec![x]).collect();
    }
    let diagram = segal_diagram(ctx, g_idx);
    struct VertexData {
        card: usize,
        restricted: BTreeMap<(EdgeId, bool), Vec<u32>>,
    }
    let mut data: Vec<VertexData> = Vec::new();
    for &v in &diagram.vertices {
        let (c_idx, inclusion) = corolla_inclusion(ctx, g_idx, v);
        let card = k.cardinality(c_idx);
        let mut restricted = BTreeMap::new();
        for &(e, w, is_input) in &diagram.arrows {
            if w != v {
                continue;
            }
            let pick = corolla_leg_pick(ctx, &inclusion, e, c_idx);
            let up_idx = class_in(&ctx.catalog, &exceptional_edge(ctx.flavor()));
            let table = k.action_of(ctx, up_idx, c_idx, &pick);
            restricted.insert((e, is_input), table.clone());
        }
        data.push(VertexData { card, restricted });
    }
    // Backtracking over per-vertex values; an edge value is pinned by the
    // first incident choice and checked against every later one.
    fn rec(data: &[VertexData], family: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let i = family.len();
        if i == data.len() {
            out.push(family.clone());
            return;
        }
        let mut known: BTreeMap<EdgeId, u32> = BTreeMap::new();
        for (j, &x) in family.iter().enumerate() {
            for ((e, _), table) in &data[j].restricted {
                known.insert(*e, table[x as usize]);
            }
        }
        'candidate: for x in 0..data[i].card as u32 {
            let mut local: BTreeMap<EdgeId, u32> = known.clone();
            for ((e, _), table) in &data[i].restricted {
                let val = table[x as usize];
                if let Some(&prev) = local.get(e) {
                    if prev != val {
                        continue 'candidate;
                    }
                }
                local.insert(*e, val);
            }
            family.push(x);
            rec(data, family, out);
            family.pop();
        }
    }
    let mut out = Vec::new();
    rec(&data, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Restriction of `z ∈ K(G)` to the core family it induces.
pub fn segal_restriction(
    ctx: &CatalogCtx,
    k: &TruncatedPresheaf,
    g_idx: usize,
    z: u32,
) -> Vec<u32> {
    let g = ctx.graph(g_idx);
    if g.vertex_count() == 0 {
        let (up_idx, incl) = edge_inclusion(ctx, g_idx, EdgeId(0));
        return vec![k.apply(ctx, up_idx, g_idx, &incl, z)];
    }
    g.vertices()
        .map(|v| {
            let (c_idx, incl) = corolla_inclusion(ctx, g_idx, v);
            k.apply(ctx, c_idx, g_idx, &incl, z)
        })
        .collect()
}

/// Outcome of the Segal check at one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegalClause {
    pub graph: usize,
    pub value_count: usize,
    pub family_count: usize,
    pub bijective: bool,
    /// Marks the exceptional `↻` clause, the only one with new content in
    /// the wheeled-a flavor.
    pub wheel_clause: bool,
}

#[derive(Debug, Clone)]
pub struct SegalReport {
    pub clauses: Vec<SegalClause>,
}

impl SegalReport {
    pub fn pass(&self) -> bool {
        self.clauses.iter().all(|c| c.bijective)
    }

    pub fn failures(&self) -> Vec<usize> {
        self.clauses.iter().filter(|c| !c.bijective).map(|c| c.graph).collect()
    }
}

/// Checks bijectivity of the Segal map `K(G) → hom(Sc[G], K)` at every
/// included catalog graph.
pub fn satisfies_segal(ctx: &CatalogCtx, k: &TruncatedPresheaf) -> SegalReport {
    let mut clauses = Vec::new();
    for g_idx in k.graphs().collect::<Vec<_>>() {
        let families = core_families(ctx, k, g_idx);
        let mut images: Vec<Vec<u32>> = (0..k.cardinality(g_idx) as u32)
            .map(|z| segal_restriction(ctx, k, g_idx, z))
            .collect();
        let injective = {
            let mut sorted = images.clone();
            sorted.sort();
            sorted.windows(2).all(|w| w[0] != w[1])
        };
        images.sort();
        let surjective = images == families;
        clauses.push(SegalClause {
            graph: g_idx,
            value_count: k.cardinality(g_idx),
            family_count: families.len(),
            bijective: injective && surjective,
            wheel_clause: ctx.graph(g_idx).is_exceptional_loop(),
        });
    }
    SegalReport { clauses }
}

/// The exceptional inner horn for `↻`: unique fillers exist iff the
/// restriction `K(↻) → K(↑)` is a bijection. Only meaningful in wheeled-a.
pub fn horn_wheel_check(ctx: &CatalogCtx, k: &TruncatedPresheaf) -> Result<bool, String> {
    if ctx.flavor() != Flavor::WheeledA {
        return Err("the wheel horn only exists in the wheeled-a flavor".into());
    }
    let wheel_idx = (0..ctx.len())
        .find(|&i| ctx.graph(i).is_exceptional_loop())
        .ok_or("catalog has no ↻")?;
    let (up_idx, incl) = edge_inclusion(ctx, wheel_idx, EdgeId(0));
    let table = k.action_of(ctx, up_idx, wheel_idx, &incl);
    let mut seen = vec![false; k.cardinality(up_idx)];
    for &x in table {
        if std::mem::replace(&mut seen[x as usize], true) {
            return Ok(false);
        }
    }
    Ok(seen.into_iter().all(|b| b))
}

/// A commuting square of codegeneracies `f1∘s1 = f2∘s2` with common source.
#[derive(Debug, Clone)]
pub struct PushoutSquare {
    pub source: usize,
    pub s1: GraphMorphism,
    pub s2: GraphMorphism,
    pub mid1: usize,
    pub mid2: usize,
    pub f1: GraphMorphism,
    pub f2: GraphMorphism,
    pub apex: usize,
}

/// Evaluates the square on `K`: the square is a pullback of finite sets iff
/// `w ↦ (f1*w, f2*w)` is a bijection onto the compatible pairs. With
/// `use_phi` (wheel-free presheaves), the inverse is additionally rebuilt
/// through degeneracy normal forms and a lifted codegeneracy, and both
/// routes must agree.
pub fn pullback_check(
    ctx: &CatalogCtx,
    k: &TruncatedPresheaf,
    square: &PushoutSquare,
    use_phi: bool,
) -> bool {
    let s1_table = k.action_of(ctx, square.source, square.mid1, &square.s1).clone();
    let s2_table = k.action_of(ctx, square.source, square.mid2, &square.s2).clone();
    let f1_table = k.action_of(ctx, square.mid1, square.apex, &square.f1).clone();
    let f2_table = k.action_of(ctx, square.mid2, square.apex, &square.f2).clone();

    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for x1 in 0..k.cardinality(square.mid1) as u32 {
        for x2 in 0..k.cardinality(square.mid2) as u32 {
            if s1_table[x1 as usize] == s2_table[x2 as usize] {
                pairs.push((x1, x2));
            }
        }
    }
    let mut images: Vec<(u32, u32)> = (0..k.cardinality(square.apex) as u32)
        .map(|w| (f1_table[w as usize], f2_table[w as usize]))
        .collect();
    let injective = {
        let mut sorted = images.clone();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    };
    images.sort();
    let bijective = injective && images == pairs;
    if !bijective || !use_phi {
        return bijective;
    }

    // Cross-check: rebuild the inverse via the normal form of the shared
    // restriction and a codegeneracy lifted through the apex.
    let through1 = crate::morphism::compose(&square.f1, &square.s1).unwrap();
    for &(x1, x2) in &pairs {
        let x = s1_table[x1 as usize];
        let nf = crate::presheaf::ez_normal_form(ctx, k, square.source, x);
        let lift = ctx
            .hom(square.apex, nf.target)
            .iter()
            .find(|m| crate::morphism::compose(m, &through1).unwrap() == nf.sigma)
            .cloned();
        let Some(lift) = lift else { return false };
        let phi = k.apply(ctx, square.apex, nf.target, &lift, nf.element);
        if f1_table[phi as usize] != x1 || f2_table[phi as usize] != x2 {
            return false;
        }
    }
    true
}

pub mod core {
    //! Segal cores as explicit presheaves: the colimit over `B_G` of
    //! representables at corollas and edges, with the core map into the
    //! representable at `G`. Used to reproduce the core table on the nose.

    use super::*;
    use std::collections::HashMap;

    pub struct SegalCore {
        pub graph: usize,
        pub presheaf: TruncatedPresheaf,
        /// For each included `H`: core element → position in `hom(H, G)`.
        pub core_map: BTreeMap<usize, Vec<u32>>,
    }

    /// One generator of the colimit before gluing: a map into a corolla
    /// representable or into the edge representable.
    #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
    enum Piece {
        Vertex(u32, u32),
        Edge(u32, u32),
    }

    pub fn segal_core(ctx: &CatalogCtx, g_idx: usize, bound: usize) -> SegalCore {
        let included = crate::presheaf::included_graphs(ctx, bound);
        let up_idx = class_in(&ctx.catalog, &exceptional_edge(ctx.flavor()));
        let diagram = segal_diagram(ctx, g_idx);
        let corollas: Vec<(usize, GraphMorphism)> = diagram
            .vertices
            .iter()
            .map(|&v| corolla_inclusion(ctx, g_idx, v))
            .collect();

        let mut card = BTreeMap::new();
        let mut elems: BTreeMap<usize, Vec<Vec<Piece>>> = BTreeMap::new();
        let mut core_map = BTreeMap::new();
        for &h in &included {
            let mut pieces: Vec<Piece> = Vec::new();
            for (vi, (c_idx, _)) in corollas.iter().enumerate() {
                for x in 0..ctx.hom(h, *c_idx).len() as u32 {
                    pieces.push(Piece::Vertex(vi as u32, x));
                }
            }
            for (ei, _) in diagram.edges.iter().enumerate() {
                for x in 0..ctx.hom(h, up_idx).len() as u32 {
                    pieces.push(Piece::Edge(ei as u32, x));
                }
            }
            let slot: HashMap<Piece, usize> =
                pieces.iter().enumerate().map(|(i, &p)| (p, i)).collect();
            let mut parent: Vec<usize> = (0..pieces.len()).collect();
            fn find(parent: &mut Vec<usize>, x: usize) -> usize {
                if parent[x] != x {
                    let r = find(parent, parent[x]);
                    parent[x] = r;
                }
                parent[x]
            }
            for &(e, v, _is_input) in &diagram.arrows {
                let vi = diagram.vertices.iter().position(|&w| w == v).unwrap();
                let ei = diagram.edges.iter().position(|&d| d == e).unwrap();
                let (c_idx, incl) = &corollas[vi];
                let pick = corolla_leg_pick(ctx, incl, e, *c_idx);
                for (xi, x) in ctx.hom(h, up_idx).iter().enumerate() {
                    let glued = crate::morphism::compose(&pick, x).unwrap();
                    let pos = ctx.hom_position(h, *c_idx, &glued).unwrap();
                    let (a, b) = (
                        find(&mut parent, slot[&Piece::Edge(ei as u32, xi as u32)]),
                        find(&mut parent, slot[&Piece::Vertex(vi as u32, pos as u32)]),
                    );
                    if a != b {
                        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                        parent[hi] = lo;
                    }
                }
            }
            let mut classes: BTreeMap<usize, Vec<Piece>> = BTreeMap::new();
            for (i, &p) in pieces.iter().enumerate() {
                classes.entry(find(&mut parent, i)).or_default().push(p);
            }
            let class_list: Vec<Vec<Piece>> = classes.into_values().collect();
            let mut cm = Vec::with_capacity(class_list.len());
            for class in &class_list {
                let pos = match class[0] {
                    Piece::Vertex(vi, x) => {
                        let (c_idx, incl) = &corollas[vi as usize];
                        let rep = ctx.hom(h, *c_idx)[x as usize].clone();
                        let through = crate::morphism::compose(incl, &rep).unwrap();
                        ctx.hom_position(h, g_idx, &through).unwrap() as u32
                    }
                    Piece::Edge(ei, x) => {
                        let e = diagram.edges[ei as usize];
                        let (_, incl) = edge_inclusion(ctx, g_idx, e);
                        let rep = ctx.hom(h, up_idx)[x as usize].clone();
                        let through = crate::morphism::compose(&incl, &rep).unwrap();
                        ctx.hom_position(h, g_idx, &through).unwrap() as u32
                    }
                };
                cm.push(pos);
            }
            card.insert(h, class_list.len());
            elems.insert(h, class_list);
            core_map.insert(h, cm);
        }

        let mut actions = HashMap::new();
        for &hsrc in &included {
            for &htgt in &included {
                for (pos, m) in ctx.hom(hsrc, htgt).iter().enumerate() {
                    let table: Vec<u32> = elems[&htgt]
                        .iter()
                        .map(|class| {
                            let image = match class[0] {
                                Piece::Vertex(vi, x) => {
                                    let (c_idx, _) = &corollas[vi as usize];
                                    let rep = ctx.hom(htgt, *c_idx)[x as usize].clone();
                                    let pre = crate::morphism::compose(&rep, m).unwrap();
                                    let pre_pos =
                                        ctx.hom_position(hsrc, *c_idx, &pre).unwrap() as u32;
                                    Piece::Vertex(vi, pre_pos)
                                }
                                Piece::Edge(ei, x) => {
                                    let rep = ctx.hom(htgt, up_idx)[x as usize].clone();
                                    let pre = crate::morphism::compose(&rep, m).unwrap();
                                    let pre_pos =
                                        ctx.hom_position(hsrc, up_idx, &pre).unwrap() as u32;
                                    Piece::Edge(ei, pre_pos)
                                }
                            };
                            elems[&hsrc]
                                .iter()
                                .position(|class| class.contains(&image))
                                .expect("gluing is closed under precomposition")
                                as u32
                        })
                        .collect();
                    actions.insert((hsrc, htgt, pos), table);
                }
            }
        }
        SegalCore {
            graph: g_idx,
            presheaf: TruncatedPresheaf { bound, card, actions },
            core_map,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{class_in, enumerate_graphs, Bounds, CatalogCtx};
    use crate::graph::{chain, exceptional_loop, Flavor};
    use crate::presheaf::representable;

    fn wheeled_ctx() -> CatalogCtx {
        CatalogCtx::new(enumerate_graphs(
            Flavor::WheeledA,
            Bounds { max_vertices: 2, max_inner: 2, max_valence: 2, max_legs: 2 },
        ))
    }

    #[test]
    fn horn_check_on_representables() {
        let ctx = wheeled_ctx();
        let wheel = class_in(&ctx.catalog, &exceptional_loop(Flavor::WheeledA).unwrap());
        let up = class_in(&ctx.catalog, &exceptional_edge(Flavor::WheeledA));
        let bound = 9;
        // representable(↻): K(↻) = {id}, K(↑) = {inclusion}: bijective.
        let k = representable(&ctx, wheel, bound);
        assert_eq!(horn_wheel_check(&ctx, &k), Ok(true));
        // representable(↑): K(↻) = ∅, K(↑) = {id}: not bijective.
        let k = representable(&ctx, up, bound);
        assert_eq!(horn_wheel_check(&ctx, &k), Ok(false));
    }

    #[test]
    fn horn_check_rejected_outside_wheeled_a() {
        let ctx = CatalogCtx::new(enumerate_graphs(
            Flavor::WheeledB,
            Bounds { max_vertices: 1, max_inner: 1, max_valence: 2, max_legs: 2 },
        ));
        let up = class_in(&ctx.catalog, &exceptional_edge(Flavor::WheeledB));
        let k = representable(&ctx, up, 9);
        assert!(horn_wheel_check(&ctx, &k).is_err());
    }

    #[test]
    fn segal_core_table_small() {
        let ctx = wheeled_ctx();
        let bound = 9;
        let up = class_in(&ctx.catalog, &exceptional_edge(Flavor::WheeledA));
        let wheel = class_in(&ctx.catalog, &exceptional_loop(Flavor::WheeledA).unwrap());
        // Row ↑: the core map is a pointwise bijection.
        let sc = core::segal_core(&ctx, up, bound);
        for h in sc.presheaf.graphs().collect::<Vec<_>>() {
            assert_eq!(sc.presheaf.cardinality(h), ctx.hom(h, up).len());
            let mut seen = sc.core_map[&h].clone();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), ctx.hom(h, up).len());
        }
        // Row ↻: the core is the representable at ↑.
        let sc = core::segal_core(&ctx, wheel, bound);
        for h in sc.presheaf.graphs().collect::<Vec<_>>() {
            assert_eq!(sc.presheaf.cardinality(h), ctx.hom(h, up).len());
        }
    }

    #[test]
    fn segal_of_representable_at_edge_fails_at_wheel() {
        // In wheeled-a: representable(↑) has K(↻) = ∅ but K(↑) ≠ ∅, so the
        // wheel clause fails. On a one-vertex catalog that is the only
        // failure; bigger catalogs add honest failures at wheeled graphs
        // whose decorations have no composite (e.g. the two-vertex cycle).
        let ctx = CatalogCtx::new(enumerate_graphs(
            Flavor::WheeledA,
            Bounds { max_vertices: 1, max_inner: 1, max_valence: 2, max_legs: 2 },
        ));
        let up = class_in(&ctx.catalog, &exceptional_edge(Flavor::WheeledA));
        let wheel = class_in(&ctx.catalog, &exceptional_loop(Flavor::WheeledA).unwrap());
        let k = representable(&ctx, up, 9);
        let report = satisfies_segal(&ctx, &k);
        assert_eq!(report.failures(), vec![wheel]);

        let ctx = wheeled_ctx();
        let up = class_in(&ctx.catalog, &exceptional_edge(Flavor::WheeledA));
        let wheel = class_in(&ctx.catalog, &exceptional_loop(Flavor::WheeledA).unwrap());
        let k = representable(&ctx, up, 9);
        let report = satisfies_segal(&ctx, &k);
        assert!(report.failures().contains(&wheel));
    }

    #[test]
    fn segal_families_on_chain() {
        let ctx = CatalogCtx::new(enumerate_graphs(
            Flavor::WheelFree,
            Bounds { max_vertices: 2, max_inner: 1, max_valence: 2, max_legs: 2 },
        ));
        let two = class_in(&ctx.catalog, &chain(Flavor::WheelFree, 2));
        let k = representable(&ctx, two, 2);
        let families = core_families(&ctx, &k, two);
        assert_eq!(families.len(), k.cardinality(two));
        let report = satisfies_segal(&ctx, &k);
        assert!(report.pass(), "failures: {:?}", report.failures());
    }
}
