//! Truncated graphical sets: contravariant finite-set-valued assignments on
//! a bounded catalog, with full morphism actions, plus degeneracy normal
//! forms (the graphical Eilenberg-Zilber lemma).

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::catalog::CatalogCtx;
use crate::graph::VertexId;
use crate::morphism::{compose, GraphMorphism};
use crate::subgraph::Subgraph;

/// A presheaf on the catalog graphs of degree at most `bound`, with an
/// action for every catalog morphism between them. Elements of `K(G)` are
/// the indices `0..card[G]`.
#[derive(Debug, Clone)]
pub struct TruncatedPresheaf {
    pub bound: usize,
    /// Value cardinalities, one entry per included catalog graph.
    pub card: BTreeMap<usize, usize>,
    /// `(src, tgt, hom position) → table`: for `m: G → K` the table sends
    /// each element of `K(K)` to an element of `K(G)`.
    pub actions: HashMap<(usize, usize, usize), Vec<u32>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresheafInvalid {
    #[error("missing or malformed action for morphism {src}→{tgt} #{pos}")]
    BadAction { src: usize, tgt: usize, pos: usize },
    #[error("identity on graph {0} does not act as the identity")]
    IdentityViolation(usize),
    #[error("functoriality fails on a composite {g}→{k}→{l}")]
    Functoriality { g: usize, k: usize, l: usize },
    #[error("isomorphism action is not a bijection on graph pair {src}→{tgt}")]
    IsoNotBijective { src: usize, tgt: usize },
}

/// A degeneracy normal form: an iterated codegeneracy (possibly the
/// identity) and a nondegenerate element it pulls back from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyNormalForm {
    pub sigma: GraphMorphism,
    pub target: usize,
    pub element: u32,
}

impl TruncatedPresheaf {
    /// Graphs included in the truncation, in index order.
    pub fn graphs(&self) -> impl Iterator<Item = usize> + '_ {
        self.card.keys().copied()
    }

    pub fn cardinality(&self, g: usize) -> usize {
        self.card[&g]
    }

    /// Action table of a stored catalog morphism.
    pub fn action_of(&self, ctx: &CatalogCtx, src: usize, tgt: usize, m: &GraphMorphism) -> &Vec<u32> {
        let pos = ctx
            .hom_position(src, tgt, m)
            .expect("morphism not in the catalog hom-set");
        &self.actions[&(src, tgt, pos)]
    }

    pub fn apply(&self, ctx: &CatalogCtx, src: usize, tgt: usize, m: &GraphMorphism, x: u32) -> u32 {
        self.action_of(ctx, src, tgt, m)[x as usize]
    }

    /// Validates functoriality: identities act as identities, actions
    /// compose contravariantly over all composable catalog pairs, and
    /// isomorphisms act bijectively.
    pub fn validate(&self, ctx: &CatalogCtx) -> Result<(), PresheafInvalid> {
        let included: Vec<usize> = self.graphs().collect();
        for &g in &included {
            for &k in &included {
                let homs = ctx.hom(g, k);
                for (pos, m) in homs.iter().enumerate() {
                    let table = self
                        .actions
                        .get(&(g, k, pos))
                        .ok_or(PresheafInvalid::BadAction { src: g, tgt: k, pos })?;
                    if table.len() != self.card[&k]
                        || table.iter().any(|&x| (x as usize) >= self.card[&g])
                    {
                        return Err(PresheafInvalid::BadAction { src: g, tgt: k, pos });
                    }
                    if m.is_isomorphism() {
                        let mut seen = vec![false; self.card[&g]];
                        for &x in table {
                            if std::mem::replace(&mut seen[x as usize], true) {
                                return Err(PresheafInvalid::IsoNotBijective { src: g, tgt: k });
                            }
                        }
                    }
                }
            }
            let id = GraphMorphism::identity(ctx.graph(g).clone());
            let table = self.action_of(ctx, g, g, &id);
            if table.iter().enumerate().any(|(i, &x)| i != x as usize) {
                return Err(PresheafInvalid::IdentityViolation(g));
            }
        }
        // action(m∘n) = action(n)∘action(m) for n: G→K, m: K→L.
        use rayon::prelude::*;
        let triples: Vec<(usize, usize)> = included
            .iter()
            .flat_map(|&g| included.iter().map(move |&k| (g, k)))
            .filter(|&(g, k)| !ctx.hom(g, k).is_empty())
            .collect();
        let bad = triples
            .par_iter()
            .find_map_any(|&(g, k)| {
                let homs_gk = ctx.hom(g, k);
                for &l in &included {
                    let homs_kl = ctx.hom(k, l);
                    if homs_kl.is_empty() {
                        continue;
                    }
                    let table = ctx.composition_table(g, k, l);
                    for (ni, _) in homs_gk.iter().enumerate() {
                        let act_n = &self.actions[&(g, k, ni)];
                        for (mi, _) in homs_kl.iter().enumerate() {
                            let act_m = &self.actions[&(k, l, mi)];
                            let act_mn = &self.actions[&(g, l, table[ni][mi] as usize)];
                            for x in 0..self.card[&l] {
                                if act_mn[x] != act_n[act_m[x] as usize] {
                                    return Some(PresheafInvalid::Functoriality { g, k, l });
                                }
                            }
                        }
                    }
                }
                None
            });
        match bad {
            Some(err) => Err(err),
            None => Ok(()),
        }
    }
}

/// Graphs of the catalog with flavor degree at most `bound`.
pub fn included_graphs(ctx: &CatalogCtx, bound: usize) -> Vec<usize> {
    (0..ctx.len())
        .filter(|&i| ctx.graph(i).degree(ctx.flavor()) <= bound)
        .collect()
}

/// The representable presheaf at catalog graph `x`: values are hom-sets
/// into `x`, actions are precomposition.
pub fn representable(ctx: &CatalogCtx, x: usize, bound: usize) -> TruncatedPresheaf {
    let included = included_graphs(ctx, bound);
    let mut card = BTreeMap::new();
    for &g in &included {
        card.insert(g, ctx.hom(g, x).len());
    }
    let mut actions = HashMap::new();
    for &g in &included {
        for &k in &included {
            let homs = ctx.hom(g, k);
            if homs.is_empty() || ctx.hom(k, x).is_empty() {
                for pos in 0..homs.len() {
                    actions.insert((g, k, pos), Vec::new());
                }
                continue;
            }
            let table = ctx.composition_table(g, k, x);
            for (pos, _) in homs.iter().enumerate() {
                actions.insert((g, k, pos), table[pos].clone());
            }
        }
    }
    TruncatedPresheaf { bound, card, actions }
}

/// The single codegeneracy at a set of unary vertices, normalized to land
/// on the catalog representative: the simultaneous quotient followed by the
/// fixed canonicalization isomorphism. Returns the target's catalog index.
pub fn canonical_degeneracy(
    ctx: &CatalogCtx,
    g_idx: usize,
    degenerate: &[VertexId],
) -> (usize, GraphMorphism) {
    let host = ctx.graph(g_idx);
    debug_assert!(degenerate.iter().all(|&v| host.is_unary(v)));
    let sub = crate::substitution::reduce_at(host, degenerate)
        .expect("unary reduction is always a valid substitution");
    let (key, _canon, vperm, eperm) =
        crate::catalog::canonicalize(&sub.graph).expect("reductions stay within budget");
    let r_idx = ctx
        .catalog
        .position(&key)
        .expect("reductions of catalog graphs stay within bounds");
    let f0 = host
        .edge_ids()
        .map(|e| crate::graph::EdgeId(eperm[sub.host_edge(e).index()]))
        .collect();
    let target = ctx.graph(r_idx).clone();
    let f1 = host
        .vertices()
        .map(|v| {
            if degenerate.contains(&v) {
                let b = *host.inputs_of(v).iter().next().unwrap();
                Subgraph::Edge(crate::graph::EdgeId(eperm[sub.host_edge(b).index()]))
            } else {
                let img = sub.vertex_map[&(v, VertexId(0))];
                Subgraph::corolla_at(&target, VertexId(vperm[img.index()]))
            }
        })
        .collect();
    let m = GraphMorphism::new(host.clone(), target, f0, f1);
    debug_assert_eq!(m.check(), Ok(()));
    (r_idx, m)
}

/// All subsets of the unary vertices of `g`, the index set for canonical
/// iterated codegeneracies out of `g` (the empty set stands for the
/// identity).
pub fn degeneracy_subsets(ctx: &CatalogCtx, g_idx: usize) -> Vec<Vec<VertexId>> {
    let unary = ctx.graph(g_idx).unary_vertices();
    let mut out = Vec::with_capacity(1 << unary.len());
    for mask in 0u32..(1 << unary.len()) {
        out.push(
            unary
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect(),
        );
    }
    out
}

/// Is `x ∈ K(g)` a pullback along some non-identity iterated codegeneracy?
/// Single steps suffice: a deeper degeneracy factors through one.
pub fn is_degenerate(ctx: &CatalogCtx, k: &TruncatedPresheaf, g_idx: usize, x: u32) -> bool {
    for v in ctx.graph(g_idx).unary_vertices() {
        let (r_idx, step) = canonical_degeneracy(ctx, g_idx, &[v]);
        if !k.card.contains_key(&r_idx) {
            continue;
        }
        let table = k.action_of(ctx, g_idx, r_idx, &step);
        if table.iter().any(|&img| img == x) {
            return true;
        }
    }
    false
}

/// Degeneracy normal form by greedy descent: strip single codegeneracies
/// until the element is nondegenerate, then recompute the simultaneous
/// canonical quotient for the accumulated vertex set.
pub fn ez_normal_form(
    ctx: &CatalogCtx,
    k: &TruncatedPresheaf,
    g_idx: usize,
    x: u32,
) -> DegeneracyNormalForm {
    let mut degenerate: Vec<VertexId> = Vec::new();
    // Coordinates of the current graph's vertices in the original graph.
    let mut back: Vec<VertexId> = ctx.graph(g_idx).vertices().collect();
    let mut cur_idx = g_idx;
    let mut cur_x = x;
    'descend: loop {
        for v in ctx.graph(cur_idx).unary_vertices() {
            let (r_idx, step) = canonical_degeneracy(ctx, cur_idx, &[v]);
            if !k.card.contains_key(&r_idx) {
                continue;
            }
            let table = k.action_of(ctx, cur_idx, r_idx, &step);
            if let Some(y) = (0..k.card[&r_idx] as u32).find(|&y| table[y as usize] == cur_x) {
                degenerate.push(back[v.index()]);
                // Rebuild the coordinate map through this step.
                let mut new_back = vec![VertexId(0); ctx.graph(r_idx).vertex_count()];
                let tgt_graph = ctx.graph(r_idx).clone();
                for (u, sub) in step.f1().iter().enumerate() {
                    if let Some(w) = sub.as_corolla(&tgt_graph) {
                        new_back[w.index()] = back[u];
                    }
                }
                back = new_back;
                cur_idx = r_idx;
                cur_x = y;
                continue 'descend;
            }
        }
        break;
    }
    if degenerate.is_empty() {
        return DegeneracyNormalForm {
            sigma: GraphMorphism::identity(ctx.graph(g_idx).clone()),
            target: g_idx,
            element: x,
        };
    }
    degenerate.sort();
    let (target, sigma) = canonical_degeneracy(ctx, g_idx, &degenerate);
    debug_assert_eq!(target, cur_idx);
    let table = k.action_of(ctx, g_idx, target, &sigma);
    let element = (0..k.card[&target] as u32)
        .find(|&y| table[y as usize] == x)
        .expect("the simultaneous quotient reaches the same reduction");
    DegeneracyNormalForm { sigma, target, element }
}

/// Brute-force sweep for the Eilenberg-Zilber lemma: every canonical
/// iterated codegeneracy (indexed by unary-vertex subsets, the empty subset
/// standing for the identity) paired with every nondegenerate preimage.
pub fn nondegenerate_presentations(
    ctx: &CatalogCtx,
    k: &TruncatedPresheaf,
    g_idx: usize,
    x: u32,
) -> Vec<(Vec<VertexId>, usize, u32)> {
    let mut out = Vec::new();
    for subset in degeneracy_subsets(ctx, g_idx) {
        if subset.is_empty() {
            if !is_degenerate(ctx, k, g_idx, x) {
                out.push((subset, g_idx, x));
            }
            continue;
        }
        let (r_idx, sigma) = canonical_degeneracy(ctx, g_idx, &subset);
        if !k.card.contains_key(&r_idx) {
            continue;
        }
        let table = k.action_of(ctx, g_idx, r_idx, &sigma);
        for y in 0..k.card[&r_idx] as u32 {
            if table[y as usize] == x && !is_degenerate(ctx, k, r_idx, y) {
                out.push((subset.clone(), r_idx, y));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{class_in, enumerate_graphs, Bounds};
    use crate::graph::{chain, corolla, exceptional_edge, Flavor};

    fn small_ctx() -> CatalogCtx {
        CatalogCtx::new(enumerate_graphs(
            Flavor::WheelFree,
            Bounds { max_vertices: 2, max_inner: 2, max_valence: 3, max_legs: 3 },
        ))
    }

    #[test]
    fn representable_is_functorial() {
        let ctx = small_ctx();
        let x = class_in(&ctx.catalog, &chain(Flavor::WheelFree, 2));
        let k = representable(&ctx, x, 2);
        assert_eq!(k.validate(&ctx), Ok(()));
    }

    #[test]
    fn representable_values_match_hom_sets() {
        let ctx = small_ctx();
        let up = class_in(&ctx.catalog, &exceptional_edge(Flavor::WheelFree));
        let k = representable(&ctx, up, 2);
        // K(↑) = hom(↑,↑) = 1; K(C(1;1)) = 1 (the codegeneracy); K(C(2;1)) = 0.
        assert_eq!(k.cardinality(up), 1);
        let c11 = class_in(&ctx.catalog, &corolla(Flavor::WheelFree, 1, 1));
        assert_eq!(k.cardinality(c11), 1);
        let c21 = class_in(&ctx.catalog, &corolla(Flavor::WheelFree, 2, 1));
        assert_eq!(k.cardinality(c21), 0);
    }

    #[test]
    fn degenerate_elements_in_representable() {
        let ctx = small_ctx();
        let up = class_in(&ctx.catalog, &exceptional_edge(Flavor::WheelFree));
        let c11 = class_in(&ctx.catalog, &corolla(Flavor::WheelFree, 1, 1));
        let k = representable(&ctx, up, 2);
        // The unique element of K(C(1;1)) is the codegeneracy: degenerate.
        assert!(is_degenerate(&ctx, &k, c11, 0));
        // The identity element of K(↑) is nondegenerate.
        assert!(!is_degenerate(&ctx, &k, up, 0));
        let nf = ez_normal_form(&ctx, &k, c11, 0);
        assert_eq!(nf.target, up);
        assert!(!nf.sigma.is_identity());
    }

    #[test]
    fn normal_form_of_nondegenerate_is_identity() {
        let ctx = small_ctx();
        let two = class_in(&ctx.catalog, &chain(Flavor::WheelFree, 2));
        let k = representable(&ctx, two, 2);
        let id_elem = ctx
            .hom(two, two)
            .iter()
            .position(|m| m.is_identity())
            .unwrap() as u32;
        let nf = ez_normal_form(&ctx, &k, two, id_elem);
        assert!(nf.sigma.is_identity());
        assert_eq!(nf.element, id_elem);
    }

    #[test]
    fn ez_uniqueness_on_a_representable() {
        let ctx = small_ctx();
        let two = class_in(&ctx.catalog, &chain(Flavor::WheelFree, 2));
        let k = representable(&ctx, two, 2);
        for g in k.graphs().collect::<Vec<_>>() {
            for x in 0..k.cardinality(g) as u32 {
                let pres = nondegenerate_presentations(&ctx, &k, g, x);
                assert_eq!(pres.len(), 1, "element {x} of graph {g}");
                let nf = ez_normal_form(&ctx, &k, g, x);
                let (subset, tgt, y) = &pres[0];
                assert_eq!(*tgt, nf.target);
                assert_eq!(*y, nf.element);
                let got_subset: Vec<VertexId> = nf
                    .sigma
                    .f1()
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.is_edge())
                    .map(|(i, _)| VertexId(i as u32))
                    .collect();
                assert_eq!(*subset, got_subset);
            }
        }
    }
}
