//! Exhaustive enumeration of graphs up to isomorphism within configured
//! bounds, with brute-force canonical forms.
//!
//! Canonicalization minimizes the serialized incidence table over all vertex
//! orderings; edge identity carries no structure beyond incidence, so edges
//! are sorted rather than permuted. Equal keys iff isomorphic.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeId, EdgeRec, Flavor, Graph, VertexId};
use crate::morphism::{hom_set, GraphMorphism};
use crate::subgraph::{subgraphs_of, Subgraph};

/// Catalog bounds: maximum vertices, inner edges, per-vertex valence, and
/// total legs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bounds {
    pub max_vertices: usize,
    pub max_inner: usize,
    pub max_valence: usize,
    pub max_legs: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_vertices: 3, max_inner: 3, max_valence: 3, max_legs: 3 }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("graph too large for brute-force canonicalization (max 4 vertices, 8 edges)")]
    TooLarge,
}

/// Relabeling-invariant key: vertex count plus the lexicographically minimal
/// sorted edge table over all vertex orderings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonKey {
    pub vertex_count: u32,
    pub edges: Vec<(Option<u32>, Option<u32>, bool)>,
}

impl fmt::Display for CanonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.vertex_count)?;
        for (s, t, c) in &self.edges {
            let p = |x: &Option<u32>| x.map_or("-".to_string(), |v| v.to_string());
            write!(f, ":{}>{}{}", p(s), p(t), if *c { "o" } else { "" })?;
        }
        Ok(())
    }
}

const CANON_MAX_VERTICES: usize = 4;
const CANON_MAX_EDGES: usize = 8;

fn edge_table(g: &Graph, vperm: &[u32]) -> Vec<(Option<u32>, Option<u32>, bool)> {
    let mut t: Vec<(Option<u32>, Option<u32>, bool)> = g
        .edges()
        .iter()
        .map(|rec| {
            (
                rec.src.map(|v| vperm[v.index()]),
                rec.tgt.map(|v| vperm[v.index()]),
                rec.closed,
            )
        })
        .collect();
    t.sort_unstable();
    t
}

fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for v in 0..n as u32 {
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

/// Canonical key of a graph; refuses graphs beyond the brute-force budget.
pub fn canonical_key(g: &Graph) -> Result<CanonKey, CatalogError> {
    Ok(canonicalize(g)?.0)
}

/// Canonical key together with a canonical relabeling. The returned graph is
/// the canonical representative; `vperm`/`eperm` map the input's ids onto it
/// (`vperm[old] = new`).
pub fn canonicalize(g: &Graph) -> Result<(CanonKey, Graph, Vec<u32>, Vec<u32>), CatalogError> {
    let n = g.vertex_count();
    if n > CANON_MAX_VERTICES || g.edge_count() > CANON_MAX_EDGES {
        return Err(CatalogError::TooLarge);
    }
    let mut best: Option<(Vec<(Option<u32>, Option<u32>, bool)>, Vec<u32>)> = None;
    for perm in permutations(n) {
        let table = edge_table(g, &perm);
        if best.as_ref().is_none_or(|(b, _)| table < *b) {
            best = Some((table, perm));
        }
    }
    let (table, vperm) = best.expect("at least the empty permutation");
    // Deterministic edge matching: stable-sort the relabeled records and
    // send equal (parallel) edges in id order.
    let relabeled: Vec<(Option<u32>, Option<u32>, bool)> = g
        .edges()
        .iter()
        .map(|rec| {
            (
                rec.src.map(|v| vperm[v.index()]),
                rec.tgt.map(|v| vperm[v.index()]),
                rec.closed,
            )
        })
        .collect();
    let mut order: Vec<usize> = (0..relabeled.len()).collect();
    order.sort_by_key(|&i| (relabeled[i], i));
    let mut eperm = vec![0u32; relabeled.len()];
    for (new, &old) in order.iter().enumerate() {
        eperm[old] = new as u32;
    }
    let canon = g.relabel(&vperm, &eperm);
    let key = CanonKey { vertex_count: n as u32, edges: table };
    debug_assert_eq!(edge_table(&canon, &(0..n as u32).collect::<Vec<_>>()), key.edges);
    Ok((key, canon, vperm, eperm))
}

/// Key-level isomorphism test.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool, CatalogError> {
    Ok(canonical_key(a)? == canonical_key(b)?)
}

/// A complete duplicate-free list of iso classes of graphs admitted by the
/// flavor within the bounds, in canonical form.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub flavor: Flavor,
    pub bounds: Bounds,
    pub graphs: Vec<Arc<Graph>>,
    index: HashMap<CanonKey, usize>,
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn graph(&self, i: usize) -> &Arc<Graph> {
        &self.graphs[i]
    }

    pub fn position(&self, key: &CanonKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Index of the iso class of `g`, if within the catalog.
    pub fn class_of(&self, g: &Graph) -> Option<usize> {
        canonical_key(g).ok().and_then(|k| self.position(&k))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Arc<Graph>)> {
        self.graphs.iter().enumerate()
    }
}

/// Enumerates all iso classes for the flavor within the bounds. Exceptional
/// objects permitted by the flavor are always included (`↑` everywhere, `↻`
/// only in wheeled-a, `•` everywhere).
pub fn enumerate_graphs(flavor: Flavor, bounds: Bounds) -> Catalog {
    let mut graphs: Vec<Arc<Graph>> = Vec::new();
    let mut index: HashMap<CanonKey, usize> = HashMap::new();
    let mut push = |g: Graph| {
        let (key, canon, _, _) = canonicalize(&g).expect("catalog graphs are within budget");
        if !index.contains_key(&key) {
            index.insert(key, graphs.len());
            graphs.push(Arc::new(canon));
        }
    };

    push(crate::graph::exceptional_edge(flavor));
    if flavor.admits_loop() {
        push(crate::graph::exceptional_loop(flavor).unwrap());
    }

    for nv in 1..=bounds.max_vertices {
        enumerate_with_vertices(flavor, bounds, nv, &mut |g| push(g));
    }

    // Deterministic order: by degree-ish size then key.
    let mut order: Vec<usize> = (0..graphs.len()).collect();
    order.sort_by_key(|&i| {
        let g = &graphs[i];
        (
            g.vertex_count(),
            g.edge_count(),
            canonical_key(g).unwrap(),
        )
    });
    let graphs: Vec<Arc<Graph>> = order.iter().map(|&i| graphs[i].clone()).collect();
    let index = graphs
        .iter()
        .enumerate()
        .map(|(i, g)| (canonical_key(g).unwrap(), i))
        .collect();
    Catalog { flavor, bounds, graphs, index }
}

fn enumerate_with_vertices(
    flavor: Flavor,
    bounds: Bounds,
    nv: usize,
    push: &mut dyn FnMut(Graph),
) {
    // Candidate inner-edge slots: ordered vertex pairs; self-loops only in
    // wheeled flavors.
    let mut slots: Vec<(u32, u32)> = Vec::new();
    for s in 0..nv as u32 {
        for t in 0..nv as u32 {
            if s == t && !flavor.is_wheeled() {
                continue;
            }
            slots.push((s, t));
        }
    }
    // Multisets of inner edges up to max_inner.
    let mut inner_choices: Vec<Vec<(u32, u32)>> = Vec::new();
    let mut stack: Vec<(usize, Vec<(u32, u32)>)> = vec![(0, Vec::new())];
    while let Some((start, chosen)) = stack.pop() {
        inner_choices.push(chosen.clone());
        if chosen.len() == bounds.max_inner {
            continue;
        }
        for i in start..slots.len() {
            let mut next = chosen.clone();
            next.push(slots[i]);
            stack.push((i, next));
        }
    }

    for inner in &inner_choices {
        // Per-vertex legs: (in, out) pairs with total ≤ max_legs and
        // valence within bound.
        let mut base_val = vec![0usize; nv];
        for &(s, t) in inner {
            base_val[s as usize] += 1;
            base_val[t as usize] += 1;
        }
        if base_val.iter().any(|&v| v > bounds.max_valence) {
            continue;
        }
        let legs_budget = bounds.max_legs;
        let mut leg_assignments: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
        for v in 0..nv {
            let mut next = Vec::new();
            for partial in &leg_assignments {
                let used: usize = partial.iter().map(|(a, b)| a + b).sum();
                let room_valence = bounds.max_valence - base_val[v];
                for a in 0..=room_valence {
                    for b in 0..=(room_valence - a) {
                        if used + a + b <= legs_budget {
                            let mut p = partial.clone();
                            p.push((a, b));
                            next.push(p);
                        }
                    }
                }
            }
            leg_assignments = next;
        }

        for legs in &leg_assignments {
            let mut edges: Vec<EdgeRec> = inner
                .iter()
                .map(|&(s, t)| EdgeRec {
                    src: Some(VertexId(s)),
                    tgt: Some(VertexId(t)),
                    closed: false,
                })
                .collect();
            for (v, &(ins, outs)) in legs.iter().enumerate() {
                for _ in 0..ins {
                    edges.push(EdgeRec { src: None, tgt: Some(VertexId(v as u32)), closed: false });
                }
                for _ in 0..outs {
                    edges.push(EdgeRec { src: Some(VertexId(v as u32)), tgt: None, closed: false });
                }
            }
            if let Ok(g) = Graph::new(flavor, nv as u32, edges) {
                push(g);
            }
        }
    }
}

/// Shared context for catalog-wide computations: lazily filled hom-sets,
/// per-graph subgraph lists, edge-action indexes, and composition tables,
/// all safe to use from parallel sweeps.
pub struct CatalogCtx {
    pub catalog: Catalog,
    homs: Vec<Vec<OnceLock<Arc<Vec<GraphMorphism>>>>>,
    subs: Vec<OnceLock<Arc<Vec<Subgraph>>>>,
    indexes: Vec<Vec<OnceLock<Arc<HashMap<Vec<EdgeId>, usize>>>>>,
    compositions: std::sync::RwLock<HashMap<(usize, usize, usize), Arc<Vec<Vec<u32>>>>>,
}

impl CatalogCtx {
    pub fn new(catalog: Catalog) -> Self {
        let n = catalog.len();
        let homs = (0..n)
            .map(|_| (0..n).map(|_| OnceLock::new()).collect())
            .collect();
        let subs = (0..n).map(|_| OnceLock::new()).collect();
        let indexes = (0..n)
            .map(|_| (0..n).map(|_| OnceLock::new()).collect())
            .collect();
        CatalogCtx {
            catalog,
            homs,
            subs,
            indexes,
            compositions: std::sync::RwLock::new(HashMap::new()),
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.catalog.flavor
    }

    pub fn len(&self) -> usize {
        self.catalog.len()
    }

    pub fn is_empty(&self) -> bool {
        self.catalog.is_empty()
    }

    pub fn graph(&self, i: usize) -> &Arc<Graph> {
        self.catalog.graph(i)
    }

    /// All valid morphisms from catalog graph `src` to catalog graph `tgt`,
    /// cached after first computation.
    pub fn hom(&self, src: usize, tgt: usize) -> &Arc<Vec<GraphMorphism>> {
        self.homs[src][tgt].get_or_init(|| {
            Arc::new(hom_set(
                self.catalog.graph(src).clone(),
                self.catalog.graph(tgt).clone(),
                self.subgraphs(tgt).as_ref(),
            ))
        })
    }

    /// All subgraphs of catalog graph `i`, cached.
    pub fn subgraphs(&self, i: usize) -> &Arc<Vec<Subgraph>> {
        self.subs[i].get_or_init(|| Arc::new(subgraphs_of(self.catalog.graph(i))))
    }

    /// Position of a morphism within its cached hom-set; morphisms are
    /// determined by their edge action, so the lookup keys on `f0`.
    pub fn hom_position(&self, src: usize, tgt: usize, m: &GraphMorphism) -> Option<usize> {
        let index = self.indexes[src][tgt].get_or_init(|| {
            Arc::new(
                self.hom(src, tgt)
                    .iter()
                    .enumerate()
                    .map(|(i, h)| (h.f0().to_vec(), i))
                    .collect(),
            )
        });
        index.get(m.f0()).copied()
    }

    /// Composition table for one object triple: entry `[i][j]` is the
    /// position in `hom(g, l)` of the composite of `hom(g, k)[i]` followed
    /// by `hom(k, l)[j]`.
    pub fn composition_table(&self, g: usize, k: usize, l: usize) -> Arc<Vec<Vec<u32>>> {
        if let Some(t) = self.compositions.read().unwrap().get(&(g, k, l)) {
            return t.clone();
        }
        let down = self.hom(g, k);
        let up = self.hom(k, l);
        let table: Vec<Vec<u32>> = down
            .iter()
            .map(|n| {
                up.iter()
                    .map(|m| {
                        let comp = crate::morphism::compose(m, n)
                            .expect("endpoints line up by construction");
                        self.hom_position(g, l, &comp)
                            .expect("hom-sets are closed under composition")
                            as u32
                    })
                    .collect()
            })
            .collect();
        let table = Arc::new(table);
        self.compositions
            .write()
            .unwrap()
            .entry((g, k, l))
            .or_insert(table)
            .clone()
    }

    /// Total morphisms G → K over all catalog pairs; forces the full table.
    pub fn total_morphisms(&self) -> usize {
        let n = self.len();
        (0..n)
            .map(|g| (0..n).map(|k| self.hom(g, k).len()).sum::<usize>())
            .sum()
    }
}

/// Persists a catalog as JSON lines; the first line carries the
/// configuration hash so stale caches are rejected on load.
pub mod cache {
    use super::*;
    use std::io::{BufRead, Write};
    use std::path::Path;

    #[derive(Serialize, Deserialize, PartialEq)]
    struct Header {
        format_version: u32,
        flavor: Flavor,
        bounds: Bounds,
    }

    #[derive(Serialize, Deserialize)]
    struct Row {
        key: String,
        vertex_count: u32,
        edges: Vec<(Option<u32>, Option<u32>, bool)>,
    }

    const FORMAT_VERSION: u32 = 1;

    pub fn save(catalog: &Catalog, path: &Path) -> std::io::Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        let header =
            Header { format_version: FORMAT_VERSION, flavor: catalog.flavor, bounds: catalog.bounds };
        writeln!(f, "{}", serde_json::to_string(&header)?)?;
        for g in &catalog.graphs {
            let row = Row {
                key: canonical_key(g).unwrap().to_string(),
                vertex_count: g.vertex_count() as u32,
                edges: g
                    .edges()
                    .iter()
                    .map(|r| (r.src.map(|v| v.0), r.tgt.map(|v| v.0), r.closed))
                    .collect(),
            };
            writeln!(f, "{}", serde_json::to_string(&row)?)?;
        }
        Ok(())
    }

    /// Loads a cached catalog if the header matches; `None` means recompute.
    pub fn load(flavor: Flavor, bounds: Bounds, path: &Path) -> Option<Catalog> {
        let f = std::fs::File::open(path).ok()?;
        let mut lines = std::io::BufReader::new(f).lines();
        let header: Header = serde_json::from_str(&lines.next()?.ok()?).ok()?;
        if header != (Header { format_version: FORMAT_VERSION, flavor, bounds }) {
            return None;
        }
        let mut graphs = Vec::new();
        let mut index = HashMap::new();
        for line in lines {
            let row: Row = serde_json::from_str(&line.ok()?).ok()?;
            let edges = row
                .edges
                .into_iter()
                .map(|(s, t, c)| EdgeRec {
                    src: s.map(VertexId),
                    tgt: t.map(VertexId),
                    closed: c,
                })
                .collect();
            let g = Graph::new(flavor, row.vertex_count, edges).ok()?;
            let key = canonical_key(&g).ok()?;
            if key.to_string() != row.key {
                return None;
            }
            index.insert(key, graphs.len());
            graphs.push(Arc::new(g));
        }
        Some(Catalog { flavor, bounds, graphs, index })
    }
}

/// Convenience: catalog graph index of a freestanding graph, by key.
pub fn class_in(catalog: &Catalog, g: &Graph) -> usize {
    catalog
        .class_of(g)
        .unwrap_or_else(|| panic!("graph not in catalog: {:?}", g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        chain, corolla, exceptional_edge, exceptional_loop, two_cycle, Flavor,
    };

    #[test]
    fn canonical_invariant_under_relabeling() {
        let g = chain(Flavor::WheelFree, 3);
        let relabeled = g.relabel(&[2, 0, 1], &[3, 1, 0, 2]);
        assert_eq!(canonical_key(&g).unwrap(), canonical_key(&relabeled).unwrap());
    }

    #[test]
    fn edge_and_loop_distinct() {
        let up = exceptional_edge(Flavor::WheeledA);
        let wheel = exceptional_loop(Flavor::WheeledA).unwrap();
        assert_ne!(canonical_key(&up).unwrap(), canonical_key(&wheel).unwrap());
    }

    #[test]
    fn chain_and_parallel_pair_distinct() {
        let chain2 = chain(Flavor::WheelFree, 2);
        // Two vertices joined by two parallel edges, one leg each side.
        let parallel = Graph::new(
            Flavor::WheelFree,
            2,
            vec![
                EdgeRec { src: None, tgt: Some(VertexId(0)), closed: false },
                EdgeRec { src: Some(VertexId(0)), tgt: Some(VertexId(1)), closed: false },
                EdgeRec { src: Some(VertexId(0)), tgt: Some(VertexId(1)), closed: false },
                EdgeRec { src: Some(VertexId(1)), tgt: None, closed: false },
            ],
        )
        .unwrap();
        assert_ne!(canonical_key(&chain2).unwrap(), canonical_key(&parallel).unwrap());
    }

    #[test]
    fn tiny_wheel_free_catalog() {
        // Bounds (1,0,2,2): ↑, •, C(1;0), C(0;1), C(1;1), C(2;0), C(0;2).
        let c = enumerate_graphs(
            Flavor::WheelFree,
            Bounds { max_vertices: 1, max_inner: 0, max_valence: 2, max_legs: 2 },
        );
        assert_eq!(c.len(), 7);
    }

    #[test]
    fn wheeled_b_excludes_loop() {
        let b = enumerate_graphs(Flavor::WheeledB, Bounds::default());
        assert!(b.graphs.iter().all(|g| !g.is_exceptional_loop()));
        let a = enumerate_graphs(Flavor::WheeledA, Bounds::default());
        assert!(a.graphs.iter().any(|g| g.is_exceptional_loop()));
        assert_eq!(a.len(), b.len() + 1);
    }

    #[test]
    fn count_monotone_in_bounds() {
        let small = enumerate_graphs(
            Flavor::WheelFree,
            Bounds { max_vertices: 2, max_inner: 2, max_valence: 2, max_legs: 2 },
        );
        for grow in 0..4 {
            let mut b = Bounds { max_vertices: 2, max_inner: 2, max_valence: 2, max_legs: 2 };
            match grow {
                0 => b.max_vertices += 1,
                1 => b.max_inner += 1,
                2 => b.max_valence += 1,
                _ => b.max_legs += 1,
            }
            assert!(enumerate_graphs(Flavor::WheelFree, b).len() >= small.len());
        }
    }

    #[test]
    fn catalog_contains_standard_graphs() {
        let c = enumerate_graphs(Flavor::WheeledA, Bounds::default());
        for g in [
            exceptional_edge(Flavor::WheeledA),
            exceptional_loop(Flavor::WheeledA).unwrap(),
            corolla(Flavor::WheeledA, 0, 0),
            corolla(Flavor::WheeledA, 2, 1),
            chain(Flavor::WheeledA, 3),
            two_cycle(Flavor::WheeledA).unwrap(),
            crate::graph::contracted_unary_corolla(Flavor::WheeledA).unwrap(),
        ] {
            assert!(c.class_of(&g).is_some(), "missing {g:?}");
        }
    }

    #[test]
    fn refuses_oversized() {
        let g = chain(Flavor::WheelFree, 5);
        assert_eq!(canonical_key(&g).unwrap_err(), CatalogError::TooLarge);
    }

    #[test]
    fn canonicalize_produces_matching_representative() {
        let g = two_cycle(Flavor::WheeledA).unwrap();
        let (key, canon, _, _) = canonicalize(&g).unwrap();
        assert_eq!(canonical_key(&canon).unwrap(), key);
    }
}
