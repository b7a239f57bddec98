//! Generalized Reedy and Eilenberg-Zilber structure, verified exhaustively:
//! factorizations with their iso-orbits, codegeneracy sections, strong
//! pushouts, the axiom suites for both wheeled flavors, the EZ suite for
//! the wheel-free category, and the wheeled counterexamples.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use crate::catalog::CatalogCtx;
use crate::graph::{EdgeId, Flavor, Graph, VertexId};
use crate::morphism::{compose, GraphMorphism, MorphismClass};
use crate::presheaf::{canonical_degeneracy, representable};
use crate::segal::{pullback_check, PushoutSquare};
use crate::subgraph::Subgraph;

/// Which degree function an axiom sweep uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeFunction {
    /// The flavor's own degree (vertex count in Γ; shifted count in Γ↻).
    Flavored,
    /// The unshifted candidate `|vertices| + |inner edges|`, kept to show
    /// the exceptional inner coface breaks axiom (i) without the shift.
    Unshifted,
}

impl DegreeFunction {
    pub fn of(self, g: &Graph, flavor: Flavor) -> usize {
        match self {
            DegreeFunction::Flavored => g.degree(flavor),
            DegreeFunction::Unshifted => g.degree_unshifted(),
        }
    }
}

/// Result of one axiom or clause check.
#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub axiom: String,
    pub pass: bool,
    pub counterexamples: Vec<GraphMorphism>,
    pub checked: usize,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<AxiomCheck>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// All sections of `s`, by filtering the reverse hom-set.
pub fn sections(ctx: &CatalogCtx, src: usize, tgt: usize, s: &GraphMorphism) -> Vec<GraphMorphism> {
    ctx.hom(tgt, src)
        .iter()
        .filter(|g| compose(s, g).map(|c| c.is_identity()).unwrap_or(false))
        .cloned()
        .collect()
}

/// Number of set-theoretic sections of the edge action: the product of the
/// fiber sizes of `s0` over the target's edges.
pub fn edge_section_count(s: &GraphMorphism) -> usize {
    let tgt_edges = s.target().edge_count();
    let mut fiber = vec![0usize; tgt_edges];
    for e in s.source().edge_ids() {
        fiber[s.map_edge(e).index()] += 1;
    }
    fiber.into_iter().product()
}

/// Section of a single wheel-free codegeneracy hitting a chosen edge: the
/// coface that keeps `e` in its image, built from the local picture around
/// the degenerate vertex.
pub fn section_through_edge(s: &GraphMorphism, e: EdgeId) -> Result<GraphMorphism, String> {
    if s.source().flavor() != Flavor::WheelFree {
        return Err("codegeneracy sections are a wheel-free construction".into());
    }
    if s.classify() != MorphismClass::Codegeneracy {
        return Err("not a single codegeneracy".into());
    }
    let g = s.source();
    let h = s.target();
    let v = g
        .vertices()
        .find(|&v| s.map_vertex(v).is_edge())
        .expect("codegeneracies have a degenerate vertex");
    let b_in = *g.inputs_of(v).iter().next().unwrap();
    let b_out = *g.outputs_of(v).iter().next().unwrap();
    let b = s.map_edge(b_in);
    debug_assert_eq!(b, s.map_edge(b_out));
    let keep_in = e == b_in;

    let mut f0 = Vec::with_capacity(h.edge_count());
    for a in h.edge_ids() {
        if a == b {
            f0.push(if keep_in { b_in } else { b_out });
        } else {
            let preimage = g
                .edge_ids()
                .find(|&x| x != b_in && x != b_out && s.map_edge(x) == a)
                .expect("codegeneracies are bijective away from the fused pair");
            f0.push(preimage);
        }
    }

    // The vertex adjacent to the unused copy of the fused edge absorbs the
    // degenerate vertex into a two-vertex span.
    let producer = g.src(b_in);
    let consumer = g.tgt(b_out);
    let mut f1 = Vec::with_capacity(h.vertex_count());
    for x in h.vertices() {
        let ux = g
            .vertices()
            .find(|&u| s.map_vertex(u).as_corolla(h) == Some(x))
            .expect("codegeneracies cover the target's corollas");
        let absorbs = if keep_in { consumer == Some(ux) } else { producer == Some(ux) };
        if absorbs {
            f1.push(Subgraph::Span(BTreeSet::from([ux, v])));
        } else {
            f1.push(Subgraph::corolla_at(g, ux));
        }
    }
    let section = GraphMorphism::new(h.clone(), g.clone(), f0, f1);
    section.check().map_err(|err| err.to_string())?;
    debug_assert!(compose(s, &section).unwrap().is_identity());
    debug_assert!(section.f0().contains(&e));
    Ok(section)
}

/// Reedy factorization: collapse the source at every edge-valued vertex,
/// then map the reduction onward. Returns `(h, mid, g)` with `h` in minus,
/// `g` in plus, and `g∘h = f`.
pub fn reedy_factorize(
    ctx: &CatalogCtx,
    src: usize,
    tgt: usize,
    f: &GraphMorphism,
) -> (GraphMorphism, usize, GraphMorphism) {
    let g = ctx.graph(src);
    let degenerate: Vec<VertexId> =
        g.vertices().filter(|&v| f.map_vertex(v).is_edge()).collect();
    let (mid, h) = canonical_degeneracy(ctx, src, &degenerate);
    let mid_graph = ctx.graph(mid);
    // The onward edge action is induced on the quotient; the onward vertex
    // action transports the surviving assignments.
    let mut g0 = vec![EdgeId(0); mid_graph.edge_count()];
    for e in g.edge_ids() {
        g0[h.map_edge(e).index()] = f.map_edge(e);
    }
    let mut g1 = vec![Subgraph::Wheel; mid_graph.vertex_count()];
    for v in g.vertices() {
        if let Some(x) = h.map_vertex(v).as_corolla(mid_graph) {
            g1[x.index()] = f.map_vertex(v).clone();
        }
    }
    let onward = GraphMorphism::new(mid_graph.clone(), ctx.graph(tgt).clone(), g0, g1);
    debug_assert_eq!(onward.check(), Ok(()));
    debug_assert_eq!(&compose(&onward, &h).unwrap(), f);
    (h, mid, onward)
}

/// Every factorization of `f` into minus-then-plus through every catalog
/// intermediate, as `(mid, h, g)` triples.
pub fn all_reedy_factorizations(
    ctx: &CatalogCtx,
    src: usize,
    tgt: usize,
    f: &GraphMorphism,
) -> Vec<(usize, GraphMorphism, GraphMorphism)> {
    let mut out = Vec::new();
    for mid in 0..ctx.len() {
        let down = ctx.hom(src, mid);
        if down.is_empty() {
            continue;
        }
        let up = ctx.hom(mid, tgt);
        if up.is_empty() {
            continue;
        }
        for h in down.iter().filter(|h| h.in_minus()) {
            for g in up.iter().filter(|g| g.in_plus()) {
                if &compose(g, h).unwrap() == f {
                    out.push((mid, h.clone(), g.clone()));
                }
            }
        }
    }
    out
}

/// Checks that all factorizations form one orbit under isomorphisms of the
/// intermediate object.
fn single_orbit(
    ctx: &CatalogCtx,
    canonical: &(GraphMorphism, usize, GraphMorphism),
    all: &[(usize, GraphMorphism, GraphMorphism)],
) -> bool {
    let (h0, m0, g0) = canonical;
    all.iter().all(|(m, h, g)| {
        ctx.hom(*m0, *m).iter().any(|theta| {
            theta.is_isomorphism()
                && &compose(theta, h0).unwrap() == h
                && &compose(g, theta).unwrap() == g0
        })
    })
}

/// Strong pushout of two single codegeneracies with common source. Returns
/// the cocone maps and the apex index.
pub fn strong_pushout(
    ctx: &CatalogCtx,
    src: usize,
    s1: (usize, &GraphMorphism),
    s2: (usize, &GraphMorphism),
) -> Result<PushoutSquare, String> {
    let (t1, m1) = s1;
    let (t2, m2) = s2;
    if m1 == m2 {
        let id = GraphMorphism::identity(ctx.graph(t1).clone());
        return Ok(PushoutSquare {
            source: src,
            s1: m1.clone(),
            s2: m2.clone(),
            mid1: t1,
            mid2: t2,
            f1: id.clone(),
            f2: id,
            apex: t1,
        });
    }
    if m1.classify() != MorphismClass::Codegeneracy || m2.classify() != MorphismClass::Codegeneracy
    {
        return Err("strong pushouts are built for single codegeneracies".into());
    }
    let g = ctx.graph(src);
    let v1 = g.vertices().find(|&v| m1.map_vertex(v).is_edge()).unwrap();
    let v2 = g.vertices().find(|&v| m2.map_vertex(v).is_edge()).unwrap();
    if v1 == v2 {
        // Same reduction twisted by an isomorphism of the target.
        let theta = ctx
            .hom(t1, t2)
            .iter()
            .find(|t| t.is_isomorphism() && &compose(t, m1).unwrap() == m2)
            .cloned()
            .ok_or("codegeneracies at one vertex differ by a target isomorphism")?;
        let id = GraphMorphism::identity(ctx.graph(t2).clone());
        return Ok(PushoutSquare {
            source: src,
            s1: m1.clone(),
            s2: m2.clone(),
            mid1: t1,
            mid2: t2,
            f1: theta,
            f2: id,
            apex: t2,
        });
    }
    let (apex, sigma) = canonical_degeneracy(ctx, src, &[v1, v2]);
    let complement = |t: usize, m: &GraphMorphism, other: VertexId| -> GraphMorphism {
        let t_graph = ctx.graph(t);
        let mut f0 = vec![EdgeId(0); t_graph.edge_count()];
        for e in g.edge_ids() {
            f0[m.map_edge(e).index()] = sigma.map_edge(e);
        }
        let apex_graph = ctx.graph(apex);
        let mut f1 = vec![Subgraph::Wheel; t_graph.vertex_count()];
        for u in g.vertices() {
            if let Some(x) = m.map_vertex(u).as_corolla(t_graph) {
                f1[x.index()] = if u == other {
                    let b = *g.inputs_of(u).iter().next().unwrap();
                    Subgraph::Edge(sigma.map_edge(b))
                } else {
                    sigma.map_vertex(u).clone()
                };
            }
        }
        let out = GraphMorphism::new(t_graph.clone(), apex_graph.clone(), f0, f1);
        debug_assert_eq!(out.check(), Ok(()));
        out
    };
    let f1 = complement(t1, m1, v2);
    let f2 = complement(t2, m2, v1);
    debug_assert_eq!(compose(&f1, m1).unwrap(), compose(&f2, m2).unwrap());
    Ok(PushoutSquare {
        source: src,
        s1: m1.clone(),
        s2: m2.clone(),
        mid1: t1,
        mid2: t2,
        f1,
        f2,
        apex,
    })
}

/// Sweeps the generalized Reedy axioms (i), (ii), (iii), (iv), (iv′) over
/// every morphism between catalog graphs.
pub fn check_reedy_axioms(ctx: &CatalogCtx, degree: DegreeFunction) -> Report {
    let flavor = ctx.flavor();
    let n = ctx.len();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|g| (0..n).map(move |k| (g, k))).collect();

    let results: Vec<(usize, Vec<GraphMorphism>, Vec<GraphMorphism>, Vec<GraphMorphism>, Vec<GraphMorphism>, Vec<GraphMorphism>)> = pairs
        .par_iter()
        .map(|&(gi, ki)| {
            let mut bad_i = Vec::new();
            let mut bad_ii = Vec::new();
            let mut bad_iii = Vec::new();
            let mut bad_iv = Vec::new();
            let mut bad_iv_prime = Vec::new();
            let homs = ctx.hom(gi, ki);
            let dg = degree.of(ctx.graph(gi), flavor);
            let dk = degree.of(ctx.graph(ki), flavor);
            for m in homs.iter() {
                let iso = m.is_isomorphism();
                let plus = m.in_plus();
                let minus = m.in_minus();
                // (i) degree monotonicity.
                let ok_i = if iso {
                    dg == dk
                } else {
                    (!plus || dk > dg) && (!minus || dk < dg)
                };
                if !ok_i {
                    bad_i.push(m.clone());
                }
                // (ii) plus ∩ minus = iso.
                if (plus && minus) != iso && (plus && minus || iso) {
                    if !(iso && plus && minus) {
                        bad_ii.push(m.clone());
                    }
                }
                // (iii) factorization exists, recomposes, single orbit.
                let fact = reedy_factorize(ctx, gi, ki, m);
                let ok_fact = fact.0.in_minus()
                    && fact.2.in_plus()
                    && &compose(&fact.2, &fact.0).unwrap() == m;
                if !ok_fact {
                    bad_iii.push(m.clone());
                } else {
                    let all = all_reedy_factorizations(ctx, gi, ki, m);
                    if all.is_empty() || !single_orbit(ctx, &fact, &all) {
                        bad_iii.push(m.clone());
                    }
                }
                // (iv) θ∘f = f with f minus forces θ = id.
                if minus {
                    for theta in ctx.hom(ki, ki).iter() {
                        if theta.is_isomorphism()
                            && &compose(theta, m).unwrap() == m
                            && !theta.is_identity()
                        {
                            bad_iv.push(m.clone());
                        }
                    }
                }
                // (iv′) f∘θ = f with f plus forces θ = id.
                if plus {
                    for theta in ctx.hom(gi, gi).iter() {
                        if theta.is_isomorphism()
                            && &compose(m, theta).unwrap() == m
                            && !theta.is_identity()
                        {
                            bad_iv_prime.push(m.clone());
                        }
                    }
                }
            }
            (homs.len(), bad_i, bad_ii, bad_iii, bad_iv, bad_iv_prime)
        })
        .collect();

    let checked: usize = results.iter().map(|r| r.0).sum();
    let collect = |pick: fn(&(usize, Vec<GraphMorphism>, Vec<GraphMorphism>, Vec<GraphMorphism>, Vec<GraphMorphism>, Vec<GraphMorphism>)) -> &Vec<GraphMorphism>| {
        results.iter().flat_map(|r| pick(r).iter().cloned()).collect::<Vec<_>>()
    };
    let bad_i = collect(|r| &r.1);
    let bad_ii = collect(|r| &r.2);
    let bad_iii = collect(|r| &r.3);
    let bad_iv = collect(|r| &r.4);
    let bad_iv_prime = collect(|r| &r.5);

    let name = |axiom: &str| match degree {
        DegreeFunction::Flavored => axiom.to_string(),
        DegreeFunction::Unshifted => format!("{axiom} (unshifted degree)"),
    };
    Report {
        checks: vec![
            AxiomCheck { axiom: name("i"), pass: bad_i.is_empty(), counterexamples: bad_i, checked },
            AxiomCheck { axiom: name("ii"), pass: bad_ii.is_empty(), counterexamples: bad_ii, checked },
            AxiomCheck { axiom: name("iii"), pass: bad_iii.is_empty(), counterexamples: bad_iii, checked },
            AxiomCheck { axiom: name("iv"), pass: bad_iv.is_empty(), counterexamples: bad_iv, checked },
            AxiomCheck { axiom: name("iv'"), pass: bad_iv_prime.is_empty(), counterexamples: bad_iv_prime, checked },
        ],
    }
}

/// Brute-force monomorphism test: postcomposition is injective on every
/// catalog hom-set into the source.
pub fn is_mono_brute(ctx: &CatalogCtx, src: usize, tgt: usize, m: &GraphMorphism) -> bool {
    for h in 0..ctx.len() {
        let probes = ctx.hom(h, src);
        let mut seen: HashSet<Vec<EdgeId>> = HashSet::with_capacity(probes.len());
        for x in probes.iter() {
            let composed = compose(m, x).unwrap();
            if !seen.insert(composed.f0().to_vec()) {
                return false;
            }
        }
    }
    true
}

/// Brute-force split-epimorphism test: some reverse morphism is a section.
pub fn is_split_epi_brute(ctx: &CatalogCtx, src: usize, tgt: usize, m: &GraphMorphism) -> bool {
    ctx.hom(tgt, src)
        .iter()
        .any(|x| compose(m, x).unwrap().is_identity())
}

/// The Eilenberg-Zilber suite for the wheel-free category: mono/split-epi
/// coincidences, split-epi-mono factorizations, strong pushouts as
/// finite-set pullbacks against representables, section-set determinacy,
/// and the sections bijection.
pub fn check_ez_gamma(ctx: &CatalogCtx, pullback_degree_bound: usize) -> Report {
    assert_eq!(ctx.flavor(), Flavor::WheelFree, "the EZ suite is for Γ");
    let n = ctx.len();
    let mut checks = Vec::new();

    // Clause 1: mono ⇔ plus and split-epi ⇔ minus, everywhere.
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|g| (0..n).map(move |k| (g, k))).collect();
    let clause1: Vec<(usize, Vec<GraphMorphism>, HashMap<(usize, usize, usize), (bool, bool)>)> =
        pairs
            .par_iter()
            .map(|&(gi, ki)| {
                let mut bad = Vec::new();
                let mut memo = HashMap::new();
                let homs = ctx.hom(gi, ki);
                for (pos, m) in homs.iter().enumerate() {
                    let mono = is_mono_brute(ctx, gi, ki, m);
                    let epi = is_split_epi_brute(ctx, gi, ki, m);
                    memo.insert((gi, ki, pos), (mono, epi));
                    if mono != m.in_plus() || epi != m.in_minus() {
                        bad.push(m.clone());
                    }
                }
                (homs.len(), bad, memo)
            })
            .collect();
    let checked: usize = clause1.iter().map(|r| r.0).sum();
    let mut mono_epi: HashMap<(usize, usize, usize), (bool, bool)> = HashMap::new();
    let mut bad1 = Vec::new();
    for (_, bad, memo) in clause1 {
        bad1.extend(bad);
        mono_epi.extend(memo);
    }
    checks.push(AxiomCheck {
        axiom: "mono=plus, split-epi=minus".into(),
        pass: bad1.is_empty(),
        counterexamples: bad1,
        checked,
    });

    // Clause 2: every morphism factors split-epi-then-mono.
    let bad2: Vec<GraphMorphism> = pairs
        .par_iter()
        .flat_map_iter(|&(gi, ki)| {
            let homs = ctx.hom(gi, ki).clone();
            let mut bad = Vec::new();
            for m in homs.iter() {
                let (h, mid, g) = reedy_factorize(ctx, gi, ki, m);
                let h_pos = ctx.hom_position(gi, mid, &h).unwrap();
                let g_pos = ctx.hom_position(mid, ki, &g).unwrap();
                let h_epi = mono_epi
                    .get(&(gi, mid, h_pos))
                    .map(|&(_, e)| e)
                    .unwrap_or_else(|| is_split_epi_brute(ctx, gi, mid, &h));
                let g_mono = mono_epi
                    .get(&(mid, ki, g_pos))
                    .map(|&(mn, _)| mn)
                    .unwrap_or_else(|| is_mono_brute(ctx, mid, ki, &g));
                if !(h_epi && g_mono && &compose(&g, &h).unwrap() == m) {
                    bad.push(m.clone());
                }
            }
            bad
        })
        .collect();
    checks.push(AxiomCheck {
        axiom: "split-epi-then-mono factorization".into(),
        pass: bad2.is_empty(),
        counterexamples: bad2,
        checked,
    });

    // Clause 3: strong pushouts of codegeneracy pairs, verified as
    // finite-set pullbacks against every representable up to the degree
    // bound, including the normal-form route.
    let squares = codegeneracy_squares(ctx);
    let reps: Vec<usize> = (0..n)
        .filter(|&x| ctx.graph(x).degree(Flavor::WheelFree) <= pullback_degree_bound)
        .collect();
    let max_degree = (0..n).map(|i| ctx.graph(i).degree(ctx.flavor())).max().unwrap_or(0);
    let square_count = squares.len();
    let bad3: Vec<GraphMorphism> = reps
        .par_iter()
        .flat_map_iter(|&x| {
            let k = representable(ctx, x, max_degree);
            let mut bad = Vec::new();
            for sq in &squares {
                if !pullback_check(ctx, &k, sq, true) {
                    bad.push(sq.s1.clone());
                }
            }
            bad
        })
        .collect();
    checks.push(AxiomCheck {
        axiom: "strong pushouts are pullbacks on representables".into(),
        pass: bad3.is_empty(),
        counterexamples: bad3,
        checked: square_count * reps.len(),
    });

    // Clause 4: section-set determinacy within each minus hom-set.
    let mut bad4 = Vec::new();
    let mut checked4 = 0usize;
    for &(gi, ki) in &pairs {
        let minus: Vec<&GraphMorphism> =
            ctx.hom(gi, ki).iter().filter(|m| m.in_minus()).collect();
        for (a, s) in minus.iter().enumerate() {
            for s_prime in minus.iter().skip(a + 1) {
                checked4 += 1;
                if sections(ctx, gi, ki, s) == sections(ctx, gi, ki, s_prime) {
                    bad4.push((*s).clone());
                }
            }
        }
    }
    checks.push(AxiomCheck {
        axiom: "section-set determinacy".into(),
        pass: bad4.is_empty(),
        counterexamples: bad4,
        checked: checked4,
    });

    // Clause 5: sections(s) → sections(s0) is a bijection, by counting,
    // for every minus morphism.
    let bad5: Vec<GraphMorphism> = pairs
        .par_iter()
        .flat_map_iter(|&(gi, ki)| {
            let mut bad = Vec::new();
            for m in ctx.hom(gi, ki).iter().filter(|m| m.in_minus()) {
                let secs = sections(ctx, gi, ki, m);
                let mut edge_actions: Vec<Vec<EdgeId>> =
                    secs.iter().map(|d| d.f0().to_vec()).collect();
                edge_actions.sort();
                edge_actions.dedup();
                let injective = edge_actions.len() == secs.len();
                if !injective || secs.len() != edge_section_count(m) {
                    bad.push(m.clone());
                }
            }
            bad
        })
        .collect();
    checks.push(AxiomCheck {
        axiom: "sections biject with edge-level sections".into(),
        pass: bad5.is_empty(),
        counterexamples: bad5,
        checked,
    });

    Report { checks }
}

/// All strong-pushout squares of pairs of single codegeneracies from every
/// catalog source.
pub fn codegeneracy_squares(ctx: &CatalogCtx) -> Vec<PushoutSquare> {
    let n = ctx.len();
    let mut squares = Vec::new();
    for src in 0..n {
        let mut degens: Vec<(usize, GraphMorphism)> = Vec::new();
        for tgt in 0..n {
            for m in ctx.hom(src, tgt).iter() {
                if m.classify() == MorphismClass::Codegeneracy {
                    degens.push((tgt, m.clone()));
                }
            }
        }
        for (t1, m1) in &degens {
            for (t2, m2) in &degens {
                let sq = strong_pushout(ctx, src, (*t1, m1), (*t2, m2))
                    .expect("codegeneracy pairs always push out");
                debug_assert_eq!(
                    compose(&sq.f1, &sq.s1).unwrap(),
                    compose(&sq.f2, &sq.s2).unwrap()
                );
                squares.push(sq);
            }
        }
    }
    squares
}

/// One intermediate record of the no-factorization sweep.
#[derive(Debug, Clone)]
pub struct SweepRecord {
    pub mid: usize,
    pub factorizations: usize,
    pub split_epi_then_mono: usize,
}

/// The wheeled counterexample: a codegeneracy with no section, plus an
/// exhaustive certificate that it admits no split-epi-then-mono
/// factorization through any catalog graph.
#[derive(Debug, Clone)]
pub struct NotEzWitness {
    pub flavor: Flavor,
    pub source: usize,
    pub target: usize,
    pub codegeneracy: GraphMorphism,
    pub maps_back: usize,
    pub sections_found: usize,
    pub sweep: Vec<SweepRecord>,
}

impl NotEzWitness {
    pub fn certified(&self) -> bool {
        self.sections_found == 0
            && self.sweep.iter().all(|r| r.split_epi_then_mono == 0)
    }
}

/// Produces the counterexample for the flavor: `ξ¹₁C(1;1) → ↻` in
/// wheeled-a, and the two-vertex wheel onto `ξ¹₁C(1;1)` in wheeled-b.
pub fn witness_gammaw_not_ez(ctx: &CatalogCtx) -> Result<NotEzWitness, String> {
    let (src_graph, tgt_graph): (Graph, Graph) = match ctx.flavor() {
        Flavor::WheeledA => (
            crate::graph::contracted_unary_corolla(Flavor::WheeledA).unwrap(),
            crate::graph::exceptional_loop(Flavor::WheeledA).unwrap(),
        ),
        Flavor::WheeledB => (
            crate::graph::two_cycle(Flavor::WheeledB).unwrap(),
            crate::graph::contracted_unary_corolla(Flavor::WheeledB).unwrap(),
        ),
        Flavor::WheelFree => return Err("Γ is an EZ-category; no witness exists".into()),
    };
    let src = ctx.catalog.class_of(&src_graph).ok_or("source not in catalog")?;
    let tgt = ctx.catalog.class_of(&tgt_graph).ok_or("target not in catalog")?;
    let s = ctx
        .hom(src, tgt)
        .iter()
        .find(|m| m.classify() == MorphismClass::Codegeneracy)
        .cloned()
        .ok_or("no codegeneracy between the witness graphs")?;

    let maps_back = ctx.hom(tgt, src).len();
    let sections_found = sections(ctx, src, tgt, &s).len();
    let sweep: Vec<SweepRecord> = (0..ctx.len())
        .into_par_iter()
        .map(|mid| {
            let mut factorizations = 0usize;
            let mut viable = 0usize;
            for g in ctx.hom(src, mid).iter() {
                for f in ctx.hom(mid, tgt).iter() {
                    if compose(f, g).unwrap() == s {
                        factorizations += 1;
                        if is_mono_brute(ctx, mid, tgt, f) && is_split_epi_brute(ctx, src, mid, g)
                        {
                            viable += 1;
                        }
                    }
                }
            }
            SweepRecord { mid, factorizations, split_epi_then_mono: viable }
        })
        .collect();
    Ok(NotEzWitness {
        flavor: ctx.flavor(),
        source: src,
        target: tgt,
        codegeneracy: s,
        maps_back,
        sections_found,
        sweep,
    })
}

/// The Γ ⊆ Γ↻ compatibility sweep: minus-maps out of wheel-free graphs stay
/// wheel-free, plus-maps into wheel-free graphs come from wheel-free
/// graphs, and the wheel-free degree is dominated by the wheeled one.
pub fn check_gamma_inclusion(ctx: &CatalogCtx) -> AxiomCheck {
    assert!(ctx.flavor().is_wheeled());
    let n = ctx.len();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|g| (0..n).map(move |k| (g, k))).collect();
    let bad: Vec<GraphMorphism> = pairs
        .par_iter()
        .flat_map_iter(|&(gi, ki)| {
            let g_free = ctx.graph(gi).is_wheel_free();
            let k_free = ctx.graph(ki).is_wheel_free();
            let mut bad = Vec::new();
            for m in ctx.hom(gi, ki).iter() {
                if m.in_minus() && g_free && !k_free {
                    bad.push(m.clone());
                }
                if m.in_plus() && k_free && !g_free {
                    bad.push(m.clone());
                }
            }
            bad
        })
        .collect();
    let degrees_ok = (0..n).all(|i| {
        let g = ctx.graph(i);
        !g.is_wheel_free() || g.degree(Flavor::WheelFree) <= g.degree(ctx.flavor())
    });
    let checked: usize = (0..n).map(|g| (0..n).map(|k| ctx.hom(g, k).len()).sum::<usize>()).sum();
    AxiomCheck {
        axiom: "Γ ⊆ Γ↻ fibering/cofibering".into(),
        pass: bad.is_empty() && degrees_ok,
        counterexamples: bad,
        checked,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{class_in, enumerate_graphs, Bounds};
    use crate::graph::{chain, corolla, exceptional_edge};

    fn gamma_ctx() -> CatalogCtx {
        CatalogCtx::new(enumerate_graphs(
            Flavor::WheelFree,
            Bounds { max_vertices: 2, max_inner: 2, max_valence: 3, max_legs: 3 },
        ))
    }

    fn wheeled_ctx() -> CatalogCtx {
        CatalogCtx::new(enumerate_graphs(
            Flavor::WheeledA,
            Bounds { max_vertices: 2, max_inner: 2, max_valence: 2, max_legs: 2 },
        ))
    }

    #[test]
    fn factorize_identity_and_codegeneracy() {
        let ctx = gamma_ctx();
        let c = class_in(&ctx.catalog, &corolla(Flavor::WheelFree, 1, 1));
        let up = class_in(&ctx.catalog, &exceptional_edge(Flavor::WheelFree));
        let id = GraphMorphism::identity(ctx.graph(c).clone());
        let (h, mid, g) = reedy_factorize(&ctx, c, c, &id);
        assert!(h.is_identity() && g.is_identity() && mid == c);
        let s = ctx.hom(c, up)[0].clone();
        let (h, mid, g) = reedy_factorize(&ctx, c, up, &s);
        assert_eq!(mid, up);
        assert_eq!(h, s);
        assert!(g.is_identity());
    }

    #[test]
    fn sections_of_unary_codegeneracy() {
        let ctx = gamma_ctx();
        let c = class_in(&ctx.catalog, &corolla(Flavor::WheelFree, 1, 1));
        let up = class_in(&ctx.catalog, &exceptional_edge(Flavor::WheelFree));
        let s = ctx.hom(c, up)[0].clone();
        let secs = sections(&ctx, c, up, &s);
        assert_eq!(secs.len(), 2);
        assert_eq!(edge_section_count(&s), 2);
    }

    #[test]
    fn section_through_each_edge() {
        let ctx = gamma_ctx();
        let two = class_in(&ctx.catalog, &chain(Flavor::WheelFree, 2));
        let one = class_in(&ctx.catalog, &chain(Flavor::WheelFree, 1));
        let s = ctx
            .hom(two, one)
            .iter()
            .find(|m| m.classify() == MorphismClass::Codegeneracy)
            .cloned()
            .unwrap();
        for e in ctx.graph(two).edge_ids() {
            let f = section_through_edge(&s, e).unwrap();
            assert!(compose(&s, &f).unwrap().is_identity());
            assert!(f.f0().contains(&e));
        }
    }

    #[test]
    fn section_construction_rejected_in_wheeled() {
        let ctx = wheeled_ctx();
        let xi =
            class_in(&ctx.catalog, &crate::graph::contracted_unary_corolla(Flavor::WheeledA).unwrap());
        let wheel =
            class_in(&ctx.catalog, &crate::graph::exceptional_loop(Flavor::WheeledA).unwrap());
        let s = ctx.hom(xi, wheel)[0].clone();
        assert!(section_through_edge(&s, EdgeId(0)).is_err());
    }

    #[test]
    fn wheeled_codegeneracy_has_no_sections() {
        let ctx = wheeled_ctx();
        let witness = witness_gammaw_not_ez(&ctx).unwrap();
        assert_eq!(witness.maps_back, 0);
        assert_eq!(witness.sections_found, 0);
        assert!(witness.certified());
    }

    #[test]
    fn small_reedy_axioms_pass() {
        for ctx in [gamma_ctx(), wheeled_ctx()] {
            let report = check_reedy_axioms(&ctx, DegreeFunction::Flavored);
            for check in &report.checks {
                assert!(check.pass, "axiom {} failed: {:?}", check.axiom, check.counterexamples.first());
            }
        }
    }

    #[test]
    fn unshifted_degree_fails_exactly_at_exceptional_coface() {
        let ctx = wheeled_ctx();
        let report = check_reedy_axioms(&ctx, DegreeFunction::Unshifted);
        let axiom_i = &report.checks[0];
        assert!(!axiom_i.pass);
        for m in &axiom_i.counterexamples {
            assert!(m.source().is_isolated_vertex());
            assert!(m.target().is_exceptional_loop());
        }
    }

    #[test]
    fn small_ez_suite_passes() {
        let ctx = gamma_ctx();
        let report = check_ez_gamma(&ctx, 4);
        for check in &report.checks {
            assert!(check.pass, "clause {} failed", check.axiom);
        }
    }

    #[test]
    fn gamma_inclusion_compatibility() {
        let ctx = wheeled_ctx();
        let check = check_gamma_inclusion(&ctx);
        assert!(check.pass);
    }

    #[test]
    fn strong_pushout_of_distinct_codegeneracies() {
        // Two distinct unary vertices on a 2-chain reduce to ↑.
        let ctx = gamma_ctx();
        let two = class_in(&ctx.catalog, &chain(Flavor::WheelFree, 2));
        let up = class_in(&ctx.catalog, &exceptional_edge(Flavor::WheelFree));
        let squares = codegeneracy_squares(&ctx);
        let from_two: Vec<&PushoutSquare> =
            squares.iter().filter(|sq| sq.source == two && sq.s1 != sq.s2).collect();
        assert!(!from_two.is_empty());
        for sq in from_two {
            assert_eq!(sq.apex, up);
        }
    }
}
