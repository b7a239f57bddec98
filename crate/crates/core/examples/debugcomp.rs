use graphical::catalog::{enumerate_graphs, Bounds, CatalogCtx};
use graphical::graph::Flavor;
use graphical::morphism::compose;

fn main() {
    for flavor in [Flavor::WheelFree, Flavor::WheeledA, Flavor::WheeledB] {
        let ctx = CatalogCtx::new(enumerate_graphs(
            flavor,
            Bounds { max_vertices: 2, max_inner: 2, max_valence: 2, max_legs: 2 },
        ));
        let n = ctx.len();
        let mut composites = 0usize;
        for g in 0..n {
            for k in 0..n {
                for m1 in ctx.hom(g, k).iter() {
                    for l in 0..n {
                        for m2 in ctx.hom(k, l).iter() {
                            let c = compose(m2, m1).unwrap();
                            assert_eq!(c.check(), Ok(()), "bad composite {m1:?} ; {m2:?}");
                            assert!(
                                ctx.hom(g, l).iter().any(|h| h == &c),
                                "composite missing from hom-set"
                            );
                            composites += 1;
                        }
                    }
                }
            }
        }
        // Associativity of triple composites.
        let mut triples = 0usize;
        for g in 0..n {
            for k in 0..n {
                for m1 in ctx.hom(g, k).iter() {
                    for l in 0..n {
                        for m2 in ctx.hom(k, l).iter() {
                            for o in 0..n {
                                for m3 in ctx.hom(l, o).iter() {
                                    let left = compose(m3, &compose(m2, m1).unwrap()).unwrap();
                                    let right = compose(&compose(m3, m2).unwrap(), m1).unwrap();
                                    assert_eq!(left, right, "associativity violated");
                                    triples += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        println!("{flavor}: catalog {n}, {composites} composites valid & closed, {triples} triples associative");
    }
}
