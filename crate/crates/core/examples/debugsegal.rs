use graphical::catalog::{class_in, enumerate_graphs, Bounds, CatalogCtx};
use graphical::graph::Flavor;
use graphical::presheaf::representable;
use graphical::segal::{core_families, satisfies_segal};

fn main() {
    let ctx = CatalogCtx::new(enumerate_graphs(
        Flavor::WheeledA,
        Bounds { max_vertices: 2, max_inner: 2, max_valence: 2, max_legs: 2 },
    ));
    let up = class_in(&ctx.catalog, &graphical::graph::exceptional_edge(Flavor::WheeledA));
    let k = representable(&ctx, up, 9);
    let report = satisfies_segal(&ctx, &k);
    for c in &report.clauses {
        if !c.bijective {
            println!("FAIL at {}: {:?} values={} families={}", c.graph, ctx.graph(c.graph), c.value_count, c.family_count);
            let fams = core_families(&ctx, &k, c.graph);
            println!("families: {:?}", fams);
        }
    }
}
