use graphical::catalog::{enumerate_graphs, Bounds, CatalogCtx};
use graphical::graph::Flavor;
use graphical::reedy::{check_reedy_axioms, DegreeFunction};
use std::time::Instant;

fn main() {
    for flavor in [Flavor::WheeledA, Flavor::WheeledB, Flavor::WheelFree] {
        let t = Instant::now();
        let ctx = CatalogCtx::new(enumerate_graphs(flavor, Bounds::default()));
        let total = ctx.total_morphisms();
        println!("{flavor}: {} graphs, {} morphisms, hom table in {:?}", ctx.len(), total, t.elapsed());
        let t = Instant::now();
        let report = check_reedy_axioms(&ctx, DegreeFunction::Flavored);
        println!("  reedy axioms in {:?}: pass={}", t.elapsed(), report.pass());
        for c in &report.checks {
            if !c.pass {
                println!("  FAIL {}: {} counterexamples, first: {:?}", c.axiom, c.counterexamples.len(), c.counterexamples.first());
            }
        }
    }
}
