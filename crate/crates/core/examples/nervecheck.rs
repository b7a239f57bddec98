use graphical::catalog::{enumerate_graphs, Bounds, CatalogCtx};
use graphical::graph::Flavor;
use graphical::properad::{nerve, EndProperad, MatrixEnd};
use graphical::segal::{horn_wheel_check, satisfies_segal};
use std::time::Instant;

fn main() {
    let small = Bounds { max_vertices: 2, max_inner: 2, max_valence: 3, max_legs: 3 };
    let t = Instant::now();
    let ctx = CatalogCtx::new(enumerate_graphs(Flavor::WheelFree, small));
    let p = EndProperad::new(2, 3);
    let k = nerve(&ctx, &p, 9);
    println!("Γ nerve(end2): built {:?}", t.elapsed());
    let t = Instant::now();
    println!("  validate: {:?} in {:?}", k.validate(&ctx).is_ok(), t.elapsed());
    let t = Instant::now();
    let rep = satisfies_segal(&ctx, &k);
    println!("  segal: pass={} failures {:?} in {:?}", rep.pass(), rep.failures(), t.elapsed());

    for flavor in [Flavor::WheeledA, Flavor::WheeledB] {
        let t = Instant::now();
        let ctx = CatalogCtx::new(enumerate_graphs(flavor, small));
        let p = MatrixEnd::new(2, 3, flavor);
        let k = nerve(&ctx, &p, 9);
        println!("{flavor} nerve(matrixend2): built {:?}", t.elapsed());
        let t = Instant::now();
        println!("  validate: {:?} in {:?}", k.validate(&ctx).is_ok(), t.elapsed());
        let t = Instant::now();
        let rep = satisfies_segal(&ctx, &k);
        let fails: Vec<_> = rep.failures().iter().map(|&i| format!("{:?}", ctx.graph(i))).collect();
        println!("  segal: pass={} failures: {:?} in {:?}", rep.pass(), fails, t.elapsed());
        if flavor == Flavor::WheeledA {
            println!("  horn: {:?}", horn_wheel_check(&ctx, &k));
        }
    }
}
