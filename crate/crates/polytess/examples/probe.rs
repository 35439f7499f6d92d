use polytess::analytic;
use polytess::directional::{DirectionalDistribution, IntensityProfile};
use polytess::typical::typical_cell_vertex_distribution;

fn main() {
    let cases: Vec<(&str, DirectionalDistribution, f64)> = vec![
        ("g3(1/3,1/3)", DirectionalDistribution::g3(1.0/3.0, 1.0/3.0).unwrap(), 2.0/9.0),
        ("g3(0.2,0.5)", DirectionalDistribution::g3(0.2, 0.5).unwrap(), analytic::p3_g3(0.2, 0.5).unwrap().value),
        ("g4(1/4^3)  ", DirectionalDistribution::g4(0.25, 0.25, 0.25).unwrap(), analytic::p3_g4(0.25,0.25,0.25).unwrap().value),
        ("gk(5)      ", DirectionalDistribution::gk(5).unwrap(), analytic::p3_gk(5).unwrap().value),
        ("gk(6)      ", DirectionalDistribution::gk(6).unwrap(), analytic::p3_gk(6).unwrap().value),
        ("unif       ", DirectionalDistribution::uniform(), analytic::p3_uniform().value),
    ];
    for (name, g, exact) in &cases {
        let p = IntensityProfile::new(g.clone());
        let vd = typical_cell_vertex_distribution(&p, 1.0, 30_000, 1234);
        let s3 = vd.share(3);
        let mv = &vd.mean_vertices;
        println!("{name}: P3={:.5} dev={:+.2}s | meanV dev={:+.2}s | failed={}",
            s3.estimate, (s3.estimate-exact)/s3.std_error,
            (mv.estimate-4.0)/mv.std_error, vd.n_failed);
    }
}
