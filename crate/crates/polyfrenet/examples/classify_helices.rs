//! Closed-form classification of r-harmonic helices in space forms.
//!
//! ```bash
//! cargo run -p polyfrenet --example classify_helices
//! ```

use polyfrenet::classify::{
    classify_2frenet, classify_3frenet, classify_nfrenet_biharmonic, classify_triharmonic_2frenet,
};
use polyfrenet::exact::rat_int;
use polyfrenet::metric::Sign;

fn show(label: &str, result: &polyfrenet::classify::ClassificationResult) {
    println!("== {label}");
    println!("   status: {:?}", result.status);
    for s in &result.solutions {
        match s {
            polyfrenet::classify::Solution::Value {
                name,
                exact,
                value,
                degenerate,
                ..
            } => {
                let tag = if *degenerate { " (degenerate)" } else { "" };
                println!("   {name} = {exact} = {value}{tag}");
            }
            polyfrenet::classify::Solution::Family { description } => {
                println!("   family: {description}");
            }
        }
    }
    if let Some(cert) = &result.certificate {
        println!("   certificate: {cert}");
    }
    println!();
}

fn main() {
    let (p, m) = (Sign::Plus, Sign::Minus);

    // single-curvature helices: the candidate is kappa^2 = eps2 (r-1) c
    show(
        "order 2 frame, c = 1, space-like normal, r = 2 (circle in positive curvature)",
        &classify_2frenet(&rat_int(1), p, p, 2, false).unwrap(),
    );
    show(
        "order 2 frame on a Lorentz surface, c = -1, r = 3",
        &classify_2frenet(&rat_int(-1), p, m, 3, true).unwrap(),
    );
    show(
        "triharmonic single-curvature helix, c = 1, time-like normal (infeasible)",
        &classify_triharmonic_2frenet(&rat_int(1), m),
    );

    // curvature/torsion pairs
    show(
        "order 3 frame, flat, space-like normal: one-parameter family",
        &classify_3frenet(&rat_int(0), (p, p, m), 2, None).unwrap(),
    );
    show(
        "order 3 frame, c = 1, r = 3, kappa_sq = 2: root collision at the case boundary",
        &classify_3frenet(&rat_int(1), (p, p, m), 3, Some(&rat_int(2))).unwrap(),
    );
    show(
        "order 3 frame, c = 1, time-like normal, r = 4 (infeasible)",
        &classify_3frenet(&rat_int(1), (p, m, p), 4, None).unwrap(),
    );

    // higher frame orders: full biharmonic helices never exist
    show(
        "order 4 frame, c = 1, biharmonic, full curve",
        &classify_nfrenet_biharmonic(&[p, p, p, p], &rat_int(1), true).unwrap(),
    );
    show(
        "order 4 frame, c = 1, biharmonic, trailing curvature allowed to vanish",
        &classify_nfrenet_biharmonic(&[p, p, p, p], &rat_int(1), false).unwrap(),
    );
}
