//! The proper triharmonic circle of the 2-dimensional Lorentz model of
//! positive curvature: a time-like curve of constant curvature sqrt 2,
//! integrated in the quadric chart and checked for conservation and
//! triharmonicity.
//!
//! ```bash
//! cargo run -p polyfrenet --example quadric_triharmonic
//! ```

use polyfrenet::classify::classify_triharmonic_2frenet;
use polyfrenet::exact::rat_int;
use polyfrenet::frenet::Helix;
use polyfrenet::metric::{Sign, Signature};
use polyfrenet::space_form::SpaceForm;
use polyfrenet::synthesize::{
    integrate_frenet, numeric_tension_in_space_form, CurveSpec, SynthesisProblem,
    SynthesisTolerances,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // the classification fixes the curvature: kappa^2 = 2 eps2 c = 2
    let classified = classify_triharmonic_2frenet(&rat_int(1), Sign::Plus);
    println!("classification on c = 1, space-like normal:");
    for v in classified.values() {
        println!("   kappa_sq = {v}");
    }

    let sphere = SpaceForm::new(2, 1, 1.0)?;
    let sig = Signature::from_ints(&[-1, 1], 3, 1)?;
    let helix = Helix::new(sig, vec![2f64.sqrt()])?;
    let problem = SynthesisProblem::with_standard_frame(
        sphere,
        CurveSpec::Helix(helix),
        (0.0, 3.0),
        301,
        SynthesisTolerances::default(),
    )?;
    let sol = integrate_frenet(&problem)?;
    println!("\nintegrated in the quadric chart of the flat index-1 space:");
    println!("   on-quadric defect: {:.3e}", sol.diagnostics.max_defect);
    println!("   orthonormality drift: {:.3e}", sol.diagnostics.max_drift);

    let res = numeric_tension_in_space_form(&problem.curve, &problem.geometry, 3, &sol.s)?;
    println!(
        "   order-3 tension residual: {:.3e}",
        res.iter().copied().fold(0.0, f64::max)
    );

    // the same data fails to be biharmonic
    let res = numeric_tension_in_space_form(&problem.curve, &problem.geometry, 2, &sol.s)?;
    println!(
        "   order-2 tension residual (must stay away from zero): {:.3}",
        res[0]
    );
    Ok(())
}
