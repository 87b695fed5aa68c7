//! Lifting helices of a Riemannian space form into the Lorentzian product
//! with a line: curvatures of the lift and the exact equivalence between
//! lifted and fiber r-harmonicity.
//!
//! ```bash
//! cargo run -p polyfrenet --example product_lift
//! ```

use polyfrenet::exact::{rat, rat_int};
use polyfrenet::metric::Sign;
use polyfrenet::product::{lift_to_product, product_r_harmonic_check, ProductLift};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // a time-like lift: slope sqrt 2 over a fiber helix with curvature 1,
    // torsion 2
    let lift = ProductLift {
        d1: 2f64.sqrt(),
        kappa_alpha: 1.0,
        tau_alpha: 2.0,
        eps1: Sign::Minus,
        eps3: Sign::Plus,
    };
    let lifted = lift_to_product(&lift)?;
    println!("lifted helix: kappa = {:.6}, tau = {:.6}", lifted.kappa, lifted.tau);
    println!("fiber speed d2 = {:.6}, signs {:?}", lifted.d2, lifted.eps);
    println!(
        "curvature combination (never zero for a lift): {:.4}\n",
        lifted.curvature_combination
    );

    // a fiber helix solving the order-2 fiber criterion with c = 1:
    // kappa_alpha^2 = tau_alpha^2 = 1/2
    for r in 2..=5u32 {
        let check = product_r_harmonic_check(
            &rat_int(2),
            &rat(1, 2),
            &rat(1, 2),
            Sign::Minus,
            Sign::Plus,
            &rat_int(1),
            r,
        )?;
        println!(
            "r = {r}: lifted zero = {}, fiber zero = {}, sides proportional = {} (scale {})",
            check.lifted_zero, check.fiber_zero, check.agree, check.scale
        );
    }

    // a non-solution still keeps both sides in exact proportion
    let check = product_r_harmonic_check(
        &rat(9, 4),
        &rat(2, 3),
        &rat(7, 5),
        Sign::Plus,
        Sign::Plus,
        &rat_int(-2),
        3,
    )?;
    println!(
        "\nnon-solution: lifted value {} = scale {} x fiber value {}",
        check.lifted_value, check.scale, check.fiber_value
    );
    Ok(())
}
