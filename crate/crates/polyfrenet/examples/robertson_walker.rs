//! r-harmonic circles in warped products of a time interval with a
//! Riemannian space form: the power-law criterion, the frame-level
//! connection and curvature rules, and the rescaling identity at critical
//! times of the warping function.
//!
//! ```bash
//! cargo run -p polyfrenet --example robertson_walker
//! ```

use num_rational::Rational64;
use polyfrenet::robertson_walker::{
    power_law_deceleration, power_law_r_harmonic, rw_r_harmonic_check, rw_rescaling_check,
    rw_tension_normal, RwFrameRules, RwModel, Warping,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // power laws t^lambda: feasible exactly at lambda = (r-1)/r
    println!("power-law feasibility (exact exponent arithmetic):");
    for r in 2..=5u32 {
        let lambda = Rational64::new(r as i64 - 1, r as i64);
        let q = power_law_deceleration(lambda).unwrap();
        println!(
            "   r = {r}: lambda = {lambda} feasible = {}, deceleration q = {q}",
            power_law_r_harmonic(lambda, r),
        );
    }

    // the square-root warping at t0 = 4: curvature 1/8
    let model = RwModel::power_law(Rational64::new(1, 2), 3, 1.0);
    let report = rw_r_harmonic_check(&model, 4.0, 2, 1e-9)?;
    println!(
        "\nsquare-root warping at t0 = 4: feasible = {}, kappa = {}, fiber speed = {}",
        report.feasible, report.kappa, report.fiber_speed
    );

    // frame-level rules at t0 = 1 for f(t) = t^2
    let squared = RwModel {
        domain: (0.0, 10.0),
        warp: Warping::Custom {
            f: Box::new(|t| t * t),
            df: Box::new(|t| 2.0 * t),
            d2f: Box::new(|_| 2.0),
        },
        fiber_dim: 3,
        fiber_curvature: 1.0,
    };
    let rules = RwFrameRules::at(&squared, 1.0)?;
    println!("\nframe rules for the quadratic warping at t0 = 1:");
    println!("   time-axis self-derivative coefficient: {}", rules.connection_time_time());
    println!("   mixed connection coefficient f'/f: {}", rules.connection_time_fiber());
    println!("   curvature of (fiber, time, time): {}", rules.curvature_fiber_time_time());
    println!("   curvature of (fiber, fiber, time): {}", rules.curvature_fiber_fiber_time());

    // normal-along-time tension: r = 3, kappa^2 = 2, f''/f = -1 vanishes
    println!(
        "\nnormal-along-time tension at kappa^2 = 2, f''/f = -1, r = 3: {:.3e}",
        rw_tension_normal(2f64.sqrt(), 3, -1.0)
    );

    // rescaling identity at a critical time
    let critical = RwModel {
        domain: (0.0, 2.0),
        warp: Warping::Custom {
            f: Box::new(|t| 2.0 + (t - 1.0) * (t - 1.0)),
            df: Box::new(|t| 2.0 * (t - 1.0)),
            d2f: Box::new(|_| 2.0),
        },
        fiber_dim: 3,
        fiber_curvature: 1.0,
    };
    let check = rw_rescaling_check(&critical, 1.0, 1.0, None, 2, 1e-9)?;
    println!(
        "\nrescaling identity at the critical time (solving fiber circle): both zero = {}, ratio holds = {}",
        check.both_zero, check.ratio_ok
    );
    let check = rw_rescaling_check(&critical, 1.0, 1.3, None, 2, 1e-9)?;
    println!(
        "rescaling identity on a non-solution: both zero = {}, ratio holds = {}",
        check.both_zero, check.ratio_ok
    );
    Ok(())
}
