//! The two concrete proper triharmonic helices in curved space forms,
//! checked three independent ways: the solved classification equations, the
//! closed-form tritension, and the brute-force tension oracle — all in exact
//! rational arithmetic.
//!
//! ```bash
//! cargo run -p polyfrenet --example verify_triharmonic_examples
//! ```

use num_traits::Zero;
use polyfrenet::classify::classify_nfrenet_triharmonic;
use polyfrenet::exact::{rat_int, Rat};
use polyfrenet::metric::Signature;
use polyfrenet::tension::{
    n_frenet_tritension_scaled, tension_field_scaled, SpaceFormCurvature,
};

fn check(label: &str, eps_ints: &[i64], kappa_sq: &[Rat]) {
    let sig = Signature::minimal_ambient_ints(eps_ints).unwrap();
    let c = rat_int(1);
    let table = SpaceFormCurvature::new(c.clone(), sig.sign(0));

    let classified = classify_nfrenet_triharmonic(sig.eps(), &c, kappa_sq).unwrap();
    let closed = n_frenet_tritension_scaled(sig.eps(), kappa_sq, &table).unwrap();
    let oracle = tension_field_scaled(sig.eps(), kappa_sq, &table, 3).unwrap();

    let q_pretty: Vec<String> = kappa_sq.iter().map(ToString::to_string).collect();
    println!("== {label}");
    println!("   signs {eps_ints:?}, squared curvatures {q_pretty:?}");
    println!("   classification: {:?}", classified.status);
    println!(
        "   closed-form tritension zero: {}",
        closed.iter().all(Zero::is_zero)
    );
    println!(
        "   oracle tritension zero:      {}",
        oracle.iter().all(Zero::is_zero)
    );
    // and the oracle confirms it is not biharmonic (no full helix of order
    // four or more is)
    let bitension = tension_field_scaled(sig.eps(), kappa_sq, &table, 2).unwrap();
    println!(
        "   oracle bitension zero:       {}\n",
        bitension.iter().all(Zero::is_zero)
    );
}

fn main() {
    // order-5 helix in the unit-curvature model of index 1: one time-like
    // middle frame leg, curvatures (1, 1, 1, sqrt 2)
    check(
        "order-5 triharmonic helix, index 1",
        &[1, 1, -1, 1, 1],
        &[rat_int(1), rat_int(1), rat_int(1), rat_int(2)],
    );

    // order-4 helix in the unit-curvature model of index 2: time-like normal
    // and binormal, curvatures (sqrt 2, 2, 1)
    check(
        "order-4 triharmonic helix, index 2",
        &[1, -1, -1, 1],
        &[rat_int(2), rat_int(4), rat_int(1)],
    );

    // the trailing curvature is forced: dropping it and solving recovers it
    let sig = Signature::minimal_ambient_ints(&[1, 1, -1, 1, 1]).unwrap();
    let res =
        classify_nfrenet_triharmonic(sig.eps(), &rat_int(1), &[rat_int(1), rat_int(1), rat_int(1)])
            .unwrap();
    println!("solving for the trailing squared curvature of the order-5 helix:");
    for v in res.values() {
        println!("   kappa4_sq = {v}");
    }

    let four = Signature::minimal_ambient_ints(&[1, -1, -1, 1]).unwrap();
    let res = classify_nfrenet_triharmonic(four.eps(), &rat_int(1), &[rat_int(2), rat_int(4)])
        .unwrap();
    println!("solving for the trailing squared curvature of the order-4 helix:");
    for v in res.values() {
        println!("   kappa3_sq = {v}");
    }
}
