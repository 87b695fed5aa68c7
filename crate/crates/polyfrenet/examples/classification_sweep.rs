//! Exhaustive agreement sweep between the closed-form classifier and the
//! tension-field oracle over a rational grid of squared curvatures, in exact
//! arithmetic.
//!
//! ```bash
//! cargo run -p polyfrenet --example classification_sweep
//! ```

use num_rational::Ratio;
use num_traits::Zero;
use polyfrenet::classify::is_r_harmonic_3frenet;
use polyfrenet::frenet::covariant_powers_scaled;
use polyfrenet::metric::Sign;
use polyfrenet::tension::{tension_field_from_powers, SpaceFormCurvature};

type Q = Ratio<i128>;

fn main() {
    let grid: Vec<Q> = (1..=40).map(|i| Q::new(i, 4)).collect();
    let signs = [Sign::Plus, Sign::Minus];

    let mut points = 0u64;
    let mut solutions = 0u64;
    let mut mismatches = 0u64;

    for &e1 in &signs {
        for &e2 in &signs {
            for &e3 in &signs {
                let eps = [e1, e2, e3];
                for c_num in -2..=2i128 {
                    let c = Q::new(c_num, 1);
                    let table = SpaceFormCurvature::new(c, e1);
                    for kq in &grid {
                        for tq in &grid {
                            let powers = covariant_powers_scaled(&eps, &[*kq, *tq], 9);
                            for r in 2..=5u32 {
                                let coeffs =
                                    tension_field_from_powers(3, &powers, &table, r).unwrap();
                                let oracle = coeffs.iter().all(Zero::is_zero);
                                let verdict =
                                    is_r_harmonic_3frenet(&c, (e1, e2, e3), r, kq, tq);
                                points += 1;
                                solutions += oracle as u64;
                                if oracle != verdict {
                                    mismatches += 1;
                                    eprintln!(
                                        "mismatch: eps=({e1},{e2},{e3}) c={c} r={r} kq={kq} tq={tq}"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    println!("grid points checked: {points}");
    println!("r-harmonic solutions found: {solutions}");
    println!("classifier/oracle mismatches: {mismatches}");
    assert_eq!(mismatches, 0);
}
