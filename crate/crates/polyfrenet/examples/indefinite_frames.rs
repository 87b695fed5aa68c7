//! Indefinite inner products and non-degenerate Gram-Schmidt: building
//! orthonormal frames with mixed signs, and what goes wrong on a null span.
//!
//! ```bash
//! cargo run -p polyfrenet --example indefinite_frames
//! ```

use polyfrenet::metric::{gram_schmidt_nondegenerate, DiagonalMetric};

fn main() {
    // the flat index-1 metric on three coordinates
    let g = DiagonalMetric::new(3, 1);
    println!("inner products in the index-1 metric:");
    println!("   <e0, e0> = {}", g.inner(&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]).unwrap());
    println!("   <e1, e1> = {}", g.inner(&[0.0, 1.0, 0.0], &[0.0, 1.0, 0.0]).unwrap());
    let null = [1.0, 1.0, 0.0];
    println!("   null direction: <e0+e1, e0+e1> = {}\n", g.inner(&null, &null).unwrap());

    // orthonormalize a generic basis: the signs come out of the process
    let input = vec![
        vec![2.0, 1.0, 0.0],
        vec![0.0, 1.0, 1.0],
        vec![1.0, 0.0, 3.0],
    ];
    let (frame, sig) = gram_schmidt_nondegenerate(&input, &g).unwrap();
    println!("orthonormalized frame with signature {sig}:");
    for (i, f) in frame.iter().enumerate() {
        println!("   E{} = [{:+.4}, {:+.4}, {:+.4}]", i + 1, f[0], f[1], f[2]);
    }
    for i in 0..frame.len() {
        for j in 0..frame.len() {
            let ip = g.inner(&frame[i], &frame[j]).unwrap();
            if i == j {
                assert!((ip.abs() - 1.0).abs() < 1e-12);
            } else {
                assert!(ip.abs() < 1e-12);
            }
        }
    }
    println!("   (orthonormality verified)\n");

    // a leading null vector makes the span degenerate
    let bad = vec![vec![1.0, 1.0, 0.0], vec![0.0, 1.0, 0.0]];
    match gram_schmidt_nondegenerate(&bad, &g) {
        Err(e) => println!("null leading vector rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
