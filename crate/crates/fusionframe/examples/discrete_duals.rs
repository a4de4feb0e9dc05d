//! Discrete frames: operators, bounds, the canonical dual, and alternate
//! duals built from a null map.

use fusionframe::{dual_from_nullmap, is_dual_pair, DiscreteFrame, TolerancePolicy};
use nalgebra::{DMatrix, DVector};

fn main() {
    let tol = TolerancePolicy::default();

    // Three vectors in R2, the first direction counted twice.
    let frame = DiscreteFrame::new(vec![
        DVector::from_column_slice(&[1.0, 0.0]),
        DVector::from_column_slice(&[0.0, 1.0]),
        DVector::from_column_slice(&[1.0, 0.0]),
    ])
    .unwrap();

    println!("frame operator:{}", frame.frame_operator());
    let bounds = frame.bounds();
    println!("optimal bounds: {} and {}", bounds.lower, bounds.upper);
    println!("is a frame: {}", frame.is_frame(&tol));
    println!("is a riesz basis: {}", frame.is_riesz_basis(&tol));

    let canonical = frame.canonical_dual(&tol).unwrap();
    for (i, g) in canonical.vectors().iter().enumerate() {
        println!("canonical dual {i}: {}", g.transpose());
    }
    let check = is_dual_pair(&frame, &canonical, &tol).unwrap();
    println!("canonical dual residual: {:.3e}", check.residual);

    // Any map whose synthesis image vanishes shifts the dual without
    // breaking reconstruction.
    let psi = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 0.0, -1.0, 0.0]);
    let shifted = dual_from_nullmap(&frame, &psi, &tol).unwrap();
    for (i, g) in shifted.vectors().iter().enumerate() {
        println!("shifted dual {i}: {}", g.transpose());
    }
    let check = is_dual_pair(&frame, &shifted, &tol).unwrap();
    println!(
        "shifted dual residual: {:.3e}, verified: {}",
        check.residual, check.is_dual
    );

    // A map that does not vanish under synthesis is rejected.
    let bad = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    match dual_from_nullmap(&frame, &bad, &tol) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected null map: {e}"),
    }
}
