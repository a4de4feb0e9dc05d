//! Local frames inside each subspace flatten into one discrete frame for
//! the whole space; local duals lift to a global dual of that frame.

use fusionframe::{
    associated_discrete_frame, is_dual_pair, lift_local_duals, FusionFamily, LocalFrameAssignment,
    Subspace, TolerancePolicy, WeightedSubspace,
};
use nalgebra::DVector;

fn v(coords: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(coords)
}

fn main() {
    let tol = TolerancePolicy::default();
    let rt2 = std::f64::consts::SQRT_2;

    // Four weighted lines in R3; the diagonal one carries weight sqrt(2).
    let family = FusionFamily::new(vec![
        WeightedSubspace::new(Subspace::span(&[v(&[1.0, 0.0, 0.0])], &tol).unwrap(), 1.0).unwrap(),
        WeightedSubspace::new(Subspace::span(&[v(&[1.0, 1.0, 0.0])], &tol).unwrap(), rt2).unwrap(),
        WeightedSubspace::new(Subspace::span(&[v(&[0.0, 1.0, 0.0])], &tol).unwrap(), 1.0).unwrap(),
        WeightedSubspace::new(Subspace::span(&[v(&[0.0, 0.0, 1.0])], &tol).unwrap(), 1.0).unwrap(),
    ])
    .unwrap();

    // One unit vector per line is already a local frame for it.
    let locals = LocalFrameAssignment::new(
        &family,
        vec![
            vec![v(&[1.0, 0.0, 0.0])],
            vec![v(&[1.0 / rt2, 1.0 / rt2, 0.0])],
            vec![v(&[0.0, 1.0, 0.0])],
            vec![v(&[0.0, 0.0, 1.0])],
        ],
        &tol,
    )
    .unwrap();

    let frame = associated_discrete_frame(&family, &locals, &tol).unwrap();
    println!("flattened frame operator:{}", frame.frame_operator());
    for (i, f) in frame.vectors().iter().enumerate() {
        println!("flattened vector {i}: {}", f.transpose());
    }

    let local_duals = locals.local_canonical_duals(&family, &tol).unwrap();
    for (i, list) in local_duals.members().iter().enumerate() {
        println!("local canonical dual {i}: {}", list[0].transpose());
    }

    // The local duals live in the original subspaces, not in the canonical
    // dual ones; lifting through the inverse operator fixes that.
    let canonical = family.canonical_dual(&tol).unwrap();
    let escape = canonical
        .members()
        .iter()
        .zip(local_duals.members())
        .map(|(member, list)| member.subspace().distance(&list[0]).unwrap())
        .fold(0.0_f64, f64::max);
    println!("largest escape from the canonical dual subspaces: {escape:.6}");

    let lifted = lift_local_duals(&family, &locals, &local_duals, &tol).unwrap();
    for (i, g) in lifted.vectors().iter().enumerate() {
        println!("lifted dual {i}: {}", g.transpose());
    }
    let check = is_dual_pair(&frame, &lifted, &tol).unwrap();
    println!(
        "lifted family verifies: {} (residual {:.3e})",
        check.is_dual, check.residual
    );
}
