//! Fusion frames: weighted subspaces, the fusion frame operator, optimal
//! bounds, canonical duals, and Riesz diagnostics.

use fusionframe::{FusionFamily, Subspace, TolerancePolicy, WeightedSubspace};
use nalgebra::DVector;

fn line(coords: &[f64], tol: &TolerancePolicy) -> Subspace {
    Subspace::span(&[DVector::from_column_slice(coords)], tol).unwrap()
}

fn main() {
    let tol = TolerancePolicy::default();

    // Three lines in R3: two coordinate axes and one diagonal between them.
    let family = FusionFamily::new(vec![
        WeightedSubspace::new(line(&[1.0, 0.0, 0.0], &tol), 1.0).unwrap(),
        WeightedSubspace::new(line(&[1.0, 1.0, 0.0], &tol), 1.0).unwrap(),
        WeightedSubspace::new(line(&[0.0, 0.0, 1.0], &tol), 1.0).unwrap(),
    ])
    .unwrap();

    println!("fusion frame operator:{}", family.frame_operator());
    let bounds = family.bounds();
    println!("optimal lower bound: {:.12}", bounds.lower);
    println!("optimal upper bound: {:.12}", bounds.upper);
    println!("is a fusion frame: {}", family.is_fusion_frame(&tol));

    let canonical = family.canonical_dual(&tol).unwrap();
    for (i, member) in canonical.members().iter().enumerate() {
        println!(
            "canonical dual member {i}: dim {}, basis{}",
            member.subspace().dim(),
            member.subspace().basis()
        );
    }

    let report = family.riesz_report(&tol);
    println!("dimension sum: {}", report.dims_sum);
    println!("synthesis injective: {}", report.synthesis_injective);
    println!("fusion riesz basis: {}", report.is_riesz);

    // The coordinate axes with unit weights are an orthonormal fusion basis;
    // its operator is the identity.
    let axes = FusionFamily::new(vec![
        WeightedSubspace::new(line(&[1.0, 0.0, 0.0], &tol), 1.0).unwrap(),
        WeightedSubspace::new(line(&[0.0, 1.0, 0.0], &tol), 1.0).unwrap(),
        WeightedSubspace::new(line(&[0.0, 0.0, 1.0], &tol), 1.0).unwrap(),
    ])
    .unwrap();
    println!(
        "axes are an orthonormal fusion basis: {}",
        axes.is_orthonormal_basis(&tol)
    );
    let axis_bounds = axes.bounds();
    println!(
        "axes bounds: {} and {} (tight)",
        axis_bounds.lower, axis_bounds.upper
    );
}
