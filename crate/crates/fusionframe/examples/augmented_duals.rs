//! Non-canonical duals by augmentation: extend each canonical dual subspace
//! with an orthogonal unit vector and the result still reconstructs.

use fusionframe::{
    alternate_dual_check, construct_dual_by_augmentation, enumerate_augmented_duals,
    AugmentationChoice, EnumerationStrategy, FusionFamily, Subspace, TolerancePolicy,
    WeightedSubspace,
};
use nalgebra::DVector;

fn v(coords: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(coords)
}

fn main() {
    let tol = TolerancePolicy::default();

    let family = FusionFamily::new(vec![
        WeightedSubspace::new(Subspace::span(&[v(&[1.0, 0.0, 0.0])], &tol).unwrap(), 1.0).unwrap(),
        WeightedSubspace::new(Subspace::span(&[v(&[1.0, 1.0, 0.0])], &tol).unwrap(), 1.0).unwrap(),
        WeightedSubspace::new(Subspace::span(&[v(&[0.0, 0.0, 1.0])], &tol).unwrap(), 1.0).unwrap(),
    ])
    .unwrap();

    // Absent entries keep the canonical dual subspace as it is.
    let keep_all = AugmentationChoice::all_absent(family.len());
    let canonical = construct_dual_by_augmentation(&family, &keep_all, &tol).unwrap();
    for (i, member) in canonical.members().iter().enumerate() {
        println!("canonical member {i}: dim {}", member.subspace().dim());
    }

    // Grow the first member by the vertical axis and the second by the
    // first coordinate axis.
    let choice = AugmentationChoice::new(vec![
        Some(v(&[0.0, 0.0, 1.0])),
        Some(v(&[1.0, 0.0, 0.0])),
        None,
    ]);
    let grown = construct_dual_by_augmentation(&family, &choice, &tol).unwrap();
    for (i, member) in grown.members().iter().enumerate() {
        println!(
            "augmented member {i}: dim {}, basis{}",
            member.subspace().dim(),
            member.subspace().basis()
        );
    }
    let check = alternate_dual_check(&family, &grown, &tol).unwrap();
    println!(
        "augmented family verifies: {} (residual {:.3e})",
        check.is_dual, check.residual
    );

    // Vectors that are not unit, or that overlap the subspace they should
    // extend, are rejected member by member.
    let overlapping = AugmentationChoice::new(vec![Some(v(&[1.0, 0.0, 0.0])), None, None]);
    match construct_dual_by_augmentation(&family, &overlapping, &tol) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }

    // Walking every complement basis vector per member enumerates a finite
    // catalog of verified duals, the canonical one last.
    let catalog =
        enumerate_augmented_duals(&family, &EnumerationStrategy::BasisVectors, 256, &tol).unwrap();
    println!(
        "basis-vector catalog: {} duals, capped: {}",
        catalog.families.len(),
        catalog.cap_exceeded
    );

    let seeded = enumerate_augmented_duals(
        &family,
        &EnumerationStrategy::SeededRandom {
            seed: 7,
            per_member: 2,
        },
        256,
        &tol,
    )
    .unwrap();
    println!("seeded catalog: {} duals", seeded.families.len());

    let capped =
        enumerate_augmented_duals(&family, &EnumerationStrategy::BasisVectors, 5, &tol).unwrap();
    println!(
        "capped at 5: {} duals, capped: {}",
        capped.families.len(),
        capped.cap_exceeded
    );
}
