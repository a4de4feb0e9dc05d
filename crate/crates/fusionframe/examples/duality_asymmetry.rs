//! Fusion duality is one-directional: a family can reconstruct through a
//! partner while the partner fails to reconstruct through it.

use fusionframe::{
    alternate_dual_check, mutual_dual_check, orthogonal_obstruction_check,
    parseval_orthogonality_dual_check, phi_blocks, FusionFamily, Subspace, TolerancePolicy,
    WeightedSubspace,
};
use nalgebra::DVector;

fn line(coords: &[f64], tol: &TolerancePolicy) -> Subspace {
    Subspace::span(&[DVector::from_column_slice(coords)], tol).unwrap()
}

fn axes_family(order: [usize; 6], weight: f64, tol: &TolerancePolicy) -> FusionFamily {
    let e = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    FusionFamily::new(
        order
            .iter()
            .map(|&i| WeightedSubspace::new(line(&e[i], tol), weight).unwrap())
            .collect(),
    )
    .unwrap()
}

fn main() {
    let tol = TolerancePolicy::default();

    // Each coordinate axis listed twice, once with weight 1 and once with
    // weight 2. Both operators are multiples of the identity.
    let w = axes_family([0, 1, 2, 1, 0, 2], 1.0, &tol);
    let v = axes_family([0, 1, 2, 2, 1, 0], 2.0, &tol);
    println!("S_W:{}", w.frame_operator());
    println!("S_V:{}", v.frame_operator());

    let forward = alternate_dual_check(&w, &v, &tol).unwrap();
    println!(
        "V against W: residual {:.3e}, dual: {}",
        forward.residual, forward.is_dual
    );
    let reverse = alternate_dual_check(&v, &w, &tol).unwrap();
    println!(
        "W against V: residual {:.3e}, dual: {}",
        reverse.residual, reverse.is_dual
    );
    println!(
        "mutually dual: {}",
        mutual_dual_check(&w, &v, &tol).unwrap()
    );

    // The cross blocks through the inverse operator expose the asymmetry
    // member by member.
    let blocks = phi_blocks(&w, &v, &tol).unwrap();
    println!("first block: {:.4}", blocks[0][(0, 0)]);
    println!("fourth block: {:.4}", blocks[3][(0, 0)]);

    // With unit weights on both sides, a Parseval family paired with
    // per-index orthogonality certifies duality without a residual.
    let unit_w = axes_family([0, 1, 2, 1, 0, 2], 1.0, &tol);
    let unit_v = axes_family([0, 1, 2, 1, 0, 2], 1.0, &tol);
    let report = parseval_orthogonality_dual_check(&unit_w, &unit_v, &tol).unwrap();
    println!(
        "parseval route: hypotheses {}, dual {}",
        report.hypotheses_hold, report.is_dual
    );

    // Swapped axes in R2 are orthogonal per index, so their mixed sum is
    // forced to vanish and no weighting can make them dual.
    let swapped_w = FusionFamily::new(vec![
        WeightedSubspace::new(line(&[1.0, 0.0], &tol), 1.0).unwrap(),
        WeightedSubspace::new(line(&[0.0, 1.0], &tol), 1.0).unwrap(),
    ])
    .unwrap();
    let swapped_v = FusionFamily::new(vec![
        WeightedSubspace::new(line(&[0.0, 1.0], &tol), 1.0).unwrap(),
        WeightedSubspace::new(line(&[1.0, 0.0], &tol), 1.0).unwrap(),
    ])
    .unwrap();
    let obstruction = orthogonal_obstruction_check(&swapped_w, &swapped_v, &tol).unwrap();
    println!(
        "swapped axes: orthogonal {}, mixed sum norm {:.3e}",
        obstruction.pairwise_orthogonal, obstruction.transformed_sum_norm
    );
}
