//! Subspace toolkit tour: spans, projectors, complements, sums, and images.

use fusionframe::{Subspace, TolerancePolicy};
use nalgebra::{DMatrix, DVector};

fn main() {
    let tol = TolerancePolicy::default();

    let diagonal = Subspace::span(&[DVector::from_column_slice(&[1.0, 1.0, 0.0])], &tol)
        .expect("nonzero vector spans a line");
    println!("diagonal line in R3, dim {}", diagonal.dim());
    println!("projector:{}", diagonal.projector());

    let f = DVector::from_column_slice(&[2.0, 0.0, 1.0]);
    let projected = diagonal.project(&f).unwrap();
    println!("projection of (2, 0, 1): {}", projected.transpose());
    println!(
        "distance to the line: {:.6}",
        diagonal.distance(&f).unwrap()
    );

    // The complement picks up everything the projector annihilates.
    let complement = diagonal
        .orthocomplement()
        .expect("a line in R3 has a complement");
    println!("complement dim: {}", complement.dim());
    println!(
        "line and complement orthogonal: {}",
        diagonal.is_orthogonal_to(&complement, &tol)
    );

    let whole = diagonal.sum(&complement, &tol).unwrap();
    println!("line + complement fills R3: {}", whole.dim() == 3);

    // Spans collapse duplicates: three collinear vectors still give a line.
    let collinear = Subspace::span(
        &[
            DVector::from_column_slice(&[1.0, 1.0, 0.0]),
            DVector::from_column_slice(&[2.0, 2.0, 0.0]),
            DVector::from_column_slice(&[-3.0, -3.0, 0.0]),
        ],
        &tol,
    )
    .unwrap();
    println!("collinear span dim: {}", collinear.dim());
    println!(
        "equal to the diagonal: {}",
        collinear.approx_eq(&diagonal, &tol)
    );

    // Images track rank drops: this map flattens the third coordinate.
    let flatten = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
    let image = diagonal.image_under(&flatten, &tol).unwrap();
    println!(
        "image of the diagonal under a flattening map, dim {}",
        image.dim()
    );

    let vertical = Subspace::span(&[DVector::from_column_slice(&[0.0, 0.0, 1.0])], &tol).unwrap();
    match vertical.image_under(&flatten, &tol) {
        Ok(_) => println!("vertical line survived"),
        Err(e) => println!("vertical line is killed: {e}"),
    }
}
