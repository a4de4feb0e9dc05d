//! Discrete frames in R^d: frame operator, optimal bounds, canonical and
//! null-map duals, and Riesz basis detection.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::FrameError;
use crate::subspaces::{spd_inverse, spectral_norm, symmetrize, TolerancePolicy};

/// Optimal frame bounds: the extreme eigenvalues of the frame operator.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

/// Outcome of a duality test: how far the mixed operator is from the
/// identity, and the verdict at the tolerance used.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DualCheckReport {
    pub residual: f64,
    pub is_dual: bool,
    pub tolerance: f64,
}

/// A finite vector family in R^d, not necessarily spanning.
#[derive(Debug, Clone)]
pub struct DiscreteFrame {
    dim: usize,
    vectors: Vec<DVector<f64>>,
}

impl DiscreteFrame {
    pub fn new(vectors: Vec<DVector<f64>>) -> Result<Self, FrameError> {
        let first = vectors
            .first()
            .ok_or_else(|| FrameError::Validation("a frame needs at least one vector".into()))?;
        let dim = first.len();
        if dim == 0 {
            return Err(FrameError::Validation(
                "vectors must have at least one coordinate".into(),
            ));
        }
        for v in &vectors {
            if v.len() != dim {
                return Err(FrameError::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(FrameError::Validation(
                    "vector entries must be finite".into(),
                ));
            }
        }
        Ok(Self { dim, vectors })
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[DVector<f64>] {
        &self.vectors
    }

    /// The d x n matrix whose columns are the frame vectors.
    pub fn synthesis_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_columns(&self.vectors)
    }

    /// S = sum of f_i f_i^T, symmetrized against roundoff.
    pub fn frame_operator(&self) -> DMatrix<f64> {
        let t = self.synthesis_matrix();
        symmetrize(&(&t * t.transpose()))
    }

    /// Extreme eigenvalues of the frame operator; the lower bound is clamped
    /// at zero so roundoff never reports a negative bound.
    pub fn bounds(&self) -> FrameBounds {
        let eig = self.frame_operator().symmetric_eigen();
        FrameBounds {
            lower: eig.eigenvalues.min().max(0.0),
            upper: eig.eigenvalues.max().max(0.0),
        }
    }

    /// A family is a frame exactly when its lower bound is positive, judged
    /// against the numerical rank threshold.
    pub fn is_frame(&self, tol: &TolerancePolicy) -> bool {
        let b = self.bounds();
        b.lower > tol.rank_threshold(self.dim, self.len(), b.upper)
    }

    /// Canonical dual {S^-1 f_i}; its bounds are the reciprocals of this
    /// frame's bounds in swapped order.
    pub fn canonical_dual(&self, tol: &TolerancePolicy) -> Result<DiscreteFrame, FrameError> {
        let s_inv = spd_inverse(&self.frame_operator(), tol)
            .map_err(|lower| FrameError::NotAFrame { lower })?;
        let vectors = self.vectors.iter().map(|f| &s_inv * f).collect();
        Ok(DiscreteFrame {
            dim: self.dim,
            vectors,
        })
    }

    /// Riesz basis: exactly d vectors that form a frame.
    pub fn is_riesz_basis(&self, tol: &TolerancePolicy) -> bool {
        self.len() == self.dim && self.is_frame(tol)
    }
}

fn check_same_shape(f: &DiscreteFrame, g: &DiscreteFrame) -> Result<(), FrameError> {
    if f.ambient_dim() != g.ambient_dim() {
        return Err(FrameError::DimensionMismatch {
            expected: f.ambient_dim(),
            got: g.ambient_dim(),
        });
    }
    if f.len() != g.len() {
        return Err(FrameError::ShapeMismatch(format!(
            "families have {} and {} members",
            f.len(),
            g.len()
        )));
    }
    Ok(())
}

/// Tests whether `g` is a dual of `f`: reconstruction through `f` with
/// coefficients from `g` must give the identity. The residual is the spectral
/// norm of sum f_i g_i^T minus I.
pub fn is_dual_pair(
    f: &DiscreteFrame,
    g: &DiscreteFrame,
    tol: &TolerancePolicy,
) -> Result<DualCheckReport, FrameError> {
    check_same_shape(f, g)?;
    let d = f.ambient_dim();
    let mut mixed = DMatrix::zeros(d, d);
    for (fi, gi) in f.vectors().iter().zip(g.vectors()) {
        mixed += fi * gi.transpose();
    }
    let residual = spectral_norm(&(mixed - DMatrix::identity(d, d)));
    Ok(DualCheckReport {
        residual,
        is_dual: residual <= tol.identity_tol,
        tolerance: tol.identity_tol,
    })
}

/// Builds the dual g_i = S^-1 f_i + psi_i from a null-map perturbation.
/// The rows of `psi` (an n x d matrix) are the perturbations; they must be
/// annihilated by synthesis, i.e. the columns of T psi must vanish.
pub fn dual_from_nullmap(
    f: &DiscreteFrame,
    psi: &DMatrix<f64>,
    tol: &TolerancePolicy,
) -> Result<DiscreteFrame, FrameError> {
    if psi.nrows() != f.len() || psi.ncols() != f.ambient_dim() {
        return Err(FrameError::ShapeMismatch(format!(
            "perturbation matrix is {}x{}, expected {}x{}",
            psi.nrows(),
            psi.ncols(),
            f.len(),
            f.ambient_dim()
        )));
    }
    let violation = spectral_norm(&(f.synthesis_matrix() * psi));
    if violation > tol.identity_tol {
        return Err(FrameError::NullMapViolation { norm: violation });
    }
    let canonical = f.canonical_dual(tol)?;
    let vectors = canonical
        .vectors()
        .iter()
        .enumerate()
        .map(|(i, g)| g + psi.row(i).transpose())
        .collect();
    DiscreteFrame::new(vectors)
}
