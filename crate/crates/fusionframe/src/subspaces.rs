//! Subspace algebra over R^d: orthonormalization, projectors, complements,
//! sums, images under operators, and tolerance-aware comparisons.
//!
//! A [`Subspace`] stores a d x k matrix with orthonormal columns. The basis
//! itself (signs, ordering) is an implementation detail; every comparison in
//! this crate goes through projectors, which are basis independent.

use nalgebra::{DMatrix, DVector};

use crate::error::FrameError;

/// Thresholds shared by every rank and verdict decision in the crate.
#[derive(Debug, Clone)]
pub struct TolerancePolicy {
    /// Relative factor for numerical rank: singular values at or below
    /// `rank_tol_factor * max(rows, cols) * sigma_max` count as zero.
    pub rank_tol_factor: f64,
    /// Absolute tolerance on operator identities and duality residuals.
    pub identity_tol: f64,
    /// Absolute tolerance on orthonormality of stored bases.
    pub orth_tol: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            rank_tol_factor: 1e-12,
            identity_tol: 1e-8,
            orth_tol: 1e-10,
        }
    }
}

impl TolerancePolicy {
    /// The default policy with a caller-chosen verdict tolerance.
    pub fn with_identity_tol(identity_tol: f64) -> Self {
        Self {
            identity_tol,
            ..Self::default()
        }
    }

    pub(crate) fn rank_threshold(&self, rows: usize, cols: usize, sigma_max: f64) -> f64 {
        self.rank_tol_factor * rows.max(cols) as f64 * sigma_max
    }
}

/// Largest singular value of `m`; zero for an empty matrix.
pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

pub(crate) fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    0.5 * (m + m.transpose())
}

/// Inverse of a symmetric positive definite matrix via its eigendecomposition.
/// `Err` carries the (clamped) smallest eigenvalue when the matrix is
/// numerically singular.
pub(crate) fn spd_inverse(s: &DMatrix<f64>, tol: &TolerancePolicy) -> Result<DMatrix<f64>, f64> {
    let eig = s.clone().symmetric_eigen();
    let lam_max = eig.eigenvalues.max().max(0.0);
    let lam_min = eig.eigenvalues.min();
    if lam_min <= tol.rank_threshold(s.nrows(), s.ncols(), lam_max) {
        return Err(lam_min.max(0.0));
    }
    let inv = eig.eigenvalues.map(|l| 1.0 / l);
    let m = &eig.eigenvectors * DMatrix::from_diagonal(&inv) * eig.eigenvectors.transpose();
    Ok(symmetrize(&m))
}

/// A linear subspace of R^d, held as an orthonormal basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    basis: DMatrix<f64>,
}

impl Subspace {
    /// Span of the given vectors. Rank is decided by the singular values, so
    /// dependent inputs collapse to a lower-dimensional subspace.
    pub fn span(vectors: &[DVector<f64>], tol: &TolerancePolicy) -> Result<Self, FrameError> {
        let first = vectors.first().ok_or(FrameError::ZeroSpan)?;
        let dim = first.len();
        for v in vectors {
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
        Self::from_columns(&DMatrix::from_columns(vectors), tol)
    }

    /// Column space of `m`, orthonormalized.
    pub fn from_columns(m: &DMatrix<f64>, tol: &TolerancePolicy) -> Result<Self, FrameError> {
        Self::from_columns_with_scale(m, 0.0, tol)
    }

    /// Like [`Subspace::from_columns`], but rank is judged against
    /// `max(sigma_max, reference_scale)`. Needed when the columns come out of
    /// a larger computation whose roundoff floor the matrix itself no longer
    /// shows.
    pub(crate) fn from_columns_with_scale(
        m: &DMatrix<f64>,
        reference_scale: f64,
        tol: &TolerancePolicy,
    ) -> Result<Self, FrameError> {
        let svd = m.clone().svd(true, false);
        let sigma = &svd.singular_values;
        let scale = sigma.max().max(reference_scale);
        let thresh = tol.rank_threshold(m.nrows(), m.ncols(), scale);
        let rank = sigma.iter().filter(|s| **s > thresh).count();
        if rank == 0 {
            return Err(FrameError::ZeroSpan);
        }
        let u = svd.u.expect("left singular vectors were requested");
        Ok(Self {
            basis: u.columns(0, rank).into_owned(),
        })
    }

    /// Wraps columns that are already orthonormal, verifying they are.
    pub fn from_orthonormal_basis(
        basis: DMatrix<f64>,
        tol: &TolerancePolicy,
    ) -> Result<Self, FrameError> {
        if basis.ncols() == 0 {
            return Err(FrameError::ZeroSpan);
        }
        if basis.ncols() > basis.nrows() {
            return Err(FrameError::Validation(format!(
                "{} columns cannot be independent in dimension {}",
                basis.ncols(),
                basis.nrows()
            )));
        }
        let k = basis.ncols();
        let gram = basis.transpose() * &basis;
        let dev = spectral_norm(&(gram - DMatrix::identity(k, k)));
        if dev > tol.orth_tol {
            return Err(FrameError::Validation(format!(
                "columns are not orthonormal: deviation {dev:.3e}"
            )));
        }
        Ok(Self { basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// The stored orthonormal basis, one column per direction.
    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// The orthogonal projector Q Q^T onto the subspace.
    pub fn projector(&self) -> DMatrix<f64> {
        &self.basis * self.basis.transpose()
    }

    /// Orthogonal projection of `f` onto the subspace.
    pub fn project(&self, f: &DVector<f64>) -> Result<DVector<f64>, FrameError> {
        if f.len() != self.ambient_dim() {
            return Err(FrameError::DimensionMismatch {
                expected: self.ambient_dim(),
                got: f.len(),
            });
        }
        Ok(&self.basis * (self.basis.transpose() * f))
    }

    /// Norm of the component of `f` outside the subspace.
    pub fn distance(&self, f: &DVector<f64>) -> Result<f64, FrameError> {
        Ok((f - self.project(f)?).norm())
    }

    /// Orthogonal complement; `None` when the subspace is the whole space.
    ///
    /// The complement has dimension exactly d - k, so its basis is built by
    /// greedy pivoted orthogonalization of the columns of I - P. This keeps
    /// coordinate directions intact whenever the complement contains them.
    pub fn orthocomplement(&self) -> Option<Subspace> {
        let d = self.ambient_dim();
        let k = self.dim();
        if k == d {
            return None;
        }
        let mut m = DMatrix::identity(d, d) - self.projector();
        let mut cols: Vec<DVector<f64>> = Vec::with_capacity(d - k);
        for _ in 0..(d - k) {
            let mut pivot = 0;
            let mut best = -1.0;
            for j in 0..d {
                let norm = m.column(j).norm();
                if norm > best {
                    best = norm;
                    pivot = j;
                }
            }
            let mut q = m.column(pivot).into_owned();
            for prev in &cols {
                let c = prev.dot(&q);
                q -= prev * c;
            }
            let q = q.normalize();
            let coeffs = q.transpose() * &m;
            m -= &q * coeffs;
            cols.push(q);
        }
        Some(Subspace {
            basis: DMatrix::from_columns(&cols),
        })
    }

    /// Smallest subspace containing both operands.
    pub fn sum(&self, other: &Subspace, tol: &TolerancePolicy) -> Result<Subspace, FrameError> {
        if other.ambient_dim() != self.ambient_dim() {
            return Err(FrameError::DimensionMismatch {
                expected: self.ambient_dim(),
                got: other.ambient_dim(),
            });
        }
        let d = self.ambient_dim();
        let mut m = DMatrix::zeros(d, self.dim() + other.dim());
        m.view_mut((0, 0), (d, self.dim())).copy_from(&self.basis);
        m.view_mut((0, self.dim()), (d, other.dim()))
            .copy_from(&other.basis);
        Self::from_columns(&m, tol)
    }

    /// Image of the subspace under a square operator. Rank may drop:
    /// directions crushed to roundoff relative to the operator's norm count
    /// as killed.
    pub fn image_under(
        &self,
        op: &DMatrix<f64>,
        tol: &TolerancePolicy,
    ) -> Result<Subspace, FrameError> {
        if op.nrows() != op.ncols() || op.ncols() != self.ambient_dim() {
            return Err(FrameError::DimensionMismatch {
                expected: self.ambient_dim(),
                got: op.ncols(),
            });
        }
        Self::from_columns_with_scale(&(op * &self.basis), spectral_norm(op), tol)
    }

    /// Equality as subspaces, via the spectral norm of the projector
    /// difference. Panics when ambient dimensions differ.
    pub fn approx_eq(&self, other: &Subspace, tol: &TolerancePolicy) -> bool {
        assert_eq!(
            self.ambient_dim(),
            other.ambient_dim(),
            "ambient dimension mismatch"
        );
        spectral_norm(&(self.projector() - other.projector())) <= tol.identity_tol
    }

    /// Whether every direction of `other` lies inside this subspace.
    /// Panics when ambient dimensions differ.
    pub fn contains(&self, other: &Subspace, tol: &TolerancePolicy) -> bool {
        assert_eq!(
            self.ambient_dim(),
            other.ambient_dim(),
            "ambient dimension mismatch"
        );
        let d = self.ambient_dim();
        let outside = (DMatrix::identity(d, d) - self.projector()) * other.basis();
        spectral_norm(&outside) <= tol.identity_tol
    }

    /// Whether the two subspaces are pairwise orthogonal.
    /// Panics when ambient dimensions differ.
    pub fn is_orthogonal_to(&self, other: &Subspace, tol: &TolerancePolicy) -> bool {
        assert_eq!(
            self.ambient_dim(),
            other.ambient_dim(),
            "ambient dimension mismatch"
        );
        spectral_norm(&(self.basis.transpose() * &other.basis)) <= tol.identity_tol
    }
}
