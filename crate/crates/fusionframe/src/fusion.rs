//! Fusion frames: weighted subspace families, their operators and bounds,
//! canonical duals, and the asymmetric alternate-dual test.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::discrete::{DiscreteFrame, DualCheckReport, FrameBounds};
use crate::error::FrameError;
use crate::subspaces::{spd_inverse, spectral_norm, symmetrize, Subspace, TolerancePolicy};

/// A subspace with a positive weight.
#[derive(Debug, Clone)]
pub struct WeightedSubspace {
    subspace: Subspace,
    weight: f64,
}

impl WeightedSubspace {
    pub fn new(subspace: Subspace, weight: f64) -> Result<Self, FrameError> {
        if !weight.is_finite() || weight <= 0.0 {
            return Err(FrameError::Validation(format!(
                "weights must be positive and finite, got {weight}"
            )));
        }
        Ok(Self { subspace, weight })
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }
}

/// A finite family of weighted subspaces of a common R^d.
#[derive(Debug, Clone)]
pub struct FusionFamily {
    dim: usize,
    members: Vec<WeightedSubspace>,
}

impl FusionFamily {
    pub fn new(members: Vec<WeightedSubspace>) -> Result<Self, FrameError> {
        let first = members
            .first()
            .ok_or_else(|| FrameError::Validation("a family needs at least one member".into()))?;
        let dim = first.subspace().ambient_dim();
        for m in &members {
            if m.subspace().ambient_dim() != dim {
                return Err(FrameError::DimensionMismatch {
                    expected: dim,
                    got: m.subspace().ambient_dim(),
                });
            }
        }
        Ok(Self { dim, members })
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[WeightedSubspace] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &WeightedSubspace {
        &self.members[i]
    }

    pub fn member_dims(&self) -> Vec<usize> {
        self.members.iter().map(|m| m.subspace().dim()).collect()
    }

    pub fn dims_sum(&self) -> usize {
        self.members.iter().map(|m| m.subspace().dim()).sum()
    }

    /// S = sum of w_i^2 P_i, symmetrized against roundoff.
    pub fn frame_operator(&self) -> DMatrix<f64> {
        let mut s = DMatrix::zeros(self.dim, self.dim);
        for m in &self.members {
            s += m.weight() * m.weight() * m.subspace().projector();
        }
        symmetrize(&s)
    }

    /// Extreme eigenvalues of the fusion frame operator, lower clamped at 0.
    pub fn bounds(&self) -> FrameBounds {
        let eig = self.frame_operator().symmetric_eigen();
        FrameBounds {
            lower: eig.eigenvalues.min().max(0.0),
            upper: eig.eigenvalues.max().max(0.0),
        }
    }

    pub fn is_fusion_frame(&self, tol: &TolerancePolicy) -> bool {
        let b = self.bounds();
        b.lower > tol.rank_threshold(self.dim, self.dim, b.upper)
    }

    /// The d x (sum of dims) block matrix [w_1 Q_1 | ... | w_n Q_n]. Its
    /// product with its own transpose is the fusion frame operator.
    pub fn synthesis_matrix(&self) -> DMatrix<f64> {
        let mut t = DMatrix::zeros(self.dim, self.dims_sum());
        let mut col = 0;
        for m in &self.members {
            let k = m.subspace().dim();
            t.view_mut((0, col), (self.dim, k))
                .copy_from(&(m.weight() * m.subspace().basis()));
            col += k;
        }
        t
    }

    pub(crate) fn operator_inverse(
        &self,
        tol: &TolerancePolicy,
    ) -> Result<DMatrix<f64>, FrameError> {
        spd_inverse(&self.frame_operator(), tol)
            .map_err(|lower| FrameError::NotAFusionFrame { lower })
    }

    /// Canonical dual {(S^-1 W_i, w_i)}: each subspace is mapped through the
    /// inverse operator, weights are kept.
    pub fn canonical_dual(&self, tol: &TolerancePolicy) -> Result<FusionFamily, FrameError> {
        let s_inv = self.operator_inverse(tol)?;
        let members = self
            .members
            .iter()
            .map(|m| {
                let image = m.subspace().image_under(&s_inv, tol)?;
                WeightedSubspace::new(image, m.weight())
            })
            .collect::<Result<Vec<_>, _>>()?;
        FusionFamily::new(members)
    }

    /// Injectivity, surjectivity, and Riesz diagnostics of the synthesis map.
    pub fn riesz_report(&self, tol: &TolerancePolicy) -> RieszReport {
        let t = self.synthesis_matrix();
        let sigma = t.clone().svd(false, false).singular_values;
        let upper = sigma.max();
        let dims_sum = self.dims_sum();
        // With more block columns than rows the synthesis map always has a
        // kernel, whatever the trailing singular value says.
        let lower = if dims_sum > self.dim {
            0.0
        } else {
            sigma.min().max(0.0)
        };
        let injective = lower > tol.rank_threshold(self.dim, dims_sum, upper);
        let bases: Vec<_> = self
            .members
            .iter()
            .flat_map(|m| m.subspace().basis().column_iter().map(|c| c.into_owned()))
            .collect();
        let local_bases_discrete_riesz = DiscreteFrame::new(bases)
            .map(|f| f.is_riesz_basis(tol))
            .unwrap_or(false);
        RieszReport {
            is_riesz: self.is_fusion_frame(tol) && dims_sum == self.dim,
            synthesis_injective: injective,
            analysis_surjective: injective,
            dims_sum,
            lower,
            upper,
            local_bases_discrete_riesz,
        }
    }

    /// Orthonormal fusion basis: pairwise orthogonal members whose dimensions
    /// fill the space, forming a fusion frame.
    pub fn is_orthonormal_basis(&self, tol: &TolerancePolicy) -> bool {
        if self.dims_sum() != self.dim || !self.is_fusion_frame(tol) {
            return false;
        }
        for (i, a) in self.members.iter().enumerate() {
            for b in &self.members[i + 1..] {
                if !a.subspace().is_orthogonal_to(b.subspace(), tol) {
                    return false;
                }
            }
        }
        true
    }
}

/// Riesz diagnostics for a fusion family.
///
/// `is_riesz` asks for a fusion frame whose dimensions sum to d, and it
/// coincides with `local_bases_discrete_riesz` (the concatenated orthonormal
/// bases forming a discrete Riesz basis). `synthesis_injective` and
/// `analysis_surjective` agree with it for spanning families; a family whose
/// dimensions sum to less than d can be injective without being Riesz.
/// `lower`/`upper` are the extreme singular values of the synthesis matrix,
/// so `lower` is 0 whenever the dimensions oversum.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RieszReport {
    pub is_riesz: bool,
    pub synthesis_injective: bool,
    pub analysis_surjective: bool,
    pub dims_sum: usize,
    pub lower: f64,
    pub upper: f64,
    pub local_bases_discrete_riesz: bool,
}

pub(crate) fn check_same_family_shape(
    w: &FusionFamily,
    v: &FusionFamily,
) -> Result<(), FrameError> {
    if w.ambient_dim() != v.ambient_dim() {
        return Err(FrameError::DimensionMismatch {
            expected: w.ambient_dim(),
            got: v.ambient_dim(),
        });
    }
    if w.len() != v.len() {
        return Err(FrameError::ShapeMismatch(format!(
            "families have {} and {} members",
            w.len(),
            v.len()
        )));
    }
    Ok(())
}

/// Tests whether `v` is a dual of `w`. The mixed reconstruction operator is
/// sum of w_i v_i P_{V_i} S_W^-1 P_{W_i}; the test is one-directional, so
/// swap the arguments to test the other direction.
pub fn alternate_dual_check(
    w: &FusionFamily,
    v: &FusionFamily,
    tol: &TolerancePolicy,
) -> Result<DualCheckReport, FrameError> {
    check_same_family_shape(w, v)?;
    let s_inv = w.operator_inverse(tol)?;
    let d = w.ambient_dim();
    let mut mixed = DMatrix::zeros(d, d);
    for (wi, vi) in w.members().iter().zip(v.members()) {
        mixed += wi.weight()
            * vi.weight()
            * (vi.subspace().projector() * &s_inv * wi.subspace().projector());
    }
    let residual = spectral_norm(&(mixed - DMatrix::identity(d, d)));
    Ok(DualCheckReport {
        residual,
        is_dual: residual <= tol.identity_tol,
        tolerance: tol.identity_tol,
    })
}

/// The cross blocks Q_{V_i}^T S_W^-1 Q_{W_i}, one k_{V_i} x k_{W_i} matrix
/// per member pair. Entries depend on the basis columns actually stored.
pub fn phi_blocks(
    w: &FusionFamily,
    v: &FusionFamily,
    tol: &TolerancePolicy,
) -> Result<Vec<DMatrix<f64>>, FrameError> {
    check_same_family_shape(w, v)?;
    let s_inv = w.operator_inverse(tol)?;
    Ok(w.members()
        .iter()
        .zip(v.members())
        .map(|(wi, vi)| vi.subspace().basis().transpose() * &s_inv * wi.subspace().basis())
        .collect())
}

/// Mutual duality: the cross blocks through S_W^-1 and through S_V^-1 must
/// agree blockwise.
pub fn mutual_dual_check(
    w: &FusionFamily,
    v: &FusionFamily,
    tol: &TolerancePolicy,
) -> Result<bool, FrameError> {
    check_same_family_shape(w, v)?;
    let sw_inv = w.operator_inverse(tol)?;
    let sv_inv = v.operator_inverse(tol)?;
    let diff = sw_inv - sv_inv;
    for (wi, vi) in w.members().iter().zip(v.members()) {
        let block = wi.subspace().basis().transpose() * &diff * vi.subspace().basis();
        if spectral_norm(&block) > tol.identity_tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether each member of `v` contains the corresponding canonical dual
/// subspace S_W^-1 W_i.
pub fn canonical_dual_inclusion(
    w: &FusionFamily,
    v: &FusionFamily,
    tol: &TolerancePolicy,
) -> Result<bool, FrameError> {
    check_same_family_shape(w, v)?;
    let s_inv = w.operator_inverse(tol)?;
    for (wi, vi) in w.members().iter().zip(v.members()) {
        let transformed = wi.subspace().image_under(&s_inv, tol)?;
        if !vi.subspace().contains(&transformed, tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::DVector;
    use proptest::prelude::*;

    fn v(coords: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(coords)
    }

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    fn line(coords: &[f64], weight: f64) -> WeightedSubspace {
        WeightedSubspace::new(Subspace::span(&[v(coords)], &tol()).unwrap(), weight).unwrap()
    }

    /// Each coordinate axis of R^3 twice, unit weights.
    fn six_axes() -> FusionFamily {
        FusionFamily::new(vec![
            line(&[1.0, 0.0, 0.0], 1.0),
            line(&[0.0, 1.0, 0.0], 1.0),
            line(&[0.0, 0.0, 1.0], 1.0),
            line(&[0.0, 1.0, 0.0], 1.0),
            line(&[1.0, 0.0, 0.0], 1.0),
            line(&[0.0, 0.0, 1.0], 1.0),
        ])
        .unwrap()
    }

    /// Same axes in another order, all weights 2.
    fn six_axes_doubled() -> FusionFamily {
        FusionFamily::new(vec![
            line(&[1.0, 0.0, 0.0], 2.0),
            line(&[0.0, 1.0, 0.0], 2.0),
            line(&[0.0, 0.0, 1.0], 2.0),
            line(&[0.0, 0.0, 1.0], 2.0),
            line(&[0.0, 1.0, 0.0], 2.0),
            line(&[1.0, 0.0, 0.0], 2.0),
        ])
        .unwrap()
    }

    /// Three unit-weight lines: e1, the diagonal, e3.
    fn three_lines() -> FusionFamily {
        FusionFamily::new(vec![
            line(&[1.0, 0.0, 0.0], 1.0),
            line(&[1.0, 1.0, 0.0], 1.0),
            line(&[0.0, 0.0, 1.0], 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn axis_family_operators_are_multiples_of_identity() {
        assert!(
            spectral_norm(&(six_axes().frame_operator() - 2.0 * DMatrix::identity(3, 3))) <= 1e-14
        );
        assert!(
            spectral_norm(&(six_axes_doubled().frame_operator() - 8.0 * DMatrix::identity(3, 3)))
                <= 1e-14
        );
        let b = six_axes_doubled().bounds();
        assert_relative_eq!(b.lower, 8.0, epsilon = 1e-12);
        assert_relative_eq!(b.upper, 8.0, epsilon = 1e-12);
    }

    #[test]
    fn three_line_operator_and_bounds() {
        let s = three_lines().frame_operator();
        let expected =
            DMatrix::from_row_slice(3, 3, &[1.5, 0.5, 0.0, 0.5, 0.5, 0.0, 0.0, 0.0, 1.0]);
        assert!(spectral_norm(&(s - expected)) <= 1e-14);
        let b = three_lines().bounds();
        let r = std::f64::consts::SQRT_2 / 2.0;
        assert_relative_eq!(b.lower, 1.0 - r, epsilon = 1e-12);
        assert_relative_eq!(b.upper, 1.0 + r, epsilon = 1e-12);
        assert!(b.upper <= 2.0);
        assert!(three_lines().is_fusion_frame(&tol()));
    }

    #[test]
    fn synthesis_matrix_squares_to_operator() {
        for family in [six_axes(), six_axes_doubled(), three_lines()] {
            let t = family.synthesis_matrix();
            let s = family.frame_operator();
            assert!(spectral_norm(&(&t * t.transpose() - s)) <= 1e-12);
        }
    }

    #[test]
    fn synthesis_of_full_space_member_is_identity() {
        let full = FusionFamily::new(vec![WeightedSubspace::new(
            Subspace::from_orthonormal_basis(DMatrix::identity(3, 3), &tol()).unwrap(),
            1.0,
        )
        .unwrap()])
        .unwrap();
        assert!(spectral_norm(&(full.synthesis_matrix() - DMatrix::identity(3, 3))) <= 1e-14);
    }

    #[test]
    fn canonical_dual_of_three_lines() {
        let dual = three_lines().canonical_dual(&tol()).unwrap();
        let expected = [
            Subspace::span(&[v(&[1.0, -1.0, 0.0])], &tol()).unwrap(),
            Subspace::span(&[v(&[0.0, 1.0, 0.0])], &tol()).unwrap(),
            Subspace::span(&[v(&[0.0, 0.0, 1.0])], &tol()).unwrap(),
        ];
        for (got, want) in dual.members().iter().zip(&expected) {
            assert!(got.subspace().approx_eq(want, &tol()));
            assert_relative_eq!(got.weight(), 1.0);
        }
        let report = alternate_dual_check(&three_lines(), &dual, &tol()).unwrap();
        assert!(report.is_dual, "residual {}", report.residual);
    }

    #[test]
    fn tight_family_is_its_own_canonical_dual() {
        let family = six_axes_doubled();
        let dual = family.canonical_dual(&tol()).unwrap();
        for (got, want) in dual.members().iter().zip(family.members()) {
            assert!(got.subspace().approx_eq(want.subspace(), &tol()));
        }
        assert!(
            alternate_dual_check(&family, &dual, &tol())
                .unwrap()
                .is_dual
        );
        assert!(
            alternate_dual_check(&dual, &family, &tol())
                .unwrap()
                .is_dual
        );
        assert!(mutual_dual_check(&family, &dual, &tol()).unwrap());
    }

    #[test]
    fn axis_pair_duality_is_one_directional() {
        let w = six_axes();
        let vv = six_axes_doubled();
        let forward = alternate_dual_check(&w, &vv, &tol()).unwrap();
        assert!(forward.is_dual);
        assert!(forward.residual <= 1e-12);
        let reverse = alternate_dual_check(&vv, &w, &tol()).unwrap();
        assert!(!reverse.is_dual);
        assert_relative_eq!(reverse.residual, 0.75, epsilon = 1e-12);
    }

    #[test]
    fn plane_extension_is_a_dual_of_three_lines() {
        let plane = FusionFamily::new(vec![
            WeightedSubspace::new(
                Subspace::span(&[v(&[1.0, 0.0, 0.0]), v(&[0.0, 1.0, 0.0])], &tol()).unwrap(),
                1.0,
            )
            .unwrap(),
            line(&[0.0, 1.0, 0.0], 1.0),
            line(&[0.0, 0.0, 1.0], 1.0),
        ])
        .unwrap();
        let report = alternate_dual_check(&three_lines(), &plane, &tol()).unwrap();
        assert!(report.is_dual, "residual {}", report.residual);
        assert!(canonical_dual_inclusion(&three_lines(), &plane, &tol()).unwrap());
    }

    #[test]
    fn phi_blocks_of_axis_pair() {
        // Bases are pinned so the block entries are sign-determined.
        let e = DMatrix::identity(3, 3);
        let basis = |j: usize| {
            let col = DMatrix::from_columns(&[e.column(j).into_owned()]);
            Subspace::from_orthonormal_basis(col, &tol()).unwrap()
        };
        let w = FusionFamily::new(vec![
            WeightedSubspace::new(basis(0), 1.0).unwrap(),
            WeightedSubspace::new(basis(1), 1.0).unwrap(),
            WeightedSubspace::new(basis(2), 1.0).unwrap(),
            WeightedSubspace::new(basis(1), 1.0).unwrap(),
            WeightedSubspace::new(basis(0), 1.0).unwrap(),
            WeightedSubspace::new(basis(2), 1.0).unwrap(),
        ])
        .unwrap();
        let vv = FusionFamily::new(vec![
            WeightedSubspace::new(basis(0), 2.0).unwrap(),
            WeightedSubspace::new(basis(1), 2.0).unwrap(),
            WeightedSubspace::new(basis(2), 2.0).unwrap(),
            WeightedSubspace::new(basis(2), 2.0).unwrap(),
            WeightedSubspace::new(basis(1), 2.0).unwrap(),
            WeightedSubspace::new(basis(0), 2.0).unwrap(),
        ])
        .unwrap();
        let blocks = phi_blocks(&w, &vv, &tol()).unwrap();
        assert_eq!(blocks.len(), 6);
        assert_relative_eq!(blocks[0][(0, 0)], 0.5, epsilon = 1e-14);
        assert_relative_eq!(blocks[3][(0, 0)], 0.0, epsilon = 1e-14);
    }

    #[test]
    fn axis_pair_is_not_mutually_dual() {
        assert!(!mutual_dual_check(&six_axes(), &six_axes_doubled(), &tol()).unwrap());
    }

    #[test]
    fn identical_axis_families_are_mutually_dual() {
        let w = FusionFamily::new(vec![line(&[1.0, 0.0], 1.0), line(&[0.0, 1.0], 1.0)]).unwrap();
        assert!(mutual_dual_check(&w, &w.canonical_dual(&tol()).unwrap(), &tol()).unwrap());
    }

    #[test]
    fn riesz_reports() {
        let basis_family = FusionFamily::new(vec![
            line(&[1.0, 0.0, 0.0], 1.0),
            WeightedSubspace::new(
                Subspace::span(&[v(&[0.0, 1.0, 0.0]), v(&[0.0, 0.0, 1.0])], &tol()).unwrap(),
                1.0,
            )
            .unwrap(),
        ])
        .unwrap();
        let r = basis_family.riesz_report(&tol());
        assert!(r.is_riesz);
        assert!(r.synthesis_injective);
        assert!(r.analysis_surjective);
        assert!(r.local_bases_discrete_riesz);
        assert_eq!(r.dims_sum, 3);
        assert_relative_eq!(r.lower, 1.0, epsilon = 1e-12);
        assert_relative_eq!(r.upper, 1.0, epsilon = 1e-12);

        let oversum = three_lines().riesz_report(&tol());
        assert!(oversum.is_riesz);
        assert_eq!(oversum.dims_sum, 3);

        let redundant = six_axes().riesz_report(&tol());
        assert!(!redundant.is_riesz);
        assert!(!redundant.synthesis_injective);
        assert_eq!(redundant.lower, 0.0);
        assert_relative_eq!(redundant.upper, std::f64::consts::SQRT_2, epsilon = 1e-12);
        assert!(!redundant.local_bases_discrete_riesz);
    }

    #[test]
    fn orthonormal_basis_detection() {
        let split = FusionFamily::new(vec![
            line(&[1.0, 0.0, 0.0], 1.0),
            WeightedSubspace::new(
                Subspace::span(&[v(&[0.0, 1.0, 0.0]), v(&[0.0, 0.0, 1.0])], &tol()).unwrap(),
                3.0,
            )
            .unwrap(),
        ])
        .unwrap();
        assert!(split.is_orthonormal_basis(&tol()));
        assert!(!three_lines().is_orthonormal_basis(&tol()));
        assert!(!six_axes().is_orthonormal_basis(&tol()));
    }

    #[test]
    fn mismatched_member_counts_are_rejected() {
        let two = FusionFamily::new(vec![
            line(&[1.0, 0.0, 0.0], 1.0),
            line(&[0.0, 1.0, 0.0], 1.0),
        ])
        .unwrap();
        assert!(matches!(
            alternate_dual_check(&three_lines(), &two, &tol()),
            Err(FrameError::ShapeMismatch(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

        #[test]
        fn weight_scaling_scales_operator(
            (d, cols, scale) in (2usize..=4).prop_flat_map(|d| {
                let cols = proptest::collection::vec(
                    proptest::collection::vec(-1.0f64..1.0, d), d + 1,
                );
                (cols, 0.1f64..4.0).prop_map(move |(c, s)| (d, c, s))
            })
        ) {
            let _ = d;
            let members = cols.iter().filter_map(|c| {
                let s = Subspace::span(&[DVector::from_column_slice(c)], &tol()).ok()?;
                Some(WeightedSubspace::new(s, 1.0).unwrap())
            }).collect::<Vec<_>>();
            if members.is_empty() { return Ok(()); }
            let family = FusionFamily::new(members.clone()).unwrap();
            let scaled = FusionFamily::new(members.into_iter().map(|m| {
                WeightedSubspace::new(m.subspace().clone(), scale).unwrap()
            }).collect()).unwrap();
            let lhs = scaled.frame_operator();
            let rhs = scale * scale * family.frame_operator();
            prop_assert!(spectral_norm(&(lhs - rhs)) <= 1e-9);
        }

        #[test]
        fn canonical_dual_verifies_and_inverts_bounds(
            (d, cols) in (2usize..=4).prop_flat_map(|d| {
                proptest::collection::vec(
                    proptest::collection::vec(-1.0f64..1.0, d), d..=d + 2,
                ).prop_map(move |c| (d, c))
            })
        ) {
            let members = cols.iter().filter_map(|c| {
                let s = Subspace::span(&[DVector::from_column_slice(c)], &tol()).ok()?;
                Some(WeightedSubspace::new(s, 1.0).unwrap())
            }).collect::<Vec<_>>();
            if members.len() < d { return Ok(()); }
            let family = FusionFamily::new(members).unwrap();
            if !family.is_fusion_frame(&tol()) { return Ok(()); }
            let b = family.bounds();
            if b.upper / b.lower > 1e6 { return Ok(()); }
            let dual = family.canonical_dual(&tol()).unwrap();
            prop_assert!(alternate_dual_check(&family, &dual, &tol()).unwrap().is_dual);
        }
    }
}
