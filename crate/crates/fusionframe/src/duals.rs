//! Dual construction: the discrete frame associated to local frames, lifted
//! local duals, augmentation of the canonical dual by orthogonal directions,
//! enumeration of augmented duals, and two structural duality checks.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::discrete::DiscreteFrame;
use crate::error::FrameError;
use crate::fusion::{
    alternate_dual_check, check_same_family_shape, FusionFamily, WeightedSubspace,
};
use crate::subspaces::{spd_inverse, spectral_norm, symmetrize, Subspace, TolerancePolicy};

/// Weights within this distance of 1 count as unit weights.
const UNIT_WEIGHT_TOL: f64 = 1e-12;

fn require_unit_weights(family: &FusionFamily) -> Result<(), FrameError> {
    for (i, m) in family.members().iter().enumerate() {
        if (m.weight() - 1.0).abs() > UNIT_WEIGHT_TOL {
            return Err(FrameError::UnsupportedWeights {
                member: i,
                weight: m.weight(),
            });
        }
    }
    Ok(())
}

/// One spanning vector list per member of a fusion family. Every vector lies
/// inside its member's subspace, and each list spans it.
#[derive(Debug, Clone)]
pub struct LocalFrameAssignment {
    vectors: Vec<Vec<DVector<f64>>>,
}

impl LocalFrameAssignment {
    pub fn new(
        family: &FusionFamily,
        vectors: Vec<Vec<DVector<f64>>>,
        tol: &TolerancePolicy,
    ) -> Result<Self, FrameError> {
        let assignment = Self { vectors };
        assignment.validate_for(family, tol)?;
        Ok(assignment)
    }

    /// The trivial assignment: each member's stored orthonormal basis.
    pub fn orthonormal_bases(family: &FusionFamily) -> Self {
        let vectors = family
            .members()
            .iter()
            .map(|m| {
                m.subspace()
                    .basis()
                    .column_iter()
                    .map(|c| c.into_owned())
                    .collect()
            })
            .collect();
        Self { vectors }
    }

    /// Checks the assignment against `family`: one nonempty list per member,
    /// every vector inside its subspace, every list spanning it.
    pub fn validate_for(
        &self,
        family: &FusionFamily,
        tol: &TolerancePolicy,
    ) -> Result<(), FrameError> {
        if self.vectors.len() != family.len() {
            return Err(FrameError::ShapeMismatch(format!(
                "assignment covers {} members, family has {}",
                self.vectors.len(),
                family.len()
            )));
        }
        for (i, (list, member)) in self.vectors.iter().zip(family.members()).enumerate() {
            if list.is_empty() {
                return Err(FrameError::LocalSpanMismatch { member: i });
            }
            for f in list {
                if f.len() != family.ambient_dim() {
                    return Err(FrameError::DimensionMismatch {
                        expected: family.ambient_dim(),
                        got: f.len(),
                    });
                }
                if member.subspace().distance(f)? > tol.identity_tol {
                    return Err(FrameError::LocalSpanMismatch { member: i });
                }
            }
            let span = Subspace::span(list, tol)
                .map_err(|_| FrameError::LocalSpanMismatch { member: i })?;
            if !span.approx_eq(member.subspace(), tol) {
                return Err(FrameError::LocalSpanMismatch { member: i });
            }
        }
        Ok(())
    }

    pub fn members(&self) -> &[Vec<DVector<f64>>] {
        &self.vectors
    }

    pub fn member(&self, i: usize) -> &[DVector<f64>] {
        &self.vectors[i]
    }

    /// Canonical dual of each local family, taken inside its own subspace:
    /// in basis coordinates c = Q^T f, the dual is Q S_loc^-1 c.
    pub fn local_canonical_duals(
        &self,
        family: &FusionFamily,
        tol: &TolerancePolicy,
    ) -> Result<LocalFrameAssignment, FrameError> {
        self.validate_for(family, tol)?;
        let mut out = Vec::with_capacity(self.vectors.len());
        for (i, (list, member)) in self.vectors.iter().zip(family.members()).enumerate() {
            let q = member.subspace().basis();
            let k = member.subspace().dim();
            let coords: Vec<DVector<f64>> = list.iter().map(|f| q.transpose() * f).collect();
            let mut s_loc = DMatrix::zeros(k, k);
            for c in &coords {
                s_loc += c * c.transpose();
            }
            let s_inv = spd_inverse(&symmetrize(&s_loc), tol)
                .map_err(|_| FrameError::LocalSpanMismatch { member: i })?;
            out.push(coords.iter().map(|c| q * (&s_inv * c)).collect());
        }
        Ok(Self { vectors: out })
    }
}

/// The flattened family {w_i f_{i,j}}. It is a frame exactly when the fusion
/// family is a fusion frame.
pub fn associated_discrete_frame(
    family: &FusionFamily,
    locals: &LocalFrameAssignment,
    tol: &TolerancePolicy,
) -> Result<DiscreteFrame, FrameError> {
    locals.validate_for(family, tol)?;
    let mut vectors = Vec::new();
    for (member, list) in family.members().iter().zip(locals.members()) {
        for f in list {
            vectors.push(member.weight() * f);
        }
    }
    DiscreteFrame::new(vectors)
}

/// Lifts per-member duals of the local frames to a dual of the associated
/// discrete frame: {w_i S_W^-1 g_{i,j}}. Each `duals` list must reconstruct
/// the member's projector from its `locals` list, i.e. the sum of
/// f_{i,j} g_{i,j}^T must equal P_{W_i}.
pub fn lift_local_duals(
    family: &FusionFamily,
    locals: &LocalFrameAssignment,
    duals: &LocalFrameAssignment,
    tol: &TolerancePolicy,
) -> Result<DiscreteFrame, FrameError> {
    locals.validate_for(family, tol)?;
    duals.validate_for(family, tol)?;
    for (i, (l, g)) in locals.members().iter().zip(duals.members()).enumerate() {
        if l.len() != g.len() {
            return Err(FrameError::ShapeMismatch(format!(
                "member {i} has {} vectors but {} dual vectors",
                l.len(),
                g.len()
            )));
        }
    }
    let d = family.ambient_dim();
    for (i, (member, (l, g))) in family
        .members()
        .iter()
        .zip(locals.members().iter().zip(duals.members()))
        .enumerate()
    {
        let mut mixed = DMatrix::zeros(d, d);
        for (f, gg) in l.iter().zip(g) {
            mixed += f * gg.transpose();
        }
        let residual = spectral_norm(&(mixed - member.subspace().projector()));
        if residual > tol.identity_tol {
            return Err(FrameError::NotLocalDual {
                member: i,
                residual,
            });
        }
    }
    let s_inv = family.operator_inverse(tol)?;
    let mut vectors = Vec::new();
    for (member, g) in family.members().iter().zip(duals.members()) {
        for gg in g {
            vectors.push(member.weight() * (&s_inv * gg));
        }
    }
    DiscreteFrame::new(vectors)
}

/// Per-member optional unit vector used to enlarge the canonical dual.
#[derive(Debug, Clone)]
pub struct AugmentationChoice {
    vectors: Vec<Option<DVector<f64>>>,
}

impl AugmentationChoice {
    pub fn new(vectors: Vec<Option<DVector<f64>>>) -> Self {
        Self { vectors }
    }

    /// The choice that augments nothing and reproduces the canonical dual.
    pub fn all_absent(n: usize) -> Self {
        Self {
            vectors: vec![None; n],
        }
    }

    pub fn members(&self) -> &[Option<DVector<f64>>] {
        &self.vectors
    }
}

/// Builds the dual {(S_W^-1 W_i + span{h_i}, 1)}. Each present h_i must be a
/// unit vector orthogonal to S_W^-1 W_i; absent members keep the canonical
/// dual subspace. Weights must all be 1.
pub fn construct_dual_by_augmentation(
    family: &FusionFamily,
    choice: &AugmentationChoice,
    tol: &TolerancePolicy,
) -> Result<FusionFamily, FrameError> {
    require_unit_weights(family)?;
    if choice.members().len() != family.len() {
        return Err(FrameError::ShapeMismatch(format!(
            "augmentation covers {} members, family has {}",
            choice.members().len(),
            family.len()
        )));
    }
    let s_inv = family.operator_inverse(tol)?;
    let mut members = Vec::with_capacity(family.len());
    for (i, (member, h)) in family.members().iter().zip(choice.members()).enumerate() {
        let transformed = member.subspace().image_under(&s_inv, tol)?;
        let subspace = match h {
            None => transformed,
            Some(h) => {
                if h.len() != family.ambient_dim() {
                    return Err(FrameError::DimensionMismatch {
                        expected: family.ambient_dim(),
                        got: h.len(),
                    });
                }
                let norm = h.norm();
                if (norm - 1.0).abs() > tol.identity_tol {
                    return Err(FrameError::InvalidAugmentation {
                        member: i,
                        reason: format!("augmentation vector has norm {norm:.6}, expected 1"),
                    });
                }
                let overlap = transformed.project(h)?.norm();
                if overlap > tol.identity_tol {
                    return Err(FrameError::InvalidAugmentation {
                        member: i,
                        reason: format!(
                            "augmentation vector overlaps the transformed subspace by {overlap:.3e}"
                        ),
                    });
                }
                let line = Subspace::span(&[h.clone()], tol)?;
                transformed.sum(&line, tol)?
            }
        };
        members.push(WeightedSubspace::new(subspace, 1.0)?);
    }
    FusionFamily::new(members)
}

/// How candidate augmentation vectors are produced for each member.
#[derive(Debug, Clone)]
pub enum EnumerationStrategy {
    /// The orthonormal basis vectors of each complement (S_W^-1 W_i)^perp,
    /// in stored column order.
    BasisVectors,
    /// `per_member` random unit vectors per complement, drawn from one
    /// deterministic stream seeded by `seed` and consumed in member order.
    SeededRandom { seed: u64, per_member: usize },
}

/// Result of enumerating augmented duals. `cap_exceeded` is set when more
/// verified duals existed than the cap allowed into `families`.
#[derive(Debug, Clone)]
pub struct DualEnumeration {
    pub families: Vec<FusionFamily>,
    pub cap_exceeded: bool,
}

fn random_unit_in(space: &Subspace, rng: &mut ChaCha8Rng) -> DVector<f64> {
    loop {
        let coeffs = DVector::from_fn(space.dim(), |_, _| rng.random_range(-1.0..1.0));
        let v = space.basis() * coeffs;
        let norm = v.norm();
        if norm > 1e-6 {
            return v / norm;
        }
    }
}

/// Walks the Cartesian product of per-member candidates (each candidate list
/// plus the absent option, absent last), member 0 most significant, keeping
/// every family that verifies as a dual. The all-absent combination comes
/// last, so the canonical dual closes the full list.
pub fn enumerate_augmented_duals(
    family: &FusionFamily,
    strategy: &EnumerationStrategy,
    cap: usize,
    tol: &TolerancePolicy,
) -> Result<DualEnumeration, FrameError> {
    require_unit_weights(family)?;
    let s_inv = family.operator_inverse(tol)?;
    let mut rng = match strategy {
        EnumerationStrategy::SeededRandom { seed, .. } => Some(ChaCha8Rng::seed_from_u64(*seed)),
        EnumerationStrategy::BasisVectors => None,
    };
    let mut candidates: Vec<Vec<Option<DVector<f64>>>> = Vec::with_capacity(family.len());
    for member in family.members() {
        let transformed = member.subspace().image_under(&s_inv, tol)?;
        let mut list: Vec<Option<DVector<f64>>> = Vec::new();
        if let Some(comp) = transformed.orthocomplement() {
            match strategy {
                EnumerationStrategy::BasisVectors => {
                    for col in comp.basis().column_iter() {
                        list.push(Some(col.into_owned()));
                    }
                }
                EnumerationStrategy::SeededRandom { per_member, .. } => {
                    let rng = rng.as_mut().expect("seeded strategy carries a generator");
                    for _ in 0..*per_member {
                        list.push(Some(random_unit_in(&comp, rng)));
                    }
                }
            }
        }
        list.push(None);
        candidates.push(list);
    }

    let mut idx = vec![0usize; candidates.len()];
    let mut families = Vec::new();
    let mut cap_exceeded = false;
    loop {
        let choice = AugmentationChoice::new(
            idx.iter()
                .zip(&candidates)
                .map(|(&j, c)| c[j].clone())
                .collect(),
        );
        let dual = construct_dual_by_augmentation(family, &choice, tol)?;
        if alternate_dual_check(family, &dual, tol)?.is_dual {
            if families.len() == cap {
                cap_exceeded = true;
                break;
            }
            families.push(dual);
        }
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return Ok(DualEnumeration {
                    families,
                    cap_exceeded,
                });
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < candidates[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
    Ok(DualEnumeration {
        families,
        cap_exceeded,
    })
}

/// Verdict of the Parseval-plus-orthogonality sufficient condition.
/// `hypotheses_hold` implies `is_dual`; the converse can fail.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ParsevalOrthogonalityReport {
    pub hypotheses_hold: bool,
    pub is_dual: bool,
}

/// Checks the sufficient condition: V Parseval and W_k orthogonal to
/// S_W^-1 V_i for every i != k. Both families must carry unit weights.
pub fn parseval_orthogonality_dual_check(
    w: &FusionFamily,
    v: &FusionFamily,
    tol: &TolerancePolicy,
) -> Result<ParsevalOrthogonalityReport, FrameError> {
    require_unit_weights(w)?;
    require_unit_weights(v)?;
    check_same_family_shape(w, v)?;
    let s_inv = w.operator_inverse(tol)?;
    let d = v.ambient_dim();
    let parseval =
        spectral_norm(&(v.frame_operator() - DMatrix::identity(d, d))) <= tol.identity_tol;
    let transformed = v
        .members()
        .iter()
        .map(|m| m.subspace().image_under(&s_inv, tol))
        .collect::<Result<Vec<_>, _>>()?;
    let mut orthogonal = true;
    'outer: for (k, wk) in w.members().iter().enumerate() {
        for (i, ti) in transformed.iter().enumerate() {
            if i != k && !wk.subspace().is_orthogonal_to(ti, tol) {
                orthogonal = false;
                break 'outer;
            }
        }
    }
    let is_dual = alternate_dual_check(w, v, tol)?.is_dual;
    Ok(ParsevalOrthogonalityReport {
        hypotheses_hold: parseval && orthogonal,
        is_dual,
    })
}

/// Verdict of the pairwise-orthogonality obstruction. When every W_i is
/// orthogonal to V_i, the reconstruction operator assembled from the family
/// {(S_W V_i, v_i)} vanishes identically, so that family is never a dual.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OrthogonalObstructionReport {
    pub pairwise_orthogonal: bool,
    pub transformed_sum_norm: f64,
}

pub fn orthogonal_obstruction_check(
    w: &FusionFamily,
    v: &FusionFamily,
    tol: &TolerancePolicy,
) -> Result<OrthogonalObstructionReport, FrameError> {
    check_same_family_shape(w, v)?;
    let s_inv = w.operator_inverse(tol)?;
    if !v.is_fusion_frame(tol) {
        return Err(FrameError::NotAFusionFrame {
            lower: v.bounds().lower,
        });
    }
    let s_w = w.frame_operator();
    let pairwise_orthogonal = w
        .members()
        .iter()
        .zip(v.members())
        .all(|(a, b)| a.subspace().is_orthogonal_to(b.subspace(), tol));
    let d = w.ambient_dim();
    let mut mixed = DMatrix::zeros(d, d);
    for (wi, vi) in w.members().iter().zip(v.members()) {
        let moved = vi.subspace().image_under(&s_w, tol)?;
        mixed +=
            wi.weight() * vi.weight() * (moved.projector() * &s_inv * wi.subspace().projector());
    }
    Ok(OrthogonalObstructionReport {
        pairwise_orthogonal,
        transformed_sum_norm: spectral_norm(&mixed),
    })
}
