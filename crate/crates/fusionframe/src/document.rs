//! JSON interchange for fusion families: a document lists the ambient
//! dimension, weighted spanning sets, and optional local frames. Spans are
//! arbitrary generating sets; orthonormalization happens on build.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::duals::{AugmentationChoice, LocalFrameAssignment};
use crate::error::FrameError;
use crate::fusion::{FusionFamily, WeightedSubspace};
use crate::subspaces::{Subspace, TolerancePolicy};

fn default_weight() -> f64 {
    1.0
}

/// One member: a weight (default 1) and a spanning set of row vectors.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceSpec {
    #[serde(default = "default_weight")]
    pub weight: f64,
    pub span: Vec<Vec<f64>>,
}

/// A fusion family as written in a file. `local_frames`, when present, gives
/// one vector list per member, indexed in the same order as `subspaces`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpecDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimension: usize,
    pub subspaces: Vec<SubspaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_frames: Option<Vec<Vec<Vec<f64>>>>,
}

impl FamilySpecDocument {
    pub fn from_json(text: &str) -> Result<Self, FrameError> {
        serde_json::from_str(text).map_err(|e| FrameError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization cannot fail")
    }

    /// Validates the document and builds the family plus, when present, the
    /// local frame assignment.
    pub fn build(
        &self,
        tol: &TolerancePolicy,
    ) -> Result<(FusionFamily, Option<LocalFrameAssignment>), FrameError> {
        if self.dimension == 0 {
            return Err(FrameError::Validation(
                "dimension must be at least 1".into(),
            ));
        }
        if self.subspaces.is_empty() {
            return Err(FrameError::Validation(
                "at least one subspace is required".into(),
            ));
        }
        let d = self.dimension;
        let mut members = Vec::with_capacity(self.subspaces.len());
        for (i, spec) in self.subspaces.iter().enumerate() {
            if spec.span.is_empty() {
                return Err(FrameError::Validation(format!(
                    "subspaces[{i}].span must not be empty"
                )));
            }
            let mut vectors = Vec::with_capacity(spec.span.len());
            for (j, coords) in spec.span.iter().enumerate() {
                if coords.len() != d {
                    return Err(FrameError::Validation(format!(
                        "subspaces[{i}].span[{j}] has {} coordinates, expected {d}",
                        coords.len()
                    )));
                }
                if coords.iter().any(|x| !x.is_finite()) {
                    return Err(FrameError::Validation(format!(
                        "subspaces[{i}].span[{j}] has a non-finite entry"
                    )));
                }
                vectors.push(DVector::from_column_slice(coords));
            }
            if !spec.weight.is_finite() || spec.weight <= 0.0 {
                return Err(FrameError::Validation(format!(
                    "subspaces[{i}].weight must be positive and finite, got {}",
                    spec.weight
                )));
            }
            let subspace = Subspace::span(&vectors, tol).map_err(|e| match e {
                FrameError::ZeroSpan => FrameError::Validation(format!(
                    "subspaces[{i}].span contains only zero vectors"
                )),
                other => other,
            })?;
            members.push(WeightedSubspace::new(subspace, spec.weight)?);
        }
        let family = FusionFamily::new(members)?;

        let locals = match &self.local_frames {
            None => None,
            Some(lists) => {
                if lists.len() != self.subspaces.len() {
                    return Err(FrameError::Validation(format!(
                        "local_frames has {} entries, expected {}",
                        lists.len(),
                        self.subspaces.len()
                    )));
                }
                let mut vectors = Vec::with_capacity(lists.len());
                for (i, list) in lists.iter().enumerate() {
                    let mut member_vectors = Vec::with_capacity(list.len());
                    for (j, coords) in list.iter().enumerate() {
                        if coords.len() != d {
                            return Err(FrameError::Validation(format!(
                                "local_frames[{i}][{j}] has {} coordinates, expected {d}",
                                coords.len()
                            )));
                        }
                        member_vectors.push(DVector::from_column_slice(coords));
                    }
                    vectors.push(member_vectors);
                }
                Some(LocalFrameAssignment::new(&family, vectors, tol)?)
            }
        };
        Ok((family, locals))
    }

    /// Writes a family back to document form. Spans become the stored
    /// orthonormal basis columns, so build and from_family round-trip to the
    /// same subspaces.
    pub fn from_family(
        name: Option<String>,
        family: &FusionFamily,
        locals: Option<&LocalFrameAssignment>,
    ) -> Self {
        Self {
            name,
            dimension: family.ambient_dim(),
            subspaces: family
                .members()
                .iter()
                .map(|m| SubspaceSpec {
                    weight: m.weight(),
                    span: m
                        .subspace()
                        .basis()
                        .column_iter()
                        .map(|c| c.iter().copied().collect())
                        .collect(),
                })
                .collect(),
            local_frames: locals.map(|l| {
                l.members()
                    .iter()
                    .map(|list| list.iter().map(|v| v.iter().copied().collect()).collect())
                    .collect()
            }),
        }
    }
}

/// Parses an augmentation file: a JSON array with one entry per member,
/// each either a coordinate list or null for the absent option.
pub fn parse_augmentation(text: &str, dimension: usize) -> Result<AugmentationChoice, FrameError> {
    let raw: Vec<Option<Vec<f64>>> =
        serde_json::from_str(text).map_err(|e| FrameError::Parse(e.to_string()))?;
    let mut vectors = Vec::with_capacity(raw.len());
    for (i, entry) in raw.into_iter().enumerate() {
        match entry {
            None => vectors.push(None),
            Some(coords) => {
                if coords.len() != dimension {
                    return Err(FrameError::Validation(format!(
                        "augmentation[{i}] has {} coordinates, expected {dimension}",
                        coords.len()
                    )));
                }
                if coords.iter().any(|x| !x.is_finite()) {
                    return Err(FrameError::Validation(format!(
                        "augmentation[{i}] has a non-finite entry"
                    )));
                }
                vectors.push(Some(DVector::from_column_slice(&coords)));
            }
        }
    }
    Ok(AugmentationChoice::new(vectors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::DMatrix;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    const THREE_LINES: &str = r#"{
        "name": "three lines",
        "dimension": 3,
        "subspaces": [
            {"span": [[1, 0, 0]]},
            {"span": [[1, 1, 0]]},
            {"span": [[0, 0, 1]]}
        ]
    }"#;

    #[test]
    fn parses_and_builds_with_default_weights() {
        let doc = FamilySpecDocument::from_json(THREE_LINES).unwrap();
        assert_eq!(doc.name.as_deref(), Some("three lines"));
        let (family, locals) = doc.build(&tol()).unwrap();
        assert!(locals.is_none());
        assert_eq!(family.len(), 3);
        assert_eq!(family.ambient_dim(), 3);
        for m in family.members() {
            assert_relative_eq!(m.weight(), 1.0);
        }
        let s = family.frame_operator();
        let expected =
            DMatrix::from_row_slice(3, 3, &[1.5, 0.5, 0.0, 0.5, 0.5, 0.0, 0.0, 0.0, 1.0]);
        assert!(crate::subspaces::spectral_norm(&(s - expected)) <= 1e-14);
    }

    #[test]
    fn rejects_unknown_fields_with_location() {
        let err = FamilySpecDocument::from_json(r#"{"dimension": 2, "subspaces": [], "extra": 1}"#)
            .unwrap_err();
        match err {
            FrameError::Parse(msg) => assert!(msg.contains("extra"), "message was {msg}"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn reports_parse_position() {
        let err = FamilySpecDocument::from_json("{\n  \"dimension\": oops\n}").unwrap_err();
        match err {
            FrameError::Parse(msg) => {
                assert!(msg.contains("line 2"), "message was {msg}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn validates_member_fields_by_index() {
        let short = r#"{"dimension": 3, "subspaces": [{"span": [[1, 0]]}]}"#;
        let err = FamilySpecDocument::from_json(short)
            .unwrap()
            .build(&tol())
            .unwrap_err();
        match err {
            FrameError::Validation(msg) => {
                assert!(msg.contains("subspaces[0].span[0]"), "message was {msg}")
            }
            other => panic!("unexpected error {other:?}"),
        }

        let bad_weight = r#"{"dimension": 2, "subspaces": [{"weight": 0, "span": [[1, 0]]}]}"#;
        let err = FamilySpecDocument::from_json(bad_weight)
            .unwrap()
            .build(&tol())
            .unwrap_err();
        match err {
            FrameError::Validation(msg) => {
                assert!(msg.contains("subspaces[0].weight"), "message was {msg}")
            }
            other => panic!("unexpected error {other:?}"),
        }

        let zero_span = r#"{"dimension": 2, "subspaces": [{"span": [[0, 0]]}]}"#;
        let err = FamilySpecDocument::from_json(zero_span)
            .unwrap()
            .build(&tol())
            .unwrap_err();
        match err {
            FrameError::Validation(msg) => {
                assert!(msg.contains("zero vectors"), "message was {msg}")
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn builds_local_frames_and_rejects_mismatches() {
        let with_locals = r#"{
            "dimension": 2,
            "subspaces": [{"span": [[1, 0]]}, {"span": [[0, 1]]}],
            "local_frames": [[[1, 0], [2, 0]], [[0, 3]]]
        }"#;
        let (family, locals) = FamilySpecDocument::from_json(with_locals)
            .unwrap()
            .build(&tol())
            .unwrap();
        let locals = locals.unwrap();
        assert_eq!(locals.member(0).len(), 2);
        assert_eq!(locals.member(1).len(), 1);
        assert_eq!(family.len(), 2);

        let off_subspace = r#"{
            "dimension": 2,
            "subspaces": [{"span": [[1, 0]]}, {"span": [[0, 1]]}],
            "local_frames": [[[1, 1]], [[0, 1]]]
        }"#;
        let err = FamilySpecDocument::from_json(off_subspace)
            .unwrap()
            .build(&tol())
            .unwrap_err();
        assert!(matches!(err, FrameError::LocalSpanMismatch { member: 0 }));

        let wrong_count = r#"{
            "dimension": 2,
            "subspaces": [{"span": [[1, 0]]}, {"span": [[0, 1]]}],
            "local_frames": [[[1, 0]]]
        }"#;
        let err = FamilySpecDocument::from_json(wrong_count)
            .unwrap()
            .build(&tol())
            .unwrap_err();
        match err {
            FrameError::Validation(msg) => {
                assert!(msg.contains("local_frames"), "message was {msg}")
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn round_trips_through_from_family() {
        let doc = FamilySpecDocument::from_json(THREE_LINES).unwrap();
        let (family, _) = doc.build(&tol()).unwrap();
        let out = FamilySpecDocument::from_family(Some("echo".into()), &family, None);
        let (rebuilt, _) = FamilySpecDocument::from_json(&out.to_json())
            .unwrap()
            .build(&tol())
            .unwrap();
        assert_eq!(rebuilt.len(), family.len());
        for (a, b) in rebuilt.members().iter().zip(family.members()) {
            assert!(a.subspace().approx_eq(b.subspace(), &tol()));
            assert_relative_eq!(a.weight(), b.weight());
        }
    }

    #[test]
    fn parses_augmentation_files() {
        let choice = parse_augmentation("[[0, 0, 1], null, [0, 1, 0]]", 3).unwrap();
        assert_eq!(choice.members().len(), 3);
        assert!(choice.members()[0].is_some());
        assert!(choice.members()[1].is_none());

        let err = parse_augmentation("[[0, 1]]", 3).unwrap_err();
        match err {
            FrameError::Validation(msg) => {
                assert!(msg.contains("augmentation[0]"), "message was {msg}")
            }
            other => panic!("unexpected error {other:?}"),
        }

        assert!(matches!(
            parse_augmentation("not json", 3),
            Err(FrameError::Parse(_))
        ));
    }
}
