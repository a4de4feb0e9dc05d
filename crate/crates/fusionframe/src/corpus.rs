//! The bundled verification corpus: curated families with frozen expected
//! values, replayed by the `verify-paper` subcommand and the acceptance
//! tests. Every row is deterministic; expected values never depend on the
//! code under test.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::discrete::{is_dual_pair, DiscreteFrame};
use crate::document::{parse_augmentation, FamilySpecDocument};
use crate::duals::{
    associated_discrete_frame, construct_dual_by_augmentation, enumerate_augmented_duals,
    lift_local_duals, AugmentationChoice, EnumerationStrategy,
};
use crate::error::FrameError;
use crate::fusion::{
    alternate_dual_check, canonical_dual_inclusion, mutual_dual_check, phi_blocks, FusionFamily,
};
use crate::report::sig12;
use crate::subspaces::{spectral_norm, Subspace, TolerancePolicy};

/// One corpus check: what was compared, what was expected, what came out.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusRow {
    pub group: String,
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// The corpus input documents. Mutable access exists so tests can perturb
/// weights and watch rows fail.
#[derive(Debug, Clone)]
pub struct CorpusInputs {
    pub six_axes_base: FamilySpecDocument,
    pub six_axes_doubled: FamilySpecDocument,
    pub three_lines: FamilySpecDocument,
    pub plane_dual: FamilySpecDocument,
    pub four_lines: FamilySpecDocument,
    pub scaled_dual: FamilySpecDocument,
    pub augmented: Vec<FamilySpecDocument>,
    pub augment_first: AugmentationChoice,
    pub augment_third: AugmentationChoice,
}

impl CorpusInputs {
    pub fn bundled() -> Self {
        let doc = |text: &str| FamilySpecDocument::from_json(text).expect("bundled fixture parses");
        Self {
            six_axes_base: doc(include_str!("../fixtures/six_axes_w.json")),
            six_axes_doubled: doc(include_str!("../fixtures/six_axes_v.json")),
            three_lines: doc(include_str!("../fixtures/three_lines.json")),
            plane_dual: doc(include_str!("../fixtures/three_lines_plane_dual.json")),
            four_lines: doc(include_str!("../fixtures/four_lines.json")),
            scaled_dual: doc(include_str!("../fixtures/four_lines_scaled_dual.json")),
            augmented: vec![
                doc(include_str!("../fixtures/augmented_dual_1.json")),
                doc(include_str!("../fixtures/augmented_dual_2.json")),
                doc(include_str!("../fixtures/augmented_dual_3.json")),
                doc(include_str!("../fixtures/augmented_dual_4.json")),
            ],
            augment_first: parse_augmentation(include_str!("../fixtures/augment_h_1.json"), 3)
                .expect("bundled augmentation parses"),
            augment_third: parse_augmentation(include_str!("../fixtures/augment_h_3.json"), 3)
                .expect("bundled augmentation parses"),
        }
    }

    /// Every family document, for mutation-style tests.
    pub fn documents_mut(&mut self) -> Vec<&mut FamilySpecDocument> {
        let mut docs = vec![
            &mut self.six_axes_base,
            &mut self.six_axes_doubled,
            &mut self.three_lines,
            &mut self.plane_dual,
            &mut self.four_lines,
            &mut self.scaled_dual,
        ];
        docs.extend(self.augmented.iter_mut());
        docs
    }
}

/// 0 when every row passed, 1 otherwise.
pub fn exit_code(rows: &[CorpusRow]) -> i32 {
    if rows.iter().all(|r| r.pass) {
        0
    } else {
        1
    }
}

struct RowSink<'a> {
    filter: Option<&'a str>,
    rows: Vec<CorpusRow>,
}

impl RowSink<'_> {
    fn active(&self, group: &str) -> bool {
        self.filter.map_or(true, |f| group.contains(f))
    }

    fn push(
        &mut self,
        group: &str,
        name: &str,
        expected: String,
        outcome: Result<(String, bool), FrameError>,
    ) {
        let (actual, pass) = match outcome {
            Ok((actual, pass)) => (actual, pass),
            Err(e) => (format!("error: {e}"), false),
        };
        self.rows.push(CorpusRow {
            group: group.into(),
            name: name.into(),
            expected,
            actual,
            pass,
        });
    }

    fn value_le(
        &mut self,
        group: &str,
        name: &str,
        bound: f64,
        f: impl FnOnce() -> Result<f64, FrameError>,
    ) {
        self.push(
            group,
            name,
            format!("<= {bound:e}"),
            f().map(|v| (sig12(v), v <= bound)),
        );
    }

    fn value_near(
        &mut self,
        group: &str,
        name: &str,
        target: f64,
        window: f64,
        f: impl FnOnce() -> Result<f64, FrameError>,
    ) {
        self.push(
            group,
            name,
            format!("{} +/- {window:e}", sig12(target)),
            f().map(|v| (sig12(v), (v - target).abs() <= window)),
        );
    }

    fn value_gt(
        &mut self,
        group: &str,
        name: &str,
        floor: f64,
        f: impl FnOnce() -> Result<f64, FrameError>,
    ) {
        self.push(
            group,
            name,
            format!("> {floor}"),
            f().map(|v| (sig12(v), v > floor)),
        );
    }

    fn flag(
        &mut self,
        group: &str,
        name: &str,
        expected: bool,
        f: impl FnOnce() -> Result<bool, FrameError>,
    ) {
        self.push(
            group,
            name,
            expected.to_string(),
            f().map(|v| (v.to_string(), v == expected)),
        );
    }
}

fn family_eq(a: &FusionFamily, b: &FusionFamily, tol: &TolerancePolicy) -> bool {
    a.len() == b.len()
        && a.ambient_dim() == b.ambient_dim()
        && a.members().iter().zip(b.members()).all(|(x, y)| {
            (x.weight() - y.weight()).abs() <= 1e-12 && x.subspace().approx_eq(y.subspace(), tol)
        })
}

fn spans_deviation(family: &FusionFamily, targets: &[Subspace]) -> Result<f64, FrameError> {
    if family.len() != targets.len() {
        return Err(FrameError::ShapeMismatch(format!(
            "{} members but {} targets",
            family.len(),
            targets.len()
        )));
    }
    let mut worst: f64 = 0.0;
    for (m, t) in family.members().iter().zip(targets) {
        worst = worst.max(spectral_norm(&(m.subspace().projector() - t.projector())));
    }
    Ok(worst)
}

fn vectors_deviation(frame: &DiscreteFrame, expected: &[DVector<f64>]) -> Result<f64, FrameError> {
    if frame.len() != expected.len() {
        return Err(FrameError::ShapeMismatch(format!(
            "{} vectors but {} targets",
            frame.len(),
            expected.len()
        )));
    }
    Ok(frame
        .vectors()
        .iter()
        .zip(expected)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}

fn line_target(coords: &[f64], tol: &TolerancePolicy) -> Result<Subspace, FrameError> {
    Subspace::span(&[DVector::from_column_slice(coords)], tol)
}

/// Replays the whole corpus, or only the groups whose name contains
/// `filter`. Failures never abort the run; they become failing rows.
pub fn run_corpus(
    inputs: &CorpusInputs,
    filter: Option<&str>,
    tol: &TolerancePolicy,
) -> Vec<CorpusRow> {
    let mut sink = RowSink {
        filter,
        rows: Vec::new(),
    };
    six_axes_rows(&mut sink, inputs, tol);
    three_lines_rows(&mut sink, inputs, tol);
    four_lines_rows(&mut sink, inputs, tol);
    augmented_rows(&mut sink, inputs, tol);
    sink.rows
}

fn six_axes_rows(sink: &mut RowSink, inputs: &CorpusInputs, tol: &TolerancePolicy) {
    const G: &str = "six-axes";
    if !sink.active(G) {
        return;
    }
    let built = (|| {
        let (w, w_locals) = inputs.six_axes_base.build(tol)?;
        let (v, v_locals) = inputs.six_axes_doubled.build(tol)?;
        let w_locals = w_locals.ok_or_else(|| {
            FrameError::Validation("six axes base fixture is missing local_frames".into())
        })?;
        let v_locals = v_locals.ok_or_else(|| {
            FrameError::Validation("six axes doubled fixture is missing local_frames".into())
        })?;
        Ok::<_, FrameError>((w, w_locals, v, v_locals))
    })();
    let (w, w_locals, v, v_locals) = match built {
        Ok(x) => x,
        Err(e) => {
            sink.push(G, "fixtures build", "ok".into(), Err(e));
            return;
        }
    };
    let id = DMatrix::<f64>::identity(3, 3);

    sink.value_le(G, "base operator is twice the identity", 1e-12, || {
        Ok(spectral_norm(&(w.frame_operator() - 2.0 * &id)))
    });
    sink.value_le(
        G,
        "doubled operator is eight times the identity",
        1e-12,
        || Ok(spectral_norm(&(v.frame_operator() - 8.0 * &id))),
    );
    sink.value_le(
        G,
        "doubled family verifies as a dual of the base family",
        1e-12,
        || Ok(alternate_dual_check(&w, &v, tol)?.residual),
    );
    sink.value_near(G, "reverse residual is three quarters", 0.75, 1e-10, || {
        Ok(alternate_dual_check(&v, &w, tol)?.residual)
    });
    sink.flag(G, "reverse direction passes the dual test", false, || {
        Ok(alternate_dual_check(&v, &w, tol)?.is_dual)
    });
    sink.value_near(
        G,
        "associated discrete residual forward is three",
        3.0,
        1e-8,
        || {
            let fw = associated_discrete_frame(&w, &w_locals, tol)?;
            let fv = associated_discrete_frame(&v, &v_locals, tol)?;
            Ok(is_dual_pair(&fw, &fv, tol)?.residual)
        },
    );
    sink.value_near(
        G,
        "associated discrete residual reverse is three",
        3.0,
        1e-8,
        || {
            let fw = associated_discrete_frame(&w, &w_locals, tol)?;
            let fv = associated_discrete_frame(&v, &v_locals, tol)?;
            Ok(is_dual_pair(&fv, &fw, tol)?.residual)
        },
    );
    sink.value_near(
        G,
        "first cross block through the inverse is one half",
        0.5,
        1e-12,
        || Ok(phi_blocks(&w, &v, tol)?[0][(0, 0)]),
    );
    sink.value_le(
        G,
        "fourth cross block through the inverse vanishes",
        1e-12,
        || Ok(phi_blocks(&w, &v, tol)?[3][(0, 0)].abs()),
    );
    sink.flag(G, "the pair is mutually dual", false, || {
        mutual_dual_check(&w, &v, tol)
    });
    sink.value_le(
        G,
        "canonical dual of the doubled family keeps its subspaces",
        1e-10,
        || {
            let dual = v.canonical_dual(tol)?;
            let targets: Vec<Subspace> = v.members().iter().map(|m| m.subspace().clone()).collect();
            spans_deviation(&dual, &targets)
        },
    );
    sink.value_le(
        G,
        "doubled family reconstructs through its canonical dual",
        1e-10,
        || {
            let dual = v.canonical_dual(tol)?;
            Ok(alternate_dual_check(&v, &dual, tol)?.residual)
        },
    );
}

fn three_lines_rows(sink: &mut RowSink, inputs: &CorpusInputs, tol: &TolerancePolicy) {
    const G: &str = "three-lines";
    if !sink.active(G) {
        return;
    }
    let built = (|| {
        let (lines, _) = inputs.three_lines.build(tol)?;
        let (plane, _) = inputs.plane_dual.build(tol)?;
        Ok::<_, FrameError>((lines, plane))
    })();
    let (lines, plane) = match built {
        Ok(x) => x,
        Err(e) => {
            sink.push(G, "fixtures build", "ok".into(), Err(e));
            return;
        }
    };
    let r = std::f64::consts::SQRT_2 / 2.0;

    sink.value_le(G, "operator matches the printed matrix", 1e-12, || {
        let expected =
            DMatrix::from_row_slice(3, 3, &[1.5, 0.5, 0.0, 0.5, 0.5, 0.0, 0.0, 0.0, 1.0]);
        Ok(spectral_norm(&(lines.frame_operator() - expected)))
    });
    sink.value_near(G, "optimal lower bound", 1.0 - r, 1e-10, || {
        Ok(lines.bounds().lower)
    });
    sink.value_near(G, "optimal upper bound", 1.0 + r, 1e-10, || {
        Ok(lines.bounds().upper)
    });
    sink.value_le(G, "upper bound does not exceed two", 2.0, || {
        Ok(lines.bounds().upper)
    });
    sink.value_le(
        G,
        "canonical dual spans match the printed lines",
        1e-10,
        || {
            let dual = lines.canonical_dual(tol)?;
            let targets = vec![
                line_target(&[1.0, -1.0, 0.0], tol)?,
                line_target(&[0.0, 1.0, 0.0], tol)?,
                line_target(&[0.0, 0.0, 1.0], tol)?,
            ];
            spans_deviation(&dual, &targets)
        },
    );
    sink.value_le(G, "plane extension verifies as a dual", 1e-10, || {
        Ok(alternate_dual_check(&lines, &plane, tol)?.residual)
    });
    sink.flag(G, "line family forms a fusion riesz basis", true, || {
        Ok(lines.riesz_report(tol).is_riesz)
    });
    sink.flag(G, "plane extension is a fusion riesz basis", false, || {
        Ok(plane.riesz_report(tol).is_riesz)
    });
    sink.flag(
        G,
        "at least two distinct verified duals exist",
        true,
        || {
            let canonical = lines.canonical_dual(tol)?;
            let canonical_ok = alternate_dual_check(&lines, &canonical, tol)?.is_dual;
            let plane_ok = alternate_dual_check(&lines, &plane, tol)?.is_dual;
            Ok(canonical_ok && plane_ok && !family_eq(&canonical, &plane, tol))
        },
    );
    sink.flag(
        G,
        "plane dual contains every canonical dual subspace",
        true,
        || canonical_dual_inclusion(&lines, &plane, tol),
    );
}

fn four_lines_rows(sink: &mut RowSink, inputs: &CorpusInputs, tol: &TolerancePolicy) {
    const G: &str = "four-lines";
    if !sink.active(G) {
        return;
    }
    let built = (|| {
        let (four, locals) = inputs.four_lines.build(tol)?;
        let locals = locals.ok_or_else(|| {
            FrameError::Validation("four lines fixture is missing local_frames".into())
        })?;
        let (scaled, _) = inputs.scaled_dual.build(tol)?;
        Ok::<_, FrameError>((four, locals, scaled))
    })();
    let (four, locals, scaled) = match built {
        Ok(x) => x,
        Err(e) => {
            sink.push(G, "fixtures build", "ok".into(), Err(e));
            return;
        }
    };
    let rt2 = std::f64::consts::SQRT_2;

    sink.value_le(
        G,
        "fusion operator matches the printed matrix",
        1e-12,
        || {
            let expected =
                DMatrix::from_row_slice(3, 3, &[2.0, 1.0, 0.0, 1.0, 2.0, 0.0, 0.0, 0.0, 1.0]);
            Ok(spectral_norm(&(four.frame_operator() - expected)))
        },
    );
    sink.value_le(
        G,
        "canonical dual spans match the printed directions",
        1e-10,
        || {
            let dual = four.canonical_dual(tol)?;
            let targets = vec![
                line_target(&[2.0, -1.0, 0.0], tol)?,
                line_target(&[1.0, 1.0, 0.0], tol)?,
                line_target(&[-1.0, 2.0, 0.0], tol)?,
                line_target(&[0.0, 0.0, 1.0], tol)?,
            ];
            spans_deviation(&dual, &targets)
        },
    );
    sink.value_gt(
        G,
        "a local dual vector escapes its canonical dual subspace",
        0.1,
        || {
            let duals = locals.local_canonical_duals(&four, tol)?;
            let s_inv = four.operator_inverse(tol)?;
            let mut worst: f64 = 0.0;
            for (member, g) in four.members().iter().zip(duals.members()) {
                let transformed = member.subspace().image_under(&s_inv, tol)?;
                for gg in g {
                    worst = worst.max(transformed.distance(gg)?);
                }
            }
            Ok(worst)
        },
    );
    sink.value_le(
        G,
        "associated discrete operator matches the printed matrix",
        1e-12,
        || {
            let frame = associated_discrete_frame(&four, &locals, tol)?;
            let expected =
                DMatrix::from_row_slice(3, 3, &[3.0, 2.0, 0.0, 2.0, 3.0, 0.0, 0.0, 0.0, 1.0]);
            Ok(spectral_norm(&(frame.frame_operator() - expected)))
        },
    );
    sink.value_le(
        G,
        "discrete canonical dual matches the printed vectors",
        1e-10,
        || {
            let frame = associated_discrete_frame(&four, &locals, tol)?;
            let dual = frame.canonical_dual(tol)?;
            let expected = vec![
                DVector::from_column_slice(&[3.0 / 5.0, -2.0 / 5.0, 0.0]),
                DVector::from_column_slice(&[rt2 / 5.0, rt2 / 5.0, 0.0]),
                DVector::from_column_slice(&[-2.0 / 5.0, 3.0 / 5.0, 0.0]),
                DVector::from_column_slice(&[0.0, 0.0, 1.0]),
            ];
            vectors_deviation(&dual, &expected)
        },
    );
    sink.value_le(
        G,
        "lifted local duals verify against the associated family",
        1e-10,
        || {
            let duals = locals.local_canonical_duals(&four, tol)?;
            let lifted = lift_local_duals(&four, &locals, &duals, tol)?;
            let frame = associated_discrete_frame(&four, &locals, tol)?;
            Ok(is_dual_pair(&frame, &lifted, tol)?.residual)
        },
    );
    sink.value_le(
        G,
        "lifted local duals match the printed vectors",
        1e-10,
        || {
            let duals = locals.local_canonical_duals(&four, tol)?;
            let lifted = lift_local_duals(&four, &locals, &duals, tol)?;
            let expected = vec![
                DVector::from_column_slice(&[2.0 / 3.0, -1.0 / 3.0, 0.0]),
                DVector::from_column_slice(&[rt2 / 6.0, rt2 / 6.0, 0.0]),
                DVector::from_column_slice(&[-1.0 / 3.0, 2.0 / 3.0, 0.0]),
                DVector::from_column_slice(&[0.0, 0.0, 1.0]),
            ];
            vectors_deviation(&lifted, &expected)
        },
    );
    sink.flag(
        G,
        "identical locals are rejected as local duals",
        true,
        || {
            Ok(matches!(
                lift_local_duals(&four, &locals, &locals, tol),
                Err(FrameError::NotLocalDual { .. })
            ))
        },
    );
    sink.value_le(
        G,
        "scaled dual operator matches its expected matrix",
        1e-12,
        || {
            let a = 2.0 / 25.0;
            let b = 1.0 / 325.0;
            let expected = DMatrix::from_row_slice(3, 3, &[a, b, 0.0, b, a, 0.0, 0.0, 0.0, 1.0]);
            Ok(spectral_norm(&(scaled.frame_operator() - expected)))
        },
    );
    sink.value_near(
        G,
        "forward residual against the scaled dual",
        0.825_641_025_641_025_7,
        1e-8,
        || Ok(alternate_dual_check(&four, &scaled, tol)?.residual),
    );
    sink.value_near(
        G,
        "reverse residual against the scaled dual",
        4.407_407_407_407_405,
        1e-8,
        || Ok(alternate_dual_check(&scaled, &four, tol)?.residual),
    );
    sink.flag(
        G,
        "scaled dual is rejected in both directions",
        true,
        || {
            let fwd = alternate_dual_check(&four, &scaled, tol)?;
            let rev = alternate_dual_check(&scaled, &four, tol)?;
            Ok(!fwd.is_dual && !rev.is_dual)
        },
    );
}

fn augmented_rows(sink: &mut RowSink, inputs: &CorpusInputs, tol: &TolerancePolicy) {
    const G: &str = "augmented-duals";
    if !sink.active(G) {
        return;
    }
    let built = (|| {
        let (lines, _) = inputs.three_lines.build(tol)?;
        let mut families = Vec::new();
        for doc in &inputs.augmented {
            families.push(doc.build(tol)?.0);
        }
        Ok::<_, FrameError>((lines, families))
    })();
    let (lines, families) = match built {
        Ok(x) => x,
        Err(e) => {
            sink.push(G, "fixtures build", "ok".into(), Err(e));
            return;
        }
    };

    let ordinals = ["first", "second", "third", "fourth"];
    for (family, ordinal) in families.iter().zip(ordinals) {
        sink.value_le(
            G,
            &format!("{ordinal} augmented family verifies as a dual"),
            1e-10,
            || Ok(alternate_dual_check(&lines, family, tol)?.residual),
        );
    }
    sink.value_le(
        G,
        "first vector file rebuilds the first family",
        1e-10,
        || {
            let built = construct_dual_by_augmentation(&lines, &inputs.augment_first, tol)?;
            let targets: Vec<Subspace> = families[0]
                .members()
                .iter()
                .map(|m| m.subspace().clone())
                .collect();
            spans_deviation(&built, &targets)
        },
    );
    sink.value_le(
        G,
        "third vector file rebuilds the third family",
        1e-10,
        || {
            let built = construct_dual_by_augmentation(&lines, &inputs.augment_third, tol)?;
            let targets: Vec<Subspace> = families[2]
                .members()
                .iter()
                .map(|m| m.subspace().clone())
                .collect();
            spans_deviation(&built, &targets)
        },
    );
    sink.flag(
        G,
        "basis-vector enumeration reproduces all four families",
        true,
        || {
            let list =
                enumerate_augmented_duals(&lines, &EnumerationStrategy::BasisVectors, 256, tol)?;
            Ok(families
                .iter()
                .all(|target| list.families.iter().any(|f| family_eq(f, target, tol))))
        },
    );
    sink.flag(G, "enumeration ends with the canonical dual", true, || {
        let list = enumerate_augmented_duals(&lines, &EnumerationStrategy::BasisVectors, 256, tol)?;
        let canonical = lines.canonical_dual(tol)?;
        Ok(list
            .families
            .last()
            .is_some_and(|f| family_eq(f, &canonical, tol)))
    });
}
