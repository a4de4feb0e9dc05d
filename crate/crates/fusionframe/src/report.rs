//! Analysis summary for a fusion family, with deterministic text and JSON
//! renderings.

use serde::Serialize;

use crate::fusion::FusionFamily;
use crate::subspaces::TolerancePolicy;

/// Scientific notation with 12 significant digits; the shared format for
/// every real number printed by the command-line tools.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Everything the analyze command reports about one family.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub name: String,
    pub dimension: usize,
    pub member_dims: Vec<usize>,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub is_fusion_frame: bool,
    /// Finite families are always Bessel; recorded for completeness.
    pub is_bessel: bool,
    pub is_riesz_basis: bool,
    pub is_orthonormal_basis: bool,
    pub riesz_lower: f64,
    pub riesz_upper: f64,
}

impl AnalysisReport {
    pub fn for_family(name: &str, family: &FusionFamily, tol: &TolerancePolicy) -> Self {
        let bounds = family.bounds();
        let riesz = family.riesz_report(tol);
        Self {
            name: name.to_string(),
            dimension: family.ambient_dim(),
            member_dims: family.member_dims(),
            lower_bound: bounds.lower,
            upper_bound: bounds.upper,
            is_fusion_frame: family.is_fusion_frame(tol),
            is_bessel: true,
            is_riesz_basis: riesz.is_riesz,
            is_orthonormal_basis: family.is_orthonormal_basis(tol),
            riesz_lower: riesz.lower,
            riesz_upper: riesz.upper,
        }
    }

    pub fn render_text(&self) -> String {
        let flag = |b: bool| if b { "yes" } else { "no" };
        let dims = self
            .member_dims
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let mut out = String::new();
        out.push_str(&format!("name: {}\n", self.name));
        out.push_str(&format!("dimension: {}\n", self.dimension));
        out.push_str(&format!("member dims: {dims}\n"));
        out.push_str(&format!("lower bound: {}\n", sig12(self.lower_bound)));
        out.push_str(&format!("upper bound: {}\n", sig12(self.upper_bound)));
        out.push_str(&format!("fusion frame: {}\n", flag(self.is_fusion_frame)));
        out.push_str(&format!("bessel: {}\n", flag(self.is_bessel)));
        out.push_str(&format!("riesz basis: {}\n", flag(self.is_riesz_basis)));
        out.push_str(&format!(
            "orthonormal basis: {}\n",
            flag(self.is_orthonormal_basis)
        ));
        out.push_str(&format!("riesz lower: {}\n", sig12(self.riesz_lower)));
        out.push_str(&format!("riesz upper: {}\n", sig12(self.riesz_upper)));
        out
    }
}
