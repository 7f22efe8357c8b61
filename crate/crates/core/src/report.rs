//! Invariant summaries of a Hopf algebra and, optionally, its R-matrix.

use serde::Serialize;

use crate::hopf::{antipode_order, hopf_ideal_report, is_cocommutative, jacobson_radical, HopfData};
use crate::scalars::CycScalar;
use crate::triangular::{r_matrix_rank, theorems_given, triangular_report, RMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangularSummary {
    pub quasitriangular: bool,
    pub triangular: bool,
    /// Support of the Drinfeld element `u` as `[index, coefficient]`.
    pub drinfeld_u: Vec<(usize, CycScalar)>,
    pub u_is_one: bool,
    pub u_squared_is_one: bool,
    pub u_grouplike: bool,
    pub s4_is_id: bool,
    pub s2_is_ad_u: bool,
    pub odd_dim_forces_u1_semisimple: bool,
    pub r_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub dim: usize,
    #[serde(rename = "super")]
    pub is_super: bool,
    pub semisimple: bool,
    pub radical_dim: usize,
    pub chevalley: bool,
    /// `None` when `S` has no order up to the search bound.
    pub antipode_order: Option<usize>,
    pub cocommutative: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangular: Option<TriangularSummary>,
}

impl AnalysisReport {
    /// Whether every structure-theorem check in the triangular block holds.
    /// Reports without an R-matrix pass vacuously.
    pub fn theorems_ok(&self) -> bool {
        self.triangular.as_ref().is_none_or(|t| {
            t.triangular
                && t.u_squared_is_one
                && t.u_grouplike
                && t.s4_is_id
                && t.s2_is_ad_u
                && t.odd_dim_forces_u1_semisimple
                && self.chevalley
        })
    }

    /// `key: value` lines in the same order as the JSON form.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("serializable");
        let mut out = String::new();
        fn walk(out: &mut String, prefix: &str, v: &serde_json::Value) {
            match v {
                serde_json::Value::Object(map) => {
                    for (k, x) in map {
                        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                        walk(out, &key, x);
                    }
                }
                other => out.push_str(&format!("{prefix}: {other}\n")),
            }
        }
        walk(&mut out, "", &value);
        out
    }
}

pub fn analyze(h: &HopfData, r: Option<&RMatrix>) -> AnalysisReport {
    let rad = jacobson_radical(h);
    let chevalley = rad.is_empty() || hopf_ideal_report(h, &rad).all_ok();
    let triangular = r.map(|r| {
        let tri = triangular_report(h, r);
        let thm = theorems_given(h, r, rad.is_empty(), chevalley);
        TriangularSummary {
            quasitriangular: tri.quasitriangular(),
            triangular: tri.triangular(),
            drinfeld_u: thm.u.iter().map(|(i, c)| (*i, c.clone())).collect(),
            u_is_one: thm.u_is_one,
            u_squared_is_one: thm.u_squared_is_one,
            u_grouplike: thm.u_grouplike,
            s4_is_id: thm.s4_is_id,
            s2_is_ad_u: thm.s2_is_ad_u,
            odd_dim_forces_u1_semisimple: thm.odd_dim_forces_u1_semisimple,
            r_rank: r_matrix_rank(r),
        }
    });
    AnalysisReport {
        dim: h.dim(),
        is_super: h.is_super(),
        semisimple: rad.is_empty(),
        radical_dim: rad.len(),
        chevalley,
        antipode_order: antipode_order(h).ok(),
        cocommutative: is_cocommutative(h),
        triangular,
    }
}
