//! The built-in catalog of triangular Hopf algebras and its batch
//! verification into an output tree.
//!
//! Parameters per group `G`: a central element `u` with `u² = 1`; a sum `V`
//! of at most two sign characters on which `u` acts by `-1`; and either the
//! trivial subgroup or a subgroup `A ≅ Z_n × Z_n` with a pairing whose skew
//! form is nondegenerate. `V = 0` instances are `(k[G]^J, J₂₁⁻¹R_uJ)`, the
//! others come from the septuple construction.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::bicharacter::{build_bicharacter_twist_in, Bicharacter};
use crate::constructions::builders::{group_algebra, grouplike_indices, modified_supergroup_algebra};
use crate::constructions::group::{named_group, square_abelian_subgroups, AbelianSubgroup, FiniteGroup, GroupRep};
use crate::constructions::septuple::{septuple_pipeline, Septuple};
use crate::constructions::twist::semisimple_triangular;
use crate::error::{Error, Result};
use crate::hopf::{verify_hopf, HopfData};
use crate::report::{analyze, AnalysisReport};
use crate::tensor::Tensor2;
use crate::triangular::{r_u, RMatrix};
use crate::wire::{bicharacter_to_value, hopf_to_json, tensor_to_json, to_canonical_json, write_atomic};

/// Group names in catalog order.
pub const CATALOG: &[&str] = &[
    "Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z11", "Z12", "Z13", "Z14", "Z15", "Z16", "Z2xZ2",
    "Z2xZ2xZ2", "Z4xZ2", "Z3xZ3", "S3", "D4", "Q8",
];

pub fn catalog_groups(max_order: usize) -> Vec<(&'static str, FiniteGroup)> {
    CATALOG
        .iter()
        .map(|&name| (name, named_group(name).expect("catalog names are built in")))
        .filter(|(_, g)| g.order() <= max_order)
        .collect()
}

/// A twist datum: subgroup `A` (numbered among the square subgroups of `G`)
/// with the pairing `β(e_1, e_2) = ζ_n^k`.
#[derive(Clone, Debug)]
pub struct TwistChoice {
    pub index: usize,
    pub subgroup: AbelianSubgroup,
    pub k: i64,
    pub beta: Bicharacter,
}

#[derive(Clone, Debug)]
pub struct InstanceSpec {
    pub id: String,
    pub group_name: &'static str,
    pub group: FiniteGroup,
    pub u: usize,
    /// Indices into `group.sign_characters()`, nondecreasing.
    pub v: Vec<usize>,
    pub twist: Option<TwistChoice>,
}

fn units_mod(n: i64) -> impl Iterator<Item = i64> {
    (1..n).filter(move |&k| num_integer::gcd(k, n) == 1)
}

/// All instances over groups of order at most `max_order`, in a fixed order.
pub fn catalog(max_order: usize) -> Vec<InstanceSpec> {
    let mut out = Vec::new();
    for (name, g) in catalog_groups(max_order) {
        let chars = g.sign_characters();
        let mut twists = vec![None];
        for (index, sub) in square_abelian_subgroups(&g).into_iter().enumerate() {
            let n = sub.factors()[0] as i64;
            for k in units_mod(n) {
                let beta = Bicharacter::from_generator_exponents(sub.factors(), &[vec![0, k], vec![0, 0]])
                    .expect("generator exponents define a pairing");
                debug_assert!(beta.is_nondegenerate());
                twists.push(Some(TwistChoice { index, subgroup: sub.clone(), k, beta }));
            }
        }
        for u in g.central_involutions() {
            let odd: Vec<usize> = (0..chars.len()).filter(|&c| chars[c][u] == -1).collect();
            let mut vs: Vec<Vec<usize>> = vec![vec![]];
            vs.extend(odd.iter().map(|&c| vec![c]));
            for (i, &a) in odd.iter().enumerate() {
                vs.extend(odd[i..].iter().map(|&b| vec![a, b]));
            }
            for v in &vs {
                for t in &twists {
                    let v_str = if v.is_empty() {
                        "0".to_string()
                    } else {
                        v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(".")
                    };
                    let a_str = t.as_ref().map_or("0".to_string(), |t| format!("{}k{}", t.index + 1, t.k));
                    out.push(InstanceSpec {
                        id: format!("{name}-u{u}-v{v_str}-a{a_str}"),
                        group_name: name,
                        group: g.clone(),
                        u,
                        v: v.clone(),
                        twist: t.clone(),
                    });
                }
            }
        }
    }
    out
}

impl InstanceSpec {
    pub fn dim(&self) -> usize {
        self.group.order() << self.v.len()
    }

    pub fn rep(&self) -> GroupRep {
        let chars = self.group.sign_characters();
        let selected: Vec<Vec<i8>> = self.v.iter().map(|&c| chars[c].clone()).collect();
        GroupRep::from_signs(&self.group, &selected).expect("sign characters are representations")
    }

    /// The algebra before twisting, with `R_u`.
    pub fn untwisted(&self) -> Result<(HopfData, Tensor2)> {
        if self.v.is_empty() {
            let h = group_algebra(&self.group);
            let r = r_u(&h, &h.basis(self.u))?;
            Ok((h, r))
        } else {
            modified_supergroup_algebra(&self.group, &self.rep(), self.u)
        }
    }

    /// The twist `J` placed on the group-likes of the untwisted algebra.
    pub fn twist_element(&self) -> Result<Option<Tensor2>> {
        self.twist
            .as_ref()
            .map(|t| {
                build_bicharacter_twist_in(
                    self.dim(),
                    &grouplike_indices(&self.group, self.v.len()),
                    &t.subgroup,
                    &t.beta,
                )
            })
            .transpose()
    }

    fn subgroup_and_pairing(&self) -> (AbelianSubgroup, Bicharacter) {
        match &self.twist {
            Some(t) => (t.subgroup.clone(), t.beta.clone()),
            None => {
                let a = AbelianSubgroup::trivial(&self.group);
                let b = Bicharacter::trivial(a.factors());
                (a, b)
            }
        }
    }

    pub fn septuple(&self) -> Septuple {
        let (a, beta) = self.subgroup_and_pairing();
        let v_dim = (a.order() as f64).sqrt().round() as usize;
        Septuple {
            group: self.group.clone(),
            w: self.rep(),
            a_elements: a.elements().to_vec(),
            a_generators: a.generators().to_vec(),
            y_basis: vec![],
            b: vec![],
            beta,
            v_dim,
            u: self.u,
        }
    }

    /// The triangular Hopf algebra of this instance.
    pub fn build(&self) -> Result<(HopfData, Tensor2)> {
        if self.v.is_empty() {
            let (a, beta) = self.subgroup_and_pairing();
            semisimple_triangular(&self.group, &a, &beta, self.u)
        } else {
            septuple_pipeline(&self.septuple())
        }
    }

    fn parameters(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group_name,
            "u": self.u,
            "V_characters": self.v,
            "A": self.twist.as_ref().map(|t| serde_json::json!({
                "elements": t.subgroup.elements(),
                "generators": t.subgroup.generators(),
                "pairing": bicharacter_to_value(&t.beta),
            })),
        })
    }
}

/// Verification outcome of one instance.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceOutcome {
    pub id: String,
    pub dim: usize,
    pub axioms_ok: bool,
    pub first_failure: Option<(String, Vec<usize>)>,
    pub report: AnalysisReport,
}

impl InstanceOutcome {
    pub fn passed(&self) -> bool {
        self.axioms_ok && self.report.theorems_ok()
    }

    /// Coarse invariants; equal fingerprints do not imply isomorphism.
    pub fn fingerprint(&self) -> String {
        let r = &self.report;
        let t = r.triangular.as_ref();
        format!(
            "d{}-rad{}-S{}-rank{}-u{}",
            r.dim,
            r.radical_dim,
            r.antipode_order.map_or("?".into(), |o| o.to_string()),
            t.map_or(0, |t| t.r_rank),
            t.map_or("?", |t| if t.u_is_one { "1" } else { "g" }),
        )
    }
}

/// Builds, verifies and analyzes one instance.
pub fn run_instance(spec: &InstanceSpec) -> Result<(HopfData, Tensor2, InstanceOutcome)> {
    let (h, r) = spec.build()?;
    let axioms = verify_hopf(&h);
    let rm = RMatrix::new(&h, r.clone())?;
    let report = analyze(&h, Some(&rm));
    let outcome = InstanceOutcome {
        id: spec.id.clone(),
        dim: h.dim(),
        axioms_ok: axioms.all_ok(),
        first_failure: axioms.first_failure().map(|(n, w)| (n.to_string(), w.to_vec())),
        report,
    };
    Ok((h, r, outcome))
}

#[derive(Clone, Debug)]
pub struct AtlasConfig {
    pub max_order: usize,
    pub workers: usize,
    pub max_dim: usize,
}

#[derive(Clone, Debug)]
pub struct AtlasSummary {
    pub outcomes: Vec<InstanceOutcome>,
    pub skipped: Vec<String>,
}

impl AtlasSummary {
    pub fn failures(&self) -> Vec<&str> {
        self.outcomes.iter().filter(|o| !o.passed()).map(|o| o.id.as_str()).collect()
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Format(format!("{}: {e}", path.display()))
}

/// Writes `<out>/<id>/{hopf.json, R.json, report.json}` per instance and
/// `<out>/index.json`. Output is independent of the worker count.
pub fn run_atlas(config: &AtlasConfig, out: &Path) -> Result<AtlasSummary> {
    let specs = catalog(config.max_order);
    let (kept, skipped): (Vec<_>, Vec<_>) = specs.into_iter().partition(|s| s.dim() <= config.max_dim);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| Error::Format(e.to_string()))?;
    let outcomes: Vec<Result<InstanceOutcome>> = pool.install(|| {
        kept.par_iter()
            .map(|spec| {
                let (h, r, outcome) = run_instance(spec)?;
                let dir: PathBuf = out.join(&spec.id);
                let report = serde_json::json!({
                    "id": spec.id,
                    "parameters": spec.parameters(),
                    "axioms_ok": outcome.axioms_ok,
                    "first_failure": outcome.first_failure,
                    "analysis": outcome.report,
                    "passed": outcome.passed(),
                });
                for (name, text) in [
                    ("hopf.json", hopf_to_json(&h)),
                    ("R.json", tensor_to_json(&r)),
                    ("report.json", to_canonical_json(&report)),
                ] {
                    let path = dir.join(name);
                    write_atomic(&path, &text).map_err(|e| io_err(&path, e))?;
                }
                Ok(outcome)
            })
            .collect()
    });
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    let summary = AtlasSummary { outcomes, skipped: skipped.into_iter().map(|s| s.id).collect() };
    let index = serde_json::json!({
        "max_order": config.max_order,
        "max_dim": config.max_dim,
        "count": summary.outcomes.len(),
        "failures": summary.failures(),
        "skipped": summary.skipped,
        "instances": summary.outcomes.iter().map(|o| serde_json::json!({
            "id": o.id,
            "dim": o.dim,
            "passed": o.passed(),
            "fingerprint": o.fingerprint(),
        })).collect::<Vec<_>>(),
    });
    let path = out.join("index.json");
    write_atomic(&path, &to_canonical_json(&index)).map_err(|e| io_err(&path, e))?;
    Ok(summary)
}
