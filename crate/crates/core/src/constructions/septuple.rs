//! Triangular septuples `(G, W, A, Y, B, V, u)`, their validation, and the
//! construction for the stratum `Y = B = 0`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::constructions::bicharacter::{build_bicharacter_twist_in, Bicharacter};
use crate::constructions::builders::{grouplike_indices, modified_supergroup_algebra};
use crate::constructions::group::{AbelianSubgroup, FiniteGroup, GroupRep};
use crate::constructions::twist::apply_twist;
use crate::error::{Error, Result};
use crate::hopf::HopfData;
use crate::scalars::CycScalar;
use crate::tensor::{solve, Mat, Tensor2};

/// Septuple data. `V` is carried as a pairing on the characters of `A` plus a
/// declared dimension.
#[derive(Clone, Debug)]
pub struct Septuple {
    pub group: FiniteGroup,
    pub w: GroupRep,
    /// Elements of `A`.
    pub a_elements: Vec<usize>,
    /// Independent commuting generators fixing coordinates on `A`.
    pub a_generators: Vec<usize>,
    /// Basis of `Y ⊆ W`, one vector per entry.
    pub y_basis: Vec<Vec<CycScalar>>,
    /// Symmetric form on `Y` in the basis `y_basis`.
    pub b: Vec<Vec<CycScalar>>,
    pub beta: Bicharacter,
    pub v_dim: usize,
    pub u: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: &'static str,
    pub ok: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeptupleReport {
    pub checks: Vec<NamedCheck>,
}

impl SeptupleReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.ok).map(|c| c.name).collect()
    }
}

fn check(name: &'static str, witness: Option<String>) -> NamedCheck {
    NamedCheck { name, ok: witness.is_none(), witness }
}

impl Septuple {
    /// Coordinates on `A` from its generators, when they describe exactly `A`.
    pub fn abelian_subgroup(&self) -> Result<AbelianSubgroup> {
        let sub = if self.a_generators.is_empty() {
            AbelianSubgroup::trivial(&self.group)
        } else {
            AbelianSubgroup::from_generators(&self.group, &self.a_generators)?
        };
        let got: BTreeSet<usize> = sub.elements().iter().copied().collect();
        let want: BTreeSet<usize> = self.a_elements.iter().copied().collect();
        if got != want {
            return Err(Error::Group(format!("generators {:?} do not generate A", self.a_generators)));
        }
        Ok(sub)
    }

    fn b_is_zero(&self) -> bool {
        self.b.iter().flatten().all(|x| x.is_zero())
    }
}

/// Restriction of `ρ(a)` to `Y` in the basis `y_basis`, if `Y` is stable.
fn restrict(rho: &Mat, y: &[Vec<CycScalar>]) -> Option<Mat> {
    let k = y.len();
    let basis = Mat::from_columns(y, rho.rows());
    let mut out = Mat::zeros(k, k);
    for (j, v) in y.iter().enumerate() {
        let image = rho.apply(v);
        let coeffs = solve(&basis, &image)?;
        for (i, c) in coeffs.into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    Some(out)
}

/// Checks every septuple invariant and reports each one with a witness.
pub fn validate_septuple(s: &Septuple) -> SeptupleReport {
    let g = &s.group;
    let n = g.order();
    let deg = s.w.degree();
    let mut checks = Vec::new();

    let in_range = s.a_elements.iter().all(|&a| a < n) && s.u < n;
    checks.push(check("indices_in_range", (!in_range).then(|| "element index out of range".to_string())));
    if !in_range {
        return SeptupleReport { checks };
    }

    let a_subgroup = s.a_elements.contains(&g.identity()) && g.is_subgroup(&s.a_elements);
    checks.push(check("A_subgroup", (!a_subgroup).then(|| format!("{:?} is not a subgroup", s.a_elements))));

    let sub = s.abelian_subgroup();
    checks.push(check("A_coordinates", sub.as_ref().err().map(|e| e.to_string())));

    let shapes_ok = s.y_basis.iter().all(|v| v.len() == deg)
        && s.b.len() == s.y_basis.len()
        && s.b.iter().all(|r| r.len() == s.y_basis.len());
    checks.push(check("shapes", (!shapes_ok).then(|| "Y or B has the wrong shape".to_string())));

    let k = s.y_basis.len();
    let y_independent = shapes_ok && (k == 0 || Mat::from_columns(&s.y_basis, deg).rank() == k);
    checks.push(check("Y_basis_independent", (!y_independent).then(|| "Y basis is dependent".to_string())));

    let mut restricted = Vec::new();
    let mut y_witness = None;
    if y_independent {
        for &a in &s.a_elements {
            match restrict(s.w.matrix(a), &s.y_basis) {
                Some(m) => restricted.push(m),
                None => {
                    y_witness = Some(format!("ρ({a})Y ⊄ Y"));
                    break;
                }
            }
        }
    } else {
        y_witness = Some("Y basis unusable".into());
    }
    checks.push(check("Y_A_invariant", y_witness.clone()));

    let b = if shapes_ok { Mat::from_rows(s.b.clone()).ok() } else { None };
    let symmetric = b.as_ref().map(|b| *b == b.transpose()).unwrap_or(false) || (shapes_ok && k == 0);
    checks.push(check("B_symmetric", (!symmetric).then(|| "B ≠ Bᵀ".to_string())));
    let invariant = if k == 0 {
        shapes_ok
    } else {
        y_witness.is_none()
            && b.as_ref().is_some_and(|b| {
                restricted.iter().all(|m| m.mul(b).and_then(|mb| mb.mul(&m.transpose())).map(|x| x == *b).unwrap_or(false))
            })
    };
    checks.push(check("B_A_invariant", (!invariant).then(|| "ρ(a)|_Y B ρ(a)|_Yᵀ ≠ B".to_string())));
    let invertible = k == 0 || b.as_ref().is_some_and(|b| b.rank() == k);
    checks.push(check("B_invertible", (!invertible).then(|| "B is singular".to_string())));

    let a_order = s.a_elements.iter().collect::<BTreeSet<_>>().len();
    let square = s.v_dim * s.v_dim == a_order;
    checks.push(check(
        "V_dim_squared",
        (!square).then(|| format!("dim V = {} but |A| = {a_order}", s.v_dim)),
    ));

    let pairing = match &sub {
        Ok(sub) if sub.factors() != s.beta.factors() => {
            Some(format!("pairing factors {:?} differ from A factors {:?}", s.beta.factors(), sub.factors()))
        }
        Ok(_) if !s.beta.is_nondegenerate() => Some("pairing is degenerate".to_string()),
        Ok(_) => None,
        Err(_) => Some("A has no coordinates".to_string()),
    };
    checks.push(check("V_pairing_nondegenerate", pairing));

    checks.push(check("u_central", (!g.is_central(s.u)).then(|| format!("u = {} is not central", s.u))));
    checks.push(check(
        "u_order_le_2",
        (g.mul(s.u, s.u) != g.identity()).then(|| format!("u = {} has order > 2", s.u)),
    ));
    checks.push(check(
        "u_acts_by_minus_one",
        (!s.w.acts_by_minus_one(s.u)).then(|| format!("ρ_W({}) ≠ −1", s.u)),
    ));
    SeptupleReport { checks }
}

/// `H(G, W, A, 0, 0, V, u)`: the modified supergroup algebra of `(G, W, u)`
/// twisted by the pairing on `A`, together with its R-matrix.
pub fn septuple_pipeline(s: &Septuple) -> Result<(HopfData, Tensor2)> {
    if !s.y_basis.is_empty() || !s.b_is_zero() {
        return Err(Error::UnsupportedStratum(
            "septuples with Y ≠ 0 or B ≠ 0 are not constructed".into(),
        ));
    }
    let report = validate_septuple(s);
    if !report.all_ok() {
        return Err(Error::SeptupleInvariantViolation(report.failures().join(", ")));
    }
    let sub = s.abelian_subgroup()?;
    let (h, ru) = modified_supergroup_algebra(&s.group, &s.w, s.u)?;
    let j = build_bicharacter_twist_in(h.dim(), &grouplike_indices(&s.group, s.w.degree()), &sub, &s.beta)?;
    let (twisted, r) = apply_twist(&h, &j, Some(&ru))?;
    Ok((twisted, r.expect("R was supplied")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::group::named_group;

    fn degenerate(group: FiniteGroup, u: usize) -> Septuple {
        let w = GroupRep::zero(&group);
        let a = AbelianSubgroup::trivial(&group);
        Septuple {
            beta: Bicharacter::trivial(a.factors()),
            a_elements: a.elements().to_vec(),
            a_generators: vec![],
            w,
            y_basis: vec![],
            b: vec![],
            v_dim: 1,
            u,
            group,
        }
    }

    #[test]
    fn degenerate_quadruple_is_valid() {
        let s = degenerate(FiniteGroup::cyclic(2), 0);
        assert!(validate_septuple(&s).all_ok());
    }

    #[test]
    fn dimension_of_v_must_square_to_a() {
        let g = named_group("Z2xZ2").unwrap();
        let mut s = degenerate(g.clone(), 0);
        let a = AbelianSubgroup::whole(&g).unwrap();
        s.a_elements = a.elements().to_vec();
        s.a_generators = a.generators().to_vec();
        s.beta = Bicharacter::from_generator_exponents(&[2, 2], &[vec![0, 1], vec![0, 0]]).unwrap();
        s.v_dim = 2;
        assert!(validate_septuple(&s).all_ok());

        let z2 = FiniteGroup::cyclic(2);
        let mut t = degenerate(z2.clone(), 0);
        t.a_elements = vec![0, 1];
        t.a_generators = vec![1];
        t.beta = Bicharacter::trivial(&[2]);
        let report = validate_septuple(&t);
        assert!(report.failures().contains(&"V_dim_squared"));
    }

    #[test]
    fn nonzero_b_is_an_unsupported_stratum() {
        let g = FiniteGroup::cyclic(2);
        let mut s = degenerate(g.clone(), 1);
        s.w = GroupRep::from_signs(&g, &[vec![1, -1]]).unwrap();
        s.y_basis = vec![vec![CycScalar::one()]];
        s.b = vec![vec![CycScalar::one()]];
        assert!(matches!(septuple_pipeline(&s), Err(Error::UnsupportedStratum(_))));
    }
}
