//! Drinfeld twists: verification, twisting of Hopf structures and
//! R-matrices, and the semisimple triangular algebras `(k[G]^J, J₂₁⁻¹R_uJ)`.

use crate::constructions::bicharacter::{build_bicharacter_twist, Bicharacter};
use crate::constructions::builders::group_algebra;
use crate::constructions::group::{AbelianSubgroup, FiniteGroup};
use crate::error::{Error, Result};
use crate::hopf::HopfData;
use crate::tensor::{
    embed13_23_12, flip, tensor2_inv, tensor2_mul_unchecked, tensor3_mul, Algebra, Mat, Slot, Sparse, Tensor2,
};
use crate::triangular::r_u;

/// Counit normalization and the cocycle identity
/// `(Δ⊗id)(J)·(J⊗1) = (id⊗Δ)(J)·(1⊗J)`.
///
/// Fails with [`Error::NotInvertible`] when `J` is counit-normalized but has
/// no inverse in `H⊗H`.
pub fn verify_twist(h: &HopfData, j: &Tensor2) -> Result<bool> {
    if j.dim() != h.dim() {
        return Err(Error::Shape(format!("twist of dimension {} on an algebra of dimension {}", j.dim(), h.dim())));
    }
    let mut left = Sparse::new();
    let mut right = Sparse::new();
    for (a, b, c) in j.terms() {
        crate::tensor::axpy(&mut left, &(c * &h.counit()[a]), &h.basis(b));
        crate::tensor::axpy(&mut right, &(c * &h.counit()[b]), &h.basis(a));
    }
    if left != *h.unit() || right != *h.unit() {
        return Ok(false);
    }
    tensor2_inv(j, h)?;
    let j12 = embed13_23_12(j, Slot::S12, h);
    let j23 = embed13_23_12(j, Slot::S23, h);
    let lhs = tensor3_mul(&embed13_23_12(j, Slot::DeltaId, h), &j12, h)?;
    let rhs = tensor3_mul(&embed13_23_12(j, Slot::IdDelta, h), &j23, h)?;
    Ok(lhs == rhs)
}

/// The twisted Hopf algebra `H^J` (`Δ^J = J⁻¹ΔJ`, `S^J = Q⁻¹SQ`,
/// `Q = m(S⊗id)(J)`) and, if given, the twisted `R^J = J₂₁⁻¹RJ`.
pub fn apply_twist(h: &HopfData, j: &Tensor2, r: Option<&Tensor2>) -> Result<(HopfData, Option<Tensor2>)> {
    if h.is_super() {
        return Err(Error::Twist("twisting a super Hopf algebra is not supported".into()));
    }
    match verify_twist(h, j) {
        Ok(true) => {}
        Ok(false) => return Err(Error::Twist("J fails the counit or cocycle condition".into())),
        Err(Error::NotInvertible) => return Err(Error::Twist("J is not invertible".into())),
        Err(e) => return Err(e),
    }
    let j_inv = tensor2_inv(j, h)?;
    let comult: Vec<Tensor2> = h
        .comult()
        .iter()
        .map(|delta| tensor2_mul_unchecked(&tensor2_mul_unchecked(&j_inv, delta, h), j, h))
        .collect();
    let q = j.contract(h, |a| h.antipode_basis(a), |b| h.basis(b));
    let q_inv = h.inverse_of(&q).map_err(|_| Error::Twist("m(S⊗id)(J) is not invertible".into()))?;
    let d = h.dim();
    let mut antipode = Mat::zeros(d, d);
    for i in 0..d {
        let image = h.multiply(&h.multiply(&q_inv, &h.antipode_basis(i)), &q);
        for (k, c) in image {
            antipode.set(k, i, c);
        }
    }
    let twisted = h.with_coalgebra(comult, antipode);
    let r = r.map(|r| {
        let j21_inv = flip(&j_inv, h);
        tensor2_mul_unchecked(&tensor2_mul_unchecked(&j21_inv, r, h), j, h)
    });
    Ok((twisted, r))
}

/// `(k[G]^J, J₂₁⁻¹·R_u·J)` for the bicharacter twist `J` of `(A, β)`.
pub fn semisimple_triangular(
    group: &FiniteGroup,
    a: &AbelianSubgroup,
    beta: &Bicharacter,
    u: usize,
) -> Result<(HopfData, Tensor2)> {
    if u >= group.order() || !group.is_central(u) {
        return Err(Error::SeptupleInvariantViolation(format!("u = {u} is not central")));
    }
    if group.mul(u, u) != group.identity() {
        return Err(Error::SeptupleInvariantViolation(format!("u = {u} has order > 2")));
    }
    let h = group_algebra(group);
    let ru = r_u(&h, &h.basis(u))?;
    let j = build_bicharacter_twist(group, a, beta)?;
    let (twisted, r) = apply_twist(&h, &j, Some(&ru))?;
    Ok((twisted, r.expect("R was supplied")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::verify_hopf;
    use crate::scalars::CycScalar;

    fn c(n: i64) -> CycScalar {
        CycScalar::from_int(n)
    }

    #[test]
    fn unit_twist_changes_nothing() {
        let h = group_algebra(&FiniteGroup::symmetric3());
        let one = Tensor2::unit(&h);
        assert!(verify_twist(&h, &one).unwrap());
        let (t, r) = apply_twist(&h, &one, None).unwrap();
        assert_eq!(t, h);
        assert!(r.is_none());
    }

    #[test]
    fn unnormalized_j_is_rejected() {
        let h = group_algebra(&FiniteGroup::cyclic(2));
        let j = Tensor2::from_terms(2, [(0, 0, c(1)), (0, 1, c(1))]);
        assert!(!verify_twist(&h, &j).unwrap());
        assert!(matches!(apply_twist(&h, &j, None), Err(Error::Twist(_))));
        // 1⊗1 − E₋⊗E₋ is normalized but kills E₋⊗E₋
        let q = CycScalar::from_frac(1, 4);
        let singular = Tensor2::from_terms(2, [(0, 0, c(1) - q.clone()), (0, 1, q.clone()), (1, 0, q.clone()), (1, 1, -q)]);
        assert!(matches!(verify_twist(&h, &singular), Err(Error::NotInvertible)));
    }

    #[test]
    fn z2_twist_with_minus_one_pairing() {
        let g = FiniteGroup::cyclic(2);
        let h = group_algebra(&g);
        let a = AbelianSubgroup::whole(&g).unwrap();
        let beta = Bicharacter::new(vec![2], vec![vec![0, 0], vec![0, 1]]).unwrap();
        let j = build_bicharacter_twist(&g, &a, &beta).unwrap();
        // 1⊗1 − 2E₋⊗E₋ with E₋ = (1 − g)/2
        let half = CycScalar::from_frac(1, 2);
        let expect = Tensor2::from_terms(
            2,
            [(0, 0, half.clone()), (0, 1, half.clone()), (1, 0, half.clone()), (1, 1, -&half)],
        );
        assert_eq!(j, expect);
        assert!(verify_twist(&h, &j).unwrap());
        let (t, _) = apply_twist(&h, &j, None).unwrap();
        assert!(verify_hopf(&t).all_ok());
    }
}
