//! Group algebras, exterior algebras, supergroup algebras `k[G] ⋉ ΛV` and
//! their modifications by a central element `u`.
//!
//! Basis of `k[G] ⋉ ΛV`: `g · v_S` at index `g · 2^n + S`, with `S ⊆ {0..n}`
//! a bitmask (group-major, subset-minor).

use crate::constructions::group::{FiniteGroup, GroupRep};
use crate::error::{Error, Result};
use crate::hopf::HopfData;
use crate::scalars::CycScalar;
use crate::tensor::{add_term, tensor2_mul_unchecked, Algebra, Mat, Sparse, Tensor2};
use crate::triangular::r_u;

/// Sign of `v_S ∧ v_T = ± v_{S∪T}` for disjoint bitmasks.
pub(crate) fn wedge_sign_negative(s: u32, t: u32) -> bool {
    // pairs (a ∈ S, b ∈ T) with a > b
    let mut count = 0;
    let mut rest = t;
    while rest != 0 {
        let b = rest.trailing_zeros();
        count += (s >> (b + 1)).count_ones();
        rest &= rest - 1;
    }
    count % 2 == 1
}

fn wedge(x: &Sparse, y: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (&s, a) in x {
        for (&t, b) in y {
            if s & t != 0 {
                continue;
            }
            let c = a * b;
            let c = if wedge_sign_negative(s as u32, t as u32) { -c } else { c };
            add_term(&mut out, s | t, &c);
        }
    }
    out
}

fn one() -> CycScalar {
    CycScalar::one()
}

/// `k[G]` with `Δ(g) = g⊗g`, `ε(g) = 1`, `S(g) = g⁻¹`.
pub fn group_algebra(g: &FiniteGroup) -> HopfData {
    let n = g.order();
    let e = |i: usize| Sparse::from([(i, one())]);
    let mult = (0..n * n).map(|ij| e(g.mul(ij / n, ij % n))).collect();
    let comult = (0..n).map(|i| Tensor2::from_terms(n, [(i, i, one())])).collect();
    let mut antipode = Mat::zeros(n, n);
    for i in 0..n {
        antipode.set(g.inv(i), i, one());
    }
    HopfData::new(n, false, vec![0; n], e(g.identity()), mult, vec![one(); n], comult, antipode)
        .expect("group algebra is well-formed")
}

/// The exterior algebra `ΛV`, `dim V = n`, as a super Hopf algebra with
/// primitive odd generators.
pub fn exterior_algebra(n: usize) -> HopfData {
    let d = 1usize << n;
    let mut mult = vec![Sparse::new(); d * d];
    for s in 0..d {
        for t in 0..d {
            if s & t == 0 {
                let c = if wedge_sign_negative(s as u32, t as u32) { -one() } else { one() };
                mult[s * d + t].insert(s | t, c);
            }
        }
    }
    let parity = (0..d).map(|s| (s.count_ones() % 2) as u8).collect();
    // Δ(v_S) = Σ_{T ⊆ S} ±v_T ⊗ v_{S∖T}, the sign being that of v_T ∧ v_{S∖T}
    let comult = (0..d)
        .map(|s| {
            let mut t = Tensor2::zero(d);
            let mut sub = s;
            loop {
                let rest = s & !sub;
                let c = if wedge_sign_negative(sub as u32, rest as u32) { -one() } else { one() };
                t.add_term(sub, rest, &c);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & s;
            }
            t
        })
        .collect();
    let mut antipode = Mat::zeros(d, d);
    for s in 0..d {
        antipode.set(s, s, CycScalar::from_int(if s.count_ones() % 2 == 1 { -1 } else { 1 }));
    }
    let mut counit = vec![CycScalar::zero(); d];
    counit[0] = one();
    HopfData::new(d, true, parity, Sparse::from([(0, one())]), mult, counit, comult, antipode)
        .expect("exterior algebra is well-formed")
}

/// Basis index of the group-like `g` inside `k[G] ⋉ ΛV` with `dim V = n`.
pub fn grouplike_index(g: usize, n: usize) -> usize {
    g << n
}

/// Group-like basis indices of every group element, for placing twists.
pub fn grouplike_indices(group: &FiniteGroup, n: usize) -> Vec<usize> {
    (0..group.order()).map(|g| grouplike_index(g, n)).collect()
}

/// Algebra structure of `k[G] ⋉ ΛV` with placeholder coalgebra maps.
fn smash_product(group: &FiniteGroup, rep: &GroupRep, is_super: bool) -> Result<HopfData> {
    if rep.matrices().len() != group.order() {
        return Err(Error::Shape(format!(
            "representation has {} matrices, group has order {}",
            rep.matrices().len(),
            group.order()
        )));
    }
    let n = rep.degree();
    if n > 16 {
        return Err(Error::Shape("representation degree above 16".into()));
    }
    let subsets = 1usize << n;
    let d = group.order() * subsets;
    // action[k][S] = ρ(k)(v_S) in ΛV
    let action: Vec<Vec<Sparse>> = (0..group.order())
        .map(|k| {
            let m = rep.matrix(k);
            (0..subsets)
                .map(|s| {
                    let mut acc = Sparse::from([(0usize, one())]);
                    for i in (0..n).filter(|i| s >> i & 1 == 1) {
                        let image: Sparse = (0..n)
                            .filter(|&r| !m.get(r, i).is_zero())
                            .map(|r| (1usize << r, m.get(r, i).clone()))
                            .collect();
                        acc = wedge(&acc, &image);
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let mut mult = vec![Sparse::new(); d * d];
    for g in 0..group.order() {
        for s in 0..subsets {
            let left = g * subsets + s;
            for h in 0..group.order() {
                // v_S h = h ρ(h⁻¹)(v_S)
                let moved = &action[group.inv(h)][s];
                let gh = group.mul(g, h);
                for t in 0..subsets {
                    let prod = wedge(moved, &Sparse::from([(t, one())]));
                    let slot = &mut mult[left * d + h * subsets + t];
                    for (r, c) in prod {
                        add_term(slot, gh * subsets + r, &c);
                    }
                }
            }
        }
    }
    let parity = (0..d)
        .map(|i| if is_super { ((i % subsets).count_ones() % 2) as u8 } else { 0 })
        .collect();
    let mut counit = vec![CycScalar::zero(); d];
    for g in 0..group.order() {
        counit[g * subsets] = one();
    }
    let unit = Sparse::from([(group.identity() * subsets, one())]);
    HopfData::new(d, is_super, parity, unit, mult, counit, vec![Tensor2::zero(d); d], Mat::identity(d))
}

/// Extends `Δ` multiplicatively and `S` anti-multiplicatively (with Koszul
/// signs over a super algebra) from generators along the basis words
/// `g · v_{s_1} ⋯ v_{s_k}`.
fn extend_from_generators(
    alg: &HopfData,
    group: &FiniteGroup,
    n: usize,
    gen_comult: impl Fn(usize) -> Tensor2,
    gen_antipode: impl Fn(usize) -> Sparse,
) -> HopfData {
    let subsets = 1usize << n;
    let d = alg.dim();
    let mut comult = Vec::with_capacity(d);
    let mut antipode = Mat::zeros(d, d);
    for b in 0..d {
        let (g, s) = (b / subsets, b % subsets);
        let mut word = vec![g * subsets];
        word.extend((0..n).filter(|i| s >> i & 1 == 1).map(|i| group.identity() * subsets + (1 << i)));
        let mut delta = Tensor2::unit(alg);
        for &w in &word {
            delta = tensor2_mul_unchecked(&delta, &gen_comult(w), alg);
        }
        comult.push(delta);
        let mut image = alg.unit().clone();
        for &w in word.iter().rev() {
            image = alg.multiply(&image, &gen_antipode(w));
        }
        let odd = word.iter().filter(|&&w| alg.parity(w) == 1).count();
        if alg.is_super() && (odd * odd.saturating_sub(1) / 2) % 2 == 1 {
            image = crate::tensor::scale_map(&image, &CycScalar::from_int(-1));
        }
        for (i, c) in image {
            antipode.set(i, b, c);
        }
    }
    alg.with_coalgebra(comult, antipode)
}

/// The supergroup algebra `k[G] ⋉ ΛV`: group-likes even, `v ∈ V` odd primitive,
/// `g v g⁻¹ = ρ(g)v`.
pub fn supergroup_algebra(group: &FiniteGroup, rep: &GroupRep) -> Result<HopfData> {
    let alg = smash_product(group, rep, true)?;
    let n = rep.degree();
    let subsets = 1usize << n;
    let d = alg.dim();
    let unit_idx = group.identity() * subsets;
    Ok(extend_from_generators(
        &alg,
        group,
        n,
        |w| {
            if w % subsets == 0 {
                Tensor2::from_terms(d, [(w, w, one())])
            } else {
                Tensor2::from_terms(d, [(w, unit_idx, one()), (unit_idx, w, one())])
            }
        },
        |w| {
            if w % subsets == 0 {
                Sparse::from([(group.inv(w / subsets) * subsets, one())])
            } else {
                Sparse::from([(w, -one())])
            }
        },
    ))
}

/// Checks that `u` is a central element of order ≤ 2 acting by `-1` on `V`.
pub fn check_modification_element(group: &FiniteGroup, rep: &GroupRep, u: usize) -> Result<()> {
    if u >= group.order() {
        return Err(Error::SeptupleInvariantViolation(format!("u = {u} is not a group element")));
    }
    if !group.is_central(u) {
        return Err(Error::SeptupleInvariantViolation(format!("u = {u} is not central")));
    }
    if group.mul(u, u) != group.identity() {
        return Err(Error::SeptupleInvariantViolation(format!("u = {u} has order > 2")));
    }
    if !rep.acts_by_minus_one(u) {
        return Err(Error::SeptupleInvariantViolation(format!("u = {u} does not act by -1 on V")));
    }
    Ok(())
}

/// The modified supergroup algebra: the underlying algebra of `k[G] ⋉ ΛV`
/// with ordinary coalgebra `Δ(v) = v⊗1 + u⊗v`, `ε(v) = 0`, `S(v) = -uv`,
/// together with `R_u = ½(1⊗1 + 1⊗u + u⊗1 − u⊗u)`.
pub fn modified_supergroup_algebra(group: &FiniteGroup, rep: &GroupRep, u: usize) -> Result<(HopfData, Tensor2)> {
    check_modification_element(group, rep, u)?;
    let alg = smash_product(group, rep, false)?;
    let n = rep.degree();
    let subsets = 1usize << n;
    let d = alg.dim();
    let unit_idx = group.identity() * subsets;
    let u_idx = u * subsets;
    let h = extend_from_generators(
        &alg,
        group,
        n,
        |w| {
            if w % subsets == 0 {
                Tensor2::from_terms(d, [(w, w, one())])
            } else {
                Tensor2::from_terms(d, [(w, unit_idx, one()), (u_idx, w, one())])
            }
        },
        |w| {
            if w % subsets == 0 {
                Sparse::from([(group.inv(w / subsets) * subsets, one())])
            } else {
                // -u·v_i, and u·v_i is the basis vector (u, {i})
                Sparse::from([(u_idx + w % subsets, -one())])
            }
        },
    );
    let r = r_u(&h, &h.basis(u_idx))?;
    Ok((h, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::verify_hopf;

    #[test]
    fn wedge_signs() {
        assert!(!wedge_sign_negative(0b01, 0b10));
        assert!(wedge_sign_negative(0b10, 0b01));
        // v_2 ∧ v_0 v_1: two transpositions
        assert!(!wedge_sign_negative(0b100, 0b011));
    }

    #[test]
    fn exterior_two_coproduct_of_top_form() {
        let h = exterior_algebra(2);
        let expect = Tensor2::from_terms(
            4,
            [(3, 0, one()), (1, 2, one()), (2, 1, -one()), (0, 3, one())],
        );
        assert_eq!(h.comult()[3], expect);
        assert!(verify_hopf(&h).all_ok());
    }

    #[test]
    fn modification_requires_central_involution_acting_by_minus_one() {
        let z2 = FiniteGroup::cyclic(2);
        let sign = GroupRep::from_signs(&z2, &[vec![1, -1]]).unwrap();
        assert!(matches!(modified_supergroup_algebra(&z2, &sign, 0), Err(Error::SeptupleInvariantViolation(_))));
        let z4 = FiniteGroup::cyclic(4);
        let triv = GroupRep::zero(&z4);
        assert!(matches!(modified_supergroup_algebra(&z4, &triv, 1), Err(Error::SeptupleInvariantViolation(_))));
        let s3 = FiniteGroup::symmetric3();
        let z = GroupRep::zero(&s3);
        assert!(matches!(modified_supergroup_algebra(&s3, &z, 1), Err(Error::SeptupleInvariantViolation(_))));
    }
}
