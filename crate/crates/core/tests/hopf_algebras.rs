use trihopf::constructions::{
    exterior_algebra, group_algebra, modified_supergroup_algebra, semisimple_triangular, supergroup_algebra,
    AbelianSubgroup, Bicharacter, FiniteGroup, GroupRep,
};
use trihopf::hopf::{
    antipode_order, dual_hopf, hopf_ideal_report, is_chevalley, is_cocommutative, is_commutative, is_semisimple,
    jacobson_radical, verify_hopf,
};
use trihopf::tensor::{embed13_23_12, flip, span_rank, tensor2_inv, tensor2_mul, Algebra, Slot, Tensor3};
use trihopf::triangular::r_u;
use trihopf::{CycScalar, HopfData, Tensor2};

fn c(n: i64) -> CycScalar {
    CycScalar::from_int(n)
}

fn sweedler() -> HopfData {
    let z2 = FiniteGroup::cyclic(2);
    let sign = GroupRep::from_signs(&z2, &[vec![1, -1]]).unwrap();
    modified_supergroup_algebra(&z2, &sign, 1).unwrap().0
}

fn kz2() -> HopfData {
    group_algebra(&FiniteGroup::cyclic(2))
}

fn dense(v: &[(usize, i64)], d: usize) -> Vec<CycScalar> {
    let mut out = vec![c(0); d];
    for &(i, x) in v {
        out[i] = c(x);
    }
    out
}

#[test]
fn tensor_products_in_kz2() {
    let h = kz2();
    let one = Tensor2::unit(&h);
    let gg = Tensor2::from_terms(2, [(1, 1, c(1))]);
    assert_eq!(tensor2_mul(&one, &gg, &h).unwrap(), gg);
    assert_eq!(tensor2_mul(&gg, &gg, &h).unwrap(), one);
    assert_eq!(tensor2_inv(&gg, &h).unwrap(), gg);
    assert_eq!(tensor2_inv(&one, &h).unwrap(), one);

    let ru = r_u(&h, &h.basis(1)).unwrap();
    assert_eq!(tensor2_mul(&ru, &ru, &h).unwrap(), one);
    assert_eq!(tensor2_inv(&ru, &h).unwrap(), ru);
}

#[test]
fn flips() {
    let h = kz2();
    let e12 = Tensor2::from_terms(2, [(0, 1, c(1))]);
    assert_eq!(flip(&e12, &h), Tensor2::from_terms(2, [(1, 0, c(1))]));
    let sym = Tensor2::from_terms(2, [(0, 1, c(3)), (1, 0, c(3)), (1, 1, c(-1))]);
    assert_eq!(flip(&sym, &h), sym);
    let any = Tensor2::from_terms(2, [(0, 1, c(2)), (1, 1, c(5)), (0, 0, CycScalar::from_frac(1, 3))]);
    assert_eq!(flip(&flip(&any, &h), &h), any);
}

#[test]
fn odd_flip_picks_up_a_sign() {
    let h = exterior_algebra(1);
    let vv = Tensor2::from_terms(2, [(1, 1, c(1))]);
    assert_eq!(flip(&vv, &h), vv.scale(&c(-1)));
}

#[test]
fn slot_embeddings() {
    let h = kz2();
    let one = Tensor2::unit(&h);
    let mut one3 = Tensor3::zero(2);
    one3.add_term(0, 0, 0, &c(1));
    assert_eq!(embed13_23_12(&one, Slot::S13, &h), one3);
    assert_eq!(embed13_23_12(&one, Slot::DeltaId, &h), one3);

    let gg = Tensor2::from_terms(2, [(1, 1, c(1))]);
    let mut g1g = Tensor3::zero(2);
    g1g.add_term(1, 0, 1, &c(1));
    assert_eq!(embed13_23_12(&gg, Slot::S13, &h), g1g);
}

#[test]
fn group_algebras_of_small_groups() {
    let trivial = group_algebra(&FiniteGroup::cyclic(1));
    assert_eq!(trivial.dim(), 1);
    assert!(verify_hopf(&trivial).all_ok());

    let h = kz2();
    assert!(h.antipode().is_identity());

    let s3 = group_algebra(&FiniteGroup::symmetric3());
    assert_eq!(s3.dim(), 6);
    assert!(verify_hopf(&s3).all_ok());
    assert!(is_cocommutative(&s3));
    assert!(!is_commutative(&s3));
}

#[test]
fn duals() {
    let s3 = group_algebra(&FiniteGroup::symmetric3());
    let dual = dual_hopf(&s3);
    assert!(verify_hopf(&dual).all_ok());
    assert!(is_commutative(&dual));
    assert!(!is_cocommutative(&dual));
    assert_eq!(dual_hopf(&dual), s3);
}

#[test]
fn supergroup_algebra_of_sign_line_is_super_cocommutative() {
    let z2 = FiniteGroup::cyclic(2);
    let sign = GroupRep::from_signs(&z2, &[vec![1, -1]]).unwrap();
    let h = supergroup_algebra(&z2, &sign).unwrap();
    assert!(h.is_super());
    assert!(verify_hopf(&h).all_ok());
    assert!(is_cocommutative(&h));
}

#[test]
fn sweedler_structure() {
    let h = sweedler();
    assert!(verify_hopf(&h).all_ok());
    assert!(!is_cocommutative(&h));
    assert!(!is_semisimple(&h));
    assert!(is_chevalley(&h));
    assert_eq!(antipode_order(&h).unwrap(), 4);

    // Basis order is 1, x, g, gx.
    let rad = jacobson_radical(&h);
    assert_eq!(rad.len(), 2);
    let x = dense(&[(1, 1)], 4);
    let gx = dense(&[(3, 1)], 4);
    let mut all = rad.clone();
    all.push(x.clone());
    all.push(gx.clone());
    assert_eq!(span_rank(&all, 4), 2);

    let gxg = h.multiply(&h.multiply(&h.basis(2), &h.basis(1)), &h.basis(2));
    assert_eq!(gxg, h.basis(1).into_iter().map(|(k, v)| (k, -v)).collect());
}

#[test]
fn radicals_and_semisimplicity() {
    for g in [FiniteGroup::cyclic(3), FiniteGroup::symmetric3(), FiniteGroup::quaternion8()] {
        let h = group_algebra(&g);
        assert!(jacobson_radical(&h).is_empty());
        assert!(is_semisimple(&h));
        assert!(is_chevalley(&h));
    }
    let z2 = FiniteGroup::cyclic(2);
    for (signs, want) in [(vec![vec![1, -1]], 2), (vec![vec![1, -1], vec![1, -1]], 6)] {
        let rep = GroupRep::from_signs(&z2, &signs).unwrap();
        let h = supergroup_algebra(&z2, &rep).unwrap();
        assert_eq!(jacobson_radical(&h).len(), want);
    }
}

#[test]
fn twisting_keeps_the_algebra_semisimple() {
    let g = FiniteGroup::cyclic_product(&[2, 2]);
    let a = AbelianSubgroup::whole(&g).unwrap();
    let beta = Bicharacter::from_generator_exponents(&[2, 2], &[vec![0, 1], vec![0, 0]]).unwrap();
    let (h, _) = semisimple_triangular(&g, &a, &beta, g.identity()).unwrap();
    assert!(is_semisimple(&h));
    let untwisted = group_algebra(&g);
    assert!(h.mult_triples().eq(untwisted.mult_triples()));
}

#[test]
fn span_of_unit_is_not_an_ideal_of_the_coalgebra() {
    let h = sweedler();
    let report = hopf_ideal_report(&h, &[dense(&[(0, 1)], 4)]);
    assert!(!report.counit_vanishes);
}

#[test]
fn antipode_orders() {
    assert_eq!(antipode_order(&kz2()).unwrap(), 1);
    assert_eq!(antipode_order(&group_algebra(&FiniteGroup::cyclic(3))).unwrap(), 2);
}

#[test]
fn exterior_algebras() {
    let h0 = exterior_algebra(0);
    assert_eq!(h0.dim(), 1);
    assert!(verify_hopf(&h0).all_ok());

    let h1 = exterior_algebra(1);
    assert_eq!(h1.dim(), 2);
    assert!(h1.multiply(&h1.basis(1), &h1.basis(1)).is_empty());

    // Subset bitmasks: 1 = v1, 2 = v2, 3 = v1v2.
    let h2 = exterior_algebra(2);
    let want = Tensor2::from_terms(4, [(3, 0, c(1)), (1, 2, c(1)), (2, 1, c(-1)), (0, 3, c(1))]);
    assert_eq!(h2.comult()[3], want);
    let d1 = h2.comult_of(&h2.basis(1));
    let d2 = h2.comult_of(&h2.basis(2));
    assert_eq!(tensor2_mul(&d1, &d2, &h2).unwrap(), want);
}

#[test]
fn supergroup_of_trivial_group_is_an_exterior_algebra() {
    let e = FiniteGroup::cyclic(1);
    let line = GroupRep::from_signs(&e, &[vec![1]]).unwrap();
    assert_eq!(supergroup_algebra(&e, &line).unwrap(), exterior_algebra(1));
}

#[test]
fn smash_product_relation() {
    let z2 = FiniteGroup::cyclic(2);
    let sign = GroupRep::from_signs(&z2, &[vec![1, -1]]).unwrap();
    let h = supergroup_algebra(&z2, &sign).unwrap();
    let (g, v) = (h.basis(2), h.basis(1));
    let gv = h.multiply(&g, &v);
    let vg = h.multiply(&v, &g);
    assert_eq!(gv, vg.into_iter().map(|(k, x)| (k, -x)).collect());

    let two = GroupRep::from_signs(&z2, &[vec![1, -1], vec![1, -1]]).unwrap();
    assert_eq!(supergroup_algebra(&z2, &two).unwrap().dim(), 8);
}

#[test]
fn modified_with_zero_representation_is_the_group_algebra() {
    let g = FiniteGroup::cyclic_product(&[2, 2]);
    for u in [1, 2, 3] {
        let (h, r) = modified_supergroup_algebra(&g, &GroupRep::zero(&g), u).unwrap();
        assert_eq!(h, group_algebra(&g));
        assert_ne!(r, Tensor2::unit(&h));
    }
}
