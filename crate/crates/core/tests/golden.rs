//! Committed reference files pin basis order, sign choices and the file layout.

use trihopf::constructions::{
    modified_supergroup_algebra, semisimple_triangular, AbelianSubgroup, Bicharacter, FiniteGroup, GroupRep,
};
use trihopf::report::analyze;
use trihopf::wire::{hopf_from_json, hopf_to_json, tensor_to_json, to_canonical_json};
use trihopf::{CycScalar, RMatrix, Tensor2};

#[test]
fn sweedler_files() {
    let z2 = FiniteGroup::cyclic(2);
    let sign = GroupRep::from_signs(&z2, &[vec![1, -1]]).unwrap();
    let (h, r) = modified_supergroup_algebra(&z2, &sign, 1).unwrap();
    assert_eq!(hopf_to_json(&h), include_str!("golden/sweedler.dump.json"));
    assert_eq!(tensor_to_json(&r), include_str!("golden/sweedler_R.json"));

    let report = analyze(&h, Some(&RMatrix::new(&h, r).unwrap()));
    let text = to_canonical_json(&serde_json::to_value(&report).unwrap());
    assert_eq!(text, include_str!("golden/sweedler_analysis.json"));
    assert_eq!(hopf_from_json(include_str!("golden/sweedler.dump.json")).unwrap(), h);
}

fn z2xz2_twisted() -> (trihopf::HopfData, Tensor2) {
    let g = FiniteGroup::cyclic_product(&[2, 2]);
    let a = AbelianSubgroup::from_generators(&g, &[2, 1]).unwrap();
    let beta = Bicharacter::from_generator_exponents(&[2, 2], &[vec![0, 1], vec![0, 0]]).unwrap();
    semisimple_triangular(&g, &a, &beta, 0).unwrap()
}

#[test]
fn z2xz2_twisted_files() {
    let (h, r) = z2xz2_twisted();
    assert_eq!(hopf_to_json(&h), include_str!("golden/z2xz2_twisted.dump.json"));
    assert_eq!(tensor_to_json(&r), include_str!("golden/z2xz2_twisted_R.json"));
}

/// `R = Σ_{s,t} ω(s,t) E_s ⊗ E_t` with `ω(s,t) = β(s,t)/β(t,s) = (−1)^{s₁t₂ + s₂t₁}`,
/// expanded in the group basis by character sums.
#[test]
fn z2xz2_r_matches_character_sums() {
    let (_, r) = z2xz2_twisted();
    // Element index i has coordinates (i >> 1, i & 1).
    let coords = |i: usize| [(i >> 1) as i64, (i & 1) as i64];
    let sign = |e: i64| if e % 2 == 0 { 1 } else { -1 };
    let mut want = Tensor2::zero(4);
    for a in 0..4 {
        for b in 0..4 {
            let (ca, cb) = (coords(a), coords(b));
            let mut sum = 0;
            for s in 0..4 {
                for t in 0..4 {
                    let (cs, ct) = (coords(s), coords(t));
                    let omega = sign(cs[0] * ct[1] + cs[1] * ct[0]);
                    sum += omega * sign(cs[0] * ca[0] + cs[1] * ca[1]) * sign(ct[0] * cb[0] + ct[1] * cb[1]);
                }
            }
            want.add_term(a, b, &CycScalar::from_frac(sum, 16));
        }
    }
    assert_eq!(r, want);
}
