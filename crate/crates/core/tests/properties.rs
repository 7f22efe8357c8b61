use proptest::prelude::*;

use trihopf::atlas::{catalog, InstanceSpec};
use trihopf::constructions::{
    apply_twist, build_bicharacter_twist, group_algebra, verify_twist, AbelianSubgroup, Bicharacter, FiniteGroup,
};
use trihopf::hopf::verify_hopf;
use trihopf::tensor::{flip, tensor2_inv, tensor2_mul, Algebra};
use trihopf::triangular::{drinfeld_element, modify_r, verify_triangular};
use trihopf::wire::{hopf_from_json, hopf_to_json, tensor_from_json, tensor_to_json};
use trihopf::{CycScalar, HopfData, RMatrix, Sparse};

fn small_specs() -> Vec<InstanceSpec> {
    catalog(8).into_iter().filter(|s| s.dim() <= 16).collect()
}

fn spec_strategy() -> impl Strategy<Value = InstanceSpec> {
    let specs = small_specs();
    (0..specs.len()).prop_map(move |i| specs[i].clone())
}

fn element(d: usize) -> impl Strategy<Value = Sparse> {
    proptest::collection::vec((0..d, -3i64..=3, 1i64..=3), 1..4).prop_map(|terms| {
        let mut x = Sparse::new();
        for (i, n, q) in terms {
            let c = CycScalar::from_frac(n, q);
            let sum = x.get(&i).map_or(c.clone(), |old: &CycScalar| old + &c);
            if sum.is_zero() {
                x.remove(&i);
            } else {
                x.insert(i, sum);
            }
        }
        x
    })
}

/// An instance together with two elements of its algebra.
fn with_elements() -> impl Strategy<Value = (InstanceSpec, Sparse, Sparse)> {
    spec_strategy().prop_flat_map(|s| {
        let d = s.dim();
        (Just(s), element(d), element(d))
    })
}

/// Exponents of `ζ_N` on generator pairs; `β(e_i, e_j)` must have order dividing `gcd(f_i, f_j)`.
fn abelian_pairing() -> impl Strategy<Value = (Vec<u32>, Vec<Vec<i64>>)> {
    prop_oneof![Just(vec![2u32, 2]), Just(vec![4, 2]), Just(vec![3, 3]), Just(vec![2, 2, 2])].prop_flat_map(|f| {
        let r = f.len();
        let n = f.iter().fold(1, |acc, &x| num_integer::lcm(acc, x as i64));
        let steps: Vec<Vec<i64>> =
            (0..r).map(|i| (0..r).map(|j| n / num_integer::gcd(f[i] as i64, f[j] as i64)).collect()).collect();
        proptest::collection::vec(proptest::collection::vec(0i64..4, r), r).prop_map(move |m| {
            let gen = (0..r).map(|i| (0..r).map(|j| m[i][j] * steps[i][j]).collect()).collect();
            (f.clone(), gen)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn comultiplication_is_multiplicative((spec, x, y) in with_elements()) {
        let (h, _) = spec.build().unwrap();
        let lhs = h.comult_of(&h.multiply(&x, &y));
        let rhs = tensor2_mul(&h.comult_of(&x), &h.comult_of(&y), &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antipode_is_an_antihomomorphism((spec, x, y) in with_elements()) {
        let (h, _) = spec.build().unwrap();
        let lhs = h.antipode_of(&h.multiply(&x, &y));
        let rhs = h.multiply(&h.antipode_of(&y), &h.antipode_of(&x));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn r_matrix_intertwines_the_coproduct((spec, x, _y) in with_elements()) {
        let (h, r) = spec.build().unwrap();
        let lhs = tensor2_mul(&flip(&h.comult_of(&x), &h), &r, &h).unwrap();
        let rhs = tensor2_mul(&r, &h.comult_of(&x), &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn any_pairing_gives_a_triangular_twist((factors, gen) in abelian_pairing()) {
        let g = FiniteGroup::cyclic_product(&factors);
        let a = AbelianSubgroup::whole(&g).unwrap();
        let beta = Bicharacter::from_generator_exponents(&factors, &gen).unwrap();
        let h = group_algebra(&g);
        let j = build_bicharacter_twist(&g, &a, &beta).unwrap();
        prop_assert!(verify_twist(&h, &j).unwrap());
        let (hj, _) = apply_twist(&h, &j, None).unwrap();
        prop_assert!(verify_hopf(&hj).all_ok());
        let r = tensor2_mul(&flip(&tensor2_inv(&j, &h).unwrap(), &h), &j, &h).unwrap();
        prop_assert!(verify_triangular(&hj, &RMatrix::new(&hj, r).unwrap()));
    }

    #[test]
    fn modifying_twice_restores_r(spec in spec_strategy()) {
        let (h, r) = spec.build().unwrap();
        let r = RMatrix::new(&h, r).unwrap();
        // Group-like basis vectors sit at `g · 2^{dim V}`.
        let u = h.basis(spec.u << spec.v.len());
        let once = modify_r(&h, &r, &u).unwrap();
        if spec.v.is_empty() {
            // u is central, so R·R_u is again triangular.
            prop_assert!(verify_triangular(&h, &once));
        }
        let twice = modify_r(&h, &once, &u).unwrap();
        prop_assert_eq!(twice.value(), r.value());
    }

    #[test]
    fn twisting_preserves_the_drinfeld_element(spec in spec_strategy().prop_filter("twisted", |s| s.twist.is_some())) {
        let (h0, r0) = spec.untwisted().unwrap();
        let (h, r) = spec.build().unwrap();
        let u0 = drinfeld_element(&h0, &RMatrix::new(&h0, r0).unwrap()).unwrap();
        let u = drinfeld_element(&h, &RMatrix::new(&h, r).unwrap()).unwrap();
        prop_assert_eq!(u0, u);
    }

    #[test]
    fn dumps_round_trip(spec in spec_strategy()) {
        let (h, r) = spec.build().unwrap();
        let text = hopf_to_json(&h);
        let back: HopfData = hopf_from_json(&text).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(hopf_to_json(&back), text);
        prop_assert_eq!(tensor_from_json(&tensor_to_json(&r)).unwrap(), r);
    }
}
