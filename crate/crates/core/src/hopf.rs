//! Finite-dimensional (super)Hopf algebras given by structure constants.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::CycScalar;
use crate::tensor::{
    add_term, embed13_23_12, flip, krylov_inverse, mat_kernel, tensor2_mul_unchecked, to_dense,
    Algebra, Coalgebra, Mat, Slot, Sparse, Tensor2,
};

/// Upper bound used by [`antipode_order`].
pub const DEFAULT_ANTIPODE_ORDER_BOUND: usize = 16;

/// A (super)Hopf algebra in a fixed basis `e_0, ..., e_{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfData {
    dim: usize,
    is_super: bool,
    parity: Vec<u8>,
    unit: Sparse,
    /// `mult[i * dim + j]` is `e_i · e_j`.
    mult: Vec<Vec<(usize, CycScalar)>>,
    counit: Vec<CycScalar>,
    comult: Vec<Tensor2>,
    antipode: Mat,
}

impl HopfData {
    /// Assembles structure maps after shape and index checks.
    ///
    /// `mult` holds `e_i · e_j` at position `i * dim + j`; the columns of
    /// `antipode` are the images `S(e_j)`. Axioms are not checked here; see
    /// [`verify_hopf`].
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        dim: usize,
        is_super: bool,
        parity: Vec<u8>,
        unit: Sparse,
        mult: Vec<Sparse>,
        counit: Vec<CycScalar>,
        comult: Vec<Tensor2>,
        antipode: Mat,
    ) -> Result<Self> {
        let shape = |what: &str| Err(Error::Shape(format!("{what} does not match dimension {dim}")));
        if dim == 0 {
            return Err(Error::Shape("Hopf algebra of dimension zero".into()));
        }
        if parity.len() != dim || parity.iter().any(|&p| p > 1) {
            return shape("parity vector");
        }
        if !is_super && parity.iter().any(|&p| p != 0) {
            return Err(Error::Shape("odd basis vector in a non-super algebra".into()));
        }
        if unit.keys().any(|&i| i >= dim) {
            return shape("unit");
        }
        if mult.len() != dim * dim || mult.iter().any(|m| m.keys().any(|&k| k >= dim)) {
            return shape("multiplication table");
        }
        if counit.len() != dim {
            return shape("counit");
        }
        if comult.len() != dim || comult.iter().any(|t| t.dim() != dim) {
            return shape("comultiplication");
        }
        if antipode.rows() != dim || antipode.cols() != dim {
            return shape("antipode");
        }
        Ok(HopfData {
            dim,
            is_super,
            parity,
            unit,
            mult: mult.into_iter().map(|m| m.into_iter().collect()).collect(),
            counit,
            comult,
            antipode,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_super(&self) -> bool {
        self.is_super
    }

    pub fn parity_vec(&self) -> &[u8] {
        &self.parity
    }

    pub fn counit(&self) -> &[CycScalar] {
        &self.counit
    }

    pub fn antipode(&self) -> &Mat {
        &self.antipode
    }

    pub fn comult(&self) -> &[Tensor2] {
        &self.comult
    }

    /// All nonzero structure constants `(i, j, k, m_ij^k)` in index order.
    pub fn mult_triples(&self) -> impl Iterator<Item = (usize, usize, usize, &CycScalar)> {
        let d = self.dim;
        self.mult
            .iter()
            .enumerate()
            .flat_map(move |(ij, v)| v.iter().map(move |(k, c)| (ij / d, ij % d, *k, c)))
    }

    pub fn with_antipode(&self, antipode: Mat) -> Result<Self> {
        if antipode.rows() != self.dim || antipode.cols() != self.dim {
            return Err(Error::Shape("antipode".into()));
        }
        Ok(HopfData { antipode, ..self.clone() })
    }

    pub(crate) fn with_coalgebra(&self, comult: Vec<Tensor2>, antipode: Mat) -> Self {
        HopfData { comult, antipode, ..self.clone() }
    }

    /// The same structure constants read as a super Hopf algebra.
    pub fn as_super(&self) -> Self {
        HopfData { is_super: true, ..self.clone() }
    }

    pub fn basis(&self, i: usize) -> Sparse {
        Sparse::from([(i, CycScalar::one())])
    }

    pub fn counit_of(&self, x: &Sparse) -> CycScalar {
        let mut acc = CycScalar::zero();
        for (&i, c) in x {
            if !self.counit[i].is_zero() {
                acc = &acc + &(c * &self.counit[i]);
            }
        }
        acc
    }

    pub fn antipode_of(&self, x: &Sparse) -> Sparse {
        self.antipode.apply_sparse(x)
    }

    pub fn antipode_basis(&self, i: usize) -> Sparse {
        self.antipode.apply_sparse(&self.basis(i))
    }

    pub fn comult_of(&self, x: &Sparse) -> Tensor2 {
        let mut out = Tensor2::zero(self.dim);
        for (&i, c) in x {
            for (p, q, v) in self.comult[i].terms() {
                out.add_term(p, q, &(c * v));
            }
        }
        out
    }

    /// Inverse of `x` in the algebra `H`.
    pub fn inverse_of(&self, x: &Sparse) -> Result<Sparse> {
        krylov_inverse(&self.unit, x, |a, b| self.multiply(a, b))
    }

    pub fn is_unit_element(&self, x: &Sparse) -> bool {
        x == &self.unit
    }

    /// Left multiplication `L_x` as a matrix.
    pub fn left_mult_matrix(&self, x: &Sparse) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for (k, c) in self.multiply(x, &self.basis(j)) {
                m.set(k, j, c);
            }
        }
        m
    }
}

impl Algebra for HopfData {
    fn dim(&self) -> usize {
        self.dim
    }

    fn is_super(&self) -> bool {
        self.is_super
    }

    fn parity(&self, i: usize) -> u8 {
        self.parity[i]
    }

    fn basis_product(&self, i: usize, j: usize) -> &[(usize, CycScalar)] {
        &self.mult[i * self.dim + j]
    }

    fn unit(&self) -> &Sparse {
        &self.unit
    }
}

impl Coalgebra for HopfData {
    fn coproduct(&self, i: usize) -> &Tensor2 {
        &self.comult[i]
    }
}

/// Outcome of a single axiom check with the lowest failing basis tuple.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Check {
    pub ok: bool,
    pub witness: Option<Vec<usize>>,
}

impl Check {
    pub(crate) fn from_witness(w: Option<Vec<usize>>) -> Self {
        Check { ok: w.is_none(), witness: w }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub associativity: Check,
    pub unit: Check,
    pub coassociativity: Check,
    pub counit: Check,
    pub bialgebra: Check,
    pub antipode: Check,
    /// Products, coproducts, antipode, unit and counit respect the parity grading.
    pub grading: Check,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.checks().iter().all(|(_, c)| c.ok)
    }

    pub fn checks(&self) -> [(&'static str, &Check); 7] {
        [
            ("associativity", &self.associativity),
            ("unit", &self.unit),
            ("coassociativity", &self.coassociativity),
            ("counit", &self.counit),
            ("bialgebra", &self.bialgebra),
            ("antipode", &self.antipode),
            ("grading", &self.grading),
        ]
    }

    pub fn first_failure(&self) -> Option<(&'static str, &[usize])> {
        self.checks()
            .into_iter()
            .find(|(_, c)| !c.ok)
            .map(|(n, c)| (n, c.witness.as_deref().unwrap_or(&[])))
    }
}

/// Lowest witness over a parallel scan of the first basis index.
fn scan(d: usize, f: impl Fn(usize) -> Option<Vec<usize>> + Sync + Send) -> Option<Vec<usize>> {
    (0..d).into_par_iter().filter_map(f).min()
}

/// Exhaustive check of the (super)Hopf algebra axioms over all basis tuples.
pub fn verify_hopf(h: &HopfData) -> AxiomReport {
    let d = h.dim;
    let product = |i: usize, j: usize| -> Sparse { h.basis_product(i, j).iter().cloned().collect() };

    let associativity = scan(d, |i| {
        for j in 0..d {
            let ij = product(i, j);
            for k in 0..d {
                let left = h.multiply(&ij, &h.basis(k));
                let right = h.multiply(&h.basis(i), &product(j, k));
                if left != right {
                    return Some(vec![i, j, k]);
                }
            }
        }
        None
    });

    let unit = scan(d, |i| {
        let e = h.basis(i);
        (h.multiply(&h.unit, &e) != e || h.multiply(&e, &h.unit) != e).then(|| vec![i])
    });

    let coassociativity = scan(d, |i| {
        let delta = &h.comult[i];
        (embed13_23_12(delta, Slot::DeltaId, h) != embed13_23_12(delta, Slot::IdDelta, h)).then(|| vec![i])
    });

    let counit = scan(d, |i| {
        let mut left = Sparse::new();
        let mut right = Sparse::new();
        for (p, q, c) in h.comult[i].terms() {
            add_term(&mut left, q, &(c * &h.counit[p]));
            add_term(&mut right, p, &(c * &h.counit[q]));
        }
        let e = h.basis(i);
        (left != e || right != e).then(|| vec![i])
    });

    let unit_ok = h.counit_of(&h.unit).is_one() && h.comult_of(&h.unit) == Tensor2::unit(h);
    let bialgebra = if !unit_ok {
        Some(vec![])
    } else {
        scan(d, |i| {
            for j in 0..d {
                let ij = product(i, j);
                let lhs = h.comult_of(&ij);
                let rhs = tensor2_mul_unchecked(&h.comult[i], &h.comult[j], h);
                if lhs != rhs || h.counit_of(&ij) != &h.counit[i] * &h.counit[j] {
                    return Some(vec![i, j]);
                }
            }
            None
        })
    };

    let antipode = scan(d, |i| {
        let delta = &h.comult[i];
        let target = crate::tensor::scale_map(&h.unit, &h.counit[i]);
        let left = delta.contract(h, |p| h.antipode_basis(p), |q| h.basis(q));
        let right = delta.contract(h, |p| h.basis(p), |q| h.antipode_basis(q));
        (left != target || right != target).then(|| vec![i])
    });

    let grading = if h.unit.keys().any(|&i| h.parity[i] == 1) {
        Some(vec![])
    } else {
        scan(d, |i| {
            let p = h.parity[i];
            let prod_bad = (0..d).find(|&j| {
                h.basis_product(i, j).iter().any(|(k, _)| h.parity[*k] != (p ^ h.parity[j]))
            });
            if let Some(j) = prod_bad {
                return Some(vec![i, j]);
            }
            let bad = h.comult[i].terms().any(|(a, b, _)| h.parity[a] ^ h.parity[b] != p)
                || h.antipode_basis(i).keys().any(|&k| h.parity[k] != p)
                || (p == 1 && !h.counit[i].is_zero());
            bad.then(|| vec![i])
        })
    };

    AxiomReport {
        associativity: Check::from_witness(associativity),
        unit: Check::from_witness(unit),
        coassociativity: Check::from_witness(coassociativity),
        counit: Check::from_witness(counit),
        bialgebra: Check::from_witness(bialgebra),
        antipode: Check::from_witness(antipode),
        grading: Check::from_witness(grading),
    }
}

/// `flip∘Δ = Δ` on every basis vector (signed flip over a super algebra).
pub fn is_cocommutative(h: &HopfData) -> bool {
    h.comult.iter().all(|t| &flip(t, h) == t)
}

/// `e_i e_j = (-1)^{|i||j|} e_j e_i` for all basis pairs.
pub fn is_commutative(h: &HopfData) -> bool {
    (0..h.dim).all(|i| {
        (0..h.dim).all(|j| {
            let a: Sparse = h.basis_product(i, j).iter().cloned().collect();
            let b: Sparse = h.basis_product(j, i).iter().cloned().collect();
            if h.odd_pair(i, j) {
                a == crate::tensor::scale_map(&b, &CycScalar::from_int(-1))
            } else {
                a == b
            }
        })
    })
}

/// The dual Hopf algebra in the dual basis.
///
/// Its multiplication is the transpose of `Δ`, its comultiplication the
/// transpose of `m`, its unit the counit and its antipode `Sᵀ`.
pub fn dual_hopf(h: &HopfData) -> HopfData {
    let d = h.dim;
    let mut mult = vec![Sparse::new(); d * d];
    for (k, t) in h.comult.iter().enumerate() {
        for (i, j, c) in t.terms() {
            add_term(&mut mult[i * d + j], k, c);
        }
    }
    let mut comult = vec![Tensor2::zero(d); d];
    for (i, j, k, c) in h.mult_triples() {
        comult[k].add_term(i, j, c);
    }
    let unit = crate::tensor::from_dense(&h.counit);
    let counit = to_dense(&h.unit, d);
    HopfData::new(d, h.is_super, h.parity.clone(), unit, mult, counit, comult, h.antipode.transpose())
        .expect("dual of a well-formed structure is well-formed")
}

/// Basis of the Jacobson radical as the kernel of the trace form
/// `T[i][j] = tr(L_{e_i e_j})`.
pub fn jacobson_radical(h: &HopfData) -> Vec<Vec<CycScalar>> {
    let d = h.dim;
    // tr(L_{e_k}) = Σ_l m[k][l][l]
    let traces: Vec<CycScalar> = (0..d)
        .map(|k| {
            let mut acc = CycScalar::zero();
            for l in 0..d {
                for (r, c) in h.basis_product(k, l) {
                    if *r == l {
                        acc = &acc + c;
                    }
                }
            }
            acc
        })
        .collect();
    let mut form = Mat::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = CycScalar::zero();
            for (k, c) in h.basis_product(i, j) {
                if !traces[*k].is_zero() {
                    acc = &acc + &(c * &traces[*k]);
                }
            }
            form.set(i, j, acc);
        }
    }
    mat_kernel(&form)
}

pub fn is_semisimple(h: &HopfData) -> bool {
    jacobson_radical(h).is_empty()
}

/// The three conditions for a subspace `I ⊆ H` to be a Hopf ideal on the coalgebra side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfIdealReport {
    pub counit_vanishes: bool,
    pub antipode_stable: bool,
    /// `Δ(I) ⊆ I⊗H + H⊗I`.
    pub coideal: bool,
}

impl HopfIdealReport {
    pub fn all_ok(&self) -> bool {
        self.counit_vanishes && self.antipode_stable && self.coideal
    }
}

/// Checks `ε(I) = 0`, `S(I) ⊆ I` and `Δ(I) ⊆ I⊗H + H⊗I` for `I = span(basis)`.
///
/// Both memberships are decided through the annihilator `I^⊥`: `y ∈ I` iff
/// `φ(y) = 0` for all `φ ∈ I^⊥`, and `I⊗H + H⊗I` is the common kernel of the
/// `φ⊗ψ`.
pub fn hopf_ideal_report(h: &HopfData, basis: &[Vec<CycScalar>]) -> HopfIdealReport {
    let d = h.dim;
    let elems: Vec<Sparse> = basis.iter().map(|v| crate::tensor::from_dense(v)).collect();
    let counit_vanishes = elems.iter().all(|x| h.counit_of(x).is_zero());
    let annihilator: Vec<Sparse> = if basis.is_empty() {
        (0..d).map(|i| h.basis(i)).collect()
    } else {
        let rows = Mat::from_rows(basis.to_vec()).expect("basis vectors share a length");
        mat_kernel(&rows).iter().map(|v| crate::tensor::from_dense(v)).collect()
    };
    let pair = |phi: &Sparse, y: &Sparse| -> CycScalar {
        let mut acc = CycScalar::zero();
        for (i, c) in y {
            if let Some(f) = phi.get(i) {
                acc = &acc + &(c * f);
            }
        }
        acc
    };
    let antipode_stable = elems.par_iter().all(|x| {
        let y = h.antipode_of(x);
        annihilator.iter().all(|phi| pair(phi, &y).is_zero())
    });
    let coideal = elems.par_iter().all(|x| {
        let t = h.comult_of(x);
        annihilator.iter().all(|phi| {
            // (φ⊗id)(Δx)
            let mut w = Sparse::new();
            for (p, q, c) in t.terms() {
                if let Some(f) = phi.get(&p) {
                    add_term(&mut w, q, &(c * f));
                }
            }
            w.is_empty() || annihilator.iter().all(|psi| pair(psi, &w).is_zero())
        })
    });
    HopfIdealReport { counit_vanishes, antipode_stable, coideal }
}

/// Whether the Jacobson radical is a Hopf ideal.
pub fn is_chevalley(h: &HopfData) -> bool {
    let rad = jacobson_radical(h);
    rad.is_empty() || hopf_ideal_report(h, &rad).all_ok()
}

/// Least `k ≥ 1` with `S^k = id`, searching up to [`DEFAULT_ANTIPODE_ORDER_BOUND`].
pub fn antipode_order(h: &HopfData) -> Result<usize> {
    antipode_order_bounded(h, DEFAULT_ANTIPODE_ORDER_BOUND)
}

pub fn antipode_order_bounded(h: &HopfData, bound: usize) -> Result<usize> {
    let mut power = h.antipode.clone();
    for k in 1..=bound {
        if power.is_identity() {
            return Ok(k);
        }
        power = power.mul(&h.antipode)?;
    }
    Err(Error::OrderNotFound(bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// k[Z₂] in the basis {1, g}, written out by hand.
    fn kz2() -> HopfData {
        let one = CycScalar::one();
        let e = |i: usize| Sparse::from([(i, one.clone())]);
        let mult = vec![e(0), e(1), e(1), e(0)];
        let comult = vec![
            Tensor2::from_terms(2, [(0, 0, one.clone())]),
            Tensor2::from_terms(2, [(1, 1, one.clone())]),
        ];
        HopfData::new(2, false, vec![0, 0], e(0), mult, vec![one.clone(), one], comult, Mat::identity(2)).unwrap()
    }

    #[test]
    fn kz2_is_hopf() {
        let h = kz2();
        assert!(verify_hopf(&h).all_ok());
        assert!(is_cocommutative(&h));
        assert!(is_semisimple(&h));
        assert!(is_chevalley(&h));
        assert_eq!(antipode_order(&h).unwrap(), 1);
    }

    #[test]
    fn zero_antipode_is_reported_at_the_unit() {
        let h = kz2().with_antipode(Mat::zeros(2, 2)).unwrap();
        let r = verify_hopf(&h);
        assert!(!r.antipode.ok);
        assert_eq!(r.antipode.witness, Some(vec![0]));
        assert!(r.associativity.ok && r.coassociativity.ok && r.bialgebra.ok);
        assert_eq!(r.first_failure().unwrap().0, "antipode");
    }

    #[test]
    fn span_of_unit_is_not_a_hopf_ideal() {
        let h = kz2();
        let report = hopf_ideal_report(&h, &[to_dense(&h.basis(0), 2)]);
        assert!(!report.counit_vanishes);
    }

    #[test]
    fn shape_errors() {
        let h = kz2();
        assert!(h.with_antipode(Mat::identity(3)).is_err());
        assert!(HopfData::new(2, false, vec![0, 1], Sparse::new(), vec![], vec![], vec![], Mat::identity(2)).is_err());
    }

    #[test]
    fn dual_of_kz2_in_idempotent_basis() {
        let h = kz2();
        let dual = dual_hopf(&h);
        assert!(verify_hopf(&dual).all_ok());
        // dual basis {δ_1, δ_g} is a pair of orthogonal idempotents summing to ε
        assert_eq!(dual.multiply(&dual.basis(0), &dual.basis(0)), dual.basis(0));
        assert!(dual.multiply(&dual.basis(0), &dual.basis(1)).is_empty());
        assert_eq!(dual_hopf(&dual), h);
    }

    #[test]
    fn unbounded_antipode_order_is_an_error() {
        let h = kz2();
        // S = -id has order 2; cap the search at 1
        let neg = h.with_antipode(Mat::identity(2).transpose()).unwrap();
        assert_eq!(antipode_order_bounded(&neg, 1).unwrap(), 1);
        let mut m = Mat::zeros(2, 2);
        m.set(0, 0, CycScalar::from_int(2));
        m.set(1, 1, CycScalar::one());
        let bad = h.with_antipode(m).unwrap();
        assert_eq!(antipode_order_bounded(&bad, 8), Err(Error::OrderNotFound(8)));
    }
}
