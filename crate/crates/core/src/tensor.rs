//! Exact linear algebra and tensor bookkeeping for `H`, `H⊗H` and `H⊗H⊗H`.
//!
//! Products in tensor powers follow the super sign rule
//! `(a⊗b)(c⊗d) = (-1)^{|b||c|} ac⊗bd`; for non-super hosts every sign is `+`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalars::CycScalar;

/// A sparse element of `H`, keyed by basis index.
pub type Sparse = BTreeMap<usize, CycScalar>;

/// Adds `c` to the coefficient at `key`, dropping the entry when it cancels.
pub fn add_term<K: Ord>(map: &mut BTreeMap<K, CycScalar>, key: K, c: &CycScalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

pub fn scale_map<K: Ord + Clone>(map: &BTreeMap<K, CycScalar>, c: &CycScalar) -> BTreeMap<K, CycScalar> {
    if c.is_zero() {
        return BTreeMap::new();
    }
    map.iter().map(|(k, v)| (k.clone(), v * c)).collect()
}

pub fn axpy<K: Ord + Clone>(acc: &mut BTreeMap<K, CycScalar>, c: &CycScalar, x: &BTreeMap<K, CycScalar>) {
    for (k, v) in x {
        add_term(acc, k.clone(), &(c * v));
    }
}

/// Dense coordinates of a sparse element.
pub fn to_dense(x: &Sparse, dim: usize) -> Vec<CycScalar> {
    let mut out = vec![CycScalar::zero(); dim];
    for (&i, c) in x {
        out[i] = c.clone();
    }
    out
}

pub fn from_dense(v: &[CycScalar]) -> Sparse {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

/// Multiplicative structure of a finite-dimensional (super)algebra in a fixed basis.
pub trait Algebra {
    fn dim(&self) -> usize;
    fn is_super(&self) -> bool;
    fn parity(&self, i: usize) -> u8;
    /// `e_i · e_j` as a sparse combination of basis vectors.
    fn basis_product(&self, i: usize, j: usize) -> &[(usize, CycScalar)];
    fn unit(&self) -> &Sparse;

    /// Whether commuting homogeneous `e_i` past `e_j` costs a sign.
    fn odd_pair(&self, i: usize, j: usize) -> bool {
        self.is_super() && self.parity(i) & self.parity(j) == 1
    }

    fn multiply(&self, x: &Sparse, y: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (&i, a) in x {
            for (&j, b) in y {
                let ab = a * b;
                for (k, c) in self.basis_product(i, j) {
                    add_term(&mut out, *k, &(&ab * c));
                }
            }
        }
        out
    }
}

/// Comultiplication of a finite-dimensional coalgebra in a fixed basis.
pub trait Coalgebra {
    fn coproduct(&self, i: usize) -> &Tensor2;
}

/// Dense `rows × cols` matrix over [`CycScalar`], row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<CycScalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, entries: vec![CycScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, CycScalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Ok(Mat { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vec<CycScalar>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col.iter().enumerate() {
                m.set(i, j, c.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycScalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CycScalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<CycScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<CycScalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[CycScalar]) -> Vec<CycScalar> {
        (0..self.rows)
            .map(|i| {
                let mut acc = CycScalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Applies the matrix to a sparse coordinate vector.
    pub fn apply_sparse(&self, v: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (&j, c) in v {
            for i in 0..self.rows {
                let a = self.get(i, j);
                if !a.is_zero() {
                    add_term(&mut out, i, &(a * c));
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| {
                let v = self.get(i, j);
                if i == j { v.is_one() } else { v.is_zero() }
            }))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycScalar::is_zero)
    }

    pub fn rank(&self) -> usize {
        Echelon::of(self).pivots.len()
    }

    pub fn inverse(&self) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![CycScalar::zero(); n];
            e[j] = CycScalar::one();
            cols.push(solve(self, &e).ok_or(Error::NotInvertible)?);
        }
        if self.rank() != n {
            return Err(Error::NotInvertible);
        }
        Ok(Mat::from_columns(&cols, n))
    }
}

/// Row-echelon form produced by fraction-free (Bareiss) elimination.
struct Echelon {
    m: Mat,
    pivots: Vec<usize>,
}

impl Echelon {
    fn of(input: &Mat) -> Self {
        let mut m = input.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut prev = CycScalar::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.entries.swap(p * cols + j, r * cols + j);
                }
            }
            let piv = m.get(r, c).clone();
            let prev_inv = prev.inv().expect("previous pivot is nonzero");
            for i in r + 1..rows {
                let lead = m.get(i, c).clone();
                for j in c + 1..cols {
                    let v = &(&(&piv * m.get(i, j)) - &(&lead * m.get(r, j))) * &prev_inv;
                    m.set(i, j, v);
                }
                m.set(i, c, CycScalar::zero());
            }
            // rows above the pivot row keep the previous scale; nothing to do
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        Echelon { m, pivots }
    }
}

/// Exact basis of the null space of `m`; empty when `m` is injective.
pub fn mat_kernel(m: &Mat) -> Vec<Vec<CycScalar>> {
    let e = Echelon::of(m);
    let cols = m.cols;
    let is_pivot: Vec<bool> = (0..cols).map(|c| e.pivots.contains(&c)).collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![CycScalar::zero(); cols];
        x[free] = CycScalar::one();
        for (row, &pc) in e.pivots.iter().enumerate().rev() {
            let mut acc = CycScalar::zero();
            for j in pc + 1..cols {
                let a = e.m.get(row, j);
                if !a.is_zero() && !x[j].is_zero() {
                    acc = &acc + &(a * &x[j]);
                }
            }
            let inv = e.m.get(row, pc).inv().expect("pivot is nonzero");
            x[pc] = -(&acc * &inv);
        }
        basis.push(x);
    }
    basis
}

/// One solution of `m x = b`, if any.
pub fn solve(m: &Mat, b: &[CycScalar]) -> Option<Vec<CycScalar>> {
    let mut aug = Mat::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, -&b[i]);
    }
    // a kernel vector with last coordinate 1 gives m x = b
    let e = Echelon::of(&aug);
    if e.pivots.contains(&m.cols) {
        return None;
    }
    let mut x = vec![CycScalar::zero(); m.cols + 1];
    x[m.cols] = CycScalar::one();
    for (row, &pc) in e.pivots.iter().enumerate().rev() {
        let mut acc = CycScalar::zero();
        for j in pc + 1..=m.cols {
            let a = e.m.get(row, j);
            if !a.is_zero() && !x[j].is_zero() {
                acc = &acc + &(a * &x[j]);
            }
        }
        x[pc] = -(&acc * &e.m.get(row, pc).inv().ok()?);
    }
    x.truncate(m.cols);
    Some(x)
}

/// Rank of the span of the given vectors.
pub fn span_rank(vectors: &[Vec<CycScalar>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Mat::from_columns(vectors, dim).rank()
}

/// Whether `v` lies in the span of `basis`.
pub fn span_contains(basis: &[Vec<CycScalar>], v: &[CycScalar]) -> bool {
    if v.iter().all(CycScalar::is_zero) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    solve(&Mat::from_columns(basis, v.len()), v).is_some()
}

/// An element `Σ entries[(i, j)] e_i ⊗ e_j` of `H⊗H`; zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor2 {
    dim: usize,
    entries: BTreeMap<(usize, usize), CycScalar>,
}

impl Tensor2 {
    pub fn zero(dim: usize) -> Self {
        Tensor2 { dim, entries: BTreeMap::new() }
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, usize, CycScalar)>>(dim: usize, terms: I) -> Self {
        let mut t = Self::zero(dim);
        for (i, j, c) in terms {
            assert!(i < dim && j < dim, "tensor index out of range");
            add_term(&mut t.entries, (i, j), &c);
        }
        t
    }

    /// `x ⊗ y` for sparse elements.
    pub fn outer(dim: usize, x: &Sparse, y: &Sparse) -> Self {
        let mut t = Self::zero(dim);
        for (&i, a) in x {
            for (&j, b) in y {
                add_term(&mut t.entries, (i, j), &(a * b));
            }
        }
        t
    }

    /// The unit `1⊗1` of `H⊗H`.
    pub fn unit<A: Algebra + ?Sized>(alg: &A) -> Self {
        Self::outer(alg.dim(), alg.unit(), alg.unit())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> CycScalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: &CycScalar) {
        add_term(&mut self.entries, (i, j), c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &CycScalar)> {
        self.entries.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), CycScalar> {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &Tensor2) -> Tensor2 {
        let mut out = self.clone();
        axpy(&mut out.entries, &CycScalar::one(), &other.entries);
        out
    }

    pub fn sub(&self, other: &Tensor2) -> Tensor2 {
        let mut out = self.clone();
        axpy(&mut out.entries, &CycScalar::from_int(-1), &other.entries);
        out
    }

    pub fn scale(&self, c: &CycScalar) -> Tensor2 {
        Tensor2 { dim: self.dim, entries: scale_map(&self.entries, c) }
    }

    /// Dense `dim × dim` coefficient matrix.
    pub fn coefficient_matrix(&self) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for (i, j, c) in self.terms() {
            m.set(i, j, c.clone());
        }
        m
    }

    /// Plain transposition of tensor factors, without signs.
    pub fn transposed(&self) -> Tensor2 {
        Tensor2 {
            dim: self.dim,
            entries: self.entries.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    /// Applies `f ⊗ g` where `f`, `g` are linear maps given on basis vectors.
    pub fn map_factors(&self, f: impl Fn(usize) -> Sparse, g: impl Fn(usize) -> Sparse) -> Tensor2 {
        let mut out = Tensor2::zero(self.dim);
        for (i, j, c) in self.terms() {
            let (fi, gj) = (f(i), g(j));
            for (&a, x) in &fi {
                for (&b, y) in &gj {
                    out.add_term(a, b, &(&(c * x) * y));
                }
            }
        }
        out
    }

    /// `m(f ⊗ g)(self)`: applies maps to each factor and multiplies in `H`.
    pub fn contract<A: Algebra + ?Sized>(
        &self,
        alg: &A,
        f: impl Fn(usize) -> Sparse,
        g: impl Fn(usize) -> Sparse,
    ) -> Sparse {
        let mut out = Sparse::new();
        for (i, j, c) in self.terms() {
            let prod = alg.multiply(&f(i), &g(j));
            axpy(&mut out, c, &prod);
        }
        out
    }
}

fn check_dim<A: Algebra + ?Sized>(alg: &A, dims: &[usize]) -> Result<()> {
    if let Some(d) = dims.iter().find(|&&d| d != alg.dim()) {
        return Err(Error::Shape(format!("tensor of dimension {d} in algebra of dimension {}", alg.dim())));
    }
    Ok(())
}

/// Product of `a` and `b` in the algebra `H⊗H`.
pub fn tensor2_mul<A: Algebra + ?Sized>(a: &Tensor2, b: &Tensor2, alg: &A) -> Result<Tensor2> {
    check_dim(alg, &[a.dim, b.dim])?;
    Ok(tensor2_mul_unchecked(a, b, alg))
}

pub(crate) fn tensor2_mul_unchecked<A: Algebra + ?Sized>(a: &Tensor2, b: &Tensor2, alg: &A) -> Tensor2 {
    let mut out = Tensor2::zero(a.dim);
    for (&(i, j), x) in &a.entries {
        for (&(k, l), y) in &b.entries {
            let mut c = x * y;
            if alg.odd_pair(j, k) {
                c = -c;
            }
            let left = alg.basis_product(i, k);
            if left.is_empty() {
                continue;
            }
            for (r, p) in left {
                let cp = &c * p;
                for (s, q) in alg.basis_product(j, l) {
                    out.add_term(*r, *s, &(&cp * q));
                }
            }
        }
    }
    out
}

/// Two-sided inverse of `a` in `H⊗H`.
pub fn tensor2_inv<A: Algebra + ?Sized>(a: &Tensor2, alg: &A) -> Result<Tensor2> {
    check_dim(alg, &[a.dim])?;
    let one = Tensor2::unit(alg);
    let inv = krylov_inverse(&one.entries, &a.entries, |x, y| {
        let tx = Tensor2 { dim: a.dim, entries: x.clone() };
        let ty = Tensor2 { dim: a.dim, entries: y.clone() };
        tensor2_mul_unchecked(&tx, &ty, alg).entries
    })?;
    Ok(Tensor2 { dim: a.dim, entries: inv })
}

/// Inverse of `a` from its minimal polynomial over the subalgebra it generates.
///
/// Powers `1, a, a², ...` are reduced incrementally until the first linear
/// dependency `a^k + c_{k-1}a^{k-1} + ... + c_0 = 0`; `a` is invertible iff
/// `c_0 ≠ 0`.
pub(crate) fn krylov_inverse<K: Ord + Clone>(
    one: &BTreeMap<K, CycScalar>,
    a: &BTreeMap<K, CycScalar>,
    mul: impl Fn(&BTreeMap<K, CycScalar>, &BTreeMap<K, CycScalar>) -> BTreeMap<K, CycScalar>,
) -> Result<BTreeMap<K, CycScalar>> {
    struct Row<K> {
        pivot: K,
        vec: BTreeMap<K, CycScalar>,
        combo: Vec<CycScalar>,
    }
    let mut rows: Vec<Row<K>> = Vec::new();
    let mut powers = vec![one.clone()];
    loop {
        let k = powers.len() - 1;
        let mut v = powers[k].clone();
        let mut combo = vec![CycScalar::zero(); k + 1];
        combo[k] = CycScalar::one();
        for row in &rows {
            if let Some(c) = v.get(&row.pivot).cloned() {
                let neg = -c;
                axpy(&mut v, &neg, &row.vec);
                for (t, r) in combo.iter_mut().zip(&row.combo) {
                    *t = &*t + &(&neg * r);
                }
            }
        }
        if v.is_empty() {
            // Σ combo_j a^j = 0 with combo_k = 1
            if combo[0].is_zero() {
                return Err(Error::NotInvertible);
            }
            let mut acc = BTreeMap::new();
            for j in 1..=k {
                axpy(&mut acc, &combo[j], &powers[j - 1]);
            }
            let f = -combo[0].inv()?;
            return Ok(scale_map(&acc, &f));
        }
        let (pivot, lead) = v.iter().next().map(|(p, c)| (p.clone(), c.clone())).expect("nonzero");
        let inv = lead.inv()?;
        rows.push(Row {
            pivot,
            vec: scale_map(&v, &inv),
            combo: combo.iter().map(|c| c * &inv).collect(),
        });
        let next = mul(&powers[k], a);
        powers.push(next);
    }
}

/// Flip `e_i⊗e_j ↦ e_j⊗e_i`, with the Koszul sign `(-1)^{|i||j|}` over a super host.
pub fn flip<A: Algebra + ?Sized>(a: &Tensor2, alg: &A) -> Tensor2 {
    Tensor2 {
        dim: a.dim,
        entries: a
            .entries
            .iter()
            .map(|(&(i, j), c)| ((j, i), if alg.odd_pair(i, j) { -c } else { c.clone() }))
            .collect(),
    }
}

/// An element of `H⊗H⊗H`; zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    dim: usize,
    entries: BTreeMap<(usize, usize, usize), CycScalar>,
}

impl Tensor3 {
    pub fn zero(dim: usize) -> Self {
        Tensor3 { dim, entries: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_term(&mut self, i: usize, j: usize, k: usize, c: &CycScalar) {
        add_term(&mut self.entries, (i, j, k), c);
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> CycScalar {
        self.entries.get(&(i, j, k)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize, usize), &CycScalar)> {
        self.entries.iter().map(|(&k, c)| (k, c))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// `x ⊗ y ⊗ z`.
    pub fn outer(dim: usize, x: &Sparse, y: &Sparse, z: &Sparse) -> Self {
        let mut t = Self::zero(dim);
        for (&i, a) in x {
            for (&j, b) in y {
                let ab = a * b;
                for (&k, c) in z {
                    t.add_term(i, j, k, &(&ab * c));
                }
            }
        }
        t
    }

    /// First index at which the two tensors differ.
    pub fn first_difference(&self, other: &Tensor3) -> Option<(usize, usize, usize)> {
        let keys: std::collections::BTreeSet<_> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.into_iter().find(|k| self.entries.get(k) != other.entries.get(k)).copied()
    }
}

/// Product in `H⊗H⊗H` with signs `(-1)^{|b||a'| + |c||a'| + |c||b'|}`.
pub fn tensor3_mul<A: Algebra + ?Sized>(x: &Tensor3, y: &Tensor3, alg: &A) -> Result<Tensor3> {
    check_dim(alg, &[x.dim, y.dim])?;
    let mut out = Tensor3::zero(x.dim);
    for (&(a, b, c), s) in &x.entries {
        for (&(a2, b2, c2), t) in &y.entries {
            let mut coef = s * t;
            let flips = alg.odd_pair(b, a2) as u8 + alg.odd_pair(c, a2) as u8 + alg.odd_pair(c, b2) as u8;
            if flips % 2 == 1 {
                coef = -coef;
            }
            for (p, u) in alg.basis_product(a, a2) {
                let cu = &coef * u;
                for (q, v) in alg.basis_product(b, b2) {
                    let cuv = &cu * v;
                    for (r, w) in alg.basis_product(c, c2) {
                        out.add_term(*p, *q, *r, &(&cuv * w));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Placement of a `Tensor2` inside `H⊗H⊗H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// `a⊗b ↦ a⊗b⊗1`
    S12,
    /// `a⊗b ↦ a⊗1⊗b`
    S13,
    /// `a⊗b ↦ 1⊗a⊗b`
    S23,
    /// `(Δ⊗id)`
    DeltaId,
    /// `(id⊗Δ)`
    IdDelta,
}

/// Canonical image of `a` in `H⊗H⊗H` under the given slot pattern.
pub fn embed13_23_12<H: Algebra + Coalgebra + ?Sized>(a: &Tensor2, slot: Slot, host: &H) -> Tensor3 {
    let d = a.dim;
    let unit = host.unit();
    let mut out = Tensor3::zero(d);
    for (i, j, c) in a.terms() {
        match slot {
            Slot::S12 | Slot::S13 | Slot::S23 => {
                for (&u, cu) in unit {
                    let v = c * cu;
                    match slot {
                        Slot::S12 => out.add_term(i, j, u, &v),
                        Slot::S13 => out.add_term(i, u, j, &v),
                        _ => out.add_term(u, i, j, &v),
                    }
                }
            }
            Slot::DeltaId => {
                for (p, q, cd) in host.coproduct(i).terms() {
                    out.add_term(p, q, j, &(c * cd));
                }
            }
            Slot::IdDelta => {
                for (p, q, cd) in host.coproduct(j).terms() {
                    out.add_term(i, p, q, &(c * cd));
                }
            }
        }
    }
    out
}
