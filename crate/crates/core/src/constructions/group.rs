//! Finite groups by Cayley table, matrix representations and abelian subgroups.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::scalars::CycScalar;
use crate::tensor::Mat;

/// Coordinates of an abelian group as a product of cyclic groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianCoords {
    /// Orders `n_1, ..., n_r` of the cyclic factors.
    pub factors: Vec<u32>,
    /// `coords[g]` is the image of element `g` in `Z_{n_1} × ... × Z_{n_r}`.
    pub coords: Vec<Vec<u32>>,
}

/// A finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    abelian: Option<AbelianCoords>,
}

impl FiniteGroup {
    /// Validates the table (Latin square, identity, associativity) and the
    /// optional cyclic-product coordinates.
    pub fn new(table: Vec<Vec<usize>>, identity: usize, abelian: Option<AbelianCoords>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Group("empty group".into()));
        }
        if identity >= n {
            return Err(Error::Group(format!("identity {identity} out of range")));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Group(format!("row {a} has length {}", row.len())));
            }
            let distinct: BTreeSet<_> = row.iter().copied().collect();
            if distinct.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::Group(format!("row {a} is not a permutation")));
            }
        }
        for b in 0..n {
            let col: BTreeSet<_> = (0..n).map(|a| table[a][b]).collect();
            if col.len() != n {
                return Err(Error::Group(format!("column {b} is not a permutation")));
            }
        }
        for a in 0..n {
            if table[identity][a] != a || table[a][identity] != a {
                return Err(Error::Group(format!("{identity} is not an identity (fails at {a})")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Group(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).expect("Latin square has inverses"))
            .collect();
        let g = FiniteGroup { table, identity, inverses, abelian: None };
        match abelian {
            Some(coords) => g.with_coordinates(coords),
            None => Ok(g),
        }
    }

    /// Attaches cyclic-product coordinates after checking they define an isomorphism.
    pub fn with_coordinates(mut self, ab: AbelianCoords) -> Result<Self> {
        let n = self.order();
        let prod: usize = ab.factors.iter().map(|&f| f as usize).product();
        if ab.factors.contains(&0) || prod != n || ab.coords.len() != n {
            return Err(Error::Group("invariant factors do not match the group order".into()));
        }
        if ab.coords.iter().any(|c| c.len() != ab.factors.len() || c.iter().zip(&ab.factors).any(|(x, f)| x >= f)) {
            return Err(Error::Group("coordinate out of range".into()));
        }
        let distinct: BTreeSet<_> = ab.coords.iter().collect();
        if distinct.len() != n {
            return Err(Error::Group("coordinate map is not injective".into()));
        }
        for a in 0..n {
            for b in 0..n {
                let sum: Vec<u32> = (0..ab.factors.len())
                    .map(|i| (ab.coords[a][i] + ab.coords[b][i]) % ab.factors[i])
                    .collect();
                if ab.coords[self.table[a][b]] != sum {
                    return Err(Error::Group(format!("coordinate map is not a homomorphism at ({a}, {b})")));
                }
            }
        }
        self.abelian = Some(ab);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn coordinates(&self) -> Option<&AbelianCoords> {
        self.abelian.as_ref()
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| self.is_central(a))
    }

    pub fn is_central(&self, a: usize) -> bool {
        (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a))
    }

    /// Central elements `u` with `u² = 1`, identity included, in index order.
    pub fn central_involutions(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&u| self.is_central(u) && self.mul(u, u) == self.identity)
            .collect()
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        let set: BTreeSet<_> = elements.iter().copied().collect();
        set.contains(&self.identity)
            && set.iter().all(|&a| a < self.order())
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// Homomorphisms `G → {±1}`, each as a vector of signs, trivial character first.
    pub fn sign_characters(&self) -> Vec<Vec<i8>> {
        // greedy generating set
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for a in 0..self.order() {
            if !span.contains(&a) {
                gens.push(a);
                span = self.generated_subgroup(&gens);
            }
        }
        let mut out = Vec::new();
        for mask in 0..(1u32 << gens.len()) {
            let mut val: BTreeMap<usize, i8> = BTreeMap::from([(self.identity, 1)]);
            let mut queue = VecDeque::from([self.identity]);
            let mut consistent = true;
            while let Some(x) = queue.pop_front() {
                for (bit, &g) in gens.iter().enumerate() {
                    let s = if mask >> bit & 1 == 1 { -1 } else { 1 };
                    let y = self.mul(x, g);
                    let v = val[&x] * s;
                    match val.get(&y) {
                        Some(&w) if w != v => consistent = false,
                        Some(_) => {}
                        None => {
                            val.insert(y, v);
                            queue.push_back(y);
                        }
                    }
                }
            }
            if consistent {
                let chi: Vec<i8> = (0..self.order()).map(|a| val[&a]).collect();
                let hom = (0..self.order())
                    .all(|a| (0..self.order()).all(|b| chi[self.mul(a, b)] == chi[a] * chi[b]));
                if hom {
                    out.push(chi);
                }
            }
        }
        out.sort_by(|a, b| b.cmp(a));
        out.dedup();
        out
    }

    /// `Z_{n_1} × ... × Z_{n_r}` with mixed-radix indexing (last factor fastest).
    pub fn cyclic_product(factors: &[u32]) -> Self {
        let n: usize = factors.iter().map(|&f| f as usize).product();
        let coords: Vec<Vec<u32>> = (0..n)
            .map(|mut idx| {
                let mut c = vec![0; factors.len()];
                for i in (0..factors.len()).rev() {
                    c[i] = (idx % factors[i] as usize) as u32;
                    idx /= factors[i] as usize;
                }
                c
            })
            .collect();
        let index = |c: &[u32]| c.iter().zip(factors).fold(0usize, |acc, (&x, &f)| acc * f as usize + x as usize);
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let s: Vec<u32> = (0..factors.len()).map(|i| (coords[a][i] + coords[b][i]) % factors[i]).collect();
                        index(&s)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::new(table, 0, Some(AbelianCoords { factors: factors.to_vec(), coords }))
            .expect("cyclic products are groups")
    }

    pub fn cyclic(n: u32) -> Self {
        if n == 1 {
            Self::cyclic_product(&[])
        } else {
            Self::cyclic_product(&[n])
        }
    }

    /// Closure of a set of permutations, elements sorted lexicographically.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Self {
        let deg = gens.first().map_or(0, Vec::len);
        let id: Vec<usize> = (0..deg).collect();
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
        let mut seen = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = compose(&x, g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let elems: Vec<Vec<usize>> = seen.into_iter().collect();
        let index: BTreeMap<&Vec<usize>, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let table = elems
            .iter()
            .map(|p| elems.iter().map(|q| index[&compose(p, q)]).collect())
            .collect();
        FiniteGroup::new(table, 0, None).expect("permutation groups are groups")
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]])
    }

    /// Symmetries of a square.
    pub fn dihedral4() -> Self {
        Self::from_permutations(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])
    }

    /// Quaternion units `±1, ±i, ±j, ±k`; element `2u + s` is `(-1)^s q_u`.
    pub fn quaternion8() -> Self {
        // q_a q_b = sign * q_c for units 1, i, j, k
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        let table = (0..8)
            .map(|x: usize| {
                (0..8)
                    .map(|y: usize| {
                        let (c, s) = UNIT[x / 2][y / 2];
                        2 * c + ((x % 2 + y % 2 + s) % 2)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::new(table, 0, None).expect("quaternion table is a group")
    }
}

/// Built-in groups by name: `Z<n>`, `Z2xZ2`, `Z2xZ2xZ2`, `Z4xZ2`, `Z3xZ3`, `S3`, `D4`, `Q8`.
pub fn named_group(name: &str) -> Option<FiniteGroup> {
    match name {
        "S3" => Some(FiniteGroup::symmetric3()),
        "D4" => Some(FiniteGroup::dihedral4()),
        "Q8" => Some(FiniteGroup::quaternion8()),
        _ => {
            let factors: Vec<u32> = name
                .split('x')
                .map(|p| p.strip_prefix('Z').and_then(|n| n.parse().ok()).filter(|&n: &u32| (1..=64).contains(&n)))
                .collect::<Option<_>>()?;
            Some(if factors == [1] { FiniteGroup::cyclic(1) } else { FiniteGroup::cyclic_product(&factors) })
        }
    }
}

/// A matrix representation of a finite group; degree 0 is the zero representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRep {
    degree: usize,
    matrices: Vec<Mat>,
}

impl GroupRep {
    pub fn new(group: &FiniteGroup, degree: usize, matrices: Vec<Mat>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::Shape(format!("{} matrices for a group of order {}", matrices.len(), group.order())));
        }
        if matrices.iter().any(|m| m.rows() != degree || m.cols() != degree) {
            return Err(Error::Shape(format!("representation matrices must be {degree}x{degree}")));
        }
        if !matrices[group.identity()].is_identity() && degree > 0 {
            return Err(Error::Group("identity does not act trivially".into()));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if matrices[a].mul(&matrices[b])? != matrices[group.mul(a, b)] {
                    return Err(Error::Group(format!("ρ({a})ρ({b}) ≠ ρ({a}·{b})")));
                }
            }
        }
        Ok(GroupRep { degree, matrices })
    }

    pub fn zero(group: &FiniteGroup) -> Self {
        GroupRep { degree: 0, matrices: vec![Mat::zeros(0, 0); group.order()] }
    }

    /// Direct sum of one-dimensional sign characters.
    pub fn from_signs(group: &FiniteGroup, chars: &[Vec<i8>]) -> Result<Self> {
        let d = chars.len();
        let matrices = (0..group.order())
            .map(|g| {
                let mut m = Mat::zeros(d, d);
                for (i, chi) in chars.iter().enumerate() {
                    m.set(i, i, CycScalar::from_int(chi[g] as i64));
                }
                m
            })
            .collect();
        Self::new(group, d, matrices)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self, g: usize) -> &Mat {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.matrices
    }

    /// Whether `g` acts as `-id` (vacuously true on the zero representation).
    pub fn acts_by_minus_one(&self, g: usize) -> bool {
        let m = &self.matrices[g];
        (0..self.degree).all(|i| {
            (0..self.degree).all(|j| {
                let v = m.get(i, j);
                if i == j { *v == CycScalar::from_int(-1) } else { v.is_zero() }
            })
        })
    }
}

/// An abelian subgroup of `G` with coordinates `A ≅ Z_{n_1} × ... × Z_{n_r}`
/// given by independent commuting generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianSubgroup {
    generators: Vec<usize>,
    factors: Vec<u32>,
    /// element of `G` at each coordinate tuple, mixed-radix, last factor fastest
    elements: Vec<usize>,
}

impl AbelianSubgroup {
    pub fn trivial(group: &FiniteGroup) -> Self {
        AbelianSubgroup { generators: vec![], factors: vec![], elements: vec![group.identity()] }
    }

    /// The subgroup `⟨g_1⟩ × ... × ⟨g_r⟩`; the generators must commute and be independent.
    pub fn from_generators(group: &FiniteGroup, generators: &[usize]) -> Result<Self> {
        if generators.iter().any(|&g| g >= group.order()) {
            return Err(Error::Group("generator out of range".into()));
        }
        for &a in generators {
            for &b in generators {
                if group.mul(a, b) != group.mul(b, a) {
                    return Err(Error::NotAbelian(format!("generators {a} and {b} do not commute")));
                }
            }
        }
        let factors: Vec<u32> = generators.iter().map(|&g| group.element_order(g) as u32).collect();
        let n: usize = factors.iter().map(|&f| f as usize).product();
        let mut elements = Vec::with_capacity(n);
        for idx in 0..n {
            let mut rest = idx;
            let mut c = vec![0usize; factors.len()];
            for i in (0..factors.len()).rev() {
                c[i] = rest % factors[i] as usize;
                rest /= factors[i] as usize;
            }
            let g = c
                .iter()
                .zip(generators)
                .fold(group.identity(), |acc, (&k, &gen)| group.mul(acc, group.pow(gen, k)));
            elements.push(g);
        }
        let distinct: BTreeSet<_> = elements.iter().collect();
        if distinct.len() != n {
            return Err(Error::Group(format!("generators {generators:?} are not independent")));
        }
        Ok(AbelianSubgroup { generators: generators.to_vec(), factors, elements })
    }

    /// The whole group, using its attached coordinates.
    pub fn whole(group: &FiniteGroup) -> Result<Self> {
        let ab = group
            .coordinates()
            .ok_or_else(|| Error::NotAbelian("group carries no invariant factors".into()))?;
        let n = group.order();
        let factors = ab.factors.clone();
        let mut elements = vec![0; n];
        for g in 0..n {
            let idx = ab.coords[g].iter().zip(&factors).fold(0usize, |acc, (&x, &f)| acc * f as usize + x as usize);
            elements[idx] = g;
        }
        let generators = (0..factors.len())
            .map(|i| {
                let mut c = vec![0u32; factors.len()];
                c[i] = 1;
                (0..n).find(|&g| ab.coords[g] == c).expect("unit coordinate exists")
            })
            .collect();
        Ok(AbelianSubgroup { generators, factors, elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Group elements in coordinate order.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Coordinate tuple of label `idx` (mixed radix, last factor fastest).
    pub fn coords_of(&self, mut idx: usize) -> Vec<u32> {
        let mut c = vec![0; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            c[i] = (idx % self.factors[i] as usize) as u32;
            idx /= self.factors[i] as usize;
        }
        c
    }

    /// Exponent of `A`: the lcm of the factors.
    pub fn exponent(&self) -> u32 {
        use num_integer::Integer;
        self.factors.iter().fold(1u32, |acc, &f| acc.lcm(&f))
    }
}

/// All subgroups `⟨a⟩ × ⟨b⟩ ≅ Z_n × Z_n` of `G` (n ≥ 2), one generator pair per
/// subgroup, ordered by (n, sorted element list).
pub fn square_abelian_subgroups(group: &FiniteGroup) -> Vec<AbelianSubgroup> {
    let mut found: BTreeMap<(usize, Vec<usize>), AbelianSubgroup> = BTreeMap::new();
    let n = group.order();
    for a in 0..n {
        let oa = group.element_order(a);
        if oa < 2 {
            continue;
        }
        for b in a + 1..n {
            if group.element_order(b) != oa || group.mul(a, b) != group.mul(b, a) {
                continue;
            }
            if let Ok(sub) = AbelianSubgroup::from_generators(group, &[a, b]) {
                let mut key: Vec<usize> = sub.elements.clone();
                key.sort_unstable();
                found.entry((oa, key)).or_insert(sub);
            }
        }
    }
    found.into_values().collect()
}
