//! Characters and idempotents of abelian subgroups, bicharacters on the dual
//! group, and the twists `J = Σ β(s,t) E_s ⊗ E_t` they define.

use crate::constructions::group::{AbelianSubgroup, FiniteGroup};
use crate::error::{Error, Result};
use crate::scalars::CycScalar;
use crate::tensor::{add_term, Sparse, Tensor2};

/// Character table of an abelian subgroup and the matching primitive idempotents.
#[derive(Clone, Debug)]
pub struct Characters {
    /// `values[s][a]` is `χ_s` evaluated at the `a`-th element of `A`.
    pub values: Vec<Vec<CycScalar>>,
    /// `E_s = |A|⁻¹ Σ_a χ_s(a)⁻¹ a`, expressed in the host basis.
    pub idempotents: Vec<Sparse>,
}

/// `χ_s(a) = Π ζ_{n_i}^{s_i a_i}` written as an exponent of `ζ_N`, `N = exp(A)`.
fn character_exponent(a: &AbelianSubgroup, s: usize, x: usize) -> i64 {
    let n = a.exponent();
    let (cs, cx) = (a.coords_of(s), a.coords_of(x));
    a.factors()
        .iter()
        .enumerate()
        .map(|(i, &f)| (cs[i] as i64 * cx[i] as i64 % f as i64) * (n / f) as i64)
        .sum()
}

/// Characters of `A` with idempotents placed in a host basis via `host_index`
/// (group element of `G` ↦ basis index of the host algebra).
pub fn characters_in(a: &AbelianSubgroup, host_index: &[usize]) -> Characters {
    let n = a.exponent();
    let order = a.order();
    let inv_order = CycScalar::from_frac(1, order as i64);
    let values: Vec<Vec<CycScalar>> = (0..order)
        .map(|s| (0..order).map(|x| CycScalar::root_of_unity(n, character_exponent(a, s, x))).collect())
        .collect();
    let idempotents = (0..order)
        .map(|s| {
            let mut e = Sparse::new();
            for (x, &g) in a.elements().iter().enumerate() {
                let c = &CycScalar::root_of_unity(n, -character_exponent(a, s, x)) * &inv_order;
                add_term(&mut e, host_index[g], &c);
            }
            e
        })
        .collect();
    Characters { values, idempotents }
}

/// Characters of an abelian subgroup with idempotents in `k[G]`.
pub fn subgroup_characters(g: &FiniteGroup, a: &AbelianSubgroup) -> Characters {
    let id: Vec<usize> = (0..g.order()).collect();
    characters_in(a, &id)
}

/// Characters of an abelian group carrying invariant-factor coordinates.
pub fn characters(g: &FiniteGroup) -> Result<Characters> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian("characters of a non-abelian group".into()));
    }
    let a = AbelianSubgroup::whole(g)?;
    Ok(subgroup_characters(g, &a))
}

/// A bimultiplicative pairing `β: Â × Â → k^×` with values `ζ_N^{values[s][t]}`,
/// `N` the exponent of `Â ≅ Z_{n_1} × ... × Z_{n_r}`.
///
/// Labels `s, t` use the same mixed-radix order as [`AbelianSubgroup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bicharacter {
    factors: Vec<u32>,
    exponent: u32,
    values: Vec<Vec<i64>>,
}

fn coords(factors: &[u32], mut idx: usize) -> Vec<u32> {
    let mut c = vec![0; factors.len()];
    for i in (0..factors.len()).rev() {
        c[i] = (idx % factors[i] as usize) as u32;
        idx /= factors[i] as usize;
    }
    c
}

fn index(factors: &[u32], c: &[u32]) -> usize {
    c.iter().zip(factors).fold(0usize, |acc, (&x, &f)| acc * f as usize + x as usize)
}

impl Bicharacter {
    /// Validates table shape and bimultiplicativity (exponents reduced mod `N`).
    pub fn new(factors: Vec<u32>, values: Vec<Vec<i64>>) -> Result<Self> {
        use num_integer::Integer;
        if factors.contains(&0) {
            return Err(Error::Bicharacter("zero factor".into()));
        }
        let order: usize = factors.iter().map(|&f| f as usize).product();
        let exponent = factors.iter().fold(1u32, |acc, &f| acc.lcm(&f));
        if values.len() != order || values.iter().any(|r| r.len() != order) {
            return Err(Error::Bicharacter(format!("table must be {order}x{order}")));
        }
        let n = exponent as i64;
        let values: Vec<Vec<i64>> = values.into_iter().map(|r| r.into_iter().map(|v| v.rem_euclid(n)).collect()).collect();
        let add = |s: usize, t: usize| -> usize {
            let (a, b) = (coords(&factors, s), coords(&factors, t));
            let sum: Vec<u32> = (0..factors.len()).map(|i| (a[i] + b[i]) % factors[i]).collect();
            index(&factors, &sum)
        };
        for s in 0..order {
            for s2 in 0..order {
                let ss = add(s, s2);
                for t in 0..order {
                    if values[ss][t] != (values[s][t] + values[s2][t]).rem_euclid(n)
                        || values[t][ss] != (values[t][s] + values[t][s2]).rem_euclid(n)
                    {
                        return Err(Error::Bicharacter(format!("not bimultiplicative at ({s}, {s2}, {t})")));
                    }
                }
            }
        }
        Ok(Bicharacter { factors, exponent, values })
    }

    pub fn trivial(factors: &[u32]) -> Self {
        let order: usize = factors.iter().map(|&f| f as usize).product();
        Self::new(factors.to_vec(), vec![vec![0; order]; order]).expect("trivial pairing is bimultiplicative")
    }

    /// Pairing with `β(e_i, e_j) = ζ_N^{gen[i][j]}` on the standard generators.
    pub fn from_generator_exponents(factors: &[u32], gen: &[Vec<i64>]) -> Result<Self> {
        let order: usize = factors.iter().map(|&f| f as usize).product();
        let r = factors.len();
        if gen.len() != r || gen.iter().any(|row| row.len() != r) {
            return Err(Error::Bicharacter("generator matrix has the wrong shape".into()));
        }
        let values = (0..order)
            .map(|s| {
                let cs = coords(factors, s);
                (0..order)
                    .map(|t| {
                        let ct = coords(factors, t);
                        (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).map(|(i, j)| cs[i] as i64 * ct[j] as i64 * gen[i][j]).sum()
                    })
                    .collect()
            })
            .collect();
        Self::new(factors.to_vec(), values)
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Exponent table, entries reduced into `[0, N)`.
    pub fn exponents(&self) -> &[Vec<i64>] {
        &self.values
    }

    pub fn value(&self, s: usize, t: usize) -> CycScalar {
        CycScalar::root_of_unity(self.exponent, self.values[s][t])
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().flatten().all(|&v| v == 0)
    }

    /// Nondegeneracy of the alternating form `b(s,t) = β(s,t) β(t,s)⁻¹`:
    /// only `s = 0` pairs trivially with everything.
    pub fn is_nondegenerate(&self) -> bool {
        let n = self.exponent as i64;
        (1..self.order()).all(|s| (0..self.order()).any(|t| (self.values[s][t] - self.values[t][s]).rem_euclid(n) != 0))
    }
}

/// `J = Σ_{s,t} β(s,t) E_s ⊗ E_t` in `k[G] ⊗ k[G]`.
pub fn build_bicharacter_twist(g: &FiniteGroup, a: &AbelianSubgroup, beta: &Bicharacter) -> Result<Tensor2> {
    let id: Vec<usize> = (0..g.order()).collect();
    build_bicharacter_twist_in(g.order(), &id, a, beta)
}

/// Same twist placed in a host algebra of dimension `host_dim` whose group-like
/// basis vectors are `host_index[g]`.
pub fn build_bicharacter_twist_in(
    host_dim: usize,
    host_index: &[usize],
    a: &AbelianSubgroup,
    beta: &Bicharacter,
) -> Result<Tensor2> {
    if beta.factors() != a.factors() {
        return Err(Error::Bicharacter(format!(
            "pairing factors {:?} do not match subgroup factors {:?}",
            beta.factors(),
            a.factors()
        )));
    }
    let chars = characters_in(a, host_index);
    let mut j = Tensor2::zero(host_dim);
    for s in 0..a.order() {
        for t in 0..a.order() {
            let b = beta.value(s, t);
            for (&x, cx) in &chars.idempotents[s] {
                let bx = &b * cx;
                for (&y, cy) in &chars.idempotents[t] {
                    j.add_term(x, y, &(&bx * cy));
                }
            }
        }
    }
    Ok(j)
}
