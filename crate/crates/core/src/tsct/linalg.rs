//! Linear algebra over `Z[ζ_M]` through one split prime.
//!
//! Entries are mapped to `F_p` with `p ≡ 1 (mod M)`. Non-vanishing of the
//! image certifies non-vanishing over the field. Integer solutions found mod
//! `p` are lifted symmetrically and then re-checked exactly by the caller.

use crate::arith::{mod_inv, mod_mul, mod_pow, primitive_root_of_unity, split_prime};
use crate::cyclo::Cyclotomic;
use crate::Error;

/// Reduction `Q(ζ_M) ⊃ Z[ζ_M] → F_p`, `ζ_M ↦ ω`.
#[derive(Clone, Debug)]
pub struct ModularImage {
    pub p: u64,
    pub m: u64,
    powers: Vec<u64>,
}

impl ModularImage {
    pub fn new(m: u64) -> Self {
        let p = split_prime(m);
        let omega = primitive_root_of_unity(m, p);
        let mut powers = Vec::with_capacity(m as usize);
        let mut x = 1u64;
        for _ in 0..m {
            powers.push(x);
            x = mod_mul(x, omega, p);
        }
        ModularImage { p, m, powers }
    }

    pub fn reduce(&self, x: &Cyclotomic) -> Result<u64, Error> {
        let c = x.conductor();
        if !self.m.is_multiple_of(c) {
            return Err(Error::CheckFailed(format!("conductor {c} does not divide {}", self.m)));
        }
        let step = self.m / c;
        let p = self.p;
        let mut acc = 0u64;
        for &(e, k) in x.terms() {
            let w = self.powers[((e as u64 * step) % self.m) as usize];
            acc = (acc + mod_mul(w, k.rem_euclid(p as i64) as u64, p)) % p;
        }
        let den = x.denominator();
        if den != 1 {
            let inv = mod_inv(den.rem_euclid(p as i64), p as i64)
                .ok_or_else(|| Error::CheckFailed(format!("denominator {den} vanishes mod {p}")))?;
            acc = mod_mul(acc, inv as u64, p);
        }
        Ok(acc)
    }

    pub fn reduce_matrix(&self, rows: &[Vec<Cyclotomic>]) -> Result<Vec<Vec<u64>>, Error> {
        rows.iter().map(|r| r.iter().map(|x| self.reduce(x)).collect()).collect()
    }

    /// Symmetric lift to `(-p/2, p/2]`.
    pub fn lift(&self, x: u64) -> i64 {
        if x > self.p / 2 {
            -((self.p - x) as i64)
        } else {
            x as i64
        }
    }
}

/// Inverse of a square matrix over `F_p` by Gauss–Jordan; `None` if singular.
pub fn inverse_mod(a: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = a.len();
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix is not square");
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r][col] != 0)?;
        m.swap(col, pivot);
        let inv = mod_pow(m[col][col], p - 2, p);
        for x in m[col].iter_mut() {
            *x = mod_mul(*x, inv, p);
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - mod_mul(f, y, p)) % p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Row vector times matrix over `F_p`.
pub fn vec_mul_mod(x: &[u64], a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let cols = a.first().map_or(0, Vec::len);
    let mut out = vec![0u64; cols];
    for (xi, row) in x.iter().zip(a) {
        if *xi == 0 {
            continue;
        }
        for (o, &y) in out.iter_mut().zip(row) {
            *o = (*o + mod_mul(*xi, y, p)) % p;
        }
    }
    out
}
