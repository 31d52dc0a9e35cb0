//! Reduction of `ℓ`-integral cyclotomic numbers into a finite field of
//! characteristic `ℓ`.
//!
//! The field is `F_ℓ[X]/(f)` with `f` the smallest monic irreducible of degree
//! `d = ord_{m'}(ℓ)`. A fixed element `y` of order exactly `m'` is the image of
//! `ζ_{m'}`; roots of unity of `ℓ`-power order map to 1.
//!
//! For `SL2(q)` every character value lies in `Q(ζ_{q-1})` or `Q(ζ_{q+1})`.
//! [`ResidueSystem`] keeps one field per torus: the two cyclotomic fields are
//! linearly disjoint, so any pair of primes above `ℓ` lies under a common
//! prime of the compositum and the two reductions are jointly consistent.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigUint;
use num_integer::Integer;

use super::Cyclotomic;
use crate::arith::{mod_inv, mod_pow, multiplicative_order, p_prime_part, prime_divisors, valuation};
use crate::Error;

/// Degree bound on the residue field; larger fields are refused.
pub const MAX_RESIDUE_DEGREE: u64 = 64;

/// An element of one of the residue fields. Elements of different fields
/// compare equal only when both lie in the prime field `F_ℓ`.
#[derive(Clone, Debug)]
pub struct ResidueElement {
    tag: u8,
    coeffs: Vec<u64>,
}

impl ResidueElement {
    /// Coefficients in the power basis, lowest degree first.
    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value in `F_ℓ`, if the element lies in the prime field.
    pub fn as_prime_field(&self) -> Option<u64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then(|| self.coeffs[0])
    }
}

impl PartialEq for ResidueElement {
    fn eq(&self, other: &Self) -> bool {
        if self.tag == other.tag {
            return self.coeffs == other.coeffs;
        }
        match (self.as_prime_field(), other.as_prime_field()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for ResidueElement {}

impl std::hash::Hash for ResidueElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self.as_prime_field() {
            Some(c) => (u8::MAX, c).hash(state),
            None => (self.tag, &self.coeffs).hash(state),
        }
    }
}

impl std::fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

pub struct ResidueField {
    tag: u8,
    ell: u64,
    m_prime: u64,
    degree: usize,
    /// monic, lowest degree first, length `degree + 1`
    modulus: Vec<u64>,
    root: ResidueElement,
    powers: Mutex<HashMap<u64, ResidueElement>>,
}

impl std::fmt::Debug for ResidueField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ResidueField")
            .field("ell", &self.ell)
            .field("m_prime", &self.m_prime)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .field("root", &self.root)
            .finish()
    }
}

impl Clone for ResidueField {
    fn clone(&self) -> Self {
        ResidueField {
            tag: self.tag,
            ell: self.ell,
            m_prime: self.m_prime,
            degree: self.degree,
            modulus: self.modulus.clone(),
            root: self.root.clone(),
            powers: Mutex::new(HashMap::new()),
        }
    }
}

// ---- dense polynomials over F_ℓ, lowest degree first ----

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db] as i64, p as i64).unwrap() as u64;
    a = trim(a);
    while a.len() > db {
        let top = a.len() - 1;
        let c = a[top] * lead_inv % p;
        if c != 0 {
            for i in 0..=db {
                let idx = top - db + i;
                a[idx] = (a[idx] + p - c * b[i] % p) % p;
            }
        }
        a = trim(a);
    }
    a
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

impl ResidueField {
    /// A field of characteristic `ell` containing a primitive `m_prime`-th root of unity.
    pub fn new(ell: u64, m_prime: u64) -> Result<Self, Error> {
        if ell < 2 || !crate::arith::is_prime(ell) || ell >= (1 << 31) {
            return Err(Error::InvalidParameters(format!("characteristic {ell} is not a usable prime")));
        }
        if m_prime == 0 || m_prime.is_multiple_of(ell) {
            return Err(Error::InvalidParameters(format!("m' = {m_prime} must be coprime to {ell}")));
        }
        let degree = multiplicative_order(ell % m_prime, m_prime);
        if degree > MAX_RESIDUE_DEGREE {
            return Err(Error::InvalidParameters(format!(
                "residue field degree {degree} exceeds {MAX_RESIDUE_DEGREE}"
            )));
        }
        let degree = degree as usize;
        let modulus = Self::smallest_irreducible(ell, degree);
        let mut field = ResidueField {
            tag: 0,
            ell,
            m_prime,
            degree,
            modulus,
            root: ResidueElement { tag: 0, coeffs: vec![0; degree] },
            powers: Mutex::new(HashMap::new()),
        };
        field.root = field.find_root();
        Ok(field)
    }

    /// Same field with `ζ_{m'} ↦ y^k` instead of `y`.
    pub fn with_root_power(&self, k: u64) -> Result<Self, Error> {
        if k.gcd(&self.m_prime) != 1 {
            return Err(Error::InvalidParameters(format!("{k} is not a unit modulo {}", self.m_prime)));
        }
        let mut f = self.clone();
        f.root = self.pow(&self.root, &BigUint::from(k));
        Ok(f)
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn m_prime(&self) -> u64 {
        self.m_prime
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Image of `ζ_{m'}`.
    pub fn root(&self) -> &ResidueElement {
        &self.root
    }

    /// Lexicographically smallest monic irreducible of the given degree
    /// (coefficients compared from `X^{d-1}` down to the constant term).
    fn smallest_irreducible(p: u64, d: usize) -> Vec<u64> {
        let mut coeffs = vec![0u64; d + 1];
        coeffs[d] = 1;
        loop {
            // odometer on the constant term upwards
            let mut i = 0;
            loop {
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
                assert!(i < d, "no irreducible polynomial found");
            }
            if coeffs[0] != 0 && Self::is_irreducible(&coeffs, p) {
                return coeffs;
            }
        }
    }

    /// Ben-Or: `f` of degree `d` is irreducible iff `gcd(f, X^{p^i} - X) = 1` for `i ≤ d/2`.
    fn is_irreducible(f: &[u64], p: u64) -> bool {
        let d = f.len() - 1;
        if d == 1 {
            return true;
        }
        let mulmod = |a: &[u64], b: &[u64]| -> Vec<u64> {
            let mut r = vec![0u64; a.len() + b.len()];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    r[i + j] = (r[i + j] + x * y) % p;
                }
            }
            poly_rem(r, f, p)
        };
        let powmod = |a: &[u64], mut e: u64| -> Vec<u64> {
            let mut base = a.to_vec();
            let mut r = vec![1u64];
            while e > 0 {
                if e & 1 == 1 {
                    r = mulmod(&r, &base);
                }
                base = mulmod(&base, &base);
                e >>= 1;
            }
            r
        };
        let x = vec![0u64, 1];
        let mut h = x.clone();
        for _ in 1..=d / 2 {
            h = powmod(&h, p);
            let mut diff = h.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = poly_gcd(f, &diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    fn find_root(&self) -> ResidueElement {
        let order = BigUint::from(self.ell).pow(self.degree as u32) - 1u32;
        let cofactor = &order / self.m_prime;
        let primes = prime_divisors(self.m_prime);
        let one = self.one();
        let mut candidate = vec![0u64; self.degree];
        loop {
            // enumerate non-constant elements, lowest coefficient fastest
            let mut i = 0;
            loop {
                candidate[i] += 1;
                if candidate[i] < self.ell {
                    break;
                }
                candidate[i] = 0;
                i += 1;
            }
            let y = self.pow(&self.element(candidate.clone()), &cofactor);
            if y == self.zero() {
                continue;
            }
            if primes
                .iter()
                .all(|&p| self.pow(&y, &BigUint::from(self.m_prime / p)) != one)
            {
                return y;
            }
        }
    }

    fn element(&self, coeffs: Vec<u64>) -> ResidueElement {
        ResidueElement { tag: self.tag, coeffs }
    }

    fn retag(mut self, tag: u8) -> Self {
        self.tag = tag;
        self.root.tag = tag;
        self
    }

    pub fn zero(&self) -> ResidueElement {
        self.element(vec![0; self.degree])
    }

    pub fn one(&self) -> ResidueElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> ResidueElement {
        let mut v = vec![0; self.degree];
        v[0] = n.rem_euclid(self.ell as i64) as u64;
        self.element(v)
    }

    pub fn add(&self, a: &ResidueElement, b: &ResidueElement) -> ResidueElement {
        self.element(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| (x + y) % self.ell).collect())
    }

    pub fn scale(&self, a: &ResidueElement, k: u64) -> ResidueElement {
        self.element(a.coeffs.iter().map(|x| x * (k % self.ell) % self.ell).collect())
    }

    pub fn mul(&self, a: &ResidueElement, b: &ResidueElement) -> ResidueElement {
        let p = self.ell;
        let d = self.degree;
        let mut r = vec![0u64; 2 * d];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % p;
            }
        }
        // reduce with the monic modulus
        for top in (d..2 * d).rev() {
            let c = r[top];
            if c != 0 {
                r[top] = 0;
                for i in 0..d {
                    r[top - d + i] = (r[top - d + i] + p - c * self.modulus[i] % p) % p;
                }
            }
        }
        r.truncate(d);
        self.element(r)
    }

    pub fn pow(&self, a: &ResidueElement, e: &BigUint) -> ResidueElement {
        let mut r = self.one();
        for i in (0..e.bits()).rev() {
            r = self.mul(&r, &r);
            if e.bit(i) {
                r = self.mul(&r, a);
            }
        }
        r
    }

    fn root_power(&self, k: u64) -> ResidueElement {
        if let Some(v) = self.powers.lock().unwrap().get(&k) {
            return v.clone();
        }
        let v = self.pow(&self.root, &BigUint::from(k));
        self.powers.lock().unwrap().insert(k, v.clone());
        v
    }

    /// The residue of an `ℓ`-integral cyclotomic number.
    pub fn reduce(&self, a: &Cyclotomic) -> Result<ResidueElement, Error> {
        let p = self.ell;
        let den = a.denominator() as u64;
        if den.is_multiple_of(p) {
            return Err(Error::NotIntegral(a.term_string()));
        }
        let m = a.conductor();
        let la = valuation(m, p);
        let m1 = m / p.pow(la);
        if !self.m_prime.is_multiple_of(m1) {
            return Err(Error::InvalidParameters(format!(
                "conductor {m} not covered by the residue field (m' = {})",
                self.m_prime
            )));
        }
        let u = if m1 == 1 { 0 } else { mod_inv(mod_pow(p, la as u64, m1) as i64, m1 as i64).unwrap() as u64 };
        let mut acc = self.zero();
        for &(e, n) in a.terms() {
            let k = (e as u64 % m1) * u % m1 * (self.m_prime / m1);
            let c = n.rem_euclid(p as i64) as u64;
            if c != 0 {
                acc = self.add(&acc, &self.scale(&self.root_power(k), c));
            }
        }
        let inv = mod_inv((den % p) as i64, p as i64).unwrap() as u64;
        Ok(self.scale(&acc, inv))
    }
}

/// Residue fields for the two tori of `SL2(q)`.
#[derive(Clone, Debug)]
pub struct ResidueSystem {
    split: ResidueField,
    nonsplit: ResidueField,
}

impl ResidueSystem {
    /// Fields for the `ℓ'`-parts of `q - 1` and `q + 1`.
    pub fn new(q: u64, ell: u64) -> Result<Self, Error> {
        Ok(ResidueSystem {
            split: ResidueField::new(ell, p_prime_part(q - 1, ell))?.retag(1),
            nonsplit: ResidueField::new(ell, p_prime_part(q + 1, ell))?.retag(2),
        })
    }

    /// Replaces the images of `ζ_{m'}` by their `k`-th and `k'`-th powers.
    pub fn with_root_powers(&self, k: u64, k_prime: u64) -> Result<Self, Error> {
        Ok(ResidueSystem {
            split: self.split.with_root_power(k)?,
            nonsplit: self.nonsplit.with_root_power(k_prime)?,
        })
    }

    pub fn split(&self) -> &ResidueField {
        &self.split
    }

    pub fn nonsplit(&self) -> &ResidueField {
        &self.nonsplit
    }

    pub fn ell(&self) -> u64 {
        self.split.ell
    }

    /// Reduces a value of `Q(ζ_{q-1})` or `Q(ζ_{q+1})`.
    pub fn reduce(&self, a: &Cyclotomic) -> Result<ResidueElement, Error> {
        let m1 = p_prime_part(a.conductor(), self.ell());
        if self.split.m_prime.is_multiple_of(m1) {
            self.split.reduce(a)
        } else if self.nonsplit.m_prime.is_multiple_of(m1) {
            self.nonsplit.reduce(a)
        } else {
            Err(Error::InvalidParameters(format!(
                "conductor {} mixes both tori",
                a.conductor()
            )))
        }
    }
}
