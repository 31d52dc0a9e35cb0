//! Exact arithmetic in cyclotomic fields.
//!
//! A [`Cyclotomic`] is stored as `(1/den) · Σ n_e ζ_m^e` with integer `n_e`,
//! where the exponents range over the Zumbroich basis of `Q(ζ_m)` (GAP's
//! choice with a symmetric window for odd primes) and `m` is the conductor of
//! the value. The representation is unique, so structural equality is field
//! equality.

mod residue;
mod sign;

pub use residue::{ResidueElement, ResidueField, ResidueSystem, MAX_RESIDUE_DEGREE};

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Rational64;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, mod_inv};
use crate::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    m: u32,
    den: i64,
    terms: Vec<(u32, i64)>,
}

/// Per-conductor data for the basis reduction.
struct ConductorInfo {
    /// `(p, a, p^a, (m / p^a)^{-1} mod p^a)`
    primes: Vec<(u64, u32, u64, u64)>,
}

thread_local! {
    static CONDUCTORS: RefCell<HashMap<u64, std::rc::Rc<ConductorInfo>>> = RefCell::new(HashMap::new());
}

fn conductor_info(m: u64) -> std::rc::Rc<ConductorInfo> {
    CONDUCTORS.with(|cache| {
        cache
            .borrow_mut()
            .entry(m)
            .or_insert_with(|| {
                let primes = factorize(m)
                    .into_iter()
                    .map(|(p, a)| {
                        let pa = p.pow(a);
                        let cof = (m / pa) % pa;
                        let inv = if pa == 1 { 0 } else { mod_inv(cof as i64, pa as i64).unwrap() as u64 };
                        (p, a, pa, inv)
                    })
                    .collect();
                std::rc::Rc::new(ConductorInfo { primes })
            })
            .clone()
    })
}

fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("cyclotomic coefficient overflow")
}

/// Reduces a dense coefficient vector over `Q(ζ_m)` to canonical form.
fn canonicalize(mut m: u64, den: i128, mut c: Vec<i128>) -> Cyclotomic {
    debug_assert_eq!(c.len() as u64, m);
    assert!(den != 0, "zero denominator");
    // ζ_{2r}^e = (-1)^e ζ_r^{e(r+1)/2} for odd r
    if m % 4 == 2 {
        let r = m / 2;
        let mut d = vec![0i128; r as usize];
        let h = r.div_ceil(2);
        for (e, &x) in c.iter().enumerate() {
            if x != 0 {
                let e = e as u64;
                let t = (e * h % r) as usize;
                if e.is_multiple_of(2) {
                    d[t] += x;
                } else {
                    d[t] -= x;
                }
            }
        }
        m = r;
        c = d;
    }

    // express in the Zumbroich basis
    let info = conductor_info(m);
    for &(p, a, pa, inv) in &info.primes {
        let step = (m / p) as usize;
        let window = (p.pow(a - 1) - 1) / 2;
        for e in 0..m as usize {
            if c[e] == 0 {
                continue;
            }
            let j = (e as u64 % pa) * inv % pa;
            let forbidden = if p == 2 {
                j >= pa / 2
            } else {
                j <= window || pa - j <= window
            };
            if forbidden {
                let x = std::mem::take(&mut c[e]);
                let reps = if p == 2 { 1 } else { p - 1 };
                for t in 1..=reps as usize {
                    c[(e + t * step) % m as usize] -= x;
                }
            }
        }
    }

    // shrink the conductor while the value lies in a proper subfield
    'shrink: loop {
        if m == 1 {
            break;
        }
        let info = conductor_info(m);
        for &(p, a, _, _) in &info.primes {
            let divisor = if p == 2 && a == 2 {
                4
            } else if p == 2 || a >= 2 {
                p
            } else {
                0
            };
            if divisor != 0 {
                if c.iter().enumerate().all(|(e, &x)| x == 0 || (e as u64).is_multiple_of(divisor)) {
                    let m1 = m / divisor;
                    let mut d = vec![0i128; m1 as usize];
                    for (e, &x) in c.iter().enumerate() {
                        if x != 0 {
                            d[e / divisor as usize] = x;
                        }
                    }
                    m = m1;
                    c = d;
                    continue 'shrink;
                }
            } else {
                // a = 1, odd p: each class mod m/p must carry a constant
                // coefficient on its p-1 basis members
                let m1 = (m / p) as usize;
                let mut d = vec![0i128; m1];
                let mut ok = true;
                'class: for r in 0..m1 {
                    let mut value: Option<i128> = None;
                    let mut e0 = 0;
                    for t in 0..p as usize {
                        let e = r + t * m1;
                        if (e as u64).is_multiple_of(p) {
                            e0 = e;
                            continue;
                        }
                        match value {
                            None => value = Some(c[e]),
                            Some(v) if v == c[e] => {}
                            Some(_) => {
                                ok = false;
                                break 'class;
                            }
                        }
                    }
                    if let Some(v) = value {
                        if v != 0 {
                            d[e0 / p as usize] = -v;
                        }
                    }
                }
                if ok {
                    m = m1 as u64;
                    c = d;
                    continue 'shrink;
                }
            }
        }
        break;
    }

    let mut g = den.abs();
    for &x in &c {
        if x != 0 {
            g = g.gcd(&x);
        }
    }
    let sign = if den < 0 { -1 } else { 1 };
    let terms: Vec<(u32, i64)> = c
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(e, &x)| (e as u32, narrow(sign * x / g)))
        .collect();
    if terms.is_empty() {
        return Cyclotomic::zero();
    }
    Cyclotomic { m: m as u32, den: narrow(den.abs() / g), terms }
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { m: 1, den: 1, terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        Cyclotomic { m: 1, den: 1, terms: vec![(0, n)] }
    }

    pub fn from_rational(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        if num == 0 {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let s = den.signum();
        Cyclotomic { m: 1, den: den.abs() / g, terms: vec![(0, s * num / g)] }
    }

    pub fn from_ratio(r: Rational64) -> Self {
        Self::from_rational(*r.numer(), *r.denom())
    }

    /// `ζ_m^e`.
    pub fn root(m: u64, e: i64) -> Self {
        assert!(m > 0);
        let mut c = vec![0i128; m as usize];
        c[e.rem_euclid(m as i64) as usize] = 1;
        canonicalize(m, 1, c)
    }

    /// `ζ_m^e + ζ_m^{-e}`, the value of a torus character sum.
    pub fn root_pair(m: u64, e: i64) -> Self {
        let mut c = vec![0i128; m as usize];
        c[e.rem_euclid(m as i64) as usize] += 1;
        c[(-e).rem_euclid(m as i64) as usize] += 1;
        canonicalize(m, 1, c)
    }

    /// Builds `(1/den) Σ c · ζ_m^e` from arbitrary (possibly repeated) exponents.
    pub fn from_raw<I>(m: u64, den: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i128)>,
    {
        let mut c = vec![0i128; m as usize];
        for (e, x) in terms {
            c[e.rem_euclid(m as i64) as usize] += x;
        }
        canonicalize(m, den as i128, c)
    }

    pub fn conductor(&self) -> u64 {
        self.m as u64
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    /// Basis exponents with integer numerators (divide by [`Self::denominator`]).
    pub fn terms(&self) -> &[(u32, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<Rational64> {
        match (self.m, self.terms.as_slice()) {
            (_, []) => Some(Rational64::from_integer(0)),
            (1, [(0, n)]) => Some(Rational64::new(*n, self.den)),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    fn dense(&self, l: u64, scale: i128) -> Vec<i128> {
        let mut c = vec![0i128; l as usize];
        let k = l / self.m as u64;
        for &(e, n) in &self.terms {
            c[(e as u64 * k) as usize] += n as i128 * scale;
        }
        c
    }

    fn combine(&self, other: &Self, sign: i128) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if sign > 0 { other.clone() } else { -other.clone() };
        }
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return Self::from_ratio(if sign > 0 { a + b } else { a - b });
        }
        let l = (self.m as u64).lcm(&(other.m as u64));
        let den = (self.den as i128).lcm(&(other.den as i128));
        let mut c = self.dense(l, den / self.den as i128);
        let k = l / other.m as u64;
        let s = sign * (den / other.den as i128);
        for &(e, n) in &other.terms {
            c[(e as u64 * k) as usize] += n as i128 * s;
        }
        canonicalize(l, den, c)
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return Self::from_ratio(a * b);
        }
        if let Some(a) = self.as_rational() {
            return other.scale(a);
        }
        if let Some(b) = other.as_rational() {
            return self.scale(b);
        }
        let l = (self.m as u64).lcm(&(other.m as u64));
        let (ka, kb) = (l / self.m as u64, l / other.m as u64);
        let mut c = vec![0i128; l as usize];
        for &(ea, na) in &self.terms {
            for &(eb, nb) in &other.terms {
                let e = (ea as u64 * ka + eb as u64 * kb) % l;
                c[e as usize] += na as i128 * nb as i128;
            }
        }
        canonicalize(l, self.den as i128 * other.den as i128, c)
    }

    /// Multiplication by a rational.
    pub fn scale(&self, r: Rational64) -> Self {
        if *r.numer() == 0 || self.is_zero() {
            return Self::zero();
        }
        let num = *r.numer() as i128;
        let den = self.den as i128 * *r.denom() as i128;
        let mut g = den;
        for &(_, n) in &self.terms {
            g = g.gcd(&(n as i128 * num));
        }
        Cyclotomic {
            m: self.m,
            den: narrow(den / g),
            terms: self.terms.iter().map(|&(e, n)| (e, narrow(n as i128 * num / g))).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(Rational64::from_integer(k))
    }

    /// Image under `ζ ↦ ζ^k` for `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Self {
        let m = self.m as u64;
        if m == 1 {
            return self.clone();
        }
        debug_assert_eq!(k.rem_euclid(m as i64).gcd(&(m as i64)), 1);
        let k = k.rem_euclid(m as i64) as u64;
        let mut c = vec![0i128; m as usize];
        for &(e, n) in &self.terms {
            c[(e as u64 * k % m) as usize] += n as i128;
        }
        canonicalize(m, self.den as i128, c)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Floating-point value under `ζ_m ↦ exp(2πi/m)`.
    pub fn to_f64(&self) -> (f64, f64) {
        let m = self.m as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for &(e, n) in &self.terms {
            let t = std::f64::consts::TAU * e as f64 / m;
            re += n as f64 * t.cos();
            im += n as f64 * t.sin();
        }
        (re / self.den as f64, im / self.den as f64)
    }

    /// Sign of a real value, certified (see the `sign` submodule).
    pub fn real_sign(&self) -> Result<i8, Error> {
        sign::real_sign(self)
    }

    /// Sign computed with multi-precision arithmetic only.
    pub fn real_sign_exact(&self) -> Result<i8, Error> {
        sign::real_sign_fixed_point(self)
    }

    /// Canonical term string, e.g. `-1 + 2*z(5)^1 + 1/3*z(5)^3`; `0` for zero.
    pub fn term_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let coeff = |n: i64| {
            if self.den == 1 {
                n.to_string()
            } else {
                let r = Rational64::new(n, self.den);
                format!("{}/{}", r.numer(), r.denom())
            }
        };
        self.terms
            .iter()
            .map(|&(e, n)| {
                if self.m == 1 {
                    coeff(n)
                } else {
                    format!("{}*z({})^{}", coeff(n), self.m, e)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Short decimal approximation used as a hint in serialised output.
    pub fn approx_string(&self) -> String {
        let (re, im) = self.to_f64();
        let fix = |x: f64| {
            let s = format!("{x:.6}");
            if s == "-0.000000" {
                "0.000000".to_string()
            } else {
                s
            }
        };
        if im.abs() < 1e-9 {
            fix(re)
        } else {
            format!("{}{}{}i", fix(re), if im < 0.0 { "-" } else { "+" }, fix(im.abs()))
        }
    }

    /// Coefficients `[[e, num, den]]` in lowest terms.
    pub fn rational_terms(&self) -> Vec<[i64; 3]> {
        self.terms
            .iter()
            .map(|&(e, n)| {
                let r = Rational64::new(n, self.den);
                [e as i64, *r.numer(), *r.denom()]
            })
            .collect()
    }

    /// Inverse of `from` for `rational_terms`.
    pub fn from_rational_terms(m: u64, terms: &[[i64; 3]]) -> Result<Self, Error> {
        if m == 0 {
            return Err(Error::Serialisation("conductor 0".into()));
        }
        let mut acc = Cyclotomic::zero();
        for t in terms {
            if t[2] == 0 {
                return Err(Error::Serialisation("zero denominator".into()));
            }
            acc = &acc + &Cyclotomic::root(m, t[0]).scale(Rational64::new(t[1], t[2]));
        }
        Ok(acc)
    }
}

/// Accumulates `Σ c·ζ_m^e` at a fixed conductor and canonicalises once.
pub struct RawSum {
    m: u64,
    den: i64,
    c: Vec<i128>,
}

impl RawSum {
    pub fn new(m: u64) -> Self {
        RawSum { m, den: 1, c: vec![0; m as usize] }
    }

    /// Accumulator whose result is divided by `den`.
    pub fn with_denominator(m: u64, den: i64) -> Self {
        RawSum { m, den, c: vec![0; m as usize] }
    }

    pub fn add_root(&mut self, e: i64, coeff: i128) {
        self.c[e.rem_euclid(self.m as i64) as usize] += coeff;
    }

    /// Adds `k · x`; the conductor of `x` must divide `m` and `x` must be integral.
    pub fn add_scaled(&mut self, x: &Cyclotomic, k: i128) {
        assert_eq!(self.m % x.m as u64, 0, "conductor does not divide accumulator");
        assert_eq!(x.den, 1, "accumulator takes integral values only");
        let s = self.m / x.m as u64;
        for &(e, n) in &x.terms {
            self.c[(e as u64 * s) as usize] += n as i128 * k;
        }
    }

    pub fn finish(self) -> Cyclotomic {
        canonicalize(self.m, self.den as i128, self.c)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.term_string())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.term_string())
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.combine(rhs, 1)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.combine(rhs, -1)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.product(rhs)
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        self.combine(&rhs, 1)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        self.combine(&rhs, -1)
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        self.product(&rhs)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(mut self) -> Cyclotomic {
        for t in &mut self.terms {
            t.1 = -t.1;
        }
        self
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -self.clone()
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
        iter.fold(Cyclotomic::zero(), |a, b| &a + &b)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_int(n)
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Cyclotomic", 3)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("terms", &self.rational_terms())?;
        st.serialize_field("approx", &self.approx_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            m: u64,
            terms: Vec<[i64; 3]>,
            #[allow(dead_code)]
            #[serde(default)]
            approx: Option<String>,
        }
        let w = Wire::deserialize(d)?;
        Cyclotomic::from_rational_terms(w.m, &w.terms).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u64, e: i64) -> Cyclotomic {
        Cyclotomic::root(m, e)
    }

    #[test]
    fn small_identities() {
        assert_eq!(&z(3, 1) + &z(3, 2), Cyclotomic::from_int(-1));
        assert_eq!(&z(5, 1) * &z(5, 4), Cyclotomic::one());
        let a = &z(5, 1) + &z(5, 4);
        let b = &z(5, 2) + &z(5, 3);
        assert_eq!(&a * &b, Cyclotomic::from_int(-1));
    }

    #[test]
    fn conductor_is_minimal() {
        assert_eq!(z(6, 1).conductor(), 3);
        assert_eq!(z(4, 2), Cyclotomic::from_int(-1));
        assert_eq!(z(8, 2), z(4, 1));
        assert_eq!(z(9, 3), z(3, 1));
        assert_eq!(z(15, 5), z(3, 1));
        assert_eq!(z(12, 4).conductor(), 3);
        assert_eq!(z(12, 3).conductor(), 4);
        let s: Cyclotomic = (1..15).filter(|e| e % 3 != 0 && e % 5 != 0).map(|e| z(15, e)).sum();
        assert_eq!(s, Cyclotomic::one()); // μ(15) = 1
        let r = &z(7, 1) + &z(7, 6);
        assert_eq!(r.conductor(), 7);
        assert!(r.is_real());
        assert!(!z(7, 1).is_real());
    }

    #[test]
    fn rationals_and_scaling() {
        let h = Cyclotomic::from_rational(3, 6);
        assert_eq!(h.as_rational(), Some(Rational64::new(1, 2)));
        let w = (&z(7, 1) + &z(7, 6)).scale_int(300).scale(Rational64::new(1, 60));
        assert_eq!(w, (&z(7, 1) + &z(7, 6)).scale_int(5));
        let x = z(5, 1).scale(Rational64::new(2, 4));
        assert_eq!(&x + &x, z(5, 1));
        assert_eq!(x.term_string(), "1/2*z(5)^1");
        assert_eq!(Cyclotomic::zero().term_string(), "0");
        assert_eq!(Cyclotomic::from_int(-4).term_string(), "-4");
    }

    #[test]
    fn sum_of_all_roots_vanishes() {
        for m in [1u64, 2, 4, 8, 9, 12, 15, 16, 63, 65] {
            let s: Cyclotomic = (0..m as i64).map(|e| z(m, e)).sum();
            assert_eq!(s, if m == 1 { Cyclotomic::one() } else { Cyclotomic::zero() }, "m = {m}");
        }
    }

    #[test]
    fn raw_sum_matches_incremental() {
        let mut acc = RawSum::new(63);
        let mut direct = Cyclotomic::zero();
        for e in 0..63 {
            acc.add_root(e * 5, e as i128 - 20);
            direct = &direct + &z(63, e * 5).scale_int(e - 20);
        }
        assert_eq!(acc.finish(), direct);
    }

    #[test]
    fn serde_round_trip() {
        let x = &z(12, 1).scale(Rational64::new(-3, 7)) + &Cyclotomic::from_int(2);
        let s = serde_json::to_string(&x).unwrap();
        let y: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
