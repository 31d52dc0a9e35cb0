//! Certified sign of a real cyclotomic number.
//!
//! A double-precision evaluation with a rigorous error bound decides almost
//! every case. Otherwise the value is re-evaluated in binary fixed point with
//! doubling precision until the error bound excludes zero; the loop ends
//! because the canonical form has already ruled out an exact zero.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Cyclotomic;
use crate::Error;

pub(super) fn real_sign(a: &Cyclotomic) -> Result<i8, Error> {
    if !a.is_real() {
        return Err(Error::NotReal(a.term_string()));
    }
    if a.is_zero() {
        return Ok(0);
    }
    if let Some(r) = a.as_rational() {
        return Ok(if *r.numer() > 0 { 1 } else { -1 });
    }
    let (re, _) = a.to_f64();
    let weight: f64 = a.terms.iter().map(|&(_, n)| (n as f64).abs()).sum::<f64>() / a.den as f64;
    let bound = weight * (a.terms.len() as f64 + 10.0) * 2f64.powi(-50);
    if re.abs() > bound {
        return Ok(if re > 0.0 { 1 } else { -1 });
    }
    real_sign_fixed_point(a)
}

pub(super) fn real_sign_fixed_point(a: &Cyclotomic) -> Result<i8, Error> {
    if !a.is_real() {
        return Err(Error::NotReal(a.term_string()));
    }
    if a.is_zero() {
        return Ok(0);
    }
    let weight: i64 = a.terms.iter().map(|&(_, n)| n.abs()).sum();
    let mut prec = 96u32;
    loop {
        let pi = pi_fixed(prec);
        let mut total = BigInt::zero();
        let mut max_err = 0u64;
        for &(e, n) in &a.terms {
            let (c, err) = cos_two_pi_fraction(e as i64, a.m as i64, &pi, prec);
            total += c * n;
            max_err = max_err.max(err);
        }
        // each cosine is within max_err units of 2^-prec
        let bound = BigInt::from(weight) * BigInt::from(max_err + 4);
        if total.abs() > bound {
            return Ok(if total.is_positive() { 1 } else { -1 });
        }
        prec *= 2;
    }
}

/// `atan(1/n)` scaled by `2^prec`, with at most `prec` units of error.
fn atan_inv(n: u64, prec: u32) -> BigInt {
    let mut power = (BigInt::one() << prec) / n;
    let n2 = BigInt::from(n * n);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &n2;
        k += 1;
    }
    sum
}

/// `π · 2^prec` with an error of a few hundred units at most.
fn pi_fixed(prec: u32) -> BigInt {
    const GUARD: u32 = 32;
    let p = prec + GUARD;
    let pi = atan_inv(5, p) * 16 - atan_inv(239, p) * 4;
    pi >> GUARD
}

/// `cos(2π e / m) · 2^prec` and a bound on its error in units of `2^-prec`.
fn cos_two_pi_fraction(e: i64, m: i64, pi: &BigInt, prec: u32) -> (BigInt, u64) {
    let e = e.rem_euclid(m);
    let e = if 2 * e > m { e - m } else { e };
    let x = (pi * (2 * e)) / m;
    let x2 = (&x * &x) >> prec;
    let mut term = BigInt::one() << prec;
    let mut sum = term.clone();
    let mut k = 1i64;
    while !term.is_zero() {
        term = ((&term * &x2) >> prec) / ((2 * k - 1) * (2 * k));
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        k += 1;
    }
    // π carries ≤ 2^8 units of error, amplified by |x|/π ≤ 1 and the series
    (sum, 2 * k as u64 + 1024)
}
