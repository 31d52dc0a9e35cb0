//! Small integer number theory used throughout the crate.

use num_integer::Integer;

/// Prime factorisation by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Exponent of the prime `p` in `n`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(p > 1 && n > 0);
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

/// The `p`-part of `n`, e.g. `(q-1)_l`.
pub fn p_part(n: u64, p: u64) -> u64 {
    p.pow(valuation(n, p))
}

/// The `p'`-part of `n`.
pub fn p_prime_part(n: u64, p: u64) -> u64 {
    n / p_part(n, p)
}

pub fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mod_mul(r, b, m);
        }
        b = mod_mul(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: i64, m: i64) -> Option<i64> {
    let g = a.rem_euclid(m).extended_gcd(&m);
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m))
}

/// Multiplicative order of `a` modulo `n` (`gcd(a, n) = 1` required).
pub fn multiplicative_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    debug_assert_eq!(a.gcd(&n), 1);
    let lambda = totient(n);
    let mut ord = lambda;
    for p in prime_divisors(lambda) {
        while ord.is_multiple_of(p) && mod_pow(a, ord / p, n) == 1 {
            ord /= p;
        }
    }
    ord
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Representative of `{k, -k} mod r` in `[0, r/2]`.
pub fn up_to_inverse(k: u64, r: u64) -> u64 {
    let k = k % r;
    k.min(r - k) % r
}

/// Smallest prime `p = k*m + 1` below `2^62`, so that `F_p` holds the `m`-th roots of unity.
pub fn split_prime(m: u64) -> u64 {
    let mut k = (1u64 << 62) / m;
    loop {
        let p = k * m + 1;
        if is_prime(p) {
            return p;
        }
        k -= 1;
    }
}

/// A primitive `m`-th root of unity modulo a prime `p ≡ 1 (mod m)`.
pub fn primitive_root_of_unity(m: u64, p: u64) -> u64 {
    assert_eq!((p - 1) % m, 0);
    let primes = prime_divisors(m);
    for x in 2..p {
        let r = mod_pow(x, (p - 1) / m, p);
        if r != 1 && primes.iter().all(|&l| mod_pow(r, m / l, p) != 1) {
            return r;
        }
        if m == 1 {
            return 1;
        }
    }
    unreachable!("no primitive root modulo a prime")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorisation_and_parts() {
        assert_eq!(factorize(4095), vec![(3, 2), (5, 1), (7, 1), (13, 1)]);
        assert_eq!(p_part(63, 3), 9);
        assert_eq!(p_prime_part(63, 3), 7);
        assert_eq!(valuation(65, 5), 1);
        assert_eq!(totient(455), 288);
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(2_305_843_009_213_693_951)); // 2^61 - 1
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(3, 5), 4);
        assert_eq!(multiplicative_order(11, 31), 30);
        assert_eq!(multiplicative_order(2, 1), 1);
        assert_eq!(mod_inv(3, 7), Some(5));
        assert_eq!(mod_inv(3, 9), None);
    }

    #[test]
    fn split_prime_has_roots() {
        let p = split_prime(4095);
        assert_eq!((p - 1) % 4095, 0);
        let r = primitive_root_of_unity(4095, p);
        assert_eq!(mod_pow(r, 4095, p), 1);
        assert_ne!(mod_pow(r, 4095 / 13, p), 1);
    }
}
