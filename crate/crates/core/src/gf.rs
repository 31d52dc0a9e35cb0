//! The field tower `GF(2^f) ⊂ GF(2^{2f})`.
//!
//! The base field is `GF(2)[X]/(m(X))` with `m` the numerically smallest
//! irreducible polynomial of degree `f`; elements are `u32` bit vectors in
//! the power basis. The quadratic extension is `GF(q)[Y]/(Y² + Y + c)` with
//! `c` the smallest element of absolute trace 1, and its elements are pairs
//! `a0 + a1·ȳ` over the base field. Multiplication in the base field goes
//! through log/antilog tables built from the base generator.

use crate::arith::{factorize, prime_divisors};
use crate::Error;

/// Largest supported exponent `f` (extension elements must fit two `u32`s and
/// the log tables must stay small).
pub const MAX_DEGREE: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Base,
    Extension,
}

/// An element of `GF(q)` or `GF(q²)`.
///
/// At base level `hi` is always zero. At extension level the value is
/// `lo + hi·ȳ` with `lo, hi ∈ GF(q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    level: Level,
    lo: u32,
    hi: u32,
}

impl FieldElement {
    pub fn level(&self) -> Level {
        self.level
    }

    /// Coefficients `(a0, a1)`; `a1 = 0` at base level.
    pub fn coefficients(&self) -> (u32, u32) {
        (self.lo, self.hi)
    }

    pub fn is_zero(&self) -> bool {
        self.lo == 0 && self.hi == 0
    }

    /// Whether the element lies in the base field (at either level).
    pub fn in_base_field(&self) -> bool {
        self.hi == 0
    }
}

/// Carry-less multiplication of two polynomials over `GF(2)` reduced modulo
/// `modulus` (degree `deg`).
fn gf2_mulmod(mut a: u64, mut b: u64, modulus: u64, deg: u32) -> u64 {
    let top = 1u64 << deg;
    let mut r = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    r
}

fn gf2_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn gf2_rem(mut a: u64, b: u64) -> u64 {
    let db = gf2_degree(b);
    while a != 0 && gf2_degree(a) >= db {
        a ^= b << (gf2_degree(a) - db);
    }
    a
}

/// Irreducibility over `GF(2)` by trial division.
pub fn gf2_is_irreducible(p: u64) -> bool {
    let d = gf2_degree(p);
    if d <= 0 {
        return false;
    }
    for divisor in 2u64..(1u64 << (d / 2 + 1)) {
        if gf2_degree(divisor) >= 1 && gf2_degree(divisor) <= d / 2 && gf2_rem(p, divisor) == 0 {
            return false;
        }
    }
    true
}

/// `GF(2^f)` together with its quadratic extension.
#[derive(Clone, Debug)]
pub struct FieldTower {
    f: u32,
    q: u32,
    base_modulus: u32,
    ext_constant: u32,
    base_generator: u32,
    ext_generator: (u32, u32),
    log: Vec<u32>,
    exp: Vec<u32>,
}

impl FieldTower {
    pub fn new(f: u32) -> Result<Self, Error> {
        if f == 0 || f > MAX_DEGREE {
            return Err(Error::InvalidParameters(format!(
                "field degree f = {f} outside 1..={MAX_DEGREE}"
            )));
        }
        let q = 1u32 << f;
        let base_modulus = ((1u64 << f) + 1..(1u64 << (f + 1)))
            .find(|&p| gf2_is_irreducible(p))
            .expect("irreducible polynomials exist in every degree") as u32;
        let raw_mul = |a: u32, b: u32| gf2_mulmod(a as u64, b as u64, base_modulus as u64, f) as u32;
        let raw_pow = |mut a: u32, mut e: u64| {
            let mut r = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    r = raw_mul(r, a);
                }
                a = raw_mul(a, a);
                e >>= 1;
            }
            r
        };
        let order = (q - 1) as u64;
        let primes = prime_divisors(order);
        let base_generator = (1..q)
            .find(|&a| primes.iter().all(|&p| raw_pow(a, order / p) != 1))
            .expect("cyclic multiplicative group");

        let mut exp = vec![0u32; 2 * (q as usize - 1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for k in 0..(q - 1) {
            exp[k as usize] = x;
            exp[(k + q - 1) as usize] = x;
            log[x as usize] = k;
            x = raw_mul(x, base_generator);
        }

        let mut tower = FieldTower {
            f,
            q,
            base_modulus,
            ext_constant: 0,
            base_generator,
            ext_generator: (0, 0),
            log,
            exp,
        };
        tower.ext_constant = (1..q)
            .find(|&c| tower.absolute_trace(c) == 1)
            .expect("trace is surjective");

        let ext_order = (q as u64) * (q as u64) - 1;
        let ext_primes = prime_divisors(ext_order);
        let ext_generator = (1u64..(1u64 << (2 * f)))
            .map(|code| ((code & (q as u64 - 1)) as u32, (code >> f) as u32))
            .find(|&x| {
                ext_primes
                    .iter()
                    .all(|&p| tower.epow(x, ext_order / p) != (1, 0))
            })
            .expect("cyclic multiplicative group");
        tower.ext_generator = ext_generator;
        Ok(tower)
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `q² - 1`, the order of `GF(q²)^×`.
    pub fn ext_order(&self) -> u64 {
        self.q as u64 * self.q as u64 - 1
    }

    /// Modulus of the base field as a bit pattern including `X^f`.
    pub fn base_modulus(&self) -> u32 {
        self.base_modulus
    }

    /// The constant `c` of the extension modulus `Y² + Y + c`.
    pub fn ext_constant(&self) -> u32 {
        self.ext_constant
    }

    pub fn base_generator(&self) -> FieldElement {
        self.base(self.base_generator)
    }

    pub fn ext_generator(&self) -> FieldElement {
        self.ext(self.ext_generator.0, self.ext_generator.1)
    }

    // ---- raw base-field arithmetic on bit vectors ----

    #[inline]
    pub fn bmul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    #[inline]
    pub fn binv(&self, a: u32) -> u32 {
        debug_assert_ne!(a, 0);
        let l = self.log[a as usize];
        self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
    }

    pub fn bpow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let l = self.log[a as usize] as u64;
        self.exp[((l * (e % (self.q as u64 - 1))) % (self.q as u64 - 1)) as usize]
    }

    /// `base_generator^k`.
    #[inline]
    pub fn bexp(&self, k: u64) -> u32 {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }

    /// Discrete logarithm to the base generator.
    pub fn blog(&self, a: u32) -> Option<u32> {
        (a != 0 && a < self.q).then(|| self.log[a as usize])
    }

    pub fn absolute_trace(&self, c: u32) -> u32 {
        let mut t = 0;
        let mut x = c;
        for _ in 0..self.f {
            t ^= x;
            x = gf2_mulmod(x as u64, x as u64, self.base_modulus as u64, self.f) as u32;
        }
        t
    }

    // ---- raw extension arithmetic on pairs ----

    #[inline]
    pub fn emul(&self, x: (u32, u32), y: (u32, u32)) -> (u32, u32) {
        // ȳ² = ȳ + c
        let hh = self.bmul(x.1, y.1);
        let lo = self.bmul(x.0, y.0) ^ self.bmul(hh, self.ext_constant);
        let hi = self.bmul(x.0, y.1) ^ self.bmul(x.1, y.0) ^ hh;
        (lo, hi)
    }

    pub fn epow(&self, mut x: (u32, u32), mut e: u64) -> (u32, u32) {
        let mut r = (1, 0);
        while e > 0 {
            if e & 1 == 1 {
                r = self.emul(r, x);
            }
            x = self.emul(x, x);
            e >>= 1;
        }
        r
    }

    /// The Frobenius `x ↦ x^q`; it fixes the base field and sends `ȳ` to `ȳ + 1`.
    #[inline]
    pub fn efrobenius(&self, x: (u32, u32)) -> (u32, u32) {
        (x.0 ^ x.1, x.1)
    }

    /// Norm `x^{q+1}` to the base field.
    pub fn enorm(&self, x: (u32, u32)) -> u32 {
        let n = self.emul(x, self.efrobenius(x));
        debug_assert_eq!(n.1, 0);
        n.0
    }

    // ---- FieldElement API ----

    pub fn base(&self, bits: u32) -> FieldElement {
        debug_assert!(bits < self.q);
        FieldElement { level: Level::Base, lo: bits, hi: 0 }
    }

    pub fn ext(&self, lo: u32, hi: u32) -> FieldElement {
        debug_assert!(lo < self.q && hi < self.q);
        FieldElement { level: Level::Extension, lo, hi }
    }

    pub fn zero(&self, level: Level) -> FieldElement {
        FieldElement { level, lo: 0, hi: 0 }
    }

    pub fn one(&self, level: Level) -> FieldElement {
        FieldElement { level, lo: 1, hi: 0 }
    }

    /// Embeds a base element into the extension; extension elements pass through.
    pub fn embed(&self, a: FieldElement) -> FieldElement {
        FieldElement { level: Level::Extension, ..a }
    }

    fn align(&self, a: FieldElement, b: FieldElement) -> (FieldElement, FieldElement, Level) {
        if a.level == b.level {
            (a, b, a.level)
        } else {
            (self.embed(a), self.embed(b), Level::Extension)
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (a, b, level) = self.align(a, b);
        FieldElement { level, lo: a.lo ^ b.lo, hi: a.hi ^ b.hi }
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (a, b, level) = self.align(a, b);
        match level {
            Level::Base => self.base(self.bmul(a.lo, b.lo)),
            Level::Extension => {
                let (lo, hi) = self.emul((a.lo, a.hi), (b.lo, b.hi));
                self.ext(lo, hi)
            }
        }
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        match a.level {
            Level::Base => self.base(self.bpow(a.lo, e)),
            Level::Extension => {
                let (lo, hi) = self.epow((a.lo, a.hi), e);
                self.ext(lo, hi)
            }
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, Error> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(match a.level {
            Level::Base => self.base(self.binv(a.lo)),
            Level::Extension => {
                // x^{-1} = x^q / N(x)
                let conj = self.efrobenius((a.lo, a.hi));
                let ninv = self.binv(self.enorm((a.lo, a.hi)));
                self.ext(self.bmul(conj.0, ninv), self.bmul(conj.1, ninv))
            }
        })
    }

    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        match a.level {
            Level::Base => a,
            Level::Extension => {
                let (lo, hi) = self.efrobenius((a.lo, a.hi));
                self.ext(lo, hi)
            }
        }
    }

    /// Least `k ≥ 1` with `a^k = 1`.
    pub fn element_order(&self, a: FieldElement) -> Result<u64, Error> {
        if a.is_zero() {
            return Err(Error::ZeroOrder);
        }
        let group = match a.level {
            Level::Base => self.q as u64 - 1,
            Level::Extension => self.ext_order(),
        };
        let one = self.one(a.level);
        let mut ord = group;
        for (p, _) in factorize(group) {
            while ord % p == 0 && self.pow(a, ord / p) == one {
                ord /= p;
            }
        }
        Ok(ord)
    }

    /// The cyclic group `μ_r` as the powers `1, ζ, ζ², …` of a fixed generator.
    ///
    /// For `r | q - 1` the generator is `base_generator^((q-1)/r)` and the
    /// elements are returned at base level; otherwise it is
    /// `ext_generator^((q²-1)/r)`.
    pub fn mu_subgroup(&self, r: u64) -> Result<Vec<FieldElement>, Error> {
        let ext_order = self.ext_order();
        if r == 0 || !ext_order.is_multiple_of(r) {
            return Err(Error::InvalidParameters(format!(
                "r = {r} does not divide q^2 - 1 = {ext_order}"
            )));
        }
        let generator = self.mu_generator(r)?;
        let mut out = Vec::with_capacity(r as usize);
        let mut x = self.one(generator.level);
        for _ in 0..r {
            out.push(x);
            x = self.mul(x, generator);
        }
        Ok(out)
    }

    /// The generator used by [`FieldTower::mu_subgroup`].
    pub fn mu_generator(&self, r: u64) -> Result<FieldElement, Error> {
        let ext_order = self.ext_order();
        if r == 0 || !ext_order.is_multiple_of(r) {
            return Err(Error::InvalidParameters(format!(
                "r = {r} does not divide q^2 - 1 = {ext_order}"
            )));
        }
        let base_order = self.q as u64 - 1;
        Ok(if base_order.is_multiple_of(r) {
            self.pow(self.base_generator(), base_order / r)
        } else {
            self.pow(self.ext_generator(), ext_order / r)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_moduli() {
        assert_eq!(FieldTower::new(2).unwrap().base_modulus(), 0b111);
        assert_eq!(FieldTower::new(3).unwrap().base_modulus(), 0b1011);
        assert_eq!(FieldTower::new(4).unwrap().base_modulus(), 0b10011);
        assert_eq!(FieldTower::new(6).unwrap().base_modulus(), 0b1000011);
        // f odd: Tr(1) = 1, so c = 1
        assert_eq!(FieldTower::new(3).unwrap().ext_constant(), 1);
        assert!(FieldTower::new(0).is_err());
        assert!(FieldTower::new(17).is_err());
    }

    #[test]
    fn gf4_multiplication_table() {
        // brute force: GF(4) = {0, 1, x, x+1} with x² = x + 1
        let t = FieldTower::new(2).unwrap();
        let mut table = [[0u32; 4]; 4];
        for a in 0..4u64 {
            for b in 0..4u64 {
                let mut r = 0u64;
                for i in 0..2 {
                    if b >> i & 1 == 1 {
                        r ^= a << i;
                    }
                }
                if r & 4 != 0 {
                    r ^= 0b111;
                }
                table[a as usize][b as usize] = r as u32;
            }
        }
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(t.bmul(a, b), table[a as usize][b as usize]);
            }
        }
        let g = t.base_generator();
        let g2 = t.mul(g, g);
        assert_eq!(t.mul(g, g2), t.one(Level::Base));
    }

    #[test]
    fn characteristic_two_and_lagrange() {
        for f in 2..=6 {
            let t = FieldTower::new(f).unwrap();
            let q = t.q() as u64;
            for bits in 0..t.q() {
                let a = t.base(bits);
                assert!(t.add(a, a).is_zero());
            }
            let g = t.base_generator();
            assert_eq!(t.pow(g, q - 1), t.one(Level::Base));
            assert_eq!(t.element_order(g).unwrap(), q - 1);
            assert_eq!(t.element_order(t.ext_generator()).unwrap(), q * q - 1);
        }
    }

    #[test]
    fn extension_is_a_field() {
        let t = FieldTower::new(3).unwrap();
        for lo in 0..8 {
            for hi in 0..8 {
                let x = t.ext(lo, hi);
                if x.is_zero() {
                    assert!(matches!(t.inv(x), Err(Error::ZeroInverse)));
                    continue;
                }
                let y = t.inv(x).unwrap();
                assert_eq!(t.mul(x, y), t.one(Level::Extension));
                // Frobenius is a field automorphism of order 2
                assert_eq!(t.frobenius(t.frobenius(x)), x);
                assert_eq!(t.pow(x, 8), t.frobenius(x));
            }
        }
        // embedding is a ring homomorphism
        for a in 0..8 {
            for b in 0..8 {
                let (a, b) = (t.base(a), t.base(b));
                assert_eq!(t.embed(t.mul(a, b)), t.mul(t.embed(a), t.embed(b)));
                assert_eq!(t.embed(t.add(a, b)), t.add(t.embed(a), t.embed(b)));
            }
        }
    }

    #[test]
    fn mu_subgroups() {
        let t = FieldTower::new(2).unwrap();
        let mu3 = t.mu_subgroup(3).unwrap();
        assert_eq!(mu3.len(), 3);
        assert!(mu3.iter().all(|x| x.level() == Level::Base));
        assert_eq!(mu3[0], t.one(Level::Base));

        // brute force x^5 = 1 over GF(16)
        let mu5 = t.mu_subgroup(5).unwrap();
        let mut brute: Vec<_> = (0..4)
            .flat_map(|lo| (0..4).map(move |hi| (lo, hi)))
            .map(|(lo, hi)| t.ext(lo, hi))
            .filter(|&x| t.pow(x, 5) == t.one(Level::Extension))
            .collect();
        let mut got = mu5.clone();
        brute.sort();
        got.sort();
        assert_eq!(got, brute);
        assert_eq!(mu5[0], t.one(Level::Extension));
        for x in &mu5 {
            assert_eq!(t.enorm(x.coefficients()), 1);
        }
        assert!(t.mu_subgroup(7).is_err());
        assert!(t.mu_subgroup(0).is_err());
    }

    #[test]
    fn element_orders() {
        let t = FieldTower::new(4).unwrap();
        assert_eq!(t.element_order(t.one(Level::Base)).unwrap(), 1);
        assert_eq!(t.element_order(t.base_generator()).unwrap(), 15);
        let x = t.pow(t.ext_generator(), 255 / 17);
        assert_eq!(t.element_order(x).unwrap(), 17);
        // brute-force the order of x
        let mut y = x;
        let mut k = 1;
        while y != t.one(Level::Extension) {
            y = t.mul(y, x);
            k += 1;
        }
        assert_eq!(k, 17);
        assert!(matches!(t.element_order(t.zero(Level::Base)), Err(Error::ZeroOrder)));
    }

    #[test]
    fn roots_of_unity_intersect_trivially() {
        for f in 2..=5 {
            let t = FieldTower::new(f).unwrap();
            let q = t.q() as u64;
            let minus: Vec<_> = t.mu_subgroup(q - 1).unwrap().into_iter().map(|x| t.embed(x)).collect();
            let plus = t.mu_subgroup(q + 1).unwrap();
            let common: Vec<_> = plus.iter().filter(|x| minus.contains(x)).collect();
            assert_eq!(common, vec![&t.one(Level::Extension)]);
            for x in plus {
                assert_eq!(t.pow(x, q + 1), t.one(Level::Extension));
            }
        }
    }
}
