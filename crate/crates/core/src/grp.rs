//! `G = SL2(q)` for `q = 2^f`, its tori `T`, `T'`, their normalisers `N`,
//! `N'`, the Sylow chain `Q_1 < … < Q_{n+1}` and canonical class labels.
//!
//! Matrices are `[a, b, c, d]` for `[[a, b], [c, d]]` with entries encoded as
//! base-field bit vectors. `d'(ξ)` is the matrix of multiplication by `ξ` on
//! `GF(q²)` in the basis `{1, ȳ}`, which makes `σ'` (Frobenius) equal to
//! `[[1, 1], [0, 1]]`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, p_part, up_to_inverse, valuation};
use crate::gf::{FieldElement, FieldTower, Level};
use crate::{Case, Error};

pub type Mat = [u32; 4];

pub const IDENTITY: Mat = [1, 0, 0, 1];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupTag {
    G,
    N,
    #[serde(rename = "N'")]
    NPrime,
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupTag::G => "G",
            GroupTag::N => "N",
            GroupTag::NPrime => "N'",
        })
    }
}

/// Conjugacy class labels of `G`, `N` and `N'`.
///
/// `Split(k)` is the class of `d(g^k)` and `NonSplit(k)` that of `d'(h^k)`,
/// where `g` generates `μ_{q-1}` and `h` generates `μ_{q+1}`; `k` is reduced
/// to `min(k, r - k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    Identity,
    Unipotent,
    Split(u32),
    NonSplit(u32),
    Sigma,
    SigmaPrime,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Identity => write!(f, "I_2"),
            ClassLabel::Unipotent => write!(f, "u"),
            ClassLabel::Split(k) => write!(f, "d[{k}]"),
            ClassLabel::NonSplit(k) => write!(f, "d'[{k}]"),
            ClassLabel::Sigma => write!(f, "sigma"),
            ClassLabel::SigmaPrime => write!(f, "sigma'"),
        }
    }
}

impl FromStr for ClassLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Serialisation(format!("unknown class label {s:?}"));
        let index = |body: &str| body.strip_suffix(']').and_then(|k| k.parse().ok()).ok_or_else(bad);
        Ok(match s {
            "I_2" => ClassLabel::Identity,
            "u" => ClassLabel::Unipotent,
            "sigma" => ClassLabel::Sigma,
            "sigma'" => ClassLabel::SigmaPrime,
            _ => {
                if let Some(rest) = s.strip_prefix("d'[") {
                    ClassLabel::NonSplit(index(rest)?)
                } else if let Some(rest) = s.strip_prefix("d[") {
                    ClassLabel::Split(index(rest)?)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

impl Serialize for ClassLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClassLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Class size, centraliser order and element order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassData {
    pub size: u64,
    pub centralizer_order: u64,
    pub element_order: u64,
}

/// `SL2(q)` together with its fixed tori and class machinery.
#[derive(Clone, Debug)]
pub struct Sl2 {
    tower: FieldTower,
    q: u32,
    /// generator of `μ_{q+1}` as an extension pair
    h: (u32, u32),
    /// class of a non-identity element by trace (index = trace bits)
    by_trace: Vec<ClassLabel>,
    /// `ξ ↦ k` with `ξ = h^k`, keyed by `lo | hi << f`
    nonsplit_log: HashMap<u32, u32>,
}

impl Sl2 {
    pub fn new(f: u32) -> Result<Self, Error> {
        if f < 2 {
            return Err(Error::InvalidParameters(format!("q = 2^{f} must satisfy f >= 2")));
        }
        let tower = FieldTower::new(f)?;
        let q = tower.q();
        let hg = tower.pow(tower.ext_generator(), q as u64 - 1);
        let h = hg.coefficients();
        let mut by_trace = vec![ClassLabel::Unipotent; q as usize];
        for k in 1..=(q - 2) / 2 {
            let a = tower.bexp(k as u64);
            by_trace[(a ^ tower.binv(a)) as usize] = ClassLabel::Split(k);
        }
        let mut nonsplit_log = HashMap::with_capacity(q as usize + 1);
        let mut x = (1u32, 0u32);
        for k in 0..=q {
            nonsplit_log.insert(x.0 | (x.1 << f), k);
            if (1..=q / 2).contains(&k) {
                // trace of d'(ξ) is ξ + ξ^q = the ȳ-coordinate of ξ
                by_trace[x.1 as usize] = ClassLabel::NonSplit(k);
            }
            x = tower.emul(x, h);
        }
        Ok(Sl2 { tower, q, h, by_trace, nonsplit_log })
    }

    /// `SL2(q)` from `q` itself, which must be a power of two with `q >= 4`.
    pub fn from_q(q: u64) -> Result<Self, Error> {
        if q < 4 || !q.is_power_of_two() {
            return Err(Error::InvalidParameters(format!("q = {q} is not a power of 2 with q >= 4")));
        }
        Self::new(q.trailing_zeros())
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    pub fn f(&self) -> u32 {
        self.tower.f()
    }

    pub fn order(&self) -> u64 {
        let q = self.q();
        q * (q * q - 1)
    }

    pub fn group_order(&self, group: GroupTag) -> u64 {
        match group {
            GroupTag::G => self.order(),
            GroupTag::N => 2 * (self.q() - 1),
            GroupTag::NPrime => 2 * (self.q() + 1),
        }
    }

    // ---- matrix arithmetic ----

    #[inline]
    pub fn mul(&self, x: &Mat, y: &Mat) -> Mat {
        let t = &self.tower;
        [
            t.bmul(x[0], y[0]) ^ t.bmul(x[1], y[2]),
            t.bmul(x[0], y[1]) ^ t.bmul(x[1], y[3]),
            t.bmul(x[2], y[0]) ^ t.bmul(x[3], y[2]),
            t.bmul(x[2], y[1]) ^ t.bmul(x[3], y[3]),
        ]
    }

    /// Inverse of a determinant-one matrix (characteristic 2: no signs).
    #[inline]
    pub fn inv(&self, x: &Mat) -> Mat {
        [x[3], x[1], x[2], x[0]]
    }

    /// `x^{-1} g x`.
    #[inline]
    pub fn conjugate(&self, g: &Mat, x: &Mat) -> Mat {
        self.mul(&self.inv(x), &self.mul(g, x))
    }

    pub fn det(&self, x: &Mat) -> u32 {
        self.tower.bmul(x[0], x[3]) ^ self.tower.bmul(x[1], x[2])
    }

    pub fn trace(&self, x: &Mat) -> u32 {
        x[0] ^ x[3]
    }

    pub fn pow(&self, x: &Mat, mut e: u64) -> Mat {
        let mut base = *x;
        let mut r = IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        r
    }

    pub fn element_order(&self, x: &Mat) -> u64 {
        let mut k = 1;
        let mut y = *x;
        while y != IDENTITY {
            y = self.mul(&y, x);
            k += 1;
        }
        k
    }

    // ---- distinguished elements ----

    /// `d(a) = diag(a, a^{-1})` for `a ∈ μ_{q-1} = GF(q)^×`.
    pub fn d(&self, a: FieldElement) -> Result<Mat, Error> {
        if a.level() != Level::Base || !a.in_base_field() {
            return Err(Error::NotInSubgroup(format!("{a:?} (expected a base-field element)")));
        }
        let (bits, _) = a.coefficients();
        if bits == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok([bits, 0, 0, self.tower.binv(bits)])
    }

    /// `d(g^k)` for the base generator `g`.
    pub fn d_exp(&self, k: i64) -> Mat {
        let r = self.q() as i64 - 1;
        let a = self.tower.bexp(k.rem_euclid(r) as u64);
        [a, 0, 0, self.tower.binv(a)]
    }

    /// Matrix of multiplication by `ξ ∈ μ_{q+1}` in the basis `{1, ȳ}`.
    pub fn dprime(&self, xi: FieldElement) -> Result<Mat, Error> {
        let t = &self.tower;
        let xi = t.embed(xi);
        if xi.is_zero() || t.pow(xi, self.q() + 1) != t.one(Level::Extension) {
            return Err(Error::NotInSubgroup(format!("{xi:?} (expected an element of mu_(q+1))")));
        }
        Ok(self.dprime_pair(xi.coefficients()))
    }

    fn dprime_pair(&self, (x0, x1): (u32, u32)) -> Mat {
        let c = self.tower.ext_constant();
        [x0, self.tower.bmul(x1, c), x1, x0 ^ x1]
    }

    /// `d'(h^k)` for the fixed generator `h` of `μ_{q+1}`.
    pub fn dprime_exp(&self, k: i64) -> Mat {
        let r = self.q() as i64 + 1;
        self.dprime_pair(self.tower.epow(self.h, k.rem_euclid(r) as u64))
    }

    /// The generator `h = ε^{q-1}` of `μ_{q+1}` (`ε` the extension generator).
    pub fn nonsplit_generator(&self) -> FieldElement {
        self.tower.ext(self.h.0, self.h.1)
    }

    pub fn sigma(&self) -> Mat {
        [0, 1, 1, 0]
    }

    /// Frobenius `ȳ ↦ ȳ^q = ȳ + 1` in the basis `{1, ȳ}`.
    pub fn sigma_prime(&self) -> Mat {
        [1, 1, 0, 1]
    }

    pub fn unipotent(&self) -> Mat {
        [1, 1, 0, 1]
    }

    /// `(σ, σ')`.
    pub fn sigma_elements(&self) -> (Mat, Mat) {
        (self.sigma(), self.sigma_prime())
    }

    // ---- classes ----

    /// Class of `g` in `G`.
    pub fn classify(&self, g: &Mat) -> Result<ClassLabel, Error> {
        let det = self.det(g);
        if det != 1 {
            return Err(Error::Determinant(det));
        }
        if *g == IDENTITY {
            return Ok(ClassLabel::Identity);
        }
        Ok(self.by_trace[self.trace(g) as usize])
    }

    /// Class of `x` in `N` or `N'` (or `G`).
    pub fn classify_in(&self, group: GroupTag, x: &Mat) -> Result<ClassLabel, Error> {
        match group {
            GroupTag::G => self.classify(x),
            GroupTag::N => {
                let det = self.det(x);
                if det != 1 {
                    return Err(Error::Determinant(det));
                }
                if x[1] == 0 && x[2] == 0 {
                    let k = self.tower.blog(x[0]).unwrap() as u64;
                    Ok(match up_to_inverse(k, self.q() - 1) {
                        0 => ClassLabel::Identity,
                        k => ClassLabel::Split(k as u32),
                    })
                } else if x[0] == 0 && x[3] == 0 {
                    Ok(ClassLabel::Sigma)
                } else {
                    Err(Error::NotInSubgroup(format!("{x:?} in N")))
                }
            }
            GroupTag::NPrime => {
                let det = self.det(x);
                if det != 1 {
                    return Err(Error::Determinant(det));
                }
                if let Some(k) = self.nonsplit_index(x) {
                    return Ok(match up_to_inverse(k, self.q() + 1) {
                        0 => ClassLabel::Identity,
                        k => ClassLabel::NonSplit(k as u32),
                    });
                }
                let y = self.mul(&self.sigma_prime(), x);
                if self.nonsplit_index(&y).is_some() {
                    Ok(ClassLabel::SigmaPrime)
                } else {
                    Err(Error::NotInSubgroup(format!("{x:?} in N'")))
                }
            }
        }
    }

    /// `k` with `x = d'(h^k)`, if `x ∈ T'`.
    pub fn nonsplit_index(&self, x: &Mat) -> Option<u64> {
        let c = self.tower.ext_constant();
        if x[1] != self.tower.bmul(x[2], c) || x[3] != x[0] ^ x[2] {
            return None;
        }
        self.nonsplit_log.get(&(x[0] | (x[2] << self.f()))).map(|&k| k as u64)
    }

    /// `k` with `x = d(g^k)`, if `x ∈ T`.
    pub fn split_index(&self, x: &Mat) -> Option<u64> {
        if x[1] != 0 || x[2] != 0 || x[0] == 0 {
            return None;
        }
        self.tower.blog(x[0]).map(|k| k as u64)
    }

    /// Ordered class labels: `G`: `I, d(a)…, d'(ξ)…, u`; `N`: `I, d(a)…, σ`;
    /// `N'`: `I, d'(ξ)…, σ'`.
    pub fn classes(&self, group: GroupTag) -> Vec<ClassLabel> {
        let q = self.q;
        let split = (1..=(q - 2) / 2).map(ClassLabel::Split);
        let nonsplit = (1..=q / 2).map(ClassLabel::NonSplit);
        let mut out = vec![ClassLabel::Identity];
        match group {
            GroupTag::G => {
                out.extend(split);
                out.extend(nonsplit);
                out.push(ClassLabel::Unipotent);
            }
            GroupTag::N => {
                out.extend(split);
                out.push(ClassLabel::Sigma);
            }
            GroupTag::NPrime => {
                out.extend(nonsplit);
                out.push(ClassLabel::SigmaPrime);
            }
        }
        out
    }

    pub fn representative(&self, label: ClassLabel) -> Mat {
        match label {
            ClassLabel::Identity => IDENTITY,
            ClassLabel::Unipotent => self.unipotent(),
            ClassLabel::Split(k) => self.d_exp(k as i64),
            ClassLabel::NonSplit(k) => self.dprime_exp(k as i64),
            ClassLabel::Sigma => self.sigma(),
            ClassLabel::SigmaPrime => self.sigma_prime(),
        }
    }

    pub fn class_size(&self, group: GroupTag, label: ClassLabel) -> u64 {
        let q = self.q();
        match (group, label) {
            (_, ClassLabel::Identity) => 1,
            (GroupTag::G, ClassLabel::Unipotent) => (q - 1) * (q + 1),
            (GroupTag::G, ClassLabel::Split(_)) => q * (q + 1),
            (GroupTag::G, ClassLabel::NonSplit(_)) => q * (q - 1),
            (GroupTag::N, ClassLabel::Split(_)) | (GroupTag::NPrime, ClassLabel::NonSplit(_)) => 2,
            (GroupTag::N, ClassLabel::Sigma) => q - 1,
            (GroupTag::NPrime, ClassLabel::SigmaPrime) => q + 1,
            _ => panic!("class {label} does not belong to {group}"),
        }
    }

    pub fn class_data(&self, group: GroupTag, label: ClassLabel) -> ClassData {
        let q = self.q();
        let size = self.class_size(group, label);
        let element_order = match label {
            ClassLabel::Identity => 1,
            ClassLabel::Unipotent | ClassLabel::Sigma | ClassLabel::SigmaPrime => 2,
            ClassLabel::Split(k) => (q - 1) / num_integer::gcd(k as u64, q - 1),
            ClassLabel::NonSplit(k) => (q + 1) / num_integer::gcd(k as u64, q + 1),
        };
        ClassData { size, centralizer_order: self.group_order(group) / size, element_order }
    }

    // ---- element lists ----

    /// All of `G`, in a fixed order.
    pub fn elements(&self) -> Vec<Mat> {
        let q = self.q;
        let mut out = Vec::with_capacity(self.order() as usize);
        for a in 1..q {
            let ainv = self.tower.binv(a);
            for b in 0..q {
                for c in 0..q {
                    // d = (1 + bc) / a
                    let d = self.tower.bmul(1 ^ self.tower.bmul(b, c), ainv);
                    out.push([a, b, c, d]);
                }
            }
        }
        for b in 1..q {
            let c = self.tower.binv(b);
            for d in 0..q {
                out.push([0, b, c, d]);
            }
        }
        out
    }

    pub fn split_torus(&self) -> Vec<Mat> {
        (0..self.q() as i64 - 1).map(|k| self.d_exp(k)).collect()
    }

    pub fn nonsplit_torus(&self) -> Vec<Mat> {
        (0..=self.q() as i64).map(|k| self.dprime_exp(k)).collect()
    }

    pub fn normaliser(&self) -> Vec<Mat> {
        let t = self.split_torus();
        let s = self.sigma();
        let coset: Vec<Mat> = t.iter().map(|x| self.mul(&s, x)).collect();
        t.into_iter().chain(coset).collect()
    }

    pub fn nonsplit_normaliser(&self) -> Vec<Mat> {
        let t = self.nonsplit_torus();
        let s = self.sigma_prime();
        let coset: Vec<Mat> = t.iter().map(|x| self.mul(&s, x)).collect();
        t.into_iter().chain(coset).collect()
    }

    /// Upper unitriangular matrices.
    pub fn unipotent_radical(&self) -> Vec<Mat> {
        (0..self.q).map(|b| [1, b, 0, 1]).collect()
    }

    /// Upper triangular matrices `T ⋉ U`.
    pub fn borel(&self) -> Vec<Mat> {
        let mut out = Vec::with_capacity((self.q() * (self.q() - 1)) as usize);
        for a in 1..self.q {
            let ainv = self.tower.binv(a);
            for b in 0..self.q {
                out.push([a, b, 0, ainv]);
            }
        }
        out
    }

    pub fn elements_of(&self, group: GroupTag) -> Vec<Mat> {
        match group {
            GroupTag::G => self.elements(),
            GroupTag::N => self.normaliser(),
            GroupTag::NPrime => self.nonsplit_normaliser(),
        }
    }
}

/// Data attached to `(q, ℓ)`: the case, `n`, the Sylow chain and the
/// `ℓ'`-class representatives used as table columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalData {
    pub q: u64,
    pub ell: u64,
    pub case: Case,
    /// `|S_ℓ| = ℓ^n`
    pub n: u32,
    pub ell_n: u64,
    /// order of the torus containing `S_ℓ`
    pub torus_order: u64,
    /// `ℓ'`-part of `torus_order`
    pub m_prime: u64,
}

impl LocalData {
    pub fn new(q: u64, ell: u64) -> Result<Self, Error> {
        if q < 4 || !q.is_power_of_two() {
            return Err(Error::InvalidParameters(format!("q = {q} is not a power of 2 with q >= 4")));
        }
        if ell == 2 {
            return Err(Error::InvalidParameters("l = 2 is the defining characteristic".into()));
        }
        if !is_prime(ell) {
            return Err(Error::InvalidParameters(format!("l = {ell} is not prime")));
        }
        let (case, torus_order) = if (q - 1).is_multiple_of(ell) {
            (Case::QMinusOne, q - 1)
        } else if (q + 1).is_multiple_of(ell) {
            (Case::QPlusOne, q + 1)
        } else {
            return Err(Error::InvalidParameters(format!("l = {ell} divides neither q-1 = {} nor q+1 = {}", q - 1, q + 1)));
        };
        let n = valuation(torus_order, ell);
        let ell_n = p_part(torus_order, ell);
        Ok(LocalData { q, ell, case, n, ell_n, torus_order, m_prime: torus_order / ell_n })
    }

    /// Normaliser of every non-trivial `Q_i`.
    pub fn local_group(&self) -> GroupTag {
        match self.case {
            Case::QMinusOne => GroupTag::N,
            Case::QPlusOne => GroupTag::NPrime,
        }
    }

    /// The torus class constructor for exponent `k` of the `ℓ`-torus.
    pub fn torus_class(&self, k: u64) -> ClassLabel {
        match up_to_inverse(k, self.torus_order) {
            0 => ClassLabel::Identity,
            k => match self.case {
                Case::QMinusOne => ClassLabel::Split(k as u32),
                Case::QPlusOne => ClassLabel::NonSplit(k as u32),
            },
        }
    }

    /// `Γ_{ℓ'}`: split labels whose elements are `ℓ'`-elements.
    pub fn gamma_ell_prime(&self) -> Vec<ClassLabel> {
        let r = self.q - 1;
        (1..=(r - 1) / 2)
            .filter(|&k| self.case == Case::QPlusOne || k % self.ell_n == 0)
            .map(|k| ClassLabel::Split(k as u32))
            .collect()
    }

    /// `Γ'_{ℓ'}`.
    pub fn gamma_prime_ell_prime(&self) -> Vec<ClassLabel> {
        let r = self.q + 1;
        (1..=(r - 1) / 2)
            .filter(|&k| self.case == Case::QMinusOne || k % self.ell_n == 0)
            .map(|k| ClassLabel::NonSplit(k as u32))
            .collect()
    }

    /// `[G]_{ℓ'}` in column order `I, d(a), d'(ξ), u`.
    pub fn g_ell_prime(&self) -> Vec<ClassLabel> {
        let mut out = vec![ClassLabel::Identity];
        out.extend(self.gamma_ell_prime());
        out.extend(self.gamma_prime_ell_prime());
        out.push(ClassLabel::Unipotent);
        out
    }

    /// `[N]_{ℓ'}` as `I, d(a), σ`.
    pub fn n_ell_prime(&self) -> Vec<ClassLabel> {
        let mut out = vec![ClassLabel::Identity];
        out.extend(self.gamma_ell_prime());
        out.push(ClassLabel::Sigma);
        out
    }

    /// `[N']_{ℓ'}` as `I, d'(ξ), σ'`.
    pub fn nprime_ell_prime(&self) -> Vec<ClassLabel> {
        let mut out = vec![ClassLabel::Identity];
        out.extend(self.gamma_prime_ell_prime());
        out.push(ClassLabel::SigmaPrime);
        out
    }

    /// Column labels for species at vertex `Q_v`.
    pub fn columns(&self, v: u32) -> Vec<ClassLabel> {
        if v == 1 {
            self.g_ell_prime()
        } else {
            match self.case {
                Case::QMinusOne => self.n_ell_prime(),
                Case::QPlusOne => self.nprime_ell_prime(),
            }
        }
    }

    /// Exponent `k` of the torus generator with `Q_i = ⟨d(g^k)⟩` (or `d'(h^k)`).
    pub fn q_generator_exponent(&self, i: u32) -> u64 {
        assert!(i >= 1 && i <= self.n + 1);
        self.torus_order / self.ell.pow(i - 1)
    }

    /// Generator of `Q_i`.
    pub fn q_generator(&self, g: &Sl2, i: u32) -> Mat {
        let k = self.q_generator_exponent(i) as i64;
        match self.case {
            Case::QMinusOne => g.d_exp(k),
            Case::QPlusOne => g.dprime_exp(k),
        }
    }

    /// Elements of `Q_i` (order `ℓ^{i-1}`).
    pub fn q_subgroup(&self, g: &Sl2, i: u32) -> Vec<Mat> {
        let x = self.q_generator(g, i);
        let mut out = vec![IDENTITY];
        let mut y = x;
        while y != IDENTITY {
            out.push(y);
            y = g.mul(&y, &x);
        }
        out
    }

    /// `S_ℓ = Q_{n+1}`.
    pub fn sylow(&self, g: &Sl2) -> Vec<Mat> {
        self.q_subgroup(g, self.n + 1)
    }

    /// Generator of `D_1 = Q_2`, the subgroup of order `ℓ` of the defect groups.
    pub fn d1_generator(&self, g: &Sl2) -> Mat {
        self.q_generator(g, 2)
    }
}

/// The class inventory of `G`, `N`, `N'` relative to `ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInventory {
    pub g_ell_prime: Vec<ClassLabel>,
    pub n_classes: Vec<ClassLabel>,
    pub nprime_classes: Vec<ClassLabel>,
    pub n_ell_prime: Vec<ClassLabel>,
    pub nprime_ell_prime: Vec<ClassLabel>,
    pub gamma_ell_prime: Vec<ClassLabel>,
    pub gamma_prime_ell_prime: Vec<ClassLabel>,
}

pub fn class_inventories(g: &Sl2, ell: u64) -> Result<ClassInventory, Error> {
    let local = LocalData::new(g.q(), ell)?;
    Ok(ClassInventory {
        g_ell_prime: local.g_ell_prime(),
        n_classes: g.classes(GroupTag::N),
        nprime_classes: g.classes(GroupTag::NPrime),
        n_ell_prime: local.n_ell_prime(),
        nprime_ell_prime: local.nprime_ell_prime(),
        gamma_ell_prime: local.gamma_ell_prime(),
        gamma_prime_ell_prime: local.gamma_prime_ell_prime(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn distinguished_elements() {
        let g = Sl2::new(3).unwrap();
        let t = g.tower();
        assert_eq!(g.d(t.one(Level::Base)).unwrap(), IDENTITY);
        assert_eq!(g.dprime(t.one(Level::Extension)).unwrap(), IDENTITY);
        assert!(g.d(t.zero(Level::Base)).is_err());
        assert!(g.dprime(t.ext_generator()).is_err());
        let (s, sp) = g.sigma_elements();
        assert_eq!(g.mul(&s, &s), IDENTITY);
        assert_eq!(g.mul(&sp, &sp), IDENTITY);
        for k in 0..7 {
            let a = t.pow(t.base_generator(), k);
            let da = g.d(a).unwrap();
            assert_eq!(g.trace(&da), a.coefficients().0 ^ t.inv(a).unwrap().coefficients().0);
            assert_eq!(g.conjugate(&da, &s), g.d_exp(-(k as i64)));
            for j in 0..7 {
                let b = t.pow(t.base_generator(), j);
                assert_eq!(g.mul(&da, &g.d(b).unwrap()), g.d(t.mul(a, b)).unwrap());
            }
        }
        for k in 0..9 {
            let xi = t.pow(g.nonsplit_generator(), k);
            let m = g.dprime(xi).unwrap();
            assert_eq!(g.det(&m), 1);
            assert_eq!(g.trace(&m), t.add(xi, t.frobenius(xi)).coefficients().0);
            assert_eq!(g.conjugate(&m, &sp), g.dprime_exp(-(k as i64)));
        }
    }

    #[test]
    fn classify_examples() {
        let g = Sl2::new(2).unwrap();
        assert_eq!(g.classify(&IDENTITY).unwrap(), ClassLabel::Identity);
        assert_eq!(g.classify(&[1, 1, 0, 1]).unwrap(), ClassLabel::Unipotent);
        assert_eq!(g.classify(&g.d_exp(2)).unwrap(), ClassLabel::Split(1));
        assert!(matches!(g.classify(&[1, 1, 1, 1]), Err(Error::Determinant(0))));
        assert_eq!(g.class_size(GroupTag::G, ClassLabel::Split(1)), 20);
        assert_eq!(g.class_size(GroupTag::G, ClassLabel::Unipotent), 15);
        let id = g.class_data(GroupTag::G, ClassLabel::Identity);
        assert_eq!((id.size, id.centralizer_order), (1, 60));
    }

    #[test]
    fn class_equation_and_count() {
        for f in 2..=6 {
            let g = Sl2::new(f).unwrap();
            let q = g.q();
            for group in [GroupTag::G, GroupTag::N, GroupTag::NPrime] {
                let total: u64 = g.classes(group).iter().map(|&c| g.class_size(group, c)).sum();
                assert_eq!(total, g.group_order(group));
            }
            assert_eq!(g.classes(GroupTag::G).len() as u64, q + 1);
        }
    }

    #[test]
    fn brute_force_class_sizes() {
        for f in 2..=3 {
            let g = Sl2::new(f).unwrap();
            let all = g.elements();
            assert_eq!(all.len() as u64, g.order());
            assert_eq!(all.iter().collect::<HashSet<_>>().len(), all.len());
            let mut counts: HashMap<ClassLabel, u64> = HashMap::new();
            for x in &all {
                *counts.entry(g.classify(x).unwrap()).or_default() += 1;
            }
            for c in g.classes(GroupTag::G) {
                assert_eq!(counts[&c], g.class_size(GroupTag::G, c), "{c}");
                let x = g.representative(c);
                assert_eq!(g.element_order(&x), g.class_data(GroupTag::G, c).element_order);
            }
            for group in [GroupTag::N, GroupTag::NPrime] {
                let mut counts: HashMap<ClassLabel, u64> = HashMap::new();
                for x in g.elements_of(group) {
                    *counts.entry(g.classify_in(group, &x).unwrap()).or_default() += 1;
                }
                for c in g.classes(group) {
                    assert_eq!(counts[&c], g.class_size(group, c), "{group} {c}");
                }
            }
        }
    }

    #[test]
    fn centralisers_of_tori() {
        for f in 2..=3 {
            let g = Sl2::new(f).unwrap();
            let all = g.elements();
            let centraliser = |x: &Mat| -> HashSet<Mat> {
                all.iter().filter(|y| g.mul(x, y) == g.mul(y, x)).copied().collect()
            };
            let t: HashSet<Mat> = g.split_torus().into_iter().collect();
            let tp: HashSet<Mat> = g.nonsplit_torus().into_iter().collect();
            for k in 1..=(g.q() as i64 - 2) / 2 {
                assert_eq!(centraliser(&g.d_exp(k)), t);
            }
            for k in 1..=g.q() as i64 / 2 {
                assert_eq!(centraliser(&g.dprime_exp(k)), tp);
            }
        }
    }

    #[test]
    fn normalisers_of_sylow_chain() {
        for (q, ell) in [(4u64, 3u64), (4, 5), (8, 7), (8, 3)] {
            let g = Sl2::from_q(q).unwrap();
            let local = LocalData::new(q, ell).unwrap();
            let expected: HashSet<Mat> = g.elements_of(local.local_group()).into_iter().collect();
            let all = g.elements();
            for i in 2..=local.n + 1 {
                let qi: HashSet<Mat> = local.q_subgroup(&g, i).into_iter().collect();
                assert_eq!(qi.len() as u64, ell.pow(i - 1));
                let gen = local.q_generator(&g, i);
                let normaliser: HashSet<Mat> =
                    all.iter().filter(|x| qi.contains(&g.conjugate(&gen, x))).copied().collect();
                assert_eq!(normaliser, expected, "q={q} l={ell} i={i}");
            }
            assert_eq!(local.q_subgroup(&g, 1), vec![IDENTITY]);
        }
    }

    #[test]
    fn inventories() {
        let g = Sl2::new(2).unwrap();
        let inv = class_inventories(&g, 3).unwrap();
        assert!(inv.gamma_ell_prime.is_empty());
        assert_eq!(inv.gamma_prime_ell_prime.len(), 2);
        assert!(inv.n_ell_prime.contains(&ClassLabel::Sigma));
        let inv = class_inventories(&g, 5).unwrap();
        assert_eq!(inv.g_ell_prime, vec![ClassLabel::Identity, ClassLabel::Split(1), ClassLabel::Unipotent]);
        assert!(inv.gamma_prime_ell_prime.is_empty());
        assert!(class_inventories(&g, 7).is_err());
        assert!(class_inventories(&g, 2).is_err());
    }

    #[test]
    fn label_strings_round_trip() {
        for c in [
            ClassLabel::Identity,
            ClassLabel::Unipotent,
            ClassLabel::Split(3),
            ClassLabel::NonSplit(12),
            ClassLabel::Sigma,
            ClassLabel::SigmaPrime,
        ] {
            assert_eq!(c.to_string().parse::<ClassLabel>().unwrap(), c);
        }
        assert!("d[x]".parse::<ClassLabel>().is_err());
    }
}
