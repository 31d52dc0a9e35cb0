//! Induction by brute-force enumeration, and the two oracles built on it.
//!
//! For a subgroup `H ≤ K` and a class representative `s` of `K`,
//! `Ind_H^K χ(s) = (1/|H|) Σ_{x ∈ K, x⁻¹sx ∈ H} χ(x⁻¹sx)`. Elements of `H` are
//! mapped to integer keys (a torus exponent, an upper-right entry, …) and the
//! enumeration records how often each key is hit. Any class function on `H`
//! that factors through the key can then be induced without re-enumerating.

use num_rational::Rational64;
use rayon::prelude::*;

use super::{evaluate, ClassFunction, IrreducibleLabel};
use crate::cyclo::Cyclotomic;
use crate::grp::{ClassLabel, GroupTag, LocalData, Mat, Sl2};
use crate::{Case, Error};

/// Materialised subgroups, each with its keying of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subgroup {
    /// upper triangular; key `k` with top-left entry `g^k`
    B,
    /// upper unitriangular; key = upper-right entry (bits)
    U,
    /// split torus; key `k` for `d(g^k)`
    T,
    /// non-split torus; key `k` for `d'(h^k)`
    TPrime,
    /// `Q_i`; key `k` for the `k`-th power of its generator
    Q(LocalData, u32),
}

impl Subgroup {
    pub fn order(&self, q: u64) -> u64 {
        match self {
            Subgroup::B => q * (q - 1),
            Subgroup::U => q,
            Subgroup::T => q - 1,
            Subgroup::TPrime => q + 1,
            Subgroup::Q(local, i) => local.ell.pow(i - 1),
        }
    }

    fn key_count(&self, q: u64) -> usize {
        match self {
            Subgroup::B | Subgroup::T => q as usize - 1,
            Subgroup::U => q as usize,
            Subgroup::TPrime => q as usize + 1,
            Subgroup::Q(local, i) => local.ell.pow(i - 1) as usize,
        }
    }

    /// Key of `x` if `x` lies in the subgroup.
    pub fn key(&self, g: &Sl2, x: &Mat) -> Option<usize> {
        match self {
            Subgroup::B => (x[2] == 0).then(|| g.tower().blog(x[0]).unwrap() as usize),
            Subgroup::U => (x[2] == 0 && x[0] == 1).then_some(x[1] as usize),
            Subgroup::T => g.split_index(x).map(|k| k as usize),
            Subgroup::TPrime => g.nonsplit_index(x).map(|k| k as usize),
            Subgroup::Q(local, i) => {
                let k = match local.case {
                    Case::QMinusOne => g.split_index(x)?,
                    Case::QPlusOne => g.nonsplit_index(x)?,
                };
                let step = local.q_generator_exponent(*i);
                (k % step == 0).then(|| (k / step) as usize)
            }
        }
    }

    fn name(&self) -> String {
        match self {
            Subgroup::B => "B".into(),
            Subgroup::U => "U".into(),
            Subgroup::T => "T".into(),
            Subgroup::TPrime => "T'".into(),
            Subgroup::Q(_, i) => format!("Q_{i}"),
        }
    }
}

/// Per target class, how many `x ∈ K` conjugate the representative onto
/// each key of `H`.
#[derive(Clone, Debug)]
pub struct InductionCounts {
    pub subgroup: Subgroup,
    pub target: GroupTag,
    q: u64,
    classes: Vec<ClassLabel>,
    counts: Vec<Vec<u64>>,
}

impl InductionCounts {
    pub fn new(g: &Sl2, subgroup: Subgroup, target: GroupTag) -> Result<Self, Error> {
        if target != GroupTag::G && !matches!(subgroup, Subgroup::T | Subgroup::TPrime | Subgroup::Q(..)) {
            return Err(Error::NotMaterialised(format!("{} inside {target}", subgroup.name())));
        }
        if let Subgroup::Q(local, i) = &subgroup {
            if local.q != g.q() || *i == 0 || *i > local.n + 1 {
                return Err(Error::NotMaterialised(subgroup.name()));
            }
        }
        let q = g.q();
        let elements = g.elements_of(target);
        let classes = g.classes(target);
        let keys = subgroup.key_count(q);
        let counts = classes
            .par_iter()
            .map(|&c| {
                let s = g.representative(c);
                let mut row = vec![0u64; keys];
                for x in &elements {
                    if let Some(k) = subgroup.key(g, &g.conjugate(&s, x)) {
                        row[k] += 1;
                    }
                }
                row
            })
            .collect();
        Ok(InductionCounts { subgroup, target, q, classes, counts })
    }

    /// Raw hit counts for the class at `index`.
    pub fn counts(&self, index: usize) -> &[u64] {
        &self.counts[index]
    }

    /// Induces the class function `key ↦ value(key)` of the subgroup.
    pub fn induce(&self, value: impl Fn(usize) -> Cyclotomic) -> ClassFunction {
        let keys = self.subgroup.key_count(self.q);
        let cache: Vec<Option<Cyclotomic>> =
            (0..keys).map(|k| self.counts.iter().any(|r| r[k] > 0).then(|| value(k))).collect();
        let inv = Rational64::new(1, self.subgroup.order(self.q) as i64);
        let values = self
            .counts
            .iter()
            .map(|row| {
                let mut v = Cyclotomic::zero();
                for (k, &n) in row.iter().enumerate() {
                    if n > 0 {
                        v = &v + &cache[k].as_ref().unwrap().scale_int(n as i64);
                    }
                }
                v.scale(inv)
            })
            .collect();
        ClassFunction { group: self.target, values }
    }

    /// Induced trivial character.
    pub fn induce_trivial(&self) -> ClassFunction {
        self.induce(|_| Cyclotomic::one())
    }

    pub fn classes(&self) -> &[ClassLabel] {
        &self.classes
    }
}

fn expect_subgroup(counts: &InductionCounts, want: Subgroup) -> Result<(), Error> {
    if counts.subgroup != want || counts.target != GroupTag::G {
        return Err(Error::NotMaterialised(format!(
            "expected counts for {} in G, got {} in {}",
            want.name(),
            counts.subgroup.name(),
            counts.target
        )));
    }
    Ok(())
}

/// `Ind_B^G` of `α_j` inflated through `B → T` (`j = 0` gives `1_G + St`).
pub fn harish_chandra_oracle(borel: &InductionCounts, j: u32) -> Result<ClassFunction, Error> {
    expect_subgroup(borel, Subgroup::B)?;
    let m = borel.q - 1;
    Ok(borel.induce(|k| Cyclotomic::root(m, j as i64 * k as i64)))
}

/// `R'(θ_j)` as `Ind_U^G ψ - Ind_{T'}^G θ_j` with `ψ(b) = (-1)^{Tr b}`,
/// certified against the closed form and against the values forced by
/// column orthogonality from the characters `1_G`, `St`, `R(α)` alone.
pub fn rprime_oracle(
    g: &Sl2,
    unipotent: &InductionCounts,
    nonsplit: &InductionCounts,
    j: u32,
) -> Result<ClassFunction, Error> {
    expect_subgroup(unipotent, Subgroup::U)?;
    expect_subgroup(nonsplit, Subgroup::TPrime)?;
    let q = g.q();
    if j == 0 || j as u64 > q / 2 {
        return Err(Error::InvalidParameters(format!("theta index {j} out of range 1..={}", q / 2)));
    }
    let tower = g.tower();
    let gelfand_graev = unipotent.induce(|b| {
        Cyclotomic::from_int(if tower.absolute_trace(b as u32) & 1 == 0 { 1 } else { -1 })
    });
    let induced = nonsplit.induce(|k| Cyclotomic::root(q + 1, j as i64 * k as i64));
    let candidate = gelfand_graev.sub(&induced)?;

    let forced = forced_rprime_values(g);
    for (c, v) in unipotent.classes().iter().zip(&candidate.values) {
        let closed = evaluate(q, IrreducibleLabel::RPrime(j), *c)?;
        if *v != closed {
            return Err(Error::Certification {
                class: c.to_string(),
                reason: format!("induced value {v} differs from closed form {closed}"),
            });
        }
        if let Some((_, want)) = forced.iter().find(|(fc, _)| fc == c) {
            if v != want {
                return Err(Error::Certification {
                    class: c.to_string(),
                    reason: format!("value {v} differs from orthogonality-forced {want}"),
                });
            }
        }
    }
    Ok(candidate)
}

/// Values of every `R'(θ)` at `d(a)` and `u` forced by column orthogonality,
/// given the other characters and the degree `q - 1`.
///
/// At each such class `c` the `q/2` unknown values `x_θ` are rational with
/// `Σ x_θ² = |C_G(c)| - Σ_known |χ(c)|²` and, from orthogonality against the
/// identity column, `Σ x_θ = -Σ_known χ(1)χ(c) / (q - 1)`. Equality in
/// Cauchy–Schwarz then pins every `x_θ` to the mean.
pub fn forced_rprime_values(g: &Sl2) -> Vec<(ClassLabel, Cyclotomic)> {
    let q = g.q();
    let known: Vec<IrreducibleLabel> = super::irreducibles(q, GroupTag::G)
        .into_iter()
        .filter(|l| !matches!(l, IrreducibleLabel::RPrime(_)))
        .collect();
    let k = Rational64::from_integer(q as i64 / 2);
    let mut out = Vec::new();
    for c in g.classes(GroupTag::G) {
        if !matches!(c, ClassLabel::Split(_) | ClassLabel::Unipotent) {
            continue;
        }
        let centraliser = (g.order() / g.class_size(GroupTag::G, c)) as i64;
        let mut squares = Cyclotomic::from_int(centraliser);
        let mut with_identity = Cyclotomic::zero();
        for &l in &known {
            let v = evaluate(q, l, c).unwrap();
            let d = evaluate(q, l, ClassLabel::Identity).unwrap();
            squares = &squares - &(&v * &v.conj());
            with_identity = &with_identity + &(&d * &v);
        }
        let (Some(squares), Some(sum)) = (squares.as_rational(), with_identity.as_rational()) else {
            continue;
        };
        let sum = -sum / Rational64::from_integer(q as i64 - 1);
        // Cauchy–Schwarz: sum² ≤ k · squares, equality iff all equal
        if sum * sum == k * squares {
            out.push((c, Cyclotomic::from_ratio(sum / k)));
        }
    }
    out
}
