//! Ordinary character tables of `G`, `N` and `N'` in closed form, class
//! functions, and induction by enumeration.
//!
//! Torus characters are indices: `α_j(d(g^k)) = ζ_{q-1}^{jk}` and
//! `θ_j(d'(h^k)) = ζ_{q+1}^{jk}`, with `j` reduced up to inverse.

mod induce;

pub use induce::{harish_chandra_oracle, rprime_oracle, InductionCounts, Subgroup};

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::cyclo::Cyclotomic;
use crate::grp::{ClassLabel, GroupTag, Sl2};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrreducibleLabel {
    TrivG,
    Steinberg,
    R(u32),
    RPrime(u32),
    TrivN,
    Eps,
    Chi(u32),
    TrivNPrime,
    EpsPrime,
    ChiPrime(u32),
}

impl IrreducibleLabel {
    pub fn group(&self) -> GroupTag {
        use IrreducibleLabel::*;
        match self {
            TrivG | Steinberg | R(_) | RPrime(_) => GroupTag::G,
            TrivN | Eps | Chi(_) => GroupTag::N,
            TrivNPrime | EpsPrime | ChiPrime(_) => GroupTag::NPrime,
        }
    }

    /// Trivial character of `group`.
    pub fn trivial(group: GroupTag) -> Self {
        match group {
            GroupTag::G => IrreducibleLabel::TrivG,
            GroupTag::N => IrreducibleLabel::TrivN,
            GroupTag::NPrime => IrreducibleLabel::TrivNPrime,
        }
    }
}

impl fmt::Display for IrreducibleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use IrreducibleLabel::*;
        match self {
            TrivG => write!(f, "1_G"),
            Steinberg => write!(f, "St"),
            R(j) => write!(f, "R(alpha[{j}])"),
            RPrime(j) => write!(f, "R'(theta[{j}])"),
            TrivN => write!(f, "1_N"),
            Eps => write!(f, "eps"),
            Chi(j) => write!(f, "chi_alpha[{j}]"),
            TrivNPrime => write!(f, "1_N'"),
            EpsPrime => write!(f, "eps'"),
            ChiPrime(j) => write!(f, "chi'_theta[{j}]"),
        }
    }
}

impl FromStr for IrreducibleLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        use IrreducibleLabel::*;
        let bad = || Error::Serialisation(format!("unknown character label {s:?}"));
        let idx = |rest: &str, suffix: &str| -> Result<u32, Error> {
            rest.strip_suffix(suffix).and_then(|k| k.parse().ok()).ok_or_else(bad)
        };
        Ok(match s {
            "1_G" => TrivG,
            "St" => Steinberg,
            "1_N" => TrivN,
            "eps" => Eps,
            "1_N'" => TrivNPrime,
            "eps'" => EpsPrime,
            _ => {
                if let Some(r) = s.strip_prefix("R(alpha[") {
                    R(idx(r, "])")?)
                } else if let Some(r) = s.strip_prefix("R'(theta[") {
                    RPrime(idx(r, "])")?)
                } else if let Some(r) = s.strip_prefix("chi_alpha[") {
                    Chi(idx(r, "]")?)
                } else if let Some(r) = s.strip_prefix("chi'_theta[") {
                    ChiPrime(idx(r, "]")?)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

impl Serialize for IrreducibleLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IrreducibleLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Irreducible characters of `group` in table order.
pub fn irreducibles(q: u64, group: GroupTag) -> Vec<IrreducibleLabel> {
    use IrreducibleLabel::*;
    let q = q as u32;
    let split = 1..=(q - 2) / 2;
    let nonsplit = 1..=q / 2;
    match group {
        GroupTag::G => [TrivG, Steinberg].into_iter().chain(split.map(R)).chain(nonsplit.map(RPrime)).collect(),
        GroupTag::N => [TrivN, Eps].into_iter().chain(split.map(Chi)).collect(),
        GroupTag::NPrime => [TrivNPrime, EpsPrime].into_iter().chain(nonsplit.map(ChiPrime)).collect(),
    }
}

fn class_in_group(group: GroupTag, class: ClassLabel) -> bool {
    use ClassLabel::*;
    match group {
        GroupTag::G => matches!(class, Identity | Unipotent | Split(_) | NonSplit(_)),
        GroupTag::N => matches!(class, Identity | Split(_) | Sigma),
        GroupTag::NPrime => matches!(class, Identity | NonSplit(_) | SigmaPrime),
    }
}

/// Closed-form value of an irreducible character at a class of its group.
pub fn evaluate(q: u64, label: IrreducibleLabel, class: ClassLabel) -> Result<Cyclotomic, Error> {
    use ClassLabel::*;
    use IrreducibleLabel::*;
    if !class_in_group(label.group(), class) {
        return Err(Error::GroupMismatch(label.to_string(), class.to_string()));
    }
    let qi = q as i64;
    let c = Cyclotomic::from_int;
    let alpha = |j: u32, k: u32| Cyclotomic::root_pair(q - 1, j as i64 * k as i64);
    let theta = |j: u32, k: u32| Cyclotomic::root_pair(q + 1, j as i64 * k as i64);
    Ok(match (label, class) {
        (TrivG | TrivN | TrivNPrime, _) => c(1),
        (Steinberg, Identity) => c(qi),
        (Steinberg, Split(_)) => c(1),
        (Steinberg, NonSplit(_)) => c(-1),
        (Steinberg, Unipotent) => c(0),
        (R(_), Identity) => c(qi + 1),
        (R(j), Split(k)) => alpha(j, k),
        (R(_), NonSplit(_)) => c(0),
        (R(_), Unipotent) => c(1),
        (RPrime(_), Identity) => c(qi - 1),
        (RPrime(_), Split(_)) => c(0),
        (RPrime(j), NonSplit(k)) => -theta(j, k),
        (RPrime(_), Unipotent) => c(-1),
        (Eps, Sigma) | (EpsPrime, SigmaPrime) => c(-1),
        (Eps | EpsPrime, _) => c(1),
        (Chi(_) | ChiPrime(_), Identity) => c(2),
        (Chi(j), Split(k)) => alpha(j, k),
        (ChiPrime(j), NonSplit(k)) => theta(j, k),
        (Chi(_), Sigma) | (ChiPrime(_), SigmaPrime) => c(0),
        _ => unreachable!("group membership checked above"),
    })
}

/// Exact class function on `G`, `N` or `N'`, indexed by the group's class order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassFunction {
    pub group: GroupTag,
    pub values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn zero(q: u64, group: GroupTag) -> Self {
        let n = class_count(q, group);
        ClassFunction { group, values: vec![Cyclotomic::zero(); n] }
    }

    pub fn of(q: u64, label: IrreducibleLabel) -> Self {
        let group = label.group();
        let values = classes(q, group).into_iter().map(|c| evaluate(q, label, c).unwrap()).collect();
        ClassFunction { group, values }
    }

    /// `Σ mult · χ` over a formal combination of irreducibles.
    pub fn from_terms(q: u64, group: GroupTag, terms: &[(IrreducibleLabel, i64)]) -> Result<Self, Error> {
        let cls = classes(q, group);
        let mut values = Vec::with_capacity(cls.len());
        for &c in &cls {
            let mut v = Cyclotomic::zero();
            for &(label, mult) in terms {
                if label.group() != group {
                    return Err(Error::GroupMismatch(label.to_string(), group.to_string()));
                }
                v = &v + &evaluate(q, label, c)?.scale_int(mult);
            }
            values.push(v);
        }
        Ok(ClassFunction { group, values })
    }

    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    fn check(&self, other: &Self) -> Result<(), Error> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(self.group.to_string(), other.group.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(ClassFunction { group: self.group, values })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(ClassFunction { group: self.group, values })
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(ClassFunction { group: self.group, values })
    }

    pub fn scale_int(&self, k: i64) -> Self {
        ClassFunction { group: self.group, values: self.values.iter().map(|v| v.scale_int(k)).collect() }
    }

    pub fn conj(&self) -> Self {
        ClassFunction { group: self.group, values: self.values.iter().map(Cyclotomic::conj).collect() }
    }
}

/// Class labels of `group` for `SL2(q)`; same order as [`Sl2::classes`].
pub fn classes(q: u64, group: GroupTag) -> Vec<ClassLabel> {
    let q = q as u32;
    let mut out = vec![ClassLabel::Identity];
    match group {
        GroupTag::G => {
            out.extend((1..=(q - 2) / 2).map(ClassLabel::Split));
            out.extend((1..=q / 2).map(ClassLabel::NonSplit));
            out.push(ClassLabel::Unipotent);
        }
        GroupTag::N => {
            out.extend((1..=(q - 2) / 2).map(ClassLabel::Split));
            out.push(ClassLabel::Sigma);
        }
        GroupTag::NPrime => {
            out.extend((1..=q / 2).map(ClassLabel::NonSplit));
            out.push(ClassLabel::SigmaPrime);
        }
    }
    out
}

fn class_count(q: u64, group: GroupTag) -> usize {
    match group {
        GroupTag::G => q as usize + 1,
        GroupTag::N => q as usize / 2 + 1,
        GroupTag::NPrime => q as usize / 2 + 2,
    }
}

/// `(1/|H|) Σ_classes |C| φ(g) conj(ψ(g))`, which must be rational.
pub fn inner_product(g: &Sl2, phi: &ClassFunction, psi: &ClassFunction) -> Result<Rational64, Error> {
    phi.check(psi)?;
    let group = phi.group;
    let mut total = Cyclotomic::zero();
    for ((c, a), b) in g.classes(group).into_iter().zip(&phi.values).zip(&psi.values) {
        let size = g.class_size(group, c) as i64;
        total = &total + &(a * &b.conj()).scale_int(size);
    }
    let total = total.scale(Rational64::new(1, g.group_order(group) as i64));
    total.as_rational().ok_or_else(|| Error::NotRational(total.term_string()))
}

/// The full character table of one of the three groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharTable {
    pub group: GroupTag,
    pub order: u64,
    pub classes: Vec<ClassLabel>,
    pub sizes: Vec<u64>,
    pub labels: Vec<IrreducibleLabel>,
    /// `values[χ][class]`
    pub values: Vec<Vec<Cyclotomic>>,
}

impl CharTable {
    pub fn new(g: &Sl2, group: GroupTag) -> Self {
        let q = g.q();
        let classes = g.classes(group);
        let sizes = classes.iter().map(|&c| g.class_size(group, c)).collect();
        let labels = irreducibles(q, group);
        let values = labels
            .iter()
            .map(|&l| classes.iter().map(|&c| evaluate(q, l, c).unwrap()).collect())
            .collect();
        CharTable { group, order: g.group_order(group), classes, sizes, labels, values }
    }

    pub fn row(&self, label: IrreducibleLabel) -> Option<ClassFunction> {
        let i = self.labels.iter().position(|&l| l == label)?;
        Some(ClassFunction { group: self.group, values: self.values[i].clone() })
    }

    /// Index of `class` among the columns.
    pub fn column(&self, class: ClassLabel) -> Option<usize> {
        self.classes.iter().position(|&c| c == class)
    }

    /// Gram matrix of the rows under the standard inner product, exactly.
    pub fn row_gram(&self) -> Vec<Vec<Cyclotomic>> {
        let k = self.labels.len();
        let conj: Vec<Vec<Cyclotomic>> = self.values.iter().map(|r| r.iter().map(Cyclotomic::conj).collect()).collect();
        let inv_order = Rational64::new(1, self.order as i64);
        (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        let mut s = Cyclotomic::zero();
                        for (c, &size) in self.sizes.iter().enumerate() {
                            s = &s + &(&self.values[a][c] * &conj[b][c]).scale_int(size as i64);
                        }
                        s.scale(inv_order)
                    })
                    .collect()
            })
            .collect()
    }

    /// Column inner products `Σ_χ χ(c) conj(χ(c'))`.
    pub fn column_gram(&self) -> Vec<Vec<Cyclotomic>> {
        let n = self.classes.len();
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| self.values.iter().map(|row| &row[a] * &row[b].conj()).sum())
                    .collect()
            })
            .collect()
    }

    /// First and second orthogonality and `Σ χ(1)² = |H|`, exactly.
    pub fn check_orthogonality(&self) -> Result<(), Error> {
        for (a, row) in self.row_gram().into_iter().enumerate() {
            for (b, v) in row.into_iter().enumerate() {
                let want = Cyclotomic::from_int((a == b) as i64);
                if v != want {
                    return Err(Error::CheckFailed(format!(
                        "{}: <{}, {}> = {}",
                        self.group, self.labels[a], self.labels[b], v
                    )));
                }
            }
        }
        for (a, row) in self.column_gram().into_iter().enumerate() {
            for (b, v) in row.into_iter().enumerate() {
                let want = if a == b { (self.order / self.sizes[a]) as i64 } else { 0 };
                if v != Cyclotomic::from_int(want) {
                    return Err(Error::CheckFailed(format!(
                        "{}: columns {} and {} give {}",
                        self.group, self.classes[a], self.classes[b], v
                    )));
                }
            }
        }
        let squares: Cyclotomic = self.values.iter().map(|r| &r[0] * &r[0]).sum();
        if squares != Cyclotomic::from_int(self.order as i64) {
            return Err(Error::CheckFailed(format!("{}: sum of squared degrees {}", self.group, squares)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        use IrreducibleLabel::*;
        let q = 8;
        assert_eq!(evaluate(q, Steinberg, ClassLabel::Unipotent).unwrap(), Cyclotomic::zero());
        assert_eq!(evaluate(q, RPrime(1), ClassLabel::Identity).unwrap(), Cyclotomic::from_int(7));
        assert_eq!(evaluate(q, Chi(2), ClassLabel::Sigma).unwrap(), Cyclotomic::zero());
        assert_eq!(
            evaluate(4, RPrime(1), ClassLabel::NonSplit(2)).unwrap(),
            -(&Cyclotomic::root(5, 2) + &Cyclotomic::root(5, 3))
        );
        assert!(matches!(evaluate(q, Chi(1), ClassLabel::Unipotent), Err(Error::GroupMismatch(..))));
    }

    #[test]
    fn label_counts_and_strings() {
        for q in [4u64, 8, 16] {
            assert_eq!(irreducibles(q, GroupTag::G).len() as u64, q + 1);
            assert_eq!(irreducibles(q, GroupTag::N).len() as u64, 2 + (q - 2) / 2);
            assert_eq!(irreducibles(q, GroupTag::NPrime).len() as u64, 2 + q / 2);
            for group in [GroupTag::G, GroupTag::N, GroupTag::NPrime] {
                for l in irreducibles(q, group) {
                    assert_eq!(l.to_string().parse::<IrreducibleLabel>().unwrap(), l);
                }
            }
        }
    }

    #[test]
    fn orthogonality_small() {
        for f in 2..=4 {
            let g = Sl2::new(f).unwrap();
            for group in [GroupTag::G, GroupTag::N, GroupTag::NPrime] {
                CharTable::new(&g, group).check_orthogonality().unwrap();
            }
        }
    }

    #[test]
    fn inner_products() {
        let g = Sl2::new(2).unwrap();
        let one = ClassFunction::of(4, IrreducibleLabel::TrivG);
        let st = ClassFunction::of(4, IrreducibleLabel::Steinberg);
        assert_eq!(inner_product(&g, &one, &one).unwrap(), Rational64::from_integer(1));
        assert_eq!(inner_product(&g, &st, &one).unwrap(), Rational64::from_integer(0));
        let eps = ClassFunction::of(4, IrreducibleLabel::Eps);
        assert!(inner_product(&g, &eps, &one).is_err());
        let sum = one.add(&st).unwrap();
        assert_eq!(inner_product(&g, &sum, &sum).unwrap(), Rational64::from_integer(2));
    }
}
