//! `ℓ`-blocks of `G`, `N` and `N'`.
//!
//! The partition is computed from central characters reduced modulo `ℓ` and
//! then compared with the known description (principal block, nilpotent
//! families, blocks of defect zero). Brauer trees are lines; their shape is
//! fixed by the description and their signs come from the type function.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{up_to_inverse, valuation};
use crate::chartab::{evaluate, irreducibles, IrreducibleLabel};
use crate::cyclo::{Cyclotomic, ResidueElement, ResidueSystem};
use crate::grp::{ClassLabel, GroupTag, LocalData, Sl2};
use crate::{Case, Error};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BlockKind {
    Principal,
    /// nilpotent block attached to the split-torus character `α_j`
    NilpotentSplit(u32),
    /// nilpotent block attached to the non-split-torus character `θ_j`
    NilpotentNonSplit(u32),
    DefectZero(IrreducibleLabel),
}

/// A vertex of a Brauer tree: one character, or the exceptional sum `χ_Λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeNode {
    pub label: String,
    pub members: Vec<IrreducibleLabel>,
    pub exceptional: bool,
    pub multiplicity: usize,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDescriptor {
    pub group: GroupTag,
    pub kind: BlockKind,
    pub members: Vec<IrreducibleLabel>,
    /// `d` with defect groups of order `ℓ^d`
    pub defect: u32,
    pub inertial_index: usize,
    /// the exceptional characters `Λ`
    pub exceptional: Vec<IrreducibleLabel>,
    /// Brauer tree as a line; empty for defect zero
    pub tree: Vec<TreeNode>,
    /// the source-algebra module `W(B)` is trivial for every block here
    pub w_trivial: bool,
}

impl BlockDescriptor {
    pub fn name(&self) -> String {
        block_name(self.group, self.kind)
    }
}

pub fn block_name(group: GroupTag, kind: BlockKind) -> String {
    match (group, kind) {
        (_, BlockKind::Principal) => format!("B0({group})"),
        (GroupTag::G, BlockKind::NilpotentSplit(j)) => format!("A_alpha[{j}]"),
        (GroupTag::G, BlockKind::NilpotentNonSplit(j)) => format!("A'_theta[{j}]"),
        (_, BlockKind::NilpotentSplit(j)) => format!("b_alpha[{j}]"),
        (_, BlockKind::NilpotentNonSplit(j)) => format!("b'_theta[{j}]"),
        (GroupTag::G, BlockKind::DefectZero(IrreducibleLabel::R(j))) => format!("A_alpha[{j}]"),
        (GroupTag::G, BlockKind::DefectZero(IrreducibleLabel::RPrime(j))) => format!("A'_theta[{j}]"),
        (_, BlockKind::DefectZero(l)) => format!("b({l})"),
    }
}

impl fmt::Display for BlockDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: defect {}, e = {}, ", self.name(), self.defect, self.inertial_index)?;
        if self.tree.is_empty() {
            let m: Vec<String> = self.members.iter().map(|l| l.to_string()).collect();
            write!(f, "{{{}}}", m.join(", "))
        } else {
            let nodes: Vec<String> = self
                .tree
                .iter()
                .map(|n| format!("{}({})", n.label, if n.sign > 0 { '+' } else { '-' }))
                .collect();
            write!(f, "{}", nodes.join(" -- "))
        }
    }
}

/// `ω_χ(c) = |c| χ(c) / χ(1)` on every class of the group of `χ`.
pub fn central_character(g: &Sl2, label: IrreducibleLabel) -> Result<Vec<Cyclotomic>, Error> {
    let q = g.q();
    let group = label.group();
    let degree = evaluate(q, label, ClassLabel::Identity)?.as_integer().expect("degrees are integers");
    let mut out = Vec::new();
    for c in g.classes(group) {
        let w = evaluate(q, label, c)?.scale(num_rational::Rational64::new(g.class_size(group, c) as i64, degree));
        if w.denominator() != 1 {
            return Err(Error::NotIntegral(format!("omega_{label}({c}) = {w}")));
        }
        out.push(w);
    }
    Ok(out)
}

/// Torus-character index helpers for a fixed `(q, ℓ)`.
fn torus_indices(local: &LocalData) -> (Vec<u32>, Vec<u32>) {
    // (non-trivial η ∈ [S^∧/≡], non-trivial ℓ'-characters of the torus up to inverse)
    let r = local.torus_order;
    let mut eta: Vec<u32> = (1..=(local.ell_n - 1) / 2).map(|s| up_to_inverse(local.m_prime * s, r) as u32).collect();
    eta.sort_unstable();
    let mut alpha: Vec<u32> = (1..=(local.m_prime - 1) / 2).map(|t| up_to_inverse(local.ell_n * t, r) as u32).collect();
    alpha.sort_unstable();
    (eta, alpha)
}

/// The labels `χ_{αη}`, `η ≠ 1`, for the nilpotent block of torus index `j`.
pub fn nilpotent_exceptional(local: &LocalData, j: u32) -> Vec<u32> {
    let r = local.torus_order;
    (1..local.ell_n).map(|s| up_to_inverse(j as u64 + local.m_prime * s, r) as u32).collect()
}

/// Closed-form description of a block: kind, members, Λ and tree layout as
/// `(node label, members, exceptional, expected sign)`.
struct ClosedBlock {
    kind: BlockKind,
    members: Vec<IrreducibleLabel>,
    lambda: Vec<IrreducibleLabel>,
    layout: Vec<(String, Vec<IrreducibleLabel>, bool, i8)>,
}

fn closed_form_blocks(q: u64, local: &LocalData, group: GroupTag) -> Vec<ClosedBlock> {
    use IrreducibleLabel::*;
    let relevant = matches!(
        (group, local.case),
        (GroupTag::G, _) | (GroupTag::N, Case::QMinusOne) | (GroupTag::NPrime, Case::QPlusOne)
    );
    if !relevant {
        return irreducibles(q, group)
            .into_iter()
            .map(|l| ClosedBlock { kind: BlockKind::DefectZero(l), members: vec![l], lambda: vec![], layout: vec![] })
            .collect();
    }
    let (eta, alpha) = torus_indices(local);
    let mut out = Vec::new();
    // principal pair and torus character constructor
    let (one, other, torus): (IrreducibleLabel, IrreducibleLabel, fn(u32) -> IrreducibleLabel) = match group {
        GroupTag::G if local.case == Case::QMinusOne => (TrivG, Steinberg, R),
        GroupTag::G => (TrivG, Steinberg, RPrime),
        GroupTag::N => (TrivN, Eps, Chi),
        GroupTag::NPrime => (TrivNPrime, EpsPrime, ChiPrime),
    };
    let xi_name = match group {
        GroupTag::G if local.case == Case::QMinusOne => "Xi",
        GroupTag::G => "Xi'",
        GroupTag::N => "XiN",
        GroupTag::NPrime => "XiN'",
    };
    // principal block
    let lambda: Vec<IrreducibleLabel> = eta.iter().map(|&j| torus(j)).collect();
    let node = |l: IrreducibleLabel, sign: i8| (l.to_string(), vec![l], false, sign);
    let xi = |sign: i8| (xi_name.to_string(), lambda.clone(), lambda.len() > 1, sign);
    let layout = if group == GroupTag::G && local.case == Case::QPlusOne {
        vec![node(one, 1), node(other, -1), xi(1)]
    } else {
        vec![node(one, 1), xi(-1), node(other, 1)]
    };
    let mut members = vec![one, other];
    members.extend(lambda.iter().copied());
    out.push(ClosedBlock { kind: BlockKind::Principal, members, lambda, layout });
    // nilpotent blocks
    for &j in &alpha {
        let lambda: Vec<IrreducibleLabel> = nilpotent_exceptional(local, j).into_iter().map(torus).collect();
        let base = torus(j);
        let kind = match local.case {
            Case::QMinusOne => BlockKind::NilpotentSplit(j),
            Case::QPlusOne => BlockKind::NilpotentNonSplit(j),
        };
        let (s_base, s_exc) = if group == GroupTag::G && local.case == Case::QPlusOne { (-1, 1) } else { (1, -1) };
        let character = match local.case {
            Case::QMinusOne => format!("alpha[{j}]"),
            Case::QPlusOne => format!("theta[{j}]"),
        };
        let name = format!("{xi_name}_{character}");
        let layout = vec![
            (base.to_string(), vec![base], false, s_base),
            (name, lambda.clone(), lambda.len() > 1, s_exc),
        ];
        let mut members = vec![base];
        members.extend(lambda.iter().copied());
        out.push(ClosedBlock { kind, members, lambda, layout });
    }
    // blocks of defect zero (only in G)
    if group == GroupTag::G {
        let zero: Vec<IrreducibleLabel> = match local.case {
            Case::QMinusOne => (1..=q as u32 / 2).map(RPrime).collect(),
            Case::QPlusOne => (1..=(q as u32 - 2) / 2).map(R).collect(),
        };
        for l in zero {
            out.push(ClosedBlock { kind: BlockKind::DefectZero(l), members: vec![l], lambda: vec![], layout: vec![] });
        }
    }
    out
}

/// Partition of `Irr(group)` by equality of reduced central characters, in
/// order of first appearance.
pub fn central_character_partition(
    g: &Sl2,
    group: GroupTag,
    residues: &ResidueSystem,
) -> Result<Vec<Vec<IrreducibleLabel>>, Error> {
    let mut classes: Vec<(Vec<ResidueElement>, Vec<IrreducibleLabel>)> = Vec::new();
    for label in irreducibles(g.q(), group) {
        let omega = central_character(g, label)?;
        let reduced = omega.iter().map(|w| residues.reduce(w)).collect::<Result<Vec<_>, _>>()?;
        match classes.iter_mut().find(|(key, _)| *key == reduced) {
            Some((_, members)) => members.push(label),
            None => classes.push((reduced, vec![label])),
        }
    }
    Ok(classes.into_iter().map(|(_, m)| m).collect())
}

/// Whether some value of `label` has conductor divisible by `ℓ`.
/// Members sharing their restriction to `ℓ'`-classes with another member are
/// exceptional; with `e = 1` the non-exceptional one among them is the
/// `ℓ`-rational character. A lone exceptional character is taken from `fallback`.
fn detect_exceptional(
    g: &Sl2,
    group: GroupTag,
    ell: u64,
    members: &[IrreducibleLabel],
    fallback: &[IrreducibleLabel],
    classes: &[ClassLabel],
) -> Vec<IrreducibleLabel> {
    let q = g.q();
    let regular: Vec<ClassLabel> =
        classes.iter().copied().filter(|&c| !g.class_data(group, c).element_order.is_multiple_of(ell)).collect();
    let profile = |l: IrreducibleLabel| -> Vec<Cyclotomic> {
        regular.iter().map(|&c| evaluate(q, l, c).unwrap()).collect()
    };
    let profiles: Vec<Vec<Cyclotomic>> = members.iter().map(|&l| profile(l)).collect();
    let mut lambda: Vec<IrreducibleLabel> = members
        .iter()
        .enumerate()
        .filter(|&(a, _)| profiles.iter().enumerate().any(|(b, p)| a != b && *p == profiles[a]))
        .map(|(_, &l)| l)
        .collect();
    if lambda.len() == members.len() && lambda.len() > 1 {
        lambda.retain(|&l| is_ell_irrational(q, ell, l, classes));
    }
    if lambda.is_empty() && fallback.len() == 1 {
        lambda = fallback.to_vec();
    }
    lambda
}

fn is_ell_irrational(q: u64, ell: u64, label: IrreducibleLabel, classes: &[ClassLabel]) -> bool {
    classes.iter().any(|&c| evaluate(q, label, c).unwrap().conductor().is_multiple_of(ell))
}

/// Blocks of `group` for the prime `ℓ`, certified against the closed form.
pub fn block_partition(g: &Sl2, group: GroupTag, ell: u64) -> Result<Vec<BlockDescriptor>, Error> {
    let local = LocalData::new(g.q(), ell)?;
    let residues = ResidueSystem::new(g.q(), ell)?;
    block_partition_with(g, group, &local, &residues)
}

/// As [`block_partition`] with an explicit choice of residue fields.
pub fn block_partition_with(
    g: &Sl2,
    group: GroupTag,
    local: &LocalData,
    residues: &ResidueSystem,
) -> Result<Vec<BlockDescriptor>, Error> {
    let q = g.q();
    let ell = local.ell;
    let computed = central_character_partition(g, group, residues)?;
    let closed = closed_form_blocks(q, local, group);

    let normalise = |mut v: Vec<IrreducibleLabel>| {
        v.sort();
        v
    };
    let mut computed_sets: Vec<Vec<IrreducibleLabel>> = computed.into_iter().map(normalise).collect();
    computed_sets.sort();
    let mut closed_sets: Vec<Vec<IrreducibleLabel>> = closed.iter().map(|b| normalise(b.members.clone())).collect();
    closed_sets.sort();
    if computed_sets != closed_sets {
        return Err(Error::BlockMismatch(format!(
            "{group}, l = {ell}: central characters give {} blocks, closed form {}",
            computed_sets.len(),
            closed_sets.len()
        )));
    }

    let order_val = valuation(g.group_order(group), ell);
    let classes = g.classes(group);
    let d1 = d1_class(local, group);
    let mut out = Vec::with_capacity(closed.len());
    for b in closed {
        let min_deg = b
            .members
            .iter()
            .map(|&l| valuation(evaluate(q, l, ClassLabel::Identity).unwrap().as_integer().unwrap() as u64, ell))
            .min()
            .unwrap();
        let defect = order_val - min_deg;
        let lambda = detect_exceptional(g, group, ell, &b.members, &b.lambda, &classes);
        if normalise(lambda.clone()) != normalise(b.lambda.clone()) {
            return Err(Error::BlockMismatch(format!(
                "{}: exceptional characters differ from the closed form",
                block_name(group, b.kind)
            )));
        }
        // e = edges of the tree
        let inertial_index = b.layout.len().saturating_sub(1).max(1);
        let mut desc = BlockDescriptor {
            group,
            kind: b.kind,
            members: b.members.clone(),
            defect,
            inertial_index,
            exceptional: b.lambda.clone(),
            tree: b
                .layout
                .iter()
                .map(|(label, members, exceptional, _)| TreeNode {
                    label: label.clone(),
                    members: members.clone(),
                    exceptional: *exceptional,
                    multiplicity: members.len(),
                    sign: 0,
                })
                .collect(),
            w_trivial: true,
        };
        if defect > 0 {
            let expected_defect = local.n;
            if defect != expected_defect {
                return Err(Error::BlockMismatch(format!("{}: defect {defect} (expected {expected_defect})", desc.name())));
            }
            let signs = type_function(q, &desc, d1.expect("positive defect implies l | |H|"))?;
            for ((node, sign), (_, _, _, want)) in desc.tree.iter_mut().zip(signs).zip(&b.layout) {
                if sign != *want {
                    return Err(Error::BlockMismatch(format!("{}: node {} has sign {sign}, expected {want}", block_name(group, b.kind), node.label)));
                }
                node.sign = sign;
            }
        }
        out.push(desc);
    }
    Ok(out)
}

/// Class in `group` of the fixed generator of `D_1 = Q_2`, if `ℓ` divides `|group|`.
pub fn d1_class(local: &LocalData, group: GroupTag) -> Option<ClassLabel> {
    let k = local.q_generator_exponent(2);
    match (group, local.case) {
        (GroupTag::G, _) | (GroupTag::N, Case::QMinusOne) | (GroupTag::NPrime, Case::QPlusOne) => Some(local.torus_class(k)),
        _ => None,
    }
}

/// Signs of the tree nodes at the class `x` of a generator of `D_1`.
pub fn type_function(q: u64, block: &BlockDescriptor, x: ClassLabel) -> Result<Vec<i8>, Error> {
    block
        .tree
        .iter()
        .map(|node| {
            let mut v = Cyclotomic::zero();
            for &l in &node.members {
                v = &v + &evaluate(q, l, x)?;
            }
            match v.real_sign()? {
                0 => Err(Error::ZeroSign(format!("{} at {x} in {}", node.label, block.name()))),
                s => Ok(s),
            }
        })
        .collect()
}

/// Which side of the Brauer correspondence an idempotent lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Group,
    Normaliser,
}

/// Coefficient of `t⁻¹` in the block idempotent, `t` the `k`-th power of the
/// generator of the torus containing the defect group. The closed form is
/// checked against `(1/|H|) Σ_{χ ∈ Irr(B)} χ(1) χ(t)`.
pub fn idempotent_coefficient(q: u64, local: &LocalData, kind: BlockKind, k: u64, side: Side) -> Result<Cyclotomic, Error> {
    let j = match (kind, local.case) {
        (BlockKind::NilpotentSplit(j), Case::QMinusOne) | (BlockKind::NilpotentNonSplit(j), Case::QPlusOne) => j,
        _ => return Err(Error::InvalidParameters(format!("{kind:?} is not a nilpotent block for {}", local.case))),
    };
    let r = local.torus_order;
    let m = local.m_prime as i64;
    let qi = q as i64;
    let k = k % r;
    let pair = Cyclotomic::root_pair(r, j as i64 * k as i64);
    let closed = if !k.is_multiple_of(local.ell_n) {
        Cyclotomic::zero()
    } else {
        use num_rational::Rational64 as Q;
        match (local.case, side, k == 0) {
            (Case::QMinusOne, Side::Group, true) => Cyclotomic::from_ratio(Q::new(qi + 1, qi * m)),
            (Case::QMinusOne, Side::Group, false) => pair.scale(Q::new(1, qi * m)),
            (Case::QPlusOne, Side::Group, true) => Cyclotomic::from_ratio(Q::new(qi - 1, qi * m)),
            (Case::QPlusOne, Side::Group, false) => pair.scale(Q::new(-1, qi * m)),
            (_, Side::Normaliser, true) => Cyclotomic::from_ratio(Q::new(2, m)),
            (_, Side::Normaliser, false) => pair.scale(Q::new(1, m)),
        }
    };
    // direct summation over the block
    let (torus_label, order): (fn(u32) -> IrreducibleLabel, u64) = match (side, local.case) {
        (Side::Group, Case::QMinusOne) => (IrreducibleLabel::R, q * (q * q - 1)),
        (Side::Group, Case::QPlusOne) => (IrreducibleLabel::RPrime, q * (q * q - 1)),
        (Side::Normaliser, Case::QMinusOne) => (IrreducibleLabel::Chi, 2 * (q - 1)),
        (Side::Normaliser, Case::QPlusOne) => (IrreducibleLabel::ChiPrime, 2 * (q + 1)),
    };
    let class = local.torus_class(k);
    let mut sum = Cyclotomic::zero();
    let mut members = vec![j];
    members.extend(nilpotent_exceptional(local, j));
    for jj in members {
        let l = torus_label(jj);
        let deg = evaluate(q, l, ClassLabel::Identity)?;
        sum = &sum + &(&deg * &evaluate(q, l, class)?);
    }
    let direct = sum.scale(num_rational::Rational64::new(1, order as i64));
    if direct != closed {
        return Err(Error::IdempotentMismatch {
            block: block_name(if side == Side::Group { GroupTag::G } else { local.local_group() }, kind),
            element: format!("{class} (k = {k})"),
        });
    }
    Ok(closed)
}

/// One line of the Brauer correspondence report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrespondenceEntry {
    pub block: String,
    pub element: String,
    pub lhs: String,
    pub rhs: String,
    pub status: String,
}

/// Compares the reductions of the `G`-side and normaliser-side idempotent
/// coefficients of every nilpotent block at every `ℓ'`-element of the torus.
pub fn brauer_correspondence_check(g: &Sl2, ell: u64) -> Result<Vec<CorrespondenceEntry>, Error> {
    let q = g.q();
    let local = LocalData::new(q, ell)?;
    let residues = ResidueSystem::new(q, ell)?;
    let (_, alpha) = torus_indices(&local);
    let local_group = local.local_group();
    let mut report = vec![CorrespondenceEntry {
        block: format!("B0(G) ~ B0({local_group})"),
        element: "-".into(),
        lhs: "-".into(),
        rhs: "-".into(),
        status: "recorded".into(),
    }];
    for j in alpha {
        let kind = match local.case {
            Case::QMinusOne => BlockKind::NilpotentSplit(j),
            Case::QPlusOne => BlockKind::NilpotentNonSplit(j),
        };
        let name = format!("{} ~ {}", block_name(GroupTag::G, kind), block_name(local_group, kind));
        for t in 0..local.m_prime {
            let k = t * local.ell_n;
            let lhs = residues.reduce(&idempotent_coefficient(q, &local, kind, k, Side::Group)?)?;
            let rhs = residues.reduce(&idempotent_coefficient(q, &local, kind, k, Side::Normaliser)?)?;
            let element = match local.case {
                Case::QMinusOne => format!("d(g^{k})"),
                Case::QPlusOne => format!("d'(h^{k})"),
            };
            report.push(CorrespondenceEntry {
                block: name.clone(),
                element,
                status: if lhs == rhs { "pass" } else { "fail" }.into(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }
    Ok(report)
}

/// Counts of (principal, nilpotent, defect zero) blocks.
pub fn block_counts(blocks: &[BlockDescriptor]) -> (usize, usize, usize) {
    let mut counts = BTreeMap::new();
    for b in blocks {
        let key = match b.kind {
            BlockKind::Principal => 0,
            BlockKind::NilpotentSplit(_) | BlockKind::NilpotentNonSplit(_) => 1,
            BlockKind::DefectZero(_) => 2,
        };
        *counts.entry(key).or_insert(0) += 1;
    }
    let get = |k| counts.get(&k).copied().unwrap_or(0);
    (get(0), get(1), get(2))
}
