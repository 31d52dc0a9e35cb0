//! Closed formulas for the blocks `T_{i,v}`, written directly in terms of
//! `q`, the π-constants and torus characters. Used as the independent side
//! when certifying an assembled table.

use crate::chartab::IrreducibleLabel;
use crate::cyclo::Cyclotomic;
use crate::grp::{ClassLabel, LocalData};
use crate::tsources::{PiConstants, RowKind};
use crate::{Case, Error};

fn alpha(q: u64, j: u32, k: u32) -> Cyclotomic {
    Cyclotomic::root_pair(q - 1, j as i64 * k as i64)
}

fn theta(q: u64, j: u32, k: u32) -> Cyclotomic {
    Cyclotomic::root_pair(q + 1, j as i64 * k as i64)
}

/// Closed-form `T_{i,v}` entry for the row of kind `kind` at vertex `Q_i`,
/// column `s`.
pub fn closed_form_value(
    q: u64,
    local: &LocalData,
    pis: &PiConstants,
    vertex: u32,
    kind: RowKind,
    v: u32,
    s: ClassLabel,
) -> Result<Cyclotomic, Error> {
    use ClassLabel::*;
    use RowKind::*;
    if !local.columns(v).contains(&s) {
        return Err(Error::InvalidParameters(format!("{s} is not a column of vertex Q_{v}")));
    }
    if v > vertex {
        return Ok(Cyclotomic::zero());
    }
    let qi = q as i64;
    let c = Cyclotomic::from_int;
    let n = local.n;
    let bad = || Error::InvalidParameters(format!("no closed form for {kind:?} at Q_{vertex}, column {s}"));

    if v >= 2 {
        // Green correspondents: rows of the local tables
        let p = match local.case {
            Case::QMinusOne => pis.pi[(vertex - 1) as usize],
            Case::QPlusOne => pis.pi_second[(vertex - 1) as usize],
        } as i64;
        let w = 1 + 2 * p;
        let pair = |j: u32, k: u32| match local.case {
            Case::QMinusOne => alpha(q, j, k),
            Case::QPlusOne => theta(q, j, k),
        };
        return Ok(match (kind, s) {
            (Trivial | Other, Identity | Split(_) | NonSplit(_)) => c(w),
            (Trivial, Sigma | SigmaPrime) => c(1),
            (Other, Sigma | SigmaPrime) => c(-1),
            (Nilpotent(_), Identity) => c(2 * w),
            (Nilpotent(j), Split(k) | NonSplit(k)) => pair(j, k).scale_int(w),
            (Nilpotent(_), Sigma | SigmaPrime) => c(0),
            _ => return Err(bad()),
        });
    }

    Ok(match local.case {
        Case::QMinusOne => {
            let p = pis.pi[(vertex - 1) as usize] as i64;
            let w = 1 + 2 * p;
            match (kind, s) {
                (Trivial, Identity) => c(1 + (qi + 1) * p),
                (Trivial, Split(_)) => c(w),
                (Trivial, NonSplit(_)) => c(1),
                (Trivial, Unipotent) => c(1 + p),
                (Other, Identity) => c(qi + (qi + 1) * p),
                (Other, Split(_)) => c(w),
                (Other, NonSplit(_)) => c(-1),
                (Other, Unipotent) => c(p),
                (Nilpotent(_), Identity) => c((qi + 1) * w),
                (Nilpotent(j), Split(k)) => alpha(q, j, k).scale_int(w),
                (Nilpotent(_), NonSplit(_)) => c(0),
                (Nilpotent(_), Unipotent) => c(w),
                (DefectZero(IrreducibleLabel::RPrime(_)), Identity) => c(qi - 1),
                (DefectZero(IrreducibleLabel::RPrime(_)), Split(_)) => c(0),
                (DefectZero(IrreducibleLabel::RPrime(j)), NonSplit(k)) => -theta(q, j, k),
                (DefectZero(IrreducibleLabel::RPrime(_)), Unipotent) => c(-1),
                _ => return Err(bad()),
            }
        }
        Case::QPlusOne if vertex == 1 => {
            let pq = pis.pi_prime_q() as i64;
            let w = 1 + 2 * pq;
            match (kind, s) {
                (Trivial, Identity) => c(1 + qi),
                (Trivial, Split(_)) => c(2),
                (Trivial, NonSplit(_)) => c(0),
                (Trivial, Unipotent) => c(1),
                (Other, Identity) => c(qi + (qi - 1) * pq),
                (Other, Split(_)) => c(1),
                (Other, NonSplit(_)) => c(-w),
                (Other, Unipotent) => c(-pq),
                (Nilpotent(_), Identity) => c((qi - 1) * w),
                (Nilpotent(_), Split(_)) => c(0),
                (Nilpotent(j), NonSplit(k)) => -theta(q, j, k).scale_int(w),
                (Nilpotent(_), Unipotent) => c(-w),
                (DefectZero(IrreducibleLabel::R(_)), Identity) => c(qi + 1),
                (DefectZero(IrreducibleLabel::R(j)), Split(k)) => alpha(q, j, k),
                (DefectZero(IrreducibleLabel::R(_)), NonSplit(_)) => c(0),
                (DefectZero(IrreducibleLabel::R(_)), Unipotent) => c(1),
                _ => return Err(bad()),
            }
        }
        Case::QPlusOne if vertex <= n => {
            let p = pis.pi_prime[(vertex - 1) as usize] as i64;
            match (kind, s) {
                (Trivial, Identity) => c(1 + qi + (qi - 1) * p),
                (Trivial, Split(_)) => c(2),
                (Trivial, NonSplit(_)) => c(-2 * p),
                (Trivial, Unipotent) => c(1 - p),
                (Other, Identity) => c(qi + (qi - 1) * p),
                (Other, Split(_)) => c(1),
                (Other, NonSplit(_)) => c(-1 - 2 * p),
                (Other, Unipotent) => c(-p),
                (Nilpotent(_), Identity) => c(2 * (qi - 1) * p),
                (Nilpotent(_), Split(_)) => c(0),
                (Nilpotent(j), NonSplit(k)) => theta(q, j, k).scale_int(-2 * p),
                (Nilpotent(_), Unipotent) => c(-2 * p),
                _ => return Err(bad()),
            }
        }
        Case::QPlusOne => {
            let pq = pis.pi_prime_q() as i64;
            match (kind, s) {
                (Trivial, _) => c(1),
                (Other, Identity) => c((qi - 1) * pq),
                (Other, Split(_)) => c(0),
                (Other, NonSplit(_)) => c(-2 * pq),
                (Other, Unipotent) => c(-pq),
                (Nilpotent(_), Identity) => c(2 * (qi - 1) * pq),
                (Nilpotent(_), Split(_)) => c(0),
                (Nilpotent(j), NonSplit(k)) => theta(q, j, k).scale_int(-2 * pq),
                (Nilpotent(_), Unipotent) => c(-2 * pq),
                _ => return Err(bad()),
            }
        }
    })
}
