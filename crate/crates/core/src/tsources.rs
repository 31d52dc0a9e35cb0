//! Characters of the trivial source modules of `G`, grouped by vertex, and of
//! their Green correspondents in `N` (case `ℓ | q-1`) or `N'` (case `ℓ | q+1`).
//!
//! A row with a proper exceptional sum only fixes how many exceptional
//! characters occur; which ones is a [`Selection`]. Every species value is
//! independent of that choice, since the exceptional characters of a block
//! agree on `ℓ'`-elements.

use serde::{Deserialize, Serialize};

use crate::arith::up_to_inverse;
use crate::blocks::{BlockDescriptor, BlockKind};
use crate::chartab::{ClassFunction, IrreducibleLabel};
use crate::grp::{GroupTag, LocalData};
use crate::{Case, Error};

/// The integers `π_{q,i}`, `π'_{q,i}`, `π''_{q,i}` for `i = 0..=n`.
///
/// Only the family belonging to the case is populated: `π` for `ℓ | q-1`,
/// `π'` and `π''` for `ℓ | q+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiConstants {
    pub case: Case,
    pub n: u32,
    pub pi: Vec<u64>,
    pub pi_prime: Vec<u64>,
    pub pi_second: Vec<u64>,
}

impl PiConstants {
    pub fn new(local: &LocalData) -> Self {
        let ell = local.ell;
        let n = local.n;
        let lower = |i: u32| (ell.pow(n - i) - 1) / 2;
        let (pi, pi_prime, pi_second) = match local.case {
            Case::QMinusOne => ((0..=n).map(lower).collect(), vec![], vec![]),
            Case::QPlusOne => (
                vec![],
                (0..=n).map(|i| (local.ell_n - ell.pow(n - i)) / 2).collect(),
                (0..=n).map(lower).collect(),
            ),
        };
        PiConstants { case: local.case, n, pi, pi_prime, pi_second }
    }

    /// `π_q = π_{q,0}`.
    pub fn pi_q(&self) -> u64 {
        self.pi[0]
    }

    /// `π'_q = π'_{q,n}`.
    pub fn pi_prime_q(&self) -> u64 {
        self.pi_prime[self.n as usize]
    }
}

/// Which admissible exceptional characters a partial sum uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Selection {
    /// the first ones in exponent order
    #[default]
    Leading,
    /// the last ones in exponent order
    Trailing,
}

impl Selection {
    fn pick(self, all: &[u32], k: usize) -> Vec<u32> {
        assert!(k <= all.len(), "selection of {k} from {} exceptional characters", all.len());
        match self {
            Selection::Leading => all[..k].to_vec(),
            Selection::Trailing => all[all.len() - k..].to_vec(),
        }
    }
}

/// Role of a row inside its block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RowKind {
    /// the principal-block row whose character contains `1_G`
    Trivial,
    /// the other principal-block row
    Other,
    /// the row of the nilpotent block with torus index `j`
    Nilpotent(u32),
    /// the projective row of a block of defect zero
    DefectZero(IrreducibleLabel),
}

/// One trivial source module: vertex `Q_i`, its block and its characters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TSRow {
    /// `i` with vertex `Q_i` of order `ℓ^{i-1}`
    pub vertex: u32,
    pub kind: RowKind,
    pub block: BlockKind,
    pub label: String,
    pub terms: Vec<(IrreducibleLabel, i64)>,
    /// Green correspondent over `N` or `N'`; empty for projective rows
    pub green: Vec<(IrreducibleLabel, i64)>,
    pub green_label: String,
}

impl TSRow {
    pub fn character(&self, q: u64) -> ClassFunction {
        ClassFunction::from_terms(q, GroupTag::G, &self.terms).expect("row terms live on G")
    }

    /// Degree `χ(1)`.
    pub fn degree(&self, q: u64) -> i64 {
        self.character(q).degree().as_integer().expect("degrees are integers")
    }
}

/// Principal-block exceptional torus indices `[S^∧/≡] \ {1}` in exponent order.
pub fn principal_exceptional(local: &LocalData) -> Vec<u32> {
    (1..=(local.ell_n - 1) / 2).map(|s| up_to_inverse(local.m_prime * s, local.torus_order) as u32).collect()
}

/// Exceptional indices `αη`, `η ∈ S^∧ \ {1}`, in exponent order.
pub fn nilpotent_exceptional(local: &LocalData, j: u32) -> Vec<u32> {
    crate::blocks::nilpotent_exceptional(local, j)
}

/// Nilpotent torus indices `[T_{ℓ'}^∧/≡] \ {1}`, ascending.
pub fn nilpotent_indices(local: &LocalData) -> Vec<u32> {
    let mut v: Vec<u32> = (1..=(local.m_prime - 1) / 2)
        .map(|t| up_to_inverse(local.ell_n * t, local.torus_order) as u32)
        .collect();
    v.sort_unstable();
    v
}

fn with_terms(base: &[IrreducibleLabel], extra: impl IntoIterator<Item = IrreducibleLabel>) -> Vec<(IrreducibleLabel, i64)> {
    base.iter().copied().chain(extra).map(|l| (l, 1)).collect()
}

fn join(parts: &[String]) -> String {
    parts.join(" + ")
}

/// `name` or `name_i`; `full` sums carry no index.
fn sum_name(name: &str, index: u32, full: bool) -> String {
    if full {
        name.to_string()
    } else {
        format!("{name}_{index}")
    }
}

/// `name_char` or `name_char,i`.
fn twisted_name(name: &str, character: &str, index: u32, full: bool) -> String {
    if full {
        format!("{name}_{character}")
    } else {
        format!("{name}_{character},{index}")
    }
}

/// All trivial source rows for `(q, ℓ)`, vertex by vertex, in table order:
/// principal rows, nilpotent rows by torus index, then defect-zero rows.
pub fn trivial_source_rows(q: u64, local: &LocalData, selection: Selection) -> Vec<TSRow> {
    use IrreducibleLabel::*;
    let pis = PiConstants::new(local);
    let n = local.n;
    let eta = principal_exceptional(local);
    let nil = nilpotent_indices(local);
    let mut rows = Vec::new();

    match local.case {
        Case::QMinusOne => {
            for i in 1..=n + 1 {
                let idx = i - 1;
                let p = pis.pi[idx as usize] as usize;
                let full = idx == 0;
                let chosen = selection.pick(&eta, p);
                let xi = |name: &str| sum_name(name, idx, full);
                let principal_g: Vec<IrreducibleLabel> = chosen.iter().map(|&j| R(j)).collect();
                let principal_n: Vec<IrreducibleLabel> = chosen.iter().map(|&j| Chi(j)).collect();
                let (lab_g, lab_n) = if p == 0 { (vec![], vec![]) } else { (vec![xi("Xi")], vec![xi("XiN")]) };
                let green = |base: IrreducibleLabel| if i == 1 { vec![] } else { with_terms(&[base], principal_n.iter().copied()) };
                let green_label = |base: &str| {
                    if i == 1 {
                        String::new()
                    } else {
                        join(&[vec![base.to_string()], lab_n.clone()].concat())
                    }
                };
                rows.push(TSRow {
                    vertex: i,
                    kind: RowKind::Trivial,
                    block: BlockKind::Principal,
                    label: join(&[vec!["1_G".into()], lab_g.clone()].concat()),
                    terms: with_terms(&[TrivG], principal_g.iter().copied()),
                    green: green(TrivN),
                    green_label: green_label("1_N"),
                });
                rows.push(TSRow {
                    vertex: i,
                    kind: RowKind::Other,
                    block: BlockKind::Principal,
                    label: join(&[vec!["St".into()], lab_g.clone()].concat()),
                    terms: with_terms(&[Steinberg], principal_g.iter().copied()),
                    green: green(Eps),
                    green_label: green_label("eps"),
                });
                for &j in &nil {
                    let chosen = selection.pick(&nilpotent_exceptional(local, j), 2 * p);
                    let alpha = format!("alpha[{j}]");
                    let (lab_g, lab_n) = if p == 0 {
                        (vec![], vec![])
                    } else {
                        (vec![twisted_name("Xi", &alpha, idx, full)], vec![twisted_name("XiN", &alpha, idx, full)])
                    };
                    rows.push(TSRow {
                        vertex: i,
                        kind: RowKind::Nilpotent(j),
                        block: BlockKind::NilpotentSplit(j),
                        label: join(&[vec![R(j).to_string()], lab_g].concat()),
                        terms: with_terms(&[R(j)], chosen.iter().map(|&k| R(k))),
                        green: if i == 1 { vec![] } else { with_terms(&[Chi(j)], chosen.iter().map(|&k| Chi(k))) },
                        green_label: if i == 1 { String::new() } else { join(&[vec![Chi(j).to_string()], lab_n].concat()) },
                    });
                }
                if i == 1 {
                    for j in 1..=q as u32 / 2 {
                        rows.push(TSRow {
                            vertex: 1,
                            kind: RowKind::DefectZero(RPrime(j)),
                            block: BlockKind::DefectZero(RPrime(j)),
                            label: RPrime(j).to_string(),
                            terms: vec![(RPrime(j), 1)],
                            green: vec![],
                            green_label: String::new(),
                        });
                    }
                }
            }
        }
        Case::QPlusOne => {
            for i in 1..=n + 1 {
                let idx = i - 1;
                // G-side count π'_{q,i-1}; vertex 1 uses the full sums π'_q
                let p_g = if i == 1 { pis.pi_prime_q() } else { pis.pi_prime[idx as usize] } as usize;
                let p_n = pis.pi_second[idx as usize] as usize;
                let full_g = i == 1 || i == n + 1;
                let chosen_g = selection.pick(&eta, p_g);
                let chosen_n = selection.pick(&eta, p_n);
                let xi_g: Vec<String> = if p_g == 0 { vec![] } else { vec![sum_name("Xi'", idx, full_g)] };
                let xi_n: Vec<String> = if p_n == 0 { vec![] } else { vec![sum_name("XiN'", idx, false)] };
                let principal_g = || chosen_g.iter().map(|&j| RPrime(j));
                let principal_n = || chosen_n.iter().map(|&j| ChiPrime(j));
                let green_of = |base: IrreducibleLabel| {
                    if i == 1 {
                        (vec![], String::new())
                    } else {
                        (with_terms(&[base], principal_n()), join(&[vec![base.to_string()], xi_n.clone()].concat()))
                    }
                };
                // trivial row: 1_G + St (+ Ξ'), or 1_G at the Sylow vertex
                let (terms, label) = if i == n + 1 {
                    (vec![(TrivG, 1)], "1_G".to_string())
                } else if i == 1 {
                    (vec![(TrivG, 1), (Steinberg, 1)], "1_G + St".to_string())
                } else {
                    (
                        with_terms(&[TrivG, Steinberg], principal_g()),
                        join(&[vec!["1_G".into(), "St".into()], xi_g.clone()].concat()),
                    )
                };
                let (green, green_label) = green_of(TrivNPrime);
                rows.push(TSRow { vertex: i, kind: RowKind::Trivial, block: BlockKind::Principal, label, terms, green, green_label });
                // other row: St + Ξ' if projective, Ξ'_{i-1} otherwise
                let (terms, label) = if i >= 2 {
                    (with_terms(&[], principal_g()), xi_g.join(" + "))
                } else {
                    (with_terms(&[Steinberg], principal_g()), join(&[vec!["St".into()], xi_g.clone()].concat()))
                };
                let (green, green_label) = green_of(EpsPrime);
                rows.push(TSRow { vertex: i, kind: RowKind::Other, block: BlockKind::Principal, label, terms, green, green_label });
                for &j in &nil {
                    let all = nilpotent_exceptional(local, j);
                    let theta = format!("theta[{j}]");
                    let chosen_g = selection.pick(&all, 2 * p_g);
                    let chosen_n = selection.pick(&all, 2 * p_n);
                    let xi_g = twisted_name("Xi'", &theta, idx, full_g);
                    let (terms, label) = if i == 1 {
                        (with_terms(&[RPrime(j)], chosen_g.iter().map(|&k| RPrime(k))), join(&[RPrime(j).to_string(), xi_g]))
                    } else {
                        (with_terms(&[], chosen_g.iter().map(|&k| RPrime(k))), xi_g)
                    };
                    let (green, green_label) = if i == 1 {
                        (vec![], String::new())
                    } else {
                        let mut parts = vec![ChiPrime(j).to_string()];
                        if p_n > 0 {
                            parts.push(twisted_name("XiN'", &theta, idx, false));
                        }
                        (with_terms(&[ChiPrime(j)], chosen_n.iter().map(|&k| ChiPrime(k))), join(&parts))
                    };
                    rows.push(TSRow {
                        vertex: i,
                        kind: RowKind::Nilpotent(j),
                        block: BlockKind::NilpotentNonSplit(j),
                        label,
                        terms,
                        green,
                        green_label,
                    });
                }
                if i == 1 {
                    for j in 1..=(q as u32 - 2) / 2 {
                        rows.push(TSRow {
                            vertex: 1,
                            kind: RowKind::DefectZero(R(j)),
                            block: BlockKind::DefectZero(R(j)),
                            label: R(j).to_string(),
                            terms: vec![(R(j), 1)],
                            green: vec![],
                            green_label: String::new(),
                        });
                    }
                }
            }
        }
    }
    rows
}

/// Checks that every block contributes `e` rows at each vertex inside its
/// defect group, and one projective row if it has defect zero.
pub fn check_against_blocks(rows: &[TSRow], local: &LocalData, blocks: &[BlockDescriptor]) -> Result<(), Error> {
    for b in blocks {
        for i in 1..=local.n + 1 {
            let count = rows.iter().filter(|r| r.vertex == i && r.block == b.kind).count();
            let want = if i == 1 {
                if b.defect == 0 { 1 } else { b.inertial_index }
            } else if i <= b.defect + 1 {
                b.inertial_index
            } else {
                0
            };
            if count != want {
                return Err(Error::BlockMismatch(format!(
                    "{} has {count} trivial source rows at vertex Q_{i}, expected {want}",
                    b.name()
                )));
            }
        }
    }
    let known = rows.iter().all(|r| blocks.iter().any(|b| b.kind == r.block));
    if !known {
        return Err(Error::BlockMismatch("row tagged with an unknown block".into()));
    }
    Ok(())
}

/// The Green correspondent character of a non-projective row.
pub fn green_correspondent(row: &TSRow) -> Result<Vec<(IrreducibleLabel, i64)>, Error> {
    if row.vertex == 1 {
        return Err(Error::InvalidParameters(format!("{} is projective and has no Green correspondent", row.label)));
    }
    Ok(row.green.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::block_partition;
    use crate::grp::Sl2;

    #[test]
    fn pi_examples() {
        let p = PiConstants::new(&LocalData::new(4, 3).unwrap());
        assert_eq!((p.pi_q(), p.pi[1]), (1, 0));
        let p = PiConstants::new(&LocalData::new(4, 5).unwrap());
        assert_eq!(p.pi_prime_q(), 2);
        assert_eq!(p.pi_second, vec![2, 0]);
        for (q, ell) in [(64u64, 3u64), (8, 3), (64, 13), (32, 11)] {
            let local = LocalData::new(q, ell).unwrap();
            let p = PiConstants::new(&local);
            match local.case {
                Case::QMinusOne => assert_eq!(p.pi[local.n as usize], 0),
                Case::QPlusOne => {
                    for i in 0..=local.n as usize {
                        assert_eq!(p.pi_prime[i] + p.pi_second[i], (local.ell_n - 1) / 2);
                    }
                }
            }
        }
    }

    #[test]
    fn labels_at_small_cases() {
        let local = LocalData::new(4, 5).unwrap();
        let rows = trivial_source_rows(4, &local, Selection::Leading);
        let projective: Vec<&str> = rows.iter().filter(|r| r.vertex == 1).map(|r| r.label.as_str()).collect();
        assert_eq!(projective, vec!["1_G + St", "St + Xi'", "R(alpha[1])"]);
        let sylow: Vec<&str> = rows.iter().filter(|r| r.vertex == 2).map(|r| r.label.as_str()).collect();
        assert_eq!(sylow, vec!["1_G", "Xi'"]);
        assert_eq!(rows[4].green_label, "eps'");

        let local = LocalData::new(4, 3).unwrap();
        let rows = trivial_source_rows(4, &local, Selection::Leading);
        let labels: Vec<&str> = rows.iter().map(|r| r.label.as_str()).collect();
        assert_eq!(labels, vec!["1_G + Xi", "St + Xi", "R'(theta[1])", "R'(theta[2])", "1_G", "St"]);
        assert_eq!(rows[0].degree(4), 6);
        assert_eq!(green_correspondent(&rows[5]).unwrap(), vec![(IrreducibleLabel::Eps, 1)]);
        assert!(green_correspondent(&rows[0]).is_err());
    }

    #[test]
    fn middle_vertex_labels() {
        let local = LocalData::new(8, 3).unwrap();
        let rows = trivial_source_rows(8, &local, Selection::Leading);
        let middle: Vec<&str> = rows.iter().filter(|r| r.vertex == 2).map(|r| r.label.as_str()).collect();
        assert_eq!(middle, vec!["1_G + St + Xi'_1", "Xi'_1"]);
        let local = LocalData::new(512, 3).unwrap();
        let rows = trivial_source_rows(512, &local, Selection::Leading);
        let middle: Vec<&str> = rows.iter().filter(|r| r.vertex == 3).map(|r| r.label.as_str()).take(3).collect();
        assert_eq!(middle, vec!["1_G + St + Xi'_2", "Xi'_2", "Xi'_theta[27],2"]);
        assert_eq!(rows.iter().filter(|r| r.vertex == 4).count(), 11);
        let local = LocalData::new(64, 3).unwrap();
        let rows = trivial_source_rows(64, &local, Selection::Leading);
        let middle: Vec<&str> = rows.iter().filter(|r| r.vertex == 2 && r.kind != RowKind::Other).map(|r| r.label.as_str()).take(2).collect();
        assert_eq!(middle, vec!["1_G + Xi_1", "R(alpha[9]) + Xi_alpha[9],1"]);
        assert_eq!(rows.len(), 47);
    }

    #[test]
    fn rows_match_blocks_and_degrees() {
        for (q, ell) in [(4u64, 3u64), (4, 5), (8, 3), (8, 7), (16, 5), (16, 3), (16, 17)] {
            let g = Sl2::from_q(q).unwrap();
            let local = LocalData::new(q, ell).unwrap();
            let blocks = block_partition(&g, GroupTag::G, ell).unwrap_or_else(|e| panic!("q={q} l={ell}: {e}"));
            for sel in [Selection::Leading, Selection::Trailing] {
                let rows = trivial_source_rows(q, &local, sel);
                check_against_blocks(&rows, &local, &blocks).unwrap();
                for r in &rows {
                    let m = ell.pow(local.n + 1 - r.vertex) as i64;
                    assert_eq!(r.degree(q) % m, 0, "{} at Q_{}", r.label, r.vertex);
                    if r.vertex > 1 {
                        let green = ClassFunction::from_terms(q, local.local_group(), &r.green).unwrap();
                        let gd = green.degree().as_integer().unwrap();
                        assert_eq!((r.degree(q) - gd).rem_euclid(m), 0, "{}", r.label);
                    }
                }
            }
        }
    }
}
