//! The species table `Triv_ℓ(G) = [T_{i,v}]`: rows are trivial source
//! modules grouped by vertex `Q_i`, columns are pairs `(Q_v, s)` with `s` an
//! `ℓ'`-class of `N_G(Q_v)/Q_v`.

pub mod checks;
pub mod closed_form;
pub mod linalg;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blocks::block_partition;
use crate::chartab::{evaluate, IrreducibleLabel};
use crate::cyclo::Cyclotomic;
use crate::grp::{ClassLabel, GroupTag, LocalData, Sl2};
use crate::tsources::{check_against_blocks, trivial_source_rows, PiConstants, Selection, TSRow};
use crate::{Case, Error};

pub use checks::{run_checks, CheckOutcome, CheckSet};
pub use closed_form::closed_form_value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub q: u64,
    pub f: u32,
    pub ell: u64,
    pub n: u32,
    pub case: Case,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub index: u32,
    pub order: u64,
}

/// A column `(Q_v, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    pub vertex: u32,
    pub group: GroupTag,
    pub class: ClassLabel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TSCTable {
    pub meta: Meta,
    pub vertices: Vec<Vertex>,
    pub rows: Vec<TSRow>,
    pub columns: Vec<Column>,
    /// `values[r][c]` for row `r` and column `c` of the full square matrix
    pub values: Vec<Vec<Cyclotomic>>,
}

impl TSCTable {
    pub fn local(&self) -> LocalData {
        LocalData::new(self.meta.q, self.meta.ell).expect("metadata was validated on assembly")
    }

    pub fn row_indices(&self, i: u32) -> Vec<usize> {
        (0..self.rows.len()).filter(|&r| self.rows[r].vertex == i).collect()
    }

    pub fn column_indices(&self, v: u32) -> Vec<usize> {
        (0..self.columns.len()).filter(|&c| self.columns[c].vertex == v).collect()
    }

    /// The block `T_{i,v}`.
    pub fn block(&self, i: u32, v: u32) -> Vec<Vec<Cyclotomic>> {
        let cols = self.column_indices(v);
        self.row_indices(i).into_iter().map(|r| cols.iter().map(|&c| self.values[r][c].clone()).collect()).collect()
    }
}

/// `τ_{Q_v,s}` of the module of `row`.
pub fn species_value(q: u64, local: &LocalData, row: &TSRow, v: u32, s: ClassLabel) -> Result<Cyclotomic, Error> {
    if v == 0 || v > local.n + 1 || !local.columns(v).contains(&s) {
        return Err(Error::InvalidParameters(format!("{s} is not a column of vertex Q_{v}")));
    }
    if v > row.vertex {
        return Ok(Cyclotomic::zero());
    }
    let terms = if v == 1 { &row.terms } else { &row.green };
    let mut acc = Cyclotomic::zero();
    for &(label, k) in terms {
        acc = &acc + &evaluate(q, label, s)?.scale_int(k);
    }
    Ok(acc)
}

fn columns_of(local: &LocalData) -> Vec<Column> {
    (1..=local.n + 1)
        .flat_map(|v| {
            let group = if v == 1 { GroupTag::G } else { local.local_group() };
            local.columns(v).into_iter().map(move |class| Column { vertex: v, group, class })
        })
        .collect()
}

/// Builds the table from the given rows without consulting the closed forms.
pub fn assemble_rows(g: &Sl2, local: &LocalData, rows: Vec<TSRow>) -> Result<TSCTable, Error> {
    let q = g.q();
    let columns = columns_of(local);
    let values = rows
        .par_iter()
        .map(|row| columns.iter().map(|c| species_value(q, local, row, c.vertex, c.class)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TSCTable {
        meta: Meta { q, f: g.f(), ell: local.ell, n: local.n, case: local.case },
        vertices: (1..=local.n + 1).map(|i| Vertex { index: i, order: local.ell.pow(i - 1) }).collect(),
        rows,
        columns,
        values,
    })
}

/// Entries that disagree with the closed formulas, as `(row, column)`.
pub fn closed_form_mismatches(table: &TSCTable) -> Result<Vec<(usize, usize)>, Error> {
    let local = table.local();
    let pis = PiConstants::new(&local);
    let mut out = Vec::new();
    for (r, row) in table.rows.iter().enumerate() {
        for (c, col) in table.columns.iter().enumerate() {
            let expected = closed_form_value(table.meta.q, &local, &pis, row.vertex, row.kind, col.vertex, col.class)?;
            if expected != table.values[r][c] {
                out.push((r, c));
            }
        }
    }
    Ok(out)
}

/// Assembles `Triv_ℓ(SL2(q))` and certifies every entry against the closed forms.
pub fn assemble(g: &Sl2, ell: u64) -> Result<TSCTable, Error> {
    assemble_with(g, ell, Selection::Leading)
}

pub fn assemble_with(g: &Sl2, ell: u64, selection: Selection) -> Result<TSCTable, Error> {
    let table = assemble_uncertified(g, ell, selection)?;
    if let Some(&(r, c)) = closed_form_mismatches(&table)?.first() {
        let col = table.columns[c];
        return Err(Error::ClosedFormMismatch(format!(
            "row {} at (Q_{}, {}): species {} vs closed form",
            table.rows[r].label, col.vertex, col.class, table.values[r][c]
        )));
    }
    Ok(table)
}

/// As [`assemble_with`] but without the closed-form comparison.
pub fn assemble_uncertified(g: &Sl2, ell: u64, selection: Selection) -> Result<TSCTable, Error> {
    let local = LocalData::new(g.q(), ell)?;
    let blocks = block_partition(g, GroupTag::G, ell)?;
    let rows = trivial_source_rows(g.q(), &local, selection);
    check_against_blocks(&rows, &local, &blocks)?;
    assemble_rows(g, &local, rows)
}

/// Labels used by the character terms of a row, for display.
pub fn term_string(terms: &[(IrreducibleLabel, i64)]) -> String {
    terms
        .iter()
        .map(|(l, k)| if *k == 1 { l.to_string() } else { format!("{k}*{l}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn species_examples() {
        let local = LocalData::new(4, 5).unwrap();
        let g = Sl2::from_q(4).unwrap();
        let t = assemble(&g, 5).unwrap();
        let block = t.block(1, 1);
        assert_eq!(block.len(), 3);
        let cols: Vec<ClassLabel> = t.column_indices(1).iter().map(|&c| t.columns[c].class).collect();
        assert_eq!(cols, vec![ClassLabel::Identity, ClassLabel::Split(1), ClassLabel::Unipotent]);
        let ints = |r: &Vec<Cyclotomic>| r.iter().map(|x| x.as_integer().unwrap()).collect::<Vec<_>>();
        assert_eq!(ints(&block[0]), vec![5, 2, 1]);
        assert_eq!(block[1][0], Cyclotomic::from_int(10));
        let xi = &t.rows[t.row_indices(2)[1]];
        assert_eq!(xi.label, "Xi'");
        assert_eq!(species_value(4, &local, xi, 2, ClassLabel::SigmaPrime).unwrap(), Cyclotomic::from_int(-1));
        assert!(species_value(4, &local, xi, 2, ClassLabel::Unipotent).is_err());

        let t = assemble(&g, 3).unwrap();
        let local = t.local();
        let st = t.rows.iter().find(|r| r.vertex == 2 && r.label == "St").unwrap();
        assert_eq!(species_value(4, &local, st, 2, ClassLabel::Sigma).unwrap(), Cyclotomic::from_int(-1));
        let st_xi = t.rows.iter().find(|r| r.label == "St + Xi").unwrap();
        assert_eq!(species_value(4, &local, st_xi, 1, ClassLabel::Unipotent).unwrap(), Cyclotomic::from_int(1));
        assert_eq!(species_value(4, &local, st_xi, 2, ClassLabel::Identity).unwrap(), Cyclotomic::zero());
    }

    #[test]
    fn square_tables() {
        for (q, ell) in [(4u64, 3u64), (8, 7), (16, 5), (16, 17), (32, 11)] {
            let g = Sl2::from_q(q).unwrap();
            let t = assemble(&g, ell).unwrap();
            assert_eq!(t.rows.len(), t.columns.len(), "q={q} l={ell}");
        }
    }
}
