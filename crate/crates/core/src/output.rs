//! Serialisation of a [`TSCTable`]: JSON (round-trippable), CSV, LaTeX and
//! plain text. All renderers are deterministic.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::blocks::{block_name, BlockKind};
use crate::chartab::IrreducibleLabel;
use crate::cyclo::Cyclotomic;
use crate::grp::{ClassLabel, GroupTag};
use crate::tsct::{Column, Meta, TSCTable, Vertex};
use crate::tsources::{RowKind, TSRow};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Latex,
    Text,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "latex" => Ok(Format::Latex),
            "text" => Ok(Format::Text),
            _ => Err(Error::InvalidParameters(format!("unknown format {s}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub label: IrreducibleLabel,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowEntry {
    pub label: String,
    pub vertex: u32,
    pub kind: RowKind,
    pub block: String,
    pub block_kind: BlockKind,
    pub character_terms: Vec<Term>,
    pub green_label: String,
    pub green_terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnSet {
    pub group: GroupTag,
    pub classes: Vec<ClassLabel>,
}

/// The JSON document. `blocks_T` is keyed `"i,v"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub meta: Meta,
    pub vertices: Vec<Vertex>,
    pub rows: Vec<RowEntry>,
    pub columns: BTreeMap<String, ColumnSet>,
    #[serde(rename = "blocks_T")]
    pub blocks_t: BTreeMap<String, Vec<Vec<Cyclotomic>>>,
}

fn terms_of(t: &[(IrreducibleLabel, i64)]) -> Vec<Term> {
    t.iter().map(|&(label, multiplicity)| Term { label, multiplicity }).collect()
}

fn terms_from(t: &[Term]) -> Vec<(IrreducibleLabel, i64)> {
    t.iter().map(|t| (t.label, t.multiplicity)).collect()
}

fn levels(table: &TSCTable) -> std::ops::RangeInclusive<u32> {
    1..=table.meta.n + 1
}

impl Document {
    pub fn from_table(table: &TSCTable) -> Self {
        let rows = table
            .rows
            .iter()
            .map(|r| RowEntry {
                label: r.label.clone(),
                vertex: r.vertex,
                kind: r.kind,
                block: block_name(GroupTag::G, r.block),
                block_kind: r.block,
                character_terms: terms_of(&r.terms),
                green_label: r.green_label.clone(),
                green_terms: terms_of(&r.green),
            })
            .collect();
        let mut columns = BTreeMap::new();
        let mut blocks_t = BTreeMap::new();
        for v in levels(table) {
            let idx = table.column_indices(v);
            columns.insert(
                v.to_string(),
                ColumnSet { group: table.columns[idx[0]].group, classes: idx.iter().map(|&c| table.columns[c].class).collect() },
            );
            for i in levels(table) {
                blocks_t.insert(format!("{i},{v}"), table.block(i, v));
            }
        }
        Document { meta: table.meta.clone(), vertices: table.vertices.clone(), rows, columns, blocks_t }
    }

    pub fn into_table(self) -> Result<TSCTable, Error> {
        let bad = |m: String| Error::Serialisation(m);
        let rows: Vec<TSRow> = self
            .rows
            .iter()
            .map(|r| TSRow {
                vertex: r.vertex,
                kind: r.kind,
                block: r.block_kind,
                label: r.label.clone(),
                terms: terms_from(&r.character_terms),
                green: terms_from(&r.green_terms),
                green_label: r.green_label.clone(),
            })
            .collect();
        let mut columns = Vec::new();
        for v in 1..=self.meta.n + 1 {
            let set = self.columns.get(&v.to_string()).ok_or_else(|| bad(format!("missing columns for Q_{v}")))?;
            columns.extend(set.classes.iter().map(|&class| Column { vertex: v, group: set.group, class }));
        }
        let mut values = vec![Vec::with_capacity(columns.len()); rows.len()];
        for i in 1..=self.meta.n + 1 {
            let row_idx: Vec<usize> = (0..rows.len()).filter(|&r| rows[r].vertex == i).collect();
            for v in 1..=self.meta.n + 1 {
                let block = self.blocks_t.get(&format!("{i},{v}")).ok_or_else(|| bad(format!("missing block {i},{v}")))?;
                let width = columns.iter().filter(|c| c.vertex == v).count();
                if block.len() != row_idx.len() || block.iter().any(|r| r.len() != width) {
                    return Err(bad(format!("block {i},{v} has the wrong shape")));
                }
                for (k, &r) in row_idx.iter().enumerate() {
                    values[r].extend(block[k].iter().cloned());
                }
            }
        }
        Ok(TSCTable { meta: self.meta, vertices: self.vertices, rows, columns, values })
    }
}

pub fn to_json(table: &TSCTable) -> Result<String, Error> {
    serde_json::to_string_pretty(&Document::from_table(table)).map_err(|e| Error::Serialisation(e.to_string()))
}

pub fn from_json(s: &str) -> Result<TSCTable, Error> {
    let doc: Document = serde_json::from_str(s).map_err(|e| Error::Serialisation(e.to_string()))?;
    doc.into_table()
}

/// Each `T_{i,v}` as a header record followed by one record per row.
pub fn to_csv(table: &TSCTable) -> Result<String, Error> {
    let err = |e: csv::Error| Error::Serialisation(e.to_string());
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for i in levels(table) {
        for v in levels(table) {
            let name = format!("T_{{{i},{v}}}");
            let mut header = vec![name.clone(), "row".to_string()];
            header.extend(table.column_indices(v).iter().map(|&c| table.columns[c].class.to_string()));
            w.write_record(&header).map_err(err)?;
            for (r, values) in table.row_indices(i).into_iter().zip(table.block(i, v)) {
                let mut rec = vec![name.clone(), table.rows[r].label.clone()];
                rec.extend(values.iter().map(Cyclotomic::term_string));
                w.write_record(&rec).map_err(err)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Serialisation(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Serialisation(e.to_string()))
}

fn latex_label(s: &str) -> String {
    let part = |p: &str| {
        let mut out = p
            .replace("Xi", "\\Xi")
            .replace("alpha", "\\alpha")
            .replace("theta", "\\theta")
            .replace("eps", "\\varepsilon")
            .replace("St", "\\mathrm{St}")
            .replace("sigma", "\\sigma");
        // "x[j]" -> "x_{j}"
        while let Some(a) = out.find('[') {
            let b = out[a..].find(']').map_or(out.len() - 1, |k| a + k);
            out = format!("{}_{{{}}}{}", &out[..a], &out[a + 1..b], &out[b + 1..]);
        }
        // the whole index of an exceptional sum goes into one subscript
        if let (true, Some(k)) = (out.starts_with("\\Xi"), out.find('_')) {
            out = format!("{}_{{{}}}", &out[..k], &out[k + 1..]);
        }
        out
    };
    format!("${}$", s.split(" + ").map(part).collect::<Vec<_>>().join(" + "))
}

fn latex_value(x: &Cyclotomic) -> String {
    if let Some(r) = x.as_rational() {
        return format!("${r}$");
    }
    let mut out = String::new();
    for (k, [e, num, den]) in x.rational_terms().into_iter().enumerate() {
        let coeff = match (num, den) {
            (1, 1) => String::new(),
            (-1, 1) => "-".into(),
            (n, 1) => n.to_string(),
            (n, d) => format!("\\frac{{{n}}}{{{d}}}"),
        };
        if k > 0 && !coeff.starts_with('-') {
            out.push('+');
        }
        let _ = write!(out, "{coeff}\\zeta_{{{}}}^{{{e}}}", x.conductor());
    }
    format!("${out}$")
}

/// One `longtable` per vertex level `v`, holding `T_{i,v}` for `i >= v`.
pub fn to_latex(table: &TSCTable) -> String {
    let mut s = String::new();
    let m = &table.meta;
    for v in levels(table) {
        let cols = table.column_indices(v);
        let _ = writeln!(s, "\\begin{{longtable}}{{c|c||{}|}}", vec!["c"; cols.len()].join("|"));
        let _ = writeln!(s, "\\caption{{$T_{{i,{v}}}$ for $q = {}$, $\\ell = {}$.}}\\\\", m.q, m.ell);
        let head: Vec<String> = cols.iter().map(|&c| latex_label(&table.columns[c].class.to_string())).collect();
        let _ = writeln!(s, "& & {} \\\\ \\hline\\hline", head.join(" & "));
        for i in v..=m.n + 1 {
            for (r, values) in table.row_indices(i).into_iter().zip(table.block(i, v)) {
                let vals: Vec<String> = values.iter().map(latex_value).collect();
                let _ = writeln!(s, "$T_{{{i},{v}}}$ & {} & {} \\\\", latex_label(&table.rows[r].label), vals.join(" & "));
            }
            let _ = writeln!(s, "\\hline");
        }
        let _ = writeln!(s, "\\end{{longtable}}\n");
    }
    s
}

/// Aligned plain-text rendering of every nonzero `T_{i,v}`.
pub fn to_text(table: &TSCTable) -> String {
    let m = &table.meta;
    let mut s = format!("Triv_{}(SL2({})), {}, n = {}\n", m.ell, m.q, m.case, m.n);
    for v in levels(table) {
        for i in v..=m.n + 1 {
            let rows = table.row_indices(i);
            let cols = table.column_indices(v);
            let mut grid: Vec<Vec<String>> = vec![std::iter::once(String::new())
                .chain(cols.iter().map(|&c| table.columns[c].class.to_string()))
                .collect()];
            for (r, values) in rows.iter().zip(table.block(i, v)) {
                grid.push(std::iter::once(table.rows[*r].label.clone()).chain(values.iter().map(Cyclotomic::term_string)).collect());
            }
            let widths: Vec<usize> =
                (0..grid[0].len()).map(|k| grid.iter().map(|r| r[k].chars().count()).max().unwrap_or(0)).collect();
            let _ = writeln!(s, "\nT_{{{i},{v}}}  (vertex of order {}, columns of {})", m.ell.pow(i - 1), table.columns[cols[0]].group);
            for r in grid {
                let line: Vec<String> = r.iter().zip(&widths).map(|(x, w)| format!("{x:<w$}")).collect();
                let _ = writeln!(s, "  {}", line.join("  ").trim_end());
            }
        }
    }
    s
}

pub fn render(table: &TSCTable, format: Format) -> Result<String, Error> {
    match format {
        Format::Json => to_json(table),
        Format::Csv => to_csv(table),
        Format::Latex => Ok(to_latex(table)),
        Format::Text => Ok(to_text(table)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::Sl2;
    use crate::tsct::assemble;

    #[test]
    fn json_round_trip() {
        for (q, ell) in [(4u64, 5u64), (8, 3), (16, 5)] {
            let g = Sl2::from_q(q).unwrap();
            let t = crate::tsct::assemble_uncertified(&g, ell, Default::default()).unwrap();
            let s = to_json(&t).unwrap();
            assert_eq!(from_json(&s).unwrap(), t);
            assert_eq!(to_json(&from_json(&s).unwrap()).unwrap(), s);
        }
    }

    #[test]
    fn renderers() {
        let g = Sl2::from_q(4).unwrap();
        let t = assemble(&g, 5).unwrap();
        let csv = to_csv(&t).unwrap();
        assert!(csv.lines().next().unwrap().starts_with("\"T_{1,1}\",row,I_2,d[1],u"));
        assert!(csv.contains("\"T_{1,1}\",St + Xi',10,1,-2"));
        let tex = to_latex(&t);
        assert!(tex.contains("$1_G + \\mathrm{St}$ & $5$ & $2$ & $1$"));
        let text = to_text(&t);
        assert!(text.contains("T_{2,2}"));
        assert_eq!(latex_label("R'(theta[3])"), "$R'(\\theta_{3})$");
        assert_eq!(latex_label("R(alpha[9]) + Xi_alpha[9],1"), "$R(\\alpha_{9}) + \\Xi_{\\alpha_{9},1}$");
        assert_eq!(latex_value(&(&Cyclotomic::root(5, 1) - &Cyclotomic::root(5, 2))), "$\\zeta_{5}^{1}-\\zeta_{5}^{2}$");
    }
}
