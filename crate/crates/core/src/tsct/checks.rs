//! Verification of an assembled table.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::linalg::{inverse_mod, vec_mul_mod, ModularImage};
use super::{assemble_uncertified, closed_form_mismatches, TSCTable};
use crate::blocks::brauer_correspondence_check;
use crate::chartab::{self, harish_chandra_oracle, rprime_oracle, CharTable, ClassFunction, InductionCounts, Subgroup};
use crate::cyclo::Cyclotomic;
use crate::grp::{ClassLabel, GroupTag, LocalData, Sl2};
use crate::tsources::Selection;
use crate::Error;

/// How much verification to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckSet {
    Fast,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn from_result(name: &str, r: Result<String, String>) -> Self {
        match r {
            Ok(detail) => CheckOutcome { name: name.into(), passed: true, detail },
            Err(detail) => CheckOutcome { name: name.into(), passed: false, detail },
        }
    }
}

/// `(name, level, description)` of every check; level `None` means oracle-only.
pub const CHECKS: &[(&str, Option<CheckSet>, &str)] = &[
    ("structure", Some(CheckSet::Fast), "T_{i,v} = 0 for v > i and T_{i,v} = T_{i,i} for 2 <= v < i"),
    ("closed-form", Some(CheckSet::Fast), "every entry equals the closed formula"),
    ("column-one", Some(CheckSet::Fast), "T_{i,1} equals the ordinary character of the row"),
    ("degrees", Some(CheckSet::Fast), "vertex divisibility of degrees and Green degree congruences"),
    ("invertibility", Some(CheckSet::Fast), "the full species matrix is invertible"),
    ("orthogonality", Some(CheckSet::Fast), "orthogonality relations for Irr(G), Irr(N), Irr(N')"),
    ("closure", Some(CheckSet::Full), "products of rows decompose with non-negative integer coefficients"),
    ("positivity", Some(CheckSet::Full), "Ind_{Q_i}^G(1) decomposes non-negatively over rows of vertex <= i"),
    ("selection", Some(CheckSet::Full), "a different choice of exceptional characters changes no entry"),
    ("idempotents", Some(CheckSet::Full), "block idempotent coefficients agree across the Brauer correspondence"),
    ("oracles", None, "Harish-Chandra and R'(theta) characters by explicit induction"),
];

/// Integral solutions are sought with entries at most this large; the prime
/// exceeds twice the bound, so any such solution is found.
const COEFFICIENT_BOUND: u64 = 1 << 40;

/// Decomposition of vectors over the rows of a table.
pub struct Decomposer<'a> {
    table: &'a TSCTable,
    image: ModularImage,
    inverse: Vec<Vec<u64>>,
}

impl<'a> Decomposer<'a> {
    pub fn new(table: &'a TSCTable) -> Result<Self, Error> {
        let q = table.meta.q;
        let image = ModularImage::new(q * q - 1);
        let reduced = image.reduce_matrix(&table.values)?;
        if reduced.len() != table.columns.len() {
            return Err(Error::CheckFailed(format!(
                "{} rows against {} columns",
                reduced.len(),
                table.columns.len()
            )));
        }
        let inverse = inverse_mod(&reduced, image.p)
            .ok_or_else(|| Error::CheckFailed(format!("species matrix is singular modulo {}", image.p)))?;
        Ok(Decomposer { table, image, inverse })
    }

    /// Integer coefficients `x` with `Σ x_r · row_r = target`, verified exactly.
    pub fn decompose(&self, target: &[Cyclotomic]) -> Result<Vec<i64>, Error> {
        let reduced: Vec<u64> = target.iter().map(|x| self.image.reduce(x)).collect::<Result<_, _>>()?;
        let x: Vec<i64> = vec_mul_mod(&reduced, &self.inverse, self.image.p).into_iter().map(|v| self.image.lift(v)).collect();
        if x.iter().any(|k| k.unsigned_abs() > COEFFICIENT_BOUND) {
            return Err(Error::CheckFailed(format!("no integral decomposition with coefficients below {COEFFICIENT_BOUND}")));
        }
        for (c, want) in target.iter().enumerate() {
            let mut acc = Cyclotomic::zero();
            for (r, &k) in x.iter().enumerate() {
                if k != 0 {
                    acc = &acc + &self.table.values[r][c].scale_int(k);
                }
            }
            if acc != *want {
                return Err(Error::CheckFailed(format!(
                    "no integral decomposition: column {} of the candidate differs",
                    self.table.columns[c].class
                )));
            }
        }
        Ok(x)
    }
}

fn describe(table: &TSCTable, x: &[i64]) -> String {
    x.iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(r, k)| format!("{k}*[{} @Q_{}]", table.rows[r].label, table.rows[r].vertex))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn check_structure(table: &TSCTable) -> Result<String, String> {
    let n = table.meta.n;
    for i in 1..=n + 1 {
        for v in i + 1..=n + 1 {
            if table.block(i, v).iter().flatten().any(|x| !x.is_zero()) {
                return Err(format!("T_{{{i},{v}}} is not zero"));
            }
        }
        for v in 2..i {
            if table.block(i, v) != table.block(i, i) {
                return Err(format!("T_{{{i},{v}}} differs from T_{{{i},{i}}}"));
            }
        }
    }
    Ok(format!("{} vertex levels", n + 1))
}

pub fn check_closed_form(table: &TSCTable) -> Result<String, String> {
    let bad = closed_form_mismatches(table).map_err(|e| e.to_string())?;
    if bad.is_empty() {
        return Ok(format!("{} entries", table.rows.len() * table.columns.len()));
    }
    let mut rows: Vec<String> = bad
        .iter()
        .map(|&(r, c)| format!("{} @Q_{} at (Q_{}, {})", table.rows[r].label, table.rows[r].vertex, table.columns[c].vertex, table.columns[c].class))
        .collect();
    rows.truncate(6);
    Err(format!("{} mismatching entries, e.g. {}", bad.len(), rows.join("; ")))
}

pub fn check_column_one(table: &TSCTable) -> Result<String, String> {
    let q = table.meta.q;
    let all = chartab::classes(q, GroupTag::G);
    for (r, row) in table.rows.iter().enumerate() {
        let chi = row.character(q);
        for c in table.column_indices(1) {
            let idx = all.iter().position(|&x| x == table.columns[c].class).ok_or("unknown class")?;
            if chi.values[idx] != table.values[r][c] {
                return Err(format!("{} at {}", row.label, table.columns[c].class));
            }
        }
    }
    Ok(format!("{} rows", table.rows.len()))
}

pub fn check_degrees(table: &TSCTable) -> Result<String, String> {
    let q = table.meta.q;
    let local = table.local();
    let mut failures = Vec::new();
    for row in &table.rows {
        let m = local.ell.pow(local.n + 1 - row.vertex) as i64;
        let d = row.degree(q);
        if d % m != 0 {
            failures.push(format!("{} @Q_{}: degree {d} not divisible by {m}", row.label, row.vertex));
        }
        if row.vertex > 1 {
            let green = ClassFunction::from_terms(q, local.local_group(), &row.green).map_err(|e| e.to_string())?;
            let gd = green.degree().as_integer().ok_or("non-integral degree")?;
            if (d - gd).rem_euclid(m) != 0 {
                failures.push(format!("{} @Q_{}: degree {d} vs Green correspondent {gd} mod {m}", row.label, row.vertex));
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{} rows", table.rows.len()))
    } else {
        Err(failures.join("; "))
    }
}

pub fn check_invertibility(table: &TSCTable) -> Result<String, String> {
    let d = Decomposer::new(table).map_err(|e| e.to_string())?;
    Ok(format!("{0}x{0}, nonsingular modulo {1}", table.rows.len(), d.image.p))
}

pub fn check_orthogonality(g: &Sl2) -> Result<String, String> {
    for group in [GroupTag::G, GroupTag::N, GroupTag::NPrime] {
        let t = CharTable::new(g, group);
        t.check_orthogonality().map_err(|e| format!("{group}: {e}"))?;
        let sum: i64 = t.values.iter().map(|r| r[0].as_integer().unwrap().pow(2)).sum();
        if sum as u64 != g.group_order(group) {
            return Err(format!("{group}: sum of squared degrees {sum}"));
        }
    }
    Ok("G, N, N'".into())
}

pub fn check_closure(table: &TSCTable) -> Result<String, String> {
    let d = Decomposer::new(table).map_err(|e| e.to_string())?;
    let n = table.rows.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(a, b)| {
            let product: Vec<Cyclotomic> =
                table.values[a].iter().zip(&table.values[b]).map(|(x, y)| x * y).collect();
            let label = || format!("[{} @Q_{}] x [{} @Q_{}]", table.rows[a].label, table.rows[a].vertex, table.rows[b].label, table.rows[b].vertex);
            match d.decompose(&product) {
                Err(e) => Some(format!("{}: {e}", label())),
                Ok(x) if x.iter().any(|&k| k < 0) => Some(format!("{} = {}", label(), describe(table, &x))),
                Ok(_) => None,
            }
        })
        .collect();
    if failures.is_empty() {
        Ok(format!("{} products", pairs.len()))
    } else {
        Err(format!("{} of {} products fail, e.g. {}", failures.len(), pairs.len(), failures[0]))
    }
}

/// Species of the permutation module `k[G/Q_i]` at every column.
pub fn permutation_species(g: &Sl2, table: &TSCTable, i: u32) -> Result<Vec<Cyclotomic>, Error> {
    let local: LocalData = table.local();
    let counts = InductionCounts::new(g, Subgroup::Q(local.clone(), i), GroupTag::G)?;
    let perm = counts.induce_trivial();
    let order = local.ell.pow(i - 1);
    table
        .columns
        .iter()
        .map(|col| {
            if col.vertex == 1 {
                let idx = counts.classes().iter().position(|&c| c == col.class).expect("column is a G-class");
                return Ok(perm.values[idx].clone());
            }
            if col.vertex > i || col.class != ClassLabel::Identity {
                return Ok(Cyclotomic::zero());
            }
            // cosets x Q_i with x^{-1} Q_v x <= Q_i
            let gen = local.torus_class(local.q_generator_exponent(col.vertex));
            let idx = counts.classes().iter().position(|&c| c == gen).expect("torus class of G");
            let hits: u64 = counts.counts(idx).iter().sum();
            Ok(Cyclotomic::from_int((hits / order) as i64))
        })
        .collect()
}

pub fn check_positivity(g: &Sl2, table: &TSCTable) -> Result<String, String> {
    let d = Decomposer::new(table).map_err(|e| e.to_string())?;
    let mut summary = Vec::new();
    for i in 1..=table.meta.n + 1 {
        let species = permutation_species(g, table, i).map_err(|e| e.to_string())?;
        let x = d.decompose(&species).map_err(|e| format!("Ind_Q{i}: {e}"))?;
        if x.iter().any(|&k| k < 0) {
            return Err(format!("Ind_Q{i} = {}", describe(table, &x)));
        }
        if let Some(r) = (0..x.len()).find(|&r| x[r] != 0 && table.rows[r].vertex > i) {
            return Err(format!("Ind_Q{i} involves {} with vertex Q_{}", table.rows[r].label, table.rows[r].vertex));
        }
        summary.push(format!("Q_{i}: {} summands", x.iter().sum::<i64>()));
    }
    Ok(summary.join(", "))
}

pub fn check_selection(g: &Sl2, table: &TSCTable) -> Result<String, String> {
    let other = assemble_uncertified(g, table.meta.ell, Selection::Trailing).map_err(|e| e.to_string())?;
    let differing = table.values.iter().zip(&other.values).flat_map(|(a, b)| a.iter().zip(b)).filter(|(x, y)| x != y).count();
    let rows_differ = table.rows.iter().zip(&other.rows).filter(|(a, b)| a.terms != b.terms).count();
    if differing == 0 {
        Ok(format!("{rows_differ} rows use a different selection, no entry changes"))
    } else {
        Err(format!("{differing} entries change"))
    }
}

pub fn check_idempotents(g: &Sl2, ell: u64) -> Result<String, String> {
    let report = brauer_correspondence_check(g, ell).map_err(|e| e.to_string())?;
    let failed: Vec<_> = report.iter().filter(|e| e.status == "fail").collect();
    if let Some(e) = failed.first() {
        return Err(format!("{} failures, e.g. {} at {}: {} vs {}", failed.len(), e.block, e.element, e.lhs, e.rhs));
    }
    Ok(format!("{} coefficients compared", report.iter().filter(|e| e.status == "pass").count()))
}

pub fn check_oracles(g: &Sl2) -> Result<String, String> {
    let q = g.q();
    let err = |e: Error| e.to_string();
    let borel = InductionCounts::new(g, Subgroup::B, GroupTag::G).map_err(err)?;
    let closed = |terms: &[(chartab::IrreducibleLabel, i64)]| ClassFunction::from_terms(q, GroupTag::G, terms).map_err(err);
    use chartab::IrreducibleLabel::*;
    let trivial = harish_chandra_oracle(&borel, 0).map_err(err)?;
    if trivial != closed(&[(TrivG, 1), (Steinberg, 1)])? {
        return Err("Ind_B^G(1) differs from 1_G + St".into());
    }
    for j in 1..=(q as u32 - 2) / 2 {
        if harish_chandra_oracle(&borel, j).map_err(err)? != closed(&[(R(j), 1)])? {
            return Err(format!("Ind_B^G(alpha[{j}]) differs from R(alpha[{j}])"));
        }
    }
    let unipotent = InductionCounts::new(g, Subgroup::U, GroupTag::G).map_err(err)?;
    let nonsplit = InductionCounts::new(g, Subgroup::TPrime, GroupTag::G).map_err(err)?;
    for j in 1..=q as u32 / 2 {
        rprime_oracle(g, &unipotent, &nonsplit, j).map_err(err)?;
    }
    Ok(format!("{} induced characters", q as u32 - 1))
}

/// Runs the requested checks in a fixed order.
pub fn run_checks(g: &Sl2, table: &TSCTable, set: CheckSet, oracle: bool) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .filter(|(_, level, _)| match level {
            Some(CheckSet::Fast) => true,
            Some(CheckSet::Full) => set == CheckSet::Full,
            None => oracle,
        })
        .map(|&(name, _, _)| {
            let r = match name {
                "structure" => check_structure(table),
                "closed-form" => check_closed_form(table),
                "column-one" => check_column_one(table),
                "degrees" => check_degrees(table),
                "invertibility" => check_invertibility(table),
                "orthogonality" => check_orthogonality(g),
                "closure" => check_closure(table),
                "positivity" => check_positivity(g, table),
                "selection" => check_selection(g, table),
                "idempotents" => check_idempotents(g, table.meta.ell),
                "oracles" => check_oracles(g),
                _ => unreachable!("unknown check {name}"),
            };
            CheckOutcome::from_result(name, r)
        })
        .collect()
}
