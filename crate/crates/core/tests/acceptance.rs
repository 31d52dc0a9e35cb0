//! Acceptance criteria, one line each. All comparisons are exact (tolerance 0);
//! the only pinned tolerances are wall-clock budgets.
//!
//! A criterion that fails prints `FAIL`. The process exits nonzero unless every
//! failure is listed in `KNOWN_DEVIATIONS` and matches it exactly.

use std::time::{Duration, Instant};

use tsct_core::blocks::{block_counts, block_partition, brauer_correspondence_check, d1_class, type_function};
use tsct_core::chartab::{harish_chandra_oracle, CharTable, ClassFunction, InductionCounts, IrreducibleLabel, Subgroup};
use tsct_core::grp::{GroupTag, LocalData, Sl2};
use tsct_core::output::to_json;
use tsct_core::tsct::checks::{check_closure, check_degrees, check_invertibility, check_positivity, check_selection};
use tsct_core::tsct::{assemble_uncertified, closed_form_mismatches, TSCTable};
use tsct_core::tsources::{RowKind, Selection};
use tsct_core::Case;

const MATRIX: &[(u64, u64)] = &[
    (4, 3),
    (4, 5),
    (8, 7),
    (8, 3),
    (16, 3),
    (16, 5),
    (16, 17),
    (32, 31),
    (32, 3),
    (32, 11),
    (64, 3),
    (64, 7),
    (64, 5),
    (64, 13),
];

const REPRODUCTION_BUDGET: Duration = Duration::from_secs(120);
const ORACLE_BUDGET_Q64: Duration = Duration::from_secs(60);

/// `(criterion, q, ell, description)` of failures that are understood.
/// At `q = 8, ℓ = 3` the printed middle-vertex row `St + Ξ'_{i-1}` cannot be
/// the character of a trivial source module (its degree 29 is not divisible
/// by 3); the row computed here is `Ξ'_{i-1}`, which differs from the printed
/// closed form in exactly its four entries at `I_2` and `d(a)`.
const KNOWN_DEVIATIONS: &[(u32, u64, u64, &str)] = &[(1, 8, 3, "4 entries of the middle-vertex principal row Xi'_1")];

struct Outcome {
    criterion: u32,
    title: &'static str,
    failures: Vec<(u64, u64, String)>,
    note: String,
}

fn tables() -> Vec<(Sl2, TSCTable)> {
    MATRIX
        .iter()
        .map(|&(q, ell)| {
            let g = Sl2::from_q(q).unwrap();
            let t = assemble_uncertified(&g, ell, Selection::Leading).unwrap();
            (g, t)
        })
        .collect()
}

fn reproduction(tables: &[(Sl2, TSCTable)], elapsed: Duration) -> Outcome {
    let mut failures = Vec::new();
    for (_, t) in tables {
        let bad = closed_form_mismatches(t).unwrap();
        if bad.is_empty() {
            continue;
        }
        let rows: std::collections::BTreeSet<usize> = bad.iter().map(|&(r, _)| r).collect();
        let only_middle_other = rows.len() == 1
            && rows.iter().all(|&r| {
                let row = &t.rows[r];
                row.kind == RowKind::Other && row.vertex >= 2 && row.vertex <= t.meta.n && t.meta.case == Case::QPlusOne
            });
        let description = if only_middle_other {
            format!("{} entries of the middle-vertex principal row {}", bad.len(), t.rows[*rows.iter().next().unwrap()].label)
        } else {
            format!("{} entries in {} rows", bad.len(), rows.len())
        };
        failures.push((t.meta.q, t.meta.ell, description));
    }
    if elapsed > REPRODUCTION_BUDGET {
        failures.push((0, 0, format!("assembly took {elapsed:?}")));
    }
    Outcome {
        criterion: 1,
        title: "reproduction matrix against the closed forms",
        failures,
        note: format!("{} cases, assembled in {:.2?}", tables.len(), elapsed),
    }
}

fn character_tables() -> Outcome {
    let mut failures = Vec::new();
    let mut qs: Vec<u64> = MATRIX.iter().map(|&(q, _)| q).collect();
    qs.dedup();
    for &q in &qs {
        let g = Sl2::from_q(q).unwrap();
        for group in [GroupTag::G, GroupTag::N, GroupTag::NPrime] {
            let t = CharTable::new(&g, group);
            if let Err(e) = t.check_orthogonality() {
                failures.push((q, 0, format!("{group}: {e}")));
            }
            let squares: i64 = t.values.iter().map(|r| r[0].as_integer().unwrap().pow(2)).sum();
            if squares as u64 != g.group_order(group) {
                failures.push((q, 0, format!("{group}: sum of squared degrees {squares}")));
            }
        }
    }
    Outcome { criterion: 2, title: "character table certification", failures, note: format!("q in {qs:?}, groups G, N, N'") }
}

fn induction_oracle() -> Outcome {
    let mut failures = Vec::new();
    let mut note = String::new();
    for q in [4u64, 8, 16, 32, 64] {
        let start = Instant::now();
        let g = Sl2::from_q(q).unwrap();
        let borel = InductionCounts::new(&g, Subgroup::B, GroupTag::G).unwrap();
        let closed = |terms: &[(IrreducibleLabel, i64)]| ClassFunction::from_terms(q, GroupTag::G, terms).unwrap();
        if harish_chandra_oracle(&borel, 0).unwrap() != closed(&[(IrreducibleLabel::TrivG, 1), (IrreducibleLabel::Steinberg, 1)]) {
            failures.push((q, 0, "Ind_B^G(1) != 1_G + St".into()));
        }
        for j in 1..=(q as u32 - 2) / 2 {
            if harish_chandra_oracle(&borel, j).unwrap() != closed(&[(IrreducibleLabel::R(j), 1)]) {
                failures.push((q, 0, format!("alpha[{j}]")));
            }
        }
        let elapsed = start.elapsed();
        if q == 64 {
            note = format!("q = 64 in {elapsed:.2?}");
            if elapsed > ORACLE_BUDGET_Q64 {
                failures.push((q, 0, format!("took {elapsed:?}")));
            }
        }
    }
    Outcome { criterion: 3, title: "Harish-Chandra induction oracle", failures, note }
}

fn expected_counts(q: u64, ell: u64) -> (usize, usize, usize) {
    let local = LocalData::new(q, ell).unwrap();
    let nilpotent = ((local.m_prime - 1) / 2) as usize;
    let zero = match local.case {
        Case::QMinusOne => q / 2,
        Case::QPlusOne => (q - 2) / 2,
    } as usize;
    (1, nilpotent, zero)
}

fn blocks() -> Outcome {
    let mut failures = Vec::new();
    for &(q, ell) in MATRIX {
        let g = Sl2::from_q(q).unwrap();
        match block_partition(&g, GroupTag::G, ell) {
            Ok(b) if block_counts(&b) == expected_counts(q, ell) => {}
            Ok(b) => failures.push((q, ell, format!("G: counts {:?}", block_counts(&b)))),
            Err(e) => failures.push((q, ell, format!("G: {e}"))),
        }
        let local = LocalData::new(q, ell).unwrap();
        for group in [GroupTag::N, GroupTag::NPrime] {
            match block_partition(&g, group, ell) {
                Ok(b) => {
                    let (p, nil, zero) = block_counts(&b);
                    let expected = if group == local.local_group() {
                        (1, expected_counts(q, ell).1, 0)
                    } else {
                        (0, 0, tsct_core::chartab::irreducibles(q, group).len())
                    };
                    if (p, nil, zero) != expected {
                        failures.push((q, ell, format!("{group}: counts {:?}", (p, nil, zero))));
                    }
                }
                Err(e) => failures.push((q, ell, format!("{group}: {e}"))),
            }
        }
    }
    let pinned = [((4u64, 3u64), (1, 0, 2)), ((4, 5), (1, 0, 1))];
    for ((q, ell), want) in pinned {
        let b = block_partition(&Sl2::from_q(q).unwrap(), GroupTag::G, ell).unwrap();
        if block_counts(&b) != want {
            failures.push((q, ell, format!("pinned counts {:?}", block_counts(&b))));
        }
    }
    Outcome { criterion: 4, title: "block partitions of G, N, N'", failures, note: format!("{} cases", MATRIX.len()) }
}

/// Signs as printed in the block tables.
fn printed_sign(group: GroupTag, case: Case, label: &str, exceptional: bool) -> i8 {
    let g_plus = group == GroupTag::G && case == Case::QPlusOne;
    if exceptional || label.starts_with("Xi") {
        return if g_plus { 1 } else { -1 };
    }
    if label.starts_with("R'(") || (g_plus && label == "St") {
        return -1;
    }
    1
}

fn type_functions() -> Outcome {
    let mut failures = Vec::new();
    let mut nodes = 0;
    for &(q, ell) in MATRIX {
        let g = Sl2::from_q(q).unwrap();
        let local = LocalData::new(q, ell).unwrap();
        for group in [GroupTag::G, local.local_group()] {
            let x = d1_class(&local, group).unwrap();
            for b in block_partition(&g, group, ell).unwrap() {
                if b.defect == 0 {
                    continue;
                }
                let signs = type_function(q, &b, x).unwrap();
                for (node, s) in b.tree.iter().zip(signs) {
                    nodes += 1;
                    if s != printed_sign(group, local.case, &node.label, node.exceptional) {
                        failures.push((q, ell, format!("{} node {} has sign {s}", b.name(), node.label)));
                    }
                }
            }
        }
    }
    Outcome { criterion: 5, title: "type functions on Brauer trees", failures, note: format!("{nodes} nodes") }
}

fn idempotents() -> Outcome {
    let mut failures = Vec::new();
    let mut compared = 0;
    for &(q, ell) in MATRIX {
        let g = Sl2::from_q(q).unwrap();
        match brauer_correspondence_check(&g, ell) {
            Ok(report) => {
                for e in report {
                    match e.status.as_str() {
                        "pass" => compared += 1,
                        "recorded" => {}
                        _ => failures.push((q, ell, format!("{} at {}", e.block, e.element))),
                    }
                }
            }
            Err(e) => failures.push((q, ell, e.to_string())),
        }
    }
    Outcome { criterion: 6, title: "idempotent congruences", failures, note: format!("{compared} coefficients") }
}

fn ring_structure(tables: &[(Sl2, TSCTable)]) -> Outcome {
    let mut failures = Vec::new();
    for (g, t) in tables {
        for (name, r) in [
            ("invertibility", check_invertibility(t)),
            ("closure", check_closure(t)),
            ("positivity", check_positivity(g, t)),
        ] {
            if let Err(e) = r {
                failures.push((t.meta.q, t.meta.ell, format!("{name}: {e}")));
            }
        }
    }
    Outcome { criterion: 7, title: "closure, positivity, invertibility", failures, note: format!("{} cases", tables.len()) }
}

fn degrees(tables: &[(Sl2, TSCTable)]) -> Outcome {
    let mut failures = Vec::new();
    for (_, t) in tables {
        if let Err(e) = check_degrees(t) {
            failures.push((t.meta.q, t.meta.ell, e));
        }
    }
    let t = &tables[0].1;
    let projective = t.rows.iter().find(|r| r.label == "1_G + Xi").unwrap();
    if projective.degree(4) != 6 {
        failures.push((4, 3, format!("1_G + Xi has degree {}", projective.degree(4))));
    }
    Outcome { criterion: 8, title: "degree divisibility", failures, note: format!("{} cases", tables.len()) }
}

fn selection(tables: &[(Sl2, TSCTable)]) -> Outcome {
    let mut failures = Vec::new();
    let mut exercised = 0;
    for (g, t) in tables.iter().filter(|(_, t)| t.meta.q == 16 || t.meta.q == 64) {
        match check_selection(g, t) {
            Ok(detail) if detail.starts_with('0') => {}
            Ok(_) => exercised += 1,
            Err(e) => failures.push((t.meta.q, t.meta.ell, e)),
        }
    }
    if exercised == 0 {
        failures.push((0, 0, "no case has a proper exceptional subset".into()));
    }
    Outcome { criterion: 9, title: "selection independence", failures, note: format!("alternative selection exercised in {exercised} case(s)") }
}

fn determinism() -> Outcome {
    let mut failures = Vec::new();
    let cases = [(16u64, 5u64), (32, 3), (64, 3), (64, 13), (8, 3)];
    for (q, ell) in cases {
        let json = |threads: usize| {
            rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| {
                let g = Sl2::from_q(q).unwrap();
                to_json(&assemble_uncertified(&g, ell, Selection::Leading).unwrap()).unwrap()
            })
        };
        if json(1).as_bytes() != json(4).as_bytes() {
            failures.push((q, ell, "JSON differs between 1 and 4 workers".into()));
        }
    }
    Outcome { criterion: 10, title: "determinism across worker counts", failures, note: format!("{} cases, 1 vs 4 workers", cases.len()) }
}

fn main() {
    let start = Instant::now();
    let tables = tables();
    let assembly = start.elapsed();
    let outcomes = vec![
        reproduction(&tables, assembly),
        character_tables(),
        induction_oracle(),
        blocks(),
        type_functions(),
        idempotents(),
        ring_structure(&tables),
        degrees(&tables),
        selection(&tables),
        determinism(),
    ];
    let mut unexpected = 0;
    for o in &outcomes {
        if o.failures.is_empty() {
            println!("[PASS] {:>2} {} ({})", o.criterion, o.title, o.note);
            continue;
        }
        let known = o.failures.iter().all(|(q, ell, d)| {
            KNOWN_DEVIATIONS.iter().any(|&(c, kq, kl, kd)| c == o.criterion && kq == *q && kl == *ell && kd == d)
        });
        if !known {
            unexpected += 1;
        }
        let list: Vec<String> = o.failures.iter().map(|(q, ell, d)| format!("q={q} l={ell}: {d}")).collect();
        println!(
            "[FAIL] {:>2} {} ({}){}: {}",
            o.criterion,
            o.title,
            o.note,
            if known { " [known deviation]" } else { "" },
            list.join("; ")
        );
    }
    println!("total {:.2?}", start.elapsed());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
