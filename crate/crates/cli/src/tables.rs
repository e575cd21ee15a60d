//! Regenerates the reference tables and optionally checks them against the
//! bundled golden data.

use std::collections::BTreeMap;

use pzf_core::rational::render_decimal;
use pzf_core::{kn_ept, sun_ept, ChainOptions, Family, Precision, Rational};
use rayon::prelude::*;

use crate::error::{input, Result};
use crate::exact::{kmn_pair, vertex_values};
use crate::golden::{self, GoldenEntry};
use crate::output::{Cell, Report};
use crate::source::NamedGraph;

pub const KN_MAX: usize = 50;
pub const KMN_MAX: usize = 10;
pub const SUN_MAX: usize = 45;
pub const SMALL_MAX: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableId {
    Small,
    Kn,
    Kmn,
    Sun,
}


/// The connected graphs of order at most four, keyed as in the golden files.
pub fn small_graphs() -> Vec<(&'static str, &'static str, Family)> {
    vec![
        ("order3", "K1", Family::Complete(1)),
        ("order3", "K2", Family::Complete(2)),
        ("order3", "P3", Family::Path(3)),
        ("order3", "K3", Family::Complete(3)),
        ("order4", "P4", Family::Path(4)),
        ("order4", "K13", Family::Star(3)),
        ("order4", "paw", Family::Paw),
        ("order4", "C4", Family::Cycle(4)),
        ("order4", "diamond", Family::Diamond),
        ("order4", "K4", Family::Complete(4)),
    ]
}

/// `ept(K_n)` for `n = 1..=max`.
pub fn kn_values(max: usize) -> Result<Vec<Rational>> {
    (1..=max)
        .into_par_iter()
        .map(|n| kn_ept(n).map_err(Into::into))
        .collect()
}

/// One `K_{m,n}` row: `((m, n), (ept from u, ept from v))`.
pub type KmnRow = ((usize, usize), (Rational, Rational));

/// `((m, n), (ept from u, ept from v))` for `1 <= m <= n <= max`, ordered by `n` then `m`.
pub fn kmn_values(max: usize) -> Result<Vec<KmnRow>> {
    let pairs: Vec<(usize, usize)> = (1..=max)
        .flat_map(|n| (1..=n).map(move |m| (m, n)))
        .collect();
    pairs
        .into_par_iter()
        .map(|(m, n)| Ok(((m, n), kmn_pair(m, n)?)))
        .collect()
}

/// `(n, ept(n-Sun), ept(n-Sun) - ept((n-1)-Sun))` for `n = 5..=max`.
pub fn sun_values(max: usize) -> Result<Vec<(usize, Rational, Rational)>> {
    if max < 5 {
        return Ok(Vec::new());
    }
    let values: Vec<Rational> = (4..=max)
        .into_par_iter()
        .map(|n| sun_ept(n).map_err(Into::into))
        .collect::<Result<_>>()?;
    Ok((5..=max)
        .map(|n| {
            let v = values[n - 4].clone();
            let d = &v - &values[n - 5];
            (n, v, d)
        })
        .collect())
}

fn check_bound(id: TableId, max: usize) -> Result<()> {
    let (lo, hi) = match id {
        TableId::Small => (1, SMALL_MAX),
        TableId::Kn => (1, KN_MAX),
        TableId::Kmn => (1, KMN_MAX),
        TableId::Sun => (5, SUN_MAX),
    };
    if max < lo || max > hi {
        return Err(input(format!("--max must be in {lo}..={hi} for this table")));
    }
    Ok(())
}

struct Checker {
    golden: BTreeMap<String, GoldenEntry>,
    enabled: bool,
    failures: usize,
}

impl Checker {
    fn new(texts: &[&str], enabled: bool) -> Self {
        Checker {
            golden: golden::load(texts),
            enabled,
            failures: 0,
        }
    }

    /// Golden value and verdict cells for one computed value.
    fn cells(&mut self, key: &str, actual: &Rational) -> Vec<Cell> {
        if !self.enabled {
            return Vec::new();
        }
        match self.golden.get(key) {
            Some(e) => {
                let ok = e.matches(actual);
                if !ok {
                    self.failures += 1;
                }
                vec![e.text.clone().into(), if ok { "ok" } else { "MISMATCH" }.into()]
            }
            None => vec![Cell::Empty, "n/a".into()],
        }
    }
}

fn with_check_columns(mut cols: Vec<&'static str>, check: bool, suffixes: &[&'static str]) -> Vec<&'static str> {
    if check {
        for s in suffixes {
            cols.push(s);
        }
    }
    cols
}

/// Regenerates a table up to `max`; with `check`, appends golden columns and
/// counts mismatches.
pub fn cmd_table(id: TableId, max: Option<usize>, digits: Option<u32>, check: bool) -> Result<Report> {
    let max = max.unwrap_or(match id {
        TableId::Small => SMALL_MAX,
        TableId::Kn => KN_MAX,
        TableId::Kmn => KMN_MAX,
        TableId::Sun => SUN_MAX,
    });
    check_bound(id, max)?;
    let mut report = match id {
        TableId::Small => small_table(max, digits.unwrap_or(6), check)?,
        TableId::Kn => kn_table(max, digits.unwrap_or(6), check)?,
        TableId::Kmn => kmn_table(max, digits.unwrap_or(6), check)?,
        TableId::Sun => sun_table(max, digits.unwrap_or(15), check)?,
    };
    report.enforce = check;
    Ok(report)
}

fn small_table(max: usize, digits: u32, check: bool) -> Result<Report> {
    let precision = Precision::Significant(digits);
    let cols = with_check_columns(
        vec!["table", "graph", "family", "ept", "decimal", "digits", "argmin"],
        check,
        &["golden", "status"],
    );
    let mut report = Report::new("ept of connected graphs of order at most four", &cols);
    let mut checker = Checker::new(&[golden::ORDER3, golden::ORDER4], check);
    let graphs: Vec<_> = small_graphs()
        .into_iter()
        .filter(|(_, _, f)| f.build().map(|g| g.order() <= max).unwrap_or(false))
        .collect();
    for (table, key, family) in graphs {
        let g = NamedGraph::from_family(family)?;
        let v = vertex_values(&g, ChainOptions::default())?;
        let value = v.min().clone();
        let argmin = v
            .argmin()
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let mut row: Vec<Cell> = vec![
            table.into(),
            key.into(),
            family.to_string().into(),
            value.clone().into(),
            render_decimal(&value, precision).into(),
            (digits as usize).into(),
            argmin.into(),
        ];
        row.extend(checker.cells(key, &value));
        report.push(row);
    }
    report.failures = checker.failures;
    Ok(report)
}

fn kn_table(max: usize, digits: u32, check: bool) -> Result<Report> {
    let precision = Precision::Significant(digits);
    let cols = with_check_columns(vec!["n", "ept", "decimal", "digits"], check, &["golden", "status"]);
    let mut report = Report::new("ept(K_n)", &cols);
    let mut checker = Checker::new(&[golden::COMPLETE], check);
    for (i, v) in kn_values(max)?.into_iter().enumerate() {
        let n = i + 1;
        let mut row: Vec<Cell> = vec![
            n.into(),
            v.clone().into(),
            render_decimal(&v, precision).into(),
            (digits as usize).into(),
        ];
        row.extend(checker.cells(&n.to_string(), &v));
        report.push(row);
    }
    report.failures = checker.failures;
    Ok(report)
}

fn kmn_table(max: usize, digits: u32, check: bool) -> Result<Report> {
    let precision = Precision::Significant(digits);
    let cols = with_check_columns(
        vec!["m", "n", "ept_u", "decimal_u", "ept_v", "decimal_v", "digits"],
        check,
        &["golden_u", "status_u", "golden_v", "status_v"],
    );
    let mut report = Report::new("ept(K_{m,n}) from u (part of size m) and v (part of size n)", &cols);
    let mut checker = Checker::new(&[golden::COMPLETE_BIPARTITE], check);
    for ((m, n), (u, v)) in kmn_values(max)? {
        let mut row: Vec<Cell> = vec![
            m.into(),
            n.into(),
            u.clone().into(),
            render_decimal(&u, precision).into(),
            v.clone().into(),
            render_decimal(&v, precision).into(),
            (digits as usize).into(),
        ];
        row.extend(checker.cells(&format!("{m}:{n}:u"), &u));
        row.extend(checker.cells(&format!("{m}:{n}:v"), &v));
        report.push(row);
    }
    report.failures = checker.failures;
    Ok(report)
}

fn sun_table(max: usize, digits: u32, check: bool) -> Result<Report> {
    let precision = Precision::Significant(digits);
    let cols = with_check_columns(
        vec!["n", "ept", "decimal", "delta", "delta_decimal", "digits"],
        check,
        &["golden", "status", "golden_delta", "status_delta"],
    );
    let mut report = Report::new("ept(n-Sun) and successive differences", &cols);
    let mut checker = Checker::new(&[golden::SUN], check);
    for (n, v, d) in sun_values(max)? {
        let mut row: Vec<Cell> = vec![
            n.into(),
            v.clone().into(),
            render_decimal(&v, precision).into(),
            d.clone().into(),
            render_decimal(&d, precision).into(),
            (digits as usize).into(),
        ];
        row.extend(checker.cells(&n.to_string(), &v));
        row.extend(checker.cells(&format!("{n}:delta"), &d));
        report.push(row);
    }
    report.failures = checker.failures;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell<'a>(r: &'a Report, row: usize, col: &str) -> &'a Cell {
        &r.rows[row][r.column(col).unwrap()]
    }

    #[test]
    fn kn_row_ten() {
        let r = cmd_table(TableId::Kn, Some(10), None, true).unwrap();
        assert_eq!(cell(&r, 9, "decimal"), &Cell::text("3.57753"));
        assert_eq!(r.failures, 0);
    }

    #[test]
    fn sun_row_seven() {
        let r = cmd_table(TableId::Sun, Some(7), None, true).unwrap();
        assert_eq!(cell(&r, 2, "decimal"), &Cell::text("6.14172265492263"));
        assert_eq!(cell(&r, 2, "delta_decimal"), &Cell::text("0.695575654706038"));
        assert_eq!(r.failures, 0);
    }

    #[test]
    fn kmn_three_four() {
        let r = cmd_table(TableId::Kmn, Some(4), None, true).unwrap();
        let row = r
            .rows
            .iter()
            .position(|row| row[0] == Cell::Int(3) && row[1] == Cell::Int(4))
            .unwrap();
        assert_eq!(cell(&r, row, "decimal_u"), &Cell::text("3.29626"));
        assert_eq!(cell(&r, row, "decimal_v"), &Cell::text("3.29506"));
        assert_eq!(r.rows.len(), 10);
        assert_eq!(r.failures, 0);
    }

    #[test]
    fn small_table_is_exact() {
        let r = cmd_table(TableId::Small, None, None, true).unwrap();
        assert_eq!(r.rows.len(), 10);
        assert_eq!(r.failures, 0);
        let three = cmd_table(TableId::Small, Some(3), None, false).unwrap();
        assert_eq!(three.rows.len(), 4);
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(cmd_table(TableId::Kn, Some(51), None, false).is_err());
        assert!(cmd_table(TableId::Sun, Some(4), None, false).is_err());
        assert!(cmd_table(TableId::Kmn, Some(0), None, false).is_err());
    }

    #[test]
    fn low_precision_still_checks_exact_values() {
        let r = cmd_table(TableId::Kn, Some(5), Some(2), true).unwrap();
        assert_eq!(cell(&r, 4, "decimal"), &Cell::text("2.8"));
        assert_eq!(r.failures, 0);
    }
}
