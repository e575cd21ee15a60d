//! Reference tables bundled with the binary.
//!
//! Every file uses the schema `table,key,value,tolerance`. Values are exact
//! rationals or decimals; a tolerance of `0` demands exact equality.

use std::collections::BTreeMap;

use pzf_core::rational::{parse_rational, within};
use pzf_core::Rational;

use crate::error::{input, Result};

pub const ORDER3: &str = include_str!("../data/golden/order3.csv");
pub const ORDER4: &str = include_str!("../data/golden/order4.csv");
pub const COMPLETE: &str = include_str!("../data/golden/complete.csv");
pub const COMPLETE_BIPARTITE: &str = include_str!("../data/golden/complete_bipartite.csv");
pub const SUN: &str = include_str!("../data/golden/sun.csv");

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenEntry {
    pub table: String,
    pub key: String,
    /// The reference value as written in the file.
    pub text: String,
    pub value: Rational,
    pub tolerance: Rational,
}

impl GoldenEntry {
    pub fn matches(&self, actual: &Rational) -> bool {
        within(actual, &self.value, &self.tolerance)
    }
}

pub fn parse(csv_text: &str) -> Result<Vec<GoldenEntry>> {
    let mut rd = csv::Reader::from_reader(csv_text.as_bytes());
    let mut out = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(|e| input(format!("golden data: {e}")))?;
        if rec.len() != 4 {
            return Err(input(format!("golden data: expected 4 fields, got {}", rec.len())));
        }
        out.push(GoldenEntry {
            table: rec[0].to_string(),
            key: rec[1].to_string(),
            text: rec[2].to_string(),
            value: parse_rational(&rec[2])?,
            tolerance: parse_rational(&rec[3])?,
        });
    }
    Ok(out)
}

/// All bundled entries of the named tables, keyed by `key`.
pub fn load(texts: &[&str]) -> BTreeMap<String, GoldenEntry> {
    texts
        .iter()
        .flat_map(|t| parse(t).expect("bundled golden data parses"))
        .map(|e| (e.key.clone(), e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_files_have_expected_sizes() {
        assert_eq!(load(&[ORDER3]).len(), 4);
        assert_eq!(load(&[ORDER4]).len(), 6);
        assert_eq!(load(&[COMPLETE]).len(), 50);
        assert_eq!(load(&[COMPLETE_BIPARTITE]).len(), 110);
        assert_eq!(load(&[SUN]).len(), 82);
    }

    #[test]
    fn exact_entries_have_zero_tolerance() {
        let t2 = load(&[ORDER4]);
        let diamond = &t2["diamond"];
        assert_eq!(diamond.value, pzf_core::rational::ratio(2911, 1140));
        assert!(diamond.matches(&diamond.value));
        assert!(!diamond.matches(&(diamond.value.clone() + pzf_core::rational::ratio(1, 10_000_000))));
    }

    #[test]
    fn malformed_rows_are_rejected() {
        assert!(parse("table,key,value,tolerance\nt,k,abc,0\n").is_err());
        assert!(parse("table,key,value,tolerance\nt,k,1\n").is_err());
    }
}
