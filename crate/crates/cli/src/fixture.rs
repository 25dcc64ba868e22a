use std::collections::HashSet;
use std::path::Path;

use ecgrowth::curve::Curve;
use ecgrowth::exact_fields::SquarefreeLabel;
use ecgrowth::torsion::GroupStructure;
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Table of curves with known growth, compiled into the binary.
pub const BUNDLED_FIXTURE: &str = include_str!("../../../data/table1.txt");

const DELIMITER: char = '|';

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("row {label} (line {line}): {message}")]
    Invalid { label: String, line: usize, message: String },
}

/// One curve with its expected growth data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureRow {
    pub label: String,
    pub coeffs: [BigInt; 5],
    pub expected_g: GroupStructure,
    /// In file order.
    pub expected_records: Vec<(SquarefreeLabel, GroupStructure)>,
    pub expected_tower_torsion: GroupStructure,
    pub expected_degree: usize,
    pub line: usize,
}

impl FixtureRow {
    pub fn curve(&self) -> ecgrowth::Result<Curve> {
        let c: Vec<BigRational> = self.coeffs.iter().map(|a| BigRational::from_integer(a.clone())).collect();
        Curve::from_coeffs(&c)
    }

    /// Expected records in canonical order.
    pub fn sorted_records(&self) -> Vec<(SquarefreeLabel, GroupStructure)> {
        let mut r = self.expected_records.clone();
        r.sort();
        r
    }
}

pub fn parse_coeffs(s: &str) -> Result<[BigInt; 5], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 5 {
        return Err(format!("expected 5 comma-separated coefficients, got {}", parts.len()));
    }
    let mut out: [BigInt; 5] = Default::default();
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|_| format!("bad coefficient {p:?}"))?;
    }
    Ok(out)
}

fn parse_group(s: &str) -> Result<GroupStructure, String> {
    s.parse().map_err(|e| format!("bad group {s:?}: {e}"))
}

fn parse_records(s: &str) -> Result<Vec<(SquarefreeLabel, GroupStructure)>, String> {
    s.split_whitespace()
        .filter(|t| *t != "-")
        .map(|tok| {
            let (d, h) = tok.split_once(':').ok_or_else(|| format!("bad record {tok:?}"))?;
            let d: SquarefreeLabel = d.parse().map_err(|e| format!("bad field label {d:?}: {e}"))?;
            Ok((d, parse_group(h)?))
        })
        .collect()
}

fn parse_row(raw: &str, line: usize) -> Result<FixtureRow, FixtureError> {
    let fields: Vec<&str> = raw.split(DELIMITER).map(str::trim).collect();
    if fields.len() != 6 {
        return Err(FixtureError::Parse { line, message: format!("expected 6 fields, got {}", fields.len()) });
    }
    let label = fields[0].to_string();
    if label.is_empty() {
        return Err(FixtureError::Parse { line, message: "empty label".into() });
    }
    let invalid = |message: String| FixtureError::Invalid { label: label.clone(), line, message };
    let coeffs = parse_coeffs(fields[1]).map_err(invalid)?;
    let expected_g = parse_group(fields[2]).map_err(invalid)?;
    let expected_records = parse_records(fields[3]).map_err(invalid)?;
    let expected_tower_torsion = parse_group(fields[4]).map_err(invalid)?;
    let expected_degree = fields[5].parse().map_err(|_| invalid(format!("bad degree {:?}", fields[5])))?;
    let row = FixtureRow {
        label: label.clone(),
        coeffs,
        expected_g,
        expected_records,
        expected_tower_torsion,
        expected_degree,
        line,
    };
    match row.curve() {
        Ok(_) => Ok(row),
        Err(e) => Err(invalid(e.to_string())),
    }
}

/// Parses fixture text: one row per line, `#` starts a comment line.
pub fn parse_fixture(text: &str) -> Result<Vec<FixtureRow>, FixtureError> {
    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let row = parse_row(t, i + 1)?;
        if !seen.insert(row.label.clone()) {
            return Err(FixtureError::Invalid { label: row.label, line: i + 1, message: "duplicate label".into() });
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn load_fixture(path: &Path) -> Result<Vec<FixtureRow>, FixtureError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| FixtureError::Io { path: path.display().to_string(), source })?;
    parse_fixture(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_rows() {
        let rows = parse_fixture(BUNDLED_FIXTURE).unwrap();
        assert_eq!(rows.len(), 54);
        let r = &rows[0];
        assert_eq!(r.label, "19a2");
        assert_eq!(r.expected_g, GroupStructure::trivial());
        assert_eq!(r.expected_records, vec![((-3).into(), GroupStructure::cyclic(3))]);
        assert_eq!(r.expected_degree, 2);
    }

    #[test]
    fn malformed_rows() {
        let err = parse_fixture("19a2 | 0,1,1,-769,-8470 | 1x1 | abc:1x3 | 1x3 | 2").unwrap_err();
        assert!(err.to_string().contains("19a2"), "{err}");
        let err = parse_fixture("# c\nx | 0,0,0,0,0 | 1x1 | - | 1x1 | 1").unwrap_err();
        assert!(err.to_string().contains("singular"), "{err}");
        let err = parse_fixture("a | 1,2 | 1x1 | | 1x1 | 1").unwrap_err();
        assert!(matches!(err, FixtureError::Invalid { .. }));
        let dup = "a | 0,0,0,0,1 | 1x6 | | 1x6 | 1\na | 0,0,0,0,1 | 1x6 | | 1x6 | 1";
        assert!(parse_fixture(dup).unwrap_err().to_string().contains("duplicate"));
        assert!(matches!(parse_fixture("only | two").unwrap_err(), FixtureError::Parse { line: 1, .. }));
        assert!(parse_fixture("").unwrap().is_empty());
    }
}
