//! CSV and JSON serialization of emanation tables.
//!
//! CSV layout: first row and first column carry the label lines; filled
//! cells emit their content in decimal, prefixed with a dash when the mark
//! is positive; blank cells stay empty. Output is byte-deterministic for a
//! fixed table.

use serde::Serialize;

use crate::emanation::{
    label_order, viable_boxkite_count, Cell, EmanationTable, Mark, Method,
};
use crate::error::{Error, Result};
use crate::recipe::RecipeSpec;
use crate::zd::StrutContext;

pub fn to_csv(et: &EmanationTable) -> String {
    let edge = et.edge();
    let mut out = String::new();
    for c in 0..edge {
        out.push(',');
        out.push_str(&et.label(c).to_string());
    }
    out.push('\n');
    for r in 0..edge {
        out.push_str(&et.label(r).to_string());
        for c in 0..edge {
            out.push(',');
            match et.cell(r, c) {
                Cell::Blank => {}
                Cell::Filled { p, mark } => {
                    if *mark == Mark::Positive {
                        out.push('-');
                    }
                    out.push_str(&p.to_string());
                }
            }
        }
        out.push('\n');
    }
    out
}

/// How to read unprefixed cell values back: brute-force tables carry edge
/// signs (plain means negative), recipe tables carry none.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkMode {
    EdgeSigns,
    Unknown,
}

/// Parses a table written by [`to_csv`]. The strut context is recovered
/// from the label line; the reconstructed table is fully validated.
pub fn from_csv(text: &str, mark_mode: MarkMode) -> Result<EmanationTable> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
    let mut fields = header.split(',');
    let corner = fields.next().unwrap_or("");
    if !corner.is_empty() {
        return Err(Error::Parse("corner cell must be empty".into()));
    }
    let labels: Vec<u32> = fields
        .map(|f| f.trim().parse::<u32>().map_err(|e| Error::Parse(format!("label {f:?}: {e}"))))
        .collect::<Result<_>>()?;
    let edge = labels.len();
    if edge < 2 || !(edge as u32 + 2).is_power_of_two() {
        return Err(Error::Parse(format!("bad label count {edge}")));
    }
    let n = (edge as u32 + 2).trailing_zeros() + 1;
    let s = labels[0] ^ labels[edge - 1];
    let strut = StrutContext::new(n, s)?;
    if labels != label_order(&strut) {
        return Err(Error::Parse("label line does not match the strut context".into()));
    }

    let mut cells = Vec::with_capacity(edge * edge);
    for (r, line) in lines.enumerate() {
        if r >= edge {
            if line.trim().is_empty() {
                continue;
            }
            return Err(Error::Parse(format!("unexpected extra row {r}")));
        }
        let mut fields = line.split(',');
        let row_label = fields
            .next()
            .and_then(|f| f.trim().parse::<u32>().ok())
            .ok_or_else(|| Error::Parse(format!("row {r}: missing label")))?;
        if row_label != labels[r] {
            return Err(Error::Parse(format!("row {r}: label {row_label} out of order")));
        }
        let mut count = 0usize;
        for f in fields {
            let f = f.trim();
            let cell = if f.is_empty() {
                Cell::Blank
            } else if let Some(rest) = f.strip_prefix('-') {
                let p = rest
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("row {r}: {f:?}: {e}")))?;
                Cell::Filled { p, mark: Mark::Positive }
            } else {
                let p = f
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("row {r}: {f:?}: {e}")))?;
                let mark = match mark_mode {
                    MarkMode::EdgeSigns => Mark::Negative,
                    MarkMode::Unknown => Mark::Unknown,
                };
                Cell::Filled { p, mark }
            };
            cells.push(cell);
            count += 1;
        }
        if count != edge {
            return Err(Error::Parse(format!("row {r}: {count} cells, expected {edge}")));
        }
    }
    if cells.len() != edge * edge {
        return Err(Error::Parse(format!(
            "{} rows, expected {edge}",
            cells.len() / edge
        )));
    }
    let method = match mark_mode {
        MarkMode::EdgeSigns => Method::BruteForce,
        MarkMode::Unknown => Method::Recipe,
    };
    let et = EmanationTable::assemble(strut, labels, cells, method);
    et.validate()?;
    Ok(et)
}

/// Versioned metadata summary attached to JSON exports.
#[derive(Clone, Debug, Serialize)]
pub struct TableSummary {
    pub schema_version: u32,
    pub n: u32,
    pub s: u32,
    pub g: u32,
    pub x: u32,
    pub band: String,
    pub b: u32,
    pub p_arr: Vec<u32>,
    pub filled_count: u64,
    pub boxkite_count: u64,
    pub labels: Vec<u32>,
}

impl TableSummary {
    pub fn compute(et: &EmanationTable) -> Result<Self> {
        let strut = et.strut_context();
        let spec = RecipeSpec::prepare(strut.strut());
        let (boxkite_count, band) = viable_boxkite_count(strut)?;
        Ok(TableSummary {
            schema_version: 1,
            n: strut.n(),
            s: strut.strut(),
            g: strut.half_generator(),
            x: strut.x(),
            band: band.name().to_string(),
            b: spec.high_bit_count(),
            p_arr: spec.powers().to_vec(),
            filled_count: et.filled_count(),
            boxkite_count,
            labels: et.labels().to_vec(),
        })
    }
}

pub fn to_json(et: &EmanationTable) -> Result<String> {
    let summary = TableSummary::compute(et)?;
    serde_json::to_string_pretty(&summary).map_err(|e| Error::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sedenion_csv_shape_and_roundtrip() {
        let strut = StrutContext::new(4, 1).unwrap();
        let et = EmanationTable::brute_force(&strut).unwrap();
        let csv = to_csv(&et);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), ",2,4,6,7,5,3");
        // Zigzag edge (3,6) is negative-signed: plain cell. Strut pair (2,3)
        // stays blank on the anti-diagonal.
        let interior: Vec<&str> = csv.lines().skip(1).collect();
        assert!(interior[5].starts_with("3,"));
        let row3: Vec<&str> = interior[5].split(',').collect();
        assert_eq!(row3[1], ""); // (3,2) strut opposite
        assert_eq!(row3[3], "5"); // (3,6) unmarked
        let nonempty = csv
            .lines()
            .skip(1)
            .flat_map(|l| l.split(',').skip(1))
            .filter(|f| !f.is_empty())
            .count();
        assert_eq!(nonempty, 24);
        let dashed = csv
            .lines()
            .skip(1)
            .flat_map(|l| l.split(',').skip(1))
            .filter(|f| f.starts_with('-'))
            .count();
        assert_eq!(dashed, 12);

        let back = from_csv(&csv, MarkMode::EdgeSigns).unwrap();
        assert_eq!(&back, &et);
        assert_eq!(to_csv(&back), csv);
    }

    #[test]
    fn recipe_csv_has_no_dashes_and_roundtrips() {
        let strut = StrutContext::new(5, 9).unwrap();
        let spec = RecipeSpec::for_recipe(9).unwrap();
        let et = crate::recipe::et_recipe(&spec, &strut).unwrap();
        let csv = to_csv(&et);
        assert!(!csv.contains('-'));
        let back = from_csv(&csv, MarkMode::Unknown).unwrap();
        assert_eq!(&back, &et);
    }

    #[test]
    fn json_summary_fields() {
        let strut = StrutContext::new(6, 25).unwrap();
        let et = EmanationTable::brute_force(&strut).unwrap();
        let json = to_json(&et).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["n"], 6);
        assert_eq!(v["s"], 25);
        assert_eq!(v["g"], 16);
        assert_eq!(v["x"], 57);
        assert_eq!(v["band"], "hide-fill");
        assert_eq!(v["b"], 2);
        assert_eq!(v["p_arr"], serde_json::json!([4, 3]));
        assert_eq!(v["boxkite_count"], 23);
        assert_eq!(v["filled_count"], 552);
    }

    #[test]
    fn malformed_csv_rejected() {
        assert!(from_csv("", MarkMode::EdgeSigns).is_err());
        assert!(from_csv("x,1,2\n", MarkMode::EdgeSigns).is_err());
        assert!(from_csv(",2,4,6,7,5,3\n3,,,,,\n", MarkMode::EdgeSigns).is_err());
    }
}
