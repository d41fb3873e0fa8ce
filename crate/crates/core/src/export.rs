//! Machine-readable output.
//!
//! * enumeration streams: JSON lines `{"n", "rank", "matrix": [rows]}`
//! * bijection pairs: JSON lines `{"n", "rank", "b": [rows], "c": [rows]}`
//! * count tables: CSV `family,n,r,count` or JSON
//!   `{"family", "rows": [{"n", "r", "count"}]}`
//!
//! Counts are always decimal strings. A row with an empty (CSV) or null
//! (JSON) `r` is a family total over all ranks.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::census::CountTable;
use crate::gf2::Gf2Matrix;
use crate::rootsets::{BijectionPair, RootCensusEntry, RootFamily};
use crate::scalar::CountScalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub n: usize,
    pub rank: usize,
    pub matrix: Vec<String>,
}

impl From<&RootCensusEntry> for EntryRecord {
    fn from(e: &RootCensusEntry) -> Self {
        Self {
            n: e.matrix.n(),
            rank: e.rank,
            matrix: e.matrix.to_row_strings(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub n: usize,
    pub rank: usize,
    pub b: Vec<String>,
    pub c: Vec<String>,
}

impl PairRecord {
    #[must_use]
    pub fn new(pair: &BijectionPair, rank: usize) -> Self {
        Self {
            n: pair.b_element.n(),
            rank,
            b: pair.b_element.to_row_strings(),
            c: pair.c_element.to_row_strings(),
        }
    }
}

pub fn write_json_line<T: Serialize>(out: &mut impl Write, record: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *out, record)?;
    out.write_all(b"\n")
}

/// Matrix-text blocks separated by blank lines.
pub fn write_matrix_blocks<'a>(
    out: &mut impl Write,
    matrices: impl IntoIterator<Item = &'a Gf2Matrix>,
) -> io::Result<()> {
    for (i, m) in matrices.into_iter().enumerate() {
        if i > 0 {
            out.write_all(b"\n")?;
        }
        write!(out, "{m}")?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub n: usize,
    pub r: Option<usize>,
    pub count: String,
}

/// Rank-stratified rows over the ranks each size can populate.
pub fn stratified_rows<C: CountScalar>(table: &CountTable<C>) -> Vec<CountRow> {
    (1..=table.max_n())
        .flat_map(|n| {
            table.populated_ranks(n).map(move |r| CountRow {
                n,
                r: Some(r),
                count: table.get(n, r).to_string(),
            })
        })
        .collect()
}

/// One total row per size, `n` counted from 1.
pub fn total_rows<C: CountScalar>(totals: &[C]) -> Vec<CountRow> {
    totals
        .iter()
        .enumerate()
        .map(|(i, c)| CountRow {
            n: i + 1,
            r: None,
            count: c.to_string(),
        })
        .collect()
}

pub fn write_counts_csv(out: &mut impl Write, family: RootFamily, rows: &[CountRow]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["family", "n", "r", "count"])?;
    for row in rows {
        let r = row.r.map(|r| r.to_string()).unwrap_or_default();
        w.write_record([family.name(), &row.n.to_string(), &r, &row.count])?;
    }
    w.flush()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountDocument {
    pub family: String,
    pub rows: Vec<CountRow>,
}

pub fn write_counts_json(out: &mut impl Write, family: RootFamily, rows: &[CountRow]) -> io::Result<()> {
    let doc = CountDocument {
        family: family.name().to_string(),
        rows: rows.to_vec(),
    };
    write_json_line(out, &doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::recurrence_table;

    #[test]
    fn entry_json_line_shape() {
        let e = RootCensusEntry {
            matrix: "01\n00".parse().unwrap(),
            rank: 1,
        };
        let mut buf = Vec::new();
        write_json_line(&mut buf, &EntryRecord::from(&e)).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "{\"n\":2,\"rank\":1,\"matrix\":[\"01\",\"00\"]}\n");
    }

    #[test]
    fn csv_counts() {
        let t = recurrence_table(RootFamily::SqrtZero, 3).unwrap();
        let mut buf = Vec::new();
        write_counts_csv(&mut buf, RootFamily::SqrtZero, &stratified_rows(&t)).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "family,n,r,count\nsqrt-zero,1,0,1\nsqrt-zero,2,0,1\nsqrt-zero,2,1,1\nsqrt-zero,3,0,1\nsqrt-zero,3,1,5\n"
        );
    }

    #[test]
    fn json_totals_have_null_rank() {
        let mut buf = Vec::new();
        write_counts_json(&mut buf, RootFamily::CholeskyZero, &total_rows(&[1u32, 2])).unwrap();
        let doc: CountDocument = serde_json::from_slice(&buf).unwrap();
        assert_eq!(doc.family, "cholesky-zero");
        assert_eq!(doc.rows[1], CountRow { n: 2, r: None, count: "2".into() });
        assert!(String::from_utf8(buf).unwrap().contains("\"r\":null"));
    }

    #[test]
    fn matrix_blocks_are_blank_line_separated() {
        let ms = [Gf2Matrix::identity(2), Gf2Matrix::zero(2)];
        let mut buf = Vec::new();
        write_matrix_blocks(&mut buf, &ms).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "10\n01\n\n00\n00\n");
    }
}
