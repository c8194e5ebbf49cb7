//! Reference tables of published counts, shipped as text files under `data/`.
//!
//! Format: `#` starts a comment line, `@table <id>` names the table, `@n <k>` gives the
//! first index of the value lists, and each remaining line is
//! `set | set | ... = v1, v2, ...` (class tables omit the `=` part). A set is written
//! with `;` between patterns, e.g. `121;1342`.

use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::enumerate::Count;
use crate::error::{Error, Result};
use crate::pattern::PatternSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableId {
    Appendix1,
    Appendix2,
    Table1Classes,
}

impl TableId {
    pub const ALL: [TableId; 3] = [TableId::Appendix1, TableId::Appendix2, TableId::Table1Classes];

    pub fn name(self) -> &'static str {
        match self {
            TableId::Appendix1 => "appendix1",
            TableId::Appendix2 => "appendix2",
            TableId::Table1Classes => "table1-classes",
        }
    }

    /// Embedded file contents.
    pub fn source(self) -> &'static str {
        match self {
            TableId::Appendix1 => include_str!("../../../data/appendix1.txt"),
            TableId::Appendix2 => include_str!("../../../data/appendix2.txt"),
            TableId::Table1Classes => include_str!("../../../data/table1_classes.txt"),
        }
    }

    /// SHA-256 of the embedded file, hex encoded.
    pub fn checksum(self) -> &'static str {
        match self {
            TableId::Appendix1 => "778ded45b4d776f1b67a2d5a7f3411ee69b8436ad516587175cdc826380ea191",
            TableId::Appendix2 => "ccb8fd81d9bb64d1952606aef4f1a75e4f7a0eb80bca209c95164dc7bfd24278",
            TableId::Table1Classes => "ac3250c766133add59451416ad6d90299ab49c9d7a7b1e6b4102074a0797da9d",
        }
    }

    /// Parses the embedded table after checking its checksum.
    pub fn load(self) -> Result<GoldenTable> {
        if sha256_hex(self.source()) != self.checksum() {
            return Err(Error::Invalid(format!("checksum mismatch for {}", self.name())));
        }
        let t: GoldenTable = self.source().parse()?;
        if t.id != self {
            return Err(Error::Invalid(format!("{} declares table {}", self.name(), t.id.name())));
        }
        Ok(t)
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

pub fn sha256_hex(s: &str) -> String {
    Sha256::digest(s.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    /// Pattern sets sharing the listed values.
    pub sets: Vec<PatternSet>,
    /// Counts for `n = start, start + 1, ...`; empty in class tables.
    pub values: Vec<Count>,
}

impl GoldenRow {
    /// `(n, value)` pairs given the table's first index.
    pub fn indexed(&self, start: usize) -> impl Iterator<Item = (usize, Count)> + '_ {
        self.values.iter().enumerate().map(move |(i, &v)| (start + i, v))
    }

    /// Case-insensitive substring match against the `;` and the braced spelling of each set.
    pub fn matches(&self, filter: &str) -> bool {
        let f = filter.trim().to_ascii_lowercase();
        self.sets.iter().any(|s| {
            let plain = s.to_string();
            let commas = plain.replace(';', ",");
            plain.contains(&f) || commas.contains(&f) || s.braced().contains(&f)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenTable {
    pub id: TableId,
    /// First index of every value list.
    pub start: Option<usize>,
    pub rows: Vec<GoldenRow>,
}

impl GoldenTable {
    pub fn start(&self) -> usize {
        self.start.unwrap_or(1)
    }

    /// Every pattern set mentioned in the table, in row order.
    pub fn sets(&self) -> Vec<&PatternSet> {
        self.rows.iter().flat_map(|r| r.sets.iter()).collect()
    }

    pub fn filtered(&self, filter: Option<&str>) -> Vec<&GoldenRow> {
        self.rows.iter().filter(|r| filter.map_or(true, |f| r.matches(f))).collect()
    }
}

fn parse_row(line: &str, lineno: usize) -> Result<GoldenRow> {
    let err = |m: &str| Error::Parse(format!("line {lineno}: {m}"));
    let (lhs, rhs) = match line.split_once('=') {
        Some((l, r)) => (l, Some(r)),
        None => (line, None),
    };
    let sets = lhs
        .split('|')
        .map(|s| s.trim().parse::<PatternSet>().map_err(|e| err(&e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let values = match rhs {
        None => Vec::new(),
        Some(r) => r
            .split(',')
            .map(|v| {
                let v = v.trim();
                if v.is_empty() || !v.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(err("bad value"));
                }
                v.parse::<Count>().map_err(|_| Error::Overflow)
            })
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(GoldenRow { sets, values })
}

impl FromStr for GoldenTable {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut id = None;
        let mut start = None;
        let mut rows = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('@') {
                let (key, val) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                match key {
                    "table" if id.is_none() => id = Some(val.parse::<TableId>()?),
                    "n" if start.is_none() => {
                        let n = val.trim().parse::<usize>().map_err(|_| Error::Parse(raw.to_string()))?;
                        start = Some(n);
                    }
                    _ => return Err(Error::Parse(format!("line {}: unexpected directive", i + 1))),
                }
                continue;
            }
            if id.is_none() {
                return Err(Error::Parse(format!("line {}: row before @table", i + 1)));
            }
            rows.push(parse_row(line, i + 1)?);
        }
        let id = id.ok_or_else(|| Error::Parse("missing @table".into()))?;
        Ok(GoldenTable { id, start, rows })
    }
}

impl fmt::Display for GoldenTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "@table {}", self.id.name())?;
        if let Some(n) = self.start {
            writeln!(f, "@n {n}")?;
        }
        for r in &self.rows {
            let sets: Vec<String> = r.sets.iter().map(|s| s.to_string()).collect();
            write!(f, "{}", sets.join(" | "))?;
            if !r.values.is_empty() {
                let v: Vec<String> = r.values.iter().map(|v| v.to_string()).collect();
                write!(f, " = {}", v.join(", "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_load_and_round_trip() {
        for id in TableId::ALL {
            let t = id.load().unwrap();
            let again: GoldenTable = t.to_string().parse().unwrap();
            assert_eq!(again, t);
        }
    }

    #[test]
    fn sizes() {
        let a1 = TableId::Appendix1.load().unwrap();
        assert_eq!(a1.start(), 24);
        assert_eq!(a1.rows.len(), 318);
        assert_eq!(a1.sets().len(), 384);
        let a2 = TableId::Appendix2.load().unwrap();
        assert_eq!(a2.start(), 25);
        assert_eq!(a2.rows.len(), 32);
        let t1 = TableId::Table1Classes.load().unwrap();
        assert_eq!(t1.rows.len(), 47);
        assert!(t1.rows.iter().all(|r| r.values.is_empty() && r.sets.len() >= 2));
    }

    #[test]
    fn filters() {
        let a1 = TableId::Appendix1.load().unwrap();
        let rows = a1.filtered(Some("121,1342"));
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].values, vec![78034, 113633, 164728]);
        assert!(a1.filtered(Some("nonexistent")).is_empty());
        assert!(rows[0].matches("{121,1342}"));
    }

    #[test]
    fn malformed() {
        assert!("121;1342 = 5".parse::<GoldenTable>().is_err());
        assert!("@table appendix9".parse::<GoldenTable>().is_err());
        assert!("@table appendix2\n121;1342 = x".parse::<GoldenTable>().is_err());
        assert!("@table appendix2\n@n 1\n@n 2".parse::<GoldenTable>().is_err());
        assert!("@table appendix2\n121;1342 = 99999999999999999999999".parse::<GoldenTable>().is_err());
        assert!("@table appendix2\n = 5".parse::<GoldenTable>().is_err());
    }
}
