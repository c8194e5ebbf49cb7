use std::io::Write;

use serde_json::Value;

/// Result of one command: a JSON document, the same data flattened into CSV records, and
/// whether everything checked passed.
pub struct Report {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub records: Vec<Vec<String>>,
    pub ok: bool,
}

impl Report {
    pub fn new(json: Value, ok: bool) -> Self {
        Report { json, header: Vec::new(), records: Vec::new(), ok }
    }

    pub fn with_rows(mut self, header: Vec<&'static str>, records: Vec<Vec<String>>) -> Self {
        self.header = header;
        self.records = records;
        self
    }

    pub fn write_json(&self, out: &mut impl Write) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, &self.json)?;
        writeln!(out)
    }

    pub fn write_csv(&self, out: &mut impl Write) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for r in &self.records {
            w.write_record(r)?;
        }
        w.flush()
    }
}

pub fn counts(v: &[u64]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn joined(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}
