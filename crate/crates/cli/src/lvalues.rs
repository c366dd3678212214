//! L-value table files: one record per line,
//! `D <tab> character-label <tab> k <tab> cyclotomic-JSON`; `#` starts a comment.

use eisterms::characters::LValueTable;
use eisterms::Error;

use crate::error::CliError;
use crate::format::CycJson;

pub fn parse_lvalues(text: &str) -> Result<LValueTable, CliError> {
    let mut table = LValueTable::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let bad = |msg: String| CliError::Line { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim_end();
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.splitn(4, '\t').collect();
        if fields.len() != 4 {
            return Err(bad(format!("expected 4 tab-separated fields, found {}", fields.len())));
        }
        let d: i64 = fields[0].trim().parse().map_err(|_| bad(format!("bad discriminant {:?}", fields[0])))?;
        let label = fields[1].trim();
        if label.is_empty() {
            return Err(bad("empty character label".into()));
        }
        let k: u32 = fields[2].trim().parse().map_err(|_| bad(format!("bad weight {:?}", fields[2])))?;
        let json: CycJson = serde_json::from_str(fields[3]).map_err(|e| bad(format!("bad value: {e}")))?;
        let value = json.to_cyc().map_err(|e| bad(e.to_string()))?;
        table.insert(d, label, k, value).map_err(|e| match e {
            Error::Hypothesis(m) => bad(m),
            other => bad(other.to_string()),
        })?;
    }
    Ok(table)
}

/// Inverse of [`parse_lvalues`] up to comments and whitespace.
pub fn write_lvalues(table: &LValueTable) -> String {
    let mut out = String::new();
    for ((d, label, k), v) in table.iter() {
        let json = CycJson { text: None, ..CycJson::from_cyc(v) };
        out.push_str(&format!("{d}\t{label}\t{k}\t{}\n", serde_json::to_string(&json).expect("serializable")));
    }
    out
}
