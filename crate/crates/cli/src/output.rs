//! Deterministic table writers. CSV carries one header line and
//! 17-significant-digit scientific notation, which round-trips f64
//! losslessly; JSON holds one array per column (non-finite as null).

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::config::OutputFormat;
use crate::AppError;

pub struct Table {
    pub columns: Vec<(String, Vec<f64>)>,
}

impl Table {
    pub fn new() -> Self {
        Self {
            columns: Vec::new(),
        }
    }

    pub fn push(&mut self, name: &str, values: Vec<f64>) {
        self.columns.push((name.to_string(), values));
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |(_, v)| v.len())
    }

    pub fn write(&self, path: &Path, format: OutputFormat) -> Result<(), AppError> {
        let file = File::create(path)
            .map_err(|e| AppError::Io(format!("creating {}: {e}", path.display())))?;
        let mut w = BufWriter::new(file);
        match format {
            OutputFormat::Csv => self.write_csv(&mut w),
            OutputFormat::Json => self.write_json(&mut w),
        }
        .map_err(|e| AppError::Io(format!("writing {}: {e}", path.display())))
    }

    fn write_csv(&self, w: &mut impl Write) -> std::io::Result<()> {
        let header: Vec<&str> = self.columns.iter().map(|(n, _)| n.as_str()).collect();
        writeln!(w, "{}", header.join(","))?;
        for i in 0..self.rows() {
            let mut line = String::new();
            for (j, (_, col)) in self.columns.iter().enumerate() {
                if j > 0 {
                    line.push(',');
                }
                line.push_str(&fmt_g17(col[i]));
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    fn write_json(&self, w: &mut impl Write) -> std::io::Result<()> {
        let mut map = serde_json::Map::new();
        for (name, col) in &self.columns {
            let arr: Vec<serde_json::Value> = col
                .iter()
                .map(|&v| {
                    serde_json::Number::from_f64(v)
                        .map(serde_json::Value::Number)
                        .unwrap_or(serde_json::Value::Null)
                })
                .collect();
            map.insert(name.clone(), serde_json::Value::Array(arr));
        }
        serde_json::to_writer_pretty(&mut *w, &serde_json::Value::Object(map))?;
        writeln!(w)
    }
}

/// 17 significant digits, scientific, '.' decimal: full f64 round-trip.
pub fn fmt_g17(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else {
        format!("{v:.16e}")
    }
}

/// Pretty JSON for report-style values, to a file or stdout.
pub fn write_json_value(
    value: &impl serde::Serialize,
    path: Option<&Path>,
) -> Result<(), AppError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| AppError::Io(format!("serializing report: {e}")))?;
    match path {
        Some(p) => std::fs::write(p, text + "\n")
            .map_err(|e| AppError::Io(format!("writing {}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
