use jmeas::steering::tightness_report;
use jmeas::{ConfigId, Result};
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdRow {
    pub config: String,
    pub size: usize,
    pub lambda_construction: f64,
    pub lambda_witness: f64,
    pub tight: bool,
}

/// One tightness row per id, sorted by family, size and id.
pub fn threshold_table(ids: &[ConfigId]) -> Result<Vec<ThresholdRow>> {
    let mut ids = ids.to_vec();
    ids.sort_by(ConfigId::sort_cmp);
    ids.dedup();
    ids.iter()
        .map(|id| {
            let report = tightness_report(id)?;
            Ok(ThresholdRow {
                config: report.config,
                size: id.size(),
                lambda_construction: report.lambda_construction,
                lambda_witness: report.lambda_witness,
                tight: report.tight,
            })
        })
        .collect()
}

/// Positional notation with 12 significant digits.
pub fn format_sig12(value: f64) -> String {
    if value == 0.0 {
        return "0.00000000000".to_string();
    }
    let scientific = format!("{value:.11e}");
    let (mantissa, exponent) = scientific.split_once('e').expect("`e` format");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if !value.is_finite() || !(-5..12).contains(&exponent) {
        return scientific;
    }
    let sign = if value < 0.0 { "-" } else { "" };
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    if exponent >= 0 {
        let (int, frac) = digits.split_at(exponent as usize + 1);
        if frac.is_empty() {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    } else {
        let zeros = "0".repeat((-exponent - 1) as usize);
        format!("{sign}0.{zeros}{digits}")
    }
}

pub const CSV_HEADER: [&str; 5] = [
    "config",
    "M_or_d",
    "lambda_construction",
    "lambda_witness",
    "tight",
];

pub fn to_csv(rows: &[ThresholdRow]) -> String {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(CSV_HEADER).expect("write to memory");
    for row in rows {
        writer
            .write_record([
                row.config.clone(),
                row.size.to_string(),
                format_sig12(row.lambda_construction),
                format_sig12(row.lambda_witness),
                row.tight.to_string(),
            ])
            .expect("write to memory");
    }
    String::from_utf8(writer.into_inner().expect("flush to memory")).expect("ASCII output")
}

pub fn to_json(rows: &[ThresholdRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "config": r.config,
                    "M_or_d": r.size,
                    "lambda_construction": r.lambda_construction,
                    "lambda_witness": r.lambda_witness,
                    "tight": r.tight,
                    "gap": r.lambda_witness - r.lambda_construction,
                })
            })
            .collect(),
    )
}
