use std::fs::File;
use std::io::{self, Write};

use serde::Serialize;
use serde_json::Value;

use crate::config::{ConfigEcho, Format, JobConfig};
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// An arithmetic error where a value was expected; counted as a failure.
    Error,
    /// Parameters outside the identity's hypotheses; neither pass nor fail.
    Rejected,
}

#[derive(Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub rejected: usize,
    pub vacuous: bool,
}

impl Summary {
    pub fn from_statuses<'a>(statuses: impl Iterator<Item = &'a Status>) -> Self {
        let mut s = Summary::default();
        let mut any = false;
        for st in statuses {
            any = true;
            match st {
                Status::Pass => s.pass += 1,
                Status::Fail | Status::Error => s.fail += 1,
                Status::Rejected => s.rejected += 1,
            }
        }
        s.vacuous = !any;
        s
    }
}

#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub command: &'static str,
    pub config: ConfigEcho,
    pub results: Vec<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summary>,
}

/// Rendered command output plus the exit code it implies.
pub struct Rendered {
    pub body: String,
    pub exit_code: i32,
}

fn sink(cfg: &JobConfig) -> Result<Box<dyn Write>, CliError> {
    Ok(match &cfg.out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout()),
    })
}

pub fn emit(cfg: &JobConfig, rendered: &Rendered) -> Result<(), CliError> {
    let mut out = sink(cfg)?;
    out.write_all(rendered.body.as_bytes())?;
    out.flush()?;
    Ok(())
}

pub fn to_json<T: Serialize>(report: &Report<T>) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}

/// CSV with the union of the result objects' keys as header, in first-seen
/// order.
pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let values: Vec<Value> = rows.iter().map(serde_json::to_value).collect::<Result<_, _>>()?;
    let mut header: Vec<String> = Vec::new();
    for v in &values {
        if let Value::Object(map) = v {
            for k in map.keys() {
                if !header.contains(k) {
                    header.push(k.clone());
                }
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    for v in &values {
        let record: Vec<String> = header
            .iter()
            .map(|k| match v.get(k) {
                None | Some(Value::Null) => String::new(),
                Some(Value::String(s)) => s.clone(),
                Some(Value::Array(items)) => items
                    .iter()
                    .map(|i| match i {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect::<Vec<_>>()
                    .join(" "),
                Some(other) => other.to_string(),
            })
            .collect();
        w.write_record(&record)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn render<T: Serialize>(
    cfg: &JobConfig,
    results: Vec<T>,
    summary: Option<Summary>,
) -> Result<Rendered, CliError> {
    let exit_code = match &summary {
        Some(s) if s.fail > 0 => 1,
        _ => 0,
    };
    let body = match cfg.format {
        Format::Json => to_json(&Report {
            command: cfg.command.name(),
            config: ConfigEcho::from(cfg),
            results,
            summary,
        })?,
        Format::Csv => to_csv(&results)?,
    };
    Ok(Rendered { body, exit_code })
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    command: &'a str,
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

/// Machine-readable error record for configuration failures.
pub fn error_json(command: &str, err: &CliError) -> String {
    let rec = ErrorRecord {
        command,
        error: ErrorBody {
            kind: err.kind(),
            message: err.to_string(),
        },
    };
    let mut s = serde_json::to_string_pretty(&rec).expect("error record serializes");
    s.push('\n');
    s
}
