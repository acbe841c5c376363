use std::fmt;

use serde::Serialize;

/// CLI-level failures that do not come from the engine.
#[derive(Debug)]
pub enum Failure {
    Parse(String),
    UnsupportedDimension(usize),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Parse(msg) => write!(f, "parse error: {msg}"),
            Failure::UnsupportedDimension(d) => {
                write!(f, "render-2d needs a 2-row matrix, got {d} rows")
            }
        }
    }
}

impl std::error::Error for Failure {}

#[derive(Debug, Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

#[derive(Debug, Serialize)]
struct ErrorObject<'a> {
    error: ErrorBody<'a>,
}

/// Exit code and error kind for a failed run.
pub fn classify(err: &anyhow::Error) -> (u8, &'static str) {
    if let Some(f) = err.downcast_ref::<Failure>() {
        return match f {
            Failure::Parse(_) => (2, "parse"),
            Failure::UnsupportedDimension(_) => (3, "unsupported_dimension"),
        };
    }
    if let Some(e) = err.downcast_ref::<stdpairs::Error>() {
        return match e {
            stdpairs::Error::BudgetExceeded { .. } => (4, "budget_exceeded"),
            _ => (3, "validation"),
        };
    }
    if err.downcast_ref::<clap::Error>().is_some() {
        return (2, "parse");
    }
    if err.downcast_ref::<std::io::Error>().is_some() {
        return (5, "io");
    }
    (1, "internal")
}

pub fn error_json(err: &anyhow::Error) -> (u8, String) {
    let (code, kind) = classify(err);
    let object = ErrorObject {
        error: ErrorBody {
            kind,
            message: format!("{err:#}"),
        },
    };
    (
        code,
        serde_json::to_string(&object).expect("plain data serializes"),
    )
}
