use serde::Serialize;

/// A failed command: the exit status and the record printed on stderr.
#[derive(Debug, Serialize)]
pub struct Failure {
    #[serde(skip)]
    pub exit: i32,
    pub kind: &'static str,
    pub message: String,
}

pub const USAGE: i32 = 2;
pub const NUMERICAL: i32 = 3;

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            exit: USAGE,
            kind: "usage",
            message: message.into(),
        }
    }

    pub fn record(&self) -> String {
        serde_json::json!({ "error": self }).to_string()
    }
}

impl From<bochner::Error> for Failure {
    fn from(e: bochner::Error) -> Self {
        use bochner::Error as E;
        // bad input is a usage error; everything the numerics trip over is not
        let (exit, kind) = match &e {
            E::NotUnitary { .. } => (USAGE, "not_unitary"),
            E::NotHermitian { .. } => (USAGE, "not_hermitian"),
            E::Dimension(_) => (USAGE, "dimension"),
            E::Parameter(_) => (USAGE, "parameter"),
            E::InvalidReducedPoly(_) => (USAGE, "invalid_reduced_poly"),
            E::Domain(_) => (USAGE, "domain"),
            E::InvalidCellPoint(_) => (USAGE, "invalid_cell_point"),
            E::InvalidPair(_) => (USAGE, "invalid_pair"),
            E::Precondition(_) => (USAGE, "precondition"),
            E::Inconsistent(_) => (NUMERICAL, "inconsistent"),
            E::Singular(_) => (NUMERICAL, "singular"),
            E::Numerical(_) => (NUMERICAL, "numerical"),
        };
        Self {
            exit,
            kind,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self {
            exit: USAGE,
            kind: "io",
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self {
            exit: USAGE,
            kind: "input",
            message: e.to_string(),
        }
    }
}
