//! Certificate runner: named pipelines over `pfq_core` that emit
//! reproducible JSON reports and map verdicts to exit codes.

pub mod certificates;
pub mod ci_quartic;
pub mod config;
pub mod input;
pub mod report;

pub use certificates::{run_certificate, CERTIFICATES};
pub use ci_quartic::{ci_quartic_pipeline, CiQuarticReport};
pub use config::{Cli, Config};
pub use report::{CertificateReport, Check, Verdict};

use pfq_core::{
    arith::ArithError, groebner::GroebnerError, hilbert::HilbertError, linalg::LinalgError,
    pfaffian::PfaffianError, poly::PolyError, sheafcoh::SheafError,
};
use thiserror::Error;

/// Anything that stops a certificate from producing a verdict (exit code 3).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown certificate {0:?}")]
    UnknownCertificate(String),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Pfaffian(#[from] PfaffianError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Sheaf(#[from] SheafError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Exit code for errors that prevent a verdict.
pub const EXIT_ERROR: u8 = 3;
