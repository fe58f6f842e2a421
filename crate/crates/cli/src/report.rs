use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::Path;

use crate::CliError;

pub const RNG_DESCRIPTION: &str = "ChaCha8Rng::seed_from_u64 (rand_chacha 0.3)";

pub fn tool_version() -> String {
    format!("pfq {}", env!("CARGO_PKG_VERSION"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Fail dominates inconclusive, which dominates pass. No checks at all
    /// is inconclusive.
    pub fn combine<'a>(checks: impl IntoIterator<Item = &'a Check>) -> Self {
        checks
            .into_iter()
            .map(|c| c.verdict)
            .max()
            .unwrap_or(Verdict::Inconclusive)
    }
}

/// One named sub-check of a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, verdict: Verdict, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            verdict,
            detail: detail.into(),
        }
    }

    pub fn expect_eq<T: PartialEq + std::fmt::Debug>(
        name: impl Into<String>,
        got: T,
        want: T,
    ) -> Self {
        let verdict = Verdict::from_bool(got == want);
        Self::new(name, verdict, format!("got {got:?}, expected {want:?}"))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub certificate: String,
    pub tool_version: String,
    pub rng: String,
    /// Input label to `sha256:<hex>` of its canonical text.
    pub input_digests: BTreeMap<String, String>,
    pub primes: Vec<u64>,
    pub seeds: Vec<u64>,
    /// `{"data": ..., "checks": [...]}`.
    pub result: serde_json::Value,
    pub pass: bool,
    pub verdict: Verdict,
    pub runtime_ms: u64,
}

impl CertificateReport {
    /// Verdict and `pass` are recomputed from the checks in `result`.
    pub fn new(
        certificate: &str,
        input_digests: BTreeMap<String, String>,
        primes: Vec<u64>,
        seeds: Vec<u64>,
        data: serde_json::Value,
        checks: Vec<Check>,
        runtime_ms: u64,
    ) -> Result<Self, CliError> {
        let verdict = Verdict::combine(&checks);
        let result = serde_json::json!({ "data": data, "checks": checks });
        Ok(Self {
            certificate: certificate.to_string(),
            tool_version: tool_version(),
            rng: RNG_DESCRIPTION.to_string(),
            input_digests,
            primes,
            seeds,
            result,
            pass: verdict == Verdict::Pass,
            verdict,
            runtime_ms,
        })
    }

    pub fn checks(&self) -> Vec<Check> {
        let mut out = Vec::new();
        if let Some(list) = self.result.get("checks").and_then(|c| c.as_array()) {
            for c in list {
                let verdict = match c.get("verdict").and_then(|v| v.as_str()) {
                    Some("PASS") => Verdict::Pass,
                    Some("FAIL") => Verdict::Fail,
                    _ => Verdict::Inconclusive,
                };
                out.push(Check::new(
                    c.get("name").and_then(|v| v.as_str()).unwrap_or_default(),
                    verdict,
                    c.get("detail").and_then(|v| v.as_str()).unwrap_or_default(),
                ));
            }
        }
        out
    }

    /// Everything except `runtime_ms`, serialised canonically. Two runs with
    /// the same flags produce the same string.
    pub fn reproducible_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serialises");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("runtime_ms");
        }
        serde_json::to_string(&v).expect("value serialises")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// Writes to `out` or to stdout.
    pub fn emit(&self, out: Option<&Path>) -> Result<(), CliError> {
        let text = self.to_json_pretty() + "\n";
        match out {
            Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            }),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

pub fn sha256_digest(text: &str) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(text.as_bytes())))
}
