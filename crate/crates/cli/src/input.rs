//! Resolution of `FILE|STRING` and `FILE|BUILTIN` arguments.

use pfq_core::arith::{PrimeField, Rationals};
use pfq_core::groebner::GroebnerCache;
use pfq_core::hilbert::{builtin_ideal, parse_ideal_json, IdealFile, BUILTIN_IDEALS};
use pfq_core::pfaffian::{SkewPolyMatrix, F0_TEXT, M0_JSON};
use pfq_core::poly::{parse_poly, Polynomial, VarContext};
use pfq_core::sheafcoh::{TwistedFreeComplex, BUILTIN_COMPLEXES};
use std::path::Path;
use std::sync::Arc;

use crate::{CliError, Config};

/// Text and a short, path-independent label.
#[derive(Debug, Clone)]
pub struct Source {
    pub label: String,
    pub text: String,
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn file_label(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// An existing file is read; anything else is taken literally.
pub fn file_or_string(arg: &str) -> Result<Source, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        Ok(Source {
            label: file_label(path),
            text: read_file(path)?.trim().to_string(),
        })
    } else {
        Ok(Source {
            label: "inline".into(),
            text: arg.to_string(),
        })
    }
}

pub fn var_context(config: &Config) -> Result<Arc<VarContext>, CliError> {
    if config.vars.is_empty() {
        Ok(VarContext::indexed("x", 5))
    } else {
        Ok(VarContext::new(
            config.vars.iter().map(|v| v.trim().to_string()),
        )?)
    }
}

/// `--matrix` or the shipped M0.
pub fn matrix(config: &Config) -> Result<(SkewPolyMatrix<Rationals>, Source), CliError> {
    let src = match &config.matrix {
        Some(path) => Source {
            label: file_label(path),
            text: read_file(path)?,
        },
        None => Source {
            label: "m0".into(),
            text: M0_JSON.to_string(),
        },
    };
    Ok((SkewPolyMatrix::from_json(&src.text)?, src))
}

/// `--poly`, or the shipped F0 when absent.
pub fn polynomial(config: &Config) -> Result<(Polynomial<Rationals>, Source), CliError> {
    let src = match &config.poly {
        Some(arg) => file_or_string(arg)?,
        None => Source {
            label: "f0".into(),
            text: F0_TEXT.trim().to_string(),
        },
    };
    let ctx = var_context(config)?;
    Ok((parse_poly(&src.text, &ctx)?, src))
}

pub fn prime_field(p: u64) -> Result<PrimeField, CliError> {
    PrimeField::new(p).map_err(|e| CliError::Usage(format!("bad prime {p}: {e}")))
}

/// `--prime` values, or `default`; each must be prime.
pub fn primes(config: &Config, default: &[u64]) -> Result<Vec<u64>, CliError> {
    let ps = if config.primes.is_empty() {
        default.to_vec()
    } else {
        config.primes.clone()
    };
    for &p in &ps {
        prime_field(p)?;
    }
    Ok(ps)
}

pub fn cache(config: &Config) -> Option<GroebnerCache> {
    (!config.no_cache).then(|| GroebnerCache::new(&config.cache_dir))
}

/// An ideal named by `--ideal`: either a builtin (drawn from `seed` where
/// random) or a JSON file.
#[derive(Debug, Clone)]
pub enum IdealSource {
    Builtin(String),
    File(Source),
}

impl IdealSource {
    pub fn resolve(arg: Option<&str>, default: &str) -> Result<Self, CliError> {
        let arg = arg.unwrap_or(default);
        if BUILTIN_IDEALS.contains(&arg) {
            return Ok(IdealSource::Builtin(arg.to_string()));
        }
        let path = Path::new(arg);
        if path.is_file() {
            return Ok(IdealSource::File(Source {
                label: file_label(path),
                text: read_file(path)?,
            }));
        }
        Err(CliError::Usage(format!(
            "--ideal {arg:?} is neither a file nor one of {BUILTIN_IDEALS:?}"
        )))
    }

    pub fn label(&self) -> &str {
        match self {
            IdealSource::Builtin(name) => name,
            IdealSource::File(src) => &src.label,
        }
    }

    pub fn builtin_name(&self) -> Option<&str> {
        match self {
            IdealSource::Builtin(name) => Some(name),
            IdealSource::File(_) => None,
        }
    }

    /// Whether different seeds give different ideals.
    pub fn is_random(&self) -> bool {
        matches!(self.builtin_name(), Some("pfaffian7" | "ci-quadrics"))
    }

    pub fn generators(
        &self,
        field: PrimeField,
        seed: u64,
    ) -> Result<Vec<Polynomial<PrimeField>>, CliError> {
        match self {
            IdealSource::Builtin(name) => {
                Ok(builtin_ideal(name, field, seed).expect("listed builtin"))
            }
            IdealSource::File(src) => Ok(parse_ideal_json(&src.text, &field)?),
        }
    }

    /// Generators over Q; builtins are not available this way.
    pub fn rational_generators(&self) -> Result<Vec<Polynomial<Rationals>>, CliError> {
        match self {
            IdealSource::Builtin(name) => Err(CliError::Usage(format!(
                "builtin {name:?} is defined mod p only; pass an ideal file"
            ))),
            IdealSource::File(src) => {
                let file: IdealFile = serde_json::from_str(&src.text)?;
                let ctx = VarContext::new(file.vars)?;
                Ok(file
                    .gens
                    .iter()
                    .map(|g| parse_poly(g, &ctx))
                    .collect::<Result<_, _>>()?)
            }
        }
    }
}

/// Canonical text of a generator list, for digests.
pub fn canonical_generators<F: pfq_core::arith::Field>(gens: &[Polynomial<F>]) -> String {
    let mut s = String::new();
    if let Some(g) = gens.first() {
        s.push_str(&g.context().names().join(","));
        s.push('\n');
    }
    for g in gens {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}

pub fn complex(config: &Config, default: &str) -> Result<(TwistedFreeComplex, Source), CliError> {
    let arg = config.complex.as_deref().unwrap_or(default);
    if let Some(cx) = TwistedFreeComplex::builtin(arg) {
        return Ok((
            cx,
            Source {
                label: arg.to_string(),
                text: arg.to_string(),
            },
        ));
    }
    let path = Path::new(arg);
    if !path.is_file() {
        return Err(CliError::Usage(format!(
            "--complex {arg:?} is neither a file nor one of {BUILTIN_COMPLEXES:?}"
        )));
    }
    let text = read_file(path)?;
    let cx = TwistedFreeComplex::from_json(&text)?;
    Ok((
        cx,
        Source {
            label: file_label(path),
            text,
        },
    ))
}
