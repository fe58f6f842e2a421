//! One function per certificate. Each returns its data payload and the
//! checks that decide the verdict.

use pfq_core::arith::{monomial_count, Rational, DEFAULT_PRIME, DEFAULT_PRIMES};
use pfq_core::groebner::{smoothness_certificate, SmoothnessVerdict};
use pfq_core::hilbert::{hilbert_data, invariants_from_hp, slice_degree, HilbertError};
use pfq_core::pfaffian::{
    certify_pfaffian, classify_kernel, jacobian_span_rank, jacobian_span_rank_mod,
    sample_points_on_quartic,
};
use pfq_core::poly::{parse_poly, VarContext};
use pfq_core::sheafcoh::{
    chern_twist, cohomology_table, complex_cohomology, complex_euler, curve_bundle_euler,
    dimension_audit, euler_char_affine_in_alpha, euler_char_bundle, zero_locus_invariants,
    ChernData, TwistedFreeComplex,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::time::Instant;

use crate::ci_quartic::{ci_quartic_pipeline, random_integer_form};
use crate::input::{self, canonical_generators, IdealSource};
use crate::report::{sha256_digest, CertificateReport, Check, Verdict};
use crate::{CliError, Config};

pub const CERTIFICATES: [&str; 11] = [
    "pfaffian-identity",
    "jacobian-span",
    "smoothness",
    "curve-invariants",
    "slice-degree",
    "resolution-cohomology",
    "chern",
    "zero-locus",
    "kernel-sample",
    "ci-quartic",
    "audit",
];

/// Pfaffian curve: HF in degrees 0..=5 and the Hilbert polynomial.
const PFAFFIAN_CURVE_HF: [u64; 6] = [1, 5, 15, 28, 42, 56];
const PFAFFIAN_CURVE_HP: &str = "14*t - 14";
/// Twists of the EACM bundle checked for intermediate vanishing.
const EACM_RANGE: std::ops::RangeInclusive<i64> = -20..=20;

#[derive(Default)]
struct Outcome {
    digests: BTreeMap<String, String>,
    primes: Vec<u64>,
    seeds: Vec<u64>,
    data: Value,
    checks: Vec<Check>,
}

impl Outcome {
    fn digest(&mut self, key: impl Into<String>, text: &str) {
        self.digests.insert(key.into(), sha256_digest(text));
    }
}

pub fn run_certificate(name: &str, config: &Config) -> Result<CertificateReport, CliError> {
    let start = Instant::now();
    let outcome = match name {
        "pfaffian-identity" => pfaffian_identity(config)?,
        "jacobian-span" => jacobian_span(config)?,
        "smoothness" => smoothness(config)?,
        "curve-invariants" => curve_invariants(config)?,
        "slice-degree" => slice(config)?,
        "resolution-cohomology" => resolution_cohomology(config)?,
        "chern" => chern(config)?,
        "zero-locus" => zero_locus(config)?,
        "kernel-sample" => kernel_sample(config)?,
        "ci-quartic" => ci_quartic(config)?,
        "audit" => audit()?,
        other => return Err(CliError::UnknownCertificate(other.to_string())),
    };
    CertificateReport::new(
        name,
        outcome.digests,
        outcome.primes,
        outcome.seeds,
        outcome.data,
        outcome.checks,
        start.elapsed().as_millis() as u64,
    )
}

fn seed_range(config: &Config) -> Vec<u64> {
    let count = config.count.unwrap_or(1).max(1) as u64;
    (0..count).map(|i| config.seed.wrapping_add(i)).collect()
}

fn pfaffian_identity(config: &Config) -> Result<Outcome, CliError> {
    let (m, msrc) = input::matrix(config)?;
    let expect = match (&config.expect, &config.matrix) {
        (Some(arg), _) => input::file_or_string(arg)?,
        (None, None) => input::Source {
            label: "f0".into(),
            text: pfq_core::pfaffian::F0_TEXT.trim().to_string(),
        },
        (None, Some(_)) => {
            return Err(CliError::Usage("--expect is required with --matrix".into()))
        }
    };
    let claimed = parse_poly(&expect.text, m.context())?;
    let cert = certify_pfaffian(&msrc.label, &m, &claimed)?;
    let mut out = Outcome::default();
    out.digest(format!("matrix:{}", msrc.label), &msrc.text);
    out.digest(format!("expect:{}", expect.label), &expect.text);
    out.checks.push(match cert.sign {
        Some(s) => Check::new(
            "pfaffian equals ±claimed",
            Verdict::Pass,
            format!("sign {s:+}"),
        ),
        None => Check::new(
            "pfaffian equals ±claimed",
            Verdict::Fail,
            "computed Pfaffian differs",
        ),
    });
    out.data = serde_json::to_value(&cert)?;
    Ok(out)
}

fn jacobian_span(config: &Config) -> Result<Outcome, CliError> {
    let (m, msrc) = input::matrix(config)?;
    let primes = input::primes(config, &DEFAULT_PRIMES)?;
    let nvars = m.context().len();
    let degree = m.size() / 2;
    let target = monomial_count(nvars, degree);
    let forms = m.size() * (m.size() - 1) / 2 * nvars;
    let mut out = Outcome::default();
    out.digest(format!("matrix:{}", msrc.label), &msrc.text);
    let mut ranks = BTreeMap::new();
    let mut deficient = false;
    for &p in &primes {
        let r = jacobian_span_rank_mod(&m, p)?;
        ranks.insert(p.to_string(), r);
        let verdict = if r == target {
            Verdict::Pass
        } else {
            deficient = true;
            Verdict::Inconclusive
        };
        out.checks.push(Check::new(
            format!("rank mod {p}"),
            verdict,
            format!("{r} of {target}"),
        ));
    }
    // a mod-p rank only bounds the rational rank from below
    let rational_rank = if deficient {
        let r = jacobian_span_rank(&m)?;
        out.checks.push(Check::expect_eq("rank over Q", r, target));
        Some(r)
    } else {
        None
    };
    out.primes = primes;
    out.data = json!({
        "matrix_size": m.size(),
        "nvars": nvars,
        "forms": forms,
        "target_dimension": target,
        "ranks": ranks,
        "rational_rank": rational_rank,
    });
    Ok(out)
}

fn smoothness(config: &Config) -> Result<Outcome, CliError> {
    let (f, src) = input::polynomial(config)?;
    let primes = input::primes(config, &DEFAULT_PRIMES)?;
    let cache = input::cache(config);
    let mut out = Outcome::default();
    out.digest(format!("poly:{}", src.label), &f.to_string());
    let mut certs = Vec::new();
    for &p in &primes {
        let cert = smoothness_certificate(&f, p, cache.as_ref())?;
        let verdict = match cert.verdict {
            SmoothnessVerdict::Smooth => Verdict::Pass,
            SmoothnessVerdict::Singular { .. } => Verdict::Fail,
            SmoothnessVerdict::Indeterminate { .. } => Verdict::Inconclusive,
        };
        let label = serde_json::to_value(&cert.verdict)?["verdict"]
            .as_str()
            .unwrap_or_default()
            .to_string();
        out.checks
            .push(Check::new(format!("smooth mod {p}"), verdict, label));
        certs.push(cert);
    }
    out.primes = primes;
    out.data = json!({ "polynomial": f.to_string(), "certificates": certs });
    Ok(out)
}

/// `(dim, deg, p_a)` of a curve.
type Invariants = (i64, i64, i64);

/// Expected invariants and HF prefix of random builtins.
fn builtin_curve_expectation(name: &str) -> Option<(Invariants, &'static [u64])> {
    match name {
        "pfaffian7" => Some(((1, 14, 15), &PFAFFIAN_CURVE_HF)),
        "ci-quadrics" => Some(((1, 8, 5), &[1, 5, 12, 20])),
        _ => None,
    }
}

fn curve_invariants(config: &Config) -> Result<Outcome, CliError> {
    let ideal = IdealSource::resolve(config.ideal.as_deref(), "pfaffian7")?;
    let p = input::primes(config, &[DEFAULT_PRIME])?[0];
    let field = input::prime_field(p)?;
    let cache = input::cache(config);
    let seeds = if ideal.is_random() {
        seed_range(config)
    } else {
        vec![config.seed]
    };
    let expectation = ideal.builtin_name().and_then(builtin_curve_expectation);
    let be_table = (ideal.builtin_name() == Some("pfaffian7")).then(|| {
        let cx = TwistedFreeComplex::builtin("be-curve").expect("builtin");
        cohomology_table(&cx, 0..=config.tmax as i64)
    });

    let mut out = Outcome::default();
    let mut runs = Vec::new();
    for &seed in &seeds {
        let gens = ideal.generators(field, seed)?;
        out.digest(
            format!("ideal:{}:seed{seed}", ideal.label()),
            &canonical_generators(&gens),
        );
        let data = hilbert_data(&gens, config.tmax, cache.as_ref())?;
        let invariants = match invariants_from_hp(&data.hp) {
            Ok(inv) => Some(inv),
            Err(HilbertError::NotACurve(hp)) => {
                out.checks.push(Check::new(
                    format!("seed {seed}: is a curve"),
                    Verdict::Fail,
                    format!("Hilbert polynomial {hp} has degree > 1"),
                ));
                None
            }
            Err(e) => return Err(e.into()),
        };
        if let Some(inv) = invariants {
            match expectation {
                Some((want, hf)) => {
                    out.checks.push(Check::expect_eq(
                        format!("seed {seed}: (dim, deg, p_a)"),
                        (inv.dim, inv.degree, inv.arithmetic_genus),
                        want,
                    ));
                    let n = hf.len().min(data.hf_table.len());
                    out.checks.push(Check::expect_eq(
                        format!("seed {seed}: HF table"),
                        &data.hf_table[..n],
                        &hf[..n],
                    ));
                }
                None => out.checks.push(Check::new(
                    format!("seed {seed}: is a curve"),
                    Verdict::from_bool(inv.dim <= 1),
                    format!("projective dimension {}", inv.dim),
                )),
            }
        }
        if ideal.builtin_name() == Some("pfaffian7") {
            out.checks.push(Check::expect_eq(
                format!("seed {seed}: Hilbert polynomial"),
                data.hp.to_string().as_str(),
                PFAFFIAN_CURVE_HP,
            ));
        }
        if let Some(table) = &be_table {
            let mismatches: Vec<i64> = table
                .columns
                .iter()
                .filter(|c| {
                    c.h(0)
                        .is_some_and(|h0| Some(&(h0 as u64)) != data.hf_table.get(c.twist as usize))
                })
                .map(|c| c.twist)
                .collect();
            let compared = table.columns.iter().filter(|c| c.h(0).is_some()).count();
            out.checks.push(Check::new(
                format!("seed {seed}: resolution chase agrees with HF"),
                Verdict::from_bool(mismatches.is_empty() && compared > 0),
                format!("{compared} degrees compared, mismatches at {mismatches:?}"),
            ));
        }
        runs.push(json!({ "seed": seed, "hilbert": data, "invariants": invariants }));
    }
    out.primes = vec![p];
    out.seeds = seeds;
    out.data = json!({
        "ideal": ideal.label(),
        "runs": runs,
        "resolution_h0": be_table.map(|t| t.columns.iter().map(|c| c.entries[0]).collect::<Vec<_>>()),
    });
    Ok(out)
}

/// Projective dimension and degree of builtins, for slicing.
fn builtin_slice_expectation(name: &str) -> Option<(usize, u64)> {
    match name {
        "pfaffian7-generic" => Some((17, 14)),
        "grass27" => Some((10, 42)),
        "pfaffian7" => Some((1, 14)),
        "ci-quadrics" => Some((1, 8)),
        _ => None,
    }
}

fn slice(config: &Config) -> Result<Outcome, CliError> {
    let ideal = IdealSource::resolve(config.ideal.as_deref(), "pfaffian7-generic")?;
    let p = input::primes(config, &[DEFAULT_PRIME])?[0];
    let field = input::prime_field(p)?;
    let cache = input::cache(config);
    let expectation = ideal.builtin_name().and_then(builtin_slice_expectation);
    let dim = config
        .dim
        .or(expectation.map(|(d, _)| d))
        .ok_or_else(|| CliError::Usage("--dim is required for ideal files".into()))?;
    let seeds = seed_range(config);
    let mut out = Outcome::default();
    let mut reports = Vec::new();
    for &seed in &seeds {
        let gens = ideal.generators(field, seed)?;
        let key = if ideal.is_random() {
            format!("ideal:{}:seed{seed}", ideal.label())
        } else {
            format!("ideal:{}", ideal.label())
        };
        out.digest(key, &canonical_generators(&gens));
        let report = slice_degree(&gens, dim, seed, cache.as_ref())?;
        if let (Some((_, want)), None) = (expectation, config.dim) {
            out.checks.push(Check::expect_eq(
                format!("seed {seed}: degree"),
                report.degree,
                want,
            ));
        }
        reports.push(json!({ "seed": seed, "slice": report }));
    }
    let degrees: Vec<u64> = reports
        .iter()
        .map(|r| r["slice"]["degree"].as_u64().expect("degree"))
        .collect();
    out.checks.push(Check::new(
        "degree independent of seed",
        Verdict::from_bool(degrees.windows(2).all(|w| w[0] == w[1])),
        format!("{degrees:?}"),
    ));
    out.primes = vec![p];
    out.seeds = seeds;
    out.data = json!({ "ideal": ideal.label(), "scheme_dim": dim, "runs": reports });
    Ok(out)
}

fn resolution_cohomology(config: &Config) -> Result<Outcome, CliError> {
    let (cx, src) = input::complex(config, "rodland")?;
    let twists: Vec<i64> = match config.twist {
        Some(t) => vec![t],
        None => EACM_RANGE.collect(),
    };
    let table = cohomology_table(&cx, twists.iter().copied());
    let mut out = Outcome::default();
    out.digest(
        format!("complex:{}", src.label),
        &serde_json::to_string(&cx)?,
    );
    let builtin = TwistedFreeComplex::builtin(&src.label)
        .filter(|b| *b == cx)
        .map(|_| src.label.as_str());
    match builtin {
        Some("rodland") => {
            let c = complex_cohomology(&cx, 0);
            let got: Vec<Option<i128>> = (0..c.entries.len()).map(|i| c.h(i)).collect();
            out.checks.push(Check::expect_eq(
                "h^i(I_C^2(3))",
                got,
                vec![Some(0), Some(0), Some(21), Some(0), Some(0)],
            ));
        }
        Some("eacm") => {
            out.checks.push(Check::expect_eq(
                "h^0(E)",
                complex_cohomology(&cx, 0).h(0),
                Some(8),
            ));
            let bad: Vec<i64> = EACM_RANGE
                .filter(|&t| {
                    let c = complex_cohomology(&cx, t);
                    c.h(1) != Some(0) || c.h(2) != Some(0)
                })
                .collect();
            out.checks.push(Check::new(
                "h^1(E(t)) = h^2(E(t)) = 0 on [-20, 20]",
                Verdict::from_bool(bad.is_empty()),
                format!("violations at {bad:?}"),
            ));
        }
        Some("be-curve") => {
            let bad: Vec<i64> = (3..=20)
                .filter(|&t| complex_euler(&cx, t) != 14 * t as i128 - 14)
                .collect();
            out.checks.push(Check::new(
                "chi(O_C(t)) = 14t - 14 on [3, 20]",
                Verdict::from_bool(bad.is_empty()),
                format!("violations at {bad:?}"),
            ));
            out.checks.push(Check::expect_eq(
                "h^1(O_C(2))",
                complex_cohomology(&cx, 2).h(1),
                Some(1),
            ));
        }
        _ => {
            let open: Vec<i64> = table
                .columns
                .iter()
                .filter(|c| !c.forced)
                .map(|c| c.twist)
                .collect();
            out.checks.push(Check::new(
                "all requested columns forced",
                if open.is_empty() {
                    Verdict::Pass
                } else {
                    Verdict::Inconclusive
                },
                format!("unforced twists {open:?}"),
            ));
        }
    }
    out.data = json!({ "complex": src.label, "table": table });
    Ok(out)
}

fn chern_data(config: &Config) -> ChernData {
    ChernData::new(config.k.unwrap_or(3), config.alpha.unwrap_or(14))
}

fn chern(config: &Config) -> Result<Outcome, CliError> {
    let c = chern_data(config);
    let n = config.twist.unwrap_or(0);
    let twisted = chern_twist(c, n);
    let chi = euler_char_bundle(twisted);
    let (slope, intercept) = euler_char_affine_in_alpha(c.k);
    let mut out = Outcome::default();
    out.checks.push(Check::new(
        format!("chi(E({n})) integral"),
        Verdict::from_bool(chi.integral),
        format!("chi = {}", chi.value),
    ));
    // identities that hold for every bundle on the quartic
    out.checks.push(Check::expect_eq(
        "chi(k=3, alpha=14)",
        euler_char_bundle(ChernData::new(3, 14)).value.to_string(),
        "8".to_string(),
    ));
    let k0 = (0..=20).all(|a: i64| {
        euler_char_bundle(ChernData::new(0, a)).value == Rational::new((4 - a).into(), 2.into())
    });
    out.checks.push(Check::new(
        "chi = 2 - alpha/2 for k = 0, alpha in [0, 20]",
        Verdict::from_bool(k0),
        "",
    ));
    let e1 = (0..=20).all(|a: i64| {
        euler_char_bundle(chern_twist(ChernData::new(0, a), 1)).value
            == Rational::new((20 - 3 * a).into(), 2.into())
    });
    out.checks.push(Check::new(
        "chi(E(1)) = 10 - 3 alpha/2 for k = 0, alpha in [0, 20]",
        Verdict::from_bool(e1),
        "",
    ));
    let restricted = curve_bundle_euler(3 * 14, 2, 15);
    let diff =
        euler_char_bundle(ChernData::new(3, 14)).value - Rational::from_integer(restricted.into());
    out.checks.push(Check::expect_eq(
        "chi(E) - chi(E|_C)",
        diff.to_string(),
        "-6".to_string(),
    ));
    out.data = json!({
        "input": c,
        "twist": n,
        "twisted": twisted,
        "euler_characteristic": chi,
        "affine_in_alpha": { "slope": slope.to_string(), "intercept": intercept.to_string() },
        "restricted_to_curve": restricted,
    });
    Ok(out)
}

fn zero_locus(config: &Config) -> Result<Outcome, CliError> {
    let c = chern_data(config);
    let z = zero_locus_invariants(c);
    let mut out = Outcome::default();
    out.checks.push(Check::new(
        "arithmetic genus integral",
        Verdict::from_bool(z.integral),
        format!("p_a = {}", z.arithmetic_genus),
    ));
    for (k, alpha, genus) in [(3, 14, 15), (2, 8, 5)] {
        let r = zero_locus_invariants(ChernData::new(k, alpha));
        out.checks.push(Check::expect_eq(
            format!("(k, alpha) = ({k}, {alpha})"),
            (r.degree, r.arithmetic_genus.to_string()),
            (alpha, genus.to_string()),
        ));
    }
    out.data = json!({ "input": c, "zero_locus": z });
    Ok(out)
}

fn kernel_sample(config: &Config) -> Result<Outcome, CliError> {
    let (m, msrc) = input::matrix(config)?;
    let p = input::primes(config, &[DEFAULT_PRIME])?[0];
    let field = input::prime_field(p)?;
    let count = config.count.unwrap_or(200);
    let mp = m.reduce(&field)?;
    let f = mp.pfaffian()?;
    if f.is_zero() {
        return Err(CliError::Usage(format!(
            "Pfaffian vanishes identically mod {p}"
        )));
    }
    let points = sample_points_on_quartic(&f, count, config.seed)?;
    let mut ranks: BTreeMap<usize, usize> = BTreeMap::new();
    let mut kernels: BTreeMap<usize, usize> = BTreeMap::new();
    let mut relations = 0;
    let mut all_hold = true;
    let mut hasher = Sha256::new();
    let mut examples = Vec::new();
    for pt in &points {
        let k = classify_kernel(&mp, pt)?;
        *ranks.entry(k.rank).or_default() += 1;
        *kernels.entry(k.kernel_dim).or_default() += 1;
        relations += k.relations_checked;
        all_hold &= k.relations_hold;
        hasher.update(format!("{pt:?}{:?}\n", k.plucker).as_bytes());
        if examples.len() < 3 {
            examples.push(json!({ "point": pt, "kernel": k }));
        }
    }
    let n = m.size();
    let mut out = Outcome::default();
    out.digest(format!("matrix:{}", msrc.label), &msrc.text);
    out.checks
        .push(Check::expect_eq("points sampled", points.len(), count));
    out.checks.push(Check::expect_eq(
        "ranks",
        ranks.clone(),
        BTreeMap::from([(n - 2, points.len())]),
    ));
    out.checks.push(Check::expect_eq(
        "kernel dimensions",
        kernels.clone(),
        BTreeMap::from([(2, points.len())]),
    ));
    out.checks.push(Check::new(
        "Grassmann relations",
        Verdict::from_bool(all_hold),
        format!("{relations} relations evaluated"),
    ));
    out.primes = vec![p];
    out.seeds = vec![config.seed];
    out.data = json!({
        "count": points.len(),
        "rank_histogram": ranks,
        "kernel_dim_histogram": kernels,
        "relations_checked": relations,
        "relations_hold": all_hold,
        "samples_digest": format!("sha256:{}", hex::encode(hasher.finalize())),
        "examples": examples,
    });
    Ok(out)
}

fn ci_quartic(config: &Config) -> Result<Outcome, CliError> {
    let primes = input::primes(config, &DEFAULT_PRIMES)?;
    let cache = input::cache(config);
    let mut out = Outcome::default();
    let quadrics = match config.ideal.as_deref() {
        Some(arg) => {
            let ideal = IdealSource::resolve(Some(arg), arg)?;
            let q = ideal.rational_generators()?;
            out.digest(
                format!("ideal:{}", ideal.label()),
                &canonical_generators(&q),
            );
            q
        }
        None => {
            let ctx = VarContext::indexed("x", 5);
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let q: Vec<_> = (0..3)
                .map(|_| random_integer_form(&ctx, 2, &mut rng))
                .collect();
            out.digest("ideal:random-quadrics", &canonical_generators(&q));
            q
        }
    };
    let report = ci_quartic_pipeline(&quadrics, config.seed, &primes, cache.as_ref())?;
    out.checks = report.checks();
    out.primes = primes;
    out.seeds = vec![config.seed];
    out.data = serde_json::to_value(&report)?;
    Ok(out)
}

fn audit() -> Result<Outcome, CliError> {
    let a = dimension_audit();
    let mut out = Outcome::default();
    for e in &a.entries {
        out.checks
            .push(Check::expect_eq(e.name, e.value, e.expected));
    }
    out.checks.push(Check::expect_eq(
        "welters array",
        a.welters_array,
        a.welters_expected,
    ));
    out.data = serde_json::to_value(&a)?;
    Ok(out)
}
