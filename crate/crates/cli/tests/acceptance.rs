//! Acceptance criteria: one PASS/FAIL line per criterion, each with its
//! runtime limit. Exact checks have zero tolerance.

use pfq::{run_certificate, CertificateReport, Config, Verdict};
use pfq_core::arith::{Field, PrimeField, Rationals};
use pfq_core::groebner::{smoothness_certificate, SmoothnessVerdict};
use pfq_core::hilbert::{hilbert_function, random_forms};
use pfq_core::linalg::{coefficient_matrix, ExactMatrix};
use pfq_core::pfaffian::{f0, jacobian_span_rank_mod, m0, pfaffian_of_matrix};
use pfq_core::poly::{monomials_of_degree, parse_poly, Monomial, Polynomial, VarContext};
use pfq_core::sheafcoh::{bott_h, complex_cohomology, complex_euler, TwistedFreeComplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

const PRIMES: [u64; 2] = [31991, 104729];

struct Ledger {
    lines: Vec<(String, bool)>,
}

impl Ledger {
    fn record(
        &mut self,
        id: &str,
        what: &str,
        ok: bool,
        elapsed: Duration,
        limit: Duration,
        detail: String,
    ) {
        let in_time = elapsed <= limit;
        let pass = ok && in_time;
        let line = format!(
            "criterion {id:>2}: {} {what} ({:.3}s, limit {}s) {detail}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        println!("{line}");
        self.lines.push((line, pass));
    }
}

fn config() -> Config {
    Config {
        no_cache: true,
        ..Config::default()
    }
}

fn run(name: &str, config: &Config) -> CertificateReport {
    run_certificate(name, config).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn failing_checks(r: &CertificateReport) -> String {
    let bad: Vec<String> = r
        .checks()
        .into_iter()
        .filter(|c| c.verdict != Verdict::Pass)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    if bad.is_empty() {
        String::new()
    } else {
        format!("[{}]", bad.join("; "))
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn c1_pfaffian_identity(l: &mut Ledger) {
    let (r, t) = timed(|| run("pfaffian-identity", &config()));
    let d = &r.result["data"];
    let ok = r.pass
        && matches!(d["sign"].as_i64(), Some(1 | -1))
        && d["terms"] == 20
        && d["degree"] == 4;
    l.record(
        "1",
        "Pf(M0) = ±F0, 20 terms, degree 4",
        ok,
        t,
        Duration::from_secs(1),
        format!("sign {}", d["sign"]),
    );
}

fn c2_differential_rank(l: &mut Ledger) {
    let m = m0();
    let (ranks, t) = timed(|| PRIMES.map(|p| jacobian_span_rank_mod(&m, p).unwrap()));
    l.record(
        "2",
        "jacobian span rank 70 at both primes",
        ranks == [70, 70],
        t,
        Duration::from_secs(5),
        format!("{ranks:?}"),
    );
}

fn c3_smoothness(l: &mut Ledger) {
    let ctx = VarContext::indexed("x", 5);
    let fermat = parse_poly("x1^4 + x2^4 + x3^4 + x4^4 + x5^4", &ctx).unwrap();
    let x1 = parse_poly("x1^4", &ctx).unwrap();
    let f = f0();
    let mut ok = true;
    let mut slowest = Duration::ZERO;
    for p in PRIMES {
        ok &=
            smoothness_certificate(&fermat, p, None).unwrap().verdict == SmoothnessVerdict::Smooth;
        let (cert, t) = timed(|| smoothness_certificate(&f, p, None).unwrap());
        ok &= cert.verdict == SmoothnessVerdict::Smooth;
        slowest = slowest.max(t);
    }
    let singular = smoothness_certificate(&x1, PRIMES[0], None)
        .unwrap()
        .verdict;
    ok &= matches!(singular, SmoothnessVerdict::Singular { .. });
    l.record(
        "3",
        "Fermat and F0 SMOOTH at both primes, x1^4 SINGULAR (slowest F0 prime)",
        ok,
        slowest,
        Duration::from_secs(60),
        String::new(),
    );
}

fn c4_pfaffian_curve(l: &mut Ledger) -> Vec<u64> {
    let cfg = Config {
        count: Some(5),
        seed: 1,
        ..config()
    };
    let (r, t) = timed(|| run("curve-invariants", &cfg));
    let per_seed = t / 5;
    let hf: Vec<u64> =
        serde_json::from_value(r.result["data"]["runs"][0]["hilbert"]["hf_table"].clone()).unwrap();
    l.record(
        "4",
        "5 seeds: HF (1,5,15,28,42,56), HP 14t-14, (1,14,15) (time per seed)",
        r.pass && r.seeds.len() == 5,
        per_seed,
        Duration::from_secs(60),
        failing_checks(&r),
    );
    hf
}

fn c5_locus_degrees(l: &mut Ledger) {
    let z = Config {
        ideal: Some("pfaffian7-generic".into()),
        count: Some(5),
        ..config()
    };
    let (r, t) = timed(|| run("slice-degree", &z));
    l.record(
        "5a",
        "deg Z = 14 over 5 seeds",
        r.pass,
        t,
        Duration::from_secs(120),
        failing_checks(&r),
    );
    let g = Config {
        ideal: Some("grass27".into()),
        count: Some(5),
        ..config()
    };
    let (r, t) = timed(|| run("slice-degree", &g));
    l.record(
        "5b",
        "deg G' = 42 over 5 seeds",
        r.pass,
        t,
        Duration::from_secs(600),
        failing_checks(&r),
    );
}

fn c6_resolution_cohomology(l: &mut Ledger) {
    let (ok, t) = timed(|| {
        let rodland = TwistedFreeComplex::builtin("rodland").unwrap();
        let col = complex_cohomology(&rodland, 0);
        let forced = col.entries.iter().all(|e| e.is_forced());
        let values: Vec<Option<i128>> = (0..5).map(|i| col.h(i)).collect();
        let eacm = TwistedFreeComplex::builtin("eacm").unwrap();
        let acm = (-20..=20).all(|t| {
            let c = complex_cohomology(&eacm, t);
            c.h(1) == Some(0) && c.h(2) == Some(0)
        });
        forced
            && values == [Some(0), Some(0), Some(21), Some(0), Some(0)]
            && complex_cohomology(&eacm, 0).h(0) == Some(8)
            && acm
    });
    l.record(
        "6",
        "Rodland h^2 = 21 forced; EACM h^0 = 8, h^1 = h^2 = 0 on [-20,20]",
        ok,
        t,
        Duration::from_secs(1),
        String::new(),
    );
}

fn c7_chi_bookkeeping(l: &mut Ledger) {
    let (r, t) = timed(|| run("chern", &config()));
    let ok = r.pass && r.result["data"]["euler_characteristic"]["value"] == "8";
    l.record(
        "7",
        "chi(3,14) = 8, k=0 and E(1) specialisations, 8 - 14 = -6",
        ok,
        t,
        Duration::from_secs(1),
        failing_checks(&r),
    );
}

fn c8_buchsbaum_eisenbud(l: &mut Ledger, hf: &[u64]) {
    let (ok, t) = timed(|| {
        let cx = TwistedFreeComplex::builtin("be-curve").unwrap();
        let euler = (3..=20).all(|t| complex_euler(&cx, t) == 14 * t as i128 - 14);
        let h1 = complex_cohomology(&cx, 2).h(1) == Some(1);
        let overlap =
            hf.iter()
                .enumerate()
                .all(|(t, &v)| match complex_cohomology(&cx, t as i64).h(0) {
                    Some(h0) => h0 == v as i128,
                    None => true,
                });
        euler && h1 && overlap && !hf.is_empty()
    });
    l.record(
        "8",
        "BE complex: chi = 14t-14 on [3,20], h^1(O_C(2)) = 1, h^0 = HF on overlap",
        ok,
        t,
        Duration::from_secs(1),
        format!("{} degrees compared", hf.len()),
    );
}

fn c9_kernel_sampling(l: &mut Ledger) {
    let cfg = Config {
        count: Some(200),
        seed: 2024,
        ..config()
    };
    let (r, t) = timed(|| run("kernel-sample", &cfg));
    l.record(
        "9",
        "200 points: rank 6, kernel 2, Grassmann relations",
        r.pass,
        t,
        Duration::from_secs(30),
        failing_checks(&r),
    );
}

fn c10_audit(l: &mut Ledger) {
    let (r, t) = timed(|| run("audit", &config()));
    let d = &r.result["data"];
    let ok = r.pass && d["welters_array"] == serde_json::json!([[35, 30], [28, 14]]);
    l.record(
        "10",
        "dimension audit and Welters array",
        ok,
        t,
        Duration::from_secs(1),
        failing_checks(&r),
    );
}

fn random_skew(rng: &mut ChaCha8Rng, f: PrimeField, n: usize) -> ExactMatrix<PrimeField> {
    let mut m = ExactMatrix::zero(f, n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(0..f.modulus());
            m.set(i, j, v);
            m.set(j, i, f.neg(&v));
        }
    }
    m
}

fn c11_property_suites(l: &mut Ledger) {
    let f = PrimeField::new(PRIMES[0]).unwrap();
    let (results, t) = timed(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pf_det = (0..500).all(|i| {
            let n = 2 * (1 + i % 4);
            let m = random_skew(&mut rng, f, n);
            let pf = pfaffian_of_matrix(&m).unwrap();
            f.mul(&pf, &pf) == m.determinant().unwrap()
        });

        let macaulay = (0..50).all(|_| {
            let n = rng.gen_range(2..=4);
            let ctx = VarContext::indexed("x", n);
            let gens: Vec<Polynomial<PrimeField>> = (0..rng.gen_range(1..=3))
                .flat_map(|_| {
                    let d = rng.gen_range(1..=3);
                    random_forms(f, ctx.clone(), d, 1, &mut rng)
                })
                .collect();
            (0..=6u32).all(|t| {
                let mut products = Vec::new();
                for g in &gens {
                    let d = g.degree().unwrap();
                    if d <= t {
                        products.extend(
                            monomials_of_degree(n, t - d)
                                .iter()
                                .map(|m| g.mul_monomial(m)),
                        );
                    }
                }
                let oracle = monomials_of_degree(n, t).len()
                    - coefficient_matrix(&f, n, t, &products).rank();
                hilbert_function(&gens, t as u64).unwrap() == oracle as u64
            })
        });

        let f0 = f0();
        let euler_sum = f0.gradient().iter().enumerate().fold(
            Polynomial::zero(Rationals, f0.context().clone()),
            |acc, (v, g)| &acc + &g.mul_monomial(&Monomial::var(v)),
        );
        let euler = euler_sum == f0.scale(&Rationals.from_i64(4));

        let serre = (1..=6usize).all(|n| {
            (-12..=12)
                .all(|d| (0..=n).all(|i| bott_h(n, d, i) == bott_h(n, -d - n as i64 - 1, n - i)))
        });
        [pf_det, macaulay, euler, serre]
    });
    l.record(
        "11",
        "Pf^2 = det x500, Macaulay HF x50 (t <= 6), Euler on F0, Serre duality",
        results.iter().all(|&b| b),
        t,
        Duration::from_secs(60),
        format!("{results:?}"),
    );
}

fn c12_instanton_construction(l: &mut Ledger) {
    let cfg = Config {
        seed: 12,
        ..config()
    };
    let (r, t) = timed(|| run("ci-quartic", &cfg));
    let d = &r.result["data"];
    let ok = r.pass
        && d["veronese_rank"] == 6
        && d["decomposition"]["identity_verified"] == true
        && d["curve_invariants"]
            == serde_json::json!({"dim": 1, "degree": 8, "arithmetic_genus": 5});
    l.record(
        "12",
        "CI quartic: SMOOTH, exact decomposition, (1,8,5), Veronese rank 6",
        ok,
        t,
        Duration::from_secs(120),
        failing_checks(&r),
    );
}

fn criteria() -> bool {
    let mut l = Ledger { lines: Vec::new() };
    c1_pfaffian_identity(&mut l);
    c2_differential_rank(&mut l);
    c3_smoothness(&mut l);
    let hf = c4_pfaffian_curve(&mut l);
    c5_locus_degrees(&mut l);
    c6_resolution_cohomology(&mut l);
    c7_chi_bookkeeping(&mut l);
    c8_buchsbaum_eisenbud(&mut l, &hf);
    c9_kernel_sampling(&mut l);
    c10_audit(&mut l);
    c11_property_suites(&mut l);
    c12_instanton_construction(&mut l);
    let failed = l.lines.iter().filter(|(_, ok)| !ok).count();
    println!(
        "acceptance: {} of {} criteria passed",
        l.lines.len() - failed,
        l.lines.len()
    );
    failed == 0
}

/// Squared Pfaffian-curve ideal (28 sextics) against the resolution of
/// `I_C^2(3)`: `dim (I^2)_t = h^0(I_C^2(t))` wherever the chase forces it.
/// Non-gating; runs with `--ignored` or `--include-ignored`.
fn stretch_squared_curve_ideal() -> bool {
    let f = PrimeField::new(PRIMES[0]).unwrap();
    let start = Instant::now();
    let cubics = pfq_core::hilbert::builtin_ideal("pfaffian7", f, 5).unwrap();
    let mut squares = Vec::new();
    for i in 0..cubics.len() {
        for j in i..cubics.len() {
            squares.push(&cubics[i] * &cubics[j]);
        }
    }
    assert_eq!(squares.len(), 28);
    let (series, _) = pfq_core::hilbert::hilbert_series(&squares, None).unwrap();
    let rodland = TwistedFreeComplex::builtin("rodland").unwrap();
    let mut compared = 0;
    let mut ok = true;
    for t in 0..=10u64 {
        let ideal_dim = monomials_of_degree(5, t as u32).len() as i128 - series.value(t);
        if let Some(h0) = complex_cohomology(&rodland, t as i64 - 3).h(0) {
            compared += 1;
            ok &= ideal_dim == h0;
            println!("t = {t:>2}: dim (I^2)_t = {ideal_dim}, h^0(I^2(t)) = {h0}");
        }
    }
    let t = start.elapsed();
    println!(
        "stretch: {} I^2_C Hilbert function matches the resolution ({compared} degrees, {:.1}s, limit 1800s)",
        if ok { "PASS" } else { "FAIL" },
        t.as_secs_f64()
    );
    ok && compared > 0 && t < Duration::from_secs(1800)
}

fn main() -> std::process::ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let has = |flag: &str| args.iter().any(|a| a == flag);
    let (gating, stretch) = match (has("--ignored"), has("--include-ignored")) {
        (_, true) => (true, true),
        (true, false) => (false, true),
        _ => (true, false),
    };
    let mut ok = true;
    if gating {
        ok &= criteria();
    }
    if stretch {
        ok &= stretch_squared_curve_ideal();
    }
    if ok {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}
