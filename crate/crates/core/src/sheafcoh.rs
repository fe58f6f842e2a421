//! Cohomology bookkeeping on projective space: line bundles, chases through
//! twisted free resolutions, and Riemann–Roch arithmetic for rank-2
//! bundles on a quartic threefold.

use num_traits::One;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::arith::{binomial_ext, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error("complex json: {0}")]
    Json(String),
    #[error("invalid complex: {0}")]
    Invalid(String),
}

/// `h^i(P^n, O(d))`.
pub fn bott_h(n: usize, d: i64, i: usize) -> i128 {
    let n64 = n as i64;
    if i == 0 && d >= 0 {
        binomial_ext(n64 + d, n as u32)
    } else if i == n && d < -n64 {
        binomial_ext(-d - 1, n as u32)
    } else {
        0
    }
}

/// `chi(P^n, O(d)) = C(n + d, n)` as a polynomial identity.
pub fn line_bundle_euler(n: usize, d: i64) -> i128 {
    binomial_ext(n as i64 + d, n as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub twist: i64,
    pub rank: u64,
}

/// `0 -> F_m -> ... -> F_1 -> S -> 0`, exact, with each `F_j` a sum of
/// line bundles. `terms[0]` is `F_m` and `terms[m-1]` is `F_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedFreeComplex {
    pub ambient_dim: usize,
    pub terms: Vec<Vec<Summand>>,
}

pub const BUILTIN_COMPLEXES: [&str; 3] = ["eacm", "rodland", "be-curve"];

fn sum(parts: &[(i64, u64)]) -> Vec<Summand> {
    parts
        .iter()
        .map(|&(twist, rank)| Summand { twist, rank })
        .collect()
}

impl TwistedFreeComplex {
    pub fn new(ambient_dim: usize, terms: Vec<Vec<Summand>>) -> Result<Self, SheafError> {
        if ambient_dim == 0 {
            return Err(SheafError::Invalid(
                "ambient dimension must be positive".into(),
            ));
        }
        if terms.iter().flatten().any(|s| s.rank == 0) {
            return Err(SheafError::Invalid("ranks must be positive".into()));
        }
        Ok(Self { ambient_dim, terms })
    }

    pub fn from_json(text: &str) -> Result<Self, SheafError> {
        let raw: TwistedFreeComplex =
            serde_json::from_str(text).map_err(|e| SheafError::Json(e.to_string()))?;
        Self::new(raw.ambient_dim, raw.terms)
    }

    /// - `eacm`: `0 -> O(-1)^8 -> O^8 -> E -> 0` on P^4;
    /// - `rodland`: `0 -> 21 O(-5) -> 48 O(-4) -> 28 O(-3) -> I_C^2(3) -> 0`;
    /// - `be-curve`: `0 -> O(-7) -> O(-4)^7 -> O(-3)^7 -> O -> O_C -> 0`.
    pub fn builtin(name: &str) -> Option<Self> {
        let terms = match name {
            "eacm" => vec![sum(&[(-1, 8)]), sum(&[(0, 8)])],
            "rodland" => vec![sum(&[(-5, 21)]), sum(&[(-4, 48)]), sum(&[(-3, 28)])],
            "be-curve" => vec![
                sum(&[(-7, 1)]),
                sum(&[(-4, 7)]),
                sum(&[(-3, 7)]),
                sum(&[(0, 1)]),
            ],
            _ => return None,
        };
        Some(Self::new(4, terms).expect("valid builtin"))
    }

    pub fn length(&self) -> usize {
        self.terms.len()
    }

    /// `F_j`, `1 <= j <= m`.
    fn term(&self, j: usize) -> &[Summand] {
        &self.terms[self.terms.len() - j]
    }

    fn term_h(&self, j: usize, t: i64) -> Vec<i128> {
        (0..=self.ambient_dim)
            .map(|i| {
                self.term(j)
                    .iter()
                    .map(|s| s.rank as i128 * bott_h(self.ambient_dim, s.twist + t, i))
                    .sum()
            })
            .collect()
    }

    fn term_euler(&self, j: usize, t: i64) -> i128 {
        self.term(j)
            .iter()
            .map(|s| s.rank as i128 * line_bundle_euler(self.ambient_dim, s.twist + t))
            .sum()
    }
}

/// `chi(S(t)) = sum_j (-1)^(j-1) chi(F_j(t))`.
pub fn complex_euler(cx: &TwistedFreeComplex, t: i64) -> i128 {
    (1..=cx.length())
        .map(|j| {
            let e = cx.term_euler(j, t);
            if j % 2 == 1 {
                e
            } else {
                -e
            }
        })
        .sum()
}

/// Value known to lie in `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HEntry {
    pub lo: i128,
    pub hi: i128,
}

impl HEntry {
    pub fn exact(v: i128) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn is_forced(&self) -> bool {
        self.lo == self.hi
    }

    pub fn value(&self) -> Option<i128> {
        self.is_forced().then_some(self.lo)
    }
}

impl Serialize for HEntry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.value() {
            Some(v) => s.serialize_i128(v),
            None => [self.lo, self.hi].serialize(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyColumn {
    pub twist: i64,
    /// `h^0 .. h^n` of `S(t)`.
    pub entries: Vec<HEntry>,
    pub euler: i128,
    pub forced: bool,
}

impl CohomologyColumn {
    pub fn h(&self, i: usize) -> Option<i128> {
        self.entries.get(i).and_then(HEntry::value)
    }

    pub fn alternating_sum(&self) -> Option<i128> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, e)| e.value().map(|v| if i % 2 == 0 { v } else { -v }))
            .sum()
    }
}

/// Tightens each interval using `sum (-1)^i c_i = chi`.
fn refine_with_euler(c: &mut [HEntry], chi: i128) {
    loop {
        let mut changed = false;
        for i in 0..c.len() {
            // (-1)^i c_i = chi - sum_{k != i} (-1)^k c_k
            let (mut lo, mut hi) = (chi, chi);
            for (k, e) in c.iter().enumerate() {
                if k == i {
                    continue;
                }
                if k % 2 == 0 {
                    lo -= e.hi;
                    hi -= e.lo;
                } else {
                    lo += e.lo;
                    hi += e.hi;
                }
            }
            let (lo, hi) = if i % 2 == 0 { (lo, hi) } else { (-hi, -lo) };
            let e = &mut c[i];
            if lo > e.lo {
                e.lo = lo;
                changed = true;
            }
            if hi < e.hi {
                e.hi = hi;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

/// Cohomology of `S(t)` by splitting the resolution into short exact
/// sequences `0 -> K_j -> F_j -> K_{j-1} -> 0` (`K_0 = S`, `K_{m-1} = F_m`)
/// and chasing long exact sequences from the deepest syzygy upwards. An
/// entry is exact when the neighbouring terms force it; otherwise it is an
/// interval. The Euler characteristic is used to tighten every step.
pub fn complex_cohomology(cx: &TwistedFreeComplex, t: i64) -> CohomologyColumn {
    let n = cx.ambient_dim;
    let m = cx.length();
    let mut k: Vec<HEntry> = if m == 0 {
        vec![HEntry::exact(0); n + 1]
    } else {
        cx.term_h(m, t).into_iter().map(HEntry::exact).collect()
    };
    let mut k_chi = if m == 0 { 0 } else { cx.term_euler(m, t) };
    for j in (1..m).rev() {
        let b = cx.term_h(j, t);
        let a = &k;
        let zero = HEntry::exact(0);
        let mut c: Vec<HEntry> = (0..=n)
            .map(|i| {
                let (ai1, bi1) = if i < n {
                    (a[i + 1], b[i + 1])
                } else {
                    (zero, 0)
                };
                // A_i -> B_i -> C_i -> A_{i+1} -> B_{i+1}
                let lo = (b[i] - a[i].hi).max(0) + (ai1.lo - bi1).max(0);
                let hi = b[i] + ai1.hi;
                HEntry { lo, hi }
            })
            .collect();
        let chi = cx.term_euler(j, t) - k_chi;
        refine_with_euler(&mut c, chi);
        k = c;
        k_chi = chi;
    }
    let forced = k.iter().all(HEntry::is_forced);
    CohomologyColumn {
        twist: t,
        euler: complex_euler(cx, t),
        entries: k,
        forced,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub ambient_dim: usize,
    pub columns: Vec<CohomologyColumn>,
}

pub fn cohomology_table(
    cx: &TwistedFreeComplex,
    twists: impl IntoIterator<Item = i64>,
) -> CohomologyTable {
    CohomologyTable {
        ambient_dim: cx.ambient_dim,
        columns: twists
            .into_iter()
            .map(|t| complex_cohomology(cx, t))
            .collect(),
    }
}

/// Chern classes of a rank-2 bundle on a smooth quartic threefold:
/// `c_1 = k [H]`, `c_2 = alpha [l]`, with `[H]^2 = 4 [l]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernData {
    pub k: i64,
    pub alpha: i64,
}

impl ChernData {
    pub fn new(k: i64, alpha: i64) -> Self {
        Self { k, alpha }
    }
}

/// Chern data of `E(n)`.
pub fn chern_twist(c: ChernData, n: i64) -> ChernData {
    ChernData {
        k: c.k + 2 * n,
        alpha: c.alpha + 4 * c.k * n + 4 * n * n,
    }
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerCharacteristic {
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    /// False when the Riemann–Roch value is not an integer, so no bundle
    /// with these classes exists.
    pub integral: bool,
}

/// `chi(E) = 2/3 k^3 - 1/2 k alpha + k^2 - 1/2 alpha + 7/3 k + 2`.
pub fn euler_char_bundle(c: ChernData) -> EulerCharacteristic {
    let (slope, intercept) = euler_char_affine_in_alpha(c.k);
    let value = slope * Rational::from_integer(c.alpha.into()) + intercept;
    EulerCharacteristic {
        integral: value.is_integer(),
        value,
    }
}

/// `chi(E) = slope * alpha + intercept` for fixed `k`.
pub fn euler_char_affine_in_alpha(k: i64) -> (Rational, Rational) {
    let kr = Rational::from_integer(k.into());
    let slope = -(rat(1, 2) * &kr) - rat(1, 2);
    let intercept = rat(2, 3) * &kr * &kr * &kr
        + &kr * &kr
        + rat(7, 3) * &kr
        + Rational::from_integer(2.into());
    (slope, intercept)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroLocus {
    pub degree: i64,
    #[serde(serialize_with = "ser_rational")]
    pub arithmetic_genus: Rational,
    pub integral: bool,
}

/// Curve `C` cut by a section of `E`: `deg C = alpha` and, by adjunction
/// with `omega_X = O_X(-1)`, `2 p_a - 2 = (k - 1) alpha`.
pub fn zero_locus_invariants(c: ChernData) -> ZeroLocus {
    let pa = Rational::from_integer(((c.k - 1) * c.alpha).into())
        / Rational::from_integer(2.into())
        + Rational::one();
    ZeroLocus {
        degree: c.alpha,
        integral: pa.is_integer(),
        arithmetic_genus: pa,
    }
}

/// Riemann–Roch on a curve: `deg + rank (1 - g)`.
pub fn curve_bundle_euler(degree: i64, rank: i64, genus: i64) -> i64 {
    degree + rank * (1 - genus)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub name: &'static str,
    pub value: i64,
    pub expected: i64,
    pub derivation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionAudit {
    pub entries: Vec<AuditEntry>,
    /// `[[h0(O_X(3)), h^{1,2}(X)], [h0(O_C(3)), h0(N_{C/X})]]`.
    pub welters_array: [[i64; 2]; 2],
    pub welters_expected: [[i64; 2]; 2],
}

impl DimensionAudit {
    pub fn all_match(&self) -> bool {
        self.entries.iter().all(|e| e.value == e.expected)
            && self.welters_array == self.welters_expected
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| e.value)
    }
}

fn b(n: i64, k: u32) -> i64 {
    binomial_ext(n, k) as i64
}

/// Dimension counts recomputed from their constituents.
pub fn dimension_audit() -> DimensionAudit {
    let mut entries = Vec::new();
    let mut push = |name, value: i64, expected, derivation: String| {
        entries.push(AuditEntry {
            name,
            value,
            expected,
            derivation,
        })
    };

    // 8x8 skew linear matrices in 5 variables, modulo congruence, onto quartics
    let skew8 = 5 * b(8, 2) - 1;
    let pgl8 = 8 * 8 - 1;
    let quartics = b(8, 4) - 1;
    push(
        "pfaffian_reps",
        skew8 - pgl8 - quartics,
        7,
        format!("(5*C(8,2) - 1) - (8^2 - 1) - (C(8,4) - 1) = {skew8} - {pgl8} - {quartics}"),
    );

    let skew7 = 5 * b(7, 2) - 1;
    let pgl7 = 7 * 7 - 1;
    push(
        "curve_hilb_P4",
        skew7 - pgl7,
        56,
        format!("(5*C(7,2) - 1) - (7^2 - 1) = {skew7} - {pgl7}"),
    );

    let pgl5 = 5 * 5 - 1;
    push(
        "theta_moduli",
        skew7 - pgl5 - pgl7,
        32,
        format!("{skew7} - (5^2 - 1) - (7^2 - 1) = {skew7} - {pgl5} - {pgl7}"),
    );

    // E with (k, alpha) = (3, 14); C its zero locus of degree 14, genus 15
    let e = ChernData::new(3, 14);
    let chi_e = euler_char_bundle(e).value.to_integer();
    let chi_e = i64::try_from(chi_e).expect("small");
    let curve = zero_locus_invariants(e);
    let (deg_c, g_c) = (
        curve.degree,
        i64::try_from(curve.arithmetic_genus.to_integer()).expect("small"),
    );
    let chi_e_on_c = curve_bundle_euler(e.k * deg_c, 2, g_c);
    push(
        "chi_E_tensor_IC",
        chi_e - chi_e_on_c,
        -6,
        format!(
            "chi(E) - chi(E|_C) = {chi_e} - ({} + 2*(1 - {g_c}))",
            e.k * deg_c
        ),
    );

    // N_{C/X} = E|_C with h^1 = 0
    push(
        "h0_normal_CX",
        chi_e_on_c,
        14,
        format!("chi(E|_C) = 3*{deg_c} + 2*(1 - {g_c})"),
    );

    let rod = complex_cohomology(&TwistedFreeComplex::builtin("rodland").expect("builtin"), 0);
    let h0_minus1 = rod.h(2).map_or(-1, |v| v as i64);
    push(
        "h0_normal_minus1",
        h0_minus1,
        21,
        "h^2(I_C^2(3)) from the 21 O(-5) -> 48 O(-4) -> 28 O(-3) chase".into(),
    );

    // N_{C/P4}: rank 3, degree 5 deg C + 2 g - 2
    let deg_n = 5 * deg_c + (2 * g_c - 2);
    let chi_n_minus1 = curve_bundle_euler(deg_n - 3 * deg_c, 3, g_c);
    push(
        "chi_normal_minus1",
        chi_n_minus1,
        14,
        format!("({deg_n} - 3*{deg_c}) + 3*(1 - {g_c})"),
    );
    push(
        "h1_normal_minus1",
        h0_minus1 - chi_n_minus1,
        7,
        format!("{h0_minus1} - {chi_n_minus1}"),
    );

    // h^{1,2} of a quartic threefold: degree-3 part of the Jacobian ring
    let h12 = b(3 + 4, 4) - 5;
    push("intermediate_jacobian_dim", h12, 30, "C(7,4) - 5".into());
    push(
        "abel_jacobi_image_dim",
        chi_e_on_c - (h0_minus1 - chi_n_minus1),
        7,
        format!("{chi_e_on_c} - {}", h0_minus1 - chi_n_minus1),
    );

    let h0_ox3 = b(3 + 4, 4);
    let h0_oc3 = 3 * deg_c + 1 - g_c;
    DimensionAudit {
        entries,
        welters_array: [[h0_ox3, h12], [h0_oc3, chi_e_on_c]],
        welters_expected: [[35, 30], [28, 14]],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::monomial_count;
    use proptest::prelude::*;

    #[test]
    fn bott_examples() {
        assert_eq!(bott_h(4, 0, 0), 1);
        assert_eq!(bott_h(4, -5, 4), 1);
        assert_eq!(bott_h(4, 3, 0), monomial_count(5, 3) as i128);
        assert_eq!(bott_h(4, 3, 0), 35);
        assert_eq!(bott_h(4, -3, 4), 0);
        assert_eq!(bott_h(4, -3, 2), 0);
    }

    #[test]
    fn serre_duality_table() {
        for n in 1..=6usize {
            for d in -12..=12i64 {
                for i in 0..=n {
                    assert_eq!(
                        bott_h(n, d, i),
                        bott_h(n, -d - n as i64 - 1, n - i),
                        "{n} {d} {i}"
                    );
                }
            }
        }
    }

    #[test]
    fn euler_examples() {
        let one = TwistedFreeComplex::new(4, vec![sum(&[(0, 1)])]).unwrap();
        assert_eq!(complex_euler(&one, 0), 1);
        let rod = TwistedFreeComplex::builtin("rodland").unwrap();
        assert_eq!(complex_euler(&rod, 0), 21);
        let be = TwistedFreeComplex::builtin("be-curve").unwrap();
        // direct binomial oracle C(t+4,4) - 7C(t+1,4) + 7C(t,4) - C(t-3,4)
        let c4 = |n: i64| -> i128 {
            if n < 4 {
                if n >= 0 {
                    0
                } else {
                    let m = -n + 3;
                    (m * (m - 1) * (m - 2) * (m - 3) / 24) as i128
                }
            } else {
                (n * (n - 1) * (n - 2) * (n - 3) / 24) as i128
            }
        };
        for t in 3..=20i64 {
            let oracle = c4(t + 4) - 7 * c4(t + 1) + 7 * c4(t) - c4(t - 3);
            assert_eq!(oracle, (14 * t - 14) as i128);
            assert_eq!(complex_euler(&be, t), oracle);
        }
        assert_eq!(complex_euler(&be, 3), 28);
        assert_eq!(complex_euler(&be, 4), 42);
        assert_eq!(complex_euler(&be, 7), 84);
    }

    #[test]
    fn rodland_chase() {
        let col = complex_cohomology(&TwistedFreeComplex::builtin("rodland").unwrap(), 0);
        assert!(col.forced);
        let h: Vec<i128> = (0..=4).map(|i| col.h(i).unwrap()).collect();
        assert_eq!(h, [0, 0, 21, 0, 0]);
    }

    #[test]
    fn eacm_chase() {
        let cx = TwistedFreeComplex::builtin("eacm").unwrap();
        let col = complex_cohomology(&cx, 0);
        assert_eq!(col.h(0), Some(8));
        for t in -20..=20 {
            let col = complex_cohomology(&cx, t);
            assert_eq!(col.h(1), Some(0), "t = {t}");
            assert_eq!(col.h(2), Some(0), "t = {t}");
        }
    }

    #[test]
    fn be_curve_chase() {
        let cx = TwistedFreeComplex::builtin("be-curve").unwrap();
        let col = complex_cohomology(&cx, 2);
        assert_eq!(col.h(1), Some(1));
        assert_eq!(col.h(0), Some(15));
        for t in 3..=20 {
            let col = complex_cohomology(&cx, t);
            assert_eq!(col.h(0), Some((14 * t - 14) as i128));
            assert_eq!(col.h(1), Some(0));
        }
    }

    #[test]
    fn forced_columns_match_euler() {
        for name in BUILTIN_COMPLEXES {
            let cx = TwistedFreeComplex::builtin(name).unwrap();
            for t in -20..=20 {
                let col = complex_cohomology(&cx, t);
                for e in &col.entries {
                    assert!(0 <= e.lo && e.lo <= e.hi);
                }
                if col.forced {
                    assert_eq!(col.alternating_sum(), Some(col.euler), "{name} t = {t}");
                }
            }
        }
    }

    #[test]
    fn chern_examples() {
        assert_eq!(chern_twist(ChernData::new(0, 4), 0), ChernData::new(0, 4));
        assert_eq!(chern_twist(ChernData::new(-1, 6), 2), ChernData::new(3, 14));
        for a in 0..20 {
            assert_eq!(
                chern_twist(ChernData::new(0, a), 1),
                ChernData::new(2, a + 4)
            );
        }
    }

    #[test]
    fn euler_char_examples() {
        let e = euler_char_bundle(ChernData::new(3, 14));
        assert_eq!(e.value, Rational::from_integer(8.into()));
        assert!(e.integral);
        for a in 0..=20 {
            let e = euler_char_bundle(ChernData::new(0, a));
            assert_eq!(e.value, rat(4 - a, 2));
            assert_eq!(e.integral, a % 2 == 0);
            let e1 = euler_char_bundle(chern_twist(ChernData::new(0, a), 1));
            assert_eq!(e1.value, rat(20 - 3 * a, 2));
        }
        assert_eq!(euler_char_affine_in_alpha(0), (rat(-1, 2), rat(2, 1)));
    }

    #[test]
    fn zero_locus_examples() {
        let z = |k, a| {
            let r = zero_locus_invariants(ChernData::new(k, a));
            (
                r.degree,
                r.arithmetic_genus.to_integer().try_into().unwrap(),
            )
        };
        assert_eq!(z(2, 6), (6i64, 4i64));
        assert_eq!(z(3, 14), (14, 15));
        // two disjoint plane quartics: p_a = 3 + 3 - 1
        assert_eq!(z(2, 8), (8, 3 + 3 - 1));
        assert!(!zero_locus_invariants(ChernData::new(2, 5)).integral);
    }

    #[test]
    fn audit_values() {
        let a = dimension_audit();
        assert!(a.all_match(), "{a:?}");
        assert_eq!(a.get("pfaffian_reps"), Some(7));
        assert_eq!(a.get("curve_hilb_P4"), Some(56));
        assert_eq!(a.get("h1_normal_minus1"), Some(7));
        assert_eq!(a.welters_array, [[35, 30], [28, 14]]);
    }

    #[test]
    fn json_complex() {
        let text = r#"{"ambient_dim": 4, "terms": [[{"twist": -5, "rank": 21}], [{"twist": -4, "rank": 48}], [{"twist": -3, "rank": 28}]]}"#;
        assert_eq!(
            TwistedFreeComplex::from_json(text).unwrap(),
            TwistedFreeComplex::builtin("rodland").unwrap()
        );
        assert!(matches!(
            TwistedFreeComplex::from_json("{}"),
            Err(SheafError::Json(_))
        ));
        let zero_rank = r#"{"ambient_dim": 4, "terms": [[{"twist": 0, "rank": 0}]]}"#;
        assert!(matches!(
            TwistedFreeComplex::from_json(zero_rank),
            Err(SheafError::Invalid(_))
        ));
        let col = serde_json::to_value(complex_cohomology(
            &TwistedFreeComplex::builtin("eacm").unwrap(),
            -6,
        ))
        .unwrap();
        assert!(col["entries"].is_array());
    }

    proptest! {
        #[test]
        fn twist_functoriality(k in -5i64..6, alpha in 0i64..21, n in -4i64..5, m in -4i64..5) {
            let c = ChernData::new(k, alpha);
            prop_assert_eq!(chern_twist(chern_twist(c, n), m), chern_twist(c, n + m));
        }

        #[test]
        fn single_term_complex_is_bott(n in 1usize..6, d in -12i64..12, t in -6i64..6) {
            let cx = TwistedFreeComplex::new(n, vec![sum(&[(d, 3)])]).unwrap();
            let col = complex_cohomology(&cx, t);
            prop_assert!(col.forced);
            for i in 0..=n {
                prop_assert_eq!(col.h(i), Some(3 * bott_h(n, d + t, i)));
            }
        }

        #[test]
        fn koszul_of_two_linear_forms(t in -10i64..10) {
            // 0 -> O(-2) -> O(-1)^2 -> O -> O_L -> 0 for a codim-2 linear space L in P^4
            let cx = TwistedFreeComplex::new(4, vec![sum(&[(-2, 1)]), sum(&[(-1, 2)]), sum(&[(0, 1)])]).unwrap();
            let col = complex_cohomology(&cx, t);
            // O_L is O_{P^2}; the true values always lie in the intervals
            let truth = [bott_h(2, t, 0), bott_h(2, t, 1), bott_h(2, t, 2), 0, 0];
            for (e, v) in col.entries.iter().zip(truth) {
                prop_assert!(e.lo <= v && v <= e.hi);
            }
            // no top cohomology in the terms: every connecting map is forced
            if t >= -2 {
                prop_assert!(col.forced);
            }
        }
    }
}
