//! Buchberger's algorithm over GF(p), normal forms, and the emptiness test
//! behind smoothness certificates.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::arith::{ArithError, Field, PrimeField, Rationals};
use crate::poly::{parse_poly_in, Monomial, PolyError, Polynomial, VarContext, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("generators do not share one context and field")]
    Mismatch,
    #[error("no generators given")]
    NoGenerators,
    #[error("generators must be homogeneous")]
    Inhomogeneous,
    #[error("prime {p} divides the degree {degree}")]
    BadPrime { p: u64, degree: u32 },
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    /// Degree reverse lexicographic with `x1 > x2 > ...`.
    #[default]
    DegRevLex,
    /// Pure lexicographic with `x1 > x2 > ...`.
    Lex,
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => a.cmp_degrevlex(b),
            MonomialOrder::Lex => a.cmp_lex(b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::Lex => "lex",
        }
    }

    pub fn leading_term<F: Field>(self, f: &Polynomial<F>) -> Option<(Monomial, F::Elem)> {
        f.terms()
            .max_by(|a, b| self.cmp(a.0, b.0))
            .map(|(m, c)| (*m, c.clone()))
    }
}

/// Reduced Gröbner basis, generators monic and sorted by increasing
/// leading monomial.
#[derive(Debug, Clone, PartialEq)]
pub struct GroebnerBasis {
    pub generators: Vec<Polynomial<PrimeField>>,
    pub order: MonomialOrder,
    pub reduced: bool,
    /// Set when a degree cap skipped at least one S-pair: the basis is then
    /// only complete up to `degree_cap`.
    pub truncated: bool,
    pub degree_cap: Option<u32>,
    leading: Vec<Monomial>,
}

impl GroebnerBasis {
    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn field(&self) -> Option<&PrimeField> {
        self.generators.first().map(|g| g.field())
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// True when the ideal contains 1.
    pub fn is_unit_ideal(&self) -> bool {
        self.leading.iter().any(|m| m.degree() == 0)
    }

    /// True when every variable has a pure power among the leading
    /// monomials (or the ideal is the unit ideal).
    pub fn has_all_pure_powers(&self, nvars: usize) -> bool {
        if self.is_unit_ideal() {
            return true;
        }
        let mut seen = vec![false; nvars];
        for m in &self.leading {
            if let Some(v) = m.pure_power_var() {
                seen[v] = true;
            }
        }
        seen.into_iter().all(|b| b)
    }

    pub fn max_degree(&self) -> u32 {
        self.leading.iter().map(Monomial::degree).max().unwrap_or(0)
    }
}

type Term = (Monomial, u64);

/// Monomial ordered by a runtime-chosen order.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Key(Monomial, MonomialOrder);

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.1.cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// 64-bit divisibility filter: bit `i` for `x_i^1`, bit `32 + i` for `x_i^2`.
#[inline]
fn divmask(m: &Monomial) -> u64 {
    let mut mask = 0u64;
    for i in 0..MAX_VARS {
        let e = m.exponent(i);
        if e >= 1 {
            mask |= 1 << i;
        }
        if e >= 2 {
            mask |= 1 << (32 + i);
        }
    }
    mask
}

struct BasisEntry {
    /// Ascending in the active order, monic; leading term last.
    poly: Vec<Term>,
    lm: Monomial,
    mask: u64,
    sugar: u32,
    active: bool,
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine {
    field: PrimeField,
    order: MonomialOrder,
    entries: Vec<BasisEntry>,
}

impl Engine {
    fn to_terms(&self, f: &Polynomial<PrimeField>) -> Vec<Term> {
        let mut t: Vec<Term> = f.terms().map(|(m, c)| (*m, *c)).collect();
        t.sort_by(|a, b| self.order.cmp(&a.0, &b.0));
        t
    }

    fn make_monic(&self, t: &mut [Term]) {
        if let Some(&(_, lc)) = t.last() {
            if lc != 1 {
                let inv = self.field.inv(&lc).expect("nonzero leading coefficient");
                for term in t.iter_mut() {
                    term.1 = self.field.mul(&term.1, &inv);
                }
            }
        }
    }

    /// `a - coef * q * b`, both ascending.
    fn merge_sub(&self, a: &[Term], b: &[Term], q: &Monomial, coef: u64) -> Vec<Term> {
        let f = &self.field;
        let neg = f.neg(&coef);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let bm = b[j].0.mul(q);
            match self.order.cmp(&a[i].0, &bm) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((bm, f.mul(&neg, &b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(&a[i].1, &f.mul(&neg, &b[j].1));
                    if c != 0 {
                        out.push((bm, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            out.push((t.0.mul(q), f.mul(&neg, &t.1)));
        }
        out
    }

    fn find_reducer(&self, m: &Monomial) -> Option<usize> {
        let mask = divmask(m);
        self.entries
            .iter()
            .position(|e| e.active && e.mask & !mask == 0 && e.lm.divides(m))
    }

    /// Fully reduces `h` against the active entries.
    fn reduce(&self, h: Vec<Term>) -> Vec<Term> {
        let f = &self.field;
        let order = self.order;
        let mut acc: BTreeMap<Key, u64> = h.into_iter().map(|(m, c)| (Key(m, order), c)).collect();
        let mut rem: Vec<Term> = Vec::new();
        while let Some((Key(m, _), c)) = acc.pop_last() {
            match self.find_reducer(&m) {
                Some(k) => {
                    let g = &self.entries[k].poly;
                    let q = m.div(&self.entries[k].lm).expect("divisible");
                    let neg = f.neg(&c);
                    for (gm, gc) in &g[..g.len() - 1] {
                        let v = f.mul(&neg, gc);
                        match acc.entry(Key(gm.mul(&q), order)) {
                            Entry::Vacant(e) => {
                                e.insert(v);
                            }
                            Entry::Occupied(mut e) => {
                                let s = f.add(e.get(), &v);
                                if s == 0 {
                                    e.remove();
                                } else {
                                    *e.get_mut() = s;
                                }
                            }
                        }
                    }
                }
                None => rem.push((m, c)),
            }
        }
        rem.reverse();
        rem
    }

    fn spoly(&self, p: &Pair) -> Vec<Term> {
        let (gi, gj) = (&self.entries[p.i], &self.entries[p.j]);
        let qi = p.lcm.div(&gi.lm).expect("lcm");
        let qj = p.lcm.div(&gj.lm).expect("lcm");
        let a: Vec<Term> = gi.poly[..gi.poly.len() - 1]
            .iter()
            .map(|(m, c)| (m.mul(&qi), *c))
            .collect();
        self.merge_sub(&a, &gj.poly[..gj.poly.len() - 1], &qj, 1)
    }

    fn pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (&self.entries[i], &self.entries[j]);
        let lcm = a.lm.lcm(&b.lm);
        let sugar =
            (a.sugar + lcm.degree() - a.lm.degree()).max(b.sugar + lcm.degree() - b.lm.degree());
        Pair { i, j, lcm, sugar }
    }

    /// Gebauer–Möller update after appending entry `h`.
    fn update(&mut self, pairs: &mut Vec<Pair>, h: usize) {
        let lm_h = self.entries[h].lm;
        let mut c: Vec<Pair> = (0..h)
            .filter(|&g| self.entries[g].active)
            .map(|g| self.pair(g, h))
            .collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(p) = (!c.is_empty()).then(|| c.remove(0)) {
            let coprime = self.entries[p.i].lm.is_coprime(&lm_h);
            if coprime
                || (!c.iter().any(|q| q.lcm.divides(&p.lcm))
                    && !d.iter().any(|q| q.lcm.divides(&p.lcm)))
            {
                d.push(p);
            }
        }
        d.retain(|p| !self.entries[p.i].lm.is_coprime(&lm_h));
        pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && self.entries[p.i].lm.lcm(&lm_h) != p.lcm
                && self.entries[p.j].lm.lcm(&lm_h) != p.lcm)
        });
        pairs.extend(d);
        for g in 0..h {
            if self.entries[g].active && lm_h.divides(&self.entries[g].lm) {
                self.entries[g].active = false;
            }
        }
    }

    fn insert(&mut self, pairs: &mut Vec<Pair>, mut poly: Vec<Term>, sugar: u32) {
        self.make_monic(&mut poly);
        let lm = poly.last().expect("nonzero").0;
        self.entries.push(BasisEntry {
            mask: divmask(&lm),
            poly,
            lm,
            sugar,
            active: true,
        });
        let h = self.entries.len() - 1;
        self.update(pairs, h);
    }

    fn select(&self, pairs: &[Pair]) -> usize {
        let mut best = 0;
        for (k, p) in pairs.iter().enumerate().skip(1) {
            let b = &pairs[best];
            let better = p
                .sugar
                .cmp(&b.sugar)
                .then_with(|| self.order.cmp(&p.lcm, &b.lcm))
                .then_with(|| (p.i, p.j).cmp(&(b.i, b.j)))
                == Ordering::Less;
            if better {
                best = k;
            }
        }
        best
    }
}

fn check_shared(
    gens: &[Polynomial<PrimeField>],
) -> Result<(PrimeField, Arc<VarContext>), GroebnerError> {
    let first = gens.first().ok_or(GroebnerError::NoGenerators)?;
    if gens
        .iter()
        .any(|g| g.field() != first.field() || g.context() != first.context())
    {
        return Err(GroebnerError::Mismatch);
    }
    Ok((*first.field(), first.context().clone()))
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(
    gens: &[Polynomial<PrimeField>],
    order: MonomialOrder,
) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_capped(gens, order, None)
}

/// Buchberger with an optional cap on S-pair sugar degree.
pub fn buchberger_capped(
    gens: &[Polynomial<PrimeField>],
    order: MonomialOrder,
    degree_cap: Option<u32>,
) -> Result<GroebnerBasis, GroebnerError> {
    let (field, ctx) = check_shared(gens)?;
    let mut eng = Engine {
        field,
        order,
        entries: Vec::new(),
    };
    let mut pairs: Vec<Pair> = Vec::new();
    let mut truncated = false;
    let mut unit = false;

    let mut inputs: Vec<(Vec<Term>, u32)> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| (eng.to_terms(g), g.degree().unwrap_or(0)))
        .collect();
    // stable: low degree first keeps reductions small
    inputs.sort_by_key(|(_, s)| *s);
    for (t, sugar) in inputs {
        let h = eng.reduce(t);
        if h.is_empty() {
            continue;
        }
        if h.last().unwrap().0.degree() == 0 {
            unit = true;
            break;
        }
        eng.insert(&mut pairs, h, sugar);
    }

    while !unit && !pairs.is_empty() {
        let k = eng.select(&pairs);
        let p = pairs.swap_remove(k);
        if degree_cap.is_some_and(|cap| p.sugar > cap) {
            truncated = true;
            continue;
        }
        let h = eng.reduce(eng.spoly(&p));
        if h.is_empty() {
            continue;
        }
        if h.last().unwrap().0.degree() == 0 {
            unit = true;
            break;
        }
        eng.insert(&mut pairs, h, p.sugar);
    }

    if unit {
        return Ok(GroebnerBasis {
            generators: vec![Polynomial::one(field, ctx)],
            order,
            reduced: true,
            truncated: false,
            degree_cap,
            leading: vec![Monomial::one()],
        });
    }

    // interreduce tails of the minimal basis
    let active: Vec<usize> = (0..eng.entries.len())
        .filter(|&k| eng.entries[k].active)
        .collect();
    let mut reduced: Vec<Vec<Term>> = Vec::with_capacity(active.len());
    for &k in &active {
        let poly = &eng.entries[k].poly;
        let lead = *poly.last().unwrap();
        let mut tail = eng.reduce(poly[..poly.len() - 1].to_vec());
        tail.push(lead);
        reduced.push(tail);
    }
    reduced.sort_by(|a, b| order.cmp(&a.last().unwrap().0, &b.last().unwrap().0));
    let leading = reduced.iter().map(|t| t.last().unwrap().0).collect();
    let generators = reduced
        .into_iter()
        .map(|t| Polynomial::from_terms(field, ctx.clone(), t))
        .collect();
    Ok(GroebnerBasis {
        generators,
        order,
        reduced: true,
        truncated,
        degree_cap,
        leading,
    })
}

/// Remainder of `f` on division by `gb`; zero iff `f` lies in the ideal
/// (for a complete basis).
pub fn normal_form(
    f: &Polynomial<PrimeField>,
    gb: &GroebnerBasis,
) -> Result<Polynomial<PrimeField>, GroebnerError> {
    if let Some(g) = gb.generators.first() {
        if g.field() != f.field() || g.context() != f.context() {
            return Err(GroebnerError::Mismatch);
        }
    }
    let mut eng = Engine {
        field: *f.field(),
        order: gb.order,
        entries: Vec::new(),
    };
    for g in &gb.generators {
        let poly = eng.to_terms(g);
        let lm = poly.last().expect("nonzero generator").0;
        eng.entries.push(BasisEntry {
            mask: divmask(&lm),
            poly,
            lm,
            sugar: 0,
            active: true,
        });
    }
    let rem = eng.reduce(eng.to_terms(f));
    Ok(Polynomial::from_terms(*f.field(), f.context().clone(), rem))
}

fn require_homogeneous(gens: &[Polynomial<PrimeField>]) -> Result<(), GroebnerError> {
    if gens.iter().any(|g| !g.is_zero() && !g.is_homogeneous()) {
        return Err(GroebnerError::Inhomogeneous);
    }
    Ok(())
}

/// Whether the homogeneous ideal has empty projective zero set over the
/// algebraic closure.
pub fn is_empty_projective(gens: &[Polynomial<PrimeField>]) -> Result<bool, GroebnerError> {
    require_homogeneous(gens)?;
    let nvars = check_shared(gens)?.1.len();
    Ok(buchberger(gens, MonomialOrder::DegRevLex)?.has_all_pure_powers(nvars))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SmoothnessVerdict {
    Smooth,
    /// An integer point where `F` and all partials vanish exactly over Q.
    Singular {
        witness: Vec<i64>,
    },
    Indeterminate {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmoothnessCertificate {
    pub prime: u64,
    #[serde(flatten)]
    pub verdict: SmoothnessVerdict,
    pub basis_size: usize,
    pub basis_max_degree: u32,
    pub note: String,
}

/// Coordinates tried when looking for an exact singular point.
pub const WITNESS_RANGE: std::ops::RangeInclusive<i64> = -2..=2;

/// Smoothness of `{F = 0}` from the Jacobian ideal of `F` over GF(p).
///
/// SMOOTH when the partials have no common projective zero mod `p`; since
/// the singular scheme is projective over the integers, this also proves
/// smoothness in characteristic zero. Otherwise a singular point with small
/// integer coordinates is searched exactly over Q.
pub fn smoothness_certificate(
    f: &Polynomial<Rationals>,
    p: u64,
    cache: Option<&GroebnerCache>,
) -> Result<SmoothnessCertificate, GroebnerError> {
    let field = PrimeField::new(p)?;
    let degree = f.homogeneous_degree().ok_or(GroebnerError::Inhomogeneous)?;
    if p == 2 || (degree as u64).is_multiple_of(p) {
        return Err(GroebnerError::BadPrime { p, degree });
    }
    let partials: Vec<Polynomial<PrimeField>> = f
        .gradient()
        .iter()
        .map(|g| g.reduce(&field))
        .collect::<Result<_, _>>()?;
    let nonzero: Vec<_> = partials.iter().filter(|g| !g.is_zero()).cloned().collect();
    let gb = if nonzero.is_empty() {
        None
    } else {
        Some(buchberger_cached(
            &nonzero,
            MonomialOrder::DegRevLex,
            None,
            cache,
        )?)
    };
    let (basis_size, basis_max_degree) = gb.as_ref().map_or((0, 0), |g| (g.len(), g.max_degree()));
    let empty = gb
        .as_ref()
        .is_some_and(|g| g.has_all_pure_powers(f.nvars()));
    let verdict = if empty {
        SmoothnessVerdict::Smooth
    } else {
        match find_integer_singular_point(f) {
            Some(witness) => SmoothnessVerdict::Singular { witness },
            None => SmoothnessVerdict::Indeterminate {
                reason: format!(
                    "singular locus nonempty mod {p}; no exact witness with coordinates in [{}, {}]",
                    WITNESS_RANGE.start(),
                    WITNESS_RANGE.end()
                ),
            },
        }
    };
    let note = match verdict {
        SmoothnessVerdict::Smooth => format!(
            "partial derivatives have no common projective zero over the algebraic closure of GF({p}); \
             the singular subscheme is projective over Z, so its generic fibre is empty too"
        ),
        SmoothnessVerdict::Singular { .. } => "witness checked by exact evaluation over Q".into(),
        SmoothnessVerdict::Indeterminate { .. } => "a mod-p singular point need not lift".into(),
    };
    Ok(SmoothnessCertificate {
        prime: p,
        verdict,
        basis_size,
        basis_max_degree,
        note,
    })
}

/// First normalised point of `WITNESS_RANGE^n` (leading nonzero coordinate
/// positive) where `F` and its gradient vanish exactly.
pub fn find_integer_singular_point(f: &Polynomial<Rationals>) -> Option<Vec<i64>> {
    let n = f.nvars();
    let grad = f.gradient();
    let q = Rationals;
    let values: Vec<i64> = WITNESS_RANGE.collect();
    let base = values.len();
    let mut digits = vec![0usize; n];
    let total = base.checked_pow(n as u32)?;
    for _ in 0..total {
        let pt: Vec<i64> = digits.iter().map(|&d| values[d]).collect();
        // advance odometer
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < base {
                break;
            }
            *d = 0;
        }
        match pt.iter().find(|&&x| x != 0) {
            Some(&lead) if lead > 0 => {}
            _ => continue,
        }
        let qp: Vec<_> = pt.iter().map(|&x| q.from_i64(x)).collect();
        let vanishes =
            |g: &Polynomial<Rationals>| g.evaluate(&qp).map(|v| q.is_zero(&v)).unwrap_or(false);
        if vanishes(f) && grad.iter().all(vanishes) {
            return Some(pt);
        }
    }
    None
}

/// On-disk store of reduced bases keyed by a SHA-256 of the canonical
/// input. Writes go through a temporary file and an atomic rename.
#[derive(Debug, Clone)]
pub struct GroebnerCache {
    dir: PathBuf,
}

static CACHE_LOCK: Mutex<()> = Mutex::new(());

#[derive(Serialize, Deserialize)]
struct CachedBasis {
    key: String,
    p: u64,
    order: MonomialOrder,
    degree_cap: Option<u32>,
    truncated: bool,
    vars: Vec<String>,
    generators: Vec<String>,
}

impl GroebnerCache {
    pub const DEFAULT_DIR: &'static str = "./pfcache";

    pub fn new(dir: impl AsRef<Path>) -> Self {
        Self {
            dir: dir.as_ref().to_path_buf(),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(
        gens: &[Polynomial<PrimeField>],
        order: MonomialOrder,
        degree_cap: Option<u32>,
    ) -> String {
        let mut h = Sha256::new();
        if let Some(g) = gens.first() {
            h.update(format!("p={};", g.field().modulus()));
            h.update(format!("vars={};", g.context().names().join(",")));
        }
        h.update(format!("order={};cap={:?};", order.name(), degree_cap));
        for g in gens {
            h.update(g.to_string());
            h.update(";");
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn load(
        &self,
        key: &str,
        ctx: &Arc<VarContext>,
        field: &PrimeField,
    ) -> Option<GroebnerBasis> {
        let _guard = CACHE_LOCK.lock().unwrap_or_else(|e| e.into_inner());
        let text = fs::read_to_string(self.path(key)).ok()?;
        let stored: CachedBasis = serde_json::from_str(&text).ok()?;
        if stored.key != key || stored.p != field.modulus() || stored.vars != ctx.names() {
            return None;
        }
        let generators = stored
            .generators
            .iter()
            .map(|s| parse_poly_in(s, ctx, field))
            .collect::<Result<Vec<_>, _>>()
            .ok()?;
        let leading = generators
            .iter()
            .map(|g| stored.order.leading_term(g).map(|(m, _)| m))
            .collect::<Option<Vec<_>>>()?;
        Some(GroebnerBasis {
            generators,
            order: stored.order,
            reduced: true,
            truncated: stored.truncated,
            degree_cap: stored.degree_cap,
            leading,
        })
    }

    pub fn store(&self, key: &str, gb: &GroebnerBasis) -> Result<(), GroebnerError> {
        let Some(first) = gb.generators.first() else {
            return Ok(());
        };
        let record = CachedBasis {
            key: key.to_string(),
            p: first.field().modulus(),
            order: gb.order,
            degree_cap: gb.degree_cap,
            truncated: gb.truncated,
            vars: first.context().names().to_vec(),
            generators: gb.generators.iter().map(|g| g.to_string()).collect(),
        };
        let text =
            serde_json::to_string(&record).map_err(|e| GroebnerError::Cache(e.to_string()))?;
        let _guard = CACHE_LOCK.lock().unwrap_or_else(|e| e.into_inner());
        let io = |e: std::io::Error| GroebnerError::Cache(e.to_string());
        fs::create_dir_all(&self.dir).map_err(io)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        tmp.write_all(text.as_bytes()).map_err(io)?;
        tmp.persist(self.path(key)).map_err(|e| io(e.error))?;
        Ok(())
    }
}

/// [`buchberger_capped`] consulting `cache` first and filling it afterwards.
pub fn buchberger_cached(
    gens: &[Polynomial<PrimeField>],
    order: MonomialOrder,
    degree_cap: Option<u32>,
    cache: Option<&GroebnerCache>,
) -> Result<GroebnerBasis, GroebnerError> {
    let (field, ctx) = check_shared(gens)?;
    let Some(cache) = cache else {
        return buchberger_capped(gens, order, degree_cap);
    };
    let key = GroebnerCache::key(gens, order, degree_cap);
    if let Some(gb) = cache.load(&key, &ctx, &field) {
        return Ok(gb);
    }
    let gb = buchberger_capped(gens, order, degree_cap)?;
    cache.store(&key, &gb)?;
    Ok(gb)
}
