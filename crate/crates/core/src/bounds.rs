//! Closed-form parameters and covering-radius bounds for the code families,
//! and a dispatcher that checks each one against computed ground truth.
//!
//! Formulas are evaluated in exact rational arithmetic. A floor is taken
//! only where the formula itself has one, and when comparing an upper bound
//! against an integer radius.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::arith::{euler_phi, Modulus, ResidueVector};
use crate::code::{
    symbol_counts, GeneratorMatrix, LinearCode, DEFAULT_DUAL_LIMIT, DEFAULT_ENUMERATION_LIMIT,
};
use crate::construct::{
    extend_d, full_repetition_generator, macdonald_generator, repetition_generator,
    simplex_generator, simplex_length,
};
use crate::error::{Error, Result};
use crate::radius::{
    covering_radius_bfs, sampled_lower_bound, RadiusResult, DEFAULT_BFS_LIMIT,
    DEFAULT_EXHAUSTIVE_LIMIT,
};

pub type Rational = Ratio<i128>;

/// Derived quantities for one modulus. `φ(q)` and the Simplex lengths are
/// always recomputed here.
#[derive(Clone, Copy, Debug)]
pub struct FormulaContext {
    q: i128,
    phi: i128,
}

impl FormulaContext {
    pub fn new(q: u32) -> Result<Self> {
        Modulus::new(q)?;
        Ok(FormulaContext {
            q: q as i128,
            phi: euler_phi(q as u64)? as i128,
        })
    }

    pub fn even(q: u32) -> Result<Self> {
        Modulus::new(q)?.half()?;
        Self::new(q)
    }

    pub fn phi(&self) -> i128 {
        self.phi
    }

    /// `n_k = (q^k - 1)/(q - 1)`.
    pub fn n(&self, k: usize) -> i128 {
        (self.q.pow(k as u32) - 1) / (self.q - 1)
    }

    /// `(q-1)φ n_k / q + (q-1-φ) n_k + 1` without the floor on the first term.
    fn last_step(&self, k: usize) -> Rational {
        let (q, phi, nk) = (self.q, self.phi, self.n(k));
        Rational::new((q - 1) * phi * nk, q) + Rational::from((q - 1 - phi) * nk + 1)
    }

    /// `[(j)(q-1)φ + (q²-q-φ) q^r (q^j - 1)] / (q (q-1)²)`: the summed
    /// one-step increments for `j` recursion levels starting at length `n_r`.
    fn telescoped(&self, levels: usize, r: usize) -> Rational {
        let (q, phi) = (self.q, self.phi);
        let j = levels as i128;
        Rational::new(
            j * (q - 1) * phi + (q * q - q - phi) * q.pow(r as u32) * (q.pow(levels as u32) - 1),
            q * (q - 1) * (q - 1),
        )
    }
}

/// `(n_k, k, d_k)` as predicted for the Simplex code `S_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimplexParams {
    pub n: u64,
    pub k: usize,
    pub d: u64,
}

/// `n_k = (q^k-1)/(q-1)` and `d_k = (q/2) n_{k-1} + 1`, for even `q`.
pub fn simplex_params_formula(q: u32, k: usize) -> Result<SimplexParams> {
    let ctx = FormulaContext::even(q)?;
    if k < 2 {
        return Err(Error::domain(format!("simplex codes need k >= 2, got {k}")));
    }
    Ok(SimplexParams {
        n: ctx.n(k) as u64,
        k,
        d: ((q / 2) as i128 * ctx.n(k - 1) + 1) as u64,
    })
}

/// Predicted minimum distance of the D-extension of `code`:
///
/// `min{ q d, (q-1) n + 1, (q/2) n + 1 + (q/2)(n - r_0(c) - r_{q/2}(c)) }`
///
/// with the last term minimized over nonzero codewords `c`.
pub fn d_of_d_formula(code: &LinearCode) -> Result<u64> {
    let half = code.modulus().half()? as u64;
    let q = code.q() as u64;
    let n = code.n() as u64;
    let d = code.min_distance()? as u64;
    let third = code
        .codewords()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| {
            let r = symbol_counts(c);
            let spread = n - r.get(0) as u64 - r.get(half as u32) as u64;
            half * n + 1 + half * spread
        })
        .min()
        .expect("a code with defined distance has a nonzero codeword");
    Ok((q * d).min((q - 1) * n + 1).min(third))
}

/// Which repetition family a radius formula refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepetitionKind {
    /// `[u u ... u]` with `u` a unit.
    Unit,
    /// `[v v ... v]` with `v` a zero divisor.
    ZeroDivisor,
    /// `[1^n 2^n ... (q-1)^n]`.
    Full,
}

/// Unit: `⌊(q-1)n/q⌋`. Zero divisor: `n`. Full:
/// `⌊(q-1)φ(q)n/q⌋ + (q-1-φ(q))n`.
pub fn repetition_radius_formula(q: u32, n: usize, kind: RepetitionKind) -> Result<u64> {
    let ctx = FormulaContext::new(q)?;
    let (q, n) = (q as i128, n as i128);
    let value = match kind {
        RepetitionKind::Unit => (q - 1) * n / q,
        RepetitionKind::ZeroDivisor => n,
        RepetitionKind::Full => (q - 1) * ctx.phi * n / q + (q - 1 - ctx.phi) * n,
    };
    Ok(value as u64)
}

/// Upper bound on `R(S_{k+1})` for `k >= 2`:
///
/// `[(k-1)(q-1)φ + (q²-q-φ)(q^{k+1}-q²)] / (q(q-1)²) + R(S_2)`.
pub fn simplex_radius_upper_bound(q: u32, k: usize, base_r_s2: u64) -> Result<Rational> {
    let ctx = FormulaContext::even(q)?;
    if k < 2 {
        return Err(Error::domain(format!(
            "the simplex radius bound needs k >= 2, got {k}"
        )));
    }
    Ok(ctx.telescoped(k - 1, 2) + Rational::from(base_r_s2 as i128))
}

/// The `q = 4` specialization `(5·4^{k+1} + 3k - 29)/18`, which already
/// includes `R(S_2) = 3`.
pub fn simplex_radius_bound_q4(k: usize) -> Rational {
    Rational::new(5 * 4i128.pow(k as u32 + 1) + 3 * k as i128 - 29, 18)
}

/// Upper bound on `R(M_{k+1,u})` through the intermediate code `M_{r,u}`:
///
/// `[(k-r+1)(q-1)φ + (q²-q-φ) q^r (q^{k-r+1}-1)] / (q(q-1)²) + R(M_{r,u})`
///
/// for `2 <= u <= r <= k`. At `r = u` the base is the radius of the empty
/// code, 0.
pub fn macdonald_radius_upper_bound(
    q: u32,
    k: usize,
    u: usize,
    r: usize,
    base: Rational,
) -> Result<Rational> {
    let ctx = FormulaContext::even(q)?;
    if !(2 <= u && u <= r && r <= k) {
        return Err(Error::domain(format!(
            "the MacDonald bound needs 2 <= u <= r <= k, got k = {k}, u = {u}, r = {r}"
        )));
    }
    Ok(ctx.telescoped(k - r + 1, r) + base)
}

/// `R(M_{k+1,k}) <= ⌊(q-1)φ n_k / q⌋ + (q-1-φ) n_k + 1`.
pub fn macdonald_last_step_bound(q: u32, k: usize) -> Result<u64> {
    let ctx = FormulaContext::even(q)?;
    if k < 2 {
        return Err(Error::domain(format!(
            "the MacDonald bound needs k >= 2, got {k}"
        )));
    }
    let (qq, phi, nk) = (ctx.q, ctx.phi, ctx.n(k));
    Ok(((qq - 1) * phi * nk / qq + (qq - 1 - phi) * nk + 1) as u64)
}

/// Closed form for `2 <= u <= k`:
///
/// `[(k-u)(q-1)φ + (q²-q-φ) q^{u+1}(q^{k-u}-1)] / (q(q-1)²)
///   + (q-1)φ n_u / q + (q-1-φ) n_u + 1`.
pub fn macdonald_corollary_bound(q: u32, k: usize, u: usize) -> Result<Rational> {
    let ctx = FormulaContext::even(q)?;
    if !(2 <= u && u <= k) {
        return Err(Error::domain(format!(
            "the MacDonald bound needs 2 <= u <= k, got k = {k}, u = {u}"
        )));
    }
    Ok(ctx.telescoped(k - u, u + 1) + ctx.last_step(u))
}

/// Identifiers accepted by [`verify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TheoremId {
    #[serde(rename = "lemma1")]
    Lemma1,
    #[serde(rename = "lemma2")]
    Lemma2,
    #[serde(rename = "thm-D-extension")]
    DExtension,
    #[serde(rename = "cor-D")]
    CorD,
    #[serde(rename = "thm-simplex-params")]
    SimplexParams,
    #[serde(rename = "dual-perfect")]
    DualPerfect,
    #[serde(rename = "thm-repetition-radius")]
    RepetitionRadius,
    #[serde(rename = "thm-full-repetition-radius")]
    FullRepetitionRadius,
    #[serde(rename = "thm-simplex-radius-bound")]
    SimplexRadiusBound,
    #[serde(rename = "thm-macdonald-bound")]
    MacdonaldBound,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::Lemma1,
        TheoremId::Lemma2,
        TheoremId::DExtension,
        TheoremId::CorD,
        TheoremId::SimplexParams,
        TheoremId::DualPerfect,
        TheoremId::RepetitionRadius,
        TheoremId::FullRepetitionRadius,
        TheoremId::SimplexRadiusBound,
        TheoremId::MacdonaldBound,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Lemma1 => "lemma1",
            TheoremId::Lemma2 => "lemma2",
            TheoremId::DExtension => "thm-D-extension",
            TheoremId::CorD => "cor-D",
            TheoremId::SimplexParams => "thm-simplex-params",
            TheoremId::DualPerfect => "dual-perfect",
            TheoremId::RepetitionRadius => "thm-repetition-radius",
            TheoremId::FullRepetitionRadius => "thm-full-repetition-radius",
            TheoremId::SimplexRadiusBound => "thm-simplex-radius-bound",
            TheoremId::MacdonaldBound => "thm-macdonald-bound",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = TheoremId::ALL.iter().map(|id| id.as_str()).collect();
                format!(
                    "unknown theorem id '{s}' (expected one of: {})",
                    known.join(", ")
                )
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotComputable,
}

/// Ground truth for one check: an exact integer, an interval whose upper end
/// may be unknown, or nothing when every engine is out of budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Computed {
    Exact(u64),
    Interval { lower: u64, upper: Option<u64> },
    Unavailable,
}

impl Computed {
    fn from_radius(r: &RadiusResult) -> Self {
        if r.exact {
            Computed::Exact(r.value as u64)
        } else {
            Computed::Interval {
                lower: r.value as u64,
                upper: None,
            }
        }
    }
}

impl Serialize for Computed {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Computed::Exact(v) => s.serialize_u64(v),
            Computed::Interval { lower, upper } => (lower, upper).serialize(s),
            Computed::Unavailable => s.serialize_none(),
        }
    }
}

fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

/// Outcome of comparing one formula instance with computed ground truth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub theorem_id: TheoremId,
    pub inputs: BTreeMap<&'static str, u64>,
    #[serde(serialize_with = "serialize_rational")]
    pub formula_value: Rational,
    pub computed_value: Computed,
    pub verdict: Verdict,
    pub notes: String,
}

impl BoundReport {
    fn new(id: TheoremId, inputs: &[(&'static str, u64)], formula_value: Rational) -> Self {
        BoundReport {
            theorem_id: id,
            inputs: inputs.iter().copied().collect(),
            formula_value,
            computed_value: Computed::Unavailable,
            verdict: Verdict::NotComputable,
            notes: String::new(),
        }
    }

    fn equality(mut self, computed: u64, extra_ok: bool, notes: String) -> Self {
        self.computed_value = Computed::Exact(computed);
        self.verdict = if extra_ok && Rational::from(computed as i128) == self.formula_value {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self.notes = notes;
        self
    }

    /// Upper-bound check: passes when the exact value, or a lower bound on
    /// it, does not exceed `⌊formula_value⌋`.
    fn upper_bound(mut self, radius: &RadiusResult, notes: &str) -> Self {
        let ceiling = self.formula_value.floor().to_integer();
        self.computed_value = Computed::from_radius(radius);
        let ok = radius.value as i128 <= ceiling;
        self.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        let status = match (ok, radius.exact) {
            (true, true) => "proved by exact radius",
            (true, false) => "consistent (sampled lower bound only)",
            (false, _) => "violated",
        };
        self.notes = format!("floor(bound) = {ceiling}; {status}");
        if !notes.is_empty() {
            self.notes.push_str("; ");
            self.notes.push_str(notes);
        }
        self
    }

    fn unavailable(mut self, why: String) -> Self {
        self.notes = why;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// State budgets used by the verifier's engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub enumeration: u64,
    pub dual: u64,
    pub exhaustive: u64,
    pub bfs: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: DEFAULT_ENUMERATION_LIMIT,
            dual: DEFAULT_DUAL_LIMIT,
            exhaustive: DEFAULT_EXHAUSTIVE_LIMIT,
            bfs: DEFAULT_BFS_LIMIT,
        }
    }
}

/// Parameter ranges for a verification suite.
#[derive(Clone, Copy, Debug)]
pub struct VerifyParams {
    pub q: u32,
    pub kmax: usize,
    pub nmax: usize,
    /// Samples for the lower bound when exact radii are out of budget.
    pub samples: u64,
    pub seed: u64,
    pub limits: Limits,
}

impl VerifyParams {
    pub fn new(q: u32) -> Self {
        VerifyParams {
            q,
            kmax: 3,
            nmax: 4,
            samples: 100_000,
            seed: 1,
            limits: Limits::default(),
        }
    }
}

/// Runs every instance of `id` in the ranges of `params`.
pub fn verify(id: TheoremId, params: &VerifyParams) -> Result<Vec<BoundReport>> {
    Modulus::new(params.q)?;
    match id {
        TheoremId::Lemma1 => verify_lemma1(params),
        TheoremId::Lemma2 => verify_lemma2(params),
        TheoremId::DExtension => verify_d_extension(params, false),
        TheoremId::CorD => verify_d_extension(params, true),
        TheoremId::SimplexParams => verify_simplex_params(params),
        TheoremId::DualPerfect => verify_dual_perfect(params),
        TheoremId::RepetitionRadius => verify_repetition_radius(params),
        TheoremId::FullRepetitionRadius => verify_full_repetition_radius(params),
        TheoremId::SimplexRadiusBound => verify_simplex_radius_bound(params),
        TheoremId::MacdonaldBound => verify_macdonald_bound(params),
    }
}

fn fits(q: u32, exp: u64, limit: u64) -> bool {
    (q as u128)
        .checked_pow(exp as u32)
        .is_some_and(|v| exp <= u32::MAX as u64 && v <= limit as u128)
}

/// Exact radius by BFS when `q^n` fits the budget, otherwise the sampled
/// lower bound.
pub fn radius_ground_truth(code: &LinearCode, params: &VerifyParams) -> Result<RadiusResult> {
    if fits(code.q(), code.n() as u64, params.limits.bfs) {
        covering_radius_bfs(code, params.limits.bfs)
    } else {
        Ok(sampled_lower_bound(code, params.samples, params.seed))
    }
}

fn rat(v: u64) -> Rational {
    Rational::from(v as i128)
}

fn enumerate_if_fits(g: GeneratorMatrix, params: &VerifyParams) -> Result<Option<LinearCode>> {
    if fits(g.q(), g.k() as u64, params.limits.enumeration) {
        LinearCode::enumerate(g, params.limits.enumeration).map(Some)
    } else {
        Ok(None)
    }
}

/// A labelled base code with its report inputs.
type Instance = (String, Vec<(&'static str, u64)>, GeneratorMatrix);

/// Base codes for the D-extension checks: every repetition code of length
/// up to `nmax`, and `S_k` for `2 <= k < kmax`.
fn d_extension_bases(params: &VerifyParams) -> Result<Vec<Instance>> {
    let q = params.q;
    let mut out = Vec::new();
    for n in 1..=params.nmax {
        for v in 1..q {
            out.push((
                format!("repetition n={n} v={v}"),
                vec![("q", q as u64), ("n", n as u64), ("v", v as u64)],
                repetition_generator(q, n, v)?,
            ));
        }
    }
    for k in 2..params.kmax {
        if simplex_length(q, k).is_some_and(|n| n <= 1 << 12) {
            out.push((
                format!("simplex k={k}"),
                vec![("q", q as u64), ("k", k as u64)],
                simplex_generator(q, k)?,
            ));
        }
    }
    Ok(out)
}

fn verify_lemma1(params: &VerifyParams) -> Result<Vec<BoundReport>> {
    const MAX_PAIRWISE: u64 = 1024;
    let q = params.q;
    let mut gens: Vec<(Vec<(&'static str, u64)>, GeneratorMatrix)> = Vec::new();
    for k in 2..=params.kmax {
        gens.push((
            vec![("q", q as u64), ("k", k as u64)],
            simplex_generator(q, k)?,
        ));
    }
    for n in 1..=params.nmax {
        for v in 1..q {
            gens.push((
                vec![("q", q as u64), ("n", n as u64), ("v", v as u64)],
                repetition_generator(q, n, v)?,
            ));
        }
    }
    let mut reports = Vec::new();
    for (inputs, g) in gens {
        let Some(code) = enumerate_if_fits(g, params)?.filter(|c| c.cardinality() <= MAX_PAIRWISE)
        else {
            reports.push(
                BoundReport::new(TheoremId::Lemma1, &inputs, Rational::from(0))
                    .unavailable("too many codewords for a pairwise scan".into()),
            );
            continue;
        };
        let min_weight = code.min_distance()? as u64;
        let words = code.codewords();
        let mut pairwise = usize::MAX;
        for (i, x) in words.iter().enumerate() {
            for y in &words[i + 1..] {
                pairwise = pairwise.min(x.distance(y)?);
            }
        }
        reports.push(
            BoundReport::new(TheoremId::Lemma1, &inputs, rat(min_weight)).equality(
                pairwise as u64,
                true,
                format!("min weight {min_weight} vs min pairwise distance {pairwise}"),
            ),
        );
    }
    Ok(reports)
}

fn verify_lemma2(params: &VerifyParams) -> Result<Vec<BoundReport>> {
    let m = Modulus::new(params.q)?;
    let half = m.half()?;
    let mut reports = Vec::new();
    for n in 1..=params.nmax.min(10) {
        let vecs: Vec<ResidueVector> = (0..1u32 << n)
            .map(|mask| {
                let e = (0..n)
                    .map(|i| if mask >> i & 1 == 1 { half } else { 0 })
                    .collect();
                ResidueVector::new(m, e)
            })
            .collect::<Result<_>>()?;
        let mut violations = 0u64;
        for a in &vecs {
            for b in &vecs {
                for c in [a.add(b)?, a.sub(b)?] {
                    if c.entries().iter().any(|&e| e != 0 && e != half) {
                        violations += 1;
                    }
                }
            }
        }
        let pairs = (vecs.len() * vecs.len()) as u64;
        reports.push(
            BoundReport::new(
                TheoremId::Lemma2,
                &[("q", params.q as u64), ("n", n as u64)],
                rat(0),
            )
            .equality(
                violations,
                true,
                format!("{pairs} ordered pairs checked for x+y and x-y; value counts violations"),
            ),
        );
    }
    Ok(reports)
}

/// `true` when some nonzero codeword has every coordinate in `{0, q/2}` and
/// `n <= 2d - 1`.
pub fn corollary_d_hypothesis(code: &LinearCode) -> Result<bool> {
    let half = code.modulus().half()?;
    let d = code.min_distance()?;
    let has_half_word = code
        .codewords()
        .iter()
        .any(|c| !c.is_zero() && c.entries().iter().all(|&e| e == 0 || e == half));
    Ok(has_half_word && code.n() < 2 * d)
}

fn verify_d_extension(params: &VerifyParams, corollary: bool) -> Result<Vec<BoundReport>> {
    let q = params.q;
    let half = Modulus::new(q)?.half()? as u64;
    let id = if corollary {
        TheoremId::CorD
    } else {
        TheoremId::DExtension
    };
    let mut reports = Vec::new();
    for (label, inputs, g) in d_extension_bases(params)? {
        let Some(base) = enumerate_if_fits(g, params)? else {
            continue;
        };
        if base.cardinality() < 2 {
            continue;
        }
        if corollary && !corollary_d_hypothesis(&base)? {
            continue;
        }
        let n = base.n();
        let dg = extend_d(base.generator())?;
        let formula = if corollary {
            half * n as u64 + 1
        } else {
            d_of_d_formula(&base)?
        };
        let report = BoundReport::new(id, &inputs, rat(formula));
        let Some(d_code) = enumerate_if_fits(dg, params)? else {
            reports.push(report.unavailable(format!("{label}: D is too large to enumerate")));
            continue;
        };
        let shape_ok = d_code.n() == q as usize * n + 1 && d_code.k() == base.k() + 1;
        let computed = d_code.min_distance()? as u64;
        reports.push(report.equality(
            computed,
            shape_ok,
            format!(
                "{label}: base [{}, {}, {}], D has n={} k={} M={} d={computed}",
                n,
                base.k(),
                base.min_distance()?,
                d_code.n(),
                d_code.k(),
                d_code.cardinality()
            ),
        ));
    }
    Ok(reports)
}

fn verify_simplex_params(params: &VerifyParams) -> Result<Vec<BoundReport>> {
    let q = params.q;
    let mut reports = Vec::new();
    for k in 2..=params.kmax {
        let want = simplex_params_formula(q, k)?;
        let report = BoundReport::new(
            TheoremId::SimplexParams,
            &[("q", q as u64), ("k", k as u64)],
            rat(want.d),
        );
        let Some(code) = enumerate_if_fits(simplex_generator(q, k)?, params)? else {
            reports
                .push(report.unavailable(format!("q^k = {q}^{k} exceeds the enumeration budget")));
            continue;
        };
        let m_want = (q as u64).pow(k as u32);
        let d = code.min_distance()? as u64;
        let shape_ok = code.n() as u64 == want.n && code.cardinality() == m_want;
        reports.push(report.equality(
            d,
            shape_ok,
            format!(
                "enumerated [n={}, M={}, d={d}], formula [n={}, M={m_want}, d={}]",
                code.n(),
                code.cardinality(),
                want.n,
                want.d
            ),
        ));
    }
    Ok(reports)
}

fn verify_dual_perfect(params: &VerifyParams) -> Result<Vec<BoundReport>> {
    let q = params.q;
    let mut reports = Vec::new();
    for k in 2..=params.kmax {
        let report = BoundReport::new(
            TheoremId::DualPerfect,
            &[("q", q as u64), ("k", k as u64)],
            rat(3),
        );
        let g = simplex_generator(q, k)?;
        let n = g.n();
        if !fits(q, n as u64, params.limits.dual) {
            reports.push(
                report.unavailable(format!("dual scan of {q}^{n} states exceeds the budget")),
            );
            continue;
        }
        let Some(code) = enumerate_if_fits(g, params)? else {
            reports.push(report.unavailable("simplex code too large to enumerate".into()));
            continue;
        };
        let dual = code.dual(params.limits.dual)?;
        let m_want = (q as u128).pow((n - k) as u32);
        let perfect = dual.is_perfect();
        let shape_ok = dual.cardinality() as u128 == m_want && perfect;
        match dual.summary().min_distance {
            Some(d) => reports.push(report.equality(
                d as u64,
                shape_ok,
                format!(
                    "dual is [n={n}, M={}, d={d}], expected [n={n}, M={m_want}, d=3]; perfect = {perfect}",
                    dual.cardinality()
                ),
            )),
            None => reports.push(BoundReport {
                verdict: Verdict::Fail,
                notes: "dual is the zero code".into(),
                ..report
            }),
        }
    }
    Ok(reports)
}

fn exact_radius(code: &LinearCode, params: &VerifyParams) -> Result<Option<RadiusResult>> {
    if fits(code.q(), code.n() as u64, params.limits.bfs) {
        covering_radius_bfs(code, params.limits.bfs).map(Some)
    } else {
        Ok(None)
    }
}

fn verify_repetition_radius(params: &VerifyParams) -> Result<Vec<BoundReport>> {
    let q = params.q;
    let m = Modulus::new(q)?;
    let mut reports = Vec::new();
    for n in 1..=params.nmax {
        for v in 1..q {
            let kind = match m.classify(v)? {
                crate::arith::ElementClass::Unit => RepetitionKind::Unit,
                _ => RepetitionKind::ZeroDivisor,
            };
            let formula = repetition_radius_formula(q, n, kind)?;
            let report = BoundReport::new(
                TheoremId::RepetitionRadius,
                &[("q", q as u64), ("n", n as u64), ("v", v as u64)],
                rat(formula),
            );
            let code =
                LinearCode::enumerate(repetition_generator(q, n, v)?, params.limits.enumeration)?;
            match exact_radius(&code, params)? {
                Some(r) => reports.push(report.equality(
                    r.value as u64,
                    true,
                    format!("{kind:?} repetition, M = {}", code.cardinality()),
                )),
                None => reports.push(report.unavailable(format!("{q}^{n} exceeds the BFS budget"))),
            }
        }
    }
    Ok(reports)
}

fn verify_full_repetition_radius(params: &VerifyParams) -> Result<Vec<BoundReport>> {
    let q = params.q;
    let half = Modulus::new(q)?.half()? as u64;
    let mut reports = Vec::new();
    for n in 1..=params.nmax {
        let formula = repetition_radius_formula(q, n, RepetitionKind::Full)?;
        let report = BoundReport::new(
            TheoremId::FullRepetitionRadius,
            &[("q", q as u64), ("n", n as u64)],
            rat(formula),
        );
        let code =
            LinearCode::enumerate(full_repetition_generator(q, n)?, params.limits.enumeration)?;
        let d = code.min_distance()? as u64;
        match exact_radius(&code, params)? {
            Some(r) => reports.push(report.equality(
                r.value as u64,
                d == half * n as u64,
                format!(
                    "length {}, d = {d} (expected {})",
                    code.n(),
                    half * n as u64
                ),
            )),
            None => {
                reports.push(report.unavailable(format!("{q}^{} exceeds the BFS budget", code.n())))
            }
        }
    }
    Ok(reports)
}

fn verify_simplex_radius_bound(params: &VerifyParams) -> Result<Vec<BoundReport>> {
    let q = params.q;
    FormulaContext::even(q)?;
    let s2 = LinearCode::enumerate(simplex_generator(q, 2)?, params.limits.enumeration)?;
    let base = exact_radius(&s2, params)?;
    let mut reports = Vec::new();
    for k in 2..=params.kmax {
        let inputs = [("q", q as u64), ("k", k as u64)];
        let Some(base) = &base else {
            reports.push(
                BoundReport::new(TheoremId::SimplexRadiusBound, &inputs, Rational::from(0))
                    .unavailable(format!("R(S_2) needs {q}^{} BFS states", s2.n())),
            );
            continue;
        };
        let bound = simplex_radius_upper_bound(q, k, base.value as u64)?;
        let report = BoundReport::new(TheoremId::SimplexRadiusBound, &inputs, bound);
        let Some(code) = enumerate_if_fits(simplex_generator(q, k + 1)?, params)? else {
            reports.push(report.unavailable(format!("S_{} too large to enumerate", k + 1)));
            continue;
        };
        let truth = radius_ground_truth(&code, params)?;
        let mut notes = format!("R(S_2) = {} by BFS", base.value);
        let mut report = report.upper_bound(&truth, "");
        if q == 4 {
            let special = simplex_radius_bound_q4(k);
            notes.push_str(&format!(
                "; q=4 closed form {}/{}",
                special.numer(),
                special.denom()
            ));
            if special != bound {
                report.verdict = Verdict::Fail;
                notes.push_str(" disagrees with the general form");
            }
        }
        report.notes = format!("{}; {notes}", report.notes);
        reports.push(report);
    }
    Ok(reports)
}

fn verify_macdonald_bound(params: &VerifyParams) -> Result<Vec<BoundReport>> {
    let q = params.q;
    FormulaContext::even(q)?;
    let mut reports = Vec::new();
    for k in 2..=params.kmax {
        for u in 2..=k {
            let target = match enumerate_if_fits(macdonald_generator(q, k + 1, u)?, params)? {
                Some(code) => Some(radius_ground_truth(&code, params)?),
                None => None,
            };
            let ku = [("q", q as u64), ("k", k as u64), ("u", u as u64)];
            for r in u..=k {
                let inputs = [ku[0], ku[1], ku[2], ("r", r as u64)];
                let base = if r == u {
                    Some(0)
                } else {
                    match enumerate_if_fits(macdonald_generator(q, r, u)?, params)? {
                        Some(c) => exact_radius(&c, params)?.map(|res| res.value as u64),
                        None => None,
                    }
                };
                let Some(base) = base else {
                    reports.push(
                        BoundReport::new(TheoremId::MacdonaldBound, &inputs, Rational::from(0))
                            .unavailable(format!("R(M_{{{r},{u}}}) is out of exact budget")),
                    );
                    continue;
                };
                let bound = macdonald_radius_upper_bound(q, k, u, r, rat(base))?;
                let report = BoundReport::new(TheoremId::MacdonaldBound, &inputs, bound);
                let base_note = format!("base R(M_{{{r},{u}}}) = {base}");
                reports.push(match &target {
                    Some(t) => report.upper_bound(t, &base_note),
                    None => {
                        report.unavailable(format!("M_{{{},{u}}} too large to enumerate", k + 1))
                    }
                });
            }
            if u == k {
                let last = macdonald_last_step_bound(q, k)?;
                let report = BoundReport::new(TheoremId::MacdonaldBound, &ku, rat(last));
                reports.push(match &target {
                    Some(t) => report.upper_bound(t, "last-step form for u = k"),
                    None => report.unavailable("target out of budget".into()),
                });
            }
            let cor = macdonald_corollary_bound(q, k, u)?;
            let report = BoundReport::new(TheoremId::MacdonaldBound, &ku, cor);
            reports.push(match &target {
                Some(t) => report.upper_bound(t, "closed form with r = u + 1"),
                None => report.unavailable("target out of budget".into()),
            });
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_param_examples() {
        assert_eq!(
            simplex_params_formula(4, 3).unwrap(),
            SimplexParams { n: 21, k: 3, d: 11 }
        );
        assert_eq!(
            simplex_params_formula(2, 2).unwrap(),
            SimplexParams { n: 3, k: 2, d: 2 }
        );
        assert_eq!(
            simplex_params_formula(6, 2).unwrap(),
            SimplexParams { n: 7, k: 2, d: 4 }
        );
        assert!(matches!(
            simplex_params_formula(5, 2),
            Err(Error::OddModulus(5))
        ));
    }

    #[test]
    fn d_of_d_examples() {
        let c = LinearCode::enumerate_default(GeneratorMatrix::from_rows(4, &[vec![1]]).unwrap())
            .unwrap();
        assert_eq!(d_of_d_formula(&c).unwrap(), 3);
        let c =
            LinearCode::enumerate_default(GeneratorMatrix::from_rows(2, &[vec![1, 1]]).unwrap())
                .unwrap();
        assert_eq!(d_of_d_formula(&c).unwrap(), 3);
        let odd = LinearCode::enumerate_default(GeneratorMatrix::from_rows(3, &[vec![1]]).unwrap())
            .unwrap();
        assert!(d_of_d_formula(&odd).is_err());
    }

    #[test]
    fn repetition_formula_examples() {
        assert_eq!(
            repetition_radius_formula(4, 4, RepetitionKind::Unit).unwrap(),
            3
        );
        assert_eq!(
            repetition_radius_formula(6, 4, RepetitionKind::ZeroDivisor).unwrap(),
            4
        );
        assert_eq!(
            repetition_radius_formula(4, 2, RepetitionKind::Full).unwrap(),
            5
        );
    }

    #[test]
    fn simplex_bound_examples() {
        let b = simplex_radius_upper_bound(4, 2, 3).unwrap();
        assert_eq!(b, Rational::new(33, 2));
        assert_eq!(b, Rational::new(297, 18));
        assert_eq!(b.floor().to_integer(), 16);
        assert_eq!(
            simplex_radius_upper_bound(4, 3, 3).unwrap(),
            Rational::from(70)
        );
        for k in 2..=6 {
            assert_eq!(
                simplex_radius_upper_bound(4, k, 3).unwrap(),
                simplex_radius_bound_q4(k)
            );
        }
    }

    #[test]
    fn macdonald_bound_examples() {
        assert_eq!(macdonald_last_step_bound(4, 2).unwrap(), 13);
        // closed form = general bound at r = u + 1 with the unfloored last step
        let ctx = FormulaContext::even(4).unwrap();
        let general = macdonald_radius_upper_bound(4, 4, 2, 3, ctx.last_step(2)).unwrap();
        assert_eq!(general, macdonald_corollary_bound(4, 4, 2).unwrap());
        // at r = u with base 0 the general bound telescopes to the same thing
        let from_empty = macdonald_radius_upper_bound(4, 4, 2, 2, Rational::from(0)).unwrap();
        assert_eq!(from_empty, general);
        assert!(macdonald_radius_upper_bound(4, 4, 3, 2, Rational::from(0)).is_err());
    }

    #[test]
    fn theorem_ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
            assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{id}\""));
        }
        assert!("thm-9".parse::<TheoremId>().is_err());
    }

    #[test]
    fn report_serialization_shape() {
        let mut r = BoundReport::new(
            TheoremId::SimplexRadiusBound,
            &[("q", 4), ("k", 2)],
            Rational::new(33, 2),
        );
        r.computed_value = Computed::Interval {
            lower: 12,
            upper: None,
        };
        r.verdict = Verdict::Pass;
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"theorem_id":"thm-simplex-radius-bound","inputs":{"k":2,"q":4},"formula_value":"33/2","computed_value":[12,null],"verdict":"pass","notes":""}"#
        );
        r.formula_value = Rational::from(3);
        r.computed_value = Computed::Exact(3);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains(r#""formula_value":"3/1","computed_value":3"#));
    }
}
