//! Orchestration of the full bound chain for each Pell family:
//!
//! 1. `absolute_bounds` — the Matveev chain down to the absolute bounds on
//!    `n_1`, `n_2`;
//! 2. `first_reduction` — two cycles of Legendre cutoff + LLL sweeps that
//!    shrink `n_2` from ~1e165 to ~1e42;
//! 3. `final_reduction` — exhaustive fundamental-coordinate search in the
//!    reduced box, then two Baker–Davenport passes per candidate unit,
//!    ending with the final search box (`n <= ~410`, `k <= ~250`).
//!
//! Published (anchor) constants are taken from the source derivation and
//! re-verified here: for each stage we recompute the quantity rigorously
//! and check it against the published anchor under a per-stage policy, then
//! chain with the anchor so downstream integer cutoffs are reproduced
//! exactly. Where the published value cannot be reproduced, the stage is
//! marked `Adopt` and both numbers are recorded.
//!
//! Two integer-cutoff conventions appear throughout:
//! * `reported`: divide logarithms by `ln(1.33)` (the derivation's habit —
//!   1.33 is an upper bound for `ln alpha`'s argument, so this matches the
//!   published cutoffs);
//! * `certified`: divide by the certified interval of `ln alpha` and take
//!   the sound (larger) floor.
//! All sweeps run over the certified (larger) range.

use crate::bigreal::{AlgebraicConstants, BigReal, PrecisionPolicy};
use crate::contfrac::{self, CFExpansion};
use crate::pell::{self, Family};
use crate::reduction::{self, BDInstance, LLLInstance, LinearFormData};
use crate::{Error, Result};
use once_cell::sync::Lazy;
use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Complete, Integer, Rational};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, RwLock};

// ---------------------------------------------------------------------------
// Shared constants cache
// ---------------------------------------------------------------------------

static CONSTS_CACHE: Lazy<RwLock<HashMap<u32, Arc<AlgebraicConstants>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Cached algebraic constants at the given precision.
pub fn consts(prec: u32) -> Result<Arc<AlgebraicConstants>> {
    if let Some(c) = CONSTS_CACHE.read().unwrap().get(&prec) {
        return Ok(c.clone());
    }
    let c = Arc::new(AlgebraicConstants::new(prec)?);
    CONSTS_CACHE.write().unwrap().insert(prec, c.clone());
    Ok(c)
}

/// Parse an anchor like `"4.87e165"` into an exact integer (must be one).
pub fn int_anchor(s: &str) -> Integer {
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().expect("anchor exponent")),
        None => (s, 0),
    };
    let (ip, fp) = match mant.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mant, ""),
    };
    let shift = exp - fp.len() as i64;
    assert!(shift >= 0, "anchor {s} is not an integer");
    let digits: Integer = format!("{ip}{fp}").parse().unwrap();
    digits * Integer::from(10u32).pow(shift as u32)
}

fn anchor_real(s: &str, prec: u32) -> BigReal {
    BigReal::from_decimal(s, prec).expect("anchor parse")
}

/// Sound integer cutoff: floor of the upper endpoint (largest plausible
/// floor — always a valid upper bound for a `<`-type inequality).
fn floor_hi(x: &BigReal) -> Result<i64> {
    let f = match x.certified_floor() {
        Ok(v) => v,
        Err(_) => x
            .hi()
            .clone()
            .floor()
            .to_integer()
            .ok_or_else(|| Error::AmbiguousComparison("cutoff not finite".into()))?,
    };
    f.to_i64()
        .ok_or_else(|| Error::AmbiguousComparison("cutoff exceeds i64".into()))
}

/// `ln(1.33)` — the divisor used for `reported` cutoffs.
fn ln_133(prec: u32) -> BigReal {
    BigReal::from_rational(&Rational::from((133u32, 100u32)), prec).ln()
}

/// Both cutoff conventions for `alpha^x < arg`.
fn dual_cutoff(arg: &BigReal, c: &AlgebraicConstants) -> Result<(i64, i64)> {
    let l = arg.ln();
    let reported = floor_hi(&l.div(&ln_133(arg.prec())))?;
    let certified = floor_hi(&l.div(&c.ln_alpha))?;
    Ok((reported, certified))
}

// ---------------------------------------------------------------------------
// Stage records and anchor policies
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AnchorPolicy {
    /// Recomputed value must be certified `<=` the anchor.
    CertifiedLe,
    /// Recomputed value must be `<=` 1.05 x anchor.
    Le105,
    /// Both values within a factor 1.5 of each other.
    Factor15,
    /// Anchor adopted for chaining; recomputation recorded but not asserted.
    Adopt,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StageValue {
    pub label: String,
    pub computed: f64,
    pub anchor: f64,
    pub policy: AnchorPolicy,
    pub ok: bool,
}

fn check_stage(label: &str, computed: &BigReal, anchor_s: &str, policy: AnchorPolicy) -> StageValue {
    let prec = computed.prec();
    let anchor = anchor_real(anchor_s, prec);
    let ok = match policy {
        AnchorPolicy::CertifiedLe => {
            matches!(computed.certified_cmp(&anchor), Some(Ordering::Less))
        }
        AnchorPolicy::Le105 => {
            let lim = anchor.mul(&BigReal::from_rational(&Rational::from((21u32, 20u32)), prec));
            matches!(computed.certified_cmp(&lim), Some(Ordering::Less))
        }
        AnchorPolicy::Factor15 => {
            let r = computed.to_f64() / anchor.to_f64();
            (1.0 / 1.5..=1.5).contains(&r)
        }
        AnchorPolicy::Adopt => true,
    };
    StageValue {
        label: label.to_string(),
        computed: computed.to_f64(),
        anchor: anchor.to_f64(),
        policy,
        ok,
    }
}

// ---------------------------------------------------------------------------
// Per-family parameter sheets
// ---------------------------------------------------------------------------

/// All published constants of one family's chain.
pub struct FamilySheet {
    pub family: Family,
    // Matveev cores and chain anchors (absolute stage)
    pub g1: &'static str,
    pub good1: &'static str,
    pub g2: &'static str,
    pub good2: &'static str,
    pub lem1_k: &'static str,
    pub lem1_n: &'static str,
    pub g3: &'static str,
    pub lam_coeff: &'static str,
    pub g4: &'static str,
    pub nu_coeff: &'static str,
    pub g5: &'static str,
    pub n1_coeff: &'static str,
    pub logu_coeff: &'static str,
    pub big_h: &'static str,
    pub n2_abs: &'static str,
    pub n1_abs: &'static str,
    /// additive constant in `|Gamma_1| < c/alpha^n` -> `n log alpha < ... + ln c`
    pub good1_slack: f64, // 1.5 (unit), 2.5 (quad)
    pub kabizi_add: u32, // ln 6 (unit), ln 5 (quad): stored as the integer 6 / 5

    // First reduction
    pub legendre_factor: u32,       // 36 / 42
    pub tau_lambda_factor: u32,     // 21 / 70
    pub x_mult: u32,                // |x_2| <= x_mult * n2: 11 / 13
    pub c1_x_flat: &'static str,    // 5.4e166 / 3.99e163
    pub g4_rhs: u32,                // |Gamma_4| < g4_rhs * n2 / alpha^nu: 8 / 16
    pub g5_rhs: u32,                // 6 / 20
    pub c1_expect: CycleAnchors,
    pub c2_expect: CycleAnchors,
    pub k1_anchor: u64,             // 3125 / 3108
    pub m_final: &'static str,      // 5e42 / 4e42

    // Final reduction
    pub bd1_a_num: u32,             // A = a_num / log alpha: 5 / 6
    pub bd2_a_num: u32,             // 3 / 10
    pub m_stage2: &'static str,     // 5e43 / 4e43
    pub n2_final_anchor: i64,       // 408 / 414
    pub k2_anchor: i64,             // 133 / 248
    pub k2_n_offset: u32,           // delta^k <= 2 alpha^{n+off}: 3 / 1 (published used 3)
    pub candidate_count: usize,     // 17 / 25
}

#[derive(Debug, Clone, Copy)]
pub struct CycleAnchors {
    pub m: &'static str,
    pub a_max: u64,
    pub a_max_index: usize,
    pub lambda: i64,
    pub nu: i64,
    pub n1: i64,
    pub n2_next: &'static str,
    /// policy for the end-of-cycle n2 chain value
    pub n2_policy: AnchorPolicy,
}

pub fn sheet(family: Family) -> FamilySheet {
    match family {
        Family::Unit => FamilySheet {
            family,
            g1: "2.33e17",
            good1: "8.30e17",
            g2: "9.82e14",
            good2: "9.84e14",
            lem1_k: "2.5e32",
            lem1_n: "8.2e32",
            g3: "1.55e11",
            lam_coeff: "1.56e11",
            g4: "1.14e14",
            nu_coeff: "1.78e25",
            g5: "3.02e16",
            n1_coeff: "8.33e52",
            logu_coeff: "2.38e52",
            big_h: "4.64e137",
            n2_abs: "4.87e165",
            n1_abs: "1.76e63",
            good1_slack: 1.5,
            kabizi_add: 6,
            legendre_factor: 36,
            tau_lambda_factor: 21,
            x_mult: 11,
            c1_x_flat: "5.4e166",
            g4_rhs: 8,
            g5_rhs: 6,
            c1_expect: CycleAnchors {
                m: "4.87e165",
                a_max: 2107,
                a_max_index: 282,
                lambda: 2714,
                nu: 6760,
                n1: 12172,
                n2_next: "3.36e44",
                n2_policy: AnchorPolicy::Le105,
            },
            c2_expect: CycleAnchors {
                m: "3.36e44",
                a_max: 373,
                a_max_index: 54,
                lambda: 752,
                nu: 1846,
                n1: 3318,
                n2_next: "5e42",
                n2_policy: AnchorPolicy::Adopt,
            },
            k1_anchor: 3125,
            m_final: "5e42",
            bd1_a_num: 5,
            bd2_a_num: 3,
            m_stage2: "5e43",
            n2_final_anchor: 408,
            k2_anchor: 133,
            k2_n_offset: 3,
            candidate_count: 17,
        },
        Family::Quad => FamilySheet {
            family,
            g1: "2.08e17",
            good1: "7.40e17",
            g2: "9.50e14",
            good2: "9.52e14",
            lem1_k: "1.98e32",
            lem1_n: "7.03e32",
            g3: "4.63e10",
            lam_coeff: "1.62e11",
            g4: "1.85e13",
            nu_coeff: "3e24",
            g5: "4.99e15",
            n1_coeff: "2.43e51",
            logu_coeff: "6.92e50",
            big_h: "3.67e134",
            n2_abs: "3.07e162",
            n1_abs: "4.76e61",
            good1_slack: 2.5,
            kabizi_add: 5,
            legendre_factor: 42,
            tau_lambda_factor: 70,
            x_mult: 13,
            c1_x_flat: "3.99e163",
            g4_rhs: 16,
            g5_rhs: 20,
            c1_expect: CycleAnchors {
                m: "3.07e162",
                a_max: 1028,
                a_max_index: 189,
                lambda: 2661,
                nu: 6643,
                n1: 11948,
                n2_next: "2.76e44",
                n2_policy: AnchorPolicy::Le105,
            },
            c2_expect: CycleAnchors {
                m: "2.76e44",
                a_max: 397,
                a_max_index: 55,
                lambda: 738, // published; honest recomputation gives 751
                nu: 1838,
                n1: 3304,
                n2_next: "4e42",
                n2_policy: AnchorPolicy::Adopt,
            },
            k1_anchor: 3108,
            m_final: "4e42",
            bd1_a_num: 6,
            bd2_a_num: 10,
            m_stage2: "4e43",
            n2_final_anchor: 414,
            k2_anchor: 248,
            k2_n_offset: 1,
            candidate_count: 25,
        },
    }
}

// ---------------------------------------------------------------------------
// Stage 1: absolute bounds (Matveev chain)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AbsoluteBounds {
    pub family: Family,
    pub stages: Vec<StageValue>,
}

impl AbsoluteBounds {
    pub fn all_ok(&self) -> bool {
        self.stages.iter().all(|s| s.ok)
    }
    pub fn stage(&self, label: &str) -> Option<&StageValue> {
        self.stages.iter().find(|s| s.label == label)
    }
}

/// Recompute the Matveev chain for a family and check each published
/// constant. `A`-majorants follow the source's choices; the `(1 + log n)`
/// factor is recorded in two forms: the asymptotic coefficient (dropping the
/// `1+`, proved `<=` the published constant) and the uniform-`n >= 3` form
/// `(1 + log n) <= 2 log n` used for the factor-1.5 agreement checks.
pub fn absolute_bounds(family: Family) -> Result<AbsoluteBounds> {
    let prec = 320;
    let c = consts(prec)?;
    let s = sheet(family);
    let one = BigReal::from_i64(1, prec);
    let two = BigReal::from_i64(2, prec);
    let ln23 = BigReal::from_i64(23, prec).ln();
    let ln2 = two.ln();
    // A-majorant building blocks
    let a_2a = ln23.add(&c.ln_two_a); // D h(2a), D = 3
    let a_a = ln23.clone(); // D h(a)
    let a_eta2 = match family {
        Family::Unit => a_2a.clone(),
        Family::Quad => a_a.clone(),
    };
    // per-(n-m) majorant of A4 = 2 (n-m) log alpha + 6 log 2 (worst at n-m=1)
    let a4_per = c.ln_alpha.mul_i64(2).add(&ln2.mul_i64(6));
    // per-lambda majorant of D h(1 + alpha^{-lambda}) = lambda ln a + 3 ln 2
    let a3_per = c.ln_alpha.add(&ln2.mul_i64(3));

    let mv = |t: u32, d: i64, a_list: Vec<BigReal>| -> BigReal {
        reduction::matveev_bound(&LinearFormData {
            t,
            field_degree: BigReal::from_i64(d, prec),
            a_list,
            b: one.clone(),
        })
    };

    let mut st = Vec::new();

    // Gamma_1: t=4, D=6, A = (3 log u, 2 A_eta2, 2 log alpha, A4)
    let g1_core = mv(
        4,
        6,
        vec![
            BigReal::from_i64(3, prec),
            a_eta2.mul_i64(2),
            c.ln_alpha.mul_i64(2),
            a4_per.clone(),
        ],
    );
    st.push(check_stage("gamma1_core", &g1_core, s.g1, AnchorPolicy::CertifiedLe));
    // good1 with the uniform (1+log n) <= 2 log n absorption
    let slack = BigReal::from_decimal(&format!("{}", s.good1_slack), prec)?.ln();
    let good1_u = g1_core.mul(&two).add(&slack).div(&c.ln_alpha);
    st.push(check_stage("good1_uniform", &good1_u, s.good1, AnchorPolicy::Factor15));

    // Gamma_2: t=3, D=6, A = (3 log u, 2 A_eta2, 2 log alpha); the published
    // form keeps one factor log alpha symbolic, so A3 contributes 2 only.
    let g2_core = mv(
        3,
        6,
        vec![
            BigReal::from_i64(3, prec),
            a_eta2.mul_i64(2),
            BigReal::from_i64(2, prec),
        ],
    );
    st.push(check_stage("gamma2_core", &g2_core, s.g2, AnchorPolicy::CertifiedLe));
    let good2_u = g2_core.mul(&two);
    st.push(check_stage("good2_uniform", &good2_u, s.good2, AnchorPolicy::Factor15));

    // lemmata1 chain: n-coefficient = good1 x good2; k = n-coeff x ln alpha
    let good1_a = anchor_real(s.good1, prec);
    let good2_a = anchor_real(s.good2, prec);
    // the published constant chains with the Gamma_2 core (9.50/9.82e14)
    // rather than good2, so our slightly larger product is held to 1.05
    let lem_n = good1_a.mul(&good2_a);
    st.push(check_stage("lemmata1_n", &lem_n, s.lem1_n, AnchorPolicy::Le105));
    let lem_n_a = anchor_real(s.lem1_n, prec);
    let lem_k = lem_n_a.mul(&c.ln_alpha).add(&BigReal::from_i64(10, prec));
    st.push(check_stage("lemmata1_k", &lem_k, s.lem1_k, AnchorPolicy::CertifiedLe));

    // Gamma_3: t=2, D=3, A = (D h(eta1), log alpha symbolic)
    let g3_core = mv(2, 3, vec![a_eta2.clone()]);
    st.push(check_stage("gamma3_core", &g3_core, s.g3, AnchorPolicy::CertifiedLe));
    let lam = anchor_real(s.g3, prec).add(&BigReal::from_i64(20, prec));
    st.push(check_stage("lambda_coeff", &lam, s.lam_coeff, AnchorPolicy::CertifiedLe));

    // Gamma_4: t=3, D=3, A = (A_eta2, log alpha numeric, a3_per per lambda)
    let g4_core = mv(3, 3, vec![a_eta2.clone(), c.ln_alpha.clone(), a3_per.clone()]);
    st.push(check_stage("gamma4_core", &g4_core, s.g4, AnchorPolicy::CertifiedLe));
    let nu = anchor_real(s.g4, prec)
        .mul(&anchor_real(s.lam_coeff, prec))
        .add(&BigReal::from_i64(50, prec));
    st.push(check_stage("nu_coeff", &nu, s.nu_coeff, AnchorPolicy::CertifiedLe));

    // Gamma_5: t=4, D=3
    let g5_core = mv(
        4,
        3,
        vec![
            a_eta2.clone(),
            c.ln_alpha.clone(),
            a3_per.clone(),
            a3_per.clone(),
        ],
    );
    st.push(check_stage("gamma5_core", &g5_core, s.g5, AnchorPolicy::CertifiedLe));
    let n1c = anchor_real(s.g5, prec)
        .mul(&anchor_real(s.lam_coeff, prec))
        .mul(&anchor_real(s.nu_coeff, prec));
    st.push(check_stage("n1_coeff", &n1c, s.n1_coeff, AnchorPolicy::Le105));

    // log u <= n1 log alpha + log c chain
    let logu = anchor_real(s.n1_coeff, prec)
        .mul(&c.ln_alpha)
        .add(&BigReal::from_i64(2, prec));
    st.push(check_stage("logu_coeff", &logu, s.logu_coeff, AnchorPolicy::CertifiedLe));

    // H = lem1_n x logu^2 (times (log n2)^10 symbolically)
    let h = anchor_real(s.lem1_n, prec).mul(&anchor_real(s.logu_coeff, prec).pow_i64(2));
    st.push(check_stage("big_h", &h, s.big_h, AnchorPolicy::Le105));

    // n2 via Guzman-Luca, r = 10
    let n2 = reduction::gl_resolve(10, &anchor_real(s.big_h, prec))?;
    st.push(check_stage("n2_abs", &n2, s.n2_abs, AnchorPolicy::Le105));

    // n1 = n1_coeff x (log n2)^4
    let n1 = anchor_real(s.n1_coeff, prec).mul(&anchor_real(s.n2_abs, prec).ln().pow_i64(4));
    st.push(check_stage("n1_abs", &n1, s.n1_abs, AnchorPolicy::Le105));

    Ok(AbsoluteBounds { family, stages: st })
}

// ---------------------------------------------------------------------------
// Stage 2: first reduction (two Legendre/LLL cycles)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepMode {
    /// Representative lambda values only (CI scale).
    Sample,
    /// Every lambda for the 3-term forms (hours for cycle 1).
    Full,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LegendreReport {
    pub m: String,
    pub q_index: usize,
    pub a_max: String,
    pub a_max_index: usize,
    pub lambda_reported: i64,
    pub lambda_certified: i64,
    pub lambda_anchor: i64,
    pub matches_anchor: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LllReport {
    pub swept: Vec<i64>,
    pub min_bound_log10: f64,
    pub cutoff_reported: i64,
    pub cutoff_certified: i64,
    pub cutoff_anchor: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TauLambdaReport {
    pub sampled: Vec<i64>,
    pub a_max: String,
    pub n1_reported: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CycleReport {
    pub legendre: LegendreReport,
    pub gamma4: LllReport,
    pub gamma5: LllReport,
    pub tau_lambda: TauLambdaReport,
    pub n1_reported: i64,
    pub n1_anchor: i64,
    pub n2_next: StageValue,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FirstReduction {
    pub family: Family,
    pub mode: SweepMode,
    pub cycles: Vec<CycleReport>,
    pub n1_final: u64,
    pub k1_computed: i64,
    pub k1_max: u64,
    pub m_final: String,
}

/// CF of the stage's Legendre target: `tau = log(2a)/log alpha` (unit) or
/// `|log a|/log alpha` (quad).
pub fn tau_expansion(family: Family, n_terms: usize) -> Result<CFExpansion> {
    let policy = crate::bigreal::default_policy();
    let name = match family {
        Family::Unit => "log(2a)/log(alpha)",
        Family::Quad => "|log(a)|/log(alpha)",
    };
    contfrac::expand(name, n_terms, &policy, move |p| {
        let c = consts(p)?;
        Ok(match family {
            Family::Unit => c.ln_two_a.div(&c.ln_alpha),
            Family::Quad => c.abs_ln_a.div(&c.ln_alpha),
        })
    })
}

/// Collapse an interval to its certified lower endpoint.
fn floor_real(b: &BigReal) -> BigReal {
    BigReal::from_endpoints(b.lo().clone(), b.lo().clone())
}

/// log10 of the certified lower endpoint, computed in MPFR so values far
/// below f64 range still serialize (f64 would underflow to -inf).
fn log10_lo(b: &BigReal) -> f64 {
    let mut f = b.lo().clone();
    f.log10_mut();
    f.to_f64()
}

fn lll_policy(c: &Integer) -> PrecisionPolicy {
    let bits = (c.significant_bits() as u32 + 256).next_power_of_two();
    PrecisionPolicy {
        start_bits: bits,
        max_bits: 1 << 20,
    }
}

/// `ceil(G^t)` where `G^2 = Q + R^2` for the coefficient box, i.e. the
/// t-th power of the shortest-vector threshold the reduction lemma needs.
fn g_power_t(x_bounds: &[Integer]) -> Integer {
    let t = x_bounds.len();
    let q: Integer = x_bounds[..t - 1].iter().map(|x| (x * x).complete()).sum();
    let sum_x: Integer = x_bounds.iter().sum();
    let r = Rational::from((sum_x + 1, Integer::from(2)));
    let g2 = Rational::from(q) + (&r * &r).complete();
    let g2i: Integer = g2.ceil().into_numer_denom().0 + 1u32;
    if t == 3 {
        // ceil(g2i^(3/2))
        Integer::from(g2i.pow(3).sqrt()) + 1u32
    } else {
        g2i.pow(2)
    }
}

/// One certified t-term lattice instance: `Gamma_4` (3 terms, `chi = None`)
/// or `Gamma_5` (4 terms). The published multiplier C works for most lambda,
/// but once the last coordinate `tau_t = log(1 + alpha^-lambda)` is tiny the
/// lattice determinant `C tau_t` collapses below the shortest-vector
/// threshold `G^t`. The lemma allows any sufficiently large C, so on a
/// failed hypothesis we retry with `C = m G^t / tau_t` for growing margins m
/// and keep the first success (a larger C weakens, never invalidates, the
/// resulting lower bound).
fn lattice_bound(
    family: Family,
    lambda: i64,
    chi: Option<i64>,
    x_bounds: &[Integer],
    c_paper: &Integer,
) -> Result<BigReal> {
    let gt = g_power_t(x_bounds);
    // tau_t at modest precision just to size C; the certified run recomputes
    // everything at full precision.
    let last = chi.unwrap_or(lambda);
    let c512 = consts(512)?;
    // tau_t = log(1 + alpha^-last) is just below alpha^-last, which never
    // underflows the interval endpoints. This sizing is heuristic only —
    // the hypothesis is re-checked exactly inside the certified run.
    let tau_t = c512.alpha.pow_i64(-last);
    let tau_lo = tau_t
        .lo()
        .to_rational()
        .filter(|r| r.cmp0() != Ordering::Equal)
        .unwrap_or_else(|| Rational::from(1));
    // Candidate multipliers, smallest to largest. Every successful run
    // certifies a lower bound on the same form over the same box, so we keep
    // the best (largest) bound; smaller C gives a stronger bound whenever the
    // hypothesis still holds, while the tau-scaled entries rescue the
    // collapsed-determinant regime.
    let scaled = |num: u32, den: u32| -> Integer {
        let need = Rational::from((Integer::from(num) * &gt, Integer::from(den))) / &tau_lo;
        let need: Integer = need.ceil().into_numer_denom().0;
        need.max(c_paper.clone())
    };
    let mut cands: Vec<Integer> = vec![
        Integer::from(c_paper >> 24u32),
        Integer::from(c_paper >> 12u32),
        c_paper.clone(),
    ];
    // Near the collapsed-determinant regime the published C sits close to
    // the hypothesis threshold G^t / tau_t. Each C yields an independent
    // lattice whose shortest vector fluctuates around det^{1/t}, so scan a
    // band of thresholds and keep the luckiest draw, plus a rapid
    // escalation tail as a safety net. Away from that regime every entry
    // clamps to the published C and dedups to a single run.
    for tenths in (10..=45).step_by(3) {
        cands.push(scaled(tenths, 10));
    }
    for m in [8u32, 16, 64, 256] {
        cands.push(scaled(m, 1));
    }
    cands.retain(|c| c.cmp0() == Ordering::Greater);
    cands.dedup();
    let mut best: Option<BigReal> = None;
    let mut last_err = None;
    for c_use in cands {
        let policy = lll_policy(&c_use);
        let res = policy.run("lattice lll", |p| {
            let c = consts(p)?;
            let one = BigReal::from_i64(1, p);
            let tau1 = match family {
                Family::Unit => c.ln_two_a.clone(),
                Family::Quad => c.abs_ln_a.neg(), // log a < 0
            };
            let mut tau = vec![tau1, c.ln_alpha.clone()];
            tau.push(one.add(&c.alpha.pow_i64(-lambda)).ln());
            if let Some(x) = chi {
                tau.push(one.add(&c.alpha.pow_i64(-x)).ln());
            }
            reduction::lll_lower_bound(&LLLInstance {
                tau,
                x_bounds: x_bounds.to_vec(),
                c: c_use.clone(),
            })
        });
        match res {
            Err(Error::ThetaTooSmall(msg)) => last_err = Some(Error::ThetaTooSmall(msg)),
            Err(e) => return Err(e),
            Ok(b) => {
                let better = best
                    .as_ref()
                    .map(|cur| b.lo().partial_cmp(cur.lo()) == Some(Ordering::Greater))
                    .unwrap_or(true);
                if better {
                    best = Some(b);
                }
            }
        }
    }
    best.ok_or_else(|| last_err.unwrap())
}

/// CF of `tau_lambda = (log(2a) + log(1+alpha^-lambda))/log alpha` (unit) or
/// `(|log a| - log(1+alpha^-lambda))/log alpha` (quad), expanded until a
/// denominator exceeds `m`.
fn tau_lambda_amax(family: Family, lambda: i64, m: &Integer) -> Result<Integer> {
    let mut terms = 360;
    loop {
        let policy = crate::bigreal::default_policy();
        let cf = contfrac::expand(&format!("tau_lambda({lambda})"), terms, &policy, move |p| {
            let c = consts(p)?;
            let one = BigReal::from_i64(1, p);
            let corr = one.add(&c.alpha.pow_i64(-lambda)).ln();
            Ok(match family {
                Family::Unit => c.ln_two_a.add(&corr).div(&c.ln_alpha),
                Family::Quad => c.abs_ln_a.sub(&corr).abs().div(&c.ln_alpha),
            })
        })?;
        match contfrac::legendre_bound(&cf, m) {
            Ok(lb) => return Ok(lb.a_max),
            Err(Error::InsufficientExpansion(_)) if terms < 2000 => terms += 120,
            Err(e) => return Err(e),
        }
    }
}

fn sample_lambdas(max: i64, extra: &[i64]) -> Vec<i64> {
    let mut v: Vec<i64> = [1, 100, 321, 1000, 2714]
        .iter()
        .chain(extra.iter())
        .copied()
        .filter(|&l| l >= 1 && l <= max)
        .collect();
    v.push(max);
    v.sort_unstable();
    v.dedup();
    v
}

fn run_cycle(
    family: Family,
    s: &FamilySheet,
    cf: &CFExpansion,
    cy: &CycleAnchors,
    c_base: u32, // 20 (cycle 1) or 10 (cycle 2)
    x_flat: &Integer,
    mode: SweepMode,
) -> Result<CycleReport> {
    let prec = 320;
    let c = consts(prec)?;
    let m = int_anchor(cy.m);

    // (a) Legendre cutoff on tau
    let lb = contfrac::legendre_bound(cf, &m)?;
    let arg = Integer::from(s.legendre_factor) * (lb.a_max.clone() + 2u32) * (&m * &m).complete();
    let (l_rep, l_cert) = dual_cutoff(&BigReal::from_integer(&arg, prec), &c)?;
    let legendre = LegendreReport {
        m: cy.m.to_string(),
        q_index: lb.n_index,
        a_max: lb.a_max.to_string(),
        a_max_index: lb.a_max_index,
        lambda_reported: l_rep,
        lambda_certified: l_cert,
        lambda_anchor: cy.lambda,
        matches_anchor: l_rep == cy.lambda,
    };

    // (b) 3-term LLL sweep over lambda. Coefficient box: |x1| = k_j - k_i
    // and |x3| = k_j are below M (k <= 0.33 n + 2 from u^k <= 2 alpha^{n+3}),
    // and whenever the form is < 1 in absolute value,
    // |x2| log alpha <= 1 + |x1| log 2a + |x3| tau_3(lambda >= 2)
    //                <= 1 + 0.82 M  gives |x2| < 2.92 M + 4 < 3M.
    let x_bounds = vec![m.clone(), Integer::from(3u32) * &m, m.clone()];
    let c5 = (Integer::from(c_base) * x_flat).pow(5);
    let lam_range = l_cert.max(l_rep);
    let lambdas: Vec<i64> = match mode {
        SweepMode::Sample => sample_lambdas(lam_range, &[l_rep]),
        SweepMode::Full => (1..=lam_range).collect(),
    };
    // lambda in {1, 4} is degenerate: 1 + alpha^{-1} = alpha^2 and
    // 1 + alpha^{-4} = alpha exactly (alpha^3 = alpha + 1), so tau_3 is an
    // integer multiple of tau_2 and the 3-term lattice contains a relation
    // vector of norm O(1). There the form collapses to two terms and the
    // Legendre bound |x1 tau + y| > 1/((a(M)+2) x1) applies instead
    // (x1 = k_j - k_i < M).
    let two_term_floor = c
        .ln_alpha
        .div(&BigReal::from_integer(&((lb.a_max.clone() + 2u32) * &m), prec));
    let bounds: Result<Vec<BigReal>> = lambdas
        .par_iter()
        .map(|&l| {
            if l == 1 || l == 4 {
                Ok(two_term_floor.clone())
            } else {
                lattice_bound(family, l, None, &x_bounds, &c5)
            }
        })
        .collect();
    let bounds = bounds?;
    // reported cutoff reproduces the source sweep (lambda <= published
    // cutoff); the certified cutoff covers the certified (larger) range.
    let min_of = |sel: &dyn Fn(i64) -> bool| -> BigReal {
        lambdas
            .iter()
            .zip(bounds.iter())
            .filter(|(&l, _)| sel(l))
            .map(|(_, b)| b)
            .min_by(|a, b| a.lo().partial_cmp(b.lo()).unwrap_or(Ordering::Equal))
            .unwrap()
            .clone()
    };
    let min4_rep = min_of(&|l| l <= l_rep);
    let min4_all = min_of(&|_| true);
    let rhs = BigReal::from_integer(&(Integer::from(s.g4_rhs) * &m), prec);
    let (nu_rep, _) = dual_cutoff(&rhs.div(&floor_real(&min4_rep)), &c)?;
    let (_, nu_cert) = dual_cutoff(&rhs.div(&floor_real(&min4_all)), &c)?;
    let gamma4 = LllReport {
        swept: lambdas,
        min_bound_log10: log10_lo(&min4_rep),
        cutoff_reported: nu_rep,
        cutoff_certified: nu_cert,
        cutoff_anchor: cy.nu,
    };

    // (c) case lambda < chi: 4-term LLL at corner samples (the minimum sits
    // at the (lambda_max, chi_max) corner; a full 2-d sweep is out of CI
    // scale and documented as such).
    let chi_range = nu_cert.max(nu_rep);
    // lambda >= 2 throughout (lambda = 1 collapses to the 3-term case
    // already covered by the gamma_4 treatment above); corners at both the
    // source box (lambda_anchor, nu_anchor) and the certified box.
    let mut pairs: Vec<(i64, i64)> = vec![
        (2, 3),
        (321.min(lam_range), 1000.min(chi_range)),
        (cy.lambda, cy.nu),
        (lam_range, chi_range),
    ];
    pairs.dedup();
    // x2 multiplier 5: |x2| log alpha <= 1 + |x1| log 2a + |x3| tau_3
    // + |x4| tau_4 <= 1 + 1.27 M, so |x2| < 4.52 M + 4 < 5M.
    let x4 = vec![m.clone(), Integer::from(5u32) * &m, m.clone(), m.clone()];
    let c9 = (Integer::from(c_base) * x_flat).pow(9);
    let b5: Result<Vec<BigReal>> = pairs
        .par_iter()
        .map(|&(l, x)| lattice_bound(family, l, Some(x), &x4, &c9))
        .collect();
    let b5 = b5?;
    let min5_of = |sel: &dyn Fn(i64, i64) -> bool| -> BigReal {
        pairs
            .iter()
            .zip(b5.iter())
            .filter(|(&(l, x), _)| sel(l, x))
            .map(|(_, b)| b)
            .min_by(|a, b| a.lo().partial_cmp(b.lo()).unwrap_or(Ordering::Equal))
            .unwrap()
            .clone()
    };
    let min5_rep = min5_of(&|l, x| l <= cy.lambda && x <= cy.nu);
    let min5_all = min5_of(&|_, _| true);
    let rhs5 = BigReal::from_integer(&(Integer::from(s.g5_rhs) * &m), prec);
    let (n1_rep, _) = dual_cutoff(&rhs5.div(&floor_real(&min5_rep)), &c)?;
    let (_, n1_cert) = dual_cutoff(&rhs5.div(&floor_real(&min5_all)), &c)?;
    let gamma5 = LllReport {
        swept: pairs.iter().map(|p| p.0).collect(),
        min_bound_log10: log10_lo(&min5_rep),
        cutoff_reported: n1_rep,
        cutoff_certified: n1_cert,
        cutoff_anchor: cy.n1,
    };

    // case lambda = chi: Legendre on the tau_lambda family (sampled)
    let tl_samples: Vec<i64> = [1i64, 100, 205, 321]
        .iter()
        .copied()
        .filter(|&l| l <= lam_range)
        .collect();
    let tl_amax: Result<Vec<Integer>> = tl_samples
        .par_iter()
        .map(|&l| tau_lambda_amax(family, l, &m))
        .collect();
    let tl_max = tl_amax?.into_iter().max().unwrap_or_else(|| Integer::from(0));
    let tl_arg = Integer::from(s.tau_lambda_factor) * (tl_max.clone() + 2u32) * (&m * &m).complete();
    let (tl_n1, _) = dual_cutoff(&BigReal::from_integer(&tl_arg, prec), &c)?;
    let tau_lambda = TauLambdaReport {
        sampled: tl_samples,
        a_max: tl_max.to_string(),
        n1_reported: tl_n1,
    };

    // (d) combine: n1 bound for this cycle, then the next n2 via the
    // lemmata-1 inequality and Guzman-Luca with r = 2.
    let n1_rep_all = n1_rep.max(tl_n1);
    let n1_pub = cy.n1; // published; chained downstream
    let logu = BigReal::from_i64(n1_pub, prec)
        .mul(&ln_133(prec))
        .add(&BigReal::from_i64(s.kabizi_add as i64, prec).ln());
    let h = anchor_real(s.lem1_n, prec).mul(&logu.pow_i64(2));
    let n2_ours = reduction::gl_resolve(2, &h)?;
    let n2_next = check_stage("cycle_n2_next", &n2_ours, cy.n2_next, cy.n2_policy);

    Ok(CycleReport {
        legendre,
        gamma4,
        gamma5,
        tau_lambda,
        n1_reported: n1_rep_all,
        n1_anchor: n1_pub,
        n2_next,
    })
}

pub fn first_reduction(family: Family, mode: SweepMode) -> Result<FirstReduction> {
    let s = sheet(family);
    let prec = 320;
    let c = consts(prec)?;
    // one CF expansion serves both cycles
    let mut terms = 340;
    let cf = loop {
        let cf = tau_expansion(family, terms)?;
        if contfrac::legendre_bound(&cf, &int_anchor(s.c1_expect.m)).is_ok() {
            break cf;
        }
        terms += 60;
        if terms > 1200 {
            return Err(Error::InsufficientExpansion("tau expansion".into()));
        }
    };

    let x1 = int_anchor(s.c1_x_flat);
    let cy1 = run_cycle(family, &s, &cf, &s.c1_expect, 20, &x1, mode)?;
    // cycle 2 uses X := M (the source's convention)
    let x2 = int_anchor(s.c2_expect.m);
    let cy2 = run_cycle(family, &s, &cf, &s.c2_expect, 10, &x2, mode)?;

    // k1 from u^k <= 2 alpha^{n+3}: k <= (n1 ln alpha + ln 6)/ln(u_min)
    let u_min = match family {
        Family::Unit => BigReal::from_i64(2, prec).sqrt().add(&BigReal::from_i64(1, prec)),
        Family::Quad => BigReal::from_i64(5, prec)
            .sqrt()
            .add(&BigReal::from_i64(1, prec))
            .div(&BigReal::from_i64(2, prec)),
    };
    let k1_num = BigReal::from_i64(s.c2_expect.n1, prec)
        .mul(&ln_133(prec))
        .add(&BigReal::from_i64(s.kabizi_add as i64, prec).ln());
    let k1_computed = floor_hi(&k1_num.div(&u_min.ln()))?;
    let _ = &c;

    Ok(FirstReduction {
        family,
        mode,
        cycles: vec![cy1, cy2],
        n1_final: s.c2_expect.n1 as u64,
        k1_computed,
        k1_max: s.k1_anchor,
        m_final: s.m_final.to_string(),
    })
}

// ---------------------------------------------------------------------------
// Stage 3: final reduction
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Hit {
    pub k: u64,
    pub x1: String,
    pub eps: i32,
    pub value_digits: usize,
    pub d: String,
    pub y1: String,
}

#[derive(Debug, Clone)]
pub struct Candidate {
    pub d: Integer,
    pub x1: Integer,
    pub y1: Integer,
    pub eps: i32,
}

impl Candidate {
    pub fn unit_value(&self, family: Family, prec: u32) -> BigReal {
        let sd = BigReal::from_integer(&self.d, prec).sqrt();
        let v = BigReal::from_integer(&self.x1, prec)
            .add(&BigReal::from_integer(&self.y1, prec).mul(&sd));
        match family {
            Family::Unit => v,
            Family::Quad => v.div(&BigReal::from_i64(2, prec)),
        }
    }

    pub fn describe(&self, family: Family) -> String {
        match family {
            Family::Unit => {
                if self.y1 == 1 {
                    format!("{}+sqrt({})", self.x1, self.d)
                } else {
                    format!("{}+{}sqrt({})", self.x1, self.y1, self.d)
                }
            }
            Family::Quad => format!("({}+{}sqrt({}))/2", self.x1, self.y1, self.d),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Stage1Row {
    pub d: String,
    pub delta: String,
    pub q_index: usize,
    pub q_log10: f64,
    pub epsilon: f64,
    pub b: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FinalReduction {
    pub family: Family,
    pub mode: SweepMode,
    pub hits: Vec<Hit>,
    #[serde(skip)]
    pub candidates: Vec<Candidate>,
    /// All d values reachable from any hit (union over recover_d) — the
    /// complete set the final scan must cover.
    #[serde(skip)]
    pub scan_ds: Vec<Integer>,
    pub stage1: Vec<Stage1Row>,
    pub stage2_max: Vec<(String, i64)>,
    pub n2_final: i64,
    pub n2_anchor: i64,
    pub k2_computed: i64,
    pub k2_anchor: i64,
}

const SMALL_X1: u64 = 1000;
const MOD_P: u64 = (1u64 << 61) - 1;

fn mod_p(x: &Integer) -> u64 {
    (x % &Integer::from(MOD_P)).complete().to_u64().unwrap()
}

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD_P as u128) as u64
}

/// `x_k mod p` for the synthetic fundamental coordinate `x1`.
fn closed_form_mod(x1m: u64, family: Family, eps: i32, k: u64, z0_quad: bool) -> u64 {
    let c = match family {
        Family::Unit => mulmod(2, x1m),
        Family::Quad => x1m,
    };
    let mut zm1 = if z0_quad { 2u64 } else { 1u64 }; // x_0
    let mut z = x1m; // x_1
    for _ in 1..k {
        let t = mulmod(c, z);
        let sub = if eps == 1 { zm1 } else { MOD_P - zm1 };
        let next = (t + MOD_P - sub % MOD_P) % MOD_P;
        zm1 = z;
        z = next;
    }
    z
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// The canonical Padovan indices `{0, 3, 5, 6, ..., n_max}` and values.
fn canonical_values(n_max: usize) -> (Vec<usize>, Vec<Integer>) {
    let mut idx = vec![0usize, 3];
    idx.extend(5..=n_max);
    let vals: Vec<Integer> = idx.iter().map(|&i| crate::padovan::padovan(i)).collect();
    (idx, vals)
}

/// Exhaustive fundamental-coordinate search: all `(k, x1, eps)` with
/// `k in {2} ∪ odd primes <= k_max` and `closed_form(x1, k) = P_n + P_m`
/// inside the box. Composite `k` are covered by the prime-divisor argument
/// (a solution at `k = ab` is a solution at `k = a` for a larger
/// fundamental coordinate), so prime exponents find every d.
pub fn stage_a_search(family: Family, n_max: usize, k_max: u64) -> Vec<(u64, Integer, i32)> {
    let (_, vals) = canonical_values(n_max);
    let x_max: Integer = vals.last().unwrap().clone() * 2u32;
    let max_bits = x_max.significant_bits() as f64;

    // small-x1 sweep: every prime exponent, coordinates up to SMALL_X1
    let mut hits: HashSet<(u64, Integer, i32)> = HashSet::new();
    let sorted = vals.clone(); // strictly for membership testing (sorted)
    let representable = |v: &Integer| -> bool {
        if v.cmp0() == Ordering::Less || *v > x_max {
            return false;
        }
        // largest canonical P <= v, then P >= v/2 candidates
        let mut i = match sorted.binary_search(v) {
            Ok(i) => i,
            Err(0) => return false,
            Err(i) => i - 1,
        };
        loop {
            let rest = (v - &sorted[i]).complete();
            if rest > sorted[i] {
                break;
            }
            if sorted.binary_search(&rest).is_ok() {
                return true;
            }
            if i == 0 {
                break;
            }
            i -= 1;
        }
        false
    };

    for x1 in 1..=SMALL_X1 {
        for eps in [1i32, -1] {
            if family == Family::Quad && eps == 1 && x1 <= 2 {
                continue; // rho <= 1: no valid fundamental
            }
            let xi = Integer::from(x1);
            let mut k = 2u64;
            loop {
                if k > k_max {
                    break;
                }
                if k == 2 || is_prime_u64(k) {
                    let v = pell::closed_form(&xi, family, eps, k);
                    if v > x_max {
                        break;
                    }
                    if v >= 1 && representable(&v) {
                        hits.insert((k, xi.clone(), eps));
                    }
                } else {
                    // cheap growth check to terminate
                    let v = pell::closed_form(&xi, family, eps, k);
                    if v > x_max {
                        break;
                    }
                }
                k += 1;
            }
        }
    }

    // large-x1 branch: per representable value, invert each prime exponent
    let n_vals = vals.len();
    let primes: Vec<u64> = (3..=k_max.min(2000)).filter(|&k| is_prime_u64(k)).collect();
    let small = Integer::from(SMALL_X1);
    let large_hits: Vec<(u64, Integer, i32)> = (0..n_vals)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut local = Vec::new();
            for j in 0..=i {
                let x = (&vals[i] + &vals[j]).complete();
                if x < 3 {
                    continue;
                }
                let xbits = x.significant_bits() as f64;
                let xmod = mod_p(&x);
                // k = 2 by direct square extraction
                for eps in [1i32, -1] {
                    let sq_target = match family {
                        Family::Unit => {
                            let t = x.clone() + eps;
                            if t.is_odd() { None } else { Some(t / 2u32) }
                        }
                        Family::Quad => Some(x.clone() + 2 * eps),
                    };
                    if let Some(t) = sq_target {
                        if let Some(r) = pell::perfect_sqrt(&t) {
                            if r > small
                                && !(family == Family::Quad && eps == 1 && r <= 2)
                                && pell::closed_form(&r, family, eps, 2) == x
                            {
                                local.push((2u64, r, eps));
                            }
                        }
                    }
                }
                // prime k >= 3 with x1 > SMALL_X1. The root, the candidate
                // window, and its residue are identical for both signs, so
                // compute them once per (x, k).
                let ln_delta_min = match family {
                    Family::Unit => ((2 * SMALL_X1) as f64).ln(),
                    Family::Quad => (SMALL_X1 as f64).ln(),
                };
                let k_cap = ((xbits + 2.0) * std::f64::consts::LN_2 / ln_delta_min) as u64;
                let base = match family {
                    Family::Unit => x.clone() * 2u32,
                    Family::Quad => x.clone(),
                };
                for &k in primes.iter().take_while(|&&k| k <= k_cap) {
                    let r = base.clone().root(k as u32);
                    let center = match family {
                        Family::Unit => r / 2u32,
                        Family::Quad => r,
                    };
                    let center_mod = mod_p(&center);
                    for off in -1i64..=2 {
                        let cand_mod = (center_mod as i64 + off).rem_euclid(MOD_P as i64) as u64;
                        for eps in [1i32, -1] {
                            if closed_form_mod(cand_mod, family, eps, k, family == Family::Quad)
                                != xmod
                            {
                                continue;
                            }
                            let cand = center.clone() + off;
                            if cand <= small {
                                continue;
                            }
                            if pell::closed_form(&cand, family, eps, k) == x {
                                local.push((k, cand, eps));
                            }
                        }
                    }
                }
            }
            local
        })
        .collect();
    hits.extend(large_hits);

    let _ = max_bits;
    let mut out: Vec<(u64, Integer, i32)> = hits.into_iter().collect();
    out.sort_by(|a, b| (b.2, &a.1, a.0).cmp(&(a.2, &b.1, b.0)));
    out
}

/// Stage-1 / stage-2 Baker–Davenport pass for one candidate unit.
/// Multiply two elements of `Z[alpha]` written on the basis
/// `(1, alpha, alpha^2)`, reducing by `alpha^3 = alpha + 1`.
fn qalpha_mul(a: &[Integer; 3], b: &[Integer; 3]) -> [Integer; 3] {
    let mut c = [
        Integer::new(),
        Integer::new(),
        Integer::new(),
        Integer::new(),
        Integer::new(),
    ];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            c[i + j] += Integer::from(ai * bj);
        }
    }
    // x^3 = x + 1, x^4 = x^2 + x
    let c4 = c[4].clone();
    c[2] += &c4;
    c[1] += &c4;
    let c3 = c[3].clone();
    c[1] += &c3;
    c[0] += &c3;
    [c[0].clone(), c[1].clone(), c[2].clone()]
}

/// `alpha^e` on the basis `(1, alpha, alpha^2)` for `e >= 0`.
fn qalpha_pow(e: i64) -> [Integer; 3] {
    let mut r = [Integer::from(1), Integer::new(), Integer::new()];
    for _ in 0..e {
        // multiply by alpha: (c0, c1, c2) -> (c2, c0 + c2, c1)
        let [c0, c1, c2] = r;
        r = [c2.clone(), c0 + &c2, c1];
    }
    r
}

/// Exact test for a degenerate stage-2 offset: is `mu_w` an integer `j`?
/// `mu_w = j` unwinds to `k a (alpha^w + 1) = alpha^{w-j}` with `k = 2`
/// (unit family) or `k = 1` (quad), and `a = (alpha^2 + alpha)/(3 alpha^2 - 1)`,
/// so the claim is decided exactly in `Z[alpha]`:
/// `k (alpha^2 + alpha)(alpha^w + 1) = (3 alpha^2 - 1) alpha^{w-j}`.
/// A float estimate of `mu_w` picks the only candidate `j`; the polynomial
/// identity then certifies or refutes it. (One such degeneracy exists:
/// quad `w = 11`, where `a (alpha^{11} + 1) = alpha^{10}` exactly, i.e.
/// `mu_11 = 1`.)
fn bd_mu_integral(family: Family, w: i64) -> Option<i64> {
    let alpha = 1.324_717_957_244_746_f64;
    let a = alpha * (alpha + 1.0) / (3.0 * alpha * alpha - 1.0);
    let corr = (1.0 + alpha.powi(-(w as i32))).ln();
    let mu = match family {
        Family::Unit => -((2.0 * a).ln() + corr) / alpha.ln(),
        Family::Quad => (-a.ln() - corr) / alpha.ln(),
    };
    let j = mu.round() as i64;
    if (mu - j as f64).abs() > 1e-6 {
        return None;
    }
    let k = match family {
        Family::Unit => 2,
        Family::Quad => 1,
    };
    let mut num = qalpha_pow(w);
    num[0] += 1; // alpha^w + 1
    let mut lhs = qalpha_mul(&num, &[Integer::new(), Integer::from(k), Integer::from(k)]);
    let mut rhs = [Integer::from(-1), Integer::new(), Integer::from(3)];
    let e = w - j;
    if e >= 0 {
        rhs = qalpha_mul(&rhs, &qalpha_pow(e));
    } else {
        lhs = qalpha_mul(&lhs, &qalpha_pow(-e));
    }
    if lhs == rhs {
        Some(j)
    } else {
        None
    }
}

fn bd_for_candidate(
    family: Family,
    cand: &Candidate,
    s: &FamilySheet,
) -> Result<(Stage1Row, i64)> {
    // CF of tau_t = log(unit)/log(alpha), expanded past 6 * M_stage2
    let m1 = int_anchor(s.m_final);
    let m2 = int_anchor(s.m_stage2);
    let six_m2 = Integer::from(6) * &m2;
    let c2 = cand.clone();
    let mut terms = 110;
    let (cf, prec_used) = loop {
        let policy = crate::bigreal::default_policy();
        let c3 = c2.clone();
        let cf = contfrac::expand(&c2.describe(family), terms, &policy, move |p| {
            let c = consts(p)?;
            Ok(c3.unit_value(family, p).ln().div(&c.ln_alpha))
        })?;
        if cf.convergents.iter().any(|(_, q)| *q > six_m2) {
            // precision that certified the expansion is enough for BD work
            break (cf, 1024u32);
        }
        terms += 40;
        if terms > 400 {
            return Err(Error::InsufficientExpansion(format!(
                "tau_t for {}",
                c2.describe(family)
            )));
        }
    };

    let policy = PrecisionPolicy {
        start_bits: prec_used,
        max_bits: 1 << 20,
    };

    // stage 1: mu = log(2a)/log(alpha^-1) (unit) or log(a)/log(alpha^-1)
    let stage1_out = policy.run("bd stage 1", |p| {
        let c = consts(p)?;
        let neg_ln_alpha = c.ln_alpha.neg();
        let mu = match family {
            Family::Unit => c.ln_two_a.div(&neg_ln_alpha),
            Family::Quad => c.abs_ln_a.neg().div(&neg_ln_alpha),
        };
        let inst = BDInstance {
            tau: c2.unit_value(family, p).ln().div(&c.ln_alpha),
            mu,
            a: BigReal::from_i64(s.bd1_a_num as i64, p).div(&c.ln_alpha),
            b: c.alpha.clone(),
            m: m1.clone(),
        };
        reduction::bd_reduce(&inst, &cf)
    })?;
    let b_t = stage1_out
        .bound
        .to_i64()
        .ok_or_else(|| Error::AmbiguousComparison("stage-1 bound overflow".into()))?;
    let row = Stage1Row {
        d: cand.d.to_string(),
        delta: cand.describe(family),
        q_index: stage1_out.q_index,
        q_log10: stage1_out.q.to_f64().log10(),
        epsilon: stage1_out.epsilon.lo().to_f64(),
        b: b_t,
    };

    // stage 2: for each w = n2 - m2 in [1, b_t], mu depends on w
    let mut stage2_best = 0i64;
    for w in 1..=b_t {
        if bd_mu_integral(family, w).is_some() {
            // mu_w is exactly an integer, so ||mu q|| = 0 at every convergent
            // and the reduction lemma can never certify epsilon > 0.  The
            // inhomogeneous term merges into v, leaving |u tau - v'| with
            // 1 <= u <= M.  Best approximation: with N the first index where
            // q_N > M, every u <= M < q_N satisfies ||u tau|| >= ||q_{N-1} tau||,
            // so A B^{-W} > ||q_{N-1} tau|| forces W <= log(A/||q_{N-1} tau||)/log B.
            let lb = contfrac::legendre_bound(&cf, &m2)?;
            let q_prev = cf.convergents[lb.n_index - 1].1.clone();
            let bound = policy.run("bd stage 2 (integral mu)", |p| {
                let c = consts(p)?;
                let tau = c2.unit_value(family, p).ln().div(&c.ln_alpha);
                let dist = reduction::dist_to_nearest(
                    &tau.mul(&BigReal::from_integer(&q_prev, p)),
                )?;
                let val = BigReal::from_i64(s.bd2_a_num as i64, p)
                    .div(&c.ln_alpha)
                    .div(&dist)
                    .ln()
                    .div(&c.ln_alpha);
                match val.certified_floor() {
                    Ok(b) => Ok(b),
                    Err(_) => val.hi().clone().floor().to_integer().ok_or_else(|| {
                        Error::AmbiguousComparison("degenerate cutoff not finite".into())
                    }),
                }
            })?;
            stage2_best = stage2_best.max(bound.to_i64().unwrap_or(i64::MAX));
            continue;
        }
        let out = policy.run("bd stage 2", |p| {
            let c = consts(p)?;
            let one = BigReal::from_i64(1, p);
            let neg_ln_alpha = c.ln_alpha.neg();
            let corr = one.add(&c.alpha.pow_i64(-w)).ln();
            let mu = match family {
                Family::Unit => c.ln_two_a.add(&corr).div(&neg_ln_alpha),
                Family::Quad => c.abs_ln_a.neg().add(&corr).div(&neg_ln_alpha),
            };
            let inst = BDInstance {
                tau: c2.unit_value(family, p).ln().div(&c.ln_alpha),
                mu,
                a: BigReal::from_i64(s.bd2_a_num as i64, p).div(&c.ln_alpha),
                b: c.alpha.clone(),
                m: m2.clone(),
            };
            reduction::bd_reduce(&inst, &cf)
        })?;
        let b2 = out.bound.to_i64().unwrap_or(i64::MAX);
        stage2_best = stage2_best.max(b2);
    }
    Ok((row, stage2_best))
}

pub fn final_reduction(family: Family, mode: SweepMode) -> Result<FinalReduction> {
    let s = sheet(family);
    let prec = 320;
    // Sample mode searches a reduced index box (every known hit involves
    // Padovan indices below 60; 140 leaves a wide margin) so the smoke path
    // stays fast; Full covers the entire certified box from the first
    // reduction.
    let n_box = match mode {
        SweepMode::Sample => 140,
        SweepMode::Full => s.c2_expect.n1 as usize,
    };
    let k_box = s.k1_anchor;

    // (a) candidate search
    let raw = stage_a_search(family, n_box, k_box);
    let mut hits = Vec::new();
    let mut by_d: BTreeMap<Integer, Candidate> = BTreeMap::new();
    let mut scan_ds: HashSet<Integer> = HashSet::new();
    for (k, x1, eps) in &raw {
        let pairs = pell::recover_d(x1, family, *eps)?;
        if pairs.is_empty() {
            continue;
        }
        for (d, _) in &pairs {
            scan_ds.insert(d.clone());
        }
        // table attribution: minimal d = maximal y
        let (d, y) = pairs
            .iter()
            .max_by(|a, b| a.1.cmp(&b.1))
            .cloned()
            .unwrap();
        let v = pell::closed_form(x1, family, *eps, *k);
        hits.push(Hit {
            k: *k,
            x1: x1.to_string(),
            eps: *eps,
            value_digits: v.to_string_radix(10).len(),
            d: d.to_string(),
            y1: y.to_string(),
        });
        let cand = Candidate {
            d: d.clone(),
            x1: x1.clone(),
            y1: y,
            eps: *eps,
        };
        by_d
            .entry(d)
            .and_modify(|c| {
                if cand.x1 < c.x1 {
                    *c = cand.clone();
                }
            })
            .or_insert(cand);
    }
    let candidates: Vec<Candidate> = by_d.into_values().collect();

    // (b)+(c) Baker–Davenport stages per candidate
    let bd: Result<Vec<(Stage1Row, i64)>> = candidates
        .par_iter()
        .map(|c| bd_for_candidate(family, c, &s))
        .collect();
    let bd = bd?;
    let stage1: Vec<Stage1Row> = bd.iter().map(|(r, _)| r.clone()).collect();
    let stage2_max: Vec<(String, i64)> = bd
        .iter()
        .map(|(r, m)| (r.delta.clone(), *m))
        .collect();
    let n2_final = stage2_max.iter().map(|(_, m)| *m).max().unwrap_or(0);

    // (d) k2 from u^k <= 2 alpha^{n + off}
    let c = consts(prec)?;
    let u_min = match family {
        Family::Unit => BigReal::from_i64(2, prec).sqrt().add(&BigReal::from_i64(1, prec)),
        Family::Quad => BigReal::from_i64(5, prec)
            .sqrt()
            .add(&BigReal::from_i64(1, prec))
            .div(&BigReal::from_i64(2, prec)),
    };
    let num = BigReal::from_i64(n2_final.max(s.n2_final_anchor) + s.k2_n_offset as i64, prec)
        .mul(&ln_133(prec))
        .add(&BigReal::from_i64(2, prec).ln());
    let k2_computed = floor_hi(&num.div(&u_min.ln()))?;
    let _ = &c;

    let mut scan_ds: Vec<Integer> = scan_ds.into_iter().collect();
    scan_ds.sort();

    Ok(FinalReduction {
        family,
        mode,
        hits,
        candidates,
        scan_ds,
        stage1,
        stage2_max,
        n2_final,
        n2_anchor: s.n2_final_anchor,
        k2_computed,
        k2_anchor: s.k2_anchor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchors_parse() {
        assert_eq!(int_anchor("5e42"), Integer::from(5) * Integer::from(10u32).pow(42));
        assert_eq!(
            int_anchor("4.87e165"),
            Integer::from(487) * Integer::from(10u32).pow(163)
        );
        assert_eq!(int_anchor("3.36e44").to_string().len(), 45);
    }

    #[test]
    fn absolute_chain_unit() {
        let ab = absolute_bounds(Family::Unit).unwrap();
        for st in &ab.stages {
            assert!(st.ok, "stage {} failed: {:?}", st.label, st);
        }
    }

    #[test]
    fn absolute_chain_quad() {
        let ab = absolute_bounds(Family::Quad).unwrap();
        for st in &ab.stages {
            assert!(st.ok, "stage {} failed: {:?}", st.label, st);
        }
    }
}
