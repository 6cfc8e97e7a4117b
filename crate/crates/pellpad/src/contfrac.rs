//! Certified continued-fraction expansion of computable reals, convergents,
//! the Legendre-lemma quotient bound `a(M)`, and the periodic expansion of
//! quadratic surds.
//!
//! Partial quotients are extracted by running the interval version of the
//! Euclidean algorithm on the exact rational endpoints of a [`BigReal`]
//! enclosure: a quotient is accepted only when both endpoints share the same
//! floor, so every accepted quotient is provably a partial quotient of every
//! real in the enclosure — in particular of the target irrational. When the
//! enclosure is too coarse to pin the next quotient, the caller's precision
//! policy doubles the working precision and retries.

use crate::bigreal::{BigReal, PrecisionPolicy};
use crate::{Error, Result};
use rug::{Complete, Integer, Rational};

/// A certified initial segment of a continued fraction.
#[derive(Debug, Clone)]
pub struct CFExpansion {
    /// Human-readable description of the expanded number.
    pub source: String,
    /// Partial quotients `a_0, a_1, ...` (all certified).
    pub quotients: Vec<Integer>,
    /// Convergents `(p_i, q_i)` aligned with `quotients`.
    pub convergents: Vec<(Integer, Integer)>,
}

impl CFExpansion {
    /// Build the convergent table from quotients.
    fn from_quotients(source: String, quotients: Vec<Integer>) -> Self {
        let mut convergents: Vec<(Integer, Integer)> = Vec::with_capacity(quotients.len());
        let (mut p_prev, mut p) = (Integer::from(0), Integer::from(1));
        let (mut q_prev, mut q) = (Integer::from(1), Integer::from(0));
        // (p_{-2}, p_{-1}) = (0, 1); (q_{-2}, q_{-1}) = (1, 0)
        for a in &quotients {
            let p_next = (a * &p).complete() + &p_prev;
            let q_next = (a * &q).complete() + &q_prev;
            p_prev = std::mem::replace(&mut p, p_next);
            q_prev = std::mem::replace(&mut q, q_next);
            convergents.push((p.clone(), q.clone()));
        }
        CFExpansion {
            source,
            quotients,
            convergents,
        }
    }

    /// Number of certified partial quotients.
    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    /// Verify the determinant identity `p_i q_{i-1} - p_{i-1} q_i = (-1)^{i-1}`
    /// on the whole table (used by tests and certificate checks).
    pub fn check_determinants(&self) -> bool {
        for i in 1..self.convergents.len() {
            let (p1, q1) = &self.convergents[i];
            let (p0, q0) = &self.convergents[i - 1];
            let det = (p1 * q0).complete() - (p0 * q1).complete();
            let expect = if i % 2 == 1 { 1 } else { -1 };
            if det != expect {
                return false;
            }
        }
        true
    }
}

/// Floor of an exact rational.
fn rfloor(r: &Rational) -> Integer {
    let (q, _) = r.numer().clone().div_rem_floor(r.denom().clone());
    q
}

/// Extract as many certified partial quotients as the enclosure allows
/// (at most `n_terms`).
fn quotients_from_interval(x: &BigReal, n_terms: usize) -> Result<Vec<Integer>> {
    let mut lo = x
        .lo()
        .to_rational()
        .ok_or_else(|| Error::AmbiguousComparison("non-finite CF input".into()))?;
    let mut hi = x
        .hi()
        .to_rational()
        .ok_or_else(|| Error::AmbiguousComparison("non-finite CF input".into()))?;
    let mut out = Vec::new();
    while out.len() < n_terms {
        let flo = rfloor(&lo);
        let fhi = rfloor(&hi);
        if flo != fhi {
            break;
        }
        let frac_lo = lo - Rational::from(&flo);
        let frac_hi = hi - Rational::from(&flo);
        out.push(flo);
        if frac_lo.cmp0() == std::cmp::Ordering::Equal
            || frac_hi.cmp0() == std::cmp::Ordering::Equal
        {
            // endpoint hit an integer exactly: cannot certify further
            break;
        }
        // reciprocal swaps the endpoints
        lo = frac_hi.recip();
        hi = frac_lo.recip();
    }
    Ok(out)
}

/// Expand a computable real to `n_terms` certified partial quotients.
/// `value` must produce an enclosure of the same real at any requested
/// precision; precision is doubled until the quotients are pinned.
pub fn expand(
    source: &str,
    n_terms: usize,
    policy: &PrecisionPolicy,
    mut value: impl FnMut(u32) -> Result<BigReal>,
) -> Result<CFExpansion> {
    policy.run(&format!("continued fraction of {source}"), |prec| {
        let x = value(prec)?;
        let qs = quotients_from_interval(&x, n_terms)?;
        if qs.len() < n_terms {
            return Err(Error::AmbiguousComparison(format!(
                "only {} of {} quotients certified at {} bits",
                qs.len(),
                n_terms,
                prec
            )));
        }
        Ok(CFExpansion::from_quotients(source.to_string(), qs))
    })
}

/// Outcome of the Legendre quotient bound.
#[derive(Debug, Clone)]
pub struct LegendreBound {
    /// Smallest `N` with `q_N > M`.
    pub n_index: usize,
    /// That denominator `q_N`.
    pub q_n: Integer,
    /// `a(M) = max{a_i : i <= N}`.
    pub a_max: Integer,
    /// Index attaining the maximum quotient.
    pub a_max_index: usize,
}

/// Legendre lemma data: smallest `N` with `q_N > M` and
/// `a(M) = max{a_i : 0 <= i <= N}`. Then `|tau - r/s| > 1/((a(M)+2) s^2)`
/// for all `0 < s < M`.
pub fn legendre_bound(cf: &CFExpansion, m: &Integer) -> Result<LegendreBound> {
    let n_index = cf
        .convergents
        .iter()
        .position(|(_, q)| q > m)
        .ok_or_else(|| {
            Error::InsufficientExpansion(format!(
                "no convergent denominator exceeds M (have {} terms of {})",
                cf.len(),
                cf.source
            ))
        })?;
    let (a_max_index, a_max) = cf.quotients[..=n_index]
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| a.cmp(b))
        .map(|(i, a)| (i, a.clone()))
        .expect("nonempty quotient list");
    Ok(LegendreBound {
        n_index,
        q_n: cf.convergents[n_index].1.clone(),
        a_max,
        a_max_index,
    })
}

/// Periodic continued fraction of `sqrt(d)`: returns `(a0, period)` via the
/// exact quadratic-surd state machine.
pub fn sqrt_cf(d: &Integer) -> Result<(Integer, Vec<Integer>)> {
    let a0 = d.clone().sqrt();
    if (&a0 * &a0).complete() == *d {
        return Err(Error::SquareD(d.to_string()));
    }
    let mut period = Vec::new();
    let mut p = Integer::from(0);
    let mut q = Integer::from(1);
    let mut a = a0.clone();
    loop {
        p = (&a * &q).complete() - &p;
        let pp = (&p * &p).complete();
        q = Integer::from(d - &pp) / &q;
        a = (&p + &a0).complete() / &q;
        period.push(a.clone());
        if q == 1 {
            // the period closes with the quotient 2*a0
            return Ok((a0, period));
        }
    }
}
