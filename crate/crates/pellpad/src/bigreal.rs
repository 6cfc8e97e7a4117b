//! Interval ("ball") arithmetic over MPFR floats with directed rounding.
//!
//! A [`BigReal`] is a closed interval `[lo, hi]` whose endpoints are MPFR
//! floats at a fixed working precision. Every operation rounds the lower
//! endpoint down and the upper endpoint up, so the true real result of the
//! corresponding exact operation is always contained in the output interval.
//!
//! Domain violations (division by an interval containing zero, `ln` of an
//! interval touching the non-positive axis, ...) do not error out: they
//! *poison* the result with infinite endpoints. Certification points —
//! [`BigReal::certified_floor`], [`BigReal::certified_cmp`],
//! [`BigReal::certified_round_nearest`] — then fail with a
//! precision-related error, and the caller's [`PrecisionPolicy`] retry loop
//! doubles the working precision. This keeps the arithmetic layer infallible
//! and concentrates failure handling at the few places that actually commit
//! to an integer or a sign.

use crate::{Error, Result};
use rug::float::Round;
use rug::ops::{AssignRound, NegAssign, Pow};
use rug::{Float, Integer, Rational};
use std::cmp::Ordering;

/// Construct a float of precision `prec` from an incomplete-computation
/// value, rounding in direction `rnd`.
fn fnew<S>(prec: u32, src: S, rnd: Round) -> Float
where
    Float: AssignRound<S, Round = Round, Ordering = Ordering>,
{
    let mut f = Float::new(prec);
    f.assign_round(src, rnd);
    f
}

/// A closed real interval with directed-rounding endpoint arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct BigReal {
    lo: Float,
    hi: Float,
}

impl BigReal {
    /// Working precision of the endpoints, in bits.
    pub fn prec(&self) -> u32 {
        self.lo.prec()
    }

    /// Lower endpoint.
    pub fn lo(&self) -> &Float {
        &self.lo
    }

    /// Upper endpoint.
    pub fn hi(&self) -> &Float {
        &self.hi
    }

    /// Build from explicit endpoints. Panics if `lo > hi` (programming error).
    pub fn from_endpoints(lo: Float, hi: Float) -> Self {
        assert!(
            !(lo > hi),
            "BigReal endpoints out of order: lo={lo} hi={hi}"
        );
        BigReal { lo, hi }
    }

    /// The point interval for an exact integer (widened only if the integer
    /// needs more than `prec` bits).
    pub fn from_integer(v: &Integer, prec: u32) -> Self {
        BigReal {
            lo: fnew(prec, v, Round::Down),
            hi: fnew(prec, v, Round::Up),
        }
    }

    /// The point interval for a small signed integer.
    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_integer(&Integer::from(v), prec)
    }

    /// The tightest `prec`-bit interval around an exact rational.
    pub fn from_rational(v: &Rational, prec: u32) -> Self {
        BigReal {
            lo: fnew(prec, v, Round::Down),
            hi: fnew(prec, v, Round::Up),
        }
    }

    /// Parse a decimal literal into the tightest enclosing interval.
    /// Accepts anything `Rational` can parse plus decimal-point/exponent
    /// forms like `"2.33e17"`.
    pub fn from_decimal(s: &str, prec: u32) -> Result<Self> {
        let rat = parse_decimal(s)
            .ok_or_else(|| Error::Usage(format!("cannot parse decimal literal {s:?}")))?;
        Ok(Self::from_rational(&rat, prec))
    }

    /// Exact zero at the given precision.
    pub fn zero(prec: u32) -> Self {
        BigReal {
            lo: Float::new(prec),
            hi: Float::new(prec),
        }
    }

    /// Midpoint of the interval (rounded to nearest; not certified).
    pub fn midpoint(&self) -> Float {
        let prec = self.prec();
        let mut m = fnew(prec + 8, &self.lo + &self.hi, Round::Nearest);
        m /= 2u32;
        m
    }

    /// An upper bound on the interval radius.
    pub fn radius(&self) -> Float {
        let mut r = fnew(self.prec(), &self.hi - &self.lo, Round::Up);
        r /= 2u32;
        if r.is_sign_negative() {
            r.neg_assign();
        }
        r
    }

    /// True if either endpoint is non-finite (poisoned interval).
    pub fn is_poisoned(&self) -> bool {
        !self.lo.is_finite() || !self.hi.is_finite()
    }

    /// A poisoned (whole-line) interval, used when a domain violation occurs.
    fn poisoned(prec: u32) -> Self {
        let mut lo = Float::with_val(prec, 1u32);
        let mut hi = Float::with_val(prec, 1u32);
        lo.assign_round(rug::float::Special::NegInfinity, Round::Down);
        hi.assign_round(rug::float::Special::Infinity, Round::Up);
        BigReal { lo, hi }
    }

    // ---- ring operations -------------------------------------------------

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec().max(other.prec());
        BigReal {
            lo: fnew(prec, &self.lo + &other.lo, Round::Down),
            hi: fnew(prec, &self.hi + &other.hi, Round::Up),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let prec = self.prec().max(other.prec());
        BigReal {
            lo: fnew(prec, &self.lo - &other.hi, Round::Down),
            hi: fnew(prec, &self.hi - &other.lo, Round::Up),
        }
    }

    pub fn neg(&self) -> Self {
        BigReal {
            lo: fnew(self.prec(), -&self.hi, Round::Down),
            hi: fnew(self.prec(), -&self.lo, Round::Up),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec().max(other.prec());
        // Interval product: min/max over all four endpoint products, each
        // rounded in the safe direction.
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let d = fnew(prec, a * b, Round::Down);
            let u = fnew(prec, a * b, Round::Up);
            lo = Some(match lo {
                None => d,
                Some(cur) => {
                    if d < cur {
                        d
                    } else {
                        cur
                    }
                }
            });
            hi = Some(match hi {
                None => u,
                Some(cur) => {
                    if u > cur {
                        u
                    } else {
                        cur
                    }
                }
            });
        }
        BigReal {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self.mul(&BigReal::from_i64(k, self.prec()))
    }

    pub fn mul_integer(&self, k: &Integer) -> Self {
        self.mul(&BigReal::from_integer(k, self.prec()))
    }

    /// Reciprocal. Poisons the result if the interval contains zero.
    pub fn recip(&self) -> Self {
        let prec = self.prec();
        let straddles_zero = self.lo.is_sign_negative() != self.hi.is_sign_negative()
            || self.lo.is_zero()
            || self.hi.is_zero();
        if straddles_zero || self.is_poisoned() {
            return Self::poisoned(prec);
        }
        BigReal {
            lo: fnew(prec, self.hi.recip_ref(), Round::Down),
            hi: fnew(prec, self.lo.recip_ref(), Round::Up),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    pub fn abs(&self) -> Self {
        let prec = self.prec();
        if self.lo.is_sign_negative() && !self.hi.is_sign_negative() {
            // straddles zero
            let a = fnew(prec, self.lo.abs_ref(), Round::Up);
            let hi = if a > self.hi { a } else { self.hi.clone() };
            BigReal {
                lo: Float::new(prec),
                hi,
            }
        } else if self.hi.is_sign_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    // ---- monotone elementary functions -----------------------------------

    pub fn sqrt(&self) -> Self {
        let prec = self.prec();
        if self.hi.is_sign_negative() || self.is_poisoned() {
            return Self::poisoned(prec);
        }
        let lo_clamped = if self.lo.is_sign_negative() {
            Float::new(prec)
        } else {
            self.lo.clone()
        };
        BigReal {
            lo: fnew(prec, lo_clamped.sqrt_ref(), Round::Down),
            hi: fnew(prec, self.hi.sqrt_ref(), Round::Up),
        }
    }

    pub fn cbrt(&self) -> Self {
        let prec = self.prec();
        if self.is_poisoned() {
            return Self::poisoned(prec);
        }
        BigReal {
            lo: fnew(prec, self.lo.cbrt_ref(), Round::Down),
            hi: fnew(prec, self.hi.cbrt_ref(), Round::Up),
        }
    }

    pub fn ln(&self) -> Self {
        let prec = self.prec();
        if !(self.lo.is_sign_positive() && !self.lo.is_zero()) || self.is_poisoned() {
            return Self::poisoned(prec);
        }
        BigReal {
            lo: fnew(prec, self.lo.ln_ref(), Round::Down),
            hi: fnew(prec, self.hi.ln_ref(), Round::Up),
        }
    }

    pub fn exp(&self) -> Self {
        let prec = self.prec();
        if self.is_poisoned() {
            return Self::poisoned(prec);
        }
        BigReal {
            lo: fnew(prec, self.lo.exp_ref(), Round::Down),
            hi: fnew(prec, self.hi.exp_ref(), Round::Up),
        }
    }

    /// Integer power by repeated squaring (negative exponents via `recip`).
    pub fn pow_i64(&self, e: i64) -> Self {
        if e < 0 {
            return self.recip().pow_i64(-e);
        }
        let prec = self.prec();
        let mut acc = BigReal::from_i64(1, prec);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    // ---- certification ---------------------------------------------------

    /// Certified three-way comparison: `Some(ord)` only when the intervals
    /// are disjoint (or both are the same exact point).
    pub fn certified_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.is_poisoned() || other.is_poisoned() {
            return None;
        }
        if self.hi < other.lo {
            return Some(Ordering::Less);
        }
        if self.lo > other.hi {
            return Some(Ordering::Greater);
        }
        if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            return Some(Ordering::Equal);
        }
        None
    }

    /// Certified sign: `Some(ord)` relative to zero.
    pub fn certified_sign(&self) -> Option<Ordering> {
        self.certified_cmp(&BigReal::zero(self.prec()))
    }

    /// Certified floor: succeeds only when both endpoints share a floor.
    pub fn certified_floor(&self) -> Result<Integer> {
        if self.is_poisoned() {
            return Err(self.ambiguous_floor());
        }
        let flo = fnew(self.prec(), self.lo.floor_ref(), Round::Down);
        let fhi = fnew(self.prec(), self.hi.floor_ref(), Round::Down);
        if flo == fhi {
            flo.to_integer()
                .ok_or_else(|| self.ambiguous_floor())
        } else {
            Err(self.ambiguous_floor())
        }
    }

    /// Certified nearest integer: succeeds only when the whole interval
    /// rounds to one integer. Ties are not certified.
    pub fn certified_round_nearest(&self) -> Result<Integer> {
        let half = BigReal::from_rational(&Rational::from((1u32, 2u32)), self.prec());
        self.add(&half).certified_floor()
    }

    fn ambiguous_floor(&self) -> Error {
        Error::AmbiguousFloor {
            lo: self.lo.to_string_radix(10, Some(20)),
            hi: self.hi.to_string_radix(10, Some(20)),
        }
    }

    /// `f64` approximation of the midpoint, for reporting only.
    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }

    /// Short scientific-notation rendering of the midpoint, for reports.
    /// Works far outside `f64` range by formatting mantissa and exponent
    /// from the radix-10 representation.
    pub fn to_sci_string(&self, digits: usize) -> String {
        let m = self.midpoint();
        if m.is_zero() || !m.is_finite() {
            return m.to_f64().to_string();
        }
        let s = m.to_string_radix(10, Some(digits.max(2)));
        // rug renders as e.g. "4.870000e165" or "-1.2e-3" already.
        s
    }
}

/// Parse a decimal literal (optionally with `.` and `e`/`E` exponent) into an
/// exact rational.
fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mant.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mant, ""),
    };
    let digits: String = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return None;
    }
    let num = digits.parse::<Integer>().ok()?;
    let shift = exp - frac_part.len() as i64;
    let ten = Integer::from(10);
    let mut rat = Rational::from(num);
    if shift >= 0 {
        rat *= Rational::from(ten.pow(shift as u32));
    } else {
        rat /= Rational::from(ten.pow((-shift) as u32));
    }
    Some(rat)
}

// ---------------------------------------------------------------------------
// Precision policy
// ---------------------------------------------------------------------------

/// Retry policy for certified computations: start at `start_bits`, double on
/// precision-related failure, give up at `max_bits`.
#[derive(Debug, Clone, Copy)]
pub struct PrecisionPolicy {
    pub start_bits: u32,
    pub max_bits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            start_bits: 256,
            max_bits: 1 << 20,
        }
    }
}

/// Query the `PELLPAD_PRECISION_BITS` environment override for the starting
/// precision.
pub fn default_policy() -> PrecisionPolicy {
    let mut p = PrecisionPolicy::default();
    if let Ok(v) = std::env::var("PELLPAD_PRECISION_BITS") {
        if let Ok(bits) = v.parse::<u32>() {
            if bits >= 64 {
                p.start_bits = bits;
            }
        }
    }
    p
}

impl PrecisionPolicy {
    /// Fixed starting precision (useful for tests).
    pub fn fixed(start_bits: u32) -> Self {
        PrecisionPolicy {
            start_bits,
            max_bits: 1 << 20,
        }
    }

    /// Run `f` at increasing precision until it certifies or the budget runs
    /// out. Only precision-related errors trigger a retry.
    pub fn run<T>(&self, context: &str, mut f: impl FnMut(u32) -> Result<T>) -> Result<T> {
        let mut bits = self.start_bits;
        loop {
            match f(bits) {
                Ok(v) => return Ok(v),
                Err(e) if is_precision_related(&e) => {
                    if bits >= self.max_bits {
                        return Err(Error::PrecisionExhausted {
                            bits,
                            context: format!("{context}: {e}"),
                        });
                    }
                    bits = (bits * 2).min(self.max_bits);
                }
                Err(e) => return Err(e),
            }
        }
    }
}

fn is_precision_related(e: &Error) -> bool {
    matches!(
        e,
        Error::AmbiguousFloor { .. }
            | Error::AmbiguousComparison(_)
            | Error::PrecisionExhausted { .. }
    )
}

// ---------------------------------------------------------------------------
// Algebraic constants
// ---------------------------------------------------------------------------

/// Certified enclosures of the algebraic constants used throughout:
/// the plastic number `alpha` (real root of `x^3 - x - 1`), the Binet
/// coefficient `a = alpha (alpha + 1) / (3 alpha^2 - 1)`, and friends.
#[derive(Debug, Clone)]
pub struct AlgebraicConstants {
    pub prec: u32,
    /// Plastic number, real root of `x^3 - x - 1` in `(1.32, 1.33)`.
    pub alpha: BigReal,
    /// `alpha^{-1/2}`, the common modulus of the two complex roots.
    pub abs_beta: BigReal,
    /// Binet coefficient `a = alpha (alpha + 1) / (3 alpha^2 - 1)`.
    pub a: BigReal,
    /// `2 a`, root of `23 x^3 - 46 x^2 + 24 x - 8`.
    pub two_a: BigReal,
    /// Modulus of the conjugate Binet coefficients, `sqrt(1 / (23 a))`.
    pub abs_b: BigReal,
    /// `cbrt(108 + 12 sqrt(69))` (radical form: `alpha = (r1 + r2) / 6`).
    pub r1: BigReal,
    /// `cbrt(108 - 12 sqrt(69))`.
    pub r2: BigReal,
    /// `ln alpha`.
    pub ln_alpha: BigReal,
    /// `ln(2a)` (positive: `2a > 1`).
    pub ln_two_a: BigReal,
    /// `|ln a| = -ln a` (positive: `a < 1`).
    pub abs_ln_a: BigReal,
}

impl AlgebraicConstants {
    /// Compute all constants at working precision `prec`, with internal
    /// consistency checks (each algebraic value is verified against its
    /// minimal polynomial through exact rational endpoint evaluation).
    pub fn new(prec: u32) -> Result<Self> {
        let alpha = plastic_number(prec)?;
        let one = BigReal::from_i64(1, prec);
        let three = BigReal::from_i64(3, prec);

        // a = alpha (alpha + 1) / (3 alpha^2 - 1)
        let denom = three.mul(&alpha.mul(&alpha)).sub(&one);
        let a = alpha.mul(&alpha.add(&one)).div(&denom);
        let two_a = a.mul_i64(2);

        // Consistency: 23 a^3 - 23 a^2 + 6 a - 1 must contain 0.
        let p_a = a
            .pow_i64(3)
            .mul_i64(23)
            .sub(&a.pow_i64(2).mul_i64(23))
            .add(&a.mul_i64(6))
            .sub(&one);
        if p_a.certified_sign().is_some() {
            return Err(Error::Mismatch(
                "Binet coefficient a fails its minimal polynomial check".into(),
            ));
        }

        let abs_b = a.mul_i64(23).recip().sqrt();
        let abs_beta = alpha.recip().sqrt();

        // Radical form of alpha via Cardano: r_{1,2} = cbrt(108 ± 12 sqrt(69)).
        let s69 = BigReal::from_i64(69, prec).sqrt();
        let c108 = BigReal::from_i64(108, prec);
        let r1 = c108.add(&s69.mul_i64(12)).cbrt();
        let r2 = c108.sub(&s69.mul_i64(12)).cbrt();
        // Consistency: (r1 + r2) / 6 must overlap alpha.
        let alpha_rad = r1.add(&r2).div(&BigReal::from_i64(6, prec));
        if alpha_rad.sub(&alpha).certified_sign().is_some() {
            return Err(Error::Mismatch(
                "radical form (r1 + r2)/6 does not match the plastic number".into(),
            ));
        }

        let ln_alpha = alpha.ln();
        let ln_two_a = two_a.ln();
        let abs_ln_a = a.ln().neg();
        if ln_two_a.certified_sign() != Some(Ordering::Greater)
            || abs_ln_a.certified_sign() != Some(Ordering::Greater)
        {
            return Err(Error::AmbiguousComparison(
                "log constants not certified positive".into(),
            ));
        }

        Ok(AlgebraicConstants {
            prec,
            alpha,
            abs_beta,
            a,
            two_a,
            abs_b,
            r1,
            r2,
            ln_alpha,
            ln_two_a,
            abs_ln_a,
        })
    }
}

/// Certified enclosure of the plastic number: float Newton iteration for a
/// seed, then an interval certified by exact sign evaluation of
/// `p(x) = x^3 - x - 1` at dyadic endpoints.
fn plastic_number(prec: u32) -> Result<BigReal> {
    let work = prec + 32;
    // Newton iteration from a coarse seed; converges quadratically.
    let mut x = Float::with_val(work, 1.3247179572447460f64);
    for _ in 0..64 {
        let x2 = Float::with_val(work, &x * &x);
        let fx = Float::with_val(work, &x2 * &x) - &x - 1u32;
        let dfx = Float::with_val(work, &x2 * 3u32) - 1u32;
        let step = fx / dfx;
        let next = Float::with_val(work, &x - &step);
        if next == x {
            break;
        }
        x = next;
    }
    // Certify [x - e, x + e] by exact sign checks, widening if needed.
    let mut e = Float::with_val(work, Float::i_exp(1, -(prec as i32) + 2));
    for _ in 0..16 {
        let lo = Float::with_val(work, &x - &e);
        let hi = Float::with_val(work, &x + &e);
        let plo = eval_cubic_exact(&lo);
        let phi = eval_cubic_exact(&hi);
        if plo < 0 && phi > 0 {
            return Ok(BigReal {
                lo: fnew(prec, &lo, Round::Down),
                hi: fnew(prec, &hi, Round::Up),
            });
        }
        e *= 16u32;
    }
    Err(Error::PrecisionExhausted {
        bits: prec,
        context: "isolating the plastic number root".into(),
    })
}

/// Exact sign of `x^3 - x - 1` at a dyadic float, via rational arithmetic.
fn eval_cubic_exact(x: &Float) -> i32 {
    let r = x.to_rational().expect("finite float is exactly rational");
    let v = Rational::from(&r * &r) * &r - &r - 1u32;
    v.cmp0() as i32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plastic_number_encloses_reference() {
        // 30 reference digits of the plastic number.
        let c = AlgebraicConstants::new(128).unwrap();
        let reference = "1.32471795724474602596090885448";
        let r = BigReal::from_rational(&parse_decimal(reference).unwrap(), 128);
        // |alpha - ref| < 1e-28
        let diff = c.alpha.sub(&r).abs();
        let tol = BigReal::from_decimal("1e-28", 128).unwrap();
        assert_eq!(diff.certified_cmp(&tol), Some(Ordering::Less));
    }

    #[test]
    fn derived_constants_match_references() {
        let c = AlgebraicConstants::new(256).unwrap();
        let checks = [
            (&c.two_a, "1.444248", "1.444249"),
            (&c.ln_alpha, "0.281199", "0.281200"),
            (&c.abs_beta, "0.868836", "0.868838"),
            (&c.ln_two_a, "0.367589", "0.367590"),
        ];
        for (val, lo, hi) in checks {
            let lo = BigReal::from_decimal(lo, 256).unwrap();
            let hi = BigReal::from_decimal(hi, 256).unwrap();
            assert_eq!(val.certified_cmp(&lo), Some(Ordering::Greater), "{val:?}");
            assert_eq!(val.certified_cmp(&hi), Some(Ordering::Less), "{val:?}");
        }
    }

    #[test]
    fn floor_certifies_and_rejects() {
        let prec = 128;
        let x = BigReal::from_decimal("2.9999", prec).unwrap();
        assert_eq!(x.certified_floor().unwrap(), Integer::from(2));
        // An interval straddling 3 cannot certify a floor.
        let straddle = BigReal::from_endpoints(
            Float::with_val(prec, 2.9999),
            Float::with_val(prec, 3.0001),
        );
        assert!(straddle.certified_floor().is_err());
    }

    #[test]
    fn division_by_zero_poisons_and_fails_certification() {
        let prec = 64;
        let z = BigReal::from_endpoints(Float::with_val(prec, -1), Float::with_val(prec, 1));
        let r = BigReal::from_i64(1, prec).div(&z);
        assert!(r.is_poisoned());
        assert!(r.certified_floor().is_err());
        assert!(r.certified_sign().is_none());
    }

    #[test]
    fn precision_policy_retries_until_certified() {
        // floor(ln(2a)/ln(alpha) * 10^40) requires more than 64 bits; the
        // policy should escalate and still certify.
        let policy = PrecisionPolicy {
            start_bits: 64,
            max_bits: 1 << 16,
        };
        let v = policy
            .run("tau scale test", |prec| {
                let c = AlgebraicConstants::new(prec)?;
                let tau = c.ln_two_a.div(&c.ln_alpha);
                let scale = BigReal::from_integer(&Integer::from(10).pow(40), prec);
                tau.mul(&scale).certified_floor()
            })
            .unwrap();
        // tau = 1.3072187... so the leading digits are pinned.
        assert!(v.to_string().starts_with("130721"));
        assert_eq!(v.to_string().len(), 41);
    }

    #[test]
    fn interval_sqrt_directed_rounding() {
        let prec = 96;
        let two = BigReal::from_i64(2, prec);
        let s = two.sqrt();
        assert!(s.lo() < s.hi());
        let sq = s.mul(&s);
        // 2 must lie inside sqrt(2)^2.
        assert!(sq.lo() < &Float::with_val(prec, 2) && sq.hi() > &Float::with_val(prec, 2));
    }
}
