//! The four bound-producing engines:
//!
//! * logarithmic (Weil) heights of rationals and low-degree algebraics;
//! * the Matveev lower bound for linear forms in logarithms (formula
//!   evaluator — nondegeneracy is a proof-side obligation);
//! * Dujella–Pethő (Baker–Davenport) reduction against a continued
//!   fraction;
//! * exact-integer LLL reduction (δ = 3/4) with the certified
//!   shortest-nonzero-form lower bound `(sqrt(θ² − Q) − R)/C`;
//! * the Guzmán–Luca resolver for `H > L/(log L)^r`.
//!
//! All real quantities flow through [`BigReal`] intervals; all lattice and
//! Gram–Schmidt data is exact integer/rational arithmetic (entries reach
//! `10^1500`, far beyond floating range).

use crate::bigreal::BigReal;
use crate::contfrac::CFExpansion;
use crate::{Error, Result};
use rug::ops::Pow;
use rug::{Complete, Float, Integer, Rational};
use std::cmp::Ordering;

// ---------------------------------------------------------------------------
// Heights
// ---------------------------------------------------------------------------

/// `h(p/q) = log max(|p|, q)` for a reduced fraction, as an interval.
pub fn height_rational(p: &Integer, q: &Integer, prec: u32) -> Result<BigReal> {
    if q.cmp0() != Ordering::Greater {
        return Err(Error::Usage("height_rational needs q > 0".into()));
    }
    let m = p.clone().abs().max(q.clone());
    if m <= 1 {
        return Ok(BigReal::zero(prec));
    }
    Ok(BigReal::from_integer(&m, prec).ln())
}

/// Exact sign of a polynomial (descending coefficients) at a rational point.
fn poly_sign_at(coeffs: &[Integer], x: &Rational) -> i32 {
    let mut acc = Rational::new();
    for c in coeffs {
        acc *= x;
        acc += Rational::from(c);
    }
    acc.cmp0() as i32
}

/// Certified enclosure of a simple real root of `p` inside the integer
/// bracket `[lo, hi]` (signs must differ at the ends): exact bisection to
/// seed, float Newton to converge, exact sign evaluation to certify.
fn isolate_real_root(coeffs: &[Integer], lo: i64, hi: i64, prec: u32) -> Result<BigReal> {
    let work = prec + 32;
    let mut a = Rational::from(lo);
    let mut b = Rational::from(hi);
    let sa = poly_sign_at(coeffs, &a);
    if sa == 0 || poly_sign_at(coeffs, &b) == 0 || sa == poly_sign_at(coeffs, &b) {
        return Err(Error::Usage("isolate_real_root: bad bracket".into()));
    }
    // exact bisection until the bracket is small enough for Newton
    for _ in 0..80 {
        let mid = Rational::from((&a + &b).complete()) / 2u32;
        let sm = poly_sign_at(coeffs, &mid);
        if sm == 0 {
            // rational root: return the exact point
            return Ok(BigReal::from_rational(&mid, prec));
        }
        if sm == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    // float Newton from the bracket midpoint
    let mut x = Float::with_val(work, Rational::from((&a + &b).complete()) / 2u32);
    let deriv: Vec<Integer> = coeffs[..coeffs.len() - 1]
        .iter()
        .enumerate()
        .map(|(i, c)| c.clone() * ((coeffs.len() - 1 - i) as u32))
        .collect();
    let feval = |v: &Float, cs: &[Integer]| -> Float {
        let mut acc = Float::new(work);
        for c in cs {
            acc *= v;
            acc += c;
        }
        acc
    };
    for _ in 0..64 {
        let fx = feval(&x, coeffs);
        let dfx = feval(&x, &deriv);
        if dfx.is_zero() {
            break;
        }
        let next = Float::with_val(work, &x - fx / dfx);
        if next == x {
            break;
        }
        x = next;
    }
    // certify [x - e, x + e] by exact sign change, widening as needed
    let mut e = Float::with_val(work, Float::i_exp(1, -(prec as i32) + 2));
    for _ in 0..20 {
        let l = Float::with_val(work, &x - &e);
        let h = Float::with_val(work, &x + &e);
        let (lr, hr) = match (l.to_rational(), h.to_rational()) {
            (Some(a), Some(b)) => (a, b),
            _ => break,
        };
        let sl = poly_sign_at(coeffs, &lr);
        let sh = poly_sign_at(coeffs, &hr);
        if sl != 0 && sh != 0 && sl != sh {
            return Ok(BigReal::from_endpoints(
                Float::with_val(prec, &l),
                Float::with_val(prec, &h),
            ));
        }
        e *= 16u32;
    }
    Err(Error::PrecisionExhausted {
        bits: prec,
        context: "real root certification".into(),
    })
}

/// Weil height of an algebraic number of degree ≤ 3 from its minimal
/// polynomial (descending integer coefficients, positive leading
/// coefficient). Cubics must have a single real root (negative
/// discriminant), which covers every height the pipeline needs.
pub fn height_algebraic(coeffs: &[Integer], prec: u32) -> Result<BigReal> {
    let d = coeffs.len() - 1;
    if d == 0 || coeffs[0].cmp0() != Ordering::Greater {
        return Err(Error::Usage(
            "height_algebraic: need degree >= 1 and positive leading coefficient".into(),
        ));
    }
    let a0 = BigReal::from_integer(&coeffs[0], prec);
    let ln_a0 = if coeffs[0] == 1 {
        BigReal::zero(prec)
    } else {
        a0.ln()
    };
    // Cauchy bound for an integer search bracket.
    let maxc = coeffs[1..]
        .iter()
        .map(|c| c.clone().abs())
        .max()
        .unwrap_or_else(|| Integer::from(0));
    let bound = 2 + (maxc / &coeffs[0]).to_i64().unwrap_or(i64::MAX / 4);

    let deg = BigReal::from_i64(d as i64, prec);
    match d {
        1 => {
            // root = -a1/a0
            let r = BigReal::from_integer(&coeffs[1], prec)
                .div(&a0)
                .neg()
                .abs();
            let contrib = ln_max_one(&r)?;
            Ok(ln_a0.add(&contrib))
        }
        2 => {
            // roots of a0 x^2 + a1 x + a2
            let disc = (&coeffs[1] * &coeffs[1]).complete()
                - Integer::from(4) * (&coeffs[0] * &coeffs[2]).complete();
            if disc.cmp0() == Ordering::Less {
                // complex pair, modulus^2 = a2/a0
                let m2 = BigReal::from_integer(&coeffs[2], prec).div(&a0).abs();
                let contrib = ln_max_one(&m2)?; // = 2 ln max(m, 1)
                Ok(ln_a0.add(&contrib).div(&deg))
            } else {
                let sd = BigReal::from_integer(&disc, prec).sqrt();
                let a1 = BigReal::from_integer(&coeffs[1], prec);
                let two_a0 = a0.mul_i64(2);
                let r1 = a1.neg().add(&sd).div(&two_a0).abs();
                let r2 = a1.neg().sub(&sd).div(&two_a0).abs();
                let c = ln_max_one(&r1)?.add(&ln_max_one(&r2)?);
                Ok(ln_a0.add(&c).div(&deg))
            }
        }
        3 => {
            // single-real-root cubics only (all pipeline heights are such)
            let mut bracket = None;
            let mut prev_sign = poly_sign_at(coeffs, &Rational::from(-bound));
            for x in (-bound + 1)..=bound {
                let s = poly_sign_at(coeffs, &Rational::from(x));
                if s == 0 {
                    bracket = Some((x - 1, x + 1));
                    break;
                }
                if s != prev_sign && prev_sign != 0 {
                    bracket = Some((x - 1, x));
                    break;
                }
                prev_sign = s;
            }
            let (blo, bhi) = bracket.ok_or_else(|| Error::Usage(
                "height_algebraic: no real root in Cauchy bracket".into(),
            ))?;
            let root = isolate_real_root(coeffs, blo, bhi, prec)?;
            let r_abs = root.abs();
            // complex pair modulus^2 = |a3 / (a0 * root)|
            let m2 = BigReal::from_integer(&coeffs[3], prec)
                .div(&a0.mul(&root))
                .abs();
            let contrib = ln_max_one(&r_abs)?.add(&ln_max_one(&m2)?);
            Ok(ln_a0.add(&contrib).div(&deg))
        }
        _ => Err(Error::Usage(
            "height_algebraic supports degree <= 3 only".into(),
        )),
    }
}

/// `ln max(x, 1)` with certification that `x` is separated from 1
/// (or returns 0 when certified `x <= 1`).
fn ln_max_one(x: &BigReal) -> Result<BigReal> {
    let one = BigReal::from_i64(1, x.prec());
    match x.certified_cmp(&one) {
        Some(Ordering::Greater) => Ok(x.ln()),
        Some(_) => Ok(BigReal::zero(x.prec())),
        None => Err(Error::AmbiguousComparison(
            "modulus not separated from 1 in height computation".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// Matveev lower bound
// ---------------------------------------------------------------------------

/// Data for Matveev's theorem: `t` terms over a field of degree `D_K`, with
/// verified majorants `A_i` and a coefficient majorant `B`.
#[derive(Debug, Clone)]
pub struct LinearFormData {
    pub t: u32,
    pub field_degree: BigReal,
    /// Each `A_i >= max(D_K h(eta_i), |log eta_i|, 0.16)` — caller-verified.
    pub a_list: Vec<BigReal>,
    /// `B >= max |b_i|`.
    pub b: BigReal,
}

/// Evaluate the Matveev majorant
/// `1.4 · 30^{t+3} · t^{4.5} · D² (1 + log D)(1 + log B) · Π A_i`,
/// an upper bound for `−log |Λ|`.
pub fn matveev_bound(data: &LinearFormData) -> BigReal {
    let prec = data.b.prec();
    let t = data.t as i64;
    let c = BigReal::from_rational(&Rational::from((14u32, 10u32)), prec);
    let thirty = BigReal::from_i64(30, prec).pow_i64(t + 3);
    // t^{4.5} = t^4 * sqrt(t)
    let t_r = BigReal::from_i64(t, prec);
    let t45 = t_r.pow_i64(4).mul(&t_r.sqrt());
    let d = &data.field_degree;
    let one = BigReal::from_i64(1, prec);
    let dfac = d.mul(d).mul(&one.add(&d.ln()));
    let bfac = one.add(&data.b.ln());
    let mut acc = c.mul(&thirty).mul(&t45).mul(&dfac).mul(&bfac);
    for a in &data.a_list {
        acc = acc.mul(a);
    }
    acc
}

// ---------------------------------------------------------------------------
// Baker–Davenport (Dujella–Pethő) reduction
// ---------------------------------------------------------------------------

/// One Baker–Davenport instance: `|u tau - v + mu| < A B^{-w}`, `u <= M`.
#[derive(Debug, Clone)]
pub struct BDInstance {
    pub tau: BigReal,
    pub mu: BigReal,
    pub a: BigReal,
    pub b: BigReal,
    pub m: Integer,
}

/// A successful reduction: at convergent `q` (index `q_index`),
/// `epsilon = ||mu q|| - M ||tau q|| > 0`, so `w < log(A q / epsilon)/log B`,
/// i.e. `w <= bound`.
#[derive(Debug, Clone)]
pub struct BDOutcome {
    pub q_index: usize,
    pub q: Integer,
    pub epsilon: BigReal,
    pub bound: Integer,
}

/// Distance to the nearest integer, certified.
pub fn dist_to_nearest(x: &BigReal) -> Result<BigReal> {
    let r = x.certified_round_nearest()?;
    Ok(x.sub(&BigReal::from_integer(&r, x.prec())).abs())
}

/// Walk convergents with `q > 6M` (up to 50 of them) until `epsilon > 0` is
/// certified; then emit the integer cutoff `floor(log(A q / eps)/log B)`.
pub fn bd_reduce(inst: &BDInstance, cf: &CFExpansion) -> Result<BDOutcome> {
    let six_m = Integer::from(6) * &inst.m;
    let start = cf
        .convergents
        .iter()
        .position(|(_, q)| *q > six_m)
        .ok_or_else(|| {
            Error::InsufficientExpansion(format!(
                "no convergent with q > 6M in {}",
                cf.source
            ))
        })?;
    let prec = inst.tau.prec();
    let m_real = BigReal::from_integer(&inst.m, prec);
    let mut last_err: Option<Error> = None;
    // Every convergent with epsilon > 0 yields a sound cutoff, so keep
    // scanning a few past the first success and return the smallest.
    let mut best: Option<BDOutcome> = None;
    let mut successes = 0u32;
    for (tries, idx) in (start..cf.convergents.len()).enumerate() {
        if tries >= 50 {
            break;
        }
        let q = &cf.convergents[idx].1;
        let qr = BigReal::from_integer(q, prec);
        let tau_q = dist_to_nearest(&inst.tau.mul(&qr))?;
        let mu_q = dist_to_nearest(&inst.mu.mul(&qr))?;
        let eps = mu_q.sub(&m_real.mul(&tau_q));
        match eps.certified_sign() {
            Some(Ordering::Greater) => {
                // w < log(A q / eps) / log B; floor of the upper endpoint is
                // always a sound integer cutoff.
                let val = inst.a.mul(&qr).div(&eps).ln().div(&inst.b.ln());
                let bound = match val.certified_floor() {
                    Ok(b) => b,
                    Err(_) => {
                        // straddles an integer: take the larger floor (sound)
                        let hi = val.hi().clone().floor();
                        hi.to_integer().ok_or_else(|| {
                            Error::AmbiguousComparison("BD cutoff not finite".into())
                        })?
                    }
                };
                let out = BDOutcome {
                    q_index: idx,
                    q: q.clone(),
                    epsilon: eps,
                    bound,
                };
                if best.as_ref().map(|b| out.bound < b.bound).unwrap_or(true) {
                    best = Some(out);
                }
                successes += 1;
                if successes >= 6 {
                    break;
                }
            }
            Some(_) => continue, // certified non-positive: try next convergent
            None => {
                last_err = Some(Error::AmbiguousComparison(format!(
                    "epsilon sign ambiguous at q index {idx}"
                )));
                continue;
            }
        }
    }
    if let Some(b) = best {
        return Ok(b);
    }
    Err(last_err.unwrap_or_else(|| {
        Error::EpsilonNonPositive {
            q: format!("{} convergents from index {start}", 50),
            detail: format!("no positive epsilon found for {}", cf.source),
        }
    }))
}

// ---------------------------------------------------------------------------
// Exact integral LLL (Cohen, Algorithm 2.6.7) and the lower-bound lemma
// ---------------------------------------------------------------------------

/// Exact integer LLL state: basis rows, scaled Gram–Schmidt integers
/// `lambda[i][j] = d_j mu_{i,j}`, and Gram determinants `d[i]`.
struct IntegralLLL {
    basis: Vec<Vec<Integer>>,
    lambda: Vec<Vec<Integer>>, // lower-triangular, 1-based logical indexing
    d: Vec<Integer>,           // d[0] = 1
    n: usize,
}

fn dot(a: &[Integer], b: &[Integer]) -> Integer {
    let mut acc = Integer::new();
    for (x, y) in a.iter().zip(b) {
        acc += (x * y).complete();
    }
    acc
}

impl IntegralLLL {
    fn new(basis: Vec<Vec<Integer>>) -> Self {
        let n = basis.len();
        let mut s = IntegralLLL {
            basis,
            lambda: vec![vec![Integer::new(); n + 1]; n + 1],
            d: vec![Integer::from(1); n + 1],
            n,
        };
        s.recompute_gso();
        s
    }

    /// Full scaled-GSO recomputation (initialization).
    fn recompute_gso(&mut self) {
        for i in 1..=self.n {
            for j in 1..=i {
                let mut u = dot(&self.basis[i - 1], &self.basis[j - 1]);
                for k in 1..j {
                    u = ((&self.d[k] * &u).complete()
                        - (&self.lambda[i][k] * &self.lambda[j][k]).complete())
                        / &self.d[k - 1];
                }
                if j < i {
                    self.lambda[i][j] = u;
                } else {
                    self.d[i] = u;
                }
            }
        }
    }

    /// Size-reduce row `k` against row `l` (REDI).
    fn redi(&mut self, k: usize, l: usize) {
        let two_lam = Integer::from(2) * &self.lambda[k][l];
        if two_lam.clone().abs() <= self.d[l] {
            return;
        }
        // q = nearest integer to lambda[k][l] / d[l]
        let num = two_lam + &self.d[l];
        let den = Integer::from(2) * &self.d[l];
        let (q, _) = num.div_rem_floor(den);
        for t in 0..self.basis[0].len() {
            let sub = (&q * &self.basis[l - 1][t]).complete();
            self.basis[k - 1][t] -= sub;
        }
        self.lambda[k][l] -= (&q * &self.d[l]).complete();
        for i in 1..l {
            let sub = (&q * &self.lambda[l][i]).complete();
            self.lambda[k][i] -= sub;
        }
    }

    /// Swap rows `k` and `k-1` with scaled-GSO bookkeeping (SWAPI).
    fn swapi(&mut self, k: usize) {
        self.basis.swap(k - 1, k - 2);
        for j in 1..=k - 2 {
            let tmp = self.lambda[k][j].clone();
            self.lambda[k][j] = self.lambda[k - 1][j].clone();
            self.lambda[k - 1][j] = tmp;
        }
        let lam = self.lambda[k][k - 1].clone();
        // new d_{k-1} = (d_{k-2} d_k + lam^2) / d_{k-1}
        let b_new = ((&self.d[k - 2] * &self.d[k]).complete() + (&lam * &lam).complete())
            / &self.d[k - 1];
        for i in k + 1..=self.n {
            let t = self.lambda[i][k].clone();
            // lambda[i][k] = (d_k lambda[i][k-1] - lam * t) / d_{k-1}
            self.lambda[i][k] = ((&self.d[k] * &self.lambda[i][k - 1]).complete()
                - (&lam * &t).complete())
                / &self.d[k - 1];
            // lambda[i][k-1] = (b_new * t + lam * lambda[i][k]) / d_k
            self.lambda[i][k - 1] =
                ((&b_new * &t).complete() + (&lam * &self.lambda[i][k]).complete()) / &self.d[k];
        }
        self.d[k - 1] = b_new;
    }

    /// Run LLL with δ = 3/4.
    fn reduce(&mut self) {
        let mut k = 2usize;
        while k <= self.n {
            self.redi(k, k - 1);
            // Lovász test: d_k d_{k-2} < (3/4) d_{k-1}^2 - lambda_{k,k-1}^2
            // exact form: 4 (d_k d_{k-2} + lambda^2) < 3 d_{k-1}^2
            let lhs = Integer::from(4)
                * ((&self.d[k] * &self.d[k - 2]).complete()
                    + (&self.lambda[k][k - 1] * &self.lambda[k][k - 1]).complete());
            let rhs = Integer::from(3) * (&self.d[k - 1] * &self.d[k - 1]).complete();
            if lhs < rhs {
                self.swapi(k);
                k = std::cmp::max(2, k - 1);
            } else {
                for l in (1..k - 1).rev() {
                    self.redi(k, l);
                }
                k += 1;
            }
        }
    }

    /// Squared GSO norms `||b_i*||^2 = d_i / d_{i-1}` as exact rationals.
    fn gso_norms_sq(&self) -> Vec<Rational> {
        (1..=self.n)
            .map(|i| Rational::from((self.d[i].clone(), self.d[i - 1].clone())))
            .collect()
    }

    /// Exact squared norm of a shortest nonzero lattice vector, by
    /// Fincke–Pohst enumeration over the (reduced) basis in exact rational
    /// arithmetic. `||sum u_j b_j||^2 = sum_j B_j (u_j + sum_{i>j} mu_ij u_i)^2`
    /// with `B_j = ||b_j*||^2`; at each level the coefficient is walked
    /// outward from the projection center until the partial norm exceeds the
    /// incumbent, so no square roots are needed. Intended for tiny dimension
    /// (here t <= 4); run only after `reduce()`.
    fn shortest_norm_sq(&self) -> Rational {
        let n = self.n;
        let b: Vec<Rational> = self.gso_norms_sq();
        // mu[i][j] = lambda[i][j] / d[j] for i > j (1-based)
        let mu = |i: usize, j: usize| -> Rational {
            Rational::from((self.lambda[i][j].clone(), self.d[j].clone()))
        };
        let mut best = Rational::from(&dot(&self.basis[0], &self.basis[0]));
        let mut u = vec![Integer::new(); n + 1];
        // recursive descent from level n down to 1
        fn descend(
            level: usize,
            partial: &Rational,
            u: &mut Vec<Integer>,
            b: &[Rational],
            mu: &dyn Fn(usize, usize) -> Rational,
            n: usize,
            best: &mut Rational,
        ) {
            // projection center for u[level]
            let mut c = Rational::new();
            for i in level + 1..=n {
                c -= mu(i, level) * Rational::from(&u[i]);
            }
            let c_floor: Integer = c.clone().floor().into_numer_denom().0;
            for dir in [1i32, -1] {
                let mut k: Integer = if dir == 1 {
                    c_floor.clone() + 1u32
                } else {
                    c_floor.clone()
                };
                loop {
                    let dev = Rational::from(&k) - &c;
                    let term = (&dev * &dev).complete() * &b[level - 1];
                    let here = term + partial;
                    if here >= *best {
                        // walking further out only grows the term
                        break;
                    }
                    u[level] = k.clone();
                    if level == 1 {
                        if here.cmp0() == Ordering::Greater
                            && u[1..=n].iter().any(|x| x.cmp0() != Ordering::Equal)
                        {
                            *best = here;
                        }
                    } else {
                        descend(level - 1, &here, u, b, mu, n, best);
                    }
                    k += dir;
                }
            }
            u[level] = Integer::new();
        }
        let zero = Rational::new();
        descend(n, &zero, &mut u, &b, &mu, n, &mut best);
        best
    }
}

/// δ=3/4 LLL reduction of integer rows, exact arithmetic.
pub fn lll_reduce_basis(basis: Vec<Vec<Integer>>) -> Vec<Vec<Integer>> {
    if basis.len() <= 1 {
        return basis;
    }
    let mut state = IntegralLLL::new(basis);
    state.reduce();
    state.basis
}

/// An LLL lower-bound instance for `|x_1 tau_1 + ... + x_t tau_t|`,
/// `|x_i| <= X_i`.
#[derive(Debug, Clone)]
pub struct LLLInstance {
    pub tau: Vec<BigReal>,
    pub x_bounds: Vec<Integer>,
    pub c: Integer,
}

/// Certified lower bound `(sqrt(θ² − Q) − R)/C` on the nonzero values of the
/// linear form over the coefficient box. Errors with `ThetaTooSmall` when
/// the lemma hypothesis `θ² >= Q + R²` fails (enlarge `C`), and with a
/// precision error when `⌊C tau_j⌉` cannot be certified.
pub fn lll_lower_bound(inst: &LLLInstance) -> Result<BigReal> {
    let t = inst.tau.len();
    assert_eq!(t, inst.x_bounds.len());
    let prec = inst.tau[0].prec();
    // hypothesis C > (t X)^t
    let x_max = inst.x_bounds.iter().max().unwrap().clone();
    if inst.c <= (Integer::from(t as u64) * &x_max).pow(t as u32) {
        return Err(Error::HypothesisViolated(format!(
            "C must exceed (tX)^t = ({t} * {x_max})^{t}"
        )));
    }
    // lattice rows: b_j = e_j + round(C tau_j) e_t (j < t), b_t = round(C tau_t) e_t
    let c_real = BigReal::from_integer(&inst.c, prec);
    let mut rounded = Vec::with_capacity(t);
    for tau_j in &inst.tau {
        rounded.push(c_real.mul(tau_j).certified_round_nearest()?);
    }
    let mut basis = vec![vec![Integer::new(); t]; t];
    for j in 0..t {
        if j < t - 1 {
            basis[j][j] = Integer::from(1);
        }
        basis[j][t - 1] = rounded[j].clone();
    }
    let mut state = IntegralLLL::new(basis);
    state.reduce();

    // θ² = exact shortest-vector norm² (stronger than the min-GSO bound,
    // which can lose a factor ~2 per dimension)
    let theta_sq = state.shortest_norm_sq();
    let q: Integer = inst.x_bounds[..t - 1]
        .iter()
        .map(|x| (x * x).complete())
        .sum();
    let sum_x: Integer = inst.x_bounds.iter().cloned().sum();
    let r = Rational::from((sum_x + 1, Integer::from(2)));
    let hypothesis = theta_sq.clone() - Rational::from(&q) - (&r * &r).complete();
    if hypothesis.cmp0() == Ordering::Less {
        return Err(Error::ThetaTooSmall(format!(
            "theta^2 < Q + R^2 (deficit {})",
            hypothesis.to_f64()
        )));
    }
    // (sqrt(θ² − Q) − R)/C as an interval
    let tmq = BigReal::from_rational(&(theta_sq - Rational::from(&q)), prec).sqrt();
    let bound = tmq
        .sub(&BigReal::from_rational(&r, prec))
        .div(&c_real);
    Ok(bound)
}

// ---------------------------------------------------------------------------
// Guzmán–Luca resolver
// ---------------------------------------------------------------------------

/// If `r >= 1`, `H > (4 r²)^r` and `H > L / (log L)^r`, then
/// `L < 2^r H (log H)^r`. Returns that majorant; errors when the hypothesis
/// on `H` fails.
pub fn gl_resolve(r: u32, h: &BigReal) -> Result<BigReal> {
    let prec = h.prec();
    let hypo = Integer::from(4 * (r as u64) * (r as u64)).pow(r);
    match h.certified_cmp(&BigReal::from_integer(&hypo, prec)) {
        Some(Ordering::Greater) => {}
        Some(_) => {
            return Err(Error::HypothesisViolated(format!(
                "gl_resolve needs H > (4r^2)^r = {hypo}"
            )))
        }
        None => {
            return Err(Error::AmbiguousComparison(
                "H not separated from (4r^2)^r".into(),
            ))
        }
    }
    let two_r = BigReal::from_i64(2, prec).pow_i64(r as i64);
    Ok(two_r.mul(h).mul(&h.ln().pow_i64(r as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::{AlgebraicConstants, BigReal, PrecisionPolicy};
    use crate::contfrac;

    fn int_vec(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn rational_heights() {
        let prec = 128;
        let h = height_rational(&Integer::from(2), &Integer::from(1), prec).unwrap();
        let ln2 = BigReal::from_i64(2, prec).ln();
        assert!(h.sub(&ln2).abs().hi().to_f64() < 1e-30);
        let h = height_rational(&Integer::from(8), &Integer::from(23), prec).unwrap();
        let ln23 = BigReal::from_i64(23, prec).ln();
        assert!(h.sub(&ln23).abs().hi().to_f64() < 1e-30);
        let h0 = height_rational(&Integer::from(0), &Integer::from(1), prec).unwrap();
        assert_eq!(h0.to_f64(), 0.0);
    }

    #[test]
    fn algebraic_heights_match_closed_forms() {
        let prec = 256;
        let c = AlgebraicConstants::new(prec).unwrap();
        let three = BigReal::from_i64(3, prec);
        // h(alpha) = (1/3) log alpha
        let h = height_algebraic(&int_vec(&[1, 0, -1, -1]), prec).unwrap();
        let expect = c.alpha.ln().div(&three);
        assert!(h.sub(&expect).abs().hi().to_f64() < 1e-40);
        // h(2a) = (1/3)(log 23 + log 2a)
        let h = height_algebraic(&int_vec(&[23, -46, 24, -8]), prec).unwrap();
        let expect = BigReal::from_i64(23, prec).ln().add(&c.two_a.ln()).div(&three);
        assert!(h.sub(&expect).abs().hi().to_f64() < 1e-40);
        // h(a) = (1/3) log 23
        let h = height_algebraic(&int_vec(&[23, -23, 6, -1]), prec).unwrap();
        let expect = BigReal::from_i64(23, prec).ln().div(&three);
        assert!(h.sub(&expect).abs().hi().to_f64() < 1e-40);
    }

    #[test]
    fn height_product_and_power_properties() {
        // h(eta^s) = |s| h(eta) via minimal polynomials of sqrt2 and 2:
        // h(sqrt2) = (1/2) log 2; h(2) = log 2.
        let prec = 192;
        let h_sqrt2 = height_algebraic(&int_vec(&[1, 0, -2]), prec).unwrap();
        let h_two = height_rational(&Integer::from(2), &Integer::from(1), prec).unwrap();
        let diff = h_sqrt2.mul_i64(2).sub(&h_two).abs();
        assert!(diff.hi().to_f64() < 1e-30);
        // subadditivity spot check: h(6) <= h(2) + h(3)
        let h6 = height_rational(&Integer::from(6), &Integer::from(1), prec).unwrap();
        let h2 = height_rational(&Integer::from(2), &Integer::from(1), prec).unwrap();
        let h3 = height_rational(&Integer::from(3), &Integer::from(1), prec).unwrap();
        assert!(h6.hi().to_f64() <= h2.add(&h3).lo().to_f64() + 1e-12);
    }

    #[test]
    fn gl_examples() {
        let prec = 256;
        // r=1, H=17 -> 2*17*log 17 = 96.33...
        let h = BigReal::from_i64(17, prec);
        let v = gl_resolve(1, &h).unwrap();
        assert!((v.to_f64() - 34.0 * 17f64.ln()).abs() < 1e-9);
        // hypothesis violation: H = 3 <= (4)^1
        assert!(matches!(
            gl_resolve(1, &BigReal::from_i64(3, prec)),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn lll_identity_stays_reduced() {
        let id: Vec<Vec<Integer>> = (0..3)
            .map(|i| (0..3).map(|j| Integer::from((i == j) as i64)).collect())
            .collect();
        assert_eq!(lll_reduce_basis(id.clone()), id);
    }

    #[test]
    fn lll_toy_shortest_vector() {
        // 2-d toy: [[1, round(C*phi)], [0, C]] — LLL finds a short vector
        // related to Fibonacci approximations of the golden ratio.
        let c = 1_000_000i64;
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let basis = vec![
            int_vec(&[1, (c as f64 * phi).round() as i64]),
            int_vec(&[0, c]),
        ];
        let red = lll_reduce_basis(basis);
        let norm_sq =
            |v: &Vec<Integer>| -> f64 { v.iter().map(|x| x.to_f64() * x.to_f64()).sum() };
        // Hermite bound for the first reduced vector: ||b1||^2 <= 2^{(n-1)/2} det^{2/n}
        let det = c as f64;
        assert!(norm_sq(&red[0]) <= 2f64.sqrt() * det * 2.0);
    }

    #[test]
    fn lll_lower_bound_sound_exhaustive() {
        // synthetic 3-term instance checked exhaustively
        let prec = 256;
        let tau = vec![
            BigReal::from_i64(2, prec).sqrt(),
            BigReal::from_i64(3, prec).sqrt(),
            BigReal::from_i64(5, prec).sqrt().neg(),
        ];
        let x_bounds = int_vec(&[20, 20, 20]);
        let c = Integer::from(10u64).pow(12);
        let inst = LLLInstance {
            tau: tau.clone(),
            x_bounds,
            c,
        };
        let bound = lll_lower_bound(&inst).unwrap();
        let b = bound.lo().to_f64();
        assert!(b > 0.0, "expected positive bound, got {b}");
        let (s2, s3, s5) = (2f64.sqrt(), 3f64.sqrt(), 5f64.sqrt());
        for x1 in -20i64..=20 {
            for x2 in -20i64..=20 {
                for x3 in -20i64..=20 {
                    if (x1, x2, x3) == (0, 0, 0) {
                        continue;
                    }
                    let v = (x1 as f64 * s2 + x2 as f64 * s3 - x3 as f64 * s5).abs();
                    assert!(v >= b * 0.999, "violated at ({x1},{x2},{x3}): {v} < {b}");
                }
            }
        }
    }

    #[test]
    fn lll_rejects_small_c() {
        let prec = 128;
        let inst = LLLInstance {
            tau: vec![BigReal::from_i64(2, prec).sqrt(); 3],
            x_bounds: int_vec(&[50, 50, 50]),
            c: Integer::from(100),
        };
        assert!(matches!(
            lll_lower_bound(&inst),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn bd_reduce_synthetic_sound() {
        // tau = sqrt(2), mu = 1/2, A = 1, B = 2, M = 10: verify the lemma's
        // conclusion exhaustively.
        let prec = 192;
        let policy = PrecisionPolicy::fixed(prec);
        let cf = contfrac::expand("sqrt2", 30, &policy, |p| {
            Ok(BigReal::from_i64(2, p).sqrt())
        })
        .unwrap();
        let inst = BDInstance {
            tau: BigReal::from_i64(2, prec).sqrt(),
            mu: BigReal::from_rational(&Rational::from((1u32, 2u32)), prec),
            a: BigReal::from_i64(1, prec),
            b: BigReal::from_i64(2, prec),
            m: Integer::from(10),
        };
        let out = bd_reduce(&inst, &cf).unwrap();
        assert!(out.epsilon.lo().to_f64() > 0.0);
        assert!(out.q > 60);
        let w_max = out.bound.to_i64().unwrap();
        // exhaustively confirm: no (u, v, w) with u <= 10, w > w_max satisfies
        // 0 < |u tau - v + mu| < A B^{-w}
        let tau = 2f64.sqrt();
        for u in 1..=10i64 {
            for w in (w_max + 1)..(w_max + 8) {
                let target = u as f64 * tau + 0.5;
                let v = target.round();
                let diff = (target - v).abs();
                assert!(
                    !(diff > 0.0 && diff < 2f64.powi(-(w as i32))),
                    "violation at u={u}, w={w}"
                );
            }
        }
    }

    #[test]
    fn matveev_formula_spot_value() {
        // t=2, D=3, A=(log23, logα·3... just check monotone scale vs hand value
        let prec = 256;
        let c = AlgebraicConstants::new(prec).unwrap();
        let data = LinearFormData {
            t: 2,
            field_degree: BigReal::from_i64(3, prec),
            a_list: vec![
                BigReal::from_i64(23, prec).ln(),
                c.ln_alpha.clone(),
            ],
            b: BigReal::from_i64(100, prec),
        };
        let v = matveev_bound(&data).to_f64();
        // 1.4 * 30^5 * 2^4.5 * 9 * (1+ln3) * (1+ln100) * ln23 * lnα
        let expect = 1.4
            * 30f64.powi(5)
            * 2f64.powf(4.5)
            * 9.0
            * (1.0 + 3f64.ln())
            * (1.0 + 100f64.ln())
            * 23f64.ln()
            * 0.2811995743;
        assert!((v / expect - 1.0).abs() < 1e-9, "{v} vs {expect}");
    }
}
