//! Fundamental solutions and solution sequences of the Pell equations
//! `x^2 - d y^2 = ±1` (unit family) and `X^2 - d Y^2 = ±4` (quad family).
//!
//! For a nonsquare `d >= 2` the unit-family fundamental `(x1, y1)` is the
//! minimal positive solution of `x^2 - d y^2 = eps`, where `eps = -1`
//! exactly when the continued fraction of `sqrt(d)` has odd period (and the
//! negative equation is solvable), else `eps = +1`. Writing
//! `delta = x1 + y1 sqrt(d)`, every solution of `x^2 - d y^2 = ±1` is
//! `delta^k`, and the x-coordinates obey
//! `x_{k+1} = 2 x1 x_k - eps x_{k-1}` with `x_0 = 1`.
//!
//! For the quad family, `rho = (X1 + Y1 sqrt(d)) / 2` generates all
//! solutions of `X^2 - d Y^2 = ±4` and `X_{k+1} = X1 X_k - eps X_{k-1}`
//! with `X_0 = 2`. The quad fundamental is recovered from the unit one:
//! `delta = rho^j` for some `j ∈ {1, 2, 3, 6}`, so we invert the trace
//! polynomials for `j = 6, 3, 2` and fall back to `rho = x1 + y1 sqrt(d)`
//! (i.e. `X1 = 2 x1`).

use crate::bigreal::BigReal;
use crate::{Error, Result};
use rug::ops::Pow;
use rug::{Complete, Integer};
use serde::{Deserialize, Serialize};

/// Which Pell family an equation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `x^2 - d y^2 = ±1`
    Unit,
    /// `X^2 - d Y^2 = ±4`
    Quad,
}

/// A stated equation: family plus right-hand sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EqKind {
    pub family: Family,
    /// `+1` or `-1`; the stated right-hand side is `sign` (unit) or
    /// `4 * sign` (quad).
    pub sign: i32,
}

impl EqKind {
    pub fn new(family: Family, sign: i32) -> Self {
        assert!(sign == 1 || sign == -1);
        EqKind { family, sign }
    }

    /// All four stated equations.
    pub fn all() -> [EqKind; 4] {
        [
            EqKind::new(Family::Unit, 1),
            EqKind::new(Family::Unit, -1),
            EqKind::new(Family::Quad, 1),
            EqKind::new(Family::Quad, -1),
        ]
    }

    pub fn label(&self) -> String {
        let fam = match self.family {
            Family::Unit => "unit",
            Family::Quad => "quad",
        };
        let rhs = match (self.family, self.sign) {
            (Family::Unit, 1) => "+1",
            (Family::Unit, -1) => "-1",
            (Family::Quad, 1) => "+4",
            (Family::Quad, -1) => "-4",
            _ => unreachable!(),
        };
        format!("{fam}{rhs}")
    }
}

/// Fundamental solution of a Pell family for a fixed nonsquare `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellFundamental {
    pub d: Integer,
    pub family: Family,
    /// `x1` (unit) or `X1` (quad).
    pub x1: Integer,
    /// `y1` (unit) or `Y1` (quad).
    pub y1: Integer,
    /// Norm of the fundamental: `x1^2 - d y1^2 = eps` (unit) or
    /// `X1^2 - d Y1^2 = 4 eps` (quad).
    pub eps: i32,
}

impl PellFundamental {
    /// Recurrence coefficient: `2 x1` (unit), `X1` (quad).
    pub fn coeff(&self) -> Integer {
        match self.family {
            Family::Unit => Integer::from(2) * &self.x1,
            Family::Quad => self.x1.clone(),
        }
    }

    /// `x_0`: 1 (unit) or 2 (quad).
    pub fn x0(&self) -> Integer {
        match self.family {
            Family::Unit => Integer::from(1),
            Family::Quad => Integer::from(2),
        }
    }

    /// The fundamental unit `delta = x1 + y1 sqrt(d)` (unit) or
    /// `rho = (X1 + Y1 sqrt(d)) / 2` (quad), as a certified interval.
    pub fn unit_value(&self, prec: u32) -> BigReal {
        let sd = BigReal::from_integer(&self.d, prec).sqrt();
        let num = BigReal::from_integer(&self.x1, prec)
            .add(&BigReal::from_integer(&self.y1, prec).mul(&sd));
        match self.family {
            Family::Unit => num,
            Family::Quad => num.div(&BigReal::from_i64(2, prec)),
        }
    }

    /// Does some power of the fundamental solve the stated equation with
    /// this sign? (`-1` sides are solvable only when `eps = -1`.)
    pub fn solves_sign(&self, sign: i32) -> bool {
        sign == 1 || self.eps == -1
    }

    /// The exponents `k` in `1..=k_max` whose solution `(x_k, y_k)` solves
    /// the stated sign: all `k` if `eps = +1` and `sign = +1`, else the `k`
    /// of matching parity.
    pub fn stated_ks(&self, sign: i32, k_max: u64) -> Vec<u64> {
        (1..=k_max)
            .filter(|k| {
                if self.eps == 1 {
                    sign == 1
                } else if sign == 1 {
                    k % 2 == 0
                } else {
                    k % 2 == 1
                }
            })
            .collect()
    }
}

/// Integer square root helper: `Some(r)` iff `n = r^2`.
pub fn perfect_sqrt(n: &Integer) -> Option<Integer> {
    if n.cmp0() == std::cmp::Ordering::Less {
        return None;
    }
    let r = n.clone().sqrt();
    if (&r * &r).complete() == *n {
        Some(r)
    } else {
        None
    }
}

/// Unit-family fundamental via the periodic continued fraction of
/// `sqrt(d)` (the classical P-Q recurrence). Errors on square `d`.
pub fn fundamental_unit(d: &Integer) -> Result<PellFundamental> {
    if *d < 2 {
        return Err(Error::Usage(format!("d = {d} out of range (need d >= 2)")));
    }
    let a0 = d.clone().sqrt();
    if (&a0 * &a0).complete() == *d {
        return Err(Error::SquareD(d.to_string()));
    }
    // CF machine for sqrt(d): P_0 = 0, Q_0 = 1,
    // a_i = floor((P_i + a0) / Q_i), P_{i+1} = a_i Q_i - P_i,
    // Q_{i+1} = (d - P_{i+1}^2) / Q_i. Period ends at the first i >= 1 with
    // Q_i = 1; the convergent p_{i-1}/q_{i-1} is the fundamental solution.
    let mut p = Integer::from(0);
    let mut q = Integer::from(1);
    let mut a = a0.clone();
    // convergent accumulators: (p_{-1}, p_0) = (1, a0), (q_{-1}, q_0) = (0, 1)
    let mut num_prev = Integer::from(1);
    let mut num = a0.clone();
    let mut den_prev = Integer::from(0);
    let mut den = Integer::from(1);
    let mut i: u64 = 0;
    loop {
        i += 1;
        p = (&a * &q).complete() - &p;
        let pp = (&p * &p).complete();
        q = Integer::from(d - &pp) / &q;
        if q == 1 {
            // period length i; fundamental is the previous convergent
            let eps = if i % 2 == 1 { -1 } else { 1 };
            return Ok(PellFundamental {
                d: d.clone(),
                family: Family::Unit,
                x1: num,
                y1: den,
                eps,
            });
        }
        a = (&p + &a0).complete() / &q;
        let num_next = (&a * &num).complete() + &num_prev;
        let den_next = (&a * &den).complete() + &den_prev;
        num_prev = std::mem::replace(&mut num, num_next);
        den_prev = std::mem::replace(&mut den, den_next);
        if i > 10_000_000 {
            return Err(Error::FactoringBudget(format!(
                "continued fraction period of sqrt({d}) exceeds budget"
            )));
        }
    }
}

/// Quad-family fundamental. `delta = rho^j` for some `j ∈ {1, 2, 3, 6}`, so
/// invert the trace polynomials for `j = 6, 3, 2` (largest first) and fall
/// back to `rho = x1 + y1 sqrt(d)`.
pub fn fundamental_quad(d: &Integer) -> Result<PellFundamental> {
    let unit = fundamental_unit(d)?;
    let trace = Integer::from(2) * &unit.x1;

    let check = |u: &Integer, eps_q: i32| -> Option<PellFundamental> {
        if u.cmp0() != std::cmp::Ordering::Greater {
            return None;
        }
        let disc = (u * u).complete() - Integer::from(4 * eps_q);
        if disc.cmp0() == std::cmp::Ordering::Less {
            return None;
        }
        let (quot, rem) = disc.div_rem(d.clone());
        if rem != 0 {
            return None;
        }
        let y = perfect_sqrt(&quot)?;
        if y == 0 {
            return None;
        }
        Some(PellFundamental {
            d: d.clone(),
            family: Family::Quad,
            x1: u.clone(),
            y1: y,
            eps: eps_q,
        })
    };

    // j = 6: trace(rho^6) = v^3 - 3v with v = trace(rho^2) = u^2 - 2 eps_q.
    // Requires eps_q^6 = +1 = unit.eps.
    if unit.eps == 1 {
        if let Some(v) = invert_cubic_trace(&trace, 1) {
            for eps_q in [-1, 1] {
                let usq = v.clone() + Integer::from(2 * eps_q);
                if let Some(u) = perfect_sqrt(&usq) {
                    if let Some(f) = check(&u, eps_q) {
                        return Ok(f);
                    }
                }
            }
        }
    }
    // j = 3: trace = u^3 - 3 eps_q u, sign eps_q^3 = eps_q must equal unit.eps.
    if let Some(u) = invert_cubic_trace(&trace, unit.eps) {
        if let Some(f) = check(&u, unit.eps) {
            return Ok(f);
        }
    }
    // j = 2: trace = u^2 - 2 eps_q, requires unit.eps = +1.
    if unit.eps == 1 {
        for eps_q in [-1, 1] {
            let usq = trace.clone() + Integer::from(2 * eps_q);
            if let Some(u) = perfect_sqrt(&usq) {
                if let Some(f) = check(&u, eps_q) {
                    return Ok(f);
                }
            }
        }
    }
    // j = 1: rho = x1 + y1 sqrt(d) = (2 x1 + 2 y1 sqrt(d)) / 2.
    Ok(PellFundamental {
        d: d.clone(),
        family: Family::Quad,
        x1: trace,
        y1: Integer::from(2) * &unit.y1,
        eps: unit.eps,
    })
}

/// Integer `u > 0` with `u^3 - 3 eps u = t`, if any (the cubic trace map is
/// strictly increasing for u >= 2, so check around the cube root).
fn invert_cubic_trace(t: &Integer, eps: i32) -> Option<Integer> {
    let approx = t.clone().root(3);
    for off in -2i64..=2 {
        let u = approx.clone() + Integer::from(off);
        if u.cmp0() != std::cmp::Ordering::Greater {
            continue;
        }
        let u2 = (&u * &u).complete();
        if (&u2 * &u).complete() - Integer::from(3 * eps) * &u == *t {
            return Some(u);
        }
    }
    None
}

/// Fundamental for either family.
pub fn fundamental(d: &Integer, family: Family) -> Result<PellFundamental> {
    match family {
        Family::Unit => fundamental_unit(d),
        Family::Quad => fundamental_quad(d),
    }
}

/// `x_k` by the three-term recurrence (`x_0 = 1 or 2`, `x_1` fundamental).
pub fn solution_x(f: &PellFundamental, k: u64) -> Integer {
    solution_xy(f, k).0
}

/// `(x_k, y_k)` by the shared recurrence
/// `z_{k+1} = c z_k - eps z_{k-1}` with `c = 2 x1` (unit) / `X1` (quad).
pub fn solution_xy(f: &PellFundamental, k: u64) -> (Integer, Integer) {
    let c = f.coeff();
    let eps = Integer::from(f.eps);
    let mut x_prev = f.x0();
    let mut x = f.x1.clone();
    let mut y_prev = Integer::from(0);
    let mut y = f.y1.clone();
    if k == 0 {
        return (x_prev, y_prev);
    }
    for _ in 1..k {
        let x_next = (&c * &x).complete() - (&eps * &x_prev).complete();
        let y_next = (&c * &y).complete() - (&eps * &y_prev).complete();
        x_prev = std::mem::replace(&mut x, x_next);
        y_prev = std::mem::replace(&mut y, y_next);
    }
    (x, y)
}

/// The closed form `Q^{±}_k(x1)` (unit) / `R^{±}_k(X1)` (quad): the value of
/// `x_k` as a polynomial in the fundamental coordinate, with `eps` the
/// superscript sign. Evaluated by running the recurrence (exact, O(k)).
pub fn closed_form(x1: &Integer, family: Family, eps: i32, k: u64) -> Integer {
    let f = PellFundamental {
        d: Integer::from(0), // unused by the recurrence
        family,
        x1: x1.clone(),
        y1: Integer::from(0), // unused
        eps,
    };
    solution_x(&f, k)
}

/// Invert the closed form: the unique `x1 >= 1` with
/// `Q^{eps}_k(x1) = target` (resp. `R`), if it exists. The closed form is
/// strictly increasing in `x1` for `x1 >= 1`, so binary search is exact.
pub fn invert_closed_form(
    target: &Integer,
    family: Family,
    eps: i32,
    k: u64,
) -> Option<Integer> {
    if k == 0 {
        return None;
    }
    let mut lo = Integer::from(1);
    // upper bound: x_k <= (2 x1)^k, so x1 = target works as a crude cap
    let mut hi = target.clone() + 1;
    if closed_form(&lo, family, eps, k) > *target {
        return None;
    }
    while Integer::from(&hi - &lo) > 1 {
        let mid = Integer::from(&hi + &lo) >> 1;
        if closed_form(&mid, family, eps, k) <= *target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if &closed_form(&lo, family, eps, k) == target {
        Some(lo)
    } else {
        None
    }
}

/// All `(d, y)` with `x1^2 - d y^2 = eps` (unit) or `x1^2 - d y^2 = 4 eps`
/// (quad), `d >= 2` nonsquare: divide the norm form `N = x1^2 - rhs` by
/// each square `y^2 | N`. Desk-scale only (errors if `N` exceeds `10^14`).
pub fn recover_d(x1: &Integer, family: Family, sign: i32) -> Result<Vec<(Integer, Integer)>> {
    let rhs = match family {
        Family::Unit => Integer::from(sign),
        Family::Quad => Integer::from(4 * sign),
    };
    let n = (x1 * x1).complete() - &rhs;
    if n.cmp0() != std::cmp::Ordering::Greater {
        return Ok(vec![]);
    }
    if n > Integer::from(10u64).pow(14) {
        return Err(Error::FactoringBudget(format!(
            "norm form {n} too large for desk-scale square extraction"
        )));
    }
    let n64 = n.to_u64().unwrap();
    let mut out = Vec::new();
    let mut y = 1u64;
    while y * y <= n64 {
        if n64 % (y * y) == 0 {
            let d = n64 / (y * y);
            let dint = Integer::from(d);
            if d >= 2 && perfect_sqrt(&dint).is_none() {
                out.push((dint, Integer::from(y)));
            }
        }
        y += 1;
    }
    Ok(out)
}

/// Is `d` squarefree? Desk-scale trial division.
pub fn is_squarefree(d: &Integer) -> bool {
    let mut n = d.clone();
    let mut p = Integer::from(2);
    while ((&p * &p).complete()) <= n {
        if n.is_divisible(&p) {
            n /= &p;
            if n.is_divisible(&p) {
                return false;
            }
        }
        p += 1;
    }
    true
}
