//! The Padovan sequence, canonical two-term representations, and certified
//! Binet-form error and growth bounds.
//!
//! # Index conventions
//!
//! Two index conventions coexist in the source material and are kept apart
//! explicitly here:
//!
//! * **List convention** (used by [`padovan`], [`representations`], and all
//!   reported solution lists): `P_0 = 0, P_1 = P_2 = 1`,
//!   `P_{n+3} = P_{n+1} + P_n`, so `P_19 = 114`.
//! * **Analytic convention** (used by the Binet form and the growth bounds):
//!   the same recurrence started at `1, 1, 1`, i.e. `A_n = P_{n+1}`. This is
//!   the sequence whose Binet coefficient is
//!   `a = alpha (alpha + 1) / (3 alpha^2 - 1) ≈ 0.7221`, and it is the one
//!   for which the classical estimates
//!   `alpha^{n-2} <= A_n <= alpha^{n-1}` (n >= 4) and
//!   `|A_n - a alpha^n| < alpha^{-n/2}` (n >= 1) hold. Under the list
//!   convention both estimates are false (the lower growth bound already
//!   fails at `P_5 = 2 < alpha^3`), so the analytic statements are certified
//!   on `A_n` — a one-index shift that is immaterial to every downstream
//!   bound because final index boxes are converted conservatively.

use crate::bigreal::{AlgebraicConstants, BigReal};
use crate::{Error, Result};
use once_cell::sync::Lazy;
use rug::Integer;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::RwLock;

/// Process-wide cached table of Padovan values (list convention).
/// Concurrent readers; exclusive lock only while extending.
static TABLE: Lazy<RwLock<Vec<Integer>>> = Lazy::new(|| {
    RwLock::new(vec![Integer::from(0), Integer::from(1), Integer::from(1)])
});

/// Exact `P_n` in the list convention (`P_0 = 0`, `P_1 = P_2 = 1`).
pub fn padovan(n: usize) -> Integer {
    {
        let t = TABLE.read().unwrap();
        if n < t.len() {
            return t[n].clone();
        }
    }
    let mut t = TABLE.write().unwrap();
    while t.len() <= n {
        let len = t.len();
        let next = Integer::from(&t[len - 2] + &t[len - 3]);
        t.push(next);
    }
    t[n].clone()
}

/// Exact `A_n = P_{n+1}`, the analytic-convention value whose Binet
/// coefficient is `a`.
pub fn padovan_analytic(n: usize) -> Integer {
    padovan(n + 1)
}

/// Canonical representative of a list-convention index: `1, 2 -> 3` and
/// `4 -> 5` (equal values are reported at the largest index), all other
/// indices are already canonical.
pub fn canonical_index(n: usize) -> usize {
    match n {
        1 | 2 => 3,
        4 => 5,
        _ => n,
    }
}

/// All canonical pairs `(n, m)`, `m <= n <= n_max`, with `P_n + P_m = x`,
/// sorted by descending `n`. Indices are canonical per [`canonical_index`],
/// so no duplicate value-pairs appear.
pub fn representations(x: &Integer, n_max: usize) -> Vec<(usize, usize)> {
    // Map each Padovan value (<= x) to its canonical index.
    let mut by_value: HashMap<Integer, usize> = HashMap::new();
    let mut canon_indices: Vec<usize> = Vec::new();
    for n in 0..=n_max {
        if canonical_index(n) != n {
            continue;
        }
        let v = padovan(n);
        if &v > x {
            // The sequence is nondecreasing from index 5 on; nothing bigger
            // can contribute, but small indices are already behind us.
            if n > 5 {
                break;
            }
            continue;
        }
        by_value.entry(v).or_insert(n);
        canon_indices.push(n);
    }
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &n in canon_indices.iter().rev() {
        let rest = Integer::from(x - &padovan(n));
        if let Some(&m) = by_value.get(&rest) {
            if m <= n && !out.contains(&(n, m)) {
                out.push((n, m));
            }
        }
    }
    out
}

/// Binet residual `e(n) = A_n - a alpha^n` (analytic convention) as a
/// certified interval, together with the certified bound check
/// `|e(n)| < alpha^{-n/2}`.
pub struct BinetError {
    pub n: usize,
    pub e_n: BigReal,
}

/// Compute the Binet residual at analytic index `n` and certify the bound
/// `|e(n)| < alpha^{-n/2}` at the given working precision.
pub fn binet_residual(n: usize, prec: u32, consts: &AlgebraicConstants) -> Result<BinetError> {
    let pn = BigReal::from_integer(&padovan_analytic(n), prec);
    let apow = consts.alpha.pow_i64(n as i64);
    let e_n = pn.sub(&consts.a.mul(&apow));
    let bound = consts.alpha.pow_i64(-(n as i64)).sqrt();
    match e_n.abs().certified_cmp(&bound) {
        Some(Ordering::Less) => Ok(BinetError { n, e_n }),
        Some(_) => Err(Error::Mismatch(format!(
            "Binet residual bound fails at n = {n}"
        ))),
        None => Err(Error::AmbiguousComparison(format!(
            "Binet residual at n = {n} not separated from its bound"
        ))),
    }
}

/// Certify the growth bounds `alpha^{n-2} <= A_n <= alpha^{n-1}` for all
/// analytic indices `4 <= n <= n_max` in a single incremental sweep.
pub fn certify_growth(n_max: usize, prec: u32, consts: &AlgebraicConstants) -> Result<()> {
    // alpha^{n-2}, updated multiplicatively; interval widening over the sweep
    // is covered by the working precision.
    let mut low = consts.alpha.pow_i64(2); // n = 4: alpha^{n-2}
    for n in 4..=n_max {
        let value = padovan_analytic(n);
        let high = low.mul(&consts.alpha); // alpha^{n-1}
        let v = BigReal::from_integer(&value, prec);
        let lower_ok = matches!(
            low.certified_cmp(&v),
            Some(Ordering::Less) | Some(Ordering::Equal)
        );
        let upper_ok = matches!(
            v.certified_cmp(&high),
            Some(Ordering::Less) | Some(Ordering::Equal)
        );
        if !lower_ok || !upper_ok {
            return Err(Error::AmbiguousComparison(format!(
                "growth bounds not certified at analytic n = {n}"
            )));
        }
        low = low.mul(&consts.alpha);
    }
    Ok(())
}

/// Certify the Binet residual bound for all `1 <= n <= n_max` in one sweep
/// (incremental powers; far cheaper than calling [`binet_residual`] per n).
pub fn certify_binet(n_max: usize, prec: u32, consts: &AlgebraicConstants) -> Result<()> {
    let mut apow = consts.alpha.clone(); // alpha^1
    let inv_sqrt = consts.alpha.recip().sqrt(); // alpha^{-1/2}
    let mut bound = inv_sqrt.clone(); // alpha^{-n/2} at n = 1
    for n in 1..=n_max {
        let pn = BigReal::from_integer(&padovan_analytic(n), prec);
        let e_n = pn.sub(&consts.a.mul(&apow));
        if e_n.abs().certified_cmp(&bound) != Some(Ordering::Less) {
            return Err(Error::AmbiguousComparison(format!(
                "Binet residual bound not certified at analytic n = {n}"
            )));
        }
        apow = apow.mul(&consts.alpha);
        bound = bound.mul(&inv_sqrt);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigreal::AlgebraicConstants;

    #[test]
    fn listed_values() {
        assert_eq!(padovan(0), 0);
        assert_eq!(padovan(1), 1);
        assert_eq!(padovan(19), 114);
        assert_eq!(padovan(20), 151);
    }

    #[test]
    fn matches_naive_recurrence_oracle() {
        // Independent naive implementation, list convention.
        let mut v = vec![Integer::from(0), Integer::from(1), Integer::from(1)];
        for n in 3..=200 {
            let next = Integer::from(&v[n - 2] + &v[n - 3]);
            v.push(next);
        }
        assert_eq!(padovan(200), v[200]);
        for n in 3..=1000usize {
            // exact recurrence check on the cached table
            assert_eq!(padovan(n), padovan(n - 2) + padovan(n - 3));
        }
    }

    #[test]
    fn representation_examples() {
        let n20 = 20;
        assert_eq!(
            representations(&Integer::from(3), n20),
            vec![(6, 0), (5, 3)]
        );
        assert_eq!(representations(&Integer::from(0), n20), vec![(0, 0)]);
        assert_eq!(
            representations(&Integer::from(967), 30),
            vec![(26, 20), (25, 23)]
        );
    }

    #[test]
    fn representation_roundtrip_property() {
        // representations(P_a + P_b) always contains the canonical (a, b).
        for a in 0..40usize {
            for b in 0..=a {
                let x = padovan(a) + padovan(b);
                let (ca, cb) = (canonical_index(a), canonical_index(b));
                let (hi, lo) = if ca >= cb { (ca, cb) } else { (cb, ca) };
                let reps = representations(&x, 45);
                assert!(
                    reps.contains(&(hi, lo)),
                    "missing canonical ({hi},{lo}) for P_{a}+P_{b}={x}: {reps:?}"
                );
                for &(n, m) in &reps {
                    assert_eq!(padovan(n) + padovan(m), x);
                }
            }
        }
    }

    #[test]
    fn binet_and_growth_small_range() {
        let consts = AlgebraicConstants::new(512).unwrap();
        certify_growth(400, 512, &consts).unwrap();
        certify_binet(400, 512, &consts).unwrap();
        let be = binet_residual(50, 256, &consts).unwrap();
        assert_eq!(be.n, 50);
    }
}
