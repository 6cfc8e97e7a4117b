//! Final exhaustive searches inside the reduced box, plus the independent
//! brute-force cross-check over small `d`.
//!
//! After the reduction pipeline, every solution of one of the four stated
//! equations whose x-coordinate is a sum of two Padovan numbers lies in the
//! final box (`n <= n_max`, `k <= k_max`). These scans enumerate that box
//! directly, so their output is the complete list of exceptional `d`.

use crate::padovan;
use crate::pell::{self, EqKind, Family};
use crate::{Error, Result};
use rayon::prelude::*;
use rug::{Complete, Integer};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One solution of a stated equation whose x-coordinate is a sum of two
/// Padovan numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub d: String,
    pub kind: EqKind,
    /// 1-based position among this equation's solutions (the exponent rank
    /// among the stated-sign exponents).
    pub ordinal: usize,
    /// Exponent of the fundamental producing this solution.
    pub k_unit: u64,
    pub x_value: String,
    /// Canonical index pairs `(n, m)` with `x = P_n + P_m`.
    pub representations: Vec<(usize, usize)>,
}

/// All representable solutions of `kind` for a single nonsquare `d`, with
/// exponent at most `k_max` and Padovan indices at most `n_max`.
pub fn scan_d(kind: EqKind, d: &Integer, k_max: u64, n_max: usize) -> Result<Vec<SolutionRecord>> {
    let f = pell::fundamental(d, kind.family)?;
    if !f.solves_sign(kind.sign) {
        return Ok(vec![]);
    }
    let x_cap = padovan::padovan(n_max) * 2u32;
    let mut out = Vec::new();
    for (ord, k) in f.stated_ks(kind.sign, k_max).into_iter().enumerate() {
        let x = pell::solution_x(&f, k);
        if x > x_cap {
            break; // monotone in k: nothing further is representable
        }
        let reps = padovan::representations(&x, n_max);
        if !reps.is_empty() {
            out.push(SolutionRecord {
                d: d.to_string(),
                kind,
                ordinal: ord + 1,
                k_unit: k,
                x_value: x.to_string(),
                representations: reps,
            });
        }
    }
    Ok(out)
}

/// Exceptional-`d` map for a family: every `d` in `ds` whose stated
/// equation (either sign) has at least `min_count` representable solutions.
pub fn scan_final(
    family: Family,
    ds: &[Integer],
    k_max: u64,
    n_max: usize,
    min_count: usize,
) -> Result<BTreeMap<String, BTreeMap<Integer, Vec<SolutionRecord>>>> {
    let mut out: BTreeMap<String, BTreeMap<Integer, Vec<SolutionRecord>>> = BTreeMap::new();
    let per_d: Result<Vec<Vec<(EqKind, Integer, Vec<SolutionRecord>)>>> = ds
        .par_iter()
        .map(|d| {
            let mut rows = Vec::new();
            for sign in [1i32, -1] {
                let kind = EqKind::new(family, sign);
                let recs = scan_d(kind, d, k_max, n_max)?;
                if recs.len() >= min_count {
                    rows.push((kind, d.clone(), recs));
                }
            }
            Ok(rows)
        })
        .collect();
    for rows in per_d? {
        for (kind, d, recs) in rows {
            out.entry(kind.label()).or_default().insert(d, recs);
        }
    }
    Ok(out)
}

/// Independent brute force: all nonsquare `d <= d_max`, all four stated
/// equations, same box. Returns only `d` with at least two representable
/// solutions of the same stated equation.
pub fn small_d_sweep(
    d_max: u64,
    k_max: u64,
    n_max: usize,
) -> Result<BTreeMap<String, BTreeMap<Integer, Vec<SolutionRecord>>>> {
    let ds: Vec<Integer> = (2..=d_max)
        .map(Integer::from)
        .filter(|d| pell::perfect_sqrt(d).is_none())
        .collect();
    let mut out = BTreeMap::new();
    for family in [Family::Unit, Family::Quad] {
        let m = scan_final(family, &ds, k_max, n_max, 2)?;
        for (label, dm) in m {
            out.insert(label, dm);
        }
    }
    Ok(out)
}

/// Expected exceptional data per stated equation: `(d, x-coordinates)` of
/// every solution that is a sum of two Padovan numbers, for squarefree `d`.
pub fn expected_exceptional(kind: EqKind) -> Vec<(u64, Vec<u64>)> {
    match (kind.family, kind.sign) {
        (Family::Unit, 1) => vec![
            (2, vec![3, 17]),
            (3, vec![2, 7, 26]),
            (6, vec![5, 49]),
            (15, vec![4, 31]),
            (110, vec![21, 881]),
            (483, vec![22, 967]),
        ],
        (Family::Unit, -1) => vec![
            (2, vec![1, 7, 41]),
            (5, vec![2, 38]),
            (10, vec![3, 117]),
            (17, vec![4, 268]),
        ],
        (Family::Quad, 1) => vec![
            (3, vec![4, 14, 52]),
            (5, vec![3, 7, 18]),
            (21, vec![5, 23, 2525]),
        ],
        (Family::Quad, -1) => vec![(2, vec![2, 14]), (5, vec![1, 4, 11, 29])],
        _ => unreachable!("sign is validated to ±1 by EqKind::new"),
    }
}

/// One check line of the theorem comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckLine {
    pub label: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TheoremReport {
    pub lines: Vec<CheckLine>,
    pub notes: Vec<String>,
}

impl TheoremReport {
    pub fn all_ok(&self) -> bool {
        self.lines.iter().all(|l| l.ok)
    }
}

/// Compare a computed exceptional-`d` map (both families) against the
/// stated classification, restricted to squarefree `d`. Also spot-checks
/// the published representations, including the one misprint in the source
/// table (`x = 2` is `P_5 + P_0 = P_3 + P_3`, not `P_3 + P_0`).
pub fn verify_theorems(
    computed: &BTreeMap<String, BTreeMap<Integer, Vec<SolutionRecord>>>,
    family: Option<Family>,
) -> TheoremReport {
    let mut lines = Vec::new();
    let mut notes = Vec::new();
    for kind in EqKind::all() {
        if family.is_some_and(|f| kind.family != f) {
            continue;
        }
        let label = kind.label();
        let expected = expected_exceptional(kind);
        let empty = BTreeMap::new();
        let got = computed.get(&label).unwrap_or(&empty);
        let got_sf: BTreeMap<&Integer, &Vec<SolutionRecord>> = got
            .iter()
            .filter(|(d, _)| pell::is_squarefree(d))
            .collect();
        let exp_ds: Vec<Integer> = expected.iter().map(|(d, _)| Integer::from(*d)).collect();
        let got_ds: Vec<Integer> = got_sf.keys().map(|d| (*d).clone()).collect();
        lines.push(CheckLine {
            label: format!("{label}: listed exceptional d reproduced"),
            ok: exp_ds.iter().all(|d| got_ds.contains(d)),
            detail: format!("expected {exp_ds:?}, computed {got_ds:?}"),
        });
        let extras: Vec<&Integer> = got_ds.iter().filter(|d| !exp_ds.contains(d)).collect();
        lines.push(CheckLine {
            label: format!("{label}: no exceptional d beyond the stated list"),
            ok: extras.is_empty(),
            detail: format!("extras {extras:?}"),
        });
        if !extras.is_empty() {
            notes.push(format!(
                "{label}: the scan certifies additional exceptional d {extras:?} not in the \
                 stated classification (each has a second solution, typically the fundamental \
                 coordinate itself, that is a sum of two Padovan numbers)"
            ));
        }
        for (d, xs) in &expected {
            let di = Integer::from(*d);
            let got_xs: Vec<String> = got_sf
                .get(&di)
                .map(|recs| recs.iter().map(|r| r.x_value.clone()).collect())
                .unwrap_or_default();
            let exp_xs: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
            // every listed solution must be found; extras are flagged as
            // notes (the stated lists are not exhaustive in one case)
            let listed_ok = got_xs.len() >= exp_xs.len() && got_xs[..exp_xs.len()] == exp_xs[..];
            lines.push(CheckLine {
                label: format!("{label} d={d}: listed solutions"),
                ok: listed_ok,
                detail: format!("expected {exp_xs:?}, computed {got_xs:?}"),
            });
            if got_xs.len() > exp_xs.len() {
                notes.push(format!(
                    "{label} d={d}: representable solutions {:?} beyond the stated list {exp_xs:?}",
                    &got_xs[exp_xs.len()..]
                ));
            }
        }
    }

    // Representation spot checks (canonical index pairs).
    let spot: [(u64, &[(usize, usize)]); 5] = [
        (881, &[(26, 17), (25, 22)]),
        (967, &[(26, 20), (25, 23)]),
        (2525, &[(30, 11)]),
        (268, &[(22, 6)]),
        (2, &[(5, 0), (3, 3)]),
    ];
    for (x, want) in spot {
        let reps = padovan::representations(&Integer::from(x), 60);
        let ok = want.iter().all(|w| reps.contains(w)) && reps.len() == want.len();
        lines.push(CheckLine {
            label: format!("representations of {x}"),
            ok,
            detail: format!("expected {want:?}, computed {reps:?}"),
        });
    }
    notes.push(
        "source table lists x=2 as P_3+P_0; the correct canonical pairs are (5,0) and (3,3)"
            .to_string(),
    );
    notes.push(
        "non-squarefree d (e.g. d=8 on the unit +1 side) also reach two representable \
         solutions; the stated classification covers squarefree d only"
            .to_string(),
    );
    TheoremReport { lines, notes }
}

/// Convenience: candidate `d` lists straight from the stated classification
/// plus the known non-squarefree extras, for quick CLI verification runs.
pub fn known_exceptional_ds(family: Family) -> Vec<Integer> {
    let mut ds: Vec<Integer> = [1i32, -1]
        .iter()
        .flat_map(|&s| expected_exceptional(EqKind::new(family, s)))
        .map(|(d, _)| Integer::from(d))
        .collect();
    if family == Family::Unit {
        ds.push(Integer::from(8)); // x^2 - 8 y^2 = 1: x = 3, 17 both representable
    }
    ds.sort();
    ds.dedup();
    ds
}

/// Drop-in helper for `Error::Mismatch` construction in CLI paths.
pub fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Mismatch(what.to_string()))
    }
}

/// `x` values for spot tests: `(&Integer, &Integer) -> Integer` sum helper.
pub fn int_sum(a: &Integer, b: &Integer) -> Integer {
    (a + b).complete()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_d_unit_plus_two() {
        // x^2 - 2 y^2 = 1: x_k from (3,2); x1=3=P_6+P_0, x2=17=P_12+P_3
        let kind = EqKind::new(Family::Unit, 1);
        let recs = scan_d(kind, &Integer::from(2), 133, 408).unwrap();
        let xs: Vec<&str> = recs.iter().map(|r| r.x_value.as_str()).collect();
        assert_eq!(xs, ["3", "17"]);
    }

    #[test]
    fn scan_d_negative_side_parity() {
        // x^2 - 5 y^2 = -1: fundamental (2,1) has eps=-1; odd exponents
        let kind = EqKind::new(Family::Unit, -1);
        let recs = scan_d(kind, &Integer::from(5), 133, 408).unwrap();
        let xs: Vec<&str> = recs.iter().map(|r| r.x_value.as_str()).collect();
        assert_eq!(xs, ["2", "38"]);
        assert!(recs.iter().all(|r| r.k_unit % 2 == 1));
    }

    #[test]
    fn quad_minus_five_has_four() {
        // X^2 - 5 Y^2 = -4: X = 1, 4, 11, 29 (Lucas numbers at odd index)
        let kind = EqKind::new(Family::Quad, -1);
        let recs = scan_d(kind, &Integer::from(5), 248, 414).unwrap();
        let xs: Vec<&str> = recs.iter().map(|r| r.x_value.as_str()).collect();
        assert_eq!(xs, ["1", "4", "11", "29"]);
    }

    #[test]
    fn sweep_matches_theorems_to_thirty() {
        // tiny sweep: d <= 30 already exercises most exceptional rows
        let m = small_d_sweep(30, 133, 408).unwrap();
        let up = m.get("unit+1").unwrap();
        assert!(up.contains_key(&Integer::from(2)));
        assert!(up.contains_key(&Integer::from(3)));
        assert!(up.contains_key(&Integer::from(8))); // non-squarefree extra
        let qm = m.get("quad-4").unwrap();
        assert!(qm.contains_key(&Integer::from(5)));
    }
}
