//! Fourier–Motzkin elimination for mixed weak/strict systems.
//!
//! A combined row is strict iff one of its parents is strict. Equalities (a weak row together
//! with its exact negation) are eliminated by substitution instead of pairwise combination.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use super::Ineq;
use crate::exactnum::{QVec, Rational};

/// One elimination step: the variable removed and the system it was removed from.
pub(super) struct Stage {
    pub var: usize,
    pub rows: Vec<Ineq>,
}

enum Normalized {
    Tautology,
    Contradiction,
    Row(Ineq),
}

fn normalize(mut row: Ineq) -> Normalized {
    let Some(lead) = row.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) else {
        let holds = if row.strict {
            row.rhs.is_negative()
        } else {
            !row.rhs.is_positive()
        };
        return if holds {
            Normalized::Tautology
        } else {
            Normalized::Contradiction
        };
    };
    if !lead.is_one() {
        for c in row.coeffs.iter_mut() {
            *c /= &lead;
        }
        row.rhs /= &lead;
    }
    Normalized::Row(row)
}

/// Normalizes every row, drops tautologies and single-row dominated duplicates, and detects
/// contradictions between a row and its opposite. Returns `None` when the system is
/// infeasible.
pub(super) fn simplify(rows: Vec<Ineq>) -> Option<Vec<Ineq>> {
    let mut out: Vec<Ineq> = Vec::with_capacity(rows.len());
    let mut index: HashMap<QVec, usize> = HashMap::new();
    for row in rows {
        let row = match normalize(row) {
            Normalized::Tautology => continue,
            Normalized::Contradiction => return None,
            Normalized::Row(r) => r,
        };
        match index.get(&row.coeffs) {
            Some(&i) => {
                let kept = &mut out[i];
                if row.rhs > kept.rhs || (row.rhs == kept.rhs && row.strict && !kept.strict) {
                    *kept = row;
                }
            }
            None => {
                index.insert(row.coeffs.clone(), out.len());
                out.push(row);
            }
        }
    }
    // a·x ≥ b together with -a·x ≥ c confines a·x to [b, -c].
    for row in &out {
        let neg: QVec = row.coeffs.iter().map(|c| -c).collect();
        if let Some(&j) = index.get(&neg) {
            let other = &out[j];
            let upper = -&other.rhs;
            if row.rhs > upper || (row.rhs == upper && (row.strict || other.strict)) {
                return None;
            }
        }
    }
    Some(out)
}

/// Finds a weak row with a nonzero coefficient on `var` whose exact negation is also present.
fn find_equality(rows: &[Ineq], var: usize) -> Option<(usize, usize)> {
    let mut index: HashMap<&QVec, usize> = HashMap::new();
    for (i, r) in rows.iter().enumerate() {
        if !r.strict {
            index.insert(&r.coeffs, i);
        }
    }
    for (i, r) in rows.iter().enumerate() {
        if r.strict || r.coeffs[var].is_zero() {
            continue;
        }
        let neg: QVec = r.coeffs.iter().map(|c| -c).collect();
        if let Some(&j) = index.get(&neg) {
            if rows[j].rhs == -&r.rhs {
                return Some((i, j));
            }
        }
    }
    None
}

fn combine(p: &Ineq, q: &Ineq, var: usize) -> Ineq {
    // p has a positive and q a negative coefficient on `var`.
    let sp = Rational::one() / &p.coeffs[var];
    let sq = Rational::one() / -&q.coeffs[var];
    let coeffs = p
        .coeffs
        .iter()
        .zip(&q.coeffs)
        .enumerate()
        .map(|(k, (a, b))| {
            if k == var {
                Rational::zero()
            } else {
                a * &sp + b * &sq
            }
        })
        .collect();
    Ineq {
        coeffs,
        rhs: &p.rhs * &sp + &q.rhs * &sq,
        strict: p.strict || q.strict,
    }
}

/// Removes `var` from an already simplified system. Returns `None` if infeasibility surfaces.
pub(super) fn eliminate_var(rows: Vec<Ineq>, var: usize) -> Option<Vec<Ineq>> {
    if let Some((e, e_neg)) = find_equality(&rows, var) {
        let eq = rows[e].clone();
        let pivot = eq.coeffs[var].clone();
        let out = rows
            .into_iter()
            .enumerate()
            .filter(|&(i, _)| i != e && i != e_neg)
            .map(|(_, r)| {
                if r.coeffs[var].is_zero() {
                    return r;
                }
                let f = &r.coeffs[var] / &pivot;
                let coeffs = r
                    .coeffs
                    .iter()
                    .zip(&eq.coeffs)
                    .enumerate()
                    .map(|(k, (a, b))| if k == var { Rational::zero() } else { a - &f * b })
                    .collect();
                Ineq {
                    coeffs,
                    rhs: &r.rhs - &f * &eq.rhs,
                    strict: r.strict,
                }
            })
            .collect();
        return simplify(out);
    }

    let mut keep = Vec::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for r in rows {
        if r.coeffs[var].is_positive() {
            pos.push(r);
        } else if r.coeffs[var].is_negative() {
            neg.push(r);
        } else {
            keep.push(r);
        }
    }
    for p in &pos {
        for q in &neg {
            keep.push(combine(p, q, var));
        }
    }
    simplify(keep)
}

/// Elimination cost heuristic: substitution is always preferred, otherwise the number of
/// rows the step adds.
fn cost(rows: &[Ineq], var: usize) -> i64 {
    if find_equality(rows, var).is_some() {
        return i64::MIN;
    }
    let p = rows.iter().filter(|r| r.coeffs[var].is_positive()).count() as i64;
    let n = rows.iter().filter(|r| r.coeffs[var].is_negative()).count() as i64;
    p * n - p - n
}

/// Eliminates every variable in `vars` (in heuristic order). Returns the final system, or
/// `None` when the system is infeasible, plus the recorded stages when `record` is set.
pub(super) fn eliminate_all(
    rows: Vec<Ineq>,
    vars: &[usize],
    record: bool,
) -> (Option<Vec<Ineq>>, Vec<Stage>) {
    let mut stages = Vec::new();
    let Some(mut rows) = simplify(rows) else {
        return (None, stages);
    };
    let mut remaining: Vec<usize> = vars.to_vec();
    while !remaining.is_empty() {
        let (pos, &var) = remaining
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| cost(&rows, v))
            .expect("nonempty");
        remaining.remove(pos);
        if record {
            stages.push(Stage {
                var,
                rows: rows.clone(),
            });
        }
        match eliminate_var(rows, var) {
            Some(r) => rows = r,
            None => return (None, stages),
        }
    }
    (Some(rows), stages)
}
