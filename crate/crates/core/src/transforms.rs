//! Instance-to-instance transformations: right-hand-side scaling, forwarding of upper-level
//! rows to the last player, the `λ₁` unboundedness gadget, and structural condition checks.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, int, Rational};
use crate::genpoly::Ineq;
use crate::mlp::{Level, MlpInstance};

/// Returns `(A, λb, c)`; `λ` must be positive.
pub fn scale_rhs(inst: &MlpInstance, lambda: &Rational) -> Result<MlpInstance> {
    if !lambda.is_positive() {
        return Err(Error::Precondition(format!(
            "scaling factor must be positive, got {}",
            format_rational(lambda)
        )));
    }
    let levels = inst
        .levels()
        .iter()
        .map(|level| Level {
            rows: level
                .rows
                .iter()
                .map(|r| Ineq {
                    rhs: &r.rhs * lambda,
                    ..r.clone()
                })
                .collect(),
            objective: level.objective.clone(),
        })
        .collect();
    MlpInstance::new(inst.dims().to_vec(), levels, inst.eps().clone())
}

/// Reference to a row: 1-based level and 1-based position within that level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowRef {
    pub level: usize,
    pub row: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forwarded {
    pub instance: MlpInstance,
    /// Upper-level rows that involve later players' variables and therefore stay put
    /// (indices refer to the input instance).
    pub kept: Vec<RowRef>,
}

/// Moves every upper-level row that has no coefficients on later players' variables to the
/// last player. Moved rows are placed ahead of the last player's own rows, in level order.
pub fn forward_constraints(inst: &MlpInstance) -> Forwarded {
    let k = inst.k();
    let mut levels: Vec<Level> = inst.levels().to_vec();
    let mut moved = Vec::new();
    let mut kept = Vec::new();
    for l in 0..k.saturating_sub(1) {
        let later = inst.offset(l + 1);
        let (stay, go): (Vec<_>, Vec<_>) = levels[l]
            .rows
            .drain(..)
            .enumerate()
            .partition(|(_, r)| r.coeffs[later..].iter().any(|v| !v.is_zero()));
        kept.extend(stay.iter().map(|(i, _)| RowRef {
            level: l + 1,
            row: i + 1,
        }));
        levels[l].rows = stay.into_iter().map(|(_, r)| r).collect();
        moved.extend(go.into_iter().map(|(_, r)| r));
    }
    if !moved.is_empty() {
        let last = &mut levels[k - 1];
        moved.append(&mut last.rows);
        last.rows = moved;
    }
    let instance = MlpInstance::new(inst.dims().to_vec(), levels, inst.eps().clone())
        .expect("forwarding preserves dimensions");
    Forwarded { instance, kept }
}

/// Adds a leader variable `λ₁ ≥ 1` (appended to the leader's block, zero cost everywhere)
/// that multiplies every right-hand side, then forwards `λ₁ ≥ 1` to the last player.
///
/// The base instance must have no upper-level rows.
pub fn unboundedness_gadget(base: &MlpInstance) -> Result<MlpInstance> {
    let report = check_conditions(base);
    if !report.c1 {
        return Err(Error::Precondition(format!(
            "the unboundedness gadget needs an instance without upper-level rows ({})",
            report.violations.join("; ")
        )));
    }
    let n1 = base.dims()[0];
    let insert = |v: &[Rational], value: Rational| {
        let mut out = v[..n1].to_vec();
        out.push(value);
        out.extend_from_slice(&v[n1..]);
        out
    };
    let mut levels: Vec<Level> = base
        .levels()
        .iter()
        .map(|level| Level {
            rows: level
                .rows
                .iter()
                .map(|r| Ineq {
                    coeffs: insert(&r.coeffs, -r.rhs.clone()),
                    rhs: Rational::zero(),
                    strict: r.strict,
                })
                .collect(),
            objective: insert(&level.objective, Rational::zero()),
        })
        .collect();
    let mut bound = vec![Rational::zero(); base.total_vars() + 1];
    bound[n1] = Rational::one();
    levels[0].rows.push(Ineq::weak(bound, Rational::one()));

    let mut dims = base.dims().to_vec();
    dims[0] += 1;
    let lifted = MlpInstance::new(dims, levels, base.eps().clone())?;
    Ok(forward_constraints(&lifted).instance)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    /// No rows outside the last player's problem.
    pub c1: bool,
    /// The last player's rows include `0 ≤ x_i ≤ 1` for every variable.
    pub c2: bool,
    /// Every entry of `A`, `b`, `c` is an integer in `[-n, n]`, `n` the variable count.
    pub c3: bool,
    pub violations: Vec<String>,
}

/// Reads a weak row of the form `a·x_j ≥ r` as a bound on `x_j`: `Some((j, true, r/a))` for
/// a lower bound, `Some((j, false, r/a))` for an upper bound.
fn as_bound(row: &Ineq) -> Option<(usize, bool, Rational)> {
    if row.strict {
        return None;
    }
    let mut nz = row.coeffs.iter().enumerate().filter(|(_, v)| !v.is_zero());
    let (j, a) = nz.next()?;
    if nz.next().is_some() {
        return None;
    }
    Some((j, a.is_positive(), &row.rhs / a))
}

pub fn check_conditions(inst: &MlpInstance) -> ConditionReport {
    let k = inst.k();
    let n = inst.total_vars();
    let mut violations = Vec::new();

    let mut c1 = true;
    for (l, level) in inst.levels()[..k - 1].iter().enumerate() {
        for i in 0..level.rows.len() {
            c1 = false;
            violations.push(format!("C1: level {} has row {}", l + 1, i + 1));
        }
    }

    let mut has_lower = vec![false; n];
    let mut has_upper = vec![false; n];
    for row in &inst.level(k - 1).rows {
        if let Some((j, lower, v)) = as_bound(row) {
            if lower && v.is_zero() {
                has_lower[j] = true;
            }
            if !lower && v.is_one() {
                has_upper[j] = true;
            }
        }
    }
    let mut c2 = true;
    for j in 0..n {
        if !has_lower[j] {
            c2 = false;
            violations.push(format!("C2: no bound x{} >= 0 at the last level", j + 1));
        }
        if !has_upper[j] {
            c2 = false;
            violations.push(format!("C2: no bound x{} <= 1 at the last level", j + 1));
        }
    }

    let limit = int(n as i64);
    let ok = |v: &Rational| v.is_integer() && v.abs() <= limit;
    let mut c3 = true;
    for (l, level) in inst.levels().iter().enumerate() {
        for (i, row) in level.rows.iter().enumerate() {
            if !row.coeffs.iter().all(ok) || !ok(&row.rhs) {
                c3 = false;
                violations.push(format!(
                    "C3: row {} of level {} has an entry outside the integers in [-{n}, {n}]",
                    i + 1,
                    l + 1
                ));
            }
        }
        if !level.objective.iter().all(ok) {
            c3 = false;
            violations.push(format!(
                "C3: objective of level {} has an entry outside the integers in [-{n}, {n}]",
                l + 1
            ));
        }
    }
    ConditionReport {
        c1,
        c2,
        c3,
        violations,
    }
}
