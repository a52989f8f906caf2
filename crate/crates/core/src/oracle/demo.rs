//! Lifting follower-basis certificates to three levels does not work.
//!
//! The third player of [`buchheim`] has the standard form `min x3  s.t.  x3 − s3 = x2 − 1`,
//! `x3, s3 ≥ 0`. Replacing it by the certificate of its basis `{s3}` turns the trilevel
//! problem into a bilevel one whose feasible set contains `x = 0, s3 = 1`, while the
//! trilevel problem itself is infeasible.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::bilevel::{certificate_rows, equality};
use super::examples::buchheim;
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, int, unit, QMat, QVec, Rational};
use crate::genpoly::{GenPoly, Ineq};
use crate::mlp::{check_feasible_point, solve, Level, MlpInstance, SolveReport, Status};

/// Rows of the reformulated problem over `(x1, x2, x3, s3)`.
pub fn naive_rows(t: &Rational) -> Vec<Ineq> {
    let mut rows = vec![Ineq::weak(vec![int(0), int(0), int(-1), int(0)], -t.clone())];
    rows.extend(equality(vec![int(0), int(-1), int(1), int(-1)], int(-1)));
    rows.extend((0..4).map(|j| Ineq::weak(unit(4, j), Rational::zero())));
    let p = QMat::from_rows(2, vec![vec![int(0), int(-1)]]).expect("1x2");
    let a = QMat::from_rows(2, vec![vec![int(1), int(-1)]]).expect("1x2");
    let cert = certificate_rows(&p, &a, &[int(-1)], &[int(1), int(0)], &[1])
        .expect("basis {s3} is nonsingular and dual feasible");
    rows.extend(cert);
    rows
}

/// The naive bilevel problem `min_{x1} max_{x2, x3, s3} { x3 : naive rows }`.
pub fn naive_bilevel(t: &Rational) -> MlpInstance {
    MlpInstance::new(
        vec![1, 3],
        vec![
            Level {
                rows: Vec::new(),
                objective: vec![int(0), int(0), int(1), int(0)],
            },
            Level {
                rows: naive_rows(t),
                objective: vec![int(0), int(0), int(-1), int(0)],
            },
        ],
        Rational::zero(),
    )
    .expect("valid instance")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemoRecord {
    #[serde(with = "crate::exactnum::serde_rational")]
    pub t: Rational,
    /// Exact solve of the trilevel problem.
    pub exact: SolveReport,
    /// Exact solve of the naive bilevel reformulation.
    pub naive: SolveReport,
    pub basis: Vec<String>,
    /// `(x1, x2, x3, s3)`.
    #[serde(with = "crate::exactnum::serde_rational_vec")]
    pub certificate_point: QVec,
    /// The point satisfies every naive row.
    pub certificate_point_in_system: bool,
    /// The point is feasible for the naive bilevel problem.
    pub certificate_point_feasible: bool,
    pub mismatch: bool,
}

pub fn naive_trilevel_demo(t: &Rational) -> Result<DemoRecord> {
    if t.is_negative() {
        return Err(Error::Precondition(format!(
            "t must be nonnegative, got {}",
            format_rational(t)
        )));
    }
    let exact = solve(&buchheim());
    let naive_inst = naive_bilevel(t);
    let naive = solve(&naive_inst);
    let point = vec![int(0), int(0), int(0), int(1)];
    let system = GenPoly::from_rows(4, naive_rows(t))?;
    let in_system = system.contains(&point);
    let feasible = check_feasible_point(&naive_inst, &point)?;
    let mismatch = exact.status == Status::Infeasible && naive.status != Status::Infeasible;
    Ok(DemoRecord {
        t: t.clone(),
        exact,
        naive,
        basis: vec!["s3".into()],
        certificate_point: point,
        certificate_point_in_system: in_system,
        certificate_point_feasible: feasible,
        mismatch,
    })
}
