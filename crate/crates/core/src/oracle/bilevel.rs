//! Bilevel LPs in standard form, solved by enumerating follower bases.
//!
//! Leader: `min c11·x1 + c12·x2` s.t. `A11 x1 + A12 x2 = b1`, `x1 ≥ 0`.
//! Follower: `min c22·x2` s.t. `A21 x1 + A22 x2 = b2`, `x2 ≥ 0`.
//!
//! A pair `(x1, x2)` is bilevel feasible iff some dual-feasible follower basis `B` makes the
//! basic solution for `x1` feasible and `x2` attains its objective value. Each basis therefore
//! yields a linear system, and the optimum is the least infimum over all of them.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::exactnum::{dot, gauss_solve, rank, unit, zeros, GaussSolution, QMat, QVec, Rational};
use crate::genpoly::{ExtReal, GenPoly, Ineq};
use crate::mlp::{Level, MlpInstance, SolveReport, Status};
use crate::pwl::Combinations;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardBilevel {
    pub a11: QMat,
    pub a12: QMat,
    pub b1: QVec,
    pub a21: QMat,
    pub a22: QMat,
    pub b2: QVec,
    pub c11: QVec,
    pub c12: QVec,
    pub c22: QVec,
}

/// A follower basis: column indices of `A22`, `|B|` equal to its row count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisCertificate {
    pub basis: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub report: SolveReport,
    /// Basis whose system gave the reported value (first in enumeration order).
    pub best: Option<BasisCertificate>,
    pub subsets: usize,
    pub nonsingular: usize,
    pub dual_feasible: usize,
    pub consistent: usize,
}

impl StandardBilevel {
    pub fn n1(&self) -> usize {
        self.a11.cols()
    }

    pub fn n2(&self) -> usize {
        self.a12.cols()
    }

    pub fn validate(&self) -> Result<()> {
        let (n1, n2) = (self.n1(), self.n2());
        let m1 = self.a11.rows();
        let m2 = self.a22.rows();
        check_dim("A12 rows", m1, self.a12.rows())?;
        check_dim("b1", m1, self.b1.len())?;
        check_dim("A21 columns", n1, self.a21.cols())?;
        check_dim("A21 rows", m2, self.a21.rows())?;
        check_dim("A22 columns", n2, self.a22.cols())?;
        check_dim("b2", m2, self.b2.len())?;
        check_dim("c11", n1, self.c11.len())?;
        check_dim("c12", n2, self.c12.len())?;
        check_dim("c22", n2, self.c22.len())?;
        if rank(&self.a22) != m2 {
            return Err(Error::Precondition("A22 must have full row rank".into()));
        }
        Ok(())
    }

    fn leader_objective(&self) -> QVec {
        self.c11.iter().chain(&self.c12).cloned().collect()
    }

    /// Leader equalities and `x1 ≥ 0` over `(x1, x2)`.
    fn leader_rows(&self) -> Vec<Ineq> {
        let mut rows = equalities(&self.a11, &self.a12, &self.b1);
        let n = self.n1() + self.n2();
        rows.extend((0..self.n1()).map(|j| Ineq::weak(unit(n, j), Rational::zero())));
        rows
    }

    /// Follower equalities and `x2 ≥ 0` over `(x1, x2)`.
    fn follower_rows(&self) -> Vec<Ineq> {
        let mut rows = equalities(&self.a21, &self.a22, &self.b2);
        let n = self.n1() + self.n2();
        rows.extend((self.n1()..n).map(|j| Ineq::weak(unit(n, j), Rational::zero())));
        rows
    }

    fn linear_rows(&self) -> Vec<Ineq> {
        let mut rows = self.leader_rows();
        rows.extend(self.follower_rows());
        rows
    }

    /// The same problem as a 2-level instance.
    pub fn to_mlp(&self) -> Result<MlpInstance> {
        self.validate()?;
        let n1 = self.n1();
        let mut follower_obj = zeros(n1);
        follower_obj.extend(self.c22.iter().cloned());
        MlpInstance::new(
            vec![n1, self.n2()],
            vec![
                Level {
                    rows: self.leader_rows(),
                    objective: self.leader_objective(),
                },
                Level {
                    rows: self.follower_rows(),
                    objective: follower_obj,
                },
            ],
            Rational::zero(),
        )
    }
}

/// `[A | B] (x1, x2) = b` as pairs of weak rows.
fn equalities(a: &QMat, b: &QMat, rhs: &[Rational]) -> Vec<Ineq> {
    let mut rows = Vec::new();
    for (i, r) in rhs.iter().enumerate() {
        let coeffs: QVec = a.row(i).iter().chain(b.row(i)).cloned().collect();
        rows.extend(equality(coeffs, r.clone()));
    }
    rows
}

/// `a·x = b` as two weak rows.
pub(crate) fn equality(coeffs: QVec, rhs: Rational) -> [Ineq; 2] {
    let neg: QVec = coeffs.iter().map(|v| -v).collect();
    [Ineq::weak(coeffs, rhs.clone()), Ineq::weak(neg, -rhs)]
}

/// Rows certifying that basis `basis` is optimal for `min c·z  s.t.  A z = b − P u, z ≥ 0` at
/// the current parameter `u`, over the variables `(u, z)`: the value equation
/// `yᵀ(b − P u) = c·z` with `y = A_B^{-T} c_B`, and basic feasibility
/// `A_B^{-1}(b − P u) ≥ 0`. `None` when `A_B` is singular or `B` is not dual feasible;
/// the flag reports which.
pub(crate) fn certificate_rows(
    p: &QMat,
    a: &QMat,
    b: &[Rational],
    c: &[Rational],
    basis: &[usize],
) -> std::result::Result<Vec<Ineq>, Rejected> {
    let m = a.rows();
    let (nu, nz) = (p.cols(), a.cols());
    let ab = a.select_columns(basis);
    let c_b: QVec = basis.iter().map(|&j| c[j].clone()).collect();
    let y = match gauss_solve(&ab.transpose(), &c_b) {
        GaussSolution::Unique(y) => y,
        _ => return Err(Rejected::Singular),
    };
    for j in 0..nz {
        let col: QVec = (0..m).map(|i| a.get(i, j).clone()).collect();
        if (&c[j] - dot(&col, &y)).is_negative() {
            return Err(Rejected::DualInfeasible);
        }
    }

    let mut rows = Vec::new();
    // c·z + (Pᵀy)·u = yᵀb
    let pty = p.transpose().mul_vec(&y);
    let coeffs: QVec = pty.into_iter().chain(c.iter().cloned()).collect();
    rows.extend(equality(coeffs, dot(&y, b)));

    // Row i of A_B^{-1}: solve A_Bᵀ w = e_i. Then w·b − (Pᵀw)·u ≥ 0.
    let abt = ab.transpose();
    for i in 0..m {
        let w = match gauss_solve(&abt, &unit(m, i)) {
            GaussSolution::Unique(w) => w,
            _ => unreachable!("A_B is invertible"),
        };
        let mut coeffs: QVec = p.transpose().mul_vec(&w).iter().map(|v| -v).collect();
        coeffs.extend(zeros(nz));
        debug_assert_eq!(coeffs.len(), nu + nz);
        rows.push(Ineq::weak(coeffs, -dot(&w, b)));
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Rejected {
    Singular,
    DualInfeasible,
}

/// Basis system for `p` over `(x1, x2)`, or `None` if `basis` is singular or dual
/// infeasible. Adds `c1·x ≤ t` when a threshold is given.
pub fn basis_system(
    p: &StandardBilevel,
    basis: &[usize],
    t: Option<&Rational>,
) -> Result<Option<GenPoly>> {
    p.validate()?;
    check_dim("basis size", p.a22.rows(), basis.len())?;
    let n = p.n1() + p.n2();
    let mut rows = p.linear_rows();
    match certificate_rows(&p.a21, &p.a22, &p.b2, &p.c22, basis) {
        Ok(r) => rows.extend(r),
        Err(_) => return Ok(None),
    }
    if let Some(t) = t {
        let c: QVec = p.leader_objective().iter().map(|v| -v).collect();
        rows.push(Ineq::weak(c, -t.clone()));
    }
    Ok(Some(GenPoly::from_rows(n, rows)?))
}

/// Exhaustive follower-basis enumeration. The result is exact whenever the follower's
/// problem attains its optimum for every leader choice it is feasible for (e.g. a bounded
/// follower region).
pub fn bilevel_basis_solve(p: &StandardBilevel, t: Option<&Rational>) -> Result<BasisReport> {
    p.validate()?;
    let c1 = p.leader_objective();
    let m2 = p.a22.rows();
    let mut out = BasisReport {
        report: SolveReport {
            status: Status::Infeasible,
            value: ExtReal::PosInf,
            attained: false,
            witness: None,
        },
        best: None,
        subsets: 0,
        nonsingular: 0,
        dual_feasible: 0,
        consistent: 0,
    };
    let mut best_poly: Option<GenPoly> = None;
    let mut best_attained = false;
    let base = p.linear_rows();
    for basis in Combinations::new(p.n2(), m2) {
        out.subsets += 1;
        let cert = match certificate_rows(&p.a21, &p.a22, &p.b2, &p.c22, &basis) {
            Ok(rows) => {
                out.nonsingular += 1;
                out.dual_feasible += 1;
                rows
            }
            Err(Rejected::DualInfeasible) => {
                out.nonsingular += 1;
                continue;
            }
            Err(Rejected::Singular) => continue,
        };
        let mut rows = base.clone();
        rows.extend(cert);
        if let Some(t) = t {
            rows.push(Ineq::weak(c1.iter().map(|v| -v).collect(), -t.clone()));
        }
        let system = GenPoly::from_rows(c1.len(), rows)?;
        if system.is_empty() {
            continue;
        }
        out.consistent += 1;
        let inf = system.inf_linear(&c1);
        let better = inf.value < out.report.value
            || (inf.value == out.report.value && inf.attained && !best_attained);
        if better {
            out.report.value = inf.value;
            best_attained = inf.attained;
            out.best = Some(BasisCertificate { basis });
            best_poly = Some(system);
        }
    }
    out.report.status = match out.report.value {
        ExtReal::PosInf => Status::Infeasible,
        ExtReal::NegInf => Status::Unbounded,
        ExtReal::Finite(_) => Status::Finite,
    };
    if let (ExtReal::Finite(v), true, Some(poly)) = (&out.report.value, best_attained, best_poly) {
        let level = Ineq::weak(c1.iter().map(|x| -x).collect(), -v.clone());
        out.report.witness = poly.with(level).witness_point();
        out.report.attained = out.report.witness.is_some();
    }
    Ok(out)
}
