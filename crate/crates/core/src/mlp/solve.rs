use serde::{Deserialize, Serialize};

use super::MlpInstance;
use crate::error::{check_dim, Error, Result};
use crate::exactnum::{dot, QVec, Rational};
use crate::genpoly::{ExtReal, GenPoly, Ineq};
use crate::pwl::{lp_value_function, Piece, PwlFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Infeasible,
    Unbounded,
    Finite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub status: Status,
    pub value: ExtReal,
    pub attained: bool,
    #[serde(with = "crate::exactnum::serde_rational_opt_vec")]
    pub witness: Option<QVec>,
}

/// Graph of a player's feasible-set mapping as a union of cells over all variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibleSetDesc {
    /// 1-based player index.
    pub level: usize,
    pub cells: Vec<GenPoly>,
}

/// Value functions and feasible-set cells of every level, computed once.
#[derive(Clone, Debug)]
pub struct Analysis {
    instance: MlpInstance,
    /// `value_fns[l]` for `l ≥ 1` (0-based); `None` at the leader.
    value_fns: Vec<Option<PwlFunc>>,
    /// Nonempty cells of the feasible set of each level (0-based).
    cells: Vec<Vec<GenPoly>>,
}

impl Analysis {
    pub fn new(instance: &MlpInstance) -> Self {
        let k = instance.k();
        let n = instance.total_vars();
        let last = k - 1;
        let mut value_fns: Vec<Option<PwlFunc>> = vec![None; k];
        let mut cells: Vec<Vec<GenPoly>> = vec![Vec::new(); k];

        let base = level_poly(instance, last).simplified();
        cells[last] = if base.is_empty() { Vec::new() } else { vec![base] };

        for l in (1..k).rev() {
            let off = instance.offset(l);
            let objective = &instance.level(l).objective;
            let vf = level_value_function(&cells[l], off, n, objective);

            let upper_rows = level_poly(instance, l - 1);
            let mut next = Vec::new();
            for cell in &cells[l] {
                for piece_cell in vf.cells() {
                    let region = piece_cell.region.embed(n, &(0..off).collect::<Vec<_>>());
                    let mut candidate = cell.intersect(&region).intersect(&upper_rows);
                    match &piece_cell.piece {
                        Piece::MinusInf => continue,
                        Piece::PlusInf => {}
                        Piece::Affine { c, d } => {
                            // Σ_{i≥l} c_liᵀ x_i ≤ c·prefix + d + eps
                            let mut coeffs: QVec = objective.iter().map(|v| -v).collect();
                            for (k, ck) in c.iter().enumerate() {
                                coeffs[k] += ck;
                            }
                            let rhs = -(d + instance.eps());
                            candidate.push(Ineq::weak(coeffs, rhs));
                        }
                    }
                    let candidate = candidate.simplified();
                    if !candidate.is_empty() {
                        next.push(candidate);
                    }
                }
            }
            value_fns[l] = Some(vf);
            cells[l - 1] = next;
        }
        Analysis {
            instance: instance.clone(),
            value_fns,
            cells,
        }
    }

    pub fn instance(&self) -> &MlpInstance {
        &self.instance
    }

    /// Value function of player `l` (0-based, `l ≥ 1`) over `(x_1, …, x_{l-1})`.
    pub fn value_function(&self, l: usize) -> &PwlFunc {
        self.value_fns[l]
            .as_ref()
            .expect("the leader has no value function in this model")
    }

    /// Cells of player `l`'s feasible set (0-based).
    pub fn cells(&self, l: usize) -> &[GenPoly] {
        &self.cells[l]
    }

    pub fn solve(&self) -> SolveReport {
        let c1 = self.instance.leader_objective();
        let mut best = ExtReal::PosInf;
        let mut attained_at: Option<usize> = None;
        for (i, cell) in self.cells[0].iter().enumerate() {
            let inf = cell.inf_linear(c1);
            if inf.value < best {
                best = inf.value.clone();
                attained_at = inf.attained.then_some(i);
            } else if inf.value == best && inf.attained && attained_at.is_none() {
                attained_at = Some(i);
            }
        }
        match best {
            ExtReal::PosInf => SolveReport {
                status: Status::Infeasible,
                value: ExtReal::PosInf,
                attained: false,
                witness: None,
            },
            ExtReal::NegInf => SolveReport {
                status: Status::Unbounded,
                value: ExtReal::NegInf,
                attained: false,
                witness: None,
            },
            ExtReal::Finite(ref v) => {
                let witness = attained_at.map(|i| {
                    self.cells[0][i]
                        .clone()
                        .with(at_most(c1, v))
                        .witness_point()
                        .expect("attaining cell meets the optimal level set")
                });
                SolveReport {
                    status: Status::Finite,
                    value: best.clone(),
                    attained: witness.is_some(),
                    witness,
                }
            }
        }
    }

    /// Whether some feasible point has leader objective at most `t`.
    pub fn decide_val(&self, t: &Rational) -> bool {
        let c1 = self.instance.leader_objective();
        self.cells[0]
            .iter()
            .any(|cell| !cell.clone().with(at_most(c1, t)).is_empty())
    }

    pub fn is_feasible(&self) -> bool {
        !self.cells[0].is_empty()
    }

    pub fn check_feasible_point(&self, x: &[Rational]) -> Result<bool> {
        let inst = &self.instance;
        check_dim("point", inst.total_vars(), x.len())?;
        if !inst.all_rows().all(|r| r.holds_at(x)) {
            return Ok(false);
        }
        for l in 1..inst.k() {
            let lhs = ExtReal::Finite(dot(&inst.level(l).objective, x));
            let prefix = &x[..inst.offset(l)];
            let bound = self.value_function(l).eval(prefix).add_finite(inst.eps());
            if lhs > bound {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn check_optimal_point(&self, x: &[Rational]) -> Result<bool> {
        if !self.check_feasible_point(x)? {
            return Ok(false);
        }
        let value = dot(self.instance.leader_objective(), x);
        Ok(self.solve().value == ExtReal::Finite(value))
    }
}

/// The row `c·x ≤ t` written as `-c·x ≥ -t`.
fn at_most(c: &[Rational], t: &Rational) -> Ineq {
    Ineq::weak(c.iter().map(|v| -v).collect(), -t.clone())
}

/// Rows of player `l` as a polyhedron over all variables.
fn level_poly(instance: &MlpInstance, l: usize) -> GenPoly {
    GenPoly::from_rows(instance.total_vars(), instance.level(l).rows.clone())
        .expect("instance rows are validated")
}

/// Value function of a player whose variables start at `off`, over the union `cells`.
fn level_value_function(cells: &[GenPoly], off: usize, n: usize, objective: &[Rational]) -> PwlFunc {
    if cells.is_empty() {
        return PwlFunc::constant(off, Piece::PlusInf);
    }
    // lp_value_function expects the optimized coordinates first.
    let positions: Vec<usize> = (0..n)
        .map(|p| if p >= off { p - off } else { n - off + p })
        .collect();
    let permuted: Vec<GenPoly> = cells.iter().map(|c| c.embed(n, &positions)).collect();
    lp_value_function(&permuted, n - off, &objective[off..])
        .expect("dimensions are consistent by construction")
}

/// Value functions `v_k, …, v_2`, each over the variables of the earlier players.
pub fn value_functions(inst: &MlpInstance) -> Vec<PwlFunc> {
    let a = Analysis::new(inst);
    (1..inst.k()).rev().map(|l| a.value_function(l).clone()).collect()
}

/// Feasible set of player `level` (1-based) as a union of cells.
pub fn feasible_set(inst: &MlpInstance, level: usize) -> Result<FeasibleSetDesc> {
    if level == 0 || level > inst.k() {
        return Err(Error::Precondition(format!(
            "level must lie in 1..={}, got {level}",
            inst.k()
        )));
    }
    let a = Analysis::new(inst);
    Ok(FeasibleSetDesc {
        level,
        cells: a.cells(level - 1).to_vec(),
    })
}

pub fn solve(inst: &MlpInstance) -> SolveReport {
    Analysis::new(inst).solve()
}

pub fn decide_val(inst: &MlpInstance, t: &Rational) -> bool {
    Analysis::new(inst).decide_val(t)
}

pub fn decide_unbounded(inst: &MlpInstance) -> bool {
    solve(inst).status == Status::Unbounded
}

pub fn check_feasible_point(inst: &MlpInstance, x: &[Rational]) -> Result<bool> {
    Analysis::new(inst).check_feasible_point(x)
}

pub fn check_optimal_point(inst: &MlpInstance, x: &[Rational]) -> Result<bool> {
    Analysis::new(inst).check_optimal_point(x)
}
