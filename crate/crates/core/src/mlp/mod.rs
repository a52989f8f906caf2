//! The k-level LP model and its exact solver.
//!
//! Player `l` (1-based in user-facing text, 0-based in code) controls the block `x_l` and
//! minimizes `Σ_{i ≥ l} c_{li}ᵀ x_i` subject to its own rows and to the optimality of every
//! deeper player. The solver materializes the lower-level value functions bottom-up and
//! describes every feasible set as a union of generalized polyhedra.

mod solve;

pub use solve::{
    check_feasible_point, check_optimal_point, decide_unbounded, decide_val, feasible_set,
    solve, value_functions, Analysis, FeasibleSetDesc, SolveReport, Status,
};

use num_traits::{Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::exactnum::{QVec, Rational};
use crate::genpoly::Ineq;

/// Rows and objective of one player. Rows and objective span all `n_1 + … + n_k` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub rows: Vec<Ineq>,
    pub objective: QVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MlpInstance {
    dims: Vec<usize>,
    levels: Vec<Level>,
    eps: Rational,
}

impl MlpInstance {
    /// Validates dimensions, that objectives vanish on earlier players' blocks and that
    /// `eps ≥ 0`.
    pub fn new(dims: Vec<usize>, levels: Vec<Level>, eps: Rational) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidInstance("k must be at least 1".into()));
        }
        if dims.contains(&0) {
            return Err(Error::InvalidInstance(
                "every player needs at least one variable".into(),
            ));
        }
        check_dim("level count", dims.len(), levels.len())?;
        if eps.is_negative() {
            return Err(Error::InvalidInstance("eps must be nonnegative".into()));
        }
        let total: usize = dims.iter().sum();
        let inst = MlpInstance { dims, levels, eps };
        for (l, level) in inst.levels.iter().enumerate() {
            check_dim(&format!("objective of level {}", l + 1), total, level.objective.len())?;
            if level.objective[..inst.offset(l)].iter().any(|v| !v.is_zero()) {
                return Err(Error::InvalidInstance(format!(
                    "objective of level {} has coefficients on earlier players' variables",
                    l + 1
                )));
            }
            for (r, row) in level.rows.iter().enumerate() {
                check_dim(
                    &format!("row {} of level {}", r + 1, l + 1),
                    total,
                    row.coeffs.len(),
                )?;
            }
        }
        Ok(inst)
    }

    pub fn k(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_vars(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Index of the first variable of level `l` (0-based).
    pub fn offset(&self, l: usize) -> usize {
        self.dims[..l].iter().sum()
    }

    /// Variable indices of block `l` (0-based).
    pub fn block(&self, l: usize) -> std::ops::Range<usize> {
        let o = self.offset(l);
        o..o + self.dims[l]
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, l: usize) -> &Level {
        &self.levels[l]
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }

    /// The leader's objective `(c_11, …, c_1k)`.
    pub fn leader_objective(&self) -> &[Rational] {
        &self.levels[0].objective
    }

    pub fn with_eps(&self, eps: Rational) -> Result<Self> {
        MlpInstance::new(self.dims.clone(), self.levels.clone(), eps)
    }

    /// All rows of all levels.
    pub fn all_rows(&self) -> impl Iterator<Item = &Ineq> {
        self.levels.iter().flat_map(|l| l.rows.iter())
    }
}

#[cfg(test)]
mod tests;
