//! Rational piecewise-linear functions with `±∞` pieces over partitions of `R^n` into
//! generalized polyhedra.
//!
//! Two constructions live here: the pointwise minimum of several functions (common
//! refinement plus argmin cells, ties going to the smallest input index) and the value
//! function `y ↦ inf { c·x : (x, y) ∈ ⋃ cells }` of a parametric LP.

use std::collections::HashSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::exactnum::{
    dot, gauss_solve, independent_rows, GaussSolution, QMat, QVec, Rational,
};
use crate::genpoly::{ExtReal, GenPoly, Ineq};

/// What a function does on one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    /// `c·x + d`
    Affine { c: QVec, d: Rational },
    PlusInf,
    MinusInf,
}

impl Piece {
    pub fn eval(&self, x: &[Rational]) -> ExtReal {
        match self {
            Piece::Affine { c, d } => ExtReal::Finite(dot(c, x) + d),
            Piece::PlusInf => ExtReal::PosInf,
            Piece::MinusInf => ExtReal::NegInf,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub region: GenPoly,
    pub piece: Piece,
}

/// Piecewise-linear function; the cell regions partition `R^dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PwlFunc {
    dim: usize,
    cells: Vec<Cell>,
}

impl PwlFunc {
    /// Builds a function from cells. Dimensions are validated; the partition property is the
    /// caller's responsibility.
    pub fn new(dim: usize, cells: Vec<Cell>) -> Result<Self> {
        for cell in &cells {
            check_dim("cell region", dim, cell.region.dim())?;
            if let Piece::Affine { c, .. } = &cell.piece {
                check_dim("affine piece", dim, c.len())?;
            }
        }
        Ok(PwlFunc { dim, cells })
    }

    /// One piece on the whole space.
    pub fn constant(dim: usize, piece: Piece) -> Self {
        PwlFunc {
            dim,
            cells: vec![Cell {
                region: GenPoly::universe(dim),
                piece,
            }],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Index of the cell containing `x`.
    pub fn locate(&self, x: &[Rational]) -> Option<usize> {
        self.cells.iter().position(|c| c.region.contains(x))
    }

    /// Panics if no cell contains `x`, which means the partition invariant is broken.
    pub fn eval(&self, x: &[Rational]) -> ExtReal {
        assert_eq!(x.len(), self.dim, "eval: point dimension mismatch");
        let i = self
            .locate(x)
            .expect("piecewise-linear function cells do not cover the point");
        self.cells[i].piece.eval(x)
    }

    pub fn try_eval(&self, x: &[Rational]) -> Result<ExtReal> {
        check_dim("point", self.dim, x.len())?;
        self.locate(x)
            .map(|i| self.cells[i].piece.eval(x))
            .ok_or_else(|| Error::Precondition("point not covered by any cell".into()))
    }
}

/// Rows expressing `θ_j > θ_i` (`strict`) or `θ_j ≥ θ_i` between two pieces, or `None`
/// if the comparison can never hold. An empty row list means the comparison always holds.
fn compare_rows(theta_j: &Piece, theta_i: &Piece, strict: bool) -> Option<Vec<Ineq>> {
    use Piece::*;
    match (theta_j, theta_i) {
        // +∞ > +∞ fails, +∞ ≥ +∞ holds
        (PlusInf, PlusInf) => (!strict).then(Vec::new),
        (PlusInf, _) => Some(Vec::new()),
        (_, PlusInf) => None,
        (MinusInf, MinusInf) => (!strict).then(Vec::new),
        (MinusInf, _) => None,
        (_, MinusInf) => Some(Vec::new()),
        (Affine { c: cj, d: dj }, Affine { c: ci, d: di }) => {
            let coeffs: QVec = cj.iter().zip(ci).map(|(a, b)| a - b).collect();
            let rhs = di - dj;
            Some(vec![Ineq {
                coeffs,
                rhs,
                strict,
            }])
        }
    }
}

fn refine(fs: &[PwlFunc]) -> Vec<(GenPoly, Vec<usize>)> {
    let dim = fs[0].dim;
    let mut parts = vec![(GenPoly::universe(dim), Vec::new())];
    for f in fs {
        let mut next = Vec::new();
        for (region, idx) in &parts {
            for (j, cell) in f.cells.iter().enumerate() {
                let r = region.intersect(&cell.region).simplified();
                if r.is_empty() {
                    continue;
                }
                let mut idx = idx.clone();
                idx.push(j);
                next.push((r, idx));
            }
        }
        parts = next;
    }
    parts
}

/// Pointwise minimum, with the source index of every output cell.
pub fn min_combine_tagged(fs: &[PwlFunc]) -> (PwlFunc, Vec<usize>) {
    assert!(!fs.is_empty(), "min_combine needs at least one function");
    let dim = fs[0].dim;
    for f in fs {
        assert_eq!(f.dim, dim, "min_combine: dimension mismatch");
    }
    let mut cells = Vec::new();
    let mut source = Vec::new();
    for (region, idx) in refine(fs) {
        let pieces: Vec<&Piece> = idx
            .iter()
            .zip(fs)
            .map(|(&j, f)| &f.cells[j].piece)
            .collect();
        'candidates: for (i, theta_i) in pieces.iter().enumerate() {
            let mut cell = region.clone();
            for (j, theta_j) in pieces.iter().enumerate() {
                if j == i {
                    continue;
                }
                match compare_rows(theta_j, theta_i, j < i) {
                    None => continue 'candidates,
                    Some(rows) => rows.into_iter().for_each(|r| cell.push(r)),
                }
            }
            let cell = cell.simplified();
            if cell.is_empty() {
                continue;
            }
            cells.push(Cell {
                region: cell,
                piece: (*theta_i).clone(),
            });
            source.push(i);
        }
    }
    (PwlFunc { dim, cells }, source)
}

/// Pointwise minimum under the extended-real order.
pub fn min_combine(fs: &[PwlFunc]) -> PwlFunc {
    min_combine_tagged(fs).0
}

/// Vertices of `{u ≥ 0 : gᵀ u = c}` where `g` has one row per dual variable, in
/// lexicographic basis order. `None` when the set is empty.
pub(crate) fn dual_vertices(g: &[QVec], c: &[Rational]) -> Option<Vec<QVec>> {
    let m = g.len();
    let n = c.len();
    // Equality system E u = c with E = gᵀ (n × m).
    let e = QMat::from_rows(
        m,
        (0..n).map(|j| g.iter().map(|row| row[j].clone()).collect()).collect(),
    )
    .expect("consistent widths");
    if let GaussSolution::Inconsistent = gauss_solve(&e, c) {
        return None;
    }
    let keep = independent_rows(&e);
    let r = keep.len();
    if r == 0 {
        // Consistent with a zero matrix forces c = 0, so u = 0 is the only vertex.
        return Some(vec![vec![Rational::zero(); m]]);
    }
    let e_rows: Vec<QVec> = keep.iter().map(|&i| e.row(i).to_vec()).collect();
    let rhs: QVec = keep.iter().map(|&i| c[i].clone()).collect();
    let mut vertices: Vec<QVec> = Vec::new();
    let mut seen: HashSet<QVec> = HashSet::new();
    for basis in Combinations::new(m, r) {
        let sub = QMat::from_rows(
            r,
            e_rows
                .iter()
                .map(|row| basis.iter().map(|&k| row[k].clone()).collect())
                .collect(),
        )
        .expect("square basis");
        let GaussSolution::Unique(ub) = gauss_solve(&sub, &rhs) else {
            continue;
        };
        if ub.iter().any(Signed::is_negative) {
            continue;
        }
        let mut u = vec![Rational::zero(); m];
        for (k, v) in basis.iter().zip(ub) {
            u[*k] = v;
        }
        if seen.insert(u.clone()) {
            vertices.push(u);
        }
    }
    if vertices.is_empty() {
        None
    } else {
        Some(vertices)
    }
}

/// Lexicographic enumeration of the `k`-subsets of `0..n`.
pub(crate) struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Value function of `min { c·x : (x, y) ∈ cell }` for a single generalized polyhedron.
fn single_cell_value(cell: &GenPoly, n_x: usize, c: &[Rational]) -> PwlFunc {
    let dim = cell.dim();
    let n_y = dim - n_x;
    let y_coords: Vec<usize> = (n_x..dim).collect();
    let domain = cell.project(&y_coords).simplified();
    if domain.is_empty() {
        return PwlFunc::constant(n_y, Piece::PlusInf);
    }

    let mut cells = Vec::new();
    // Rows with no x-part only restrict the domain, which already accounts for them.
    let closed = cell.weakened();
    let active: Vec<&Ineq> = closed
        .rows()
        .iter()
        .filter(|r| r.coeffs[..n_x].iter().any(|v| !v.is_zero()))
        .collect();
    let g: Vec<QVec> = active.iter().map(|r| r.coeffs[..n_x].to_vec()).collect();

    match dual_vertices(&g, c) {
        None => cells.push(Cell {
            region: domain.clone(),
            piece: Piece::MinusInf,
        }),
        Some(vertices) => {
            // u_jᵀ(h − H y) = u_jᵀh − (Hᵀu_j)·y
            let pieces: Vec<Piece> = vertices
                .iter()
                .map(|u| {
                    let d: Rational = u.iter().zip(&active).map(|(ui, r)| ui * &r.rhs).sum();
                    let cy: QVec = (n_x..dim)
                        .map(|k| -u.iter().zip(&active).map(|(ui, r)| ui * &r.coeffs[k]).sum::<Rational>())
                        .collect();
                    Piece::Affine { c: cy, d }
                })
                .collect();
            'vertices: for (j, pj) in pieces.iter().enumerate() {
                let mut region = domain.clone();
                for (i, pi) in pieces.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    // argmax with ties to the smallest index: p_j > p_i for i < j,
                    // p_j ≥ p_i for i > j.
                    match compare_rows(pj, pi, i < j) {
                        None => continue 'vertices,
                        Some(rows) => rows.into_iter().for_each(|r| region.push(r)),
                    }
                }
                let region = region.simplified();
                if !region.is_empty() {
                    cells.push(Cell {
                        region,
                        piece: pj.clone(),
                    });
                }
            }
        }
    }
    for comp in domain.complement_cells() {
        if !comp.is_empty() {
            cells.push(Cell {
                region: comp,
                piece: Piece::PlusInf,
            });
        }
    }
    PwlFunc { dim: n_y, cells }
}

/// `v(y) = inf { c·x : (x, y) ∈ ⋃ cells }` where the first `n_x` coordinates of every cell
/// are `x` and the rest are `y`.
pub fn lp_value_function(cells: &[GenPoly], n_x: usize, c: &[Rational]) -> Result<PwlFunc> {
    check_dim("objective", n_x, c.len())?;
    let Some(first) = cells.first() else {
        return Err(Error::Precondition(
            "lp_value_function needs at least one cell".into(),
        ));
    };
    let dim = first.dim();
    if dim <= n_x {
        return Err(Error::Precondition(
            "parameter space must have at least one coordinate".into(),
        ));
    }
    for cell in cells {
        check_dim("cell", dim, cell.dim())?;
    }
    let per_cell: Vec<PwlFunc> = cells
        .iter()
        .map(|cell| single_cell_value(cell, n_x, c))
        .collect();
    if per_cell.len() == 1 {
        return Ok(per_cell.into_iter().next().expect("one function"));
    }
    Ok(min_combine(&per_cell))
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PieceRepr {
    Inf(String),
    Affine {
        #[serde(with = "crate::exactnum::serde_rational_vec")]
        c: QVec,
        #[serde(with = "crate::exactnum::serde_rational")]
        d: Rational,
    },
}

impl Serialize for Piece {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Piece::PlusInf => PieceRepr::Inf("+inf".into()).serialize(s),
            Piece::MinusInf => PieceRepr::Inf("-inf".into()).serialize(s),
            Piece::Affine { c, d } => PieceRepr::Affine {
                c: c.clone(),
                d: d.clone(),
            }
            .serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Piece {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match PieceRepr::deserialize(d)? {
            PieceRepr::Inf(s) if s == "+inf" => Ok(Piece::PlusInf),
            PieceRepr::Inf(s) if s == "-inf" => Ok(Piece::MinusInf),
            PieceRepr::Inf(s) => Err(serde::de::Error::custom(format!("unknown piece `{s}`"))),
            PieceRepr::Affine { c, d } => Ok(Piece::Affine { c, d }),
        }
    }
}
