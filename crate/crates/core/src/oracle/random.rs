//! Seeded generators for instances, polyhedra, points and piecewise-linear functions.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::bilevel::StandardBilevel;
use crate::error::{Error, Result};
use crate::exactnum::{frac, int, unit, zeros, QMat, QVec, Rational};
use crate::genpoly::{GenPoly, Ineq};
use crate::mlp::{Level, MlpInstance};
use crate::pwl::{Cell, Piece, PwlFunc};

fn coeff<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    int(rng.gen_range(-bound..=bound))
}

/// A point whose coordinates have denominators in `1..=3` and lie in `[-bound, bound]`.
pub fn random_point<R: Rng>(rng: &mut R, dim: usize, bound: i64) -> QVec {
    (0..dim)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            frac(rng.gen_range(-bound * d..=bound * d), d)
        })
        .collect()
}

/// Between one and `max_rows` integer rows with entries in `[-bound, bound]`, about a third
/// of them strict.
pub fn random_genpoly<R: Rng>(rng: &mut R, dim: usize, max_rows: usize, bound: i64) -> GenPoly {
    let mut p = GenPoly::universe(dim);
    for _ in 0..rng.gen_range(1..=max_rows.max(1)) {
        let coeffs: QVec = (0..dim).map(|_| coeff(rng, bound)).collect();
        let rhs = coeff(rng, bound);
        if rng.gen_ratio(1, 3) {
            p.push_strict(coeffs, rhs);
        } else {
            p.push_weak(coeffs, rhs);
        }
    }
    p
}

fn random_piece<R: Rng>(rng: &mut R, dim: usize, bound: i64) -> Piece {
    match rng.gen_range(0..10) {
        0 => Piece::PlusInf,
        1 => Piece::MinusInf,
        _ => Piece::Affine {
            c: (0..dim).map(|_| coeff(rng, bound)).collect(),
            d: coeff(rng, bound),
        },
    }
}

/// A function on a partition made of a random polyhedron and its complement cells.
pub fn random_pwl<R: Rng>(rng: &mut R, dim: usize, bound: i64) -> PwlFunc {
    let p = random_genpoly(rng, dim, 2, bound);
    let mut regions = p.complement_cells();
    regions.insert(0, p);
    let cells = regions
        .into_iter()
        .filter(|r| !r.is_empty())
        .map(|region| Cell {
            region,
            piece: random_piece(rng, dim, bound),
        })
        .collect();
    PwlFunc::new(dim, cells).expect("regions share the dimension")
}

/// Structural conditions a generated instance must satisfy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Require {
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
}

impl Require {
    /// Parses a comma-separated list such as `C1,C3`; the empty string means no condition.
    pub fn parse(s: &str) -> Result<Self> {
        let mut r = Require::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.to_ascii_uppercase().as_str() {
                "C1" => r.c1 = true,
                "C2" => r.c2 = true,
                "C3" => r.c3 = true,
                _ => return Err(Error::InvalidInstance(format!("unknown condition {part:?}"))),
            }
        }
        Ok(r)
    }
}

const MAX_ATTEMPTS: usize = 64;

/// A random `k`-level instance with `rows[l]` random rows at level `l` (moved to level `k`
/// under C1) and integer entries in `[-bound, bound]` (`[-min(bound, n), min(bound, n)]` under
/// C3). Upper-level rows avoid later players' variables half of the time, so forwarding has
/// something to do. Under C2 the box rows follow the random rows at level `k` and instances
/// whose level-`k` rows are inconsistent are redrawn.
pub fn random_instance(
    seed: u64,
    k: usize,
    dims: &[usize],
    rows: &[usize],
    bound: i64,
    require: Require,
) -> Result<MlpInstance> {
    if k == 0 {
        return Err(Error::InvalidInstance("k must be at least 1".into()));
    }
    if dims.len() != k || rows.len() != k {
        return Err(Error::InvalidInstance(format!(
            "dims and rows need {k} entries each, got {} and {}",
            dims.len(),
            rows.len()
        )));
    }
    if dims.contains(&0) {
        return Err(Error::InvalidInstance("every level needs a variable".into()));
    }
    if bound < 1 {
        return Err(Error::InvalidInstance("bound must be at least 1".into()));
    }
    let n: usize = dims.iter().sum();
    let bound = if require.c3 { bound.min(n as i64) } else { bound };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let offsets: Vec<usize> = (0..=k).map(|l| dims[..l].iter().sum()).collect();

    for _ in 0..MAX_ATTEMPTS {
        let mut levels: Vec<Level> = (0..k)
            .map(|l| {
                let mut objective = zeros(n);
                for v in objective.iter_mut().skip(offsets[l]) {
                    *v = coeff(&mut rng, bound);
                }
                Level {
                    rows: Vec::new(),
                    objective,
                }
            })
            .collect();
        for l in 0..k {
            let reach = if l + 1 < k && rng.gen_bool(0.5) {
                offsets[l + 1]
            } else {
                n
            };
            for _ in 0..rows[l] {
                let mut coeffs = zeros(n);
                for v in coeffs.iter_mut().take(reach) {
                    if !rng.gen_ratio(1, 3) {
                        *v = coeff(&mut rng, bound);
                    }
                }
                let row = Ineq::weak(coeffs, coeff(&mut rng, bound));
                let target = if require.c1 { k - 1 } else { l };
                levels[target].rows.push(row);
            }
        }
        if require.c2 {
            let last = &mut levels[k - 1].rows;
            for j in 0..n {
                last.push(Ineq::weak(unit(n, j), Rational::zero()));
                last.push(Ineq::weak(unit(n, j).iter().map(|v| -v).collect(), int(-1)));
            }
            let base = GenPoly::from_rows(n, last.clone())?;
            if base.is_empty() {
                continue;
            }
        }
        return MlpInstance::new(dims.to_vec(), levels, Rational::zero());
    }
    Err(Error::InvalidInstance(format!(
        "no instance with a consistent last level after {MAX_ATTEMPTS} draws"
    )))
}

/// A standard-form bilevel instance whose follower region is bounded.
///
/// Original follower variables get the box `0 ≤ x2 ≤ 1` through slacks, each random
/// follower row `a·x1 + b·x2 ≤ r` gets its own slack, original leader variables are boxed
/// by `x1 ≤ 2` through leader slacks, and an occasional leader row couples both blocks.
pub fn random_standard_bilevel<R: Rng>(rng: &mut R) -> StandardBilevel {
    let p1 = rng.gen_range(1..=2);
    let p2 = rng.gen_range(1..=2);
    let m = rng.gen_range(1..=2);
    let coupling = rng.gen_ratio(1, 4);
    let bound = 2;

    // x1 = (leader originals, leader box slacks, coupling slack?)
    let n1 = 2 * p1 + usize::from(coupling);
    // x2 = (follower originals, row slacks, box slacks)
    let n2 = p2 + m + p2;

    let mut a11 = Vec::new();
    let mut a12 = Vec::new();
    let mut b1 = Vec::new();
    for i in 0..p1 {
        let mut r = zeros(n1);
        r[i] = int(1);
        r[p1 + i] = int(1);
        a11.push(r);
        a12.push(zeros(n2));
        b1.push(int(2));
    }
    if coupling {
        let mut r = zeros(n1);
        for v in r.iter_mut().take(p1) {
            *v = coeff(rng, bound);
        }
        r[2 * p1] = int(1);
        let mut s = zeros(n2);
        for v in s.iter_mut().take(p2) {
            *v = coeff(rng, bound);
        }
        a11.push(r);
        a12.push(s);
        b1.push(coeff(rng, bound));
    }

    let mut a21 = Vec::new();
    let mut a22 = Vec::new();
    let mut b2 = Vec::new();
    for i in 0..m {
        let mut r = zeros(n1);
        for v in r.iter_mut().take(p1) {
            *v = coeff(rng, bound);
        }
        let mut s = zeros(n2);
        for v in s.iter_mut().take(p2) {
            *v = coeff(rng, bound);
        }
        s[p2 + i] = int(1);
        a21.push(r);
        a22.push(s);
        b2.push(coeff(rng, bound));
    }
    for j in 0..p2 {
        let mut s = zeros(n2);
        s[j] = int(1);
        s[p2 + m + j] = int(1);
        a21.push(zeros(n1));
        a22.push(s);
        b2.push(int(1));
    }

    let mut c11 = zeros(n1);
    for v in c11.iter_mut().take(p1) {
        *v = coeff(rng, bound);
    }
    let mut c12 = zeros(n2);
    let mut c22 = zeros(n2);
    for j in 0..p2 {
        c12[j] = coeff(rng, bound);
        c22[j] = coeff(rng, bound);
    }
    let mat = |cols, rows| QMat::from_rows(cols, rows).expect("consistent widths");
    StandardBilevel {
        a11: mat(n1, a11),
        a12: mat(n2, a12),
        b1,
        a21: mat(n1, a21),
        a22: mat(n2, a22),
        b2,
        c11,
        c12,
        c22,
    }
}
