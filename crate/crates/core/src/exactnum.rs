//! Exact rational scalars, vectors and matrices.
//!
//! Every number in the crate is a [`Rational`]: an arbitrary-precision fraction kept in lowest
//! terms with a positive denominator. Linear systems are solved by fraction-free (Bareiss)
//! elimination, so no residual is ever approximate.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction in canonical form.
pub type Rational = BigRational;

/// Dense rational vector.
pub type QVec = Vec<Rational>;

/// Shorthand for an integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `num / den`. Panics when `den` is zero.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zeros(n: usize) -> QVec {
    vec![Rational::zero(); n]
}

pub fn unit(n: usize, i: usize) -> QVec {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` (base 10). The result is canonical.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses a comma-separated list of rationals, e.g. `"1,-1/2,3"`.
pub fn parse_rational_list(s: &str) -> Result<QVec> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

fn bits(x: &BigInt) -> u64 {
    if x.is_zero() {
        1
    } else {
        x.bits()
    }
}

/// Encoding size of `p/q`: `bits(|p|) + bits(q)`, with `bits(0) = 1`.
pub fn encoding_size(x: &Rational) -> u64 {
    bits(x.numer()) + bits(x.denom())
}

/// Serde adapters for the `"p/q"` string form.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = RationalRepr::deserialize(d)?;
        raw.into_rational().map_err(serde::de::Error::custom)
    }

    /// Accepts both `"3/2"` and bare JSON integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RationalRepr {
        Str(String),
        Int(i64),
    }

    impl RationalRepr {
        pub(crate) fn into_rational(self) -> Result<Rational> {
            match self {
                RationalRepr::Str(s) => parse_rational(&s),
                RationalRepr::Int(i) => Ok(int(i)),
            }
        }
    }
}

pub mod serde_rational_vec {
    use super::serde_rational::RationalRepr;
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<QVec, D::Error> {
        let raw = Vec::<RationalRepr>::deserialize(d)?;
        raw.into_iter()
            .map(|r| r.into_rational().map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod serde_rational_opt_vec {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &Option<QVec>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.collect_seq(v.iter().map(format_rational)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<QVec>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "super::serde_rational_vec")] QVec);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

/// Row-major rational matrix with fixed dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: zeros(rows * cols),
        }
    }

    /// Builds a matrix from explicit rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<QVec>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            crate::error::check_dim("matrix row", cols, r.len())?;
            data.extend(r);
        }
        Ok(QMat {
            rows: n,
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> QMat {
        let mut out = QMat::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[Rational]) -> QVec {
        assert_eq!(x.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }
}

impl fmt::Display for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Outcome of [`gauss_solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaussSolution {
    Unique(QVec),
    Inconsistent,
    /// A particular solution plus a basis of the null space.
    Underdetermined {
        particular: QVec,
        null_space: Vec<QVec>,
    },
}

/// Row echelon form computed by fraction-free elimination.
struct Echelon {
    /// Integer rows of the augmented matrix after elimination.
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

/// Scales a rational row by the lcm of its denominators, giving an integer row.
fn integer_row(row: impl Iterator<Item = Rational>) -> Vec<BigInt> {
    let row: Vec<Rational> = row.collect();
    let l = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.into_iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect()
}

fn bareiss(mut a: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let nrows = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][col].clone();
        for i in r + 1..nrows {
            let factor = a[i][col].clone();
            for j in col + 1..width {
                let v = (&piv * &a[i][j] - &factor * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][col] = BigInt::zero();
        }
        prev = piv;
        pivots.push(col);
        r += 1;
    }
    Echelon { rows: a, pivots }
}

/// Solves `m · x = r` exactly.
pub fn gauss_solve(m: &QMat, r: &[Rational]) -> GaussSolution {
    assert_eq!(m.rows(), r.len(), "gauss_solve: rhs length must equal row count");
    let n = m.cols();
    let aug: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| integer_row(m.row(i).iter().cloned().chain(std::iter::once(r[i].clone()))))
        .collect();
    let ech = bareiss(aug, n);
    let rank = ech.pivots.len();
    if ech.rows[rank..].iter().any(|row| !row[n].is_zero()) {
        return GaussSolution::Inconsistent;
    }

    // Back substitution over the rationals on the (small) echelon part.
    let mut rref: Vec<QVec> = ech.rows[..rank]
        .iter()
        .map(|row| row.iter().map(|v| Rational::from_integer(v.clone())).collect())
        .collect();
    for (i, &pc) in ech.pivots.iter().enumerate().rev() {
        let lead = rref[i][pc].clone();
        for v in rref[i].iter_mut() {
            *v /= &lead;
        }
        for k in 0..i {
            let f = rref[k][pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..=n {
                let d = &f * &rref[i][j];
                rref[k][j] -= d;
            }
        }
    }

    let mut particular = zeros(n);
    for (i, &pc) in ech.pivots.iter().enumerate() {
        particular[pc] = rref[i][n].clone();
    }
    if rank == n {
        return GaussSolution::Unique(particular);
    }
    let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
    let null_space = free
        .iter()
        .map(|&f| {
            let mut v = zeros(n);
            v[f] = Rational::one();
            for (i, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = -rref[i][f].clone();
            }
            v
        })
        .collect();
    GaussSolution::Underdetermined {
        particular,
        null_space,
    }
}

/// Rank of a rational matrix.
pub fn rank(m: &QMat) -> usize {
    let rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| integer_row(m.row(i).iter().cloned()))
        .collect();
    bareiss(rows, m.cols()).pivots.len()
}

/// Indices of a maximal set of linearly independent rows, chosen greedily in order.
pub fn independent_rows(m: &QMat) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    for i in 0..m.rows() {
        let mut trial = kept.clone();
        trial.push(i);
        let sub = QMat::from_rows(
            m.cols(),
            trial.iter().map(|&k| m.row(k).to_vec()).collect(),
        )
        .expect("rows share the column count");
        if rank(&sub) == trial.len() {
            kept = trial;
        }
    }
    kept
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
