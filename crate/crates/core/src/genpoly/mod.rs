//! Generalized polyhedra: sets `{x : Ax ≥ a, Bx > b}` over the rationals.
//!
//! Projection, emptiness and witness extraction all run through exact Fourier–Motzkin
//! elimination (see [`fm`]). Complements are built as ordered lists of pairwise disjoint cells.

mod fm;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::exactnum::{dot, format_rational, int, zeros, QVec, Rational};

/// Extended reals: `-∞ < finite < +∞`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtReal {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ExtReal {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Adds a finite offset; infinities absorb it.
    pub fn add_finite(&self, d: &Rational) -> ExtReal {
        match self {
            ExtReal::Finite(v) => ExtReal::Finite(v + d),
            other => other.clone(),
        }
    }

    /// Multiplies by a positive scalar.
    pub fn scale_positive(&self, lambda: &Rational) -> ExtReal {
        debug_assert!(lambda.is_positive());
        match self {
            ExtReal::Finite(v) => ExtReal::Finite(v * lambda),
            other => other.clone(),
        }
    }
}

impl From<Rational> for ExtReal {
    fn from(v: Rational) -> Self {
        ExtReal::Finite(v)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::PosInf => f.write_str("+inf"),
            ExtReal::Finite(v) => f.write_str(&format_rational(v)),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        match s.as_str() {
            "+inf" | "inf" => Ok(ExtReal::PosInf),
            "-inf" => Ok(ExtReal::NegInf),
            other => crate::exactnum::parse_rational(other)
                .map(ExtReal::Finite)
                .map_err(serde::de::Error::custom),
        }
    }
}

/// A single inequality `coeffs · x ≥ rhs` (or `>` when `strict`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ineq {
    pub coeffs: QVec,
    pub rhs: Rational,
    pub strict: bool,
}

impl Ineq {
    pub fn weak(coeffs: QVec, rhs: Rational) -> Self {
        Ineq {
            coeffs,
            rhs,
            strict: false,
        }
    }

    pub fn strict(coeffs: QVec, rhs: Rational) -> Self {
        Ineq {
            coeffs,
            rhs,
            strict: true,
        }
    }

    pub fn holds_at(&self, x: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match lhs.cmp(&self.rhs) {
            Ordering::Greater => true,
            Ordering::Equal => !self.strict,
            Ordering::Less => false,
        }
    }

    /// The set-theoretic complement as a single row: `a·x ≥ b` becomes `-a·x > -b` and
    /// `a·x > b` becomes `-a·x ≥ -b`.
    pub fn complement(&self) -> Ineq {
        Ineq {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            rhs: -&self.rhs,
            strict: !self.strict,
        }
    }

    pub fn weakened(&self) -> Ineq {
        Ineq {
            strict: false,
            ..self.clone()
        }
    }
}

/// Infimum of a linear objective over a generalized polyhedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearInf {
    pub value: ExtReal,
    pub attained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenPoly {
    dim: usize,
    rows: Vec<Ineq>,
}

impl GenPoly {
    /// The whole space `R^dim`.
    pub fn universe(dim: usize) -> Self {
        GenPoly {
            dim,
            rows: Vec::new(),
        }
    }

    /// Canonical empty set `{x : 0 ≥ 1}`.
    pub fn empty(dim: usize) -> Self {
        GenPoly {
            dim,
            rows: vec![Ineq::weak(zeros(dim), Rational::one())],
        }
    }

    pub fn from_rows(dim: usize, rows: Vec<Ineq>) -> Result<Self> {
        for r in &rows {
            check_dim("generalized polyhedron row", dim, r.coeffs.len())?;
        }
        Ok(GenPoly { dim, rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Ineq] {
        &self.rows
    }

    pub fn weak_rows(&self) -> impl Iterator<Item = &Ineq> {
        self.rows.iter().filter(|r| !r.strict)
    }

    pub fn strict_rows(&self) -> impl Iterator<Item = &Ineq> {
        self.rows.iter().filter(|r| r.strict)
    }

    pub fn push(&mut self, row: Ineq) {
        assert_eq!(row.coeffs.len(), self.dim, "row length must equal dim");
        self.rows.push(row);
    }

    pub fn push_weak(&mut self, coeffs: QVec, rhs: Rational) {
        self.push(Ineq::weak(coeffs, rhs));
    }

    pub fn push_strict(&mut self, coeffs: QVec, rhs: Rational) {
        self.push(Ineq::strict(coeffs, rhs));
    }

    pub fn with(mut self, row: Ineq) -> Self {
        self.push(row);
        self
    }

    pub fn intersect(&self, other: &GenPoly) -> GenPoly {
        assert_eq!(self.dim, other.dim, "intersect: dimension mismatch");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        GenPoly {
            dim: self.dim,
            rows,
        }
    }

    /// Membership test. Panics on a dimension mismatch; use [`GenPoly::try_contains`] for
    /// untrusted input.
    pub fn contains(&self, x: &[Rational]) -> bool {
        assert_eq!(x.len(), self.dim, "contains: point dimension mismatch");
        self.rows.iter().all(|r| r.holds_at(x))
    }

    pub fn try_contains(&self, x: &[Rational]) -> Result<bool> {
        check_dim("point", self.dim, x.len())?;
        Ok(self.contains(x))
    }

    /// Normalized, deduplicated copy describing the same set.
    pub fn simplified(&self) -> GenPoly {
        match fm::simplify(self.rows.clone()) {
            Some(rows) => GenPoly {
                dim: self.dim,
                rows,
            },
            None => GenPoly::empty(self.dim),
        }
    }

    /// Projects out coordinate `j` (0-based). Rows not involving `j` are carried over.
    pub fn eliminate(&self, j: usize) -> GenPoly {
        assert!(j < self.dim, "eliminate: coordinate out of range");
        let keep: Vec<usize> = (0..self.dim).filter(|&k| k != j).collect();
        self.project(&keep)
    }

    /// Projection onto the listed coordinates (0-based), in the listed order.
    pub fn project(&self, keep: &[usize]) -> GenPoly {
        for &k in keep {
            assert!(k < self.dim, "project: coordinate {k} out of range");
        }
        let drop: Vec<usize> = (0..self.dim).filter(|k| !keep.contains(k)).collect();
        let (rows, _) = fm::eliminate_all(self.rows.clone(), &drop, false);
        match rows {
            None => GenPoly::empty(keep.len()),
            Some(rows) => GenPoly {
                dim: keep.len(),
                rows: rows
                    .into_iter()
                    .map(|r| Ineq {
                        coeffs: keep.iter().map(|&k| r.coeffs[k].clone()).collect(),
                        ..r
                    })
                    .collect(),
            },
        }
    }

    pub fn is_empty(&self) -> bool {
        let all: Vec<usize> = (0..self.dim).collect();
        fm::eliminate_all(self.rows.clone(), &all, false).0.is_none()
    }

    /// Topological closure; requires a nonempty set.
    pub fn closure(&self) -> Result<GenPoly> {
        if self.is_empty() {
            return Err(Error::Precondition(
                "closure is only defined for a nonempty generalized polyhedron".into(),
            ));
        }
        Ok(self.weakened())
    }

    /// Every strict row relaxed to weak, without the emptiness check.
    pub(crate) fn weakened(&self) -> GenPoly {
        GenPoly {
            dim: self.dim,
            rows: self.rows.iter().map(Ineq::weakened).collect(),
        }
    }

    /// Pairwise disjoint cells whose union is the complement of `self`. Weak rows are
    /// negated first, then strict rows, each cell keeping all earlier rows.
    pub fn complement_cells(&self) -> Vec<GenPoly> {
        let weak: Vec<&Ineq> = self.weak_rows().collect();
        let strict: Vec<&Ineq> = self.strict_rows().collect();
        let mut cells = Vec::with_capacity(self.rows.len());
        let mut prefix: Vec<Ineq> = Vec::new();
        for r in weak.into_iter().chain(strict) {
            let mut rows = prefix.clone();
            rows.push(r.complement());
            cells.push(GenPoly {
                dim: self.dim,
                rows,
            });
            prefix.push(r.clone());
        }
        cells
    }

    /// A rational point of the set, or `None` when it is empty.
    ///
    /// Coordinates are chosen by back-substitution through the elimination tower: the
    /// midpoint of a two-sided interval, `bound ± 1` for a one-sided one and `0` when free.
    pub fn witness_point(&self) -> Option<QVec> {
        let all: Vec<usize> = (0..self.dim).collect();
        let (last, stages) = fm::eliminate_all(self.rows.clone(), &all, true);
        last?;
        let mut x = zeros(self.dim);
        for stage in stages.iter().rev() {
            x[stage.var] = pick_coordinate(&stage.rows, stage.var, &x);
        }
        debug_assert!(self.contains(&x), "witness must satisfy the system");
        Some(x)
    }

    /// `inf { c·x : x ∈ self }` with attainment, via projection of the epigraph onto `t`.
    pub fn inf_linear(&self, c: &[Rational]) -> LinearInf {
        assert_eq!(c.len(), self.dim, "inf_linear: objective dimension mismatch");
        let n = self.dim;
        let mut rows: Vec<Ineq> = self
            .rows
            .iter()
            .map(|r| {
                let mut coeffs = r.coeffs.clone();
                coeffs.push(Rational::zero());
                Ineq { coeffs, ..r.clone() }
            })
            .collect();
        let mut epi: QVec = c.iter().map(|v| -v).collect();
        epi.push(Rational::one());
        rows.push(Ineq::weak(epi, Rational::zero()));

        let drop: Vec<usize> = (0..n).collect();
        let Some(rows) = fm::eliminate_all(rows, &drop, false).0 else {
            return LinearInf {
                value: ExtReal::PosInf,
                attained: false,
            };
        };
        let mut lower: Option<(Rational, bool)> = None;
        for r in &rows {
            let a = &r.coeffs[n];
            if !a.is_positive() {
                // The epigraph projection is upward closed.
                debug_assert!(a.is_zero());
                continue;
            }
            let bound = &r.rhs / a;
            lower = match lower {
                None => Some((bound, r.strict)),
                Some((l, s)) => match bound.cmp(&l) {
                    Ordering::Greater => Some((bound, r.strict)),
                    Ordering::Equal => Some((l, s || r.strict)),
                    Ordering::Less => Some((l, s)),
                },
            };
        }
        match lower {
            None => LinearInf {
                value: ExtReal::NegInf,
                attained: false,
            },
            Some((l, strict)) => LinearInf {
                value: ExtReal::Finite(l),
                attained: !strict,
            },
        }
    }

    /// Exact inclusion test: `self ⊆ other` iff `self` misses every complement cell of `other`.
    pub fn is_subset(&self, other: &GenPoly) -> bool {
        assert_eq!(self.dim, other.dim, "is_subset: dimension mismatch");
        other
            .complement_cells()
            .iter()
            .all(|cell| self.intersect(cell).is_empty())
    }

    /// Substitutes fixed values for the listed coordinates and drops them.
    pub fn fix_coords(&self, coords: &[usize], values: &[Rational]) -> GenPoly {
        assert_eq!(coords.len(), values.len());
        let keep: Vec<usize> = (0..self.dim).filter(|k| !coords.contains(k)).collect();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let shift: Rational = coords
                    .iter()
                    .zip(values)
                    .map(|(&k, v)| &r.coeffs[k] * v)
                    .sum();
                Ineq {
                    coeffs: keep.iter().map(|&k| r.coeffs[k].clone()).collect(),
                    rhs: &r.rhs - shift,
                    strict: r.strict,
                }
            })
            .collect();
        GenPoly {
            dim: keep.len(),
            rows,
        }
    }

    /// Re-embeds into `R^new_dim`, sending coordinate `i` to `positions[i]`.
    pub fn embed(&self, new_dim: usize, positions: &[usize]) -> GenPoly {
        assert_eq!(positions.len(), self.dim);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut coeffs = zeros(new_dim);
                for (i, &p) in positions.iter().enumerate() {
                    coeffs[p] = r.coeffs[i].clone();
                }
                Ineq {
                    coeffs,
                    rhs: r.rhs.clone(),
                    strict: r.strict,
                }
            })
            .collect();
        GenPoly {
            dim: new_dim,
            rows,
        }
    }
}

fn pick_coordinate(rows: &[Ineq], var: usize, x: &[Rational]) -> Rational {
    let mut lower: Option<Rational> = None;
    let mut upper: Option<Rational> = None;
    for r in rows {
        let a = &r.coeffs[var];
        if a.is_zero() {
            continue;
        }
        let rest: Rational = r
            .coeffs
            .iter()
            .zip(x)
            .enumerate()
            .filter(|&(k, (c, _))| k != var && !c.is_zero())
            .map(|(_, (c, v))| c * v)
            .sum();
        let bound = (&r.rhs - rest) / a;
        if a.is_positive() {
            if lower.as_ref().is_none_or(|l| bound > *l) {
                lower = Some(bound);
            }
        } else if upper.as_ref().is_none_or(|u| bound < *u) {
            upper = Some(bound);
        }
    }
    match (lower, upper) {
        (Some(l), Some(u)) => (l + u) / int(2),
        (Some(l), None) => l + Rational::one(),
        (None, Some(u)) => u - Rational::one(),
        (None, None) => Rational::zero(),
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "R^{}", self.dim);
        }
        let parts: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let terms: Vec<String> = r
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| format!("{}*x{}", format_rational(c), i))
                    .collect();
                let lhs = if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join(" + ")
                };
                let op = if r.strict { ">" } else { ">=" };
                format!("{lhs} {op} {}", format_rational(&r.rhs))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct RowRepr(
    #[serde(with = "crate::exactnum::serde_rational_vec")] QVec,
    #[serde(with = "crate::exactnum::serde_rational")] Rational,
);

#[derive(Serialize, Deserialize)]
struct GenPolyRepr {
    dim: usize,
    #[serde(default)]
    weak: Vec<RowRepr>,
    #[serde(default)]
    strict: Vec<RowRepr>,
}

impl Serialize for GenPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = GenPolyRepr {
            dim: self.dim,
            weak: self
                .weak_rows()
                .map(|r| RowRepr(r.coeffs.clone(), r.rhs.clone()))
                .collect(),
            strict: self
                .strict_rows()
                .map(|r| RowRepr(r.coeffs.clone(), r.rhs.clone()))
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GenPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GenPolyRepr::deserialize(d)?;
        if repr.dim == 0 {
            return Err(serde::de::Error::custom("dim must be at least 1"));
        }
        let rows = repr
            .weak
            .into_iter()
            .map(|RowRepr(c, r)| Ineq::weak(c, r))
            .chain(repr.strict.into_iter().map(|RowRepr(c, r)| Ineq::strict(c, r)))
            .collect();
        GenPoly::from_rows(repr.dim, rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests;
