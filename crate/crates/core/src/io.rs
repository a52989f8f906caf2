//! JSON instance files.
//!
//! ```json
//! {"k": 2, "n": [1, 1],
//!  "levels": [{"rows": [], "objective": {"x2": ["-1"]}},
//!             {"rows": [{"coeffs": {"x1": ["-1"], "x2": ["1"]}, "rhs": "0", "strict": false}],
//!              "objective": {"x2": ["1"]}}],
//!  "eps": "0"}
//! ```
//!
//! Coefficient blocks are keyed `x1 … xk` by player; a missing block is zero. Rationals are
//! `"p/q"` strings (bare integers are accepted on input).

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_dim, Error, Result};
use crate::exactnum::serde_rational::RationalRepr;
use crate::exactnum::{format_rational, is_zero_vec, zeros, QVec, Rational};
use crate::genpoly::Ineq;
use crate::mlp::{Level, MlpInstance};

/// Per-player coefficient blocks of one row or objective, in player order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct Blocks(Vec<(usize, QVec)>);

impl Serialize for Blocks {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (l, v) in &self.0 {
            let strs: Vec<String> = v.iter().map(format_rational).collect();
            m.serialize_entry(&format!("x{}", l + 1), &strs)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for Blocks {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, Vec<RationalRepr>>::deserialize(d)?;
        let mut out = Vec::new();
        for (key, vals) in raw {
            let l: usize = key
                .strip_prefix('x')
                .and_then(|i| i.parse().ok())
                .filter(|&i| i >= 1)
                .ok_or_else(|| D::Error::custom(format!("unknown coefficient block {key:?}")))?;
            let v = vals
                .into_iter()
                .map(|r| r.into_rational().map_err(D::Error::custom))
                .collect::<std::result::Result<QVec, _>>()?;
            out.push((l - 1, v));
        }
        out.sort_by_key(|(l, _)| *l);
        Ok(Blocks(out))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RowFile {
    #[serde(default)]
    coeffs: Blocks,
    #[serde(with = "crate::exactnum::serde_rational")]
    rhs: Rational,
    #[serde(default)]
    strict: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LevelFile {
    #[serde(default)]
    rows: Vec<RowFile>,
    #[serde(default)]
    objective: Blocks,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    k: usize,
    n: Vec<usize>,
    levels: Vec<LevelFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eps: Option<String>,
}

fn split(v: &[Rational], dims: &[usize]) -> Blocks {
    let mut out = Vec::new();
    let mut off = 0;
    for (l, &n) in dims.iter().enumerate() {
        let block = &v[off..off + n];
        if !is_zero_vec(block) {
            out.push((l, block.to_vec()));
        }
        off += n;
    }
    Blocks(out)
}

fn join(b: Blocks, dims: &[usize], what: &str) -> Result<QVec> {
    let total: usize = dims.iter().sum();
    let mut out = zeros(total);
    for (l, v) in b.0 {
        if l >= dims.len() {
            return Err(Error::InvalidInstance(format!(
                "{what} has block x{} but k = {}",
                l + 1,
                dims.len()
            )));
        }
        check_dim(&format!("{what}, block x{}", l + 1), dims[l], v.len())?;
        let off: usize = dims[..l].iter().sum();
        for (i, x) in v.into_iter().enumerate() {
            out[off + i] = x;
        }
    }
    Ok(out)
}

impl From<&MlpInstance> for InstanceFile {
    fn from(inst: &MlpInstance) -> Self {
        let dims = inst.dims();
        InstanceFile {
            k: inst.k(),
            n: dims.to_vec(),
            levels: inst
                .levels()
                .iter()
                .map(|level| LevelFile {
                    rows: level
                        .rows
                        .iter()
                        .map(|r| RowFile {
                            coeffs: split(&r.coeffs, dims),
                            rhs: r.rhs.clone(),
                            strict: r.strict,
                        })
                        .collect(),
                    objective: split(&level.objective, dims),
                })
                .collect(),
            eps: (!inst.eps().is_zero()).then(|| format_rational(inst.eps())),
        }
    }
}

impl TryFrom<InstanceFile> for MlpInstance {
    type Error = Error;

    fn try_from(f: InstanceFile) -> Result<Self> {
        check_dim("n", f.k, f.n.len())?;
        check_dim("levels", f.k, f.levels.len())?;
        let dims = f.n;
        let mut levels = Vec::with_capacity(f.k);
        for (l, level) in f.levels.into_iter().enumerate() {
            let mut rows = Vec::with_capacity(level.rows.len());
            for (i, r) in level.rows.into_iter().enumerate() {
                let what = format!("row {} of level {}", i + 1, l + 1);
                rows.push(Ineq {
                    coeffs: join(r.coeffs, &dims, &what)?,
                    rhs: r.rhs,
                    strict: r.strict,
                });
            }
            let objective = join(level.objective, &dims, &format!("objective of level {}", l + 1))?;
            levels.push(Level { rows, objective });
        }
        let eps = match f.eps {
            Some(s) => crate::exactnum::parse_rational(&s)?,
            None => Rational::zero(),
        };
        MlpInstance::new(dims, levels, eps)
    }
}

impl Serialize for MlpInstance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        InstanceFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MlpInstance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = InstanceFile::deserialize(d)?;
        MlpInstance::try_from(f).map_err(D::Error::custom)
    }
}

/// Parses an instance document, reporting validation failures as typed errors.
pub fn instance_from_json(s: &str) -> Result<MlpInstance> {
    let f: InstanceFile = serde_json::from_str(s)?;
    MlpInstance::try_from(f)
}

/// Canonical pretty-printed form: zero blocks and a zero `eps` are omitted.
pub fn instance_to_json(inst: &MlpInstance) -> String {
    serde_json::to_string_pretty(inst).expect("instances always serialize")
}

pub fn read_instance(path: &Path) -> Result<MlpInstance> {
    instance_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_instance(path: &Path, inst: &MlpInstance) -> Result<()> {
    let mut s = instance_to_json(inst);
    s.push('\n');
    std::fs::write(path, s)?;
    Ok(())
}
