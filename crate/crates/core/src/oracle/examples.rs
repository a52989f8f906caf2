//! Small fixed instances used by the demo, the tests and the CLI fixtures.

use crate::exactnum::{frac, int, zeros, QVec, Rational};
use crate::genpoly::Ineq;
use crate::mlp::{Level, MlpInstance};

fn row(c: &[i64], rhs: Rational) -> Ineq {
    Ineq::weak(c.iter().map(|&v| int(v)).collect(), rhs)
}

fn obj(c: &[i64]) -> QVec {
    c.iter().map(|&v| int(v)).collect()
}

/// `min_{x1} max_{x2} min_{x3} { x3 : x3 ≥ x2 − 1, x ≥ 0 }`, every row at the last level and the
/// maximizing player encoded by a negated objective. Infeasible.
pub fn buchheim() -> MlpInstance {
    let rows = vec![
        row(&[0, -1, 1], int(-1)),
        row(&[1, 0, 0], int(0)),
        row(&[0, 1, 0], int(0)),
        row(&[0, 0, 1], int(0)),
    ];
    MlpInstance::new(
        vec![1, 1, 1],
        vec![
            Level {
                rows: Vec::new(),
                objective: obj(&[0, 0, 1]),
            },
            Level {
                rows: Vec::new(),
                objective: obj(&[0, 0, -1]),
            },
            Level {
                rows,
                objective: obj(&[0, 0, 1]),
            },
        ],
        int(0),
    )
    .expect("valid fixture")
}

/// Leader `min −x2`; follower `min x2` subject to `x2 ≥ x1` and `0 ≤ x1, x2 ≤ 1`, all rows at
/// the follower. Optimal value −1 at `(1, 1)`.
pub fn bilevel_example() -> MlpInstance {
    let rows = vec![
        row(&[-1, 1], int(0)),
        row(&[1, 0], int(0)),
        row(&[-1, 0], int(-1)),
        row(&[0, 1], int(0)),
        row(&[0, -1], int(-1)),
    ];
    MlpInstance::new(
        vec![1, 1],
        vec![
            Level {
                rows: Vec::new(),
                objective: obj(&[0, -1]),
            },
            Level {
                rows,
                objective: obj(&[0, 1]),
            },
        ],
        int(0),
    )
    .expect("valid fixture")
}

/// [`bilevel_example`] with the extra leader row `x1 ≥ 1`.
pub fn leader_row_example() -> MlpInstance {
    let mut levels = bilevel_example().levels().to_vec();
    levels[0].rows.push(row(&[1, 0], int(1)));
    MlpInstance::new(vec![1, 1], levels, int(0)).expect("valid fixture")
}

/// Leader `min c·x1` over `lo ≤ x1 ≤ 1` (rows at the follower, follower objective zero).
pub fn box_base(c: Rational, lo: Rational) -> MlpInstance {
    MlpInstance::new(
        vec![1, 1],
        vec![
            Level {
                rows: Vec::new(),
                objective: vec![c, int(0)],
            },
            Level {
                rows: vec![
                    Ineq::weak(vec![int(1), int(0)], lo),
                    row(&[-1, 0], int(-1)),
                ],
                objective: zeros(2),
            },
        ],
        int(0),
    )
    .expect("valid fixture")
}

/// Leader `min c·x1` over `0 ≤ x1 ≤ 1`: value `min(c, 0)`.
pub fn simple_gadget_base(c: Rational) -> MlpInstance {
    box_base(c, int(0))
}

/// Bases with optimal values −1, 0 and 1/2, in that order.
pub fn gadget_bases() -> Vec<(Rational, MlpInstance)> {
    vec![
        (int(-1), box_base(int(-1), int(0))),
        (int(0), box_base(int(1), int(0))),
        (frac(1, 2), box_base(int(1), frac(1, 2))),
    ]
}
