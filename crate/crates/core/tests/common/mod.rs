//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use tvcsp::cost::Cost;
use tvcsp::order::{canonical_weak_order, JointConfig, WeakOrder};
use tvcsp::ops::CanonicalOp;
use tvcsp::relation::ValuedRelation;

/// R₃: 0 on injective triples, 1 when exactly the first two agree, ∞ otherwise.
pub fn r3() -> ValuedRelation {
    ValuedRelation::from_fn("R3", 3, |w| {
        let r = w.ranks();
        if w.is_injective() {
            Cost::zero()
        } else if r[0] == r[1] && r[1] != r[2] {
            Cost::one()
        } else {
            Cost::inf()
        }
    })
    .unwrap()
}

/// A concrete family of endomorphisms of (ℚ,<) used to realise the
/// catalog operations on actual integers.
#[derive(Clone, Copy)]
pub struct Realization {
    /// Strictly increasing map from signed joint ranks to values, fixing 0.
    pub embed: fn(i128) -> i128,
    /// Offsets inside a block for mi (=, >, <) and mx (≠, =), each below `spread`.
    pub mi: [i128; 3],
    pub mx: [i128; 2],
    pub spread: i128,
}

pub const REALIZATIONS: [Realization; 2] = [
    Realization { embed: |d| d, mi: [0, 1, 2], mx: [0, 1], spread: 3 },
    Realization { embed: |d| 3 * d * d * d + d, mi: [2, 5, 9], mx: [4, 7], spread: 11 },
];

impl Realization {
    /// Evaluates `op` on the values realising `joint` and returns the output
    /// order type.
    pub fn apply(&self, op: CanonicalOp, joint: &JointConfig) -> WeakOrder {
        let z = joint.zero.map_or(0, i128::from);
        let val = |r: u8| (self.embed)(i128::from(r) - z);
        let xs: Vec<i128> = joint.s.iter().map(|&r| val(r)).collect();
        let ys: Vec<i128> = joint.t.iter().map(|&r| val(r)).collect();
        let bound = xs.iter().chain(&ys).map(|v| v.abs()).max().unwrap_or(0) + 1;
        let out: Vec<i128> = xs
            .iter()
            .zip(&ys)
            .map(|(&x, &y)| self.eval(op, x, y, bound))
            .collect();
        canonical_weak_order(&out).unwrap()
    }

    fn eval(&self, op: CanonicalOp, x: i128, y: i128, bound: i128) -> i128 {
        use CanonicalOp::*;
        let wide = 2 * bound + 1;
        let lex = |a: i128, b: i128| a * wide + b;
        let lex_bound = bound * wide + bound + 1;
        match op {
            Const0 => 0,
            Identity | Proj1of2 => x,
            Min => x.min(y),
            Max => x.max(y),
            Lex | Inj => lex(x, y),
            Mi => {
                let tag = if x == y { 0 } else if x > y { 1 } else { 2 };
                x.min(y) * self.spread + self.mi[tag]
            }
            Mx => x.min(y) * self.spread + self.mx[usize::from(x == y)],
            // α into the non-positive part, β into the positive part.
            Pp if x <= 0 => x - bound,
            Pp => y + bound,
            Lele if x <= 0 => lex(x, y) - lex_bound,
            Lele => lex(y, x) + lex_bound,
            _ => -self.eval(op.dual(), -x, -y, bound),
        }
    }
}
