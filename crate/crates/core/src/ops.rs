//! The catalog of canonical operations on ℚ, evaluated exactly on joint
//! order types, with preservation and improvement testers.
//!
//! Each binary operation is represented by a per-coordinate key; the output
//! order type is the order of the keys. The keys encode the interleaving
//! constraints that define each operation (for `mi`, the chain
//! `e_=(x) < e_>(x) < e_<(x) < e_=(x+ε)`; for `mx`, the chain
//! `e_≠(x) < e_=(x) < e_≠(x+ε)`), so no endomorphism is ever materialised.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::config::Caps;
use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::order::{canonicalize_small, find_interleaving, JointConfig, WeakOrder};
use crate::relation::ValuedRelation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CanonicalOp {
    Const0,
    Identity,
    Proj1of2,
    Inj,
    Lex,
    LexDual,
    Pp,
    PpDual,
    Lele,
    LeleDual,
    Min,
    Max,
    Mi,
    MiDual,
    Mx,
    MxDual,
}

use CanonicalOp::*;

impl CanonicalOp {
    pub const ALL: [CanonicalOp; 16] = [
        Const0, Identity, Proj1of2, Inj, Lex, LexDual, Pp, PpDual, Lele, LeleDual, Min, Max, Mi,
        MiDual, Mx, MxDual,
    ];

    /// The operations whose preservation certifies a tractable crisp part,
    /// in the order the classifier tries them.
    pub const WITNESSES: [CanonicalOp; 8] = [Min, Max, Mi, MiDual, Mx, MxDual, Lele, LeleDual];

    pub fn name(self) -> &'static str {
        match self {
            Const0 => "const0",
            Identity => "identity",
            Proj1of2 => "proj1of2",
            Inj => "inj",
            Lex => "lex",
            LexDual => "lexDual",
            Pp => "pp",
            PpDual => "ppDual",
            Lele => "lele",
            LeleDual => "leleDual",
            Min => "min",
            Max => "max",
            Mi => "mi",
            MiDual => "miDual",
            Mx => "mx",
            MxDual => "mxDual",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Const0 | Identity => 1,
            _ => 2,
        }
    }

    /// `pp`, `lele` and their duals compare their inputs against 0.
    pub fn needs_zero(self) -> bool {
        matches!(self, Pp | PpDual | Lele | LeleDual)
    }

    /// The conjugate `g*(x) = -g(-x)`.
    pub fn dual(self) -> CanonicalOp {
        match self {
            Const0 | Identity | Proj1of2 | Inj => self,
            Lex => LexDual,
            LexDual => Lex,
            Pp => PpDual,
            PpDual => Pp,
            Lele => LeleDual,
            LeleDual => Lele,
            Min => Max,
            Max => Min,
            Mi => MiDual,
            MiDual => Mi,
            Mx => MxDual,
            MxDual => Mx,
        }
    }

    fn is_dual_form(self) -> bool {
        matches!(self, LexDual | PpDual | LeleDual | MiDual | MxDual)
    }
}

impl fmt::Display for CanonicalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CanonicalOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CanonicalOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::UnknownOperation(s.to_string()))
    }
}

/// Order type of a unary operation applied to a tuple of order type `w`.
pub fn apply_unary(op: CanonicalOp, w: &WeakOrder) -> Result<WeakOrder> {
    match op {
        Const0 => Ok(WeakOrder::constant(w.arity())),
        Identity => Ok(w.clone()),
        _ => Err(Error::Precondition(format!("`{op}` is not unary"))),
    }
}

/// Order type of `op` applied componentwise to the pair described by `joint`.
///
/// The configuration must carry a zero position exactly when the operation
/// needs one. Unary operations act on the `s` part.
pub fn apply_op(op: CanonicalOp, joint: &JointConfig) -> Result<WeakOrder> {
    if op.needs_zero() != joint.zero.is_some() {
        return Err(Error::ZeroPosition {
            op: op.name(),
            expected: if op.needs_zero() { "" } else { "no" },
        });
    }
    Ok(apply_unchecked(op, joint))
}

fn apply_unchecked(op: CanonicalOp, joint: &JointConfig) -> WeakOrder {
    match op {
        Const0 => WeakOrder::constant(joint.arity()),
        Identity | Proj1of2 => joint.s_marginal(),
        _ if op.is_dual_form() => apply_unchecked(op.dual(), &joint.reversed()).reversed(),
        _ => WeakOrder::from_canonical(order_keys(op, joint)),
    }
}

fn order_keys(op: CanonicalOp, joint: &JointConfig) -> Vec<u8> {
    let z = joint.zero.unwrap_or(0);
    let keys: Vec<(u8, u8, u8)> = joint
        .s
        .iter()
        .zip(&joint.t)
        .map(|(&a, &b)| match op {
            Min => (a.min(b), 0, 0),
            Max => (a.max(b), 0, 0),
            Lex | Inj => (a, b, 0),
            Mi => {
                let tag = match a.cmp(&b) {
                    std::cmp::Ordering::Equal => 0,
                    std::cmp::Ordering::Greater => 1,
                    std::cmp::Ordering::Less => 2,
                };
                (a.min(b), tag, 0)
            }
            Mx => (a.min(b), u8::from(a == b), 0),
            Pp if a <= z => (0, a, 0),
            Pp => (1, b, 0),
            Lele if a <= z => (0, a, b),
            Lele => (1, b, a),
            _ => unreachable!("{op} has no key form"),
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let ranks: Vec<u8> = keys
        .iter()
        .map(|k| sorted.binary_search(k).unwrap() as u8)
        .collect();
    debug_assert_eq!(canonicalize_small(&ranks), ranks);
    ranks
}

/// A violated inequality found by a tester.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub s_order: WeakOrder,
    pub t_order: WeakOrder,
    pub joint: JointConfig,
    pub output: WeakOrder,
    pub lhs_cost: Cost,
    pub rhs_bound: Cost,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "s={} t={} joint=(s:{:?} t:{:?}",
            self.s_order, self.t_order, self.joint.s, self.joint.t
        )?;
        if let Some(z) = self.joint.zero {
            write!(f, " zero:{z}")?;
        }
        write!(
            f,
            ") output={} cost {} > bound {}",
            self.output, self.lhs_cost, self.rhs_bound
        )
    }
}

/// Outcome of a preservation or improvement test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub counterexample: Option<Counterexample>,
}

impl Check {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn check_joint_cap(op: CanonicalOp, rel: &ValuedRelation, caps: &Caps) -> Result<()> {
    if op.arity() == 2 && rel.arity() > caps.joint_arity {
        return Err(Error::capacity(
            format!("arity of `{}` for testing `{op}`", rel.name()),
            rel.arity(),
            caps.joint_arity,
        ));
    }
    Ok(())
}

/// Does `op` preserve the crisp relation `rel`?
///
/// Exhaustive over all joint configurations whose marginals are members;
/// the reported counterexample is the first in enumeration order.
pub fn preserves(op: CanonicalOp, rel: &ValuedRelation, caps: &Caps) -> Result<Check> {
    if !rel.is_crisp() {
        return Err(Error::Precondition(format!(
            "preservation needs a crisp relation; `{}` is not crisp",
            rel.name()
        )));
    }
    check_joint_cap(op, rel, caps)?;
    improve_check(op, rel)
}

/// Does `op` improve `rel`, i.e. is the cost of the output never above the
/// average cost of the inputs?
///
/// `inj` is only accepted on equality-invariant relations: its output order
/// is fixed to the one of `lex`, which only pins down the output partition.
pub fn improves(op: CanonicalOp, rel: &ValuedRelation, caps: &Caps) -> Result<Check> {
    if op == Inj && !rel.is_equality_invariant() {
        return Err(Error::Precondition(format!(
            "`inj` is only tested on equality-invariant relations; `{}` is not",
            rel.name()
        )));
    }
    check_joint_cap(op, rel, caps)?;
    improve_check(op, rel)
}

fn improve_check(op: CanonicalOp, rel: &ValuedRelation) -> Result<Check> {
    let orders = rel.space().orders();
    if op.arity() == 1 {
        let counterexample = orders.iter().zip(rel.costs()).find_map(|(w, c)| {
            let out = apply_unary(op, w).expect("unary");
            let lhs = rel.cost(&out);
            (lhs > c).then(|| Counterexample {
                s_order: w.clone(),
                t_order: w.clone(),
                joint: JointConfig {
                    s: w.ranks().to_vec(),
                    t: w.ranks().to_vec(),
                    zero: None,
                },
                output: out.clone(),
                lhs_cost: lhs.clone(),
                rhs_bound: c.clone(),
            })
        });
        return Ok(Check { counterexample });
    }
    let finite: Vec<usize> = (0..orders.len())
        .filter(|&i| rel.costs()[i].is_finite())
        .collect();
    let n = finite.len();
    let with_zero = op.needs_zero();
    let counterexample = (0..n * n).into_par_iter().find_map_first(|pair| {
        let (si, ti) = (finite[pair / n], finite[pair % n]);
        let (s, t) = (&orders[si], &orders[ti]);
        let rhs = (&rel.costs()[si] + &rel.costs()[ti]).half();
        find_interleaving(s, t, with_zero, |joint| {
            let out = apply_unchecked(op, joint);
            let lhs = rel.cost(&out);
            (lhs > &rhs).then(|| Counterexample {
                s_order: s.clone(),
                t_order: t.clone(),
                joint: joint.clone(),
                output: out.clone(),
                lhs_cost: lhs.clone(),
                rhs_bound: rhs.clone(),
            })
        })
    });
    Ok(Check { counterexample })
}

/// Tests `op` against every relation; returns the first failure as
/// `(relation name, counterexample)`.
pub fn first_failure<'a>(
    op: CanonicalOp,
    rels: impl IntoIterator<Item = &'a ValuedRelation>,
    crisp: bool,
    caps: &Caps,
) -> Result<Option<(String, Counterexample)>> {
    for rel in rels {
        let check = if crisp {
            preserves(op, rel, caps)?
        } else {
            improves(op, rel, caps)?
        };
        if let Some(cx) = check.counterexample {
            return Ok(Some((rel.name().to_string(), cx)));
        }
    }
    Ok(None)
}

/// Every relation attains at most one finite value.
pub fn essentially_crisp<'a>(rels: impl IntoIterator<Item = &'a ValuedRelation>) -> bool {
    rels.into_iter().all(|r| r.finite_values().len() <= 1)
}
