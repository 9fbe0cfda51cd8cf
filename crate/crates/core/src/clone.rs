//! The valued relational clone: sums of atoms with minimisation over bound
//! variables, shifting, non-negative scaling, `Feas`, `Opt` and minors, plus
//! the derived crisp structure used by the classifier.

use num_rational::BigRational;
use num_traits::Signed;

use crate::config::Caps;
use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::order::{for_each_weak_order, space, WeakOrder};
use crate::relation::{Atom, AtomTarget, CrispStructure, ValuedRelation, ValuedStructure};

/// A sum of atoms over free and bound variables.
///
/// Variables are numbered with the free ones first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expression {
    free: Vec<String>,
    bound: Vec<String>,
    atoms: Vec<Atom>,
}

impl Expression {
    pub fn new(
        free: Vec<String>,
        bound: Vec<String>,
        atoms: Vec<(AtomTarget, Vec<String>)>,
    ) -> Result<Expression> {
        if free.is_empty() {
            return Err(Error::Empty("free variables"));
        }
        let vars: Vec<&String> = free.iter().chain(&bound).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Duplicate(v.to_string()));
            }
        }
        let atoms = atoms
            .into_iter()
            .map(|(target, args)| {
                let args = args
                    .iter()
                    .map(|a| {
                        vars.iter()
                            .position(|v| *v == a)
                            .ok_or_else(|| Error::UndeclaredVariable(a.clone()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Atom::new(target, args))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Expression { free, bound, atoms })
    }

    /// Shorthand used in tests and docs: atoms as `(relation, [vars])`.
    pub fn build(free: &[&str], bound: &[&str], atoms: &[(&str, &[&str])]) -> Result<Expression> {
        let own = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        Expression::new(
            own(free),
            own(bound),
            atoms
                .iter()
                .map(|(r, args)| (AtomTarget::parse(r), own(args)))
                .collect(),
        )
    }

    pub fn free(&self) -> &[String] {
        &self.free
    }

    pub fn bound(&self) -> &[String] {
        &self.bound
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }
}

/// Evaluates an expression to a table over its free variables.
///
/// For each order type of the free variables the result is the least atom
/// sum over all order types of all variables that extend it.
pub fn eval_expression(
    structure: &ValuedStructure,
    expr: &Expression,
    caps: &Caps,
) -> Result<ValuedRelation> {
    let n = expr.free.len() + expr.bound.len();
    if n > caps.arity {
        return Err(Error::capacity("expression variables", n, caps.arity));
    }
    let rels = expr
        .atoms
        .iter()
        .map(|a| structure.resolve_atom(&a.target, a.args.len()))
        .collect::<Result<Vec<_>>>()?;
    let nf = expr.free.len();
    let out_space = space(nf);
    let mut best = vec![Cost::Infinite; out_space.len()];
    let mut vals = Vec::with_capacity(8);
    for_each_weak_order(n, |ranks| {
        let mut total = Cost::zero();
        for (atom, rel) in expr.atoms.iter().zip(&rels) {
            vals.clear();
            vals.extend(atom.args.iter().map(|&v| ranks[v]));
            total += rel.cost_of_values(&vals);
            if total.is_infinite() {
                return;
            }
        }
        let slot = &mut best[out_space.index_of_values(&ranks[..nf])];
        if total < *slot {
            *slot = total;
        }
    });
    ValuedRelation::from_costs("expr", nf, best)
}

/// Entrywise `R + s`; infinite entries stay infinite.
pub fn shift(rel: &ValuedRelation, s: &BigRational) -> ValuedRelation {
    ValuedRelation::from_fn(rel.name(), rel.arity(), |w| rel.cost(w).shifted(s)).expect("same arity")
}

/// Entrywise `r · R` with `0 · ∞ = 0`. Negative factors are rejected.
pub fn scale(rel: &ValuedRelation, r: &BigRational) -> Result<ValuedRelation> {
    if r.is_negative() {
        return Err(Error::NegativeScale(r.to_string()));
    }
    Ok(
        ValuedRelation::from_fn(rel.name(), rel.arity(), |w| {
            rel.cost(w).checked_scale(r).expect("non-negative factor")
        })
        .expect("same arity"),
    )
}

/// Crisp relation of the finite entries.
pub fn feas(rel: &ValuedRelation) -> ValuedRelation {
    ValuedRelation::crisp_from_fn(format!("feas({})", rel.name()), rel.arity(), |w| {
        rel.cost(w).is_finite()
    })
    .expect("same arity")
}

/// Crisp relation of the entries attaining the least finite value; empty
/// when there is no finite entry.
pub fn opt(rel: &ValuedRelation) -> ValuedRelation {
    let min = rel.min_finite().cloned();
    ValuedRelation::crisp_from_fn(format!("opt({})", rel.name()), rel.arity(), |w| {
        Some(rel.cost(w)) == min.as_ref()
    })
    .expect("same arity")
}

/// `R_σ(x_1, …, x_l) = R(x_σ(1), …, x_σ(k))` for an arbitrary map
/// `σ: [k] → [l]`.
pub fn minor_map(rel: &ValuedRelation, sigma: &[usize], l: usize) -> Result<ValuedRelation> {
    if sigma.len() != rel.arity() {
        return Err(Error::InvalidPartition(format!(
            "map has {} entries, relation has arity {}",
            sigma.len(),
            rel.arity()
        )));
    }
    if let Some(&bad) = sigma.iter().find(|&&b| b >= l) {
        return Err(Error::InvalidPartition(format!("target {bad} out of range 0..{l}")));
    }
    let mut vals = Vec::with_capacity(sigma.len());
    ValuedRelation::from_fn(rel.name(), l, |w| {
        vals.clear();
        vals.extend(sigma.iter().map(|&b| w.ranks()[b]));
        rel.cost_of_values(&vals).clone()
    })
}

/// Minor that identifies the positions inside each block of a partition.
///
/// Blocks are ordered by their least position; the result has one argument
/// per block.
pub fn minor(rel: &ValuedRelation, partition: &[Vec<usize>]) -> Result<ValuedRelation> {
    let k = rel.arity();
    let mut sigma = vec![usize::MAX; k];
    let mut blocks: Vec<&Vec<usize>> = partition.iter().collect();
    if blocks.iter().any(|b| b.is_empty()) {
        return Err(Error::InvalidPartition("empty block".into()));
    }
    blocks.sort_by_key(|b| *b.iter().min().unwrap());
    for (i, block) in blocks.iter().enumerate() {
        for &p in block.iter() {
            if p >= k || sigma[p] != usize::MAX {
                return Err(Error::InvalidPartition(format!(
                    "position {p} is out of range or repeated"
                )));
            }
            sigma[p] = i;
        }
    }
    if sigma.contains(&usize::MAX) {
        return Err(Error::InvalidPartition("not every position is covered".into()));
    }
    minor_map(rel, &sigma, blocks.len())
}

/// All set partitions of `k` positions as restricted growth strings: entry
/// `p` is the block of position `p`, blocks numbered by first occurrence.
pub fn partitions(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(k: usize, cur: &mut Vec<usize>, top: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for b in 0..=top {
            cur.push(b);
            rec(k, cur, if b == top { top + 1 } else { top }, out);
            cur.pop();
        }
    }
    if k > 0 {
        rec(k, &mut cur, 0, &mut out);
    }
    out
}

fn blocks_label(sigma: &[usize]) -> String {
    sigma.iter().map(|b| b.to_string()).collect::<Vec<_>>().join("")
}

/// The crisp structure with `Feas(R)` for every relation and `Opt(R_σ)` for
/// every identification of positions of every relation.
pub fn build_hat(structure: &ValuedStructure) -> CrispStructure {
    let mut out = Vec::new();
    for rel in structure.relations() {
        out.push(feas(rel));
        for sigma in partitions(rel.arity()) {
            let blocks = sigma.iter().max().map_or(0, |m| m + 1);
            let m = minor_map(rel, &sigma, blocks).expect("valid partition");
            let label = if blocks == rel.arity() {
                format!("opt({})", rel.name())
            } else {
                format!("opt({}[{}])", rel.name(), blocks_label(&sigma))
            };
            out.push(opt(&m).renamed(label));
        }
    }
    CrispStructure::new(out).expect("feas and opt are crisp")
}

/// Crisp structure of the `Feas` relations.
pub fn feas_structure(structure: &ValuedStructure) -> CrispStructure {
    CrispStructure::new(structure.relations().map(feas).collect()).expect("crisp")
}

/// Returns the order type `w` as a rank vector of the listed length;
/// convenience for tables written by hand.
pub fn order(ranks: &[u32]) -> WeakOrder {
    WeakOrder::new(ranks.to_vec()).expect("canonical ranks")
}
