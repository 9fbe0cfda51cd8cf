//! Instance evaluation, the brute-force oracle and the tractable-case
//! solvers.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use crate::classify::{classify_equality, classify_temporal, CaseTag};
use crate::clone::{build_hat, feas, feas_structure, minor, opt};
use crate::config::Caps;
use crate::cost::Cost;
use crate::csp::{
    forced_equalities, solve_crisp_complete, solve_crisp_minlayer, CrispInstance, Direction,
    SatResult,
};
use crate::error::{Error, Result};
use crate::ops::{essentially_crisp, first_failure, CanonicalOp};
use crate::order::{canonical_weak_order, for_each_weak_order, space, WeakOrder, MAX_SPACE_ARITY};
use crate::relation::{Atom, ValuedRelation, ValuedStructure};

/// A sum of atoms over named variables, with an optional finite threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    variables: Vec<String>,
    atoms: Vec<Atom>,
    threshold: Option<Cost>,
}

impl Instance {
    pub fn new(variables: Vec<String>, atoms: Vec<Atom>, threshold: Option<Cost>) -> Result<Instance> {
        if variables.is_empty() {
            return Err(Error::Empty("instance variables"));
        }
        let mut seen = HashSet::new();
        if let Some(v) = variables.iter().find(|v| !seen.insert(v.as_str())) {
            return Err(Error::Duplicate(v.clone()));
        }
        if let Some(v) = atoms.iter().flat_map(|a| &a.args).find(|&&v| v >= variables.len()) {
            return Err(Error::UndeclaredVariable(format!("#{v}")));
        }
        if let Some(u) = threshold.as_ref().filter(|u| u.is_infinite()) {
            return Err(Error::InvalidCost(format!("threshold must be finite, got {u}")));
        }
        Ok(Instance {
            variables,
            atoms,
            threshold,
        })
    }

    /// Variables named by their index: `x0, x1, ...`.
    pub fn numbered(vars: usize, atoms: Vec<Atom>) -> Result<Instance> {
        Instance::new((0..vars).map(|i| format!("x{i}")).collect(), atoms, None)
    }

    pub fn with_threshold(mut self, threshold: Option<Cost>) -> Result<Instance> {
        self = Instance::new(self.variables, self.atoms, threshold)?;
        Ok(self)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn threshold(&self) -> Option<&Cost> {
        self.threshold.as_ref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub optimal_cost: Cost,
    /// An optimal weak order on the variables; absent when the optimum is
    /// infinite.
    pub argmin: Option<WeakOrder>,
    /// Whether the optimum is at most the threshold, if one was given.
    pub decision: Option<bool>,
    pub method: String,
    pub warning: Option<String>,
}

impl SolveOutcome {
    fn new(inst: &Instance, optimal_cost: Cost, argmin: Option<WeakOrder>, method: &str) -> SolveOutcome {
        let argmin = argmin.filter(|_| optimal_cost.is_finite());
        SolveOutcome {
            decision: inst.threshold().map(|u| &optimal_cost <= u),
            optimal_cost,
            argmin,
            method: method.to_string(),
            warning: None,
        }
    }
}

fn resolve<'s>(s: &'s ValuedStructure, inst: &Instance) -> Result<Vec<&'s ValuedRelation>> {
    inst.atoms
        .iter()
        .map(|a| s.resolve_atom(&a.target, a.args.len()))
        .collect()
}

/// Cost of the instance under the weak order `w` on its variables.
pub fn evaluate(s: &ValuedStructure, inst: &Instance, w: &WeakOrder) -> Result<Cost> {
    if w.arity() != inst.variables.len() {
        let missing = inst.variables.get(w.arity()).cloned().unwrap_or_default();
        return Err(Error::Unassigned(missing));
    }
    let rels = resolve(s, inst)?;
    Ok(evaluate_resolved(&rels, inst, w.ranks()))
}

fn evaluate_resolved(rels: &[&ValuedRelation], inst: &Instance, ranks: &[u8]) -> Cost {
    let mut total = Cost::zero();
    let mut vals = Vec::new();
    for (r, a) in rels.iter().zip(&inst.atoms) {
        vals.clear();
        vals.extend(a.args.iter().map(|&v| ranks[v]));
        let c = r.cost_of_values(&vals);
        if c.is_infinite() {
            return Cost::inf();
        }
        total += c;
    }
    total
}

/// Costs as integers over a common denominator, when they fit comfortably.
struct Scaled {
    tables: Vec<Vec<Option<i128>>>,
    denominator: BigInt,
}

impl Scaled {
    fn new(rels: &[&ValuedRelation]) -> Option<Scaled> {
        let mut denominator = BigInt::one();
        for r in rels {
            for c in r.costs() {
                if let Some(q) = c.finite() {
                    denominator = denominator.lcm(q.denom());
                }
            }
        }
        // Any sum of `rels.len()` entries must stay inside i128.
        let limit = BigInt::from(i128::MAX) / BigInt::from(rels.len().max(1) as u64 + 1);
        let mut tables = Vec::with_capacity(rels.len());
        for r in rels {
            let mut t = Vec::with_capacity(r.costs().len());
            for c in r.costs() {
                t.push(match c.finite() {
                    None => None,
                    Some(q) => {
                        let n = q.numer() * (&denominator / q.denom());
                        if n.abs() > limit {
                            return None;
                        }
                        Some(n.to_i128()?)
                    }
                });
            }
            tables.push(t);
        }
        Some(Scaled { tables, denominator })
    }

    fn eval(&self, rels: &[&ValuedRelation], inst: &Instance, ranks: &[u8]) -> Option<i128> {
        let mut total = 0i128;
        let mut vals = [0u8; 16];
        for ((r, t), a) in rels.iter().zip(&self.tables).zip(&inst.atoms) {
            let k = a.args.len();
            let idx = if k <= vals.len() {
                for (slot, &v) in vals.iter_mut().zip(&a.args) {
                    *slot = ranks[v];
                }
                r.space().index_of_values(&vals[..k])
            } else {
                let v: Vec<u8> = a.args.iter().map(|&v| ranks[v]).collect();
                r.space().index_of_values(&v)
            };
            total += t[idx]?;
        }
        Some(total)
    }

    fn cost(&self, v: Option<i128>) -> Cost {
        match v {
            None => Cost::inf(),
            Some(n) => Cost::Finite(num_rational::BigRational::new(BigInt::from(n), self.denominator.clone())),
        }
    }
}

/// Exact minimum over all weak orders on the variables; ties go to the
/// order enumerated first.
pub fn solve_oracle(s: &ValuedStructure, inst: &Instance, caps: &Caps) -> Result<SolveOutcome> {
    let (cost, argmin) = oracle_min(s, inst, caps)?;
    Ok(SolveOutcome::new(inst, cost, Some(argmin), "oracle"))
}

fn oracle_min(s: &ValuedStructure, inst: &Instance, caps: &Caps) -> Result<(Cost, WeakOrder)> {
    let n = inst.variables.len();
    if n > caps.oracle_search {
        return Err(Error::capacity("variables for the oracle", n, caps.oracle_search));
    }
    let rels = resolve(s, inst)?;
    if n > MAX_SPACE_ARITY {
        let mut best: Option<(Cost, WeakOrder)> = None;
        for_each_weak_order(n, |r| {
            let c = evaluate_resolved(&rels, inst, r);
            if best.as_ref().map_or(true, |(b, _)| &c < b) {
                best = Some((c, WeakOrder::from_canonical(r.to_vec())));
            }
        });
        return Ok(best.expect("at least one weak order"));
    }
    let orders = space(n).orders();
    if let Some(scaled) = Scaled::new(&rels) {
        // Infinite sums sort last; ties go to the smaller index.
        let (infinite, value, i) = (0..orders.len())
            .into_par_iter()
            .map(|i| {
                let v = scaled.eval(&rels, inst, orders[i].ranks());
                (v.is_none(), v.unwrap_or(0), i)
            })
            .min()
            .expect("at least one weak order");
        let cost = scaled.cost((!infinite).then_some(value));
        debug_assert_eq!(cost, evaluate_resolved(&rels, inst, orders[i].ranks()));
        return Ok((cost, orders[i].clone()));
    }
    let (cost, i) = (0..orders.len())
        .into_par_iter()
        .map(|i| (evaluate_resolved(&rels, inst, orders[i].ranks()), i))
        .min()
        .expect("at least one weak order");
    Ok((cost, orders[i].clone()))
}

fn require(op: CanonicalOp, s: &ValuedStructure, caps: &Caps) -> Result<()> {
    if let Some((name, cx)) = first_failure(op, s.relations(), false, caps)? {
        return Err(Error::Precondition(format!("{op} does not improve `{name}`: {cx}")));
    }
    Ok(())
}

/// Optimum when const0 improves the structure: everything equal.
pub fn solve_const(s: &ValuedStructure, inst: &Instance, caps: &Caps) -> Result<SolveOutcome> {
    require(CanonicalOp::Const0, s, caps)?;
    const_unchecked(s, inst, "constCase")
}

fn const_unchecked(s: &ValuedStructure, inst: &Instance, method: &str) -> Result<SolveOutcome> {
    let w = WeakOrder::constant(inst.variables.len());
    let cost = evaluate(s, inst, &w)?;
    Ok(SolveOutcome::new(inst, cost, Some(w), method))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    /// Merges two classes; the representative is the smaller index.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (a, b) = (self.find(x), self.find(y));
        if a == b {
            return false;
        }
        self.0[a.max(b)] = a.min(b);
        true
    }
}

/// Optimum when the structure is equality-invariant and improved by inj:
/// merge variables glued by every finite entry of some atom, then separate
/// everything else.
pub fn solve_equality_inj(s: &ValuedStructure, inst: &Instance, caps: &Caps) -> Result<SolveOutcome> {
    if let Some(r) = s.relations().find(|r| !r.is_equality_invariant()) {
        return Err(Error::Precondition(format!("`{}` is not equality-invariant", r.name())));
    }
    require(CanonicalOp::Inj, s, caps)?;
    inj_unchecked(s, inst, "eqInjCase")
}

fn inj_unchecked(s: &ValuedStructure, inst: &Instance, method: &str) -> Result<SolveOutcome> {
    let rels = resolve(s, inst)?;
    let n = inst.variables.len();
    let mut uf = UnionFind::new(n);
    let mut changed = true;
    while changed {
        changed = false;
        for (r, a) in rels.iter().zip(&inst.atoms) {
            let reps: Vec<usize> = a.args.iter().map(|&v| uf.find(v)).collect();
            let k = reps.len();
            // Finite entries consistent with the merges made so far.
            let finite: Vec<&WeakOrder> = r
                .entries()
                .filter(|(w, c)| {
                    c.is_finite()
                        && (0..k).all(|i| (0..i).all(|j| reps[i] != reps[j] || w.ranks()[i] == w.ranks()[j]))
                })
                .map(|(w, _)| w)
                .collect();
            if finite.is_empty() {
                return Ok(SolveOutcome::new(inst, Cost::inf(), None, method));
            }
            for i in 0..k {
                for j in 0..i {
                    if reps[i] != reps[j]
                        && finite.iter().all(|w| w.ranks()[i] == w.ranks()[j])
                        && uf.union(reps[i], reps[j])
                    {
                        changed = true;
                    }
                }
            }
        }
    }
    let reps: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    let w = canonical_weak_order(&reps)?;
    let cost = evaluate_resolved(&rels, inst, w.ranks());
    Ok(SolveOutcome::new(inst, cost, Some(w), method))
}

/// The first witness operation preserving every relation of `crisp`.
fn witness(crisp: &[ValuedRelation], caps: &Caps) -> Result<Option<CanonicalOp>> {
    for op in CanonicalOp::WITNESSES {
        if first_failure(op, crisp, true, caps)?.is_none() {
            return Ok(Some(op));
        }
    }
    Ok(None)
}

/// Satisfiability through the greedy backend when the witness is min or
/// max, through the complete backend otherwise.
fn crisp_sat(inst: &CrispInstance, op: CanonicalOp, caps: &Caps) -> Result<SatResult> {
    let direction = match op {
        CanonicalOp::Min => Direction::Min,
        CanonicalOp::Max => Direction::Max,
        _ => return solve_crisp_complete(inst, caps),
    };
    match solve_crisp_minlayer(inst, direction, caps) {
        Err(Error::UnsupportedClass(_)) => solve_crisp_complete(inst, caps),
        other => other,
    }
}

/// Crisp instance of `f(R)` for every atom `R(args)`, sharing tables
/// between atoms over the same relation.
fn crisp_image(
    rels: &[&ValuedRelation],
    inst: &Instance,
    f: impl Fn(&ValuedRelation) -> ValuedRelation,
) -> Result<CrispInstance> {
    let mut cache: BTreeMap<String, Arc<ValuedRelation>> = BTreeMap::new();
    let mut crisp = CrispInstance::new(inst.variables.len());
    for (r, a) in rels.iter().zip(&inst.atoms) {
        let img = cache
            .entry(a.target.label().to_string())
            .or_insert_with(|| Arc::new(f(r)))
            .clone();
        crisp.add_atom(img, a.args.clone())?;
    }
    Ok(crisp)
}

/// Optimum when every relation takes one finite value and the feasibility
/// structure is tractable: the sum of those values, if feasible.
pub fn solve_essentially_crisp(s: &ValuedStructure, inst: &Instance, caps: &Caps) -> Result<SolveOutcome> {
    if !essentially_crisp(s.relations()) {
        return Err(Error::Precondition("structure is not essentially crisp".into()));
    }
    let op = witness(feas_structure(s).relations(), caps)?.ok_or_else(|| {
        Error::Precondition("no witness operation preserves the feasibility structure".into())
    })?;
    ess_crisp_unchecked(s, inst, op, caps, "essentiallyCrispCase")
}

fn ess_crisp_unchecked(
    s: &ValuedStructure,
    inst: &Instance,
    op: CanonicalOp,
    caps: &Caps,
    method: &str,
) -> Result<SolveOutcome> {
    let rels = resolve(s, inst)?;
    let sat = crisp_sat(&crisp_image(&rels, inst, feas)?, op, caps)?;
    let Some(w) = sat.witness else {
        return Ok(SolveOutcome::new(inst, Cost::inf(), None, method));
    };
    let cost = rels
        .iter()
        .map(|r| r.min_finite().cloned().unwrap_or(Cost::Infinite))
        .sum();
    Ok(SolveOutcome::new(inst, cost, Some(w), method))
}

/// Optimum when lex improves the structure and its hat structure is
/// tractable.
///
/// Feasibility is checked first; variables equal in every feasible
/// assignment are merged; each atom then contributes the common value of
/// its injective entries, provided the atoms can all sit at their optimal
/// entries simultaneously.
pub fn solve_lex(s: &ValuedStructure, inst: &Instance, caps: &Caps) -> Result<SolveOutcome> {
    require(CanonicalOp::Lex, s, caps)?;
    let op = witness(build_hat(s).relations(), caps)?.ok_or_else(|| {
        Error::Precondition("no witness operation preserves the hat structure".into())
    })?;
    lex_unchecked(s, inst, op, caps, "lexCase")
}

fn lex_unchecked(
    s: &ValuedStructure,
    inst: &Instance,
    op: CanonicalOp,
    caps: &Caps,
    method: &str,
) -> Result<SolveOutcome> {
    let rels = resolve(s, inst)?;
    let n = inst.variables.len();
    let phi = crisp_image(&rels, inst, feas)?;
    if !crisp_sat(&phi, op, caps)?.satisfiable {
        return Ok(SolveOutcome::new(inst, Cost::inf(), None, method));
    }
    let mut uf = UnionFind::new(n);
    for (x, y) in forced_equalities(&phi, caps)? {
        uf.union(x, y);
    }
    let rep: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();

    let mut psi = CrispInstance::new(n);
    let mut total = Cost::zero();
    for (r, a) in rels.iter().zip(&inst.atoms) {
        let args: Vec<usize> = a.args.iter().map(|&v| rep[v]).collect();
        let mut distinct: Vec<usize> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (p, &v) in args.iter().enumerate() {
            match distinct.iter().position(|&d| d == v) {
                Some(b) => blocks[b].push(p),
                None => {
                    distinct.push(v);
                    blocks.push(vec![p]);
                }
            }
        }
        let m = minor(r, &blocks)?;
        let injective: Vec<&Cost> = m
            .entries()
            .filter(|(w, c)| w.is_injective() && c.is_finite())
            .map(|(_, c)| c)
            .collect();
        let Some(&first) = injective.first() else {
            return Err(Error::Invariant(format!(
                "atom over `{}` has no finite injective entry after merging forced equalities",
                r.name()
            )));
        };
        if injective.iter().any(|&c| c != first) {
            return Err(Error::Invariant(format!(
                "finite injective entries of `{}` disagree",
                m.name()
            )));
        }
        total += first;
        psi.add_atom(Arc::new(opt(&m)), distinct)?;
    }
    let sat = crisp_sat(&psi, op, caps)?;
    let Some(w) = sat.witness else {
        return Ok(SolveOutcome::new(inst, Cost::inf(), None, method));
    };
    let ranks: Vec<u8> = rep.iter().map(|&r| w.ranks()[r]).collect();
    let argmin = canonical_weak_order(&ranks)?;
    let check = evaluate_resolved(&rels, inst, argmin.ranks());
    if check != total {
        return Err(Error::Invariant(format!(
            "optimal assignment costs {check}, expected {total}"
        )));
    }
    Ok(SolveOutcome::new(inst, total, Some(argmin), method))
}

/// Classifies the structure and runs the matching solver. Equality-invariant
/// structures go through the equality classification; hard structures fall
/// back to the oracle.
pub fn solve_dispatch(s: &ValuedStructure, inst: &Instance, caps: &Caps) -> Result<SolveOutcome> {
    let verdict = if s.is_equality_invariant() {
        classify_equality(s, caps)?
    } else {
        classify_temporal(s, caps)?
    };
    let method = verdict.case_tag.name();
    match (verdict.case_tag, verdict.witness_op) {
        (CaseTag::Const | CaseTag::EqConst, _) => const_unchecked(s, inst, method),
        (CaseTag::EqInj, _) => inj_unchecked(s, inst, method),
        (CaseTag::Lex, Some(op)) => lex_unchecked(s, inst, op, caps, method),
        (CaseTag::EssentiallyCrisp, Some(op)) => ess_crisp_unchecked(s, inst, op, caps, method),
        _ => {
            let (cost, argmin) = oracle_min(s, inst, caps)?;
            let mut out = SolveOutcome::new(inst, cost, Some(argmin), "oracleFallback");
            out.warning = Some(format!(
                "{} structure: exhaustive search over all weak orders, exponential in the number of variables",
                verdict.complexity
            ));
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named_relation;
    use crate::clone::shift;
    use crate::clone::order;
    use num_rational::BigRational;

    fn structure(rels: Vec<ValuedRelation>) -> ValuedStructure {
        ValuedStructure::new(rels).unwrap()
    }

    fn named(names: &[&str]) -> ValuedStructure {
        structure(names.iter().map(|n| named_relation(n).unwrap()).collect())
    }

    fn inst(vars: usize, atoms: &[(&str, &[usize])]) -> Instance {
        Instance::numbered(vars, atoms.iter().map(|(n, a)| Atom::named(n, a.to_vec())).collect()).unwrap()
    }

    fn r3() -> ValuedRelation {
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

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn evaluate_examples() {
        let s = named(&["lt01"]);
        let i = inst(2, &[("lt01", &[0, 1]), ("lt01", &[1, 0])]);
        assert_eq!(evaluate(&s, &i, &order(&[0, 1])).unwrap(), Cost::one());
        assert_eq!(evaluate(&s, &i, &order(&[0, 0])).unwrap(), Cost::int(2));
        let e = inst(1, &[("empty", &[0])]);
        assert!(evaluate(&s, &e, &order(&[0])).unwrap().is_infinite());
        assert!(matches!(evaluate(&s, &i, &order(&[0])), Err(Error::Unassigned(_))));
        let bad = inst(2, &[("lt01", &[0])]);
        assert!(matches!(evaluate(&s, &bad, &order(&[0, 1])), Err(Error::ArityMismatch { .. })));
        let unknown = inst(1, &[("nope", &[0])]);
        assert!(matches!(evaluate(&s, &unknown, &order(&[0])), Err(Error::UnknownRelation(_))));
    }

    #[test]
    fn oracle_examples() {
        let s = named(&["lt01"]);
        let cycle = inst(3, &[("lt01", &[0, 1]), ("lt01", &[1, 2]), ("lt01", &[2, 0])]);
        let out = solve_oracle(&s, &cycle, &caps()).unwrap();
        assert_eq!(out.optimal_cost, Cost::one());
        assert_eq!(evaluate(&s, &cycle, out.argmin.as_ref().unwrap()).unwrap(), Cost::one());
        assert_eq!(solve_oracle(&s, &inst(1, &[]), &caps()).unwrap().optimal_cost, Cost::zero());
        let s = named(&["neq01"]);
        let i = inst(2, &[("eq", &[0, 1]), ("neq01", &[0, 1])]);
        assert_eq!(solve_oracle(&s, &i, &caps()).unwrap().optimal_cost, Cost::one());
        let mut c = caps();
        c.oracle_search = 2;
        assert!(solve_oracle(&s, &inst(3, &[]), &c).unwrap_err().is_capacity());
    }

    #[test]
    fn oracle_exact_path_matches_fast_path() {
        let huge = BigRational::new(BigInt::from(3).pow(90), BigInt::from(7));
        let r = crate::clone::shift(&named_relation("lt01").unwrap(), &huge).renamed("big");
        let s = structure(vec![r]);
        let i = inst(3, &[("big", &[0, 1]), ("big", &[1, 2]), ("big", &[2, 0])]);
        let out = solve_oracle(&s, &i, &caps()).unwrap();
        assert_eq!(out.optimal_cost, Cost::Finite(huge * BigInt::from(3)) + Cost::one());
    }

    #[test]
    fn const_examples() {
        let s = named(&["leq01"]);
        let i = inst(2, &[("leq01", &[0, 1]), ("leq01", &[1, 0])])
            .with_threshold(Some(Cost::zero()))
            .unwrap();
        let out = solve_const(&s, &i, &caps()).unwrap();
        assert_eq!((out.optimal_cost, out.decision), (Cost::zero(), Some(true)));
        let e = inst(2, &[("leq01", &[0, 1]), ("empty", &[0])])
            .with_threshold(Some(Cost::int(100)))
            .unwrap();
        let out = solve_const(&s, &e, &caps()).unwrap();
        assert!(out.optimal_cost.is_infinite());
        assert_eq!((out.decision, out.argmin), (Some(false), None));
        assert!(solve_const(&named(&["lt01"]), &inst(1, &[]), &caps()).is_err());
    }

    #[test]
    fn inj_examples() {
        let s = named(&["neq01", "eqInf"]);
        let i = inst(2, &[("neq01", &[0, 1]), ("neq01", &[0, 1])]);
        assert_eq!(solve_equality_inj(&s, &i, &caps()).unwrap().optimal_cost, Cost::zero());
        let i = inst(2, &[("eqInf", &[0, 1]), ("neq01", &[0, 1])]);
        let out = solve_equality_inj(&s, &i, &caps()).unwrap();
        assert_eq!(out.optimal_cost, Cost::one());
        assert_eq!(out.argmin, Some(order(&[0, 0])));
        assert!(solve_equality_inj(&named(&["lt01"]), &inst(1, &[]), &caps()).is_err());
    }

    #[test]
    fn lex_examples() {
        let s = structure(vec![r3()]);
        let out = solve_lex(&s, &inst(2, &[("R3", &[0, 0, 1])]), &caps()).unwrap();
        assert_eq!(out.optimal_cost, Cost::one());
        let out = solve_lex(&s, &inst(3, &[("R3", &[0, 1, 2]), ("R3", &[1, 0, 2])]), &caps()).unwrap();
        assert_eq!(out.optimal_cost, Cost::zero());
        let s = named(&["neq01"]);
        let out = solve_lex(&s, &inst(1, &[("neq01", &[0, 0])]), &caps()).unwrap();
        assert_eq!(out.optimal_cost, Cost::one());
        assert!(solve_lex(&named(&["lt01"]), &inst(1, &[]), &caps()).is_err());
    }

    #[test]
    fn essentially_crisp_examples() {
        let s = named(&["ltInf"]);
        let out = solve_essentially_crisp(&s, &inst(3, &[("ltInf", &[0, 1]), ("ltInf", &[1, 2])]), &caps()).unwrap();
        assert_eq!(out.optimal_cost, Cost::zero());
        let i = inst(2, &[("ltInf", &[0, 1]), ("ltInf", &[1, 0])])
            .with_threshold(Some(Cost::int(1000)))
            .unwrap();
        let out = solve_essentially_crisp(&s, &i, &caps()).unwrap();
        assert!(out.optimal_cost.is_infinite());
        assert_eq!(out.decision, Some(false));
        let shifted = shift(&named_relation("ltInf").unwrap(), &BigRational::from_integer(2.into())).renamed("lt2");
        let s = structure(vec![shifted]);
        let out = solve_essentially_crisp(&s, &inst(2, &[("lt2", &[0, 1])]), &caps()).unwrap();
        assert_eq!(out.optimal_cost, Cost::int(2));
    }

    #[test]
    fn dispatch_examples() {
        let out = solve_dispatch(&named(&["leq01"]), &inst(2, &[("leq01", &[0, 1])]), &caps()).unwrap();
        assert_eq!(out.method, "constCase");
        let out = solve_dispatch(&named(&["neq01"]), &inst(2, &[("neq01", &[0, 1])]), &caps()).unwrap();
        assert_eq!(out.method, "eqInjCase");
        let cycle = inst(3, &[("lt01", &[0, 1]), ("lt01", &[1, 2]), ("lt01", &[2, 0])])
            .with_threshold(Some(Cost::zero()))
            .unwrap();
        let out = solve_dispatch(&named(&["lt01"]), &cycle, &caps()).unwrap();
        assert_eq!(out.method, "oracleFallback");
        assert_eq!(out.decision, Some(false));
        assert!(out.warning.is_some());
        let out = solve_dispatch(&named(&["ltInf"]), &inst(2, &[("ltInf", &[0, 1])]), &caps()).unwrap();
        assert_eq!(out.method, "essentiallyCrispCase");
        let out = solve_dispatch(&structure(vec![r3(), named_relation("ltInf").unwrap()]), &inst(2, &[("R3", &[0, 0, 1])]), &caps()).unwrap();
        assert_eq!(out.method, "lexCase");
    }

    #[test]
    fn instance_validation() {
        assert!(Instance::new(vec![], vec![], None).is_err());
        assert!(Instance::new(vec!["x".into(), "x".into()], vec![], None).is_err());
        assert!(Instance::numbered(1, vec![Atom::named("a", vec![1])]).is_err());
        assert!(Instance::new(vec!["x".into()], vec![], Some(Cost::inf())).is_err());
    }
}
