//! Satisfiability of crisp temporal instances.
//!
//! A solution exists iff some weak order on the variables satisfies every
//! atom, so both backends build that weak order bottom layer first. The
//! complete backend backtracks over layers; the min-layer backend picks each
//! layer greedily and is only sound for min- (or max-) closed relations.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::rc::Rc;
use std::sync::Arc;

use rayon::prelude::*;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::ops::{preserves, CanonicalOp};
use crate::order::WeakOrder;
use crate::relation::ValuedRelation;

/// Hard ceiling on the variable count, set by the width of the layer masks.
const MAX_VARS: usize = 64;

#[derive(Debug, Clone)]
pub struct CrispAtom {
    pub relation: Arc<ValuedRelation>,
    pub args: Vec<usize>,
}

/// A conjunction of crisp atoms plus disequality side constraints.
#[derive(Debug, Clone, Default)]
pub struct CrispInstance {
    vars: usize,
    atoms: Vec<CrispAtom>,
    diseqs: BTreeSet<(usize, usize)>,
}

impl CrispInstance {
    pub fn new(vars: usize) -> CrispInstance {
        CrispInstance {
            vars,
            ..CrispInstance::default()
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn atoms(&self) -> &[CrispAtom] {
        &self.atoms
    }

    pub fn diseqs(&self) -> &BTreeSet<(usize, usize)> {
        &self.diseqs
    }

    pub fn add_atom(&mut self, relation: Arc<ValuedRelation>, args: Vec<usize>) -> Result<()> {
        if !relation.is_crisp() {
            return Err(Error::Precondition(format!(
                "crisp instances need crisp relations; `{}` is not crisp",
                relation.name()
            )));
        }
        if relation.arity() != args.len() {
            return Err(Error::ArityMismatch {
                relation: relation.name().to_string(),
                expected: relation.arity(),
                found: args.len(),
            });
        }
        self.check_var(&args)?;
        self.atoms.push(CrispAtom { relation, args });
        Ok(())
    }

    /// Adds `x ≠ y`. A constraint `x ≠ x` makes the instance unsatisfiable.
    pub fn add_diseq(&mut self, x: usize, y: usize) -> Result<()> {
        self.check_var(&[x, y])?;
        self.diseqs.insert((x.min(y), x.max(y)));
        Ok(())
    }

    fn check_var(&self, vars: &[usize]) -> Result<()> {
        match vars.iter().find(|&&v| v >= self.vars) {
            Some(v) => Err(Error::UndeclaredVariable(format!("#{v}"))),
            None => Ok(()),
        }
    }

    /// Whether `w` (over all variables) satisfies every atom and disequality.
    pub fn satisfied_by(&self, w: &WeakOrder) -> bool {
        let r = w.ranks();
        self.diseqs.iter().all(|&(x, y)| r[x] != r[y])
            && self
                .atoms
                .iter()
                .all(|a| a.relation.cost(&w.restrict(&a.args)).is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatResult {
    pub satisfiable: bool,
    pub witness: Option<WeakOrder>,
}

impl SatResult {
    fn unsat() -> SatResult {
        SatResult {
            satisfiable: false,
            witness: None,
        }
    }

    fn from_layers(vars: usize, layers: &[u64]) -> SatResult {
        let mut ranks = vec![0u8; vars];
        for (rank, layer) in layers.iter().enumerate() {
            for (v, r) in ranks.iter_mut().enumerate() {
                if layer >> v & 1 == 1 {
                    *r = rank as u8;
                }
            }
        }
        SatResult {
            satisfiable: true,
            witness: Some(WeakOrder::from_canonical(ranks)),
        }
    }
}

/// The feasible order types of an atom, each as its list of blocks, a block
/// being the bitmask of argument positions sharing that rank.
struct Compiled {
    types: Vec<Vec<u16>>,
}

impl Compiled {
    fn new(rel: &ValuedRelation) -> Compiled {
        let types = rel
            .zero_entries()
            .map(|w| {
                let mut blocks = vec![0u16; w.blocks()];
                for (p, &r) in w.ranks().iter().enumerate() {
                    blocks[r as usize] |= 1 << p;
                }
                blocks
            })
            .collect();
        Compiled { types }
    }
}

/// Layer-by-layer state shared by both backends: for each atom, the feasible
/// types whose lowest blocks match the layers placed so far.
#[derive(Clone)]
struct Layering<'a> {
    compiled: Vec<Rc<Compiled>>,
    args: Vec<&'a [usize]>,
    alive: Vec<Rc<Vec<u32>>>,
    consumed: Vec<usize>,
}

impl<'a> Layering<'a> {
    fn new(inst: &'a CrispInstance) -> Layering<'a> {
        let mut cache: HashMap<*const ValuedRelation, Rc<Compiled>> = HashMap::new();
        let compiled: Vec<Rc<Compiled>> = inst
            .atoms
            .iter()
            .map(|a| {
                cache
                    .entry(Arc::as_ptr(&a.relation))
                    .or_insert_with(|| Rc::new(Compiled::new(&a.relation)))
                    .clone()
            })
            .collect();
        // Only types giving repeated variables equal ranks can ever be
        // realised by an assignment.
        let alive = compiled
            .iter()
            .zip(&inst.atoms)
            .map(|(c, a)| {
                let same: Vec<u16> = a
                    .args
                    .iter()
                    .map(|v| a.args.iter().enumerate().filter(|(_, u)| *u == v).fold(0, |m, (p, _)| m | 1 << p))
                    .collect();
                let kept = (0..c.types.len() as u32)
                    .filter(|&t| {
                        c.types[t as usize]
                            .iter()
                            .all(|&block| same.iter().enumerate().all(|(p, &m)| block >> p & 1 == 0 || block & m == m))
                    })
                    .collect();
                Rc::new(kept)
            })
            .collect();
        Layering {
            args: inst.atoms.iter().map(|a| a.args.as_slice()).collect(),
            consumed: vec![0; compiled.len()],
            compiled,
            alive,
        }
    }

    fn dead(&self) -> bool {
        self.alive.iter().any(|a| a.is_empty())
    }

    fn positions(&self, atom: usize, layer: u64) -> u16 {
        self.args[atom]
            .iter()
            .enumerate()
            .filter(|(_, &v)| layer >> v & 1 == 1)
            .fold(0, |m, (p, _)| m | 1 << p)
    }

    /// Places `layer` as the next block; `None` if some atom runs out of types.
    fn place(&self, layer: u64) -> Option<Layering<'a>> {
        let mut next = self.clone();
        for a in 0..self.args.len() {
            let mask = self.positions(a, layer);
            if mask == 0 {
                continue;
            }
            let c = self.consumed[a];
            let types = &self.compiled[a].types;
            let kept: Vec<u32> = self.alive[a]
                .iter()
                .copied()
                .filter(|&t| types[t as usize].get(c) == Some(&mask))
                .collect();
            if kept.is_empty() {
                return None;
            }
            next.alive[a] = Rc::new(kept);
            next.consumed[a] = c + 1;
        }
        Some(next)
    }

    /// Variables of `atom` that may form (part of) the next block inside
    /// `allowed`: the union of the next blocks of its alive types that lie in
    /// `allowed`.
    fn admissible(&self, atom: usize, allowed: u64) -> u64 {
        let c = self.consumed[atom];
        let types = &self.compiled[atom].types;
        let args = self.args[atom];
        let mut union = 0u64;
        for &t in self.alive[atom].iter() {
            let Some(&block) = types[t as usize].get(c) else {
                continue;
            };
            let vars = args
                .iter()
                .enumerate()
                .filter(|(p, _)| block >> p & 1 == 1)
                .fold(0u64, |m, (_, &v)| m | 1 << v);
            if vars & !allowed == 0 {
                union |= vars;
            }
        }
        union
    }

    fn atom_vars(&self, atom: usize) -> u64 {
        self.args[atom].iter().fold(0, |m, &v| m | 1 << v)
    }

    /// Induced order type of the placed positions of every atom; together
    /// with the placed set it determines every future choice.
    fn key(&self, placed: u64) -> Vec<u16> {
        let mut key = vec![placed as u16, (placed >> 16) as u16, (placed >> 32) as u16, (placed >> 48) as u16];
        for a in 0..self.args.len() {
            let c = self.consumed[a];
            let t = self.alive[a][0] as usize;
            key.extend_from_slice(&self.compiled[a].types[t][..c]);
            key.push(u16::MAX);
        }
        key
    }
}

fn check_search_cap(inst: &CrispInstance, cap: usize) -> Result<()> {
    if inst.vars > cap.min(MAX_VARS) {
        return Err(Error::capacity(
            "variables for the crisp search",
            inst.vars,
            cap.min(MAX_VARS),
        ));
    }
    Ok(())
}

/// Sound and complete satisfiability check; returns the lexicographically
/// least witness rank vector.
pub fn solve_crisp_complete(inst: &CrispInstance, caps: &Caps) -> Result<SatResult> {
    check_search_cap(inst, caps.crisp_search)?;
    if inst.diseqs.iter().any(|&(x, y)| x == y) {
        return Ok(SatResult::unsat());
    }
    let start = Layering::new(inst);
    if start.dead() {
        return Ok(SatResult::unsat());
    }
    let mut search = Search {
        vars: inst.vars,
        diseqs: inst.diseqs.iter().map(|&(x, y)| 1u64 << x | 1u64 << y).collect(),
        failed: HashSet::new(),
        layers: Vec::new(),
    };
    let all = if inst.vars == 64 { u64::MAX } else { (1u64 << inst.vars) - 1 };
    if search.dfs(&start, 0, all) {
        Ok(SatResult::from_layers(inst.vars, &search.layers))
    } else {
        Ok(SatResult::unsat())
    }
}

struct Search {
    vars: usize,
    diseqs: Vec<u64>,
    failed: HashSet<Vec<u16>>,
    layers: Vec<u64>,
}

impl Search {
    fn dfs(&mut self, state: &Layering, placed: u64, all: u64) -> bool {
        if placed == all {
            return true;
        }
        let key = state.key(placed);
        if self.failed.contains(&key) {
            return false;
        }
        let free = all & !placed;
        // Candidate layers in descending order with variable 0 as the most
        // significant bit; the first success is the lexicographically least
        // rank vector.
        let free_rev = reverse(free, self.vars);
        let mut sub = free_rev;
        while sub != 0 {
            let layer = reverse(sub, self.vars);
            sub = (sub - 1) & free_rev;
            if self.diseqs.iter().any(|&d| d & layer == d) {
                continue;
            }
            let Some(next) = state.place(layer) else {
                continue;
            };
            self.layers.push(layer);
            if self.dfs(&next, placed | layer, all) {
                return true;
            }
            self.layers.pop();
        }
        self.failed.insert(key);
        false
    }
}

/// Mirrors the low `n` bits.
fn reverse(mask: u64, n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        mask.reverse_bits() >> (64 - n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Min,
    Max,
}

/// Greedy polynomial backend for min-closed (or max-closed) instances.
///
/// Each step keeps the greatest set `F` of unplaced variables such that every
/// variable of an atom lying in `F` belongs to some admissible next block of
/// that atom contained in `F`, then places `F` as the next layer.
pub fn solve_crisp_minlayer(
    inst: &CrispInstance,
    direction: Direction,
    caps: &Caps,
) -> Result<SatResult> {
    if inst.vars > MAX_VARS {
        return Err(Error::capacity("variables for the crisp search", inst.vars, MAX_VARS));
    }
    if !inst.diseqs.is_empty() {
        return Err(Error::UnsupportedClass(
            "disequality constraints are not min- or max-closed".into(),
        ));
    }
    let op = match direction {
        Direction::Min => CanonicalOp::Min,
        Direction::Max => CanonicalOp::Max,
    };
    let mut checked = HashSet::new();
    for a in &inst.atoms {
        if checked.insert(Arc::as_ptr(&a.relation))
            && !preserves(op, &a.relation, caps)?.holds()
        {
            return Err(Error::UnsupportedClass(format!(
                "`{}` is not preserved by {op}",
                a.relation.name()
            )));
        }
    }
    if direction == Direction::Max {
        let mut rev = CrispInstance::new(inst.vars);
        for a in &inst.atoms {
            rev.atoms.push(CrispAtom {
                relation: Arc::new(a.relation.reversed()),
                args: a.args.clone(),
            });
        }
        let mut res = min_layer(&rev)?;
        res.witness = res.witness.map(|w| w.reversed());
        return Ok(res);
    }
    min_layer(inst)
}

fn min_layer(inst: &CrispInstance) -> Result<SatResult> {
    let mut state = Layering::new(inst);
    if state.dead() {
        return Ok(SatResult::unsat());
    }
    let all = if inst.vars == 64 { u64::MAX } else { (1u64 << inst.vars) - 1 };
    let mut placed = 0u64;
    let mut layers = Vec::new();
    while placed != all {
        let mut f = all & !placed;
        loop {
            let mut g = f;
            for a in 0..inst.atoms.len() {
                let vars = state.atom_vars(a) & g;
                if vars != 0 {
                    g &= !(vars & !state.admissible(a, g));
                }
            }
            if g == f {
                break;
            }
            f = g;
        }
        if f == 0 {
            return Ok(SatResult::unsat());
        }
        state = state.place(f).ok_or_else(|| {
            Error::Invariant("min-layer step emptied an atom; relation not min-closed".into())
        })?;
        placed |= f;
        layers.push(f);
    }
    Ok(SatResult::from_layers(inst.vars, &layers))
}

/// All pairs `(x, y)`, `x < y`, equal in every solution. The probes
/// `I ∧ x ≠ y` run in parallel on the complete backend.
pub fn forced_equalities(inst: &CrispInstance, caps: &Caps) -> Result<BTreeSet<(usize, usize)>> {
    let base = solve_crisp_complete(inst, caps)?;
    let Some(w) = base.witness else {
        return Err(Error::Precondition("forced equalities of an unsatisfiable instance".into()));
    };
    let r = w.ranks();
    let pairs: Vec<(usize, usize)> = (0..inst.vars)
        .flat_map(|x| (x + 1..inst.vars).map(move |y| (x, y)))
        .filter(|&(x, y)| r[x] == r[y])
        .collect();
    let forced: Vec<Option<(usize, usize)>> = pairs
        .into_par_iter()
        .map(|(x, y)| {
            let mut probe = inst.clone();
            probe.add_diseq(x, y)?;
            Ok((!solve_crisp_complete(&probe, caps)?.satisfiable).then_some((x, y)))
        })
        .collect::<Result<_>>()?;
    Ok(forced.into_iter().flatten().collect())
}
