//! Valued relations as finite cost tables over order types, and structures
//! that bundle them.

use std::borrow::Cow;
use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use indexmap::IndexMap;

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::order::{space, OrderSpace, WeakOrder, MAX_SPACE_ARITY};

/// A temporal valued relation: a cost for every order type of its arity.
///
/// Entries are stored in the enumeration order of [`OrderSpace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuedRelation {
    name: String,
    arity: usize,
    costs: Vec<Cost>,
}

impl ValuedRelation {
    pub fn from_fn(
        name: impl Into<String>,
        arity: usize,
        mut f: impl FnMut(&WeakOrder) -> Cost,
    ) -> Result<ValuedRelation> {
        check_arity(arity)?;
        let costs = space(arity).orders().iter().map(&mut f).collect();
        Ok(ValuedRelation {
            name: name.into(),
            arity,
            costs,
        })
    }

    /// Crisp relation: cost 0 where `member` holds, `∞` elsewhere.
    pub fn crisp_from_fn(
        name: impl Into<String>,
        arity: usize,
        mut member: impl FnMut(&WeakOrder) -> bool,
    ) -> Result<ValuedRelation> {
        Self::from_fn(name, arity, |w| {
            if member(w) {
                Cost::zero()
            } else {
                Cost::Infinite
            }
        })
    }

    /// Constant relation of the given arity.
    pub fn constant(name: impl Into<String>, arity: usize, c: Cost) -> Result<ValuedRelation> {
        Self::from_fn(name, arity, |_| c.clone())
    }

    /// Table given in enumeration order.
    pub fn from_costs(name: impl Into<String>, arity: usize, costs: Vec<Cost>) -> Result<ValuedRelation> {
        check_arity(arity)?;
        if costs.len() != space(arity).len() {
            return Err(Error::Precondition(format!(
                "a table of arity {arity} needs {} entries, got {}",
                space(arity).len(),
                costs.len()
            )));
        }
        Ok(ValuedRelation {
            name: name.into(),
            arity,
            costs,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn renamed(mut self, name: impl Into<String>) -> ValuedRelation {
        self.name = name.into();
        self
    }

    pub fn space(&self) -> &'static OrderSpace {
        space(self.arity)
    }

    pub fn cost(&self, w: &WeakOrder) -> &Cost {
        &self.costs[self.space().index_of(w.ranks())]
    }

    /// Cost of the order type of an arbitrary tuple of small values.
    #[inline]
    pub fn cost_of_values(&self, vals: &[u8]) -> &Cost {
        &self.costs[self.space().index_of_values(vals)]
    }

    pub fn costs(&self) -> &[Cost] {
        &self.costs
    }

    pub fn entries(&self) -> impl Iterator<Item = (&WeakOrder, &Cost)> {
        self.space().orders().iter().zip(&self.costs)
    }

    pub fn is_crisp(&self) -> bool {
        self.costs.iter().all(|c| c.is_zero() || c.is_infinite())
    }

    /// Distinct finite values, ascending.
    pub fn finite_values(&self) -> BTreeSet<Cost> {
        self.costs.iter().filter(|c| c.is_finite()).cloned().collect()
    }

    pub fn min_finite(&self) -> Option<&Cost> {
        self.costs.iter().filter(|c| c.is_finite()).min()
    }

    /// True when the cost only depends on which positions are equal.
    pub fn is_equality_invariant(&self) -> bool {
        let mut seen: HashMap<WeakOrder, &Cost> = HashMap::new();
        for (w, c) in self.entries() {
            match seen.entry(w.partition()) {
                std::collections::hash_map::Entry::Occupied(e) => {
                    if *e.get() != c {
                        return false;
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        true
    }

    /// The relation of negated tuples: `-R(x) = R(-x)`.
    pub fn reversed(&self) -> ValuedRelation {
        ValuedRelation::from_fn(self.name.clone(), self.arity, |w| self.cost(&w.reversed()).clone())
            .expect("arity already checked")
    }

    /// Order types with cost 0 (the members of a crisp relation).
    pub fn zero_entries(&self) -> impl Iterator<Item = &WeakOrder> {
        self.entries().filter(|(_, c)| c.is_zero()).map(|(w, _)| w)
    }
}

fn check_arity(arity: usize) -> Result<()> {
    if arity == 0 {
        return Err(Error::Empty("arity"));
    }
    if arity > MAX_SPACE_ARITY {
        return Err(Error::capacity("table arity", arity, MAX_SPACE_ARITY));
    }
    Ok(())
}

/// Target of an atomic expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AtomTarget {
    Named(String),
    /// Crisp equality `(=)₀^∞`.
    Eq,
    /// The empty unary relation `(∅)₀^∞`.
    Empty,
}

impl AtomTarget {
    /// `eq` and `empty` denote the builtins, anything else a named relation.
    pub fn parse(name: &str) -> AtomTarget {
        match name {
            "eq" => AtomTarget::Eq,
            "empty" => AtomTarget::Empty,
            other => AtomTarget::Named(other.to_string()),
        }
    }

    pub fn label(&self) -> &str {
        match self {
            AtomTarget::Named(n) => n,
            AtomTarget::Eq => "eq",
            AtomTarget::Empty => "empty",
        }
    }
}

/// An atom over numbered variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub target: AtomTarget,
    pub args: Vec<usize>,
}

impl Atom {
    pub fn new(target: AtomTarget, args: Vec<usize>) -> Atom {
        Atom { target, args }
    }

    pub fn named(name: &str, args: Vec<usize>) -> Atom {
        Atom::new(AtomTarget::parse(name), args)
    }
}

pub fn builtin_eq() -> &'static ValuedRelation {
    static EQ: OnceLock<ValuedRelation> = OnceLock::new();
    EQ.get_or_init(|| ValuedRelation::crisp_from_fn("eq", 2, |w| w.is_constant()).unwrap())
}

pub fn builtin_empty() -> &'static ValuedRelation {
    static EMPTY: OnceLock<ValuedRelation> = OnceLock::new();
    EMPTY.get_or_init(|| ValuedRelation::constant("empty", 1, Cost::Infinite).unwrap())
}

/// A finite collection of named valued relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuedStructure {
    relations: IndexMap<String, ValuedRelation>,
    equality_invariant: bool,
    essentially_crisp: bool,
}

impl ValuedStructure {
    pub fn new(relations: impl IntoIterator<Item = ValuedRelation>) -> Result<ValuedStructure> {
        let mut map = IndexMap::new();
        for r in relations {
            if matches!(r.name(), "eq" | "empty") {
                return Err(Error::Reserved(r.name().to_string()));
            }
            if map.contains_key(r.name()) {
                return Err(Error::Duplicate(r.name().to_string()));
            }
            map.insert(r.name().to_string(), r);
        }
        let equality_invariant = map.values().all(ValuedRelation::is_equality_invariant);
        let essentially_crisp = map.values().all(|r| r.finite_values().len() <= 1);
        Ok(ValuedStructure {
            relations: map,
            equality_invariant,
            essentially_crisp,
        })
    }

    pub fn relations(&self) -> impl Iterator<Item = &ValuedRelation> {
        self.relations.values()
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&ValuedRelation> {
        self.relations.get(name)
    }

    pub fn max_arity(&self) -> usize {
        self.relations().map(ValuedRelation::arity).max().unwrap_or(0)
    }

    /// Every relation depends only on its equality pattern.
    pub fn is_equality_invariant(&self) -> bool {
        self.equality_invariant
    }

    /// Every relation attains at most one finite value.
    pub fn is_essentially_crisp(&self) -> bool {
        self.essentially_crisp
    }

    pub fn resolve(&self, target: &AtomTarget) -> Result<Cow<'_, ValuedRelation>> {
        Ok(match target {
            AtomTarget::Named(n) => Cow::Borrowed(
                self.relations
                    .get(n)
                    .ok_or_else(|| Error::UnknownRelation(n.clone()))?,
            ),
            AtomTarget::Eq => Cow::Borrowed(builtin_eq()),
            AtomTarget::Empty => Cow::Borrowed(builtin_empty()),
        })
    }

    /// Resolves a target and checks the argument count.
    pub fn resolve_atom(&self, target: &AtomTarget, args: usize) -> Result<&ValuedRelation> {
        let r: &ValuedRelation = match target {
            AtomTarget::Named(n) => self
                .relations
                .get(n)
                .ok_or_else(|| Error::UnknownRelation(n.clone()))?,
            AtomTarget::Eq => builtin_eq(),
            AtomTarget::Empty => builtin_empty(),
        };
        if r.arity() != args {
            return Err(Error::ArityMismatch {
                relation: target.label().to_string(),
                expected: r.arity(),
                found: args,
            });
        }
        Ok(r)
    }
}

/// A structure whose relations only take the costs 0 and `∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrispStructure {
    relations: Vec<ValuedRelation>,
}

impl CrispStructure {
    pub fn new(relations: Vec<ValuedRelation>) -> Result<CrispStructure> {
        if let Some(r) = relations.iter().find(|r| !r.is_crisp()) {
            return Err(Error::Precondition(format!("relation `{}` is not crisp", r.name())));
        }
        Ok(CrispStructure { relations })
    }

    pub fn relations(&self) -> &[ValuedRelation] {
        &self.relations
    }

    pub fn into_structure(self) -> Result<ValuedStructure> {
        ValuedStructure::new(self.relations)
    }
}
