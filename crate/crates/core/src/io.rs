//! Text formats for structures, instances and expressions.
//!
//! All three are TOML documents. Costs are written as strings (`"3/2"`,
//! `"-1"`, `"inf"`); bare integers are accepted too.
//!
//! ```toml
//! name = "feedback arc set"
//!
//! [[relation]]
//! name = "lt01"
//! arity = 2
//! default = "1"
//! entries = [{ ranks = [0, 1], cost = "0" }]
//! ```
//!
//! An instance lists atoms over named variables, optionally with the
//! variable order and a threshold:
//!
//! ```toml
//! variables = ["a", "b", "c"]
//! threshold = "0"
//! atoms = [
//!   { rel = "lt01", vars = ["a", "b"] },
//!   { rel = "lt01", vars = ["b", "c"] },
//! ]
//! ```
//!
//! An expression file has `free`, `bound` and `atoms` in the same style.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;

use crate::clone::Expression;
use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::order::{space, WeakOrder};
use crate::relation::{Atom, AtomTarget, ValuedRelation, ValuedStructure};
use crate::solve::Instance;

#[derive(Deserialize)]
#[serde(untagged)]
enum CostToken {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureDoc {
    #[serde(default)]
    name: String,
    #[serde(default)]
    relation: Vec<RelationDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationDoc {
    name: Spanned<String>,
    arity: Spanned<usize>,
    default: Option<Spanned<CostToken>>,
    #[serde(default)]
    entries: Vec<EntryDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    ranks: Spanned<Vec<u32>>,
    cost: Spanned<CostToken>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AtomDoc {
    rel: Spanned<String>,
    vars: Spanned<Vec<Spanned<String>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    variables: Option<Vec<Spanned<String>>>,
    threshold: Option<Spanned<CostToken>>,
    #[serde(default)]
    atoms: Vec<AtomDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpressionDoc {
    free: Vec<String>,
    #[serde(default)]
    bound: Vec<String>,
    #[serde(default)]
    atoms: Vec<AtomDoc>,
}

/// 1-based line and column (in characters) of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn at(text: &str, span: Range<usize>, message: impl Into<String>) -> Error {
    let (line, column) = line_col(text, span.start);
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn decode<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| {
        let span = e.span().unwrap_or(0..0);
        at(text, span, e.message().trim())
    })
}

fn cost_of(text: &str, token: &Spanned<CostToken>) -> Result<Cost> {
    match token.get_ref() {
        CostToken::Int(n) => Ok(Cost::int(*n)),
        CostToken::Text(s) => s
            .parse()
            .map_err(|_| at(text, token.span(), format!("invalid cost `{s}`"))),
    }
}

/// A parsed structure file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureFile {
    pub name: String,
    pub structure: ValuedStructure,
}

pub fn parse_structure(text: &str) -> Result<StructureFile> {
    let doc: StructureDoc = decode(text)?;
    let mut rels = Vec::new();
    let mut names = HashSet::new();
    for r in &doc.relation {
        let name = r.name.get_ref();
        if matches!(name.as_str(), "eq" | "empty") {
            return Err(at(text, r.name.span(), format!("`{name}` is reserved for a builtin relation")));
        }
        if !names.insert(name.clone()) {
            return Err(at(text, r.name.span(), format!("duplicate relation name `{name}`")));
        }
        let arity = *r.arity.get_ref();
        if arity == 0 || arity > crate::order::MAX_SPACE_ARITY {
            return Err(at(
                text,
                r.arity.span(),
                format!("arity must be between 1 and {}", crate::order::MAX_SPACE_ARITY),
            ));
        }
        let sp = space(arity);
        let mut costs: Vec<Option<Cost>> = vec![None; sp.len()];
        for e in &r.entries {
            let ranks = e.ranks.get_ref();
            if ranks.len() != arity {
                return Err(at(
                    text,
                    e.ranks.span(),
                    format!("ranks have length {}, relation `{name}` has arity {arity}", ranks.len()),
                ));
            }
            let w = WeakOrder::new(ranks.clone()).map_err(|err| at(text, e.ranks.span(), err.to_string()))?;
            let slot = &mut costs[sp.index_of(w.ranks())];
            if slot.is_some() {
                return Err(at(text, e.ranks.span(), format!("duplicate entry for order type {w}")));
            }
            *slot = Some(cost_of(text, &e.cost)?);
        }
        let default = r.default.as_ref().map(|d| cost_of(text, d)).transpose()?;
        let costs = costs
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.or_else(|| default.clone()).ok_or_else(|| {
                    at(
                        text,
                        r.name.span(),
                        format!("relation `{name}` has no entry for {} and no default", sp.get(i)),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rels.push(ValuedRelation::from_costs(name.clone(), arity, costs)?);
    }
    Ok(StructureFile {
        name: doc.name,
        structure: ValuedStructure::new(rels)?,
    })
}

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn write_cost(c: &Cost) -> String {
    quote(&c.to_string())
}

/// The most frequent cost of a table, ties broken towards the smaller cost.
fn default_cost(rel: &ValuedRelation) -> Cost {
    let mut counts: BTreeMap<&Cost, usize> = BTreeMap::new();
    for c in rel.costs() {
        *counts.entry(c).or_default() += 1;
    }
    let best = counts.values().copied().max().unwrap_or(0);
    counts
        .into_iter()
        .find(|&(_, n)| n == best)
        .map(|(c, _)| c.clone())
        .unwrap_or_else(Cost::zero)
}

pub fn serialize_relation(rel: &ValuedRelation) -> String {
    let default = default_cost(rel);
    let mut out = String::new();
    writeln!(out, "[[relation]]").unwrap();
    writeln!(out, "name = {}", quote(rel.name())).unwrap();
    writeln!(out, "arity = {}", rel.arity()).unwrap();
    writeln!(out, "default = {}", write_cost(&default)).unwrap();
    let entries: Vec<String> = rel
        .entries()
        .filter(|(_, c)| **c != default)
        .map(|(w, c)| format!("  {{ ranks = {:?}, cost = {} }},", w.ranks(), write_cost(c)))
        .collect();
    if entries.is_empty() {
        writeln!(out, "entries = []").unwrap();
    } else {
        writeln!(out, "entries = [\n{}\n]", entries.join("\n")).unwrap();
    }
    out
}

pub fn serialize_structure(name: &str, s: &ValuedStructure) -> String {
    let mut out = format!("name = {}\n", quote(name));
    for r in s.relations() {
        out.push('\n');
        out.push_str(&serialize_relation(r));
    }
    out
}

fn parse_atoms(text: &str, atoms: &[AtomDoc], vars: &mut Vec<String>, declared: bool) -> Result<Vec<(AtomTarget, Vec<usize>)>> {
    let mut out = Vec::new();
    for a in atoms {
        let mut args = Vec::new();
        for v in a.vars.get_ref() {
            let name = v.get_ref();
            let idx = match vars.iter().position(|x| x == name) {
                Some(i) => i,
                None if declared => {
                    return Err(at(text, v.span(), format!("undeclared variable `{name}`")));
                }
                None => {
                    vars.push(name.clone());
                    vars.len() - 1
                }
            };
            args.push(idx);
        }
        out.push((AtomTarget::parse(a.rel.get_ref()), args));
    }
    Ok(out)
}

/// Parses an instance and checks every atom against `s`.
pub fn parse_instance(text: &str, s: &ValuedStructure) -> Result<Instance> {
    let doc: InstanceDoc = decode(text)?;
    let declared = doc.variables.is_some();
    let mut vars: Vec<String> = Vec::new();
    for v in doc.variables.iter().flatten() {
        if vars.contains(v.get_ref()) {
            return Err(at(text, v.span(), format!("duplicate variable `{}`", v.get_ref())));
        }
        vars.push(v.get_ref().clone());
    }
    let atoms = parse_atoms(text, &doc.atoms, &mut vars, declared)?;
    for ((target, args), doc) in atoms.iter().zip(&doc.atoms) {
        s.resolve_atom(target, args.len())
            .map_err(|e| at(text, doc.rel.span(), e.to_string()))?;
    }
    if vars.is_empty() {
        return Err(at(text, 0..0, "an instance needs at least one variable"));
    }
    let threshold = doc.threshold.as_ref().map(|t| cost_of(text, t)).transpose()?;
    if let (Some(t), Some(u)) = (&doc.threshold, &threshold) {
        if u.is_infinite() {
            return Err(at(text, t.span(), "threshold must be finite"));
        }
    }
    Instance::new(
        vars,
        atoms.into_iter().map(|(t, a)| Atom::new(t, a)).collect(),
        threshold,
    )
}

pub fn serialize_instance(inst: &Instance) -> String {
    let vars = inst.variables();
    let list = |idx: &[usize]| {
        idx.iter()
            .map(|&i| quote(&vars[i]))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let mut out = format!(
        "variables = [{}]\n",
        vars.iter().map(|v| quote(v)).collect::<Vec<_>>().join(", ")
    );
    if let Some(u) = inst.threshold() {
        writeln!(out, "threshold = {}", write_cost(u)).unwrap();
    }
    if inst.atoms().is_empty() {
        out.push_str("atoms = []\n");
    } else {
        out.push_str("atoms = [\n");
        for a in inst.atoms() {
            writeln!(out, "  {{ rel = {}, vars = [{}] }},", quote(a.target.label()), list(&a.args)).unwrap();
        }
        out.push_str("]\n");
    }
    out
}

pub fn parse_expression(text: &str) -> Result<Expression> {
    let doc: ExpressionDoc = decode(text)?;
    let atoms = doc
        .atoms
        .iter()
        .map(|a| {
            (
                AtomTarget::parse(a.rel.get_ref()),
                a.vars.get_ref().iter().map(|v| v.get_ref().clone()).collect(),
            )
        })
        .collect();
    Expression::new(doc.free, doc.bound, atoms)
}
