//! Instance generators.

use crate::catalog::named_relation;
use crate::error::{Error, Result};
use crate::relation::{Atom, ValuedStructure};
use crate::solve::Instance;

/// Minimum feedback arc set as a VCSP: one `lt01` atom per edge, so an
/// ordering of the vertices pays 1 for every edge it does not respect.
///
/// Vertices are numbered in order of first appearance. Repeated edges are
/// kept; self-loops are rejected because no ordering can satisfy them.
pub fn gen_feedback_arc_set(edges: &[(String, String)]) -> Result<(ValuedStructure, Instance)> {
    if edges.is_empty() {
        return Err(Error::Empty("edge list"));
    }
    let mut vertices: Vec<String> = Vec::new();
    let mut index = |v: &String| match vertices.iter().position(|x| x == v) {
        Some(i) => i,
        None => {
            vertices.push(v.clone());
            vertices.len() - 1
        }
    };
    let mut atoms = Vec::new();
    for (a, b) in edges {
        if a == b {
            return Err(Error::SelfLoop(a.clone()));
        }
        atoms.push(Atom::named("lt01", vec![index(a), index(b)]));
    }
    let structure = ValuedStructure::new([named_relation("lt01")?])?;
    Ok((structure, Instance::new(vertices, atoms, None)?))
}

/// Parses `a-b,b-c` into directed edges.
pub fn parse_edges(list: &str) -> Result<Vec<(String, String)>> {
    list.split(',')
        .map(str::trim)
        .filter(|e| !e.is_empty())
        .map(|e| match e.split_once('-') {
            Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => {
                Ok((a.trim().to_string(), b.trim().to_string()))
            }
            _ => Err(Error::Parse {
                line: 1,
                column: list.find(e).map_or(1, |i| list[..i].chars().count() + 1),
                message: format!("edge `{e}` is not of the form `a-b`"),
            }),
        })
        .collect()
}
