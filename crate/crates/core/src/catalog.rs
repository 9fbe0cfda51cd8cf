//! Named relations: the hard crisp relations that mark NP-completeness, the
//! two-point valued relations `R_{α,β,γ}`, and their common special cases.

use crate::cost::Cost;
use crate::error::{Error, Result};
use crate::order::WeakOrder;
use crate::relation::ValuedRelation;

/// `R_{α,β,γ}(x, y)`: `α` if `x = y`, `β` if `x < y`, `γ` if `x > y`.
pub fn rabg(alpha: Cost, beta: Cost, gamma: Cost) -> ValuedRelation {
    let name = format!("Rabg({alpha},{beta},{gamma})");
    ValuedRelation::from_fn(name, 2, |w| match w.ranks() {
        [a, b] if a == b => alpha.clone(),
        [a, b] if a < b => beta.clone(),
        _ => gamma.clone(),
    })
    .expect("binary")
}

/// Crisp relation whose members are the listed strict chains. Each chain
/// lists positions from smallest to largest value.
fn chains(name: &str, arity: usize, members: &[&[usize]]) -> ValuedRelation {
    let targets: Vec<WeakOrder> = members
        .iter()
        .map(|chain| {
            let mut ranks = vec![0u32; arity];
            for (rank, &pos) in chain.iter().enumerate() {
                ranks[pos] = rank as u32;
            }
            WeakOrder::new(ranks).expect("chain is a permutation")
        })
        .collect();
    ValuedRelation::crisp_from_fn(name, arity, |w| targets.contains(w)).expect("small arity")
}

/// Looks up a relation by name.
///
/// Known names: `Betw`, `Cyc`, `Sep`, `T3`, `negT3`, `Dis`, `Rmix`, `eq01`,
/// `eqInf`, `neq01`, `neqInf`, `lt01`, `ltInf`, `leq01`, and
/// `Rabg(α,β,γ)` with each parameter a rational or `inf`.
pub fn named_relation(name: &str) -> Result<ValuedRelation> {
    let c = Cost::int;
    let inf = Cost::Infinite;
    let rel = match name {
        "Betw" => chains("Betw", 3, &[&[0, 1, 2], &[2, 1, 0]]),
        "Cyc" => chains("Cyc", 3, &[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1]]),
        // positions: x1 = 0, y1 = 1, x2 = 2, y2 = 3
        "Sep" => chains(
            "Sep",
            4,
            &[
                &[0, 2, 1, 3],
                &[0, 3, 1, 2],
                &[1, 2, 0, 3],
                &[1, 3, 0, 2],
                &[2, 0, 3, 1],
                &[2, 1, 3, 0],
                &[3, 0, 2, 1],
                &[3, 1, 2, 0],
            ],
        ),
        "T3" => ValuedRelation::crisp_from_fn("T3", 3, |w| {
            let [x, y, z] = three(w);
            (x == y && x < z) || (x == z && x < y)
        })?,
        "negT3" => named_relation("T3")?.reversed().renamed("negT3"),
        "Dis" => ValuedRelation::crisp_from_fn("Dis", 3, |w| {
            let [x, y, z] = three(w);
            (x == y && y != z) || (x != y && y == z)
        })?,
        "Rmix" => ValuedRelation::crisp_from_fn("Rmix", 3, |w| {
            let [x, y, z] = three(w);
            x == y || (z < x && z < y)
        })?,
        "eq01" => rabg(c(0), c(1), c(1)).renamed("eq01"),
        "eqInf" => rabg(c(0), inf.clone(), inf).renamed("eqInf"),
        "neq01" => rabg(c(1), c(0), c(0)).renamed("neq01"),
        "neqInf" => rabg(inf, c(0), c(0)).renamed("neqInf"),
        "lt01" => rabg(c(1), c(0), c(1)).renamed("lt01"),
        "ltInf" => rabg(inf.clone(), c(0), inf).renamed("ltInf"),
        "leq01" => rabg(c(0), c(0), c(1)).renamed("leq01"),
        other => return parse_rabg(other),
    };
    Ok(rel)
}

fn three(w: &WeakOrder) -> [u8; 3] {
    let r = w.ranks();
    [r[0], r[1], r[2]]
}

fn parse_rabg(name: &str) -> Result<ValuedRelation> {
    let unknown = || Error::UnknownRelation(name.to_string());
    let inner = name
        .strip_prefix("Rabg(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(unknown)?;
    let params: Vec<&str> = inner.split(',').collect();
    if params.len() != 3 {
        return Err(unknown());
    }
    let mut costs = params.iter().map(|p| p.parse::<Cost>());
    let (a, b, g) = (
        costs.next().unwrap()?,
        costs.next().unwrap()?,
        costs.next().unwrap()?,
    );
    Ok(rabg(a, b, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(r: &[u32]) -> WeakOrder {
        WeakOrder::new(r.to_vec()).unwrap()
    }

    #[test]
    fn cyc_members() {
        let cyc = named_relation("Cyc").unwrap();
        let members: Vec<_> = cyc.zero_entries().cloned().collect();
        assert_eq!(members.len(), 3);
        for m in [w(&[0, 1, 2]), w(&[1, 2, 0]), w(&[2, 0, 1])] {
            assert!(members.contains(&m));
        }
        assert!(cyc.cost(&w(&[0, 2, 1])).is_infinite());
    }

    #[test]
    fn rabg_special_cases() {
        assert_eq!(
            named_relation("Rabg(0,1,1)").unwrap().costs(),
            named_relation("eq01").unwrap().costs()
        );
        assert_eq!(
            named_relation("Rabg(1,0,0)").unwrap().costs(),
            named_relation("neq01").unwrap().costs()
        );
        assert_eq!(
            named_relation("Rabg(1,0,1)").unwrap().costs(),
            named_relation("lt01").unwrap().costs()
        );
        assert_eq!(
            named_relation("Rabg(0,0,1)").unwrap().costs(),
            named_relation("leq01").unwrap().costs()
        );
        assert_eq!(
            named_relation("Rabg(1/2, 0, inf)").unwrap().cost(&w(&[1, 0])),
            &Cost::Infinite
        );
    }

    #[test]
    fn sep_has_eight_members() {
        let sep = named_relation("Sep").unwrap();
        assert_eq!(sep.costs().len(), 75);
        let members: Vec<_> = sep.zero_entries().collect();
        assert_eq!(members.len(), 8);
        assert!(members.iter().all(|m| m.is_injective()));
        // x1 < x2 < y1 < y2
        assert!(sep.cost(&w(&[0, 2, 1, 3])).is_zero());
    }

    #[test]
    fn other_hard_relations() {
        let t3 = named_relation("T3").unwrap();
        assert!(t3.cost(&w(&[0, 0, 1])).is_zero());
        assert!(t3.cost(&w(&[0, 1, 0])).is_zero());
        assert!(t3.cost(&w(&[1, 1, 0])).is_infinite());
        let neg = named_relation("negT3").unwrap();
        assert!(neg.cost(&w(&[1, 1, 0])).is_zero());
        let dis = named_relation("Dis").unwrap();
        assert!(dis.cost(&w(&[0, 0, 1])).is_zero());
        assert!(dis.cost(&w(&[1, 0, 0])).is_zero());
        assert!(dis.cost(&w(&[0, 1, 0])).is_infinite());
        assert!(dis.cost(&w(&[0, 0, 0])).is_infinite());
        let mix = named_relation("Rmix").unwrap();
        assert!(mix.cost(&w(&[0, 0, 1])).is_zero());
        assert!(mix.cost(&w(&[1, 2, 0])).is_zero());
        assert!(mix.cost(&w(&[0, 1, 2])).is_infinite());
        let betw = named_relation("Betw").unwrap();
        assert_eq!(betw.zero_entries().count(), 2);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(named_relation("Foo"), Err(Error::UnknownRelation(_))));
        assert!(named_relation("Rabg(1,2)").is_err());
    }
}
