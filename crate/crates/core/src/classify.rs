//! Deciding whether a temporal valued structure has a polynomial-time VCSP.

use std::fmt;

use crate::clone::{build_hat, feas_structure};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::ops::{essentially_crisp, first_failure, CanonicalOp};
use crate::relation::{ValuedRelation, ValuedStructure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Complexity {
    P,
    NpComplete,
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Complexity::P => "P",
            Complexity::NpComplete => "NP-complete",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    Const,
    Lex,
    EssentiallyCrisp,
    Hard,
    EqConst,
    EqInj,
    EqHard,
}

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::Const => "constCase",
            CaseTag::Lex => "lexCase",
            CaseTag::EssentiallyCrisp => "essentiallyCrispCase",
            CaseTag::Hard => "hardCase",
            CaseTag::EqConst => "eqConstCase",
            CaseTag::EqInj => "eqInjCase",
            CaseTag::EqHard => "eqHardCase",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub complexity: Complexity,
    pub case_tag: CaseTag,
    /// The operation preserving the crisp companion structure, for the lex
    /// and essentially crisp cases.
    pub witness_op: Option<CanonicalOp>,
    pub note: String,
}

const CONDITIONAL: &str = "the P and NP-complete cases exclude each other only if P != NP";

impl Verdict {
    fn new(case_tag: CaseTag, witness_op: Option<CanonicalOp>, note: &str) -> Verdict {
        let complexity = match case_tag {
            CaseTag::Hard | CaseTag::EqHard => Complexity::NpComplete,
            _ => Complexity::P,
        };
        Verdict {
            complexity,
            case_tag,
            witness_op,
            note: format!("{note}; {CONDITIONAL}"),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.complexity, self.case_tag)?;
        if let Some(op) = self.witness_op {
            write!(f, " witness {op}")?;
        }
        Ok(())
    }
}

fn improved_by_all(op: CanonicalOp, s: &ValuedStructure, caps: &Caps) -> Result<bool> {
    Ok(first_failure(op, s.relations(), false, caps)?.is_none())
}

/// First of the eight witness operations preserving every relation.
fn preserving_op(rels: &[ValuedRelation], caps: &Caps) -> Result<Option<CanonicalOp>> {
    for op in CanonicalOp::WITNESSES {
        if first_failure(op, rels, true, caps)?.is_none() {
            return Ok(Some(op));
        }
    }
    Ok(None)
}

fn check_arity(s: &ValuedStructure, caps: &Caps) -> Result<()> {
    match s.relations().find(|r| r.arity() > caps.arity) {
        Some(r) => Err(Error::capacity(format!("arity of `{}`", r.name()), r.arity(), caps.arity)),
        None => Ok(()),
    }
}

/// Classification of an arbitrary temporal valued structure.
///
/// Cases are tried in order: constant improvement; essentially crisp with a
/// tractable feasibility structure; lex improvement with a tractable hat
/// structure; otherwise hard. The essentially crisp case comes before the lex
/// case so that crisp tractable structures are reported as such even when
/// lex happens to preserve them.
pub fn classify_temporal(s: &ValuedStructure, caps: &Caps) -> Result<Verdict> {
    check_arity(s, caps)?;
    if improved_by_all(CanonicalOp::Const0, s, caps)? {
        return Ok(Verdict::new(CaseTag::Const, None, "const0 improves every relation"));
    }
    if essentially_crisp(s.relations()) {
        if let Some(op) = preserving_op(feas_structure(s).relations(), caps)? {
            return Ok(Verdict::new(
                CaseTag::EssentiallyCrisp,
                Some(op),
                "every relation has one finite value and the feasibility structure is tractable",
            ));
        }
    }
    if improved_by_all(CanonicalOp::Lex, s, caps)? {
        if let Some(op) = preserving_op(build_hat(s).relations(), caps)? {
            return Ok(Verdict::new(
                CaseTag::Lex,
                Some(op),
                "lex improves every relation and the hat structure is tractable",
            ));
        }
    }
    Ok(Verdict::new(CaseTag::Hard, None, "no tractable case applies"))
}

/// Classification of an equality-invariant structure.
pub fn classify_equality(s: &ValuedStructure, caps: &Caps) -> Result<Verdict> {
    check_arity(s, caps)?;
    if let Some(r) = s.relations().find(|r| !r.is_equality_invariant()) {
        return Err(Error::Precondition(format!(
            "`{}` is not equality-invariant",
            r.name()
        )));
    }
    if improved_by_all(CanonicalOp::Const0, s, caps)? {
        return Ok(Verdict::new(CaseTag::EqConst, None, "const0 improves every relation"));
    }
    if improved_by_all(CanonicalOp::Inj, s, caps)? {
        return Ok(Verdict::new(CaseTag::EqInj, None, "inj improves every relation"));
    }
    Ok(Verdict::new(CaseTag::EqHard, None, "neither const0 nor inj improves every relation"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named_relation;
    use crate::ops::preserves;

    fn structure(names: &[&str]) -> ValuedStructure {
        ValuedStructure::new(names.iter().map(|n| named_relation(n).unwrap())).unwrap()
    }

    fn temporal(names: &[&str]) -> Verdict {
        classify_temporal(&structure(names), &Caps::default()).unwrap()
    }

    fn equality(names: &[&str]) -> Verdict {
        classify_equality(&structure(names), &Caps::default()).unwrap()
    }

    #[test]
    fn temporal_examples() {
        assert_eq!(temporal(&["lt01"]).case_tag, CaseTag::Hard);
        assert_eq!(temporal(&["leq01"]).case_tag, CaseTag::Const);
        assert_eq!(temporal(&["eq01", "neqInf"]).complexity, Complexity::NpComplete);
        let v = temporal(&["neq01"]);
        assert_eq!((v.case_tag, v.witness_op), (CaseTag::Lex, Some(CanonicalOp::Mi)));
        let v = temporal(&["ltInf"]);
        assert_eq!(
            (v.case_tag, v.witness_op),
            (CaseTag::EssentiallyCrisp, Some(CanonicalOp::Min))
        );
        assert_eq!(temporal(&["Dis"]).case_tag, CaseTag::Hard);
        assert_eq!(temporal(&["Betw"]).case_tag, CaseTag::Hard);
    }

    #[test]
    fn equality_examples() {
        assert_eq!(equality(&["eq01"]).case_tag, CaseTag::EqConst);
        assert_eq!(equality(&["neq01", "eqInf"]).case_tag, CaseTag::EqInj);
        assert_eq!(equality(&["Dis"]).case_tag, CaseTag::EqHard);
        assert!(classify_equality(&structure(&["lt01"]), &Caps::default()).is_err());
    }

    #[test]
    fn witness_is_sound() {
        for names in [&["neq01"][..], &["ltInf"], &["Cyc"], &["T3"], &["Rmix"], &["leq01", "ltInf"]] {
            let s = structure(names);
            let v = classify_temporal(&s, &Caps::default()).unwrap();
            assert_eq!(
                v.witness_op.is_some(),
                matches!(v.case_tag, CaseTag::Lex | CaseTag::EssentiallyCrisp)
            );
            if let Some(op) = v.witness_op {
                let crisp = if v.case_tag == CaseTag::Lex { build_hat(&s) } else { feas_structure(&s) };
                for r in crisp.relations() {
                    assert!(preserves(op, r, &Caps::default()).unwrap().holds());
                }
            }
        }
    }

    #[test]
    fn hard_crisp_relations() {
        for name in ["Betw", "Cyc", "Sep", "T3", "negT3", "Dis"] {
            assert_eq!(temporal(&[name]).case_tag, CaseTag::Hard, "{name}");
        }
        // Rmix is preserved by a witness operation but not by const0.
        assert_eq!(temporal(&["Rmix"]).complexity, Complexity::P);
    }

    #[test]
    fn arity_cap() {
        let mut caps = Caps::default();
        caps.joint_arity = 3;
        assert!(classify_temporal(&structure(&["Sep"]), &caps).unwrap_err().is_capacity());
    }
}
