//! Substitutions and most general unifiers.
//!
//! Substitutions are kept in solved form: no bound variable appears in any
//! range term, so `apply` is idempotent.

use std::collections::BTreeMap;
use std::fmt;

use crate::syntax::{Atom, Clause, FOTerm, Literal};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<String, FOTerm>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, var: &str) -> Option<&FOTerm> {
        self.map.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &FOTerm)> {
        self.map.iter()
    }

    /// Adds `var -> term`, first substituting `term` for `var` in all
    /// existing range terms. Keeps the solved form, assuming `term` does not
    /// contain `var` (the unifier's occurs check guarantees that).
    pub(crate) fn bind(&mut self, var: String, term: FOTerm) {
        for value in self.map.values_mut() {
            *value = replace_var(value, &var, &term);
        }
        if term != FOTerm::Var(var.clone()) {
            self.map.insert(var, term);
        }
    }

    pub fn apply(&self, term: &FOTerm) -> FOTerm {
        match term {
            FOTerm::Var(v) => self.map.get(v).cloned().unwrap_or_else(|| term.clone()),
            FOTerm::Const(_) => term.clone(),
            FOTerm::Func(f, args) => {
                FOTerm::Func(f.clone(), args.iter().map(|a| self.apply(a)).collect())
            }
        }
    }

    pub fn apply_atom(&self, atom: &Atom) -> Atom {
        Atom {
            pred: atom.pred.clone(),
            args: atom.args.iter().map(|a| self.apply(a)).collect(),
        }
    }

    /// Annotations carry no variables, so only the atom changes.
    pub fn apply_literal(&self, lit: &Literal) -> Literal {
        Literal {
            atom: self.apply_atom(&lit.atom),
            annotation: lit.annotation.clone(),
        }
    }

    /// Applies to every literal; duplicates created by the substitution
    /// collapse through `Clause::new`.
    pub fn apply_clause(&self, clause: &Clause) -> Clause {
        Clause::new(clause.literals().iter().map(|l| self.apply_literal(l)).collect())
    }

    /// Sequencing: `a.compose(&b)` applies `a` first, then `b`.
    pub fn compose(&self, after: &Substitution) -> Substitution {
        let mut map = BTreeMap::new();
        for (v, t) in &self.map {
            let t = after.apply(t);
            if t != FOTerm::Var(v.clone()) {
                map.insert(v.clone(), t);
            }
        }
        for (v, t) in &after.map {
            map.entry(v.clone()).or_insert_with(|| t.clone());
        }
        Substitution { map }
    }
}

impl fmt::Display for Substitution {
    /// `[a/?y, f(a)/?u]`: each binding as term-over-variable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (v, t)) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}/?{}", t, v)?;
        }
        write!(f, "]")
    }
}

fn replace_var(term: &FOTerm, var: &str, with: &FOTerm) -> FOTerm {
    match term {
        FOTerm::Var(v) if v == var => with.clone(),
        FOTerm::Var(_) | FOTerm::Const(_) => term.clone(),
        FOTerm::Func(f, args) => FOTerm::Func(
            f.clone(),
            args.iter().map(|a| replace_var(a, var, with)).collect(),
        ),
    }
}

fn occurs(var: &str, term: &FOTerm) -> bool {
    match term {
        FOTerm::Var(v) => v == var,
        FOTerm::Const(_) => false,
        FOTerm::Func(_, args) => args.iter().any(|a| occurs(var, a)),
    }
}

fn solve(mut work: Vec<(FOTerm, FOTerm)>) -> Option<Substitution> {
    let mut subst = Substitution::new();
    while let Some((s, t)) = work.pop() {
        let s = subst.apply(&s);
        let t = subst.apply(&t);
        match (s, t) {
            (FOTerm::Var(x), FOTerm::Var(y)) if x == y => {}
            (FOTerm::Var(x), t) => {
                if occurs(&x, &t) {
                    return None;
                }
                subst.bind(x, t);
            }
            (s, FOTerm::Var(y)) => {
                if occurs(&y, &s) {
                    return None;
                }
                subst.bind(y, s);
            }
            (FOTerm::Const(a), FOTerm::Const(b)) => {
                if a != b {
                    return None;
                }
            }
            (FOTerm::Func(f, fa), FOTerm::Func(g, ga)) => {
                if f != g || fa.len() != ga.len() {
                    return None;
                }
                work.extend(fa.into_iter().zip(ga));
            }
            _ => return None,
        }
    }
    Some(subst)
}

/// Most general unifier of two terms, if any.
pub fn mgu_terms(a: &FOTerm, b: &FOTerm) -> Option<Substitution> {
    solve(vec![(a.clone(), b.clone())])
}

/// Most general unifier of two atoms: same predicate, arguments unified
/// pairwise.
pub fn mgu_atoms(a: &Atom, b: &Atom) -> Option<Substitution> {
    if a.pred != b.pred || a.args.len() != b.args.len() {
        return None;
    }
    solve(a.args.iter().cloned().zip(b.args.iter().cloned()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn var(v: &str) -> FOTerm {
        FOTerm::Var(v.into())
    }
    fn cst(c: &str) -> FOTerm {
        FOTerm::Const(c.into())
    }
    fn f(name: &str, args: Vec<FOTerm>) -> FOTerm {
        FOTerm::Func(name.into(), args)
    }

    #[test]
    fn unifies_basic_cases() {
        let s = mgu_terms(&var("x"), &cst("a")).unwrap();
        assert_eq!(s.apply(&var("x")), cst("a"));

        let s = mgu_terms(
            &f("g", vec![var("x"), f("h", vec![var("x")])]),
            &f("g", vec![cst("a"), var("y")]),
        )
        .unwrap();
        assert_eq!(s.apply(&var("y")), f("h", vec![cst("a")]));

        assert!(mgu_terms(&cst("a"), &cst("b")).is_none());
        assert!(mgu_terms(&f("g", vec![var("x")]), &f("h", vec![var("x")])).is_none());
    }

    #[test]
    fn occurs_check_rejects_cyclic_bindings() {
        assert!(mgu_terms(&var("x"), &f("g", vec![var("x")])).is_none());
        assert!(mgu_terms(
            &f("g", vec![var("x"), var("x")]),
            &f("g", vec![var("y"), f("h", vec![var("y")])]),
        )
        .is_none());
    }

    #[test]
    fn atoms_need_matching_predicates() {
        let a = Atom { pred: "P".into(), args: vec![var("x")] };
        let b = Atom { pred: "Q".into(), args: vec![var("x")] };
        assert!(mgu_atoms(&a, &b).is_none());
        let b = Atom { pred: "P".into(), args: vec![cst("a")] };
        let s = mgu_atoms(&a, &b).unwrap();
        assert_eq!(s.apply_atom(&a), b);
    }

    #[test]
    fn compose_sequences_left_to_right() {
        let mut a = Substitution::new();
        a.bind("x".into(), f("g", vec![var("y")]));
        let mut b = Substitution::new();
        b.bind("y".into(), cst("c"));
        let ab = a.compose(&b);
        assert_eq!(ab.apply(&var("x")), f("g", vec![cst("c")]));
        assert_eq!(ab.apply(&var("y")), cst("c"));
        assert_eq!(b.apply(&a.apply(&var("x"))), ab.apply(&var("x")));
    }

    #[test]
    fn display_shows_term_over_variable() {
        let mut s = Substitution::new();
        s.bind("u".into(), f("f", vec![cst("a")]));
        assert_eq!(s.to_string(), "[f(a)/?u]");
        s.bind("y".into(), cst("a"));
        assert_eq!(s.to_string(), "[f(a)/?u, a/?y]");
    }

    fn arb_term() -> impl Strategy<Value = FOTerm> {
        let leaf = prop_oneof![
            prop::sample::select(vec!["x", "y", "z", "u"]).prop_map(|v| var(v)),
            prop::sample::select(vec!["a", "b", "c"]).prop_map(|c| cst(c)),
        ];
        leaf.prop_recursive(3, 24, 3, |inner| {
            (
                prop::sample::select(vec!["g", "h"]),
                prop::collection::vec(inner, 1..3),
            )
                .prop_map(|(name, args)| f(name, args))
        })
    }

    proptest! {
        #[test]
        fn mgu_equalizes_and_is_idempotent(a in arb_term(), b in arb_term()) {
            if let Some(s) = mgu_terms(&a, &b) {
                let sa = s.apply(&a);
                prop_assert_eq!(&sa, &s.apply(&b));
                prop_assert_eq!(s.apply(&sa), sa);
            }
        }

        #[test]
        fn renamed_copies_always_unify(a in arb_term()) {
            let mut renaming = Substitution::new();
            for v in ["x", "y", "z", "u"] {
                renaming.bind(v.into(), var(&format!("r_{}", v)));
            }
            let b = renaming.apply(&a);
            let s = mgu_terms(&a, &b);
            prop_assert!(s.is_some());
            let s = s.unwrap();
            prop_assert_eq!(s.apply(&a), s.apply(&b));
        }
    }
}
