//! Formula-to-clause pipeline: negation normal form, Skolemization, and
//! distribution into conjunctive normal form.
//!
//! Negation never survives: applied to a literal it moves into the
//! annotation, `~(A:t)` becoming `A:negate(t)`. Everything downstream of
//! [`to_nnf`] therefore works with positive literals only.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{Algebra, TruthTerm};
use crate::syntax::{AnnotatedClause, Clause, FOTerm, Formula, Literal, SyntaxError};

/// Source of fresh Skolem names `sk1, sk2, ...`. One generator must span a
/// whole problem: reusing a name across formulas would conflate unrelated
/// witnesses.
#[derive(Debug, Clone)]
pub struct SkolemGen {
    next: usize,
    taken: BTreeSet<String>,
}

impl Default for SkolemGen {
    fn default() -> SkolemGen {
        SkolemGen::new()
    }
}

impl SkolemGen {
    pub fn new() -> SkolemGen {
        SkolemGen { next: 1, taken: BTreeSet::new() }
    }

    /// Marks a name as unavailable. The parser already rejects user symbols
    /// of the shape `sk<N>`, so this matters only for programmatic input.
    pub fn reserve(&mut self, name: impl Into<String>) {
        self.taken.insert(name.into());
    }

    /// Reserves every function and constant symbol of the given problem.
    pub fn reserve_problem_symbols(&mut self, clauses: &[AnnotatedClause], formulas: &[Formula]) {
        let mut grab = |lit: &Literal| {
            for arg in &lit.atom.args {
                arg.visit(&mut |t| match t {
                    FOTerm::Const(c) => {
                        self.taken.insert(c.clone());
                    }
                    FOTerm::Func(f, _) => {
                        self.taken.insert(f.clone());
                    }
                    FOTerm::Var(_) => {}
                });
            }
        };
        for ac in clauses {
            for lit in ac.clause.literals() {
                grab(lit);
            }
        }
        for f in formulas {
            visit_literals(f, &mut grab);
        }
    }

    fn fresh(&mut self) -> String {
        loop {
            let name = format!("sk{}", self.next);
            self.next += 1;
            if !self.taken.contains(&name) {
                return name;
            }
        }
    }
}

fn visit_literals(f: &Formula, visit: &mut impl FnMut(&Literal)) {
    match f {
        Formula::Lit(l) => visit(l),
        Formula::Not(c) => visit_literals(c, visit),
        Formula::And(l, r)
        | Formula::Or(l, r)
        | Formula::Implies(l, r)
        | Formula::Iff(l, r) => {
            visit_literals(l, visit);
            visit_literals(r, visit);
        }
        Formula::ForAll(_, b) | Formula::Exists(_, b) => visit_literals(b, visit),
    }
}

/// Negation normal form. Implication becomes `~F | G`, equivalence
/// `(~F | G) & (~G | F)`, and negation pushes through connectives and
/// quantifiers until it reaches a literal, where it negates the annotation.
pub fn to_nnf(f: &Formula) -> Formula {
    nnf(f, true)
}

fn nnf(f: &Formula, positive: bool) -> Formula {
    match f {
        Formula::Lit(l) => {
            if positive {
                Formula::Lit(l.clone())
            } else {
                Formula::Lit(Literal {
                    atom: l.atom.clone(),
                    annotation: l.annotation.negated(),
                })
            }
        }
        Formula::Not(c) => nnf(c, !positive),
        Formula::And(l, r) => {
            if positive {
                Formula::And(Box::new(nnf(l, true)), Box::new(nnf(r, true)))
            } else {
                Formula::Or(Box::new(nnf(l, false)), Box::new(nnf(r, false)))
            }
        }
        Formula::Or(l, r) => {
            if positive {
                Formula::Or(Box::new(nnf(l, true)), Box::new(nnf(r, true)))
            } else {
                Formula::And(Box::new(nnf(l, false)), Box::new(nnf(r, false)))
            }
        }
        Formula::Implies(l, r) => {
            if positive {
                Formula::Or(Box::new(nnf(l, false)), Box::new(nnf(r, true)))
            } else {
                Formula::And(Box::new(nnf(l, true)), Box::new(nnf(r, false)))
            }
        }
        Formula::Iff(l, r) => {
            let expanded = Formula::And(
                Box::new(Formula::Or(Box::new(Formula::Not(l.clone())), r.clone())),
                Box::new(Formula::Or(Box::new(Formula::Not(r.clone())), l.clone())),
            );
            nnf(&expanded, positive)
        }
        Formula::ForAll(v, b) => {
            if positive {
                Formula::ForAll(v.clone(), Box::new(nnf(b, true)))
            } else {
                Formula::Exists(v.clone(), Box::new(nnf(b, false)))
            }
        }
        Formula::Exists(v, b) => {
            if positive {
                Formula::Exists(v.clone(), Box::new(nnf(b, true)))
            } else {
                Formula::ForAll(v.clone(), Box::new(nnf(b, false)))
            }
        }
    }
}

/// Renames bound variables so each binder uses a distinct name, also
/// distinct from every free variable. First use of a name keeps it.
fn rectify(f: &Formula) -> Formula {
    let mut used = BTreeSet::new();
    collect_var_names(f, &mut used);
    let mut scope: Vec<(String, String)> = Vec::new();
    let mut claimed = BTreeSet::new();
    rectify_at(f, &mut used, &mut claimed, &mut scope)
}

fn collect_var_names(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Lit(l) => {
            l.free_vars(out);
        }
        Formula::Not(c) => collect_var_names(c, out),
        Formula::And(l, r)
        | Formula::Or(l, r)
        | Formula::Implies(l, r)
        | Formula::Iff(l, r) => {
            collect_var_names(l, out);
            collect_var_names(r, out);
        }
        Formula::ForAll(v, b) | Formula::Exists(v, b) => {
            out.insert(v.clone());
            collect_var_names(b, out);
        }
    }
}

fn rectify_at(
    f: &Formula,
    used: &mut BTreeSet<String>,
    claimed: &mut BTreeSet<String>,
    scope: &mut Vec<(String, String)>,
) -> Formula {
    match f {
        Formula::Lit(l) => {
            let rename = |t: &FOTerm| rename_term(t, scope);
            Formula::Lit(Literal {
                atom: crate::syntax::Atom {
                    pred: l.atom.pred.clone(),
                    args: l.atom.args.iter().map(rename).collect(),
                },
                annotation: l.annotation.clone(),
            })
        }
        Formula::Not(c) => Formula::Not(Box::new(rectify_at(c, used, claimed, scope))),
        Formula::And(l, r) => Formula::And(
            Box::new(rectify_at(l, used, claimed, scope)),
            Box::new(rectify_at(r, used, claimed, scope)),
        ),
        Formula::Or(l, r) => Formula::Or(
            Box::new(rectify_at(l, used, claimed, scope)),
            Box::new(rectify_at(r, used, claimed, scope)),
        ),
        Formula::Implies(l, r) => Formula::Implies(
            Box::new(rectify_at(l, used, claimed, scope)),
            Box::new(rectify_at(r, used, claimed, scope)),
        ),
        Formula::Iff(l, r) => Formula::Iff(
            Box::new(rectify_at(l, used, claimed, scope)),
            Box::new(rectify_at(r, used, claimed, scope)),
        ),
        Formula::ForAll(v, b) | Formula::Exists(v, b) => {
            let fresh = if claimed.insert(v.clone()) {
                v.clone()
            } else {
                let mut i = 2;
                loop {
                    let candidate = format!("{}_{}", v, i);
                    if !used.contains(&candidate) {
                        used.insert(candidate.clone());
                        claimed.insert(candidate.clone());
                        break candidate;
                    }
                    i += 1;
                }
            };
            scope.push((v.clone(), fresh.clone()));
            let body = rectify_at(b, used, claimed, scope);
            scope.pop();
            if matches!(f, Formula::ForAll(..)) {
                Formula::ForAll(fresh, Box::new(body))
            } else {
                Formula::Exists(fresh, Box::new(body))
            }
        }
    }
}

fn rename_term(t: &FOTerm, scope: &[(String, String)]) -> FOTerm {
    match t {
        FOTerm::Var(v) => {
            for (old, new) in scope.iter().rev() {
                if old == v {
                    return FOTerm::Var(new.clone());
                }
            }
            t.clone()
        }
        FOTerm::Const(_) => t.clone(),
        FOTerm::Func(f, args) => FOTerm::Func(
            f.clone(),
            args.iter().map(|a| rename_term(a, scope)).collect(),
        ),
    }
}

/// Eliminates quantifiers from an NNF formula. Universals are dropped
/// (clause variables are implicitly universal); each existential variable
/// becomes a Skolem function of the universals in scope, or a Skolem
/// constant when there are none. Bound variables are renamed apart first.
///
/// Panics if `f` is not in negation normal form.
pub fn skolemize(f: &Formula, gen: &mut SkolemGen) -> Formula {
    let f = rectify(f);
    let mut universals = Vec::new();
    let mut map = BTreeMap::new();
    sk(&f, &mut universals, &mut map, gen)
}

fn sk(
    f: &Formula,
    universals: &mut Vec<String>,
    map: &mut BTreeMap<String, FOTerm>,
    gen: &mut SkolemGen,
) -> Formula {
    match f {
        Formula::Lit(l) => Formula::Lit(Literal {
            atom: crate::syntax::Atom {
                pred: l.atom.pred.clone(),
                args: l.atom.args.iter().map(|a| a.substituted(map)).collect(),
            },
            annotation: l.annotation.clone(),
        }),
        Formula::And(l, r) => Formula::And(
            Box::new(sk(l, universals, map, gen)),
            Box::new(sk(r, universals, map, gen)),
        ),
        Formula::Or(l, r) => Formula::Or(
            Box::new(sk(l, universals, map, gen)),
            Box::new(sk(r, universals, map, gen)),
        ),
        Formula::ForAll(v, b) => {
            universals.push(v.clone());
            let body = sk(b, universals, map, gen);
            universals.pop();
            body
        }
        Formula::Exists(v, b) => {
            let name = gen.fresh();
            let witness = if universals.is_empty() {
                FOTerm::Const(name)
            } else {
                FOTerm::Func(
                    name,
                    universals.iter().map(|u| FOTerm::Var(u.clone())).collect(),
                )
            };
            map.insert(v.clone(), witness);
            let body = sk(b, universals, map, gen);
            map.remove(v);
            body
        }
        Formula::Not(..) | Formula::Implies(..) | Formula::Iff(..) => {
            panic!("skolemize expects negation normal form")
        }
    }
}

/// Distributes disjunction over conjunction and collects the clauses.
/// Clauses equal up to literal order are emitted once.
///
/// Panics if `f` contains quantifiers or anything not in NNF.
pub fn to_cnf(f: &Formula) -> Vec<Clause> {
    let mut raw = Vec::new();
    distribute(f, &mut raw);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for lits in raw {
        let clause = Clause::new(lits);
        let mut key: Vec<String> = clause.literals().iter().map(|l| format!("{:?}", l)).collect();
        key.sort();
        if seen.insert(key.join("\u{1f}")) {
            out.push(clause);
        }
    }
    out
}

fn distribute(f: &Formula, out: &mut Vec<Vec<Literal>>) {
    match f {
        Formula::Lit(l) => out.push(vec![l.clone()]),
        Formula::And(l, r) => {
            distribute(l, out);
            distribute(r, out);
        }
        Formula::Or(l, r) => {
            let mut left = Vec::new();
            distribute(l, &mut left);
            let mut right = Vec::new();
            distribute(r, &mut right);
            for a in &left {
                for b in &right {
                    let mut merged = a.clone();
                    merged.extend(b.iter().cloned());
                    out.push(merged);
                }
            }
        }
        _ => panic!("to_cnf expects a quantifier-free formula in negation normal form"),
    }
}

/// Full pipeline: universal closure of free variables, NNF, Skolemization,
/// CNF. Every resulting clause carries `reliability`.
pub fn clausify(
    f: &Formula,
    reliability: TruthTerm,
    algebra: &Algebra,
    gen: &mut SkolemGen,
) -> Result<Vec<AnnotatedClause>, SyntaxError> {
    let mut closed = f.clone();
    for v in f.free_vars().into_iter().rev() {
        closed = Formula::ForAll(v, Box::new(closed));
    }
    let nnf = to_nnf(&closed);
    let ground = skolemize(&nnf, gen);
    to_cnf(&ground)
        .into_iter()
        .map(|c| AnnotatedClause::new(c, reliability.clone(), algebra))
        .collect()
}
