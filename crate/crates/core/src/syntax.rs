//! Terms, atoms, annotated literals, clauses and formulas, plus the
//! canonical text rendering used everywhere (tests freeze these strings).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::algebra::{Algebra, TruthTerm};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("clause reliability {0} is below W")]
    ReliabilityBelowW(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FOTerm {
    Var(String),
    Const(String),
    Func(String, Vec<FOTerm>),
}

impl FOTerm {
    pub fn is_ground(&self) -> bool {
        match self {
            FOTerm::Var(_) => false,
            FOTerm::Const(_) => true,
            FOTerm::Func(_, args) => args.iter().all(FOTerm::is_ground),
        }
    }

    pub fn free_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            FOTerm::Var(v) => {
                out.insert(v.clone());
            }
            FOTerm::Const(_) => {}
            FOTerm::Func(_, args) => {
                for a in args {
                    a.free_vars(out);
                }
            }
        }
    }

    /// Pre-order traversal over this term and all subterms.
    pub fn visit(&self, f: &mut impl FnMut(&FOTerm)) {
        f(self);
        if let FOTerm::Func(_, args) = self {
            for a in args {
                a.visit(f);
            }
        }
    }

    /// Simultaneous replacement of variables by the mapped terms.
    pub fn substituted(&self, map: &BTreeMap<String, FOTerm>) -> FOTerm {
        match self {
            FOTerm::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            FOTerm::Const(_) => self.clone(),
            FOTerm::Func(f, args) => FOTerm::Func(
                f.clone(),
                args.iter().map(|a| a.substituted(map)).collect(),
            ),
        }
    }
}

impl fmt::Display for FOTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FOTerm::Var(v) => write!(f, "?{}", v),
            FOTerm::Const(c) => write!(f, "{}", c),
            FOTerm::Func(name, args) => {
                write!(f, "{}(", name)?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", a)?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<FOTerm>,
}

impl Atom {
    pub fn is_ground(&self) -> bool {
        self.args.iter().all(FOTerm::is_ground)
    }

    pub fn free_vars(&self, out: &mut BTreeSet<String>) {
        for a in &self.args {
            a.free_vars(out);
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pred)?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", a)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// An atom together with the truth value it is asserted to take.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub annotation: TruthTerm,
}

impl Literal {
    pub fn free_vars(&self, out: &mut BTreeSet<String>) {
        self.atom.free_vars(out);
    }
}

/// A disjunction of annotated literals. Duplicates collapse on construction;
/// the empty clause is unsatisfiable by convention and prints as `[]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Clause {
        let mut out: Vec<Literal> = Vec::with_capacity(literals.len());
        for l in literals {
            if !out.contains(&l) {
                out.push(l);
            }
        }
        Clause { literals: out }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_ground(&self) -> bool {
        self.literals.iter().all(|l| l.atom.is_ground())
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for l in &self.literals {
            l.free_vars(&mut out);
        }
        out
    }
}

/// A clause paired with the reliability of the evidence for it.
/// Reliability never sits below `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedClause {
    pub clause: Clause,
    pub reliability: TruthTerm,
}

impl AnnotatedClause {
    pub fn new(
        clause: Clause,
        reliability: TruthTerm,
        algebra: &Algebra,
    ) -> Result<AnnotatedClause, SyntaxError> {
        if reliability.is_below_w() {
            return Err(SyntaxError::ReliabilityBelowW(
                algebra.print_term(&reliability),
            ));
        }
        Ok(AnnotatedClause { clause, reliability })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Lit(Literal),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    ForAll(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out);
        out
    }

    fn free_vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Lit(l) => l.free_vars(out),
            Formula::Not(f) => f.free_vars_into(out),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                l.free_vars_into(out);
                r.free_vars_into(out);
            }
            Formula::ForAll(v, f) | Formula::Exists(v, f) => {
                let mut inner = BTreeSet::new();
                f.free_vars_into(&mut inner);
                inner.remove(v);
                out.extend(inner);
            }
        }
    }
}

pub fn print_literal(algebra: &Algebra, lit: &Literal) -> String {
    format!("{}:{}", lit.atom, algebra.print_term(&lit.annotation))
}

pub fn print_clause(algebra: &Algebra, clause: &Clause) -> String {
    if clause.is_empty() {
        return "[]".into();
    }
    clause
        .literals()
        .iter()
        .map(|l| print_literal(algebra, l))
        .collect::<Vec<_>>()
        .join(" | ")
}

pub fn print_annotated(algebra: &Algebra, ac: &AnnotatedClause) -> String {
    format!(
        "{} @ {}",
        print_clause(algebra, &ac.clause),
        algebra.print_term(&ac.reliability)
    )
}

// Binding tightness used for parenthesization. Quantifier bodies extend as
// far as possible, so a quantified subformula inside any operator is always
// wrapped in parentheses.
fn level(f: &Formula) -> u8 {
    match f {
        Formula::ForAll(..) | Formula::Exists(..) => 0,
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Not(..) => 5,
        Formula::Lit(..) => 6,
    }
}

fn print_formula_at(algebra: &Algebra, f: &Formula, required: u8, out: &mut String) {
    if level(f) < required {
        out.push('(');
        print_formula_at(algebra, f, 0, out);
        out.push(')');
        return;
    }
    match f {
        Formula::Lit(l) => out.push_str(&print_literal(algebra, l)),
        Formula::Not(c) => {
            out.push('~');
            print_formula_at(algebra, c, 5, out);
        }
        Formula::And(l, r) => {
            print_formula_at(algebra, l, 4, out);
            out.push_str(" & ");
            print_formula_at(algebra, r, 5, out);
        }
        Formula::Or(l, r) => {
            print_formula_at(algebra, l, 3, out);
            out.push_str(" | ");
            print_formula_at(algebra, r, 4, out);
        }
        Formula::Implies(l, r) => {
            print_formula_at(algebra, l, 3, out);
            out.push_str(" -> ");
            print_formula_at(algebra, r, 2, out);
        }
        Formula::Iff(l, r) => {
            print_formula_at(algebra, l, 1, out);
            out.push_str(" <-> ");
            print_formula_at(algebra, r, 2, out);
        }
        Formula::ForAll(v, b) => {
            out.push_str("forall ?");
            out.push_str(v);
            out.push_str(" . ");
            print_formula_at(algebra, b, 0, out);
        }
        Formula::Exists(v, b) => {
            out.push_str("exists ?");
            out.push_str(v);
            out.push_str(" . ");
            print_formula_at(algebra, b, 0, out);
        }
    }
}

pub fn print_formula(algebra: &Algebra, f: &Formula) -> String {
    let mut out = String::new();
    print_formula_at(algebra, f, 0, &mut out);
    out
}

/// Lists quantifiers whose variable never occurs free in their body, e.g.
/// `"forall ?x"`. Vacuous binders are legal but usually a typo, so callers
/// surface these as warnings rather than errors.
pub fn vacuous_quantifiers(f: &Formula) -> Vec<String> {
    fn walk(f: &Formula, out: &mut Vec<String>) {
        match f {
            Formula::Lit(_) => {}
            Formula::Not(c) => walk(c, out),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                walk(l, out);
                walk(r, out);
            }
            Formula::ForAll(v, b) | Formula::Exists(v, b) => {
                if !b.free_vars().contains(v) {
                    let kind = if matches!(f, Formula::ForAll(..)) {
                        "forall"
                    } else {
                        "exists"
                    };
                    out.push(format!("{} ?{}", kind, v));
                }
                walk(b, out);
            }
        }
    }
    let mut out = Vec::new();
    walk(f, &mut out);
    out
}
