//! Brute-force semantics: Herbrand universes, explicit interpretations, and
//! satisfiability by exhaustive enumeration of atom valuations.
//!
//! This module is the ground truth the calculus is tested against. It knows
//! nothing about resolution; it only evaluates.
//!
//! Truth values for atoms are drawn from a finite sample of the algebra,
//! `enumerate_terms(depth)`. The sample contains ⊥, W, ⊤, and is closed
//! under negation, so every connective computation stays inside it.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::algebra::{Algebra, TruthTerm};
use crate::parser::{parse_ground_atom, parse_ground_term, parse_ground_terms};
use crate::syntax::{Atom, Clause, FOTerm, Formula, Literal};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("clause is not ground: {0}")]
    NotGround(String),
    #[error("enumeration needs {needed} interpretation evaluations, cap is {cap}")]
    EnumerationCap { needed: u128, cap: u64 },
    #[error("interpretation does not cover {0}")]
    Uncovered(String),
    #[error("empty domain cannot instantiate variables")]
    EmptyDomain,
    #[error("bad interpretation: {0}")]
    BadInterpretation(String),
}

/// Ground terms buildable in at most `level` function applications.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HerbrandLevel {
    pub level: usize,
    pub terms: BTreeSet<FOTerm>,
}

fn signature(clauses: &[Clause]) -> (BTreeSet<String>, BTreeSet<(String, usize)>) {
    let mut constants = BTreeSet::new();
    let mut functions = BTreeSet::new();
    for c in clauses {
        for lit in c.literals() {
            for arg in &lit.atom.args {
                arg.visit(&mut |t| match t {
                    FOTerm::Const(name) => {
                        constants.insert(name.clone());
                    }
                    FOTerm::Func(name, args) => {
                        functions.insert((name.clone(), args.len()));
                    }
                    FOTerm::Var(_) => {}
                });
            }
        }
    }
    (constants, functions)
}

fn tuples<T: Clone>(pool: &[T], n: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * pool.len());
        for prefix in &out {
            for item in pool {
                let mut t = prefix.clone();
                t.push(item.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Level-`k` constant set of the clause set: constants at level 0 (an
/// invented constant `a` when there are none), then closure under one more
/// function application per level.
pub fn herbrand_universe(clauses: &[Clause], k: usize) -> HerbrandLevel {
    let (constants, functions) = signature(clauses);
    let mut terms: BTreeSet<FOTerm> = constants.into_iter().map(FOTerm::Const).collect();
    if terms.is_empty() {
        terms.insert(FOTerm::Const("a".into()));
    }
    for _ in 0..k {
        let pool: Vec<FOTerm> = terms.iter().cloned().collect();
        for (name, arity) in &functions {
            for args in tuples(&pool, *arity) {
                terms.insert(FOTerm::Func(name.clone(), args));
            }
        }
    }
    HerbrandLevel { level: k, terms }
}

/// All ground atoms over the level-`k` universe: every predicate of the
/// clause set applied to every argument tuple.
pub fn herbrand_base(clauses: &[Clause], k: usize) -> BTreeSet<Atom> {
    let universe = herbrand_universe(clauses, k);
    let pool: Vec<FOTerm> = universe.terms.into_iter().collect();
    let mut preds = BTreeSet::new();
    for c in clauses {
        for lit in c.literals() {
            preds.insert((lit.atom.pred.clone(), lit.atom.args.len()));
        }
    }
    let mut out = BTreeSet::new();
    for (pred, arity) in preds {
        for args in tuples(&pool, arity) {
            out.insert(Atom { pred: pred.clone(), args });
        }
    }
    out
}

/// Every substitution of the clause's variables by universe members.
pub fn ground_instances(clause: &Clause, universe: &BTreeSet<FOTerm>) -> Vec<Clause> {
    let vars: Vec<String> = clause.free_vars().into_iter().collect();
    if vars.is_empty() {
        return vec![clause.clone()];
    }
    let pool: Vec<FOTerm> = universe.iter().cloned().collect();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for tuple in tuples(&pool, vars.len()) {
        let map: BTreeMap<String, FOTerm> = vars.iter().cloned().zip(tuple).collect();
        let instance = Clause::new(
            clause
                .literals()
                .iter()
                .map(|l| Literal {
                    atom: Atom {
                        pred: l.atom.pred.clone(),
                        args: l.atom.args.iter().map(|a| a.substituted(&map)).collect(),
                    },
                    annotation: l.annotation.clone(),
                })
                .collect(),
        );
        let mut key: Vec<String> = instance.literals().iter().map(|l| format!("{:?}", l)).collect();
        key.sort();
        if seen.insert(key.join("\u{1f}")) {
            out.push(instance);
        }
    }
    out
}

/// Truth value of a literal whose atom evaluates to `atom_value` under an
/// annotation `annotation`, by the four-case rule: agreement on the same
/// side of W rewards the weaker claim, disagreement punishes the stronger.
pub fn eval_literal(algebra: &Algebra, atom_value: &TruthTerm, annotation: &TruthTerm) -> TruthTerm {
    match (atom_value.is_above_w(), annotation.is_above_w()) {
        (true, true) => algebra.meet(atom_value, annotation),
        (false, false) => algebra.join(atom_value, annotation).negated(),
        (true, false) => algebra.join(&atom_value.negated(), annotation),
        (false, true) => algebra.join(atom_value, &annotation.negated()),
    }
}

/// A finite model: a domain of ground terms, optional function tables into
/// the domain, and a truth value for each atom over domain elements.
/// Constants denote themselves and must belong to the domain when used.
/// Tables may be partial; evaluation reports any lookup they miss.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Interpretation {
    domain: BTreeSet<FOTerm>,
    functions: BTreeMap<String, BTreeMap<Vec<FOTerm>, FOTerm>>,
    atoms: BTreeMap<Atom, TruthTerm>,
}

impl Interpretation {
    pub fn new(
        domain: BTreeSet<FOTerm>,
        functions: BTreeMap<String, BTreeMap<Vec<FOTerm>, FOTerm>>,
        atoms: BTreeMap<Atom, TruthTerm>,
    ) -> Result<Interpretation, OracleError> {
        for t in &domain {
            if !t.is_ground() {
                return Err(OracleError::BadInterpretation(format!(
                    "domain element {} is not ground",
                    t
                )));
            }
        }
        for (name, table) in &functions {
            for (args, value) in table {
                for t in args.iter().chain(Some(value)) {
                    if !domain.contains(t) {
                        return Err(OracleError::BadInterpretation(format!(
                            "table for {} mentions {}, which is outside the domain",
                            name, t
                        )));
                    }
                }
            }
        }
        for atom in atoms.keys() {
            if !atom.is_ground() {
                return Err(OracleError::BadInterpretation(format!(
                    "atom {} is not ground",
                    atom
                )));
            }
        }
        Ok(Interpretation { domain, functions, atoms })
    }

    pub fn domain(&self) -> &BTreeSet<FOTerm> {
        &self.domain
    }

    pub fn atom_value(&self, atom: &Atom) -> Option<&TruthTerm> {
        self.atoms.get(atom)
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&Atom, &TruthTerm)> {
        self.atoms.iter()
    }

    fn eval_term(
        &self,
        term: &FOTerm,
        env: &BTreeMap<String, FOTerm>,
    ) -> Result<FOTerm, OracleError> {
        match term {
            FOTerm::Var(v) => env
                .get(v)
                .cloned()
                .ok_or_else(|| OracleError::Uncovered(format!("variable ?{}", v))),
            FOTerm::Const(_) => {
                if self.domain.contains(term) {
                    Ok(term.clone())
                } else {
                    Err(OracleError::Uncovered(format!("constant {}", term)))
                }
            }
            FOTerm::Func(name, args) => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(self.eval_term(a, env)?);
                }
                self.functions
                    .get(name)
                    .and_then(|table| table.get(&vals))
                    .cloned()
                    .ok_or_else(|| {
                        OracleError::Uncovered(format!(
                            "function {} at ({})",
                            name,
                            vals.iter()
                                .map(|t| t.to_string())
                                .collect::<Vec<_>>()
                                .join(", ")
                        ))
                    })
            }
        }
    }

    fn eval_lit(
        &self,
        algebra: &Algebra,
        lit: &Literal,
        env: &BTreeMap<String, FOTerm>,
    ) -> Result<TruthTerm, OracleError> {
        let mut args = Vec::with_capacity(lit.atom.args.len());
        for a in &lit.atom.args {
            args.push(self.eval_term(a, env)?);
        }
        let atom = Atom { pred: lit.atom.pred.clone(), args };
        let value = self
            .atoms
            .get(&atom)
            .ok_or_else(|| OracleError::Uncovered(format!("atom {}", atom)))?;
        Ok(eval_literal(algebra, value, &lit.annotation))
    }
}

/// Truth value of a clause: join of its literals, minimized over all
/// assignments of the clause's variables to domain elements (clause
/// variables are implicitly universal). The empty clause evaluates to ⊥.
pub fn eval_clause(
    algebra: &Algebra,
    clause: &Clause,
    interp: &Interpretation,
) -> Result<TruthTerm, OracleError> {
    let vars: Vec<String> = clause.free_vars().into_iter().collect();
    if !vars.is_empty() && interp.domain.is_empty() {
        return Err(OracleError::EmptyDomain);
    }
    let pool: Vec<FOTerm> = interp.domain.iter().cloned().collect();
    let assignments = if vars.is_empty() {
        vec![Vec::new()]
    } else {
        tuples(&pool, vars.len())
    };
    let mut result: Option<TruthTerm> = None;
    for tuple in assignments {
        let env: BTreeMap<String, FOTerm> = vars.iter().cloned().zip(tuple).collect();
        let mut value = TruthTerm::Bottom;
        for lit in clause.literals() {
            value = algebra.join(&value, &interp.eval_lit(algebra, lit, &env)?);
        }
        result = Some(match result {
            None => value,
            Some(acc) => algebra.meet(&acc, &value),
        });
    }
    Ok(result.expect("at least one assignment"))
}

/// Truth value of a formula under an interpretation. Free variables are
/// implicitly universal; quantifiers range over the whole domain.
pub fn eval_formula(
    algebra: &Algebra,
    f: &Formula,
    interp: &Interpretation,
) -> Result<TruthTerm, OracleError> {
    let mut closed = f.clone();
    for v in f.free_vars().into_iter().rev() {
        closed = Formula::ForAll(v, Box::new(closed));
    }
    eval_f(algebra, &closed, interp, &mut BTreeMap::new())
}

fn eval_f(
    algebra: &Algebra,
    f: &Formula,
    interp: &Interpretation,
    env: &mut BTreeMap<String, FOTerm>,
) -> Result<TruthTerm, OracleError> {
    match f {
        Formula::Lit(l) => interp.eval_lit(algebra, l, env),
        Formula::Not(c) => Ok(eval_f(algebra, c, interp, env)?.negated()),
        Formula::And(l, r) => {
            let lv = eval_f(algebra, l, interp, env)?;
            let rv = eval_f(algebra, r, interp, env)?;
            Ok(algebra.meet(&lv, &rv))
        }
        Formula::Or(l, r) => {
            let lv = eval_f(algebra, l, interp, env)?;
            let rv = eval_f(algebra, r, interp, env)?;
            Ok(algebra.join(&lv, &rv))
        }
        Formula::Implies(l, r) => {
            let lv = eval_f(algebra, l, interp, env)?;
            let rv = eval_f(algebra, r, interp, env)?;
            Ok(algebra.implies(&lv, &rv))
        }
        Formula::Iff(l, r) => {
            let lv = eval_f(algebra, l, interp, env)?;
            let rv = eval_f(algebra, r, interp, env)?;
            Ok(algebra.iff(&lv, &rv))
        }
        Formula::ForAll(v, b) | Formula::Exists(v, b) => {
            if interp.domain.is_empty() {
                return Err(OracleError::EmptyDomain);
            }
            let forall = matches!(f, Formula::ForAll(..));
            let saved = env.get(v).cloned();
            let mut acc: Option<TruthTerm> = None;
            for d in interp.domain.clone() {
                env.insert(v.clone(), d);
                let value = eval_f(algebra, b, interp, env)?;
                acc = Some(match acc {
                    None => value,
                    Some(a) if forall => algebra.meet(&a, &value),
                    Some(a) => algebra.join(&a, &value),
                });
            }
            match saved {
                Some(t) => {
                    env.insert(v.clone(), t);
                }
                None => {
                    env.remove(v);
                }
            }
            Ok(acc.expect("non-empty domain"))
        }
    }
}

/// `Weak` accepts clause values ≥ W, `Strict` demands > W. The two modes
/// differ exactly on the boundary value W.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SatMode {
    Strict,
    Weak,
}

impl SatMode {
    fn accepts(self, value: &TruthTerm) -> bool {
        match self {
            SatMode::Strict => value.is_above_w(),
            SatMode::Weak => !value.is_below_w(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum CheckOutcome {
    Satisfiable(Interpretation),
    Unsatisfiable,
}

pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Enumeration machinery shared by `check_sat` and `entails`: distinct
/// atoms in ascending order, the truth-value sample, and per-clause
/// compiled literal lists.
struct Enumeration {
    atoms: Vec<Atom>,
    values: Vec<TruthTerm>,
}

impl Enumeration {
    fn build(
        algebra: &Algebra,
        clauses: &[&Clause],
        truth_depth: usize,
        cap: u64,
    ) -> Result<Enumeration, OracleError> {
        for c in clauses {
            if !c.is_ground() {
                return Err(OracleError::NotGround(crate::syntax::print_clause(
                    algebra, c,
                )));
            }
        }
        let mut atom_set = BTreeSet::new();
        for c in clauses {
            for lit in c.literals() {
                atom_set.insert(lit.atom.clone());
            }
        }
        let atoms: Vec<Atom> = atom_set.into_iter().collect();
        let values = algebra.enumerate_terms(truth_depth);
        let mut needed: u128 = 1;
        for _ in &atoms {
            needed = needed.saturating_mul(values.len() as u128);
            if needed > cap as u128 {
                return Err(OracleError::EnumerationCap { needed, cap });
            }
        }
        Ok(Enumeration { atoms, values })
    }

    fn index(&self, atom: &Atom) -> usize {
        self.atoms.binary_search(atom).expect("atom was collected")
    }

    fn compile(&self, clause: &Clause) -> Vec<(usize, TruthTerm)> {
        clause
            .literals()
            .iter()
            .map(|l| (self.index(&l.atom), l.annotation.clone()))
            .collect()
    }

    fn clause_value(&self, algebra: &Algebra, prog: &[(usize, TruthTerm)], assignment: &[usize]) -> TruthTerm {
        let mut value = TruthTerm::Bottom;
        for (ai, annotation) in prog {
            let lv = eval_literal(algebra, &self.values[assignment[*ai]], annotation);
            value = algebra.join(&value, &lv);
        }
        value
    }

    /// Advances the odometer (last atom fastest). Returns false when the
    /// space is exhausted.
    fn advance(&self, assignment: &mut [usize]) -> bool {
        for i in (0..assignment.len()).rev() {
            assignment[i] += 1;
            if assignment[i] < self.values.len() {
                return true;
            }
            assignment[i] = 0;
        }
        false
    }

    /// Herbrand-style witness: domain and tables cover exactly the ground
    /// terms occurring in the checked clauses, functions interpreted
    /// syntactically, atoms as assigned.
    fn witness(&self, clauses: &[&Clause], assignment: &[usize]) -> Interpretation {
        let mut domain = BTreeSet::new();
        let mut functions: BTreeMap<String, BTreeMap<Vec<FOTerm>, FOTerm>> = BTreeMap::new();
        for c in clauses {
            for lit in c.literals() {
                for arg in &lit.atom.args {
                    arg.visit(&mut |t| {
                        domain.insert(t.clone());
                        if let FOTerm::Func(name, args) = t {
                            functions
                                .entry(name.clone())
                                .or_default()
                                .insert(args.clone(), t.clone());
                        }
                    });
                }
            }
        }
        let atoms = self
            .atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), self.values[assignment[i]].clone()))
            .collect();
        Interpretation { domain, functions, atoms }
    }
}

/// Decides satisfiability of a ground clause set by enumerating every
/// valuation of its atoms into the depth-`truth_depth` sample. On success
/// the witness is the first satisfying valuation: atoms ascending, values
/// ascending, the last atom cycling fastest.
pub fn check_sat(
    algebra: &Algebra,
    clauses: &[Clause],
    truth_depth: usize,
    mode: SatMode,
) -> Result<CheckOutcome, OracleError> {
    check_sat_capped(algebra, clauses, truth_depth, mode, DEFAULT_ENUMERATION_CAP)
}

pub fn check_sat_capped(
    algebra: &Algebra,
    clauses: &[Clause],
    truth_depth: usize,
    mode: SatMode,
    cap: u64,
) -> Result<CheckOutcome, OracleError> {
    let refs: Vec<&Clause> = clauses.iter().collect();
    let en = Enumeration::build(algebra, &refs, truth_depth, cap)?;
    let progs: Vec<Vec<(usize, TruthTerm)>> = clauses.iter().map(|c| en.compile(c)).collect();
    let mut assignment = vec![0usize; en.atoms.len()];
    loop {
        let ok = progs
            .iter()
            .all(|p| mode.accepts(&en.clause_value(algebra, p, &assignment)));
        if ok {
            return Ok(CheckOutcome::Satisfiable(en.witness(&refs, &assignment)));
        }
        if !en.advance(&mut assignment) {
            return Ok(CheckOutcome::Unsatisfiable);
        }
    }
}

/// Logical consequence over the sampled interpretations, strict reading:
/// every valuation that strictly satisfies all premises must strictly
/// satisfy the conclusion.
pub fn entails(
    algebra: &Algebra,
    premises: &[Clause],
    conclusion: &Clause,
    truth_depth: usize,
) -> Result<bool, OracleError> {
    let mut refs: Vec<&Clause> = premises.iter().collect();
    refs.push(conclusion);
    let en = Enumeration::build(algebra, &refs, truth_depth, DEFAULT_ENUMERATION_CAP)?;
    let premise_progs: Vec<Vec<(usize, TruthTerm)>> =
        premises.iter().map(|c| en.compile(c)).collect();
    let conclusion_prog = en.compile(conclusion);
    let mut assignment = vec![0usize; en.atoms.len()];
    loop {
        let premises_hold = premise_progs
            .iter()
            .all(|p| en.clause_value(algebra, p, &assignment).is_above_w());
        if premises_hold
            && !en
                .clause_value(algebra, &conclusion_prog, &assignment)
                .is_above_w()
        {
            return Ok(false);
        }
        if !en.advance(&mut assignment) {
            return Ok(true);
        }
    }
}

impl Interpretation {
    /// JSON shape:
    /// `{"domain": ["a","f(a)"],
    ///   "functions": {"f": {"a": "f(a)"}},
    ///   "atoms": {"P(a)": "VTrue"}}`.
    /// Keys of n-ary tables are the argument terms joined by commas.
    pub fn to_json(&self, algebra: &Algebra) -> Value {
        let domain: Vec<Value> = self.domain.iter().map(|t| json!(t.to_string())).collect();
        let mut functions = Map::new();
        for (name, table) in &self.functions {
            let mut entries = Map::new();
            for (args, value) in table {
                let key = args
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                entries.insert(key, json!(value.to_string()));
            }
            functions.insert(name.clone(), Value::Object(entries));
        }
        let mut atoms = Map::new();
        for (atom, value) in &self.atoms {
            atoms.insert(atom.to_string(), json!(algebra.print_term(value)));
        }
        json!({"domain": domain, "functions": functions, "atoms": atoms})
    }

    pub fn from_json(algebra: &Algebra, v: &Value) -> Result<Interpretation, OracleError> {
        let bad = |msg: String| OracleError::BadInterpretation(msg);
        let obj = v
            .as_object()
            .ok_or_else(|| bad("top level must be an object".into()))?;
        let mut domain = BTreeSet::new();
        let domain_v = obj
            .get("domain")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("\"domain\" must be an array of term strings".into()))?;
        for t in domain_v {
            let s = t
                .as_str()
                .ok_or_else(|| bad("domain entries must be strings".into()))?;
            domain.insert(parse_ground_term("domain", s).map_err(|e| bad(e.to_string()))?);
        }
        let mut functions: BTreeMap<String, BTreeMap<Vec<FOTerm>, FOTerm>> = BTreeMap::new();
        if let Some(fv) = obj.get("functions") {
            let fv = fv
                .as_object()
                .ok_or_else(|| bad("\"functions\" must be an object".into()))?;
            for (name, table_v) in fv {
                let table_v = table_v
                    .as_object()
                    .ok_or_else(|| bad(format!("table for {} must be an object", name)))?;
                let mut table = BTreeMap::new();
                for (key, value_v) in table_v {
                    let args =
                        parse_ground_terms("functions", key).map_err(|e| bad(e.to_string()))?;
                    let value_s = value_v
                        .as_str()
                        .ok_or_else(|| bad(format!("table values for {} must be strings", name)))?;
                    let value =
                        parse_ground_term("functions", value_s).map_err(|e| bad(e.to_string()))?;
                    table.insert(args, value);
                }
                functions.insert(name.clone(), table);
            }
        }
        let mut atoms = BTreeMap::new();
        let atoms_v = obj
            .get("atoms")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("\"atoms\" must be an object".into()))?;
        for (key, value_v) in atoms_v {
            let atom = parse_ground_atom("atoms", key).map_err(|e| bad(e.to_string()))?;
            let value_s = value_v
                .as_str()
                .ok_or_else(|| bad("atom values must be strings".into()))?;
            let value = algebra
                .parse_term(value_s)
                .map_err(|e| bad(e.to_string()))?;
            atoms.insert(atom, value);
        }
        Interpretation::new(domain, functions, atoms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_problem;
    
    fn std() -> Algebra {
        Algebra::standard()
    }

    fn clauses(src: &str) -> Vec<Clause> {
        parse_problem(src, &std())
            .unwrap()
            .clauses
            .into_iter()
            .map(|ac| ac.clause)
            .collect()
    }

    fn term(s: &str) -> FOTerm {
        parse_ground_term("t", s).unwrap()
    }

    #[test]
    fn universe_levels_grow_by_function_application() {
        let cs = clauses("clause P(f(?x)):True | Q(a):True.");
        let h0 = herbrand_universe(&cs, 0);
        assert_eq!(h0.terms.iter().cloned().collect::<Vec<_>>(), vec![term("a")]);
        let h1 = herbrand_universe(&cs, 1);
        assert_eq!(
            h1.terms.iter().cloned().collect::<Vec<_>>(),
            vec![term("a"), term("f(a)")]
        );
        let h2 = herbrand_universe(&cs, 2);
        assert!(h2.terms.contains(&term("f(f(a))")));
        assert_eq!(h2.terms.len(), 3);
        // Monotone by construction.
        assert!(h1.terms.is_subset(&h2.terms));
    }

    #[test]
    fn universe_invents_a_constant_when_there_is_none() {
        let cs = clauses("clause P(f(?x)):True.");
        let h0 = herbrand_universe(&cs, 0);
        assert_eq!(h0.terms.iter().cloned().collect::<Vec<_>>(), vec![term("a")]);
    }

    #[test]
    fn universe_is_flat_without_functions() {
        let cs = clauses("clause P(a):True | P(b):True.");
        let h0 = herbrand_universe(&cs, 0);
        let h3 = herbrand_universe(&cs, 3);
        assert_eq!(h0.terms, h3.terms);
        assert_eq!(h0.terms.len(), 2);
    }

    #[test]
    fn base_counts() {
        let cs = clauses("clause P(a):True.");
        assert_eq!(herbrand_base(&cs, 0).len(), 1);
        let cs = clauses("clause P(a, f(a)):True.");
        // Universe at level 1: {a, f(a), f(f(a))}? No: level 1 adds one
        // application to H_0 = {a}, so {a, f(a)}; P binary over 2 terms.
        assert_eq!(herbrand_base(&cs, 1).len(), 4);
        assert!(herbrand_base(&[], 0).is_empty());
    }

    #[test]
    fn ground_instance_counts() {
        let cs = clauses("clause A(?x):True.\nclause A(a):True.\nclause R(?x, ?y):True.");
        let universe: BTreeSet<FOTerm> = [term("a"), term("f(a)")].into_iter().collect();
        assert_eq!(ground_instances(&cs[0], &universe).len(), 2);
        assert_eq!(ground_instances(&cs[1], &universe), vec![cs[1].clone()]);
        assert_eq!(ground_instances(&cs[2], &universe).len(), 4);
    }

    #[test]
    fn literal_evaluation_cases() {
        let a = std();
        let t = |s: &str| a.parse_term(s).unwrap();
        // Same side above W: the weaker of the two claims.
        assert_eq!(eval_literal(&a, &t("VTrue"), &t("MTrue")), t("MTrue"));
        // Boundary: W against a positive annotation stays W.
        assert_eq!(eval_literal(&a, &t("W"), &t("VTrue")), t("W"));
        // Both below W: mirrored join.
        assert_eq!(eval_literal(&a, &t("MFalse"), &t("VFalse")), t("MTrue"));
        // Disagreement punishes: value above, annotation below.
        assert!(eval_literal(&a, &t("VTrue"), &t("MFalse")).is_below_w());
    }

    #[test]
    fn negating_the_annotation_negates_the_literal() {
        // Licenses the normal-form step `~(A:t) → A:negate(t)`.
        let a = std();
        let sample = a.enumerate_terms(2);
        for atom_value in &sample {
            for annotation in &sample {
                let lhs = eval_literal(&a, atom_value, &annotation.negated());
                let rhs = eval_literal(&a, atom_value, annotation).negated();
                assert_eq!(lhs, rhs, "value {:?} annotation {:?}", atom_value, annotation);
            }
        }
    }

    #[test]
    fn clause_and_formula_evaluation() {
        let a = std();
        let t = |s: &str| a.parse_term(s).unwrap();
        let p = parse_problem(
            "clause A(a):VTrue.\nformula forall ?x . P(?x):True.",
            &a,
        )
        .unwrap();
        let interp = Interpretation::from_json(
            &a,
            &json!({
                "domain": ["a", "b"],
                "atoms": {"A(a)": "VTrue", "P(a)": "True", "P(b)": "False"}
            }),
        )
        .unwrap();
        let v = eval_clause(&a, &p.clauses[0].clause, &interp).unwrap();
        assert_eq!(v, t("VTrue"));
        // Universal quantification is the domain minimum.
        let v = eval_formula(&a, &p.formulas[0], &interp).unwrap();
        assert_eq!(v, t("False"));
        // The empty clause evaluates to Bottom under anything.
        let v = eval_clause(&a, &Clause::new(vec![]), &interp).unwrap();
        assert_eq!(v, TruthTerm::Bottom);
    }

    #[test]
    fn eval_reports_uncovered_symbols() {
        let a = std();
        let p = parse_problem("clause A(c):True.\nclause B(f(a)):True.", &a).unwrap();
        let interp = Interpretation::from_json(
            &a,
            &json!({"domain": ["a"], "atoms": {"A(a)": "True"}}),
        )
        .unwrap();
        let err = eval_clause(&a, &p.clauses[0].clause, &interp).unwrap_err();
        assert!(err.to_string().contains("constant c"));
        let err = eval_clause(&a, &p.clauses[1].clause, &interp).unwrap_err();
        assert!(err.to_string().contains("function f"));
    }

    #[test]
    fn check_sat_spec_cases() {
        let a = std();
        // Opposite bare generators: no strict model.
        let cs = clauses("clause A:True.\nclause A:False.");
        assert!(matches!(
            check_sat(&a, &cs, 2, SatMode::Strict).unwrap(),
            CheckOutcome::Unsatisfiable
        ));
        assert!(matches!(
            check_sat(&a, &cs, 2, SatMode::Weak).unwrap(),
            CheckOutcome::Satisfiable(_)
        ));

        // The boundary pair: weakly satisfiable exactly at W.
        let cs = clauses("clause A:VTrue.\nclause A:VFalse.");
        match check_sat(&a, &cs, 2, SatMode::Weak).unwrap() {
            CheckOutcome::Satisfiable(w) => {
                let atom = Atom { pred: "A".into(), args: vec![] };
                assert_eq!(w.atom_value(&atom), Some(&TruthTerm::Middle));
            }
            CheckOutcome::Unsatisfiable => panic!("expected a weak model"),
        }
        assert!(matches!(
            check_sat(&a, &cs, 2, SatMode::Strict).unwrap(),
            CheckOutcome::Unsatisfiable
        ));

        // A single positive unit is strictly satisfiable, and the witness
        // re-evaluates above W.
        let cs = clauses("clause A:VTrue.");
        match check_sat(&a, &cs, 2, SatMode::Strict).unwrap() {
            CheckOutcome::Satisfiable(w) => {
                let v = eval_clause(&a, &cs[0], &w).unwrap();
                assert!(v.is_above_w());
            }
            CheckOutcome::Unsatisfiable => panic!("expected a strict model"),
        }
    }

    #[test]
    fn check_sat_rejects_non_ground_and_huge_spaces() {
        let a = std();
        let cs = clauses("clause A(?x):True.");
        assert!(matches!(
            check_sat(&a, &cs, 1, SatMode::Strict),
            Err(OracleError::NotGround(_))
        ));
        let many: Vec<Clause> = (0..20)
            .map(|i| {
                clauses(&format!("clause A{}(a):True.", i)).remove(0)
            })
            .collect();
        assert!(matches!(
            check_sat_capped(&a, &many, 2, SatMode::Strict, 1000),
            Err(OracleError::EnumerationCap { .. })
        ));
    }

    #[test]
    fn strict_models_are_weak_models() {
        let a = std();
        // Whenever a set is strictly satisfiable it is weakly satisfiable;
        // spot-check over a few small sets.
        for src in [
            "clause A:True.",
            "clause A:VTrue | B:False.\nclause B:MTrue.",
            "clause A:MFalse.\nclause B:LTrue | A:VFalse.",
        ] {
            let cs = clauses(src);
            if matches!(
                check_sat(&a, &cs, 1, SatMode::Strict).unwrap(),
                CheckOutcome::Satisfiable(_)
            ) {
                assert!(matches!(
                    check_sat(&a, &cs, 1, SatMode::Weak).unwrap(),
                    CheckOutcome::Satisfiable(_)
                ));
            }
        }
    }

    #[test]
    fn entailment_examples() {
        let a = std();
        let cs = clauses("clause A:True.\nclause A:False | B:True.\nclause B:True.");
        let premises = &cs[0..2];
        assert!(entails(&a, premises, &cs[2], 1).unwrap());
        // Every premise is entailed by the set.
        assert!(entails(&a, premises, &cs[0], 1).unwrap());
        // A lone unit does not entail an unrelated atom.
        let cs = clauses("clause A:True.\nclause B:True.");
        assert!(!entails(&a, &cs[0..1], &cs[1], 1).unwrap());
    }

    #[test]
    fn interpretation_json_round_trip() {
        let a = std();
        let v = json!({
            "domain": ["a", "f(a)"],
            "functions": {"f": {"a": "f(a)", "f(a)": "f(a)"}},
            "atoms": {"P(a)": "VTrue", "P(f(a))": "MFalse"}
        });
        let i = Interpretation::from_json(&a, &v).unwrap();
        assert_eq!(i.to_json(&a), v);
        // Function values outside the domain are rejected.
        let bad = json!({
            "domain": ["a"],
            "functions": {"f": {"a": "f(a)"}},
            "atoms": {}
        });
        assert!(Interpretation::from_json(&a, &bad).is_err());
    }
}
