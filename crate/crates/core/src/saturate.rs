//! The resolution calculus: binary resolution with reliability tracking,
//! factoring, a deterministic given-clause saturation loop, and proof trees.
//!
//! Resolution consumes one literal from each premise when their atoms unify
//! and the annotations sit on opposite sides of W (`meet < W ≤ join`). The
//! conclusion's reliability degrades to
//! `meet(α1, α2, negate(meet(a, b)), join(a, b))`, which never drops below
//! W and never exceeds either premise reliability.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::cmp::Ordering;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::algebra::{Algebra, TruthTerm};
use crate::syntax::{print_annotated, print_clause, AnnotatedClause, Clause, FOTerm, Literal};
use crate::unify::{mgu_atoms, Substitution};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SaturateError {
    #[error("reliability of an empty clause set is undefined")]
    EmptyClauseSet,
    #[error("replay step {step}: {reason}")]
    Replay { step: usize, reason: String },
}

/// Reliability of a conclusion drawn from premises with reliabilities
/// `alpha1`, `alpha2` by resolving annotations `a`, `b`. `None` when the
/// side conditions `meet(a,b) < W` and `join(a,b) ≥ W` fail.
pub fn combine_reliability(
    algebra: &Algebra,
    alpha1: &TruthTerm,
    alpha2: &TruthTerm,
    a: &TruthTerm,
    b: &TruthTerm,
) -> Option<TruthTerm> {
    let low = algebra.meet(a, b);
    let high = algebra.join(a, b);
    if !low.is_below_w() || high.is_below_w() {
        return None;
    }
    let mut out = algebra.meet(alpha1, alpha2);
    out = algebra.meet(&out, &low.negated());
    out = algebra.meet(&out, &high);
    debug_assert!(!out.is_below_w());
    debug_assert_ne!(algebra.cmp_terms(&out, alpha1), Ordering::Greater);
    debug_assert_ne!(algebra.cmp_terms(&out, alpha2), Ordering::Greater);
    Some(out)
}

#[derive(Debug, Clone)]
pub struct Resolvent {
    pub clause: AnnotatedClause,
    /// The unifier of the two atoms, over the (possibly renamed) premises.
    pub subst: Substitution,
    /// Renaming applied to the second premise to clear variable overlap;
    /// empty when the premises already had no variables in common.
    pub renaming: Substitution,
}

/// Binary resolvent of `c1[i]` against `c2[j]`, or `None` when the atoms do
/// not unify or the annotation side conditions fail. `c2` is renamed apart
/// from `c1` first when they share variables.
pub fn resolve(
    algebra: &Algebra,
    c1: &AnnotatedClause,
    i: usize,
    c2: &AnnotatedClause,
    j: usize,
) -> Option<Resolvent> {
    let vars1 = c1.clause.free_vars();
    let vars2 = c2.clause.free_vars();
    let mut renaming = Substitution::new();
    if !vars1.is_disjoint(&vars2) {
        let mut taken: BTreeSet<String> = vars1.union(&vars2).cloned().collect();
        for v in vars1.intersection(&vars2) {
            let mut n = 2;
            let fresh = loop {
                let candidate = format!("{}_{}", v, n);
                if !taken.contains(&candidate) {
                    break candidate;
                }
                n += 1;
            };
            taken.insert(fresh.clone());
            renaming.bind(v.clone(), FOTerm::Var(fresh));
        }
    }
    let c2_clause = renaming.apply_clause(&c2.clause);

    let lit1 = &c1.clause.literals()[i];
    let lit2 = &c2_clause.literals()[j];
    let subst = mgu_atoms(&lit1.atom, &lit2.atom)?;
    let reliability = combine_reliability(
        algebra,
        &c1.reliability,
        &c2.reliability,
        &lit1.annotation,
        &lit2.annotation,
    )?;

    let mut literals: Vec<Literal> = Vec::with_capacity(c1.clause.len() + c2_clause.len() - 2);
    for (k, lit) in c1.clause.literals().iter().enumerate() {
        if k != i {
            literals.push(subst.apply_literal(lit));
        }
    }
    for (k, lit) in c2_clause.literals().iter().enumerate() {
        if k != j {
            literals.push(subst.apply_literal(lit));
        }
    }
    Some(Resolvent {
        clause: AnnotatedClause { clause: Clause::new(literals), reliability },
        subst,
        renaming,
    })
}

#[derive(Debug, Clone)]
pub struct Factored {
    pub clause: AnnotatedClause,
    pub subst: Substitution,
}

/// Unifies the atoms at `subset` (all annotations must be identical) and
/// applies the unifier to the whole clause. Reliability is unchanged.
/// `None` when the subset is too small, atoms clash, or annotations differ.
pub fn factor(c: &AnnotatedClause, subset: &[usize]) -> Option<Factored> {
    if subset.len() < 2 {
        return None;
    }
    let lits = c.clause.literals();
    let first = &lits[subset[0]];
    if subset[1..]
        .iter()
        .any(|&k| lits[k].annotation != first.annotation)
    {
        return None;
    }
    let mut subst = Substitution::new();
    for &k in &subset[1..] {
        let a = subst.apply_atom(&first.atom);
        let b = subst.apply_atom(&lits[k].atom);
        let step = mgu_atoms(&a, &b)?;
        subst = subst.compose(&step);
    }
    Some(Factored {
        clause: AnnotatedClause {
            clause: subst.apply_clause(&c.clause),
            reliability: c.reliability.clone(),
        },
        subst,
    })
}

/// Bijective variable pairing built incrementally, with an undo trail so
/// backtracking costs no clones.
#[derive(Default)]
struct VarPairing {
    fwd: HashMap<String, String>,
    bwd: HashMap<String, String>,
    trail: Vec<String>,
}

impl VarPairing {
    fn mark(&self) -> usize {
        self.trail.len()
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().expect("trail entry");
            let b = self.fwd.remove(&a).expect("paired variable");
            self.bwd.remove(&b);
        }
    }

    fn pair(&mut self, a: &str, b: &str) -> bool {
        match (self.fwd.get(a), self.bwd.get(b)) {
            (None, None) => {
                self.fwd.insert(a.to_string(), b.to_string());
                self.bwd.insert(b.to_string(), a.to_string());
                self.trail.push(a.to_string());
                true
            }
            (Some(mapped), Some(back)) => mapped == b && back == a,
            _ => false,
        }
    }
}

fn terms_match(t1: &FOTerm, t2: &FOTerm, pairing: &mut VarPairing) -> bool {
    match (t1, t2) {
        (FOTerm::Var(a), FOTerm::Var(b)) => pairing.pair(a, b),
        (FOTerm::Const(a), FOTerm::Const(b)) => a == b,
        (FOTerm::Func(f, fa), FOTerm::Func(g, ga)) => {
            f == g
                && fa.len() == ga.len()
                && fa.iter().zip(ga).all(|(x, y)| terms_match(x, y, pairing))
        }
        _ => false,
    }
}

fn literals_match(l1: &Literal, l2: &Literal, pairing: &mut VarPairing) -> bool {
    l1.annotation == l2.annotation
        && l1.atom.pred == l2.atom.pred
        && l1.atom.args.len() == l2.atom.args.len()
        && l1
            .atom
            .args
            .iter()
            .zip(&l2.atom.args)
            .all(|(a, b)| terms_match(a, b, pairing))
}

// `order` lists c1's literal indices most-constrained first; `cands[i]`
// holds the c2 indices whose fingerprint equals literal i's, the only
// candidates a renaming could pair it with.
fn match_rest(
    lits1: &[Literal],
    lits2: &[Literal],
    order: &[usize],
    cands: &[Vec<usize>],
    step: usize,
    used: &mut Vec<bool>,
    pairing: &mut VarPairing,
) -> bool {
    if step == order.len() {
        return true;
    }
    let i = order[step];
    for &j in &cands[i] {
        if used[j] {
            continue;
        }
        let mark = pairing.mark();
        if literals_match(&lits1[i], &lits2[j], pairing) {
            used[j] = true;
            if match_rest(lits1, lits2, order, cands, step + 1, used, pairing) {
                return true;
            }
            used[j] = false;
        }
        pairing.undo(mark);
    }
    false
}

/// Renaming-invariant fingerprint of each literal: predicate, annotation,
/// term skeleton with variables shown as first-occurrence indices local to
/// the literal, and each occurrence tagged with the variable's total count
/// across the whole clause. A bijective renaming preserves all of it.
fn literal_fingerprints(c: &Clause) -> Vec<String> {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for l in c.literals() {
        for a in &l.atom.args {
            count_vars(a, &mut counts);
        }
    }
    c.literals()
        .iter()
        .map(|l| {
            let mut s = String::new();
            s.push_str(&l.atom.pred);
            let mut local: HashMap<&str, usize> = HashMap::new();
            for a in &l.atom.args {
                s.push(' ');
                erase_vars(a, &counts, &mut local, &mut s);
            }
            s.push_str(&format!(" @{:?}", l.annotation));
            s
        })
        .collect()
}

fn count_vars<'a>(t: &'a FOTerm, counts: &mut HashMap<&'a str, usize>) {
    match t {
        FOTerm::Var(v) => *counts.entry(v).or_insert(0) += 1,
        FOTerm::Const(_) => {}
        FOTerm::Func(_, args) => {
            for a in args {
                count_vars(a, counts);
            }
        }
    }
}

/// Variable-erased fingerprint; variants always share it.
fn shape_key(c: &Clause) -> String {
    let mut parts = literal_fingerprints(c);
    parts.sort();
    parts.join("|")
}

fn erase_vars<'a>(
    t: &'a FOTerm,
    counts: &HashMap<&str, usize>,
    local: &mut HashMap<&'a str, usize>,
    out: &mut String,
) {
    match t {
        FOTerm::Var(v) => {
            let next = local.len();
            let idx = *local.entry(v).or_insert(next);
            out.push_str(&format!("?{}x{}", idx, counts[v.as_str()]));
        }
        FOTerm::Const(c) => out.push_str(c),
        FOTerm::Func(f, args) => {
            out.push_str(f);
            out.push('(');
            for a in args {
                erase_vars(a, counts, local, out);
                out.push(',');
            }
            out.push(')');
        }
    }
}

/// True when the clauses are equal up to a bijective variable renaming,
/// literal order ignored. Annotations must match literal by literal;
/// reliabilities play no part here (the saturation loop compares them
/// separately when discarding).
pub fn is_variant(c1: &AnnotatedClause, c2: &AnnotatedClause) -> bool {
    let l1 = c1.clause.literals();
    let l2 = c2.clause.literals();
    if l1.len() != l2.len() {
        return false;
    }
    let f1 = literal_fingerprints(&c1.clause);
    let f2 = literal_fingerprints(&c2.clause);
    let cands: Vec<Vec<usize>> = f1
        .iter()
        .map(|f| (0..l2.len()).filter(|&j| &f2[j] == f).collect::<Vec<_>>())
        .collect();
    if cands.iter().any(Vec::is_empty) {
        return false;
    }
    let mut order: Vec<usize> = (0..l1.len()).collect();
    order.sort_by_key(|&i| cands[i].len());
    let mut used = vec![false; l2.len()];
    match_rest(l1, l2, &order, &cands, 0, &mut used, &mut VarPairing::default())
}

/// Meet of the member reliabilities.
pub fn set_reliability(
    algebra: &Algebra,
    clauses: &[AnnotatedClause],
) -> Result<TruthTerm, SaturateError> {
    let mut it = clauses.iter();
    let first = it.next().ok_or(SaturateError::EmptyClauseSet)?;
    Ok(it.fold(first.reliability.clone(), |acc, c| {
        algebra.meet(&acc, &c.reliability)
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    Input,
    Factor,
    Resolve,
}

#[derive(Debug, Clone)]
pub struct ProofNode {
    pub id: usize,
    pub clause: AnnotatedClause,
    pub rule: Rule,
    /// Resolve: [left premise, right premise]. Factor: [premise]. Input: [].
    pub premises: Vec<usize>,
    pub subst: Substitution,
    /// Resolve: (literal index in left, literal index in right).
    /// Factor: the two unified literal positions within the premise.
    pub resolved: Option<(usize, usize)>,
}

/// A refutation: the ancestor closure of the empty clause, keyed by the ids
/// the derivation assigned (gaps where non-ancestors were derived).
#[derive(Debug, Clone)]
pub struct ProofTree {
    pub nodes: BTreeMap<usize, ProofNode>,
    pub root: usize,
}

impl ProofTree {
    pub fn root_node(&self) -> &ProofNode {
        &self.nodes[&self.root]
    }

    pub fn reliability(&self) -> &TruthTerm {
        &self.root_node().clause.reliability
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Stop at the first refutation found.
    First,
    /// Keep searching within budget and return the refutation of maximal
    /// reliability; distinct refutations of one set can differ in it.
    Best,
}

#[derive(Debug, Clone)]
pub struct SearchBudget {
    pub max_clauses: usize,
    pub max_depth: usize,
    pub strategy: Strategy,
}

impl Default for SearchBudget {
    fn default() -> SearchBudget {
        SearchBudget { max_clauses: 10_000, max_depth: 100, strategy: Strategy::First }
    }
}

#[derive(Debug, Clone)]
pub enum SaturationResult {
    Refuted(ProofTree),
    Saturated,
    BudgetExhausted,
}

#[derive(Debug, Clone)]
pub struct SaturationOutcome {
    pub result: SaturationResult,
    pub warnings: Vec<String>,
    /// Inferences produced, including ones later discarded as variants.
    pub generated: usize,
    /// Clauses retained, inputs included.
    pub kept: usize,
}

struct Record {
    clause: AnnotatedClause,
    rule: Rule,
    premises: Vec<usize>,
    subst: Substitution,
    resolved: Option<(usize, usize)>,
    depth: usize,
}

fn extract(records: &[Record], root: usize) -> ProofTree {
    let mut nodes = BTreeMap::new();
    let mut stack = vec![root];
    while let Some(id) = stack.pop() {
        if nodes.contains_key(&id) {
            continue;
        }
        let r = &records[id];
        nodes.insert(
            id,
            ProofNode {
                id,
                clause: r.clause.clone(),
                rule: r.rule,
                premises: r.premises.clone(),
                subst: r.subst.clone(),
                resolved: r.resolved,
            },
        );
        stack.extend(&r.premises);
    }
    ProofTree { nodes, root }
}

fn input_records(inputs: &[AnnotatedClause]) -> Vec<Record> {
    inputs
        .iter()
        .map(|c| Record {
            clause: c.clone(),
            rule: Rule::Input,
            premises: Vec::new(),
            subst: Substitution::new(),
            resolved: None,
            depth: 0,
        })
        .collect()
}

/// Exhaustive given-clause saturation. Clauses are processed in insertion
/// order; each given clause contributes its binary factors and its
/// resolvents against every clause up to and including itself (so
/// resolvents of factors arise transitively). A new clause that is a
/// variant of a retained one with reliability not above it is discarded.
/// Deterministic: identical input and budget give identical outcomes.
pub fn saturate(
    algebra: &Algebra,
    inputs: &[AnnotatedClause],
    budget: &SearchBudget,
) -> SaturationOutcome {
    let mut warnings = Vec::new();
    let mut records = input_records(inputs);
    let mut by_shape: HashMap<String, Vec<usize>> = HashMap::new();
    for (id, r) in records.iter().enumerate() {
        by_shape.entry(shape_key(&r.clause.clause)).or_default().push(id);
    }
    let mut generated = 0usize;
    let mut best: Option<usize> = None;

    let note_empty = |records: &Vec<Record>, id: usize, best: &mut Option<usize>| -> bool {
        // Returns true when the caller should stop immediately.
        match budget.strategy {
            Strategy::First => true,
            Strategy::Best => {
                let better = match *best {
                    None => true,
                    Some(b) => {
                        algebra.cmp_terms(
                            &records[id].clause.reliability,
                            &records[b].clause.reliability,
                        ) == Ordering::Greater
                    }
                };
                if better {
                    *best = Some(id);
                }
                false
            }
        }
    };

    for id in 0..records.len() {
        if records[id].clause.clause.is_empty() && note_empty(&records, id, &mut best) {
            return SaturationOutcome {
                result: SaturationResult::Refuted(extract(&records, id)),
                warnings,
                generated,
                kept: records.len(),
            };
        }
    }

    let mut cursor = 0;
    let mut out_of_budget = false;
    'main: while cursor < records.len() {
        let given = records[cursor].clause.clone();
        let given_depth = records[cursor].depth;
        // Every inference from this clause would exceed the depth budget.
        if given_depth >= budget.max_depth {
            cursor += 1;
            continue;
        }
        let mut batch: Vec<Record> = Vec::new();

        for i in 0..given.clause.len() {
            for j in (i + 1)..given.clause.len() {
                if let Some(f) = factor(&given, &[i, j]) {
                    batch.push(Record {
                        clause: f.clause,
                        rule: Rule::Factor,
                        premises: vec![cursor],
                        subst: f.subst,
                        resolved: Some((i, j)),
                        depth: given_depth + 1,
                    });
                }
            }
        }
        for partner in 0..=cursor {
            let partner_clause = records[partner].clause.clone();
            let partner_depth = records[partner].depth;
            if given_depth.max(partner_depth) >= budget.max_depth {
                continue;
            }
            for i in 0..given.clause.len() {
                for j in 0..partner_clause.clause.len() {
                    if let Some(r) = resolve(algebra, &given, i, &partner_clause, j) {
                        batch.push(Record {
                            clause: r.clause,
                            rule: Rule::Resolve,
                            premises: vec![cursor, partner],
                            subst: r.subst,
                            resolved: Some((i, j)),
                            depth: given_depth.max(partner_depth) + 1,
                        });
                    }
                }
            }
        }
        generated += batch.len();
        // Ties in insertion order break by serialization, so generation
        // order inside one given-clause round cannot matter.
        let mut keyed: Vec<(String, Record)> = batch
            .into_iter()
            .map(|r| (print_annotated(algebra, &r.clause), r))
            .collect();
        keyed.sort_by(|(kx, x), (ky, y)| {
            kx.cmp(ky)
                .then_with(|| x.premises.cmp(&y.premises))
                .then_with(|| x.resolved.cmp(&y.resolved))
        });

        for (_, rec) in keyed {
            if rec.depth > budget.max_depth {
                continue;
            }
            let key = shape_key(&rec.clause.clause);
            let dominated = by_shape.get(&key).is_some_and(|ids| {
                ids.iter().any(|&old| {
                    is_variant(&rec.clause, &records[old].clause)
                        && algebra.cmp_terms(
                            &rec.clause.reliability,
                            &records[old].clause.reliability,
                        ) != Ordering::Greater
                })
            });
            if dominated {
                continue;
            }
            if records.len() >= budget.max_clauses {
                out_of_budget = true;
                break 'main;
            }
            let id = records.len();
            if rec.clause.reliability == TruthTerm::Middle {
                warnings.push(format!(
                    "derived clause {} has reliability exactly W",
                    print_annotated(algebra, &rec.clause)
                ));
            }
            let is_empty = rec.clause.clause.is_empty();
            by_shape.entry(key).or_default().push(id);
            records.push(rec);
            if is_empty && note_empty(&records, id, &mut best) {
                return SaturationOutcome {
                    result: SaturationResult::Refuted(extract(&records, id)),
                    warnings,
                    generated,
                    kept: records.len(),
                };
            }
        }
        cursor += 1;
    }

    let result = match best {
        Some(id) => SaturationResult::Refuted(extract(&records, id)),
        None if out_of_budget => SaturationResult::BudgetExhausted,
        None => SaturationResult::Saturated,
    };
    SaturationOutcome { result, warnings, generated, kept: records.len() }
}

/// One scripted inference for [`replay`].
#[derive(Debug, Clone, Copy)]
pub enum ReplayStep {
    Factor { premise: usize, literals: (usize, usize) },
    Resolve { left: usize, right: usize, left_lit: usize, right_lit: usize },
}

/// Executes a fixed inference script over the input clauses. Step `k`
/// creates node `inputs.len() + k`; the last step's conclusion is the root.
/// Fails loudly when any step is out of range or inapplicable.
pub fn replay(
    algebra: &Algebra,
    inputs: &[AnnotatedClause],
    steps: &[ReplayStep],
) -> Result<ProofTree, SaturateError> {
    let mut records = input_records(inputs);
    for (k, step) in steps.iter().enumerate() {
        let err = |reason: String| SaturateError::Replay { step: k, reason };
        let get = |records: &[Record], id: usize, lit: usize| -> Result<(), SaturateError> {
            let r = records
                .get(id)
                .ok_or_else(|| err(format!("no clause with id {}", id)))?;
            if lit >= r.clause.clause.len() {
                return Err(err(format!("clause {} has no literal {}", id, lit)));
            }
            Ok(())
        };
        let record = match *step {
            ReplayStep::Factor { premise, literals } => {
                get(&records, premise, literals.0)?;
                get(&records, premise, literals.1)?;
                let f = factor(&records[premise].clause, &[literals.0, literals.1])
                    .ok_or_else(|| err("factoring inapplicable".into()))?;
                Record {
                    clause: f.clause,
                    rule: Rule::Factor,
                    premises: vec![premise],
                    subst: f.subst,
                    resolved: Some(literals),
                    depth: records[premise].depth + 1,
                }
            }
            ReplayStep::Resolve { left, right, left_lit, right_lit } => {
                get(&records, left, left_lit)?;
                get(&records, right, right_lit)?;
                let r = resolve(algebra, &records[left].clause, left_lit, &records[right].clause, right_lit)
                    .ok_or_else(|| {
                        err("resolution inapplicable (no unifier or side condition failed)".into())
                    })?;
                Record {
                    clause: r.clause,
                    rule: Rule::Resolve,
                    premises: vec![left, right],
                    subst: r.subst,
                    resolved: Some((left_lit, right_lit)),
                    depth: records[left].depth.max(records[right].depth) + 1,
                }
            }
        };
        records.push(record);
    }
    if steps.is_empty() {
        return Err(SaturateError::Replay { step: 0, reason: "empty script".into() });
    }
    Ok(extract(&records, records.len() - 1))
}

fn rule_name(rule: Rule) -> &'static str {
    match rule {
        Rule::Input => "input",
        Rule::Factor => "factor",
        Rule::Resolve => "resolve",
    }
}

fn subst_json(s: &Substitution) -> Value {
    let mut m = Map::new();
    for (v, t) in s.iter() {
        m.insert(v.clone(), json!(t.to_string()));
    }
    Value::Object(m)
}

fn tree_json(algebra: &Algebra, tree: &ProofTree) -> Value {
    let nodes: Vec<Value> = tree
        .nodes
        .values()
        .map(|n| {
            let mut m = Map::new();
            m.insert("id".into(), json!(n.id));
            m.insert("rule".into(), json!(rule_name(n.rule)));
            m.insert("clause".into(), json!(print_clause(algebra, &n.clause.clause)));
            m.insert("rel".into(), json!(algebra.print_term(&n.clause.reliability)));
            if n.rule != Rule::Input {
                m.insert("premises".into(), json!(n.premises));
                m.insert("subst".into(), subst_json(&n.subst));
                if let Some((i, j)) = n.resolved {
                    m.insert("resolved".into(), json!([i, j]));
                }
            }
            Value::Object(m)
        })
        .collect();
    json!({
        "result": "unsat",
        "reliability": algebra.print_term(tree.reliability()),
        "nodes": nodes,
        "root": tree.root,
    })
}

/// Machine-readable proof object. Refutations carry the full ancestor tree;
/// saturation maps to `"sat"`, an exhausted budget to `"unknown"`.
pub fn proof_json(algebra: &Algebra, outcome: &SaturationOutcome) -> Value {
    match &outcome.result {
        SaturationResult::Refuted(tree) => tree_json(algebra, tree),
        SaturationResult::Saturated => {
            json!({"result": "sat", "reliability": null, "nodes": [], "root": null})
        }
        SaturationResult::BudgetExhausted => {
            json!({"result": "unknown", "reliability": null, "nodes": [], "root": null})
        }
    }
}

/// Structural validation of a proof object: required keys, node shape,
/// premise ids that exist and precede their node, a root that exists, and
/// an empty-clause root for `"unsat"`.
pub fn validate_proof_json(v: &Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("proof must be an object")?;
    for key in ["result", "reliability", "nodes", "root"] {
        if !obj.contains_key(key) {
            return Err(format!("missing key \"{}\"", key));
        }
    }
    let result = obj["result"].as_str().ok_or("\"result\" must be a string")?;
    match result {
        "sat" | "unknown" => {
            if !obj["reliability"].is_null() || !obj["root"].is_null() {
                return Err(format!("\"{}\" proofs carry null reliability and root", result));
            }
            let nodes = obj["nodes"].as_array().ok_or("\"nodes\" must be an array")?;
            if !nodes.is_empty() {
                return Err(format!("\"{}\" proofs carry no nodes", result));
            }
            Ok(())
        }
        "unsat" => {
            obj["reliability"].as_str().ok_or("\"reliability\" must be a string")?;
            let nodes = obj["nodes"].as_array().ok_or("\"nodes\" must be an array")?;
            if nodes.is_empty() {
                return Err("\"unsat\" proof has no nodes".into());
            }
            let mut ids = BTreeSet::new();
            let mut clauses = BTreeMap::new();
            for n in nodes {
                let n = n.as_object().ok_or("node must be an object")?;
                let id = n
                    .get("id")
                    .and_then(Value::as_u64)
                    .ok_or("node \"id\" must be a non-negative integer")? as usize;
                if !ids.insert(id) {
                    return Err(format!("duplicate node id {}", id));
                }
                let rule = n
                    .get("rule")
                    .and_then(Value::as_str)
                    .ok_or("node \"rule\" must be a string")?;
                let clause = n
                    .get("clause")
                    .and_then(Value::as_str)
                    .ok_or("node \"clause\" must be a string")?;
                clauses.insert(id, clause.to_string());
                n.get("rel")
                    .and_then(Value::as_str)
                    .ok_or("node \"rel\" must be a string")?;
                let expected_premises = match rule {
                    "input" => continue,
                    "factor" => 1,
                    "resolve" => 2,
                    other => return Err(format!("unknown rule \"{}\"", other)),
                };
                let premises = n
                    .get("premises")
                    .and_then(Value::as_array)
                    .ok_or_else(|| format!("\"{}\" node needs premises", rule))?;
                if premises.len() != expected_premises {
                    return Err(format!(
                        "\"{}\" node {} has {} premises",
                        rule,
                        id,
                        premises.len()
                    ));
                }
                for p in premises {
                    let p = p.as_u64().ok_or("premise ids must be integers")? as usize;
                    if p >= id {
                        return Err(format!("node {} uses premise {} that does not precede it", id, p));
                    }
                    if !ids.contains(&p) {
                        return Err(format!("node {} uses unknown premise {}", id, p));
                    }
                }
                let resolved = n
                    .get("resolved")
                    .and_then(Value::as_array)
                    .ok_or_else(|| format!("\"{}\" node needs resolved literal indices", rule))?;
                if resolved.len() != 2 || resolved.iter().any(|x| !x.is_u64()) {
                    return Err("\"resolved\" must be two literal indices".into());
                }
                let subst = n
                    .get("subst")
                    .and_then(Value::as_object)
                    .ok_or_else(|| format!("\"{}\" node needs a subst object", rule))?;
                if subst.values().any(|t| !t.is_string()) {
                    return Err("subst values must be term strings".into());
                }
            }
            let root = obj["root"]
                .as_u64()
                .ok_or("\"root\" must be an integer id")? as usize;
            if !ids.contains(&root) {
                return Err(format!("root {} is not a node", root));
            }
            if clauses[&root] != "[]" {
                return Err("root of an \"unsat\" proof must be the empty clause".into());
            }
            Ok(())
        }
        other => Err(format!("unknown result \"{}\"", other)),
    }
}

/// Indented textual proof: the conclusion first, each premise one level
/// deeper. Shared input nodes are repeated where they are used.
pub fn render_proof_text(algebra: &Algebra, tree: &ProofTree) -> String {
    fn line(algebra: &Algebra, node: &ProofNode) -> String {
        let body = print_annotated(algebra, &node.clause);
        match node.rule {
            Rule::Input => format!("[{}] {}  (input)", node.id, body),
            Rule::Factor => {
                let (i, j) = node.resolved.unwrap_or_default();
                format!(
                    "[{}] {}  (factor {} on literals {},{} via {})",
                    node.id, body, node.premises[0], i, j, node.subst
                )
            }
            Rule::Resolve => {
                let (i, j) = node.resolved.unwrap_or_default();
                format!(
                    "[{}] {}  (resolve {}:{} with {}:{} via {})",
                    node.id, body, node.premises[0], i, node.premises[1], j, node.subst
                )
            }
        }
    }
    fn walk(algebra: &Algebra, tree: &ProofTree, id: usize, depth: usize, out: &mut String) {
        let node = &tree.nodes[&id];
        out.push_str(&"  ".repeat(depth));
        out.push_str(&line(algebra, node));
        out.push('\n');
        for &p in &node.premises {
            walk(algebra, tree, p, depth + 1, out);
        }
    }
    let mut out = String::new();
    walk(algebra, tree, tree.root, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_problem;

    fn std() -> Algebra {
        Algebra::standard()
    }

    fn input(src: &str) -> Vec<AnnotatedClause> {
        parse_problem(src, &std()).unwrap().clauses
    }

    fn t(s: &str) -> TruthTerm {
        std().parse_term(s).unwrap()
    }

    #[test]
    fn reliability_combination_triples() {
        let a = std();
        let c = |a1, a2, x, y| combine_reliability(&a, &t(a1), &t(a2), &t(x), &t(y));
        assert_eq!(c("Top", "Top", "MFalse", "VTrue"), Some(t("MTrue")));
        assert_eq!(c("MTrue", "Top", "MFalse", "LTrue"), Some(t("LTrue")));
        assert_eq!(c("MTrue", "Top", "MFalse", "True"), Some(t("True")));
        // Side conditions: both annotations on one side of W fail.
        assert_eq!(c("Top", "Top", "VTrue", "MTrue"), None);
        assert_eq!(c("Top", "Top", "VFalse", "MFalse"), None);
    }

    #[test]
    fn resolve_first_tree_step() {
        let a = std();
        let cs = input(
            "clause A(?x):MFalse | B(?z):MFalse | C(?x):PTrue.\n\
             clause A(a):VTrue.",
        );
        let r = resolve(&a, &cs[0], 0, &cs[1], 0).unwrap();
        assert_eq!(
            print_annotated(&a, &r.clause),
            "B(?z):MFalse | C(a):PTrue @ MTrue"
        );
        assert_eq!(r.subst.to_string(), "[a/?x]");
        assert!(r.renaming.is_empty());
    }

    #[test]
    fn resolve_carries_lower_premise_reliability() {
        let a = std();
        let mut cs = input(
            "clause C(a):PTrue.\n\
             clause C(?y):MFalse | D(?y):VMTrue.",
        );
        cs[0].reliability = t("LTrue");
        let r = resolve(&a, &cs[0], 0, &cs[1], 0).unwrap();
        assert_eq!(print_annotated(&a, &r.clause), "D(a):VMTrue @ LTrue");
    }

    #[test]
    fn resolve_requires_opposite_sides_of_w() {
        let a = std();
        let cs = input("clause A(a):VTrue.\nclause A(a):MTrue.");
        assert!(resolve(&a, &cs[0], 0, &cs[1], 0).is_none());
    }

    #[test]
    fn resolve_renames_shared_variables() {
        let a = std();
        let cs = input("clause A(?x):True.\nclause A(f(?x)):False.");
        // Without renaming the occurs check would reject this pair.
        let r = resolve(&a, &cs[0], 0, &cs[1], 0).unwrap();
        assert!(r.clause.clause.is_empty());
        assert_eq!(r.clause.reliability, t("True"));
        assert!(!r.renaming.is_empty());
    }

    #[test]
    fn factoring_requires_identical_annotations() {
        let a = std();
        let cs = input(
            "clause P(?x):True | P(a):True.\n\
             clause P(?x):True | P(a):MTrue.\n\
             clause P(?x):True | Q(?x):True.",
        );
        let f = factor(&cs[0], &[0, 1]).unwrap();
        assert_eq!(print_annotated(&a, &f.clause), "P(a):True @ Top");
        assert!(factor(&cs[1], &[0, 1]).is_none());
        assert!(factor(&cs[2], &[0, 1]).is_none());
        assert!(factor(&cs[0], &[0]).is_none());
    }

    #[test]
    fn variant_detection() {
        let cs = input(
            "clause A(?x):True.\n\
             clause A(?y):True.\n\
             clause A(a):True.\n\
             clause A(?x):MTrue.\n\
             clause A(?x):True | B(?x):True.\n\
             clause A(?u):True | B(?v):True.",
        );
        assert!(is_variant(&cs[0], &cs[1]));
        assert!(!is_variant(&cs[0], &cs[2]));
        assert!(!is_variant(&cs[0], &cs[3]));
        // The renaming must be one consistent bijection.
        assert!(!is_variant(&cs[4], &cs[5]));
        // Reliability is ignored by variant-ness itself.
        let mut high = cs[0].clone();
        high.reliability = t("MTrue");
        assert!(is_variant(&cs[0], &high));
    }

    #[test]
    fn set_reliability_is_the_meet() {
        let a = std();
        let mut cs = input("clause A:True.\nclause B:True.\nclause C:True.");
        cs[1].reliability = t("MTrue");
        cs[2].reliability = t("LTrue");
        assert_eq!(set_reliability(&a, &cs).unwrap(), t("LTrue"));
        assert_eq!(set_reliability(&a, &cs[..1]).unwrap(), t("Top"));
        assert_eq!(set_reliability(&a, &[]), Err(SaturateError::EmptyClauseSet));
    }

    #[test]
    fn saturate_refutes_a_unit_conflict() {
        let a = std();
        let cs = input("clause A(a):True.\nclause A(a):False.");
        let out = saturate(&a, &cs, &SearchBudget::default());
        match out.result {
            SaturationResult::Refuted(tree) => {
                assert_eq!(tree.reliability(), &t("True"));
                assert!(tree.root_node().clause.clause.is_empty());
                assert_eq!(tree.nodes.len(), 3);
            }
            _ => panic!("expected refutation"),
        }
        assert!(out.warnings.is_empty());
    }

    #[test]
    fn saturate_reports_saturation_and_budget() {
        let a = std();
        let cs = input("clause A(a):VTrue.");
        assert!(matches!(
            saturate(&a, &cs, &SearchBudget::default()).result,
            SaturationResult::Saturated
        ));

        // P(x) resolves against P(f(x)) forever; a two-clause budget stops.
        let cs = input("clause P(?x):True | P(f(?x)):False.");
        let budget = SearchBudget { max_clauses: 2, ..SearchBudget::default() };
        assert!(matches!(
            saturate(&a, &cs, &budget).result,
            SaturationResult::BudgetExhausted
        ));
    }

    #[test]
    fn best_strategy_beats_first_refutation_found() {
        let a = std();
        // FIFO finds the MTrue refutation first; the VTrue one needs the
        // later clause.
        let cs = input("clause A(a):MFalse.\nclause A(a):VTrue.\nclause A(a):VFalse.");
        let first = saturate(
            &a,
            &cs,
            &SearchBudget { strategy: Strategy::First, ..Default::default() },
        );
        let best = saturate(
            &a,
            &cs,
            &SearchBudget { strategy: Strategy::Best, ..Default::default() },
        );
        match (first.result, best.result) {
            (SaturationResult::Refuted(f), SaturationResult::Refuted(b)) => {
                assert_eq!(f.reliability(), &t("MTrue"));
                assert_eq!(b.reliability(), &t("VTrue"));
            }
            _ => panic!("expected refutations"),
        }
    }

    #[test]
    fn reliability_w_is_accepted_with_a_warning() {
        let a = std();
        let cs = input("clause A(a):W.\nclause A(a):MFalse.");
        let out = saturate(&a, &cs, &SearchBudget::default());
        match out.result {
            SaturationResult::Refuted(tree) => assert_eq!(tree.reliability(), &TruthTerm::Middle),
            _ => panic!("expected refutation"),
        }
        assert!(out.warnings.iter().any(|w| w.contains("exactly W")));
    }

    #[test]
    fn saturation_is_deterministic() {
        let a = std();
        let cs = input(
            "clause A(?x):MFalse | B(?z):MFalse | C(?x):PTrue.\n\
             clause C(?y):MFalse | D(?y):VMTrue.\n\
             clause A(a):VTrue.\n\
             clause B(?z):VTrue.",
        );
        let budget = SearchBudget { max_clauses: 200, strategy: Strategy::Best, ..Default::default() };
        let one = proof_json(&a, &saturate(&a, &cs, &budget));
        let two = proof_json(&a, &saturate(&a, &cs, &budget));
        assert_eq!(one, two);
    }

    #[test]
    fn replay_runs_scripts_and_rejects_bad_steps() {
        let a = std();
        let cs = input("clause A(a):True | B(a):True.\nclause A(a):False.\nclause B(a):False.");
        let tree = replay(
            &a,
            &cs,
            &[
                ReplayStep::Resolve { left: 0, right: 1, left_lit: 0, right_lit: 0 },
                ReplayStep::Resolve { left: 3, right: 2, left_lit: 0, right_lit: 0 },
            ],
        )
        .unwrap();
        assert!(tree.root_node().clause.clause.is_empty());
        assert_eq!(tree.root, 4);

        let err = replay(
            &a,
            &cs,
            &[ReplayStep::Resolve { left: 1, right: 1, left_lit: 0, right_lit: 0 }],
        )
        .unwrap_err();
        assert!(matches!(err, SaturateError::Replay { step: 0, .. }));
        let err = replay(
            &a,
            &cs,
            &[ReplayStep::Resolve { left: 0, right: 9, left_lit: 0, right_lit: 0 }],
        )
        .unwrap_err();
        assert!(matches!(err, SaturateError::Replay { step: 0, .. }));
    }

    #[test]
    fn proof_json_shape_and_validation() {
        let a = std();
        let cs = input("clause A(?x):True.\nclause A(a):False.");
        let out = saturate(&a, &cs, &SearchBudget::default());
        let v = proof_json(&a, &out);
        validate_proof_json(&v).unwrap();
        assert_eq!(v["result"], "unsat");
        assert_eq!(v["reliability"], "True");
        let nodes = v["nodes"].as_array().unwrap();
        assert_eq!(nodes[0]["rule"], "input");
        assert!(nodes[0].get("premises").is_none());
        let last = nodes.last().unwrap();
        assert_eq!(last["rule"], "resolve");
        assert_eq!(last["clause"], "[]");
        assert_eq!(last["subst"]["x"], "a");

        // Saturated problems serialize as "sat".
        let sat = proof_json(&a, &saturate(&a, &input("clause A:True."), &SearchBudget::default()));
        validate_proof_json(&sat).unwrap();
        assert_eq!(sat["result"], "sat");

        // Tampered proofs fail validation.
        let mut bad = v.clone();
        bad["root"] = json!(999);
        assert!(validate_proof_json(&bad).is_err());
        let mut bad = v.clone();
        bad["nodes"][0]["rule"] = json!("guess");
        assert!(validate_proof_json(&bad).is_err());
    }

    #[test]
    fn text_rendering_walks_the_tree() {
        let a = std();
        let cs = input("clause A(a):True.\nclause A(a):False.");
        let out = saturate(&a, &cs, &SearchBudget::default());
        if let SaturationResult::Refuted(tree) = out.result {
            let text = render_proof_text(&a, &tree);
            assert!(text.starts_with("[2] [] @ True  (resolve"));
            assert!(text.contains("\n  [1] "));
            assert!(text.contains("(input)"));
        } else {
            panic!("expected refutation");
        }
    }
}
