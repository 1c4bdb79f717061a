//! Text formats: algebra configurations and problem files.
//!
//! A problem file holds an optional `algebra { ... }` block followed by
//! `clause` and `formula` statements, each ended by `.`. Comments run from
//! `#` to end of line. Predicates start uppercase, functions and constants
//! lowercase, variables are written `?name`. Names of the shape `sk<N>` are
//! reserved for Skolemization and rejected on input.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraConfig, TruthTerm};
use crate::syntax::{AnnotatedClause, Atom, Clause, FOTerm, Formula, Literal};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{file}:{line}:{col}: {message}")]
pub struct ParseError {
    pub file: String,
    pub line: u32,
    pub col: u32,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Pipe,
    At,
    Colon,
    Amp,
    Tilde,
    Arrow,
    DArrow,
    Less,
    Plus,
    Minus,
    Star,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{}`", s),
            Tok::Var(v) => return write!(f, "`?{}`", v),
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::Comma => "`,`",
            Tok::Dot => "`.`",
            Tok::Pipe => "`|`",
            Tok::At => "`@`",
            Tok::Colon => "`:`",
            Tok::Amp => "`&`",
            Tok::Tilde => "`~`",
            Tok::Arrow => "`->`",
            Tok::DArrow => "`<->`",
            Tok::Less => "`<`",
            Tok::Plus => "`+`",
            Tok::Minus => "`-`",
            Tok::Star => "`*`",
            Tok::Eof => "end of input",
        };
        write!(f, "{}", s)
    }
}

struct Spanned {
    tok: Tok,
    line: u32,
    col: u32,
}

fn lex(file: &str, src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line: u32 = 1;
    let mut col: u32 = 1;
    let mut chars = src.chars().peekable();
    macro_rules! push {
        ($tok:expr, $l:expr, $c:expr) => {
            out.push(Spanned { tok: $tok, line: $l, col: $c })
        };
    }
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump(&mut chars);
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
            }
            '(' => { bump(&mut chars); push!(Tok::LParen, l0, c0); }
            ')' => { bump(&mut chars); push!(Tok::RParen, l0, c0); }
            '{' => { bump(&mut chars); push!(Tok::LBrace, l0, c0); }
            '}' => { bump(&mut chars); push!(Tok::RBrace, l0, c0); }
            ',' => { bump(&mut chars); push!(Tok::Comma, l0, c0); }
            '.' => { bump(&mut chars); push!(Tok::Dot, l0, c0); }
            '|' => { bump(&mut chars); push!(Tok::Pipe, l0, c0); }
            '@' => { bump(&mut chars); push!(Tok::At, l0, c0); }
            ':' => { bump(&mut chars); push!(Tok::Colon, l0, c0); }
            '&' => { bump(&mut chars); push!(Tok::Amp, l0, c0); }
            '~' => { bump(&mut chars); push!(Tok::Tilde, l0, c0); }
            '+' => { bump(&mut chars); push!(Tok::Plus, l0, c0); }
            '*' => { bump(&mut chars); push!(Tok::Star, l0, c0); }
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    push!(Tok::Arrow, l0, c0);
                } else {
                    push!(Tok::Minus, l0, c0);
                }
            }
            '<' => {
                bump(&mut chars);
                if chars.peek() == Some(&'-') {
                    bump(&mut chars);
                    if chars.peek() == Some(&'>') {
                        bump(&mut chars);
                        push!(Tok::DArrow, l0, c0);
                    } else {
                        return Err(ParseError {
                            file: file.into(),
                            line: l0,
                            col: c0,
                            message: "expected `<->`".into(),
                        });
                    }
                } else {
                    push!(Tok::Less, l0, c0);
                }
            }
            '?' => {
                bump(&mut chars);
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                if name.is_empty() {
                    return Err(ParseError {
                        file: file.into(),
                        line: l0,
                        col: c0,
                        message: "expected variable name after `?`".into(),
                    });
                }
                push!(Tok::Var(name), l0, c0);
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                push!(Tok::Ident(name), l0, c0);
            }
            c => {
                return Err(ParseError {
                    file: file.into(),
                    line: l0,
                    col: c0,
                    message: format!("unexpected character `{}`", c),
                });
            }
        }
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

fn is_skolem_name(s: &str) -> bool {
    s.strip_prefix("sk")
        .map(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
        .unwrap_or(false)
}

/// A parsed problem: the algebra in force plus its statements.
#[derive(Debug, Clone)]
pub struct Problem {
    pub algebra: Algebra,
    pub clauses: Vec<AnnotatedClause>,
    pub formulas: Vec<Formula>,
}

/// Incremental problem parser. Feeding several files accumulates their
/// statements under one symbol table, so arities stay consistent across the
/// whole problem. An `algebra { ... }` block is only allowed before the
/// first statement.
pub struct ProblemParser {
    algebra: Algebra,
    statements_seen: bool,
    allow_skolem: bool,
    preds: HashMap<String, usize>,
    funcs: HashMap<String, usize>,
    clauses: Vec<AnnotatedClause>,
    formulas: Vec<Formula>,
}

impl ProblemParser {
    pub fn new(default_algebra: &Algebra) -> ProblemParser {
        ProblemParser {
            algebra: default_algebra.clone(),
            statements_seen: false,
            allow_skolem: false,
            preds: HashMap::new(),
            funcs: HashMap::new(),
            clauses: Vec::new(),
            formulas: Vec::new(),
        }
    }

    pub fn feed(&mut self, file: &str, src: &str) -> Result<(), ParseError> {
        let toks = lex(file, src)?;
        let mut p = Parser { file, toks, pos: 0, owner: self };
        p.problem()
    }

    pub fn finish(self) -> Problem {
        Problem {
            algebra: self.algebra,
            clauses: self.clauses,
            formulas: self.formulas,
        }
    }
}

/// One-shot convenience over [`ProblemParser`].
pub fn parse_problem(src: &str, default_algebra: &Algebra) -> Result<Problem, ParseError> {
    let mut pp = ProblemParser::new(default_algebra);
    pp.feed("<input>", src)?;
    Ok(pp.finish())
}

/// Parses an algebra configuration file: a single `algebra { ... }` block.
pub fn parse_algebra(file: &str, src: &str) -> Result<Algebra, ParseError> {
    let toks = lex(file, src)?;
    let mut pp = ProblemParser::new(&Algebra::standard());
    let mut p = Parser { file, toks, pos: 0, owner: &mut pp };
    p.expect_keyword("algebra")?;
    let algebra = p.algebra_block()?;
    p.expect(Tok::Eof)?;
    Ok(algebra)
}

fn ground_parser<'a>(file: &'a str, src: &str, pp: &'a mut ProblemParser) -> Result<Parser<'a>, ParseError> {
    pp.allow_skolem = true;
    let toks = lex(file, src)?;
    Ok(Parser { file, toks, pos: 0, owner: pp })
}

fn require_ground(file: &str, what: &str, ground: bool) -> Result<(), ParseError> {
    if ground {
        Ok(())
    } else {
        Err(ParseError {
            file: file.into(),
            line: 1,
            col: 1,
            message: format!("{} must be ground (no variables)", what),
        })
    }
}

/// Parses one ground term, e.g. `f(a, g(b))`. Skolem names are permitted:
/// interpretations routinely mention terms the clausifier introduced.
pub fn parse_ground_term(file: &str, src: &str) -> Result<FOTerm, ParseError> {
    let mut pp = ProblemParser::new(&Algebra::standard());
    let mut p = ground_parser(file, src, &mut pp)?;
    let t = p.fo_term()?;
    p.expect(Tok::Eof)?;
    require_ground(file, "term", t.is_ground())?;
    Ok(t)
}

/// Parses a comma-separated list of ground terms, e.g. `a,f(a, b)`. Commas
/// inside argument lists nest; only top-level commas separate entries.
pub fn parse_ground_terms(file: &str, src: &str) -> Result<Vec<FOTerm>, ParseError> {
    let mut pp = ProblemParser::new(&Algebra::standard());
    let mut p = ground_parser(file, src, &mut pp)?;
    let mut out = vec![p.fo_term()?];
    while *p.peek() == Tok::Comma {
        p.next();
        out.push(p.fo_term()?);
    }
    p.expect(Tok::Eof)?;
    require_ground(file, "term list", out.iter().all(FOTerm::is_ground))?;
    Ok(out)
}

/// Parses one ground atom, e.g. `P(a, f(b))`.
pub fn parse_ground_atom(file: &str, src: &str) -> Result<Atom, ParseError> {
    let mut pp = ProblemParser::new(&Algebra::standard());
    let mut p = ground_parser(file, src, &mut pp)?;
    let a = p.atom()?;
    p.expect(Tok::Eof)?;
    require_ground(file, "atom", a.is_ground())?;
    Ok(a)
}

struct Parser<'a> {
    file: &'a str,
    toks: Vec<Spanned>,
    pos: usize,
    owner: &'a mut ProblemParser,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, message: impl Into<String>) -> ParseError {
        let s = &self.toks[self.pos.min(self.toks.len() - 1)];
        ParseError {
            file: self.file.into(),
            line: s.line,
            col: s.col,
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.err_here(format!("expected {}, found {}", tok, self.peek())))
        }
    }

    fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            other => Err(self.err_here(format!("expected a name, found {}", other))),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.next();
                Ok(())
            }
            other => Err(self.err_here(format!("expected `{}`, found {}", kw, other))),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn problem(&mut self) -> Result<(), ParseError> {
        if self.at_keyword("algebra") {
            if self.owner.statements_seen {
                return Err(
                    self.err_here("algebra block must come before any statement in the problem")
                );
            }
            self.next();
            self.owner.algebra = self.algebra_block()?;
        }
        loop {
            if self.at_keyword("clause") {
                self.next();
                self.owner.statements_seen = true;
                let c = self.clause_statement()?;
                self.owner.clauses.push(c);
            } else if self.at_keyword("formula") {
                self.next();
                self.owner.statements_seen = true;
                let f = self.formula_statement()?;
                self.owner.formulas.push(f);
            } else if self.at_keyword("algebra") {
                return Err(
                    self.err_here("algebra block must come before any statement in the problem")
                );
            } else if *self.peek() == Tok::Eof {
                return Ok(());
            } else {
                return Err(self.err_here(format!(
                    "expected `clause` or `formula`, found {}",
                    self.peek()
                )));
            }
        }
    }

    fn algebra_block(&mut self) -> Result<Algebra, ParseError> {
        let start = self.pos;
        self.expect(Tok::LBrace)?;
        let mut cfg = AlgebraConfig::default();
        let mut seen_generators = false;
        let mut seen_positive = false;
        let mut seen_negative = false;
        while *self.peek() != Tok::RBrace {
            let key = self.expect_ident()?;
            match key.as_str() {
                "generators" => {
                    self.expect(Tok::Colon)?;
                    cfg.negative_generator = self.expect_ident()?;
                    self.expect(Tok::Comma)?;
                    cfg.positive_generator = self.expect_ident()?;
                    seen_generators = true;
                }
                "positive" => {
                    self.expect(Tok::Colon)?;
                    cfg.plus_hedges = self.hedge_chain()?;
                    seen_positive = true;
                }
                "negative" => {
                    self.expect(Tok::Colon)?;
                    cfg.minus_hedges = self.hedge_chain()?;
                    seen_negative = true;
                }
                "sign" => {
                    self.expect(Tok::LBrace)?;
                    while *self.peek() != Tok::RBrace {
                        let hedge = self.expect_ident()?;
                        self.expect(Tok::Colon)?;
                        let s = match self.next() {
                            Tok::Plus => 1,
                            Tok::Minus => -1,
                            other => {
                                return Err(self.err_here(format!(
                                    "expected `+` or `-` after `{}:`, found {}",
                                    hedge, other
                                )))
                            }
                        };
                        let target = match self.next() {
                            Tok::Star => None,
                            Tok::Ident(h) => Some(h),
                            other => {
                                return Err(self.err_here(format!(
                                    "expected a hedge name or `*`, found {}",
                                    other
                                )))
                            }
                        };
                        cfg.sign_entries.push((hedge, target, s));
                    }
                    self.expect(Tok::RBrace)?;
                }
                other => {
                    return Err(self.err_here(format!(
                        "unknown algebra key `{}` (expected generators, positive, negative, sign)",
                        other
                    )))
                }
            }
        }
        self.expect(Tok::RBrace)?;
        if !(seen_generators && seen_positive && seen_negative) {
            let s = &self.toks[start];
            return Err(ParseError {
                file: self.file.into(),
                line: s.line,
                col: s.col,
                message: "algebra block needs generators, positive and negative entries".into(),
            });
        }
        Algebra::new(cfg).map_err(|e| {
            let s = &self.toks[start];
            ParseError {
                file: self.file.into(),
                line: s.line,
                col: s.col,
                message: e.to_string(),
            }
        })
    }

    fn hedge_chain(&mut self) -> Result<Vec<String>, ParseError> {
        let mut out = vec![self.expect_ident()?];
        while *self.peek() == Tok::Less {
            self.next();
            out.push(self.expect_ident()?);
        }
        Ok(out)
    }

    fn truth_term(&mut self) -> Result<TruthTerm, ParseError> {
        let here = self.pos;
        let name = self.expect_ident()?;
        self.owner.algebra.parse_term(&name).map_err(|e| {
            let s = &self.toks[here];
            ParseError {
                file: self.file.into(),
                line: s.line,
                col: s.col,
                message: e.to_string(),
            }
        })
    }

    fn clause_statement(&mut self) -> Result<AnnotatedClause, ParseError> {
        let mut literals = vec![self.literal()?];
        while *self.peek() == Tok::Pipe {
            self.next();
            literals.push(self.literal()?);
        }
        let here = self.pos;
        let reliability = if *self.peek() == Tok::At {
            self.next();
            self.truth_term()?
        } else {
            TruthTerm::Top
        };
        self.expect(Tok::Dot)?;
        AnnotatedClause::new(Clause::new(literals), reliability, &self.owner.algebra).map_err(
            |e| {
                let s = &self.toks[here];
                ParseError {
                    file: self.file.into(),
                    line: s.line,
                    col: s.col,
                    message: e.to_string(),
                }
            },
        )
    }

    fn formula_statement(&mut self) -> Result<Formula, ParseError> {
        let f = self.expr()?;
        self.expect(Tok::Dot)?;
        Ok(f)
    }

    fn expr(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.imp_expr()?;
        while *self.peek() == Tok::DArrow {
            self.next();
            let rhs = self.imp_expr()?;
            lhs = Formula::Iff(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn imp_expr(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or_expr()?;
        if *self.peek() == Tok::Arrow {
            self.next();
            let rhs = self.imp_expr()?;
            Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)))
        } else {
            Ok(lhs)
        }
    }

    fn or_expr(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and_expr()?;
        while *self.peek() == Tok::Pipe {
            self.next();
            let rhs = self.and_expr()?;
            lhs = Formula::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary_expr()?;
        while *self.peek() == Tok::Amp {
            self.next();
            let rhs = self.unary_expr()?;
            lhs = Formula::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary_expr(&mut self) -> Result<Formula, ParseError> {
        if *self.peek() == Tok::Tilde {
            self.next();
            let inner = self.unary_expr()?;
            return Ok(Formula::Not(Box::new(inner)));
        }
        if self.at_keyword("forall") || self.at_keyword("exists") {
            let forall = self.at_keyword("forall");
            self.next();
            let var = match self.next() {
                Tok::Var(v) => v,
                other => {
                    return Err(self.err_here(format!(
                        "expected a `?variable` after quantifier, found {}",
                        other
                    )))
                }
            };
            self.expect(Tok::Dot)?;
            let body = Box::new(self.expr()?);
            return Ok(if forall {
                Formula::ForAll(var, body)
            } else {
                Formula::Exists(var, body)
            });
        }
        if *self.peek() == Tok::LParen {
            self.next();
            let inner = self.expr()?;
            self.expect(Tok::RParen)?;
            return Ok(inner);
        }
        Ok(Formula::Lit(self.literal()?))
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let atom = self.atom()?;
        self.expect(Tok::Colon)?;
        let annotation = self.truth_term()?;
        Ok(Literal { atom, annotation })
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let here = self.pos;
        let pred = self.expect_ident()?;
        if !pred.chars().next().unwrap().is_ascii_uppercase() {
            let s = &self.toks[here];
            return Err(ParseError {
                file: self.file.into(),
                line: s.line,
                col: s.col,
                message: format!("predicate `{}` must start with an uppercase letter", pred),
            });
        }
        let args = if *self.peek() == Tok::LParen {
            self.next();
            let mut args = vec![self.fo_term()?];
            while *self.peek() == Tok::Comma {
                self.next();
                args.push(self.fo_term()?);
            }
            self.expect(Tok::RParen)?;
            args
        } else {
            Vec::new()
        };
        self.check_arity(here, &pred, args.len(), true)?;
        Ok(Atom { pred, args })
    }

    fn fo_term(&mut self) -> Result<FOTerm, ParseError> {
        let here = self.pos;
        match self.next() {
            Tok::Var(v) => Ok(FOTerm::Var(v)),
            Tok::Ident(name) => {
                let first = name.chars().next().unwrap();
                let s = &self.toks[here];
                if !first.is_ascii_lowercase() {
                    return Err(ParseError {
                        file: self.file.into(),
                        line: s.line,
                        col: s.col,
                        message: format!(
                            "function or constant `{}` must start with a lowercase letter",
                            name
                        ),
                    });
                }
                if is_skolem_name(&name) && !self.owner.allow_skolem {
                    return Err(ParseError {
                        file: self.file.into(),
                        line: s.line,
                        col: s.col,
                        message: format!("`{}` is reserved for Skolem symbols", name),
                    });
                }
                if *self.peek() == Tok::LParen {
                    self.next();
                    let mut args = vec![self.fo_term()?];
                    while *self.peek() == Tok::Comma {
                        self.next();
                        args.push(self.fo_term()?);
                    }
                    self.expect(Tok::RParen)?;
                    self.check_arity(here, &name, args.len(), false)?;
                    Ok(FOTerm::Func(name, args))
                } else {
                    self.check_arity(here, &name, 0, false)?;
                    Ok(FOTerm::Const(name))
                }
            }
            other => Err(self.err_here(format!("expected a term, found {}", other))),
        }
    }

    fn check_arity(
        &mut self,
        at: usize,
        name: &str,
        arity: usize,
        is_pred: bool,
    ) -> Result<(), ParseError> {
        let table = if is_pred {
            &mut self.owner.preds
        } else {
            &mut self.owner.funcs
        };
        match table.get(name) {
            Some(&known) if known != arity => {
                let s = &self.toks[at];
                Err(ParseError {
                    file: self.file.into(),
                    line: s.line,
                    col: s.col,
                    message: format!(
                        "{} `{}` used with {} argument(s) but previously with {}",
                        if is_pred { "predicate" } else { "function" },
                        name,
                        arity,
                        known
                    ),
                })
            }
            Some(_) => Ok(()),
            None => {
                table.insert(name.to_string(), arity);
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{print_annotated, print_clause, print_formula};

    fn std() -> Algebra {
        Algebra::standard()
    }

    #[test]
    fn parses_clause_statements() {
        let p = parse_problem(
            "clause A(?x):MFalse | B(?z):MFalse | C(?x):PTrue.\n\
             clause E(a, ?u):True @ Top.  # trailing comment\n",
            &std(),
        )
        .unwrap();
        assert_eq!(p.clauses.len(), 2);
        assert_eq!(
            print_clause(&p.algebra, &p.clauses[0].clause),
            "A(?x):MFalse | B(?z):MFalse | C(?x):PTrue"
        );
        assert_eq!(p.clauses[0].reliability, TruthTerm::Top);
        assert_eq!(
            print_annotated(&p.algebra, &p.clauses[1]),
            "E(a, ?u):True @ Top"
        );
    }

    #[test]
    fn rejects_empty_clause_statement() {
        assert!(parse_problem("clause .", &std()).is_err());
    }

    #[test]
    fn parses_formulas_with_quantifiers() {
        let p = parse_problem(
            "formula forall ?x . (S(?x):True -> G(?x):MTrue).",
            &std(),
        )
        .unwrap();
        assert_eq!(p.formulas.len(), 1);
        assert_eq!(
            print_formula(&p.algebra, &p.formulas[0]),
            "forall ?x . S(?x):True -> G(?x):MTrue"
        );
    }

    #[test]
    fn operator_precedence() {
        let p = parse_problem("formula ~A:True & B:W | C:MTrue -> D:Top <-> E:W.", &std()).unwrap();
        assert_eq!(
            print_formula(&p.algebra, &p.formulas[0]),
            "~A:True & B:W | C:MTrue -> D:Top <-> E:W"
        );
        // Right associativity of the arrow.
        let p = parse_problem("formula A:True -> B:W -> C:W.", &std()).unwrap();
        assert!(matches!(&p.formulas[0], Formula::Implies(_, r)
            if matches!(**r, Formula::Implies(..))));
    }

    #[test]
    fn inline_algebra_block() {
        let p = parse_problem(
            "algebra {\n\
               generators: No, Yes\n\
               positive: Q\n\
               negative: R\n\
               sign { Q:+*  R:-Q }\n\
             }\n\
             clause A:QYes | B:RNo @ QYes.",
            &std(),
        )
        .unwrap();
        assert_eq!(p.algebra.config().positive_generator, "Yes");
        assert_eq!(
            print_annotated(&p.algebra, &p.clauses[0]),
            "A:QYes | B:RNo @ QYes"
        );
    }

    #[test]
    fn algebra_block_must_come_first() {
        let err = parse_problem(
            "clause A:True.\nalgebra { generators: No, Yes positive: Q negative: R }",
            &std(),
        )
        .unwrap_err();
        assert!(err.message.contains("before any statement"));
    }

    #[test]
    fn rejects_reserved_skolem_names() {
        let err = parse_problem("clause A(sk1):True.", &std()).unwrap_err();
        assert!(err.message.contains("reserved"));
        // `sk` without digits and `skew` are ordinary names.
        assert!(parse_problem("clause A(sk):True.", &std()).is_ok());
        assert!(parse_problem("clause A(skew(?x)):True.", &std()).is_ok());
    }

    #[test]
    fn rejects_arity_conflicts_across_files() {
        let mut pp = ProblemParser::new(&std());
        pp.feed("one.lfol", "clause P(a):True.").unwrap();
        let err = pp.feed("two.lfol", "clause P(a, b):True.").unwrap_err();
        assert_eq!(err.file, "two.lfol");
        assert!(err.message.contains("argument"));
        let err = parse_problem("clause P(f(a), f(a, b)):True.", &std()).unwrap_err();
        assert!(err.message.contains("function `f`"));
    }

    #[test]
    fn rejects_case_violations() {
        assert!(parse_problem("clause a(?x):True.", &std()).is_err());
        assert!(parse_problem("clause A(X):True.", &std()).is_err());
    }

    #[test]
    fn rejects_low_reliability() {
        let err = parse_problem("clause A:True @ VFalse.", &std()).unwrap_err();
        assert!(err.message.contains("below W"));
    }

    #[test]
    fn rejects_unknown_truth_terms() {
        let err = parse_problem("clause A:Verdad.", &std()).unwrap_err();
        assert!(err.message.contains("Verdad"));
    }

    #[test]
    fn ground_helpers() {
        use crate::syntax::FOTerm;
        let t = parse_ground_term("i", "f(a, g(b))").unwrap();
        assert_eq!(t.to_string(), "f(a, g(b))");
        // Skolem names are fine here, unlike in problem files.
        assert!(parse_ground_term("i", "sk1").is_ok());
        assert!(parse_ground_term("i", "f(?x)").is_err());
        // Top-level commas split; nested ones do not.
        let ts = parse_ground_terms("i", "f(a, b),c").unwrap();
        assert_eq!(ts.len(), 2);
        assert_eq!(ts[1], FOTerm::Const("c".into()));
        let a = parse_ground_atom("i", "P(a, f(b))").unwrap();
        assert_eq!(a.to_string(), "P(a, f(b))");
        assert!(parse_ground_atom("i", "P(?x)").is_err());
    }

    #[test]
    fn parses_algebra_file() {
        let a = parse_algebra(
            "conf.hal",
            "algebra {\n  generators: False, True\n  positive: M < V\n  negative: P < L\n}",
        )
        .unwrap();
        assert_eq!(a.config().plus_hedges, vec!["M".to_string(), "V".to_string()]);
        assert!(parse_algebra("conf.hal", "algebra { generators: False, True }").is_err());
    }
}
