//! Linear symmetrical hedge algebra of truth values.
//!
//! Values are either the constants `Bot`, `W`, `Top` or a string of hedges
//! applied to one of two generators (written e.g. `VMTrue`). The hedge
//! strings are kept free: two distinct canonical strings are distinct
//! values. A total order covers the whole domain, with every negative
//! term below `W` and every positive term above it.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("unknown hedge `{0}`")]
    UnknownHedge(String),
    #[error("cannot read truth term `{0}`")]
    UnknownTruthTerm(String),
    #[error("invalid name `{0}`")]
    BadName(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("name `{0}` is a prefix of `{1}`; truth terms would be ambiguous")]
    AmbiguousName(String, String),
    #[error("{0} hedge set is empty")]
    EmptyHedgeSet(&'static str),
    #[error("sign entry refers to unknown hedge `{0}`")]
    UnknownSignTarget(String),
}

/// A truth value. `Lin` hedges are stored outermost first, so `VMTrue`
/// carries `["V", "M"]` over the positive generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TruthTerm {
    Bottom,
    Middle,
    Top,
    Lin { hedges: Vec<String>, positive: bool },
}

impl TruthTerm {
    /// Strictly greater than `W`. True exactly for `Top` and positive terms.
    pub fn is_above_w(&self) -> bool {
        matches!(
            self,
            TruthTerm::Top | TruthTerm::Lin { positive: true, .. }
        )
    }

    /// Strictly less than `W`. True exactly for `Bottom` and negative terms.
    pub fn is_below_w(&self) -> bool {
        matches!(
            self,
            TruthTerm::Bottom | TruthTerm::Lin { positive: false, .. }
        )
    }

    /// The mirror-image term: generators and poles swap, hedges and `W`
    /// stay. Purely structural, so no algebra context is needed.
    pub fn negated(&self) -> TruthTerm {
        match self {
            TruthTerm::Bottom => TruthTerm::Top,
            TruthTerm::Top => TruthTerm::Bottom,
            TruthTerm::Middle => TruthTerm::Middle,
            TruthTerm::Lin { hedges, positive } => TruthTerm::Lin {
                hedges: hedges.clone(),
                positive: !positive,
            },
        }
    }

    fn class_rank(&self) -> u8 {
        match self {
            TruthTerm::Bottom => 0,
            TruthTerm::Lin { positive: false, .. } => 1,
            TruthTerm::Middle => 2,
            TruthTerm::Lin { positive: true, .. } => 3,
            TruthTerm::Top => 4,
        }
    }
}

/// Base symbol a raw hedge string is applied to, before canonicalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruthBase {
    Bottom,
    Middle,
    Top,
    Negative,
    Positive,
}

/// Declarative description of an algebra. Hedge lists are ascending by
/// strength; the sign entries override the built-in relative-sign rule.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraConfig {
    pub negative_generator: String,
    pub positive_generator: String,
    /// Hedges that push a bare generator away from `W`, weakest first.
    pub plus_hedges: Vec<String>,
    /// Hedges that pull a bare generator toward `W`, weakest first.
    pub minus_hedges: Vec<String>,
    /// Overrides `(k, Some(h)) -> s`: hedge `k` applied over head hedge `h`
    /// keeps (`+1`) or flips (`-1`) the direction. `(k, None)` covers all `h`.
    pub sign_entries: Vec<(String, Option<String>, i8)>,
}

#[derive(Debug, Clone, Copy)]
struct HedgeInfo {
    plus: bool,
    rank: usize,
}

/// A validated algebra with its relative-sign matrix materialized.
#[derive(Debug, Clone)]
pub struct Algebra {
    config: AlgebraConfig,
    hedges: HashMap<String, HedgeInfo>,
    /// Fully expanded matrix: sign of `k` applied over head hedge `h`.
    rel: HashMap<(String, String), i8>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Algebra {
    pub fn new(config: AlgebraConfig) -> Result<Algebra, AlgebraError> {
        if config.plus_hedges.is_empty() {
            return Err(AlgebraError::EmptyHedgeSet("positive"));
        }
        if config.minus_hedges.is_empty() {
            return Err(AlgebraError::EmptyHedgeSet("negative"));
        }
        let mut names: Vec<&str> = vec![&config.negative_generator, &config.positive_generator];
        names.extend(config.plus_hedges.iter().map(String::as_str));
        names.extend(config.minus_hedges.iter().map(String::as_str));
        for n in &names {
            if !valid_name(n) {
                return Err(AlgebraError::BadName(n.to_string()));
            }
        }
        // The reserved constants take part in ambiguity checking so that a
        // hedge called `W` or `T` can never shadow them.
        names.extend(["Top", "Bot", "W"]);
        for i in 0..names.len() {
            for j in 0..names.len() {
                if i == j {
                    continue;
                }
                if names[i] == names[j] {
                    if i < j {
                        return Err(AlgebraError::DuplicateName(names[i].to_string()));
                    }
                } else if names[j].starts_with(names[i]) {
                    return Err(AlgebraError::AmbiguousName(
                        names[i].to_string(),
                        names[j].to_string(),
                    ));
                }
            }
        }

        let mut hedges = HashMap::new();
        for (rank, h) in config.minus_hedges.iter().enumerate() {
            hedges.insert(h.clone(), HedgeInfo { plus: false, rank });
        }
        for (rank, h) in config.plus_hedges.iter().enumerate() {
            hedges.insert(h.clone(), HedgeInfo { plus: true, rank });
        }

        // Default relative sign: a hedge keeps the direction of hedges from
        // its own set and flips the direction of hedges from the other set.
        let all: Vec<String> = hedges.keys().cloned().collect();
        let mut rel = HashMap::new();
        for k in &all {
            for h in &all {
                let s = if hedges[k].plus == hedges[h].plus { 1 } else { -1 };
                rel.insert((k.clone(), h.clone()), s);
            }
        }
        for (k, target, s) in &config.sign_entries {
            if !hedges.contains_key(k) {
                return Err(AlgebraError::UnknownSignTarget(k.clone()));
            }
            match target {
                Some(h) => {
                    if !hedges.contains_key(h) {
                        return Err(AlgebraError::UnknownSignTarget(h.clone()));
                    }
                    rel.insert((k.clone(), h.clone()), *s);
                }
                None => {
                    for h in &all {
                        rel.insert((k.clone(), h.clone()), *s);
                    }
                }
            }
        }
        // Specific entries beat the star entries they may have been
        // overwritten by; apply them again last.
        for (k, target, s) in &config.sign_entries {
            if let Some(h) = target {
                rel.insert((k.clone(), h.clone()), *s);
            }
        }

        Ok(Algebra { config, hedges, rel })
    }

    /// The algebra used throughout the examples and as the CLI default:
    /// generators `False`/`True`, strengthening hedges `M < V`, weakening
    /// hedges `P < L`.
    pub fn standard() -> Algebra {
        Algebra::new(AlgebraConfig {
            negative_generator: "False".into(),
            positive_generator: "True".into(),
            plus_hedges: vec!["M".into(), "V".into()],
            minus_hedges: vec!["P".into(), "L".into()],
            sign_entries: vec![],
        })
        .expect("built-in algebra is valid")
    }

    pub fn config(&self) -> &AlgebraConfig {
        &self.config
    }

    fn info(&self, hedge: &str) -> Result<HedgeInfo, AlgebraError> {
        self.hedges
            .get(hedge)
            .copied()
            .ok_or_else(|| AlgebraError::UnknownHedge(hedge.to_string()))
    }

    /// Sign of hedge `h` applied over a prefix whose outermost hedge is
    /// `head` (`None` when `h` lands directly on the generator).
    fn rel(&self, h: &str, head: Option<&str>) -> Result<i8, AlgebraError> {
        match head {
            None => Ok(if self.info(h)?.plus { 1 } else { -1 }),
            Some(g) => self
                .rel
                .get(&(h.to_string(), g.to_string()))
                .copied()
                .ok_or_else(|| AlgebraError::UnknownHedge(h.to_string())),
        }
    }

    /// Builds a canonical term. Hedges over `Bot`, `W` or `Top` collapse to
    /// the constant; hedge strings over a generator are kept as given.
    pub fn canonicalize(
        &self,
        hedges: &[String],
        base: TruthBase,
    ) -> Result<TruthTerm, AlgebraError> {
        for h in hedges {
            self.info(h)?;
        }
        Ok(match base {
            TruthBase::Bottom => TruthTerm::Bottom,
            TruthBase::Middle => TruthTerm::Middle,
            TruthBase::Top => TruthTerm::Top,
            TruthBase::Negative => TruthTerm::Lin {
                hedges: hedges.to_vec(),
                positive: false,
            },
            TruthBase::Positive => TruthTerm::Lin {
                hedges: hedges.to_vec(),
                positive: true,
            },
        })
    }

    /// Reads the concatenated surface form: `Top`, `Bot`, `W`, or hedge
    /// names immediately followed by a generator name.
    pub fn parse_term(&self, s: &str) -> Result<TruthTerm, AlgebraError> {
        match s {
            "Top" => return Ok(TruthTerm::Top),
            "Bot" => return Ok(TruthTerm::Bottom),
            "W" => return Ok(TruthTerm::Middle),
            _ => {}
        }
        let mut hedges = Vec::new();
        let mut rest = s;
        loop {
            if rest == self.config.negative_generator {
                return Ok(TruthTerm::Lin { hedges, positive: false });
            }
            if rest == self.config.positive_generator {
                return Ok(TruthTerm::Lin { hedges, positive: true });
            }
            // Name validation makes at most one hedge match here.
            match self.hedges.keys().find(|h| rest.starts_with(h.as_str())) {
                Some(h) => {
                    hedges.push(h.clone());
                    rest = &rest[h.len()..];
                }
                None => return Err(AlgebraError::UnknownTruthTerm(s.to_string())),
            }
        }
    }

    pub fn print_term(&self, t: &TruthTerm) -> String {
        match t {
            TruthTerm::Bottom => "Bot".into(),
            TruthTerm::Middle => "W".into(),
            TruthTerm::Top => "Top".into(),
            TruthTerm::Lin { hedges, positive } => {
                let gen = if *positive {
                    &self.config.positive_generator
                } else {
                    &self.config.negative_generator
                };
                let mut out = String::new();
                for h in hedges {
                    out.push_str(h);
                }
                out.push_str(gen);
                out
            }
        }
    }

    /// `+1` when the term sits above its one-hedge-shorter suffix, `-1`
    /// below. Bare generators report the side of `W` they live on;
    /// constants report `0`.
    pub fn sign(&self, t: &TruthTerm) -> i8 {
        self.try_sign(t).expect("term belongs to this algebra")
    }

    fn try_sign(&self, t: &TruthTerm) -> Result<i8, AlgebraError> {
        match t {
            TruthTerm::Bottom | TruthTerm::Middle | TruthTerm::Top => Ok(0),
            TruthTerm::Lin { hedges, positive } => {
                let mut sign: i8 = if *positive { 1 } else { -1 };
                let mut head: Option<&str> = None;
                for h in hedges.iter().rev() {
                    sign *= self.rel(h, head)?;
                    head = Some(h);
                }
                Ok(sign)
            }
        }
    }

    /// Total order over the whole domain. Panics if a term mentions a hedge
    /// foreign to this algebra; use [`Algebra::try_cmp`] for untrusted input.
    pub fn cmp_terms(&self, a: &TruthTerm, b: &TruthTerm) -> Ordering {
        self.try_cmp(a, b).expect("terms belong to this algebra")
    }

    /// Every hedge must belong to this algebra.
    pub fn validate_term(&self, t: &TruthTerm) -> Result<(), AlgebraError> {
        if let TruthTerm::Lin { hedges, .. } = t {
            for h in hedges {
                self.info(h)?;
            }
        }
        Ok(())
    }

    pub fn try_cmp(&self, a: &TruthTerm, b: &TruthTerm) -> Result<Ordering, AlgebraError> {
        self.validate_term(a)?;
        self.validate_term(b)?;
        let (ra, rb) = (a.class_rank(), b.class_rank());
        if ra != rb {
            return Ok(ra.cmp(&rb));
        }
        let (xs, ys) = match (a, b) {
            (TruthTerm::Lin { hedges: xs, .. }, TruthTerm::Lin { hedges: ys, .. }) => (xs, ys),
            _ => return Ok(Ordering::Equal),
        };
        // Walk the common prefix from the generator outward, tracking its
        // sign; the first differing step decides.
        let mut sign: i8 = if a.is_above_w() { 1 } else { -1 };
        let mut head: Option<&str> = None;
        let mut xi = xs.iter().rev();
        let mut yi = ys.iter().rev();
        loop {
            match (xi.next(), yi.next()) {
                (None, None) => return Ok(Ordering::Equal),
                (xh, yh) if xh == yh => {
                    let h = xh.expect("both present when equal");
                    sign *= self.rel(h, head)?;
                    head = Some(h);
                }
                (xh, yh) => {
                    let ka = self.step_key(xh, head, sign)?;
                    let kb = self.step_key(yh, head, sign)?;
                    return Ok(ka.cmp(&kb));
                }
            }
        }
    }

    /// Where one more hedge moves the common prefix: the primary component
    /// is the direction of the step and the secondary orders steps in the
    /// same direction by how far they go (stronger hedges reach further).
    fn step_key(
        &self,
        hedge: Option<&String>,
        head: Option<&str>,
        prefix_sign: i8,
    ) -> Result<(i8, i64), AlgebraError> {
        let h = match hedge {
            None => return Ok((0, 0)),
            Some(h) => h,
        };
        let dir = self.rel(h, head)? * prefix_sign;
        let info = self.info(h)?;
        let reach = (info.plus as i64) * 1_000_000 + info.rank as i64 + 1;
        Ok((dir, dir as i64 * reach))
    }

    pub fn negate(&self, t: &TruthTerm) -> TruthTerm {
        t.negated()
    }

    pub fn meet(&self, a: &TruthTerm, b: &TruthTerm) -> TruthTerm {
        if self.cmp_terms(a, b) == Ordering::Greater {
            b.clone()
        } else {
            a.clone()
        }
    }

    pub fn join(&self, a: &TruthTerm, b: &TruthTerm) -> TruthTerm {
        if self.cmp_terms(a, b) == Ordering::Less {
            b.clone()
        } else {
            a.clone()
        }
    }

    pub fn implies(&self, a: &TruthTerm, b: &TruthTerm) -> TruthTerm {
        self.join(&self.negate(a), b)
    }

    pub fn iff(&self, a: &TruthTerm, b: &TruthTerm) -> TruthTerm {
        self.meet(&self.implies(a, b), &self.implies(b, a))
    }

    /// All canonical terms with at most `depth` hedges, ascending.
    pub fn enumerate_terms(&self, depth: usize) -> Vec<TruthTerm> {
        let all: Vec<&String> = self
            .config
            .minus_hedges
            .iter()
            .chain(self.config.plus_hedges.iter())
            .collect();
        let mut out = vec![TruthTerm::Bottom, TruthTerm::Middle, TruthTerm::Top];
        let mut layer: Vec<Vec<String>> = vec![Vec::new()];
        for d in 0..=depth {
            if d > 0 {
                let mut next = Vec::new();
                for prefix in &layer {
                    for h in &all {
                        let mut ext = Vec::with_capacity(prefix.len() + 1);
                        ext.push((*h).clone());
                        ext.extend(prefix.iter().cloned());
                        next.push(ext);
                    }
                }
                layer = next;
            }
            for hedges in &layer {
                for positive in [false, true] {
                    out.push(TruthTerm::Lin {
                        hedges: hedges.clone(),
                        positive,
                    });
                }
            }
        }
        out.sort_by(|a, b| self.cmp_terms(a, b));
        out
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "algebra {{ {}, {}; -: {}; +: {} }}",
            self.config.negative_generator,
            self.config.positive_generator,
            self.config.minus_hedges.join(" < "),
            self.config.plus_hedges.join(" < "),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg() -> Algebra {
        Algebra::standard()
    }

    fn t(a: &Algebra, s: &str) -> TruthTerm {
        a.parse_term(s).unwrap()
    }

    #[test]
    fn canonicalize_strips_hedges_on_constants() {
        let a = alg();
        let got = a.canonicalize(&["V".into()], TruthBase::Top).unwrap();
        assert_eq!(got, TruthTerm::Top);
        let got = a.canonicalize(&["L".into(), "M".into()], TruthBase::Middle).unwrap();
        assert_eq!(got, TruthTerm::Middle);
        let got = a.canonicalize(&["V".into(), "M".into()], TruthBase::Positive).unwrap();
        assert_eq!(got, t(&a, "VMTrue"));
    }

    #[test]
    fn canonicalize_rejects_unknown_hedges() {
        let a = alg();
        let err = a.canonicalize(&["Q".into()], TruthBase::Positive).unwrap_err();
        assert_eq!(err, AlgebraError::UnknownHedge("Q".into()));
    }

    #[test]
    fn parse_and_print_round_trip() {
        let a = alg();
        for s in ["Top", "Bot", "W", "True", "False", "VMTrue", "LPFalse", "VVTrue"] {
            assert_eq!(a.print_term(&t(&a, s)), s);
        }
        assert!(a.parse_term("VM").is_err());
        assert!(a.parse_term("Truth").is_err());
        assert!(a.parse_term("").is_err());
    }

    #[test]
    fn sign_of_single_hedges() {
        let a = alg();
        assert_eq!(a.sign(&t(&a, "PTrue")), -1);
        assert_eq!(a.sign(&t(&a, "VTrue")), 1);
        assert_eq!(a.sign(&t(&a, "LFalse")), 1);
        assert_eq!(a.sign(&t(&a, "VFalse")), -1);
        assert_eq!(a.sign(&t(&a, "True")), 1);
        assert_eq!(a.sign(&t(&a, "False")), -1);
        assert_eq!(a.sign(&TruthTerm::Top), 0);
    }

    #[test]
    fn sign_matches_suffix_comparison() {
        let a = alg();
        for term in a.enumerate_terms(3) {
            if let TruthTerm::Lin { hedges, positive } = &term {
                if hedges.is_empty() {
                    continue;
                }
                let suffix = TruthTerm::Lin {
                    hedges: hedges[1..].to_vec(),
                    positive: *positive,
                };
                let expect = if a.sign(&term) > 0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
                assert_eq!(a.cmp_terms(&term, &suffix), expect, "term {:?}", term);
            }
        }
    }

    #[test]
    fn ordering_facts() {
        let a = alg();
        let lt = |x: &str, y: &str| {
            assert_eq!(a.cmp_terms(&t(&a, x), &t(&a, y)), Ordering::Less, "{} < {}", x, y);
        };
        lt("True", "VTrue");
        lt("PTrue", "True");
        lt("False", "LFalse");
        lt("LPTrue", "MPTrue");
        lt("MTrue", "VTrue");
        lt("LTrue", "PTrue");
        lt("LTrue", "MTrue");
        lt("MTrue", "VMTrue");
        lt("Bot", "VFalse");
        lt("MFalse", "W");
        lt("W", "PTrue");
        lt("VTrue", "Top");
        assert_eq!(a.cmp_terms(&t(&a, "VMTrue"), &t(&a, "VMTrue")), Ordering::Equal);
    }

    #[test]
    fn try_cmp_rejects_foreign_terms() {
        let a = alg();
        let foreign = TruthTerm::Lin {
            hedges: vec!["Q".into()],
            positive: true,
        };
        assert_eq!(
            a.try_cmp(&foreign, &TruthTerm::Top).unwrap_err(),
            AlgebraError::UnknownHedge("Q".into())
        );
    }

    #[test]
    fn negate_flips_generator_and_poles() {
        let a = alg();
        assert_eq!(a.negate(&t(&a, "VMTrue")), t(&a, "VMFalse"));
        assert_eq!(a.negate(&TruthTerm::Top), TruthTerm::Bottom);
        assert_eq!(a.negate(&TruthTerm::Bottom), TruthTerm::Top);
        assert_eq!(a.negate(&TruthTerm::Middle), TruthTerm::Middle);
    }

    #[test]
    fn connectives() {
        let a = alg();
        assert_eq!(a.meet(&t(&a, "MTrue"), &t(&a, "VTrue")), t(&a, "MTrue"));
        assert_eq!(a.join(&t(&a, "MFalse"), &t(&a, "LTrue")), t(&a, "LTrue"));
        assert_eq!(a.implies(&t(&a, "VTrue"), &t(&a, "MTrue")), t(&a, "MTrue"));
        assert_eq!(a.implies(&t(&a, "True"), &t(&a, "False")), t(&a, "False"));
        assert_eq!(a.implies(&TruthTerm::Bottom, &t(&a, "False")), TruthTerm::Top);
        assert_eq!(a.iff(&t(&a, "True"), &t(&a, "True")), t(&a, "True"));
    }

    #[test]
    fn enumerate_counts() {
        let a = alg();
        assert_eq!(a.enumerate_terms(0).len(), 5);
        assert_eq!(a.enumerate_terms(1).len(), 13);
        assert_eq!(a.enumerate_terms(2).len(), 45);
        assert_eq!(a.enumerate_terms(3).len(), 173);
        let terms = a.enumerate_terms(2);
        for w in terms.windows(2) {
            assert_eq!(a.cmp_terms(&w[0], &w[1]), Ordering::Less);
        }
    }

    #[test]
    fn total_order_axioms_small() {
        let a = alg();
        let terms = a.enumerate_terms(2);
        for x in &terms {
            assert_eq!(a.cmp_terms(x, x), Ordering::Equal);
            for y in &terms {
                let xy = a.cmp_terms(x, y);
                assert_eq!(xy, a.cmp_terms(y, x).reverse());
                if xy == Ordering::Equal {
                    assert_eq!(x, y);
                }
            }
        }
    }

    #[test]
    fn mirror_antitonicity_small() {
        let a = alg();
        let terms = a.enumerate_terms(2);
        for x in &terms {
            for y in &terms {
                assert_eq!(
                    a.cmp_terms(&a.negate(x), &a.negate(y)),
                    a.cmp_terms(x, y).reverse()
                );
            }
        }
    }

    #[test]
    fn heredity_of_prefixes() {
        let a = alg();
        let x = t(&a, "MTrue");
        let y = t(&a, "VTrue");
        let base = a.cmp_terms(&x, &y);
        for delta in [vec!["V"], vec!["L"], vec!["P", "M"]] {
            let wrap = |inner: &TruthTerm| match inner {
                TruthTerm::Lin { hedges, positive } => {
                    let mut hs: Vec<String> = delta.iter().map(|s| s.to_string()).collect();
                    hs.extend(hedges.iter().cloned());
                    TruthTerm::Lin { hedges: hs, positive: *positive }
                }
                _ => unreachable!(),
            };
            assert_eq!(a.cmp_terms(&wrap(&x), &wrap(&y)), base, "delta {:?}", delta);
        }
    }

    #[test]
    fn config_validation() {
        let mut cfg = Algebra::standard().config().clone();
        cfg.plus_hedges = vec![];
        assert_eq!(
            Algebra::new(cfg).unwrap_err(),
            AlgebraError::EmptyHedgeSet("positive")
        );

        let mut cfg = Algebra::standard().config().clone();
        cfg.plus_hedges = vec!["M".into(), "Mo".into()];
        assert!(matches!(
            Algebra::new(cfg).unwrap_err(),
            AlgebraError::AmbiguousName(..)
        ));

        let mut cfg = Algebra::standard().config().clone();
        cfg.minus_hedges = vec!["P".into(), "M".into()];
        assert_eq!(
            Algebra::new(cfg).unwrap_err(),
            AlgebraError::DuplicateName("M".into())
        );

        let mut cfg = Algebra::standard().config().clone();
        cfg.sign_entries = vec![("Q".into(), None, 1)];
        assert_eq!(
            Algebra::new(cfg).unwrap_err(),
            AlgebraError::UnknownSignTarget("Q".into())
        );
    }

    #[test]
    fn sign_overrides_change_order() {
        // Default parity: V counteracts the other set's P, so VPTrue ends
        // up above PTrue.
        let std = Algebra::standard();
        assert_eq!(
            std.cmp_terms(&t(&std, "VPTrue"), &t(&std, "PTrue")),
            Ordering::Greater
        );
        // An explicit entry can make V strengthen P's pull instead.
        let mut cfg = std.config().clone();
        cfg.sign_entries = vec![("V".into(), Some("P".into()), 1)];
        let a = Algebra::new(cfg).unwrap();
        assert_eq!(
            a.cmp_terms(&t(&a, "VPTrue"), &t(&a, "PTrue")),
            Ordering::Less
        );
    }
}
