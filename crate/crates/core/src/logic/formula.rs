//! Quantifier-free formulas over `x1..xk` and `y`, and counting sentences.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// `x_a`, 1-based.
    X(u32),
    Y,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::X(a) => write!(f, "x{a}"),
            Term::Y => write!(f, "y"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QFFormula {
    Equal(Term, Term),
    Adjacent(Term, Term),
    Not(Box<QFFormula>),
    And(Box<QFFormula>, Box<QFFormula>),
    Or(Box<QFFormula>, Box<QFFormula>),
}

impl QFFormula {
    pub fn not(self) -> Self {
        QFFormula::Not(Box::new(self))
    }

    pub fn and(self, other: Self) -> Self {
        QFFormula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Self) -> Self {
        QFFormula::Or(Box::new(self), Box::new(other))
    }

    /// Largest `a` such that `x_a` occurs, 0 if none does.
    pub fn max_variable(&self) -> u32 {
        let term = |t: &Term| match t {
            Term::X(a) => *a,
            Term::Y => 0,
        };
        match self {
            QFFormula::Equal(s, t) | QFFormula::Adjacent(s, t) => term(s).max(term(t)),
            QFFormula::Not(p) => p.max_variable(),
            QFFormula::And(p, q) | QFFormula::Or(p, q) => p.max_variable().max(q.max_variable()),
        }
    }

    /// Nesting depth of connectives; an atom has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            QFFormula::Equal(..) | QFFormula::Adjacent(..) => 0,
            QFFormula::Not(p) => 1 + p.depth(),
            QFFormula::And(p, q) | QFFormula::Or(p, q) => 1 + p.depth().max(q.depth()),
        }
    }

    /// Replaces every `x_a` by `x_{rename(a)}`.
    pub fn rename(&self, rename: &impl Fn(u32) -> u32) -> Self {
        let term = |t: Term| match t {
            Term::X(a) => Term::X(rename(a)),
            Term::Y => Term::Y,
        };
        match self {
            QFFormula::Equal(s, t) => QFFormula::Equal(term(*s), term(*t)),
            QFFormula::Adjacent(s, t) => QFFormula::Adjacent(term(*s), term(*t)),
            QFFormula::Not(p) => p.rename(rename).not(),
            QFFormula::And(p, q) => p.rename(rename).and(q.rename(rename)),
            QFFormula::Or(p, q) => p.rename(rename).or(q.rename(rename)),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        match self {
            QFFormula::Equal(s, t) => write!(f, "{s}={t}"),
            QFFormula::Adjacent(s, t) => write!(f, "E({s},{t})"),
            QFFormula::Not(p) => {
                f.write_str("!")?;
                p.fmt_prec(f, 3)
            }
            QFFormula::And(p, q) => {
                if prec > 2 {
                    f.write_str("(")?;
                }
                p.fmt_prec(f, 2)?;
                f.write_str(" & ")?;
                q.fmt_prec(f, 3)?;
                if prec > 2 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            QFFormula::Or(p, q) => {
                if prec > 1 {
                    f.write_str("(")?;
                }
                p.fmt_prec(f, 1)?;
                f.write_str(" | ")?;
                q.fmt_prec(f, 2)?;
                if prec > 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for QFFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// `∃x1..xk  Σ_α #y ψ_α ≥ t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingSentence {
    pub k: usize,
    pub psis: Vec<QFFormula>,
    pub t: u64,
}

impl CountingSentence {
    pub fn new(k: usize, psis: Vec<QFFormula>, t: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("sentences need k >= 1".into()));
        }
        if psis.is_empty() {
            return Err(Error::InvalidArgument("sentences need at least one formula".into()));
        }
        if let Some(bad) = psis.iter().find(|p| p.max_variable() as usize > k) {
            return Err(Error::InvalidArgument(format!("{bad} uses a variable beyond x{k}")));
        }
        Ok(CountingSentence { k, psis, t })
    }

    pub fn with_threshold(self, t: u64) -> Self {
        CountingSentence { t, ..self }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("k {}\nt {}\n", self.k, self.t);
        for psi in &self.psis {
            out.push_str(&format!("psi {psi}\n"));
        }
        out
    }
}

/// Truth value of `phi` with `assign` giving each term's element.
pub fn eval_qf<E: Copy>(
    phi: &QFFormula,
    adj: &impl Fn(E, E) -> bool,
    eq: &impl Fn(E, E) -> bool,
    assign: &impl Fn(Term) -> E,
) -> bool {
    match phi {
        QFFormula::Equal(s, t) => eq(assign(*s), assign(*t)),
        QFFormula::Adjacent(s, t) => adj(assign(*s), assign(*t)),
        QFFormula::Not(p) => !eval_qf(p, adj, eq, assign),
        QFFormula::And(p, q) => eval_qf(p, adj, eq, assign) && eval_qf(q, adj, eq, assign),
        QFFormula::Or(p, q) => eval_qf(p, adj, eq, assign) || eval_qf(q, adj, eq, assign),
    }
}

/// `⋁_i (E(x_i, y) ∨ x_i = y)`: the number of vertices dominated by `x1..xk`.
pub fn encode_pds(k: usize) -> Result<CountingSentence> {
    if k == 0 {
        return Err(Error::InvalidArgument("the encoding needs k >= 1".into()));
    }
    let psi = (2..=k as u32).fold(QFFormula::Adjacent(Term::X(1), Term::Y).or(QFFormula::Equal(Term::X(1), Term::Y)), |acc, a| {
        acc.or(QFFormula::Adjacent(Term::X(a), Term::Y)).or(QFFormula::Equal(Term::X(a), Term::Y))
    });
    CountingSentence::new(k, vec![psi], 0)
}

/// `ψ_α = E(x_α, y) ∧ ⋀_{γ<α} y ≠ x_γ`: summed over `α`, the edges covered by `x1..xk`.
pub fn encode_pvc(k: usize) -> Result<CountingSentence> {
    if k == 0 {
        return Err(Error::InvalidArgument("the encoding needs k >= 1".into()));
    }
    let psis = (1..=k as u32)
        .map(|a| {
            (1..a).fold(QFFormula::Adjacent(Term::X(a), Term::Y), |acc, g| {
                acc.and(QFFormula::Equal(Term::Y, Term::X(g)).not())
            })
        })
        .collect();
    CountingSentence::new(k, psis, 0)
}

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    text: &'a str,
}

impl Lexer<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        let col = self.chars.get(self.pos).map_or(self.text.len(), |&(c, _)| c) + 1;
        Error::parse(self.line, format!("column {col}: {}", message.into()))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{want}'")))
        }
    }

    fn or(&mut self) -> Result<QFFormula> {
        let mut left = self.and()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            left = left.or(self.and()?);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<QFFormula> {
        let mut left = self.unary()?;
        while self.peek() == Some('&') {
            self.pos += 1;
            left = left.and(self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<QFFormula> {
        match self.peek() {
            Some('!') => {
                self.pos += 1;
                Ok(self.unary()?.not())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.or()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some('E') => {
                self.pos += 1;
                self.expect('(')?;
                let s = self.term()?;
                self.expect(',')?;
                let t = self.term()?;
                self.expect(')')?;
                Ok(QFFormula::Adjacent(s, t))
            }
            _ => {
                let s = self.term()?;
                self.expect('=')?;
                let t = self.term()?;
                Ok(QFFormula::Equal(s, t))
            }
        }
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek() {
            Some('y') => {
                self.pos += 1;
                Ok(Term::Y)
            }
            Some('x') => {
                let start = self.pos;
                self.pos += 1;
                let mut digits = String::new();
                while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                    digits.push(c);
                    self.pos += 1;
                }
                match digits.parse::<u32>() {
                    Ok(a) if a >= 1 => Ok(Term::X(a)),
                    _ => {
                        self.pos = start;
                        Err(self.err("expected a variable x1, x2, ..."))
                    }
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

/// Parses one formula in the sentence grammar.
pub fn parse_formula(text: &str) -> Result<QFFormula> {
    parse_expr(text, 1)
}

fn parse_expr(text: &str, line: usize) -> Result<QFFormula> {
    let mut lx = Lexer {
        chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        pos: 0,
        line,
        text,
    };
    let phi = lx.or()?;
    if lx.pos != lx.chars.len() {
        return Err(lx.err("unexpected trailing input"));
    }
    Ok(phi)
}

/// Parses a sentence file: `k <int>`, `t <int>`, then `psi <expr>` lines.
pub fn parse_sentence(text: &str) -> Result<CountingSentence> {
    if !text.is_ascii() {
        return Err(Error::parse(1, "sentence files must be ASCII"));
    }
    let (mut k, mut t) = (None, None);
    let mut psis = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let (head, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        match head {
            "k" | "t" => {
                if !psis.is_empty() {
                    return Err(Error::parse(line, format!("'{head}' must precede the formulas")));
                }
                let value: u64 = rest
                    .parse()
                    .map_err(|_| Error::parse(line, format!("'{head}' needs a non-negative integer")))?;
                let slot = if head == "k" { &mut k } else { &mut t };
                if slot.replace(value).is_some() {
                    return Err(Error::parse(line, format!("'{head}' given twice")));
                }
            }
            "psi" => {
                let Some(k) = k else {
                    return Err(Error::parse(line, "missing 'k' header"));
                };
                let phi = parse_expr(rest, line)?;
                if phi.max_variable() as u64 > k {
                    return Err(Error::parse(line, format!("variable x{} out of range for k = {k}", phi.max_variable())));
                }
                psis.push(phi);
            }
            other => return Err(Error::parse(line, format!("unknown directive '{other}'"))),
        }
    }
    let last = text.lines().count().max(1);
    let k = k.ok_or_else(|| Error::parse(last, "missing 'k' header"))?;
    let t = t.ok_or_else(|| Error::parse(last, "missing 't' header"))?;
    if k == 0 {
        return Err(Error::parse(last, "k must be at least 1"));
    }
    if psis.is_empty() {
        return Err(Error::parse(last, "no 'psi' lines"));
    }
    CountingSentence::new(k as usize, psis, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(a: u32) -> Term {
        Term::X(a)
    }

    #[test]
    fn parses_the_pds_sentence() {
        let s = parse_sentence("k 1\nt 5\npsi E(x1,y) | x1=y").unwrap();
        assert_eq!(s, encode_pds(1).unwrap().with_threshold(5));
    }

    #[test]
    fn parses_the_two_vertex_cover_formulas() {
        let s = parse_sentence("k 2\nt 0\npsi E(x1,y)\npsi E(x2,y) & !(y=x1)\n").unwrap();
        assert_eq!(s, encode_pvc(2).unwrap());
    }

    #[test]
    fn rejects_out_of_range_variable() {
        let err = parse_sentence("k 2\nt 0\npsi E(x3,y)").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(parse_sentence("t 0\npsi y=y").is_err());
        assert!(parse_sentence("k 1\npsi y=y").is_err());
        assert!(matches!(parse_sentence("k 1\nt 0\npsi E(x1 y)"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn precedence_and_round_trip() {
        let phi = parse_formula("!x1=y | E(x1, y) & y = x2").unwrap();
        let want = QFFormula::Equal(x(1), Term::Y)
            .not()
            .or(QFFormula::Adjacent(x(1), Term::Y).and(QFFormula::Equal(Term::Y, x(2))));
        assert_eq!(phi, want);
        let nested = parse_formula("!(x1=y | x2=y) & (E(x1,x2) | y=y)").unwrap();
        for f in [phi, nested] {
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn evaluation() {
        let adj = |a: u32, b: u32| (a, b) == (1, 2) || (a, b) == (2, 1);
        let eq = |a: u32, b: u32| a == b;
        let e = parse_formula("E(x1,y)").unwrap();
        assert!(eval_qf(&e, &adj, &eq, &|t| if t == Term::Y { 2 } else { 1 }));
        let same = parse_formula("x1=y").unwrap();
        assert!(eval_qf(&same, &adj, &eq, &|_| 5));
        let self_pair = parse_formula("!(E(x1,y)) & x1=y").unwrap();
        assert!(eval_qf(&self_pair, &adj, &eq, &|_| 1));
    }

    #[test]
    fn encodings() {
        assert_eq!(encode_pds(1).unwrap().psis[0].to_string(), "E(x1,y) | x1=y");
        assert_eq!(encode_pds(2).unwrap().psis[0].to_string(), "E(x1,y) | x1=y | E(x2,y) | x2=y");
        assert!(encode_pds(0).is_err());
        let pvc = encode_pvc(2).unwrap();
        assert_eq!(pvc.psis.len(), 2);
        assert_eq!(pvc.psis[0].to_string(), "E(x1,y)");
        assert_eq!(pvc.psis[1].to_string(), "E(x2,y) & !y=x1");
    }
}
