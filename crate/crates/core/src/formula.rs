//! Intuitionistic propositional formulas.
//!
//! The AST carries exactly the Heyting signature: atoms, `bot`, `top`, `&`,
//! `|` and `->`. Negation and the biconditional are sugar and are expanded
//! when parsed or constructed:
//!
//! - `~A` is `A -> bot`
//! - `A <-> B` is `(A -> B) & (B -> A)`
//!
//! The printer recognises both shapes again, so `parse(print(f)) == f` holds
//! for every formula.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Words that cannot be used as atom names.
pub const RESERVED: [&str; 2] = ["bot", "top"];

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Bot,
    Top,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

/// Returns true if `name` can be used as an atom.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !RESERVED.contains(&name)
}

impl Formula {
    /// Builds an atom.
    ///
    /// # Panics
    ///
    /// Panics if `name` is not a valid, non-reserved identifier.
    pub fn atom(name: impl Into<String>) -> Formula {
        let name = name.into();
        assert!(is_identifier(&name), "invalid atom name {name:?}");
        Formula::Atom(name)
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Formula {
        Formula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    /// `~f`, stored as `f -> bot`.
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::implies(f, Formula::Bot)
    }

    /// `f <-> g`, stored as `(f -> g) & (g -> f)`.
    pub fn iff(f: Formula, g: Formula) -> Formula {
        Formula::and(
            Formula::implies(f.clone(), g.clone()),
            Formula::implies(g, f),
        )
    }

    /// Conjunction of all items, `top` when empty.
    pub fn conjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut iter = items.into_iter();
        match iter.next() {
            None => Formula::Top,
            Some(first) => iter.fold(first, Formula::and),
        }
    }

    /// Disjunction of all items, `bot` when empty.
    pub fn disjunction(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut iter = items.into_iter();
        match iter.next() {
            None => Formula::Bot,
            Some(first) => iter.fold(first, Formula::or),
        }
    }

    /// If this formula has the shape `f -> bot`, returns `f`.
    pub fn as_not(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(f, g) if **g == Formula::Bot => Some(f),
            _ => None,
        }
    }

    /// If this formula has the shape `(f -> g) & (g -> f)`, returns `(f, g)`.
    pub fn as_iff(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(l, r) => match (&**l, &**r) {
                (Formula::Implies(a, b), Formula::Implies(c, d)) if a == d && b == c => {
                    Some((a, b))
                }
                _ => None,
            },
            _ => None,
        }
    }

    /// Set of atom names occurring in the formula.
    pub fn free_atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(name) => {
                if !out.contains(name) {
                    out.insert(name.clone());
                }
            }
            Formula::Bot | Formula::Top => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    pub fn contains_atom(&self, name: &str) -> bool {
        match self {
            Formula::Atom(n) => n == name,
            Formula::Bot | Formula::Top => false,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.contains_atom(name) || r.contains_atom(name)
            }
        }
    }

    /// Height of the syntax tree; atoms and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bot | Formula::Top => 0,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bot | Formula::Top => 1,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    /// Replaces every occurrence of the atom `atom` by `replacement`.
    ///
    /// Follows the recursive equations of the substitution operator `[P/f]`:
    /// the atom itself is replaced, other atoms and constants are fixed, and
    /// each connective is rebuilt from its substituted operands.
    pub fn substitute(&self, atom: &str, replacement: &Formula) -> Formula {
        match self {
            Formula::Atom(name) if name == atom => replacement.clone(),
            Formula::Atom(_) | Formula::Bot | Formula::Top => self.clone(),
            Formula::And(l, r) => Formula::and(
                l.substitute(atom, replacement),
                r.substitute(atom, replacement),
            ),
            Formula::Or(l, r) => Formula::or(
                l.substitute(atom, replacement),
                r.substitute(atom, replacement),
            ),
            Formula::Implies(l, r) => Formula::implies(
                l.substitute(atom, replacement),
                r.substitute(atom, replacement),
            ),
        }
    }

    /// Renames atoms through `map`; atoms for which `map` returns `None` stay.
    pub fn rename_atoms(&self, map: &impl Fn(&str) -> Option<String>) -> Formula {
        match self {
            Formula::Atom(name) => match map(name) {
                Some(new) => Formula::Atom(new),
                None => self.clone(),
            },
            Formula::Bot | Formula::Top => self.clone(),
            Formula::And(l, r) => Formula::and(l.rename_atoms(map), r.rename_atoms(map)),
            Formula::Or(l, r) => Formula::or(l.rename_atoms(map), r.rename_atoms(map)),
            Formula::Implies(l, r) => Formula::implies(l.rename_atoms(map), r.rename_atoms(map)),
        }
    }
}

/// Returns an atom name starting with `base` that occurs in none of `avoid`.
pub fn fresh_atom(base: &str, avoid: &[&Formula]) -> String {
    (0..)
        .map(|i| format!("{base}_{i}"))
        .find(|name| avoid.iter().all(|f| !f.contains_atom(name)))
        .expect("unbounded supply of names")
}

/// Instantiates a two-letter relation formula: `apart[P/lhs][Q/rhs]`.
///
/// `apart` is written in the letters `P` and `Q`. The two substitutions are
/// applied in sequence. When `lhs` itself mentions `Q`, the second step would
/// rewrite it, so `Q` is first renamed apart to a fresh atom and `rhs` is
/// substituted for that atom instead.
pub fn apart_instantiate(apart: &Formula, lhs: &Formula, rhs: &Formula) -> Formula {
    instantiate_pair(apart, "P", "Q", lhs, rhs)
}

/// [`apart_instantiate`] with explicit letter names.
pub fn instantiate_pair(
    apart: &Formula,
    first: &str,
    second: &str,
    lhs: &Formula,
    rhs: &Formula,
) -> Formula {
    if lhs.contains_atom(second) {
        let fresh = fresh_atom(second, &[apart, lhs, rhs]);
        let renamed = apart.substitute(second, &Formula::Atom(fresh.clone()));
        renamed.substitute(first, lhs).substitute(&fresh, rhs)
    } else {
        apart.substitute(first, lhs).substitute(second, rhs)
    }
}

// ---------------------------------------------------------------------------
// Printing

const PREC_IFF: u8 = 1;
const PREC_IMPLIES: u8 = 2;
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;
const PREC_NOT: u8 = 5;
const PREC_ATOM: u8 = 6;

fn precedence(f: &Formula) -> u8 {
    if f.as_iff().is_some() {
        return PREC_IFF;
    }
    if f.as_not().is_some() {
        return PREC_NOT;
    }
    match f {
        Formula::Atom(_) | Formula::Bot | Formula::Top => PREC_ATOM,
        Formula::And(..) => PREC_AND,
        Formula::Or(..) => PREC_OR,
        Formula::Implies(..) => PREC_IMPLIES,
    }
}

fn write_at(f: &Formula, min_prec: u8, out: &mut String) {
    let prec = precedence(f);
    let parens = prec < min_prec;
    if parens {
        out.push('(');
    }
    if let Some((a, b)) = f.as_iff() {
        write_at(a, PREC_IFF + 1, out);
        out.push_str(" <-> ");
        write_at(b, PREC_IFF + 1, out);
    } else if let Some(a) = f.as_not() {
        out.push('~');
        write_at(a, PREC_NOT, out);
    } else {
        match f {
            Formula::Atom(name) => out.push_str(name),
            Formula::Bot => out.push_str("bot"),
            Formula::Top => out.push_str("top"),
            Formula::And(l, r) => {
                write_at(l, PREC_AND, out);
                out.push_str(" & ");
                write_at(r, PREC_AND + 1, out);
            }
            Formula::Or(l, r) => {
                write_at(l, PREC_OR, out);
                out.push_str(" | ");
                write_at(r, PREC_OR + 1, out);
            }
            Formula::Implies(l, r) => {
                write_at(l, PREC_IMPLIES + 1, out);
                out.push_str(" -> ");
                write_at(r, PREC_IMPLIES, out);
            }
        }
    }
    if parens {
        out.push(')');
    }
}

/// Minimal-parenthesis rendering in the ASCII grammar.
pub fn print(f: &Formula) -> String {
    let mut out = String::new();
    write_at(f, 0, &mut out);
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown token {found:?} at position {pos}")]
    UnknownToken { pos: usize, found: String },
    #[error("syntax error at position {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: usize,
        expected: &'static str,
        found: String,
    },
    #[error("`<->` is not associative; parenthesize the chain at position {pos}")]
    IffChain { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Bot,
    Top,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("atom `{name}`"),
            Tok::Bot => "`bot`".into(),
            Tok::Top => "`top`".into(),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => {
                i += 1;
                Tok::Not
            }
            b'&' => {
                i += 1;
                Tok::And
            }
            b'|' => {
                i += 1;
                Tok::Or
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 3;
                Tok::Iff
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                match &text[start..i] {
                    "bot" => Tok::Bot,
                    "top" => Tok::Top,
                    name => Tok::Ident(name.to_string()),
                }
            }
            _ => {
                let found = text[start..].chars().next().unwrap_or('?').to_string();
                return Err(ParseError::UnknownToken { pos: start, found });
            }
        };
        toks.push((start, tok));
    }
    toks.push((text.len(), Tok::End));
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].1.clone();
        if tok != Tok::End {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &'static str) -> ParseError {
        ParseError::Syntax {
            pos: self.offset(),
            expected,
            found: self.peek().describe(),
        }
    }

    // iff := implies ( "<->" implies )?
    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implies()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.implies()?;
            if *self.peek() == Tok::Iff {
                return Err(ParseError::IffChain { pos: self.offset() });
            }
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    // implies := or ( "->" implies )?
    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(_) => match self.bump() {
                Tok::Ident(name) => Ok(Formula::Atom(name)),
                _ => unreachable!(),
            },
            Tok::Bot => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.iff()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error("a formula")),
        }
    }
}

/// Parses the ASCII formula grammar.
///
/// Precedence from tightest to loosest: `~`, `&`, `|`, `->`, `<->`. `->` is
/// right-associative, `&` and `|` are left-associative and `<->` does not
/// associate.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = tokenize(text)?;
    let mut parser = Parser { toks, pos: 0 };
    let f = parser.iff()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error("end of input"));
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn a(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(
            p("P -> Q -> R"),
            Formula::implies(a("P"), Formula::implies(a("Q"), a("R")))
        );
    }

    #[test]
    fn negated_biconditional_desugars() {
        let expected = Formula::implies(
            Formula::and(
                Formula::implies(a("P"), a("Q")),
                Formula::implies(a("Q"), a("P")),
            ),
            Formula::Bot,
        );
        assert_eq!(p("~(P <-> Q)"), expected);
    }

    #[test]
    fn first_candidate_parses() {
        let expected = Formula::or(
            Formula::and(a("P"), Formula::not(a("Q"))),
            Formula::and(Formula::not(a("P")), a("Q")),
        );
        assert_eq!(p("(P & ~Q) | (~P & Q)"), expected);
        assert_eq!(p("P & ~Q | ~P & Q"), expected);
    }

    #[test]
    fn printing_examples() {
        assert_eq!(print(&p("P -> (Q -> R)")), "P -> Q -> R");
        assert_eq!(print(&Formula::Bot), "bot");
        assert_eq!(print(&Formula::not(a("P"))), "~P");
        assert_eq!(print(&p("(P -> Q) -> R")), "(P -> Q) -> R");
        assert_eq!(print(&p("~(P <-> Q)")), "~(P <-> Q)");
        assert_eq!(print(&p("(a | b) | c")), "a | b | c");
        assert_eq!(print(&p("a | (b | c)")), "a | (b | c)");
        assert_eq!(print(&p("~~y")), "~~y");
        assert_eq!(print(&p("(a <-> b) <-> c")), "(a <-> b) <-> c");
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(
            parse("P $ Q"),
            Err(ParseError::UnknownToken {
                pos: 2,
                found: "$".into()
            })
        );
        assert!(matches!(
            parse("P &"),
            Err(ParseError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse("(P"),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse("P Q"),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(parse(""), Err(ParseError::Syntax { pos: 0, .. })));
        assert_eq!(parse("a <-> b <-> c"), Err(ParseError::IffChain { pos: 8 }));
        assert!(parse("P - Q").is_err());
    }

    #[test]
    fn reserved_words_are_constants() {
        assert_eq!(p("bot"), Formula::Bot);
        assert_eq!(
            p("top -> bottom"),
            Formula::implies(Formula::Top, a("bottom"))
        );
        assert!(!is_identifier("bot"));
        assert!(!is_identifier("1a"));
        assert!(is_identifier("x_1"));
    }

    #[test]
    #[should_panic]
    fn reserved_atom_rejected() {
        Formula::atom("top");
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(
            p("P & Q").substitute("P", &Formula::Bot),
            Formula::and(Formula::Bot, a("Q"))
        );
        assert_eq!(p("Q").substitute("P", &Formula::Top), a("Q"));
        assert_eq!(p("P").substitute("P", &a("P")), a("P"));
    }

    #[test]
    fn free_atom_examples() {
        let set = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
        assert_eq!(p("~(P <-> Q)").free_atoms(), set(&["P", "Q"]));
        assert_eq!(Formula::Bot.free_atoms(), set(&[]));
        assert_eq!(
            p("P | Q").substitute("P", &a("R")).free_atoms(),
            set(&["R", "Q"])
        );
    }

    #[test]
    fn instantiation_examples() {
        let apart = p("~(P <-> Q)");
        assert_eq!(
            apart_instantiate(&apart, &Formula::Bot, &a("R")),
            Formula::not(Formula::iff(Formula::Bot, a("R")))
        );
        assert_eq!(
            apart_instantiate(&apart, &a("P"), &a("P")),
            Formula::not(Formula::iff(a("P"), a("P")))
        );
        let first = p("(P & ~Q) | (~P & Q)");
        assert_eq!(
            apart_instantiate(&first, &Formula::Bot, &Formula::Top),
            p("(bot & ~top) | (~bot & top)")
        );
    }

    #[test]
    fn instantiation_avoids_capture() {
        let apart = p("~(P <-> Q)");
        // lhs mentions Q: naive sequential substitution would rewrite it.
        let got = apart_instantiate(&apart, &a("Q"), &a("R"));
        assert_eq!(got, p("~(Q <-> R)"));
        let naive = apart.substitute("P", &a("Q")).substitute("Q", &a("R"));
        assert_eq!(naive, p("~(R <-> R)"));
        // swap
        assert_eq!(apart_instantiate(&apart, &a("Q"), &a("P")), p("~(Q <-> P)"));
    }

    #[test]
    fn fresh_atoms_avoid_existing_names() {
        let f = p("Q_0 & Q");
        assert_eq!(fresh_atom("Q", &[&f]), "Q_1");
    }
}
