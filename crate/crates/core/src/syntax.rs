//! Concrete syntax: lexer, parser, and canonical printer.
//!
//! Everything is an s-expression, whitespace separated, with `#` starting a
//! comment that runs to end of line:
//!
//! ```text
//! term  := (id TY) | (swap TY TY) | (copy TY) | (del TY)
//!        | (lit TY TY MAT) | (const TY VAL)
//!        | (seq term term) | (par term term) | (mix RAT term term)
//!        | (apply TY TY) | (spec)
//! TY    := unit | (enum NAME NAT) | code | (tensor TY TY)
//! MAT   := ( ROW+ )      ROW := ( RAT+ )      RAT := INT | INT/POSINT
//! VAL   := NAT | (code "ESCAPED") | (pair VAL VAL) | unit
//! ```
//!
//! [`parse_term`] returns the term exactly as written (after typechecking);
//! [`serialize`] prints the normal form with reduced rationals, flattened
//! types, and right-nested `seq`/`par`/`tensor`/`pair` chains, single spaces
//! throughout. Serialization is injective on normal forms and
//! `serialize(parse(c)) == c` whenever `c` was produced by [`serialize`].

use std::fmt;

use num::bigint::BigInt;

use crate::error::{Error, Result};
use crate::event::Event;
use crate::rat::Rat;
use crate::term::Term;
use crate::ty::Ty;

/// A program text. Values returned by [`serialize`] are canonical; arbitrary
/// texts can be wrapped with [`Code::new`] and fail later, at parse or run
/// time, if they are not actually programs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code(String);

impl Code {
    pub fn new(text: impl Into<String>) -> Code {
        Code(text.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The code as an event of the code type.
    pub fn event(&self) -> Event {
        Event::code(self.0.clone())
    }

    pub fn parse(&self) -> Result<Term> {
        parse_term(&self.0)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Canonical text of a well-typed term: normalize, then print.
pub fn serialize(t: &Term) -> Result<Code> {
    let normal = t.normalize()?;
    Ok(Code(print_term(&normal)))
}

pub fn parse_term(src: &str) -> Result<Term> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.finish()?;
    t.typecheck()?;
    Ok(t)
}

pub fn parse_type(src: &str) -> Result<Ty> {
    let mut p = Parser::new(src)?;
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_event(src: &str) -> Result<Event> {
    let mut p = Parser::new(src)?;
    let e = p.value()?;
    p.finish()?;
    Ok(e)
}

/// A parenthesized list of values, e.g. `(0 (pair 1 0) unit)`.
pub fn parse_probes(src: &str) -> Result<Vec<Event>> {
    let mut p = Parser::new(src)?;
    p.expect_open("probe list")?;
    let mut probes = Vec::new();
    while !p.at_close() {
        probes.push(p.value()?);
    }
    p.expect_close()?;
    p.finish()?;
    Ok(probes)
}

/// A single rational, e.g. `0`, `3/4`, `-1/2`.
pub fn parse_rational(src: &str) -> Result<Rat> {
    let mut p = Parser::new(src)?;
    let r = p.rational()?;
    p.finish()?;
    Ok(r)
}

// --- printing ---

fn print_term(t: &Term) -> String {
    match t {
        Term::Id(ty) => format!("(id {ty})"),
        Term::Swap(a, b) => format!("(swap {a} {b})"),
        Term::Copy(ty) => format!("(copy {ty})"),
        Term::Del(ty) => format!("(del {ty})"),
        Term::Lit { dom, cod, matrix } => {
            format!("(lit {dom} {cod} {})", print_matrix(matrix))
        }
        Term::Const { ty, value } => format!("(const {ty} {value})"),
        Term::Seq(f, g) => format!("(seq {} {})", print_term(f), print_term(g)),
        Term::Par(f, g) => format!("(par {} {})", print_term(f), print_term(g)),
        Term::Mix { weight, left, right } => {
            format!("(mix {weight} {} {})", print_term(left), print_term(right))
        }
        Term::Apply { arg, out } => format!("(apply {arg} {out})"),
        Term::Spec => "(spec)".to_string(),
    }
}

fn print_matrix(matrix: &[Vec<Rat>]) -> String {
    let rows: Vec<String> = matrix
        .iter()
        .map(|row| {
            let entries: Vec<String> = row.iter().map(Rat::to_string).collect();
            format!("({})", entries.join(" "))
        })
        .collect();
    format!("({})", rows.join(" "))
}

// --- lexing ---

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Word(String),
    Text(String),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'(' => {
                toks.push(Token { tok: Tok::Open, offset: i });
                i += 1;
            }
            b')' => {
                toks.push(Token { tok: Tok::Close, offset: i });
                i += 1;
            }
            b'"' => {
                let start = i;
                let mut content = Vec::new();
                i += 1;
                loop {
                    if i >= bytes.len() {
                        return Err(Error::syntax(start, "unterminated string"));
                    }
                    match bytes[i] {
                        b'"' => {
                            i += 1;
                            break;
                        }
                        b'\\' => {
                            match bytes.get(i + 1) {
                                Some(b'"') => content.push(b'"'),
                                Some(b'\\') => content.push(b'\\'),
                                _ => {
                                    return Err(Error::syntax(i, "unknown escape"));
                                }
                            }
                            i += 2;
                        }
                        b => {
                            content.push(b);
                            i += 1;
                        }
                    }
                }
                let text = String::from_utf8(content)
                    .map_err(|_| Error::syntax(start, "string is not valid UTF-8"))?;
                toks.push(Token { tok: Tok::Text(text), offset: start });
            }
            _ => {
                let start = i;
                while i < bytes.len() && !matches!(bytes[i], b' ' | b'\t' | b'\r' | b'\n' | b'(' | b')' | b'"' | b'#')
                {
                    i += 1;
                }
                let word = std::str::from_utf8(&bytes[start..i])
                    .expect("split at ascii boundaries")
                    .to_string();
                toks.push(Token { tok: Tok::Word(word), offset: start });
            }
        }
    }
    Ok(toks)
}

// --- parsing ---

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Parser> {
        Ok(Parser { toks: lex(src)?, pos: 0, end: src.len() })
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn next(&mut self, what: &str) -> Result<Token> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::syntax(self.end, format!("expected {what}, found end of input")))?;
        self.pos += 1;
        Ok(t)
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(Error::syntax(t.offset, "trailing input")),
        }
    }

    fn expect_open(&mut self, what: &str) -> Result<usize> {
        let t = self.next(what)?;
        match t.tok {
            Tok::Open => Ok(t.offset),
            _ => Err(Error::syntax(t.offset, format!("expected {what} to open with `(`"))),
        }
    }

    fn expect_close(&mut self) -> Result<()> {
        let t = self.next("`)`")?;
        match t.tok {
            Tok::Close => Ok(()),
            _ => Err(Error::syntax(t.offset, "expected `)`")),
        }
    }

    fn at_close(&self) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Close, .. }))
    }

    fn word(&mut self, what: &str) -> Result<(String, usize)> {
        let t = self.next(what)?;
        match t.tok {
            Tok::Word(w) => Ok((w, t.offset)),
            _ => Err(Error::syntax(t.offset, format!("expected {what}"))),
        }
    }

    fn term(&mut self) -> Result<Term> {
        self.expect_open("a term")?;
        let (head, off) = self.word("a term head")?;
        let t = match head.as_str() {
            "id" => Term::Id(self.ty()?),
            "swap" => {
                let a = self.ty()?;
                let b = self.ty()?;
                Term::Swap(a, b)
            }
            "copy" => Term::Copy(self.ty()?),
            "del" => Term::Del(self.ty()?),
            "lit" => {
                let dom = self.ty()?;
                let cod = self.ty()?;
                let matrix = self.matrix()?;
                Term::lit(dom, cod, matrix)
            }
            "const" => {
                let ty = self.ty()?;
                let value = self.value()?;
                Term::constant(ty, value)
            }
            "seq" => {
                let f = self.term()?;
                let g = self.term()?;
                Term::seq(f, g)
            }
            "par" => {
                let f = self.term()?;
                let g = self.term()?;
                Term::par(f, g)
            }
            "mix" => {
                let weight = self.rational()?;
                let left = self.term()?;
                let right = self.term()?;
                Term::mix(weight, left, right)
            }
            "apply" => {
                let arg = self.ty()?;
                let out = self.ty()?;
                Term::apply(arg, out)
            }
            "spec" => Term::Spec,
            other => {
                return Err(Error::syntax(off, format!("unknown term head `{other}`")));
            }
        };
        self.expect_close()?;
        Ok(t)
    }

    fn ty(&mut self) -> Result<Ty> {
        let t = self.next("a type")?;
        match t.tok {
            Tok::Word(w) if w == "unit" => Ok(Ty::unit()),
            Tok::Word(w) if w == "code" => Ok(Ty::code()),
            Tok::Open => {
                let (head, off) = self.word("a type head")?;
                let ty = match head.as_str() {
                    "enum" => {
                        let (name, noff) = self.word("an enum name")?;
                        check_name(&name, noff)?;
                        let (card, coff) = self.word("an enum cardinality")?;
                        let card = parse_usize(&card, coff)?;
                        if card == 0 {
                            return Err(Error::syntax(coff, "enum cardinality must be positive"));
                        }
                        Ty::enumeration(name, card)
                    }
                    "tensor" => {
                        let a = self.ty()?;
                        let b = self.ty()?;
                        a.tensor(&b)
                    }
                    other => {
                        return Err(Error::syntax(off, format!("unknown type head `{other}`")));
                    }
                };
                self.expect_close()?;
                Ok(ty)
            }
            _ => Err(Error::syntax(t.offset, "expected a type")),
        }
    }

    fn value(&mut self) -> Result<Event> {
        let t = self.next("a value")?;
        match t.tok {
            Tok::Word(w) if w == "unit" => Ok(Event::unit()),
            Tok::Word(w) => {
                let v = parse_usize(&w, t.offset)?;
                Ok(Event::val(v))
            }
            Tok::Open => {
                let (head, off) = self.word("a value head")?;
                let e = match head.as_str() {
                    "code" => {
                        let inner = self.next("a string")?;
                        match inner.tok {
                            Tok::Text(text) => Event::code(text),
                            _ => {
                                return Err(Error::syntax(inner.offset, "expected a string"));
                            }
                        }
                    }
                    "pair" => {
                        let a = self.value()?;
                        let b = self.value()?;
                        a.pair(&b)
                    }
                    other => {
                        return Err(Error::syntax(off, format!("unknown value head `{other}`")));
                    }
                };
                self.expect_close()?;
                Ok(e)
            }
            _ => Err(Error::syntax(t.offset, "expected a value")),
        }
    }

    fn rational(&mut self) -> Result<Rat> {
        let (w, off) = self.word("a rational")?;
        parse_rat_word(&w, off)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<Rat>>> {
        let off = self.expect_open("a matrix")?;
        let mut rows = Vec::new();
        while !self.at_close() {
            rows.push(self.row()?);
        }
        if rows.is_empty() {
            return Err(Error::syntax(off, "matrix needs at least one row"));
        }
        self.expect_close()?;
        Ok(rows)
    }

    fn row(&mut self) -> Result<Vec<Rat>> {
        let off = self.expect_open("a matrix row")?;
        let mut row = Vec::new();
        while !self.at_close() {
            row.push(self.rational()?);
        }
        if row.is_empty() {
            return Err(Error::syntax(off, "matrix row needs at least one entry"));
        }
        self.expect_close()?;
        Ok(row)
    }
}

fn parse_usize(word: &str, offset: usize) -> Result<usize> {
    if word.is_empty() || !word.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::syntax(offset, format!("expected a natural number, found `{word}`")));
    }
    word.parse::<usize>()
        .map_err(|_| Error::syntax(offset, format!("number `{word}` is too large")))
}

fn parse_rat_word(word: &str, offset: usize) -> Result<Rat> {
    let (numer, denom) = match word.split_once('/') {
        None => (word, "1"),
        Some((n, d)) => (n, d),
    };
    let n = parse_int(numer, offset)?;
    if denom.is_empty() || !denom.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::syntax(offset, format!("denominator in `{word}` must be a positive integer")));
    }
    let d: BigInt = denom.parse().expect("digits parse");
    if d == BigInt::from(0) {
        return Err(Error::syntax(offset, format!("denominator in `{word}` must be positive")));
    }
    Ok(Rat::new(n, d))
}

fn parse_int(word: &str, offset: usize) -> Result<BigInt> {
    let digits = word.strip_prefix('-').unwrap_or(word);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::syntax(offset, format!("expected an integer, found `{word}`")));
    }
    Ok(word.parse().expect("checked digits"))
}

fn check_name(name: &str, offset: usize) -> Result<()> {
    let mut bytes = name.bytes();
    let ok = match bytes.next() {
        Some(b) if b.is_ascii_alphabetic() => {
            bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::syntax(offset, format!("invalid enum name `{name}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn en(name: &str, card: usize) -> Ty {
        Ty::enumeration(name, card)
    }

    #[test]
    fn parses_a_literal() {
        let t = parse_term("(lit (enum X 2) (enum X 2) ((1 0) (0 1)))").unwrap();
        assert_eq!(
            t,
            Term::lit(en("X", 2), en("X", 2), vec![
                vec![int(1), int(0)],
                vec![int(0), int(1)],
            ])
        );
    }

    #[test]
    fn comments_and_whitespace_are_skipped() {
        let src = "# identity on a two-valued alphabet\n#  more notes\n  (id\n  (enum X 2))\n";
        assert_eq!(parse_term(src).unwrap(), Term::Id(en("X", 2)));
    }

    #[test]
    fn tensor_types_flatten() {
        let t = parse_type("(tensor (tensor (enum A 2) unit) (tensor code (enum B 3)))").unwrap();
        assert_eq!(t, en("A", 2).tensor(&Ty::code()).tensor(&en("B", 3)));
    }

    #[test]
    fn serialize_reduces_and_canonicalizes() {
        let t = parse_term("(lit (enum X 2) unit ((2/4) (3/3)))").unwrap();
        assert_eq!(
            serialize(&t).unwrap().as_str(),
            "(lit (enum X 2) unit ((1/2) (1)))"
        );
        let ids = parse_term("(par (id (enum A 2)) (id (enum B 3)))").unwrap();
        assert_eq!(
            serialize(&ids).unwrap().as_str(),
            "(id (tensor (enum A 2) (enum B 3)))"
        );
    }

    #[test]
    fn canonical_text_round_trips() {
        let srcs = [
            "(spec)",
            "(apply (enum A 2) code)",
            "(seq (copy (enum X 2)) (par (id (enum X 2)) (del (enum X 2))))",
            "(mix 1/3 (id (enum X 2)) (lit (enum X 2) (enum X 2) ((0 1) (1 0))))",
            "(const (tensor (enum X 2) code) (pair 1 (code \"(spec)\")))",
        ];
        for src in srcs {
            let t = parse_term(src).unwrap();
            let c = serialize(&t).unwrap();
            assert_eq!(c.as_str(), src, "already-canonical text must be fixed");
            assert_eq!(parse_term(c.as_str()).unwrap(), t.normalize().unwrap());
        }
    }

    #[test]
    fn escaped_code_values_round_trip() {
        let inner = Term::constant(Ty::code(), Event::code("(spec)"));
        let c = serialize(&inner).unwrap();
        assert_eq!(c.as_str(), "(const code (code \"(spec)\"))");
        let outer = Term::constant(Ty::code(), Event::code(c.as_str()));
        let c2 = serialize(&outer).unwrap();
        assert_eq!(parse_term(c2.as_str()).unwrap(), outer);
    }

    #[test]
    fn error_offsets_point_at_the_problem() {
        match parse_term("(frob (enum X 2))") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_term("(id (enum X 2)") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 14),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_term("(id (enum X 0))") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 12),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_term("(id (enum X 2)) junk") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 16),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_term("(mix 1/0 (spec) (spec))") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn parse_typechecks() {
        let err = parse_term("(seq (id (enum X 2)) (id (enum Y 2)))");
        assert!(matches!(err, Err(Error::TypeMismatch(_))));
        let err = parse_term("(lit (enum X 2) (enum X 2) ((1 1) (0 1)))");
        assert!(matches!(err, Err(Error::BadMatrix(_))));
    }

    #[test]
    fn probe_lists() {
        let probes = parse_probes("(0 1 (pair 0 (code \"x\")) unit)").unwrap();
        assert_eq!(probes.len(), 4);
        assert_eq!(probes[0], Event::val(0));
        assert_eq!(probes[2], Event::val(0).pair(&Event::code("x")));
        assert_eq!(probes[3], Event::unit());
        assert_eq!(parse_probes("()").unwrap(), Vec::new());
    }

    #[test]
    fn rational_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-2/4").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("a/2").is_err());
    }
}
