//! Events: the values flowing along wires.
//!
//! An event is a flat tuple of atoms, mirroring the flat factor lists of
//! [`crate::ty::Ty`]. The empty tuple is the unique value of the unit type,
//! and pairing is concatenation, so unit and associativity laws hold by
//! representation. The derived `Ord` (enum values numerically, code strings
//! lexicographically, tuples pointwise) is the canonical event order used
//! everywhere output is sorted.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// A value `0..card` of some named finite alphabet.
    Val(usize),
    /// A program text. Any string is admitted; whether it parses only
    /// matters when it is eventually run.
    Code(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event(Vec<Atom>);

impl Event {
    /// The empty tuple, sole inhabitant of the unit type.
    pub fn unit() -> Event {
        Event(Vec::new())
    }

    pub fn val(v: usize) -> Event {
        Event(vec![Atom::Val(v)])
    }

    pub fn code(text: impl Into<String>) -> Event {
        Event(vec![Atom::Code(text.into())])
    }

    pub fn from_atoms(atoms: Vec<Atom>) -> Event {
        Event(atoms)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Pairing; flat concatenation, hence strictly associative and unital.
    pub fn pair(&self, other: &Event) -> Event {
        let mut atoms = self.0.clone();
        atoms.extend(other.0.iter().cloned());
        Event(atoms)
    }

    /// Splits into the first `k` atoms and the rest. Panics if `k` exceeds
    /// the arity; callers split along type boundaries they already checked.
    pub fn split(&self, k: usize) -> (Event, Event) {
        let (a, b) = self.0.split_at(k);
        (Event(a.to_vec()), Event(b.to_vec()))
    }

    /// Reversed factor blocks: the last `back` atoms followed by the first
    /// `front` ones. This is what a wire crossing does to a value.
    pub fn swap(&self, front: usize) -> Event {
        let (a, b) = self.split(front);
        b.pair(&a)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Val(v) => write!(f, "{v}"),
            Atom::Code(text) => write!(f, "(code \"{}\")", escape(text)),
        }
    }
}

impl fmt::Display for Event {
    /// Canonical value syntax: `unit` for the empty tuple, a bare atom for
    /// arity one, and right-nested `(pair ...)` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [] => write!(f, "unit"),
            [a] => write!(f, "{a}"),
            [a, ..] => {
                let rest = Event(self.0[1..].to_vec());
                write!(f, "(pair {a} {rest})")
            }
        }
    }
}

/// Backslash-escapes `"` and `\` so code texts nest inside string literals
/// to any depth.
pub fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            _ => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_is_flat() {
        let e = Event::val(0).pair(&Event::val(1)).pair(&Event::val(2));
        let f = Event::val(0).pair(&Event::val(1).pair(&Event::val(2)));
        assert_eq!(e, f);
        assert_eq!(e.arity(), 3);
        assert_eq!(Event::unit().pair(&e), e);
        assert_eq!(e.pair(&Event::unit()), e);
    }

    #[test]
    fn display_forms() {
        assert_eq!(Event::unit().to_string(), "unit");
        assert_eq!(Event::val(3).to_string(), "3");
        let e = Event::val(0).pair(&Event::val(1)).pair(&Event::val(2));
        assert_eq!(e.to_string(), "(pair 0 (pair 1 2))");
        assert_eq!(Event::code("(spec)").to_string(), "(code \"(spec)\")");
    }

    #[test]
    fn escaping_nests() {
        assert_eq!(escape(r#"a "b" \c"#), r#"a \"b\" \\c"#);
        let inner = Event::code("x").to_string();
        let outer = Event::code(&inner).to_string();
        assert_eq!(outer, r#"(code "(code \"x\")")"#);
    }

    #[test]
    fn swap_blocks() {
        let e = Event::val(0).pair(&Event::val(1)).pair(&Event::val(2));
        assert_eq!(e.swap(1), Event::val(1).pair(&Event::val(2)).pair(&Event::val(0)));
        assert_eq!(e.swap(0), e);
        assert_eq!(e.swap(3), e);
    }
}
