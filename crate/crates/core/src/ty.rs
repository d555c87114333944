//! Object types: flat tensor lists of base factors.
//!
//! A type is the ordered list of its base factors; the unit type is the
//! empty list and tensor is concatenation. Keeping the representation flat
//! makes the monoidal structure strict: associativity and the unit laws are
//! identities of the data, not rewrites.

use std::fmt;

use crate::error::{Error, Result};
use crate::event::{Atom, Event};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    /// Named finite alphabet with values `0..card`; `card >= 1`.
    Enum { name: String, card: usize },
    /// The type of program texts.
    Code,
}

impl Base {
    fn admits(&self, atom: &Atom) -> bool {
        match (self, atom) {
            (Base::Enum { card, .. }, Atom::Val(v)) => v < card,
            (Base::Code, Atom::Code(_)) => true,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ty(Vec<Base>);

impl Ty {
    pub fn unit() -> Ty {
        Ty(Vec::new())
    }

    pub fn enumeration(name: impl Into<String>, card: usize) -> Ty {
        debug_assert!(card >= 1, "enum cardinality must be positive");
        Ty(vec![Base::Enum { name: name.into(), card }])
    }

    pub fn code() -> Ty {
        Ty(vec![Base::Code])
    }

    pub fn from_factors(factors: Vec<Base>) -> Ty {
        Ty(factors)
    }

    /// Tensor of two types: concatenation of factor lists.
    pub fn tensor(&self, other: &Ty) -> Ty {
        let mut factors = self.0.clone();
        factors.extend(other.0.iter().cloned());
        Ty(factors)
    }

    pub fn factors(&self) -> &[Base] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// True when no factor is the code type, i.e. the event space is finite.
    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|b| matches!(b, Base::Enum { .. }))
    }

    pub fn split(&self, k: usize) -> (Ty, Ty) {
        let (a, b) = self.0.split_at(k);
        (Ty(a.to_vec()), Ty(b.to_vec()))
    }

    /// Leading factor and remainder, if the type is not the unit.
    pub fn uncons(&self) -> Option<(Ty, Ty)> {
        if self.is_unit() {
            None
        } else {
            Some(self.split(1))
        }
    }

    pub fn admits(&self, event: &Event) -> bool {
        event.arity() == self.arity()
            && self.0.iter().zip(event.atoms()).all(|(b, a)| b.admits(a))
    }

    /// Number of events, `None` when the type involves the code type or the
    /// count overflows.
    pub fn event_count(&self) -> Option<usize> {
        self.0.iter().try_fold(1usize, |acc, b| match b {
            Base::Enum { card, .. } => acc.checked_mul(*card),
            Base::Code => None,
        })
    }

    /// All events in row-major order: the last factor varies fastest.
    pub fn events(&self) -> Result<Vec<Event>> {
        if !self.is_finite() {
            return Err(Error::NotFinite(format!(
                "type {self} involves the code type"
            )));
        }
        let count = self
            .event_count()
            .ok_or_else(|| Error::NotFinite(format!("event space of {self} is too large")))?;
        let mut out = Vec::with_capacity(count);
        let mut current = vec![0usize; self.arity()];
        for _ in 0..count {
            out.push(Event::from_atoms(current.iter().map(|&v| Atom::Val(v)).collect()));
            for pos in (0..self.arity()).rev() {
                let card = match &self.0[pos] {
                    Base::Enum { card, .. } => *card,
                    Base::Code => unreachable!("finite checked above"),
                };
                current[pos] += 1;
                if current[pos] < card {
                    break;
                }
                current[pos] = 0;
            }
        }
        Ok(out)
    }

    /// Row-major index of an event of this type, the inverse of the order
    /// produced by [`Ty::events`]. `None` if the event does not inhabit the
    /// type or the type is not finite.
    pub fn event_index(&self, event: &Event) -> Option<usize> {
        if !self.admits(event) {
            return None;
        }
        let mut index = 0usize;
        for (base, atom) in self.0.iter().zip(event.atoms()) {
            match (base, atom) {
                (Base::Enum { card, .. }, Atom::Val(v)) => {
                    index = index.checked_mul(*card)?.checked_add(*v)?;
                }
                _ => return None,
            }
        }
        Some(index)
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Enum { name, card } => write!(f, "(enum {name} {card})"),
            Base::Code => write!(f, "code"),
        }
    }
}

impl fmt::Display for Ty {
    /// Canonical type syntax: `unit`, a bare factor, or right-nested
    /// `(tensor ...)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [] => write!(f, "unit"),
            [b] => write!(f, "{b}"),
            [b, ..] => {
                let rest = Ty(self.0[1..].to_vec());
                write!(f, "(tensor {b} {rest})")
            }
        }
    }
}
