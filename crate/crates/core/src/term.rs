//! Process terms and their typing.
//!
//! Terms denote subprobability kernels (see [`crate::eval`]). The
//! constructors mirror the concrete grammar one to one; convenience methods
//! build the boxed composites. [`Term::typecheck`] computes the signature
//! `(dom, cod)` or rejects the term; [`Term::normalize`] rewrites a
//! well-typed term to the canonical form the serializer prints.

use crate::error::{Error, Result};
use crate::event::Event;
use crate::rat::{in_unit_interval, Rat};
use crate::ty::Ty;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    /// Identity wire bundle on a type.
    Id(Ty),
    /// Crossing: `A (x) B -> B (x) A`.
    Swap(Ty, Ty),
    /// Copying: `A -> A (x) A`.
    Copy(Ty),
    /// Deleting: `A -> unit`.
    Del(Ty),
    /// Finite subprobability matrix, rows indexed by dom events, columns by
    /// cod events, both in row-major event order.
    Lit { dom: Ty, cod: Ty, matrix: Vec<Vec<Rat>> },
    /// Point mass: `unit -> ty`, emitting `value`.
    Const { ty: Ty, value: Event },
    /// Sequential composition, first then second.
    Seq(Box<Term>, Box<Term>),
    /// Parallel (tensor) composition, left beside right.
    Par(Box<Term>, Box<Term>),
    /// Convex mixture: `weight` on the left branch, the rest on the right.
    Mix { weight: Rat, left: Box<Term>, right: Box<Term> },
    /// Universal interpreter: `code (x) arg -> out`, runs the code on the
    /// argument when it parses and has exactly that signature.
    Apply { arg: Ty, out: Ty },
    /// Specializer: `code (x) code -> code`, fixes the leading input of a
    /// program to a constant.
    Spec,
}

impl Term {
    pub fn seq(f: Term, g: Term) -> Term {
        Term::Seq(Box::new(f), Box::new(g))
    }

    pub fn par(f: Term, g: Term) -> Term {
        Term::Par(Box::new(f), Box::new(g))
    }

    pub fn mix(weight: Rat, left: Term, right: Term) -> Term {
        Term::Mix { weight, left: Box::new(left), right: Box::new(right) }
    }

    pub fn lit(dom: Ty, cod: Ty, matrix: Vec<Vec<Rat>>) -> Term {
        Term::Lit { dom, cod, matrix }
    }

    pub fn constant(ty: Ty, value: Event) -> Term {
        Term::Const { ty, value }
    }

    pub fn apply(arg: Ty, out: Ty) -> Term {
        Term::Apply { arg, out }
    }

    /// Signature `(dom, cod)` of a well-typed term.
    ///
    /// # Errors
    ///
    /// `TypeMismatch` for composition or value errors, `BadMatrix` for
    /// malformed literals, `BadWeight` for mixture weights outside `[0, 1]`.
    pub fn typecheck(&self) -> Result<(Ty, Ty)> {
        match self {
            Term::Id(t) => Ok((t.clone(), t.clone())),
            Term::Swap(a, b) => Ok((a.tensor(b), b.tensor(a))),
            Term::Copy(t) => Ok((t.clone(), t.tensor(t))),
            Term::Del(t) => Ok((t.clone(), Ty::unit())),
            Term::Lit { dom, cod, matrix } => {
                check_matrix(dom, cod, matrix)?;
                Ok((dom.clone(), cod.clone()))
            }
            Term::Const { ty, value } => {
                if !ty.admits(value) {
                    return Err(Error::TypeMismatch(format!(
                        "constant value {value} does not inhabit {ty}"
                    )));
                }
                Ok((Ty::unit(), ty.clone()))
            }
            Term::Seq(f, g) => {
                let (fd, fc) = f.typecheck()?;
                let (gd, gc) = g.typecheck()?;
                if fc != gd {
                    return Err(Error::TypeMismatch(format!(
                        "sequential composition: first ends in {fc}, second expects {gd}"
                    )));
                }
                Ok((fd, gc))
            }
            Term::Par(f, g) => {
                let (fd, fc) = f.typecheck()?;
                let (gd, gc) = g.typecheck()?;
                Ok((fd.tensor(&gd), fc.tensor(&gc)))
            }
            Term::Mix { weight, left, right } => {
                if !in_unit_interval(weight) {
                    return Err(Error::BadWeight(format!(
                        "mixture weight {weight} is outside [0, 1]"
                    )));
                }
                let (ld, lc) = left.typecheck()?;
                let (rd, rc) = right.typecheck()?;
                if ld != rd || lc != rc {
                    return Err(Error::TypeMismatch(format!(
                        "mixture branches have signatures {ld} -> {lc} and {rd} -> {rc}"
                    )));
                }
                Ok((ld, lc))
            }
            Term::Apply { arg, out } => Ok((Ty::code().tensor(arg), out.clone())),
            Term::Spec => Ok((Ty::code().tensor(&Ty::code()), Ty::code())),
        }
    }

    /// Canonical form of a well-typed term.
    ///
    /// Rewrites only structural identities: unit-type services collapse to
    /// identities, identities are dropped from compositions, nested `seq` and
    /// `par` chains are flattened and re-nested to the right, and adjacent
    /// identity wires fuse. Nothing semantic is simplified, so distinct
    /// canonical terms may still denote the same kernel.
    pub fn normalize(&self) -> Result<Term> {
        self.typecheck()?;
        Ok(self.normalize_unchecked())
    }

    fn normalize_unchecked(&self) -> Term {
        match self {
            Term::Id(t) => Term::Id(t.clone()),
            Term::Swap(a, b) => {
                if a.is_unit() {
                    Term::Id(b.clone())
                } else if b.is_unit() {
                    Term::Id(a.clone())
                } else {
                    Term::Swap(a.clone(), b.clone())
                }
            }
            Term::Copy(t) if t.is_unit() => Term::Id(Ty::unit()),
            Term::Copy(t) => Term::Copy(t.clone()),
            Term::Del(t) if t.is_unit() => Term::Id(Ty::unit()),
            Term::Del(t) => Term::Del(t.clone()),
            Term::Lit { .. } | Term::Apply { .. } | Term::Spec => self.clone(),
            Term::Const { ty, .. } if ty.is_unit() => Term::Id(Ty::unit()),
            Term::Const { ty, value } => {
                Term::Const { ty: ty.clone(), value: value.clone() }
            }
            Term::Seq(..) => {
                let mut parts = Vec::new();
                self.flatten_seq(&mut parts);
                parts.retain(|p| !matches!(p, Term::Id(_)));
                match parts.len() {
                    0 => {
                        let (dom, _) = self.typecheck().expect("normalize checked typing");
                        Term::Id(dom)
                    }
                    _ => nest_right(parts, Term::seq),
                }
            }
            Term::Par(..) => {
                let mut parts = Vec::new();
                self.flatten_par(&mut parts);
                parts.retain(|p| !matches!(p, Term::Id(t) if t.is_unit()));
                let mut merged: Vec<Term> = Vec::with_capacity(parts.len());
                for part in parts {
                    match (merged.last_mut(), part) {
                        (Some(Term::Id(a)), Term::Id(b)) => *a = a.tensor(&b),
                        (_, part) => merged.push(part),
                    }
                }
                if merged.is_empty() {
                    Term::Id(Ty::unit())
                } else {
                    nest_right(merged, Term::par)
                }
            }
            Term::Mix { weight, left, right } => Term::Mix {
                weight: weight.clone(),
                left: Box::new(left.normalize_unchecked()),
                right: Box::new(right.normalize_unchecked()),
            },
        }
    }

    fn flatten_seq(&self, out: &mut Vec<Term>) {
        if let Term::Seq(f, g) = self {
            f.flatten_seq(out);
            g.flatten_seq(out);
        } else {
            out.push(self.normalize_unchecked());
        }
    }

    fn flatten_par(&self, out: &mut Vec<Term>) {
        if let Term::Par(f, g) = self {
            f.flatten_par(out);
            g.flatten_par(out);
        } else {
            out.push(self.normalize_unchecked());
        }
    }
}

fn nest_right(mut parts: Vec<Term>, join: fn(Term, Term) -> Term) -> Term {
    let last = parts.pop().expect("nest_right needs at least one part");
    parts.into_iter().rev().fold(last, |acc, part| join(part, acc))
}

fn check_matrix(dom: &Ty, cod: &Ty, matrix: &[Vec<Rat>]) -> Result<()> {
    if !dom.is_finite() || !cod.is_finite() {
        return Err(Error::BadMatrix(
            "literal over the code type has no finite dimensions".into(),
        ));
    }
    let rows = dom
        .event_count()
        .ok_or_else(|| Error::BadMatrix(format!("domain {dom} is too large")))?;
    let cols = cod
        .event_count()
        .ok_or_else(|| Error::BadMatrix(format!("codomain {cod} is too large")))?;
    if matrix.len() != rows {
        return Err(Error::BadMatrix(format!(
            "expected {rows} rows for domain {dom}, found {}",
            matrix.len()
        )));
    }
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::BadMatrix(format!(
                "row {i} has {} entries, expected {cols} for codomain {cod}",
                row.len()
            )));
        }
        let mut sum = Rat::from_integer(0.into());
        for entry in row {
            if *entry < Rat::from_integer(0.into()) {
                return Err(Error::BadMatrix(format!(
                    "row {i} entry {entry} is negative"
                )));
            }
            sum += entry;
        }
        if sum > Rat::from_integer(1.into()) {
            return Err(Error::BadMatrix(format!("row {i} sums to {sum} > 1")));
        }
    }
    Ok(())
}
