//! Evaluation of terms into kernels under a fuel budget.
//!
//! Evaluation is compositional: `seq`, `par`, and `mix` hand the same budget
//! to both children. Only the interpreter primitive `apply` spends fuel, one
//! unit per unfolding of a code value; the specializer is pure code
//! manipulation and spends none. An `apply` with no budget left returns the
//! zero subdistribution, so running out of fuel shows up as missing mass,
//! never as an error, and total mass is monotone nondecreasing in fuel.

use crate::dist::SubDist;
use crate::error::Result;
use crate::event::{Atom, Event};
use crate::kernel::Kernel;
use crate::syntax::{parse_term, Code};
use crate::term::Term;
use crate::ty::Ty;

/// Budget of interpreter unfoldings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fuel(pub u64);

impl Fuel {
    pub const DEFAULT: Fuel = Fuel(64);

    /// One unit less, or `None` when exhausted.
    pub fn spend(self) -> Option<Fuel> {
        self.0.checked_sub(1).map(Fuel)
    }

    pub fn doubled(self) -> Fuel {
        Fuel(self.0.saturating_mul(2))
    }
}

impl Default for Fuel {
    fn default() -> Fuel {
        Fuel::DEFAULT
    }
}

/// Kernel denoted by a term at the given fuel.
///
/// # Errors
///
/// Only the typing errors of the term itself; evaluation proper cannot fail.
/// Failures inside interpreted code (unparseable text, signature mismatch,
/// exhausted fuel) all surface as missing mass.
pub fn eval(t: &Term, fuel: Fuel) -> Result<Kernel> {
    t.typecheck()?;
    Ok(build(t, fuel))
}

fn build(t: &Term, fuel: Fuel) -> Kernel {
    match t {
        Term::Id(ty) => Kernel::identity(ty.clone()),
        Term::Swap(a, b) => Kernel::swap(a.clone(), b.clone()),
        Term::Copy(ty) => Kernel::copy(ty.clone()),
        Term::Del(ty) => Kernel::del(ty.clone()),
        Term::Lit { dom, cod, matrix } => {
            Kernel::lit(dom.clone(), cod.clone(), matrix.clone())
        }
        Term::Const { ty, value } => Kernel::constant(ty.clone(), value.clone()),
        Term::Seq(f, g) => build(f, fuel).seq(&build(g, fuel)).expect("typechecked"),
        Term::Par(f, g) => build(f, fuel).par(&build(g, fuel)),
        Term::Mix { weight, left, right } => {
            Kernel::mix(weight.clone(), &build(left, fuel), &build(right, fuel))
                .expect("typechecked")
        }
        Term::Apply { arg, out } => interpreter(arg.clone(), out.clone(), fuel),
        Term::Spec => specializer(),
    }
}

/// The universal interpreter `code (x) arg -> out`. Parses the code, checks
/// that it has exactly the announced signature, and runs it on the rest of
/// the input with one unit of fuel spent.
fn interpreter(arg: Ty, out: Ty, fuel: Fuel) -> Kernel {
    let dom = Ty::code().tensor(&arg);
    let out_for_rule = out.clone();
    Kernel::new(dom, out, move |e| {
        let Some(rest) = fuel.spend() else {
            return SubDist::zero();
        };
        let (program, input) = e.split(1);
        let Some(Atom::Code(text)) = program.atoms().first() else {
            return SubDist::zero();
        };
        let Ok(term) = parse_term(text) else {
            return SubDist::zero();
        };
        let (d, c) = term.typecheck().expect("parse_term typechecks");
        if d != arg || c != out_for_rule {
            return SubDist::zero();
        }
        build(&term, rest).transition(&input)
    })
}

/// The specializer `code (x) code -> code`: a point mass on the residual
/// program, or no mass at all when the first input is not a program whose
/// leading input can be fixed.
fn specializer() -> Kernel {
    Kernel::new(Ty::code().tensor(&Ty::code()), Ty::code(), |e| {
        let (Some(Atom::Code(program)), Some(Atom::Code(argument))) =
            (e.atoms().first(), e.atoms().get(1))
        else {
            return SubDist::zero();
        };
        match crate::model::specialize(&Code::new(program.clone()), &Event::code(argument.clone()))
        {
            Ok(residual) => SubDist::point(residual.event()),
            Err(_) => SubDist::zero(),
        }
    })
}
