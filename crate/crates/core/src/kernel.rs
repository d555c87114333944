//! Subprobability kernels and the operations the term language denotes.
//!
//! A kernel is a typed transition rule: for each input event of `dom` it
//! yields a subdistribution over events of `cod`. Sequential composition is
//! the (sub)stochastic matrix product, parallel composition the Kronecker
//! product, both taken pointwise on finitely supported outputs so they also
//! work over the code type.

use std::sync::Arc;

use num::One;

use crate::dist::SubDist;
use crate::error::{Error, Result};
use crate::event::Event;
use crate::rat::Rat;
use crate::ty::Ty;

#[derive(Clone)]
pub struct Kernel {
    dom: Ty,
    cod: Ty,
    rule: Arc<dyn Fn(&Event) -> SubDist + Send + Sync>,
}

impl std::fmt::Debug for Kernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Kernel({} -> {})", self.dom, self.cod)
    }
}

impl Kernel {
    pub fn new(
        dom: Ty,
        cod: Ty,
        rule: impl Fn(&Event) -> SubDist + Send + Sync + 'static,
    ) -> Kernel {
        Kernel { dom, cod, rule: Arc::new(rule) }
    }

    pub fn dom(&self) -> &Ty {
        &self.dom
    }

    pub fn cod(&self) -> &Ty {
        &self.cod
    }

    /// Transition without validating the input; callers inside this crate
    /// only feed events that inhabit `dom` by construction.
    pub(crate) fn transition(&self, e: &Event) -> SubDist {
        (self.rule)(e)
    }

    /// Transition for an input event, validated against `dom`.
    ///
    /// # Errors
    ///
    /// `InvalidEvent` when the event does not inhabit the domain.
    pub fn apply_to(&self, e: &Event) -> Result<SubDist> {
        if !self.dom.admits(e) {
            return Err(Error::InvalidEvent(format!(
                "event {e} does not inhabit domain {}",
                self.dom
            )));
        }
        Ok(self.transition(e))
    }

    pub fn identity(ty: Ty) -> Kernel {
        Kernel::new(ty.clone(), ty, |e| SubDist::point(e.clone()))
    }

    pub fn swap(a: Ty, b: Ty) -> Kernel {
        let front = a.arity();
        Kernel::new(a.tensor(&b), b.tensor(&a), move |e| {
            SubDist::point(e.swap(front))
        })
    }

    pub fn copy(ty: Ty) -> Kernel {
        Kernel::new(ty.clone(), ty.tensor(&ty), |e| SubDist::point(e.pair(e)))
    }

    pub fn del(ty: Ty) -> Kernel {
        Kernel::new(ty, Ty::unit(), |_| SubDist::point(Event::unit()))
    }

    pub fn constant(ty: Ty, value: Event) -> Kernel {
        debug_assert!(ty.admits(&value));
        Kernel::new(Ty::unit(), ty, move |_| SubDist::point(value.clone()))
    }

    /// The all-zero kernel, denotation of anything that never returns.
    pub fn zero(dom: Ty, cod: Ty) -> Kernel {
        Kernel::new(dom, cod, |_| SubDist::zero())
    }

    /// Kernel of a literal matrix. The matrix must already satisfy the
    /// literal typing rules (finite types, matching dimensions, nonnegative
    /// entries, row sums at most one).
    pub fn lit(dom: Ty, cod: Ty, matrix: Vec<Vec<Rat>>) -> Kernel {
        let outputs: Vec<Event> = cod.events().expect("literal codomain is finite");
        let dom_for_rule = dom.clone();
        Kernel::new(dom, cod, move |e| {
            let row = dom_for_rule.event_index(e).expect("event inhabits domain");
            matrix[row]
                .iter()
                .zip(outputs.iter())
                .map(|(w, o)| (o.clone(), w.clone()))
                .collect()
        })
    }

    /// Sequential composition: matrix product, summed over the middle
    /// events that actually carry mass.
    pub fn seq(&self, other: &Kernel) -> Result<Kernel> {
        if self.cod != other.dom {
            return Err(Error::TypeMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.dom, self.cod, other.dom, other.cod
            )));
        }
        let first = self.clone();
        let second = other.clone();
        Ok(Kernel::new(self.dom.clone(), other.cod.clone(), move |e| {
            let mid = first.transition(e);
            let mut out = SubDist::zero();
            for (m, w) in mid.iter() {
                for (o, v) in second.transition(m).iter() {
                    out.push(o.clone(), w * v);
                }
            }
            out
        }))
    }

    /// Parallel composition: Kronecker product. The input splits at the
    /// boundary between the two domains, the outputs concatenate.
    pub fn par(&self, other: &Kernel) -> Kernel {
        let split = self.dom.arity();
        let left = self.clone();
        let right = other.clone();
        Kernel::new(
            self.dom.tensor(&other.dom),
            self.cod.tensor(&other.cod),
            move |e| {
                let (a, u) = e.split(split);
                let da = left.transition(&a);
                let du = right.transition(&u);
                let mut out = SubDist::zero();
                for (x, w) in da.iter() {
                    for (y, v) in du.iter() {
                        out.push(x.pair(y), w * v);
                    }
                }
                out
            },
        )
    }

    /// Convex mixture of two kernels with the same signature.
    pub fn mix(weight: Rat, left: &Kernel, right: &Kernel) -> Result<Kernel> {
        if left.dom != right.dom || left.cod != right.cod {
            return Err(Error::TypeMismatch(format!(
                "cannot mix {} -> {} with {} -> {}",
                left.dom, left.cod, right.dom, right.cod
            )));
        }
        let l = left.clone();
        let r = right.clone();
        let rest = Rat::one() - weight.clone();
        Ok(Kernel::new(left.dom.clone(), left.cod.clone(), move |e| {
            l.transition(e).scale(&weight).add(&r.transition(e).scale(&rest))
        }))
    }

    /// Dense matrix over all events, rows by dom, columns by cod, both in
    /// row-major event order.
    ///
    /// # Errors
    ///
    /// `NotFinite` when either side involves the code type.
    pub fn matrix(&self) -> Result<Vec<Vec<Rat>>> {
        let inputs = self.dom.events()?;
        let outputs = self.cod.events()?;
        let mut rows = Vec::with_capacity(inputs.len());
        for e in &inputs {
            let d = self.transition(e);
            rows.push(outputs.iter().map(|o| d.weight(o)).collect());
        }
        Ok(rows)
    }

    /// The probe set to use: the given one, validated, or every event of the
    /// domain when it is finite.
    ///
    /// # Errors
    ///
    /// `NeedProbes` for a code-involving domain without probes,
    /// `InvalidEvent` for probes outside the domain.
    pub fn probes_or_all(&self, probes: Option<&[Event]>) -> Result<Vec<Event>> {
        match probes {
            Some(events) => {
                for e in events {
                    if !self.dom.admits(e) {
                        return Err(Error::InvalidEvent(format!(
                            "probe {e} does not inhabit domain {}",
                            self.dom
                        )));
                    }
                }
                Ok(events.to_vec())
            }
            None => self.dom.events().map_err(|_| Error::NeedProbes),
        }
    }

    /// Plain-text transition table, one line per probe:
    /// `EVENT -> {EVENT: RAT, ...}`, entries in canonical event order.
    pub fn dump(&self, probes: Option<&[Event]>) -> Result<String> {
        let probes = self.probes_or_all(probes)?;
        let mut out = String::new();
        for e in &probes {
            let d = self.transition(e);
            let entries: Vec<String> =
                d.iter().map(|(o, w)| format!("{o}: {w}")).collect();
            out.push_str(&format!("{e} -> {{{}}}\n", entries.join(", ")));
        }
        Ok(out)
    }
}

/// The copy, delete, and swap services of a type, in that order.
pub fn data_services(ty: &Ty) -> (Kernel, Kernel, Kernel) {
    (
        Kernel::copy(ty.clone()),
        Kernel::del(ty.clone()),
        Kernel::swap(ty.clone(), ty.clone()),
    )
}

/// Exact equality of two kernels of the same signature on the probe set
/// (all domain events when finite and no probes are given).
///
/// # Errors
///
/// `TypeMismatch` when signatures differ, plus the probe errors of
/// [`Kernel::probes_or_all`].
pub fn indistinguishable(a: &Kernel, b: &Kernel, probes: Option<&[Event]>) -> Result<bool> {
    if a.dom != b.dom || a.cod != b.cod {
        return Err(Error::TypeMismatch(format!(
            "cannot compare {} -> {} with {} -> {}",
            a.dom, a.cod, b.dom, b.cod
        )));
    }
    let probes = a.probes_or_all(probes)?;
    Ok(probes.iter().all(|e| a.transition(e) == b.transition(e)))
}

/// Outcome of the row test for being a function, split into its two
/// halves so callers can say which one failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctionCheck {
    /// Every probe keeps total mass exactly one.
    pub total: bool,
    /// No probe puts weight on more than one output.
    pub single_valued: bool,
}

impl FunctionCheck {
    /// A kernel is a function exactly when it is total and single-valued.
    pub fn is_function(&self) -> bool {
        self.total && self.single_valued
    }
}

/// Row test for being a function: checks per probe that the kernel
/// returns mass exactly one (total) concentrated on a single output
/// (single-valued), and reports the two halves separately.
///
/// # Errors
///
/// Probe errors of [`Kernel::probes_or_all`].
pub fn function_check(k: &Kernel, probes: Option<&[Event]>) -> Result<FunctionCheck> {
    let probes = k.probes_or_all(probes)?;
    let mut check = FunctionCheck { total: true, single_valued: true };
    for e in &probes {
        let d = k.transition(e);
        check.total &= d.mass() == Rat::one();
        check.single_valued &= d.iter().count() <= 1;
    }
    Ok(check)
}

/// Row test for being a function: on every probe, the kernel returns a
/// point mass of weight exactly one (total and single-valued).
///
/// # Errors
///
/// Probe errors of [`Kernel::probes_or_all`].
pub fn is_function(k: &Kernel, probes: Option<&[Event]>) -> Result<bool> {
    Ok(function_check(k, probes)?.is_function())
}

/// Comonoid-homomorphism test for being a function: the kernel commutes
/// with copying and deleting, i.e. `copy . k == (k (x) k) . copy` and
/// `del . k == del` on the probe set. Agrees with [`is_function`] on every
/// kernel; both are kept so the agreement itself can be checked.
///
/// # Errors
///
/// Probe errors of [`Kernel::probes_or_all`].
pub fn is_comonoid_hom(k: &Kernel, probes: Option<&[Event]>) -> Result<bool> {
    let probes = k.probes_or_all(probes)?;
    let copy_then = Kernel::copy(k.dom.clone()).seq(&k.par(k)).expect("typed");
    let then_copy = k.seq(&Kernel::copy(k.cod.clone())).expect("typed");
    let del_dom = Kernel::del(k.dom.clone());
    let then_del = k.seq(&Kernel::del(k.cod.clone())).expect("typed");
    Ok(indistinguishable(&then_copy, &copy_then, Some(&probes))?
        && indistinguishable(&then_del, &del_dom, Some(&probes))?)
}
