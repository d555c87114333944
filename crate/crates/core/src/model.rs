//! Parametrized models, steering, and the specializer.
//!
//! A parametrized model is a term that emits codes: its output type is the
//! code type, its domain is the parameter type. Predictions are made by
//! feeding the emitted code to the universal interpreter next to the
//! observed cause. Steering precomposes a model with a deterministic map of
//! parameters; the specializer fixes the leading input of a program to a
//! constant, returning the residual program as text.

use crate::error::{Error, Result};
use crate::eval::{eval, Fuel};
use crate::event::Event;
use crate::kernel::{is_function, Kernel};
use crate::syntax::{serialize, Code};
use crate::term::Term;
use crate::ty::Ty;

/// A term of signature `param -> code`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamModel {
    term: Term,
    param: Ty,
}

impl ParamModel {
    /// # Errors
    ///
    /// Typing errors of the term, or `TypeMismatch` when its output is not
    /// the code type.
    pub fn new(term: Term) -> Result<ParamModel> {
        let (dom, cod) = term.typecheck()?;
        if cod != Ty::code() {
            return Err(Error::TypeMismatch(format!(
                "a parametrized model must emit codes, this term emits {cod}"
            )));
        }
        Ok(ParamModel { term, param: dom })
    }

    pub fn term(&self) -> &Term {
        &self.term
    }

    pub fn param(&self) -> &Ty {
        &self.param
    }
}

/// A deterministic, total reparametrization, validated by the function test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteeringMap {
    term: Term,
    dom: Ty,
    cod: Ty,
}

impl SteeringMap {
    /// # Errors
    ///
    /// Typing errors of the term; `NeedProbes` when its domain involves the
    /// code type (the function test has nothing to enumerate);
    /// `NotAFunction` when some input yields anything but a unit point mass.
    pub fn new(term: Term, fuel: Fuel) -> Result<SteeringMap> {
        let (dom, cod) = term.typecheck()?;
        let kernel = eval(&term, fuel)?;
        if !is_function(&kernel, None)? {
            return Err(Error::NotAFunction(
                "steering map must be total and single-valued".into(),
            ));
        }
        Ok(SteeringMap { term, dom, cod })
    }

    pub fn term(&self) -> &Term {
        &self.term
    }

    pub fn dom(&self) -> &Ty {
        &self.dom
    }

    pub fn cod(&self) -> &Ty {
        &self.cod
    }
}

/// Prediction process of a model: run the model beside the observed cause
/// and interpret the emitted code on it. Signature
/// `param (x) arg -> out`.
pub fn prediction(model: &ParamModel, arg: &Ty, out: &Ty) -> Term {
    Term::seq(
        Term::par(model.term().clone(), Term::Id(arg.clone())),
        Term::apply(arg.clone(), out.clone()),
    )
}

/// A code whose interpretation is exactly the given kernel: the literal of
/// its transition matrix. Witnesses that every finite kernel is reachable
/// through the interpreter.
///
/// # Errors
///
/// `NotFinite` when either side of the kernel involves the code type.
pub fn synthesize_model(k: &Kernel) -> Result<Code> {
    let matrix = k.matrix()?;
    serialize(&Term::lit(k.dom().clone(), k.cod().clone(), matrix))
}

/// Precompose a model with a steering map of its parameter.
///
/// # Errors
///
/// `TypeMismatch` when the map does not land in the model's parameter type.
pub fn steer(model: &ParamModel, map: &SteeringMap) -> Result<ParamModel> {
    if map.cod() != model.param() {
        return Err(Error::TypeMismatch(format!(
            "steering map ends in {}, model expects {}",
            map.cod(),
            model.param()
        )));
    }
    ParamModel::new(Term::seq(map.term().clone(), model.term().clone()))
}

/// Residual program with the leading input fixed to `x`: the text of
/// `Seq(Par(Const(X, x), Id(rest)), program)`. Specialization always fixes
/// the leading factor; fix several inputs by iterating.
///
/// # Errors
///
/// `BadCode` when the text does not parse or does not typecheck, `BadParam`
/// when the program takes no input or `x` does not inhabit the leading
/// factor.
pub fn specialize(program: &Code, x: &Event) -> Result<Code> {
    let term = program.parse().map_err(|e| Error::BadCode(e.to_string()))?;
    let (dom, _) = term.typecheck().expect("parse checked typing");
    let Some((leading, rest)) = dom.uncons() else {
        return Err(Error::BadParam("program takes no input".into()));
    };
    if !leading.admits(x) {
        return Err(Error::BadParam(format!(
            "argument {x} does not inhabit leading factor {leading}"
        )));
    }
    let residual = Term::seq(
        Term::par(Term::constant(leading, x.clone()), Term::Id(rest)),
        term,
    );
    serialize(&residual)
}
