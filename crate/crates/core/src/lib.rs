//! Causal processes as string diagrams over exact subprobability kernels.
//!
//! The term language describes processes wired from boxes: finite
//! subprobability matrices, copying, deleting, and crossing of wires,
//! sequential and parallel composition, convex mixtures, and two
//! code-handling primitives, a universal interpreter and a specializer.
//! Types are flat tensor lists of named finite alphabets and a code type
//! whose values are program texts; a process evaluates to a kernel mapping
//! each input event to an exact rational subdistribution over outputs, with
//! missing mass standing for nontermination.
//!
//! On top of the core calculus sit the modeling operations, parametrized
//! models that emit codes, predictions through the interpreter, steering by
//! deterministic reparametrization, partial evaluation, and the
//! self-confirming fixpoint construction, a program built to predict its
//! own behaviour, together with a verifier that compares the process
//! against its own prediction probe by probe.
//!
//! ```
//! use causal_core::{eval, parse_term, Event, Fuel};
//!
//! let t = parse_term("(seq (copy (enum X 2)) (par (id (enum X 2)) (del (enum X 2))))").unwrap();
//! let k = eval(&t, Fuel::DEFAULT).unwrap();
//! let d = k.apply_to(&Event::val(1)).unwrap();
//! assert_eq!(d, causal_core::SubDist::point(Event::val(1)));
//! ```

pub mod dist;
pub mod error;
pub mod event;
pub mod eval;
pub mod fixpoint;
pub mod kernel;
pub mod laws;
pub mod model;
pub mod rat;
pub mod render;
pub mod syntax;
pub mod term;
pub mod ty;

pub use dist::SubDist;
pub use error::{Error, Result};
pub use event::{Atom, Event};
pub use eval::{eval, Fuel};
pub use fixpoint::{build_self_confirming, verify_self_confirming, Fixpoint, Report};
pub use kernel::{
    data_services, function_check, indistinguishable, is_comonoid_hom, is_function,
    FunctionCheck, Kernel,
};
pub use model::{prediction, specialize, steer, synthesize_model, ParamModel, SteeringMap};
pub use rat::Rat;
pub use render::render;
pub use syntax::{
    parse_event, parse_probes, parse_rational, parse_term, parse_type, serialize, Code,
};
pub use term::Term;
pub use ty::{Base, Ty};
