//! Self-confirming models: a program that predicts its own behaviour.
//!
//! Given a process `q : code (x) A -> B` that consumes a model of itself,
//! the construction closes the loop with the specializer:
//!
//! ```text
//! G     = Seq(Par(Seq(Copy(code), Spec), Id(A)), q)
//! gamma = specialize(G, G)
//! ```
//!
//! `G` first specializes its own leading code input by a copy of itself,
//! then behaves like `q`; `gamma` is `G` applied to `G`, so running `gamma`
//! is running `q` with `gamma` itself as the model input. Verification
//! compares, for every argument `a`, the process run directly (left column)
//! against the prediction obtained by interpreting `gamma` (right column).
//! The interpreter costs one fuel unit, so for processes that consult their
//! model the two columns agree only in the limit; the verifier therefore
//! accepts either exact agreement or a discrepancy below epsilon that
//! shrinks when the fuel is doubled.

use num::Zero;

use crate::error::{Error, Result};
use crate::eval::{eval, Fuel};
use crate::event::Event;
use crate::kernel::Kernel;
use crate::model::specialize;
use crate::rat::Rat;
use crate::syntax::{serialize, Code};
use crate::term::Term;
use crate::ty::Ty;

/// Result of the fixpoint construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixpoint {
    /// The process, re-serialized canonically.
    pub q: Code,
    /// The one-step unfolding program `G`.
    pub g: Code,
    /// The self-confirming model `gamma = specialize(G, G)`.
    pub gamma: Code,
    /// Argument type `A` of the process.
    pub arg: Ty,
    /// Output type `B` of the process.
    pub out: Ty,
}

/// One verification row: the process run directly versus its own model's
/// prediction, on one argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeRow {
    pub probe: Event,
    pub left_mass: Rat,
    pub right_mass: Rat,
    pub discrepancy: Rat,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub rows: Vec<ProbeRow>,
    pub fuel: Fuel,
    pub epsilon: Rat,
    pub pass: bool,
}

impl Report {
    /// Plain-text table, one row per probe.
    pub fn table(&self) -> String {
        let mut out = String::from("a | L-mass | R-mass | max-entry-discrepancy | exact?\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{} | {} | {} | {} | {}\n",
                row.probe,
                row.left_mass,
                row.right_mass,
                row.discrepancy,
                if row.exact { "yes" } else { "no" }
            ));
        }
        out
    }
}

/// Close the self-reference loop of a process `q : code (x) A -> B`.
///
/// # Errors
///
/// `BadCode` when the text does not parse or typecheck, `WrongSignature`
/// when the domain does not start with the code type.
pub fn build_self_confirming(q: &Code) -> Result<Fixpoint> {
    let q_term = q.parse().map_err(|e| Error::BadCode(e.to_string()))?;
    let (dom, out) = q_term.typecheck().expect("parse checked typing");
    let arg = match dom.uncons() {
        Some((leading, rest)) if leading == Ty::code() => rest,
        _ => {
            return Err(Error::WrongSignature(format!(
                "the process must consume a model first, its domain is {dom}"
            )));
        }
    };
    let g_term = Term::seq(
        Term::par(
            Term::seq(Term::Copy(Ty::code()), Term::Spec),
            Term::Id(arg.clone()),
        ),
        q_term.clone(),
    );
    let g = serialize(&g_term)?;
    let gamma = specialize(&g, &g.event())?;
    Ok(Fixpoint { q: serialize(&q_term)?, g, gamma, arg, out })
}

/// Compare the process against its own model's prediction on every argument.
///
/// # Errors
///
/// `NotFinite` when the argument type involves the code type, `BadWeight`
/// for a negative epsilon.
pub fn verify_self_confirming(fx: &Fixpoint, fuel: Fuel, epsilon: &Rat) -> Result<Report> {
    if *epsilon < Rat::zero() {
        return Err(Error::BadWeight(format!("epsilon {epsilon} is negative")));
    }
    let probes = fx.arg.events().map_err(|_| {
        Error::NotFinite(format!(
            "cannot verify over argument type {}, it involves the code type",
            fx.arg
        ))
    })?;
    let (left, right) = columns(fx, fuel)?;
    let (left2, right2) = columns(fx, fuel.doubled())?;
    let mut rows = Vec::with_capacity(probes.len());
    let mut pass = true;
    for a in probes {
        let ld = left.transition(&a);
        let rd = right.transition(&a);
        let discrepancy = ld.max_discrepancy(&rd);
        let exact = discrepancy.is_zero();
        if !exact {
            let later = left2.transition(&a).max_discrepancy(&right2.transition(&a));
            if discrepancy > *epsilon || later >= discrepancy {
                pass = false;
            }
        }
        rows.push(ProbeRow {
            probe: a,
            left_mass: ld.mass(),
            right_mass: rd.mass(),
            discrepancy,
            exact,
        });
    }
    Ok(Report { rows, fuel, epsilon: epsilon.clone(), pass })
}

/// Left column: `q` run directly on `(gamma, a)`. Right column: the
/// prediction of `gamma`, i.e. the interpreter run on `(gamma, a)`.
fn columns(fx: &Fixpoint, fuel: Fuel) -> Result<(Kernel, Kernel)> {
    let q_term = fx.q.parse()?;
    let with_gamma = Term::seq(
        Term::par(
            Term::constant(Ty::code(), fx.gamma.event()),
            Term::Id(fx.arg.clone()),
        ),
        q_term,
    );
    let left = eval(&with_gamma, fuel)?;
    let predict = Term::seq(
        Term::par(
            Term::constant(Ty::code(), fx.gamma.event()),
            Term::Id(fx.arg.clone()),
        ),
        Term::apply(fx.arg.clone(), fx.out.clone()),
    );
    let right = eval(&predict, fuel)?;
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn en(name: &str, card: usize) -> Ty {
        Ty::enumeration(name, card)
    }

    fn base_matrix() -> Vec<Vec<Rat>> {
        vec![vec![rat(1, 2), rat(1, 2)], vec![int(0), int(1)]]
    }

    /// A process that ignores its model and just runs a fixed kernel.
    fn ignoring_q() -> Code {
        let q = Term::seq(
            Term::par(Term::Del(Ty::code()), Term::Id(en("A", 2))),
            Term::lit(en("A", 2), en("B", 2), base_matrix()),
        );
        serialize(&q).unwrap()
    }

    /// A process that only consults its model: run it through the
    /// interpreter, then postprocess.
    fn self_applying_q() -> Code {
        let q = Term::seq(
            Term::apply(en("A", 2), en("B", 2)),
            Term::lit(en("B", 2), en("B", 2), vec![
                vec![int(1), int(0)],
                vec![rat(1, 3), rat(2, 3)],
            ]),
        );
        serialize(&q).unwrap()
    }

    /// Half direct behaviour, half the model's own prediction.
    fn mixing_q() -> Code {
        let q = Term::mix(
            rat(1, 2),
            Term::apply(en("A", 2), en("B", 2)),
            Term::seq(
                Term::par(Term::Del(Ty::code()), Term::Id(en("A", 2))),
                Term::lit(en("A", 2), en("B", 2), base_matrix()),
            ),
        );
        serialize(&q).unwrap()
    }

    #[test]
    fn construction_closes_the_loop() {
        let fx = build_self_confirming(&ignoring_q()).unwrap();
        assert_eq!(fx.arg, en("A", 2));
        assert_eq!(fx.out, en("B", 2));
        // gamma really is the runtime specializer's output on (G, G).
        let spec = eval(&Term::Spec, Fuel(0)).unwrap();
        let d = spec.apply_to(&fx.g.event().pair(&fx.g.event())).unwrap();
        assert_eq!(d, crate::dist::SubDist::point(fx.gamma.event()));
        // And gamma has the process's own signature, model input gone.
        let gamma_term = fx.gamma.parse().unwrap();
        assert_eq!(gamma_term.typecheck().unwrap(), (en("A", 2), en("B", 2)));
    }

    #[test]
    fn unfolding_identity_holds_at_equal_fuel() {
        // eval(gamma, n)(a) == eval(G, n)(G, a) == eval(q, n)(gamma, a)
        for q in [ignoring_q(), self_applying_q(), mixing_q()] {
            let fx = build_self_confirming(&q).unwrap();
            let gamma_term = fx.gamma.parse().unwrap();
            let g_term = fx.g.parse().unwrap();
            let q_term = fx.q.parse().unwrap();
            for fuel in [Fuel(0), Fuel(1), Fuel(3)] {
                let kg = eval(&gamma_term, fuel).unwrap();
                let ku = eval(&g_term, fuel).unwrap();
                let kq = eval(&q_term, fuel).unwrap();
                for a in fx.arg.events().unwrap() {
                    let via_gamma = kg.apply_to(&a).unwrap();
                    let via_g = ku.apply_to(&fx.g.event().pair(&a)).unwrap();
                    let via_q = kq.apply_to(&fx.gamma.event().pair(&a)).unwrap();
                    assert_eq!(via_gamma, via_g);
                    assert_eq!(via_gamma, via_q);
                }
            }
        }
    }

    #[test]
    fn ignoring_process_is_exactly_self_confirming() {
        let fx = build_self_confirming(&ignoring_q()).unwrap();
        let report = verify_self_confirming(&fx, Fuel(2), &int(0)).unwrap();
        assert!(report.pass);
        assert!(report.rows.iter().all(|r| r.exact));
        // Both columns are the base kernel itself.
        assert_eq!(report.rows[0].left_mass, int(1));
        assert_eq!(report.rows[0].right_mass, int(1));
    }

    #[test]
    fn self_applying_process_diverges_to_zero() {
        let fx = build_self_confirming(&self_applying_q()).unwrap();
        for fuel in [Fuel(1), Fuel(5), Fuel(64)] {
            let report = verify_self_confirming(&fx, fuel, &int(0)).unwrap();
            assert!(report.pass, "zero == zero is exact agreement");
            for row in &report.rows {
                assert!(row.exact);
                assert_eq!(row.left_mass, int(0));
                assert_eq!(row.right_mass, int(0));
            }
        }
    }

    #[test]
    fn mixing_process_converges_geometrically() {
        let fx = build_self_confirming(&mixing_q()).unwrap();
        let base = base_matrix();
        for n in [2u64, 5, 8] {
            let report = verify_self_confirming(&fx, Fuel(n), &rat(1, 2)).unwrap();
            assert!(report.pass);
            for (i, row) in report.rows.iter().enumerate() {
                assert!(!row.exact);
                // Left column after d = n + 1 unfoldings, right after n:
                // geometric sums 1 - 2^-d and 1 - 2^-n of the base row.
                let d = n + 1;
                let max_entry = base[i].iter().cloned().max().unwrap();
                let pow = |e: u64| rat(1, 2u64.pow(e as u32).try_into().unwrap());
                assert_eq!(row.discrepancy, pow(d) * max_entry.clone());
                let geometric: Rat = (0..d).map(|j| pow(j + 1)).sum();
                assert_eq!(row.left_mass, geometric.clone() * row_mass(&base[i]));
                assert_eq!(row.right_mass, (int(1) - pow(n)) * row_mass(&base[i]));
            }
        }
        // Doubling the fuel at least halves the discrepancy.
        let at = |n: u64| {
            verify_self_confirming(&fx, Fuel(n), &int(1)).unwrap().rows[0]
                .discrepancy
                .clone()
        };
        assert!(at(8) <= at(4) * rat(1, 2));
    }

    fn row_mass(row: &[Rat]) -> Rat {
        row.iter().cloned().sum()
    }

    #[test]
    fn mixing_process_fails_at_too_small_epsilon() {
        let fx = build_self_confirming(&mixing_q()).unwrap();
        let report = verify_self_confirming(&fx, Fuel(3), &int(0)).unwrap();
        assert!(!report.pass);
    }

    #[test]
    fn construction_rejects_wrong_shapes() {
        assert!(matches!(
            build_self_confirming(&Code::new("(((")),
            Err(Error::BadCode(_))
        ));
        let no_model = serialize(&Term::Id(en("A", 2))).unwrap();
        assert!(matches!(
            build_self_confirming(&no_model),
            Err(Error::WrongSignature(_))
        ));
        // Model input in the wrong position.
        let tail_code = serialize(&Term::seq(
            Term::par(Term::Id(en("A", 2)), Term::Del(Ty::code())),
            Term::Id(en("A", 2)),
        ))
        .unwrap();
        assert!(matches!(
            build_self_confirming(&tail_code),
            Err(Error::WrongSignature(_))
        ));
    }

    #[test]
    fn verification_needs_finite_arguments() {
        let q = Term::seq(
            Term::par(Term::Del(Ty::code()), Term::Id(Ty::code())),
            Term::Id(Ty::code()),
        );
        let fx = build_self_confirming(&serialize(&q).unwrap()).unwrap();
        assert!(matches!(
            verify_self_confirming(&fx, Fuel(2), &int(0)),
            Err(Error::NotFinite(_))
        ));
    }

    #[test]
    fn report_table_format() {
        let fx = build_self_confirming(&ignoring_q()).unwrap();
        let report = verify_self_confirming(&fx, Fuel(2), &int(0)).unwrap();
        let table = report.table();
        let mut lines = table.lines();
        assert_eq!(
            lines.next().unwrap(),
            "a | L-mass | R-mass | max-entry-discrepancy | exact?"
        );
        assert_eq!(lines.next().unwrap(), "0 | 1 | 1 | 0 | yes");
        assert_eq!(lines.next().unwrap(), "1 | 1 | 1 | 0 | yes");
    }
}
