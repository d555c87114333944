//! Golden corpus: fifty canonical term files, one per line of the grammar
//! we promise to keep stable. Each file is byte-identical to the output of
//! [`serialize`] on its own parse, so `serialize . parse` is the identity on
//! the corpus. Regenerate after deliberate printer changes with
//! `cargo test -p causal-core --test golden -- --ignored regenerate`.

use std::fs;
use std::path::PathBuf;

use causal_core::syntax::{parse_term, serialize};
use causal_core::term::Term;
use causal_core::ty::Ty;
use causal_core::event::Event;
use causal_core::rat::{int, rat, Rat};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn en(name: &str, card: usize) -> Ty {
    Ty::enumeration(name, card)
}

fn row(entries: &[(i64, i64)]) -> Vec<Rat> {
    entries.iter().map(|&(n, d)| rat(n, d)).collect()
}

/// The corpus, as constructed terms. Coverage notes name the grammar
/// production or printer rule each entry pins down.
fn corpus() -> Vec<(&'static str, Term)> {
    let a2 = en("A", 2);
    let b2 = en("B", 2);
    let b3 = en("B", 3);
    let c2 = en("C", 2);
    let unit = Ty::unit();
    let code = Ty::code();

    let not2 = Term::lit(a2.clone(), a2.clone(), vec![
        vec![int(0), int(1)],
        vec![int(1), int(0)],
    ]);
    let half = Term::lit(a2.clone(), b2.clone(), vec![
        row(&[(1, 2), (1, 2)]),
        row(&[(0, 1), (1, 1)]),
    ]);
    let skew = Term::lit(b2.clone(), c2.clone(), vec![
        row(&[(1, 1), (0, 1)]),
        row(&[(1, 3), (2, 3)]),
    ]);
    let ignore_q = Term::seq(
        Term::par(Term::Del(code.clone()), Term::Id(a2.clone())),
        half.clone(),
    );

    vec![
        // identities over each type form
        ("01-id-unit", Term::Id(unit.clone())),
        ("02-id-enum", Term::Id(a2.clone())),
        ("03-id-code", Term::Id(code.clone())),
        ("04-id-tensor", Term::Id(a2.tensor(&b3))),
        ("05-id-tensor-code", Term::Id(a2.tensor(&b3.tensor(&code)))),
        // swaps, including code and tensor sides
        ("06-swap-enums", Term::Swap(a2.clone(), b3.clone())),
        ("07-swap-code-enum", Term::Swap(code.clone(), a2.clone())),
        ("08-swap-tensor-enum", Term::Swap(a2.tensor(&b2), en("C", 3))),
        // copy and del over each type form
        ("09-copy-enum", Term::Copy(a2.clone())),
        ("10-copy-code", Term::Copy(code.clone())),
        ("11-copy-tensor", Term::Copy(a2.tensor(&b2))),
        ("12-del-enum", Term::Del(a2.clone())),
        ("13-del-code", Term::Del(code.clone())),
        ("14-del-tensor-codes", Term::Del(code.tensor(&code))),
        // literals: square, wide, from unit, into unit, scalar, zero row
        ("15-lit-square", half.clone()),
        ("16-lit-wide", Term::lit(en("A", 1), en("B", 4), vec![
            row(&[(1, 4), (1, 4), (1, 4), (1, 4)]),
        ])),
        ("17-lit-vector", Term::lit(unit.clone(), en("A", 3), vec![
            row(&[(1, 3), (1, 3), (1, 3)]),
        ])),
        ("18-lit-covector", Term::lit(en("A", 3), unit.clone(), vec![
            vec![int(1)],
            vec![int(0)],
            row(&[(1, 2)]),
        ])),
        ("19-lit-scalar", Term::lit(unit.clone(), unit.clone(), vec![row(&[(2, 3)])])),
        ("20-lit-zero-row", Term::lit(a2.tensor(&b2), c2.clone(), vec![
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            row(&[(1, 2), (1, 2)]),
            vec![int(0), int(0)],
        ])),
        // constants over each value form
        ("21-const-enum", Term::constant(en("A", 3), Event::val(2))),
        ("22-const-pair", Term::constant(
            a2.tensor(&b2),
            Event::val(1).pair(&Event::val(0)),
        )),
        ("23-const-code", Term::constant(code.clone(), Event::code("(id unit)"))),
        ("24-const-code-escaped", Term::constant(
            code.clone(),
            Event::code("(const code (code \"(id unit)\"))"),
        )),
        ("25-const-mixed-pair", Term::constant(
            a2.tensor(&code.tensor(&b2)),
            Event::val(0).pair(&Event::code("(del code)").pair(&Event::val(1))),
        )),
        // sequential composition, two and three stages
        ("26-seq-copy-lit", Term::seq(
            Term::Copy(a2.clone()),
            Term::lit(a2.tensor(&a2), b2.clone(), vec![
                vec![int(1), int(0)],
                vec![int(0), int(1)],
                vec![int(0), int(1)],
                vec![int(1), int(0)],
            ]),
        )),
        ("27-seq-three", Term::seq(half.clone(), Term::seq(skew.clone(), Term::lit(
            c2.clone(),
            b2.clone(),
            vec![row(&[(1, 2), (1, 2)]), row(&[(3, 4), (1, 4)])],
        )))),
        // parallel composition, with surviving identities and three factors
        ("28-par-id-lit", Term::par(Term::Id(a2.clone()), skew.clone())),
        ("29-par-three", Term::par(half.clone(), Term::par(skew.clone(), not2.clone()))),
        ("30-par-copy-del", Term::par(Term::Copy(a2.clone()), Term::Del(b3.clone()))),
        // mixtures at interior and boundary weights
        ("31-mix-half", Term::mix(rat(1, 2), half.clone(), Term::lit(
            a2.clone(),
            b2.clone(),
            vec![row(&[(1, 4), (3, 4)]), row(&[(1, 1), (0, 1)])],
        ))),
        ("32-mix-zero", Term::mix(int(0), Term::Id(a2.clone()), not2.clone())),
        ("33-mix-one", Term::mix(int(1), Term::Copy(a2.clone()), Term::Copy(a2.clone()))),
        ("34-mix-apply", Term::mix(
            rat(3, 8),
            Term::apply(a2.clone(), b2.clone()),
            ignore_q.clone(),
        )),
        // the interpreter and specializer primitives
        ("35-apply", Term::apply(a2.clone(), b3.clone())),
        ("36-apply-closed", Term::apply(unit.clone(), a2.clone())),
        ("37-apply-code-out", Term::apply(a2.tensor(&b2), code.clone())),
        ("38-spec", Term::Spec),
        // shapes the construction itself produces
        ("39-self-model-loop", Term::seq(
            Term::par(
                Term::seq(Term::Copy(code.clone()), Term::Spec),
                Term::Id(a2.clone()),
            ),
            ignore_q.clone(),
        )),
        ("40-prediction", Term::seq(
            Term::par(
                Term::constant(code.clone(), Event::code("(lit (enum A 2) (enum B 2) ((1/2 1/2) (0 1)))")),
                Term::Id(a2.clone()),
            ),
            Term::apply(a2.clone(), b2.clone()),
        )),
        // degenerate boxes: covectors, vectors, scalars in context
        ("41-covector-leaky", Term::lit(en("A", 4), unit.clone(), vec![
            vec![int(1)],
            row(&[(1, 2)]),
            vec![int(0)],
            row(&[(1, 8)]),
        ])),
        ("42-mix-of-points", Term::mix(
            rat(5, 8),
            Term::constant(a2.clone(), Event::val(0)),
            Term::constant(a2.clone(), Event::val(1)),
        )),
        ("43-swap-sandwich", Term::seq(
            Term::Swap(a2.clone(), b2.clone()),
            Term::Swap(b2.clone(), a2.clone()),
        )),
        ("44-copy-then-drop-left", Term::seq(
            Term::Copy(en("A", 3)),
            Term::par(Term::Del(en("A", 3)), Term::Id(en("A", 3))),
        )),
        ("45-nested-mix", Term::mix(
            rat(1, 3),
            Term::mix(rat(1, 4), half.clone(), Term::lit(
                a2.clone(),
                b2.clone(),
                vec![row(&[(1, 8), (7, 8)]), row(&[(0, 1), (0, 1)])],
            )),
            half.clone(),
        )),
        ("46-apply-after-prep", Term::seq(
            Term::par(Term::Id(code.clone()), not2.clone()),
            Term::apply(a2.clone(), b2.clone()),
        )),
        ("47-spec-in-context", Term::seq(
            Term::par(Term::Copy(code.clone()), Term::Id(code.clone())),
            Term::par(Term::Spec, Term::Id(code.clone())),
        )),
        ("48-par-of-points", Term::par(
            Term::lit(unit.clone(), a2.clone(), vec![row(&[(1, 2), (1, 4)])]),
            Term::constant(b2.clone(), Event::val(0)),
        )),
        ("49-three-parameter", Term::lit(
            a2.tensor(&b2.tensor(&c2)),
            en("D", 2),
            vec![
                vec![int(1), int(0)],
                vec![int(0), int(1)],
                row(&[(1, 2), (1, 2)]),
                vec![int(0), int(0)],
                row(&[(1, 4), (3, 4)]),
                vec![int(1), int(0)],
                row(&[(2, 3), (1, 3)]),
                vec![int(0), int(1)],
            ],
        )),
        ("50-kitchen-sink", Term::seq(
            Term::par(
                Term::seq(Term::Copy(code.clone()), Term::Spec),
                Term::Id(a2.clone()),
            ),
            Term::mix(
                rat(7, 8),
                Term::apply(a2.clone(), b2.clone()),
                Term::seq(
                    Term::par(Term::Del(code.clone()), not2.clone()),
                    Term::seq(half.clone(), Term::lit(
                        b2.clone(),
                        b2.clone(),
                        vec![row(&[(5, 6), (1, 6)]), row(&[(1, 6), (5, 6)])],
                    )),
                ),
            ),
        )),
    ]
}

#[test]
fn corpus_round_trips() {
    let dir = corpus_dir();
    let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
        .expect("golden corpus directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "term"))
        .collect();
    paths.sort();
    assert_eq!(paths.len(), 50, "expected fifty golden files in {}", dir.display());
    for path in paths {
        let text = fs::read_to_string(&path).expect("readable golden file");
        let term = parse_term(&text)
            .unwrap_or_else(|e| panic!("{} does not parse: {e}", path.display()));
        let printed = serialize(&term).expect("well-typed golden term");
        assert_eq!(printed.as_str(), text, "serialize . parse is not the identity on {}", path.display());
    }
}

#[test]
fn corpus_matches_generator() {
    let dir = corpus_dir();
    for (name, term) in corpus() {
        let path = dir.join(format!("{name}.term"));
        let text = fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{} missing: {e}", path.display()));
        assert_eq!(text, serialize(&term).expect("well-typed").as_str(), "{name} is stale");
    }
}

#[test]
#[ignore = "rewrites the corpus; run after deliberate printer changes"]
fn regenerate() {
    let dir = corpus_dir();
    fs::create_dir_all(&dir).expect("create golden dir");
    for (name, term) in corpus() {
        let path = dir.join(format!("{name}.term"));
        fs::write(&path, serialize(&term).expect("well-typed").as_str()).expect("write golden file");
    }
}
