//! Seeded law suite: random substochastic terms and the algebraic laws
//! checked over them, exactly.
//!
//! Everything is driven by a ChaCha8 stream cipher RNG, so a fixed seed
//! yields the same terms, the same checks, and byte-identical reports on
//! every platform. Matrix entries are drawn as `j/8` for `j` in `0..=8` and
//! rows are rescaled when they overshoot mass one, so literals are
//! substochastic by construction.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::eval::{eval, Fuel};
use crate::event::Event;
use crate::kernel::indistinguishable;
use crate::model::{prediction, specialize, steer, ParamModel, SteeringMap};
use crate::rat::{int, rat, Rat};
use crate::syntax::serialize;
use crate::term::Term;
use crate::ty::Ty;

#[derive(Debug, Clone)]
pub struct LawConfig {
    pub seed: u64,
    pub fuel: Fuel,
    /// Cases per law group.
    pub samples: usize,
}

impl Default for LawConfig {
    fn default() -> LawConfig {
        LawConfig { seed: 0, fuel: Fuel::DEFAULT, samples: 40 }
    }
}

#[derive(Debug, Clone)]
pub struct LawOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
}

impl LawOutcome {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone)]
pub struct LawRun {
    pub outcomes: Vec<LawOutcome>,
    /// Random substochastic terms drawn by the structural law groups
    /// (interchange, units, comonoid).
    pub random_terms: usize,
}

impl LawRun {
    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(LawOutcome::pass)
    }
}

/// Runs every law group. Panics only on internal contract violations; law
/// failures are reported, not raised.
pub fn run_law_suite(cfg: &LawConfig) -> LawRun {
    let mut gen = Gen::new(cfg.seed);
    let mut outcomes = Vec::new();
    let mut random_terms = 0usize;
    outcomes.push(law_interchange(&mut gen, cfg, &mut random_terms));
    outcomes.push(law_comonoid(&mut gen, cfg));
    outcomes.push(law_units(&mut gen, cfg, &mut random_terms));
    outcomes.push(law_smn(&mut gen, cfg));
    outcomes.push(law_steering(&mut gen, cfg));
    outcomes.push(law_slicing(&mut gen, cfg));
    LawRun { outcomes, random_terms }
}

/// The text `check-laws` prints. Deterministic for a fixed config.
pub fn report(cfg: &LawConfig, run: &LawRun) -> String {
    let mut out = format!("seed: {}\n", cfg.seed);
    for o in &run.outcomes {
        out.push_str(&format!(
            "law {}: {} ({} cases)\n",
            o.name,
            if o.pass() { "PASS" } else { "FAIL" },
            o.cases
        ));
    }
    out.push_str(&format!(
        "result: {}\n",
        if run.all_pass() { "PASS" } else { "FAIL" }
    ));
    out
}

// --- random generation ---

const NAMES: [&str; 6] = ["A", "B", "C", "D", "E", "F"];

/// Deterministic source of random types, matrices, and terms.
pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A single random enum factor, sizes 1 through 4.
    pub fn enum_ty(&mut self) -> Ty {
        self.enum_ty_sized(4)
    }

    /// A single random enum factor with size capped at `max`, for corpora
    /// whose cost is a product over several factors.
    pub fn enum_ty_sized(&mut self, max: usize) -> Ty {
        let name = NAMES[self.rng.gen_range(0..NAMES.len())];
        Ty::enumeration(name, self.rng.gen_range(1..=max))
    }

    /// A random finite type: zero to two enum factors, at most 12 events,
    /// so compositions stay cheap while still covering the unit type and
    /// size-4 alphabets.
    pub fn ty(&mut self) -> Ty {
        loop {
            let factors = self.rng.gen_range(0..=2);
            let mut t = Ty::unit();
            for _ in 0..factors {
                t = t.tensor(&self.enum_ty());
            }
            if t.event_count().unwrap_or(usize::MAX) <= 12 {
                return t;
            }
        }
    }

    /// `rows x cols` matrix with entries `j/8`, rows rescaled to mass at
    /// most one.
    pub fn matrix(&mut self, rows: usize, cols: usize) -> Vec<Vec<Rat>> {
        (0..rows)
            .map(|_| {
                let mut row: Vec<Rat> =
                    (0..cols).map(|_| rat(self.rng.gen_range(0..8), 8)).collect();
                let sum: Rat = row.iter().cloned().fold(int(0), |a, b| a + b);
                if sum > int(1) {
                    row = row.into_iter().map(|e| e / sum.clone()).collect();
                }
                row
            })
            .collect()
    }

    /// Deterministic total matrix: each row a unit vector.
    pub fn function_matrix(&mut self, rows: usize, cols: usize) -> Vec<Vec<Rat>> {
        (0..rows)
            .map(|_| {
                let hit = self.rng.gen_range(0..cols);
                (0..cols).map(|c| if c == hit { int(1) } else { int(0) }).collect()
            })
            .collect()
    }

    pub fn lit(&mut self, dom: &Ty, cod: &Ty) -> Term {
        let rows = dom.event_count().expect("finite domain");
        let cols = cod.event_count().expect("finite codomain");
        Term::lit(dom.clone(), cod.clone(), self.matrix(rows, cols))
    }

    /// Random substochastic term with the given signature, built from
    /// literals, data services, and the three composition forms.
    pub fn term_between(&mut self, dom: &Ty, cod: &Ty, depth: usize) -> Term {
        if depth == 0 {
            if dom.is_unit() && self.rng.gen_bool(0.3) {
                let events = cod.events().expect("finite codomain");
                let pick = self.rng.gen_range(0..events.len());
                return Term::constant(cod.clone(), events[pick].clone());
            }
            return self.lit(dom, cod);
        }
        match self.rng.gen_range(0..8) {
            0 => {
                let mid = self.ty();
                Term::seq(
                    self.term_between(dom, &mid, depth - 1),
                    self.term_between(&mid, cod, depth - 1),
                )
            }
            1 => {
                let dsplit = self.rng.gen_range(0..=dom.arity());
                let csplit = self.rng.gen_range(0..=cod.arity());
                let (d1, d2) = dom.split(dsplit);
                let (c1, c2) = cod.split(csplit);
                Term::par(
                    self.term_between(&d1, &c1, depth - 1),
                    self.term_between(&d2, &c2, depth - 1),
                )
            }
            2 => {
                let weight = rat(self.rng.gen_range(0..=8), 8);
                Term::mix(
                    weight,
                    self.term_between(dom, cod, depth - 1),
                    self.term_between(dom, cod, depth - 1),
                )
            }
            3 => Term::seq(
                Term::Copy(dom.clone()),
                self.term_between(&dom.tensor(dom), cod, depth - 1),
            ),
            4 => Term::seq(
                Term::Del(dom.clone()),
                self.term_between(&Ty::unit(), cod, depth - 1),
            ),
            5 => {
                let split = self.rng.gen_range(0..=dom.arity());
                let (d1, d2) = dom.split(split);
                Term::seq(
                    Term::Swap(d1.clone(), d2.clone()),
                    self.term_between(&d2.tensor(&d1), cod, depth - 1),
                )
            }
            6 if dom == cod => Term::Id(dom.clone()),
            _ => self.term_between(dom, cod, 0),
        }
    }
}

// --- the law groups ---

fn check(result: Result<bool>) -> bool {
    result.unwrap_or(false)
}

/// `(f;g) (x) (t;s) == (f(x)t) ; (g(x)s)`.
fn law_interchange(gen: &mut Gen, cfg: &LawConfig, terms: &mut usize) -> LawOutcome {
    let mut failures = 0;
    for _ in 0..cfg.samples {
        let (a, b, c) = (gen.ty(), gen.ty(), gen.ty());
        let (u, v, w) = (gen.ty(), gen.ty(), gen.ty());
        let f = gen.term_between(&a, &b, 1);
        let g = gen.term_between(&b, &c, 1);
        let t = gen.term_between(&u, &v, 1);
        let s = gen.term_between(&v, &w, 1);
        *terms += 4;
        let lhs = Term::par(Term::seq(f.clone(), g.clone()), Term::seq(t.clone(), s.clone()));
        let rhs = Term::seq(Term::par(f, t), Term::par(g, s));
        let lk = eval(&lhs, cfg.fuel).expect("generated terms are well-typed");
        let rk = eval(&rhs, cfg.fuel).expect("generated terms are well-typed");
        if !check(indistinguishable(&lk, &rk, None)) {
            failures += 1;
        }
    }
    LawOutcome { name: "interchange", cases: cfg.samples, failures }
}

/// Identities are units for `seq`, the unit-type identity for `par`.
fn law_units(gen: &mut Gen, cfg: &LawConfig, terms: &mut usize) -> LawOutcome {
    let mut failures = 0;
    for _ in 0..cfg.samples {
        let (dom, cod) = (gen.ty(), gen.ty());
        let h = gen.term_between(&dom, &cod, 2);
        *terms += 1;
        let hk = eval(&h, cfg.fuel).expect("generated terms are well-typed");
        let variants = [
            Term::seq(Term::Id(dom.clone()), h.clone()),
            Term::seq(h.clone(), Term::Id(cod.clone())),
            Term::par(h.clone(), Term::Id(Ty::unit())),
            Term::par(Term::Id(Ty::unit()), h.clone()),
        ];
        for v in variants {
            let vk = eval(&v, cfg.fuel).expect("generated terms are well-typed");
            if !check(indistinguishable(&vk, &hk, None)) {
                failures += 1;
            }
        }
    }
    LawOutcome { name: "units", cases: cfg.samples, failures }
}

/// Copy is coassociative and commutative, delete is its counit.
fn law_comonoid(gen: &mut Gen, cfg: &LawConfig) -> LawOutcome {
    let mut types: Vec<Ty> =
        (1..=4).map(|card| Ty::enumeration("A", card)).collect();
    for _ in 0..cfg.samples {
        types.push(gen.ty());
    }
    let cases = types.len();
    let mut failures = 0;
    for t in types {
        let copy = Term::Copy(t.clone());
        let id = Term::Id(t.clone());
        let coassoc_l = Term::seq(copy.clone(), Term::par(copy.clone(), id.clone()));
        let coassoc_r = Term::seq(copy.clone(), Term::par(id.clone(), copy.clone()));
        let counit_l = Term::seq(copy.clone(), Term::par(Term::Del(t.clone()), id.clone()));
        let counit_r = Term::seq(copy.clone(), Term::par(id.clone(), Term::Del(t.clone())));
        let commut = Term::seq(copy.clone(), Term::Swap(t.clone(), t.clone()));
        let pairs = [
            (coassoc_l, coassoc_r),
            (counit_l, id.clone()),
            (counit_r, id.clone()),
            (commut, copy),
        ];
        let ok = pairs.into_iter().all(|(x, y)| {
            let xk = eval(&x, cfg.fuel).expect("well-typed");
            let yk = eval(&y, cfg.fuel).expect("well-typed");
            check(indistinguishable(&xk, &yk, None))
        });
        if !ok {
            failures += 1;
        }
    }
    LawOutcome { name: "comonoid", cases, failures }
}

/// Specializing a program and running it equals running it on the full
/// input; the runtime specializer agrees with the meta-level one.
fn law_smn(gen: &mut Gen, cfg: &LawConfig) -> LawOutcome {
    let mut failures = 0;
    for _ in 0..cfg.samples {
        let x_ty = gen.enum_ty();
        let rest = gen.enum_ty_sized(3);
        let cod = gen.ty();
        let dom = x_ty.tensor(&rest);
        let p = gen.term_between(&dom, &cod, 2);
        let code = serialize(&p).expect("well-typed");
        let pk = eval(&p, cfg.fuel).expect("well-typed");
        let mut ok = true;
        for x in x_ty.events().expect("finite") {
            let residual = match specialize(&code, &x) {
                Ok(c) => c,
                Err(_) => {
                    ok = false;
                    break;
                }
            };
            let rk = eval(&residual.parse().expect("specialize emits programs"), cfg.fuel)
                .expect("well-typed");
            for a in rest.events().expect("finite") {
                let direct = pk.apply_to(&x.pair(&a)).expect("inhabits");
                let sliced = rk.apply_to(&a).expect("inhabits");
                if direct != sliced {
                    ok = false;
                }
            }
        }
        // Runtime specializer against the meta-level one, on a program
        // whose leading input is a code.
        let lifted = serialize(&Term::seq(
            Term::par(Term::Del(Ty::code()), Term::Id(dom.clone())),
            p,
        ))
        .expect("well-typed");
        let spec = eval(&Term::Spec, cfg.fuel).expect("well-typed");
        let argument = Event::code(code.as_str());
        let runtime = spec
            .apply_to(&lifted.event().pair(&argument))
            .expect("inhabits");
        match specialize(&lifted, &argument) {
            Ok(meta) => {
                if runtime != crate::dist::SubDist::point(meta.event()) {
                    ok = false;
                }
            }
            Err(_) => ok = false,
        }
        if !ok {
            failures += 1;
        }
    }
    LawOutcome { name: "s-m-n", cases: cfg.samples, failures }
}

/// Steering then predicting equals predicting then feeding steered causes:
/// the two routes around the reparametrization square agree.
fn law_steering(gen: &mut Gen, cfg: &LawConfig) -> LawOutcome {
    let mut failures = 0;
    for _ in 0..cfg.samples {
        let y_ty = gen.enum_ty();
        let x_ty = gen.enum_ty();
        let arg = gen.enum_ty();
        let out = gen.enum_ty();
        let model = ParamModel::new(random_code_emitter(gen, &y_ty, &arg, &out))
            .expect("emitter ends in code");
        let map_term = Term::lit(
            x_ty.clone(),
            y_ty.clone(),
            gen.function_matrix(
                x_ty.event_count().expect("finite"),
                y_ty.event_count().expect("finite"),
            ),
        );
        let map = SteeringMap::new(map_term.clone(), cfg.fuel).expect("functions steer");
        let steered = steer(&model, &map).expect("types line up");
        let lhs = prediction(&steered, &arg, &out);
        let rhs = Term::seq(
            Term::par(map_term, Term::Id(arg.clone())),
            prediction(&model, &arg, &out),
        );
        let lk = eval(&lhs, cfg.fuel).expect("well-typed");
        let rk = eval(&rhs, cfg.fuel).expect("well-typed");
        if !check(indistinguishable(&lk, &rk, None)) {
            failures += 1;
        }
    }
    LawOutcome { name: "steering", cases: cfg.samples, failures }
}

/// A parametrized model `param -> code`: mixture of two constant emitters
/// with parameter-dependent mass. One branch occasionally emits a code that
/// cannot run (wrong signature or garbage), which the interpreter turns
/// into missing mass on both routes alike.
fn random_code_emitter(gen: &mut Gen, param: &Ty, arg: &Ty, out: &Ty) -> Term {
    let branch = |gen: &mut Gen| {
        let code = match gen.rng.gen_range(0..4) {
            0 => crate::syntax::Code::new("not a program"),
            1 => serialize(&gen.lit(out, arg)).expect("well-typed"),
            _ => serialize(&gen.term_between(arg, out, 1)).expect("well-typed"),
        };
        let rows = param.event_count().expect("finite");
        let masses: Vec<Vec<Rat>> =
            (0..rows).map(|_| vec![rat(gen.rng.gen_range(0..=8), 8)]).collect();
        Term::seq(
            Term::lit(param.clone(), Ty::unit(), masses),
            Term::constant(Ty::code(), code.event()),
        )
    };
    let left = branch(gen);
    let right = branch(gen);
    Term::mix(rat(gen.rng.gen_range(0..=8), 8), left, right)
}

/// Iterated specialization equals specialization by the fused pair, equals
/// partially applying the program.
fn law_slicing(gen: &mut Gen, cfg: &LawConfig) -> LawOutcome {
    let mut failures = 0;
    for _ in 0..cfg.samples {
        let y_ty = gen.enum_ty();
        let x_ty = gen.enum_ty_sized(2);
        let rest = gen.enum_ty_sized(2);
        let cod = gen.ty();
        let dom = y_ty.tensor(&x_ty).tensor(&rest);
        let r = gen.term_between(&dom, &cod, 2);
        let code = serialize(&r).expect("well-typed");
        let rk = eval(&r, cfg.fuel).expect("well-typed");
        let mut ok = true;
        'outer: for y in y_ty.events().expect("finite") {
            let once = specialize(&code, &y).expect("leading enum");
            for x in x_ty.events().expect("finite") {
                let twice = specialize(&once, &x).expect("leading enum");
                let tk = eval(&twice.parse().expect("program"), cfg.fuel).expect("well-typed");
                let fused = Term::seq(
                    Term::par(
                        Term::constant(y_ty.tensor(&x_ty), y.pair(&x)),
                        Term::Id(rest.clone()),
                    ),
                    r.clone(),
                );
                let fk = eval(&fused, cfg.fuel).expect("well-typed");
                for a in rest.events().expect("finite") {
                    let sliced = tk.apply_to(&a).expect("inhabits");
                    let direct = rk.apply_to(&y.pair(&x).pair(&a)).expect("inhabits");
                    if sliced != fk.apply_to(&a).expect("inhabits") || sliced != direct {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        if !ok {
            failures += 1;
        }
    }
    LawOutcome { name: "slicing", cases: cfg.samples, failures }
}
