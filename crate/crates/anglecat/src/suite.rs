//! Runs every axiom checker over an enumerated universe and a seeded sample
//! of ladders and octahedra.  Work is fanned out with rayon and the records
//! are sorted by key, so the report depends only on the inputs and the seed.

use std::borrow::Borrow;
use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::angle::{Explicit, Theta, Verdict};
use crate::assemble::Mutation;
use crate::axioms::{Engine, Failure, FillOrder, OctahedronInput, Severity};
use crate::category::{Mor, Obj};
use crate::sequence::{find_sequence_iso, padding_sequence, seq_direct_sum, IsoSearch, Ladder, NSequence, ISO_SAMPLES};
use crate::work::{self, solve_system, Constraint, Term, Work};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Largest multiplicity of an indecomposable in universe objects.
    pub universe_bound: usize,
    /// Number of sampled spot checks and octahedra.
    pub budget: usize,
    /// Number of sampled morphism-axiom instances.
    pub derive_instances: usize,
    pub seed: u64,
    pub mutation: Option<Mutation>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { universe_bound: 2, budget: 48, derive_instances: 50, seed: 0, mutation: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Pass,
    Undecided,
    NotFound,
    Violation,
}

impl Outcome {
    pub fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Undecided => "UNDECIDED",
            Outcome::NotFound => "NOT_FOUND",
            Outcome::Violation => "VIOLATION",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub key: String,
    pub axiom: String,
    pub verdict: Outcome,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    /// Hash of the witness: the sequence, ladder or completion produced.
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub instance: String,
    pub n: usize,
    pub config: SuiteConfig,
    pub records: Vec<Record>,
}

impl SuiteReport {
    pub fn count(&self, o: Outcome) -> usize {
        self.records.iter().filter(|r| r.verdict == o).count()
    }

    /// Outcome counts per axiom.
    pub fn tally(&self) -> BTreeMap<String, BTreeMap<Outcome, usize>> {
        let mut t: BTreeMap<String, BTreeMap<Outcome, usize>> = BTreeMap::new();
        for r in &self.records {
            *t.entry(r.axiom.clone()).or_default().entry(r.verdict).or_default() += 1;
        }
        t
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.verdict != Outcome::Pass)
    }

    /// No violations and nothing reported missing.
    pub fn passed(&self) -> bool {
        self.count(Outcome::Violation) == 0 && self.count(Outcome::NotFound) == 0
    }
}

pub fn digest<T: std::fmt::Debug + ?Sized>(x: &T) -> String {
    let h = Sha256::digest(format!("{x:?}").as_bytes());
    h[..8].iter().map(|b| format!("{b:02x}")).collect()
}

fn rec(key: &str, axiom: &str, verdict: Outcome, detail: String, digest: String) -> Record {
    Record { key: key.to_string(), axiom: axiom.to_string(), verdict, detail, digest }
}

fn from_verdict(key: &str, axiom: &str, v: Verdict, witness: &dyn std::fmt::Debug) -> Record {
    let o = match v {
        Verdict::Member => Outcome::Pass,
        Verdict::NotFound => Outcome::NotFound,
        Verdict::Undecided => Outcome::Undecided,
    };
    rec(key, axiom, o, String::new(), digest(witness))
}

fn from_result<T: std::fmt::Debug, E: Borrow<Failure>>(key: &str, axiom: &str, r: &Result<T, E>) -> Record {
    match r {
        Ok(x) => rec(key, axiom, Outcome::Pass, String::new(), digest(x)),
        Err(f) => {
            let f = f.borrow();
            let o = match f.severity {
                Severity::Undecided => Outcome::Undecided,
                Severity::NotFound => Outcome::NotFound,
                Severity::Violation => Outcome::Violation,
            };
            rec(key, axiom, o, f.to_string(), String::new())
        }
    }
}

fn iso_record(key: &str, axiom: &str, w: &dyn Work, s: &NSequence, t: &NSequence) -> Record {
    match find_sequence_iso(w, s, t, ISO_SAMPLES) {
        IsoSearch::Found(l) => rec(key, axiom, Outcome::Pass, String::new(), digest(&l.legs)),
        IsoSearch::NotFound => rec(key, axiom, Outcome::NotFound, "no isomorphism".into(), String::new()),
        IsoSearch::Exhausted => rec(key, axiom, Outcome::Undecided, "isomorphism search exhausted".into(), String::new()),
    }
}

/// All objects with multiplicities at most `bound`.
pub fn universe_objects(k: usize, bound: usize) -> Vec<Obj> {
    let mut out = vec![Obj::zero(k)];
    for i in 0..k {
        out = out
            .into_iter()
            .flat_map(|o| {
                (0..=bound).map(move |m| {
                    let mut v = o.clone();
                    v.0[i] = m;
                    v
                })
            })
            .collect();
    }
    out
}

/// Working-basis morphisms between universe objects, or the zero morphism
/// when the working Hom space vanishes.
pub fn universe_morphisms(w: &dyn Work, objs: &[Obj]) -> Vec<(String, Mor)> {
    let mut out = Vec::new();
    for a in objs {
        for b in objs {
            let basis = work::basis(w, a, b);
            if basis.is_empty() {
                out.push((format!("{a:?}->{b:?}/0"), w.pres().zero(a, b)));
            }
            for (i, m) in basis.into_iter().enumerate() {
                out.push((format!("{a:?}->{b:?}/{i}"), m));
            }
        }
    }
    out
}

fn random_mor(w: &dyn Work, a: &Obj, b: &Obj, rng: &mut ChaCha8Rng) -> Mor {
    let mut m = w.pres().zero(a, b);
    for e in work::basis(w, a, b) {
        m = m.axpy(&crate::q(rng.gen_range(-2..=2)), &e);
    }
    m
}

/// Seeded instance generator over angles on small objects, optionally
/// summed with a padding sequence so that inner positions carry objects
/// that survive in the working category.
struct Sampler<'a> {
    theta: &'a dyn Theta,
    small: Vec<Obj>,
    pool: Vec<NSequence>,
}

impl Sampler<'_> {
    fn w(&self) -> &dyn Work {
        self.theta.work()
    }

    fn pad(&self, s: NSequence, lo: usize, rng: &mut ChaCha8Rng) -> NSequence {
        let n = s.n;
        if lo > n || rng.gen_bool(0.5) {
            return s;
        }
        let k = rng.gen_range(lo..=n);
        let o = self.small.choose(rng).unwrap();
        seq_direct_sum(self.w(), &s, &padding_sequence(self.w(), n, k, o))
    }

    fn row(&self, rng: &mut ChaCha8Rng) -> NSequence {
        let s = self.pool.choose(rng).unwrap().clone();
        self.pad(s, 1, rng)
    }

    /// `(s, t, f0, f1)` with a commuting first square.
    fn ladder_instance(&self, rng: &mut ChaCha8Rng) -> (NSequence, NSequence, Mor, Mor) {
        let w = self.w();
        let s = self.row(rng);
        let t = self.row(rng);
        let mut f0 = random_mor(w, &s.objs[0], &t.objs[0], rng);
        for _ in 0..2 {
            let rhs = w.pres().compose(t.first(), &f0).neg();
            let cons = [Constraint { src: s.objs[0].clone(), dst: t.objs[1].clone(), terms: vec![Term::lin(None, 0, Some(s.first())), Term::Const(rhs)] }];
            if let Some(sol) = solve_system(w, &[(s.objs[1].clone(), t.objs[1].clone())], &cons) {
                let f1 = sol.sample(w, rng).pop().unwrap();
                return (s, t, f0, f1);
            }
            f0 = w.pres().zero(&s.objs[0], &t.objs[0]);
        }
        unreachable!("f0 = 0 always admits f1 = 0")
    }

    fn octahedron_instance(&self, rng: &mut ChaCha8Rng) -> Option<OctahedronInput> {
        let w = self.w();
        let a = self.row(rng);
        let b1 = self.small.choose(rng).unwrap().clone();
        let f1 = random_mor(w, &a.objs[1], &b1, rng);
        let b = self.theta.embed(&w.pres().compose(&f1, a.first()))?;
        let c = self.theta.embed(&f1)?;
        let b = self.pad(b, 2, rng);
        let c = self.pad(c, 2, rng);
        Some(OctahedronInput { a, b, c, f1 })
    }
}

#[derive(Debug)]
enum Task {
    Trivial(Obj),
    Embed(String, Mor),
    Spot(usize),
    Rn3(usize),
    Rn4(usize),
}

fn engine<'a>(theta: &'a dyn Theta, cfg: &SuiteConfig) -> Engine<'a> {
    Engine::new(theta).with_mutation(cfg.mutation)
}

/// The spot checks of closure under sums, isomorphisms and summands.
fn spot(sam: &Sampler, cfg: &SuiteConfig, i: usize, rng: &mut ChaCha8Rng) -> Vec<Record> {
    let eng = engine(sam.theta, cfg);
    let key = format!("spot/{i:04}");
    let s = sam.row(rng);
    let t = sam.row(rng);
    let u = seq_direct_sum(sam.w(), &s, &t);
    vec![
        from_verdict(&key, "rn1-a:sum", eng.check_sum(&s, &t), &u.maps),
        from_verdict(&key, "rn1-a:iso", eng.check_iso_transport(&s, i as u64), &s.maps),
        from_result(&key, "rn1-a:summand", &eng.check_summands(&s, &t)),
    ]
}

fn rn3(sam: &Sampler, cfg: &SuiteConfig, i: usize, rng: &mut ChaCha8Rng) -> Vec<Record> {
    let eng = engine(sam.theta, cfg);
    let key = format!("rn3/{i:04}");
    let (s, t, f0, f1) = sam.ladder_instance(rng);
    let legs = |r: Result<Ladder, Failure>| r.map(|l| l.legs);
    vec![
        from_result(&key, "rn3:derive", &legs(eng.derive_rn3(&s, &t, &f0, &f1))),
        from_result(&key, "rn3:solve", &legs(eng.solve_rn3(&s, &t, &f0, &f1))),
        from_result(&key, "rn4-1:rn4*->rn4-1", &eng.convert_rn4star_to_rn41(&s, &t, &f0, &f1).map(|x| x.1.maps)),
        from_result(&key, "rn4-1:rn4-2->rn4-1", &eng.convert_rn42_to_rn41(&s, &t, &f0, &f1).map(|x| x.1.maps)),
    ]
}

fn rn4(sam: &Sampler, cfg: &SuiteConfig, i: usize, rng: &mut ChaCha8Rng) -> Vec<Record> {
    let key = format!("rn4/{i:04}");
    let Some(inp) = sam.octahedron_instance(rng) else {
        return vec![rec(&key, "rn1-c", Outcome::Undecided, "no angle for a sampled morphism".into(), String::new())];
    };
    let w = sam.w();
    let eng = engine(sam.theta, cfg);
    let generic = engine(sam.theta, cfg).with_order(FillOrder::SampledFirst);
    let mut out = Vec::new();
    let comp = eng.complete_rn4_star(&inp);
    out.push(from_result(&key, "rn4*", &comp.as_ref().map(|c| &c.long.maps)));
    let gen = generic.complete_rn4_star(&inp);
    out.push(from_result(&key, "rn4*:generic", &gen.as_ref().map(|c| &c.long.maps)));
    out.push(from_result(&key, "rn4*:generic rn4-1->rn4*", &generic.convert_rn41_to_rn4star(&inp, None).map(|c| c.long.maps)));

    // RN4* → RN4-1 → RN4*.
    let id = w.pres().identity(&inp.a.objs[0]);
    let fwd = eng.convert_rn4star_to_rn41(&inp.a, &inp.b, &id, &inp.f1);
    out.push(from_result(&key, "rn4-1:rn4*->rn4-1", &fwd.as_ref().map(|x| &x.1.maps)));
    if let Ok(c) = &comp {
        let prefer = Ladder { legs: c.f.clone(), last: w.sigma_mor(&c.f[0]) };
        let back = eng.convert_rn41_to_rn4star(&inp, Some(&prefer));
        out.push(from_result(&key, "rn4*:rn4-1->rn4*", &back.as_ref().map(|x| &x.long.maps)));
        if let Ok(b) = &back {
            out.push(iso_record(&key, "rn4*:round trip", w, &c.long, &b.long));
        }
    }

    // RN4-1 → RN4-2 → RN4-1.
    let red = eng.convert_rn41_to_rn42(&inp.a, &inp.b, &inp.f1);
    out.push(from_result(&key, "rn4-2:rn4-1->rn4-2", &red.as_ref().map(|x| &x.1.maps)));
    let cone = eng.convert_rn42_to_rn41(&inp.a, &inp.b, &id, &inp.f1);
    out.push(from_result(&key, "rn4-1:rn4-2->rn4-1", &cone.as_ref().map(|x| &x.1.maps)));
    if let (Ok((l2, _)), Ok((_, c3))) = (&red, &cone) {
        out.push(iso_record(&key, "rn4-1:round trip", w, &eng.cone_rn4_1(&inp.a, &inp.b, l2), c3));
    }
    out
}

/// Checks on the explicit ambient class: trivial angles, embeddings,
/// rotation and (N4) through (N4*).
fn ambient(phi: &Explicit, cfg: &SuiteConfig) -> Vec<Record> {
    let eng = engine(phi, cfg);
    let w: &dyn Work = phi;
    let objs = universe_objects(w.pres().k(), 1);
    let mut tasks: Vec<Task> = objs.iter().cloned().map(Task::Trivial).collect();
    tasks.extend(universe_morphisms(w, &objs).into_iter().map(|(k, m)| Task::Embed(k, m)));
    let mut out: Vec<Record> = tasks
        .par_iter()
        .flat_map_iter(|t| match t {
            Task::Trivial(a) => vec![from_verdict(&format!("phi/obj {a:?}"), "n1-b", eng.check_trivial(a), a)],
            Task::Embed(key, m) => {
                let key = format!("phi/mor {key}");
                let e = eng.check_embedding(m);
                let mut v = vec![from_result(&key, "n1-c", &e.as_ref().map(|s| &s.maps))];
                if let Ok(s) = &e {
                    v.push(from_verdict(&key, "n2", eng.check_rn2(s), &s.maps));
                }
                v
            }
            _ => unreachable!(),
        })
        .collect();
    let pool: Vec<NSequence> = phi.pieces().to_vec();
    let sam = Sampler { theta: phi, small: objs.clone(), pool };
    let count = (cfg.budget / 4).max(1);
    out.par_extend((0..count).into_par_iter().map(|i| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xA4B1_0000 ^ i as u64);
        let key = format!("phi/n4/{i:04}");
        match sam.octahedron_instance(&mut rng) {
            Some(inp) => from_result(&key, "n4", &eng.complete_n4_from_n4star(&inp).map(|c| c.long.maps)),
            None => rec(&key, "n1-c", Outcome::Undecided, "no angle for a sampled morphism".into(), String::new()),
        }
    }));
    out
}

/// Runs the full suite for `theta`; `phi` adds the ambient checks when the
/// working class is a quotient of an explicit one.
pub fn run_full_suite(instance: &str, theta: &dyn Theta, phi: Option<&Explicit>, cfg: &SuiteConfig) -> SuiteReport {
    let w = theta.work();
    let k = w.pres().k();
    let eng = engine(theta, cfg);

    let objs = universe_objects(k, cfg.universe_bound);
    let morphisms = universe_morphisms(w, &objs);
    let mut tasks: Vec<Task> = objs.iter().cloned().map(Task::Trivial).collect();
    tasks.extend(morphisms.into_iter().map(|(key, m)| Task::Embed(key, m)));

    let mut records: Vec<Record> = Vec::new();
    let embedded: Vec<(Vec<Record>, Option<NSequence>)> = tasks
        .par_iter()
        .map(|t| match t {
            Task::Trivial(a) => (vec![from_verdict(&format!("obj {a:?}"), "rn1-b", eng.check_trivial(a), a)], None),
            Task::Embed(key, m) => {
                let key = format!("mor {key}");
                let e = eng.check_embedding(m);
                let mut v = vec![from_result(&key, "rn1-c", &e.as_ref().map(|s| &s.maps))];
                if let Ok(s) = &e {
                    v.push(from_verdict(&key, "rn2", eng.check_rn2(s), &s.maps));
                }
                (v, e.ok())
            }
            _ => unreachable!(),
        })
        .collect();

    // Sampled instances use angles on objects of multiplicity at most one.
    let small = universe_objects(k, 1);
    let mut pool = Vec::new();
    for (v, s) in embedded {
        records.extend(v);
        if let Some(s) = s {
            if s.objs[..2].iter().all(|o| o.0.iter().all(|&m| m <= 1)) {
                pool.push(s);
            }
        }
    }
    let sam = Sampler { theta, small, pool };

    let mut sampled: Vec<Task> = (0..cfg.budget).map(Task::Spot).collect();
    sampled.extend((0..cfg.derive_instances).map(Task::Rn3));
    sampled.extend((0..cfg.budget).map(Task::Rn4));
    records.par_extend(sampled.par_iter().flat_map_iter(|t| {
        let salt = match t {
            Task::Spot(i) => 0x5000_0000 + *i as u64,
            Task::Rn3(i) => 0x6000_0000 + *i as u64,
            Task::Rn4(i) => 0x7000_0000 + *i as u64,
            _ => unreachable!(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ salt);
        match t {
            Task::Spot(i) => spot(&sam, cfg, *i, &mut rng),
            Task::Rn3(i) => rn3(&sam, cfg, *i, &mut rng),
            Task::Rn4(i) => rn4(&sam, cfg, *i, &mut rng),
            _ => unreachable!(),
        }
    }));

    if let Some(phi) = phi {
        records.extend(ambient(phi, cfg));
    }
    records.sort_by(|a, b| (&a.key, &a.axiom).cmp(&(&b.key, &b.axiom)));
    SuiteReport { instance: instance.to_string(), n: theta.n(), config: cfg.clone(), records }
}
