//! Executable axioms.  Every construction here is verified from scratch:
//! ladders by recomposition and sequences by the membership oracle.

use serde::{Deserialize, Serialize};

use crate::angle::{Theta, Verdict};
use crate::assemble::{self, Env, LayoutKind, Mutation, SeqLayout};
use crate::category::{Mor, Obj};
use crate::sequence::{
    failing_square, ladder_from_point, ladder_system, seq_direct_sum, solve_ladder, trivial_sequence, verify_ladder, Ladder, NSequence,
};
use crate::work::{self, rng_for, SigmaTag, Work};

/// Fill-in samples tried after the echelon point.
pub const FILL_TRIES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Severity {
    Undecided,
    NotFound,
    Violation,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
#[error("{stage}: {detail}")]
pub struct Failure {
    pub severity: Severity,
    pub stage: String,
    pub detail: String,
}

impl Failure {
    pub fn violation(stage: &str, detail: impl Into<String>) -> Failure {
        Failure { severity: Severity::Violation, stage: stage.into(), detail: detail.into() }
    }

    fn verdict(stage: &str, v: Verdict) -> Failure {
        let severity = match v {
            Verdict::Undecided => Severity::Undecided,
            _ => Severity::NotFound,
        };
        Failure { severity, stage: stage.into(), detail: format!("membership verdict {v:?}") }
    }
}

/// Three rows on `a0`, `f1 a0` and `f1`.
#[derive(Clone, Debug)]
pub struct OctahedronInput {
    pub a: NSequence,
    pub b: NSequence,
    pub c: NSequence,
    pub f1: Mor,
}

#[derive(Clone, Debug)]
pub struct OctahedronCompletion {
    /// `f_0 = 1, f_1, …, f_{n+1}`.
    pub f: Vec<Mor>,
    /// `g_0 = a_0, g_1 = 1, g_2, …, g_{n+1}`.
    pub g: Vec<Mor>,
    /// `h_k` for `3 <= k <= n+1`.
    pub h: Vec<Option<Mor>>,
    pub alpha: Vec<Mor>,
    pub beta: Option<Mor>,
    pub long: NSequence,
}

fn opt(v: &[Mor]) -> Vec<Option<Mor>> {
    v.iter().cloned().map(Some).collect()
}

/// Order in which fill-ins are tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FillOrder {
    EchelonFirst,
    /// Seeded samples first, which keeps free blocks generic.
    SampledFirst,
}

pub struct Engine<'a> {
    pub theta: &'a dyn Theta,
    pub mutation: Option<Mutation>,
    pub tries: usize,
    pub order: FillOrder,
}

impl<'a> Engine<'a> {
    pub fn new(theta: &'a dyn Theta) -> Engine<'a> {
        Engine { theta, mutation: None, tries: FILL_TRIES, order: FillOrder::EchelonFirst }
    }

    pub fn with_mutation(mut self, m: Option<Mutation>) -> Engine<'a> {
        self.mutation = m;
        self
    }

    pub fn with_order(mut self, order: FillOrder) -> Engine<'a> {
        self.order = order;
        self
    }

    pub fn w(&self) -> &'a dyn Work {
        self.theta.work()
    }

    pub fn n(&self) -> usize {
        self.theta.n()
    }

    pub fn layout(&self, kind: LayoutKind) -> SeqLayout {
        assemble::layout(kind, self.n()).mutated(self.mutation)
    }

    fn env<'b>(&'b self, a: &'b NSequence, b: Option<&'b NSequence>, c: Option<&'b NSequence>, f: &'b [Option<Mor>]) -> Env<'b> {
        Env { w: self.w(), a, b, c, f, g: &[], h: &[] }
    }

    fn mat(&self, rows: &[Obj], cols: &[Obj], entries: Vec<(usize, usize, Mor)>) -> Mor {
        self.w().pres().matrix(rows, cols, |r, c| entries.iter().find(|(i, j, _)| *i == r && *j == c).map(|x| x.2.clone()))
    }

    fn id(&self, a: &Obj) -> Mor {
        self.w().pres().identity(a)
    }

    fn sig(&self, f: &Mor) -> Mor {
        self.w().sigma_mor(f)
    }

    fn comp(&self, g: &Mor, f: &Mor) -> Mor {
        self.w().pres().compose(g, f)
    }

    pub fn member(&self, s: &NSequence) -> Verdict {
        self.theta.contains(s)
    }

    fn require(&self, stage: &str, s: &NSequence) -> Result<(), Failure> {
        match self.member(s) {
            Verdict::Member => Ok(()),
            v => Err(Failure::verdict(stage, v)),
        }
    }

    fn check_ladder(&self, stage: &str, s: &NSequence, t: &NSequence, l: &Ladder) -> Result<(), Failure> {
        match failing_square(self.w(), s, t, l) {
            None => Ok(()),
            Some(k) => Err(Failure::violation(stage, format!("square {k} does not commute"))),
        }
    }

    fn ladder(&self, legs: Vec<Mor>) -> Ladder {
        let last = self.sig(&legs[0]);
        Ladder { legs, last }
    }

    /// The echelon fill-in, then seeded samples, optionally preceded by a
    /// preferred ladder.  `None` when no fill-in exists.
    fn fill_ins(&self, s: &NSequence, t: &NSequence, fixed: &[Option<Mor>], salt: u64, prefer: Option<&Ladder>) -> Option<Vec<Ladder>> {
        let w = self.w();
        let (sol, unk) = ladder_system(w, s, t, fixed)?;
        let mut out = Vec::new();
        if let Some(l) = prefer {
            let agrees = fixed.iter().zip(&l.legs).all(|(f, g)| f.as_ref().map_or(true, |f| work::equal(w, f, g)));
            if agrees && verify_ladder(w, s, t, l) {
                out.push(l.clone());
            }
        }
        let echelon = ladder_from_point(w, fixed, &unk, &sol.echelon(w));
        if self.order == FillOrder::EchelonFirst {
            out.push(echelon.clone());
        }
        if sol.free_dim() > 0 {
            let mut rng = rng_for(w, salt);
            for _ in 0..self.tries {
                out.push(ladder_from_point(w, fixed, &unk, &sol.sample(w, &mut rng)));
            }
        }
        if self.order == FillOrder::SampledFirst {
            out.push(echelon);
        }
        Some(out)
    }

    // ---- rotation and the first axioms ----

    pub fn rotate(&self, s: &NSequence) -> NSequence {
        self.env(s, None, None, &[]).realize(&self.layout(LayoutKind::Rotation))
    }

    pub fn check_trivial(&self, a: &Obj) -> Verdict {
        self.member(&trivial_sequence(self.w(), a, self.n()))
    }

    /// Embeds `f` and rechecks the result.
    pub fn check_embedding(&self, f: &Mor) -> Result<NSequence, Failure> {
        let s = self.theta.embed(f).ok_or_else(|| Failure { severity: Severity::Undecided, stage: "embed".into(), detail: "no completion found".into() })?;
        if !work::equal(self.w(), s.first(), f) {
            return Err(Failure::violation("embed", "first map differs from the input"));
        }
        self.require("embed", &s)?;
        Ok(s)
    }

    pub fn check_sum(&self, s: &NSequence, t: &NSequence) -> Verdict {
        self.member(&seq_direct_sum(self.w(), s, t))
    }

    /// Transports `s` along a seeded ladder of automorphisms.
    pub fn check_iso_transport(&self, s: &NSequence, salt: u64) -> Verdict {
        let w = self.w();
        let p = w.pres();
        let n = s.n;
        let mut rng = rng_for(w, 0x7A_0000 ^ salt);
        let autos: Vec<(Mor, Mor)> = s
            .objs
            .iter()
            .map(|a| {
                let basis = work::basis(w, a, a);
                for _ in 0..16 {
                    let mut m = p.zero(a, a);
                    for b in &basis {
                        m = m.axpy(&crate::q(rand::Rng::gen_range(&mut rng, -3..=3)), b);
                    }
                    if let Some(inv) = work::inverse(w, &m) {
                        return (m, inv);
                    }
                }
                (p.identity(a), p.identity(a))
            })
            .collect();
        let mut maps = Vec::with_capacity(n + 2);
        for k in 0..=n {
            maps.push(p.chain(&[&autos[k + 1].0, &s.maps[k], &autos[k].1]));
        }
        let top = w.sigma_mor(&autos[0].0);
        maps.push(p.chain(&[&top, &s.maps[n + 1], &autos[n + 1].1]));
        self.member(&NSequence::from_maps(w, maps))
    }

    /// `parts` are declared summands of their sum: the sum must be a member
    /// and so must each part.
    pub fn check_summands(&self, s: &NSequence, t: &NSequence) -> Result<(), Failure> {
        let w = self.w();
        let p = w.pres();
        let u = seq_direct_sum(w, s, t);
        self.require("summands: sum", &u)?;
        for (k, part) in [s, t].into_iter().enumerate() {
            let parts = |i: usize| [s.objs[i].clone(), t.objs[i].clone()];
            let incl: Vec<Mor> = (0..=s.n + 1).map(|i| p.incl(&parts(i), k)).collect();
            let proj: Vec<Mor> = (0..=s.n + 1).map(|i| p.proj(&parts(i), k)).collect();
            self.check_ladder("summands: inclusion", part, &u, &self.ladder(incl))?;
            self.check_ladder("summands: projection", &u, part, &self.ladder(proj))?;
            self.require("summands: part", part)?;
        }
        Ok(())
    }

    pub fn check_rn2(&self, s: &NSequence) -> Verdict {
        self.member(&self.rotate(s))
    }

    // ---- morphism axiom ----

    fn first_square(&self, s: &NSequence, t: &NSequence, f0: &Mor, f1: &Mor) -> Result<(), Failure> {
        let lhs = self.comp(f1, s.first());
        let rhs = self.comp(t.first(), f0);
        if work::equal(self.w(), &lhs, &rhs) {
            Ok(())
        } else {
            Err(Failure::violation("precondition", "the first square does not commute"))
        }
    }

    pub fn solve_rn3(&self, s: &NSequence, t: &NSequence, f0: &Mor, f1: &Mor) -> Result<Ladder, Failure> {
        self.first_square(s, t, f0, f1)?;
        let mut fixed = vec![None; s.n + 2];
        fixed[0] = Some(f0.clone());
        fixed[1] = Some(f1.clone());
        let l = solve_ladder(self.w(), s, t, &fixed).ok_or_else(|| Failure::violation("rn3", "no fill-in exists"))?;
        self.check_ladder("rn3", s, t, &l)?;
        Ok(l)
    }

    /// Fill-in by two octahedra through the angle on `c0 = f1 a0`; the legs
    /// are `f_k = μ_k α_k`.
    pub fn derive_rn3(&self, s: &NSequence, t: &NSequence, f0: &Mor, f1: &Mor) -> Result<Ladder, Failure> {
        self.first_square(s, t, f0, f1)?;
        let c0 = self.comp(f1, s.first());
        let emb = |f: &Mor, what: &str| {
            self.theta.embed(f).ok_or_else(|| Failure { severity: Severity::Undecided, stage: "derive: embed".into(), detail: format!("no angle on {what}") })
        };
        let c = emb(&c0, "c0")?;
        let d = emb(f0, "f0")?;
        let e = emb(f1, "f1")?;
        let top = self.complete_rn4_star(&OctahedronInput { a: s.clone(), b: c.clone(), c: e, f1: f1.clone() })?;
        let bottom = self.complete_rn4_star(&OctahedronInput { a: d, b: c, c: t.clone(), f1: t.first().clone() })?;
        let n = s.n;
        let mut legs = vec![f0.clone(), f1.clone()];
        for k in 2..=n + 1 {
            legs.push(self.comp(&bottom.g[k], &top.f[k]));
        }
        let l = self.ladder(legs);
        self.check_ladder("derive", s, t, &l)?;
        Ok(l)
    }

    // ---- octahedra ----

    fn check_input(&self, inp: &OctahedronInput) -> Result<(), Failure> {
        let w = self.w();
        let (a, b, c) = (&inp.a, &inp.b, &inp.c);
        let ok = b.objs[0] == a.objs[0]
            && c.objs[0] == a.objs[1]
            && c.objs[1] == b.objs[1]
            && inp.f1.src == a.objs[1]
            && inp.f1.dst == b.objs[1]
            && work::equal(w, b.first(), &self.comp(&inp.f1, a.first()))
            && work::equal(w, c.first(), &inp.f1);
        if ok {
            Ok(())
        } else {
            Err(Failure::violation("precondition", "rows do not fit the octahedral diagram"))
        }
    }

    /// Checks the squares of a completion: `f` is a ladder from the first
    /// row to the second with `f_0 = 1`, and `g` one from the second to the
    /// third with `g_0 = a_0`, `g_1 = 1` and last leg `Σa_0`.
    fn check_completion(&self, inp: &OctahedronInput, comp: &OctahedronCompletion) -> Result<(), Failure> {
        self.check_ladder("octahedron: f squares", &inp.a, &inp.b, &self.ladder(comp.f.clone()))?;
        self.check_ladder("octahedron: g squares", &inp.b, &inp.c, &self.ladder(comp.g.clone()))
    }

    fn pushout_row(&self, inp: &OctahedronInput, f: &[Mor]) -> NSequence {
        let fv = opt(f);
        self.env(&inp.a, Some(&inp.b), None, &fv).realize(&self.layout(LayoutKind::Pushout))
    }

    /// Splits the legs `[h_{j+1} g_j]` of a ladder from the pushout row into
    /// the third row and assembles the completion.
    fn assemble_completion(&self, inp: &OctahedronInput, f: &[Mor], legs: &[Mor]) -> OctahedronCompletion {
        let w = self.w();
        let p = w.pres();
        let n = self.n();
        let fv = opt(f);
        let env = self.env(&inp.a, Some(&inp.b), None, &fv);
        let q = self.layout(LayoutKind::Pushout);
        let mut g: Vec<Option<Mor>> = vec![None; n + 2];
        let mut h: Vec<Option<Mor>> = vec![None; n + 2];
        g[0] = Some(inp.a.first().clone());
        g[1] = Some(p.identity(&inp.b.objs[1]));
        for j in 2..=n {
            let cols = env.parts(&q, j);
            let rows = [inp.c.objs[j].clone()];
            h[j + 1] = Some(p.entry(&legs[j], &rows, &cols, 0, 0));
            g[j] = Some(p.entry(&legs[j], &rows, &cols, 0, 1));
        }
        g[n + 1] = Some(legs[n + 1].clone());
        let long = Env { w, a: &inp.a, b: Some(&inp.b), c: Some(&inp.c), f: &fv, g: &g, h: &h }.realize(&self.layout(LayoutKind::Long));
        let alpha = (1..=n.saturating_sub(3)).map(|i| long.maps[i + 1].clone()).collect();
        let beta = (n >= 2).then(|| long.maps[n - 1].clone());
        OctahedronCompletion { f: f.to_vec(), g: g.into_iter().map(Option::unwrap).collect(), h, alpha, beta, long }
    }

    fn top_fixed(&self, inp: &OctahedronInput) -> Vec<Option<Mor>> {
        let mut fixed = vec![None; self.n() + 2];
        fixed[0] = Some(self.id(&inp.a.objs[0]));
        fixed[1] = Some(inp.f1.clone());
        fixed
    }

    fn pushout_fixed(&self, inp: &OctahedronInput, q: &NSequence) -> Vec<Option<Mor>> {
        let p = self.w().pres();
        let mut fixed = vec![None; self.n() + 2];
        fixed[0] = Some(p.identity(&inp.a.objs[1]));
        fixed[1] = Some(p.proj(&[inp.a.objs[2].clone(), inp.b.objs[1].clone()], 1));
        debug_assert_eq!(q.objs[1], inp.a.objs[2].plus(&inp.b.objs[1]));
        fixed
    }

    /// Solves the top two rows for `f`, then the ladder from the pushout row
    /// into the third row for `g` and `h`, sampling until the long sequence
    /// is a member.
    pub fn complete_rn4_star(&self, inp: &OctahedronInput) -> Result<OctahedronCompletion, Failure> {
        self.check_input(inp)?;
        let ffixed = self.top_fixed(inp);
        let fs = self
            .fill_ins(&inp.a, &inp.b, &ffixed, 0x4F_0001, None)
            .ok_or_else(|| Failure::violation("octahedron: f", "no fill-in for the top two rows"))?;
        let mut fail = Failure::violation("octahedron: g, h", "no fill-in into the third row");
        for (i, fl) in fs.iter().enumerate() {
            let q = self.pushout_row(inp, &fl.legs);
            let gfixed = self.pushout_fixed(inp, &q);
            let Some(gs) = self.fill_ins(&q, &inp.c, &gfixed, 0x4F_0100 + i as u64, None) else { continue };
            for gl in gs {
                let comp = self.assemble_completion(inp, &fl.legs, &gl.legs);
                self.check_completion(inp, &comp)?;
                match self.member(&comp.long) {
                    Verdict::Member => return Ok(comp),
                    v => fail = Failure::verdict("octahedron: long sequence", v),
                }
            }
        }
        Err(fail)
    }

    // ---- mapping cones ----

    pub fn cone_rn4_1(&self, s: &NSequence, t: &NSequence, l: &Ladder) -> NSequence {
        let fv = opt(&l.legs);
        self.env(s, Some(t), None, &fv).realize(&self.layout(LayoutKind::Cone))
    }

    pub fn cone_rn4_2(&self, s: &NSequence, t: &NSequence, l: &Ladder) -> Result<NSequence, Failure> {
        let w = self.w();
        if s.objs[0] != t.objs[0] || !work::equal(w, &l.legs[0], &self.id(&s.objs[0])) {
            return Err(Failure::violation("precondition", "the ladder does not start with an identity"));
        }
        let fv = opt(&l.legs);
        Ok(self.env(s, Some(t), None, &fv).realize(&self.layout(LayoutKind::ConeFixed)))
    }

    fn search_cone(
        &self,
        stage: &str,
        s: &NSequence,
        t: &NSequence,
        fixed: &[Option<Mor>],
        prefer: Option<&Ladder>,
        build: &dyn Fn(&Ladder) -> Result<NSequence, Failure>,
    ) -> Result<(Ladder, NSequence), Failure> {
        let ls = self.fill_ins(s, t, fixed, 0xC0_0001, prefer).ok_or_else(|| Failure::violation(stage, "no fill-in exists"))?;
        let mut fail = Failure::violation(stage, "no candidate");
        for l in ls {
            self.check_ladder(stage, s, t, &l)?;
            let cone = build(&l)?;
            match self.member(&cone) {
                Verdict::Member => return Ok((l, cone)),
                v => fail = Failure::verdict(stage, v),
            }
        }
        Err(fail)
    }

    /// A fill-in whose mapping cone is a member.
    pub fn rn41(&self, s: &NSequence, t: &NSequence, f0: &Mor, f1: &Mor, prefer: Option<&Ladder>) -> Result<(Ladder, NSequence), Failure> {
        self.first_square(s, t, f0, f1)?;
        let mut fixed = vec![None; s.n + 2];
        fixed[0] = Some(f0.clone());
        fixed[1] = Some(f1.clone());
        self.search_cone("rn4-1", s, t, &fixed, prefer, &|l| Ok(self.cone_rn4_1(s, t, l)))
    }

    /// A fill-in with `f_0 = 1` whose reduced cone is a member.
    pub fn rn42(&self, s: &NSequence, t: &NSequence, f1: &Mor, prefer: Option<&Ladder>) -> Result<(Ladder, NSequence), Failure> {
        let id = self.id(&s.objs[0]);
        self.first_square(s, t, &id, f1)?;
        let mut fixed = vec![None; s.n + 2];
        fixed[0] = Some(id);
        fixed[1] = Some(f1.clone());
        self.search_cone("rn4-2", s, t, &fixed, prefer, &|l| self.cone_rn4_2(s, t, l))
    }

    /// Checks that `sec: x → y` and `ret: y → x` are ladders with
    /// `ret ∘ sec = 1`.
    fn check_retract(&self, stage: &str, x: &NSequence, y: &NSequence, sec: Vec<Mor>, ret: Vec<Mor>) -> Result<(), Failure> {
        let w = self.w();
        let (sec, ret) = (self.ladder(sec), self.ladder(ret));
        self.check_ladder(&format!("{stage} (section)"), x, y, &sec)?;
        self.check_ladder(&format!("{stage} (retraction)"), y, x, &ret)?;
        for (k, (s, r)) in sec.legs.iter().zip(&ret.legs).enumerate() {
            if !work::equal(w, &self.comp(r, s), &self.id(&x.objs[k])) {
                return Err(Failure::violation(stage, format!("leg {k} is not split")));
            }
        }
        Ok(())
    }

    // ---- conversions ----

    /// Runs the octahedral axiom on three padded rows built from the ladder
    /// data and reads the fill-in off the completion.
    pub fn convert_rn4star_to_rn41(&self, s: &NSequence, t: &NSequence, f0: &Mor, f1: &Mor) -> Result<(Ladder, NSequence), Failure> {
        self.first_square(s, t, f0, f1)?;
        let w = self.w();
        let p = w.pres();
        let n = s.n;
        let (a, b) = (s, t);
        let ao = |k: usize| a.objs[k].clone();
        let bo = |k: usize| b.objs[k].clone();
        let z = Obj::zero(p.k());
        let sa0 = a.target.clone();
        let (a0, a1) = (a.maps[0].clone(), a.maps[1].clone());
        let b0 = b.maps[0].clone();

        // A0 → A1⊕A0⊕B0 → A1⊕B0 → 0 → … → 0 → ΣA0
        let p1 = [ao(1), ao(0), bo(0)];
        let p2 = [ao(1), bo(0)];
        let mut pm = vec![
            self.mat(&p1, &[ao(0)], vec![(1, 0, self.id(&ao(0)).neg()), (2, 0, f0.clone())]),
            self.mat(&p2, &p1, vec![(0, 0, self.id(&ao(1))), (1, 1, f0.clone()), (1, 2, self.id(&bo(0)))]),
        ];
        let p2o = ao(1).plus(&bo(0));
        for k in 2..=n + 1 {
            let src = if k == 2 { p2o.clone() } else { z.clone() };
            let dst = if k == n + 1 { sa0.clone() } else { z.clone() };
            pm.push(p.zero(&src, &dst));
        }
        let prow = NSequence::from_maps(w, pm);

        // A0 → A1⊕B1 → A2⊕B1 → A3 → … → ΣA0
        let m1 = [ao(1), bo(1)];
        let m2 = [ao(2), bo(1)];
        let a3 = if n == 1 { sa0.clone() } else { ao(3) };
        let mut mm = vec![
            self.mat(&m1, &[ao(0)], vec![(0, 0, a0.neg()), (1, 0, self.comp(&b0, f0))]),
            self.mat(&m2, &m1, vec![(0, 0, a1.neg()), (1, 0, f1.clone()), (1, 1, self.id(&bo(1)))]),
            self.mat(&[a3], &m2, vec![(0, 0, a.maps[2].clone())]),
        ];
        mm.extend(a.maps[3..].iter().cloned());
        let mrow = NSequence::from_maps(w, mm);

        // A1⊕A0⊕B0 → A1⊕B1 → B2 → … → B_n → ΣA0⊕B_{n+1} → ΣA1⊕ΣA0⊕ΣB0
        let f1p = self.mat(&m1, &p1, vec![(0, 0, self.id(&ao(1))), (0, 1, a0.clone()), (1, 2, b0.clone())]);
        let mut nm = vec![f1p.clone()];
        let last_parts = [sa0.clone(), bo(n + 1)];
        for k in 1..=n {
            let src: Vec<Obj> = if k == 1 { m1.to_vec() } else { vec![bo(k)] };
            let dst: Vec<Obj> = if k == n { last_parts.to_vec() } else { vec![bo(k + 1)] };
            nm.push(self.mat(&dst, &src, vec![(dst.len() - 1, src.len() - 1, b.maps[k].clone())]));
        }
        let top = [w.sigma_obj(&ao(1)), sa0.clone(), w.sigma_obj(&bo(0))];
        nm.push(self.mat(
            &top,
            &last_parts,
            vec![(0, 0, self.sig(&a0).neg()), (1, 0, self.id(&sa0)), (2, 1, b.maps[n + 1].clone())],
        ));
        let nrow = NSequence::from_maps(w, nm);

        self.require("rn4* to rn4-1: first padded row", &prow)?;
        self.require("rn4* to rn4-1: second padded row", &mrow)?;
        self.require("rn4* to rn4-1: third padded row", &nrow)?;
        let comp = self.complete_rn4_star(&OctahedronInput { a: prow, b: mrow, c: nrow, f1: f1p })?;

        let mut legs = vec![f0.clone(), f1.clone()];
        for k in 2..=n + 1 {
            let g = &comp.g[k];
            let rows: Vec<Obj> = if k == n + 1 { last_parts.to_vec() } else { vec![bo(k)] };
            let cols: Vec<Obj> = if k == 2 { m2.to_vec() } else { vec![ao(k)] };
            legs.push(p.entry(g, &rows, &cols, rows.len() - 1, 0));
        }
        let l = self.ladder(legs);
        self.check_ladder("rn4* to rn4-1", s, t, &l)?;
        let cone = self.cone_rn4_1(s, t, &l);
        for (k, (x, y)) in cone.maps.iter().zip(&comp.long.maps).enumerate() {
            if x.src != y.src || x.dst != y.dst || !work::equal(w, x, y) {
                return Err(Failure::violation("rn4* to rn4-1", format!("map {k} of the cone differs from the long sequence")));
            }
        }
        self.require("rn4* to rn4-1: cone", &cone)?;
        Ok((l, cone))
    }

    /// Uses the pushout row and the cone of its ladder into the third row;
    /// the long sequence is split off that cone.
    fn octahedron_via_cone(&self, stage: &str, inp: &OctahedronInput, f: &[Mor]) -> Result<OctahedronCompletion, Failure> {
        let w = self.w();
        let p = w.pres();
        let n = self.n();
        let q = self.pushout_row(inp, f);
        self.require(stage, &q)?;
        let fixed = self.pushout_fixed(inp, &q);
        let (gl, cone) = self.rn41(&q, &inp.c, fixed[0].as_ref().unwrap(), fixed[1].as_ref().unwrap(), None)?;
        let comp = self.assemble_completion(inp, f, &gl.legs);
        self.check_completion(inp, &comp)?;
        let long = &comp.long;

        let (a, b, c) = (&inp.a, &inp.b, &inp.c);
        let e1 = self.env(a, Some(b), Some(c), &[]).parts(&self.layout(LayoutKind::Long), 1);
        let e1o = long.objs[1].clone();
        let (a2, b1, a1) = (a.objs[2].clone(), b.objs[1].clone(), a.objs[1].clone());
        let k0 = [a2.clone(), b1.clone(), a1.clone()];
        // B2 is the last summand of E1.
        let b1_into_e1 = self.mat(&e1, &[b1.clone()], vec![(e1.len() - 1, 0, b.maps[1].clone())]);
        let cn1 = c.objs[n + 1].clone();
        let top = [w.sigma_obj(&a1), cn1.clone()];

        let mut sec = vec![self.mat(&k0, &[a2.clone()], vec![(0, 0, self.id(&a2).neg())]), p.incl(&[e1o.clone(), b1.clone()], 0)];
        let mut ret = vec![
            self.mat(&[a2.clone()], &k0, vec![(0, 0, self.id(&a2).neg()), (0, 2, a.maps[1].clone())]),
            self.mat(&[e1o.clone()], &[e1o.clone(), b1.clone()], vec![(0, 0, self.id(&e1o)), (0, 1, b1_into_e1)]),
        ];
        for k in 2..=n {
            sec.push(self.id(&long.objs[k]));
            ret.push(self.id(&long.objs[k]));
        }
        sec.push(self.mat(&top, &[cn1.clone()], vec![(0, 0, c.maps[n + 1].neg()), (1, 0, self.id(&cn1))]));
        ret.push(p.proj(&top, 1));
        self.check_retract(stage, long, &cone, sec, ret)?;
        self.require(stage, long)?;
        Ok(comp)
    }

    /// A fill-in from the reduced cone, then the octahedron from the cone of
    /// the pushout row's ladder into the third row.
    pub fn convert_rn41_to_rn4star(&self, inp: &OctahedronInput, prefer: Option<&Ladder>) -> Result<OctahedronCompletion, Failure> {
        self.check_input(inp)?;
        let (l, _) = self.rn41_to_rn42(&inp.a, &inp.b, &inp.f1, prefer)?;
        self.octahedron_via_cone("rn4-1 to rn4*", inp, &l.legs)
    }

    /// Splits the reduced cone off the mapping cone of a fill-in with
    /// `f_0 = 1`.
    pub fn convert_rn41_to_rn42(&self, s: &NSequence, t: &NSequence, f1: &Mor) -> Result<(Ladder, NSequence), Failure> {
        self.rn41_to_rn42(s, t, f1, None)
    }

    fn rn41_to_rn42(&self, s: &NSequence, t: &NSequence, f1: &Mor, prefer: Option<&Ladder>) -> Result<(Ladder, NSequence), Failure> {
        let stage = "rn4-1 to rn4-2";
        if s.objs[0] != t.objs[0] {
            return Err(Failure::violation("precondition", "rows start at different objects"));
        }
        let w = self.w();
        let p = w.pres();
        let n = s.n;
        let id0 = self.id(&s.objs[0]);
        let (l, cone) = self.rn41(s, t, &id0, f1, prefer)?;
        let red = self.cone_rn4_2(s, t, &l)?;
        let (a0, a1) = (s.objs[0].clone(), s.objs[1].clone());
        let sa0 = s.target.clone();
        let bn1 = t.objs[n + 1].clone();
        let top = [sa0.clone(), bn1.clone()];
        let mut sec = vec![p.incl(&[a1.clone(), a0.clone()], 0)];
        let mut ret = vec![self.mat(&[a1.clone()], &[a1.clone(), a0.clone()], vec![(0, 0, self.id(&a1)), (0, 1, s.maps[0].clone())])];
        for k in 1..=n {
            sec.push(self.id(&red.objs[k]));
            ret.push(self.id(&red.objs[k]));
        }
        sec.push(self.mat(&top, &[bn1.clone()], vec![(0, 0, t.maps[n + 1].neg()), (1, 0, self.id(&bn1))]));
        ret.push(p.proj(&top, 1));
        self.check_retract(stage, &red, &cone, sec, ret)?;
        self.require(stage, &red)?;
        Ok((l, red))
    }

    /// Pads both rows, runs the reduced-cone axiom on them and reads the
    /// fill-in and the mapping cone off the result.
    pub fn convert_rn42_to_rn41(&self, s: &NSequence, t: &NSequence, f0: &Mor, f1: &Mor) -> Result<(Ladder, NSequence), Failure> {
        let stage = "rn4-2 to rn4-1";
        self.first_square(s, t, f0, f1)?;
        let w = self.w();
        let p = w.pres();
        let n = s.n;
        let (a, b) = (s, t);
        let ao = |k: usize| a.objs[k].clone();
        let bo = |k: usize| b.objs[k].clone();
        let sa0 = a.target.clone();
        let sb0 = b.target.clone();
        let b0 = b.maps[0].clone();
        let s0 = [ao(0), bo(0)];

        // A0⊕B0 → A1⊕B0 → A2 → … → A_{n+1} → ΣA0⊕ΣB0
        let s1 = [ao(1), bo(0)];
        let mut am = vec![
            self.mat(&s1, &s0, vec![(0, 0, a.maps[0].clone()), (1, 1, self.id(&bo(0)))]),
            self.mat(&[ao(2)], &s1, vec![(0, 0, a.maps[1].clone())]),
        ];
        am.extend(a.maps[2..=n].iter().cloned());
        am.push(self.mat(&[sa0.clone(), sb0.clone()], &[ao(n + 1)], vec![(0, 0, a.maps[n + 1].clone())]));
        let arow = NSequence::from_maps(w, am);

        // A0⊕B0 → B1 → … → B_n → ΣA0⊕B_{n+1} → ΣA0⊕ΣB0
        let top = [sa0.clone(), bo(n + 1)];
        let mut bm = vec![self.mat(&[bo(1)], &s0, vec![(0, 0, self.comp(&b0, f0)), (0, 1, b0.clone())])];
        bm.extend(b.maps[1..n].iter().cloned());
        bm.push(self.mat(&top, &[bo(n)], vec![(1, 0, b.maps[n].clone())]));
        bm.push(self.mat(
            &[sa0.clone(), sb0.clone()],
            &top,
            vec![(0, 0, self.id(&sa0).neg()), (1, 0, self.sig(f0)), (1, 1, b.maps[n + 1].clone())],
        ));
        let brow = NSequence::from_maps(w, bm);

        self.require("rn4-2 to rn4-1: first padded row", &arow)?;
        self.require("rn4-2 to rn4-1: second padded row", &brow)?;
        let f1p = self.mat(&[bo(1)], &s1, vec![(0, 0, f1.clone()), (0, 1, b0.clone())]);
        let (lp, red) = self.rn42(&arow, &brow, &f1p, None)?;

        let mut legs = vec![f0.clone(), f1.clone()];
        for k in 2..=n {
            legs.push(lp.legs[k].clone());
        }
        legs.push(p.entry(&lp.legs[n + 1], &top, &[ao(n + 1)], 1, 0));
        let l = self.ladder(legs);
        self.check_ladder(stage, s, t, &l)?;
        let cone = self.cone_rn4_1(s, t, &l);
        for (k, (x, y)) in cone.maps.iter().zip(&red.maps).enumerate() {
            if x.src != y.src || x.dst != y.dst || !work::equal(w, x, y) {
                return Err(Failure::violation(stage, format!("map {k} of the cone differs from the padded reduced cone")));
            }
        }
        self.require(stage, &cone)?;
        Ok((l, cone))
    }

    /// The (N4) completion for an explicit class with automorphic `Σ`: a
    /// good fill-in on the top rows, then the cone of the pushout row's
    /// ladder, from which the long sequence splits off.
    pub fn complete_n4_from_n4star(&self, inp: &OctahedronInput) -> Result<OctahedronCompletion, Failure> {
        let w = self.w();
        let automorphic = w.pres().endo.as_ref().is_some_and(|e| e.automorphism);
        if w.tag() != SigmaTag::Ambient || !automorphic {
            return Err(Failure::violation("precondition", "needs an explicit class with an automorphism"));
        }
        self.check_input(inp)?;
        let id0 = self.id(&inp.a.objs[0]);
        let (l, _) = self.rn41(&inp.a, &inp.b, &id0, &inp.f1, None)?;
        let comp = self.octahedron_via_cone("n4", inp, &l.legs)?;
        let n = self.n();
        let lhs = self.comp(&inp.c.maps[n + 1], &comp.g[n + 1]);
        let rhs = self.comp(&self.sig(inp.a.first()), &inp.b.maps[n + 1]);
        if !work::equal(w, &lhs, &rhs) {
            return Err(Failure::violation("n4", "c_{n+1} g_{n+1} differs from Σa0 ∘ b_{n+1}"));
        }
        Ok(comp)
    }
}
