//! Membership oracles for classes of angles.
//!
//! `Explicit` holds a class `Φ` in the ambient category given by generator
//! angles; it is closed under rotations, direct sums and trivial angles.
//! `QuotientTheta` holds the standard right angles of a quotient.
//!
//! Both recognise a sequence the same way: build a reference angle on its
//! first map, pad the reference with trivial pieces until the object
//! classes agree, then search for a ladder of isomorphisms.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use qlin::{Matrix, Q};

use crate::category::{Mor, Obj, Presentation};
use crate::exact::find_n_cokernel;
use crate::quotient::{canonical_left_approximation, is_x_monic, QuotientContext, QuotientMode};
use crate::sequence::{
    find_sequence_iso, is_complex, left_rotation, padding_sequence, seq_direct_sum_all, trivial_sequence, verify_ladder,
    IsoSearch, Ladder, NSequence, ISO_SAMPLES,
};
use crate::work::{self, rng_for, solve_system, Ambient, Constraint, SigmaTag, Term, Work};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Member,
    NotFound,
    Undecided,
}

/// A class of angles with a membership test.
pub trait Theta: Send + Sync {
    fn work(&self) -> &dyn Work;
    fn n(&self) -> usize;
    fn contains(&self, s: &NSequence) -> Verdict;
    /// Some member whose first map is exactly `f`.
    fn embed(&self, f: &Mor) -> Option<NSequence>;
}

type Key = (Vec<usize>, Vec<usize>, Vec<Q>);

fn key(f: &Mor) -> Key {
    (f.src.0.clone(), f.dst.0.clone(), f.coords.clone())
}

fn obj_diff(a: &Obj, b: &Obj) -> Vec<i64> {
    a.0.iter().zip(&b.0).map(|(&x, &y)| x as i64 - y as i64).collect()
}

/// Compares `s` with a reference member `t` on the same first map.
fn match_with_padding(w: &dyn Work, s: &NSequence, t: &NSequence, pad_ok: &dyn Fn(&Obj) -> bool) -> Verdict {
    let n = s.n;
    let d: Vec<Vec<i64>> = (0..n + 2).map(|k| obj_diff(&w.obj_class(&s.objs[k]), &w.obj_class(&t.objs[k]))).collect();
    if d[0].iter().chain(&d[1]).any(|&x| x != 0) {
        return Verdict::NotFound;
    }
    let k = w.pres().k();
    let mut prev = vec![0i64; k];
    let mut pads = Vec::new();
    for pos in 2..=n {
        let cur: Vec<i64> = d[pos].iter().zip(&prev).map(|(a, b)| a - b).collect();
        if cur.iter().any(|&x| x < 0) {
            return Verdict::NotFound;
        }
        let obj = Obj(cur.iter().map(|&x| x as usize).collect());
        if !obj.is_zero() {
            if !pad_ok(&obj) {
                return Verdict::NotFound;
            }
            pads.push(padding_sequence(w, n, pos, &obj));
        }
        prev = cur;
    }
    if d[n + 1] != prev {
        return Verdict::NotFound;
    }
    let mut parts = vec![t.clone()];
    parts.extend(pads);
    let padded = seq_direct_sum_all(w, &parts, n);
    match find_sequence_iso(w, s, &padded, ISO_SAMPLES) {
        IsoSearch::Found(_) => Verdict::Member,
        IsoSearch::NotFound => Verdict::NotFound,
        IsoSearch::Exhausted => Verdict::Undecided,
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ThetaError {
    #[error("the ambient category has no suspension automorphism")]
    NoAutomorphism,
    #[error("generator {0} has the wrong length")]
    GeneratorShape(usize),
    #[error("generator {0} is not a complex")]
    GeneratorNotComplex(usize),
    #[error("the basic angles are not independent")]
    DependentPieces,
}

/// An explicitly generated class `Φ` of angles in the ambient category.
pub struct Explicit {
    pub amb: Ambient,
    pub n: usize,
    pub generators: Vec<NSequence>,
    pieces: Vec<NSequence>,
    gram: Matrix,
    cache: Mutex<HashMap<Key, Option<NSequence>>>,
}

/// `dim {(u, v) : v ∘ b = φ ∘ u}` for arrows `b: P → Q` and `φ: A → B`.
pub fn arrow_hom_dim(w: &dyn Work, b: &Mor, phi: &Mor) -> usize {
    let shapes = [(b.src.clone(), phi.src.clone()), (b.dst.clone(), phi.dst.clone())];
    let cons = [Constraint {
        src: b.src.clone(),
        dst: phi.dst.clone(),
        terms: vec![Term::lin(None, 1, Some(b)), Term::neg_lin(Some(phi), 0, None)],
    }];
    solve_system(w, &shapes, &cons).expect("homogeneous system").free_dim()
}

/// Invertible `(u, v)` with `v ∘ b = φ ∘ u`, by seeded sampling.
pub fn arrow_iso(w: &dyn Work, b: &Mor, phi: &Mor, salt: u64) -> Option<(Mor, Mor)> {
    if b.src != phi.src || b.dst != phi.dst {
        return None;
    }
    let shapes = [(b.src.clone(), phi.src.clone()), (b.dst.clone(), phi.dst.clone())];
    let cons = [Constraint {
        src: b.src.clone(),
        dst: phi.dst.clone(),
        terms: vec![Term::lin(None, 1, Some(b)), Term::neg_lin(Some(phi), 0, None)],
    }];
    let sol = solve_system(w, &shapes, &cons)?;
    let mut rng = rng_for(w, salt);
    for _ in 0..ISO_SAMPLES {
        let pt = sol.sample(w, &mut rng);
        if work::is_iso(w, &pt[0]) && work::is_iso(w, &pt[1]) {
            return Some((pt[0].clone(), pt[1].clone()));
        }
    }
    None
}

fn permutation_order(perm: &[usize]) -> usize {
    let mut ord = 1;
    for start in 0..perm.len() {
        let mut len = 1;
        let mut i = perm[start];
        while i != start {
            i = perm[i];
            len += 1;
        }
        ord = lcm(ord, len);
    }
    ord
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

impl Explicit {
    pub fn new(pres: Presentation, n: usize, generators: Vec<Vec<Mor>>, seed: u64) -> Result<Explicit, ThetaError> {
        let Some(endo) = pres.endo.as_ref() else { return Err(ThetaError::NoAutomorphism) };
        if !endo.automorphism {
            return Err(ThetaError::NoAutomorphism);
        }
        let ord = permutation_order(&endo.objects);
        let amb = Ambient::new(pres, seed);
        let mut gens = Vec::new();
        for (i, maps) in generators.into_iter().enumerate() {
            if maps.len() != n + 2 {
                return Err(ThetaError::GeneratorShape(i));
            }
            let s = NSequence::from_maps(&amb, maps);
            if !is_complex(&amb, &s) {
                return Err(ThetaError::GeneratorNotComplex(i));
            }
            gens.push(s);
        }
        let k = amb.pres.k();
        let mut seeds: Vec<NSequence> = (0..k).map(|i| trivial_sequence(&amb, &Obj::indec(k, i), n)).collect();
        seeds.extend(gens.iter().cloned());
        let mut pieces: Vec<NSequence> = Vec::new();
        for s in seeds {
            let mut cur = s;
            for _ in 0..2 * (n + 2) * ord {
                let f = cur.first();
                let small = f.src.len() + f.dst.len();
                if small > 0 && small <= 2 {
                    let dup = pieces.iter().any(|p| arrow_iso(&amb, p.first(), f, 0xD0).is_some());
                    if !dup {
                        pieces.push(cur.clone());
                    }
                }
                cur = left_rotation(&amb, &cur);
            }
        }
        let m = pieces.len();
        let mut gram = Matrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                gram[(i, j)] = Q::int(arrow_hom_dim(&amb, pieces[i].first(), pieces[j].first()) as i64);
            }
        }
        if gram.rank() < m {
            return Err(ThetaError::DependentPieces);
        }
        Ok(Explicit { amb, n, generators: gens, pieces, gram, cache: Mutex::new(HashMap::new()) })
    }

    /// Rotations of generators and trivial angles whose first map is an
    /// indecomposable arrow; every completion is a sum of these.
    pub fn pieces(&self) -> &[NSequence] {
        &self.pieces
    }

    /// A member whose first map is exactly `f`, if the decomposition of `f`
    /// into basic arrows succeeds.
    pub fn complete(&self, f: &Mor) -> Option<NSequence> {
        let kf = key(f);
        if let Some(hit) = self.cache.lock().unwrap().get(&kf) {
            return hit.clone();
        }
        let out = self.complete_uncached(f);
        self.cache.lock().unwrap().insert(kf, out.clone());
        out
    }

    fn complete_uncached(&self, f: &Mor) -> Option<NSequence> {
        let w: &dyn Work = &self.amb;
        let p = w.pres();
        let d: Vec<Q> = self.pieces.iter().map(|b| Q::int(arrow_hom_dim(w, b.first(), f) as i64)).collect();
        let (mult, _) = self.gram.solve_vec(&d)?;
        let mut parts = Vec::new();
        for (b, m) in self.pieces.iter().zip(&mult) {
            let c = m.as_i64().filter(|&c| c >= 0 && m.is_integer())?;
            for _ in 0..c {
                parts.push(b.clone());
            }
        }
        let t = seq_direct_sum_all(w, &parts, self.n);
        let (u0, u1) = arrow_iso(w, f, t.first(), 0xA0)?;
        let n = self.n;
        let mut maps = t.maps.clone();
        maps[0] = f.clone();
        maps[1] = p.compose(&t.maps[1], &u1);
        let u0inv = work::inverse(w, &u0)?;
        maps[n + 1] = p.compose(&w.sigma_mor(&u0inv), &t.maps[n + 1]);
        let s = NSequence::from_maps(w, maps);
        debug_assert!(is_complex(w, &s));
        Some(s)
    }
}

impl Work for Explicit {
    fn pres(&self) -> &Presentation {
        &self.amb.pres
    }
    fn tag(&self) -> SigmaTag {
        SigmaTag::Ambient
    }
    fn basis_idx(&self, a: &Obj, b: &Obj) -> Vec<usize> {
        self.amb.basis_idx(a, b)
    }
    fn coords(&self, f: &Mor) -> Vec<Q> {
        f.coords.clone()
    }
    fn sigma_obj(&self, a: &Obj) -> Obj {
        self.amb.sigma_obj(a)
    }
    fn sigma_mor(&self, f: &Mor) -> Mor {
        self.amb.sigma_mor(f)
    }
    fn obj_class(&self, a: &Obj) -> Obj {
        a.clone()
    }
    fn seed(&self) -> u64 {
        self.amb.seed
    }
}

impl Theta for Explicit {
    fn work(&self) -> &dyn Work {
        self
    }
    fn n(&self) -> usize {
        self.n
    }
    fn contains(&self, s: &NSequence) -> Verdict {
        if s.n != self.n || s.tag != SigmaTag::Ambient {
            return Verdict::NotFound;
        }
        if !is_complex(self, s) {
            return Verdict::NotFound;
        }
        let Some(t) = self.complete(s.first()) else { return Verdict::Undecided };
        match_with_padding(self, s, &t, &|_| true)
    }
    fn embed(&self, f: &Mor) -> Option<NSequence> {
        self.complete(f)
    }
}

/// Standard right angles of a quotient.
pub struct QuotientTheta {
    pub ctx: Arc<QuotientContext>,
    cache: Mutex<HashMap<Key, Option<NSequence>>>,
}

impl QuotientTheta {
    pub fn new(ctx: Arc<QuotientContext>) -> QuotientTheta {
        QuotientTheta { ctx, cache: Mutex::new(HashMap::new()) }
    }

    /// The ambient completion of an arbitrary first map: a right n-exact
    /// sequence, or an angle of `Φ` in the angulated case.
    fn ambient_completion(&self, first: &Mor) -> Option<(Vec<Mor>, Option<Mor>)> {
        let ctx = &self.ctx;
        let n = ctx.n;
        match ctx.mode {
            QuotientMode::Additive => {
                let ck = find_n_cokernel(ctx.amb(), first, n, None)?;
                let mut maps = vec![first.clone()];
                maps.extend(ck.maps);
                Some((maps, None))
            }
            QuotientMode::Angulated => {
                let s = ctx.phi.as_ref()?.complete(first)?;
                Some((s.maps[..=n].to_vec(), Some(s.maps[n + 1].clone())))
            }
        }
    }

    /// Standard angle on an X-monic first map, with its ambient legs.
    pub fn standard_angle_monic(&self, first: &Mor) -> Option<(NSequence, Vec<Mor>)> {
        let ctx = &self.ctx;
        let p = ctx.pres();
        let n = ctx.n;
        let (maps, last) = self.ambient_completion(first)?;
        let wit = ctx.witness(&first.src);
        let id = p.identity(&first.src);
        let legs = ctx.ladder_into(&maps, last.as_ref(), &wit, &id, None)?;
        let mut qmaps = maps;
        let f = &legs[n + 1];
        qmaps.push(if n % 2 == 0 { f.clone() } else { f.neg() });
        Some((NSequence::from_maps(ctx.as_ref(), qmaps), legs))
    }

    /// Standard angle on `[a0; l]: A0 → A1 ⊕ L` with `l` the canonical left
    /// approximation.
    pub fn standard_angle(&self, a0: &Mor) -> Option<NSequence> {
        let p = self.ctx.pres();
        let l = canonical_left_approximation(p, &self.ctx.x, &a0.src);
        let rows = [a0.dst.clone(), l.dst.clone()];
        let stab = p.matrix(&rows, std::slice::from_ref(&a0.src), |r, _| Some(if r == 0 { a0.clone() } else { l.clone() }));
        Some(self.standard_angle_monic(&stab)?.0)
    }

    /// The standard angle transported along `A1 ⊕ L ≅ A1`, so that its first
    /// map equals `a0`.
    pub fn embed_morphism(&self, a0: &Mor) -> Option<NSequence> {
        let kf = key(a0);
        if let Some(hit) = self.cache.lock().unwrap().get(&kf) {
            return hit.clone();
        }
        let out = self.embed_uncached(a0);
        self.cache.lock().unwrap().insert(kf, out.clone());
        out
    }

    fn embed_uncached(&self, a0: &Mor) -> Option<NSequence> {
        let ctx = self.ctx.as_ref();
        let p = ctx.pres();
        let s = self.standard_angle(a0)?;
        let rows = s.objs[1].clone();
        let l_obj = Obj(rows.0.iter().zip(&a0.dst.0).map(|(x, y)| x - y).collect());
        let incl = p.incl(&[a0.dst.clone(), l_obj], 0);
        let mut maps = s.maps.clone();
        maps[0] = a0.clone();
        maps[1] = p.compose(&s.maps[1], &incl);
        Some(NSequence::from_maps(ctx, maps))
    }

    /// Quotient ladder between the standard angles on X-monic `a0`, `b0`
    /// induced by ambient `f0`, `f1` with `f1 a0 = b0 f0`.
    pub fn induced_ladder(&self, a0: &Mor, b0: &Mor, f0: &Mor, f1: &Mor) -> Option<(NSequence, NSequence, Ladder)> {
        let ctx = self.ctx.as_ref();
        let p = ctx.pres();
        let n = ctx.n;
        if !is_x_monic(p, &ctx.x, a0) || !is_x_monic(p, &ctx.x, b0) {
            return None;
        }
        let (s, _) = self.standard_angle_monic(a0)?;
        let (t, _) = self.standard_angle_monic(b0)?;
        let (smaps, slast) = self.ambient_completion(a0)?;
        let (tmaps, tlast) = self.ambient_completion(b0)?;
        let amb = ctx.amb();
        let shapes: Vec<(Obj, Obj)> = (2..=n + 1).map(|k| (smaps[k - 1].dst.clone(), tmaps[k - 1].dst.clone())).collect();
        let mut cons = Vec::new();
        for k in 1..=n {
            let mut terms = vec![Term::lin(None, k - 1, Some(&smaps[k]))];
            if k == 1 {
                terms.push(Term::Const(p.compose(&tmaps[1], f1).neg()));
            } else {
                terms.push(Term::neg_lin(Some(&tmaps[k]), k - 2, None));
            }
            cons.push(Constraint { src: smaps[k].src.clone(), dst: tmaps[k].dst.clone(), terms });
        }
        if let (Some(sl), Some(tl)) = (&slast, &tlast) {
            cons.push(Constraint {
                src: sl.src.clone(),
                dst: tl.dst.clone(),
                terms: vec![Term::Const(p.compose(&amb.sigma_mor(f0), sl)), Term::neg_lin(Some(tl), n - 1, None)],
            });
        }
        let sol = solve_system(amb, &shapes, &cons)?;
        let mut legs = vec![f0.clone(), f1.clone()];
        legs.extend(sol.echelon(amb));
        let legs: Vec<Mor> = legs.iter().map(|f| work::normalize(ctx, f)).collect();
        let last = ctx.sigma_mor(&legs[0]);
        let ladder = Ladder { legs, last };
        verify_ladder(ctx, &s, &t, &ladder).then_some((s, t, ladder))
    }
}

impl Theta for QuotientTheta {
    fn work(&self) -> &dyn Work {
        self.ctx.as_ref()
    }
    fn n(&self) -> usize {
        self.ctx.n
    }
    fn contains(&self, s: &NSequence) -> Verdict {
        let ctx = self.ctx.as_ref();
        if s.n != ctx.n || s.tag != ctx.tag() {
            return Verdict::NotFound;
        }
        if !is_complex(ctx, s) {
            return Verdict::NotFound;
        }
        let Some(t) = self.embed_morphism(s.first()) else { return Verdict::Undecided };
        match_with_padding(ctx, s, &t, &|o| ctx.suspension_hits(o))
    }
    fn embed(&self, f: &Mor) -> Option<NSequence> {
        self.embed_morphism(f)
    }
}
