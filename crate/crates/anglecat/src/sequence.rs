//! Sequences `A0 → A1 → … → A_{n+1} → ΣA0` and morphisms between them.

use qlin::Q;

use crate::category::{Mor, Obj};
use crate::work::{self, rng_for, solve_system, Constraint, Solution, SigmaTag, Term, Work};

#[derive(Clone, Debug, PartialEq)]
pub struct NSequence {
    pub n: usize,
    /// `A0 … A_{n+1}`.
    pub objs: Vec<Obj>,
    /// `ΣA0`.
    pub target: Obj,
    /// `maps[k]: A_k → A_{k+1}`, the last one into `target`.
    pub maps: Vec<Mor>,
    pub tag: SigmaTag,
}

/// Legs `f_0 … f_{n+1}`; the leg at the target is `Σf_0`.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub legs: Vec<Mor>,
    pub last: Mor,
}

#[derive(Clone, Debug)]
pub enum IsoSearch {
    Found(Ladder),
    NotFound,
    Exhausted,
}

pub const ISO_SAMPLES: usize = 64;

impl NSequence {
    /// Builds a sequence from its `n+2` maps.
    pub fn from_maps(w: &dyn Work, maps: Vec<Mor>) -> NSequence {
        assert!(maps.len() >= 3, "an n-sequence needs at least three maps");
        let n = maps.len() - 2;
        let objs: Vec<Obj> = maps.iter().map(|m| m.src.clone()).collect();
        for k in 0..=n {
            assert_eq!(maps[k].dst, objs[k + 1], "maps {k} and {} do not compose", k + 1);
        }
        let target = w.sigma_obj(&objs[0]);
        assert_eq!(maps[n + 1].dst, target, "last map must land in the suspension of A0");
        NSequence { n, objs, target, maps, tag: w.tag() }
    }

    pub fn first(&self) -> &Mor {
        &self.maps[0]
    }

    pub fn last(&self) -> &Mor {
        &self.maps[self.n + 1]
    }
}

/// `A1 → … → ΣA0 → ΣA1` with last map `(-1)^n Σa0`.
pub fn left_rotation(w: &dyn Work, s: &NSequence) -> NSequence {
    let mut maps: Vec<Mor> = s.maps[1..].to_vec();
    let sa = w.sigma_mor(&s.maps[0]);
    maps.push(if s.n % 2 == 0 { sa } else { sa.neg() });
    NSequence::from_maps(w, maps)
}

/// `A =1 A → 0 → … → 0 → ΣA`.
pub fn trivial_sequence(w: &dyn Work, a: &Obj, n: usize) -> NSequence {
    let p = w.pres();
    let z = Obj::zero(p.k());
    let mut maps = vec![p.identity(a), p.zero(a, &z)];
    for _ in 1..n {
        maps.push(p.zero(&z, &z));
    }
    maps.push(p.zero(&z, &w.sigma_obj(a)));
    NSequence::from_maps(w, maps)
}

/// Zero everywhere except `W =1 W` at positions `k, k+1` with `1 <= k <= n`.
pub fn padding_sequence(w: &dyn Work, n: usize, k: usize, obj: &Obj) -> NSequence {
    assert!((1..=n).contains(&k));
    let p = w.pres();
    let z = Obj::zero(p.k());
    let objs: Vec<Obj> = (0..n + 2).map(|i| if i == k || i == k + 1 { obj.clone() } else { z.clone() }).collect();
    let mut maps = Vec::with_capacity(n + 2);
    for i in 0..n + 1 {
        maps.push(if i == k { p.identity(obj) } else { p.zero(&objs[i], &objs[i + 1]) });
    }
    maps.push(p.zero(&objs[n + 1], &z));
    NSequence::from_maps(w, maps)
}

pub fn seq_direct_sum(w: &dyn Work, s: &NSequence, t: &NSequence) -> NSequence {
    assert_eq!(s.n, t.n);
    let p = w.pres();
    let maps = s.maps.iter().zip(&t.maps).map(|(f, g)| p.diag(&[f, g])).collect();
    NSequence::from_maps(w, maps)
}

pub fn seq_direct_sum_all(w: &dyn Work, parts: &[NSequence], n: usize) -> NSequence {
    let p = w.pres();
    let z = Obj::zero(p.k());
    let mut acc = trivial_sequence(w, &z, n);
    for s in parts {
        acc = seq_direct_sum(w, &acc, s);
    }
    acc
}

/// All consecutive composites vanish, including `Σa0 ∘ a_{n+1}`.
pub fn is_complex(w: &dyn Work, s: &NSequence) -> bool {
    let n = s.n;
    for k in 0..=n {
        if !work::is_zero(w, &w.pres().compose(&s.maps[k + 1], &s.maps[k])) {
            return false;
        }
    }
    work::is_zero(w, &w.pres().compose(&w.sigma_mor(&s.maps[0]), &s.maps[n + 1]))
}

pub fn verify_ladder(w: &dyn Work, s: &NSequence, t: &NSequence, l: &Ladder) -> bool {
    failing_square(w, s, t, l).is_none()
}

/// First square that does not commute; `n+2` is the last one and `n+3`
/// flags a last leg other than `Σf_0`.
pub fn failing_square(w: &dyn Work, s: &NSequence, t: &NSequence, l: &Ladder) -> Option<usize> {
    let p = w.pres();
    let n = s.n;
    for k in 0..=n {
        if !work::equal(w, &p.compose(&l.legs[k + 1], &s.maps[k]), &p.compose(&t.maps[k], &l.legs[k])) {
            return Some(k);
        }
    }
    if !work::equal(w, &p.compose(&l.last, &s.maps[n + 1]), &p.compose(&t.maps[n + 1], &l.legs[n + 1])) {
        return Some(n + 1);
    }
    (!work::equal(w, &l.last, &w.sigma_mor(&l.legs[0]))).then_some(n + 2)
}

/// Ladders `s → t` with some legs prescribed.  Unknowns are the free legs,
/// in increasing position order.
pub fn ladder_system(w: &dyn Work, s: &NSequence, t: &NSequence, fixed: &[Option<Mor>]) -> Option<(Solution, Vec<Option<usize>>)> {
    let n = s.n;
    assert_eq!(t.n, n);
    assert_eq!(fixed.len(), n + 2);
    let p = w.pres();
    let mut unknown = vec![None; n + 2];
    let mut shapes = Vec::new();
    for k in 0..n + 2 {
        if fixed[k].is_none() {
            unknown[k] = Some(shapes.len());
            shapes.push((s.objs[k].clone(), t.objs[k].clone()));
        }
    }
    let mut cons = Vec::with_capacity(n + 2);
    for k in 0..=n {
        let mut terms = Vec::new();
        match (&fixed[k + 1], unknown[k + 1]) {
            (Some(f), _) => terms.push(Term::Const(p.compose(f, &s.maps[k]))),
            (None, Some(u)) => terms.push(Term::lin(None, u, Some(&s.maps[k]))),
            _ => unreachable!(),
        }
        match (&fixed[k], unknown[k]) {
            (Some(f), _) => terms.push(Term::Const(p.compose(&t.maps[k], f).neg())),
            (None, Some(u)) => terms.push(Term::neg_lin(Some(&t.maps[k]), u, None)),
            _ => unreachable!(),
        }
        cons.push(Constraint { src: s.objs[k].clone(), dst: t.objs[k + 1].clone(), terms });
    }
    let mut terms = Vec::new();
    match (&fixed[0], unknown[0]) {
        (Some(f), _) => terms.push(Term::Const(p.compose(&w.sigma_mor(f), &s.maps[n + 1]))),
        (None, Some(u)) => terms.push(Term::sigma(Q::one(), None, u, Some(&s.maps[n + 1]))),
        _ => unreachable!(),
    }
    match (&fixed[n + 1], unknown[n + 1]) {
        (Some(f), _) => terms.push(Term::Const(p.compose(&t.maps[n + 1], f).neg())),
        (None, Some(u)) => terms.push(Term::neg_lin(Some(&t.maps[n + 1]), u, None)),
        _ => unreachable!(),
    }
    cons.push(Constraint { src: s.objs[n + 1].clone(), dst: t.target.clone(), terms });
    let sol = solve_system(w, &shapes, &cons)?;
    Some((sol, unknown))
}

pub fn ladder_from_point(w: &dyn Work, fixed: &[Option<Mor>], unknown: &[Option<usize>], point: &[Mor]) -> Ladder {
    let legs: Vec<Mor> = fixed
        .iter()
        .zip(unknown)
        .map(|(f, u)| match (f, u) {
            (Some(f), _) => f.clone(),
            (None, Some(u)) => point[*u].clone(),
            _ => unreachable!(),
        })
        .collect();
    let last = w.sigma_mor(&legs[0]);
    Ladder { legs, last }
}

/// The echelon-canonical ladder extending the prescribed legs.
pub fn solve_ladder(w: &dyn Work, s: &NSequence, t: &NSequence, fixed: &[Option<Mor>]) -> Option<Ladder> {
    let (sol, unknown) = ladder_system(w, s, t, fixed)?;
    Some(ladder_from_point(w, fixed, &unknown, &sol.echelon(w)))
}

/// Searches for a ladder of isomorphisms `s → t` by seeded sampling.
pub fn find_sequence_iso(w: &dyn Work, s: &NSequence, t: &NSequence, samples: usize) -> IsoSearch {
    if s.n != t.n || s.tag != t.tag {
        return IsoSearch::NotFound;
    }
    let n = s.n;
    let nonzero: Vec<bool> = (0..n + 2).map(|k| !w.obj_class(&s.objs[k]).is_zero()).collect();
    for k in 0..n + 2 {
        if w.obj_class(&s.objs[k]) != w.obj_class(&t.objs[k]) {
            return IsoSearch::NotFound;
        }
    }
    let fixed = vec![None; n + 2];
    let Some((sol, unknown)) = ladder_system(w, s, t, &fixed) else {
        return IsoSearch::NotFound;
    };
    // A leg forced to vanish between nonzero objects rules out isomorphisms.
    let base = sol.echelon(w);
    let zero_leg = (0..n + 2).any(|k| {
        let u = unknown[k].unwrap();
        nonzero[k] && sol.is_fixed(w, u) && work::is_zero(w, &base[u])
    });
    if zero_leg {
        return IsoSearch::NotFound;
    }
    let mut rng = rng_for(w, 0x15_0000 + n as u64);
    for _ in 0..samples {
        let pt = sol.sample(w, &mut rng);
        if (0..n + 2).all(|k| !nonzero[k] || work::is_iso(w, &pt[unknown[k].unwrap()])) {
            return IsoSearch::Found(ladder_from_point(w, &fixed, &unknown, &pt));
        }
    }
    IsoSearch::Exhausted
}
