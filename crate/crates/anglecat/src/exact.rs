//! Epimorphisms, weak cokernels and right n-exact sequences, all tested
//! against the indecomposables via `Hom(-, T)`.

use qlin::{Matrix, Span, Q};
use rand::Rng;

use crate::category::{Mor, Obj};
use crate::work::{self, rng_for, Work};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    MinimalTop,
    Canonical,
    Search,
}

#[derive(Clone, Debug)]
pub struct NCokernel {
    /// `a_1 … a_n`.
    pub maps: Vec<Mor>,
    pub strategies: Vec<Strategy>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactnessFailure {
    NotComposable(usize),
    NonzeroComposite(usize),
    NotWeakCokernel(usize),
    NotEpimorphism,
}

/// Upper bound on multiplicities in the fallback cokernel search.
pub const SEARCH_MULTIPLICITY: usize = 3;

fn precomposition(w: &dyn Work, f: &Mor, t: &Obj) -> Matrix {
    let cols: Vec<Vec<Q>> = work::basis(w, &f.dst, t).iter().map(|e| w.coords(&w.pres().compose(e, f))).collect();
    Matrix::from_cols(&cols, work::dim(w, &f.src, t))
}

fn indecs(w: &dyn Work) -> Vec<Obj> {
    let k = w.pres().k();
    (0..k).map(|i| Obj::indec(k, i)).collect()
}

pub fn is_epimorphism(w: &dyn Work, f: &Mor) -> bool {
    indecs(w).iter().all(|t| {
        let m = precomposition(w, f, t);
        m.rank() == m.cols()
    })
}

/// `g ∘ f = 0` and every `h` with `h ∘ f = 0` factors through `g`.
pub fn is_weak_cokernel(w: &dyn Work, g: &Mor, f: &Mor) -> bool {
    if !work::is_zero(w, &w.pres().compose(g, f)) {
        return false;
    }
    indecs(w).iter().all(|t| {
        let ann = precomposition(w, f, t).nullspace();
        let img = precomposition(w, g, t);
        img.rank() == img.hstack(&ann).rank()
    })
}

pub fn is_cokernel(w: &dyn Work, g: &Mor, f: &Mor) -> bool {
    is_weak_cokernel(w, g, f) && is_epimorphism(w, g)
}

/// Checks that `a_0, …, a_n` is right n-exact: each `a_k` with `k >= 1` is a
/// weak cokernel of its predecessor and `a_n` is an epimorphism.
pub fn certify_right_n_exact(w: &dyn Work, maps: &[Mor]) -> Result<(), ExactnessFailure> {
    for k in 1..maps.len() {
        if maps[k].src != maps[k - 1].dst {
            return Err(ExactnessFailure::NotComposable(k));
        }
        if !work::is_zero(w, &w.pres().compose(&maps[k], &maps[k - 1])) {
            return Err(ExactnessFailure::NonzeroComposite(k));
        }
        if !is_weak_cokernel(w, &maps[k], &maps[k - 1]) {
            return Err(ExactnessFailure::NotWeakCokernel(k));
        }
    }
    if !is_epimorphism(w, maps.last().expect("nonempty")) {
        return Err(ExactnessFailure::NotEpimorphism);
    }
    Ok(())
}

/// Basis of the radical of `End(T)`: the kernel of the trace form, valid in
/// characteristic zero.
pub fn endo_radical(w: &dyn Work, t: &Obj) -> Vec<Mor> {
    let p = w.pres();
    let b = work::basis(w, t, t);
    let d = b.len();
    let mult: Vec<Matrix> = b
        .iter()
        .map(|x| {
            let cols: Vec<Vec<Q>> = b.iter().map(|y| w.coords(&p.compose(x, y))).collect();
            Matrix::from_cols(&cols, d)
        })
        .collect();
    let mut g = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let m = mult[i].mul(&mult[j]);
            let mut tr = Q::zero();
            for r in 0..d {
                tr = &tr + &m[(r, r)];
            }
            g[(i, j)] = tr;
        }
    }
    g.nullspace().col_vecs().into_iter().map(|v| work::lift(w, t, t, &v)).collect()
}

/// Morphisms `h: f.dst → T` with `h ∘ f = 0`, as a basis.
fn annihilator(w: &dyn Work, f: &Mor, t: &Obj) -> Vec<Mor> {
    precomposition(w, f, t).nullspace().col_vecs().into_iter().map(|v| work::lift(w, &f.dst, t, &v)).collect()
}

fn stack(w: &dyn Work, src: &Obj, rows: &[(usize, Mor)]) -> Mor {
    let k = w.pres().k();
    let objs: Vec<Obj> = rows.iter().map(|(i, _)| Obj::indec(k, *i)).collect();
    w.pres().matrix(&objs, std::slice::from_ref(src), |r, _| Some(rows[r].1.clone()))
}

/// `f.dst → ⊕ T^{m_T}` whose rows span every annihilator, restricted to the
/// allowed targets.
pub fn canonical_weak_cokernel(w: &dyn Work, f: &Mor, allowed: &[bool]) -> Mor {
    let mut rows = Vec::new();
    for (i, t) in indecs(w).iter().enumerate() {
        if allowed[i] {
            rows.extend(annihilator(w, f, t).into_iter().map(|h| (i, h)));
        }
    }
    stack(w, &f.dst, &rows)
}

/// Like the canonical weak cokernel, but only rows spanning each annihilator
/// modulo the part reachable through radical morphisms.
pub fn minimal_weak_cokernel(w: &dyn Work, f: &Mor, allowed: &[bool]) -> Mor {
    let p = w.pres();
    let ts = indecs(w);
    let ann: Vec<Vec<Mor>> = ts.iter().enumerate().map(|(i, t)| if allowed[i] { annihilator(w, f, t) } else { Vec::new() }).collect();
    let mut rows = Vec::new();
    for (i, t) in ts.iter().enumerate() {
        if !allowed[i] || ann[i].is_empty() {
            continue;
        }
        let mut span = Span::new(work::dim(w, &f.dst, t));
        for (j, s) in ts.iter().enumerate() {
            if ann[j].is_empty() {
                continue;
            }
            let rad = if i == j { endo_radical(w, t) } else { work::basis(w, s, t) };
            for r in &rad {
                for h in &ann[j] {
                    span.insert(w.coords(&p.compose(r, h)));
                }
            }
        }
        for h in &ann[i] {
            if span.insert(w.coords(h)) {
                rows.push((i, h.clone()));
            }
        }
    }
    stack(w, &f.dst, &rows)
}

fn search_cokernel(w: &dyn Work, f: &Mor, salt: u64) -> Option<Mor> {
    let p = w.pres();
    let k = p.k();
    let mut rng = rng_for(w, 0xC0_0000 ^ salt);
    let mut targets: Vec<Obj> = vec![Obj::zero(k)];
    for i in 0..k {
        targets = targets
            .into_iter()
            .flat_map(|o| {
                (0..=SEARCH_MULTIPLICITY).map(move |m| {
                    let mut v = o.clone();
                    v.0[i] = m;
                    v
                })
            })
            .collect();
    }
    targets.sort_by_key(|o| o.len());
    for t in targets {
        let ann = annihilator(w, f, &t);
        for _ in 0..8 {
            let mut g = p.zero(&f.dst, &t);
            for h in &ann {
                g = g.axpy(&Q::int(rng.gen_range(-3..=3)), h);
            }
            if is_cokernel(w, &g, f) {
                return Some(g);
            }
        }
    }
    None
}

/// Completes `a_0` to a right n-exact sequence `a_0, …, a_n`.  When
/// `constrained` is given, the objects `A_2 … A_n` are drawn from it.
pub fn find_n_cokernel(w: &dyn Work, a0: &Mor, n: usize, constrained: Option<&[bool]>) -> Option<NCokernel> {
    let k = w.pres().k();
    let all = vec![true; k];
    let mut maps = Vec::with_capacity(n);
    let mut strategies = Vec::with_capacity(n);
    let mut prev = a0.clone();
    for step in 1..=n {
        let allowed: &[bool] = if step < n { constrained.unwrap_or(&all) } else { &all };
        let last = step == n;
        let ok = |g: &Mor| if last { is_cokernel(w, g, &prev) } else { is_weak_cokernel(w, g, &prev) };
        let g = minimal_weak_cokernel(w, &prev, allowed);
        let (g, s) = if ok(&g) {
            (g, Strategy::MinimalTop)
        } else {
            let c = canonical_weak_cokernel(w, &prev, allowed);
            if ok(&c) {
                (c, Strategy::Canonical)
            } else if last {
                (search_cokernel(w, &prev, step as u64)?, Strategy::Search)
            } else {
                return None;
            }
        };
        prev = g.clone();
        maps.push(g);
        strategies.push(s);
    }
    Some(NCokernel { maps, strategies })
}

/// The n-pushout row of a ladder `f_1 … f_{n+1}` from `a_0 … a_n` to
/// `b_0 … b_n` over a shared `A_0`:
/// `A_1 → A_2⊕B_1 → … → A_{n+1}⊕B_n → B_{n+1}` with maps `[-a_1; f_1]`,
/// `[[-a_k, 0], [f_k, b_{k-1}]]` and `[f_{n+1}, b_n]`, certified right
/// n-exact.
pub fn n_pushout(w: &dyn Work, top: &[Mor], bottom: &[Mor], legs: &[Mor]) -> Result<Vec<Mor>, ExactnessFailure> {
    let p = w.pres();
    let n = top.len() - 1;
    assert_eq!(bottom.len(), n + 1);
    assert_eq!(legs.len(), n + 1, "legs are f_1 … f_{{n+1}}");
    let a = |k: usize| &top[k];
    let b = |k: usize| &bottom[k];
    let f = |k: usize| &legs[k - 1];
    let mut maps = vec![p.matrix(&[a(1).dst.clone(), b(1).src.clone()], &[a(1).src.clone()], |r, _| {
        Some(if r == 0 { a(1).neg() } else { f(1).clone() })
    })];
    for k in 2..=n {
        let rows = [a(k).dst.clone(), b(k).src.clone()];
        let cols = [a(k).src.clone(), b(k - 1).src.clone()];
        maps.push(p.matrix(&rows, &cols, |r, c| match (r, c) {
            (0, 0) => Some(a(k).neg()),
            (1, 0) => Some(f(k).clone()),
            (1, 1) => Some(b(k - 1).clone()),
            _ => None,
        }));
    }
    let cols = [a(n).dst.clone(), b(n).src.clone()];
    maps.push(p.matrix(&[b(n).dst.clone()], &cols, |_, c| Some(if c == 0 { f(n + 1).clone() } else { b(n).clone() })));
    certify_right_n_exact(w, &maps)?;
    Ok(maps)
}
