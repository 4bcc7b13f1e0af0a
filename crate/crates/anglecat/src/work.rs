//! A category in which sequences live: either the ambient presentation or a
//! quotient of it.  Both share the ambient objects and morphism lifts; they
//! differ in which coordinates count and in the suspension functor.
//!
//! Every working basis element lifts to an elementary ambient morphism, so a
//! basis is just a list of flat coordinate indices.

use qlin::{Matrix, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{Mor, Obj, Presentation};

/// Which functor produced the target of a sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum SigmaTag {
    Ambient,
    QuotientSigma,
    QuotientG,
}

pub trait Work: Send + Sync {
    fn pres(&self) -> &Presentation;
    fn tag(&self) -> SigmaTag;
    /// Flat coordinate indices of Hom(a, b) forming the working basis.
    fn basis_idx(&self, a: &Obj, b: &Obj) -> Vec<usize>;
    /// Working coordinates of `f`, aligned with `basis_idx`.
    fn coords(&self, f: &Mor) -> Vec<Q>;
    fn sigma_obj(&self, a: &Obj) -> Obj;
    fn sigma_mor(&self, f: &Mor) -> Mor;
    /// Isomorphism class data: objects with different classes are never
    /// isomorphic.
    fn obj_class(&self, a: &Obj) -> Obj;
    fn seed(&self) -> u64;
}

pub fn rng_for(w: &dyn Work, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(w.seed() ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn dim(w: &dyn Work, a: &Obj, b: &Obj) -> usize {
    w.basis_idx(a, b).len()
}

pub fn lift(w: &dyn Work, a: &Obj, b: &Obj, coords: &[Q]) -> Mor {
    let idx = w.basis_idx(a, b);
    assert_eq!(idx.len(), coords.len());
    let mut m = w.pres().zero(a, b);
    for (&i, c) in idx.iter().zip(coords) {
        m.coords[i] = c.clone();
    }
    m
}

/// Canonical representative of the class of `f`.
pub fn normalize(w: &dyn Work, f: &Mor) -> Mor {
    lift(w, &f.src, &f.dst, &w.coords(f))
}

pub fn basis(w: &dyn Work, a: &Obj, b: &Obj) -> Vec<Mor> {
    w.basis_idx(a, b).into_iter().map(|i| w.pres().elem(a, b, i)).collect()
}

pub fn is_zero(w: &dyn Work, f: &Mor) -> bool {
    w.coords(f).iter().all(|x| x.is_zero())
}

pub fn equal(w: &dyn Work, f: &Mor, g: &Mor) -> bool {
    is_zero(w, &f.sub(g))
}

pub fn compose(w: &dyn Work, g: &Mor, f: &Mor) -> Mor {
    w.pres().compose(g, f)
}

pub fn chain(w: &dyn Work, ms: &[&Mor]) -> Mor {
    w.pres().chain(ms)
}

/// Two-sided inverse in the working category.
pub fn inverse(w: &dyn Work, f: &Mor) -> Option<Mor> {
    let (a, b) = (&f.src, &f.dst);
    if w.obj_class(a) != w.obj_class(b) {
        return None;
    }
    let p = w.pres();
    let id_a = w.coords(&p.identity(a));
    let id_b = w.coords(&p.identity(b));
    let cols: Vec<Vec<Q>> = basis(w, b, a)
        .iter()
        .map(|e| {
            let mut c = w.coords(&p.compose(e, f));
            c.extend(w.coords(&p.compose(f, e)));
            c
        })
        .collect();
    let rows = id_a.len() + id_b.len();
    let m = Matrix::from_cols(&cols, rows);
    let mut rhs = id_a;
    rhs.extend(id_b);
    let (x, _) = m.solve_vec(&rhs)?;
    Some(lift(w, b, a, &x))
}

pub fn is_iso(w: &dyn Work, f: &Mor) -> bool {
    inverse(w, f).is_some()
}

/// The ambient category itself.
pub struct Ambient {
    pub pres: Presentation,
    pub seed: u64,
}

impl Ambient {
    pub fn new(pres: Presentation, seed: u64) -> Ambient {
        Ambient { pres, seed }
    }
}

impl Work for Ambient {
    fn pres(&self) -> &Presentation {
        &self.pres
    }
    fn tag(&self) -> SigmaTag {
        SigmaTag::Ambient
    }
    fn basis_idx(&self, a: &Obj, b: &Obj) -> Vec<usize> {
        (0..self.pres.hom_dim(a, b)).collect()
    }
    fn coords(&self, f: &Mor) -> Vec<Q> {
        f.coords.clone()
    }
    fn sigma_obj(&self, a: &Obj) -> Obj {
        self.pres.endo_obj(a)
    }
    fn sigma_mor(&self, f: &Mor) -> Mor {
        self.pres.apply_endofunctor(f)
    }
    fn obj_class(&self, a: &Obj) -> Obj {
        a.clone()
    }
    fn seed(&self) -> u64 {
        self.seed
    }
}

/// `coef · left ∘ X ∘ right` (or with `Σ X` when `sigma`), or a constant.
#[derive(Clone, Debug)]
pub enum Term {
    Const(Mor),
    Lin { coef: Q, left: Option<Mor>, unknown: usize, sigma: bool, right: Option<Mor> },
}

impl Term {
    pub fn lin(left: Option<&Mor>, unknown: usize, right: Option<&Mor>) -> Term {
        Term::Lin { coef: Q::one(), left: left.cloned(), unknown, sigma: false, right: right.cloned() }
    }

    pub fn neg_lin(left: Option<&Mor>, unknown: usize, right: Option<&Mor>) -> Term {
        Term::Lin { coef: Q::int(-1), left: left.cloned(), unknown, sigma: false, right: right.cloned() }
    }

    pub fn sigma(coef: Q, left: Option<&Mor>, unknown: usize, right: Option<&Mor>) -> Term {
        Term::Lin { coef, left: left.cloned(), unknown, sigma: true, right: right.cloned() }
    }
}

/// A sum of terms that must vanish in the working category.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub src: Obj,
    pub dst: Obj,
    pub terms: Vec<Term>,
}

/// The affine space of solutions of a joint linear system in unknown
/// morphisms.
#[derive(Clone, Debug)]
pub struct Solution {
    pub shapes: Vec<(Obj, Obj)>,
    pub particular: Vec<Q>,
    pub nullspace: Matrix,
}

fn eval_term(w: &dyn Work, t: &Term, x: &Mor) -> Mor {
    let Term::Lin { coef, left, sigma, right, .. } = t else { unreachable!() };
    let p = w.pres();
    let mut m = if *sigma { w.sigma_mor(x) } else { x.clone() };
    if let Some(r) = right {
        m = p.compose(&m, r);
    }
    if let Some(l) = left {
        m = p.compose(l, &m);
    }
    if coef.is_one() {
        m
    } else {
        m.scale(coef)
    }
}

/// Solves all constraints jointly.  Returns `None` when inconsistent.
pub fn solve_system(w: &dyn Work, shapes: &[(Obj, Obj)], cons: &[Constraint]) -> Option<Solution> {
    let bases: Vec<Vec<Mor>> = shapes.iter().map(|(a, b)| basis(w, a, b)).collect();
    let mut offsets = vec![0];
    for b in &bases {
        offsets.push(offsets.last().unwrap() + b.len());
    }
    let ncols = *offsets.last().unwrap();
    let mut row_blocks: Vec<Vec<Vec<Q>>> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    for c in cons {
        let d = dim(w, &c.src, &c.dst);
        let mut constant = w.pres().zero(&c.src, &c.dst);
        let mut cols = vec![vec![Q::zero(); d]; ncols];
        for t in &c.terms {
            match t {
                Term::Const(m) => constant = constant.add(m),
                Term::Lin { unknown, .. } => {
                    for (k, e) in bases[*unknown].iter().enumerate() {
                        let v = w.coords(&eval_term(w, t, e));
                        let col = &mut cols[offsets[*unknown] + k];
                        for (x, y) in col.iter_mut().zip(v) {
                            *x = &*x + &y;
                        }
                    }
                }
            }
        }
        rhs.extend(w.coords(&constant).into_iter().map(|x| -x));
        row_blocks.push(cols);
    }
    let nrows = rhs.len();
    let mut m = Matrix::zeros(nrows, ncols);
    let mut r0 = 0;
    for block in &row_blocks {
        let h = block.first().map_or(0, |c| c.len());
        for (j, col) in block.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m[(r0 + i, j)] = v.clone();
                }
            }
        }
        r0 += h;
    }
    if ncols == 0 {
        // Nothing to choose: consistent iff every constant vanishes.
        if rhs.iter().any(|x| !x.is_zero()) {
            return None;
        }
        return Some(Solution { shapes: shapes.to_vec(), particular: Vec::new(), nullspace: Matrix::zeros(0, 0) });
    }
    let (particular, nullspace) = m.solve_vec(&rhs)?;
    Some(Solution { shapes: shapes.to_vec(), particular, nullspace })
}

impl Solution {
    pub fn free_dim(&self) -> usize {
        self.nullspace.cols()
    }

    /// The point `particular + nullspace · t`.
    pub fn point(&self, w: &dyn Work, t: Option<&[Q]>) -> Vec<Mor> {
        let mut x = self.particular.clone();
        if let Some(t) = t {
            let add = self.nullspace.mul_vec(t);
            for (a, b) in x.iter_mut().zip(add) {
                *a = &*a + &b;
            }
        }
        let mut out = Vec::with_capacity(self.shapes.len());
        let mut at = 0;
        for (a, b) in &self.shapes {
            let d = dim(w, a, b);
            out.push(lift(w, a, b, &x[at..at + d]));
            at += d;
        }
        out
    }

    pub fn echelon(&self, w: &dyn Work) -> Vec<Mor> {
        self.point(w, None)
    }

    pub fn sample<R: Rng>(&self, w: &dyn Work, rng: &mut R) -> Vec<Mor> {
        let t: Vec<Q> = (0..self.free_dim()).map(|_| Q::int(rng.gen_range(-3..=3))).collect();
        self.point(w, Some(&t))
    }

    /// True when unknown `k` is the same for every solution.
    pub fn is_fixed(&self, w: &dyn Work, k: usize) -> bool {
        let mut at = 0;
        for (a, b) in &self.shapes[..k] {
            at += dim(w, a, b);
        }
        let (a, b) = &self.shapes[k];
        let d = dim(w, a, b);
        (at..at + d).all(|i| (0..self.nullspace.cols()).all(|j| self.nullspace[(i, j)].is_zero()))
    }
}
