//! The quotient `C/X` by the ideal of morphisms factoring through a
//! subcategory `X = add{members}`, with its suspension (`Σ` for the additive
//! construction, `𝔾` for the angulated one).
//!
//! A context is built once and sealed: the ideal, the witnesses and the
//! action of the suspension on indecomposables never change afterwards.

use std::sync::Arc;

use qlin::{Span, Q};

use crate::angle::Explicit;
use crate::category::{Mor, Obj, Presentation};
use crate::exact::find_n_cokernel;
use crate::work::{self, solve_system, Ambient, Constraint, SigmaTag, Term, Work};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientMode {
    Additive,
    Angulated,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcategorySpec {
    pub members: Vec<bool>,
}

impl SubcategorySpec {
    pub fn from_indices(k: usize, idx: &[usize]) -> SubcategorySpec {
        let mut members = vec![false; k];
        for &i in idx {
            members[i] = true;
        }
        SubcategorySpec { members }
    }

    pub fn contains(&self, a: &Obj) -> bool {
        a.0.iter().zip(&self.members).all(|(&m, &x)| m == 0 || x)
    }
}

/// `A0 → X1 → … → Xn → B` with `X1 … Xn` in `X` and a left approximation
/// first; in the angulated case also `B → ΣA0`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub objs: Vec<Obj>,
    pub maps: Vec<Mor>,
    pub last: Option<Mor>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum QuotientError {
    #[error("subcategory has {got} flags, presentation has {want} indecomposables")]
    Shape { got: usize, want: usize },
    #[error("identity of {0} factors through the subcategory")]
    IdentityInIdeal(String),
    #[error("no special n-cokernel for the approximation of {0}")]
    NoSpecialCokernel(String),
    #[error("angulated mode needs an ambient angle oracle")]
    MissingAmbient,
    #[error("no angle on the approximation of {0}")]
    NoWitness(String),
    #[error("witness angle of {0} has middle terms outside the subcategory")]
    NotStronglyCovariantlyFinite(String),
    #[error("suspension of a morphism {0} -> {1} has no ladder")]
    SigmaLadder(String, String),
}

pub struct QuotientContext {
    pub ambient: Ambient,
    pub x: SubcategorySpec,
    pub mode: QuotientMode,
    pub n: usize,
    pub phi: Option<Arc<Explicit>>,
    ideal: Vec<Vec<Span>>,
    free: Vec<Vec<Vec<usize>>>,
    witnesses: Vec<Witness>,
    sigma_ind: Vec<Obj>,
    /// `sigma_mats[i][j][t]`: image of the t-th quotient basis element.
    sigma_mats: Vec<Vec<Vec<Mor>>>,
}

/// Span of the ideal inside `Hom(i, j)`.
pub fn ideal_subspace(p: &Presentation, x: &SubcategorySpec, i: usize, j: usize) -> Span {
    let mut s = Span::new(p.hom[i][j]);
    for (m, &is_x) in x.members.iter().enumerate() {
        if !is_x {
            continue;
        }
        for a in 0..p.hom[i][m] {
            for b in 0..p.hom[m][j] {
                let mut f = vec![Q::zero(); p.hom[i][m]];
                f[a] = Q::one();
                let mut g = vec![Q::zero(); p.hom[m][j]];
                g[b] = Q::one();
                s.insert(p.compose_basis((i, m, j), &g, &f));
            }
        }
    }
    s
}

/// `A → ⊕_{x∈X} x^{dim Hom(A,x)}` whose rows are the elementary morphisms.
pub fn canonical_left_approximation(p: &Presentation, x: &SubcategorySpec, a: &Obj) -> Mor {
    let k = p.k();
    let mut rows: Vec<Mor> = Vec::new();
    for (m, &is_x) in x.members.iter().enumerate() {
        if is_x {
            let t = Obj::indec(k, m);
            rows.extend(p.hom_space(a, &t));
        }
    }
    let objs: Vec<Obj> = rows.iter().map(|r| r.dst.clone()).collect();
    p.matrix(&objs, std::slice::from_ref(a), |r, _| Some(rows[r].clone()))
}

/// Every morphism into `X` factors through `f`.
pub fn is_x_monic(p: &Presentation, x: &SubcategorySpec, f: &Mor) -> bool {
    let amb = Ambient::new(p.clone(), 0);
    let k = p.k();
    (0..k).filter(|&m| x.members[m]).all(|m| {
        let t = Obj::indec(k, m);
        let cols: Vec<Vec<Q>> = p.hom_space(&f.dst, &t).iter().map(|e| p.compose(e, f).coords).collect();
        let mat = qlin::Matrix::from_cols(&cols, work::dim(&amb, &f.src, &t));
        mat.rank() == p.hom_dim(&f.src, &t)
    })
}

impl QuotientContext {
    pub fn new(
        pres: Presentation,
        x: SubcategorySpec,
        mode: QuotientMode,
        n: usize,
        phi: Option<Arc<Explicit>>,
        seed: u64,
    ) -> Result<QuotientContext, QuotientError> {
        let k = pres.k();
        if x.members.len() != k {
            return Err(QuotientError::Shape { got: x.members.len(), want: k });
        }
        if mode == QuotientMode::Angulated && phi.is_none() {
            return Err(QuotientError::MissingAmbient);
        }
        let mut ideal = Vec::with_capacity(k);
        let mut free = Vec::with_capacity(k);
        for i in 0..k {
            let row: Vec<Span> = (0..k).map(|j| ideal_subspace(&pres, &x, i, j)).collect();
            free.push(row.iter().map(|s| s.free_coords()).collect());
            ideal.push(row);
        }
        for i in 0..k {
            if !x.members[i] && ideal[i][i].contains(&pres.ids[i]) {
                return Err(QuotientError::IdentityInIdeal(pres.names[i].clone()));
            }
        }
        let ambient = Ambient::new(pres, seed);
        let mut ctx = QuotientContext {
            ambient,
            x,
            mode,
            n,
            phi,
            ideal,
            free,
            witnesses: Vec::new(),
            sigma_ind: Vec::new(),
            sigma_mats: Vec::new(),
        };
        for i in 0..k {
            let w = ctx.indec_witness(i)?;
            ctx.sigma_ind.push(w.objs[n + 1].clone());
            ctx.witnesses.push(w);
        }
        let mut mats = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in 0..k {
                for &t in &ctx.free[i][j] {
                    let e = ctx.ambient.pres.elem(&Obj::indec(k, i), &Obj::indec(k, j), t);
                    let legs = ctx
                        .witness_ladder(&ctx.witnesses[i], &ctx.witnesses[j], &e)
                        .ok_or_else(|| QuotientError::SigmaLadder(ctx.name(i), ctx.name(j)))?;
                    mats[i][j].push(legs[n + 1].clone());
                }
            }
        }
        ctx.sigma_mats = mats;
        Ok(ctx)
    }

    fn name(&self, i: usize) -> String {
        self.ambient.pres.names[i].clone()
    }

    pub fn pres(&self) -> &Presentation {
        &self.ambient.pres
    }

    pub fn amb(&self) -> &dyn Work {
        match &self.phi {
            Some(phi) => phi.as_ref(),
            None => &self.ambient,
        }
    }

    fn indec_witness(&self, i: usize) -> Result<Witness, QuotientError> {
        let p = &self.ambient.pres;
        let a = Obj::indec(p.k(), i);
        let l = canonical_left_approximation(p, &self.x, &a);
        match self.mode {
            QuotientMode::Additive => {
                let ck = find_n_cokernel(&self.ambient, &l, self.n, Some(&self.x.members))
                    .ok_or_else(|| QuotientError::NoSpecialCokernel(self.name(i)))?;
                let mut maps = vec![l];
                maps.extend(ck.maps);
                let mut objs: Vec<Obj> = maps.iter().map(|m| m.src.clone()).collect();
                objs.push(maps.last().unwrap().dst.clone());
                Ok(Witness { objs, maps, last: None })
            }
            QuotientMode::Angulated => {
                let phi = self.phi.as_ref().unwrap();
                let s = phi.complete(&l).ok_or_else(|| QuotientError::NoWitness(self.name(i)))?;
                if !(2..=self.n).all(|k| self.x.contains(&s.objs[k])) {
                    return Err(QuotientError::NotStronglyCovariantlyFinite(self.name(i)));
                }
                let n = self.n;
                Ok(Witness { objs: s.objs.clone(), maps: s.maps[..=n].to_vec(), last: Some(s.maps[n + 1].clone()) })
            }
        }
    }

    /// Witness of an arbitrary object: the direct sum over its slots.
    pub fn witness(&self, a: &Obj) -> Witness {
        let p = &self.ambient.pres;
        let n = self.n;
        let parts: Vec<&Witness> = a.slots().iter().map(|&i| &self.witnesses[i]).collect();
        let z = Obj::zero(p.k());
        let diag = |pick: &dyn Fn(&Witness) -> Mor| -> Mor {
            if parts.is_empty() {
                return p.zero(&z, &z);
            }
            let ms: Vec<Mor> = parts.iter().map(|w| pick(w)).collect();
            p.diag(&ms.iter().collect::<Vec<_>>())
        };
        let maps: Vec<Mor> = (0..=n).map(|k| diag(&|w: &Witness| w.maps[k].clone())).collect();
        let mut objs: Vec<Obj> = maps.iter().map(|m| m.src.clone()).collect();
        objs.push(maps[n].dst.clone());
        let last = (self.mode == QuotientMode::Angulated).then(|| diag(&|w: &Witness| w.last.clone().unwrap()));
        Witness { objs, maps, last }
    }

    /// Legs `f_0 … f_{n+1}` of a ladder `s → t` in `C` with `f_0` given.
    /// In the angulated case the square at `ΣA0` is imposed as well.
    fn witness_ladder(&self, s: &Witness, t: &Witness, f0: &Mor) -> Option<Vec<Mor>> {
        self.ladder_into(&s.maps, s.last.as_ref(), t, f0, None)
    }

    /// Ladder from a sequence `a_0 … a_n` (plus `a_{n+1}` in the angulated
    /// case) into a witness, with `f_0` and optionally `f_1` prescribed.
    pub fn ladder_into(&self, a: &[Mor], a_last: Option<&Mor>, t: &Witness, f0: &Mor, f1: Option<&Mor>) -> Option<Vec<Mor>> {
        let amb = self.amb();
        let p = amb.pres();
        let n = self.n;
        let start = if f1.is_some() { 2 } else { 1 };
        let shapes: Vec<(Obj, Obj)> = (start..=n + 1).map(|k| (a[k - 1].dst.clone(), t.objs[k].clone())).collect();
        let u = |k: usize| k - start;
        let known = |k: usize| -> Option<Mor> {
            match k {
                0 => Some(f0.clone()),
                1 => f1.cloned(),
                _ => None,
            }
        };
        let mut cons = Vec::new();
        for k in 0..=n {
            let mut terms = Vec::new();
            match known(k + 1) {
                Some(f) => terms.push(Term::Const(p.compose(&f, &a[k]))),
                None => terms.push(Term::lin(None, u(k + 1), Some(&a[k]))),
            }
            match known(k) {
                Some(f) => terms.push(Term::Const(p.compose(&t.maps[k], &f).neg())),
                None => terms.push(Term::neg_lin(Some(&t.maps[k]), u(k), None)),
            }
            cons.push(Constraint { src: a[k].src.clone(), dst: t.objs[k + 1].clone(), terms });
        }
        if let (Some(al), Some(tl)) = (a_last, &t.last) {
            let sf0 = amb.sigma_mor(f0);
            cons.push(Constraint {
                src: al.src.clone(),
                dst: tl.dst.clone(),
                terms: vec![Term::Const(p.compose(&sf0, al)), Term::neg_lin(Some(tl), u(n + 1), None)],
            });
        }
        let sol = solve_system(amb, &shapes, &cons)?;
        let pt = sol.echelon(amb);
        let mut legs = vec![f0.clone()];
        if let Some(f) = f1 {
            legs.push(f.clone());
        }
        legs.extend(pt);
        Some(legs)
    }

    pub fn is_member(&self, i: usize) -> bool {
        self.x.members[i]
    }

    pub fn ideal_dim(&self, i: usize, j: usize) -> usize {
        self.ideal[i][j].dim()
    }

    pub fn quotient_hom_dim(&self, i: usize, j: usize) -> usize {
        self.free[i][j].len()
    }

    /// `Σ` (or `𝔾`) of an indecomposable.
    pub fn sigma_indec(&self, i: usize) -> &Obj {
        &self.sigma_ind[i]
    }

    pub fn indec_witness_of(&self, i: usize) -> &Witness {
        &self.witnesses[i]
    }

    /// Ideal membership of an ambient morphism.
    pub fn in_ideal(&self, f: &Mor) -> bool {
        work::is_zero(self, f)
    }

    /// `f` is an isomorphism in the quotient.
    pub fn quotient_is_iso(&self, f: &Mor) -> bool {
        work::is_iso(self, f)
    }

    /// The class of `f` as its canonical lift.
    pub fn project(&self, f: &Mor) -> Mor {
        work::normalize(self, f)
    }

    /// Non-member indecomposables whose class is in the image of the
    /// suspension on objects.
    pub fn suspension_hits(&self, a: &Obj) -> bool {
        let k = self.pres().k();
        a.0.iter().enumerate().all(|(i, &m)| {
            m == 0 || self.x.members[i] || (0..k).any(|j| self.obj_class(&self.sigma_ind[j]) == Obj::indec(k, i))
        })
    }
}

impl Work for QuotientContext {
    fn pres(&self) -> &Presentation {
        &self.ambient.pres
    }

    fn tag(&self) -> SigmaTag {
        match self.mode {
            QuotientMode::Additive => SigmaTag::QuotientSigma,
            QuotientMode::Angulated => SigmaTag::QuotientG,
        }
    }

    fn basis_idx(&self, a: &Obj, b: &Obj) -> Vec<usize> {
        let l = self.ambient.pres.layout(a, b);
        let mut out = Vec::new();
        for (p, &j) in l.dst_slots.iter().enumerate() {
            for (q, &i) in l.src_slots.iter().enumerate() {
                let off = l.offset(p, q);
                out.extend(self.free[i][j].iter().map(|t| off + t));
            }
        }
        out
    }

    fn coords(&self, f: &Mor) -> Vec<Q> {
        let l = self.ambient.pres.layout(&f.src, &f.dst);
        let mut out = Vec::new();
        for (p, &j) in l.dst_slots.iter().enumerate() {
            for (q, &i) in l.src_slots.iter().enumerate() {
                let block = &f.coords[l.range(p, q)];
                let free = &self.free[i][j];
                if self.ideal[i][j].dim() == 0 {
                    out.extend(block.iter().cloned());
                } else if !free.is_empty() {
                    let r = self.ideal[i][j].reduce(block);
                    out.extend(free.iter().map(|&t| r[t].clone()));
                }
            }
        }
        out
    }

    fn sigma_obj(&self, a: &Obj) -> Obj {
        let mut out = Obj::zero(a.0.len());
        for (i, &m) in a.0.iter().enumerate() {
            out = out.plus(&self.sigma_ind[i].scaled(m));
        }
        out
    }

    fn sigma_mor(&self, f: &Mor) -> Mor {
        let p = &self.ambient.pres;
        let l = p.layout(&f.src, &f.dst);
        let rows: Vec<Obj> = l.dst_slots.iter().map(|&j| self.sigma_ind[j].clone()).collect();
        let cols: Vec<Obj> = l.src_slots.iter().map(|&i| self.sigma_ind[i].clone()).collect();
        p.matrix(&rows, &cols, |r, c| {
            let (i, j) = (l.src_slots[c], l.dst_slots[r]);
            let block = &f.coords[l.range(r, c)];
            if block.iter().all(|x| x.is_zero()) || self.free[i][j].is_empty() {
                return None;
            }
            let red = self.ideal[i][j].reduce(block);
            let mut acc = p.zero(&cols[c], &rows[r]);
            for (t, &idx) in self.free[i][j].iter().enumerate() {
                if !red[idx].is_zero() {
                    acc = acc.axpy(&red[idx], &self.sigma_mats[i][j][t]);
                }
            }
            Some(acc)
        })
    }

    fn obj_class(&self, a: &Obj) -> Obj {
        let keep: Vec<bool> = self.x.members.iter().map(|m| !m).collect();
        a.restrict(&keep)
    }

    fn seed(&self) -> u64 {
        self.ambient.seed
    }
}
