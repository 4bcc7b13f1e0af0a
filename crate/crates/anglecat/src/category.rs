//! Finite additive categories given by Hom bases and structure constants.
//!
//! Objects are multiplicity vectors over the indecomposables.  The slots of
//! an object are ordered by (indecomposable index, copy).  A morphism stores
//! the coordinates of all its blocks in one flat vector, ordered
//! lexicographically by (dst slot, src slot, basis index).

use std::fmt;

use qlin::{Matrix, Q};

/// `basis_b(j→k) ∘ basis_a(i→j) = value · basis_c(i→k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Structure {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EndoAction {
    /// Image of each indecomposable.
    pub objects: Vec<usize>,
    /// `matrices[i][j]` maps Hom(i,j) coordinates to Hom(σi,σj) coordinates.
    pub matrices: Vec<Vec<Matrix>>,
    pub automorphism: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub names: Vec<String>,
    pub hom: Vec<Vec<usize>>,
    /// `comp[i][j][k]`: nonzero structure constants for i→j→k.
    pub comp: Vec<Vec<Vec<Vec<Structure>>>>,
    pub ids: Vec<Vec<Q>>,
    pub endo: Option<EndoAction>,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj(pub Vec<usize>);

#[derive(Clone, PartialEq)]
pub struct Mor {
    pub src: Obj,
    pub dst: Obj,
    pub coords: Vec<Q>,
}

/// Block offsets of Hom(src, dst).
#[derive(Clone, Debug)]
pub struct Layout {
    pub src_slots: Vec<usize>,
    pub dst_slots: Vec<usize>,
    offsets: Vec<usize>,
}

impl Layout {
    pub fn offset(&self, p: usize, q: usize) -> usize {
        self.offsets[p * self.src_slots.len() + q]
    }

    pub fn range(&self, p: usize, q: usize) -> std::ops::Range<usize> {
        let k = p * self.src_slots.len() + q;
        self.offsets[k]..self.offsets[k + 1]
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// (dst slot, src slot, basis index) of a flat coordinate.
    pub fn locate(&self, idx: usize) -> (usize, usize, usize) {
        let k = self.offsets.partition_point(|&o| o <= idx) - 1;
        let q = self.src_slots.len();
        (k / q, k % q, idx - self.offsets[k])
    }
}

impl Obj {
    pub fn zero(k: usize) -> Obj {
        Obj(vec![0; k])
    }

    pub fn indec(k: usize, i: usize) -> Obj {
        let mut v = vec![0; k];
        v[i] = 1;
        Obj(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn len(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Indecomposable index of each slot.
    pub fn slots(&self) -> Vec<usize> {
        let mut s = Vec::with_capacity(self.len());
        for (i, &m) in self.0.iter().enumerate() {
            s.extend(std::iter::repeat(i).take(m));
        }
        s
    }

    pub fn plus(&self, o: &Obj) -> Obj {
        Obj(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, k: usize) -> Obj {
        Obj(self.0.iter().map(|a| a * k).collect())
    }

    /// Keeps only the multiplicities at indices where `keep` is true.
    pub fn restrict(&self, keep: &[bool]) -> Obj {
        Obj(self.0.iter().zip(keep).map(|(&m, &k)| if k { m } else { 0 }).collect())
    }
}

impl fmt::Debug for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Obj{:?}", self.0)
    }
}

impl fmt::Debug for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mor({:?} -> {:?}: {:?})", self.src.0, self.dst.0, self.coords)
    }
}

/// Slot bookkeeping for a direct sum of objects.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub total: Obj,
    pub parts: Vec<Obj>,
    /// `maps[k][s]` is the total slot of slot `s` of part `k`.
    pub maps: Vec<Vec<usize>>,
}

impl DirectSum {
    pub fn new(k: usize, parts: &[Obj]) -> DirectSum {
        let mut total = Obj::zero(k);
        for p in parts {
            total = total.plus(p);
        }
        let mut start = vec![0; k];
        for i in 1..k {
            start[i] = start[i - 1] + total.0[i - 1];
        }
        let mut used = vec![0; k];
        let mut maps = Vec::with_capacity(parts.len());
        for p in parts {
            let mut m = Vec::with_capacity(p.len());
            for i in p.slots() {
                m.push(start[i] + used[i]);
                used[i] += 1;
            }
            maps.push(m);
        }
        DirectSum { total, parts: parts.to_vec(), maps }
    }
}

impl Mor {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    fn same_shape(&self, o: &Mor) {
        assert!(self.src == o.src && self.dst == o.dst, "shape mismatch: {self:?} vs {o:?}");
    }

    pub fn add(&self, o: &Mor) -> Mor {
        self.same_shape(o);
        Mor {
            src: self.src.clone(),
            dst: self.dst.clone(),
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Mor) -> Mor {
        self.same_shape(o);
        Mor {
            src: self.src.clone(),
            dst: self.dst.clone(),
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Mor {
        Mor {
            src: self.src.clone(),
            dst: self.dst.clone(),
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Mor {
        self.scale(&Q::int(-1))
    }

    /// `self + c·o`.
    pub fn axpy(&self, c: &Q, o: &Mor) -> Mor {
        self.same_shape(o);
        Mor {
            src: self.src.clone(),
            dst: self.dst.clone(),
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + &(c * b)).collect(),
        }
    }
}

impl Presentation {
    pub fn new(names: Vec<String>, hom: Vec<Vec<usize>>) -> Presentation {
        let k = names.len();
        Presentation {
            comp: vec![vec![vec![Vec::new(); k]; k]; k],
            ids: (0..k).map(|i| vec![Q::zero(); hom[i][i]]).collect(),
            names,
            hom,
            endo: None,
        }
    }

    pub fn k(&self) -> usize {
        self.names.len()
    }

    /// Adds `v` to the constant for `basis_b ∘ basis_a` at `basis_c`.
    pub fn add_structure(&mut self, (i, j, k): (usize, usize, usize), a: usize, b: usize, c: usize, v: Q) {
        let list = &mut self.comp[i][j][k];
        if let Some(s) = list.iter_mut().find(|s| s.a == a && s.b == b && s.c == c) {
            s.value = &s.value + &v;
        } else {
            list.push(Structure { a, b, c, value: v });
        }
        list.retain(|s| !s.value.is_zero());
    }

    /// `g ∘ f` for `f ∈ Hom(i,j)`, `g ∈ Hom(j,k)`, accumulated into `out`.
    pub fn compose_into(&self, (i, j, k): (usize, usize, usize), g: &[Q], f: &[Q], out: &mut [Q]) {
        for s in &self.comp[i][j][k] {
            let (x, y) = (&f[s.a], &g[s.b]);
            if x.is_zero() || y.is_zero() {
                continue;
            }
            out[s.c] = &out[s.c] + &(&(x * y) * &s.value);
        }
    }

    pub fn compose_basis(&self, ijk: (usize, usize, usize), g: &[Q], f: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.hom[ijk.0][ijk.2]];
        self.compose_into(ijk, g, f, &mut out);
        out
    }

    pub fn layout(&self, src: &Obj, dst: &Obj) -> Layout {
        let src_slots = src.slots();
        let dst_slots = dst.slots();
        let mut offsets = Vec::with_capacity(src_slots.len() * dst_slots.len() + 1);
        let mut o = 0;
        for &j in &dst_slots {
            for &i in &src_slots {
                offsets.push(o);
                o += self.hom[i][j];
            }
        }
        offsets.push(o);
        Layout { src_slots, dst_slots, offsets }
    }

    pub fn hom_dim(&self, a: &Obj, b: &Obj) -> usize {
        let mut d = 0;
        for (i, &m) in a.0.iter().enumerate() {
            for (j, &n) in b.0.iter().enumerate() {
                d += m * n * self.hom[i][j];
            }
        }
        d
    }

    pub fn zero(&self, a: &Obj, b: &Obj) -> Mor {
        Mor { src: a.clone(), dst: b.clone(), coords: vec![Q::zero(); self.hom_dim(a, b)] }
    }

    pub fn identity(&self, a: &Obj) -> Mor {
        let l = self.layout(a, a);
        let mut coords = vec![Q::zero(); l.dim()];
        for (p, &i) in l.dst_slots.iter().enumerate() {
            let off = l.offset(p, p);
            for (t, v) in self.ids[i].iter().enumerate() {
                coords[off + t] = v.clone();
            }
        }
        Mor { src: a.clone(), dst: a.clone(), coords }
    }

    pub fn from_coords(&self, a: &Obj, b: &Obj, coords: Vec<Q>) -> Mor {
        assert_eq!(coords.len(), self.hom_dim(a, b), "coordinate count");
        Mor { src: a.clone(), dst: b.clone(), coords }
    }

    /// The elementary morphism with a single coordinate 1.
    pub fn elem(&self, a: &Obj, b: &Obj, idx: usize) -> Mor {
        let mut m = self.zero(a, b);
        m.coords[idx] = Q::one();
        m
    }

    pub fn hom_space(&self, a: &Obj, b: &Obj) -> Vec<Mor> {
        (0..self.hom_dim(a, b)).map(|t| self.elem(a, b, t)).collect()
    }

    pub fn compose(&self, g: &Mor, f: &Mor) -> Mor {
        assert!(f.dst == g.src, "compose: {:?} then {:?}", f, g);
        let lf = self.layout(&f.src, &f.dst);
        let lg = self.layout(&g.src, &g.dst);
        let lo = self.layout(&f.src, &g.dst);
        let mut out = vec![Q::zero(); lo.dim()];
        for (r, &j) in lf.dst_slots.iter().enumerate() {
            for (q, &i) in lf.src_slots.iter().enumerate() {
                let fb = &f.coords[lf.range(r, q)];
                if fb.iter().all(|x| x.is_zero()) {
                    continue;
                }
                for (p, &k) in lg.dst_slots.iter().enumerate() {
                    let gb = &g.coords[lg.range(p, r)];
                    if gb.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    let rg = lo.range(p, q);
                    self.compose_into((i, j, k), gb, fb, &mut out[rg]);
                }
            }
        }
        Mor { src: f.src.clone(), dst: g.dst.clone(), coords: out }
    }

    /// Composes right to left: `chain(&[h, g, f]) = h∘g∘f`.
    pub fn chain(&self, ms: &[&Mor]) -> Mor {
        let mut acc = (*ms.last().expect("nonempty chain")).clone();
        for m in ms.iter().rev().skip(1) {
            acc = self.compose(m, &acc);
        }
        acc
    }

    /// Block (p, q) of `f` as a morphism between indecomposables.
    pub fn block(&self, f: &Mor, p: usize, q: usize) -> Vec<Q> {
        let l = self.layout(&f.src, &f.dst);
        f.coords[l.range(p, q)].to_vec()
    }

    /// Two-sided inverse in the ambient category.
    pub fn inverse(&self, f: &Mor) -> Option<Mor> {
        let basis = self.hom_space(&f.dst, &f.src);
        let id_a = self.identity(&f.src);
        let id_b = self.identity(&f.dst);
        let cols: Vec<Vec<Q>> = basis
            .iter()
            .map(|e| {
                let mut c = self.compose(e, f).coords;
                c.extend(self.compose(f, e).coords);
                c
            })
            .collect();
        let rows = id_a.coords.len() + id_b.coords.len();
        let a = Matrix::from_cols(&cols, rows);
        let mut rhs = id_a.coords.clone();
        rhs.extend(id_b.coords);
        let (x, _) = a.solve_vec(&rhs)?;
        Some(self.from_coords(&f.dst, &f.src, x))
    }

    pub fn is_isomorphism(&self, f: &Mor) -> bool {
        self.inverse(f).is_some()
    }

    pub fn obj_direct_sum(&self, a: &Obj, b: &Obj) -> Obj {
        a.plus(b)
    }

    pub fn mor_direct_sum(&self, f: &Mor, g: &Mor) -> Mor {
        self.diag(&[f, g])
    }

    /// Block-diagonal sum.
    pub fn diag(&self, fs: &[&Mor]) -> Mor {
        let srcs: Vec<Obj> = fs.iter().map(|f| f.src.clone()).collect();
        let dsts: Vec<Obj> = fs.iter().map(|f| f.dst.clone()).collect();
        self.matrix(&dsts, &srcs, |r, c| if r == c { Some(fs[r].clone()) } else { None })
    }

    /// Assembles `⊕cols → ⊕rows` from entries `cols[c] → rows[r]`.
    pub fn matrix<F>(&self, rows: &[Obj], cols: &[Obj], entry: F) -> Mor
    where
        F: Fn(usize, usize) -> Option<Mor>,
    {
        let k = self.k();
        let rs = DirectSum::new(k, rows);
        let cs = DirectSum::new(k, cols);
        let lo = self.layout(&cs.total, &rs.total);
        let mut out = vec![Q::zero(); lo.dim()];
        for r in 0..rows.len() {
            for c in 0..cols.len() {
                let Some(e) = entry(r, c) else { continue };
                assert!(
                    e.src == cols[c] && e.dst == rows[r],
                    "matrix entry ({r},{c}) has shape {:?} -> {:?}, expected {:?} -> {:?}",
                    e.src,
                    e.dst,
                    cols[c],
                    rows[r]
                );
                let le = self.layout(&e.src, &e.dst);
                for p in 0..le.dst_slots.len() {
                    for q in 0..le.src_slots.len() {
                        let src = le.range(p, q);
                        let dst = lo.offset(rs.maps[r][p], cs.maps[c][q]);
                        for (t, v) in e.coords[src].iter().enumerate() {
                            out[dst + t] = v.clone();
                        }
                    }
                }
            }
        }
        Mor { src: cs.total, dst: rs.total, coords: out }
    }

    /// Entry `cols[c] → rows[r]` of a morphism `⊕cols → ⊕rows`.
    pub fn entry(&self, f: &Mor, rows: &[Obj], cols: &[Obj], r: usize, c: usize) -> Mor {
        let k = self.k();
        let rs = DirectSum::new(k, rows);
        let cs = DirectSum::new(k, cols);
        assert!(f.src == cs.total && f.dst == rs.total, "entry: shape mismatch");
        let lf = self.layout(&f.src, &f.dst);
        let le = self.layout(&cols[c], &rows[r]);
        let mut out = vec![Q::zero(); le.dim()];
        for p in 0..le.dst_slots.len() {
            for q in 0..le.src_slots.len() {
                let src = lf.offset(rs.maps[r][p], cs.maps[c][q]);
                for (t, o) in le.range(p, q).enumerate() {
                    out[o] = f.coords[src + t].clone();
                }
            }
        }
        Mor { src: cols[c].clone(), dst: rows[r].clone(), coords: out }
    }

    pub fn incl(&self, parts: &[Obj], k: usize) -> Mor {
        let one = [parts[k].clone()];
        self.matrix(parts, &one, |r, _| if r == k { Some(self.identity(&parts[k])) } else { None })
    }

    pub fn proj(&self, parts: &[Obj], k: usize) -> Mor {
        let one = [parts[k].clone()];
        self.matrix(&one, parts, |_, c| if c == k { Some(self.identity(&parts[k])) } else { None })
    }

    pub fn has_endo(&self) -> bool {
        self.endo.is_some()
    }

    pub fn endo_obj(&self, a: &Obj) -> Obj {
        let e = self.endo.as_ref().expect("no endofunctor action");
        let mut out = Obj::zero(self.k());
        for (i, &m) in a.0.iter().enumerate() {
            out.0[e.objects[i]] += m;
        }
        out
    }

    /// Applies the endofunctor blockwise.  The image of the slot list of
    /// `a` is reordered by the direct-sum convention.
    pub fn apply_endofunctor(&self, f: &Mor) -> Mor {
        let e = self.endo.as_ref().expect("no endofunctor action");
        let k = self.k();
        let src_parts: Vec<Obj> = f.src.slots().iter().map(|&i| Obj::indec(k, e.objects[i])).collect();
        let dst_parts: Vec<Obj> = f.dst.slots().iter().map(|&i| Obj::indec(k, e.objects[i])).collect();
        let lf = self.layout(&f.src, &f.dst);
        self.matrix(&dst_parts, &src_parts, |p, q| {
            let (i, j) = (lf.src_slots[q], lf.dst_slots[p]);
            let block = &f.coords[lf.range(p, q)];
            if block.iter().all(|x| x.is_zero()) {
                return None;
            }
            let img = e.matrices[i][j].mul_vec(block);
            Some(Mor { src: src_parts[q].clone(), dst: dst_parts[p].clone(), coords: img })
        })
    }
}
