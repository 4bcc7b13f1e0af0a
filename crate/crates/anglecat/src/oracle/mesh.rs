//! Mesh category of ZA_m and its orbit category under F = τ⁻¹[1].
//!
//! Vertices are (column, row) with rows 1..=m; arrows go
//! (c, r) → (c+1, r±1) and τ(c, r) = (c−2, r).  Morphisms in the mesh
//! category are linear combinations of paths modulo the ideal generated by
//! the mesh relations (all signs +).  Hom in the orbit category is
//! ⊕ᵢ Hom(X, FⁱY) and g∘f = Fⁱ(g)∘f.

use std::collections::HashMap;
use std::sync::Mutex;

use qlin::{Field, Fp, Matrix, Span, Q};

use crate::category::{EndoAction, Presentation};

pub type Vertex = (i64, i64);

/// Paths are a start vertex plus a list of row moves (±1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: Vertex,
    pub moves: Vec<i8>,
}

impl Path {
    pub fn end(&self) -> Vertex {
        let r: i64 = self.moves.iter().map(|&m| m as i64).sum();
        (self.start.0 + self.moves.len() as i64, self.start.1 + r)
    }
}

struct HomD {
    paths: Vec<Vec<i8>>,
    index: HashMap<Vec<i8>, usize>,
    ideal: Span,
    free: Vec<usize>,
}

pub struct Mesh {
    pub rows: i64,
    cache: Mutex<HashMap<(Vertex, Vertex), std::sync::Arc<HomD>>>,
}

impl Mesh {
    pub fn new(rows: i64) -> Mesh {
        Mesh { rows, cache: Mutex::new(HashMap::new()) }
    }

    fn valid(&self, r: i64) -> bool {
        (1..=self.rows).contains(&r)
    }

    /// All move sequences from `x` to `y`, in lexicographic order.
    fn paths(&self, x: Vertex, y: Vertex) -> Vec<Vec<i8>> {
        let len = y.0 - x.0;
        if len < 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.walk(x.1, y.1, len as usize, &mut cur, &mut out);
        out
    }

    fn walk(&self, r: i64, target: i64, left: usize, cur: &mut Vec<i8>, out: &mut Vec<Vec<i8>>) {
        if left == 0 {
            if r == target {
                out.push(cur.clone());
            }
            return;
        }
        if (r - target).unsigned_abs() as usize > left {
            return;
        }
        for m in [-1i8, 1] {
            let nr = r + m as i64;
            if self.valid(nr) {
                cur.push(m);
                self.walk(nr, target, left - 1, cur, out);
                cur.pop();
            }
        }
    }

    fn hom(&self, x: Vertex, y: Vertex) -> std::sync::Arc<HomD> {
        if let Some(h) = self.cache.lock().unwrap().get(&(x, y)) {
            return h.clone();
        }
        let paths = self.paths(x, y);
        let index: HashMap<Vec<i8>, usize> =
            paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = paths.len();
        let mut ideal = Span::new(n);
        let len = (y.0 - x.0).max(0) as usize;
        for s in 0..len.saturating_sub(1) {
            for z_row in 1..=self.rows {
                let z = (x.0 + s as i64, z_row);
                let v = (z.0 + 2, z.1);
                if (z.0 + z.1 + x.0 + x.1).rem_euclid(2) != 0 {
                    continue;
                }
                let mids: Vec<[i8; 2]> = [(-1i8, [-1i8, 1]), (1, [1, -1])]
                    .iter()
                    .filter(|(d, _)| self.valid(z.1 + *d as i64))
                    .map(|(_, m)| *m)
                    .collect();
                for pre in self.paths(x, z) {
                    for suf in self.paths(v, y) {
                        let mut vec = vec![Q::zero(); n];
                        for m in &mids {
                            let mut p = pre.clone();
                            p.extend_from_slice(m);
                            p.extend_from_slice(&suf);
                            let at = index[&p];
                            vec[at] = &vec[at] + &Q::one();
                        }
                        ideal.insert(vec);
                    }
                }
            }
        }
        let free = ideal.free_coords();
        let h = std::sync::Arc::new(HomD { paths, index, ideal, free });
        self.cache.lock().unwrap().insert((x, y), h.clone());
        h
    }

    /// Dimension of Hom(x, y) in the mesh category.
    pub fn dim(&self, x: Vertex, y: Vertex) -> usize {
        self.hom(x, y).free.len()
    }

    /// Coordinates of a path in the basis of Hom(start, end).
    pub fn reduce(&self, p: &Path) -> Vec<Q> {
        let h = self.hom(p.start, p.end());
        let mut v = vec![Q::zero(); h.paths.len()];
        v[h.index[&p.moves]] = Q::one();
        let r = h.ideal.reduce(&v);
        h.free.iter().map(|&i| r[i].clone()).collect()
    }

    /// The basis paths of Hom(x, y).
    pub fn basis(&self, x: Vertex, y: Vertex) -> Vec<Path> {
        let h = self.hom(x, y);
        h.free.iter().map(|&i| Path { start: x, moves: h.paths[i].clone() }).collect()
    }
}

/// The orbit category of the mesh category under F = τ⁻¹[1].
pub struct ClusterOracle {
    pub mesh: Mesh,
    pub names: Vec<String>,
    pub objects: Vec<Vertex>,
    /// Range of powers of F considered in Hom spaces.
    pub powers: std::ops::RangeInclusive<i64>,
}

/// One basis element of a Hom space in the orbit category.
#[derive(Clone, Debug)]
pub struct OrbitBasis {
    pub power: i64,
    pub path: Path,
}

impl ClusterOracle {
    pub fn new(rows: i64, names: Vec<String>, objects: Vec<Vertex>) -> ClusterOracle {
        ClusterOracle { mesh: Mesh::new(rows), names, objects, powers: -2..=2 }
    }

    /// The paper's A₃ objects S₃, P₁, S₁ at (0,1), (2,3), (4,1).
    pub fn a3() -> ClusterOracle {
        ClusterOracle::new(
            3,
            vec!["S3".into(), "P1".into(), "S1".into()],
            vec![(0, 1), (2, 3), (4, 1)],
        )
    }

    pub fn shift(&self, v: Vertex) -> Vertex {
        (v.0 + 1 + self.mesh.rows, self.mesh.rows + 1 - v.1)
    }

    pub fn tau(&self, v: Vertex) -> Vertex {
        (v.0 - 2, v.1)
    }

    /// Fⁱ(v): τ⁻¹ then reflect, i times (i may be negative).
    pub fn f_pow(&self, v: Vertex, i: i64) -> Vertex {
        let m = self.mesh.rows;
        let c = v.0 + i * (m + 3);
        let r = if i.rem_euclid(2) == 0 { v.1 } else { m + 1 - v.1 };
        (c, r)
    }

    pub fn f_path(&self, p: &Path, i: i64) -> Path {
        let flip = if i.rem_euclid(2) == 0 { 1 } else { -1 };
        Path { start: self.f_pow(p.start, i), moves: p.moves.iter().map(|m| m * flip).collect() }
    }

    /// Basis of Hom(X, Y) in the orbit category, ordered by (power, path).
    pub fn basis(&self, x: usize, y: usize) -> Vec<OrbitBasis> {
        let (vx, vy) = (self.objects[x], self.objects[y]);
        let mut out = Vec::new();
        for i in self.powers.clone() {
            for path in self.mesh.basis(vx, self.f_pow(vy, i)) {
                out.push(OrbitBasis { power: i, path });
            }
        }
        out
    }

    /// Coordinates of `g∘f` in the basis of Hom(X, Z).
    pub fn compose(&self, x: usize, z: usize, f: &OrbitBasis, g: &OrbitBasis) -> Vec<Q> {
        let gi = self.f_path(&g.path, f.power);
        assert_eq!(gi.start, f.path.end(), "paths do not meet");
        let mut moves = f.path.moves.clone();
        moves.extend(gi.moves);
        let p = Path { start: f.path.start, moves };
        self.expand(x, z, f.power + g.power, &p)
    }

    /// Coordinates of a path `X → F^power Z` in the orbit basis of Hom(X, Z).
    fn expand(&self, x: usize, z: usize, power: i64, p: &Path) -> Vec<Q> {
        let basis = self.basis(x, z);
        let mut out = vec![Q::zero(); basis.len()];
        let coords = self.mesh.reduce(p);
        if !self.powers.contains(&power) {
            assert!(coords.iter().all(|c| c.is_zero()), "orbit power out of range");
            return out;
        }
        let mut t = 0;
        for (slot, b) in basis.iter().enumerate() {
            if b.power == power {
                out[slot] = coords[t].clone();
                t += 1;
            }
        }
        out
    }

    /// Identifies a vertex as Fᵉ of one of the listed objects.
    fn locate(&self, v: Vertex) -> (usize, i64) {
        for (k, &o) in self.objects.iter().enumerate() {
            for e in -4..=4 {
                if self.f_pow(o, e) == v {
                    return (k, e);
                }
            }
        }
        panic!("vertex {v:?} is not in the orbit of a listed object")
    }

    /// τᵗ acting on objects and Hom spaces.
    pub fn tau_power_action(&self, t: i64) -> EndoAction {
        let k = self.objects.len();
        let moved: Vec<(usize, i64)> =
            self.objects.iter().map(|&v| self.locate((v.0 - 2 * t, v.1))).collect();
        let objects: Vec<usize> = moved.iter().map(|m| m.0).collect();
        let mut matrices = Vec::with_capacity(k);
        for x in 0..k {
            let mut row = Vec::with_capacity(k);
            for y in 0..k {
                let src = self.basis(x, y);
                let (sx, ex) = moved[x];
                let (sy, ey) = moved[y];
                let dim = self.basis(sx, sy).len();
                let mut cols = Vec::with_capacity(src.len());
                for b in &src {
                    let shifted = Path { start: (b.path.start.0 - 2 * t, b.path.start.1), moves: b.path.moves.clone() };
                    let back = self.f_path(&shifted, -ex);
                    cols.push(self.expand(sx, sy, b.power + ey - ex, &back));
                }
                row.push(Matrix::from_cols(&cols, dim));
            }
            matrices.push(row);
        }
        let mut seen = vec![false; k];
        for &o in &objects {
            seen[o] = true;
        }
        EndoAction { objects, matrices, automorphism: seen.iter().all(|&s| s) }
    }

    /// The full presentation with [2] = τ² as endofunctor.
    pub fn presentation(&self) -> Presentation {
        let k = self.objects.len();
        let bases: Vec<Vec<Vec<OrbitBasis>>> =
            (0..k).map(|x| (0..k).map(|y| self.basis(x, y)).collect()).collect();
        let hom = bases.iter().map(|r| r.iter().map(|b| b.len()).collect()).collect();
        let mut pres = Presentation::new(self.names.clone(), hom);
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    for (a, f) in bases[x][y].iter().enumerate() {
                        for (b, g) in bases[y][z].iter().enumerate() {
                            for (c, v) in self.compose(x, z, f, g).into_iter().enumerate() {
                                if !v.is_zero() {
                                    pres.add_structure((x, y, z), a, b, c, v);
                                }
                            }
                        }
                    }
                }
            }
            let trivial = Path { start: self.objects[x], moves: Vec::new() };
            pres.ids[x] = self.expand(x, x, 0, &trivial);
        }
        pres.endo = Some(self.tau_power_action(2));
        pres
    }

    /// dim Hom(X, Y) and the dimension of the subspace spanned by composites
    /// through `members`, computed on paths and ranked over a large prime.
    pub fn ideal_dims(&self, members: &[usize]) -> Vec<Vec<(usize, usize)>> {
        type F = Fp<1_000_000_007>;
        let to_f = |q: &Q| -> F {
            let n = q.as_i64().expect("integer path coefficients");
            F::from_i64(n)
        };
        let k = self.objects.len();
        let mut out = vec![vec![(0, 0); k]; k];
        for x in 0..k {
            for y in 0..k {
                let target = self.basis(x, y).len();
                let mut rows: Vec<Vec<F>> = Vec::new();
                for &t in members {
                    for u in self.basis(x, t) {
                        for v in self.basis(t, y) {
                            rows.push(self.compose(x, y, &u, &v).iter().map(to_f).collect());
                        }
                    }
                }
                let rank = Matrix::from_rows(rows, target).rank();
                out[x][y] = (target, rank);
            }
        }
        out
    }
}
