//! Hom spaces between modules over k[x]/(x²), by brute-force linear algebra.
//!
//! A module is a vector space with a nilpotent matrix for x.  Hom(M, N) is
//! the solution space of φ·x_M = x_N·φ; bases come from the nullspace and
//! composites are re-expressed in them by solving.

use qlin::{Matrix, Q};

use crate::category::Presentation;

#[derive(Clone, Debug)]
pub struct Module {
    pub name: String,
    pub x: Matrix,
}

impl Module {
    pub fn dim(&self) -> usize {
        self.x.rows()
    }
}

/// The simple module k and the regular module Λ, in that order.
pub fn kx2_modules() -> Vec<Module> {
    vec![
        Module { name: "k".into(), x: Matrix::zeros(1, 1) },
        Module { name: "L".into(), x: Matrix::from_i64(&[&[0, 0], &[1, 0]]) },
    ]
}

/// Vectorizes a dn×dm matrix row-major.
fn vec_of(m: &Matrix) -> Vec<Q> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

fn unvec(v: &[Q], rows: usize, cols: usize) -> Matrix {
    Matrix::from_vec(rows, cols, v.to_vec())
}

/// Basis of Hom(M, N) as matrices.
pub fn hom_basis(m: &Module, n: &Module) -> Vec<Matrix> {
    let (dm, dn) = (m.dim(), n.dim());
    let vars = dm * dn;
    let mut cols = Vec::with_capacity(vars);
    for t in 0..vars {
        let mut e = vec![Q::zero(); vars];
        e[t] = Q::one();
        let phi = unvec(&e, dn, dm);
        let c = phi.mul(&m.x).sub(&n.x.mul(&phi));
        cols.push(vec_of(&c));
    }
    let sys = Matrix::from_cols(&cols, dn * dm);
    sys.nullspace().col_vecs().iter().map(|v| unvec(v, dn, dm)).collect()
}

fn coords_in(basis: &[Matrix], target: &Matrix, rows: usize, cols: usize) -> Vec<Q> {
    let a = Matrix::from_cols(&basis.iter().map(vec_of).collect::<Vec<_>>(), rows * cols);
    let (x, _) = a.solve_vec(&vec_of(target)).expect("composite lies in the Hom space");
    x
}

pub fn presentation(mods: &[Module]) -> Presentation {
    let k = mods.len();
    let bases: Vec<Vec<Vec<Matrix>>> =
        (0..k).map(|i| (0..k).map(|j| hom_basis(&mods[i], &mods[j])).collect()).collect();
    let hom = bases.iter().map(|r| r.iter().map(|b| b.len()).collect()).collect();
    let mut pres = Presentation::new(mods.iter().map(|m| m.name.clone()).collect(), hom);
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                for (a, f) in bases[i][j].iter().enumerate() {
                    for (b, g) in bases[j][l].iter().enumerate() {
                        let gf = g.mul(f);
                        let c = coords_in(&bases[i][l], &gf, mods[l].dim(), mods[i].dim());
                        for (t, v) in c.into_iter().enumerate() {
                            if !v.is_zero() {
                                pres.add_structure((i, j, l), a, b, t, v);
                            }
                        }
                    }
                }
            }
        }
        let d = mods[i].dim();
        pres.ids[i] = coords_in(&bases[i][i], &Matrix::identity(d), d, d);
    }
    pres
}
