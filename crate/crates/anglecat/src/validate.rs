use std::fmt;

use crate::category::Presentation;
use qlin::Q;

#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    Shape(String),
    /// `(c∘b)∘a ≠ c∘(b∘a)` for basis elements over i→j→k→l.
    Associativity { objs: [usize; 4], basis: [usize; 3] },
    LeftUnit { i: usize, j: usize, a: usize },
    RightUnit { i: usize, j: usize, a: usize },
    EndoComposition { objs: [usize; 3], basis: [usize; 2] },
    EndoIdentity { i: usize },
    NotAutomorphism(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(s) => write!(f, "shape: {s}"),
            Violation::Associativity { objs: [i, j, k, l], basis: [a, b, c] } => write!(
                f,
                "associativity fails on ({i},{j},{k},{l}) with basis ({a},{b},{c})"
            ),
            Violation::LeftUnit { i, j, a } => write!(f, "left unit fails on Hom({i},{j}) basis {a}"),
            Violation::RightUnit { i, j, a } => {
                write!(f, "right unit fails on Hom({i},{j}) basis {a}")
            }
            Violation::EndoComposition { objs: [i, j, k], basis: [a, b] } => write!(
                f,
                "endofunctor does not preserve composition on ({i},{j},{k}) with basis ({a},{b})"
            ),
            Violation::EndoIdentity { i } => write!(f, "endofunctor does not preserve id of {i}"),
            Violation::NotAutomorphism(s) => write!(f, "flagged automorphism but {s}"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn unit(d: usize, a: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); d];
    v[a] = Q::one();
    v
}

/// Exhaustive check of shapes, associativity, units and the endofunctor.
pub fn validate_presentation(c: &Presentation) -> ValidationReport {
    let mut out = Vec::new();
    let k = c.k();
    if c.hom.len() != k || c.hom.iter().any(|r| r.len() != k) {
        out.push(Violation::Shape("hom table is not square".into()));
        return ValidationReport { violations: out };
    }
    if c.ids.len() != k || (0..k).any(|i| c.ids[i].len() != c.hom[i][i]) {
        out.push(Violation::Shape("identity coordinates have the wrong length".into()));
    }
    if c.comp.len() != k {
        out.push(Violation::Shape("composition table has the wrong size".into()));
        return ValidationReport { violations: out };
    }
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                for s in &c.comp[i][j][l] {
                    if s.a >= c.hom[i][j] || s.b >= c.hom[j][l] || s.c >= c.hom[i][l] {
                        out.push(Violation::Shape(format!(
                            "structure constant ({i},{j},{l},{},{},{}) out of range",
                            s.a, s.b, s.c
                        )));
                    }
                }
            }
        }
    }
    if !out.is_empty() {
        return ValidationReport { violations: out };
    }

    for i in 0..k {
        for j in 0..k {
            for a in 0..c.hom[i][j] {
                let e = unit(c.hom[i][j], a);
                if c.compose_basis((i, j, j), &c.ids[j], &e) != e {
                    out.push(Violation::LeftUnit { i, j, a });
                }
                if c.compose_basis((i, i, j), &e, &c.ids[i]) != e {
                    out.push(Violation::RightUnit { i, j, a });
                }
            }
        }
    }

    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                for m in 0..k {
                    for a in 0..c.hom[i][j] {
                        let ea = unit(c.hom[i][j], a);
                        for b in 0..c.hom[j][l] {
                            let eb = unit(c.hom[j][l], b);
                            let ba = c.compose_basis((i, j, l), &eb, &ea);
                            for cc in 0..c.hom[l][m] {
                                let ec = unit(c.hom[l][m], cc);
                                let cb = c.compose_basis((j, l, m), &ec, &eb);
                                let left = c.compose_basis((i, j, m), &cb, &ea);
                                let right = c.compose_basis((i, l, m), &ec, &ba);
                                if left != right {
                                    out.push(Violation::Associativity {
                                        objs: [i, j, l, m],
                                        basis: [a, b, cc],
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    if let Some(e) = &c.endo {
        if e.objects.len() != k || e.objects.iter().any(|&t| t >= k) {
            out.push(Violation::Shape("endofunctor object map has the wrong size".into()));
            return ValidationReport { violations: out };
        }
        let s = &e.objects;
        for i in 0..k {
            for j in 0..k {
                let m = &e.matrices[i][j];
                if m.rows() != c.hom[s[i]][s[j]] || m.cols() != c.hom[i][j] {
                    out.push(Violation::Shape(format!("endofunctor matrix ({i},{j}) has the wrong shape")));
                }
            }
        }
        if !out.is_empty() {
            return ValidationReport { violations: out };
        }
        for i in 0..k {
            if e.matrices[i][i].mul_vec(&c.ids[i]) != c.ids[s[i]] {
                out.push(Violation::EndoIdentity { i });
            }
        }
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    for a in 0..c.hom[i][j] {
                        let ea = unit(c.hom[i][j], a);
                        for b in 0..c.hom[j][l] {
                            let eb = unit(c.hom[j][l], b);
                            let lhs = e.matrices[i][l].mul_vec(&c.compose_basis((i, j, l), &eb, &ea));
                            let rhs = c.compose_basis(
                                (s[i], s[j], s[l]),
                                &e.matrices[j][l].mul_vec(&eb),
                                &e.matrices[i][j].mul_vec(&ea),
                            );
                            if lhs != rhs {
                                out.push(Violation::EndoComposition { objs: [i, j, l], basis: [a, b] });
                            }
                        }
                    }
                }
            }
        }
        if e.automorphism {
            let mut seen = vec![false; k];
            for &t in s {
                seen[t] = true;
            }
            if seen.iter().any(|x| !x) {
                out.push(Violation::NotAutomorphism("object map is not a bijection".into()));
            }
            for i in 0..k {
                for j in 0..k {
                    let m = &e.matrices[i][j];
                    if m.rows() != m.cols() || m.inverse().is_none() {
                        out.push(Violation::NotAutomorphism(format!("matrix ({i},{j}) is not invertible")));
                    }
                }
            }
        }
    }
    ValidationReport { violations: out }
}
