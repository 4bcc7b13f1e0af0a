//! Versioned JSON documents for presentations.
//!
//! Objects are referred to by their position in `indecomposables`; scalars
//! are strings (`"1"`, `"-1/2"`). Only nonzero structure constants are listed.

use std::fmt;

use qlin::{Matrix, Q};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::category::{EndoAction, Mor, Obj, Presentation};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct Rational(pub Q);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Rational(Q::int(n))),
            Raw::Str(s) => s.parse().map(Rational).map_err(D::Error::custom),
        }
    }
}

/// `basis_g ∘ basis_f` has coefficient `value` on `basis_gf`, where
/// `f ∈ Hom(src, mid)` and `g ∈ Hom(mid, dst)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompEntry {
    pub src: usize,
    pub mid: usize,
    pub dst: usize,
    pub f: usize,
    pub g: usize,
    pub gf: usize,
    pub value: Rational,
}

/// Rows of the matrix sending Hom(src,dst) to Hom(σ src, σ dst).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndoEntry {
    pub src: usize,
    pub dst: usize,
    pub rows: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndoDoc {
    pub objects: Vec<usize>,
    pub automorphism: bool,
    pub actions: Vec<EndoEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorDoc {
    pub src: Vec<usize>,
    pub dst: Vec<usize>,
    pub coords: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub anglecat: u32,
    pub field: String,
    pub indecomposables: Vec<String>,
    pub hom: Vec<Vec<usize>>,
    pub compositions: Vec<CompEntry>,
    pub identities: Vec<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endofunctor: Option<EndoDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subcategory: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<MorDoc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DocError {
    #[error("line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("unsupported format version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("unsupported field {0:?} (only \"Q\")")]
    Field(String),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(s: impl Into<String>) -> DocError {
    DocError::Invalid(s.into())
}

fn qs(v: &[Q]) -> Vec<Rational> {
    v.iter().cloned().map(Rational).collect()
}

fn unq(v: &[Rational]) -> Vec<Q> {
    v.iter().map(|r| r.0.clone()).collect()
}

pub fn parse_document(text: &str) -> Result<Document, DocError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| DocError::Syntax {
        line: e.line(),
        column: e.column(),
        msg: strip_position(&e),
    })?;
    if doc.anglecat != FORMAT_VERSION {
        return Err(DocError::Version(doc.anglecat));
    }
    if doc.field != "Q" {
        return Err(DocError::Field(doc.field));
    }
    Ok(doc)
}

fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}

pub fn emit_document(doc: &Document) -> String {
    let v = serde_json::to_value(doc).expect("documents serialize");
    let mut out = String::new();
    emit_value(&v, 0, &mut out);
    out.push('\n');
    out
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize")
}

// Objects expand one key per line; arrays of scalars or objects stay on
// one line per element.
fn emit_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth + 1);
    match v {
        Value::Object(m) if !m.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&compact(&Value::String(k.clone())));
                out.push_str(": ");
                emit_value(x, depth + 1, out);
                if i + 1 < m.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&"  ".repeat(depth));
            out.push('}');
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_array() || x.is_object()) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad);
                if x.is_array() {
                    emit_value(x, depth + 1, out);
                } else {
                    out.push_str(&compact(x));
                }
                if i + 1 < xs.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&"  ".repeat(depth));
            out.push(']');
        }
        _ => out.push_str(&compact(v)),
    }
}

/// The optional parts of a document, resolved against its presentation.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub pres: Presentation,
    pub subcategory: Option<Vec<usize>>,
    pub generators: Vec<Vec<Mor>>,
    pub n: Option<usize>,
}

impl Document {
    pub fn from_parts(
        pres: &Presentation,
        subcategory: Option<Vec<usize>>,
        generators: &[Vec<Mor>],
        n: Option<usize>,
    ) -> Document {
        let k = pres.k();
        let mut compositions = Vec::new();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let mut list = pres.comp[i][j][l].clone();
                    list.sort_by_key(|s| (s.a, s.b, s.c));
                    for s in list {
                        compositions.push(CompEntry {
                            src: i,
                            mid: j,
                            dst: l,
                            f: s.a,
                            g: s.b,
                            gf: s.c,
                            value: Rational(s.value),
                        });
                    }
                }
            }
        }
        let endofunctor = pres.endo.as_ref().map(|e| {
            let mut actions = Vec::new();
            for i in 0..k {
                for j in 0..k {
                    let m = &e.matrices[i][j];
                    if m.rows() * m.cols() > 0 {
                        actions.push(EndoEntry {
                            src: i,
                            dst: j,
                            rows: (0..m.rows()).map(|r| qs(m.row(r))).collect(),
                        });
                    }
                }
            }
            EndoDoc { objects: e.objects.clone(), automorphism: e.automorphism, actions }
        });
        let mor = |m: &Mor| MorDoc { src: m.src.0.clone(), dst: m.dst.0.clone(), coords: qs(&m.coords) };
        Document {
            anglecat: FORMAT_VERSION,
            field: "Q".into(),
            indecomposables: pres.names.clone(),
            hom: pres.hom.clone(),
            compositions,
            identities: pres.ids.iter().map(|v| qs(v)).collect(),
            endofunctor,
            subcategory,
            generators: if generators.is_empty() {
                None
            } else {
                Some(generators.iter().map(|g| g.iter().map(mor).collect()).collect())
            },
            n,
        }
    }

    /// Builds the presentation after checking every index and size.
    /// Category axioms are left to `validate_presentation`.
    pub fn presentation(&self) -> Result<Presentation, DocError> {
        let k = self.indecomposables.len();
        if self.hom.len() != k || self.hom.iter().any(|r| r.len() != k) {
            return Err(invalid(format!("hom must be {k}x{k}")));
        }
        if self.identities.len() != k {
            return Err(invalid(format!("{} identities for {k} indecomposables", self.identities.len())));
        }
        let mut p = Presentation::new(self.indecomposables.clone(), self.hom.clone());
        for (i, id) in self.identities.iter().enumerate() {
            if id.len() != self.hom[i][i] {
                return Err(invalid(format!("identity {i} has {} coordinates, want {}", id.len(), self.hom[i][i])));
            }
            p.ids[i] = unq(id);
        }
        for (t, e) in self.compositions.iter().enumerate() {
            let (i, j, l) = (e.src, e.mid, e.dst);
            if i >= k || j >= k || l >= k {
                return Err(invalid(format!("composition {t}: object out of range")));
            }
            if e.f >= self.hom[i][j] || e.g >= self.hom[j][l] || e.gf >= self.hom[i][l] {
                return Err(invalid(format!("composition {t}: basis index out of range")));
            }
            let dup = p.comp[i][j][l].iter().any(|s| (s.a, s.b, s.c) == (e.f, e.g, e.gf));
            if dup {
                return Err(invalid(format!("composition {t}: repeated entry")));
            }
            p.add_structure((i, j, l), e.f, e.g, e.gf, e.value.0.clone());
        }
        if let Some(e) = &self.endofunctor {
            if e.objects.len() != k || e.objects.iter().any(|&o| o >= k) {
                return Err(invalid("endofunctor objects must map each indecomposable into range"));
            }
            let mut matrices: Vec<Vec<Matrix>> = (0..k)
                .map(|i| {
                    (0..k).map(|j| Matrix::zeros(self.hom[e.objects[i]][e.objects[j]], self.hom[i][j])).collect()
                })
                .collect();
            for a in &e.actions {
                if a.src >= k || a.dst >= k {
                    return Err(invalid("endofunctor action: object out of range"));
                }
                let (r, c) = (self.hom[e.objects[a.src]][e.objects[a.dst]], self.hom[a.src][a.dst]);
                if a.rows.len() != r || a.rows.iter().any(|x| x.len() != c) {
                    return Err(invalid(format!("endofunctor action ({}, {}) must be {r}x{c}", a.src, a.dst)));
                }
                matrices[a.src][a.dst] = Matrix::from_rows(a.rows.iter().map(|x| unq(x)).collect(), c);
            }
            p.endo = Some(EndoAction { objects: e.objects.clone(), matrices, automorphism: e.automorphism });
        }
        Ok(p)
    }

    pub fn load(&self) -> Result<Loaded, DocError> {
        let pres = self.presentation()?;
        let k = pres.k();
        if let Some(x) = &self.subcategory {
            if x.iter().any(|&i| i >= k) {
                return Err(invalid("subcategory index out of range"));
            }
        }
        let obj = |v: &[usize]| -> Result<Obj, DocError> {
            if v.len() != k {
                return Err(invalid(format!("object {v:?} needs {k} multiplicities")));
            }
            Ok(Obj(v.to_vec()))
        };
        let mut generators = Vec::new();
        for (g, maps) in self.generators.iter().flatten().enumerate() {
            let mut out = Vec::new();
            for (t, m) in maps.iter().enumerate() {
                let (a, b) = (obj(&m.src)?, obj(&m.dst)?);
                if m.coords.len() != pres.hom_dim(&a, &b) {
                    return Err(invalid(format!("generator {g} map {t}: wrong coordinate count")));
                }
                out.push(Mor { src: a, dst: b, coords: unq(&m.coords) });
            }
            generators.push(out);
        }
        if self.n == Some(0) {
            return Err(invalid("n must be positive"));
        }
        Ok(Loaded { pres, subcategory: self.subcategory.clone(), generators, n: self.n })
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&emit_document(self))
    }
}
