//! Named example categories and loading a document into a checkable context.

use std::sync::Arc;

use crate::angle::{Explicit, QuotientTheta, Theta, ThetaError};
use crate::category::{Obj, Presentation};
use crate::document::{emit_document, parse_document, DocError, Document};
use crate::oracle::{mesh::ClusterOracle, modules};
use crate::quotient::{QuotientContext, QuotientError, QuotientMode, SubcategorySpec};
use crate::validate::validate_presentation;

pub const NAMES: [&str; 2] = ["a3-cluster-2ct", "stable-kx2"];

const A3: &str = include_str!("../data/a3-cluster-2ct.json");
const KX2: &str = include_str!("../data/stable-kx2.json");

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("unknown builtin {0:?} (known: a3-cluster-2ct, stable-kx2)")]
    Unknown(String),
    #[error("cannot read {0}: {1}")]
    Io(String, String),
    #[error(transparent)]
    Doc(#[from] DocError),
    #[error("presentation is invalid: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("document has neither a subcategory nor angle generators")]
    NothingToCheck,
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

/// A document together with the angle class it defines.
pub struct Workbench {
    pub name: String,
    pub doc: Document,
    pub pres: Presentation,
    pub n: usize,
    pub phi: Option<Arc<Explicit>>,
    pub ctx: Option<Arc<QuotientContext>>,
    pub theta: Arc<dyn Theta>,
}

/// The document a builtin is generated from, recomputed from the oracles.
pub fn oracle_document(name: &str) -> Result<Document, LoadError> {
    match name {
        "a3-cluster-2ct" => {
            let p = ClusterOracle::a3().presentation();
            let o = |i| Obj::indec(3, i);
            let m = |a: usize, b: usize| p.from_coords(&o(a), &o(b), vec![crate::q(1)]);
            let gen = vec![m(1, 2), m(2, 0), m(0, 1), m(1, 2)];
            Ok(Document::from_parts(&p, Some(vec![0, 2]), &[gen], Some(2)))
        }
        "stable-kx2" => {
            let p = modules::presentation(&modules::kx2_modules());
            Ok(Document::from_parts(&p, Some(vec![1]), &[], Some(1)))
        }
        _ => Err(LoadError::Unknown(name.into())),
    }
}

/// Frozen text of a builtin.
pub fn builtin_text(name: &str) -> Result<&'static str, LoadError> {
    match name {
        "a3-cluster-2ct" => Ok(A3),
        "stable-kx2" => Ok(KX2),
        _ => Err(LoadError::Unknown(name.into())),
    }
}

pub fn builtin(name: &str, seed: u64) -> Result<Workbench, LoadError> {
    let doc = parse_document(builtin_text(name)?)?;
    workbench(name, doc, seed, None)
}

/// `builtin:NAME` or a path.
pub fn open(spec: &str, seed: u64, n: Option<usize>) -> Result<Workbench, LoadError> {
    let (name, doc) = match spec.strip_prefix("builtin:") {
        Some(b) => (b.to_string(), parse_document(builtin_text(b)?)?),
        None => {
            let text = std::fs::read_to_string(spec).map_err(|e| LoadError::Io(spec.into(), e.to_string()))?;
            (spec.to_string(), parse_document(&text)?)
        }
    };
    workbench(&name, doc, seed, n)
}

/// Generators make the class angulated; a subcategory alone gives the
/// additive construction; generators alone check the ambient class.
pub fn workbench(name: &str, doc: Document, seed: u64, n: Option<usize>) -> Result<Workbench, LoadError> {
    let loaded = doc.load()?;
    let report = validate_presentation(&loaded.pres);
    if !report.passed() {
        return Err(LoadError::Invalid(report.violations.iter().map(|v| v.to_string()).collect()));
    }
    let n = n.or(loaded.n).unwrap_or(1);
    let pres = loaded.pres;
    let phi = if loaded.generators.is_empty() {
        None
    } else {
        Some(Arc::new(Explicit::new(pres.clone(), n, loaded.generators, seed)?))
    };
    let (ctx, theta): (Option<Arc<QuotientContext>>, Arc<dyn Theta>) = match (&loaded.subcategory, &phi) {
        (Some(idx), _) => {
            let mode = if phi.is_some() { QuotientMode::Angulated } else { QuotientMode::Additive };
            let spec = SubcategorySpec::from_indices(pres.k(), idx);
            let ctx = Arc::new(QuotientContext::new(pres.clone(), spec, mode, n, phi.clone(), seed)?);
            (Some(ctx.clone()), Arc::new(QuotientTheta::new(ctx)))
        }
        (None, Some(phi)) => (None, phi.clone()),
        (None, None) => return Err(LoadError::NothingToCheck),
    };
    Ok(Workbench { name: name.into(), doc, pres, n, phi, ctx, theta })
}

/// Regenerated text of a builtin, for refreshing the frozen copy.
pub fn regenerate(name: &str) -> Result<String, LoadError> {
    Ok(emit_document(&oracle_document(name)?))
}
