//! Finite additive categories, their quotients by subcategory ideals, and
//! right (n+2)-angulated structures with executable axiom checks.

pub mod category;
pub mod validate;

pub use category::{DirectSum, EndoAction, Layout, Mor, Obj, Presentation, Structure};
pub use qlin::{q, Matrix, Q};
pub use validate::{validate_presentation, ValidationReport, Violation};
pub mod oracle;
pub mod angle;
pub mod assemble;
pub mod axioms;
pub mod builtin;
pub mod document;
pub mod exact;
pub mod quotient;
pub mod sequence;
pub mod suite;
pub mod work;
