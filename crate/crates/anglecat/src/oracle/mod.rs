//! Independent generators for the builtin presentations.

pub mod mesh;
pub mod modules;
