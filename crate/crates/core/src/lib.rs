//! Exact computation of derivation, antiderivation and biderivation spaces
//! of finite-dimensional algebras given by structure constants, with the
//! four-dimensional nilpotent Leibniz catalog built in.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod inner;
pub mod linalg;
pub mod parse;
pub mod rational;
pub mod report;
pub mod solver;
pub mod table;

pub use algebra::{Algebra, IdentityReport, SeriesReport};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use linalg::{RatMatrix, RrefResult};
pub use rational::Rational;
pub use solver::{GeneralElement, LinearSystem, SolutionSpace, SpaceKind};
