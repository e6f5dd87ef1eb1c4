pub mod arrangement;
pub mod athanasiadis;
pub mod charqp;
mod error;
pub mod exactla;
mod limits;
pub mod numtheory;
pub mod oracle;
pub mod poly;
pub mod poset;

pub use arrangement::{ArrangementSpec, PeriodData, SubsetProfile};
pub use athanasiadis::{BmaTableRow, ClosedForms, ShiftPolynomial};
pub use charqp::QuasiPolynomial;
pub use error::{Error, Result};
pub use exactla::{IntegerMatrix, ModularDivisors, SmithDecomposition};
pub use limits::Limits;
pub use oracle::PointSet;
pub use poly::{IntPoly, RatPoly};
pub use poset::IntersectionPoset;
