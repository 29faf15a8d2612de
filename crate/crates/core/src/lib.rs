pub mod algebra;
pub mod bpoly;
pub mod cf;
pub mod charnum;
pub mod error;
pub mod fgl;
pub mod forms;
pub mod kq;
pub mod msl;
pub mod mu;
pub mod operations;
pub mod poly;
mod ser;
pub mod verify;
pub mod witt;

pub use algebra::{FGAbGroup, IntMatrix, Partition};
pub use bpoly::BPoly;
pub use cf::CfComplex;
pub use error::{Error, Result};
pub use fgl::FglContext;
pub use mu::{MuBasis, MuClass};
pub use operations::CohOperation;
pub use poly::GradedPoly;
pub use witt::{FieldDescriptor, FieldKind, WittRing};
