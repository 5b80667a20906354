//! Exact arithmetic for the code fields, the quaternion-like algebra over them and the
//! nonassociative module used to build the codes.

pub mod bimodule;
pub mod block;
pub mod lfield;
pub mod nonnorm;
pub mod numfield;
pub mod quaternion;

pub use bimodule::{right_inverse, BimoduleElem};
pub use block::{block_inverse, det_exact, det_in_l_check, structured_matrix, ExactMatrix};
pub use lfield::{LElem, LKind};
pub use nonnorm::{nonnorm_check, NonNormReport};
pub use numfield::{FieldId, KElem, NumberFieldCtx, TauRule};
pub use quaternion::AlgElem;
