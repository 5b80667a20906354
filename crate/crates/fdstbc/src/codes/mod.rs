//! Concrete codes: construction, encoding and generator matrices.

pub mod bases;
pub mod constellation;
pub mod descriptor;
pub mod export;
pub mod perfect;
pub mod sr;

pub use constellation::{Constellation, ConstellationKind};
pub use descriptor::{
    build_code, CodeDescriptor, CodeId, DecodingGroups, DeltaMinFormula, DeltaRelation, Structure,
};
pub use export::{descriptor_json, float17};
pub use perfect::perfect_codeword;
pub use sr::sr_decompose_check;
