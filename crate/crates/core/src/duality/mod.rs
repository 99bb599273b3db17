//! Duality maps between dual descriptions of a mixed-symmetry gauge field.

pub mod encoding;
pub mod maps;
pub mod signatures;

pub use encoding::{build_encoding, EncodingMap};
pub use maps::{
    build_duality_maps, certificates, constant_form, contract, Certificate, DualMap, DualityOptions, DualityReport,
    TestFieldCheck,
};
pub use signatures::dual_signatures;
