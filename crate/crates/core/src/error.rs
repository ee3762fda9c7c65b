use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("degenerate form: the Gram matrix is singular")]
    DegenerateForm,
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("discriminant group exceeds the enumeration cap of {cap} cosets")]
    TooManyCosets { cap: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvolutionError {
    #[error("index {index} out of range {min}..={max}")]
    IndexOutOfRange { index: u8, min: u8, max: u8 },
    #[error("fixed lattice is not 2-elementary: invariant factor {factor}")]
    NotTwoElementary { factor: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("linear part is not a signed integer rotation")]
    InvalidLinearPart,
    #[error("translation denominators must divide {0}")]
    InvalidTranslation(i64),
    #[error("K3 action is not a function of the torus map")]
    InconsistentLabels,
    #[error("group closure exceeded {cap} elements")]
    NotFinite { cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum G2Error {
    #[error("invalid invariant triple ({r},{a},{delta:?}): {reason}")]
    InvalidTriple { r: u32, a: u32, delta: Option<u8>, reason: &'static str },
    #[error("fixed locus is empty")]
    EmptyLocus,
    #[error("inadmissible input: {0}")]
    Inadmissible(String),
    #[error("singular locus is not of A1 type: {0}")]
    NonA1Singularity(String),
    #[error(transparent)]
    Torus(#[from] TorusError),
}
