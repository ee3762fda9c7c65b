//! Exact integer linear algebra and lattice invariants.

mod form;
mod gram;
mod matrix;
mod smith;

pub use form::{discriminant_data, signature_of, DiscriminantData, RationalVector, Signature, COSET_ENUMERATION_CAP};
pub use gram::{direct_sum, hyperbolic_plane, k3_gram, minus_e8, rank_one, rescale, GramLattice, E8_EDGES};
pub use matrix::IntegerMatrix;
pub use smith::{integer_kernel_basis, smith_normal_form, SmithDecomposition};
