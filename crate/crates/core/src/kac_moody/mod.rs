//! Symmetrizable Kac-Moody combinatorics: Cartan data, roots, weight
//! multiplicities and tensor products.

mod cartan;
mod freudenthal;
pub mod registry;
mod roots;
mod tensor;
mod weight;

pub use cartan::{langlands_dual, validate_and_symmetrize, CartanKind, CartanMatrix};
pub use freudenthal::{weight_multiplicity, WeightSystem};
pub use registry::named;
pub use roots::{root_multiplicities, RootTable};
pub use tensor::{tensor_decompose, tensor_weight_mult, tensor_weight_pairs};
pub use weight::{dominance_leq, height, level, null_root, reflect, root_difference, Weight};
