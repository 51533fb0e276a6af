//! Dickson and Mui invariants of `GL_n(F_p)` and `SL_n(F_p)`.

mod dickson;
mod groups;
mod hilbert;
mod membership;

pub use dickson::{
    dickson_classes, dickson_polynomial, moore_class, DicksonSet, XPoly, MAX_GROUP_ORDER,
};
pub use groups::{
    group_generators, is_invariant, is_invariant_poly, orbit, orbit_size, GroupKind, GroupSpec,
};
pub use hilbert::{
    free_module_data, invariant_dimension, monomials_of_degree, normalize_leading,
    predicted_dimension, InvariantRing, InvariantSpace, MAX_COLUMNS,
};
pub use membership::{
    membership_dickson, Decomposition, DecompositionTerm, DicksonRing, Membership,
};

pub(crate) use dickson::{check_order, nonzero_vectors};
