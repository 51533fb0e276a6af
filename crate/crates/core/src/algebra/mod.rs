//! The algebra `F_p[t_1..t_n] (x) Lambda(dt_1..dt_n)` and linear substitutions.

mod ext;
mod field;
mod monomial;
mod poly;
mod subst;
pub mod text;

pub use ext::{ExtClass, Subset};
pub use field::{is_prime, Config, Scalar, MAX_PRIME, MAX_RANK};
pub use monomial::Monomial;
pub use poly::Poly;
pub use subst::{LinearSubst, WeightVector};
pub use text::{class_from_json, class_to_json, parse_class, render_class, ClassJson, TermJson};
