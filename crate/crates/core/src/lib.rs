//! Exact computations in the mod-p cohomology of elementary abelian p-groups.
//!
//! The crate works in `H*(BA_n; F_p) = F_p[t_1..t_n] (x) Lambda(dt_1..dt_n)` for
//! an odd prime `p`, with the Milnor operations `Q_i`, the reduced powers
//! `P^j`, the action of `GL_n(F_p)` by linear substitution, Dickson and Mui
//! invariants, and Chern classes of representations of `A_n` and of circle
//! restrictions of torus representations.
//!
//! ```
//! use modinv::{algebra::Config, steenrod::OpWord, invariants::moore_class};
//!
//! let cfg = Config::new(3, 2).unwrap();
//! let word: OpWord = "Q0,Q1".parse().unwrap();
//! let e2 = word.apply(&modinv::algebra::ExtClass::top_exterior(cfg));
//! assert_eq!(modinv::algebra::render_class(&e2), "t1^3*t2 - t1*t2^3");
//! assert_eq!(e2.polynomial_part(), -&moore_class(cfg));
//! ```

pub mod algebra;
pub mod chern;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod steenrod;
pub mod torus;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/steenrod.md")]
    mod steenrod {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/chern.md")]
    mod chern {}
    #[doc = include_str!("../../../book/src/torus.md")]
    mod torus {}
}
