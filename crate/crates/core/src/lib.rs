//! Reverse weak order on μ-involutions under the Richardson–Springer monoid,
//! W-sets of the maximal elements, and the Schubert-polynomial restriction
//! classes of the closed B-orbits in the variety of complete quadrics.
//!
//! ```
//! use quadrics::{build_poset, d_set_mu, Composition, MuInvolution};
//!
//! let mu: Composition = "3,1".parse().unwrap();
//! let poset = build_poset(&mu).unwrap();
//! assert_eq!(poset.len(), 16);
//! let top = MuInvolution::top(&mu);
//! assert_eq!(poset.w_set(&top).unwrap().elements, d_set_mu(&mu));
//! ```

pub mod cli;
pub mod error;
pub mod monoid;
pub mod muinv;
pub mod perm;
pub mod poset;
pub mod report;
pub mod schubert;

pub use error::{Error, Result};
pub use monoid::{act_permutation, act_simple, act_word, verify_relations, MonoidWord, StepKind};
pub use muinv::{count_mu_involutions, string_to_relative, Composition, MuInvolution};
pub use perm::{Permutation, ReducedWord};
pub use poset::{
    build_poset, classify_edge, d_set, d_set_mu, verify_all, verify_main_theorems, w_set,
    Multiplicity, WSet, WeakOrderPoset,
};
pub use report::{Check, Report};
pub use schubert::{
    check_conjecture, compare_exponent_conventions, conjecture_product, restriction_class,
    schubert, ExponentMode, Polynomial, SchubertClass,
};
