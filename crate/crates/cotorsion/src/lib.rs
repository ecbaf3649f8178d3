//! Exact verification of cotorsion pairs in extension categories of module
//! categories over finite-dimensional algebras.
//!
//! Everything here computes over a prime field `F_p`, with dense matrices and
//! brute-force enumeration, so every reported fact is an exact statement about
//! finitely many small objects — there is no floating point and no sampling
//! noise anywhere in the pipeline.
//!
//! The layers, bottom to top:
//!
//! * [`linalg`] — dense matrices over `F_p`: row reduction, kernels, solving,
//!   Kronecker products, quotient spaces.
//! * [`algebra`] — finite-dimensional associative algebras given by structure
//!   constants, path algebras of bound quivers, opposites and products.
//! * [`module`] — finite-dimensional left modules: hom spaces, kernels and
//!   cokernels, free covers, projective resolutions, Ext and Tor, brute-force
//!   enumeration of all modules up to a dimension bound.
//! * [`functor`] — bimodules and the tensor / hom functor pair they induce,
//!   with the unit and counit of the adjunction and the multiplication data
//!   that turns a bimodule into a monad.
//! * [`extcat`] — the extension category built from a module category and an
//!   endofunctor: objects are modules with a structure map, together with the
//!   six functors relating the extension category to its base, resolutions,
//!   and Ext groups computed natively inside the extension category.
//! * [`cat`] — a small abelian-category interface implemented by both the
//!   module category and the extension category, plus generic constructions
//!   (pushouts, pullbacks, gluing of approximation sequences) written once
//!   against that interface.
//! * [`pairs`] — object families, cotorsion-pair and Hovey-triple checking
//!   over enumerated universes, special approximations, transport of pairs
//!   and triples from the base category to the extension category, and
//!   Gorenstein-style dimension reports.
//! * [`rings`] — triangular matrix rings, trivial extensions and Morita
//!   context rings, with the dictionary between modules over those rings and
//!   objects of the extension category.
//! * [`presets`] — the bundled algebras, bimodules and setups used by the
//!   stock configurations and the test suite.

pub mod algebra;
pub mod cat;
pub mod error;
pub mod extcat;
pub mod functor;
pub mod linalg;
pub mod module;
pub mod pairs;
pub mod presets;
pub mod rings;

pub use error::{Error, Result};

/// Engine version stamped into reports.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
