//! Exact Fine interiors, canonical closures, toric fans and the
//! singularities of nondegenerate surfaces in toric 3-folds.

pub mod atlas;
pub mod error;
pub mod fan;
pub mod fine;
pub mod hypersurface;
pub mod io;
pub mod lattice;
pub mod polytope;
pub mod sample;

pub use error::{Error, Result};

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/lattice.md")]
    struct Lattice;
    #[doc = include_str!("../../../book/src/polytopes.md")]
    struct Polytopes;
    #[doc = include_str!("../../../book/src/fine-interior.md")]
    struct FineInterior;
    #[doc = include_str!("../../../book/src/fans.md")]
    struct Fans;
    #[doc = include_str!("../../../book/src/singularities.md")]
    struct Singularities;
    #[doc = include_str!("../../../book/src/atlas.md")]
    struct Atlas;
}
