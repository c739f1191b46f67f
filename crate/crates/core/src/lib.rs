//! Digital topology on `Z^n`: `k(t, n)` adjacencies, digital images and
//! simple closed curves, product adjacencies (normal, C-compatible, `AP_u`,
//! `G_{k*}`, `C_{k*}`), digital continuity and digitally topological groups.
//!
//! Every decision is exact and reports a concrete witness when it fails.

pub mod continuity;
pub mod corpus;
pub mod error;
pub mod group;
pub mod image;
pub mod lattice;
pub mod oracle;
pub mod product;

pub use continuity::{ContinuityReport, DigitalMap, MapWitness};
pub use corpus::{run_corpus, Corpus, CorpusSummary};
pub use error::{Error, Result};
pub use group::{cyclic_group, verify_group, GroupTable, GroupVerdict, Structure};
pub use image::{msc18, DigitalImage, SimpleClosedCurve};
pub use lattice::{k_value, lattice_adjacent, pt, LatticeAdjacency, Point};
pub use product::{
    adjacency_existence, c_star, g_star, product, ExistenceReport, PairRelation, ProductKind,
    ProductSpace,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/images.md")]
    mod images {}
    #[doc = include_str!("../../../book/src/products.md")]
    mod products {}
    #[doc = include_str!("../../../book/src/continuity.md")]
    mod continuity {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/corpus.md")]
    mod corpus {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
