//! The 240 packings of PG(3,2) and everything that hangs off them.
//!
//! A packing of the projective space PG(3,2) is a partition of its 35 lines
//! into seven spreads, or equivalently a labelling of the Fano plane by seven
//! of the eight symbols 1..8. This crate builds the full set of 240 packings
//! together with the structures that organise them:
//!
//! * the coset space `V = F2^8/U` with its quadratic form and the 30 maximal
//!   totally singular subspaces ([`gf2`]);
//! * the combinatorial model of PG(3,2): heptads, spreads, Kirkman schedules,
//!   and an independent F2^4 geometry oracle ([`pg32`]);
//! * the E8 root system in exact integer arithmetic, the 64-root subsets Ψ
//!   and Ψ′, and their maximal orthogonal 8-subsets ([`e8`]);
//! * translations between the three parametrizations of the packings, plus
//!   signed Fano-plane and Pasch-configuration notations ([`bridge`]);
//! * signed permutation groups of type D acting on the packings by three
//!   independent rules ([`weyl`]);
//! * Lehmer codes, the graded Bruhat order, its Möbius function, and the
//!   strongly-regular-graph checks ([`order`]);
//! * the counter-strip game whose kernel is the residue-free packing
//!   ([`game`]);
//! * a catalogue of named verification checks driven by the CLI ([`checks`]).
//!
//! Everything is desk-scale and exact: no floats, no sampling. Expensive
//! shared tables are built once in [`world::World`] and shared read-only.

pub mod bridge;
pub mod checks;
mod cliques;
pub mod e8;
pub mod game;
pub mod gf2;
pub mod order;
pub mod pg32;
pub mod weyl;
pub mod world;
