//! Subgroup lattices of finite permutation groups.
//!
//! The crate computes conjugacy classes of subgroups and the full subgroup
//! lattice for desk-scale permutation groups. The main entry points:
//!
//! - [`PermGroup`]: groups by generators, backed by a deterministic
//!   stabilizer chain (order, membership, cosets, centralizers, normalizers,
//!   conjugacy classes of elements).
//! - [`subgroups::lattice_cyclic_extension`]: all subgroups up to conjugacy
//!   by cyclic extension over zuppos (prime-power cyclic subgroups) with
//!   bit-list deduplication.
//! - [`solvable::subgroups_solvable`]: the same for solvable groups by
//!   lifting through an elementary-abelian normal series.
//! - [`goursat::goursat_subgroups`]: subgroups of a direct product from the
//!   factors' subgroup lists via subdirect products.
//! - [`latticeops::SubgroupLattice`]: maximality edges, maximal classes,
//!   low-layer and intermediate subgroups.
//! - [`oracle::oracle_all_subgroups`]: independent join-closure enumeration
//!   for verification.

pub mod bitset;
pub mod chain;
pub(crate) mod context;
pub mod error;
pub mod gfp;
pub mod goursat;
pub mod group;
pub mod latticeops;
pub mod oracle;
pub mod perm;
pub mod quotient;
pub mod solvable;
pub mod subgroups;
pub mod zuppos;

pub use chain::{ElementIndex, StabilizerChain, DEFAULT_ELEMENT_CAP};
pub use error::{GroupError, Result};
pub use goursat::DirectProduct;
pub use group::{PermGroup, ELEMENT_CAP_ENV};
pub use latticeops::{LatticeEdge, SubgroupLattice};
pub use perm::Permutation;
pub use quotient::SmallGroup;
pub use solvable::{ElementaryAbelianSeries, LayerModule};
pub use subgroups::{LatticeFilter, SubgroupClass};
pub use zuppos::{Zuppo, ZuppoSet, ZuppoSignature};
