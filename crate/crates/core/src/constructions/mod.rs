//! Builders for group algebras, exterior and supergroup algebras, their
//! modifications, bicharacter twists and septuple data.

pub mod bicharacter;
pub mod builders;
pub mod group;
pub mod septuple;
pub mod twist;

pub use bicharacter::{build_bicharacter_twist, build_bicharacter_twist_in, characters, Bicharacter, Characters};
pub use builders::{exterior_algebra, group_algebra, modified_supergroup_algebra, supergroup_algebra};
pub use group::{named_group, AbelianSubgroup, FiniteGroup, GroupRep};
pub use septuple::{septuple_pipeline, validate_septuple, Septuple, SeptupleReport};
pub use twist::{apply_twist, semisimple_triangular, verify_twist};
