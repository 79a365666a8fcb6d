//! Flow generating functions on rooted trees, the Pre-Lie and Dendriform
//! series groups, and exact verification of the identities relating them.

pub mod exactcoeff;
pub mod trees;
pub mod flows;
pub mod prelie;
pub mod dend;
pub mod symfun;
pub mod verify;
