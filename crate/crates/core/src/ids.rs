//! Opaque identifiers.
//!
//! Every id is a dense index handed out by the ledger in registration
//! order, so the world state can keep its tables as plain vectors.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Simulation time. One tick is one simulated hour.
pub type Tick = u64;

macro_rules! id_type {
    ($(#[$meta:meta])* $name:ident, $inner:ty, $prefix:literal) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub $inner);

        impl $name {
            pub fn index(self) -> usize {
                self.0 as usize
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!($prefix, "{}"), self.0)
            }
        }
    };
}

id_type!(
    /// A bug bounty program.
    ProgramId, u32, "P"
);
id_type!(
    /// A hacker, who may act as reporter and verifier.
    HackerId, u32, "H"
);
id_type!(
    /// A submitted report (including gate-rejected ones).
    ReportId, u64, "R"
);
id_type!(AssignmentId, u64, "A");
id_type!(
    /// Simulation ground truth for a vulnerability. Never read by engine decisions.
    VulnId, u32, "V"
);
id_type!(TeamId, u32, "T");
