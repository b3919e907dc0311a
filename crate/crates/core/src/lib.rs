//! Domain model, event ledger, policy gates, gamification and the
//! crowd-verified disclosure protocol.

pub mod domain;
pub mod engine;
pub mod event;
pub mod gamify;
pub mod gates;
pub mod ids;
pub mod state;

pub use engine::{Engine, EngineError, ProtocolRules};
pub use event::{Actor, Event, EventKind, EventLog, LedgerError};
pub use state::{replay, WorldState};
