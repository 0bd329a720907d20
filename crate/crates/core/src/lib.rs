//! Pattern-based repair of memory leaks in React and Angular components:
//! unreleased subscriptions, unremoved event listeners, uncleared timers and
//! uncancelled animation frames.

pub mod detector;
pub mod engine;
pub mod harness;
pub mod patch;
pub mod scanner;
pub mod source_model;
pub mod syntax;
