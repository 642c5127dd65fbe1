//! Named defaults and pinned test tolerances.
//!
//! Every computation in this crate is exact, so the only tunables are
//! budgets: how far to sample before declaring failure. All of them are
//! pinned here so tests and the CLI agree on the same values.

/// Largest thickening exponent `k` tried when fitting the eventual
/// polynomial of `k ↦ dim M/q^k M`. Desk-scale modules stabilize well
/// below this.
pub const DEFAULT_MAX_K: usize = 25;

/// Number of extra consecutive sample points that must confirm a fitted
/// polynomial beyond the window that determined it.
pub const CONFIRM_POINTS: usize = 3;

/// How many candidate points the deterministic rational spiral yields
/// before generic-sample search gives up.
pub const DEFAULT_SAMPLE_BUDGET: usize = 64;

/// Numeric tolerance for every comparison in the acceptance suite.
/// All identities are exact; nothing is compared approximately.
pub const EXACT_TOLERANCE: u32 = 0;
