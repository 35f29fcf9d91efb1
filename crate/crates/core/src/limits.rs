//! Enumeration caps shared by every routine that materializes a group,
//! a tableau set or a truncated series.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_GROUP: u64 = 50_000;
pub const DEFAULT_MAX_TABLEAUX: u64 = 100_000;

/// Environment variable overriding both caps at once.
pub const ENV_VAR: &str = "HECKE_RIBBON_MAX_ENUM";

static MAX_GROUP: AtomicU64 = AtomicU64::new(DEFAULT_MAX_GROUP);
static MAX_TABLEAUX: AtomicU64 = AtomicU64::new(DEFAULT_MAX_TABLEAUX);

pub fn max_group() -> u64 {
    MAX_GROUP.load(Ordering::Relaxed)
}

pub fn max_tableaux() -> u64 {
    MAX_TABLEAUX.load(Ordering::Relaxed)
}

pub fn set_max_group(limit: u64) {
    MAX_GROUP.store(limit, Ordering::Relaxed);
}

pub fn set_max_tableaux(limit: u64) {
    MAX_TABLEAUX.store(limit, Ordering::Relaxed);
}

/// Applies [`ENV_VAR`] if it is set to an integer. Returns the value applied.
pub fn apply_env() -> Option<u64> {
    let value = std::env::var(ENV_VAR).ok()?.trim().parse::<u64>().ok()?;
    set_max_group(value);
    set_max_tableaux(value);
    Some(value)
}

pub(crate) fn guard(what: &str, count: u128, limit: u64) -> Result<()> {
    if count > limit as u128 {
        return Err(Error::ResourceLimit {
            what: what.to_string(),
            count,
            limit: limit as u128,
        });
    }
    Ok(())
}

pub(crate) fn guard_group(what: &str, count: u128) -> Result<()> {
    guard(what, count, max_group())
}

pub(crate) fn guard_tableaux(what: &str, count: u128) -> Result<()> {
    guard(what, count, max_tableaux())
}
