//! Search and construction caps, overridable through the environment.

use std::env;

pub const DEFAULT_GROUP_CAP: usize = 256;
pub const DEFAULT_SUBGROUP_CAP: usize = 256;
pub const DEFAULT_MAX_SLOTS: usize = 6;

/// Upper limit on the number of subgroups tracked by a full enumeration.
pub const SUBGROUP_COUNT_LIMIT: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order that will be constructed (and verified).
    pub group: usize,
    /// Largest group order for which all subgroups are enumerated.
    pub subgroup: usize,
    /// Largest number of generator slots `2h + r` in a vector search.
    pub max_slots: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            group: DEFAULT_GROUP_CAP,
            subgroup: DEFAULT_SUBGROUP_CAP,
            max_slots: DEFAULT_MAX_SLOTS,
        }
    }
}

impl Caps {
    /// Defaults overridden by `AUTBOUND_GROUP_CAP`, `AUTBOUND_SUBGROUP_CAP`
    /// and `AUTBOUND_MAX_SLOTS` when they hold positive integers.
    pub fn from_env() -> Self {
        let read = |key: &str, default: usize| {
            env::var(key)
                .ok()
                .and_then(|v| v.trim().parse::<usize>().ok())
                .filter(|&v| v > 0)
                .unwrap_or(default)
        };
        Caps {
            group: read("AUTBOUND_GROUP_CAP", DEFAULT_GROUP_CAP),
            subgroup: read("AUTBOUND_SUBGROUP_CAP", DEFAULT_SUBGROUP_CAP),
            max_slots: read("AUTBOUND_MAX_SLOTS", DEFAULT_MAX_SLOTS),
        }
    }
}
