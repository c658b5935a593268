//! Size guards for the exhaustive constructions.
//!
//! Defaults can be raised per process through environment variables
//! `CUBRIG_MAX_BOX`, `CUBRIG_MAX_POSET`, `CUBRIG_MAX_CUBE` and `CUBRIG_MAX_SIMPLICES`.

use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Bound on `n + m` when enumerating box maps `[1]^n -> [1]^m`.
    pub max_box: usize,
    /// Bound on `n` for Bruhat and ordered-partition posets.
    pub max_poset: usize,
    /// Bound on ambient cube dimension for complexes, paths and mapping spaces.
    pub max_cube: usize,
    /// Bound on the number of nondegenerate simplices a nerve may produce.
    pub max_simplices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_box: 8,
            max_poset: 6,
            max_cube: 6,
            max_simplices: 2_000_000,
        }
    }
}

impl Limits {
    pub fn from_env() -> Self {
        let d = Limits::default();
        let read = |key: &str, dflt: usize| {
            std::env::var(key)
                .ok()
                .and_then(|v| v.trim().parse().ok())
                .unwrap_or(dflt)
        };
        Limits {
            max_box: read("CUBRIG_MAX_BOX", d.max_box),
            max_poset: read("CUBRIG_MAX_POSET", d.max_poset),
            max_cube: read("CUBRIG_MAX_CUBE", d.max_cube),
            max_simplices: read("CUBRIG_MAX_SIMPLICES", d.max_simplices),
        }
    }

    /// Process-wide limits, read from the environment on first use.
    pub fn global() -> &'static Limits {
        static L: OnceLock<Limits> = OnceLock::new();
        L.get_or_init(Limits::from_env)
    }
}
