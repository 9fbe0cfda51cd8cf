//! Size caps for the exhaustive parts of the engine.
//!
//! Every exhaustive routine takes its limit from a [`Caps`] value rather than
//! a constant. The defaults can be overridden from the environment through
//! `TVCSP_ARITY_CAP` and `TVCSP_SEARCH_CAP`.

use std::env;

/// Limits applied by table construction, the improvement testers and the
/// search backends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest arity of a cost table, and largest variable count of an
    /// expression (free plus bound).
    pub arity: usize,
    /// Largest relation arity the preservation and improvement testers accept.
    /// Joint configurations range over `2k` (or `2k + 1`) points.
    pub joint_arity: usize,
    /// Largest variable count for the complete crisp backend.
    pub crisp_search: usize,
    /// Largest variable count for the brute-force optimiser.
    pub oracle_search: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            arity: 6,
            joint_arity: 4,
            crisp_search: 10,
            oracle_search: 8,
        }
    }
}

impl Caps {
    /// Defaults, with `TVCSP_ARITY_CAP` replacing the table arity cap and
    /// `TVCSP_SEARCH_CAP` replacing both search caps. Unparsable values are
    /// ignored.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(v) = read_var("TVCSP_ARITY_CAP") {
            caps.arity = v;
        }
        if let Some(v) = read_var("TVCSP_SEARCH_CAP") {
            caps.crisp_search = v;
            caps.oracle_search = v;
        }
        caps
    }
}

fn read_var(name: &str) -> Option<usize> {
    env::var(name).ok()?.trim().parse().ok()
}
