//! Resource guards. Exceeding one is a hard error, never a fallback.

/// Caps on the exhaustive engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum `|V(H)|^|V(G)|` for the brute-force counter.
    pub brute_force_states: u64,
    /// Maximum number of edge subsets for subset-sum engines.
    pub edge_subsets: u64,
    /// Maximum number of live entries in a dynamic-programming table.
    pub dp_states: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            brute_force_states: 1_000_000_000,
            edge_subsets: 1 << 26,
            dp_states: 1 << 24,
        }
    }
}

impl Limits {
    /// Every guard set to the same cap.
    pub fn uniform(cap: u64) -> Self {
        Limits {
            brute_force_states: cap,
            edge_subsets: cap,
            dp_states: cap,
        }
    }

    pub(crate) fn check_subsets(&self, edges: usize) -> crate::Result<()> {
        let needed = 1u128 << edges.min(127);
        if needed > self.edge_subsets as u128 {
            return Err(crate::Error::guard("edge-subsets", needed, self.edge_subsets));
        }
        Ok(())
    }
}
