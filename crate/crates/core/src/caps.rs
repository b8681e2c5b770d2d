use serde::{Deserialize, Serialize};

use crate::error::{GroupError, Result};

/// Resource caps shared by every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest permutation degree that may be constructed.
    pub degree: usize,
    /// Largest group order that may be enumerated element by element.
    pub order: u64,
    /// Largest group order for normal-lattice construction.
    pub lattice: u64,
    /// Largest group order for strong oblique cores.
    pub ob_star: u64,
    /// Largest group order for brute-force automorphism search.
    pub aut: u64,
    /// Largest Sylow order for subgroup enumeration in fusion analysis.
    pub subgroups: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            degree: 4096,
            order: 1_000_000,
            lattice: 100_000,
            ob_star: 2000,
            aut: 512,
            subgroups: 512,
        }
    }
}

impl Caps {
    pub fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.degree {
            return Err(GroupError::cap("degree", self.degree as u64, degree));
        }
        Ok(())
    }
}
