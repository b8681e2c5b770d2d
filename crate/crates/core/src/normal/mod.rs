//! Normal-subgroup lattice and the invariants built on it.

mod aut;
mod cores;
mod frattini;
mod lattice;
mod oblique;
mod orbits;
mod report;
mod tate;

pub use aut::{aut_group_small, c_invariant, delta_matrices, max_constituent_dim, Automorphisms};
pub use cores::{components, is_pi_number, is_quasisimple, FittingData};
pub use frattini::{burnside_rank, frattini_pgroup, group_prime, phi_lhd_height};
pub use lattice::{Member, NormalLattice};
pub use oblique::strong_oblique_core_set;
pub use orbits::{component_orbit_check, digit_sum, ComponentOrbits};
pub use report::{invariants_report, InvariantReport, Value};
pub use tate::{derived_times_powers, p_residual, tate_check, tate_check_seeded, TateReport};
