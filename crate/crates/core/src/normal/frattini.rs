use super::lattice::NormalLattice;
use crate::caps::Caps;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::series::derived_subgroup;
use crate::sylow::prime_divisors;

impl NormalLattice {
    /// `Φ^⊲(G)`: the intersection of the maximal normal subgroups.
    pub fn frattini_normal(&self) -> usize {
        self.meet_all(self.maximal())
    }
}

/// The prime of a nontrivial p-group, `None` for the trivial group.
pub fn group_prime(s: &PermGroup) -> Result<Option<u64>> {
    let ps = prime_divisors(&s.order());
    match ps.len() {
        0 => Ok(None),
        1 => Ok(Some(ps[0])),
        _ => Err(GroupError::NotPGroup {
            p: ps[0],
            order: s.order().to_string(),
        }),
    }
}

/// `Φ(S) = S'S^p` for a p-group `S`.
pub fn frattini_pgroup(s: &PermGroup) -> Result<PermGroup> {
    let Some(p) = group_prime(s)? else {
        return Ok(s.clone());
    };
    let powers: Vec<_> = s
        .generators()
        .iter()
        .map(|x| x.pow(p))
        .filter(|x| !x.is_identity())
        .collect();
    Ok(derived_subgroup(s).closure(&powers))
}

/// `d(S)`: the rank of `S/Φ(S)`.
pub fn burnside_rank(s: &PermGroup) -> Result<u32> {
    let Some(p) = group_prime(s)? else {
        return Ok(0);
    };
    let phi = frattini_pgroup(s)?;
    let mut index = s.order() / phi.order();
    let mut r = 0;
    let pb = num_bigint::BigUint::from(p);
    while index > num_bigint::BigUint::from(1u32) {
        index /= &pb;
        r += 1;
    }
    Ok(r)
}

/// Number of steps `G > Φ^⊲(G) > Φ^⊲(Φ^⊲(G)) > ...` down to the trivial group.
pub fn phi_lhd_height(g: &PermGroup, caps: &Caps) -> Result<u32> {
    let mut cur = g.clone();
    let mut height = 0;
    while !cur.is_trivial() {
        let lat = NormalLattice::new(&cur, caps)?;
        cur = lat.group(lat.frattini_normal());
        height += 1;
    }
    Ok(height)
}
