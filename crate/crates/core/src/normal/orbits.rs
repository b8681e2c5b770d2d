use serde::Serialize;

use super::cores::components;
use super::frattini::burnside_rank;
use crate::caps::Caps;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::sylow::sylow_seeded;

/// Orbits of a Sylow subgroup on the components of order divisible by `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentOrbits {
    pub orbits: u32,
    /// `d(S)`, the rank of `S/Φ(S)`.
    pub bound: u32,
    pub holds: bool,
}

pub fn component_orbit_check(g: &PermGroup, p: u64, caps: &Caps) -> Result<ComponentOrbits> {
    let comps: Vec<PermGroup> = components(g, caps)?
        .into_iter()
        .filter(|q| (q.order() % p) == 0u32.into())
        .collect();
    let s = sylow_seeded(g, p, 0)?;
    let mut orbit = vec![usize::MAX; comps.len()];
    let mut count = 0;
    for start in 0..comps.len() {
        if orbit[start] != usize::MAX {
            continue;
        }
        orbit[start] = count;
        let mut queue = vec![start];
        while let Some(i) = queue.pop() {
            for x in s.generators() {
                let gens = comps[i].generators().iter().map(|y| y.conjugate_by(x)).collect();
                let image = PermGroup::from_gens_unchecked(g.degree(), gens);
                let j = comps
                    .iter()
                    .position(|q| q.same_elements(&image))
                    .ok_or_else(|| GroupError::InvalidArgument("components not permuted".into()))?;
                if orbit[j] == usize::MAX {
                    orbit[j] = count;
                    queue.push(j);
                }
            }
        }
        count += 1;
    }
    let bound = burnside_rank(&s)?;
    Ok(ComponentOrbits {
        orbits: count as u32,
        bound,
        holds: count as u32 <= bound,
    })
}

/// Sum of the base-`b` digits of `n`.
pub fn digit_sum(mut n: u64, b: u64) -> Result<u64> {
    if b < 2 {
        return Err(GroupError::InvalidArgument(format!("base {b} is below 2")));
    }
    let mut s = 0;
    while n > 0 {
        s += n % b;
        n /= b;
    }
    Ok(s)
}
