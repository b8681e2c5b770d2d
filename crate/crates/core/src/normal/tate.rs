use serde::Serialize;

use crate::caps::Caps;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::series::derived_subgroup;
use crate::sylow::{p_part, sylow_seeded};

/// `G'G^p`: the smallest normal subgroup with elementary abelian p-quotient.
pub fn derived_times_powers(g: &PermGroup, p: u64) -> PermGroup {
    let powers: Vec<_> = g
        .generators()
        .iter()
        .map(|x| x.pow(p))
        .filter(|x| !x.is_identity())
        .collect();
    derived_subgroup(g).closure(&powers)
}

/// `O^p(G)`, the stable term of `N ↦ N'N^p`.
pub fn p_residual(g: &PermGroup, p: u64) -> PermGroup {
    let mut cur = g.clone();
    loop {
        let next = derived_times_powers(&cur, p);
        if next.order() == cur.order() {
            return cur;
        }
        cur = next;
    }
}

/// The four conditions of Tate's transfer criterion for `S ≤ K ≤ G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TateReport {
    /// `G' ∩ S = K' ∩ S`
    pub derived: bool,
    /// `G'G^p ∩ S = K'K^p ∩ S`
    pub frattini: bool,
    /// `G'O^p(G) ∩ S = K'O^p(K) ∩ S`
    pub derived_residual: bool,
    /// `O^p(G) ∩ S = O^p(K) ∩ S`
    pub residual: bool,
}

impl TateReport {
    pub fn all_equal(&self) -> bool {
        let v = [self.derived, self.frattini, self.derived_residual, self.residual];
        v.iter().all(|&b| b == v[0])
    }

    pub fn all_true(&self) -> bool {
        self.derived && self.frattini && self.derived_residual && self.residual
    }
}

pub fn tate_check(g: &PermGroup, k: &PermGroup, p: u64, caps: &Caps) -> Result<TateReport> {
    tate_check_seeded(g, k, p, caps, 0)
}

pub fn tate_check_seeded(g: &PermGroup, k: &PermGroup, p: u64, caps: &Caps, seed: u64) -> Result<TateReport> {
    if k.degree() != g.degree() || !k.is_subgroup_of(g) {
        return Err(GroupError::NotSubgroup("K is not contained in G".into()));
    }
    let s = sylow_seeded(k, p, seed)?;
    if s.order() != p_part(&g.order(), p) {
        return Err(GroupError::InvalidArgument(format!(
            "K does not contain a Sylow {p}-subgroup of G"
        )));
    }
    let elems = s.elements(caps.order)?;
    // two subgroups meet S in the same set iff they agree on every element of S
    let same = |a: &PermGroup, b: &PermGroup| elems.iter().all(|x| a.has(x) == b.has(x));
    let (gd, kd) = (derived_subgroup(g), derived_subgroup(k));
    let (gr, kr) = (p_residual(g, p), p_residual(k, p));
    Ok(TateReport {
        derived: same(&gd, &kd),
        frattini: same(&derived_times_powers(g, p), &derived_times_powers(k, p)),
        derived_residual: same(&gd.join(&gr), &kd.join(&kr)),
        residual: same(&gr, &kr),
    })
}
