use fixedbitset::FixedBitSet;

use super::lattice::NormalLattice;
use crate::caps::Caps;
use crate::enumerate::ElementTable;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;

impl NormalLattice {
    /// `I^⊲_n(G)`: intersection of the normal subgroups of index at most `n`.
    pub fn small_normals_meet(&self, n: u64) -> usize {
        self.meet_all((0..self.len()).filter(|&id| self.index(id) <= n))
    }

    /// `Ob_G(H) = H ∩ ⋂{K ⊴ G : K ⊄ H}` for a subgroup given as an element set.
    pub fn oblique_core_set(&self, h: &FixedBitSet) -> FixedBitSet {
        let mut out = h.clone();
        for m in self.members() {
            if !m.set.is_subset(h) {
                out.intersect_with(&m.set);
            }
        }
        out
    }

    pub fn oblique_core(&self, h: &PermGroup) -> Result<PermGroup> {
        let set = self.subgroup_set_checked(h)?;
        Ok(self.table().to_group(&self.oblique_core_set(&set)))
    }

    /// `ob_G(n) = |G : Ob_G(I^⊲_n(G))|`.
    pub fn ob(&self, n: u64) -> u64 {
        let i = self.small_normals_meet(n);
        // the oblique core of a normal subgroup is normal
        let core = self.oblique_core_set(&self.member(i).set);
        self.top_order() / core.count_ones(..) as u64
    }

    /// `ob*_G(n) = |G : Ob*_G(I^⊲_n(G))|`.
    pub fn ob_star(&self, n: u64, caps: &Caps) -> Result<u64> {
        check_ob_star(self.ambient(), caps)?;
        let i = self.small_normals_meet(n);
        let core = strong_oblique_core_set(self.table(), &self.member(i).set);
        Ok(self.top_order() / core.count_ones(..) as u64)
    }

    pub fn strong_oblique_core(&self, h: &PermGroup, caps: &Caps) -> Result<PermGroup> {
        check_ob_star(self.ambient(), caps)?;
        let set = self.subgroup_set_checked(h)?;
        Ok(self.table().to_group(&strong_oblique_core_set(self.table(), &set)))
    }

    fn subgroup_set_checked(&self, h: &PermGroup) -> Result<FixedBitSet> {
        if !h.is_subgroup_of(self.ambient()) {
            return Err(GroupError::NotSubgroup("H is not contained in G".into()));
        }
        Ok(self.table().subgroup_set(h))
    }
}

fn check_ob_star(g: &PermGroup, caps: &Caps) -> Result<()> {
    g.order_within(caps.ob_star, "ob_star").map(|_| ())
}

/// `Ob*_G(H)`: `H` meets every `H`-invariant subgroup not contained in `H`.
///
/// Every such subgroup contains `⟨x^H⟩` for some `x ∉ H`, and those are
/// themselves members of the family, so it is enough to intersect them.
pub fn strong_oblique_core_set(table: &ElementTable, h: &FixedBitSet) -> FixedBitSet {
    let hgens = table.small_generating_set(h);
    let mut out = h.clone();
    let mut done = h.clone();
    let trivial = table.singleton(0);
    for x in 0..table.len() {
        if done.contains(x) {
            continue;
        }
        // the H-conjugacy class of x gives the same subgroup
        let mut class = vec![x];
        done.insert(x);
        let mut i = 0;
        while i < class.len() {
            for &s in &hgens {
                let y = table.conj(class[i], s);
                if !done.contains(y) {
                    done.insert(y);
                    class.push(y);
                }
            }
            i += 1;
        }
        if out.count_ones(..) == 1 {
            continue;
        }
        let mut k = trivial.clone();
        let mut gens = Vec::new();
        for &y in &class {
            if !k.contains(y) {
                k = table.extend_with_gens(&k, &gens, &[y]);
                gens.push(y);
            }
        }
        out.intersect_with(&k);
    }
    out
}
