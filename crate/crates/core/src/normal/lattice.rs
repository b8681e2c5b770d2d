use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;

use crate::caps::Caps;
use crate::enumerate::ElementTable;
use crate::error::Result;
use crate::group::PermGroup;

/// One normal subgroup, as a set of element indices of the ambient table.
#[derive(Clone, Debug)]
pub struct Member {
    pub set: FixedBitSet,
    pub gens: Vec<usize>,
    pub order: u64,
}

/// All normal subgroups of a finite group.
///
/// Members are sorted by order, then by their element sets, so member ids are
/// stable for a given group. Id 0 is the trivial group and the last id is the
/// whole group.
pub struct NormalLattice {
    table: ElementTable,
    members: Vec<Member>,
    lookup: FxHashMap<FixedBitSet, usize>,
}

impl NormalLattice {
    /// Closes the normal closures of the conjugacy classes under joins.
    pub fn new(g: &PermGroup, caps: &Caps) -> Result<Self> {
        g.order_within(caps.lattice, "lattice")?;
        let table = ElementTable::new(g, caps)?;
        Ok(Self::from_table(table))
    }

    pub fn from_table(table: ElementTable) -> Self {
        let trivial = table.singleton(0);
        let mut seeds: Vec<Member> = Vec::new();
        let mut seen: FxHashMap<FixedBitSet, ()> = FxHashMap::default();
        for class in table.classes().into_iter().skip(1) {
            // a conjugacy class generates a normal subgroup
            let mut set = trivial.clone();
            let mut gens = Vec::new();
            for &x in &class {
                if !set.contains(x) {
                    set = table.extend_with_gens(&set, &gens, &[x]);
                    gens.push(x);
                }
            }
            if seen.insert(set.clone(), ()).is_none() {
                let order = set.count_ones(..) as u64;
                seeds.push(Member { set, gens, order });
            }
        }

        let mut members = vec![Member {
            set: trivial,
            gens: Vec::new(),
            order: 1,
        }];
        let mut lookup: FxHashMap<FixedBitSet, usize> = FxHashMap::default();
        lookup.insert(members[0].set.clone(), 0);
        let mut i = 0;
        while i < members.len() {
            for seed in &seeds {
                let m = &members[i];
                if seed.set.is_subset(&m.set) {
                    continue;
                }
                let set = table.product_set(&m.set, &seed.set);
                if lookup.contains_key(&set) {
                    continue;
                }
                let mut gens = m.gens.clone();
                gens.extend(seed.gens.iter().copied().filter(|&x| !m.set.contains(x)));
                let order = set.count_ones(..) as u64;
                lookup.insert(set.clone(), members.len());
                members.push(Member { set, gens, order });
            }
            i += 1;
        }

        members.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.set.ones().cmp(b.set.ones())));
        for m in &mut members {
            m.gens = table.small_generating_set(&m.set);
        }
        let lookup = members.iter().enumerate().map(|(k, m)| (m.set.clone(), k)).collect();
        NormalLattice { table, members, lookup }
    }

    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    pub fn ambient(&self) -> &PermGroup {
        self.table.group()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn member(&self, id: usize) -> &Member {
        &self.members[id]
    }

    pub fn order(&self, id: usize) -> u64 {
        self.members[id].order
    }

    pub fn index(&self, id: usize) -> u64 {
        self.top_order() / self.members[id].order
    }

    pub fn trivial_id(&self) -> usize {
        0
    }

    pub fn top_id(&self) -> usize {
        self.members.len() - 1
    }

    pub fn top_order(&self) -> u64 {
        self.members[self.top_id()].order
    }

    /// The member with exactly this element set.
    pub fn find(&self, set: &FixedBitSet) -> Option<usize> {
        self.lookup.get(set).copied()
    }

    /// Member id of a normal subgroup given as a permutation group.
    pub fn find_group(&self, h: &PermGroup) -> Option<usize> {
        if !h.is_subgroup_of(self.ambient()) {
            return None;
        }
        self.find(&self.table.subgroup_set(h))
    }

    pub fn group(&self, id: usize) -> PermGroup {
        let m = &self.members[id];
        let gens = m.gens.iter().map(|&x| self.table.element(x).clone()).collect();
        PermGroup::from_gens_unchecked(self.ambient().degree(), gens)
    }

    pub fn is_below(&self, a: usize, b: usize) -> bool {
        self.members[a].set.is_subset(&self.members[b].set)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let mut set = self.members[a].set.clone();
        set.intersect_with(&self.members[b].set);
        self.find(&set).expect("intersection of normal subgroups is normal")
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        let (ma, mb) = (&self.members[a], &self.members[b]);
        if mb.set.is_subset(&ma.set) {
            return a;
        }
        if ma.set.is_subset(&mb.set) {
            return b;
        }
        let set = self.table.product_set(&ma.set, &mb.set);
        self.find(&set).expect("product of normal subgroups is normal")
    }

    pub fn meet_all(&self, ids: impl IntoIterator<Item = usize>) -> usize {
        ids.into_iter().fold(self.top_id(), |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, ids: impl IntoIterator<Item = usize>) -> usize {
        ids.into_iter().fold(self.trivial_id(), |acc, x| self.join(acc, x))
    }

    pub fn join_table(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|a| (0..self.len()).map(|b| self.join(a, b)).collect())
            .collect()
    }

    pub fn meet_table(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|a| (0..self.len()).map(|b| self.meet(a, b)).collect())
            .collect()
    }

    /// Maximal proper members.
    pub fn maximal(&self) -> Vec<usize> {
        let top = self.top_id();
        (0..top)
            .filter(|&a| (0..top).all(|b| b == a || !self.members[a].set.is_subset(&self.members[b].set)))
            .collect()
    }

    /// Minimal nontrivial members.
    pub fn minimal(&self) -> Vec<usize> {
        (1..self.len())
            .filter(|&a| (1..self.len()).all(|b| b == a || !self.members[b].set.is_subset(&self.members[a].set)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{alternating, cyclic, symmetric};

    fn orders(g: &PermGroup) -> Vec<u64> {
        let lat = NormalLattice::new(g, &Caps::default()).unwrap();
        lat.members().iter().map(|m| m.order).collect()
    }

    #[test]
    fn small_lattices() {
        assert_eq!(orders(&symmetric(4).unwrap()), vec![1, 4, 12, 24]);
        assert_eq!(orders(&alternating(5).unwrap()), vec![1, 60]);
        assert_eq!(orders(&cyclic(6).unwrap()), vec![1, 2, 3, 6]);
        assert_eq!(orders(&PermGroup::trivial(3)), vec![1]);
    }

    #[test]
    fn joins_and_meets() {
        let lat = NormalLattice::new(&cyclic(12).unwrap(), &Caps::default()).unwrap();
        let ord: Vec<u64> = lat.members().iter().map(|m| m.order).collect();
        assert_eq!(ord, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(lat.order(lat.join(2, 3)), 12);
        assert_eq!(lat.order(lat.meet(3, 4)), 2);
        assert_eq!(lat.maximal(), vec![3, 4]);
        assert_eq!(lat.minimal(), vec![1, 2]);
    }

    #[test]
    fn lattice_cap() {
        let caps = Caps {
            lattice: 100,
            ..Caps::default()
        };
        assert!(NormalLattice::new(&symmetric(5).unwrap(), &caps)
            .err()
            .unwrap()
            .is_cap());
    }
}
