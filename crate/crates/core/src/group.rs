use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rustc_hash::FxHashSet;

use crate::chain::StabChain;
use crate::error::{GroupError, Result};
use crate::perm::Permutation;

/// A permutation group given by generators, certified by a stabilizer chain.
///
/// Subgroups always live in the ambient degree of their parent.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: Arc<StabChain>,
}

impl PermGroup {
    /// Builds the group generated by `gens` on `degree` points.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(GroupError::InvalidArgument("degree must be positive".into()));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(Self::from_gens_unchecked(degree, gens))
    }

    /// Same as [`PermGroup::new`] but with a fixed base prefix.
    pub fn with_base_prefix(degree: usize, gens: Vec<Permutation>, prefix: &[usize]) -> Self {
        let gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let chain = StabChain::with_base_prefix(degree, &gens, prefix);
        PermGroup {
            degree,
            gens,
            chain: Arc::new(chain),
        }
    }

    pub(crate) fn from_gens_unchecked(degree: usize, gens: Vec<Permutation>) -> Self {
        let mut uniq: Vec<Permutation> = Vec::with_capacity(gens.len());
        for g in gens {
            if !g.is_identity() && !uniq.contains(&g) {
                uniq.push(g);
            }
        }
        let chain = StabChain::new(degree, &uniq);
        PermGroup {
            degree,
            gens: uniq,
            chain: Arc::new(chain),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_gens_unchecked(degree, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    /// Order as `u64`; fails for astronomically large groups.
    pub fn order_u64(&self) -> Result<u64> {
        self.chain
            .order_u64()
            .ok_or_else(|| GroupError::cap("order", u64::MAX, self.order()))
    }

    /// Order, failing if it exceeds `cap`.
    pub fn order_within(&self, cap: u64, cap_name: &'static str) -> Result<u64> {
        match self.chain.order_u64() {
            Some(o) if o <= cap => Ok(o),
            _ => Err(GroupError::cap(cap_name, cap, self.order())),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.chain.levels().is_empty()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Membership by sifting.
    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        self.check_degree(x)?;
        Ok(self.chain.contains(x))
    }

    pub(crate) fn has(&self, x: &Permutation) -> bool {
        self.chain.contains(x)
    }

    pub fn check_degree(&self, x: &Permutation) -> Result<()> {
        if x.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: x.degree(),
            });
        }
        Ok(())
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.has(g))
    }

    /// Equality as subsets of `Sym(degree)`.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// True when every generator of `self` commutes with every generator of `other`.
    pub fn commutes_with(&self, other: &PermGroup) -> bool {
        self.gens
            .iter()
            .all(|a| other.gens.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// True when `self` is normalized by every generator of `by`.
    pub fn is_normalized_by(&self, by: &PermGroup) -> bool {
        by.gens
            .iter()
            .all(|g| self.gens.iter().all(|h| self.has(&h.conjugate_by(g))))
    }

    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        self.is_subgroup_of(ambient) && self.is_normalized_by(ambient)
    }

    pub fn is_abelian(&self) -> bool {
        self.commutes_with(self)
    }

    /// Group generated by `self` and `extra`; reuses `self` when nothing new is added.
    pub fn closure(&self, extra: &[Permutation]) -> PermGroup {
        let new: Vec<&Permutation> = extra.iter().filter(|x| !self.has(x)).collect();
        if new.is_empty() {
            return self.clone();
        }
        let mut gens = self.gens.clone();
        let mut strong = self.chain.strong_generators();
        for x in new {
            gens.push(x.clone());
            strong.push(x.clone());
        }
        let chain = StabChain::with_base_prefix(self.degree, &strong, &self.chain.base());
        let mut uniq: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !uniq.contains(&g) {
                uniq.push(g);
            }
        }
        PermGroup {
            degree: self.degree,
            gens: uniq,
            chain: Arc::new(chain),
        }
    }

    /// Join of two subgroups of the same degree.
    pub fn join(&self, other: &PermGroup) -> PermGroup {
        self.closure(&other.gens)
    }

    /// Orbits of the group on points, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let orbit = self.orbit(start);
            for &x in &orbit {
                seen[x] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Sorted orbit of a point.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &self.gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbit
    }

    /// Every element, in a fixed order; refuses when the order exceeds `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        let n = self.order_within(cap, "order")?;
        let mut out = Vec::with_capacity(n as usize);
        self.chain.for_each_element(|g| out.push(g.clone()));
        Ok(out)
    }

    /// Smallest non-trivial generating set found greedily from the given generators.
    pub fn reduced_generators(&self) -> Vec<Permutation> {
        let mut acc = PermGroup::trivial(self.degree);
        let mut out = Vec::new();
        for g in &self.gens {
            if !acc.has(g) {
                acc = acc.closure(std::slice::from_ref(g));
                out.push(g.clone());
            }
        }
        out
    }

    /// Same group with a greedily reduced generator list.
    pub fn with_reduced_generators(&self) -> PermGroup {
        PermGroup {
            degree: self.degree,
            gens: self.reduced_generators(),
            chain: self.chain.clone(),
        }
    }

    /// Brute-force closure size by breadth-first multiplication; independent of the chain.
    pub fn closure_size_brute_force(&self, cap: usize) -> Option<usize> {
        let id = self.identity();
        let mut seen: FxHashSet<Permutation> = FxHashSet::default();
        seen.insert(id.clone());
        let mut queue = vec![id];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i].clone();
            for g in &self.gens {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return None;
                    }
                    queue.push(y);
                }
            }
            i += 1;
        }
        Some(seen.len())
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(deg {}, order {}, gens [", self.degree, self.order())?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("])")
    }
}

/// Builds a group from generators (`group_from_generators`).
pub fn group_from_generators(degree: usize, gens: Vec<Permutation>) -> Result<PermGroup> {
    PermGroup::new(degree, gens)
}

/// Membership test (`contains`).
pub fn contains(group: &PermGroup, x: &Permutation) -> Result<bool> {
    group.contains(x)
}
