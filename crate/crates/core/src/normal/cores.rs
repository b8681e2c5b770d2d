use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;

use super::lattice::NormalLattice;
use crate::caps::Caps;
use crate::enumerate::ElementTable;
use crate::error::Result;
use crate::group::PermGroup;
use crate::series::{derived_subgroup, perfect_core};
use crate::sylow::prime_divisors;

/// Is every prime factor of `n` in `primes`?
pub fn is_pi_number(mut n: u64, primes: &[u64]) -> bool {
    for &p in primes {
        if p < 2 {
            continue;
        }
        while n.is_multiple_of(p) {
            n /= p;
        }
    }
    n == 1
}

impl NormalLattice {
    /// `O_π(G)`: the largest normal π-subgroup.
    pub fn pi_core(&self, primes: &[u64]) -> usize {
        // the join of normal π-subgroups is a π-subgroup, so it is the largest one
        (0..self.len())
            .rev()
            .find(|&id| is_pi_number(self.order(id), primes))
            .unwrap_or(0)
    }

    /// `O^π(G)`: the smallest normal subgroup with π-quotient.
    pub fn pi_residual(&self, primes: &[u64]) -> usize {
        (0..self.len())
            .find(|&id| is_pi_number(self.index(id), primes))
            .unwrap_or(self.top_id())
    }

    /// `F(G)`: the product of the `O_p(G)`.
    pub fn fitting(&self) -> usize {
        let primes = prime_divisors(&self.top_order().into());
        self.join_all(primes.into_iter().map(|p| self.pi_core(&[p])))
    }

    /// Does some normal subgroup have order the `p'`-part of `|G|`?
    pub fn is_p_prime_normal(&self, p: u64) -> bool {
        let mut q = self.top_order();
        while q.is_multiple_of(p) {
            q /= p;
        }
        self.members().iter().any(|m| m.order == q)
    }
}

/// Centre of the table's group, as a set.
fn center_set(table: &ElementTable) -> FixedBitSet {
    let gens: Vec<usize> = table
        .group()
        .generators()
        .iter()
        .map(|g| table.index_of(g).unwrap())
        .collect();
    let mut s = table.empty_set();
    for x in 0..table.len() {
        if gens.iter().all(|&g| table.mul(x, g) == table.mul(g, x)) {
            s.insert(x);
        }
    }
    s
}

/// Perfect, nontrivial, and every proper normal subgroup is central.
pub fn is_quasisimple(q: &PermGroup, caps: &Caps) -> Result<bool> {
    if q.is_trivial() || derived_subgroup(q).order() != q.order() {
        return Ok(false);
    }
    let lat = NormalLattice::new(q, caps)?;
    Ok(quasisimple_lattice(&lat))
}

fn quasisimple_lattice(lat: &NormalLattice) -> bool {
    let z = center_set(lat.table());
    (0..lat.top_id()).all(|id| lat.member(id).set.is_subset(&z))
}

/// Components of `g` (subnormal quasisimple subgroups), sorted by order and elements.
pub fn components(g: &PermGroup, caps: &Caps) -> Result<Vec<PermGroup>> {
    g.order_within(caps.lattice, "lattice")?;
    let d = perfect_core(g);
    if d.is_trivial() {
        return Ok(Vec::new());
    }
    let table = ElementTable::new(g, caps)?;
    let mut memo: FxHashMap<FixedBitSet, Vec<FixedBitSet>> = FxHashMap::default();
    let mut found = comp_perfect(&table, &d, caps, &mut memo)?;
    found.sort_by(|a, b| {
        a.count_ones(..)
            .cmp(&b.count_ones(..))
            .then_with(|| a.ones().cmp(b.ones()))
    });
    found.dedup();
    Ok(found.iter().map(|s| table.to_group(s)).collect())
}

/// Components of a perfect subgroup `d` of the table's group.
///
/// A proper component of `d` lies in some maximal normal subgroup `M` and is a
/// component of `M`, hence of the perfect core of `M`.
fn comp_perfect(
    ambient: &ElementTable,
    d: &PermGroup,
    caps: &Caps,
    memo: &mut FxHashMap<FixedBitSet, Vec<FixedBitSet>>,
) -> Result<Vec<FixedBitSet>> {
    let key = ambient.subgroup_set(d);
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let mut out = Vec::new();
    if !d.is_trivial() {
        let lat = NormalLattice::new(d, caps)?;
        if quasisimple_lattice(&lat) {
            out.push(key.clone());
        } else {
            for m in lat.maximal() {
                let core = perfect_core(&lat.group(m));
                for c in comp_perfect(ambient, &core, caps, memo)? {
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
    }
    memo.insert(key, out.clone());
    Ok(out)
}

/// Fitting subgroup, components, layer and generalized Fitting subgroup together.
pub struct FittingData {
    pub fitting: usize,
    pub components: Vec<PermGroup>,
    pub layer: usize,
    pub generalized_fitting: usize,
}

impl NormalLattice {
    pub fn fitting_data(&self, caps: &Caps) -> Result<FittingData> {
        let fitting = self.fitting();
        let comps = components(self.ambient(), caps)?;
        let mut e = self.table().singleton(0);
        let mut gens = Vec::new();
        for q in &comps {
            let qg: Vec<usize> = q
                .generators()
                .iter()
                .map(|x| self.table().index_of(x).unwrap())
                .collect();
            e = self.table().extend_with_gens(&e, &gens, &qg);
            gens.extend(qg);
        }
        let layer = self.find(&e).expect("the layer is normal");
        Ok(FittingData {
            fitting,
            components: comps,
            layer,
            generalized_fitting: self.join(fitting, layer),
        })
    }
}
