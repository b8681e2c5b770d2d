use fixedbitset::FixedBitSet;

use super::frattini::{frattini_pgroup, group_prime};
use crate::caps::Caps;
use crate::enumerate::ElementTable;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::hom::GroupHom;
use crate::linalg::{FpMatrix, Subspace};
use crate::perm::Permutation;

/// `Aut(G)` for a small group, found by searching generator images.
pub struct Automorphisms {
    table: ElementTable,
    /// Generating tuple of `G` whose images determine an automorphism.
    basis: Vec<usize>,
    /// Generators of `Aut(G)` as maps on element indices.
    maps: Vec<Vec<usize>>,
    /// `Aut(G)` acting on the nonidentity elements (point `i` is element `i + 1`).
    group: PermGroup,
}

impl Automorphisms {
    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// Is the element set mapped onto itself by every automorphism?
    pub fn is_characteristic(&self, set: &FixedBitSet) -> bool {
        self.maps.iter().all(|f| set.ones().all(|x| set.contains(f[x])))
    }
}

/// A generating set of minimal size among greedy choices; a Burnside basis for p-groups.
fn generating_tuple(table: &ElementTable) -> Result<Vec<usize>> {
    let g = table.group();
    if g.is_trivial() {
        return Ok(Vec::new());
    }
    let (start, mut gens) = if group_prime(g).ok().flatten().is_some() {
        let phi = table.subgroup_set(&frattini_pgroup(g)?);
        (phi.clone(), table.small_generating_set(&phi))
    } else {
        (table.singleton(0), Vec::new())
    };
    let mut acc = start;
    let mut basis = Vec::new();
    for x in 0..table.len() {
        if acc.count_ones(..) == table.len() {
            break;
        }
        if !acc.contains(x) {
            acc = table.extend_with_gens(&acc, &gens, &[x]);
            gens.push(x);
            basis.push(x);
        }
    }
    // drop redundant generators (only possible outside the p-group case)
    let mut k = 0;
    while k < basis.len() && basis.len() > 1 {
        let rest: Vec<usize> = basis
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, &x)| x)
            .collect();
        if table.generate(&rest).count_ones(..) == table.len() {
            basis = rest;
        } else {
            k += 1;
        }
    }
    Ok(basis)
}

struct Search<'a> {
    table: &'a ElementTable,
    basis: &'a [usize],
    orders: Vec<u64>,
    found: Vec<Vec<usize>>,
    group: PermGroup,
}

impl Search<'_> {
    /// Extends the partial map on `⟨basis[..=i]⟩`; `None` on inconsistency.
    fn extend_map(&self, images: &[usize]) -> Option<Vec<usize>> {
        let t = self.table;
        let n = t.len();
        let mut f = vec![usize::MAX; n];
        let mut used = FixedBitSet::with_capacity(n);
        f[0] = 0;
        used.insert(0);
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (j, &g) in self.basis[..images.len()].iter().enumerate() {
                let y = t.mul(x, g);
                let fy = t.mul(f[x], images[j]);
                if f[y] == usize::MAX {
                    if used.contains(fy) {
                        return None;
                    }
                    f[y] = fy;
                    used.insert(fy);
                    queue.push(y);
                } else if f[y] != fy {
                    return None;
                }
            }
            i += 1;
        }
        Some(f)
    }

    fn dfs(&mut self, images: &mut Vec<usize>) {
        let i = images.len();
        if i == self.basis.len() {
            let f = self.extend_map(images).expect("checked on the way down");
            let perm = Permutation::from_images_unchecked(f[1..].iter().map(|&y| (y - 1) as u32).collect());
            if !self.group.has(&perm) {
                self.group = self.group.closure(&[perm]);
                self.found.push(f);
            }
            return;
        }
        for c in 1..self.table.len() {
            if self.orders[c] != self.orders[self.basis[i]] {
                continue;
            }
            images.push(c);
            if self.extend_map(images).is_some() {
                self.dfs(images);
            }
            images.pop();
        }
    }
}

/// All automorphisms of a group of order at most the `aut` cap.
pub fn aut_group_small(g: &PermGroup, caps: &Caps) -> Result<Automorphisms> {
    g.order_within(caps.aut, "aut")?;
    let table = ElementTable::new(g, caps)?;
    let basis = generating_tuple(&table)?;
    let n = table.len();
    let mut search = Search {
        table: &table,
        basis: &basis,
        orders: (0..n).map(|x| table.element_order(x)).collect(),
        found: Vec::new(),
        group: PermGroup::trivial(n.saturating_sub(1).max(1)),
    };
    if n > 1 {
        search.dfs(&mut Vec::new());
    }
    let (maps, group) = (search.found, search.group);
    // certify each generator as an endomorphism of the permutation group
    for f in &maps {
        let images = g
            .generators()
            .iter()
            .map(|x| table.element(f[table.index_of(x).unwrap()]).clone())
            .collect();
        GroupHom::new(g, g, images)?;
    }
    Ok(Automorphisms {
        table,
        basis,
        maps,
        group,
    })
}

/// Largest dimension of a composition factor of the `F_p`-module given by `mats`
/// (acting on row vectors).
pub fn max_constituent_dim(p: u64, dim: usize, mats: &[FpMatrix]) -> usize {
    if dim == 0 {
        return 0;
    }
    let spin = |v: &[u64]| {
        let mut w = Subspace::zero(p, dim);
        w.insert(v);
        let mut queue = vec![v.to_vec()];
        while let Some(x) = queue.pop() {
            for m in mats {
                let y = m.apply_row(&x);
                if w.insert(&y) {
                    queue.push(y);
                }
            }
        }
        w
    };
    // a submodule of least positive dimension is irreducible
    let mut best: Option<Subspace> = None;
    for v in crate::linalg::all_vectors(p, dim).into_iter().skip(1) {
        let w = spin(&v);
        if best.as_ref().is_none_or(|b| w.dim() < b.dim()) {
            let done = w.dim() == 1;
            best = Some(w);
            if done {
                break;
            }
        }
    }
    let w = best.expect("nonzero module");
    let cols = w.complement_columns();
    let quotient: Vec<FpMatrix> = mats
        .iter()
        .map(|m| {
            let rows = cols
                .iter()
                .map(|&c| {
                    let mut e = vec![0; dim];
                    e[c] = 1;
                    let r = w.reduce(&m.apply_row(&e));
                    cols.iter().map(|&k| r[k]).collect()
                })
                .collect();
            FpMatrix::new(p, rows).expect("square")
        })
        .collect();
    w.dim().max(max_constituent_dim(p, cols.len(), &quotient))
}

/// Matrices of the automorphism generators on `S/Φ(S)` in the Burnside basis.
pub fn delta_matrices(auts: &Automorphisms, p: u64) -> Result<Vec<FpMatrix>> {
    let t = auts.table();
    let phi = t.subgroup_set(&frattini_pgroup(t.group())?);
    let basis = auts.basis();
    let d = basis.len();
    let mut coords: Vec<Option<Vec<u64>>> = vec![None; t.len()];
    for v in crate::linalg::all_vectors(p, d) {
        let mut e = 0;
        for (&x, &a) in basis.iter().zip(&v) {
            e = t.mul(e, t.pow(x, a));
        }
        for f in phi.ones() {
            coords[t.mul(e, f)] = Some(v.clone());
        }
    }
    auts.maps()
        .iter()
        .map(|f| {
            let rows = basis.iter().map(|&x| coords[f[x]].clone().unwrap()).collect();
            FpMatrix::new(p, rows)
        })
        .collect()
}

/// `c(S)`: largest dimension of an irreducible constituent of `S/Φ(S)` under `Aut(S)`.
pub fn c_invariant(s: &PermGroup, caps: &Caps) -> Result<u32> {
    let Some(p) = group_prime(s)? else {
        return Ok(0);
    };
    let auts = aut_group_small(s, caps)?;
    let d = auts.basis().len();
    if d > 8 {
        return Err(GroupError::cap("frattini_rank", 8, d));
    }
    let mats = delta_matrices(&auts, p)?;
    Ok(max_constituent_dim(p, d, &mats) as u32)
}
