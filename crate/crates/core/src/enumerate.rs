//! Explicit element tables for groups within the enumeration cap.
//!
//! Elements are indexed by their stabilizer-chain coordinates, so products and
//! inverses are computed on base images only.

use fixedbitset::FixedBitSet;

use crate::caps::Caps;
use crate::error::Result;
use crate::group::PermGroup;
use crate::perm::Permutation;

pub struct ElementTable {
    group: PermGroup,
    elems: Vec<Permutation>,
    base: Vec<usize>,
    /// `pos[i][x]`: position of point `x` in the `i`-th basic orbit, or `u32::MAX`.
    pos: Vec<Vec<u32>>,
    radix: Vec<usize>,
    /// Inverse transversal elements per level, indexed by orbit position.
    rep_inv: Vec<Vec<Permutation>>,
    inverses: Vec<u32>,
    /// Base images of every element, `base.len()` entries per element.
    base_imgs: Vec<u32>,
}

impl ElementTable {
    pub fn new(group: &PermGroup, caps: &Caps) -> Result<Self> {
        let elems = group.elements(caps.order)?;
        let chain = group.chain();
        let degree = group.degree();
        let base = chain.base();
        let mut pos = Vec::new();
        let mut radix = Vec::new();
        let mut rep_inv = Vec::new();
        for level in chain.levels() {
            let mut p = vec![u32::MAX; degree];
            for (k, &x) in level.orbit().iter().enumerate() {
                p[x] = k as u32;
            }
            pos.push(p);
            radix.push(level.orbit().len());
            rep_inv.push(
                level
                    .orbit()
                    .iter()
                    .map(|&x| level.rep_inv(x).unwrap().clone())
                    .collect(),
            );
        }
        let mut table = ElementTable {
            group: group.clone(),
            elems,
            base,
            pos,
            radix,
            rep_inv,
            inverses: Vec::new(),
            base_imgs: Vec::new(),
        };
        table.base_imgs = table
            .elems
            .iter()
            .flat_map(|g| table.base.iter().map(move |&b| g.apply(b) as u32))
            .collect();
        let inverses = (0..table.elems.len())
            .map(|i| {
                let inv = table.elems[i].inverse();
                table.index_from_base_images(&table.base_images(&inv)).unwrap() as u32
            })
            .collect();
        table.inverses = inverses;
        Ok(table)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elems
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elems[i]
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    fn base_images(&self, g: &Permutation) -> Vec<usize> {
        self.base.iter().map(|&b| g.apply(b)).collect()
    }

    /// Index from base images; `None` if the images do not come from a group element.
    fn index_from_base_images(&self, images: &[usize]) -> Option<usize> {
        let mut imgs = images.to_vec();
        self.index_in_place(&mut imgs)
    }

    /// As `index_from_base_images`, using `imgs` as scratch space.
    fn index_in_place(&self, imgs: &mut [usize]) -> Option<usize> {
        let mut idx = 0usize;
        let mut scale = 1usize;
        for i in 0..self.base.len() {
            let c = self.pos[i][imgs[i]];
            if c == u32::MAX {
                return None;
            }
            idx += scale * c as usize;
            scale *= self.radix[i];
            let v = &self.rep_inv[i][c as usize];
            for img in imgs.iter_mut().skip(i + 1) {
                *img = v.apply(*img);
            }
        }
        Some(idx)
    }

    /// Index of `g`, or `None` if `g` is not in the group.
    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        if g.degree() != self.group.degree() {
            return None;
        }
        let i = self.index_from_base_images(&self.base_images(g))?;
        (self.elems[i] == *g).then_some(i)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let l = self.base.len();
        let y = &self.elems[b];
        let src = &self.base_imgs[a * l..(a + 1) * l];
        let mut buf = [0usize; 32];
        if l <= buf.len() {
            for (d, &p) in buf.iter_mut().zip(src) {
                *d = y.apply(p as usize);
            }
            return self.index_in_place(&mut buf[..l]).unwrap();
        }
        let mut imgs: Vec<usize> = src.iter().map(|&p| y.apply(p as usize)).collect();
        self.index_in_place(&mut imgs).unwrap()
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `a^b = b^-1 a b`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut acc = 0;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.elems[a].order()
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    /// Element set of a subgroup of the table's group.
    pub fn subgroup_set(&self, h: &PermGroup) -> FixedBitSet {
        let mut s = self.empty_set();
        h.chain().for_each_element(|g| {
            let i = self.index_of(g).expect("subgroup element outside the ambient group");
            s.insert(i);
        });
        s
    }

    /// Subgroup generated by the given element indices, as a set.
    pub fn generate(&self, gens: &[usize]) -> FixedBitSet {
        self.extend_subgroup(&self.singleton(0), gens)
    }

    pub fn singleton(&self, a: usize) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert(a);
        s
    }

    /// Smallest subgroup containing the subgroup `set` and `extra`.
    pub fn extend_subgroup(&self, set: &FixedBitSet, extra: &[usize]) -> FixedBitSet {
        if extra.iter().all(|&x| set.contains(x)) {
            return set.clone();
        }
        let gens = self.small_generating_set(set);
        self.extend_with_gens(set, &gens, extra)
    }

    /// Closure of the subgroup `set` (generated by `set_gens`) together with `extra`.
    pub fn extend_with_gens(&self, set: &FixedBitSet, set_gens: &[usize], extra: &[usize]) -> FixedBitSet {
        let mut out = set.clone();
        let mut members: Vec<usize> = set.ones().collect();
        let old = members.len();
        let mut all_gens: Vec<usize> = extra.to_vec();
        all_gens.extend_from_slice(set_gens);
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            // old members are already closed under the old generators
            let gens = if i < old { extra } else { &all_gens[..] };
            for &g in gens {
                let y = self.mul(x, g);
                if !out.contains(y) {
                    out.insert(y);
                    members.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// `MC` as a union of cosets `Mc`; a subgroup when either factor normalizes the other.
    pub fn product_set(&self, m: &FixedBitSet, c: &FixedBitSet) -> FixedBitSet {
        let mut out = m.clone();
        let ms: Vec<usize> = m.ones().collect();
        for x in c.ones() {
            if !out.contains(x) {
                for &y in &ms {
                    out.insert(self.mul(y, x));
                }
            }
        }
        out
    }

    /// A generating set of a subgroup given as a set, chosen greedily.
    pub fn small_generating_set(&self, set: &FixedBitSet) -> Vec<usize> {
        let mut acc = self.singleton(0);
        let mut gens = Vec::new();
        for x in set.ones() {
            if !acc.contains(x) {
                acc = self.extend_with_gens(&acc, &gens, &[x]);
                gens.push(x);
            }
        }
        gens
    }

    /// Converts an element set back into a permutation group.
    pub fn to_group(&self, set: &FixedBitSet) -> PermGroup {
        let gens = self
            .small_generating_set(set)
            .into_iter()
            .map(|i| self.elems[i].clone())
            .collect();
        PermGroup::from_gens_unchecked(self.group.degree(), gens)
    }

    /// Is the set closed under conjugation by the group generators?
    pub fn is_normal_set(&self, set: &FixedBitSet) -> bool {
        let gens: Vec<usize> = self
            .group
            .generators()
            .iter()
            .map(|g| self.index_of(g).unwrap())
            .collect();
        set.ones().all(|x| gens.iter().all(|&g| set.contains(self.conj(x, g))))
    }

    /// Conjugacy classes as lists of element indices, ordered by smallest member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let gens: Vec<usize> = self
            .group
            .generators()
            .iter()
            .map(|g| self.index_of(g).unwrap())
            .collect();
        let mut seen = self.empty_set();
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            let mut class = vec![start];
            let mut i = 0;
            while i < class.len() {
                let x = class[i];
                for &g in &gens {
                    let y = self.conj(x, g);
                    if !seen.contains(y) {
                        seen.insert(y);
                        class.push(y);
                    }
                }
                i += 1;
            }
            class.sort_unstable();
            out.push(class);
        }
        out
    }
}
