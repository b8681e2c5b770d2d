//! Backtrack searches over a stabilizer chain.
//!
//! Elements of `G` are enumerated through their base images. A search
//! property supplies a pruning test on partial base images and an acceptance
//! test on complete elements. Subgroup searches walk the chain bottom-up and
//! only visit one coset per orbit of the subgroup found so far.

use crate::chain::StabChain;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// A property of group elements searched by backtracking.
pub trait SearchProperty {
    /// May the partial map `base[k] -> images[k]` extend to an accepted element?
    /// Only the last pair is new; earlier pairs were already checked.
    fn prune(&self, base: &[usize], images: &[usize]) -> bool;

    fn accept(&self, g: &Permutation) -> bool;
}

struct Search<'a, P: SearchProperty + ?Sized> {
    chain: &'a StabChain,
    base: Vec<usize>,
    prop: &'a P,
}

impl<P: SearchProperty + ?Sized> Search<'_, P> {
    /// Depth-first search below level `depth`; `right` is the product chosen so far
    /// and `images` the images of `base[..depth]`.
    fn dfs(&self, depth: usize, right: &Permutation, images: &mut Vec<usize>) -> Option<Permutation> {
        let levels = self.chain.levels();
        if depth == levels.len() {
            return self.prop.accept(right).then(|| right.clone());
        }
        let level = &levels[depth];
        for &delta in level.orbit() {
            let c = right.apply(delta);
            images.push(c);
            if self.prop.prune(&self.base[..=depth], images) {
                let next = level.rep(delta).unwrap().compose(right);
                if let Some(g) = self.dfs(depth + 1, &next, images) {
                    images.pop();
                    return Some(g);
                }
            }
            images.pop();
        }
        None
    }
}

/// Finds some element of `g` with the property, if one exists.
pub fn coset_search<P: SearchProperty + ?Sized>(g: &PermGroup, prop: &P) -> Option<Permutation> {
    let chain = g.chain();
    let search = Search {
        chain,
        base: chain.base(),
        prop,
    };
    let id = g.identity();
    search.dfs(0, &id, &mut Vec::new())
}

/// The subgroup of elements of `g` with a property closed under products and
/// inverses. `lower` must be a subgroup of the answer.
pub fn subgroup_search<P: SearchProperty + ?Sized>(g: &PermGroup, lower: &PermGroup, prop: &P) -> PermGroup {
    let chain = g.chain();
    let base = chain.base();
    let levels = chain.levels();
    let degree = g.degree();
    let mut found = lower.clone();
    let mut found_chain = StabChain::with_base_prefix(degree, &found.chain().strong_generators(), &base);
    let search = Search {
        chain,
        base: base.clone(),
        prop,
    };
    for i in (0..levels.len()).rev() {
        let level = &levels[i];
        let mut excluded = vec![false; degree];
        for &gamma in level.orbit() {
            if gamma == level.base() || excluded[gamma] {
                continue;
            }
            let known_orbit = found_chain.levels().get(i).filter(|l| l.base() == level.base());
            if known_orbit.is_some_and(|l| l.in_orbit(gamma)) {
                continue;
            }
            let mut images: Vec<usize> = base[..i].to_vec();
            images.push(gamma);
            let hit = if prop.prune(&base[..=i], &images) {
                let start = level.rep(gamma).unwrap().clone();
                search.dfs(i + 1, &start, &mut images)
            } else {
                None
            };
            match hit {
                Some(x) => {
                    found = found.closure(std::slice::from_ref(&x));
                    found_chain = StabChain::with_base_prefix(degree, &found.chain().strong_generators(), &base);
                }
                None => {
                    // no element maps base to gamma, hence none maps it into gamma's orbit
                    // under the stabilizer part already found
                    for x in stabilizer_orbit(&found_chain, i, gamma, degree) {
                        excluded[x] = true;
                    }
                }
            }
        }
    }
    found
}

/// Orbit of `point` under the `i`-th stabilizer of `chain`.
fn stabilizer_orbit(chain: &StabChain, i: usize, point: usize, degree: usize) -> Vec<usize> {
    let gens: &[Permutation] = chain.levels().get(i).map_or(&[], |l| l.gens());
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut out = vec![point];
    let mut k = 0;
    while k < out.len() {
        let x = out[k];
        for s in gens {
            let y = s.apply(x);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
        k += 1;
    }
    out
}

/// Cycle data of a permutation used to prune centralizer searches.
struct CycleData {
    elem: Permutation,
    cycle_of: Vec<u32>,
    pos: Vec<u32>,
    len: Vec<u32>,
}

impl CycleData {
    fn new(x: &Permutation) -> Self {
        let n = x.degree();
        let mut cycle_of = vec![u32::MAX; n];
        let mut pos = vec![0; n];
        let mut len = vec![0; n];
        let mut cid = 0;
        for start in 0..n {
            if cycle_of[start] != u32::MAX {
                continue;
            }
            let mut pts = vec![start];
            let mut y = x.apply(start);
            while y != start {
                pts.push(y);
                y = x.apply(y);
            }
            for (k, &q) in pts.iter().enumerate() {
                cycle_of[q] = cid;
                pos[q] = k as u32;
                len[q] = pts.len() as u32;
            }
            cid += 1;
        }
        CycleData {
            elem: x.clone(),
            cycle_of,
            pos,
            len,
        }
    }

    fn compatible(&self, base: &[usize], images: &[usize]) -> bool {
        let j = base.len() - 1;
        let (a, c) = (base[j], images[j]);
        if self.len[a] != self.len[c] {
            return false;
        }
        let l = self.len[a];
        for k in 0..j {
            let (b, d) = (base[k], images[k]);
            let same_src = self.cycle_of[a] == self.cycle_of[b];
            let same_dst = self.cycle_of[c] == self.cycle_of[d];
            if same_src != same_dst {
                return false;
            }
            if same_src && (self.pos[a] + l - self.pos[b]) % l != (self.pos[c] + l - self.pos[d]) % l {
                return false;
            }
        }
        true
    }
}

/// Elements commuting with each of a list of permutations.
struct Centralizing {
    data: Vec<CycleData>,
}

impl SearchProperty for Centralizing {
    fn prune(&self, base: &[usize], images: &[usize]) -> bool {
        self.data.iter().all(|d| d.compatible(base, images))
    }

    fn accept(&self, g: &Permutation) -> bool {
        self.data.iter().all(|d| d.elem.compose(g) == g.compose(&d.elem))
    }
}

/// Point invariants of a group: orbits, and orbit sizes of point stabilizers.
pub(crate) struct OrbitStructure {
    orbit_id: Vec<u32>,
    orbit_size: Vec<u32>,
    /// Per orbit: sorted orbit sizes of a point stabilizer.
    profile: Vec<Vec<u32>>,
    /// For point `c`: index of its orbit representative and `h_c^-1` carrying `c` to the representative.
    to_rep: Option<Vec<(u32, Permutation)>>,
    /// Per representative: orbit size of each point under the representative's stabilizer.
    stab_orbit_size: Vec<Vec<u32>>,
}

const PAIR_INVARIANT_MAX_DEGREE: usize = 1024;

impl OrbitStructure {
    pub(crate) fn new(h: &PermGroup) -> Self {
        let n = h.degree();
        let orbits = h.orbits();
        let mut orbit_id = vec![0u32; n];
        let mut orbit_size = vec![0u32; n];
        for (k, o) in orbits.iter().enumerate() {
            for &x in o {
                orbit_id[x] = k as u32;
                orbit_size[x] = o.len() as u32;
            }
        }
        let with_pairs = n <= PAIR_INVARIANT_MAX_DEGREE;
        let mut profile: Vec<Vec<u32>> = Vec::new();
        let mut to_rep: Vec<(u32, Permutation)> = Vec::new();
        let mut stab_orbit_size = Vec::new();
        if with_pairs {
            to_rep = vec![(0, Permutation::identity(0)); n];
        }
        for (k, o) in orbits.iter().enumerate() {
            let rep = o[0];
            let chain = StabChain::with_base_prefix(n, &h.chain().strong_generators(), &[rep]);
            let stab_gens: Vec<Permutation> = chain.levels().get(1).map(|l| l.gens().to_vec()).unwrap_or_default();
            let stab = PermGroup::from_gens_unchecked(n, stab_gens);
            let mut sizes = vec![0u32; n];
            let mut multiset = Vec::new();
            for so in stab.orbits() {
                multiset.push(so.len() as u32);
                for &x in &so {
                    sizes[x] = so.len() as u32;
                }
            }
            multiset.sort_unstable();
            profile.push(multiset);
            if with_pairs {
                let level0 = chain.levels().first();
                for &c in o {
                    let inv = match level0 {
                        Some(l) => l.rep_inv(c).unwrap().clone(),
                        None => Permutation::identity(n),
                    };
                    to_rep[c] = (k as u32, inv);
                }
                stab_orbit_size.push(sizes);
            }
        }
        OrbitStructure {
            orbit_id,
            orbit_size,
            profile,
            to_rep: with_pairs.then_some(to_rep),
            stab_orbit_size,
        }
    }

    /// Orbit size of `y` under the stabilizer of `x`.
    fn pair(&self, x: usize, y: usize) -> Option<u32> {
        let to_rep = self.to_rep.as_ref()?;
        let (k, inv) = &to_rep[x];
        Some(self.stab_orbit_size[*k as usize][inv.apply(y)])
    }
}

/// Maps that could conjugate one group onto another: `src^g = dst`.
struct Conjugating<'a> {
    src: OrbitStructure,
    dst: OrbitStructure,
    src_group: &'a PermGroup,
    dst_group: &'a PermGroup,
}

impl SearchProperty for Conjugating<'_> {
    fn prune(&self, base: &[usize], images: &[usize]) -> bool {
        let j = base.len() - 1;
        let (a, c) = (base[j], images[j]);
        let (s, d) = (&self.src, &self.dst);
        if s.orbit_size[a] != d.orbit_size[c] || s.profile[s.orbit_id[a] as usize] != d.profile[d.orbit_id[c] as usize]
        {
            return false;
        }
        for k in 0..j {
            let (b, e) = (base[k], images[k]);
            if (s.orbit_id[a] == s.orbit_id[b]) != (d.orbit_id[c] == d.orbit_id[e]) {
                return false;
            }
            if s.pair(b, a) != d.pair(e, c) || s.pair(a, b) != d.pair(c, e) {
                return false;
            }
        }
        true
    }

    fn accept(&self, g: &Permutation) -> bool {
        self.src_group
            .generators()
            .iter()
            .all(|h| self.dst_group.has(&h.conjugate_by(g)))
    }
}

/// Centralizer `C_G(x)`.
pub fn centralizer(g: &PermGroup, x: &Permutation) -> Result<PermGroup> {
    g.check_degree(x)?;
    let lower = if g.has(x) {
        PermGroup::from_gens_unchecked(g.degree(), vec![x.clone()])
    } else {
        PermGroup::trivial(g.degree())
    };
    let prop = Centralizing {
        data: vec![CycleData::new(x)],
    };
    Ok(subgroup_search(g, &lower, &prop))
}

/// Centralizer in `g` of every element of `h`.
pub fn centralizer_of_group(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    if g.degree() != h.degree() {
        return Err(GroupError::DegreeMismatch {
            expected: g.degree(),
            found: h.degree(),
        });
    }
    let gens = h.reduced_generators();
    if gens.is_empty() {
        return Ok(g.clone());
    }
    let prop = Centralizing {
        data: gens.iter().map(CycleData::new).collect(),
    };
    Ok(subgroup_search(g, &PermGroup::trivial(g.degree()), &prop))
}

/// Normalizer `N_G(H)` for `H <= G`.
pub fn normalizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    if !h.is_subgroup_of(g) {
        return Err(GroupError::NotSubgroup("H is not contained in G".into()));
    }
    if h.is_trivial() || h.same_elements(g) {
        return Ok(g.clone());
    }
    let prop = Conjugating {
        src: OrbitStructure::new(h),
        dst: OrbitStructure::new(h),
        src_group: h,
        dst_group: h,
    };
    Ok(subgroup_search(g, h, &prop))
}

/// Some `x` in `g` with `p^x = q`, if the two subgroups are conjugate in `g`.
pub fn conjugating_element(g: &PermGroup, p: &PermGroup, q: &PermGroup) -> Option<Permutation> {
    if p.degree() != q.degree() || p.order() != q.order() {
        return None;
    }
    let prop = Conjugating {
        src: OrbitStructure::new(p),
        dst: OrbitStructure::new(q),
        src_group: p,
        dst_group: q,
    };
    coset_search(g, &prop)
}

/// Some `x` in `g` with `a^x = b` for elements.
pub fn conjugating_element_of_elements(g: &PermGroup, a: &Permutation, b: &Permutation) -> Option<Permutation> {
    if a.cycle_type() != b.cycle_type() {
        return None;
    }
    struct ElementConj {
        src: CycleData,
        dst: CycleData,
        a: Permutation,
        b: Permutation,
    }
    impl SearchProperty for ElementConj {
        fn prune(&self, base: &[usize], images: &[usize]) -> bool {
            let j = base.len() - 1;
            let (x, c) = (base[j], images[j]);
            let (s, d) = (&self.src, &self.dst);
            if s.len[x] != d.len[c] {
                return false;
            }
            let l = s.len[x];
            for k in 0..j {
                let (y, e) = (base[k], images[k]);
                let same_s = s.cycle_of[x] == s.cycle_of[y];
                let same_d = d.cycle_of[c] == d.cycle_of[e];
                if same_s != same_d {
                    return false;
                }
                if same_s && (s.pos[x] + l - s.pos[y]) % l != (d.pos[c] + l - d.pos[e]) % l {
                    return false;
                }
            }
            true
        }
        fn accept(&self, g: &Permutation) -> bool {
            self.a.conjugate_by(g) == self.b
        }
    }
    let prop = ElementConj {
        src: CycleData::new(a),
        dst: CycleData::new(b),
        a: a.clone(),
        b: b.clone(),
    };
    coset_search(g, &prop)
}
