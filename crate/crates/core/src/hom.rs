//! Homomorphisms given by generator images, certified through the graph subgroup.

use rustc_hash::FxHashMap;

use crate::caps::Caps;
use crate::chain::StabChain;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// `domain -> codomain`, determined by the images of the domain generators.
///
/// The graph `{(g, φ(g))}` generates a subgroup of `domain × codomain` acting on
/// the disjoint union of the point sets; the map is a well-defined homomorphism
/// exactly when that subgroup has the order of the domain.
#[derive(Clone, Debug)]
pub struct GroupHom {
    domain: PermGroup,
    codomain: PermGroup,
    images: Vec<Permutation>,
    /// Graph subgroup with the domain base first.
    by_domain: StabChain,
    /// Graph subgroup with the codomain base first.
    by_codomain: StabChain,
}

fn pair(a: &Permutation, b: &Permutation) -> Permutation {
    let m = a.degree();
    let mut images: Vec<u32> = a.images().to_vec();
    images.extend(b.images().iter().map(|&x| x + m as u32));
    Permutation::from_images_unchecked(images)
}

fn left(x: &Permutation, m: usize) -> Permutation {
    x.restrict(m)
}

fn right(x: &Permutation, m: usize) -> Permutation {
    let images = x.images()[m..].iter().map(|&y| y - m as u32).collect();
    Permutation::from_images_unchecked(images)
}

impl GroupHom {
    pub fn new(domain: &PermGroup, codomain: &PermGroup, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != domain.generators().len() {
            return Err(GroupError::NotHomomorphism(format!(
                "{} images for {} generators",
                images.len(),
                domain.generators().len()
            )));
        }
        for x in &images {
            codomain.check_degree(x)?;
            if !codomain.has(x) {
                return Err(GroupError::NotHomomorphism(format!("{x} is not in the codomain")));
            }
        }
        let m = domain.degree();
        let gens: Vec<Permutation> = domain
            .generators()
            .iter()
            .zip(&images)
            .map(|(g, h)| pair(g, h))
            .collect();
        let deg = m + codomain.degree();
        let by_domain = StabChain::with_base_prefix(deg, &gens, &domain.chain().base());
        if by_domain.order() != domain.order() {
            return Err(GroupError::NotHomomorphism(
                "generator images do not respect the relations of the domain".into(),
            ));
        }
        let cod_base: Vec<usize> = codomain.chain().base().iter().map(|&b| b + m).collect();
        let by_codomain = StabChain::with_base_prefix(deg, &by_domain.strong_generators(), &cod_base);
        Ok(GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            images,
            by_domain,
            by_codomain,
        })
    }

    pub fn domain(&self) -> &PermGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &PermGroup {
        &self.codomain
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.images
    }

    /// `φ(g)` for `g` in the domain.
    pub fn apply(&self, g: &Permutation) -> Result<Permutation> {
        self.domain.check_degree(g)?;
        let m = self.domain.degree();
        let mut residue = g.clone();
        let mut acc = Permutation::identity(m + self.codomain.degree());
        let dom_levels = self.domain.chain().levels().len();
        for level in self.by_domain.levels().iter().take(dom_levels) {
            let beta = residue.apply(level.base());
            let u = level
                .rep(beta)
                .ok_or_else(|| GroupError::NotSubgroup(format!("{g} is not in the domain")))?;
            residue = residue.compose(&left(u, m).inverse());
            acc = u.compose(&acc);
        }
        if !residue.is_identity() {
            return Err(GroupError::NotSubgroup(format!("{g} is not in the domain")));
        }
        Ok(right(&acc, m))
    }

    /// The image subgroup.
    pub fn image(&self) -> PermGroup {
        PermGroup::from_gens_unchecked(self.codomain.degree(), self.images.clone())
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.codomain.order()
    }

    pub fn kernel(&self) -> PermGroup {
        let m = self.domain.degree();
        let k = self.codomain.chain().levels().len();
        let gens = self
            .by_codomain
            .levels()
            .get(k)
            .map(|l| l.gens().iter().map(|x| left(x, m)).collect())
            .unwrap_or_default();
        PermGroup::from_gens_unchecked(m, gens)
    }

    /// Some preimage of `h`, or `None` when `h` is outside the image.
    pub fn preimage_of(&self, h: &Permutation) -> Option<Permutation> {
        let m = self.domain.degree();
        let k = self.codomain.chain().levels().len();
        let mut residue = h.clone();
        let mut acc = Permutation::identity(m + self.codomain.degree());
        for level in self.by_codomain.levels().iter().take(k) {
            let beta = residue.apply(level.base() - m);
            let u = level.rep(beta + m)?;
            residue = residue.compose(&right(u, m).inverse());
            acc = u.compose(&acc);
        }
        residue.is_identity().then(|| left(&acc, m))
    }

    /// Full preimage of a subgroup of the codomain.
    pub fn preimage(&self, h: &PermGroup) -> Result<PermGroup> {
        let mut gens = self.kernel().generators().to_vec();
        for x in h.generators() {
            let y = self
                .preimage_of(x)
                .ok_or_else(|| GroupError::NotSubgroup(format!("{x} is not in the image")))?;
            gens.push(y);
        }
        Ok(PermGroup::from_gens_unchecked(self.domain.degree(), gens))
    }

    /// Image of a subgroup of the domain.
    pub fn image_of_subgroup(&self, h: &PermGroup) -> Result<PermGroup> {
        let gens = h
            .generators()
            .iter()
            .map(|x| self.apply(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(PermGroup::from_gens_unchecked(self.codomain.degree(), gens))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        let images = self.images.iter().map(|x| next.apply(x)).collect::<Result<Vec<_>>>()?;
        GroupHom::new(&self.domain, &next.codomain, images)
    }
}

/// `G/N` as the action on right cosets of `N`, with the quotient map.
pub fn quotient_action(g: &PermGroup, n: &PermGroup, caps: &Caps) -> Result<(PermGroup, GroupHom)> {
    if !n.is_subgroup_of(g) {
        return Err(GroupError::NotSubgroup("N is not contained in G".into()));
    }
    if !n.is_normalized_by(g) {
        return Err(GroupError::NotNormal("N is not normal in G".into()));
    }
    let index = g.order() / n.order();
    if index > num_bigint::BigUint::from(caps.degree) {
        return Err(GroupError::cap("degree", caps.degree as u64, index));
    }
    let index: usize = index.try_into().unwrap();
    // G permutes the N-orbits; the induced map on orbits only depends on the coset
    let orbits = n.orbits();
    let mut orbit_id = vec![0u32; g.degree()];
    for (k, o) in orbits.iter().enumerate() {
        for &x in o {
            orbit_id[x] = k as u32;
        }
    }
    let key = |x: &Permutation| -> Vec<u32> { orbits.iter().map(|o| orbit_id[x.apply(o[0])]).collect() };
    let mut reps: Vec<Permutation> = vec![g.identity()];
    let mut rep_inv: Vec<Permutation> = vec![g.identity()];
    let mut buckets: FxHashMap<Vec<u32>, Vec<usize>> = FxHashMap::default();
    buckets.entry(key(&reps[0])).or_default().push(0);
    let find = |x: &Permutation, reps_inv: &[Permutation], buckets: &FxHashMap<Vec<u32>, Vec<usize>>| {
        buckets
            .get(&key(x))
            .and_then(|cands| cands.iter().copied().find(|&c| n.has(&x.compose(&reps_inv[c]))))
    };
    let mut action: Vec<Vec<u32>> = vec![Vec::new(); g.generators().len()];
    let mut i = 0;
    while i < reps.len() {
        for (s_idx, s) in g.generators().iter().enumerate() {
            let y = reps[i].compose(s);
            let j = match find(&y, &rep_inv, &buckets) {
                Some(j) => j,
                None => {
                    let j = reps.len();
                    buckets.entry(key(&y)).or_default().push(j);
                    rep_inv.push(y.inverse());
                    reps.push(y);
                    j
                }
            };
            action[s_idx].push(j as u32);
        }
        i += 1;
    }
    debug_assert_eq!(reps.len(), index);
    let images: Vec<Permutation> = action.into_iter().map(Permutation::from_images_unchecked).collect();
    let q = PermGroup::from_gens_unchecked(index, images.clone());
    let hom = GroupHom::new(g, &q, images)?;
    Ok((q, hom))
}
