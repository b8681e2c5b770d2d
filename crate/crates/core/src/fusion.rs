//! Fusion of `p`-subgroups: classes of subgroups of a Sylow subgroup, which of
//! them are conjugate in `G`, automizers, and Alperin factorizations.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::backtrack::{centralizer_of_group, conjugating_element, normalizer};
use crate::caps::Caps;
use crate::enumerate::ElementTable;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::hom::{quotient_action, GroupHom};
use crate::normal::NormalLattice;
use crate::perm::Permutation;
use crate::sylow::{prime_divisors, sylow_seeded};

/// `N_G(P)/C_G(P)`, with elements of `N_G(P)` whose conjugation actions generate it.
#[derive(Clone, Debug)]
pub struct Automizer {
    pub order: u64,
    pub generators: Vec<Permutation>,
    /// For each generator, the images of the generators of `P`.
    pub actions: Vec<Vec<Permutation>>,
}

/// The automizer of `P` in `G`; each generator is checked to act as an automorphism of `P`.
pub fn automizer(g: &PermGroup, p: &PermGroup) -> Result<Automizer> {
    if !p.is_subgroup_of(g) {
        return Err(GroupError::NotSubgroup("P is not contained in G".into()));
    }
    let n = normalizer(g, p)?;
    let c = centralizer_of_group(&n, p)?;
    let order: u64 = (n.order() / c.order()).try_into().expect("automizer order fits u64");
    let mut generators = Vec::new();
    let mut actions = Vec::new();
    let mut acc = c.clone();
    for x in n.reduced_generators() {
        if acc.has(&x) {
            continue;
        }
        acc = acc.closure(std::slice::from_ref(&x));
        let images: Vec<Permutation> = p.generators().iter().map(|y| y.conjugate_by(&x)).collect();
        let hom = GroupHom::new(p, p, images.clone())?;
        if !hom.is_surjective() {
            return Err(GroupError::NotHomomorphism("conjugation is not onto P".into()));
        }
        generators.push(x);
        actions.push(images);
    }
    Ok(Automizer {
        order,
        generators,
        actions,
    })
}

/// One local map in an Alperin factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    /// Class whose automizer supplies the map; `None` for conjugation by a generator of `S`.
    pub class: Option<usize>,
    /// Index of the automizer generator, or of the generator of `S`.
    pub generator: usize,
    pub inverse: bool,
    /// Subgroup ids of the restriction: `source` is mapped onto `target`.
    pub source: usize,
    pub target: usize,
}

/// A chain of local maps from class representative `from` to class representative `to`.
#[derive(Clone, Debug, Serialize)]
pub struct FusionChain {
    pub from: usize,
    pub to: usize,
    pub steps: Vec<ChainStep>,
    /// The product of the conjugating elements along the chain.
    #[serde(serialize_with = "ser_perm")]
    pub element: Permutation,
}

fn ser_perm<S: serde::Serializer>(x: &Permutation, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Subgroups of a Sylow subgroup up to `S`-conjugacy, with their fusion in `G`.
pub struct FusionTable {
    ambient: PermGroup,
    p: u64,
    sylow: PermGroup,
    table: ElementTable,
    /// Every subgroup of `S`, sorted by order then elements.
    subgroups: Vec<FixedBitSet>,
    lookup: FxHashMap<FixedBitSet, usize>,
    /// `S`-class id of each subgroup.
    class_of: Vec<usize>,
    /// Per class, its subgroup ids; the first is the representative.
    classes: Vec<Vec<usize>>,
    /// `G`-class of each `S`-class (the smallest `S`-class id in it), once computed.
    fusion: Option<Vec<usize>>,
    /// Per `S`-class, `w` with `R^w = P` for `R` the representative of its `G`-class root.
    witnesses: Vec<Option<Permutation>>,
    automizers: Vec<Option<Automizer>>,
    /// One fully normalized class per `G`-class; their automizers give the local maps.
    local: Vec<usize>,
}

/// Enumerates all subgroups of `S` by extending each subgroup `H` by elements
/// `x` normalizing `H` with `x^p ∈ H`; in a `p`-group every subgroup arises so.
fn all_subgroups(table: &ElementTable, p: u64) -> Vec<FixedBitSet> {
    let n = table.len();
    let trivial = table.singleton(0);
    let mut seen: FxHashMap<FixedBitSet, ()> = FxHashMap::default();
    seen.insert(trivial.clone(), ());
    let mut found = vec![(trivial, Vec::<usize>::new())];
    let mut i = 0;
    while i < found.len() {
        let (h, gens) = found[i].clone();
        for x in 1..n {
            if h.contains(x) || !h.contains(table.pow(x, p)) {
                continue;
            }
            if !gens.iter().all(|&y| h.contains(table.conj(y, x))) {
                continue;
            }
            let cyc = table.generate(&[x]);
            let k = table.product_set(&h, &cyc);
            if seen.insert(k.clone(), ()).is_none() {
                let mut kg = gens.clone();
                kg.push(x);
                found.push((k, kg));
            }
        }
        i += 1;
    }
    let mut out: Vec<FixedBitSet> = found.into_iter().map(|(s, _)| s).collect();
    out.sort_by(|a, b| {
        a.count_ones(..)
            .cmp(&b.count_ones(..))
            .then_with(|| a.ones().cmp(b.ones()))
    });
    out
}

/// Sorted cycle types of the elements: a conjugation invariant of a subgroup.
fn signature(table: &ElementTable, set: &FixedBitSet) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = set.ones().map(|x| table.element(x).cycle_type()).collect();
    v.sort();
    v
}

impl FusionTable {
    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn sylow(&self) -> &PermGroup {
        &self.sylow
    }

    pub fn subgroup_count(&self) -> usize {
        self.subgroups.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn subgroup(&self, id: usize) -> PermGroup {
        self.table.to_group(&self.subgroups[id])
    }

    pub fn subgroup_order(&self, id: usize) -> u64 {
        self.subgroups[id].count_ones(..) as u64
    }

    pub fn class_members(&self, class: usize) -> &[usize] {
        &self.classes[class]
    }

    pub fn representative_id(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    pub fn representative(&self, class: usize) -> PermGroup {
        self.subgroup(self.representative_id(class))
    }

    pub fn class_of_subgroup(&self, id: usize) -> usize {
        self.class_of[id]
    }

    /// `G`-class root per `S`-class; `None` before `g_fusion`.
    pub fn fusion(&self) -> Option<&[usize]> {
        self.fusion.as_deref()
    }

    pub fn fused(&self, a: usize, b: usize) -> Option<bool> {
        self.fusion.as_ref().map(|f| f[a] == f[b])
    }

    /// `g` with `P_a^g = P_b` for fused classes.
    pub fn witness(&self, a: usize, b: usize) -> Option<Permutation> {
        if !self.fused(a, b)? {
            return None;
        }
        let wa = self.witnesses[a].as_ref()?;
        let wb = self.witnesses[b].as_ref()?;
        Some(wa.inverse().compose(wb))
    }

    /// Fully normalized classes, one per `G`-class (empty before `g_fusion`).
    pub fn local_classes(&self) -> &[usize] {
        &self.local
    }

    pub fn automizer(&self, class: usize) -> Option<&Automizer> {
        self.automizers[class].as_ref()
    }

    fn conj_set(&self, set: &FixedBitSet, g: &Permutation) -> Option<FixedBitSet> {
        let mut out = self.table.empty_set();
        for x in set.ones() {
            out.insert(self.table.index_of(&self.table.element(x).conjugate_by(g))?);
        }
        Some(out)
    }

    fn normalizer_in_s_order(&self, set: &FixedBitSet) -> usize {
        let gens = self.table.small_generating_set(set);
        (0..self.table.len())
            .filter(|&x| gens.iter().all(|&y| set.contains(self.table.conj(y, x))))
            .count()
    }
}

/// Subgroups of a Sylow `p`-subgroup of `G`, grouped into `S`-classes.
pub fn subgroup_classes_of_sylow(g: &PermGroup, p: u64, caps: &Caps) -> Result<FusionTable> {
    subgroup_classes_seeded(g, p, caps, 0)
}

pub fn subgroup_classes_seeded(g: &PermGroup, p: u64, caps: &Caps, seed: u64) -> Result<FusionTable> {
    let sylow = sylow_seeded(g, p, seed)?;
    sylow.order_within(caps.subgroups, "subgroups")?;
    let table = ElementTable::new(&sylow, caps)?;
    let subgroups = all_subgroups(&table, p);
    let lookup: FxHashMap<FixedBitSet, usize> = subgroups.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let sgens: Vec<usize> = sylow.generators().iter().map(|x| table.index_of(x).unwrap()).collect();
    let mut class_of = vec![usize::MAX; subgroups.len()];
    let mut classes = Vec::new();
    for start in 0..subgroups.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[start] = id;
        let mut members = vec![start];
        let mut i = 0;
        while i < members.len() {
            let h = &subgroups[members[i]];
            for &s in &sgens {
                let mut img = table.empty_set();
                for x in h.ones() {
                    img.insert(table.conj(x, s));
                }
                let j = lookup[&img];
                if class_of[j] == usize::MAX {
                    class_of[j] = id;
                    members.push(j);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        classes.push(members);
    }
    let k = classes.len();
    Ok(FusionTable {
        ambient: g.clone(),
        p,
        sylow,
        table,
        subgroups,
        lookup,
        class_of,
        classes,
        fusion: None,
        witnesses: vec![None; k],
        automizers: vec![None; k],
        local: Vec::new(),
    })
}

/// Decides which `S`-classes are conjugate in `G`, storing witnesses, and moves
/// each `G`-class's representatives to a fully normalized subgroup (largest
/// `N_S(P)`, so that `N_S(P)` is a Sylow subgroup of `N_G(P)`).
pub fn g_fusion(t: &mut FusionTable) -> Result<()> {
    let k = t.classes.len();
    let sigs: Vec<Vec<Vec<usize>>> = (0..k)
        .map(|c| signature(&t.table, &t.subgroups[t.representative_id(c)]))
        .collect();
    let mut root = vec![usize::MAX; k];
    let mut witnesses: Vec<Option<Permutation>> = vec![None; k];
    let mut roots: Vec<usize> = Vec::new();
    for c in 0..k {
        let pc = t.representative(c);
        let mut hit = None;
        for &r in &roots {
            if sigs[r] != sigs[c] {
                continue;
            }
            if let Some(w) = conjugating_element(&t.ambient, &t.representative(r), &pc) {
                hit = Some((r, w));
                break;
            }
        }
        match hit {
            Some((r, w)) => {
                root[c] = r;
                witnesses[c] = Some(w);
            }
            None => {
                root[c] = c;
                witnesses[c] = Some(t.ambient.identity());
                roots.push(c);
            }
        }
    }

    // within each S-class, move the representative to the member with the
    // largest normalizer in S
    let mut ns_order = vec![0usize; k];
    for c in 0..k {
        let best = t.classes[c]
            .iter()
            .copied()
            .map(|id| (t.normalizer_in_s_order(&t.subgroups[id]), std::cmp::Reverse(id)))
            .max()
            .map(|(_, std::cmp::Reverse(id))| id)
            .unwrap();
        let old = t.representative_id(c);
        if best != old {
            // move the witness from the old representative to the new one
            let (from, to) = (t.subgroup(old), t.subgroup(best));
            let s = conjugating_element(&t.sylow, &from, &to).expect("same S-class");
            witnesses[c] = witnesses[c].take().map(|w| w.compose(&s));
            let pos = t.classes[c].iter().position(|&x| x == best).unwrap();
            t.classes[c].swap(0, pos);
        }
        ns_order[c] = t.normalizer_in_s_order(&t.subgroups[best]);
    }
    // per G-class, the representative with the largest normalizer in S is fully
    // normalized: its normalizer in S is a Sylow subgroup of its normalizer in G
    let mut local = Vec::new();
    for &r in &roots {
        let c = (0..k)
            .filter(|&c| root[c] == r)
            .max_by_key(|&c| (ns_order[c], std::cmp::Reverse(c)))
            .unwrap();
        let ng = normalizer(&t.ambient, &t.representative(c))?;
        if crate::sylow::p_part(&ng.order(), t.p) != num_bigint::BigUint::from(ns_order[c]) {
            return Err(GroupError::InvalidArgument(format!(
                "class {c} is not fully normalized"
            )));
        }
        local.push(c);
    }
    local.sort_unstable();
    t.local = local;
    t.fusion = Some(root);
    t.witnesses = witnesses;
    for c in 0..k {
        let a = automizer(&t.ambient, &t.representative(c))?;
        t.automizers[c] = Some(a);
    }
    Ok(())
}

/// Result of the Alperin factorization check.
#[derive(Clone, Debug, Serialize)]
pub struct AlperinReport {
    pub holds: bool,
    pub chains: Vec<FusionChain>,
}

/// Closes `S`-conjugation and the automizers of the fully normalized
/// representatives, restricted to their subgroups, and compares the result
/// with `G`-fusion.
pub fn alperin_closure_check(t: &FusionTable) -> Result<AlperinReport> {
    let fusion = t
        .fusion
        .as_ref()
        .ok_or_else(|| GroupError::InvalidArgument("fusion has not been computed".into()))?;
    let n = t.subgroups.len();
    // edges: (neighbour, step, element)
    let mut adj: Vec<Vec<(usize, ChainStep, Permutation)>> = vec![Vec::new(); n];
    let mut add = |a: usize, b: usize, class: Option<usize>, generator: usize, x: &Permutation| {
        adj[a].push((
            b,
            ChainStep {
                class,
                generator,
                inverse: false,
                source: a,
                target: b,
            },
            x.clone(),
        ));
        adj[b].push((
            a,
            ChainStep {
                class,
                generator,
                inverse: true,
                source: b,
                target: a,
            },
            x.inverse(),
        ));
    };
    for (gi, s) in t.sylow.generators().iter().enumerate() {
        for a in 0..n {
            let img = t.conj_set(&t.subgroups[a], s).expect("S normalizes its subgroups' set");
            add(a, t.lookup[&img], None, gi, s);
        }
    }
    for &c in &t.local {
        let rep = &t.subgroups[t.representative_id(c)];
        let aut = t.automizers[c].as_ref().expect("automizers computed with fusion");
        for (gi, x) in aut.generators.iter().enumerate() {
            for a in 0..n {
                if t.subgroups[a].is_subset(rep) {
                    let img = t.conj_set(&t.subgroups[a], x).expect("automizer preserves P");
                    add(a, t.lookup[&img], Some(c), gi, x);
                }
            }
        }
    }

    // components of the closure, with BFS trees rooted at class representatives
    let mut comp = vec![usize::MAX; n];
    let mut holds = true;
    let mut chains = Vec::new();
    for c in 0..t.classes.len() {
        let start = t.representative_id(c);
        if comp[start] != usize::MAX {
            continue;
        }
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut queue = VecDeque::from([start]);
        comp[start] = c;
        while let Some(a) = queue.pop_front() {
            for (e, (b, _, _)) in adj[a].iter().enumerate() {
                if comp[*b] == usize::MAX {
                    comp[*b] = c;
                    parent[*b] = Some((a, e));
                    queue.push_back(*b);
                }
            }
        }
        // every class reached from here must be fused with c, and conversely
        for d in 0..t.classes.len() {
            let reached = comp[t.representative_id(d)] == c;
            if reached != (fusion[d] == fusion[c]) {
                holds = false;
            }
            if reached && d != c {
                let mut steps = Vec::new();
                let mut elems = Vec::new();
                let mut cur = t.representative_id(d);
                while let Some((a, e)) = parent[cur] {
                    let (_, step, x) = &adj[a][e];
                    steps.push(step.clone());
                    elems.push(x.clone());
                    cur = a;
                }
                steps.reverse();
                elems.reverse();
                let element = elems.iter().fold(t.ambient.identity(), |acc, x| acc.compose(x));
                let img = t.conj_set(&t.subgroups[start], &element);
                if img.as_ref() != Some(&t.subgroups[t.representative_id(d)]) {
                    holds = false;
                }
                chains.push(FusionChain {
                    from: c,
                    to: d,
                    steps,
                    element,
                });
            }
        }
    }
    Ok(AlperinReport { holds, chains })
}

/// Does every representative have the same automizer order in `G` and, as an
/// image, in `G/O_{p'}(G)`?
pub fn p_prime_kernel_invariance(t: &FusionTable, caps: &Caps) -> Result<bool> {
    let g = &t.ambient;
    let lat = NormalLattice::new(g, caps)?;
    let others: Vec<u64> = prime_divisors(&g.order()).into_iter().filter(|&q| q != t.p).collect();
    let k = lat.group(lat.pi_core(&others));
    if k.is_trivial() {
        return Ok(true);
    }
    let (q, hom) = quotient_action(g, &k, caps)?;
    for c in 0..t.classes.len() {
        let p = t.representative(c);
        let here = match &t.automizers[c] {
            Some(a) => a.order,
            None => automizer(g, &p)?.order,
        };
        let there = automizer(&q, &hom.image_of_subgroup(&p)?)?.order;
        if here != there {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct ClassJson {
    id: usize,
    order: u64,
    size: usize,
    generators: Vec<String>,
    g_class: Option<usize>,
    automizer_order: Option<u64>,
    automizer_generators: Vec<String>,
}

#[derive(Serialize)]
struct FusionJson<'a> {
    p: u64,
    sylow_order: String,
    sylow_generators: Vec<String>,
    subgroups: usize,
    classes: Vec<ClassJson>,
    fusion_matrix: Vec<Vec<bool>>,
    /// `(a, b, g)` with `P_a^g = P_b`, for fused pairs `a < b`.
    witnesses: Vec<(usize, usize, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alperin: Option<&'a AlperinReport>,
}

impl FusionTable {
    pub fn to_json(&self, alperin: Option<&AlperinReport>) -> String {
        let k = self.classes.len();
        let classes = (0..k)
            .map(|c| ClassJson {
                id: c,
                order: self.subgroup_order(self.representative_id(c)),
                size: self.classes[c].len(),
                generators: self
                    .representative(c)
                    .generators()
                    .iter()
                    .map(|x| x.to_string())
                    .collect(),
                g_class: self.fusion.as_ref().map(|f| f[c]),
                automizer_order: self.automizers[c].as_ref().map(|a| a.order),
                automizer_generators: self.automizers[c]
                    .as_ref()
                    .map(|a| a.generators.iter().map(|x| x.to_string()).collect())
                    .unwrap_or_default(),
            })
            .collect();
        let fusion_matrix = (0..k)
            .map(|a| (0..k).map(|b| self.fused(a, b).unwrap_or(a == b)).collect())
            .collect();
        let mut witnesses = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                if let Some(w) = self.witness(a, b) {
                    witnesses.push((a, b, w.to_string()));
                }
            }
        }
        let j = FusionJson {
            p: self.p,
            sylow_order: self.sylow.order().to_string(),
            sylow_generators: self.sylow.generators().iter().map(|x| x.to_string()).collect(),
            subgroups: self.subgroups.len(),
            classes,
            fusion_matrix,
            witnesses,
            alperin,
        };
        let mut s = serde_json::to_string_pretty(&j).expect("fusion report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{alternating, cyclic, symmetric};

    fn fused_table(g: &PermGroup, p: u64) -> FusionTable {
        let mut t = subgroup_classes_of_sylow(g, p, &Caps::default()).unwrap();
        g_fusion(&mut t).unwrap();
        t
    }

    #[test]
    fn class_counts() {
        let caps = Caps::default();
        let t = subgroup_classes_of_sylow(&symmetric(4).unwrap(), 2, &caps).unwrap();
        assert_eq!(t.subgroup_count(), 10);
        assert_eq!(t.class_count(), 8);
        let t = subgroup_classes_of_sylow(&symmetric(3).unwrap(), 3, &caps).unwrap();
        assert_eq!(t.class_count(), 2);
        let t = subgroup_classes_of_sylow(&cyclic(4).unwrap(), 2, &caps).unwrap();
        assert_eq!(t.class_count(), 3);
    }

    #[test]
    fn witnesses_verify() {
        let t = fused_table(&symmetric(4).unwrap(), 2);
        let k = t.class_count();
        for a in 0..k {
            for b in 0..k {
                if let Some(w) = t.witness(a, b) {
                    let pa = t.representative(a);
                    let img = PermGroup::new(4, pa.generators().iter().map(|x| x.conjugate_by(&w)).collect()).unwrap();
                    assert!(img.same_elements(&t.representative(b)));
                }
            }
        }
    }

    #[test]
    fn automizer_orders() {
        let s4 = symmetric(4).unwrap();
        let v4 = PermGroup::new(
            4,
            vec![
                Permutation::parse(4, "(1 2)(3 4)").unwrap(),
                Permutation::parse(4, "(1 3)(2 4)").unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(automizer(&s4, &v4).unwrap().order, 6);
        let s3 = symmetric(3).unwrap();
        let t = PermGroup::new(3, vec![Permutation::parse(3, "(1 2)").unwrap()]).unwrap();
        assert_eq!(automizer(&s3, &t).unwrap().order, 1);
        assert_eq!(automizer(&s3, &PermGroup::trivial(3)).unwrap().order, 1);
        let a4 = alternating(4).unwrap();
        let t4 = PermGroup::new(4, vec![Permutation::parse(4, "(1 2)").unwrap()]).unwrap();
        assert!(automizer(&a4, &t4).is_err());
    }

    #[test]
    fn alperin_small() {
        for (g, p) in [
            (symmetric(4).unwrap(), 2),
            (alternating(5).unwrap(), 2),
            (symmetric(3).unwrap(), 3),
        ] {
            let t = fused_table(&g, p);
            let r = alperin_closure_check(&t).unwrap();
            assert!(r.holds);
        }
    }

    #[test]
    fn kernel_invariance() {
        let caps = Caps::default();
        let t = fused_table(&symmetric(3).unwrap(), 2);
        assert!(p_prime_kernel_invariance(&t, &caps).unwrap());
        let t = fused_table(&symmetric(4).unwrap(), 3);
        assert!(p_prime_kernel_invariance(&t, &caps).unwrap());
    }
}
