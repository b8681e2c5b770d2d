//! Brute-force oracles and the test corpus. Nothing here uses stabilizer
//! chains, element tables or the lattice code: groups are closed by plain BFS
//! over hashed permutations.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use profin::{Caps, PermGroup, Permutation};
use profin_cli::spec::parse_spec;

pub fn build(spec: &str) -> PermGroup {
    parse_spec(spec)
        .unwrap_or_else(|e| panic!("{spec}: {e}"))
        .build(&Caps::default(), 0)
        .unwrap_or_else(|e| panic!("{spec}: {e}"))
}

/// All elements of `⟨gens⟩` by breadth-first closure.
pub fn closure(degree: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let y = out[i].compose(g);
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

/// Elements of a group indexed for set arithmetic.
pub struct Brute {
    pub degree: usize,
    pub gens: Vec<Permutation>,
    pub elems: Vec<Permutation>,
    pub index: HashMap<Permutation, usize>,
}

impl Brute {
    pub fn new(g: &PermGroup) -> Self {
        let elems = closure(g.degree(), g.generators());
        let index = elems.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        Brute {
            degree: g.degree(),
            gens: g.generators().to_vec(),
            elems,
            index,
        }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    /// Index set of `⟨gens⟩`.
    pub fn span(&self, gens: &[Permutation]) -> BTreeSet<usize> {
        closure(self.degree, gens).iter().map(|x| self.index[x]).collect()
    }

    /// Conjugacy class of `x`, as an orbit under conjugation by the generators.
    pub fn class(&self, x: usize) -> Vec<usize> {
        let mut seen = BTreeSet::from([x]);
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for g in &self.gens {
                let z = self.index[&self.elems[y].conjugate_by(g)];
                if seen.insert(z) {
                    stack.push(z);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Every normal subgroup: close `{1}` under `N ↦ N⟨x^G⟩`.
    pub fn normal_subgroups(&self) -> BTreeSet<BTreeSet<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut covered = vec![false; self.order()];
        for x in 0..self.order() {
            if !covered[x] {
                let c = self.class(x);
                for &y in &c {
                    covered[y] = true;
                }
                classes.push(c);
            }
        }
        let trivial = self.span(&[]);
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::from([trivial.clone()]);
        let mut queue: Vec<(BTreeSet<usize>, Vec<Permutation>)> = vec![(trivial, Vec::new())];
        while let Some((set, gens)) = queue.pop() {
            for c in &classes {
                if set.contains(&c[0]) {
                    continue;
                }
                let mut g2 = gens.clone();
                let mut cur = set.clone();
                for &y in c {
                    if !cur.contains(&y) {
                        g2.push(self.elems[y].clone());
                        cur = self.span(&g2);
                    }
                }
                if found.insert(cur.clone()) {
                    queue.push((cur, g2));
                }
            }
        }
        found
    }

    /// Index set of the elements of a subgroup given by generators.
    pub fn set_of(&self, h: &PermGroup) -> BTreeSet<usize> {
        self.span(h.generators())
    }

    /// `[A, B]` for index sets of subgroups.
    pub fn commutator(&self, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut seen = HashSet::new();
        for &x in a {
            for &y in b {
                let c = self.elems[x].commutator(&self.elems[y]);
                if seen.insert(c.clone()) {
                    gens.push(c);
                }
            }
        }
        self.span(&gens)
    }

    pub fn derived(&self) -> BTreeSet<usize> {
        let all: BTreeSet<usize> = (0..self.order()).collect();
        self.commutator(&all, &all)
    }

    /// `Φ(S) = S'S^p` for a `p`-group.
    pub fn frattini_p(&self, p: u64) -> BTreeSet<usize> {
        let mut gens: Vec<Permutation> = self.elems.iter().map(|x| x.pow(p)).collect();
        let all: BTreeSet<usize> = (0..self.order()).collect();
        gens.extend(self.commutator(&all, &all).iter().map(|&i| self.elems[i].clone()));
        self.span(&gens)
    }

    /// Elements of the group commuting with every generator of `h`.
    pub fn centralizer(&self, h: &PermGroup) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| {
                h.generators()
                    .iter()
                    .all(|y| self.elems[i].compose(y) == y.compose(&self.elems[i]))
            })
            .collect()
    }

    /// Is there an element conjugating `a` onto `b`?
    pub fn conjugate(&self, a: &PermGroup, b: &BTreeSet<usize>) -> bool {
        self.elems.iter().any(|x| {
            a.generators()
                .iter()
                .all(|y| b.contains(&self.index[&y.conjugate_by(x)]))
        })
    }

    /// All automorphisms, as maps on indices, found by trying every tuple of
    /// images of the generators and checking the induced map on words.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let orders: Vec<u64> = self.elems.iter().map(|x| x.order()).collect();
        // a word for each element: parent element and generator
        let mut parent = vec![(usize::MAX, usize::MAX); n];
        let mut bfs = vec![0usize];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut i = 0;
        while i < bfs.len() {
            let x = bfs[i];
            for (j, g) in self.gens.iter().enumerate() {
                let y = self.index[&self.elems[x].compose(g)];
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = (x, j);
                    bfs.push(y);
                }
            }
            i += 1;
        }
        let gen_idx: Vec<usize> = self.gens.iter().map(|g| self.index[g]).collect();
        let mut out = Vec::new();
        let mut tuple = vec![0usize; gen_idx.len()];
        loop {
            if gen_idx.iter().zip(&tuple).all(|(&g, &t)| orders[g] == orders[t]) {
                let mut f = vec![0usize; n];
                for &x in &bfs[1..] {
                    let (px, j) = parent[x];
                    f[x] = self.index[&self.elems[f[px]].compose(&self.elems[tuple[j]])];
                }
                let hom = (0..n).all(|a| {
                    self.gens.iter().enumerate().all(|(j, g)| {
                        let ag = self.index[&self.elems[a].compose(g)];
                        f[ag] == self.index[&self.elems[f[a]].compose(&self.elems[tuple[j]])]
                    })
                });
                if hom && f.iter().collect::<HashSet<_>>().len() == n {
                    out.push(f);
                }
            }
            // next tuple
            let mut k = 0;
            loop {
                if k == tuple.len() {
                    return out;
                }
                tuple[k] += 1;
                if tuple[k] < n {
                    break;
                }
                tuple[k] = 0;
                k += 1;
            }
        }
    }
}

fn ilog(p: u64, mut n: usize) -> u32 {
    let mut e = 0;
    while n > 1 {
        assert_eq!(n as u64 % p, 0);
        n /= p as usize;
        e += 1;
    }
    e
}

/// `c(S)` by scanning characteristic subgroups between `Φ(S)` and `S`: a chain
/// refined by always stepping to a minimal characteristic overgroup has the
/// composition factors of `S/Φ(S)` as its steps.
pub fn c_by_characteristic_scan(s: &PermGroup, p: u64) -> u32 {
    let b = Brute::new(s);
    if b.order() == 1 {
        return 0;
    }
    let auts = b.automorphisms();
    let phi = b.frattini_p(p);
    // every subgroup containing Φ is Φ together with at most d elements
    let d = ilog(p, b.order() / phi.len());
    let mut subs: BTreeSet<BTreeSet<usize>> = BTreeSet::from([phi.clone()]);
    let mut frontier = vec![phi.clone()];
    for _ in 0..d {
        let mut next = Vec::new();
        for h in &frontier {
            for x in 0..b.order() {
                if h.contains(&x) {
                    continue;
                }
                let mut gens: Vec<Permutation> = h.iter().map(|&i| b.elems[i].clone()).collect();
                gens.push(b.elems[x].clone());
                let k = b.span(&gens);
                if subs.insert(k.clone()) {
                    next.push(k);
                }
            }
        }
        frontier = next;
    }
    let characteristic: Vec<&BTreeSet<usize>> = subs
        .iter()
        .filter(|h| auts.iter().all(|f| h.iter().all(|x| h.contains(&f[*x]))))
        .collect();
    let mut cur = phi;
    let mut best = 0;
    while cur.len() < b.order() {
        let next = characteristic
            .iter()
            .filter(|h| h.len() > cur.len() && cur.is_subset(h))
            .min_by_key(|h| h.len())
            .expect("S itself is characteristic");
        best = best.max(ilog(p, next.len() / cur.len()));
        cur = (*next).clone();
    }
    best
}

/// Legendre's formula, independently: the exponent of `p` in `n!`.
pub fn legendre(n: u64, p: u64) -> u32 {
    (1..=n)
        .map(|k| {
            let mut k = k;
            let mut e = 0;
            while k % p == 0 {
                k /= p;
                e += 1;
            }
            e
        })
        .sum()
}

/// Groups of order at most 2000.
pub const CORPUS: &[&str] = &[
    "cyclic(2)",
    "cyclic(6)",
    "cyclic(8)",
    "cyclic(12)",
    "cyclic(30)",
    "sym(3)",
    "sym(4)",
    "sym(5)",
    "sym(6)",
    "alt(4)",
    "alt(5)",
    "alt(6)",
    "dihedral(3)",
    "dihedral(4)",
    "dihedral(5)",
    "dihedral(6)",
    "dihedral(7)",
    "dihedral(8)",
    "dihedral(9)",
    "dihedral(10)",
    "dihedral(12)",
    "dihedral(15)",
    "direct(sym(3), sym(3))",
    "direct(alt(4), cyclic(3))",
    "direct(sym(4), cyclic(2))",
    "direct(sym(3), cyclic(4))",
    "direct(dihedral(4), dihedral(4))",
    "direct(alt(5), cyclic(2))",
    "direct(alt(5), sym(3))",
    "direct(sym(5), cyclic(3))",
    "direct(sym(4), sym(3))",
    "direct(alt(4), alt(4))",
    "direct(cyclic(2), direct(cyclic(2), cyclic(2)))",
    "direct(sym(4), sym(4))",
    "wreath(sym(3), 2, cyclic(2))",
    "wreath(cyclic(2), 2, cyclic(2))",
    "wreath(cyclic(2), 3, cyclic(3))",
    "wreath(cyclic(3), 2, cyclic(2))",
    "wreath(cyclic(2), 4, cyclic(4))",
    "wreath(alt(4), 2, cyclic(2))",
    "wreath(sym(4), 2, cyclic(2))",
    "wreath(cyclic(2), 3, sym(3))",
    "wreath(sym(3), 3, cyclic(3))",
    "wreath(cyclic(3), 3, cyclic(3))",
    "wreath(cyclic(5), 2, cyclic(2))",
    "affine(2, 2, [[1,1],[0,1]], [[0,1],[1,0]])",
    "affine(5, 1, [[2]])",
    "affine(7, 1, [[3]])",
    "affine(11, 1, [[2]])",
    "affine(2, 3, [[0,1,0],[0,0,1],[1,1,0]])",
    "affine(3, 2, [[0,1],[1,1]])",
    "sylow_of(sym(8), 2)",
    "sylow_of(sym(6), 3)",
    "quotient(sym(4), perm(4, (1 2)(3 4), (1 3)(2 4)))",
    "perm(7, (1 2 3 4 5 6 7), (2 3 5)(4 7 6))",
    "perm(6, (1 2 3)(4 5 6), (1 4)(2 5)(3 6), (1 2))",
];
