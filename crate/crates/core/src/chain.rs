//! Deterministic Schreier-Sims stabilizer chains.

use num_bigint::BigUint;
use rand::Rng;

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct Level {
    base: usize,
    /// Strong generators of this level's group (the pointwise stabilizer of earlier base points).
    gens: Vec<Permutation>,
    /// Basic orbit in discovery order.
    orbit: Vec<usize>,
    /// `transversal[x] = u` with `base^u = x`, together with `u^-1`.
    transversal: Vec<Option<(Permutation, Permutation)>>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let id = Permutation::identity(degree);
        let mut transversal = vec![None; degree];
        transversal[base] = Some((id.clone(), id));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
        }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn gens(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn in_orbit(&self, x: usize) -> bool {
        self.transversal[x].is_some()
    }

    /// Coset representative carrying the base point to `x`.
    pub fn rep(&self, x: usize) -> Option<&Permutation> {
        self.transversal[x].as_ref().map(|(u, _)| u)
    }

    pub fn rep_inv(&self, x: usize) -> Option<&Permutation> {
        self.transversal[x].as_ref().map(|(_, v)| v)
    }

    /// Closes the orbit under the current generators.
    fn extend_orbit(&mut self) {
        let mut i = 0;
        // rescan existing points because generators may be new
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for g in &self.gens {
                let y = g.apply(x);
                if self.transversal[y].is_none() {
                    let u = self.transversal[x].as_ref().unwrap().0.compose(g);
                    let v = u.inverse();
                    self.transversal[y] = Some((u, v));
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

/// A base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Permutation]) -> Self {
        Self::with_base_prefix(degree, gens, &[])
    }

    /// Builds a chain whose base starts with `prefix`; further base points are
    /// the smallest moved points of residues.
    pub fn with_base_prefix(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: prefix.iter().map(|&b| Level::new(degree, b)).collect(),
        };
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if gens.is_empty() {
            return chain;
        }
        for g in &gens {
            if chain.levels.iter().all(|l| g.apply(l.base) == l.base) {
                let b = g.first_moved().unwrap();
                chain.levels.push(Level::new(degree, b));
            }
        }
        for i in 0..chain.levels.len() {
            let fixed: Vec<usize> = chain.levels[..i].iter().map(|l| l.base).collect();
            chain.levels[i].gens = gens
                .iter()
                .filter(|g| fixed.iter().all(|&b| g.apply(b) == b))
                .cloned()
                .collect();
            chain.levels[i].extend_orbit();
        }
        chain.complete();
        chain.trim();
        chain
    }

    /// Holt's SCHREIERSIMS completion loop.
    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            let mut restart: Option<usize> = None;
            'scan: for oi in 0..self.levels[li].orbit.len() {
                let beta = self.levels[li].orbit[oi];
                for si in 0..self.levels[li].gens.len() {
                    let level = &self.levels[li];
                    let s = &level.gens[si];
                    let u_beta = level.rep(beta).unwrap();
                    let img = s.apply(beta);
                    let u_img_inv = level.rep_inv(img).unwrap();
                    let schreier = u_beta.compose(s).compose(u_img_inv);
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip(&schreier, li + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        if j == self.levels.len() {
                            let b = h.first_moved().unwrap();
                            self.levels.push(Level::new(self.degree, b));
                        }
                        for l in li + 1..=j {
                            self.levels[l].gens.push(h.clone());
                            self.levels[l].extend_orbit();
                        }
                        restart = Some(j);
                        break 'scan;
                    }
                }
            }
            match restart {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    /// Drops trailing levels with trivial basic orbits that are not needed.
    fn trim(&mut self) {
        while let Some(last) = self.levels.last() {
            if last.orbit.len() == 1 && last.gens.is_empty() {
                self.levels.pop();
            } else {
                break;
            }
        }
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level where sifting stopped.
    pub fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.base);
            match level.rep_inv(beta) {
                None => return (h, j),
                Some(v) => h = h.compose(v),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip(g, 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Order if it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for l in &self.levels {
            acc = acc.checked_mul(l.orbit.len() as u64)?;
        }
        Some(acc)
    }

    /// All strong generators without duplicates, in level order.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let x = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.compose(level.rep(x).unwrap());
        }
        g
    }

    /// Element with basic-orbit coordinates `coords[i]` (index into `orbit(i)`).
    pub fn element_at(&self, coords: &[usize]) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for (level, &c) in self.levels.iter().zip(coords).rev() {
            g = g.compose(level.rep(level.orbit[c]).unwrap());
        }
        g
    }

    /// Calls `f` on every element, in a fixed deterministic order.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        fn rec<F: FnMut(&Permutation)>(levels: &[Level], depth: usize, acc: &Permutation, f: &mut F) {
            if depth == 0 {
                f(acc);
                return;
            }
            let level = &levels[depth - 1];
            for &x in &level.orbit {
                let next = acc.compose(level.rep(x).unwrap());
                rec(levels, depth - 1, &next, f);
            }
        }
        let id = Permutation::identity(self.degree);
        rec(&self.levels, self.levels.len(), &id, &mut f);
    }

    /// Reconstructs the unique element with the given base images, if it lies in the group.
    pub fn element_from_base_images(&self, images: &[usize]) -> Option<Permutation> {
        // g = v_n ... v_1 with b_i^{v_i} = images[i]^{(v_{i-1} ... v_1)^-1}
        let mut right = Permutation::identity(self.degree);
        let mut right_inv = Permutation::identity(self.degree);
        let mut parts = Vec::with_capacity(self.levels.len());
        for (level, &c) in self.levels.iter().zip(images) {
            let target = right_inv.apply(c);
            let u = level.rep(target)?;
            parts.push(u.clone());
            right = u.compose(&right);
            right_inv = right.inverse();
        }
        let g = right;
        for (level, &c) in self.levels.iter().zip(images) {
            if g.apply(level.base) != c {
                return None;
            }
        }
        Some(g)
    }
}
