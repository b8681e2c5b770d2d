//! Finite inverse systems `G_k -> ... -> G_1` approximating profinite groups.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::caps::Caps;
use crate::construct::{affine_semidirect, cyclic, is_prime, point_to_vector, vector_to_point, wreath_imprimitive};
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::hom::GroupHom;
use crate::linalg::FpMatrix;
use crate::normal::NormalLattice;
use crate::perm::Permutation;

/// Levels are stored head first; `maps[i]` goes from `levels[i + 1]` onto `levels[i]`.
#[derive(Clone, Debug)]
pub struct Tower {
    family: String,
    params: Vec<u64>,
    levels: Vec<PermGroup>,
    maps: Vec<GroupHom>,
}

#[derive(Serialize)]
struct LevelDescriptor {
    order: String,
    degree: usize,
}

#[derive(Serialize)]
struct TowerDescriptor<'a> {
    family: &'a str,
    params: &'a [u64],
    levels: Vec<LevelDescriptor>,
    /// Per map, the images of the domain generators in cycle notation.
    maps: Vec<Vec<String>>,
}

impl Tower {
    /// Checks that every map is a surjective homomorphism between consecutive levels.
    pub fn new(family: &str, params: Vec<u64>, levels: Vec<PermGroup>, maps: Vec<GroupHom>) -> Result<Self> {
        if levels.is_empty() || maps.len() + 1 != levels.len() {
            return Err(GroupError::InvalidArgument(format!(
                "{} levels need {} maps, got {}",
                levels.len(),
                levels.len().saturating_sub(1),
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.domain().order() != levels[i + 1].order() || m.codomain().order() != levels[i].order() {
                return Err(GroupError::NotHomomorphism(format!("map {} has the wrong ends", i + 1)));
            }
            if !m.is_surjective() {
                return Err(GroupError::NotHomomorphism(format!("map {} is not surjective", i + 1)));
            }
        }
        Ok(Tower {
            family: family.to_string(),
            params,
            levels,
            maps,
        })
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn params(&self) -> &[u64] {
        &self.params
    }

    pub fn levels(&self) -> &[PermGroup] {
        &self.levels
    }

    pub fn maps(&self) -> &[GroupHom] {
        &self.maps
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Full preimage in level `i` of a subgroup of level `j <= i` (0-based).
    pub fn preimage(&self, i: usize, j: usize, h: &PermGroup) -> Result<PermGroup> {
        let mut cur = h.clone();
        for k in j..i {
            cur = self.maps[k].preimage(&cur)?;
        }
        Ok(cur)
    }

    /// `{family, params, levels: [{order, degree}], maps}` as a JSON value.
    pub fn descriptor(&self) -> serde_json::Value {
        let d = TowerDescriptor {
            family: &self.family,
            params: &self.params,
            levels: self
                .levels
                .iter()
                .map(|g| LevelDescriptor {
                    order: g.order().to_string(),
                    degree: g.degree(),
                })
                .collect(),
            maps: self
                .maps
                .iter()
                .map(|m| m.generator_images().iter().map(|x| x.to_string()).collect())
                .collect(),
        };
        serde_json::to_value(&d).expect("descriptor serializes")
    }

    pub fn descriptor_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.descriptor()).expect("descriptor serializes");
        s.push('\n');
        s
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(GroupError::InvalidArgument(format!("{p} is not prime")));
    }
    Ok(())
}

fn check_depth(depth: usize) -> Result<()> {
    if depth == 0 {
        return Err(GroupError::InvalidArgument("depth must be positive".into()));
    }
    Ok(())
}

fn checked_degree(p: u64, e: usize, caps: &Caps) -> Result<usize> {
    let degree = (p as u128).checked_pow(e as u32).unwrap_or(u128::MAX);
    if degree > caps.degree as u128 {
        let shown = if degree == u128::MAX {
            format!("{p}^{e}")
        } else {
            degree.to_string()
        };
        return Err(GroupError::cap("degree", caps.degree as u64, shown));
    }
    Ok(degree as usize)
}

/// `C_p <- C_{p^2} <- ... <- C_{p^depth}`, approximating the `p`-adic integers.
pub fn cyclic_tower(p: u64, depth: usize, caps: &Caps) -> Result<Tower> {
    check_prime(p)?;
    check_depth(depth)?;
    let mut levels = Vec::new();
    for k in 1..=depth {
        levels.push(cyclic(checked_degree(p, k, caps)?)?);
    }
    let maps = (1..depth)
        .map(|k| GroupHom::new(&levels[k], &levels[k - 1], levels[k - 1].generators().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Tower::new("cyclic", vec![p, depth as u64], levels, maps)
}

/// Action on the blocks `{b*size, ..., b*size + size - 1}`.
fn block_action(x: &Permutation, size: usize) -> Permutation {
    let m = x.degree() / size;
    Permutation::from_images_unchecked((0..m).map(|b| (x.apply(b * size) / size) as u32).collect())
}

/// Iterated wreath products `C_p ≀ ... ≀ C_p` on `p^k` points: the Sylow
/// `p`-subgroups of `Sym(p^k)`.
///
/// Level `k` is `C_p ≀ G_{k-1}`, the newest copies of `C_p` acting inside the
/// blocks of size `p`; the map to level `k-1` is the action on those blocks.
pub fn wreath_tower(p: u64, depth: usize, caps: &Caps) -> Result<Tower> {
    check_prime(p)?;
    check_depth(depth)?;
    let cp = cyclic(p as usize)?;
    let mut levels = vec![cp.clone()];
    let mut maps = Vec::new();
    for k in 2..=depth {
        checked_degree(p, k, caps)?;
        let prev = levels.last().unwrap();
        let next = wreath_imprimitive(&cp, prev.degree(), prev, caps)?;
        let images = next.generators().iter().map(|x| block_action(x, p as usize)).collect();
        maps.push(GroupHom::new(&next, prev, images)?);
        levels.push(next);
    }
    Tower::new("wreath", vec![p, depth as u64], levels, maps)
}

/// Permutation matrix of `x` acting on row vectors: `e_j -> e_{x(j)}`.
fn permutation_matrix(p: u64, x: &Permutation) -> FpMatrix {
    let d = x.degree();
    let rows = (0..d)
        .map(|j| {
            let mut r = vec![0; d];
            r[x.apply(j)] = 1;
            r
        })
        .collect();
    FpMatrix::new(p, rows).expect("square")
}

/// The permutation of the basis induced by the linear part of an affine permutation.
fn linear_part(p: u64, d: usize, x: &Permutation) -> Permutation {
    let origin = point_to_vector(p, d, x.apply(0));
    let images = (0..d)
        .map(|j| {
            let mut e = vec![0; d];
            e[j] = 1;
            let mut v = point_to_vector(p, d, x.apply(vector_to_point(p, &e)));
            for (vi, oi) in v.iter_mut().zip(&origin) {
                *vi = (*vi + p - oi) % p;
            }
            v.iter().position(|&c| c == 1).expect("monomial image") as u32
        })
        .collect();
    Permutation::from_images_unchecked(images)
}

/// `G_1 = C_{p_1}`, `G_{i+1} = F_{p_{i+1}}^{d_i} ⋊ G_i` with `G_i` permuting the
/// coordinates through its natural action on `d_i` points.
///
/// `F(G_{i+1})` is the newest module, which dies in `G_i`, so the Fitting
/// subgroups do not survive to the limit.
pub fn fitting_degenerate_tower(primes: &[u64], depth: usize, caps: &Caps) -> Result<Tower> {
    check_depth(depth)?;
    if depth > 4 {
        return Err(GroupError::InvalidArgument(format!("depth {depth} is above 4")));
    }
    if primes.len() < depth {
        return Err(GroupError::InvalidArgument(format!(
            "{} primes given for depth {depth}",
            primes.len()
        )));
    }
    for &p in &primes[..depth] {
        check_prime(p)?;
    }
    if let Some(w) = primes[..depth].windows(2).find(|w| w[0] == w[1]) {
        return Err(GroupError::InvalidArgument(format!(
            "consecutive primes must differ, got {} twice",
            w[0]
        )));
    }
    let mut levels = vec![cyclic(primes[0] as usize)?];
    let mut maps = Vec::new();
    for &p in &primes[1..depth] {
        let prev = levels.last().unwrap();
        let d = prev.degree();
        checked_degree(p, d, caps)?;
        let mats: Vec<FpMatrix> = prev.generators().iter().map(|x| permutation_matrix(p, x)).collect();
        let next = affine_semidirect(p, d, &mats, caps)?;
        let images = next.generators().iter().map(|x| linear_part(p, d, x)).collect();
        maps.push(GroupHom::new(&next, prev, images)?);
        levels.push(next);
    }
    let mut params = primes[..depth].to_vec();
    params.push(depth as u64);
    Tower::new("fitting_degenerate", params, levels, maps)
}

/// Normal lattices of every level, built once.
pub struct TowerLattices<'a> {
    tower: &'a Tower,
    lattices: Vec<NormalLattice>,
}

/// One row of an ob table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObRow {
    pub level: usize,
    pub n: u64,
    pub ob: u64,
    pub ob_star: Option<u64>,
    pub stable: bool,
}

impl<'a> TowerLattices<'a> {
    pub fn new(tower: &'a Tower, caps: &Caps) -> Result<Self> {
        let lattices = tower
            .levels()
            .iter()
            .enumerate()
            .map(|(i, g)| {
                NormalLattice::new(g, caps).map_err(|e| match e {
                    GroupError::CapExceeded { cap, limit, required } => GroupError::CapExceeded {
                        cap,
                        limit,
                        required: format!("{required} at level {}", i + 1),
                    },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TowerLattices { tower, lattices })
    }

    pub fn lattice(&self, level: usize) -> &NormalLattice {
        &self.lattices[level]
    }

    /// `OI_n(G_i) = Ob(I^⊲_n(G_i))` as an element set of level `i`.
    fn oi_set(&self, i: usize, n: u64) -> FixedBitSet {
        let lat = &self.lattices[i];
        lat.oblique_core_set(&lat.member(lat.small_normals_meet(n)).set)
    }

    /// `ob_{G_i}(n)` for every level, and whether the value has stabilized: the
    /// last two values agree and the last `OI_n` is the full preimage of the one before.
    pub fn ob_sequence(&self, n: u64) -> Result<(Vec<u64>, bool)> {
        let values: Vec<u64> = self.lattices.iter().map(|l| l.ob(n)).collect();
        let last = values.len() - 1;
        let stable = self.stable_at(last, n, &values)?;
        Ok((values, stable))
    }

    fn stable_at(&self, i: usize, n: u64, values: &[u64]) -> Result<bool> {
        if i == 0 || values[i] != values[i - 1] {
            return Ok(false);
        }
        let prev = self.lattices[i - 1].table().to_group(&self.oi_set(i - 1, n));
        let pre = self.tower.maps()[i - 1].preimage(&prev)?;
        let here = self.lattices[i].table().to_group(&self.oi_set(i, n));
        Ok(pre.same_elements(&here))
    }

    pub fn ob_star_sequence(&self, n: u64, caps: &Caps) -> Result<Vec<u64>> {
        self.lattices.iter().map(|l| l.ob_star(n, caps)).collect()
    }

    /// Rows `(level, n)` for `n = 1..=max_n`, level-major.
    pub fn ob_table(&self, max_n: u64, star: bool, caps: &Caps) -> Result<Vec<ObRow>> {
        let obs: Vec<Vec<u64>> = (1..=max_n)
            .map(|n| self.lattices.iter().map(|l| l.ob(n)).collect())
            .collect();
        let mut rows = Vec::new();
        for i in 0..self.lattices.len() {
            for n in 1..=max_n {
                let values = &obs[(n - 1) as usize];
                let ob_star = if star {
                    Some(self.lattices[i].ob_star(n, caps)?)
                } else {
                    None
                };
                rows.push(ObRow {
                    level: i + 1,
                    n,
                    ob: values[i],
                    ob_star,
                    stable: self.stable_at(i, n, values)?,
                });
            }
        }
        Ok(rows)
    }

    /// `|G_i : F_i|` where `F_i` is `F(G_i)` met with the preimages of every `F(G_j)`, `j < i`.
    pub fn fitting_sequence(&self) -> Result<Vec<u64>> {
        let fits: Vec<PermGroup> = self.lattices.iter().map(|l| l.group(l.fitting())).collect();
        let mut out = Vec::new();
        for (i, lat) in self.lattices.iter().enumerate() {
            let mut set = lat.member(lat.fitting()).set.clone();
            for (j, f) in fits.iter().enumerate().take(i) {
                let pre = self.tower.preimage(i, j, f)?;
                set.intersect_with(&lat.table().subgroup_set(&pre));
            }
            out.push(lat.top_order() / set.count_ones(..) as u64);
        }
        Ok(out)
    }

    /// For each level, whether `ob_{G_i}(n) <= bound` for every `(n, bound)`.
    pub fn ji_certificate(&self, eta: &[(u64, u64)]) -> Vec<bool> {
        self.lattices
            .iter()
            .map(|l| eta.iter().all(|&(n, bound)| l.ob(n) <= bound))
            .collect()
    }
}

/// CSV with header `level,n,ob,ob_star,stable` (the `ob_star` column only when present).
pub fn ob_table_csv(rows: &[ObRow]) -> String {
    let star = rows.iter().any(|r| r.ob_star.is_some());
    let mut out = String::from(if star {
        "level,n,ob,ob_star,stable\n"
    } else {
        "level,n,ob,stable\n"
    });
    for r in rows {
        match r.ob_star {
            Some(s) if star => out.push_str(&format!("{},{},{},{},{}\n", r.level, r.n, r.ob, s, r.stable)),
            _ => out.push_str(&format!("{},{},{},{}\n", r.level, r.n, r.ob, r.stable)),
        }
    }
    out
}

pub fn tower_ob_sequence(t: &Tower, n: u64, caps: &Caps) -> Result<(Vec<u64>, bool)> {
    TowerLattices::new(t, caps)?.ob_sequence(n)
}

pub fn tower_fitting_sequence(t: &Tower, caps: &Caps) -> Result<Vec<u64>> {
    TowerLattices::new(t, caps)?.fitting_sequence()
}

pub fn ji_certificate(t: &Tower, eta: &[(u64, u64)], caps: &Caps) -> Result<Vec<bool>> {
    Ok(TowerLattices::new(t, caps)?.ji_certificate(eta))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(t: &Tower) -> Vec<u64> {
        t.levels().iter().map(|g| g.order_u64().unwrap()).collect()
    }

    #[test]
    fn cyclic_levels() {
        let caps = Caps::default();
        let t = cyclic_tower(2, 3, &caps).unwrap();
        assert_eq!(orders(&t), vec![2, 4, 8]);
        let g8 = &t.levels()[2].generators()[0];
        assert_eq!(&t.maps()[1].apply(g8).unwrap(), &t.levels()[1].generators()[0]);
        assert_eq!(orders(&cyclic_tower(3, 2, &caps).unwrap()), vec![3, 9]);
        assert!(cyclic_tower(4, 2, &caps).is_err());
        assert!(cyclic_tower(2, 13, &caps).unwrap_err().is_cap());
    }

    #[test]
    fn wreath_levels() {
        let caps = Caps::default();
        assert_eq!(orders(&wreath_tower(2, 3, &caps).unwrap()), vec![2, 8, 128]);
        assert_eq!(orders(&wreath_tower(3, 2, &caps).unwrap()), vec![3, 81]);
    }

    #[test]
    fn fitting_degenerate_levels() {
        let caps = Caps::default();
        let t = fitting_degenerate_tower(&[2, 3], 2, &caps).unwrap();
        assert_eq!(orders(&t), vec![2, 18]);
        let lat = NormalLattice::new(&t.levels()[1], &caps).unwrap();
        assert_eq!(lat.order(lat.fitting()), 9);
        assert!(fitting_degenerate_tower(&[2, 2], 2, &caps).is_err());
        let err = fitting_degenerate_tower(&[2, 3, 2, 3], 4, &caps).unwrap_err();
        assert!(
            err.to_string().contains("2^9") || err.to_string().contains("3^512"),
            "{err}"
        );
    }

    #[test]
    fn ob_sequences() {
        let caps = Caps::default();
        let t = cyclic_tower(2, 6, &caps).unwrap();
        let (v, stable) = tower_ob_sequence(&t, 5, &caps).unwrap();
        assert_eq!(v, vec![2, 4, 4, 4, 4, 4]);
        assert!(stable);
        let (v, _) = tower_ob_sequence(&t, 1, &caps).unwrap();
        assert!(v.iter().all(|&x| x == 1));
        let t = cyclic_tower(2, 5, &caps).unwrap();
        let eta: Vec<(u64, u64)> = (1..=16).map(|n| (n, n)).collect();
        assert!(ji_certificate(&t, &eta, &caps).unwrap().iter().all(|&b| b));
        assert_eq!(
            ji_certificate(&t, &[(5, 2)], &caps).unwrap(),
            vec![true, false, false, false, false]
        );
        assert!(ji_certificate(&t, &[], &caps).unwrap().iter().all(|&b| b));
    }

    #[test]
    fn fitting_sequences() {
        let caps = Caps::default();
        let t = cyclic_tower(3, 3, &caps).unwrap();
        assert_eq!(tower_fitting_sequence(&t, &caps).unwrap(), vec![1, 1, 1]);
        let t = wreath_tower(2, 3, &caps).unwrap();
        assert_eq!(tower_fitting_sequence(&t, &caps).unwrap(), vec![1, 1, 1]);
        let t = fitting_degenerate_tower(&[2, 3], 2, &caps).unwrap();
        assert_eq!(tower_fitting_sequence(&t, &caps).unwrap(), vec![1, 2]);
    }

    #[test]
    fn csv_layout() {
        let caps = Caps::default();
        let t = cyclic_tower(2, 2, &caps).unwrap();
        let rows = TowerLattices::new(&t, &caps)
            .unwrap()
            .ob_table(2, false, &caps)
            .unwrap();
        assert_eq!(
            ob_table_csv(&rows),
            "level,n,ob,stable\n1,1,1,false\n1,2,2,false\n2,1,1,true\n2,2,2,true\n"
        );
        let json = t.descriptor_json();
        assert!(json.contains("\"family\": \"cyclic\""));
    }
}
