//! Standard groups and product constructions.

use crate::caps::Caps;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::linalg::FpMatrix;
use crate::perm::Permutation;

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    let c: Vec<usize> = points.into_iter().collect();
    Permutation::from_cycles(degree, &[c]).expect("valid cycle")
}

/// Cyclic group of order `n` acting regularly on `n` points.
pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(GroupError::InvalidArgument("cyclic(0)".into()));
    }
    let gens = if n > 1 { vec![cycle(n, 0..n)] } else { vec![] };
    PermGroup::new(n, gens)
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(GroupError::InvalidArgument("sym(0)".into()));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle(n, [0, 1]));
    }
    if n >= 3 {
        gens.push(cycle(n, 0..n));
    }
    PermGroup::new(n, gens)
}

/// Alternating group; `n >= 3` (smaller alternating groups are rejected as degenerate).
pub fn alternating(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(GroupError::InvalidArgument(format!("alt({n}) requires n >= 3")));
    }
    let gens = (2..n).map(|k| cycle(n, [0, 1, k])).collect();
    PermGroup::new(n, gens)
}

/// Symmetries of the regular `n`-gon: order `2n`, degree `n`, `n >= 3`.
pub fn dihedral(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(GroupError::InvalidArgument(format!("dihedral({n}) requires n >= 3")));
    }
    let rot = cycle(n, 0..n);
    let refl = Permutation::from_images_unchecked((0..n).map(|i| ((n - i) % n) as u32).collect());
    PermGroup::new(n, vec![rot, refl])
}

/// Direct product acting on the disjoint union of the two point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let degree = a.degree() + b.degree();
    let mut gens: Vec<Permutation> = a.generators().iter().map(|g| g.shifted(0, degree)).collect();
    gens.extend(b.generators().iter().map(|g| g.shifted(a.degree(), degree)));
    PermGroup::from_gens_unchecked(degree, gens)
}

/// Imprimitive wreath product `A wr top`: `m` blocks of size `deg(A)` permuted by `top`.
pub fn wreath_imprimitive(a: &PermGroup, m: usize, top: &PermGroup, caps: &Caps) -> Result<PermGroup> {
    if top.degree() != m {
        return Err(GroupError::DegreeMismatch {
            expected: m,
            found: top.degree(),
        });
    }
    let k = a.degree();
    let degree = m * k;
    caps.check_degree(degree)?;
    let mut gens = Vec::new();
    // base group: A on the first block suffices when top is transitive, but add
    // every block so the construction is correct for any top group
    for block in 0..m {
        for g in a.generators() {
            gens.push(g.shifted(block * k, degree));
        }
    }
    for t in top.generators() {
        let images: Vec<u32> = (0..degree).map(|x| (t.apply(x / k) * k + x % k) as u32).collect();
        gens.push(Permutation::from_images_unchecked(images));
    }
    Ok(PermGroup::from_gens_unchecked(degree, gens))
}

/// Index of a vector of `F_p^d` as a point: little-endian base-`p` digits.
pub fn vector_to_point(p: u64, v: &[u64]) -> usize {
    v.iter().rev().fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

pub fn point_to_vector(p: u64, d: usize, mut x: usize) -> Vec<u64> {
    let mut v = vec![0u64; d];
    for vi in v.iter_mut() {
        *vi = (x % p as usize) as u64;
        x /= p as usize;
    }
    v
}

/// Permutation of `F_p^d` induced by `v -> v M` (row vectors).
pub fn matrix_permutation(m: &FpMatrix) -> Permutation {
    let p = m.p;
    let d = m.rows;
    let degree = (p as usize).pow(d as u32);
    let images = (0..degree)
        .map(|x| vector_to_point(p, &m.apply_row(&point_to_vector(p, d, x))) as u32)
        .collect();
    Permutation::from_images_unchecked(images)
}

/// Translation of `F_p^d` by the `i`-th basis vector.
pub fn translation(p: u64, d: usize, i: usize) -> Permutation {
    let degree = (p as usize).pow(d as u32);
    let images = (0..degree)
        .map(|x| {
            let mut v = point_to_vector(p, d, x);
            v[i] = (v[i] + 1) % p;
            vector_to_point(p, &v) as u32
        })
        .collect();
    Permutation::from_images_unchecked(images)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Affine group `F_p^d : <mats>` on `p^d` points.
pub fn affine_semidirect(p: u64, d: usize, mats: &[FpMatrix], caps: &Caps) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(GroupError::InvalidArgument(format!("{p} is not prime")));
    }
    if d == 0 {
        return Err(GroupError::InvalidArgument("dimension must be positive".into()));
    }
    let degree = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if degree > caps.degree as u128 {
        return Err(GroupError::cap("degree", caps.degree as u64, degree));
    }
    let mut gens: Vec<Permutation> = (0..d).map(|i| translation(p, d, i)).collect();
    for m in mats {
        if m.p != p || m.rows != d || m.cols != d {
            return Err(GroupError::InvalidArgument(format!(
                "matrix shape {}x{} over F_{} does not match dimension {d} over F_{p}",
                m.rows, m.cols, m.p
            )));
        }
        if !m.is_invertible() {
            return Err(GroupError::SingularMatrix { p });
        }
        gens.push(matrix_permutation(m));
    }
    PermGroup::new(degree as usize, gens)
}

/// Linear part of an affine group: the stabilizer of the zero vector generated by `mats`.
pub fn linear_group(p: u64, d: usize, mats: &[FpMatrix]) -> PermGroup {
    let degree = (p as usize).pow(d as u32);
    PermGroup::from_gens_unchecked(degree, mats.iter().map(matrix_permutation).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wreath_c2_c2_is_dihedral_of_order_8() {
        let c2 = cyclic(2).unwrap();
        let w = wreath_imprimitive(&c2, 2, &c2, &Caps::default()).unwrap();
        assert_eq!(w.degree(), 4);
        assert_eq!(w.order_u64().unwrap(), 8);
        assert!(!w.is_abelian());
    }

    #[test]
    fn affine_gl22_is_sym4_sized() {
        let a = FpMatrix::new(2, vec![vec![1, 1], vec![0, 1]]).unwrap();
        let b = FpMatrix::new(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let g = affine_semidirect(2, 2, &[a, b], &Caps::default()).unwrap();
        assert_eq!(g.degree(), 4);
        assert_eq!(g.order_u64().unwrap(), 24);
    }

    #[test]
    fn singular_matrix_rejected() {
        let s = FpMatrix::new(2, vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert!(matches!(
            affine_semidirect(2, 2, &[s], &Caps::default()),
            Err(GroupError::SingularMatrix { .. })
        ));
        let big = Caps {
            degree: 8,
            ..Caps::default()
        };
        assert!(affine_semidirect(2, 4, &[], &big).unwrap_err().is_cap());
    }

    #[test]
    fn direct_c2_c3() {
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap());
        assert_eq!(g.degree(), 5);
        assert_eq!(g.order_u64().unwrap(), 6);
        assert!(g.is_abelian());
    }

    #[test]
    fn standard_orders() {
        assert_eq!(symmetric(5).unwrap().order_u64().unwrap(), 120);
        assert_eq!(alternating(5).unwrap().order_u64().unwrap(), 60);
        assert_eq!(alternating(3).unwrap().order_u64().unwrap(), 3);
        assert_eq!(dihedral(5).unwrap().order_u64().unwrap(), 10);
        assert_eq!(cyclic(1).unwrap().order_u64().unwrap(), 1);
        assert!(alternating(2).is_err());
    }
}
