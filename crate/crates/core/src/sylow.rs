//! Sylow subgroups by normalizer ascent.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::backtrack::normalizer;
use crate::construct::is_prime;
use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Largest power of `p` dividing `n`.
pub fn p_part(n: &BigUint, p: u64) -> BigUint {
    let pb = BigUint::from(p);
    let mut n = n.clone();
    let mut out = BigUint::one();
    while !n.is_zero() && (&n % &pb).is_zero() {
        n /= &pb;
        out *= &pb;
    }
    out
}

pub fn p_part_u64(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

/// Exponent of `p` in `n!` (Legendre's formula).
pub fn legendre(n: u64, p: u64) -> u32 {
    let mut e = 0;
    let mut q = p;
    while q <= n {
        e += (n / q) as u32;
        q *= p;
    }
    e
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(n: &BigUint) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n.clone();
    let mut d = 2u64;
    while BigUint::from(d) * BigUint::from(d) <= m {
        if (&m % d).is_zero() {
            out.push(d);
            while (&m % d).is_zero() {
                m /= d;
            }
        }
        d += 1;
    }
    if m > BigUint::one() {
        let last: u64 = m.try_into().expect("prime factor fits u64");
        out.push(last);
    }
    out
}

pub fn is_p_group(g: &PermGroup, p: u64) -> bool {
    let o = g.order();
    p_part(&o, p) == o
}

/// A Sylow `p`-subgroup of `g` (seed 0).
pub fn sylow(g: &PermGroup, p: u64) -> Result<PermGroup> {
    sylow_seeded(g, p, 0)
}

/// A Sylow `p`-subgroup: starting from the trivial group, repeatedly adjoin an
/// element of `N_G(P)` of order `p` modulo `P` until the index is prime to `p`.
pub fn sylow_seeded(g: &PermGroup, p: u64, seed: u64) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(GroupError::InvalidArgument(format!("{p} is not prime")));
    }
    let target = p_part(&g.order(), p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sub = PermGroup::trivial(g.degree());
    if is_p_group(g, p) {
        return Ok(g.clone());
    }
    while sub.order() != target {
        let n = if sub.is_trivial() {
            g.clone()
        } else {
            normalizer(g, &sub)?
        };
        if is_p_group(&n, p) {
            // N_G(P) is a p-group containing P, and P is its own normalizer only when Sylow
            sub = n;
            continue;
        }
        loop {
            let x = n.chain().random_element(&mut rng);
            if let Some(z) = p_step(&x, &sub, p) {
                sub = sub.closure(&[z]);
                break;
            }
        }
    }
    Ok(sub)
}

/// From `x` normalizing `sub`, an element outside `sub` whose `p`-th power lies in `sub`.
fn p_step(x: &Permutation, sub: &PermGroup, p: u64) -> Option<Permutation> {
    let mut o = x.order();
    while o.is_multiple_of(p) {
        o /= p;
    }
    let mut y = x.pow(o);
    if sub.has(&y) {
        return None;
    }
    loop {
        let next = y.pow(p);
        if sub.has(&next) {
            return Some(y);
        }
        y = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{alternating, symmetric};

    #[test]
    fn small_examples() {
        let s4 = symmetric(4).unwrap();
        assert_eq!(sylow(&s4, 2).unwrap().order_u64().unwrap(), 8);
        let s3 = symmetric(3).unwrap();
        let p3 = sylow(&s3, 3).unwrap();
        assert!(p3.same_elements(&alternating(3).unwrap()));
        let a5 = alternating(5).unwrap();
        assert_eq!(sylow(&a5, 5).unwrap().order_u64().unwrap(), 5);
        assert!(sylow(&a5, 7).unwrap().is_trivial());
        assert!(sylow(&a5, 4).is_err());
    }

    #[test]
    fn legendre_values() {
        assert_eq!(legendre(8, 2), 7);
        assert_eq!(legendre(9, 3), 4);
        assert_eq!(legendre(12, 2), 10);
    }

    #[test]
    fn prime_divisor_list() {
        assert_eq!(prime_divisors(&BigUint::from(360u32)), vec![2, 3, 5]);
        assert!(prime_divisors(&BigUint::from(1u32)).is_empty());
    }
}
