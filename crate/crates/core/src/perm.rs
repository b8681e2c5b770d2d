//! Permutations on `{0, .., degree-1}` acting on the right.
//!
//! Products compose left to right: `a * b` applies `a` first, then `b`, so
//! `x^(ab) = (x^a)^b`. Cycle notation in all text I/O is 1-based.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{GroupError, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(GroupError::MalformedPermutation(format!(
                    "image {} out of range for degree {}",
                    x + 1,
                    n
                )));
            }
            if seen[x] {
                return Err(GroupError::MalformedPermutation(format!(
                    "point {} is hit twice",
                    x + 1
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of the given degree from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= degree {
                    return Err(GroupError::MalformedPermutation(format!(
                        "point {} exceeds degree {}",
                        a + 1,
                        degree
                    )));
                }
                if used[a] {
                    return Err(GroupError::MalformedPermutation(format!(
                        "point {} appears in more than one cycle",
                        a + 1
                    )));
                }
                used[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation such as `(1 2 3)(4 5)` or `()`.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// `self^other = other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Self {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[other.images[i] as usize] = other.images[x as usize];
        }
        Permutation { images }
    }

    /// `[self, other] = self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Permutation) -> Self {
        self.inverse().compose(&other.inverse()).compose(self).compose(other)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Cycles of length at least two, 0-based, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Sorted multiset of all cycle lengths, including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    /// Element order: lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| num_integer_lcm(acc, l as u64))
    }

    pub fn is_even(&self) -> bool {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        transpositions.is_multiple_of(2)
    }

    /// Smallest moved point, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i)
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend(&self, degree: usize) -> Self {
        assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    /// Shifts the support by `offset` into a permutation of degree `degree`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Self {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + x;
        }
        Permutation { images }
    }

    /// Restriction to `{0, .., degree-1}`; the caller guarantees it is invariant.
    pub fn restrict(&self, degree: usize) -> Self {
        let images = self.images[..degree].to_vec();
        debug_assert!(images.iter().all(|&x| (x as usize) < degree));
        Permutation { images }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn num_integer_lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl Mul for Permutation {
    type Output = Permutation;
    fn mul(self, rhs: Permutation) -> Permutation {
        self.compose(&rhs)
    }
}

impl fmt::Display for Permutation {
    /// 1-based cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[deg {}]", self, self.degree())
    }
}

/// Parses cycle notation into 0-based cycles without fixing a degree.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut chars = text.trim().chars().peekable();
    let err = |m: &str| GroupError::MalformedPermutation(format!("{m} in {text:?}"));
    if chars.peek().is_none() {
        return Err(err("empty permutation literal"));
    }
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c != '(' {
            return Err(err("expected '('"));
        }
        chars.next();
        let mut cycle = Vec::new();
        let mut num = String::new();
        loop {
            match chars.next() {
                Some(d) if d.is_ascii_digit() => num.push(d),
                Some(d) if d.is_whitespace() || d == ',' || d == ')' => {
                    if !num.is_empty() {
                        let v: usize = num.parse().map_err(|_| err("bad integer"))?;
                        if v == 0 {
                            return Err(err("points are 1-based"));
                        }
                        cycle.push(v - 1);
                        num.clear();
                    }
                    if d == ')' {
                        break;
                    }
                }
                Some(_) => return Err(err("unexpected character")),
                None => return Err(err("unterminated cycle")),
            }
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
    }
    Ok(cycles)
}

/// Largest point mentioned in a cycle literal (1-based), or 0 for `()`.
pub fn max_point(text: &str) -> Result<usize> {
    Ok(parse_cycles(text)?.iter().flatten().map(|&x| x + 1).max().unwrap_or(0))
}

impl FromStr for Permutation {
    type Err = GroupError;
    /// Parses with the smallest degree covering every mentioned point.
    fn from_str(s: &str) -> Result<Self> {
        let deg = max_point(s)?;
        Permutation::parse(deg, s)
    }
}
