//! Degrees of morphisms: elements of `N^k`, and their differences in `Z^k`.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Sub};

/// An element of `N^k`: the degree of a path, one count per color.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Degree(pub Vec<u32>);

/// An element of `Z^k`: a difference of degrees.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeOffset(pub Vec<i64>);

impl Degree {
    pub fn zero(rank: usize) -> Self {
        Degree(vec![0; rank])
    }

    pub fn ones(rank: usize) -> Self {
        Degree(vec![1; rank])
    }

    /// The generator `e_i` (color is 0-based).
    pub fn unit(rank: usize, color: usize) -> Self {
        let mut v = vec![0; rank];
        v[color] = 1;
        Degree(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entry(&self, color: usize) -> u32 {
        self.0[color]
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Coordinatewise `self <= other`.
    pub fn le(&self, other: &Degree) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Coordinatewise maximum `self ∨ other`.
    pub fn sup(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Coordinatewise minimum `self ∧ other`.
    pub fn inf(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        if other.le(self) {
            Some(Degree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn offset(&self) -> DegreeOffset {
        DegreeOffset(self.0.iter().map(|&c| c as i64).collect())
    }

    /// Iterate over all degrees `n` with `0 <= n <= self`, lexicographically.
    pub fn box_iter(&self) -> impl Iterator<Item = Degree> + '_ {
        let rank = self.rank();
        let total: u64 = self.0.iter().map(|&c| (c as u64) + 1).product();
        (0..total).map(move |mut ix| {
            let mut v = vec![0u32; rank];
            for i in (0..rank).rev() {
                let base = self.0[i] as u64 + 1;
                v[i] = (ix % base) as u32;
                ix /= base;
            }
            Degree(v)
        })
    }
}

impl DegreeOffset {
    pub fn zero(rank: usize) -> Self {
        DegreeOffset(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> DegreeOffset {
        DegreeOffset(self.0.iter().map(|&c| -c).collect())
    }

    pub fn norm_inf(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// Positive part `g⁺ = g ∨ 0`.
    pub fn pos_part(&self) -> Degree {
        Degree(self.0.iter().map(|&c| c.max(0) as u32).collect())
    }

    /// Negative part `g⁻ = (−g) ∨ 0`, so `g = g⁺ − g⁻`.
    pub fn neg_part(&self) -> Degree {
        Degree(self.0.iter().map(|&c| (-c).max(0) as u32).collect())
    }

    /// `self` as a Degree, if all entries are nonnegative.
    pub fn to_degree(&self) -> Option<Degree> {
        if self.0.iter().all(|&c| c >= 0) {
            Some(Degree(self.0.iter().map(|&c| c as u32).collect()))
        } else {
            None
        }
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 1)
    }
}

impl Add for &Degree {
    type Output = Degree;
    fn add(self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Degree {
    type Output = DegreeOffset;
    fn sub(self, other: &Degree) -> DegreeOffset {
        DegreeOffset(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a as i64 - b as i64)
                .collect(),
        )
    }
}

impl Add for &DegreeOffset {
    type Output = DegreeOffset;
    fn add(self, other: &DegreeOffset) -> DegreeOffset {
        DegreeOffset(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DegreeOffset {
    type Output = DegreeOffset;
    fn sub(self, other: &DegreeOffset) -> DegreeOffset {
        DegreeOffset(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Debug for DegreeOffset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Display for DegreeOffset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[macro_export]
macro_rules! deg {
    ($($x:expr),* $(,)?) => { $crate::degree::Degree(vec![$($x),*]) };
}

#[macro_export]
macro_rules! off {
    ($($x:expr),* $(,)?) => { $crate::degree::DegreeOffset(vec![$($x),*]) };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_iteration_counts() {
        let d = deg![2, 1];
        let all: Vec<_> = d.box_iter().collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], deg![0, 0]);
        assert_eq!(all[5], deg![2, 1]);
    }

    #[test]
    fn pos_neg_parts() {
        let g = off![2, -3];
        assert_eq!(g.pos_part(), deg![2, 0]);
        assert_eq!(g.neg_part(), deg![0, 3]);
        assert_eq!(&g.pos_part().offset() - &g.neg_part().offset(), g);
    }

    #[test]
    fn sup_inf() {
        let a = deg![2, 0];
        let b = deg![1, 3];
        assert_eq!(a.sup(&b), deg![2, 3]);
        assert_eq!(a.inf(&b), deg![1, 0]);
        assert!(!a.le(&b));
        assert!(a.inf(&b).le(&a));
    }
}
