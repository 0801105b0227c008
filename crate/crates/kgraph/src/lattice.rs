//! Subgroups of `Z^k` in canonical form.
//!
//! A lattice is stored as its column Hermite normal form: echelon columns
//! with positive pivots, each pivot row reduced modulo the pivot in all
//! earlier columns. Two subgroups are equal iff their canonical forms are
//! identical, so group comparisons are plain `==`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::degree::DegreeOffset;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Lattice {
    ambient: usize,
    /// Echelon basis columns, canonical; empty for the zero subgroup.
    cols: Vec<Vec<BigInt>>,
    /// Pivot row of each basis column, strictly increasing.
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(ambient: usize) -> Self {
        Lattice { ambient, cols: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let cols = (0..ambient)
            .map(|i| {
                let mut c = vec![BigInt::zero(); ambient];
                c[i] = BigInt::one();
                c
            })
            .collect();
        Lattice { ambient, cols, pivots: (0..ambient).collect() }
    }

    pub fn from_generators(ambient: usize, gens: &[Vec<BigInt>]) -> Self {
        for g in gens {
            assert_eq!(g.len(), ambient);
        }
        let mut work: Vec<Vec<BigInt>> = gens.to_vec();
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for row in 0..ambient {
            // gcd-eliminate all remaining columns at this row down to one
            loop {
                let mut best: Option<usize> = None;
                for (j, col) in work.iter().enumerate() {
                    if !col[row].is_zero()
                        && best.map_or(true, |b| col[row].abs() < work[b][row].abs())
                    {
                        best = Some(j);
                    }
                }
                let Some(p) = best else { break };
                let mut done = true;
                let pval = work[p][row].clone();
                for j in 0..work.len() {
                    if j == p || work[j][row].is_zero() {
                        continue;
                    }
                    let q = work[j][row].div_floor(&pval);
                    for r in 0..ambient {
                        let sub = &q * &work[p][r];
                        work[j][r] -= sub;
                    }
                    if !work[j][row].is_zero() {
                        done = false;
                    }
                }
                if done {
                    let mut col = work.remove(p);
                    if col[row].is_negative() {
                        for v in col.iter_mut() {
                            *v = -v.clone();
                        }
                    }
                    cols.push(col);
                    pivots.push(row);
                    break;
                }
            }
            work.retain(|c| !c.iter().all(|v| v.is_zero()));
        }
        // canonical reduction: entries of each pivot row in earlier columns
        // lie in [0, pivot)
        for t in 0..cols.len() {
            let prow = pivots[t];
            let d = cols[t][prow].clone();
            for s in 0..t {
                let q = cols[s][prow].div_floor(&d);
                if q.is_zero() {
                    continue;
                }
                for r in 0..ambient {
                    let sub = &q * &cols[t][r];
                    cols[s][r] -= sub;
                }
            }
        }
        Lattice { ambient, cols, pivots }
    }

    pub fn from_offsets(ambient: usize, gens: &[DegreeOffset]) -> Self {
        let cols: Vec<Vec<BigInt>> =
            gens.iter().map(|g| g.0.iter().map(|&v| BigInt::from(v)).collect()).collect();
        Self::from_generators(ambient, &cols)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient
    }

    pub fn basis(&self) -> Vec<DegreeOffset> {
        self.cols
            .iter()
            .map(|c| DegreeOffset(c.iter().map(|v| v.to_i64().expect("basis entry fits i64")).collect()))
            .collect()
    }

    /// Index in `Z^k`; `None` when the subgroup has infinite index.
    pub fn index(&self) -> Option<BigInt> {
        if !self.is_full_rank() {
            return None;
        }
        let mut p = BigInt::one();
        for (t, col) in self.cols.iter().enumerate() {
            p *= &col[self.pivots[t]];
        }
        Some(p)
    }

    pub fn contains_vec(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut rem = v.to_vec();
        for (t, col) in self.cols.iter().enumerate() {
            let prow = self.pivots[t];
            for (r, entry) in rem.iter().enumerate().take(prow) {
                if !entry.is_zero() && !self.pivots[..t].contains(&r) {
                    return false;
                }
            }
            let d = &col[prow];
            if !(&rem[prow] % d).is_zero() {
                return false;
            }
            let q = &rem[prow] / d;
            if q.is_zero() {
                continue;
            }
            for r in 0..self.ambient {
                let sub = &q * &col[r];
                rem[r] -= sub;
            }
        }
        rem.iter().all(|v| v.is_zero())
    }

    pub fn contains(&self, g: &DegreeOffset) -> bool {
        let v: Vec<BigInt> = g.0.iter().map(|&x| BigInt::from(x)).collect();
        self.contains_vec(&v)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.cols.iter().all(|c| self.contains_vec(c))
    }

    /// Canonical coset representative of `g` modulo this lattice.
    /// Requires full rank; representatives satisfy `0 <= rep[t] < pivot[t]`.
    pub fn reduce(&self, g: &DegreeOffset) -> DegreeOffset {
        assert!(self.is_full_rank(), "coset reduction needs a finite-index subgroup");
        let mut rem: Vec<BigInt> = g.0.iter().map(|&x| BigInt::from(x)).collect();
        for (t, col) in self.cols.iter().enumerate() {
            let d = &col[t];
            let q = rem[t].div_floor(d);
            if q.is_zero() {
                continue;
            }
            for r in 0..self.ambient {
                let sub = &q * &col[r];
                rem[r] -= sub;
            }
        }
        DegreeOffset(rem.iter().map(|v| v.to_i64().expect("coset rep fits i64")).collect())
    }

    /// All canonical coset representatives; requires full rank.
    pub fn transversal(&self) -> Vec<DegreeOffset> {
        assert!(self.is_full_rank());
        let bounds: Vec<i64> = (0..self.ambient)
            .map(|t| self.cols[t][t].to_i64().expect("index fits i64"))
            .collect();
        let mut out = Vec::new();
        let total: i64 = bounds.iter().product();
        for mut ix in 0..total {
            let mut v = vec![0i64; self.ambient];
            for t in (0..self.ambient).rev() {
                v[t] = ix % bounds[t];
                ix /= bounds[t];
            }
            out.push(DegreeOffset(v));
        }
        out
    }

    /// Extend by additional generators.
    pub fn join(&self, gens: &[DegreeOffset]) -> Lattice {
        let mut all = self.cols.clone();
        for g in gens {
            all.push(g.0.iter().map(|&v| BigInt::from(v)).collect());
        }
        Lattice::from_generators(self.ambient, &all)
    }

    /// Invariant factors `d_1 | d_2 | …` of `Z^k / L` (Smith normal form of
    /// the basis matrix). Requires full rank.
    pub fn quotient_invariants(&self) -> Vec<BigInt> {
        assert!(self.is_full_rank());
        let k = self.ambient;
        let mut m = vec![vec![BigInt::zero(); k]; k];
        for (j, col) in self.cols.iter().enumerate() {
            for r in 0..k {
                m[r][j] = col[r].clone();
            }
        }
        smith_diagonal(&mut m)
    }
}

/// Diagonalise a square integer matrix by row/column operations, returning
/// the invariant factors in divisibility order.
fn smith_diagonal(m: &mut Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let n = m.len();
    let mut factors = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            // locate the minimal-magnitude nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for r in t..n {
                for c in t..n {
                    if !m[r][c].is_zero()
                        && best.map_or(true, |(br, bc)| m[r][c].abs() < m[br][bc].abs())
                    {
                        best = Some((r, c));
                    }
                }
            }
            let Some((br, bc)) = best else {
                factors.push(BigInt::zero());
                break;
            };
            m.swap(t, br);
            for row in m.iter_mut() {
                row.swap(t, bc);
            }
            let mut clean = true;
            let pivot = m[t][t].clone();
            for r in t + 1..n {
                if m[r][t].is_zero() {
                    continue;
                }
                let q = m[r][t].div_floor(&pivot);
                for c in t..n {
                    let sub = &q * &m[t][c];
                    m[r][c] -= sub;
                }
                if !m[r][t].is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..n {
                if m[t][c].is_zero() {
                    continue;
                }
                let q = m[t][c].div_floor(&pivot);
                for r in t..n {
                    let sub = &q * &m[r][t];
                    m[r][c] -= sub;
                }
                if !m[t][c].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility by folding any non-multiple into the pivot
            let mut fixed = false;
            'outer: for r in t + 1..n {
                for c in t + 1..n {
                    if !(&m[r][c] % &pivot).is_zero() {
                        for cc in t..n {
                            let add = m[r][cc].clone();
                            m[t][cc] += add;
                        }
                        fixed = true;
                        break 'outer;
                    }
                }
            }
            if fixed {
                continue;
            }
            factors.push(m[t][t].abs());
            break;
        }
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::off;

    fn lat(gens: &[Vec<i64>]) -> Lattice {
        let offs: Vec<DegreeOffset> = gens.iter().map(|g| DegreeOffset(g.clone())).collect();
        Lattice::from_offsets(gens[0].len(), &offs)
    }

    #[test]
    fn parity_lattice_canonical_form() {
        // generated by cycle-degree differences of the 3-vertex fixture
        let l = lat(&[vec![2, 0], vec![0, 0], vec![-1, 1], vec![1, 1]]);
        assert_eq!(l.index(), Some(BigInt::from(2)));
        assert_eq!(l.basis(), vec![off![1, 1], off![0, 2]]);
        assert!(l.contains(&off![4, -2]));
        assert!(!l.contains(&off![1, 0]));
        assert_eq!(l.reduce(&off![5, 2]), off![1, 0]);
        assert_eq!(l.reduce(&off![4, 2]), off![0, 0]);
    }

    #[test]
    fn same_group_different_generators() {
        let a = lat(&[vec![1, 1], vec![0, 2]]);
        let b = lat(&[vec![1, -1], vec![3, 1]]);
        assert_eq!(a, b);
    }

    #[test]
    fn rank_deficient_line() {
        let l = lat(&[vec![-1, 1], vec![2, -2]]);
        assert_eq!(l.rank(), 1);
        assert_eq!(l.index(), None);
        assert_eq!(l.basis(), vec![off![1, -1]]);
        assert!(l.contains(&off![-3, 3]));
        assert!(!l.contains(&off![1, 1]));
    }

    #[test]
    fn transversal_enumerates_cosets() {
        let l = lat(&[vec![2, 0], vec![0, 1]]);
        let reps = l.transversal();
        assert_eq!(reps.len(), 2);
        for r in &reps {
            assert_eq!(l.reduce(r), *r);
        }
    }

    #[test]
    fn smith_invariants() {
        let l = lat(&[vec![1, 1], vec![0, 2]]);
        assert_eq!(l.quotient_invariants(), vec![BigInt::one(), BigInt::from(2)]);
        let m = lat(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(m.quotient_invariants(), vec![BigInt::from(2), BigInt::from(2)]);
        let prod: BigInt = m.quotient_invariants().iter().product();
        assert_eq!(Some(prod), m.index());
    }

    #[test]
    fn zero_and_full() {
        let z = Lattice::zero(2);
        assert!(z.contains(&off![0, 0]));
        assert!(!z.contains(&off![0, 1]));
        let f = Lattice::full(2);
        assert_eq!(f.index(), Some(BigInt::one()));
        assert!(f.contains(&off![7, -5]));
        assert!(f.contains_lattice(&z));
    }
}
