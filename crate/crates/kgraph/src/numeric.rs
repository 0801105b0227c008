//! Arbitrary-precision real arithmetic.
//!
//! Thin wrapper around `astro_float::BigFloat` fixing the rounding mode and
//! threading the working precision through every call, plus:
//!
//! * [`Approx`] — a value paired with an absolute error bound, so results can
//!   be reported as `value ± err`. Propagation is first-order and
//!   deliberately conservative: every operation adds a rounding slack of a
//!   few ulps on top of the propagated input bounds.
//! * [`FloatMat`] / dense linear solves with partial pivoting and one step of
//!   iterative refinement; the returned residual norm is the certificate
//!   consumers use for their own error bounds.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::cell::RefCell;

use crate::matrix::IntMatrix;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// Working-precision context. All results carry `prec` bits of mantissa.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ctx {
    pub prec: usize,
}

impl Ctx {
    pub fn new(prec: usize) -> Self {
        assert!(prec >= 64, "precision below 64 bits is not supported");
        Ctx { prec }
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::from_i64(0, self.prec)
    }

    pub fn one(&self) -> BigFloat {
        BigFloat::from_i64(1, self.prec)
    }

    pub fn int(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.prec)
    }

    pub fn from_bigint(&self, v: &BigInt) -> BigFloat {
        self.parse(&v.to_string())
    }

    pub fn from_ratio(&self, q: &BigRational) -> BigFloat {
        self.div(&self.from_bigint(q.numer()), &self.from_bigint(q.denom()))
    }

    pub fn parse(&self, s: &str) -> BigFloat {
        CONSTS.with(|cc| BigFloat::parse(s, Radix::Dec, self.prec, RM, &mut cc.borrow_mut()))
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, RM)
    }

    pub fn recip(&self, a: &BigFloat) -> BigFloat {
        self.div(&self.one(), a)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.prec, RM)
    }

    pub fn ln(&self, a: &BigFloat) -> BigFloat {
        CONSTS.with(|cc| a.ln(self.prec, RM, &mut cc.borrow_mut()))
    }

    pub fn exp(&self, a: &BigFloat) -> BigFloat {
        CONSTS.with(|cc| a.exp(self.prec, RM, &mut cc.borrow_mut()))
    }

    pub fn sin(&self, a: &BigFloat) -> BigFloat {
        CONSTS.with(|cc| a.sin(self.prec, RM, &mut cc.borrow_mut()))
    }

    pub fn cos(&self, a: &BigFloat) -> BigFloat {
        CONSTS.with(|cc| a.cos(self.prec, RM, &mut cc.borrow_mut()))
    }

    pub fn pi(&self) -> BigFloat {
        CONSTS.with(|cc| cc.borrow_mut().pi(self.prec, RM))
    }

    pub fn powi(&self, a: &BigFloat, e: usize) -> BigFloat {
        a.powi(e, self.prec, RM)
    }

    /// `a^g` for integer `g` of either sign.
    pub fn powz(&self, a: &BigFloat, g: i64) -> BigFloat {
        if g >= 0 {
            self.powi(a, g as usize)
        } else {
            self.recip(&self.powi(a, (-g) as usize))
        }
    }

    /// `2^e` for possibly negative `e`.
    pub fn pow2(&self, e: i64) -> BigFloat {
        self.powz(&self.int(2), e)
    }

    pub fn abs(&self, a: &BigFloat) -> BigFloat {
        a.abs()
    }

    pub fn neg(&self, a: &BigFloat) -> BigFloat {
        a.neg()
    }

    pub fn lt(&self, a: &BigFloat, b: &BigFloat) -> bool {
        matches!(a.partial_cmp(b), Some(std::cmp::Ordering::Less))
    }

    pub fn le(&self, a: &BigFloat, b: &BigFloat) -> bool {
        !self.lt(b, a)
    }

    pub fn max(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        if self.lt(a, b) {
            b.clone()
        } else {
            a.clone()
        }
    }

    pub fn min(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        if self.lt(b, a) {
            b.clone()
        } else {
            a.clone()
        }
    }

    /// Nearest integer, as BigInt. The value must be finite.
    pub fn round_to_bigint(&self, a: &BigFloat) -> BigInt {
        let r = a.round(0, RM);
        // integers print as d.dddde+k in decimal scientific form
        let s = format!("{}", r);
        parse_scientific_int(&s).expect("rounded value should be integral")
    }

    pub fn to_f64(&self, a: &BigFloat) -> f64 {
        format!("{}", a).parse::<f64>().unwrap_or(f64::NAN)
    }

    /// Conservative bound on the rounding error of one operation whose result
    /// is near `v`: a few ulps at the working precision.
    pub fn rounding_slack(&self, v: &BigFloat) -> BigFloat {
        let scale = self.add(&v.abs(), &self.pow2(-(self.prec as i64)));
        self.mul(&scale, &self.pow2(-(self.prec as i64 - 4)))
    }

    /// Render with a fixed number of significant decimal digits.
    pub fn dec_string(&self, v: &BigFloat, digits: usize) -> String {
        let bits = (digits * 10) / 3 + 8;
        let mut c = v.clone();
        // reducing precision never fails; raising is impossible here because
        // callers only shrink
        let _ = c.set_precision(bits.min(self.prec), RM);
        format!("{}", c)
    }
}

fn parse_scientific_int(s: &str) -> Option<BigInt> {
    // forms: "-1.2345e+4", "0.0", "7.e+0"
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().ok()?),
        None => (s, 0),
    };
    let neg = mant.starts_with('-');
    let mant = mant.trim_start_matches('-');
    let (int_part, frac_part) = match mant.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mant, ""),
    };
    let digits: String = format!("{}{}", int_part, frac_part);
    let shift = exp - frac_part.len() as i64;
    let mut v: BigInt = digits.parse().ok()?;
    if shift > 0 {
        v *= BigInt::from(10u32).pow(shift as u32);
    } else if shift < 0 {
        let d = BigInt::from(10u32).pow((-shift) as u32);
        if (&v % &d) != BigInt::from(0) {
            return None;
        }
        v /= d;
    }
    Some(if neg { -v } else { v })
}

/// A real number with a certified absolute error bound: the true value lies
/// in `[value − err, value + err]`.
#[derive(Clone, Debug)]
pub struct Approx {
    pub value: BigFloat,
    pub err: BigFloat,
}

impl Approx {
    pub fn exact(cx: &Ctx, value: BigFloat) -> Self {
        Approx { value, err: cx.zero() }
    }

    pub fn new(value: BigFloat, err: BigFloat) -> Self {
        Approx { value, err }
    }

    pub fn add(&self, cx: &Ctx, other: &Approx) -> Approx {
        let value = cx.add(&self.value, &other.value);
        let err = cx.add(&cx.add(&self.err, &other.err), &cx.rounding_slack(&value));
        Approx { value, err }
    }

    pub fn sub(&self, cx: &Ctx, other: &Approx) -> Approx {
        let value = cx.sub(&self.value, &other.value);
        let err = cx.add(&cx.add(&self.err, &other.err), &cx.rounding_slack(&value));
        Approx { value, err }
    }

    pub fn mul(&self, cx: &Ctx, other: &Approx) -> Approx {
        let value = cx.mul(&self.value, &other.value);
        let cross = cx.add(
            &cx.add(
                &cx.mul(&self.value.abs(), &other.err),
                &cx.mul(&other.value.abs(), &self.err),
            ),
            &cx.mul(&self.err, &other.err),
        );
        let err = cx.add(&cross, &cx.rounding_slack(&value));
        Approx { value, err }
    }

    /// Requires `|other.value| > other.err` (denominator bounded away from 0).
    pub fn div(&self, cx: &Ctx, other: &Approx) -> Approx {
        let value = cx.div(&self.value, &other.value);
        let denom_lo = cx.sub(&other.value.abs(), &other.err);
        assert!(
            cx.lt(&cx.zero(), &denom_lo),
            "division by a quantity not bounded away from zero"
        );
        let num = cx.add(&self.err, &cx.mul(&value.abs(), &other.err));
        let err = cx.add(&cx.div(&num, &denom_lo), &cx.rounding_slack(&value));
        Approx { value, err }
    }

    /// Natural log; requires value − err > 0.
    pub fn ln(&self, cx: &Ctx) -> Approx {
        let lo = cx.sub(&self.value, &self.err);
        assert!(cx.lt(&cx.zero(), &lo), "log of a quantity not bounded away from zero");
        let value = cx.ln(&self.value);
        // |ln(x) − ln(v)| ≤ err / min(x, v)
        let err = cx.add(&cx.div(&self.err, &lo), &cx.rounding_slack(&value));
        Approx { value, err }
    }

    pub fn exp(&self, cx: &Ctx) -> Approx {
        let value = cx.exp(&self.value);
        // |e^x − e^v| ≤ e^v (e^err − 1) ≤ 2 e^v err for err ≤ 1/2
        let factor = cx.mul(&cx.int(2), &self.err);
        let err = cx.add(&cx.mul(&value.abs(), &factor), &cx.rounding_slack(&value));
        Approx { value, err }
    }

    pub fn neg(&self, cx: &Ctx) -> Approx {
        let _ = cx;
        Approx { value: self.value.neg(), err: self.err.clone() }
    }

    /// Integer power of either sign, propagated by repeated mul/div.
    pub fn powz(&self, cx: &Ctx, g: i64) -> Approx {
        let mut acc = Approx::exact(cx, cx.one());
        for _ in 0..g.unsigned_abs() {
            acc = acc.mul(cx, self);
        }
        if g < 0 {
            Approx::exact(cx, cx.one()).div(cx, &acc)
        } else {
            acc
        }
    }

    pub fn to_report_string(&self, cx: &Ctx, digits: usize) -> String {
        format!("{} ± {}", cx.dec_string(&self.value, digits), cx.dec_string(&self.err, 3))
    }
}

/// Dense square matrix of BigFloat, row-major.
#[derive(Clone)]
pub struct FloatMat {
    n: usize,
    data: Vec<BigFloat>,
}

impl FloatMat {
    pub fn zeros(cx: &Ctx, n: usize) -> Self {
        FloatMat { n, data: vec![cx.zero(); n * n] }
    }

    pub fn identity(cx: &Ctx, n: usize) -> Self {
        let mut m = Self::zeros(cx, n);
        for i in 0..n {
            m.data[i * n + i] = cx.one();
        }
        m
    }

    pub fn from_int(cx: &Ctx, a: &IntMatrix) -> Self {
        let n = a.dim();
        let mut m = Self::zeros(cx, n);
        for r in 0..n {
            for c in 0..n {
                m.data[r * n + c] = cx.from_bigint(a.get(r, c));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &BigFloat {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigFloat) {
        self.data[r * self.n + c] = v;
    }

    pub fn transpose(&self) -> FloatMat {
        let n = self.n;
        let mut out = self.clone();
        for r in 0..n {
            for c in 0..n {
                out.data[c * n + r] = self.data[r * n + c].clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, cx: &Ctx, v: &[BigFloat]) -> Vec<BigFloat> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|r| {
                let mut acc = cx.zero();
                for c in 0..self.n {
                    acc = cx.add(&acc, &cx.mul(self.get(r, c), &v[c]));
                }
                acc
            })
            .collect()
    }

    /// `self − t * other`.
    pub fn sub_scaled(&self, cx: &Ctx, t: &BigFloat, other: &FloatMat) -> FloatMat {
        assert_eq!(self.n, other.n);
        FloatMat {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| cx.sub(a, &cx.mul(t, b)))
                .collect(),
        }
    }

    /// Solve `self * x = b` by Gaussian elimination with partial pivoting,
    /// followed by one step of iterative refinement at doubled precision.
    /// Returns the solution and the ∞-norm of the final residual `b − Ax`
    /// (computed at doubled precision).
    pub fn solve(&self, cx: &Ctx, b: &[BigFloat]) -> Result<(Vec<BigFloat>, BigFloat), SingularMatrix> {
        let mut x = self.solve_raw(cx, b)?;
        let wide = Ctx::new(cx.prec * 2);
        let r = residual(&wide, self, &x, b);
        let dx = self.solve_raw(cx, &r)?;
        for i in 0..x.len() {
            x[i] = cx.add(&x[i], &dx[i]);
        }
        let r2 = residual(&wide, self, &x, b);
        let norm = vec_norm_inf(&wide, &r2);
        Ok((x, norm))
    }

    fn solve_raw(&self, cx: &Ctx, b: &[BigFloat]) -> Result<Vec<BigFloat>, SingularMatrix> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let mut piv = col;
            let mut best = a.get(perm[col], col).abs();
            for r in col + 1..n {
                let cand = a.get(perm[r], col).abs();
                if cx.lt(&best, &cand) {
                    best = cand;
                    piv = r;
                }
            }
            if best.is_zero() {
                return Err(SingularMatrix);
            }
            perm.swap(col, piv);
            let prow = perm[col];
            let pval = a.get(prow, col).clone();
            for r in col + 1..n {
                let row = perm[r];
                let factor = cx.div(a.get(row, col), &pval);
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = cx.sub(a.get(row, c), &cx.mul(&factor, a.get(prow, c)));
                    a.set(row, c, v);
                }
                rhs[row] = cx.sub(&rhs[row], &cx.mul(&factor, &rhs[prow]));
            }
        }
        let mut x = vec![cx.zero(); n];
        for col in (0..n).rev() {
            let row = perm[col];
            let mut acc = rhs[row].clone();
            for c in col + 1..n {
                acc = cx.sub(&acc, &cx.mul(a.get(row, c), &x[c]));
            }
            x[col] = cx.div(&acc, a.get(row, col));
        }
        Ok(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingularMatrix;

fn residual(wide: &Ctx, a: &FloatMat, x: &[BigFloat], b: &[BigFloat]) -> Vec<BigFloat> {
    let ax = a.mul_vec(wide, x);
    b.iter().zip(&ax).map(|(bi, axi)| wide.sub(bi, axi)).collect()
}

pub fn vec_norm_inf(cx: &Ctx, v: &[BigFloat]) -> BigFloat {
    v.iter().fold(cx.zero(), |acc, x| cx.max(&acc, &x.abs()))
}

pub fn vec_norm_1(cx: &Ctx, v: &[BigFloat]) -> BigFloat {
    v.iter().fold(cx.zero(), |acc, x| cx.add(&acc, &x.abs()))
}

pub fn vec_sum(cx: &Ctx, v: &[BigFloat]) -> BigFloat {
    v.iter().fold(cx.zero(), |acc, x| cx.add(&acc, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_to_many_digits() {
        let cx = Ctx::new(256);
        let s = cx.sqrt(&cx.int(2));
        let sq = cx.mul(&s, &s);
        let diff = cx.sub(&sq, &cx.int(2)).abs();
        assert!(cx.lt(&diff, &cx.pow2(-250)));
    }

    #[test]
    fn solve_small_system() {
        // M = I − A/2 for the tridiagonal 0/1 matrix; M·(3,4,3) = (1,1,1)
        let cx = Ctx::new(192);
        let a = IntMatrix::from_rows_i64(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
        let half = cx.div(&cx.one(), &cx.int(2));
        let m = FloatMat::identity(&cx, 3).sub_scaled(&cx, &half, &FloatMat::from_int(&cx, &a));
        let b = vec![cx.one(), cx.one(), cx.one()];
        let (x, res) = m.solve(&cx, &b).unwrap();
        assert!(cx.lt(&cx.sub(&x[0], &cx.int(3)).abs(), &cx.pow2(-180)));
        assert!(cx.lt(&cx.sub(&x[1], &cx.int(4)).abs(), &cx.pow2(-180)));
        assert!(cx.lt(&res, &cx.pow2(-180)));
    }

    #[test]
    fn approx_propagation_is_conservative() {
        let cx = Ctx::new(128);
        let a = Approx::new(cx.int(2), cx.pow2(-100));
        let b = Approx::new(cx.int(3), cx.pow2(-100));
        let p = a.mul(&cx, &b);
        assert!(cx.le(&cx.pow2(-100), &p.err));
        assert!(cx.lt(&p.err, &cx.pow2(-90)));
        let l = p.ln(&cx);
        let expected = cx.ln(&cx.int(6));
        assert!(cx.lt(&cx.sub(&l.value, &expected).abs(), &l.err));
    }

    #[test]
    fn round_to_bigint_handles_signs_and_magnitudes() {
        let cx = Ctx::new(128);
        assert_eq!(cx.round_to_bigint(&cx.int(0)), BigInt::from(0));
        assert_eq!(cx.round_to_bigint(&cx.parse("2.4999")), BigInt::from(2));
        assert_eq!(cx.round_to_bigint(&cx.parse("-17.6")), BigInt::from(-18));
        assert_eq!(cx.round_to_bigint(&cx.parse("1.23e5")), BigInt::from(123000));
    }

    #[test]
    fn dec_string_is_deterministic() {
        let cx = Ctx::new(256);
        let s1 = cx.dec_string(&cx.sqrt(&cx.int(2)), 30);
        let s2 = cx.dec_string(&cx.sqrt(&cx.int(2)), 30);
        assert_eq!(s1, s2);
        assert!(s1.starts_with("1.4142135623730950488"));
    }
}
