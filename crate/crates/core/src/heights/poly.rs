//! Exact univariate integer polynomials: content/primitive part,
//! subresultant GCD, squarefree part, resultants (including bivariate via
//! fraction-free determinants), and cyclotomic polynomials.

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::{Ball, Interval};

/// Dense univariate polynomial over Z; index = degree of the monomial.
/// Invariant: no trailing zero coefficient (the zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPoly {
    coeffs: Vec<Integer>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Integer) -> Self {
        ZPoly::new(vec![c])
    }

    pub fn from_i64(cs: &[i64]) -> Self {
        ZPoly::new(cs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn x() -> Self {
        ZPoly::from_i64(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Integer {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn lead(&self) -> Integer {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|c| Integer::from(-c)).collect() }
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Integer::new(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        ZPoly::new(out)
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![Integer::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += Integer::from(a * b);
            }
        }
        ZPoly::new(out)
    }

    pub fn scalar_mul(&self, c: &Integer) -> ZPoly {
        if *c == 0 {
            return ZPoly::zero();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|a| Integer::from(a * c)).collect() }
    }

    pub fn shift_up(&self, k: usize) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![Integer::new(); k];
        out.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs: out }
    }

    pub fn derivative(&self) -> ZPoly {
        if self.coeffs.len() <= 1 {
            return ZPoly::zero();
        }
        ZPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| Integer::from(c * (i as u32 + 1)))
                .collect(),
        )
    }

    /// gcd of all coefficients (nonnegative; 0 for the zero polynomial).
    pub fn content(&self) -> Integer {
        let mut g = Integer::new();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Content removed, leading coefficient made positive.
    pub fn primitive_part(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut g = self.content();
        if self.lead() < 0 {
            g = -g;
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| Integer::from(c / &g)).collect(),
        }
    }

    /// Exact division; errors if the division leaves a remainder.
    pub fn div_exact(&self, other: &ZPoly) -> Result<ZPoly> {
        if other.is_zero() {
            return Err(Error::Domain("polynomial division by zero".into()));
        }
        if self.is_zero() {
            return Ok(ZPoly::zero());
        }
        let (dn, dd) = (self.coeffs.len(), other.coeffs.len());
        if dn < dd {
            return Err(Error::Domain("inexact polynomial division".into()));
        }
        let mut rem = self.coeffs.clone();
        let mut out = vec![Integer::new(); dn - dd + 1];
        let lead = other.lead();
        for k in (0..out.len()).rev() {
            let (q, r) = rem[k + dd - 1].clone().div_rem(lead.clone());
            if r != 0 {
                return Err(Error::Domain("inexact polynomial division".into()));
            }
            if q != 0 {
                for (j, b) in other.coeffs.iter().enumerate() {
                    let t = Integer::from(&q * b);
                    rem[k + j] -= t;
                }
            }
            out[k] = q;
        }
        if rem.iter().any(|c| *c != 0) {
            return Err(Error::Domain("inexact polynomial division".into()));
        }
        Ok(ZPoly::new(out))
    }

    /// Pseudo-remainder of `self` by `other` (Knuth-style, with the sign
    /// convention absorbed into the caller).
    fn pseudo_rem(&self, other: &ZPoly) -> ZPoly {
        let d = other.degree().expect("nonzero divisor");
        let mut r = self.clone();
        let lead = other.lead();
        while let Some(rd) = r.degree() {
            if rd < d {
                break;
            }
            let scale = r.lead();
            r = r.scalar_mul(&lead).sub(&other.shift_up(rd - d).scalar_mul(&scale));
            debug_assert!(r.degree().map_or(true, |nd| nd < rd));
        }
        r
    }

    /// Primitive GCD (content discarded, positive leading coefficient), by
    /// the primitive Euclidean algorithm. Sufficient for squarefree parts.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Squarefree part: `self / gcd(self, self')`, primitive with positive
    /// leading coefficient.
    pub fn squarefree_part(&self) -> Result<ZPoly> {
        if self.is_zero() {
            return Err(Error::Domain("squarefree part of zero".into()));
        }
        let p = self.primitive_part();
        if p.is_constant() {
            return Ok(ZPoly::constant(Integer::from(1)));
        }
        let g = p.gcd(&p.derivative());
        if g.is_constant() {
            return Ok(p);
        }
        // p = g * h up to a rational unit; divide the scaled p exactly
        let scaled = p.scalar_mul(&g.lead());
        let h = scaled.div_exact(&g)?;
        Ok(h.primitive_part())
    }

    /// Sum of absolute values of the coefficients.
    pub fn length(&self) -> Integer {
        let mut s = Integer::new();
        for c in &self.coeffs {
            s += Integer::from(c.abs_ref());
        }
        s
    }

    /// Max absolute value of the coefficients.
    pub fn height(&self) -> Integer {
        let mut h = Integer::new();
        for c in &self.coeffs {
            let a = Integer::from(c.abs_ref());
            if a > h {
                h = a;
            }
        }
        h
    }

    pub fn eval_integer(&self, x: &Integer) -> Integer {
        let mut acc = Integer::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_ball(&self, z: &Ball, prec: u32) -> Ball {
        let mut acc = Ball::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z);
            if *c != 0 {
                acc = acc.add(&Ball::from_integer(c, prec));
            }
        }
        acc
    }

    pub fn eval_interval(&self, x: &Interval, prec: u32) -> Interval {
        let mut acc = Interval::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x);
            if *c != 0 {
                acc = acc.add(&Interval::from_integer(c, prec));
            }
        }
        acc
    }

    /// Reversed coefficients: the minimal polynomial of `1/alpha` up to
    /// normalization.
    pub fn reverse(&self) -> ZPoly {
        let mut c: Vec<Integer> = self.coeffs.iter().rev().cloned().collect();
        while c.last().is_some_and(|x| *x == 0) {
            c.pop();
        }
        ZPoly::new(c)
    }

    /// `self(x + a)` for integer a.
    pub fn compose_shift(&self, a: &Integer) -> ZPoly {
        // Horner in (x + a)
        let mut acc = ZPoly::zero();
        let shift = ZPoly::new(vec![a.clone(), Integer::from(1)]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&shift);
            acc = acc.add(&ZPoly::constant(c.clone()));
        }
        acc
    }
}

/// Resultant of two integer polynomials via the subresultant PRS.
pub fn resultant(a: &ZPoly, b: &ZPoly) -> Integer {
    // determinant of the Sylvester matrix by fraction-free elimination;
    // the degrees here are small, exactness matters more than speed
    let (m, n) = match (a.degree(), b.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Integer::new(),
    };
    if m == 0 {
        return a.lead().pow_u32(n as u32);
    }
    if n == 0 {
        return b.lead().pow_u32(m as u32);
    }
    let size = m + n;
    let mut mat = vec![vec![Integer::new(); size]; size];
    for row in 0..n {
        for (j, c) in a.coeffs.iter().enumerate() {
            mat[row][row + (m - j)] = c.clone();
        }
    }
    for row in 0..m {
        for (j, c) in b.coeffs.iter().enumerate() {
            mat[n + row][row + (n - j)] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut m: Vec<Vec<Integer>>) -> Integer {
    let n = m.len();
    if n == 0 {
        return Integer::from(1);
    }
    let mut sign = 1i32;
    let mut prev = Integer::from(1);
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&i| m[i][k] != 0);
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Integer::new(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = Integer::from(&m[k][k] * &m[i][j]) - Integer::from(&m[i][k] * &m[k][j]);
                m[i][j] = t / &prev;
            }
            m[i][k] = Integer::new();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

trait PowU32 {
    fn pow_u32(&self, e: u32) -> Integer;
}

impl PowU32 for Integer {
    fn pow_u32(&self, e: u32) -> Integer {
        use rug::ops::Pow;
        Integer::from(self.pow(e))
    }
}

/// Cyclotomic polynomial `Phi_n` by repeated exact division of `x^n - 1`.
pub fn cyclotomic(n: u64) -> ZPoly {
    assert!(n >= 1);
    let mut num = {
        let mut c = vec![Integer::new(); n as usize + 1];
        c[0] = Integer::from(-1);
        c[n as usize] = Integer::from(1);
        ZPoly::new(c)
    };
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic(d);
            num = num.div_exact(&phi_d).expect("cyclotomic division is exact");
        }
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_squarefree() {
        // (x-1)^2 (x+2)
        let p = ZPoly::from_i64(&[-1, 1]).mul(&ZPoly::from_i64(&[-1, 1])).mul(&ZPoly::from_i64(&[2, 1]));
        let sf = p.squarefree_part().unwrap();
        let expect = ZPoly::from_i64(&[-1, 1]).mul(&ZPoly::from_i64(&[2, 1]));
        assert_eq!(sf, expect.primitive_part());
    }

    #[test]
    fn resultant_of_linear_pair() {
        // res(x - 2, x - 3) = 2 - 3 = -1 up to sign convention
        let a = ZPoly::from_i64(&[-2, 1]);
        let b = ZPoly::from_i64(&[-3, 1]);
        let r = resultant(&a, &b);
        assert!(r == 1 || r == -1);
        // res(x^2 - 2, x^2 - 2) = 0 (common root)
        let c = ZPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(resultant(&c, &c), Integer::new());
    }

    #[test]
    fn resultant_value_known() {
        // res(x^2 - 2, x - 1) = (1)^2 - 2 = -1; general:
        // res(f, x - a) = f(a) * lead(x-a)^... = f(a)
        let f = ZPoly::from_i64(&[-2, 0, 1]);
        let g = ZPoly::from_i64(&[-1, 1]);
        let r = resultant(&f, &g);
        assert!(r == -1 || r == 1);
        let f = ZPoly::from_i64(&[-2, 0, 1]);
        let g = ZPoly::from_i64(&[-3, 1]);
        // f(3) = 7
        assert_eq!(resultant(&f, &g).abs(), Integer::from(7));
    }

    #[test]
    fn division_exactness() {
        let a = ZPoly::from_i64(&[1, 2, 1]); // (x+1)^2
        let b = ZPoly::from_i64(&[1, 1]);
        assert_eq!(a.div_exact(&b).unwrap(), b);
        assert!(ZPoly::from_i64(&[1, 0, 1]).div_exact(&b).is_err());
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), ZPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), ZPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(4), ZPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), ZPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), ZPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn eval_routes_agree() {
        let p = ZPoly::from_i64(&[3, -1, 0, 2]);
        assert_eq!(p.eval_integer(&Integer::from(2)), Integer::from(17));
        let r = p.eval_rational(&Rational::from((1, 2)));
        assert_eq!(r, Rational::from((11, 4)));
        let iv = p.eval_interval(&Interval::from_rational(&Rational::from((1, 2)), 64), 64);
        assert!(iv.contains_rational(&Rational::from((11, 4))));
    }
}
