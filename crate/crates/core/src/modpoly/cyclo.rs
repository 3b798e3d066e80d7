//! Exact series over the cyclotomic integers Z[zeta_p], p prime.
//!
//! Elements are integer vectors over the power basis 1, zeta, ...,
//! zeta^(p-2); the fractional exponents q^(1/p) of the modular-polynomial
//! product are handled by substituting q = w^p and working in integer
//! powers of w.

use rug::Integer;

use crate::error::{Error, Result};
use crate::qseries::IntSeries;

/// An element of Z[zeta_p] over the power basis (length p-1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycInt {
    pub c: Vec<Integer>,
}

impl CycInt {
    pub fn zero(p: u64) -> Self {
        CycInt { c: vec![Integer::new(); (p - 1) as usize] }
    }

    pub fn from_integer(n: Integer, p: u64) -> Self {
        let mut z = CycInt::zero(p);
        z.c[0] = n;
        z
    }

    /// `n * zeta^e` with e reduced modulo p.
    pub fn monomial(n: Integer, e: u64, p: u64) -> Self {
        let mut z = CycInt::zero(p);
        let e = e % p;
        if e == p - 1 {
            // zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
            for k in 0..(p - 1) as usize {
                z.c[k] = Integer::from(-&n);
            }
        } else {
            z.c[e as usize] = n;
        }
        z
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| *x == 0)
    }

    /// The rational-integer part, if the element lies in Z.
    pub fn as_integer(&self) -> Option<Integer> {
        if self.c[1..].iter().all(|x| *x == 0) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn add_assign(&mut self, other: &CycInt) {
        for (a, b) in self.c.iter_mut().zip(other.c.iter()) {
            *a += b;
        }
    }

    pub fn neg(&self) -> CycInt {
        CycInt { c: self.c.iter().map(|x| Integer::from(-x)).collect() }
    }

    pub fn mul(&self, other: &CycInt, p: u64) -> CycInt {
        let n = (p - 1) as usize;
        // convolution in exponent space 0..2n-2, then reduce zeta^k for
        // k >= n via zeta^p = 1 and zeta^(p-1) = -(sum of lower powers)
        let mut raw = vec![Integer::new(); 2 * n - 1];
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if *b == 0 {
                    continue;
                }
                raw[i + j] += Integer::from(a * b);
            }
        }
        let mut out = CycInt::zero(p);
        for (e, v) in raw.into_iter().enumerate() {
            if v == 0 {
                continue;
            }
            let e = (e as u64) % p;
            if e == p - 1 {
                for k in 0..n {
                    out.c[k] -= &v;
                }
            } else {
                out.c[e as usize] += v;
            }
        }
        out
    }
}

/// Truncated series in `w` with Z[zeta_p] coefficients, known modulo
/// `w^trunc`.
#[derive(Clone, Debug)]
pub struct CycSeries {
    pub p: u64,
    pub val: i64,
    pub coeffs: Vec<CycInt>,
    pub trunc: i64,
}

impl CycSeries {
    pub fn zero(p: u64, trunc: i64) -> Self {
        CycSeries { p, val: trunc, coeffs: Vec::new(), trunc }
    }

    pub fn coeff(&self, e: i64) -> CycInt {
        assert!(e < self.trunc);
        if e < self.val || (e - self.val) as usize >= self.coeffs.len() {
            CycInt::zero(self.p)
        } else {
            self.coeffs[(e - self.val) as usize].clone()
        }
    }

    fn normalize(mut self) -> Self {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => CycSeries::zero(self.p, self.trunc),
            Some(k) => {
                if k > 0 {
                    self.coeffs.drain(..k);
                    self.val += k as i64;
                }
                self
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Builds `sum_n c(n) zeta^(i n) w^n` from an integer Laurent series:
    /// the expansion of `J(zeta^i w)` when fed J's coefficients.
    pub fn twist(series: &IntSeries, i: u64, p: u64) -> CycSeries {
        let val = series.valuation();
        let mut coeffs = Vec::with_capacity(series.coeffs().len());
        for (k, c) in series.coeffs().iter().enumerate() {
            let n = val + k as i64;
            let e = (((i as i64 * n) % p as i64) + p as i64) as u64 % p;
            coeffs.push(if *c == 0 {
                CycInt::zero(p)
            } else {
                CycInt::monomial(c.clone(), e, p)
            });
        }
        CycSeries { p, val, coeffs, trunc: series.trunc() }.normalize()
    }

    /// Embeds an integer series (e.g. `J(w^(p^2))`).
    pub fn embed(series: &IntSeries, p: u64) -> CycSeries {
        let coeffs = series
            .coeffs()
            .iter()
            .map(|c| CycInt::from_integer(c.clone(), p))
            .collect();
        CycSeries { p, val: series.valuation(), coeffs, trunc: series.trunc() }.normalize()
    }

    pub fn add(&self, other: &CycSeries) -> CycSeries {
        assert_eq!(self.p, other.p);
        let trunc = self.trunc.min(other.trunc);
        let val = self.val.min(other.val).min(trunc);
        let mut coeffs = vec![CycInt::zero(self.p); (trunc - val) as usize];
        for s in [self, other] {
            for (k, c) in s.coeffs.iter().enumerate() {
                let e = s.val + k as i64;
                if e >= trunc {
                    break;
                }
                coeffs[(e - val) as usize].add_assign(c);
            }
        }
        CycSeries { p: self.p, val, coeffs, trunc }.normalize()
    }

    pub fn neg(&self) -> CycSeries {
        CycSeries {
            p: self.p,
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            trunc: self.trunc,
        }
    }

    pub fn mul(&self, other: &CycSeries) -> CycSeries {
        assert_eq!(self.p, other.p);
        let trunc = (self.trunc + other.val).min(other.trunc + self.val);
        if self.is_zero() || other.is_zero() {
            return CycSeries::zero(self.p, trunc);
        }
        let val = self.val + other.val;
        let len = (trunc - val).max(0) as usize;
        let mut coeffs = vec![CycInt::zero(self.p); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j].add_assign(&a.mul(b, self.p));
            }
        }
        CycSeries { p: self.p, val, coeffs, trunc }.normalize()
    }

    /// Converts to an integer series in `q = w^p`; every coefficient must
    /// lie in Z and sit at an exponent divisible by p (the cancellation the
    /// modular-polynomial product must produce).
    pub fn into_q_series(&self) -> Result<IntSeries> {
        let p = self.p as i64;
        // exponents present: val .. trunc-1; q-range:
        let q_lo = self.val.div_euclid(p);
        let q_trunc = self.trunc.div_euclid(p);
        if q_trunc <= q_lo {
            return Ok(IntSeries::zero(q_trunc));
        }
        let mut out = vec![Integer::new(); (q_trunc - q_lo) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = self.val + k as i64;
            if c.is_zero() {
                continue;
            }
            let n = c.as_integer().ok_or_else(|| {
                Error::Determination(format!(
                    "coefficient of w^{} is not a rational integer",
                    e
                ))
            })?;
            if n == 0 {
                continue;
            }
            if e.rem_euclid(p) != 0 {
                return Err(Error::Determination(format!(
                    "nonzero coefficient at fractional exponent {}/{}",
                    e, p
                )));
            }
            let qe = e.div_euclid(p);
            if qe >= q_trunc {
                continue;
            }
            out[(qe - q_lo) as usize] = n;
        }
        Ok(IntSeries::new(q_lo, out, q_trunc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_relation() {
        // 1 + zeta + zeta^2 + ... + zeta^(p-1) = 0 for p = 5
        let p = 5;
        let mut acc = CycInt::zero(p);
        for e in 0..p {
            acc.add_assign(&CycInt::monomial(Integer::from(1), e, p));
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn zeta_powers_multiply() {
        let p = 5;
        let z2 = CycInt::monomial(Integer::from(1), 2, p);
        let z4 = CycInt::monomial(Integer::from(1), 4, p);
        // zeta^2 * zeta^4 = zeta^6 = zeta
        let prod = z2.mul(&z4, p);
        assert_eq!(prod, CycInt::monomial(Integer::from(1), 1, p));
    }

    #[test]
    fn twist_sum_over_classes_is_sifting() {
        // sum_i J(zeta^i w) keeps only exponents divisible by p, times p
        let p = 3u64;
        let j = crate::qseries::j_expansion(7).unwrap();
        let mut acc = CycSeries::zero(p, j.trunc());
        for i in 0..p {
            acc = acc.add(&CycSeries::twist(&j, i, p));
        }
        let qs = acc.into_q_series().unwrap();
        // q-coefficient at e equals p * c(p e)
        for e in qs.valuation()..qs.trunc() {
            let expect = Integer::from(3) * j.coeff(3 * e);
            assert_eq!(qs.coeff(e), expect, "exponent {}", e);
        }
    }
}
