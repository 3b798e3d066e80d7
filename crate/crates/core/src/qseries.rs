//! Exact truncated Laurent series over arbitrary-precision integers, and the
//! canonical expansions of the discriminant form, Eisenstein E4, and the
//! j-invariant.
//!
//! A series is always known *modulo* `q^trunc`; arithmetic tracks how far the
//! result is still exact. Extending a series silently is forbidden: recompute
//! from the generators instead.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use rug::Integer;

use crate::error::{Error, Result};

/// Truncated Laurent series with integer coefficients.
///
/// Index `k` of `coeffs` stores the coefficient of `q^(valuation + k)`, and
/// the series is known modulo `q^trunc`. A nonzero series is normalized so
/// that `coeffs[0] != 0`; the zero series (zero modulo `q^trunc`) is flagged
/// explicitly and stores no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeries {
    valuation: i64,
    coeffs: Vec<Integer>,
    trunc: i64,
    zero: bool,
}

/// Result of [`IntSeries::vanishing_order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// Exponent of the first nonzero coefficient.
    At(i64),
    /// All stored coefficients vanish; the order is >= the stored truncation.
    BelowTruncation(i64),
}

impl IntSeries {
    /// Builds a series from raw parts and normalizes it.
    pub fn new(valuation: i64, coeffs: Vec<Integer>, trunc: i64) -> Self {
        assert!(
            trunc - valuation == coeffs.len() as i64,
            "coeffs must span exactly [valuation, trunc)"
        );
        let mut s = IntSeries { valuation, coeffs, trunc, zero: false };
        s.normalize();
        s
    }

    /// The zero series modulo `q^trunc`.
    pub fn zero(trunc: i64) -> Self {
        IntSeries { valuation: trunc, coeffs: Vec::new(), trunc, zero: true }
    }

    /// The constant series `c`, known modulo `q^trunc` (requires trunc > 0).
    pub fn constant(c: Integer, trunc: i64) -> Self {
        assert!(trunc > 0, "constant series needs trunc > 0");
        let mut coeffs = vec![Integer::new(); trunc as usize];
        coeffs[0] = c;
        IntSeries::new(0, coeffs, trunc)
    }

    /// The monomial `q^e`, known modulo `q^trunc`.
    pub fn monomial(e: i64, trunc: i64) -> Self {
        assert!(trunc > e);
        let mut coeffs = vec![Integer::new(); (trunc - e) as usize];
        coeffs[0] = Integer::from(1);
        IntSeries::new(e, coeffs, trunc)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| *c != 0);
        match lead {
            None => {
                *self = IntSeries::zero(self.trunc);
            }
            Some(k) => {
                if k > 0 {
                    self.coeffs.drain(..k);
                    self.valuation += k as i64;
                }
                self.zero = false;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// Valuation of a nonzero series; for the zero series this equals the
    /// truncation (no coefficient is known to be nonzero below it).
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    /// Coefficient of `q^e` (zero off the stored support; `e` must be below
    /// the truncation, otherwise the coefficient is simply unknown).
    pub fn coeff(&self, e: i64) -> Integer {
        assert!(e < self.trunc, "coefficient of q^{} is beyond the truncation {}", e, self.trunc);
        if self.zero || e < self.valuation {
            return Integer::new();
        }
        self.coeffs[(e - self.valuation) as usize].clone()
    }

    /// Exponent of the first nonzero coefficient, or `BelowTruncation`.
    pub fn vanishing_order(&self) -> Order {
        if self.zero {
            Order::BelowTruncation(self.trunc)
        } else {
            Order::At(self.valuation)
        }
    }

    pub fn add(&self, other: &IntSeries) -> IntSeries {
        let trunc = self.trunc.min(other.trunc);
        if self.zero && other.zero {
            return IntSeries::zero(trunc);
        }
        let val = self.effective_valuation().min(other.effective_valuation()).min(trunc);
        let mut coeffs = vec![Integer::new(); (trunc - val) as usize];
        for s in [self, other] {
            if s.zero {
                continue;
            }
            for (k, c) in s.coeffs.iter().enumerate() {
                let e = s.valuation + k as i64;
                if e >= trunc {
                    break;
                }
                coeffs[(e - val) as usize] += c;
            }
        }
        IntSeries::new(val, coeffs, trunc)
    }

    pub fn sub(&self, other: &IntSeries) -> IntSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> IntSeries {
        if self.zero {
            return self.clone();
        }
        let coeffs = self.coeffs.iter().map(|c| Integer::from(-c)).collect();
        IntSeries { valuation: self.valuation, coeffs, trunc: self.trunc, zero: false }
    }

    fn effective_valuation(&self) -> i64 {
        if self.zero {
            self.trunc
        } else {
            self.valuation
        }
    }

    /// Exact product. The result is known modulo
    /// `q^min(a.trunc + b.valuation, b.trunc + a.valuation)`.
    pub fn mul(&self, other: &IntSeries) -> IntSeries {
        let trunc = (self.trunc + other.effective_valuation())
            .min(other.trunc + self.effective_valuation());
        if self.zero || other.zero {
            return IntSeries::zero(trunc);
        }
        let val = self.valuation + other.valuation;
        let len = (trunc - val).max(0) as usize;
        let mut coeffs = vec![Integer::new(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] += Integer::from(a * b);
            }
        }
        IntSeries::new(val, coeffs, trunc)
    }

    /// Multiplies by the scalar `c`.
    pub fn scalar_mul(&self, c: &Integer) -> IntSeries {
        if self.zero || *c == 0 {
            return IntSeries::zero(self.trunc);
        }
        let coeffs = self.coeffs.iter().map(|a| Integer::from(a * c)).collect();
        IntSeries { valuation: self.valuation, coeffs, trunc: self.trunc, zero: false }
    }

    /// Nonnegative power by square-and-multiply.
    pub fn pow(&self, e: u64) -> IntSeries {
        if e == 0 {
            return IntSeries::constant(Integer::from(1), self.trunc.max(1));
        }
        let mut e = e;
        let mut base = self.clone();
        let mut acc: Option<IntSeries> = None;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc.unwrap()
    }

    /// Multiplies by `q^i`.
    pub fn shift(&self, i: i64) -> IntSeries {
        if self.zero {
            return IntSeries::zero(self.trunc + i);
        }
        IntSeries {
            valuation: self.valuation + i,
            coeffs: self.coeffs.clone(),
            trunc: self.trunc + i,
            zero: false,
        }
    }

    /// Exact division; the divisor's leading coefficient must divide exactly
    /// at every step (true for the unit-lead generators used here).
    pub fn div_exact(&self, other: &IntSeries) -> Result<IntSeries> {
        if other.zero {
            return Err(Error::Domain("division by zero series".into()));
        }
        let trunc = self.trunc.min(other.trunc) - other.valuation;
        if self.zero {
            return Ok(IntSeries::zero(trunc));
        }
        let val = self.valuation - other.valuation;
        let len = (trunc - val) as usize;
        let lead = &other.coeffs[0];
        let mut rem: Vec<Integer> = self.coeffs.clone();
        let mut out = vec![Integer::new(); len];
        for k in 0..len {
            if k >= rem.len() {
                break;
            }
            let (q, r) = rem[k].clone().div_rem(lead.clone());
            if r != 0 {
                return Err(Error::Domain(format!(
                    "series division is not exact at offset {}",
                    k
                )));
            }
            if q != 0 {
                let top = rem.len().min(k + other.coeffs.len());
                for j in (k + 1)..top {
                    let sub = Integer::from(&q * &other.coeffs[j - k]);
                    rem[j] -= sub;
                }
            }
            out[k] = q;
        }
        Ok(IntSeries::new(val, out, trunc))
    }

    /// Substitutes `q -> q^m` for m >= 1.
    pub fn compose_power(&self, m: i64) -> IntSeries {
        assert!(m >= 1);
        if self.zero {
            return IntSeries::zero(self.trunc * m);
        }
        let val = self.valuation * m;
        // exact through q^(m*(trunc-1)) inclusive
        let trunc = m * (self.trunc - 1) + 1;
        let mut coeffs = vec![Integer::new(); (trunc - val) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * m as usize] = c.clone();
        }
        IntSeries::new(val, coeffs, trunc)
    }

    /// Truncates to a smaller bound (never extends).
    pub fn truncate(&self, trunc: i64) -> IntSeries {
        assert!(trunc <= self.trunc, "silent extension of a series is forbidden");
        if self.zero || trunc <= self.valuation {
            return IntSeries::zero(trunc);
        }
        let len = (trunc - self.valuation) as usize;
        IntSeries::new(self.valuation, self.coeffs[..len].to_vec(), trunc)
    }

    /// Writes the series file format: first line `valuation trunc`, then one
    /// decimal coefficient per line in increasing exponent order.
    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        let mut buf = String::new();
        writeln!(buf, "{} {}", self.effective_valuation(), self.trunc).expect("fmt");
        for c in &self.coeffs {
            writeln!(buf, "{}", c).expect("fmt");
        }
        w.write_all(buf.as_bytes())?;
        Ok(())
    }

    /// Reads the series file format written by [`IntSeries::write_to`].
    pub fn read_from(r: &mut impl BufRead) -> Result<IntSeries> {
        let mut header = String::new();
        r.read_line(&mut header)?;
        let mut it = header.split_whitespace();
        let val: i64 = it
            .next()
            .ok_or_else(|| Error::Parse("missing valuation".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("valuation: {}", e)))?;
        let trunc: i64 = it
            .next()
            .ok_or_else(|| Error::Parse("missing trunc".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("trunc: {}", e)))?;
        let mut coeffs = Vec::new();
        for line in r.lines() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            coeffs.push(
                Integer::from_str_radix(t, 10)
                    .map_err(|e| Error::Parse(format!("coefficient: {}", e)))?,
            );
        }
        if coeffs.len() as i64 != trunc - val {
            return Err(Error::Parse(format!(
                "expected {} coefficients, found {}",
                trunc - val,
                coeffs.len()
            )));
        }
        Ok(if coeffs.is_empty() {
            IntSeries::zero(trunc)
        } else {
            IntSeries::new(val, coeffs, trunc)
        })
    }
}

/// Euler product `prod_{n>=1} (1 - q^n)` modulo `q^K` via the pentagonal
/// number theorem.
fn euler_product(trunc: i64) -> IntSeries {
    assert!(trunc >= 1);
    let mut coeffs = vec![Integer::new(); trunc as usize];
    coeffs[0] = Integer::from(1);
    let mut k: i64 = 1;
    loop {
        let g1 = k * (3 * k - 1) / 2;
        let g2 = k * (3 * k + 1) / 2;
        if g1 >= trunc && g2 >= trunc {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        for g in [g1, g2] {
            if g < trunc {
                coeffs[g as usize] += sign;
            }
        }
        k += 1;
    }
    IntSeries::new(0, coeffs, trunc)
}

/// Expansion of the modular discriminant `Delta = q prod (1-q^n)^24`
/// modulo `q^K`.
pub fn delta_expansion(trunc: i64) -> Result<IntSeries> {
    if trunc < 2 {
        return Err(Error::InvalidTruncation(format!(
            "delta needs trunc >= 2, got {}",
            trunc
        )));
    }
    let eta24 = euler_product(trunc - 1).pow(24).truncate(trunc - 1);
    Ok(eta24.shift(1))
}

/// Eisenstein series `E4 = 1 + 240 sum sigma_3(n) q^n` modulo `q^K`.
pub fn e4_expansion(trunc: i64) -> Result<IntSeries> {
    if trunc < 1 {
        return Err(Error::InvalidTruncation(format!("E4 needs trunc >= 1, got {}", trunc)));
    }
    let mut coeffs = vec![Integer::new(); trunc as usize];
    coeffs[0] = Integer::from(1);
    for d in 1..trunc {
        let d3 = Integer::from(d) * Integer::from(d) * Integer::from(d) * Integer::from(240);
        let mut m = d;
        while m < trunc {
            coeffs[m as usize] += &d3;
            m += d;
        }
    }
    Ok(IntSeries::new(0, coeffs, trunc))
}

/// The j-invariant `J = E4^3 / Delta` modulo `q^K` (valuation -1).
pub fn j_expansion(trunc: i64) -> Result<IntSeries> {
    if trunc < 0 {
        return Err(Error::InvalidTruncation(format!("J needs trunc >= 0, got {}", trunc)));
    }
    // the quotient loses one order against the divisor's valuation
    let k_in = trunc + 2;
    let e4 = e4_expansion(k_in)?;
    let num = e4.pow(3).truncate(k_in);
    let den = delta_expansion(k_in)?;
    Ok(num.div_exact(&den)?.truncate(trunc))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: expand `prod_{n=1}^{K-1} (1-q^n)^24` by repeated
    /// naive polynomial multiplication, independent of the pentagonal route.
    fn eta24_oracle(trunc: i64) -> Vec<Integer> {
        let mut acc = vec![Integer::new(); trunc as usize];
        acc[0] = Integer::from(1);
        for n in 1..trunc {
            for _ in 0..24 {
                // multiply by (1 - q^n)
                let mut next = acc.clone();
                for e in 0..trunc {
                    if e + n < trunc {
                        let t = acc[e as usize].clone();
                        next[(e + n) as usize] -= t;
                    }
                }
                acc = next;
            }
        }
        acc
    }

    #[test]
    fn delta_leading_terms() {
        let d = delta_expansion(8).unwrap();
        assert_eq!(d.valuation(), 1);
        assert_eq!(d.trunc(), 8);
        assert_eq!(d.coeff(1), Integer::from(1));
        // [DERIVED] oracle: brute-force eta-product expansion
        let oracle = eta24_oracle(7);
        for e in 1..8 {
            assert_eq!(d.coeff(e), oracle[(e - 1) as usize], "tau({})", e);
        }
        assert_eq!(d.coeff(2), Integer::from(-24));
        assert_eq!(d.coeff(3), Integer::from(252));
        assert_eq!(d.coeff(4), Integer::from(-1472));
    }

    #[test]
    fn delta_minimal_truncation() {
        let d = delta_expansion(2).unwrap();
        assert_eq!(d.coeffs().len(), 1);
        assert!(delta_expansion(1).is_err());
    }

    #[test]
    fn j_first_coefficients() {
        let j = j_expansion(2).unwrap();
        assert_eq!(j.valuation(), -1);
        assert_eq!(j.coeff(-1), Integer::from(1));
        assert_eq!(j.coeff(0), Integer::from(744));
        assert_eq!(j.coeff(1), Integer::from(196884));
    }

    #[test]
    fn j_simple_pole_at_k0() {
        let j = j_expansion(0).unwrap();
        assert_eq!(j.coeff(-1), Integer::from(1));
    }

    #[test]
    fn j_times_delta_is_e4_cubed() {
        let k = 32;
        let j = j_expansion(k).unwrap();
        let d = delta_expansion(k).unwrap();
        let prod = j.mul(&d);
        assert_eq!(prod.coeff(0), Integer::from(1));
        assert_eq!(prod.coeff(1), Integer::from(720));
        // [DERIVED] oracle: brute-force cube of the sigma_3 expansion
        let e4 = e4_expansion(k).unwrap();
        let mut cube = vec![Integer::new(); k as usize];
        for a in 0..k {
            for b in 0..k - a {
                for c in 0..k - a - b {
                    let t = Integer::from(&e4.coeff(a) * &e4.coeff(b));
                    cube[(a + b + c) as usize] += t * e4.coeff(c);
                }
            }
        }
        for e in 0..prod.trunc().min(k) {
            assert_eq!(prod.coeff(e), cube[e as usize], "exponent {}", e);
        }
    }

    #[test]
    fn arithmetic_identities() {
        let one_plus_q = IntSeries::new(0, vec![Integer::from(1), Integer::from(1)], 2);
        let one_minus_q = IntSeries::new(0, vec![Integer::from(1), Integer::from(-1)], 2);
        let p = one_plus_q.mul(&one_minus_q);
        // (1+q)(1-q) = 1 - q^2, but the product is only known mod q^2
        assert_eq!(p.coeff(0), Integer::from(1));
        assert_eq!(p.coeff(1), Integer::from(0));
        assert_eq!(p.trunc(), 2);

        let d = delta_expansion(9).unwrap();
        assert_eq!(d.pow(2).valuation(), 2);

        let j = j_expansion(3).unwrap();
        let zj = j.shift(1);
        assert_eq!(zj.valuation(), 0);
        assert_eq!(zj.coeff(0), Integer::from(1));
    }

    #[test]
    fn vanishing_orders() {
        let d = delta_expansion(12).unwrap();
        assert_eq!(d.vanishing_order(), Order::At(1));
        // Delta^2 J = Delta * E4^3 has valuation 1
        let j = j_expansion(12).unwrap();
        let d2j = d.pow(2).mul(&j);
        assert_eq!(d2j.vanishing_order(), Order::At(1));
        let z = IntSeries::zero(10);
        assert_eq!(z.vanishing_order(), Order::BelowTruncation(10));
        // cancellation drops to the zero flag
        let s = d.sub(&d);
        assert!(s.is_zero());
        assert_eq!(s.vanishing_order(), Order::BelowTruncation(12));
    }

    #[test]
    fn file_format_roundtrip() {
        let j = j_expansion(5).unwrap();
        let mut buf = Vec::new();
        j.write_to(&mut buf).unwrap();
        let back = IntSeries::read_from(&mut buf.as_slice()).unwrap();
        assert_eq!(j, back);
        let z = IntSeries::zero(4);
        let mut buf = Vec::new();
        z.write_to(&mut buf).unwrap();
        let back = IntSeries::read_from(&mut buf.as_slice()).unwrap();
        assert!(back.is_zero());
        assert_eq!(back.trunc(), 4);
    }

    #[test]
    fn compose_power_matches_substitution() {
        let j = j_expansion(6).unwrap();
        let j2 = j.compose_power(2);
        assert_eq!(j2.valuation(), -2);
        for e in -2..j2.trunc() {
            let expected = if e % 2 == 0 { j.coeff(e / 2) } else { Integer::new() };
            assert_eq!(j2.coeff(e), expected, "exponent {}", e);
        }
    }
}
