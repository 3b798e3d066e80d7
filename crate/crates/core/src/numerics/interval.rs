//! Certified real intervals over MPFR floats.
//!
//! Every operation rounds outward, so the result always contains the exact
//! image of the operand intervals. Raising the working precision tightens
//! enclosures but never breaks containment.

use rug::float::{Constant, Round};
use rug::ops::{
    AddAssignRound, DivAssignRound, MulAssignRound, SubAssignRound,
};
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// A closed real interval `[lo, hi]` with outward-rounded endpoints.
#[derive(Clone, Debug)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

fn cl(x: &Float, prec: u32) -> Float {
    // exact copy when prec suffices; callers re-round via directed ops
    Float::with_val(prec.max(x.prec()), x)
}

impl Interval {
    pub fn new(lo: Float, hi: Float) -> Self {
        assert!(lo.is_finite() && hi.is_finite(), "interval endpoints must be finite");
        assert!(lo <= hi, "interval endpoints out of order: {} > {}", lo, hi);
        Interval { lo, hi }
    }

    pub fn point(x: Float) -> Self {
        assert!(x.is_finite());
        Interval { lo: x.clone(), hi: x }
    }

    pub fn zero(prec: u32) -> Self {
        Self::point(Float::with_val(prec, 0))
    }

    pub fn one(prec: u32) -> Self {
        Self::point(Float::with_val(prec, 1))
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::point(Float::with_val(prec.max(64), n))
    }

    pub fn from_integer(n: &Integer, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, n, Round::Down).0;
        let hi = Float::with_val_round(prec, n, Round::Up).0;
        Interval { lo, hi }
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let lo = Float::with_val_round(prec, r, Round::Down).0;
        let hi = Float::with_val_round(prec, r, Round::Up).0;
        Interval { lo, hi }
    }

    /// Parses a decimal literal into an outward-rounded enclosure.
    pub fn from_decimal_str(s: &str, prec: u32) -> Result<Self> {
        let parsed = Float::parse(s).map_err(|e| Error::Parse(format!("`{}`: {}", s, e)))?;
        let lo = Float::with_val_round(prec, parsed, Round::Down).0;
        let parsed = Float::parse(s).map_err(|e| Error::Parse(format!("`{}`: {}", s, e)))?;
        let hi = Float::with_val_round(prec, parsed, Round::Up).0;
        Ok(Interval { lo, hi })
    }

    pub fn pi(prec: u32) -> Self {
        let lo = Float::with_val_round(prec, Constant::Pi, Round::Down).0;
        let hi = Float::with_val_round(prec, Constant::Pi, Round::Up).0;
        Interval { lo, hi }
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    /// Hull of the two intervals.
    pub fn union(&self, other: &Interval) -> Interval {
        let lo = if self.lo <= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi >= other.hi { self.hi.clone() } else { other.hi.clone() };
        Interval { lo, hi }
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        !(self.hi < other.lo || other.hi < self.lo)
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo > 0
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi < 0
    }

    /// `true` when every point of `self` is <= every point of `other`.
    pub fn certainly_le(&self, other: &Interval) -> bool {
        self.hi <= other.lo
    }

    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_ge(&self, other: &Interval) -> bool {
        self.lo >= other.hi
    }

    pub fn contains_integer(&self, n: &Integer) -> bool {
        self.lo <= *n && self.hi >= *n
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        self.lo <= *r && self.hi >= *r
    }

    pub fn width_up(&self) -> Float {
        let mut w = cl(&self.hi, self.prec());
        w.sub_assign_round(&self.lo, Round::Up);
        w
    }

    pub fn mid(&self) -> Float {
        let p = self.prec();
        let mut m = cl(&self.lo, p);
        m.add_assign_round(&self.hi, Round::Nearest);
        m.div_assign_round(2u32, Round::Nearest);
        m
    }

    /// Upper bound for the distance from `mid()` to either endpoint.
    pub fn rad_up(&self) -> Float {
        let m = self.mid();
        let mut a = cl(&self.hi, self.prec());
        a.sub_assign_round(&m, Round::Up);
        let mut b = m;
        b.sub_assign_round(&self.lo, Round::Up);
        if a >= b {
            a
        } else {
            b
        }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        let p = self.prec().max(other.prec());
        let mut lo = cl(&self.lo, p);
        lo.add_assign_round(&other.lo, Round::Down);
        let mut hi = cl(&self.hi, p);
        hi.add_assign_round(&other.hi, Round::Up);
        Interval { lo, hi }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        let p = self.prec().max(other.prec());
        let mut lo = cl(&self.lo, p);
        lo.sub_assign_round(&other.hi, Round::Down);
        let mut hi = cl(&self.hi, p);
        hi.sub_assign_round(&other.lo, Round::Up);
        Interval { lo, hi }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let p = self.prec().max(other.prec());
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let mut d = cl(a, p);
            d.mul_assign_round(b, Round::Down);
            let mut u = cl(a, p);
            u.mul_assign_round(b, Round::Up);
            lo = Some(match lo {
                None => d,
                Some(cur) => {
                    if d < cur {
                        d
                    } else {
                        cur
                    }
                }
            });
            hi = Some(match hi {
                None => u,
                Some(cur) => {
                    if u > cur {
                        u
                    } else {
                        cur
                    }
                }
            });
        }
        Interval { lo: lo.unwrap(), hi: hi.unwrap() }
    }

    /// Tight square: never dips below zero for mixed-sign operands.
    pub fn square(&self) -> Interval {
        let p = self.prec();
        if self.lo >= 0 {
            let mut lo = cl(&self.lo, p);
            lo.mul_assign_round(&self.lo, Round::Down);
            let mut hi = cl(&self.hi, p);
            hi.mul_assign_round(&self.hi, Round::Up);
            Interval { lo, hi }
        } else if self.hi <= 0 {
            let mut lo = cl(&self.hi, p);
            lo.mul_assign_round(&self.hi, Round::Down);
            let mut hi = cl(&self.lo, p);
            hi.mul_assign_round(&self.lo, Round::Up);
            Interval { lo, hi }
        } else {
            let mut a = cl(&self.lo, p);
            a.mul_assign_round(&self.lo, Round::Up);
            let mut b = cl(&self.hi, p);
            b.mul_assign_round(&self.hi, Round::Up);
            let hi = if a >= b { a } else { b };
            Interval { lo: Float::with_val(p, 0), hi }
        }
    }

    pub fn div(&self, other: &Interval) -> Result<Interval> {
        if other.contains_zero() {
            return Err(Error::CannotCertify("division by interval containing zero".into()));
        }
        let p = self.prec().max(other.prec());
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let mut d = cl(a, p);
            d.div_assign_round(b, Round::Down);
            let mut u = cl(a, p);
            u.div_assign_round(b, Round::Up);
            lo = Some(match lo {
                None => d,
                Some(cur) => {
                    if d < cur {
                        d
                    } else {
                        cur
                    }
                }
            });
            hi = Some(match hi {
                None => u,
                Some(cur) => {
                    if u > cur {
                        u
                    } else {
                        cur
                    }
                }
            });
        }
        Ok(Interval { lo: lo.unwrap(), hi: hi.unwrap() })
    }

    pub fn recip(&self) -> Result<Interval> {
        Interval::one(self.prec()).div(self)
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            self.neg()
        } else {
            let a = -self.lo.clone();
            let hi = if a >= self.hi { a } else { self.hi.clone() };
            Interval { lo: Float::with_val(self.prec(), 0), hi }
        }
    }

    /// Square root; the true operand set must be nonnegative (a slightly
    /// negative lower endpoint from outward rounding is clamped to zero).
    pub fn sqrt(&self) -> Result<Interval> {
        if self.hi < 0 {
            return Err(Error::Domain("sqrt of negative interval".into()));
        }
        let p = self.prec();
        let mut lo = if self.lo < 0 { Float::with_val(p, 0) } else { cl(&self.lo, p) };
        lo.sqrt_round(Round::Down);
        let mut hi = cl(&self.hi, p);
        hi.sqrt_round(Round::Up);
        Ok(Interval { lo, hi })
    }

    pub fn ln(&self) -> Result<Interval> {
        if self.lo <= 0 {
            return Err(Error::CannotCertify("log of interval touching zero".into()));
        }
        let p = self.prec();
        let mut lo = cl(&self.lo, p);
        lo.ln_round(Round::Down);
        let mut hi = cl(&self.hi, p);
        hi.ln_round(Round::Up);
        Ok(Interval { lo, hi })
    }

    pub fn exp(&self) -> Interval {
        let p = self.prec();
        let mut lo = cl(&self.lo, p);
        lo.exp_round(Round::Down);
        let mut hi = cl(&self.hi, p);
        hi.exp_round(Round::Up);
        Interval { lo, hi }
    }

    pub fn atan(&self) -> Interval {
        let p = self.prec();
        let mut lo = cl(&self.lo, p);
        lo.atan_round(Round::Down);
        let mut hi = cl(&self.hi, p);
        hi.atan_round(Round::Up);
        Interval { lo, hi }
    }

    /// Nonnegative integer power by square-and-multiply.
    pub fn powi(&self, mut e: u64) -> Interval {
        let p = self.prec();
        if e == 0 {
            return Interval::one(p);
        }
        let mut base = self.clone();
        let mut acc: Option<Interval> = None;
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
            base = base.square();
        }
        acc.unwrap()
    }

    /// Rational power `x^(num/den)` for a strictly positive base.
    pub fn pow_ratio(&self, num: i64, den: u64) -> Result<Interval> {
        assert!(den > 0);
        let ln = self.ln()?;
        let e = Interval::from_i64(num, self.prec())
            .div(&Interval::from_i64(den as i64, self.prec()))?;
        Ok(ln.mul(&e).exp())
    }

    pub fn max_with(&self, other: &Interval) -> Interval {
        let lo = if self.lo >= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi >= other.hi { self.hi.clone() } else { other.hi.clone() };
        Interval { lo, hi }
    }

    pub fn min_with(&self, other: &Interval) -> Interval {
        let lo = if self.lo <= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi <= other.hi { self.hi.clone() } else { other.hi.clone() };
        Interval { lo, hi }
    }

    /// Sine over the interval, extrema-aware.
    pub fn sin(&self) -> Interval {
        self.trig(true)
    }

    /// Cosine over the interval, extrema-aware.
    pub fn cos(&self) -> Interval {
        self.trig(false)
    }

    fn trig(&self, is_sin: bool) -> Interval {
        let p = self.prec();
        let full = Interval::new(Float::with_val(p, -1), Float::with_val(p, 1));
        let two_pi = Interval::pi(p).mul(&Interval::from_i64(2, p));
        if self.width_up() >= *two_pi.lo() {
            return full;
        }
        let ev = |x: &Float| -> Interval {
            let mut lo = cl(x, p);
            let mut hi = cl(x, p);
            if is_sin {
                lo.sin_round(Round::Down);
                hi.sin_round(Round::Up);
            } else {
                lo.cos_round(Round::Down);
                hi.cos_round(Round::Up);
            }
            Interval { lo, hi }
        };
        let mut out = ev(&self.lo).union(&ev(&self.hi));
        // extrema of sin at pi/2 + k*pi (value (-1)^k), of cos at k*pi
        let pi = Interval::pi(p);
        let half = Interval::from_rational(&Rational::from((1, 2)), p);
        let shift = if is_sin { half } else { Interval::zero(p) };
        // k range so that pi*(k + shift) may intersect [lo, hi]
        let t_lo = Interval::point(self.lo.clone()).div(&pi).unwrap().sub(&shift);
        let t_hi = Interval::point(self.hi.clone()).div(&pi).unwrap().sub(&shift);
        let k_min = t_lo.lo().to_f64().floor() as i64 - 1;
        let k_max = t_hi.hi().to_f64().ceil() as i64 + 1;
        for k in k_min..=k_max {
            let x_ext = pi.mul(&Interval::from_i64(k, p).add(&shift));
            let inside = !(x_ext.hi < self.lo || x_ext.lo > self.hi);
            if inside {
                let v: i64 = if k.rem_euclid(2) == 0 { 1 } else { -1 };
                out = out.union(&Interval::from_i64(v, p));
            }
        }
        // clamp to [-1, 1]
        let lo = if out.lo < -1 { Float::with_val(p, -1) } else { out.lo };
        let hi = if out.hi > 1 { Float::with_val(p, 1) } else { out.hi };
        Interval { lo, hi }
    }

    /// Outward re-rounding to a (usually smaller) precision.
    pub fn with_prec(&self, prec: u32) -> Interval {
        let lo = Float::with_val_round(prec, &self.lo, Round::Down).0;
        let hi = Float::with_val_round(prec, &self.hi, Round::Up).0;
        Interval { lo, hi }
    }

    /// Decimal rendering of both endpoints, outward.
    pub fn to_decimal_strings(&self, digits: usize) -> (String, String) {
        let lo = self.lo.to_string_radix_round(10, Some(digits), Round::Down);
        let hi = self.hi.to_string_radix_round(10, Some(digits), Round::Up);
        (lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_third_is_enclosed() {
        let r = Rational::from((1, 3));
        let iv = Interval::from_rational(&r, 64);
        assert!(iv.lo() < iv.hi());
        assert!(iv.contains_rational(&r));
    }

    #[test]
    fn mul_signs() {
        let a = Interval::new(Float::with_val(64, -2), Float::with_val(64, 3));
        let b = Interval::new(Float::with_val(64, -5), Float::with_val(64, 1));
        let c = a.mul(&b);
        // exact range is [-15, 10]
        assert!(*c.lo() <= -15 && *c.hi() >= 10);
        assert!(*c.lo() >= -16 && *c.hi() <= 11);
    }

    #[test]
    fn square_of_mixed_interval_is_nonnegative() {
        let a = Interval::new(Float::with_val(64, -1), Float::with_val(64, 2));
        let s = a.square();
        assert!(*s.lo() >= 0);
        assert!(*s.hi() >= 4);
    }

    #[test]
    fn sin_has_extremum() {
        // [1, 2] contains pi/2, so sin range must reach 1
        let a = Interval::new(Float::with_val(64, 1), Float::with_val(64, 2));
        let s = a.sin();
        assert!(*s.hi() >= 1);
        assert!(*s.lo() > 0.8);
    }

    #[test]
    fn cos_on_small_interval() {
        let a = Interval::new(Float::with_val(64, 1), Float::with_val(64, 1.1f64));
        let c = a.cos();
        assert!(*c.hi() < 0.55 && *c.lo() > 0.44);
    }

    #[test]
    fn ln_exp_roundtrip_contains() {
        let a = Interval::from_i64(7, 96);
        let b = a.ln().unwrap().exp();
        assert!(b.contains_integer(&Integer::from(7)));
    }

    #[test]
    fn powi_mixed_even() {
        let a = Interval::new(Float::with_val(64, -1), Float::with_val(64, 2));
        let s = a.powi(2);
        assert!(*s.lo() >= 0);
    }

    #[test]
    fn division_by_zero_interval_rejected() {
        let a = Interval::from_i64(1, 64);
        let b = Interval::new(Float::with_val(64, -1), Float::with_val(64, 1));
        assert!(a.div(&b).is_err());
    }
}
