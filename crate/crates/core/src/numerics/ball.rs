//! Certified complex enclosures: midpoint/radius disk balls.
//!
//! A [`Ball`] is a complex midpoint at working precision plus an error
//! radius covering both the operand radii and every rounding made while
//! computing the midpoint. Disks are rotation-invariant, so long
//! multiplicative chains (eta products, high powers) lose nothing to
//! directional bounding-box effects.

use rug::float::Round;
use rug::ops::{AddAssignRound, SubAssignRound};
use rug::{Float, Integer, Rational};

use super::interval::Interval;
use crate::error::{Error, Result};

/// Certified complex enclosure `{z : |z - mid| <= rad}`: every operation
/// returns a ball containing the exact image of all points of the operand
/// balls.
#[derive(Clone, Debug)]
pub struct Ball {
    mre: Float,
    mim: Float,
    rad: Float,
}

fn fup(a: &Float, b: &Float, prec: u32) -> Float {
    let mut x = Float::with_val(prec, a);
    x.add_assign_round(b, Round::Up);
    x
}

impl Ball {
    fn from_parts(mre: Float, mim: Float, rad: Float) -> Self {
        assert!(rad.is_finite() && rad >= 0, "ball radius must be finite and nonnegative");
        assert!(mre.is_finite() && mim.is_finite());
        Ball { mre, mim, rad }
    }

    /// Disk covering the rectangle `re x im`.
    pub fn new(re: Interval, im: Interval) -> Self {
        let prec = re.prec().max(im.prec());
        let mre = re.mid();
        let mim = im.mid();
        let dr = Interval::point(re.rad_up());
        let di = Interval::point(im.rad_up());
        let rad = dr.square().add(&di.square()).sqrt().expect("nonnegative");
        let _ = prec;
        Ball::from_parts(mre, mim, rad.hi().clone())
    }

    pub fn from_real(re: Interval) -> Self {
        let prec = re.prec();
        Ball::from_parts(re.mid(), Float::with_val(prec, 0), re.rad_up())
    }

    pub fn zero(prec: u32) -> Self {
        Ball::from_parts(Float::with_val(prec, 0), Float::with_val(prec, 0), Float::with_val(prec, 0))
    }

    pub fn one(prec: u32) -> Self {
        Ball::from_parts(Float::with_val(prec, 1), Float::with_val(prec, 0), Float::with_val(prec, 0))
    }

    pub fn from_integer(n: &Integer, prec: u32) -> Self {
        Ball::from_real(Interval::from_integer(n, prec))
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        Ball::from_real(Interval::from_rational(r, prec))
    }

    pub fn prec(&self) -> u32 {
        self.mre.prec().max(self.mim.prec())
    }

    pub fn mid_re(&self) -> Float {
        self.mre.clone()
    }

    pub fn mid_im(&self) -> Float {
        self.mim.clone()
    }

    pub fn rad_up(&self) -> Float {
        self.rad.clone()
    }

    /// Real-part enclosure `[mre - rad, mre + rad]`.
    pub fn re(&self) -> Interval {
        let prec = self.prec();
        let mut lo = Float::with_val(prec, &self.mre);
        lo.sub_assign_round(&self.rad, Round::Down);
        let hi = fup(&self.mre, &self.rad, prec);
        Interval::new(lo, hi)
    }

    /// Imaginary-part enclosure.
    pub fn im(&self) -> Interval {
        let prec = self.prec();
        let mut lo = Float::with_val(prec, &self.mim);
        lo.sub_assign_round(&self.rad, Round::Down);
        let hi = fup(&self.mim, &self.rad, prec);
        Interval::new(lo, hi)
    }

    /// |mid| as an interval (rounding only).
    fn mid_abs(&self) -> Interval {
        let re = Interval::point(self.mre.clone());
        let im = Interval::point(self.mim.clone());
        re.square().add(&im.square()).sqrt().expect("nonnegative")
    }

    /// |z| enclosure.
    pub fn abs(&self) -> Interval {
        let prec = self.prec();
        let m = self.mid_abs();
        let mut lo = Float::with_val(prec, m.lo());
        lo.sub_assign_round(&self.rad, Round::Down);
        if lo < 0 {
            lo = Float::with_val(prec, 0);
        }
        let hi = fup(m.hi(), &self.rad, prec);
        Interval::new(lo, hi)
    }

    pub fn norm_sq(&self) -> Interval {
        self.abs().square()
    }

    pub fn contains_zero(&self) -> bool {
        !(self.mid_abs().lo() > &self.rad)
    }

    /// Certified: every point of the ball is nonzero.
    pub fn excludes_zero(&self) -> bool {
        self.mid_abs().lo() > &self.rad
    }

    pub fn neg(&self) -> Ball {
        Ball::from_parts(-self.mre.clone(), -self.mim.clone(), self.rad.clone())
    }

    pub fn conj(&self) -> Ball {
        Ball::from_parts(self.mre.clone(), -self.mim.clone(), self.rad.clone())
    }

    /// Collapses midpoint point-intervals plus a radius term into a ball.
    fn collapse(re: Interval, im: Interval, rad_extra: &Float) -> Ball {
        let prec = re.prec().max(im.prec());
        let slop = Interval::point(re.rad_up())
            .square()
            .add(&Interval::point(im.rad_up()).square())
            .sqrt()
            .expect("nonnegative");
        let rad = fup(slop.hi(), rad_extra, prec);
        Ball::from_parts(re.mid(), im.mid(), rad)
    }

    pub fn add(&self, other: &Ball) -> Ball {
        let prec = self.prec().max(other.prec());
        let re = Interval::point(self.mre.clone()).add(&Interval::point(other.mre.clone()));
        let im = Interval::point(self.mim.clone()).add(&Interval::point(other.mim.clone()));
        let rad = fup(&self.rad, &other.rad, prec);
        Ball::collapse(re, im, &rad)
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        let prec = self.prec().max(other.prec());
        let ar = Interval::point(self.mre.clone());
        let ai = Interval::point(self.mim.clone());
        let br = Interval::point(other.mre.clone());
        let bi = Interval::point(other.mim.clone());
        let re = ar.mul(&br).sub(&ai.mul(&bi));
        let im = ar.mul(&bi).add(&ai.mul(&br));
        // |a| rb + |b| ra + ra rb, rounded up
        let a_abs = self.mid_abs();
        let b_abs = other.mid_abs();
        let ra = Interval::point(self.rad.clone());
        let rb = Interval::point(other.rad.clone());
        let cross = a_abs.mul(&rb).add(&b_abs.mul(&ra)).add(&ra.mul(&rb));
        let rad = Float::with_val(prec, cross.hi());
        Ball::collapse(re, im, &rad)
    }

    pub fn square(&self) -> Ball {
        self.mul(self)
    }

    /// Multiplies by a real interval.
    pub fn scale(&self, s: &Interval) -> Ball {
        self.mul(&Ball::from_real(s.clone()))
    }

    pub fn recip(&self) -> Result<Ball> {
        let prec = self.prec();
        let m = self.mid_abs();
        if !(m.lo() > &self.rad) {
            return Err(Error::CannotCertify("reciprocal of ball containing zero".into()));
        }
        // 1/mid as point intervals
        let ar = Interval::point(self.mre.clone());
        let ai = Interval::point(self.mim.clone());
        let n = ar.square().add(&ai.square());
        let re = ar.div(&n)?;
        let im = ai.neg().div(&n)?;
        // |1/z - 1/m| <= rad / (|m| (|m| - rad))
        let ra = Interval::point(self.rad.clone());
        let denom = m.mul(&m.sub(&ra));
        if !denom.is_strictly_positive() {
            return Err(Error::PrecisionInsufficient("reciprocal radius blow-up".into()));
        }
        let extra = ra.div(&denom)?;
        let rad = Float::with_val(prec, extra.hi());
        Ok(Ball::collapse(re, im, &rad))
    }

    pub fn div(&self, other: &Ball) -> Result<Ball> {
        Ok(self.mul(&other.recip()?))
    }

    /// Integer power, square-and-multiply; negative exponents require the
    /// ball to exclude zero.
    pub fn powi(&self, e: i64) -> Result<Ball> {
        if e < 0 {
            return self.recip()?.powi(-e);
        }
        let mut e = e as u64;
        if e == 0 {
            return Ok(Ball::one(self.prec()));
        }
        let mut base = self.clone();
        let mut acc: Option<Ball> = None;
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
        Ok(acc.unwrap())
    }

    /// Adds `r >= 0` to the radius: contains `{z + w : |w| <= r}`.
    pub fn inflate(&self, r: &Float) -> Ball {
        assert!(*r >= 0);
        let rad = fup(&self.rad, r, self.prec());
        Ball::from_parts(self.mre.clone(), self.mim.clone(), rad)
    }

    /// Multiplies by the disk `{w : |w - 1| <= s}`, used for certified
    /// infinite-product tails.
    pub fn mul_one_plus_disk(&self, s: &Interval) -> Ball {
        let prec = self.prec();
        let factor = Ball::from_parts(
            Float::with_val(prec, 1),
            Float::with_val(prec, 0),
            Float::with_val(prec, s.hi()).max(&Float::with_val(prec, 0)),
        );
        self.mul(&factor)
    }

    /// Hull of two balls.
    pub fn union(&self, other: &Ball) -> Ball {
        let re = self.re().union(&other.re());
        let im = self.im().union(&other.im());
        Ball::new(re, im)
    }

    /// `false` only when the balls are certifiably disjoint.
    pub fn intersects(&self, other: &Ball) -> bool {
        // sub() already folds both radii into the result's radius
        self.sub(other).abs().contains_zero()
    }

    /// Argument enclosure: a cone around `arg(mid)` of half-width
    /// `asin(rad / |mid|)`; requires the ball to exclude zero. Principal
    /// branch except around the negative real axis, where the branch near
    /// `+pi` is used.
    pub fn arg(&self) -> Result<Interval> {
        let prec = self.prec();
        let m = self.mid_abs();
        if !(m.lo() > &self.rad) {
            return Err(Error::CannotCertify("argument of ball touching zero".into()));
        }
        // arg of the midpoint, by quarter-turn rotation of point intervals
        let re = Interval::point(self.mre.clone());
        let im = Interval::point(self.mim.clone());
        let (rot_re, rot_im, k): (Interval, Interval, i64) = if re.is_strictly_positive() {
            (re, im, 0)
        } else if im.is_strictly_positive() {
            (im, re.neg(), 1)
        } else if im.is_strictly_negative() {
            (im.neg(), re, -1)
        } else {
            // mid on the closed negative real axis (im == 0, re <= 0)
            (re.neg(), im.neg(), 2)
        };
        let base = rot_im.div(&rot_re)?.atan();
        let quarter = Interval::pi(prec)
            .mul(&Interval::from_i64(k, prec))
            .mul(&Interval::from_rational(&Rational::from((1, 2)), prec));
        let mid_arg = base.add(&quarter);
        // half-angle: asin(rad/|m|) = atan(t / sqrt(1 - t^2)), t = rad/|m|
        let t = Interval::point(self.rad.clone()).div(&m)?;
        let one = Interval::one(prec);
        let s = one.sub(&t.square());
        if !(s.hi() > &0) {
            return Err(Error::CannotCertify("argument cone too wide".into()));
        }
        let half = t
            .div(&s.sqrt().map_err(|_| Error::CannotCertify("argument cone too wide".into()))?)?
            .atan()
            .abs();
        let spread = Interval::new(half.neg().lo().clone(), half.hi().clone());
        Ok(mid_arg.add(&spread))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_i_squared_is_minus_one() {
        let i = Ball::new(Interval::zero(64), Interval::one(64));
        let sq = i.mul(&i);
        assert!(sq.re().contains_integer(&Integer::from(-1)));
        assert!(sq.im().contains_zero());
        assert!(*sq.re().hi() < -0.999f64);
    }

    #[test]
    fn recip_of_two() {
        let two = Ball::from_integer(&Integer::from(2), 64);
        let half = two.recip().unwrap();
        assert!(half.re().contains_rational(&Rational::from((1, 2))));
        assert!(half.rad_up().to_f64() < 1e-15);
    }

    #[test]
    fn abs_of_three_four() {
        let z = Ball::new(Interval::from_i64(3, 64), Interval::from_i64(4, 64));
        let a = z.abs();
        assert!(a.contains_integer(&Integer::from(5)));
    }

    #[test]
    fn arg_quadrants() {
        let p = 64;
        let z = Ball::new(Interval::from_i64(1, p), Interval::from_i64(1, p));
        let a = z.arg().unwrap();
        assert!(a.lo().to_f64() < 0.7854 && a.hi().to_f64() > 0.7853);
        let z = Ball::new(Interval::from_i64(-1, p), Interval::from_i64(1, p));
        let a = z.arg().unwrap();
        assert!(a.lo().to_f64() < 2.3562 && a.hi().to_f64() > 2.3561);
        let z = Ball::new(Interval::from_i64(-1, p), Interval::from_i64(-1, p));
        let a = z.arg().unwrap();
        assert!(a.lo().to_f64() < -2.3561 && a.hi().to_f64() > -2.3563);
        // on the negative real axis: branch near +pi
        let z = Ball::from_integer(&Integer::from(-5), p);
        let a = z.arg().unwrap();
        assert!(a.lo().to_f64() > 3.1 && a.hi().to_f64() < 3.2);
    }

    #[test]
    fn arg_width_tracks_relative_radius() {
        let p = 96;
        let z = Ball::from_integer(&Integer::from(10), p)
            .inflate(&Float::with_val(p, 1));
        let a = z.arg().unwrap();
        // asin(1/10) ~ 0.1002
        assert!(a.hi().to_f64() < 0.101 && a.lo().to_f64() > -0.101);
        assert!(a.hi().to_f64() > 0.0998);
    }

    #[test]
    fn powi_negative() {
        let two = Ball::from_integer(&Integer::from(2), 64);
        let inv8 = two.powi(-3).unwrap();
        assert!(inv8.re().contains_rational(&Rational::from((1, 8))));
    }

    #[test]
    fn powers_amplify_radius_linearly() {
        // disk balls: rel radius of z^e stays ~ e times the base rel radius
        let p = 128;
        let z = Ball::new(
            Interval::from_decimal_str("0.3", p).unwrap(),
            Interval::from_decimal_str("0.4", p).unwrap(),
        )
        .inflate(&Float::with_val(p, 1e-6f64));
        let z24 = z.powi(24).unwrap();
        let rel_in = 1e-6f64 / 0.5;
        let rel_out = z24.rad_up().to_f64() / z24.abs().mid().to_f64();
        assert!(rel_out < 40.0 * rel_in, "rel_out = {:e}", rel_out);
    }

    #[test]
    fn contains_zero_boundary() {
        let p = 64;
        let z = Ball::from_integer(&Integer::from(1), p).inflate(&Float::with_val(p, 2));
        assert!(z.contains_zero());
        assert!(!z.excludes_zero());
        let z = Ball::from_integer(&Integer::from(1), p).inflate(&Float::with_val(p, 0.5f64));
        assert!(z.excludes_zero());
    }
}
