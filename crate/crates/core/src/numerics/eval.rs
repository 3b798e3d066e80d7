//! Rigorous evaluation of truncated integer series inside the unit disk,
//! with explicit tail majorants for coefficients of polynomial growth.

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::ball::Ball;
use super::interval::Interval;
use crate::error::{Error, Result};
use crate::qseries::IntSeries;

/// Upper bound for `sum_{n>=0} (M+n)^K r^n`, namely
/// `(M+1)^K * K! / (1-r)^(K+1)`, outward-rounded.
pub fn schwarz_tail_majorant(m: &Integer, k: u32, r: &Interval) -> Result<Interval> {
    let prec = r.prec();
    let one = Interval::one(prec);
    if !r.certainly_lt(&one) || r.lo() < &0 {
        return Err(Error::Domain(format!(
            "majorant needs 0 <= r < 1, got [{}, {}]",
            r.lo(),
            r.hi()
        )));
    }
    let m1 = Interval::from_integer(&Integer::from(m + 1u32), prec);
    let fact = Interval::from_integer(&Integer::from(Integer::factorial(k)), prec);
    let den = one.sub(r).powi(k as u64 + 1);
    m1.powi(k as u64).mul(&fact).div(&den)
}

/// Coefficient-growth hypothesis for the dropped tail of a series.
#[derive(Clone, Debug)]
pub enum TailBound {
    /// No tail: the result encloses only the truncated polynomial.
    None,
    /// `|coeff_k| <= factor * k^power` for every dropped index `k`.
    /// The Hecke bound for a weight-24N cusp form is
    /// `factor = c1^N, power = 12N`.
    PolyGrowth { factor: Interval, power: u32 },
}

impl TailBound {
    pub fn hecke(n: u32, c1: &Interval) -> TailBound {
        TailBound::PolyGrowth { factor: c1.powi(n as u64), power: 12 * n }
    }
}

/// Certified evaluation result.
#[derive(Clone, Debug)]
pub struct SeriesValue {
    pub value: Ball,
    /// Whether the enclosure covers the full infinite series (true) or only
    /// the stored truncation (false).
    pub tail_included: bool,
}

/// Evaluates an exact series at a complex ball.
///
/// With a [`TailBound::PolyGrowth`] hypothesis the result encloses the exact
/// value of the infinite series, provided the hypothesis holds for the true
/// coefficients; `|z|` must then be certifiably inside the unit disk.
pub fn eval_series_certified(
    s: &IntSeries,
    z: &Ball,
    tail: &TailBound,
    prec: u32,
) -> Result<SeriesValue> {
    let r = z.abs().with_prec(prec);
    if s.valuation() < 0 && !r.is_strictly_positive() {
        return Err(Error::CannotCertify(
            "series has a pole and the ball touches zero".into(),
        ));
    }
    // Horner over the stored coefficients, highest exponent first.
    let mut acc = Ball::zero(prec);
    for c in s.coeffs().iter().rev() {
        acc = acc.mul(z);
        if *c != 0 {
            acc = acc.add(&Ball::from_integer(c, prec));
        }
    }
    let val = if s.is_zero() { 0 } else { s.valuation() };
    let mut value = if val == 0 { acc } else { acc.mul(&z.powi(val)?) };

    let tail_included = match tail {
        TailBound::None => false,
        TailBound::PolyGrowth { factor, power } => {
            let one = Interval::one(prec);
            if !r.certainly_lt(&one) {
                return Err(Error::CannotCertify(
                    "tail requested but |z| is not certifiably < 1".into(),
                ));
            }
            // sum_{k >= k0} k^E r^k <= r^k0 * sum_m (k0+m)^E r^m
            let k0 = s.trunc().max(1);
            let maj = schwarz_tail_majorant(&Integer::from(k0), *power, &r)?;
            let tail_mag = factor
                .abs()
                .mul(&r.powi(k0 as u64))
                .mul(&maj);
            value = value.inflate(tail_mag.hi());
            true
        }
    };
    Ok(SeriesValue { value, tail_included })
}

/// Certified enclosure of the Euler product `prod_{n>=1} (1 - z^n)` for
/// `|z| < 1`: the first `terms` factors exactly, the rest through a
/// logarithmic tail bound.
pub fn euler_product_ball(z: &Ball, terms: u32, prec: u32) -> Result<Ball> {
    let r = z.abs().with_prec(prec);
    let one = Interval::one(prec);
    if !r.certainly_lt(&one) {
        return Err(Error::CannotCertify("Euler product needs |z| < 1 certified".into()));
    }
    let mut acc = Ball::one(prec);
    let mut zn = Ball::one(prec);
    for _ in 1..=terms {
        zn = zn.mul(z);
        acc = acc.mul(&Ball::one(prec).sub(&zn));
    }
    // |Log(1 - z^n)| <= |z|^n / (1 - |z|^n); summing over n > terms gives
    // s <= r^(terms+1) / ((1 - r) (1 - r^(terms+1)))
    let rt = r.powi(terms as u64 + 1);
    let den = one.sub(&r).mul(&one.sub(&rt));
    if !den.is_strictly_positive() {
        return Err(Error::PrecisionInsufficient("Euler tail denominator".into()));
    }
    let s = rt.div(&den)?;
    // tail factor lies in the disk of radius e^s - 1 around 1
    let bump = s.exp().sub(&one);
    Ok(acc.mul_one_plus_disk(&bump))
}

/// Certified enclosure of `Delta(z) = z prod (1-z^n)^24` for `|z| < 1`.
pub fn delta_ball(z: &Ball, terms: u32, prec: u32) -> Result<Ball> {
    let eta = euler_product_ball(z, terms, prec)?;
    Ok(z.mul(&eta.powi(24)?))
}

/// Certified enclosure of `E4(z) = 1 + 240 sum sigma_3(n) z^n` for `|z| < 1`,
/// using `sigma_3(n) <= zeta(3) n^3` for the tail.
pub fn e4_ball(z: &Ball, terms: u32, prec: u32) -> Result<Ball> {
    let r = z.abs().with_prec(prec);
    let one = Interval::one(prec);
    if !r.certainly_lt(&one) {
        return Err(Error::CannotCertify("E4 needs |z| < 1 certified".into()));
    }
    let mut acc = Ball::one(prec);
    let mut zn = Ball::one(prec);
    for n in 1..=terms as i64 {
        zn = zn.mul(z);
        let mut s3 = Integer::new();
        let mut d = 1i64;
        while d <= n {
            if n % d == 0 {
                s3 += Integer::from(d).pow(3u32);
            }
            d += 1;
        }
        s3 *= 240;
        acc = acc.add(&zn.scale(&Interval::from_integer(&s3, prec)));
    }
    // zeta(3) < 1.2021; tail: 240 * zeta(3) * sum_{n>terms} n^3 r^n
    let zeta3 = Interval::from_rational(&Rational::from((12021, 10000)), prec);
    let k0 = Integer::from(terms + 1);
    let maj = schwarz_tail_majorant(&k0, 3, &r)?;
    let tail = Interval::from_i64(240, prec)
        .mul(&zeta3)
        .mul(&r.powi(terms as u64 + 1))
        .mul(&maj);
    Ok(acc.inflate(tail.hi()))
}

/// Certified enclosure of `J(z) = E4(z)^3 / Delta(z)` for `0 < |z| < 1`.
pub fn j_ball(z: &Ball, terms: u32, prec: u32) -> Result<Ball> {
    let e4 = e4_ball(z, terms, prec)?;
    let d = delta_ball(z, terms, prec)?;
    e4.powi(3)?.div(&d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries;

    #[test]
    fn majorant_geometric_case() {
        // M=0, K=0, r=1/2: sum r^n = 2 exactly
        let r = Interval::from_rational(&Rational::from((1, 2)), 64);
        let b = schwarz_tail_majorant(&Integer::from(0), 0, &r).unwrap();
        assert!(b.contains_integer(&Integer::from(2)));
        assert!(b.hi().to_f64() < 2.0001);
    }

    #[test]
    fn majorant_linear_case() {
        // M=1, K=1, r=1/2: bound 2*1!*4 = 8; true sum is 4
        let r = Interval::from_rational(&Rational::from((1, 2)), 64);
        let b = schwarz_tail_majorant(&Integer::from(1), 1, &r).unwrap();
        assert!(b.contains_integer(&Integer::from(8)));
        // independent numeric oracle: sum_{n} (1+n) 2^-n = 4
        assert!(b.lo().to_f64() >= 4.0);
    }

    #[test]
    fn majorant_monotone() {
        let r1 = Interval::from_rational(&Rational::from((1, 2)), 64);
        let r2 = Interval::from_rational(&Rational::from((3, 4)), 64);
        let b_mk = |m: i64, k: u32, r: &Interval| {
            schwarz_tail_majorant(&Integer::from(m), k, r).unwrap().hi().to_f64()
        };
        assert!(b_mk(1, 2, &r1) <= b_mk(2, 2, &r1));
        assert!(b_mk(1, 2, &r1) <= b_mk(1, 3, &r1));
        assert!(b_mk(1, 2, &r1) <= b_mk(1, 2, &r2));
    }

    #[test]
    fn majorant_rejects_divergent_radius() {
        let r = Interval::from_i64(1, 64);
        assert!(schwarz_tail_majorant(&Integer::from(1), 1, &r).is_err());
    }

    #[test]
    fn eval_polynomial_only() {
        // s = 1 + q truncated at q^2, z = 1/2 -> 3/2
        let s = IntSeries::new(0, vec![Integer::from(1), Integer::from(1)], 2);
        let z = Ball::from_rational(&Rational::from((1, 2)), 96);
        let v = eval_series_certified(&s, &z, &TailBound::None, 96).unwrap();
        assert!(!v.tail_included);
        assert!(v.value.re().contains_rational(&Rational::from((3, 2))));
        assert!(v.value.rad_up().to_f64() < 1e-20);
    }

    #[test]
    fn eval_tail_consistent_with_long_truncation() {
        // [DERIVED] long-truncation oracle
        let c1 = Interval::from_i64(8, 96);
        let short = qseries::delta_expansion(200).unwrap();
        let long = qseries::delta_expansion(2000).unwrap();
        let z = Ball::from_rational(&Rational::from((1, 2)), 96);
        let v_short =
            eval_series_certified(&short, &z, &TailBound::hecke(1, &c1), 96).unwrap();
        let v_long =
            eval_series_certified(&long, &z, &TailBound::hecke(1, &c1), 96).unwrap();
        assert!(v_short.tail_included && v_long.tail_included);
        assert!(v_short.value.intersects(&v_long.value));
        // deeper truncation stays within the shallower certified enclosure
        assert!(v_short.value.re().lo() <= v_long.value.re().lo());
        assert!(v_short.value.re().hi() >= v_long.value.re().hi());
    }

    #[test]
    fn eval_tail_rejected_on_unit_circle() {
        let s = qseries::delta_expansion(10).unwrap();
        let z = Ball::one(64);
        let c1 = Interval::from_i64(8, 64);
        assert!(eval_series_certified(&s, &z, &TailBound::hecke(1, &c1), 64).is_err());
    }

    #[test]
    fn delta_ball_matches_series() {
        let z = Ball::from_rational(&Rational::from((1, 10)), 128);
        let via_product = delta_ball(&z, 60, 128).unwrap();
        let series = qseries::delta_expansion(300).unwrap();
        let c1 = Interval::from_i64(8, 128);
        let via_series =
            eval_series_certified(&series, &z, &TailBound::hecke(1, &c1), 128).unwrap();
        assert!(via_product.intersects(&via_series.value));
    }

    #[test]
    fn j_ball_matches_series_value() {
        // J(0.1) from the certified quotient vs. exact series evaluation
        let z = Ball::from_rational(&Rational::from((1, 10)), 128);
        let jb = j_ball(&z, 60, 128).unwrap();
        let js = qseries::j_expansion(120).unwrap();
        let approx = eval_series_certified(&js, &z, &TailBound::None, 128).unwrap();
        // the truncated polynomial differs from J by a tiny tail at |z|=0.1
        assert!((jb.mid_re() - approx.value.mid_re()).abs() < 1e-10);
    }
}
