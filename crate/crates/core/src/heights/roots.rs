//! Certified isolation of all complex roots of a squarefree integer
//! polynomial: Aberth-Ehrlich refinement followed by an a posteriori
//! Weierstrass-disk certificate.
//!
//! For approximations `z_1..z_n`, every root lies in the union of the disks
//! `D(z_j, n |W_j|)` with `W_j = p(z_j) / (lead prod_{k!=j} (z_j - z_k))`
//! (Weierstrass corrections; the classical Gerschgorin-style inclusion used
//! by simultaneous-iteration solvers). Pairwise disjoint disks therefore
//! isolate exactly one root each.

use rug::float::Round;
use rug::ops::{AddAssignRound, CompleteRound, MulAssignRound};
use rug::Float;

use super::poly::ZPoly;
use crate::error::{Error, Result};
use crate::numerics::{Ball, Interval};

/// One certified root enclosure.
#[derive(Clone, Debug)]
pub struct RootEnclosure {
    pub ball: Ball,
    /// |root| enclosure, precomputed.
    pub abs: Interval,
}

/// Approximate complex arithmetic on plain MPFR floats (no rounding
/// control: this part only has to land close, the certificate follows).
#[derive(Clone, Debug)]
struct Cpx {
    re: Float,
    im: Float,
}

impl Cpx {
    fn new(prec: u32, re: f64, im: f64) -> Self {
        Cpx { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    fn add(&self, o: &Cpx) -> Cpx {
        Cpx {
            re: (&self.re + &o.re).complete(self.re.prec()),
            im: (&self.im + &o.im).complete(self.im.prec()),
        }
    }

    fn sub(&self, o: &Cpx) -> Cpx {
        Cpx {
            re: (&self.re - &o.re).complete(self.re.prec()),
            im: (&self.im - &o.im).complete(self.im.prec()),
        }
    }

    fn mul(&self, o: &Cpx) -> Cpx {
        let re = (&self.re * &o.re).complete(self.re.prec())
            - (&self.im * &o.im).complete(self.im.prec());
        let im = (&self.re * &o.im).complete(self.re.prec())
            + (&self.im * &o.re).complete(self.im.prec());
        Cpx { re, im }
    }

    fn norm(&self) -> Float {
        (&self.re * &self.re).complete(self.re.prec())
            + (&self.im * &self.im).complete(self.im.prec())
    }

    fn recip(&self) -> Cpx {
        let n = self.norm();
        Cpx {
            re: (&self.re / &n).complete(self.re.prec()),
            im: -(&self.im / &n).complete(self.im.prec()),
        }
    }

    fn div(&self, o: &Cpx) -> Cpx {
        self.mul(&o.recip())
    }

    fn abs(&self) -> Float {
        self.norm().sqrt()
    }
}

fn eval_cpx(p: &ZPoly, z: &Cpx) -> Cpx {
    let prec = z.re.prec();
    let mut acc = Cpx::new(prec, 0.0, 0.0);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z);
        let t = Float::with_val(prec, c);
        acc.re += t;
    }
    acc
}

/// Certified enclosures of all roots of a squarefree polynomial.
///
/// Escalates working precision internally until the Weierstrass disks are
/// pairwise disjoint (squarefree input guarantees this terminates).
pub fn isolate_roots(p: &ZPoly, prec_hint: u32) -> Result<Vec<RootEnclosure>> {
    let n = p
        .degree()
        .ok_or_else(|| Error::Domain("cannot isolate roots of the zero polynomial".into()))?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut prec = prec_hint.max(96);
    for _ in 0..8 {
        match try_isolate(p, n, prec) {
            Ok(roots) => return Ok(roots),
            Err(Error::PrecisionInsufficient(_)) => {
                prec *= 2;
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::PrecisionInsufficient(format!(
        "root isolation did not certify below {} bits",
        prec
    )))
}

fn try_isolate(p: &ZPoly, n: usize, prec: u32) -> Result<Vec<RootEnclosure>> {
    // initial guesses on a perturbed circle at the Cauchy bound radius
    let lead_abs = Float::with_val(prec, &p.lead()).abs();
    let mut maxc = Float::with_val(prec, 0);
    for c in &p.coeffs()[..n] {
        let a = Float::with_val(prec, c).abs();
        if a > maxc {
            maxc = a;
        }
    }
    let radius = Float::with_val(prec, 1) + maxc / &lead_abs;
    let mut z: Vec<Cpx> = (0..n)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.27) / n as f64 + 0.4;
            let r = radius.to_f64() * (1.0 + 0.05 * ((j % 7) as f64) / 7.0);
            Cpx::new(prec, r * theta.cos(), r * theta.sin())
        })
        .collect();
    let deriv = p.derivative();
    // Aberth-Ehrlich iterations
    let iters = 60 + 6 * n + prec as usize / 8;
    for _ in 0..iters {
        let mut moved = Float::with_val(prec, 0);
        for j in 0..n {
            let pv = eval_cpx(p, &z[j]);
            if pv.abs().is_zero() {
                continue;
            }
            let dv = eval_cpx(&deriv, &z[j]);
            if dv.abs().is_zero() {
                // nudge off a critical point
                z[j] = z[j].add(&Cpx::new(prec, 1e-3, 2e-3));
                continue;
            }
            let newton = pv.div(&dv);
            let mut s = Cpx::new(prec, 0.0, 0.0);
            for k in 0..n {
                if k != j {
                    s = s.add(&z[j].sub(&z[k]).recip());
                }
            }
            let denom = Cpx::new(prec, 1.0, 0.0).sub(&newton.mul(&s));
            if denom.abs().is_zero() {
                continue;
            }
            let step = newton.div(&denom);
            let stepa = step.abs();
            if stepa > moved {
                moved = stepa;
            }
            z[j] = z[j].sub(&step);
        }
        let mut tol = Float::with_val(prec, 1u32);
        tol >>= prec / 2;
        if moved < tol {
            break;
        }
    }
    certify_weierstrass(p, n, &z, prec)
}

fn certify_weierstrass(p: &ZPoly, n: usize, z: &[Cpx], prec: u32) -> Result<Vec<RootEnclosure>> {
    // W_j and the disk radii n |W_j|, all outward-rounded
    let lead = Ball::from_integer(&p.lead(), prec);
    let mut centers: Vec<Ball> = Vec::with_capacity(n);
    for zj in z {
        centers.push(Ball::new(
            Interval::point(zj.re.clone()),
            Interval::point(zj.im.clone()),
        ));
    }
    let mut radii: Vec<Float> = Vec::with_capacity(n);
    for j in 0..n {
        let pv = p.eval_ball(&centers[j], prec);
        let mut denom = lead.clone();
        for k in 0..n {
            if k != j {
                denom = denom.mul(&centers[j].sub(&centers[k]));
            }
        }
        if !denom.excludes_zero() {
            return Err(Error::PrecisionInsufficient("coincident approximations".into()));
        }
        let w = pv.div(&denom)?;
        let mut r = w.abs().hi().clone();
        r.mul_assign_round(n as u64, Round::Up);
        if !r.is_finite() {
            return Err(Error::PrecisionInsufficient("radius overflow".into()));
        }
        radii.push(r);
    }
    // pairwise disjointness: |z_j - z_k| > r_j + r_k certified
    for j in 0..n {
        for k in j + 1..n {
            let d = centers[j].sub(&centers[k]).abs();
            let mut sum = radii[j].clone();
            sum.add_assign_round(&radii[k], Round::Up);
            if !(d.lo() > &sum) {
                return Err(Error::PrecisionInsufficient(format!(
                    "Weierstrass disks {} and {} overlap",
                    j, k
                )));
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let ball = centers[j].inflate(&radii[j]);
        let abs = ball.abs();
        out.push(RootEnclosure { ball, abs });
    }
    // deterministic order: by midpoint (re, im) lexicographically
    out.sort_by(|a, b| {
        let ar = a.ball.mid_re();
        let br = b.ball.mid_re();
        ar.partial_cmp(&br)
            .unwrap()
            .then_with(|| a.ball.mid_im().partial_cmp(&b.ball.mid_im()).unwrap())
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::{Integer, Rational};

    trait PowU32Local {
        fn pow_u32(&self, e: u32) -> Integer;
    }

    impl PowU32Local for Integer {
        fn pow_u32(&self, e: u32) -> Integer {
            use rug::ops::Pow;
            Integer::from(self.pow(e))
        }
    }

    #[test]
    fn quadratic_roots() {
        // x^2 - 3x + 2 = (x-1)(x-2)
        let p = ZPoly::from_i64(&[2, -3, 1]);
        let roots = isolate_roots(&p, 96).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].ball.re().contains_integer(&Integer::from(1)));
        assert!(roots[1].ball.re().contains_integer(&Integer::from(2)));
        for r in &roots {
            assert!(r.ball.im().contains_zero());
        }
    }

    #[test]
    fn golden_ratio_moduli() {
        let p = ZPoly::from_i64(&[-1, -1, 1]);
        let roots = isolate_roots(&p, 96).unwrap();
        assert_eq!(roots.len(), 2);
        // moduli ~ 0.618 and ~ 1.618
        let m0 = roots[0].abs.mid().to_f64();
        let m1 = roots[1].abs.mid().to_f64();
        let mut ms = [m0, m1];
        ms.sort_by(f64::total_cmp);
        assert!((ms[0] - 0.6180339887).abs() < 1e-6);
        assert!((ms[1] - 1.6180339887).abs() < 1e-6);
    }

    #[test]
    fn complex_pair() {
        // x^2 + 1: roots +-i
        let p = ZPoly::from_i64(&[1, 0, 1]);
        let roots = isolate_roots(&p, 96).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(r.abs.contains_integer(&Integer::from(1)));
            assert!(r.ball.re().contains_zero());
        }
    }

    #[test]
    fn degree_six_random_shape() {
        let p = ZPoly::from_i64(&[7, -3, 0, 5, -2, 0, 4]);
        let roots = isolate_roots(&p, 96).unwrap();
        assert_eq!(roots.len(), 6);
        // product of |roots| equals |constant/lead| = 7/4
        let mut prod = Interval::one(96);
        for r in &roots {
            prod = prod.mul(&r.abs);
        }
        assert!(prod.contains_rational(&Rational::from((7, 4))));
    }

    #[test]
    fn big_coefficients() {
        // (x - 10^25)(x + 3) has a huge and a small root
        let big = Integer::from(10).pow_u32(25);
        let p = ZPoly::new(vec![
            Integer::from(-3 * &big),
            Integer::from(3 - &big),
            Integer::from(1),
        ]);
        let roots = isolate_roots(&p, 128).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().any(|r| r.ball.re().contains_integer(&big)));
        assert!(roots.iter().any(|r| r.ball.re().contains_integer(&Integer::from(-3))));
    }
}
