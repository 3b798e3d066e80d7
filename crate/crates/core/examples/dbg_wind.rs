use mahler_core::auxfn::*;
use mahler_core::numerics::*;
use rug::{Integer, Rational};

fn main() {
    let f = build_auxiliary(2, 64).unwrap();
    let prec = 128u32;
    let q_abs = Interval::from_rational(&Rational::from((1, 2)), prec);
    let one = Interval::one(prec);
    let two = Interval::from_i64(2, prec);
    let r = one.add(&q_abs).div(&two).unwrap();
    let gap = r.sub(&q_abs);
    let rho = q_abs.add(&gap.div(&Interval::from_i64(16, prec)).unwrap());
    let pi2 = Interval::pi(prec).mul(&Interval::from_i64(2, prec));
    // segment [num, num+1]/2^level of the circle
    let seg_ball = |num: u64, level: u32| -> Ball {
        let th = |n: u64| pi2.mul(&Interval::from_integer(&Integer::from(n), prec))
            .div(&Interval::from_integer(&Integer::from(Integer::from(1) << level), prec)).unwrap();
        let theta = th(num).union(&th(num + 1));
        Ball::new(rho.mul(&theta.cos()), rho.mul(&theta.sin()))
    };
    for level in [6u32, 8, 10, 11, 12, 13, 14] {
        let z = seg_ball(1, level);
        match f.eval_g_product(&z, prec) {
            Ok(w) => {
                let excl = w.excludes_zero();
                let arg_w = if excl { w.arg().map(|a| a.width_up().to_f64()).unwrap_or(f64::NAN) } else { f64::NAN };
                eprintln!("level {}: |mid|~{:.2e} rad={:.2e} excl0={} argw={:.3}", level, w.abs().mid().to_f64(), w.rad_up().to_f64(), excl, arg_w);
            }
            Err(e) => eprintln!("level {}: eval err {}", level, e),
        }
    }
}
