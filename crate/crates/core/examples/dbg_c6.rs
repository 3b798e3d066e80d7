use mahler_core::chain::c6_lower_bound;
use mahler_core::numerics::Interval;
use rug::Rational;
fn main() {
    let r = Interval::from_rational(&Rational::from((1, 2)), 96);
    for depth in [6u32, 8, 10, 11] {
        let c6 = c6_lower_bound(&r, depth, 96).unwrap();
        eprintln!("depth {}: [{:.6e}, {:.6e}]", depth, c6.lo().to_f64(), c6.hi().to_f64());
    }
}
