use mahler_core::auxfn::*;
use mahler_core::numerics::*;
use rug::Rational;

fn main() {
    let f = build_auxiliary(2, 64).unwrap();
    let q = Ball::from_rational(&Rational::from((1, 2)), 128);
    let t0 = std::time::Instant::now();
    match jensen_zero_bound(&q, &f, 128) {
        Ok(rep) => eprintln!("count={} arcs={} ({:?})", rep.zero_count, rep.arcs_used, t0.elapsed()),
        Err(e) => eprintln!("err: {}", e),
    }
    // built N=4 instance
    let f = build_auxiliary(4, 96).unwrap();
    eprintln!("N=4: M={} d0={} L(A)={}", f.m, f.d0, f.poly.length());
    let t0 = std::time::Instant::now();
    match jensen_zero_bound(&q, &f, 128) {
        Ok(rep) => eprintln!("N=4 count={} arcs={} ({:?})", rep.zero_count, rep.arcs_used, t0.elapsed()),
        Err(e) => eprintln!("err: {}", e),
    }
    let t0 = std::time::Instant::now();
    let scan = first_good_prime(&q, &f, 60, None, 128).unwrap();
    eprintln!("N=4 first good prime = {} uncertain={:?} ({:?})", scan.p, scan.uncertain.len(), t0.elapsed());
}
