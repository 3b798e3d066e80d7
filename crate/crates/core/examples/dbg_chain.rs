use mahler_core::chain::*;
use mahler_core::numerics::*;
use mahler_core::primes::PrimeTable;
use rug::Rational;

fn main() {
    let prec = 160u32;
    let q = Ball::from_rational(&Rational::from((1, 2)), prec);
    let q_abs = Interval::from_rational(&Rational::from((1, 2)), prec);
    let pins = PinnedConstants {
        c1: Interval::from_decimal_str("8.0456", prec).unwrap(),
        c1_provenance: "grid".into(),
        c2: Interval::from_decimal_str("10.0", prec).unwrap(),
        c14: Interval::from_decimal_str("1.25505871", prec).unwrap(),
        c14_provenance: "sieve scan".into(),
    };
    let t0 = std::time::Instant::now();
    let inst = build_instance(
        Some(q), q_abs, 4, 96,
        1, Interval::from_decimal_str("0.6931471805599453", prec).unwrap(),
        1, Interval::zero(prec),
        PrimePolicy::ScanAnalytic { pmax: 100 },
        prec,
    ).unwrap();
    eprintln!("instance built: N=4 L={} M={} P={} ({:?})", inst.l_bound(), inst.m(), inst.p_prime, t0.elapsed());
    let mut ledger = ConstantLedger::default();
    let phi = mahler_core::modpoly::compute_phi_p(2, 16).unwrap();
    let rep1 = lower_bound_ledger(&inst, &pins, Some(&phi), &mut ledger, prec).unwrap();
    let primes = PrimeTable::new(100000);
    let rep2 = contradiction_chain(&inst, &pins, &mut ledger, &primes, prec).unwrap();
    for e in rep1.entries.iter().chain(rep2.entries.iter()) {
        eprintln!("{:<40} {:?}", e.id, e.status);
    }
    eprintln!("all determinate: {}", rep1.all_determinate() && rep2.all_determinate());
    for (name, e) in ledger.iter() {
        eprintln!("{}: [{}, {}] ({:?})", name, e.value.lo, e.value.hi, e.provenance);
    }
}
