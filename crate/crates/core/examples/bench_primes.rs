fn main() {
    let t0 = std::time::Instant::now();
    let t = mahler_core::primes::PrimeTable::new(1_000_000);
    eprintln!("sieve: {:?}", t0.elapsed());
    let t1 = std::time::Instant::now();
    let rep = mahler_core::primes::certify_prime_bounds(&t, 1_000_000, None).unwrap();
    eprintln!("certify: {:?}", t1.elapsed());
    for f in &rep.findings {
        eprintln!("{}: holds_from={:?} last_violation={:?} total={}", f.id, f.holds_from, f.last_violation, f.violations_total);
    }
    eprintln!("c14 = {} at x = {}", rep.c14_upper, rep.c14_argmax);
}
