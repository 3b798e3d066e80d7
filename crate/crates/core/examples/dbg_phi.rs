use mahler_core::modpoly::*;
fn main() {
    for (p, k) in [(2u64, 16i64), (3, 20), (5, 45), (7, 72)] {
        let t0 = std::time::Instant::now();
        let phi = compute_phi_p(p, k).unwrap();
        let t1 = t0.elapsed();
        let h = phi.poly().height();
        eprintln!("phi_{}: computed in {:?}; H has {} digits", p, t1, h.to_string().len());
        let t0 = std::time::Instant::now();
        let rep = verify_phi_identity(&phi, 30).unwrap();
        eprintln!("  identity mod q^30: pass={} ({:?})", rep.pass, t0.elapsed());
        let rep = certify_phi_height(&phi, 96).unwrap();
        eprintln!("  height bound: {:?}, two-sided: {:?}/{:?}", rep.explicit_prime_bound.status, rep.two_sided_lower.status, rep.two_sided_upper.status);
    }
}
