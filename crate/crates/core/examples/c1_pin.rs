fn main() {
    for depth in [8u32] {
        let t0 = std::time::Instant::now();
        let h = mahler_core::modforms::estimate_hecke_constant(depth, 128).unwrap();
        println!(
            "depth {}: C(D2) in [{:.6e},{:.6e}]  C(D2J) in [{:.6e},{:.6e}]  C1.hi = {:.12}  ({:?})",
            depth,
            h.c_delta2.lo().to_f64(), h.c_delta2.hi().to_f64(),
            h.c_delta2j.lo().to_f64(), h.c_delta2j.hi().to_f64(),
            h.c1.hi().to_f64(),
            t0.elapsed()
        );
    }
}
