//! Sieve-based prime statistics and certification of the two-sided
//! prime-sum bounds `x^2/(2 log x) <= Sigma(x) <= x^2/log x`, their
//! arithmetic-progression variants, and the Chebyshev constant.
//!
//! Logarithms in bound comparisons use outward rounding, so every reported
//! violation is a certified violation.

use rug::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::Interval;

/// Primes up to a limit with exact cumulative data.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Sieve of Eratosthenes up to `limit` inclusive.
    pub fn new(limit: u64) -> Self {
        let mut is_comp = vec![false; (limit + 1) as usize];
        let mut primes = Vec::new();
        let mut n = 2u64;
        while n <= limit {
            if !is_comp[n as usize] {
                primes.push(n);
                let mut m = n * n;
                while m <= limit {
                    is_comp[m as usize] = true;
                    m += n;
                }
            }
            n += 1;
        }
        PrimeTable { limit, primes }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "{} beyond sieve limit {}", n, self.limit);
        self.primes.binary_search(&n).is_ok()
    }

    /// Smallest prime >= n, or None if beyond the table.
    pub fn next_prime(&self, n: u64) -> Option<u64> {
        match self.primes.binary_search(&n) {
            Ok(i) => Some(self.primes[i]),
            Err(i) => self.primes.get(i).copied(),
        }
    }

    /// Exact `(pi, Sigma)` over primes `p < x` (strict) or `p <= x`
    /// (inclusive), optionally restricted to `p = a (mod delta)`.
    pub fn prime_stats(
        &self,
        x: u64,
        progression: Option<(u64, u64)>,
        inclusive: bool,
    ) -> Result<(u64, Integer)> {
        if x > self.limit + 1 {
            return Err(Error::Domain(format!(
                "x = {} beyond sieve limit {}",
                x, self.limit
            )));
        }
        if let Some((a, d)) = progression {
            if d == 0 || Integer::from(a).gcd(&Integer::from(d)) != 1 {
                return Err(Error::Domain(format!(
                    "progression ({} mod {}) must have gcd(a, delta) = 1",
                    a, d
                )));
            }
        }
        let mut pi = 0u64;
        let mut sigma = Integer::new();
        for &p in &self.primes {
            let inside = if inclusive { p <= x } else { p < x };
            if !inside {
                break;
            }
            if let Some((a, d)) = progression {
                if p % d != a % d {
                    continue;
                }
            }
            pi += 1;
            sigma += p;
        }
        Ok((pi, sigma))
    }
}

/// One certified violation of an inequality at an integer point.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub x: u64,
    pub lhs: String,
    pub rhs: String,
}

/// Certification results for one inequality over a scanned range.
#[derive(Clone, Debug, Serialize)]
pub struct InequalityFinding {
    pub id: String,
    /// Minimal threshold from which the inequality holds for all tested x.
    pub holds_from: Option<u64>,
    pub violations_total: usize,
    /// Violations at or above the paper's claimed threshold x >= 11.
    pub violations_at_or_above_11: Vec<Violation>,
    /// Largest violating x in the tested range, if any.
    pub last_violation: Option<u64>,
}

/// Full report of [`certify_prime_bounds`].
#[derive(Clone, Debug, Serialize)]
pub struct PrimeBoundsReport {
    pub limit: u64,
    pub findings: Vec<InequalityFinding>,
    /// Supremum of `pi(x) log x / x` over the scanned range (certified upper
    /// bound): the empirical Chebyshev constant.
    pub c14_upper: String,
    pub c14_argmax: u64,
    /// Whether the paper-claimed threshold `x >= 11` for the two-sided
    /// prime-sum bound is contradicted by a certified violation.
    pub x_ge_11_claim_violated: bool,
}

struct Tracker {
    id: String,
    last_violation: Option<u64>,
    violations_total: usize,
    reported: Vec<Violation>,
}

impl Tracker {
    fn new(id: &str) -> Self {
        Tracker {
            id: id.to_string(),
            last_violation: None,
            violations_total: 0,
            reported: Vec::new(),
        }
    }

    fn record(&mut self, x: u64, lhs: &Interval, rhs: &Interval) {
        self.last_violation = Some(x);
        self.violations_total += 1;
        if x >= 11 && self.reported.len() < 64 {
            self.reported.push(Violation {
                x,
                lhs: format!("{:.6e}", lhs.lo().to_f64()),
                rhs: format!("{:.6e}", rhs.hi().to_f64()),
            });
        }
    }

    fn finish(self, scan_start: u64) -> InequalityFinding {
        InequalityFinding {
            id: self.id,
            holds_from: Some(self.last_violation.map_or(scan_start, |v| v + 1)),
            violations_total: self.violations_total,
            violations_at_or_above_11: self.reported,
            last_violation: self.last_violation,
        }
    }
}

/// Scans every integer `x` in `[3, limit]` and certifies the prime-sum and
/// Chebyshev inequalities under both sum conventions, plus an optional
/// arithmetic-progression variant with its Euler-phi factor.
pub fn certify_prime_bounds(
    table: &PrimeTable,
    limit: u64,
    progression: Option<(u64, u64)>,
) -> Result<PrimeBoundsReport> {
    if limit < 100 {
        return Err(Error::Domain("certify_prime_bounds needs limit >= 100".into()));
    }
    if limit > table.limit() {
        return Err(Error::Domain(format!(
            "limit {} beyond sieve limit {}",
            limit,
            table.limit()
        )));
    }
    let prec = 96u32;
    let phi = progression.map(|(_, d)| euler_phi(d));
    if let Some((a, d)) = progression {
        if d == 0 || Integer::from(a).gcd(&Integer::from(d)) != 1 {
            return Err(Error::Domain("progression must have gcd(a, delta) = 1".into()));
        }
    }

    let mut lower_strict = Tracker::new("sigma-lower-strict");
    let mut lower_incl = Tracker::new("sigma-lower-inclusive");
    let mut upper_strict = Tracker::new("sigma-upper-strict");
    let mut upper_incl = Tracker::new("sigma-upper-inclusive");
    let mut cheb_lower = Tracker::new("pi-lower");
    let mut prog_lower: Option<Tracker> = progression.map(|_| Tracker::new("sigma-lower-progression-strict"));
    let mut prog_upper: Option<Tracker> = progression.map(|_| Tracker::new("sigma-upper-progression-strict"));

    let mut sigma_strict; // sum of p < x
    let mut sigma_incl = Integer::new(); // sum of p <= x
    let mut pi_incl = 0u64;
    let mut sigma_prog = Integer::new();
    let mut next_idx = 0usize; // next prime index to fold into inclusive sums

    let mut c14: Interval = Interval::zero(prec);
    let mut c14_argmax = 0u64;

    for x in 3..=limit {
        // update inclusive with p = x, strict with p < x
        sigma_strict = sigma_incl.clone();
        while next_idx < table.primes().len() && table.primes()[next_idx] <= x {
            let p = table.primes()[next_idx];
            sigma_incl += p;
            pi_incl += 1;
            if let Some((a, d)) = progression {
                if p % d == a % d {
                    sigma_prog += p;
                }
            }
            next_idx += 1;
        }
        let xi = Interval::from_integer(&Integer::from(x), prec);
        let x2 = xi.square();
        let lnx = xi.ln()?;
        let two = Interval::from_i64(2, prec);

        // x^2 / (2 log x) <= Sigma  <=>  x^2 <= Sigma * 2 log x
        let s_strict = Interval::from_integer(&sigma_strict, prec);
        let s_incl = Interval::from_integer(&sigma_incl, prec);
        let lower_rhs_strict = s_strict.mul(&two).mul(&lnx);
        let lower_rhs_incl = s_incl.mul(&two).mul(&lnx);
        if !x2.certainly_le(&lower_rhs_strict) {
            if x2.certainly_ge(&lower_rhs_strict) {
                lower_strict.record(x, &x2, &lower_rhs_strict);
            } else {
                return Err(Error::PrecisionInsufficient(format!("sigma lower at x={}", x)));
            }
        }
        if !x2.certainly_le(&lower_rhs_incl) {
            if x2.certainly_ge(&lower_rhs_incl) {
                lower_incl.record(x, &x2, &lower_rhs_incl);
            } else {
                return Err(Error::PrecisionInsufficient(format!("sigma lower incl at x={}", x)));
            }
        }
        // Sigma <= x^2 / log x  <=>  Sigma * log x <= x^2
        let upper_lhs_strict = s_strict.mul(&lnx);
        let upper_lhs_incl = s_incl.mul(&lnx);
        if !upper_lhs_strict.certainly_le(&x2) {
            if upper_lhs_strict.certainly_ge(&x2) {
                upper_strict.record(x, &upper_lhs_strict, &x2);
            } else {
                return Err(Error::PrecisionInsufficient(format!("sigma upper at x={}", x)));
            }
        }
        if !upper_lhs_incl.certainly_le(&x2) {
            if upper_lhs_incl.certainly_ge(&x2) {
                upper_incl.record(x, &upper_lhs_incl, &x2);
            } else {
                return Err(Error::PrecisionInsufficient(format!("sigma upper incl at x={}", x)));
            }
        }
        // x / log x <= pi(x) (inclusive pi, the paper's pi(x) counts p <= x)
        let pi_iv = Interval::from_integer(&Integer::from(pi_incl), prec);
        let cheb_lhs = xi.div(&lnx)?;
        if !cheb_lhs.certainly_le(&pi_iv) {
            if cheb_lhs.certainly_ge(&pi_iv) {
                cheb_lower.record(x, &cheb_lhs, &pi_iv);
            } else {
                return Err(Error::PrecisionInsufficient(format!("chebyshev at x={}", x)));
            }
        }
        // pi(x) log x / x, certified sup
        let ratio = pi_iv.mul(&lnx).div(&xi)?;
        if ratio.hi() > c14.hi() {
            c14 = ratio;
            c14_argmax = x;
        }
        // progression variants with the phi(delta) factor, strict sums
        if let (Some((_, _)), Some(phi_d)) = (progression, phi) {
            let sp = {
                // strict sum: subtract p = x if it was just added
                let mut s = sigma_prog.clone();
                if let Some((a, d)) = progression {
                    if x <= table.limit() && table.is_prime(x) && x % d == a % d {
                        s -= x;
                    }
                }
                Interval::from_integer(&s, prec)
            };
            let phi_iv = Interval::from_i64(phi_d as i64, prec);
            let lhs = x2.div(&phi_iv)?;
            let rhs_lower = sp.mul(&two).mul(&lnx);
            let t = prog_lower.as_mut().unwrap();
            if !lhs.certainly_le(&rhs_lower) {
                if lhs.certainly_ge(&rhs_lower) {
                    t.record(x, &lhs, &rhs_lower);
                } else {
                    return Err(Error::PrecisionInsufficient(format!("prog lower at x={}", x)));
                }
            }
            let lhs_u = sp.mul(&lnx);
            let rhs_u = x2.div(&phi_iv)?;
            let t = prog_upper.as_mut().unwrap();
            if !lhs_u.certainly_le(&rhs_u) {
                if lhs_u.certainly_ge(&rhs_u) {
                    t.record(x, &lhs_u, &rhs_u);
                } else {
                    return Err(Error::PrecisionInsufficient(format!("prog upper at x={}", x)));
                }
            }
        }
    }
    let mut findings = vec![
        lower_strict.finish(3),
        lower_incl.finish(3),
        upper_strict.finish(3),
        upper_incl.finish(3),
        cheb_lower.finish(3),
    ];
    let claim_violated = findings[0]
        .violations_at_or_above_11
        .iter()
        .chain(findings[1].violations_at_or_above_11.iter())
        .next()
        .is_some();
    if let Some(t) = prog_lower {
        findings.push(t.finish(3));
    }
    if let Some(t) = prog_upper {
        findings.push(t.finish(3));
    }
    Ok(PrimeBoundsReport {
        limit,
        findings,
        c14_upper: format!("{:.8}", c14.hi().to_f64()),
        c14_argmax,
        x_ge_11_claim_violated: claim_violated,
    })
}

/// Euler's totient by trial division.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_stats() {
        let t = PrimeTable::new(100);
        let (pi, sigma) = t.prime_stats(10, None, false).unwrap();
        assert_eq!(pi, 4);
        assert_eq!(sigma, 17);
        let (pi, sigma) = t.prime_stats(12, Some((1, 4)), false).unwrap();
        assert_eq!(pi, 1);
        assert_eq!(sigma, 5);
        let (pi, _) = t.prime_stats(11, None, true).unwrap();
        assert_eq!(pi, 5);
    }

    #[test]
    fn sieve_matches_trial_division() {
        // [DERIVED] oracle: trial division
        let t = PrimeTable::new(10_000);
        let mut count = 0;
        for n in 2..=10_000u64 {
            let mut is_p = true;
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    is_p = false;
                    break;
                }
                d += 1;
            }
            if is_p {
                count += 1;
                assert!(t.is_prime(n), "{} should be prime", n);
            } else {
                assert!(!t.is_prime(n), "{} should be composite", n);
            }
        }
        assert_eq!(t.primes().len(), count);
    }

    #[test]
    fn residue_classes_partition() {
        let t = PrimeTable::new(5_000);
        let x = 4_999;
        let (pi_total, _) = t.prime_stats(x, None, false).unwrap();
        let delta = 12u64;
        let mut sum = 0;
        for a in 1..delta {
            if Integer::from(a).gcd(&Integer::from(delta)) == 1 {
                let (pi_a, _) = t.prime_stats(x, Some((a, delta)), false).unwrap();
                sum += pi_a;
            }
        }
        // primes dividing delta are in no coprime class
        let div_primes = t.primes().iter().filter(|&&p| delta % p == 0 && p < x).count() as u64;
        assert_eq!(sum + div_primes, pi_total);
    }

    #[test]
    fn certify_reports_the_x11_violation() {
        let t = PrimeTable::new(2_000);
        let rep = certify_prime_bounds(&t, 2_000, None).unwrap();
        // the strict lower bound fails at x = 11 itself and at x = 12
        let lower = &rep.findings[0];
        assert_eq!(lower.id, "sigma-lower-strict");
        assert!(lower.violations_at_or_above_11.iter().any(|v| v.x == 11));
        assert!(lower.violations_at_or_above_11.iter().any(|v| v.x == 12));
        assert!(rep.x_ge_11_claim_violated);
        // inclusive convention still fails at x = 12
        let lower_incl = &rep.findings[1];
        assert!(lower_incl.violations_at_or_above_11.iter().any(|v| v.x == 12));
        // upper bound: 17 <= 121/log 11 holds at x = 11
        let upper = &rep.findings[2];
        assert!(upper.violations_at_or_above_11.iter().all(|v| v.x != 11));
    }

    #[test]
    fn chebyshev_constant_near_x_113() {
        let t = PrimeTable::new(2_000);
        let rep = certify_prime_bounds(&t, 2_000, None).unwrap();
        // known maximum of pi(x) log x / x at x = 113
        assert_eq!(rep.c14_argmax, 113);
        let c: f64 = rep.c14_upper.parse().unwrap();
        assert!(c > 1.255 && c < 1.256);
    }

    #[test]
    fn euler_phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(4), 2);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
    }
}
