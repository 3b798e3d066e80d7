//! Prime-level classical modular polynomials: computation through the
//! cyclotomic product over `q^(1/p)`, identity and height certification,
//! level arithmetic functions, and specialization-degree checks at CM
//! points.

pub mod cyclo;
pub mod ddf;

use std::io::{BufRead, Write};

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heights::{isolate_roots, AlgebraicNumber, IntPolynomial, ZPoly};
use crate::numerics::Interval;
use crate::qseries::{self, IntSeries};
use crate::report::{compare_le, BoundEntry, Enclosure, Status};
use cyclo::CycSeries;

/// A symmetric bivariate integer polynomial `Phi_level(X, Y)`, monic in X,
/// of degree `psi(level)` in each variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularPolynomial {
    level: u64,
    poly: IntPolynomial,
}

impl ModularPolynomial {
    pub fn new(level: u64, poly: IntPolynomial) -> Result<Self> {
        let phi = ModularPolynomial { level, poly };
        phi.check_invariants()?;
        Ok(phi)
    }

    fn check_invariants(&self) -> Result<()> {
        let d = psi(self.level);
        let dx = Integer::from(self.poly.degree_in(0));
        let dy = Integer::from(self.poly.degree_in(1));
        if dx != d || dy != d {
            return Err(Error::Internal(format!(
                "degrees ({}, {}) differ from psi({}) = {}",
                dx, dy, self.level, d
            )));
        }
        for (e, c) in self.poly.terms() {
            let sym = self.poly.coeff(&[e[1], e[0]]);
            if sym != *c {
                return Err(Error::Internal(format!(
                    "asymmetric coefficients at ({}, {})",
                    e[0], e[1]
                )));
            }
        }
        let dxu = self.poly.degree_in(0);
        if self.poly.coeff(&[dxu, 0]) != 1 {
            return Err(Error::Internal("polynomial is not monic in X".into()));
        }
        Ok(())
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    /// Writes the file format: lines `a b c` (coefficient c of X^a Y^b),
    /// only `a >= b` stored, symmetry implied.
    pub fn write_to(&self, w: &mut impl Write) -> Result<()> {
        let mut buf = String::new();
        for (e, c) in self.poly.terms() {
            if e[0] >= e[1] {
                buf.push_str(&format!("{} {} {}\n", e[0], e[1], c));
            }
        }
        w.write_all(buf.as_bytes())?;
        Ok(())
    }

    pub fn read_from(level: u64, r: &mut impl BufRead) -> Result<ModularPolynomial> {
        let mut terms = Vec::new();
        for line in r.lines() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let mut it = t.split_whitespace();
            let a: u32 = it
                .next()
                .ok_or_else(|| Error::Parse("missing X exponent".into()))?
                .parse()
                .map_err(|e| Error::Parse(format!("X exponent: {}", e)))?;
            let b: u32 = it
                .next()
                .ok_or_else(|| Error::Parse("missing Y exponent".into()))?
                .parse()
                .map_err(|e| Error::Parse(format!("Y exponent: {}", e)))?;
            let c = Integer::from_str_radix(
                it.next().ok_or_else(|| Error::Parse("missing coefficient".into()))?,
                10,
            )
            .map_err(|e| Error::Parse(format!("coefficient: {}", e)))?;
            if a < b {
                return Err(Error::Parse("store only a >= b".into()));
            }
            terms.push((vec![a, b], c.clone()));
            if a > b {
                terms.push((vec![b, a], c));
            }
        }
        ModularPolynomial::new(level, IntPolynomial::new(2, terms))
    }
}

/// Dedekind psi: `psi(n) = n prod_{p | n} (1 + 1/p)`.
pub fn psi(n: u64) -> Integer {
    assert!(n >= 1);
    let mut num = Integer::from(n);
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            num = num / p * (p + 1);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        num = num / m * (m + 1);
    }
    num
}

/// Level arithmetic functions `(psi, kappa, lambda)` with
/// `kappa = sum_{p | n} log p / p` and
/// `lambda = sum_{p^a || n} (p^a - 1)/(p^(a-1)(p^2 - 1)) log p`.
pub fn level_invariants(n: u64, prec: u32) -> Result<(Integer, Interval, Interval)> {
    if n == 0 {
        return Err(Error::Domain("level must be positive".into()));
    }
    let mut kappa = Interval::zero(prec);
    let mut lambda = Interval::zero(prec);
    let mut m = n;
    let mut p = 2u64;
    while p <= m {
        if m % p == 0 {
            let mut a = 0u32;
            while m % p == 0 {
                m /= p;
                a += 1;
            }
            let logp = Interval::from_i64(p as i64, prec).ln()?;
            kappa = kappa.add(&logp.div(&Interval::from_i64(p as i64, prec))?);
            // (p^a - 1) / (p^(a-1) (p^2 - 1))
            let num = Integer::from(Integer::from(p).pow(a)) - 1u32;
            let den = Integer::from(Integer::from(p).pow(a - 1))
                * (Integer::from(p * p) - 1u32);
            let frac = Interval::from_rational(&Rational::from((num, den)), prec);
            lambda = lambda.add(&logp.mul(&frac));
        }
        if p == 2 {
            p = 3;
        } else {
            p += 2;
        }
        if p * p > m && m > 1 {
            // the remaining m is prime
            let logp = Interval::from_i64(m as i64, prec).ln()?;
            kappa = kappa.add(&logp.div(&Interval::from_i64(m as i64, prec))?);
            let den = Integer::from(m * m) - 1u32;
            let frac = Interval::from_rational(&Rational::from((Integer::from(m - 1), den)), prec);
            lambda = lambda.add(&logp.mul(&frac));
            break;
        }
    }
    Ok((psi(n), kappa, lambda))
}

/// The classical degree-3 symmetric polynomial for level 2, shipped as an
/// independent reference table.
pub fn phi2_reference() -> ModularPolynomial {
    let c = |s: &str| Integer::from_str_radix(s, 10).unwrap();
    let mut terms = vec![
        (vec![3u32, 0u32], Integer::from(1)),
        (vec![0, 3], Integer::from(1)),
        (vec![2, 2], Integer::from(-1)),
        (vec![2, 1], Integer::from(1488)),
        (vec![1, 2], Integer::from(1488)),
        (vec![2, 0], Integer::from(-162000)),
        (vec![0, 2], Integer::from(-162000)),
        (vec![1, 1], c("40773375")),
        (vec![1, 0], c("8748000000")),
        (vec![0, 1], c("8748000000")),
        (vec![0, 0], c("-157464000000000")),
    ];
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    ModularPolynomial::new(2, IntPolynomial::new(2, terms)).expect("reference table is valid")
}

/// Computes `Phi_p` for p in {2, 3, 5, 7} from the cyclotomic product
/// `(X - J(w^(p^2))) prod_i (X - J(zeta^i w))`, `w = q^(1/p)`: the product's
/// X-coefficients must collapse to integer series in q (checked exactly),
/// and peeling powers of J off each coefficient yields the polynomial.
pub fn compute_phi_p(p: u64, k_verify: i64) -> Result<ModularPolynomial> {
    if ![2u64, 3, 5, 7].contains(&p) {
        return Err(Error::Domain(format!("level {} is not a supported prime", p)));
    }
    let psi_p = (p + 1) as i64;
    let min_k = psi_p * (psi_p + 1);
    if k_verify < min_k {
        return Err(Error::InvalidTruncation(format!(
            "need K >= psi(p)(psi(p)+1) = {}, got {}",
            min_k, k_verify
        )));
    }
    // w-truncation so the q-series are known modulo q^k_verify
    let w_trunc = p as i64 * k_verify;
    let j_w = qseries::j_expansion(w_trunc)?;
    // roots of Phi_p(X, j): J(zeta^i w) for i < p, and J(w^(p^2))
    let mut factors: Vec<CycSeries> = (0..p).map(|i| CycSeries::twist(&j_w, i, p)).collect();
    let j_p2 = {
        let needed = w_trunc / (p as i64 * p as i64) + 2;
        let base = qseries::j_expansion(needed)?;
        let sub = base.compose_power(p as i64 * p as i64);
        CycSeries::embed(&sub.truncate(sub.trunc().min(w_trunc)), p)
    };
    factors.push(j_p2);
    // expand prod (X - s_i): coefficients of X^k accumulated in cyclotomic
    // series arithmetic
    let mut coeffs: Vec<CycSeries> = vec![CycSeries::zero(p, w_trunc)];
    // represent the polynomial "1" (empty product)
    let one = {
        let series = IntSeries::constant(Integer::from(1), w_trunc);
        CycSeries::embed(&series, p)
    };
    coeffs[0] = one;
    for s in &factors {
        // multiply the polynomial by (X - s)
        let mut next: Vec<CycSeries> = Vec::with_capacity(coeffs.len() + 1);
        next.push(coeffs[0].mul(&s.neg()));
        for k in 1..coeffs.len() {
            next.push(coeffs[k].mul(&s.neg()).add(&coeffs[k - 1]));
        }
        next.push(coeffs[coeffs.len() - 1].clone());
        coeffs = next;
    }
    // cancellation: each X-coefficient must be an integer q-series
    let q_coeffs: Vec<IntSeries> = coeffs
        .iter()
        .map(|c| c.into_q_series())
        .collect::<Result<_>>()?;
    // peel each q-series into a polynomial in J
    let j_q = qseries::j_expansion(k_verify)?;
    let mut terms: Vec<(Vec<u32>, Integer)> = Vec::new();
    for (xdeg, series) in q_coeffs.iter().enumerate() {
        let peeled = peel_into_j_polynomial(series, &j_q, psi_p)?;
        for (ydeg, c) in peeled.into_iter().enumerate() {
            if c != 0 {
                terms.push((vec![xdeg as u32, ydeg as u32], c));
            }
        }
    }
    ModularPolynomial::new(p, IntPolynomial::new(2, terms))
}

/// Expresses an integer Laurent q-series as a polynomial in J (degree at
/// most `max_deg`), erroring if a nonzero remainder survives: this is the
/// determination check.
fn peel_into_j_polynomial(s: &IntSeries, j: &IntSeries, max_deg: i64) -> Result<Vec<Integer>> {
    let mut out = vec![Integer::new(); max_deg as usize + 1];
    let mut rem = s.clone();
    loop {
        if rem.is_zero() {
            break;
        }
        let v = rem.valuation();
        if v > 0 {
            return Err(Error::Determination(format!(
                "residual series starts at positive exponent {} with nonzero coefficient",
                v
            )));
        }
        let t = -v;
        if t > max_deg {
            return Err(Error::Determination(format!(
                "pole order {} exceeds the X-degree budget {}",
                t, max_deg
            )));
        }
        let g = rem.coeff(v);
        let jt = j.pow(t as u64);
        rem = rem.sub(&jt.scalar_mul(&g));
        out[t as usize] = g;
        if !rem.is_zero() && rem.valuation() <= v {
            return Err(Error::Internal("peeling failed to reduce the pole".into()));
        }
    }
    Ok(out)
}

/// Report of the exact q-expansion identity check.
#[derive(Clone, Debug, Serialize)]
pub struct PhiIdentityReport {
    pub level: u64,
    pub checked_modulo: i64,
    pub pass: bool,
    pub first_offending_exponent: Option<i64>,
}

/// Confirms `Phi_p(J(q^p), J(q)) = 0 modulo q^K` by exact substitution.
pub fn verify_phi_identity(phi: &ModularPolynomial, k: i64) -> Result<PhiIdentityReport> {
    let p = phi.level as i64;
    let d = phi.poly.degree_in(0) as i64;
    // J(q^p)^a has a pole of order p*a; substituted series need enough
    // low-order room: use trunc K for the result
    let trunc = k;
    let j_base = qseries::j_expansion(trunc + p * d + d)?;
    let jq = j_base.truncate(trunc + p * d + d);
    let jqp = j_base.compose_power(p).truncate(trunc + p * d + d);
    // powers
    let mut pow_x = vec![IntSeries::constant(Integer::from(1), trunc + p * d + d)];
    for a in 1..=d {
        pow_x.push(pow_x[(a - 1) as usize].mul(&jqp));
    }
    let mut pow_y = vec![IntSeries::constant(Integer::from(1), trunc + p * d + d)];
    for b in 1..=d {
        pow_y.push(pow_y[(b - 1) as usize].mul(&jq));
    }
    let mut acc = IntSeries::zero(trunc);
    for (e, c) in phi.poly.terms() {
        let t = pow_x[e[0] as usize].mul(&pow_y[e[1] as usize]).scalar_mul(c);
        acc = acc.add(&t);
    }
    let acc = acc.truncate(acc.trunc().min(k));
    let (pass, first) = match acc.vanishing_order() {
        crate::qseries::Order::BelowTruncation(_) => (true, None),
        crate::qseries::Order::At(e) => (false, Some(e)),
    };
    Ok(PhiIdentityReport {
        level: phi.level,
        checked_modulo: acc.trunc(),
        pass,
        first_offending_exponent: first,
    })
}

/// Height/length certification against the explicit closed-form bounds.
#[derive(Clone, Debug, Serialize)]
pub struct PhiHeightReport {
    pub level: u64,
    /// log H(Phi) enclosure.
    pub h: Enclosure,
    /// log L(Phi) enclosure.
    pub l: Enclosure,
    /// `h <= 6 p log p + 16 p + 14 sqrt(p) log p` (prime levels).
    pub explicit_prime_bound: BoundEntry,
    /// `log L <= 2 log(p+2) + 6 p log p + 16 p + 14 sqrt(p) log p`.
    pub length_bound: BoundEntry,
    /// Two-sided bound `6 psi (log N - 2 lambda - 0.0351) <= h <=
    /// 6 psi (log N - 2 lambda + 9.5387)`.
    pub two_sided_lower: BoundEntry,
    pub two_sided_upper: BoundEntry,
    /// `l >= h` always.
    pub l_ge_h: BoundEntry,
}

pub fn certify_phi_height(phi: &ModularPolynomial, prec: u32) -> Result<PhiHeightReport> {
    let p = phi.level;
    let h_exact = phi.poly.height();
    let l_exact = phi.poly.length();
    let h = Interval::from_integer(&h_exact, prec).ln()?;
    let l = Interval::from_integer(&l_exact, prec).ln()?;
    let p_iv = Interval::from_i64(p as i64, prec);
    let logp = p_iv.ln()?;
    let prime_rhs = Interval::from_i64(6, prec)
        .mul(&p_iv)
        .mul(&logp)
        .add(&Interval::from_i64(16, prec).mul(&p_iv))
        .add(&Interval::from_i64(14, prec).mul(&p_iv.sqrt()?).mul(&logp));
    let explicit_prime_bound = BoundEntry {
        id: "phi-height-prime-bound".into(),
        lhs: Enclosure::of(&h),
        rhs: Enclosure::of(&prime_rhs),
        status: compare_le(&h, &prime_rhs),
        note: None,
    };
    let len_rhs = Interval::from_i64(2, prec)
        .mul(&Interval::from_i64(p as i64 + 2, prec).ln()?)
        .add(&prime_rhs);
    let length_bound = BoundEntry {
        id: "phi-length-bound".into(),
        lhs: Enclosure::of(&l),
        rhs: Enclosure::of(&len_rhs),
        status: compare_le(&l, &len_rhs),
        note: None,
    };
    let (psi_n, _kappa, lambda) = level_invariants(p, prec)?;
    let six_psi = Interval::from_integer(&Integer::from(6u32 * &psi_n), prec);
    let logn = Interval::from_i64(p as i64, prec).ln()?;
    let two_lambda = lambda.mul(&Interval::from_i64(2, prec));
    let low_c = Interval::from_decimal_str("0.0351", prec)?;
    let high_c = Interval::from_decimal_str("9.5387", prec)?;
    let lower = six_psi.mul(&logn.sub(&two_lambda).sub(&low_c));
    let upper = six_psi.mul(&logn.sub(&two_lambda).add(&high_c));
    let two_sided_lower = BoundEntry {
        id: "phi-height-two-sided-lower".into(),
        lhs: Enclosure::of(&lower),
        rhs: Enclosure::of(&h),
        status: compare_le(&lower, &h),
        note: None,
    };
    let two_sided_upper = BoundEntry {
        id: "phi-height-two-sided-upper".into(),
        lhs: Enclosure::of(&h),
        rhs: Enclosure::of(&upper),
        status: compare_le(&h, &upper),
        note: None,
    };
    let l_ge_h = BoundEntry {
        id: "phi-length-ge-height".into(),
        lhs: Enclosure::of(&h),
        rhs: Enclosure::of(&l),
        status: compare_le(&h, &l),
        note: Some("L >= H termwise".into()),
    };
    Ok(PhiHeightReport {
        level: p,
        h: Enclosure::of(&h),
        l: Enclosure::of(&l),
        explicit_prime_bound,
        length_bound,
        two_sided_lower,
        two_sided_upper,
        l_ge_h,
    })
}

/// Report on the degrees of the irreducible factors of `Phi_p(X, j0)`.
#[derive(Clone, Debug, Serialize)]
pub struct SpecializationReport {
    pub level: u64,
    /// Integer roots found (degree-1 factors), certified exactly.
    pub rational_roots: Vec<String>,
    /// Certified lower bound for the degree of any non-linear factor of
    /// the cofactor (from integer-root exclusion and mod-l patterns).
    pub min_nonlinear_degree: usize,
    /// Degrees possible for rational factors of the cofactor, from the
    /// intersection of mod-l subset-sum patterns.
    pub candidate_degrees: Vec<usize>,
    /// `(p-1)/3 <= [Q(J(q), J(q^p)) : Q(J(q))]` check (when p does not
    /// divide the CM leading coefficient `a`).
    pub bertrand_bound: BoundEntry,
    pub cm_applicable: bool,
}

/// Degrees of the irreducible factors of `Phi_p(X, j0)` for an integral CM
/// j-invariant `j0` with CM equation `a tau^2 + b tau + c = 0`.
pub fn specialization_degree(
    phi: &ModularPolynomial,
    j0: &AlgebraicNumber,
    cm: Option<(i64, i64, i64)>,
    prec: u32,
) -> Result<SpecializationReport> {
    let j0_rat = j0
        .as_rational()
        .ok_or_else(|| Error::Domain("only rational integral j-invariants supported".into()))?;
    if j0_rat.denom() != &1 {
        return Err(Error::Domain("j0 must be a rational integer".into()));
    }
    let s = phi.poly.specialize_rational(1, &j0_rat); // Phi(X, j0)
    let s = s.primitive_part();
    // integer roots via certified isolation + exact confirmation
    let mut rational_roots = Vec::new();
    let mut cofactor = s.clone();
    let roots = isolate_roots(&s.squarefree_part()?, prec)?;
    for r in &roots {
        if !r.ball.im().contains_zero() {
            continue;
        }
        // candidate integers inside the real enclosure
        let lo = r.ball.re().lo().to_f64().floor() as i64;
        let hi = r.ball.re().hi().to_f64().ceil() as i64;
        for cand in lo..=hi {
            let c = Integer::from(cand);
            if cofactor.eval_integer(&c) == 0 {
                rational_roots.push(c.to_string());
                let linear = ZPoly::new(vec![Integer::from(-&c), Integer::from(1)]);
                while cofactor.eval_integer(&c) == 0 {
                    cofactor = cofactor.div_exact(&linear)?;
                }
            }
        }
    }
    // certified exclusion of further degree-1 factors: monic in X, so any
    // rational root is an integer root, and those are exhausted above
    let mut min_nonlinear = if cofactor.degree().unwrap_or(0) > 0 { 2 } else { 0 };
    // mod-l degree patterns
    let mut candidate: Option<Vec<usize>> = None;
    if cofactor.degree().unwrap_or(0) > 1 {
        let mut used = 0;
        let mut l = 11u64;
        while used < 6 && l < 2000 {
            l = next_prime_u64(l + 1);
            if cofactor.lead().clone() % Integer::from(l) == 0 {
                continue;
            }
            let f = ddf::FpPoly::new(
                l,
                cofactor
                    .coeffs()
                    .iter()
                    .map(|c| {
                        let m = Integer::from(c % Integer::from(l));
                        let m = if m < 0 { m + l } else { m };
                        m.to_u64().unwrap()
                    })
                    .collect(),
            );
            if let Some(degs) = ddf::ddf_degrees(&f) {
                let sums = ddf::subset_sums(&degs);
                candidate = Some(match candidate {
                    None => sums,
                    Some(prev) => prev.into_iter().filter(|d| sums.contains(d)).collect(),
                });
                used += 1;
            }
        }
        if let Some(c) = &candidate {
            if let Some(&min_c) = c.iter().filter(|&&d| d < cofactor.degree().unwrap()).min() {
                min_nonlinear = min_nonlinear.max(min_c);
            } else if let Some(d) = cofactor.degree() {
                min_nonlinear = min_nonlinear.max(d);
            }
        }
    }
    let cm_applicable = match cm {
        Some((a, _, _)) => a != 0 && (a.unsigned_abs() % phi.level) != 0,
        None => false,
    };
    // the Bertrand-type lower bound against the smallest certified factor
    // degree (1 when a rational root exists)
    let min_factor_degree = if rational_roots.is_empty() {
        min_nonlinear.max(1)
    } else {
        1
    };
    let lhs = Interval::from_i64(phi.level as i64 - 1, prec)
        .div(&Interval::from_i64(3, prec))?;
    let rhs = Interval::from_i64(min_factor_degree as i64, prec);
    let bertrand_bound = BoundEntry {
        id: "bertrand-specialization".into(),
        lhs: Enclosure::of(&lhs),
        rhs: Enclosure::of(&rhs),
        status: if cm_applicable {
            compare_le(&lhs, &rhs)
        } else {
            Status::Undetermined
        },
        note: Some(if cm_applicable {
            "checked against the smallest certified factor degree".into()
        } else {
            "no CM data with p not dividing a; bound not applicable".into()
        }),
    };
    Ok(SpecializationReport {
        level: phi.level,
        rational_roots,
        min_nonlinear_degree: min_nonlinear,
        candidate_degrees: candidate.unwrap_or_default(),
        bertrand_bound,
        cm_applicable,
    })
}

fn next_prime_u64(mut n: u64) -> u64 {
    loop {
        let mut is_p = n >= 2;
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                is_p = false;
                break;
            }
            d += 1;
        }
        if is_p {
            return n;
        }
        n += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Ball;

    #[test]
    fn psi_values() {
        assert_eq!(psi(7), Integer::from(8));
        assert_eq!(psi(6), Integer::from(12));
        assert_eq!(psi(2), Integer::from(3));
        assert_eq!(psi(12), Integer::from(24));
    }

    #[test]
    fn lambda_prime_is_logp_over_p_plus_one() {
        let (_, _, lambda) = level_invariants(2, 96).unwrap();
        // lambda_2 = log 2 / 3
        let expect = Interval::from_i64(2, 96).ln().unwrap().div(&Interval::from_i64(3, 96)).unwrap();
        assert!(lambda.intersects(&expect));
    }

    #[test]
    fn compute_phi2_matches_reference() {
        let phi = compute_phi_p(2, 16).unwrap();
        assert_eq!(phi.poly(), phi2_reference().poly());
    }

    #[test]
    fn phi2_vanishes_on_cm_pair() {
        let phi = phi2_reference();
        let v = phi.poly().eval_rational(&[
            Rational::from(1728),
            Rational::from(287496u64),
        ]);
        assert_eq!(v, 0);
    }

    #[test]
    fn identity_check_p2_and_corruption() {
        let phi = compute_phi_p(2, 16).unwrap();
        let rep = verify_phi_identity(&phi, 30).unwrap();
        assert!(rep.pass, "first offender {:?}", rep.first_offending_exponent);
        // corrupt one coefficient: the identity must fail early
        let mut terms: Vec<(Vec<u32>, Integer)> = phi.poly().terms().to_vec();
        for t in terms.iter_mut() {
            if t.0 == vec![1, 1] {
                t.1 += 1;
            }
        }
        let bad = ModularPolynomial { level: 2, poly: IntPolynomial::new(2, terms) };
        let rep = verify_phi_identity(&bad, 30).unwrap();
        assert!(!rep.pass);
        assert!(rep.first_offending_exponent.unwrap() < 5);
    }

    #[test]
    fn identity_check_p3() {
        let phi = compute_phi_p(3, 20).unwrap();
        let rep = verify_phi_identity(&phi, 30).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn height_bounds_p2_p3() {
        for (p, k) in [(2u64, 16i64), (3, 20)] {
            let phi = compute_phi_p(p, k).unwrap();
            let rep = certify_phi_height(&phi, 96).unwrap();
            assert_eq!(rep.explicit_prime_bound.status, Status::Holds, "p = {}", p);
            assert_eq!(rep.length_bound.status, Status::Holds);
            assert_eq!(rep.two_sided_lower.status, Status::Holds);
            assert_eq!(rep.two_sided_upper.status, Status::Holds);
            assert_eq!(rep.l_ge_h.status, Status::Holds);
        }
    }

    #[test]
    fn file_format_roundtrip() {
        let phi = phi2_reference();
        let mut buf = Vec::new();
        phi.write_to(&mut buf).unwrap();
        let back = ModularPolynomial::read_from(2, &mut buf.as_slice()).unwrap();
        assert_eq!(phi.poly(), back.poly());
    }

    #[test]
    fn specialization_for_1728_level_2() {
        let phi = phi2_reference();
        let prec = 128;
        let j0 = AlgebraicNumber::from_integer(&Integer::from(1728), prec);
        let rep = specialization_degree(&phi, &j0, Some((1, 0, 1)), prec).unwrap();
        assert!(rep.rational_roots.contains(&"287496".to_string()));
        assert!(rep.cm_applicable);
        assert_eq!(rep.bertrand_bound.status, Status::Holds);
        let _ = Ball::zero(32);
    }

    #[test]
    fn specialization_for_zero_level_2() {
        let phi = phi2_reference();
        let prec = 128;
        let j0 = AlgebraicNumber::from_integer(&Integer::new(), prec);
        let rep = specialization_degree(&phi, &j0, Some((1, 1, 1)), prec).unwrap();
        // 54000 = j of the 2-isogenous curve with CM by disc -12
        assert!(rep.rational_roots.contains(&"54000".to_string()));
        assert_eq!(rep.bertrand_bound.status, Status::Holds);
    }
}
