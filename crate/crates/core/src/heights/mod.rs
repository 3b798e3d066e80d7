//! Algebraic numbers, Weil height, Mahler measure, length/height of integer
//! polynomials, and the height lemmas used by the lower-bound chain:
//! Liouville's inequality, the evaluation-height bound, the root-height
//! bound through a bivariate resultant, and the isogenous-invariant bound.

pub mod poly;
pub mod roots;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::Serialize;

pub use poly::{cyclotomic, resultant, ZPoly};
pub use roots::{isolate_roots, RootEnclosure};

use crate::error::{Error, Result};
use crate::numerics::{with_escalating_prec, Ball, Interval};
use crate::report::{compare_le, BoundEntry, Enclosure, Status};

/// An algebraic number: a primitive squarefree integer polynomial with
/// positive leading coefficient, plus a certified ball isolating exactly
/// one of its roots.
///
/// The polynomial need not be irreducible; every reported height measure
/// then refers to the full polynomial, which upper-bounds the measures of
/// the true minimal polynomial (all Mahler factors are >= 1).
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    minpoly: ZPoly,
    root: Ball,
    degree: usize,
}

impl AlgebraicNumber {
    /// Normalizes `p` (primitive squarefree part) and selects the unique
    /// root whose certified enclosure meets `near`; escalates precision
    /// until the choice is unambiguous.
    pub fn new(p: &ZPoly, near: &Ball, prec: u32) -> Result<AlgebraicNumber> {
        let minpoly = normalize_poly(p)?;
        let degree = minpoly.degree().expect("nonconstant");
        with_escalating_prec(prec, prec.saturating_mul(16), |wp| {
            let roots = isolate_roots(&minpoly, wp)?;
            let hits: Vec<&RootEnclosure> =
                roots.iter().filter(|r| r.ball.intersects(near)).collect();
            match hits.len() {
                0 => Err(Error::InconsistentWitness(
                    "no root of the polynomial meets the given enclosure".into(),
                )),
                1 => Ok(AlgebraicNumber {
                    minpoly: minpoly.clone(),
                    root: hits[0].ball.clone(),
                    degree,
                }),
                _ => Err(Error::PrecisionInsufficient(
                    "several roots meet the given enclosure".into(),
                )),
            }
        })
    }

    /// Selects the `k`-th root (deterministic order) of the normalized
    /// polynomial.
    pub fn nth_root_of(p: &ZPoly, k: usize, prec: u32) -> Result<AlgebraicNumber> {
        let minpoly = normalize_poly(p)?;
        let degree = minpoly.degree().expect("nonconstant");
        if k >= degree {
            return Err(Error::Domain(format!("root index {} out of range", k)));
        }
        let roots = isolate_roots(&minpoly, prec)?;
        Ok(AlgebraicNumber { minpoly, root: roots[k].ball.clone(), degree })
    }

    pub fn from_rational(r: &Rational, prec: u32) -> AlgebraicNumber {
        let minpoly = ZPoly::new(vec![Integer::from(-r.numer()), r.denom().clone()]);
        AlgebraicNumber { minpoly, root: Ball::from_rational(r, prec), degree: 1 }
    }

    pub fn from_integer(n: &Integer, prec: u32) -> AlgebraicNumber {
        AlgebraicNumber::from_rational(&Rational::from(n), prec)
    }

    pub fn minpoly(&self) -> &ZPoly {
        &self.minpoly
    }

    pub fn root(&self) -> &Ball {
        &self.root
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Exact rational value when the polynomial is linear.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.degree == 1 {
            Some(Rational::from((
                Integer::from(-self.minpoly.coeff(0)),
                self.minpoly.coeff(1),
            )))
        } else {
            None
        }
    }

    /// `1/alpha` (requires alpha != 0): reversed polynomial, reciprocal ball.
    pub fn invert(&self, prec: u32) -> Result<AlgebraicNumber> {
        if self.minpoly.coeff(0) == 0 {
            return Err(Error::Domain("cannot invert zero (x divides the polynomial)".into()));
        }
        let rev = self.minpoly.reverse();
        let near = self.root.recip()?;
        AlgebraicNumber::new(&rev, &near, prec.max(self.root.prec()))
    }
}

fn normalize_poly(p: &ZPoly) -> Result<ZPoly> {
    if p.is_zero() {
        return Err(Error::Domain("zero polynomial".into()));
    }
    let sf = p.squarefree_part()?;
    if sf.is_constant() {
        return Err(Error::Domain("polynomial has no roots".into()));
    }
    Ok(sf)
}

/// Certified height data of an algebraic number.
#[derive(Clone, Debug)]
pub struct HeightMeasures {
    /// Mahler measure `M = |lead| prod max(1, |root|)`.
    pub mahler: Interval,
    /// Logarithmic Mahler measure `m = log M` (nonnegative).
    pub log_mahler: Interval,
    /// Weil height `h = m / deg`.
    pub weil: Interval,
    /// Exact integer Mahler measure when available (rationals and products
    /// of cyclotomics).
    pub exact_mahler: Option<Integer>,
}

/// Mahler measure, Weil height, and logarithmic Mahler measure.
pub fn height_measures(a: &AlgebraicNumber, prec: u32) -> Result<HeightMeasures> {
    let exact = exact_mahler(a);
    let mahler = match &exact {
        Some(m) => Interval::from_integer(m, prec),
        None => mahler_from_roots(&a.minpoly, prec)?,
    };
    let log_mahler = {
        let raw = mahler.ln()?;
        // m(alpha) >= 0 always; clamp rounding dips
        let lo = if raw.lo() < &0 { Float::with_val(raw.prec(), 0) } else { raw.lo().clone() };
        Interval::new(lo, raw.hi().clone())
    };
    let weil = log_mahler.div(&Interval::from_i64(a.degree as i64, prec))?;
    Ok(HeightMeasures { mahler, log_mahler, weil, exact_mahler: exact })
}

fn mahler_from_roots(p: &ZPoly, prec: u32) -> Result<Interval> {
    let attempt = |wp: u32, strict: bool| -> Result<Interval> {
        let roots = isolate_roots(p, wp)?;
        let mut m = Interval::from_integer(&p.lead(), wp).abs();
        let one = Interval::one(wp);
        for r in &roots {
            if strict && r.abs.lo() < &1 && r.abs.hi() > &1 {
                return Err(Error::PrecisionInsufficient(
                    "root modulus enclosure straddles 1".into(),
                ));
            }
            m = m.mul(&r.abs.max_with(&one));
        }
        Ok(m)
    };
    // give the precision ladder a chance to push every modulus off 1, then
    // fall back to the sound max(1, -) enclosure (roots genuinely on the
    // circle contribute a factor enclosing 1 either way)
    match with_escalating_prec(prec, prec.saturating_mul(8), |wp| attempt(wp, true)) {
        Ok(m) => Ok(m),
        Err(Error::PrecisionInsufficient(_)) => attempt(prec.saturating_mul(4), false),
        Err(e) => Err(e),
    }
}

/// Exact Mahler measure for linear polynomials and for polynomials that
/// split into cyclotomics (times a power of x).
fn exact_mahler(a: &AlgebraicNumber) -> Option<Integer> {
    let p = &a.minpoly;
    if a.degree == 1 {
        return Some(p.coeff(0).abs().max(p.coeff(1).abs()));
    }
    let mut rest = p.clone();
    if rest.coeff(0) == 0 {
        rest = rest.div_exact(&ZPoly::x()).ok()?;
    }
    let deg = rest.degree()?;
    if deg == 0 {
        return Some(p.lead().abs());
    }
    let bound = 2 * (deg as u64) * (deg as u64) + 2;
    let mut n = 1u64;
    while n <= bound {
        let d = rest.degree()?;
        if d == 0 {
            break;
        }
        let phi = cyclotomic(n);
        if phi.degree().unwrap_or(usize::MAX) <= d {
            if let Ok(q) = rest.div_exact(&phi) {
                rest = q;
                continue; // squarefree input: the same Phi_n never repeats
            }
        }
        n += 1;
    }
    if rest.degree() == Some(0) {
        Some(p.lead().abs())
    } else {
        None
    }
}

/// Report of one verified height inequality with the attained slack.
#[derive(Clone, Debug, Serialize)]
pub struct HeightLemmaReport {
    pub entry: BoundEntry,
    /// `rhs - lhs` enclosure.
    pub slack: Enclosure,
}

fn finish_report(
    id: &str,
    lhs: &Interval,
    rhs: &Interval,
    exact_holds: Option<bool>,
) -> HeightLemmaReport {
    let status = match exact_holds {
        Some(true) => Status::Holds,
        Some(false) => Status::Fails,
        None => compare_le(lhs, rhs),
    };
    HeightLemmaReport {
        entry: BoundEntry {
            id: id.into(),
            lhs: Enclosure::of(lhs),
            rhs: Enclosure::of(rhs),
            status,
            note: exact_holds.map(|_| "decided by exact integer comparison".into()),
        },
        slack: Enclosure::of(&rhs.sub(lhs)),
    }
}

/// Liouville's inequality `log |alpha| >= -deg(alpha) h(alpha)` for
/// nonzero algebraic alpha (checked as `-log |alpha| <= m(alpha)`).
pub fn liouville_check(a: &AlgebraicNumber, prec: u32) -> Result<HeightLemmaReport> {
    let abs = a.root.abs();
    if !abs.is_strictly_positive() {
        if a.minpoly.coeff(0) == 0 {
            return Err(Error::Domain("Liouville needs alpha != 0".into()));
        }
        return Err(Error::PrecisionInsufficient(
            "root enclosure touches zero; retry with higher precision".into(),
        ));
    }
    let measures = height_measures(a, prec)?;
    let lhs = abs.ln()?.neg();
    let rhs = measures.log_mahler.clone();
    // exact route for rationals: |p|/q >= 1/max(|p|, q) <=> |p| max >= q
    let exact = a.as_rational().map(|r| {
        let p = Integer::from(r.numer().abs_ref());
        let m = p.clone().max(Integer::from(r.denom()));
        Integer::from(&p * &m) >= *r.denom()
    });
    Ok(finish_report("liouville", &lhs, &rhs, exact))
}

/// Integer polynomial in several variables, sparse support: no zero
/// coefficients stored, exponent tuples distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    arity: usize,
    terms: Vec<(Vec<u32>, Integer)>,
}

impl IntPolynomial {
    pub fn new(arity: usize, mut terms: Vec<(Vec<u32>, Integer)>) -> Self {
        terms.retain(|(_, c)| *c != 0);
        for (e, _) in &terms {
            assert_eq!(e.len(), arity);
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Vec<u32>, Integer)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if let Some(last) = merged.last_mut() {
                if last.0 == e {
                    last.1 += c;
                    continue;
                }
            }
            merged.push((e, c));
        }
        merged.retain(|(_, c)| *c != 0);
        IntPolynomial { arity, terms: merged }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[(Vec<u32>, Integer)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `L(P)`: sum of |coefficients|.
    pub fn length(&self) -> Integer {
        let mut s = Integer::new();
        for (_, c) in &self.terms {
            s += Integer::from(c.abs_ref());
        }
        s
    }

    /// `H(P)`: max |coefficient|.
    pub fn height(&self) -> Integer {
        let mut h = Integer::new();
        for (_, c) in &self.terms {
            let a = Integer::from(c.abs_ref());
            if a > h {
                h = a;
            }
        }
        h
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[var]).max().unwrap_or(0)
    }

    pub fn coeff(&self, exps: &[u32]) -> Integer {
        self.terms
            .iter()
            .find(|(e, _)| e == exps)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    pub fn eval_ball(&self, args: &[Ball], prec: u32) -> Ball {
        assert_eq!(args.len(), self.arity);
        let mut acc = Ball::zero(prec);
        for (e, c) in &self.terms {
            let mut t = Ball::from_integer(c, prec);
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&args[v].powi(k as i64).expect("nonnegative power"));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Exact evaluation at rational points.
    pub fn eval_rational(&self, args: &[Rational]) -> Rational {
        assert_eq!(args.len(), self.arity);
        let mut acc = Rational::new();
        for (e, c) in &self.terms {
            let mut t = Rational::from(c);
            for (v, &k) in e.iter().enumerate() {
                t *= Rational::from(args[v].clone().pow(k));
            }
            acc += t;
        }
        acc
    }

    /// Views an arity-2 polynomial as a polynomial in the first variable
    /// with `ZPoly` coefficients in the second.
    pub fn as_poly_in_x(&self) -> Vec<ZPoly> {
        assert_eq!(self.arity, 2);
        let dx = self.degree_in(0) as usize;
        let dy = self.degree_in(1) as usize;
        let mut out = vec![vec![Integer::new(); dy + 1]; dx + 1];
        for (e, c) in &self.terms {
            out[e[0] as usize][e[1] as usize] = c.clone();
        }
        out.into_iter().map(ZPoly::new).collect()
    }

    /// Specializes variable `var` of an arity-2 polynomial at a rational
    /// point and clears denominators, leaving an integer polynomial in the
    /// other variable.
    pub fn specialize_rational(&self, var: usize, value: &Rational) -> ZPoly {
        assert_eq!(self.arity, 2);
        let other = 1 - var;
        let d = self.degree_in(other) as usize;
        let mut num = vec![Rational::new(); d + 1];
        for (e, c) in &self.terms {
            let t = Rational::from(c) * Rational::from(value.clone().pow(e[var]));
            num[e[other] as usize] += t;
        }
        let mut lcm = Integer::from(1);
        for x in &num {
            lcm = lcm.lcm(x.denom());
        }
        ZPoly::new(
            num.iter()
                .map(|x| Integer::from(x.numer() * &lcm) / x.denom())
                .collect(),
        )
    }
}

/// `Res_X(pa(X), P(X, Y))` as a polynomial in Y, by a fraction-free
/// Sylvester determinant over Z[Y].
pub fn resultant_x(pa: &ZPoly, p: &IntPolynomial) -> Result<ZPoly> {
    let coeffs_x = p.as_poly_in_x();
    let m = pa.degree().ok_or_else(|| Error::Domain("zero polynomial".into()))?;
    let n = coeffs_x.len() - 1;
    if m == 0 {
        return Ok(ZPoly::constant(Integer::from(pa.lead().pow(n as u32))));
    }
    if n == 0 {
        let mut r = ZPoly::constant(Integer::from(1));
        for _ in 0..m {
            r = r.mul(&coeffs_x[0]);
        }
        return Ok(r);
    }
    let size = m + n;
    let mut mat = vec![vec![ZPoly::zero(); size]; size];
    for row in 0..n {
        for (j, c) in pa.coeffs().iter().enumerate() {
            mat[row][row + (m - j)] = ZPoly::constant(c.clone());
        }
    }
    for row in 0..m {
        for (j, c) in coeffs_x.iter().enumerate() {
            mat[n + row][row + (n - j)] = c.clone();
        }
    }
    bareiss_det_poly(mat)
}

fn bareiss_det_poly(mut m: Vec<Vec<ZPoly>>) -> Result<ZPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(ZPoly::constant(Integer::from(1)));
    }
    let mut sign = 1i32;
    let mut prev = ZPoly::constant(Integer::from(1));
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(ZPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev)?;
            }
            m[i][k] = ZPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m.pop().expect("nonempty").pop().expect("nonempty");
    Ok(if sign < 0 { d.neg() } else { d })
}

/// Evaluation-height lemma:
/// `h(P(a_1, ..., a_n)) <= log L(P) + sum deg_{X_i}(P) h(a_i)`.
///
/// The caller supplies the exact algebraic value; a numeric cross-check
/// rejects inconsistent witnesses.
pub fn eval_height_bound(
    p: &IntPolynomial,
    args: &[AlgebraicNumber],
    value: &AlgebraicNumber,
    prec: u32,
) -> Result<HeightLemmaReport> {
    assert_eq!(args.len(), p.arity());
    let arg_balls: Vec<Ball> = args.iter().map(|a| a.root.clone()).collect();
    let eval = p.eval_ball(&arg_balls, prec);
    if !eval.intersects(&value.root) {
        return Err(Error::InconsistentWitness(
            "the supplied value's enclosure does not meet P(args)".into(),
        ));
    }
    let hv = height_measures(value, prec)?.weil;
    let mut rhs = Interval::from_integer(&p.length(), prec).ln()?;
    for (i, a) in args.iter().enumerate() {
        let ha = height_measures(a, prec)?.weil;
        let d = Interval::from_i64(p.degree_in(i) as i64, prec);
        rhs = rhs.add(&d.mul(&ha));
    }
    let exact = all_rational_exact(p, args, value);
    Ok(finish_report("evaluation-height", &hv, &rhs, exact))
}

fn all_rational_exact(
    p: &IntPolynomial,
    args: &[AlgebraicNumber],
    value: &AlgebraicNumber,
) -> Option<bool> {
    // exact integer comparison of exp(LHS) <= exp(RHS):
    //   max(|pv|, qv) <= L(P) prod max(|pi|, qi)^deg_i
    let rv = value.as_rational()?;
    let mut rhs = p.length();
    for (i, a) in args.iter().enumerate() {
        let r = a.as_rational()?;
        let m = Integer::from(r.numer().abs_ref()).max(Integer::from(r.denom()));
        rhs *= m.pow(p.degree_in(i));
    }
    let lhs = Integer::from(rv.numer().abs_ref()).max(Integer::from(rv.denom()));
    Some(lhs <= rhs)
}

/// Root-height lemma: for `P(alpha, beta) = 0` with `P(alpha, Y)` not
/// constant,
/// `m(beta) <= deg(alpha) (log L(P) + deg_X(P) h(alpha))`.
///
/// The vanishing is certified both numerically and by the exact resultant
/// `Res_X(minpoly_alpha, P)`, which beta's polynomial must divide.
pub fn root_height_bound(
    p: &IntPolynomial,
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
    prec: u32,
) -> Result<HeightLemmaReport> {
    assert_eq!(p.arity(), 2);
    // P(alpha, Y) nonconstant: some positive-degree Y-coefficient must not
    // vanish at alpha
    let coeffs_y = transpose_to_y(p);
    let mut nonconstant = false;
    for cy in coeffs_y.iter().skip(1) {
        if cy.is_zero() {
            continue;
        }
        if cy.eval_ball(&a.root, prec).excludes_zero() {
            nonconstant = true;
            break;
        }
    }
    if !nonconstant {
        return Err(Error::Domain(
            "P(alpha, Y) is constant (or not certifiably nonconstant)".into(),
        ));
    }
    let v = p.eval_ball(&[a.root.clone(), b.root.clone()], prec);
    if v.excludes_zero() {
        return Err(Error::InconsistentWitness(
            "P(alpha, beta) is certifiably nonzero".into(),
        ));
    }
    let res = resultant_x(&a.minpoly, p)?;
    if res.is_zero() {
        return Err(Error::InconsistentWitness(
            "resultant vanishes identically".into(),
        ));
    }
    if !b.minpoly.divides_over_q(&res) {
        return Err(Error::InconsistentWitness(
            "beta's polynomial does not divide the resultant".into(),
        ));
    }
    let mb = height_measures(b, prec)?.log_mahler;
    let ha = height_measures(a, prec)?.weil;
    let rhs = Interval::from_i64(a.degree() as i64, prec).mul(
        &Interval::from_integer(&p.length(), prec)
            .ln()?
            .add(&Interval::from_i64(p.degree_in(0) as i64, prec).mul(&ha)),
    );
    // exact route when both numbers are rational
    let exact = (|| {
        let ra = a.as_rational()?;
        let rb = b.as_rational()?;
        let ma = Integer::from(ra.numer().abs_ref()).max(Integer::from(ra.denom()));
        let mb_exact = Integer::from(rb.numer().abs_ref()).max(Integer::from(rb.denom()));
        let rhs_exact = p.length() * ma.pow(p.degree_in(0));
        Some(mb_exact <= rhs_exact)
    })();
    Ok(finish_report("root-height", &mb, &rhs, exact))
}

fn transpose_to_y(p: &IntPolynomial) -> Vec<ZPoly> {
    let dy = p.degree_in(1) as usize;
    let dx = p.degree_in(0) as usize;
    let mut out = vec![vec![Integer::new(); dx + 1]; dy + 1];
    for (e, c) in p.terms() {
        out[e[1] as usize][e[0] as usize] = c.clone();
    }
    out.into_iter().map(ZPoly::new).collect()
}

impl ZPoly {
    /// `true` when `self` divides `other` over Q.
    pub fn divides_over_q(&self, other: &ZPoly) -> bool {
        if other.is_zero() {
            return true;
        }
        if self.is_zero() {
            return false;
        }
        self.gcd(other).degree() == self.degree()
    }
}

/// Report of the isogenous-invariant height bound
/// `h(J(q^n)) <= 2 h(J(q)) + 6 log(1+n) + C2`.
#[derive(Clone, Debug, Serialize)]
pub struct IsogenyHeightReport {
    pub entry: BoundEntry,
    /// Smallest C2 making the inequality hold for this pair (clamped at 0).
    pub minimal_c2: Enclosure,
    /// Result of the modular-polynomial vanishing cross-check, when a
    /// polynomial for the level was supplied.
    pub phi_vanishes: Option<bool>,
}

/// Checks the isogenous-invariant height bound for a pair of j-invariants.
pub fn isogeny_height_check(
    j1: &AlgebraicNumber,
    jn: &AlgebraicNumber,
    n: u64,
    c2: &Interval,
    phi: Option<&IntPolynomial>,
    prec: u32,
) -> Result<IsogenyHeightReport> {
    let h1 = height_measures(j1, prec)?.weil;
    let hn = height_measures(jn, prec)?.weil;
    let two = Interval::from_i64(2, prec);
    let six = Interval::from_i64(6, prec);
    let log1n = Interval::from_i64(1 + n as i64, prec).ln()?;
    let rhs = two.mul(&h1).add(&six.mul(&log1n)).add(c2);
    let entry = BoundEntry {
        id: "isogeny-height".into(),
        lhs: Enclosure::of(&hn),
        rhs: Enclosure::of(&rhs),
        status: compare_le(&hn, &rhs),
        note: None,
    };
    let raw_min = hn.sub(&two.mul(&h1)).sub(&six.mul(&log1n));
    let minimal = {
        let clamp = |x: &Float| if *x < 0 { Float::with_val(prec, 0) } else { x.clone() };
        Interval::new(clamp(raw_min.lo()), clamp(raw_min.hi()))
    };
    let phi_vanishes = match phi {
        None => None,
        Some(p) => match (j1.as_rational(), jn.as_rational()) {
            (Some(r1), Some(rn)) => Some(p.eval_rational(&[rn, r1]) == 0),
            _ => {
                let v = p.eval_ball(&[jn.root.clone(), j1.root.clone()], prec);
                Some(!v.excludes_zero())
            }
        },
    };
    Ok(IsogenyHeightReport { entry, minimal_c2: Enclosure::of(&minimal), phi_vanishes })
}

/// Witness polynomial for `alpha + beta`: `Res_X(pa(X), pb(Z - X))`.
pub fn sum_witness_poly(pa: &ZPoly, pb: &ZPoly) -> Result<ZPoly> {
    let mut terms = Vec::new();
    for (j, c) in pb.coeffs().iter().enumerate() {
        if *c == 0 {
            continue;
        }
        // c (Z - X)^j = c sum_k binom(j,k) Z^k (-X)^(j-k)
        for k in 0..=j {
            let b = Integer::from(Integer::binomial_u(j as u32, k as u32));
            let sign = if (j - k) % 2 == 0 { 1i32 } else { -1 };
            let coeff = Integer::from(c * &b) * Integer::from(sign);
            terms.push((vec![(j - k) as u32, k as u32], coeff));
        }
    }
    resultant_x(pa, &IntPolynomial::new(2, terms))
}

/// Witness polynomial for `alpha * beta`: `Res_X(pa(X), X^db pb(Z/X))`
/// (requires `pb(0) != 0`).
pub fn product_witness_poly(pa: &ZPoly, pb: &ZPoly) -> Result<ZPoly> {
    if pb.coeff(0) == 0 {
        return Err(Error::Domain("product witness needs beta != 0".into()));
    }
    let db = pb.degree().ok_or_else(|| Error::Domain("zero polynomial".into()))?;
    let mut terms = Vec::new();
    for (j, c) in pb.coeffs().iter().enumerate() {
        if *c == 0 {
            continue;
        }
        terms.push((vec![(db - j) as u32, j as u32], c.clone()));
    }
    resultant_x(pa, &IntPolynomial::new(2, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hint(num: i64, den: i64, prec: u32) -> Ball {
        Ball::from_rational(&Rational::from((num, den)), prec)
            .inflate(&Float::with_val(prec, 1e-2f64))
    }

    fn golden(prec: u32) -> AlgebraicNumber {
        // x^2 - x - 1, root near 1.618
        AlgebraicNumber::new(&ZPoly::from_i64(&[-1, -1, 1]), &hint(1618, 1000, prec), prec)
            .unwrap()
    }

    #[test]
    fn measures_of_simple_numbers() {
        let p = 96;
        let two = AlgebraicNumber::from_integer(&Integer::from(2), p);
        let m = height_measures(&two, p).unwrap();
        assert_eq!(m.exact_mahler, Some(Integer::from(2)));
        assert!(m.weil.contains_rational(&Rational::new()) == false);
        let third = AlgebraicNumber::from_rational(&Rational::from((1, 3)), p);
        let m = height_measures(&third, p).unwrap();
        assert_eq!(m.exact_mahler, Some(Integer::from(3)));

        let phi = golden(p);
        let m = height_measures(&phi, p).unwrap();
        // M(phi) = (1+sqrt 5)/2 ~ 1.6180
        assert!(m.mahler.lo().to_f64() > 1.61803 && m.mahler.hi().to_f64() < 1.61804);
        // h = m/2
        assert!((m.weil.mid().to_f64() - 0.2406059125) < 1e-6);
    }

    #[test]
    fn measure_invariant_under_inversion() {
        let p = 96;
        let phi = golden(p);
        let inv = phi.invert(p).unwrap();
        let m1 = height_measures(&phi, p).unwrap();
        let m2 = height_measures(&inv, p).unwrap();
        assert!(m1.mahler.intersects(&m2.mahler));
    }

    #[test]
    fn roots_of_unity_have_measure_one() {
        let p = 96;
        // x^2 + 1: i is a root of unity
        let i = AlgebraicNumber::nth_root_of(&ZPoly::from_i64(&[1, 0, 1]), 0, p).unwrap();
        let m = height_measures(&i, p).unwrap();
        assert_eq!(m.exact_mahler, Some(Integer::from(1)));
        assert!(m.weil.lo() >= &0 && m.weil.hi().to_f64() < 1e-20);
    }

    #[test]
    fn liouville_equality_for_one_third() {
        let p = 96;
        let third = AlgebraicNumber::from_rational(&Rational::from((1, 3)), p);
        let rep = liouville_check(&third, p).unwrap();
        assert_eq!(rep.entry.status, Status::Holds);
        let phi = golden(p);
        let rep = liouville_check(&phi, p).unwrap();
        assert_eq!(rep.entry.status, Status::Holds);
        // slack = 2 log phi
        let s: f64 = rep.slack.lo.parse::<f64>().unwrap();
        assert!((s - 2.0 * 1.6180339887f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn liouville_rejects_zero() {
        let p = 96;
        let zero = AlgebraicNumber::from_integer(&Integer::new(), p);
        assert!(matches!(liouville_check(&zero, p), Err(Error::Domain(_))));
    }

    #[test]
    fn eval_height_simple() {
        let p = 96;
        // P = X + Y at (1, 1) -> 2: equality log 2 <= log 2
        let pxy = IntPolynomial::new(
            2,
            vec![
                (vec![1, 0], Integer::from(1)),
                (vec![0, 1], Integer::from(1)),
            ],
        );
        let one = AlgebraicNumber::from_integer(&Integer::from(1), p);
        let two = AlgebraicNumber::from_integer(&Integer::from(2), p);
        let rep = eval_height_bound(&pxy, &[one.clone(), one.clone()], &two, p).unwrap();
        assert_eq!(rep.entry.status, Status::Holds);
        // P = XY at (2, 3) -> 6: equality
        let pxy = IntPolynomial::new(2, vec![(vec![1, 1], Integer::from(1))]);
        let a = AlgebraicNumber::from_integer(&Integer::from(2), p);
        let b = AlgebraicNumber::from_integer(&Integer::from(3), p);
        let six = AlgebraicNumber::from_integer(&Integer::from(6), p);
        let rep = eval_height_bound(&pxy, &[a, b], &six, p).unwrap();
        assert_eq!(rep.entry.status, Status::Holds);
    }

    #[test]
    fn eval_height_with_golden_ratio() {
        let p = 96;
        // P = X^2 + Y, alpha = golden, beta = 2; value = phi^2 + 2 = phi + 3
        let pxy = IntPolynomial::new(
            2,
            vec![
                (vec![2, 0], Integer::from(1)),
                (vec![0, 1], Integer::from(1)),
            ],
        );
        let phi = golden(p);
        let two = AlgebraicNumber::from_integer(&Integer::from(2), p);
        // minimal polynomial of phi + 3: (x-3)^2 - (x-3) - 1 = x^2 - 7x + 11
        let value =
            AlgebraicNumber::new(&ZPoly::from_i64(&[11, -7, 1]), &hint(4618, 1000, p), p).unwrap();
        let rep = eval_height_bound(&pxy, &[phi.clone(), two], &value, p).unwrap();
        assert_eq!(rep.entry.status, Status::Holds);
        // the resultant oracle agrees with the shifted polynomial
        let direct = sum_witness_poly(phi.minpoly(), &ZPoly::from_i64(&[-3, 1])).unwrap();
        assert_eq!(direct.squarefree_part().unwrap(), ZPoly::from_i64(&[11, -7, 1]));
    }

    #[test]
    fn eval_height_rejects_bad_witness() {
        let p = 96;
        let pxy = IntPolynomial::new(2, vec![(vec![1, 1], Integer::from(1))]);
        let a = AlgebraicNumber::from_integer(&Integer::from(2), p);
        let b = AlgebraicNumber::from_integer(&Integer::from(3), p);
        let seven = AlgebraicNumber::from_integer(&Integer::from(7), p);
        assert!(matches!(
            eval_height_bound(&pxy, &[a, b], &seven, p),
            Err(Error::InconsistentWitness(_))
        ));
    }

    #[test]
    fn root_height_simple_cases() {
        let p = 96;
        // P = Y - X^2, alpha = 2, beta = 4
        let pxy = IntPolynomial::new(
            2,
            vec![
                (vec![0, 1], Integer::from(1)),
                (vec![2, 0], Integer::from(-1)),
            ],
        );
        let a = AlgebraicNumber::from_integer(&Integer::from(2), p);
        let b = AlgebraicNumber::from_integer(&Integer::from(4), p);
        let rep = root_height_bound(&pxy, &a, &b, p).unwrap();
        assert_eq!(rep.entry.status, Status::Holds);
        // P = Y^2 - X, alpha = 2, beta = sqrt 2
        let pxy = IntPolynomial::new(
            2,
            vec![
                (vec![0, 2], Integer::from(1)),
                (vec![1, 0], Integer::from(-1)),
            ],
        );
        let sqrt2 =
            AlgebraicNumber::new(&ZPoly::from_i64(&[-2, 0, 1]), &hint(14142, 10000, p), p).unwrap();
        let rep = root_height_bound(&pxy, &a, &sqrt2, p).unwrap();
        assert_eq!(rep.entry.status, Status::Holds);
    }

    #[test]
    fn root_height_rejects_constant_specialization() {
        let p = 96;
        // P = X - 2 has no Y at all
        let pxy = IntPolynomial::new(2, vec![(vec![1, 0], Integer::from(1)), (vec![0, 0], Integer::from(-2))]);
        let a = AlgebraicNumber::from_integer(&Integer::from(2), p);
        let b = AlgebraicNumber::from_integer(&Integer::from(5), p);
        assert!(root_height_bound(&pxy, &a, &b, p).is_err());
    }

    #[test]
    fn product_and_sum_witness_heights() {
        let p = 96;
        // h(alpha beta) <= h(alpha) + h(beta) at the resultant level:
        // m(D_sf) <= d1 d2 (h(a) + h(b));
        // h(a + b) variant gets the extra log 2
        let pa = ZPoly::from_i64(&[-1, -1, 1]);
        let pb = ZPoly::from_i64(&[-2, 0, 1]);
        let a = AlgebraicNumber::nth_root_of(&pa, 1, p).unwrap();
        let b = AlgebraicNumber::nth_root_of(&pb, 1, p).unwrap();
        let ha = height_measures(&a, p).unwrap().weil;
        let hb = height_measures(&b, p).unwrap().weil;
        let d1d2 = Interval::from_i64(4, p);

        let prod = product_witness_poly(&pa, &pb).unwrap().squarefree_part().unwrap();
        let gamma = AlgebraicNumber::nth_root_of(&prod, 0, p).unwrap();
        let m_prod = height_measures(&gamma, p).unwrap();
        // measure of the whole witness polynomial bounds the product bound
        let rhs = d1d2.mul(&ha.add(&hb));
        assert_eq!(compare_le(&m_prod.log_mahler, &rhs), Status::Holds);

        let sum = sum_witness_poly(&pa, &pb).unwrap().squarefree_part().unwrap();
        let gamma = AlgebraicNumber::nth_root_of(&sum, 0, p).unwrap();
        let m_sum = height_measures(&gamma, p).unwrap();
        let log2 = Interval::from_i64(2, p).ln().unwrap();
        let rhs = d1d2.mul(&log2.add(&ha).add(&hb));
        assert_eq!(compare_le(&m_sum.log_mahler, &rhs), Status::Holds);
    }

    #[test]
    fn isogeny_height_j_invariants() {
        let p = 96;
        let j1 = AlgebraicNumber::from_integer(&Integer::from(1728), p);
        let j2 = AlgebraicNumber::from_integer(&Integer::from(287496), p);
        let c2 = Interval::from_i64(10, p);
        let rep = isogeny_height_check(&j1, &j2, 2, &c2, None, p).unwrap();
        // h(287496) = log 287496 ~ 12.57; rhs = 2 log 1728 + 6 log 3 + 10
        assert_eq!(rep.entry.status, Status::Holds);
        let min: f64 = rep.minimal_c2.hi.parse().unwrap();
        // log 287496 - 2 log 1728 - 6 log 3 < 0, so the minimal c2 is 0
        assert_eq!(min, 0.0);
        // n = 1, j1 = jn: holds for any c2 >= 0
        let rep = isogeny_height_check(&j1, &j1, 1, &Interval::zero(p), None, p).unwrap();
        assert_eq!(rep.entry.status, Status::Holds);
    }
}
