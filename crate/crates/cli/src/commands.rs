//! Subcommand implementations: each produces one JSON report with a schema
//! version and the provenance block, then maps findings to the exit code.

use anyhow::{anyhow, Context, Result};
use rug::{Integer, Rational};
use serde::Serialize;
use serde_json::json;

use mahler_core::auxfn;
use mahler_core::chain;
use mahler_core::heights::{self, AlgebraicNumber, ZPoly};
use mahler_core::modforms;
use mahler_core::modpoly;
use mahler_core::numerics::{Ball, Interval};
use mahler_core::primes::PrimeTable;
use mahler_core::qseries;
use mahler_core::report::Status;

use crate::config::{ConstantsFile, RunConfig};
use crate::{EXIT_PASS, EXIT_UNDETERMINED, EXIT_VIOLATION};

pub struct Ctx {
    pub cfg: RunConfig,
    pub constants: ConstantsFile,
    pub out: Option<String>,
}

impl Ctx {
    fn provenance(&self) -> serde_json::Value {
        json!({
            "c1": { "value": self.constants.c1,
                    "provenance": "certified-computed",
                    "grid_depth": self.constants.c1_grid_depth,
                    "precision_bits": self.constants.c1_precision_bits },
            "c2": { "value": self.constants.c2, "provenance": "user-configured" },
            "c14": { "value": self.constants.c14,
                     "provenance": "certified-computed",
                     "limit": self.constants.c14_limit },
        })
    }

    fn emit(&self, command: &str, result: serde_json::Value) -> Result<()> {
        let report = json!({
            "schema_version": 1,
            "command": command,
            "config": { "precision_bits": self.cfg.precision_bits,
                        "sieve_limit": self.cfg.sieve_limit,
                        "series_trunc": self.cfg.series_trunc },
            "provenance": self.provenance(),
            "result": result,
        });
        let text = serde_json::to_string_pretty(&report)? + "\n";
        match &self.out {
            Some(path) => std::fs::write(path, text).context("writing report")?,
            None => print!("{}", text),
        }
        Ok(())
    }

    fn c1(&self) -> Result<Interval> {
        Interval::from_decimal_str(&self.constants.c1, self.cfg.precision_bits)
            .map_err(|e| anyhow!("c1: {}", e))
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<serde_json::Value> {
    Ok(serde_json::to_value(v)?)
}

/// Parses a decimal like "0.5" or "1/3" into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let n = Integer::from_str_radix(a.trim(), 10).map_err(|e| anyhow!("{}", e))?;
        let d = Integer::from_str_radix(b.trim(), 10).map_err(|e| anyhow!("{}", e))?;
        if d == 0 {
            return Err(anyhow!("zero denominator"));
        }
        return Ok(Rational::from((n, d)));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int_part = Integer::from_str_radix(if int.is_empty() { "0" } else { int }, 10)
            .map_err(|e| anyhow!("{}", e))?;
        let digits = frac.len() as u32;
        let frac_part = Integer::from_str_radix(if frac.is_empty() { "0" } else { frac }, 10)
            .map_err(|e| anyhow!("{}", e))?;
        let den = Integer::from(10u32).pow(digits);
        let num_abs = Integer::from(int_part.clone().abs() * &den) + frac_part;
        let num = if neg { -num_abs } else { num_abs };
        return Ok(Rational::from((num, den)));
    }
    Ok(Rational::from(
        Integer::from_str_radix(s, 10).map_err(|e| anyhow!("{}", e))?,
    ))
}

use rug::ops::Pow;

fn parse_residue(s: Option<&str>) -> Result<Option<(u64, u64)>> {
    match s {
        None => Ok(None),
        Some(t) => {
            let (a, d) = t
                .split_once(',')
                .ok_or_else(|| anyhow!("residue must be \"a,d\""))?;
            Ok(Some((a.trim().parse()?, d.trim().parse()?)))
        }
    }
}

pub fn expand(ctx: &Ctx, form: &str, trunc: i64) -> Result<i32> {
    let series = match form {
        "delta" => qseries::delta_expansion(trunc)?,
        "j" => qseries::j_expansion(trunc)?,
        "e4" => qseries::e4_expansion(trunc)?,
        other => return Err(anyhow!("unknown form `{}` (expected delta, j, or e4)", other)),
    };
    let mut body = Vec::new();
    series.write_to(&mut body)?;
    let text = String::from_utf8(body).expect("series format is ascii");
    match &ctx.out {
        Some(path) => std::fs::write(path, &text).context("writing series")?,
        None => print!("{}", text),
    }
    Ok(EXIT_PASS)
}

pub fn certify_hecke(ctx: &Ctx, n: u32, l: u32, trunc: i64) -> Result<i32> {
    let table = modforms::cusp_coeffs(n, l, trunc - 1)?;
    let rep = modforms::certify_hecke(&table, &ctx.c1()?)?;
    let pass = rep.pass;
    ctx.emit(
        "certify-hecke",
        json!({
            "N": n, "l": l, "trunc": trunc,
            "max_ratio": rep.max_ratio,
            "argmax_k": rep.argmax_k,
            "pass": pass,
            "violations": rep.violations,
        }),
    )?;
    Ok(if pass { EXIT_PASS } else { EXIT_VIOLATION })
}

pub fn build_aux(ctx: &Ctx, n: u32, trunc: Option<i64>) -> Result<i32> {
    let l = (n as i64 * n as i64) / 2;
    let trunc = trunc.unwrap_or((l + 4 * n as i64 + 16).max(ctx.cfg.series_trunc));
    let aux = auxfn::build_auxiliary(n, trunc)?;
    let mut series_text = Vec::new();
    aux.series.write_to(&mut series_text)?;
    let coeffs: Vec<String> = aux.poly.coeffs().iter().map(|c| c.to_string()).collect();
    ctx.emit(
        "build-aux",
        json!({
            "N": n,
            "L": aux.l_bound,
            "M": aux.m,
            "d0": aux.d0.to_string(),
            "length_A": aux.poly.length().to_string(),
            "a_grid_row_major": coeffs,
            "f_series": String::from_utf8(series_text).expect("ascii"),
        }),
    )?;
    Ok(EXIT_PASS)
}

pub fn scan_primes(
    ctx: &Ctx,
    q: &str,
    n: u32,
    trunc: Option<i64>,
    pmax: u64,
    residue: Option<&str>,
) -> Result<i32> {
    let prec = ctx.cfg.precision_bits;
    let qr = parse_rational(q)?;
    let l = (n as i64 * n as i64) / 2;
    let trunc = trunc.unwrap_or((l + 4 * n as i64 + 16).max(ctx.cfg.series_trunc));
    let aux = auxfn::build_auxiliary(n, trunc)?;
    let qb = Ball::from_rational(&qr, prec);
    let residue = parse_residue(residue)?;
    match auxfn::first_good_prime(&qb, &aux, pmax, residue, prec) {
        Ok(scan) => {
            ctx.emit(
                "scan-primes",
                json!({
                    "q": qr.to_string(),
                    "N": n,
                    "P": scan.p,
                    "value_abs": to_value(&scan.value_abs)?,
                    "uncertain": to_value(&scan.uncertain)?,
                }),
            )?;
            Ok(EXIT_PASS)
        }
        Err(mahler_core::Error::PrimesExhausted { pmax, uncertain }) => {
            ctx.emit(
                "scan-primes",
                json!({
                    "q": qr.to_string(),
                    "N": n,
                    "P": null,
                    "exhausted_at": pmax,
                    "uncertain": uncertain,
                }),
            )?;
            Ok(EXIT_UNDETERMINED)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn height(ctx: &Ctx, minpoly: &str, root: usize) -> Result<i32> {
    let prec = ctx.cfg.precision_bits;
    let coeffs: Vec<Integer> = minpoly
        .split(',')
        .map(|t| Integer::from_str_radix(t.trim(), 10).map_err(|e| anyhow!("{}", e)))
        .collect::<Result<_>>()?;
    let poly = ZPoly::new(coeffs);
    let a = AlgebraicNumber::nth_root_of(&poly, root, prec)?;
    let m = heights::height_measures(&a, prec)?;
    let liouville = heights::liouville_check(&a, prec)?;
    let (m_lo, m_hi) = m.mahler.to_decimal_strings(17);
    let (h_lo, h_hi) = m.weil.to_decimal_strings(17);
    let (lm_lo, lm_hi) = m.log_mahler.to_decimal_strings(17);
    let pass = liouville.entry.status != Status::Fails;
    ctx.emit(
        "height",
        json!({
            "deg": a.degree(),
            "mahler": { "lo": m_lo, "hi": m_hi },
            "weil_h": { "lo": h_lo, "hi": h_hi },
            "log_mahler": { "lo": lm_lo, "hi": lm_hi },
            "exact_mahler": m.exact_mahler.map(|x| x.to_string()),
            "liouville": to_value(&liouville)?,
        }),
    )?;
    Ok(if pass { EXIT_PASS } else { EXIT_VIOLATION })
}

pub fn modpoly(ctx: &Ctx, p: u64, compute: bool, verify: bool, certify: bool, k: i64) -> Result<i32> {
    if !(compute || verify || certify) {
        return Err(anyhow!("pick at least one of --compute, --verify, --certify"));
    }
    let psi_p = (p + 1) as i64;
    let phi = modpoly::compute_phi_p(p, (psi_p * (psi_p + 1)).max(16))?;
    let mut result = json!({ "p": p, "degree": psi_p });
    let mut code = EXIT_PASS;
    if compute {
        let mut body = Vec::new();
        phi.write_to(&mut body)?;
        result["coefficients"] = json!(String::from_utf8(body).expect("ascii"));
        if p == 2 {
            let matches = phi.poly() == modpoly::phi2_reference().poly();
            result["matches_reference_table"] = json!(matches);
            if !matches {
                code = EXIT_VIOLATION;
            }
        }
    }
    if verify {
        let rep = modpoly::verify_phi_identity(&phi, k)?;
        if !rep.pass {
            code = EXIT_VIOLATION;
        }
        result["identity"] = to_value(&rep)?;
    }
    if certify {
        let rep = modpoly::certify_phi_height(&phi, ctx.cfg.precision_bits)?;
        for entry in [
            &rep.explicit_prime_bound,
            &rep.length_bound,
            &rep.two_sided_lower,
            &rep.two_sided_upper,
            &rep.l_ge_h,
        ] {
            match entry.status {
                Status::Fails => code = EXIT_VIOLATION,
                Status::Undetermined => code = code.max(EXIT_UNDETERMINED),
                Status::Holds => {}
            }
        }
        result["heights"] = to_value(&rep)?;
    }
    ctx.emit("modpoly", result)?;
    Ok(code)
}

pub fn primes_certify(ctx: &Ctx, limit: u64, progression: Option<&str>) -> Result<i32> {
    let limit_eff = limit.min(ctx.cfg.sieve_limit.max(limit));
    let table = PrimeTable::new(limit_eff.max(ctx.cfg.sieve_limit.min(limit_eff)));
    let progression = parse_residue(progression)?;
    let rep = mahler_core::primes::certify_prime_bounds(&table, limit_eff, progression)?;
    let violated = rep.x_ge_11_claim_violated;
    ctx.emit("primes-certify", to_value(&rep)?)?;
    // a certified violation of the claimed threshold is a finding: exit 1
    Ok(if violated { EXIT_VIOLATION } else { EXIT_PASS })
}

#[allow(clippy::too_many_arguments)]
pub fn chain_run(
    ctx: &Ctx,
    q: &str,
    n: u32,
    deg_q: u64,
    h_q: &str,
    deg_j: u64,
    h_j: &str,
    trunc: Option<i64>,
    pmax: u64,
) -> Result<i32> {
    let prec = ctx.cfg.precision_bits.max(160);
    let qr = parse_rational(q)?;
    if qr <= 0 || qr >= 1 {
        return Err(anyhow!("need 0 < q < 1"));
    }
    let pins = ctx.constants.pins(prec)?;
    let l = (n as i64 * n as i64) / 2;
    let trunc = trunc.unwrap_or((l + 4 * n as i64 + 16).max(ctx.cfg.series_trunc));
    let h_q = Interval::from_decimal_str(h_q, prec).map_err(|e| anyhow!("h-q: {}", e))?;
    let h_j = Interval::from_decimal_str(h_j, prec).map_err(|e| anyhow!("h-j: {}", e))?;
    let inst = chain::build_instance(
        Some(Ball::from_rational(&qr, prec)),
        Interval::from_rational(&qr, prec).abs(),
        n,
        trunc,
        deg_q,
        h_q,
        deg_j,
        h_j,
        chain::PrimePolicy::ScanAnalytic { pmax },
        prec,
    )?;
    let mut ledger = chain::ConstantLedger::default();
    let phi = if [2u64, 3, 5, 7].contains(&inst.p_prime) {
        Some(modpoly::compute_phi_p(
            inst.p_prime,
            ((inst.p_prime as i64 + 1) * (inst.p_prime as i64 + 2)).max(16),
        )?)
    } else {
        None
    };
    let mut report = chain::lower_bound_ledger(&inst, &pins, phi.as_ref(), &mut ledger, prec)?;
    let primes = PrimeTable::new(ctx.cfg.sieve_limit);
    let rep2 = chain::contradiction_chain(&inst, &pins, &mut ledger, &primes, prec)?;
    report.extend(rep2);
    let mut code = EXIT_PASS;
    if !report.all_determinate() {
        code = EXIT_UNDETERMINED;
    }
    let contradiction = report
        .get("final-contradiction")
        .map(|e| e.status == Status::Fails)
        .unwrap_or(false);
    let ledger_json: serde_json::Value = serde_json::to_value(
        ledger
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::to_value(v).unwrap()))
            .collect::<serde_json::Map<String, serde_json::Value>>(),
    )?;
    ctx.emit(
        "chain-run",
        json!({
            "q": qr.to_string(),
            "N": n,
            "L": inst.l_bound(),
            "M": inst.m(),
            "P": inst.p_prime,
            "entries": to_value(&report)?,
            "constants": ledger_json,
            "contradiction_forced": contradiction,
        }),
    )?;
    Ok(code)
}

pub fn chain_cutoff(ctx: &Ctx, deg_q: u64, n: u64, floor: u64) -> Result<i32> {
    let rep = chain::algebraic_cutoff(deg_q, n, floor)?;
    ctx.emit(
        "chain-cutoff",
        json!({ "deg_q": deg_q, "N": n, "prime_floor": floor,
                "P": rep.p, "growth_ratio": rep.growth_ratio }),
    )?;
    Ok(EXIT_PASS)
}

pub fn chain_threshold(ctx: &Ctx, c18: &str) -> Result<i32> {
    let prec = ctx.cfg.precision_bits;
    let c18 = Interval::from_decimal_str(c18, prec).map_err(|e| anyhow!("c18: {}", e))?;
    let t = chain::contradiction_threshold(&c18, prec)?;
    ctx.emit("chain-threshold", json!({ "threshold": t }))?;
    Ok(EXIT_PASS)
}
