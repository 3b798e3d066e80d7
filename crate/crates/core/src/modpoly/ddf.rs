//! Distinct-degree factorization patterns over small prime fields, used to
//! lower-bound the degrees of rational irreducible factors.

/// Polynomial arithmetic mod a small prime, dense u64 coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub l: u64,
    pub c: Vec<u64>,
}

fn mulmod(a: u64, b: u64, l: u64) -> u64 {
    ((a as u128 * b as u128) % l as u128) as u64
}

impl FpPoly {
    pub fn new(l: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= l;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { l, c }
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn x() -> fn(u64) -> FpPoly {
        |l| FpPoly::new(l, vec![0, 1])
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::new(self.l, vec![]);
        }
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, self.l)) % self.l;
            }
        }
        FpPoly::new(self.l, out)
    }

    pub fn rem(&self, m: &FpPoly) -> FpPoly {
        let dm = m.degree().expect("nonzero modulus");
        let inv_lead = modinv(*m.c.last().unwrap(), self.l);
        let mut r = self.c.clone();
        while r.len() > dm {
            let k = r.len() - 1;
            let f = mulmod(r[k], inv_lead, self.l);
            if f != 0 {
                for (j, &b) in m.c.iter().enumerate() {
                    let idx = k - dm + j;
                    r[idx] = (r[idx] + self.l - mulmod(f, b, self.l)) % self.l;
                }
            }
            while r.last() == Some(&0) {
                r.pop();
            }
            if r.len() <= dm {
                break;
            }
        }
        FpPoly::new(self.l, r)
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        // monic normalization
        if let Some(&lead) = a.c.last() {
            let inv = modinv(lead, a.l);
            let l = a.l;
            for x in a.c.iter_mut() {
                *x = mulmod(*x, inv, l);
            }
        }
        a
    }

    pub fn powmod(&self, mut e: u64, m: &FpPoly) -> FpPoly {
        let mut base = self.rem(m);
        let mut acc = FpPoly::new(self.l, vec![1]);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> FpPoly {
        if self.c.len() <= 1 {
            return FpPoly::new(self.l, vec![]);
        }
        let out = self.c[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| mulmod(c, (i as u64 + 1) % self.l, self.l))
            .collect();
        FpPoly::new(self.l, out)
    }
}

fn modinv(a: u64, l: u64) -> u64 {
    // Fermat: l prime
    let mut e = l - 2;
    let mut base = a % l;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, l);
        }
        base = mulmod(base, base, l);
        e >>= 1;
    }
    acc
}

/// Multiset of (degree, multiplicity-in-degree-count) from distinct-degree
/// factorization of a squarefree polynomial mod l: returns for each d the
/// number of irreducible factors of degree d. `None` when the reduction is
/// not squarefree (caller should pick another prime).
pub fn ddf_degrees(f: &FpPoly) -> Option<Vec<(usize, usize)>> {
    let d = f.degree()?;
    if d == 0 {
        return Some(vec![]);
    }
    // squarefree check mod l
    let g = f.gcd(&f.derivative());
    if g.degree() != Some(0) {
        return None;
    }
    let l = f.l;
    let mut out = Vec::new();
    let mut rest = f.clone();
    // make monic
    if let Some(&lead) = rest.c.last() {
        let inv = modinv(lead, l);
        for x in rest.c.iter_mut() {
            *x = mulmod(*x, inv, l);
        }
    }
    let mut h = FpPoly::new(l, vec![0, 1]); // x
    let mut k = 0usize;
    while rest.degree().unwrap_or(0) > 0 {
        k += 1;
        if 2 * k > rest.degree().unwrap_or(0) {
            // the remainder is a single irreducible factor
            out.push((rest.degree().unwrap(), 1));
            break;
        }
        h = h.powmod(l, &rest);
        // gcd(h - x, rest) is the product of all degree-k factors
        let mut hx = h.clone();
        // h - x
        if hx.c.len() < 2 {
            hx.c.resize(2, 0);
        }
        hx.c[1] = (hx.c[1] + l - 1) % l;
        let hx = FpPoly::new(l, hx.c);
        let g = hx.gcd(&rest);
        if let Some(dg) = g.degree() {
            if dg > 0 {
                out.push((k, dg / k));
                // divide rest by g: rest = rest / g via repeated rem-free
                rest = divide_exact(&rest, &g);
                h = h.rem(&rest);
            }
        }
    }
    Some(out)
}

fn divide_exact(a: &FpPoly, b: &FpPoly) -> FpPoly {
    let l = a.l;
    let db = b.degree().expect("nonzero divisor");
    let inv_lead = modinv(*b.c.last().unwrap(), l);
    let mut r = a.c.clone();
    let mut q = vec![0u64; a.c.len() - db];
    for k in (0..q.len()).rev() {
        let f = mulmod(r[k + db], inv_lead, l);
        q[k] = f;
        if f != 0 {
            for (j, &bc) in b.c.iter().enumerate() {
                r[k + j] = (r[k + j] + l - mulmod(f, bc, l)) % l;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    FpPoly::new(l, q)
}

/// All degrees expressible as subset sums of the DDF degree multiset.
pub fn subset_sums(degrees: &[(usize, usize)]) -> Vec<usize> {
    let total: usize = degrees.iter().map(|&(d, m)| d * m).sum();
    let mut possible = vec![false; total + 1];
    possible[0] = true;
    for &(d, m) in degrees {
        for _ in 0..m {
            for s in (0..=total.saturating_sub(d)).rev() {
                if possible[s] {
                    possible[s + d] = true;
                }
            }
        }
    }
    (1..=total).filter(|&s| possible[s]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ddf_of_known_factorization() {
        // (x^2 + 1)(x - 3) mod 7: x^2+1 irreducible mod 7 (since -1 is not
        // a QR mod 7), so degrees {1: 1, 2: 1}
        let f = FpPoly::new(7, vec![1, 0, 1]).mul(&FpPoly::new(7, vec![4, 1]));
        let d = ddf_degrees(&f).unwrap();
        assert_eq!(d, vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn ddf_splitting_case() {
        // x^2 - 1 = (x-1)(x+1) mod 5
        let f = FpPoly::new(5, vec![4, 0, 1]);
        let d = ddf_degrees(&f).unwrap();
        assert_eq!(d, vec![(1, 2)]);
    }

    #[test]
    fn non_squarefree_rejected() {
        let f = FpPoly::new(5, vec![1, 2, 1]); // (x+1)^2
        assert!(ddf_degrees(&f).is_none());
    }

    #[test]
    fn subset_sum_patterns() {
        let sums = subset_sums(&[(1, 1), (2, 1)]);
        assert_eq!(sums, vec![1, 2, 3]);
        let sums = subset_sums(&[(2, 2)]);
        assert_eq!(sums, vec![2, 4]);
    }
}
