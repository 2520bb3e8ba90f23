//! Irreducibility over Q by complex root clustering, confirmed exactly.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{Rational, UniPoly};

const MIN_PRECISION: u64 = 200;
const MAX_PRECISION: u64 = 1 << 14;

/// Fixed-point complex number, value `(re + i im) / 2^prec`.
#[derive(Clone, Debug)]
struct Fx {
    re: BigInt,
    im: BigInt,
}

impl Fx {
    fn zero() -> Self {
        Fx {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn add(&self, o: &Fx) -> Fx {
        Fx {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn sub(&self, o: &Fx) -> Fx {
        Fx {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn mul(&self, o: &Fx, prec: u64) -> Fx {
        let re = (&self.re * &o.re - &self.im * &o.im) >> prec;
        let im = (&self.re * &o.im + &self.im * &o.re) >> prec;
        Fx { re, im }
    }

    fn div(&self, o: &Fx, prec: u64) -> Option<Fx> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let re = ((&self.re * &o.re + &self.im * &o.im) << prec) / &den;
        let im = ((&self.im * &o.re - &self.re * &o.im) << prec) / &den;
        Some(Fx { re, im })
    }

    fn size(&self) -> BigInt {
        self.re.abs().max(self.im.abs())
    }
}

/// Primitive integer polynomial proportional to `p`, constant first.
fn primitive_integer(p: &UniPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    primitive(ints)
}

fn primitive(mut ints: Vec<BigInt>) -> Vec<BigInt> {
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() {
        ints.iter_mut().for_each(|c| *c /= &g);
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        ints.iter_mut().for_each(|c| *c = -&*c);
    }
    ints
}

fn to_poly(ints: &[BigInt]) -> UniPoly {
    UniPoly::new(
        ints.iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect(),
    )
}

fn horner(f: &[BigInt], z: &Fx, prec: u64) -> Fx {
    let mut acc = Fx::zero();
    for c in f.iter().rev() {
        acc = acc.mul(z, prec);
        acc.re += c << prec;
    }
    acc
}

/// Durand-Kerner iteration; `None` when it does not settle.
fn roots(f: &[BigInt], prec: u64) -> Option<Vec<Fx>> {
    let n = f.len() - 1;
    let lc = &f[n];
    let one = BigInt::one() << prec;
    let cauchy = f[..n].iter().map(|c| c.abs()).max().unwrap_or_default() / lc.abs() + 2u32;
    // start on the spiral R * (0.4 + 0.9i)^k
    let w = Fx {
        re: &one * 2 / 5,
        im: &one * 9 / 10,
    };
    let mut z = Vec::with_capacity(n);
    let mut cur = Fx {
        re: &cauchy << prec,
        im: BigInt::zero(),
    };
    for _ in 0..n {
        z.push(cur.clone());
        cur = cur.mul(&w, prec);
    }
    let lc_fx = Fx {
        re: lc << prec,
        im: BigInt::zero(),
    };
    let settle = BigInt::one() << (prec / 2);
    let mut polish = None;
    for _ in 0..(400 + 40 * n) {
        let mut worst = BigInt::zero();
        for k in 0..n {
            let mut den = lc_fx.clone();
            for j in 0..n {
                if j != k {
                    den = den.mul(&z[k].sub(&z[j]), prec);
                }
            }
            let num = horner(f, &z[k], prec);
            let step = match num.div(&den, prec) {
                Some(s) => s,
                None => Fx {
                    re: BigInt::one() << (prec / 4),
                    im: BigInt::one() << (prec / 4),
                },
            };
            worst = worst.max(step.size());
            z[k] = z[k].sub(&step);
        }
        match polish {
            Some(0) => return Some(z),
            Some(left) => polish = Some(left - 1),
            None if worst < settle => polish = Some(3),
            None => {}
        }
    }
    None
}

fn round_fixed(m: &BigInt, prec: u64) -> (BigInt, BigInt) {
    let half = BigInt::one() << (prec - 1);
    let n = (m + &half) >> prec;
    let err = (m - (&n << prec)).abs();
    (n, err)
}

/// Integer factor `lc * prod (X - r)` over the chosen roots, if it rounds
/// cleanly.
fn candidate(lc: &BigInt, rs: &[&Fx], prec: u64) -> Option<Vec<BigInt>> {
    let mut coeffs = vec![Fx {
        re: lc << prec,
        im: BigInt::zero(),
    }];
    for r in rs {
        let mut next = vec![Fx::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(r, prec));
        }
        coeffs = next;
    }
    let tol = BigInt::one() << (prec - 2);
    let mut ints = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        let (n, err) = round_fixed(&c.re, prec);
        if err >= tol || c.im.abs() >= tol {
            return None;
        }
        ints.push(n);
    }
    Some(primitive(ints))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn bits(v: &BigInt) -> u64 {
    v.bits().max(1)
}

/// True iff `p` factors nontrivially over Q. Constants and linear
/// polynomials are not reducible.
pub fn reducibility_oracle(p: &UniPoly) -> bool {
    let Some(n) = p.degree() else { return false };
    if n <= 1 {
        return false;
    }
    let f = primitive_integer(p);
    let fp = to_poly(&f);
    if fp.gcd(&fp.derivative()).degree().unwrap_or(0) > 0 {
        return true;
    }
    let lc = &f[n];
    let max_coeff = f.iter().map(|c| c.abs()).max().unwrap_or_default();
    let radius_bits = bits(&(&max_coeff / lc.abs() + 2u32));
    let mut prec = MIN_PRECISION.max(2 * (bits(lc) + n as u64 * radius_bits + 64));
    let zs = loop {
        match roots(&f, prec) {
            Some(zs) => break zs,
            None if prec < MAX_PRECISION => prec *= 2,
            None => return false,
        }
    };
    for k in 1..=n / 2 {
        for s in subsets(n, k) {
            let rs: Vec<&Fx> = s.iter().map(|&i| &zs[i]).collect();
            if let Some(g) = candidate(lc, &rs, prec) {
                let g = to_poly(&g);
                if g.degree() == Some(k) && fp.div_exact(&g).is_some() {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::quintic::brumer_poly;

    #[test]
    fn explicit_factors() {
        // (X - 1)(X^4 + 1)
        assert!(reducibility_oracle(&UniPoly::from_ints(&[
            -1, 1, 0, 0, -1, 1
        ])));
        // (X^2 + X + 1)(X^3 - 2)
        let q = &UniPoly::from_ints(&[1, 1, 1]) * &UniPoly::from_ints(&[-2, 0, 0, 1]);
        assert!(reducibility_oracle(&q));
        assert!(reducibility_oracle(&UniPoly::from_ints(&[0, 0, 1])));
        assert!(!reducibility_oracle(&UniPoly::from_ints(&[-2, 0, 1])));
        assert!(!reducibility_oracle(&UniPoly::from_ints(&[1, 1, 0, 1])));
        assert!(!reducibility_oracle(&UniPoly::from_ints(&[3, 1])));
    }

    #[test]
    fn rational_coefficients() {
        // (X - 1/3)(X^2 + 1/2)
        let p = &UniPoly::new(vec![rat(-1, 3), int(1)])
            * &UniPoly::new(vec![rat(1, 2), int(0), int(1)]);
        assert!(reducibility_oracle(&p));
    }

    #[test]
    fn brumer_irreducible() {
        assert!(!reducibility_oracle(&brumer_poly(&int(1), &int(0))));
        assert!(!reducibility_oracle(&brumer_poly(&int(2), &int(2))));
    }

    #[test]
    fn repeated_roots() {
        let p = UniPoly::from_ints(&[1, 0, 1]).pow(2);
        assert!(reducibility_oracle(&p));
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(4, 1), vec![vec![0], vec![1], vec![2], vec![3]]);
    }
}
