//! Univariate factorisation over the integers.
//!
//! Dense coefficient vectors, lowest degree first. The pipeline is the
//! classical one: split off repeated factors with `gcd(f, f')`, factor modulo
//! a small prime (distinct-degree then equal-degree splitting), Hensel-lift
//! to a modulus beyond the coefficient bound, and recombine lifted factors by
//! trial division.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub(crate) type UPoly = Vec<BigInt>;

/// Raised when a bound in [`FactorLimits`] is exceeded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct TooLarge(pub String);

#[derive(Debug, Clone, Copy)]
pub(crate) struct FactorLimits {
    pub max_degree: usize,
    pub max_lifted_factors: usize,
}

pub(crate) fn trim(f: &mut UPoly) {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
}

pub(crate) fn degree(f: &[BigInt]) -> isize {
    f.len() as isize - 1
}

fn mul(a: &[BigInt], b: &[BigInt]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn sub(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let n = a.len().max(b.len());
    let mut out: UPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(&mut out);
    out
}

fn derivative(f: &[BigInt]) -> UPoly {
    let mut out: UPoly = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    trim(&mut out);
    out
}

fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive(f: &[BigInt]) -> UPoly {
    let c = content(f);
    if c.is_zero() {
        return Vec::new();
    }
    let sign = if f.last().is_some_and(|x| x.is_negative()) { -c } else { c };
    f.iter().map(|x| x / &sign).collect()
}

/// Exact division over Z; `None` when `b` does not divide `a`.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<UPoly> {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let lb = b.last().expect("nonzero");
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let (k, rem) = r.last().expect("nonzero").div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &k * c;
        }
        q[shift] = k;
        trim(&mut r);
    }
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero").clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let lr = r.last().expect("nonzero").clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &lr * c;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd over Z with positive leading coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let mut a = primitive(a);
    let mut b = primitive(b);
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    a
}

/// Irreducible factors over Z of a primitive polynomial of positive degree,
/// with multiplicity. Every returned factor is primitive with positive
/// leading coefficient.
pub(crate) fn factor(f: &[BigInt], limits: FactorLimits) -> Result<Vec<UPoly>, TooLarge> {
    let f = primitive(f);
    if degree(&f) < 1 {
        return Ok(Vec::new());
    }
    if f.len() - 1 > limits.max_degree {
        return Err(TooLarge(format!("univariate degree {} exceeds {}", f.len() - 1, limits.max_degree)));
    }
    if f[0].is_zero() {
        let x = vec![BigInt::zero(), BigInt::one()];
        let rest = div_exact(&f, &x).expect("x divides");
        let mut out = vec![x];
        out.extend(factor(&rest, limits)?);
        return Ok(out);
    }
    let g = gcd(&f, &derivative(&f));
    if degree(&g) >= 1 {
        let h = div_exact(&f, &g).expect("gcd divides");
        let mut out = factor(&g, limits)?;
        out.extend(factor(&h, limits)?);
        return Ok(out);
    }
    zassenhaus(&f, limits)
}

/// True iff the primitive polynomial `f` of positive degree is irreducible over Q.
pub(crate) fn is_irreducible_over_q(f: &[BigInt], limits: FactorLimits) -> Result<bool, TooLarge> {
    let f = primitive(f);
    if degree(&f) <= 1 {
        return Ok(degree(&f) == 1);
    }
    Ok(factor(&f, limits)?.len() == 1)
}

const SMALL_PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

fn zassenhaus(f: &[BigInt], limits: FactorLimits) -> Result<Vec<UPoly>, TooLarge> {
    if degree(f) == 1 {
        return Ok(vec![f.to_vec()]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut tried = 0;
    for &p in SMALL_PRIMES.iter() {
        let lc = f.last().expect("nonzero").mod_floor(&BigInt::from(p));
        if lc.is_zero() {
            continue;
        }
        let fp = reduce(f, p);
        if fp.degree() != degree(f) || fp.gcd(&fp.derivative()).degree() > 0 {
            continue;
        }
        let facs = factor_mod_p(&fp.monic(), &mut rng);
        if facs.len() == 1 {
            return Ok(vec![f.to_vec()]);
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried == 5 {
            break;
        }
    }
    let (p, facs) = best.ok_or_else(|| TooLarge("no suitable prime".into()))?;
    if facs.len() > limits.max_lifted_factors {
        return Err(TooLarge(format!(
            "{} modular factors exceed the recombination limit {}",
            facs.len(),
            limits.max_lifted_factors
        )));
    }
    let bound = coefficient_bound(f);
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &facs, p, k);
    Ok(recombine(f, lifted, &modulus))
}

/// Twice a bound on the coefficients of any factor times the leading
/// coefficient.
fn coefficient_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + BigInt::one();
    let lc = f.last().expect("nonzero").abs();
    BigInt::from(2) * (BigInt::one() << n) * norm * lc
}

fn symmetric_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce_sym(f: &[BigInt], m: &BigInt) -> UPoly {
    let mut out: UPoly = f.iter().map(|c| symmetric_mod(c, m)).collect();
    trim(&mut out);
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

fn recombine(f: &[BigInt], lifted: Vec<UPoly>, modulus: &BigInt) -> Vec<UPoly> {
    let mut remaining: Vec<UPoly> = lifted;
    let mut g = f.to_vec();
    let mut found = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        let lc = g.last().expect("nonzero").clone();
        let r = remaining.len();
        let mut subset: Vec<usize> = (0..s).collect();
        loop {
            let mut cand = vec![lc.clone()];
            for &i in &subset {
                cand = reduce_sym(&mul(&cand, &remaining[i]), modulus);
            }
            let cand = primitive(&cand);
            if let Some(q) = div_exact(&g, &cand) {
                found.push(cand);
                g = q;
                let mut next = Vec::new();
                for (i, h) in remaining.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        next.push(h);
                    }
                }
                remaining = next;
                continue 'outer;
            }
            if !next_subset(&mut subset, r) {
                break;
            }
        }
        s += 1;
    }
    found.push(primitive(&g));
    found
}

fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Lifts `f ≡ lc(f) · ∏ facs (mod p)` to monic factors modulo `p^k`.
fn hensel_lift(f: &[BigInt], facs: &[ModPoly], p: u64, k: u32) -> Vec<UPoly> {
    let modulus = BigInt::from(p).pow(k);
    if facs.len() == 1 {
        let inv = mod_inverse(f.last().expect("nonzero"), &modulus);
        let monic: UPoly = f.iter().map(|c| (c * &inv).mod_floor(&modulus)).collect();
        return vec![monic];
    }
    let (left, right) = facs.split_at(facs.len() / 2);
    let lc_mod = f.last().expect("nonzero").mod_floor(&BigInt::from(p)).to_u64().expect("small");
    let mut g0 = ModPoly::constant(lc_mod, p);
    for h in left {
        g0 = g0.mul(h);
    }
    let mut h0 = ModPoly::constant(1, p);
    for h in right {
        h0 = h0.mul(h);
    }
    let (g, h) = lift_pair(f, &g0, &h0, p, k);
    let mut out = hensel_lift(&g, left, p, k);
    out.extend(hensel_lift(&h, right, p, k));
    out
}

/// Linear lifting of `f ≡ g·h (mod p)` where `lc(g) ≡ lc(f)` and `h` is monic.
fn lift_pair(f: &[BigInt], g0: &ModPoly, h0: &ModPoly, p: u64, k: u32) -> (UPoly, UPoly) {
    let (s, t) = g0.xgcd_unit(h0);
    let pb = BigInt::from(p);
    let mut g = g0.to_big();
    let lc = f.last().expect("nonzero").clone();
    *g.last_mut().expect("nonzero") = lc;
    let mut h = h0.to_big();
    let mut pj = pb.clone();
    for _ in 1..k {
        let err = sub(f, &mul(&g, &h));
        let e: UPoly = err.iter().map(|c| c / &pj).collect();
        let e = ModPoly::from_big(&e, p);
        let (quo, rem) = s.mul(&e).divrem(h0);
        let dh = rem;
        let dg = t.mul(&e).add(&quo.mul(g0));
        g = add_scaled(&g, &dg.to_big(), &pj);
        h = add_scaled(&h, &dh.to_big(), &pj);
        pj *= &pb;
    }
    (g, h)
}

fn add_scaled(a: &[BigInt], b: &[BigInt], m: &BigInt) -> UPoly {
    let n = a.len().max(b.len());
    let mut out: UPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + m * b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(&mut out);
    out
}

fn reduce(f: &[BigInt], p: u64) -> ModPoly {
    ModPoly::from_big(f, p)
}

/// Polynomial over F_p, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ModPoly {
    c: Vec<u64>,
    p: u64,
}

impl ModPoly {
    fn new(mut c: Vec<u64>, p: u64) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { c, p }
    }

    fn constant(a: u64, p: u64) -> Self {
        Self::new(vec![a % p], p)
    }

    fn from_big(f: &[BigInt], p: u64) -> Self {
        let pb = BigInt::from(p);
        Self::new(f.iter().map(|x| x.mod_floor(&pb).to_u64().expect("small")).collect(), p)
    }

    fn to_big(&self) -> UPoly {
        self.c.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0)) % self.p)
            .collect();
        Self::new(c, self.p)
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| (self.c.get(i).unwrap_or(&0) + self.p - o.c.get(i).unwrap_or(&0)) % self.p)
            .collect();
        Self::new(c, self.p)
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(Vec::new(), self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + x * y) % self.p;
            }
        }
        Self::new(c, self.p)
    }

    fn scale(&self, a: u64) -> Self {
        Self::new(self.c.iter().map(|&x| x * a % self.p).collect(), self.p)
    }

    fn monic(&self) -> Self {
        let lc = *self.c.last().expect("nonzero");
        self.scale(self.inv(lc))
    }

    fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero");
        let p = self.p;
        let mut r = self.c.clone();
        let dl = d.c.len();
        if r.len() < dl {
            return (Self::new(Vec::new(), p), self.clone());
        }
        let inv = self.inv(*d.c.last().expect("nonzero"));
        let mut q = vec![0u64; r.len() - dl + 1];
        for shift in (0..q.len()).rev() {
            let k = r[shift + dl - 1] * inv % p;
            q[shift] = k;
            if k == 0 {
                continue;
            }
            for (j, &y) in d.c.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - k * y % p) % p;
            }
        }
        (Self::new(q, p), Self::new(r, p))
    }

    fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    fn derivative(&self) -> Self {
        let c = self.c.iter().enumerate().skip(1).map(|(i, &x)| (i as u64 % self.p) * x % self.p);
        Self::new(c.collect(), self.p)
    }

    fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// `(s, t)` with `s·self + t·o = 1`; the inputs must be coprime.
    fn xgcd_unit(&self, o: &Self) -> (Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::constant(1, p), Self::new(Vec::new(), p));
        let (mut t0, mut t1) = (Self::new(Vec::new(), p), Self::constant(1, p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        assert_eq!(r0.degree(), 0, "factors not coprime");
        let inv = self.inv(r0.c[0]);
        (s0.scale(inv), t0.scale(inv))
    }

    fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = Self::constant(1, self.p);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// Monic irreducible factors of a monic squarefree polynomial over F_p.
fn factor_mod_p(f: &ModPoly, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let p = f.p;
    let x = ModPoly::new(vec![0, 1], p);
    let pb = BigUint::from(p);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0usize;
    while rest.degree() >= 2 * (d as isize + 1) {
        d += 1;
        h = h.pow_mod(&pb, &rest);
        let g = h.sub(&x).gcd(&rest);
        if g.degree() > 0 {
            equal_degree(&g, d, rng, &mut out);
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
        }
    }
    if rest.degree() > 0 {
        out.push(rest.monic());
    }
    out
}

fn equal_degree(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<ModPoly>) {
    if f.degree() as usize == d {
        out.push(f.monic());
        return;
    }
    let p = f.p;
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let n = f.degree() as usize;
        let a = ModPoly::new((0..n).map(|_| rng.gen_range(0..p)).collect(), p);
        if a.degree() < 1 {
            continue;
        }
        let b = a.pow_mod(&e, f).sub(&ModPoly::constant(1, p));
        let g = b.gcd(f);
        if g.degree() > 0 && g.degree() < f.degree() {
            let other = f.divrem(&g).0;
            equal_degree(&g, d, rng, out);
            equal_degree(&other, d, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UPoly {
        let mut v: UPoly = c.iter().map(|&x| BigInt::from(x)).collect();
        trim(&mut v);
        v
    }

    const LIMITS: FactorLimits = FactorLimits { max_degree: 400, max_lifted_factors: 16 };

    fn product(fs: &[UPoly]) -> UPoly {
        fs.iter().fold(up(&[1]), |acc, f| mul(&acc, f))
    }

    #[test]
    fn factors_small_products() {
        // (x^2 + 1)(x - 2)(3x + 1)(x^2 + x + 1)^2
        let parts = [up(&[1, 0, 1]), up(&[-2, 1]), up(&[1, 3]), up(&[1, 1, 1]), up(&[1, 1, 1])];
        let f = product(&parts);
        let mut got = factor(&f, LIMITS).unwrap();
        got.sort();
        let mut want: Vec<UPoly> = parts.iter().map(|p| primitive(p)).collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn swinnerton_dyer_like_polynomial_is_irreducible() {
        // x^4 - 10x^2 + 1 splits modulo every prime into degree <= 2 pieces
        assert!(is_irreducible_over_q(&up(&[1, 0, -10, 0, 1]), LIMITS).unwrap());
        assert!(is_irreducible_over_q(&up(&[-2, 0, 0, 0, 0, 1]), LIMITS).unwrap());
        assert!(!is_irreducible_over_q(&up(&[-4, 0, 0, 0, 1]), LIMITS).unwrap());
    }

    #[test]
    fn large_coefficients_are_lifted() {
        let a = up(&[1234567, -89, 1, 5]);
        let b = up(&[-7654321, 3, 0, 0, 11]);
        let mut got = factor(&mul(&a, &b), LIMITS).unwrap();
        got.sort();
        let mut want = vec![a, b];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn cyclotomic_product() {
        // x^12 - 1 has six cyclotomic factors
        let f = up(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let got = factor(&f, LIMITS).unwrap();
        assert_eq!(got.len(), 6);
        assert_eq!(product(&got), f);
    }

    #[test]
    fn degree_limit_reported() {
        let mut f = vec![BigInt::one(); 20];
        f[0] = BigInt::from(3);
        let small = FactorLimits { max_degree: 10, max_lifted_factors: 4 };
        assert!(factor(&f, small).is_err());
    }
}
