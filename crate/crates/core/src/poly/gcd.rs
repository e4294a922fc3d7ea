use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{grlex, PolyError, Polynomial};

/// Exact quotient `p / q` in the Laurent polynomial ring.
pub fn divide_exact(p: &Polynomial, q: &Polynomial) -> Result<Polynomial, PolyError> {
    p.check(q)?;
    if q.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    if p.is_zero() {
        return Ok(p.clone());
    }
    if let [(e, c)] = q.terms() {
        let inv: Vec<i32> = e.iter().map(|x| -x).collect();
        return p.div_scalar(c).map(|r| r.mul_monomial(&inv));
    }
    let mp = p.min_exponents();
    let mq = q.min_exponents();
    let pp = p.mul_monomial(&neg(&mp));
    let qq = q.mul_monomial(&neg(&mq));
    let r = divide_ordinary(&pp, &qq)?;
    let shift: Vec<i32> = mp.iter().zip(&mq).map(|(a, b)| a - b).collect();
    Ok(r.mul_monomial(&shift))
}

fn neg(e: &[i32]) -> Vec<i32> {
    e.iter().map(|x| -x).collect()
}

/// Leading-term division of ordinary polynomials; fails on a nonzero remainder.
fn divide_ordinary(p: &Polynomial, q: &Polynomial) -> Result<Polynomial, PolyError> {
    let (lq, cq) = {
        let (e, c) = &q.terms()[0];
        (e.clone(), c.clone())
    };
    let mut rem = p.clone();
    let mut quotient = Vec::new();
    while let Some((e, c)) = rem.terms().first().cloned() {
        if grlex(&e, &lq) == std::cmp::Ordering::Less {
            return Err(PolyError::NotDivisible);
        }
        let shift: Vec<i32> = e.iter().zip(&lq).map(|(a, b)| a - b).collect();
        if shift.iter().any(|&x| x < 0) {
            return Err(PolyError::NotDivisible);
        }
        let (k, r) = c.div_rem(&cq);
        if !r.is_zero() {
            return Err(PolyError::NotDivisible);
        }
        rem = &rem - &q.mul_term(&shift, &k);
        quotient.push((shift, k));
    }
    Ok(Polynomial::from_terms(p.ctx(), quotient))
}

/// Greatest common divisor, normalised to a positive leading coefficient.
///
/// For Laurent inputs the monomial part is the componentwise minimum of the
/// two minimal exponent vectors.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Polynomial {
    assert!(
        !(p.is_zero() && q.is_zero()),
        "gcd of two zero polynomials"
    );
    if p.is_zero() {
        return q.canonical_unit();
    }
    if q.is_zero() {
        return p.canonical_unit();
    }
    let mp = p.min_exponents();
    let mq = q.min_exponents();
    let m: Vec<i32> = mp.iter().zip(&mq).map(|(a, b)| *a.min(b)).collect();
    let g = gcd_ordinary(&p.mul_monomial(&neg(&mp)), &q.mul_monomial(&neg(&mq)));
    g.mul_monomial(&m)
}

/// gcd of ordinary polynomials neither of which is divisible by a variable.
fn gcd_ordinary(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return q.canonical_unit();
    }
    if q.is_zero() {
        return p.canonical_unit();
    }
    if p.is_monomial() || q.is_monomial() || p.is_constant() || q.is_constant() {
        let c = p.content().gcd(&q.content());
        return Polynomial::constant(p.ctx(), c);
    }
    if p == q {
        return p.canonical_unit();
    }
    let v = match (0..p.ctx().len()).find(|&v| p.involves(v) || q.involves(v)) {
        Some(v) => v,
        None => return Polynomial::constant(p.ctx(), p.content().gcd(&q.content())),
    };
    if !p.involves(v) {
        return gcd(p, &content_in(q, v));
    }
    if !q.involves(v) {
        return gcd(&content_in(p, v), q);
    }
    let cp = content_in(p, v);
    let cq = content_in(q, v);
    let c = gcd(&cp, &cq);
    let mut a = divide_exact(p, &cp).expect("content divides");
    let mut b = divide_exact(q, &cq).expect("content divides");
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            b = Polynomial::one(p.ctx());
            break;
        }
        a = b;
        let cr = content_in(&r, v);
        b = divide_exact(&r, &cr).expect("content divides");
    }
    let cb = content_in(&b, v);
    let b = divide_exact(&b, &cb).expect("content divides");
    (&b * &c).canonical_unit()
}

/// gcd of the coefficients of `p` viewed as a polynomial in `x_v`.
pub fn content_in(p: &Polynomial, v: usize) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let (_, coeffs) = p.coefficients_in(v);
    let mut g = Polynomial::zero(p.ctx());
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = if g.is_zero() { c.canonical_unit() } else { gcd(&g, c) };
        if g.is_one() {
            break;
        }
    }
    g
}

/// Pseudo-remainder of `a` by `b` in `x_v`, up to a nonzero factor.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let n = b.degree_in(v);
    let (_, bc) = b.coefficients_in(v);
    let lb = bc.last().expect("nonzero").clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= n {
        let d = r.degree_in(v);
        let (lo, rc) = r.coefficients_in(v);
        debug_assert!(lo >= 0);
        let lr = rc.last().expect("nonzero").clone();
        let mut shift = vec![0; a.ctx().len()];
        shift[v] = d - n;
        r = match divide_exact(&lr, &lb) {
            Ok(k) => &r - &(&k * &b.mul_monomial(&shift)),
            Err(_) => &(&lb * &r) - &(&lr * &b.mul_monomial(&shift)),
        };
    }
    let content = r.content();
    if content > BigInt::one() {
        r = r.div_scalar(&content).expect("content divides");
    }
    if r.leading_coeff().is_some_and(|c| c.is_negative()) {
        r = -r;
    }
    r
}
