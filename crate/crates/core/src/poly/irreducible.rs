//! Irreducibility in `Z[x_1, ..., x_k]`.
//!
//! Cheap certificates decide every shape the surface pipeline produces. The
//! remaining inputs go through a specialisation test (an irreducible
//! univariate image of the same degree proves irreducibility) and finally a
//! Kronecker reduction to univariate factorisation, which finds a factor or
//! proves there is none.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::factor::{self, FactorLimits, UPoly};
use super::{content_in, divide_exact, gcd, grlex, PolyError, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IrreducibilityLimits {
    /// Largest univariate degree produced by Kronecker substitution.
    pub max_image_degree: usize,
    /// Largest number of modular factors that are recombined.
    pub max_lifted_factors: usize,
    /// Number of random integer specialisations tried.
    pub specializations: usize,
}

impl Default for IrreducibilityLimits {
    fn default() -> Self {
        IrreducibilityLimits { max_image_degree: 1200, max_lifted_factors: 18, specializations: 16 }
    }
}

/// Decides irreducibility up to the units ±1.
pub fn is_irreducible(p: &Polynomial) -> Result<bool, PolyError> {
    is_irreducible_with(p, IrreducibilityLimits::default())
}

pub fn is_irreducible_with(p: &Polynomial, limits: IrreducibilityLimits) -> Result<bool, PolyError> {
    if let Some(v) = (0..p.ctx().len()).find(|&v| p.min_degree_in(v) < 0) {
        return Err(PolyError::NegativeExponent(p.ctx().name(v).to_string()));
    }
    if p.is_zero() || p.is_unit() {
        return Err(PolyError::ZeroOrUnit);
    }
    if let Some(c) = p.constant_value() {
        return is_prime(&c.abs());
    }
    if !p.content().is_one() {
        return Ok(false);
    }
    if p.is_monomial() {
        return Ok(p.total_degree() == 1);
    }
    if p.min_exponents().iter().any(|&e| e > 0) {
        return Ok(false);
    }
    let vars = p.variables();
    if let Some(&v) = vars.iter().find(|&&v| p.degree_in(v) == 1) {
        let (_, c) = p.coefficients_in(v);
        return Ok(gcd(&c[0], &c[1]).is_one());
    }
    if let Some(&v) = vars.iter().find(|&&v| p.degree_in(v) == 2) {
        if !content_in(p, v).is_one() {
            return Ok(false);
        }
        let (_, c) = p.coefficients_in(v);
        let four_ac = (&c[0] * &c[2]).scale(&BigInt::from(4));
        let disc = &(&c[1] * &c[1]) - &four_ac;
        return Ok(sqrt(&disc).is_none());
    }
    for &v in &vars {
        if !content_in(p, v).is_one() {
            return Ok(false);
        }
    }
    let flimits = FactorLimits {
        max_degree: limits.max_image_degree,
        max_lifted_factors: limits.max_lifted_factors,
    };
    if specialization_certificate(p, &vars, limits.specializations, flimits) {
        return Ok(true);
    }
    match kronecker_factor(p, &vars, flimits) {
        Ok(found) => Ok(found.is_none()),
        Err(e) => Err(PolyError::Undecided(e.0)),
    }
}

fn is_prime(n: &BigInt) -> Result<bool, PolyError> {
    let n = n
        .to_u64()
        .ok_or_else(|| PolyError::Undecided("integer constant beyond 64 bits".into()))?;
    if n < 2 {
        return Ok(false);
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return Ok(n == p);
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Square root of an ordinary polynomial, if it is a perfect square.
pub(crate) fn sqrt(d: &Polynomial) -> Option<Polynomial> {
    if d.is_zero() {
        return Some(d.clone());
    }
    let (e0, c0) = &d.terms()[0];
    if c0.is_negative() {
        return None;
    }
    let root_c = c0.sqrt();
    if &(&root_c * &root_c) != c0 || e0.iter().any(|x| x % 2 != 0) {
        return None;
    }
    let half: Vec<i32> = e0.iter().map(|x| x / 2).collect();
    let lead = (half.clone(), root_c.clone());
    let mut s = Polynomial::monomial(d.ctx(), half, root_c);
    let mut last = lead.0.clone();
    let two_lead = BigInt::from(2) * &lead.1;
    loop {
        let r = d - &(&s * &s);
        let Some((er, cr)) = r.terms().first().cloned() else {
            return Some(s);
        };
        let shift: Vec<i32> = er.iter().zip(&lead.0).map(|(a, b)| a - b).collect();
        if shift.iter().any(|&x| x < 0) {
            return None;
        }
        let (k, rem) = cr.div_rem(&two_lead);
        if !rem.is_zero() || grlex(&shift, &last) != std::cmp::Ordering::Less {
            return None;
        }
        s = &s + &Polynomial::monomial(d.ctx(), shift.clone(), k);
        last = shift;
    }
}

fn specialization_certificate(
    p: &Polynomial,
    vars: &[usize],
    attempts: usize,
    limits: FactorLimits,
) -> bool {
    let &v = vars.iter().min_by_key(|&&v| p.degree_in(v)).expect("nonconstant");
    let deg = p.degree_in(v) as usize;
    if deg > limits.max_degree {
        return false;
    }
    let (_, coeffs) = p.coefficients_in(v);
    let lead = coeffs.last().expect("nonzero").clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1d2e3f);
    for attempt in 0..attempts {
        let range = 3 + 2 * attempt as i64;
        let point: Vec<(usize, BigInt)> = vars
            .iter()
            .filter(|&&u| u != v)
            .map(|&u| (u, BigInt::from(rng.gen_range(-range..=range))))
            .collect();
        if evaluate(&lead, &point).is_zero() {
            continue;
        }
        let image: UPoly = coeffs.iter().map(|c| evaluate(c, &point)).collect();
        if let Ok(true) = factor::is_irreducible_over_q(&image, limits) {
            return true;
        }
    }
    false
}

fn evaluate(p: &Polynomial, point: &[(usize, BigInt)]) -> BigInt {
    let mut total = BigInt::zero();
    for (e, c) in p.terms() {
        let mut t = c.clone();
        for (u, a) in point {
            if e[*u] > 0 {
                t *= num_traits::pow(a.clone(), e[*u] as usize);
            }
        }
        total += t;
    }
    total
}

/// A nontrivial factor of `p` (primitive, no variable factor) or `None` when
/// `p` is irreducible.
pub(crate) fn kronecker_factor(
    p: &Polynomial,
    vars: &[usize],
    limits: FactorLimits,
) -> Result<Option<Polynomial>, factor::TooLarge> {
    let radix: Vec<u64> = vars.iter().map(|&v| p.degree_in(v) as u64 + 1).collect();
    let mut weights = Vec::with_capacity(vars.len());
    let mut w = 1u64;
    for r in &radix {
        weights.push(w);
        w = w.saturating_mul(*r);
    }
    let image_degree: u64 = vars
        .iter()
        .zip(&weights)
        .map(|(&v, w)| p.degree_in(v) as u64 * w)
        .sum();
    if image_degree as usize > limits.max_degree {
        return Err(factor::TooLarge(format!(
            "Kronecker image degree {image_degree} exceeds {}",
            limits.max_degree
        )));
    }
    let mut image = vec![BigInt::zero(); image_degree as usize + 1];
    for (e, c) in p.terms() {
        let k: u64 = vars.iter().zip(&weights).map(|(&v, w)| e[v] as u64 * w).sum();
        image[k as usize] += c;
    }
    let parts = factor::factor(&image, limits)?;
    let r = parts.len();
    if r <= 1 {
        return Ok(None);
    }
    let mut budget: u64 = 200_000;
    for size in 1..=r / 2 {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            budget = budget.saturating_sub(1);
            if budget == 0 {
                return Err(factor::TooLarge("Kronecker recombination budget exhausted".into()));
            }
            let mut prod: UPoly = vec![BigInt::one()];
            for &i in &subset {
                prod = mul(&prod, &parts[i]);
            }
            if let Some(candidate) = inverse_image(p, vars, &radix, &prod) {
                if !candidate.is_constant() {
                    if let Ok(q) = divide_exact(p, &candidate) {
                        if !q.is_constant() {
                            return Ok(Some(candidate));
                        }
                    }
                }
            }
            if !next_combination(&mut subset, r) {
                break;
            }
        }
    }
    Ok(None)
}

fn mul(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn inverse_image(p: &Polynomial, vars: &[usize], radix: &[u64], f: &[BigInt]) -> Option<Polynomial> {
    let mut terms = Vec::new();
    for (k, c) in f.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut e = vec![0i32; p.ctx().len()];
        let mut rest = k as u64;
        for (&v, &r) in vars.iter().zip(radix) {
            e[v] = (rest % r) as i32;
            rest /= r;
        }
        if rest != 0 {
            return None;
        }
        terms.push((e, c.clone()));
    }
    Some(Polynomial::from_terms(p.ctx(), terms))
}

fn next_combination(subset: &mut [usize], n: usize) -> bool {
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
