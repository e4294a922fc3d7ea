//! Exact multivariate Laurent polynomials over the integers.
//!
//! A [`Polynomial`] is a sparse list of terms sorted in descending graded
//! lexicographic order over the variables of its [`VariableContext`]. Exponents
//! may be negative; a polynomial with only non-negative exponents is called
//! ordinary.

mod factor;
mod gcd;
mod irreducible;
mod parse;
mod rational;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use gcd::{content_in, divide_exact, gcd};
pub use irreducible::{is_irreducible, IrreducibilityLimits};
pub use rational::RationalFunction;


#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials belong to different variable contexts")]
    ContextMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable name `{0}` is used twice")]
    DuplicateName(String),
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("`{0}` occurs with a negative exponent")]
    NegativeExponent(String),
    #[error("expected a nonzero non-unit polynomial")]
    ZeroOrUnit,
    #[error("irreducibility undecided: {0}")]
    Undecided(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Names of the cluster variables followed by the frozen variables.
///
/// Variable `i` of a polynomial is `cluster_names[i]` for `i < n_cluster()` and
/// a frozen variable otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableContext {
    cluster: Vec<String>,
    frozen: Vec<String>,
}

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl VariableContext {
    pub fn new<I, J, S, T>(cluster: I, frozen: J) -> Result<Arc<Self>, PolyError>
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = T>,
        S: Into<String>,
        T: Into<String>,
    {
        let ctx = VariableContext {
            cluster: cluster.into_iter().map(Into::into).collect(),
            frozen: frozen.into_iter().map(Into::into).collect(),
        };
        let mut seen = std::collections::HashSet::new();
        for name in ctx.names() {
            if !valid_name(name) {
                return Err(PolyError::InvalidName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(PolyError::DuplicateName(name.clone()));
            }
        }
        Ok(Arc::new(ctx))
    }

    pub fn cluster_names(&self) -> &[String] {
        &self.cluster
    }

    pub fn frozen_names(&self) -> &[String] {
        &self.frozen
    }

    pub fn n_cluster(&self) -> usize {
        self.cluster.len()
    }

    pub fn n_frozen(&self) -> usize {
        self.frozen.len()
    }

    pub fn len(&self) -> usize {
        self.cluster.len() + self.frozen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.cluster.iter().chain(self.frozen.iter())
    }

    pub fn name(&self, i: usize) -> &str {
        if i < self.cluster.len() {
            &self.cluster[i]
        } else {
            &self.frozen[i - self.cluster.len()]
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names().position(|n| n == name)
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        i >= self.cluster.len()
    }

    /// Same context with cluster variable `i` renamed.
    pub fn renamed(&self, i: usize, name: &str) -> Result<Arc<Self>, PolyError> {
        let mut cluster = self.cluster.clone();
        cluster[i] = name.to_string();
        VariableContext::new(cluster, self.frozen.clone())
    }
}

pub type Exponents = Vec<i32>;

fn total(e: &[i32]) -> i64 {
    e.iter().map(|&x| x as i64).sum()
}

/// Graded lexicographic comparison.
pub fn grlex(a: &[i32], b: &[i32]) -> std::cmp::Ordering {
    total(a).cmp(&total(b)).then_with(|| a.cmp(b))
}

#[derive(Clone)]
pub struct Polynomial {
    ctx: Arc<VariableContext>,
    terms: Vec<(Exponents, BigInt)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

pub(crate) fn same_ctx(a: &Arc<VariableContext>, b: &Arc<VariableContext>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(ctx: &Arc<VariableContext>) -> Self {
        Polynomial { ctx: ctx.clone(), terms: Vec::new() }
    }

    pub fn one(ctx: &Arc<VariableContext>) -> Self {
        Self::constant(ctx, BigInt::one())
    }

    pub fn constant(ctx: &Arc<VariableContext>, c: impl Into<BigInt>) -> Self {
        Self::monomial(ctx, vec![0; ctx.len()], c)
    }

    pub fn var(ctx: &Arc<VariableContext>, i: usize) -> Self {
        let mut e = vec![0; ctx.len()];
        e[i] = 1;
        Self::monomial(ctx, e, 1)
    }

    pub fn var_named(ctx: &Arc<VariableContext>, name: &str) -> Result<Self, PolyError> {
        let i = ctx
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ctx, i))
    }

    pub fn monomial(ctx: &Arc<VariableContext>, exps: Exponents, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), ctx.len(), "exponent vector length");
        let c = c.into();
        let terms = if c.is_zero() { Vec::new() } else { vec![(exps, c)] };
        Polynomial { ctx: ctx.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(
        ctx: &Arc<VariableContext>,
        terms: impl IntoIterator<Item = (Exponents, BigInt)>,
    ) -> Self {
        let mut map: HashMap<Exponents, BigInt> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), ctx.len(), "exponent vector length");
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        Self::from_map(ctx, map)
    }

    fn from_map(ctx: &Arc<VariableContext>, map: HashMap<Exponents, BigInt>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| grlex(&b.0, &a.0));
        Polynomial { ctx: ctx.clone(), terms }
    }

    pub fn parse(ctx: &Arc<VariableContext>, text: &str) -> Result<Self, PolyError> {
        parse::parse(ctx, text)
    }

    pub fn ctx(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    /// Terms in descending graded lexicographic order.
    pub fn terms(&self) -> &[(Exponents, BigInt)] {
        &self.terms
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(e, _)| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// True for the constants 1 and -1.
    pub fn is_unit(&self) -> bool {
        self.constant_value().is_some_and(|c| c.abs().is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_ordinary(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.iter().all(|&x| x >= 0))
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn leading_exponents(&self) -> Option<&[i32]> {
        self.terms.first().map(|(e, _)| e.as_slice())
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.iter().map(|(e, _)| total(e)).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> i32 {
        self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: usize) -> i32 {
        self.terms.iter().map(|(e, _)| e[v]).min().unwrap_or(0)
    }

    pub fn involves(&self, v: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[v] != 0)
    }

    pub fn variables(&self) -> Vec<usize> {
        (0..self.ctx.len()).filter(|&v| self.involves(v)).collect()
    }

    /// Largest absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        use std::cmp::Ordering::*;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Less
            } else if j == b.len() {
                Greater
            } else {
                grlex(&a[i].0, &b[j].0)
            };
            match ord {
                Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ctx: self.ctx.clone(), terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        if other.is_monomial() {
            let (e, c) = &other.terms[0];
            return self.mul_term(e, c);
        }
        if self.is_monomial() {
            let (e, c) = &self.terms[0];
            return other.mul_term(e, c);
        }
        let mut map: HashMap<Exponents, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *map.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        Self::from_map(&self.ctx, map)
    }

    /// Multiplication by `c * x^e`; the term order is preserved.
    pub fn mul_term(&self, e: &[i32], c: &BigInt) -> Self {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .map(|(ea, ca)| (ea.iter().zip(e).map(|(x, y)| x + y).collect(), ca * c))
            .collect();
        Polynomial { ctx: self.ctx.clone(), terms }
    }

    pub fn mul_monomial(&self, e: &[i32]) -> Self {
        self.mul_term(e, &BigInt::one())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.mul_term(&vec![0; self.ctx.len()], c)
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_scalar(&self, c: &BigInt) -> Result<Self, PolyError> {
        if c.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, a) in &self.terms {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            terms.push((e.clone(), q));
        }
        Ok(Polynomial { ctx: self.ctx.clone(), terms })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Polynomial::one(&self.ctx);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.product(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.product(&base);
            }
        }
        result
    }

    /// Componentwise minimum of the exponent vectors.
    pub fn min_exponents(&self) -> Exponents {
        let mut m = match self.terms.first() {
            Some((e, _)) => e.clone(),
            None => return vec![0; self.ctx.len()],
        };
        for (e, _) in &self.terms[1..] {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    /// Multiplies by -1 when the leading coefficient is negative.
    pub fn canonical_unit(&self) -> Self {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Removes the monomial factor: returns `(q, m)` where `q = ±p * x^m` is
    /// ordinary, divisible by no variable, and has positive leading coefficient.
    pub fn strip_laurent_monomial(&self) -> Result<(Self, Exponents), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroOrUnit);
        }
        let m: Exponents = self.min_exponents().iter().map(|x| -x).collect();
        Ok((self.mul_monomial(&m).canonical_unit(), m))
    }

    /// The same terms read in another context of equal size.
    pub fn with_context(&self, ctx: &Arc<VariableContext>) -> Self {
        assert_eq!(ctx.len(), self.ctx.len(), "context size");
        Polynomial { ctx: ctx.clone(), terms: self.terms.clone() }
    }

    /// Moves variable `i` to position `map[i]` of `ctx`.
    pub fn permute(&self, ctx: &Arc<VariableContext>, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.ctx.len(), "permutation size");
        let terms = self.terms.iter().map(|(e, c)| {
            let mut f = vec![0; ctx.len()];
            for (i, &x) in e.iter().enumerate() {
                f[map[i]] += x;
            }
            (f, c.clone())
        });
        Polynomial::from_terms(ctx, terms)
    }

    /// Coefficients of `p` as a polynomial in `v`, indexed by exponent minus
    /// the minimal exponent of `v`. Returns the minimal exponent as well.
    pub fn coefficients_in(&self, v: usize) -> (i32, Vec<Polynomial>) {
        let lo = self.min_degree_in(v);
        let hi = self.degree_in(v);
        let width = if self.is_zero() { 0 } else { (hi - lo + 1) as usize };
        let mut buckets: Vec<Vec<(Exponents, BigInt)>> = vec![Vec::new(); width];
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f[v] = 0;
            buckets[(e[v] - lo) as usize].push((f, c.clone()));
        }
        let coeffs = buckets
            .into_iter()
            .map(|terms| Polynomial { ctx: self.ctx.clone(), terms })
            .collect();
        (lo, coeffs)
    }

    /// Inverse of [`Polynomial::coefficients_in`].
    pub fn from_coefficients_in(
        ctx: &Arc<VariableContext>,
        v: usize,
        lo: i32,
        coeffs: &[Polynomial],
    ) -> Self {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut f = e.clone();
                f[v] += lo + k as i32;
                terms.push((f, a.clone()));
            }
        }
        let mut p = Polynomial { ctx: ctx.clone(), terms };
        p.terms.sort_by(|a, b| grlex(&b.0, &a.0));
        p
    }

    /// `p` with `x_v <- 0`. Fails if `x_v` occurs with a negative exponent.
    pub fn eval_zero(&self, v: usize) -> Result<Self, PolyError> {
        if self.min_degree_in(v) < 0 {
            return Err(PolyError::NegativeExponent(self.ctx.name(v).to_string()));
        }
        let terms = self.terms.iter().filter(|(e, _)| e[v] == 0).cloned().collect();
        Ok(Polynomial { ctx: self.ctx.clone(), terms })
    }

    /// Substitutes a Laurent polynomial for `x_v`. Negative powers of `x_v`
    /// are only allowed when `value` is a monomial with coefficient ±1.
    pub fn substitute(&self, v: usize, value: &Polynomial) -> Result<Self, PolyError> {
        self.check(value)?;
        if !self.involves(v) {
            return Ok(self.clone());
        }
        let (lo, coeffs) = self.coefficients_in(v);
        let inverse = if lo < 0 {
            match value.terms.as_slice() {
                [(e, c)] if c.abs().is_one() => {
                    Some(Polynomial::monomial(&self.ctx, e.iter().map(|x| -x).collect(), c.clone()))
                }
                _ => return Err(PolyError::NegativeExponent(self.ctx.name(v).to_string())),
            }
        } else {
            None
        };
        let mut result = Polynomial::zero(&self.ctx);
        let mut power = match &inverse {
            Some(inv) => inv.pow((-lo) as u32),
            None => value.pow(lo as u32),
        };
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                result = result.merge(&c.product(&power), false);
            }
            if k + 1 < coeffs.len() {
                power = power.product(value);
            }
        }
        Ok(result)
    }

    /// Substitutes a rational function for the variable named `var`.
    pub fn substitute_rational(
        &self,
        var: &str,
        value: &RationalFunction,
    ) -> Result<RationalFunction, PolyError> {
        let v = self
            .ctx
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        self.substitute_rational_at(v, value)
    }

    pub fn substitute_rational_at(
        &self,
        v: usize,
        value: &RationalFunction,
    ) -> Result<RationalFunction, PolyError> {
        self.check(value.numerator())?;
        let (lo, coeffs) = self.coefficients_in(v);
        if coeffs.is_empty() {
            return Ok(RationalFunction::zero(&self.ctx));
        }
        let hi_exp = lo + coeffs.len() as i32 - 1;
        let low = lo.min(0);
        let high = hi_exp.max(0);
        let n = value.numerator();
        let d = value.denominator();
        let mut num = Polynomial::zero(&self.ctx);
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = lo + k as i32;
            let term = c.product(&n.pow((e - low) as u32)).product(&d.pow((high - e) as u32));
            num = num.merge(&term, false);
        }
        let den = n.pow((-low) as u32).product(&d.pow(high as u32));
        RationalFunction::new(num, den)
    }

    /// Evaluates cluster variable `v` at an integer.
    pub fn eval_integer(&self, v: usize, value: &BigInt) -> Result<Self, PolyError> {
        if self.min_degree_in(v) < 0 {
            return Err(PolyError::NegativeExponent(self.ctx.name(v).to_string()));
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let mut f = e.clone();
            let k = f[v];
            f[v] = 0;
            (f, c * num_traits::pow(value.clone(), k as usize))
        });
        Ok(Polynomial::from_terms(&self.ctx, terms))
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        Polynomial { ctx: self.ctx.clone(), terms }
    }
}

impl std::ops::Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomials share a context")
            }
        }
        impl std::ops::$tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$checked(&rhs).expect("polynomials share a context")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

/// Which ring operation [`arith`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
}

pub fn arith(p: &Polynomial, q: &Polynomial, kind: ArithKind) -> Result<Polynomial, PolyError> {
    match kind {
        ArithKind::Add => p.checked_add(q),
        ArithKind::Sub => p.checked_sub(q),
        ArithKind::Mul => p.checked_mul(q),
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ctx: &VariableContext, e: &[i32]) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(ctx.name(i))?;
        if k != 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let constant = e.iter().all(|&k| k == 0);
            if constant {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, &self.ctx, e)?;
            }
        }
        Ok(())
    }
}
