use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use super::{divide_exact, gcd, PolyError, Polynomial, VariableContext};

/// A reduced quotient of two ordinary polynomials.
///
/// The denominator has a positive leading coefficient and shares no
/// non-unit factor with the numerator.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, PolyError> {
        num.check(&den)?;
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.ctx()));
        }
        let mn = num.min_exponents();
        let md = den.min_exponents();
        let shift: Vec<i32> = mn.iter().zip(&md).map(|(a, b)| a - b).collect();
        let up: Vec<i32> = shift.iter().map(|&s| s.max(0)).collect();
        let down: Vec<i32> = shift.iter().map(|&s| (-s).max(0)).collect();
        let neg_mn: Vec<i32> = mn.iter().map(|x| -x).collect();
        let neg_md: Vec<i32> = md.iter().map(|x| -x).collect();
        let mut n = num.mul_monomial(&neg_mn).mul_monomial(&up);
        let mut d = den.mul_monomial(&neg_md).mul_monomial(&down);
        if !d.is_one() {
            let g = gcd(&n, &d);
            if !g.is_one() {
                n = divide_exact(&n, &g).expect("gcd divides");
                d = divide_exact(&d, &g).expect("gcd divides");
            }
        }
        if d.leading_coeff().is_some_and(|c| c.is_negative()) {
            n = -n;
            d = -d;
        }
        Ok(RationalFunction { num: n, den: d })
    }

    pub fn zero(ctx: &Arc<VariableContext>) -> Self {
        RationalFunction { num: Polynomial::zero(ctx), den: Polynomial::one(ctx) }
    }

    pub fn from_polynomial(p: &Polynomial) -> Self {
        Self::new(p.clone(), Polynomial::one(p.ctx())).expect("nonzero denominator")
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn ctx(&self) -> &Arc<VariableContext> {
        self.num.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The same value as a Laurent polynomial, if the denominator is a
    /// monomial with coefficient 1.
    pub fn to_laurent(&self) -> Option<Polynomial> {
        match self.den.terms() {
            [(e, c)] if c == &num_bigint::BigInt::from(1) => {
                let inv: Vec<i32> = e.iter().map(|x| -x).collect();
                Some(self.num.mul_monomial(&inv))
            }
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        let n = self.num.checked_mul(&other.den)?.checked_add(&other.num.checked_mul(&self.den)?)?;
        Self::new(n, self.den.checked_mul(&other.den)?)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        Self::new(self.num.checked_mul(&other.num)?, self.den.checked_mul(&other.den)?)
    }

    pub fn div(&self, other: &Self) -> Result<Self, PolyError> {
        if other.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Self::new(self.num.checked_mul(&other.den)?, self.den.checked_mul(&other.num)?)
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<VariableContext> {
        VariableContext::new(["a", "b", "d"], Vec::<String>::new()).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(&ctx(), s).unwrap()
    }

    #[test]
    fn reduces_common_factors() {
        let r = RationalFunction::new(p("a^2 - b^2"), p("-a - b")).unwrap();
        assert_eq!(r.numerator(), &p("b - a"));
        assert!(r.denominator().is_one());
        let r = RationalFunction::new(p("a^-1 + 1"), p("d")).unwrap();
        assert_eq!(r.numerator(), &p("a + 1"));
        assert_eq!(r.denominator(), &p("a*d"));
        assert_eq!(r.to_laurent().unwrap(), p("a^-1*d^-1 + d^-1"));
    }

    #[test]
    fn field_operations() {
        let x = RationalFunction::new(p("b + 1"), p("a")).unwrap();
        let y = RationalFunction::new(p("a"), p("b + 1")).unwrap();
        let one = x.mul(&y).unwrap();
        assert!(one.numerator().is_one() && one.denominator().is_one());
        let s = x.add(&y).unwrap().sub(&y).unwrap();
        assert_eq!(s, x);
        assert!(x.div(&RationalFunction::zero(&ctx())).is_err());
        assert_eq!(x.div(&x).unwrap(), RationalFunction::from_polynomial(&p("1")));
    }
}
