//! Seeds carrying the values of their cluster variables as rational
//! functions of the initial cluster.

use std::sync::Arc;

use serde::Serialize;

use crate::lp_core::{mutate, normalize, LPSeed, SeedError};
use crate::poly::{PolyError, Polynomial, RationalFunction, VariableContext};

/// A cluster variable and its value in the initial cluster and frozen
/// variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackedVariable {
    pub symbol: String,
    pub value: RationalFunction,
}

impl Serialize for TrackedVariable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TrackedVariable", 2)?;
        st.serialize_field("symbol", &self.symbol)?;
        st.serialize_field("value", &self.value.to_string())?;
        st.end()
    }
}

/// A seed together with the value of every cluster variable, slot by slot.
#[derive(Debug, Clone)]
pub struct TrackedSeed {
    pub seed: LPSeed,
    pub vars: Vec<TrackedVariable>,
    /// Context of the initial seed; every value lives here.
    pub initial: Arc<VariableContext>,
}

impl TrackedSeed {
    /// The initial seed: every variable is its own value.
    pub fn new(seed: LPSeed) -> Self {
        let initial = seed.ctx().clone();
        let vars = (0..seed.rank())
            .map(|i| TrackedVariable {
                symbol: initial.name(i).to_string(),
                value: RationalFunction::from_polynomial(&Polynomial::var(&initial, i)),
            })
            .collect();
        TrackedSeed { seed, vars, initial }
    }

    pub fn rank(&self) -> usize {
        self.seed.rank()
    }

    /// `μ_i`, with the new value `F̂_i / x_i` evaluated at the current values.
    pub fn mutate(&self, i: usize) -> Result<TrackedSeed, SeedError> {
        let next = mutate(&self.seed, i)?;
        let (fhat, _) = normalize(&self.seed, i)?;
        let num = evaluate(&fhat, &self.vars, &self.initial)?;
        let value = num.div(&self.vars[i].value)?;
        let mut vars = self.vars.clone();
        vars[i] = TrackedVariable { symbol: next.ctx().name(i).to_string(), value };
        Ok(TrackedSeed { seed: next, vars, initial: self.initial.clone() })
    }

    /// Values as text, sorted.
    pub fn value_strings(&self) -> Vec<String> {
        let mut v: Vec<String> = self.vars.iter().map(|t| t.value.to_string()).collect();
        v.sort();
        v
    }

    /// Identity of the seed up to the names of its cluster variables: the
    /// values as a set and the exchange polynomials up to unit, with
    /// variables renamed by the sorted order of their values.
    pub fn key(&self) -> Result<String, SeedError> {
        let n = self.rank();
        let texts: Vec<String> = self.vars.iter().map(|t| t.value.to_string()).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| texts[a].cmp(&texts[b]));
        let mut map = vec![0; self.seed.ctx().len()];
        for (pos, &slot) in order.iter().enumerate() {
            map[slot] = pos;
        }
        for (k, m) in map.iter_mut().enumerate().skip(n) {
            *m = k;
        }
        let names: Vec<String> = (1..=n).map(|k| format!("v{k}")).collect();
        let ctx = VariableContext::new(names, self.initial.frozen_names().to_vec())
            .map_err(SeedError::Poly)?;
        let mut out = String::new();
        for &slot in &order {
            out.push_str(&texts[slot]);
            out.push_str(" ; ");
        }
        out.push('|');
        for &slot in &order {
            out.push(' ');
            out.push_str(&self.seed.poly(slot).permute(&ctx, &map).canonical_unit().to_string());
            out.push_str(" ;");
        }
        Ok(out)
    }

    /// `{v1, v2, ...}` with the values in sorted order.
    pub fn label(&self) -> String {
        format!("{{{}}}", self.value_strings().join(", "))
    }
}

/// `p` with cluster variable `k` replaced by `vars[k]`; frozen variables stay.
pub fn evaluate(
    p: &Polynomial,
    vars: &[TrackedVariable],
    initial: &Arc<VariableContext>,
) -> Result<RationalFunction, PolyError> {
    let n = vars.len();
    if p.is_zero() {
        return Ok(RationalFunction::zero(initial));
    }
    // Bring every term over the common denominator prod N_k^{-lo_k} D_k^{hi_k}.
    let lo: Vec<i32> = (0..n).map(|k| p.min_degree_in(k).min(0)).collect();
    let hi: Vec<i32> = (0..n).map(|k| p.degree_in(k).max(0)).collect();
    let mut num = Polynomial::zero(initial);
    for (e, c) in p.terms() {
        let mut rest = e.clone();
        for x in rest.iter_mut().take(n) {
            *x = 0;
        }
        let mut term = Polynomial::monomial(initial, rest, c.clone());
        for k in (0..n).filter(|&k| lo[k] != 0 || hi[k] != 0) {
            let v = &vars[k].value;
            term = term.checked_mul(&v.numerator().pow((e[k] - lo[k]) as u32))?;
            term = term.checked_mul(&v.denominator().pow((hi[k] - e[k]) as u32))?;
        }
        num = num.checked_add(&term)?;
    }
    let mut den = Polynomial::one(initial);
    for k in 0..n {
        let v = &vars[k].value;
        den = den.checked_mul(&v.numerator().pow((-lo[k]) as u32))?;
        den = den.checked_mul(&v.denominator().pow(hi[k] as u32))?;
    }
    RationalFunction::new(num, den)
}
