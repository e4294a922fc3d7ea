//! LP seeds, normalisation and the three-step LP mutation.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{
    divide_exact, gcd, is_irreducible, PolyError, Polynomial, VariableContext,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error("invalid seed: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("direction {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("unknown cluster variable `{0}`")]
    UnknownVariable(String),
    #[error("mutation step is ill-defined: {0}")]
    IllDefined(String),
    #[error("seeds have different frozen variables")]
    ContextMismatch,
    #[error("malformed seed file: {0}")]
    Format(String),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// One broken seed condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    LengthMismatch { cluster: usize, polys: usize },
    NotOrdinary { var: String, poly: String },
    DependsOnOwnVariable { var: String, poly: String },
    IsClusterVariable { var: String, poly: String },
    ZeroOrUnit { var: String, poly: String },
    Reducible { var: String, poly: String },
    Undecided { var: String, poly: String, reason: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "empty cluster"),
            Violation::LengthMismatch { cluster, polys } => {
                write!(f, "{cluster} cluster variables but {polys} exchange polynomials")
            }
            Violation::NotOrdinary { var, poly } => {
                write!(f, "F_{var} = {poly} has negative exponents")
            }
            Violation::DependsOnOwnVariable { var, poly } => {
                write!(f, "F_{var} = {poly} depends on {var}")
            }
            Violation::IsClusterVariable { var, poly } => {
                write!(f, "F_{var} = {poly} is a cluster variable")
            }
            Violation::ZeroOrUnit { var, poly } => write!(f, "F_{var} = {poly} is zero or a unit"),
            Violation::Reducible { var, poly } => write!(f, "F_{var} = {poly} is reducible"),
            Violation::Undecided { var, poly, reason } => {
                write!(f, "irreducibility of F_{var} = {poly} undecided ({reason})")
            }
        }
    }
}

/// A cluster (the cluster names of the context) with one exchange polynomial
/// per cluster variable.
#[derive(Clone, PartialEq, Eq)]
pub struct LPSeed {
    ctx: Arc<VariableContext>,
    polys: Vec<Polynomial>,
    provenance: Option<String>,
}

impl fmt::Debug for LPSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LPSeed({self})")
    }
}

impl fmt::Display for LPSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.polys.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {}", self.ctx.name(i), p)?;
        }
        f.write_str("}")
    }
}

/// JSON form `{cluster, frozen, polys}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub cluster: Vec<String>,
    #[serde(default)]
    pub frozen: Vec<String>,
    pub polys: Vec<String>,
}

impl LPSeed {
    /// A validated seed; polynomials are stored with positive leading
    /// coefficient.
    pub fn new(ctx: Arc<VariableContext>, polys: Vec<Polynomial>) -> Result<Self, SeedError> {
        let seed = Self::new_unchecked(ctx, polys)?;
        validate_seed(&seed).map_err(SeedError::Invalid)?;
        Ok(seed)
    }

    /// Builds a seed without checking the seed conditions. Use
    /// [`validate_seed`] to inspect it.
    pub fn new_unchecked(
        ctx: Arc<VariableContext>,
        polys: Vec<Polynomial>,
    ) -> Result<Self, SeedError> {
        if polys.iter().any(|p| **p.ctx() != *ctx) {
            return Err(PolyError::ContextMismatch.into());
        }
        let polys = polys.iter().map(|p| p.with_context(&ctx).canonical_unit()).collect();
        Ok(LPSeed { ctx, polys, provenance: None })
    }

    pub fn from_strings(
        cluster: &[&str],
        frozen: &[&str],
        polys: &[&str],
    ) -> Result<Self, SeedError> {
        let file = SeedFile {
            schema: None,
            cluster: cluster.iter().map(|s| s.to_string()).collect(),
            frozen: frozen.iter().map(|s| s.to_string()).collect(),
            polys: polys.iter().map(|s| s.to_string()).collect(),
        };
        Self::from_file(&file)
    }

    pub fn from_file(file: &SeedFile) -> Result<Self, SeedError> {
        Self::from_file_unchecked(file).and_then(|s| {
            validate_seed(&s).map_err(SeedError::Invalid)?;
            Ok(s)
        })
    }

    pub fn from_file_unchecked(file: &SeedFile) -> Result<Self, SeedError> {
        if let Some(v) = file.schema {
            if v != 1 {
                return Err(SeedError::Format(format!("unsupported schema {v}")));
            }
        }
        if file.cluster.len() != file.polys.len() {
            return Err(SeedError::Invalid(vec![Violation::LengthMismatch {
                cluster: file.cluster.len(),
                polys: file.polys.len(),
            }]));
        }
        let ctx = VariableContext::new(file.cluster.clone(), file.frozen.clone())?;
        let polys = file
            .polys
            .iter()
            .map(|s| Polynomial::parse(&ctx, s))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new_unchecked(ctx, polys)
    }

    pub fn from_json(text: &str) -> Result<Self, SeedError> {
        let file: SeedFile =
            serde_json::from_str(text).map_err(|e| SeedError::Format(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> SeedFile {
        SeedFile {
            schema: Some(1),
            cluster: self.ctx.cluster_names().to_vec(),
            frozen: self.ctx.frozen_names().to_vec(),
            polys: self.polys.iter().map(|p| p.to_string()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serialisable")
    }

    pub fn ctx(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.polys.len()
    }

    pub fn cluster(&self) -> &[String] {
        self.ctx.cluster_names()
    }

    pub fn exchange_polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn poly(&self, i: usize) -> &Polynomial {
        &self.polys[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, SeedError> {
        self.ctx
            .cluster_names()
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| SeedError::UnknownVariable(name.to_string()))
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn with_provenance(mut self, tag: impl Into<String>) -> Self {
        self.provenance = Some(tag.into());
        self
    }

    /// The same seed with cluster variable `i` renamed.
    pub fn renamed(&self, i: usize, name: &str) -> Result<Self, SeedError> {
        let ctx = self.ctx.renamed(i, name)?;
        let polys = self.polys.iter().map(|p| p.with_context(&ctx)).collect();
        Ok(LPSeed { ctx, polys, provenance: self.provenance.clone() })
    }
}

/// Reports every violated seed condition.
pub fn validate_seed(s: &LPSeed) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let n = s.ctx.n_cluster();
    if n == 0 {
        out.push(Violation::Empty);
    }
    if n != s.polys.len() {
        out.push(Violation::LengthMismatch { cluster: n, polys: s.polys.len() });
        return Err(out);
    }
    for (i, f) in s.polys.iter().enumerate() {
        let var = s.ctx.name(i).to_string();
        let poly = f.to_string();
        if !f.is_ordinary() {
            out.push(Violation::NotOrdinary { var, poly });
            continue;
        }
        if f.involves(i) {
            out.push(Violation::DependsOnOwnVariable { var: var.clone(), poly: poly.clone() });
        }
        if (0..n).any(|k| *f == Polynomial::var(&s.ctx, k)) {
            out.push(Violation::IsClusterVariable { var: var.clone(), poly: poly.clone() });
        }
        match is_irreducible(f) {
            Ok(true) => {}
            Ok(false) => out.push(Violation::Reducible { var, poly }),
            Err(PolyError::ZeroOrUnit) => out.push(Violation::ZeroOrUnit { var, poly }),
            Err(e) => out.push(Violation::Undecided { var, poly, reason: e.to_string() }),
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn check_index(s: &LPSeed, j: usize) -> Result<(), SeedError> {
    if j < s.rank() {
        Ok(())
    } else {
        Err(SeedError::IndexOutOfRange(j))
    }
}

/// Largest `a` such that `F_k^a` divides `F_j|_{x_k <- F_k/x}` in
/// `R[x_l (l != k), x^-1]`. Slot `k` plays the role of `x`.
fn maximal_power(s: &LPSeed, j: usize, k: usize) -> Result<u32, SeedError> {
    let fk = &s.polys[k];
    let fj = &s.polys[j];
    let mut inv = vec![0; s.ctx.len()];
    inv[k] = -1;
    let mut current = fj.substitute(k, &fk.mul_monomial(&inv))?;
    let mut a = 0;
    loop {
        match divide_exact(&current, fk) {
            Ok(q) if ordinary_outside(&q, k) && !q.is_zero() => {
                current = q;
                a += 1;
            }
            _ => return Ok(a),
        }
    }
}

fn ordinary_outside(p: &Polynomial, k: usize) -> bool {
    p.terms().iter().all(|(e, _)| e.iter().enumerate().all(|(v, &x)| v == k || x >= 0))
}

/// `F̂_j` together with the exponents `a_k` (`a_j = 0`).
pub fn normalize(s: &LPSeed, j: usize) -> Result<(Polynomial, Vec<u32>), SeedError> {
    check_index(s, j)?;
    let n = s.rank();
    let mut powers = vec![0u32; n];
    for k in (0..n).filter(|&k| k != j) {
        powers[k] = maximal_power(s, j, k)?;
    }
    let mut shift = vec![0; s.ctx.len()];
    for (k, &a) in powers.iter().enumerate() {
        shift[k] = -(a as i32);
    }
    Ok((s.polys[j].mul_monomial(&shift), powers))
}

/// The next unused name obtained by appending primes.
pub fn fresh_name(ctx: &VariableContext, i: usize) -> String {
    let mut name = format!("{}'", ctx.name(i));
    while ctx.index_of(&name).is_some() {
        name.push('\'');
    }
    name
}

/// LP mutation in direction `i`; the new variable gets a fresh primed name.
pub fn mutate(s: &LPSeed, i: usize) -> Result<LPSeed, SeedError> {
    check_index(s, i)?;
    let name = fresh_name(&s.ctx, i);
    mutate_named(s, i, &name)
}

/// LP mutation in direction `i` naming the new cluster variable `new_name`.
pub fn mutate_named(s: &LPSeed, i: usize, new_name: &str) -> Result<LPSeed, SeedError> {
    let out = mutate_unvalidated(s, i, new_name)?;
    validate_seed(&out).map_err(SeedError::Invalid)?;
    Ok(out)
}

pub(crate) fn mutate_unvalidated(
    s: &LPSeed,
    i: usize,
    new_name: &str,
) -> Result<LPSeed, SeedError> {
    check_index(s, i)?;
    let (fhat, _) = normalize(s, i)?;
    let ctx = s.ctx.renamed(i, new_name)?;
    let mut inv = vec![0; s.ctx.len()];
    inv[i] = -1;
    let mut polys = Vec::with_capacity(s.rank());
    for (j, fj) in s.polys.iter().enumerate() {
        if j == i || !fj.involves(i) {
            polys.push(fj.with_context(&ctx));
            continue;
        }
        let a = fhat.eval_zero(j).map_err(|e| {
            SeedError::IllDefined(format!("F̂_{}|{}<-0: {e}", s.ctx.name(i), s.ctx.name(j)))
        })?;
        if a.is_zero() {
            return Err(SeedError::IllDefined(format!(
                "F̂_{}|{}<-0 vanishes",
                s.ctx.name(i),
                s.ctx.name(j)
            )));
        }
        let g = fj.substitute(i, &a.mul_monomial(&inv))?;
        let h = remove_common_factors(g, &a)?;
        let (f, _) = h.strip_laurent_monomial()?;
        polys.push(f.with_context(&ctx));
    }
    LPSeed::new_unchecked(ctx, polys)
}

/// Step 2: divides out every common factor of `g` and `a` up to Laurent
/// monomials.
fn remove_common_factors(g: Polynomial, a: &Polynomial) -> Result<Polynomial, SeedError> {
    let (a0, _) = a.strip_laurent_monomial()?;
    let mut h = g;
    loop {
        let (h0, _) = h.strip_laurent_monomial()?;
        let d = gcd(&h0, &a0);
        if d.is_one() {
            return Ok(h);
        }
        h = divide_exact(&h, &d)?;
    }
}

/// Equality up to units: same frozen variables, same cluster names as sets,
/// and the exchange polynomials of equally named variables agree up to sign.
pub fn seeds_equal(s1: &LPSeed, s2: &LPSeed) -> Result<bool, SeedError> {
    if s1.ctx.frozen_names() != s2.ctx.frozen_names() {
        return Err(SeedError::ContextMismatch);
    }
    if s1.rank() != s2.rank() {
        return Ok(false);
    }
    let n = s1.rank();
    let mut map = Vec::with_capacity(s2.ctx.len());
    for name in s2.ctx.cluster_names() {
        match s1.ctx.cluster_names().iter().position(|m| m == name) {
            Some(k) => map.push(k),
            None => return Ok(false),
        }
    }
    map.extend(n..s2.ctx.len());
    for (j2, f2) in s2.polys.iter().enumerate() {
        let f = f2.permute(&s1.ctx, &map).canonical_unit();
        if f != s1.polys[map[j2]].canonical_unit() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm_seed() -> LPSeed {
        LPSeed::from_strings(&["a", "b", "c"], &[], &["b + 1", "a + c", "(b+1)^2 + a^2*b"]).unwrap()
    }

    fn p(s: &LPSeed, text: &str) -> Polynomial {
        Polynomial::parse(s.ctx(), text).unwrap()
    }

    #[test]
    fn normalization_example() {
        let s = norm_seed();
        let (fa, pa) = normalize(&s, 0).unwrap();
        assert_eq!(fa, s.polys[0]);
        assert_eq!(pa, vec![0, 0, 0]);
        let (fb, _) = normalize(&s, 1).unwrap();
        assert_eq!(fb, s.polys[1]);
        let (fc, pc) = normalize(&s, 2).unwrap();
        assert_eq!(pc, vec![2, 0, 0]);
        assert_eq!(fc, p(&s, "(b+1)^2*a^-2 + b"));
    }

    #[test]
    fn mutation_follows_the_three_steps() {
        let s = norm_seed();
        let m = mutate(&s, 0).unwrap();
        assert_eq!(m.cluster(), ["a'", "b", "c"]);
        assert_eq!(m.poly(0), &p(&m, "b + 1"));
        assert_eq!(m.poly(1), &p(&m, "a'*c + 1"));
        assert_eq!(m.poly(2), &p(&m, "a'^2 + b"));
        let back = mutate_named(&m, 0, "a").unwrap();
        assert!(seeds_equal(&back, &s).unwrap());
    }

    #[test]
    fn validation_reports_each_condition() {
        let bad = LPSeed::from_file_unchecked(&SeedFile {
            schema: None,
            cluster: vec!["a".into(), "b".into(), "c".into()],
            frozen: vec!["x".into(), "y".into()],
            polys: vec!["b*(x + y)".into(), "b + 1".into(), "a".into()],
        })
        .unwrap();
        let v = validate_seed(&bad).unwrap_err();
        assert!(matches!(v[0], Violation::Reducible { .. }));
        assert!(matches!(v[1], Violation::DependsOnOwnVariable { .. }));
        assert!(matches!(v[2], Violation::IsClusterVariable { .. }));
        assert!(v[0].to_string().contains("reducible"));
        assert!(validate_seed(&norm_seed()).is_ok());
    }

    #[test]
    fn seed_equality_up_to_units() {
        let s = norm_seed();
        assert!(seeds_equal(&s, &s).unwrap());
        let negated = LPSeed::from_strings(
            &["a", "b", "c"],
            &[],
            &["-b - 1", "a + c", "(b+1)^2 + a^2*b"],
        )
        .unwrap();
        assert!(seeds_equal(&s, &negated).unwrap());
        assert!(!seeds_equal(&s, &mutate(&s, 0).unwrap()).unwrap());
        let permuted =
            LPSeed::from_strings(&["c", "a", "b"], &[], &["(b+1)^2 + a^2*b", "b + 1", "a + c"])
                .unwrap();
        assert!(seeds_equal(&s, &permuted).unwrap());
    }

    #[test]
    fn untouched_polynomials_are_kept() {
        let s = LPSeed::from_strings(&["a", "b"], &["x"], &["x + 1", "x + 2"]).unwrap();
        let m = mutate(&s, 0).unwrap();
        assert_eq!(m.poly(1).to_string(), "x + 2");
        assert_eq!(m.poly(0).to_string(), "x + 1");
    }

    #[test]
    fn rank_one_seed() {
        let s = LPSeed::from_strings(&["a"], &["x"], &["x + 1"]).unwrap();
        let m = mutate(&s, 0).unwrap();
        assert_eq!(m.cluster(), ["a'"]);
        assert_eq!(m.poly(0).to_string(), "x + 1");
    }

    #[test]
    fn json_roundtrip() {
        let s = norm_seed();
        let back = LPSeed::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        assert!(s.to_json().contains("\"schema\": 1"));
    }
}
