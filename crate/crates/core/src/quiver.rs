//! Anti-symmetric quivers on paired vertices `1..n, 1̃..ñ`.
//!
//! Vertex `i < n` is the first lift of pair `i` and `i + n` its twin `ĩ`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lp_core::{LPSeed, SeedError};
use crate::poly::{Polynomial, VariableContext};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("matrix must be {expected}x{expected}")]
    Shape { expected: usize },
    #[error("b[{0}][{1}] != -b[{1}][{0}]")]
    NotSkewSymmetric(usize, usize),
    #[error("b[{0}][{1}] differs from its twin entry")]
    NotAntiSymmetric(usize, usize),
    #[error("arrow between vertex {0} and its twin")]
    TwinArrow(usize),
    #[error("vertex {0} is frozen")]
    FrozenVertex(usize),
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("context has {got} cluster and {got_frozen} frozen variables, quiver needs {want} and {want_frozen}")]
    ContextSize { got: usize, got_frozen: usize, want: usize, want_frozen: usize },
    #[error("double mutation orders disagree at pair {0}")]
    OrderDependent(usize),
    #[error(transparent)]
    Seed(#[from] SeedError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    b: Vec<Vec<i64>>,
    frozen: Vec<bool>,
}

/// JSON form; `frozen` lists 1-based pair indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub n: usize,
    pub b: Vec<Vec<i64>>,
    #[serde(default)]
    pub frozen: Vec<usize>,
}

impl Quiver {
    /// Validates skew-symmetry, anti-symmetry and the absence of `i -> ĩ`.
    pub fn new(n: usize, b: Vec<Vec<i64>>, frozen_pairs: &[usize]) -> Result<Self, QuiverError> {
        if b.len() != 2 * n || b.iter().any(|row| row.len() != 2 * n) {
            return Err(QuiverError::Shape { expected: 2 * n });
        }
        let mut frozen = vec![false; n];
        for &p in frozen_pairs {
            *frozen.get_mut(p).ok_or(QuiverError::OutOfRange(p))? = true;
        }
        let q = Quiver { n, b, frozen };
        q.check()?;
        Ok(q)
    }

    fn check(&self) -> Result<(), QuiverError> {
        let m = 2 * self.n;
        for i in 0..m {
            for j in 0..m {
                if self.b[i][j] != -self.b[j][i] {
                    return Err(QuiverError::NotSkewSymmetric(i, j));
                }
                if self.b[i][j] != self.b[self.tilde(j)][self.tilde(i)] {
                    return Err(QuiverError::NotAntiSymmetric(i, j));
                }
            }
            if self.b[i][self.tilde(i)] != 0 {
                return Err(QuiverError::TwinArrow(i));
            }
        }
        Ok(())
    }

    pub fn empty(n: usize) -> Self {
        Quiver { n, b: vec![vec![0; 2 * n]; 2 * n], frozen: vec![false; n] }
    }

    pub fn from_file(file: &QuiverFile) -> Result<Self, QuiverError> {
        let frozen: Vec<usize> = file.frozen.iter().map(|&p| p.wrapping_sub(1)).collect();
        Self::new(file.n, file.b.clone(), &frozen)
    }

    pub fn to_file(&self) -> QuiverFile {
        QuiverFile {
            schema: Some(1),
            n: self.n,
            b: self.b.clone(),
            frozen: self.frozen_pairs().into_iter().map(|p| p + 1).collect(),
        }
    }

    /// Number of pairs.
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn tilde(&self, v: usize) -> usize {
        (v + self.n) % (2 * self.n)
    }

    pub fn is_frozen_pair(&self, p: usize) -> bool {
        self.frozen[p]
    }

    pub fn frozen_pairs(&self) -> Vec<usize> {
        (0..self.n).filter(|&p| self.frozen[p]).collect()
    }

    pub fn mutable_pairs(&self) -> Vec<usize> {
        (0..self.n).filter(|&p| !self.frozen[p]).collect()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.check().is_ok()
    }

    /// Matrix mutation at vertex `k` (either lift).
    pub fn mutate_vertex(&self, k: usize) -> Result<Quiver, QuiverError> {
        let m = 2 * self.n;
        if k >= m {
            return Err(QuiverError::OutOfRange(k));
        }
        if self.frozen[k % self.n] {
            return Err(QuiverError::FrozenVertex(k));
        }
        let b = &self.b;
        let mut out = b.clone();
        for a in 0..m {
            for c in 0..m {
                out[a][c] = if a == k || c == k {
                    -b[a][c]
                } else {
                    b[a][c] + (-b[a][k]).max(0) * b[k][c] + b[a][k] * b[k][c].max(0)
                };
            }
        }
        Ok(Quiver { n: self.n, b: out, frozen: self.frozen.clone() })
    }

    /// `μ_i ∘ μ_ĩ`, checked against the other order.
    pub fn double_mutate(&self, i: usize) -> Result<Quiver, QuiverError> {
        if i >= self.n {
            return Err(QuiverError::OutOfRange(i));
        }
        self.check()?;
        let t = self.tilde(i);
        let one = self.mutate_vertex(t)?.mutate_vertex(i)?;
        let other = self.mutate_vertex(i)?.mutate_vertex(t)?;
        if one != other {
            return Err(QuiverError::OrderDependent(i));
        }
        one.check()?;
        Ok(one)
    }

    /// True iff some vertex `a` has `a -> i -> ã`.
    pub fn has_bad_path(&self, i: usize) -> bool {
        (0..2 * self.n).any(|a| self.b[a][i] > 0 && self.b[i][self.tilde(a)] > 0)
    }

    /// Slot of pair `p` in a context built by [`Quiver::context`].
    pub fn slot(&self, p: usize) -> usize {
        let mutable = self.mutable_pairs();
        match mutable.iter().position(|&q| q == p) {
            Some(s) => s,
            None => mutable.len() + self.frozen_pairs().iter().position(|&q| q == p).expect("pair"),
        }
    }

    /// A context with cluster names for the mutable pairs and frozen names for
    /// the frozen pairs.
    pub fn context(
        &self,
        cluster: &dyn Fn(usize) -> String,
        frozen: &dyn Fn(usize) -> String,
    ) -> Result<Arc<VariableContext>, QuiverError> {
        let c: Vec<String> = self.mutable_pairs().into_iter().map(cluster).collect();
        let f: Vec<String> = self.frozen_pairs().into_iter().map(frozen).collect();
        VariableContext::new(c, f).map_err(|e| QuiverError::Seed(e.into()))
    }

    fn check_context(&self, ctx: &VariableContext) -> Result<(), QuiverError> {
        let want = self.mutable_pairs().len();
        let want_frozen = self.n - want;
        if ctx.n_cluster() != want || ctx.n_frozen() != want_frozen {
            return Err(QuiverError::ContextSize {
                got: ctx.n_cluster(),
                got_frozen: ctx.n_frozen(),
                want,
                want_frozen,
            });
        }
        Ok(())
    }

    /// `F_j^Q` for every mutable pair `j`, in context slot order.
    pub fn exchange_polys(&self, ctx: &Arc<VariableContext>) -> Result<Vec<Polynomial>, QuiverError> {
        self.check_context(ctx)?;
        let slots: Vec<usize> = (0..self.n).map(|p| self.slot(p)).collect();
        let mut out = Vec::new();
        for j in self.mutable_pairs() {
            let mut plus = vec![0i32; ctx.len()];
            let mut minus = vec![0i32; ctx.len()];
            for i in 0..self.n {
                let s = self.b[i][j] + self.b[i + self.n][j];
                if s > 0 {
                    plus[slots[i]] += s as i32;
                } else if s < 0 {
                    minus[slots[i]] += (-s) as i32;
                }
            }
            let f = &Polynomial::monomial(ctx, plus, 1) + &Polynomial::monomial(ctx, minus, 1);
            out.push(f);
        }
        Ok(out)
    }
}

/// The seed `Σ_Q`; fails with a diagnostic when a polynomial is reducible.
pub fn lp_seed_from_quiver(q: &Quiver, ctx: &Arc<VariableContext>) -> Result<LPSeed, QuiverError> {
    let polys = q.exchange_polys(ctx)?;
    Ok(LPSeed::new(ctx.clone(), polys)?.with_provenance("quiver"))
}

/// Arrow multiplicities before 2-cycles are cancelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawQuiver {
    n: usize,
    arrows: Vec<Vec<u32>>,
    frozen: Vec<usize>,
}

impl RawQuiver {
    pub fn new(n: usize, frozen_pairs: &[usize]) -> Self {
        RawQuiver { n, arrows: vec![vec![0; 2 * n]; 2 * n], frozen: frozen_pairs.to_vec() }
    }

    pub fn add_arrow(&mut self, from: usize, to: usize) {
        self.arrows[from][to] += 1;
    }

    pub fn arrows(&self, from: usize, to: usize) -> u32 {
        self.arrows[from][to]
    }

    /// Cancels opposite arrows; the result is validated as anti-symmetric.
    pub fn cancel_two_cycles(&self) -> Result<Quiver, QuiverError> {
        let m = 2 * self.n;
        let b = (0..m)
            .map(|i| (0..m).map(|j| self.arrows[i][j] as i64 - self.arrows[j][i] as i64).collect())
            .collect();
        Quiver::new(self.n, b, &self.frozen)
    }
}

/// Cancels 2-cycles of a raw arrow count.
pub fn cancel_two_cycles(raw: &RawQuiver) -> Result<Quiver, QuiverError> {
    raw.cancel_two_cycles()
}
