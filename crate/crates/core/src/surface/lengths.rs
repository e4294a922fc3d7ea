//! Lambda lengths of quasi-arcs as rational functions of the initial ones.
//!
//! Every flip is a diagonal exchange in the underlying triangulation, where
//! the Ptolemy relation holds; a one-sided curve `c` inside the fold
//! `(α, α̃, δ)` has length `λ_δ / λ_α`. The flip of `α` across `c` uses the
//! relation of the Möbius strip with two marked points,
//! `λ_α λ_α' = (λ_p + λ_q)² / λ_c² + λ_p λ_q`.
//!
//! Exact lengths tell apart quasi-triangulations that the combinatorial code
//! identifies, such as two triangulations of an annulus related by a Dehn
//! twist.

use std::sync::Arc;

use super::seed::surface_context;
use super::triangulation::{Edge, FlipCase, QuasiTriangulation, Side};
use super::SurfaceError;
use crate::poly::{PolyError, Polynomial, RationalFunction, VariableContext};

/// One length per slot: the arc, or the one-sided curve held there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaLengths {
    ctx: Arc<VariableContext>,
    values: Vec<RationalFunction>,
}

fn poly_err(e: PolyError) -> SurfaceError {
    SurfaceError::Seed(e.into())
}

impl LambdaLengths {
    /// The initial lengths: slot `i` is `x_{i+1}`.
    pub fn initial(t: &QuasiTriangulation) -> Result<Self, SurfaceError> {
        if t.is_mobius_one() {
            return Err(SurfaceError::MobiusOne);
        }
        let ctx = surface_context(t.surface())?;
        let values = (0..t.rank())
            .map(|i| RationalFunction::from_polynomial(&Polynomial::var(&ctx, i)))
            .collect();
        Ok(LambdaLengths { ctx, values })
    }

    pub fn values(&self) -> &[RationalFunction] {
        &self.values
    }

    /// Lengths as text, sorted.
    pub fn sorted_strings(&self) -> Vec<String> {
        let mut v: Vec<String> = self.values.iter().map(|x| x.to_string()).collect();
        v.sort();
        v
    }

    fn constant(&self, p: Polynomial) -> RationalFunction {
        RationalFunction::from_polynomial(&p)
    }

    /// Length of the edge under a side: a curve slot stands for `δ = c·α`.
    fn side(&self, t: &QuasiTriangulation, s: Side, alpha_of: &[Option<usize>]) -> Result<RationalFunction, SurfaceError> {
        match s.edge {
            Edge::Arc(k) => match alpha_of[k] {
                Some(a) => self.values[k].mul(&self.values[a]).map_err(poly_err),
                None => Ok(self.values[k].clone()),
            },
            Edge::Boundary(k) if t.surface().boundary_variables => {
                Ok(self.constant(Polynomial::var(&self.ctx, t.rank() + k)))
            }
            Edge::Boundary(_) => Ok(self.constant(Polynomial::one(&self.ctx))),
        }
    }

    /// Lengths after flipping `slot` of `t` (`self` belongs to `t`).
    pub fn flip(&self, t: &QuasiTriangulation, slot: usize) -> Result<LambdaLengths, SurfaceError> {
        let case = t.flip_case(slot)?;
        let pockets = t.pockets();
        let mut alpha_of = vec![None; t.rank()];
        for p in &pockets {
            alpha_of[p.delta] = Some(p.alpha);
        }
        let len = |s: Side| self.side(t, s, &alpha_of);
        let new = match case {
            FlipCase::AcrossCurve => {
                let p = pockets.iter().find(|p| p.alpha == slot).expect("pocket of α");
                let (xp, xq) = (len(p.p)?, len(p.q)?);
                let c = &self.values[p.delta];
                let sum = xp.add(&xq).map_err(poly_err)?;
                let rhs = sum
                    .mul(&sum)
                    .and_then(|s2| s2.div(&c.mul(c)?))
                    .and_then(|a| a.add(&xp.mul(&xq)?))
                    .map_err(poly_err)?;
                rhs.div(&self.values[slot]).map_err(poly_err)?
            }
            _ => {
                let [x, y, z, w] = t.quad_sides(slot).ok_or(SurfaceError::UnknownArc(slot))?;
                let (x, y, z, w) = (len(x)?, len(y)?, len(z)?, len(w)?);
                let ptolemy = x.mul(&z).and_then(|a| a.add(&y.mul(&w)?)).map_err(poly_err)?;
                let old = len(Side::arc(slot))?;
                let diagonal = ptolemy.div(&old).map_err(poly_err)?;
                if case == FlipCase::ToCurve {
                    let (alpha, _) = t.fold_on_flip(slot).expect("fold");
                    diagonal.div(&self.values[alpha]).map_err(poly_err)?
                } else {
                    diagonal
                }
            }
        };
        let mut values = self.values.clone();
        values[slot] = new;
        Ok(LambdaLengths { ctx: self.ctx.clone(), values })
    }
}
