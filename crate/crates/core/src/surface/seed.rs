//! LP seeds of quasi-triangulations.
//!
//! Triangulations use the exchange polynomials of the adjacency quiver. When
//! a one-sided curve `c` sits inside a folded triangle `(α, α̃, δ)` with
//! `Δ = (δ, p, q)` behind it, the polynomials are read off the underlying
//! triangulation with `x_δ = x_c x_α`, except that
//!
//! * `F_c = x_p + x_q`,
//! * `F_α = (x_p + x_q)² + x_c² x_p x_q`.

use std::sync::Arc;

use super::lift::{adjacency_quiver, double_cover, raw_quiver, vertex};
use super::triangulation::{arc_name, boundary_name, Edge, QuasiTriangulation, Side};
use super::{MarkedSurface, SurfaceError};
use crate::lp_core::LPSeed;
use crate::poly::{Exponents, Polynomial, VariableContext};

/// Cluster names `x1..xn`, frozen names `b1..bm` when boundary variables are on.
pub fn surface_context(s: &MarkedSurface) -> Result<Arc<VariableContext>, SurfaceError> {
    let n = s.rank()?;
    let frozen: Vec<String> = if s.boundary_variables {
        (0..s.n_boundary_segments()).map(boundary_name).collect()
    } else {
        Vec::new()
    };
    VariableContext::new((0..n).map(arc_name), frozen).map_err(|e| SurfaceError::Seed(e.into()))
}

/// Exponent vector of the length attached to a side; `None` stands for 1.
fn side_monomial(t: &QuasiTriangulation, ctx: &VariableContext, s: Side, alpha_of: &[Option<usize>]) -> Exponents {
    let mut e = vec![0; ctx.len()];
    match s.edge {
        Edge::Arc(k) => {
            e[k] += 1;
            if let Some(a) = alpha_of[k] {
                e[a] += 1;
            }
        }
        Edge::Boundary(k) if t.surface().boundary_variables => e[t.rank() + k] += 1,
        Edge::Boundary(_) => {}
    }
    e
}

/// The exchange polynomials of `t` in the context of [`surface_context`],
/// without any validation.
pub fn exchange_polynomials(t: &QuasiTriangulation) -> Result<Vec<Polynomial>, SurfaceError> {
    if t.is_mobius_one() {
        return Err(SurfaceError::MobiusOne);
    }
    let ctx = surface_context(t.surface())?;
    if t.is_triangulation() {
        let q = adjacency_quiver(&double_cover(t)?)?;
        return Ok(q.exchange_polys(&ctx)?);
    }
    let n = t.rank();
    let with_b = t.surface().boundary_variables;
    let nb = t.surface().n_boundary_segments();
    let pairs = n + if with_b { nb } else { 0 };
    let raw = raw_quiver(t.cover_triangles(), n, nb, with_b);
    let b = |i: usize, j: usize| raw.arrows(i, j) as i64 - raw.arrows(j, i) as i64;
    let pockets = t.pockets();
    let mut alpha_of = vec![None; n];
    for p in &pockets {
        alpha_of[p.delta] = Some(p.alpha);
    }
    let pair_side = |i: usize| {
        if i < n {
            Side::arc(i)
        } else {
            Side::new(Edge::Boundary(i - n), false)
        }
    };
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        if let Some(p) = pockets.iter().find(|p| p.alpha == j) {
            let xp = Polynomial::monomial(&ctx, side_monomial(t, &ctx, p.p, &alpha_of), 1);
            let xq = Polynomial::monomial(&ctx, side_monomial(t, &ctx, p.q, &alpha_of), 1);
            let mut c2 = vec![0; ctx.len()];
            c2[p.delta] = 2;
            let sum = &xp + &xq;
            let f = &sum.pow(2) + &(&xp * &xq).mul_monomial(&c2);
            out.push(f);
            continue;
        }
        let vj = vertex(Side::arc(j), n, pairs, with_b).expect("arc vertex");
        let mut plus = vec![0; ctx.len()];
        let mut minus = vec![0; ctx.len()];
        for i in 0..pairs {
            let s = b(i, vj) + b(i + pairs, vj);
            if s == 0 {
                continue;
            }
            let e = side_monomial(t, &ctx, pair_side(i), &alpha_of);
            let target = if s > 0 { &mut plus } else { &mut minus };
            for (x, y) in target.iter_mut().zip(&e) {
                *x += y * s.unsigned_abs() as i32;
            }
        }
        out.push(&Polynomial::monomial(&ctx, plus, 1) + &Polynomial::monomial(&ctx, minus, 1));
    }
    Ok(out)
}

fn duplicates(polys: &[Polynomial]) -> Vec<(usize, usize)> {
    let canon: Vec<Polynomial> = polys.iter().map(|p| p.canonical_unit()).collect();
    let mut out = Vec::new();
    for i in 0..canon.len() {
        for j in i + 1..canon.len() {
            if canon[i] == canon[j] {
                out.push((i, j));
            }
        }
    }
    out
}

/// `Σ_T`. With boundary variables off, coinciding exchange polynomials are
/// reported instead of a seed.
pub fn seed_from_quasi_triangulation(t: &QuasiTriangulation) -> Result<LPSeed, SurfaceError> {
    let polys = exchange_polynomials(t)?;
    if !t.surface().boundary_variables {
        let pairs = duplicates(&polys);
        if !pairs.is_empty() {
            return Err(SurfaceError::DuplicatePolynomials { pairs });
        }
    }
    let ctx = surface_context(t.surface())?;
    Ok(LPSeed::new(ctx, polys)?.with_provenance("surface"))
}

/// `Σ_T` without the seed checks, for inspecting exceptional surfaces.
pub fn seed_unchecked(t: &QuasiTriangulation) -> Result<LPSeed, SurfaceError> {
    let polys = exchange_polynomials(t)?;
    let ctx = surface_context(t.surface())?;
    Ok(LPSeed::new_unchecked(ctx, polys)?.with_provenance("surface"))
}

/// Arcs `i` with a path `k -> i -> k̃` in the adjacency quiver, found
/// combinatorially: their flip folds a triangle.
pub fn detect_m2(t: &QuasiTriangulation) -> Vec<usize> {
    t.non_t_mutable()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp_core::{normalize, validate_seed};
    use crate::surface::initial_quasi_triangulation;

    fn poly(s: &LPSeed, text: &str) -> Polynomial {
        Polynomial::parse(s.ctx(), text).unwrap()
    }

    #[test]
    fn m2_seed() {
        let t = initial_quasi_triangulation(&MarkedSurface::mobius(2).unwrap()).unwrap();
        let s = seed_from_quasi_triangulation(&t).unwrap();
        let e = detect_m2(&t)[0];
        let a = 1 - e;
        let (ne, na) = (arc_name(e), arc_name(a));
        assert_eq!(s.poly(e), &poly(&s, "b1 + b2"));
        assert_eq!(s.poly(a), &poly(&s, &format!("{ne}^2 + b1*b2")));
        let _ = na;
    }

    #[test]
    fn m2_pocket_seed() {
        let t = initial_quasi_triangulation(&MarkedSurface::mobius(2).unwrap()).unwrap();
        let e = detect_m2(&t)[0];
        let u = t.flip(e).unwrap();
        let s = seed_from_quasi_triangulation(&u).unwrap();
        let c = arc_name(e);
        assert_eq!(s.poly(e), &poly(&s, "b1 + b2"));
        assert_eq!(s.poly(1 - e), &poly(&s, &format!("(b1 + b2)^2 + {c}^2*b1*b2")));
        let (fhat, _) = normalize(&s, 1 - e).unwrap();
        assert_eq!(fhat, poly(&s, &format!("(b1 + b2)^2*{c}^-2 + b1*b2")));
    }

    #[test]
    fn hexagon_without_boundary_variables_is_exceptional() {
        let s = MarkedSurface::polygon(6).unwrap().with_boundary_variables(false);
        let t = initial_quasi_triangulation(&s).unwrap();
        let err = seed_from_quasi_triangulation(&t).unwrap_err();
        assert!(matches!(err, SurfaceError::DuplicatePolynomials { .. }));
        let raw = seed_unchecked(&t).unwrap();
        assert!(validate_seed(&raw).is_ok());
        let with = initial_quasi_triangulation(&s.clone().with_boundary_variables(true)).unwrap();
        assert!(seed_from_quasi_triangulation(&with).is_ok());
    }

    #[test]
    fn mobius_one_has_no_seed() {
        let t = initial_quasi_triangulation(&MarkedSurface::mobius(1).unwrap()).unwrap();
        assert_eq!(seed_from_quasi_triangulation(&t).unwrap_err(), SurfaceError::MobiusOne);
    }
}
