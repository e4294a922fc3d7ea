//! The orientable double cover and its adjacency quiver.

use super::triangulation::{Edge, QuasiTriangulation, Side};
use super::SurfaceError;
use crate::quiver::{Quiver, RawQuiver};

/// A σ-symmetric triangulation of the orientable double cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedTriangulation {
    /// Oriented cover triangles.
    pub triangles: Vec<[Side; 3]>,
    /// Deck involution on triangles.
    pub sigma: Vec<usize>,
    pub n_arcs: usize,
    pub n_boundary: usize,
    pub boundary_variables: bool,
}

impl LiftedTriangulation {
    /// Edges of the cover: every arc and segment has two lifts.
    pub fn n_edges(&self) -> usize {
        2 * (self.n_arcs + self.n_boundary)
    }

    pub fn sigma_side(s: Side) -> Side {
        s.twin()
    }

    /// Number of connected components of the cover.
    pub fn components(&self) -> usize {
        let n = self.triangles.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut first: std::collections::HashMap<Side, usize> = Default::default();
        for (t, tri) in self.triangles.iter().enumerate() {
            for s in tri {
                if let Some(&u) = first.get(s) {
                    let (a, b) = (find(&mut parent, u), find(&mut parent, t));
                    parent[a] = b;
                } else {
                    first.insert(*s, t);
                }
            }
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }
}

/// Lift of a triangulation; quasi-triangulations with one-sided curves have
/// no lift of this kind.
pub fn double_cover(t: &QuasiTriangulation) -> Result<LiftedTriangulation, SurfaceError> {
    if !t.is_triangulation() || t.is_mobius_one() {
        return Err(SurfaceError::HasOneSidedCurve);
    }
    let triangles = t.cover_triangles().to_vec();
    let sigma = (0..triangles.len()).map(|i| i ^ 1).collect();
    Ok(LiftedTriangulation {
        triangles,
        sigma,
        n_arcs: t.rank(),
        n_boundary: t.surface().n_boundary_segments(),
        boundary_variables: t.surface().boundary_variables,
    })
}

/// Quiver vertex of a side: arcs first, then boundary segments when they
/// carry variables; the second lift is offset by the number of pairs.
pub(crate) fn vertex(s: Side, n_arcs: usize, pairs: usize, with_boundary: bool) -> Option<usize> {
    let p = match s.edge {
        Edge::Arc(k) => k,
        Edge::Boundary(k) if with_boundary => n_arcs + k,
        Edge::Boundary(_) => return None,
    };
    Some(p + if s.lift { pairs } else { 0 })
}

/// Arrow counts `x -> y -> z -> x` for every cover triangle `(x, y, z)`.
pub(crate) fn raw_quiver(
    triangles: &[[Side; 3]],
    n_arcs: usize,
    n_boundary: usize,
    with_boundary: bool,
) -> RawQuiver {
    let pairs = n_arcs + if with_boundary { n_boundary } else { 0 };
    let frozen: Vec<usize> = (n_arcs..pairs).collect();
    let mut raw = RawQuiver::new(pairs, &frozen);
    for t in triangles {
        for i in 0..3 {
            let a = vertex(t[i], n_arcs, pairs, with_boundary);
            let b = vertex(t[(i + 1) % 3], n_arcs, pairs, with_boundary);
            if let (Some(a), Some(b)) = (a, b) {
                raw.add_arrow(a, b);
            }
        }
    }
    raw
}

/// `Q_T̄`: one arrow per consecutive pair of sides, 2-cycles cancelled.
/// Boundary segments become frozen pairs when boundary variables are on.
pub fn adjacency_quiver(lt: &LiftedTriangulation) -> Result<Quiver, SurfaceError> {
    let raw = raw_quiver(&lt.triangles, lt.n_arcs, lt.n_boundary, lt.boundary_variables);
    Ok(raw.cancel_two_cycles()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{initial_quasi_triangulation, MarkedSurface};

    #[test]
    fn orientable_cover_splits() {
        let t = initial_quasi_triangulation(&MarkedSurface::annulus(2, 2).unwrap()).unwrap();
        let lt = double_cover(&t).unwrap();
        assert_eq!(lt.components(), 2);
        assert_eq!(lt.n_edges(), 2 * (4 + 4));
        let m = initial_quasi_triangulation(&MarkedSurface::mobius(2).unwrap()).unwrap();
        assert_eq!(double_cover(&m).unwrap().components(), 1);
    }

    #[test]
    fn sigma_reverses_orientation() {
        let t = initial_quasi_triangulation(&MarkedSurface::mobius(3).unwrap()).unwrap();
        let lt = double_cover(&t).unwrap();
        for (i, tri) in lt.triangles.iter().enumerate() {
            let img = &lt.triangles[lt.sigma[i]];
            assert_eq!(*img, [tri[2].twin(), tri[1].twin(), tri[0].twin()]);
        }
    }

    #[test]
    fn hexagon_quiver_is_two_mirror_a3() {
        let t = initial_quasi_triangulation(&MarkedSurface::polygon(6).unwrap().with_boundary_variables(false)).unwrap();
        let q = adjacency_quiver(&double_cover(&t).unwrap()).unwrap();
        assert!(q.is_antisymmetric());
        let arrows: i64 = q.matrix().iter().flatten().filter(|&&w| w > 0).sum();
        assert_eq!(arrows, 4);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(q.entry(i, j + 3), 0);
            }
        }
    }

    #[test]
    fn m2_quiver_has_the_bad_path() {
        let t = initial_quasi_triangulation(&MarkedSurface::mobius(2).unwrap()).unwrap();
        let q = adjacency_quiver(&double_cover(&t).unwrap()).unwrap();
        let e = t.non_t_mutable()[0];
        assert!(q.has_bad_path(e));
        assert!(!q.has_bad_path(1 - e));
    }
}
