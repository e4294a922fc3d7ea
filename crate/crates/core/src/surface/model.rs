//! The polygon model: a surface is cut open into a polygon whose sides carry
//! boundary segments and glued letter pairs, and the polygon is fanned.
//!
//! Word layout: `s_1 .. s_{m1-1} [blocks] s_{m1}` where each block is a handle
//! `a b a⁻¹ b⁻¹`, a cross-cap `c c`, or a tunnel `e t_1 .. t_k e⁻¹` to a further
//! boundary component. Every block starts and ends at the same marked point, so
//! all polygon vertices are marked points.

use super::triangulation::{Edge, QuasiTriangulation, Side};
use super::{MarkedSurface, SurfaceError};

#[derive(Debug, Clone, Copy)]
enum Letter {
    Boundary(usize),
    Pair { id: usize, first: bool, crosscap: bool },
}

fn word(s: &MarkedSurface) -> (Vec<Letter>, usize) {
    let m1 = s.boundary[0] as usize;
    let mut next_pair = 0;
    let mut pair = |w: &mut Vec<Letter>, crosscap: bool| {
        let id = next_pair;
        next_pair += 1;
        w.push(Letter::Pair { id, first: true, crosscap });
        id
    };
    let mut w: Vec<Letter> = (0..m1 - 1).map(Letter::Boundary).collect();
    for _ in 0..s.orientable_genus {
        let a = pair(&mut w, false);
        let b = pair(&mut w, false);
        w.push(Letter::Pair { id: a, first: false, crosscap: false });
        w.push(Letter::Pair { id: b, first: false, crosscap: false });
    }
    for _ in 0..s.cross_caps {
        let c = pair(&mut w, true);
        w.push(Letter::Pair { id: c, first: false, crosscap: true });
    }
    let mut seg = m1;
    for &m in &s.boundary[1..] {
        let e = pair(&mut w, false);
        for _ in 0..m {
            w.push(Letter::Boundary(seg));
            seg += 1;
        }
        w.push(Letter::Pair { id: e, first: false, crosscap: false });
    }
    w.push(Letter::Boundary(m1 - 1));
    (w, next_pair)
}

fn side_of(l: Letter) -> Side {
    match l {
        Letter::Boundary(k) => Side::new(Edge::Boundary(k), false),
        Letter::Pair { id, first, crosscap } => Side::new(Edge::Arc(id), crosscap && !first),
    }
}

/// Sheet-one triangles of the fan from polygon vertex `r`.
fn fan(w: &[Letter], pairs: usize, r: usize) -> Vec<[Side; 3]> {
    let n = w.len();
    let diag = |j: usize| Side::new(Edge::Arc(pairs + j - 2), false);
    (1..=n - 2)
        .map(|j| {
            let a = side_of(w[(r + j) % n]);
            let b = if j == n - 2 { side_of(w[(r + n - 1) % n]) } else { diag(j + 1) };
            let c = if j == 1 { side_of(w[r]) } else { diag(j) };
            [a, b, c]
        })
        .collect()
}

fn degenerate(t: &[Side; 3]) -> bool {
    (0..3).any(|i| (i + 1..3).any(|j| t[i].edge == t[j].edge))
}

pub(super) fn initial(s: &MarkedSurface) -> Result<QuasiTriangulation, SurfaceError> {
    let n_arcs = s.rank()?;
    let (w, pairs) = word(s);
    let apex = (0..w.len()).find(|&r| !fan(&w, pairs, r).iter().any(degenerate));
    let sheet = match apex {
        Some(r) => fan(&w, pairs, r),
        // M_1 is a single folded triangle; it starts in its arc state.
        None if s.is_mobius_one() => fan(&w, pairs, 0),
        None => {
            return Err(SurfaceError::InvalidSurface(format!(
                "no fan of the polygon model of {} avoids folded triangles",
                s.describe()
            )))
        }
    };
    debug_assert_eq!(pairs + w.len() - 3, n_arcs);
    let tris = sheet.iter().flat_map(|t| [*t, QuasiTriangulation::sigma(t)]).collect();
    QuasiTriangulation::from_parts(s.clone(), n_arcs, tris, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arc_count_matches_rank() {
        for s in [
            MarkedSurface::polygon(6).unwrap(),
            MarkedSurface::annulus(2, 2).unwrap(),
            MarkedSurface::mobius(2).unwrap(),
            MarkedSurface::mobius(5).unwrap(),
            MarkedSurface::new(1, 0, vec![1]).unwrap(),
            MarkedSurface::new(0, 2, vec![1]).unwrap(),
            MarkedSurface::new(1, 1, vec![2, 1]).unwrap(),
        ] {
            let t = initial(&s).unwrap();
            assert_eq!(t.rank(), s.rank().unwrap(), "{}", s.describe());
            assert!(t.one_sided_curves().is_empty(), "{}", s.describe());
        }
    }

    #[test]
    fn hexagon_is_a_fan_from_the_first_vertex() {
        let t = initial(&MarkedSurface::polygon(6).unwrap()).unwrap();
        // Each diagonal of a fan meets the apex, so boundary segment 1 and 6
        // share a triangle with the first and last diagonal.
        let tris = t.quotient_triangles();
        assert_eq!(tris.len(), 4);
        assert!(tris.iter().any(|tri| {
            tri.iter().any(|s| s.edge == Edge::Boundary(0))
                && tri.iter().any(|s| s.edge == Edge::Boundary(1))
        }));
    }

    #[test]
    fn mobius_one_starts_in_its_arc_state() {
        let t = initial(&MarkedSurface::mobius(1).unwrap()).unwrap();
        assert_eq!(t.rank(), 1);
        assert!(t.is_mobius_one());
        assert!(t.one_sided_curves().is_empty());
    }
}
