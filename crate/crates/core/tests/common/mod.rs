//! Independent oracles: flip graphs computed from geometry rather than from
//! the surface module's combinatorics.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

/// Flip graph given by its maximal compatible sets.
pub struct OracleGraph {
    pub nodes: Vec<BTreeSet<usize>>,
    pub edges: Vec<(usize, usize)>,
}

fn cliques(n: usize, compat: &dyn Fn(usize, usize) -> bool) -> Vec<BTreeSet<usize>> {
    fn grow(
        r: &mut Vec<usize>,
        p: Vec<usize>,
        mut x: Vec<usize>,
        compat: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r.iter().copied().collect());
            }
            return;
        }
        let mut p = p;
        while let Some(v) = p.pop() {
            r.push(v);
            let np = p.iter().copied().filter(|&u| compat(u, v)).collect();
            let nx = x.iter().copied().filter(|&u| compat(u, v)).collect();
            grow(r, np, nx, compat, out);
            r.pop();
            x.push(v);
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), (0..n).collect(), Vec::new(), compat, &mut out);
    out.sort();
    out
}

fn flip_edges(nodes: &[BTreeSet<usize>]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if nodes[i].len() == nodes[j].len() && nodes[i].intersection(&nodes[j]).count() + 1 == nodes[i].len() {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Triangulations of a convex `m`-gon as sets of non-crossing diagonals.
pub fn polygon(m: usize) -> OracleGraph {
    let diags: Vec<(usize, usize)> =
        (0..m).flat_map(|a| (a + 2..m).map(move |b| (a, b))).filter(|&(a, b)| !(a == 0 && b == m - 1)).collect();
    let cross = |&(a, b): &(usize, usize), &(c, d): &(usize, usize)| (a < c && c < b && b < d) || (c < a && a < d && d < b);
    let compat = |i: usize, j: usize| !cross(&diags[i], &diags[j]);
    let nodes = cliques(diags.len(), &compat);
    let edges = flip_edges(&nodes);
    OracleGraph { nodes, edges }
}

/// A point of the universal cover of `M_n`: the strip `R x [0, 1]` with deck
/// transformation `g(x, y) = (x + n, 1 - y)`. Marked points sit at even `x`
/// on `y = 0` and at `x ≡ n (mod 2)` on `y = 1`.
type Pt = (i64, u8);
type Chord = (Pt, Pt);

fn g(p: Pt, k: i64, n: i64) -> Pt {
    (p.0 + k * n, if k.rem_euclid(2) == 0 { p.1 } else { 1 - p.1 })
}

/// Position on the boundary of the strip read as a circle.
fn key(p: Pt) -> (u8, i64) {
    if p.1 == 0 { (0, p.0) } else { (1, -p.0) }
}

fn crosses(a: Chord, b: Chord) -> bool {
    let (a0, a1) = (key(a.0).min(key(a.1)), key(a.0).max(key(a.1)));
    let inside = |p: Pt| a0 < key(p) && key(p) < a1;
    if [b.0, b.1].iter().any(|&p| key(p) == a0 || key(p) == a1) {
        return false;
    }
    inside(b.0) != inside(b.1)
}

fn image(c: Chord, k: i64, n: i64) -> Chord {
    (g(c.0, k, n), g(c.1, k, n))
}

const RANGE: i64 = 8;

fn normal(c: Chord, n: i64) -> Chord {
    (-RANGE..=RANGE)
        .map(|k| image(c, k, n))
        .map(|(p, q)| if key(p) <= key(q) { (p, q) } else { (q, p) })
        .filter(|(p, _)| p.1 == 0 && (0..2 * n).contains(&p.0))
        .min()
        .expect("orbit meets the fundamental domain")
}

fn simple(c: Chord, n: i64) -> bool {
    (-RANGE..=RANGE).filter(|&k| k != 0).all(|k| !crosses(c, image(c, k, n)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MobiusArc {
    Chord(Chord),
    Core,
}

/// Quasi-triangulations of `M_n` and their flips, from chords in the strip.
pub fn mobius(n: usize) -> (Vec<MobiusArc>, OracleGraph) {
    let n = n as i64;
    let mut set = BTreeSet::new();
    for a in (0..2 * n).step_by(2) {
        let p = (a, 0u8);
        for x in (a - 4 * n)..=(a + 4 * n) {
            for y in 0..2u8 {
                let q = (x, y);
                let marked = if y == 0 { x.rem_euclid(2) == 0 } else { (x - n).rem_euclid(2) == 0 };
                if !marked || q == p {
                    continue;
                }
                // Boundary segments and the loop around the cross-cap.
                if y == 0 && ((x - a).abs() == 2 || (x - a).abs() == 2 * n) {
                    continue;
                }
                let c = (p, q);
                if simple(c, n) {
                    set.insert(normal(c, n));
                }
            }
        }
    }
    let mut arcs: Vec<MobiusArc> = set.into_iter().map(MobiusArc::Chord).collect();
    arcs.push(MobiusArc::Core);
    let compatible = |u: usize, v: usize| match (arcs[u], arcs[v]) {
        (MobiusArc::Chord(a), MobiusArc::Chord(b)) => (-RANGE..=RANGE).all(|k| !crosses(a, image(b, k, n))),
        (MobiusArc::Core, MobiusArc::Chord(c)) | (MobiusArc::Chord(c), MobiusArc::Core) => {
            let same_line = c.0 .1 == c.1 .1;
            let crosses_once_to_twin = normal((c.0, g(c.0, 1, n)), n) == c || normal((c.0, g(c.0, -1, n)), n) == c;
            same_line || crosses_once_to_twin
        }
        (MobiusArc::Core, MobiusArc::Core) => false,
    };
    let nodes = cliques(arcs.len(), &compatible);
    let edges = flip_edges(&nodes);
    (arcs, OracleGraph { nodes, edges })
}

/// Degree sequence and edge count, for quick comparisons.
pub fn summary(nodes: usize, edges: &[(usize, usize)]) -> (usize, usize, Vec<usize>) {
    let mut deg = vec![0; nodes];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    deg.sort_unstable();
    (nodes, edges.len(), deg)
}

pub fn counts(map: &HashMap<usize, usize>) -> usize {
    map.len()
}
