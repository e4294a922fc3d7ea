//! Quasi-triangulations stored as σ-symmetric triangulations of the double
//! cover.
//!
//! Triangles come in pairs: `tris[2k + 1] = σ(tris[2k])` with
//! `σ(a, b, c) = (c̃, b̃, ã)`. Every arc side `(edge, lift)` occurs in exactly two
//! cover triangles and every boundary side in one.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{MarkedSurface, SurfaceError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    Arc(usize),
    Boundary(usize),
}

/// One lift of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Side {
    pub edge: Edge,
    pub lift: bool,
}

impl Side {
    pub fn new(edge: Edge, lift: bool) -> Self {
        Side { edge, lift }
    }

    pub fn arc(k: usize) -> Self {
        Side::new(Edge::Arc(k), false)
    }

    pub fn twin(self) -> Self {
        Side { edge: self.edge, lift: !self.lift }
    }

    pub fn arc_id(self) -> Option<usize> {
        match self.edge {
            Edge::Arc(k) => Some(k),
            Edge::Boundary(_) => None,
        }
    }
}

/// Cluster-side name of slot `i`.
pub fn arc_name(i: usize) -> String {
    format!("x{}", i + 1)
}

/// Frozen name of boundary segment `k`.
pub fn boundary_name(k: usize) -> String {
    format!("b{}", k + 1)
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.edge {
            Edge::Arc(k) => f.write_str(&arc_name(k))?,
            Edge::Boundary(k) => f.write_str(&boundary_name(k))?,
        }
        if self.lift {
            f.write_str("~")?;
        }
        Ok(())
    }
}

impl FromStr for Side {
    type Err = SurfaceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SurfaceError::Format(format!("bad side `{s}`"));
        let (body, lift) = match s.strip_suffix('~') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let (kind, num) = body.split_at(body.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let k: usize = num.parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(bad());
        }
        let edge = match kind {
            "x" => Edge::Arc(k - 1),
            "b" => Edge::Boundary(k - 1),
            _ => return Err(bad()),
        };
        Ok(Side::new(edge, lift))
    }
}

impl Serialize for Side {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Side {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuasiArcKind {
    Arc,
    OneSidedCurve,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiArc {
    pub id: String,
    pub kind: QuasiArcKind,
}

/// Cell records of a quasi-triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Region {
    Triangle { sides: [Side; 3] },
    /// A one-sided curve with the unique arc crossing it; `sides` bound the
    /// Möbius strip with two marked points that contains both.
    M1Pocket { curve: usize, arc: usize, sides: [Side; 2] },
    /// Two triangles glued along `inner` whose flip yields a one-sided curve.
    M2Core { inner: usize, loop_arc: usize, sides: [Side; 2] },
}

/// Which rule a flip follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlipCase {
    /// Diagonal exchange in a quadrilateral.
    Ordinary,
    /// An arc bounding a Möbius strip with two marked points turns into the
    /// one-sided curve of that strip.
    ToCurve,
    /// A one-sided curve turns back into an arc.
    FromCurve,
    /// The arc crossing a one-sided curve moves to the other marked point.
    AcrossCurve,
}

/// A folded triangle `(α, α̃, δ)` and the triangle `Δ = (δ, p, q)` behind it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Pocket {
    pub alpha: usize,
    pub delta: usize,
    pub inner: usize,
    pub inner_pos: usize,
    pub p: Side,
    pub q: Side,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuasiTriangulation {
    surface: MarkedSurface,
    n_arcs: usize,
    tris: Vec<[Side; 3]>,
    /// Only for `M_1`: the single slot holds the one-sided curve.
    m1_curve: bool,
}

/// JSON form; `triangles` lists one cover triangle per quotient triangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub surface: MarkedSurface,
    pub quasi_arcs: Vec<QuasiArc>,
    pub triangles: Vec<[Side; 3]>,
    #[serde(default)]
    pub regions: Vec<Region>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub mobius_one_curve: bool,
}

fn rotate(t: &[Side; 3], k: usize) -> [Side; 3] {
    [t[k % 3], t[(k + 1) % 3], t[(k + 2) % 3]]
}

fn folded_arc(t: &[Side; 3]) -> Option<(usize, usize)> {
    for i in 0..3 {
        let j = (i + 1) % 3;
        if t[i].edge == t[j].edge && t[i].lift != t[j].lift {
            if let Edge::Arc(k) = t[i].edge {
                return Some((k, (i + 2) % 3));
            }
        }
    }
    None
}

impl QuasiTriangulation {
    /// `σ(a, b, c) = (c̃, b̃, ã)`.
    pub fn sigma(t: &[Side; 3]) -> [Side; 3] {
        [t[2].twin(), t[1].twin(), t[0].twin()]
    }

    pub(crate) fn from_parts(
        surface: MarkedSurface,
        n_arcs: usize,
        tris: Vec<[Side; 3]>,
        m1_curve: bool,
    ) -> Result<Self, SurfaceError> {
        let t = QuasiTriangulation { surface, n_arcs, tris, m1_curve };
        t.check()?;
        Ok(t)
    }

    /// Builds a state from sheet representatives: one oriented cover triangle
    /// per quotient triangle, σ-partners implied.
    pub fn from_triangles(
        surface: &MarkedSurface,
        triangles: &[[Side; 3]],
    ) -> Result<Self, SurfaceError> {
        let n_arcs = surface.rank()?;
        let tris = triangles.iter().flat_map(|t| [*t, Self::sigma(t)]).collect();
        Self::from_parts(surface.clone(), n_arcs, tris, false)
    }

    fn check(&self) -> Result<(), SurfaceError> {
        let bad = |m: String| Err(SurfaceError::InvalidTriangulation(m));
        let m = self.surface.n_boundary_segments();
        if self.n_arcs != self.surface.rank()? {
            return bad(format!("{} arcs, rank is {}", self.n_arcs, self.surface.rank()?));
        }
        if !self.tris.len().is_multiple_of(2) || 3 * self.tris.len() / 2 != 2 * self.n_arcs + m {
            return bad(format!("{} cover triangles for {} arcs and {m} segments", self.tris.len(), self.n_arcs));
        }
        for k in 0..self.tris.len() / 2 {
            if self.tris[2 * k + 1] != Self::sigma(&self.tris[2 * k]) {
                return bad(format!("triangle {} is not the mirror of {}", 2 * k + 1, 2 * k));
            }
        }
        let mut count = vec![0usize; 2 * (self.n_arcs + m)];
        for t in &self.tris {
            for s in t {
                match s.edge {
                    Edge::Arc(k) if k >= self.n_arcs => return bad(format!("arc {} out of range", k + 1)),
                    Edge::Boundary(k) if k >= m => return bad(format!("segment {} out of range", k + 1)),
                    _ => count[self.side_index(*s)] += 1,
                }
            }
            if (0..3).any(|i| t[i] == t[(i + 1) % 3]) {
                return bad(format!("triangle {:?} uses a side twice", t));
            }
            if let Some((_, third)) = folded_arc(t) {
                if matches!(t[third].edge, Edge::Boundary(_)) && !self.surface.is_mobius_one() {
                    return bad("self-folded triangle on a boundary segment".into());
                }
            }
        }
        for (i, &c) in count.iter().enumerate() {
            let want = if i < 2 * self.n_arcs { 2 } else { 1 };
            if c != want {
                return bad(format!("side {} occurs {c} times", self.side_at(i)));
            }
        }
        let reach = self.component(0).len();
        let whole = reach == self.tris.len();
        if whole == self.surface.is_orientable() {
            return bad("double cover connectivity disagrees with orientability".into());
        }
        if self.m1_curve && !self.surface.is_mobius_one() {
            return bad("one-sided curve flag outside M_1".into());
        }
        Ok(())
    }

    fn side_index(&self, s: Side) -> usize {
        let e = match s.edge {
            Edge::Arc(k) => k,
            Edge::Boundary(k) => self.n_arcs + k,
        };
        2 * e + s.lift as usize
    }

    fn side_at(&self, i: usize) -> Side {
        let e = i / 2;
        let edge = if e < self.n_arcs { Edge::Arc(e) } else { Edge::Boundary(e - self.n_arcs) };
        Side::new(edge, i % 2 == 1)
    }

    /// `(triangle, position)` of every occurrence, indexed by side.
    fn occurrences(&self) -> Vec<Vec<(usize, usize)>> {
        let mut occ = vec![Vec::with_capacity(2); 2 * (self.n_arcs + self.surface.n_boundary_segments())];
        for (t, tri) in self.tris.iter().enumerate() {
            for (p, s) in tri.iter().enumerate() {
                occ[self.side_index(*s)].push((t, p));
            }
        }
        occ
    }

    fn locate(&self, s: Side) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(2);
        for (t, tri) in self.tris.iter().enumerate() {
            for (p, x) in tri.iter().enumerate() {
                if *x == s {
                    out.push((t, p));
                }
            }
        }
        out
    }

    /// Cover triangles reachable from triangle `start`.
    fn component(&self, start: usize) -> Vec<usize> {
        let occ = self.occurrences();
        let mut seen = vec![false; self.tris.len()];
        let mut stack = vec![start];
        seen[start] = true;
        let mut out = Vec::new();
        while let Some(t) = stack.pop() {
            out.push(t);
            for s in &self.tris[t] {
                for &(u, _) in &occ[self.side_index(*s)] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        out
    }

    pub fn surface(&self) -> &MarkedSurface {
        &self.surface
    }

    pub fn rank(&self) -> usize {
        self.n_arcs
    }

    pub fn is_mobius_one(&self) -> bool {
        self.surface.is_mobius_one()
    }

    pub fn cover_triangles(&self) -> &[[Side; 3]] {
        &self.tris
    }

    /// One representative per quotient triangle.
    pub fn quotient_triangles(&self) -> Vec<[Side; 3]> {
        self.tris.iter().step_by(2).copied().collect()
    }

    pub(crate) fn pockets(&self) -> Vec<Pocket> {
        if self.is_mobius_one() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for k in 0..self.tris.len() / 2 {
            let f = &self.tris[2 * k];
            let Some((alpha, third)) = folded_arc(f) else { continue };
            let d = f[third];
            let Edge::Arc(delta) = d.edge else { continue };
            let (inner, inner_pos) = self
                .locate(d)
                .into_iter()
                .find(|&(t, _)| t / 2 != k)
                .expect("δ borders a second triangle");
            let r = rotate(&self.tris[inner], inner_pos);
            out.push(Pocket { alpha, delta, inner, inner_pos, p: r[1], q: r[2] });
        }
        out
    }

    /// Slots holding one-sided curves.
    pub fn one_sided_curves(&self) -> Vec<usize> {
        if self.is_mobius_one() {
            return if self.m1_curve { vec![0] } else { Vec::new() };
        }
        let mut v: Vec<usize> = self.pockets().iter().map(|p| p.delta).collect();
        v.sort_unstable();
        v
    }

    pub fn is_triangulation(&self) -> bool {
        self.one_sided_curves().is_empty()
    }

    pub fn kind(&self, slot: usize) -> QuasiArcKind {
        if self.one_sided_curves().contains(&slot) {
            QuasiArcKind::OneSidedCurve
        } else {
            QuasiArcKind::Arc
        }
    }

    pub fn quasi_arcs(&self) -> Vec<QuasiArc> {
        let curves = self.one_sided_curves();
        (0..self.n_arcs)
            .map(|i| QuasiArc {
                id: arc_name(i),
                kind: if curves.contains(&i) { QuasiArcKind::OneSidedCurve } else { QuasiArcKind::Arc },
            })
            .collect()
    }

    /// The two cover triangles on the lift-zero side of arc `k`, rotated so
    /// that the arc comes first.
    fn quad(&self, k: usize) -> Option<[(usize, [Side; 3]); 2]> {
        let occ = self.locate(Side::arc(k));
        if occ.len() != 2 || occ[0].0 / 2 == occ[1].0 / 2 {
            return None;
        }
        let a = (occ[0].0, rotate(&self.tris[occ[0].0], occ[0].1));
        let b = (occ[1].0, rotate(&self.tris[occ[1].0], occ[1].1));
        Some([a, b])
    }

    /// Sides `[x, y, z, w]` of the quadrilateral around arc `k`, in cyclic
    /// order: `x, z` and `y, w` are opposite.
    pub(crate) fn quad_sides(&self, k: usize) -> Option<[Side; 4]> {
        let [(_, t1), (_, t2)] = self.quad(k)?;
        Some([t1[1], t1[2], t2[1], t2[2]])
    }

    /// For an arc whose ordinary flip would fold a triangle: the arc that
    /// becomes the crossing arc and the two outer sides.
    pub(crate) fn fold_on_flip(&self, k: usize) -> Option<(usize, [Side; 2])> {
        let [(_, t1), (_, t2)] = self.quad(k)?;
        let (x, y, z, w) = (t1[1], t1[2], t2[1], t2[2]);
        if y.edge == z.edge && y.lift != z.lift {
            if let Edge::Arc(a) = y.edge {
                return Some((a, [w, x]));
            }
        }
        if w.edge == x.edge && w.lift != x.lift {
            if let Edge::Arc(a) = w.edge {
                return Some((a, [y, z]));
            }
        }
        None
    }

    pub fn flip_case(&self, slot: usize) -> Result<FlipCase, SurfaceError> {
        if slot >= self.n_arcs {
            return Err(SurfaceError::UnknownArc(slot));
        }
        if self.is_mobius_one() {
            return Ok(if self.m1_curve { FlipCase::FromCurve } else { FlipCase::ToCurve });
        }
        let pockets = self.pockets();
        if pockets.iter().any(|p| p.alpha == slot) {
            return Ok(FlipCase::AcrossCurve);
        }
        if pockets.iter().any(|p| p.delta == slot) {
            return Ok(FlipCase::FromCurve);
        }
        Ok(if self.fold_on_flip(slot).is_some() { FlipCase::ToCurve } else { FlipCase::Ordinary })
    }

    /// The quasi-triangulation that differs from this one exactly in `slot`.
    pub fn flip(&self, slot: usize) -> Result<QuasiTriangulation, SurfaceError> {
        let case = self.flip_case(slot)?;
        let mut out = self.clone();
        if self.is_mobius_one() {
            out.m1_curve = !self.m1_curve;
            return Ok(out);
        }
        if case == FlipCase::AcrossCurve {
            let p = self.pockets().into_iter().find(|p| p.alpha == slot).expect("pocket");
            let d = rotate(&self.tris[p.inner], p.inner_pos)[0];
            let nt = [d, p.q, p.p];
            out.tris[p.inner] = nt;
            out.tris[p.inner ^ 1] = Self::sigma(&nt);
            return Ok(out);
        }
        let [(i1, t1), (i2, t2)] = self.quad(slot).ok_or(SurfaceError::UnknownArc(slot))?;
        let e = t1[0];
        let n1 = [e, t1[2], t2[1]];
        let n2 = [e, t2[2], t1[1]];
        out.tris[i1] = n1;
        out.tris[i1 ^ 1] = Self::sigma(&n1);
        out.tris[i2] = n2;
        out.tris[i2 ^ 1] = Self::sigma(&n2);
        debug_assert!(out.check().is_ok(), "flip broke the complex: {:?}", out.check());
        Ok(out)
    }

    /// All neighbours, one per slot.
    pub fn flips(&self) -> Vec<QuasiTriangulation> {
        (0..self.n_arcs).map(|i| self.flip(i).expect("every quasi-arc flips")).collect()
    }

    fn code_from(&self, occ: &[Vec<(usize, usize)>], start: (usize, usize)) -> Vec<u32> {
        let m = self.surface.n_boundary_segments();
        let mut arc_id = vec![u32::MAX; self.n_arcs];
        let mut arc_base = vec![false; self.n_arcs];
        let mut next = 0u32;
        let mut seen = vec![false; self.tris.len()];
        let mut code = Vec::with_capacity(3 * self.tris.len() + 1);
        code.push(self.m1_curve as u32);
        let mut queue = VecDeque::from([start]);
        seen[start.0] = true;
        while let Some((t, entry)) = queue.pop_front() {
            for i in 0..3 {
                let pos = (entry + i) % 3;
                let s = self.tris[t][pos];
                match s.edge {
                    // Boundary lifts are fixed data: they pin the direction of
                    // every segment, hence the marked points.
                    Edge::Boundary(k) => code.push(2 * k as u32 + s.lift as u32),
                    Edge::Arc(k) => {
                        if arc_id[k] == u32::MAX {
                            arc_id[k] = next;
                            arc_base[k] = s.lift;
                            next += 1;
                        }
                        code.push(2 * m as u32 + 2 * arc_id[k] + (s.lift ^ arc_base[k]) as u32);
                        for &(u, up) in &occ[self.side_index(s)] {
                            if u != t && !seen[u] {
                                seen[u] = true;
                                queue.push_back((u, up));
                            }
                        }
                    }
                }
            }
        }
        code
    }

    /// A complete invariant up to renaming arcs and swapping arc lifts, with
    /// boundary segments and their directions fixed. The walk starts at the
    /// first lift of the first segment; starting at the other lift would read
    /// the complex through a reflection.
    pub fn canonical_code(&self) -> Vec<u32> {
        let occ = self.occurrences();
        let b0 = Side::new(Edge::Boundary(0), false);
        self.code_from(&occ, occ[self.side_index(b0)][0])
    }

    /// Same quasi-triangulation (isotopy is judged combinatorially).
    pub fn equivalent(&self, other: &QuasiTriangulation) -> bool {
        self.surface == other.surface && self.canonical_code() == other.canonical_code()
    }

    /// Arcs whose ordinary flip would produce a one-sided curve.
    pub fn non_t_mutable(&self) -> Vec<usize> {
        if self.is_mobius_one() {
            return if self.m1_curve { Vec::new() } else { vec![0] };
        }
        let pockets = self.pockets();
        (0..self.n_arcs)
            .filter(|&k| !pockets.iter().any(|p| p.alpha == k || p.delta == k))
            .filter(|&k| self.fold_on_flip(k).is_some())
            .collect()
    }

    pub fn regions(&self) -> Vec<Region> {
        let pairs = self.tris.len() / 2;
        let mut used = vec![false; pairs];
        let mut out = Vec::new();
        if !self.is_mobius_one() {
            for p in self.pockets() {
                let f = self.locate(Side::arc(p.alpha))[0].0 / 2;
                used[f] = true;
                used[p.inner / 2] = true;
                out.push(Region::M1Pocket { curve: p.delta, arc: p.alpha, sides: [p.p, p.q] });
            }
            for k in self.non_t_mutable() {
                let [(i1, _), (i2, _)] = self.quad(k).expect("ordinary arc");
                if used[i1 / 2] || used[i2 / 2] {
                    continue;
                }
                used[i1 / 2] = true;
                used[i2 / 2] = true;
                let (a, sides) = self.fold_on_flip(k).expect("folds");
                out.push(Region::M2Core { inner: k, loop_arc: a, sides });
            }
        }
        for (k, u) in used.iter().enumerate() {
            if !u {
                out.push(Region::Triangle { sides: self.tris[2 * k] });
            }
        }
        out
    }

    pub fn to_file(&self) -> TriangulationFile {
        TriangulationFile {
            schema: Some(1),
            surface: self.surface.clone(),
            quasi_arcs: self.quasi_arcs(),
            triangles: self.quotient_triangles(),
            regions: self.regions(),
            mobius_one_curve: self.m1_curve,
        }
    }

    pub fn from_file(file: &TriangulationFile) -> Result<Self, SurfaceError> {
        if let Some(v) = file.schema {
            if v != 1 {
                return Err(SurfaceError::Format(format!("unsupported schema {v}")));
            }
        }
        file.surface.validate()?;
        let mut t = Self::from_triangles(&file.surface, &file.triangles)?;
        t.m1_curve = file.mobius_one_curve;
        t.check()?;
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serialisable")
    }

    pub fn from_json(text: &str) -> Result<Self, SurfaceError> {
        let file: TriangulationFile =
            serde_json::from_str(text).map_err(|e| SurfaceError::Format(e.to_string()))?;
        Self::from_file(&file)
    }

    /// Compact description: quasi-arcs with curves marked, then triangles.
    pub fn label(&self) -> String {
        let curves = self.one_sided_curves();
        let tris: Vec<String> = self
            .quotient_triangles()
            .iter()
            .map(|t| format!("({} {} {})", t[0], t[1], t[2]))
            .collect();
        let arcs: Vec<String> = (0..self.n_arcs)
            .map(|i| if curves.contains(&i) { format!("{}*", arc_name(i)) } else { arc_name(i) })
            .collect();
        format!("[{}] {}", arcs.join(" "), tris.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::initial_quasi_triangulation;

    fn m2() -> QuasiTriangulation {
        initial_quasi_triangulation(&MarkedSurface::mobius(2).unwrap()).unwrap()
    }

    #[test]
    fn side_text_round_trip() {
        for s in ["x1", "x12~", "b3", "b1~"] {
            assert_eq!(s.parse::<Side>().unwrap().to_string(), s);
        }
        assert!("y1".parse::<Side>().is_err());
        assert!("x0".parse::<Side>().is_err());
    }

    #[test]
    fn flips_are_involutions() {
        for s in [MarkedSurface::polygon(6).unwrap(), MarkedSurface::mobius(3).unwrap()] {
            let t = initial_quasi_triangulation(&s).unwrap();
            let mut states = vec![t.clone()];
            states.extend(t.flips());
            for u in &states {
                for i in 0..u.rank() {
                    let back = u.flip(i).unwrap().flip(i).unwrap();
                    assert!(back.equivalent(u));
                    assert!(!u.flip(i).unwrap().equivalent(u));
                }
            }
        }
    }

    #[test]
    fn m2_has_one_non_t_mutable_arc() {
        let t = m2();
        let bad = t.non_t_mutable();
        assert_eq!(bad.len(), 1);
        let e = bad[0];
        assert_eq!(t.flip_case(e).unwrap(), FlipCase::ToCurve);
        let u = t.flip(e).unwrap();
        assert_eq!(u.one_sided_curves(), vec![e]);
        let other = 1 - e;
        assert_eq!(u.flip_case(other).unwrap(), FlipCase::AcrossCurve);
        assert_eq!(u.flip_case(e).unwrap(), FlipCase::FromCurve);
        let regions = u.regions();
        assert!(matches!(regions[0], Region::M1Pocket { curve, arc, .. } if curve == e && arc == other));
        let Region::M1Pocket { sides, .. } = regions[0] else { unreachable!() };
        let mut b: Vec<_> = sides.iter().map(|s| s.edge).collect();
        b.sort();
        assert_eq!(b, vec![Edge::Boundary(0), Edge::Boundary(1)]);
    }

    #[test]
    fn canonical_code_ignores_labels() {
        let t = m2();
        let mut relabeled = t.clone();
        for tri in relabeled.tris.iter_mut() {
            for s in tri.iter_mut() {
                if let Edge::Arc(k) = s.edge {
                    *s = Side::new(Edge::Arc(1 - k), if k == 0 { !s.lift } else { s.lift });
                }
            }
        }
        relabeled.check().unwrap();
        assert_eq!(relabeled.canonical_code(), t.canonical_code());
    }

    #[test]
    fn json_round_trip() {
        let t = m2();
        let u = t.flip(t.non_t_mutable()[0]).unwrap();
        for x in [t, u] {
            let back = QuasiTriangulation::from_json(&x.to_json()).unwrap();
            assert_eq!(back, x);
        }
    }

    #[test]
    fn rejects_broken_complexes() {
        let s = MarkedSurface::polygon(4).unwrap();
        let a = Side::arc(0);
        let b = |k| Side::new(Edge::Boundary(k), false);
        let ok = QuasiTriangulation::from_triangles(&s, &[[b(0), b(1), a], [a, b(2), b(3)]]);
        assert!(ok.is_ok());
        let twice = QuasiTriangulation::from_triangles(&s, &[[b(0), b(1), a], [b(1), b(2), b(3)]]);
        assert!(twice.is_err());
    }
}
