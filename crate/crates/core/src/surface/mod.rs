//! Unpunctured marked surfaces, their quasi-triangulations and flips, the
//! orientable double cover and seed extraction.
//!
//! A quasi-triangulation is stored through an ordinary (possibly folded)
//! triangulation of the surface, kept as its lift to the double cover. A
//! folded triangle `(α, α̃, δ)` encloses a Möbius strip with one marked point;
//! the quasi-triangulation then holds the one-sided curve of that strip in the
//! slot of `δ`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lp_core::SeedError;
use crate::quiver::QuiverError;

mod lengths;
mod lift;
mod model;
mod seed;
mod triangulation;

pub use lengths::LambdaLengths;
pub use lift::{adjacency_quiver, double_cover, LiftedTriangulation};
pub use seed::{
    detect_m2, exchange_polynomials, seed_from_quasi_triangulation, seed_unchecked, surface_context,
};
pub use triangulation::{
    arc_name, boundary_name,
    Edge, FlipCase, QuasiArc, QuasiArcKind, QuasiTriangulation, Region, Side, TriangulationFile,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("slot {0} is not a quasi-arc of this triangulation")]
    UnknownArc(usize),
    #[error("the triangulation contains a one-sided curve and has no global lift")]
    HasOneSidedCurve,
    #[error("the Möbius strip with one marked point has no LP seed: its only arc and curve share a slot")]
    MobiusOne,
    #[error("boundary variables are off and exchange polynomials coincide: {}", pairs_text(.pairs))]
    DuplicatePolynomials { pairs: Vec<(usize, usize)> },
    #[error("malformed surface file: {0}")]
    Format(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Seed(#[from] SeedError),
}

fn pairs_text(pairs: &[(usize, usize)]) -> String {
    pairs.iter().map(|(i, j)| format!("F_{} = F_{}", i + 1, j + 1)).collect::<Vec<_>>().join(", ")
}

fn yes() -> bool {
    true
}

/// A compact surface with boundary and marked points on the boundary only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkedSurface {
    #[serde(rename = "genus", default)]
    pub orientable_genus: u32,
    #[serde(default)]
    pub cross_caps: u32,
    /// Marked points on each boundary component.
    pub boundary: Vec<u32>,
    #[serde(default = "yes")]
    pub boundary_variables: bool,
}

#[derive(Deserialize)]
struct SurfaceInput {
    #[serde(default)]
    schema: Option<u32>,
    #[serde(default)]
    punctures: u32,
    #[serde(flatten)]
    surface: MarkedSurface,
}

#[derive(Serialize)]
struct SurfaceOutput<'a> {
    schema: u32,
    #[serde(flatten)]
    surface: &'a MarkedSurface,
}

impl MarkedSurface {
    pub fn new(orientable_genus: u32, cross_caps: u32, boundary: Vec<u32>) -> Result<Self, SurfaceError> {
        let s = MarkedSurface { orientable_genus, cross_caps, boundary, boundary_variables: true };
        s.validate()?;
        Ok(s)
    }

    /// Disk with `m` marked points.
    pub fn polygon(m: u32) -> Result<Self, SurfaceError> {
        Self::new(0, 0, vec![m])
    }

    pub fn annulus(p: u32, q: u32) -> Result<Self, SurfaceError> {
        Self::new(0, 0, vec![p, q])
    }

    /// Möbius strip `M_m`.
    pub fn mobius(m: u32) -> Result<Self, SurfaceError> {
        Self::new(0, 1, vec![m])
    }

    pub fn with_boundary_variables(mut self, on: bool) -> Self {
        self.boundary_variables = on;
        self
    }

    pub fn from_json(text: &str) -> Result<Self, SurfaceError> {
        let input: SurfaceInput =
            serde_json::from_str(text).map_err(|e| SurfaceError::Format(e.to_string()))?;
        if let Some(v) = input.schema {
            if v != 1 {
                return Err(SurfaceError::Format(format!("unsupported schema {v}")));
            }
        }
        if input.punctures > 0 {
            return Err(SurfaceError::InvalidSurface("punctured surfaces are not supported".into()));
        }
        input.surface.validate()?;
        Ok(input.surface)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SurfaceOutput { schema: 1, surface: self }).expect("serialisable")
    }

    pub fn validate(&self) -> Result<(), SurfaceError> {
        if self.boundary.is_empty() {
            return Err(SurfaceError::InvalidSurface("closed surfaces are not supported".into()));
        }
        if self.boundary.contains(&0) {
            return Err(SurfaceError::InvalidSurface(
                "every boundary component needs a marked point".into(),
            ));
        }
        if self.is_disk() && self.boundary[0] <= 3 {
            return Err(SurfaceError::InvalidSurface(format!(
                "a disk with {} marked points has no arcs",
                self.boundary[0]
            )));
        }
        Ok(())
    }

    pub fn is_disk(&self) -> bool {
        self.orientable_genus == 0 && self.cross_caps == 0 && self.boundary.len() == 1
    }

    pub fn is_orientable(&self) -> bool {
        self.cross_caps == 0
    }

    /// The Möbius strip with a single marked point.
    pub fn is_mobius_one(&self) -> bool {
        self.orientable_genus == 0 && self.cross_caps == 1 && self.boundary == [1]
    }

    /// Total number of boundary segments.
    pub fn n_boundary_segments(&self) -> usize {
        self.boundary.iter().map(|&m| m as usize).sum()
    }

    /// Number of quasi-arcs in any quasi-triangulation.
    pub fn rank(&self) -> Result<usize, SurfaceError> {
        self.validate()?;
        let n = self.n_boundary_segments() as i64
            + 6 * self.orientable_genus as i64
            + 3 * self.cross_caps as i64
            + 3 * self.boundary.len() as i64
            - 6;
        Ok(n as usize)
    }

    /// Short human-readable name.
    pub fn describe(&self) -> String {
        let pts = self.boundary.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("+");
        match (self.orientable_genus, self.cross_caps, self.boundary.len()) {
            (0, 0, 1) => format!("{pts}-gon"),
            (0, 0, 2) => format!("annulus({pts})"),
            (0, 1, 1) => format!("M_{pts}"),
            (g, k, b) => format!("surface(g={g}, k={k}, b={b}, m={pts})"),
        }
    }
}

/// The rank of a surface.
pub fn rank(s: &MarkedSurface) -> Result<usize, SurfaceError> {
    s.rank()
}

/// The deterministic starting triangulation.
pub fn initial_quasi_triangulation(s: &MarkedSurface) -> Result<QuasiTriangulation, SurfaceError> {
    model::initial(s)
}

/// The unique flip of quasi-arc `slot`.
pub fn flip(t: &QuasiTriangulation, slot: usize) -> Result<QuasiTriangulation, SurfaceError> {
    t.flip(slot)
}
