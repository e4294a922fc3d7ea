//! Breadth-first enumeration of seeds and quasi-triangulations, exchange
//! graphs, isomorphism testing and the Laurent check.
//!
//! Both explorations share one level-synchronous search: a frontier is
//! expanded on all workers, then its children are inserted one by one in
//! frontier order, so node numbering never depends on the schedule.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lp_core::{LPSeed, SeedError};
use crate::par;
use crate::poly::PolyError;
use crate::surface::{seed_from_quasi_triangulation, LambdaLengths, QuasiTriangulation, SurfaceError};

mod export;
mod iso;
mod laurent;
mod tracked;

pub use export::{export, to_dot, ExportFormat};
pub use iso::graphs_isomorphic;
pub use laurent::{random_sequences, verify_laurent, LaurentReport, LaurentViolation};
pub use tracked::{evaluate, TrackedSeed, TrackedVariable};

/// Node cap when neither the caller nor `LP_SURFACE_SEED_CAP` sets one.
pub const DEFAULT_CAP: usize = 100_000;

/// Depth used for surfaces not known to be of finite type.
pub const DEFAULT_INFINITE_DEPTH: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExploreError {
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("direction {dir} at node {node} leads back to the node itself")]
    SelfLoop { node: usize, dir: usize },
    #[error("cannot compare graphs truncated differently ({0})")]
    IncompatibleTruncation(String),
    #[error("unknown export format `{0}`")]
    UnknownFormat(String),
    #[error("malformed graph file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploreOptions {
    /// Maximal distance from the root; `None` explores until closure.
    pub depth: Option<usize>,
    /// Safety cap on the number of nodes.
    pub cap: usize,
    pub parallel: bool,
    /// Worker count; `None` uses every core.
    pub jobs: Option<usize>,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions { depth: None, cap: DEFAULT_CAP, parallel: cfg!(feature = "parallel"), jobs: None }
    }
}

impl ExploreOptions {
    /// Defaults, with the cap read from `LP_SURFACE_SEED_CAP` when set.
    pub fn from_env() -> Self {
        let cap = std::env::var("LP_SURFACE_SEED_CAP")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_CAP);
        ExploreOptions { cap, ..Self::default() }
    }

    pub fn depth(mut self, depth: Option<usize>) -> Self {
        self.depth = depth;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    Seeds,
    Flips,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    /// Canonical identity of the seed or triangulation.
    pub key: String,
    /// Cluster contents or quasi-arcs, for display.
    pub label: String,
    pub depth: usize,
    /// Node and direction this node was first reached from.
    pub parent: Option<(usize, usize)>,
    /// False when some neighbour was cut off by the depth bound or the cap.
    pub expanded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub a: usize,
    pub b: usize,
    /// Mutation or flip direction, as seen from `a`.
    pub dir: usize,
}

/// A simple graph on canonical seeds or quasi-triangulations; node 0 is the
/// root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeGraph {
    pub schema: u32,
    pub kind: GraphKind,
    pub rank: usize,
    pub truncated: bool,
    pub depth_bound: Option<usize>,
    pub nodes: Vec<Node>,
    pub edges: Vec<GraphEdge>,
}

impl ExchangeGraph {
    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    /// Nodes whose degree differs from the rank although they were fully
    /// expanded.
    pub fn degree_defects(&self) -> Vec<usize> {
        let adj = self.adjacency();
        (0..self.nodes.len()).filter(|&v| self.nodes[v].expanded && adj[v].len() != self.rank).collect()
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.key == key)
    }

    /// Node counts by distance from the root.
    pub fn ball_sizes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for n in &self.nodes {
            if out.len() <= n.depth {
                out.resize(n.depth + 1, 0);
            }
            out[n.depth] += 1;
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }

    pub fn from_json(text: &str) -> Result<Self, ExploreError> {
        let g: ExchangeGraph =
            serde_json::from_str(text).map_err(|e| ExploreError::Format(e.to_string()))?;
        if g.schema != 1 {
            return Err(ExploreError::Format(format!("unsupported schema {}", g.schema)));
        }
        if g.edges.iter().any(|e| e.a >= g.nodes.len() || e.b >= g.nodes.len()) {
            return Err(ExploreError::Format("edge endpoint out of range".into()));
        }
        Ok(g)
    }
}

/// One expanded child: direction, state, key.
type Child<S> = (usize, S, String);

/// Generic search. Returns the graph and the state of every node.
fn search<S, E, K, L>(
    kind: GraphKind,
    rank: usize,
    root: S,
    opts: &ExploreOptions,
    expand: E,
    key: K,
    label: L,
) -> Result<(ExchangeGraph, Vec<S>), ExploreError>
where
    S: Clone + Send + Sync,
    E: Fn(&S, usize) -> Result<S, ExploreError> + Sync + Send,
    K: Fn(&S) -> Result<String, ExploreError> + Sync + Send,
    L: Fn(&S) -> String + Sync,
{
    let mut graph = ExchangeGraph {
        schema: 1,
        kind,
        rank,
        truncated: false,
        depth_bound: opts.depth,
        nodes: Vec::new(),
        edges: Vec::new(),
    };
    let root_key = key(&root)?;
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut seen_edges: HashSet<(usize, usize)> = HashSet::new();
    index.insert(root_key.clone(), 0);
    graph.nodes.push(Node { key: root_key, label: label(&root), depth: 0, parent: None, expanded: true });
    let mut states = vec![root];
    let mut frontier = vec![0usize];
    let mut depth = 0;
    par::with_jobs(opts.jobs, || -> Result<(), ExploreError> {
        while !frontier.is_empty() {
            if opts.depth.is_some_and(|d| depth >= d) {
                for &v in &frontier {
                    graph.nodes[v].expanded = false;
                }
                graph.truncated = true;
                break;
            }
            let work: Vec<(usize, usize)> =
                frontier.iter().flat_map(|&v| (0..rank).map(move |i| (v, i))).collect();
            let children: Vec<Result<Child<S>, ExploreError>> =
                par::map(&work, opts.parallel, |&(v, i)| {
                    let s = expand(&states[v], i)?;
                    let k = key(&s)?;
                    Ok((i, s, k))
                });
            let mut next = Vec::new();
            for (&(v, _), child) in work.iter().zip(children) {
                let (dir, state, k) = child?;
                let w = match index.get(&k) {
                    Some(&w) => w,
                    None if graph.nodes.len() >= opts.cap => {
                        graph.nodes[v].expanded = false;
                        graph.truncated = true;
                        continue;
                    }
                    None => {
                        let w = graph.nodes.len();
                        index.insert(k.clone(), w);
                        graph.nodes.push(Node {
                            key: k,
                            label: label(&state),
                            depth: depth + 1,
                            parent: Some((v, dir)),
                            expanded: true,
                        });
                        states.push(state);
                        next.push(w);
                        w
                    }
                };
                if w == v {
                    return Err(ExploreError::SelfLoop { node: v, dir });
                }
                if seen_edges.insert((v.min(w), v.max(w))) {
                    graph.edges.push(GraphEdge { a: v, b: w, dir });
                }
            }
            frontier = next;
            depth += 1;
        }
        Ok(())
    })?;
    Ok((graph, states))
}

/// The exchange graph of LP seeds reachable from `s0`, nodes identified by
/// their cluster values and exchange polynomials.
pub fn explore_seeds(s0: &LPSeed, opts: &ExploreOptions) -> Result<ExchangeGraph, ExploreError> {
    Ok(explore_seeds_with_states(s0, opts)?.0)
}

pub fn explore_seeds_with_states(
    s0: &LPSeed,
    opts: &ExploreOptions,
) -> Result<(ExchangeGraph, Vec<TrackedSeed>), ExploreError> {
    search(
        GraphKind::Seeds,
        s0.rank(),
        TrackedSeed::new(s0.clone()),
        opts,
        |s, i| Ok(s.mutate(i)?),
        |s| Ok(s.key()?),
        |s| s.label(),
    )
}

fn code_key(code: &[u32]) -> String {
    code.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(".")
}

/// A quasi-triangulation with the lambda lengths of its quasi-arcs. The
/// Möbius strip with one marked point carries no lengths.
#[derive(Debug, Clone)]
pub struct FlipState {
    pub triangulation: QuasiTriangulation,
    pub lengths: Option<LambdaLengths>,
}

impl FlipState {
    pub fn new(t: &QuasiTriangulation) -> Result<Self, ExploreError> {
        let lengths = if t.is_mobius_one() { None } else { Some(LambdaLengths::initial(t)?) };
        Ok(FlipState { triangulation: t.clone(), lengths })
    }

    pub fn flip(&self, slot: usize) -> Result<Self, ExploreError> {
        let lengths = match &self.lengths {
            Some(l) => Some(l.flip(&self.triangulation, slot)?),
            None => None,
        };
        Ok(FlipState { triangulation: self.triangulation.flip(slot)?, lengths })
    }

    /// The combinatorial code, refined by the lengths: the code alone
    /// cannot tell apart triangulations related by a mapping class.
    pub fn key(&self) -> String {
        let mut k = code_key(&self.triangulation.canonical_code());
        if let Some(l) = &self.lengths {
            k.push_str(" | ");
            k.push_str(&l.sorted_strings().join(" ; "));
        }
        k
    }
}

/// The flip graph of quasi-triangulations reachable from `t0`, up to
/// isotopy.
pub fn explore_flips(t0: &QuasiTriangulation, opts: &ExploreOptions) -> Result<ExchangeGraph, ExploreError> {
    Ok(explore_flips_with_states(t0, opts)?.0)
}

pub fn explore_flips_with_states(
    t0: &QuasiTriangulation,
    opts: &ExploreOptions,
) -> Result<(ExchangeGraph, Vec<FlipState>), ExploreError> {
    search(
        GraphKind::Flips,
        t0.rank(),
        FlipState::new(t0)?,
        opts,
        |s, i| s.flip(i),
        |s| Ok(s.key()),
        |s| s.triangulation.label(),
    )
}

/// The outcome of matching the flip graph of a surface against the seed
/// graph of its initial seed.
#[derive(Debug, Clone)]
pub struct Correspondence {
    pub flips: ExchangeGraph,
    pub seeds: ExchangeGraph,
    /// Seed node of every flip node, reached by mutating along the flip
    /// search tree.
    pub node_map: Vec<Option<usize>>,
    /// Tracked variables of every flip node, slot by slot: the value
    /// attached to each quasi-arc.
    pub arc_values: Vec<Vec<String>>,
    pub mismatches: Vec<String>,
}

impl Correspondence {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Explores both graphs from `t0` and checks that mutating along flips
/// gives a bijection on nodes that preserves edges, and that the seed
/// reached at every quasi-triangulation `T` carries the exchange
/// polynomials of `Σ_T` and the lambda lengths of `T` slot by slot.
pub fn verify_correspondence(
    t0: &QuasiTriangulation,
    opts: &ExploreOptions,
) -> Result<Correspondence, ExploreError> {
    let s0 = seed_from_quasi_triangulation(t0)?;
    let (flips, states) = explore_flips_with_states(t0, opts)?;
    let seeds = explore_seeds(&s0, opts)?;
    let mut tracked: Vec<Option<TrackedSeed>> = vec![None; flips.n_nodes()];
    tracked[0] = Some(TrackedSeed::new(s0));
    for v in 1..flips.n_nodes() {
        let (p, dir) = flips.nodes[v].parent.expect("non-root node has a parent");
        let parent = tracked[p].as_ref().expect("parents come first");
        tracked[v] = Some(parent.mutate(dir)?);
    }
    let tracked: Vec<TrackedSeed> = tracked.into_iter().map(|t| t.expect("filled")).collect();
    let keys: Vec<Result<String, SeedError>> = par::map(&tracked, opts.parallel, |t| t.key());
    let index: HashMap<&str, usize> =
        seeds.nodes.iter().enumerate().map(|(i, n)| (n.key.as_str(), i)).collect();
    let mut mismatches = Vec::new();
    let mut node_map = Vec::with_capacity(flips.n_nodes());
    for (v, k) in keys.into_iter().enumerate() {
        let found = index.get(k?.as_str()).copied();
        if found.is_none() {
            mismatches.push(format!("flip node {v} ({}) has no seed node", flips.nodes[v].label));
        }
        node_map.push(found);
    }
    let positional: Vec<Result<Option<String>, ExploreError>> =
        par::map(&(0..flips.n_nodes()).collect::<Vec<_>>(), opts.parallel, |&v| {
            let t = &states[v].triangulation;
            let sigma = seed_from_quasi_triangulation(t)?;
            let reached = &tracked[v].seed;
            if let Some(l) = &states[v].lengths {
                if let Some(j) = (0..sigma.rank()).find(|&j| l.values()[j] != tracked[v].vars[j].value) {
                    return Ok(Some(format!(
                        "slot {} of {}: cluster variable {} but lambda length {}",
                        j + 1,
                        t.label(),
                        tracked[v].vars[j].value,
                        l.values()[j]
                    )));
                }
            }
            for j in 0..sigma.rank() {
                if reached.poly(j).with_context(sigma.ctx()).canonical_unit() != sigma.poly(j).canonical_unit() {
                    return Ok(Some(format!(
                        "slot {} of {}: mutation gives {}, the triangulation gives {}",
                        j + 1,
                        t.label(),
                        reached.poly(j),
                        sigma.poly(j)
                    )));
                }
            }
            Ok(None)
        });
    for m in positional {
        mismatches.extend(m?);
    }
    let mut hit = vec![false; seeds.n_nodes()];
    for w in node_map.iter().flatten() {
        if std::mem::replace(&mut hit[*w], true) {
            mismatches.push(format!("seed node {w} is reached from two quasi-triangulations"));
        }
    }
    if flips.n_nodes() != seeds.n_nodes() {
        mismatches.push(format!("{} quasi-triangulations but {} seeds", flips.n_nodes(), seeds.n_nodes()));
    }
    let seed_edges: HashSet<(usize, usize)> =
        seeds.edges.iter().map(|e| (e.a.min(e.b), e.a.max(e.b))).collect();
    for e in &flips.edges {
        if let (Some(a), Some(b)) = (node_map[e.a], node_map[e.b]) {
            if !seed_edges.contains(&(a.min(b), a.max(b))) {
                mismatches.push(format!("flip edge {}-{} is not a mutation", e.a, e.b));
            }
        }
    }
    if flips.n_edges() != seeds.n_edges() {
        mismatches.push(format!("{} flips but {} mutations", flips.n_edges(), seeds.n_edges()));
    }
    let arc_values =
        tracked.iter().map(|t| t.vars.iter().map(|x| x.value.to_string()).collect()).collect();
    Ok(Correspondence { flips, seeds, node_map, arc_values, mismatches })
}
