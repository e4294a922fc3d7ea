//! Graph isomorphism by colour refinement with individualisation and
//! backtracking. Adequate for graphs of a few thousand nodes.

use std::collections::BTreeMap;

use super::{ExchangeGraph, ExploreError};

/// Decides whether `g1` and `g2` are isomorphic and returns a witness
/// `map[v1] = v2` on success. Truncated graphs are only compared when both
/// were cut at the same depth, and then the roots must correspond.
pub fn graphs_isomorphic(g1: &ExchangeGraph, g2: &ExchangeGraph) -> Result<Option<Vec<usize>>, ExploreError> {
    let rooted = g1.truncated || g2.truncated;
    if rooted && !(g1.truncated && g2.truncated && g1.depth_bound == g2.depth_bound && g1.depth_bound.is_some()) {
        return Err(ExploreError::IncompatibleTruncation(format!(
            "truncated: {} at depth {:?}, {} at depth {:?}",
            g1.truncated, g1.depth_bound, g2.truncated, g2.depth_bound
        )));
    }
    if g1.n_nodes() != g2.n_nodes() || g1.n_edges() != g2.n_edges() {
        return Ok(None);
    }
    let n = g1.n_nodes();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    // Disjoint union: g2's node v is n + v.
    let mut adj = g1.adjacency();
    adj.extend(g2.adjacency().into_iter().map(|a| a.into_iter().map(|w| w + n).collect()));
    let mut colours: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    if rooted {
        let top = colours.iter().max().copied().unwrap_or(0) + 1;
        colours[0] = top;
        colours[n] = top;
    }
    let colours = refine(&adj, colours);
    Ok(search(&adj, n, colours))
}

/// Refines a colouring until neighbour multisets no longer split classes.
fn refine(adj: &[Vec<usize>], mut colours: Vec<usize>) -> Vec<usize> {
    let mut classes = count_classes(&colours);
    loop {
        let mut sigs: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let raw: Vec<(usize, Vec<usize>)> = (0..adj.len())
            .map(|v| {
                let mut nb: Vec<usize> = adj[v].iter().map(|&w| colours[w]).collect();
                nb.sort_unstable();
                (colours[v], nb)
            })
            .collect();
        for s in &raw {
            sigs.entry(s.clone()).or_insert(0);
        }
        for (i, v) in sigs.values_mut().enumerate() {
            *v = i;
        }
        let next: Vec<usize> = raw.iter().map(|s| sigs[s]).collect();
        let c = count_classes(&next);
        colours = next;
        if c == classes {
            return colours;
        }
        classes = c;
    }
}

fn count_classes(colours: &[usize]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Equal class sizes on both sides for every colour.
fn balanced(colours: &[usize], n: usize) -> bool {
    let mut count: BTreeMap<usize, i64> = BTreeMap::new();
    for (v, &c) in colours.iter().enumerate() {
        *count.entry(c).or_default() += if v < n { 1 } else { -1 };
    }
    count.values().all(|&x| x == 0)
}

fn search(adj: &[Vec<usize>], n: usize, colours: Vec<usize>) -> Option<Vec<usize>> {
    if !balanced(&colours, n) {
        return None;
    }
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colours.iter().enumerate().take(n) {
        members.entry(c).or_default().push(v);
    }
    let cell = members.values().filter(|m| m.len() > 1).min_by_key(|m| m.len());
    let Some(cell) = cell else {
        // Discrete: the colouring is a bijection; check it.
        let by_colour: BTreeMap<usize, usize> = colours[n..].iter().enumerate().map(|(v, &c)| (c, v)).collect();
        let map: Vec<usize> = (0..n).map(|v| by_colour[&colours[v]]).collect();
        return preserves_edges(adj, n, &map).then_some(map);
    };
    let v = cell[0];
    let target = colours[v];
    let fresh = colours.iter().max().copied().unwrap_or(0) + 1;
    for w in (n..2 * n).filter(|&w| colours[w] == target) {
        let mut c = colours.clone();
        c[v] = fresh;
        c[w] = fresh;
        if let Some(map) = search(adj, n, refine(adj, c)) {
            return Some(map);
        }
    }
    None
}

fn preserves_edges(adj: &[Vec<usize>], n: usize, map: &[usize]) -> bool {
    (0..n).all(|v| {
        let mut image: Vec<usize> = adj[v].iter().map(|&w| map[w] + n).collect();
        image.sort_unstable();
        image == adj[map[v] + n]
    })
}
