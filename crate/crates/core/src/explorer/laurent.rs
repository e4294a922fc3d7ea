//! Checks that tracked cluster variables are Laurent polynomials in the
//! initial cluster.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::tracked::TrackedSeed;
use crate::lp_core::LPSeed;
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaurentViolation {
    pub sequence: Vec<usize>,
    /// Number of mutations applied when the violation was seen.
    pub step: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaurentReport {
    pub sequences: usize,
    /// Tracked values inspected, counted with repetition.
    pub values_checked: usize,
    pub violations: Vec<LaurentViolation>,
}

impl LaurentReport {
    pub fn is_laurent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A denominator is acceptable when it is a single monomial with
/// coefficient 1 in the initial cluster variables only.
fn laurent_denominator(t: &TrackedSeed, k: usize) -> Result<(), String> {
    let v = &t.vars[k].value;
    let n = t.initial.n_cluster();
    match v.denominator().terms() {
        [(e, c)] if *c == 1.into() && e[n..].iter().all(|&x| x == 0) => Ok(()),
        _ => Err(format!("{} = {v} is not Laurent", t.vars[k].symbol)),
    }
}

fn check_sequence(s0: &LPSeed, seq: &[usize]) -> (usize, Option<LaurentViolation>) {
    let mut t = TrackedSeed::new(s0.clone());
    let mut checked = 0;
    for (step, &i) in seq.iter().enumerate() {
        let violation = |detail: String| LaurentViolation { sequence: seq.to_vec(), step: step + 1, detail };
        t = match t.mutate(i) {
            Ok(u) => u,
            Err(e) => return (checked, Some(violation(format!("mutation at {}: {e}", i + 1)))),
        };
        for k in 0..t.rank() {
            checked += 1;
            if let Err(d) = laurent_denominator(&t, k) {
                return (checked, Some(violation(d)));
            }
        }
    }
    (checked, None)
}

/// Mutates `s0` along every sequence (0-based directions) and reports each
/// tracked value whose denominator is not a monomial.
pub fn verify_laurent(s0: &LPSeed, sequences: &[Vec<usize>], parallel: bool) -> LaurentReport {
    let results = par::map(sequences, parallel, |seq| check_sequence(s0, seq));
    let mut report = LaurentReport { sequences: sequences.len(), values_checked: 0, violations: Vec::new() };
    for (checked, v) in results {
        report.values_checked += checked;
        report.violations.extend(v);
    }
    report
}

/// `count` sequences of length `1..=max_len` over `0..rank`, reproducible
/// from `seed`. Consecutive directions differ, since `μ_i μ_i` is trivial.
pub fn random_sequences(rank: usize, count: usize, max_len: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len.max(1));
            let mut seq: Vec<usize> = Vec::with_capacity(len);
            while seq.len() < len {
                let i = rng.gen_range(0..rank);
                if rank == 1 || seq.last() != Some(&i) {
                    seq.push(i);
                }
            }
            seq
        })
        .collect()
}
