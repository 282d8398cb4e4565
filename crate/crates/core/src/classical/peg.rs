//! Progressive edge growth.
//!
//! Edges are added bit by bit. Each new edge of a bit goes to a check that is
//! as far as possible from that bit in the graph built so far; among those
//! the check with the smallest current degree wins, and remaining ties are
//! broken with a ChaCha8 generator seeded from `PegParams::seed`. Checks that
//! reached the target degree are skipped while others remain.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::TannerGraph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PegParams {
    pub num_bits: usize,
    pub num_checks: usize,
    pub bit_degree: usize,
    pub seed: u64,
}

impl PegParams {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParams(msg));
        if self.num_bits == 0 || self.num_checks == 0 {
            return fail("PEG needs at least one bit and one check".into());
        }
        if self.bit_degree == 0 {
            return fail("bit degree must be at least 1".into());
        }
        if self.bit_degree > self.num_checks {
            return fail(format!(
                "bit degree {} exceeds the number of checks {}",
                self.bit_degree, self.num_checks
            ));
        }
        if self.num_bits * self.bit_degree < self.num_checks {
            return fail(format!(
                "{} edges cannot reach all {} checks",
                self.num_bits * self.bit_degree,
                self.num_checks
            ));
        }
        Ok(())
    }
}

/// BFS distance (in check layers) from `bit` to every check; `usize::MAX`
/// for unreachable ones.
fn check_distances(g: &TannerGraph, bit: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.num_checks()];
    let mut seen_bit = vec![false; g.num_bits()];
    seen_bit[bit] = true;
    let mut frontier: Vec<usize> = g.bit_neighbors(bit).to_vec();
    for &c in &frontier {
        dist[c] = 0;
    }
    let mut layer = 0;
    while !frontier.is_empty() {
        layer += 1;
        let mut next = Vec::new();
        for &c in &frontier {
            for &b in g.check_neighbors(c) {
                if std::mem::replace(&mut seen_bit[b], true) {
                    continue;
                }
                for &c2 in g.bit_neighbors(b) {
                    if dist[c2] == usize::MAX {
                        dist[c2] = layer;
                        next.push(c2);
                    }
                }
            }
        }
        frontier = next;
    }
    dist
}

/// Generates a Tanner graph where every bit has degree `bit_degree`.
///
/// Check degrees are capped at `ceil(n * dv / r)`, so the check degree
/// sequence is as even as the greedy order allows. A capped check is used
/// only when no other check is available.
pub fn peg_generate(p: &PegParams) -> Result<TannerGraph> {
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut g = TannerGraph::empty(p.num_checks, p.num_bits);
    let mut degree = vec![0usize; p.num_checks];
    let cap = (p.num_bits * p.bit_degree).div_ceil(p.num_checks);
    for bit in 0..p.num_bits {
        for _ in 0..p.bit_degree {
            let dist = check_distances(&g, bit);
            let free = |c: &usize| dist[*c] != 0;
            let mut candidates: Vec<usize> =
                (0..p.num_checks).filter(free).filter(|&c| degree[c] < cap).collect();
            if candidates.is_empty() {
                candidates = (0..p.num_checks).filter(free).collect();
            }
            let far = candidates.iter().map(|&c| dist[c]).max().expect("bit degree <= checks");
            let min_deg = candidates
                .iter()
                .filter(|&&c| dist[c] == far)
                .map(|&c| degree[c])
                .min()
                .expect("nonempty");
            let best: Vec<usize> = candidates
                .into_iter()
                .filter(|&c| dist[c] == far && degree[c] == min_deg)
                .collect();
            let &check = best.choose(&mut rng).expect("nonempty");
            g.insert_edge(check, bit);
            degree[check] += 1;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, r: usize, dv: usize, seed: u64) -> PegParams {
        PegParams {
            num_bits: n,
            num_checks: r,
            bit_degree: dv,
            seed,
        }
    }

    #[test]
    fn tiny_graph_has_exact_bit_degree() {
        let g = peg_generate(&params(3, 2, 2, 7)).unwrap();
        for b in 0..3 {
            assert_eq!(g.bit_neighbors(b).len(), 2);
        }
        assert_eq!(g.num_edges(), 6);
    }

    #[test]
    fn check_degrees_are_balanced() {
        for seed in 0..20 {
            let g = peg_generate(&params(16, 12, 3, seed)).unwrap();
            let degs: Vec<usize> = (0..12).map(|c| g.check_neighbors(c).len()).collect();
            let (lo, hi) = (degs.iter().min().unwrap(), degs.iter().max().unwrap());
            assert!(hi - lo <= 1, "seed {seed}: degrees {degs:?}");
            assert!((0..16).all(|b| g.bit_neighbors(b).len() == 3));
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let p = params(40, 20, 3, 99);
        assert_eq!(peg_generate(&p).unwrap(), peg_generate(&p).unwrap());
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(peg_generate(&params(5, 3, 0, 1)).is_err());
        assert!(peg_generate(&params(5, 3, 4, 1)).is_err());
        assert!(peg_generate(&params(1, 5, 2, 1)).is_err());
    }
}
