//! Configuration-model construction, one independent random stream per layer.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MultilayerGraph;
use crate::model::{DegreeSampler, ScenarioConfig};

const STREAM_COMMUNITY_DEGREES: u64 = 0;
const STREAM_SCHOOL_DEGREES: u64 = 1;
const STREAM_COMMUNITY_PAIRING: u64 = 2;
const STREAM_SCHOOL_PAIRING: u64 = 3;

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledDegrees {
    pub community: Vec<usize>,
    pub school: Vec<usize>,
    pub school_members: Vec<bool>,
}

/// Draws every node's colored degree, then fixes each layer's stub parity.
pub fn sample_colored_degrees(cfg: &ScenarioConfig, seed: u64) -> SampledDegrees {
    let n = cfg.n;
    let sampler_c = cfg.dist_c.sampler();
    let sampler_s = cfg.dist_s.sampler();

    let mut rng = stream(seed, STREAM_COMMUNITY_DEGREES);
    let mut community: Vec<usize> = (0..n).map(|_| sampler_c.sample(&mut rng)).collect();
    let everyone: Vec<usize> = (0..n).collect();
    fix_parity(&mut community, &everyone, &sampler_c, &mut rng);

    let mut rng = stream(seed, STREAM_SCHOOL_DEGREES);
    let mut school = vec![0usize; n];
    let mut school_members = vec![false; n];
    for i in 0..n {
        if rng.random::<f64>() < cfg.alpha {
            school_members[i] = true;
            school[i] = sampler_s.sample(&mut rng);
        }
    }
    let members: Vec<usize> = (0..n).filter(|&i| school_members[i]).collect();
    fix_parity(&mut school, &members, &sampler_s, &mut rng);

    SampledDegrees {
        community,
        school,
        school_members,
    }
}

/// Redraws the degree of a uniformly chosen eligible node until the stub sum
/// is even. A distribution supported only on odd degrees can never flip
/// parity that way; one stub is then removed from a random node instead.
fn fix_parity<R: Rng>(degrees: &mut [usize], eligible: &[usize], sampler: &DegreeSampler, rng: &mut R) {
    if degrees.iter().sum::<usize>() % 2 == 0 || eligible.is_empty() {
        return;
    }
    if sampler.has_even_support() && sampler.has_odd_support() {
        while degrees.iter().sum::<usize>() % 2 == 1 {
            let node = eligible[rng.random_range(0..eligible.len())];
            degrees[node] = sampler.sample(rng);
        }
    } else {
        let positive: Vec<usize> = eligible.iter().copied().filter(|&i| degrees[i] > 0).collect();
        let node = positive[rng.random_range(0..positive.len())];
        degrees[node] -= 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("stub count {0} is odd")]
pub struct OddStubs(pub usize);

/// Uniform random perfect matching of the stub multiset.
pub fn pair_stubs(degrees: &[usize], seed: u64) -> Result<Vec<(u32, u32)>, OddStubs> {
    pair_stubs_with(degrees, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub(crate) fn pair_stubs_with<R: Rng>(degrees: &[usize], rng: &mut R) -> Result<Vec<(u32, u32)>, OddStubs> {
    let total: usize = degrees.iter().sum();
    if total % 2 == 1 {
        return Err(OddStubs(total));
    }
    let mut stubs: Vec<u32> = Vec::with_capacity(total);
    for (node, &d) in degrees.iter().enumerate() {
        stubs.extend(std::iter::repeat_n(node as u32, d));
    }
    stubs.shuffle(rng);
    Ok(stubs
        .chunks_exact(2)
        .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
        .collect())
}

/// Both layers by stub matching; deterministic in `seed`.
pub fn generate_multilayer(cfg: &ScenarioConfig, seed: u64) -> MultilayerGraph {
    let degrees = sample_colored_degrees(cfg, seed);
    let edges_c = pair_stubs_with(&degrees.community, &mut stream(seed, STREAM_COMMUNITY_PAIRING))
        .expect("parity fixed during sampling");
    let edges_s = pair_stubs_with(&degrees.school, &mut stream(seed, STREAM_SCHOOL_PAIRING))
        .expect("parity fixed during sampling");
    MultilayerGraph::new(cfg.n, cfg.alpha, seed, edges_c, edges_s, degrees.school_members)
        .expect("generated edges respect membership")
}
