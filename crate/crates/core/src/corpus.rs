//! Seed-pinned random transformation monoids for the verification corpus.
//!
//! Monoids are generated by up to three random total maps on up to five
//! points, classified, filtered by size, and deduplicated by order plus
//! classification signature.

use crate::fountain::{classify, tilde_partitions, ClassReport};
use crate::green::green_data;
use crate::monoid_core::{FiniteMonoid, GeneratorMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

#[derive(Debug, Clone)]
pub struct CorpusConfig {
    pub seed: u64,
    pub max_points: usize,
    pub max_gens: usize,
    /// reject monoids larger than this (keeps the oracle affordable)
    pub size_cap: usize,
    pub max_attempts: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: 0x5EED_C0DE,
            max_points: 5,
            max_gens: 3,
            size_cap: 120,
            max_attempts: 200_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub monoid: FiniteMonoid,
    pub report: ClassReport,
}

/// Generate entries satisfying `keep` until `count` of them are collected
/// (or attempts run out).  Deterministic for a fixed config.
pub fn generate<F: Fn(&FiniteMonoid, &ClassReport) -> bool>(
    cfg: &CorpusConfig,
    count: usize,
    keep: F,
) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seen: HashSet<String> = HashSet::new();
    let mut out = Vec::new();
    for attempt in 0..cfg.max_attempts {
        if out.len() >= count {
            break;
        }
        let degree = rng.gen_range(2..=cfg.max_points);
        let ngens = rng.gen_range(1..=cfg.max_gens);
        let gens: Vec<GeneratorMap> = (0..ngens)
            .map(|_| GeneratorMap::total((0..degree).map(|_| rng.gen_range(0..degree)).collect()))
            .collect();
        let Ok(m) = FiniteMonoid::from_generators(degree, &gens, cfg.size_cap + 1) else {
            continue;
        };
        if m.order() > cfg.size_cap {
            continue;
        }
        let gd = green_data(&m);
        let tp = tilde_partitions(&m);
        let Ok(report) = classify(&m, &gd, &tp) else {
            continue;
        };
        if !keep(&m, &report) {
            continue;
        }
        // order + flags alone saturates well below 200 distinct entries on
        // five points, so the signature also carries the eggbox profile
        let mut j_profile: Vec<(usize, bool, usize, usize)> = gd
            .j_classes
            .iter()
            .enumerate()
            .map(|(jc, c)| {
                let n_r = c
                    .iter()
                    .map(|&x| gd.r_class_of[x])
                    .collect::<HashSet<_>>()
                    .len();
                let n_l = c
                    .iter()
                    .map(|&x| gd.l_class_of[x])
                    .collect::<HashSet<_>>()
                    .len();
                (c.len(), gd.regular_j[jc], n_r, n_l)
            })
            .collect();
        j_profile.sort_unstable();
        let signature = format!(
            "{}|{}|{}|{:?}",
            m.order(),
            report.flag_signature(),
            gd.idempotents.len(),
            j_profile
        );
        if !seen.insert(signature) {
            continue;
        }
        out.push(CorpusEntry {
            name: format!("rnd{attempt}-d{degree}g{ngens}-n{}", m.order()),
            monoid: m,
            report,
        });
    }
    out
}

/// Aperiodic monoids in ER, the domain of the counting quiver formula.
pub fn aperiodic_er(cfg: &CorpusConfig, count: usize) -> Vec<CorpusEntry> {
    generate(cfg, count, |_, r| r.is_aperiodic && r.is_er)
}

/// Aperiodic block groups.
pub fn aperiodic_block_groups(cfg: &CorpusConfig, count: usize) -> Vec<CorpusEntry> {
    generate(cfg, count, |_, r| r.is_aperiodic && r.is_block_group)
}

/// Monoids in ER, any maximal subgroups.
pub fn er_monoids(cfg: &CorpusConfig, count: usize) -> Vec<CorpusEntry> {
    generate(cfg, count, |_, r| r.is_er)
}

/// Unfiltered sample.
pub fn mixed(cfg: &CorpusConfig, count: usize) -> Vec<CorpusEntry> {
    generate(cfg, count, |_, _| true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic() {
        let cfg = CorpusConfig {
            size_cap: 60,
            ..CorpusConfig::default()
        };
        let a = aperiodic_er(&cfg, 10);
        let b = aperiodic_er(&cfg, 10);
        assert_eq!(a.len(), 10);
        let names_a: Vec<_> = a.iter().map(|e| e.name.clone()).collect();
        let names_b: Vec<_> = b.iter().map(|e| e.name.clone()).collect();
        assert_eq!(names_a, names_b);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.monoid.table_rows(), y.monoid.table_rows());
        }
    }

    #[test]
    fn filters_apply() {
        let cfg = CorpusConfig {
            size_cap: 40,
            ..CorpusConfig::default()
        };
        for e in aperiodic_er(&cfg, 8) {
            assert!(e.report.is_aperiodic && e.report.is_er, "{}", e.name);
        }
        for e in aperiodic_block_groups(&cfg, 5) {
            assert!(e.report.is_block_group && e.report.is_aperiodic);
        }
    }
}
