//! Seeded instance generators for the law checks.
//!
//! Small instance spaces are listed exhaustively; larger ones are sampled
//! with a ChaCha stream so every run with the same seed sees the same
//! instances in the same order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::Category;
use crate::error::Result;
use crate::finset::{FinMap, FinSet};
use crate::slice::{all_slice_objects, SliceObj};

/// Instance spaces up to this size are used whole.
pub const EXHAUSTIVE_THRESHOLD: usize = 64;

/// Sample size for instance spaces above the threshold.
pub const RANDOM_SAMPLES: usize = 32;

/// Deterministic random choices.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A uniform index below `n`, or `None` for `n = 0`.
    pub fn index(&mut self, n: usize) -> Option<usize> {
        (n > 0).then(|| self.rng.gen_range(0..n))
    }

    /// A uniform value in `lo..=hi`.
    pub fn between(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> Option<&'a T> {
        self.index(items.len()).map(|i| &items[i])
    }

    /// `k` distinct positions below `n` in increasing order.
    pub fn subset(&mut self, n: usize, k: usize) -> Vec<usize> {
        let mut chosen = rand::seq::index::sample(&mut self.rng, n, k.min(n)).into_vec();
        chosen.sort_unstable();
        chosen
    }

    /// A random map from a fresh set of size `dom` into `cod`.
    pub fn map_into(&mut self, name: &str, prefix: &str, dom: usize, cod: &FinSet) -> FinMap {
        let dom = FinSet::numbered(name, prefix, dom);
        let table = (0..dom.len())
            .map(|_| self.index(cod.len()).expect("nonempty codomain"))
            .collect();
        FinMap::new(dom, cod.clone(), table).expect("indices are in range")
    }

    /// A family over `base` with every fiber of size at most `max_fiber`.
    pub fn family(&mut self, base: &FinSet, max_fiber: usize, prefix: &str) -> SliceObj {
        let sizes: Vec<usize> = (0..base.len()).map(|_| self.between(0, max_fiber)).collect();
        family_with_fibers(base, &sizes, prefix)
    }

    /// A map `B → A` with `|A| ≤ max_cod` and `|B| ≤ max_dom`; `B` is empty when `A` is.
    pub fn map(&mut self, max_dom: usize, max_cod: usize) -> FinMap {
        let a = FinSet::numbered("A", "a", self.between(0, max_cod));
        let nb = if a.is_empty() { 0 } else { self.between(0, max_dom) };
        self.map_into("B", "b", nb, &a).with_name("f")
    }
}

/// The family over `base` whose fiber over the `i`-th point has `sizes[i]` elements.
pub fn family_with_fibers(base: &FinSet, sizes: &[usize], prefix: &str) -> SliceObj {
    let mut table = Vec::new();
    for (b, &n) in sizes.iter().enumerate() {
        table.extend(std::iter::repeat_n(b, n));
    }
    let total = FinSet::numbered(prefix.to_uppercase(), prefix, table.len());
    SliceObj::new(FinMap::new(total, base.clone(), table).expect("fiber sizes match the base"))
}

/// The whole list if it is small, otherwise a seeded sample of it.
pub fn thin<T: Clone>(items: Vec<T>, seed: u64) -> Vec<T> {
    if items.len() <= EXHAUSTIVE_THRESHOLD {
        return items;
    }
    let mut sampler = Sampler::new(seed);
    sampler
        .subset(items.len(), RANDOM_SAMPLES)
        .into_iter()
        .map(|i| items[i].clone())
        .collect()
}

/// Slice objects over `base` with totals of size at most `max_total`.
pub fn slice_instances(base: &FinSet, max_total: usize, seed: u64, limit: usize) -> Result<Vec<SliceObj>> {
    Ok(thin(all_slice_objects(base, max_total, "e", limit)?, seed))
}

/// The sets `{x0, …, x(n-1)}` for `n ≤ max_size`.
pub fn set_instances(max_size: usize, name: &str, prefix: &str) -> Vec<FinSet> {
    (0..=max_size)
        .map(|n| FinSet::numbered(format!("{name}{n}"), prefix, n))
        .collect()
}

/// Up to `count` morphisms out of `x`, each into an instance chosen by `sampler`.
pub fn sample_morphisms_from<C: Category>(
    cat: &C,
    x: &C::Obj,
    targets: &[C::Obj],
    count: usize,
    sampler: &mut Sampler,
    limit: usize,
) -> Result<Vec<C::Mor>> {
    sample_morphisms(cat, targets, count, sampler, limit, |t| (x.clone(), t.clone()))
}

/// Up to `count` morphisms into `y`, each out of an instance chosen by `sampler`.
pub fn sample_morphisms_into<C: Category>(
    cat: &C,
    y: &C::Obj,
    sources: &[C::Obj],
    count: usize,
    sampler: &mut Sampler,
    limit: usize,
) -> Result<Vec<C::Mor>> {
    sample_morphisms(cat, sources, count, sampler, limit, |s| (s.clone(), y.clone()))
}

fn sample_morphisms<C: Category>(
    cat: &C,
    others: &[C::Obj],
    count: usize,
    sampler: &mut Sampler,
    limit: usize,
    ends: impl Fn(&C::Obj) -> (C::Obj, C::Obj),
) -> Result<Vec<C::Mor>> {
    let mut out = Vec::with_capacity(count);
    let attempts = 4 * count;
    for _ in 0..attempts {
        if out.len() == count {
            break;
        }
        let Some(other) = sampler.pick(others) else { break };
        let (src, dst) = ends(other);
        let homs = cat.hom(&src, &dst, limit)?;
        if let Some(m) = sampler.pick(&homs) {
            out.push(m.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slice::Slice;

    #[test]
    fn sampling_is_deterministic() {
        let a = Sampler::new(7).map(3, 2);
        let b = Sampler::new(7).map(3, 2);
        assert_eq!(a, b);
        let mut s = Sampler::new(1);
        let picks: Vec<_> = (0..5).map(|_| s.index(10)).collect();
        let mut t = Sampler::new(1);
        assert_eq!(picks, (0..5).map(|_| t.index(10)).collect::<Vec<_>>());
        assert_eq!(s.index(0), None);
    }

    #[test]
    fn thin_keeps_small_lists() {
        assert_eq!(thin((0..10).collect(), 0).len(), 10);
        let big = thin((0..100).collect::<Vec<_>>(), 3);
        assert_eq!(big.len(), RANDOM_SAMPLES);
        assert!(big.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn slice_instance_counts() {
        let b = FinSet::numbered("B", "b", 3);
        assert_eq!(slice_instances(&b, 3, 0, 100).unwrap().len(), 40);
        assert_eq!(slice_instances(&FinSet::empty(), 3, 0, 100).unwrap().len(), 1);
    }

    #[test]
    fn random_maps_respect_bounds() {
        let mut s = Sampler::new(11);
        for _ in 0..50 {
            let f = s.map(3, 2);
            assert!(f.dom().len() <= 3 && f.cod().len() <= 2);
            let p = s.family(f.dom(), 2, "e");
            assert!(p.fiber_sizes().iter().all(|&n| n <= 2));
        }
    }

    #[test]
    fn sampled_morphisms_have_the_right_ends() {
        let b = FinSet::numbered("B", "b", 2);
        let objs = slice_instances(&b, 2, 0, 100).unwrap();
        let cat = Slice::new(b);
        let mut s = Sampler::new(0);
        for x in &objs {
            for m in sample_morphisms_from(&cat, x, &objs, 2, &mut s, 100).unwrap() {
                assert_eq!(m.src(), x);
            }
        }
    }
}
