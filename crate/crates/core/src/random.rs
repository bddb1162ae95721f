//! Seeded generators of small inverse semigroups, actions and functors.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{generated_semigroup, PartialAction, PartialMap};
use crate::category::LoganCategory;
use crate::cosets::{coset_action, enumerate_closed_subsemigroups};
use crate::equivalence::phi_over;
use crate::exec::Strategy;
use crate::functor::SetFunctor;
use crate::semigroup::InverseSemigroup;

pub const MAX_SEMIGROUP: usize = 6;
pub const MAX_POINTS: usize = 5;

/// Independent stream for instance `index` of a run seeded with `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn random_partial_bijection(rng: &mut impl Rng, n: usize) -> PartialMap {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    PartialMap(images.into_iter().map(|y| rng.gen_bool(0.75).then_some(y)).collect())
}

/// Inverse semigroup generated by one or two random partial bijections of
/// at most three points, retried until it has at most [`MAX_SEMIGROUP`] elements.
pub fn random_semigroup(rng: &mut impl Rng) -> InverseSemigroup {
    loop {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=2);
        let gens: Vec<PartialMap> = (0..k).map(|_| random_partial_bijection(rng, n)).collect();
        let (s, _) = generated_semigroup(n, &gens).expect("partial bijections generate an inverse semigroup");
        if s.size() <= MAX_SEMIGROUP {
            return s;
        }
    }
}

/// Remove `x` from the domain of `st` whenever the prehomomorphism law
/// fails there, until nothing changes.
fn repair(s: &InverseSemigroup, maps: &mut [PartialMap]) {
    let n = maps.first().map_or(0, PartialMap::len);
    loop {
        let mut changed = false;
        for a in s.elements() {
            for b in s.elements() {
                let ab = s.mul(a, b);
                for x in 0..n {
                    let Some(v) = maps[ab].apply(x) else { continue };
                    let ok = maps[b].apply(x).and_then(|y| maps[a].apply(y)) == Some(v);
                    if !ok {
                        maps[ab].0[x] = None;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// Drop points outside every domain, renumbering the rest.
fn restrict_to_effective(
    s: Arc<InverseSemigroup>,
    carrier: Vec<String>,
    maps: Vec<PartialMap>,
) -> Option<PartialAction> {
    let keep: Vec<usize> = (0..carrier.len()).filter(|&x| maps.iter().any(|m| m.apply(x).is_some())).collect();
    if keep.is_empty() {
        return None;
    }
    let mut new_index = vec![None; carrier.len()];
    for (i, &x) in keep.iter().enumerate() {
        new_index[x] = Some(i);
    }
    let maps = maps
        .iter()
        .map(|m| PartialMap(keep.iter().map(|&x| m.apply(x).and_then(|y| new_index[y])).collect()))
        .collect();
    let carrier = keep.iter().map(|&x| carrier[x].clone()).collect();
    Some(PartialAction::new(s, carrier, maps).expect("repaired maps satisfy the prehomomorphism law"))
}

/// Disjoint union of random coset actions, randomly thinned and repaired so
/// that non-strict and disconnected actions also occur.
pub fn random_action(rng: &mut impl Rng, s: &Arc<InverseSemigroup>) -> PartialAction {
    let closed = enumerate_closed_subsemigroups(s).expect("small semigroup");
    loop {
        let pieces = rng.gen_range(1..=2);
        let mut action: Option<PartialAction> = None;
        for _ in 0..pieces {
            let h = closed.choose(rng).expect("S itself is closed");
            let piece = coset_action(s, h).action;
            action = Some(match action {
                None => piece,
                Some(a) => a.disjoint_union(&piece).expect("same semigroup"),
            });
        }
        let action = action.expect("at least one piece");
        if action.len() > MAX_POINTS {
            continue;
        }
        let mut maps = action.maps().to_vec();
        if rng.gen_bool(0.5) {
            let drops = rng.gen_range(1..=3);
            for _ in 0..drops {
                let t = rng.gen_range(0..s.size());
                let x = rng.gen_range(0..action.len());
                maps[t].0[x] = None;
            }
            repair(s, &mut maps);
        }
        if let Some(a) = restrict_to_effective(s.clone(), action.carrier().to_vec(), maps) {
            return a;
        }
    }
}

/// `count` seeded `(semigroup, action)` instances, labelled by index.
pub fn random_actions(seed: u64, count: usize, strategy: Strategy) -> Vec<(String, PartialAction)> {
    strategy.map_range(0..count, |i| {
        let mut rng = instance_rng(seed, i as u64);
        let s = Arc::new(random_semigroup(&mut rng));
        let a = random_action(&mut rng, &s);
        (format!("random#{i}"), a)
    })
}

/// Φ of a random action with every object set shuffled, or a coproduct of
/// corepresentables.
pub fn random_functor(rng: &mut impl Rng, s: &Arc<InverseSemigroup>) -> SetFunctor {
    let logan = Arc::new(LoganCategory::build(s.clone()));
    if rng.gen_bool(0.75) {
        let f = phi_over(&random_action(rng, s), logan);
        let perms: Vec<Vec<usize>> = f
            .sets()
            .iter()
            .map(|set| {
                let mut p: Vec<usize> = (0..set.len()).collect();
                p.shuffle(rng);
                p
            })
            .collect();
        f.relabel(&perms)
    } else {
        let e = rng.gen_range(0..logan.object_count());
        let mut f = SetFunctor::corepresentable(logan.clone(), e);
        if rng.gen_bool(0.5) {
            let e2 = rng.gen_range(0..logan.object_count());
            f = f.coproduct(&SetFunctor::corepresentable(logan, e2)).expect("same domain");
        }
        f
    }
}

pub fn random_functors(seed: u64, count: usize, strategy: Strategy) -> Vec<(String, SetFunctor)> {
    strategy.map_range(0..count, |i| {
        let mut rng = instance_rng(seed, (1 << 32) + i as u64);
        let s = Arc::new(random_semigroup(&mut rng));
        (format!("random-functor#{i}"), random_functor(&mut rng, &s))
    })
}
