//! Invariants over seeded random semigroups, actions and functors.

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use invtopos_core::action::{is_isomorphism, PartialAction};
use invtopos_core::bundle::{tau, Bundle, FiniteSpace};
use invtopos_core::category::LoganCategory;
use invtopos_core::equivalence::{counit_beta, phi, psi};
use invtopos_core::random::{random_action, random_functor, random_semigroup};
use invtopos_core::semigroup::InverseSemigroup;
use invtopos_core::tensor::{tensor, Presheaf};

fn semigroup(seed: u64) -> Arc<InverseSemigroup> {
    Arc::new(random_semigroup(&mut ChaCha8Rng::seed_from_u64(seed)))
}

fn action(seed: u64) -> PartialAction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = Arc::new(random_semigroup(&mut rng));
    random_action(&mut rng, &s)
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn natural_order_characterization(seed in any::<u64>()) {
        let s = semigroup(seed);
        for a in s.elements() {
            for b in s.elements() {
                prop_assert_eq!(s.natural_leq(a, b), a == s.mul(b, s.d(a)));
            }
        }
    }

    #[test]
    fn idempotents_form_a_meet_semilattice(seed in any::<u64>()) {
        let s = semigroup(seed);
        let es = s.idempotents();
        for &e in es {
            for &f in es {
                let m = s.mul(e, f);
                prop_assert!(s.is_idempotent(m));
                prop_assert_eq!(m, s.mul(f, e));
                prop_assert!(s.natural_leq(m, e) && s.natural_leq(m, f));
                for &g in es {
                    if s.natural_leq(g, e) && s.natural_leq(g, f) {
                        prop_assert!(s.natural_leq(g, m));
                    }
                }
            }
        }
    }

    #[test]
    fn up_closure_is_a_closure_operator(seed in any::<u64>(), mask in any::<u64>()) {
        let s = semigroup(seed);
        let x: BTreeSet<usize> = s.elements().filter(|i| mask & (1 << i) != 0).collect();
        let up = s.up_closure(&x);
        prop_assert!(x.is_subset(&up));
        prop_assert_eq!(s.up_closure(&up), up.clone());
        let bigger: BTreeSet<usize> = x.iter().copied().chain(s.idempotents().iter().copied()).collect();
        prop_assert!(up.is_subset(&s.up_closure(&bigger)));
    }

    #[test]
    fn h_classes_partition(seed in any::<u64>()) {
        let s = semigroup(seed);
        let mut seen = BTreeSet::new();
        for &e in s.idempotents() {
            for &f in s.idempotents() {
                for x in s.h_class(e, f).unwrap() {
                    prop_assert!(seen.insert(x));
                }
            }
        }
        prop_assert_eq!(seen.len(), s.size());
    }

    #[test]
    fn logan_inverse_generators(seed in any::<u64>()) {
        let s = semigroup(seed);
        let l = LoganCategory::build(s.clone());
        prop_assert!(l.category().check().is_ok());
        for x in s.elements() {
            let fwd = l.arrow(s.r(x), x).unwrap();
            let back = l.arrow(s.d(x), s.inv(x)).unwrap();
            let id = l.identity(l.object(s.d(x)).unwrap());
            prop_assert_eq!(l.compose(back, fwd), Some(id));
        }
    }

    #[test]
    fn strict_actions_are_connected(seed in any::<u64>()) {
        let a = action(seed);
        if a.is_strict() {
            prop_assert!(a.is_connected());
        }
        if a.semigroup().identity().is_some() {
            prop_assert!(a.is_connected());
        }
    }

    #[test]
    fn properties_survive_relabeling(seed in any::<u64>(), perm_seed in any::<u64>()) {
        let a = action(seed);
        let b = a.relabel(&shuffled(a.len(), perm_seed));
        prop_assert_eq!(a.is_free(), b.is_free());
        prop_assert_eq!(a.is_transitive(), b.is_transitive());
        prop_assert_eq!(a.is_strict(), b.is_strict());
        prop_assert_eq!(a.is_connected(), b.is_connected());
    }

    #[test]
    fn prehomomorphism_law_by_brute_force(seed in any::<u64>()) {
        let a = action(seed);
        let s = a.semigroup();
        for x in s.elements() {
            for y in s.elements() {
                for p in 0..a.len() {
                    if let Some(v) = a.act(s.mul(x, y), p) {
                        prop_assert_eq!(a.act(y, p).and_then(|q| a.act(x, q)), Some(v));
                    }
                }
            }
        }
    }

    #[test]
    fn phi_is_torsion_free_and_psi_connected(seed in any::<u64>()) {
        let a = action(seed);
        let f = phi(&a);
        prop_assert!(f.is_torsion_free());
        let p = psi(&f).unwrap();
        prop_assert!(p.action.is_connected());
        prop_assert!(p.action.maps().iter().all(|m| m.is_injective()));
        let beta = counit_beta(&a, &p);
        prop_assert_eq!(is_isomorphism(&beta, &p.action, &a), a.is_connected());
        if a.semigroup().is_group() {
            prop_assert_eq!(f.is_filtered(), a.is_free() && a.is_transitive());
        }
    }

    #[test]
    fn filtered_strengthens_directed(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = Arc::new(random_semigroup(&mut rng));
        let f = random_functor(&mut rng, &s);
        if f.is_filtered() {
            prop_assert!(f.is_directed());
            prop_assert_eq!(f.preserves_pullbacks(), Ok(true));
        }
        let el = f.category_of_elements();
        for o in 0..f.logan().object_count() {
            prop_assert_eq!(el.objects.iter().filter(|(b, _)| *b == o).count(), f.set(o).len());
        }
    }

    #[test]
    fn tensor_size_is_invariant_under_relabeling(seed in any::<u64>(), perm_seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = Arc::new(random_semigroup(&mut rng));
        let f = random_functor(&mut rng, &s);
        let perms: Vec<Vec<usize>> =
            f.sets().iter().enumerate().map(|(i, set)| shuffled(set.len(), perm_seed ^ i as u64)).collect();
        let g = f.relabel(&perms);
        for e in 0..f.logan().object_count() {
            let y = Presheaf::representable(f.logan().clone(), e);
            let (tf, tg) = (tensor(&y, &f).unwrap(), tensor(&y, &g).unwrap());
            prop_assert_eq!(tf.len(), f.set(e).len());
            prop_assert_eq!(tf.len(), tg.len());
        }
    }

    #[test]
    fn one_point_bundles_degenerate_to_psi(seed in any::<u64>()) {
        let a = action(seed);
        let f = phi(&a);
        for space in [FiniteSpace::point(), FiniteSpace::sierpinski()] {
            let b = Bundle::constant(Arc::new(space), &f);
            prop_assert_eq!(b.is_principal(), f.is_filtered());
            if !b.is_principal() {
                continue;
            }
            let sa = tau(&b).unwrap();
            prop_assert!(sa.check_universal().passed());
            let proj = sa.sheaf().projection();
            for t in a.semigroup().elements() {
                for v in 0..proj.len() {
                    if let Some(w) = sa.action().act(t, v) {
                        prop_assert_eq!(proj[w], proj[v]);
                    }
                }
            }
            if b.space().len() == 1 {
                let p = psi(&f).unwrap();
                prop_assert_eq!(sa.action().maps(), p.action.maps());
            }
        }
    }
}
