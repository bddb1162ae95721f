//! Presheaves on `L(S)`, the tensor product `P ⊗ A` with a set-valued
//! functor, the Hom presheaf, and left-exactness spot checks.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::category::{ArrowId, LoganCategory, ObjId};
use crate::exec::Strategy;
use crate::functor::{offsets, same_domain, SetFunctor};
use crate::union_find::UnionFind;

/// Largest object set of a Hom presheaf.
pub const HOM_SET_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("presheaf and functor live over different categories")]
    DomainMismatch,
    #[error("expected {expected} object sets, got {found}")]
    WrongObjectCount { expected: usize, found: usize },
    #[error("expected {expected} arrow maps, got {found}")]
    WrongArrowCount { expected: usize, found: usize },
    #[error("map along arrow {arrow} is not a function between the assigned sets")]
    BadMap { arrow: String },
    #[error("identity at object {object} is not sent to an identity function")]
    IdentityViolation { object: String },
    #[error("P({g} ∘ {f}) != P({f}) ∘ P({g})")]
    CompositionViolation { g: String, f: String },
    #[error("Hom presheaf at object {object} would have {size} elements (cap {cap})")]
    TooLarge { object: String, size: usize, cap: usize },
}

/// A contravariant functor `L(S) -> FinSet`; `maps[u]` goes from `P(target u)`
/// to `P(source u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    logan: Arc<LoganCategory>,
    sets: Vec<Vec<String>>,
    maps: Vec<Vec<usize>>,
}

impl Presheaf {
    pub fn new(logan: Arc<LoganCategory>, sets: Vec<Vec<String>>, maps: Vec<Vec<usize>>) -> Result<Self, TensorError> {
        let p = Self { logan, sets, maps };
        p.validate()?;
        Ok(p)
    }

    fn from_parts(logan: Arc<LoganCategory>, sets: Vec<Vec<String>>, maps: Vec<Vec<usize>>) -> Self {
        let p = Self { logan, sets, maps };
        debug_assert!(p.validate().is_ok(), "{:?}", p.validate());
        p
    }

    fn validate(&self) -> Result<(), TensorError> {
        let l = &*self.logan;
        if self.sets.len() != l.object_count() {
            return Err(TensorError::WrongObjectCount { expected: l.object_count(), found: self.sets.len() });
        }
        if self.maps.len() != l.arrow_count() {
            return Err(TensorError::WrongArrowCount { expected: l.arrow_count(), found: self.maps.len() });
        }
        for (u, m) in self.maps.iter().enumerate() {
            if m.len() != self.sets[l.target(u)].len() || m.iter().any(|&y| y >= self.sets[l.source(u)].len()) {
                return Err(TensorError::BadMap { arrow: l.label(u).to_string() });
            }
        }
        for o in 0..l.object_count() {
            if self.maps[l.identity(o)].iter().enumerate().any(|(x, &y)| x != y) {
                return Err(TensorError::IdentityViolation { object: l.object_name(o).to_string() });
            }
        }
        let m = l.arrow_count();
        for g in 0..m {
            for f in 0..m {
                let Some(gf) = l.compose(g, f) else { continue };
                let ok = self.maps[g].iter().zip(&self.maps[gf]).all(|(&y, &z)| self.maps[f][y] == z);
                if !ok {
                    return Err(TensorError::CompositionViolation {
                        g: l.label(g).to_string(),
                        f: l.label(f).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn logan(&self) -> &Arc<LoganCategory> {
        &self.logan
    }

    pub fn set(&self, o: ObjId) -> &[String] {
        &self.sets[o]
    }

    pub fn sets(&self) -> &[Vec<String>] {
        &self.sets
    }

    pub fn map(&self, u: ArrowId) -> &[usize] {
        &self.maps[u]
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn total_size(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    /// `y(e)(C) = Hom(C, e)`, translation by precomposition.
    pub fn representable(logan: Arc<LoganCategory>, e: ObjId) -> Self {
        let l = &*logan;
        let homs: Vec<Vec<ArrowId>> = (0..l.object_count()).map(|c| l.hom_set(c, e).expect("object")).collect();
        let sets = homs
            .iter()
            .map(|h| h.iter().map(|&a| l.label(a).to_string()).collect())
            .collect();
        let maps = (0..l.arrow_count())
            .map(|u| {
                let src = &homs[l.source(u)];
                homs[l.target(u)]
                    .iter()
                    .map(|&h| {
                        let c = l.compose(h, u).expect("composable");
                        src.iter().position(|&x| x == c).expect("hom set is complete")
                    })
                    .collect()
            })
            .collect();
        Self::from_parts(logan, sets, maps)
    }

    pub fn terminal(logan: Arc<LoganCategory>) -> Self {
        let sets = vec![vec!["*".to_string()]; logan.object_count()];
        let maps = vec![vec![0]; logan.arrow_count()];
        Self::from_parts(logan, sets, maps)
    }

    pub fn empty(logan: Arc<LoganCategory>) -> Self {
        let sets = vec![Vec::new(); logan.object_count()];
        let maps = vec![Vec::new(); logan.arrow_count()];
        Self::from_parts(logan, sets, maps)
    }

    /// Objectwise product; `(p, q)` is stored at index `p * |Q(C)| + q`.
    pub fn product(&self, other: &Presheaf) -> Result<Presheaf, TensorError> {
        if !same_domain(&self.logan, &other.logan) {
            return Err(TensorError::DomainMismatch);
        }
        let l = &*self.logan;
        let sets = self
            .sets
            .iter()
            .zip(&other.sets)
            .map(|(a, b)| a.iter().flat_map(|x| b.iter().map(move |y| format!("({x},{y})"))).collect())
            .collect();
        let maps = (0..l.arrow_count())
            .map(|u| {
                let (qt, qs) = (other.sets[l.target(u)].len(), other.sets[l.source(u)].len());
                (0..self.sets[l.target(u)].len() * qt)
                    .map(|i| self.maps[u][i / qt] * qs + other.maps[u][i % qt])
                    .collect()
            })
            .collect();
        Ok(Self::from_parts(self.logan.clone(), sets, maps))
    }

    pub fn coproduct(&self, other: &Presheaf) -> Result<Presheaf, TensorError> {
        if !same_domain(&self.logan, &other.logan) {
            return Err(TensorError::DomainMismatch);
        }
        let l = &*self.logan;
        let sets = self
            .sets
            .iter()
            .zip(&other.sets)
            .map(|(a, b)| {
                let mut v: Vec<String> = a.iter().map(|x| format!("{x}.0")).collect();
                v.extend(b.iter().map(|x| format!("{x}.1")));
                v
            })
            .collect();
        let maps = (0..l.arrow_count())
            .map(|u| {
                let shift = self.sets[l.source(u)].len();
                let mut v = self.maps[u].clone();
                v.extend(other.maps[u].iter().map(|&y| y + shift));
                v
            })
            .collect();
        Ok(Self::from_parts(self.logan.clone(), sets, maps))
    }

    /// Subpresheaf where `alpha` and `beta` agree, with its inclusion.
    pub fn equalizer(&self, alpha: &PresheafMorphism, beta: &PresheafMorphism) -> (Presheaf, PresheafMorphism) {
        let l = &*self.logan;
        let keep: Vec<Vec<usize>> = (0..l.object_count())
            .map(|o| {
                (0..self.sets[o].len())
                    .filter(|&p| alpha.components[o][p] == beta.components[o][p])
                    .collect()
            })
            .collect();
        let sets = keep
            .iter()
            .enumerate()
            .map(|(o, k)| k.iter().map(|&p| self.sets[o][p].clone()).collect())
            .collect();
        let maps = (0..l.arrow_count())
            .map(|u| {
                let src = &keep[l.source(u)];
                keep[l.target(u)]
                    .iter()
                    .map(|&p| src.binary_search(&self.maps[u][p]).expect("equalizers are subpresheaves"))
                    .collect()
            })
            .collect();
        (Self::from_parts(self.logan.clone(), sets, maps), PresheafMorphism { components: keep })
    }
}

/// Componentwise map of presheaves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PresheafMorphism {
    pub components: Vec<Vec<usize>>,
}

impl PresheafMorphism {
    pub fn is_natural(&self, source: &Presheaf, target: &Presheaf) -> bool {
        let l = &*source.logan;
        (0..l.object_count()).all(|o| {
            self.components[o].len() == source.sets[o].len()
                && self.components[o].iter().all(|&y| y < target.sets[o].len())
        }) && (0..l.arrow_count()).all(|u| {
            let (src, tgt) = (l.source(u), l.target(u));
            (0..source.sets[tgt].len())
                .all(|p| self.components[src][source.maps[u][p]] == target.maps[u][self.components[tgt][p]])
        })
    }

    /// Product projections `P × Q -> P` and `P × Q -> Q`.
    pub fn projections(p: &Presheaf, q: &Presheaf) -> (PresheafMorphism, PresheafMorphism) {
        let first = p
            .sets
            .iter()
            .zip(&q.sets)
            .map(|(a, b)| (0..a.len() * b.len()).map(|i| i / b.len()).collect())
            .collect();
        let second = p
            .sets
            .iter()
            .zip(&q.sets)
            .map(|(a, b)| (0..a.len() * b.len()).map(|i| i % b.len()).collect())
            .collect();
        (PresheafMorphism { components: first }, PresheafMorphism { components: second })
    }
}

/// All presheaf morphisms `source -> target`, at most `limit` of them.
pub fn enumerate_presheaf_morphisms(source: &Presheaf, target: &Presheaf, limit: usize) -> Vec<PresheafMorphism> {
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    for_each_presheaf_morphism(source, target, |components| {
        out.push(PresheafMorphism { components: components.to_vec() });
        out.len() < limit
    });
    out
}

/// Backtracking search calling `visit` on each morphism's components until
/// it returns false.
pub fn for_each_presheaf_morphism(
    source: &Presheaf,
    target: &Presheaf,
    mut visit: impl FnMut(&[Vec<usize>]) -> bool,
) {
    let l = &*source.logan;
    let slots: Vec<(ObjId, usize)> = (0..l.object_count())
        .flat_map(|o| (0..source.sets[o].len()).map(move |p| (o, p)))
        .collect();
    let mut assignment: Vec<Vec<Option<usize>>> = source.sets.iter().map(|s| vec![None; s.len()]).collect();
    let mut scratch: Vec<Vec<usize>> = source.sets.iter().map(|s| vec![0; s.len()]).collect();

    fn consistent(source: &Presheaf, target: &Presheaf, asg: &[Vec<Option<usize>>], o: ObjId, p: usize) -> bool {
        let l = &*source.logan;
        let value = asg[o][p].expect("assigned");
        // o is the target of u: θ_src(P(u)(p)) = Q(u)(θ_o(p))
        for &u in l.category().incoming(o) {
            let src = l.source(u);
            if let Some(v) = asg[src][source.maps[u][p]] {
                if v != target.maps[u][value] {
                    return false;
                }
            }
        }
        // o is the source of u: θ_o(P(u)(p')) = Q(u)(θ_tgt(p'))
        for &u in l.category().outgoing(o) {
            let tgt = l.target(u);
            for (q, w) in asg[tgt].iter().enumerate() {
                if let Some(w) = w {
                    if source.maps[u][q] == p && target.maps[u][*w] != value {
                        return false;
                    }
                }
            }
        }
        true
    }

    struct Search<'a, F> {
        source: &'a Presheaf,
        target: &'a Presheaf,
        slots: Vec<(ObjId, usize)>,
        visit: F,
    }

    impl<F: FnMut(&[Vec<usize>]) -> bool> Search<'_, F> {
        /// Returns false once the visitor asks to stop.
        fn go(&mut self, i: usize, asg: &mut [Vec<Option<usize>>], scratch: &mut [Vec<usize>]) -> bool {
            if i == self.slots.len() {
                for (row, a) in scratch.iter_mut().zip(asg.iter()) {
                    for (v, w) in row.iter_mut().zip(a) {
                        *v = w.expect("assigned");
                    }
                }
                return (self.visit)(scratch);
            }
            let (o, p) = self.slots[i];
            for v in 0..self.target.sets[o].len() {
                asg[o][p] = Some(v);
                if consistent(self.source, self.target, asg, o, p) && !self.go(i + 1, asg, scratch) {
                    asg[o][p] = None;
                    return false;
                }
            }
            asg[o][p] = None;
            true
        }
    }

    let mut search = Search { source, target, slots, visit: &mut visit };
    search.go(0, &mut assignment, &mut scratch);
}

/// `P ⊗ A`: triples `(C, p, a)` with `p ∈ P(C)`, `a ∈ A(C)`, modulo
/// `(C, P(u)(p), a) ~ (C', p, A(u)(a))` for `u: C -> C'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSet {
    /// Members of each class, least triple first.
    pub classes: Vec<Vec<(ObjId, usize, usize)>>,
    /// Class of triple `(C, p, a)` at `offsets[C] + p * |A(C)| + a`.
    class_of: Vec<usize>,
    offsets: Vec<usize>,
    widths: Vec<usize>,
}

impl TensorSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, o: ObjId, p: usize, a: usize) -> usize {
        self.class_of[self.offsets[o] + p * self.widths[o] + a]
    }

    pub fn labels(&self, p: &Presheaf, a: &SetFunctor) -> Vec<String> {
        self.classes
            .iter()
            .map(|c| {
                let (o, x, y) = c[0];
                format!("{}⊗{}", p.sets[o][x], a.set(o)[y])
            })
            .collect()
    }
}

pub fn tensor(p: &Presheaf, a: &SetFunctor) -> Result<TensorSet, TensorError> {
    if !same_domain(&p.logan, a.logan()) {
        return Err(TensorError::DomainMismatch);
    }
    let l = &*p.logan;
    let widths: Vec<usize> = a.sets().iter().map(Vec::len).collect();
    let offsets = offsets((0..l.object_count()).map(|o| p.sets[o].len() * widths[o]));
    let idx = |o: ObjId, x: usize, y: usize| offsets[o] + x * widths[o] + y;
    let mut uf = UnionFind::new(offsets[l.object_count()]);
    for u in 0..l.arrow_count() {
        let (c, c2) = (l.source(u), l.target(u));
        for x in 0..p.sets[c2].len() {
            for y in 0..widths[c] {
                uf.union(idx(c, p.maps[u][x], y), idx(c2, x, a.apply(u, y)));
            }
        }
    }
    let (class_of, flat_classes) = uf.classes();
    let triple = |flat: usize| {
        let o = offsets.partition_point(|&off| off <= flat) - 1;
        let r = flat - offsets[o];
        (o, r / widths[o], r % widths[o])
    };
    let classes = flat_classes.iter().map(|c| c.iter().map(|&f| triple(f)).collect()).collect();
    Ok(TensorSet { classes, class_of, offsets, widths })
}

/// `α ⊗ A: P ⊗ A -> Q ⊗ A`.
pub fn tensor_map(alpha: &PresheafMorphism, from: &TensorSet, to: &TensorSet) -> Vec<usize> {
    from.classes
        .iter()
        .map(|c| {
            let (o, x, y) = c[0];
            to.class(o, alpha.components[o][x], y)
        })
        .collect()
}

/// `Hom(A, R)(C)` = functions `A(C) -> R`, encoded in base `|R|` with the
/// image of element `i` as digit `i`.
pub fn hom_presheaf(a: &SetFunctor, r: &[String]) -> Result<Presheaf, TensorError> {
    let l = &**a.logan();
    let k = r.len();
    let mut sets: Vec<Vec<String>> = Vec::with_capacity(l.object_count());
    for o in 0..l.object_count() {
        let n = a.set(o).len();
        let size = k.checked_pow(n as u32).filter(|&s| s <= HOM_SET_CAP).ok_or_else(|| TensorError::TooLarge {
            object: l.object_name(o).to_string(),
            size: k.saturating_pow(n as u32),
            cap: HOM_SET_CAP,
        })?;
        sets.push(
            (0..size)
                .map(|code| {
                    let images: Vec<&str> = decode(code, k, n).into_iter().map(|d| r[d].as_str()).collect();
                    format!("[{}]", images.join(","))
                })
                .collect(),
        );
    }
    let maps = (0..l.arrow_count())
        .map(|u| {
            let tgt = l.target(u);
            let nt = a.set(tgt).len();
            (0..sets[tgt].len())
                .map(|code| {
                    let phi = decode(code, k, nt);
                    encode(a.map(u).iter().map(|&y| phi[y]), k)
                })
                .collect::<Vec<usize>>()
        })
        .collect::<Vec<_>>();
    debug_assert!(maps.iter().enumerate().all(|(u, m)| m.iter().all(|&c| c < sets[l.source(u)].len())));
    Ok(Presheaf::from_parts(a.logan().clone(), sets, maps))
}

fn decode(mut code: usize, k: usize, n: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let d = code % k;
            code /= k;
            d
        })
        .collect()
}

fn encode(digits: impl DoubleEndedIterator<Item = usize>, k: usize) -> usize {
    digits.rev().fold(0, |acc, d| acc * k + d)
}

/// Co-Yoneda: `[C, h, a] ↦ A(h)(a)` is a bijection `y(e) ⊗ A -> A(e)`.
pub fn co_yoneda_map(e: ObjId, y: &Presheaf, a: &SetFunctor, t: &TensorSet) -> Vec<usize> {
    let l = &*y.logan;
    t.classes
        .iter()
        .map(|c| {
            let (o, h, x) = c[0];
            let arrow = l.hom_set(o, e).expect("object")[h];
            a.apply(arrow, x)
        })
        .collect()
}

/// Checks the co-Yoneda bijection at every object and its naturality along
/// every arrow `v: e -> e'`.
pub fn check_co_yoneda(a: &SetFunctor) -> Result<(), String> {
    let l = a.logan().clone();
    let mut data = Vec::new();
    for e in 0..l.object_count() {
        let y = Presheaf::representable(l.clone(), e);
        let t = tensor(&y, a).map_err(|err| err.to_string())?;
        let m = co_yoneda_map(e, &y, a, &t);
        let mut seen = vec![false; a.set(e).len()];
        if m.len() != seen.len() || m.iter().any(|&v| std::mem::replace(&mut seen[v], true)) {
            return Err(format!("y({}) ⊗ A is not in bijection with A({})", l.object_name(e), l.object_name(e)));
        }
        data.push((y, t, m));
    }
    for v in 0..l.arrow_count() {
        let (e, e2) = (l.source(v), l.target(v));
        // y(v): y(e) -> y(e'), h ↦ v∘h
        let components = (0..l.object_count())
            .map(|c| {
                let target = l.hom_set(c, e2).expect("object");
                l.hom_set(c, e)
                    .expect("object")
                    .iter()
                    .map(|&h| target.iter().position(|&x| Some(x) == l.compose(v, h)).expect("complete"))
                    .collect()
            })
            .collect();
        let yv = PresheafMorphism { components };
        let induced = tensor_map(&yv, &data[e].1, &data[e2].1);
        for (cls, &img) in induced.iter().enumerate() {
            if data[e2].2[img] != a.apply(v, data[e].2[cls]) {
                return Err(format!("co-Yoneda is not natural along {}", l.label(v)));
            }
        }
    }
    Ok(())
}

/// Largest `|Hom(P ⊗ A, R)|` that [`check_adjunction`] will enumerate.
pub const ADJUNCTION_CAP: usize = 1 << 20;

/// `Hom(P ⊗ A, R) ≅ Hom(P, Hom(A, R))`: every map out of `P ⊗ A` transposes
/// to a natural transformation and back, every natural transformation
/// descends to `P ⊗ A`, and the two hom-sets have the same size.
pub fn check_adjunction(p: &Presheaf, a: &SetFunctor, r: &[String]) -> Result<AdjunctionReport, String> {
    check_adjunction_with(p, a, r, Strategy::default())
}

pub fn check_adjunction_with(
    p: &Presheaf,
    a: &SetFunctor,
    r: &[String],
    strategy: Strategy,
) -> Result<AdjunctionReport, String> {
    let t = tensor(p, a).map_err(|e| e.to_string())?;
    let h = hom_presheaf(a, r).map_err(|e| e.to_string())?;
    let l = &*p.logan;
    let k = r.len();
    let left_count = k
        .checked_pow(t.len() as u32)
        .filter(|&c| c <= ADJUNCTION_CAP)
        .ok_or_else(|| format!("Hom(P ⊗ A, R) has more than {ADJUNCTION_CAP} elements"))?;
    let failure = strategy.find_map_first(0..left_count, |code| {
        let g = decode(code, k, t.len());
        // θ_C(p) = (a ↦ g([C, p, a]))
        let components: Vec<Vec<usize>> = (0..l.object_count())
            .map(|o| {
                (0..p.sets[o].len())
                    .map(|x| encode((0..a.set(o).len()).map(|y| g[t.class(o, x, y)]), k))
                    .collect()
            })
            .collect();
        let theta = PresheafMorphism { components };
        if !theta.is_natural(p, &h) {
            return Some("transpose of a map out of P ⊗ A is not natural");
        }
        // back: g'([C,p,a]) = θ_C(p)(a); g' = g makes the transpose injective
        let back_ok = t.classes.iter().zip(&g).all(|(c, &v)| {
            let (o, x, y) = c[0];
            decode(theta.components[o][x], k, a.set(o).len())[y] == v
        });
        (!back_ok).then_some("transposing twice is not the identity")
    });
    if let Some(msg) = failure {
        return Err(msg.to_string());
    }
    let mut right_count = 0usize;
    let mut descends = true;
    for_each_presheaf_morphism(p, &h, |theta| {
        right_count += 1;
        descends = t.classes.iter().all(|c| {
            let value = |&(o, x, y): &(ObjId, usize, usize)| decode(theta[o][x], k, a.set(o).len())[y];
            let first = value(&c[0]);
            c[1..].iter().all(|m| value(m) == first)
        });
        descends && right_count <= left_count
    });
    if !descends {
        return Err("presheaf morphism does not descend to P ⊗ A".into());
    }
    if right_count != left_count {
        return Err(format!("{left_count} maps out of P ⊗ A but {right_count}+ presheaf morphisms"));
    }
    Ok(AdjunctionReport { tensor_size: t.len(), hom_count: left_count })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub tensor_size: usize,
    pub hom_count: usize,
}

/// Terminal, empty, representables, and two small combinations.
pub fn presheaf_suite(logan: &Arc<LoganCategory>) -> Vec<(String, Presheaf)> {
    let mut out = vec![
        ("1".to_string(), Presheaf::terminal(logan.clone())),
        ("0".to_string(), Presheaf::empty(logan.clone())),
    ];
    for e in 0..logan.object_count() {
        out.push((format!("y({})", logan.object_name(e)), Presheaf::representable(logan.clone(), e)));
    }
    let y0 = Presheaf::representable(logan.clone(), 0);
    let last = Presheaf::representable(logan.clone(), logan.object_count() - 1);
    out.push((
        format!("y({})+1", logan.object_name(0)),
        y0.coproduct(&Presheaf::terminal(logan.clone())).expect("same domain"),
    ));
    out.push((
        format!("y({})+y({})", logan.object_name(0), logan.object_name(logan.object_count() - 1)),
        y0.coproduct(&last).expect("same domain"),
    ));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatnessWitness {
    pub kind: String,
    pub presheaves: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatnessReport {
    pub terminal_preserved: bool,
    pub products_checked: usize,
    pub equalizers_checked: usize,
    pub failures: Vec<FlatnessWitness>,
}

impl FlatnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn is_bijection(map: &[usize], target_len: usize) -> bool {
    let mut seen = vec![false; target_len];
    map.len() == target_len && map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
}

/// Does `- ⊗ A` preserve the terminal presheaf, binary products and
/// equalizers on the presheaf suite?
pub fn flatness_spotcheck(a: &SetFunctor, suite: &[(String, Presheaf)]) -> FlatnessReport {
    let l = a.logan();
    let mut failures = Vec::new();
    let one = tensor(&Presheaf::terminal(l.clone()), a).expect("same domain");
    let terminal_preserved = one.len() == 1;
    if !terminal_preserved {
        failures.push(FlatnessWitness {
            kind: "terminal".into(),
            presheaves: vec!["1".into()],
            detail: format!("1 ⊗ A has {} elements", one.len()),
        });
    }
    let tensors: Vec<TensorSet> = suite.iter().map(|(_, p)| tensor(p, a).expect("same domain")).collect();
    let mut products_checked = 0;
    for (i, (np, p)) in suite.iter().enumerate() {
        for (j, (nq, q)) in suite.iter().enumerate().skip(i) {
            products_checked += 1;
            let pq = p.product(q).expect("same domain");
            let t = tensor(&pq, a).expect("same domain");
            let (pi1, pi2) = PresheafMorphism::projections(p, q);
            let m1 = tensor_map(&pi1, &t, &tensors[i]);
            let m2 = tensor_map(&pi2, &t, &tensors[j]);
            let width = tensors[j].len();
            let comparison: Vec<usize> = m1.iter().zip(&m2).map(|(&x, &y)| x * width + y).collect();
            if !is_bijection(&comparison, tensors[i].len() * width) {
                failures.push(FlatnessWitness {
                    kind: "product".into(),
                    presheaves: vec![np.clone(), nq.clone()],
                    detail: format!("(P×Q)⊗A has {} elements, (P⊗A)×(Q⊗A) has {}", t.len(), tensors[i].len() * width),
                });
            }
        }
    }
    let mut equalizers_checked = 0;
    for (i, (np, p)) in suite.iter().enumerate() {
        for (j, (nq, q)) in suite.iter().enumerate() {
            let morphisms = enumerate_presheaf_morphisms(p, q, 8);
            for (x, alpha) in morphisms.iter().enumerate() {
                for beta in &morphisms[x + 1..] {
                    equalizers_checked += 1;
                    let (eq, incl) = p.equalizer(alpha, beta);
                    let te = tensor(&eq, a).expect("same domain");
                    let into = tensor_map(&incl, &te, &tensors[i]);
                    let fa = tensor_map(alpha, &tensors[i], &tensors[j]);
                    let fb = tensor_map(beta, &tensors[i], &tensors[j]);
                    let agree: Vec<usize> = (0..tensors[i].len()).filter(|&c| fa[c] == fb[c]).collect();
                    let mut image: Vec<usize> = into.clone();
                    image.sort();
                    let injective = image.windows(2).all(|w| w[0] != w[1]);
                    if !injective || image != agree {
                        failures.push(FlatnessWitness {
                            kind: "equalizer".into(),
                            presheaves: vec![np.clone(), nq.clone()],
                            detail: format!(
                                "Eq⊗A has {} elements, equalizer of the induced maps has {}",
                                te.len(),
                                agree.len()
                            ),
                        });
                    }
                }
            }
        }
    }
    FlatnessReport { terminal_preserved, products_checked, equalizers_checked, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::phi;
    use crate::fixtures;

    fn logan(s: crate::semigroup::InverseSemigroup) -> Arc<LoganCategory> {
        Arc::new(LoganCategory::build(Arc::new(s)))
    }

    fn sizes(p: &Presheaf) -> Vec<usize> {
        p.sets().iter().map(Vec::len).collect()
    }

    #[test]
    fn representable_examples() {
        let z = logan(fixtures::z3());
        assert_eq!(sizes(&Presheaf::representable(z, 0)), [3]);
        let l = logan(fixtures::sl3());
        let e = l.object_by_name("e").unwrap();
        let y = Presheaf::representable(l.clone(), e);
        let at = |n: &str| y.set(l.object_by_name(n).unwrap()).to_vec();
        assert_eq!(at("g"), ["(e,g)"]);
        assert_eq!(at("e"), ["(e,e)"]);
        assert!(at("f").is_empty());
        let c = logan(fixtures::ch2());
        let e = c.object_by_name("e").unwrap();
        assert_eq!(sizes(&Presheaf::representable(c, e)), [1, 1]);
    }

    #[test]
    fn presheaf_constructions_validate() {
        for (_, s) in fixtures::semigroups() {
            let l = logan(s);
            for (name, p) in presheaf_suite(&l) {
                Presheaf::new(l.clone(), p.sets().to_vec(), p.maps().to_vec()).unwrap_or_else(|e| panic!("{name}: {e}"));
                let pp = p.product(&p).unwrap();
                Presheaf::new(l.clone(), pp.sets().to_vec(), pp.maps().to_vec()).unwrap();
            }
        }
    }

    #[test]
    fn broken_presheaf_is_rejected() {
        let l = logan(fixtures::z3());
        let a = l.arrow(0, 1).unwrap();
        let mut maps = vec![vec![0, 1]; 3];
        maps[a] = vec![1, 0];
        let err = Presheaf::new(l, vec![vec!["p".into(), "q".into()]], maps).unwrap_err();
        assert!(matches!(err, TensorError::CompositionViolation { .. }));
    }

    #[test]
    fn tensor_with_terminal_counts_components() {
        for (name, a) in fixtures::action_suite() {
            let f = phi(&a);
            let t = tensor(&Presheaf::terminal(f.logan().clone()), &f).unwrap();
            // brute-force connected components of the category of elements
            let el = f.category_of_elements();
            let mut uf = UnionFind::new(el.category.object_count());
            for arrow in el.category.arrows() {
                uf.union(arrow.source, arrow.target);
            }
            assert_eq!(t.len(), uf.classes().1.len(), "{name}");
        }
    }

    #[test]
    fn tensor_with_empty_functor_is_empty() {
        let l = logan(fixtures::sl3());
        let t = tensor(&Presheaf::terminal(l.clone()), &SetFunctor::empty(l)).unwrap();
        assert!(t.is_empty());
    }

    #[test]
    fn co_yoneda_on_fixtures() {
        for (name, a) in fixtures::action_suite() {
            check_co_yoneda(&phi(&a)).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn hom_presheaf_examples() {
        let r2 = vec!["0".to_string(), "1".to_string()];
        let l = logan(fixtures::sl3());
        assert_eq!(sizes(&hom_presheaf(&SetFunctor::terminal(l), &r2).unwrap()), [2, 2, 2]);
        let b = phi(&fixtures::b2_natural());
        let h = hom_presheaf(&b, &["*".to_string()]).unwrap();
        assert!(sizes(&h).iter().all(|&n| n == 1));
        let z = phi(&fixtures::z3_regular());
        assert_eq!(sizes(&hom_presheaf(&z, &r2).unwrap()), [8]);
    }

    #[test]
    fn adjunction_examples() {
        let r: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let a = phi(&fixtures::ex33_action());
        let l = a.logan().clone();
        let empty = check_adjunction(&Presheaf::empty(l.clone()), &a, &r).unwrap();
        assert_eq!(empty, AdjunctionReport { tensor_size: 0, hom_count: 1 });
        let y = Presheaf::representable(l.clone(), 0);
        let rep = check_adjunction(&y, &a, &r).unwrap();
        assert_eq!(rep.tensor_size, a.set(0).len());
        for (name, p) in presheaf_suite(&l) {
            check_adjunction(&p, &a, &r).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn flatness_on_filtered_and_non_filtered() {
        let z = phi(&fixtures::z3_regular());
        let report = flatness_spotcheck(&z, &presheaf_suite(z.logan()));
        assert!(report.passed(), "{:?}", report.failures);
        assert!(report.equalizers_checked > 0);

        let two = phi(&fixtures::two_z3());
        let report = flatness_spotcheck(&two, &presheaf_suite(two.logan()));
        assert!(report.failures.iter().any(|w| w.kind == "product"));
        assert!(!report.terminal_preserved);
    }

    #[test]
    fn domain_mismatch() {
        let p = Presheaf::terminal(logan(fixtures::z3()));
        let f = SetFunctor::terminal(logan(fixtures::sl3()));
        assert_eq!(tensor(&p, &f), Err(TensorError::DomainMismatch));
    }
}
