//! Covariant functors `L(S) -> FinSet`, their categories of elements, and the
//! torsion-free / directed / filtered / pullback-preserving predicates.

use std::sync::Arc;

use thiserror::Error;

use crate::category::{Arrow, ArrowId, FiniteCategory, FilteredViolation, LoganCategory, ObjId};
use crate::equivalence;
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("expected {expected} object sets, got {found}")]
    WrongObjectCount { expected: usize, found: usize },
    #[error("expected {expected} arrow maps, got {found}")]
    WrongArrowCount { expected: usize, found: usize },
    #[error("map along arrow {arrow} is not a function between the assigned sets")]
    BadMap { arrow: String },
    #[error("identity at object {object} is not sent to an identity function")]
    IdentityViolation { object: String },
    #[error("F({g} ∘ {f}) != F({g}) ∘ F({f})")]
    CompositionViolation { g: String, f: String },
    #[error("functor is not torsion-free: ({object},{x}) ~ ({object},{y})")]
    NotTorsionFree { object: String, x: String, y: String },
    #[error("functors live over different categories")]
    DomainMismatch,
    #[error("natural transformation fails at arrow {arrow} on {point}")]
    NaturalityViolation { arrow: String, point: String },
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
}

/// Two distinct elements over one idempotent that the colimit relation identifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorsionWitness {
    pub object: ObjId,
    pub x: usize,
    pub y: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NaturalityWitness {
    pub arrow: ArrowId,
    pub point: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunctor {
    logan: Arc<LoganCategory>,
    sets: Vec<Vec<String>>,
    maps: Vec<Vec<usize>>,
}

impl SetFunctor {
    pub fn new(logan: Arc<LoganCategory>, sets: Vec<Vec<String>>, maps: Vec<Vec<usize>>) -> Result<Self, FunctorError> {
        let f = Self { logan, sets, maps };
        f.validate()?;
        Ok(f)
    }

    /// Skips validation; used by constructions whose functoriality is a theorem.
    pub(crate) fn from_parts(logan: Arc<LoganCategory>, sets: Vec<Vec<String>>, maps: Vec<Vec<usize>>) -> Self {
        let f = Self { logan, sets, maps };
        debug_assert!(f.validate().is_ok(), "{:?}", f.validate());
        f
    }

    fn validate(&self) -> Result<(), FunctorError> {
        let l = &*self.logan;
        if self.sets.len() != l.object_count() {
            return Err(FunctorError::WrongObjectCount { expected: l.object_count(), found: self.sets.len() });
        }
        if self.maps.len() != l.arrow_count() {
            return Err(FunctorError::WrongArrowCount { expected: l.arrow_count(), found: self.maps.len() });
        }
        for (u, m) in self.maps.iter().enumerate() {
            let (src, tgt) = (l.source(u), l.target(u));
            if m.len() != self.sets[src].len() || m.iter().any(|&y| y >= self.sets[tgt].len()) {
                return Err(FunctorError::BadMap { arrow: l.label(u).to_string() });
            }
        }
        for o in 0..l.object_count() {
            let id = &self.maps[l.identity(o)];
            if id.iter().enumerate().any(|(x, &y)| x != y) {
                return Err(FunctorError::IdentityViolation { object: l.object_name(o).to_string() });
            }
        }
        let m = l.arrow_count();
        for g in 0..m {
            for f in 0..m {
                let Some(gf) = l.compose(g, f) else { continue };
                let ok = self.maps[f].iter().zip(&self.maps[gf]).all(|(&y, &z)| self.maps[g][y] == z);
                if !ok {
                    return Err(FunctorError::CompositionViolation {
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

    /// `F(u)(x)`.
    pub fn apply(&self, u: ArrowId, x: usize) -> usize {
        self.maps[u][x]
    }

    pub fn total_size(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    /// Constant singleton functor.
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

    /// `Hom(e, -)`, acting by postcomposition.
    pub fn corepresentable(logan: Arc<LoganCategory>, e: ObjId) -> Self {
        let l = &*logan;
        let homs: Vec<Vec<ArrowId>> = (0..l.object_count()).map(|c| l.hom_set(e, c).expect("object")).collect();
        let sets = homs
            .iter()
            .map(|h| h.iter().map(|&a| l.label(a).to_string()).collect())
            .collect();
        let maps = (0..l.arrow_count())
            .map(|u| {
                let tgt = &homs[l.target(u)];
                homs[l.source(u)]
                    .iter()
                    .map(|&h| {
                        let c = l.compose(u, h).expect("composable");
                        tgt.iter().position(|&x| x == c).expect("hom set is complete")
                    })
                    .collect()
            })
            .collect();
        Self::from_parts(logan, sets, maps)
    }

    pub fn coproduct(&self, other: &SetFunctor) -> Result<SetFunctor, FunctorError> {
        if !same_domain(&self.logan, &other.logan) {
            return Err(FunctorError::DomainMismatch);
        }
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
        let l = &*self.logan;
        let maps = (0..l.arrow_count())
            .map(|u| {
                let shift = self.sets[l.target(u)].len();
                let mut v = self.maps[u].clone();
                v.extend(other.maps[u].iter().map(|&y| y + shift));
                v
            })
            .collect();
        Ok(Self::from_parts(self.logan.clone(), sets, maps))
    }

    /// Transport along per-object permutations: element `x` of `F(o)` becomes `perms[o][x]`.
    pub fn relabel(&self, perms: &[Vec<usize>]) -> SetFunctor {
        let l = &*self.logan;
        let sets = self
            .sets
            .iter()
            .zip(perms)
            .map(|(set, perm)| {
                let mut v = vec![String::new(); set.len()];
                for (x, name) in set.iter().enumerate() {
                    v[perm[x]] = name.clone();
                }
                v
            })
            .collect();
        let maps = (0..l.arrow_count())
            .map(|u| {
                let (src, tgt) = (l.source(u), l.target(u));
                let mut v = vec![0; self.sets[src].len()];
                for x in 0..v.len() {
                    v[perms[src][x]] = perms[tgt][self.maps[u][x]];
                }
                v
            })
            .collect();
        Self::from_parts(self.logan.clone(), sets, maps)
    }

    pub fn category_of_elements(&self) -> ElementsCategory {
        ElementsCategory::build(self)
    }

    /// The colimit of `F` restricted to `E(S)`: pairs `(e, x)` modulo the
    /// equivalence generated by `(e, x) ~ (e', F(e', e)(x))` for `e <= e'`.
    pub fn idempotent_colimit(&self) -> Colimit {
        let l = &*self.logan;
        let offsets = offsets(self.sets.iter().map(Vec::len));
        let mut uf = UnionFind::new(self.total_size());
        for u in l.inclusions() {
            let (src, tgt) = (l.source(u), l.target(u));
            for (x, &y) in self.maps[u].iter().enumerate() {
                uf.union(offsets[src] + x, offsets[tgt] + y);
            }
        }
        let (flat_class, flat_classes) = uf.classes();
        let pair = |flat: usize| {
            let o = offsets.partition_point(|&off| off <= flat) - 1;
            (o, flat - offsets[o])
        };
        let classes = flat_classes.iter().map(|c| c.iter().map(|&f| pair(f)).collect()).collect();
        let class_of = (0..l.object_count())
            .map(|o| (0..self.sets[o].len()).map(|x| flat_class[offsets[o] + x]).collect())
            .collect();
        Colimit { classes, class_of }
    }

    pub fn torsion(&self) -> Result<(), TorsionWitness> {
        let colimit = self.idempotent_colimit();
        for class in &colimit.classes {
            for (i, &(o, x)) in class.iter().enumerate() {
                if let Some(&(_, y)) = class[i + 1..].iter().find(|&&(o2, _)| o2 == o) {
                    return Err(TorsionWitness { object: o, x, y });
                }
            }
        }
        Ok(())
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion().is_ok()
    }

    pub fn torsion_error(&self, w: TorsionWitness) -> FunctorError {
        FunctorError::NotTorsionFree {
            object: self.logan.object_name(w.object).to_string(),
            x: self.sets[w.object][w.x].clone(),
            y: self.sets[w.object][w.y].clone(),
        }
    }

    pub fn directedness(&self) -> Result<(), ElementsViolation> {
        let el = self.category_of_elements();
        match el.category.directed_violation() {
            None => Ok(()),
            Some(v) => Err(el.describe(v)),
        }
    }

    pub fn is_directed(&self) -> bool {
        self.directedness().is_ok()
    }

    pub fn filteredness(&self) -> Result<(), ElementsViolation> {
        let el = self.category_of_elements();
        match el.category.filtered_violation() {
            None => Ok(()),
            Some(v) => Err(el.describe(v)),
        }
    }

    pub fn is_filtered(&self) -> bool {
        self.filteredness().is_ok()
    }

    /// Pullback preservation, decided by strictness of the induced action.
    pub fn preserves_pullbacks(&self) -> Result<bool, FunctorError> {
        let psi = equivalence::psi(self)?;
        Ok(psi.action.is_strict())
    }

    pub fn classify(&self) -> Classification {
        Classification {
            torsion_free: self.torsion(),
            directed: self.directedness(),
            filtered: self.filteredness(),
            pullback_preserving: self.preserves_pullbacks().ok(),
        }
    }
}

pub(crate) fn same_domain(a: &Arc<LoganCategory>, b: &Arc<LoganCategory>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Prefix sums of block lengths, with the total appended.
pub(crate) fn offsets(lens: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut out = Vec::new();
    let mut acc = 0;
    for len in lens {
        out.push(acc);
        acc += len;
    }
    out.push(acc);
    out
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub torsion_free: Result<(), TorsionWitness>,
    pub directed: Result<(), ElementsViolation>,
    pub filtered: Result<(), ElementsViolation>,
    /// `None` when the functor is not torsion-free.
    pub pullback_preserving: Option<bool>,
}

/// Quotient of `⋃ {e} × F(e)` by the generated equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colimit {
    /// Members of each class, least pair first.
    pub classes: Vec<Vec<(ObjId, usize)>>,
    /// `class_of[o][x]` is the class of `(o, x)`.
    pub class_of: Vec<Vec<usize>>,
}

impl Colimit {
    /// `π₁` of a class: the objects it meets.
    pub fn support(&self, class: usize) -> Vec<ObjId> {
        let mut v: Vec<ObjId> = self.classes[class].iter().map(|&(o, _)| o).collect();
        v.dedup();
        v
    }

    /// The unique member over `o` of a class of a torsion-free functor.
    pub fn member_over(&self, class: usize, o: ObjId) -> Option<usize> {
        self.classes[class].iter().find(|&&(p, _)| p == o).map(|&(_, x)| x)
    }
}

/// Failure of F1/F2/F3 phrased in terms of elements `(object, point)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementsViolation {
    Empty,
    NoSpan { i: (ObjId, usize), j: (ObjId, usize) },
    NoEqualizer { source: (ObjId, usize), u: ArrowId, v: ArrowId },
}

/// Category of elements: objects `(C, p)`, arrows `(u, p)` for `u: C -> C'`.
#[derive(Debug, Clone)]
pub struct ElementsCategory {
    pub category: FiniteCategory,
    pub objects: Vec<(ObjId, usize)>,
    /// `(base arrow, source point)` for each arrow.
    pub arrows: Vec<(ArrowId, usize)>,
}

impl ElementsCategory {
    fn build(f: &SetFunctor) -> Self {
        let l = &*f.logan;
        let obj_offsets = offsets(f.sets.iter().map(Vec::len));
        let mut objects = Vec::new();
        let mut names = Vec::new();
        for o in 0..l.object_count() {
            for (x, label) in f.sets[o].iter().enumerate() {
                objects.push((o, x));
                names.push(format!("({},{})", l.object_name(o), label));
            }
        }
        let mut arrow_offsets = Vec::with_capacity(l.arrow_count());
        let mut arrows = Vec::new();
        let mut arrow_data = Vec::new();
        for u in 0..l.arrow_count() {
            arrow_offsets.push(arrows.len());
            let (src, tgt) = (l.source(u), l.target(u));
            for x in 0..f.sets[src].len() {
                arrows.push(Arrow {
                    source: obj_offsets[src] + x,
                    target: obj_offsets[tgt] + f.maps[u][x],
                    label: format!("{}@{}", l.label(u), f.sets[src][x]),
                });
                arrow_data.push((u, x));
            }
        }
        let m = arrows.len();
        let mut compose = vec![None; m * m];
        for (g, &(ug, xg)) in arrow_data.iter().enumerate() {
            for (h, &(uh, xh)) in arrow_data.iter().enumerate() {
                if arrows[h].target == arrows[g].source {
                    let c = l.compose(ug, uh).expect("base arrows compose");
                    compose[g * m + h] = Some(arrow_offsets[c] + xh);
                    debug_assert_eq!(f.maps[uh][xh], xg);
                }
            }
        }
        let identities = objects
            .iter()
            .map(|&(o, x)| arrow_offsets[l.identity(o)] + x)
            .collect();
        let category = FiniteCategory::from_parts(names, arrows, compose, identities);
        Self { category, objects, arrows: arrow_data }
    }

    fn describe(&self, v: FilteredViolation) -> ElementsViolation {
        match v {
            FilteredViolation::Empty => ElementsViolation::Empty,
            FilteredViolation::NoSpan { i, j } => ElementsViolation::NoSpan { i: self.objects[i], j: self.objects[j] },
            FilteredViolation::NoEqualizer { u, v } => ElementsViolation::NoEqualizer {
                source: self.objects[self.category.source(u)],
                u: self.arrows[u].0,
                v: self.arrows[v].0,
            },
        }
    }
}

/// A natural transformation between set-valued functors, componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTrans {
    pub components: Vec<Vec<usize>>,
}

impl NatTrans {
    pub fn identity(f: &SetFunctor) -> Self {
        Self { components: f.sets.iter().map(|s| (0..s.len()).collect()).collect() }
    }

    pub fn check(&self, source: &SetFunctor, target: &SetFunctor) -> Result<(), NaturalityWitness> {
        let l = &*source.logan;
        for o in 0..l.object_count() {
            let comp = &self.components[o];
            if comp.len() != source.sets[o].len() || comp.iter().any(|&y| y >= target.sets[o].len()) {
                return Err(NaturalityWitness { arrow: l.identity(o), point: 0 });
            }
        }
        for u in 0..l.arrow_count() {
            let (src, tgt) = (l.source(u), l.target(u));
            for x in 0..source.sets[src].len() {
                let lhs = self.components[tgt][source.maps[u][x]];
                let rhs = target.maps[u][self.components[src][x]];
                if lhs != rhs {
                    return Err(NaturalityWitness { arrow: u, point: x });
                }
            }
        }
        Ok(())
    }

    /// Every component is a bijection.
    pub fn is_componentwise_bijective(&self, target: &SetFunctor) -> bool {
        self.components.iter().enumerate().all(|(o, comp)| {
            let mut seen = vec![false; target.sets[o].len()];
            comp.len() == seen.len() && comp.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        })
    }

    pub fn compose(&self, first: &NatTrans) -> NatTrans {
        NatTrans {
            components: first
                .components
                .iter()
                .zip(&self.components)
                .map(|(f, g)| f.iter().map(|&y| g[y]).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::phi;
    use crate::fixtures;

    fn logan_of(s: crate::semigroup::InverseSemigroup) -> Arc<LoganCategory> {
        Arc::new(LoganCategory::build(Arc::new(s)))
    }

    /// F(e) = {x}, F(f) = {y}, F(g) = `g_set`, every element of F(g) sent to x and y.
    fn cospan_functor(g_set: &[&str]) -> SetFunctor {
        let l = logan_of(fixtures::sl3());
        let (e, f, g) = (l.object_by_name("e").unwrap(), l.object_by_name("f").unwrap(), l.object_by_name("g").unwrap());
        let mut sets = vec![Vec::new(); 3];
        sets[e] = vec!["x".to_string()];
        sets[f] = vec!["y".to_string()];
        sets[g] = g_set.iter().map(|s| s.to_string()).collect();
        let maps = (0..l.arrow_count())
            .map(|u| {
                if l.source(u) == l.target(u) {
                    (0..sets[l.source(u)].len()).collect()
                } else {
                    vec![0; g_set.len()]
                }
            })
            .collect();
        SetFunctor::new(l, sets, maps).unwrap()
    }

    #[test]
    fn terminal_and_phi_functors_validate() {
        let l = logan_of(fixtures::sl3());
        let t = SetFunctor::terminal(l.clone());
        SetFunctor::new(l, t.sets().to_vec(), t.maps().to_vec()).unwrap();
        let f = phi(&fixtures::ex33_action());
        SetFunctor::new(f.logan().clone(), f.sets().to_vec(), f.maps().to_vec()).unwrap();
    }

    #[test]
    fn broken_composition_is_reported() {
        // on L(CH2) send the non-identity arrow g -> e to the wrong element
        let l = logan_of(fixtures::ch2());
        let (e, g) = (l.object_by_name("e").unwrap(), l.object_by_name("g").unwrap());
        let mut sets = vec![Vec::new(); 2];
        sets[e] = vec!["p".into(), "q".into()];
        sets[g] = vec!["r".into()];
        let mut maps: Vec<Vec<usize>> = (0..l.arrow_count())
            .map(|u| (0..sets[l.source(u)].len()).collect())
            .collect();
        let id_e = l.identity(e);
        maps[id_e] = vec![1, 0];
        let err = SetFunctor::new(l.clone(), sets.clone(), maps).unwrap_err();
        assert!(matches!(err, FunctorError::IdentityViolation { .. }));

        // a functor whose identity is fine but composition is not needs a
        // non-trivial composite; on L(Z3) use a non-homomorphic assignment
        let lz = logan_of(fixtures::z3());
        let sets = vec![vec!["0".to_string(), "1".to_string()]];
        let a = lz.arrow(0, 1).unwrap();
        let mut maps: Vec<Vec<usize>> = vec![vec![0, 1]; 3];
        maps[a] = vec![1, 0];
        let err = SetFunctor::new(lz, sets, maps).unwrap_err();
        assert!(matches!(err, FunctorError::CompositionViolation { .. }), "{err}");
    }

    #[test]
    fn elements_category_sizes() {
        let l = logan_of(fixtures::sl3());
        let t = SetFunctor::terminal(l.clone());
        let el = t.category_of_elements();
        assert_eq!((el.category.object_count(), el.category.arrow_count()), (3, 5));
        el.category.check().unwrap();

        let cospan = cospan_functor(&["z"]);
        let el = cospan.category_of_elements();
        assert_eq!((el.category.object_count(), el.category.arrow_count()), (3, 5));

        let z = phi(&fixtures::z3_regular());
        let el = z.category_of_elements();
        assert_eq!((el.category.object_count(), el.category.arrow_count()), (3, 9));
        el.category.check().unwrap();
    }

    #[test]
    fn torsion_examples() {
        assert!(cospan_functor(&["z"]).is_torsion_free());
        let w = cospan_functor(&["z1", "z2"]).torsion().unwrap_err();
        assert_eq!((w.x, w.y), (0, 1));
        let group_functor = phi(&fixtures::two_z3());
        assert!(group_functor.is_torsion_free());
    }

    #[test]
    fn directed_and_filtered_examples() {
        let z = phi(&fixtures::z3_regular());
        assert!(z.is_directed() && z.is_filtered());
        let two = phi(&fixtures::two_z3());
        assert!(matches!(two.directedness(), Err(ElementsViolation::NoSpan { .. })));
        let empty = SetFunctor::empty(logan_of(fixtures::sl3()));
        assert_eq!(empty.directedness(), Err(ElementsViolation::Empty));
        assert!(phi(&fixtures::b2_natural()).is_filtered());
        // not transitive, hence not even directed
        assert!(!phi(&fixtures::sl3_strict_pair()).is_directed());
    }

    #[test]
    fn pullback_examples() {
        assert_eq!(phi(&fixtures::z3_regular()).preserves_pullbacks(), Ok(true));
        // Ψ of this functor is the strict three-point cover, not the action itself
        assert_eq!(phi(&fixtures::ex33_action()).preserves_pullbacks(), Ok(true));
        assert_eq!(phi(&fixtures::b2_natural()).preserves_pullbacks(), Ok(true));
        assert!(matches!(
            cospan_functor(&["z1", "z2"]).preserves_pullbacks(),
            Err(FunctorError::NotTorsionFree { .. })
        ));
    }

    #[test]
    fn corepresentables_are_functors() {
        for (name, s) in fixtures::semigroups() {
            let l = logan_of(s);
            for e in 0..l.object_count() {
                let f = SetFunctor::corepresentable(l.clone(), e);
                SetFunctor::new(l.clone(), f.sets().to_vec(), f.maps().to_vec()).unwrap_or_else(|err| panic!("{name}: {err}"));
            }
        }
    }

    #[test]
    fn group_functors_filtered_iff_free_transitive() {
        for a in [fixtures::z3_regular(), fixtures::two_z3(), fixtures::z3_point()] {
            let f = phi(&a);
            assert!(f.is_torsion_free());
            assert_eq!(f.is_filtered(), a.is_free() && a.is_transitive());
        }
    }
}
