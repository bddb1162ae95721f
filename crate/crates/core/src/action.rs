//! Partial actions of an inverse semigroup by partial bijections.
//!
//! A [`PartialAction`] is a non-strict S-set: each element acts by a partial
//! injection, and whenever `st·x` is defined so are `t·x` and `s·(t·x)`, with
//! `st·x = s·(t·x)`. Strict S-sets (homomorphisms into `I(X)`) are the special
//! case detected by [`PartialAction::strictness`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::semigroup::{Elem, InverseSemigroup, SemigroupError};
use crate::union_find::UnionFind;

/// A partial map on `0..len`, stored as explicit image-or-undefined per point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialMap(pub Vec<Option<usize>>);

impl PartialMap {
    pub fn empty(len: usize) -> Self {
        Self(vec![None; len])
    }

    pub fn identity_on(len: usize, domain: impl IntoIterator<Item = usize>) -> Self {
        let mut m = Self::empty(len);
        for x in domain {
            m.0[x] = Some(x);
        }
        m
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.0[x]
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&x| self.0[x].is_some()).collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.0.iter().flatten().all(|&y| seen.insert(y))
    }

    /// `self ∘ other` with the largest-domain convention of `I(X)`.
    pub fn after(&self, other: &PartialMap) -> PartialMap {
        PartialMap(other.0.iter().map(|x| x.and_then(|y| self.0[y])).collect())
    }

    pub fn inverse(&self) -> PartialMap {
        let mut out = PartialMap::empty(self.0.len());
        for (x, y) in self.0.iter().enumerate() {
            if let Some(y) = y {
                out.0[*y] = Some(x);
            }
        }
        out
    }

    /// Restriction order: `self` is a restriction of `other`.
    pub fn is_restriction_of(&self, other: &PartialMap) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a.is_none() || a == b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("expected {expected} partial maps, one per semigroup element, got {found}")]
    WrongMapCount { expected: usize, found: usize },
    #[error("partial map of `{element}` has the wrong length or points outside the carrier")]
    BadMap { element: String },
    #[error("duplicate carrier point `{0}`")]
    DuplicatePoint(String),
    #[error("unknown carrier point `{0}`")]
    UnknownPoint(String),
    #[error("`{element}` does not act injectively")]
    NotInjective { element: String },
    #[error("prehomomorphism law fails for s = `{s}`, t = `{t}` at `{point}`")]
    PrehomLawViolation { s: String, t: String, point: String },
    #[error("point `{point}` is not in the domain of any element")]
    NotEffective { point: String },
    #[error("action is not strict (witness `{e}`, `{f}`)")]
    NotStrict { e: String, f: String },
    #[error("action is not transitive (no element moves `{from}` to `{to}`)")]
    NotTransitive { from: String, to: String },
    #[error("actions are over different semigroups")]
    SemigroupMismatch,
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ActionOptions {
    /// Accept points outside every domain instead of rejecting the action.
    pub allow_non_effective: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrictnessWitness {
    pub e: Elem,
    pub f: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectednessWitness {
    pub point: usize,
    pub component_a: Vec<Elem>,
    pub component_b: Vec<Elem>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransitivityWitness {
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreenessWitness {
    pub s: Elem,
    pub t: Elem,
    pub point: usize,
}

/// `s·x` defined in the source but `s·f(x)` undefined or different from `f(s·x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorphismWitness {
    pub element: Elem,
    pub point: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAction {
    semigroup: Arc<InverseSemigroup>,
    carrier: Vec<String>,
    maps: Vec<PartialMap>,
}

impl PartialAction {
    pub fn new(
        semigroup: Arc<InverseSemigroup>,
        carrier: Vec<String>,
        maps: Vec<PartialMap>,
    ) -> Result<Self, ActionError> {
        Self::with_options(semigroup, carrier, maps, ActionOptions::default())
    }

    pub fn with_options(
        semigroup: Arc<InverseSemigroup>,
        carrier: Vec<String>,
        maps: Vec<PartialMap>,
        options: ActionOptions,
    ) -> Result<Self, ActionError> {
        let s = &*semigroup;
        let n = carrier.len();
        let mut seen = BTreeSet::new();
        for p in &carrier {
            if !seen.insert(p.as_str()) {
                return Err(ActionError::DuplicatePoint(p.clone()));
            }
        }
        if maps.len() != s.size() {
            return Err(ActionError::WrongMapCount { expected: s.size(), found: maps.len() });
        }
        for (x, m) in maps.iter().enumerate() {
            if m.len() != n || m.0.iter().flatten().any(|&y| y >= n) {
                return Err(ActionError::BadMap { element: s.name(x).to_string() });
            }
        }
        if let Some(x) = s.elements().find(|&x| !maps[x].is_injective()) {
            return Err(ActionError::NotInjective { element: s.name(x).to_string() });
        }
        for a in s.elements() {
            for b in s.elements() {
                let ab = &maps[s.mul(a, b)];
                for p in 0..n {
                    if let Some(v) = ab.apply(p) {
                        let ok = maps[b].apply(p).and_then(|q| maps[a].apply(q)) == Some(v);
                        if !ok {
                            return Err(ActionError::PrehomLawViolation {
                                s: s.name(a).to_string(),
                                t: s.name(b).to_string(),
                                point: carrier[p].clone(),
                            });
                        }
                    }
                }
            }
        }
        if !options.allow_non_effective {
            if let Some(p) = (0..n).find(|&p| maps.iter().all(|m| m.apply(p).is_none())) {
                return Err(ActionError::NotEffective { point: carrier[p].clone() });
            }
        }
        Ok(Self { semigroup, carrier, maps })
    }

    /// Builds an action from `(element, point, image)` triples given by name.
    pub fn from_named(
        semigroup: Arc<InverseSemigroup>,
        carrier: &[&str],
        pairs: &[(&str, &str, &str)],
    ) -> Result<Self, ActionError> {
        let carrier: Vec<String> = carrier.iter().map(|c| c.to_string()).collect();
        let point = |name: &str| {
            carrier
                .iter()
                .position(|c| c == name)
                .ok_or_else(|| ActionError::UnknownPoint(name.to_string()))
        };
        let mut maps = vec![PartialMap::empty(carrier.len()); semigroup.size()];
        for (s, x, y) in pairs {
            let e = semigroup
                .elem(s)
                .ok_or_else(|| SemigroupError::UnknownElement(s.to_string()))?;
            maps[e].0[point(x)?] = Some(point(y)?);
        }
        Self::new(semigroup, carrier, maps)
    }

    pub fn semigroup(&self) -> &Arc<InverseSemigroup> {
        &self.semigroup
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn point(&self, name: &str) -> Option<usize> {
        self.carrier.iter().position(|c| c == name)
    }

    pub fn map(&self, s: Elem) -> &PartialMap {
        &self.maps[s]
    }

    pub fn maps(&self) -> &[PartialMap] {
        &self.maps
    }

    /// `s·x`, if defined.
    pub fn act(&self, s: Elem, x: usize) -> Option<usize> {
        self.maps[s].apply(x)
    }

    pub fn ineffective_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.maps.iter().all(|m| m.apply(p).is_none())).collect()
    }

    /// First idempotent pair with `act(ef) != act(e) ∘ act(f)`.
    pub fn strictness(&self) -> Result<(), StrictnessWitness> {
        let s = &*self.semigroup;
        for &e in s.idempotents() {
            for &f in s.idempotents() {
                if self.maps[s.mul(e, f)] != self.maps[e].after(&self.maps[f]) {
                    return Err(StrictnessWitness { e, f });
                }
            }
        }
        Ok(())
    }

    pub fn is_strict(&self) -> bool {
        self.strictness().is_ok()
    }

    /// Checks that, over every point, the comparability graph on the idempotents
    /// defined there is connected.
    pub fn connectedness(&self) -> Result<(), ConnectednessWitness> {
        let s = &*self.semigroup;
        for p in 0..self.len() {
            let defined: Vec<Elem> =
                s.idempotents().iter().copied().filter(|&e| self.act(e, p).is_some()).collect();
            let mut uf = UnionFind::new(defined.len());
            for i in 0..defined.len() {
                for j in i + 1..defined.len() {
                    let (a, b) = (defined[i], defined[j]);
                    if s.natural_leq(a, b) || s.natural_leq(b, a) {
                        uf.union(i, j);
                    }
                }
            }
            let (_, classes) = uf.classes();
            if classes.len() > 1 {
                let pick = |c: &Vec<usize>| c.iter().map(|&i| defined[i]).collect();
                return Err(ConnectednessWitness {
                    point: p,
                    component_a: pick(&classes[0]),
                    component_b: pick(&classes[1]),
                });
            }
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        self.connectedness().is_ok()
    }

    pub fn transitivity(&self) -> Result<(), TransitivityWitness> {
        for from in 0..self.len() {
            let mut reached = vec![false; self.len()];
            for m in &self.maps {
                if let Some(y) = m.apply(from) {
                    reached[y] = true;
                }
            }
            if let Some(to) = reached.iter().position(|r| !r) {
                return Err(TransitivityWitness { from, to });
            }
        }
        Ok(())
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity().is_ok()
    }

    /// If `s·x = t·x` then some `c <= s, t` has `c·x = s·x`.
    pub fn freeness(&self) -> Result<(), FreenessWitness> {
        let sg = &*self.semigroup;
        for s in sg.elements() {
            for t in sg.elements() {
                for p in 0..self.len() {
                    let (Some(a), Some(b)) = (self.act(s, p), self.act(t, p)) else { continue };
                    if a != b {
                        continue;
                    }
                    let bounded = sg.elements().any(|c| {
                        sg.natural_leq(c, s) && sg.natural_leq(c, t) && self.act(c, p) == Some(a)
                    });
                    if !bounded {
                        return Err(FreenessWitness { s, t, point: p });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_free(&self) -> bool {
        self.freeness().is_ok()
    }

    /// Transitive and free; only meaningful for strict actions.
    pub fn is_torsor(&self) -> Result<bool, ActionError> {
        if let Err(w) = self.strictness() {
            return Err(ActionError::NotStrict {
                e: self.semigroup.name(w.e).to_string(),
                f: self.semigroup.name(w.f).to_string(),
            });
        }
        Ok(self.is_transitive() && self.is_free())
    }

    /// Disjoint union; points of `other` get the suffix `'`.
    pub fn disjoint_union(&self, other: &PartialAction) -> Result<PartialAction, ActionError> {
        if self.semigroup != other.semigroup {
            return Err(ActionError::SemigroupMismatch);
        }
        let shift = self.len();
        let mut carrier = self.carrier.clone();
        let mut used: BTreeSet<String> = carrier.iter().cloned().collect();
        for p in &other.carrier {
            let mut name = format!("{p}'");
            while used.contains(&name) {
                name.push('\'');
            }
            used.insert(name.clone());
            carrier.push(name);
        }
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| {
                let mut v = a.0.clone();
                v.extend(b.0.iter().map(|y| y.map(|y| y + shift)));
                PartialMap(v)
            })
            .collect();
        PartialAction::new(self.semigroup.clone(), carrier, maps)
    }

    /// Transport along a permutation: point `x` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> PartialAction {
        let n = self.len();
        let mut carrier = vec![String::new(); n];
        for x in 0..n {
            carrier[perm[x]] = self.carrier[x].clone();
        }
        let maps = self
            .maps
            .iter()
            .map(|m| {
                let mut v = vec![None; n];
                for x in 0..n {
                    v[perm[x]] = m.apply(x).map(|y| perm[y]);
                }
                PartialMap(v)
            })
            .collect();
        PartialAction { semigroup: self.semigroup.clone(), carrier, maps }
    }

    /// Wagner–Preston action of `S` on itself: `s·x = sx` for `r(x) <= d(s)`.
    /// For a group this is the left regular action.
    pub fn regular(semigroup: Arc<InverseSemigroup>) -> PartialAction {
        let s = &*semigroup;
        let maps = s
            .elements()
            .map(|a| {
                PartialMap(
                    s.elements()
                        .map(|x| s.natural_leq(s.r(x), s.d(a)).then(|| s.mul(a, x)))
                        .collect(),
                )
            })
            .collect();
        let carrier = s.names().to_vec();
        PartialAction::new(semigroup, carrier, maps).expect("Wagner-Preston action is valid")
    }

    /// Action of `S` on a single point where every element acts as identity.
    pub fn trivial(semigroup: Arc<InverseSemigroup>) -> PartialAction {
        let maps = vec![PartialMap(vec![Some(0)]); semigroup.size()];
        PartialAction::new(semigroup, vec!["*".into()], maps).expect("trivial action is valid")
    }
}

/// Verifies that `map` is a morphism of non-strict S-sets from `a` to `b`.
pub fn check_morphism(map: &[usize], a: &PartialAction, b: &PartialAction) -> Result<(), MorphismWitness> {
    let s = &*a.semigroup;
    for x in s.elements() {
        for p in 0..a.len() {
            if let Some(q) = a.act(x, p) {
                if b.act(x, map[p]) != Some(map[q]) {
                    return Err(MorphismWitness { element: x, point: p });
                }
            }
        }
    }
    Ok(())
}

/// A bijective morphism whose inverse is also a morphism.
pub fn is_isomorphism(map: &[usize], a: &PartialAction, b: &PartialAction) -> bool {
    if a.len() != b.len() || map.len() != a.len() {
        return false;
    }
    let mut inverse = vec![usize::MAX; b.len()];
    for (x, &y) in map.iter().enumerate() {
        if y >= b.len() || inverse[y] != usize::MAX {
            return false;
        }
        inverse[y] = x;
    }
    check_morphism(map, a, b).is_ok() && check_morphism(&inverse, b, a).is_ok()
}

/// All morphisms `a -> b`, by backtracking with incremental equivariance checks.
pub fn enumerate_morphisms(a: &PartialAction, b: &PartialAction) -> Vec<Vec<usize>> {
    let s = &*a.semigroup;
    let n = a.len();
    let mut out = Vec::new();
    let mut assignment: Vec<Option<usize>> = vec![None; n];

    fn consistent(s: &InverseSemigroup, a: &PartialAction, b: &PartialAction, asg: &[Option<usize>], p: usize) -> bool {
        let fp = asg[p].expect("assigned");
        for x in s.elements() {
            if let Some(q) = a.act(x, p) {
                match b.act(x, fp) {
                    None => return false,
                    Some(v) => {
                        if let Some(fq) = asg[q] {
                            if fq != v {
                                return false;
                            }
                        }
                    }
                }
            }
            for (z, fz) in asg.iter().enumerate() {
                let Some(fz) = fz else { continue };
                if z != p && a.act(x, z) == Some(p) && b.act(x, *fz) != Some(fp) {
                    return false;
                }
            }
        }
        true
    }

    fn go(
        s: &InverseSemigroup,
        a: &PartialAction,
        b: &PartialAction,
        asg: &mut Vec<Option<usize>>,
        p: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p == asg.len() {
            out.push(asg.iter().map(|v| v.unwrap()).collect());
            return;
        }
        for target in 0..b.len() {
            asg[p] = Some(target);
            if consistent(s, a, b, asg, p) {
                go(s, a, b, asg, p + 1, out);
            }
        }
        asg[p] = None;
    }

    go(s, a, b, &mut assignment, 0, &mut out);
    out
}

/// Some isomorphism `a -> b`, if the actions are isomorphic.
pub fn find_isomorphism(a: &PartialAction, b: &PartialAction) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.semigroup != b.semigroup {
        return None;
    }
    enumerate_morphisms(a, b).into_iter().find(|m| is_isomorphism(m, a, b))
}

/// One-line name of a partial bijection of `{1..n}`: image or `-` per point.
fn partial_bijection_name(m: &PartialMap) -> String {
    m.0.iter()
        .map(|y| match y {
            Some(y) => char::from_digit(*y as u32 + 1, 36).unwrap_or('?'),
            None => '-',
        })
        .collect()
}

/// The inverse semigroup generated (under composition and inverse) by some
/// partial bijections of `{0..n}`, together with its natural action.
pub fn generated_semigroup(points: usize, generators: &[PartialMap]) -> Result<(InverseSemigroup, PartialAction), ActionError> {
    let mut elems: BTreeSet<PartialMap> = BTreeSet::new();
    let mut frontier: Vec<PartialMap> = Vec::new();
    for g in generators {
        for m in [g.clone(), g.inverse()] {
            if elems.insert(m.clone()) {
                frontier.push(m);
            }
        }
    }
    while let Some(m) = frontier.pop() {
        let current: Vec<PartialMap> = elems.iter().cloned().collect();
        for other in current {
            for prod in [m.after(&other), other.after(&m)] {
                if elems.insert(prod.clone()) {
                    frontier.push(prod);
                }
            }
        }
    }
    // larger domains first so that the identity (if present) leads
    let mut list: Vec<PartialMap> = elems.into_iter().collect();
    list.sort_by(|a, b| b.domain().len().cmp(&a.domain().len()).then_with(|| a.cmp(b)));
    let index: HashMap<PartialMap, usize> = list.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let names: Vec<String> = list.iter().map(partial_bijection_name).collect();
    let table: Vec<Vec<usize>> = list
        .iter()
        .map(|a| list.iter().map(|b| index[&a.after(b)]).collect())
        .collect();
    let inv: Vec<usize> = list.iter().map(|m| index[&m.inverse()]).collect();
    let semigroup = Arc::new(InverseSemigroup::new(names, table, inv)?);
    let carrier: Vec<String> = (1..=points).map(|p| p.to_string()).collect();
    let action = PartialAction::with_options(
        semigroup.clone(),
        carrier,
        list,
        ActionOptions { allow_non_effective: true },
    )?;
    Ok((Arc::try_unwrap(semigroup).unwrap_or_else(|a| (*a).clone()), action))
}

/// The symmetric inverse semigroup `I(X)` on `{1..n}` and its natural action.
pub fn symmetric_inverse_semigroup(points: usize) -> (InverseSemigroup, PartialAction) {
    let mut all = Vec::new();
    // every injective partial map: choose an image (or none) per point
    let mut current = vec![None; points];
    fn rec(i: usize, points: usize, current: &mut Vec<Option<usize>>, all: &mut Vec<PartialMap>) {
        if i == points {
            all.push(PartialMap(current.clone()));
            return;
        }
        current[i] = None;
        rec(i + 1, points, current, all);
        for y in 0..points {
            if !current[..i].contains(&Some(y)) {
                current[i] = Some(y);
                rec(i + 1, points, current, all);
            }
        }
        current[i] = None;
    }
    rec(0, points, &mut current, &mut all);
    generated_semigroup(points, &all).expect("I(X) is an inverse semigroup")
}

/// Named map of an action for reports: element -> {point -> point}.
pub fn describe(action: &PartialAction) -> BTreeMap<String, BTreeMap<String, String>> {
    let s = action.semigroup();
    s.elements()
        .map(|x| {
            let m = action
                .map(x)
                .0
                .iter()
                .enumerate()
                .filter_map(|(p, q)| q.map(|q| (action.carrier[p].clone(), action.carrier[q].clone())))
                .collect();
            (s.name(x).to_string(), m)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn example_33_action_is_non_strict_and_disconnected() {
        let a = fixtures::ex33_action();
        let s = a.semigroup().clone();
        let w = a.strictness().unwrap_err();
        assert_eq!((s.name(w.e), s.name(w.f)), ("e", "f"));
        let c = a.connectedness().unwrap_err();
        assert_eq!(a.carrier()[c.point], "2");
        let names = |v: &Vec<Elem>| v.iter().map(|&x| s.name(x).to_string()).collect::<Vec<_>>();
        assert_eq!(names(&c.component_a), vec!["e"]);
        assert_eq!(names(&c.component_b), vec!["f"]);
        assert!(matches!(a.is_torsor(), Err(ActionError::NotStrict { .. })));
    }

    #[test]
    fn twisted_g_map_breaks_prehom_law() {
        let s = Arc::new(fixtures::sl3());
        let err = PartialAction::from_named(
            s,
            &["1", "2"],
            &[("e", "1", "1"), ("e", "2", "2"), ("f", "1", "1"), ("f", "2", "2"), ("g", "1", "2")],
        )
        .unwrap_err();
        assert_eq!(
            err,
            ActionError::PrehomLawViolation { s: "e".into(), t: "f".into(), point: "1".into() }
        );
    }

    #[test]
    fn non_injective_and_non_effective_are_rejected() {
        let s = Arc::new(fixtures::z3());
        let mut maps = vec![PartialMap(vec![Some(0), Some(0)]); 3];
        let err = PartialAction::new(s.clone(), vec!["x".into(), "y".into()], maps.clone()).unwrap_err();
        assert_eq!(err, ActionError::NotInjective { element: "1".into() });
        maps = vec![PartialMap(vec![Some(0), None]); 3];
        let err = PartialAction::new(s.clone(), vec!["x".into(), "y".into()], maps.clone()).unwrap_err();
        assert_eq!(err, ActionError::NotEffective { point: "y".into() });
        let relaxed = PartialAction::with_options(
            s,
            vec!["x".into(), "y".into()],
            maps,
            ActionOptions { allow_non_effective: true },
        )
        .unwrap();
        assert_eq!(relaxed.ineffective_points(), vec![1]);
    }

    #[test]
    fn regular_z3_properties() {
        let a = fixtures::z3_regular();
        assert!(a.is_strict() && a.is_connected() && a.is_transitive() && a.is_free());
        assert_eq!(a.is_torsor(), Ok(true));
    }

    #[test]
    fn natural_b2_properties() {
        let a = fixtures::b2_natural();
        assert!(a.is_strict());
        assert!(a.is_transitive());
        assert!(a.is_free());
        assert_eq!(a.is_torsor(), Ok(true));
    }

    #[test]
    fn two_copies_of_z3_are_not_transitive() {
        let a = fixtures::two_z3();
        assert!(!a.is_transitive());
        assert!(a.is_free() && a.is_strict());
    }

    #[test]
    fn single_point_semilattice_action_is_free() {
        let a = PartialAction::trivial(Arc::new(fixtures::sl3()));
        assert!(a.is_free());
    }

    #[test]
    fn strict_actions_are_connected_and_monoid_actions_are_connected() {
        for (name, a) in fixtures::actions() {
            if a.is_strict() {
                assert!(a.is_connected(), "{name}");
            }
            if a.semigroup().identity().is_some() {
                assert!(a.is_connected(), "{name}");
            }
        }
    }

    #[test]
    fn morphism_examples() {
        let b2 = fixtures::b2_natural();
        let id: Vec<usize> = (0..b2.len()).collect();
        assert!(check_morphism(&id, &b2, &b2).is_ok());
        let w = check_morphism(&[0, 0], &b2, &b2).unwrap_err();
        assert_eq!(b2.semigroup().name(w.element), "a");
        assert_eq!(b2.carrier()[w.point], "2");

        let two = fixtures::two_z3();
        let z3 = fixtures::z3_regular();
        let fold: Vec<usize> = (0..6).map(|p| p % 3).collect();
        assert!(check_morphism(&fold, &two, &z3).is_ok());
    }

    #[test]
    fn morphism_enumeration_of_z3_torsor() {
        let z3 = fixtures::z3_regular();
        // endomorphisms of the regular G-set are right translations
        let ends = enumerate_morphisms(&z3, &z3);
        assert_eq!(ends.len(), 3);
        assert!(ends.iter().all(|m| is_isomorphism(m, &z3, &z3)));
    }

    #[test]
    fn symmetric_inverse_semigroup_on_two_points() {
        let (i2, nat) = symmetric_inverse_semigroup(2);
        assert_eq!(i2.size(), 7);
        assert_eq!(i2.idempotents().len(), 4);
        assert_eq!(i2.names()[0], "12");
        assert!(nat.is_strict() && nat.is_transitive());
        let (i3, _) = symmetric_inverse_semigroup(3);
        assert_eq!(i3.size(), 34);
    }

    #[test]
    fn composition_is_largest_domain() {
        let f = PartialMap(vec![Some(1), None, Some(0)]);
        let g = PartialMap(vec![None, Some(2), Some(1)]);
        assert_eq!(g.after(&f), PartialMap(vec![Some(2), None, None]));
        assert!(PartialMap::identity_on(3, [0]).is_restriction_of(&PartialMap::identity_on(3, [0, 1])));
    }
}
