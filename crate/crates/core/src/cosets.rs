//! Closed inverse subsemigroups, coset actions and their Schein
//! decomposition, filters in `E(S)` and in `S`.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::action::{is_isomorphism, ActionError, PartialAction, PartialMap};
use crate::exec::Strategy;
use crate::semigroup::{Elem, ElementSubset, InverseSemigroup};

/// Largest semigroup for which subsets are enumerated.
pub const SUBSET_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosetError {
    #[error("subset enumeration is capped at {cap} elements, got {size}")]
    TooLarge { size: usize, cap: usize },
    #[error("{0:?} is not a closed inverse subsemigroup")]
    NotClosed(Vec<String>),
    #[error("action is not transitive: no element moves {from} to {to}")]
    NotTransitive { from: String, to: String },
    #[error("action is not strict: domains of {e} and {f} do not multiply")]
    NotStrict { e: String, f: String },
    #[error("stabilizer of {0} is not closed")]
    StabilizerNotClosed(String),
    #[error("action is empty")]
    Empty,
    #[error(transparent)]
    Action(#[from] ActionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedInverseSubsemigroup {
    members: ElementSubset,
}

impl ClosedInverseSubsemigroup {
    pub fn new(s: &InverseSemigroup, members: ElementSubset) -> Result<Self, CosetError> {
        if is_closed_inverse_subsemigroup(s, &members) {
            Ok(Self { members })
        } else {
            Err(CosetError::NotClosed(s.subset_names(&members)))
        }
    }

    pub fn members(&self) -> &ElementSubset {
        &self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(&x)
    }

    /// `E(H)`.
    pub fn idempotents(&self, s: &InverseSemigroup) -> ElementSubset {
        self.members.iter().copied().filter(|&x| s.is_idempotent(x)).collect()
    }

    /// `H = E(H)↑`.
    pub fn is_filter_generated(&self, s: &InverseSemigroup) -> bool {
        s.up_closure(&self.idempotents(s)) == self.members
    }
}

pub fn is_closed_inverse_subsemigroup(s: &InverseSemigroup, h: &ElementSubset) -> bool {
    !h.is_empty()
        && h.iter().all(|&x| h.contains(&s.inv(x)))
        && h.iter().all(|&x| h.iter().all(|&y| h.contains(&s.mul(x, y))))
        && s.is_closed(h)
}

fn check_cap(s: &InverseSemigroup, size: usize) -> Result<(), CosetError> {
    if size > SUBSET_CAP {
        Err(CosetError::TooLarge { size: s.size().max(size), cap: SUBSET_CAP })
    } else {
        Ok(())
    }
}

fn subset_of_mask(universe: &[Elem], mask: usize) -> ElementSubset {
    universe
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &x)| x)
        .collect()
}

fn sort_subsets<T: AsRef<ElementSubset>>(v: &mut [T]) {
    v.sort_by(|a, b| {
        let (a, b) = (a.as_ref(), b.as_ref());
        a.len().cmp(&b.len()).then_with(|| a.cmp(b))
    });
}

impl AsRef<ElementSubset> for ClosedInverseSubsemigroup {
    fn as_ref(&self) -> &ElementSubset {
        &self.members
    }
}

/// All closed inverse subsemigroups, smallest first.
pub fn enumerate_closed_subsemigroups(s: &InverseSemigroup) -> Result<Vec<ClosedInverseSubsemigroup>, CosetError> {
    enumerate_closed_subsemigroups_with(s, Strategy::default())
}

pub fn enumerate_closed_subsemigroups_with(
    s: &InverseSemigroup,
    strategy: Strategy,
) -> Result<Vec<ClosedInverseSubsemigroup>, CosetError> {
    check_cap(s, s.size())?;
    let universe: Vec<Elem> = s.elements().collect();
    let mut out = strategy.filter_map_range(1..1usize << universe.len(), |mask| {
        let h = subset_of_mask(&universe, mask);
        is_closed_inverse_subsemigroup(s, &h).then_some(ClosedInverseSubsemigroup { members: h })
    });
    sort_subsets(&mut out);
    Ok(out)
}

/// `(xH)↑` for `d(x) ∈ H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coset {
    pub witness: Elem,
    pub members: ElementSubset,
}

fn generate(s: &InverseSemigroup, x: Elem, h: &ElementSubset) -> ElementSubset {
    s.up_closure(&h.iter().map(|&y| s.mul(x, y)).collect())
}

/// Distinct cosets, ordered by least witness.
pub fn coset_space(s: &InverseSemigroup, h: &ClosedInverseSubsemigroup) -> Vec<Coset> {
    let mut out: Vec<Coset> = Vec::new();
    for x in s.elements().filter(|&x| h.contains(s.d(x))) {
        let members = generate(s, x, &h.members);
        if !out.iter().any(|c| c.members == members) {
            out.push(Coset { witness: x, members });
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct CosetAction {
    pub action: PartialAction,
    pub cosets: Vec<Coset>,
}

impl CosetAction {
    /// Index of `H` itself among the cosets.
    pub fn base_point(&self, h: &ClosedInverseSubsemigroup) -> usize {
        self.cosets
            .iter()
            .position(|c| &c.members == h.members())
            .expect("H is a coset of itself")
    }
}

/// `s·(xH)↑ = (sxH)↑`, defined when the right side is again a coset.
pub fn coset_action(s: &Arc<InverseSemigroup>, h: &ClosedInverseSubsemigroup) -> CosetAction {
    let cosets = coset_space(s, h);
    let maps = s
        .elements()
        .map(|a| {
            PartialMap(
                cosets
                    .iter()
                    .map(|c| {
                        let image = generate(s, s.mul(a, c.witness), &h.members);
                        let found = cosets.iter().position(|d| d.members == image);
                        debug_assert!(c
                            .members
                            .iter()
                            .filter(|&&x| h.contains(s.d(x)))
                            .all(|&x| {
                                let other = generate(s, s.mul(a, x), &h.members);
                                cosets.iter().position(|d| d.members == other) == found
                            }));
                        found
                    })
                    .collect(),
            )
        })
        .collect();
    let carrier = cosets.iter().map(|c| format!("{}H", s.name(c.witness))).collect();
    let action = PartialAction::new(s.clone(), carrier, maps).expect("coset actions are valid");
    CosetAction { action, cosets }
}

fn require_strict_transitive(a: &PartialAction) -> Result<(), CosetError> {
    let s = a.semigroup();
    if a.is_empty() {
        return Err(CosetError::Empty);
    }
    if let Err(w) = a.strictness() {
        return Err(CosetError::NotStrict { e: s.name(w.e).into(), f: s.name(w.f).into() });
    }
    if let Err(w) = a.transitivity() {
        return Err(CosetError::NotTransitive {
            from: a.carrier()[w.from].clone(),
            to: a.carrier()[w.to].clone(),
        });
    }
    Ok(())
}

/// `{s : s·x = x}` of a strict transitive action.
pub fn stabilizer(a: &PartialAction, x: usize) -> Result<ClosedInverseSubsemigroup, CosetError> {
    require_strict_transitive(a)?;
    let s = a.semigroup();
    let members: ElementSubset = s.elements().filter(|&t| a.act(t, x) == Some(x)).collect();
    if !is_closed_inverse_subsemigroup(s, &members) {
        return Err(CosetError::StabilizerNotClosed(a.carrier()[x].clone()));
    }
    Ok(ClosedInverseSubsemigroup { members })
}

#[derive(Debug, Clone)]
pub struct Schein {
    pub subsemigroup: ClosedInverseSubsemigroup,
    pub cosets: CosetAction,
    /// Carrier point `y` of the action goes to coset `iso[y]`.
    pub iso: Vec<usize>,
}

/// `H = Stab(x₀)` and the isomorphism `s·x₀ ↦ (sH)↑`.
pub fn schein_decompose(a: &PartialAction) -> Result<Schein, CosetError> {
    let h = stabilizer(a, 0)?;
    let s = a.semigroup();
    let ca = coset_action(s, &h);
    let base = ca.base_point(&h);
    let iso: Vec<usize> = (0..a.len())
        .map(|y| {
            let t = s.elements().find(|&t| a.act(t, 0) == Some(y)).expect("transitive");
            ca.action.act(t, base).expect("t·H is defined when t·x₀ is")
        })
        .collect();
    assert!(is_isomorphism(&iso, a, &ca.action), "orbit map is an isomorphism");
    Ok(Schein { subsemigroup: h, cosets: ca, iso })
}

/// Universal when the stabilizer is generated by its idempotents.
pub fn is_universal(a: &PartialAction) -> Result<bool, CosetError> {
    let h = stabilizer(a, 0)?;
    Ok(h.is_filter_generated(a.semigroup()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsorRow {
    pub subsemigroup: Vec<String>,
    pub cosets: usize,
    pub torsor: bool,
    pub universal: bool,
    pub filter_generated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsorReport {
    pub rows: Vec<TorsorRow>,
    pub mismatches: usize,
}

/// For every closed `H`: torsor ⟺ universal ⟺ `H = E(H)↑`.
pub fn torsor_equiv_universal(s: &Arc<InverseSemigroup>) -> Result<TorsorReport, CosetError> {
    let mut rows = Vec::new();
    for h in enumerate_closed_subsemigroups(s)? {
        let ca = coset_action(s, &h);
        let torsor = ca.action.is_torsor()?;
        let universal = is_universal(&ca.action)?;
        rows.push(TorsorRow {
            subsemigroup: s.subset_names(h.members()),
            cosets: ca.cosets.len(),
            torsor,
            universal,
            filter_generated: h.is_filter_generated(s),
        });
    }
    let mismatches = rows
        .iter()
        .filter(|r| r.torsor != r.universal || r.universal != r.filter_generated)
        .count();
    Ok(TorsorReport { rows, mismatches })
}

/// Which poset filters are taken in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterUniverse {
    Idempotents,
    Elements,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Filter {
    pub members: ElementSubset,
}

impl AsRef<ElementSubset> for Filter {
    fn as_ref(&self) -> &ElementSubset {
        &self.members
    }
}

/// Nonempty, up-closed within the universe, and downward directed.
pub fn is_filter(s: &InverseSemigroup, universe: &[Elem], f: &ElementSubset) -> bool {
    !f.is_empty()
        && f.iter().all(|&a| universe.iter().all(|&b| !s.natural_leq(a, b) || f.contains(&b)))
        && f.iter().all(|&a| {
            f.iter()
                .all(|&b| f.iter().any(|&c| s.natural_leq(c, a) && s.natural_leq(c, b)))
        })
}

fn universe_of(s: &InverseSemigroup, which: FilterUniverse) -> Vec<Elem> {
    match which {
        FilterUniverse::Idempotents => s.idempotents().to_vec(),
        FilterUniverse::Elements => s.elements().collect(),
    }
}

pub fn enumerate_filters(s: &InverseSemigroup, which: FilterUniverse) -> Result<Vec<Filter>, CosetError> {
    let universe = universe_of(s, which);
    check_cap(s, universe.len())?;
    let mut out = Strategy::default().filter_map_range(1..1usize << universe.len(), |mask| {
        let f = subset_of_mask(&universe, mask);
        is_filter(s, &universe, &f).then_some(Filter { members: f })
    });
    sort_subsets(&mut out);
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct FilterGroupoid {
    /// Filters in `S`.
    pub filters: Vec<Filter>,
    /// Filters in `E(S)`.
    pub idempotent_filters: Vec<Filter>,
    /// `d(F) = {d(a) : a ∈ F}` for each filter in `S`.
    pub domains: Vec<ElementSubset>,
    /// Index of `d(F)` among the idempotent filters, if it is one.
    pub domain_index: Vec<Option<usize>>,
    /// `M(s)`: indices of the filters containing `s`.
    pub m_sets: Vec<Vec<usize>>,
}

impl FilterGroupoid {
    pub fn domains_are_filters(&self) -> bool {
        self.domain_index.iter().all(Option::is_some)
    }
}

pub fn filter_groupoid_data(s: &InverseSemigroup) -> Result<FilterGroupoid, CosetError> {
    let filters = enumerate_filters(s, FilterUniverse::Elements)?;
    let idempotent_filters = enumerate_filters(s, FilterUniverse::Idempotents)?;
    let domains: Vec<ElementSubset> = filters
        .iter()
        .map(|f| f.members.iter().map(|&a| s.d(a)).collect())
        .collect();
    let domain_index = domains
        .iter()
        .map(|d| idempotent_filters.iter().position(|g| &g.members == d))
        .collect();
    let m_sets = s
        .elements()
        .map(|x| (0..filters.len()).filter(|&i| filters[i].members.contains(&x)).collect())
        .collect();
    Ok(FilterGroupoid { filters, idempotent_filters, domains, domain_index, m_sets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::find_isomorphism;
    use crate::fixtures;

    fn named(s: &InverseSemigroup, v: &[Filter]) -> Vec<Vec<String>> {
        v.iter().map(|f| s.subset_names(&f.members)).collect()
    }

    fn closed_names(s: &InverseSemigroup) -> Vec<Vec<String>> {
        enumerate_closed_subsemigroups(s)
            .unwrap()
            .iter()
            .map(|h| s.subset_names(h.members()))
            .collect()
    }

    fn subset(s: &InverseSemigroup, names: &[&str]) -> ClosedInverseSubsemigroup {
        let m = names.iter().map(|n| s.elem(n).unwrap()).collect();
        ClosedInverseSubsemigroup::new(s, m).unwrap()
    }

    #[test]
    fn closed_subsemigroup_examples() {
        assert_eq!(closed_names(&fixtures::z3()), [vec!["1"], vec!["1", "a", "b"]]);
        assert_eq!(closed_names(&fixtures::sl3()), [vec!["e"], vec!["f"], vec!["e", "f", "g"]]);
        assert_eq!(closed_names(&fixtures::ch2()), [vec!["e"], vec!["e", "g"]]);
    }

    #[test]
    fn strategies_enumerate_the_same() {
        let s = fixtures::i2();
        assert_eq!(
            enumerate_closed_subsemigroups_with(&s, Strategy::Sequential).unwrap(),
            enumerate_closed_subsemigroups_with(&s, Strategy::default()).unwrap()
        );
    }

    #[test]
    fn coset_space_examples() {
        let z3 = fixtures::z3();
        assert_eq!(coset_space(&z3, &subset(&z3, &["1"])).len(), 3);
        let b2 = fixtures::b2();
        let cs = coset_space(&b2, &subset(&b2, &["e1"]));
        let members: Vec<_> = cs.iter().map(|c| b2.subset_names(&c.members)).collect();
        assert_eq!(members, [vec!["a'"], vec!["e1"]]);
        let sl3 = fixtures::sl3();
        assert_eq!(coset_space(&sl3, &subset(&sl3, &["e", "f", "g"])).len(), 1);
    }

    #[test]
    fn coset_action_examples() {
        let z3 = Arc::new(fixtures::z3());
        let ca = coset_action(&z3, &subset(&z3, &["1"]));
        assert!(find_isomorphism(&ca.action, &fixtures::z3_regular()).is_some());

        let b2 = Arc::new(fixtures::b2());
        let ca = coset_action(&b2, &subset(&b2, &["e1"]));
        assert!(find_isomorphism(&ca.action, &fixtures::b2_natural()).is_some());

        let sl3 = Arc::new(fixtures::sl3());
        let ca = coset_action(&sl3, &subset(&sl3, &["e"]));
        assert_eq!(ca.action.len(), 1);
        assert_eq!(ca.action.act(sl3.elem("e").unwrap(), 0), Some(0));
        assert_eq!(ca.action.act(sl3.elem("f").unwrap(), 0), None);
    }

    #[test]
    fn every_coset_action_is_strict_and_transitive() {
        for (name, s) in fixtures::semigroups() {
            let s = Arc::new(s);
            for h in enumerate_closed_subsemigroups(&s).unwrap() {
                let ca = coset_action(&s, &h);
                assert!(ca.action.is_strict() && ca.action.is_transitive(), "{name} {:?}", h.members());
                let base = ca.base_point(&h);
                assert_eq!(stabilizer(&ca.action, base).unwrap(), h);
            }
        }
    }

    #[test]
    fn stabilizer_examples() {
        let z = fixtures::z3_regular();
        assert_eq!(z.semigroup().subset_names(stabilizer(&z, 1).unwrap().members()), ["1"]);
        let b = fixtures::b2_natural();
        assert_eq!(b.semigroup().subset_names(stabilizer(&b, 0).unwrap().members()), ["e1"]);
        assert!(matches!(stabilizer(&fixtures::two_z3(), 0), Err(CosetError::NotTransitive { .. })));
        assert!(matches!(stabilizer(&fixtures::ex33_action(), 0), Err(CosetError::NotStrict { .. })));
    }

    #[test]
    fn schein_examples() {
        let sch = schein_decompose(&fixtures::z3_regular()).unwrap();
        assert_eq!(sch.subsemigroup.members().len(), 1);
        let sch = schein_decompose(&fixtures::b2_natural()).unwrap();
        assert_eq!(fixtures::b2().subset_names(sch.subsemigroup.members()), ["e1"]);
        assert!(schein_decompose(&fixtures::two_z3()).is_err());
    }

    #[test]
    fn filter_examples() {
        let sl3 = fixtures::sl3();
        assert_eq!(
            named(&sl3, &enumerate_filters(&sl3, FilterUniverse::Idempotents).unwrap()),
            [vec!["e"], vec!["f"], vec!["e", "f", "g"]]
        );
        let z3 = fixtures::z3();
        assert_eq!(enumerate_filters(&z3, FilterUniverse::Idempotents).unwrap().len(), 1);
        let b2 = fixtures::b2();
        assert_eq!(
            named(&b2, &enumerate_filters(&b2, FilterUniverse::Idempotents).unwrap()),
            [vec!["e1"], vec!["e2"], vec!["e1", "e2", "0"]]
        );
    }

    #[test]
    fn filters_in_s() {
        let g = filter_groupoid_data(&fixtures::z3()).unwrap();
        assert_eq!(g.filters.len(), 3);
        assert!(g.domains.iter().all(|d| d.len() == 1));
        let g = filter_groupoid_data(&fixtures::sl3()).unwrap();
        assert_eq!(g.filters.len(), 3);
        let b2 = fixtures::b2();
        let g = filter_groupoid_data(&b2).unwrap();
        assert_eq!(g.filters.len(), 5);
        assert_eq!(g.filters[4].members.len(), 5);
        assert_eq!(g.m_sets[b2.elem("0").unwrap()], [4]);
        for (name, s) in fixtures::semigroups() {
            assert!(filter_groupoid_data(&s).unwrap().domains_are_filters(), "{name}");
        }
    }

    #[test]
    fn literal_domain_set_need_not_be_up_closed() {
        // B2 with an identity adjoined: {a} is a filter in S but {d(a)} = {e2}
        // misses 1 >= e2
        let s = InverseSemigroup::from_named(
            &["1", "a", "a'", "e1", "e2", "0"],
            &[
                &["1", "a", "a'", "e1", "e2", "0"],
                &["a", "0", "e1", "0", "a", "0"],
                &["a'", "e2", "0", "a'", "0", "0"],
                &["e1", "a", "0", "e1", "0", "0"],
                &["e2", "0", "a'", "0", "e2", "0"],
                &["0", "0", "0", "0", "0", "0"],
            ],
            None,
        )
        .unwrap();
        let g = filter_groupoid_data(&s).unwrap();
        let a = g.filters.iter().position(|f| s.subset_names(&f.members) == ["a"]).unwrap();
        assert_eq!(s.subset_names(&g.domains[a]), ["e2"]);
        assert_eq!(g.domain_index[a], None);
    }

    #[test]
    fn filter_generated_closed_subsemigroups() {
        for (name, s) in fixtures::semigroups() {
            for f in enumerate_filters(&s, FilterUniverse::Idempotents).unwrap() {
                let up = s.up_closure(&f.members);
                assert!(is_closed_inverse_subsemigroup(&s, &up), "{name}");
            }
        }
    }

    #[test]
    fn torsor_report_examples() {
        let z3 = Arc::new(fixtures::z3());
        let r = torsor_equiv_universal(&z3).unwrap();
        assert_eq!(r.mismatches, 0);
        assert_eq!(r.rows.iter().map(|r| r.torsor).collect::<Vec<_>>(), [true, false]);
        let b2 = Arc::new(fixtures::b2());
        let r = torsor_equiv_universal(&b2).unwrap();
        assert_eq!(r.mismatches, 0);
        let universal: Vec<_> = r.rows.iter().filter(|r| r.universal).map(|r| r.subsemigroup.clone()).collect();
        assert!(universal.contains(&vec!["e1".to_string()]));
        assert!(universal.contains(&vec!["e2".to_string()]));
    }

    #[test]
    fn one_point_z3_is_not_universal() {
        assert_eq!(is_universal(&fixtures::z3_point()), Ok(false));
        assert_eq!(is_universal(&fixtures::z3_regular()), Ok(true));
        assert_eq!(is_universal(&fixtures::b2_natural()), Ok(true));
    }
}
