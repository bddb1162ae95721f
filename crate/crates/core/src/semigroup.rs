//! Finite inverse semigroups given by Cayley tables.
//!
//! Elements carry opaque string names but every computation runs on dense
//! indices ([`Elem`]). A table is only turned into an [`InverseSemigroup`]
//! after the axioms have been checked: associativity, `s s' s = s`,
//! `s' s s' = s'`, and commuting idempotents (which together force the given
//! inverse to be the unique one).

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::exec::Strategy;

/// Dense index of a semigroup element.
pub type Elem = usize;

/// A set of semigroup elements, ordered by index.
pub type ElementSubset = BTreeSet<Elem>;

/// Soft cap above which associativity checking must be skipped explicitly.
pub const ASSOCIATIVITY_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("semigroup has no elements")]
    Empty,
    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("table must be {expected}x{expected}, found a row of length {found}")]
    TableShape { expected: usize, found: usize },
    #[error("{size} elements exceeds the associativity cap of {cap}; pass skip_associativity")]
    TooLarge { size: usize, cap: usize },
    #[error("not associative: ({a}{b}){c} != {a}({b}{c})")]
    NonAssociative { a: String, b: String, c: String },
    #[error("`{element}` is not regular with respect to the given inverse")]
    NotRegular { element: String },
    #[error("idempotents `{e}` and `{f}` do not commute")]
    NonCommutingIdempotents { e: String, f: String },
    #[error("inverse map is not an involution at `{element}`")]
    InverseNotInvolutive { element: String },
    #[error("`{element}` has no generalized inverse")]
    NoInverse { element: String },
    #[error("`{element}` has several generalized inverses (`{first}`, `{second}`)")]
    AmbiguousInverse { element: String, first: String, second: String },
    #[error("`{0}` is not idempotent")]
    NotIdempotent(String),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ValidateOptions {
    pub skip_associativity: bool,
    pub strategy: Strategy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseSemigroup {
    names: Vec<String>,
    index: HashMap<String, Elem>,
    table: Vec<Elem>,
    inv: Vec<Elem>,
    idempotent: Vec<bool>,
    idempotents: Vec<Elem>,
    // leq[s * n + t] <=> s <= t in the natural partial order
    leq: Vec<bool>,
}

impl InverseSemigroup {
    /// Validates a table with an explicitly supplied inverse map.
    pub fn new(
        names: Vec<String>,
        table: Vec<Vec<Elem>>,
        inv: Vec<Elem>,
    ) -> Result<Self, SemigroupError> {
        Self::with_options(names, table, Some(inv), ValidateOptions::default())
    }

    /// Validates a table, inferring inverses when `inv` is `None`.
    pub fn with_options(
        names: Vec<String>,
        table: Vec<Vec<Elem>>,
        inv: Option<Vec<Elem>>,
        options: ValidateOptions,
    ) -> Result<Self, SemigroupError> {
        let n = names.len();
        if n == 0 {
            return Err(SemigroupError::Empty);
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(SemigroupError::DuplicateElement(name.clone()));
            }
        }
        if table.len() != n {
            return Err(SemigroupError::TableShape { expected: n, found: table.len() });
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n {
                return Err(SemigroupError::TableShape { expected: n, found: row.len() });
            }
            for &v in row {
                if v >= n {
                    return Err(SemigroupError::UnknownElement(v.to_string()));
                }
                flat.push(v);
            }
        }

        if !options.skip_associativity {
            if n > ASSOCIATIVITY_CAP {
                return Err(SemigroupError::TooLarge { size: n, cap: ASSOCIATIVITY_CAP });
            }
            let mul = |a: usize, b: usize| flat[a * n + b];
            let witness = options.strategy.find_map_first(0..n, |a| {
                for b in 0..n {
                    let ab = mul(a, b);
                    for c in 0..n {
                        if mul(ab, c) != mul(a, mul(b, c)) {
                            return Some((a, b, c));
                        }
                    }
                }
                None
            });
            if let Some((a, b, c)) = witness {
                return Err(SemigroupError::NonAssociative {
                    a: names[a].clone(),
                    b: names[b].clone(),
                    c: names[c].clone(),
                });
            }
        }

        let idempotent: Vec<bool> = (0..n).map(|e| flat[e * n + e] == e).collect();
        let idempotents: Vec<Elem> = (0..n).filter(|&e| idempotent[e]).collect();
        for (i, &e) in idempotents.iter().enumerate() {
            for &f in &idempotents[i + 1..] {
                if flat[e * n + f] != flat[f * n + e] {
                    return Err(SemigroupError::NonCommutingIdempotents {
                        e: names[e].clone(),
                        f: names[f].clone(),
                    });
                }
            }
        }

        let inv = match inv {
            Some(inv) => {
                if inv.len() != n {
                    return Err(SemigroupError::TableShape { expected: n, found: inv.len() });
                }
                if let Some(&bad) = inv.iter().find(|&&v| v >= n) {
                    return Err(SemigroupError::UnknownElement(bad.to_string()));
                }
                inv
            }
            None => infer_inverses(&names, &flat)?,
        };
        let mul = |a: usize, b: usize| flat[a * n + b];
        for s in 0..n {
            let t = inv[s];
            if mul(mul(s, t), s) != s || mul(mul(t, s), t) != t {
                return Err(SemigroupError::NotRegular { element: names[s].clone() });
            }
        }
        for s in 0..n {
            if inv[inv[s]] != s {
                return Err(SemigroupError::InverseNotInvolutive { element: names[s].clone() });
            }
        }

        let mut leq = vec![false; n * n];
        for s in 0..n {
            let ds = mul(inv[s], s);
            for t in 0..n {
                leq[s * n + t] = mul(t, ds) == s;
            }
        }

        Ok(Self { names, index, table: flat, inv, idempotent, idempotents, leq })
    }

    /// Convenience constructor from element names, used by fixtures and tests.
    pub fn from_named(
        names: &[&str],
        table: &[&[&str]],
        inv: Option<&[(&str, &str)]>,
    ) -> Result<Self, SemigroupError> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let lookup = |name: &str| {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| SemigroupError::UnknownElement(name.to_string()))
        };
        let mut rows = Vec::with_capacity(table.len());
        for row in table {
            rows.push(row.iter().map(|v| lookup(v)).collect::<Result<Vec<_>, _>>()?);
        }
        let inv = match inv {
            Some(pairs) => {
                let mut out = vec![usize::MAX; names.len()];
                for (s, t) in pairs {
                    out[lookup(s)?] = lookup(t)?;
                }
                if let Some(missing) = out.iter().position(|&v| v == usize::MAX) {
                    return Err(SemigroupError::NoInverse { element: names[missing].clone() });
                }
                Some(out)
            }
            None => None,
        };
        Self::with_options(names, rows, inv, ValidateOptions::default())
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: Elem) -> &str {
        &self.names[s]
    }

    pub fn elem(&self, name: &str) -> Option<Elem> {
        self.index.get(name).copied()
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.size() + b]
    }

    /// Product of a nonempty word, left to right.
    pub fn product(&self, word: &[Elem]) -> Elem {
        word.iter().copied().reduce(|acc, x| self.mul(acc, x)).expect("empty word")
    }

    pub fn inv(&self, s: Elem) -> Elem {
        self.inv[s]
    }

    /// Domain idempotent `s⁻¹s`.
    pub fn d(&self, s: Elem) -> Elem {
        self.mul(self.inv[s], s)
    }

    /// Range idempotent `ss⁻¹`.
    pub fn r(&self, s: Elem) -> Elem {
        self.mul(s, self.inv[s])
    }

    pub fn is_idempotent(&self, s: Elem) -> bool {
        self.idempotent[s]
    }

    /// `E(S)` in element order.
    pub fn idempotents(&self) -> &[Elem] {
        &self.idempotents
    }

    pub fn idempotent_set(&self) -> ElementSubset {
        self.idempotents.iter().copied().collect()
    }

    pub fn natural_leq(&self, s: Elem, t: Elem) -> bool {
        self.leq[s * self.size() + t]
    }

    pub fn identity(&self) -> Option<Elem> {
        self.elements().find(|&u| self.elements().all(|s| self.mul(u, s) == s && self.mul(s, u) == s))
    }

    pub fn is_group(&self) -> bool {
        self.idempotents.len() == 1
    }

    /// Upward closure `X↑ = { s : s >= x for some x in X }`.
    pub fn up_closure(&self, set: &ElementSubset) -> ElementSubset {
        self.elements().filter(|&s| set.iter().any(|&x| self.natural_leq(x, s))).collect()
    }

    pub fn is_closed(&self, set: &ElementSubset) -> bool {
        self.up_closure(set) == *set
    }

    /// The H-class `H(e, f) = { s : d(s) = f, r(s) = e }`.
    pub fn h_class(&self, e: Elem, f: Elem) -> Result<ElementSubset, SemigroupError> {
        for x in [e, f] {
            if !self.is_idempotent(x) {
                return Err(SemigroupError::NotIdempotent(self.names[x].clone()));
            }
        }
        Ok(self.elements().filter(|&s| self.d(s) == f && self.r(s) == e).collect())
    }

    /// Green's D-relation on idempotents: some `s` has `d(s) = f` and `r(s) = e`.
    pub fn d_related(&self, e: Elem, f: Elem) -> bool {
        self.elements().any(|s| self.d(s) == f && self.r(s) == e)
    }

    /// Idempotents partitioned into D-classes, in element order.
    pub fn idempotent_d_classes(&self) -> Vec<Vec<Elem>> {
        let mut classes: Vec<Vec<Elem>> = Vec::new();
        for &e in &self.idempotents {
            match classes.iter_mut().find(|c| self.d_related(c[0], e)) {
                Some(class) => class.push(e),
                None => classes.push(vec![e]),
            }
        }
        classes
    }

    /// Covering pairs `(s, t)` with `s < t` in the natural partial order.
    pub fn hasse_pairs(&self) -> Vec<(Elem, Elem)> {
        let lt = |a: Elem, b: Elem| a != b && self.natural_leq(a, b);
        let mut out = Vec::new();
        for s in self.elements() {
            for t in self.elements() {
                if lt(s, t) && !self.elements().any(|u| lt(s, u) && lt(u, t)) {
                    out.push((s, t));
                }
            }
        }
        out
    }

    pub fn subset_names(&self, set: &ElementSubset) -> Vec<String> {
        set.iter().map(|&s| self.names[s].clone()).collect()
    }

    /// The table as rows of element names, e.g. for serialization.
    pub fn table_rows(&self) -> Vec<Vec<Elem>> {
        let n = self.size();
        (0..n).map(|a| self.table[a * n..(a + 1) * n].to_vec()).collect()
    }

    pub fn analyze(&self) -> Analysis {
        let grid = self
            .idempotent_d_classes()
            .into_iter()
            .map(|class| {
                let mut cells = Vec::new();
                for &e in &class {
                    for &f in &class {
                        let members = self.h_class(e, f).expect("idempotents");
                        cells.push(HCell {
                            range: self.names[e].clone(),
                            domain: self.names[f].clone(),
                            members: self.subset_names(&members),
                        });
                    }
                }
                DClassReport {
                    idempotents: class.iter().map(|&e| self.names[e].clone()).collect(),
                    h_classes: cells,
                }
            })
            .collect();
        Analysis {
            size: self.size(),
            idempotents: self.idempotents.iter().map(|&e| self.names[e].clone()).collect(),
            hasse: self
                .hasse_pairs()
                .into_iter()
                .map(|(s, t)| (self.names[s].clone(), self.names[t].clone()))
                .collect(),
            d_classes: grid,
        }
    }
}

fn infer_inverses(names: &[String], flat: &[Elem]) -> Result<Vec<Elem>, SemigroupError> {
    let n = names.len();
    let mul = |a: usize, b: usize| flat[a * n + b];
    let mut inv = Vec::with_capacity(n);
    for s in 0..n {
        let mut found: Option<usize> = None;
        for t in 0..n {
            if mul(mul(s, t), s) == s && mul(mul(t, s), t) == t {
                if let Some(first) = found {
                    return Err(SemigroupError::AmbiguousInverse {
                        element: names[s].clone(),
                        first: names[first].clone(),
                        second: names[t].clone(),
                    });
                }
                found = Some(t);
            }
        }
        inv.push(found.ok_or_else(|| SemigroupError::NoInverse { element: names[s].clone() })?);
    }
    Ok(inv)
}

#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub size: usize,
    pub idempotents: Vec<String>,
    pub hasse: Vec<(String, String)>,
    pub d_classes: Vec<DClassReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DClassReport {
    pub idempotents: Vec<String>,
    pub h_classes: Vec<HCell>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HCell {
    pub range: String,
    pub domain: String,
    pub members: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(s: &InverseSemigroup, names: &[&str]) -> ElementSubset {
        names.iter().map(|n| s.elem(n).unwrap()).collect()
    }

    #[test]
    fn fixtures_validate() {
        for (name, s) in fixtures::semigroups() {
            assert!(s.size() > 0, "{name}");
        }
    }

    #[test]
    fn left_zero_band_is_rejected() {
        let err = InverseSemigroup::from_named(&["x", "y"], &[&["x", "x"], &["y", "y"]], Some(&[("x", "x"), ("y", "y")]))
            .unwrap_err();
        assert!(matches!(err, SemigroupError::NonCommutingIdempotents { .. }), "{err}");
        let inferred = InverseSemigroup::from_named(&["x", "y"], &[&["x", "x"], &["y", "y"]], None).unwrap_err();
        assert!(matches!(inferred, SemigroupError::NonCommutingIdempotents { .. }));
    }

    #[test]
    fn non_associative_table_reports_triple() {
        // a*a = b, everything else a: (a a) a = b a = a, a (a a) = a b = a; (b b) ... find any failure
        let err = InverseSemigroup::from_named(
            &["a", "b"],
            &[&["b", "a"], &["a", "a"]],
            Some(&[("a", "a"), ("b", "b")]),
        )
        .unwrap_err();
        assert!(matches!(err, SemigroupError::NonAssociative { .. }), "{err}");
    }

    #[test]
    fn wrong_inverse_is_not_regular() {
        let z3 = fixtures::z3();
        let names = z3.names().to_vec();
        let err = InverseSemigroup::new(names, z3.table_rows(), vec![0, 1, 2]).unwrap_err();
        assert_eq!(err, SemigroupError::NotRegular { element: "a".into() });
    }

    #[test]
    fn inferred_inverses_match_fixtures() {
        for (name, s) in fixtures::semigroups() {
            let inferred = InverseSemigroup::with_options(
                s.names().to_vec(),
                s.table_rows(),
                None,
                ValidateOptions::default(),
            )
            .unwrap();
            assert_eq!(inferred, s, "{name}");
        }
    }

    #[test]
    fn idempotent_examples() {
        let z3 = fixtures::z3();
        assert_eq!(z3.idempotent_set(), set(&z3, &["1"]));
        let sl3 = fixtures::sl3();
        assert_eq!(sl3.idempotent_set(), set(&sl3, &["e", "f", "g"]));
        let b2 = fixtures::b2();
        assert_eq!(b2.idempotent_set(), set(&b2, &["e1", "e2", "0"]));
    }

    #[test]
    fn natural_order_examples() {
        let sl3 = fixtures::sl3();
        let (e, g) = (sl3.elem("e").unwrap(), sl3.elem("g").unwrap());
        assert!(sl3.natural_leq(g, e));
        assert!(!sl3.natural_leq(e, g));
        let b2 = fixtures::b2();
        let zero = b2.elem("0").unwrap();
        for s in b2.elements() {
            assert!(b2.natural_leq(s, s));
            assert!(b2.natural_leq(zero, s));
        }
    }

    #[test]
    fn natural_order_matches_existential_definition() {
        for (name, s) in fixtures::semigroups() {
            for a in s.elements() {
                for b in s.elements() {
                    let exists = s.idempotents().iter().any(|&e| s.mul(b, e) == a);
                    assert_eq!(s.natural_leq(a, b), exists, "{name}: {} <= {}", s.name(a), s.name(b));
                }
            }
        }
    }

    #[test]
    fn up_closure_examples() {
        let sl3 = fixtures::sl3();
        assert_eq!(sl3.up_closure(&set(&sl3, &["g"])), set(&sl3, &["e", "f", "g"]));
        let all: ElementSubset = sl3.elements().collect();
        assert_eq!(sl3.up_closure(&all), all);
        let b2 = fixtures::b2();
        assert_eq!(b2.up_closure(&set(&b2, &["e1"])), set(&b2, &["e1"]));
    }

    #[test]
    fn h_class_examples() {
        let z3 = fixtures::z3();
        let one = z3.elem("1").unwrap();
        assert_eq!(z3.h_class(one, one).unwrap(), z3.elements().collect());
        let b2 = fixtures::b2();
        let (e1, e2, zero) = (b2.elem("e1").unwrap(), b2.elem("e2").unwrap(), b2.elem("0").unwrap());
        assert_eq!(b2.h_class(e1, e2).unwrap(), set(&b2, &["a"]));
        assert!(b2.h_class(e1, zero).unwrap().is_empty());
        assert_eq!(
            b2.h_class(e1, b2.elem("a").unwrap()),
            Err(SemigroupError::NotIdempotent("a".into()))
        );
    }

    #[test]
    fn d_related_examples() {
        let b2 = fixtures::b2();
        let (e1, e2, zero) = (b2.elem("e1").unwrap(), b2.elem("e2").unwrap(), b2.elem("0").unwrap());
        assert!(b2.d_related(e1, e2));
        assert!(!b2.d_related(e1, zero));
        for &e in b2.idempotents() {
            assert!(b2.d_related(e, e));
        }
        assert_eq!(b2.idempotent_d_classes(), vec![vec![e1, e2], vec![zero]]);
    }

    #[test]
    fn h_classes_partition_each_fixture() {
        for (name, s) in fixtures::semigroups() {
            let mut seen = vec![0usize; s.size()];
            for &e in s.idempotents() {
                for &f in s.idempotents() {
                    for x in s.h_class(e, f).unwrap() {
                        seen[x] += 1;
                    }
                }
            }
            assert!(seen.iter().all(|&c| c == 1), "{name}: {seen:?}");
        }
    }

    #[test]
    fn idempotents_form_meet_semilattice() {
        for (name, s) in fixtures::semigroups() {
            for &e in s.idempotents() {
                for &f in s.idempotents() {
                    let m = s.mul(e, f);
                    assert!(s.is_idempotent(m), "{name}");
                    assert!(s.natural_leq(m, e) && s.natural_leq(m, f), "{name}");
                    for &g in s.idempotents() {
                        if s.natural_leq(g, e) && s.natural_leq(g, f) {
                            assert!(s.natural_leq(g, m), "{name}");
                        }
                    }
                    // on idempotents, natural order is e <= f iff ef = e
                    assert_eq!(s.natural_leq(e, f), s.mul(e, f) == e, "{name}");
                }
            }
        }
    }

    #[test]
    fn size_cap_requires_skip() {
        let n = ASSOCIATIVITY_CAP + 1;
        let names: Vec<String> = (0..n).map(|i| format!("z{i}")).collect();
        let table = vec![vec![0; n]; n];
        let err = InverseSemigroup::with_options(names, table, Some(vec![0; n]), ValidateOptions::default())
            .unwrap_err();
        assert!(matches!(err, SemigroupError::TooLarge { .. }));
    }

    #[test]
    fn analysis_of_b2() {
        let b2 = fixtures::b2();
        let a = b2.analyze();
        assert_eq!(a.idempotents, vec!["e1", "e2", "0"]);
        assert_eq!(a.d_classes.len(), 2);
        assert_eq!(a.d_classes[0].h_classes.len(), 4);
        assert!(a.hasse.contains(&("0".to_string(), "a".to_string())));
    }
}
