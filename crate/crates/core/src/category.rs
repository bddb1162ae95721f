//! Explicit finite categories and Loganathan's category `L(S)`.
//!
//! `L(S)` has the idempotents of `S` as objects; an arrow `e -> f` is a pair
//! `(f, s)` with `d(s) = e` and `r(s) <= f`, and `(g, t) ∘ (f, s) = (g, ts)`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::exec::Strategy;
use crate::semigroup::{Elem, InverseSemigroup};

pub type ObjId = usize;
pub type ArrowId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub source: ObjId,
    pub target: ObjId,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("identity at object {object} is not an endomorphism of it")]
    IdentityNotEndo { object: ObjId },
    #[error("identity law fails at arrow {arrow} for object {object}")]
    IdentityLaw { object: ObjId, arrow: ArrowId },
    #[error("composite of {g} after {f} is {problem}")]
    BadComposite { g: ArrowId, f: ArrowId, problem: &'static str },
    #[error("composition not associative at ({h}, {g}, {f})")]
    NotAssociative { h: ArrowId, g: ArrowId, f: ArrowId },
}

/// Why a finite category fails to be directed or filtered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilteredViolation {
    /// F1: no objects.
    Empty,
    /// F2: no span `i <- k -> j`.
    NoSpan { i: ObjId, j: ObjId },
    /// F3: no arrow `w` with `u w = v w`.
    NoEqualizer { u: ArrowId, v: ArrowId },
}

/// A finite category with an explicit composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    // compose[g * n + f] = g ∘ f, defined iff target(f) = source(g)
    compose: Vec<Option<ArrowId>>,
    identities: Vec<ArrowId>,
    outgoing: Vec<Vec<ArrowId>>,
    incoming: Vec<Vec<ArrowId>>,
}

impl FiniteCategory {
    /// Assembles the data without checking any law; see [`FiniteCategory::check`].
    pub fn from_parts(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        compose: Vec<Option<ArrowId>>,
        identities: Vec<ArrowId>,
    ) -> Self {
        let mut outgoing = vec![Vec::new(); objects.len()];
        let mut incoming = vec![Vec::new(); objects.len()];
        for (id, a) in arrows.iter().enumerate() {
            outgoing[a.source].push(id);
            incoming[a.target].push(id);
        }
        Self { objects, arrows, compose, identities, outgoing, incoming }
    }

    /// A poset (given by its order relation) viewed as a category.
    pub fn from_poset(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Self {
        let n = names.len();
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    index.insert((a, b), arrows.len());
                    arrows.push(Arrow { source: a, target: b, label: format!("{}<={}", names[a], names[b]) });
                }
            }
        }
        let m = arrows.len();
        let mut compose = vec![None; m * m];
        for (g, ga) in arrows.iter().enumerate() {
            for (f, fa) in arrows.iter().enumerate() {
                if fa.target == ga.source {
                    compose[g * m + f] = index.get(&(fa.source, ga.target)).copied();
                }
            }
        }
        let identities = (0..n).map(|a| index[&(a, a)]).collect();
        Self::from_parts(names, arrows, compose, identities)
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn source(&self, a: ArrowId) -> ObjId {
        self.arrows[a].source
    }

    pub fn target(&self, a: ArrowId) -> ObjId {
        self.arrows[a].target
    }

    pub fn identity(&self, o: ObjId) -> ArrowId {
        self.identities[o]
    }

    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: ArrowId, f: ArrowId) -> Option<ArrowId> {
        self.compose[g * self.arrows.len() + f]
    }

    pub fn outgoing(&self, o: ObjId) -> &[ArrowId] {
        &self.outgoing[o]
    }

    pub fn incoming(&self, o: ObjId) -> &[ArrowId] {
        &self.incoming[o]
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> Vec<ArrowId> {
        self.outgoing[a].iter().copied().filter(|&u| self.arrows[u].target == b).collect()
    }

    /// Exhaustively verifies composability, identity and associativity laws.
    pub fn check(&self) -> Result<(), CategoryError> {
        self.check_with(Strategy::default())
    }

    pub fn check_with(&self, strategy: Strategy) -> Result<(), CategoryError> {
        let m = self.arrows.len();
        for (o, &id) in self.identities.iter().enumerate() {
            if id >= m || self.arrows[id].source != o || self.arrows[id].target != o {
                return Err(CategoryError::IdentityNotEndo { object: o });
            }
        }
        for g in 0..m {
            for f in 0..m {
                let composable = self.arrows[f].target == self.arrows[g].source;
                match (composable, self.compose(g, f)) {
                    (true, None) => return Err(CategoryError::BadComposite { g, f, problem: "missing" }),
                    (false, Some(_)) => {
                        return Err(CategoryError::BadComposite { g, f, problem: "defined for non-composable arrows" })
                    }
                    (true, Some(c)) => {
                        if c >= m
                            || self.arrows[c].source != self.arrows[f].source
                            || self.arrows[c].target != self.arrows[g].target
                        {
                            return Err(CategoryError::BadComposite { g, f, problem: "ill-typed" });
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for (u, a) in self.arrows.iter().enumerate() {
            if self.compose(u, self.identities[a.source]) != Some(u) {
                return Err(CategoryError::IdentityLaw { object: a.source, arrow: u });
            }
            if self.compose(self.identities[a.target], u) != Some(u) {
                return Err(CategoryError::IdentityLaw { object: a.target, arrow: u });
            }
        }
        let witness = strategy.find_map_first(0..m, |h| {
            for &g in &self.incoming[self.arrows[h].source] {
                let hg = self.compose(h, g)?;
                for &f in &self.incoming[self.arrows[g].source] {
                    let gf = self.compose(g, f)?;
                    if self.compose(hg, f) != self.compose(h, gf) {
                        return Some((h, g, f));
                    }
                }
            }
            None
        });
        match witness {
            Some((h, g, f)) => Err(CategoryError::NotAssociative { h, g, f }),
            None => Ok(()),
        }
    }

    /// F1 and F2: nonempty, and every pair of objects is the target of a span.
    pub fn directed_violation(&self) -> Option<FilteredViolation> {
        let n = self.objects.len();
        if n == 0 {
            return Some(FilteredViolation::Empty);
        }
        // reach[k] = objects reachable from k by one arrow
        let reach: Vec<Vec<bool>> = (0..n)
            .map(|k| {
                let mut row = vec![false; n];
                for &u in &self.outgoing[k] {
                    row[self.arrows[u].target] = true;
                }
                row
            })
            .collect();
        for i in 0..n {
            for j in i..n {
                if !reach.iter().any(|row| row[i] && row[j]) {
                    return Some(FilteredViolation::NoSpan { i, j });
                }
            }
        }
        None
    }

    /// F1, F2 and F3.
    pub fn filtered_violation(&self) -> Option<FilteredViolation> {
        if let Some(v) = self.directed_violation() {
            return Some(v);
        }
        for u in 0..self.arrows.len() {
            let (src, tgt) = (self.arrows[u].source, self.arrows[u].target);
            for &v in &self.outgoing[src] {
                if v <= u || self.arrows[v].target != tgt {
                    continue;
                }
                let equalized = self.incoming[src]
                    .iter()
                    .any(|&w| self.compose(u, w) == self.compose(v, w));
                if !equalized {
                    return Some(FilteredViolation::NoEqualizer { u, v });
                }
            }
        }
        None
    }

    /// Graphviz rendering; objects are nodes and non-identity arrows edges.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        writeln!(out, "digraph \"{name}\" {{").unwrap();
        for (o, label) in self.objects.iter().enumerate() {
            writeln!(out, "  n{o} [label=\"{label}\"];").unwrap();
        }
        for (u, a) in self.arrows.iter().enumerate() {
            if self.identities[a.source] == u {
                continue;
            }
            writeln!(out, "  n{} -> n{} [label=\"{}\"];", a.source, a.target, a.label).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Loganathan's category of an inverse semigroup, with the `(f, s)` payloads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoganCategory {
    semigroup: Arc<InverseSemigroup>,
    category: FiniteCategory,
    objects: Vec<Elem>,
    object_of: Vec<Option<ObjId>>,
    payloads: Vec<(Elem, Elem)>,
    arrow_index: HashMap<(Elem, Elem), ArrowId>,
}

impl LoganCategory {
    pub fn build(semigroup: Arc<InverseSemigroup>) -> Self {
        let s = &*semigroup;
        let objects: Vec<Elem> = s.idempotents().to_vec();
        let mut object_of = vec![None; s.size()];
        for (o, &e) in objects.iter().enumerate() {
            object_of[e] = Some(o);
        }
        let mut arrows = Vec::new();
        let mut payloads = Vec::new();
        let mut arrow_index = HashMap::new();
        for x in s.elements() {
            let rs = s.r(x);
            for &f in &objects {
                if s.natural_leq(rs, f) {
                    arrow_index.insert((f, x), arrows.len());
                    payloads.push((f, x));
                    arrows.push(Arrow {
                        source: object_of[s.d(x)].expect("d(s) is idempotent"),
                        target: object_of[f].expect("f is idempotent"),
                        label: format!("({},{})", s.name(f), s.name(x)),
                    });
                }
            }
        }
        let m = arrows.len();
        let mut compose = vec![None; m * m];
        for g in 0..m {
            let (gf, t) = payloads[g];
            for f in 0..m {
                if arrows[f].target == arrows[g].source {
                    let (_, x) = payloads[f];
                    compose[g * m + f] = arrow_index.get(&(gf, s.mul(t, x))).copied();
                }
            }
        }
        let identities = objects.iter().map(|&e| arrow_index[&(e, e)]).collect();
        let names = objects.iter().map(|&e| s.name(e).to_string()).collect();
        let category = FiniteCategory::from_parts(names, arrows, compose, identities);
        Self { semigroup, category, objects, object_of, payloads, arrow_index }
    }

    pub fn semigroup(&self) -> &Arc<InverseSemigroup> {
        &self.semigroup
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.payloads.len()
    }

    /// The idempotent underlying an object.
    pub fn idempotent(&self, o: ObjId) -> Elem {
        self.objects[o]
    }

    pub fn object(&self, e: Elem) -> Option<ObjId> {
        self.object_of.get(e).copied().flatten()
    }

    pub fn object_by_name(&self, name: &str) -> Result<ObjId, CategoryError> {
        self.semigroup
            .elem(name)
            .and_then(|e| self.object(e))
            .ok_or_else(|| CategoryError::UnknownObject(name.to_string()))
    }

    /// The arrow `(f, s)`, if it exists.
    pub fn arrow(&self, f: Elem, s: Elem) -> Option<ArrowId> {
        self.arrow_index.get(&(f, s)).copied()
    }

    /// Looks up an arrow by its label `(f,s)` or `f,s`.
    pub fn arrow_by_label(&self, label: &str) -> Option<ArrowId> {
        let trimmed = label.trim().trim_start_matches('(').trim_end_matches(')');
        let (f, s) = trimmed.split_once(',')?;
        let sg = &self.semigroup;
        self.arrow(sg.elem(f.trim())?, sg.elem(s.trim())?)
    }

    /// `(target idempotent, semigroup element)` of an arrow.
    pub fn payload(&self, a: ArrowId) -> (Elem, Elem) {
        self.payloads[a]
    }

    pub fn source(&self, a: ArrowId) -> ObjId {
        self.category.source(a)
    }

    pub fn target(&self, a: ArrowId) -> ObjId {
        self.category.target(a)
    }

    pub fn identity(&self, o: ObjId) -> ArrowId {
        self.category.identity(o)
    }

    pub fn compose(&self, g: ArrowId, f: ArrowId) -> Option<ArrowId> {
        self.category.compose(g, f)
    }

    /// The arrow `(f, e)` from `e` to `f` for idempotents `e <= f`.
    pub fn inclusion(&self, e: ObjId, f: ObjId) -> Option<ArrowId> {
        let (ee, fe) = (self.objects[e], self.objects[f]);
        if self.semigroup.natural_leq(ee, fe) {
            self.arrow(fe, ee)
        } else {
            None
        }
    }

    /// All inclusion arrows `(f, e)` between idempotents with `e <= f`.
    pub fn inclusions(&self) -> Vec<ArrowId> {
        (0..self.payloads.len())
            .filter(|&a| {
                let (f, x) = self.payloads[a];
                self.semigroup.is_idempotent(x) && self.semigroup.natural_leq(x, f)
            })
            .collect()
    }

    pub fn hom_set(&self, e: ObjId, f: ObjId) -> Result<Vec<ArrowId>, CategoryError> {
        for o in [e, f] {
            if o >= self.objects.len() {
                return Err(CategoryError::UnknownObject(o.to_string()));
            }
        }
        Ok(self.category.hom(e, f))
    }

    pub fn label(&self, a: ArrowId) -> &str {
        &self.category.arrow(a).label
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        self.category.object_name(o)
    }

    pub fn to_dot(&self) -> String {
        self.category.to_dot("L(S)")
    }
}
