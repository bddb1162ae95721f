//! JSON interchange formats.
//!
//! Elements, points and arrows are referred to by name everywhere; arrows of
//! `L(S)` use their `(f,s)` labels. Maps list defined pairs only.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{ActionError, ActionOptions, PartialAction, PartialMap};
use crate::bundle::{Bundle, BundleError, FiniteSheaf, FiniteSpace, SheafAction};
use crate::category::LoganCategory;
use crate::cosets::ClosedInverseSubsemigroup;
use crate::functor::{FunctorError, NatTrans, SetFunctor};
use crate::semigroup::{InverseSemigroup, SemigroupError, ValidateOptions};
use crate::tensor::{Presheaf, TensorError};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("cannot read {path}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON")]
    Syntax(#[from] serde_json::Error),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("{what} `{name}` is missing")]
    Missing { what: &'static str, name: String },
    #[error("no semigroup given")]
    NoSemigroup,
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = JsonError> = std::result::Result<T, E>;

pub type PointMap = BTreeMap<String, String>;

/// Object sets and arrow maps of a set-valued diagram.
type Diagram = (Vec<Vec<String>>, Vec<Vec<usize>>);

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| JsonError::Io { path: path.to_path_buf(), source })
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&read(path)?)?)
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

fn index_of<'a>(names: &'a [String], kind: &'static str) -> Result<HashMap<&'a str, usize>> {
    let mut out = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if out.insert(n.as_str(), i).is_some() {
            return Err(JsonError::Duplicate { kind, name: n.clone() });
        }
    }
    Ok(out)
}

fn lookup(index: &HashMap<&str, usize>, kind: &'static str, name: &str) -> Result<usize> {
    index.get(name).copied().ok_or_else(|| JsonError::Unknown { kind, name: name.to_string() })
}

// ---------------------------------------------------------------------------
// semigroups

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupJson {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inv: Option<BTreeMap<String, String>>,
}

impl SemigroupJson {
    pub fn from_semigroup(s: &InverseSemigroup) -> Self {
        let names = s.names();
        Self {
            elements: names.to_vec(),
            table: s.table_rows().iter().map(|row| row.iter().map(|&v| names[v].clone()).collect()).collect(),
            inv: Some(s.elements().map(|x| (names[x].clone(), names[s.inv(x)].clone())).collect()),
        }
    }

    /// Validate; a missing `inv` is inferred.
    pub fn build(&self, options: ValidateOptions) -> Result<InverseSemigroup> {
        let index = index_of(&self.elements, "element")?;
        let mut rows = Vec::with_capacity(self.table.len());
        for row in &self.table {
            rows.push(row.iter().map(|v| lookup(&index, "element", v)).collect::<Result<Vec<_>>>()?);
        }
        let inv = match &self.inv {
            None => None,
            Some(map) => {
                let mut out = vec![None; self.elements.len()];
                for (s, t) in map {
                    out[lookup(&index, "element", s)?] = Some(lookup(&index, "element", t)?);
                }
                let inv: Option<Vec<usize>> = out.iter().copied().collect();
                match inv {
                    Some(v) => Some(v),
                    None => {
                        let missing = out.iter().position(Option::is_none).expect("some entry missing");
                        return Err(JsonError::Missing { what: "inverse of", name: self.elements[missing].clone() });
                    }
                }
            }
        };
        Ok(InverseSemigroup::with_options(self.elements.clone(), rows, inv, options)?)
    }
}

/// A semigroup given inline or as a path relative to the referring file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SemigroupRef {
    Path(String),
    Inline(SemigroupJson),
}

impl SemigroupRef {
    pub fn inline(s: &InverseSemigroup) -> Self {
        SemigroupRef::Inline(SemigroupJson::from_semigroup(s))
    }

    pub fn resolve(&self, base: Option<&Path>, options: ValidateOptions) -> Result<InverseSemigroup> {
        match self {
            SemigroupRef::Inline(j) => j.build(options),
            SemigroupRef::Path(p) => {
                let path = match base {
                    Some(dir) => dir.join(p),
                    None => PathBuf::from(p),
                };
                let j: SemigroupJson = read_json(&path)?;
                j.build(options)
            }
        }
    }
}

pub fn load_semigroup(path: &Path, options: ValidateOptions) -> Result<InverseSemigroup> {
    read_json::<SemigroupJson>(path)?.build(options)
}

fn parent(path: &Path) -> Option<&Path> {
    path.parent().filter(|p| !p.as_os_str().is_empty())
}

// ---------------------------------------------------------------------------
// actions

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionJson {
    pub semigroup: SemigroupRef,
    pub carrier: Vec<String>,
    pub maps: BTreeMap<String, PointMap>,
}

fn partial_map_to_json(m: &PartialMap, source: &[String], target: &[String]) -> PointMap {
    m.0.iter()
        .enumerate()
        .filter_map(|(x, y)| y.map(|y| (source[x].clone(), target[y].clone())))
        .collect()
}

fn partial_map_from_json(
    m: &PointMap,
    source: &HashMap<&str, usize>,
    target: &HashMap<&str, usize>,
    len: usize,
) -> Result<PartialMap> {
    let mut out = PartialMap::empty(len);
    for (x, y) in m {
        out.0[lookup(source, "point", x)?] = Some(lookup(target, "point", y)?);
    }
    Ok(out)
}

impl ActionJson {
    pub fn from_action(a: &PartialAction) -> Self {
        let s = a.semigroup();
        let maps = s
            .elements()
            .filter(|&x| a.map(x).0.iter().any(Option::is_some))
            .map(|x| (s.name(x).to_string(), partial_map_to_json(a.map(x), a.carrier(), a.carrier())))
            .collect();
        Self { semigroup: SemigroupRef::inline(s), carrier: a.carrier().to_vec(), maps }
    }

    pub fn build_over(&self, s: Arc<InverseSemigroup>, options: ActionOptions) -> Result<PartialAction> {
        let points = index_of(&self.carrier, "point")?;
        let mut maps = vec![PartialMap::empty(self.carrier.len()); s.size()];
        for (name, m) in &self.maps {
            let e = s.elem(name).ok_or_else(|| JsonError::Unknown { kind: "element", name: name.clone() })?;
            maps[e] = partial_map_from_json(m, &points, &points, self.carrier.len())?;
        }
        Ok(PartialAction::with_options(s, self.carrier.clone(), maps, options)?)
    }

    pub fn build(&self, base: Option<&Path>, options: ActionOptions) -> Result<PartialAction> {
        let s = Arc::new(self.semigroup.resolve(base, ValidateOptions::default())?);
        self.build_over(s, options)
    }
}

pub fn load_action(path: &Path, options: ActionOptions) -> Result<PartialAction> {
    read_json::<ActionJson>(path)?.build(parent(path), options)
}

// ---------------------------------------------------------------------------
// functors and presheaves

/// Set-valued diagram on `L(S)`. For a functor `on_arrows[(f,s)]` maps the
/// set at the source to the set at the target; for a presheaf it goes the
/// other way. Identity arrows may be omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semigroup: Option<SemigroupRef>,
    pub on_objects: BTreeMap<String, Vec<String>>,
    pub on_arrows: BTreeMap<String, PointMap>,
}

fn diagram_to_json(l: &LoganCategory, sets: &[Vec<String>], maps: &[Vec<usize>], covariant: bool) -> FunctorJson {
    let on_objects = (0..l.object_count()).map(|o| (l.object_name(o).to_string(), sets[o].clone())).collect();
    let on_arrows = (0..l.arrow_count())
        .filter(|&u| l.identity(l.source(u)) != u)
        .map(|u| {
            let (from, to) = if covariant { (l.source(u), l.target(u)) } else { (l.target(u), l.source(u)) };
            let m = maps[u].iter().enumerate().map(|(x, &y)| (sets[from][x].clone(), sets[to][y].clone())).collect();
            (l.label(u).to_string(), m)
        })
        .collect();
    FunctorJson { semigroup: Some(SemigroupRef::inline(l.semigroup())), on_objects, on_arrows }
}

impl FunctorJson {
    pub fn from_functor(f: &SetFunctor) -> Self {
        diagram_to_json(f.logan(), f.sets(), f.maps(), true)
    }

    pub fn from_presheaf(p: &Presheaf) -> Self {
        diagram_to_json(p.logan(), p.sets(), p.maps(), false)
    }

    fn parts(&self, l: &LoganCategory, covariant: bool) -> Result<Diagram> {
        for name in self.on_objects.keys() {
            let known = (0..l.object_count()).any(|o| l.object_name(o) == name);
            if !known {
                return Err(JsonError::Unknown { kind: "object", name: name.clone() });
            }
        }
        let sets: Vec<Vec<String>> = (0..l.object_count())
            .map(|o| {
                let name = l.object_name(o);
                self.on_objects
                    .get(name)
                    .cloned()
                    .ok_or_else(|| JsonError::Missing { what: "object", name: name.to_string() })
            })
            .collect::<Result<_>>()?;
        let indexes: Vec<HashMap<&str, usize>> = sets.iter().map(|s| index_of(s, "point")).collect::<Result<_>>()?;
        for label in self.on_arrows.keys() {
            if l.arrow_by_label(label).is_none() {
                return Err(JsonError::Unknown { kind: "arrow", name: label.clone() });
            }
        }
        let mut maps = Vec::with_capacity(l.arrow_count());
        for u in 0..l.arrow_count() {
            let (from, to) = if covariant { (l.source(u), l.target(u)) } else { (l.target(u), l.source(u)) };
            let label = l.label(u);
            let m = match self.on_arrows.get(label) {
                None if l.identity(l.source(u)) == u => (0..sets[from].len()).collect(),
                None => return Err(JsonError::Missing { what: "arrow", name: label.to_string() }),
                Some(pairs) => {
                    let mut out = vec![usize::MAX; sets[from].len()];
                    for (x, y) in pairs {
                        out[lookup(&indexes[from], "point", x)?] = lookup(&indexes[to], "point", y)?;
                    }
                    if let Some(x) = out.iter().position(|&y| y == usize::MAX) {
                        return Err(JsonError::Missing {
                            what: "image under an arrow of point",
                            name: format!("{} along {label}", sets[from][x]),
                        });
                    }
                    out
                }
            };
            maps.push(m);
        }
        Ok((sets, maps))
    }

    pub fn logan(&self, base: Option<&Path>) -> Result<Arc<LoganCategory>> {
        let s = self.semigroup.as_ref().ok_or(JsonError::NoSemigroup)?.resolve(base, ValidateOptions::default())?;
        Ok(Arc::new(LoganCategory::build(Arc::new(s))))
    }

    pub fn functor_over(&self, logan: Arc<LoganCategory>) -> Result<SetFunctor> {
        let (sets, maps) = self.parts(&logan, true)?;
        Ok(SetFunctor::new(logan, sets, maps)?)
    }

    pub fn presheaf_over(&self, logan: Arc<LoganCategory>) -> Result<Presheaf> {
        let (sets, maps) = self.parts(&logan, false)?;
        Ok(Presheaf::new(logan, sets, maps)?)
    }
}

/// Load a functor; `logan` overrides any embedded semigroup.
pub fn load_functor(path: &Path, logan: Option<Arc<LoganCategory>>) -> Result<SetFunctor> {
    let j: FunctorJson = read_json(path)?;
    let l = match logan {
        Some(l) => l,
        None => j.logan(parent(path))?,
    };
    j.functor_over(l)
}

pub fn load_presheaf(path: &Path, logan: Option<Arc<LoganCategory>>) -> Result<Presheaf> {
    let j: FunctorJson = read_json(path)?;
    let l = match logan {
        Some(l) => l,
        None => j.logan(parent(path))?,
    };
    j.presheaf_over(l)
}

// ---------------------------------------------------------------------------
// closed inverse subsemigroups

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubsemigroupJson {
    Members { members: Vec<String> },
    List(Vec<String>),
}

impl SubsemigroupJson {
    pub fn from_subsemigroup(s: &InverseSemigroup, h: &ClosedInverseSubsemigroup) -> Self {
        SubsemigroupJson::Members { members: h.members().iter().map(|&x| s.name(x).to_string()).collect() }
    }

    pub fn names(&self) -> &[String] {
        match self {
            SubsemigroupJson::Members { members } | SubsemigroupJson::List(members) => members,
        }
    }

    pub fn build(&self, s: &InverseSemigroup) -> Result<ClosedInverseSubsemigroup> {
        let members = self
            .names()
            .iter()
            .map(|n| s.elem(n).ok_or_else(|| JsonError::Unknown { kind: "element", name: n.clone() }))
            .collect::<Result<_>>()?;
        ClosedInverseSubsemigroup::new(s, members).map_err(|e| JsonError::Invalid(e.to_string()))
    }
}

// ---------------------------------------------------------------------------
// base spaces, bundles and sheaf actions

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub points: Vec<String>,
    /// Pairs `[x, y]` with `x <= y`; reflexive pairs may be omitted.
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

impl SpaceJson {
    pub fn from_space(x: &FiniteSpace) -> Self {
        Self { points: x.points().to_vec(), leq: x.leq_pairs() }
    }

    pub fn build(&self) -> Result<FiniteSpace> {
        index_of(&self.points, "point")?;
        Ok(FiniteSpace::new(self.points.clone(), &self.leq)?)
    }
}

/// Stalk-wise natural transformation along `from <= to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleRestrictionJson {
    pub from: String,
    pub to: String,
    pub components: BTreeMap<String, PointMap>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StalkJson {
    pub on_objects: BTreeMap<String, Vec<String>>,
    pub on_arrows: BTreeMap<String, PointMap>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleJson {
    pub semigroup: SemigroupRef,
    pub space: SpaceJson,
    pub stalks: BTreeMap<String, StalkJson>,
    #[serde(default)]
    pub restrictions: Vec<BundleRestrictionJson>,
}

impl BundleJson {
    pub fn from_bundle(b: &Bundle) -> Self {
        let l = b.logan();
        let space = b.space();
        let stalks = space
            .points()
            .iter()
            .zip(b.stalks())
            .map(|(p, f)| {
                let j = FunctorJson::from_functor(f);
                (p.clone(), StalkJson { on_objects: j.on_objects, on_arrows: j.on_arrows })
            })
            .collect();
        let restrictions = space
            .strict_pairs()
            .into_iter()
            .map(|(x, y)| {
                let t = b.restriction(x, y).expect("x <= y");
                let (fx, fy) = (b.stalk(x), b.stalk(y));
                let components = (0..l.object_count())
                    .map(|o| {
                        let m = t.components[o]
                            .iter()
                            .enumerate()
                            .map(|(v, &w)| (fx.set(o)[v].clone(), fy.set(o)[w].clone()))
                            .collect();
                        (l.object_name(o).to_string(), m)
                    })
                    .collect();
                BundleRestrictionJson { from: space.points()[x].clone(), to: space.points()[y].clone(), components }
            })
            .collect();
        Self { semigroup: SemigroupRef::inline(l.semigroup()), space: SpaceJson::from_space(space), stalks, restrictions }
    }

    pub fn build(&self, base: Option<&Path>) -> Result<Bundle> {
        let s = Arc::new(self.semigroup.resolve(base, ValidateOptions::default())?);
        let logan = Arc::new(LoganCategory::build(s));
        let space = Arc::new(self.space.build()?);
        let points = index_of(space.points(), "point")?;
        for p in self.stalks.keys() {
            lookup(&points, "point", p)?;
        }
        let stalks = space
            .points()
            .iter()
            .map(|p| {
                let j = self.stalks.get(p).ok_or_else(|| JsonError::Missing { what: "stalk", name: p.clone() })?;
                let fj = FunctorJson { semigroup: None, on_objects: j.on_objects.clone(), on_arrows: j.on_arrows.clone() };
                fj.functor_over(logan.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        let mut strict = Vec::new();
        for r in &self.restrictions {
            let (x, y) = (lookup(&points, "point", &r.from)?, lookup(&points, "point", &r.to)?);
            if x == y {
                continue;
            }
            let mut components = Vec::with_capacity(logan.object_count());
            for o in 0..logan.object_count() {
                let name = logan.object_name(o);
                let pairs = r
                    .components
                    .get(name)
                    .ok_or_else(|| JsonError::Missing { what: "restriction component", name: name.to_string() })?;
                let src = index_of(stalks[x].set(o), "point")?;
                let tgt = index_of(stalks[y].set(o), "point")?;
                let mut out = vec![usize::MAX; stalks[x].set(o).len()];
                for (v, w) in pairs {
                    out[lookup(&src, "point", v)?] = lookup(&tgt, "point", w)?;
                }
                if let Some(v) = out.iter().position(|&w| w == usize::MAX) {
                    return Err(JsonError::Missing { what: "restriction of", name: stalks[x].set(o)[v].clone() });
                }
                components.push(out);
            }
            strict.push(((x, y), NatTrans { components }));
        }
        Ok(Bundle::new(space, stalks, strict)?)
    }
}

pub fn load_bundle(path: &Path) -> Result<Bundle> {
    read_json::<BundleJson>(path)?.build(parent(path))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafRestrictionJson {
    pub from: String,
    pub to: String,
    pub map: PointMap,
}

/// Total-space points are written `v@x` for `v` in the stalk over `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafActionJson {
    pub semigroup: SemigroupRef,
    pub space: SpaceJson,
    pub stalks: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub restrictions: Vec<SheafRestrictionJson>,
    pub maps: BTreeMap<String, PointMap>,
}

impl SheafActionJson {
    pub fn from_sheaf_action(sa: &SheafAction) -> Self {
        let sheaf = sa.sheaf();
        let space = sheaf.space();
        let stalks = space.points().iter().cloned().zip(sheaf.stalks().iter().cloned()).collect();
        let restrictions = space
            .strict_pairs()
            .into_iter()
            .map(|(x, y)| {
                let m = sheaf.restriction(x, y).expect("x <= y");
                let map = m
                    .iter()
                    .enumerate()
                    .map(|(v, &w)| (sheaf.stalk(x)[v].clone(), sheaf.stalk(y)[w].clone()))
                    .collect();
                SheafRestrictionJson { from: space.points()[x].clone(), to: space.points()[y].clone(), map }
            })
            .collect();
        let a = ActionJson::from_action(sa.action());
        Self {
            semigroup: a.semigroup,
            space: SpaceJson::from_space(space),
            stalks,
            restrictions,
            maps: a.maps,
        }
    }

    pub fn build(&self, base: Option<&Path>) -> Result<SheafAction> {
        let s = Arc::new(self.semigroup.resolve(base, ValidateOptions::default())?);
        let space = Arc::new(self.space.build()?);
        let points = index_of(space.points(), "point")?;
        for p in self.stalks.keys() {
            lookup(&points, "point", p)?;
        }
        let stalks: Vec<Vec<String>> = space
            .points()
            .iter()
            .map(|p| self.stalks.get(p).cloned().ok_or_else(|| JsonError::Missing { what: "stalk", name: p.clone() }))
            .collect::<Result<_>>()?;
        let mut strict = Vec::new();
        for r in &self.restrictions {
            let (x, y) = (lookup(&points, "point", &r.from)?, lookup(&points, "point", &r.to)?);
            if x == y {
                continue;
            }
            let src = index_of(&stalks[x], "point")?;
            let tgt = index_of(&stalks[y], "point")?;
            let mut out = vec![usize::MAX; stalks[x].len()];
            for (v, w) in &r.map {
                out[lookup(&src, "point", v)?] = lookup(&tgt, "point", w)?;
            }
            if let Some(v) = out.iter().position(|&w| w == usize::MAX) {
                return Err(JsonError::Missing { what: "restriction of", name: stalks[x][v].clone() });
            }
            strict.push(((x, y), out));
        }
        let sheaf = FiniteSheaf::new(space, stalks, strict)?;
        let labels = sheaf.total_labels();
        let total = index_of(&labels, "point")?;
        let mut maps = vec![PartialMap::empty(labels.len()); s.size()];
        for (name, m) in &self.maps {
            let e = s.elem(name).ok_or_else(|| JsonError::Unknown { kind: "element", name: name.clone() })?;
            maps[e] = partial_map_from_json(m, &total, &total, labels.len())?;
        }
        Ok(SheafAction::from_maps(sheaf, s, maps)?)
    }
}

pub fn load_sheaf_action(path: &Path) -> Result<SheafAction> {
    read_json::<SheafActionJson>(path)?.build(parent(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::{examples, tau};
    use crate::equivalence::phi;
    use crate::fixtures;
    use crate::tensor::presheaf_suite;

    fn reparse<T: Serialize + for<'de> Deserialize<'de>>(v: &T) -> T {
        serde_json::from_str(&to_pretty(v)).unwrap()
    }

    #[test]
    fn semigroups_round_trip() {
        for (_, s) in fixtures::semigroups() {
            let j = SemigroupJson::from_semigroup(&s);
            assert_eq!(reparse(&j), j);
            assert_eq!(j.build(ValidateOptions::default()).unwrap(), s);
        }
    }

    #[test]
    fn inverses_are_inferred_when_missing() {
        let s = fixtures::semigroup_by_name("B2").unwrap();
        let mut j = SemigroupJson::from_semigroup(&s);
        j.inv = None;
        assert_eq!(j.build(ValidateOptions::default()).unwrap(), s);
    }

    #[test]
    fn actions_round_trip() {
        for (_, a) in fixtures::action_suite() {
            let j = ActionJson::from_action(&a);
            assert_eq!(reparse(&j), j);
            assert_eq!(j.build(None, ActionOptions::default()).unwrap(), a);
        }
    }

    #[test]
    fn semigroup_paths_resolve_relative_to_the_file() {
        let dir = std::env::temp_dir().join(format!("invtopos-json-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let a = fixtures::action_by_name("ex33-action").unwrap();
        fs::write(dir.join("sl3.json"), to_pretty(&SemigroupJson::from_semigroup(a.semigroup()))).unwrap();
        let mut j = ActionJson::from_action(&a);
        j.semigroup = SemigroupRef::Path("sl3.json".into());
        fs::write(dir.join("a.json"), to_pretty(&j)).unwrap();
        assert_eq!(load_action(&dir.join("a.json"), ActionOptions::default()).unwrap(), a);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn functors_and_presheaves_round_trip() {
        for (_, a) in fixtures::actions() {
            let f = phi(&a);
            let j = FunctorJson::from_functor(&f);
            assert_eq!(reparse(&j), j);
            assert_eq!(j.functor_over(f.logan().clone()).unwrap(), f);
            for (_, p) in presheaf_suite(f.logan()) {
                let j = FunctorJson::from_presheaf(&p);
                assert_eq!(reparse(&j), j);
                assert_eq!(j.presheaf_over(p.logan().clone()).unwrap(), p);
            }
        }
    }

    #[test]
    fn bundles_and_sheaf_actions_round_trip() {
        for (_, b) in examples::bundles() {
            let j = BundleJson::from_bundle(&b);
            assert_eq!(reparse(&j), j);
            assert_eq!(j.build(None).unwrap(), b);
            let sa = tau(&b).unwrap();
            let j = SheafActionJson::from_sheaf_action(&sa);
            assert_eq!(reparse(&j), j);
            assert_eq!(j.build(None).unwrap(), sa);
        }
    }

    #[test]
    fn bad_names_are_reported() {
        let s = fixtures::semigroup_by_name("SL3").unwrap();
        let mut j = SemigroupJson::from_semigroup(&s);
        j.table[0][0] = "zz".into();
        assert!(matches!(j.build(ValidateOptions::default()), Err(JsonError::Unknown { kind: "element", .. })));
    }
}
