//! Bundles over finite Alexandrov spaces. A sheaf on a finite poset is a
//! family of stalks with restriction maps `E_x -> E_y` for `x <= y`; opens
//! are up-sets.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::action::{check_morphism, is_isomorphism, ActionOptions, PartialAction, PartialMap};
use crate::category::LoganCategory;
use crate::cosets;
use crate::equivalence::{counit_beta, phi_over, phi_on_morphism, psi, psi_on_transformation, unit_tau};
use crate::functor::{offsets, same_domain, ElementsViolation, NatTrans, SetFunctor};

/// Largest base space.
pub const SPACE_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("base space has {size} points (cap {cap})")]
    TooLarge { size: usize, cap: usize },
    #[error("specialization order is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("expected {expected} stalks, got {found}")]
    WrongStalkCount { expected: usize, found: usize },
    #[error("restriction {from} <= {to}: {problem}")]
    BadRestriction { from: String, to: String, problem: String },
    #[error("stalk functors live over different categories")]
    DomainMismatch,
    #[error("bundle is not principal at point {point}")]
    NotPrincipal { point: String },
    #[error("sheaf action is not universal: {0}")]
    NotUniversal(String),
    #[error("action carrier does not match the stalks")]
    CarrierMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    leq: Vec<bool>,
}

impl FiniteSpace {
    /// `leq` lists the pairs `x <= y` by name; reflexivity is added.
    pub fn new(points: Vec<String>, leq: &[(String, String)]) -> Result<Self, BundleError> {
        let n = points.len();
        if n > SPACE_CAP {
            return Err(BundleError::TooLarge { size: n, cap: SPACE_CAP });
        }
        let index = |p: &str| {
            points
                .iter()
                .position(|q| q == p)
                .ok_or_else(|| BundleError::UnknownPoint(p.to_string()))
        };
        let mut rel = vec![false; n * n];
        for x in 0..n {
            rel[x * n + x] = true;
        }
        for (a, b) in leq {
            rel[index(a)? * n + index(b)?] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && rel[x * n + y] && rel[y * n + x] {
                    return Err(BundleError::NotPartialOrder(format!("{} and {} are equivalent", points[x], points[y])));
                }
                for z in 0..n {
                    if rel[x * n + y] && rel[y * n + z] && !rel[x * n + z] {
                        return Err(BundleError::NotPartialOrder(format!(
                            "{} <= {} <= {} but not {} <= {}",
                            points[x], points[y], points[z], points[x], points[z]
                        )));
                    }
                }
            }
        }
        Ok(Self { points, leq: rel })
    }

    pub fn point() -> Self {
        Self::new(vec!["*".into()], &[]).expect("one point")
    }

    /// Two points `0 <= 1`; `{1}` is the open point.
    pub fn sierpinski() -> Self {
        Self::new(vec!["0".into(), "1".into()], &[("0".into(), "1".into())]).expect("Sierpinski space")
    }

    pub fn discrete(n: usize) -> Result<Self, BundleError> {
        Self::new((0..n).map(|i| i.to_string()).collect(), &[])
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    /// Strict comparable pairs `x < y`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| x != y && self.leq(x, y))
            .collect()
    }

    pub fn leq_pairs(&self) -> Vec<(String, String)> {
        self.strict_pairs()
            .into_iter()
            .map(|(x, y)| (self.points[x].clone(), self.points[y].clone()))
            .collect()
    }
}

/// Stalks with restriction maps; `restrictions[x * n + y]` is set exactly
/// when `x <= y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSheaf {
    space: Arc<FiniteSpace>,
    stalks: Vec<Vec<String>>,
    restrictions: Vec<Option<Vec<usize>>>,
}

impl FiniteSheaf {
    /// Restrictions for strict pairs only; identities are filled in.
    pub fn new(
        space: Arc<FiniteSpace>,
        stalks: Vec<Vec<String>>,
        strict: Vec<((usize, usize), Vec<usize>)>,
    ) -> Result<Self, BundleError> {
        let n = space.len();
        if stalks.len() != n {
            return Err(BundleError::WrongStalkCount { expected: n, found: stalks.len() });
        }
        let mut restrictions = vec![None; n * n];
        for x in 0..n {
            restrictions[x * n + x] = Some((0..stalks[x].len()).collect());
        }
        for ((x, y), m) in strict {
            restrictions[x * n + y] = Some(m);
        }
        let sheaf = Self { space, stalks, restrictions };
        sheaf.validate()?;
        Ok(sheaf)
    }

    fn bad(&self, x: usize, y: usize, problem: &str) -> BundleError {
        BundleError::BadRestriction {
            from: self.space.points[x].clone(),
            to: self.space.points[y].clone(),
            problem: problem.to_string(),
        }
    }

    fn validate(&self) -> Result<(), BundleError> {
        let n = self.space.len();
        for x in 0..n {
            for y in 0..n {
                match (&self.restrictions[x * n + y], self.space.leq(x, y)) {
                    (None, true) => return Err(self.bad(x, y, "missing")),
                    (Some(_), false) => return Err(self.bad(x, y, "points are not comparable")),
                    (Some(m), true) => {
                        if m.len() != self.stalks[x].len() || m.iter().any(|&v| v >= self.stalks[y].len()) {
                            return Err(self.bad(x, y, "not a function between the stalks"));
                        }
                        if x == y && m.iter().enumerate().any(|(i, &v)| i != v) {
                            return Err(self.bad(x, y, "not the identity"));
                        }
                    }
                    (None, false) => {}
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if let (Some(a), Some(b), Some(c)) = (self.restriction(x, y), self.restriction(y, z), self.restriction(x, z)) {
                        if a.iter().zip(c).any(|(&v, &w)| b[v] != w) {
                            return Err(self.bad(x, z, "does not factor through the intermediate point"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn stalk(&self, x: usize) -> &[String] {
        &self.stalks[x]
    }

    pub fn stalks(&self) -> &[Vec<String>] {
        &self.stalks
    }

    pub fn restriction(&self, x: usize, y: usize) -> Option<&[usize]> {
        self.restrictions[x * self.space.len() + y].as_deref()
    }

    /// Index of `(x, v)` in the total space.
    pub fn offsets(&self) -> Vec<usize> {
        offsets(self.stalks.iter().map(Vec::len))
    }

    /// Point over which a total-space index lies.
    pub fn projection(&self) -> Vec<usize> {
        self.stalks
            .iter()
            .enumerate()
            .flat_map(|(x, s)| std::iter::repeat_n(x, s.len()))
            .collect()
    }

    /// Labels `v@x` of the total space.
    pub fn total_labels(&self) -> Vec<String> {
        self.stalks
            .iter()
            .enumerate()
            .flat_map(|(x, s)| s.iter().map(move |v| format!("{v}@{}", self.space.points[x])))
            .collect()
    }
}

/// A functor `L(S) -> Sh(X)`, stored stalkwise: a set-valued functor per
/// point and natural restriction maps between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bundle {
    space: Arc<FiniteSpace>,
    stalks: Vec<SetFunctor>,
    restrictions: Vec<Option<NatTrans>>,
}

impl Bundle {
    pub fn new(
        space: Arc<FiniteSpace>,
        stalks: Vec<SetFunctor>,
        strict: Vec<((usize, usize), NatTrans)>,
    ) -> Result<Self, BundleError> {
        let n = space.len();
        if stalks.len() != n {
            return Err(BundleError::WrongStalkCount { expected: n, found: stalks.len() });
        }
        if stalks.windows(2).any(|w| !same_domain(w[0].logan(), w[1].logan())) {
            return Err(BundleError::DomainMismatch);
        }
        let mut restrictions = vec![None; n * n];
        for (x, f) in stalks.iter().enumerate() {
            restrictions[x * n + x] = Some(NatTrans::identity(f));
        }
        for ((x, y), t) in strict {
            restrictions[x * n + y] = Some(t);
        }
        let b = Self { space, stalks, restrictions };
        b.validate()?;
        Ok(b)
    }

    fn bad(&self, x: usize, y: usize, problem: &str) -> BundleError {
        BundleError::BadRestriction {
            from: self.space.points[x].clone(),
            to: self.space.points[y].clone(),
            problem: problem.to_string(),
        }
    }

    fn validate(&self) -> Result<(), BundleError> {
        let n = self.space.len();
        for x in 0..n {
            for y in 0..n {
                match (&self.restrictions[x * n + y], self.space.leq(x, y)) {
                    (None, true) => return Err(self.bad(x, y, "missing")),
                    (Some(_), false) => return Err(self.bad(x, y, "points are not comparable")),
                    (Some(t), true) => {
                        if t.check(&self.stalks[x], &self.stalks[y]).is_err() {
                            return Err(self.bad(x, y, "not natural"));
                        }
                        if x == y && *t != NatTrans::identity(&self.stalks[x]) {
                            return Err(self.bad(x, y, "not the identity"));
                        }
                    }
                    (None, false) => {}
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if let (Some(a), Some(b), Some(c)) = (self.restriction(x, y), self.restriction(y, z), self.restriction(x, z)) {
                        if b.compose(a) != *c {
                            return Err(self.bad(x, z, "does not factor through the intermediate point"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Every point carries `Φ`-style data of the same functor, restrictions identity.
    pub fn constant(space: Arc<FiniteSpace>, f: &SetFunctor) -> Self {
        let n = space.len();
        let strict = space
            .strict_pairs()
            .into_iter()
            .map(|p| (p, NatTrans::identity(f)))
            .collect();
        Self::new(space, vec![f.clone(); n], strict).expect("constant bundles are valid")
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn logan(&self) -> &Arc<LoganCategory> {
        self.stalks[0].logan()
    }

    pub fn stalk(&self, x: usize) -> &SetFunctor {
        &self.stalks[x]
    }

    pub fn stalks(&self) -> &[SetFunctor] {
        &self.stalks
    }

    pub fn restriction(&self, x: usize, y: usize) -> Option<&NatTrans> {
        self.restrictions[x * self.space.len() + y].as_ref()
    }

    /// The sheaf `E(e)` at object `o`.
    pub fn sheaf_at(&self, o: usize) -> FiniteSheaf {
        let stalks = self.stalks.iter().map(|f| f.set(o).to_vec()).collect();
        let strict = self
            .space
            .strict_pairs()
            .into_iter()
            .map(|(x, y)| ((x, y), self.restriction(x, y).expect("x <= y").components[o].clone()))
            .collect();
        FiniteSheaf::new(self.space.clone(), stalks, strict).expect("components of a bundle form sheaves")
    }

    /// PB1-PB3 at every point, i.e. every stalk functor is filtered.
    pub fn principality(&self) -> Result<(), (usize, ElementsViolation)> {
        for (x, f) in self.stalks.iter().enumerate() {
            f.filteredness().map_err(|v| (x, v))?;
        }
        Ok(())
    }

    pub fn is_principal(&self) -> bool {
        self.principality().is_ok()
    }
}

/// Morphism of bundles: a natural transformation per stalk, commuting with
/// restrictions.
pub fn check_bundle_morphism(m: &[NatTrans], a: &Bundle, b: &Bundle) -> bool {
    let n = a.space.len();
    m.len() == n
        && (0..n).all(|x| m[x].check(&a.stalks[x], &b.stalks[x]).is_ok())
        && a.space.strict_pairs().into_iter().all(|(x, y)| {
            let ra = a.restriction(x, y).expect("x <= y");
            let rb = b.restriction(x, y).expect("x <= y");
            m[y].compose(ra) == rb.compose(&m[x])
        })
}

/// A sheaf with a partial action of `S` on its total space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheafAction {
    sheaf: FiniteSheaf,
    action: PartialAction,
}

impl SheafAction {
    /// `action` must act on the total space in [`FiniteSheaf::total_labels`] order.
    pub fn new(sheaf: FiniteSheaf, action: PartialAction) -> Result<Self, BundleError> {
        if action.carrier() != sheaf.total_labels() {
            return Err(BundleError::CarrierMismatch);
        }
        Ok(Self { sheaf, action })
    }

    /// Build from per-point maps: `maps[s]` on the total space.
    pub fn from_maps(
        sheaf: FiniteSheaf,
        semigroup: Arc<crate::semigroup::InverseSemigroup>,
        maps: Vec<PartialMap>,
    ) -> Result<Self, BundleError> {
        let action = PartialAction::with_options(
            semigroup,
            sheaf.total_labels(),
            maps,
            ActionOptions { allow_non_effective: true },
        )
        .map_err(|e| BundleError::NotUniversal(e.to_string()))?;
        Ok(Self { sheaf, action })
    }

    pub fn sheaf(&self) -> &FiniteSheaf {
        &self.sheaf
    }

    pub fn action(&self) -> &PartialAction {
        &self.action
    }

    /// The action restricted to the stalk over `x`; requires U3.
    pub fn stalk_action(&self, x: usize) -> PartialAction {
        let off = self.sheaf.offsets();
        let (lo, hi) = (off[x], off[x + 1]);
        let maps = self
            .action
            .maps()
            .iter()
            .map(|m| PartialMap((lo..hi).map(|v| m.apply(v).filter(|w| (lo..hi).contains(w)).map(|w| w - lo)).collect()))
            .collect();
        PartialAction::with_options(
            self.action.semigroup().clone(),
            self.sheaf.stalks[x].clone(),
            maps,
            ActionOptions { allow_non_effective: true },
        )
        .expect("restriction of an action to an invariant subset")
    }

    pub fn check_universal(&self) -> UniversalReport {
        let sheaf = &self.sheaf;
        let space = &sheaf.space;
        let s = self.action.semigroup();
        let off = sheaf.offsets();
        let proj = sheaf.projection();
        let labels = self.action.carrier();

        let u1 = (0..space.len())
            .find(|&x| !(off[x]..off[x + 1]).any(|v| s.elements().any(|t| self.action.act(t, v).is_some())))
            .map(|x| format!("no element acts on the stalk over {}", space.points[x]));

        let mut u2 = None;
        let mut u5 = None;
        'outer: for (x, y) in space.strict_pairs() {
            let r = sheaf.restriction(x, y).expect("x <= y");
            for (i, &ri) in r.iter().enumerate() {
                let (v, w) = (off[x] + i, off[y] + ri);
                for t in s.elements() {
                    let Some(tv) = self.action.act(t, v) else { continue };
                    match self.action.act(t, w) {
                        None => {
                            u2.get_or_insert_with(|| format!("{} is defined at {} but not at its restriction {}", s.name(t), labels[v], labels[w]));
                            u5.get_or_insert_with(|| format!("{} does not commute with restriction at {}", s.name(t), labels[v]));
                            break 'outer;
                        }
                        Some(tw) => {
                            let restricted = (proj[tv] == x).then(|| off[y] + r[tv - off[x]]);
                            if restricted != Some(tw) && u5.is_none() {
                                u5 = Some(format!("{} does not commute with restriction at {}", s.name(t), labels[v]));
                            }
                        }
                    }
                }
            }
        }

        let u3 = (0..self.action.len())
            .flat_map(|v| s.elements().map(move |t| (t, v)))
            .find(|&(t, v)| self.action.act(t, v).is_some_and(|w| proj[w] != proj[v]))
            .map(|(t, v)| format!("{} moves {} to another stalk", s.name(t), labels[v]));

        let u4 = if u3.is_some() {
            Some("stalks are not invariant".to_string())
        } else {
            (0..space.len()).find_map(|x| {
                let a = self.stalk_action(x);
                let why = match a.ineffective_points().first() {
                    Some(&p) => Some(format!("{} is outside every domain", a.carrier()[p])),
                    None => match cosets::is_universal(&a) {
                        Ok(true) => None,
                        Ok(false) => Some("stabilizer is not generated by its idempotents".into()),
                        Err(e) => Some(e.to_string()),
                    },
                };
                why.map(|w| format!("stalk over {}: {w}", space.points[x]))
            })
        };

        let checks = [("U1", u1), ("U2", u2), ("U3", u3), ("U4", u4), ("U5", u5)]
            .into_iter()
            .map(|(axiom, witness)| AxiomCheck { axiom: axiom.to_string(), passed: witness.is_none(), witness })
            .collect();
        UniversalReport { checks }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniversalReport {
    pub checks: Vec<AxiomCheck>,
}

impl UniversalReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self, axiom: &str) -> bool {
        self.checks.iter().any(|c| c.axiom == axiom && !c.passed)
    }
}

/// Stalkwise Ψ; restrictions act on colimit classes.
pub fn tau(b: &Bundle) -> Result<SheafAction, BundleError> {
    if let Err((x, _)) = b.principality() {
        return Err(BundleError::NotPrincipal { point: b.space.points[x].clone() });
    }
    let psis: Vec<_> = b.stalks.iter().map(|f| psi(f).expect("filtered functors are torsion-free")).collect();
    let stalks = psis.iter().map(|p| p.action.carrier().to_vec()).collect();
    let strict = b
        .space
        .strict_pairs()
        .into_iter()
        .map(|(x, y)| {
            let r = b.restriction(x, y).expect("x <= y");
            let m = psi_on_transformation(r, &psis[x], &psis[y]);
            ((x, y), m)
        })
        .collect();
    let sheaf = FiniteSheaf::new(b.space.clone(), stalks, strict)?;
    let total = sheaf.offsets();
    let s = b.logan().semigroup().clone();
    let n = *total.last().expect("offsets");
    let maps = s
        .elements()
        .map(|t| {
            let mut m = vec![None; n];
            for (x, p) in psis.iter().enumerate() {
                for v in 0..p.action.len() {
                    m[total[x] + v] = p.action.act(t, v).map(|w| total[x] + w);
                }
            }
            PartialMap(m)
        })
        .collect();
    SheafAction::from_maps(sheaf, s, maps)
}

/// Stalkwise Φ; restrictions of `E(e)` are those of the sheaf.
pub fn rho(sa: &SheafAction) -> Result<Bundle, BundleError> {
    let report = sa.check_universal();
    if let Some(c) = report.checks.iter().find(|c| !c.passed) {
        return Err(BundleError::NotUniversal(format!("{} fails: {}", c.axiom, c.witness.clone().unwrap_or_default())));
    }
    let logan = Arc::new(LoganCategory::build(sa.action.semigroup().clone()));
    let space = sa.sheaf.space.clone();
    let actions: Vec<PartialAction> = (0..space.len()).map(|x| sa.stalk_action(x)).collect();
    let stalks: Vec<SetFunctor> = actions.iter().map(|a| phi_over(a, logan.clone())).collect();
    let strict = space
        .strict_pairs()
        .into_iter()
        .map(|(x, y)| {
            let r = sa.sheaf.restriction(x, y).expect("x <= y");
            ((x, y), phi_on_morphism(r, &actions[x], &actions[y]))
        })
        .collect();
    Bundle::new(space, stalks, strict)
}

/// Morphism of sheaf actions: stalk-preserving, equivariant, commuting with
/// restrictions.
pub fn check_sheaf_action_morphism(m: &[usize], a: &SheafAction, b: &SheafAction) -> bool {
    let (pa, pb) = (a.sheaf.projection(), b.sheaf.projection());
    let (oa, ob) = (a.sheaf.offsets(), b.sheaf.offsets());
    m.len() == pa.len()
        && m.iter().enumerate().all(|(v, &w)| pb[w] == pa[v])
        && check_morphism(m, &a.action, &b.action).is_ok()
        && a.sheaf.space.strict_pairs().into_iter().all(|(x, y)| {
            let ra = a.sheaf.restriction(x, y).expect("x <= y");
            let rb = b.sheaf.restriction(x, y).expect("x <= y");
            (0..ra.len()).all(|i| {
                let via_a = m[oa[y] + ra[i]] - ob[y];
                let via_b = rb[m[oa[x] + i] - ob[x]];
                via_a == via_b
            })
        })
}

/// τ on a bundle morphism: stalkwise `[e, v] ↦ [e, φ(v)]`.
pub fn tau_morphism(m: &[NatTrans], a: &Bundle, b: &Bundle) -> Vec<usize> {
    let mut out = Vec::new();
    let mut shift = 0;
    for x in 0..a.space.len() {
        let (pa, pb) = (psi(&a.stalks[x]).expect("principal"), psi(&b.stalks[x]).expect("principal"));
        out.extend(psi_on_transformation(&m[x], &pa, &pb).into_iter().map(|c| c + shift));
        shift += pb.action.len();
    }
    out
}

/// ρ on a sheaf action morphism: stalkwise restriction to domains.
pub fn rho_morphism(m: &[usize], a: &SheafAction, b: &SheafAction) -> Vec<NatTrans> {
    let (oa, ob) = (a.sheaf.offsets(), b.sheaf.offsets());
    (0..a.sheaf.space.len())
        .map(|x| {
            let local: Vec<usize> = (oa[x]..oa[x + 1]).map(|v| m[v] - ob[x]).collect();
            phi_on_morphism(&local, &a.stalk_action(x), &b.stalk_action(x))
        })
        .collect()
}

/// `ρτ(B) ≅ B` through the stalkwise unit, commuting with restrictions.
pub fn check_bundle_round_trip(b: &Bundle) -> Result<(), String> {
    let sa = tau(b).map_err(|e| e.to_string())?;
    let report = sa.check_universal();
    if !report.passed() {
        return Err(format!("τ(B) fails the universal axioms: {:?}", report.checks));
    }
    let back = rho(&sa).map_err(|e| e.to_string())?;
    if !back.is_principal() {
        return Err("ρτ(B) is not principal".into());
    }
    let units: Vec<NatTrans> = b
        .stalks
        .iter()
        .map(|f| unit_tau(f, &psi(f).expect("principal")))
        .collect();
    for (x, (u, f)) in units.iter().zip(&b.stalks).enumerate() {
        let g = &back.stalks[x];
        if f.sets().len() != g.sets().len() || !u.is_componentwise_bijective(g) {
            return Err(format!("unit is not a bijection at {}", b.space.points[x]));
        }
        if u.check(f, g).is_err() {
            return Err(format!("unit is not natural at {}", b.space.points[x]));
        }
    }
    for (x, y) in b.space.strict_pairs() {
        let lhs = units[y].compose(b.restriction(x, y).expect("x <= y"));
        let rhs = back.restriction(x, y).expect("x <= y").compose(&units[x]);
        if lhs != rhs {
            return Err(format!("unit does not commute with restriction {} <= {}", b.space.points[x], b.space.points[y]));
        }
    }
    Ok(())
}

/// `τρ(A) ≅ A` through the stalkwise counit, commuting with restrictions.
pub fn check_sheaf_action_round_trip(sa: &SheafAction) -> Result<(), String> {
    let b = rho(sa).map_err(|e| e.to_string())?;
    if !b.is_principal() {
        return Err("ρ(A) is not principal".into());
    }
    let back = tau(&b).map_err(|e| e.to_string())?;
    let off = back.sheaf.offsets();
    let off_sa = sa.sheaf.offsets();
    let mut beta = Vec::new();
    for x in 0..sa.sheaf.space.len() {
        let a = sa.stalk_action(x);
        let p = psi(&b.stalks[x]).expect("principal");
        debug_assert_eq!(p.action.len(), off[x + 1] - off[x]);
        beta.extend(counit_beta(&a, &p).into_iter().map(|v| v + off_sa[x]));
    }
    if !is_isomorphism(&beta, &back.action, &sa.action) {
        return Err("counit is not an isomorphism of actions".into());
    }
    if !check_sheaf_action_morphism(&beta, &back, sa) {
        return Err("counit does not commute with restrictions".into());
    }
    Ok(())
}

/// Labelled bundles and sheaf actions used by tests, the suite and the CLI.
pub mod examples {
    use super::*;
    use crate::equivalence::phi;
    use crate::fixtures;

    pub fn constant(space: FiniteSpace, a: &PartialAction) -> Bundle {
        Bundle::constant(Arc::new(space), &phi(a))
    }

    /// Regular Z3 on both Sierpinski points, restriction `x ↦ x·a`.
    pub fn twisted_z3() -> Bundle {
        let a = fixtures::z3_regular();
        let s = a.semigroup().clone();
        let f = phi(&a);
        let gen = s.elem("a").expect("a");
        let shift = NatTrans { components: vec![s.elements().map(|x| s.mul(x, gen)).collect()] };
        Bundle::new(Arc::new(FiniteSpace::sierpinski()), vec![f.clone(), f], vec![((0, 1), shift)]).expect("valid")
    }

    /// Natural B2 action generizing to the one-point action of `H = S`.
    pub fn b2_collapse() -> Bundle {
        let b2 = Arc::new(fixtures::b2());
        let natural = fixtures::b2_natural();
        let point = PartialAction::trivial(b2.clone());
        let logan = Arc::new(LoganCategory::build(b2));
        let (f0, f1) = (phi_over(&natural, logan.clone()), phi_over(&point, logan));
        let collapse = phi_on_morphism(&[0, 0], &natural, &point);
        Bundle::new(Arc::new(FiniteSpace::sierpinski()), vec![f0, f1], vec![((0, 1), collapse)]).expect("valid")
    }

    /// Two unrelated stalks over a discrete space.
    pub fn b2_discrete() -> Bundle {
        let b2 = Arc::new(fixtures::b2());
        let logan = Arc::new(LoganCategory::build(b2.clone()));
        let f0 = phi_over(&fixtures::b2_natural(), logan.clone());
        let f1 = phi_over(&PartialAction::trivial(b2), logan);
        Bundle::new(Arc::new(FiniteSpace::discrete(2).expect("small")), vec![f0, f1], vec![]).expect("valid")
    }

    pub fn z3_discrete() -> Bundle {
        let z3 = Arc::new(fixtures::z3());
        let logan = Arc::new(LoganCategory::build(z3.clone()));
        let f = phi_over(&fixtures::z3_regular(), logan);
        Bundle::new(Arc::new(FiniteSpace::discrete(2).expect("small")), vec![f.clone(), f], vec![]).expect("valid")
    }

    /// Principal bundles by name.
    pub fn bundles() -> Vec<(String, Bundle)> {
        vec![
            ("z3/point".into(), constant(FiniteSpace::point(), &fixtures::z3_regular())),
            ("b2/point".into(), constant(FiniteSpace::point(), &fixtures::b2_natural())),
            ("z3/sierpinski".into(), constant(FiniteSpace::sierpinski(), &fixtures::z3_regular())),
            ("b2/sierpinski".into(), constant(FiniteSpace::sierpinski(), &fixtures::b2_natural())),
            ("z3-twisted/sierpinski".into(), twisted_z3()),
            ("b2-collapse/sierpinski".into(), b2_collapse()),
            ("z3/discrete2".into(), z3_discrete()),
            ("b2/discrete2".into(), b2_discrete()),
        ]
    }

    /// Natural B2 on both Sierpinski points with the restriction swapping
    /// them, so `e1` is defined at `1@0` but not at its restriction `2@1`.
    pub fn swapped_b2() -> SheafAction {
        let a = fixtures::b2_natural();
        let sheaf = FiniteSheaf::new(
            Arc::new(FiniteSpace::sierpinski()),
            vec![a.carrier().to_vec(), a.carrier().to_vec()],
            vec![((0, 1), vec![1, 0])],
        )
        .expect("valid sheaf");
        let maps = a
            .maps()
            .iter()
            .map(|m| PartialMap(m.0.iter().chain(&m.0).enumerate().map(|(i, y)| y.map(|y| if i < 2 { y } else { y + 2 })).collect()))
            .collect();
        SheafAction::from_maps(sheaf, a.semigroup().clone(), maps).expect("valid action")
    }

    /// The non-strict SL3 action over a point; U4 fails.
    pub fn ex33_over_point() -> SheafAction {
        let a = fixtures::ex33_action();
        let sheaf = FiniteSheaf::new(Arc::new(FiniteSpace::point()), vec![a.carrier().to_vec()], vec![]).expect("valid");
        SheafAction::from_maps(sheaf, a.semigroup().clone(), a.maps().to_vec()).expect("valid")
    }
}
