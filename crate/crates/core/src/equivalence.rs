//! The functors Φ (actions to functors on `L(S)`) and Ψ (torsion-free
//! functors to connected actions), their unit and counit, and the
//! round-trip checks between them.

use std::sync::Arc;

use crate::action::{check_morphism, enumerate_morphisms, is_isomorphism, PartialAction, PartialMap};
use crate::category::LoganCategory;
use crate::functor::{Colimit, FunctorError, NatTrans, SetFunctor};

/// Φ over a freshly built `L(S)`.
pub fn phi(a: &PartialAction) -> SetFunctor {
    phi_over(a, Arc::new(LoganCategory::build(a.semigroup().clone())))
}

/// `Φ(A)(e)` is the domain of `e`, `Φ(A)(f, s)` is `x ↦ s·x`.
pub fn phi_over(a: &PartialAction, logan: Arc<LoganCategory>) -> SetFunctor {
    let doms = domains(a, &logan);
    let sets = doms
        .iter()
        .map(|d| d.iter().map(|&p| a.carrier()[p].clone()).collect())
        .collect();
    let maps = (0..logan.arrow_count())
        .map(|u| {
            let (_, s) = logan.payload(u);
            let target = &doms[logan.target(u)];
            doms[logan.source(u)]
                .iter()
                .map(|&p| {
                    let q = a.act(s, p).expect("s is defined on the domain of d(s)");
                    target.binary_search(&q).expect("s·x lies in the domain of the target")
                })
                .collect()
        })
        .collect();
    SetFunctor::from_parts(logan, sets, maps)
}

/// Carrier points in the domain of each idempotent, ascending.
fn domains(a: &PartialAction, logan: &LoganCategory) -> Vec<Vec<usize>> {
    (0..logan.object_count())
        .map(|o| a.map(logan.idempotent(o)).domain())
        .collect()
}

/// Ψ(F) together with the colimit it was built from; carrier point `i` is
/// colimit class `i`.
#[derive(Debug, Clone)]
pub struct Psi {
    pub action: PartialAction,
    pub colimit: Colimit,
}

/// `s ∘ [d(s), x] = [r(s), F(r(s), s)(x)]` on the classes of the
/// idempotent colimit.
pub fn psi(f: &SetFunctor) -> Result<Psi, FunctorError> {
    if let Err(w) = f.torsion() {
        return Err(f.torsion_error(w));
    }
    let l = &**f.logan();
    let s = l.semigroup().clone();
    let colimit = f.idempotent_colimit();
    let carrier = colimit
        .classes
        .iter()
        .map(|c| {
            let (o, x) = c[0];
            format!("[{},{}]", l.object_name(o), f.set(o)[x])
        })
        .collect();
    let maps = s
        .elements()
        .map(|a| {
            let d = l.object(s.d(a)).expect("idempotent");
            let r = l.object(s.r(a)).expect("idempotent");
            let u = l.arrow(s.r(a), a).expect("(r(s), s) is an arrow");
            PartialMap(
                (0..colimit.classes.len())
                    .map(|c| {
                        let x = colimit.member_over(c, d)?;
                        Some(colimit.class_of[r][f.apply(u, x)])
                    })
                    .collect(),
            )
        })
        .collect();
    let action = PartialAction::new(s, carrier, maps).expect("Ψ(F) is a valid action");
    debug_assert!(action.is_connected());
    Ok(Psi { action, colimit })
}

/// Unit `τ_e: x ↦ [e, x]` as a transformation `F -> ΦΨ(F)`.
pub fn unit_tau(f: &SetFunctor, psi_f: &Psi) -> NatTrans {
    let l = &**f.logan();
    let components = (0..l.object_count())
        .map(|o| {
            let dom = psi_f.action.map(l.idempotent(o)).domain();
            psi_f.colimit.class_of[o]
                .iter()
                .map(|c| dom.binary_search(c).expect("e acts on [e,x]"))
                .collect()
        })
        .collect();
    NatTrans { components }
}

/// Counit `β: ΨΦ(A) -> A`, `[e, x] ↦ x`; `psi_phi` must be `psi(phi(a))`.
pub fn counit_beta(a: &PartialAction, psi_phi: &Psi) -> Vec<usize> {
    let s = a.semigroup();
    psi_phi
        .colimit
        .classes
        .iter()
        .map(|c| {
            let (o, x) = c[0];
            a.map(s.idempotents()[o]).domain()[x]
        })
        .collect()
}

/// `f̃_e` is the restriction of `map` to `Φ(A)(e)`.
pub fn phi_on_morphism(map: &[usize], a: &PartialAction, b: &PartialAction) -> NatTrans {
    let s = a.semigroup();
    let components = s
        .idempotents()
        .iter()
        .map(|&e| {
            let target = b.map(e).domain();
            a.map(e)
                .domain()
                .iter()
                .map(|&p| target.binary_search(&map[p]).expect("morphisms preserve domains"))
                .collect()
        })
        .collect();
    NatTrans { components }
}

/// `[e, x] ↦ [e, α_e(x)]`.
pub fn psi_on_transformation(alpha: &NatTrans, source: &Psi, target: &Psi) -> Vec<usize> {
    source
        .colimit
        .classes
        .iter()
        .map(|c| {
            let (o, x) = c[0];
            target.colimit.class_of[o][alpha.components[o][x]]
        })
        .collect()
}

/// The unique `f: A -> ΨΦ(B)` with `β_B ∘ f = g`, for connected `A`:
/// `f(x) = [e, g(x)]` for any idempotent `e` defined at `x`.
pub fn coreflection_factor(g: &[usize], a: &PartialAction, b: &PartialAction, psi_phi_b: &Psi) -> Vec<usize> {
    let s = a.semigroup();
    (0..a.len())
        .map(|p| {
            let (o, &e) = s
                .idempotents()
                .iter()
                .enumerate()
                .find(|&(_, &e)| a.act(e, p).is_some())
                .expect("effective action");
            let x = b.map(e).domain().binary_search(&g[p]).expect("morphisms preserve domains");
            psi_phi_b.colimit.class_of[o][x]
        })
        .collect()
}

/// Round-trip checks for one action: Φ(A) torsion-free, ΨΦ(A) connected,
/// τ an isomorphism, and β bijective exactly when `A` is connected.
pub fn check_action(a: &PartialAction) -> Result<(), String> {
    let f = phi(a);
    if !f.is_torsion_free() {
        return Err("Φ(A) is not torsion-free".into());
    }
    check_functor(&f)?;
    let pp = psi(&f).map_err(|e| e.to_string())?;
    let beta = counit_beta(a, &pp);
    if let Err(w) = check_morphism(&beta, &pp.action, a) {
        return Err(format!("β is not equivariant at element {} point {}", w.element, w.point));
    }
    let mut hit = vec![false; a.len()];
    beta.iter().for_each(|&y| hit[y] = true);
    if hit.iter().any(|h| !h) {
        return Err("β is not surjective".into());
    }
    let iso = is_isomorphism(&beta, &pp.action, a);
    if iso != a.is_connected() {
        return Err(format!("β isomorphism = {iso} but connected = {}", a.is_connected()));
    }
    Ok(())
}

/// Round-trip checks for one functor: if torsion-free, Ψ(F) is connected
/// with injective element maps and `τ: F -> ΦΨ(F)` is a natural isomorphism.
pub fn check_functor(f: &SetFunctor) -> Result<(), String> {
    let Ok(p) = psi(f) else { return Ok(()) };
    if !p.action.is_connected() {
        return Err("Ψ(F) is not connected".into());
    }
    if p.action.maps().iter().any(|m| !m.is_injective()) {
        return Err("Ψ(F) has a non-injective element".into());
    }
    let back = phi_over(&p.action, f.logan().clone());
    let tau = unit_tau(f, &p);
    if let Err(w) = tau.check(f, &back) {
        return Err(format!("τ not natural at arrow {} point {}", f.logan().label(w.arrow), w.point));
    }
    if !tau.is_componentwise_bijective(&back) {
        return Err("τ is not a bijection".into());
    }
    Ok(())
}

/// Composition with `β_B` is a bijection `Hom(A, ΨΦ(B)) -> Hom(A, B)` and
/// agrees with [`coreflection_factor`].
pub fn check_coreflection(a: &PartialAction, b: &PartialAction) -> Result<(), String> {
    let pp = psi(&phi(b)).map_err(|e| e.to_string())?;
    let beta = counit_beta(b, &pp);
    let into_psi = enumerate_morphisms(a, &pp.action);
    let into_b = enumerate_morphisms(a, b);
    let mut composed: Vec<Vec<usize>> = into_psi
        .iter()
        .map(|f| f.iter().map(|&c| beta[c]).collect())
        .collect();
    composed.sort();
    let before = composed.len();
    composed.dedup();
    if composed.len() != before {
        return Err("composition with β is not injective".into());
    }
    let mut expected = into_b.clone();
    expected.sort();
    if composed != expected {
        return Err(format!(
            "composition with β hits {} of {} morphisms",
            composed.len(),
            expected.len()
        ));
    }
    for g in &into_b {
        let f = coreflection_factor(g, a, b, &pp);
        if !into_psi.contains(&f) {
            return Err("coreflection factor is not a morphism".into());
        }
        if f.iter().map(|&c| beta[c]).collect::<Vec<_>>() != *g {
            return Err("β ∘ f != g".into());
        }
    }
    Ok(())
}
