//! Witnesses with indices replaced by names.

use serde_json::{json, Value};

use invtopos_core::action::PartialAction;
use invtopos_core::category::LoganCategory;
use invtopos_core::functor::{ElementsViolation, SetFunctor};
use invtopos_core::semigroup::InverseSemigroup;

pub fn holds<W>(r: &Result<(), W>, witness: impl FnOnce(&W) -> Value) -> Value {
    match r {
        Ok(()) => json!({ "holds": true }),
        Err(w) => json!({ "holds": false, "witness": witness(w) }),
    }
}

pub fn names(s: &InverseSemigroup, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    xs.into_iter().map(|x| s.name(x).to_string()).collect()
}

fn element(f: &SetFunctor, (o, x): (usize, usize)) -> Value {
    let l = f.logan();
    json!({ "object": l.object_name(o), "element": f.set(o)[x] })
}

pub fn elements_violation(f: &SetFunctor, v: &ElementsViolation) -> Value {
    let l: &LoganCategory = f.logan();
    match *v {
        ElementsViolation::Empty => json!({ "kind": "empty" }),
        ElementsViolation::NoSpan { i, j } => {
            json!({ "kind": "no_span", "i": element(f, i), "j": element(f, j) })
        }
        ElementsViolation::NoEqualizer { source, u, v } => json!({
            "kind": "no_equalizer",
            "source": element(f, source),
            "u": l.label(u),
            "v": l.label(v),
        }),
    }
}

pub fn action_properties(a: &PartialAction) -> Value {
    let s = a.semigroup();
    let pt = |x: usize| a.carrier()[x].clone();
    let torsor = a.is_torsor().unwrap_or(false);
    json!({
        "strict": holds(&a.strictness(), |w| json!({ "e": s.name(w.e), "f": s.name(w.f) })),
        "connected": holds(&a.connectedness(), |w| json!({
            "point": pt(w.point),
            "component_a": names(s, w.component_a.iter().copied()),
            "component_b": names(s, w.component_b.iter().copied()),
        })),
        "transitive": holds(&a.transitivity(), |w| json!({ "from": pt(w.from), "to": pt(w.to) })),
        "free": holds(&a.freeness(), |w| json!({ "s": s.name(w.s), "t": s.name(w.t), "point": pt(w.point) })),
        "torsor": { "holds": torsor },
    })
}
