//! Canonical small semigroups and actions referenced throughout the tests,
//! the acceptance suite and the `fixture` CLI command.

use std::sync::Arc;

use crate::action::{symmetric_inverse_semigroup, PartialAction};
use crate::cosets;
use crate::semigroup::InverseSemigroup;

pub const SEMIGROUP_NAMES: &[&str] = &["Z3", "SL3", "CH2", "CH3", "B2", "I2", "SL3+1"];

pub const ACTION_NAMES: &[&str] = &[
    "ex33-action",
    "ex33-point",
    "z3-regular-action",
    "z3-point-action",
    "2z3-action",
    "b2-natural-action",
    "i2-natural-action",
    "sl3-strict-pair",
    "sl3+1-nonstrict-action",
];

/// Cyclic group of order 3: `1`, `a`, `b = a²`.
pub fn z3() -> InverseSemigroup {
    InverseSemigroup::from_named(
        &["1", "a", "b"],
        &[&["1", "a", "b"], &["a", "b", "1"], &["b", "1", "a"]],
        Some(&[("1", "1"), ("a", "b"), ("b", "a")]),
    )
    .expect("Z3")
}

/// Three-element semilattice with `ef = fe = g`.
pub fn sl3() -> InverseSemigroup {
    InverseSemigroup::from_named(
        &["e", "f", "g"],
        &[&["e", "g", "g"], &["g", "f", "g"], &["g", "g", "g"]],
        Some(&[("e", "e"), ("f", "f"), ("g", "g")]),
    )
    .expect("SL3")
}

/// Two-element chain `g < e`.
pub fn ch2() -> InverseSemigroup {
    InverseSemigroup::from_named(
        &["e", "g"],
        &[&["e", "g"], &["g", "g"]],
        Some(&[("e", "e"), ("g", "g")]),
    )
    .expect("CH2")
}

/// Three-element chain `0 < 1 < 2` with meet as product.
pub fn ch3() -> InverseSemigroup {
    InverseSemigroup::from_named(
        &["0", "1", "2"],
        &[&["0", "0", "0"], &["0", "1", "1"], &["0", "1", "2"]],
        Some(&[("0", "0"), ("1", "1"), ("2", "2")]),
    )
    .expect("CH3")
}

/// Five-element Brandt semigroup: `a: 2 -> 1`, `a' = a⁻¹`, `e1`, `e2`, `0`.
pub fn b2() -> InverseSemigroup {
    InverseSemigroup::from_named(
        &["a", "a'", "e1", "e2", "0"],
        &[
            &["0", "e1", "0", "a", "0"],
            &["e2", "0", "a'", "0", "0"],
            &["a", "0", "e1", "0", "0"],
            &["0", "a'", "0", "e2", "0"],
            &["0", "0", "0", "0", "0"],
        ],
        Some(&[("a", "a'"), ("a'", "a"), ("e1", "e1"), ("e2", "e2"), ("0", "0")]),
    )
    .expect("B2")
}

/// Symmetric inverse semigroup on two points (7 elements).
pub fn i2() -> InverseSemigroup {
    symmetric_inverse_semigroup(2).0
}

/// SL3 with an adjoined identity `1`.
pub fn sl3_monoid() -> InverseSemigroup {
    InverseSemigroup::from_named(
        &["1", "e", "f", "g"],
        &[
            &["1", "e", "f", "g"],
            &["e", "e", "g", "g"],
            &["f", "g", "f", "g"],
            &["g", "g", "g", "g"],
        ],
        Some(&[("1", "1"), ("e", "e"), ("f", "f"), ("g", "g")]),
    )
    .expect("SL3+1")
}

pub fn semigroup_by_name(name: &str) -> Option<InverseSemigroup> {
    Some(match name {
        "Z3" => z3(),
        "SL3" => sl3(),
        "CH2" => ch2(),
        "CH3" => ch3(),
        "B2" => b2(),
        "I2" => i2(),
        "SL3+1" => sl3_monoid(),
        _ => return None,
    })
}

pub fn semigroups() -> Vec<(&'static str, InverseSemigroup)> {
    SEMIGROUP_NAMES.iter().map(|&n| (n, semigroup_by_name(n).expect("known"))).collect()
}

/// `e`, `f` act as the identity of `{1,2}`, `g` as the identity of `{1}`.
pub fn ex33_action() -> PartialAction {
    PartialAction::from_named(
        Arc::new(sl3()),
        &["1", "2"],
        &[("e", "1", "1"), ("e", "2", "2"), ("f", "1", "1"), ("f", "2", "2"), ("g", "1", "1")],
    )
    .expect("non-strict SL3 action")
}

/// The one-point sub-action `{1}` of [`ex33_action`].
pub fn ex33_point() -> PartialAction {
    PartialAction::from_named(
        Arc::new(sl3()),
        &["1"],
        &[("e", "1", "1"), ("f", "1", "1"), ("g", "1", "1")],
    )
    .expect("one-point SL3 action")
}

pub fn z3_regular() -> PartialAction {
    PartialAction::regular(Arc::new(z3()))
}

/// Z3 acting trivially on one point: transitive but not free.
pub fn z3_point() -> PartialAction {
    PartialAction::trivial(Arc::new(z3()))
}

pub fn two_z3() -> PartialAction {
    let r = z3_regular();
    r.disjoint_union(&r).expect("same semigroup")
}

pub fn b2_natural() -> PartialAction {
    PartialAction::from_named(
        Arc::new(b2()),
        &["1", "2"],
        &[("a", "2", "1"), ("a'", "1", "2"), ("e1", "1", "1"), ("e2", "2", "2")],
    )
    .expect("natural B2 action")
}

pub fn i2_natural() -> PartialAction {
    symmetric_inverse_semigroup(2).1
}

/// SL3 on `{1,2}` with `e = id{1,2}` and `f = g = id{1}` (strict).
pub fn sl3_strict_pair() -> PartialAction {
    PartialAction::from_named(
        Arc::new(sl3()),
        &["1", "2"],
        &[("e", "1", "1"), ("e", "2", "2"), ("f", "1", "1"), ("g", "1", "1")],
    )
    .expect("strict SL3 action")
}

/// A non-strict action of SL3+1: `1, e, f` fix `{1,2}`, `g` fixes `{1}`.
pub fn sl3_monoid_action() -> PartialAction {
    PartialAction::from_named(
        Arc::new(sl3_monoid()),
        &["1", "2"],
        &[
            ("1", "1", "1"),
            ("1", "2", "2"),
            ("e", "1", "1"),
            ("e", "2", "2"),
            ("f", "1", "1"),
            ("f", "2", "2"),
            ("g", "1", "1"),
        ],
    )
    .expect("non-strict monoid action")
}

pub fn action_by_name(name: &str) -> Option<PartialAction> {
    Some(match name {
        "ex33-action" => ex33_action(),
        "ex33-point" => ex33_point(),
        "z3-regular-action" => z3_regular(),
        "z3-point-action" => z3_point(),
        "2z3-action" => two_z3(),
        "b2-natural-action" => b2_natural(),
        "i2-natural-action" => i2_natural(),
        "sl3-strict-pair" => sl3_strict_pair(),
        "sl3+1-nonstrict-action" => sl3_monoid_action(),
        _ => return None,
    })
}

/// The hand-written fixture actions.
pub fn actions() -> Vec<(String, PartialAction)> {
    ACTION_NAMES
        .iter()
        .map(|&n| (n.to_string(), action_by_name(n).expect("known")))
        .collect()
}

/// Hand-written actions plus the coset action of every closed inverse
/// subsemigroup of every fixture semigroup.
pub fn action_suite() -> Vec<(String, PartialAction)> {
    let mut out = actions();
    for (name, s) in semigroups() {
        let s = Arc::new(s);
        for h in cosets::enumerate_closed_subsemigroups(&s).expect("fixtures are small") {
            let label = format!("{name}/cosets{:?}", s.subset_names(h.members()));
            out.push((label, cosets::coset_action(&s, &h).action));
        }
    }
    out
}
