use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use invtopos_core::action::{ActionOptions, PartialAction};
use invtopos_core::bundle::{check_bundle_round_trip, check_sheaf_action_round_trip, examples, rho, tau};
use invtopos_core::category::LoganCategory;
use invtopos_core::cosets::{
    coset_action, enumerate_closed_subsemigroups, enumerate_filters, filter_groupoid_data, schein_decompose,
    torsor_equiv_universal, FilterUniverse,
};
use invtopos_core::equivalence::{check_action, check_functor, phi, psi};
use invtopos_core::exec::Strategy;
use invtopos_core::fixtures;
use invtopos_core::functor::SetFunctor;
use invtopos_core::json::{
    load_action, load_bundle, load_functor, load_presheaf, load_semigroup, load_sheaf_action, read_json, to_pretty,
    ActionJson, BundleJson, FunctorJson, JsonError, SemigroupJson, SemigroupRef, SheafActionJson, SubsemigroupJson,
};
use invtopos_core::random::{instance_rng, random_action};
use invtopos_core::semigroup::{InverseSemigroup, ValidateOptions};
use invtopos_core::suite::{run_suite, Status, SuiteOptions};
use invtopos_core::tensor::{flatness_spotcheck, presheaf_suite, tensor};

use crate::render::{action_properties, elements_violation, holds, names};
use crate::{ActionCommand, BundleCommand, Command, EquivCommand, FixtureArgs, FunctorCommand, Property, Verdict};

/// Write to stdout; a closed pipe is not an error.
fn out(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn emit<T: Serialize>(value: &T) {
    out(&to_pretty(value));
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn semigroup(path: &Path) -> Result<Arc<InverseSemigroup>> {
    Ok(Arc::new(load_semigroup(path, ValidateOptions::default())?))
}

/// Structural rejections of otherwise well-formed input count as failed checks.
fn rejection(e: &JsonError) -> bool {
    matches!(e, JsonError::Semigroup(_) | JsonError::Action(_))
}

pub fn run(command: Command) -> Result<Verdict> {
    match command {
        Command::Validate { file, skip_associativity } => {
            let options = ValidateOptions { skip_associativity, ..Default::default() };
            match load_semigroup(&file, options) {
                Ok(s) => {
                    emit(&json!({ "valid": true, "size": s.size(), "idempotents": s.idempotents().len() }));
                    eprintln!("valid inverse semigroup with {} elements", s.size());
                    Ok(Verdict::Pass)
                }
                Err(e) if rejection(&e) => {
                    emit(&json!({ "valid": false, "error": e.to_string() }));
                    eprintln!("invalid: {e}");
                    Ok(Verdict::Fail)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Analyze { file } => {
            let s = semigroup(&file)?;
            let a = s.analyze();
            emit(&a);
            eprintln!("{} elements, {} idempotents, {} D-classes", a.size, a.idempotents.len(), a.d_classes.len());
            Ok(Verdict::Pass)
        }
        Command::Logan { semigroup: path, dot } => {
            let l = LoganCategory::build(semigroup(&path)?);
            let arrows: Vec<Value> = (0..l.arrow_count())
                .map(|u| {
                    json!({
                        "label": l.label(u),
                        "source": l.object_name(l.source(u)),
                        "target": l.object_name(l.target(u)),
                    })
                })
                .collect();
            let objects: Vec<&str> = (0..l.object_count()).map(|o| l.object_name(o)).collect();
            emit(&json!({
                "object_count": l.object_count(),
                "arrow_count": l.arrow_count(),
                "objects": objects,
                "arrows": arrows,
            }));
            if let Some(path) = dot {
                fs::write(&path, l.to_dot()).with_context(|| format!("cannot write {}", path.display()))?;
            }
            eprintln!("L(S): {} objects, {} arrows", l.object_count(), l.arrow_count());
            Ok(Verdict::Pass)
        }
        Command::Action(ActionCommand::Check { file, properties, allow_non_effective }) => {
            action_check(&file, properties, allow_non_effective)
        }
        Command::Functor(FunctorCommand::Classify { semigroup: s, functor }) => {
            let l = Arc::new(LoganCategory::build(semigroup(&s)?));
            let f = load_functor(&functor, Some(l.clone()))?;
            let c = f.classify();
            emit(&json!({
                "torsion_free": holds(&c.torsion_free, |w| json!({
                    "object": l.object_name(w.object),
                    "x": f.set(w.object)[w.x],
                    "y": f.set(w.object)[w.y],
                })),
                "directed": holds(&c.directed, |v| elements_violation(&f, v)),
                "filtered": holds(&c.filtered, |v| elements_violation(&f, v)),
                "pullback_preserving": c.pullback_preserving,
            }));
            eprintln!(
                "torsion-free {}, directed {}, filtered {}",
                c.torsion_free.is_ok(),
                c.directed.is_ok(),
                c.filtered.is_ok()
            );
            Ok(Verdict::Pass)
        }
        Command::Equiv(cmd) => equiv(cmd),
        Command::Cosets { semigroup: path, subsemigroup } => {
            let s = semigroup(&path)?;
            let h = read_json::<SubsemigroupJson>(&subsemigroup)?.build(&s)?;
            let ca = coset_action(&s, &h);
            let cosets: Vec<Value> = ca
                .cosets
                .iter()
                .map(|c| json!({ "witness": s.name(c.witness), "members": names(&s, c.members.iter().copied()) }))
                .collect();
            emit(&json!({
                "subsemigroup": names(&s, h.members().iter().copied()),
                "cosets": cosets,
                "action": ActionJson::from_action(&ca.action),
            }));
            eprintln!("{} cosets", ca.cosets.len());
            Ok(Verdict::Pass)
        }
        Command::Schein { action } => {
            let a = load_action(&action, ActionOptions::default())?;
            let s = a.semigroup();
            match schein_decompose(&a) {
                Ok(d) => {
                    let iso: BTreeMap<&str, Vec<String>> = (0..a.len())
                        .map(|y| {
                            let c = &d.cosets.cosets[d.iso[y]];
                            (a.carrier()[y].as_str(), names(s, c.members.iter().copied()))
                        })
                        .collect();
                    emit(&json!({
                        "stabilizer": names(s, d.subsemigroup.members().iter().copied()),
                        "base_point": a.carrier()[0],
                        "iso": iso,
                    }));
                    eprintln!("isomorphic to the coset action of a {}-element stabilizer", d.subsemigroup.members().len());
                    Ok(Verdict::Pass)
                }
                Err(e) => {
                    emit(&json!({ "error": e.to_string() }));
                    eprintln!("no decomposition: {e}");
                    Ok(Verdict::Fail)
                }
            }
        }
        Command::Filters { semigroup: path, in_s, in_e } => {
            let s = semigroup(&path)?;
            let list = |which| -> Result<Vec<Vec<String>>> {
                Ok(enumerate_filters(&s, which)?.iter().map(|f| names(&s, f.members.iter().copied())).collect())
            };
            let report = if in_e {
                json!({ "in_e": list(FilterUniverse::Idempotents)? })
            } else if in_s {
                json!({ "in_s": list(FilterUniverse::Elements)? })
            } else {
                let g = filter_groupoid_data(&s)?;
                let domains: Vec<Vec<String>> = g.domains.iter().map(|d| names(&s, d.iter().copied())).collect();
                json!({
                    "in_e": list(FilterUniverse::Idempotents)?,
                    "in_s": list(FilterUniverse::Elements)?,
                    "domains": domains,
                    "domains_are_filters": g.domains_are_filters(),
                })
            };
            for (k, v) in report.as_object().expect("object") {
                if let Some(a) = v.as_array() {
                    eprintln!("{k}: {}", a.len());
                }
            }
            emit(&report);
            Ok(Verdict::Pass)
        }
        Command::TorsorCheck { semigroup: path } => {
            let s = semigroup(&path)?;
            let r = torsor_equiv_universal(&s)?;
            emit(&r);
            eprintln!("{} closed subsemigroups, {} mismatches", r.rows.len(), r.mismatches);
            Ok(verdict(r.mismatches == 0))
        }
        Command::Tensor { presheaf, functor } => {
            let a = load_functor(&functor, None)?;
            let p = load_presheaf(&presheaf, Some(a.logan().clone()))?;
            let t = tensor(&p, &a)?;
            let l = a.logan();
            let classes: Vec<Value> = t
                .classes
                .iter()
                .zip(t.labels(&p, &a))
                .map(|(c, label)| {
                    let members: Vec<Value> = c
                        .iter()
                        .map(|&(o, x, y)| json!([l.object_name(o), p.set(o)[x], a.set(o)[y]]))
                        .collect();
                    json!({ "label": label, "members": members })
                })
                .collect();
            emit(&json!({ "size": t.len(), "classes": classes }));
            eprintln!("P ⊗ A has {} elements", t.len());
            Ok(Verdict::Pass)
        }
        Command::FlatnessSpotcheck { functor } => {
            let a = load_functor(&functor, None)?;
            let r = flatness_spotcheck(&a, &presheaf_suite(a.logan()));
            emit(&r);
            eprintln!(
                "{} products, {} equalizers checked, {} failures",
                r.products_checked,
                r.equalizers_checked,
                r.failures.len()
            );
            Ok(verdict(r.passed()))
        }
        Command::Bundle(cmd) => bundle(cmd),
        Command::Fixture(args) => fixture(args),
        Command::Suite { seed, fixtures_only, random, sequential } => {
            let options = SuiteOptions {
                seed,
                random_instances: random,
                fixtures_only,
                strategy: if sequential { Strategy::Sequential } else { Strategy::default() },
            };
            let mut report = run_suite(&options);
            report.command = std::iter::once("invtopos".to_string()).chain(std::env::args().skip(1)).collect();
            emit(&report);
            for c in &report.criteria {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                };
                eprintln!("criterion {:>2} {tag}  {} ({} checks)", c.id, c.name, c.checked);
            }
            Ok(verdict(report.passed))
        }
    }
}

fn action_check(file: &Path, properties: Option<Vec<Property>>, allow_non_effective: bool) -> Result<Verdict> {
    let a = match load_action(file, ActionOptions { allow_non_effective }) {
        Ok(a) => a,
        Err(e) if rejection(&e) => {
            emit(&json!({ "valid": false, "error": e.to_string() }));
            eprintln!("invalid action: {e}");
            return Ok(Verdict::Fail);
        }
        Err(e) => return Err(e.into()),
    };
    let props = action_properties(&a);
    let key = |p: Property| match p {
        Property::Strict => "strict",
        Property::Connected => "connected",
        Property::Transitive => "transitive",
        Property::Free => "free",
        Property::Torsor => "torsor",
    };
    let failing: Vec<&str> = properties
        .unwrap_or_default()
        .into_iter()
        .map(key)
        .filter(|k| props[k]["holds"] != json!(true))
        .collect();
    emit(&json!({ "valid": true, "points": a.len(), "properties": props, "failing": failing }));
    let summary: Vec<String> = ["strict", "connected", "transitive", "free", "torsor"]
        .iter()
        .map(|k| format!("{k} {}", props[k]["holds"]))
        .collect();
    eprintln!("{} points: {}", a.len(), summary.join(", "));
    Ok(verdict(failing.is_empty()))
}

fn equiv(cmd: EquivCommand) -> Result<Verdict> {
    match cmd {
        EquivCommand::Roundtrip { semigroup: path, random, seed } => {
            let s = semigroup(&path)?;
            let l = Arc::new(LoganCategory::build(s.clone()));
            let mut actions: Vec<(String, PartialAction)> = enumerate_closed_subsemigroups(&s)?
                .into_iter()
                .map(|h| (format!("cosets{:?}", s.subset_names(h.members())), coset_action(&s, &h).action))
                .collect();
            for i in 0..random {
                actions.push((format!("random#{i}"), random_action(&mut instance_rng(seed, i as u64), &s)));
            }
            let mut functors: Vec<(String, SetFunctor)> = vec![("terminal".into(), SetFunctor::terminal(l.clone()))];
            for e in 0..l.object_count() {
                functors.push((format!("L({})", l.object_name(e)), SetFunctor::corepresentable(l.clone(), e)));
            }
            let mut failures = Vec::new();
            for (name, a) in &actions {
                if let Err(e) = check_action(a) {
                    failures.push(json!({ "instance": name, "error": e }));
                }
            }
            for (name, f) in &functors {
                if let Err(e) = check_functor(f) {
                    failures.push(json!({ "instance": name, "error": e }));
                }
            }
            let checked = actions.len() + functors.len();
            emit(&json!({
                "seed": seed,
                "actions": actions.len(),
                "functors": functors.len(),
                "failures": failures,
                "passed": failures.is_empty(),
            }));
            eprintln!("{checked} round trips, {} failures", failures.len());
            Ok(verdict(failures.is_empty()))
        }
        EquivCommand::Psi { functor } => {
            let f = load_functor(&functor, None)?;
            match psi(&f) {
                Ok(p) => {
                    emit(&ActionJson::from_action(&p.action));
                    eprintln!("Ψ(F) has {} points", p.action.len());
                    Ok(Verdict::Pass)
                }
                Err(e) => {
                    emit(&json!({ "error": e.to_string() }));
                    eprintln!("Ψ undefined: {e}");
                    Ok(Verdict::Fail)
                }
            }
        }
        EquivCommand::Phi { action } => {
            let a = load_action(&action, ActionOptions::default())?;
            let f = phi(&a);
            emit(&FunctorJson::from_functor(&f));
            eprintln!("Φ(A) has {} elements in total", f.total_size());
            Ok(Verdict::Pass)
        }
    }
}

fn bundle(cmd: BundleCommand) -> Result<Verdict> {
    match cmd {
        BundleCommand::Check { bundle } => {
            let b = load_bundle(&bundle)?;
            let r = b.principality();
            emit(&json!({
                "points": b.space().len(),
                "principal": holds(&r, |(x, v)| json!({
                    "point": b.space().points()[*x],
                    "violation": elements_violation(b.stalk(*x), v),
                })),
            }));
            eprintln!("principal: {}", r.is_ok());
            Ok(verdict(r.is_ok()))
        }
        BundleCommand::Tau { bundle } => {
            let b = load_bundle(&bundle)?;
            match tau(&b) {
                Ok(sa) => {
                    emit(&SheafActionJson::from_sheaf_action(&sa));
                    eprintln!("sheaf action on {} points", sa.action().len());
                    Ok(Verdict::Pass)
                }
                Err(e) => {
                    emit(&json!({ "error": e.to_string() }));
                    eprintln!("{e}");
                    Ok(Verdict::Fail)
                }
            }
        }
        BundleCommand::Rho { sheaf_action } => {
            let sa = load_sheaf_action(&sheaf_action)?;
            let report = sa.check_universal();
            if !report.passed() {
                emit(&json!({ "universal": false, "checks": report.checks }));
                let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.axiom.as_str()).collect();
                eprintln!("not universal: {} fail", failed.join(", "));
                return Ok(Verdict::Fail);
            }
            let b = rho(&sa)?;
            emit(&BundleJson::from_bundle(&b));
            eprintln!("principal bundle over {} points", b.space().len());
            Ok(Verdict::Pass)
        }
        BundleCommand::Roundtrip { dir } => {
            let mut entries: Vec<_> = fs::read_dir(&dir)
                .with_context(|| format!("cannot read {}", dir.display()))?
                .map(|e| e.map(|e| e.path()))
                .collect::<std::io::Result<_>>()?;
            entries.retain(|p| p.extension().is_some_and(|x| x == "json"));
            entries.sort();
            let mut results = Vec::new();
            let mut skipped = Vec::new();
            for path in &entries {
                let name = path.file_name().expect("file").to_string_lossy().to_string();
                let value: Value = read_json(path)?;
                let is_diagram = value.get("stalks").is_some() && value.get("restrictions").is_some();
                let outcome = if !is_diagram {
                    skipped.push(name);
                    continue;
                } else if value.get("maps").is_some() {
                    check_sheaf_action_round_trip(&load_sheaf_action(path)?)
                } else {
                    check_bundle_round_trip(&load_bundle(path)?)
                };
                results.push(match outcome {
                    Ok(()) => json!({ "file": name, "passed": true }),
                    Err(e) => json!({ "file": name, "passed": false, "error": e }),
                });
            }
            if results.is_empty() {
                bail!("no bundle or sheaf action files in {}", dir.display());
            }
            let failed = results.iter().filter(|r| r["passed"] == json!(false)).count();
            emit(&json!({ "results": results, "skipped": skipped, "passed": failed == 0 }));
            eprintln!("{} files, {failed} failed", results.len());
            Ok(verdict(failed == 0))
        }
    }
}

/// The three-element chain acting on itself by meet, which is not injective.
fn ch3_meet_action() -> ActionJson {
    let s = fixtures::ch3();
    let maps = s
        .elements()
        .map(|x| {
            let m = s.elements().map(|y| (s.name(y).to_string(), s.name(s.mul(x, y)).to_string())).collect();
            (s.name(x).to_string(), m)
        })
        .collect();
    ActionJson { semigroup: SemigroupRef::inline(&s), carrier: s.names().to_vec(), maps }
}

fn fixture_names() -> Vec<String> {
    let mut out: Vec<String> = fixtures::SEMIGROUP_NAMES.iter().map(|n| n.to_string()).collect();
    out.extend(fixtures::ACTION_NAMES.iter().map(|n| n.to_string()));
    out.push("ch3-meet-action".into());
    out.extend(examples::bundles().into_iter().map(|(n, _)| format!("bundle-{}", n.replace('/', "-"))));
    out.push("sheaf-swapped-b2".into());
    out.push("sheaf-ex33-over-point".into());
    out
}

fn fixture_json(name: &str) -> Result<String> {
    if let Some(s) = fixtures::semigroup_by_name(name) {
        return Ok(to_pretty(&SemigroupJson::from_semigroup(&s)));
    }
    if let Some(a) = fixtures::action_by_name(name) {
        return Ok(to_pretty(&ActionJson::from_action(&a)));
    }
    match name {
        "ch3-meet-action" => return Ok(to_pretty(&ch3_meet_action())),
        "sheaf-swapped-b2" => return Ok(to_pretty(&SheafActionJson::from_sheaf_action(&examples::swapped_b2()))),
        "sheaf-ex33-over-point" => {
            return Ok(to_pretty(&SheafActionJson::from_sheaf_action(&examples::ex33_over_point())))
        }
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("bundle-") {
        if let Some((_, b)) = examples::bundles().into_iter().find(|(n, _)| n.replace('/', "-") == rest) {
            return Ok(to_pretty(&BundleJson::from_bundle(&b)));
        }
    }
    Err(JsonError::Unknown { kind: "fixture", name: name.to_string() }.into())
}

fn fixture(args: FixtureArgs) -> Result<Verdict> {
    if args.list {
        emit(&fixture_names());
        return Ok(Verdict::Pass);
    }
    let names = if args.all { fixture_names() } else { args.names };
    if names.is_empty() {
        bail!("no fixture named; use --list to see them");
    }
    match args.out_dir {
        Some(dir) => {
            fs::create_dir_all(&dir).with_context(|| format!("cannot create {}", dir.display()))?;
            let mut written = Vec::new();
            for name in &names {
                let path = dir.join(format!("{name}.json"));
                fs::write(&path, fixture_json(name)? + "\n")
                    .with_context(|| format!("cannot write {}", path.display()))?;
                written.push(path.display().to_string());
            }
            emit(&json!({ "written": written }));
            eprintln!("wrote {} fixtures to {}", written.len(), dir.display());
        }
        None if names.len() == 1 => out(&fixture_json(&names[0])?),
        None => {
            let all: BTreeMap<&str, Value> = names
                .iter()
                .map(|n| Ok((n.as_str(), serde_json::from_str(&fixture_json(n)?)?)))
                .collect::<Result<_>>()?;
            emit(&all);
        }
    }
    Ok(Verdict::Pass)
}
