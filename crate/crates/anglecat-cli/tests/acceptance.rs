//! Acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use anglecat::angle::{Theta, Verdict};
use anglecat::assemble::{layout, LayoutKind, Mutation};
use anglecat::builtin::{builtin, builtin_text, Workbench};
use anglecat::document::parse_document;
use anglecat::oracle::{mesh::ClusterOracle, modules};
use anglecat::sequence::NSequence;
use anglecat::suite::{run_full_suite, Outcome, SuiteConfig, SuiteReport};
use anglecat::{validate_presentation, Matrix, Obj, Q};

const BUILTINS: [&str; 2] = ["a3-cluster-2ct", "stable-kx2"];

struct Check {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Check {
    Check { ok, detail: detail.into() }
}

fn cli(args: &[&str]) -> (i32, String, Duration) {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_anglecat")).args(args).output().expect("run anglecat");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned(), t.elapsed())
}

fn criterion_1() -> Check {
    let mut notes = Vec::new();
    let mut ok = true;
    for name in BUILTINS {
        let t = Instant::now();
        let doc = parse_document(builtin_text(name).unwrap()).unwrap();
        let report = validate_presentation(&doc.presentation().unwrap());
        let dt = t.elapsed();
        ok &= report.passed();
        if name == "a3-cluster-2ct" {
            ok &= dt < Duration::from_secs(5);
        }
        let path = format!("{}/../anglecat/data/{name}.json", env!("CARGO_MANIFEST_DIR"));
        let (code, _, _) = cli(&["validate", &path]);
        ok &= code == 0;
        notes.push(format!("{name}: {} violations in {dt:?}, cli exit {code}", report.violations.len()));
    }
    check(ok, notes.join("; "))
}

fn criterion_2(a3: &Workbench) -> Check {
    let phi = a3.phi.as_ref().unwrap();
    let ctx = a3.ctx.as_ref().unwrap();
    let p = &a3.pres;
    let ind = |i| Obj::indec(3, i);
    let m = |a: usize, b: usize| p.from_coords(&ind(a), &ind(b), vec![Q::one()]);
    let gen = NSequence::from_maps(phi.as_ref(), vec![m(1, 2), m(2, 0), m(0, 1), m(1, 2)]);
    let member = phi.contains(&gen) == Verdict::Member;
    let w = ctx.indec_witness_of(1);
    let middle_in_x = w.objs[1..=2].iter().all(|o| ctx.x.contains(o));
    let via_angle = w.objs == vec![ind(1), ind(2), ind(0), ind(1)];
    let g = ctx.sigma_indec(1) == &ind(1);
    check(
        member && middle_in_x && via_angle && g,
        format!("4-angle member={member}; witness {:?} middle in X={middle_in_x}; G(P1)=P1: {g}", w.objs),
    )
}

fn suite_cli(name: &str) -> (i32, SuiteReport, Duration) {
    let src = format!("builtin:{name}");
    let (code, out, dt) = cli(&["report", &src, "--format", "json"]);
    (code, serde_json::from_str(&out).expect("json report"), dt)
}

fn criterion_3(reports: &[(i32, SuiteReport, Duration)]) -> Check {
    let want = ["rn1-a:sum", "rn1-a:iso", "rn1-a:summand", "rn1-b", "rn1-c", "rn2", "rn3:derive", "rn3:solve", "rn4*"];
    let mut ok = true;
    let mut notes = Vec::new();
    for (code, r, dt) in reports {
        let axioms: BTreeSet<String> = r.records.iter().map(|x| x.axiom.clone()).collect();
        let covered = want.iter().all(|a| axioms.contains(*a));
        let v = r.count(Outcome::Violation);
        ok &= *code == 0 && v == 0 && covered && r.config.universe_bound == 2 && *dt < Duration::from_secs(60);
        notes.push(format!("{}: {} records, {v} violations, {dt:.1?}", r.instance, r.records.len()));
    }
    check(ok, notes.join("; "))
}

fn criterion_4(reports: &[(i32, SuiteReport, Duration)]) -> Check {
    let mut ok = true;
    let mut notes = Vec::new();
    for (_, r, _) in reports {
        let pass = |ax: &str| r.records.iter().filter(|x| x.axiom == ax && x.verdict == Outcome::Pass).count();
        let total = |ax: &str| r.records.iter().filter(|x| x.axiom == ax).count();
        let (d, s) = (pass("rn3:derive"), pass("rn3:solve"));
        ok &= d >= 50 && s >= 50 && d == total("rn3:derive") && s == total("rn3:solve");
        notes.push(format!("{}: derive {d}, solve {s}", r.instance));
    }
    check(ok, notes.join("; "))
}

fn criterion_5(reports: &[(i32, SuiteReport, Duration)]) -> Check {
    let conv = [
        "rn4-1:rn4*->rn4-1",
        "rn4*:rn4-1->rn4*",
        "rn4*:round trip",
        "rn4-2:rn4-1->rn4-2",
        "rn4-1:rn4-2->rn4-1",
        "rn4-1:round trip",
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (_, r, _) in reports {
        let nf = r.count(Outcome::NotFound);
        let mut n = 0;
        for ax in conv {
            let rs: Vec<_> = r.records.iter().filter(|x| x.axiom == ax).collect();
            ok &= !rs.is_empty() && rs.iter().all(|x| x.verdict == Outcome::Pass);
            n += rs.len();
        }
        ok &= nf == 0;
        notes.push(format!("{}: {n} conversions, {nf} NOT_FOUND", r.instance));
    }
    check(ok, notes.join("; "))
}

fn golden(kind: LayoutKind, n: usize) -> Vec<&'static str> {
    use LayoutKind::*;
    match (kind, n) {
        (Rotation, 1) => vec!["[[a1]]", "[[a2]]", "[[-Σa0]]"],
        (Rotation, 2) => vec!["[[a1]]", "[[a2]]", "[[a3]]", "[[Σa0]]"],
        (Rotation, 3) => vec!["[[a1]]", "[[a2]]", "[[a3]]", "[[a4]]", "[[-Σa0]]"],
        (Cone, 1) => vec!["[[-a1, 0], [f1, b0]]", "[[-a2, 0], [f2, b1]]", "[[-Σa0, 0], [Σf0, b2]]"],
        (Cone, 2) => vec![
            "[[-a1, 0], [f1, b0]]",
            "[[-a2, 0], [f2, b1]]",
            "[[-a3, 0], [f3, b2]]",
            "[[-Σa0, 0], [Σf0, b3]]",
        ],
        (Cone, 3) => vec![
            "[[-a1, 0], [f1, b0]]",
            "[[-a2, 0], [f2, b1]]",
            "[[-a3, 0], [f3, b2]]",
            "[[-a4, 0], [f4, b3]]",
            "[[-Σa0, 0], [Σf0, b4]]",
        ],
        (ConeFixed, 1) => vec!["[[-a1], [f1]]", "[[f2, b1]]", "[[Σa0∘b2]]"],
        (ConeFixed, 2) => vec!["[[-a1], [f1]]", "[[-a2, 0], [f2, b1]]", "[[f3, b2]]", "[[Σa0∘b3]]"],
        (ConeFixed, 3) => vec!["[[-a1], [f1]]", "[[-a2, 0], [f2, b1]]", "[[-a3, 0], [f3, b2]]", "[[f4, b3]]", "[[Σa0∘b4]]"],
        (Long, 1) => vec!["[[f2]]", "[[g2]]", "[[Σa1∘c2]]"],
        (Long, 2) => vec!["[[a2], [f2]]", "[[f3, -b2], [h3, g2]]", "[[g3, c2]]", "[[Σa1∘c3]]"],
        (Long, 3) => vec![
            "[[a2], [f2]]",
            "[[-a3, 0], [f3, -b2], [h3, g2]]",
            "[[-f4, -b3, 0], [h4, g3, c2]]",
            "[[g4, c3]]",
            "[[Σa1∘c4]]",
        ],
        (Long, 5) => vec![
            "[[a2], [f2]]",
            "[[-a3, 0], [f3, -b2], [h3, g2]]",
            "[[-a4, 0, 0], [-f4, -b3, 0], [h4, g3, c2]]",
            "[[-a5, 0, 0], [f5, -b4, 0], [h5, g4, c3]]",
            "[[-f6, -b5, 0], [h6, g5, c4]]",
            "[[g6, c5]]",
            "[[Σa1∘c6]]",
        ],
        _ => unreachable!(),
    }
}

fn criterion_6() -> Check {
    use LayoutKind::*;
    let mut bad = Vec::new();
    let mut cases: Vec<(LayoutKind, usize)> = Vec::new();
    for n in 1..=3 {
        cases.extend([(Rotation, n), (Cone, n), (ConeFixed, n), (Long, n)]);
    }
    // n = 5 is the first case with more than one alpha.
    cases.push((Long, 5));
    for &(kind, n) in &cases {
        if layout(kind, n).render() != golden(kind, n) {
            bad.push(format!("{}/{n}", kind.name()));
        }
    }
    check(bad.is_empty(), format!("{} layouts compared, mismatches: {bad:?}", cases.len()))
}

fn detected(wbs: &[Workbench], m: Mutation) -> bool {
    let cfg = SuiteConfig { universe_bound: 1, budget: 24, derive_instances: 6, seed: 0, mutation: Some(m) };
    wbs.iter().any(|wb| {
        let phi = if wb.ctx.is_some() { wb.phi.as_deref() } else { None };
        !run_full_suite(&wb.name, wb.theta.as_ref(), phi, &cfg).passed()
    })
}

/// Every entry of the cone assemblers and of the alpha and beta maps.
fn required_mutations() -> Vec<Mutation> {
    let mut out = BTreeSet::new();
    for n in [1, 2] {
        for kind in [LayoutKind::Cone, LayoutKind::ConeFixed] {
            out.extend(layout(kind, n).mutations().into_iter().map(|m| (m.kind, m.map, m.entry)));
        }
        if n >= 2 {
            let long = layout(LayoutKind::Long, n);
            for m in long.mutations() {
                if (m.map >= 2 && m.map + 2 <= n) || m.map == n - 1 {
                    out.insert((m.kind, m.map, m.entry));
                }
            }
        }
    }
    out.into_iter().map(|(kind, map, entry)| Mutation { kind, map, entry }).collect()
}

fn criterion_7(wbs: &[Workbench]) -> Check {
    let req = required_mutations();
    let missed: Vec<String> = req
        .iter()
        .filter(|&&m| !detected(wbs, m))
        .map(|m| format!("{}/{}/{}", m.kind.name(), m.map, m.entry))
        .collect();
    let mut other = (0, 0);
    for kind in [LayoutKind::Rotation, LayoutKind::Pushout] {
        for m in layout(kind, 2).mutations() {
            other.0 += detected(wbs, m) as usize;
            other.1 += 1;
        }
    }
    check(
        missed.is_empty(),
        format!(
            "{}/{} cone, alpha and beta flips detected, missed {missed:?}; rotation and pushout flips detected {}/{}",
            req.len() - missed.len(),
            req.len(),
            other.0,
            other.1
        ),
    )
}

/// Span of composites through `members`, by brute force on module maps.
fn kx2_ideal(i: usize, j: usize, members: &[usize]) -> (usize, usize) {
    let mods = modules::kx2_modules();
    let hom = modules::hom_basis(&mods[i], &mods[j]);
    let mut cols: Vec<Vec<Q>> = Vec::new();
    for &x in members {
        for f in modules::hom_basis(&mods[i], &mods[x]) {
            for g in modules::hom_basis(&mods[x], &mods[j]) {
                let h = g.mul(&f);
                cols.push((0..h.rows()).flat_map(|r| h.row(r).to_vec()).collect());
            }
        }
    }
    let len = mods[i].dim() * mods[j].dim();
    let rank = if cols.is_empty() { 0 } else { Matrix::from_cols(&cols, len).rank() };
    (hom.len(), rank)
}

fn criterion_8(a3: &Workbench, kx2: &Workbench) -> Check {
    let oracle = ClusterOracle::a3().ideal_dims(&[0, 2]);
    let ctx = a3.ctx.as_ref().unwrap();
    let k2 = kx2.ctx.as_ref().unwrap();
    let mut bad = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let (h, id) = oracle[i][j];
            let ours = (a3.pres.hom[i][j], ctx.ideal_dim(i, j), ctx.quotient_hom_dim(i, j));
            if ours != (h, id, h - id) {
                bad.push(format!("a3 ({i},{j}): {ours:?} vs oracle ({h}, {id})"));
            }
        }
    }
    for i in 0..2 {
        for j in 0..2 {
            let (h, id) = kx2_ideal(i, j, &[1]);
            let ours = (kx2.pres.hom[i][j], k2.ideal_dim(i, j), k2.quotient_hom_dim(i, j));
            if ours != (h, id, h - id) {
                bad.push(format!("kx2 ({i},{j}): {ours:?} vs oracle ({h}, {id})"));
            }
        }
    }
    check(bad.is_empty(), format!("13 pairs compared, mismatches: {bad:?}"))
}

fn main() {
    let a3 = builtin("a3-cluster-2ct", 0).expect("a3 builtin");
    let kx2 = builtin("stable-kx2", 0).expect("kx2 builtin");
    let mut results = vec![("1 presentation validation", criterion_1()), ("2 A3 example", criterion_2(&a3))];
    let reports: Vec<_> = BUILTINS.iter().map(|b| suite_cli(b)).collect();
    results.push(("3 axiom suite on builtins", criterion_3(&reports)));
    results.push(("4 RN3 derived and solved", criterion_4(&reports)));
    results.push(("5 RN4 equivalences", criterion_5(&reports)));
    results.push(("6 sign goldens", criterion_6()));
    let wbs = [a3, kx2];
    results.push(("7 mutation sensitivity", criterion_7(&wbs)));
    results.push(("8 oracle agreement", criterion_8(&wbs[0], &wbs[1])));
    let mut failed = 0;
    for (name, c) in &results {
        println!("{} criterion {name}: {}", if c.ok { "PASS" } else { "FAIL" }, c.detail);
        failed += !c.ok as usize;
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
