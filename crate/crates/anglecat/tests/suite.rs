use anglecat::assemble::{LayoutKind, Mutation};
use anglecat::builtin::{builtin, Workbench};
use anglecat::suite::{digest, run_full_suite, universe_objects, Outcome, SuiteConfig, SuiteReport};

fn small(mutation: Option<Mutation>) -> SuiteConfig {
    SuiteConfig { universe_bound: 1, budget: 6, derive_instances: 4, seed: 7, mutation }
}

fn run(wb: &Workbench, cfg: &SuiteConfig) -> SuiteReport {
    let phi = if wb.ctx.is_some() { wb.phi.as_deref() } else { None };
    run_full_suite(&wb.name, wb.theta.as_ref(), phi, cfg)
}

#[test]
fn universe_sizes() {
    assert_eq!(universe_objects(3, 2).len(), 27);
    assert_eq!(universe_objects(2, 1).len(), 4);
}

#[test]
fn small_suites_pass() {
    for name in ["stable-kx2", "a3-cluster-2ct"] {
        let wb = builtin(name, 0).unwrap();
        let r = run(&wb, &small(None));
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.count(Outcome::Undecided), 0);
        assert_eq!(r.records.iter().filter(|x| x.axiom == "rn3:derive").count(), 4);
    }
}

#[test]
fn reports_are_deterministic() {
    let wb = builtin("stable-kx2", 0).unwrap();
    let a = run(&wb, &small(None));
    let b = run(&wb, &small(None));
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn flipped_cone_sign_is_caught() {
    let wb = builtin("stable-kx2", 0).unwrap();
    let m = Mutation { kind: LayoutKind::Cone, map: 0, entry: 0 };
    let r = run(&wb, &small(Some(m)));
    assert!(!r.passed());
    assert!(r.failures().any(|x| x.axiom.starts_with("rn4")));
}

#[test]
fn digest_is_short_hex() {
    let d = digest(&[1, 2, 3]);
    assert_eq!(d.len(), 16);
    assert!(d.chars().all(|c| c.is_ascii_hexdigit()));
    assert_ne!(d, digest(&[1, 2, 4]));
}
