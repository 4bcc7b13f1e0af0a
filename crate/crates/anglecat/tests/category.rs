use anglecat::oracle::{mesh::ClusterOracle, modules};
use anglecat::{q, validate_presentation, Obj, Presentation, Violation, Q};
use proptest::prelude::*;

fn kx2() -> Presentation {
    modules::presentation(&modules::kx2_modules())
}

#[test]
fn oracle_presentations_validate() {
    assert!(validate_presentation(&kx2()).passed());
    assert!(validate_presentation(&ClusterOracle::a3().presentation()).passed());
}

#[test]
fn hom_dimensions() {
    assert_eq!(kx2().hom, vec![vec![1, 1], vec![1, 2]]);
    assert_eq!(ClusterOracle::a3().presentation().hom, vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
}

#[test]
fn broken_constant_fails_associativity_or_units() {
    let mut p = kx2();
    p.add_structure((1, 1, 1), 1, 1, 1, q(1));
    let r = validate_presentation(&p);
    assert!(!r.passed());
    assert!(r.violations.iter().any(|v| matches!(v, Violation::Associativity { .. } | Violation::LeftUnit { .. } | Violation::RightUnit { .. })));
}

#[test]
fn x_squared_is_zero_on_lambda() {
    let p = kx2();
    let l = Obj::indec(2, 1);
    // Basis of End(L): x, then 1.
    let x = p.elem(&l, &l, 0);
    assert!(p.compose(&x, &x).is_zero());
    assert_eq!(p.compose(&p.identity(&l), &x), x);
}

#[test]
fn block_matrices_compose_blockwise() {
    let p = kx2();
    let k = Obj::indec(2, 0);
    let kk = k.plus(&k);
    let swap = p.matrix(&[k.clone(), k.clone()], &[k.clone(), k.clone()], |r, c| (r != c).then(|| p.identity(&k)));
    assert_eq!(p.compose(&swap, &swap), p.identity(&kk));
}

proptest! {
    #[test]
    fn composition_is_bilinear(a in -5i64..5, b in -5i64..5, c in -5i64..5) {
        let p = kx2();
        let l = Obj::indec(2, 1);
        let f = p.from_coords(&l, &l, vec![Q::int(a), Q::int(b)]);
        let g = p.from_coords(&l, &l, vec![Q::int(c), Q::int(1)]);
        let lhs = p.compose(&g, &f.scale(&Q::int(3)));
        let rhs = p.compose(&g, &f).scale(&Q::int(3));
        prop_assert_eq!(lhs, rhs);
    }
}
