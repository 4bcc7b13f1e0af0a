use anglecat::oracle::{mesh::ClusterOracle, modules};
use anglecat::quotient::{canonical_left_approximation, is_x_monic, ideal_subspace, QuotientContext, QuotientError, QuotientMode, SubcategorySpec};
use anglecat::Obj;

#[test]
fn kx2_ideal_is_the_projective_maps() {
    let p = modules::presentation(&modules::kx2_modules());
    let x = SubcategorySpec::from_indices(2, &[1]);
    // k -> k is not projective-factoring; everything touching L is.
    assert_eq!(ideal_subspace(&p, &x, 0, 0).dim(), 0);
    assert_eq!(ideal_subspace(&p, &x, 0, 1).dim(), 1);
    assert_eq!(ideal_subspace(&p, &x, 1, 1).dim(), 2);
}

#[test]
fn canonical_approximation_is_x_monic() {
    let p = ClusterOracle::a3().presentation();
    let x = SubcategorySpec::from_indices(3, &[0, 2]);
    let f = canonical_left_approximation(&p, &x, &Obj::indec(3, 1));
    assert_eq!(f.dst, Obj::indec(3, 2));
    assert!(is_x_monic(&p, &x, &f));
    let zero = p.zero(&Obj::indec(3, 1), &Obj::indec(3, 2));
    assert!(!is_x_monic(&p, &x, &zero));
}

#[test]
fn angulated_mode_needs_phi() {
    let p = ClusterOracle::a3().presentation();
    let x = SubcategorySpec::from_indices(3, &[0, 2]);
    let e = QuotientContext::new(p, x, QuotientMode::Angulated, 2, None, 0).err();
    assert_eq!(e, Some(QuotientError::MissingAmbient));
}

#[test]
fn subcategory_shape_is_checked() {
    let p = ClusterOracle::a3().presentation();
    let x = SubcategorySpec::from_indices(2, &[0]);
    let e = QuotientContext::new(p, x, QuotientMode::Additive, 2, None, 0).err();
    assert_eq!(e, Some(QuotientError::Shape { got: 2, want: 3 }));
}
