use anglecat::builtin::{builtin, builtin_text, workbench, LoadError};
use anglecat::document::parse_document;
use anglecat::quotient::QuotientMode;
use anglecat::Obj;

#[test]
fn unknown_builtin() {
    assert!(matches!(builtin("a4", 0), Err(LoadError::Unknown(_))));
}

#[test]
fn modes_follow_the_document() {
    let a3 = builtin("a3-cluster-2ct", 0).unwrap();
    assert_eq!(a3.ctx.as_ref().unwrap().mode, QuotientMode::Angulated);
    assert_eq!(a3.n, 2);
    let kx2 = builtin("stable-kx2", 0).unwrap();
    assert_eq!(kx2.ctx.as_ref().unwrap().mode, QuotientMode::Additive);
    assert!(kx2.phi.is_none());
    assert_eq!(kx2.n, 1);
}

#[test]
fn stable_kx2_suspension_fixes_k() {
    let kx2 = builtin("stable-kx2", 0).unwrap();
    let ctx = kx2.ctx.unwrap();
    assert_eq!(ctx.sigma_indec(0), &Obj::indec(2, 0));
    assert_eq!(ctx.quotient_hom_dim(0, 0), 1);
    assert_eq!(ctx.quotient_hom_dim(1, 1), 0);
}

#[test]
fn generators_alone_give_the_ambient_class() {
    let mut doc = parse_document(builtin_text("a3-cluster-2ct").unwrap()).unwrap();
    doc.subcategory = None;
    let wb = workbench("ambient", doc.clone(), 0, None).unwrap();
    assert!(wb.ctx.is_none());
    assert!(wb.phi.is_some());
    doc.generators = None;
    assert!(matches!(workbench("bare", doc, 0, None), Err(LoadError::NothingToCheck)));
}

#[test]
fn broken_presentation_is_reported() {
    let text = builtin_text("stable-kx2").unwrap();
    let bad = text.replacen("{\"src\":1,\"mid\":1,\"dst\":1,\"f\":1,\"g\":1,\"gf\":1,\"value\":\"1\"}", "{\"src\":1,\"mid\":1,\"dst\":1,\"f\":1,\"g\":1,\"gf\":1,\"value\":\"2\"}", 1);
    assert_ne!(bad, text);
    match workbench("bad", parse_document(&bad).unwrap(), 0, None) {
        Err(LoadError::Invalid(v)) => assert!(!v.is_empty()),
        Err(e) => panic!("{e}"),
        Ok(_) => panic!("accepted"),
    }
}
