use anglecat::builtin::builtin;
use anglecat::exact::{certify_right_n_exact, n_pushout, ExactnessFailure};
use anglecat::Obj;

#[test]
fn additive_witness_rows_are_right_n_exact() {
    let wb = builtin("stable-kx2", 0).unwrap();
    let ctx = wb.ctx.unwrap();
    for i in 0..wb.pres.k() {
        let row = &ctx.indec_witness_of(i).maps;
        assert_eq!(row.len(), wb.n + 1);
        certify_right_n_exact(ctx.amb(), row).unwrap_or_else(|e| panic!("{i}: {e:?}"));
    }
}

#[test]
fn pushout_along_identity_legs() {
    for name in ["a3-cluster-2ct", "stable-kx2"] {
        let wb = builtin(name, 0).unwrap();
        let ctx = wb.ctx.unwrap();
        let w = ctx.amb();
        let p = w.pres();
        for i in (0..p.k()).filter(|&i| !ctx.is_member(i)) {
            let row = ctx.indec_witness_of(i).maps.clone();
            let legs: Vec<_> = row.iter().map(|m| p.identity(&m.dst)).collect();
            let po = n_pushout(w, &row, &row, &legs).unwrap_or_else(|e| panic!("{name} {i}: {e:?}"));
            assert_eq!(po.len(), wb.n + 1);
            assert_eq!(po[0].src, row[1].src);
            assert_eq!(po.last().unwrap().dst, row[wb.n].dst);
        }
    }
}

#[test]
fn pushout_rejects_noncommuting_legs() {
    let wb = builtin("stable-kx2", 0).unwrap();
    let ctx = wb.ctx.unwrap();
    let w = ctx.amb();
    let p = w.pres();
    let row = ctx.indec_witness_of(0).maps.clone();
    let mut legs: Vec<_> = row.iter().map(|m| p.identity(&m.dst)).collect();
    legs[0] = legs[0].neg();
    assert_eq!(n_pushout(w, &row, &row, &legs), Err(ExactnessFailure::NonzeroComposite(1)));
    let k = Obj::indec(2, 0);
    assert!(certify_right_n_exact(w, &[p.zero(&k, &k)]).is_err());
}
