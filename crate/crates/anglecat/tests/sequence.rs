use anglecat::builtin::builtin;
use anglecat::sequence::{
    find_sequence_iso, is_complex, left_rotation, padding_sequence, seq_direct_sum, solve_ladder, trivial_sequence,
    verify_ladder, IsoSearch, ISO_SAMPLES,
};
use anglecat::Obj;

#[test]
fn trivial_and_padding_sequences_are_complexes() {
    for name in ["stable-kx2", "a3-cluster-2ct"] {
        let wb = builtin(name, 0).unwrap();
        let w = wb.theta.work();
        let k = wb.pres.k();
        for i in 0..k {
            let a = Obj::indec(k, i);
            assert!(is_complex(w, &trivial_sequence(w, &a, wb.n)));
            for pos in 1..=wb.n {
                assert!(is_complex(w, &padding_sequence(w, wb.n, pos, &a)));
            }
        }
    }
}

#[test]
fn rotation_of_an_angle_is_a_complex() {
    let wb = builtin("stable-kx2", 0).unwrap();
    let w = wb.theta.work();
    let k = Obj::indec(2, 0);
    let s = wb.theta.embed(&w.pres().identity(&k)).unwrap();
    let r = left_rotation(w, &s);
    assert_eq!(r.objs[0], s.objs[1]);
    assert!(is_complex(w, &r));
}

#[test]
fn identity_ladder_solves_and_iso_is_found() {
    let wb = builtin("a3-cluster-2ct", 0).unwrap();
    let w = wb.theta.work();
    let p1 = Obj::indec(3, 1);
    let s = wb.theta.embed(&w.pres().identity(&p1)).unwrap();
    let id = w.pres().identity(&p1);
    let mut fixed = vec![None; s.n + 2];
    fixed[0] = Some(id.clone());
    fixed[1] = Some(id);
    let l = solve_ladder(w, &s, &s, &fixed).unwrap();
    assert!(verify_ladder(w, &s, &s, &l));
    assert!(matches!(find_sequence_iso(w, &s, &s, ISO_SAMPLES), IsoSearch::Found(_)));
}

#[test]
fn sums_with_padding_are_not_isomorphic_to_the_summand() {
    let wb = builtin("stable-kx2", 0).unwrap();
    let w = wb.theta.work();
    let k = Obj::indec(2, 0);
    let s = wb.theta.embed(&w.pres().identity(&k)).unwrap();
    let u = seq_direct_sum(w, &s, &trivial_sequence(w, &k, 1));
    assert!(!matches!(find_sequence_iso(w, &u, &s, ISO_SAMPLES), IsoSearch::Found(_)));
}
