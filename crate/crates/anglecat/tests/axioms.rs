use anglecat::angle::{Theta, Verdict};
use anglecat::axioms::{Engine, OctahedronInput, Severity};
use anglecat::builtin::builtin;
use anglecat::sequence::{find_sequence_iso, IsoSearch, NSequence, ISO_SAMPLES};
use anglecat::work;
use anglecat::{Obj, Q};

#[test]
fn generator_is_member_and_its_negation_is_not() {
    let a3 = builtin("a3-cluster-2ct", 0).unwrap();
    let phi = a3.phi.unwrap();
    let p = &a3.pres;
    let ind = |i| Obj::indec(3, i);
    let m = |a: usize, b: usize, c: i64| p.from_coords(&ind(a), &ind(b), vec![Q::int(c)]);
    let gen = NSequence::from_maps(phi.as_ref(), vec![m(1, 2, 1), m(2, 0, 1), m(0, 1, 1), m(1, 2, 1)]);
    assert_eq!(phi.contains(&gen), Verdict::Member);
    let neg = NSequence::from_maps(phi.as_ref(), vec![m(1, 2, 1), m(2, 0, 1), m(0, 1, 1), m(1, 2, -1)]);
    assert_ne!(phi.contains(&neg), Verdict::Member);
}

#[test]
fn embedded_angles_pass_rn2_on_kx2() {
    let wb = builtin("stable-kx2", 0).unwrap();
    let eng = Engine::new(wb.theta.as_ref());
    let w = eng.w();
    let k = Obj::indec(2, 0);
    for f in work::basis(w, &k, &k) {
        let s = eng.check_embedding(&f).unwrap();
        assert_eq!(eng.check_rn2(&s), Verdict::Member);
    }
}

#[test]
fn identity_ladder_cone_has_identity_blocks() {
    let wb = builtin("stable-kx2", 0).unwrap();
    let eng = Engine::new(wb.theta.as_ref());
    let w = eng.w();
    let k = Obj::indec(2, 0);
    let id = w.pres().identity(&k);
    let s = wb.theta.embed(&id).unwrap();
    let (l, cone) = eng.rn41(&s, &s, &id, &id, None).unwrap();
    assert!(work::equal(w, &l.legs[0], &id));
    assert_eq!(eng.member(&cone), Verdict::Member);
    // [[-a1, 0], [f1, b0]] with f1 = b0 = 1 on k.
    let first = &cone.maps[0];
    let lay = w.pres().layout(&first.src, &first.dst);
    let kslot = lay.dst_slots.iter().position(|&i| i == 0).unwrap();
    for c in 0..lay.src_slots.len() {
        assert_eq!(first.coords[lay.range(kslot, c)], [Q::one()]);
    }
}

#[test]
fn rn3_derived_and_solved_on_identity_square() {
    for name in ["stable-kx2", "a3-cluster-2ct"] {
        let wb = builtin(name, 0).unwrap();
        let eng = Engine::new(wb.theta.as_ref());
        let w = eng.w();
        let k = w.pres().k();
        for i in 0..k {
            let a = Obj::indec(k, i);
            let id = w.pres().identity(&a);
            let s = wb.theta.embed(&id).unwrap();
            let d = eng.derive_rn3(&s, &s, &id, &id).unwrap();
            let v = eng.solve_rn3(&s, &s, &id, &id).unwrap();
            assert_eq!(d.legs.len(), wb.n + 2);
            assert_eq!(v.legs.len(), wb.n + 2);
        }
    }
}

#[test]
fn octahedron_round_trips() {
    let wb = builtin("a3-cluster-2ct", 0).unwrap();
    let eng = Engine::new(wb.theta.as_ref());
    let w = eng.w();
    let p = w.pres();
    let p1 = Obj::indec(3, 1);
    let a0 = p.identity(&p1);
    let f1 = p.identity(&p1);
    let inp = OctahedronInput {
        a: wb.theta.embed(&a0).unwrap(),
        b: wb.theta.embed(&p.compose(&f1, &a0)).unwrap(),
        c: wb.theta.embed(&f1).unwrap(),
        f1: f1.clone(),
    };
    let comp = eng.complete_rn4_star(&inp).unwrap();
    assert_eq!(eng.member(&comp.long), Verdict::Member);
    assert!(comp.alpha.is_empty());
    assert!(comp.beta.is_some());
    let (l, cone) = eng.convert_rn4star_to_rn41(&inp.a, &inp.b, &p.identity(&p1), &f1).unwrap();
    assert_eq!(eng.member(&cone), Verdict::Member);
    let back = eng.convert_rn41_to_rn4star(&inp, Some(&l)).unwrap();
    assert!(matches!(find_sequence_iso(w, &back.long, &comp.long, ISO_SAMPLES), IsoSearch::Found(_)));
}

#[test]
fn ladder_precondition_is_a_violation() {
    let wb = builtin("stable-kx2", 0).unwrap();
    let eng = Engine::new(wb.theta.as_ref());
    let w = eng.w();
    let k = Obj::indec(2, 0);
    let id = w.pres().identity(&k);
    let s = wb.theta.embed(&id).unwrap();
    let e = eng.rn41(&s, &s, &id, &id.neg(), None).unwrap_err();
    assert_eq!(e.severity, Severity::Violation);
}
