use anglecat::assemble::{layout, LayoutKind};

#[test]
fn each_mutation_flips_one_sign() {
    for n in 1..=4 {
        for kind in LayoutKind::ALL {
            let base = layout(kind, n).render();
            for m in layout(kind, n).mutations() {
                let got = layout(kind, n).mutated(Some(m)).render();
                let diff: Vec<usize> = (0..base.len()).filter(|&i| base[i] != got[i]).collect();
                assert_eq!(diff, vec![m.map], "{kind:?} n={n} {m:?}");
            }
        }
    }
}

#[test]
fn rotation_sign_alternates() {
    for n in 1..=5 {
        let last = layout(LayoutKind::Rotation, n).render().pop().unwrap();
        assert_eq!(last.starts_with("[[-"), n % 2 == 1, "n={n}: {last}");
    }
}

#[test]
fn sequences_have_n_plus_two_maps() {
    for n in 1..=5 {
        for kind in LayoutKind::ALL {
            assert_eq!(layout(kind, n).maps.len(), n + 2, "{kind:?} n={n}");
        }
    }
}

#[test]
fn beta_has_the_sign_of_n() {
    for n in 2..=6 {
        let beta = &layout(LayoutKind::Long, n).render()[n - 1];
        let want = if n % 2 == 0 { format!("[[f{}", n + 1) } else { format!("[[-f{}", n + 1) };
        assert!(beta.starts_with(&want), "n={n}: {beta}");
    }
}
