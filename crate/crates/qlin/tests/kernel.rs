use proptest::prelude::*;
use qlin::{mat_inverse, mat_nullspace, mat_rank, mat_solve, q, Field, Fp, Matrix, Span, Q};

fn m(rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64(rows)
}

#[test]
fn rank_examples() {
    assert_eq!(mat_rank(&Matrix::<Q>::identity(2)), 2);
    assert_eq!(mat_rank(&Matrix::<Q>::zeros(3, 4)), 0);
    assert_eq!(mat_rank(&m(&[&[1, 2], &[2, 4]])), 1);
}

#[test]
fn solve_examples() {
    let b = m(&[&[3, -1], &[5, 7]]);
    let s = mat_solve(&Matrix::identity(2), &b).unwrap();
    assert_eq!(s.particular, b);
    assert_eq!(s.nullspace.cols(), 0);

    let z = Matrix::<Q>::zeros(2, 2);
    let s = mat_solve(&z, &Matrix::zeros(2, 1)).unwrap();
    assert!(s.particular.is_zero());
    assert_eq!(s.nullspace.cols(), 2);

    let a = m(&[&[1, 1]]);
    let s = mat_solve(&a, &m(&[&[2]])).unwrap();
    assert_eq!(a.mul(&s.particular), m(&[&[2]]));
    assert_eq!(s.nullspace.cols(), 1);
    let v = s.nullspace.col(0);
    assert_eq!(v[0], -v[1].clone());
    assert!(!v[0].is_zero());

    assert!(mat_solve(&m(&[&[1, 1], &[1, 1]]), &m(&[&[1], &[2]])).is_none());
}

#[test]
fn nullspace_examples() {
    assert_eq!(mat_nullspace(&Matrix::<Q>::identity(3)).cols(), 0);
    assert_eq!(mat_nullspace(&Matrix::<Q>::zeros(3, 3)), Matrix::identity(3));
    let ns = mat_nullspace(&m(&[&[1, 2], &[2, 4]]));
    assert_eq!(ns.cols(), 1);
    let v = ns.col(0);
    // proportional to (2, -1)
    assert_eq!(&v[0] * q(-1), &v[1] * q(2));
}

#[test]
fn inverse_examples() {
    assert_eq!(mat_inverse(&Matrix::<Q>::identity(3)).unwrap(), Matrix::identity(3));
    let swap = m(&[&[0, 1], &[1, 0]]);
    assert_eq!(mat_inverse(&swap).unwrap(), swap);
    assert_eq!(mat_inverse(&m(&[&[1, 1], &[0, 1]])).unwrap(), m(&[&[1, -1], &[0, 1]]));
    assert!(mat_inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
}

#[test]
fn empty_matrices() {
    let e = Matrix::<Q>::zeros(0, 3);
    assert_eq!(e.rank(), 0);
    assert_eq!(e.nullspace().cols(), 3);
    let s = Matrix::<Q>::zeros(0, 2).solve(&Matrix::zeros(0, 1)).unwrap();
    assert_eq!(s.particular.rows(), 2);
    assert_eq!(Matrix::<Q>::zeros(0, 0).inverse().unwrap().rows(), 0);
    let t = Matrix::<Q>::zeros(2, 0);
    assert_eq!(t.mul(&Matrix::zeros(0, 3)), Matrix::zeros(2, 3));
}

#[test]
fn prime_field() {
    type F7 = Fp<7>;
    let a: Matrix<F7> = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
    let inv = a.inverse().unwrap();
    assert!(a.mul(&inv).is_identity());
    // det = -2 = 5 mod 7, nonzero; [[1,2],[2,4]] stays singular
    let s: Matrix<F7> = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
    assert_eq!(s.rank(), 1);
    // 2*4 = 1 mod 7
    assert_eq!(F7::new(2).inv(), Some(F7::new(4)));
}

#[test]
fn span_reduction() {
    let mut s = Span::<Q>::new(3);
    assert!(s.insert(vec![q(1), q(1), q(0)]));
    assert!(s.insert(vec![q(0), q(1), q(1)]));
    assert!(!s.insert(vec![q(1), q(2), q(1)]));
    assert_eq!(s.dim(), 2);
    assert_eq!(s.free_coords(), vec![2]);
    let r = s.reduce(&[q(0), q(0), q(5)]);
    assert!(r[0].is_zero() && r[1].is_zero());
    assert!(s.contains(&[q(2), q(3), q(1)]));
}

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-3i64..=3, r * c)
            .prop_map(move |v| Matrix::from_vec(r, c, v.into_iter().map(Q::int).collect()))
    })
}

proptest! {
    #[test]
    fn rank_nullity(a in small_matrix()) {
        prop_assert_eq!(a.rank() + a.nullspace().cols(), a.cols());
        prop_assert!(a.mul(&a.nullspace()).is_zero());
    }

    #[test]
    fn solutions_are_solutions(a in small_matrix(), seed in proptest::collection::vec(-3i64..=3, 8)) {
        let x: Vec<Q> = (0..a.cols()).map(|i| Q::int(seed[i % seed.len()])).collect();
        let b = Matrix::column(a.mul_vec(&x));
        let s = a.solve(&b).expect("consistent by construction");
        prop_assert_eq!(a.mul(&s.particular), b.clone());
        if s.nullspace.cols() > 0 {
            let t = Matrix::column((0..s.nullspace.cols()).map(|i| Q::int(i as i64 - 1)).collect());
            let y = s.particular.add(&s.nullspace.mul(&t));
            prop_assert_eq!(a.mul(&y), b);
        }
    }

    #[test]
    fn inverse_iff_full_rank(v in proptest::collection::vec(-3i64..=3, 9)) {
        let a = Matrix::from_vec(3, 3, v.into_iter().map(Q::int).collect());
        match a.inverse() {
            Some(inv) => {
                prop_assert_eq!(a.rank(), 3);
                prop_assert!(a.mul(&inv).is_identity());
                prop_assert!(inv.mul(&a).is_identity());
            }
            None => prop_assert!(a.rank() < 3),
        }
    }

    #[test]
    fn scalar_field_laws(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
        let x = Q::frac(a, b);
        let y = Q::frac(c, d);
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if !y.is_zero() {
            prop_assert_eq!(&(&x * &y) / &y, x.clone());
        }
        prop_assert_eq!(&x * &y, &y * &x);
    }
}
