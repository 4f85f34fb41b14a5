use orthokernel::linalg::{int_vector, is_positive_definite, rank, solve_affine, LinearSubspace};
use orthokernel::{Matrix, QuadraticSpace, Rational, Vector};
use proptest::prelude::*;

fn small_vec(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, n)
}

fn vectors(n: usize, max: usize) -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(small_vec(n), 0..=max).prop_map(|vs| vs.iter().map(|v| int_vector(v)).collect())
}

/// A positive definite `LᵀL + I` from a random integer matrix `L`.
fn pd_space(n: usize) -> impl Strategy<Value = QuadraticSpace> {
    prop::collection::vec(small_vec(n), n).prop_map(move |rows| {
        let l = Matrix::from_rows(rows.iter().map(|r| int_vector(r)).collect()).unwrap();
        let g = l.transpose().mul(&l).unwrap().add(&Matrix::identity(n)).unwrap();
        QuadraticSpace::new(g).unwrap()
    })
}

fn dot_i64(u: &[i64], g: &[Vec<i64>], v: &[i64]) -> i64 {
    (0..u.len())
        .map(|i| (0..v.len()).map(|j| u[i] * g[i][j] * v[j]).sum::<i64>())
        .sum()
}

#[test]
fn bilinear_examples_against_integer_arithmetic() {
    let id = QuadraticSpace::euclidean(2).unwrap();
    assert_eq!(id.bilinear_eval(&int_vector(&[1, 2]), &int_vector(&[3, 4])).unwrap(), Rational::from_integer(11));
    let d = QuadraticSpace::diagonal(&[Rational::one(), Rational::from_integer(2)]).unwrap();
    assert_eq!(d.bilinear_eval(&int_vector(&[0, 1]), &int_vector(&[0, 1])).unwrap(), Rational::from_integer(2));
    assert!(d.bilinear_eval(&int_vector(&[1]), &int_vector(&[0, 1])).is_err());
}

#[test]
fn sylvester_minors_of_two_by_two() {
    let m = Matrix::from_ints(&[&[2, 1], &[1, 2]]).unwrap();
    assert_eq!(m.leading_block(1).determinant().unwrap(), Rational::from_integer(2));
    assert_eq!(m.determinant().unwrap(), Rational::from_integer(3));
    assert!(is_positive_definite(&m).unwrap());
    assert!(!is_positive_definite(&Matrix::from_ints(&[&[1, 0], &[0, -1]]).unwrap()).unwrap());
    assert!(is_positive_definite(&Matrix::from_ints(&[&[1, 2], &[0, 1]]).unwrap()).is_err());
}

proptest! {
    #[test]
    fn bilinear_matches_integer_formula(u in small_vec(4), v in small_vec(4), rows in prop::collection::vec(small_vec(4), 4)) {
        let l = Matrix::from_rows(rows.iter().map(|r| int_vector(r)).collect()).unwrap();
        let g = l.transpose().mul(&l).unwrap().add(&Matrix::identity(4)).unwrap();
        let gi: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| {
            (0..4).map(|k| rows[k][i] * rows[k][j]).sum::<i64>() + i64::from(i == j)
        }).collect()).collect();
        let s = QuadraticSpace::new(g).unwrap();
        let (uq, vq) = (int_vector(&u), int_vector(&v));
        prop_assert_eq!(s.bilinear_eval(&uq, &vq).unwrap(), Rational::from_integer(dot_i64(&u, &gi, &v)));
        prop_assert_eq!(s.bilinear_eval(&uq, &vq).unwrap(), s.bilinear_eval(&vq, &uq).unwrap());
    }

    #[test]
    fn rref_is_idempotent_and_span_preserving(vs in vectors(4, 5)) {
        let s = LinearSubspace::span(vs.clone(), 4).unwrap();
        prop_assert_eq!(&LinearSubspace::span(s.basis().to_vec(), 4).unwrap(), &s);
        prop_assert_eq!(s.rank(), rank(&vs, 4));
        for v in &vs {
            prop_assert!(s.contains_vector(v));
        }
        for b in s.basis() {
            prop_assert_eq!(rank(&[vs.clone(), vec![b.clone()]].concat(), 4), s.rank());
        }
    }

    #[test]
    fn complement_dimension_and_double_complement(
        space in pd_space(4),
        d in vectors(4, 3),
        extra in vectors(4, 3),
    ) {
        let d = LinearSubspace::span(d, 4).unwrap();
        let w = d.extend(&extra).unwrap();
        let c = space.xi_complement(&d, &w).unwrap();
        prop_assert_eq!(c.rank() + d.rank(), w.rank());
        prop_assert!(c.intersection(&d).unwrap().is_zero());
        prop_assert!(space.subspaces_orthogonal(&c, &d));
        prop_assert_eq!(space.xi_complement(&c, &w).unwrap(), d);
    }

    #[test]
    fn solve_affine_round_trip(rows in prop::collection::vec(small_vec(3), 1..4), b in small_vec(3)) {
        let a = Matrix::from_rows(rows.iter().map(|r| int_vector(r)).collect()).unwrap();
        let rhs: Vector = int_vector(&b[..rows.len()]);
        match solve_affine(&a, &rhs).unwrap() {
            Some(sol) => {
                prop_assert_eq!(a.mul_vec(&sol.point).unwrap(), rhs.clone());
                for k in sol.kernel.basis() {
                    let p: Vector = sol.point.iter().zip(k).map(|(x, y)| x + y).collect();
                    prop_assert_eq!(a.mul_vec(&p).unwrap(), rhs.clone());
                }
                prop_assert_eq!(sol.kernel.rank() + rank(a.rows(), 3), 3);
            }
            None => {
                // Inconsistent: appending b as a column raises the rank.
                let aug: Vec<Vector> = a.rows().iter().zip(&rhs).map(|(r, x)| {
                    let mut r = r.clone();
                    r.push(x.clone());
                    r
                }).collect();
                prop_assert!(rank(&aug, 4) > rank(a.rows(), 3));
            }
        }
    }
}
