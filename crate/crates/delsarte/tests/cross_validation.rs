//! Cross-checks between the closed-form constructions and the explicit
//! relation-matrix path: tensors, eigenmatrices, idempotents, and the
//! orthogonal-polynomial recurrence.

use delsarte::arith::{Int, Rat};
use delsarte::matrix::RatMat;
use delsarte::named::{hamming_scheme, johnson_scheme, krawtchouk};
use delsarte::polynomial::{drg_ortho_polys, poly_eval, GridSide};
use delsarte::scheme::AssociationScheme;

fn explicit_hamming(n: u32) -> AssociationScheme {
    let size = 1usize << n;
    let rels: Vec<Vec<u8>> = (0..size)
        .map(|x| {
            (0..size)
                .map(|y| (x ^ y).count_ones() as u8)
                .collect()
        })
        .collect();
    AssociationScheme::verify_explicit(&rels).unwrap()
}

#[test]
fn explicit_hamming_matches_closed_form() {
    for n in [2u32, 3, 4, 5, 6, 7, 8] {
        let named = hamming_scheme(n, 2).unwrap();
        let explicit = explicit_hamming(n);
        assert_eq!(named.num_classes(), explicit.num_classes());
        assert_eq!(named.valencies(), explicit.valencies());
        assert_eq!(named.multiplicities(), explicit.multiplicities());
        let d1 = n as usize + 1;
        for i in 0..d1 {
            for j in 0..d1 {
                assert_eq!(
                    named.p_matrix()[(i, j)],
                    explicit.p_matrix()[(i, j)],
                    "P mismatch n={n} ({i},{j})"
                );
                assert_eq!(named.q_matrix()[(i, j)], explicit.q_matrix()[(i, j)]);
                for k in 0..d1 {
                    assert_eq!(named.p_number(i, j, k), explicit.p_number(i, j, k));
                    assert_eq!(named.krein_number(i, j, k), explicit.krein_number(i, j, k));
                }
            }
        }
        assert_eq!(
            explicit.p_polynomial_ordering().unwrap(),
            (0..d1).collect::<Vec<_>>()
        );
    }
}

#[test]
fn johnson_vs_explicit_petersen() {
    // J(5,2) and the explicit Petersen scheme are the same object with
    // relations 1 and 2 swapped
    let j52 = johnson_scheme(5, 2).unwrap();
    let verts: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| ((a + 1)..5).map(move |b| (a, b)))
        .collect();
    let rels: Vec<Vec<u8>> = (0..10)
        .map(|x| {
            (0..10)
                .map(|y| {
                    if x == y {
                        return 0;
                    }
                    let (a, b) = verts[x];
                    let (c, d) = verts[y];
                    let inter = [a, b].iter().filter(|v| **v == c || **v == d).count();
                    if inter == 0 {
                        1
                    } else {
                        2
                    }
                })
                .collect()
        })
        .collect();
    let petersen = AssociationScheme::verify_explicit(&rels).unwrap();
    let swap = [0usize, 2, 1];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(
                    j52.p_number(i, j, k),
                    petersen.p_number(swap[i], swap[j], swap[k]),
                    "p mismatch at ({i},{j},{k})"
                );
            }
        }
    }
    // J(5,2) vertex relations agree with the subset picture
    assert_eq!(j52.relation_of(0, 1), 1);
}

#[test]
fn idempotent_reconstruction_on_explicit_schemes() {
    // E_j = (1/|X|) sum_i Q[i][j] A_i satisfies E_j^2 = E_j, E_j E_k = 0,
    // and sum_j E_j = I
    for scheme in [explicit_hamming(3), johnson_scheme(5, 2).unwrap()] {
        let n = scheme.num_vertices() as usize;
        let d1 = scheme.num_classes() + 1;
        let size = Rat::from_integer(Int::from(n as u64));
        let idempotents: Vec<RatMat> = (0..d1)
            .map(|j| {
                RatMat::from_fn(n, n, |x, y| {
                    let r = scheme.relation_of(x as u64, y as u64);
                    &scheme.q_matrix()[(r, j)] / &size
                })
            })
            .collect();
        let mut total = RatMat::zero(n, n);
        for (j, e) in idempotents.iter().enumerate() {
            assert_eq!(e.mul(e), *e, "E_{j} not idempotent");
            assert_eq!(e.trace(), Rat::from_integer(scheme.multiplicity(j).clone()));
            total = total.add(e);
            for (k, f) in idempotents.iter().enumerate().skip(j + 1) {
                assert!(e.mul(f).is_zero(), "E_{j} E_{k} != 0");
            }
        }
        assert_eq!(total, RatMat::identity(n));
    }
}

#[test]
fn hamming_recurrence_matches_krawtchouk_closed_form() {
    for n in [6u32, 9, 12] {
        let h = hamming_scheme(n, 2).unwrap();
        let sys = drg_ortho_polys(&h, GridSide::Primal).unwrap();
        for k in 0..=n {
            for i in 0..=n {
                let theta = Rat::from_integer(Int::from(n as i64 - 2 * i as i64));
                assert_eq!(
                    poly_eval(&sys.coeffs[k as usize], &theta),
                    Rat::from_integer(krawtchouk(n, 2, k, i).unwrap()),
                    "n={n} k={k} i={i}"
                );
            }
        }
    }
}

#[test]
fn petersen_orthogonal_polynomials() {
    // the recurrence on an explicit non-Hamming scheme: v_2 evaluates to the
    // second eigenmatrix column on the grid (checked internally on build)
    let verts: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| ((a + 1)..5).map(move |b| (a, b)))
        .collect();
    let rels: Vec<Vec<u8>> = (0..10)
        .map(|x| {
            (0..10)
                .map(|y| {
                    if x == y {
                        return 0;
                    }
                    let (a, b) = verts[x];
                    let (c, d) = verts[y];
                    if [a, b].iter().any(|v| *v == c || *v == d) {
                        2
                    } else {
                        1
                    }
                })
                .collect()
        })
        .collect();
    let petersen = AssociationScheme::verify_explicit(&rels).unwrap();
    let sys = drg_ortho_polys(&petersen, GridSide::Primal).unwrap();
    assert_eq!(sys.coeffs[0], vec![Rat::from_integer(Int::from(1))]);
    // v_1 = x; v_2 from the intersection array {3,2;1,1}: v_2 = (x^2 - 3)/1...
    // the grid identity is what matters: v_2(theta_i) = P[i][2]
    for i in 0..3 {
        assert_eq!(
            poly_eval(&sys.coeffs[2], &sys.grid[i]),
            petersen.p_matrix()[(i, 2)]
        );
    }
    // valency normalization v_i(theta_0) = k_i
    for i in 0..3 {
        assert_eq!(
            poly_eval(&sys.coeffs[i], &sys.grid[0]),
            Rat::from_integer(petersen.valency(i).clone())
        );
    }
    // dual system exists too (2-class schemes are Q-polynomial)
    let dual_sys = drg_ortho_polys(&petersen, GridSide::Dual).unwrap();
    for i in 0..3 {
        assert_eq!(
            poly_eval(&dual_sys.coeffs[i], &dual_sys.grid[0]),
            Rat::from_integer(petersen.multiplicity(dual_sys.ordering[i]).clone())
        );
    }
}

#[test]
fn linearization_on_grid_up_to_d8() {
    // v_i v_j = sum_k p[i][j][k] v_k on the grid, all i,j, d = 8
    let h = hamming_scheme(8, 2).unwrap();
    let sys = drg_ortho_polys(&h, GridSide::Primal).unwrap();
    for i in 0..=8usize {
        for j in 0..=8usize {
            for m in 0..=8usize {
                let lhs = &sys.values[i][m] * &sys.values[j][m];
                let mut rhs = Rat::from_integer(Int::from(0));
                for k in 0..=8usize {
                    rhs += Rat::from_integer(h.p_number(i, j, k).clone()) * &sys.values[k][m];
                }
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn intersection_spot_checks_on_named_schemes() {
    let h = hamming_scheme(10, 2).unwrap();
    assert!(h.spot_check_intersections(100, 42));
    let j = johnson_scheme(7, 3).unwrap();
    assert!(j.spot_check_intersections(100, 43));
}

#[test]
fn pq_identity_both_sides() {
    for scheme in [
        hamming_scheme(8, 2).unwrap(),
        johnson_scheme(8, 4).unwrap(),
    ] {
        let d1 = scheme.num_classes() + 1;
        let size = Rat::from_integer(Int::from(scheme.num_vertices()));
        let pq = scheme.p_matrix().mul(scheme.q_matrix());
        let qp = scheme.q_matrix().mul(scheme.p_matrix());
        let expect = RatMat::identity(d1).scale(&size);
        assert_eq!(pq, expect);
        assert_eq!(qp, expect);
    }
}
