//! Closed-form Hamming and Johnson schemes: implicit vertex sets, integer
//! eigenmatrices (Krawtchouk / Eberlein values), and exact intersection and
//! Krein tensors, with the natural polynomial orderings attached.

use crate::arith::{binomial, Int, Rat};
use crate::matrix::RatMat;
use crate::scheme::{krein_tensor, AssociationScheme, NumberMode, SchemeError, Tensor3, VertexSet};
use num::{One, ToPrimitive, Zero};

/// Krawtchouk value K_k(i) for H(n,q):
/// K_k(i) = sum_j (-1)^j (q-1)^(k-j) C(i,j) C(n-i,k-j).
pub fn krawtchouk(n: u32, q: u32, k: u32, i: u32) -> Result<Int, SchemeError> {
    if k > n || i > n {
        return Err(SchemeError::ParameterOutOfRange(format!(
            "krawtchouk indices k={k}, i={i} exceed n={n}"
        )));
    }
    let (n, q, k, i) = (n as i64, q as i64, k as i64, i as i64);
    let mut acc = Int::zero();
    for j in 0..=k {
        let mut term = binomial(i, j) * binomial(n - i, k - j);
        term *= Int::from(q - 1).pow((k - j) as u32);
        if j % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    Ok(acc)
}

/// Eberlein value E_j(i) for J(v,k):
/// E_j(i) = sum_r (-1)^r C(i,r) C(k-i,j-r) C(v-k-i,j-r).
pub fn eberlein(v: u32, k: u32, j: u32, i: u32) -> Int {
    let (v, k, j, i) = (v as i64, k as i64, j as i64, i as i64);
    let mut acc = Int::zero();
    for r in 0..=j {
        let term = binomial(i, r) * binomial(k - i, j - r) * binomial(v - k - i, j - r);
        if r % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    acc
}

/// Intersection numbers from the eigenmatrices:
/// p[i][j][k] = (1/|X|) sum_l Q[k][l] P[l][i] P[l][j]; entries must come out
/// as non-negative integers for a genuine scheme.
fn intersection_tensor(p_mat: &RatMat, q_mat: &RatMat, size: u64) -> Tensor3<Int> {
    let d1 = p_mat.rows;
    let all_integer = (0..d1).all(|r| {
        (0..d1).all(|c| p_mat[(r, c)].denom().is_one() && q_mat[(r, c)].denom().is_one())
    });
    let size_i = Int::from(size);
    let mut out = Tensor3::<Int>::new(d1);
    for i in 0..d1 {
        for j in i..d1 {
            for k in 0..d1 {
                let v = if all_integer {
                    let mut acc = Int::zero();
                    for l in 0..d1 {
                        acc += q_mat[(k, l)].numer() * p_mat[(l, i)].numer() * p_mat[(l, j)].numer();
                    }
                    let (q, r) = num::Integer::div_rem(&acc, &size_i);
                    assert!(r.is_zero(), "non-integral intersection number");
                    q
                } else {
                    let mut acc = Rat::zero();
                    for l in 0..d1 {
                        acc += &q_mat[(k, l)] * &p_mat[(l, i)] * &p_mat[(l, j)];
                    }
                    acc /= Rat::from_integer(size_i.clone());
                    assert!(acc.denom().is_one(), "non-integral intersection number");
                    acc.numer().clone()
                };
                assert!(v >= Int::zero(), "negative intersection number");
                out.set(i, j, k, v.clone());
                out.set(j, i, k, v);
            }
        }
    }
    out
}

fn natural_ordering(d1: usize) -> Vec<usize> {
    (0..d1).collect()
}

/// The Hamming scheme H(n,q): q^n words, relation = Hamming distance,
/// P = Q with Krawtchouk entries (the scheme is self-dual).
pub fn hamming_scheme(n: u32, q: u32) -> Result<AssociationScheme, SchemeError> {
    if n < 1 || q < 2 {
        return Err(SchemeError::ParameterOutOfRange(format!(
            "hamming scheme needs n >= 1, q >= 2 (got n={n}, q={q})"
        )));
    }
    let size = (q as u64)
        .checked_pow(n)
        .filter(|&s| s <= 1 << 62)
        .ok_or_else(|| SchemeError::ParameterOutOfRange(format!("q^n overflows for n={n}, q={q}")))?;
    let d1 = n as usize + 1;
    let mut p_mat = RatMat::zero(d1, d1);
    for i in 0..d1 {
        for j in 0..d1 {
            p_mat[(i, j)] = Rat::from_integer(krawtchouk(n, q, j as u32, i as u32)?);
        }
    }
    let q_mat = p_mat.clone();
    debug_assert!(p_mat.mul(&q_mat) == RatMat::identity(d1).scale(&Rat::from_integer(Int::from(size))));
    let valencies: Vec<Int> = (0..d1)
        .map(|i| binomial(n as i64, i as i64) * Int::from(q as i64 - 1).pow(i as u32))
        .collect();
    let multiplicities = valencies.clone();
    let p = intersection_tensor(&p_mat, &q_mat, size);
    // self-dual (Q = P): the Krein tensor coincides with the intersection tensor
    let mut krein = Tensor3::<Rat>::new(d1);
    for i in 0..d1 {
        for j in 0..d1 {
            for k in 0..d1 {
                krein.set(i, j, k, Rat::from_integer(p.get(i, j, k).clone()));
            }
        }
    }
    Ok(AssociationScheme::from_closed_form(
        VertexSet::Hamming { n, q },
        size,
        p,
        valencies,
        p_mat,
        q_mat,
        multiplicities,
        krein,
        Some(natural_ordering(d1)),
        Some(natural_ordering(d1)),
    ))
}

/// The Johnson scheme J(v,k): k-subsets of a v-set, relation(x,y) = k - |x ∩ y|.
pub fn johnson_scheme(v: u32, k: u32) -> Result<AssociationScheme, SchemeError> {
    if k < 1 || 2 * k > v || v > 62 {
        return Err(SchemeError::ParameterOutOfRange(format!(
            "johnson scheme needs 1 <= k, 2k <= v <= 62 (got v={v}, k={k})"
        )));
    }
    let size = binomial(v as i64, k as i64)
        .to_u64()
        .filter(|&s| s <= 1 << 62)
        .ok_or_else(|| SchemeError::ParameterOutOfRange("C(v,k) too large".into()))?;
    let d1 = k as usize + 1;
    let mut p_mat = RatMat::zero(d1, d1);
    for i in 0..d1 {
        for j in 0..d1 {
            p_mat[(i, j)] = Rat::from_integer(eberlein(v, k, j as u32, i as u32));
        }
    }
    let valencies: Vec<Int> = (0..d1)
        .map(|i| binomial(k as i64, i as i64) * binomial(v as i64 - k as i64, i as i64))
        .collect();
    let multiplicities: Vec<Int> = (0..d1)
        .map(|j| binomial(v as i64, j as i64) - binomial(v as i64, j as i64 - 1))
        .collect();
    // Q from the orthogonality relation Q[i][j] = m_j P[j][i] / k_i
    let q_mat = RatMat::from_fn(d1, d1, |i, j| {
        Rat::new(
            multiplicities[j].clone() * p_mat[(j, i)].numer(),
            valencies[i].clone(),
        )
    });
    debug_assert!(p_mat.mul(&q_mat) == RatMat::identity(d1).scale(&Rat::from_integer(Int::from(size))));
    let p = intersection_tensor(&p_mat, &q_mat, size);
    let krein = krein_tensor(&p_mat, &q_mat, size, NumberMode::Exact)?;
    Ok(AssociationScheme::from_closed_form(
        VertexSet::Johnson { v, k },
        size,
        p,
        valencies,
        p_mat,
        q_mat,
        multiplicities,
        krein,
        Some(natural_ordering(d1)),
        Some(natural_ordering(d1)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn krawtchouk_basics() {
        for i in 0..=23 {
            assert_eq!(krawtchouk(23, 2, 0, i).unwrap(), int(1));
        }
        assert_eq!(krawtchouk(7, 2, 1, 3).unwrap(), int(1)); // n - 2i
        for (n, q, k) in [(8u32, 2u32, 3u32), (6, 3, 2), (5, 4, 5)] {
            let expect = binomial(n as i64, k as i64) * Int::from(q as i64 - 1).pow(k);
            assert_eq!(krawtchouk(n, q, k, 0).unwrap(), expect);
        }
        assert!(krawtchouk(5, 2, 6, 0).is_err());
    }

    #[test]
    fn krawtchouk_orthogonality() {
        // sum_i C(n,i)(q-1)^i K_k(i) K_l(i) = delta_kl q^n C(n,k) (q-1)^k
        for (n, q) in [(6u32, 2u32), (12, 2), (5, 3)] {
            for k in 0..=n {
                for l in 0..=n {
                    let mut acc = Int::zero();
                    for i in 0..=n {
                        let w = binomial(n as i64, i as i64) * Int::from(q as i64 - 1).pow(i);
                        acc += w * krawtchouk(n, q, k, i).unwrap() * krawtchouk(n, q, l, i).unwrap();
                    }
                    let expect = if k == l {
                        Int::from(q as i64).pow(n)
                            * binomial(n as i64, k as i64)
                            * Int::from(q as i64 - 1).pow(k)
                    } else {
                        Int::zero()
                    };
                    assert_eq!(acc, expect, "n={n} q={q} k={k} l={l}");
                }
            }
        }
    }

    #[test]
    fn hamming_small() {
        let h3 = hamming_scheme(3, 2).unwrap();
        assert_eq!(h3.num_vertices(), 8);
        assert_eq!(
            h3.valencies(),
            &[int(1), int(3), int(3), int(1)]
        );
        assert_eq!(h3.relation_of(0b000, 0b111), 3);
        assert_eq!(h3.relation_of(0b101, 0b100), 1);
    }

    #[test]
    fn hamming_23_multiplicities() {
        let h = hamming_scheme(23, 2).unwrap();
        for j in 0..=23usize {
            assert_eq!(*h.multiplicity(j), binomial(23, j as i64));
        }
    }

    #[test]
    fn hamming_self_dual_krein_equals_p() {
        // independent route: the generic Krein formula from (P, Q) must
        // reproduce the intersection tensor exactly
        let h = hamming_scheme(4, 2).unwrap();
        let generic =
            krein_tensor(h.p_matrix(), h.q_matrix(), h.num_vertices(), NumberMode::Exact).unwrap();
        for i in 0..=4 {
            for j in 0..=4 {
                for k in 0..=4 {
                    assert_eq!(generic.get(i, j, k), h.krein_number(i, j, k));
                    assert_eq!(
                        *h.krein_number(i, j, k),
                        Rat::from_integer(h.p_number(i, j, k).clone())
                    );
                }
            }
        }
    }

    #[test]
    fn johnson_petersen_compatible() {
        // J(5,2) relation 2 is the Petersen graph; relation relabeling 1<->2
        // matches the explicit Petersen scheme
        let j52 = johnson_scheme(5, 2).unwrap();
        assert_eq!(j52.num_vertices(), 10);
        assert_eq!(j52.valencies(), &[int(1), int(6), int(3)]);
        // p[2][2][2] in J-labels = p[1][1][1] in Petersen labels = 0
        assert_eq!(*j52.p_number(2, 2, 2), int(0));
        // common neighbours (in the Petersen graph) of a non-adjacent pair:
        // J-relation 1, Petersen-relation 2
        assert_eq!(*j52.p_number(2, 2, 1), int(1));
        assert_eq!(
            j52.multiplicities(),
            &[int(1), int(4), int(5)]
        );
    }

    #[test]
    fn johnson_q_polynomial_natural() {
        let j = johnson_scheme(7, 3).unwrap();
        assert_eq!(j.q_polynomial_ordering().unwrap(), &[0, 1, 2, 3]);
        assert_eq!(j.p_polynomial_ordering().unwrap(), &[0, 1, 2, 3]);
        let total: Int = j.multiplicities().iter().sum();
        assert_eq!(total, int(35));
    }

    #[test]
    fn hamming_natural_orderings_tridiagonal() {
        let h6 = hamming_scheme(6, 2).unwrap();
        let (po, qo) = h6.find_polynomial_orderings();
        assert_eq!(po.unwrap(), (0..=6).collect::<Vec<_>>());
        assert_eq!(qo.unwrap(), (0..=6).collect::<Vec<_>>());
    }
}
