//! Helpers shared by the integration and acceptance test binaries.
#![allow(dead_code)]

use delsarte::arith::{rat_to_f64, Int, Rat};
use delsarte::induced::RestrictedIdempotents;
use delsarte::named::johnson_scheme;
use delsarte::scheme::jacobi_symmetric;
use num::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_subset(rng: &mut ChaCha8Rng, size: u64, len: usize) -> Vec<u64> {
    let mut all: Vec<u64> = (0..size).collect();
    all.shuffle(rng);
    all.truncate(len);
    all.sort_unstable();
    all
}

/// |X|^2 * tr(F_i F_j) from the subset's pair counts.
pub fn gram_scaled(rest: &RestrictedIdempotents, i: usize, j: usize) -> Rat {
    let size2 = Rat::from_integer(Int::from(rest.scheme.num_vertices()).pow(2));
    rest.gram(i, j) * size2
}

/// |C| sum_k q[i][j][k] b_k, the right-hand side of the Gram identity.
pub fn krein_moment_sum(rest: &RestrictedIdempotents, i: usize, j: usize) -> Rat {
    let d1 = rest.scheme.num_classes() + 1;
    let mut acc = Rat::zero();
    for k in 0..d1 {
        let q = rest.scheme.krein_number(i, j, k);
        if !q.is_zero() && !rest.dual[k].is_zero() {
            acc += q * &rest.dual[k];
        }
    }
    acc * Rat::from_integer(Int::from(rest.subset_size() as u64))
}

/// Scaled-integer copies of the restricted idempotents: F_i = mats[i]/denom.
pub fn scaled_f_matrices(rest: &RestrictedIdempotents) -> (Vec<Vec<i128>>, i128) {
    let scheme = rest.scheme;
    let d1 = scheme.num_classes() + 1;
    let c = rest.subset_size();
    let q = scheme.q_matrix();
    let mut denom = Int::one();
    for l in 0..d1 {
        for i in 0..d1 {
            denom = num::Integer::lcm(&denom, q[(l, i)].denom());
        }
    }
    let scaled: Vec<Vec<i128>> = (0..d1)
        .map(|i| {
            let col: Vec<i128> = (0..d1)
                .map(|l| {
                    let v = &q[(l, i)] * Rat::from_integer(denom.clone());
                    assert!(v.denom().is_one());
                    v.numer().to_i128().unwrap()
                })
                .collect();
            let mut m = vec![0i128; c * c];
            for x in 0..c {
                for y in 0..c {
                    m[x * c + y] = col[rest.relation_on_subset(x, y)];
                }
            }
            m
        })
        .collect();
    let full_denom = (denom * Int::from(scheme.num_vertices())).to_i128().unwrap();
    (scaled, full_denom)
}

pub fn mat_product_is_zero(a: &[i128], b: &[i128], c: usize) -> bool {
    for x in 0..c {
        for y in 0..c {
            let mut acc: i128 = 0;
            for z in 0..c {
                acc += a[x * c + z] * b[z * c + y];
            }
            if acc != 0 {
                return false;
            }
        }
    }
    true
}

pub fn entrywise_sum_is_zero(a: &[i128], b: &[i128]) -> bool {
    let acc: i128 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    acc == 0
}

/// The five statements of the first product-equivalence proposition for a
/// window {w+1..w+t}, each evaluated along an independent route:
/// (a) dual entries vanish, (b) direct pair sums, (c) Gram table column 0,
/// (d) entrywise sums of materialized matrices, (e) matrix products.
pub fn battery_part1(rest: &RestrictedIdempotents, w: usize, t: usize) -> [bool; 5] {
    let d = rest.scheme.num_classes();
    let scale = rest
        .dual
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(Rat::one);
    let zero = |v: &Rat| rest.scheme.is_zero_at_scale(v, &scale);
    let a = (w + 1..=w + t).all(|k| zero(&rest.dual[k]));
    let pairs: Vec<(usize, usize)> = (0..=d)
        .flat_map(|i| (0..=d).map(move |j| (i, j)))
        .filter(|&(i, j)| i.abs_diff(j) > w && i + j <= w + t)
        .collect();
    let (mats, _denom) = scaled_f_matrices(rest);
    let c = rest.subset_size();
    let b = pairs.iter().all(|&(i, j)| {
        let mut acc: i128 = 0;
        for x in 0..c {
            for y in 0..c {
                acc += mats[i][x * c + y] * mats[j][x * c + y];
            }
        }
        acc == 0
    });
    let cc = (w + 1..=w + t).all(|k| zero(rest.gram(k, 0)));
    let dd = pairs
        .iter()
        .all(|&(i, j)| entrywise_sum_is_zero(&mats[i], &mats[j]));
    let e = pairs
        .iter()
        .all(|&(i, j)| mat_product_is_zero(&mats[i], &mats[j], c));
    [a, b, cc, dd, e]
}

/// Second part: nonvanishing at distance exactly w.
pub fn battery_part2(rest: &RestrictedIdempotents, w: usize) -> [bool; 5] {
    let d = rest.scheme.num_classes();
    let scale = rest
        .dual
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(Rat::one);
    let zero = |v: &Rat| rest.scheme.is_zero_at_scale(v, &scale);
    let a = !zero(&rest.dual[w]) && rest.dual[w].is_positive();
    let pairs: Vec<(usize, usize)> = (0..=d)
        .flat_map(|i| (0..=d).map(move |j| (i, j)))
        .filter(|&(i, j)| i.abs_diff(j) == w)
        .collect();
    let (mats, _denom) = scaled_f_matrices(rest);
    let c = rest.subset_size();
    let b = pairs.iter().all(|&(i, j)| {
        let mut acc: i128 = 0;
        for x in 0..c {
            for y in 0..c {
                acc += mats[i][x * c + y] * mats[j][x * c + y];
            }
        }
        acc != 0
    });
    let cc = !zero(rest.gram(w, 0));
    let dd = pairs
        .iter()
        .all(|&(i, j)| !entrywise_sum_is_zero(&mats[i], &mats[j]));
    let e = pairs
        .iter()
        .all(|&(i, j)| !mat_product_is_zero(&mats[i], &mats[j], c));
    [a, b, cc, dd, e]
}

/// Numeric-eigenbasis oracle on J(5,2): builds explicit orthonormal bases
/// S_i, measures ||H_i^T H_j||^2 on random subsets, and returns the set of
/// surviving powers p with ||H_i^T H_j||^2 = |X|^p * |C| sum_k q b_k.
pub fn pin_gram_power(rng: &mut ChaCha8Rng) -> Vec<i32> {
    let scheme = johnson_scheme(5, 2).unwrap();
    let n = 10usize;
    let d1 = 3usize;
    let idempotents: Vec<Vec<Vec<f64>>> = (0..d1)
        .map(|i| {
            (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| {
                            let r = scheme.relation_of(x as u64, y as u64);
                            rat_to_f64(&scheme.q_matrix()[(r, i)]) / n as f64
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let bases: Vec<Vec<Vec<f64>>> = idempotents
        .iter()
        .map(|e| {
            let (vals, vecs) = jacobi_symmetric(e);
            vals.iter()
                .zip(&vecs)
                .filter(|(v, _)| **v > 0.5)
                .map(|(_, vec)| vec.iter().map(|x| x * (n as f64).sqrt()).collect())
                .collect()
        })
        .collect();
    for (i, basis) in bases.iter().enumerate() {
        assert_eq!(basis.len(), scheme.multiplicity(i).to_usize().unwrap());
        for x in 0..n {
            for y in 0..n {
                let recon: f64 = basis.iter().map(|col| col[x] * col[y]).sum::<f64>() / n as f64;
                assert!((recon - idempotents[i][x][y]).abs() < 1e-9);
            }
        }
    }
    let mut surviving: Vec<i32> = vec![2, 1, 0, -1, -2];
    for _ in 0..8 {
        let len = rng.gen_range(2..=7);
        let subset = random_subset(rng, 10, len);
        let rest = RestrictedIdempotents::new(&scheme, &subset).unwrap();
        for i in 0..d1 {
            for j in 0..d1 {
                let mut norm2 = 0.0;
                for a in 0..bases[i].len() {
                    for b in 0..bases[j].len() {
                        let entry: f64 = subset
                            .iter()
                            .map(|&x| bases[i][a][x as usize] * bases[j][b][x as usize])
                            .sum();
                        norm2 += entry * entry;
                    }
                }
                let base = rat_to_f64(&krein_moment_sum(&rest, i, j));
                if base.abs() < 1e-9 {
                    assert!(norm2.abs() < 1e-6);
                    continue;
                }
                surviving.retain(|p| {
                    let c = 10f64.powi(*p);
                    (norm2 - c * base).abs() <= 1e-6 * base.abs().max(1.0)
                });
            }
        }
    }
    surviving
}
