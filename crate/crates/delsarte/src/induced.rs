//! Restricted idempotents F_i (the primitive idempotents cut down to a
//! subset), their Gram table, the product-vanishing hypothesis of the
//! dual-side main theorem, and construction plus certification of the
//! induced scheme on the subset.

use crate::arith::{Int, Rat};
use crate::distribution::{validate_subset, zero_intervals, DistributionError, ZeroInterval};
use crate::matrix::RatMat;
use crate::scheme::{AssociationScheme, SchemeError, VerifyPolicy};
use num::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

pub const SUBSET_CAP: u64 = 4096;
const DENSE_F_CAP: usize = 1024;

#[derive(Debug, Error)]
pub enum InducedError {
    #[error("subset too large: {size} > {cap}")]
    SubsetTooLarge { size: u64, cap: u64 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("subset does not satisfy the product-vanishing hypothesis at any w*")]
    HypothesisNotSatisfied,
    #[error("relations on the subset do not form a scheme: {0}")]
    NotAScheme(SchemeError),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
}

/// The idempotents of the ambient scheme restricted to C x C. The full
/// |C| x |C| rational matrices are only materialized on demand; the Gram
/// table tr(F_i F_j) is carried exactly via the pair counts:
/// tr(F_i F_j) = (1/|X|^2) sum_l N_l Q[l][i] Q[l][j].
pub struct RestrictedIdempotents<'a> {
    pub scheme: &'a AssociationScheme,
    pub subset: Vec<u64>,
    /// relation matrix on C (ambient relation indices)
    rel: Vec<u8>,
    /// ordered pair counts per ambient relation
    pub pair_counts: Vec<u64>,
    /// dual distribution of the subset (b_j, exact)
    pub dual: Vec<Rat>,
    gram: Vec<Vec<Rat>>,
    gram_scale: Rat,
}

impl<'a> RestrictedIdempotents<'a> {
    pub fn new(
        scheme: &'a AssociationScheme,
        subset: &[u64],
    ) -> Result<RestrictedIdempotents<'a>, InducedError> {
        if subset.len() as u64 > SUBSET_CAP {
            return Err(InducedError::SubsetTooLarge {
                size: subset.len() as u64,
                cap: SUBSET_CAP,
            });
        }
        validate_subset(scheme, subset)?;
        let c = subset.len();
        let d1 = scheme.num_classes() + 1;
        let decoded: Vec<_> = subset.iter().map(|&x| scheme.decode_vertex(x)).collect();
        let rel: Vec<u8> = (0..c)
            .into_par_iter()
            .flat_map_iter(|x| {
                let dx = &decoded[x];
                (0..c)
                    .map(|y| scheme.decoded_relation(dx, &decoded[y]) as u8)
                    .collect::<Vec<_>>()
            })
            .collect();
        let mut pair_counts = vec![0u64; d1];
        for &r in &rel {
            pair_counts[r as usize] += 1;
        }
        let q = scheme.q_matrix();
        let size2 = Rat::from_integer(Int::from(scheme.num_vertices()).pow(2));
        let mut gram = vec![vec![Rat::zero(); d1]; d1];
        let mut gram_scale = Rat::one();
        for i in 0..d1 {
            for j in i..d1 {
                let mut acc = Rat::zero();
                for l in 0..d1 {
                    if pair_counts[l] > 0 {
                        acc += Rat::from_integer(Int::from(pair_counts[l])) * &q[(l, i)] * &q[(l, j)];
                    }
                }
                acc /= &size2;
                if acc.abs() > gram_scale {
                    gram_scale = acc.abs();
                }
                gram[i][j] = acc.clone();
                gram[j][i] = acc;
            }
        }
        let inner: Vec<Rat> = pair_counts
            .iter()
            .map(|&n| Rat::new(Int::from(n), Int::from(c as u64)))
            .collect();
        let dual: Vec<Rat> = (0..d1)
            .map(|j| {
                let mut acc = Rat::zero();
                for (i, a) in inner.iter().enumerate() {
                    if !a.is_zero() {
                        acc += a * &q[(i, j)];
                    }
                }
                acc
            })
            .collect();
        Ok(RestrictedIdempotents {
            scheme,
            subset: subset.to_vec(),
            rel,
            pair_counts,
            dual,
            gram,
            gram_scale,
        })
    }

    pub fn subset_size(&self) -> usize {
        self.subset.len()
    }

    pub fn relation_on_subset(&self, x: usize, y: usize) -> usize {
        self.rel[x * self.subset.len() + y] as usize
    }

    /// tr(F_i F_j), exact.
    pub fn gram(&self, i: usize, j: usize) -> &Rat {
        &self.gram[i][j]
    }

    /// Whether F_i F_j = 0. Both F_i and F_j are positive semidefinite
    /// (principal submatrices of idempotents), so the product vanishes
    /// exactly when its trace does.
    pub fn product_is_zero(&self, i: usize, j: usize) -> bool {
        self.scheme.is_zero_at_scale(&self.gram[i][j], &self.gram_scale)
    }

    /// Materializes F_i = (1/|X|) sum_l Q[l][i] A_l restricted to C.
    pub fn f_matrix(&self, i: usize) -> Result<RatMat, InducedError> {
        let c = self.subset.len();
        if c > DENSE_F_CAP {
            return Err(InducedError::SubsetTooLarge {
                size: c as u64,
                cap: DENSE_F_CAP as u64,
            });
        }
        let q = self.scheme.q_matrix();
        let size = Rat::from_integer(Int::from(self.scheme.num_vertices()));
        let col: Vec<Rat> = (0..=self.scheme.num_classes())
            .map(|l| &q[(l, i)] / &size)
            .collect();
        Ok(RatMat::from_fn(c, c, |x, y| {
            col[self.rel[x * c + y] as usize].clone()
        }))
    }

    /// Degree set of the subset: ambient relations realized off-diagonal.
    pub fn degree_set(&self) -> Vec<usize> {
        (1..=self.scheme.num_classes())
            .filter(|&l| self.pair_counts[l] > 0)
            .collect()
    }

    /// Maximal dual zero intervals of b.
    pub fn dual_zero_intervals(&self) -> Vec<ZeroInterval> {
        let scale = self
            .dual
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rat::one);
        zero_intervals(&self.dual, |v| self.scheme.is_zero_at_scale(v, &scale))
    }

    fn dual_is_zero(&self, j: usize) -> bool {
        let scale = self
            .dual
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rat::one);
        self.scheme.is_zero_at_scale(&self.dual[j], &scale)
    }
}

/// Hypothesis of the dual-side main theorem at offset w*: b_{w*} > 0 and
/// F_k F_l = 0 for every (k,l) in {0..w*+s}^2 with |k-l| >= w*+1.
pub fn check_qmainth_hypothesis(
    rest: &RestrictedIdempotents,
    w_star: usize,
    s: usize,
) -> Result<bool, InducedError> {
    let d = rest.scheme.num_classes();
    if w_star + s > d {
        return Err(InducedError::PreconditionFailed(format!(
            "w* = {w_star} out of range: w* + s must be <= d = {d}"
        )));
    }
    if rest.dual_is_zero(w_star) {
        return Err(InducedError::PreconditionFailed(format!(
            "b_{w_star} = 0: w* must index a nonzero dual entry"
        )));
    }
    for k in 0..=(w_star + s) {
        for l in 0..=(w_star + s) {
            if k.abs_diff(l) > w_star && !rest.product_is_zero(k, l) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct InducedSchemeReport {
    pub degree_set: Vec<usize>,
    pub degree: usize,
    /// the offset at which the hypothesis was established, if any
    pub w_star: Option<usize>,
    pub scheme: AssociationScheme,
    pub q_polynomial: bool,
    pub q_ordering: Option<Vec<usize>>,
    pub fully_verified: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct InduceOptions {
    /// build even when no admissible w* passes the hypothesis (diagnostics)
    pub force: bool,
    /// verify all triples regardless of subset size
    pub full_verify: bool,
    pub sampled_triples: u64,
    pub seed: u64,
}

impl Default for InduceOptions {
    fn default() -> Self {
        InduceOptions {
            force: false,
            full_verify: false,
            sampled_triples: 1_000_000,
            seed: 0x1db5,
        }
    }
}

const INDUCED_FULL_VERIFY_CAP: usize = 512;

/// Builds the scheme (C, R^C) whose relations are the realized relation
/// values of the subset, verifies the scheme axioms, and certifies a
/// Q-polynomial ordering. A hypothesis failure after the products vanished
/// falsifies the implementation, not the input.
pub fn induce_scheme(
    scheme: &AssociationScheme,
    subset: &[u64],
    options: InduceOptions,
) -> Result<InducedSchemeReport, InducedError> {
    let rest = RestrictedIdempotents::new(scheme, subset)?;
    let degree_set = rest.degree_set();
    let s = degree_set.len();
    let d = scheme.num_classes();
    if s == 0 {
        return Err(InducedError::PreconditionFailed(
            "subset has a single point; no relations to induce".into(),
        ));
    }

    let mut w_star = None;
    for w in 0..=(d.saturating_sub(s)) {
        if rest.dual_is_zero(w) {
            continue;
        }
        if check_qmainth_hypothesis(&rest, w, s)? {
            w_star = Some(w);
            break;
        }
    }
    if w_star.is_none() && !options.force {
        return Err(InducedError::HypothesisNotSatisfied);
    }

    // relabel realized relation values to 0..s
    let mut class_of = vec![usize::MAX; d + 1];
    class_of[0] = 0;
    for (idx, &l) in degree_set.iter().enumerate() {
        class_of[l] = idx + 1;
    }
    let c = subset.len();
    let flat: Vec<u8> = (0..c * c)
        .map(|xy| class_of[rest.rel[xy] as usize] as u8)
        .collect();
    let full = options.full_verify || c <= INDUCED_FULL_VERIFY_CAP;
    let policy = if full {
        VerifyPolicy::Full
    } else {
        VerifyPolicy::Sampled {
            sampled_triples: options.sampled_triples,
            seed: options.seed,
        }
    };
    let induced = match AssociationScheme::verify_flat(c, flat, policy) {
        Ok(sch) => sch,
        Err(e) => {
            return Err(if w_star.is_some() {
                InducedError::TheoremViolation(format!(
                    "hypothesis held at w* = {:?} but induced relations fail verification: {e}",
                    w_star
                ))
            } else {
                InducedError::NotAScheme(e)
            });
        }
    };
    let q_ordering = induced.q_polynomial_ordering().map(|o| o.to_vec());
    let q_polynomial = q_ordering.is_some();
    if w_star.is_some() && !q_polynomial {
        return Err(InducedError::TheoremViolation(format!(
            "hypothesis held at w* = {:?} but no Q-polynomial ordering exists",
            w_star
        )));
    }
    Ok(InducedSchemeReport {
        degree_set,
        degree: s,
        w_star,
        scheme: induced,
        q_polynomial,
        q_ordering,
        fully_verified: full,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::codes::extended_hamming_code;
    use crate::named::{hamming_scheme, johnson_scheme};

    #[test]
    fn whole_space_restriction_is_identityish() {
        let j = johnson_scheme(5, 2).unwrap();
        let all: Vec<u64> = (0..10).collect();
        let rest = RestrictedIdempotents::new(&j, &all).unwrap();
        // F_i = E_i: trace equals the multiplicity, and sum F_i = identity
        let mut total = RatMat::zero(10, 10);
        for i in 0..=2 {
            let f = rest.f_matrix(i).unwrap();
            assert!(f.is_symmetric());
            assert_eq!(f.trace(), Rat::from_integer(j.multiplicity(i).clone()));
            total = total.add(&f);
        }
        assert_eq!(total, RatMat::identity(10));
        // idempotency: E_i E_i = E_i, E_i E_j = 0
        for i in 0..=2 {
            let fi = rest.f_matrix(i).unwrap();
            assert_eq!(fi.mul(&fi), fi);
            for k in (i + 1)..=2 {
                let fk = rest.f_matrix(k).unwrap();
                assert!(fi.mul(&fk).is_zero());
            }
        }
    }

    #[test]
    fn restriction_sums_to_identity() {
        let h = hamming_scheme(8, 2).unwrap();
        let words = extended_hamming_code(3).words();
        let rest = RestrictedIdempotents::new(&h, &words).unwrap();
        let mut total = RatMat::zero(16, 16);
        for i in 0..=8 {
            total = total.add(&rest.f_matrix(i).unwrap());
        }
        assert_eq!(total, RatMat::identity(16));
    }

    #[test]
    fn gram_matches_dense_products() {
        let h = hamming_scheme(6, 2).unwrap();
        let c = [0u64, 0b111, 0b111000, 0b110110, 0b001011];
        let rest = RestrictedIdempotents::new(&h, &c).unwrap();
        for i in 0..=6 {
            for j in 0..=6 {
                let fi = rest.f_matrix(i).unwrap();
                let fj = rest.f_matrix(j).unwrap();
                assert_eq!(fi.mul(&fj).trace(), *rest.gram(i, j), "i={i} j={j}");
            }
        }
    }

    #[test]
    fn single_pair_induces_one_class_scheme() {
        let h = hamming_scheme(5, 2).unwrap();
        let pair = [0u64, 0b11111];
        let report = induce_scheme(&h, &pair, InduceOptions::default()).unwrap();
        assert_eq!(report.degree, 1);
        assert_eq!(report.scheme.num_classes(), 1);
        assert!(report.q_polynomial);
        assert_eq!(report.w_star, Some(0));
    }

    #[test]
    fn subcube_is_dual_width_extremal() {
        // C = F_2^3 x {000} inside H(6,2): dual width w* = 3, degree s = 3,
        // w* + s = d; the induced scheme is H(3,2)
        let h = hamming_scheme(6, 2).unwrap();
        let c: Vec<u64> = (0..8u64).collect();
        let rest = RestrictedIdempotents::new(&h, &c).unwrap();
        assert_eq!(rest.degree_set(), vec![1, 2, 3]);
        // b = 8 * (1,3,3,1,0,0,0)
        let expect: Vec<Rat> = [8, 24, 24, 8, 0, 0, 0].iter().map(|&v| rat(v)).collect();
        assert_eq!(rest.dual, expect);
        assert!(check_qmainth_hypothesis(&rest, 3, 3).unwrap());
        let report = induce_scheme(&h, &c, InduceOptions::default()).unwrap();
        assert_eq!(report.w_star, Some(3));
        assert!(report.q_polynomial);
        let h3 = hamming_scheme(3, 2).unwrap();
        for i in 0..=3 {
            for j in 0..=3 {
                for k in 0..=3 {
                    assert_eq!(report.scheme.p_number(i, j, k), h3.p_number(i, j, k));
                }
            }
        }
    }

    #[test]
    fn hypothesis_precondition() {
        let h = hamming_scheme(4, 2).unwrap();
        let pair = [0u64, 0b1111];
        let rest = RestrictedIdempotents::new(&h, &pair).unwrap();
        // b_1 = 0 for the antipodal pair
        assert!(matches!(
            check_qmainth_hypothesis(&rest, 1, 1),
            Err(InducedError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn non_qualifying_subset_without_force() {
        let h = hamming_scheme(4, 2).unwrap();
        // generic 3-subset: dual distribution has full support
        let c = [0u64, 1, 6];
        let err = induce_scheme(&h, &c, InduceOptions::default()).unwrap_err();
        assert!(matches!(err, InducedError::HypothesisNotSatisfied));
    }
}
