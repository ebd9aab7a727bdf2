//! Inner and dual distributions of a subset, degree and dual-degree sets,
//! maximal (dual) zero intervals, and the interval-length bound checks.

use crate::arith::{Int, Rat};
use crate::scheme::AssociationScheme;
use num::{One, Signed, Zero};
use rayon::prelude::*;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DistributionError {
    #[error("subset is empty")]
    EmptySubset,
    #[error("duplicate vertex {0}")]
    DuplicateVertex(u64),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(u64),
    #[error("negative dual distribution entry b[{j}] = {value}")]
    NegativeDual { j: usize, value: String },
}

/// A maximal run of zeros {w+1, ..., w+t} strictly inside indices 1..d.
/// `terminal` marks runs that reach index d (the width/dual-width case).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroInterval {
    pub w: usize,
    pub t: usize,
    pub terminal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Primal,
    Dual,
}

/// Verdict for one interval against its degree bound: interior intervals
/// are bounded by twice the (dual) degree, terminal ones by the (dual)
/// degree itself.
#[derive(Clone, Copy, Debug)]
pub struct BoundVerdict {
    pub side: Side,
    pub interval: ZeroInterval,
    pub bound: usize,
    pub satisfied: bool,
    pub gap: i64,
}

#[derive(Clone, Debug)]
pub struct SubsetAnalysis {
    pub subset_size: u64,
    pub inner: Vec<Rat>,
    pub dual: Vec<Rat>,
    pub degree_set: Vec<usize>,
    pub dual_degree_set: Vec<usize>,
    pub zero_intervals: Vec<ZeroInterval>,
    pub dual_zero_intervals: Vec<ZeroInterval>,
    pub bound_verdicts: Vec<BoundVerdict>,
}

impl SubsetAnalysis {
    pub fn degree(&self) -> usize {
        self.degree_set.len()
    }

    pub fn dual_degree(&self) -> usize {
        self.dual_degree_set.len()
    }

    pub fn has_bound_violation(&self) -> bool {
        self.bound_verdicts.iter().any(|v| !v.satisfied)
    }
}

pub fn validate_subset(scheme: &AssociationScheme, subset: &[u64]) -> Result<(), DistributionError> {
    if subset.is_empty() {
        return Err(DistributionError::EmptySubset);
    }
    let mut seen = HashSet::with_capacity(subset.len());
    for &x in subset {
        if x >= scheme.num_vertices() {
            return Err(DistributionError::VertexOutOfRange(x));
        }
        if !seen.insert(x) {
            return Err(DistributionError::DuplicateVertex(x));
        }
    }
    Ok(())
}

/// Ordered pair counts of the subset per relation class.
pub fn pair_counts(scheme: &AssociationScheme, subset: &[u64]) -> Vec<u64> {
    let d1 = scheme.num_classes() + 1;
    let decoded: Vec<_> = subset.iter().map(|&x| scheme.decode_vertex(x)).collect();
    if decoded.len() < 64 {
        let mut counts = vec![0u64; d1];
        for dx in &decoded {
            for dy in &decoded {
                counts[scheme.decoded_relation(dx, dy)] += 1;
            }
        }
        return counts;
    }
    decoded
        .par_iter()
        .fold(
            || vec![0u64; d1],
            |mut local, dx| {
                for dy in &decoded {
                    local[scheme.decoded_relation(dx, dy)] += 1;
                }
                local
            },
        )
        .reduce(
            || vec![0u64; d1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// a_i = |{(x,y) in C^2 : relation(x,y) = i}| / |C|, exact.
pub fn inner_distribution(
    scheme: &AssociationScheme,
    subset: &[u64],
) -> Result<Vec<Rat>, DistributionError> {
    validate_subset(scheme, subset)?;
    let counts = pair_counts(scheme, subset);
    let c = Int::from(subset.len() as u64);
    Ok(counts
        .into_iter()
        .map(|n| Rat::new(Int::from(n), c.clone()))
        .collect())
}

/// b_j = sum_i a_i Q[i][j] (the MacWilliams transform of the inner
/// distribution); b_0 = |C| and sum_j b_j = |X| hold identically.
pub fn dual_distribution(
    scheme: &AssociationScheme,
    inner: &[Rat],
) -> Result<Vec<Rat>, DistributionError> {
    let d1 = scheme.num_classes() + 1;
    assert_eq!(inner.len(), d1);
    let q = scheme.q_matrix();
    let mut b: Vec<Rat> = (0..d1)
        .map(|j| {
            let mut acc = Rat::zero();
            for i in 0..d1 {
                if !inner[i].is_zero() {
                    acc += &inner[i] * &q[(i, j)];
                }
            }
            acc
        })
        .collect();
    let scale = b.iter().map(|v| v.abs()).max().unwrap_or_else(Rat::one);
    for (j, v) in b.iter_mut().enumerate() {
        if v.is_negative() {
            if scheme.is_zero_at_scale(v, &scale) {
                *v = Rat::zero();
            } else {
                return Err(DistributionError::NegativeDual {
                    j,
                    value: v.to_string(),
                });
            }
        }
    }
    Ok(b)
}

/// All maximal zero runs within indices 1..d of the given sequence.
pub fn zero_intervals(values: &[Rat], is_zero: impl Fn(&Rat) -> bool) -> Vec<ZeroInterval> {
    let d = values.len() - 1;
    let mut out = Vec::new();
    let mut i = 1;
    while i <= d {
        if is_zero(&values[i]) {
            let start = i;
            while i <= d && is_zero(&values[i]) {
                i += 1;
            }
            out.push(ZeroInterval {
                w: start - 1,
                t: i - start,
                terminal: i == d + 1,
            });
        } else {
            i += 1;
        }
    }
    out
}

/// Full analysis of a subset: distributions, degree data, intervals, and
/// per-interval bound verdicts.
pub fn analyze_subset(
    scheme: &AssociationScheme,
    subset: &[u64],
) -> Result<SubsetAnalysis, DistributionError> {
    let inner = inner_distribution(scheme, subset)?;
    let dual = dual_distribution(scheme, &inner)?;
    Ok(analysis_from_distributions(
        scheme,
        subset.len() as u64,
        inner,
        dual,
    ))
}

pub fn analysis_from_distributions(
    scheme: &AssociationScheme,
    subset_size: u64,
    inner: Vec<Rat>,
    dual: Vec<Rat>,
) -> SubsetAnalysis {
    let d = scheme.num_classes();
    let degree_set: Vec<usize> = (1..=d).filter(|&i| !inner[i].is_zero()).collect();
    let dual_scale = dual.iter().map(|v| v.abs()).max().unwrap_or_else(Rat::one);
    let dual_degree_set: Vec<usize> = (1..=d)
        .filter(|&j| !scheme.is_zero_at_scale(&dual[j], &dual_scale))
        .collect();
    let zi = zero_intervals(&inner, |v| v.is_zero());
    let dzi = zero_intervals(&dual, |v| scheme.is_zero_at_scale(v, &dual_scale));
    let mut verdicts = Vec::new();
    let s = degree_set.len();
    let s_star = dual_degree_set.len();
    for &iv in &zi {
        let bound = if iv.terminal { s_star } else { 2 * s_star };
        verdicts.push(BoundVerdict {
            side: Side::Primal,
            interval: iv,
            bound,
            satisfied: iv.t <= bound,
            gap: bound as i64 - iv.t as i64,
        });
    }
    for &iv in &dzi {
        let bound = if iv.terminal { s } else { 2 * s };
        verdicts.push(BoundVerdict {
            side: Side::Dual,
            interval: iv,
            bound,
            satisfied: iv.t <= bound,
            gap: bound as i64 - iv.t as i64,
        });
    }
    SubsetAnalysis {
        subset_size,
        inner,
        dual,
        degree_set,
        dual_degree_set,
        zero_intervals: zi,
        dual_zero_intervals: dzi,
        bound_verdicts: verdicts,
    }
}

/// Inverse transform: (1/|X|) b P = a. Used as an involution check.
pub fn inverse_transform(scheme: &AssociationScheme, dual: &[Rat]) -> Vec<Rat> {
    let d1 = scheme.num_classes() + 1;
    let p = scheme.p_matrix();
    let size = Rat::from_integer(Int::from(scheme.num_vertices()));
    (0..d1)
        .map(|i| {
            let mut acc = Rat::zero();
            for j in 0..d1 {
                acc += &dual[j] * &p[(j, i)];
            }
            acc / &size
        })
        .collect()
}
