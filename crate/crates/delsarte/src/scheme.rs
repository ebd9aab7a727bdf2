//! Symmetric association schemes: axiom verification from an explicit
//! relation matrix, exact eigensystem via common eigenspaces of the
//! intersection matrices, Krein numbers, and P-/Q-polynomial ordering
//! search. Spectral data is exact rational whenever the eigenvalues are
//! rational; schemes with irrational eigenvalues fall back to a certified
//! floating-point mode.

use crate::arith::{binomial, rat_to_f64, Int, Rat};
use crate::matrix::{integer_roots_in_range, RatMat};
use num::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const APPROX_EPS: f64 = 1e-9;
pub const EXPLICIT_SIZE_CAP: u64 = 5000;
const FULL_VERIFY_CAP: usize = 512;

#[derive(Debug, Error)]
pub enum SchemeError {
    #[error("relation matrix is not square or malformed")]
    MalformedMatrix,
    #[error("relation matrix not symmetric at ({x},{y})")]
    NotSymmetric { x: u64, y: u64 },
    #[error("relation 0 is not the identity relation (witness ({x},{y}))")]
    DiagonalNotIdentityRelation { x: u64, y: u64 },
    #[error("relation class {0} has no pairs")]
    EmptyRelationClass(usize),
    #[error("inconsistent intersection number p[{i}][{j}][{k}] at pair ({x},{y})")]
    InconsistentIntersectionNumber {
        i: usize,
        j: usize,
        k: usize,
        x: u64,
        y: u64,
    },
    #[error("common eigenspaces could not be separated within tolerance")]
    EigensystemNotSeparated,
    #[error("negative Krein number q[{i}][{j}][{k}] = {value}")]
    NegativeKrein {
        i: usize,
        j: usize,
        k: usize,
        value: String,
    },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("scheme too large: {size} vertices exceeds cap {cap}")]
    SchemeTooLarge { size: u64, cap: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NumberMode {
    Exact,
    Approx { eps: f64 },
}

impl NumberMode {
    pub fn is_exact(&self) -> bool {
        matches!(self, NumberMode::Exact)
    }
}

/// How thoroughly `verify_explicit` checks intersection-number consistency.
#[derive(Clone, Copy, Debug)]
pub enum VerifyPolicy {
    /// Every pair of vertices (O(n^3) work).
    Full,
    /// All diagonal pairs plus `sampled_triples` random (x,y,i,j) checks.
    Sampled { sampled_triples: u64, seed: u64 },
    /// Full below a size cutoff, sampled above it.
    Auto,
}

#[derive(Clone, Debug)]
pub struct Tensor3<T> {
    pub dim: usize,
    data: Vec<T>,
}

impl<T: Clone + Default> Tensor3<T> {
    pub fn new(dim: usize) -> Self {
        Tensor3 {
            dim,
            data: vec![T::default(); dim * dim * dim],
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &T {
        &self.data[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: T) {
        self.data[(i * self.dim + j) * self.dim + k] = v;
    }
}

/// Vertex set with an implicit or explicit relation function.
#[derive(Clone, Debug)]
pub enum VertexSet {
    Explicit { n: usize, relations: Vec<u8> },
    Hamming { n: u32, q: u32 },
    Johnson { v: u32, k: u32 },
}

/// A decoded vertex for O(1)-ish pair relations in hot loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoded {
    Bits(u64),
    Digits(Vec<u8>),
    Mask(u64),
    Index(usize),
}

#[derive(Clone, Debug)]
pub struct AssociationScheme {
    vertices: VertexSet,
    d: usize,
    size: u64,
    p: Tensor3<Int>,
    valencies: Vec<Int>,
    p_mat: RatMat,
    q_mat: RatMat,
    multiplicities: Vec<Int>,
    krein: Tensor3<Rat>,
    mode: NumberMode,
    p_ordering: Option<Vec<usize>>,
    q_ordering: Option<Vec<usize>>,
}

impl AssociationScheme {
    pub fn num_classes(&self) -> usize {
        self.d
    }

    pub fn num_vertices(&self) -> u64 {
        self.size
    }

    pub fn number_mode(&self) -> NumberMode {
        self.mode
    }

    pub fn p_number(&self, i: usize, j: usize, k: usize) -> &Int {
        self.p.get(i, j, k)
    }

    pub fn intersection_numbers(&self) -> &Tensor3<Int> {
        &self.p
    }

    pub fn valency(&self, i: usize) -> &Int {
        &self.valencies[i]
    }

    pub fn valencies(&self) -> &[Int] {
        &self.valencies
    }

    /// First eigenmatrix: row = eigenspace, column = relation.
    pub fn p_matrix(&self) -> &RatMat {
        &self.p_mat
    }

    /// Second eigenmatrix, PQ = |X| I.
    pub fn q_matrix(&self) -> &RatMat {
        &self.q_mat
    }

    pub fn multiplicity(&self, j: usize) -> &Int {
        &self.multiplicities[j]
    }

    pub fn multiplicities(&self) -> &[Int] {
        &self.multiplicities
    }

    pub fn krein_number(&self, i: usize, j: usize, k: usize) -> &Rat {
        self.krein.get(i, j, k)
    }

    pub fn krein_numbers(&self) -> &Tensor3<Rat> {
        &self.krein
    }

    pub fn p_polynomial_ordering(&self) -> Option<&[usize]> {
        self.p_ordering.as_deref()
    }

    pub fn q_polynomial_ordering(&self) -> Option<&[usize]> {
        self.q_ordering.as_deref()
    }

    pub fn vertex_set(&self) -> &VertexSet {
        &self.vertices
    }

    /// Mode-aware zero test at a given magnitude scale.
    pub fn is_zero_at_scale(&self, v: &Rat, scale: &Rat) -> bool {
        match self.mode {
            NumberMode::Exact => v.is_zero(),
            NumberMode::Approx { eps } => {
                let bound = rat_to_f64(scale).abs() * eps;
                rat_to_f64(v).abs() <= bound
            }
        }
    }

    pub fn relation_of(&self, x: u64, y: u64) -> usize {
        let a = self.decode_vertex(x);
        let b = self.decode_vertex(y);
        self.decoded_relation(&a, &b)
    }

    pub fn decode_vertex(&self, x: u64) -> Decoded {
        match &self.vertices {
            VertexSet::Explicit { .. } => Decoded::Index(x as usize),
            VertexSet::Hamming { n, q } => {
                if *q == 2 {
                    Decoded::Bits(x)
                } else {
                    let mut digits = vec![0u8; *n as usize];
                    let mut v = x;
                    for dd in digits.iter_mut() {
                        *dd = (v % *q as u64) as u8;
                        v /= *q as u64;
                    }
                    Decoded::Digits(digits)
                }
            }
            VertexSet::Johnson { k, .. } => Decoded::Mask(johnson_unrank(x, *k)),
        }
    }

    pub fn decoded_relation(&self, a: &Decoded, b: &Decoded) -> usize {
        match (&self.vertices, a, b) {
            (VertexSet::Explicit { n, relations }, Decoded::Index(x), Decoded::Index(y)) => {
                relations[x * n + y] as usize
            }
            (VertexSet::Hamming { .. }, Decoded::Bits(x), Decoded::Bits(y)) => {
                (x ^ y).count_ones() as usize
            }
            (VertexSet::Hamming { .. }, Decoded::Digits(x), Decoded::Digits(y)) => {
                x.iter().zip(y.iter()).filter(|(u, v)| u != v).count()
            }
            (VertexSet::Johnson { k, .. }, Decoded::Mask(x), Decoded::Mask(y)) => {
                *k as usize - (x & y).count_ones() as usize
            }
            _ => panic!("decoded vertex does not belong to this scheme"),
        }
    }

    /// Verifies an explicit relation matrix and computes all spectral data.
    pub fn verify_explicit(relations: &[Vec<u8>]) -> Result<Self, SchemeError> {
        Self::verify_explicit_with(relations, VerifyPolicy::Auto)
    }

    pub fn verify_explicit_with(
        relations: &[Vec<u8>],
        policy: VerifyPolicy,
    ) -> Result<Self, SchemeError> {
        let n = relations.len();
        if n < 2 || relations.iter().any(|r| r.len() != n) {
            return Err(SchemeError::MalformedMatrix);
        }
        if n as u64 > EXPLICIT_SIZE_CAP {
            return Err(SchemeError::SchemeTooLarge {
                size: n as u64,
                cap: EXPLICIT_SIZE_CAP,
            });
        }
        let flat: Vec<u8> = relations.iter().flatten().copied().collect();
        Self::verify_flat(n, flat, policy)
    }

    pub(crate) fn verify_flat(
        n: usize,
        flat: Vec<u8>,
        policy: VerifyPolicy,
    ) -> Result<Self, SchemeError> {
        let rel = |x: usize, y: usize| flat[x * n + y] as usize;
        for x in 0..n {
            if rel(x, x) != 0 {
                return Err(SchemeError::DiagonalNotIdentityRelation {
                    x: x as u64,
                    y: x as u64,
                });
            }
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if rel(x, y) != rel(y, x) {
                    return Err(SchemeError::NotSymmetric {
                        x: x as u64,
                        y: y as u64,
                    });
                }
                if rel(x, y) == 0 {
                    return Err(SchemeError::DiagonalNotIdentityRelation {
                        x: x as u64,
                        y: y as u64,
                    });
                }
            }
        }
        let d = flat.iter().map(|&v| v as usize).max().unwrap_or(0);
        if d < 1 {
            return Err(SchemeError::MalformedMatrix);
        }
        let d1 = d + 1;

        // witness pair per class, row-major
        let mut witness: Vec<Option<(usize, usize)>> = vec![None; d1];
        witness[0] = Some((0, 0));
        for x in 0..n {
            for y in 0..n {
                let k = rel(x, y);
                if witness[k].is_none() {
                    witness[k] = Some((x, y));
                }
            }
        }
        for (k, w) in witness.iter().enumerate() {
            if w.is_none() {
                return Err(SchemeError::EmptyRelationClass(k));
            }
        }

        // candidate intersection numbers from witnesses
        let count_pair = |x: usize, y: usize| -> Vec<u64> {
            let mut counts = vec![0u64; d1 * d1];
            for z in 0..n {
                counts[rel(x, z) * d1 + rel(z, y)] += 1;
            }
            counts
        };
        let mut p = Tensor3::<Int>::new(d1);
        for k in 0..d1 {
            let (x, y) = witness[k].unwrap();
            let counts = count_pair(x, y);
            for i in 0..d1 {
                for j in 0..d1 {
                    p.set(i, j, k, Int::from(counts[i * d1 + j]));
                }
            }
        }

        let check_pair = |x: usize, y: usize| -> Result<(), SchemeError> {
            let k = rel(x, y);
            let counts = count_pair(x, y);
            for i in 0..d1 {
                for j in 0..d1 {
                    if *p.get(i, j, k) != Int::from(counts[i * d1 + j]) {
                        return Err(SchemeError::InconsistentIntersectionNumber {
                            i,
                            j,
                            k,
                            x: x as u64,
                            y: y as u64,
                        });
                    }
                }
            }
            Ok(())
        };

        // diagonal pairs always (valency constancy), then full or sampled
        for x in 0..n {
            check_pair(x, x)?;
        }
        let effective = match policy {
            VerifyPolicy::Auto => {
                if n <= FULL_VERIFY_CAP {
                    VerifyPolicy::Full
                } else {
                    VerifyPolicy::Sampled {
                        sampled_triples: 1_000_000,
                        seed: 0x5eed,
                    }
                }
            }
            other => other,
        };
        match effective {
            VerifyPolicy::Full => {
                for x in 0..n {
                    for y in 0..n {
                        if x != y {
                            check_pair(x, y)?;
                        }
                    }
                }
            }
            VerifyPolicy::Sampled {
                sampled_triples,
                seed,
            } => {
                let pairs = sampled_triples.div_ceil((d1 * d1) as u64);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..pairs {
                    let x = rng.gen_range(0..n);
                    let y = rng.gen_range(0..n);
                    check_pair(x, y)?;
                }
            }
            VerifyPolicy::Auto => unreachable!(),
        }

        let valencies: Vec<Int> = (0..d1).map(|i| p.get(i, i, 0).clone()).collect();
        let total: Int = valencies.iter().sum();
        if total != Int::from(n as u64) {
            return Err(SchemeError::MalformedMatrix);
        }

        let (p_mat, q_mat, multiplicities, mode) =
            eigensystem_from_intersections(&p, &valencies, n as u64)?;
        let krein = krein_tensor(&p_mat, &q_mat, n as u64, mode)?;
        let mut scheme = AssociationScheme {
            vertices: VertexSet::Explicit { n, relations: flat },
            d,
            size: n as u64,
            p,
            valencies,
            p_mat,
            q_mat,
            multiplicities,
            krein,
            mode,
            p_ordering: None,
            q_ordering: None,
        };
        let (po, qo) = scheme.find_polynomial_orderings();
        scheme.p_ordering = po;
        scheme.q_ordering = qo;
        Ok(scheme)
    }

    /// Assembles a scheme from closed-form data (named families, trusted).
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_closed_form(
        vertices: VertexSet,
        size: u64,
        p: Tensor3<Int>,
        valencies: Vec<Int>,
        p_mat: RatMat,
        q_mat: RatMat,
        multiplicities: Vec<Int>,
        krein: Tensor3<Rat>,
        p_ordering: Option<Vec<usize>>,
        q_ordering: Option<Vec<usize>>,
    ) -> Self {
        let d = p.dim - 1;
        AssociationScheme {
            vertices,
            d,
            size,
            p,
            valencies,
            p_mat,
            q_mat,
            multiplicities,
            krein,
            mode: NumberMode::Exact,
            p_ordering,
            q_ordering,
        }
    }

    /// Searches for P- and Q-polynomial orderings (index 0 fixed). A valid
    /// ordering is a relabeling under which the first class's parameters are
    /// tridiagonal with positive off-diagonal; the chain after the first
    /// class is forced, so the search is polynomial in d.
    pub fn find_polynomial_orderings(&self) -> (Option<Vec<usize>>, Option<Vec<usize>>) {
        let d1 = self.d + 1;
        let p_scale = self.tensor_scale_p();
        let p_ord = find_tridiagonal_ordering(d1, |c, j, k| {
            let v = Rat::from_integer(self.p.get(c, j, k).clone());
            self.tensor_sign(&v, &p_scale)
        });
        let q_scale = self.tensor_scale_q();
        let q_ord = find_tridiagonal_ordering(d1, |c, j, k| {
            self.tensor_sign(self.krein.get(c, j, k), &q_scale)
        });
        (p_ord, q_ord)
    }

    fn tensor_scale_p(&self) -> Rat {
        Rat::from_integer(self.valencies.iter().max().cloned().unwrap_or_else(Int::one))
    }

    fn tensor_scale_q(&self) -> Rat {
        let mut scale = Rat::one();
        for i in 0..=self.d {
            for j in 0..=self.d {
                for k in 0..=self.d {
                    let v = self.krein.get(i, j, k).abs();
                    if v > scale {
                        scale = v;
                    }
                }
            }
        }
        scale
    }

    fn tensor_sign(&self, v: &Rat, scale: &Rat) -> i8 {
        if self.is_zero_at_scale(v, scale) {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Re-counts p[i][j][k] on random triples; used by tests and diagnostics.
    pub fn spot_check_intersections(&self, samples: usize, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.size;
        for _ in 0..samples {
            let x = rng.gen_range(0..n);
            let y = rng.gen_range(0..n);
            let k = self.relation_of(x, y);
            let i = rng.gen_range(0..=self.d);
            let j = rng.gen_range(0..=self.d);
            let mut count = 0u64;
            let dx = self.decode_vertex(x);
            let dy = self.decode_vertex(y);
            for z in 0..n {
                let dz = self.decode_vertex(z);
                if self.decoded_relation(&dx, &dz) == i && self.decoded_relation(&dz, &dy) == j {
                    count += 1;
                }
            }
            if *self.p.get(i, j, k) != Int::from(count) {
                return false;
            }
        }
        true
    }
}

/// Exact eigensystem when all eigenvalues are rational, certified
/// floating-point otherwise.
pub(crate) fn eigensystem_from_intersections(
    p: &Tensor3<Int>,
    valencies: &[Int],
    size: u64,
) -> Result<(RatMat, RatMat, Vec<Int>, NumberMode), SchemeError> {
    if let Some((p_mat, q_mat, mults)) = exact_eigensystem(p, valencies, size) {
        return Ok((p_mat, q_mat, mults, NumberMode::Exact));
    }
    approx_eigensystem(p, valencies, size)
        .map(|(pm, qm, m)| (pm, qm, m, NumberMode::Approx { eps: APPROX_EPS }))
}

fn intersection_matrices(p: &Tensor3<Int>) -> Vec<RatMat> {
    let d1 = p.dim;
    (0..d1)
        .map(|i| RatMat::from_fn(d1, d1, |j, k| Rat::from_integer(p.get(i, k, j).clone())))
        .collect()
}

fn exact_eigensystem(
    p: &Tensor3<Int>,
    valencies: &[Int],
    size: u64,
) -> Option<(RatMat, RatMat, Vec<Int>)> {
    let d1 = p.dim;
    let ls = intersection_matrices(p);
    let mut spaces: Vec<RatMat> = vec![RatMat::identity(d1)];
    for i in 1..d1 {
        if spaces.iter().all(|s| s.cols == 1) {
            break;
        }
        let cp = ls[i].charpoly();
        let ki = valencies[i].to_i64()?;
        let roots = integer_roots_in_range(&cp, -ki, ki);
        let mut next = Vec::new();
        for b in spaces {
            if b.cols == 1 {
                next.push(b);
                continue;
            }
            let mut found = 0usize;
            for (root, _) in &roots {
                let mut shifted = ls[i].clone();
                for t in 0..d1 {
                    shifted[(t, t)] -= Rat::from_integer(root.clone());
                }
                let m = shifted.mul(&b);
                let ker = m.kernel();
                if !ker.is_empty() {
                    let k_mat = RatMat::from_fn(b.cols, ker.len(), |r, c| ker[c][r].clone());
                    next.push(b.mul(&k_mat));
                    found += ker.len();
                }
            }
            if found != b.cols {
                return None; // irrational eigenvalue in this subspace
            }
        }
        spaces = next;
    }
    if spaces.len() != d1 || spaces.iter().any(|s| s.cols != 1) {
        return None;
    }
    // read off eigenvalue rows
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(d1);
    for space in &spaces {
        let v: Vec<Rat> = (0..d1).map(|r| space[(r, 0)].clone()).collect();
        let nz = v.iter().position(|x| !x.is_zero()).unwrap();
        let mut row = Vec::with_capacity(d1);
        for l in &ls {
            let lv = l.mul_vec(&v);
            row.push(&lv[nz] / &v[nz]);
        }
        rows.push(row);
    }
    order_rows_and_invert(rows, valencies, size)
}

fn order_rows_and_invert(
    mut rows: Vec<Vec<Rat>>,
    valencies: &[Int],
    size: u64,
) -> Option<(RatMat, RatMat, Vec<Int>)> {
    let d1 = rows.len();
    let val_row: Vec<Rat> = valencies.iter().map(|k| Rat::from_integer(k.clone())).collect();
    let pos = rows.iter().position(|r| *r == val_row)?;
    let trivial = rows.swap_remove(pos);
    rows.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut all = vec![trivial];
    all.extend(rows);
    let p_mat = RatMat::from_rows(all);
    let q_mat = p_mat
        .inverse()?
        .scale(&Rat::from_integer(Int::from(size)));
    let mut mults = Vec::with_capacity(d1);
    let mut total = Int::zero();
    for j in 0..d1 {
        let m = &q_mat[(0, j)];
        if !m.denom().is_one() || !m.numer().is_positive() {
            return None;
        }
        total += m.numer();
        mults.push(m.numer().clone());
    }
    if total != Int::from(size) {
        return None;
    }
    Some((p_mat, q_mat, mults))
}

/// Jacobi-based eigensystem for schemes with irrational eigenvalues. The
/// intersection matrices are simultaneously similar to symmetric matrices
/// via conjugation by diag(sqrt k_i).
fn approx_eigensystem(
    p: &Tensor3<Int>,
    valencies: &[Int],
    size: u64,
) -> Result<(RatMat, RatMat, Vec<Int>), SchemeError> {
    let d1 = p.dim;
    let kf: Vec<f64> = valencies.iter().map(|v| v.to_f64().unwrap()).collect();
    let ms: Vec<Vec<Vec<f64>>> = (0..d1)
        .map(|i| {
            (0..d1)
                .map(|j| {
                    (0..d1)
                        .map(|k| {
                            (kf[j] / kf[k]).sqrt() * p.get(i, k, j).to_f64().unwrap()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let scale = kf.iter().cloned().fold(1.0, f64::max);
    for attempt in 0..16u64 {
        // deterministic pseudo-random combination
        let mut state = attempt.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        let coeffs: Vec<f64> = (0..d1)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
            })
            .collect();
        let mut t = vec![vec![0.0; d1]; d1];
        for i in 0..d1 {
            for r in 0..d1 {
                for c in 0..d1 {
                    t[r][c] += coeffs[i] * ms[i][r][c];
                }
            }
        }
        let (vals, vecs) = jacobi_symmetric(&t);
        // require separated eigenvalues
        let mut sorted = vals.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let sep = sorted
            .windows(2)
            .map(|w| (w[1] - w[0]).abs())
            .fold(f64::INFINITY, f64::min);
        if d1 > 1 && sep < 1e-6 * scale {
            continue;
        }
        // Rayleigh values per intersection matrix
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(d1);
        let mut ok = true;
        for v in &vecs {
            let mut row = Vec::with_capacity(d1);
            for mi in &ms {
                let mv: Vec<f64> = (0..d1)
                    .map(|r| (0..d1).map(|c| mi[r][c] * v[c]).sum())
                    .collect();
                let lambda: f64 = (0..d1).map(|r| v[r] * mv[r]).sum::<f64>()
                    / (0..d1).map(|r| v[r] * v[r]).sum::<f64>();
                let resid = (0..d1)
                    .map(|r| (mv[r] - lambda * v[r]).abs())
                    .fold(0.0, f64::max);
                if resid > 1e-7 * scale.max(lambda.abs()) {
                    ok = false;
                }
                row.push(lambda);
            }
            rows.push(row);
        }
        if !ok {
            continue;
        }
        // trivial row first, rest sorted descending
        let kf_row = &kf;
        let pos = rows
            .iter()
            .position(|r| {
                r.iter()
                    .zip(kf_row.iter())
                    .all(|(a, b)| (a - b).abs() <= 1e-6 * scale)
            })
            .ok_or(SchemeError::EigensystemNotSeparated)?;
        let trivial: Vec<Rat> = kf_row
            .iter()
            .map(|&v| Rat::from_integer(Int::from(v.round() as i64)))
            .collect();
        rows.swap_remove(pos);
        rows.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mut all_rows = vec![trivial];
        for r in rows {
            all_rows.push(
                r.into_iter()
                    .map(|x| Rat::from_float(x).unwrap_or_else(Rat::zero))
                    .collect(),
            );
        }
        let p_mat = RatMat::from_rows(all_rows);
        let Some(inv) = p_mat.inverse() else { continue };
        let q_mat = inv.scale(&Rat::from_integer(Int::from(size)));
        let mut mults = Vec::with_capacity(d1);
        let mut good = true;
        let mut total = Int::zero();
        for j in 0..d1 {
            let mf = rat_to_f64(&q_mat[(0, j)]);
            let rounded = mf.round();
            if (mf - rounded).abs() > APPROX_EPS * size as f64 || rounded < 1.0 {
                good = false;
                break;
            }
            total += Int::from(rounded as i64);
            mults.push(Int::from(rounded as i64));
        }
        if !good || total != Int::from(size) {
            continue;
        }
        return Ok((p_mat, q_mat, mults));
    }
    Err(SchemeError::EigensystemNotSeparated)
}

/// Cyclic Jacobi eigensolver for a small symmetric matrix. Returns
/// (eigenvalues, eigenvectors) with vectors[m] the m-th eigenvector.
pub fn jacobi_symmetric(a: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m[i][j] * m[i][j];
            }
        }
        if off < 1e-28 {
            break;
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if m[i][j].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[j][j] - m[i][i]) / (2.0 * m[i][j]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mik, mjk) = (m[i][k], m[j][k]);
                    m[i][k] = c * mik - s * mjk;
                    m[j][k] = s * mik + c * mjk;
                }
                for k in 0..n {
                    let (mki, mkj) = (m[k][i], m[k][j]);
                    m[k][i] = c * mki - s * mkj;
                    m[k][j] = s * mki + c * mkj;
                }
                for k in 0..n {
                    let (vki, vkj) = (v[k][i], v[k][j]);
                    v[k][i] = c * vki - s * vkj;
                    v[k][j] = s * vki + c * vkj;
                }
            }
        }
    }
    let vals: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    let vecs: Vec<Vec<f64>> = (0..n).map(|c| (0..n).map(|r| v[r][c]).collect()).collect();
    (vals, vecs)
}

/// Krein numbers from the eigenmatrices:
/// q[i][j][k] = (1/|X|) sum_l P[k][l] Q[l][i] Q[l][j].
pub(crate) fn krein_tensor(
    p_mat: &RatMat,
    q_mat: &RatMat,
    size: u64,
    mode: NumberMode,
) -> Result<Tensor3<Rat>, SchemeError> {
    let d1 = p_mat.rows;
    let size_r = Rat::from_integer(Int::from(size));
    let mut raw = Tensor3::<Rat>::new(d1);
    let mut scale = Rat::one();
    for i in 0..d1 {
        for j in i..d1 {
            for k in 0..d1 {
                let mut acc = Rat::zero();
                for l in 0..d1 {
                    acc += &p_mat[(k, l)] * &q_mat[(l, i)] * &q_mat[(l, j)];
                }
                acc /= &size_r;
                if acc.abs() > scale {
                    scale = acc.abs();
                }
                raw.set(i, j, k, acc.clone());
                raw.set(j, i, k, acc);
            }
        }
    }
    if let NumberMode::Approx { eps } = mode {
        let bound = rat_to_f64(&scale) * eps;
        for i in 0..d1 {
            for j in 0..d1 {
                for k in 0..d1 {
                    let v = raw.get(i, j, k).clone();
                    let f = rat_to_f64(&v);
                    if f.abs() <= bound {
                        raw.set(i, j, k, Rat::zero());
                    } else if f < 0.0 {
                        return Err(SchemeError::NegativeKrein {
                            i,
                            j,
                            k,
                            value: f.to_string(),
                        });
                    }
                }
            }
        }
    } else {
        for i in 0..d1 {
            for j in 0..d1 {
                for k in 0..d1 {
                    if raw.get(i, j, k).is_negative() {
                        return Err(SchemeError::NegativeKrein {
                            i,
                            j,
                            k,
                            value: raw.get(i, j, k).to_string(),
                        });
                    }
                }
            }
        }
    }
    Ok(raw)
}

/// Generic tridiagonal-support ordering search shared by the P and Q sides.
/// `sign(c, j, k)` reports the sign of the structure constant with first
/// class c. Returns the lexicographically smallest valid ordering.
fn find_tridiagonal_ordering(d1: usize, sign: impl Fn(usize, usize, usize) -> i8) -> Option<Vec<usize>> {
    'cand: for c in 1..d1 {
        let mut ord = vec![0usize, c];
        let mut used = vec![false; d1];
        used[0] = true;
        used[c] = true;
        while ord.len() < d1 {
            let last = *ord.last().unwrap();
            let mut next = None;
            for k in 0..d1 {
                if !used[k] && sign(c, last, k) > 0 {
                    if next.is_some() {
                        continue 'cand; // two unused neighbours: impossible
                    }
                    next = Some(k);
                }
            }
            let Some(k) = next else { continue 'cand };
            used[k] = true;
            ord.push(k);
        }
        // full tridiagonality check
        let mut ok = true;
        'check: for j in 0..d1 {
            for k in 0..d1 {
                let s = sign(c, ord[j], ord[k]);
                let dist = j.abs_diff(k);
                if dist > 1 && s != 0 {
                    ok = false;
                    break 'check;
                }
                if dist == 1 && s <= 0 {
                    ok = false;
                    break 'check;
                }
            }
        }
        if ok {
            return Some(ord);
        }
    }
    None
}

/// Colex rank of the k-subset encoded as a bitmask.
pub fn johnson_rank(mask: u64) -> u64 {
    let mut rank = 0u64;
    let mut idx = 1i64;
    let mut m = mask;
    while m != 0 {
        let bit = m.trailing_zeros() as i64;
        rank += binomial(bit, idx).to_u64().unwrap();
        m &= m - 1;
        idx += 1;
    }
    rank
}

/// Inverse of `johnson_rank` for k-subsets.
pub fn johnson_unrank(mut rank: u64, k: u32) -> u64 {
    let mut mask = 0u64;
    for i in (1..=k as i64).rev() {
        // largest m with C(m, i) <= rank
        let mut m = i - 1;
        while binomial(m + 1, i).to_u64().unwrap() <= rank {
            m += 1;
        }
        mask |= 1u64 << m;
        rank -= binomial(m, i).to_u64().unwrap();
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn petersen_relations() -> Vec<Vec<u8>> {
        // vertices: 2-subsets of {0..4}; relation 1 = disjoint (adjacent in
        // the Petersen graph), relation 2 = intersecting
        let verts: Vec<(usize, usize)> = (0..5)
            .flat_map(|a| ((a + 1)..5).map(move |b| (a, b)))
            .collect();
        let n = verts.len();
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        if x == y {
                            0
                        } else {
                            let (a, b) = verts[x];
                            let (c, d) = verts[y];
                            let inter = [a, b].iter().filter(|v| **v == c || **v == d).count();
                            if inter == 0 {
                                1
                            } else {
                                2
                            }
                        }
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn one_class_scheme_on_two_points() {
        let scheme = AssociationScheme::verify_explicit(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(scheme.num_classes(), 1);
        assert_eq!(scheme.valencies(), &[Int::from(1), Int::from(1)]);
        let p = scheme.p_matrix();
        assert_eq!(p[(0, 0)], rat(1));
        assert_eq!(p[(0, 1)], rat(1));
        assert_eq!(p[(1, 0)], rat(1));
        assert_eq!(p[(1, 1)], rat(-1));
    }

    #[test]
    fn petersen_scheme() {
        let scheme = AssociationScheme::verify_explicit(&petersen_relations()).unwrap();
        assert_eq!(scheme.num_classes(), 2);
        assert_eq!(*scheme.p_number(1, 1, 1), Int::zero());
        assert_eq!(*scheme.p_number(1, 1, 2), Int::one());
        let p = scheme.p_matrix();
        let expect = [[1, 3, 6], [1, 1, -2], [1, -2, 1]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p[(i, j)], rat(expect[i][j]));
            }
        }
        assert_eq!(
            scheme.multiplicities(),
            &[Int::from(1), Int::from(5), Int::from(4)]
        );
        assert!(scheme.number_mode().is_exact());
        // all Krein numbers non-negative (already enforced) and both orderings exist
        assert!(scheme.p_polynomial_ordering().is_some());
        assert!(scheme.q_polynomial_ordering().is_some());
        assert_eq!(scheme.p_polynomial_ordering().unwrap(), &[0, 1, 2]);
        assert!(scheme.spot_check_intersections(100, 7));
        // q[0][j][k] = delta_jk under the fixed normalization
        for j in 0..3 {
            for k in 0..3 {
                let expect = if j == k { Rat::one() } else { Rat::zero() };
                assert_eq!(*scheme.krein_number(0, j, k), expect);
            }
        }
    }

    #[test]
    fn asymmetric_matrix_rejected() {
        let err = AssociationScheme::verify_explicit(&[
            vec![0, 1, 1],
            vec![1, 0, 2],
            vec![1, 1, 0],
        ])
        .unwrap_err();
        assert!(matches!(err, SchemeError::NotSymmetric { .. }));
    }

    #[test]
    fn inconsistent_counts_rejected() {
        // path graph P3 distances are not an association scheme? they are
        // (it is H(2,2)-like? no) — use a genuine violation: C4 with a chord
        // distances: build a non-regular graph distance matrix
        let rels = vec![
            vec![0, 1, 1, 2],
            vec![1, 0, 1, 1],
            vec![1, 1, 0, 1],
            vec![2, 1, 1, 0],
        ];
        let err = AssociationScheme::verify_explicit(&rels).unwrap_err();
        assert!(matches!(
            err,
            SchemeError::InconsistentIntersectionNumber { .. }
        ));
    }

    #[test]
    fn group_scheme_z2xz2_has_no_polynomial_ordering() {
        // relation(x, y) = x xor y over F_2^2: three classes of valency 1
        let rels: Vec<Vec<u8>> = (0..4u8)
            .map(|x| (0..4u8).map(|y| x ^ y).collect())
            .collect();
        let scheme = AssociationScheme::verify_explicit(&rels).unwrap();
        assert_eq!(scheme.num_classes(), 3);
        assert!(scheme.p_polynomial_ordering().is_none());
        assert!(scheme.q_polynomial_ordering().is_none());
    }

    #[test]
    fn pentagon_uses_approx_mode() {
        // C5 distances: eigenvalues are irrational, so the scheme lands in
        // certified approximate mode with correct multiplicities
        let n = 5usize;
        let rels: Vec<Vec<u8>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let diff = (x as i32 - y as i32).rem_euclid(n as i32).min(
                            (y as i32 - x as i32).rem_euclid(n as i32),
                        );
                        diff as u8
                    })
                    .collect()
            })
            .collect();
        let scheme = AssociationScheme::verify_explicit(&rels).unwrap();
        assert!(!scheme.number_mode().is_exact());
        assert_eq!(
            scheme.multiplicities(),
            &[Int::from(1), Int::from(2), Int::from(2)]
        );
        assert!(scheme.p_polynomial_ordering().is_some());
        assert!(scheme.q_polynomial_ordering().is_some());
    }

    #[test]
    fn johnson_rank_round_trip() {
        for rank in 0..70u64 {
            let mask = johnson_unrank(rank, 4);
            assert_eq!(mask.count_ones(), 4);
            assert_eq!(johnson_rank(mask), rank);
        }
    }
}
