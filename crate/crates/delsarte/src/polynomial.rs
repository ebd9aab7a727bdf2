//! Orthogonal polynomial systems attached to the eigenmatrices, annihilator
//! polynomials, basis expansions, and the characteristic identities tying
//! annihilators to the inner/dual distributions.

use crate::arith::{Int, Rat};
use crate::distribution::SubsetAnalysis;
use crate::scheme::AssociationScheme;
use num::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolynomialError {
    #[error("scheme has no {0}-polynomial ordering")]
    NotPolynomialScheme(&'static str),
    #[error("operation requires exact number mode")]
    NotExactMode,
    #[error("repeated root index {0}")]
    RepeatedRoot(usize),
    #[error("root index {0} out of range")]
    RootOutOfRange(usize),
    #[error("polynomial degree {deg} exceeds class count {d}")]
    DegreeTooLarge { deg: usize, d: usize },
    #[error("polynomial does not vanish on the degree set (index {0})")]
    NotAnnihilator(usize),
}

/// Which eigenvalue grid a polynomial lives on.
///
/// `Primal`: the grid of eigenvalues theta_i = P[i][s(1)] with the basis
/// {v_k} from the intersection numbers; polynomials vanishing on the dual
/// degree set here are the dual annihilators of a subset.
/// `Dual`: the grid of dual eigenvalues theta*_l = Q[l][t(1)] with the basis
/// {v*_k} from the Krein numbers; polynomials vanishing on the degree set
/// here are the annihilators of a subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridSide {
    Primal,
    Dual,
}

#[derive(Clone, Debug)]
pub struct OrthoPolySystem {
    pub side: GridSide,
    pub ordering: Vec<usize>,
    /// coeffs[i] = monomial coefficients of v_i (length i+1), exact.
    pub coeffs: Vec<Vec<Rat>>,
    /// grid[j] = theta_j (primal: per eigenspace; dual: per relation).
    pub grid: Vec<Rat>,
    /// values[i][j] = v_i(grid[j]), equal to the eigenmatrix column s(i).
    pub values: Vec<Vec<Rat>>,
}

pub fn poly_eval(coeffs: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    out
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

/// Builds the orthogonal polynomials from the three-term recurrence of the
/// (relabeled) intersection or Krein parameters:
/// x v_i = b_{i-1} v_{i-1} + a_i v_i + c_{i+1} v_{i+1}.
pub fn drg_ortho_polys(
    scheme: &AssociationScheme,
    side: GridSide,
) -> Result<OrthoPolySystem, PolynomialError> {
    if !scheme.number_mode().is_exact() {
        return Err(PolynomialError::NotExactMode);
    }
    let d = scheme.num_classes();
    type Param<'a> = Box<dyn Fn(usize, usize) -> Rat + 'a>;
    let (ordering, param): (Vec<usize>, Param) = match side {
        GridSide::Primal => {
            let ord = scheme
                .p_polynomial_ordering()
                .ok_or(PolynomialError::NotPolynomialScheme("P"))?
                .to_vec();
            let o = ord.clone();
            (
                ord,
                Box::new(move |j: usize, k: usize| {
                    Rat::from_integer(scheme.p_number(o[1], o[j], o[k]).clone())
                }),
            )
        }
        GridSide::Dual => {
            let ord = scheme
                .q_polynomial_ordering()
                .ok_or(PolynomialError::NotPolynomialScheme("Q"))?
                .to_vec();
            let o = ord.clone();
            (
                ord,
                Box::new(move |j: usize, k: usize| scheme.krein_number(o[1], o[j], o[k]).clone()),
            )
        }
    };
    // tridiagonal parameters: a_i = p[1][i][i], b_i = p[1][i+1][i],
    // c_i = p[1][i-1][i] under the relabeling
    let mut coeffs: Vec<Vec<Rat>> = vec![vec![Rat::one()]];
    for i in 0..d {
        // x*v_i = b_{i-1} v_{i-1} + a_i v_i + c_{i+1} v_{i+1}
        let a_i = param(i, i);
        let c_next = param(i, i + 1);
        assert!(!c_next.is_zero(), "tridiagonal parameter c_{} vanished", i + 1);
        let mut next = vec![Rat::zero(); i + 2];
        for (m, c) in coeffs[i].iter().enumerate() {
            next[m + 1] += c;
            next[m] -= &a_i * c;
        }
        if i > 0 {
            let b_prev = param(i, i - 1);
            for (m, c) in coeffs[i - 1].iter().enumerate() {
                next[m] -= &b_prev * c;
            }
        }
        for c in next.iter_mut() {
            *c /= &c_next;
        }
        coeffs.push(next);
    }
    // evaluation grid and cross-check against the eigenmatrix
    let d1 = d + 1;
    let (grid, table): (Vec<Rat>, Vec<Vec<Rat>>) = match side {
        GridSide::Primal => {
            let p = scheme.p_matrix();
            (
                (0..d1).map(|j| p[(j, ordering[1])].clone()).collect(),
                (0..d1)
                    .map(|i| (0..d1).map(|j| p[(j, ordering[i])].clone()).collect())
                    .collect(),
            )
        }
        GridSide::Dual => {
            let q = scheme.q_matrix();
            (
                (0..d1).map(|l| q[(l, ordering[1])].clone()).collect(),
                (0..d1)
                    .map(|i| (0..d1).map(|l| q[(l, ordering[i])].clone()).collect())
                    .collect(),
            )
        }
    };
    for i in 0..d1 {
        for j in 0..d1 {
            assert_eq!(
                poly_eval(&coeffs[i], &grid[j]),
                table[i][j],
                "recurrence disagrees with eigenmatrix at v_{i}(grid {j})"
            );
        }
    }
    Ok(OrthoPolySystem {
        side,
        ordering,
        coeffs,
        grid,
        values: table,
    })
}

impl OrthoPolySystem {
    /// Expands a polynomial of degree <= d over the basis by triangular
    /// back-substitution on monomial coefficients.
    pub fn expand(&self, poly: &[Rat]) -> Result<Vec<Rat>, PolynomialError> {
        let poly = trim(poly.to_vec());
        let deg = poly.len() - 1;
        let d = self.coeffs.len() - 1;
        if deg > d {
            return Err(PolynomialError::DegreeTooLarge { deg, d });
        }
        let mut rem = poly;
        let mut f = vec![Rat::zero(); d + 1];
        for k in (0..=deg).rev() {
            if rem.len() <= k {
                continue;
            }
            let lead = rem[k].clone();
            if lead.is_zero() {
                continue;
            }
            let cf = &lead / &self.coeffs[k][k];
            for (m, c) in self.coeffs[k].iter().enumerate() {
                let t = &cf * c;
                rem[m] -= t;
            }
            f[k] = cf;
        }
        debug_assert!(rem.iter().all(|c| c.is_zero()));
        Ok(f)
    }
}

#[derive(Clone, Debug)]
pub struct AnnihilatorPoly {
    pub side: GridSide,
    pub roots: Vec<usize>,
    pub monomial: Vec<Rat>,
    /// expansion over the ortho basis, length d+1
    pub expansion: Vec<Rat>,
}

/// F(x) = prod_{i in roots} (x - theta_i) / (theta_0 - theta_i), so that
/// F(theta_0) = 1 and F vanishes exactly on the chosen grid points.
pub fn annihilator_from_roots(
    scheme: &AssociationScheme,
    roots: &[usize],
    side: GridSide,
) -> Result<AnnihilatorPoly, PolynomialError> {
    let system = drg_ortho_polys(scheme, side)?;
    let d = scheme.num_classes();
    let mut seen = vec![false; d + 1];
    for &r in roots {
        if r == 0 || r > d {
            return Err(PolynomialError::RootOutOfRange(r));
        }
        if seen[r] {
            return Err(PolynomialError::RepeatedRoot(r));
        }
        seen[r] = true;
    }
    let theta0 = system.grid[0].clone();
    let mut poly = vec![Rat::one()];
    for &r in roots {
        let theta = &system.grid[r];
        let denom = &theta0 - theta;
        assert!(!denom.is_zero(), "grid values must be distinct");
        poly = poly_mul(&poly, &[-theta / &denom, Rat::one() / &denom]);
    }
    let expansion = system.expand(&poly)?;
    Ok(AnnihilatorPoly {
        side,
        roots: roots.to_vec(),
        monomial: poly,
        expansion,
    })
}

/// Wraps an arbitrary polynomial (monomial coefficients) as an annihilator
/// candidate with its basis expansion.
pub fn annihilator_from_poly(
    scheme: &AssociationScheme,
    poly: &[Rat],
    side: GridSide,
) -> Result<AnnihilatorPoly, PolynomialError> {
    let system = drg_ortho_polys(scheme, side)?;
    let expansion = system.expand(poly)?;
    Ok(AnnihilatorPoly {
        side,
        roots: Vec::new(),
        monomial: trim(poly.to_vec()),
        expansion,
    })
}

/// Characteristic identity on the primal side: for a dual annihilator F of
/// C (F vanishing at theta_i for every i in the dual degree set), the
/// expansion coefficients satisfy F(theta_0) |C| / |X| = sum_k f_k a_{s(k)}.
/// Returns the residual, which must be zero.
pub fn verify_pcar(
    scheme: &AssociationScheme,
    analysis: &SubsetAnalysis,
    f: &AnnihilatorPoly,
) -> Result<Rat, PolynomialError> {
    assert_eq!(f.side, GridSide::Primal);
    let system = drg_ortho_polys(scheme, GridSide::Primal)?;
    for &i in &analysis.dual_degree_set {
        if !poly_eval(&f.monomial, &system.grid[i]).is_zero() {
            return Err(PolynomialError::NotAnnihilator(i));
        }
    }
    let c = Rat::from_integer(Int::from(analysis.subset_size));
    let size = Rat::from_integer(Int::from(scheme.num_vertices()));
    let lhs = poly_eval(&f.monomial, &system.grid[0]) * c / size;
    let mut rhs = Rat::zero();
    for (k, fk) in f.expansion.iter().enumerate() {
        if !fk.is_zero() {
            rhs += fk * &analysis.inner[system.ordering[k]];
        }
    }
    Ok(lhs - rhs)
}

/// Characteristic identity on the dual side: for an annihilator F of C
/// (F vanishing at theta*_l for every l in the degree set),
/// F(theta*_0) = sum_k f_k b_{t(k)}. Returns the residual.
pub fn verify_qcar(
    scheme: &AssociationScheme,
    analysis: &SubsetAnalysis,
    f: &AnnihilatorPoly,
) -> Result<Rat, PolynomialError> {
    assert_eq!(f.side, GridSide::Dual);
    let system = drg_ortho_polys(scheme, GridSide::Dual)?;
    for &l in &analysis.degree_set {
        if !poly_eval(&f.monomial, &system.grid[l]).is_zero() {
            return Err(PolynomialError::NotAnnihilator(l));
        }
    }
    let lhs = poly_eval(&f.monomial, &system.grid[0]);
    let mut rhs = Rat::zero();
    for (k, fk) in f.expansion.iter().enumerate() {
        if !fk.is_zero() {
            rhs += fk * &analysis.dual[system.ordering[k]];
        }
    }
    Ok(lhs - rhs)
}
