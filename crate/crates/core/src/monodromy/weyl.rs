//! Roots of a negative-definite sublattice and membership in its Weyl group.
//!
//! A root is a vector of norm `−2`; its reflection is `v ↦ v + (v, α)α`.
//! Membership of an isometry `T` is decided by chamber reduction: an
//! interior point `x` of the fundamental chamber is moved by `T`, then
//! walked back with simple reflections. `T` lies in the Weyl group exactly
//! when the recorded reflections reproduce it.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::lattice::IntegralLattice;
use crate::linalg::{hermite_normal_form, solve_integer, IntMatrix, RatMatrix};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct RootSystemContext {
    ambient: IntegralLattice,
    /// Basis of the root sublattice, as ambient coordinate vectors.
    basis: Vec<Vec<BigInt>>,
    roots: Vec<Vec<BigInt>>,
    simple_roots: Vec<Vec<BigInt>>,
}

impl RootSystemContext {
    pub fn ambient(&self) -> &IntegralLattice {
        &self.ambient
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// All norm `−2` vectors of the sublattice, in ambient coordinates.
    pub fn roots(&self) -> &[Vec<BigInt>] {
        &self.roots
    }

    pub fn simple_roots(&self) -> &[Vec<BigInt>] {
        &self.simple_roots
    }

    /// Matrix of the reflection in `simple_roots()[i]`.
    pub fn simple_reflection(&self, i: usize) -> IntMatrix {
        reflection_matrix(&self.ambient, &self.simple_roots[i])
    }

    /// `s_{w₀} ∘ s_{w₁} ∘ …` as a matrix.
    pub fn compose(&self, word: &[usize]) -> IntMatrix {
        let n = self.ambient.rank();
        word.iter().fold(IntMatrix::identity(n), |acc, &i| &acc * &self.simple_reflection(i))
    }
}

/// `I + α·(Gα)ᵀ`, the matrix of `v ↦ v + (v, α)α`.
fn reflection_matrix(l: &IntegralLattice, alpha: &[BigInt]) -> IntMatrix {
    let n = l.rank();
    let g_alpha = l.gram().mul_vec(alpha);
    let mut m = IntMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] += &alpha[i] * &g_alpha[j];
        }
    }
    m
}

fn reflect(l: &IntegralLattice, v: &[BigInt], alpha: &[BigInt]) -> Result<Vec<BigInt>> {
    let k = l.pairing(v, alpha)?;
    Ok(v.iter().zip(alpha).map(|(x, a)| x + &k * a).collect())
}

/// Candidate functionals `(1, t, t², …)` for `t = 2, 3, …`.
fn generic_functional(roots: &[Vec<BigInt>], dim: usize) -> Vec<BigInt> {
    let mut t = BigInt::from(2);
    loop {
        let w: Vec<BigInt> = (0..dim).map(|i| num_traits::pow(t.clone(), i)).collect();
        let generic = roots.iter().all(|r| !r.iter().zip(&w).map(|(a, b)| a * b).sum::<BigInt>().is_zero());
        if generic {
            return w;
        }
        t += 1;
    }
}

/// Roots and simple roots of the sublattice spanned by `generators`.
pub fn build_root_context(ambient: &IntegralLattice, generators: &[Vec<BigInt>]) -> Result<RootSystemContext> {
    let n = ambient.rank();
    for g in generators {
        ambient.check_dim(g)?;
    }
    if generators.is_empty() {
        return Err(Error::NoRoots);
    }
    // Row-reduce the generators to a basis of their span.
    let rows = IntMatrix::from_rows(generators)?;
    let (h, _) = hermite_normal_form(&rows);
    let basis: Vec<Vec<BigInt>> =
        (0..h.nrows()).map(|i| h.row(i).to_vec()).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let b = IntMatrix::from_columns(n, &basis)?;
    let sub = IntegralLattice::new(ambient.gram().congruence(&b), None).map_err(|_| Error::NotNegativeDefinite)?;
    if !sub.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let coords = sub.enumerate_norm_vectors(&BigInt::from(-2))?;
    if coords.is_empty() {
        return Err(Error::NoRoots);
    }
    let functional = generic_functional(&coords, basis.len());
    let height = |c: &Vec<BigInt>| c.iter().zip(&functional).map(|(a, w)| a * w).sum::<BigInt>();
    let positive: Vec<&Vec<BigInt>> = coords.iter().filter(|c| height(c).is_positive()).collect();
    let positive_set: HashSet<&Vec<BigInt>> = positive.iter().copied().collect();
    let simple: Vec<&Vec<BigInt>> = positive
        .iter()
        .copied()
        .filter(|a| {
            !positive.iter().any(|b| {
                let diff: Vec<BigInt> = a.iter().zip(b.iter()).map(|(x, y)| x - y).collect();
                positive_set.contains(&diff)
            })
        })
        .collect();
    let to_ambient = |c: &Vec<BigInt>| b.mul_vec(c);
    Ok(RootSystemContext {
        ambient: ambient.clone(),
        basis,
        roots: coords.iter().map(to_ambient).collect(),
        simple_roots: simple.into_iter().map(to_ambient).collect(),
    })
}

/// A point strictly inside the fundamental chamber: `(x, αᵢ) = −1` for every
/// simple root, scaled to integer coordinates.
fn chamber_point(ctx: &RootSystemContext) -> Result<Vec<BigInt>> {
    let k = ctx.simple_roots.len();
    let n = ctx.ambient.rank();
    let mut cartan = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            cartan[(i, j)] = -ctx.ambient.pairing(&ctx.simple_roots[i], &ctx.simple_roots[j])?;
        }
    }
    let inv = RatMatrix::inverse_of(&cartan)?;
    let y: Vec<BigRational> = (0..k).map(|i| (0..k).map(|j| inv.entry(i, j)).sum()).collect();
    let denom = inv.denominator().clone();
    let mut x = vec![BigInt::zero(); n];
    for (yj, alpha) in y.iter().zip(&ctx.simple_roots) {
        let c = (yj * BigRational::from_integer(denom.clone())).to_integer();
        for (xi, ai) in x.iter_mut().zip(alpha) {
            *xi += &c * ai;
        }
    }
    Ok(x)
}

/// The reflection word of `T` if `T` is in the Weyl group.
///
/// A returned word `w` satisfies `T = s_{w₀} ∘ s_{w₁} ∘ …`, indices into
/// [`RootSystemContext::simple_roots`]. `T` must be an isometry of the
/// ambient lattice that maps the root sublattice to itself and fixes its
/// orthogonal complement pointwise.
pub fn weyl_membership(ctx: &RootSystemContext, t: &IntMatrix) -> Result<Option<Vec<usize>>> {
    let l = &ctx.ambient;
    let n = l.rank();
    if t.nrows() != n || t.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: t.nrows() });
    }
    if l.gram().congruence(t) != *l.gram() {
        return Err(Error::NotIsometry);
    }
    let b = IntMatrix::from_columns(n, &ctx.basis)?;
    for v in &ctx.basis {
        if solve_integer(&b, &t.mul_vec(v)).is_none() {
            return Err(Error::MovesRootLattice);
        }
    }
    let complement = l.orthogonal_complement(&ctx.basis)?;
    for c in &complement.basis {
        if t.mul_vec(c) != *c {
            return Err(Error::MovesComplement);
        }
    }

    let x = chamber_point(ctx)?;
    let mut v = t.mul_vec(&x);
    let mut word = Vec::new();
    // Each step lowers the height of v, so the walk is finite.
    'walk: loop {
        for (i, alpha) in ctx.simple_roots.iter().enumerate() {
            if l.pairing(&v, alpha)?.is_positive() {
                v = reflect(l, &v, alpha)?;
                word.push(i);
                continue 'walk;
            }
        }
        break;
    }
    Ok((ctx.compose(&word) == *t).then_some(word))
}
