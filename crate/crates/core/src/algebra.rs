//! Finite-dimensional algebras presented by structure constants.
//!
//! Basis indices are 0-based in this API; reports and text formats add 1.

use crate::error::{Error, Result};
use crate::linalg::{span_basis, RatMatrix};
use crate::rational::Rational;

/// An algebra of dimension `n` with products `[e_i, e_j] = sum_k gamma(i, j, k) e_k`.
///
/// The structure-constant tensor is stored densely (`n^3` entries).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra {
    name: String,
    dim: usize,
    gamma: Vec<Rational>,
}

impl Algebra {
    /// The zero algebra of dimension `dim` (every product vanishes).
    pub fn zero(name: impl Into<String>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Shape("algebra dimension must be at least 1".into()));
        }
        Ok(Algebra {
            name: name.into(),
            dim,
            gamma: vec![Rational::zero(); dim * dim * dim],
        })
    }

    /// Builds an algebra from products `(i, j, [(coefficient, k), ...])`, 0-based.
    /// Repeated `(coefficient, k)` terms within one product accumulate.
    pub fn from_products<I>(name: impl Into<String>, dim: usize, products: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vec<(Rational, usize)>)>,
    {
        let mut a = Algebra::zero(name, dim)?;
        for (i, j, terms) in products {
            for (c, k) in terms {
                a.check_index(i)?;
                a.check_index(j)?;
                a.check_index(k)?;
                let idx = a.index(i, j, k);
                a.gamma[idx] += c;
            }
        }
        Ok(a)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim {
            return Err(Error::Shape(format!(
                "basis index {i} out of range for dimension {}",
                self.dim
            )));
        }
        Ok(())
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.gamma[self.index(i, j, k)]
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn product(&self, i: usize, j: usize) -> &[Rational] {
        let start = self.index(i, j, 0);
        &self.gamma[start..start + self.dim]
    }

    /// Nonzero products in lexicographic `(i, j)` order.
    pub fn nonzero_products(&self) -> impl Iterator<Item = (usize, usize, &[Rational])> + '_ {
        (0..self.dim)
            .flat_map(move |i| (0..self.dim).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, self.product(i, j)))
            .filter(|(_, _, p)| p.iter().any(|x| !x.is_zero()))
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    fn check_len(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::Shape(format!(
                "coefficient vector of length {} for dimension {}",
                v.len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Bilinear bracket of two coefficient vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let coef = xi * yj;
                for (k, g) in self.product(i, j).iter().enumerate() {
                    if !g.is_zero() {
                        out[k] += &coef * g;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Checks `[x,[y,z]] = [[x,y],z] - [[x,z],y]` on every basis triple.
    pub fn check_leibniz(&self) -> IdentityReport {
        let n = self.dim;
        let mut violations = Vec::new();
        let e: Vec<Vec<Rational>> = (0..n).map(|i| self.basis_vector(i)).collect();
        let br = |x: &[Rational], y: &[Rational]| self.bracket(x, y).expect("lengths match");
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = br(&e[i], &br(&e[j], &e[k]));
                    let rhs1 = br(&br(&e[i], &e[j]), &e[k]);
                    let rhs2 = br(&br(&e[i], &e[k]), &e[j]);
                    let residual: Vec<Rational> = lhs
                        .iter()
                        .zip(rhs1.iter().zip(&rhs2))
                        .map(|(l, (a, b))| l - &(a - b))
                        .collect();
                    if residual.iter().any(|r| !r.is_zero()) {
                        violations.push(Violation { i, j, k, residual });
                    }
                }
            }
        }
        IdentityReport {
            algebra: self.name.clone(),
            holds: violations.is_empty(),
            violations,
        }
    }

    /// Descending series `L^1 = L`, `L^{k+1} = [L^k, L]`.
    pub fn lower_central_series(&self) -> SeriesReport {
        let n = self.dim;
        let mut current: Vec<Vec<Rational>> = (0..n).map(|i| self.basis_vector(i)).collect();
        let mut dims = vec![n];
        loop {
            let mut products = Vec::with_capacity(current.len() * n);
            for u in &current {
                for j in 0..n {
                    products.push(
                        self.bracket(u, &self.basis_vector(j))
                            .expect("lengths match"),
                    );
                }
            }
            let next = span_basis(&products, n).expect("rows have length n");
            let prev = *dims.last().unwrap();
            dims.push(next.len());
            if next.is_empty() || next.len() == prev {
                break;
            }
            current = next;
        }
        let nilpotent = dims.last() == Some(&0);
        SeriesReport {
            algebra: self.name.clone(),
            nil_index: nilpotent.then_some(dims.len()),
            nilpotent,
            dims,
        }
    }

    /// Applies the linear map with matrix `m` (column `j` = image of `e_j`) to `v`.
    pub fn apply(&self, m: &RatMatrix, v: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(v)?;
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::Shape(format!(
                "{}x{} map on a {}-dimensional algebra",
                m.rows(),
                m.cols(),
                self.dim
            )));
        }
        m.mul_vec(v)
    }
}

/// A basis triple where the Leibniz identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// `[x,[y,z]] - ([[x,y],z] - [[x,z],y])`
    pub residual: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub algebra: String,
    pub holds: bool,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub algebra: String,
    /// `dim L^1, dim L^2, ...`, ending at 0 or at the first repeated dimension.
    pub dims: Vec<usize>,
    pub nilpotent: bool,
    /// Smallest `s` with `L^s = 0`.
    pub nil_index: Option<usize>,
}
