//! Multiplication operators, inner derivations and inner-biderivation candidates.
//!
//! Sign and side conventions for the inner pair `(-ad_x, Ad_x)` are not fixed
//! here; every [`Convention`] is generated and its membership in the computed
//! biderivation space is measured.

use std::fmt;
use std::str::FromStr;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{span_basis, RatMatrix};
use crate::rational::Rational;
use crate::solver::{solve, SolutionSpace, SpaceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `y -> [x, y]`
    Left,
    /// `y -> [y, x]`
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultOperator {
    pub side: Side,
    pub x: Vec<Rational>,
    pub matrix: RatMatrix,
}

pub fn mult_operator(a: &Algebra, side: Side, x: &[Rational]) -> Result<MultOperator> {
    let n = a.dim();
    if x.len() != n {
        return Err(Error::Shape(format!(
            "coefficient vector of length {} for dimension {n}",
            x.len()
        )));
    }
    let mut matrix = RatMatrix::zeros(n, n);
    for j in 0..n {
        let ej = a.basis_vector(j);
        let image = match side {
            Side::Left => a.bracket(x, &ej)?,
            Side::Right => a.bracket(&ej, x)?,
        };
        for (r, v) in image.into_iter().enumerate() {
            matrix.set(r, j, v);
        }
    }
    Ok(MultOperator {
        side,
        x: x.to_vec(),
        matrix,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerDerivations {
    pub algebra: String,
    /// Row-reduced basis of `span{R_{e_i}}`, each row an `n^2` vector.
    pub basis: Vec<Vec<Rational>>,
    pub dim: usize,
    /// Indices `i` whose right multiplication `R_{e_i}` is not in `Der(a)`.
    pub violations: Vec<usize>,
    pub contained_in_der: bool,
}

/// Span of the right multiplications, with a membership check against `Der(a)`.
pub fn inner_derivation_space(a: &Algebra) -> InnerDerivations {
    let n = a.dim();
    let der = solve(a, SpaceKind::Der);
    let mut ops = Vec::with_capacity(n);
    let mut violations = Vec::new();
    for i in 0..n {
        let op = mult_operator(a, Side::Right, &a.basis_vector(i)).expect("basis vector length");
        if !der.contains(std::slice::from_ref(&op.matrix)) {
            violations.push(i);
        }
        ops.push(op.matrix.into_entries());
    }
    let basis = span_basis(&ops, n * n).expect("uniform row length");
    InnerDerivations {
        algebra: a.name().to_string(),
        dim: basis.len(),
        basis,
        contained_in_der: violations.is_empty(),
        violations,
    }
}

/// How the candidate pair for `x` is assembled from `L_x: y -> [x,y]` and
/// `R_x: y -> [y,x]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Convention {
    /// `(-R_x, L_x)`
    #[default]
    C1,
    /// `(R_x, L_x)`
    C2,
    /// `(-L_x, R_x)`
    C3,
    /// `(L_x, R_x)`
    C4,
}

impl Convention {
    pub const ALL: [Convention; 4] = [
        Convention::C1,
        Convention::C2,
        Convention::C3,
        Convention::C4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::C1 => "c1",
            Convention::C2 => "c2",
            Convention::C3 => "c3",
            Convention::C4 => "c4",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Convention::C1 => "(-R_x, L_x)",
            Convention::C2 => "(R_x, L_x)",
            Convention::C3 => "(-L_x, R_x)",
            Convention::C4 => "(L_x, R_x)",
        }
    }

    fn sides(self) -> (bool, Side, Side) {
        match self {
            Convention::C1 => (true, Side::Right, Side::Left),
            Convention::C2 => (false, Side::Right, Side::Left),
            Convention::C3 => (true, Side::Left, Side::Right),
            Convention::C4 => (false, Side::Left, Side::Right),
        }
    }

    /// `(d, D)` candidate for `x`.
    pub fn pair(self, a: &Algebra, x: &[Rational]) -> Result<(RatMatrix, RatMatrix)> {
        let (negate, d_side, dd_side) = self.sides();
        let mut d = mult_operator(a, d_side, x)?.matrix;
        if negate {
            d = d.scale(&Rational::integer(-1));
        }
        let dd = mult_operator(a, dd_side, x)?.matrix;
        Ok((d, dd))
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c1" => Ok(Convention::C1),
            "c2" => Ok(Convention::C2),
            "c3" => Ok(Convention::C3),
            "c4" => Ok(Convention::C4),
            other => Err(Error::Parameter(format!(
                "unknown convention `{other}` (expected c1..c4)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerPairVerdict {
    /// Basis index of `x = e_i`.
    pub index: usize,
    pub d: RatMatrix,
    pub dd: RatMatrix,
    pub d_in_der: bool,
    pub dd_in_antider: bool,
    pub in_bider: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerBiderReport {
    pub algebra: String,
    pub convention: Convention,
    pub pairs: Vec<InnerPairVerdict>,
}

impl InnerBiderReport {
    pub fn all_members(&self) -> bool {
        self.pairs.iter().all(|p| p.in_bider)
    }
}

/// Builds the candidate pair for every basis vector and measures membership
/// against freshly computed Der, AntiDer and BiDer spaces.
pub fn inner_bider_pairs(a: &Algebra, convention: Convention) -> InnerBiderReport {
    let spaces = InnerSpaces::compute(a);
    inner_bider_pairs_in(a, convention, &spaces)
}

/// The three spaces a membership verdict is measured against.
pub struct InnerSpaces {
    pub der: SolutionSpace,
    pub antider: SolutionSpace,
    pub bider: SolutionSpace,
}

impl InnerSpaces {
    pub fn compute(a: &Algebra) -> Self {
        InnerSpaces {
            der: solve(a, SpaceKind::Der),
            antider: solve(a, SpaceKind::AntiDer),
            bider: solve(a, SpaceKind::BiDer),
        }
    }
}

pub fn inner_bider_pairs_in(
    a: &Algebra,
    convention: Convention,
    spaces: &InnerSpaces,
) -> InnerBiderReport {
    let pairs = (0..a.dim())
        .map(|i| {
            let (d, dd) = convention
                .pair(a, &a.basis_vector(i))
                .expect("basis vector length");
            InnerPairVerdict {
                index: i,
                d_in_der: spaces.der.contains(std::slice::from_ref(&d)),
                dd_in_antider: spaces.antider.contains(std::slice::from_ref(&dd)),
                in_bider: spaces.bider.contains(&[d.clone(), dd.clone()]),
                d,
                dd,
            }
        })
        .collect();
    InnerBiderReport {
        algebra: a.name().to_string(),
        convention,
        pairs,
    }
}
