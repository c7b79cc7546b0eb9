//! Derivation, antiderivation and biderivation spaces as nullspaces.
//!
//! A linear map is stored as an `n x n` matrix whose column `j` holds the
//! coordinates of the image of `e_j`; unknown `d_{rc}` is matrix entry
//! `(r, c)` and sits at position `r * n + c` in the unknown vector. For
//! biderivations the `d` block precedes the `D` block.
//!
//! The systems are expanded from the defining identities on basis vectors:
//!
//! * derivation: `d[x,y] = [dx,y] + [x,dy]`
//! * antiderivation: `D[x,y] = [x,Dy] - [y,Dx]`
//! * biderivation: `d` a derivation, `D` an antiderivation, `[dx,y] = [Dx,y]`

use std::fmt;
use std::str::FromStr;

use crate::algebra::Algebra;
use crate::catalog;
use crate::error::{Error, Result};
use crate::linalg::{in_span, nullspace_with_order, RatMatrix};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    Der,
    AntiDer,
    BiDer,
}

impl SpaceKind {
    pub const ALL: [SpaceKind; 3] = [SpaceKind::Der, SpaceKind::AntiDer, SpaceKind::BiDer];

    pub fn as_str(self) -> &'static str {
        match self {
            SpaceKind::Der => "der",
            SpaceKind::AntiDer => "antider",
            SpaceKind::BiDer => "bider",
        }
    }

    /// Number of `n x n` blocks per element.
    pub fn blocks(self) -> usize {
        match self {
            SpaceKind::BiDer => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SpaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "der" => Ok(SpaceKind::Der),
            "antider" => Ok(SpaceKind::AntiDer),
            "bider" => Ok(SpaceKind::BiDer),
            other => Err(Error::Parameter(format!(
                "unknown space `{other}` (expected der, antider or bider)"
            ))),
        }
    }
}

/// Order in which unknowns are offered as pivots during elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EliminationOrder {
    /// Last unknown first. Leaves the earliest-labelled unknowns free, so
    /// general elements are written in `d_{11}, d_{21}, ...` where possible.
    /// This is the canonical order.
    LastToFirst,
    /// Natural column order; used as an independent cross-check.
    FirstToLast,
}

impl EliminationOrder {
    fn permutation(self, cols: usize) -> Vec<usize> {
        match self {
            EliminationOrder::FirstToLast => (0..cols).collect(),
            EliminationOrder::LastToFirst => (0..cols).rev().collect(),
        }
    }
}

fn unknown_label(prefix: char, r: usize, c: usize, n: usize) -> String {
    if n < 10 {
        format!("{prefix}{}{}", r + 1, c + 1)
    } else {
        format!("{prefix}{}_{}", r + 1, c + 1)
    }
}

fn block_labels(prefix: char, n: usize) -> Vec<String> {
    (0..n)
        .flat_map(|r| (0..n).map(move |c| unknown_label(prefix, r, c, n)))
        .collect()
}

/// Homogeneous system: rows are equations, columns are unknowns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub kind: SpaceKind,
    pub algebra: String,
    pub n: usize,
    pub matrix: RatMatrix,
    pub unknown_labels: Vec<String>,
}

/// Rows `(i, j, t)` of `d[e_i,e_j] - [d e_i, e_j] - [e_i, d e_j]`, coordinate `t`,
/// written into columns `offset..offset + n^2`.
fn der_rows(a: &Algebra, width: usize, offset: usize) -> Vec<Vec<Rational>> {
    let n = a.dim();
    let mut rows = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for t in 0..n {
                let mut row = vec![Rational::zero(); width];
                for k in 0..n {
                    row[offset + t * n + k] += a.gamma(i, j, k);
                    row[offset + k * n + i] -= a.gamma(k, j, t);
                    row[offset + k * n + j] -= a.gamma(i, k, t);
                }
                rows.push(row);
            }
        }
    }
    rows
}

/// Rows `(i, j, t)` of `D[e_i,e_j] - [e_i, D e_j] + [e_j, D e_i]`, coordinate `t`.
fn antider_rows(a: &Algebra, width: usize, offset: usize) -> Vec<Vec<Rational>> {
    let n = a.dim();
    let mut rows = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for t in 0..n {
                let mut row = vec![Rational::zero(); width];
                for k in 0..n {
                    row[offset + t * n + k] += a.gamma(i, j, k);
                    row[offset + k * n + j] -= a.gamma(i, k, t);
                    row[offset + k * n + i] += a.gamma(j, k, t);
                }
                rows.push(row);
            }
        }
    }
    rows
}

/// Rows `(i, j, t)` of `[d e_i, e_j] - [D e_i, e_j]`, coordinate `t`.
fn coupling_rows(a: &Algebra) -> Vec<Vec<Rational>> {
    let n = a.dim();
    let nn = n * n;
    let mut rows = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for t in 0..n {
                let mut row = vec![Rational::zero(); 2 * nn];
                for k in 0..n {
                    let g = a.gamma(k, j, t);
                    if !g.is_zero() {
                        row[k * n + i] += g;
                        row[nn + k * n + i] -= g;
                    }
                }
                rows.push(row);
            }
        }
    }
    rows
}

fn system(
    a: &Algebra,
    kind: SpaceKind,
    rows: Vec<Vec<Rational>>,
    labels: Vec<String>,
) -> LinearSystem {
    let matrix = RatMatrix::from_rows(&rows, labels.len()).expect("rows have uniform width");
    LinearSystem {
        kind,
        algebra: a.name().to_string(),
        n: a.dim(),
        matrix,
        unknown_labels: labels,
    }
}

pub fn build_der_system(a: &Algebra) -> LinearSystem {
    let n = a.dim();
    system(
        a,
        SpaceKind::Der,
        der_rows(a, n * n, 0),
        block_labels('d', n),
    )
}

pub fn build_antider_system(a: &Algebra) -> LinearSystem {
    let n = a.dim();
    system(
        a,
        SpaceKind::AntiDer,
        antider_rows(a, n * n, 0),
        block_labels('D', n),
    )
}

/// Derivation block, antiderivation block, then coupling block (`3 n^3` rows).
pub fn build_bider_system(a: &Algebra) -> LinearSystem {
    let n = a.dim();
    let nn = n * n;
    let mut rows = der_rows(a, 2 * nn, 0);
    rows.extend(antider_rows(a, 2 * nn, nn));
    rows.extend(coupling_rows(a));
    let mut labels = block_labels('d', n);
    labels.extend(block_labels('D', n));
    system(a, SpaceKind::BiDer, rows, labels)
}

pub fn build_system(a: &Algebra, kind: SpaceKind) -> LinearSystem {
    match kind {
        SpaceKind::Der => build_der_system(a),
        SpaceKind::AntiDer => build_antider_system(a),
        SpaceKind::BiDer => build_bider_system(a),
    }
}

/// Basis of a solution space together with its free-parameter labelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    pub kind: SpaceKind,
    pub algebra: String,
    pub n: usize,
    pub unknown_labels: Vec<String>,
    /// Free unknown for each basis vector, increasing.
    pub free_cols: Vec<usize>,
    /// Basis vectors over the unknowns; `basis[b][free_cols[b]] = 1` and the
    /// other free entries are 0.
    pub basis: Vec<Vec<Rational>>,
}

impl SolutionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn free_labels(&self) -> Vec<&str> {
        self.free_cols
            .iter()
            .map(|&c| self.unknown_labels[c].as_str())
            .collect()
    }

    /// The `n x n` blocks of basis element `b` (one for Der/AntiDer, `(d, D)` for BiDer).
    pub fn blocks(&self, b: usize) -> Vec<RatMatrix> {
        vector_to_blocks(&self.basis[b], self.n)
    }

    pub fn elements(&self) -> Vec<Vec<RatMatrix>> {
        (0..self.dim()).map(|b| self.blocks(b)).collect()
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        in_span(&self.basis, v).expect("vector length matches unknowns")
    }

    pub fn contains(&self, blocks: &[RatMatrix]) -> bool {
        self.contains_vector(&blocks_to_vector(blocks))
    }
}

pub fn vector_to_blocks(v: &[Rational], n: usize) -> Vec<RatMatrix> {
    v.chunks(n * n)
        .map(|chunk| RatMatrix::new(n, n, chunk.to_vec()).expect("chunk is n*n"))
        .collect()
}

pub fn blocks_to_vector(blocks: &[RatMatrix]) -> Vec<Rational> {
    blocks
        .iter()
        .flat_map(|m| m.entries().iter().cloned())
        .collect()
}

pub fn solve_space(sys: &LinearSystem) -> SolutionSpace {
    solve_space_with(sys, EliminationOrder::LastToFirst)
}

pub fn solve_space_with(sys: &LinearSystem, order: EliminationOrder) -> SolutionSpace {
    let cols = sys.matrix.cols();
    let (free, basis) = nullspace_with_order(&sys.matrix, &order.permutation(cols));
    let mut paired: Vec<(usize, Vec<Rational>)> = free.into_iter().zip(basis).collect();
    paired.sort_by_key(|(c, _)| *c);
    let (free_cols, basis) = paired.into_iter().unzip();
    SolutionSpace {
        kind: sys.kind,
        algebra: sys.algebra.clone(),
        n: sys.n,
        unknown_labels: sys.unknown_labels.clone(),
        free_cols,
        basis,
    }
}

pub fn solve(a: &Algebra, kind: SpaceKind) -> SolutionSpace {
    solve_space(&build_system(a, kind))
}

/// Exact linear combination of free parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm {
    /// `(coefficient, parameter index)`, parameter indices increasing, coefficients nonzero.
    pub terms: Vec<(Rational, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormStyle {
    /// `2*d11 - 1/2*d21`
    Plain,
    /// `2d_{11}-\frac{1}{2}d_{21}`
    Latex,
}

fn latex_label(label: &str) -> String {
    let mut chars = label.chars();
    let head = chars.next().unwrap_or('d');
    let tail: String = chars.filter(|&c| c != '_').collect();
    format!("{head}_{{{tail}}}")
}

impl LinearForm {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn render(&self, labels: &[String], style: FormStyle) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (c, p)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg, style) {
                (0, true, _) => out.push('-'),
                (0, false, _) => {}
                (_, true, FormStyle::Plain) => out.push_str(" - "),
                (_, false, FormStyle::Plain) => out.push_str(" + "),
                (_, true, FormStyle::Latex) => out.push('-'),
                (_, false, FormStyle::Latex) => out.push('+'),
            }
            let mag = c.abs();
            let label = match style {
                FormStyle::Plain => labels[*p].clone(),
                FormStyle::Latex => latex_label(&labels[*p]),
            };
            if mag.is_one() {
                out.push_str(&label);
            } else {
                match style {
                    FormStyle::Plain => out.push_str(&format!("{mag}*{label}")),
                    FormStyle::Latex if mag.is_integer() => out.push_str(&format!("{mag}{label}")),
                    FormStyle::Latex => out.push_str(&format!(
                        "\\frac{{{}}}{{{}}}{label}",
                        mag.numer(),
                        mag.denom()
                    )),
                }
            }
        }
        out
    }

    pub fn evaluate(&self, params: &[Rational]) -> Rational {
        self.terms.iter().map(|(c, p)| c * &params[*p]).sum()
    }
}

/// A solution space written as one parametric matrix (or pair of matrices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralElement {
    pub kind: SpaceKind,
    pub algebra: String,
    pub n: usize,
    pub params: Vec<String>,
    /// One `n x n` row-major grid per block.
    pub blocks: Vec<Vec<LinearForm>>,
}

impl GeneralElement {
    pub fn entry(&self, block: usize, r: usize, c: usize) -> &LinearForm {
        &self.blocks[block][r * self.n + c]
    }

    pub fn render_entry(&self, block: usize, r: usize, c: usize, style: FormStyle) -> String {
        self.entry(block, r, c).render(&self.params, style)
    }

    /// Substitutes parameter values, giving concrete matrices.
    pub fn evaluate(&self, params: &[Rational]) -> Vec<RatMatrix> {
        self.blocks
            .iter()
            .map(|grid| {
                let data = grid.iter().map(|f| f.evaluate(params)).collect();
                RatMatrix::new(self.n, self.n, data).unwrap()
            })
            .collect()
    }
}

pub fn general_element(sp: &SolutionSpace) -> GeneralElement {
    let unknowns = sp.unknown_labels.len();
    let forms: Vec<LinearForm> = (0..unknowns)
        .map(|u| LinearForm {
            terms: sp
                .basis
                .iter()
                .enumerate()
                .filter(|(_, v)| !v[u].is_zero())
                .map(|(b, v)| (v[u].clone(), b))
                .collect(),
        })
        .collect();
    let nn = sp.n * sp.n;
    GeneralElement {
        kind: sp.kind,
        algebra: sp.algebra.clone(),
        n: sp.n,
        params: sp.free_labels().into_iter().map(String::from).collect(),
        blocks: forms.chunks(nn).map(<[LinearForm]>::to_vec).collect(),
    }
}

// Definition-level checks. These evaluate the identities through
// `Algebra::bracket` and never look at the linear systems above.

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

fn sub_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Basis pairs `(i, j)` where `d[e_i,e_j] != [d e_i, e_j] + [e_i, d e_j]`.
pub fn derivation_failures(a: &Algebra, d: &RatMatrix) -> Result<Vec<(usize, usize)>> {
    let n = a.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (a.basis_vector(i), a.basis_vector(j));
            let lhs = a.apply(d, &a.bracket(&ei, &ej)?)?;
            let rhs = add_vec(
                &a.bracket(&a.apply(d, &ei)?, &ej)?,
                &a.bracket(&ei, &a.apply(d, &ej)?)?,
            );
            if !is_zero_vec(&sub_vec(&lhs, &rhs)) {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// Basis pairs `(i, j)` where `D[e_i,e_j] != [e_i, D e_j] - [e_j, D e_i]`.
pub fn antiderivation_failures(a: &Algebra, dd: &RatMatrix) -> Result<Vec<(usize, usize)>> {
    let n = a.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (a.basis_vector(i), a.basis_vector(j));
            let lhs = a.apply(dd, &a.bracket(&ei, &ej)?)?;
            let rhs = sub_vec(
                &a.bracket(&ei, &a.apply(dd, &ej)?)?,
                &a.bracket(&ej, &a.apply(dd, &ei)?)?,
            );
            if !is_zero_vec(&sub_vec(&lhs, &rhs)) {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// Basis pairs `(i, j)` where `[d e_i, e_j] != [D e_i, e_j]`.
pub fn coupling_failures(
    a: &Algebra,
    d: &RatMatrix,
    dd: &RatMatrix,
) -> Result<Vec<(usize, usize)>> {
    let n = a.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (a.basis_vector(i), a.basis_vector(j));
            let lhs = a.bracket(&a.apply(d, &ei)?, &ej)?;
            let rhs = a.bracket(&a.apply(dd, &ei)?, &ej)?;
            if !is_zero_vec(&sub_vec(&lhs, &rhs)) {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// True when `blocks` satisfies the defining identities of `kind` on every basis pair.
pub fn satisfies_definition(a: &Algebra, kind: SpaceKind, blocks: &[RatMatrix]) -> Result<bool> {
    if blocks.len() != kind.blocks() {
        return Err(Error::Shape(format!(
            "{kind} element needs {} blocks, got {}",
            kind.blocks(),
            blocks.len()
        )));
    }
    Ok(match kind {
        SpaceKind::Der => derivation_failures(a, &blocks[0])?.is_empty(),
        SpaceKind::AntiDer => antiderivation_failures(a, &blocks[0])?.is_empty(),
        SpaceKind::BiDer => {
            derivation_failures(a, &blocks[0])?.is_empty()
                && antiderivation_failures(a, &blocks[1])?.is_empty()
                && coupling_failures(a, &blocks[0], &blocks[1])?.is_empty()
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub closed: bool,
    pub pairs_checked: usize,
    /// First basis pair `(p, q)` whose bracket leaves the space.
    pub witness: Option<(usize, usize)>,
}

/// `[(d, D), (d', D')] = (d d' - d' d, D d' - d' D)`
pub fn bider_bracket(x: &[RatMatrix], y: &[RatMatrix]) -> Result<Vec<RatMatrix>> {
    let d = x[0].commutator(&y[0])?;
    let dd = x[1].matmul(&y[0])?.sub(&y[0].matmul(&x[1])?)?;
    Ok(vec![d, dd])
}

fn check_closure(
    sp: &SolutionSpace,
    a: &Algebra,
    expected: SpaceKind,
    ordered: bool,
    bracket: impl Fn(&[RatMatrix], &[RatMatrix]) -> Result<Vec<RatMatrix>>,
) -> Result<ClosureReport> {
    if sp.kind != expected {
        return Err(Error::Parameter(format!(
            "closure check expects a {expected} space, got {}",
            sp.kind
        )));
    }
    let elements = sp.elements();
    let mut pairs_checked = 0;
    for p in 0..elements.len() {
        let start = if ordered { 0 } else { p + 1 };
        for q in start..elements.len() {
            pairs_checked += 1;
            let z = bracket(&elements[p], &elements[q])?;
            if !sp.contains(&z) || !satisfies_definition(a, expected, &z)? {
                return Ok(ClosureReport {
                    closed: false,
                    pairs_checked,
                    witness: Some((p, q)),
                });
            }
        }
    }
    Ok(ClosureReport {
        closed: true,
        pairs_checked,
        witness: None,
    })
}

/// Commutator closure of a derivation space. The commutator is antisymmetric,
/// so only pairs `p < q` are checked.
pub fn check_der_closure(sp: &SolutionSpace, a: &Algebra) -> Result<ClosureReport> {
    check_closure(sp, a, SpaceKind::Der, false, |x, y| {
        Ok(vec![x[0].commutator(&y[0])?])
    })
}

/// Closure of a biderivation space under [`bider_bracket`], over all ordered pairs.
pub fn check_bider_closure(sp: &SolutionSpace, a: &Algebra) -> Result<ClosureReport> {
    check_closure(sp, a, SpaceKind::BiDer, true, bider_bracket)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericDimension {
    pub id: usize,
    pub kind: SpaceKind,
    /// Minimum nullity over the samples.
    pub dim: usize,
    pub per_sample: Vec<(Rational, usize)>,
}

/// Dimension of a parameterized family at generic parameter, estimated as the
/// minimum over `samples` (specialization can only enlarge a nullspace).
/// Empty `samples` means the entry's default samples.
pub fn generic_dimension(
    id: usize,
    kind: SpaceKind,
    samples: &[Rational],
) -> Result<GenericDimension> {
    let entry = catalog::entry(id)?;
    if !entry.parameterized() {
        return Err(Error::Parameter(format!(
            "{} has no parameter",
            entry.name()
        )));
    }
    let samples = if samples.is_empty() {
        entry.default_samples()
    } else {
        samples.to_vec()
    };
    let per_sample = samples
        .into_iter()
        .map(|s| {
            let a = catalog::get(id, Some(s.clone()))?;
            Ok((s, solve(&a, kind).dim()))
        })
        .collect::<Result<Vec<_>>>()?;
    let dim = per_sample.iter().map(|(_, d)| *d).min().unwrap_or(0);
    Ok(GenericDimension {
        id,
        kind,
        dim,
        per_sample,
    })
}
