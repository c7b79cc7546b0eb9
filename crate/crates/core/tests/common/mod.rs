//! Test-side oracle, independent of the solver's system builder.
//!
//! Equations are obtained by applying each defining identity to the unit
//! maps (one unknown set to 1) through `Algebra::bracket`, and ranks come
//! from fraction-free Bareiss elimination over the integers.

#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use leibniz_core::linalg::RatMatrix;
use leibniz_core::solver::SpaceKind;
use leibniz_core::{Algebra, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub fn fixture_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(rel)
}

pub fn read_fixture(rel: &str) -> String {
    fs::read_to_string(fixture_path(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

/// Sections of `catalog.txt` as `(spec, bracket text)`, comment lines dropped.
pub fn catalog_sections() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = Vec::new();
    for line in read_fixture("catalog.txt").lines() {
        if let Some(spec) = line.strip_prefix("=== ") {
            out.push((spec.trim().to_string(), String::new()));
        } else if line.starts_with('#') {
            continue;
        } else if let Some((_, body)) = out.last_mut() {
            body.push_str(line);
            body.push('\n');
        }
    }
    out
}

fn unit(n: usize, r: usize, c: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    m.set(r, c, Rational::one());
    m
}

fn bracket(a: &Algebra, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    a.bracket(x, y).unwrap()
}

fn apply(a: &Algebra, m: &RatMatrix, v: &[Rational]) -> Vec<Rational> {
    a.apply(m, v).unwrap()
}

fn sub(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(p, q)| p - q).collect()
}

fn add(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(p, q)| p + q).collect()
}

/// `d[x,y] - [dx,y] - [x,dy]` over all basis pairs, flattened.
pub fn der_residual(a: &Algebra, d: &RatMatrix) -> Vec<Rational> {
    let n = a.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (a.basis_vector(i), a.basis_vector(j));
            let lhs = apply(a, d, &bracket(a, &x, &y));
            let rhs = add(
                &bracket(a, &apply(a, d, &x), &y),
                &bracket(a, &x, &apply(a, d, &y)),
            );
            out.extend(sub(&lhs, &rhs));
        }
    }
    out
}

/// `D[x,y] - [x,Dy] + [y,Dx]` over all basis pairs, flattened.
pub fn antider_residual(a: &Algebra, dd: &RatMatrix) -> Vec<Rational> {
    let n = a.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (a.basis_vector(i), a.basis_vector(j));
            let lhs = apply(a, dd, &bracket(a, &x, &y));
            let rhs = sub(
                &bracket(a, &x, &apply(a, dd, &y)),
                &bracket(a, &y, &apply(a, dd, &x)),
            );
            out.extend(sub(&lhs, &rhs));
        }
    }
    out
}

/// `[dx,y] - [Dx,y]` over all basis pairs, flattened.
pub fn coupling_residual(a: &Algebra, d: &RatMatrix, dd: &RatMatrix) -> Vec<Rational> {
    let n = a.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (a.basis_vector(i), a.basis_vector(j));
            out.extend(sub(
                &bracket(a, &apply(a, d, &x), &y),
                &bracket(a, &apply(a, dd, &x), &y),
            ));
        }
    }
    out
}

/// Residual of the defining identity of `kind`, as a flat vector.
pub fn residual(a: &Algebra, kind: SpaceKind, blocks: &[RatMatrix]) -> Vec<Rational> {
    match kind {
        SpaceKind::Der => der_residual(a, &blocks[0]),
        SpaceKind::AntiDer => antider_residual(a, &blocks[0]),
        SpaceKind::BiDer => {
            let mut v = der_residual(a, &blocks[0]);
            v.extend(antider_residual(a, &blocks[1]));
            v.extend(coupling_residual(a, &blocks[0], &blocks[1]));
            v
        }
    }
}

/// Columns of the linear system: column `u` is the residual of unit map `u`.
pub fn oracle_columns(a: &Algebra, kind: SpaceKind) -> Vec<Vec<Rational>> {
    let n = a.dim();
    let zero = RatMatrix::zeros(n, n);
    let mut cols = Vec::new();
    for b in 0..kind.blocks() {
        for r in 0..n {
            for c in 0..n {
                let u = unit(n, r, c);
                let blocks: Vec<RatMatrix> = match (kind, b) {
                    (SpaceKind::BiDer, 0) => vec![u, zero.clone()],
                    (SpaceKind::BiDer, _) => vec![zero.clone(), u],
                    _ => vec![u],
                };
                cols.push(residual(a, kind, &blocks));
            }
        }
    }
    cols
}

/// Clears denominators row by row.
pub fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect()
}

/// Fraction-free Bareiss rank.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = &m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k];
                m[r][k] = v / &prev;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    bareiss_rank(integer_rows(rows))
}

/// Nullity of the oracle system, i.e. the dimension of the space.
pub fn oracle_dim(a: &Algebra, kind: SpaceKind) -> usize {
    let cols = oracle_columns(a, kind);
    let unknowns = cols.len();
    // rank of the column set equals rank of the system
    unknowns - rational_rank(&cols)
}
