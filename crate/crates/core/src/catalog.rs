//! The 21 isomorphism classes of four-dimensional nilpotent complex Leibniz
//! algebras, as structure-constant data.
//!
//! The four one-parameter families (L4, L13, L14, L20) are specialized at a
//! rational value of the parameter.

use std::fmt;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::rational::Rational;

pub const CATALOG_SIZE: usize = 21;

/// Admissible parameter values for a catalog entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamConstraint {
    None,
    ZeroOrOne,
    Any,
    NotOne,
}

impl ParamConstraint {
    pub fn admits(self, alpha: &Rational) -> bool {
        match self {
            ParamConstraint::None => false,
            ParamConstraint::ZeroOrOne => alpha.is_zero() || alpha.is_one(),
            ParamConstraint::Any => true,
            ParamConstraint::NotOne => !alpha.is_one(),
        }
    }
}

impl fmt::Display for ParamConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParamConstraint::None => "none",
            ParamConstraint::ZeroOrOne => "α∈{0,1}",
            ParamConstraint::Any => "α∈ℚ",
            ParamConstraint::NotOne => "α∈ℚ∖{1}",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    /// 1..=21
    pub id: usize,
    pub constraint: ParamConstraint,
}

impl CatalogEntry {
    pub fn name(&self) -> String {
        format!("L{}", self.id)
    }

    pub fn parameterized(&self) -> bool {
        self.constraint != ParamConstraint::None
    }

    /// Parameter values used when a generic dimension is requested.
    pub fn default_samples(&self) -> Vec<Rational> {
        match self.constraint {
            ParamConstraint::None => Vec::new(),
            ParamConstraint::ZeroOrOne => vec![Rational::zero(), Rational::one()],
            ParamConstraint::Any | ParamConstraint::NotOne => GENERIC_SAMPLES
                .iter()
                .map(|&x| Rational::integer(x))
                .collect(),
        }
    }
}

/// Default specialization points for the `α ∈ ℂ` families; avoids 0 and ±1.
pub const GENERIC_SAMPLES: [i64; 3] = [2, 3, 5];

pub fn list() -> Vec<CatalogEntry> {
    (1..=CATALOG_SIZE).map(|id| entry(id).unwrap()).collect()
}

pub fn entry(id: usize) -> Result<CatalogEntry> {
    let constraint = match id {
        4 => ParamConstraint::ZeroOrOne,
        13 | 14 => ParamConstraint::Any,
        20 => ParamConstraint::NotOne,
        1..=CATALOG_SIZE => ParamConstraint::None,
        _ => return Err(Error::UnknownEntry(format!("L{id}"))),
    };
    Ok(CatalogEntry { id, constraint })
}

/// Parses `L7`, `l7`, or `7` into a catalog id.
pub fn parse_id(s: &str) -> Result<usize> {
    let t = s.trim();
    let digits = t.strip_prefix(['L', 'l']).unwrap_or(t);
    let id: usize = digits
        .parse()
        .map_err(|_| Error::UnknownEntry(t.to_string()))?;
    entry(id).map(|e| e.id)
}

/// Parses `L7` or `L20(2/3)` into an id and an optional parameter.
pub fn parse_spec(s: &str) -> Result<(usize, Option<Rational>)> {
    let t = s.trim();
    match t.split_once('(') {
        Some((id, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::UnknownEntry(t.to_string()))?;
            Ok((parse_id(id)?, Some(inner.parse()?)))
        }
        None => Ok((parse_id(t)?, None)),
    }
}

/// Resolves `L7` / `L20(2/3)` directly to an algebra.
pub fn get_spec(s: &str) -> Result<Algebra> {
    let (id, alpha) = parse_spec(s)?;
    get(id, alpha)
}

type Product = (usize, usize, Vec<(Rational, usize)>);

pub fn get(id: usize, alpha: Option<Rational>) -> Result<Algebra> {
    let e = entry(id)?;
    match (&alpha, e.parameterized()) {
        (None, true) => {
            return Err(Error::Parameter(format!(
                "{} requires a parameter α",
                e.name()
            )))
        }
        (Some(_), false) => {
            return Err(Error::Parameter(format!("{} takes no parameter", e.name())))
        }
        (Some(a), true) if !e.constraint.admits(a) => {
            return Err(Error::Domain(format!(
                "{} requires {}, got α = {a}",
                e.name(),
                e.constraint
            )))
        }
        _ => {}
    }

    let a = alpha.clone().unwrap_or_else(Rational::zero);
    let one = Rational::one;
    let int = Rational::integer;
    // (i, j, [(coefficient, k)]) with 1-based indices
    let table: Vec<Product> = match id {
        1 => vec![
            (1, 1, vec![(one(), 2)]),
            (2, 1, vec![(one(), 3)]),
            (3, 1, vec![(one(), 4)]),
        ],
        2 => vec![
            (1, 1, vec![(one(), 3)]),
            (1, 2, vec![(one(), 4)]),
            (2, 1, vec![(one(), 3)]),
            (3, 1, vec![(one(), 4)]),
        ],
        3 => vec![
            (1, 1, vec![(one(), 3)]),
            (2, 1, vec![(one(), 3)]),
            (3, 1, vec![(one(), 4)]),
        ],
        4 => vec![
            (1, 1, vec![(one(), 3)]),
            (1, 2, vec![(a.clone(), 4)]),
            (2, 1, vec![(one(), 3)]),
            (2, 2, vec![(one(), 4)]),
            (3, 1, vec![(one(), 4)]),
        ],
        5 => vec![
            (1, 1, vec![(one(), 3)]),
            (1, 2, vec![(one(), 4)]),
            (3, 1, vec![(one(), 4)]),
        ],
        6 => vec![
            (1, 1, vec![(one(), 3)]),
            (2, 2, vec![(one(), 4)]),
            (3, 1, vec![(one(), 4)]),
        ],
        7 => vec![
            (1, 1, vec![(one(), 4)]),
            (1, 2, vec![(int(-1), 3)]),
            (1, 3, vec![(int(-1), 4)]),
            (2, 1, vec![(one(), 3)]),
            (3, 1, vec![(one(), 4)]),
        ],
        8 => vec![
            (1, 1, vec![(one(), 4)]),
            (1, 2, vec![(int(-1), 3), (one(), 4)]),
            (1, 3, vec![(int(-1), 4)]),
            (2, 1, vec![(one(), 3)]),
            (3, 1, vec![(one(), 4)]),
        ],
        9 => vec![
            (1, 1, vec![(one(), 4)]),
            (1, 2, vec![(int(-1), 3), (int(2), 4)]),
            (1, 3, vec![(int(-1), 4)]),
            (2, 1, vec![(one(), 3)]),
            (2, 2, vec![(one(), 4)]),
            (3, 1, vec![(one(), 4)]),
        ],
        10 => vec![
            (1, 1, vec![(one(), 4)]),
            (1, 2, vec![(int(-1), 3)]),
            (1, 3, vec![(int(-1), 4)]),
            (2, 1, vec![(one(), 3)]),
            (2, 2, vec![(one(), 4)]),
            (3, 1, vec![(one(), 4)]),
        ],
        11 => vec![
            (1, 1, vec![(one(), 4)]),
            (1, 2, vec![(one(), 3)]),
            (2, 1, vec![(int(-1), 3)]),
            (2, 2, vec![(int(-2), 3), (one(), 4)]),
        ],
        12 => vec![
            (1, 2, vec![(one(), 3)]),
            (2, 1, vec![(one(), 4)]),
            (2, 2, vec![(int(-1), 3)]),
        ],
        13 => vec![
            (1, 1, vec![(one(), 3)]),
            (1, 2, vec![(one(), 4)]),
            (2, 1, vec![(-&a, 3)]),
            (2, 2, vec![(int(-1), 4)]),
        ],
        14 => vec![
            (1, 1, vec![(one(), 4)]),
            (1, 2, vec![(a.clone(), 4)]),
            (2, 1, vec![(-&a, 4)]),
            (2, 2, vec![(one(), 4)]),
            (3, 3, vec![(one(), 4)]),
        ],
        15 => vec![
            (1, 2, vec![(one(), 4)]),
            (1, 3, vec![(one(), 4)]),
            (2, 1, vec![(int(-1), 4)]),
            (2, 2, vec![(one(), 4)]),
            (3, 1, vec![(one(), 4)]),
        ],
        16 => vec![
            (1, 1, vec![(one(), 4)]),
            (1, 2, vec![(one(), 4)]),
            (2, 1, vec![(int(-1), 4)]),
            (3, 3, vec![(one(), 4)]),
        ],
        17 => vec![(1, 2, vec![(one(), 3)]), (2, 1, vec![(one(), 4)])],
        18 => vec![
            (1, 2, vec![(one(), 3)]),
            (2, 1, vec![(int(-1), 3)]),
            (2, 2, vec![(one(), 4)]),
        ],
        19 => vec![(2, 1, vec![(one(), 4)]), (2, 2, vec![(one(), 3)])],
        20 => {
            let c = (one() + &a) / (one() - &a);
            vec![
                (1, 2, vec![(one(), 4)]),
                (2, 1, vec![(c, 4)]),
                (2, 2, vec![(one(), 3)]),
            ]
        }
        21 => vec![
            (1, 2, vec![(one(), 4)]),
            (2, 1, vec![(int(-1), 4)]),
            (3, 3, vec![(one(), 4)]),
        ],
        _ => unreachable!("entry() validated the id"),
    };

    let name = match &alpha {
        Some(a) => format!("{}({a})", e.name()),
        None => e.name(),
    };
    let zero_based = table.into_iter().map(|(i, j, terms)| {
        (
            i - 1,
            j - 1,
            terms.into_iter().map(|(c, k)| (c, k - 1)).collect(),
        )
    });
    Algebra::from_products(name, 4, zero_based)
}

/// Every admissible specialization exercised by the validity checks:
/// generic samples for the open families, both values for L4.
pub fn sample_algebras() -> Vec<Algebra> {
    list()
        .into_iter()
        .flat_map(|e| {
            if e.parameterized() {
                e.default_samples()
                    .into_iter()
                    .map(|s| get(e.id, Some(s)).unwrap())
                    .collect::<Vec<_>>()
            } else {
                vec![get(e.id, None).unwrap()]
            }
        })
        .collect()
}
