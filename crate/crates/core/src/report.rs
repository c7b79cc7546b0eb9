//! Text, JSON and LaTeX emitters.
//!
//! All output is deterministic. JSON keys keep insertion order, dimensions are
//! integers, rationals are `"p/q"` strings and general-element entries are
//! linear-form strings such as `"2*d11"`.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::algebra::{IdentityReport, SeriesReport};
use crate::error::Error;
use crate::inner::{InnerBiderReport, InnerDerivations};
use crate::linalg::RatMatrix;
use crate::rational::Rational;
use crate::solver::{general_element, FormStyle, GeneralElement, SolutionSpace, SpaceKind};
use crate::table::ComparisonReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Latex,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "latex" => Ok(Format::Latex),
            other => Err(Error::Parameter(format!(
                "unknown format `{other}` (expected text, json or latex)"
            ))),
        }
    }
}

pub trait Render {
    fn text(&self) -> String;
    fn json(&self) -> Value;
    fn latex(&self) -> String;
}

pub fn render<R: Render + ?Sized>(item: &R, format: Format) -> String {
    match format {
        Format::Text => item.text(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&item.json()).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Latex => item.latex(),
    }
}

fn block_names(kind: SpaceKind) -> &'static [&'static str] {
    match kind {
        SpaceKind::Der => &["d"],
        SpaceKind::AntiDer => &["D"],
        SpaceKind::BiDer => &["d", "D"],
    }
}

fn rational_json(r: &Rational) -> Value {
    Value::String(r.to_fraction_string())
}

fn matrix_json(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(rational_json).collect()))
            .collect(),
    )
}

fn grid_strings(g: &GeneralElement, block: usize, style: FormStyle) -> Vec<Vec<String>> {
    (0..g.n)
        .map(|r| {
            (0..g.n)
                .map(|c| g.render_entry(block, r, c, style))
                .collect()
        })
        .collect()
}

fn aligned(grid: &[Vec<String>], indent: &str) -> String {
    let cols = grid.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            grid.iter()
                .map(|row| row[c].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in grid {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        let _ = writeln!(out, "{indent}{}", cells.join("  ").trim_end());
    }
    out
}

fn latex_array(grid: &[Vec<String>]) -> String {
    let cols = grid.first().map_or(0, Vec::len);
    let mut out = format!("\\left(\\begin{{array}}{{{}}}\n", "c".repeat(cols));
    for row in grid {
        let _ = writeln!(out, "{}\\\\", row.join("&"));
    }
    out.push_str("\\end{array}\\right)");
    out
}

fn general_latex(g: &GeneralElement) -> String {
    let arrays: Vec<String> = (0..g.blocks.len())
        .map(|b| latex_array(&grid_strings(g, b, FormStyle::Latex)))
        .collect();
    if arrays.len() == 1 {
        arrays.into_iter().next().unwrap()
    } else {
        format!("\\left({}\\right)", arrays.join(",\n"))
    }
}

fn general_json(g: &GeneralElement) -> Value {
    let mut map = Map::new();
    for (b, name) in block_names(g.kind).iter().enumerate() {
        let grid = grid_strings(g, b, FormStyle::Plain);
        map.insert((*name).to_string(), json!(grid));
    }
    Value::Object(map)
}

fn space_title(kind: SpaceKind) -> &'static str {
    match kind {
        SpaceKind::Der => "Der",
        SpaceKind::AntiDer => "AntiDer",
        SpaceKind::BiDer => "BiDer",
    }
}

impl Render for GeneralElement {
    fn text(&self) -> String {
        let mut out = String::new();
        let names = block_names(self.kind);
        for b in 0..self.blocks.len() {
            if names.len() > 1 {
                let _ = writeln!(out, "{} =", names[b]);
            }
            out.push_str(&aligned(&grid_strings(self, b, FormStyle::Plain), "  "));
        }
        out
    }

    fn json(&self) -> Value {
        json!({
            "algebra": self.algebra,
            "space": self.kind.as_str(),
            "parameters": self.params,
            "general_element": general_json(self),
        })
    }

    fn latex(&self) -> String {
        let mut s = general_latex(self);
        s.push('\n');
        s
    }
}

impl Render for SolutionSpace {
    fn text(&self) -> String {
        let g = general_element(self);
        let mut out = String::new();
        let _ = writeln!(out, "algebra {}", self.algebra);
        let _ = writeln!(out, "space {}", self.kind);
        let _ = writeln!(out, "dim {}", self.dim());
        let _ = writeln!(out, "parameters {}", self.free_labels().join(" "));
        out.push_str(&g.text());
        out
    }

    fn json(&self) -> Value {
        let g = general_element(self);
        let names = block_names(self.kind);
        let basis: Vec<Value> = self
            .elements()
            .iter()
            .map(|blocks| {
                let mut m = Map::new();
                for (name, block) in names.iter().zip(blocks) {
                    m.insert((*name).to_string(), matrix_json(block));
                }
                Value::Object(m)
            })
            .collect();
        json!({
            "algebra": self.algebra,
            "space": self.kind.as_str(),
            "dim": self.dim(),
            "parameters": self.free_labels(),
            "general_element": general_json(&g),
            "basis": basis,
        })
    }

    fn latex(&self) -> String {
        let g = general_element(self);
        format!(
            "% {} of {}, dim {}\n{}\n",
            space_title(self.kind),
            self.algebra,
            self.dim(),
            general_latex(&g)
        )
    }
}

fn vector_text(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

impl Render for IdentityReport {
    fn text(&self) -> String {
        let mut out = format!("algebra {}\n", self.algebra);
        if self.holds {
            out.push_str("leibniz identity holds\n");
        } else {
            let _ = writeln!(
                out,
                "leibniz identity fails on {} triples",
                self.violations.len()
            );
            for v in &self.violations {
                let _ = writeln!(
                    out,
                    "  (e{}, e{}, e{}) residual {}",
                    v.i + 1,
                    v.j + 1,
                    v.k + 1,
                    vector_text(&v.residual)
                );
            }
        }
        out
    }

    fn json(&self) -> Value {
        let violations: Vec<Value> = self
            .violations
            .iter()
            .map(|v| {
                json!({
                    "i": v.i + 1,
                    "j": v.j + 1,
                    "k": v.k + 1,
                    "residual": v.residual.iter().map(rational_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "algebra": self.algebra,
            "leibniz": self.holds,
            "violations": violations,
        })
    }

    fn latex(&self) -> String {
        if self.holds {
            format!("% {}: Leibniz identity holds\n", self.algebra)
        } else {
            let mut out = format!(
                "% {}: Leibniz identity fails\n\\begin{{itemize}}\n",
                self.algebra
            );
            for v in &self.violations {
                let _ = writeln!(
                    out,
                    "\\item $(e_{{{}}}, e_{{{}}}, e_{{{}}})$",
                    v.i + 1,
                    v.j + 1,
                    v.k + 1
                );
            }
            out.push_str("\\end{itemize}\n");
            out
        }
    }
}

impl Render for SeriesReport {
    fn text(&self) -> String {
        let dims: Vec<String> = self.dims.iter().map(ToString::to_string).collect();
        let mut out = format!("algebra {}\nseries {}\n", self.algebra, dims.join(" "));
        match self.nil_index {
            Some(s) => {
                let _ = writeln!(out, "nilpotent, index {s}");
            }
            None => out.push_str("not nilpotent\n"),
        }
        out
    }

    fn json(&self) -> Value {
        json!({
            "algebra": self.algebra,
            "dims": self.dims,
            "nilpotent": self.nilpotent,
            "nil_index": self.nil_index,
        })
    }

    fn latex(&self) -> String {
        let terms: Vec<String> = self
            .dims
            .iter()
            .enumerate()
            .map(|(k, d)| format!("\\dim L^{{{}}} = {d}", k + 1))
            .collect();
        format!("% {}\n${}$\n", self.algebra, terms.join(",\\ "))
    }
}

fn alpha_text(alpha: &[Rational]) -> String {
    if alpha.is_empty() {
        "-".to_string()
    } else {
        let parts: Vec<String> = alpha.iter().map(ToString::to_string).collect();
        format!("{{{}}}", parts.join(","))
    }
}

fn caption(kind: SpaceKind) -> &'static str {
    match kind {
        SpaceKind::Der => "Derivations of four-dimensional nilpotent complex Leibniz algebras.",
        SpaceKind::AntiDer => {
            "AntiDerivations of four-dimensional nilpotent complex Leibniz algebras."
        }
        SpaceKind::BiDer => "Biderivations of four-dimensional nilpotent complex Leibniz algebras.",
    }
}

impl Render for ComparisonReport {
    fn text(&self) -> String {
        let mut grid = vec![vec![
            "id".to_string(),
            "alpha".to_string(),
            "computed".to_string(),
            "oracle".to_string(),
            "printed".to_string(),
            "status".to_string(),
        ]];
        for r in &self.rows {
            grid.push(vec![
                r.name(),
                alpha_text(&r.alpha_used),
                r.computed_dim.to_string(),
                r.oracle_dim.to_string(),
                r.printed_dim.to_string(),
                r.status().to_string(),
            ]);
        }
        let mut out = format!("table {} (dim {})\n", self.table, space_title(self.kind));
        out.push_str(&aligned(&grid, ""));
        let notes: Vec<_> = self.rows.iter().filter(|r| !r.matches).collect();
        if !notes.is_empty() {
            out.push_str("notes\n");
            for r in notes {
                let _ = writeln!(
                    out,
                    "  {}: {}",
                    r.name(),
                    r.note.unwrap_or("undocumented discrepancy")
                );
            }
        }
        let (lo, hi) = self.computed_range();
        let (plo, phi) = self.printed_range();
        let _ = writeln!(out, "range computed {lo}..{hi}, printed {plo}..{phi}");
        out
    }

    fn json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "id": r.name(),
                    "alpha": r.alpha_used.iter().map(rational_json).collect::<Vec<_>>(),
                    "per_sample": r.per_sample,
                    "computed_dim": r.computed_dim,
                    "oracle_dim": r.oracle_dim,
                    "printed_dim": r.printed_dim,
                    "match": r.matches,
                    "status": r.status(),
                    "note": r.note,
                    "parameters": r.general.params,
                    "general_element": general_json(&r.general),
                })
            })
            .collect();
        let (lo, hi) = self.computed_range();
        let (plo, phi) = self.printed_range();
        json!({
            "table": self.table,
            "space": self.kind.as_str(),
            "rows": rows,
            "computed_range": [lo, hi],
            "printed_range": [plo, phi],
            "all_accepted": self.all_accepted(),
        })
    }

    fn latex(&self) -> String {
        let title = space_title(self.kind);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "\\[\n\\text{{Table {}: {}}}\n\\]",
            self.table,
            caption(self.kind)
        );
        out.push_str("\\[\n\\begin{array}{|c|c|c|}\n\\hline\n\\hline\n");
        let _ = writeln!(
            out,
            "\\textbf{{L}} & \\textbf{{{title}(L)}} & \\textbf{{dim {title}(L)}}\\\\\n\\hline"
        );
        for r in &self.rows {
            let mark = if r.matches { "" } else { "^{*}" };
            let _ = writeln!(
                out,
                "\\textbf{{L}}_{{{}}}\n&{}& {}{mark}\\\\\n\\hline",
                r.id,
                general_latex(&r.general),
                r.computed_dim
            );
        }
        out.push_str("\\hline\n\\end{array}\n\\]\n");
        for r in self.rows.iter().filter(|r| !r.matches) {
            let _ = writeln!(
                out,
                "% (*) L{}: {}",
                r.id,
                r.note.unwrap_or("undocumented discrepancy")
            );
        }
        out
    }
}

/// Output of the `inner` command.
#[derive(Clone, Debug)]
pub struct InnerReport {
    pub derivations: InnerDerivations,
    pub pairs: Vec<InnerBiderReport>,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl Render for InnerReport {
    fn text(&self) -> String {
        let d = &self.derivations;
        let mut out = format!("algebra {}\n", d.algebra);
        let _ = writeln!(
            out,
            "right multiplications span dim {}, contained in Der: {}",
            d.dim,
            yes_no(d.contained_in_der)
        );
        for rep in &self.pairs {
            let _ = writeln!(
                out,
                "convention {} {}",
                rep.convention,
                rep.convention.describe()
            );
            for p in &rep.pairs {
                let _ = writeln!(
                    out,
                    "  e{}: d in Der {}, D in AntiDer {}, pair in BiDer {}",
                    p.index + 1,
                    yes_no(p.d_in_der),
                    yes_no(p.dd_in_antider),
                    yes_no(p.in_bider)
                );
            }
        }
        out
    }

    fn json(&self) -> Value {
        let d = &self.derivations;
        let conventions: Vec<Value> = self
            .pairs
            .iter()
            .map(|rep| {
                let pairs: Vec<Value> = rep
                    .pairs
                    .iter()
                    .map(|p| {
                        json!({
                            "x": format!("e{}", p.index + 1),
                            "d": matrix_json(&p.d),
                            "D": matrix_json(&p.dd),
                            "d_in_der": p.d_in_der,
                            "D_in_antider": p.dd_in_antider,
                            "in_bider": p.in_bider,
                        })
                    })
                    .collect();
                json!({
                    "convention": rep.convention.as_str(),
                    "pair": rep.convention.describe(),
                    "all_members": rep.all_members(),
                    "pairs": pairs,
                })
            })
            .collect();
        json!({
            "algebra": d.algebra,
            "inner_derivations": {
                "dim": d.dim,
                "contained_in_der": d.contained_in_der,
                "violations": d.violations.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>(),
            },
            "conventions": conventions,
        })
    }

    fn latex(&self) -> String {
        let mut out = format!(
            "% inner biderivation candidates of {}\n",
            self.derivations.algebra
        );
        out.push_str("\\begin{array}{|c|c|c|c|c|}\n\\hline\n");
        out.push_str("\\text{convention} & x & d\\in\\mathrm{Der} & D\\in\\mathrm{AntiDer} & (d,D)\\in\\mathrm{BiDer}\\\\\n\\hline\n");
        for rep in &self.pairs {
            for p in &rep.pairs {
                let _ = writeln!(
                    out,
                    "{} & e_{{{}}} & {} & {} & {}\\\\",
                    rep.convention,
                    p.index + 1,
                    yes_no(p.d_in_der),
                    yes_no(p.dd_in_antider),
                    yes_no(p.in_bider)
                );
            }
        }
        out.push_str("\\hline\n\\end{array}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::catalog::get;
    use crate::solver::solve;

    #[test]
    fn der_l1_json() {
        let sp = solve(&get(1, None).unwrap(), SpaceKind::Der);
        let v: Value = serde_json::from_str(&render(&sp, Format::Json)).unwrap();
        assert_eq!(v["algebra"], "L1");
        assert_eq!(v["space"], "der");
        assert_eq!(v["dim"], 4);
        assert_eq!(v["general_element"]["d"][1][1], "2*d11");
        assert_eq!(v["basis"][0]["d"][1][1], "2/1");
    }

    #[test]
    fn zero_algebra_text() {
        let sp = solve(&Algebra::zero("zero", 4).unwrap(), SpaceKind::Der);
        let text = render(&sp, Format::Text);
        assert!(text.contains("dim 16\n"));
        assert!(text.contains("  d11  d12  d13  d14\n"));
        assert!(text.contains("  d41  d42  d43  d44\n"));
    }

    #[test]
    fn bider_latex_is_pair() {
        let sp = solve(&get(1, None).unwrap(), SpaceKind::BiDer);
        let tex = render(&sp, Format::Latex);
        assert_eq!(tex.matches("\\begin{array}{cccc}").count(), 2);
        assert!(tex.contains("d_{31}"));
    }

    #[test]
    fn format_parse() {
        assert_eq!("JSON".parse::<Format>().unwrap(), Format::Json);
        assert!("yaml".parse::<Format>().is_err());
    }

    #[test]
    fn identity_failure_text() {
        let a = Algebra::from_products("E", 1, vec![(0, 0, vec![(Rational::one(), 0)])]).unwrap();
        let text = render(&a.check_leibniz(), Format::Text);
        assert!(text.contains("(e1, e1, e1) residual (1)"));
    }
}
