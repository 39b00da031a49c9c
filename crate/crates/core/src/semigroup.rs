//! The commutative semigroup of cumulative addition results over `n` atoms,
//! its Cayley table, and the full diagram drawn from it.
//!
//! An element is a set of atoms; the empty set stands for the absorbing
//! element `v_abs`. Two elements combine to their union when disjoint and to
//! `v_abs` otherwise.

use std::f64::consts::PI;
use std::fmt::{self, Write as _};

use itertools::Itertools;

use crate::config::Limits;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SemigroupElement(u32);

impl SemigroupElement {
    pub const ABS: SemigroupElement = SemigroupElement(0);

    /// The element for the given 1-based atoms.
    pub fn from_atoms(atoms: impl IntoIterator<Item = usize>) -> Self {
        SemigroupElement(atoms.into_iter().fold(0, |m, a| m | 1 << (a - 1)))
    }

    pub fn mask(&self) -> u32 {
        self.0
    }

    pub fn is_abs(&self) -> bool {
        self.0 == 0
    }

    /// 1-based atoms in ascending order.
    pub fn atoms(&self) -> Vec<usize> {
        (0..32)
            .filter(|b| self.0 >> b & 1 == 1)
            .map(|b| b + 1)
            .collect()
    }

    /// `v_abs`, `v1`, `v12`; atoms are separated by `_` once `n >= 10`.
    pub fn name(&self, n: usize) -> String {
        if self.is_abs() {
            return "v_abs".to_string();
        }
        let sep = if n >= 10 { "_" } else { "" };
        format!("v{}", self.atoms().iter().join(sep))
    }
}

impl fmt::Debug for SemigroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name(32))
    }
}

pub fn semigroup_op(a: SemigroupElement, b: SemigroupElement) -> SemigroupElement {
    if a.is_abs() || b.is_abs() || a.0 & b.0 != 0 {
        SemigroupElement::ABS
    } else {
        SemigroupElement(a.0 | b.0)
    }
}

fn check_n(n: usize, limits: &Limits) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("the semigroup needs at least one atom"));
    }
    let cap = limits.cayley_cap.min(31);
    if n > cap {
        return Err(Error::CapacityExceeded {
            what: "cayley table atoms",
            needed: n as u128,
            limit: cap as u128,
        });
    }
    Ok(())
}

/// `v_abs`, then the atom subsets by size; within one size, subsets appear
/// in the order the nested extension loops produce them (lexicographic).
pub fn enumerate_elements(n: usize, limits: &Limits) -> Result<Vec<SemigroupElement>> {
    check_n(n, limits)?;
    let mut out = Vec::with_capacity(1 << n);
    out.push(SemigroupElement::ABS);
    for size in 1..=n {
        out.extend((1..=n).combinations(size).map(SemigroupElement::from_atoms));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    order: Vec<SemigroupElement>,
    /// `cells[i][j]` indexes into `order`.
    cells: Vec<Vec<usize>>,
}

impl CayleyTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> &[SemigroupElement] {
        &self.order
    }

    pub fn size(&self) -> usize {
        self.order.len()
    }

    pub fn cell(&self, i: usize, j: usize) -> SemigroupElement {
        self.order[self.cells[i][j]]
    }

    pub fn cell_index(&self, i: usize, j: usize) -> usize {
        self.cells[i][j]
    }

    /// Unordered pairs `i < j` whose product is not `v_abs`.
    pub fn product_edges(&self) -> Vec<(usize, usize, SemigroupElement)> {
        let mut edges = Vec::new();
        for i in 0..self.size() {
            for j in i + 1..self.size() {
                let p = self.cell(i, j);
                if !p.is_abs() {
                    edges.push((i, j, p));
                }
            }
        }
        edges
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.order.iter().map(|e| e.name(self.n)).collect();
        let width = names.iter().map(String::len).max().unwrap_or(1);
        write!(f, "{:width$}", "")?;
        for name in &names {
            write!(f, " {name:>width$}")?;
        }
        writeln!(f)?;
        for (i, name) in names.iter().enumerate() {
            write!(f, "{name:width$}")?;
            for j in 0..self.size() {
                write!(f, " {:>width$}", names[self.cells[i][j]])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn cayley_table(n: usize, limits: &Limits) -> Result<CayleyTable> {
    let order = enumerate_elements(n, limits)?;
    let mut position = vec![0usize; 1 << n];
    for (k, e) in order.iter().enumerate() {
        position[e.0 as usize] = k;
    }
    let cells = order
        .iter()
        .map(|&a| {
            order
                .iter()
                .map(|&b| position[semigroup_op(a, b).0 as usize])
                .collect()
        })
        .collect();
    Ok(CayleyTable { n, order, cells })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    Circular,
    Grid,
}

impl std::str::FromStr for Layout {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circular" => Ok(Layout::Circular),
            "grid" => Ok(Layout::Grid),
            _ => Err(Error::invalid(format!(
                "unknown layout `{s}`, expected circular or grid"
            ))),
        }
    }
}

/// Node coordinates in abstract units, `v_abs` first.
fn positions(count: usize, layout: Layout) -> Vec<(f64, f64)> {
    match layout {
        Layout::Circular => {
            let radius = (count as f64).max(4.0) * 0.5;
            (0..count)
                .map(|k| {
                    let angle = PI / 2.0 - 2.0 * PI * k as f64 / count as f64;
                    (radius * angle.cos(), radius * angle.sin())
                })
                .collect()
        }
        Layout::Grid => {
            let cols = (count as f64).sqrt().ceil() as usize;
            (0..count)
                .map(|k| ((k % cols) as f64 * 1.5, -((k / cols) as f64) * 1.5))
                .collect()
        }
    }
}

/// Snaps tiny negative values to zero so `-0.000` never appears.
fn fixed(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

/// An undirected DOT graph: one node per element, one edge per pair whose
/// product is not absorbing, labelled with the product.
pub fn emit_full_csa_diagram(t: &CayleyTable, layout: Layout) -> String {
    let names: Vec<String> = t.order.iter().map(|e| e.name(t.n)).collect();
    let pos = positions(t.size(), layout);
    let mut out = String::new();
    let _ = writeln!(out, "graph full_csa_{} {{", t.n);
    let _ = writeln!(out, "  layout=neato;");
    let _ = writeln!(out, "  node [shape=circle];");
    for (name, (x, y)) in names.iter().zip(&pos) {
        let _ = writeln!(out, "  {name} [pos=\"{},{}!\"];", fixed(*x), fixed(*y));
    }
    for (i, j, p) in t.product_edges() {
        let _ = writeln!(
            out,
            "  {} -- {} [label=\"{}\"];",
            names[i],
            names[j],
            p.name(t.n)
        );
    }
    out.push_str("}\n");
    out
}

pub const SVG_SIZE: f64 = 800.0;

/// The same drawing as SVG on a fixed 800x800 canvas.
pub fn emit_full_csa_svg(t: &CayleyTable, layout: Layout) -> String {
    let names: Vec<String> = t.order.iter().map(|e| e.name(t.n)).collect();
    let pos = positions(t.size(), layout);
    let (min_x, max_x) = pos
        .iter()
        .map(|p| p.0)
        .minmax()
        .into_option()
        .unwrap_or((0.0, 0.0));
    let (min_y, max_y) = pos
        .iter()
        .map(|p| p.1)
        .minmax()
        .into_option()
        .unwrap_or((0.0, 0.0));
    let margin = 60.0;
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let scale = (SVG_SIZE - 2.0 * margin) / span;
    let screen: Vec<(f64, f64)> = pos
        .iter()
        .map(|&(x, y)| (margin + (x - min_x) * scale, margin + (max_y - y) * scale))
        .collect();

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SVG_SIZE}\" height=\"{SVG_SIZE}\" viewBox=\"0 0 {SVG_SIZE} {SVG_SIZE}\">"
    );
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    for (i, j, _) in t.product_edges() {
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#888\" stroke-width=\"1\"/>",
            fixed(screen[i].0),
            fixed(screen[i].1),
            fixed(screen[j].0),
            fixed(screen[j].1)
        );
    }
    for (name, (x, y)) in names.iter().zip(&screen) {
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"14\" fill=\"#eef\" stroke=\"black\"/>",
            fixed(*x),
            fixed(*y)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\" dominant-baseline=\"middle\">{name}</text>",
            fixed(*x),
            fixed(*y)
        );
    }
    out.push_str("</svg>\n");
    out
}
