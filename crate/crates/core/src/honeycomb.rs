//! Honeycombs on the size-`n` triangle and the Hall polynomials they compute.
//!
//! Up-cell `U(r, c)` sits in row `r = 1..=n` (top to bottom), column
//! `c = 1..=r`. Each up-cell is a honeycomb vertex carrying a
//! [`VertexLabels`]: `(i, j)` on its NE edge, `(i', j')` on its NW edge and
//! `(i'', j'')` on its S edge. The down-cell between `U(r, c)` and
//! `U(r, c+1)` passes lines straight through to `U(r-1, c)`; its only
//! freedom is the number `f = j(U(r,c)) = i'(U(r,c+1))` of horizontal lines
//! crossing it.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::fugacity::{vertex_fugacity, VertexLabels};
use crate::partition::{strip_blocks, Partition, PartitionError};
use crate::polyring::TPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HoneycombError {
    #[error("U({row},{col}): labels {labels} are not balanced")]
    Unbalanced {
        row: usize,
        col: usize,
        labels: VertexLabels,
    },
    #[error("down-cell between U({row},{col}) and U({row},{}): {what}", col + 1)]
    PassThrough {
        row: usize,
        col: usize,
        what: &'static str,
    },
    #[error("U({row},{col}): boundary {side} edge has a nonzero j-component")]
    BoundaryJ {
        row: usize,
        col: usize,
        side: &'static str,
    },
    #[error("U({row},{col}): a multiplicity exceeds k={k}")]
    ExceedsK { row: usize, col: usize, k: usize },
    #[error("{side} boundary carries {total} lines, expected k={k}")]
    BoundaryTotal {
        side: &'static str,
        total: usize,
        k: usize,
    },
    #[error("U({row},{col}): labels would be negative or exceed k")]
    OutOfRange { row: usize, col: usize },
    #[error("row {row} has {len} cells, expected {row}")]
    Shape { row: usize, len: usize },
    #[error("cannot parse honeycomb: {0}")]
    Parse(String),
    #[error("boundary {side} is {found}, expected {expected}")]
    BoundaryMismatch {
        side: &'static str,
        found: String,
        expected: String,
    },
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// The three boundary partitions of a honeycomb.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundary {
    pub lam: Partition,
    pub mu: Partition,
    pub nu: Partition,
}

/// A labelled size-`n` triangle; empty cells hold all-zero labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HoneycombGrid {
    k: usize,
    rows: Vec<Vec<VertexLabels>>,
}

impl HoneycombGrid {
    /// Builds a grid from rows of up-cells; row `r` must hold `r` cells.
    pub fn from_rows(k: usize, rows: Vec<Vec<VertexLabels>>) -> Result<Self, HoneycombError> {
        for (idx, row) in rows.iter().enumerate() {
            if row.len() != idx + 1 {
                return Err(HoneycombError::Shape {
                    row: idx + 1,
                    len: row.len(),
                });
            }
        }
        Ok(HoneycombGrid { k, rows })
    }

    /// The grid with every label zero.
    pub fn empty(k: usize, n: usize) -> Self {
        let rows = (1..=n).map(|r| vec![VertexLabels::default(); r]).collect();
        HoneycombGrid { k, rows }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<VertexLabels>] {
        &self.rows
    }

    /// Cell `U(row, col)`, 1-based.
    pub fn cell(&self, row: usize, col: usize) -> &VertexLabels {
        &self.rows[row - 1][col - 1]
    }

    pub fn cell_mut(&mut self, row: usize, col: usize) -> &mut VertexLabels {
        &mut self.rows[row - 1][col - 1]
    }

    /// Horizontal multiplicities `f`, one row of `r - 1` values per row `r`.
    pub fn free_parameters(&self) -> Vec<Vec<usize>> {
        self.rows
            .iter()
            .map(|row| row[..row.len() - 1].iter().map(|v| v.j).collect())
            .collect()
    }

    /// Checks every local constraint and reads off the boundary.
    pub fn validate(&self) -> Result<Boundary, HoneycombError> {
        let n = self.n();
        for r in 1..=n {
            for c in 1..=r {
                let v = self.cell(r, c);
                if !v.is_balanced() {
                    return Err(HoneycombError::Unbalanced {
                        row: r,
                        col: c,
                        labels: *v,
                    });
                }
                if v.max_label() > self.k {
                    return Err(HoneycombError::ExceedsK {
                        row: r,
                        col: c,
                        k: self.k,
                    });
                }
                if c == 1 && v.jp != 0 {
                    return Err(HoneycombError::BoundaryJ {
                        row: r,
                        col: c,
                        side: "NW",
                    });
                }
                if c == r && v.j != 0 {
                    return Err(HoneycombError::BoundaryJ {
                        row: r,
                        col: c,
                        side: "NE",
                    });
                }
                if r == n && v.jpp != 0 {
                    return Err(HoneycombError::BoundaryJ {
                        row: r,
                        col: c,
                        side: "S",
                    });
                }
            }
            for c in 1..r {
                let (west, east) = (self.cell(r, c), self.cell(r, c + 1));
                let above = self.cell(r - 1, c);
                let what = if west.j != east.ip {
                    Some("horizontal multiplicities j and i' differ")
                } else if above.ipp != east.jp {
                    Some("output i'' differs from input j'")
                } else if above.jpp != west.i {
                    Some("output j'' differs from input i")
                } else {
                    None
                };
                if let Some(what) = what {
                    return Err(HoneycombError::PassThrough {
                        row: r,
                        col: c,
                        what,
                    });
                }
            }
        }
        let lam_m: Vec<usize> = (0..n).map(|p| self.cell(n - p, 1).ip).collect();
        let mu_m: Vec<usize> = (0..n).map(|p| self.cell(p + 1, p + 1).i).collect();
        let nu_m: Vec<usize> = (0..n).map(|p| self.cell(n, p + 1).ipp).collect();
        let side = |name, m: Vec<usize>| -> Result<Partition, HoneycombError> {
            let total: usize = m.iter().sum();
            if total != self.k {
                return Err(HoneycombError::BoundaryTotal {
                    side: name,
                    total,
                    k: self.k,
                });
            }
            Ok(Partition::from_multiplicities(&m)?)
        };
        Ok(Boundary {
            lam: side("NW", lam_m)?,
            mu: side("NE", mu_m)?,
            nu: side("S", nu_m)?,
        })
    }

    /// Product of the vertex fugacities.
    pub fn fugacity(&self) -> Result<TPoly, HoneycombError> {
        self.validate()?;
        Ok(self.fugacity_unchecked())
    }

    fn fugacity_unchecked(&self) -> TPoly {
        self.rows
            .iter()
            .flatten()
            .filter(|v| !v.is_zero())
            .map(|v| vertex_fugacity(v).expect("grid cells are balanced"))
            .product()
    }

    /// Rebuilds the grid determined by boundaries `lam`, `mu` and the
    /// horizontal multiplicities `f` (row `r` holds `r - 1` entries).
    pub fn from_free_parameters(
        lam: &Partition,
        mu: &Partition,
        f: &[Vec<usize>],
    ) -> Result<Self, HoneycombError> {
        check_context(lam, mu)?;
        let n = lam.n();
        if f.len() != n || f.iter().enumerate().any(|(idx, row)| row.len() != idx) {
            return Err(HoneycombError::Parse(
                "free parameters must have r-1 entries in row r".into(),
            ));
        }
        let mut grid = HoneycombGrid::empty(lam.k(), n);
        for r in 1..=n {
            for c in 1..=r {
                let labels = forced(&grid, lam, mu, r, c);
                let f = if c < r { f[r - 1][c - 1] } else { 0 };
                if !f_range(lam.k(), labels, c == r).contains(&f) {
                    return Err(HoneycombError::OutOfRange { row: r, col: c });
                }
                *grid.cell_mut(r, c) = with_f(labels, f);
            }
        }
        grid.validate()?;
        Ok(grid)
    }

    /// Row-major text form, `i/j/i'/j'/i''/j''` per cell, comma separated.
    pub fn to_text(&self) -> String {
        self.rows
            .iter()
            .flatten()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Inverse of [`HoneycombGrid::to_text`].
    pub fn from_text(text: &str, k: usize) -> Result<Self, HoneycombError> {
        let cells = parse_cells(text)?;
        let n = triangle_side(cells.len())?;
        let mut it = cells.into_iter();
        let rows = (1..=n).map(|r| it.by_ref().take(r).collect()).collect();
        HoneycombGrid::from_rows(k, rows)
    }

    /// Reads cells listed along NW-SE diagonals: first `U(1,1), U(2,2), ...,
    /// U(n,n)`, then `U(2,1), ..., U(n,n-1)`, and so on down to `U(n,1)`.
    pub fn from_diagonal_text(text: &str, k: usize) -> Result<Self, HoneycombError> {
        let cells = parse_cells(text)?;
        let n = triangle_side(cells.len())?;
        let mut grid = HoneycombGrid::empty(k, n);
        let mut it = cells.into_iter();
        for d in 0..n {
            for c in 1..=n - d {
                *grid.cell_mut(c + d, c) = it.next().expect("cell count checked");
            }
        }
        Ok(grid)
    }

    /// SVG drawing: vertices at up-cell centres, segments labelled by
    /// multiplicity, boundary rays drawn with class `ray`.
    pub fn to_svg(&self) -> String {
        const UNIT: f64 = 60.0;
        let n = self.n();
        let h = 3f64.sqrt() / 2.0;
        let pos = |r: usize, c: usize| -> (f64, f64) {
            let x = (c as f64 - r as f64 / 2.0 + n as f64 / 2.0 + 1.0) * UNIT;
            let y = (r as f64 * h + 0.5) * UNIT;
            (x, y)
        };
        let width = (n as f64 + 3.0) * UNIT;
        let height = ((n as f64 + 1.0) * h + 1.0) * UNIT;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
        );
        let mut segment = |class: &str, a: (f64, f64), b: (f64, f64), m: usize| {
            if m == 0 {
                return;
            }
            let _ = writeln!(
                out,
                r#"  <line class="{class}" x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="black" stroke-width="{}"/>"#,
                a.0, a.1, b.0, b.1, m
            );
            let _ = writeln!(
                out,
                r#"  <text x="{:.1}" y="{:.1}" font-size="12" fill="blue">{m}</text>"#,
                (a.0 + b.0) / 2.0 + 3.0,
                (a.1 + b.1) / 2.0 - 3.0
            );
        };
        for r in 1..=n {
            for c in 1..=r {
                let v = self.cell(r, c);
                let p = pos(r, c);
                if c < r {
                    segment("edge", p, pos(r, c + 1), v.j);
                }
                if r > 1 && c < r {
                    segment("edge", p, pos(r - 1, c), v.i);
                }
                if r < n {
                    segment("edge", p, pos(r + 1, c + 1), v.ipp);
                }
                if c == 1 {
                    segment("ray", p, (p.0 - UNIT, p.1), v.ip);
                }
                if c == r {
                    segment("ray", p, (p.0 + UNIT / 2.0, p.1 - h * UNIT), v.i);
                }
                if r == n {
                    segment("ray", p, (p.0 + UNIT / 2.0, p.1 + h * UNIT), v.ipp);
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

impl fmt::Display for HoneycombGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for HoneycombGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HoneycombGrid(k={}, {})", self.k, self.to_text())
    }
}

fn parse_cells(text: &str) -> Result<Vec<VertexLabels>, HoneycombError> {
    text.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<VertexLabels>()
                .map_err(|e| HoneycombError::Parse(e.to_string()))
        })
        .collect()
}

fn triangle_side(cells: usize) -> Result<usize, HoneycombError> {
    let mut n = 0;
    while n * (n + 1) / 2 < cells {
        n += 1;
    }
    if n * (n + 1) / 2 == cells && n > 0 {
        Ok(n)
    } else {
        Err(HoneycombError::Parse(format!(
            "{cells} cells do not fill a triangle"
        )))
    }
}

fn check_context(a: &Partition, b: &Partition) -> Result<(), HoneycombError> {
    if a.same_context(b) {
        Ok(())
    } else {
        Err(PartitionError::ContextMismatch.into())
    }
}

/// The labels of `U(r, c)` fixed by the rows above and the boundary, with
/// `i'` taken from the horizontal multiplicity to the west.
/// Returns `(i, i', j')`.
fn forced(
    grid: &HoneycombGrid,
    lam: &Partition,
    mu: &Partition,
    r: usize,
    c: usize,
) -> (usize, usize, usize) {
    let i = if c < r {
        grid.cell(r - 1, c).jpp
    } else {
        mu.m(r - 1)
    };
    let ip = if c > 1 {
        grid.cell(r, c - 1).j
    } else {
        lam.m(lam.n() - r)
    };
    let jp = if c > 1 {
        grid.cell(r - 1, c - 1).ipp
    } else {
        0
    };
    (i, ip, jp)
}

/// Range of the horizontal multiplicity `f = j` east of a cell keeping
/// `i''` and `j''` within `0..=k`; empty if the forced labels exceed `k`.
#[allow(clippy::reversed_empty_ranges)]
fn f_range(
    k: usize,
    (i, ip, jp): (usize, usize, usize),
    last_in_row: bool,
) -> std::ops::RangeInclusive<usize> {
    if i > k || ip > k || jp > k {
        return 1..=0;
    }
    let lo = ip.saturating_sub(i);
    let hi = if last_in_row {
        0
    } else {
        (jp + ip).min(k + ip - i)
    };
    lo..=hi
}

fn with_f((i, ip, jp): (usize, usize, usize), f: usize) -> VertexLabels {
    VertexLabels::new(i, f, ip, jp, jp + ip - f, i + f - ip)
}

/// Depth-first enumeration; calls `visit` on each valid grid in
/// lexicographic order of the row-major free parameters.
pub fn for_each_honeycomb(
    lam: &Partition,
    mu: &Partition,
    nu: Option<&Partition>,
    mut visit: impl FnMut(&HoneycombGrid),
) {
    if !lam.same_context(mu) || nu.is_some_and(|nu| !lam.same_context(nu)) {
        return;
    }
    let mut grid = HoneycombGrid::empty(lam.k(), lam.n());
    let mut search = Search {
        lam,
        mu,
        nu,
        grid: &mut grid,
        visit: &mut visit,
    };
    search.cell(1, 1);
}

struct Search<'a, F: FnMut(&HoneycombGrid)> {
    lam: &'a Partition,
    mu: &'a Partition,
    nu: Option<&'a Partition>,
    grid: &'a mut HoneycombGrid,
    visit: &'a mut F,
}

impl<F: FnMut(&HoneycombGrid)> Search<'_, F> {
    fn cell(&mut self, r: usize, c: usize) {
        let n = self.lam.n();
        if r > n {
            (self.visit)(self.grid);
            return;
        }
        let (next_r, next_c) = if c == r { (r + 1, 1) } else { (r, c + 1) };
        let labels = forced(self.grid, self.lam, self.mu, r, c);
        for f in f_range(self.lam.k(), labels, c == r) {
            let v = with_f(labels, f);
            if r == n && (v.jpp != 0 || self.nu.is_some_and(|nu| nu.m(c - 1) != v.ipp)) {
                continue;
            }
            *self.grid.cell_mut(r, c) = v;
            self.cell(next_r, next_c);
        }
        *self.grid.cell_mut(r, c) = VertexLabels::default();
    }
}

/// All honeycombs with NW boundary `lam`, NE boundary `mu` and, if given,
/// S boundary `nu`.
pub fn enumerate(lam: &Partition, mu: &Partition, nu: Option<&Partition>) -> Vec<HoneycombGrid> {
    let mut out = Vec::new();
    for_each_honeycomb(lam, mu, nu, |g| out.push(g.clone()));
    out
}

/// `c^{lam,mu}_nu(t)`: the sum of fugacities of honeycombs with the given
/// boundaries.
pub fn structure_constant(lam: &Partition, mu: &Partition, nu: &Partition) -> TPoly {
    let mut total = TPoly::zero();
    for_each_honeycomb(lam, mu, Some(nu), |g| total += g.fugacity_unchecked());
    total
}

/// `P^lam P^mu` expanded in the `P` basis; zero terms are omitted.
pub fn product_expansion(lam: &Partition, mu: &Partition) -> BTreeMap<Partition, TPoly> {
    let n = lam.n();
    let mut acc: BTreeMap<Vec<usize>, TPoly> = BTreeMap::new();
    for_each_honeycomb(lam, mu, None, |g| {
        let m: Vec<usize> = (1..=n).map(|c| g.cell(n, c).ipp).collect();
        *acc.entry(m).or_insert_with(TPoly::zero) += g.fugacity_unchecked();
    });
    acc.into_iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(m, p)| {
            (
                Partition::from_multiplicities(&m).expect("boundary multiplicities"),
                p,
            )
        })
        .collect()
}

/// The honeycomb with boundaries `(lam, (r), nu)` for a horizontal strip
/// `nu / lam` with `r` boxes.
///
/// The line entering at NE position `r` runs SW and turns W for `b` steps
/// on reaching the diagonal of each strip block `(c, b)`; every other
/// horizontal multiplicity is zero.
pub fn pieri_honeycomb(
    lam: &Partition,
    r: usize,
    nu: &Partition,
) -> Result<HoneycombGrid, HoneycombError> {
    check_context(lam, nu)?;
    let n = lam.n();
    let mu = Partition::row(r, lam.k(), n)?;
    let blocks = strip_blocks(lam, nu)?;
    if blocks.iter().map(|b| b.b).sum::<usize>() != r {
        return Err(PartitionError::NotHorizontalStrip {
            lam: lam.to_string(),
            nu: nu.to_string(),
        }
        .into());
    }
    let mut f: Vec<Vec<usize>> = (0..n).map(|row| vec![0; row]).collect();
    let mut col = r + 1;
    for block in &blocks {
        let row = n - 1 - block.c + col;
        for _ in 0..block.b {
            f[row - 1][col - 2] = 1;
            col -= 1;
        }
    }
    let grid = HoneycombGrid::from_free_parameters(lam, &mu, &f)?;
    let found = grid.validate()?.nu;
    if &found != nu {
        return Err(HoneycombError::BoundaryMismatch {
            side: "S",
            found: found.to_string(),
            expected: nu.to_string(),
        });
    }
    Ok(grid)
}
