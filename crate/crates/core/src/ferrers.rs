//! Ferrers shapes, column-sparse fillings and containment of binary matrices in them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::enumerate::{add, Count};
use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;

/// Down-justified columns with nonincreasing heights, left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FerrersShape(Vec<usize>);

/// Fillings are limited to this many columns.
pub const MAX_COLUMNS: usize = 64;

impl FerrersShape {
    pub fn new(heights: Vec<usize>) -> Result<Self> {
        if heights.is_empty() {
            return Err(Error::Empty);
        }
        if heights.len() > MAX_COLUMNS {
            return Err(Error::TooLong { len: heights.len(), max: MAX_COLUMNS });
        }
        if heights.iter().any(|&h| h == 0) || heights.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("heights {heights:?} must be positive and nonincreasing")));
        }
        Ok(FerrersShape(heights))
    }

    /// The `rows x cols` rectangle.
    pub fn rectangle(rows: usize, cols: usize) -> Result<Self> {
        Self::new(vec![rows; cols])
    }

    pub fn heights(&self) -> &[usize] {
        &self.0
    }

    pub fn n_cols(&self) -> usize {
        self.0.len()
    }

    pub fn n_rows(&self) -> usize {
        self.0[0]
    }

    pub fn cells(&self) -> usize {
        self.0.iter().sum()
    }

    /// Whether cell `(row, col)` (1-based, row 1 at the bottom) is part of the shape.
    pub fn has_cell(&self, row: usize, col: usize) -> bool {
        row >= 1 && col >= 1 && col <= self.0.len() && row <= self.0[col - 1]
    }

    /// Shapes with exactly `n` cells, lexicographic in the height sequence.
    pub fn all_with_cells(n: usize) -> Vec<FerrersShape> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<FerrersShape>) {
            if n == 0 {
                out.push(FerrersShape(cur.clone()));
                return;
            }
            for h in 1..=n.min(max) {
                cur.push(h);
                rec(n - h, h, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out.retain(|s| s.0.len() <= MAX_COLUMNS);
        out.sort();
        out
    }

    /// Shapes with `1..=max_cells` cells, by number of cells and then lexicographically.
    pub fn all_up_to(max_cells: usize) -> Vec<FerrersShape> {
        (1..=max_cells).flat_map(Self::all_with_cells).collect()
    }
}

impl fmt::Display for FerrersShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|h| h.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for FerrersShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let hs = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(hs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FillingClass {
    /// At most one 1-cell per column.
    ColumnSparse,
    /// At most one 1-cell per row and per column.
    Sparse,
    /// Exactly one 1-cell per row and per column.
    Transversal,
}

/// A column-sparse filling: `rows[j]` is the row of the 1-cell in column `j + 1`, or 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FerrersFilling {
    shape: FerrersShape,
    rows: Vec<usize>,
}

impl FerrersFilling {
    pub fn new(shape: FerrersShape, rows: Vec<usize>) -> Result<Self> {
        if rows.len() != shape.n_cols() {
            return Err(Error::Invalid(format!("{} columns given for shape {shape}", rows.len())));
        }
        for (j, &r) in rows.iter().enumerate() {
            if r != 0 && !shape.has_cell(r, j + 1) {
                return Err(Error::Invalid(format!("cell ({r},{}) is outside {shape}", j + 1)));
            }
        }
        Ok(FerrersFilling { shape, rows })
    }

    /// Reads a rectangular matrix with at most one 1 per column as a filling.
    pub fn from_matrix(m: &BinaryMatrix) -> Result<Self> {
        let shape = FerrersShape::rectangle(m.rows(), m.cols())?;
        let mut rows = vec![0; m.cols()];
        for (i, j) in m.ones() {
            if rows[j - 1] != 0 {
                return Err(Error::Invalid(format!("column {j} has more than one 1-cell")));
            }
            rows[j - 1] = i;
        }
        Self::new(shape, rows)
    }

    pub fn shape(&self) -> &FerrersShape {
        &self.shape
    }

    pub fn column_rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn row_sums(&self) -> Vec<usize> {
        let mut s = vec![0; self.shape.n_rows()];
        for &r in self.rows.iter().filter(|&&r| r > 0) {
            s[r - 1] += 1;
        }
        s
    }

    pub fn col_sums(&self) -> Vec<usize> {
        self.rows.iter().map(|&r| usize::from(r > 0)).collect()
    }

    /// The most restrictive class the filling belongs to.
    pub fn class(&self) -> FillingClass {
        let rs = self.row_sums();
        if rs.iter().any(|&x| x > 1) {
            FillingClass::ColumnSparse
        } else if rs.iter().all(|&x| x == 1) && self.rows.iter().all(|&r| r > 0) {
            FillingClass::Transversal
        } else {
            FillingClass::Sparse
        }
    }

    pub fn is_in(&self, class: FillingClass) -> bool {
        self.class() >= class
    }
}

/// Pattern columns for matching: `Some(row)` for the single 1-cell, `None` for an empty column.
/// Returns `None` if a column has two or more 1-cells (never contained in a column-sparse filling).
fn pattern_columns(m: &BinaryMatrix) -> Option<Vec<Option<usize>>> {
    let mut cols = vec![None; m.cols()];
    for (i, j) in m.ones() {
        if cols[j - 1].is_some() {
            return None;
        }
        cols[j - 1] = Some(i);
    }
    Some(cols)
}

struct Matcher<'a> {
    heights: &'a [usize],
    filled: &'a [usize],
    pat: &'a [Option<usize>],
    k: usize,
    map: Vec<usize>,
}

impl Matcher<'_> {
    /// Whether the rows assigned so far extend to increasing rows `i_1 < ... < i_k <= top`.
    fn rows_fit(&self, top: usize) -> bool {
        let mut prev = 0;
        for a in 0..self.k {
            let v = if self.map[a] > 0 { self.map[a] } else { prev + 1 };
            if v <= prev {
                return false;
            }
            prev = v;
        }
        prev <= top
    }

    fn order_ok(&self, a: usize, r: usize) -> bool {
        (0..self.k).all(|b| {
            let m = self.map[b];
            m == 0 || (b < a && r >= m + (a - b)) || (b > a && m >= r + (b - a)) || (b == a && m == r)
        })
    }

    fn search(&mut self, b: usize, prev: usize, limit: usize, force_last: bool) -> bool {
        let n = self.pat.len();
        if b == n {
            return self.rows_fit(self.heights[prev - 1]);
        }
        let hi = limit - (n - 1 - b);
        let lo = if force_last && b == n - 1 { limit } else { prev + 1 };
        if lo > hi {
            return false;
        }
        match self.pat[b] {
            // an empty pattern column is best matched as far left as allowed
            None => self.search(b + 1, lo, limit, force_last),
            Some(a) => {
                let a = a - 1;
                for j in lo..=hi {
                    let r = self.filled[j - 1];
                    if r == 0 || !self.order_ok(a, r) {
                        continue;
                    }
                    let old = self.map[a];
                    self.map[a] = r;
                    if self.rows_fit(self.heights[j - 1]) && self.search(b + 1, j, limit, force_last) {
                        self.map[a] = old;
                        return true;
                    }
                    self.map[a] = old;
                }
                false
            }
        }
    }
}

/// Containment restricted to the first `upto` columns; with `force_last` the occurrence must
/// use column `upto` as its last column.
fn contains_prefix(
    heights: &[usize],
    filled: &[usize],
    pat: &[Option<usize>],
    k: usize,
    upto: usize,
    force_last: bool,
) -> bool {
    if pat.len() > upto {
        return false;
    }
    let mut m = Matcher { heights, filled, pat, k, map: vec![0; k] };
    m.search(0, 0, upto, force_last)
}

/// True iff some rows `i_1 < ... < i_k` and columns `j_1 < ... < j_n` span a rectangle inside the
/// shape on which the filling has a 1 wherever `m` does.
pub fn filling_contains(phi: &FerrersFilling, m: &BinaryMatrix) -> bool {
    if m.rows() == 0 || m.cols() == 0 {
        return true;
    }
    let Some(pat) = pattern_columns(m) else {
        return false;
    };
    contains_prefix(phi.shape.heights(), &phi.rows, &pat, m.rows(), phi.shape.n_cols(), false)
}

/// Row and column 1-cell counts of a filling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "rows [{}] cols [{}]", j(&self.rows), j(&self.cols))
    }
}

struct Counter<'a> {
    heights: &'a [usize],
    class: FillingClass,
    pats: Vec<(Vec<Option<usize>>, usize)>,
    filled: Vec<usize>,
    row_count: Vec<usize>,
    row_target: Option<&'a [usize]>,
    col_target: Option<&'a [usize]>,
    out: BTreeMap<Profile, Count>,
    overflow: bool,
}

impl Counter<'_> {
    fn avoids_at(&self, j: usize) -> bool {
        !self.pats.iter().any(|(p, k)| contains_prefix(self.heights, &self.filled, p, *k, j, true))
    }

    fn row_ok(&self, r: usize) -> bool {
        let cap = match self.class {
            FillingClass::ColumnSparse => usize::MAX,
            _ => 1,
        };
        let target = self.row_target.map_or(cap, |t| t[r - 1].min(cap));
        self.row_count[r - 1] < target
    }

    fn run(&mut self, j: usize) {
        let n = self.heights.len();
        if j == n {
            if self.class == FillingClass::Transversal && self.row_count.iter().any(|&c| c != 1) {
                return;
            }
            if let Some(t) = self.row_target {
                if t != self.row_count.as_slice() {
                    return;
                }
            }
            let prof = Profile {
                rows: self.row_count.clone(),
                cols: self.filled.iter().map(|&r| usize::from(r > 0)).collect(),
            };
            let e = self.out.entry(prof).or_insert(0);
            match add(*e, 1) {
                Ok(v) => *e = v,
                Err(_) => self.overflow = true,
            }
            return;
        }
        let want = self.col_target.map(|t| t[j]);
        if self.class != FillingClass::Transversal && want != Some(1) {
            self.filled[j] = 0;
            self.run(j + 1);
        }
        if want == Some(0) {
            return;
        }
        for r in 1..=self.heights[j] {
            if !self.row_ok(r) {
                continue;
            }
            self.filled[j] = r;
            self.row_count[r - 1] += 1;
            if self.avoids_at(j + 1) {
                self.run(j + 1);
            }
            self.row_count[r - 1] -= 1;
        }
        self.filled[j] = 0;
    }
}

fn check_profile(shape: &FerrersShape, class: FillingClass, rows: Option<&[usize]>, cols: Option<&[usize]>) -> Result<()> {
    if let Some(r) = rows {
        if r.len() != shape.n_rows() {
            return Err(Error::Profile(format!("{} row counts for {} rows", r.len(), shape.n_rows())));
        }
        for (i, &c) in r.iter().enumerate() {
            let len = shape.heights().iter().filter(|&&h| h > i).count();
            let ok = match class {
                FillingClass::ColumnSparse => c <= len,
                FillingClass::Sparse => c <= 1,
                FillingClass::Transversal => c == 1,
            };
            if !ok {
                return Err(Error::Profile(format!("row {} cannot hold {c} ones", i + 1)));
            }
        }
    }
    if let Some(c) = cols {
        if c.len() != shape.n_cols() {
            return Err(Error::Profile(format!("{} column counts for {} columns", c.len(), shape.n_cols())));
        }
        let bad = match class {
            FillingClass::Transversal => c.iter().any(|&x| x != 1),
            _ => c.iter().any(|&x| x > 1),
        };
        if bad {
            return Err(Error::Profile("column counts must be 0 or 1 (exactly 1 for transversals)".into()));
        }
    }
    if let (Some(r), Some(c)) = (rows, cols) {
        if r.iter().sum::<usize>() != c.iter().sum::<usize>() {
            return Err(Error::Profile("row and column totals differ".into()));
        }
    }
    Ok(())
}

fn profile_counts_inner(
    shape: &FerrersShape,
    class: FillingClass,
    patterns: &[BinaryMatrix],
    rows: Option<&[usize]>,
    cols: Option<&[usize]>,
) -> Result<BTreeMap<Profile, Count>> {
    check_profile(shape, class, rows, cols)?;
    if patterns.iter().any(|m| m.rows() == 0 || m.cols() == 0) {
        return Ok(BTreeMap::new());
    }
    let mut c = Counter {
        heights: shape.heights(),
        class,
        pats: patterns.iter().filter_map(|m| pattern_columns(m).map(|p| (p, m.rows()))).collect(),
        filled: vec![0; shape.n_cols()],
        row_count: vec![0; shape.n_rows()],
        row_target: rows,
        col_target: cols,
        out: BTreeMap::new(),
        overflow: false,
    };
    if class == FillingClass::Transversal && shape.n_rows() != shape.n_cols() {
        return Ok(c.out);
    }
    c.run(0);
    if c.overflow {
        return Err(Error::Overflow);
    }
    Ok(c.out)
}

/// Number of fillings of each row/column profile that avoid every matrix in `patterns`.
pub fn profile_counts(
    shape: &FerrersShape,
    class: FillingClass,
    patterns: &[BinaryMatrix],
) -> Result<BTreeMap<Profile, Count>> {
    profile_counts_inner(shape, class, patterns, None, None)
}

/// Number of fillings of `class` avoiding all of `patterns`, optionally with exact row and
/// column 1-cell counts.
pub fn count_avoiding_fillings(
    shape: &FerrersShape,
    class: FillingClass,
    patterns: &[BinaryMatrix],
    row_profile: Option<&[usize]>,
    col_profile: Option<&[usize]>,
) -> Result<Count> {
    profile_counts_inner(shape, class, patterns, row_profile, col_profile)?
        .into_values()
        .try_fold(0, add)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FerrersWitness {
    pub shape: FerrersShape,
    pub profile: Option<Profile>,
    pub left: Count,
    pub right: Count,
}

impl fmt::Display for FerrersWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "shape ({})", self.shape)?;
        if let Some(p) = &self.profile {
            write!(f, " {p}")?;
        }
        write!(f, ": {} vs {}", self.left, self.right)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceCheck {
    pub holds: bool,
    pub max_cells: usize,
    pub shapes_checked: usize,
    pub witness: Option<FerrersWitness>,
}

fn first_profile_difference(
    shape: &FerrersShape,
    a: &BTreeMap<Profile, Count>,
    b: &BTreeMap<Profile, Count>,
) -> Option<FerrersWitness> {
    let keys: std::collections::BTreeSet<&Profile> = a.keys().chain(b.keys()).collect();
    keys.into_iter().find_map(|k| {
        let (x, y) = (a.get(k).copied().unwrap_or(0), b.get(k).copied().unwrap_or(0));
        (x != y).then(|| FerrersWitness { shape: shape.clone(), profile: Some(k.clone()), left: x, right: y })
    })
}

fn run_check<F>(max_cells: usize, per_shape: F) -> Result<EquivalenceCheck>
where
    F: Fn(&FerrersShape) -> Result<Option<FerrersWitness>> + Sync,
{
    if max_cells == 0 {
        return Err(Error::Invalid("max_cells must be at least 1".into()));
    }
    let mut checked = 0;
    for n in 1..=max_cells {
        let shapes = FerrersShape::all_with_cells(n);
        let res: Vec<Result<Option<FerrersWitness>>> = shapes.par_iter().map(&per_shape).collect();
        for r in res {
            checked += 1;
            if let Some(w) = r? {
                return Ok(EquivalenceCheck { holds: false, max_cells, shapes_checked: checked, witness: Some(w) });
            }
        }
    }
    Ok(EquivalenceCheck { holds: true, max_cells, shapes_checked: checked, witness: None })
}

fn profile_check(p1: &[BinaryMatrix], p2: &[BinaryMatrix], class: FillingClass, max_cells: usize) -> Result<EquivalenceCheck> {
    run_check(max_cells, |s| {
        let a = profile_counts(s, class, p1)?;
        let b = profile_counts(s, class, p2)?;
        Ok(first_profile_difference(s, &a, &b))
    })
}

/// Column-sparse fillings avoiding `m1` and `m2` agree in number for every shape and profile.
pub fn check_sf_equiv(m1: &BinaryMatrix, m2: &BinaryMatrix, max_cells: usize) -> Result<EquivalenceCheck> {
    check_set_sf_equiv(std::slice::from_ref(m1), std::slice::from_ref(m2), max_cells)
}

/// Set version of [`check_sf_equiv`]: fillings avoid every matrix of the set.
pub fn check_set_sf_equiv(p1: &[BinaryMatrix], p2: &[BinaryMatrix], max_cells: usize) -> Result<EquivalenceCheck> {
    profile_check(p1, p2, FillingClass::ColumnSparse, max_cells)
}

/// Transversal counts agree for every shape.
pub fn check_ft_equiv(m1: &BinaryMatrix, m2: &BinaryMatrix, max_cells: usize) -> Result<EquivalenceCheck> {
    let (p1, p2) = (std::slice::from_ref(m1), std::slice::from_ref(m2));
    run_check(max_cells, |s| {
        let a = count_avoiding_fillings(s, FillingClass::Transversal, p1, None, None)?;
        let b = count_avoiding_fillings(s, FillingClass::Transversal, p2, None, None)?;
        Ok((a != b).then(|| FerrersWitness { shape: s.clone(), profile: None, left: a, right: b }))
    })
}

/// Sparse fillings avoiding `m1` and `m2` agree for every shape and profile. Both matrices
/// must have a 1-cell in every row and column.
pub fn sparse_transversal_consistency(m1: &BinaryMatrix, m2: &BinaryMatrix, max_cells: usize) -> Result<EquivalenceCheck> {
    for m in [m1, m2] {
        if m.row_sums().contains(&0) || m.col_sums().contains(&0) {
            return Err(Error::Invalid("matrix has an empty row or column".into()));
        }
    }
    profile_check(std::slice::from_ref(m1), std::slice::from_ref(m2), FillingClass::Sparse, max_cells)
}
