//! Partitions, skew Young diagrams, and semistandard Young tableaux.
//!
//! Cells are 1-based `(row, col)` coordinates. All cell iteration is
//! row-major (row ascending, then column ascending) and that order is a
//! documented contract: downstream evaluation relies on it for reproducible
//! term streams.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeError {
    #[error("partition parts must be positive and weakly decreasing, got {0:?}")]
    InvalidPartition(Vec<u32>),
    #[error("inner shape does not fit: mu must have at most as many parts as lambda and mu_i <= lambda_i")]
    MuNotContained,
    #[error("skew shape has no cells")]
    EmptyShape,
    #[error("filling has {got} entries but the shape has {want} cells")]
    EntryCount { got: usize, want: usize },
    #[error("filling entries must be positive integers")]
    NonPositiveEntry,
    #[error("filling violates tableau constraints at cell ({row},{col})")]
    NotSemistandard { row: u32, col: u32 },
}

/// A partition: a weakly decreasing sequence of positive integers. The empty
/// partition is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, ShapeError> {
        let ok = parts.iter().all(|&p| p >= 1) && parts.windows(2).all(|w| w[0] >= w[1]);
        if !ok {
            return Err(ShapeError::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from raw input, trimming trailing zeros first.
    pub fn from_trimmed(mut parts: Vec<u32>) -> Result<Self, ShapeError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition::new(parts)
    }

    pub const fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th part (0-based); 0 beyond the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Containment of Young diagrams: `other` fits inside `self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| other.part(i) <= self.part(i))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", strs.join(","))
    }
}

/// A cell of a Young diagram, 1-based. The derived ordering is row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Self {
        Cell { row, col }
    }

    /// The diagonal index `col - row`.
    pub fn diagonal(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A skew shape `lambda/mu`. The cell set is `D_lambda \ D_mu` and must be
/// nonempty; disconnected diagrams (including empty rows) are allowed, and
/// tableau constraints apply only to cells actually present.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewShape {
    lambda: Partition,
    mu: Partition,
}

impl SkewShape {
    pub fn new(lambda: Partition, mu: Option<Partition>) -> Result<Self, ShapeError> {
        let mu = mu.unwrap_or_else(Partition::empty);
        if !lambda.contains(&mu) {
            return Err(ShapeError::MuNotContained);
        }
        let shape = SkewShape { lambda, mu };
        if shape.num_cells() == 0 {
            return Err(ShapeError::EmptyShape);
        }
        Ok(shape)
    }

    /// Convenience constructor from raw part lists; trailing zeros in `mu`
    /// are trimmed and an empty `mu` means the straight shape.
    pub fn from_parts(lambda: &[u32], mu: &[u32]) -> Result<Self, ShapeError> {
        let lambda = Partition::from_trimmed(lambda.to_vec())?;
        let mu = Partition::from_trimmed(mu.to_vec())?;
        SkewShape::new(lambda, if mu.is_empty() { None } else { Some(mu) })
    }

    /// Straight shape `lambda/()`.
    pub fn straight(lambda: &[u32]) -> Result<Self, ShapeError> {
        SkewShape::from_parts(lambda, &[])
    }

    /// Single column of height `n`, i.e. `(1^n)`.
    pub fn column(n: usize) -> Result<Self, ShapeError> {
        SkewShape::straight(&vec![1; n])
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    pub fn num_rows(&self) -> u32 {
        self.lambda.len() as u32
    }

    pub fn num_cols(&self) -> u32 {
        self.lambda.part(0)
    }

    /// Number of cells in row `row` (1-based).
    fn row_len(&self, row: u32) -> u32 {
        self.lambda.part(row as usize - 1) - self.mu.part(row as usize - 1)
    }

    pub fn num_cells(&self) -> usize {
        (1..=self.num_rows())
            .map(|r| self.row_len(r) as usize)
            .sum()
    }

    pub fn contains_cell(&self, row: u32, col: u32) -> bool {
        row >= 1
            && col >= 1
            && row <= self.num_rows()
            && col > self.mu.part(row as usize - 1)
            && col <= self.lambda.part(row as usize - 1)
    }

    /// Position of `cell` in the row-major cell order.
    pub fn index_of(&self, cell: Cell) -> Option<usize> {
        if !self.contains_cell(cell.row, cell.col) {
            return None;
        }
        let before: usize = (1..cell.row).map(|r| self.row_len(r) as usize).sum();
        Some(before + (cell.col - self.mu.part(cell.row as usize - 1) - 1) as usize)
    }

    /// Every cell of `D_{lambda/mu}` exactly once, row-major.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.num_cells());
        for row in 1..=self.num_rows() {
            let lo = self.mu.part(row as usize - 1) + 1;
            let hi = self.lambda.part(row as usize - 1);
            for col in lo..=hi {
                out.push(Cell::new(row, col));
            }
        }
        out
    }

    /// The corner set: cells with no right neighbor and no lower neighbor.
    pub fn corners(&self) -> Vec<Cell> {
        self.cells()
            .into_iter()
            .filter(|c| {
                !self.contains_cell(c.row + 1, c.col) && !self.contains_cell(c.row, c.col + 1)
            })
            .collect()
    }

    pub fn is_corner(&self, cell: Cell) -> bool {
        self.contains_cell(cell.row, cell.col)
            && !self.contains_cell(cell.row + 1, cell.col)
            && !self.contains_cell(cell.row, cell.col + 1)
    }

    /// Cell indices of column `j` (1-based), top to bottom. Columns of a
    /// skew shape are always contiguous runs of rows.
    pub fn column_cell_indices(&self, j: u32) -> Vec<usize> {
        let mut out = Vec::new();
        for row in 1..=self.num_rows() {
            if self.contains_cell(row, j) {
                out.push(self.index_of(Cell::new(row, j)).expect("cell present"));
            }
        }
        out
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mu.is_empty() {
            write!(f, "{}", self.lambda)
        } else {
            write!(f, "{}/{}", self.lambda, self.mu)
        }
    }
}

/// A filling of a skew shape: one positive entry per cell, stored in
/// row-major cell order. Semistandard means weakly increasing along rows and
/// strictly increasing down columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Filling {
    shape: SkewShape,
    entries: Vec<u32>,
}

impl Filling {
    pub fn new(shape: SkewShape, entries: Vec<u32>) -> Result<Self, ShapeError> {
        let cells = shape.cells();
        if entries.len() != cells.len() {
            return Err(ShapeError::EntryCount {
                got: entries.len(),
                want: cells.len(),
            });
        }
        if entries.contains(&0) {
            return Err(ShapeError::NonPositiveEntry);
        }
        for (i, cell) in cells.iter().enumerate() {
            if let Some(l) = shape.index_of(Cell::new(cell.row, cell.col.wrapping_sub(1))) {
                if entries[l] > entries[i] {
                    return Err(ShapeError::NotSemistandard {
                        row: cell.row,
                        col: cell.col,
                    });
                }
            }
            if let Some(u) = shape.index_of(Cell::new(cell.row.wrapping_sub(1), cell.col)) {
                if entries[u] >= entries[i] {
                    return Err(ShapeError::NotSemistandard {
                        row: cell.row,
                        col: cell.col,
                    });
                }
            }
        }
        Ok(Filling { shape, entries })
    }

    pub(crate) fn from_cursor(shape: SkewShape, entries: Vec<u32>) -> Self {
        debug_assert!(Filling::new(shape.clone(), entries.clone()).is_ok());
        Filling { shape, entries }
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    /// Entries in row-major cell order.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn entry(&self, cell: Cell) -> Option<u32> {
        self.shape.index_of(cell).map(|i| self.entries[i])
    }

    pub fn max_entry(&self) -> u32 {
        *self.entries.iter().max().expect("shape is nonempty")
    }
}

/// Backtracking cursor over semistandard fillings with entries in
/// `[1, max_entry]`, in lexicographic order on the row-major entry vector.
pub(crate) struct SsytCursor {
    max_entry: u32,
    first_fixed: Option<u32>,
    left: Vec<Option<usize>>,
    up: Vec<Option<usize>>,
    entries: Vec<u32>,
    fresh: bool,
    done: bool,
}

impl SsytCursor {
    pub(crate) fn new(shape: &SkewShape, max_entry: u32, first_fixed: Option<u32>) -> Self {
        let cells = shape.cells();
        let left = cells
            .iter()
            .map(|c| shape.index_of(Cell::new(c.row, c.col.wrapping_sub(1))))
            .collect();
        let up = cells
            .iter()
            .map(|c| shape.index_of(Cell::new(c.row.wrapping_sub(1), c.col)))
            .collect();
        SsytCursor {
            max_entry,
            first_fixed,
            left,
            up,
            entries: vec![0; cells.len()],
            fresh: true,
            done: false,
        }
    }

    #[inline]
    fn lower(&self, i: usize) -> u32 {
        if i == 0 {
            if let Some(v) = self.first_fixed {
                // v = 0 pairs with upper() = 0 to make the stream empty
                return v.max(1);
            }
        }
        let mut lb = 1;
        if let Some(l) = self.left[i] {
            lb = lb.max(self.entries[l]);
        }
        if let Some(u) = self.up[i] {
            lb = lb.max(self.entries[u] + 1);
        }
        lb
    }

    #[inline]
    fn upper(&self, i: usize) -> u32 {
        if i == 0 {
            if let Some(v) = self.first_fixed {
                return v.min(self.max_entry);
            }
        }
        self.max_entry
    }

    /// Next filling's entries, or `None` when exhausted.
    pub(crate) fn advance(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        let d = self.entries.len();
        let mut i = if self.fresh {
            self.fresh = false;
            0
        } else {
            self.backtrack(d)?
        };
        while i < d {
            let lb = self.lower(i);
            if lb <= self.upper(i) {
                self.entries[i] = lb;
                i += 1;
            } else {
                i = self.backtrack(i)?;
            }
        }
        Some(&self.entries)
    }

    /// Increments the rightmost incrementable cell strictly before `from`;
    /// returns the position to resume descending from.
    fn backtrack(&mut self, from: usize) -> Option<usize> {
        let mut i = from;
        while i > 0 {
            i -= 1;
            if self.entries[i] < self.upper(i) {
                self.entries[i] += 1;
                return Some(i + 1);
            }
        }
        self.done = true;
        None
    }
}

/// Iterator over semistandard fillings; see [`enumerate_ssyt`].
pub struct SsytIter<'a> {
    shape: &'a SkewShape,
    cursor: SsytCursor,
}

impl Iterator for SsytIter<'_> {
    type Item = Filling;

    fn next(&mut self) -> Option<Filling> {
        let shape = self.shape.clone();
        self.cursor
            .advance()
            .map(|entries| Filling::from_cursor(shape, entries.to_vec()))
    }
}

/// Enumerates every semistandard filling of `shape` with entries in
/// `[1, max_entry]`, exactly once, in lexicographic order on the row-major
/// entry vector. The stream is single-consumer; for parallel work, partition
/// it by the first cell's value via [`enumerate_ssyt_with_first`].
pub fn enumerate_ssyt(shape: &SkewShape, max_entry: u32) -> SsytIter<'_> {
    SsytIter {
        shape,
        cursor: SsytCursor::new(shape, max_entry, None),
    }
}

/// The sub-stream of [`enumerate_ssyt`] whose first (row-major) cell equals
/// `first`. The full stream is the concatenation over `first = 1..=max_entry`.
pub fn enumerate_ssyt_with_first(shape: &SkewShape, max_entry: u32, first: u32) -> SsytIter<'_> {
    SsytIter {
        shape,
        cursor: SsytCursor::new(shape, max_entry, Some(first)),
    }
}

/// Number of semistandard fillings with entries bounded by `max_entry`.
pub fn count_ssyt(shape: &SkewShape, max_entry: u32) -> u64 {
    let mut cursor = SsytCursor::new(shape, max_entry, None);
    let mut n = 0;
    while cursor.advance().is_some() {
        n += 1;
    }
    n
}
