//! Exponent indices on shapes: Euler-Zagier indices, admissible pieces and
//! dual indices, tableau indices with their convergence domain `W`, the
//! diagonally-constant domain of the duality relation, and bump tableaux.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use thiserror::Error;

use crate::shapes::{Cell, SkewShape};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndexError {
    #[error("index {0:?} is not admissible: the last exponent must be >= 2")]
    NotAdmissible(Vec<u32>),
    #[error("exponents must be positive integers")]
    InvalidExponent,
    #[error("index carries {got} exponents but the shape has {want} cells")]
    EntryCount { got: usize, want: usize },
    #[error("column {0} has no cells")]
    EmptyColumn(u32),
    #[error("tableau index is not diagonally constant with admissible columns")]
    NotInId,
    #[error("no dual tableau is known for this shape; register the pair explicitly")]
    UnsupportedShape,
    #[error("shapes do not match")]
    MismatchedShapes,
}

/// An Euler-Zagier index: a nonempty tuple of positive integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EZIndex {
    exponents: Vec<u32>,
}

impl EZIndex {
    pub fn new(exponents: Vec<u32>) -> Result<Self, IndexError> {
        if exponents.is_empty() || exponents.contains(&0) {
            return Err(IndexError::InvalidExponent);
        }
        Ok(EZIndex { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn depth(&self) -> usize {
        self.exponents.len()
    }

    pub fn weight(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Admissible means the last exponent is at least 2, which is exactly
    /// the convergence condition for the nested series.
    pub fn is_admissible(&self) -> bool {
        *self.exponents.last().expect("nonempty") >= 2
    }

    /// Unique decomposition into admissible pieces `A(a,b) = ({1}^{a-1}, b+1)`
    /// by a greedy scan: runs of 1's followed by one closing exponent >= 2.
    pub fn to_pieces(&self) -> Result<Vec<AdmissiblePiece>, IndexError> {
        if !self.is_admissible() {
            return Err(IndexError::NotAdmissible(self.exponents.clone()));
        }
        let mut pieces = Vec::new();
        let mut ones = 0u32;
        for &e in &self.exponents {
            if e == 1 {
                ones += 1;
            } else {
                pieces.push(AdmissiblePiece::new(ones + 1, e - 1));
                ones = 0;
            }
        }
        debug_assert_eq!(ones, 0);
        Ok(pieces)
    }

    /// The dual index: reverse the piece sequence and swap (a,b) -> (b,a)
    /// in each piece. An involution that preserves the weight.
    pub fn dual(&self) -> Result<EZIndex, IndexError> {
        let pieces = self.to_pieces()?;
        let swapped: Vec<AdmissiblePiece> = pieces
            .iter()
            .rev()
            .map(|p| AdmissiblePiece::new(p.b, p.a))
            .collect();
        Ok(expand_pieces(&swapped))
    }
}

impl fmt::Display for EZIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.exponents.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

/// The index fragment `({1}^{a-1}, b+1)` with `a, b >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdmissiblePiece {
    pub a: u32,
    pub b: u32,
}

impl AdmissiblePiece {
    pub fn new(a: u32, b: u32) -> Self {
        assert!(a >= 1 && b >= 1, "admissible pieces require a, b >= 1");
        AdmissiblePiece { a, b }
    }

    /// The exponent sequence the piece stands for.
    pub fn expand(&self) -> Vec<u32> {
        let mut v = vec![1; self.a as usize - 1];
        v.push(self.b + 1);
        v
    }
}

/// Concatenates piece expansions back into an index.
pub fn expand_pieces(pieces: &[AdmissiblePiece]) -> EZIndex {
    assert!(!pieces.is_empty());
    let exps: Vec<u32> = pieces.iter().flat_map(|p| p.expand()).collect();
    EZIndex::new(exps).expect("piece expansions are positive")
}

/// An exponent assignment on the cells of a skew shape, stored in row-major
/// cell order. Exponents are nonnegative; membership in the convergence
/// domain `W` (>= 1 everywhere, >= 2 on corners) is checked by [`Self::is_in_w`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TableauIndex {
    shape: SkewShape,
    exponents: Vec<u32>,
}

impl TableauIndex {
    pub fn new(shape: SkewShape, exponents: Vec<u32>) -> Result<Self, IndexError> {
        if exponents.len() != shape.num_cells() {
            return Err(IndexError::EntryCount {
                got: exponents.len(),
                want: shape.num_cells(),
            });
        }
        Ok(TableauIndex { shape, exponents })
    }

    /// Builds an index from per-row exponent lists on `lambda/mu`.
    pub fn from_rows(lambda: &[u32], mu: &[u32], rows: &[&[u32]]) -> Result<Self, IndexError> {
        let shape = SkewShape::from_parts(lambda, mu).map_err(|_| IndexError::MismatchedShapes)?;
        let mut exps = Vec::with_capacity(shape.num_cells());
        if rows.len() != shape.num_rows() as usize {
            return Err(IndexError::EntryCount {
                got: rows.iter().map(|r| r.len()).sum(),
                want: shape.num_cells(),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            let want = (shape.lambda().part(i) - shape.mu().part(i)) as usize;
            if row.len() != want {
                return Err(IndexError::EntryCount {
                    got: row.len(),
                    want,
                });
            }
            exps.extend_from_slice(row);
        }
        TableauIndex::new(shape, exps)
    }

    /// The single-column tableau carrying an Euler-Zagier index.
    pub fn from_column(ez: &EZIndex) -> Self {
        let shape = SkewShape::column(ez.depth()).expect("positive depth");
        TableauIndex {
            shape,
            exponents: ez.exponents().to_vec(),
        }
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    /// Exponents in row-major cell order.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, cell: Cell) -> Option<u32> {
        self.shape.index_of(cell).map(|i| self.exponents[i])
    }

    pub fn weight(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Membership in the convergence domain `W`: every exponent >= 1 and
    /// corner exponents >= 2.
    pub fn is_in_w(&self) -> bool {
        self.shape
            .cells()
            .iter()
            .zip(&self.exponents)
            .all(|(c, &e)| {
                if self.shape.is_corner(*c) {
                    e >= 2
                } else {
                    e >= 1
                }
            })
    }

    /// True when exponents agree along every diagonal `col - row`.
    pub fn is_diagonal_constant(&self) -> bool {
        let mut seen: HashMap<i64, u32> = HashMap::new();
        for (c, &e) in self.shape.cells().iter().zip(&self.exponents) {
            if *seen.entry(c.diagonal()).or_insert(e) != e {
                return false;
            }
        }
        true
    }

    /// Column `j` (1-based) read top to bottom as an Euler-Zagier index.
    pub fn column(&self, j: u32) -> Result<EZIndex, IndexError> {
        let idxs = self.shape.column_cell_indices(j);
        if idxs.is_empty() {
            return Err(IndexError::EmptyColumn(j));
        }
        EZIndex::new(idxs.into_iter().map(|i| self.exponents[i]).collect())
    }

    /// Membership in the diagonally-constant duality domain: (a) exponents
    /// constant along diagonals, (b) every column reads as an admissible
    /// index, (c) the cell right of each column's top cell never carries 1.
    pub fn is_in_id(&self) -> bool {
        if !self.is_diagonal_constant() {
            return false;
        }
        let cells = self.shape.cells();
        for j in 1..=self.shape.num_cols() {
            let idxs = self.shape.column_cell_indices(j);
            if idxs.is_empty() {
                continue;
            }
            match EZIndex::new(idxs.iter().map(|&i| self.exponents[i]).collect()) {
                Ok(ez) if ez.is_admissible() => {}
                _ => return false,
            }
            let top = cells[idxs[0]];
            if let Some(r) = self.shape.index_of(Cell::new(top.row, top.col + 1)) {
                if self.exponents[r] == 1 {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_single_column(&self) -> bool {
        self.shape.mu().is_empty() && self.shape.lambda().parts().iter().all(|&p| p == 1)
    }

    /// The index as an Euler-Zagier index when the shape is a single column.
    pub fn as_column(&self) -> Option<EZIndex> {
        if self.is_single_column() {
            EZIndex::new(self.exponents.clone()).ok()
        } else {
            None
        }
    }

    /// Cellwise sum with a bump tableau on the same shape.
    pub fn plus(&self, bumps: &CompositionTableau) -> Result<TableauIndex, IndexError> {
        if bumps.shape() != &self.shape {
            return Err(IndexError::MismatchedShapes);
        }
        let exps = self
            .exponents
            .iter()
            .zip(bumps.bumps())
            .map(|(&k, &e)| k + e)
            .collect();
        Ok(TableauIndex {
            shape: self.shape.clone(),
            exponents: exps,
        })
    }
}

/// The dual tableau where one is defined without external input: single
/// columns reduce to the Euler-Zagier dual. Other shapes need a registered
/// pair (see [`DualRegistry`]); without one this refuses rather than guesses.
pub fn dual_tableau(k: &TableauIndex) -> Result<TableauIndex, IndexError> {
    if !k.is_in_id() {
        return Err(IndexError::NotInId);
    }
    match k.as_column() {
        Some(col) => Ok(TableauIndex::from_column(&col.dual()?)),
        None => Err(IndexError::UnsupportedShape),
    }
}

/// Session registry of user-supplied dual tableau pairs.
///
/// Single-writer, multi-reader; a registration is visible to every
/// subsequent lookup. Registered pairs take precedence over the built-in
/// single-column reduction.
#[derive(Default)]
pub struct DualRegistry {
    pairs: RwLock<HashMap<TableauIndex, TableauIndex>>,
}

impl DualRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `k` and `k_dual` as each other's duals for this session.
    /// Both must lie in the diagonally-constant duality domain.
    pub fn register(&self, k: TableauIndex, k_dual: TableauIndex) -> Result<(), IndexError> {
        if !k.is_in_id() || !k_dual.is_in_id() {
            return Err(IndexError::NotInId);
        }
        let mut map = self.pairs.write().expect("registry lock");
        map.insert(k.clone(), k_dual.clone());
        map.insert(k_dual, k);
        Ok(())
    }

    /// Dual lookup: registered pairs first, then the single-column reduction.
    pub fn dual_tableau(&self, k: &TableauIndex) -> Result<TableauIndex, IndexError> {
        if !k.is_in_id() {
            return Err(IndexError::NotInId);
        }
        if let Some(d) = self.pairs.read().expect("registry lock").get(k) {
            return Ok(d.clone());
        }
        dual_tableau(k)
    }
}

/// A tableau of nonnegative bumps `eps_ij` on a shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompositionTableau {
    shape: SkewShape,
    bumps: Vec<u32>,
}

impl CompositionTableau {
    pub fn new(shape: SkewShape, bumps: Vec<u32>) -> Result<Self, IndexError> {
        if bumps.len() != shape.num_cells() {
            return Err(IndexError::EntryCount {
                got: bumps.len(),
                want: shape.num_cells(),
            });
        }
        Ok(CompositionTableau { shape, bumps })
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn bumps(&self) -> &[u32] {
        &self.bumps
    }

    /// Total bump `|eps|`.
    pub fn total(&self) -> u32 {
        self.bumps.iter().sum()
    }
}

/// Iterator over weak compositions of `total` into `parts` nonnegative parts,
/// in a fixed documented order (the moving-unit order starting from
/// `(total, 0, ..., 0)`). Yields `C(total + parts - 1, parts - 1)` items.
pub(crate) struct WeakCompositions {
    current: Option<Vec<u32>>,
}

impl WeakCompositions {
    pub(crate) fn new(total: u32, parts: usize) -> Self {
        let current = if parts == 0 {
            // No parts: only the empty composition of 0.
            if total == 0 {
                Some(Vec::new())
            } else {
                None
            }
        } else {
            let mut v = vec![0; parts];
            v[0] = total;
            Some(v)
        };
        WeakCompositions { current }
    }
}

impl Iterator for WeakCompositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("just checked");
        let d = cur.len();
        let mut advanced = false;
        for i in 0..d {
            if cur[i] > 0 {
                if i + 1 == d {
                    break;
                }
                let v = cur[i];
                cur[i] = 0;
                cur[0] = v - 1;
                cur[i + 1] += 1;
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.current = None;
        }
        Some(out)
    }
}

/// Enumerates every bump tableau with `|eps| = ell`, exactly once each.
pub fn enumerate_bump_tableaux(
    shape: &SkewShape,
    ell: u32,
) -> impl Iterator<Item = CompositionTableau> + '_ {
    WeakCompositions::new(ell, shape.num_cells()).map(move |bumps| CompositionTableau {
        shape: shape.clone(),
        bumps,
    })
}
