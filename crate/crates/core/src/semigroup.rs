//! Validated Cayley tables and the semigroup families used throughout the crate.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

/// Largest order a [`CayleyTable`] can hold.
pub const MAX_ORDER: usize = u16::MAX as usize;

/// Errors raised while building or validating a table.
///
/// The `Display` form is a single machine-parseable line with 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("Empty")]
    Empty,
    #[error("NotSquare row={row} len={len} expected={expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("EntryOutOfRange i={i} j={j} value={value}")]
    EntryOutOfRange { i: usize, j: usize, value: i64 },
    #[error("NotAssociative i={i} j={j} k={k}")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("OrderTooLarge n={n} max={max}")]
    OrderTooLarge { n: usize, max: usize },
    #[error("GroupInvalid")]
    GroupInvalid,
    #[error("InvalidParameter {0}")]
    InvalidParameter(&'static str),
    #[error("ConstantOutOfRange n={n} c={c}")]
    ConstantOutOfRange { n: usize, c: usize },
}

/// The multiplication table of a finite semigroup.
///
/// Entries are stored row-major and 0-based: `get(i, j)` is the index of
/// `s_i * s_j`. A value of this type is always associative.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CayleyTable {
    n: usize,
    cells: Vec<u16>,
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CayleyTable")
            .field("n", &self.n)
            .field("rows", &self.rows_one_based())
            .finish()
    }
}

impl CayleyTable {
    /// Validates a 1-based square grid.
    ///
    /// Associativity is checked over all `n^3` triples; the first failing
    /// triple in row-major `(i, j, k)` order is reported.
    pub fn from_rows_one_based<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, TableError> {
        let n = rows.len();
        if n == 0 {
            return Err(TableError::Empty);
        }
        if n > MAX_ORDER {
            return Err(TableError::OrderTooLarge { n, max: MAX_ORDER });
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(TableError::NotSquare {
                    row: i + 1,
                    len: row.len(),
                    expected: n,
                });
            }
            for (j, &value) in row.iter().enumerate() {
                if value < 1 || value > n as i64 {
                    return Err(TableError::EntryOutOfRange {
                        i: i + 1,
                        j: j + 1,
                        value,
                    });
                }
                cells.push((value - 1) as u16);
            }
        }
        Self::from_cells(n, cells)
    }

    /// Validates a row-major 0-based cell vector of length `n^2`.
    pub fn from_cells(n: usize, cells: Vec<u16>) -> Result<Self, TableError> {
        if n == 0 {
            return Err(TableError::Empty);
        }
        if n > MAX_ORDER {
            return Err(TableError::OrderTooLarge { n, max: MAX_ORDER });
        }
        if cells.len() != n * n {
            return Err(TableError::NotSquare {
                row: cells.len() / n + 1,
                len: cells.len() % n,
                expected: n,
            });
        }
        if let Some(pos) = cells.iter().position(|&c| c as usize >= n) {
            return Err(TableError::EntryOutOfRange {
                i: pos / n + 1,
                j: pos % n + 1,
                value: i64::from(cells[pos]) + 1,
            });
        }
        let table = CayleyTable { n, cells };
        match table.associativity_witness() {
            Some((i, j, k)) => Err(TableError::NotAssociative {
                i: i + 1,
                j: j + 1,
                k: k + 1,
            }),
            None => Ok(table),
        }
    }

    /// Builds a table without checking associativity. Range is still the
    /// caller's responsibility; used for tables that are associative by
    /// construction.
    pub(crate) fn from_cells_unchecked(n: usize, cells: Vec<u16>) -> Self {
        debug_assert_eq!(cells.len(), n * n);
        CayleyTable { n, cells }
    }

    fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                cells.push(f(i, j) as u16);
            }
        }
        Self::from_cells_unchecked(n, cells)
    }

    /// First `(i, j, k)` (0-based, row-major) with `(ij)k != i(jk)`.
    fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let ij = self.get(i, j);
                for k in 0..n {
                    if self.get(ij, k) != self.get(i, self.get(j, k)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Product `s_i * s_j`, 0-based.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.n + j] as usize
    }

    /// Row-major 0-based entries.
    pub fn cells(&self) -> &[u16] {
        &self.cells
    }

    pub fn rows_one_based(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.n)
            .map(|row| row.iter().map(|&c| c as usize + 1).collect())
            .collect()
    }

    /// Null semigroup of order `n`; the last element is the zero.
    pub fn null(n: usize) -> Self {
        assert!(n >= 1, "order must be positive");
        Self::from_fn(n, |_, _| n - 1)
    }

    pub fn left_zero(n: usize) -> Self {
        assert!(n >= 1, "order must be positive");
        Self::from_fn(n, |i, _| i)
    }

    pub fn right_zero(n: usize) -> Self {
        assert!(n >= 1, "order must be positive");
        Self::from_fn(n, |_, j| j)
    }

    /// Rectangular band `L x R` with `|L| = p`, `|R| = q`.
    ///
    /// Element `(a, b)` (1-based) has index `(a - 1) q + b`, and
    /// `(a, b)(c, d) = (a, d)`.
    pub fn rectangular_band(p: usize, q: usize) -> Self {
        assert!(p >= 1 && q >= 1, "band dimensions must be positive");
        Self::from_fn(p * q, |x, y| (x / q) * q + y % q)
    }

    /// Cyclic group `Z_n` under addition, with element 1 as the identity.
    pub fn cyclic_group(n: usize) -> Self {
        assert!(n >= 1, "order must be positive");
        Self::from_fn(n, |i, j| (i + j) % n)
    }

    /// Semigroup with `S^2 = {c}`; `c` is 1-based.
    pub fn constant_image(n: usize, c: usize) -> Result<Self, TableError> {
        if n == 0 {
            return Err(TableError::InvalidParameter("order must be positive"));
        }
        if c == 0 || c > n {
            return Err(TableError::ConstantOutOfRange { n, c });
        }
        Ok(Self::from_fn(n, |_, _| c - 1))
    }

    /// Brandt semigroup `B_0(G, I)` over the group `group` with `|I| = index_size`.
    ///
    /// With `m = |G|` and `n = |I|`, element 1 is the zero and the nonzero
    /// element `(i, g, j)` (all 1-based) has index `1 + ((i - 1) m + (g - 1)) n + j`.
    pub fn brandt(group: &CayleyTable, index_size: usize) -> Result<Self, TableError> {
        if index_size == 0 {
            return Err(TableError::InvalidParameter("index size must be positive"));
        }
        if !group.is_group() {
            return Err(TableError::GroupInvalid);
        }
        let m = group.order();
        let n = index_size;
        let order = m
            .checked_mul(n)
            .and_then(|x| x.checked_mul(n))
            .and_then(|x| x.checked_add(1))
            .filter(|&o| o <= MAX_ORDER)
            .ok_or(TableError::OrderTooLarge {
                n: m.saturating_mul(n).saturating_mul(n).saturating_add(1),
                max: MAX_ORDER,
            })?;
        // 0-based nonzero index x - 1 = (i m + g) n + j
        let decode = |x: usize| {
            let r = x - 1;
            let j = r % n;
            let ig = r / n;
            (ig / m, ig % m, j)
        };
        let encode = |i: usize, g: usize, j: usize| 1 + (i * m + g) * n + j;
        Ok(Self::from_fn(order, |x, y| {
            if x == 0 || y == 0 {
                return 0;
            }
            let (i, g, j) = decode(x);
            let (k, h, l) = decode(y);
            if j == k {
                encode(i, group.get(g, h), l)
            } else {
                0
            }
        }))
    }

    /// The opposite semigroup.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    /// Relabels elements through `perm`, which maps each old index to its new one.
    ///
    /// # Panics
    ///
    /// If `perm` is not a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation has the wrong length");
        let mut inverse = vec![usize::MAX; self.n];
        for (old, &new) in perm.iter().enumerate() {
            assert!(new < self.n && inverse[new] == usize::MAX, "not a permutation");
            inverse[new] = old;
        }
        Self::from_fn(self.n, |a, b| perm[self.get(inverse[a], inverse[b])])
    }

    /// Lexicographically least table among all relabelings of `self` and of
    /// its transpose. Equal for two tables iff they are isomorphic or
    /// anti-isomorphic.
    ///
    /// Brute force over `n!` permutations; meant for `n <= 6`.
    pub fn canonical_form(&self) -> Self {
        let n = self.n;
        let mut best = self.cells.clone();
        let mut candidate = vec![0u16; n * n];
        let transposed = self.transpose();
        for source in [self, &transposed] {
            // `inverse` maps new -> old; `perm` old -> new
            let mut inverse: Vec<usize> = (0..n).collect();
            let mut perm = vec![0usize; n];
            loop {
                for (new, &old) in inverse.iter().enumerate() {
                    perm[old] = new;
                }
                if relabel_if_smaller(source, &inverse, &perm, &best, &mut candidate) {
                    core::mem::swap(&mut best, &mut candidate);
                }
                if !next_permutation(&mut inverse) {
                    break;
                }
            }
        }
        Self::from_cells_unchecked(n, best)
    }

    /// Every row and every column is a permutation of the elements.
    pub fn is_cancellative(&self) -> bool {
        let n = self.n;
        let mut seen = vec![false; n];
        let mut is_perm = |f: &dyn Fn(usize) -> usize| {
            seen.iter_mut().for_each(|s| *s = false);
            (0..n).all(|x| !core::mem::replace(&mut seen[f(x)], true))
        };
        (0..n).all(|i| is_perm(&|j| self.get(i, j))) && (0..n).all(|j| is_perm(&|i| self.get(i, j)))
    }

    /// Two-sided identity, if one exists.
    pub fn identity(&self) -> Option<usize> {
        (0..self.n).find(|&e| (0..self.n).all(|x| self.get(e, x) == x && self.get(x, e) == x))
    }

    /// Latin square with an identity. Associativity holds for every table.
    pub fn is_group(&self) -> bool {
        self.is_cancellative() && self.identity().is_some()
    }

    /// Two 0-based entries per byte, row-major, low nibble first. Only
    /// meaningful for `n <= 16`.
    pub fn packed(&self) -> Vec<u8> {
        pack_cells(&self.cells)
    }
}

/// Nibble-packs 0-based entries (each must be `< 16`).
pub fn pack_cells(cells: &[u16]) -> Vec<u8> {
    cells
        .chunks(2)
        .map(|pair| {
            let lo = pair[0] as u8 & 0x0f;
            let hi = pair.get(1).map_or(0, |&c| c as u8 & 0x0f);
            lo | (hi << 4)
        })
        .collect()
}

/// Inverse of [`pack_cells`] for an `n x n` table.
pub fn unpack_cells(n: usize, bytes: &[u8]) -> Vec<u16> {
    (0..n * n)
        .map(|p| {
            let b = bytes[p / 2];
            u16::from(if p % 2 == 0 { b & 0x0f } else { b >> 4 })
        })
        .collect()
}

/// Writes the relabeled `source` into `out` and returns true when it is
/// lexicographically smaller than `best`. Stops as soon as it becomes larger.
fn relabel_if_smaller(
    source: &CayleyTable,
    inverse: &[usize],
    perm: &[usize],
    best: &[u16],
    out: &mut [u16],
) -> bool {
    let n = source.n;
    let mut smaller = false;
    for a in 0..n {
        let row = inverse[a];
        for b in 0..n {
            let p = a * n + b;
            let v = perm[source.get(row, inverse[b])] as u16;
            out[p] = v;
            if !smaller {
                match v.cmp(&best[p]) {
                    core::cmp::Ordering::Less => smaller = true,
                    core::cmp::Ordering::Greater => return false,
                    core::cmp::Ordering::Equal => {}
                }
            }
        }
    }
    smaller
}

/// Advances to the next lexicographic permutation; false after the last one.
pub(crate) fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// One of the named semigroup families.
///
/// The string form is the one accepted on the command line:
/// `null:N`, `leftzero:N`, `rightzero:N`, `band:PxQ`, `cyclic:N`,
/// `const:N:C` and `brandt:cyclic:M:N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Null { n: usize },
    LeftZero { n: usize },
    RightZero { n: usize },
    RectangularBand { p: usize, q: usize },
    CyclicGroup { n: usize },
    ConstantImage { n: usize, c: usize },
    /// Brandt semigroup over the cyclic group of order `m` with index set of size `n`.
    Brandt { m: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyParseError {
    #[error("UnknownFamily {0}")]
    UnknownFamily(alloc::string::String),
    #[error("BadFamilyParameter {0}")]
    BadParameter(alloc::string::String),
}

impl FamilySpec {
    /// Checks the parameter constraints without building anything.
    pub fn check(&self) -> Result<(), TableError> {
        let positive = |x: usize, what| {
            if x == 0 {
                Err(TableError::InvalidParameter(what))
            } else {
                Ok(())
            }
        };
        match *self {
            FamilySpec::Null { n }
            | FamilySpec::LeftZero { n }
            | FamilySpec::RightZero { n }
            | FamilySpec::CyclicGroup { n } => positive(n, "order must be positive"),
            FamilySpec::RectangularBand { p, q } => {
                positive(p, "band dimensions must be positive")?;
                positive(q, "band dimensions must be positive")
            }
            FamilySpec::ConstantImage { n, c } => {
                positive(n, "order must be positive")?;
                if c == 0 || c > n {
                    return Err(TableError::ConstantOutOfRange { n, c });
                }
                Ok(())
            }
            FamilySpec::Brandt { m, n } => {
                positive(m, "group order must be positive")?;
                positive(n, "index size must be positive")
            }
        }
    }

    /// Order of the semigroup this spec describes.
    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Null { n }
            | FamilySpec::LeftZero { n }
            | FamilySpec::RightZero { n }
            | FamilySpec::CyclicGroup { n }
            | FamilySpec::ConstantImage { n, .. } => n,
            FamilySpec::RectangularBand { p, q } => p * q,
            FamilySpec::Brandt { m, n } => 1 + m * n * n,
        }
    }

    pub fn build(&self) -> Result<CayleyTable, TableError> {
        self.check()?;
        if self.order() > MAX_ORDER {
            return Err(TableError::OrderTooLarge {
                n: self.order(),
                max: MAX_ORDER,
            });
        }
        Ok(match *self {
            FamilySpec::Null { n } => CayleyTable::null(n),
            FamilySpec::LeftZero { n } => CayleyTable::left_zero(n),
            FamilySpec::RightZero { n } => CayleyTable::right_zero(n),
            FamilySpec::RectangularBand { p, q } => CayleyTable::rectangular_band(p, q),
            FamilySpec::CyclicGroup { n } => CayleyTable::cyclic_group(n),
            FamilySpec::ConstantImage { n, c } => CayleyTable::constant_image(n, c)?,
            FamilySpec::Brandt { m, n } => CayleyTable::brandt(&CayleyTable::cyclic_group(m), n)?,
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Null { n } => write!(f, "null:{n}"),
            FamilySpec::LeftZero { n } => write!(f, "leftzero:{n}"),
            FamilySpec::RightZero { n } => write!(f, "rightzero:{n}"),
            FamilySpec::RectangularBand { p, q } => write!(f, "band:{p}x{q}"),
            FamilySpec::CyclicGroup { n } => write!(f, "cyclic:{n}"),
            FamilySpec::ConstantImage { n, c } => write!(f, "const:{n}:{c}"),
            FamilySpec::Brandt { m, n } => write!(f, "brandt:cyclic:{m}:{n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use alloc::string::ToString;
        let bad = || FamilyParseError::BadParameter(s.to_string());
        let num = |x: &str| -> Result<usize, FamilyParseError> {
            match x.trim().parse::<usize>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(bad()),
            }
        };
        let parts: Vec<&str> = s.trim().split(':').collect();
        let spec = match parts.as_slice() {
            ["null", n] => FamilySpec::Null { n: num(n)? },
            ["leftzero", n] => FamilySpec::LeftZero { n: num(n)? },
            ["rightzero", n] => FamilySpec::RightZero { n: num(n)? },
            ["cyclic", n] => FamilySpec::CyclicGroup { n: num(n)? },
            ["band", dims] => {
                let (p, q) = dims.split_once(['x', 'X']).ok_or_else(bad)?;
                FamilySpec::RectangularBand {
                    p: num(p)?,
                    q: num(q)?,
                }
            }
            ["const", n, c] => FamilySpec::ConstantImage {
                n: num(n)?,
                c: num(c)?,
            },
            ["brandt", "cyclic", m, n] => FamilySpec::Brandt {
                m: num(m)?,
                n: num(n)?,
            },
            _ => return Err(FamilyParseError::UnknownFamily(s.to_string())),
        };
        spec.check().map_err(|_| bad())?;
        Ok(spec)
    }
}
