//! Finite gyrogroup Cayley tables and the primitive operations on them.
//!
//! A [`GyroTable`] stores the full operation table of a finite magma that has
//! passed *structural* validation: a two-sided identity (relabelled to 0),
//! Latin rows and columns, and unique two-sided inverses. Whether the table
//! actually satisfies the gyrogroup axioms is certified separately by the
//! [`crate::axioms`] module.

use std::str::FromStr;
use std::sync::OnceLock;

use serde::Deserialize;
use thiserror::Error;

use crate::mask::{SubsetMask, MAX_ORDER};

pub type Elem = usize;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("structure error: {0}")]
    Structure(String),
}

/// A bijection on `{0, .., n-1}`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, TableError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(TableError::Structure(format!(
                    "images {images:?} do not form a permutation"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, z: usize) -> usize {
        self.images[z]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// `result.apply(z) == self.apply(other.apply(z))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    /// Image of a subset under the permutation.
    pub fn apply_set(&self, s: &SubsetMask) -> SubsetMask {
        let mut out = SubsetMask::empty(s.parent_order());
        for e in s.iter() {
            out.insert(self.images[e]);
        }
        out
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }
}

/// Which side a translation acts on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// Input formats for Cayley tables.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableFormat {
    Json,
    Text,
}

#[derive(Debug)]
enum GyrCache {
    Eager(Vec<Permutation>),
    Lazy(Vec<OnceLock<Permutation>>),
}

/// Gyration permutations are cached eagerly up to this order, lazily above.
const EAGER_CACHE_BOUND: usize = 64;

/// A structurally validated finite Cayley table with identity 0.
#[derive(Debug)]
pub struct GyroTable {
    n: usize,
    table: Vec<Elem>, // row-major: table[a * n + b] = a ⊕ b
    inverses: Vec<Elem>,
    relabeling: Option<Vec<Elem>>, // original index -> current index, when identity was moved
    gyr_cache: GyrCache,
}

#[derive(Deserialize)]
struct TableFile {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl GyroTable {
    /// Validates a raw table and builds the gyrogroup carrier.
    ///
    /// Checks, in order: dimensions, entry ranges, row/column Latin property,
    /// existence of a two-sided identity (relabelled to index 0 if found
    /// elsewhere), and unique two-sided inverses.
    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Result<Self, TableError> {
        let n = rows.len();
        if n == 0 {
            return Err(TableError::Structure("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(TableError::Structure(format!(
                "order {n} exceeds supported maximum {MAX_ORDER}"
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(TableError::Structure(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(TableError::Structure(format!(
                        "entry {v} at cell ({i},{j}) out of range 0..{n}"
                    )));
                }
            }
        }
        for (i, row) in rows.iter().enumerate() {
            let mut seen = vec![false; n];
            for &v in row {
                if seen[v] {
                    return Err(TableError::Structure(format!("row {i} not a permutation")));
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for (i, row) in rows.iter().enumerate() {
                let v = row[j];
                if seen[v] {
                    return Err(TableError::Structure(format!(
                        "column {j} not a permutation (duplicate at row {i})"
                    )));
                }
                seen[v] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| rows[e][a] == a && rows[a][e] == a))
            .ok_or_else(|| TableError::Structure("no two-sided identity".into()))?;

        let (rows, relabeling) = if identity == 0 {
            (rows, None)
        } else {
            // Relabel by swapping 0 and the identity so that 0 is neutral.
            let mut map: Vec<usize> = (0..n).collect();
            map.swap(0, identity);
            let mut new_rows = vec![vec![0usize; n]; n];
            for a in 0..n {
                for b in 0..n {
                    new_rows[map[a]][map[b]] = map[rows[a][b]];
                }
            }
            (new_rows, Some(map))
        };

        let mut inverses = vec![0usize; n];
        for a in 0..n {
            let right = rows[a].iter().position(|&v| v == 0).expect("Latin row");
            let left = (0..n).find(|&x| rows[x][a] == 0).expect("Latin column");
            if right != left {
                return Err(TableError::Structure(format!(
                    "element {a} has distinct left inverse {left} and right inverse {right}"
                )));
            }
            inverses[a] = right;
        }

        let mut flat = Vec::with_capacity(n * n);
        for row in &rows {
            flat.extend_from_slice(row);
        }
        let mut g = GyroTable {
            n,
            table: flat,
            inverses,
            relabeling,
            gyr_cache: GyrCache::Lazy(Vec::new()),
        };
        g.gyr_cache = if n <= EAGER_CACHE_BOUND {
            let mut cache = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    cache.push(g.compute_gyr_map(a, b));
                }
            }
            GyrCache::Eager(cache)
        } else {
            GyrCache::Lazy((0..n * n).map(|_| OnceLock::new()).collect())
        };
        Ok(g)
    }

    pub fn load(source: &[u8], format: TableFormat) -> Result<Self, TableError> {
        match format {
            TableFormat::Json => Self::from_json(source),
            TableFormat::Text => {
                let text = std::str::from_utf8(source)
                    .map_err(|e| TableError::Parse(format!("invalid UTF-8: {e}")))?;
                Self::from_text(text)
            }
        }
    }

    pub fn from_json(source: &[u8]) -> Result<Self, TableError> {
        let file: TableFile =
            serde_json::from_slice(source).map_err(|e| TableError::Parse(e.to_string()))?;
        if file.table.len() != file.order {
            return Err(TableError::Structure(format!(
                "declared order {} but table has {} rows",
                file.order,
                file.table.len()
            )));
        }
        Self::from_rows(file.table)
    }

    pub fn from_text(text: &str) -> Result<Self, TableError> {
        let mut tokens = text.split_whitespace().map(usize::from_str);
        let n = tokens
            .next()
            .ok_or_else(|| TableError::Parse("empty input".into()))?
            .map_err(|e| TableError::Parse(e.to_string()))?;
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let mut row = Vec::with_capacity(n);
            for _ in 0..n {
                let v = tokens
                    .next()
                    .ok_or_else(|| TableError::Parse("truncated table".into()))?
                    .map_err(|e| TableError::Parse(e.to_string()))?;
                row.push(v);
            }
            rows.push(row);
        }
        if tokens.next().is_some() {
            return Err(TableError::Parse("trailing data after table".into()));
        }
        Self::from_rows(rows)
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<usize>> = (0..self.n).map(|a| self.row(a).to_vec()).collect();
        serde_json::to_string(&serde_json::json!({ "order": self.n, "table": rows }))
            .expect("table serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for a in 0..self.n {
            let row: Vec<String> = self.row(a).iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Relabeling applied at load time (original index -> current index),
    /// present only when the input identity was not element 0.
    pub fn relabeling(&self) -> Option<&[Elem]> {
        self.relabeling.as_deref()
    }

    pub fn row(&self, a: Elem) -> &[Elem] {
        &self.table[a * self.n..(a + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        (0..self.n).map(|a| self.row(a).to_vec()).collect()
    }

    /// a ⊕ b
    #[inline]
    pub fn op(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.n + b]
    }

    /// ⊖a
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    /// gyr[a,b](z) via the gyrator identity ⊖(a⊕b)⊕(a⊕(b⊕z)).
    #[inline]
    pub fn gyr(&self, a: Elem, b: Elem, z: Elem) -> Elem {
        self.op(self.inv(self.op(a, b)), self.op(a, self.op(b, z)))
    }

    fn compute_gyr_map(&self, a: Elem, b: Elem) -> Permutation {
        Permutation {
            images: (0..self.n).map(|z| self.gyr(a, b, z)).collect(),
        }
    }

    /// The full gyration permutation gyr[a,b], cached.
    pub fn gyr_map(&self, a: Elem, b: Elem) -> &Permutation {
        match &self.gyr_cache {
            GyrCache::Eager(cache) => &cache[a * self.n + b],
            GyrCache::Lazy(cache) => {
                cache[a * self.n + b].get_or_init(|| self.compute_gyr_map(a, b))
            }
        }
    }

    /// a ⊞ b = a ⊕ gyr[a,⊖b](b)
    pub fn coop(&self, a: Elem, b: Elem) -> Elem {
        self.op(a, self.gyr(a, self.inv(b), b))
    }

    /// a ⊟ b = a ⊖ gyr[a,b](b)
    pub fn codiff(&self, a: Elem, b: Elem) -> Elem {
        self.op(a, self.inv(self.gyr(a, b, b)))
    }

    /// {a⊕s : s ∈ S} or {s⊕a : s ∈ S}.
    pub fn translate_set(&self, a: Elem, s: &SubsetMask, side: Side) -> SubsetMask {
        let mut out = SubsetMask::empty(self.n);
        for e in s.iter() {
            let v = match side {
                Side::Left => self.op(a, e),
                Side::Right => self.op(e, a),
            };
            out.insert(v);
        }
        out
    }

    /// Full carrier as a subset.
    pub fn carrier(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }
}
