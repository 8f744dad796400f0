//! Dense row-major matrices over any carrier.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{laplace_det, Arith};
use crate::carriers::{Carrier, ModElem, ModRing, Ring};
use crate::error::{Error, Result};
use crate::scan::{require_field, ScanConfig, Side};

/// Largest size accepted by the Laplace determinant.
pub const MAX_DET_SIZE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R: Ring> {
    ring: R,
    rows: usize,
    cols: usize,
    entries: Vec<R::Elem>,
}

/// Serialized matrix with entries in canonical notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub carrier: Carrier,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

impl<R: Ring> Matrix<R> {
    pub fn new(ring: R, rows: usize, cols: usize, entries: Vec<R::Elem>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch(format!("{rows}×{cols} matrix has no entries")));
        }
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}×{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            ring.check(e)?;
        }
        Ok(Matrix { ring, rows, cols, entries })
    }

    pub fn from_fn(ring: R, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Result<Self> {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix::new(ring, rows, cols, entries)
    }

    pub fn zero(ring: R, rows: usize, cols: usize) -> Result<Self> {
        let z = ring.zero();
        Matrix::from_fn(ring, rows, cols, |_, _| z.clone())
    }

    pub fn identity(ring: R, k: usize) -> Result<Self> {
        let (z, o) = (ring.zero(), ring.one());
        Matrix::from_fn(ring, k, k, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    /// A square matrix with `diag` on the diagonal.
    pub fn diagonal(ring: R, diag: &[R::Elem]) -> Result<Self> {
        let z = ring.zero();
        Matrix::from_fn(ring, diag.len(), diag.len(), |i, j| if i == j { diag[i].clone() } else { z.clone() })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn entries(&self) -> &[R::Elem] {
        &self.entries
    }
    pub fn into_entries(self) -> Vec<R::Elem> {
        self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    fn same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(format!(
                "{op} of {}×{} and {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.ring.ensure_same(&other.ring)
    }

    fn map(&self, f: impl Fn(&R::Elem) -> R::Elem) -> Self {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&R::Elem, &R::Elem) -> R::Elem) -> Self {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sum")?;
        Ok(self.zip(other, |a, b| self.ring.add(a, b)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "difference")?;
        Ok(self.zip(other, |a, b| self.ring.sub(a, b)))
    }

    pub fn neg(&self) -> Self {
        self.map(|a| self.ring.neg(a))
    }

    /// `c·A`, multiplying each entry on the left.
    pub fn scale(&self, c: &R::Elem) -> Self {
        self.map(|a| self.ring.mul(c, a))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "product of {}×{} and {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.ring.ensure_same(&other.ring)?;
        let r = &self.ring;
        let entries = (0..self.rows * other.cols)
            .map(|k| {
                let (i, j) = (k / other.cols, k % other.cols);
                (0..self.cols).fold(r.zero(), |acc, t| r.add(&acc, &r.mul(self.get(i, t), other.get(t, j))))
            })
            .collect();
        Ok(Matrix {
            ring: r.clone(),
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.rows * self.cols)
            .map(|k| self.get(k % self.rows, k / self.rows).clone())
            .collect();
        Matrix {
            ring: self.ring.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!("{what} of a {}×{} matrix", self.rows, self.cols)))
        }
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> Result<R::Elem> {
        self.require_square("determinant")?;
        if self.rows > MAX_DET_SIZE {
            return Err(Error::Budget {
                what: "Laplace determinant size",
                needed: self.rows as u128,
                limit: MAX_DET_SIZE as u128,
            });
        }
        Ok(laplace_det(&self.ring, self.rows, &self.entries))
    }

    /// Invertibility over any commutative carrier: the determinant is a unit.
    pub fn det_is_unit(&self) -> Result<bool> {
        Ok(self.ring.is_unit(&self.det()?))
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            carrier: self.ring.carrier(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| self.ring.render(e)).collect(),
        }
    }

    /// Reads a matrix whose declared carrier must be `ring`.
    pub fn from_json(ring: R, json: &MatrixJson) -> Result<Self> {
        if json.rows.checked_mul(json.cols) != Some(json.entries.len()) {
            return Err(Error::ShapeMismatch(format!(
                "{}×{} matrix needs {} entries, got {}",
                json.rows,
                json.cols,
                json.rows.saturating_mul(json.cols),
                json.entries.len()
            )));
        }
        if json.carrier != ring.carrier() {
            return Err(Error::MixedCarrier {
                left: ring.carrier(),
                right: json.carrier,
            });
        }
        let entries = json.entries.iter().map(|s| ring.parse(s)).collect::<Result<_>>()?;
        Matrix::new(ring, json.rows, json.cols, entries)
    }

    /// Inline form: rows separated by `;`, entries by `,`.
    pub fn parse_inline(ring: R, s: &str) -> Result<Self> {
        let rows: Vec<Vec<&str>> = s.split(';').map(|r| r.split(',').map(str::trim).collect()).collect();
        let cols = rows[0].len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!("row {i} has {} entries, row 0 has {cols}", r.len())));
        }
        let entries = rows.iter().flatten().map(|e| ring.parse(e)).collect::<Result<_>>()?;
        Matrix::new(ring, rows.len(), cols, entries)
    }

    pub fn to_inline(&self) -> String {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.ring.render(self.get(i, j)))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    /// One line per row, entries comma separated, LF terminated.
    pub fn to_csv(&self) -> String {
        let mut out = self.to_inline().replace(';', "\n");
        out.push('\n');
        out
    }
}

impl Matrix<ModRing> {
    /// Entries drawn uniformly from the carrier.
    pub fn random(ring: ModRing, rows: usize, cols: usize, rng: &mut impl Rng) -> Result<Self> {
        let order = ring.order();
        Matrix::from_fn(ring, rows, cols, |_, _| ring.element_at(rng.gen_range(0..order)))
    }

    /// Gauss–Jordan inverse over a field carrier; `None` when singular.
    pub fn inverse(&self) -> Result<Option<Self>> {
        self.require_square("inverse")?;
        require_field(&self.ring, "matrix inverse")?;
        let k = self.rows;
        let id = Matrix::identity(self.ring, k)?;
        let aug = Matrix::from_fn(self.ring, k, 2 * k, |i, j| {
            if j < k {
                *self.get(i, j)
            } else {
                *id.get(i, j - k)
            }
        })?;
        let (red, pivots) = aug.rref();
        if pivots.len() < k || pivots[k - 1] >= k {
            return Ok(None);
        }
        let inv = Matrix::from_fn(self.ring, k, k, |i, j| *red.get(i, j + k))?;
        debug_assert_eq!(self.mul(&inv)?, id);
        Ok(Some(inv))
    }

    /// Reduced row echelon form and pivot columns. The caller guarantees a
    /// field carrier, so every nonzero pivot is a unit.
    pub(crate) fn rref(&self) -> (Self, Vec<usize>) {
        let r = self.ring;
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.entries.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let Some(p) = (row..rows).find(|&i| !m[i * cols + col].is_zero()) else {
                continue;
            };
            for j in 0..cols {
                m.swap(row * cols + j, p * cols + j);
            }
            let inv = r.try_inverse(&m[row * cols + col]).expect("pivot of a field is a unit");
            for j in 0..cols {
                m[row * cols + j] = r.mul(&inv, &m[row * cols + j]);
            }
            for i in 0..rows {
                let f = m[i * cols + col];
                if i == row || f.is_zero() {
                    continue;
                }
                for j in 0..cols {
                    let t = r.mul(&f, &m[row * cols + j]);
                    m[i * cols + j] = r.sub(&m[i * cols + j], &t);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let red = Matrix { ring: r, rows, cols, entries: m };
        (red, pivots)
    }
}

/// A failed absorption: `ring_elem·member` (left) or `member·ring_elem` (right).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixCounterexample {
    pub side: Side,
    pub ring_elem: Matrix<ModRing>,
    pub member: Matrix<ModRing>,
    pub product: Matrix<ModRing>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixIdealVerdict {
    pub holds: bool,
    pub counterexample: Option<MatrixCounterexample>,
}

/// Largest matrix size and carrier order for the exhaustive ideal check.
pub const MAX_IDEAL_SIZE: usize = 2;
pub const MAX_IDEAL_CARRIER: u128 = 16;

/// Checks whether all `k×k` matrices supported on `mask` (row-major) form an
/// ideal on `side` of the full matrix ring over `ring`, exhaustively.
pub fn check_matrix_ideal(
    mask: &[bool],
    ring: &ModRing,
    k: usize,
    side: Side,
    cfg: &ScanConfig,
) -> Result<MatrixIdealVerdict> {
    if mask.len() != k * k {
        return Err(Error::ShapeMismatch(format!("mask has {} cells, {k}×{k} needs {}", mask.len(), k * k)));
    }
    if k == 0 || k > MAX_IDEAL_SIZE {
        return Err(Error::Budget {
            what: "matrix ideal size",
            needed: k as u128,
            limit: MAX_IDEAL_SIZE as u128,
        });
    }
    let n = ring.order();
    if n > MAX_IDEAL_CARRIER {
        return Err(Error::Budget {
            what: "matrix ideal carrier order",
            needed: n,
            limit: MAX_IDEAL_CARRIER,
        });
    }
    let n = n as usize;
    // Elements by enumeration index; index 0 is zero.
    let elems: Vec<ModElem> = ring.elements().collect();
    let index = |x: &ModElem| ring.index_of(x) as u8;
    let mul: Vec<u8> = (0..n * n).map(|t| index(&ring.mul(&elems[t / n], &elems[t % n]))).collect();
    let add: Vec<u8> = (0..n * n).map(|t| index(&ring.add(&elems[t / n], &elems[t % n]))).collect();
    let cells = k * k;
    let decode = |mut code: usize, out: &mut [u8]| {
        for c in (0..cells).rev() {
            out[c] = (code % n) as u8;
            code /= n;
        }
    };
    let support: Vec<usize> = (0..cells).filter(|&c| mask[c]).collect();
    let members: Vec<Vec<u8>> = (0..n.pow(support.len() as u32))
        .map(|mut code| {
            let mut m = vec![0u8; cells];
            for &c in support.iter().rev() {
                m[c] = (code % n) as u8;
                code /= n;
            }
            m
        })
        .collect();
    let total = n.pow(cells as u32);
    let sides: Vec<Side> = [Side::Left, Side::Right]
        .into_iter()
        .filter(|s| side == Side::TwoSided || *s == side)
        .collect();
    let product = |a: &[u8], b: &[u8], out: &mut [u8]| {
        for i in 0..k {
            for j in 0..k {
                let mut acc = 0u8;
                for t in 0..k {
                    let p = mul[a[i * k + t] as usize * n + b[t * k + j] as usize];
                    acc = add[acc as usize * n + p as usize];
                }
                out[i * k + j] = acc;
            }
        }
    };
    let found = cfg.install(|| {
        (0..total).into_par_iter().find_map_first(|code| {
            let mut a = vec![0u8; cells];
            decode(code, &mut a);
            let mut out = vec![0u8; cells];
            for m in &members {
                for &s in &sides {
                    match s {
                        Side::Left => product(&a, m, &mut out),
                        _ => product(m, &a, &mut out),
                    }
                    if (0..cells).any(|c| !mask[c] && out[c] != 0) {
                        return Some((s, a, m.clone(), out));
                    }
                }
            }
            None
        })
    });
    let to_matrix = |v: &[u8]| Matrix::from_fn(*ring, k, k, |i, j| elems[v[i * k + j] as usize]);
    let counterexample = match found {
        None => None,
        Some((side, a, m, p)) => Some(MatrixCounterexample {
            side,
            ring_elem: to_matrix(&a)?,
            member: to_matrix(&m)?,
            product: to_matrix(&p)?,
        }),
    };
    Ok(MatrixIdealVerdict {
        holds: counterexample.is_none(),
        counterexample,
    })
}
