//! Linear algebra over field carriers, and closure tests for spaces over
//! arbitrary scalar sets.
//!
//! A [`SpaceSpec`] describes matrices with entries in one carrier viewed as a
//! vector space over a smaller carrier of the same modulus. Its coordinates
//! are position-major, then by basis monomial (`1, iF, I, iFI` order).

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{laplace_det, Arith};
use crate::carriers::{ModElem, ModFamily, ModRing, Ring};
use crate::error::{Error, Result};
use crate::matrices::Matrix;
use crate::polynomials::{Poly, PolyArith};
use crate::scan::{require_field, ScanConfig};

/// Largest matrix accepted by [`char_poly`].
pub const MAX_CHAR_POLY_SIZE: usize = 5;

fn column(ring: ModRing, v: &[ModElem]) -> Result<Matrix<ModRing>> {
    Matrix::new(ring, v.len(), 1, v.to_vec())
}

/// Matrix whose columns are `vectors`, each of length `len`.
fn from_columns(ring: ModRing, len: usize, vectors: &[Vec<ModElem>]) -> Result<Matrix<ModRing>> {
    if let Some(v) = vectors.iter().find(|v| v.len() != len) {
        return Err(Error::ShapeMismatch(format!("vector of length {} in a space of dimension {len}", v.len())));
    }
    Matrix::from_fn(ring, len, vectors.len(), |i, j| vectors[j][i])
}

pub fn rank(a: &Matrix<ModRing>) -> Result<usize> {
    require_field(a.ring(), "rank")?;
    Ok(a.rref().1.len())
}

/// A basis of `{x : A·x = 0}`, one vector per free column, in column order.
pub fn nullspace_basis(a: &Matrix<ModRing>) -> Result<Vec<Vec<ModElem>>> {
    require_field(a.ring(), "nullspace")?;
    let r = *a.ring();
    let (red, pivots) = a.rref();
    let free = (0..a.cols()).filter(|c| !pivots.contains(c));
    Ok(free
        .map(|f| {
            let mut v = vec![ModElem::ZERO; a.cols()];
            v[f] = ModElem::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r.neg(red.get(i, f));
            }
            v
        })
        .collect())
}

/// A solution of `A·x = b` (free variables zero), or `None` when inconsistent.
pub fn gauss_solve(a: &Matrix<ModRing>, b: &[ModElem]) -> Result<Option<Vec<ModElem>>> {
    require_field(a.ring(), "linear solve")?;
    if b.len() != a.rows() {
        return Err(Error::ShapeMismatch(format!(
            "right-hand side of length {} for {} equations",
            b.len(),
            a.rows()
        )));
    }
    let r = *a.ring();
    for x in b {
        r.check(x)?;
    }
    let n = a.cols();
    let aug = Matrix::from_fn(r, a.rows(), n + 1, |i, j| if j < n { *a.get(i, j) } else { b[i] })?;
    let (red, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![ModElem::ZERO; n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = *red.get(i, n);
    }
    Ok(Some(x))
}

/// Matrices over `element` viewed as a vector space over `base`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpaceSpec {
    element: ModRing,
    rows: usize,
    cols: usize,
    base: ModRing,
}

fn slot_bits(family: ModFamily) -> usize {
    family.active_slots().fold(0, |acc, s| acc | s)
}

impl SpaceSpec {
    pub fn new(element: ModRing, rows: usize, cols: usize, base: ModRing) -> Result<Self> {
        if element.modulus() != base.modulus() || !base.family().embeds_in(element.family()) {
            return Err(Error::InvalidCarrier(format!(
                "{} does not embed in {} as scalars",
                base.carrier(),
                element.carrier()
            )));
        }
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch(format!("{rows}×{cols} space has no positions")));
        }
        Ok(SpaceSpec { element, rows, cols, base })
    }

    /// Length-`len` row vectors.
    pub fn vectors(element: ModRing, len: usize, base: ModRing) -> Result<Self> {
        SpaceSpec::new(element, 1, len, base)
    }

    pub fn element(&self) -> ModRing {
        self.element
    }
    pub fn base(&self) -> ModRing {
        self.base
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Slots of the monomials spanning the element carrier over the base.
    fn monomials(&self) -> Vec<usize> {
        let extra = slot_bits(self.element.family()) & !slot_bits(self.base.family());
        (0..4).filter(|s| s & !extra == 0).collect()
    }

    pub fn dim_over_base(&self) -> usize {
        self.rows * self.cols * self.monomials().len()
    }

    /// Unit matrices times each basis monomial, position-major.
    pub fn standard_basis(&self) -> Vec<Matrix<ModRing>> {
        let positions = self.rows * self.cols;
        let monomials = self.monomials();
        (0..positions)
            .flat_map(|pos| monomials.iter().map(move |&m| (pos, m)))
            .map(|(pos, m)| {
                let mut c = [0; 4];
                c[m] = 1;
                let unit = ModElem::from_coords(c);
                Matrix::from_fn(self.element, self.rows, self.cols, |i, j| {
                    if i * self.cols + j == pos {
                        unit
                    } else {
                        ModElem::ZERO
                    }
                })
                .expect("unit matrix is in the space")
            })
            .collect()
    }

    fn check_member(&self, m: &Matrix<ModRing>) -> Result<()> {
        if (m.rows(), m.cols()) != (self.rows, self.cols) {
            return Err(Error::ShapeMismatch(format!(
                "{}×{} matrix in a {}×{} space",
                m.rows(),
                m.cols(),
                self.rows,
                self.cols
            )));
        }
        self.element.ensure_same(m.ring())
    }

    /// Coordinates of `m` over the base, in standard-basis order.
    pub fn coordinates(&self, m: &Matrix<ModRing>) -> Result<Vec<ModElem>> {
        self.check_member(m)?;
        let monomials = self.monomials();
        let base_slots: Vec<usize> = self.base.family().active_slots().collect();
        Ok(m.entries()
            .iter()
            .flat_map(|x| {
                let coords = x.coords();
                let base_slots = &base_slots;
                monomials.iter().map(move |&mono| {
                    let mut c = [0; 4];
                    for &b in base_slots {
                        c[b] = coords[mono | b];
                    }
                    ModElem::from_coords(c)
                })
            })
            .collect())
    }

    /// Inverse of [`SpaceSpec::coordinates`].
    pub fn from_coordinates(&self, v: &[ModElem]) -> Result<Matrix<ModRing>> {
        if v.len() != self.dim_over_base() {
            return Err(Error::ShapeMismatch(format!(
                "{} coordinates for a space of dimension {}",
                v.len(),
                self.dim_over_base()
            )));
        }
        for x in v {
            self.base.check(x)?;
        }
        let monomials = self.monomials();
        let k = monomials.len();
        Matrix::from_fn(self.element, self.rows, self.cols, |i, j| {
            let pos = i * self.cols + j;
            let mut c = [0; 4];
            for (t, &mono) in monomials.iter().enumerate() {
                let b = v[pos * k + t].coords();
                for (slot, &val) in b.iter().enumerate() {
                    if val != 0 {
                        c[mono | slot] = val;
                    }
                }
            }
            ModElem::from_coords(c)
        })
    }

    /// Matrix over the base of a map given by its action on the space.
    pub fn operator(&self, f: impl Fn(&Matrix<ModRing>) -> Matrix<ModRing>) -> Result<Matrix<ModRing>> {
        let images = self
            .standard_basis()
            .iter()
            .map(|b| self.coordinates(&f(b)))
            .collect::<Result<Vec<_>>>()?;
        from_columns(self.base, self.dim_over_base(), &images)
    }

    fn coordinate_matrix(&self, basis: &[Matrix<ModRing>]) -> Result<Matrix<ModRing>> {
        let vectors = basis.iter().map(|m| self.coordinates(m)).collect::<Result<Vec<_>>>()?;
        from_columns(self.base, self.dim_over_base(), &vectors)
    }
}

/// `det(xI - A)` by cofactor expansion with polynomial entries.
pub fn char_poly(a: &Matrix<ModRing>) -> Result<Poly<ModRing>> {
    require_field(a.ring(), "characteristic polynomial")?;
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!("characteristic polynomial of a {}×{} matrix", a.rows(), a.cols())));
    }
    let k = a.rows();
    if k > MAX_CHAR_POLY_SIZE {
        return Err(Error::Budget {
            what: "characteristic polynomial size",
            needed: k as u128,
            limit: MAX_CHAR_POLY_SIZE as u128,
        });
    }
    let r = *a.ring();
    let entries: Vec<Poly<ModRing>> = (0..k * k)
        .map(|t| {
            let (i, j) = (t / k, t % k);
            let c = r.neg(a.get(i, j));
            let coeffs = if i == j { vec![c, ModElem::ONE] } else { vec![c] };
            Poly::new(r, coeffs).expect("entries are members")
        })
        .collect();
    Ok(laplace_det(&PolyArith { ring: r }, k, &entries))
}

/// An eigenvalue with a basis of its eigenspace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eigen {
    pub value: ModElem,
    pub basis: Vec<Vec<ModElem>>,
}

/// Tests every scalar of `search` for a nontrivial nullspace of `A - cI`.
pub fn eigen_search(a: &Matrix<ModRing>, search: &ModRing, cfg: &ScanConfig) -> Result<Vec<Eigen>> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!("eigenvalues of a {}×{} matrix", a.rows(), a.cols())));
    }
    let from = a.ring();
    if from.modulus() != search.modulus() || !from.family().embeds_in(search.family()) {
        return Err(Error::InvalidCarrier(format!(
            "{} is not contained in {}",
            from.carrier(),
            search.carrier()
        )));
    }
    require_field(search, "eigen search")?;
    let order = search.order();
    if order > cfg.max_elements {
        return Err(Error::Budget {
            what: "eigen search",
            needed: order,
            limit: cfg.max_elements,
        });
    }
    let lifted = Matrix::new(*search, a.rows(), a.cols(), a.entries().to_vec())?;
    let k = a.rows();
    let found: Result<Vec<Option<Eigen>>> = cfg.install(|| {
        (0..order as u64)
            .into_par_iter()
            .map(|t| {
                let c = search.element_at(t as u128);
                let shifted = Matrix::from_fn(*search, k, k, |i, j| {
                    let x = *lifted.get(i, j);
                    if i == j {
                        search.sub(&x, &c)
                    } else {
                        x
                    }
                })?;
                let basis = nullspace_basis(&shifted)?;
                Ok((!basis.is_empty()).then_some(Eigen { value: c, basis }))
            })
            .collect()
    });
    Ok(found?.into_iter().flatten().collect())
}

/// Sum of the real coordinates of every entry, as a scalar of `base`.
pub fn linear_functional_real_sum(v: &Matrix<ModRing>, base: &ModRing) -> Result<ModElem> {
    let r = v.ring();
    if base.family() != ModFamily::Plain || base.modulus() != r.modulus() {
        return Err(Error::MixedCarrier {
            left: r.carrier(),
            right: base.carrier(),
        });
    }
    let n = r.modulus() as u128;
    let sum = v.entries().iter().fold(0u128, |acc, x| (acc + x.re() as u128) % n);
    Ok(ModElem::real(sum as u64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClosureFlags {
    pub scalar: bool,
    pub add: bool,
    pub mul: bool,
}

impl ClosureFlags {
    pub const ALL: ClosureFlags = ClosureFlags {
        scalar: true,
        add: true,
        mul: true,
    };
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureViolation {
    Scalar {
        scalar: ModElem,
        element: Matrix<ModRing>,
        product: Matrix<ModRing>,
    },
    Add {
        a: Matrix<ModRing>,
        b: Matrix<ModRing>,
        sum: Matrix<ModRing>,
    },
    Mul {
        a: Matrix<ModRing>,
        b: Matrix<ModRing>,
        product: Matrix<ModRing>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosureClass {
    SetVectorSpace,
    SetLinearAlgebra,
    StrongLinearAlgebra,
}

/// Each requested closure as `Some(holds)`; unrequested ones are `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureVerdict {
    pub is_scalar_closed: Option<bool>,
    pub is_add_closed: Option<bool>,
    pub is_mul_closed: Option<bool>,
    /// First failure, checking scalar, then add, then mul.
    pub first_violation: Option<ClosureViolation>,
}

impl ClosureVerdict {
    /// The strongest rung of the ladder reached, when every closure was checked.
    pub fn classify(&self) -> Option<ClosureClass> {
        match (self.is_scalar_closed?, self.is_add_closed?, self.is_mul_closed?) {
            (true, true, true) => Some(ClosureClass::StrongLinearAlgebra),
            (true, true, false) => Some(ClosureClass::SetLinearAlgebra),
            (true, false, _) => Some(ClosureClass::SetVectorSpace),
            (false, _, _) => None,
        }
    }
}

/// Internal product used for multiplicative closure: the matrix product for
/// square items, the entrywise product otherwise.
pub fn closure_product(a: &Matrix<ModRing>, b: &Matrix<ModRing>) -> Result<Matrix<ModRing>> {
    if a.is_square() {
        return a.mul(b);
    }
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(Error::ShapeMismatch("entrywise product of different shapes".into()));
    }
    let r = *a.ring();
    Matrix::from_fn(r, a.rows(), a.cols(), |i, j| r.mul(a.get(i, j), b.get(i, j)))
}

/// Exhaustive closure of the finite set `v` under the requested operations.
/// Scalars must be members of the items' carrier.
pub fn closure_check(v: &[Matrix<ModRing>], s: &[ModElem], flags: ClosureFlags) -> Result<ClosureVerdict> {
    let Some(first) = v.first() else {
        return Err(Error::Domain("closure of an empty set".into()));
    };
    let ring = *first.ring();
    for m in v {
        if (m.rows(), m.cols()) != (first.rows(), first.cols()) {
            return Err(Error::ShapeMismatch("items of different shapes".into()));
        }
        ring.ensure_same(m.ring())?;
    }
    for x in s {
        ring.check(x)?;
    }
    let items: Vec<Matrix<ModRing>> = v
        .iter()
        .map(|m| (m.entries().to_vec(), m))
        .collect::<std::collections::BTreeMap<_, _>>()
        .into_values()
        .cloned()
        .collect();
    let scalars: Vec<ModElem> = s.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let set: HashSet<&Matrix<ModRing>> = items.iter().collect();
    let mut first_violation = None;

    let is_scalar_closed = flags.scalar.then(|| {
        let bad = scalars.iter().find_map(|c| {
            items.iter().find_map(|m| {
                let product = m.scale(c);
                (!set.contains(&product)).then(|| ClosureViolation::Scalar {
                    scalar: *c,
                    element: m.clone(),
                    product,
                })
            })
        });
        let ok = bad.is_none();
        first_violation = first_violation.take().or(bad);
        ok
    });
    let pairs = |op: &dyn Fn(&Matrix<ModRing>, &Matrix<ModRing>) -> Result<Matrix<ModRing>>| -> Result<Option<(Matrix<ModRing>, Matrix<ModRing>, Matrix<ModRing>)>> {
        for a in &items {
            for b in &items {
                let c = op(a, b)?;
                if !set.contains(&c) {
                    return Ok(Some((a.clone(), b.clone(), c)));
                }
            }
        }
        Ok(None)
    };
    let is_add_closed = if flags.add {
        let bad = pairs(&|a, b| a.add(b))?;
        let ok = bad.is_none();
        if first_violation.is_none() {
            first_violation = bad.map(|(a, b, sum)| ClosureViolation::Add { a, b, sum });
        }
        Some(ok)
    } else {
        None
    };
    let is_mul_closed = if flags.mul {
        let bad = pairs(&closure_product)?;
        let ok = bad.is_none();
        if first_violation.is_none() {
            first_violation = bad.map(|(a, b, product)| ClosureViolation::Mul { a, b, product });
        }
        Some(ok)
    } else {
        None
    };
    Ok(ClosureVerdict {
        is_scalar_closed,
        is_add_closed,
        is_mul_closed,
        first_violation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectSumKind {
    Direct,
    PseudoDirect,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectSumVerdict {
    pub kind: DirectSumKind,
    /// Dimension of the sum of the subspaces, and of the ambient space.
    pub span_dim: usize,
    pub ambient_dim: usize,
    /// First pair `(i, j)` with a nonzero common vector.
    pub overlap: Option<(usize, usize, Matrix<ModRing>)>,
}

/// Classifies a family of subspaces of `spec`, each given by spanning matrices.
pub fn check_direct_sum(spec: &SpaceSpec, subspaces: &[Vec<Matrix<ModRing>>]) -> Result<DirectSumVerdict> {
    require_field(&spec.base, "direct sum check")?;
    let coords = subspaces
        .iter()
        .map(|basis| {
            basis
                .iter()
                .map(|m| spec.coordinates(m))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let dim = spec.dim_over_base();
    let all: Vec<Vec<ModElem>> = coords.iter().flatten().cloned().collect();
    let span_dim = if all.is_empty() {
        0
    } else {
        rank(&from_columns(spec.base, dim, &all)?)?
    };
    let mut overlap = None;
    'outer: for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            if let Some(v) = intersection_witness(spec, &coords[i], &coords[j])? {
                overlap = Some((i, j, spec.from_coordinates(&v)?));
                break 'outer;
            }
        }
    }
    let kind = match (span_dim == dim, overlap.is_none()) {
        (true, true) => DirectSumKind::Direct,
        (true, false) => DirectSumKind::PseudoDirect,
        (false, _) => DirectSumKind::Neither,
    };
    Ok(DirectSumVerdict {
        kind,
        span_dim,
        ambient_dim: dim,
        overlap,
    })
}

/// A nonzero vector in `span(a) ∩ span(b)`, read off the joint nullspace of `[a | b]`.
fn intersection_witness(spec: &SpaceSpec, a: &[Vec<ModElem>], b: &[Vec<ModElem>]) -> Result<Option<Vec<ModElem>>> {
    if a.is_empty() || b.is_empty() {
        return Ok(None);
    }
    let base = spec.base;
    let dim = spec.dim_over_base();
    let joint: Vec<Vec<ModElem>> = a.iter().chain(b).cloned().collect();
    let null = nullspace_basis(&from_columns(base, dim, &joint)?)?;
    let am = from_columns(base, dim, a)?;
    for n in null {
        let v = am.mul(&column(base, &n[..a.len()])?)?.into_entries();
        if v.iter().any(|x| !x.is_zero()) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantVerdict {
    pub invariant: bool,
    /// First basis vector whose image leaves the span, with that image.
    pub violation: Option<(Matrix<ModRing>, Matrix<ModRing>)>,
}

/// Whether the operator `t` (over the base, in standard coordinates) maps
/// `span(w_basis)` into itself.
pub fn invariant_subspace_check(
    spec: &SpaceSpec,
    t: &Matrix<ModRing>,
    w_basis: &[Matrix<ModRing>],
) -> Result<InvariantVerdict> {
    let dim = spec.dim_over_base();
    if (t.rows(), t.cols()) != (dim, dim) {
        return Err(Error::ShapeMismatch(format!(
            "{}×{} operator on a space of dimension {dim}",
            t.rows(),
            t.cols()
        )));
    }
    spec.base.ensure_same(t.ring())?;
    require_field(&spec.base, "invariant subspace check")?;
    let w = spec.coordinate_matrix(w_basis)?;
    for m in w_basis {
        let image = t.mul(&column(spec.base, &spec.coordinates(m)?)?)?.into_entries();
        if gauss_solve(&w, &image)?.is_none() {
            return Ok(InvariantVerdict {
                invariant: false,
                violation: Some((m.clone(), spec.from_coordinates(&image)?)),
            });
        }
    }
    Ok(InvariantVerdict {
        invariant: true,
        violation: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(r: ModRing, s: &str) -> Matrix<ModRing> {
        Matrix::parse_inline(r, s).unwrap()
    }

    fn cfg() -> ScanConfig {
        ScanConfig::default()
    }

    #[test]
    fn identity_systems() {
        let z7 = ModRing::complex(7).unwrap();
        let id = Matrix::identity(z7, 3).unwrap();
        let b = vec![ModElem::complex(1, 2), ModElem::ZERO, ModElem::I_F];
        assert_eq!(gauss_solve(&id, &b).unwrap(), Some(b));
        assert_eq!(rank(&id).unwrap(), 3);
        assert!(nullspace_basis(&id).unwrap().is_empty());
    }

    #[test]
    fn dependent_rows() {
        let z7 = ModRing::complex(7).unwrap();
        let a = m(z7, "1,iF;iF,6");
        assert_eq!(rank(&a).unwrap(), 1);
        let null = nullspace_basis(&a).unwrap();
        assert_eq!(null.len(), 1);
        let image = a.mul(&column(z7, &null[0]).unwrap()).unwrap();
        assert!(image.is_zero());
        assert_eq!(gauss_solve(&a, &[ModElem::ONE, ModElem::ONE]).unwrap(), None);
        assert!(matches!(rank(&m(ModRing::complex(5).unwrap(), "1")), Err(Error::Unsupported(_))));
    }

    #[test]
    fn random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for t in 0..200 {
            let r = if t % 2 == 0 { ModRing::complex(7).unwrap() } else { ModRing::plain(11).unwrap() };
            let (rows, cols) = (rng.gen_range(1..5), rng.gen_range(1..5));
            let a = Matrix::random(r, rows, cols, &mut rng).unwrap();
            let x0 = Matrix::random(r, cols, 1, &mut rng).unwrap();
            let b = a.mul(&x0).unwrap().into_entries();
            let x = gauss_solve(&a, &b).unwrap().expect("consistent by construction");
            assert_eq!(a.mul(&column(r, &x).unwrap()).unwrap().into_entries(), b);
            let null = nullspace_basis(&a).unwrap();
            assert_eq!(rank(&a).unwrap() + null.len(), cols);
            for v in null {
                assert!(a.mul(&column(r, &v).unwrap()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn rank_plus_nullity_exhaustive_small() {
        let p3 = ModRing::plain(3).unwrap();
        for code in 0..3u32.pow(6) {
            let entries = (0..6).map(|k| ModElem::real(((code / 3u32.pow(k)) % 3) as u64)).collect();
            let a = Matrix::new(p3, 2, 3, entries).unwrap();
            assert_eq!(rank(&a).unwrap() + nullspace_basis(&a).unwrap().len(), 3);
        }
    }

    #[test]
    fn dimensions() {
        let z5 = ModRing::complex(5).unwrap();
        let spec = SpaceSpec::new(z5, 2, 3, ModRing::plain(5).unwrap()).unwrap();
        assert_eq!(spec.dim_over_base(), 12);
        let basis = spec.standard_basis();
        assert_eq!(basis.len(), 12);
        assert_eq!(basis[0], m(z5, "1,0,0;0,0,0"));
        assert_eq!(basis[1], m(z5, "iF,0,0;0,0,0"));
        assert_eq!(basis[11], m(z5, "0,0,0;0,0,iF"));
        let n43 = ModRing::neutro_complex(43).unwrap();
        assert_eq!(SpaceSpec::new(n43, 3, 3, n43).unwrap().dim_over_base(), 9);
        for k in 1..6 {
            let n = ModRing::neutro_complex(7).unwrap();
            assert_eq!(SpaceSpec::vectors(n, k, ModRing::plain(7).unwrap()).unwrap().dim_over_base(), 4 * k);
            let over_neutro = SpaceSpec::vectors(n, k, ModRing::neutro(7).unwrap()).unwrap();
            assert_eq!(over_neutro.dim_over_base(), 2 * k);
        }
        for p in [3, 7, 11] {
            for (rows, cols) in [(1, 1), (2, 3), (4, 2)] {
                let c = ModRing::complex(p).unwrap();
                let over_p = SpaceSpec::new(c, rows, cols, ModRing::plain(p).unwrap()).unwrap();
                let over_c = SpaceSpec::new(c, rows, cols, c).unwrap();
                assert_eq!(over_p.dim_over_base(), 2 * over_c.dim_over_base());
            }
        }
        assert!(SpaceSpec::new(z5, 1, 1, ModRing::neutro(5).unwrap()).is_err());
        assert!(SpaceSpec::new(z5, 1, 1, ModRing::plain(7).unwrap()).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let n = ModRing::neutro_complex(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for base in [ModFamily::Plain, ModFamily::Complex, ModFamily::Neutro, ModFamily::NeutroComplex] {
            let spec = SpaceSpec::new(n, 2, 2, n.with_family(base)).unwrap();
            for _ in 0..50 {
                let a = Matrix::random(n, 2, 2, &mut rng).unwrap();
                let v = spec.coordinates(&a).unwrap();
                assert_eq!(v.len(), spec.dim_over_base());
                assert_eq!(spec.from_coordinates(&v).unwrap(), a);
            }
            for (k, b) in spec.standard_basis().iter().enumerate() {
                let v = spec.coordinates(b).unwrap();
                assert!(v.iter().enumerate().all(|(t, x)| *x == if t == k { ModElem::ONE } else { ModElem::ZERO }));
            }
        }
    }

    #[test]
    fn characteristic_polynomials() {
        let p7 = ModRing::plain(7).unwrap();
        let x2 = Poly::parse(p7, "x^2").unwrap();
        assert_eq!(char_poly(&Matrix::zero(p7, 2, 2).unwrap()).unwrap(), x2);
        let d = m(p7, "2,0;0,3");
        let expect = Poly::parse(p7, "5 + x").unwrap().mul(&Poly::parse(p7, "4 + x").unwrap()).unwrap();
        assert_eq!(char_poly(&d).unwrap(), expect);
        let z7 = ModRing::complex(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for k in 1..=4 {
            let a = Matrix::random(z7, k, k, &mut rng).unwrap();
            let cp = char_poly(&a).unwrap();
            assert_eq!(cp.degree(), Some(k));
            assert_eq!(cp.leading(), Some(&ModElem::ONE));
            // constant term is (-1)^k det A
            let det = a.det().unwrap();
            let sign = if k % 2 == 0 { det } else { z7.neg(&det) };
            assert_eq!(cp.coeff(0), sign);
        }
        assert!(matches!(char_poly(&Matrix::identity(z7, 6).unwrap()), Err(Error::Budget { .. })));
    }

    #[test]
    fn eigen_examples() {
        let p7 = ModRing::plain(7).unwrap();
        let e = eigen_search(&Matrix::identity(p7, 2).unwrap(), &p7, &cfg()).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!((e[0].value, e[0].basis.len()), (ModElem::ONE, 2));
        let e = eigen_search(&m(p7, "2,0;0,3"), &p7, &cfg()).unwrap();
        assert_eq!(e.iter().map(|x| x.value).collect::<Vec<_>>(), vec![ModElem::real(2), ModElem::real(3)]);
        for p in [3u64, 7, 11, 19] {
            let zp = ModRing::plain(p).unwrap();
            let a = m(zp, &format!("0,1;{},0", p - 1));
            assert!(eigen_search(&a, &zp, &cfg()).unwrap().is_empty());
            let cp = ModRing::complex(p).unwrap();
            let values: Vec<ModElem> = eigen_search(&a, &cp, &cfg()).unwrap().into_iter().map(|x| x.value).collect();
            assert_eq!(values, vec![ModElem::complex(0, 1), ModElem::complex(0, p - 1)]);
        }
        assert!(eigen_search(&m(p7, "1"), &ModRing::complex(5).unwrap(), &cfg()).is_err());
        let z5 = ModRing::plain(5).unwrap();
        assert!(matches!(eigen_search(&m(z5, "1"), &ModRing::complex(5).unwrap(), &cfg()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn eigenvalues_are_char_poly_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for p in [3, 7] {
            let c = ModRing::complex(p).unwrap();
            for k in [2, 3] {
                for _ in 0..20 {
                    let a = Matrix::random(c, k, k, &mut rng).unwrap();
                    let values: Vec<ModElem> = eigen_search(&a, &c, &cfg()).unwrap().into_iter().map(|x| x.value).collect();
                    assert_eq!(values, char_poly(&a).unwrap().roots(&cfg()).unwrap());
                }
            }
        }
    }

    #[test]
    fn scaling_preserves_eigenvectors() {
        let c = ModRing::complex(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..30 {
            let a = Matrix::random(c, 2, 2, &mut rng).unwrap();
            let alpha = ModElem::real(rng.gen_range(1..7));
            let e1 = eigen_search(&a, &c, &cfg()).unwrap();
            let e2 = eigen_search(&a.scale(&alpha), &c, &cfg()).unwrap();
            let scaled: BTreeSet<ModElem> = e1.iter().map(|e| c.mul(&alpha, &e.value)).collect();
            assert_eq!(scaled, e2.iter().map(|e| e.value).collect());
            for e in &e1 {
                let target = c.mul(&alpha, &e.value);
                let other = e2.iter().find(|x| x.value == target).unwrap();
                assert_eq!(other.basis, e.basis);
            }
        }
    }

    #[test]
    fn real_sum_functional() {
        let n7 = ModRing::neutro_complex(7).unwrap();
        let p7 = ModRing::plain(7).unwrap();
        let v = m(n7, "3+4iF+6I+4iFI,6+2iF+3iFI");
        assert_eq!(linear_functional_real_sum(&v, &p7).unwrap(), ModElem::real(2));
        assert_eq!(linear_functional_real_sum(&Matrix::zero(n7, 1, 2).unwrap(), &p7).unwrap(), ModElem::ZERO);
        assert!(linear_functional_real_sum(&v, &ModRing::plain(5).unwrap()).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let f = |x: &Matrix<ModRing>| linear_functional_real_sum(x, &p7).unwrap();
        for _ in 0..500 {
            let u = Matrix::random(n7, 1, 3, &mut rng).unwrap();
            let w = Matrix::random(n7, 1, 3, &mut rng).unwrap();
            let alpha = ModElem::real(rng.gen_range(0..7));
            let lhs = f(&u.scale(&alpha).add(&w).unwrap());
            assert_eq!(lhs, p7.add(&p7.mul(&alpha, &f(&u)), &f(&w)));
        }
    }

    fn elems(r: ModRing, xs: &[&str]) -> Vec<Matrix<ModRing>> {
        xs.iter().map(|x| m(r, x)).collect()
    }

    #[test]
    fn closure_examples() {
        let n3 = ModRing::neutro_complex(3).unwrap();
        let all: Vec<Matrix<ModRing>> = n3.elements().map(|x| Matrix::new(n3, 1, 1, vec![x]).unwrap()).collect();
        let scalars: Vec<ModElem> = (0..3).map(ModElem::real).collect();
        let v = closure_check(&all, &scalars, ClosureFlags::ALL).unwrap();
        assert_eq!(v.classify(), Some(ClosureClass::StrongLinearAlgebra));
        assert_eq!(v.first_violation, None);

        let n = ModRing::neutro(3).unwrap();
        let v = closure_check(&elems(n, &["0", "I"]), &[ModElem::ZERO, ModElem::ONE], ClosureFlags::ALL).unwrap();
        assert_eq!((v.is_scalar_closed, v.is_add_closed, v.is_mul_closed), (Some(true), Some(false), Some(true)));
        match &v.first_violation {
            Some(ClosureViolation::Add { sum, .. }) => assert_eq!(*sum, m(n, "2I")),
            other => panic!("{other:?}"),
        }
        assert_eq!(v.classify(), Some(ClosureClass::SetVectorSpace));

        let z3 = ModRing::complex(3).unwrap();
        let v = closure_check(&elems(z3, &["0", "1"]), &[ModElem::I_F], ClosureFlags { scalar: true, ..Default::default() }).unwrap();
        assert_eq!(v.is_scalar_closed, Some(false));
        assert_eq!(v.classify(), None);
        match v.first_violation {
            Some(ClosureViolation::Scalar { product, .. }) => assert_eq!(product, m(z3, "iF")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn closure_verdicts_reverify() {
        let z5 = ModRing::complex(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..50 {
            let v: Vec<Matrix<ModRing>> = (0..rng.gen_range(1..6)).map(|_| Matrix::random(z5, 1, 1, &mut rng).unwrap()).collect();
            let s: Vec<ModElem> = (0..2).map(|_| ModElem::real(rng.gen_range(0..5))).collect();
            let verdict = closure_check(&v, &s, ClosureFlags::ALL).unwrap();
            let brute_scalar = s.iter().all(|c| v.iter().all(|x| v.contains(&x.scale(c))));
            let brute_add = v.iter().all(|a| v.iter().all(|b| v.contains(&a.add(b).unwrap())));
            let brute_mul = v.iter().all(|a| v.iter().all(|b| v.contains(&a.mul(b).unwrap())));
            assert_eq!(verdict.is_scalar_closed, Some(brute_scalar));
            assert_eq!(verdict.is_add_closed, Some(brute_add));
            assert_eq!(verdict.is_mul_closed, Some(brute_mul));
        }
    }

    fn block(r: ModRing, pos: usize) -> Vec<Matrix<ModRing>> {
        let spec = SpaceSpec::new(r, 2, 2, ModRing::plain(r.modulus()).unwrap()).unwrap();
        spec.standard_basis()[2 * pos..2 * pos + 2].to_vec()
    }

    #[test]
    fn direct_sums() {
        let z17 = ModRing::complex(17).unwrap();
        let spec = SpaceSpec::new(z17, 2, 2, ModRing::plain(17).unwrap()).unwrap();
        let blocks: Vec<_> = (0..4).map(|p| block(z17, p)).collect();
        let v = check_direct_sum(&spec, &blocks).unwrap();
        assert_eq!((v.kind, v.span_dim, v.ambient_dim), (DirectSumKind::Direct, 8, 8));
        let mut overlapping = blocks.clone();
        overlapping[1].extend(blocks[0].clone());
        let v = check_direct_sum(&spec, &overlapping).unwrap();
        assert_eq!(v.kind, DirectSumKind::PseudoDirect);
        let (i, j, w) = v.overlap.unwrap();
        assert_eq!((i, j), (0, 1));
        assert!(!w.is_zero() && w.get(0, 1).is_zero() && w.get(1, 0).is_zero());
        let twice = vec![blocks[0].clone(), blocks[0].clone()];
        assert_eq!(check_direct_sum(&spec, &twice).unwrap().kind, DirectSumKind::Neither);
    }

    #[test]
    fn invariant_subspaces() {
        let z29 = ModRing::complex(29).unwrap();
        let spec = SpaceSpec::new(z29, 5, 3, ModRing::plain(29).unwrap()).unwrap();
        let targets = [(0, 0), (1, 1), (2, 2), (3, 0), (4, 1)];
        let project = |a: &Matrix<ModRing>| {
            Matrix::from_fn(z29, 5, 3, |i, j| {
                let k = targets.iter().position(|&t| t == (i, j));
                k.map_or(ModElem::ZERO, |k| *a.get(k / 3, k % 3))
            })
            .unwrap()
        };
        let t = spec.operator(project).unwrap();
        let basis = spec.standard_basis();
        let w: Vec<Matrix<ModRing>> = basis
            .iter()
            .filter(|b| targets.iter().any(|&(i, j)| !b.get(i, j).is_zero()))
            .cloned()
            .collect();
        assert_eq!(w.len(), 10);
        assert!(invariant_subspace_check(&spec, &t, &w).unwrap().invariant);
        let ident = Matrix::identity(ModRing::plain(29).unwrap(), 30).unwrap();
        assert!(invariant_subspace_check(&spec, &ident, &w[..3]).unwrap().invariant);
        // rows 0, 2, 4 are not preserved
        let p: Vec<Matrix<ModRing>> = basis
            .iter()
            .filter(|b| (0..3).any(|j| !b.get(0, j).is_zero() || !b.get(2, j).is_zero() || !b.get(4, j).is_zero()))
            .cloned()
            .collect();
        let v = invariant_subspace_check(&spec, &t, &p).unwrap();
        assert!(!v.invariant);
        let (src, img) = v.violation.unwrap();
        assert_eq!(project(&src), img);

        let p7 = ModRing::plain(7).unwrap();
        let plane = SpaceSpec::vectors(p7, 2, p7).unwrap();
        let swap = m(p7, "0,1;1,0");
        let axis = vec![m(p7, "1,0")];
        let v = invariant_subspace_check(&plane, &swap, &axis).unwrap();
        assert_eq!(v.violation, Some((m(p7, "1,0"), m(p7, "0,1"))));
    }
}
