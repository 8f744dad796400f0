use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::exact::ExactElem;
use super::{notation, Carrier, Ring};
use crate::arith::{cofactor, laplace_det, Arith};
use crate::error::{Error, Result};

/// Largest supported modulus; keeps every coordinate product inside a `u64`.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

/// Shape of a modular carrier: which of the four coordinates it uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModFamily {
    /// `Z_n`
    Plain,
    /// `C(Z_n)`, elements `a + b i_F`
    Complex,
    /// `⟨Z_n ∪ I⟩`, elements `a + c I`
    Neutro,
    /// `C(⟨Z_n ∪ I⟩)`, elements `a + b i_F + c I + d i_F I`
    NeutroComplex,
}

impl ModFamily {
    pub const ALL: [ModFamily; 4] = [
        ModFamily::Plain,
        ModFamily::Complex,
        ModFamily::Neutro,
        ModFamily::NeutroComplex,
    ];

    /// Coordinates in use, in `(re, im, neut, imneut)` order.
    pub const fn slots(self) -> [bool; 4] {
        match self {
            ModFamily::Plain => [true, false, false, false],
            ModFamily::Complex => [true, true, false, false],
            ModFamily::Neutro => [true, false, true, false],
            ModFamily::NeutroComplex => [true, true, true, true],
        }
    }

    pub fn active_slots(self) -> impl Iterator<Item = usize> {
        let slots = self.slots();
        (0..4).filter(move |&i| slots[i])
    }

    /// Number of coordinates, i.e. the rank over `Z_n`.
    pub fn dimension(self) -> u32 {
        self.slots().iter().filter(|&&b| b).count() as u32
    }

    /// True when every coordinate of `self` is also used by `other`.
    pub fn embeds_in(self, other: ModFamily) -> bool {
        let (a, b) = (self.slots(), other.slots());
        (0..4).all(|i| !a[i] || b[i])
    }
}

/// An element `re + im·i_F + neut·I + imneut·i_F I` of a modular carrier.
///
/// Coordinates are canonical residues in `[0, n)`; the derived ordering is the
/// lexicographic enumeration order used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct ModElem {
    re: u64,
    im: u64,
    neut: u64,
    imneut: u64,
}

impl ModElem {
    pub const ZERO: ModElem = ModElem::new(0, 0, 0, 0);
    pub const ONE: ModElem = ModElem::new(1, 0, 0, 0);
    /// The finite complex unit `i_F`.
    pub const I_F: ModElem = ModElem::new(0, 1, 0, 0);
    /// The indeterminate `I`.
    pub const IND: ModElem = ModElem::new(0, 0, 1, 0);
    /// The mixed unit `i_F I`.
    pub const I_F_IND: ModElem = ModElem::new(0, 0, 0, 1);

    /// Raw constructor. Use [`ModRing::element`] to reduce and validate.
    pub const fn new(re: u64, im: u64, neut: u64, imneut: u64) -> Self {
        ModElem { re, im, neut, imneut }
    }

    pub const fn real(re: u64) -> Self {
        ModElem::new(re, 0, 0, 0)
    }

    pub const fn complex(re: u64, im: u64) -> Self {
        ModElem::new(re, im, 0, 0)
    }

    pub const fn from_coords(c: [u64; 4]) -> Self {
        ModElem::new(c[0], c[1], c[2], c[3])
    }

    pub const fn coords(&self) -> [u64; 4] {
        [self.re, self.im, self.neut, self.imneut]
    }

    pub const fn re(&self) -> u64 {
        self.re
    }
    pub const fn im(&self) -> u64 {
        self.im
    }
    pub const fn neut(&self) -> u64 {
        self.neut
    }
    pub const fn imneut(&self) -> u64 {
        self.imneut
    }

    pub fn is_zero(&self) -> bool {
        *self == ModElem::ZERO
    }
}

impl fmt::Display for ModElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&notation::render_modular(self))
    }
}

/// A finite carrier: one modular family with its modulus `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModRing {
    family: ModFamily,
    modulus: u64,
}

impl ModRing {
    pub fn new(family: ModFamily, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidCarrier(format!("modulus must be at least 2, got {modulus}")));
        }
        if modulus > MAX_MODULUS {
            return Err(Error::InvalidCarrier(format!(
                "modulus {modulus} exceeds the supported maximum {MAX_MODULUS}"
            )));
        }
        Ok(ModRing { family, modulus })
    }

    pub fn plain(n: u64) -> Result<Self> {
        ModRing::new(ModFamily::Plain, n)
    }
    pub fn complex(n: u64) -> Result<Self> {
        ModRing::new(ModFamily::Complex, n)
    }
    pub fn neutro(n: u64) -> Result<Self> {
        ModRing::new(ModFamily::Neutro, n)
    }
    pub fn neutro_complex(n: u64) -> Result<Self> {
        ModRing::new(ModFamily::NeutroComplex, n)
    }

    pub fn family(&self) -> ModFamily {
        self.family
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Same family over a different modulus is a different ring; this swaps
    /// the family and keeps `n`.
    pub fn with_family(&self, family: ModFamily) -> ModRing {
        ModRing { family, modulus: self.modulus }
    }

    pub fn dimension(&self) -> u32 {
        self.family.dimension()
    }

    /// `n^k` for the family's coordinate count `k`.
    pub fn order(&self) -> u128 {
        (self.modulus as u128).pow(self.dimension())
    }

    /// Reduces integer coordinates; fails if a coordinate outside the family's
    /// shape has a nonzero residue.
    pub fn element(&self, coords: [i64; 4]) -> Result<ModElem> {
        let n = self.modulus as i128;
        let mut out = [0u64; 4];
        let slots = self.family.slots();
        for i in 0..4 {
            let r = (coords[i] as i128).rem_euclid(n) as u64;
            if r != 0 && !slots[i] {
                return Err(Error::Shape(format!(
                    "coordinate {} of {:?} is not used by {}",
                    i,
                    coords,
                    Carrier::from(*self)
                )));
            }
            out[i] = r;
        }
        Ok(ModElem::from_coords(out))
    }

    pub fn contains(&self, x: &ModElem) -> bool {
        let slots = self.family.slots();
        x.coords()
            .iter()
            .zip(slots)
            .all(|(&c, active)| c < self.modulus && (active || c == 0))
    }

    /// The element at position `index` of the enumeration order.
    pub fn element_at(&self, mut index: u128) -> ModElem {
        let n = self.modulus as u128;
        let mut c = [0u64; 4];
        for slot in self.active_slots_rev() {
            c[slot] = (index % n) as u64;
            index /= n;
        }
        ModElem::from_coords(c)
    }

    /// Position of `x` in the enumeration order.
    pub fn index_of(&self, x: &ModElem) -> u128 {
        let n = self.modulus as u128;
        let c = x.coords();
        self.family
            .active_slots()
            .fold(0u128, |acc, slot| acc * n + c[slot] as u128)
    }

    fn active_slots_rev(&self) -> impl Iterator<Item = usize> {
        let slots = self.family.slots();
        (0..4).rev().filter(move |&i| slots[i])
    }

    /// All elements in lexicographic `(re, im, neut, imneut)` order.
    pub fn elements(&self) -> impl Iterator<Item = ModElem> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    /// Coordinatewise residue of an integral exact element.
    pub fn reduce(&self, x: &ExactElem) -> Result<ModElem> {
        let coords = x.integer_coords().ok_or_else(|| Error::NotReducible(x.to_string()))?;
        let n = num_bigint::BigInt::from(self.modulus);
        let mut out = [0u64; 4];
        let slots = self.family.slots();
        for i in 0..4 {
            let r: u64 = coords[i]
                .mod_floor(&n)
                .try_into()
                .expect("residue below modulus fits u64");
            if r != 0 && !slots[i] {
                return Err(Error::Shape(format!(
                    "{x} has a coordinate not used by {}",
                    Carrier::from(*self)
                )));
            }
            out[i] = r;
        }
        Ok(ModElem::from_coords(out))
    }

    /// Scalar multiple `k·x`.
    pub fn scale(&self, k: u64, x: &ModElem) -> ModElem {
        let k = k % self.modulus;
        let c = x.coords().map(|v| self.m(k, v));
        ModElem::from_coords(c)
    }

    #[inline]
    fn m(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.modulus
    }

    #[inline]
    fn a(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    fn ng(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    /// Left-multiplication matrix of `x` restricted to the active coordinates:
    /// column `j` holds the coordinates of `x · b_j`.
    fn left_mul_matrix(&self, x: &ModElem) -> (usize, Vec<u64>) {
        let slots: Vec<usize> = self.family.active_slots().collect();
        let k = slots.len();
        let mut m = vec![0u64; k * k];
        for (j, &bj) in slots.iter().enumerate() {
            let mut basis = [0u64; 4];
            basis[bj] = 1;
            let col = self.mul(x, &ModElem::from_coords(basis)).coords();
            for (i, &bi) in slots.iter().enumerate() {
                m[i * k + j] = col[bi];
            }
        }
        (k, m)
    }
}

impl Arith for ModRing {
    type Elem = ModElem;

    fn zero(&self) -> ModElem {
        ModElem::ZERO
    }

    fn one(&self) -> ModElem {
        ModElem::ONE
    }

    fn add(&self, x: &ModElem, y: &ModElem) -> ModElem {
        ModElem::new(
            self.a(x.re, y.re),
            self.a(x.im, y.im),
            self.a(x.neut, y.neut),
            self.a(x.imneut, y.imneut),
        )
    }

    fn neg(&self, x: &ModElem) -> ModElem {
        ModElem::new(self.ng(x.re), self.ng(x.im), self.ng(x.neut), self.ng(x.imneut))
    }

    fn sub(&self, x: &ModElem, y: &ModElem) -> ModElem {
        self.add(x, &self.neg(y))
    }

    fn mul(&self, x: &ModElem, y: &ModElem) -> ModElem {
        let ModElem { re: a, im: b, neut: c, imneut: d } = *x;
        let ModElem { re: e, im: f, neut: g, imneut: h } = *y;
        // u² = n - 1 ≡ -1, so every s-weighted term is subtracted.
        let re = self.a(self.m(a, e), self.ng(self.m(b, f)));
        let im = self.a(self.m(a, f), self.m(b, e));
        let neut_plain = self.a(self.a(self.m(a, g), self.m(c, e)), self.m(c, g));
        let neut_s = self.a(self.a(self.m(b, h), self.m(d, f)), self.m(d, h));
        let neut = self.a(neut_plain, self.ng(neut_s));
        let imneut = [
            self.m(a, h),
            self.m(d, e),
            self.m(b, g),
            self.m(c, f),
            self.m(c, h),
            self.m(d, g),
        ]
        .into_iter()
        .fold(0, |acc, t| self.a(acc, t));
        ModElem::new(re, im, neut, imneut)
    }

    fn is_zero(&self, x: &ModElem) -> bool {
        x.is_zero()
    }
}

impl Ring for ModRing {
    fn carrier(&self) -> Carrier {
        Carrier::Modular(*self)
    }

    fn try_inverse(&self, x: &ModElem) -> Option<ModElem> {
        let (k, l) = self.left_mul_matrix(x);
        let zn = Zn(self.modulus);
        let det = laplace_det(&zn, k, &l);
        let det_inv = zn.inverse(det)?;
        // y = adj(L)·e₁ / det, and adj(L)[i][0] is the (0, i) cofactor.
        let mut y = [0u64; 4];
        for (i, slot) in self.family.active_slots().enumerate() {
            y[slot] = zn.mul(&cofactor(&zn, k, &l, 0, i), &det_inv);
        }
        let y = ModElem::from_coords(y);
        if self.mul(x, &y) == ModElem::ONE {
            Some(y)
        } else {
            debug_assert!(false, "adjugate inverse failed to verify for {x}");
            None
        }
    }

    fn conjugate(&self, x: &ModElem) -> ModElem {
        ModElem::new(x.re, self.ng(x.im), x.neut, self.ng(x.imneut))
    }

    fn from_int(&self, v: i64) -> ModElem {
        ModElem::real((v as i128).rem_euclid(self.modulus as i128) as u64)
    }

    fn check(&self, x: &ModElem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInCarrier {
                element: format!("{:?}", x.coords()),
                carrier: self.carrier(),
            })
        }
    }

    fn render(&self, x: &ModElem) -> String {
        notation::render_modular(x)
    }

    fn parse(&self, s: &str) -> Result<ModElem> {
        notation::parse_modular(s, self)
    }
}

/// `Z_n` scalars, used for solving the left-multiplication system.
struct Zn(u64);

impl Zn {
    fn inverse(&self, a: u64) -> Option<u64> {
        let n = self.0 as i64;
        let g = (a as i64).extended_gcd(&n);
        if g.gcd != 1 {
            return None;
        }
        Some(g.x.rem_euclid(n) as u64)
    }
}

impl Arith for Zn {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a % self.0) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carriers::basis_product;

    fn el(r: &ModRing, s: &str) -> ModElem {
        r.parse(s).unwrap()
    }

    /// Symbolic distributive expansion over the derived basis table with an
    /// explicit `s = n - 1`.
    fn table_mul(r: &ModRing, x: &ModElem, y: &ModElem) -> ModElem {
        let n = r.modulus() as u128;
        let s = n - 1;
        let (xc, yc) = (x.coords(), y.coords());
        let mut acc = [0u128; 4];
        for i in 0..4 {
            for j in 0..4 {
                let (k, scaled) = basis_product(i, j);
                let mut t = xc[i] as u128 * yc[j] as u128 % n;
                if scaled {
                    t = t * s % n;
                }
                acc[k] = (acc[k] + t) % n;
            }
        }
        ModElem::from_coords(acc.map(|v| v as u64))
    }

    #[test]
    fn closed_form_matches_basis_table() {
        for n in 2..=5 {
            let r = ModRing::neutro_complex(n).unwrap();
            let all: Vec<_> = r.elements().collect();
            for x in &all {
                for y in &all {
                    assert_eq!(r.mul(x, y), table_mul(&r, x, y), "n={n} {x} * {y}");
                }
            }
        }
    }

    #[test]
    fn worked_products() {
        let z2 = ModRing::complex(2).unwrap();
        assert_eq!(z2.mul(&el(&z2, "1+iF"), &el(&z2, "1+iF")), ModElem::ZERO);
        let z7 = ModRing::complex(7).unwrap();
        assert_eq!(z7.mul(&el(&z7, "3+4iF"), &el(&z7, "6+6iF")), ModElem::ONE);
        let z3 = ModRing::complex(3).unwrap();
        assert_eq!(z3.pow(&el(&z3, "1+iF"), 2), el(&z3, "2iF"));
        let n5 = ModRing::neutro_complex(5).unwrap();
        assert_eq!(n5.mul(&ModElem::IND, &el(&n5, "1+4I")), ModElem::ZERO);
    }

    #[test]
    fn addition_and_negation() {
        let z12 = ModRing::complex(12).unwrap();
        assert_eq!(z12.add(&el(&z12, "7+3iF"), &el(&z12, "2")), el(&z12, "9+3iF"));
        let z2 = ModRing::complex(2).unwrap();
        assert_eq!(z2.add(&el(&z2, "1+iF"), &el(&z2, "1+iF")), ModElem::ZERO);
        let n11 = ModRing::neutro_complex(11).unwrap();
        assert_eq!(n11.neg(&el(&n11, "3+4iF+6I")), el(&n11, "8+7iF+5I"));
        assert_eq!(n11.neg(&ModElem::ZERO), ModElem::ZERO);
    }

    #[test]
    fn powers() {
        let z26 = ModRing::complex(26).unwrap();
        assert_eq!(z26.pow(&el(&z26, "13+13iF"), 2), ModElem::ZERO);
        for n in 2..20 {
            let r = ModRing::complex(n).unwrap();
            assert_eq!(r.pow(&ModElem::complex(1, 1), 2), ModElem::complex(0, 2 % n));
            assert_eq!(r.pow(&ModElem::complex(n - 1, 1), 0), ModElem::ONE);
        }
        let z11 = ModRing::complex(11).unwrap();
        assert_eq!(z11.pow(&el(&z11, "5+5iF"), 2), el(&z11, "6iF"));
        assert_eq!(z11.pow(&el(&z11, "6+6iF"), 2), el(&z11, "6iF"));
    }

    #[test]
    fn conjugation() {
        let z7 = ModRing::complex(7).unwrap();
        let x = el(&z7, "3+4iF");
        let cx = z7.conjugate(&x);
        assert_eq!(cx, el(&z7, "3+3iF"));
        assert_eq!(z7.mul(&x, &cx), ModElem::real(4));
        assert_eq!(z7.conjugate(&cx), x);
        let z11 = ModRing::complex(11).unwrap();
        assert_eq!(z11.conjugate(&ModElem::real(5)), ModElem::real(5));
        let n5 = ModRing::neutro_complex(5).unwrap();
        assert_eq!(n5.conjugate(&el(&n5, "1+2iF+3I+4iFI")), el(&n5, "1+3iF+3I+iFI"));
    }

    #[test]
    fn inverses() {
        let z7 = ModRing::complex(7).unwrap();
        assert_eq!(z7.try_inverse(&el(&z7, "3+4iF")), Some(el(&z7, "6+6iF")));
        let z2 = ModRing::complex(2).unwrap();
        assert_eq!(z2.try_inverse(&el(&z2, "1+iF")), None);
        assert_eq!(z2.try_inverse(&ModElem::ONE), Some(ModElem::ONE));
        assert_eq!(z7.try_inverse(&ModElem::ZERO), None);
    }

    #[test]
    fn inverse_agrees_with_exhaustive_search() {
        for r in [
            ModRing::complex(6).unwrap(),
            ModRing::neutro(4).unwrap(),
            ModRing::neutro_complex(3).unwrap(),
            ModRing::neutro_complex(4).unwrap(),
            ModRing::plain(12).unwrap(),
        ] {
            let all: Vec<_> = r.elements().collect();
            for x in &all {
                let brute = all.iter().find(|y| r.mul(x, y) == ModElem::ONE).copied();
                assert_eq!(r.try_inverse(x), brute, "{x} in {:?}", r);
            }
        }
    }

    #[test]
    fn enumeration_order_and_index() {
        let z3 = ModRing::complex(3).unwrap();
        let names: Vec<String> = z3.elements().map(|x| x.to_string()).collect();
        assert_eq!(
            names,
            ["0", "iF", "2iF", "1", "1+iF", "1+2iF", "2", "2+iF", "2+2iF"]
        );
        let r = ModRing::neutro_complex(3).unwrap();
        for (i, x) in r.elements().enumerate() {
            assert_eq!(r.index_of(&x), i as u128);
        }
        let all: Vec<_> = r.elements().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn element_constructor_reduces_and_checks_shape() {
        let z5 = ModRing::complex(5).unwrap();
        assert_eq!(z5.element([-1, 7, 0, 0]).unwrap(), ModElem::complex(4, 2));
        assert_eq!(z5.element([3, 0, 10, 0]).unwrap(), ModElem::real(3));
        assert!(matches!(z5.element([0, 0, 1, 0]), Err(Error::Shape(_))));
        assert!(z5.check(&ModElem::new(0, 0, 1, 0)).is_err());
        assert!(z5.check(&ModElem::real(5)).is_err());
    }

    #[test]
    fn modulus_limits() {
        assert!(ModRing::plain(MAX_MODULUS).is_ok());
        assert!(ModRing::plain(MAX_MODULUS + 1).is_err());
        let big = ModRing::neutro_complex(MAX_MODULUS).unwrap();
        let x = ModElem::new(MAX_MODULUS - 1, MAX_MODULUS - 1, MAX_MODULUS - 1, MAX_MODULUS - 1);
        assert_eq!(big.mul(&x, &x), table_mul(&big, &x, &x));
        assert_eq!(big.order(), (MAX_MODULUS as u128).pow(4));
    }

    #[test]
    fn embedding_of_families() {
        assert!(ModFamily::Plain.embeds_in(ModFamily::Neutro));
        assert!(ModFamily::Complex.embeds_in(ModFamily::NeutroComplex));
        assert!(!ModFamily::Complex.embeds_in(ModFamily::Neutro));
        assert!(!ModFamily::NeutroComplex.embeds_in(ModFamily::Complex));
    }
}
