use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{notation, Carrier, Ring};
use crate::arith::{cofactor, laplace_det, Arith, NumArith};
use crate::error::{Error, Result};

/// An element `re + im·i + neut·I + imneut·iI` with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExactElem {
    coords: [BigRational; 4],
}

impl ExactElem {
    pub fn new(re: BigRational, im: BigRational, neut: BigRational, imneut: BigRational) -> Self {
        ExactElem { coords: [re, im, neut, imneut] }
    }

    pub fn from_coords(coords: [BigRational; 4]) -> Self {
        ExactElem { coords }
    }

    pub fn from_ints(re: i64, im: i64, neut: i64, imneut: i64) -> Self {
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        ExactElem::new(q(re), q(im), q(neut), q(imneut))
    }

    pub fn coords(&self) -> &[BigRational; 4] {
        &self.coords
    }

    pub fn re(&self) -> &BigRational {
        &self.coords[0]
    }
    pub fn im(&self) -> &BigRational {
        &self.coords[1]
    }
    pub fn neut(&self) -> &BigRational {
        &self.coords[2]
    }
    pub fn imneut(&self) -> &BigRational {
        &self.coords[3]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The coordinates as integers, if every denominator is 1.
    pub fn integer_coords(&self) -> Option<[BigInt; 4]> {
        if self.coords.iter().all(|c| c.is_integer()) {
            Some(self.coords.clone().map(|c| c.to_integer()))
        } else {
            None
        }
    }
}

impl fmt::Display for ExactElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&notation::render_exact(self))
    }
}

/// The infinite carrier with rational coordinates, `i² = -1` and `I² = I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ExactRing;

impl Arith for ExactRing {
    type Elem = ExactElem;

    fn zero(&self) -> ExactElem {
        ExactElem::default()
    }

    fn one(&self) -> ExactElem {
        ExactElem::from_ints(1, 0, 0, 0)
    }

    fn add(&self, x: &ExactElem, y: &ExactElem) -> ExactElem {
        let mut c = x.coords.clone();
        for (ci, yi) in c.iter_mut().zip(&y.coords) {
            *ci += yi;
        }
        ExactElem::from_coords(c)
    }

    fn neg(&self, x: &ExactElem) -> ExactElem {
        ExactElem::from_coords(x.coords.clone().map(|c| -c))
    }

    fn mul(&self, x: &ExactElem, y: &ExactElem) -> ExactElem {
        let [a, b, c, d] = &x.coords;
        let [e, f, g, h] = &y.coords;
        let re = a * e - b * f;
        let im = a * f + b * e;
        let neut = a * g + c * e + c * g - (b * h + d * f + d * h);
        let imneut = a * h + d * e + b * g + c * f + c * h + d * g;
        ExactElem::new(re, im, neut, imneut)
    }

    fn is_zero(&self, x: &ExactElem) -> bool {
        x.is_zero()
    }
}

impl Ring for ExactRing {
    fn carrier(&self) -> Carrier {
        Carrier::Exact
    }

    fn try_inverse(&self, x: &ExactElem) -> Option<ExactElem> {
        let q = NumArith::<BigRational>::default();
        let mut l = vec![BigRational::zero(); 16];
        for j in 0..4 {
            let mut basis = ExactElem::default();
            basis.coords[j] = BigRational::one();
            let col = self.mul(x, &basis);
            for i in 0..4 {
                l[i * 4 + j] = col.coords[i].clone();
            }
        }
        let det = laplace_det(&q, 4, &l);
        if det.is_zero() {
            return None;
        }
        let y = ExactElem::from_coords(std::array::from_fn(|i| cofactor(&q, 4, &l, 0, i) / &det));
        if self.mul(x, &y) == self.one() {
            Some(y)
        } else {
            debug_assert!(false, "rational inverse failed to verify for {x}");
            None
        }
    }

    fn conjugate(&self, x: &ExactElem) -> ExactElem {
        let [a, b, c, d] = x.coords.clone();
        ExactElem::new(a, -b, c, -d)
    }

    fn from_int(&self, v: i64) -> ExactElem {
        ExactElem::from_ints(v, 0, 0, 0)
    }

    fn check(&self, _x: &ExactElem) -> Result<()> {
        Ok(())
    }

    fn render(&self, x: &ExactElem) -> String {
        notation::render_exact(x)
    }

    fn parse(&self, s: &str) -> Result<ExactElem> {
        notation::parse_exact(s)
    }
}

/// Gcd of all eight integer coordinates of `x` and `y`; 0 when both are zero.
pub fn content_gcd(x: &ExactElem, y: &ExactElem) -> Result<BigInt> {
    let xs = x.integer_coords().ok_or_else(|| Error::NotReducible(x.to_string()))?;
    let ys = y.integer_coords().ok_or_else(|| Error::NotReducible(y.to_string()))?;
    Ok(xs
        .iter()
        .chain(ys.iter())
        .fold(BigInt::zero(), |g, c| g.gcd(c))
        .abs())
}
