//! Commutative arithmetic contexts and determinant expansion shared by the
//! carrier, matrix and polynomial layers.

use std::fmt::Debug;
use std::marker::PhantomData;
use std::ops::Neg;

use num_traits::Num;

/// A commutative ring whose elements are plain values interpreted by `self`.
pub trait Arith {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

/// Arithmetic on a `num` scalar type (integers, rationals) with no extra context.
#[derive(Debug)]
pub struct NumArith<T>(PhantomData<T>);

impl<T> Default for NumArith<T> {
    fn default() -> Self {
        NumArith(PhantomData)
    }
}

impl<T> Arith for NumArith<T>
where
    T: Num + Clone + Neg<Output = T> + Debug,
{
    type Elem = T;

    fn zero(&self) -> T {
        T::zero()
    }
    fn one(&self) -> T {
        T::one()
    }
    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }
    fn neg(&self, a: &T) -> T {
        -a.clone()
    }
    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }
    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }
}

/// Determinant of the row-major `n`×`n` matrix by cofactor expansion along
/// the first row. Uses no division, so it is valid over rings with zero divisors.
pub fn laplace_det<A: Arith>(arith: &A, n: usize, entries: &[A::Elem]) -> A::Elem {
    debug_assert_eq!(entries.len(), n * n);
    let cols: Vec<usize> = (0..n).collect();
    expand(arith, n, entries, 0, &cols, None)
}

/// Signed cofactor `(-1)^(row+col) * det(minor(row, col))`.
pub fn cofactor<A: Arith>(arith: &A, n: usize, entries: &[A::Elem], row: usize, col: usize) -> A::Elem {
    let cols: Vec<usize> = (0..n).filter(|&c| c != col).collect();
    let start = if row == 0 { 1 } else { 0 };
    let minor = expand(arith, n, entries, start, &cols, Some(row));
    if (row + col).is_multiple_of(2) {
        minor
    } else {
        arith.neg(&minor)
    }
}

fn expand<A: Arith>(
    arith: &A,
    n: usize,
    m: &[A::Elem],
    row: usize,
    cols: &[usize],
    skip_row: Option<usize>,
) -> A::Elem {
    if cols.is_empty() {
        return arith.one();
    }
    let next = {
        let mut r = row + 1;
        if Some(r) == skip_row {
            r += 1;
        }
        r
    };
    let mut acc = arith.zero();
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row * n + c];
        if arith.is_zero(entry) {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = arith.mul(entry, &expand(arith, n, m, next, &rest, skip_row));
        acc = if k % 2 == 0 {
            arith.add(&acc, &term)
        } else {
            arith.sub(&acc, &term)
        };
    }
    acc
}
