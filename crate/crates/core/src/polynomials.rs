//! Dense univariate polynomials over a carrier.
//!
//! String form: ascending terms joined by ` + `, e.g. `(2+iF) + (1+2iF)*x + x^2`.
//! Coefficients with more than one term are parenthesized, zero terms are
//! omitted, and a coefficient of 1 is elided before `x`.

use std::fmt;

use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::Arith;
use crate::carriers::{Carrier, ExactElem, ExactRing, ModElem, ModRing, Ring};
use crate::error::{Error, Result};
use crate::scan::{require_field, ScanConfig};

/// Normalized coefficients, index = degree; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub carrier: Carrier,
    pub coeffs: Vec<String>,
}

impl<R: Ring> Poly<R> {
    pub fn new(ring: R, coeffs: Vec<R::Elem>) -> Result<Self> {
        for c in &coeffs {
            ring.check(c)?;
        }
        Ok(Poly::normalized(ring, coeffs))
    }

    fn normalized(ring: R, mut coeffs: Vec<R::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Poly { ring, coeffs }
    }

    pub fn zero(ring: R) -> Self {
        Poly { ring, coeffs: Vec::new() }
    }

    pub fn one(ring: R) -> Self {
        let one = ring.one();
        Poly::normalized(ring, vec![one])
    }

    pub fn constant(ring: R, c: R::Elem) -> Result<Self> {
        Poly::new(ring, vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(ring: R, c: R::Elem, k: usize) -> Result<Self> {
        let mut coeffs = vec![ring.zero(); k];
        coeffs.push(c);
        Poly::new(ring, coeffs)
    }

    /// The monic linear polynomial `x - r`.
    pub fn linear_root(ring: R, r: &R::Elem) -> Result<Self> {
        let one = ring.one();
        let neg = ring.neg(r);
        Poly::new(ring, vec![neg, one])
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> R::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn leading(&self) -> Option<&R::Elem> {
        self.coeffs.last()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        self.ring.ensure_same(&other.ring)
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.ring.add(&self.coeff(k), &other.coeff(k))).collect();
        Poly::normalized(self.ring.clone(), coeffs)
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.ring.clone());
        }
        let r = &self.ring;
        let mut coeffs = vec![r.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if r.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = r.add(&coeffs[i + j], &r.mul(a, b));
            }
        }
        Poly::normalized(r.clone(), coeffs)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        Poly::normalized(self.ring.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(c, a)).collect();
        Poly::normalized(self.ring.clone(), coeffs)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &R::Elem) -> Result<R::Elem> {
        self.ring.check(x)?;
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: &R::Elem) -> R::Elem {
        let r = &self.ring;
        self.coeffs
            .iter()
            .rev()
            .fold(r.zero(), |acc, c| r.add(&r.mul(&acc, x), c))
    }

    /// `(q, r)` with `self = d·q + r` and `deg r < deg d`.
    pub fn divmod(&self, d: &Self) -> Result<(Self, Self)> {
        self.same_ring(d)?;
        let r = &self.ring;
        let lead = d.leading().ok_or(Error::DivisionByZero)?;
        let inv = r.try_inverse(lead).ok_or_else(|| Error::NotDivisible(r.render(lead)))?;
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(r.clone()), self.clone()));
        }
        let mut quot = vec![r.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = r.mul(&rem[k + dd], &inv);
            if r.is_zero(&c) {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[k + j] = r.sub(&rem[k + j], &r.mul(&c, dj));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::normalized(r.clone(), quot), Poly::normalized(r.clone(), rem)))
    }

    /// Scaled to leading coefficient 1; `None` when the leading coefficient is not a unit.
    pub fn monic(&self) -> Option<Self> {
        match self.leading() {
            None => Some(self.clone()),
            Some(l) => self.ring.try_inverse(l).map(|inv| self.scale(&inv)),
        }
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            carrier: self.ring.carrier(),
            coeffs: self.coeffs.iter().map(|c| self.ring.render(c)).collect(),
        }
    }

    pub fn from_json(ring: R, json: &PolyJson) -> Result<Self> {
        if json.carrier != ring.carrier() {
            return Err(Error::MixedCarrier {
                left: ring.carrier(),
                right: json.carrier,
            });
        }
        let coeffs = json.coeffs.iter().map(|s| ring.parse(s)).collect::<Result<_>>()?;
        Poly::new(ring, coeffs)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let r = &self.ring;
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if r.is_zero(c) {
                continue;
            }
            let s = r.render(c);
            let composite = s[1..].contains(['+', '-']);
            let coef = if composite { format!("({s})") } else { s };
            terms.push(match k {
                0 => coef,
                _ => {
                    let var = if k == 1 { "x".to_string() } else { format!("x^{k}") };
                    if *c == r.one() {
                        var
                    } else {
                        format!("{coef}*{var}")
                    }
                }
            });
        }
        terms.join(" + ")
    }

    /// Parses the string form; terms may come in any order but each degree once.
    pub fn parse(ring: R, s: &str) -> Result<Self> {
        let mut coeffs: Vec<Option<R::Elem>> = Vec::new();
        for (start, term) in split_terms(s)? {
            let (k, c) = parse_term(&ring, term, start)?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, None);
            }
            if coeffs[k].is_some() {
                return Err(Error::parse(start, format!("degree {k} appears twice")));
            }
            coeffs[k] = Some(c);
        }
        let coeffs = coeffs.into_iter().map(|c| c.unwrap_or_else(|| ring.zero())).collect();
        Poly::new(ring, coeffs)
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Top-level `+`-separated terms with their byte offsets, trimmed.
fn split_terms(s: &str) -> Result<Vec<(usize, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::parse(i, "unbalanced `)`"));
                }
            }
            '+' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::parse(s.len(), "unclosed `(`"));
    }
    out.push((start, &s[start..]));
    out.into_iter()
        .map(|(at, t)| {
            let lead = t.len() - t.trim_start().len();
            let t = t.trim();
            if t.is_empty() {
                Err(Error::parse(at + lead, "empty term"))
            } else {
                Ok((at + lead, t))
            }
        })
        .collect()
}

fn parse_term<R: Ring>(ring: &R, term: &str, start: usize) -> Result<(usize, R::Elem)> {
    let (coef, var) = match term.rfind('x') {
        Some(i) if !term[..i].ends_with(')') && i > 0 && !term[..i].ends_with('*') => {
            return Err(Error::parse(start + i, "expected `*` before `x`"));
        }
        Some(i) => (term[..i].strip_suffix('*').unwrap_or(&term[..i]), &term[i..]),
        None => (term, ""),
    };
    let degree = match var {
        "" => 0,
        "x" => 1,
        _ => {
            let at = start + term.len() - var.len();
            let pow = var
                .strip_prefix("x^")
                .ok_or_else(|| Error::parse(at + 1, "expected `^` after `x`"))?;
            pow.parse::<usize>()
                .map_err(|_| Error::parse(at + 2, format!("bad exponent `{pow}`")))?
        }
    };
    let inner = match coef.strip_prefix('(') {
        Some(rest) => rest
            .strip_suffix(')')
            .ok_or_else(|| Error::parse(start + coef.len(), "expected `)`"))?,
        None => coef,
    };
    let offset = start + usize::from(coef.starts_with('('));
    let c = if inner.is_empty() {
        if degree == 0 {
            return Err(Error::parse(start, "empty coefficient"));
        }
        ring.one()
    } else {
        ring.parse(inner).map_err(|e| match e {
            Error::Parse { position, message } => Error::parse(offset + position, message),
            other => other,
        })?
    };
    Ok((degree, c))
}

/// Polynomial arithmetic as an [`Arith`] context, for determinants with
/// polynomial entries. All operands must share `ring`.
#[derive(Debug, Clone)]
pub(crate) struct PolyArith<R: Ring> {
    pub ring: R,
}

impl<R: Ring> Arith for PolyArith<R> {
    type Elem = Poly<R>;

    fn zero(&self) -> Poly<R> {
        Poly::zero(self.ring.clone())
    }
    fn one(&self) -> Poly<R> {
        Poly::one(self.ring.clone())
    }
    fn add(&self, a: &Poly<R>, b: &Poly<R>) -> Poly<R> {
        a.add_unchecked(b)
    }
    fn neg(&self, a: &Poly<R>) -> Poly<R> {
        a.neg()
    }
    fn mul(&self, a: &Poly<R>, b: &Poly<R>) -> Poly<R> {
        a.mul_unchecked(b)
    }
    fn is_zero(&self, a: &Poly<R>) -> bool {
        a.is_zero()
    }
}

/// Outcome of an irreducibility test; `factor` multiplies to the input when reducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Irreducibility {
    pub irreducible: bool,
    pub factor: Option<(Poly<ModRing>, Poly<ModRing>)>,
}

impl Poly<ModRing> {
    pub fn random(ring: ModRing, degree: usize, rng: &mut impl Rng) -> Self {
        let order = ring.order();
        let coeffs = (0..=degree).map(|_| ring.element_at(rng.gen_range(0..order))).collect();
        Poly::normalized(ring, coeffs)
    }

    /// Every root, by exhaustive evaluation in enumeration order.
    pub fn roots(&self, cfg: &ScanConfig) -> Result<Vec<ModElem>> {
        let order = self.ring.order();
        if order > cfg.max_elements {
            return Err(Error::Budget {
                what: "root search",
                needed: order,
                limit: cfg.max_elements,
            });
        }
        Ok(cfg.install(|| {
            (0..order as u64)
                .into_par_iter()
                .map(|t| self.ring.element_at(t as u128))
                .filter(|x| self.eval_unchecked(x).is_zero())
                .collect()
        }))
    }

    /// Irreducibility over a field carrier for degrees 1 to 4.
    pub fn is_irreducible(&self, cfg: &ScanConfig) -> Result<Irreducibility> {
        require_field(&self.ring, "irreducibility")?;
        let degree = self.degree().unwrap_or(0);
        if !(1..=4).contains(&degree) {
            return Err(Error::Domain(format!("irreducibility is decided for degrees 1 to 4, not {degree}")));
        }
        let split = |f: Poly<ModRing>| -> Result<Irreducibility> {
            let (q, r) = self.divmod(&f)?;
            debug_assert!(r.is_zero());
            Ok(Irreducibility {
                irreducible: false,
                factor: Some((f, q)),
            })
        };
        if degree == 1 {
            return Ok(Irreducibility { irreducible: true, factor: None });
        }
        if let Some(root) = self.roots(cfg)?.first() {
            return split(Poly::linear_root(self.ring, root)?);
        }
        if degree == 4 {
            let order = self.ring.order();
            if order * order > cfg.max_products {
                return Err(Error::Budget {
                    what: "quadratic factor search",
                    needed: order * order,
                    limit: cfg.max_products,
                });
            }
            let one = ModElem::ONE;
            for t in 0..order * order {
                let (b, c) = (self.ring.element_at(t / order), self.ring.element_at(t % order));
                let f = Poly::normalized(self.ring, vec![c, b, one]);
                if self.divmod(&f)?.1.is_zero() {
                    return split(f);
                }
            }
        }
        Ok(Irreducibility { irreducible: true, factor: None })
    }

    /// Monic greatest common divisor over a field carrier.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        require_field(&self.ring, "polynomial gcd")?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::Domain("gcd of two zero polynomials".into()));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divmod(&b)?.1;
            a = b;
            b = r;
        }
        Ok(a.monic().expect("field leading coefficient is a unit"))
    }
}

impl Poly<ExactRing> {
    /// Roots with integer coordinates in `[-bound, bound]`.
    ///
    /// Uses `Q[i, I] ≅ Q(i) × Q(i)` via `x ↦ (a + bi, (a + c) + (b + d)i)`:
    /// each projection is searched over Gaussian integers, the pairs are
    /// lifted back, and every lift is checked by evaluation.
    pub fn roots_within(&self, bound: u64) -> Result<Vec<ExactElem>> {
        if self.is_zero() {
            return Err(Error::Domain("every element is a root of the zero polynomial".into()));
        }
        let b = i64::try_from(bound).map_err(|_| Error::Range(format!("bound {bound} is too large")))?;
        let project = |keep_indeterminate: bool| {
            let coeffs = self
                .coeffs
                .iter()
                .map(|c| {
                    let [a, bb, cc, d] = c.coords();
                    if keep_indeterminate {
                        ExactElem::new(a + cc, bb + d, BigRational::default(), BigRational::default())
                    } else {
                        ExactElem::new(a.clone(), bb.clone(), BigRational::default(), BigRational::default())
                    }
                })
                .collect();
            Poly::normalized(ExactRing, coeffs)
        };
        let gaussian_roots = |p: &Poly<ExactRing>, lim: i64| -> Vec<(i64, i64)> {
            if p.is_zero() {
                return (-lim..=lim).flat_map(|u| (-lim..=lim).map(move |v| (u, v))).collect();
            }
            (-lim..=lim)
                .into_par_iter()
                .flat_map_iter(|u| {
                    (-lim..=lim)
                        .filter(move |&v| p.eval_unchecked(&ExactElem::from_ints(u, v, 0, 0)).is_zero())
                        .map(move |v| (u, v))
                })
                .collect()
        };
        let first = gaussian_roots(&project(false), b);
        let second = gaussian_roots(&project(true), 2 * b);
        let mut out = Vec::new();
        for &(a, bb) in &first {
            for &(s, t) in &second {
                let (c, d) = (s - a, t - bb);
                if c.abs() > b || d.abs() > b {
                    continue;
                }
                let x = ExactElem::from_ints(a, bb, c, d);
                if self.eval_unchecked(&x).is_zero() {
                    out.push(x);
                }
            }
        }
        out.sort();
        Ok(out)
    }
}
