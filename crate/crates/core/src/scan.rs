//! Exhaustive structural analysis of finite carriers.
//!
//! Every list is produced in enumeration order (lexicographic over
//! `(re, im, neut, imneut)`), including when the work is spread over a
//! thread pool, so reports are reproducible byte for byte.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Arith;
use crate::carriers::{Carrier, ModElem, ModFamily, ModRing, Ring};
use crate::error::{Error, Result};

/// Explicit limits for exhaustive scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    /// Largest carrier that may be enumerated.
    pub max_elements: u128,
    /// Largest number of products a pair scan may evaluate.
    pub max_products: u128,
    /// Worker threads; never changes results.
    pub jobs: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            max_elements: 1_000_000,
            max_products: 100_000_000,
            jobs: 1,
        }
    }
}

impl ScanConfig {
    pub fn with_jobs(jobs: usize) -> Self {
        ScanConfig { jobs, ..Default::default() }
    }

    fn elements(&self, ring: &ModRing) -> Result<Vec<ModElem>> {
        let order = ring.order();
        if order > self.max_elements {
            return Err(Error::Budget {
                what: "carrier enumeration",
                needed: order,
                limit: self.max_elements,
            });
        }
        Ok(ring.elements().collect())
    }

    fn products(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.max_products {
            Err(Error::Budget {
                what,
                needed,
                limit: self.max_products,
            })
        } else {
            Ok(())
        }
    }

    /// Runs `f` on a pool with `jobs` workers.
    pub(crate) fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        if self.jobs <= 1 {
            return f();
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .expect("thread pool")
            .install(f)
    }
}

/// All elements of a finite carrier in enumeration order.
pub fn enumerate(carrier: &Carrier) -> Result<Vec<ModElem>> {
    let ring = carrier.finite()?;
    ScanConfig::default().elements(&ring)
}

/// Every ordered pair `(x, y)` of nonzero elements with `x·y = 0`.
pub fn find_zero_divisors(ring: &ModRing, cfg: &ScanConfig) -> Result<Vec<(ModElem, ModElem)>> {
    let all = cfg.elements(ring)?;
    cfg.products("zero-divisor scan", ring.order() * ring.order())?;
    let nonzero = &all[1..];
    Ok(cfg.install(|| {
        nonzero
            .par_iter()
            .flat_map_iter(|x| {
                nonzero
                    .iter()
                    .filter(move |y| ring.mul(x, y).is_zero())
                    .map(move |y| (*x, *y))
            })
            .collect()
    }))
}

pub fn find_units(ring: &ModRing, cfg: &ScanConfig) -> Result<Vec<ModElem>> {
    let all = cfg.elements(ring)?;
    Ok(cfg.install(|| all.into_par_iter().filter(|x| ring.is_unit(x)).collect()))
}

pub fn find_idempotents(ring: &ModRing, cfg: &ScanConfig) -> Result<Vec<ModElem>> {
    let all = cfg.elements(ring)?;
    Ok(all.into_iter().filter(|x| ring.mul(x, x) == *x).collect())
}

/// Upper bound on the nilpotency index in a rank-`k` algebra over `Z_n`:
/// over `Z_{p^e}` an index never exceeds `k·e`, and `e ≤ log2 n`.
fn nilpotency_bound(ring: &ModRing) -> u64 {
    let log2 = 63 - ring.modulus().leading_zeros() as u64;
    ring.dimension() as u64 * log2.max(1)
}

/// Least `k ≥ 1` with `x^k = 0`.
pub fn nilpotency_index(ring: &ModRing, x: &ModElem) -> Option<u32> {
    if ring.pow(x, nilpotency_bound(ring)) != ModElem::ZERO {
        return None;
    }
    let mut p = *x;
    let mut k = 1;
    while !p.is_zero() {
        p = ring.mul(&p, x);
        k += 1;
    }
    Some(k)
}

/// Nonzero nilpotent elements with their indices.
pub fn find_nilpotents(ring: &ModRing, cfg: &ScanConfig) -> Result<Vec<(ModElem, u32)>> {
    let all = cfg.elements(ring)?;
    Ok(cfg.install(|| {
        all[1..]
            .par_iter()
            .filter_map(|x| nilpotency_index(ring, x).map(|k| (*x, k)))
            .collect()
    }))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Least `(a, b)` in `[1, p)²` with `a² + b² ≡ 0 (mod p)`.
///
/// Any solution scales to one with `a = 1`, so the least pair is `(1, b)` with
/// `b` the smaller square root of `-1`.
pub fn sum_two_squares_witness(p: u64) -> Result<Option<(u64, u64)>> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if p == 2 {
        return Ok(Some((1, 1)));
    }
    if pow_mod(p - 1, (p - 1) / 2, p) != 1 {
        return Ok(None);
    }
    let nonresidue = (2..p).find(|&c| pow_mod(c, (p - 1) / 2, p) == p - 1).expect("p is an odd prime");
    let root = pow_mod(nonresidue, (p - 1) / 4, p);
    Ok(Some((1, root.min(p - root))))
}

/// Whether elimination-based algorithms may run over `ring`.
pub fn is_field_carrier(ring: &ModRing) -> bool {
    let n = ring.modulus();
    match ring.family() {
        ModFamily::Plain => is_prime(n),
        ModFamily::Complex => is_prime(n) && matches!(sum_two_squares_witness(n), Ok(None)),
        ModFamily::Neutro | ModFamily::NeutroComplex => false,
    }
}

pub(crate) fn require_field(ring: &ModRing, what: &str) -> Result<()> {
    if is_field_carrier(ring) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{what} needs a field carrier, {} is not one", ring.carrier())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldMethod {
    /// `Z_p` for prime `p`.
    PrimeModulus,
    /// `C(Z_p)`: a field iff no `a² + b² ≡ 0` with `a, b ≠ 0`.
    TwoSquares,
    /// `I·(1 - I) = 0` rules out every neutrosophic carrier.
    Indeterminate,
    /// Exhaustive search for a zero divisor.
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldVerdict {
    pub is_field: bool,
    pub method: FieldMethod,
    /// A zero-divisor pair when `is_field` is false.
    pub witness: Option<(ModElem, ModElem)>,
}

/// Decides whether a finite carrier is a field, by criterion where one applies.
pub fn is_field(ring: &ModRing, cfg: &ScanConfig) -> Result<FieldVerdict> {
    let n = ring.modulus();
    match ring.family() {
        ModFamily::Neutro | ModFamily::NeutroComplex => Ok(FieldVerdict {
            is_field: false,
            method: FieldMethod::Indeterminate,
            witness: Some((ModElem::IND, ModElem::new(1, 0, n - 1, 0))),
        }),
        ModFamily::Plain if is_prime(n) => Ok(FieldVerdict {
            is_field: true,
            method: FieldMethod::PrimeModulus,
            witness: None,
        }),
        ModFamily::Complex if is_prime(n) => {
            let witness = sum_two_squares_witness(n)?
                .map(|(a, b)| (ModElem::complex(a, b), ModElem::complex(b, a)));
            Ok(FieldVerdict {
                is_field: witness.is_none(),
                method: FieldMethod::TwoSquares,
                witness,
            })
        }
        _ => is_field_brute_force(ring, cfg),
    }
}

/// Field test by exhaustive zero-divisor search. A finite commutative ring
/// without zero divisors is a field. The witness is the least ordered pair.
pub fn is_field_brute_force(ring: &ModRing, cfg: &ScanConfig) -> Result<FieldVerdict> {
    let all = cfg.elements(ring)?;
    cfg.products("field brute force", ring.order() * ring.order() / 2)?;
    let nonzero = &all[1..];
    let witness = cfg.install(|| {
        (0..nonzero.len()).into_par_iter().find_map_first(|i| {
            let x = &nonzero[i];
            // Commutativity: a smaller partner would have made it the smaller zero divisor.
            nonzero[i..]
                .iter()
                .find(|y| ring.mul(x, y).is_zero())
                .map(|y| (*x, *y))
        })
    });
    Ok(FieldVerdict {
        is_field: witness.is_none(),
        method: FieldMethod::BruteForce,
        witness,
    })
}

/// Least `k ≥ 1` with `k·x = 0`.
pub fn additive_order(ring: &ModRing, x: &ModElem) -> u64 {
    let n = ring.modulus();
    let g = x
        .coords()
        .into_iter()
        .fold(n, num_integer::gcd);
    n / g
}

/// Least `k ≥ 1` with `x^k = 1`, or `None` when `x` is not a unit.
pub fn multiplicative_order(ring: &ModRing, x: &ModElem) -> Option<u64> {
    ring.try_inverse(x)?;
    let mut p = *x;
    let mut k = 1;
    while p != ModElem::ONE {
        p = ring.mul(&p, x);
        k += 1;
    }
    Some(k)
}

/// Sylow subgroup orders of the additive group `(Z_n)^k`, one per prime of `n`.
pub fn additive_sylow_orders(ring: &ModRing) -> Vec<(u64, u128)> {
    let mut n = ring.modulus();
    let k = ring.dimension();
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        if p * p > n {
            out.push((n, (n as u128).pow(k)));
            break;
        }
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, (p as u128).pow(e * k)));
        }
        p += 1;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl Side {
    fn left(self) -> bool {
        matches!(self, Side::Left | Side::TwoSided)
    }
    fn right(self) -> bool {
        matches!(self, Side::Right | Side::TwoSided)
    }
}

/// Why a subset failed a closure test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsetViolation {
    MissingZero,
    Sum { a: ModElem, b: ModElem, sum: ModElem },
    Negation { a: ModElem, neg: ModElem },
    Product { a: ModElem, b: ModElem, product: ModElem },
    /// `ring_elem·member` (left) or `member·ring_elem` (right) left the subset.
    Absorption {
        side: Side,
        ring_elem: ModElem,
        member: ModElem,
        product: ModElem,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetVerdict {
    pub holds: bool,
    pub violation: Option<SubsetViolation>,
}

impl SubsetVerdict {
    fn from(violation: Option<SubsetViolation>) -> Self {
        SubsetVerdict {
            holds: violation.is_none(),
            violation,
        }
    }
}

fn member_set(ring: &ModRing, subset: &[ModElem]) -> Result<(Vec<ModElem>, HashSet<ModElem>)> {
    for x in subset {
        ring.check(x)?;
    }
    let sorted: BTreeSet<ModElem> = subset.iter().copied().collect();
    Ok((sorted.iter().copied().collect(), sorted.into_iter().collect()))
}

fn additive_violation(ring: &ModRing, members: &[ModElem], set: &HashSet<ModElem>) -> Option<SubsetViolation> {
    if !set.contains(&ModElem::ZERO) {
        return Some(SubsetViolation::MissingZero);
    }
    for a in members {
        for b in members {
            let sum = ring.add(a, b);
            if !set.contains(&sum) {
                return Some(SubsetViolation::Sum { a: *a, b: *b, sum });
            }
        }
    }
    members.iter().find_map(|a| {
        let neg = ring.neg(a);
        (!set.contains(&neg)).then_some(SubsetViolation::Negation { a: *a, neg })
    })
}

/// Additive subgroup closed under multiplication (no unit required).
pub fn check_subring(ring: &ModRing, subset: &[ModElem]) -> Result<SubsetVerdict> {
    let (members, set) = member_set(ring, subset)?;
    let violation = additive_violation(ring, &members, &set).or_else(|| {
        members.iter().find_map(|a| {
            members.iter().find_map(|b| {
                let product = ring.mul(a, b);
                (!set.contains(&product)).then_some(SubsetViolation::Product { a: *a, b: *b, product })
            })
        })
    });
    Ok(SubsetVerdict::from(violation))
}

/// Additive subgroup absorbing multiplication by every ring element on `side`.
pub fn check_ideal(ring: &ModRing, subset: &[ModElem], side: Side, cfg: &ScanConfig) -> Result<SubsetVerdict> {
    let (members, set) = member_set(ring, subset)?;
    let all = cfg.elements(ring)?;
    cfg.products("ideal absorption", ring.order() * members.len() as u128 * 2)?;
    let violation = additive_violation(ring, &members, &set).or_else(|| {
        all.iter().find_map(|r| {
            members.iter().find_map(|s| {
                let checks = [(Side::Left, side.left(), ring.mul(r, s)), (Side::Right, side.right(), ring.mul(s, r))];
                checks.into_iter().find_map(|(which, wanted, product)| {
                    (wanted && !set.contains(&product)).then_some(SubsetViolation::Absorption {
                        side: which,
                        ring_elem: *r,
                        member: *s,
                        product,
                    })
                })
            })
        })
    });
    Ok(SubsetVerdict::from(violation))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmarandacheVerdict {
    pub holds: bool,
    /// Identity of the witness group.
    pub identity: ModElem,
    /// A proper subset that is a group under multiplication.
    pub group: Vec<ModElem>,
}

/// Searches the multiplicative semigroup for a proper subset that is a group.
///
/// Candidates are the unit group and, for each idempotent `e ∉ {0, 1}`, the
/// units of `eR` with identity `e`. The largest proper candidate wins; ties
/// keep the earlier candidate, and the singleton `{1}` is the fallback.
pub fn is_smarandache_semigroup(ring: &ModRing, cfg: &ScanConfig) -> Result<SmarandacheVerdict> {
    let all = cfg.elements(ring)?;
    let order = all.len();
    let mut best = (ModElem::ONE, find_units(ring, cfg)?);
    for e in find_idempotents(ring, cfg)? {
        if e.is_zero() || e == ModElem::ONE {
            continue;
        }
        let ideal: Vec<ModElem> = all
            .iter()
            .map(|r| ring.mul(&e, r))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        cfg.products("localized unit search", (ideal.len() as u128).pow(2))?;
        let group: Vec<ModElem> = ideal
            .iter()
            .copied()
            .filter(|x| ideal.iter().any(|y| ring.mul(x, y) == e))
            .collect();
        if group.len() > best.1.len() && group.len() < order {
            best = (e, group);
        }
    }
    let (identity, group) = best;
    Ok(SmarandacheVerdict {
        holds: !group.is_empty() && group.len() < order,
        identity,
        group,
    })
}

/// Subfields generated by an idempotent identity `e` and one further element,
/// with at most `size_cap` elements. Sorted by size, then elementwise.
pub fn find_subfields(ring: &ModRing, size_cap: usize, cfg: &ScanConfig) -> Result<Vec<Vec<ModElem>>> {
    let all = cfg.elements(ring)?;
    if size_cap < 2 {
        return Ok(Vec::new());
    }
    cfg.products("subfield search", ring.order() * ring.order())?;
    let mut found: BTreeSet<(usize, Vec<ModElem>)> = BTreeSet::new();
    for e in find_idempotents(ring, cfg)? {
        if e.is_zero() {
            continue;
        }
        let generators: BTreeSet<ModElem> = all.iter().map(|x| ring.mul(&e, x)).collect();
        for g in generators {
            let Some(sub) = generated_subring(ring, &[e, g], size_cap) else {
                continue;
            };
            if is_field_with_identity(ring, &sub, &e) {
                found.insert((sub.len(), sub));
            }
        }
    }
    Ok(found.into_iter().map(|(_, s)| s).collect())
}

/// Closure of `gens ∪ {0}` under `+` and `·`, or `None` once it outgrows `cap`.
fn generated_subring(ring: &ModRing, gens: &[ModElem], cap: usize) -> Option<Vec<ModElem>> {
    let mut set: BTreeSet<ModElem> = gens.iter().copied().collect();
    set.insert(ModElem::ZERO);
    loop {
        if set.len() > cap {
            return None;
        }
        let current: Vec<ModElem> = set.iter().copied().collect();
        let before = set.len();
        for a in &current {
            for b in &current {
                set.insert(ring.add(a, b));
                set.insert(ring.mul(a, b));
            }
            if set.len() > cap {
                return None;
            }
        }
        if set.len() == before {
            return Some(current);
        }
    }
}

fn is_field_with_identity(ring: &ModRing, sub: &[ModElem], e: &ModElem) -> bool {
    sub.len() >= 2
        && sub.iter().all(|x| ring.mul(x, e) == *x)
        && sub
            .iter()
            .filter(|x| !x.is_zero())
            .all(|x| sub.iter().any(|y| ring.mul(x, y) == *e))
}

/// A named example backing a verdict in a [`ScanReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub name: &'static str,
    pub elements: Vec<ModElem>,
}

/// Aggregate structural facts about a finite carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub carrier: Carrier,
    pub order: u128,
    pub zero_divisor_pairs: Vec<(ModElem, ModElem)>,
    pub units: Vec<ModElem>,
    pub idempotents: Vec<ModElem>,
    pub nilpotents: Vec<(ModElem, u32)>,
    pub is_field: bool,
    pub is_integral_domain: bool,
    pub field_method: FieldMethod,
    pub witnesses: Vec<Witness>,
}

pub fn scan(ring: &ModRing, cfg: &ScanConfig) -> Result<ScanReport> {
    let zero_divisor_pairs = find_zero_divisors(ring, cfg)?;
    let units = find_units(ring, cfg)?;
    let idempotents = find_idempotents(ring, cfg)?;
    let nilpotents = find_nilpotents(ring, cfg)?;
    let verdict = is_field(ring, cfg)?;
    let mut witnesses = Vec::new();
    if let Some((x, y)) = verdict.witness {
        witnesses.push(Witness { name: "zero-divisor", elements: vec![x, y] });
    } else if let Some((x, y)) = zero_divisor_pairs.first() {
        witnesses.push(Witness { name: "zero-divisor", elements: vec![*x, *y] });
    }
    if let Some((x, _)) = nilpotents.first() {
        witnesses.push(Witness { name: "nilpotent", elements: vec![*x] });
    }
    if let Some(e) = idempotents.iter().find(|e| !e.is_zero() && **e != ModElem::ONE) {
        witnesses.push(Witness { name: "nontrivial-idempotent", elements: vec![*e] });
    }
    let is_integral_domain = zero_divisor_pairs.is_empty();
    debug_assert_eq!(verdict.is_field, is_integral_domain);
    Ok(ScanReport {
        carrier: ring.carrier(),
        order: ring.order(),
        zero_divisor_pairs,
        units,
        idempotents,
        nilpotents,
        is_field: verdict.is_field,
        is_integral_domain,
        field_method: verdict.method,
        witnesses,
    })
}

#[derive(Serialize)]
struct NilpotentJson {
    element: String,
    index: u32,
}

#[derive(Serialize)]
struct ScanReportJson {
    carrier: Carrier,
    order: u128,
    is_field: bool,
    is_integral_domain: bool,
    zero_divisors: Vec<[String; 2]>,
    units: Vec<String>,
    idempotents: Vec<String>,
    nilpotents: Vec<NilpotentJson>,
}

impl ScanReport {
    /// The report in its stable JSON schema, elements in canonical notation.
    pub fn to_json(&self) -> serde_json::Value {
        let r = |x: &ModElem| x.to_string();
        let repr = ScanReportJson {
            carrier: self.carrier,
            order: self.order,
            is_field: self.is_field,
            is_integral_domain: self.is_integral_domain,
            zero_divisors: self.zero_divisor_pairs.iter().map(|(x, y)| [r(x), r(y)]).collect(),
            units: self.units.iter().map(r).collect(),
            idempotents: self.idempotents.iter().map(r).collect(),
            nilpotents: self
                .nilpotents
                .iter()
                .map(|(x, k)| NilpotentJson { element: r(x), index: *k })
                .collect(),
        };
        serde_json::to_value(repr).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(r: &ModRing, s: &str) -> ModElem {
        r.parse(s).unwrap()
    }

    fn cfg() -> ScanConfig {
        ScanConfig::default()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(&ModRing::complex(3).unwrap().into()).unwrap().len(), 9);
        assert_eq!(enumerate(&ModRing::neutro_complex(2).unwrap().into()).unwrap().len(), 16);
        assert_eq!(enumerate(&ModRing::neutro_complex(5).unwrap().into()).unwrap().len(), 625);
        assert!(matches!(enumerate(&Carrier::Exact), Err(Error::InfiniteCarrier(_))));
    }

    #[test]
    fn zero_divisor_examples() {
        let z5 = ModRing::complex(5).unwrap();
        let zd = find_zero_divisors(&z5, &cfg()).unwrap();
        assert!(zd.contains(&(el(&z5, "1+2iF"), el(&z5, "2+iF"))));
        assert!(find_zero_divisors(&ModRing::complex(7).unwrap(), &cfg()).unwrap().is_empty());
        let n3 = ModRing::neutro(3).unwrap();
        let zd = find_zero_divisors(&n3, &cfg()).unwrap();
        assert!(zd.contains(&(ModElem::IND, el(&n3, "1+2I"))));
        for (x, y) in &zd {
            assert!(n3.mul(x, y).is_zero());
            assert!(zd.contains(&(*y, *x)));
        }
    }

    #[test]
    fn thirteen_pairs_are_reported_as_computed() {
        let z13 = ModRing::complex(13).unwrap();
        let zd = find_zero_divisors(&z13, &cfg()).unwrap();
        let x = el(&z13, "9+4iF");
        assert!(!z13.mul(&x, &el(&z13, "3+9iF")).is_zero());
        assert!(z13.is_unit(&x));
        assert!(zd.iter().all(|(a, b)| *a != x && *b != x));
        assert!(zd.contains(&(el(&z13, "2+3iF"), el(&z13, "3+2iF"))));
    }

    #[test]
    fn special_elements() {
        let n2 = ModRing::neutro_complex(2).unwrap();
        let idem = find_idempotents(&n2, &cfg()).unwrap();
        assert!(idem.contains(&ModElem::IND) && idem.contains(&ModElem::ONE));
        let z6 = ModRing::complex(6).unwrap();
        assert!(find_nilpotents(&z6, &cfg()).unwrap().contains(&(el(&z6, "3+3iF"), 2)));
        let z12 = ModRing::complex(12).unwrap();
        let nil = find_nilpotents(&z12, &cfg()).unwrap();
        assert!(nil.contains(&(el(&z12, "6+6iF"), 2)));
        let zd: HashSet<ModElem> = find_zero_divisors(&z12, &cfg()).unwrap().into_iter().map(|p| p.0).collect();
        let units = find_units(&z12, &cfg()).unwrap();
        for (x, _) in &nil {
            assert!(zd.contains(x));
        }
        for u in &units {
            assert!(!zd.contains(u));
        }
    }

    #[test]
    fn nilpotency_index_matches_iteration() {
        for r in [
            ModRing::complex(8).unwrap(),
            ModRing::neutro_complex(4).unwrap(),
            ModRing::plain(32).unwrap(),
            ModRing::neutro(12).unwrap(),
        ] {
            for x in r.elements().skip(1) {
                let mut p = x;
                let mut brute = None;
                for k in 1..=r.order() as u32 {
                    if p.is_zero() {
                        brute = Some(k);
                        break;
                    }
                    p = r.mul(&p, &x);
                }
                assert_eq!(nilpotency_index(&r, &x), brute, "{x} in {r:?}");
            }
        }
    }

    #[test]
    fn field_examples() {
        for (p, expect) in [(7, true), (13, false), (11, true), (3, true), (5, false), (2, false)] {
            let r = ModRing::complex(p).unwrap();
            let v = is_field(&r, &cfg()).unwrap();
            assert_eq!(v.is_field, expect, "p={p}");
            assert_eq!(v.method, FieldMethod::TwoSquares);
            assert_eq!(is_field_brute_force(&r, &cfg()).unwrap().is_field, expect);
            if let Some((x, y)) = v.witness {
                assert!(r.mul(&x, &y).is_zero());
            }
        }
        let z9 = ModRing::complex(9).unwrap();
        assert_eq!(is_field(&z9, &cfg()).unwrap().method, FieldMethod::BruteForce);
        assert!(!is_field(&z9, &cfg()).unwrap().is_field);
        assert!(is_field(&ModRing::plain(31).unwrap(), &cfg()).unwrap().is_field);
        assert!(!is_field(&ModRing::plain(33).unwrap(), &cfg()).unwrap().is_field);
        let n7 = ModRing::neutro(7).unwrap();
        let v = is_field(&n7, &cfg()).unwrap();
        let (x, y) = v.witness.unwrap();
        assert!(!v.is_field && n7.mul(&x, &y).is_zero());
    }

    #[test]
    fn two_squares() {
        assert_eq!(sum_two_squares_witness(5).unwrap(), Some((1, 2)));
        assert_eq!(sum_two_squares_witness(7).unwrap(), None);
        assert_eq!(sum_two_squares_witness(13).unwrap(), Some((1, 5)));
        assert_eq!((4 + 9) % 13, 0);
        assert_eq!(sum_two_squares_witness(2).unwrap(), Some((1, 1)));
        assert!(matches!(sum_two_squares_witness(15), Err(Error::Domain(_))));
        for p in (2..200).filter(|&p| is_prime(p)) {
            let brute = (1..p).flat_map(|a| (1..p).map(move |b| (a, b))).find(|(a, b)| (a * a + b * b) % p == 0);
            assert_eq!(sum_two_squares_witness(p).unwrap(), brute, "p={p}");
        }
        assert_eq!(sum_two_squares_witness(1_000_000_007).unwrap(), None);
        let (a, b) = sum_two_squares_witness(998_244_353).unwrap().unwrap();
        assert_eq!(a, 1);
        assert_eq!((b as u128 * b as u128 + 1) % 998_244_353, 0);
    }

    #[test]
    fn orders() {
        let z7 = ModRing::complex(7).unwrap();
        assert_eq!(additive_order(&z7, &ModElem::ONE), 7);
        assert_eq!(additive_order(&z7, &ModElem::ZERO), 1);
        let z12 = ModRing::complex(12).unwrap();
        for x in z12.elements() {
            let brute = (1..=12u64).find(|&k| z12.scale(k, &x).is_zero()).unwrap();
            assert_eq!(additive_order(&z12, &x), brute);
        }
        let z3 = ModRing::complex(3).unwrap();
        assert_eq!(multiplicative_order(&z3, &ModElem::I_F), Some(4));
        let z2 = ModRing::complex(2).unwrap();
        assert_eq!(multiplicative_order(&z2, &el(&z2, "1+iF")), None);
    }

    #[test]
    fn sylow_orders() {
        assert_eq!(additive_sylow_orders(&ModRing::neutro_complex(11).unwrap()), vec![(11, 14641)]);
        assert_eq!(additive_sylow_orders(&ModRing::complex(12).unwrap()), vec![(2, 16), (3, 9)]);
        assert_eq!(additive_sylow_orders(&ModRing::neutro(26).unwrap()), vec![(2, 4), (13, 169)]);
    }

    #[test]
    fn ideal_examples() {
        let z26 = ModRing::complex(26).unwrap();
        let p = [ModElem::ZERO, el(&z26, "13+13iF")];
        assert!(check_ideal(&z26, &p, Side::TwoSided, &cfg()).unwrap().holds);
        let z3 = ModRing::complex(3).unwrap();
        let v = check_ideal(&z3, &[ModElem::ZERO, ModElem::ONE], Side::TwoSided, &cfg()).unwrap();
        assert!(!v.holds && v.violation.is_some());
        let z5 = ModRing::complex(5).unwrap();
        let reals: Vec<ModElem> = (0..5).map(ModElem::real).collect();
        assert!(check_subring(&z5, &reals).unwrap().holds);
        let v = check_ideal(&z5, &reals, Side::Left, &cfg()).unwrap();
        match v.violation {
            Some(SubsetViolation::Absorption { ring_elem, member, product, .. }) => {
                assert_eq!(z5.mul(&ring_elem, &member), product);
                assert!(product.im() != 0);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(check_ideal(&z5, &[ModElem::new(0, 0, 1, 0)], Side::Left, &cfg()).is_err());
        let v = check_subring(&z3, &[ModElem::ONE]).unwrap();
        assert_eq!(v.violation, Some(SubsetViolation::MissingZero));
    }

    #[test]
    fn smarandache_witnesses() {
        let z12 = ModRing::complex(12).unwrap();
        let v = is_smarandache_semigroup(&z12, &cfg()).unwrap();
        assert!(v.holds);
        assert!(v.group.len() > 1 && (v.group.len() as u128) < z12.order());
        let z2 = ModRing::complex(2).unwrap();
        let v = is_smarandache_semigroup(&z2, &cfg()).unwrap();
        assert_eq!(v.group, vec![ModElem::I_F, ModElem::ONE]);
        let p2 = ModRing::plain(2).unwrap();
        let v = is_smarandache_semigroup(&p2, &cfg()).unwrap();
        assert_eq!((v.holds, v.group), (true, vec![ModElem::ONE]));
        // witness is closed, has identity and inverses
        let n3 = ModRing::neutro_complex(3).unwrap();
        let v = is_smarandache_semigroup(&n3, &cfg()).unwrap();
        let set: HashSet<_> = v.group.iter().copied().collect();
        for x in &v.group {
            assert_eq!(n3.mul(x, &v.identity), *x);
            assert!(v.group.iter().any(|y| n3.mul(x, y) == v.identity));
            for y in &v.group {
                assert!(set.contains(&n3.mul(x, y)));
            }
        }
    }

    #[test]
    fn subfield_examples() {
        let z3 = ModRing::complex(3).unwrap();
        let subs = find_subfields(&z3, 9, &cfg()).unwrap();
        assert!(subs.contains(&vec![ModElem::ZERO, ModElem::ONE, ModElem::real(2)]));
        assert!(subs.iter().any(|s| s.len() == 9));
        let z6 = ModRing::complex(6).unwrap();
        let subs = find_subfields(&z6, 36, &cfg()).unwrap();
        assert!(subs.contains(&vec![ModElem::ZERO, ModElem::real(3)]));
        assert!(subs.contains(&vec![ModElem::ZERO, ModElem::real(2), ModElem::real(4)]));
        assert!(find_subfields(&z6, 1, &cfg()).unwrap().is_empty());
    }

    #[test]
    fn scan_reports() {
        let r = scan(&ModRing::complex(2).unwrap(), &cfg()).unwrap();
        assert_eq!((r.order, r.is_field), (4, false));
        let r = scan(&ModRing::complex(3).unwrap(), &cfg()).unwrap();
        assert_eq!((r.order, r.is_field, r.is_integral_domain), (9, true, true));
        assert_eq!(r.units.len(), 8);
        let r = scan(&ModRing::neutro_complex(2).unwrap(), &cfg()).unwrap();
        assert_eq!(r.order, 16);
        assert!(!r.zero_divisor_pairs.is_empty());
        let json = r.to_json();
        let keys: Vec<&String> = json.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 8);
        assert_eq!(json["carrier"]["family"], "mod-neutro-complex");
        for w in &r.witnesses {
            if w.name == "zero-divisor" {
                assert!(r.carrier.finite().unwrap().mul(&w.elements[0], &w.elements[1]).is_zero());
            }
        }
    }

    #[test]
    fn scan_budget_names_the_count() {
        let r = ModRing::neutro_complex(11).unwrap();
        match scan(&r, &cfg()) {
            Err(Error::Budget { needed, limit, .. }) => {
                assert_eq!(needed, 14641u128 * 14641);
                assert_eq!(limit, 100_000_000);
            }
            other => panic!("{other:?}"),
        }
        let tight = ScanConfig { max_elements: 10, ..cfg() };
        assert!(matches!(find_units(&ModRing::complex(4).unwrap(), &tight), Err(Error::Budget { .. })));
    }

    #[test]
    fn parallel_scans_match_sequential() {
        let r = ModRing::neutro_complex(3).unwrap();
        let a = scan(&r, &ScanConfig::with_jobs(1)).unwrap();
        let b = scan(&r, &ScanConfig::with_jobs(8)).unwrap();
        assert_eq!(a, b);
    }
}
