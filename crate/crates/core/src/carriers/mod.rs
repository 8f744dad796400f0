//! Number systems and their scalar arithmetic.
//!
//! Every carrier is a commutative ring spanned by (a subset of) the basis
//! `{1, u, I, uI}` where `I² = I` and `u² = s`. For the exact carrier `u = i`
//! and `s = -1`; for the modular carriers `u = i_F` and `s = n - 1`.
//!
//! Elements never record which carrier they belong to. The carrier value
//! interpreting them is passed alongside, and containers such as matrices and
//! polynomials store it once and refuse to combine with a different one.

mod exact;
mod fuzzy;
mod modular;
mod notation;

use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::arith::Arith;
use crate::error::{Error, Result};

pub use exact::{content_gcd, ExactElem, ExactRing};
pub use fuzzy::FuzzyNC;
pub use modular::{ModElem, ModFamily, ModRing, MAX_MODULUS};

/// Which number system a carrier descriptor names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Exact,
    ModPlain,
    ModComplex,
    ModNeutro,
    ModNeutroComplex,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Exact,
        Family::ModPlain,
        Family::ModComplex,
        Family::ModNeutro,
        Family::ModNeutroComplex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Exact => "exact",
            Family::ModPlain => "mod-plain",
            Family::ModComplex => "mod-complex",
            Family::ModNeutro => "mod-neutro",
            Family::ModNeutroComplex => "mod-neutro-complex",
        }
    }

    pub fn is_modular(self) -> bool {
        self != Family::Exact
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidCarrier(format!("unknown family `{s}`")))
    }
}

/// A validated carrier descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CarrierRepr", into = "CarrierRepr")]
pub enum Carrier {
    Exact,
    Modular(ModRing),
}

#[derive(Serialize, Deserialize)]
struct CarrierRepr {
    family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<u64>,
}

impl TryFrom<CarrierRepr> for Carrier {
    type Error = Error;

    fn try_from(repr: CarrierRepr) -> Result<Self> {
        Carrier::new(repr.family, repr.modulus)
    }
}

impl From<Carrier> for CarrierRepr {
    fn from(c: Carrier) -> Self {
        CarrierRepr {
            family: c.family(),
            modulus: c.modulus(),
        }
    }
}

impl Carrier {
    /// Builds a descriptor; `modulus` must be present exactly for the modular families.
    pub fn new(family: Family, modulus: Option<u64>) -> Result<Self> {
        let mod_family = match family {
            Family::Exact => {
                return match modulus {
                    None => Ok(Carrier::Exact),
                    Some(n) => Err(Error::InvalidCarrier(format!(
                        "the exact carrier takes no modulus (got {n})"
                    ))),
                }
            }
            Family::ModPlain => ModFamily::Plain,
            Family::ModComplex => ModFamily::Complex,
            Family::ModNeutro => ModFamily::Neutro,
            Family::ModNeutroComplex => ModFamily::NeutroComplex,
        };
        let n = modulus
            .ok_or_else(|| Error::InvalidCarrier(format!("{family} requires a modulus")))?;
        ModRing::new(mod_family, n).map(Carrier::Modular)
    }

    pub fn family(&self) -> Family {
        match self {
            Carrier::Exact => Family::Exact,
            Carrier::Modular(r) => r.family().into(),
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Carrier::Exact => None,
            Carrier::Modular(r) => Some(r.modulus()),
        }
    }

    /// Number of elements, or `None` for the infinite exact carrier.
    pub fn order(&self) -> Option<u128> {
        match self {
            Carrier::Exact => None,
            Carrier::Modular(r) => Some(r.order()),
        }
    }

    /// The finite ring behind this descriptor.
    pub fn finite(&self) -> Result<ModRing> {
        match self {
            Carrier::Exact => Err(Error::InfiniteCarrier(*self)),
            Carrier::Modular(r) => Ok(*r),
        }
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::Exact => f.write_str("exact"),
            Carrier::Modular(r) => write!(f, "{}({})", Family::from(r.family()), r.modulus()),
        }
    }
}

impl From<ModRing> for Carrier {
    fn from(r: ModRing) -> Self {
        Carrier::Modular(r)
    }
}

impl From<ExactRing> for Carrier {
    fn from(_: ExactRing) -> Self {
        Carrier::Exact
    }
}

impl From<ModFamily> for Family {
    fn from(f: ModFamily) -> Self {
        match f {
            ModFamily::Plain => Family::ModPlain,
            ModFamily::Complex => Family::ModComplex,
            ModFamily::Neutro => Family::ModNeutro,
            ModFamily::NeutroComplex => Family::ModNeutroComplex,
        }
    }
}

/// A carrier as a commutative ring acting on plain element values.
pub trait Ring: Arith<Elem: Eq + Hash + Ord + Send + Sync> + Clone + PartialEq + fmt::Debug + Send + Sync {
    fn carrier(&self) -> Carrier;

    /// The multiplicative inverse, re-verified by multiplication.
    fn try_inverse(&self, x: &Self::Elem) -> Option<Self::Elem>;

    /// Fixes `I`, negates both `u`-bearing coordinates.
    fn conjugate(&self, x: &Self::Elem) -> Self::Elem;

    fn from_int(&self, v: i64) -> Self::Elem;

    /// Errors unless `x` is a canonical member of this carrier.
    fn check(&self, x: &Self::Elem) -> Result<()>;

    fn render(&self, x: &Self::Elem) -> String;

    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn pow(&self, x: &Self::Elem, mut k: u64) -> Self::Elem {
        let mut base = x.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn is_unit(&self, x: &Self::Elem) -> bool {
        self.try_inverse(x).is_some()
    }

    /// Errors unless `other` is the same carrier.
    fn ensure_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::MixedCarrier {
                left: self.carrier(),
                right: other.carrier(),
            })
        }
    }
}

/// Product of basis monomials `u^a I^b`, indexed `0 = 1, 1 = u, 2 = I, 3 = uI`.
///
/// Returns the index of the product and whether it carries the factor `s = u²`.
/// Derived only from `u² = s` and `I² = I`.
#[cfg(test)]
pub(crate) const fn basis_product(i: usize, j: usize) -> (usize, bool) {
    let (ua, ia) = (i & 1, i >> 1);
    let (ub, ib) = (j & 1, j >> 1);
    let u = ua + ub;
    let ind = ia | ib;
    ((u & 1) | (ind << 1), u == 2)
}
