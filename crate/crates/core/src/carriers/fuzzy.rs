use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A fuzzy neutrosophic complex number: four rational coordinates in `[0, 1]`,
/// combined coordinatewise by `min` (meet) and `max` (join).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FuzzyNC {
    coords: [BigRational; 4],
}

impl FuzzyNC {
    pub fn new(coords: [BigRational; 4]) -> Result<Self> {
        let (zero, one) = (BigRational::zero(), BigRational::one());
        if let Some(bad) = coords.iter().find(|c| **c < zero || **c > one) {
            return Err(Error::Range(format!("fuzzy coordinate {bad} is outside [0, 1]")));
        }
        Ok(FuzzyNC { coords })
    }

    pub fn coords(&self) -> &[BigRational; 4] {
        &self.coords
    }

    pub fn meet(&self, other: &FuzzyNC) -> FuzzyNC {
        self.zip(other, |a, b| std::cmp::min(a, b).clone())
    }

    pub fn join(&self, other: &FuzzyNC) -> FuzzyNC {
        self.zip(other, |a, b| std::cmp::max(a, b).clone())
    }

    fn zip(&self, other: &FuzzyNC, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> FuzzyNC {
        FuzzyNC {
            coords: std::array::from_fn(|i| f(&self.coords[i], &other.coords[i])),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn milli(v: [i64; 4]) -> FuzzyNC {
        FuzzyNC::new(v.map(|x| BigRational::new(BigInt::from(x), BigInt::from(1000)))).unwrap()
    }

    #[test]
    fn worked_meet_is_coordinatewise() {
        let x = milli([700, 610, 230, 80]);
        let y = milli([900, 230, 193, 700]);
        assert_eq!(x.meet(&y), milli([700, 230, 193, 80]));
        assert_eq!(x.join(&y), milli([900, 610, 230, 700]));
        assert_eq!(x.meet(&x), x);
    }

    #[test]
    fn range_is_enforced() {
        let over = BigRational::new(BigInt::from(11), BigInt::from(10));
        let z = BigRational::zero();
        assert!(matches!(
            FuzzyNC::new([over, z.clone(), z.clone(), z.clone()]),
            Err(Error::Range(_))
        ));
        assert!(FuzzyNC::new([-BigRational::one(), z.clone(), z.clone(), z]).is_err());
    }

    #[test]
    fn lattice_laws_on_seeded_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut pick = || milli(std::array::from_fn(|_| rng.gen_range(0..=1000)));
        for _ in 0..500 {
            let (x, y, z) = (pick(), pick(), pick());
            assert_eq!(x.meet(&x.join(&y)), x);
            assert_eq!(x.join(&x.meet(&y)), x);
            assert_eq!(x.meet(&y), y.meet(&x));
            assert_eq!(x.join(&y), y.join(&x));
            assert_eq!(x.meet(&y).meet(&z), x.meet(&y.meet(&z)));
            assert_eq!(x.join(&y).join(&z), x.join(&y.join(&z)));
            assert_eq!(x.join(&x), x);
        }
    }
}
