use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::forms::OrbitIndex;

/// A rational value per orbit index, in [`OrbitIndex::all`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    m: usize,
    values: Vec<BigRational>,
}

impl Distribution {
    pub fn new(m: usize, values: Vec<BigRational>) -> Distribution {
        assert_eq!(values.len(), OrbitIndex::all(m).len(), "one value per orbit index");
        Distribution { m, values }
    }

    pub fn zeros(m: usize) -> Distribution {
        Distribution::new(m, vec![BigRational::zero(); OrbitIndex::all(m).len()])
    }

    /// `counts[i] / denom`.
    pub fn from_counts(m: usize, counts: &[u64], denom: u64) -> Distribution {
        let d = BigInt::from(denom);
        Distribution::new(
            m,
            counts
                .iter()
                .map(|&c| BigRational::new(BigInt::from(c), d.clone()))
                .collect(),
        )
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn index(&self) -> Vec<OrbitIndex> {
        OrbitIndex::all(self.m)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Zero for indices outside the scheme, e.g. `Even(0,−1)` or rank > m.
    pub fn get(&self, i: OrbitIndex) -> BigRational {
        if i.is_admissible(self.m) {
            self.values[i.position()].clone()
        } else {
            BigRational::zero()
        }
    }

    pub fn set(&mut self, i: OrbitIndex, v: BigRational) {
        self.values[i.position()] = v;
    }

    pub fn iter(&self) -> impl Iterator<Item = (OrbitIndex, &BigRational)> + '_ {
        self.index().into_iter().zip(&self.values)
    }

    pub fn total(&self) -> BigRational {
        self.values.iter().sum()
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }

    pub fn scaled(&self, c: &BigRational) -> Distribution {
        Distribution::new(self.m, self.values.iter().map(|v| v * c).collect())
    }

    /// The distribution of the single point `{0}`.
    pub fn point(m: usize) -> Distribution {
        let mut d = Distribution::zeros(m);
        d.values[0] = BigRational::one();
        d
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    index: Vec<OrbitIndex>,
    values: Vec<String>,
}

impl Serialize for Distribution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire {
            index: self.index(),
            values: self.values.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Distribution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Distribution, D::Error> {
        use serde::de::Error;
        let w = Wire::deserialize(d)?;
        let m = w.index.last().map(|i| i.rank()).unwrap_or(0);
        if w.index != OrbitIndex::all(m) || w.values.len() != w.index.len() {
            return Err(D::Error::custom("index must list every orbit index in order"));
        }
        let values = w
            .values
            .iter()
            .map(|v| v.parse::<BigRational>().map_err(D::Error::custom))
            .collect::<Result<_, _>>()?;
        Ok(Distribution { m, values })
    }
}
