use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of<T: PartialOrd + Default>(x: &T) -> Sign {
        let z = T::default();
        if *x > z {
            Sign::Pos
        } else if *x < z {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

/// Position relative to each hyperplane: `+` on the side the normal points to.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Face order: `self <= other` iff each entry is zero or agrees.
    pub fn conforms_to(&self, other: &SignVector) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&a, &b)| a == Sign::Zero || a == b)
    }

    /// `(self ∘ other)_i = self_i` if nonzero, else `other_i`.
    pub fn compose(&self, other: &SignVector) -> SignVector {
        SignVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| if a == Sign::Zero { b } else { a })
                .collect(),
        )
    }

    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] == Sign::Zero).collect()
    }

    pub fn restrict(&self, indices: &[usize]) -> SignVector {
        SignVector(indices.iter().map(|&i| self.0[i]).collect())
    }

    pub fn negate(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| s.negate()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&s| s == Sign::Zero)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '-' => Ok(Sign::Neg),
                '0' => Ok(Sign::Zero),
                '+' => Ok(Sign::Pos),
                other => Err(format!("invalid sign character {other:?}")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignVector)
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
