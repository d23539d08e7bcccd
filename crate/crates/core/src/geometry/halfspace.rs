use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Vector;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, rational_from_json, Rational};

/// The closed halfspace `{x : <normal, x> <= offset}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    normal: Vector,
    offset: Rational,
}

impl Halfspace {
    pub fn new(normal: Vector, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::ZeroNormal);
        }
        Ok(Halfspace { normal, offset })
    }

    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// `offset - <normal, x>`; nonnegative exactly on the halfspace.
    pub fn slack(&self, x: &Vector) -> Rational {
        &self.offset - self.normal.dot(x)
    }

    pub fn contains(&self, x: &Vector) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn is_tight(&self, x: &Vector) -> bool {
        self.slack(x).is_zero()
    }

    /// Scales to the canonical representative: offset 1 when the offset is
    /// positive, otherwise the normal gets max-norm 1.
    pub fn normalized(&self) -> Halfspace {
        let factor = if self.offset.is_positive() {
            self.offset.clone()
        } else {
            self.normal.max_abs()
        };
        if factor.is_one() {
            return self.clone();
        }
        let inv = factor.recip();
        Halfspace {
            normal: self.normal.scale(&inv),
            offset: &self.offset * &inv,
        }
    }

    /// The same halfspace with its boundary shifted to pass `t` further along
    /// the translation: `{x + t : x in self}`.
    pub fn translated(&self, t: &Vector) -> Halfspace {
        Halfspace {
            normal: self.normal.clone(),
            offset: &self.offset + self.normal.dot(t),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "a": self.normal.to_json(),
            "b": format_rational(&self.offset),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Halfspace> {
        let a = v
            .get("a")
            .ok_or_else(|| Error::Parse("halfspace without `a`".into()))?;
        let b = v
            .get("b")
            .ok_or_else(|| Error::Parse("halfspace without `b`".into()))?;
        Halfspace::new(Vector::from_json(a)?, rational_from_json(b)?)
    }
}

impl Serialize for Halfspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Halfspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = serde_json::Value::deserialize(d)?;
        Halfspace::from_json(&v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn normalization_is_canonical() {
        let h = Halfspace::new(Vector::from_ints(&[2, 4]), int(2)).unwrap();
        let n = h.normalized();
        assert_eq!(n.normal(), &Vector::from_ints(&[1, 2]));
        assert_eq!(n.offset(), &int(1));

        let g = Halfspace::new(Vector::from_ints(&[-3, 6]), int(-3)).unwrap();
        let m = g.normalized();
        assert_eq!(m.normal(), &Vector::new(vec![frac(-1, 2), int(1)]));
        assert_eq!(m.offset(), &frac(-1, 2));
    }

    #[test]
    fn zero_normal_is_rejected() {
        assert_eq!(
            Halfspace::new(Vector::from_ints(&[0, 0]), int(1)),
            Err(Error::ZeroNormal)
        );
    }
}
