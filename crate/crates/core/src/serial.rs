//! JSON encodings.
//!
//! Rationals travel as strings (`"3/2"`, `"9"`); integers of any size travel as
//! JSON numbers; polynomials travel as arrays of `[degree, coefficient]` pairs
//! sorted by degree.

use std::fmt::Display;
use std::str::FromStr;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::poly::Poly;
use crate::rational::{format_rat, parse_rat};
use crate::Rat;

fn to_number<T: Display, E: serde::ser::Error>(v: &T) -> Result<Number, E> {
    Number::from_str(&v.to_string()).map_err(E::custom)
}

fn from_number<T: FromStr, E: de::Error>(n: Number) -> Result<T, E> {
    n.to_string()
        .parse()
        .map_err(|_| E::custom(format!("integer out of range: {n}")))
}

/// `#[serde(with = "rat_str")]` for [`Rat`] fields.
pub mod rat_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(de::Error::custom)
    }
}

/// `#[serde(with = "rat_vec")]` for `Vec<Rat>` fields.
pub mod rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rat(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rat(s).map_err(de::Error::custom))
            .collect()
    }
}

/// `#[serde(with = "big_num")]` for arbitrary-precision integers, written as
/// JSON numbers.
pub mod big_num {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        to_number::<T, S::Error>(v)?.serialize(s)
    }

    pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        from_number(Number::deserialize(d)?)
    }
}

/// `#[serde(with = "big_num_vec")]` for vectors of arbitrary-precision integers.
pub mod big_num_vec {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&to_number::<T, S::Error>(x)?)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(d: D) -> Result<Vec<T>, D::Error> {
        Vec::<Number>::deserialize(d)?
            .into_iter()
            .map(from_number)
            .collect()
    }
}

impl<C: Display> Serialize for Poly<C>
where
    C: num_traits::Zero + Clone,
{
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.num_terms()))?;
        for (d, c) in self.terms() {
            seq.serialize_element(&(d, to_number::<C, S::Error>(c)?))?;
        }
        seq.end()
    }
}

impl<'de, C> Deserialize<'de> for Poly<C>
where
    C: FromStr + num_traits::Zero + Clone,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct PolyVisitor<C>(std::marker::PhantomData<C>);

        impl<'de, C: FromStr + num_traits::Zero + Clone> Visitor<'de> for PolyVisitor<C> {
            type Value = Poly<C>;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an array of [degree, coefficient] pairs")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Poly<C>, A::Error> {
                let mut p = Poly::zero();
                let mut last: Option<usize> = None;
                while let Some((deg, coeff)) = seq.next_element::<(usize, Number)>()? {
                    if last.is_some_and(|l| l >= deg) {
                        return Err(de::Error::custom("degrees must be strictly increasing"));
                    }
                    last = Some(deg);
                    let c: C = from_number(coeff)?;
                    if c.is_zero() {
                        return Err(de::Error::custom("zero coefficient"));
                    }
                    p.add_term(deg, c);
                }
                Ok(p)
            }
        }

        d.deserialize_seq(PolyVisitor(std::marker::PhantomData))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{IntPoly, NatPoly};
    use num_bigint::{BigInt, BigUint};

    #[derive(Serialize, Deserialize, Debug, PartialEq)]
    struct Doc {
        #[serde(with = "rat_str")]
        q: Rat,
        #[serde(with = "big_num")]
        n: BigUint,
        p: NatPoly,
    }

    #[test]
    fn document_shape() {
        let doc = Doc {
            q: Rat::new(3.into(), 2.into()),
            n: BigUint::from(3u8).pow(60),
            p: NatPoly::from_terms([(3, BigUint::from(2u8)), (2, BigUint::from(1u8))]),
        };
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(
            json,
            r#"{"q":"3/2","n":42391158275216203514294433201,"p":[[2,1],[3,2]]}"#
        );
        let back: Doc = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn negative_coefficients_round_trip() {
        let p = IntPoly::from_terms([(0, BigInt::from(-3)), (2, BigInt::from(1))]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[[0,-3],[2,1]]");
        assert_eq!(serde_json::from_str::<IntPoly>(&json).unwrap(), p);
    }

    #[test]
    fn rejects_unsorted_and_zero() {
        assert!(serde_json::from_str::<IntPoly>("[[2,1],[0,1]]").is_err());
        assert!(serde_json::from_str::<IntPoly>("[[0,0]]").is_err());
        assert!(serde_json::from_str::<NatPoly>("[[0,-1]]").is_err());
    }
}
