//! Exact numbers in JSON and the configuration file schema.

use crate::error::{Error, Result};
use crate::valuation::{Configuration, Point};
use crate::{Int, Rat};
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;

/// An integer written as a JSON number when it fits in `i64`, as a decimal
/// string otherwise. Both forms are read back.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Num(pub Int);

impl From<Int> for Num {
    fn from(x: Int) -> Self {
        Num(x)
    }
}

impl From<&Int> for Num {
    fn from(x: &Int) -> Self {
        Num(x.clone())
    }
}

impl From<i64> for Num {
    fn from(x: i64) -> Self {
        Num(Int::from(x))
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct NumVisitor;

impl<'de> Visitor<'de> for NumVisitor {
    type Value = Num;
    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }
    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Num, E> {
        Ok(Num(v.into()))
    }
    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Num, E> {
        Ok(Num(v.into()))
    }
    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Num, E> {
        v.parse::<Int>().map(Num).map_err(|_| E::custom(format!("invalid integer '{v}'")))
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Num, D::Error> {
        d.deserialize_any(NumVisitor)
    }
}

/// A rational written as the string `"p/q"` (or `"p"` when integral).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frac(pub Rat);

impl Serialize for Frac {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Frac {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Frac, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map(Frac).ok_or_else(|| de::Error::custom(format!("invalid fraction '{s}'")))
    }
}

fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.parse().ok()?;
            let d: Int = d.parse().ok()?;
            (d != Int::from(0)).then(|| Rat::new(n, d))
        }
        None => s.parse::<Int>().ok().map(Rat::from_integer),
    }
}

pub fn nums(v: &[Int]) -> Vec<Num> {
    v.iter().map(Num::from).collect()
}

/// Satellite entry `{"S": j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SatelliteDoc {
    #[serde(rename = "S")]
    pub target: usize,
}

/// `"F"` (also accepted: `"O"` for the first point) or `{"S": j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointDoc {
    Tag(String),
    Satellite(SatelliteDoc),
}

/// The configuration file: `{"m": .., "points": [..], "s": ..}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDoc {
    pub m: usize,
    pub points: Vec<PointDoc>,
    pub s: usize,
}

impl ConfigDoc {
    pub fn from_config(config: &Configuration) -> Self {
        let points = config
            .points()
            .iter()
            .map(|p| match p {
                Point::Origin | Point::Free => PointDoc::Tag("F".into()),
                Point::Satellite(j) => PointDoc::Satellite(SatelliteDoc { target: *j }),
            })
            .collect();
        ConfigDoc { m: config.m(), points, s: config.s() }
    }

    pub fn to_config(&self) -> Result<Configuration> {
        if self.m != self.points.len() {
            return Err(Error::BadLength(format!("m = {} but {} points are listed", self.m, self.points.len())));
        }
        let mut points = Vec::with_capacity(self.m);
        for (idx, p) in self.points.iter().enumerate() {
            let point = match p {
                PointDoc::Tag(t) if idx == 0 && (t == "F" || t == "O") => Point::Origin,
                PointDoc::Tag(t) if t == "F" => Point::Free,
                PointDoc::Tag(t) => return Err(Error::Parse(format!("points[{idx}]: unknown point tag '{t}'"))),
                PointDoc::Satellite(s) => Point::Satellite(s.target),
            };
            points.push(point);
        }
        Configuration::new(points, self.s)
    }
}

/// Reads a configuration document, reporting the offending field.
pub fn parse_config(text: &str) -> Result<Configuration> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: ConfigDoc = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            Error::Parse(inner.to_string())
        } else {
            Error::Parse(format!("{path}: {inner}"))
        }
    })?;
    doc.to_config()
}

/// Pretty JSON for a configuration, newline terminated.
pub fn emit_config(config: &Configuration) -> String {
    let mut s = serde_json::to_string_pretty(&ConfigDoc::from_config(config)).expect("serializable");
    s.push('\n');
    s
}
