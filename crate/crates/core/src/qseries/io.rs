//! JSON and CSV encodings of series tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::laurent::LaurentQPoly;
use super::series::TruncatedTSeries;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub b: usize,
    pub poly: PolyMap,
}

/// Exponent → coefficient map serialized as a JSON object in ascending exponent order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyMap(pub BTreeMap<i64, String>);

impl PolyMap {
    pub fn from_poly(p: &LaurentQPoly) -> Self {
        PolyMap(
            p.terms()
                .map(|(e, c)| (e, super::laurent::rational_to_string(c)))
                .collect(),
        )
    }

    pub fn to_poly(&self) -> Result<LaurentQPoly> {
        let mut p = LaurentQPoly::zero();
        for (e, c) in &self.0 {
            p.add_term(*e, super::laurent::parse_rational(c).map_err(Error::Parse)?);
        }
        Ok(p)
    }
}

impl Serialize for PolyMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (e, c) in &self.0 {
            m.serialize_entry(&e.to_string(), c)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for PolyMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, serde_json::Value> = BTreeMap::deserialize(d)?;
        let mut out = BTreeMap::new();
        for (k, v) in raw {
            let e: i64 = k
                .trim()
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad exponent {k:?}")))?;
            let c = match v {
                serde_json::Value::String(s) => s,
                serde_json::Value::Number(n) => n.to_string(),
                other => return Err(serde::de::Error::custom(format!("bad coefficient {other}"))),
            };
            out.insert(e, c);
        }
        Ok(PolyMap(out))
    }
}

/// `{"d":3,"kind":"local","rows":[{"b":0,"poly":{"0":"1"}}, …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTable {
    pub d: u32,
    pub kind: String,
    pub rows: Vec<SeriesRow>,
}

impl SeriesTable {
    pub fn from_series(d: u32, kind: &str, s: &TruncatedTSeries) -> Self {
        Self {
            d,
            kind: kind.to_string(),
            rows: s
                .coeffs()
                .iter()
                .enumerate()
                .map(|(b, p)| SeriesRow {
                    b,
                    poly: PolyMap::from_poly(p),
                })
                .collect(),
        }
    }

    /// Rebuilds the series; rows may be sparse, missing `b` read as zero.
    pub fn to_series(&self) -> Result<TruncatedTSeries> {
        let order = self.rows.iter().map(|r| r.b).max().unwrap_or(0);
        let mut s = TruncatedTSeries::zero(order);
        for row in &self.rows {
            *s.coeff_mut(row.b) += &row.poly.to_poly()?;
        }
        Ok(s)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("b,poly\n");
        for row in &self.rows {
            let pairs: Vec<String> = row.poly.0.iter().map(|(e, c)| format!("{e}:{c}")).collect();
            out.push_str(&format!("{},{}\n", row.b, pairs.join(";")));
        }
        out
    }
}
