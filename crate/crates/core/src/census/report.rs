use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::serde_big;

/// A bound compared against an exact census value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    /// Exact value that was compared, as a rational string.
    pub value: String,
    /// Human-readable bound, e.g. `< 3/4`.
    pub bound: String,
    pub holds: bool,
    /// Whether the theorem's hypotheses are met at these parameters; a bound
    /// outside its hypotheses is reported, never asserted.
    pub hypothesis_met: bool,
}

impl BoundCheck {
    /// Fails only when the hypotheses hold and the bound does not.
    pub fn violated(&self) -> bool {
        self.hypothesis_met && !self.holds
    }
}

/// Exact event counts over a finite population.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub population: String,
    #[serde(with = "serde_big::u128_str")]
    pub total: u128,
    #[serde(with = "u128_map")]
    pub events: BTreeMap<String, u128>,
    /// `count / total` in lowest terms, kept in step with `events`.
    pub fractions: BTreeMap<String, String>,
    /// Multiplier applied in `scaled` (the prime, for `O(1/p)` events).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub scaled: BTreeMap<String, String>,
    pub bounds: Vec<BoundCheck>,
}

mod u128_map {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, u128>, s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|(k, v)| (k.clone(), v.to_string()))
            .collect::<BTreeMap<_, _>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, u128>, D::Error> {
        BTreeMap::<String, String>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| Ok((k, v.parse().map_err(serde::de::Error::custom)?)))
            .collect()
    }
}

impl CensusReport {
    pub fn new(population: impl Into<String>, total: u128) -> Self {
        CensusReport {
            population: population.into(),
            total,
            events: BTreeMap::new(),
            fractions: BTreeMap::new(),
            scale: None,
            scaled: BTreeMap::new(),
            bounds: Vec::new(),
        }
    }

    /// Sets the count of `event`.
    ///
    /// # Panics
    /// If `count` exceeds the total.
    pub fn record(&mut self, event: &str, count: u128) {
        assert!(count <= self.total, "event count {count} exceeds total {}", self.total);
        self.events.insert(event.to_string(), count);
        self.fractions.insert(event.to_string(), self.fraction(event).to_string());
        if let Some(s) = self.scale {
            self.scaled.insert(event.to_string(), (self.fraction(event) * BigInt::from(s)).to_string());
        }
    }

    /// Reports `scale * fraction` for every event, now and later.
    pub fn set_scale(&mut self, scale: u64) {
        self.scale = Some(scale);
        let events: Vec<(String, u128)> = self.events.iter().map(|(k, v)| (k.clone(), *v)).collect();
        for (k, v) in events {
            self.record(&k, v);
        }
    }

    pub fn scaled_fraction(&self, event: &str) -> Option<BigRational> {
        self.scale.map(|s| self.fraction(event) * BigInt::from(s))
    }

    pub fn count(&self, event: &str) -> u128 {
        self.events.get(event).copied().unwrap_or(0)
    }

    pub fn fraction(&self, event: &str) -> BigRational {
        BigRational::new(BigInt::from(self.count(event)), BigInt::from(self.total.max(1)))
    }

    pub fn fractions(&self) -> BTreeMap<String, BigRational> {
        self.events.keys().map(|k| (k.clone(), self.fraction(k))).collect()
    }

    /// No bound with met hypotheses fails.
    pub fn all_bounds_hold(&self) -> bool {
        self.bounds.iter().all(|b| !b.violated())
    }

    pub fn csv_header() -> &'static str {
        "population,event,count,total,fraction,fraction_float"
    }

    /// One CSV row per event, without the header.
    pub fn csv_rows(&self) -> String {
        let mut out = String::new();
        for (event, count) in &self.events {
            let f = self.fraction(event);
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:.12}",
                csv_field(&self.population),
                csv_field(event),
                count,
                self.total,
                f,
                f.to_f64().unwrap_or(f64::NAN)
            );
        }
        out
    }

    pub fn to_csv(&self) -> String {
        format!("{}\n{}", Self::csv_header(), self.csv_rows())
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
