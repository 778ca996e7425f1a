//! CSV and JSON emission. Exact integers travel as decimal strings; every
//! CSV starts with a header line.

use std::io::{Read, Write};

use num_bigint::BigUint;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Serde adapter for [`BigUint`] as a decimal string.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(de::Error::custom)
    }
}

/// A row type with a fixed CSV header, so empty tables still get one.
pub trait Record: Serialize {
    const FIELDS: &'static [&'static str];
}

/// Generic counting row `(sigma, j_or_n, k, value)`. `mu` rows leave `k`
/// empty; `phi` rows leave `j_or_n` empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub sigma: u32,
    pub j_or_n: Option<u32>,
    pub k: Option<u32>,
    #[serde(with = "decimal")]
    pub value: BigUint,
}

impl Record for CountRow {
    const FIELDS: &'static [&'static str] = &["sigma", "j_or_n", "k", "value"];
}

pub fn write_rows<T: Record, W: Write>(rows: &[T], format: Format, mut out: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            w.write_record(T::FIELDS)?;
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, rows)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

pub fn rows_to_string<T: Record>(rows: &[T], format: Format) -> Result<String> {
    let mut buf = Vec::new();
    write_rows(rows, format, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv and json writers emit utf-8"))
}

pub fn read_csv<T: DeserializeOwned, R: Read>(input: R) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

pub fn read_json<T: DeserializeOwned, R: Read>(input: R) -> Result<Vec<T>> {
    Ok(serde_json::from_reader(input)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::OmegaRow;
    use proptest::prelude::*;

    #[test]
    fn empty_tables_keep_header() {
        assert_eq!(rows_to_string::<CountRow>(&[], Format::Csv).unwrap(), "sigma,j_or_n,k,value\n");
        assert_eq!(rows_to_string::<CountRow>(&[], Format::Json).unwrap(), "[]\n");
    }

    #[test]
    fn csv_header_and_decimal_strings() {
        let rows = vec![CountRow {
            sigma: 5,
            j_or_n: Some(28),
            k: None,
            value: BigUint::from(5u32).pow(28),
        }];
        let text = rows_to_string(&rows, Format::Csv).unwrap();
        assert_eq!(text, "sigma,j_or_n,k,value\n5,28,,37252902984619140625\n");
        let json = rows_to_string(&rows, Format::Json).unwrap();
        assert!(json.contains("\"value\": \"37252902984619140625\""));
        assert_eq!(read_json::<CountRow, _>(json.as_bytes()).unwrap(), rows);
    }

    fn big() -> impl Strategy<Value = BigUint> {
        prop::collection::vec(any::<u32>(), 0..4).prop_map(BigUint::new)
    }

    proptest! {
        #[test]
        fn count_rows_round_trip(rows in prop::collection::vec(
            (1u32..10, prop::option::of(1u32..100), prop::option::of(1u32..100), big())
                .prop_map(|(sigma, j_or_n, k, value)| CountRow { sigma, j_or_n, k, value }),
            0..20,
        )) {
            let text = rows_to_string(&rows, Format::Csv).unwrap();
            prop_assert_eq!(read_csv::<CountRow, _>(text.as_bytes()).unwrap(), rows);
        }

        #[test]
        fn omega_rows_round_trip(rows in prop::collection::vec(
            (1u32..10, 1u32..30, 1u32..30, big(), big(), any::<bool>(), any::<bool>())
                .prop_map(|(sigma, n, k, omega, phi, n_ge_2k, omega_le_phi)| OmegaRow { sigma, n, k, omega, phi, n_ge_2k, omega_le_phi }),
            0..20,
        )) {
            let text = rows_to_string(&rows, Format::Csv).unwrap();
            prop_assert_eq!(read_csv::<OmegaRow, _>(text.as_bytes()).unwrap(), rows);
        }
    }
}
