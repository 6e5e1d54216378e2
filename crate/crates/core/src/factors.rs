//! Factor-list parsing for product subjects.
//!
//! Text grammar, semicolon-separated and whitespace-insensitive:
//!
//! ```text
//! g=4,m1=1,m2=2,side=plus; g=3,m=2; sphere=4
//! ```
//!
//! `g=3` and `g=6` factors take a single `m`; `sphere=<l>` is shorthand for a
//! great-sphere factor of dimension `l`; `side` defaults to `plus`. A JSON
//! array of `{"g": .., "m1": .., "m2": .., "side": ".."}` objects is accepted
//! as an alternative.

use thiserror::Error;

use crate::catalog::{focal_descriptor, sphere_factor, CatalogError, FocalDescriptor, Side};

#[derive(Debug, Error, PartialEq)]
pub enum FactorParseError {
    #[error("empty factor list")]
    Empty,
    #[error("at byte {offset}: unknown key `{key}`")]
    UnknownKey { offset: usize, key: String },
    #[error("at byte {offset}: expected key=value, got `{item}`")]
    MalformedItem { offset: usize, item: String },
    #[error("at byte {offset}: invalid number `{value}` for `{key}`")]
    BadNumber {
        offset: usize,
        key: String,
        value: String,
    },
    #[error("at byte {offset}: g must be in {{2, 3, 4, 6}}, got {g}")]
    BadG { offset: usize, g: u64 },
    #[error("at byte {offset}: factor is missing `{key}`")]
    MissingKey { offset: usize, key: &'static str },
    #[error("at byte {offset}: side must be `plus` or `minus`, got `{value}`")]
    BadSide { offset: usize, value: String },
    #[error("at byte {offset}: {source}")]
    Family {
        offset: usize,
        source: CatalogError,
    },
    #[error("invalid JSON factor list: {0}")]
    Json(String),
}

/// Parses the compact grammar (or, when the input starts with `[`, a JSON
/// array) into an ordered factor list. Errors carry the byte offset of the
/// offending token.
pub fn parse_factor_list(text: &str) -> Result<Vec<FocalDescriptor>, FactorParseError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        return parse_json(trimmed);
    }
    let mut out = Vec::new();
    let mut offset = 0usize;
    for segment in text.split(';') {
        if !segment.trim().is_empty() {
            out.push(parse_factor(segment, offset)?);
        }
        offset += segment.len() + 1;
    }
    if out.is_empty() {
        return Err(FactorParseError::Empty);
    }
    Ok(out)
}

fn parse_factor(segment: &str, base: usize) -> Result<FocalDescriptor, FactorParseError> {
    let seg_offset = base + (segment.len() - segment.trim_start().len());
    let mut g: Option<u64> = None;
    let mut m: Option<u64> = None;
    let mut m1: Option<u64> = None;
    let mut m2: Option<u64> = None;
    let mut sphere: Option<u64> = None;
    let mut side = Side::Plus;

    let mut offset = base;
    for item in segment.split(',') {
        let item_trim = item.trim();
        let item_offset = offset + (item.len() - item.trim_start().len());
        offset += item.len() + 1;
        if item_trim.is_empty() {
            continue;
        }
        let Some((key, value)) = item_trim.split_once('=') else {
            return Err(FactorParseError::MalformedItem {
                offset: item_offset,
                item: item_trim.to_string(),
            });
        };
        let key = key.trim();
        let value = value.trim();
        let parse_num = |v: &str| -> Result<u64, FactorParseError> {
            v.parse().map_err(|_| FactorParseError::BadNumber {
                offset: item_offset,
                key: key.to_string(),
                value: v.to_string(),
            })
        };
        match key {
            "g" => g = Some(parse_num(value)?),
            "m" => m = Some(parse_num(value)?),
            "m1" => m1 = Some(parse_num(value)?),
            "m2" => m2 = Some(parse_num(value)?),
            "sphere" => sphere = Some(parse_num(value)?),
            "side" => {
                side = match value {
                    "plus" | "+" => Side::Plus,
                    "minus" | "-" => Side::Minus,
                    _ => {
                        return Err(FactorParseError::BadSide {
                            offset: item_offset,
                            value: value.to_string(),
                        })
                    }
                }
            }
            _ => {
                return Err(FactorParseError::UnknownKey {
                    offset: item_offset,
                    key: key.to_string(),
                })
            }
        }
    }

    if let Some(l) = sphere {
        return sphere_factor(l as u32)
            .map_err(|source| FactorParseError::Family { offset: seg_offset, source });
    }
    let Some(g) = g else {
        return Err(FactorParseError::MissingKey { offset: seg_offset, key: "g" });
    };
    if !matches!(g, 2 | 3 | 4 | 6) {
        return Err(FactorParseError::BadG { offset: seg_offset, g });
    }
    let (m1, m2) = match (m, m1, m2) {
        (Some(m), None, None) => (m, m),
        (None, Some(a), Some(b)) => (a, b),
        (None, Some(a), None) => (a, a),
        _ => {
            return Err(FactorParseError::MissingKey {
                offset: seg_offset,
                key: "m (or m1 and m2)",
            })
        }
    };
    focal_descriptor(g as u8, m1 as u32, m2 as u32, side)
        .map_err(|source| FactorParseError::Family { offset: seg_offset, source })
}

#[derive(serde::Deserialize)]
struct JsonFactor {
    g: u8,
    #[serde(default)]
    m: Option<u32>,
    #[serde(default)]
    m1: Option<u32>,
    #[serde(default)]
    m2: Option<u32>,
    #[serde(default)]
    side: Option<Side>,
}

fn parse_json(text: &str) -> Result<Vec<FocalDescriptor>, FactorParseError> {
    let raw: Vec<JsonFactor> =
        serde_json::from_str(text).map_err(|e| FactorParseError::Json(e.to_string()))?;
    if raw.is_empty() {
        return Err(FactorParseError::Empty);
    }
    raw.into_iter()
        .map(|f| {
            let m1 = f.m1.or(f.m).ok_or(FactorParseError::MissingKey {
                offset: 0,
                key: "m (or m1 and m2)",
            })?;
            let m2 = f.m2.or(f.m).unwrap_or(m1);
            focal_descriptor(f.g, m1, m2, f.side.unwrap_or(Side::Plus))
                .map_err(|source| FactorParseError::Family { offset: 0, source })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_factor() {
        let fs = parse_factor_list("g=4,m1=1,m2=2,side=minus").unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].dim, 4);
        assert_eq!(fs[0].side, Side::Minus);
    }

    #[test]
    fn mixed_list_with_whitespace() {
        let fs = parse_factor_list(" g=4 , m1=1 , m2=2 , side=plus ;  g=3, m=2 ; sphere=4 ")
            .unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(fs[0].dim, 5);
        assert_eq!(fs[1].dim, 4);
        assert_eq!(fs[2].dim, 4);
        assert_eq!(fs[2].g, 2);
    }

    #[test]
    fn empty_is_an_error() {
        assert_eq!(parse_factor_list("").unwrap_err(), FactorParseError::Empty);
        assert_eq!(
            parse_factor_list(" ; ; ").unwrap_err(),
            FactorParseError::Empty
        );
    }

    #[test]
    fn bad_g_rejected() {
        match parse_factor_list("g=5,m=1").unwrap_err() {
            FactorParseError::BadG { g, .. } => assert_eq!(g, 5),
            e => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn unknown_key_offset() {
        let err = parse_factor_list("g=3,m=2; g=4,bogus=7").unwrap_err();
        match err {
            FactorParseError::UnknownKey { offset, key } => {
                assert_eq!(key, "bogus");
                assert_eq!(offset, 13);
            }
            e => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn g3_requires_equal_multiplicities() {
        assert!(matches!(
            parse_factor_list("g=3,m1=1,m2=2").unwrap_err(),
            FactorParseError::Family { .. }
        ));
    }

    #[test]
    fn json_form() {
        let fs = parse_factor_list(
            r#"[{"g":4,"m1":1,"m2":2,"side":"minus"},{"g":3,"m":2}]"#,
        )
        .unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].dim, 4);
        assert_eq!(fs[1].dim, 4);
    }
}
