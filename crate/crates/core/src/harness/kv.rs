// SPDX-License-Identifier: Apache-2.0

//! Flat `key=value` config text: one pair per line, `#` starts a comment.

use std::str::FromStr;

use crate::error::{Error, Result};

pub fn pairs(text: &str) -> Result<Vec<(&str, &str)>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key=value", lineno + 1)))?;
        let key = key.trim();
        if out.iter().any(|&(k, _)| k == key) {
            return Err(Error::Config(format!("duplicate key `{key}`")));
        }
        out.push((key, value.trim()));
    }
    Ok(out)
}

pub fn parse<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| Error::Config(format!("`{key}`: cannot parse `{value}`: {e}")))
}
