//! Sectioned key = value configuration files.
//!
//! ```text
//! [system]
//! kind = iho            # iho | linear | box | quartic1d | radialpower |
//!                       # coupledquartic2d | disk
//! omega = 1.0           # iho
//! dim = 3               # iho, radialpower
//! slopes = 1.0, 1.0     # linear (one entry per axis)
//! length = 1.0          # box
//! c = 0.5               # quartic1d, radialpower
//! p = 4.0               # radialpower
//! kappa = 0.6           # coupledquartic2d
//! radius = 1.0          # disk
//! units = natural       # natural (ħ=m=1) | billiard (ħ²/2m=1)
//!
//! [filling]
//! n = 70                # particle count; or
//! m = 4                 # filled oscillator shells (M); or
//! lambda = 20.0         # continuous Fermi energy (linear potential)
//!
//! [grid]
//! extent = 10.0         # r_max, half-width, or box length
//! points = 2000
//!
//! [checks]
//! theorems = lvt1, lvt_basic, slvt, differential_lvt, ide, 3ode, tf_functional, xi2
//! surface_correction = false
//! xi_mode = tf          # tf | local-average
//! lambda = auto         # auto | shell | tf | weyl | midpoint
//! ```

use anyhow::{anyhow, bail, Context, Result};
use std::collections::BTreeMap;

#[derive(Debug, Default, Clone)]
pub struct Ini {
    sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl Ini {
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Ini::default();
        let mut section = String::from("");
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with('[') && line.ends_with(']') {
                section = line[1..line.len() - 1].trim().to_lowercase();
                out.sections.entry(section.clone()).or_default();
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key = value", lineno + 1))?;
            out.sections
                .entry(section.clone())
                .or_default()
                .insert(k.trim().to_lowercase(), v.trim().to_string());
        }
        Ok(out)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections.get(section)?.get(key).map(|s| s.as_str())
    }

    pub fn f64(&self, section: &str, key: &str) -> Result<Option<f64>> {
        match self.get(section, key) {
            None => Ok(None),
            Some(s) => Ok(Some(
                s.parse::<f64>()
                    .with_context(|| format!("[{section}] {key} = {s} is not a number"))?,
            )),
        }
    }

    pub fn u64(&self, section: &str, key: &str) -> Result<Option<u64>> {
        match self.get(section, key) {
            None => Ok(None),
            Some(s) => Ok(Some(
                s.parse::<u64>()
                    .with_context(|| format!("[{section}] {key} = {s} is not an integer"))?,
            )),
        }
    }

    pub fn bool(&self, section: &str, key: &str) -> Result<Option<bool>> {
        match self.get(section, key) {
            None => Ok(None),
            Some(s) => match s.to_lowercase().as_str() {
                "true" | "yes" | "on" | "1" => Ok(Some(true)),
                "false" | "no" | "off" | "0" => Ok(Some(false)),
                other => bail!("[{section}] {key} = {other} is not a boolean"),
            },
        }
    }

    pub fn list(&self, section: &str, key: &str) -> Option<Vec<String>> {
        self.get(section, key).map(|s| {
            s.split(',')
                .map(|t| t.trim().to_lowercase())
                .filter(|t| !t.is_empty())
                .collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sections_comments_and_lists() {
        let text = "\n# comment\n[System]\nkind = iho   # inline\nomega = 2.5\n\n[checks]\ntheorems = lvt1, slvt\nsurface_correction = true\n";
        let ini = Ini::parse(text).unwrap();
        assert_eq!(ini.get("system", "kind"), Some("iho"));
        assert_eq!(ini.f64("system", "omega").unwrap(), Some(2.5));
        assert_eq!(ini.list("checks", "theorems").unwrap(), vec!["lvt1", "slvt"]);
        assert_eq!(ini.bool("checks", "surface_correction").unwrap(), Some(true));
        assert!(ini.get("system", "missing").is_none());
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(Ini::parse("[s]\nnonsense without equals\n").is_err());
    }
}
