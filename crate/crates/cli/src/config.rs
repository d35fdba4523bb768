//! Optional defaults file: one `key = value` per line, keys named after the
//! long flags (`m`, `modulus`, `cubic`, `emit`, `samples`, `seed`, `trials`,
//! `kind`, `bind`, `exhaustive`, `ignore-hypothesis`, `large`). `#` starts a
//! comment; values may be wrapped in double quotes. Flags given on the
//! command line win over the file.

use std::collections::BTreeMap;
use std::path::Path;

pub const KEYS: &[&str] = &[
    "m",
    "modulus",
    "cubic",
    "emit",
    "samples",
    "seed",
    "trials",
    "kind",
    "bind",
    "exhaustive",
    "ignore-hypothesis",
    "large",
];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config(BTreeMap<String, String>);

impl Config {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut map = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected key = value", n + 1))?;
            let k = k.trim().replace('_', "-");
            if !KEYS.contains(&k.as_str()) {
                return Err(format!("line {}: unknown key {k:?}", n + 1));
            }
            let v = v.trim();
            let v = v.strip_prefix('"').and_then(|s| s.strip_suffix('"')).unwrap_or(v);
            map.insert(k, v.to_string());
        }
        Ok(Config(map))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    /// Boolean key; accepts `true`/`false`.
    pub fn flag(&self, key: &str) -> Result<bool, String> {
        match self.get(key) {
            None | Some("false") => Ok(false),
            Some("true") => Ok(true),
            Some(v) => Err(format!("{key}: expected true or false, got {v:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_comments_and_quotes() {
        let c =
            Config::parse("# campaign\nm = 2..4\nseed=7 # fixed\nemit = \"csv\"\nignore_hypothesis = true\n").unwrap();
        assert_eq!(c.get("m"), Some("2..4"));
        assert_eq!(c.get("seed"), Some("7"));
        assert_eq!(c.get("emit"), Some("csv"));
        assert!(c.flag("ignore-hypothesis").unwrap());
        assert!(!c.flag("large").unwrap());
    }

    #[test]
    fn rejects_unknown_keys_and_bad_lines() {
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("m 2").is_err());
        assert!(Config::parse("large = yes").unwrap().flag("large").is_err());
    }
}
