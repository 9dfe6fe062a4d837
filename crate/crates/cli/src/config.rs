//! Flat `key = value` run configuration.
//!
//! Every command accepts `--config <file>`; values from the file seed the run
//! and explicit command-line flags win over them. Unknown keys are rejected.
//! `to_kv` and `parse` round-trip exactly.

use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    pub command: String,
    pub regularizer: Option<String>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub total_flow: Option<f64>,
    pub epsilon: Option<f64>,
    pub x0: Option<f64>,
    pub seeds: Option<Vec<f64>>,
    pub transient: Option<usize>,
    pub keep: Option<usize>,
    pub n: Option<usize>,
    pub n_max: Option<usize>,
    pub a_min: Option<f64>,
    pub a_max: Option<f64>,
    pub steps: Option<usize>,
    pub grid: Option<usize>,
    pub power: Option<u32>,
    pub odd_n: Option<u32>,
    pub witness: Option<(f64, f64)>,
    pub max_period: Option<usize>,
    pub tol: Option<f64>,
    pub threshold: Option<f64>,
    pub x: Option<f64>,
    pub out: Option<PathBuf>,
    pub compare_out: Option<PathBuf>,
    pub format: Option<String>,
    pub serial: Option<bool>,
    pub quick: Option<bool>,
    pub criterion: Option<String>,
}

#[derive(Debug)]
pub struct ConfigError {
    pub message: String,
    pub parameter: String,
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config: {} (key {:?})", self.message, self.parameter)
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    /// Serialize as flat key = value lines; parsing the result reproduces
    /// this config exactly.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command = {}", self.command);
        let mut put_str = |k: &str, v: &Option<String>| {
            if let Some(v) = v {
                let _ = writeln!(s, "{k} = {v}");
            }
        };
        put_str("regularizer", &self.regularizer);
        macro_rules! put {
            ($k:ident) => {
                if let Some(v) = &self.$k {
                    let _ = writeln!(s, "{} = {}", stringify!($k), v);
                }
            };
        }
        put!(a);
        put!(b);
        put!(alpha);
        put!(beta);
        put!(total_flow);
        put!(epsilon);
        put!(x0);
        if let Some(seeds) = &self.seeds {
            let joined: Vec<String> = seeds.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "seeds = {}", joined.join(","));
        }
        put!(transient);
        put!(keep);
        put!(n);
        put!(n_max);
        put!(a_min);
        put!(a_max);
        put!(steps);
        put!(grid);
        put!(power);
        put!(odd_n);
        if let Some((u, v)) = &self.witness {
            let _ = writeln!(s, "witness = {u},{v}");
        }
        put!(max_period);
        put!(tol);
        put!(threshold);
        put!(x);
        if let Some(p) = &self.out {
            let _ = writeln!(s, "out = {}", p.display());
        }
        if let Some(p) = &self.compare_out {
            let _ = writeln!(s, "compare_out = {}", p.display());
        }
        if let Some(v) = &self.format {
            let _ = writeln!(s, "format = {v}");
        }
        put!(serial);
        put!(quick);
        if let Some(v) = &self.criterion {
            let _ = writeln!(s, "criterion = {v}");
        }
        s
    }

    /// Parse flat key = value text. Blank lines and `#` comments are
    /// allowed; unknown or duplicate keys are errors.
    pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::default();
        let mut seen: Vec<String> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError {
                message: format!("line {} is not key = value: {raw:?}", lineno + 1),
                parameter: raw.to_string(),
            })?;
            let key = key.trim();
            let value = value.trim();
            if seen.iter().any(|k| k == key) {
                return Err(ConfigError {
                    message: "duplicate key".into(),
                    parameter: key.to_string(),
                });
            }
            seen.push(key.to_string());
            let bad = |msg: &str| ConfigError {
                message: format!("{msg}: {value:?}"),
                parameter: key.to_string(),
            };
            macro_rules! num {
                ($t:ty) => {
                    Some(value.parse::<$t>().map_err(|_| bad("not a number"))?)
                };
            }
            match key {
                "command" => cfg.command = value.to_string(),
                "regularizer" => cfg.regularizer = Some(value.to_string()),
                "a" => cfg.a = num!(f64),
                "b" => cfg.b = num!(f64),
                "alpha" => cfg.alpha = num!(f64),
                "beta" => cfg.beta = num!(f64),
                "total_flow" => cfg.total_flow = num!(f64),
                "epsilon" => cfg.epsilon = num!(f64),
                "x0" => cfg.x0 = num!(f64),
                "seeds" => cfg.seeds = Some(parse_list(value).map_err(|m| bad(&m))?),
                "transient" => cfg.transient = num!(usize),
                "keep" => cfg.keep = num!(usize),
                "n" => cfg.n = num!(usize),
                "n_max" => cfg.n_max = num!(usize),
                "a_min" => cfg.a_min = num!(f64),
                "a_max" => cfg.a_max = num!(f64),
                "steps" => cfg.steps = num!(usize),
                "grid" => cfg.grid = num!(usize),
                "power" => cfg.power = num!(u32),
                "odd_n" => cfg.odd_n = num!(u32),
                "witness" => {
                    let vals = parse_list(value).map_err(|m| bad(&m))?;
                    if vals.len() != 2 {
                        return Err(bad("witness needs exactly two endpoints"));
                    }
                    cfg.witness = Some((vals[0], vals[1]));
                }
                "max_period" => cfg.max_period = num!(usize),
                "tol" => cfg.tol = num!(f64),
                "threshold" => cfg.threshold = num!(f64),
                "x" => cfg.x = num!(f64),
                "out" => cfg.out = Some(PathBuf::from(value)),
                "compare_out" => cfg.compare_out = Some(PathBuf::from(value)),
                "format" => cfg.format = Some(value.to_string()),
                "serial" => cfg.serial = Some(value.parse().map_err(|_| bad("not a bool"))?),
                "quick" => cfg.quick = Some(value.parse().map_err(|_| bad("not a bool"))?),
                "criterion" => cfg.criterion = Some(value.to_string()),
                _ => {
                    return Err(ConfigError {
                        message: "unknown key".into(),
                        parameter: key.to_string(),
                    })
                }
            }
        }
        Ok(cfg)
    }
}

pub fn parse_list(value: &str) -> Result<Vec<f64>, String> {
    value
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| format!("cannot parse {:?} as a number", v.trim()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_roundtrip_is_identity() {
        let cfg = RunConfig {
            command: "bifurcate".into(),
            regularizer: Some("hct:q=0.5".into()),
            b: Some(0.61),
            a_min: Some(4.04),
            a_max: Some(12.0),
            steps: Some(200),
            transient: Some(4000),
            keep: Some(200),
            seeds: Some(vec![0.1, 0.9]),
            witness: Some((0.9559, 0.956)),
            out: Some(PathBuf::from("ds.csv")),
            serial: Some(true),
            ..RunConfig::default()
        };
        let text = cfg.to_kv();
        let back = RunConfig::parse(&text).unwrap();
        assert_eq!(back, cfg);
        // and a second round for fixpoint
        assert_eq!(back.to_kv(), text);
    }

    #[test]
    fn parse_rejects_unknown_and_duplicates() {
        assert!(RunConfig::parse("命 = x").is_err());
        assert!(RunConfig::parse("frobnicate = 3").is_err());
        assert!(RunConfig::parse("a = 1\na = 2").is_err());
        assert!(RunConfig::parse("a = one").is_err());
        assert!(RunConfig::parse("witness = 0.1").is_err());
    }

    #[test]
    fn parse_allows_comments_and_blanks() {
        let cfg = RunConfig::parse("# run\n\ncommand = orbit\na = 2\n").unwrap();
        assert_eq!(cfg.command, "orbit");
        assert_eq!(cfg.a, Some(2.0));
    }
}
