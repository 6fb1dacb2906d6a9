//! Run configuration in a line-oriented `key = value` format:
//!
//! ```text
//! # comment
//! epsilon = 1/12
//! r_probe = 12
//! ```
//!
//! Unknown keys are errors. Keys absent from the file keep their defaults.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::engine::{Limits, ReportSettings};
use crate::error::{Error, Result};
use crate::p2::{Field, DEFAULT_PRIME};
use crate::rational::{parse_pq, serialize_pq, to_pq, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(format!("unknown format {s:?} (json or csv)")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(serialize_with = "serialize_pq")]
    pub epsilon: Rational,
    pub r_probe: u32,
    pub grid_cap: u32,
    pub t_check: u32,
    pub m_max: u32,
    pub denkert_s: u32,
    pub grifo_r_max: u32,
    pub hahu_r_max: u32,
    pub chudnovsky_m_max: u32,
    pub waldschmidt_m_max: u32,
    pub max_escalations: u32,
    pub prime: u64,
    pub seed: u64,
    pub box_cap: u128,
    pub power_cap: usize,
    pub symbolic_cap: usize,
    pub window_pair_cap: u64,
    pub window_work_cap: u64,
    pub format: OutputFormat,
    /// 0 uses the global pool.
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let s = ReportSettings::default();
        RunConfig {
            epsilon: s.epsilon,
            r_probe: s.r_probe,
            grid_cap: s.grid_cap,
            t_check: s.t_check,
            m_max: s.m_max,
            denkert_s: s.denkert_s,
            grifo_r_max: s.grifo_r_max,
            hahu_r_max: s.hahu_r_max,
            chudnovsky_m_max: s.chudnovsky_m_max,
            waldschmidt_m_max: s.waldschmidt_m_max,
            max_escalations: s.max_escalations,
            prime: DEFAULT_PRIME,
            seed: 0,
            box_cap: s.limits.box_cap,
            power_cap: s.limits.power_cap,
            symbolic_cap: s.limits.symbolic_cap,
            window_pair_cap: s.limits.window_pair_cap,
            window_work_cap: s.limits.window_work_cap,
            format: OutputFormat::Json,
            threads: 0,
        }
    }
}

fn num<T: FromStr>(v: &str, line: usize, key: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::parse(line, format!("{key}: expected a nonnegative integer, got {v:?}")))
}

impl RunConfig {
    /// Overlay the keys of `text` on `self`.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (k, v) = body
                .split_once('=')
                .ok_or_else(|| Error::parse(line, "expected `key = value`"))?;
            self.set(k.trim(), v.trim(), line)?;
        }
        self.validate()
    }

    pub fn from_text(text: &str) -> Result<RunConfig> {
        let mut c = RunConfig::default();
        c.apply_text(text)?;
        Ok(c)
    }

    /// Set one key; `line` is used for diagnostics (0 for command-line flags).
    pub fn set(&mut self, key: &str, v: &str, line: usize) -> Result<()> {
        match key {
            "epsilon" => {
                self.epsilon = parse_pq(v).map_err(|_| Error::parse(line, format!("epsilon: not a rational: {v:?}")))?
            }
            "r_probe" => self.r_probe = num(v, line, key)?,
            "grid_cap" => self.grid_cap = num(v, line, key)?,
            "t_check" => self.t_check = num(v, line, key)?,
            "m_max" => self.m_max = num(v, line, key)?,
            "denkert_s" => self.denkert_s = num(v, line, key)?,
            "grifo_r_max" => self.grifo_r_max = num(v, line, key)?,
            "hahu_r_max" => self.hahu_r_max = num(v, line, key)?,
            "chudnovsky_m_max" => self.chudnovsky_m_max = num(v, line, key)?,
            "waldschmidt_m_max" => self.waldschmidt_m_max = num(v, line, key)?,
            "max_escalations" => self.max_escalations = num(v, line, key)?,
            "prime" => self.prime = num(v, line, key)?,
            "seed" => self.seed = num(v, line, key)?,
            "box_cap" => self.box_cap = num(v, line, key)?,
            "power_cap" => self.power_cap = num(v, line, key)?,
            "symbolic_cap" => self.symbolic_cap = num(v, line, key)?,
            "window_pair_cap" => self.window_pair_cap = num(v, line, key)?,
            "window_work_cap" => self.window_work_cap = num(v, line, key)?,
            "format" => self.format = v.parse().map_err(|e: String| Error::parse(line, e))?,
            "threads" => self.threads = num(v, line, key)?,
            _ => return Err(Error::parse(line, format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        use num_traits::Signed;
        if !self.epsilon.is_positive() {
            return Err(Error::Precondition("epsilon must be positive".into()));
        }
        let positive = [
            ("r_probe", self.r_probe as u128),
            ("grid_cap", self.grid_cap as u128),
            ("t_check", self.t_check as u128),
            ("m_max", self.m_max as u128),
            ("denkert_s", self.denkert_s as u128),
            ("box_cap", self.box_cap),
            ("power_cap", self.power_cap as u128),
            ("symbolic_cap", self.symbolic_cap as u128),
            ("window_pair_cap", self.window_pair_cap as u128),
            ("window_work_cap", self.window_work_cap as u128),
        ];
        if let Some((k, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(Error::Precondition(format!("{k} must be positive")));
        }
        Ok(())
    }

    pub fn limits(&self) -> Limits {
        Limits {
            box_cap: self.box_cap,
            power_cap: self.power_cap,
            symbolic_cap: self.symbolic_cap,
            window_pair_cap: self.window_pair_cap,
            window_work_cap: self.window_work_cap,
        }
    }

    pub fn report_settings(&self) -> ReportSettings {
        ReportSettings {
            epsilon: self.epsilon.clone(),
            r_probe: self.r_probe,
            grid_cap: self.grid_cap,
            t_check: self.t_check,
            m_max: self.m_max,
            denkert_s: self.denkert_s,
            grifo_r_max: self.grifo_r_max,
            hahu_r_max: self.hahu_r_max,
            chudnovsky_m_max: self.chudnovsky_m_max,
            waldschmidt_m_max: self.waldschmidt_m_max,
            max_escalations: self.max_escalations,
            limits: self.limits(),
        }
    }

    /// The plane field: `Q` when `rational`, else `F_prime`.
    pub fn field(&self, rational: bool) -> Result<Field> {
        if rational {
            Ok(Field::Rational)
        } else {
            Field::prime(self.prime)
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| out.push_str(&format!("{k} = {v}\n"));
        kv("epsilon", to_pq(&self.epsilon));
        kv("r_probe", self.r_probe.to_string());
        kv("grid_cap", self.grid_cap.to_string());
        kv("t_check", self.t_check.to_string());
        kv("m_max", self.m_max.to_string());
        kv("denkert_s", self.denkert_s.to_string());
        kv("grifo_r_max", self.grifo_r_max.to_string());
        kv("hahu_r_max", self.hahu_r_max.to_string());
        kv("chudnovsky_m_max", self.chudnovsky_m_max.to_string());
        kv("waldschmidt_m_max", self.waldschmidt_m_max.to_string());
        kv("max_escalations", self.max_escalations.to_string());
        kv("prime", self.prime.to_string());
        kv("seed", self.seed.to_string());
        kv("box_cap", self.box_cap.to_string());
        kv("power_cap", self.power_cap.to_string());
        kv("symbolic_cap", self.symbolic_cap.to_string());
        kv("window_pair_cap", self.window_pair_cap.to_string());
        kv("window_work_cap", self.window_work_cap.to_string());
        kv("format", self.format.to_string());
        kv("threads", self.threads.to_string());
        out
    }
}
