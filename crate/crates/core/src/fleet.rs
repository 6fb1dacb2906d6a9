//! Batch reports over a list of scheme files, summarized as CSV.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::engine::{resurgence_report, ReportSettings, ResurgenceReport};
use crate::error::{Error, Result};
use crate::fatpoints::{parse_scheme, MonomialFatScheme};
use crate::par;
use crate::rational::to_pq;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FleetEntry {
    pub name: String,
    pub path: PathBuf,
}

/// Scheme paths, one per line, resolved against the fleet file's directory.
pub fn read_fleet(path: &Path) -> Result<Vec<FleetEntry>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            let p = base.join(l);
            let name = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| l.to_string());
            FleetEntry { name, path: p }
        })
        .collect())
}

pub fn load_scheme(path: &Path) -> Result<MonomialFatScheme> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_scheme(&text)
}

const BUILTIN: [(&str, &str); 6] = [
    ("three_points_p2", include_str!("../fleet/three_points_p2.scheme")),
    ("vertices_n2", include_str!("../fleet/vertices_n2.scheme")),
    ("vertices_n3", include_str!("../fleet/vertices_n3.scheme")),
    ("point_p3", include_str!("../fleet/point_p3.scheme")),
    ("four_points_p3", include_str!("../fleet/four_points_p3.scheme")),
    ("fat_points_122_p2", include_str!("../fleet/fat_points_122_p2.scheme")),
];

/// The six schemes shipped in `fleet/`.
pub fn builtin_fleet() -> Vec<(&'static str, MonomialFatScheme)> {
    BUILTIN
        .iter()
        .map(|(name, text)| (*name, parse_scheme(text).expect("bundled scheme parses")))
        .collect()
}

/// One CSV row; every field is empty when `error` is set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FleetRow {
    pub name: String,
    pub ambient: String,
    pub big_height: String,
    pub alpha: String,
    pub waldschmidt: String,
    pub rho_hat: String,
    pub rho_hat_certified: String,
    pub rho: String,
    pub rho_int: String,
    #[serde(rename = "K")]
    pub k: String,
    pub epsilon_used: String,
    pub consistent: String,
    pub findings: String,
    pub resource_exhausted: String,
    pub error: String,
}

const HEADER: [&str; 15] = [
    "name",
    "ambient",
    "big_height",
    "alpha",
    "waldschmidt",
    "rho_hat",
    "rho_hat_certified",
    "rho",
    "rho_int",
    "K",
    "epsilon_used",
    "consistent",
    "findings",
    "resource_exhausted",
    "error",
];

impl FleetRow {
    pub fn from_report(r: &ResurgenceReport) -> Self {
        let opt = |b: &Option<crate::engine::Bracket>| b.as_ref().map(|b| b.to_string()).unwrap_or_default();
        FleetRow {
            name: r.scheme.clone(),
            ambient: r.ambient.to_string(),
            big_height: r.big_height.to_string(),
            alpha: r.alpha.to_string(),
            waldschmidt: to_pq(&r.waldschmidt),
            rho_hat: to_pq(&r.rho_hat.value),
            rho_hat_certified: r.rho_hat.certified().to_string(),
            rho: opt(&r.rho),
            rho_int: opt(&r.rho_int),
            k: opt(&r.k),
            epsilon_used: r.epsilon_used.as_ref().map(to_pq).unwrap_or_default(),
            consistent: r.consistent().to_string(),
            findings: r.notes.iter().filter(|n| n.starts_with("FINDING")).count().to_string(),
            resource_exhausted: r.resource_exhausted.to_string(),
            error: String::new(),
        }
    }

    fn failed(name: &str, e: &Error) -> Self {
        FleetRow {
            name: name.to_string(),
            error: e.to_string(),
            ..FleetRow::default()
        }
    }
}

/// Reports in input order; a failing entry becomes an error row.
pub fn run_fleet(entries: &[FleetEntry], settings: &ReportSettings) -> Vec<(FleetRow, Option<ResurgenceReport>)> {
    par::map(entries, |e| {
        match load_scheme(&e.path).and_then(|z| resurgence_report(&z, &e.name, settings)) {
            Ok(r) => (FleetRow::from_report(&r), Some(r)),
            Err(err) => (FleetRow::failed(&e.name, &err), None),
        }
    })
}

pub fn write_csv<W: Write>(rows: &[FleetRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    let io = |e: csv::Error| Error::Io {
        path: "<csv>".into(),
        msg: e.to_string(),
    };
    w.write_record(HEADER).map_err(io)?;
    for r in rows {
        w.serialize(r).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io {
        path: "<csv>".into(),
        msg: e.to_string(),
    })
}

pub fn csv_string(rows: &[FleetRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fleet_dir() -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("fleet")
    }

    #[test]
    fn bundled_fleet_matches_files() {
        let entries = read_fleet(&fleet_dir().join("acceptance.fleet")).unwrap();
        let builtin = builtin_fleet();
        assert_eq!(entries.len(), 6);
        for (e, (name, z)) in entries.iter().zip(&builtin) {
            assert_eq!(&e.name, name);
            assert_eq!(&load_scheme(&e.path).unwrap(), z);
        }
    }

    #[test]
    fn empty_fleet_is_header_only() {
        let csv = csv_string(&[]).unwrap();
        assert_eq!(csv.lines().count(), 1);
        assert!(csv.starts_with("name,ambient,"));
    }

    #[test]
    fn bad_entry_is_isolated() {
        let dir = std::env::temp_dir().join(format!("fleet-test-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        fs::write(dir.join("ok.scheme"), BUILTIN[1].1).unwrap();
        fs::write(dir.join("bad.scheme"), "ambient: 2\nprime: 7 mult: 1\n").unwrap();
        fs::write(dir.join("list.fleet"), "ok.scheme\nbad.scheme\nmissing.scheme\n").unwrap();
        let entries = read_fleet(&dir.join("list.fleet")).unwrap();
        let rows: Vec<FleetRow> = run_fleet(&entries, &ReportSettings::default()).into_iter().map(|r| r.0).collect();
        assert_eq!(rows.len(), 3);
        assert!(rows[0].error.is_empty());
        assert_eq!(rows[0].rho, "1/1");
        assert!(rows[1].error.contains("line 2"));
        assert!(!rows[2].error.is_empty());
        let csv = csv_string(&rows).unwrap();
        assert_eq!(csv.lines().count(), 4);
        fs::remove_dir_all(&dir).unwrap();
    }
}
