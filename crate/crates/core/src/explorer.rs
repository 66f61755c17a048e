//! Parameter scans over two-real-dimensional slices, with line-delimited
//! output and heatmap rendering.
//!
//! Output files start with a header line holding the config and its
//! SHA-256; each further line is one [`ScanRecord`] in cell order. Records
//! depend only on the config and the cell, so a run can be resumed from any
//! prefix and reproduces the same bytes.

use crate::cascade::{self, budget_for, fit_epsilon, CascadeOptions, CommutatorLevel, Expansion, SampleSpec};
use crate::fatou::{certify_monotone_escape, diagonal_escape_root};
use crate::fixed::{property_p_screen, SeedStrategy};
use crate::infinity::{build_gamma_ij, escape_cascade, GammaStyle};
use crate::params::ParameterQuadruple;
use crate::sampling::Domain;
use crate::scalar::Precision;
use crate::surface::on_surface;
use crate::{re, Error, Point, Result, C64};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

/// The two real coordinates of a scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum SliceSpec {
    /// Dubrovin–Mazzocco parameter `a` against an offset added to `D`.
    Dm { a: [f64; 2], d_offset: [f64; 2] },
    /// `A = B = C = 0` with `D = re + i·im`.
    Torus { re: [f64; 2], im: [f64; 2] },
}

fn axis_value(range: [f64; 2], i: usize, n: usize) -> f64 {
    if n <= 1 {
        range[0]
    } else {
        range[0] + (range[1] - range[0]) * i as f64 / (n - 1) as f64
    }
}

impl SliceSpec {
    /// Slice coordinates of a cell (inclusive endpoints).
    pub fn coords(&self, cell: [usize; 2], grid: [usize; 2]) -> [f64; 2] {
        let (r0, r1) = match self {
            SliceSpec::Dm { a, d_offset } => (*a, *d_offset),
            SliceSpec::Torus { re, im } => (*re, *im),
        };
        [axis_value(r0, cell[0], grid[0]), axis_value(r1, cell[1], grid[1])]
    }

    pub fn params(&self, coords: [f64; 2]) -> ParameterQuadruple {
        match self {
            SliceSpec::Dm { .. } => {
                let (p, _) = ParameterQuadruple::dm(coords[0]);
                ParameterQuadruple { d: p.d + coords[1], ..p }
            }
            SliceSpec::Torus { .. } => ParameterQuadruple::torus(C64::new(coords[0], coords[1])),
        }
    }
}

fn default_precision() -> Precision {
    Precision::Auto
}

/// Everything that determines the output of a scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub slice: SliceSpec,
    /// Cells along each slice coordinate.
    pub grid: [usize; 2],
    pub fatou_depth: usize,
    pub cascade_levels: u32,
    pub cascade_samples: usize,
    /// Starting radius for the cascade, halved until the seeds fit.
    pub cascade_epsilon: f64,
    /// Near-return tolerance and cap for Dubrovin–Mazzocco seeds.
    pub dm_tau: f64,
    pub dm_k_cap: u64,
    pub escape_levels: u32,
    pub property_p_len: usize,
    #[serde(default = "default_precision")]
    pub precision: Precision,
    pub seed: u64,
    /// Record per-cell wall time; this breaks byte reproducibility.
    #[serde(default)]
    pub wall_time: bool,
    /// Worker threads (0 = all cores). Not part of the hash.
    #[serde(default, skip_serializing)]
    pub workers: usize,
}

impl RunConfig {
    /// A small default configuration over the given slice.
    pub fn new(slice: SliceSpec, grid: [usize; 2]) -> Self {
        RunConfig {
            slice,
            grid,
            fatou_depth: 8,
            cascade_levels: 2,
            cascade_samples: 128,
            cascade_epsilon: 0.05,
            dm_tau: 0.025,
            dm_k_cap: 2000,
            escape_levels: 1,
            property_p_len: 4,
            precision: Precision::Auto,
            seed: 0,
            wall_time: false,
            workers: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid[0] == 0 || self.grid[1] == 0 {
            return Err(Error::InvalidInput("grid dimensions must be positive".into()));
        }
        if !(self.cascade_epsilon > 0.0 && self.dm_tau > 0.0) {
            return Err(Error::InvalidInput("cascade radius and tolerance must be positive".into()));
        }
        Ok(())
    }

    /// Hex SHA-256 of the canonical JSON serialization.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        Sha256::digest(json.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn cells(&self) -> impl Iterator<Item = [usize; 2]> + '_ {
        (0..self.grid[1]).flat_map(move |j| (0..self.grid[0]).map(move |i| [i, j]))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FatouSummary {
    /// `Certified`, `FailedWithWitness`, `Inconclusive`, or the error that
    /// prevented seeding.
    pub status: String,
    pub root: Option<String>,
    pub words_checked: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CascadeSummary {
    /// `decay_ok`, `decay_failed`, or an error.
    pub status: String,
    pub epsilon: Option<f64>,
    pub k: Option<u64>,
    /// Near-return tolerance that produced the seed.
    pub tau: Option<f64>,
    /// Largest measured displacement per level.
    pub level_sups: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EscapeSummary {
    pub status: String,
    pub verified_levels: u32,
    pub ln_lambda: Option<f64>,
}

/// One scanned cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub cell_id: [usize; 2],
    pub grid: [usize; 2],
    pub coords: [f64; 2],
    pub params: ParameterQuadruple,
    pub fatou: FatouSummary,
    pub cascade: CascadeSummary,
    pub escape: EscapeSummary,
    /// Flagged fixed points, or `None` if the screen failed.
    pub property_p_flags: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

/// First line of a scan file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanHeader {
    pub config_hash: String,
    pub config: RunConfig,
}

fn cell_seed(config: &RunConfig, cell: [usize; 2]) -> u64 {
    let idx = (cell[1] * config.grid[0] + cell[0]) as u64;
    config.seed ^ idx.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn fatou_cell(p: &ParameterQuadruple, depth: usize) -> FatouSummary {
    match diagonal_escape_root(p) {
        Ok(u) => {
            let c = certify_monotone_escape(p, &[u, u, u], depth);
            FatouSummary { status: format!("{:?}", c.status), root: Some(crate::cfmt::format_c64(u)), words_checked: c.words_checked }
        }
        Err(e) => FatouSummary { status: error_tag(&e), root: None, words_checked: 0 },
    }
}

fn error_tag(e: &Error) -> String {
    let s = format!("{e:?}");
    s.split(['(', ' ', '{']).next().unwrap_or("Error").to_string()
}

fn cascade_cell(config: &RunConfig, p: &ParameterQuadruple, cell: [usize; 2], coords: [f64; 2]) -> CascadeSummary {
    let fail = |e: &Error, k, tau| CascadeSummary { status: error_tag(e), epsilon: None, k, tau, level_sups: vec![] };
    let seed = cell_seed(config, cell) as u32;
    let run = |level0: &CommutatorLevel, center: &Point| -> Result<(f64, cascade::CascadeReport)> {
        let domain = if on_surface(p, center, 1e-12) { Domain::Surface } else { Domain::Ambient };
        let spec = SampleSpec { samples: config.cascade_samples, domain, precision: config.precision, seed };
        let eps = fit_epsilon(level0, p, center, config.cascade_epsilon, &spec, 40)?;
        let opts = CascadeOptions { sample: spec, expansion: Expansion::Canonical };
        Ok((eps, cascade::run_cascade(level0, p, &budget_for(eps), center, config.cascade_levels, &opts)?))
    };
    let summary = |(eps, r): (f64, cascade::CascadeReport), k, tau| CascadeSummary {
        status: if r.decay_ok { "decay_ok" } else { "decay_failed" }.into(),
        epsilon: Some(eps),
        k,
        tau,
        level_sups: r.level_sups(),
    };
    match &config.slice {
        SliceSpec::Dm { .. } => {
            // conjugating by g_y can spoil the near-return of g_x^k, so the
            // tolerance is tightened until both seeds fit the budget
            let center = cascade::dm_p1(coords[0]);
            let mut tau = config.dm_tau;
            let mut last = None;
            for _ in 0..4 {
                match cascade::seed_dm_with_cap(coords[0], tau, config.dm_k_cap) {
                    Ok(s) => match run(&s.level, &center) {
                        Ok(r) => return summary(r, Some(s.k), Some(tau)),
                        Err(e @ Error::SeedTooLoose { .. }) => last = Some(fail(&e, Some(s.k), Some(tau))),
                        Err(e) => return fail(&e, Some(s.k), Some(tau)),
                    },
                    Err(e) => return last.unwrap_or_else(|| fail(&e, None, Some(tau))),
                }
                tau /= 2.0;
            }
            last.expect("at least one attempt")
        }
        SliceSpec::Torus { .. } => match run(&cascade::seed_markoff(p), &[re(0.0); 3]) {
            Ok(r) => summary(r, None, None),
            Err(e) => fail(&e, None, None),
        },
    }
}

/// Point of the surface near the vertex `v₁`: `(x, t, t)` with `x` the
/// large root, so that both chart coordinates are about `1/t`.
fn escape_start(p: &ParameterQuadruple, t: f64) -> Point {
    let (y, z) = (re(t), re(t));
    let b = y * z - p.a;
    let c = y * y + z * z - p.b * y - p.c * z - p.d;
    let (r1, r2) = crate::poly::quadratic_roots(re(1.0), b, c);
    [if r1.norm() >= r2.norm() { r1 } else { r2 }, y, z]
}

fn escape_cell(config: &RunConfig, p: &ParameterQuadruple) -> EscapeSummary {
    let q = escape_start(p, 1e3);
    match escape_cascade(p, &build_gamma_ij(GammaStyle::MarkoffCommutators), &q, config.escape_levels) {
        Ok(c) => EscapeSummary { status: "verified".into(), verified_levels: c.verified_levels, ln_lambda: Some(c.ln_lambda) },
        Err(e) => EscapeSummary { status: error_tag(&e), verified_levels: 0, ln_lambda: None },
    }
}

/// Runs every module summary for one cell.
pub fn scan_cell(config: &RunConfig, cell: [usize; 2]) -> ScanRecord {
    let start = std::time::Instant::now();
    let coords = config.slice.coords(cell, config.grid);
    let p = config.slice.params(coords);
    let fatou = fatou_cell(&p, config.fatou_depth);
    let cascade = cascade_cell(config, &p, cell, coords);
    let escape = escape_cell(config, &p);
    let strategy = SeedStrategy { seed: cell_seed(config, cell), ..SeedStrategy::light() };
    let property_p_flags = property_p_screen(&p, config.property_p_len, &strategy).ok().map(|v| v.len());
    let wall_time = config.wall_time.then(|| start.elapsed().as_secs_f64());
    ScanRecord { cell_id: cell, grid: config.grid, coords, params: p, fatou, cascade, escape, property_p_flags, wall_time }
}

/// Outcome of [`scan`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSummary {
    pub config_hash: String,
    pub cells_total: usize,
    pub cells_written: usize,
    pub cells_skipped: usize,
}

/// Reads a scan file, dropping a trailing partial line.
pub fn read_scan(path: &Path) -> Result<(ScanHeader, Vec<ScanRecord>)> {
    let text = std::fs::read_to_string(path)?;
    let complete = match text.rfind('\n') {
        Some(i) => &text[..=i],
        None => "",
    };
    let mut lines = complete.lines();
    let header: ScanHeader = serde_json::from_str(lines.next().ok_or(Error::EmptyInput)?).map_err(|e| Error::Parse(e.to_string()))?;
    let records = lines
        .filter(|l| !l.is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| Error::Parse(e.to_string())))
        .collect::<Result<Vec<ScanRecord>>>()?;
    Ok((header, records))
}

/// Scans the slice and writes the records to `out`. With `resume`, an
/// existing file with the same config hash is continued; cells already
/// present are skipped.
pub fn scan(config: &RunConfig, out: &Path, resume: bool) -> Result<ScanSummary> {
    config.validate()?;
    let hash = config.hash();
    let cells: Vec<[usize; 2]> = config.cells().collect();
    let mut done = std::collections::HashSet::new();
    let mut file = if resume && out.exists() {
        let (header, records) = read_scan(out)?;
        if header.config_hash != hash {
            return Err(Error::InvalidInput(format!("{} was written by config {}, not {hash}", out.display(), header.config_hash)));
        }
        done.extend(records.iter().map(|r| r.cell_id));
        // cut a partial last line before appending
        let text = std::fs::read_to_string(out)?;
        let keep = text.rfind('\n').map_or(0, |i| i + 1);
        let f = OpenOptions::new().write(true).open(out)?;
        f.set_len(keep as u64)?;
        drop(f);
        OpenOptions::new().append(true).open(out)?
    } else {
        let mut f = File::create(out)?;
        let header = ScanHeader { config_hash: hash.clone(), config: config.clone() };
        writeln!(f, "{}", serde_json::to_string(&header).map_err(|e| Error::Io(e.to_string()))?)?;
        f
    };
    let todo: Vec<[usize; 2]> = cells.iter().copied().filter(|c| !done.contains(c)).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.workers).build().map_err(|e| Error::Io(e.to_string()))?;
    let chunk = 4 * pool.current_num_threads().max(1);
    for batch in todo.chunks(chunk) {
        let records: Vec<ScanRecord> = pool.install(|| batch.par_iter().map(|&c| scan_cell(config, c)).collect());
        for r in records {
            writeln!(file, "{}", serde_json::to_string(&r).map_err(|e| Error::Io(e.to_string()))?)?;
        }
        file.flush()?;
    }
    Ok(ScanSummary { config_hash: hash, cells_total: cells.len(), cells_written: todo.len(), cells_skipped: cells.len() - todo.len() })
}

/// Scalar fields a heatmap can show.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeatField {
    /// Largest displacement at the given cascade level (log10).
    CascadeLevel(usize),
    /// 1 for a certified Fatou seed, 0 otherwise.
    FatouCertified,
    FatouWords,
    EscapeLnLambda,
    PropertyPFlags,
}

impl std::str::FromStr for HeatField {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if let Some(n) = s.strip_prefix("cascade:") {
            return n.parse().map(HeatField::CascadeLevel).map_err(|_| Error::Parse(format!("bad cascade level in {s:?}")));
        }
        match s {
            "fatou" => Ok(HeatField::FatouCertified),
            "fatou-words" => Ok(HeatField::FatouWords),
            "escape" => Ok(HeatField::EscapeLnLambda),
            "property-p" => Ok(HeatField::PropertyPFlags),
            _ => Err(Error::Parse(format!("unknown field {s:?}; expected cascade:N, fatou, fatou-words, escape or property-p"))),
        }
    }
}

impl HeatField {
    pub fn value(&self, r: &ScanRecord) -> Option<f64> {
        match self {
            HeatField::CascadeLevel(n) => r.cascade.level_sups.get(*n).map(|v| v.log10()).filter(|v| v.is_finite()),
            HeatField::FatouCertified => Some(if r.fatou.status == "Certified" { 1.0 } else { 0.0 }),
            HeatField::FatouWords => Some(r.fatou.words_checked as f64),
            HeatField::EscapeLnLambda => r.escape.ln_lambda,
            HeatField::PropertyPFlags => r.property_p_flags.map(|n| n as f64),
        }
    }
}

/// An RGB image, row-major from the top-left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pixmap {
    pub width: usize,
    pub height: usize,
    pub rgb: Vec<[u8; 3]>,
}

impl Pixmap {
    /// Binary PPM (`P6`).
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        for px in &self.rgb {
            out.extend_from_slice(px);
        }
        out
    }

    pub fn write_ppm(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_ppm())?;
        Ok(())
    }
}

/// Color for `t ∈ [0, 1]`: red rises linearly from 0 to 255 while blue
/// falls from 255 to 0; green is fixed at 64. Missing values are black.
pub fn ramp(t: Option<f64>) -> [u8; 3] {
    match t {
        Some(t) => {
            let t = t.clamp(0.0, 1.0);
            [(255.0 * t).round() as u8, 64, (255.0 * (1.0 - t)).round() as u8]
        }
        None => [0, 0, 0],
    }
}

/// One pixel per cell: `x` is the first slice coordinate, `y` the second
/// (increasing downwards). Values are scaled linearly between their minimum
/// and maximum; a constant field maps to the low end of the ramp.
pub fn heatmap(records: &[ScanRecord], field: HeatField) -> Result<Pixmap> {
    let first = records.first().ok_or(Error::EmptyInput)?;
    let grid = first.grid;
    if let Some(r) = records.iter().find(|r| r.grid != grid || r.cell_id[0] >= grid[0] || r.cell_id[1] >= grid[1]) {
        return Err(Error::MixedGrids(format!("cell {:?} of grid {:?} does not fit grid {:?}", r.cell_id, r.grid, grid)));
    }
    let mut values = vec![None; grid[0] * grid[1]];
    for r in records {
        values[r.cell_id[1] * grid[0] + r.cell_id[0]] = field.value(r);
    }
    let (lo, hi) = values.iter().flatten().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let span = hi - lo;
    let rgb = values.iter().map(|v| ramp(v.map(|v| if span > 0.0 { (v - lo) / span } else { 0.0 }))).collect();
    Ok(Pixmap { width: grid[0], height: grid[1], rgb })
}

/// Reads the records of a scan file and renders one field.
pub fn heatmap_from_file(path: &Path, field: HeatField) -> Result<Pixmap> {
    let reader = BufReader::new(File::open(path)?);
    let mut records = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if i == 0 || line.is_empty() {
            continue;
        }
        records.push(serde_json::from_str(&line).map_err(|e| Error::Parse(e.to_string()))?);
    }
    heatmap(&records, field)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(slice: SliceSpec, grid: [usize; 2]) -> RunConfig {
        RunConfig {
            fatou_depth: 4,
            cascade_levels: 1,
            cascade_samples: 32,
            property_p_len: 2,
            ..RunConfig::new(slice, grid)
        }
    }

    #[test]
    fn slice_coordinates() {
        let s = SliceSpec::Dm { a: [-1.0, 1.0], d_offset: [0.0, 0.0] };
        assert_eq!(s.coords([0, 0], [3, 1]), [-1.0, 0.0]);
        assert_eq!(s.coords([2, 0], [3, 1]), [1.0, 0.0]);
        let p = s.params([-2.0, 0.0]);
        assert_eq!(p, ParameterQuadruple::picard());
    }

    #[test]
    fn hash_ignores_workers() {
        let a = tiny(SliceSpec::Torus { re: [0.0, 10.0], im: [0.0, 0.0] }, [2, 1]);
        let b = RunConfig { workers: 3, ..a.clone() };
        assert_eq!(a.hash(), b.hash());
        let c = RunConfig { seed: 1, ..a.clone() };
        assert_ne!(a.hash(), c.hash());
    }

    #[test]
    fn picard_cell_has_no_escape_root() {
        let cfg = tiny(SliceSpec::Dm { a: [-2.0, -2.0], d_offset: [0.0, 0.0] }, [1, 1]);
        let r = scan_cell(&cfg, [0, 0]);
        assert_eq!(r.fatou.status, "NoEscapeRoot");
    }

    #[test]
    fn dm_cell_summaries() {
        let cfg = tiny(SliceSpec::Dm { a: [0.0, 0.0], d_offset: [0.0, 0.0] }, [1, 1]);
        let r = scan_cell(&cfg, [0, 0]);
        assert_eq!(r.fatou.status, "Certified");
        assert_eq!(r.cascade.status, "decay_ok", "{:?}", r.cascade);
        assert_eq!(r.cascade.k, Some(2));
        assert_eq!(r.escape.status, "verified");
        assert!(r.wall_time.is_none());
    }

    #[test]
    fn scan_is_deterministic_and_resumable() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = tiny(SliceSpec::Torus { re: [-3.0, 10.0], im: [0.0, 2.0] }, [2, 2]);
        let full = dir.path().join("full.jsonl");
        scan(&cfg, &full, false).unwrap();
        let again = dir.path().join("again.jsonl");
        scan(&RunConfig { workers: 1, ..cfg.clone() }, &again, false).unwrap();
        let bytes = std::fs::read(&full).unwrap();
        assert_eq!(bytes, std::fs::read(&again).unwrap());
        // header, one record and half of the next
        let text = String::from_utf8(bytes.clone()).unwrap();
        let mut cut: Vec<&str> = text.split_inclusive('\n').collect();
        let partial = &cut[2][..cut[2].len() / 2];
        cut.truncate(2);
        let part = dir.path().join("part.jsonl");
        std::fs::write(&part, format!("{}{}", cut.concat(), partial)).unwrap();
        let s = scan(&cfg, &part, true).unwrap();
        assert_eq!(s.cells_skipped, 1);
        assert_eq!(std::fs::read(&part).unwrap(), bytes);
        let other = RunConfig { seed: 9, ..cfg };
        assert!(scan(&other, &part, true).is_err());
    }

    fn record(cell: [usize; 2], grid: [usize; 2], sup: f64) -> ScanRecord {
        ScanRecord {
            cell_id: cell,
            grid,
            coords: [0.0, 0.0],
            params: ParameterQuadruple::markoff(),
            fatou: FatouSummary { status: "Certified".into(), root: None, words_checked: 1 },
            cascade: CascadeSummary { status: "decay_ok".into(), epsilon: Some(0.1), k: None, tau: None, level_sups: vec![sup] },
            escape: EscapeSummary { status: "verified".into(), verified_levels: 1, ln_lambda: Some(-3.0) },
            property_p_flags: Some(0),
            wall_time: None,
        }
    }

    #[test]
    fn heatmap_contracts() {
        let recs: Vec<_> = (0..64).map(|i| record([i % 8, i / 8], [8, 8], 10f64.powi(-(i as i32) - 1))).collect();
        let img = heatmap(&recs, HeatField::CascadeLevel(0)).unwrap();
        assert_eq!((img.width, img.height), (8, 8));
        assert_eq!(img.rgb[0], [255, 64, 0]);
        assert_eq!(img.rgb[63], [0, 64, 255]);
        assert!(img.to_ppm().starts_with(b"P6\n8 8\n255\n"));
        assert_eq!(heatmap(&[], HeatField::FatouCertified), Err(Error::EmptyInput));
        let flat = heatmap(&recs, HeatField::FatouCertified).unwrap();
        assert!(flat.rgb.iter().all(|px| *px == flat.rgb[0]));
        let mut mixed = recs.clone();
        mixed.push(record([0, 0], [4, 4], 1.0));
        assert!(matches!(heatmap(&mixed, HeatField::FatouWords), Err(Error::MixedGrids(_))));
        assert!("cascade:3".parse::<HeatField>().is_ok());
        assert!("nope".parse::<HeatField>().is_err());
    }
}
