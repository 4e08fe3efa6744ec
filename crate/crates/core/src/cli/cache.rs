//! On-disk cache for named series and per-field trace data.
//!
//! Series file `series-<name>.txt`: header `name N version`, then `n num den`
//! for every exponent from `min(0, valuation)` up to `N - 1`.
//!
//! Count file `counts-<q>-<cover>.txt`: header `counts q cover version`, one
//! `s0 localtrace` line per parameter (`inf` last), then `A value`.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::pointcount::{surface_trace, Cover, TraceResult, TraceSource};
use crate::qseries::{g_series, j_series, p_series, s_series, t_series, QSeries};

pub const CACHE_VERSION: u32 = 1;

pub const SERIES_NAMES: [&str; 5] = ["g", "t", "s", "P", "j"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Series,
    Counts,
}

/// One file in the cache directory, as found by [`Cache::entries`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheEntry {
    pub kind: EntryKind,
    pub key: String,
    pub version: u32,
    pub path: PathBuf,
    /// `Err(reason)` when the payload fails validation.
    pub health: std::result::Result<String, String>,
}

/// A cache directory plus a log of what readers did.
#[derive(Debug)]
pub struct Cache {
    dir: PathBuf,
    log: Mutex<Vec<String>>,
}

static TEMP_COUNTER: AtomicU64 = AtomicU64::new(0);

fn cache_err(path: &Path, reason: impl Into<String>) -> Error {
    Error::Cache {
        path: path.to_path_buf(),
        reason: reason.into(),
    }
}

pub fn compute_series(name: &str, precision: i64) -> Result<QSeries> {
    Ok(match name {
        "g" => g_series(precision),
        "t" => t_series(precision),
        "s" => s_series(precision),
        "P" => p_series(precision),
        "j" => j_series(precision),
        _ => {
            return Err(crate::error::usage(format!(
                "unknown series {name:?}; expected one of g, t, s, P, j"
            )))
        }
    })
}

fn parse_series(text: &str, name: &str) -> std::result::Result<QSeries, String> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().ok_or("empty file")?.split(' ').collect();
    let [h_name, h_n, h_version] = header[..] else {
        return Err("malformed header".into());
    };
    if h_name != name {
        return Err(format!("header names series {h_name:?}"));
    }
    let n: i64 = h_n.parse().map_err(|_| "malformed precision")?;
    let version: u32 = h_version.parse().map_err(|_| "malformed version")?;
    if version != CACHE_VERSION {
        return Err(format!("version {version}, expected {CACHE_VERSION}"));
    }
    let mut offset = None;
    let mut coeffs = Vec::new();
    for line in lines {
        let parts: Vec<&str> = line.split(' ').collect();
        let [e, num, den] = parts[..] else {
            return Err(format!("malformed line {line:?}"));
        };
        let e: i64 = e.parse().map_err(|_| format!("bad exponent {e:?}"))?;
        let start = *offset.get_or_insert(e);
        if e != start + coeffs.len() as i64 {
            return Err(format!("exponent {e} out of sequence"));
        }
        let num: BigInt = num.parse().map_err(|_| format!("bad numerator at {e}"))?;
        let den: BigInt = den.parse().map_err(|_| format!("bad denominator at {e}"))?;
        if den.is_zero() {
            return Err(format!("zero denominator at {e}"));
        }
        coeffs.push(BigRational::new(num, den));
    }
    let start = offset.ok_or("no coefficient lines")?;
    if start > 0 {
        return Err(format!("first exponent {start} is positive"));
    }
    let last = start + coeffs.len() as i64 - 1;
    if last != n - 1 {
        return Err(format!(
            "short payload: last exponent {last}, header promises {}",
            n - 1
        ));
    }
    Ok(QSeries::from_dense(start, coeffs, n))
}

fn render_series(name: &str, series: &QSeries) -> String {
    let n = series.precision();
    let start = series.valuation().unwrap_or(0).min(0);
    let mut out = format!("{name} {n} {CACHE_VERSION}\n");
    for e in start..n {
        let c = series.coeff(e);
        out.push_str(&format!("{e} {} {}\n", c.numer(), c.denom()));
    }
    out
}

fn parse_counts(text: &str, q: u64, cover: Cover) -> std::result::Result<i64, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty file")?;
    let expected = format!("counts {q} {cover} {CACHE_VERSION}");
    if header != expected {
        return Err(format!("header {header:?}, expected {expected:?}"));
    }
    let body: Vec<&str> = lines.collect();
    if body.len() as u64 != q + 2 {
        return Err(format!(
            "{} lines, expected {} fibers and a total",
            body.len(),
            q + 1
        ));
    }
    let mut sum = 0i64;
    for line in &body[..body.len() - 1] {
        let (_, trace) = line
            .split_once(' ')
            .ok_or_else(|| format!("malformed line {line:?}"))?;
        sum += trace
            .parse::<i64>()
            .map_err(|_| format!("bad local trace in {line:?}"))?;
    }
    let a: i64 = body[body.len() - 1]
        .strip_prefix("A ")
        .and_then(|v| v.parse().ok())
        .ok_or("missing total line")?;
    if a != -sum {
        return Err(format!("total {a} disagrees with local traces (sum {sum})"));
    }
    Ok(a)
}

fn render_counts(t: &TraceResult) -> String {
    let mut out = format!("counts {} {} {CACHE_VERSION}\n", t.q, t.cover);
    for f in &t.per_fiber {
        out.push_str(&format!("{} {}\n", f.param, f.local_trace));
    }
    out.push_str(&format!("A {}\n", t.a));
    out
}

impl Cache {
    /// Opens (creating if needed) a cache directory.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| cache_err(&dir, format!("cannot create: {e}")))?;
        Ok(Self {
            dir,
            log: Mutex::new(Vec::new()),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn note(&self, msg: String) {
        self.log.lock().expect("unpoisoned").push(msg);
    }

    /// Messages recorded by readers and writers, sorted.
    pub fn take_log(&self) -> Vec<String> {
        let mut log = std::mem::take(&mut *self.log.lock().expect("unpoisoned"));
        log.sort();
        log
    }

    fn series_path(&self, name: &str) -> PathBuf {
        self.dir.join(format!("series-{name}.txt"))
    }

    fn counts_path(&self, q: u64, cover: Cover) -> PathBuf {
        self.dir.join(format!("counts-{q}-{cover}.txt"))
    }

    fn write_atomic(&self, path: &Path, contents: &str) -> Result<()> {
        let tmp = self.dir.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            TEMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let written = (|| {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(contents.as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, path)
        })();
        written.map_err(|e| {
            let _ = fs::remove_file(&tmp);
            cache_err(path, format!("cannot write: {e}"))
        })
    }

    /// A cached series if present, valid and long enough.
    pub fn load_series(&self, name: &str, precision: i64) -> Option<QSeries> {
        let path = self.series_path(name);
        let text = fs::read_to_string(&path).ok()?;
        match parse_series(&text, name) {
            Ok(s) if s.precision() >= precision => {
                self.note(format!(
                    "series {name}: hit ({} terms cached)",
                    s.precision()
                ));
                Some(s.truncate(precision))
            }
            Ok(s) => {
                self.note(format!(
                    "series {name}: cached {} terms, need {precision}; recomputing",
                    s.precision()
                ));
                None
            }
            Err(reason) => {
                self.note(format!(
                    "series {name}: ignoring corrupt {}: {reason}",
                    path.display()
                ));
                None
            }
        }
    }

    /// The series `name` mod `w^precision`, from the cache or computed and stored.
    pub fn series(&self, name: &str, precision: i64) -> Result<QSeries> {
        if let Some(s) = self.load_series(name, precision) {
            return Ok(s);
        }
        let s = compute_series(name, precision)?;
        self.write_atomic(&self.series_path(name), &render_series(name, &s))?;
        self.note(format!("series {name}: computed {precision} terms"));
        Ok(s)
    }

    pub fn load_counts(&self, q: u64, cover: Cover) -> Option<i64> {
        let path = self.counts_path(q, cover);
        let text = fs::read_to_string(&path).ok()?;
        match parse_counts(&text, q, cover) {
            Ok(a) => Some(a),
            Err(reason) => {
                self.note(format!(
                    "counts {q}/{cover}: ignoring corrupt {}: {reason}",
                    path.display()
                ));
                None
            }
        }
    }

    pub fn store_counts(&self, t: &TraceResult) -> Result<()> {
        self.write_atomic(&self.counts_path(t.q, t.cover), &render_counts(t))
    }

    /// Everything in the directory that looks like a cache file, by file name.
    pub fn entries(&self) -> Result<Vec<CacheEntry>> {
        let mut out = Vec::new();
        let listing = fs::read_dir(&self.dir).map_err(|e| cache_err(&self.dir, e.to_string()))?;
        for item in listing {
            let path = item?.path();
            let Some(file) = path.file_name().and_then(|f| f.to_str()) else {
                continue;
            };
            let Some(stem) = file.strip_suffix(".txt") else {
                continue;
            };
            let text = fs::read_to_string(&path).unwrap_or_default();
            let version = text
                .lines()
                .next()
                .and_then(|h| h.rsplit(' ').next())
                .and_then(|v| v.parse().ok())
                .unwrap_or(0);
            if let Some(name) = stem.strip_prefix("series-") {
                let health = parse_series(&text, name).map(|s| format!("{} terms", s.precision()));
                out.push(CacheEntry {
                    kind: EntryKind::Series,
                    key: name.to_string(),
                    version,
                    path,
                    health,
                });
            } else if let Some(key) = stem.strip_prefix("counts-") {
                let parsed = key
                    .split_once('-')
                    .and_then(|(q, c)| Some((q.parse::<u64>().ok()?, c.parse::<u32>().ok()?)));
                let health = match parsed {
                    Some((q, c)) => Cover::from_exponent(c)
                        .map_err(|e| e.to_string())
                        .and_then(|cover| parse_counts(&text, q, cover))
                        .map(|a| format!("A = {a}")),
                    None => Err("unparseable file name".to_string()),
                };
                out.push(CacheEntry {
                    kind: EntryKind::Counts,
                    key: key.to_string(),
                    version,
                    path,
                    health,
                });
            }
        }
        out.sort_by(|a, b| a.path.cmp(&b.path));
        Ok(out)
    }

    /// Removes cache files and stray temporaries; returns how many.
    pub fn clear(&self) -> Result<usize> {
        let mut removed = 0;
        let listing = fs::read_dir(&self.dir).map_err(|e| cache_err(&self.dir, e.to_string()))?;
        for item in listing {
            let path = item?.path();
            let name = path.file_name().and_then(|f| f.to_str()).unwrap_or("");
            let ours = name.starts_with(".tmp-")
                || ((name.starts_with("series-") || name.starts_with("counts-"))
                    && name.ends_with(".txt"));
            if ours {
                fs::remove_file(&path).map_err(|e| cache_err(&path, e.to_string()))?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}

/// Traces read from the cache, computed and written on a miss.
pub struct CachedTraces<'a> {
    cache: &'a Cache,
    memo: Mutex<BTreeMap<(u64, Cover), i64>>,
}

impl<'a> CachedTraces<'a> {
    pub fn new(cache: &'a Cache) -> Self {
        Self {
            cache,
            memo: Mutex::new(BTreeMap::new()),
        }
    }

    /// Full per-fiber data, always recomputed, and stored.
    pub fn full(&self, q: u64, cover: Cover) -> Result<TraceResult> {
        let t = surface_trace(q, cover)?;
        self.cache.store_counts(&t)?;
        self.memo
            .lock()
            .expect("unpoisoned")
            .insert((q, cover), t.a);
        Ok(t)
    }
}

impl TraceSource for CachedTraces<'_> {
    fn trace(&self, q: u64, cover: Cover) -> Result<i64> {
        if let Some(a) = self.memo.lock().expect("unpoisoned").get(&(q, cover)) {
            return Ok(*a);
        }
        let a = match self.cache.load_counts(q, cover) {
            Some(a) => a,
            None => self.full(q, cover)?.a,
        };
        self.memo.lock().expect("unpoisoned").insert((q, cover), a);
        Ok(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_round_trip_and_truncation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let j = cache.series("j", 12).unwrap();
        assert_eq!(cache.load_series("j", 12).unwrap(), j);
        assert_eq!(cache.load_series("j", 8).unwrap(), j.truncate(8));
        assert!(cache.load_series("j", 20).is_none());

        let path = dir.path().join("series-j.txt");
        let text = fs::read_to_string(&path).unwrap();
        let cut: Vec<&str> = text.lines().collect();
        fs::write(&path, cut[..cut.len() - 3].join("\n")).unwrap();
        assert!(cache.load_series("j", 12).is_none());
        assert!(cache.take_log().iter().any(|l| l.contains("short payload")));
        assert_eq!(cache.series("j", 12).unwrap(), j);
    }

    #[test]
    fn counts_validate_sum() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let traces = CachedTraces::new(&cache);
        assert_eq!(traces.trace(7, Cover::Two).unwrap(), 10);
        assert_eq!(cache.load_counts(7, Cover::Two), Some(10));
        let path = dir.path().join("counts-7-2.txt");
        let text = fs::read_to_string(&path).unwrap().replace("A 10", "A 11");
        fs::write(&path, text).unwrap();
        assert_eq!(cache.load_counts(7, Cover::Two), None);
        assert_eq!(cache.entries().unwrap().len(), 1);
        assert!(cache.entries().unwrap()[0].health.is_err());
        assert_eq!(cache.clear().unwrap(), 1);
        assert!(cache.entries().unwrap().is_empty());
    }
}
