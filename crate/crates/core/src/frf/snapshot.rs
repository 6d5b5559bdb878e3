//! JSON-lines persistence for memo tables.
//!
//! One record per line: `{"frac": "2/7", "kind": "T0", "poly": "X^2*Z - 3*X*Z + 2*Z - 1"}`.
//! Loading re-derives a random sample of the records from scratch and
//! refuses the file if any sampled record disagrees.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{FrfError, Invariants, Kind};
use crate::fraction::Fraction;
use crate::poly::{Coefficient, Poly};

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error("snapshot I/O: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Corrupt { line: usize, msg: String },
    #[error("line {line}: stored {kind} value at {frac} differs from a fresh computation")]
    Mismatch { line: usize, frac: Fraction, kind: Kind },
    #[error(transparent)]
    Frf(#[from] FrfError),
}

/// What to do with a line that does not parse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OnCorrupt {
    Skip,
    #[default]
    Abort,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub frac: Fraction,
    pub kind: Kind,
    pub poly: String,
}

impl Record {
    pub fn new<R: Coefficient>(frac: Fraction, kind: Kind, poly: &Poly<R>) -> Self {
        Record { frac, kind, poly: poly.to_string() }
    }
}

/// A parsed snapshot line.
#[derive(Debug, Clone)]
pub struct Entry<R: Coefficient> {
    pub line: usize,
    pub frac: Fraction,
    pub kind: Kind,
    pub poly: Poly<R>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub loaded: usize,
    /// `(line, reason)` for every skipped line.
    pub skipped: Vec<(usize, String)>,
    pub validated: usize,
}

/// Appends one record and a newline.
pub fn write_record<W: Write, R: Coefficient>(
    w: &mut W,
    frac: Fraction,
    kind: Kind,
    poly: &Poly<R>,
) -> io::Result<()> {
    serde_json::to_writer(&mut *w, &Record::new(frac, kind, poly))?;
    w.write_all(b"\n")
}

/// Writes every memoised value of the given kinds, sorted by kind then
/// fraction, so equal tables give byte-identical files. The file is
/// written beside `path` and renamed into place, so an interrupted save
/// leaves the previous snapshot intact.
pub fn save<R: Coefficient>(inv: &Invariants<R>, kinds: &[Kind], path: &Path) -> io::Result<usize> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    let n = write_all(inv, kinds, &tmp)?;
    std::fs::rename(&tmp, path)?;
    Ok(n)
}

fn write_all<R: Coefficient>(inv: &Invariants<R>, kinds: &[Kind], path: &Path) -> io::Result<usize> {
    let mut w = BufWriter::new(File::create(path)?);
    let mut n = 0;
    for &kind in kinds {
        let entries = match kind {
            Kind::T => inv.t_memo().store().entries(),
            Kind::U => inv.u_memo().store().entries(),
            Kind::T0 => inv.t0_memo().store().entries(),
            Kind::Riley => inv.riley_memo().store().entries(),
            Kind::Uv => continue,
        };
        for (frac, poly) in entries {
            write_record(&mut w, frac, kind, &poly)?;
            n += 1;
        }
    }
    w.flush()?;
    Ok(n)
}

/// Parses a snapshot stream. Line numbers start at 1; blank lines are
/// ignored.
pub fn read<R: Coefficient, B: BufRead>(
    input: B,
    on_corrupt: OnCorrupt,
) -> Result<(Vec<Entry<R>>, Vec<(usize, String)>), SnapshotError> {
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed = serde_json::from_str::<Record>(&line)
            .map_err(|e| e.to_string())
            .and_then(|r| {
                Poly::parse(&r.poly, &r.kind.vars())
                    .map(|p| Entry { line: line_no, frac: r.frac, kind: r.kind, poly: p })
                    .map_err(|e| e.to_string())
            });
        match parsed {
            Ok(e) => entries.push(e),
            Err(msg) => match on_corrupt {
                OnCorrupt::Skip => skipped.push((line_no, msg)),
                OnCorrupt::Abort => return Err(SnapshotError::Corrupt { line: line_no, msg }),
            },
        }
    }
    Ok((entries, skipped))
}

/// Recomputes `ceil(rate * n)` randomly chosen entries (at least one when
/// `n > 0`) with a fresh engine.
pub fn validate<R: Coefficient>(entries: &[Entry<R>], rate: f64, seed: u64) -> Result<usize, SnapshotError> {
    if entries.is_empty() {
        return Ok(0);
    }
    let n = entries.len();
    let k = ((rate.clamp(0.0, 1.0) * n as f64).ceil() as usize).clamp(1, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fresh = Invariants::<R>::new();
    let mut picks = sample(&mut rng, n, k).into_vec();
    picks.sort_unstable();
    for i in picks {
        let e = &entries[i];
        if fresh.value(e.kind, &e.frac)? != e.poly {
            return Err(SnapshotError::Mismatch { line: e.line, frac: e.frac, kind: e.kind });
        }
    }
    Ok(k)
}

/// Options for [`load_into`].
#[derive(Debug, Clone, Copy)]
pub struct LoadOptions {
    pub on_corrupt: OnCorrupt,
    pub sample_rate: f64,
    pub seed: u64,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions { on_corrupt: OnCorrupt::Abort, sample_rate: 0.01, seed: 0x5eed }
    }
}

/// Reads, validates and preloads a snapshot. A missing file is an empty
/// snapshot.
pub fn load_into<R: Coefficient>(
    inv: &Invariants<R>,
    path: &Path,
    opts: LoadOptions,
) -> Result<LoadReport, SnapshotError> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(LoadReport::default()),
        Err(e) => return Err(e.into()),
    };
    let (entries, skipped) = read::<R, _>(BufReader::new(file), opts.on_corrupt)?;
    let validated = validate(&entries, opts.sample_rate, opts.seed)?;
    let mut loaded = 0;
    for e in entries {
        if inv.preload(e.kind, e.frac, e.poly) {
            loaded += 1;
        }
    }
    Ok(LoadReport { loaded, skipped, validated })
}
