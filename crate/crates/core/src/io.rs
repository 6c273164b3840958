//! Record files.
//!
//! Two layouts are supported:
//!
//! * CSV: `# envspec-meta: {json}` header line, a row of channel names, then
//!   one row per sample with one column per channel. Values are written with
//!   17 significant digits so they parse back to the identical `f64`.
//! * Raw binary: magic `ENVS`, little-endian `u16` version, then
//!   channel-interleaved little-endian `f64` samples. Metadata lives in a
//!   sidecar `<file>.meta.json`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::{
    AcquisitionRecord, ChannelKind, CutConditions, CutterSpec, SampledSignal, TachoTrace,
};

pub const CSV_META_PREFIX: &str = "# envspec-meta:";
pub const BINARY_MAGIC: &[u8; 4] = b"ENVS";
pub const BINARY_VERSION: u16 = 1;
const META_VERSION: u16 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    RawBinary,
}

impl Format {
    /// `.csv` (any case) is CSV, everything else raw binary.
    pub fn from_extension(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::RawBinary,
        }
    }

    /// Sniffs the magic bytes of an existing file.
    pub fn detect(path: &Path) -> Result<Format> {
        use std::io::Read;
        let mut head = [0u8; 4];
        let mut file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let n = file.read(&mut head).map_err(|e| Error::io(path, e))?;
        Ok(if n == 4 && &head == BINARY_MAGIC {
            Format::RawBinary
        } else {
            Format::Csv
        })
    }
}

/// Sidecar path for a raw-binary record.
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

#[derive(Debug, Serialize, Deserialize)]
struct ChannelMeta {
    name: String,
    unit: String,
    kind: ChannelKind,
}

#[derive(Debug, Serialize, Deserialize)]
struct RecordMeta {
    version: u16,
    sample_rate_hz: f64,
    samples: usize,
    channels: Vec<ChannelMeta>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tacho: Option<TachoTrace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cutter: Option<CutterSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    conditions: Option<CutConditions>,
    block_size: usize,
    buffer_size: usize,
}

impl RecordMeta {
    fn of(record: &AcquisitionRecord) -> Self {
        RecordMeta {
            version: META_VERSION,
            sample_rate_hz: record.sample_rate_hz(),
            samples: record.len(),
            channels: record
                .channels()
                .map(|(kind, s)| ChannelMeta {
                    name: s.name().to_string(),
                    unit: s.unit().to_string(),
                    kind,
                })
                .collect(),
            tacho: record.tacho().cloned(),
            cutter: record.cutter().copied(),
            conditions: record.conditions().copied(),
            block_size: record.block_size(),
            buffer_size: record.buffer_size(),
        }
    }

    fn parse(path: &Path, text: &str) -> Result<Self> {
        let meta: RecordMeta = serde_json::from_str(text).map_err(|e| Error::MalformedHeader {
            path: path.to_path_buf(),
            detail: e.to_string(),
        })?;
        if meta.version != META_VERSION {
            return Err(Error::MalformedHeader {
                path: path.to_path_buf(),
                detail: format!("unsupported metadata version {}", meta.version),
            });
        }
        if meta.channels.is_empty() {
            return Err(Error::MalformedHeader {
                path: path.to_path_buf(),
                detail: "no channels declared".into(),
            });
        }
        Ok(meta)
    }

    /// Rebuilds the record from per-channel sample columns.
    fn into_record(self, columns: Vec<Vec<f64>>) -> Result<AcquisitionRecord> {
        let mut forces = Vec::new();
        let mut accelerations = Vec::new();
        for (ch, samples) in self.channels.into_iter().zip(columns) {
            let signal = SampledSignal::new(ch.name, ch.unit, self.sample_rate_hz, samples)?;
            match ch.kind {
                ChannelKind::Force => forces.push(signal),
                ChannelKind::Acceleration => accelerations.push(signal),
            }
        }
        let mut record = AcquisitionRecord::new(forces, accelerations)?
            .with_blocking(self.block_size, self.buffer_size)?;
        if let Some(t) = self.tacho {
            record = record.with_tacho(t);
        }
        if let Some(c) = self.cutter {
            record = record.with_cutter(c);
        }
        if let Some(c) = self.conditions {
            record = record.with_conditions(c);
        }
        Ok(record)
    }
}

/// Writes `bytes` to a temporary sibling and renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, bytes).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

pub fn write_record(record: &AcquisitionRecord, path: &Path, format: Format) -> Result<()> {
    let meta = RecordMeta::of(record);
    let meta_json = serde_json::to_string(&meta).expect("record metadata serializes");
    let channels: Vec<&[f64]> = record.channels().map(|(_, s)| s.samples()).collect();
    match format {
        Format::Csv => {
            let mut out = String::with_capacity(record.len() * channels.len() * 24 + 256);
            out.push_str(CSV_META_PREFIX);
            out.push(' ');
            out.push_str(&meta_json);
            out.push('\n');
            let names: Vec<&str> = meta.channels.iter().map(|c| c.name.as_str()).collect();
            out.push_str(&names.join(","));
            out.push('\n');
            for i in 0..record.len() {
                for (j, ch) in channels.iter().enumerate() {
                    if j > 0 {
                        out.push(',');
                    }
                    write!(out, "{:.16e}", ch[i]).unwrap();
                }
                out.push('\n');
            }
            write_atomic(path, out.as_bytes())
        }
        Format::RawBinary => {
            let mut out = Vec::with_capacity(6 + record.len() * channels.len() * 8);
            out.extend_from_slice(BINARY_MAGIC);
            out.extend_from_slice(&BINARY_VERSION.to_le_bytes());
            for i in 0..record.len() {
                for ch in &channels {
                    out.extend_from_slice(&ch[i].to_le_bytes());
                }
            }
            write_atomic(&sidecar_path(path), meta_json.as_bytes())?;
            write_atomic(path, &out)
        }
    }
}

pub fn read_record(path: &Path, format: Format) -> Result<AcquisitionRecord> {
    match format {
        Format::Csv => read_csv(path),
        Format::RawBinary => read_binary(path),
    }
}

fn read_csv(path: &Path) -> Result<AcquisitionRecord> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let malformed = |detail: &str| Error::MalformedHeader {
        path: path.to_path_buf(),
        detail: detail.to_string(),
    };
    let mut lines = text.lines().enumerate().peekable();
    let mut meta_json = None;
    while let Some((_, line)) = lines.peek() {
        if !line.starts_with('#') {
            break;
        }
        if let Some(rest) = line.strip_prefix(CSV_META_PREFIX) {
            meta_json = Some(rest.trim());
        }
        lines.next();
    }
    let meta = RecordMeta::parse(
        path,
        meta_json.ok_or_else(|| malformed("missing envspec-meta line"))?,
    )?;
    let (_, names) = lines
        .next()
        .ok_or_else(|| malformed("missing column-name row"))?;
    let names: Vec<&str> = names.split(',').map(str::trim).collect();
    let declared: Vec<&str> = meta.channels.iter().map(|c| c.name.as_str()).collect();
    if names != declared {
        return Err(malformed(&format!(
            "column names {names:?} do not match declared channels {declared:?}"
        )));
    }
    let width = declared.len();
    let mut columns: Vec<Vec<f64>> = vec![Vec::with_capacity(meta.samples); width];
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let data_err = |detail: String| Error::MalformedData {
            path: path.to_path_buf(),
            line: lineno + 1,
            detail,
        };
        let mut count = 0;
        for (j, field) in line.split(',').enumerate() {
            if j >= width {
                return Err(data_err(format!("more than {width} columns")));
            }
            let value: f64 = field
                .trim()
                .parse()
                .map_err(|_| data_err(format!("cannot parse `{}` as a number", field.trim())))?;
            if !value.is_finite() {
                return Err(Error::NonFiniteSample {
                    channel: declared[j].to_string(),
                    index: columns[j].len(),
                });
            }
            columns[j].push(value);
            count += 1;
        }
        if count != width {
            return Err(data_err(format!("expected {width} columns, found {count}")));
        }
    }
    check_sample_count(path, &meta, columns[0].len())?;
    meta.into_record(columns)
}

fn read_binary(path: &Path) -> Result<AcquisitionRecord> {
    let sidecar = sidecar_path(path);
    let meta_text = fs::read_to_string(&sidecar).map_err(|e| Error::io(&sidecar, e))?;
    let meta = RecordMeta::parse(&sidecar, &meta_text)?;
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let malformed = |detail: String| Error::MalformedHeader {
        path: path.to_path_buf(),
        detail,
    };
    if bytes.len() < 6 || &bytes[..4] != BINARY_MAGIC {
        return Err(malformed("missing ENVS magic".into()));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != BINARY_VERSION {
        return Err(malformed(format!("unsupported binary version {version}")));
    }
    let body = &bytes[6..];
    if body.len() % 8 != 0 {
        return Err(malformed(format!(
            "payload of {} bytes is not whole f64 values",
            body.len()
        )));
    }
    let width = meta.channels.len();
    let values = body.len() / 8;
    if values % width != 0 {
        return Err(malformed(format!(
            "{values} values do not fill {width} channels"
        )));
    }
    let rows = values / width;
    check_sample_count(path, &meta, rows)?;
    let mut columns: Vec<Vec<f64>> = vec![Vec::with_capacity(rows); width];
    for (i, chunk) in body.chunks_exact(8).enumerate() {
        let value = f64::from_le_bytes(chunk.try_into().unwrap());
        columns[i % width].push(value);
    }
    meta.into_record(columns)
}

fn check_sample_count(path: &Path, meta: &RecordMeta, rows: usize) -> Result<()> {
    if rows != meta.samples {
        return Err(Error::LengthMismatch {
            channel: format!("{} (all channels)", path.display()),
            expected: meta.samples,
            actual: rows,
        });
    }
    Ok(())
}
