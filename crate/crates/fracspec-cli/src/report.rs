//! Spectrum reports and their CSV/JSON renderings.
//!
//! Numbers are printed with 12 significant digits (enough to resolve
//! 1e-9 relative differences at the magnitudes the spectra produce);
//! periods are printed both as the exact rational `l/k` and as a decimal
//! with up to four places.

use serde::Serialize;

use fracspec::{Period, PeriodSpectrum};

use crate::input::LoadedInput;

pub const CSV_HEADER: &str = "modulus,k,period_rational,period_decimal,fps";

/// One spectrum line: `FPS(l/k)` with its period renderings.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub modulus: usize,
    pub k: usize,
    pub period: Period,
    pub fps: f64,
}

impl ReportRow {
    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.modulus,
            self.k,
            self.period,
            fmt_period_decimal(self.period.as_f64()),
            fmt_significant(self.fps, 12)
        )
    }

    fn dto(&self) -> RowDto {
        RowDto {
            modulus: self.modulus,
            k: self.k,
            period_rational: self.period.to_string(),
            period_decimal: fmt_period_decimal(self.period.as_f64()),
            fps: round_significant(self.fps, 12),
        }
    }
}

/// Report for one modulus: rows for `k = 1..=floor(l/2)` sorted by `k`,
/// the peak row (ties broken toward the smallest `k`), and provenance
/// metadata.
#[derive(Debug)]
pub struct SpectrumReport {
    pub input: String,
    pub modulus: usize,
    pub length: usize,
    pub padded_length: usize,
    pub folds: usize,
    pub mapping: String,
    pub centered: bool,
    pub rows: Vec<ReportRow>,
    peak: usize,
}

impl SpectrumReport {
    pub fn new(source: &LoadedInput, spectrum: &PeriodSpectrum) -> Self {
        let l = spectrum.modulus();
        let rows: Vec<ReportRow> = spectrum
            .powers()
            .iter()
            .enumerate()
            .map(|(index, &fps)| ReportRow {
                modulus: l,
                k: index + 1,
                period: Period {
                    numerator: l,
                    denominator: index + 1,
                },
                fps,
            })
            .collect();
        let peak = peak_index(&rows);
        SpectrumReport {
            input: source.identifier.clone(),
            modulus: l,
            length: spectrum.source_length(),
            padded_length: spectrum.padded_length(),
            folds: spectrum.folds(),
            mapping: source.mapping.clone(),
            centered: source.centered,
            rows,
            peak,
        }
    }

    pub fn peak_row(&self) -> &ReportRow {
        &self.rows[self.peak]
    }

    pub fn to_csv(&self) -> String {
        rows_to_csv(self.rows.iter())
    }

    pub fn to_json(&self) -> String {
        let dto = SpectrumDto {
            input: &self.input,
            modulus: self.modulus,
            length: self.length,
            padded_length: self.padded_length,
            folds: self.folds,
            mapping: &self.mapping,
            centered: self.centered,
            rows: self.rows.iter().map(ReportRow::dto).collect(),
            peak: self.peak_row().dto(),
        };
        to_json_string(&dto)
    }
}

/// Report for a modulus scan: the top-N rows over every `(l, k)`, sorted
/// by FPS descending with ties broken toward smaller `l` then smaller `k`.
#[derive(Debug)]
pub struct ScanReport {
    pub input: String,
    pub l_min: usize,
    pub l_max: usize,
    pub length: usize,
    pub mapping: String,
    pub centered: bool,
    pub peaks: Vec<ReportRow>,
    pub all_zero: bool,
}

impl ScanReport {
    pub fn new(
        source: &LoadedInput,
        l_min: usize,
        l_max: usize,
        spectra: &[PeriodSpectrum],
        top: usize,
    ) -> Self {
        let mut rows: Vec<ReportRow> = spectra
            .iter()
            .flat_map(|spectrum| {
                let l = spectrum.modulus();
                spectrum
                    .powers()
                    .iter()
                    .enumerate()
                    .map(move |(index, &fps)| ReportRow {
                        modulus: l,
                        k: index + 1,
                        period: Period {
                            numerator: l,
                            denominator: index + 1,
                        },
                        fps,
                    })
            })
            .collect();
        // "Zero" relative to the DC energy, the same scale the library
        // uses for its rounding clamp; cancellation leaves residues of
        // order 1e-16 of it on constant inputs.
        let mass: f64 = source.sequence.samples().iter().sum();
        let zero_floor = 1e-9 * mass * mass;
        let all_zero = rows.iter().all(|row| row.fps.abs() <= zero_floor);
        rows.sort_by(|a, b| {
            b.fps
                .total_cmp(&a.fps)
                .then(a.modulus.cmp(&b.modulus))
                .then(a.k.cmp(&b.k))
        });
        rows.truncate(top);
        ScanReport {
            input: source.identifier.clone(),
            l_min,
            l_max,
            length: source.sequence.len(),
            mapping: source.mapping.clone(),
            centered: source.centered,
            peaks: rows,
            all_zero,
        }
    }

    pub fn to_csv(&self) -> String {
        rows_to_csv(self.peaks.iter())
    }

    pub fn to_json(&self) -> String {
        let dto = ScanDto {
            input: &self.input,
            l_min: self.l_min,
            l_max: self.l_max,
            length: self.length,
            mapping: &self.mapping,
            centered: self.centered,
            peaks: self.peaks.iter().map(ReportRow::dto).collect(),
        };
        to_json_string(&dto)
    }
}

#[derive(Serialize)]
struct RowDto {
    modulus: usize,
    k: usize,
    period_rational: String,
    period_decimal: String,
    fps: f64,
}

#[derive(Serialize)]
struct SpectrumDto<'a> {
    input: &'a str,
    modulus: usize,
    length: usize,
    padded_length: usize,
    folds: usize,
    mapping: &'a str,
    centered: bool,
    rows: Vec<RowDto>,
    peak: RowDto,
}

#[derive(Serialize)]
struct ScanDto<'a> {
    input: &'a str,
    l_min: usize,
    l_max: usize,
    length: usize,
    mapping: &'a str,
    centered: bool,
    peaks: Vec<RowDto>,
}

fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

fn rows_to_csv<'a>(rows: impl Iterator<Item = &'a ReportRow>) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    out
}

fn peak_index(rows: &[ReportRow]) -> usize {
    // Strict comparison keeps the first (smallest k) row on ties.
    let mut best = 0;
    for (index, row) in rows.iter().enumerate() {
        if row.fps > rows[best].fps {
            best = index;
        }
    }
    best
}

/// At most `digits` significant digits, positional, trailing zeros
/// trimmed ("12", "3.6", "21864", "0.00123456789012").
pub fn fmt_significant(value: f64, digits: i32) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = (digits - 1 - magnitude).max(0) as usize;
    trim_trailing_zeros(format!("{value:.decimals$}"))
}

/// Rounds to `digits` significant digits by way of the printed form, so
/// JSON numbers equal the CSV text exactly.
pub fn round_significant(value: f64, digits: i32) -> f64 {
    fmt_significant(value, digits)
        .parse()
        .expect("formatted number parses")
}

/// Decimal period with up to four places but at least one ("3.0", "3.6",
/// "1.3333").
pub fn fmt_period_decimal(value: f64) -> String {
    let mut s = format!("{value:.4}");
    while s.ends_with('0') && !s.ends_with(".0") {
        s.pop();
    }
    s
}

fn trim_trailing_zeros(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}
