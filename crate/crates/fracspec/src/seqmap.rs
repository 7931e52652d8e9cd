//! Symbolic-sequence ingestion and numeric mapping.
//!
//! Turns FASTA records and plain numeric files into [`RealSequence`]
//! inputs: protein residues through a hydropathy table, nucleotides
//! through binary indicator sequences, or numbers read verbatim. Parsing
//! is case-insensitive; residues are stored uppercase. Residues outside a
//! mapping's table are handled per [`UnknownPolicy`] (default: 0.0, which
//! is neutral under folding).

use std::collections::HashMap;
use std::io::BufRead;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::sequence::RealSequence;

/// Kyte-Doolittle hydropathy table, embedded from `data/kyte_doolittle.tsv`
/// (see that file for the published source).
const KYTE_DOOLITTLE_TSV: &str = include_str!("../data/kyte_doolittle.tsv");

const PROTEIN_RESIDUES: &str = "ACDEFGHIKLMNPQRSTVWY";

/// Residue alphabets understood by the mappers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alphabet {
    Protein,
    Dna,
}

impl Alphabet {
    pub fn name(self) -> &'static str {
        match self {
            Alphabet::Protein => "protein",
            Alphabet::Dna => "dna",
        }
    }

    /// True when `residue` is a standard symbol of this alphabet.
    pub fn contains(self, residue: char) -> bool {
        match self {
            Alphabet::Protein => PROTEIN_RESIDUES.contains(residue),
            Alphabet::Dna => matches!(residue, 'A' | 'C' | 'G' | 'T'),
        }
    }
}

/// How mapping treats residues without a table value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UnknownPolicy {
    /// Map to 0.0 (neutral under folding). Real structure-derived
    /// sequences contain nonstandard codes, so this is the default.
    #[default]
    Zero,
    /// Reject the sequence.
    Error,
    /// Drop the position from the output.
    Skip,
}

/// A parsed symbolic sequence with its declared alphabet. Residues are
/// uppercase ASCII; symbols outside the alphabet are retained and
/// classified as unknown at mapping time.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicSequence {
    identifier: String,
    residues: String,
    alphabet: Alphabet,
}

impl SymbolicSequence {
    pub fn new(
        identifier: impl Into<String>,
        residues: impl Into<String>,
        alphabet: Alphabet,
    ) -> Result<Self> {
        let residues: String = residues.into().to_ascii_uppercase();
        if residues.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Self {
            identifier: identifier.into(),
            residues,
            alphabet,
        })
    }

    pub fn identifier(&self) -> &str {
        &self.identifier
    }

    pub fn residues(&self) -> &str {
        &self.residues
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    /// Always false; emptiness is rejected at construction.
    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }
}

/// Parses multi-record FASTA text. Lines beginning `>` start a record;
/// sequence lines are concatenated with whitespace stripped and residues
/// uppercased. Every record must carry at least one residue.
pub fn parse_fasta<R: BufRead>(input: R, alphabet: Alphabet) -> Result<Vec<SymbolicSequence>> {
    let mut records = Vec::new();
    let mut current: Option<(String, usize, String)> = None;
    for (index, line) in input.lines().enumerate() {
        let line_no = index + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(header) = trimmed.strip_prefix('>') {
            if let Some(record) = current.take() {
                records.push(finish_record(record, alphabet)?);
            }
            current = Some((header.trim().to_string(), line_no, String::new()));
        } else {
            match current.as_mut() {
                Some((_, _, residues)) => {
                    for ch in trimmed.chars().filter(|c| !c.is_whitespace()) {
                        if !ch.is_ascii() || ch.is_ascii_control() {
                            return Err(Error::FastaFormat {
                                line: line_no,
                                message: format!("invalid residue character {ch:?}"),
                            });
                        }
                        residues.push(ch.to_ascii_uppercase());
                    }
                }
                None => {
                    return Err(Error::FastaFormat {
                        line: line_no,
                        message: "sequence data before the first '>' header".to_string(),
                    })
                }
            }
        }
    }
    if let Some(record) = current.take() {
        records.push(finish_record(record, alphabet)?);
    }
    if records.is_empty() {
        return Err(Error::EmptyFasta);
    }
    Ok(records)
}

fn finish_record(
    (identifier, line, residues): (String, usize, String),
    alphabet: Alphabet,
) -> Result<SymbolicSequence> {
    if residues.is_empty() {
        return Err(Error::EmptyFastaRecord {
            id: identifier,
            line,
        });
    }
    Ok(SymbolicSequence {
        identifier,
        residues,
        alphabet,
    })
}

/// A named residue-to-value table plus a policy for residues outside it.
#[derive(Debug, Clone, PartialEq)]
pub struct MappingScheme {
    name: String,
    table: HashMap<char, f64>,
    unknown_policy: UnknownPolicy,
}

impl MappingScheme {
    pub fn new(
        name: impl Into<String>,
        table: HashMap<char, f64>,
        unknown_policy: UnknownPolicy,
    ) -> Self {
        Self {
            name: name.into(),
            table,
            unknown_policy,
        }
    }

    /// The embedded Kyte-Doolittle hydropathy index over the 20 standard
    /// amino acids, with the default unknown policy.
    pub fn kyte_doolittle() -> Self {
        static TABLE: OnceLock<MappingScheme> = OnceLock::new();
        TABLE
            .get_or_init(|| {
                MappingScheme::from_reader("hydropathy", KYTE_DOOLITTLE_TSV.as_bytes())
                    .expect("embedded hydropathy table parses")
            })
            .clone()
    }

    /// Reads a table from lines of `<residue> <value>`; `#` starts a
    /// comment line. Residue keys are uppercased and must be unique.
    pub fn from_reader<R: BufRead>(name: impl Into<String>, input: R) -> Result<Self> {
        let mut table = HashMap::new();
        for (index, line) in input.lines().enumerate() {
            let line_no = index + 1;
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut parts = trimmed.split_whitespace();
            let residue_token = parts.next().unwrap_or_default();
            let value_token = parts.next().ok_or_else(|| Error::MappingTable {
                line: line_no,
                message: "expected \"<residue> <value>\"".to_string(),
            })?;
            if parts.next().is_some() {
                return Err(Error::MappingTable {
                    line: line_no,
                    message: "unexpected trailing tokens".to_string(),
                });
            }
            let mut residue_chars = residue_token.chars();
            let residue = residue_chars.next().unwrap_or_default();
            if residue_chars.next().is_some() || !residue.is_ascii_alphabetic() {
                return Err(Error::MappingTable {
                    line: line_no,
                    message: format!("residue {residue_token:?} must be a single letter"),
                });
            }
            let value: f64 = value_token.parse().map_err(|_| Error::MappingTable {
                line: line_no,
                message: format!("cannot parse value {value_token:?}"),
            })?;
            if !value.is_finite() {
                return Err(Error::MappingTable {
                    line: line_no,
                    message: format!("value {value_token:?} is not finite"),
                });
            }
            if table.insert(residue.to_ascii_uppercase(), value).is_some() {
                return Err(Error::MappingTable {
                    line: line_no,
                    message: format!("duplicate residue {residue:?}"),
                });
            }
        }
        Ok(Self {
            name: name.into(),
            table,
            unknown_policy: UnknownPolicy::default(),
        })
    }

    pub fn with_policy(mut self, unknown_policy: UnknownPolicy) -> Self {
        self.unknown_policy = unknown_policy;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value(&self, residue: char) -> Option<f64> {
        self.table.get(&residue.to_ascii_uppercase()).copied()
    }

    /// True when every standard residue of `alphabet` has a table value.
    pub fn covers(&self, alphabet: Alphabet) -> bool {
        let standard: &str = match alphabet {
            Alphabet::Protein => PROTEIN_RESIDUES,
            Alphabet::Dna => "ACGT",
        };
        standard.chars().all(|r| self.table.contains_key(&r))
    }

    /// Replaces each residue with its table value, applying the unknown
    /// policy to residues the table does not cover.
    pub fn map(&self, sequence: &SymbolicSequence) -> Result<RealSequence> {
        let mut samples = Vec::with_capacity(sequence.len());
        for (position, residue) in sequence.residues().chars().enumerate() {
            match self.table.get(&residue) {
                Some(&value) => samples.push(value),
                None => match self.unknown_policy {
                    UnknownPolicy::Zero => samples.push(0.0),
                    UnknownPolicy::Skip => {}
                    UnknownPolicy::Error => {
                        return Err(Error::UnknownResidue { residue, position })
                    }
                },
            }
        }
        RealSequence::new(samples)
    }
}

fn ensure_alphabet(sequence: &SymbolicSequence, expected: Alphabet) -> Result<()> {
    if sequence.alphabet() != expected {
        return Err(Error::AlphabetMismatch {
            expected: expected.name(),
            actual: sequence.alphabet().name(),
        });
    }
    Ok(())
}

/// Maps a protein sequence through the embedded hydropathy table; unknown
/// residues become 0.0.
pub fn map_hydrophobicity(sequence: &SymbolicSequence) -> Result<RealSequence> {
    ensure_alphabet(sequence, Alphabet::Protein)?;
    MappingScheme::kyte_doolittle().map(sequence)
}

/// Binary indicator sequence: 1.0 where the residue equals `symbol`, else
/// 0.0. `symbol` must be one of A, C, G, T.
pub fn map_indicator(sequence: &SymbolicSequence, symbol: char) -> Result<RealSequence> {
    ensure_alphabet(sequence, Alphabet::Dna)?;
    let symbol = symbol.to_ascii_uppercase();
    if !Alphabet::Dna.contains(symbol) {
        return Err(Error::InvalidIndicatorSymbol(symbol));
    }
    let samples = sequence
        .residues()
        .chars()
        .map(|r| if r == symbol { 1.0 } else { 0.0 })
        .collect();
    RealSequence::new(samples)
}

/// Parses whitespace-separated decimal numbers. Lines starting with `#`
/// are comments. Parse errors carry the 1-based line and token position.
pub fn parse_numeric<R: BufRead>(input: R) -> Result<RealSequence> {
    let mut samples = Vec::new();
    for (index, line) in input.lines().enumerate() {
        let line_no = index + 1;
        let line = line?;
        if line.trim_start().starts_with('#') {
            continue;
        }
        for (token_index, token) in line.split_whitespace().enumerate() {
            match token.parse::<f64>() {
                Ok(value) if value.is_finite() => samples.push(value),
                _ => {
                    return Err(Error::NumericParse {
                        line: line_no,
                        column: token_index + 1,
                        token: token.to_string(),
                    })
                }
            }
        }
    }
    if samples.is_empty() {
        return Err(Error::EmptyNumeric);
    }
    RealSequence::new(samples)
}

/// Renders a sequence in the numeric file format, one sample per line, at
/// full round-trip precision.
pub fn render_numeric(sequence: &RealSequence) -> String {
    let mut out = String::new();
    for value in sequence.samples() {
        out.push_str(&value.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn protein(residues: &str) -> SymbolicSequence {
        SymbolicSequence::new("test", residues, Alphabet::Protein).unwrap()
    }

    fn dna(residues: &str) -> SymbolicSequence {
        SymbolicSequence::new("test", residues, Alphabet::Dna).unwrap()
    }

    #[test]
    fn parse_minimal_record() {
        let records = parse_fasta(">a\nACGT\n".as_bytes(), Alphabet::Dna).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].identifier(), "a");
        assert_eq!(records[0].residues(), "ACGT");
    }

    #[test]
    fn parse_folds_sequence_lines() {
        let records = parse_fasta(">a\nAC\nGT\n".as_bytes(), Alphabet::Dna).unwrap();
        assert_eq!(records[0].residues(), "ACGT");
    }

    #[test]
    fn parse_rejects_record_without_residues() {
        let err = parse_fasta(">a\n>b\nMK\n".as_bytes(), Alphabet::Protein).unwrap_err();
        assert!(matches!(err, Error::EmptyFastaRecord { ref id, line: 1 } if id == "a"));
    }

    #[test]
    fn parse_rejects_empty_input() {
        assert!(matches!(
            parse_fasta("".as_bytes(), Alphabet::Dna),
            Err(Error::EmptyFasta)
        ));
        assert!(matches!(
            parse_fasta("\n\n".as_bytes(), Alphabet::Dna),
            Err(Error::EmptyFasta)
        ));
    }

    #[test]
    fn parse_rejects_data_before_header() {
        let err = parse_fasta("ACGT\n>a\nACGT\n".as_bytes(), Alphabet::Dna).unwrap_err();
        assert!(matches!(err, Error::FastaFormat { line: 1, .. }));
    }

    #[test]
    fn parse_uppercases_and_handles_multiple_records() {
        let records = parse_fasta(">one\nacgt\n>two\nTTaa\n".as_bytes(), Alphabet::Dna).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].residues(), "ACGT");
        assert_eq!(records[1].residues(), "TTAA");
    }

    #[test]
    fn hydropathy_of_isoleucine_run() {
        let mapped = map_hydrophobicity(&protein("III")).unwrap();
        assert_eq!(mapped.samples(), &[4.5, 4.5, 4.5]);
    }

    #[test]
    fn hydropathy_maps_unknown_to_zero_by_default() {
        let mapped = map_hydrophobicity(&protein("X")).unwrap();
        assert_eq!(mapped.samples(), &[0.0]);
    }

    #[test]
    fn hydropathy_rejects_empty_sequence() {
        assert!(matches!(
            SymbolicSequence::new("empty", "", Alphabet::Protein),
            Err(Error::EmptySequence)
        ));
    }

    #[test]
    fn hydropathy_rejects_dna_alphabet() {
        let err = map_hydrophobicity(&dna("ACGT")).unwrap_err();
        assert!(matches!(
            err,
            Error::AlphabetMismatch {
                expected: "protein",
                actual: "dna"
            }
        ));
    }

    #[test]
    fn embedded_table_covers_all_standard_residues() {
        let scheme = MappingScheme::kyte_doolittle();
        assert!(scheme.covers(Alphabet::Protein));
        assert_eq!(scheme.value('I'), Some(4.5));
        assert_eq!(scheme.value('R'), Some(-4.5));
        assert_eq!(scheme.value('G'), Some(-0.4));
        assert_eq!(scheme.value('X'), None);
    }

    #[test]
    fn unknown_policy_error_reports_position() {
        let scheme = MappingScheme::kyte_doolittle().with_policy(UnknownPolicy::Error);
        let err = scheme.map(&protein("MKX")).unwrap_err();
        assert!(matches!(
            err,
            Error::UnknownResidue {
                residue: 'X',
                position: 2
            }
        ));
    }

    #[test]
    fn unknown_policy_skip_drops_positions() {
        let scheme = MappingScheme::kyte_doolittle().with_policy(UnknownPolicy::Skip);
        let mapped = scheme.map(&protein("IXI")).unwrap();
        assert_eq!(mapped.samples(), &[4.5, 4.5]);
        // All-unknown input skips down to nothing.
        assert!(matches!(
            scheme.map(&protein("XXX")),
            Err(Error::EmptySequence)
        ));
    }

    #[test]
    fn indicator_marks_symbol_positions() {
        let mapped = map_indicator(&dna("ACGA"), 'A').unwrap();
        assert_eq!(mapped.samples(), &[1.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn indicator_of_absent_symbol_is_zero() {
        let mapped = map_indicator(&dna("CCCC"), 'A').unwrap();
        assert_eq!(mapped.samples(), &[0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn indicators_partition_standard_positions() {
        let sequence = dna("ACGTTGCAN");
        let indicators: Vec<RealSequence> = "ACGT"
            .chars()
            .map(|s| map_indicator(&sequence, s).unwrap())
            .collect();
        for (position, residue) in sequence.residues().chars().enumerate() {
            let total: f64 = indicators.iter().map(|ind| ind.samples()[position]).sum();
            let expected = if Alphabet::Dna.contains(residue) {
                1.0
            } else {
                0.0
            };
            assert_eq!(total, expected, "position {position}");
        }
    }

    #[test]
    fn indicator_rejects_bad_symbol_and_alphabet() {
        assert!(matches!(
            map_indicator(&dna("ACGT"), 'N'),
            Err(Error::InvalidIndicatorSymbol('N'))
        ));
        assert!(matches!(
            map_indicator(&protein("MK"), 'A'),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn numeric_parses_whitespace_separated_values() {
        let parsed = parse_numeric("1 2 3\n".as_bytes()).unwrap();
        assert_eq!(parsed.samples(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn numeric_skips_comment_lines() {
        let parsed = parse_numeric("# note\n1.5\n-2\n".as_bytes()).unwrap();
        assert_eq!(parsed.samples(), &[1.5, -2.0]);
    }

    #[test]
    fn numeric_reports_error_location() {
        let err = parse_numeric("1 x 3".as_bytes()).unwrap_err();
        assert!(matches!(
            err,
            Error::NumericParse {
                line: 1,
                column: 2,
                ref token
            } if token == "x"
        ));
    }

    #[test]
    fn numeric_rejects_non_finite_tokens() {
        assert!(parse_numeric("1 inf 3".as_bytes()).is_err());
        assert!(parse_numeric("NaN".as_bytes()).is_err());
    }

    #[test]
    fn numeric_rejects_empty_payload() {
        assert!(matches!(
            parse_numeric("# only a comment\n".as_bytes()),
            Err(Error::EmptyNumeric)
        ));
    }

    #[test]
    fn numeric_round_trip_is_bit_exact() {
        let original =
            RealSequence::new(vec![1.5, -2.0, 0.1, 1e-12, 123456.789, -0.0, 3.25e8]).unwrap();
        let rendered = render_numeric(&original);
        let parsed = parse_numeric(rendered.as_bytes()).unwrap();
        assert_eq!(parsed.samples().len(), original.samples().len());
        for (a, b) in parsed.samples().iter().zip(original.samples()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn mapping_table_parses_and_validates() {
        let table = "# test table\nI 4.5\nr -4.5\n";
        let scheme = MappingScheme::from_reader("custom", table.as_bytes()).unwrap();
        assert_eq!(scheme.value('I'), Some(4.5));
        assert_eq!(scheme.value('R'), Some(-4.5));

        assert!(matches!(
            MappingScheme::from_reader("bad", "I\n".as_bytes()),
            Err(Error::MappingTable { line: 1, .. })
        ));
        assert!(matches!(
            MappingScheme::from_reader("bad", "I 1.0\nI 2.0\n".as_bytes()),
            Err(Error::MappingTable { line: 2, .. })
        ));
        assert!(matches!(
            MappingScheme::from_reader("bad", "I abc\n".as_bytes()),
            Err(Error::MappingTable { line: 1, .. })
        ));
    }

    #[test]
    fn mapping_is_deterministic() {
        let sequence = protein("MKTAYIAKQR");
        let a = map_hydrophobicity(&sequence).unwrap();
        let b = map_hydrophobicity(&sequence).unwrap();
        assert_eq!(a, b);
    }
}
