//! Input loading: numeric files, or FASTA records pushed through a
//! symbol mapping.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use fracspec::seqmap::{
    map_indicator, parse_fasta, parse_numeric, Alphabet, MappingScheme, SymbolicSequence,
    UnknownPolicy,
};
use fracspec::RealSequence;

use crate::CliError;

/// How input symbols become numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapSpec {
    /// The input is a plain numeric file.
    None,
    /// Protein FASTA through the embedded hydropathy table.
    Hydropathy,
    /// DNA FASTA through a binary indicator for one nucleotide.
    Indicator(char),
    /// Protein FASTA through a user-supplied residue/value table.
    Table(PathBuf),
}

impl FromStr for MapSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "none" {
            return Ok(MapSpec::None);
        }
        if s == "hydropathy" {
            return Ok(MapSpec::Hydropathy);
        }
        if let Some(symbol) = s.strip_prefix("indicator:") {
            let mut chars = symbol.chars();
            return match (chars.next(), chars.next()) {
                (Some(c), None) => Ok(MapSpec::Indicator(c.to_ascii_uppercase())),
                _ => Err(format!(
                    "indicator symbol {symbol:?} must be a single character"
                )),
            };
        }
        if let Some(path) = s.strip_prefix("table:") {
            if path.is_empty() {
                return Err("table mapping needs a path, e.g. table:scale.tsv".to_string());
            }
            return Ok(MapSpec::Table(PathBuf::from(path)));
        }
        Err(format!(
            "unknown mapping {s:?}; expected none, hydropathy, indicator:<SYM>, or table:<path>"
        ))
    }
}

/// Treatment of residues without a mapping value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PolicyArg {
    Zero,
    Error,
    Skip,
}

impl From<PolicyArg> for UnknownPolicy {
    fn from(value: PolicyArg) -> Self {
        match value {
            PolicyArg::Zero => UnknownPolicy::Zero,
            PolicyArg::Error => UnknownPolicy::Error,
            PolicyArg::Skip => UnknownPolicy::Skip,
        }
    }
}

/// Input/mapping flags shared by every subcommand.
#[derive(Debug, clap::Args)]
pub struct InputArgs {
    /// Input file: FASTA when --map selects a mapping, whitespace-
    /// separated numbers otherwise.
    pub input: PathBuf,

    /// Symbol mapping: none, hydropathy, indicator:<SYM>, or table:<path>.
    #[arg(long, default_value = "none")]
    pub map: MapSpec,

    /// Treatment of residues without a mapping value.
    #[arg(long, value_enum, default_value_t = PolicyArg::Zero)]
    pub unknown: PolicyArg,

    /// Subtract the mean of the mapped sequence before analysis.
    #[arg(long)]
    pub center: bool,
}

/// A loaded, mapped, and optionally centered input signal.
#[derive(Debug)]
pub struct LoadedInput {
    pub identifier: String,
    pub sequence: RealSequence,
    pub mapping: String,
    pub centered: bool,
}

pub fn load(args: &InputArgs) -> Result<LoadedInput, CliError> {
    let file = File::open(&args.input)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", args.input.display())))?;
    let reader = BufReader::new(file);
    let policy = UnknownPolicy::from(args.unknown);

    let (identifier, sequence, mapping) = match &args.map {
        MapSpec::None => {
            let sequence = parse_numeric(reader)?;
            (file_label(&args.input), sequence, "none".to_string())
        }
        MapSpec::Hydropathy => {
            let record = first_record(reader, Alphabet::Protein, &args.input)?;
            let scheme = MappingScheme::kyte_doolittle().with_policy(policy);
            let sequence = scheme.map(&record)?;
            (
                record.identifier().to_string(),
                sequence,
                "hydropathy".to_string(),
            )
        }
        MapSpec::Indicator(symbol) => {
            let record = first_record(reader, Alphabet::Dna, &args.input)?;
            let sequence = map_indicator(&record, *symbol)?;
            (
                record.identifier().to_string(),
                sequence,
                format!("indicator:{symbol}"),
            )
        }
        MapSpec::Table(table_path) => {
            let table_file = File::open(table_path)
                .map_err(|e| CliError::Invalid(format!("{}: {e}", table_path.display())))?;
            let scheme =
                MappingScheme::from_reader(file_label(table_path), BufReader::new(table_file))?
                    .with_policy(policy);
            let record = first_record(reader, Alphabet::Protein, &args.input)?;
            let sequence = scheme.map(&record)?;
            (
                record.identifier().to_string(),
                sequence,
                format!("table:{}", table_path.display()),
            )
        }
    };

    let (sequence, centered) = if args.center {
        (sequence.centered(), true)
    } else {
        (sequence, false)
    };
    Ok(LoadedInput {
        identifier,
        sequence,
        mapping,
        centered,
    })
}

fn first_record(
    reader: impl std::io::BufRead,
    alphabet: Alphabet,
    path: &Path,
) -> Result<SymbolicSequence, CliError> {
    let records = parse_fasta(reader, alphabet)?;
    if records.len() > 1 {
        eprintln!(
            "warning: {} contains {} records; analyzing the first ({:?})",
            path.display(),
            records.len(),
            records[0].identifier()
        );
    }
    Ok(records
        .into_iter()
        .next()
        .expect("parse_fasta returns at least one record"))
}

fn file_label(path: &Path) -> String {
    path.file_name()
        .map(|name| name.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_spec_parses_all_forms() {
        assert_eq!(MapSpec::from_str("none").unwrap(), MapSpec::None);
        assert_eq!(
            MapSpec::from_str("hydropathy").unwrap(),
            MapSpec::Hydropathy
        );
        assert_eq!(
            MapSpec::from_str("indicator:a").unwrap(),
            MapSpec::Indicator('A')
        );
        assert_eq!(
            MapSpec::from_str("table:scales/custom.tsv").unwrap(),
            MapSpec::Table(PathBuf::from("scales/custom.tsv"))
        );
    }

    #[test]
    fn map_spec_rejects_malformed_forms() {
        assert!(MapSpec::from_str("voss").is_err());
        assert!(MapSpec::from_str("indicator:AC").is_err());
        assert!(MapSpec::from_str("indicator:").is_err());
        assert!(MapSpec::from_str("table:").is_err());
    }
}
