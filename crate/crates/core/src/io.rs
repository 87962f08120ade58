//! FASTA and BED-style region input.
//!
//! Coordinates are 0-based half-open. Both formats accept LF or CRLF line
//! endings.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use indexmap::IndexMap;

use crate::alphabet::{Alphabet, Sequence};
use crate::error::{Error, Result};

/// Streams `(name, sequence)` records one at a time.
pub struct FastaReader<R> {
    path: PathBuf,
    lines: std::io::Lines<R>,
    line_no: usize,
    pending: Option<(String, usize)>,
    header_line: usize,
    alphabet: Alphabet,
    seen_any: bool,
}

impl FastaReader<BufReader<File>> {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::new(BufReader::new(file), path))
    }
}

impl<R: BufRead> FastaReader<R> {
    /// `path` only labels error messages.
    pub fn new(reader: R, path: impl Into<PathBuf>) -> Self {
        Self {
            path: path.into(),
            lines: reader.lines(),
            line_no: 0,
            pending: None,
            header_line: 0,
            alphabet: Alphabet::dna(),
            seen_any: false,
        }
    }

    fn next_line(&mut self) -> Option<Result<String>> {
        let line = self.lines.next()?;
        self.line_no += 1;
        Some(
            line.map(|mut l| {
                if l.ends_with('\r') {
                    l.pop();
                }
                l
            })
            .map_err(|e| Error::io(&self.path, e)),
        )
    }

    fn header_name(&self, line: &str) -> Result<String> {
        line[1..]
            .split_whitespace()
            .next()
            .map(str::to_owned)
            .ok_or_else(|| Error::parse(&self.path, self.line_no, "header has no name"))
    }

    fn next_record(&mut self) -> Result<Option<(String, Sequence)>> {
        let (name, header_line) = match self.pending.take() {
            Some(h) => h,
            None => loop {
                match self.next_line() {
                    None if self.seen_any => return Ok(None),
                    None => return Err(Error::parse(&self.path, self.line_no, "no FASTA records")),
                    Some(line) => {
                        let line = line?;
                        if line.trim().is_empty() {
                            continue;
                        }
                        if !line.starts_with('>') {
                            return Err(Error::parse(&self.path, self.line_no, "expected '>' header"));
                        }
                        break (self.header_name(&line)?, self.line_no);
                    }
                }
            },
        };
        self.seen_any = true;
        self.header_line = header_line;
        let mut data = Vec::new();
        while let Some(line) = self.next_line() {
            let line = line?;
            if line.starts_with('>') {
                self.pending = Some((self.header_name(&line)?, self.line_no));
                break;
            }
            data.extend(line.trim().bytes().map(|c| self.alphabet.index_of(c)));
        }
        Ok(Some((name, Sequence::from_options(data, self.alphabet.size())?)))
    }
}

impl<R: BufRead> Iterator for FastaReader<R> {
    type Item = Result<(String, Sequence)>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_record().transpose()
    }
}

/// Reads every record, keyed by the first whitespace-delimited header token.
/// Non-ACGT letters become gaps.
pub fn read_fasta(path: impl AsRef<Path>) -> Result<IndexMap<String, Sequence>> {
    collect_records(FastaReader::open(path)?)
}

fn collect_records<R: BufRead>(mut reader: FastaReader<R>) -> Result<IndexMap<String, Sequence>> {
    let mut out = IndexMap::new();
    while let Some(rec) = reader.next() {
        let (name, seq) = rec?;
        if out.contains_key(&name) {
            return Err(Error::parse(&reader.path, reader.header_line, format!("duplicate sequence name {name:?}")));
        }
        out.insert(name, seq);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub name: String,
    pub start: usize,
    pub end: usize,
    pub label: String,
}

impl Region {
    pub fn new(name: impl Into<String>, start: usize, end: usize, label: impl Into<String>) -> Result<Self> {
        if start >= end {
            return Err(Error::InvalidParameter(format!("region start {start} must be below end {end}")));
        }
        Ok(Self {
            name: name.into(),
            start,
            end,
            label: label.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The label, or `name:start-end` when none was given.
    pub fn display_label(&self) -> String {
        if self.label.is_empty() {
            format!("{}:{}-{}", self.name, self.start, self.end)
        } else {
            self.label.clone()
        }
    }
}

/// Tab-separated `name start end [label]`; blank lines and lines starting
/// with `#` are skipped.
pub fn read_regions(path: impl AsRef<Path>) -> Result<Vec<Region>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_regions(BufReader::new(file), path)
}

fn parse_regions<R: BufRead>(reader: R, path: &Path) -> Result<Vec<Region>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::parse(path, i + 1, msg);
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < 3 {
            return Err(err(format!("expected at least 3 tab-separated fields, found {}", fields.len())));
        }
        let coord = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| err(format!("non-numeric coordinate {s:?}")))
        };
        let (start, end) = (coord(fields[1])?, coord(fields[2])?);
        if start >= end {
            return Err(err(format!("start {start} is not below end {end}")));
        }
        out.push(Region {
            name: fields[0].trim().to_owned(),
            start,
            end,
            label: fields.get(3).map(|s| s.trim().to_owned()).unwrap_or_default(),
        });
    }
    Ok(out)
}

pub fn extract_region(seqs: &IndexMap<String, Sequence>, region: &Region) -> Result<Sequence> {
    let seq = seqs
        .get(&region.name)
        .ok_or_else(|| Error::UnknownSequence(region.name.clone()))?;
    if region.end > seq.len() || region.start >= region.end {
        return Err(Error::RegionOutOfBounds {
            name: region.name.clone(),
            start: region.start,
            end: region.end,
            len: seq.len(),
        });
    }
    Ok(seq.slice(region.start, region.end))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fasta(text: &str) -> Result<IndexMap<String, Sequence>> {
        collect_records(FastaReader::new(text.as_bytes(), "mem.fa"))
    }

    fn render(s: &Sequence) -> String {
        s.render(&Alphabet::dna(), '?')
    }

    #[test]
    fn fasta_basics() {
        assert_eq!(render(&fasta(">s\nACGT\n").unwrap()["s"]), "ACGT");
        assert_eq!(render(&fasta(">s desc here\r\nAC\r\nGT\r\n").unwrap()["s"]), "ACGT");
        let m = fasta(">s\nacgNt\n>t\n\nTT\n").unwrap();
        assert_eq!(render(&m["s"]), "ACG?T");
        assert!(m["s"].is_gap(3));
        assert_eq!(m.keys().collect::<Vec<_>>(), ["s", "t"]);
    }

    #[test]
    fn fasta_errors() {
        assert!(fasta("").is_err());
        assert!(fasta("ACGT\n").is_err());
        assert!(fasta(">\nACGT\n").is_err());
        let dup = fasta(">s\nA\n>s\nC\n").unwrap_err().to_string();
        assert!(dup.starts_with("mem.fa:3:"), "{dup}");
    }

    #[test]
    fn empty_record_is_allowed() {
        let m = fasta(">e\n>f\nA\n").unwrap();
        assert!(m["e"].is_empty());
    }

    #[test]
    fn regions() {
        let p = Path::new("r.bed");
        let r = parse_regions("# header\nchr3\t0\t5000\t3a\r\nchr1\t5\t9\n".as_bytes(), p).unwrap();
        assert_eq!(r[0], Region::new("chr3", 0, 5000, "3a").unwrap());
        assert_eq!(r[1].label, "");
        assert_eq!(r[1].display_label(), "chr1:5-9");
        assert!(parse_regions("chr1\t10\t5\n".as_bytes(), p).is_err());
        assert!(parse_regions("chr1\tx\t5\n".as_bytes(), p).is_err());
        let e = parse_regions("\nchr1\t1\n".as_bytes(), p).unwrap_err().to_string();
        assert!(e.starts_with("r.bed:2:"), "{e}");
    }

    #[test]
    fn extraction() {
        let m = fasta(">s\nACGTNNACGT\n").unwrap();
        assert_eq!(extract_region(&m, &Region::new("s", 0, 10, "").unwrap()).unwrap(), m["s"]);
        let one = extract_region(&m, &Region::new("s", 9, 10, "").unwrap()).unwrap();
        assert_eq!(render(&one), "T");
        let gapped = extract_region(&m, &Region::new("s", 3, 7, "").unwrap()).unwrap();
        assert_eq!(render(&gapped), "T??A");
        assert_eq!(gapped.len(), 4);
        assert!(matches!(
            extract_region(&m, &Region::new("x", 0, 1, "").unwrap()),
            Err(Error::UnknownSequence(_))
        ));
        assert!(matches!(
            extract_region(&m, &Region::new("s", 5, 11, "").unwrap()),
            Err(Error::RegionOutOfBounds { .. })
        ));
    }
}
