//! The plain-text complex format.
//!
//! ```text
//! # octahedron
//! m 6
//! facet 1 3 5
//! facet 2 3 5
//! ```
//!
//! `m` comes first and exactly once, `void` replaces all `facet` lines, and
//! a file with no `facet` line describes `{∅}`. Pair files additionally
//! accept `small v…` lines (facets of the subcomplex) or a single
//! `small-void`; without either the subcomplex is `{∅}`.

use std::fmt::Write as _;

use momangle::{SimplicialComplex, SimplicialPair, VertexSet, MAX_VERTICES};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

#[derive(Default)]
struct Raw {
    m: Option<usize>,
    void: bool,
    facets: Vec<VertexSet>,
    small_void: bool,
    small: Vec<VertexSet>,
}

fn parse_vertices(line: usize, m: usize, tokens: &[&str]) -> Result<VertexSet, ParseError> {
    let mut set = VertexSet::EMPTY;
    for t in tokens {
        let v: usize = match t.parse() {
            Ok(v) => v,
            Err(_) => return err(line, format!("`{t}` is not a vertex")),
        };
        if v == 0 || v > m {
            return err(line, format!("vertex {v} outside 1..={m}"));
        }
        if set.contains(v) {
            return err(line, format!("vertex {v} repeated"));
        }
        set = set.with(v);
    }
    Ok(set)
}

fn parse_raw(text: &str, allow_small: bool) -> Result<Raw, ParseError> {
    let mut raw = Raw::default();
    let mut last = 0;
    for (i, full_line) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let content = full_line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, rest)) = tokens.split_first() else {
            continue;
        };
        if head != "m" && raw.m.is_none() {
            return err(line, "the first directive must be `m <int>`");
        }
        match head {
            "m" => {
                if raw.m.is_some() {
                    return err(line, "`m` given twice");
                }
                let [value] = rest else {
                    return err(line, "`m` takes exactly one integer");
                };
                match value.parse::<usize>() {
                    Ok(m) if m <= MAX_VERTICES => raw.m = Some(m),
                    Ok(m) => {
                        return err(
                            line,
                            format!("m = {m} exceeds the maximum of {MAX_VERTICES}"),
                        )
                    }
                    Err(_) => return err(line, format!("`{value}` is not a vertex count")),
                }
            }
            "facet" => {
                if raw.void {
                    return err(line, "`facet` after `void`");
                }
                let f = parse_vertices(line, raw.m.unwrap_or(0), rest)?;
                raw.facets.push(f);
            }
            "void" => {
                if !rest.is_empty() {
                    return err(line, "`void` takes no arguments");
                }
                if !raw.facets.is_empty() {
                    return err(line, "`void` after `facet`");
                }
                raw.void = true;
            }
            "small" if allow_small => {
                if raw.small_void {
                    return err(line, "`small` after `small-void`");
                }
                let f = parse_vertices(line, raw.m.unwrap_or(0), rest)?;
                raw.small.push(f);
            }
            "small-void" if allow_small => {
                if !rest.is_empty() {
                    return err(line, "`small-void` takes no arguments");
                }
                if !raw.small.is_empty() {
                    return err(line, "`small-void` after `small`");
                }
                raw.small_void = true;
            }
            other => return err(line, format!("unknown directive `{other}`")),
        }
    }
    if raw.m.is_none() {
        return err(last.max(1), "missing `m <int>`");
    }
    Ok(raw)
}

fn build(m: usize, void: bool, facets: &[VertexSet]) -> SimplicialComplex {
    if void {
        SimplicialComplex::void(m)
    } else {
        SimplicialComplex::from_facets(m, facets, true).expect("vertices were range-checked")
    }
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex, ParseError> {
    let raw = parse_raw(text, false)?;
    Ok(build(raw.m.expect("checked"), raw.void, &raw.facets))
}

/// A pair file; the `facet` lines give the big complex.
pub fn parse_pair(text: &str) -> Result<(SimplicialComplex, SimplicialComplex), ParseError> {
    let raw = parse_raw(text, true)?;
    let m = raw.m.expect("checked");
    Ok((
        build(m, raw.void, &raw.facets),
        build(m, raw.small_void, &raw.small),
    ))
}

pub fn parse_pair_checked(text: &str) -> Result<SimplicialPair, PairFileError> {
    let (big, small) = parse_pair(text)?;
    Ok(SimplicialPair::new(big, small)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairFileError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Containment(#[from] momangle::ComplexError),
}

fn facet_line(out: &mut String, keyword: &str, f: VertexSet) {
    out.push_str(keyword);
    for v in f.iter() {
        write!(out, " {v}").expect("writing to a String");
    }
    out.push('\n');
}

/// Canonical text: `m`, then `void` or one `facet` line per facet in
/// canonical order. `{∅}` is written as the `m` line alone.
pub fn write_complex(k: &SimplicialComplex) -> String {
    let mut out = format!("m {}\n", k.m());
    if k.is_void() {
        out.push_str("void\n");
        return out;
    }
    for f in k.facets() {
        if !f.is_empty() {
            facet_line(&mut out, "facet", f);
        }
    }
    out
}

pub fn write_pair(pair: &SimplicialPair) -> String {
    let mut out = write_complex(pair.big());
    if pair.small().is_void() {
        out.push_str("small-void\n");
    }
    for f in pair.small().facets() {
        if !f.is_empty() {
            facet_line(&mut out, "small", f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use momangle::named;

    #[test]
    fn parses_with_comments() {
        let k = parse_complex("# a path\nm 3\nfacet 1 2 # first edge\n\nfacet 2 3\n").unwrap();
        assert_eq!(k, named::path(3));
    }

    #[test]
    fn special_complexes() {
        assert_eq!(parse_complex("m 1\n").unwrap(), SimplicialComplex::empty(1));
        assert_eq!(
            parse_complex("m 2\nvoid\n").unwrap(),
            SimplicialComplex::void(2)
        );
        assert_eq!(
            parse_complex("m 2\nfacet\n").unwrap(),
            SimplicialComplex::empty(2)
        );
        assert_eq!(write_complex(&SimplicialComplex::empty(1)), "m 1\n");
        assert_eq!(write_complex(&SimplicialComplex::void(3)), "m 3\nvoid\n");
    }

    #[test]
    fn rejects_malformed() {
        for (text, line) in [
            ("facet 1\nm 2\n", 1),
            ("m 2\nm 2\n", 2),
            ("m 2\nfacet 3\n", 2),
            ("m 2\nfacet 0\n", 2),
            ("m 2\nfacet 1 1\n", 2),
            ("m 2\nvoid\nfacet 1\n", 3),
            ("m 2\nfacet 1\nvoid\n", 3),
            ("m x\n", 1),
            ("m 33\n", 1),
            ("m 2\nsmall 1\n", 2),
            ("m 2\nedge 1 2\n", 2),
            ("", 1),
        ] {
            assert_eq!(parse_complex(text).unwrap_err().line, line, "{text:?}");
        }
    }

    #[test]
    fn pair_files() {
        let (big, small) = parse_pair("m 3\nfacet 1 2\nfacet 2 3\nsmall 1\nsmall 3\n").unwrap();
        assert_eq!(big, named::path(3));
        assert_eq!(
            small,
            SimplicialComplex::from_facet_lists(3, &[&[1], &[3]]).unwrap()
        );
        let (_, small) = parse_pair("m 1\nfacet 1\n").unwrap();
        assert_eq!(small, SimplicialComplex::empty(1));
        let (_, small) = parse_pair("m 1\nfacet 1\nsmall-void\n").unwrap();
        assert!(small.is_void());
        assert!(matches!(
            parse_pair_checked("m 2\nfacet 1\nsmall 2\n"),
            Err(PairFileError::Containment(_))
        ));
    }

    #[test]
    fn pair_round_trip() {
        let small = SimplicialComplex::from_facet_lists(3, &[&[1], &[3]]).unwrap();
        let pair = SimplicialPair::new(named::path(3), small).unwrap();
        assert_eq!(parse_pair_checked(&write_pair(&pair)).unwrap(), pair);
        let pair = SimplicialPair::new(named::pentagon(), SimplicialComplex::void(5)).unwrap();
        assert_eq!(parse_pair_checked(&write_pair(&pair)).unwrap(), pair);
    }
}
