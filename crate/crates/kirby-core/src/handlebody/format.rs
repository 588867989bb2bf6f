//! Text and JSON encodings of a handle decomposition.
//!
//! The text format is line oriented, with `#` comments ignored:
//!
//! ```text
//! h0 1
//! one_handles d1
//! two_handles 2
//! k1 -4 unknot
//! k2 ? ?
//! linking
//! -4 1
//! 1 ?
//! incidence
//! 0 3
//! h3 0
//! h4 1
//! ```
//!
//! `two_handles` rows are `label framing knot`; `linking` is the full
//! symmetric matrix (diagonal = framings); `incidence` has one row per
//! 1-handle. Unknown values are written as the token `?`.

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::decomp::HandleDecomposition;
use super::extint::ExtInt;
use super::types::{KnotTag, TwoHandle};
use super::HandleError;

impl HandleDecomposition {
    /// Serializes to the documented text format.
    pub fn encode(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("h0 {}\n", self.h0));
        out.push_str("one_handles");
        for l in &self.one_handles {
            out.push(' ');
            out.push_str(l);
        }
        out.push('\n');
        out.push_str(&format!("two_handles {}\n", self.two_handles.len()));
        for h in &self.two_handles {
            out.push_str(&format!("{} {} {}\n", h.label, h.framing, h.knot));
        }
        out.push_str("linking\n");
        for row in &self.linking {
            if !row.is_empty() {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
        }
        out.push_str("incidence\n");
        if !self.two_handles.is_empty() {
            for row in &self.incidence {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
        }
        out.push_str(&format!("h3 {}\n", self.h3));
        out.push_str(&format!("h4 {}\n", self.h4));
        out
    }

    /// Parses the text format back into a validated decomposition.
    pub fn parse(text: &str) -> Result<Self, HandleError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| {
                let body = l.split('#').next().unwrap_or("");
                (i + 1, body.trim())
            })
            .filter(|(_, l)| !l.is_empty());

        let mut next = |what: &str| -> Result<(usize, &str), HandleError> {
            lines.next().ok_or_else(|| HandleError::Parse {
                line: 0,
                msg: format!("unexpected end of input, expected {what}"),
            })
        };

        let (ln, line) = next("h0")?;
        let h0 = parse_count_line(ln, line, "h0")?;

        let (ln, line) = next("one_handles")?;
        let mut tok = line.split_whitespace();
        if tok.next() != Some("one_handles") {
            return Err(HandleError::Parse {
                line: ln,
                msg: "expected `one_handles`".into(),
            });
        }
        let one_handles: Vec<String> = tok.map(|s| s.to_string()).collect();

        let (ln, line) = next("two_handles")?;
        let n = parse_count_line(ln, line, "two_handles")?;

        let mut two_handles = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, line) = next("a 2-handle row")?;
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(HandleError::Parse {
                    line: ln,
                    msg: "2-handle rows are `label framing knot`".into(),
                });
            }
            let framing: ExtInt = parts[1]
                .parse()
                .map_err(|msg| HandleError::Parse { line: ln, msg })?;
            let knot: KnotTag = parts[2]
                .parse()
                .map_err(|msg| HandleError::Parse { line: ln, msg })?;
            two_handles.push(TwoHandle::new(parts[0], framing, knot));
        }

        let (ln, line) = next("linking")?;
        if line != "linking" {
            return Err(HandleError::Parse {
                line: ln,
                msg: "expected `linking`".into(),
            });
        }
        let mut linking = Vec::with_capacity(n);
        if n > 0 {
            for _ in 0..n {
                let (ln, line) = next("a linking row")?;
                let row = parse_ext_row(ln, line, n)?;
                linking.push(row);
            }
        }

        let (ln, line) = next("incidence")?;
        if line != "incidence" {
            return Err(HandleError::Parse {
                line: ln,
                msg: "expected `incidence`".into(),
            });
        }
        let mut incidence = Vec::with_capacity(one_handles.len());
        for _ in 0..one_handles.len() {
            if n == 0 {
                incidence.push(Vec::new());
                continue;
            }
            let (ln, line) = next("an incidence row")?;
            let mut row = Vec::with_capacity(n);
            for cell in line.split_whitespace() {
                let v: BigInt = cell.parse().map_err(|_| HandleError::Parse {
                    line: ln,
                    msg: format!("expected an integer, got `{cell}`"),
                })?;
                row.push(v);
            }
            if row.len() != n {
                return Err(HandleError::Parse {
                    line: ln,
                    msg: format!("expected {n} incidence entries, got {}", row.len()),
                });
            }
            incidence.push(row);
        }

        let (ln, line) = next("h3")?;
        let h3 = parse_count_line(ln, line, "h3")?;
        let (ln, line) = next("h4")?;
        let h4 = parse_count_line(ln, line, "h4")?;

        if let Some((ln, _)) = lines.next() {
            return Err(HandleError::Parse {
                line: ln,
                msg: "trailing content after h4".into(),
            });
        }

        HandleDecomposition::new(h0, one_handles, two_handles, linking, incidence, h3, h4)
    }

    /// JSON encoding with the same field layout; all framing/linking values
    /// are decimal strings (or `"?"`) so arbitrary precision survives.
    pub fn to_json(&self) -> Value {
        json!({
            "h0": self.h0,
            "one_handles": self.one_handles,
            "two_handles": self
                .two_handles
                .iter()
                .map(|h| {
                    json!({
                        "label": h.label,
                        "framing": h.framing.to_string(),
                        "knot": h.knot.to_string(),
                    })
                })
                .collect::<Vec<_>>(),
            "linking": self
                .linking
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "incidence": self
                .incidence
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "h3": self.h3,
            "h4": self.h4,
        })
    }
}

fn parse_count_line(line_no: usize, line: &str, key: &str) -> Result<usize, HandleError> {
    let mut tok = line.split_whitespace();
    if tok.next() != Some(key) {
        return Err(HandleError::Parse {
            line: line_no,
            msg: format!("expected `{key} <count>`"),
        });
    }
    let value = tok.next().ok_or_else(|| HandleError::Parse {
        line: line_no,
        msg: format!("`{key}` needs a count"),
    })?;
    if tok.next().is_some() {
        return Err(HandleError::Parse {
            line: line_no,
            msg: format!("`{key}` takes a single count"),
        });
    }
    value.parse().map_err(|_| HandleError::Parse {
        line: line_no,
        msg: format!("`{key}` count must be a non-negative integer, got `{value}`"),
    })
}

fn parse_ext_row(line_no: usize, line: &str, n: usize) -> Result<Vec<ExtInt>, HandleError> {
    let mut row = Vec::with_capacity(n);
    for cell in line.split_whitespace() {
        let v: ExtInt = cell
            .parse()
            .map_err(|msg| HandleError::Parse { line: line_no, msg })?;
        row.push(v);
    }
    if row.len() != n {
        return Err(HandleError::Parse {
            line: line_no,
            msg: format!("expected {n} linking entries, got {}", row.len()),
        });
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> HandleDecomposition {
        HandleDecomposition::new(
            1,
            vec!["d1".into()],
            vec![
                TwoHandle::new("k1", -4, KnotTag::Unknot),
                TwoHandle::new("k2", ExtInt::Unknown, KnotTag::RightTrefoil),
            ],
            vec![
                vec![ExtInt::known(-4), ExtInt::known(1)],
                vec![ExtInt::known(1), ExtInt::Unknown],
            ],
            vec![vec![BigInt::from(0), BigInt::from(3)]],
            2,
            1,
        )
        .unwrap()
    }

    #[test]
    fn round_trip() {
        let x = sample();
        let text = x.encode();
        let y = HandleDecomposition::parse(&text).unwrap();
        assert!(x.same_data(&y));
        assert_eq!(y.encode(), text);
    }

    #[test]
    fn round_trip_empty() {
        let x = HandleDecomposition::empty();
        let y = HandleDecomposition::parse(&x.encode()).unwrap();
        assert!(x.same_data(&y));
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let text = "\n# a comment\nh0 1\none_handles\ntwo_handles 1\nk1 -4 unknot # framing from the chain\nlinking\n-4\nincidence\nh3 0\nh4 0\n";
        let x = HandleDecomposition::parse(text).unwrap();
        assert_eq!(x.counts().h2, 1);
    }

    #[test]
    fn parse_errors_carry_line() {
        let text = "h0 1\none_handles\ntwo_handles 1\nk1 -4\nlinking\n-4\nincidence\nh3 0\nh4 0\n";
        match HandleDecomposition::parse(text) {
            Err(HandleError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected a parse error, got {other:?}"),
        }
        // symmetric / diagonal violations surface as validation errors
        let text = "h0 1\none_handles\ntwo_handles 1\nk1 -4 unknot\nlinking\n-5\nincidence\nh3 0\nh4 0\n";
        assert!(matches!(
            HandleDecomposition::parse(text),
            Err(HandleError::DiagonalMismatch(_))
        ));
    }

    #[test]
    fn json_shape() {
        let v = sample().to_json();
        assert_eq!(v["h0"], 1);
        assert_eq!(v["two_handles"][1]["framing"], "?");
        assert_eq!(v["linking"][0][0], "-4");
        assert_eq!(v["incidence"][0][1], "3");
    }
}
