//! Handle-level value types.

use std::fmt;
use std::str::FromStr;

use super::extint::ExtInt;

/// Knot type of a 2-handle attaching circle, as far as a construction can
/// certify it. Any handle slide degrades the tag to `Unknown`; consumers that
/// need a certified tag (cusp detection, strict blow-down) rely on tags set
/// at construction time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnotTag {
    Unknot,
    RightTrefoil,
    Unknown,
}

impl fmt::Display for KnotTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotTag::Unknot => write!(f, "unknot"),
            KnotTag::RightTrefoil => write!(f, "right_trefoil"),
            KnotTag::Unknown => write!(f, "?"),
        }
    }
}

impl FromStr for KnotTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unknot" => Ok(KnotTag::Unknot),
            "right_trefoil" => Ok(KnotTag::RightTrefoil),
            "?" => Ok(KnotTag::Unknown),
            other => Err(format!(
                "expected `unknot`, `right_trefoil` or `?`, got `{other}`"
            )),
        }
    }
}

/// A 2-handle: stable label, framing and knot tag. The attaching-circle
/// linking data lives in the owning decomposition's matrix.
#[derive(Debug, Clone)]
pub struct TwoHandle {
    pub label: String,
    pub framing: ExtInt,
    pub knot: KnotTag,
}

impl TwoHandle {
    pub fn new(label: impl Into<String>, framing: impl Into<ExtInt>, knot: KnotTag) -> Self {
        TwoHandle {
            label: label.into(),
            framing: framing.into(),
            knot,
        }
    }
}

/// Handle counts by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HandleCounts {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    pub h3: usize,
    pub h4: usize,
}

impl HandleCounts {
    pub fn new(h0: usize, h1: usize, h2: usize, h3: usize, h4: usize) -> Self {
        HandleCounts { h0, h1, h2, h3, h4 }
    }

    /// Alternating sum `h0 - h1 + h2 - h3 + h4`.
    pub fn euler(&self) -> i64 {
        self.h0 as i64 - self.h1 as i64 + self.h2 as i64 - self.h3 as i64 + self.h4 as i64
    }

    /// The union expression, e.g.
    /// `one 0-handle u 12 2-handles u two 3-handles u one 4-handle`.
    pub fn union_expression(&self) -> String {
        fn word(n: usize) -> String {
            match n {
                1 => "one".to_string(),
                2 => "two".to_string(),
                n => n.to_string(),
            }
        }
        let mut parts = vec![format!(
            "{} 0-handle{}",
            word(self.h0),
            if self.h0 == 1 { "" } else { "s" }
        )];
        for (count, idx) in [(self.h1, 1), (self.h2, 2), (self.h3, 3), (self.h4, 4)] {
            if count > 0 {
                parts.push(format!(
                    "{} {}-handle{}",
                    word(count),
                    idx,
                    if count == 1 { "" } else { "s" }
                ));
            }
        }
        parts.join(" \u{222a} ")
    }
}

impl fmt::Display for HandleCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {})",
            self.h0, self.h1, self.h2, self.h3, self.h4
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_alternates() {
        assert_eq!(HandleCounts::new(1, 0, 12, 2, 1).euler(), 12);
        assert_eq!(HandleCounts::new(1, 0, 0, 0, 1).euler(), 2);
        assert_eq!(HandleCounts::new(1, 0, 24, 2, 1).euler(), 24);
    }

    #[test]
    fn union_expression_matches_statement_style() {
        assert_eq!(
            HandleCounts::new(1, 0, 12, 2, 1).union_expression(),
            "one 0-handle \u{222a} 12 2-handles \u{222a} two 3-handles \u{222a} one 4-handle"
        );
        assert_eq!(
            HandleCounts::new(1, 0, 0, 0, 0).union_expression(),
            "one 0-handle"
        );
        assert_eq!(
            HandleCounts::new(1, 1, 1, 0, 0).union_expression(),
            "one 0-handle \u{222a} one 1-handle \u{222a} one 2-handle"
        );
    }

    #[test]
    fn knot_tag_round_trip() {
        for tag in [KnotTag::Unknot, KnotTag::RightTrefoil, KnotTag::Unknown] {
            assert_eq!(tag.to_string().parse::<KnotTag>().unwrap(), tag);
        }
    }
}
