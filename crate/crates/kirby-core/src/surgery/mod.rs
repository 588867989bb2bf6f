//! Composite surgeries: rational blow-down, logarithmic transform, and the
//! elliptic-surface verification pipeline.
//!
//! A rational blow-down removes an embedded negative-definite chain (a copy
//! of `c_p`) and glues in the rational ball `b_p`; the 1-handle this creates
//! is canceled against the attachment handle ("the meridian of the unique
//! dotted circle"), so the result again has no 1-handles. A logarithmic
//! transform of multiplicity `p` in a cusp neighborhood factors through
//! `p - 1` blow-ups followed by a rational blow-down of a chain assembled by
//! handle slides. Both pipelines emit certificates.

mod blowdown;
mod certificate;
mod elliptic;

pub use blowdown::rational_blowdown;
pub use certificate::{Certificate, Check, CheckSource, CheckStatus};
pub use elliptic::{elliptic_en_p, log_transform, verify_main_theorem, verify_main_theorem_with};

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::handlebody::{HandleDecomposition, HandleError, KnotTag};
use crate::plumbing::cp_weights;

/// The four (p, q) pairs the main result is proved for.
pub const PROVED_PAIRS: [(u32, u32); 4] = [(2, 3), (2, 5), (3, 4), (4, 5)];

/// Host multiplicities with a proved cusp-bearing decomposition.
pub const PROVED_MULTIPLICITIES: [u32; 3] = [2, 3, 4];

/// Errors from the surgery layer.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SurgeryError {
    #[error("multiplicity must be at least 2, got {0}")]
    BadMultiplicity(u32),
    #[error("n must be at least 1, got {0}")]
    BadN(u32),
    #[error("figure-6 shape invariant violated: {0}")]
    InvalidFigure6(String),
    #[error("figure-8 shape invariant violated: {0}")]
    InvalidFigure8(String),
    #[error("internal chain-assembly failure ({0}); this signals a convention bug, not a user error")]
    AssemblyBug(String),
    #[error("(p, q) = ({p}, {q}) is outside the proved pairs (2,3), (2,5), (3,4), (4,5); enable the conjectural override to proceed")]
    UnsupportedPair { p: u32, q: u32 },
    #[error(transparent)]
    Handle(#[from] HandleError),
}

/// Which end of the chain the attachment handle links.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainEnd {
    /// The `-(p+2)`-framed end (the first chain handle).
    Head,
    /// The trailing `-2`-framed end (the last chain handle).
    Tail,
}

/// An embedded copy of `c_p` with its attachment handle: the configuration a
/// rational blow-down consumes.
///
/// Invariants (checked by [`Figure6Shape::validate`]):
/// - the chain handles induce exactly the `c_p` linking matrix, carry
///   certified unknot tags, and meet no dotted circles (the host has none);
/// - the attachment links the designated chain end exactly once and no other
///   chain handle;
/// - no further handle links the chain at all (the chain is cleanly
///   embedded, so every remaining handle survives the surgery untouched).
#[derive(Debug, Clone)]
pub struct Figure6Shape {
    pub host: HandleDecomposition,
    pub chain: Vec<String>,
    pub attachment: String,
    pub end: ChainEnd,
    pub p: u32,
}

impl Figure6Shape {
    /// Builds a shape with the conventional default end (the `-2` end) and
    /// validates it.
    pub fn new(
        host: HandleDecomposition,
        chain: Vec<String>,
        attachment: impl Into<String>,
        p: u32,
    ) -> Result<Self, SurgeryError> {
        Self::with_end(host, chain, attachment, ChainEnd::Tail, p)
    }

    pub fn with_end(
        host: HandleDecomposition,
        chain: Vec<String>,
        attachment: impl Into<String>,
        end: ChainEnd,
        p: u32,
    ) -> Result<Self, SurgeryError> {
        let shape = Figure6Shape {
            host,
            chain,
            attachment: attachment.into(),
            end,
            p,
        };
        shape.validate()?;
        Ok(shape)
    }

    /// The label of the designated attachment end.
    pub fn end_label(&self) -> &str {
        match self.end {
            ChainEnd::Head => &self.chain[0],
            ChainEnd::Tail => self.chain.last().expect("chain is nonempty"),
        }
    }

    pub fn validate(&self) -> Result<(), SurgeryError> {
        let fail = |msg: String| Err(SurgeryError::InvalidFigure6(msg));
        if self.p < 2 {
            return Err(SurgeryError::BadMultiplicity(self.p));
        }
        if !self.host.one_handles().is_empty() {
            return fail("host must have no 1-handles".into());
        }
        let len = (self.p - 1) as usize;
        if self.chain.len() != len {
            return fail(format!(
                "chain must have p - 1 = {len} handles, got {}",
                self.chain.len()
            ));
        }
        let mut idx = Vec::with_capacity(len);
        let mut seen = HashSet::new();
        for label in &self.chain {
            if !seen.insert(label.clone()) {
                return fail(format!("chain repeats handle `{label}`"));
            }
            idx.push(self.host.two_index(label).map_err(SurgeryError::from)?);
        }
        let att = self
            .host
            .two_index(&self.attachment)
            .map_err(SurgeryError::from)?;
        if seen.contains(&self.attachment) {
            return fail("attachment cannot be a chain handle".into());
        }

        // chain submatrix must equal the c_p profile, with certified unknots
        let weights = cp_weights(self.p);
        for (a, &i) in idx.iter().enumerate() {
            if self.host.two_handles()[i].knot != KnotTag::Unknot {
                return fail(format!(
                    "chain handle `{}` lacks a certified unknot tag",
                    self.chain[a]
                ));
            }
            for (b, &j) in idx.iter().enumerate() {
                let expected = if a == b {
                    weights[a].clone()
                } else if a.abs_diff(b) == 1 {
                    BigInt::one()
                } else {
                    BigInt::zero()
                };
                match self.host.linking_at(i, j).as_known() {
                    Some(v) if *v == expected => {}
                    _ => {
                        return fail(format!(
                            "chain linking at ({}, {}) must be {}",
                            self.chain[a], self.chain[b], expected
                        ))
                    }
                }
            }
        }

        // attachment links the designated end once and nothing else on the chain
        let end_idx = match self.end {
            ChainEnd::Head => idx[0],
            ChainEnd::Tail => idx[len - 1],
        };
        for &i in &idx {
            let v = self.host.linking_at(att, i);
            if i == end_idx {
                match v.as_known() {
                    Some(v) if v.abs().is_one() => {}
                    _ => {
                        return fail(format!(
                            "attachment must link the designated end `{}` exactly once",
                            self.end_label()
                        ))
                    }
                }
            } else if !v.is_known_zero() {
                return fail(format!(
                    "attachment may not link chain handle `{}`",
                    self.host.two_handles()[i].label
                ));
            }
        }

        // clean embedding: nothing else touches the chain
        for (h, handle) in self.host.two_handles().iter().enumerate() {
            if h == att || idx.contains(&h) {
                continue;
            }
            for &i in &idx {
                if !self.host.linking_at(h, i).is_known_zero() {
                    return fail(format!(
                        "handle `{}` links the chain at `{}`; only the attachment may",
                        handle.label, self.host.two_handles()[i].label
                    ));
                }
            }
        }
        Ok(())
    }
}

/// A cusp neighborhood with its attachment handle: the configuration a
/// logarithmic transform consumes. The cusp handle is a 0-framed right
/// trefoil linked exactly once by the attachment and by nothing else.
#[derive(Debug, Clone)]
pub struct Figure8Shape {
    pub host: HandleDecomposition,
    pub cusp: String,
    pub attachment: String,
}

impl Figure8Shape {
    pub fn new(
        host: HandleDecomposition,
        cusp: impl Into<String>,
        attachment: impl Into<String>,
    ) -> Result<Self, SurgeryError> {
        let shape = Figure8Shape {
            host,
            cusp: cusp.into(),
            attachment: attachment.into(),
        };
        shape.validate()?;
        Ok(shape)
    }

    pub fn validate(&self) -> Result<(), SurgeryError> {
        let fail = |msg: String| Err(SurgeryError::InvalidFigure8(msg));
        if !self.host.one_handles().is_empty() {
            return fail("host must have no 1-handles".into());
        }
        let cusp = self.host.two_index(&self.cusp).map_err(SurgeryError::from)?;
        let att = self
            .host
            .two_index(&self.attachment)
            .map_err(SurgeryError::from)?;
        if cusp == att {
            return fail("cusp and attachment must differ".into());
        }
        let cusp_handle = &self.host.two_handles()[cusp];
        if !matches!(cusp_handle.framing.as_known(), Some(f) if f.is_zero()) {
            return fail(format!("cusp handle `{}` must be 0-framed", self.cusp));
        }
        if cusp_handle.knot != KnotTag::RightTrefoil {
            return fail(format!(
                "cusp handle `{}` must carry a certified right-trefoil tag",
                self.cusp
            ));
        }
        match self.host.linking_at(cusp, att).as_known() {
            Some(v) if v.abs().is_one() => {}
            _ => return fail("attachment must link the cusp handle exactly once".into()),
        }
        for (h, handle) in self.host.two_handles().iter().enumerate() {
            if h == cusp || h == att {
                continue;
            }
            if !self.host.linking_at(h, cusp).is_known_zero() {
                return fail(format!(
                    "handle `{}` links the cusp handle; only the attachment may",
                    handle.label
                ));
            }
        }
        Ok(())
    }
}

/// Finds every embedded `c_p` copy with a valid attachment handle: ordered
/// chains whose induced submatrix is exactly the `c_p` linking matrix, with
/// certified unknot tags, plus a unique handle linking one chain end exactly
/// once and the rest of the chain not at all.
pub fn find_cp_chains(x: &HandleDecomposition, p: u32) -> Vec<Figure6Shape> {
    if p < 2 || !x.one_handles().is_empty() {
        return Vec::new();
    }
    let n = x.two_handles().len();
    let len = (p - 1) as usize;
    let weights = cp_weights(p);

    let framing_is = |i: usize, w: &BigInt| -> bool {
        matches!(x.two_handles()[i].framing.as_known(), Some(f) if f == w)
    };
    let unknot = |i: usize| x.two_handles()[i].knot == KnotTag::Unknot;

    // depth-first extension of partial chains
    let mut complete: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n)
        .rev()
        .filter(|&i| framing_is(i, &weights[0]) && unknot(i))
        .map(|i| vec![i])
        .collect();
    while let Some(cur) = stack.pop() {
        if cur.len() == len {
            complete.push(cur);
            continue;
        }
        let last = *cur.last().unwrap();
        for next in (0..n).rev() {
            if cur.contains(&next)
                || !framing_is(next, &weights[cur.len()])
                || !unknot(next)
            {
                continue;
            }
            let adjacent = matches!(x.linking_at(last, next).as_known(), Some(v) if v.is_one());
            let clear = cur[..cur.len() - 1]
                .iter()
                .all(|&c| x.linking_at(c, next).is_known_zero());
            if adjacent && clear {
                let mut ext = cur.clone();
                ext.push(next);
                stack.push(ext);
            }
        }
    }

    let mut shapes = Vec::new();
    for chain in complete {
        let in_chain: HashSet<usize> = chain.iter().copied().collect();
        let linkers: Vec<usize> = (0..n)
            .filter(|h| !in_chain.contains(h))
            .filter(|&h| chain.iter().any(|&c| !x.linking_at(h, c).is_known_zero()))
            .collect();
        let &[att] = linkers.as_slice() else { continue };

        let once = |i: usize| -> bool {
            matches!(x.linking_at(att, i).as_known(), Some(v) if v.abs().is_one())
        };
        let zero = |i: usize| x.linking_at(att, i).is_known_zero();

        let head = chain[0];
        let tail = *chain.last().unwrap();
        let middle_clear = len < 2 || chain[1..len - 1].iter().all(|&c| zero(c));
        let end = if len == 1 {
            if once(head) {
                Some(ChainEnd::Tail)
            } else {
                None
            }
        } else if once(head) && zero(tail) && middle_clear {
            Some(ChainEnd::Head)
        } else if once(tail) && zero(head) && middle_clear {
            Some(ChainEnd::Tail)
        } else {
            None
        };
        let Some(end) = end else { continue };

        let labels: Vec<String> = chain
            .iter()
            .map(|&i| x.two_handles()[i].label.clone())
            .collect();
        let attachment = x.two_handles()[att].label.clone();
        if let Ok(shape) = Figure6Shape::with_end(x.clone(), labels, attachment, end, p) {
            shapes.push(shape);
        }
    }
    shapes
}

/// Finds every valid cusp-plus-attachment configuration in `x`.
pub fn find_figure8(x: &HandleDecomposition) -> Vec<Figure8Shape> {
    let n = x.two_handles().len();
    let mut shapes = Vec::new();
    if !x.one_handles().is_empty() {
        return shapes;
    }
    for cusp in 0..n {
        let h = &x.two_handles()[cusp];
        if h.knot != KnotTag::RightTrefoil
            || !matches!(h.framing.as_known(), Some(f) if f.is_zero())
        {
            continue;
        }
        let linkers: Vec<usize> = (0..n)
            .filter(|&i| i != cusp && !x.linking_at(cusp, i).is_known_zero())
            .collect();
        let &[att] = linkers.as_slice() else { continue };
        let labels = (
            x.two_handles()[cusp].label.clone(),
            x.two_handles()[att].label.clone(),
        );
        if let Ok(shape) = Figure8Shape::new(x.clone(), labels.0, labels.1) {
            shapes.push(shape);
        }
    }
    shapes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::handlebody::{ExtInt, TwoHandle};
    use crate::plumbing::{c_p, from_plumbing, PlumbingGraph};

    /// `c_p` chain plus one attachment handle linking the given end once.
    pub(crate) fn chain_with_attachment(p: u32, end: ChainEnd, framing: ExtInt) -> Figure6Shape {
        let base = c_p(p).unwrap();
        let n = base.two_handles().len();
        let mut two: Vec<TwoHandle> = base.two_handles().to_vec();
        two.push(TwoHandle::new("a1", framing.clone(), KnotTag::Unknown));
        let mut linking: Vec<Vec<ExtInt>> = (0..n)
            .map(|i| {
                let mut row: Vec<ExtInt> =
                    (0..n).map(|j| base.linking_at(i, j).clone()).collect();
                row.push(ExtInt::zero());
                row
            })
            .collect();
        let mut att_row = vec![ExtInt::zero(); n + 1];
        att_row[n] = framing;
        let end_idx = match end {
            ChainEnd::Head => 0,
            ChainEnd::Tail => n - 1,
        };
        att_row[end_idx] = ExtInt::known(1);
        linking[end_idx][n] = ExtInt::known(1);
        linking.push(att_row);
        let host = HandleDecomposition::new(1, vec![], two, linking, vec![], 0, 1).unwrap();
        let chain: Vec<String> = base.two_handles().iter().map(|h| h.label.clone()).collect();
        Figure6Shape::with_end(host, chain, "a1", end, p).unwrap()
    }

    #[test]
    fn find_single_candidate() {
        let shape = chain_with_attachment(4, ChainEnd::Tail, ExtInt::known(-1));
        let found = find_cp_chains(&shape.host, 4);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].chain, shape.chain);
        assert_eq!(found[0].attachment, "a1");
        assert_eq!(found[0].end, ChainEnd::Tail);
    }

    #[test]
    fn find_requires_attachment() {
        let bare = c_p(4).unwrap();
        assert!(find_cp_chains(&bare, 4).is_empty());
    }

    #[test]
    fn find_two_disjoint_copies() {
        // two disjoint c_2 configurations, each with its own attachment
        let g = PlumbingGraph::new(
            vec![
                ("c1".into(), BigInt::from(-4)),
                ("a1".into(), BigInt::from(-1)),
                ("c2".into(), BigInt::from(-4)),
                ("a2".into(), BigInt::from(-1)),
            ],
            vec![
                ("c1".into(), "a1".into()),
                ("c2".into(), "a2".into()),
            ],
        )
        .unwrap();
        let x = from_plumbing(&g);
        let found = find_cp_chains(&x, 2);
        assert_eq!(found.len(), 2);
    }

    #[test]
    fn find_rejects_doubly_linked_chain() {
        // second linker spoils the clean embedding
        let shape = chain_with_attachment(3, ChainEnd::Tail, ExtInt::known(0));
        let mut host = shape.host.clone();
        let (with_extra, label) = host.blow_up(crate::Sign::Minus);
        host = with_extra
            .handle_slide(&label, "k1", crate::Sign::Plus)
            .unwrap();
        // `label` now links the chain head; no candidate survives
        assert!(find_cp_chains(&host, 3).is_empty());
    }

    #[test]
    fn head_attachment_detected() {
        let shape = chain_with_attachment(5, ChainEnd::Head, ExtInt::Unknown);
        let found = find_cp_chains(&shape.host, 5);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].end, ChainEnd::Head);
    }

    #[test]
    fn validation_rejects_bad_shapes() {
        let good = chain_with_attachment(3, ChainEnd::Tail, ExtInt::known(2));
        // wrong p
        assert!(Figure6Shape::with_end(
            good.host.clone(),
            good.chain.clone(),
            "a1",
            ChainEnd::Tail,
            4
        )
        .is_err());
        // attachment inside the chain
        assert!(Figure6Shape::with_end(
            good.host.clone(),
            good.chain.clone(),
            good.chain[0].clone(),
            ChainEnd::Tail,
            3
        )
        .is_err());
        // chain tag not certified
        let mut host = good.host.clone();
        let slid = host.handle_slide("k2", "a1", crate::Sign::Plus).unwrap();
        assert!(
            Figure6Shape::with_end(slid, good.chain.clone(), "a1", ChainEnd::Tail, 3).is_err()
        );
    }
}
