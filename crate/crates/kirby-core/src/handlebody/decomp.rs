//! The handle-decomposition value and its derived invariants.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::intalg::{determinant, AbelianGroup, IntMatrix, SymIntMatrix};

use super::extint::ExtInt;
use super::types::{HandleCounts, KnotTag, TwoHandle};
use super::HandleError;

/// Order of the first homology of the boundary, when defined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundaryOrder {
    Finite(BigInt),
    /// The linking form is degenerate; the boundary has infinite `H_1`.
    Indeterminate,
}

/// A handle decomposition of a compact 4-manifold, tracked at the framed-link
/// level.
///
/// - `h0`, `h3`, `h4` are bare counts (no attaching data is needed),
/// - 1-handles are dotted circles identified by label,
/// - 2-handles carry framings, knot tags, a symmetric linking matrix (the
///   diagonal repeats the framings) and a signed incidence count over every
///   dotted circle.
///
/// Values are immutable: every move produces a new decomposition.
#[derive(Debug, Clone)]
pub struct HandleDecomposition {
    pub(super) h0: usize,
    pub(super) one_handles: Vec<String>,
    pub(super) two_handles: Vec<TwoHandle>,
    pub(super) linking: Vec<Vec<ExtInt>>,
    pub(super) incidence: Vec<Vec<BigInt>>,
    pub(super) h3: usize,
    pub(super) h4: usize,
}

impl HandleDecomposition {
    /// A single 0-handle and nothing else.
    pub fn empty() -> Self {
        HandleDecomposition {
            h0: 1,
            one_handles: Vec::new(),
            two_handles: Vec::new(),
            linking: Vec::new(),
            incidence: Vec::new(),
            h3: 0,
            h4: 0,
        }
    }

    /// Builds and validates a decomposition from raw parts.
    pub fn new(
        h0: usize,
        one_handles: Vec<String>,
        two_handles: Vec<TwoHandle>,
        linking: Vec<Vec<ExtInt>>,
        incidence: Vec<Vec<BigInt>>,
        h3: usize,
        h4: usize,
    ) -> Result<Self, HandleError> {
        let x = HandleDecomposition {
            h0,
            one_handles,
            two_handles,
            linking,
            incidence,
            h3,
            h4,
        };
        x.validate()?;
        Ok(x)
    }

    pub(super) fn validate(&self) -> Result<(), HandleError> {
        if self.h0 == 0 {
            return Err(HandleError::NoZeroHandle);
        }
        let mut seen = HashSet::new();
        for label in self
            .two_handles
            .iter()
            .map(|h| &h.label)
            .chain(self.one_handles.iter())
        {
            if !seen.insert(label.clone()) {
                return Err(HandleError::DuplicateLabel(label.clone()));
            }
        }
        let n = self.two_handles.len();
        if self.linking.len() != n || self.linking.iter().any(|row| row.len() != n) {
            return Err(HandleError::LinkingShape);
        }
        for i in 0..n {
            for j in i + 1..n {
                if !self.linking[i][j].repr_eq(&self.linking[j][i]) {
                    return Err(HandleError::LinkingAsymmetric(i, j));
                }
            }
            if !self.linking[i][i].repr_eq(&self.two_handles[i].framing) {
                return Err(HandleError::DiagonalMismatch(
                    self.two_handles[i].label.clone(),
                ));
            }
        }
        let m = self.one_handles.len();
        if self.incidence.len() != m || self.incidence.iter().any(|row| row.len() != n) {
            return Err(HandleError::IncidenceShape);
        }
        Ok(())
    }

    pub fn h0(&self) -> usize {
        self.h0
    }

    pub fn h3(&self) -> usize {
        self.h3
    }

    pub fn h4(&self) -> usize {
        self.h4
    }

    pub fn one_handles(&self) -> &[String] {
        &self.one_handles
    }

    pub fn two_handles(&self) -> &[TwoHandle] {
        &self.two_handles
    }

    /// Index of a 2-handle by label.
    pub fn two_index(&self, label: &str) -> Result<usize, HandleError> {
        self.two_handles
            .iter()
            .position(|h| h.label == label)
            .ok_or_else(|| HandleError::NoTwoHandle(label.to_string()))
    }

    /// Index of a 1-handle (dotted circle) by label.
    pub fn one_index(&self, label: &str) -> Result<usize, HandleError> {
        self.one_handles
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| HandleError::NoOneHandle(label.to_string()))
    }

    pub fn linking_at(&self, i: usize, j: usize) -> &ExtInt {
        &self.linking[i][j]
    }

    pub fn linking(&self, a: &str, b: &str) -> Result<&ExtInt, HandleError> {
        Ok(self.linking_at(self.two_index(a)?, self.two_index(b)?))
    }

    pub fn incidence_at(&self, d: usize, k: usize) -> &BigInt {
        &self.incidence[d][k]
    }

    pub fn incidence(&self, d: &str, k: &str) -> Result<&BigInt, HandleError> {
        Ok(self.incidence_at(self.one_index(d)?, self.two_index(k)?))
    }

    pub fn counts(&self) -> HandleCounts {
        HandleCounts {
            h0: self.h0,
            h1: self.one_handles.len(),
            h2: self.two_handles.len(),
            h3: self.h3,
            h4: self.h4,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts().euler()
    }

    /// First homology of the 4-manifold: the cokernel of the incidence map
    /// from 2-handle chains to 1-handle chains.
    pub fn homology_h1(&self) -> AbelianGroup {
        let m = self.one_handles.len();
        if m == 0 {
            return AbelianGroup::trivial();
        }
        let n = self.two_handles.len();
        let mut mat = IntMatrix::zero(m, n);
        for i in 0..m {
            for j in 0..n {
                mat.set(i, j, self.incidence[i][j].clone());
            }
        }
        AbelianGroup::cokernel_of(&mat)
    }

    /// The full linking matrix when every entry is known.
    pub fn known_linking(&self) -> Option<SymIntMatrix> {
        let idx: Vec<usize> = (0..self.two_handles.len()).collect();
        self.known_linking_on(&idx)
    }

    /// The linking submatrix on the given handle indices, in order, when
    /// every entry there is known.
    pub fn known_linking_on(&self, idx: &[usize]) -> Option<SymIntMatrix> {
        let mut m = SymIntMatrix::zero(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate().skip(a) {
                m.set_sym(a, b, self.linking[i][j].as_known()?.clone());
            }
        }
        Some(m)
    }

    /// `|H_1|` of the boundary 3-manifold: `|det(linking)|`, defined for a
    /// decomposition with 0- and 2-handles only and fully known linking.
    pub fn boundary_h1_order(&self) -> Result<BoundaryOrder, HandleError> {
        if !self.one_handles.is_empty() {
            return Err(HandleError::BoundaryOneHandles);
        }
        if self.h3 != 0 || self.h4 != 0 {
            return Err(HandleError::BoundaryUpperHandles);
        }
        let Some(linking) = self.known_linking() else {
            return Err(HandleError::BoundaryUnknownLinking);
        };
        let det = determinant(&linking);
        if det.is_zero() {
            Ok(BoundaryOrder::Indeterminate)
        } else {
            Ok(BoundaryOrder::Finite(det.abs()))
        }
    }

    /// Structural equality (Unknown matches Unknown), for tests and
    /// round-trip checks.
    pub fn same_data(&self, other: &Self) -> bool {
        if self.h0 != other.h0
            || self.h3 != other.h3
            || self.h4 != other.h4
            || self.one_handles != other.one_handles
            || self.incidence != other.incidence
            || self.two_handles.len() != other.two_handles.len()
        {
            return false;
        }
        for (a, b) in self.two_handles.iter().zip(&other.two_handles) {
            if a.label != b.label || a.knot != b.knot || !a.framing.repr_eq(&b.framing) {
                return false;
            }
        }
        self.linking
            .iter()
            .zip(&other.linking)
            .all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| x.repr_eq(y)))
    }

    /// Smallest unused label of the form `{prefix}{i}`, `i >= 1`.
    pub(crate) fn fresh_label(&self, prefix: &str) -> String {
        let mut max = 0u64;
        for label in self
            .two_handles
            .iter()
            .map(|h| h.label.as_str())
            .chain(self.one_handles.iter().map(|s| s.as_str()))
        {
            if let Some(rest) = label.strip_prefix(prefix) {
                if let Ok(i) = rest.parse::<u64>() {
                    max = max.max(i);
                }
            }
        }
        format!("{prefix}{}", max + 1)
    }

    /// Decomposes into raw parts for crate-internal surgery constructions.
    pub(crate) fn into_parts(self) -> Parts {
        Parts {
            h0: self.h0,
            one_handles: self.one_handles,
            two_handles: self.two_handles,
            linking: self.linking,
            incidence: self.incidence,
            h3: self.h3,
            h4: self.h4,
        }
    }

    pub(crate) fn from_parts(parts: Parts) -> Result<Self, HandleError> {
        Self::new(
            parts.h0,
            parts.one_handles,
            parts.two_handles,
            parts.linking,
            parts.incidence,
            parts.h3,
            parts.h4,
        )
    }

    /// Overwrites a knot tag. Only composite constructions whose end state is
    /// certified by convention may do this; ordinary moves never upgrade a
    /// tag.
    pub(crate) fn set_knot_tag(&mut self, idx: usize, tag: KnotTag) {
        self.two_handles[idx].knot = tag;
    }
}

/// Raw decomposition pieces; see [`HandleDecomposition::into_parts`].
pub(crate) struct Parts {
    pub h0: usize,
    pub one_handles: Vec<String>,
    pub two_handles: Vec<TwoHandle>,
    pub linking: Vec<Vec<ExtInt>>,
    pub incidence: Vec<Vec<BigInt>>,
    pub h3: usize,
    pub h4: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn diag_decomposition(framings: &[i64]) -> HandleDecomposition {
        let n = framings.len();
        let two: Vec<TwoHandle> = framings
            .iter()
            .enumerate()
            .map(|(i, &f)| TwoHandle::new(format!("k{}", i + 1), f, KnotTag::Unknot))
            .collect();
        let mut linking = vec![vec![ExtInt::zero(); n]; n];
        for (i, &f) in framings.iter().enumerate() {
            linking[i][i] = ExtInt::known(f);
        }
        HandleDecomposition::new(1, vec![], two, linking, vec![], 0, 0).unwrap()
    }

    #[test]
    fn empty_counts() {
        let x = HandleDecomposition::empty();
        assert_eq!(x.counts(), HandleCounts::new(1, 0, 0, 0, 0));
        assert_eq!(x.euler_characteristic(), 1);
        assert!(x.homology_h1().is_trivial());
        // 0x0 form is unimodular: boundary is a homology sphere
        assert_eq!(
            x.boundary_h1_order().unwrap(),
            BoundaryOrder::Finite(BigInt::from(1))
        );
    }

    #[test]
    fn validation_rejects_bad_shapes() {
        let h = TwoHandle::new("a", 0, KnotTag::Unknot);
        assert!(matches!(
            HandleDecomposition::new(0, vec![], vec![], vec![], vec![], 0, 0),
            Err(HandleError::NoZeroHandle)
        ));
        assert!(matches!(
            HandleDecomposition::new(1, vec![], vec![h.clone()], vec![], vec![], 0, 0),
            Err(HandleError::LinkingShape)
        ));
        let bad_diag = HandleDecomposition::new(
            1,
            vec![],
            vec![h.clone()],
            vec![vec![ExtInt::known(5)]],
            vec![],
            0,
            0,
        );
        assert!(matches!(bad_diag, Err(HandleError::DiagonalMismatch(_))));
        let dup = HandleDecomposition::new(
            1,
            vec!["a".into()],
            vec![h.clone()],
            vec![vec![ExtInt::zero()]],
            vec![vec![BigInt::zero()]],
            0,
            0,
        );
        assert!(matches!(dup, Err(HandleError::DuplicateLabel(_))));
    }

    #[test]
    fn homology_examples() {
        // one dotted circle, one 2-handle running over it 3 times
        let x = HandleDecomposition::new(
            1,
            vec!["d1".into()],
            vec![TwoHandle::new("k1", ExtInt::Unknown, KnotTag::Unknown)],
            vec![vec![ExtInt::Unknown]],
            vec![vec![BigInt::from(3)]],
            0,
            0,
        )
        .unwrap();
        assert_eq!(x.homology_h1(), AbelianGroup::cyclic(3).unwrap());

        // a bare dotted circle contributes a free generator
        let x = HandleDecomposition::new(
            1,
            vec!["d1".into()],
            vec![],
            vec![],
            vec![vec![]],
            0,
            0,
        )
        .unwrap();
        assert_eq!(x.homology_h1(), AbelianGroup::free(1));
    }

    #[test]
    fn boundary_order_cases() {
        assert_eq!(
            diag_decomposition(&[-4]).boundary_h1_order().unwrap(),
            BoundaryOrder::Finite(BigInt::from(4))
        );
        assert_eq!(
            diag_decomposition(&[0]).boundary_h1_order().unwrap(),
            BoundaryOrder::Indeterminate
        );

        let mut with_unknown = diag_decomposition(&[-4]);
        with_unknown.linking[0][0] = ExtInt::Unknown;
        with_unknown.two_handles[0].framing = ExtInt::Unknown;
        assert!(matches!(
            with_unknown.boundary_h1_order(),
            Err(HandleError::BoundaryUnknownLinking)
        ));

        let mut with_h3 = diag_decomposition(&[-4]);
        with_h3.h3 = 1;
        assert!(matches!(
            with_h3.boundary_h1_order(),
            Err(HandleError::BoundaryUpperHandles)
        ));
    }

    #[test]
    fn fresh_labels_skip_used_indices() {
        let x = diag_decomposition(&[-1, -1, -1]);
        assert_eq!(x.fresh_label("k"), "k4");
        assert_eq!(x.fresh_label("d"), "d1");
    }
}
