//! Elementary Kirby moves as pure rewrites of the decomposition.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::decomp::HandleDecomposition;
use super::extint::{ExtInt, Sign};
use super::types::{KnotTag, TwoHandle};
use super::HandleError;

impl HandleDecomposition {
    /// Slides handle `i` over handle `j`: replaces the attaching circle of
    /// `i` by its band sum with `(sign) j`.
    ///
    /// On the linking matrix this is the unimodular congruence adding
    /// `sign * (row j)` to row `i` and the same on columns, hence
    ///
    /// ```text
    /// framing(i)' = framing(i) + framing(j) + 2 * sign * linking(i, j)
    /// linking(i, k)' = linking(i, k) + sign * linking(j, k)   (k != i)
    /// ```
    ///
    /// The incidence column of `i` gains `sign * (column j)` and the knot tag
    /// of `i` degrades to `Unknown`. Unknown entries propagate.
    pub fn handle_slide(&self, i: &str, j: &str, sign: Sign) -> Result<Self, HandleError> {
        if i == j {
            return Err(HandleError::SlideSameHandle(i.to_string()));
        }
        let ii = self.two_index(i)?;
        let jj = self.two_index(j)?;
        let s = sign.to_bigint();

        let mut out = self.clone();
        let two = BigInt::from(2);
        let new_framing = &(&self.linking[ii][ii] + &self.linking[jj][jj])
            + &(&self.linking[ii][jj] * &(&s * &two));
        for k in 0..self.two_handles.len() {
            if k == ii {
                continue;
            }
            let v = if k == jj {
                // the (i, j) entry picks up sign * framing(j)
                &self.linking[ii][jj] + &(&self.linking[jj][jj] * &s)
            } else {
                &self.linking[ii][k] + &(&self.linking[jj][k] * &s)
            };
            out.linking[ii][k] = v.clone();
            out.linking[k][ii] = v;
        }
        out.linking[ii][ii] = new_framing.clone();
        out.two_handles[ii].framing = new_framing;
        out.two_handles[ii].knot = KnotTag::Unknown;
        for d in 0..self.one_handles.len() {
            let v = &self.incidence[d][ii] + &s * &self.incidence[d][jj];
            out.incidence[d][ii] = v;
        }
        Ok(out)
    }

    /// Connect-sums with `(sign) CP^2`: appends a `(sign 1)`-framed unknotted
    /// 2-handle, unlinked from everything. Returns the new decomposition and
    /// the fresh handle's label.
    pub fn blow_up(&self, sign: Sign) -> (Self, String) {
        let label = self.fresh_label("k");
        let mut out = self.clone();
        let framing = match sign {
            Sign::Plus => ExtInt::known(1),
            Sign::Minus => ExtInt::known(-1),
        };
        out.two_handles
            .push(TwoHandle::new(label.clone(), framing.clone(), KnotTag::Unknot));
        for row in &mut out.linking {
            row.push(ExtInt::zero());
        }
        let n = out.two_handles.len();
        let mut new_row = vec![ExtInt::zero(); n];
        new_row[n - 1] = framing;
        out.linking.push(new_row);
        for row in &mut out.incidence {
            row.push(BigInt::zero());
        }
        (out, label)
    }

    /// Inverse of `blow_up`: deletes a `(+/-1)`-framed handle after sliding
    /// every handle linking it off.
    ///
    /// In strict mode the handle must carry a certified unknot tag and zero
    /// incidence over every dotted circle; non-strict mode leaves those
    /// checks to the caller.
    pub fn blow_down(&self, label: &str, strict: bool) -> Result<Self, HandleError> {
        let idx = self.two_index(label)?;
        let framing = match self.two_handles[idx].framing.as_known() {
            Some(f) if f.abs().is_one() => f.clone(),
            _ => {
                return Err(HandleError::FramingNotUnit {
                    label: label.to_string(),
                    framing: self.two_handles[idx].framing.clone(),
                })
            }
        };
        if strict {
            if self.two_handles[idx].knot != KnotTag::Unknot {
                return Err(HandleError::StrictKnot(label.to_string()));
            }
            if self.incidence.iter().any(|row| !row[idx].is_zero()) {
                return Err(HandleError::StrictIncidence(label.to_string()));
            }
        }

        // Collect the handles to unlink up front; sliding one does not
        // change another's linking with `idx`.
        let mut jobs = Vec::new();
        for (j, handle) in self.two_handles.iter().enumerate() {
            if j == idx {
                continue;
            }
            match self.linking[j][idx].as_known() {
                Some(c) if c.is_zero() => {}
                Some(c) => jobs.push((handle.label.clone(), c.clone())),
                None => {
                    return Err(HandleError::UnknownLinking {
                        a: handle.label.clone(),
                        b: label.to_string(),
                    })
                }
            }
        }

        let mut cur = self.clone();
        for (other, c) in jobs {
            // each slide changes linking(other, idx) by sign * framing
            let sign = if (&c * &framing).is_positive() {
                Sign::Minus
            } else {
                Sign::Plus
            };
            let reps: BigInt = c.abs();
            let mut left = BigInt::zero();
            while left < reps {
                cur = cur.handle_slide(&other, label, sign)?;
                left += 1;
            }
            debug_assert!(cur.linking(&other, label)?.is_known_zero());
        }
        Ok(cur.remove_two_handle(idx))
    }

    /// Cancels the 1-handle `d` against a 2-handle `k` that is a meridian of
    /// it (`incidence[d][k] = +/-1`).
    ///
    /// Every other 2-handle running over `d` is first slid over `k` until its
    /// incidence at `d` vanishes, then both handles are removed. Linking data
    /// of the slid handles depends on geometry across the dotted circle that
    /// this model cannot certify, so their rows are marked `Unknown` rather
    /// than guessed; untouched handles keep their data.
    pub fn cancel_12(&self, d: &str, k: &str) -> Result<Self, HandleError> {
        let di = self.one_index(d)?;
        let ki = self.two_index(k)?;
        let unit = self.incidence[di][ki].clone();
        if !unit.abs().is_one() {
            return Err(HandleError::NonMeridian {
                d: d.to_string(),
                k: k.to_string(),
                value: unit,
            });
        }

        let mut slid = Vec::new();
        let mut cur = self.clone();
        for (j, handle) in self.two_handles.iter().enumerate() {
            if j == ki || self.incidence[di][j].is_zero() {
                continue;
            }
            let m = self.incidence[di][j].clone();
            slid.push(handle.label.clone());
            // each slide changes incidence[d][j] by sign * unit
            let sign = if (&m * &unit).is_positive() {
                Sign::Minus
            } else {
                Sign::Plus
            };
            let reps = m.abs();
            let mut done = BigInt::zero();
            while done < reps {
                cur = cur.handle_slide(&handle.label, k, sign)?;
                done += 1;
            }
            debug_assert!(cur.incidence(d, &handle.label)?.is_zero());
        }

        let mut out = cur.remove_two_handle(ki);
        out.one_handles.remove(di);
        out.incidence.remove(di);
        for label in &slid {
            let idx = out.two_index(label)?;
            for other in 0..out.two_handles.len() {
                out.linking[idx][other] = ExtInt::Unknown;
                out.linking[other][idx] = ExtInt::Unknown;
            }
            out.two_handles[idx].framing = ExtInt::Unknown;
            out.two_handles[idx].knot = KnotTag::Unknown;
        }
        debug_assert!(out.validate().is_ok());
        Ok(out)
    }

    /// Adds `k` 3-handles (only the count is tracked).
    pub fn add_three_handles(&self, k: usize) -> Self {
        let mut out = self.clone();
        out.h3 += k;
        out
    }

    /// Caps off with the 4-handle.
    pub fn add_four_handle(&self) -> Result<Self, HandleError> {
        if self.h4 != 0 {
            return Err(HandleError::DuplicateFourHandle);
        }
        let mut out = self.clone();
        out.h4 = 1;
        Ok(out)
    }

    fn remove_two_handle(&self, idx: usize) -> Self {
        let mut out = self.clone();
        out.two_handles.remove(idx);
        out.linking.remove(idx);
        for row in &mut out.linking {
            row.remove(idx);
        }
        for row in &mut out.incidence {
            row.remove(idx);
        }
        out
    }
}
