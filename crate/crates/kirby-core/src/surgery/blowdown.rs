//! Rational blow-down: replace an embedded `c_p` chain by the rational ball
//! `b_p` and cancel the resulting 1-handle.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::handlebody::{ExtInt, HandleDecomposition, KnotTag, TwoHandle};
use crate::intalg::{determinant, signature, Inertia};
use crate::plumbing::{lens_space_of_chain, LensSpace};

use super::certificate::{Certificate, Check, CheckSource};
use super::{Figure6Shape, SurgeryError};

/// Performs the rational blow-down of the host along the given `c_p` copy.
///
/// The chain handles are removed and the rational ball glued in: one dotted
/// circle, one 2-handle running over it `p` times with undetermined framing,
/// and the attachment handle becoming a meridian of the dotted circle. The
/// meridian then cancels the 1-handle, so the output has none. Handles that
/// never touched the chain pass through with their data intact; the
/// ball-derived survivor keeps only its incidence data and is otherwise
/// marked unknown.
pub fn rational_blowdown(
    shape: &Figure6Shape,
) -> Result<(HandleDecomposition, Certificate), SurgeryError> {
    shape.validate()?;
    let host = &shape.host;
    let p = shape.p;
    let host_counts = host.counts();
    let host_chi = host.euler_characteristic();

    // invariants of the chain being removed, computed before surgery
    let chain_idx: Vec<usize> = shape
        .chain
        .iter()
        .map(|l| host.two_index(l))
        .collect::<Result<_, _>>()?;
    let chain_form = host
        .known_linking_on(&chain_idx)
        .expect("validated chain linking is fully known");
    let chain_sig = signature(&chain_form);
    let chain_det = determinant(&chain_form);
    let chain_weights: Vec<BigInt> = chain_idx
        .iter()
        .map(|&i| {
            host.two_handles()[i]
                .framing
                .as_known()
                .expect("validated chain framings are known")
                .clone()
        })
        .collect();
    let chain_lens = lens_space_of_chain(&chain_weights)
        .expect("validated chain weights are all <= -2");

    let mut steps = vec![format!(
        "rational blow-down along the c_{p} copy [{}], attachment {} at the {} end",
        shape.chain.join(", "),
        shape.attachment,
        match shape.end {
            super::ChainEnd::Head => "-(p+2)",
            super::ChainEnd::Tail => "-2",
        },
    )];

    // 1. remove the chain handles
    let mut parts = host.clone().into_parts();
    let mut sorted = chain_idx.clone();
    sorted.sort_unstable();
    for &i in sorted.iter().rev() {
        parts.two_handles.remove(i);
        parts.linking.remove(i);
        for row in &mut parts.linking {
            row.remove(i);
        }
        for row in &mut parts.incidence {
            row.remove(i);
        }
    }
    steps.push(format!(
        "remove the {} chain handles {}",
        p - 1,
        shape.chain.join(", ")
    ));

    // 2. glue the rational ball: dotted circle, p-fold 2-handle, and the
    //    attachment re-routed once over the dotted circle. The attachment's
    //    framing in the new diagram is figure data this model cannot
    //    certify, so it goes unknown (it is canceled below anyway).
    let att = parts
        .two_handles
        .iter()
        .position(|h| h.label == shape.attachment)
        .expect("attachment survives chain removal");
    parts.two_handles[att].framing = ExtInt::Unknown;
    parts.linking[att][att] = ExtInt::Unknown;

    let interim = HandleDecomposition::from_parts(parts)?;
    let d_label = interim.fresh_label("d");
    let ball_label = interim.fresh_label("k");
    let mut parts = interim.into_parts();

    let n = parts.two_handles.len();
    parts
        .two_handles
        .push(TwoHandle::new(ball_label.clone(), ExtInt::Unknown, KnotTag::Unknown));
    for (i, row) in parts.linking.iter_mut().enumerate() {
        row.push(if i == att {
            ExtInt::Unknown
        } else {
            ExtInt::zero()
        });
    }
    let mut ball_row = vec![ExtInt::zero(); n + 1];
    ball_row[att] = ExtInt::Unknown;
    ball_row[n] = ExtInt::Unknown;
    parts.linking.push(ball_row);

    parts.one_handles.push(d_label.clone());
    for row in &mut parts.incidence {
        row.push(BigInt::from(0));
    }
    let mut d_row = vec![BigInt::from(0); n + 1];
    d_row[att] = BigInt::from(1);
    d_row[n] = BigInt::from(p);
    parts.incidence.push(d_row);

    let glued = HandleDecomposition::from_parts(parts)?;
    steps.push(format!(
        "glue rational ball: dotted circle {d_label}, 2-handle {ball_label} running {p} times over it; {} becomes a meridian",
        shape.attachment
    ));
    let glued_h1 = glued.homology_h1();

    // 3. cancel the 1-handle against the meridian
    let out = glued.cancel_12(&d_label, &shape.attachment)?;
    steps.push(format!(
        "cancel 1-handle {d_label} against meridian {}, sliding {ball_label} over it {p} times",
        shape.attachment
    ));

    let out_counts = out.counts();
    let mut cert = Certificate::new(
        format!("rational blow-down along c_{p}"),
        steps,
        out_counts,
    );
    let p_big = BigInt::from(p);
    cert.push_check(Check::compare(
        "chain boundary lens space",
        LensSpace::new(&p_big * &p_big, &p_big - 1).expect("p^2, p-1 are admissible"),
        chain_lens,
        CheckSource::Theorem,
    ));
    cert.push_check(Check::compare(
        "chain boundary homology order",
        &p_big * &p_big,
        chain_det.abs(),
        CheckSource::Theorem,
    ));
    cert.push_check(Check::compare(
        "chain form negative definite",
        Inertia::new(0, 0, (p - 1) as usize),
        chain_sig,
        CheckSource::Bookkeeping,
    ));
    cert.push_check(Check::compare(
        "one-handles eliminated",
        0,
        out_counts.h1,
        CheckSource::Theorem,
    ));
    cert.push_check(Check::compare(
        "two-handle count",
        host_counts.h2 - (p as usize - 1),
        out_counts.h2,
        CheckSource::Theorem,
    ));
    cert.push_check(Check::compare(
        "zero/three/four-handle counts unchanged",
        format!("({}, {}, {})", host_counts.h0, host_counts.h3, host_counts.h4),
        format!("({}, {}, {})", out_counts.h0, out_counts.h3, out_counts.h4),
        CheckSource::Bookkeeping,
    ));
    cert.push_check(Check::compare(
        "euler characteristic drop",
        i64::from(p) - 1,
        host_chi - out.euler_characteristic(),
        CheckSource::Bookkeeping,
    ));
    cert.push_check(Check::compare(
        "glued-ball first homology trivial",
        "0".to_string(),
        glued_h1.to_string(),
        CheckSource::Bookkeeping,
    ));
    cert.push_check(Check::compare(
        "first homology trivial",
        "0".to_string(),
        out.homology_h1().to_string(),
        CheckSource::Bookkeeping,
    ));
    Ok((out, cert))
}

#[cfg(test)]
mod tests {
    use super::super::tests::chain_with_attachment;
    use super::super::ChainEnd;
    use super::*;
    use crate::handlebody::HandleCounts;

    #[test]
    fn blowdown_of_bare_chain_with_attachment() {
        for p in 2u32..=6 {
            for end in [ChainEnd::Head, ChainEnd::Tail] {
                let shape = chain_with_attachment(p, end, ExtInt::known(-1));
                let host_chi = shape.host.euler_characteristic();
                let (out, cert) = rational_blowdown(&shape).unwrap();
                assert!(cert.verified(), "{cert}");
                assert_eq!(out.counts(), HandleCounts::new(1, 0, 1, 0, 1));
                assert_eq!(
                    out.euler_characteristic(),
                    host_chi - (i64::from(p) - 1)
                );
                assert!(out.homology_h1().is_trivial());
            }
        }
    }

    #[test]
    fn survivor_is_unknown_ball_handle() {
        let shape = chain_with_attachment(3, ChainEnd::Tail, ExtInt::known(7));
        let (out, _) = rational_blowdown(&shape).unwrap();
        assert_eq!(out.two_handles().len(), 1);
        let survivor = &out.two_handles()[0];
        assert!(!survivor.framing.is_known());
        assert_eq!(survivor.knot, KnotTag::Unknown);
    }

    #[test]
    fn untouched_handles_keep_data() {
        // add two extra handles, linked to each other and the attachment
        let base = chain_with_attachment(4, ChainEnd::Tail, ExtInt::known(-1));
        let mut parts = base.host.clone().into_parts();
        let n = parts.two_handles.len();
        parts
            .two_handles
            .push(TwoHandle::new("x1", -7, KnotTag::Unknot));
        parts
            .two_handles
            .push(TwoHandle::new("x2", ExtInt::Unknown, KnotTag::Unknown));
        for row in &mut parts.linking {
            row.push(ExtInt::zero());
            row.push(ExtInt::zero());
        }
        let mut r1 = vec![ExtInt::zero(); n + 2];
        let mut r2 = vec![ExtInt::zero(); n + 2];
        r1[n] = ExtInt::known(-7);
        r1[n + 1] = ExtInt::known(2);
        r2[n] = ExtInt::known(2);
        r2[n + 1] = ExtInt::Unknown;
        // x1 also links the attachment (allowed)
        let att = base.host.two_index("a1").unwrap();
        r1[att] = ExtInt::known(3);
        parts.linking[att][n] = ExtInt::known(3);
        parts.linking.push(r1);
        parts.linking.push(r2);
        parts.h3 = 2;
        let host = HandleDecomposition::from_parts(parts).unwrap();

        let shape = Figure6Shape::with_end(
            host,
            base.chain.clone(),
            "a1",
            ChainEnd::Tail,
            4,
        )
        .unwrap();
        let (out, cert) = rational_blowdown(&shape).unwrap();
        assert!(cert.verified(), "{cert}");
        // 2 extras + 1 ball survivor
        assert_eq!(out.counts(), HandleCounts::new(1, 0, 3, 2, 1));
        assert_eq!(out.two_handles()[out.two_index("x1").unwrap()].framing, ExtInt::known(-7));
        assert_eq!(out.linking("x1", "x2").unwrap(), &ExtInt::known(2));
        // the ball handle's linking with extras is not certified
        let ball = out
            .two_handles()
            .iter()
            .find(|h| h.label != "x1" && h.label != "x2")
            .unwrap();
        assert!(!out.linking(&ball.label, "x1").unwrap().is_known());
    }

    #[test]
    fn spec_count_example() {
        // host with 5 extra handles, h3 = 2, p = 4: nine 2-handles in, six out
        let base = chain_with_attachment(4, ChainEnd::Tail, ExtInt::Unknown);
        let mut parts = base.host.clone().into_parts();
        let n = parts.two_handles.len();
        for i in 0..5 {
            parts
                .two_handles
                .push(TwoHandle::new(format!("x{i}"), ExtInt::Unknown, KnotTag::Unknown));
        }
        for row in &mut parts.linking {
            row.extend(std::iter::repeat_with(ExtInt::zero).take(5));
        }
        for i in 0..5 {
            let mut row = vec![ExtInt::zero(); n + 5];
            row[n + i] = ExtInt::Unknown;
            parts.linking.push(row);
        }
        parts.h3 = 2;
        let host = HandleDecomposition::from_parts(parts).unwrap();
        assert_eq!(host.counts().h2, 9);

        let shape =
            Figure6Shape::with_end(host, base.chain.clone(), "a1", ChainEnd::Tail, 4).unwrap();
        let host_chi = shape.host.euler_characteristic();
        let (out, cert) = rational_blowdown(&shape).unwrap();
        assert!(cert.verified(), "{cert}");
        assert_eq!(out.counts(), HandleCounts::new(1, 0, 6, 2, 1));
        assert_eq!(host_chi - out.euler_characteristic(), 3);
        assert!(out.homology_h1().is_trivial());
    }
}
