//! A differential with one sign flipped must be caught by the checks the
//! suite relies on: d∘d = 0 and agreement with −[·, μ].

use num_rational::BigRational;
use num_traits::One;
use permucell_core::brackets::{hochschild_diff_via_bracket, Cochain};
use permucell_core::chain::{LabeledComplex, TargetPolicy};
use permucell_core::hoch::{full_hoch_differential, full_hoch_labels, FullHochLabel};

type Q = BigRational;

const D: usize = 4;

/// The Hochschild differential with the sign of the merge term at slot
/// `slot` flipped.
fn mutated(l: &FullHochLabel, slot: usize) -> Vec<(FullHochLabel, Q)> {
    full_hoch_differential::<Q>(l, D)
        .into_iter()
        .map(|(t, v)| {
            let merged_at_slot = t.arity() == l.arity() + 1
                && t.output == l.output
                && l.inputs.parts().get(slot).is_some_and(|m| {
                    t.inputs.parts()[slot].times(&t.inputs.parts()[slot + 1]) == *m
                        && t.inputs.parts()[..slot] == l.inputs.parts()[..slot]
                });
            if merged_at_slot {
                (t, -v)
            } else {
                (t, v)
            }
        })
        .collect()
}

fn complex(w: i64, diff: impl Fn(&FullHochLabel) -> Vec<(FullHochLabel, Q)> + Sync) -> LabeledComplex<FullHochLabel, Q> {
    let keys = (1..=D).map(|k| full_hoch_labels(1, w, D, k)).collect();
    LabeledComplex::assemble(1, keys, TargetPolicy::Strict, |l: &FullHochLabel, _| diff(l)).unwrap()
}

fn bracket_mismatches(lc: &LabeledComplex<FullHochLabel, Q>) -> usize {
    let mut bad = 0;
    for d in lc.complex.degrees() {
        let Some(mat) = lc.complex.diff(d) else { continue };
        let cols = mat.transpose();
        for (c, l) in lc.keys(d).iter().enumerate() {
            let a = Cochain::new(1, D, [(l.clone(), Q::one())]).unwrap();
            let via_bracket = hochschild_diff_via_bracket(&a).unwrap();
            let column: std::collections::BTreeMap<_, _> =
                cols.row(c).iter().map(|(r, v)| (lc.keys(d + 1)[*r].clone(), v.clone())).collect();
            if via_bracket.terms() != &column {
                bad += 1;
            }
        }
    }
    bad
}

#[test]
fn unmutated_differential_passes_both_checks() {
    let lc = complex(0, |l| full_hoch_differential(l, D));
    assert!(lc.complex.validate().passed());
    assert_eq!(bracket_mismatches(&lc), 0);
}

#[test]
fn flipped_sign_is_detected() {
    for slot in 0..2 {
        for w in [-1i64, 0, 1] {
            let lc = complex(w, |l| mutated(l, slot));
            let squares_to_zero = lc.complex.validate().passed();
            let mismatches = bracket_mismatches(&lc);
            assert!(mismatches > 0, "slot {slot}, weight {w}: bracket check missed the flip");
            if slot == 0 {
                assert!(!squares_to_zero, "weight {w}: d∘d check missed the flip");
            }
        }
    }
}
