//! Unit criteria: the idempotent lemma, the transfer of `a‖(b,c)` to
//! `d‖(b,c)`, and its image-kernel specialization.

use super::{all_equal, check, verdict, Checker, Context, Inputs, Tally, Verdict};
use crate::inverse::{scan_bott_duffin, transfer_formula_e, transfer_formula_f};

const A_E: &[&str] = &["a", "e"];
const E_FORM: &[&str] = &["a", "b", "c", "d", "b_inner"];
const F_FORM: &[&str] = &["a", "b", "c", "d", "c_inner"];
const APQ: &[&str] = &["a", "p", "q"];
const APQD: &[&str] = &["a", "p", "q", "d"];

/// `e ∈ eaeR ∩ Reae` iff `eae + 1 − e` is a unit iff `ae + 1 − e` is a unit.
pub(crate) struct IdempotentUnits;

impl Checker for IdempotentUnits {
    fn id(&self) -> &'static str {
        "lem-3.13-idempotent"
    }

    fn shapes(&self) -> &'static [&'static [&'static str]] {
        &[A_E]
    }

    fn prepare(&self, _ctx: &Context) {}

    fn sweep(&self, ctx: &Context, a: u32, tally: &mut Tally) {
        for &e in ctx.idempotents() {
            let inputs = Inputs::new(A_E, &[a, e]);
            tally.record(&inputs, self.eval(ctx, &inputs));
        }
    }

    fn eval(&self, ctx: &Context, inputs: &Inputs) -> Verdict {
        let ring = ctx.ring();
        let (a, e) = (inputs.get("a"), inputs.get("e"));
        if !ring.is_idempotent_ix(e) {
            return Verdict::Vacuous;
        }
        let complement = ring.sub_ix(ring.one_ix(), e);
        let eae = ring.mul3_ix(e, a, e);
        let ae = ring.mul_ix(a, e);
        verdict(all_equal(&[
            (
                "e ∈ eaeR∩Reae",
                ctx.right(eae).contains_ix(e) && ctx.left(eae).contains_ix(e),
            ),
            ("eae+1-e unit", ctx.is_unit(ring.add_ix(eae, complement))),
            ("ae+1-e unit", ctx.is_unit(ring.add_ix(ae, complement))),
        ]))
    }
}

/// Existence of `d‖(b,c)` from `a‖(b,c)`, the closed formulas in both the
/// `e = bb⁻` and `f = c⁻c` forms, and the inverse identities between the
/// two unit elements. Every inner inverse choice is swept up to the cap.
pub(crate) struct Transfer;

impl Checker for Transfer {
    fn id(&self) -> &'static str {
        "transfer-formulas"
    }

    fn shapes(&self) -> &'static [&'static [&'static str]] {
        &[E_FORM, F_FORM]
    }

    fn sweep(&self, ctx: &Context, a: u32, tally: &mut Tally) {
        let n = ctx.order();
        for b in 0..n {
            if tally.is_full() {
                return;
            }
            let (b_choices, b_cut) = ctx.inner_choices(b);
            for c in 0..n {
                if ctx.bc(a, b, c).is_none() {
                    tally.vacuous(u64::from(n));
                    continue;
                }
                let (c_choices, c_cut) = ctx.inner_choices(c);
                if b_cut || c_cut {
                    tally.mark_truncated();
                }
                for d in 0..n {
                    for &g in b_choices {
                        let inputs = Inputs::new(E_FORM, &[a, b, c, d, g]);
                        tally.record(&inputs, self.eval(ctx, &inputs));
                    }
                    for &h in c_choices {
                        let inputs = Inputs::new(F_FORM, &[a, b, c, d, h]);
                        tally.record(&inputs, self.eval(ctx, &inputs));
                    }
                }
            }
        }
    }

    fn eval(&self, ctx: &Context, inputs: &Inputs) -> Verdict {
        let ring = ctx.ring();
        let (a, b, c, d) = (
            inputs.get("a"),
            inputs.get("b"),
            inputs.get("c"),
            inputs.get("d"),
        );
        let Some(a_bc) = ctx.bc(a, b, c) else {
            return Verdict::Vacuous;
        };
        let d_bc = ctx.bc(d, b, c);
        let one = ring.one_ix();
        if inputs.has("b_inner") {
            let g = inputs.get("b_inner");
            if ring.mul3_ix(b, g, b) != b {
                return Verdict::Vacuous;
            }
            let e = ring.mul_ix(b, g);
            let core = ring.product_ix(&[e, a_bc, d, e]);
            let (x, formula) = transfer_formula_e(ring, a_bc, d, e);
            verdict(
                all_equal(&[
                    ("(i) d‖ exists", d_bc.is_some()),
                    (
                        "(ii) e ∈ ea‖deR∩Rea‖de",
                        ctx.right(core).contains_ix(e) && ctx.left(core).contains_ix(e),
                    ),
                    ("(iii) a‖de+1-e unit", ctx.is_unit(x)),
                ])
                .and_then(|()| {
                    check(formula == d_bc, || {
                        format!("(a‖de+1-e)⁻¹a‖ gives {formula:?}, scan gives {d_bc:?}")
                    })
                })
                .and_then(|()| match d_bc {
                    Some(d_bc) => {
                        let partner = ring.add_ix(ring.mul3_ix(d_bc, a, e), ring.sub_ix(one, e));
                        check(
                            ring.mul_ix(x, partner) == one && ring.mul_ix(partner, x) == one,
                            || "(a‖de+1-e)⁻¹ ≠ d‖ae+1-e".into(),
                        )
                    }
                    None => Ok(()),
                }),
            )
        } else {
            let h = inputs.get("c_inner");
            if ring.mul3_ix(c, h, c) != c {
                return Verdict::Vacuous;
            }
            let f = ring.mul_ix(h, c);
            let core = ring.product_ix(&[f, d, a_bc, f]);
            let (x, formula) = transfer_formula_f(ring, a_bc, d, f);
            verdict(
                all_equal(&[
                    ("(i) d‖ exists", d_bc.is_some()),
                    (
                        "(ii) f ∈ fda‖fR∩Rfda‖f",
                        ctx.right(core).contains_ix(f) && ctx.left(core).contains_ix(f),
                    ),
                    ("(iii) fda‖+1-f unit", ctx.is_unit(x)),
                ])
                .and_then(|()| {
                    check(formula == d_bc, || {
                        format!("a‖(fda‖+1-f)⁻¹ gives {formula:?}, scan gives {d_bc:?}")
                    })
                })
                .and_then(|()| match d_bc {
                    Some(d_bc) => {
                        let partner = ring.add_ix(ring.mul3_ix(f, a, d_bc), ring.sub_ix(one, f));
                        check(
                            ring.mul_ix(x, partner) == one && ring.mul_ix(partner, x) == one,
                            || "(fda‖+1-f)⁻¹ ≠ fad‖+1-f".into(),
                        )
                    }
                    None => Ok(()),
                }),
            )
        }
    }
}

/// Image-kernel inverses agree with Bott-Duffin `(p, 1−q)`-inverses, and
/// `d×` exists iff `1−p+a×dp` is a unit iff `q+(1−q)da×` is a unit.
pub(crate) struct ImageKernel;

impl Checker for ImageKernel {
    fn id(&self) -> &'static str {
        "image-kernel-corollary"
    }

    fn shapes(&self) -> &'static [&'static [&'static str]] {
        &[APQ, APQD]
    }

    fn prepare(&self, ctx: &Context) {
        ctx.image_kernel_table();
    }

    fn sweep(&self, ctx: &Context, a: u32, tally: &mut Tally) {
        let n = ctx.order();
        for &p in ctx.idempotents() {
            for &q in ctx.idempotents() {
                let base = Inputs::new(APQ, &[a, p, q]);
                tally.record(&base, self.eval(ctx, &base));
                if ctx.image_kernel(a, p, q).is_none() {
                    tally.vacuous(u64::from(n));
                    continue;
                }
                for d in 0..n {
                    let inputs = Inputs::new(APQD, &[a, p, q, d]);
                    tally.record(&inputs, self.eval(ctx, &inputs));
                }
            }
        }
    }

    fn eval(&self, ctx: &Context, inputs: &Inputs) -> Verdict {
        let ring = ctx.ring();
        let (a, p, q) = (inputs.get("a"), inputs.get("p"), inputs.get("q"));
        if !ring.is_idempotent_ix(p) || !ring.is_idempotent_ix(q) {
            return Verdict::Vacuous;
        }
        let one = ring.one_ix();
        let a_x = ctx.image_kernel(a, p, q);
        if !inputs.has("d") {
            return match scan_bott_duffin(ring, a, p, ring.sub_ix(one, q)) {
                Ok(bd) => verdict(check(bd == a_x, || {
                    format!("image-kernel inverse {a_x:?} but Bott-Duffin (p,1-q)-inverse {bd:?}")
                })),
                Err(e) => Verdict::Fail(e.to_string()),
            };
        }
        let Some(a_x) = a_x else {
            return Verdict::Vacuous;
        };
        let d = inputs.get("d");
        let left = ring.add_ix(ring.sub_ix(one, p), ring.product_ix(&[a_x, d, p]));
        let not_q = ring.sub_ix(one, q);
        let right = ring.add_ix(q, ring.product_ix(&[not_q, d, a_x]));
        verdict(all_equal(&[
            ("(i) d× exists", ctx.image_kernel(d, p, q).is_some()),
            ("(ii) 1-p+a×dp unit", ctx.is_unit(left)),
            ("(iii) q+(1-q)da× unit", ctx.is_unit(right)),
        ]))
    }
}
