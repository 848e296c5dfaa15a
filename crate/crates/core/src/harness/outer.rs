//! Outer inverses, regularity through annihilators, and the classical
//! inverses recovered as (b,c)-inverses.

use super::{check, verdict, Checker, Context, Inputs, Tally, Verdict};
use crate::ideal::{double_annihilators_ix, subset_intersection};
use crate::inverse::{drazin_ix, is_outer_inverse, moore_penrose_equations};

const PAIR: &[&str] = &["a", "y"];
const SINGLE: &[&str] = &["a"];
const WITH_B: &[&str] = &["a", "b"];

/// For `yay = y`: `r(a)∩yR = 0`, `l(a)∩Ry = 0`, `Ray = Ry`, `yaR = yR`.
pub(crate) struct OuterInverseFacts;

impl Checker for OuterInverseFacts {
    fn id(&self) -> &'static str {
        "lem-3.1-outer"
    }

    fn shapes(&self) -> &'static [&'static [&'static str]] {
        &[PAIR]
    }

    fn prepare(&self, _ctx: &Context) {}

    fn sweep(&self, ctx: &Context, a: u32, tally: &mut Tally) {
        for y in 0..ctx.order() {
            let inputs = Inputs::new(PAIR, &[a, y]);
            tally.record(&inputs, self.eval(ctx, &inputs));
        }
    }

    fn eval(&self, ctx: &Context, inputs: &Inputs) -> Verdict {
        let (a, y) = (inputs.get("a"), inputs.get("y"));
        let ring = ctx.ring();
        if !is_outer_inverse(ring, a, y) {
            return Verdict::Vacuous;
        }
        let trivial = |s: &crate::Subset, t: &crate::Subset| {
            subset_intersection(s, t).expect("same ring").is_zero()
        };
        verdict(
            check(trivial(ctx.rann(a), ctx.right(y)), || "r(a)∩yR ≠ 0".into())
                .and_then(|()| check(trivial(ctx.lann(a), ctx.left(y)), || "l(a)∩Ry ≠ 0".into()))
                .and_then(|()| check(ctx.same_left(ring.mul_ix(a, y), y), || "Ray ≠ Ry".into()))
                .and_then(|()| check(ctx.same_right(ring.mul_ix(y, a), y), || "yaR ≠ yR".into())),
        )
    }
}

/// `aR ⊆ rl(a)` and `Ra ⊆ lr(a)` always, with equality for regular `a`;
/// `Ra = Rb` with `a` regular forces `b` regular.
pub(crate) struct RegularityTransfer;

impl Checker for RegularityTransfer {
    fn id(&self) -> &'static str {
        "lem-3.2-regular"
    }

    fn shapes(&self) -> &'static [&'static [&'static str]] {
        &[SINGLE, WITH_B]
    }

    fn prepare(&self, _ctx: &Context) {}

    fn sweep(&self, ctx: &Context, a: u32, tally: &mut Tally) {
        let single = Inputs::new(SINGLE, &[a]);
        tally.record(&single, self.eval(ctx, &single));
        for b in 0..ctx.order() {
            let inputs = Inputs::new(WITH_B, &[a, b]);
            tally.record(&inputs, self.eval(ctx, &inputs));
        }
    }

    fn eval(&self, ctx: &Context, inputs: &Inputs) -> Verdict {
        let a = inputs.get("a");
        if inputs.has("b") {
            let b = inputs.get("b");
            if !ctx.is_regular(a) || !ctx.same_left(a, b) {
                return Verdict::Vacuous;
            }
            return verdict(check(ctx.is_regular(b), || {
                "Ra = Rb but b is not regular".into()
            }));
        }
        let (rl, lr) = double_annihilators_ix(ctx.ring(), a);
        let regular = ctx.is_regular(a);
        verdict(
            check(ctx.right(a).is_subset_of(&rl), || "aR ⊄ rl(a)".into())
                .and_then(|()| check(ctx.left(a).is_subset_of(&lr), || "Ra ⊄ lr(a)".into()))
                .and_then(|()| {
                    check(!regular || *ctx.right(a) == rl, || {
                        "a regular but rl(a) ≠ aR".into()
                    })
                })
                .and_then(|()| {
                    check(!regular || *ctx.left(a) == lr, || {
                        "a regular but lr(a) ≠ Ra".into()
                    })
                }),
        )
    }
}

/// Group, Drazin and Moore-Penrose inverses as (b,c)-inverses.
pub(crate) struct Specializations;

impl Checker for Specializations {
    fn id(&self) -> &'static str {
        "specializations"
    }

    fn shapes(&self) -> &'static [&'static [&'static str]] {
        &[SINGLE]
    }

    fn sweep(&self, ctx: &Context, a: u32, tally: &mut Tally) {
        let inputs = Inputs::new(SINGLE, &[a]);
        tally.record(&inputs, self.eval(ctx, &inputs));
    }

    fn eval(&self, ctx: &Context, inputs: &Inputs) -> Verdict {
        let ring = ctx.ring();
        let a = inputs.get("a");
        let group = ctx.group_inverse(a);
        let as_bc = ctx.bc(a, a, a);
        if group != as_bc {
            return Verdict::Fail(format!(
                "group inverse {group:?} but (a,a)-inverse {as_bc:?}"
            ));
        }
        let (value, j) = match drazin_ix(ring, a) {
            Ok(Some(hit)) => hit,
            Ok(None) => return Verdict::Fail("no Drazin inverse within the order bound".into()),
            Err(e) => return Verdict::Fail(format!("Drazin scan: {e}")),
        };
        let power = ring.power_ix(a, j).expect("index is positive");
        let at_index = ctx.bc(a, power, power);
        if at_index != Some(value) {
            return Verdict::Fail(format!(
                "Drazin inverse {value} with index {j} but (a^j,a^j)-inverse {at_index:?}"
            ));
        }
        let star = ring.transpose_ix(a);
        if let Some(y) = ctx.bc(a, star, star) {
            let holds = moore_penrose_equations(ring, a, y);
            let names = ["aya = a", "yay = y", "(ay)* = ay", "(ya)* = ya"];
            if let Some(i) = holds.iter().position(|ok| !ok) {
                return Verdict::Fail(format!("(a*,a*)-inverse {y} violates {}", names[i]));
            }
        }
        Verdict::Pass
    }
}
