//! Existence criteria for the (b,c)-inverse and the coincidence of the
//! (b,c), hybrid and annihilator inverses.

use super::{all_equal, check, verdict, Checker, Context, Inputs, Tally, Verdict};
use crate::ideal::{is_direct_sum_of_ring, subset_intersection};
use crate::inverse::{definition_accepts, is_outer_inverse, scan_bc_definition, EngineError};

const TRIPLE: &[&str] = &["a", "b", "c"];
const WITH_Y: &[&str] = &["a", "b", "c", "y"];

fn sweep_triples(checker: &dyn Checker, ctx: &Context, a: u32, tally: &mut Tally) {
    for b in 0..ctx.order() {
        if tally.is_full() {
            return;
        }
        for c in 0..ctx.order() {
            let inputs = Inputs::new(TRIPLE, &[a, b, c]);
            tally.record(&inputs, checker.eval(ctx, &inputs));
        }
    }
}

fn triple(inputs: &Inputs) -> (u32, u32, u32) {
    (inputs.get("a"), inputs.get("b"), inputs.get("c"))
}

/// Uniqueness of the definition scan and agreement with the two
/// characterizations through ideals.
pub(crate) struct BcRoutes;

impl Checker for BcRoutes {
    fn id(&self) -> &'static str {
        "bc-routes"
    }

    fn shapes(&self) -> &'static [&'static [&'static str]] {
        &[TRIPLE]
    }

    fn prepare(&self, _ctx: &Context) {}

    fn sweep(&self, ctx: &Context, a: u32, tally: &mut Tally) {
        sweep_triples(self, ctx, a, tally)
    }

    fn eval(&self, ctx: &Context, inputs: &Inputs) -> Verdict {
        let ring = ctx.ring();
        let (a, b, c) = triple(inputs);
        let by_definition = match scan_bc_definition(ring, a, b, c) {
            Ok(hit) => hit.map(|(y, _, _)| y),
            Err(EngineError::MultipleAcceptors { first, second, .. }) => {
                return Verdict::Fail(format!(
                    "uniqueness: definition accepts both {first} and {second}"
                ))
            }
            Err(e) => return Verdict::Fail(e.to_string()),
        };
        let mut by_lemma = (0..ctx.order()).filter(|&y| {
            is_outer_inverse(ring, a, y) && ctx.same_right(y, b) && ctx.same_left(y, c)
        });
        let lemma = by_lemma.next();
        if let Some(second) = by_lemma.next() {
            return Verdict::Fail(format!(
                "uniqueness: ideal characterization accepts both {} and {second}",
                lemma.unwrap_or_default()
            ));
        }
        let t = ring.mul3_ix(c, a, b);
        let exists = ctx.same_left(b, t) && ctx.same_right(c, t);
        verdict(
            check(by_definition == lemma, || {
                format!("definition gives {by_definition:?}, yay=y/yR=bR/Ry=Rc gives {lemma:?}")
            })
            .and_then(|()| {
                check(by_definition.is_some() == exists, || {
                    format!(
                        "definition existence {} but Rb=Rt and cR=tR is {exists}",
                        by_definition.is_some()
                    )
                })
            }),
        )
    }
}

/// Whenever `a‖(b,c)` exists, `b`, `c` and `cab` are regular.
pub(crate) struct RegularityOfBc;

impl Checker for RegularityOfBc {
    fn id(&self) -> &'static str {
        "prop-3.3-regular"
    }

    fn shapes(&self) -> &'static [&'static [&'static str]] {
        &[TRIPLE]
    }

    fn sweep(&self, ctx: &Context, a: u32, tally: &mut Tally) {
        sweep_triples(self, ctx, a, tally)
    }

    fn eval(&self, ctx: &Context, inputs: &Inputs) -> Verdict {
        let (a, b, c) = triple(inputs);
        if ctx.bc(a, b, c).is_none() {
            return Verdict::Vacuous;
        }
        let t = ctx.ring().mul3_ix(c, a, b);
        verdict(
            check(ctx.is_regular(b), || "b is not regular".into())
                .and_then(|()| check(ctx.is_regular(c), || "c is not regular".into()))
                .and_then(|()| check(ctx.is_regular(t), || "cab is not regular".into())),
        )
    }
}

/// Truth values of the five existence conditions for one triple.
struct Conditions {
    invertible: bool,
    direct_sum: bool,
    right_side: bool,
    left_side: bool,
    annihilators: bool,
}

impl Conditions {
    fn of(ctx: &Context, a: u32, b: u32, c: u32) -> Conditions {
        let ring = ctx.ring();
        let t = ring.mul3_ix(c, a, b);
        let ab = ring.mul_ix(a, b);
        let direct_sum = subset_intersection(ctx.rann(a), ctx.right(b))
            .expect("same ring")
            .is_zero()
            && is_direct_sum_of_ring(ring, ctx.right(ab), ctx.rann(c)).expect("same ring");
        Conditions {
            invertible: ctx.bc(a, b, c).is_some(),
            direct_sum,
            right_side: ctx.same_rann(t, b) && ctx.same_right(t, c),
            left_side: ctx.same_lann(t, c) && ctx.same_left(t, b),
            annihilators: ctx.same_lann(t, c) && ctx.same_rann(t, b),
        }
    }

    fn first_four(&self) -> [(&'static str, bool); 4] {
        [
            ("(i) a is (b,c)-invertible", self.invertible),
            ("(ii) r(a)∩bR=0 and R=abR⊕r(c)", self.direct_sum),
            ("(iii) r(t)=r(b) and tR=cR", self.right_side),
            ("(iv) l(t)=l(c) and Rt=Rb", self.left_side),
        ]
    }
}

/// `(i) ⇒ (ii) ⇒ (iii)`, which need no regularity hypothesis.
pub(crate) struct ForwardImplications;

impl Checker for ForwardImplications {
    fn id(&self) -> &'static str {
        "thm-3.4-forward"
    }

    fn shapes(&self) -> &'static [&'static [&'static str]] {
        &[TRIPLE]
    }

    fn sweep(&self, ctx: &Context, a: u32, tally: &mut Tally) {
        sweep_triples(self, ctx, a, tally)
    }

    fn eval(&self, ctx: &Context, inputs: &Inputs) -> Verdict {
        let (a, b, c) = triple(inputs);
        let k = Conditions::of(ctx, a, b, c);
        verdict(
            check(!k.invertible || k.direct_sum, || {
                "(i) holds but (ii) fails".into()
            })
            .and_then(|()| {
                check(!k.direct_sum || k.right_side, || {
                    "(ii) holds but (iii) fails".into()
                })
            }),
        )
    }
}

/// Equivalence of the existence conditions under a regularity hypothesis.
pub(crate) enum Equivalences {
    /// `t = cab` regular: all five conditions.
    TRegular,
    /// `b` and `c` regular: the first four.
    BcRegular,
}

impl Checker for Equivalences {
    fn id(&self) -> &'static str {
        match self {
            Equivalences::TRegular => "thm-3.4-equiv",
            Equivalences::BcRegular => "thm-3.7-equiv",
        }
    }

    fn shapes(&self) -> &'static [&'static [&'static str]] {
        &[TRIPLE]
    }

    fn sweep(&self, ctx: &Context, a: u32, tally: &mut Tally) {
        sweep_triples(self, ctx, a, tally)
    }

    fn eval(&self, ctx: &Context, inputs: &Inputs) -> Verdict {
        let (a, b, c) = triple(inputs);
        let k = match self {
            Equivalences::TRegular => {
                if !ctx.is_regular(ctx.ring().mul3_ix(c, a, b)) {
                    return Verdict::Vacuous;
                }
                let k = Conditions::of(ctx, a, b, c);
                let mut all = k.first_four().to_vec();
                all.push(("(v) l(t)=l(c) and r(t)=r(b)", k.annihilators));
                return verdict(all_equal(&all));
            }
            Equivalences::BcRegular => {
                if !(ctx.is_regular(b) && ctx.is_regular(c)) {
                    return Verdict::Vacuous;
                }
                Conditions::of(ctx, a, b, c)
            }
        };
        verdict(all_equal(&k.first_four()))
    }
}

/// The three acceptance predicates agree on every `y`.
pub(crate) enum Coincidence {
    TRegular,
    BcRegular,
}

impl Coincidence {
    fn hypothesis(&self, ctx: &Context, a: u32, b: u32, c: u32) -> bool {
        match self {
            Coincidence::TRegular => ctx.is_regular(ctx.ring().mul3_ix(c, a, b)),
            Coincidence::BcRegular => ctx.is_regular(b) && ctx.is_regular(c),
        }
    }
}

impl Checker for Coincidence {
    fn id(&self) -> &'static str {
        match self {
            Coincidence::TRegular => "coincidence-t-regular",
            Coincidence::BcRegular => "coincidence-bc-regular",
        }
    }

    fn shapes(&self) -> &'static [&'static [&'static str]] {
        &[WITH_Y]
    }

    fn prepare(&self, _ctx: &Context) {}

    fn sweep(&self, ctx: &Context, a: u32, tally: &mut Tally) {
        let n = ctx.order();
        for b in 0..n {
            if tally.is_full() {
                return;
            }
            for c in 0..n {
                if !self.hypothesis(ctx, a, b, c) {
                    tally.vacuous(u64::from(n));
                    continue;
                }
                for y in 0..n {
                    let inputs = Inputs::new(WITH_Y, &[a, b, c, y]);
                    tally.record(&inputs, self.eval(ctx, &inputs));
                }
            }
        }
    }

    fn eval(&self, ctx: &Context, inputs: &Inputs) -> Verdict {
        let (a, b, c) = triple(inputs);
        let y = inputs.get("y");
        if !self.hypothesis(ctx, a, b, c) {
            return Verdict::Vacuous;
        }
        let ring = ctx.ring();
        let outer = is_outer_inverse(ring, a, y);
        let bc = definition_accepts(ring, a, b, c, y).is_some();
        let hybrid = outer && ctx.same_right(y, b) && ctx.same_rann(y, c);
        let annihilator = outer && ctx.same_lann(y, b) && ctx.same_rann(y, c);
        verdict(all_equal(&[
            ("(b,c)-inverse", bc),
            ("hybrid (b,c)-inverse", hybrid),
            ("annihilator (b,c)-inverse", annihilator),
        ]))
    }
}
