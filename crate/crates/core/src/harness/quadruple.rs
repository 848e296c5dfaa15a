//! Relations between `A = a‖(b,c)` and `D = d‖(b,c)` when both exist.

use super::{all_equal, check, verdict, Checker, Context, Inputs, Tally, Verdict};

const QUAD: &[&str] = &["a", "b", "c", "d"];
const QUAD_B: &[&str] = &["a", "b", "c", "d", "b_inner"];
const QUAD_C: &[&str] = &["a", "b", "c", "d", "c_inner"];

/// Both inverses of a quadruple, or `None` when the hypotheses fail.
fn pair(ctx: &Context, inputs: &Inputs) -> Option<(u32, u32)> {
    let (a, b, c, d) = (
        inputs.get("a"),
        inputs.get("b"),
        inputs.get("c"),
        inputs.get("d"),
    );
    Some((ctx.bc(a, b, c)?, ctx.bc(d, b, c)?))
}

/// Enumerates `(b, c, d)` behind lead `a`, handing qualifying quadruples to
/// `visit`. Quadruples without both inverses are counted vacuous.
fn sweep_quadruples(
    ctx: &Context,
    a: u32,
    tally: &mut Tally,
    mut visit: impl FnMut(&mut Tally, [u32; 4]),
) {
    let n = ctx.order();
    for b in 0..n {
        if tally.is_full() {
            return;
        }
        for c in 0..n {
            if ctx.bc(a, b, c).is_none() {
                tally.vacuous(u64::from(n));
                continue;
            }
            for d in 0..n {
                if ctx.bc(d, b, c).is_none() {
                    tally.vacuous(1);
                    continue;
                }
                visit(tally, [a, b, c, d]);
            }
        }
    }
}

fn sweep_plain(checker: &dyn Checker, ctx: &Context, a: u32, tally: &mut Tally) {
    sweep_quadruples(ctx, a, tally, |tally, q| {
        let inputs = Inputs::new(QUAD, &q);
        tally.record(&inputs, checker.eval(ctx, &inputs));
    })
}

/// The four identity groups relating `A`, `D`, `e = bb⁻` and `f = c⁻c`.
pub(crate) struct Identities;

impl Checker for Identities {
    fn id(&self) -> &'static str {
        "lem-4.1-identities"
    }

    fn shapes(&self) -> &'static [&'static [&'static str]] {
        &[QUAD, QUAD_B, QUAD_C]
    }

    fn sweep(&self, ctx: &Context, a: u32, tally: &mut Tally) {
        sweep_quadruples(ctx, a, tally, |tally, q| {
            let inputs = Inputs::new(QUAD, &q);
            tally.record(&inputs, self.eval(ctx, &inputs));
            let (b_choices, b_cut) = ctx.inner_choices(q[1]);
            let (c_choices, c_cut) = ctx.inner_choices(q[2]);
            if b_cut || c_cut {
                tally.mark_truncated();
            }
            for &g in b_choices {
                let inputs = Inputs::new(QUAD_B, &[q[0], q[1], q[2], q[3], g]);
                tally.record(&inputs, self.eval(ctx, &inputs));
            }
            for &h in c_choices {
                let inputs = Inputs::new(QUAD_C, &[q[0], q[1], q[2], q[3], h]);
                tally.record(&inputs, self.eval(ctx, &inputs));
            }
        })
    }

    fn eval(&self, ctx: &Context, inputs: &Inputs) -> Verdict {
        let Some((big_a, big_d)) = pair(ctx, inputs) else {
            return Verdict::Vacuous;
        };
        let ring = ctx.ring();
        let p = |xs: &[u32]| ring.product_ix(xs);
        let (a, b, c, d) = (
            inputs.get("a"),
            inputs.get("b"),
            inputs.get("c"),
            inputs.get("d"),
        );
        if inputs.has("b_inner") {
            let g = inputs.get("b_inner");
            if p(&[b, g, b]) != b {
                return Verdict::Vacuous;
            }
            let e = ring.mul_ix(b, g);
            return verdict(
                check(p(&[e, big_d, a, big_a, d, e]) == e, || {
                    "(iii) e ≠ eDaAde".into()
                })
                .and_then(|()| check(p(&[e, big_a, a, e]) == e, || "(iii) e ≠ eAae".into()))
                .and_then(|()| check(p(&[e, big_d, d, e]) == e, || "(iii) e ≠ eDde".into())),
            );
        }
        if inputs.has("c_inner") {
            let h = inputs.get("c_inner");
            if p(&[c, h, c]) != c {
                return Verdict::Vacuous;
            }
            let f = ring.mul_ix(h, c);
            return verdict(
                check(p(&[f, d, big_a, a, big_d, f]) == f, || {
                    "(iv) f ≠ fdAaDf".into()
                })
                .and_then(|()| check(p(&[f, d, big_d, f]) == f, || "(iv) f ≠ fdDf".into()))
                .and_then(|()| check(p(&[f, a, big_a, f]) == f, || "(iv) f ≠ faAf".into())),
            );
        }
        verdict(
            check(p(&[big_d, a, big_a]) == big_d, || "(i) D ≠ DaA".into())
                .and_then(|()| check(p(&[big_a, a, big_d]) == big_d, || "(i) D ≠ AaD".into()))
                .and_then(|()| check(p(&[big_a, d, big_d]) == big_a, || "(ii) A ≠ AdD".into()))
                .and_then(|()| check(p(&[big_d, d, big_a]) == big_a, || "(ii) A ≠ DdA".into())),
        )
    }
}

/// Characterizations of `aA = dD` (left) and `Aa = Dd` (right).
pub(crate) enum EqualIdempotents {
    Left,
    Right,
}

impl Checker for EqualIdempotents {
    fn id(&self) -> &'static str {
        match self {
            EqualIdempotents::Left => "thm-4.2-equal-idempotents",
            EqualIdempotents::Right => "thm-4.3-equal-idempotents",
        }
    }

    fn shapes(&self) -> &'static [&'static [&'static str]] {
        &[QUAD]
    }

    fn sweep(&self, ctx: &Context, a: u32, tally: &mut Tally) {
        sweep_plain(self, ctx, a, tally)
    }

    fn eval(&self, ctx: &Context, inputs: &Inputs) -> Verdict {
        let Some((big_a, big_d)) = pair(ctx, inputs) else {
            return Verdict::Vacuous;
        };
        let ring = ctx.ring();
        let p = |xs: &[u32]| ring.product_ix(xs);
        let (a, d) = (inputs.get("a"), inputs.get("d"));
        let clauses = match self {
            EqualIdempotents::Left => {
                let (a_a, d_d) = (p(&[a, big_a]), p(&[d, big_d]));
                let (a_d, d_a) = (p(&[a, big_d]), p(&[d, big_a]));
                [
                    ("(i) aA = dD", a_a == d_d),
                    ("(ii) aA·dD = dD·aA", p(&[a_a, d_d]) == p(&[d_d, a_a])),
                    ("(iii) aD·dA = dA·aD", p(&[a_d, d_a]) == p(&[d_a, a_d])),
                    ("(iv) (aD)# = dA", ctx.group_inverse(a_d) == Some(d_a)),
                    ("(v) (dA)# = aD", ctx.group_inverse(d_a) == Some(a_d)),
                ]
            }
            EqualIdempotents::Right => {
                let (a_a, d_d) = (p(&[big_a, a]), p(&[big_d, d]));
                let (a_d, d_a) = (p(&[big_a, d]), p(&[big_d, a]));
                [
                    ("(i) Aa = Dd", a_a == d_d),
                    ("(ii) Dd·Aa = Aa·Dd", p(&[d_d, a_a]) == p(&[a_a, d_d])),
                    ("(iii) Ad·Da = Da·Ad", p(&[a_d, d_a]) == p(&[d_a, a_d])),
                    ("(iv) (Ad)# = Da", ctx.group_inverse(a_d) == Some(d_a)),
                    ("(v) (Da)# = Ad", ctx.group_inverse(d_a) == Some(a_d)),
                ]
            }
        };
        verdict(all_equal(&clauses))
    }
}

/// `(ad)‖(b,c) = DA` and its two identity characterizations.
pub(crate) struct ReverseOrder;

impl Checker for ReverseOrder {
    fn id(&self) -> &'static str {
        "thm-4.4-reverse-order"
    }

    fn shapes(&self) -> &'static [&'static [&'static str]] {
        &[QUAD]
    }

    fn sweep(&self, ctx: &Context, a: u32, tally: &mut Tally) {
        sweep_plain(self, ctx, a, tally)
    }

    fn eval(&self, ctx: &Context, inputs: &Inputs) -> Verdict {
        let Some((big_a, big_d)) = pair(ctx, inputs) else {
            return Verdict::Vacuous;
        };
        let ring = ctx.ring();
        let p = |xs: &[u32]| ring.product_ix(xs);
        let (a, b, c, d) = (
            inputs.get("a"),
            inputs.get("b"),
            inputs.get("c"),
            inputs.get("d"),
        );
        let da = p(&[big_d, big_a]);
        verdict(all_equal(&[
            ("(i) (ad)‖ = DA", ctx.bc(p(&[a, d]), b, c) == Some(da)),
            (
                "(ii) D = DadDA = DAadD",
                p(&[big_d, a, d, big_d, big_a]) == big_d
                    && p(&[big_d, big_a, a, d, big_d]) == big_d,
            ),
            (
                "(iii) A = AadDA = DAadA",
                p(&[big_a, a, d, big_d, big_a]) == big_a
                    && p(&[big_d, big_a, a, d, big_a]) == big_a,
            ),
        ]))
    }
}

/// Characterizations of `Aa = dD`, which also yield `(ad)‖ = DA`.
pub(crate) struct MixedIdempotents;

impl Checker for MixedIdempotents {
    fn id(&self) -> &'static str {
        "thm-4.5-mixed-idempotents"
    }

    fn shapes(&self) -> &'static [&'static [&'static str]] {
        &[QUAD]
    }

    fn sweep(&self, ctx: &Context, a: u32, tally: &mut Tally) {
        sweep_plain(self, ctx, a, tally)
    }

    fn eval(&self, ctx: &Context, inputs: &Inputs) -> Verdict {
        let Some((big_a, big_d)) = pair(ctx, inputs) else {
            return Verdict::Vacuous;
        };
        let ring = ctx.ring();
        let p = |xs: &[u32]| ring.product_ix(xs);
        let (a, b, c, d) = (
            inputs.get("a"),
            inputs.get("b"),
            inputs.get("c"),
            inputs.get("d"),
        );
        let first = p(&[big_a, a]) == p(&[d, big_d]);
        verdict(
            all_equal(&[
                ("(i) Aa = dD", first),
                (
                    "(ii) AdDa = dDaA",
                    p(&[big_a, d, big_d, a]) == p(&[d, big_d, a, big_a]),
                ),
                (
                    "(iii) DdAa = dAaD",
                    p(&[big_d, d, big_a, a]) == p(&[d, big_a, a, big_d]),
                ),
                (
                    "(iv) A = dDA and D = DAa",
                    p(&[d, big_d, big_a]) == big_a && p(&[big_d, big_a, a]) == big_d,
                ),
                (
                    "(v) AaD = DAa and AdD = dDA",
                    p(&[big_a, a, big_d]) == p(&[big_d, big_a, a])
                        && p(&[big_a, d, big_d]) == p(&[d, big_d, big_a]),
                ),
            ])
            .and_then(|()| {
                let product = ctx.bc(p(&[a, d]), b, c);
                check(!first || product == Some(p(&[big_d, big_a])), || {
                    format!("Aa = dD but (ad)‖ is {product:?}, not DA")
                })
            }),
        )
    }
}
