//! Brute-force oracles. Each test recomputes a library answer with its own
//! arithmetic on plain integer vectors and compares element by element.

use std::collections::BTreeSet;

use bcinv::harness::miner::{mine_gap, Family, MinerQuery, MinerTarget, Outcome};
use bcinv::ideal::{
    double_annihilators_ix, left_annihilator_ix, left_ideal_ix, right_annihilator_ix,
    right_ideal_ix,
};
use bcinv::inverse;
use bcinv::{RingHandle, RingOptions};

/// k×k matrices over Z_n (k = 1 is Z_n itself), stored row-major.
struct Naive {
    n: u32,
    k: usize,
    elems: Vec<Vec<u32>>,
}

impl Naive {
    fn new(n: u32, k: usize) -> Naive {
        let mut elems = vec![vec![]];
        for _ in 0..k * k {
            elems = elems
                .into_iter()
                .flat_map(|e| {
                    (0..n).map(move |v| {
                        let mut e = e.clone();
                        e.push(v);
                        e
                    })
                })
                .collect();
        }
        Naive { n, k, elems }
    }

    fn spec(&self) -> String {
        if self.k == 1 {
            format!("zn:{}", self.n)
        } else {
            format!("mat:{}:zn:{}", self.k, self.n)
        }
    }

    fn literal(x: &[u32]) -> String {
        x.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }

    fn add(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter().zip(y).map(|(a, b)| (a + b) % self.n).collect()
    }

    fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let k = self.k;
        (0..k * k)
            .map(|ij| {
                let (i, j) = (ij / k, ij % k);
                (0..k).map(|l| x[i * k + l] * y[l * k + j]).sum::<u32>() % self.n
            })
            .collect()
    }

    fn mul3(&self, x: &[u32], y: &[u32], z: &[u32]) -> Vec<u32> {
        self.mul(&self.mul(x, y), z)
    }

    fn transpose(&self, x: &[u32]) -> Vec<u32> {
        let k = self.k;
        (0..k * k).map(|ij| x[(ij % k) * k + ij / k]).collect()
    }

    fn zero(&self) -> Vec<u32> {
        vec![0; self.k * self.k]
    }

    fn one(&self) -> Vec<u32> {
        (0..self.k * self.k)
            .map(|ij| u32::from(ij / self.k == ij % self.k) % self.n)
            .collect()
    }

    fn is_regular(&self, x: &[u32]) -> bool {
        self.elems.iter().any(|g| self.mul3(x, g, x) == x)
    }

    /// Maps naive element positions to library indices.
    fn bind(&self, ring: &RingHandle) -> Vec<u32> {
        self.elems
            .iter()
            .map(|e| ring.parse_element(&Naive::literal(e)).unwrap().index())
            .collect()
    }

    fn set(&self, keep: impl Fn(&[u32]) -> bool) -> BTreeSet<Vec<u32>> {
        self.elems.iter().filter(|e| keep(e)).cloned().collect()
    }

    fn right(&self, a: &[u32]) -> BTreeSet<Vec<u32>> {
        self.elems.iter().map(|r| self.mul(a, r)).collect()
    }

    fn left(&self, a: &[u32]) -> BTreeSet<Vec<u32>> {
        self.elems.iter().map(|r| self.mul(r, a)).collect()
    }

    fn lann(&self, a: &[u32]) -> BTreeSet<Vec<u32>> {
        self.set(|x| self.mul(x, a) == self.zero())
    }

    fn rann(&self, a: &[u32]) -> BTreeSet<Vec<u32>> {
        self.set(|x| self.mul(a, x) == self.zero())
    }

    /// The (b,c)-inverse straight from its definition.
    fn bc_inverse(&self, a: &[u32], b: &[u32], c: &[u32]) -> Option<Vec<u32>> {
        let found: Vec<Vec<u32>> = self
            .elems
            .iter()
            .filter(|y| {
                self.mul3(y, a, b) == b
                    && self.mul3(c, a, y) == c
                    && self.elems.iter().any(|r| &self.mul3(b, r, y) == *y)
                    && self.elems.iter().any(|s| &self.mul3(y, s, c) == *y)
            })
            .cloned()
            .collect();
        assert!(found.len() <= 1, "definition accepted {found:?}");
        found.into_iter().next()
    }
}

fn build(spec: &str) -> RingHandle {
    RingHandle::parse(spec).unwrap()
}

fn to_ix(naive: &Naive, map: &[u32], set: &BTreeSet<Vec<u32>>) -> Vec<u32> {
    let mut out: Vec<u32> = set
        .iter()
        .map(|e| map[naive.elems.iter().position(|x| x == e).unwrap()])
        .collect();
    out.sort_unstable();
    out
}

#[test]
fn arithmetic_matches_hand_computation() {
    for (n, k) in [(2, 1), (5, 1), (6, 1), (12, 1), (2, 2), (3, 2), (4, 2)] {
        let naive = Naive::new(n, k);
        let ring = build(&naive.spec());
        let map = naive.bind(&ring);
        assert_eq!(ring.order() as usize, naive.elems.len());
        assert_eq!(map.iter().collect::<BTreeSet<_>>().len(), naive.elems.len());
        let pos = |e: &Vec<u32>| map[naive.elems.iter().position(|x| x == e).unwrap()];
        assert_eq!(ring.one_ix(), pos(&naive.one()));
        assert_eq!(0, pos(&naive.zero()));
        for (i, x) in naive.elems.iter().enumerate() {
            assert_eq!(ring.transpose_ix(map[i]), pos(&naive.transpose(x)));
            for (j, y) in naive.elems.iter().enumerate() {
                assert_eq!(
                    ring.add_ix(map[i], map[j]),
                    pos(&naive.add(x, y)),
                    "{x:?}+{y:?}"
                );
                assert_eq!(
                    ring.mul_ix(map[i], map[j]),
                    pos(&naive.mul(x, y)),
                    "{x:?}*{y:?}"
                );
            }
        }
    }
}

#[test]
fn mat2_identity_has_index_nine() {
    let ring = build("mat:2:zn:2");
    assert_eq!(ring.parse_element("1,0,0,1").unwrap().index(), 9);
    assert_eq!(ring.one_ix(), 9);
}

#[test]
fn product_of_z2_and_z3_is_z6() {
    let z6 = build("zn:6");
    let prod = build("prod:zn:2,zn:3");
    let phi = |x: u32| {
        prod.parse_element(&format!("({};{})", x % 2, x % 3))
            .unwrap()
            .index()
    };
    let image: BTreeSet<u32> = (0..6).map(phi).collect();
    assert_eq!(image.len(), 6);
    assert_eq!(phi(1), prod.one_ix());
    for x in 0..6 {
        for y in 0..6 {
            assert_eq!(phi(z6.add_ix(x, y)), prod.add_ix(phi(x), phi(y)));
            assert_eq!(phi(z6.mul_ix(x, y)), prod.mul_ix(phi(x), phi(y)));
        }
    }
}

#[test]
fn ring_axioms_hold_exhaustively() {
    for spec in [
        "zn:12",
        "mat:2:zn:2",
        "prod:zn:2,mat:2:zn:2",
        "prod:zn:4,zn:6",
        "mat:2:zn:4",
    ] {
        let ring = build(spec);
        let n = ring.order();
        assert!(n <= 256);
        let one = ring.one_ix();
        for x in 0..n {
            assert_eq!(ring.add_ix(x, 0), x);
            assert_eq!(ring.add_ix(x, ring.neg_ix(x)), 0);
            assert_eq!(ring.mul_ix(x, one), x);
            assert_eq!(ring.mul_ix(one, x), x);
            for y in 0..n {
                assert_eq!(ring.add_ix(x, y), ring.add_ix(y, x));
                for z in 0..n {
                    assert_eq!(
                        ring.mul_ix(ring.mul_ix(x, y), z),
                        ring.mul_ix(x, ring.mul_ix(y, z)),
                        "{spec}: associativity at {x},{y},{z}"
                    );
                    let yz = ring.add_ix(y, z);
                    assert_eq!(
                        ring.mul_ix(x, yz),
                        ring.add_ix(ring.mul_ix(x, y), ring.mul_ix(x, z))
                    );
                    assert_eq!(
                        ring.mul_ix(yz, x),
                        ring.add_ix(ring.mul_ix(y, x), ring.mul_ix(z, x))
                    );
                }
            }
        }
    }
}

#[test]
fn transpose_is_an_anti_involution() {
    for (k, n) in [(1, 4), (2, 2), (2, 3), (2, 4)] {
        let spec = if k == 1 {
            format!("zn:{n}")
        } else {
            format!("mat:{k}:zn:{n}")
        };
        let ring = build(&spec);
        for x in 0..ring.order() {
            let xt = ring.transpose_ix(x);
            assert_eq!(ring.transpose_ix(xt), x);
            for y in 0..ring.order() {
                let yt = ring.transpose_ix(y);
                assert_eq!(ring.transpose_ix(ring.mul_ix(x, y)), ring.mul_ix(yt, xt));
                assert_eq!(ring.transpose_ix(ring.add_ix(x, y)), ring.add_ix(xt, yt));
            }
        }
    }
}

#[test]
fn ideals_match_hand_computation() {
    for (n, k) in [(6, 1), (8, 1), (12, 1), (2, 2), (3, 2)] {
        let naive = Naive::new(n, k);
        let ring = build(&naive.spec());
        let map = naive.bind(&ring);
        for (i, a) in naive.elems.iter().enumerate() {
            let ix = map[i];
            let members = |s: bcinv::Subset| s.iter().collect::<Vec<u32>>();
            assert_eq!(
                members(right_ideal_ix(&ring, ix)),
                to_ix(&naive, &map, &naive.right(a))
            );
            assert_eq!(
                members(left_ideal_ix(&ring, ix)),
                to_ix(&naive, &map, &naive.left(a))
            );
            assert_eq!(
                members(left_annihilator_ix(&ring, ix)),
                to_ix(&naive, &map, &naive.lann(a))
            );
            assert_eq!(
                members(right_annihilator_ix(&ring, ix)),
                to_ix(&naive, &map, &naive.rann(a))
            );

            let la = naive.lann(a);
            let rl = naive.set(|x| la.iter().all(|l| naive.mul(l, x) == naive.zero()));
            let ra = naive.rann(a);
            let lr = naive.set(|x| ra.iter().all(|r| naive.mul(x, r) == naive.zero()));
            let (lib_rl, lib_lr) = double_annihilators_ix(&ring, ix);
            assert_eq!(members(lib_rl), to_ix(&naive, &map, &rl));
            assert_eq!(members(lib_lr), to_ix(&naive, &map, &lr));
        }
    }
}

#[test]
fn bc_inverse_matches_definition_oracle() {
    for (n, k) in [(2, 1), (4, 1), (6, 1), (8, 1), (9, 1), (2, 2)] {
        let naive = Naive::new(n, k);
        let ring = build(&naive.spec());
        let map = naive.bind(&ring);
        let el = |i: usize| ring.element(map[i]).unwrap();
        let len = naive.elems.len();
        for ai in 0..len {
            for bi in 0..len {
                for ci in 0..len {
                    let (a, b, c) = (&naive.elems[ai], &naive.elems[bi], &naive.elems[ci]);
                    let expected = naive
                        .bc_inverse(a, b, c)
                        .map(|y| map[naive.elems.iter().position(|x| *x == y).unwrap()]);
                    let got = inverse::bc_inverse(&ring, el(ai), el(bi), el(ci)).unwrap();
                    assert_eq!(
                        got.value_ix(),
                        expected,
                        "{} a={a:?} b={b:?} c={c:?}",
                        naive.spec()
                    );
                }
            }
        }
    }
}

/// Over Z_n and M_2(Z_n) every element satisfies rl(x) = xR and lr(x) = Rx.
/// With that, equal annihilators force equal principal ideals, so none of
/// the miner targets can have a witness in these families.
#[test]
fn miner_families_satisfy_double_annihilator_condition() {
    for (n, k) in [(4, 1), (8, 1), (9, 1), (12, 1), (2, 2), (3, 2)] {
        let naive = Naive::new(n, k);
        for a in &naive.elems {
            let la = naive.lann(a);
            let rl = naive.set(|x| la.iter().all(|l| naive.mul(l, x) == naive.zero()));
            let ra = naive.rann(a);
            let lr = naive.set(|x| ra.iter().all(|r| naive.mul(x, r) == naive.zero()));
            assert_eq!(rl, naive.right(a), "{} rl({a:?})", naive.spec());
            assert_eq!(lr, naive.left(a), "{} lr({a:?})", naive.spec());
        }
    }
}

/// Independent sweep of each miner target, compared with `mine_gap`.
#[test]
fn miner_none_found_agrees_with_brute_force() {
    let cases = [(Family::Zn, 1, 8), (Family::Mat2, 2, 2)];
    for (family, k, max_n) in cases {
        let mut naive_hits = [0usize; 4];
        for n in 2..=max_n {
            let naive = Naive::new(n, k);
            for a in &naive.elems {
                for b in &naive.elems {
                    for c in &naive.elems {
                        let t = naive.mul3(c, a, b);
                        let invertible =
                            naive.left(b) == naive.left(&t) && naive.right(c) == naive.right(&t);
                        let annihilators =
                            naive.lann(&t) == naive.lann(c) && naive.rann(&t) == naive.rann(b);
                        if annihilators && !invertible {
                            naive_hits[0] += 1;
                            if naive.is_regular(b) && naive.is_regular(c) {
                                naive_hits[1] += 1;
                            }
                        }
                        if !naive.is_regular(&t)
                            && naive.rann(&t) == naive.rann(b)
                            && naive.right(&t) == naive.right(c)
                            && !(naive.lann(&t) == naive.lann(c) && naive.left(&t) == naive.left(b))
                        {
                            naive_hits[2] += 1;
                        }
                        if !invertible
                            && naive.elems.iter().any(|y| {
                                naive.lann(y) == naive.lann(b)
                                    && naive.rann(y) == naive.rann(c)
                                    && naive.mul3(y, a, y) == *y
                            })
                        {
                            naive_hits[3] += 1;
                        }
                    }
                }
            }
        }
        for (slot, target) in MinerTarget::ALL.iter().enumerate() {
            let report = mine_gap(&MinerQuery {
                target: *target,
                family,
                max_n: u64::from(max_n),
                budget: 50_000_000,
                max_witnesses: 10,
                ring_options: RingOptions::default(),
            })
            .unwrap();
            let expected = if naive_hits[slot] == 0 {
                Outcome::NoneFound
            } else {
                Outcome::Found
            };
            assert_eq!(
                report.outcome, expected,
                "{target} on {family:?} up to {max_n}"
            );
        }
    }
}
