//! Finite unital rings with canonical element indexing.
//!
//! A [`RingHandle`] is immutable once built. Elements are canonical indices
//! `0..order`, with index 0 the zero element. Hot loops use the `*_ix`
//! methods on raw indices; the [`Element`] API checks ring membership.

mod arith;
mod spec;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use arith::Arith;
pub use spec::RingSpec;

pub const DEFAULT_CARDINALITY_CAP: u64 = 65_536;
pub const DEFAULT_MEMO_THRESHOLD: u32 = 4_096;
const MIN_AXIOM_SAMPLES: usize = 100;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("malformed ring spec {0}")]
    MalformedSpec(String),
    #[error("ring cardinality {order} exceeds the cap of {cap}")]
    CardinalityExceeded { order: u128, cap: u64 },
    #[error("elements belong to different rings")]
    CrossRing,
    #[error("index {index} is out of range for a ring of order {order}")]
    IndexOutOfRange { index: u64, order: u32 },
    #[error("invalid element literal `{literal}`: {reason}")]
    InvalidLiteral { literal: String, reason: String },
    #[error("element {0} is not a unit")]
    NotAUnit(String),
    #[error("powers start at 1")]
    ZeroPower,
    #[error("ring axiom violated: {0}")]
    AxiomViolation(String),
}

/// Construction knobs.
#[derive(Debug, Clone)]
pub struct RingOptions {
    pub cardinality_cap: u64,
    /// Rings up to this order get memoized operation tables (at most 65 536).
    pub memo_threshold: u32,
    /// Verify the axioms on every triple instead of a sample.
    pub full_axiom_check: bool,
    pub axiom_samples: usize,
}

impl Default for RingOptions {
    fn default() -> Self {
        RingOptions {
            cardinality_cap: DEFAULT_CARDINALITY_CAP,
            memo_threshold: DEFAULT_MEMO_THRESHOLD,
            full_axiom_check: false,
            axiom_samples: 128,
        }
    }
}

/// Process-unique identity of a constructed ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingId(u64);

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

/// A member of a specific [`RingHandle`], identified by canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Element {
    ring: RingId,
    index: u32,
}

impl Element {
    pub fn index(self) -> u32 {
        self.index
    }

    pub fn ring_id(self) -> RingId {
        self.ring
    }
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    transpose: Vec<u16>,
}

pub struct RingHandle {
    id: RingId,
    spec: RingSpec,
    arith: Arith,
    order: u32,
    one: u32,
    tables: Option<Tables>,
    units: OnceLock<Vec<Option<u32>>>,
    memo_threshold: u32,
}

impl fmt::Debug for RingHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingHandle")
            .field("spec", &self.spec.to_string())
            .field("order", &self.order)
            .field("memoized", &self.tables.is_some())
            .finish()
    }
}

/// Builds a ring with default options.
pub fn build_ring(spec: &RingSpec) -> Result<RingHandle, RingError> {
    RingHandle::build(spec, &RingOptions::default())
}

impl RingHandle {
    pub fn build(spec: &RingSpec, options: &RingOptions) -> Result<RingHandle, RingError> {
        spec.validate()?;
        let order = spec.cardinality().unwrap_or(u128::MAX);
        let cap = options.cardinality_cap.min(u64::from(u32::MAX));
        if order > u128::from(cap) {
            return Err(RingError::CardinalityExceeded {
                order,
                cap: options.cardinality_cap,
            });
        }
        let arith = Arith::from_spec(spec);
        let order = order as u32;
        let memo_threshold = options.memo_threshold.min(65_536);
        let tables = (order <= memo_threshold).then(|| build_tables(&arith, order));
        let ring = RingHandle {
            id: RingId(NEXT_RING_ID.fetch_add(1, Ordering::Relaxed)),
            spec: spec.clone(),
            one: arith.one(),
            arith,
            order,
            tables,
            units: OnceLock::new(),
            memo_threshold,
        };
        ring.verify_axioms(options)?;
        Ok(ring)
    }

    pub fn parse(spec: &str) -> Result<RingHandle, RingError> {
        build_ring(&spec.parse()?)
    }

    pub fn id(&self) -> RingId {
        self.id
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_memoized(&self) -> bool {
        self.tables.is_some()
    }

    pub fn is_commutative(&self) -> bool {
        self.spec.is_commutative()
    }

    pub fn one_ix(&self) -> u32 {
        self.one
    }

    pub fn zero(&self) -> Element {
        self.wrap(0)
    }

    pub fn one(&self) -> Element {
        self.wrap(self.one)
    }

    pub fn element(&self, index: u32) -> Result<Element, RingError> {
        if index < self.order {
            Ok(self.wrap(index))
        } else {
            Err(RingError::IndexOutOfRange {
                index: u64::from(index),
                order: self.order,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(|i| self.wrap(i))
    }

    pub(crate) fn wrap(&self, index: u32) -> Element {
        debug_assert!(index < self.order);
        Element {
            ring: self.id,
            index,
        }
    }

    /// Index of `x` after checking it belongs to this ring.
    pub fn ix(&self, x: Element) -> Result<u32, RingError> {
        if x.ring == self.id {
            Ok(x.index)
        } else {
            Err(RingError::CrossRing)
        }
    }

    // --- raw index arithmetic ---

    #[inline]
    pub fn add_ix(&self, x: u32, y: u32) -> u32 {
        match &self.tables {
            Some(t) => u32::from(t.add[x as usize * self.order as usize + y as usize]),
            None => self.arith.add(x, y),
        }
    }

    #[inline]
    pub fn mul_ix(&self, x: u32, y: u32) -> u32 {
        match &self.tables {
            Some(t) => u32::from(t.mul[x as usize * self.order as usize + y as usize]),
            None => self.arith.mul(x, y),
        }
    }

    #[inline]
    pub fn neg_ix(&self, x: u32) -> u32 {
        match &self.tables {
            Some(t) => u32::from(t.neg[x as usize]),
            None => self.arith.neg(x),
        }
    }

    #[inline]
    pub fn sub_ix(&self, x: u32, y: u32) -> u32 {
        self.add_ix(x, self.neg_ix(y))
    }

    #[inline]
    pub fn mul3_ix(&self, x: u32, y: u32, z: u32) -> u32 {
        self.mul_ix(self.mul_ix(x, y), z)
    }

    /// Product of a sequence, left to right. Empty input yields one.
    pub fn product_ix(&self, factors: &[u32]) -> u32 {
        factors.iter().fold(self.one, |acc, &f| self.mul_ix(acc, f))
    }

    #[inline]
    pub fn transpose_ix(&self, x: u32) -> u32 {
        match &self.tables {
            Some(t) => u32::from(t.transpose[x as usize]),
            None => self.arith.transpose(x),
        }
    }

    /// `x^j` for `j ≥ 1`; `None` for `j = 0`.
    pub fn power_ix(&self, x: u32, j: u32) -> Option<u32> {
        (j >= 1).then(|| (1..j).fold(x, |acc, _| self.mul_ix(acc, x)))
    }

    #[inline]
    pub fn is_idempotent_ix(&self, x: u32) -> bool {
        self.mul_ix(x, x) == x
    }

    /// Two-sided inverse by full scan (memoized for small rings).
    pub fn unit_inverse_ix(&self, x: u32) -> Option<u32> {
        if self.order <= self.memo_threshold {
            return self.unit_table()[x as usize];
        }
        self.scan_unit_inverse(x)
    }

    pub fn is_unit_ix(&self, x: u32) -> bool {
        self.unit_inverse_ix(x).is_some()
    }

    fn scan_unit_inverse(&self, x: u32) -> Option<u32> {
        (0..self.order).find(|&y| self.mul_ix(x, y) == self.one && self.mul_ix(y, x) == self.one)
    }

    fn unit_table(&self) -> &[Option<u32>] {
        self.units.get_or_init(|| {
            let mut table = vec![None; self.order as usize];
            for x in 0..self.order {
                if table[x as usize].is_some() {
                    continue;
                }
                if let Some(y) = self.scan_unit_inverse(x) {
                    table[x as usize] = Some(y);
                    table[y as usize] = Some(x);
                }
            }
            table
        })
    }

    // --- checked element API ---

    pub fn add(&self, x: Element, y: Element) -> Result<Element, RingError> {
        Ok(self.wrap(self.add_ix(self.ix(x)?, self.ix(y)?)))
    }

    pub fn sub(&self, x: Element, y: Element) -> Result<Element, RingError> {
        Ok(self.wrap(self.sub_ix(self.ix(x)?, self.ix(y)?)))
    }

    pub fn mul(&self, x: Element, y: Element) -> Result<Element, RingError> {
        Ok(self.wrap(self.mul_ix(self.ix(x)?, self.ix(y)?)))
    }

    pub fn neg(&self, x: Element) -> Result<Element, RingError> {
        Ok(self.wrap(self.neg_ix(self.ix(x)?)))
    }

    pub fn power(&self, x: Element, j: u32) -> Result<Element, RingError> {
        let x = self.ix(x)?;
        self.power_ix(x, j)
            .map(|p| self.wrap(p))
            .ok_or(RingError::ZeroPower)
    }

    pub fn is_idempotent(&self, x: Element) -> Result<bool, RingError> {
        Ok(self.is_idempotent_ix(self.ix(x)?))
    }

    pub fn is_unit(&self, x: Element) -> Result<bool, RingError> {
        Ok(self.is_unit_ix(self.ix(x)?))
    }

    pub fn unit_inverse(&self, x: Element) -> Result<Element, RingError> {
        let ix = self.ix(x)?;
        self.unit_inverse_ix(ix)
            .map(|y| self.wrap(y))
            .ok_or_else(|| RingError::NotAUnit(self.format_ix(ix)))
    }

    pub fn transpose(&self, x: Element) -> Result<Element, RingError> {
        Ok(self.wrap(self.transpose_ix(self.ix(x)?)))
    }

    /// All idempotents in index order.
    pub fn idempotents(&self) -> Vec<u32> {
        (0..self.order)
            .filter(|&x| self.is_idempotent_ix(x))
            .collect()
    }

    // --- literals ---

    /// Parses an element literal: decimal residue, row-major comma list for
    /// matrices, `(<lit>;<lit>;...)` for products.
    pub fn parse_element(&self, literal: &str) -> Result<Element, RingError> {
        parse_literal(&self.arith, literal.trim(), literal).map(|ix| self.wrap(ix))
    }

    pub fn format_element(&self, x: Element) -> Result<String, RingError> {
        Ok(self.format_ix(self.ix(x)?))
    }

    pub fn format_ix(&self, x: u32) -> String {
        format_literal(&self.arith, x)
    }

    // --- axioms ---

    fn verify_axioms(&self, options: &RingOptions) -> Result<(), RingError> {
        let n = self.order;
        if options.full_axiom_check {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        self.check_triple(x, y, z)?;
                    }
                }
            }
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_b1c0 ^ u64::from(n));
        for _ in 0..options.axiom_samples.max(MIN_AXIOM_SAMPLES) {
            let (x, y, z) = (
                rng.random_range(0..n),
                rng.random_range(0..n),
                rng.random_range(0..n),
            );
            self.check_triple(x, y, z)?;
        }
        Ok(())
    }

    /// Ring axioms on one triple; also used by the test-suite sweeps.
    pub fn check_triple(&self, x: u32, y: u32, z: u32) -> Result<(), RingError> {
        let fail = |law: &str| {
            Err(RingError::AxiomViolation(format!(
                "{law} fails on ({}, {}, {}) in {}",
                self.format_ix(x),
                self.format_ix(y),
                self.format_ix(z),
                self.spec
            )))
        };
        let (add, mul) = (|a, b| self.add_ix(a, b), |a, b| self.mul_ix(a, b));
        if add(add(x, y), z) != add(x, add(y, z)) {
            return fail("additive associativity");
        }
        if add(x, y) != add(y, x) {
            return fail("additive commutativity");
        }
        if mul(mul(x, y), z) != mul(x, mul(y, z)) {
            return fail("multiplicative associativity");
        }
        if mul(x, add(y, z)) != add(mul(x, y), mul(x, z)) {
            return fail("left distributivity");
        }
        if mul(add(x, y), z) != add(mul(x, z), mul(y, z)) {
            return fail("right distributivity");
        }
        if add(x, 0) != x || add(x, self.neg_ix(x)) != 0 {
            return fail("additive identity or inverse");
        }
        if mul(x, self.one) != x || mul(self.one, x) != x || mul(x, 0) != 0 {
            return fail("multiplicative identity or zero");
        }
        Ok(())
    }
}

fn build_tables(arith: &Arith, order: u32) -> Tables {
    let n = order as usize;
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..order {
        for y in 0..order {
            add.push(arith.add(x, y) as u16);
            mul.push(arith.mul(x, y) as u16);
        }
    }
    Tables {
        add,
        mul,
        neg: (0..order).map(|x| arith.neg(x) as u16).collect(),
        transpose: (0..order).map(|x| arith.transpose(x) as u16).collect(),
    }
}

fn bad_literal(whole: &str, reason: impl Into<String>) -> RingError {
    RingError::InvalidLiteral {
        literal: whole.to_string(),
        reason: reason.into(),
    }
}

fn parse_literal(arith: &Arith, lit: &str, whole: &str) -> Result<u32, RingError> {
    match arith {
        Arith::Residue { n } => {
            let value: u64 = lit.parse().map_err(|_| {
                bad_literal(whole, format!("`{lit}` is not a non-negative integer"))
            })?;
            if value >= u64::from(*n) {
                return Err(bad_literal(
                    whole,
                    format!("{value} is not a residue modulo {n}"),
                ));
            }
            Ok(value as u32)
        }
        Arith::Matrix { k, inner, .. } => {
            let parts = spec::split_top_level(lit, ',', whole)
                .map_err(|_| bad_literal(whole, "unbalanced parentheses"))?;
            if parts.len() != k * k {
                return Err(bad_literal(
                    whole,
                    format!("expected {} row-major entries, got {}", k * k, parts.len()),
                ));
            }
            let digits = parts
                .iter()
                .map(|p| parse_literal(inner, p.trim(), whole))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(arith.compose(&digits))
        }
        Arith::Product { factors, .. } => {
            let body = lit
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| bad_literal(whole, "product literals look like `(<lit>;<lit>)`"))?;
            let parts = spec::split_top_level(body, ';', whole)
                .map_err(|_| bad_literal(whole, "unbalanced parentheses"))?;
            if parts.len() != factors.len() {
                return Err(bad_literal(
                    whole,
                    format!("expected {} components, got {}", factors.len(), parts.len()),
                ));
            }
            let digits = parts
                .iter()
                .zip(factors)
                .map(|(p, f)| parse_literal(f, p.trim(), whole))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(arith.compose(&digits))
        }
    }
}

fn format_literal(arith: &Arith, x: u32) -> String {
    match arith {
        Arith::Residue { .. } => x.to_string(),
        Arith::Matrix { inner, .. } => arith
            .components(x)
            .into_iter()
            .map(|d| format_literal(inner, d))
            .collect::<Vec<_>>()
            .join(","),
        Arith::Product { factors, .. } => {
            let parts: Vec<String> = arith
                .components(x)
                .into_iter()
                .zip(factors)
                .map(|(d, f)| format_literal(f, d))
                .collect();
            format!("({})", parts.join(";"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(spec: &str) -> RingHandle {
        RingHandle::parse(spec).unwrap()
    }

    fn el(r: &RingHandle, lit: &str) -> Element {
        r.parse_element(lit).unwrap()
    }

    #[test]
    fn residue_ring_basics() {
        let z6 = ring("zn:6");
        assert_eq!(z6.order(), 6);
        assert_eq!(z6.zero().index(), 0);
        assert_eq!(z6.one().index(), 1);
        assert_eq!(z6.mul(el(&z6, "4"), el(&z6, "4")).unwrap().index(), 4);
        assert_eq!(z6.add(el(&z6, "5"), el(&z6, "1")).unwrap().index(), 0);
        assert_eq!(z6.power(el(&z6, "2"), 3).unwrap().index(), 2);
        assert_eq!(ring("zn:4").power_ix(2, 2), Some(0));
    }

    #[test]
    fn matrix_ring_basics() {
        let m = ring("mat:2:zn:2");
        assert_eq!(m.order(), 16);
        let u = el(&m, "1,1,0,1");
        assert_eq!(m.mul(u, u).unwrap(), m.one());
        let nil = el(&m, "0,1,0,0");
        assert_eq!(m.power(nil, 2).unwrap(), m.zero());
        assert_eq!(
            m.format_element(m.transpose(u).unwrap()).unwrap(),
            "1,0,1,1"
        );
        assert_eq!(m.transpose(m.one()).unwrap(), m.one());
    }

    #[test]
    fn zero_power_is_rejected() {
        let z6 = ring("zn:6");
        assert_eq!(z6.power(z6.one(), 0), Err(RingError::ZeroPower));
    }

    #[test]
    fn idempotents_and_units_of_z6() {
        let z6 = ring("zn:6");
        assert_eq!(z6.idempotents(), vec![0, 1, 3, 4]);
        assert!(!z6.is_idempotent(el(&z6, "2")).unwrap());
        assert_eq!(z6.unit_inverse(el(&z6, "5")).unwrap().index(), 5);
        assert_eq!(z6.unit_inverse(z6.one()).unwrap(), z6.one());
        assert!(!z6.is_unit(el(&z6, "2")).unwrap());
        assert!(matches!(
            z6.unit_inverse(el(&z6, "2")),
            Err(RingError::NotAUnit(_))
        ));
    }

    #[test]
    fn cross_ring_arithmetic_is_an_error() {
        let a = ring("zn:6");
        let b = ring("zn:6");
        assert_eq!(a.add(a.one(), b.one()), Err(RingError::CrossRing));
    }

    #[test]
    fn cardinality_cap_is_enforced() {
        let spec: RingSpec = "mat:3:zn:4".parse().unwrap();
        assert!(matches!(
            build_ring(&spec),
            Err(RingError::CardinalityExceeded { .. })
        ));
        let relaxed = RingOptions {
            cardinality_cap: 1 << 20,
            ..RingOptions::default()
        };
        let big = RingHandle::build(&spec, &relaxed).unwrap();
        assert_eq!(big.order(), 262_144);
        assert!(!big.is_memoized());
        let small = RingOptions {
            cardinality_cap: 5,
            ..RingOptions::default()
        };
        assert!(RingHandle::build(&RingSpec::residue(6), &small).is_err());
    }

    #[test]
    fn unmemoized_rings_agree_with_tables() {
        let memo = ring("mat:2:zn:3");
        let plain = RingHandle::build(
            memo.spec(),
            &RingOptions {
                memo_threshold: 0,
                ..RingOptions::default()
            },
        )
        .unwrap();
        assert!(memo.is_memoized() && !plain.is_memoized());
        for x in (0..81).step_by(7) {
            for y in 0..81 {
                assert_eq!(memo.mul_ix(x, y), plain.mul_ix(x, y));
                assert_eq!(memo.add_ix(x, y), plain.add_ix(x, y));
            }
            assert_eq!(memo.unit_inverse_ix(x), plain.unit_inverse_ix(x));
        }
    }

    #[test]
    fn literal_round_trip_and_diagnostics() {
        let p = ring("prod:zn:2,mat:2:zn:2");
        let x = el(&p, "(1;0,1,1,0)");
        assert_eq!(p.format_element(x).unwrap(), "(1;0,1,1,0)");
        for bad in ["(1;0,1,1)", "(2;0,0,0,0)", "1", "(1;0,0,0,0;1)"] {
            assert!(p.parse_element(bad).is_err(), "{bad}");
        }
        assert!(ring("zn:6").parse_element("6").is_err());
        assert!(ring("zn:6").parse_element("-1").is_err());
    }

    #[test]
    fn full_axiom_check_passes_on_small_rings() {
        let opts = RingOptions {
            full_axiom_check: true,
            ..RingOptions::default()
        };
        for spec in ["zn:6", "mat:2:zn:2", "prod:zn:2,zn:3"] {
            RingHandle::build(&spec.parse().unwrap(), &opts).unwrap();
        }
    }
}
