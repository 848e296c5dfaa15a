//! Generalized inverses by exhaustive search and by closed formula.
//!
//! Every notion has a scan that tests its defining equations against every
//! element of the ring. The closed formulas (Bott-Duffin for `e = f`, the
//! transfer formulas) are always cross-checked against a scan before a value
//! is returned. Non-existence is a [`Status`], not an error; errors are
//! reserved for bad input and for internal inconsistencies such as two
//! distinct acceptors of a scan that has a uniqueness theorem behind it.

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::ideal::{
    left_annihilator_ix, left_ideal_ix, right_annihilator_ix, right_ideal_ix, Subset,
};
use crate::ring::{Element, RingError, RingHandle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("{kind} search accepted two distinct values {first} and {second}")]
    MultipleAcceptors {
        kind: InverseKind,
        first: u32,
        second: u32,
    },
    #[error("routes disagree: {0}")]
    RouteDisagreement(String),
    #[error("`{0}` must be an idempotent")]
    NotIdempotent(&'static str),
    #[error("y is not an outer inverse of a")]
    NotOuterInverse,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl EngineError {
    /// Inconsistencies that can only come from a bug in the engine.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            EngineError::MultipleAcceptors { .. } | EngineError::RouteDisagreement(_)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InverseKind {
    Bc,
    Hybrid,
    Annihilator,
    Group,
    BottDuffin,
    ImageKernel,
}

impl fmt::Display for InverseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InverseKind::Bc => "(b,c)-inverse",
            InverseKind::Hybrid => "hybrid (b,c)-inverse",
            InverseKind::Annihilator => "annihilator (b,c)-inverse",
            InverseKind::Group => "group inverse",
            InverseKind::BottDuffin => "Bott-Duffin inverse",
            InverseKind::ImageKernel => "image-kernel inverse",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    DefinitionSearch,
    LemmaCharacterization,
    ClosedFormula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Found,
    NotFound,
}

/// A named element, as it appears in result records.
pub type Named = (&'static str, Element);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseResult {
    pub kind: InverseKind,
    pub method: Method,
    pub inputs: Vec<Named>,
    pub status: Status,
    pub value: Option<Element>,
    /// Auxiliary elements that certify the defining equations.
    pub witnesses: Vec<Named>,
}

impl InverseResult {
    fn new(kind: InverseKind, method: Method, inputs: Vec<Named>) -> Self {
        InverseResult {
            kind,
            method,
            inputs,
            status: Status::NotFound,
            value: None,
            witnesses: Vec::new(),
        }
    }

    fn found(mut self, value: Element) -> Self {
        self.status = Status::Found;
        self.value = Some(value);
        self
    }

    fn witness(mut self, name: &'static str, value: Element) -> Self {
        self.witnesses.push((name, value));
        self
    }

    pub fn is_found(&self) -> bool {
        self.status == Status::Found
    }

    pub fn value_ix(&self) -> Option<u32> {
        self.value.map(Element::index)
    }

    pub fn input(&self, name: &str) -> Option<Element> {
        lookup(&self.inputs, name)
    }

    pub fn witness_value(&self, name: &str) -> Option<Element> {
        lookup(&self.witnesses, name)
    }

    /// Re-evaluates the defining equations of a found value, including the
    /// recorded witnesses. Not-found results recheck trivially.
    pub fn recheck(&self, ring: &RingHandle) -> Result<bool, EngineError> {
        let Some(y) = self.value else {
            return Ok(true);
        };
        let y = ring.ix(y)?;
        let get = |name: &str| -> Result<u32, EngineError> {
            let el = lookup(&self.inputs, name)
                .or_else(|| lookup(&self.witnesses, name))
                .ok_or_else(|| EngineError::Precondition(format!("record lacks `{name}`")))?;
            Ok(ring.ix(el)?)
        };
        let ok = match (self.kind, self.method) {
            (InverseKind::Bc, Method::DefinitionSearch) => {
                let (a, b, c, r, s) = (get("a")?, get("b")?, get("c")?, get("r")?, get("s")?);
                ring.mul3_ix(b, r, y) == y
                    && ring.mul3_ix(y, s, c) == y
                    && ring.mul3_ix(y, a, b) == b
                    && ring.mul3_ix(c, a, y) == c
            }
            (InverseKind::Bc, Method::LemmaCharacterization) => {
                let (a, b, c) = (get("a")?, get("b")?, get("c")?);
                lemma_accepts(
                    ring,
                    a,
                    y,
                    &right_ideal_ix(ring, b),
                    &left_ideal_ix(ring, c),
                )
            }
            (InverseKind::Bc, Method::ClosedFormula) => {
                let (d, b, c) = (get("d")?, get("b")?, get("c")?);
                definition_accepts(ring, d, b, c, y).is_some()
            }
            (InverseKind::Hybrid, _) => {
                let (a, b, c) = (get("a")?, get("b")?, get("c")?);
                hybrid_accepts(
                    ring,
                    a,
                    y,
                    &right_ideal_ix(ring, b),
                    &right_annihilator_ix(ring, c),
                )
            }
            (InverseKind::Annihilator, _) => {
                let (a, b, c) = (get("a")?, get("b")?, get("c")?);
                annihilator_accepts(
                    ring,
                    a,
                    y,
                    &left_annihilator_ix(ring, b),
                    &right_annihilator_ix(ring, c),
                )
            }
            (InverseKind::Group, _) => group_accepts(ring, get("a")?, y),
            (InverseKind::BottDuffin, _) => {
                bott_duffin_accepts(ring, get("a")?, get("e")?, get("f")?, y)
            }
            (InverseKind::ImageKernel, _) => {
                let (a, p, q) = (get("a")?, get("p")?, get("q")?);
                image_kernel_accepts(
                    ring,
                    a,
                    y,
                    &right_ideal_ix(ring, p),
                    &right_ideal_ix(ring, q),
                )
            }
        };
        Ok(ok)
    }
}

fn lookup(list: &[Named], name: &str) -> Option<Element> {
    list.iter().find(|(n, _)| *n == name).map(|(_, e)| *e)
}

struct NamedMap<'a>(&'a [Named]);

impl Serialize for NamedMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_map(self.0.iter().map(|(n, e)| (*n, e.index())))
    }
}

impl Serialize for InverseResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(6))?;
        map.serialize_entry("kind", &self.kind)?;
        map.serialize_entry("method", &self.method)?;
        map.serialize_entry("inputs", &NamedMap(&self.inputs))?;
        map.serialize_entry("status", &self.status)?;
        map.serialize_entry("value", &self.value_ix())?;
        map.serialize_entry("witnesses", &NamedMap(&self.witnesses))?;
        map.end()
    }
}

/// Drazin inverse together with its index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DrazinResult {
    pub value: Element,
    pub index: u32,
}

impl Serialize for DrazinResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("value", &self.value.index())?;
        map.serialize_entry("index", &self.index)?;
        map.end()
    }
}

// ---------------------------------------------------------------------------
// acceptance predicates (raw indices)
// ---------------------------------------------------------------------------

/// Returns `(r, s)` with `y = b·r·y` and `y = y·s·c` when `y` satisfies
/// `y ∈ bRy ∩ yRc`, `yab = b`, `cay = c`.
pub fn definition_accepts(ring: &RingHandle, a: u32, b: u32, c: u32, y: u32) -> Option<(u32, u32)> {
    if ring.mul3_ix(y, a, b) != b || ring.mul3_ix(c, a, y) != c {
        return None;
    }
    let r = (0..ring.order()).find(|&r| ring.mul3_ix(b, r, y) == y)?;
    let s = (0..ring.order()).find(|&s| ring.mul3_ix(y, s, c) == y)?;
    Some((r, s))
}

#[inline]
pub fn is_outer_inverse(ring: &RingHandle, a: u32, y: u32) -> bool {
    ring.mul3_ix(y, a, y) == y
}

/// `yay = y`, `yR = bR`, `Ry = Rc`, with `bR` and `Rc` precomputed.
pub fn lemma_accepts(ring: &RingHandle, a: u32, y: u32, b_right: &Subset, c_left: &Subset) -> bool {
    is_outer_inverse(ring, a, y)
        && right_ideal_ix(ring, y) == *b_right
        && left_ideal_ix(ring, y) == *c_left
}

/// `yay = y`, `yR = bR`, `r(y) = r(c)`.
pub fn hybrid_accepts(
    ring: &RingHandle,
    a: u32,
    y: u32,
    b_right: &Subset,
    c_rann: &Subset,
) -> bool {
    is_outer_inverse(ring, a, y)
        && right_ideal_ix(ring, y) == *b_right
        && right_annihilator_ix(ring, y) == *c_rann
}

/// `yay = y`, `l(y) = l(b)`, `r(y) = r(c)`.
pub fn annihilator_accepts(
    ring: &RingHandle,
    a: u32,
    y: u32,
    b_lann: &Subset,
    c_rann: &Subset,
) -> bool {
    is_outer_inverse(ring, a, y)
        && left_annihilator_ix(ring, y) == *b_lann
        && right_annihilator_ix(ring, y) == *c_rann
}

/// `axa = a`, `xax = x`, `ax = xa`.
pub fn group_accepts(ring: &RingHandle, a: u32, x: u32) -> bool {
    ring.mul3_ix(a, x, a) == a
        && ring.mul3_ix(x, a, x) == x
        && ring.mul_ix(a, x) == ring.mul_ix(x, a)
}

/// `y = ey = yf`, `yae = e`, `fay = f`.
pub fn bott_duffin_accepts(ring: &RingHandle, a: u32, e: u32, f: u32, y: u32) -> bool {
    ring.mul_ix(e, y) == y
        && ring.mul_ix(y, f) == y
        && ring.mul3_ix(y, a, e) == e
        && ring.mul3_ix(f, a, y) == f
}

/// `yay = y`, `yaR = pR`, `(1 − ay)R = qR`.
pub fn image_kernel_accepts(
    ring: &RingHandle,
    a: u32,
    y: u32,
    p_right: &Subset,
    q_right: &Subset,
) -> bool {
    if !is_outer_inverse(ring, a, y) || right_ideal_ix(ring, ring.mul_ix(y, a)) != *p_right {
        return false;
    }
    let complement = ring.sub_ix(ring.one_ix(), ring.mul_ix(a, y));
    right_ideal_ix(ring, complement) == *q_right
}

/// The four Moore-Penrose equations for `y` against `a` under transpose.
pub fn moore_penrose_equations(ring: &RingHandle, a: u32, y: u32) -> [bool; 4] {
    let ay = ring.mul_ix(a, y);
    let ya = ring.mul_ix(y, a);
    [
        ring.mul_ix(ay, a) == a,
        ring.mul_ix(ya, y) == y,
        ring.transpose_ix(ay) == ay,
        ring.transpose_ix(ya) == ya,
    ]
}

// ---------------------------------------------------------------------------
// scans (raw indices)
// ---------------------------------------------------------------------------

/// Scans every element, erroring on a second acceptor.
fn scan_unique<W>(
    ring: &RingHandle,
    kind: InverseKind,
    mut accept: impl FnMut(u32) -> Option<W>,
) -> Result<Option<(u32, W)>, EngineError> {
    let mut hit: Option<(u32, W)> = None;
    for y in 0..ring.order() {
        if let Some(w) = accept(y) {
            if let Some((first, _)) = &hit {
                return Err(EngineError::MultipleAcceptors {
                    kind,
                    first: *first,
                    second: y,
                });
            }
            hit = Some((y, w));
        }
    }
    Ok(hit)
}

/// Definition scan for the (b,c)-inverse: `(y, r, s)` when found.
pub fn scan_bc_definition(
    ring: &RingHandle,
    a: u32,
    b: u32,
    c: u32,
) -> Result<Option<(u32, u32, u32)>, EngineError> {
    Ok(scan_unique(ring, InverseKind::Bc, |y| {
        definition_accepts(ring, a, b, c, y)
    })?
    .map(|(y, (r, s))| (y, r, s)))
}

pub fn scan_bc_lemma(
    ring: &RingHandle,
    a: u32,
    b: u32,
    c: u32,
) -> Result<Option<u32>, EngineError> {
    let b_right = right_ideal_ix(ring, b);
    let c_left = left_ideal_ix(ring, c);
    Ok(scan_unique(ring, InverseKind::Bc, |y| {
        lemma_accepts(ring, a, y, &b_right, &c_left).then_some(())
    })?
    .map(|(y, ())| y))
}

/// Existence test through `t = cab`: `Rb = Rt` and `cR = tR`.
pub fn exists_via_ideals_ix(ring: &RingHandle, a: u32, b: u32, c: u32) -> bool {
    let t = ring.mul3_ix(c, a, b);
    left_ideal_ix(ring, b) == left_ideal_ix(ring, t)
        && right_ideal_ix(ring, c) == right_ideal_ix(ring, t)
}

pub fn scan_group(ring: &RingHandle, a: u32) -> Result<Option<u32>, EngineError> {
    Ok(scan_unique(ring, InverseKind::Group, |x| {
        group_accepts(ring, a, x).then_some(())
    })?
    .map(|(x, ())| x))
}

pub fn scan_image_kernel(
    ring: &RingHandle,
    a: u32,
    p: u32,
    q: u32,
) -> Result<Option<u32>, EngineError> {
    let p_right = right_ideal_ix(ring, p);
    let q_right = right_ideal_ix(ring, q);
    Ok(scan_unique(ring, InverseKind::ImageKernel, |y| {
        image_kernel_accepts(ring, a, y, &p_right, &q_right).then_some(())
    })?
    .map(|(y, ())| y))
}

pub fn scan_bott_duffin(
    ring: &RingHandle,
    a: u32,
    e: u32,
    f: u32,
) -> Result<Option<u32>, EngineError> {
    Ok(scan_unique(ring, InverseKind::BottDuffin, |y| {
        bott_duffin_accepts(ring, a, e, f, y).then_some(())
    })?
    .map(|(y, ())| y))
}

/// `(x, y)` for `x = a‖·d·e + 1 − e`; `y = x⁻¹·a‖` when `x` is a unit.
pub fn transfer_formula_e(ring: &RingHandle, a_bc: u32, d: u32, e: u32) -> (u32, Option<u32>) {
    let one = ring.one_ix();
    let x = ring.add_ix(ring.mul3_ix(a_bc, d, e), ring.sub_ix(one, e));
    (x, ring.unit_inverse_ix(x).map(|inv| ring.mul_ix(inv, a_bc)))
}

/// `(x, y)` for `x = f·d·a‖ + 1 − f`; `y = a‖·x⁻¹` when `x` is a unit.
pub fn transfer_formula_f(ring: &RingHandle, a_bc: u32, d: u32, f: u32) -> (u32, Option<u32>) {
    let one = ring.one_ix();
    let x = ring.add_ix(ring.mul3_ix(f, d, a_bc), ring.sub_ix(one, f));
    (x, ring.unit_inverse_ix(x).map(|inv| ring.mul_ix(a_bc, inv)))
}

// ---------------------------------------------------------------------------
// element-level operations
// ---------------------------------------------------------------------------

/// All inner inverses `{x : axa = a}`.
pub fn inner_inverses(ring: &RingHandle, a: Element) -> Result<Subset, EngineError> {
    let a = ring.ix(a)?;
    Ok(inner_inverses_ix(ring, a))
}

pub fn inner_inverses_ix(ring: &RingHandle, a: u32) -> Subset {
    Subset::from_predicate(ring, |x| ring.mul3_ix(a, x, a) == a)
}

pub fn is_regular(ring: &RingHandle, a: Element) -> Result<bool, EngineError> {
    let a = ring.ix(a)?;
    Ok(is_regular_ix(ring, a))
}

pub fn is_regular_ix(ring: &RingHandle, a: u32) -> bool {
    (0..ring.order()).any(|x| ring.mul3_ix(a, x, a) == a)
}

pub fn group_inverse(ring: &RingHandle, a: Element) -> Result<InverseResult, EngineError> {
    let ai = ring.ix(a)?;
    let result = InverseResult::new(InverseKind::Group, Method::DefinitionSearch, vec![("a", a)]);
    Ok(match scan_group(ring, ai)? {
        Some(x) => result.found(ring.wrap(x)),
        None => result,
    })
}

/// Smallest `j ≥ 1` with an `x` such that `xa = ax`, `xax = x`,
/// `a^(j+1)·x = a^j`. The search stops at the ring order, which bounds the
/// index by pigeonhole on the powers of `a`.
pub fn drazin_inverse(ring: &RingHandle, a: Element) -> Result<Option<DrazinResult>, EngineError> {
    let a = ring.ix(a)?;
    Ok(drazin_ix(ring, a)?.map(|(value, index)| DrazinResult {
        value: ring.wrap(value),
        index,
    }))
}

pub fn drazin_ix(ring: &RingHandle, a: u32) -> Result<Option<(u32, u32)>, EngineError> {
    let mut power = a;
    for j in 1..=ring.order() {
        let next = ring.mul_ix(power, a);
        let hit = scan_unique(ring, InverseKind::Group, |x| {
            (ring.mul_ix(x, a) == ring.mul_ix(a, x)
                && ring.mul3_ix(x, a, x) == x
                && ring.mul_ix(next, x) == power)
                .then_some(())
        })
        .map_err(|_| {
            EngineError::RouteDisagreement(format!("two Drazin candidates at index {j}"))
        })?;
        if let Some((x, ())) = hit {
            return Ok(Some((x, j)));
        }
        power = next;
    }
    Ok(None)
}

fn bc_inputs(a: Element, b: Element, c: Element) -> Vec<Named> {
    vec![("a", a), ("b", b), ("c", c)]
}

/// The (b,c)-inverse by scanning the defining conditions.
pub fn bc_inverse(
    ring: &RingHandle,
    a: Element,
    b: Element,
    c: Element,
) -> Result<InverseResult, EngineError> {
    let (ai, bi, ci) = (ring.ix(a)?, ring.ix(b)?, ring.ix(c)?);
    let result = InverseResult::new(
        InverseKind::Bc,
        Method::DefinitionSearch,
        bc_inputs(a, b, c),
    );
    Ok(match scan_bc_definition(ring, ai, bi, ci)? {
        Some((y, r, s)) => result
            .found(ring.wrap(y))
            .witness("r", ring.wrap(r))
            .witness("s", ring.wrap(s)),
        None => result,
    })
}

/// The (b,c)-inverse through `yay = y`, `yR = bR`, `Ry = Rc`.
pub fn bc_inverse_via_lemma(
    ring: &RingHandle,
    a: Element,
    b: Element,
    c: Element,
) -> Result<InverseResult, EngineError> {
    let (ai, bi, ci) = (ring.ix(a)?, ring.ix(b)?, ring.ix(c)?);
    let result = InverseResult::new(
        InverseKind::Bc,
        Method::LemmaCharacterization,
        bc_inputs(a, b, c),
    );
    Ok(match scan_bc_lemma(ring, ai, bi, ci)? {
        Some(y) => result.found(ring.wrap(y)),
        None => result,
    })
}

pub fn bc_exists_via_ideals(
    ring: &RingHandle,
    a: Element,
    b: Element,
    c: Element,
) -> Result<bool, EngineError> {
    Ok(exists_via_ideals_ix(
        ring,
        ring.ix(a)?,
        ring.ix(b)?,
        ring.ix(c)?,
    ))
}

/// Runs the definition scan, the ideal characterization scan and the
/// existence test, and fails if they disagree.
pub fn bc_inverse_cross_checked(
    ring: &RingHandle,
    a: Element,
    b: Element,
    c: Element,
) -> Result<InverseResult, EngineError> {
    let by_definition = bc_inverse(ring, a, b, c)?;
    let by_lemma = bc_inverse_via_lemma(ring, a, b, c)?;
    let exists = bc_exists_via_ideals(ring, a, b, c)?;
    if by_definition.value != by_lemma.value || by_definition.is_found() != exists {
        return Err(EngineError::RouteDisagreement(format!(
            "definition {:?}, ideal characterization {:?}, existence test {exists}",
            by_definition.value_ix(),
            by_lemma.value_ix()
        )));
    }
    Ok(by_definition)
}

pub fn hybrid_bc_inverse(
    ring: &RingHandle,
    a: Element,
    b: Element,
    c: Element,
) -> Result<InverseResult, EngineError> {
    let (ai, bi, ci) = (ring.ix(a)?, ring.ix(b)?, ring.ix(c)?);
    let b_right = right_ideal_ix(ring, bi);
    let c_rann = right_annihilator_ix(ring, ci);
    let result = InverseResult::new(
        InverseKind::Hybrid,
        Method::DefinitionSearch,
        bc_inputs(a, b, c),
    );
    let hit = scan_unique(ring, InverseKind::Hybrid, |y| {
        hybrid_accepts(ring, ai, y, &b_right, &c_rann).then_some(())
    })?;
    Ok(match hit {
        Some((y, ())) => result.found(ring.wrap(y)),
        None => result,
    })
}

pub fn annihilator_bc_inverse(
    ring: &RingHandle,
    a: Element,
    b: Element,
    c: Element,
) -> Result<InverseResult, EngineError> {
    let (ai, bi, ci) = (ring.ix(a)?, ring.ix(b)?, ring.ix(c)?);
    let b_lann = left_annihilator_ix(ring, bi);
    let c_rann = right_annihilator_ix(ring, ci);
    let result = InverseResult::new(
        InverseKind::Annihilator,
        Method::DefinitionSearch,
        bc_inputs(a, b, c),
    );
    let hit = scan_unique(ring, InverseKind::Annihilator, |y| {
        annihilator_accepts(ring, ai, y, &b_lann, &c_rann).then_some(())
    })?;
    Ok(match hit {
        Some((y, ())) => result.found(ring.wrap(y)),
        None => result,
    })
}

fn require_idempotent(ring: &RingHandle, x: u32, name: &'static str) -> Result<(), EngineError> {
    if ring.is_idempotent_ix(x) {
        Ok(())
    } else {
        Err(EngineError::NotIdempotent(name))
    }
}

/// Bott-Duffin `(e, f)`-inverse. For `e = f` with `ae + 1 − e` a unit the
/// scan is cross-checked against `e·(ae + 1 − e)⁻¹`.
pub fn bott_duffin(
    ring: &RingHandle,
    a: Element,
    e: Element,
    f: Element,
) -> Result<InverseResult, EngineError> {
    let (ai, ei, fi) = (ring.ix(a)?, ring.ix(e)?, ring.ix(f)?);
    require_idempotent(ring, ei, "e")?;
    require_idempotent(ring, fi, "f")?;
    let scanned = scan_bott_duffin(ring, ai, ei, fi)?;
    let mut result = InverseResult::new(
        InverseKind::BottDuffin,
        Method::DefinitionSearch,
        vec![("a", a), ("e", e), ("f", f)],
    );
    if ei == fi {
        let shifted = ring.add_ix(ring.mul_ix(ai, ei), ring.sub_ix(ring.one_ix(), ei));
        if let Some(inv) = ring.unit_inverse_ix(shifted) {
            let formula = ring.mul_ix(ei, inv);
            if scanned != Some(formula) {
                return Err(EngineError::RouteDisagreement(format!(
                    "Bott-Duffin formula gives {formula}, scan gives {scanned:?}"
                )));
            }
            result = result
                .witness("unit", ring.wrap(shifted))
                .witness("unit_inverse", ring.wrap(inv));
        }
    }
    Ok(match scanned {
        Some(y) => result.found(ring.wrap(y)),
        None => result,
    })
}

/// Image-kernel `(p, q)`-inverse.
pub fn image_kernel_inverse(
    ring: &RingHandle,
    a: Element,
    p: Element,
    q: Element,
) -> Result<InverseResult, EngineError> {
    let (ai, pi, qi) = (ring.ix(a)?, ring.ix(p)?, ring.ix(q)?);
    require_idempotent(ring, pi, "p")?;
    require_idempotent(ring, qi, "q")?;
    let result = InverseResult::new(
        InverseKind::ImageKernel,
        Method::DefinitionSearch,
        vec![("a", a), ("p", p), ("q", q)],
    );
    Ok(match scan_image_kernel(ring, ai, pi, qi)? {
        Some(y) => result.found(ring.wrap(y)),
        None => result,
    })
}

struct TransferSetup {
    a_bc: u32,
    d_scan: Option<u32>,
}

fn transfer_setup(
    ring: &RingHandle,
    a: u32,
    d: u32,
    b: u32,
    c: u32,
    (inner_of, inner): (u32, u32),
) -> Result<TransferSetup, EngineError> {
    if ring.mul3_ix(inner_of, inner, inner_of) != inner_of {
        return Err(EngineError::Precondition(
            "supplied element is not an inner inverse".into(),
        ));
    }
    let a_bc = scan_bc_definition(ring, a, b, c)?
        .ok_or_else(|| EngineError::Precondition("a has no (b,c)-inverse".into()))?
        .0;
    let d_scan = scan_bc_definition(ring, d, b, c)?.map(|(y, _, _)| y);
    Ok(TransferSetup { a_bc, d_scan })
}

fn transfer_result(
    ring: &RingHandle,
    inputs: Vec<Named>,
    (idempotent_name, idempotent): (&'static str, u32),
    setup: &TransferSetup,
    (x, formula): (u32, Option<u32>),
) -> Result<InverseResult, EngineError> {
    if formula != setup.d_scan {
        return Err(EngineError::RouteDisagreement(format!(
            "transfer formula gives {formula:?}, definition scan gives {:?}",
            setup.d_scan
        )));
    }
    let mut result = InverseResult::new(InverseKind::Bc, Method::ClosedFormula, inputs)
        .witness("a_bc", ring.wrap(setup.a_bc))
        .witness(idempotent_name, ring.wrap(idempotent))
        .witness("x", ring.wrap(x));
    if let Some(y) = formula {
        let inv = ring.unit_inverse_ix(x).expect("formula implies a unit");
        result = result
            .witness("x_inverse", ring.wrap(inv))
            .found(ring.wrap(y));
    }
    Ok(result)
}

/// `d‖ = (a‖·d·e + 1 − e)⁻¹·a‖` with `e = b·b⁻`, checked against the scan
/// for `d`.
pub fn transfer_d_inverse(
    ring: &RingHandle,
    a: Element,
    d: Element,
    b: Element,
    c: Element,
    b_inner: Element,
) -> Result<InverseResult, EngineError> {
    let (ai, di, bi, ci, gi) = (
        ring.ix(a)?,
        ring.ix(d)?,
        ring.ix(b)?,
        ring.ix(c)?,
        ring.ix(b_inner)?,
    );
    let setup = transfer_setup(ring, ai, di, bi, ci, (bi, gi))?;
    let e = ring.mul_ix(bi, gi);
    let inputs = vec![("a", a), ("d", d), ("b", b), ("c", c), ("b_inner", b_inner)];
    let formula = transfer_formula_e(ring, setup.a_bc, di, e);
    transfer_result(ring, inputs, ("e", e), &setup, formula)
}

/// `d‖ = a‖·(f·d·a‖ + 1 − f)⁻¹` with `f = c⁻·c`.
pub fn transfer_d_inverse_dual(
    ring: &RingHandle,
    a: Element,
    d: Element,
    b: Element,
    c: Element,
    c_inner: Element,
) -> Result<InverseResult, EngineError> {
    let (ai, di, bi, ci, gi) = (
        ring.ix(a)?,
        ring.ix(d)?,
        ring.ix(b)?,
        ring.ix(c)?,
        ring.ix(c_inner)?,
    );
    let setup = transfer_setup(ring, ai, di, bi, ci, (ci, gi))?;
    let f = ring.mul_ix(gi, ci);
    let inputs = vec![("a", a), ("d", d), ("b", b), ("c", c), ("c_inner", c_inner)];
    let formula = transfer_formula_f(ring, setup.a_bc, di, f);
    transfer_result(ring, inputs, ("f", f), &setup, formula)
}

/// `(y·a, a·y)` for an outer inverse `y` of `a`.
pub fn bc_idempotents(
    ring: &RingHandle,
    a: Element,
    y: Element,
) -> Result<(Element, Element), EngineError> {
    let (ai, yi) = (ring.ix(a)?, ring.ix(y)?);
    if !is_outer_inverse(ring, ai, yi) {
        return Err(EngineError::NotOuterInverse);
    }
    let (ya, ay) = (ring.mul_ix(yi, ai), ring.mul_ix(ai, yi));
    if !ring.is_idempotent_ix(ya) || !ring.is_idempotent_ix(ay) {
        return Err(EngineError::RouteDisagreement(
            "products with an outer inverse must be idempotent".into(),
        ));
    }
    Ok((ring.wrap(ya), ring.wrap(ay)))
}

/// `(a*, a*)`-inverse of `a` with transpose as the involution.
pub fn moore_penrose_via_bc(ring: &RingHandle, a: Element) -> Result<InverseResult, EngineError> {
    let star = ring.transpose(a)?;
    bc_inverse(ring, a, star, star)
}
