//! Principal one-sided ideals, annihilators and set arithmetic over a ring.
//!
//! Every set is computed by a full scan of the ring and stored as a dense
//! membership map over canonical indices.

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::ring::{Element, RingError, RingHandle, RingId};

/// A set of elements of one ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    ring: RingId,
    bits: FixedBitSet,
    len: usize,
}

impl Subset {
    fn from_bits(ring: &RingHandle, bits: FixedBitSet) -> Subset {
        debug_assert_eq!(bits.len(), ring.order() as usize);
        Subset {
            ring: ring.id(),
            len: bits.count_ones(..),
            bits,
        }
    }

    pub fn from_indices(ring: &RingHandle, indices: impl IntoIterator<Item = u32>) -> Subset {
        let mut bits = FixedBitSet::with_capacity(ring.order() as usize);
        for i in indices {
            bits.insert(i as usize);
        }
        Subset::from_bits(ring, bits)
    }

    pub fn from_predicate(ring: &RingHandle, mut keep: impl FnMut(u32) -> bool) -> Subset {
        Subset::from_indices(ring, (0..ring.order()).filter(|&x| keep(x)))
    }

    /// `{0}`.
    pub fn zero(ring: &RingHandle) -> Subset {
        Subset::from_indices(ring, [0])
    }

    pub fn whole(ring: &RingHandle) -> Subset {
        let mut bits = FixedBitSet::with_capacity(ring.order() as usize);
        bits.insert_range(..);
        Subset::from_bits(ring, bits)
    }

    pub fn ring_id(&self) -> RingId {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Whether this set is the whole ring.
    pub fn is_full(&self) -> bool {
        self.len == self.bits.len()
    }

    pub fn is_zero(&self) -> bool {
        self.len == 1 && self.bits.contains(0)
    }

    #[inline]
    pub fn contains_ix(&self, x: u32) -> bool {
        self.bits.contains(x as usize)
    }

    pub fn contains(&self, x: Element) -> Result<bool, RingError> {
        if x.ring_id() != self.ring {
            return Err(RingError::CrossRing);
        }
        Ok(self.contains_ix(x.index()))
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.ones().map(|i| i as u32)
    }

    /// Members in ascending index order.
    pub fn indices(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.bits.is_subset(&other.bits)
    }

    fn same_ring(&self, other: &Subset) -> Result<(), RingError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::CrossRing)
        }
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// `aR`.
pub fn right_ideal(ring: &RingHandle, a: Element) -> Result<Subset, RingError> {
    Ok(right_ideal_ix(ring, ring.ix(a)?))
}

pub fn right_ideal_ix(ring: &RingHandle, a: u32) -> Subset {
    Subset::from_indices(ring, (0..ring.order()).map(|x| ring.mul_ix(a, x)))
}

/// `Ra`.
pub fn left_ideal(ring: &RingHandle, a: Element) -> Result<Subset, RingError> {
    Ok(left_ideal_ix(ring, ring.ix(a)?))
}

pub fn left_ideal_ix(ring: &RingHandle, a: u32) -> Subset {
    Subset::from_indices(ring, (0..ring.order()).map(|x| ring.mul_ix(x, a)))
}

/// `xRz = {x·r·z : r ∈ R}`.
pub fn sandwich_set(ring: &RingHandle, x: Element, z: Element) -> Result<Subset, RingError> {
    Ok(sandwich_set_ix(ring, ring.ix(x)?, ring.ix(z)?))
}

pub fn sandwich_set_ix(ring: &RingHandle, x: u32, z: u32) -> Subset {
    Subset::from_indices(ring, (0..ring.order()).map(|r| ring.mul3_ix(x, r, z)))
}

/// `l(S) = {y : y·s = 0 for all s ∈ S}`.
pub fn left_annihilator(ring: &RingHandle, set: &Subset) -> Result<Subset, RingError> {
    check_ring(ring, set)?;
    Ok(Subset::from_predicate(ring, |y| {
        set.iter().all(|s| ring.mul_ix(y, s) == 0)
    }))
}

/// `r(S) = {y : s·y = 0 for all s ∈ S}`.
pub fn right_annihilator(ring: &RingHandle, set: &Subset) -> Result<Subset, RingError> {
    check_ring(ring, set)?;
    Ok(Subset::from_predicate(ring, |y| {
        set.iter().all(|s| ring.mul_ix(s, y) == 0)
    }))
}

/// `l(a)`.
pub fn left_annihilator_of(ring: &RingHandle, a: Element) -> Result<Subset, RingError> {
    Ok(left_annihilator_ix(ring, ring.ix(a)?))
}

/// `r(a)`.
pub fn right_annihilator_of(ring: &RingHandle, a: Element) -> Result<Subset, RingError> {
    Ok(right_annihilator_ix(ring, ring.ix(a)?))
}

pub fn left_annihilator_ix(ring: &RingHandle, a: u32) -> Subset {
    Subset::from_predicate(ring, |y| ring.mul_ix(y, a) == 0)
}

pub fn right_annihilator_ix(ring: &RingHandle, a: u32) -> Subset {
    Subset::from_predicate(ring, |y| ring.mul_ix(a, y) == 0)
}

/// `(rl(a), lr(a))`.
pub fn double_annihilators(ring: &RingHandle, a: Element) -> Result<(Subset, Subset), RingError> {
    Ok(double_annihilators_ix(ring, ring.ix(a)?))
}

pub fn double_annihilators_ix(ring: &RingHandle, a: u32) -> (Subset, Subset) {
    let rl = right_annihilator(ring, &left_annihilator_ix(ring, a)).expect("same ring");
    let lr = left_annihilator(ring, &right_annihilator_ix(ring, a)).expect("same ring");
    (rl, lr)
}

/// `S + T = {s + t}`; stops early once the sum is the whole ring.
pub fn subset_sum(ring: &RingHandle, s: &Subset, t: &Subset) -> Result<Subset, RingError> {
    check_ring(ring, s)?;
    s.same_ring(t)?;
    let order = ring.order() as usize;
    let mut bits = FixedBitSet::with_capacity(order);
    let mut count = 0;
    'outer: for x in s.iter() {
        for y in t.iter() {
            let z = ring.add_ix(x, y) as usize;
            if !bits.put(z) {
                count += 1;
                if count == order {
                    break 'outer;
                }
            }
        }
    }
    Ok(Subset::from_bits(ring, bits))
}

pub fn subset_intersection(s: &Subset, t: &Subset) -> Result<Subset, RingError> {
    s.same_ring(t)?;
    let mut bits = s.bits.clone();
    bits.intersect_with(&t.bits);
    Ok(Subset {
        ring: s.ring,
        len: bits.count_ones(..),
        bits,
    })
}

pub fn subset_equal(s: &Subset, t: &Subset) -> Result<bool, RingError> {
    s.same_ring(t)?;
    Ok(s.bits == t.bits)
}

/// `R = S ⊕ T`: the sum is everything and the intersection is `{0}`.
pub fn is_direct_sum_of_ring(ring: &RingHandle, s: &Subset, t: &Subset) -> Result<bool, RingError> {
    if !subset_intersection(s, t)?.is_zero() {
        return Ok(false);
    }
    Ok(subset_sum(ring, s, t)?.is_full())
}

fn check_ring(ring: &RingHandle, set: &Subset) -> Result<(), RingError> {
    if set.ring == ring.id() {
        Ok(())
    } else {
        Err(RingError::CrossRing)
    }
}
