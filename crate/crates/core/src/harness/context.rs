use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::ideal::{
    left_annihilator_ix, left_ideal_ix, right_annihilator_ix, right_ideal_ix, Subset,
};
use crate::inverse::{inner_inverses_ix, scan_bc_definition, scan_group, scan_image_kernel};
use crate::ring::RingHandle;

/// Per-ring tables shared by the checkers.
///
/// Ideals and annihilators of every element are materialized once, together
/// with class ids so that ideal equality is an integer comparison. The
/// (b,c)-inverse table is filled from the definition scan on first use.
/// A scan that reports two acceptors leaves `None` in the table; the
/// `bc-routes` checker reports such triples as failures.
pub struct Context<'r> {
    ring: &'r RingHandle,
    right: Vec<Subset>,
    left: Vec<Subset>,
    lann: Vec<Subset>,
    rann: Vec<Subset>,
    right_id: Vec<u32>,
    left_id: Vec<u32>,
    lann_id: Vec<u32>,
    rann_id: Vec<u32>,
    inner: Vec<Vec<u32>>,
    idempotents: Vec<u32>,
    group: Vec<Option<u32>>,
    inner_cap: usize,
    bc: OnceLock<Vec<Option<u32>>>,
    image_kernel: OnceLock<Vec<Option<u32>>>,
}

fn class_ids(sets: &[Subset]) -> Vec<u32> {
    let mut ids: HashMap<&Subset, u32> = HashMap::new();
    sets.iter()
        .map(|s| {
            let next = ids.len() as u32;
            *ids.entry(s).or_insert(next)
        })
        .collect()
}

impl<'r> Context<'r> {
    pub fn new(ring: &'r RingHandle, inner_cap: usize) -> Context<'r> {
        let n = ring.order();
        let per_element = |f: fn(&RingHandle, u32) -> Subset| -> Vec<Subset> {
            (0..n).into_par_iter().map(|x| f(ring, x)).collect()
        };
        let right = per_element(right_ideal_ix);
        let left = per_element(left_ideal_ix);
        let lann = per_element(left_annihilator_ix);
        let rann = per_element(right_annihilator_ix);
        let inner: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|x| inner_inverses_ix(ring, x).indices())
            .collect();
        let group = (0..n)
            .into_par_iter()
            .map(|x| scan_group(ring, x).ok().flatten())
            .collect();
        Context {
            ring,
            right_id: class_ids(&right),
            left_id: class_ids(&left),
            lann_id: class_ids(&lann),
            rann_id: class_ids(&rann),
            right,
            left,
            lann,
            rann,
            inner,
            idempotents: ring.idempotents(),
            group,
            inner_cap: inner_cap.max(1),
            bc: OnceLock::new(),
            image_kernel: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &'r RingHandle {
        self.ring
    }

    pub fn order(&self) -> u32 {
        self.ring.order()
    }

    /// `xR`.
    pub fn right(&self, x: u32) -> &Subset {
        &self.right[x as usize]
    }

    /// `Rx`.
    pub fn left(&self, x: u32) -> &Subset {
        &self.left[x as usize]
    }

    /// `l(x)`.
    pub fn lann(&self, x: u32) -> &Subset {
        &self.lann[x as usize]
    }

    /// `r(x)`.
    pub fn rann(&self, x: u32) -> &Subset {
        &self.rann[x as usize]
    }

    pub fn same_right(&self, x: u32, y: u32) -> bool {
        self.right_id[x as usize] == self.right_id[y as usize]
    }

    pub fn same_left(&self, x: u32, y: u32) -> bool {
        self.left_id[x as usize] == self.left_id[y as usize]
    }

    pub fn same_lann(&self, x: u32, y: u32) -> bool {
        self.lann_id[x as usize] == self.lann_id[y as usize]
    }

    pub fn same_rann(&self, x: u32, y: u32) -> bool {
        self.rann_id[x as usize] == self.rann_id[y as usize]
    }

    pub fn is_regular(&self, x: u32) -> bool {
        !self.inner[x as usize].is_empty()
    }

    /// Inner inverses of `x` up to the configured cap, plus whether the cap cut
    /// the list short.
    pub fn inner_choices(&self, x: u32) -> (&[u32], bool) {
        let all = &self.inner[x as usize];
        let take = all.len().min(self.inner_cap);
        (&all[..take], take < all.len())
    }

    pub fn idempotents(&self) -> &[u32] {
        &self.idempotents
    }

    pub fn group_inverse(&self, x: u32) -> Option<u32> {
        self.group[x as usize]
    }

    pub fn unit_inverse(&self, x: u32) -> Option<u32> {
        self.ring.unit_inverse_ix(x)
    }

    pub fn is_unit(&self, x: u32) -> bool {
        self.ring.is_unit_ix(x)
    }

    /// `a‖(b,c)` from the definition scan.
    pub fn bc(&self, a: u32, b: u32, c: u32) -> Option<u32> {
        let n = self.order() as usize;
        self.bc_table()[(a as usize * n + b as usize) * n + c as usize]
    }

    /// Builds the (b,c)-inverse table. Sweeps call this before fanning out so
    /// that no worker initializes the table from inside a parallel job.
    pub fn bc_table(&self) -> &[Option<u32>] {
        let n = self.order() as usize;
        self.bc.get_or_init(|| {
            let ring = self.ring;
            (0..n * n * n)
                .into_par_iter()
                .map(|flat| {
                    let (a, rest) = (flat / (n * n), flat % (n * n));
                    let (b, c) = (rest / n, rest % n);
                    scan_bc_definition(ring, a as u32, b as u32, c as u32)
                        .ok()
                        .flatten()
                        .map(|(y, _, _)| y)
                })
                .collect()
        })
    }

    /// Image-kernel `(p, q)`-inverse of `a`; `p` and `q` must be idempotents.
    pub fn image_kernel(&self, a: u32, p: u32, q: u32) -> Option<u32> {
        let n = self.order() as usize;
        let m = self.idempotents.len();
        let pos = |x: u32| {
            self.idempotents
                .binary_search(&x)
                .expect("idempotent expected")
        };
        self.image_kernel_table()[(pos(p) * m + pos(q)) * n + a as usize]
    }

    pub fn image_kernel_table(&self) -> &[Option<u32>] {
        let n = self.order() as usize;
        let idem = &self.idempotents;
        let m = idem.len();
        self.image_kernel.get_or_init(|| {
            let ring = self.ring;
            (0..m * m * n)
                .into_par_iter()
                .map(|flat| {
                    let (pq, a) = (flat / n, flat % n);
                    let (p, q) = (idem[pq / m], idem[pq % m]);
                    scan_image_kernel(ring, a as u32, p, q).ok().flatten()
                })
                .collect()
        })
    }
}
