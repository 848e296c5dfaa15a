//! On-the-fly arithmetic over canonical element indices.
//!
//! Residues use the residue itself as index. Matrices are row-major digit
//! strings in the inner ring's index base, first entry most significant.
//! Products are mixed-radix with the first component most significant.

use super::RingSpec;

/// Upper bound on digits of a composite index: every radix is at least 2 and
/// indices fit in `u32`.
const MAX_DIGITS: usize = 32;

#[derive(Debug, Clone)]
pub(crate) enum Arith {
    Residue {
        n: u32,
    },
    Matrix {
        k: usize,
        base: u32,
        inner: Box<Arith>,
    },
    Product {
        radices: Vec<u32>,
        factors: Vec<Arith>,
    },
}

type Digits = ([u32; MAX_DIGITS], usize);

impl Arith {
    /// Caller guarantees the spec is valid and its cardinality fits in `u32`.
    pub(crate) fn from_spec(spec: &RingSpec) -> Arith {
        match spec {
            RingSpec::Residue { n } => Arith::Residue { n: *n as u32 },
            RingSpec::Matrix { k, inner } => {
                let inner = Arith::from_spec(inner);
                Arith::Matrix {
                    k: *k as usize,
                    base: inner.order(),
                    inner: Box::new(inner),
                }
            }
            RingSpec::Product(specs) => {
                let factors: Vec<Arith> = specs.iter().map(Arith::from_spec).collect();
                Arith::Product {
                    radices: factors.iter().map(Arith::order).collect(),
                    factors,
                }
            }
        }
    }

    pub(crate) fn order(&self) -> u32 {
        match self {
            Arith::Residue { n } => *n,
            Arith::Matrix { k, base, .. } => base.pow((k * k) as u32),
            Arith::Product { radices, .. } => radices.iter().product(),
        }
    }

    fn decode(&self, mut index: u32) -> Digits {
        let mut digits = [0u32; MAX_DIGITS];
        let len = match self {
            Arith::Residue { .. } => {
                digits[0] = index;
                return (digits, 1);
            }
            Arith::Matrix { k, base, .. } => {
                let len = k * k;
                for slot in digits[..len].iter_mut().rev() {
                    *slot = index % base;
                    index /= base;
                }
                len
            }
            Arith::Product { radices, .. } => {
                let len = radices.len();
                for (slot, radix) in digits[..len].iter_mut().zip(radices).rev() {
                    *slot = index % radix;
                    index /= radix;
                }
                len
            }
        };
        (digits, len)
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        match self {
            Arith::Residue { .. } => digits[0],
            Arith::Matrix { base, .. } => digits.iter().fold(0, |acc, d| acc * base + d),
            Arith::Product { radices, .. } => digits
                .iter()
                .zip(radices)
                .fold(0, |acc, (d, radix)| acc * radix + d),
        }
    }

    /// Digit-wise decomposition exposed for literal formatting.
    pub(crate) fn components(&self, index: u32) -> Vec<u32> {
        let (digits, len) = self.decode(index);
        digits[..len].to_vec()
    }

    pub(crate) fn compose(&self, components: &[u32]) -> u32 {
        self.encode(components)
    }

    pub(crate) fn one(&self) -> u32 {
        match self {
            Arith::Residue { .. } => 1,
            Arith::Matrix { k, inner, .. } => {
                let one = inner.one();
                let mut digits = [0u32; MAX_DIGITS];
                for i in 0..*k {
                    digits[i * k + i] = one;
                }
                self.encode(&digits[..k * k])
            }
            Arith::Product { factors, .. } => {
                let mut digits = [0u32; MAX_DIGITS];
                for (slot, f) in digits.iter_mut().zip(factors) {
                    *slot = f.one();
                }
                self.encode(&digits[..factors.len()])
            }
        }
    }

    pub(crate) fn add(&self, x: u32, y: u32) -> u32 {
        match self {
            Arith::Residue { n } => ((u64::from(x) + u64::from(y)) % u64::from(*n)) as u32,
            Arith::Matrix { inner, .. } => self.zip_digits(x, y, |_, a, b| inner.add(a, b)),
            Arith::Product { factors, .. } => self.zip_digits(x, y, |i, a, b| factors[i].add(a, b)),
        }
    }

    pub(crate) fn neg(&self, x: u32) -> u32 {
        match self {
            Arith::Residue { n } => (n - x) % n,
            Arith::Matrix { inner, .. } => self.map_digits(x, |_, a| inner.neg(a)),
            Arith::Product { factors, .. } => self.map_digits(x, |i, a| factors[i].neg(a)),
        }
    }

    pub(crate) fn mul(&self, x: u32, y: u32) -> u32 {
        match self {
            Arith::Residue { n } => ((u64::from(x) * u64::from(y)) % u64::from(*n)) as u32,
            Arith::Matrix { k, inner, .. } => {
                let k = *k;
                let (lhs, _) = self.decode(x);
                let (rhs, _) = self.decode(y);
                let mut out = [0u32; MAX_DIGITS];
                for i in 0..k {
                    for j in 0..k {
                        let mut acc = 0;
                        for l in 0..k {
                            acc = inner.add(acc, inner.mul(lhs[i * k + l], rhs[l * k + j]));
                        }
                        out[i * k + j] = acc;
                    }
                }
                self.encode(&out[..k * k])
            }
            Arith::Product { factors, .. } => self.zip_digits(x, y, |i, a, b| factors[i].mul(a, b)),
        }
    }

    /// Transpose on matrices (entries pass through the inner involution);
    /// identity on residues; component-wise on products.
    pub(crate) fn transpose(&self, x: u32) -> u32 {
        match self {
            Arith::Residue { .. } => x,
            Arith::Matrix { k, inner, .. } => {
                let k = *k;
                let (digits, _) = self.decode(x);
                let mut out = [0u32; MAX_DIGITS];
                for i in 0..k {
                    for j in 0..k {
                        out[j * k + i] = inner.transpose(digits[i * k + j]);
                    }
                }
                self.encode(&out[..k * k])
            }
            Arith::Product { factors, .. } => self.map_digits(x, |i, a| factors[i].transpose(a)),
        }
    }

    fn zip_digits(&self, x: u32, y: u32, op: impl Fn(usize, u32, u32) -> u32) -> u32 {
        let (mut lhs, len) = self.decode(x);
        let (rhs, _) = self.decode(y);
        for i in 0..len {
            lhs[i] = op(i, lhs[i], rhs[i]);
        }
        self.encode(&lhs[..len])
    }

    fn map_digits(&self, x: u32, op: impl Fn(usize, u32) -> u32) -> u32 {
        let (mut digits, len) = self.decode(x);
        for (i, d) in digits[..len].iter_mut().enumerate() {
            *d = op(i, *d);
        }
        self.encode(&digits[..len])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arith(spec: &str) -> Arith {
        Arith::from_spec(&spec.parse().unwrap())
    }

    #[test]
    fn matrix_codec_is_row_major_most_significant_first() {
        let m = arith("mat:2:zn:2");
        // [[1,0],[0,1]] -> digits 1,0,0,1 -> 0b1001
        assert_eq!(m.one(), 9);
        assert_eq!(m.components(0b1101), vec![1, 1, 0, 1]);
        assert_eq!(m.compose(&[1, 1, 0, 1]), 0b1101);
    }

    #[test]
    fn product_codec_is_mixed_radix() {
        let p = arith("prod:zn:2,zn:3");
        assert_eq!(p.order(), 6);
        assert_eq!(p.one(), 3 + 1);
        assert_eq!(p.components(5), vec![1, 2]);
    }
}
