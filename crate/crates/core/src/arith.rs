//! Residue arithmetic over Z_q and vectors in Z_q^n.
//!
//! Entries are always stored as canonical representatives in `[0, q)`, so
//! two vectors are equal exactly when their entry slices are equal.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// The modulus `q` of the residue ring Z_q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidModulus(q as u64));
        }
        Ok(Modulus(q))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    pub fn is_even(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Returns `q / 2`, or an error when `q` is odd.
    pub fn half(self) -> Result<u32> {
        if self.is_even() {
            Ok(self.0 / 2)
        } else {
            Err(Error::OddModulus(self.0))
        }
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % self.0 as u64) as u32
    }

    pub fn residue(self, value: u32) -> Result<Residue> {
        Residue::new(value, self)
    }

    pub fn classify(self, a: u32) -> Result<ElementClass> {
        classify_element(a as u64, self.0 as u64)
    }

    /// Units of Z_q in increasing order.
    pub fn units(self) -> impl Iterator<Item = u32> {
        let q = self.0;
        (1..q).filter(move |a| a.gcd(&q) == 1)
    }

    /// Nonzero zero divisors of Z_q in increasing order.
    pub fn zero_divisors(self) -> impl Iterator<Item = u32> {
        let q = self.0;
        (1..q).filter(move |a| a.gcd(&q) != 1)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A single element of Z_q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u32,
    modulus: Modulus,
}

impl Residue {
    pub fn new(value: u32, modulus: Modulus) -> Result<Self> {
        if value >= modulus.get() {
            return Err(Error::OutOfRange {
                value: value as u64,
                modulus: modulus.get(),
            });
        }
        Ok(Residue { value, modulus })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn class(self) -> ElementClass {
        classify_unchecked(self.value as u64, self.modulus.get() as u64)
    }
}

/// Zero, unit, or (nonzero) zero divisor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementClass {
    Zero,
    Unit,
    ZeroDivisor,
}

/// Number of integers in `[1, q)` coprime to `q`.
pub fn euler_phi(q: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::InvalidModulus(q));
    }
    let mut n = q;
    let mut phi = q;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    Ok(phi)
}

pub fn classify_element(a: u64, q: u64) -> Result<ElementClass> {
    if q < 2 {
        return Err(Error::InvalidModulus(q));
    }
    if a >= q {
        return Err(Error::domain(format!("element {a} is not in [0, {q})")));
    }
    Ok(classify_unchecked(a, q))
}

fn classify_unchecked(a: u64, q: u64) -> ElementClass {
    if a == 0 {
        ElementClass::Zero
    } else if a.gcd(&q) == 1 {
        ElementClass::Unit
    } else {
        ElementClass::ZeroDivisor
    }
}

/// A vector in Z_q^n with `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueVector {
    modulus: Modulus,
    entries: Vec<u32>,
}

impl ResidueVector {
    /// Builds a vector from entries already in `[0, q)`.
    pub fn new(modulus: Modulus, entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Dimension(
                "vectors must have length at least 1".into(),
            ));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e >= modulus.get()) {
            return Err(Error::OutOfRange {
                value: bad as u64,
                modulus: modulus.get(),
            });
        }
        Ok(ResidueVector { modulus, entries })
    }

    /// Builds a vector by reducing arbitrary integers mod `q`.
    pub fn reduced(modulus: Modulus, values: &[i64]) -> Result<Self> {
        let q = modulus.get() as i64;
        Self::new(
            modulus,
            values.iter().map(|v| v.rem_euclid(q) as u32).collect(),
        )
    }

    /// The constant vector `(value, value, ..., value)` of length `n`.
    pub fn filled(modulus: Modulus, n: usize, value: u32) -> Result<Self> {
        Self::new(modulus, vec![value; n])
    }

    pub fn zeros(modulus: Modulus, n: usize) -> Result<Self> {
        Self::filled(modulus, n, 0)
    }

    pub(crate) fn from_raw(modulus: Modulus, entries: Vec<u32>) -> Self {
        debug_assert!(!entries.is_empty());
        debug_assert!(entries.iter().all(|&e| e < modulus.get()));
        ResidueVector { modulus, entries }
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    fn check_shape(&self, other: &ResidueVector) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "lengths {} and {} differ",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &ResidueVector) -> Result<ResidueVector> {
        self.check_shape(other)?;
        let q = self.modulus.get();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + b) % q)
            .collect();
        Ok(ResidueVector::from_raw(self.modulus, entries))
    }

    pub fn sub(&self, other: &ResidueVector) -> Result<ResidueVector> {
        self.check_shape(other)?;
        let q = self.modulus.get();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + q - b) % q)
            .collect();
        Ok(ResidueVector::from_raw(self.modulus, entries))
    }

    pub fn scale(&self, a: Residue) -> Result<ResidueVector> {
        if a.modulus() != self.modulus {
            return Err(Error::ModulusMismatch {
                left: a.modulus().get(),
                right: self.modulus.get(),
            });
        }
        Ok(self.scale_by(a.value()))
    }

    /// Multiplies by the integer `a`, reduced mod `q`.
    pub fn scale_by(&self, a: u32) -> ResidueVector {
        let q = self.modulus.get() as u64;
        let a = a as u64 % q;
        let entries = self
            .entries
            .iter()
            .map(|&e| ((a * e as u64) % q) as u32)
            .collect();
        ResidueVector::from_raw(self.modulus, entries)
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }

    /// Number of coordinates where `self` and `other` differ.
    pub fn distance(&self, other: &ResidueVector) -> Result<usize> {
        self.check_shape(other)?;
        Ok(hamming_distance_raw(&self.entries, &other.entries))
    }

    /// `sum_i self_i * other_i mod q`.
    pub fn inner_product(&self, other: &ResidueVector) -> Result<u32> {
        self.check_shape(other)?;
        let q = self.modulus.get() as u64;
        let s = self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % q);
        Ok(s as u32)
    }

    /// Concatenation `self ∥ other`.
    pub fn concat(&self, other: &ResidueVector) -> Result<ResidueVector> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(ResidueVector::from_raw(self.modulus, entries))
    }

    /// Mixed-radix index: coordinate `j` is the base-`q` digit of weight `q^j`.
    pub fn to_index(&self) -> u64 {
        encode_index(&self.entries, self.modulus.get())
    }

    pub fn from_index(modulus: Modulus, n: usize, index: u64) -> Result<Self> {
        let mut entries = vec![0; n];
        decode_index(index, modulus.get(), &mut entries);
        Self::new(modulus, entries)
    }
}

impl fmt::Display for ResidueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[inline]
pub(crate) fn hamming_distance_raw(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

#[inline]
pub(crate) fn encode_index(entries: &[u32], q: u32) -> u64 {
    entries
        .iter()
        .rev()
        .fold(0u64, |acc, &e| acc * q as u64 + e as u64)
}

#[inline]
pub(crate) fn decode_index(mut index: u64, q: u32, out: &mut [u32]) {
    for e in out.iter_mut() {
        *e = (index % q as u64) as u32;
        index /= q as u64;
    }
}

/// Advances a mixed-radix odometer by one; returns the number of low digits
/// touched, or `None` after wrapping past the last state.
#[inline]
pub(crate) fn odometer_step(digits: &mut [u32], q: u32) -> Option<usize> {
    for (j, d) in digits.iter_mut().enumerate() {
        *d += 1;
        if *d < q {
            return Some(j + 1);
        }
        *d = 0;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(q: u32) -> Modulus {
        Modulus::new(q).unwrap()
    }

    fn v(q: u32, e: &[u32]) -> ResidueVector {
        ResidueVector::new(m(q), e.to_vec()).unwrap()
    }

    #[test]
    fn vector_add_examples() {
        assert_eq!(
            v(4, &[1, 2, 3]).add(&v(4, &[3, 2, 1])).unwrap(),
            v(4, &[0, 0, 0])
        );
        assert_eq!(
            v(4, &[1, 0, 2]).add(&v(4, &[0, 0, 0])).unwrap(),
            v(4, &[1, 0, 2])
        );
        assert_eq!(v(6, &[5, 5]).add(&v(6, &[2, 3])).unwrap(), v(6, &[1, 2]));
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            v(4, &[1, 2]).add(&v(4, &[1])),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            v(4, &[1]).add(&v(6, &[1])),
            Err(Error::ModulusMismatch { .. })
        ));
        assert!(matches!(
            v(4, &[1]).scale(m(6).residue(1).unwrap()),
            Err(Error::ModulusMismatch { .. })
        ));
        assert!(matches!(
            ResidueVector::new(m(4), vec![4]),
            Err(Error::OutOfRange {
                value: 4,
                modulus: 4
            })
        ));
        assert!(Modulus::new(1).is_err());
    }

    #[test]
    fn scalar_mul_examples() {
        let two = m(4).residue(2).unwrap();
        assert_eq!(v(4, &[1, 2, 3]).scale(two).unwrap(), v(4, &[2, 0, 2]));
        let zero = m(4).residue(0).unwrap();
        assert_eq!(v(4, &[1, 2, 3]).scale(zero).unwrap(), v(4, &[0, 0, 0]));
        let three = m(6).residue(3).unwrap();
        assert_eq!(v(6, &[2, 4]).scale(three).unwrap(), v(6, &[0, 0]));
    }

    #[test]
    fn weight_and_distance_examples() {
        assert_eq!(v(4, &[0, 0, 0]).weight(), 0);
        assert_eq!(v(4, &[1, 2, 0, 3]).weight(), 3);
        assert_eq!(v(6, &[3, 3, 3]).weight(), 3);
        assert_eq!(v(4, &[1, 2]).distance(&v(4, &[1, 3])).unwrap(), 1);
        assert_eq!(v(4, &[3, 1]).distance(&v(4, &[3, 1])).unwrap(), 0);
        assert_eq!(v(4, &[0, 0, 0]).distance(&v(4, &[2, 0, 2])).unwrap(), 2);
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(2).unwrap(), 1);
        assert_eq!(euler_phi(4).unwrap(), 2);
        assert_eq!(euler_phi(6).unwrap(), 2);
        assert_eq!(euler_phi(8).unwrap(), 4);
        assert!(euler_phi(1).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_element(0, 4).unwrap(), ElementClass::Zero);
        assert_eq!(classify_element(2, 4).unwrap(), ElementClass::ZeroDivisor);
        assert_eq!(classify_element(5, 6).unwrap(), ElementClass::Unit);
        assert!(classify_element(6, 6).is_err());
    }

    #[test]
    fn classes_partition_the_ring() {
        for q in 2..=64u32 {
            let mut zeros = 0;
            let mut units = 0;
            let mut divisors = 0;
            for a in 0..q {
                match classify_element(a as u64, q as u64).unwrap() {
                    ElementClass::Zero => zeros += 1,
                    ElementClass::Unit => units += 1,
                    ElementClass::ZeroDivisor => divisors += 1,
                }
            }
            assert_eq!(zeros, 1);
            assert_eq!(zeros + units + divisors, q as u64);
            assert_eq!(units, euler_phi(q as u64).unwrap(), "q={q}");
            assert_eq!(m(q).units().count() as u64, units);
            assert_eq!(m(q).zero_divisors().count() as u64, divisors);
        }
    }

    // Sums and differences of vectors over {0, q/2} stay in {0, q/2}.
    #[test]
    fn half_set_is_closed() {
        for q in [2u32, 4, 6, 8] {
            let h = m(q).half().unwrap();
            for n in 1..=4usize {
                let vecs: Vec<ResidueVector> = (0..1u32 << n)
                    .map(|mask| {
                        let e = (0..n)
                            .map(|i| if mask >> i & 1 == 1 { h } else { 0 })
                            .collect();
                        ResidueVector::new(m(q), e).unwrap()
                    })
                    .collect();
                for a in &vecs {
                    for b in &vecs {
                        for c in [a.add(b).unwrap(), a.sub(b).unwrap()] {
                            assert!(c.entries().iter().all(|&e| e == 0 || e == h));
                        }
                    }
                }
            }
        }
        assert!(matches!(m(5).half(), Err(Error::OddModulus(5))));
    }

    #[test]
    fn index_round_trip_and_odometer_order() {
        let q = m(3);
        let mut digits = vec![0u32; 4];
        let mut idx = 0u64;
        loop {
            let vv = ResidueVector::new(q, digits.clone()).unwrap();
            assert_eq!(vv.to_index(), idx);
            assert_eq!(ResidueVector::from_index(q, 4, idx).unwrap(), vv);
            idx += 1;
            if odometer_step(&mut digits, 3).is_none() {
                break;
            }
        }
        assert_eq!(idx, 81);
    }

    fn vec_triple(max_n: usize) -> impl Strategy<Value = (u32, Vec<u32>, Vec<u32>, Vec<u32>)> {
        (2u32..=12, 1..=max_n).prop_flat_map(|(q, n)| {
            let c = proptest::collection::vec(0..q, n);
            (Just(q), c.clone(), c.clone(), c)
        })
    }

    proptest! {
        #[test]
        fn distance_is_weight_of_difference((q, a, b, _c) in vec_triple(16)) {
            let (a, b) = (v(q, &a), v(q, &b));
            prop_assert_eq!(a.distance(&b).unwrap(), a.sub(&b).unwrap().weight());
            // a - b == a + (q-1)·b
            prop_assert_eq!(a.sub(&b).unwrap(), a.add(&b.scale_by(q - 1)).unwrap());
        }

        #[test]
        fn triangle_inequality((q, a, b, c) in vec_triple(16)) {
            let (a, b, c) = (v(q, &a), v(q, &b), v(q, &c));
            let ab = a.distance(&b).unwrap();
            let bc = b.distance(&c).unwrap();
            let ac = a.distance(&c).unwrap();
            prop_assert!(ac <= ab + bc);
            prop_assert_eq!(ab, b.distance(&a).unwrap());
        }
    }
}
