//! Symplectic bit representation of n-qubit Pauli strings.
//!
//! A string is stored as a pair of `u32` masks. Site `k` (1-based, leftmost in
//! text form) lives in bit `k - 1`. Products carry their phase separately as a
//! power of `i`, so every stored string is the Hermitian representative.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 32;

/// A fourth root of unity `i^k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: u32) -> Self {
        Phase((k % 4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn conj(self) -> Self {
        Phase((4 - self.0) % 4)
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// `(re, im)` as small integers.
    pub fn as_parts(self) -> (i64, i64) {
        match self.0 {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        }
    }

    pub fn to_complex(self) -> num_complex::Complex64 {
        let (re, im) = self.as_parts();
        num_complex::Complex64::new(re as f64, im as f64)
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

impl std::ops::MulAssign for Phase {
    fn mul_assign(&mut self, rhs: Phase) {
        *self = *self * rhs;
    }
}

/// Hermitian n-qubit Pauli string.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: u8,
    x: u32,
    z: u32,
}

/// Result of a non-vanishing commutator `[g, p] = sign * 2i * image`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CommutatorImage {
    pub image: PauliString,
    /// `+1` or `-1`.
    pub sign: i8,
}

fn mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_QUBITS).contains(&n), "qubit count {n} out of range");
        PauliString { n: n as u8, x: 0, z: 0 }
    }

    pub fn from_masks(n: usize, x: u32, z: u32) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n) {
            return Err(Error::Config(format!(
                "qubit count {n} outside [1, {MAX_QUBITS}]"
            )));
        }
        let m = mask(n);
        if x & !m != 0 || z & !m != 0 {
            return Err(Error::Contract(format!(
                "mask bits set above site {n}"
            )));
        }
        Ok(PauliString { n: n as u8, x, z })
    }

    /// Inverse of [`PauliString::index`].
    pub fn from_index(n: usize, index: u64) -> Self {
        assert!((1..=MAX_QUBITS).contains(&n));
        debug_assert!(n == 32 || index < 1u64 << (2 * n));
        let z = (index & mask(n) as u64) as u32;
        let x = (index >> n) as u32;
        PauliString { n: n as u8, x, z }
    }

    /// Single-site operator: `op` in `{'X','Y','Z'}` on 1-based `site`.
    pub fn single(n: usize, site: usize, op: char) -> Self {
        let mut s = vec!['I'; n];
        s[site - 1] = op;
        s.into_iter().collect::<String>().parse().expect("valid single-site Pauli")
    }

    pub fn num_qubits(&self) -> usize {
        self.n as usize
    }

    pub fn x_mask(&self) -> u32 {
        self.x
    }

    pub fn z_mask(&self) -> u32 {
        self.z
    }

    /// Dense index `x * 2^n + z`, a bijection onto `[0, 4^n)`.
    pub fn index(&self) -> u64 {
        ((self.x as u64) << self.n) | self.z as u64
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    /// Letter on a 1-based site.
    pub fn site(&self, site: usize) -> char {
        let b = site - 1;
        match ((self.x >> b) & 1, (self.z >> b) & 1) {
            (0, 0) => 'I',
            (1, 0) => 'X',
            (1, 1) => 'Y',
            _ => 'Z',
        }
    }

    /// Symplectic commutation test. Callers guarantee equal qubit counts.
    #[inline]
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        debug_assert_eq!(self.n, other.n);
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }

    /// `self * other = phase * result`, result Hermitian. Unchecked sizes.
    #[inline]
    pub fn mul_unchecked(&self, other: &PauliString) -> (PauliString, Phase) {
        debug_assert_eq!(self.n, other.n);
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        // P = i^{|x&z|} X^x Z^z and Z^z1 X^x2 = (-1)^{|z1&x2|} X^x2 Z^z1.
        let k = (self.x & self.z).count_ones()
            + (other.x & other.z).count_ones()
            + 2 * (self.z & other.x).count_ones()
            + 3 * (x & z).count_ones();
        (PauliString { n: self.n, x, z }, Phase::from_exponent(k))
    }

    /// `[self, p]` as a signed image string, or `None` when they commute.
    #[inline]
    pub fn commutator_unchecked(&self, p: &PauliString) -> Option<CommutatorImage> {
        if self.commutes_with(p) {
            return None;
        }
        // Anticommuting: [g, p] = 2 g p, and g p carries phase +-i.
        let (image, phase) = self.mul_unchecked(p);
        let sign = match phase.exponent() {
            1 => 1,
            3 => -1,
            e => unreachable!("anticommuting product with real phase i^{e}"),
        };
        Some(CommutatorImage { image, sign })
    }

    fn check_same(&self, other: &PauliString) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension {
                left: self.n as usize,
                right: other.n as usize,
            });
        }
        Ok(())
    }

    /// Iterates all `4^n` strings in index order.
    pub fn all(n: usize) -> impl Iterator<Item = PauliString> {
        assert!(n <= 16, "enumerating 4^{n} strings");
        (0..1u64 << (2 * n)).map(move |i| PauliString::from_index(n, i))
    }
}

pub fn commutes(p: &PauliString, q: &PauliString) -> Result<bool> {
    p.check_same(q)?;
    Ok(p.commutes_with(q))
}

pub fn multiply(p: &PauliString, q: &PauliString) -> Result<(PauliString, Phase)> {
    p.check_same(q)?;
    Ok(p.mul_unchecked(q))
}

pub fn commutator_image(g: &PauliString, p: &PauliString) -> Result<Option<CommutatorImage>> {
    g.check_same(p)?;
    Ok(g.commutator_unchecked(p))
}

pub fn weight(p: &PauliString) -> usize {
    p.weight()
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: String| Error::Parse {
            text: s.to_string(),
            reason,
        };
        let n = s.chars().count();
        if n == 0 {
            return Err(err("empty string".into()));
        }
        if n > MAX_QUBITS {
            return Err(err(format!("length {n} exceeds {MAX_QUBITS}")));
        }
        let (mut x, mut z) = (0u32, 0u32);
        for (b, c) in s.chars().enumerate() {
            match c {
                'I' => {}
                'X' => x |= 1 << b,
                'Y' => {
                    x |= 1 << b;
                    z |= 1 << b;
                }
                'Z' => z |= 1 << b,
                other => return Err(err(format!("bad character {other:?}"))),
            }
        }
        Ok(PauliString { n: n as u8, x, z })
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for site in 1..=self.num_qubits() {
            write!(f, "{}", self.site(site))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn single_qubit_algebra() {
        assert!(!p("X").commutes_with(&p("Z")));
        assert_eq!(multiply(&p("X"), &p("Y")).unwrap(), (p("Z"), Phase::I));
        assert_eq!(multiply(&p("Y"), &p("X")).unwrap(), (p("Z"), Phase::MINUS_I));
        assert_eq!(
            multiply(&p("XIZY"), &p("IIII")).unwrap(),
            (p("XIZY"), Phase::ONE)
        );
    }

    #[test]
    fn commutator_examples() {
        let c = commutator_image(&p("Z"), &p("X")).unwrap().unwrap();
        assert_eq!((c.image, c.sign), (p("Y"), 1));
        assert!(commutator_image(&p("Z"), &p("Z")).unwrap().is_none());
        let c = commutator_image(&p("XX"), &p("ZI")).unwrap().unwrap();
        assert_eq!((c.image, c.sign), (p("YX"), -1));
    }

    #[test]
    fn parse_layout() {
        let s = p("IZ");
        assert_eq!((s.x_mask(), s.z_mask()), (0b00, 0b10));
        let y = p("Y");
        assert_eq!((y.x_mask(), y.z_mask()), (1, 1));
        assert_eq!(p("XIZY").weight(), 3);
        assert_eq!(PauliString::identity(5).weight(), 0);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("".parse::<PauliString>(), Err(Error::Parse { .. })));
        assert!(matches!("XA".parse::<PauliString>(), Err(Error::Parse { .. })));
        assert!(matches!(
            "I".repeat(33).parse::<PauliString>(),
            Err(Error::Parse { .. })
        ));
        assert!("Z".repeat(32).parse::<PauliString>().is_ok());
    }

    #[test]
    fn size_mismatch_is_dimension_error() {
        let e = Error::Dimension { left: 1, right: 2 };
        assert_eq!(commutes(&p("X"), &p("XX")), Err(e.clone()));
        assert_eq!(multiply(&p("X"), &p("XX")).map(|_| ()), Err(e.clone()));
        assert_eq!(commutator_image(&p("X"), &p("XX")).map(|_| ()), Err(e));
    }

    #[test]
    fn mask_bounds() {
        assert!(PauliString::from_masks(2, 0b100, 0).is_err());
        assert!(PauliString::from_masks(0, 0, 0).is_err());
        let full = PauliString::from_masks(32, u32::MAX, u32::MAX).unwrap();
        assert_eq!(full.weight(), 32);
        assert_eq!(PauliString::from_index(32, full.index()), full);
    }

    #[test]
    fn round_trip_all_n4() {
        let all: Vec<_> = PauliString::all(4).collect();
        assert_eq!(all.len(), 256);
        let mut seen = std::collections::HashSet::new();
        for (i, s) in all.iter().enumerate() {
            assert_eq!(s.index(), i as u64);
            assert_eq!(p(&s.to_string()), *s);
            assert!(seen.insert(s.to_string()));
        }
    }

    #[test]
    fn phase_arithmetic() {
        assert_eq!(Phase::I * Phase::I, Phase::MINUS_ONE);
        assert_eq!(Phase::MINUS_I.conj(), Phase::I);
        assert_eq!(Phase::from_exponent(7), Phase::MINUS_I);
    }
}
