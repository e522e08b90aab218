//! Matchgate components in the Majorana picture.
//!
//! With `c_{2k-1} = Z^{k-1} X_k` and `c_{2k} = Z^{k-1} Y_k`, every Pauli string
//! is (up to phase) a product `c_{i_1} ... c_{i_kappa}` of distinct modes, and
//! the matchgate component of `p` is fixed by `kappa`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::path_average;
use crate::error::{Error, Result};
use crate::pauli::PauliString;
use crate::rational::{rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MajoranaIndex {
    n: usize,
    indices: Vec<u32>,
}

impl MajoranaIndex {
    /// `indices` must be strictly increasing within `[1, 2n]`.
    pub fn new(n: usize, indices: Vec<u32>) -> Result<Self> {
        if n == 0 || n > crate::pauli::MAX_QUBITS {
            return Err(Error::Config(format!("invalid qubit count {n}")));
        }
        let ok = indices.windows(2).all(|w| w[0] < w[1])
            && indices.iter().all(|&i| i >= 1 && i as usize <= 2 * n);
        if !ok {
            return Err(Error::Contract(format!(
                "Majorana indices {indices:?} not strictly increasing in [1, {}]",
                2 * n
            )));
        }
        Ok(MajoranaIndex { n, indices })
    }

    /// `c_1 ... c_kappa`.
    pub fn corner(n: usize, kappa: usize) -> Result<Self> {
        Self::new(n, (1..=kappa as u32).collect())
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn kappa(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    /// All `C(2n, kappa)` tuples in lexicographic order.
    pub fn all(n: usize, kappa: usize) -> Vec<MajoranaIndex> {
        let m = 2 * n as u32;
        let mut out = Vec::new();
        let mut cur: Vec<u32> = (1..=kappa as u32).collect();
        if kappa as u32 > m {
            return out;
        }
        loop {
            out.push(MajoranaIndex {
                n,
                indices: cur.clone(),
            });
            // Advance to the next combination.
            let mut a = kappa;
            loop {
                if a == 0 {
                    return out;
                }
                a -= 1;
                if cur[a] < m - (kappa - 1 - a) as u32 {
                    break;
                }
            }
            cur[a] += 1;
            for b in a + 1..kappa {
                cur[b] = cur[b - 1] + 1;
            }
        }
    }
}

impl fmt::Display for MajoranaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The Jordan-Wigner mode `c_i`, `1 <= i <= 2n`.
pub fn majorana_mode(n: usize, i: u32) -> PauliString {
    let k = i.div_ceil(2) as usize;
    let zs = (1u32 << (k - 1)) - 1;
    let bit = 1u32 << (k - 1);
    let z = if i % 2 == 1 { zs } else { zs | bit };
    PauliString::from_masks(n, bit, z).expect("mode within n qubits")
}

/// Product of the modes, phase discarded.
pub fn majorana_to_pauli(m: &MajoranaIndex) -> PauliString {
    m.indices
        .iter()
        .fold(PauliString::identity(m.n), |acc, &i| {
            acc.mul_unchecked(&majorana_mode(m.n, i)).0
        })
}

/// Inverse of [`majorana_to_pauli`]; every Pauli string has a unique mode set.
pub fn pauli_to_majorana(p: &PauliString) -> MajoranaIndex {
    let n = p.num_qubits();
    let mut indices = Vec::new();
    // Modes to the right of site k each leave a Z on site k.
    let mut parity = false;
    for k in (1..=n).rev() {
        let bit = 1u32 << (k - 1);
        let x = p.x_mask() & bit != 0;
        let mut z = p.z_mask() & bit != 0;
        if parity {
            z = !z;
        }
        // Local operator (after removing the Z string) X^a Y^b with
        // I -> none, X -> c_{2k-1}, Y -> c_{2k}, Z ~ XY -> both.
        let (a, b) = match (x, z) {
            (false, false) => (false, false),
            (true, false) => (true, false),
            (true, true) => (false, true),
            (false, true) => (true, true),
        };
        if b {
            indices.push(2 * k as u32);
        }
        if a {
            indices.push(2 * k as u32 - 1);
        }
        parity ^= a ^ b;
    }
    indices.reverse();
    MajoranaIndex { n, indices }
}

/// `sum_alpha |i_alpha - j_alpha|`.
pub fn majorana_distance(a: &MajoranaIndex, b: &MajoranaIndex) -> Result<u64> {
    if a.n != b.n || a.kappa() != b.kappa() {
        return Err(Error::Contract(format!(
            "distance needs equal n and kappa: {a} (n={}) vs {b} (n={})",
            a.n, b.n
        )));
    }
    Ok(a.indices
        .iter()
        .zip(&b.indices)
        .map(|(&i, &j)| (i as i64 - j as i64).unsigned_abs())
        .sum())
}

pub fn component_diameter(n: usize, kappa: usize) -> u64 {
    (kappa * (2 * n).saturating_sub(kappa)) as u64
}

/// `c_{i_1} ... c_{i_k} -> c_{2n-i_k+1} ... c_{2n-i_1+1}`.
pub fn reflection_automorphism(m: &MajoranaIndex) -> MajoranaIndex {
    let top = 2 * m.n as u32 + 1;
    MajoranaIndex {
        n: m.n,
        indices: m.indices.iter().rev().map(|&i| top - i).collect(),
    }
}

/// Long-time average graph complexity from a corner vertex.
pub fn corner_average_gc(n: usize, kappa: usize) -> Rational {
    rational(component_diameter(n, kappa) as i128, 2)
}

/// Closed-form long-time average graph complexity starting at `start`:
/// the path formula for `kappa = 1`, the triangle polynomial for
/// `kappa = 2`.
pub fn avg_gc_closed_form(start: &MajoranaIndex) -> Result<Rational> {
    let n = start.n as i128;
    match start.indices() {
        [i] => path_average(2 * start.n as u64, *i as u64),
        &[i1, i2] => {
            let (i1, i2) = (i1 as i128, i2 as i128);
            let num = i1 * (i1 - 1) * (6 * n - i1 - 1)
                + (2 * n - i1) * (2 * n - i1 - 1) * (2 * n - i1 + 1)
                + i2 * (i2 - 1) * (i2 - 2)
                + (2 * n - i2) * (2 * n - i2 + 1) * (4 * n + i2 - 2);
            Ok(rational(num, 6 * n * (2 * n - 1)))
        }
        _ => Err(Error::Config(format!(
            "no closed form for kappa = {}; use the BFS average",
            start.kappa()
        ))),
    }
}

/// `A(1, n) = (4n^2 - 1) / (6n)`, the all-pairs mean on the `2n`-vertex path.
pub fn a1_closed_form(n: usize) -> Rational {
    let n = n as i128;
    rational(4 * n * n - 1, 6 * n)
}

fn binomials(m: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); m + 1]; m + 1];
    for a in 0..=m {
        t[a][0] = BigInt::one();
        for b in 1..=a {
            t[a][b] = &t[a - 1][b - 1] + &t[a - 1][b];
        }
    }
    t
}

/// All-pairs mean distance in `C_kappa`:
/// `2 sum_{i>j} sum_alpha C(i-1,a-1) C(2n-i,k-a) C(j-1,a-1) C(2n-j,k-a) (i-j)`
/// divided by `C(2n, kappa)^2`.
pub fn all_pairs_average(n: usize, kappa: usize) -> Result<BigRational> {
    if kappa > 2 * n || n == 0 {
        return Err(Error::Config(format!("kappa {kappa} outside [0, {}]", 2 * n)));
    }
    if kappa == 0 {
        return Ok(BigRational::zero());
    }
    let m = 2 * n;
    let c = binomials(m);
    let binom = |a: usize, b: isize| -> &BigInt {
        static ZERO: std::sync::OnceLock<BigInt> = std::sync::OnceLock::new();
        if b < 0 || b as usize > a {
            ZERO.get_or_init(BigInt::zero)
        } else {
            &c[a][b as usize]
        }
    };
    let total: BigInt = (2..=m)
        .into_par_iter()
        .map(|i| {
            let mut acc = BigInt::zero();
            for j in 1..i {
                for alpha in 1..=kappa {
                    let (a, k) = (alpha as isize, kappa as isize);
                    let term = binom(i - 1, a - 1)
                        * binom(m - i, k - a)
                        * binom(j - 1, a - 1)
                        * binom(m - j, k - a);
                    acc += term * BigInt::from(i - j);
                }
            }
            acc
        })
        .sum();
    let size = &c[m][kappa];
    Ok(BigRational::new(total * 2, size * size))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn mi(n: usize, v: &[u32]) -> MajoranaIndex {
        MajoranaIndex::new(n, v.to_vec()).unwrap()
    }

    #[test]
    fn modes() {
        assert_eq!(majorana_mode(3, 1), ps("XII"));
        assert_eq!(majorana_mode(3, 2), ps("YII"));
        assert_eq!(majorana_mode(3, 5), ps("ZZX"));
        assert_eq!(majorana_to_pauli(&mi(3, &[1, 2])), ps("ZII"));
    }

    #[test]
    fn round_trip_all_strings() {
        for n in 1..=3 {
            for p in PauliString::all(n) {
                let m = pauli_to_majorana(&p);
                assert_eq!(majorana_to_pauli(&m), p, "{p} -> {m}");
            }
            for kappa in 0..=2 * n {
                for m in MajoranaIndex::all(n, kappa) {
                    assert_eq!(pauli_to_majorana(&majorana_to_pauli(&m)), m);
                }
            }
        }
        assert_eq!(MajoranaIndex::all(3, 2).len(), 15);
    }

    #[test]
    fn validation() {
        assert!(MajoranaIndex::new(2, vec![2, 1]).is_err());
        assert!(MajoranaIndex::new(2, vec![1, 5]).is_err());
        assert!(majorana_distance(&mi(2, &[1]), &mi(2, &[1, 2])).is_err());
    }

    #[test]
    fn distances_and_diameter() {
        let a = mi(3, &[1, 2]);
        assert_eq!(majorana_distance(&a, &a).unwrap(), 0);
        for kappa in 1..=5 {
            let lo = MajoranaIndex::corner(3, kappa).unwrap();
            let hi = mi(3, &((7 - kappa as u32)..=6).collect::<Vec<_>>());
            assert_eq!(majorana_distance(&lo, &hi).unwrap(), component_diameter(3, kappa));
        }
        assert_eq!(component_diameter(3, 0), 0);
        assert_eq!(component_diameter(3, 2), 8);
    }

    #[test]
    fn reflection_is_involution() {
        for m in MajoranaIndex::all(3, 3) {
            let r = reflection_automorphism(&m);
            assert_eq!(reflection_automorphism(&r), m);
        }
        assert_eq!(reflection_automorphism(&mi(3, &[1, 2])), mi(3, &[5, 6]));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(corner_average_gc(3, 2), rational(4, 1));
        assert_eq!(corner_average_gc(3, 0), rational(0, 1));
        assert_eq!(corner_average_gc(3, 6), rational(0, 1));
        assert_eq!(avg_gc_closed_form(&mi(3, &[1, 2])).unwrap(), rational(4, 1));
        assert_eq!(avg_gc_closed_form(&mi(2, &[1])).unwrap(), rational(3, 2));
        assert_eq!(avg_gc_closed_form(&mi(2, &[2, 3])).unwrap(), rational(4, 3));
        assert!(avg_gc_closed_form(&mi(3, &[1, 2, 3])).is_err());
        assert_eq!(a1_closed_form(2), rational(5, 4));
    }

    #[test]
    fn pair_sum_matches_a1() {
        for n in 2..=6 {
            let a = all_pairs_average(n, 1).unwrap();
            assert_eq!(crate::rational::from_big(&a), Some(a1_closed_form(n)));
        }
        assert!(all_pairs_average(2, 5).is_err());
    }
}
