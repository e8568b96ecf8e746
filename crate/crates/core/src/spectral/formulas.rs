use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// An integer-valued affine function of `k`, `coeff·k + constant`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Affine {
    pub k: i64,
    pub c: i64,
}

impl Affine {
    pub const fn new(k: i64, c: i64) -> Self {
        Self { k, c }
    }

    pub fn at(&self, k: i64) -> i64 {
        self.k * k + self.c
    }

    pub fn add(&self, d: i64) -> Self {
        Self::new(self.k, self.c + d)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lead = match self.k {
            0 => return write!(f, "{}", self.c),
            1 => "k".to_string(),
            -1 => "−k".to_string(),
            n if n < 0 => format!("−{}k", -n),
            n => format!("{n}k"),
        };
        match self.c {
            0 => write!(f, "{lead}"),
            c if c < 0 => write!(f, "{lead}−{}", -c),
            c => write!(f, "{lead}+{c}"),
        }
    }
}

/// Main-page row of a Borel–Moore degree `m` of the `ρ`-th filtration
/// term: `q = ρ(2k+1) − 1 − m`.
pub fn q_of(rho: i64, m: i64) -> Affine {
    Affine::new(2 * rho, rho - 1 - m)
}

/// Inverse of [`q_of`] at a fixed `k`.
pub fn m_of(rho: i64, q: i64, k: i64) -> i64 {
    rho * (2 * k + 1) - 1 - q
}

/// Whether `(p, q)` lies in the region where the first page can be nonzero.
pub fn wedge_ok(p: i64, q: i64, k: i64) -> bool {
    p < 0 && q >= -2 * p * (k - 2)
}

/// Whether the term of rank `ρ` has the expected codimension in a space of
/// dimension `D`.
pub fn stable_range(rho: i64, d: i64, k: i64) -> bool {
    rho * (k + 2) < d + 1
}

/// Degree above which the filtration term `Θ_j` of `Λ_ρ∖Λ_{ρ−1}` has
/// trivial Borel–Moore homology.
pub fn pro99_bound(rho: i64, j: i64) -> i64 {
    5 * rho - j - 1
}

/// Bounds for column `p`: trivial through the first value, `Z_2` at the
/// second, finite through the third.
pub fn column_bounds(p: i64, k: i64) -> (i64, i64, i64) {
    let t = -p * (2 * k - 4);
    (t, t + 1, t + 2)
}

/// Smallest `D` with `s ≤ min(D−1, (⌊D/(k+2)⌋+1)(2k−5) − 2)`.
pub fn d_of_s(k: i64, s: i64) -> i64 {
    assert!(k >= 3 && s >= 1, "need k ≥ 3 and s ≥ 1");
    (1..)
        .find(|&d| s <= (d - 1).min((d / (k + 2) + 1) * (2 * k - 5) - 2))
        .expect("the bound grows without limit")
}

/// Dimension `a + k·d/a − 1` with `a` the least divisor of `d` above 1.
pub fn divideontimes_dim(d: i64, k: i64) -> i64 {
    assert!(d >= 2, "need d ≥ 2");
    let a = (2..=d).find(|a| d % a == 0).expect("d divides itself");
    a + k * d / a - 1
}

/// `(d−1)²/2`, the bound on the number of distinct elementary conditions.
pub fn elementary_bound(d: i64) -> Ratio<i64> {
    Ratio::new((d - 1) * (d - 1), 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_display() {
        assert_eq!(q_of(1, 4).to_string(), "2k−4");
        assert_eq!(q_of(2, 8).to_string(), "4k−7");
        assert_eq!(q_of(3, 13).to_string(), "6k−11");
        assert_eq!(Affine::new(0, 3).to_string(), "3");
        assert_eq!(Affine::new(8, 1).to_string(), "8k+1");
    }

    #[test]
    fn q_roundtrip() {
        for rho in 1..5 {
            for m in 0..30 {
                for k in 3..7 {
                    assert_eq!(m_of(rho, q_of(rho, m).at(k), k), m);
                }
            }
        }
    }

    #[test]
    fn small_values() {
        assert!(!wedge_ok(-2, 3, 3));
        assert!(wedge_ok(-2, 4, 3));
        assert_eq!(column_bounds(-4, 3), (8, 9, 10));
        assert_eq!(pro99_bound(4, 2), 17);
        assert_eq!(d_of_s(3, 1), 10);
        assert_eq!(divideontimes_dim(6, 3), 10);
        assert_eq!(elementary_bound(5), Ratio::from_integer(8));
        assert!(stable_range(2, 10, 3));
        assert!(!stable_range(2, 9, 3));
    }
}
