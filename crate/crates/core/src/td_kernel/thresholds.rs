//! The `size(k, i)` / `children(k, i)` recursion that decides when a vertex
//! of the decomposition has enough children to prune one.
//!
//! The exact values form a tower of exponents: `children(2, 3)` already has
//! about three billion bits. Values whose bit length would pass
//! [`MAX_EXACT_BITS`] are reported as [`Threshold::Beyond`] with a lower
//! bound on their bit length instead of being materialized; such a value is
//! larger than any vertex count.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

pub const MAX_EXACT_BITS: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Threshold {
    Exact(BigUint),
    Beyond { min_bits: u64 },
}

impl Threshold {
    fn small(v: u64) -> Self {
        Threshold::Exact(BigUint::from(v))
    }

    pub fn as_exact(&self) -> Option<&BigUint> {
        match self {
            Threshold::Exact(v) => Some(v),
            Threshold::Beyond { .. } => None,
        }
    }

    /// `count >= self`.
    pub fn reached_by(&self, count: usize) -> bool {
        match self {
            Threshold::Exact(v) => BigUint::from(count) >= *v,
            Threshold::Beyond { .. } => false,
        }
    }

    /// `count <= self`.
    pub fn admits(&self, count: usize) -> bool {
        match self {
            Threshold::Exact(v) => BigUint::from(count) <= *v,
            Threshold::Beyond { .. } => true,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Exact(v) => write!(f, "{v}"),
            Threshold::Beyond { min_bits } => write!(f, "> 2^{}", min_bits.saturating_sub(1)),
        }
    }
}

/// Which threshold functions the kernel runs with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Thresholds {
    /// The exact recursion. Never fires on inputs that fit in memory.
    Exact,
    /// Small replacement values for `children(k, i)`, `i >= 2`, indexed from
    /// `i = 2`; the last value repeats. `size` follows the same recursion
    /// over these values. A component class must have at least `min_class`
    /// members before one of them may be pruned.
    ///
    /// Only sound where checked against the brute-force oracle.
    Synthetic { children: Vec<u64>, min_class: usize },
}

impl Thresholds {
    pub fn synthetic(children: u64) -> Self {
        Thresholds::Synthetic { children: vec![children], min_class: 2 }
    }

    /// `(size(k, i), children(k, i))` for `1 <= i`.
    pub fn eval(&self, k: usize, i: usize) -> (Threshold, Threshold) {
        assert!(i >= 1, "levels start at 1");
        let mut size = Threshold::small(0);
        let mut children = Threshold::small(0);
        for level in 2..=i {
            size = next_size(&size, &children);
            children = match self {
                Thresholds::Exact => exact_children(k, &size),
                Thresholds::Synthetic { children: list, .. } => {
                    let idx = (level - 2).min(list.len().saturating_sub(1));
                    Threshold::small(list.get(idx).copied().unwrap_or(0))
                }
            };
        }
        (size, children)
    }

    /// Smallest equivalence class a pruned component may come from:
    /// `children(k, i) / 2^((k + size(k, i))^2)`, and at least `min_class`
    /// in synthetic mode.
    pub fn class_requirement(&self, k: usize, i: usize) -> Threshold {
        let (size, children) = self.eval(k, i);
        let quotient = match (&size, &children) {
            (Threshold::Exact(s), Threshold::Exact(c)) => {
                let exp = (BigUint::from(k) + s).pow(2u32);
                match exp.to_u64() {
                    Some(e) if e < c.bits() => Threshold::Exact(ceil_shift(c, e)),
                    _ => Threshold::small(u64::from(!c.is_zero())),
                }
            }
            (_, Threshold::Beyond { min_bits }) => Threshold::Beyond { min_bits: min_bits / 2 },
            (Threshold::Beyond { .. }, Threshold::Exact(c)) => Threshold::small(u64::from(!c.is_zero())),
        };
        match (self, quotient) {
            (Thresholds::Synthetic { min_class, .. }, Threshold::Exact(q)) => {
                Threshold::Exact(q.max(BigUint::from(*min_class)))
            }
            (_, q) => q,
        }
    }
}

fn ceil_shift(c: &BigUint, e: u64) -> BigUint {
    let q: BigUint = c >> e;
    if (q.clone() << e) == *c {
        q
    } else {
        q + 1u32
    }
}

fn next_size(size: &Threshold, children: &Threshold) -> Threshold {
    match (size, children) {
        (Threshold::Exact(s), Threshold::Exact(c)) => {
            let bits = s.bits() + c.bits();
            if bits > MAX_EXACT_BITS {
                Threshold::Beyond { min_bits: bits - 1 }
            } else {
                Threshold::Exact(s * c + 1u32)
            }
        }
        (Threshold::Exact(s), Threshold::Beyond { .. }) if s.is_zero() => Threshold::small(1),
        (Threshold::Beyond { min_bits: a }, Threshold::Exact(c)) if !c.is_zero() => {
            Threshold::Beyond { min_bits: a + c.bits() - 1 }
        }
        (Threshold::Beyond { .. }, Threshold::Exact(_)) => Threshold::small(1),
        (Threshold::Exact(s), Threshold::Beyond { min_bits }) => Threshold::Beyond { min_bits: min_bits + s.bits() - 1 },
        (Threshold::Beyond { min_bits: a }, Threshold::Beyond { min_bits: b }) => Threshold::Beyond { min_bits: a + b },
    }
}

/// `((2^(k+1) + 1)^(s^2) + 1) · (s + k)! · 2^((k + s)^2)` for `s = size(k, i)`.
fn exact_children(k: usize, size: &Threshold) -> Threshold {
    let Threshold::Exact(s) = size else {
        return Threshold::Beyond { min_bits: u64::MAX / 4 };
    };
    let Some(s) = s.to_u64() else {
        return Threshold::Beyond { min_bits: u64::MAX / 4 };
    };
    let k = k as u64;
    let base_bits = k + 2; // bit length of 2^(k+1) + 1
    let power_bits = (s as u128 * s as u128).saturating_mul((base_bits - 1) as u128);
    let shift = (k as u128 + s as u128).pow(2);
    let estimate = power_bits.saturating_add(shift);
    if estimate > MAX_EXACT_BITS as u128 {
        return Threshold::Beyond { min_bits: estimate.min(u64::MAX as u128 / 4) as u64 };
    }
    let base = (BigUint::one() << (k + 1)) + 1u32;
    let power = num_traits::pow(base, (s * s) as usize) + 1u32;
    let factorial: BigUint = (1..=s + k).map(BigUint::from).product();
    let exact = (power * factorial) << (shift as u64);
    if exact.bits() > MAX_EXACT_BITS {
        Threshold::Beyond { min_bits: exact.bits() }
    } else {
        Threshold::Exact(exact)
    }
}

/// Free-function form of [`Thresholds::eval`].
pub fn thresholds_eval(k: usize, i: usize, mode: &Thresholds) -> (Threshold, Threshold) {
    mode.eval(k, i)
}

impl FromStr for Thresholds {
    type Err = String;

    /// `paper`, or `synthetic:<c2>[,<c3>,...]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "paper" {
            return Ok(Thresholds::Exact);
        }
        let list = s
            .strip_prefix("synthetic:")
            .ok_or_else(|| format!("expected `paper` or `synthetic:<list>`, got {s:?}"))?;
        let children = list
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|e| format!("bad threshold {x:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        if children.is_empty() || children.contains(&0) {
            return Err("synthetic thresholds must be positive".into());
        }
        Ok(Thresholds::Synthetic { children, min_class: 2 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(t: &Threshold) -> u64 {
        t.as_exact().unwrap().to_u64().unwrap()
    }

    #[test]
    fn base_levels() {
        for k in 1..=6 {
            let (s, c) = Thresholds::Exact.eval(k, 1);
            assert_eq!((exact(&s), exact(&c)), (0, 0));
            let (s, _) = Thresholds::Exact.eval(k, 2);
            assert_eq!(exact(&s), 1);
        }
    }

    #[test]
    fn children_2_2() {
        let (_, c) = Thresholds::Exact.eval(2, 2);
        assert_eq!(exact(&c), 30720);
        let (s, c) = Thresholds::Exact.eval(2, 3);
        assert_eq!(exact(&s), 30721);
        assert!(matches!(c, Threshold::Beyond { .. }));
        assert!(!c.reached_by(usize::MAX));
        assert!(c.admits(usize::MAX));
    }

    #[test]
    fn tower_stays_beyond() {
        let (s, c) = Thresholds::Exact.eval(3, 5);
        assert!(matches!(s, Threshold::Beyond { .. }));
        assert!(matches!(c, Threshold::Beyond { .. }));
    }

    #[test]
    fn synthetic_recursion() {
        let t = Thresholds::synthetic(5);
        assert_eq!(t.eval(4, 1), (Threshold::small(0), Threshold::small(0)));
        assert_eq!(t.eval(4, 2), (Threshold::small(1), Threshold::small(5)));
        assert_eq!(t.eval(4, 3), (Threshold::small(6), Threshold::small(5)));
        assert_eq!(t.eval(4, 4), (Threshold::small(31), Threshold::small(5)));
        assert_eq!(t.class_requirement(4, 2), Threshold::small(2));
    }

    #[test]
    fn parse_modes() {
        assert_eq!("paper".parse::<Thresholds>(), Ok(Thresholds::Exact));
        assert_eq!(
            "synthetic:5,8".parse::<Thresholds>(),
            Ok(Thresholds::Synthetic { children: vec![5, 8], min_class: 2 })
        );
        assert!("synthetic:".parse::<Thresholds>().is_err());
        assert!("synthetic:0".parse::<Thresholds>().is_err());
        assert!("tower".parse::<Thresholds>().is_err());
    }

    #[test]
    fn exact_class_requirement_is_quotient() {
        // children(2,2) / 2^((2+1)^2) = (9 + 1) * 3! = 60
        assert_eq!(Thresholds::Exact.class_requirement(2, 2), Threshold::small(60));
    }
}
