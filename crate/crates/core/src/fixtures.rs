//! Canonical small monoids used throughout the test suite.
//!
//! Each one is the smallest monoid exercising one classification branch:
//! T1 (trivial), SL2 (idempotent appended to the identity), N2 (null square),
//! RZ2I (right-zero pair with identity), FLRB2 (free left regular band on
//! two letters), C2/C3 (cyclic groups), N2C2 = N2 x C2.

use crate::monoid_core::{FiniteMonoid, GeneratorMap};

/// Trivial monoid.
pub fn t1() -> FiniteMonoid {
    FiniteMonoid::from_cayley_table(vec![vec![0]], 0).unwrap()
}

/// {1, a} with a^2 = a.
pub fn sl2() -> FiniteMonoid {
    FiniteMonoid::from_cayley_table(vec![vec![0, 1], vec![1, 1]], 0).unwrap()
}

pub const N2_ONE: usize = 0;
pub const N2_A: usize = 1;
pub const N2_Z: usize = 2;

/// {1, a, 0} with a^2 = 0 and 0 absorbing.
pub fn n2() -> FiniteMonoid {
    FiniteMonoid::from_cayley_table(vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]], 0).unwrap()
}

pub const RZ2I_ONE: usize = 0;
pub const RZ2I_E: usize = 1;
pub const RZ2I_F: usize = 2;

/// {1, e, f} where {e, f} is a right-zero semigroup (xy = y).
pub fn rz2i() -> FiniteMonoid {
    FiniteMonoid::from_cayley_table(vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 1, 2]], 0).unwrap()
}

pub const FLRB2_ONE: usize = 0;
pub const FLRB2_X: usize = 1;
pub const FLRB2_Y: usize = 2;
pub const FLRB2_XY: usize = 3;
pub const FLRB2_YX: usize = 4;

/// Free left regular band on {x, y}: {1, x, y, xy, yx}.
pub fn flrb2() -> FiniteMonoid {
    // order: 1, x, y, xy, yx
    FiniteMonoid::from_cayley_table(
        vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 1, 3, 3, 3],
            vec![2, 4, 2, 4, 4],
            vec![3, 3, 3, 3, 3],
            vec![4, 4, 4, 4, 4],
        ],
        0,
    )
    .unwrap()
}

/// Cyclic group of order 2.
pub fn c2() -> FiniteMonoid {
    FiniteMonoid::from_cayley_table(vec![vec![0, 1], vec![1, 0]], 0).unwrap()
}

/// Cyclic group of order n.
pub fn cn(n: usize) -> FiniteMonoid {
    let table = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    FiniteMonoid::from_cayley_table(table, 0).unwrap()
}

/// Cyclic group of order 3.
pub fn c3() -> FiniteMonoid {
    cn(3)
}

/// N2 x C2, order 6.  Element (m, c) has index m*2 + c.
pub fn n2c2() -> FiniteMonoid {
    n2().direct_product(&c2())
}

/// Symmetric group S3 as a transformation monoid on 3 points.
pub fn s3() -> FiniteMonoid {
    FiniteMonoid::from_generators(
        3,
        &[
            GeneratorMap::total(vec![1, 0, 2]),
            GeneratorMap::total(vec![1, 2, 0]),
        ],
        100,
    )
    .unwrap()
}

/// Names for the fixtures, used by examples and reports.
pub fn by_name(name: &str) -> Option<FiniteMonoid> {
    match name {
        "T1" => Some(t1()),
        "SL2" => Some(sl2()),
        "N2" => Some(n2()),
        "RZ2I" => Some(rz2i()),
        "FLRB2" => Some(flrb2()),
        "C2" => Some(c2()),
        "C3" => Some(c3()),
        "N2C2" => Some(n2c2()),
        "S3" => Some(s3()),
        _ => None,
    }
}

pub fn all_fixtures() -> Vec<(&'static str, FiniteMonoid)> {
    vec![
        ("T1", t1()),
        ("SL2", sl2()),
        ("N2", n2()),
        ("RZ2I", rz2i()),
        ("FLRB2", flrb2()),
        ("C2", c2()),
        ("C3", c3()),
        ("N2C2", n2c2()),
        ("S3", s3()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        for (name, m) in all_fixtures() {
            assert!(m.order() > 0, "{name} empty");
        }
        assert_eq!(s3().order(), 6);
        assert_eq!(n2c2().order(), 6);
    }

    #[test]
    fn flrb2_satisfies_lrb_laws() {
        let m = flrb2();
        for x in m.elements() {
            assert_eq!(m.mul(x, x), x);
            for y in m.elements() {
                let xy = m.mul(x, y);
                assert_eq!(m.mul(xy, x), xy);
            }
        }
    }
}
