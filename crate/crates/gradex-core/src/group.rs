//! The abelian grading group: Z^N (modulus 0) or Z_n^N (modulus n >= 2),
//! elements as exponent vectors.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    exps: Vec<i64>,
    modulus: u32,
}

impl GroupElement {
    /// Entries are reduced into [0, n) when modulus > 0.
    pub fn new(exps: Vec<i64>, modulus: u32) -> Result<GroupElement> {
        if modulus == 1 {
            return Err(Error::InvalidSpec(
                "group modulus must be 0 (for Z^N) or >= 2".into(),
            ));
        }
        let exps = if modulus > 0 {
            exps.into_iter()
                .map(|e| e.rem_euclid(modulus as i64))
                .collect()
        } else {
            exps
        };
        Ok(GroupElement { exps, modulus })
    }

    pub fn identity(rank: usize, modulus: u32) -> GroupElement {
        GroupElement { exps: vec![0; rank], modulus }
    }

    /// The generator xi^i (1-based), with 1 in slot i and 0 elsewhere.
    pub fn generator(i: usize, rank: usize, modulus: u32) -> Result<GroupElement> {
        if i < 1 || i > rank {
            return Err(Error::IndexOutOfRange { index: i, limit: rank });
        }
        let mut exps = vec![0; rank];
        exps[i - 1] = 1;
        GroupElement::new(exps, modulus)
    }

    pub fn rank(&self) -> usize {
        self.exps.len()
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|e| *e == 0)
    }

    fn check_shape(&self, other: &GroupElement) -> Result<()> {
        if self.rank() != other.rank() || self.modulus != other.modulus {
            return Err(Error::ShapeMismatch {
                expected_rank: self.rank(),
                expected_modulus: self.modulus,
                got_rank: other.rank(),
                got_modulus: other.modulus,
            });
        }
        Ok(())
    }

    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check_shape(other)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        GroupElement::new(exps, self.modulus)
    }

    pub fn inverse(&self) -> GroupElement {
        let exps = self.exps.iter().map(|e| -e).collect();
        GroupElement::new(exps, self.modulus).expect("modulus already validated")
    }

    /// All elements of Z_n^N, in lexicographic order. Errors on Z^N.
    pub fn enumerate(rank: usize, modulus: u32) -> Result<Vec<GroupElement>> {
        if modulus < 2 {
            return Err(Error::InfiniteGroup);
        }
        let size = (modulus as u64).checked_pow(rank as u32).ok_or_else(|| {
            Error::InvalidSpec("group too large to enumerate".into())
        })?;
        if size > 1 << 20 {
            return Err(Error::InvalidSpec(format!(
                "group of order {size} too large to enumerate"
            )));
        }
        let mut out = Vec::with_capacity(size as usize);
        let mut cur = vec![0i64; rank];
        loop {
            out.push(GroupElement { exps: cur.clone(), modulus });
            let mut i = rank;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < modulus as i64 {
                    break;
                }
                cur[i] = 0;
            }
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_pattern() {
        let g = GroupElement::generator(2, 3, 2).unwrap();
        assert_eq!(g.exps(), &[0, 1, 0]);
        assert!(GroupElement::generator(4, 3, 2).is_err());
        assert!(GroupElement::generator(0, 3, 2).is_err());
    }

    #[test]
    fn order_two_generators() {
        let g = GroupElement::generator(1, 3, 2).unwrap();
        assert!(g.compose(&g).unwrap().is_identity());
        let h = GroupElement::generator(2, 3, 2).unwrap();
        assert_eq!(g.compose(&h).unwrap().exps(), &[1, 1, 0]);
    }

    #[test]
    fn free_group_inverse() {
        let a = GroupElement::new(vec![2, -1], 0).unwrap();
        let b = GroupElement::new(vec![-2, 1], 0).unwrap();
        assert!(a.compose(&b).unwrap().is_identity());
        assert_eq!(a.inverse(), b);
    }

    #[test]
    fn self_inverse_mod_two() {
        let g = GroupElement::generator(1, 3, 2).unwrap();
        assert_eq!(g.inverse(), g);
        let e = GroupElement::identity(3, 2);
        assert_eq!(e.inverse(), e);
    }

    #[test]
    fn shape_mismatch() {
        let a = GroupElement::identity(2, 2);
        let b = GroupElement::identity(3, 2);
        assert!(a.compose(&b).is_err());
        let c = GroupElement::identity(2, 4);
        assert!(a.compose(&c).is_err());
    }

    #[test]
    fn enumeration() {
        let all = GroupElement::enumerate(3, 2).unwrap();
        assert_eq!(all.len(), 8);
        assert!(GroupElement::enumerate(2, 0).is_err());
    }

    #[test]
    fn generator_has_order_n() {
        for n in [2u32, 3, 4] {
            let g = GroupElement::generator(1, 2, n).unwrap();
            let mut acc = GroupElement::identity(2, n);
            for _ in 0..n {
                acc = acc.compose(&g).unwrap();
            }
            assert!(acc.is_identity());
        }
    }
}
