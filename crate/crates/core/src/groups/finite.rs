//! Finite groups realized as permutation groups with a precomputed Cayley table.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// A finite group stored as a list of permutations and its Cayley table.
/// Element 0 is always the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    perms: Vec<Vec<u16>>,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Builds the group generated by listing every element explicitly.
    /// Composition is `(g * h)(x) = g(h(x))`.
    pub fn from_permutations(perms: Vec<Vec<u16>>) -> Result<Self> {
        let n = perms.len();
        if n == 0 {
            return Err(Error::InvalidSpec("empty group".into()));
        }
        let degree = perms[0].len();
        if perms.iter().any(|p| p.len() != degree) {
            return Err(Error::InvalidSpec("permutations of unequal degree".into()));
        }
        let identity: Vec<u16> = (0..degree as u16).collect();
        if perms[0] != identity {
            return Err(Error::InvalidSpec("element 0 must be the identity".into()));
        }
        let index: HashMap<&[u16], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        if index.len() != n {
            return Err(Error::InvalidSpec("duplicate elements".into()));
        }
        let mut table = vec![0usize; n * n];
        let mut composed = vec![0u16; degree];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                for x in 0..degree {
                    composed[x] = pa[pb[x] as usize];
                }
                table[a * n + b] = *index
                    .get(composed.as_slice())
                    .ok_or_else(|| Error::InvalidSpec("element list is not closed under composition".into()))?;
            }
        }
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == 0).expect("closed finite set has inverses"))
            .collect();
        Ok(Self { perms, table, inverses })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("cyclic group needs n >= 1".into()));
        }
        let perms = (0..n).map(|k| (0..n).map(|x| ((x + k) % n) as u16).collect()).collect();
        Self::from_permutations(perms)
    }

    /// Symmetries of the regular n-gon: rotations `r^k` at indices `0..n`,
    /// reflections `s r^k` at indices `n..2n`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSpec("dihedral group needs n >= 3".into()));
        }
        let mut perms: Vec<Vec<u16>> = (0..n).map(|k| (0..n).map(|x| ((x + k) % n) as u16).collect()).collect();
        perms.extend((0..n).map(|k| (0..n).map(|x| ((2 * n - (x + k) % n) % n) as u16).collect()));
        Self::from_permutations(perms)
    }

    /// All permutations of `n` points in lexicographic order.
    pub fn symmetric(n: usize) -> Result<Self> {
        if !(1..=6).contains(&n) {
            return Err(Error::InvalidSpec(format!("symmetric group of degree {n} not supported")));
        }
        let mut p: Vec<u16> = (0..n as u16).collect();
        let mut perms = vec![p.clone()];
        while next_permutation(&mut p) {
            perms.push(p.clone());
        }
        Self::from_permutations(perms)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.perms.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn permutation(&self, a: usize) -> &[u16] {
        &self.perms[a]
    }

    /// Every row and column of the Cayley table is a permutation of the elements.
    pub fn is_latin_square(&self) -> bool {
        let n = self.order();
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let c = self.mul(a, b);
                if seen[c] {
                    return false;
                }
                seen[c] = true;
            }
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let c = self.mul(b, a);
                if seen[c] {
                    return false;
                }
                seen[c] = true;
            }
        }
        true
    }
}

fn next_permutation(p: &mut [u16]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(FiniteGroup::cyclic(1).unwrap().order(), 1);
        assert_eq!(FiniteGroup::cyclic(12).unwrap().order(), 12);
        assert_eq!(FiniteGroup::dihedral(5).unwrap().order(), 10);
        assert_eq!(FiniteGroup::symmetric(3).unwrap().order(), 6);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
    }

    #[test]
    fn cyclic_table_is_addition_mod_n() {
        let g = FiniteGroup::cyclic(7).unwrap();
        for a in 0..7 {
            for b in 0..7 {
                assert_eq!(g.mul(a, b), (a + b) % 7);
            }
        }
    }

    #[test]
    fn dihedral_relations() {
        let n = 5;
        let g = FiniteGroup::dihedral(n).unwrap();
        let r = 1;
        let s = n;
        assert_eq!(g.mul(s, s), 0);
        // s r s = r^{-1}
        assert_eq!(g.mul(g.mul(s, r), s), g.inv(r));
        assert!(g.is_latin_square());
    }

    #[test]
    fn latin_square_by_exhaustive_check() {
        for g in [FiniteGroup::symmetric(3).unwrap(), FiniteGroup::symmetric(4).unwrap()] {
            assert!(g.is_latin_square());
            for a in 0..g.order() {
                assert_eq!(g.mul(a, g.inv(a)), 0);
                assert_eq!(g.mul(0, a), a);
                assert_eq!(g.mul(a, 0), a);
            }
        }
    }

    #[test]
    fn non_closed_list_rejected() {
        let perms = vec![vec![0, 1, 2], vec![1, 2, 0]];
        assert!(FiniteGroup::from_permutations(perms).is_err());
    }
}
