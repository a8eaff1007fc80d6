//! Multi-dimensional discrete action spaces.
//!
//! An action is a tuple of sub-actions, one per action vertex. Tuples map to
//! flat indices in mixed radix with the last vertex varying fastest, so flat
//! order is lexicographic tuple order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct ActionSpace {
    cardinalities: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl ActionSpace {
    pub fn new(cardinalities: impl Into<Vec<usize>>) -> Result<Self> {
        let cardinalities = cardinalities.into();
        if cardinalities.is_empty() {
            return Err(Error::EmptySpace);
        }
        if let Some(vertex) = cardinalities.iter().position(|&c| c == 0) {
            return Err(Error::EmptySubActionSet { vertex });
        }
        let mut strides = vec![1usize; cardinalities.len()];
        let mut total = 1usize;
        for i in (0..cardinalities.len()).rev() {
            strides[i] = total;
            total = total
                .checked_mul(cardinalities[i])
                .ok_or(Error::SpaceOverflow)?;
        }
        Ok(Self {
            cardinalities,
            strides,
            total,
        })
    }

    /// `n` vertices with `k` sub-actions each.
    pub fn uniform(n: usize, k: usize) -> Result<Self> {
        Self::new(vec![k; n])
    }

    pub fn cardinalities(&self) -> &[usize] {
        &self.cardinalities
    }

    pub fn n_vertices(&self) -> usize {
        self.cardinalities.len()
    }

    pub fn total_size(&self) -> usize {
        self.total
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn check_tuple(&self, a: &[usize]) -> Result<()> {
        if a.len() != self.n_vertices() {
            return Err(Error::InvalidAction(format!(
                "tuple has {} entries, space has {} vertices",
                a.len(),
                self.n_vertices()
            )));
        }
        for (i, (&x, &c)) in a.iter().zip(&self.cardinalities).enumerate() {
            if x >= c {
                return Err(Error::InvalidAction(format!(
                    "sub-action {x} of vertex {i} exceeds cardinality {c}"
                )));
            }
        }
        Ok(())
    }

    pub fn tuple_to_flat(&self, a: &[usize]) -> Result<usize> {
        self.check_tuple(a)?;
        Ok(a.iter().zip(&self.strides).map(|(x, s)| x * s).sum())
    }

    pub fn flat_to_tuple(&self, index: usize) -> Result<Vec<usize>> {
        if index >= self.total {
            return Err(Error::InvalidIndex {
                index,
                size: self.total,
            });
        }
        let mut out = vec![0; self.n_vertices()];
        self.decode_into(index, &mut out);
        Ok(out)
    }

    /// Decodes without range checks; `out` must have `n_vertices` entries.
    pub(crate) fn decode_into(&self, mut index: usize, out: &mut [usize]) {
        for ((o, &s), &c) in out.iter_mut().zip(&self.strides).zip(&self.cardinalities) {
            *o = (index / s) % c;
            index %= s;
        }
    }

    /// All tuples in flat-index order.
    pub fn enumerate(&self) -> ActionIter<'_> {
        ActionIter {
            space: self,
            next: Some(vec![0; self.n_vertices()]),
        }
    }
}

impl TryFrom<Vec<usize>> for ActionSpace {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ActionSpace> for Vec<usize> {
    fn from(s: ActionSpace) -> Self {
        s.cardinalities
    }
}

/// Odometer over the tuples of a space.
pub struct ActionIter<'a> {
    space: &'a ActionSpace,
    next: Option<Vec<usize>>,
}

impl Iterator for ActionIter<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.space.cardinalities[i] {
                self.next = Some(succ);
                return Some(current);
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lex_enumeration(card: &[usize]) -> Vec<Vec<usize>> {
        // independent nested enumeration
        let mut out: Vec<Vec<usize>> = vec![vec![]];
        for &c in card {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..c).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn tuple_to_flat_examples() {
        let s = ActionSpace::new(vec![3, 3, 2]).unwrap();
        assert_eq!(s.tuple_to_flat(&[0, 0, 0]).unwrap(), 0);
        let all = lex_enumeration(&[3, 3, 2]);
        let pos = all.iter().position(|t| t == &[2, 2, 1]).unwrap();
        assert_eq!(pos, 17);
        assert_eq!(s.tuple_to_flat(&[2, 2, 1]).unwrap(), 17);
        assert_eq!(ActionSpace::uniform(6, 5).unwrap().total_size(), 15625);
    }

    #[test]
    fn flat_to_tuple_examples() {
        let s = ActionSpace::new(vec![3, 3, 2]).unwrap();
        assert_eq!(s.flat_to_tuple(0).unwrap(), vec![0, 0, 0]);
        assert_eq!(s.total_size(), 18);
        for t in lex_enumeration(&[3, 3, 2]) {
            assert_eq!(s.flat_to_tuple(s.tuple_to_flat(&t).unwrap()).unwrap(), t);
        }
    }

    #[test]
    fn enumerate_examples() {
        let s = ActionSpace::new(vec![2]).unwrap();
        assert_eq!(s.enumerate().collect::<Vec<_>>(), vec![vec![0], vec![1]]);
        assert_eq!(
            ActionSpace::new(vec![5, 10, 20])
                .unwrap()
                .enumerate()
                .count(),
            1000
        );
        assert_eq!(ActionSpace::uniform(3, 5).unwrap().enumerate().count(), 125);
    }

    #[test]
    fn errors() {
        let s = ActionSpace::new(vec![3, 3, 2]).unwrap();
        assert!(matches!(
            s.tuple_to_flat(&[0, 3, 0]),
            Err(Error::InvalidAction(_))
        ));
        assert!(matches!(
            s.tuple_to_flat(&[0, 0]),
            Err(Error::InvalidAction(_))
        ));
        assert!(matches!(
            s.flat_to_tuple(18),
            Err(Error::InvalidIndex { .. })
        ));
        assert!(matches!(ActionSpace::new(vec![]), Err(Error::EmptySpace)));
        assert!(matches!(
            ActionSpace::new(vec![2, 0]),
            Err(Error::EmptySubActionSet { vertex: 1 })
        ));
        assert!(matches!(
            ActionSpace::new(vec![usize::MAX, 2]),
            Err(Error::SpaceOverflow)
        ));
    }

    #[test]
    fn serde_as_integer_list() {
        let s = ActionSpace::new(vec![3, 3, 2]).unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), "[3,3,2]");
        let back: ActionSpace = serde_json::from_str("[3,3,2]").unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<ActionSpace>("[3,0]").is_err());
    }

    proptest! {
        #[test]
        fn bijection_and_order(card in prop::collection::vec(1usize..=6, 1..=6)) {
            let s = ActionSpace::new(card.clone()).unwrap();
            let lex = lex_enumeration(&card);
            prop_assert_eq!(lex.len(), s.total_size());
            let enumerated: Vec<_> = s.enumerate().collect();
            prop_assert_eq!(&enumerated, &lex);
            for (i, t) in lex.iter().enumerate() {
                prop_assert_eq!(s.tuple_to_flat(t).unwrap(), i);
                prop_assert_eq!(&s.flat_to_tuple(i).unwrap(), t);
            }
        }
    }
}
