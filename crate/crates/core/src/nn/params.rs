use std::ops::Range;

use serde::{Deserialize, Serialize};

/// A named, contiguous region of a [`ParamStore`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSlice {
    pub name: String,
    pub offset: usize,
    pub len: usize,
}

impl ParamSlice {
    pub fn range(&self) -> Range<usize> {
        self.offset..self.offset + self.len
    }
}

/// Flat `f64` parameters partitioned into disjoint, exhaustive named slices.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamStore {
    values: Vec<f64>,
    slices: Vec<ParamSlice>,
}

impl ParamStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a slice holding `values`; returns its range.
    pub fn push(&mut self, name: impl Into<String>, values: Vec<f64>) -> Range<usize> {
        let slice = ParamSlice {
            name: name.into(),
            offset: self.values.len(),
            len: values.len(),
        };
        let range = slice.range();
        self.values.extend(values);
        self.slices.push(slice);
        range
    }

    pub fn from_parts(values: Vec<f64>, slices: Vec<ParamSlice>) -> Option<Self> {
        let mut expect = 0;
        for s in &slices {
            if s.offset != expect {
                return None;
            }
            expect += s.len;
        }
        (expect == values.len()).then_some(Self { values, slices })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn slices(&self) -> &[ParamSlice] {
        &self.slices
    }

    pub fn get(&self, name: &str) -> Option<&[f64]> {
        self.slices
            .iter()
            .find(|s| s.name == name)
            .map(|s| &self.values[s.range()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slices_are_contiguous() {
        let mut s = ParamStore::new();
        assert_eq!(s.push("a", vec![1.0, 2.0]), 0..2);
        assert_eq!(s.push("b", vec![]), 2..2);
        assert_eq!(s.push("c", vec![3.0]), 2..3);
        assert_eq!(s.get("c"), Some(&[3.0][..]));
        assert_eq!(s.len(), 3);
        let rebuilt = ParamStore::from_parts(s.values().to_vec(), s.slices().to_vec()).unwrap();
        assert_eq!(rebuilt, s);
        let mut broken = s.slices().to_vec();
        broken[2].offset = 1;
        assert!(ParamStore::from_parts(s.values().to_vec(), broken).is_none());
    }
}
