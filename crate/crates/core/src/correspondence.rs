use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::space::ProductSpace;
use crate::subset::ProductSubset;

/// A total set-valued map between two finite product spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct Correspondence {
    domain: ProductSpace,
    codomain: ProductSpace,
    values: Vec<ProductSubset>,
}

impl Correspondence {
    pub fn new(domain: ProductSpace, codomain: ProductSpace, values: Vec<ProductSubset>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::SizeMismatch {
                what: "correspondence values",
                expected: domain.len(),
                found: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| v.universe() != codomain.len()) {
            return Err(Error::SizeMismatch {
                what: "correspondence value universe",
                expected: codomain.len(),
                found: v.universe(),
            });
        }
        Ok(Correspondence {
            domain,
            codomain,
            values,
        })
    }

    pub fn from_fn(
        domain: ProductSpace,
        codomain: ProductSpace,
        mut f: impl FnMut(usize) -> ProductSubset,
    ) -> Result<Self> {
        let values = domain.iter().map(&mut f).collect();
        Self::new(domain, codomain, values)
    }

    pub fn constant(domain: ProductSpace, codomain: ProductSpace, value: ProductSubset) -> Result<Self> {
        Self::from_fn(domain, codomain, |_| value.clone())
    }

    pub fn identity(space: ProductSpace) -> Self {
        let n = space.len();
        let values = (0..n)
            .map(|x| ProductSubset::from_indices(n, [x]).expect("in range"))
            .collect();
        Correspondence {
            domain: space.clone(),
            codomain: space,
            values,
        }
    }

    pub fn domain(&self) -> &ProductSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &ProductSpace {
        &self.codomain
    }

    pub fn value(&self, x: usize) -> &ProductSubset {
        &self.values[x]
    }

    pub fn values(&self) -> &[ProductSubset] {
        &self.values
    }

    pub fn is_nonempty_valued(&self) -> bool {
        self.values.iter().all(|v| !v.is_empty())
    }

    /// `T^{-1}(y) = {x : y ∈ T(x)}`.
    pub fn lower_inverse(&self, y: usize) -> Result<ProductSubset> {
        if y >= self.codomain.len() {
            return Err(Error::InvalidProfile(alloc::format!(
                "codomain point {y} outside a codomain of {}",
                self.codomain.len()
            )));
        }
        Ok(ProductSubset::from_fn(self.domain.len(), |x| self.values[x].contains(y)))
    }

    /// The inverse correspondence `y ↦ T^{-1}(y)`.
    pub fn inverse(&self) -> Correspondence {
        let mut values = alloc::vec![ProductSubset::empty(self.domain.len()); self.codomain.len()];
        for (x, v) in self.values.iter().enumerate() {
            for y in v.iter() {
                values[y].insert(x);
            }
        }
        Correspondence {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            values,
        }
    }

    /// `⋂_{x ∈ mask} T(x)`; the whole codomain for an empty mask.
    pub fn common_value(&self, mask: Option<&ProductSubset>) -> ProductSubset {
        let mut acc = ProductSubset::full(self.codomain.len());
        for (x, v) in self.values.iter().enumerate() {
            if mask.is_none_or(|m| m.contains(x)) {
                acc = acc.intersection(v);
            }
        }
        acc
    }

    /// Pairs `(x, y)` with `y ∈ T(x)`.
    pub fn graph(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.values
            .iter()
            .enumerate()
            .flat_map(|(x, v)| v.iter().map(move |y| (x, y)))
    }
}
