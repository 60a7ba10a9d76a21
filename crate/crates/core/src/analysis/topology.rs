//! Grid analogues of interior, closure and semicontinuity.
//!
//! Neighborhoods are Chebyshev balls of `radius` mesh steps clipped to the
//! box, and `{x}` on abstract factors. Points outside the box are ignored, so
//! the faces of a box are interior to the full grid.

use alloc::vec::Vec;

use crate::correspondence::Correspondence;
use crate::error::{Error, Result};
use crate::space::ProductSpace;
use crate::subset::ProductSubset;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GridTopology {
    pub radius: usize,
}

impl Default for GridTopology {
    fn default() -> Self {
        GridTopology { radius: 1 }
    }
}

impl GridTopology {
    pub fn new(radius: usize) -> Self {
        GridTopology { radius }
    }
}

/// Outcome of a predicate, with a counterexample when it fails.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// `x` is a neighbor of `x_from`, `y ∈ T(x_from)` is the offending value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SemicontinuityWitness {
    pub x: usize,
    pub neighbor: usize,
    pub y: usize,
}

/// Erosion: points of `s` whose whole neighborhood lies in `s`.
pub fn interior_h(space: &ProductSpace, s: &ProductSubset, topo: GridTopology) -> ProductSubset {
    ProductSubset::from_fn(space.len(), |x| {
        s.contains(x) && space.neighbors(x, topo.radius).into_iter().all(|z| s.contains(z))
    })
}

/// Dilation: points with some neighbor in `s`.
pub fn closure_h(space: &ProductSpace, s: &ProductSubset, topo: GridTopology) -> ProductSubset {
    let mut out = ProductSubset::empty(space.len());
    for x in s.iter() {
        for z in space.neighbors(x, topo.radius) {
            out.insert(z);
        }
    }
    out
}

pub fn is_h_open(space: &ProductSpace, s: &ProductSubset, topo: GridTopology) -> bool {
    interior_h(space, s, topo) == *s
}

pub fn is_h_closed(space: &ProductSpace, s: &ProductSubset, topo: GridTopology) -> bool {
    is_h_open(space, &s.complement(), topo)
}

/// Neighbor values meet the neighborhood of every value:
/// `∀x, ∀x' ∈ N(x), ∀y ∈ T(x): T(x') ∩ N(y) ≠ ∅`.
pub fn is_h_lsc(t: &Correspondence, topo: GridTopology) -> Verdict<SemicontinuityWitness> {
    is_h_lsc_on(t, None, topo)
}

/// [`is_h_lsc`] for `T` restricted to the domain points in `mask`.
pub fn is_h_lsc_on(
    t: &Correspondence,
    mask: Option<&ProductSubset>,
    topo: GridTopology,
) -> Verdict<SemicontinuityWitness> {
    let inside = |z: usize| mask.is_none_or(|m| m.contains(z));
    let cod = t.codomain();
    let hoods: Vec<ProductSubset> = (0..cod.len())
        .map(|y| ProductSubset::from_indices(cod.len(), cod.neighbors(y, topo.radius)).expect("in range"))
        .collect();
    for x in t.domain().iter().filter(|&x| inside(x)) {
        for z in t.domain().neighbors(x, topo.radius) {
            if z == x || !inside(z) {
                continue;
            }
            for y in t.value(x).iter() {
                if !t.value(z).intersects(&hoods[y]) {
                    return Verdict::Fails(SemicontinuityWitness { x, neighbor: z, y });
                }
            }
        }
    }
    Verdict::Holds
}

/// Neighbor values stay inside the dilated value: `T(x') ⊆ closure_h(T(x))`.
/// The witness `y` is a point of `T(x')` outside the dilation.
pub fn is_h_usc(t: &Correspondence, topo: GridTopology) -> Verdict<SemicontinuityWitness> {
    let grown: Vec<ProductSubset> = t
        .values()
        .iter()
        .map(|v| closure_h(t.codomain(), v, topo))
        .collect();
    for x in t.domain().iter() {
        for z in t.domain().neighbors(x, topo.radius) {
            if let Some(y) = t.value(z).difference(&grown[x]).first() {
                return Verdict::Fails(SemicontinuityWitness { x, neighbor: z, y });
            }
        }
    }
    Verdict::Holds
}

/// `T2` on `W`, `T1` off `W`.
pub fn glue(t1: &Correspondence, t2: &Correspondence, w: &ProductSubset) -> Result<Correspondence> {
    if t1.domain() != t2.domain() || t1.codomain() != t2.codomain() {
        return Err(Error::Usage("glued correspondences must share domain and codomain".into()));
    }
    if w.universe() != t1.domain().len() {
        return Err(Error::SizeMismatch {
            what: "gluing set",
            expected: t1.domain().len(),
            found: w.universe(),
        });
    }
    Correspondence::from_fn(t1.domain().clone(), t1.codomain().clone(), |x| {
        if w.contains(x) {
            t2.value(x).clone()
        } else {
            t1.value(x).clone()
        }
    })
}

/// Nonempty values share a point across the radius-`r` ball. The witness is
/// the first `x` whose ball has an empty common value.
pub fn has_local_intersection_property(t: &Correspondence, topo: GridTopology) -> Verdict<usize> {
    has_local_intersection_on(t, None, topo)
}

/// Same property for `T` restricted to `mask`: only points of `mask` are
/// checked and only neighbors inside `mask` are intersected.
pub fn has_local_intersection_on(
    t: &Correspondence,
    mask: Option<&ProductSubset>,
    topo: GridTopology,
) -> Verdict<usize> {
    let inside = |z: usize| mask.is_none_or(|m| m.contains(z));
    for x in t.domain().iter() {
        if !inside(x) || t.value(x).is_empty() {
            continue;
        }
        let mut common = t.value(x).clone();
        for z in t.domain().neighbors(x, topo.radius) {
            if inside(z) {
                common = common.intersection(t.value(z));
            }
        }
        if common.is_empty() {
            return Verdict::Fails(x);
        }
    }
    Verdict::Holds
}

/// `∀(x, y)` with `y ∈ T(x)`, `∃x'` with `y ∈ interior_h(T(x'))`, the interior
/// taken in the codomain. The witness is the untransferable pair.
pub fn is_transfer_open_valued(t: &Correspondence, topo: GridTopology) -> Verdict<(usize, usize)> {
    let mut transferable = ProductSubset::empty(t.codomain().len());
    for v in t.values() {
        transferable = transferable.union(&interior_h(t.codomain(), v, topo));
    }
    for (x, y) in t.graph() {
        if !transferable.contains(y) {
            return Verdict::Fails((x, y));
        }
    }
    Verdict::Holds
}

/// Nonempty values and a transfer open-valued inverse.
pub fn has_transfer_open_inverse(s: &Correspondence, topo: GridTopology) -> bool {
    s.is_nonempty_valued() && is_transfer_open_valued(&s.inverse(), topo).holds()
}

/// The domain is covered by the interiors of the lower inverses.
pub fn inverse_interiors_cover(s: &Correspondence, topo: GridTopology) -> bool {
    let mut cover = ProductSubset::empty(s.domain().len());
    for y in s.codomain().iter() {
        let inv = s.lower_inverse(y).expect("codomain point");
        cover = cover.union(&interior_h(s.domain(), &inv, topo));
    }
    cover.is_full()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::StrategySpace;
    use alloc::vec;

    fn line(n: usize, h: f64) -> ProductSpace {
        ProductSpace::single(StrategySpace::interval(0, 0.0, (n - 1) as f64 * h, h).unwrap())
    }

    fn set(n: usize, m: impl IntoIterator<Item = usize>) -> ProductSubset {
        ProductSubset::from_indices(n, m).unwrap()
    }

    #[test]
    fn interior_examples() {
        let s = line(9, 0.25);
        let topo = GridTopology::default();
        assert!(interior_h(&s, &ProductSubset::full(9), topo).is_full());
        assert!(interior_h(&s, &set(9, [4]), topo).is_empty());
        // [0.5, 1.5] -> [0.75, 1.25]
        assert_eq!(interior_h(&s, &set(9, 2..=6), topo).to_vec(), vec![3, 4, 5]);
        assert_eq!(closure_h(&s, &set(9, 2..=6), topo).to_vec(), vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn connected_grid_only_has_trivial_open_sets() {
        let s = line(5, 1.0);
        let topo = GridTopology::default();
        assert!(is_h_open(&s, &ProductSubset::empty(5), topo));
        assert!(is_h_open(&s, &ProductSubset::full(5), topo));
        assert!(!is_h_open(&s, &set(5, 0..3), topo));
        assert!(!is_h_closed(&s, &set(5, 0..3), topo));
    }

    #[test]
    fn jump_breaks_lsc() {
        let s = line(5, 1.0);
        // T(x) = {0} except T(2) = {2}: a two-step jump.
        let t = Correspondence::from_fn(s.clone(), s.clone(), |x| set(5, [if x == 2 { 2 } else { 0 }])).unwrap();
        let v = is_h_lsc(&t, GridTopology::default());
        assert_eq!(v.witness(), Some(&SemicontinuityWitness { x: 1, neighbor: 2, y: 0 }));
        assert!(!is_h_usc(&t, GridTopology::default()).holds());
        let id = Correspondence::identity(s.clone());
        assert!(is_h_lsc(&id, GridTopology::default()).holds());
        assert!(is_h_usc(&id, GridTopology::default()).holds());
        let k = Correspondence::constant(s.clone(), s.clone(), set(5, [1, 3])).unwrap();
        assert!(is_h_lsc(&k, GridTopology::default()).holds());
        assert!(is_h_usc(&k, GridTopology::default()).holds());
    }

    #[test]
    fn glue_extremes() {
        let s = line(4, 1.0);
        let t1 = Correspondence::identity(s.clone());
        let t2 = Correspondence::constant(s.clone(), s.clone(), ProductSubset::full(4)).unwrap();
        assert_eq!(glue(&t1, &t2, &ProductSubset::empty(4)).unwrap(), t1);
        assert_eq!(glue(&t1, &t2, &ProductSubset::full(4)).unwrap(), t2);
        let g = glue(&t1, &t2, &set(4, [1])).unwrap();
        assert!(g.value(1).is_full());
        assert_eq!(g.value(2).to_vec(), vec![2]);
    }

    #[test]
    fn local_intersection() {
        let s = line(6, 1.0);
        let topo = GridTopology::default();
        let k = Correspondence::constant(s.clone(), s.clone(), set(6, [2])).unwrap();
        assert!(has_local_intersection_property(&k, topo).holds());
        let alt = Correspondence::from_fn(s.clone(), s.clone(), |x| set(6, [x % 2])).unwrap();
        assert_eq!(has_local_intersection_property(&alt, topo), Verdict::Fails(0));
        // A shared point 0 in every value.
        let shared = Correspondence::from_fn(s.clone(), s.clone(), |x| set(6, [0, x])).unwrap();
        assert!(has_local_intersection_property(&shared, topo).holds());
    }

    #[test]
    fn transfer_open() {
        let s = line(5, 1.0);
        let topo = GridTopology::default();
        let full = Correspondence::constant(s.clone(), s.clone(), ProductSubset::full(5)).unwrap();
        assert!(is_transfer_open_valued(&full, topo).holds());
        let single = Correspondence::identity(s.clone());
        assert_eq!(is_transfer_open_valued(&single, topo), Verdict::Fails((0, 0)));
        assert!(has_transfer_open_inverse(&full, topo));
        assert!(inverse_interiors_cover(&full, topo));
        assert!(!has_transfer_open_inverse(&single, topo));
        assert!(!inverse_interiors_cover(&single, topo));
    }
}
