//! Strategy spaces, product spaces and profile indexing.
//!
//! A [`StrategySpace`] is one player's finite strategy set: either a list of
//! abstract labels (discrete metric) or the lattice points of a real box with
//! uniform mesh `h` (sup-norm metric of the embedding). A [`ProductSpace`]
//! flattens tuples of strategy indices lexicographically, the first factor
//! being the most significant digit.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

const COUNT_SLACK: f64 = 1e-9;

/// Lattice `box ∩ (h·Z^d + lower)` listed in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Grid {
    lower: Vec<f64>,
    upper: Vec<f64>,
    mesh: f64,
    counts: Vec<usize>,
}

impl Grid {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>, mesh: f64) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::InvalidSpace(format!(
                "box needs matching nonempty bounds, got {} lower and {} upper",
                lower.len(),
                upper.len()
            )));
        }
        if !(mesh.is_finite() && mesh > 0.0) {
            return Err(Error::InvalidSpace(format!("mesh must be positive, got {mesh}")));
        }
        let mut counts = Vec::with_capacity(lower.len());
        for (d, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite()) || hi < lo {
                return Err(Error::InvalidSpace(format!(
                    "dimension {d}: bounds [{lo}, {hi}] are not a closed interval"
                )));
            }
            let steps = libm::floor((hi - lo) / mesh + COUNT_SLACK);
            counts.push(steps as usize + 1);
        }
        Ok(Grid {
            lower,
            upper,
            mesh,
            counts,
        })
    }

    pub fn dim(&self) -> usize {
        self.counts.len()
    }

    pub fn mesh(&self) -> f64 {
        self.mesh
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// Number of lattice points along each dimension.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Per-dimension lattice indices of a point.
    pub fn lattice(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.dim()];
        for d in (0..self.dim()).rev() {
            out[d] = idx % self.counts[d];
            idx /= self.counts[d];
        }
        out
    }

    pub fn index_of_lattice(&self, lattice: &[usize]) -> usize {
        lattice
            .iter()
            .zip(&self.counts)
            .fold(0, |acc, (&k, &n)| acc * n + k)
    }

    pub fn coords(&self, idx: usize) -> Vec<f64> {
        self.lattice(idx)
            .iter()
            .zip(&self.lower)
            .map(|(&k, &lo)| lo + k as f64 * self.mesh)
            .collect()
    }

    /// Nearest lattice point, ties resolved toward the smaller index.
    pub fn nearest(&self, coords: &[f64]) -> usize {
        let lattice: Vec<usize> = coords
            .iter()
            .zip(&self.lower)
            .zip(&self.counts)
            .map(|((&c, &lo), &n)| round_half_down((c - lo) / self.mesh).clamp(0, n as i64 - 1) as usize)
            .collect();
        self.index_of_lattice(&lattice)
    }
}

/// Rounds to the nearest integer, exact halves going down.
pub(crate) fn round_half_down(v: f64) -> i64 {
    let up = libm::ceil(v - 0.5);
    up as i64
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SpaceKind {
    Abstract { labels: Vec<String> },
    Grid(Grid),
}

/// One player's finite strategy set.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct StrategySpace {
    player: usize,
    kind: SpaceKind,
}

impl StrategySpace {
    pub fn labels<S: Into<String>>(player: usize, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidSpace(format!("player {player} has no strategies")));
        }
        for (k, l) in labels.iter().enumerate() {
            if labels[..k].contains(l) {
                return Err(Error::InvalidSpace(format!("player {player}: duplicate label {l:?}")));
            }
        }
        Ok(StrategySpace {
            player,
            kind: SpaceKind::Abstract { labels },
        })
    }

    pub fn grid(player: usize, lower: Vec<f64>, upper: Vec<f64>, mesh: f64) -> Result<Self> {
        Ok(StrategySpace {
            player,
            kind: SpaceKind::Grid(Grid::new(lower, upper, mesh)?),
        })
    }

    /// A one-dimensional grid `lower, lower + mesh, ..., <= upper`.
    pub fn interval(player: usize, lower: f64, upper: f64, mesh: f64) -> Result<Self> {
        Self::grid(player, vec![lower], vec![upper], mesh)
    }

    pub fn player(&self) -> usize {
        self.player
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    pub fn as_grid(&self) -> Option<&Grid> {
        match &self.kind {
            SpaceKind::Grid(g) => Some(g),
            SpaceKind::Abstract { .. } => None,
        }
    }

    pub fn is_grid(&self) -> bool {
        self.as_grid().is_some()
    }

    pub fn mesh(&self) -> Option<f64> {
        self.as_grid().map(Grid::mesh)
    }

    pub fn len(&self) -> usize {
        match &self.kind {
            SpaceKind::Abstract { labels } => labels.len(),
            SpaceKind::Grid(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Embedding dimension (0 for abstract spaces).
    pub fn dim(&self) -> usize {
        self.as_grid().map_or(0, Grid::dim)
    }

    pub fn label(&self, idx: usize) -> String {
        match &self.kind {
            SpaceKind::Abstract { labels } => labels[idx].clone(),
            SpaceKind::Grid(g) => {
                let c = g.coords(idx);
                if c.len() == 1 {
                    format!("{}", c[0])
                } else {
                    format!("{c:?}")
                }
            }
        }
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        match &self.kind {
            SpaceKind::Abstract { labels } => labels.iter().position(|l| l == label),
            SpaceKind::Grid(_) => None,
        }
    }

    /// Sup-norm distance of the embedding, or the discrete metric.
    pub fn distance(&self, a: usize, b: usize) -> f64 {
        match &self.kind {
            SpaceKind::Abstract { .. } => {
                if a == b {
                    0.0
                } else {
                    1.0
                }
            }
            SpaceKind::Grid(g) => {
                let la = g.lattice(a);
                let lb = g.lattice(b);
                let steps = la.iter().zip(&lb).map(|(&p, &q)| p.abs_diff(q)).max().unwrap_or(0);
                steps as f64 * g.mesh
            }
        }
    }

    /// Chebyshev ball of `radius` mesh steps clipped to the box; `{idx}` on
    /// abstract spaces. Always contains `idx`, sorted ascending.
    pub fn neighbors(&self, idx: usize, radius: usize) -> Vec<usize> {
        let g = match &self.kind {
            SpaceKind::Abstract { .. } => return vec![idx],
            SpaceKind::Grid(g) => g,
        };
        let center = g.lattice(idx);
        let ranges: Vec<(usize, usize)> = center
            .iter()
            .zip(g.counts())
            .map(|(&c, &n)| (c.saturating_sub(radius), (c + radius).min(n - 1)))
            .collect();
        let mut out = Vec::new();
        let mut cur: Vec<usize> = ranges.iter().map(|r| r.0).collect();
        loop {
            out.push(g.index_of_lattice(&cur));
            let mut d = cur.len();
            loop {
                if d == 0 {
                    return out;
                }
                d -= 1;
                if cur[d] < ranges[d].1 {
                    cur[d] += 1;
                    break;
                }
                cur[d] = ranges[d].0;
            }
        }
    }
}

/// A strategy profile: one strategy index per factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct Profile(pub Vec<usize>);

impl Profile {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for Profile {
    fn from(v: Vec<usize>) -> Self {
        Profile(v)
    }
}

impl<const N: usize> From<[usize; N]> for Profile {
    fn from(v: [usize; N]) -> Self {
        Profile(v.to_vec())
    }
}

/// Cartesian product of strategy spaces with lexicographic flattening.
///
/// The empty product has exactly one (empty) profile; this is `X_{-i}` of a
/// one-player game.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ProductSpace {
    factors: Vec<StrategySpace>,
    #[cfg_attr(feature = "serde", serde(skip))]
    strides: Vec<usize>,
    #[cfg_attr(feature = "serde", serde(skip))]
    len: usize,
}

impl ProductSpace {
    pub fn new(factors: Vec<StrategySpace>) -> Self {
        let mut strides = vec![1; factors.len()];
        for k in (0..factors.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * factors[k + 1].len();
        }
        let len = factors.iter().map(StrategySpace::len).product();
        ProductSpace {
            factors,
            strides,
            len,
        }
    }

    pub fn single(space: StrategySpace) -> Self {
        Self::new(vec![space])
    }

    pub fn factors(&self) -> &[StrategySpace] {
        &self.factors
    }

    pub fn factor(&self, k: usize) -> &StrategySpace {
        &self.factors[k]
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cardinalities(&self) -> Vec<usize> {
        self.factors.iter().map(StrategySpace::len).collect()
    }

    pub fn is_grid(&self) -> bool {
        self.factors.iter().all(StrategySpace::is_grid)
    }

    pub fn has_grid_factor(&self) -> bool {
        self.factors.iter().any(StrategySpace::is_grid)
    }

    pub fn max_mesh(&self) -> Option<f64> {
        self.factors.iter().filter_map(StrategySpace::mesh).reduce(f64::max)
    }

    pub fn min_mesh(&self) -> Option<f64> {
        self.factors.iter().filter_map(StrategySpace::mesh).reduce(f64::min)
    }

    pub fn check(&self, coords: &[usize]) -> Result<()> {
        if coords.len() != self.factors.len() {
            return Err(Error::InvalidProfile(format!(
                "expected {} coordinates, got {}",
                self.factors.len(),
                coords.len()
            )));
        }
        for (k, (&c, f)) in coords.iter().zip(&self.factors).enumerate() {
            if c >= f.len() {
                return Err(Error::InvalidProfile(format!(
                    "coordinate {k} is {c} but the space has {} points",
                    f.len()
                )));
            }
        }
        Ok(())
    }

    pub fn flatten(&self, coords: &[usize]) -> Result<usize> {
        self.check(coords)?;
        Ok(self.flatten_unchecked(coords))
    }

    pub(crate) fn flatten_unchecked(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(&c, &s)| c * s).sum()
    }

    pub fn unflatten(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for k in (0..self.factors.len()).rev() {
            let n = self.factors[k].len();
            out[k] = idx % n;
            idx /= n;
        }
        out
    }

    pub fn profile(&self, idx: usize) -> Profile {
        Profile(self.unflatten(idx))
    }

    /// Coordinate of factor `k` in the flat index `idx`.
    pub fn coord(&self, idx: usize, k: usize) -> usize {
        (idx / self.strides[k]) % self.factors[k].len()
    }

    /// `X_{-i}`: the product of all factors except `i`.
    pub fn without(&self, i: usize) -> ProductSpace {
        let factors = self
            .factors
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, f)| f.clone())
            .collect();
        ProductSpace::new(factors)
    }

    /// Splits a flat profile into the flat index of `x_{-i}` and `x_i`.
    pub fn split(&self, idx: usize, i: usize) -> (usize, usize) {
        let xi = self.coord(idx, i);
        let high = idx / (self.strides[i] * self.factors[i].len());
        let low = idx % self.strides[i];
        (high * self.strides[i] + low, xi)
    }

    /// Inverse of [`split`](Self::split).
    pub fn join(&self, i: usize, minus: usize, xi: usize) -> usize {
        let high = minus / self.strides[i];
        let low = minus % self.strides[i];
        (high * self.factors[i].len() + xi) * self.strides[i] + low
    }

    /// Product of the factor metrics under the max norm.
    pub fn distance(&self, a: usize, b: usize) -> f64 {
        self.factors
            .iter()
            .enumerate()
            .map(|(k, f)| f.distance(self.coord(a, k), self.coord(b, k)))
            .fold(0.0, f64::max)
    }

    /// Product of the factor neighborhoods, ascending.
    pub fn neighbors(&self, idx: usize, radius: usize) -> Vec<usize> {
        let mut out = vec![0usize];
        for (k, f) in self.factors.iter().enumerate() {
            let local = f.neighbors(self.coord(idx, k), radius);
            let mut next = Vec::with_capacity(out.len() * local.len());
            for &base in &out {
                for &c in &local {
                    next.push(base + c * self.strides[k]);
                }
            }
            out = next;
        }
        out
    }

    /// Concatenated lattice indices of every factor (grid factors only).
    pub fn lattice(&self, idx: usize) -> Option<Vec<i64>> {
        let mut out = Vec::new();
        for (k, f) in self.factors.iter().enumerate() {
            let g = f.as_grid()?;
            out.extend(g.lattice(self.coord(idx, k)).into_iter().map(|v| v as i64));
        }
        Some(out)
    }

    /// Concatenated real coordinates of every factor (grid factors only).
    pub fn embedding(&self, idx: usize) -> Option<Vec<f64>> {
        let mut out = Vec::new();
        for (k, f) in self.factors.iter().enumerate() {
            out.extend(f.as_grid()?.coords(self.coord(idx, k)));
        }
        Some(out)
    }

    /// Total embedding dimension.
    pub fn dim(&self) -> usize {
        self.factors.iter().map(StrategySpace::dim).sum()
    }

    /// Number of lattice points along each embedding axis.
    pub fn axis_counts(&self) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        for f in &self.factors {
            out.extend_from_slice(f.as_grid()?.counts());
        }
        Some(out)
    }

    /// Flat index of a concatenated lattice vector, or `None` if outside.
    pub fn index_of_lattice(&self, lattice: &[i64]) -> Option<usize> {
        let mut idx = 0;
        let mut off = 0;
        for f in &self.factors {
            let g = f.as_grid()?;
            let d = g.dim();
            let part = &lattice[off..off + d];
            let mut local = Vec::with_capacity(d);
            for (&v, &n) in part.iter().zip(g.counts()) {
                if v < 0 || v as usize >= n {
                    return None;
                }
                local.push(v as usize);
            }
            idx = idx * f.len() + g.index_of_lattice(&local);
            off += d;
        }
        Some(idx)
    }

    pub fn describe(&self, idx: usize) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .enumerate()
            .map(|(k, f)| f.label(self.coord(idx, k)))
            .collect();
        format!("({})", parts.join(", "))
    }

    pub fn iter(&self) -> core::ops::Range<usize> {
        0..self.len
    }
}
