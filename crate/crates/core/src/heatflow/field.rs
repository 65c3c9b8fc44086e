use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Graph on which the heat flows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelVariant {
    /// Off-diagonal cells of the `(n+1)²` grid; each subdiagonal cell
    /// `(j+1, j)` is wired to its transpose `(j, j+1)` across the diagonal.
    FullGridCrossDiagonal,
    /// Full `(n+1)²` grid with the diagonal pinned at 1/2.
    GridHotDiagonal,
    /// Closed lower triangle `i ≥ j` with the diagonal pinned at 1/2.
    TriangleHotBoundary,
    /// Four mirror images of the triangle, hot on the whole boundary.
    DiamondHotBoundary,
    /// Sublevels `k = 0..=depth` of the half-plane below an infinite hot
    /// diagonal.
    SemiInfinite { depth: usize },
}

impl ModelVariant {
    pub fn name(&self) -> &'static str {
        match self {
            ModelVariant::FullGridCrossDiagonal => "full-grid",
            ModelVariant::GridHotDiagonal => "grid",
            ModelVariant::TriangleHotBoundary => "triangle",
            ModelVariant::DiamondHotBoundary => "diamond",
            ModelVariant::SemiInfinite { .. } => "semi-infinite",
        }
    }

    /// Default truncation for a `t`-step semi-infinite run; exact because
    /// the heat front moves one sublevel per step.
    pub fn semi_infinite_for(t: usize) -> Self {
        ModelVariant::SemiInfinite { depth: t + 1 }
    }
}

impl fmt::Display for ModelVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type Cell = (i64, i64);

#[derive(Debug)]
struct Topology {
    coords: Vec<Cell>,
    index: BTreeMap<Cell, usize>,
    /// Neighbour indices, repeated for multi-edges.
    neighbours: Vec<Vec<usize>>,
    /// Ghost neighbours held at temperature 0.
    cold: Vec<usize>,
    pinned: Vec<bool>,
}

impl Topology {
    fn from_cells(
        cells: Vec<(Cell, bool)>,
        adjacency: impl Fn(Cell, &BTreeMap<Cell, usize>) -> (Vec<usize>, usize),
    ) -> Self {
        let coords: Vec<Cell> = cells.iter().map(|(c, _)| *c).collect();
        let pinned: Vec<bool> = cells.iter().map(|(_, p)| *p).collect();
        let index: BTreeMap<Cell, usize> =
            coords.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let (neighbours, cold) = coords
            .iter()
            .zip(&pinned)
            .map(|(&c, &pin)| {
                if pin {
                    (Vec::new(), 0)
                } else {
                    adjacency(c, &index)
                }
            })
            .unzip();
        Topology {
            coords,
            index,
            neighbours,
            cold,
            pinned,
        }
    }

    fn grid_neighbours((i, j): Cell, index: &BTreeMap<Cell, usize>) -> Vec<usize> {
        [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)]
            .iter()
            .filter_map(|c| index.get(c).copied())
            .collect()
    }

    fn build(n: usize, variant: ModelVariant) -> Result<Self> {
        let m = n as i64 + 1;
        let square = || (1..=m).flat_map(move |i| (1..=m).map(move |j| (i, j)));
        let topo = match variant {
            ModelVariant::GridHotDiagonal => Topology::from_cells(
                square().map(|(i, j)| ((i, j), i == j)).collect(),
                |c, idx| (Topology::grid_neighbours(c, idx), 0),
            ),
            ModelVariant::TriangleHotBoundary => Topology::from_cells(
                square()
                    .filter(|(i, j)| i >= j)
                    .map(|(i, j)| ((i, j), i == j))
                    .collect(),
                |c, idx| (Topology::grid_neighbours(c, idx), 0),
            ),
            ModelVariant::FullGridCrossDiagonal => Topology::from_cells(
                square().map(|(i, j)| ((i, j), i == j)).collect(),
                |(i, j), idx| {
                    // diagonal cells carry no heat in this graph
                    let mut nb: Vec<usize> = [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)]
                        .iter()
                        .filter(|(a, b)| a != b)
                        .filter_map(|c| idx.get(c).copied())
                        .collect();
                    if (i - j).abs() == 1 {
                        nb.push(idx[&(j, i)]);
                    }
                    (nb, 0)
                },
            ),
            ModelVariant::DiamondHotBoundary => {
                // base triangle 1 ≤ j ≤ i ≤ m plus its images under
                // i ↦ 2m+1−i and j ↦ 1−j; centred odd coordinates
                // u = 2i−2m−1, v = 2j−1 make it |u|+|v| ≤ 2m
                let cells = (1..=2 * m)
                    .flat_map(|i| (1 - m..=m).map(move |j| (i, j)))
                    .filter_map(|(i, j)| {
                        let r = (2 * i - 2 * m - 1).abs() + (2 * j - 1).abs();
                        (r <= 2 * m).then_some(((i, j), r == 2 * m))
                    })
                    .collect();
                Topology::from_cells(cells, |c, idx| (Topology::grid_neighbours(c, idx), 0))
            }
            ModelVariant::SemiInfinite { depth } => {
                if depth < 1 {
                    return Err(Error::InvalidTruncation);
                }
                let depth = depth as i64;
                Topology::from_cells(
                    (0..=depth).map(|k| ((k, 0), k == 0)).collect(),
                    |(k, _), idx| {
                        let below = idx[&(k - 1, 0)];
                        match idx.get(&(k + 1, 0)) {
                            Some(&above) => (vec![below, below, above, above], 0),
                            None => (vec![below, below], 2),
                        }
                    },
                )
            }
        };
        Ok(topo)
    }
}

/// Snapshot of the `p_ij` values (or sublevel values) of one model at one
/// time step. Immutable; [`OrderField::step`] returns a new field.
#[derive(Clone)]
pub struct OrderField<S> {
    n: usize,
    variant: ModelVariant,
    topology: Arc<Topology>,
    values: Vec<S>,
}

const PARALLEL_CELLS: usize = 512;

impl<S: Scalar> OrderField<S> {
    /// `t = 0` state: 1 above the diagonal, 1/2 on it, 0 below; for the
    /// semi-infinite model 1/2 at sublevel 0 and 0 elsewhere.
    pub fn init(n: usize, variant: ModelVariant) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidN);
        }
        let topology = Arc::new(Topology::build(n, variant)?);
        let values = topology
            .coords
            .iter()
            .zip(&topology.pinned)
            .map(|(&(i, j), &pinned)| {
                if pinned {
                    S::half()
                } else if i < j && !matches!(variant, ModelVariant::SemiInfinite { .. }) {
                    S::one()
                } else {
                    S::zero()
                }
            })
            .collect();
        Ok(OrderField {
            n,
            variant,
            topology,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> ModelVariant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at `(i, j)` (1-based), or at `(k, 0)` for sublevel `k` of the
    /// semi-infinite model.
    pub fn get(&self, i: i64, j: i64) -> Option<&S> {
        self.topology.index.get(&(i, j)).map(|&k| &self.values[k])
    }

    /// Sublevel `k` of a semi-infinite field; zero beyond the truncation.
    pub fn sublevel(&self, k: usize) -> Result<S> {
        match self.variant {
            ModelVariant::SemiInfinite { .. } => {
                Ok(self.get(k as i64, 0).cloned().unwrap_or_else(S::zero))
            }
            other => Err(Error::UnsupportedVariant(other.name())),
        }
    }

    /// Cells in `(i, j)` order with their values.
    pub fn cells(&self) -> impl Iterator<Item = (Cell, &S)> {
        self.topology
            .index
            .iter()
            .map(move |(&c, &k)| (c, &self.values[k]))
    }

    pub fn is_pinned(&self, i: i64, j: i64) -> bool {
        self.topology
            .index
            .get(&(i, j))
            .is_some_and(|&k| self.topology.pinned[k])
    }

    /// One synchronous heat-flow step with conductivity `x`:
    /// `p' = p + x·Σ(p_nb − p)`, missing neighbours contributing nothing;
    /// pinned cells are reset to 1/2 afterwards.
    pub fn step(&self, x: &S) -> Result<Self> {
        let walk_n = match self.variant {
            ModelVariant::SemiInfinite { .. } => 0,
            _ => self.n,
        };
        S::check_conductivity(x, walk_n)?;
        let topo = &*self.topology;
        let update = |k: usize| -> S {
            if topo.pinned[k] {
                return S::half();
            }
            let v = &self.values[k];
            let nb = &topo.neighbours[k];
            if nb.is_empty() && topo.cold[k] == 0 {
                return v.clone();
            }
            let inflow = nb
                .iter()
                .fold(S::zero(), |acc, &q| acc.add(&self.values[q]));
            let degree = S::from_count(nb.len() + topo.cold[k]);
            let flux = inflow.sub(&degree.mul(v));
            v.add(&x.mul(&flux))
        };
        let values = if self.values.len() >= PARALLEL_CELLS {
            (0..self.values.len()).into_par_iter().map(update).collect()
        } else {
            (0..self.values.len()).map(update).collect()
        };
        Ok(OrderField {
            n: self.n,
            variant: self.variant,
            topology: Arc::clone(&self.topology),
            values,
        })
    }

    fn base_triangle_cells(&self) -> Result<impl Iterator<Item = (Cell, &S)>> {
        if let ModelVariant::SemiInfinite { .. } = self.variant {
            return Err(Error::UnsupportedVariant(self.variant.name()));
        }
        let m = self.n as i64 + 1;
        Ok(self
            .cells()
            .filter(move |&((i, j), _)| i > j && j >= 1 && i <= m))
    }

    /// `Σ_{i>j} p_ij` over the original triangle: the expected number of
    /// inversions at `x = 1/n`.
    pub fn subdiagonal_heat(&self) -> Result<S> {
        Ok(S::sum(self.base_triangle_cells()?.map(|(_, v)| v)))
    }

    /// `e = Σ_j p_{j+1,j}`, the first subdiagonal only.
    pub fn first_subdiagonal_sum(&self) -> Result<S> {
        Ok(S::sum(
            self.base_triangle_cells()?
                .filter(|&((i, j), _)| i == j + 1)
                .map(|(_, v)| v),
        ))
    }

    /// Sum over every cell of the field.
    pub fn total_heat(&self) -> S {
        S::sum(self.values.iter())
    }

    /// Lower closed triangle of a grid or diamond field as a
    /// [`ModelVariant::TriangleHotBoundary`] field.
    pub fn restrict_to_triangle(&self) -> Result<Self> {
        match self.variant {
            ModelVariant::SemiInfinite { .. } => {
                return Err(Error::UnsupportedVariant(self.variant.name()))
            }
            ModelVariant::TriangleHotBoundary => return Ok(self.clone()),
            _ => {}
        }
        let mut out = OrderField::init(self.n, ModelVariant::TriangleHotBoundary)?;
        for (k, c) in out.topology.coords.iter().enumerate() {
            if let Some(v) = self.get(c.0, c.1) {
                out.values[k] = v.clone();
            }
        }
        Ok(out)
    }

    /// Method-of-images unfolding of a triangle field onto the diamond:
    /// cell `(i, j)` of the diamond takes the value of its preimage under
    /// `σ_L(i, j) = (i, 1−j)` and `σ_B(i, j) = (2m+1−i, j)`.
    pub fn unfold_to_diamond(&self) -> Result<Self> {
        let triangle = self.restrict_to_triangle()?;
        let m = self.n as i64 + 1;
        let mut out = OrderField::init(self.n, ModelVariant::DiamondHotBoundary)?;
        for (k, &(i, j)) in out.topology.coords.iter().enumerate() {
            let i0 = if i > m { 2 * m + 1 - i } else { i };
            let j0 = if j < 1 { 1 - j } else { j };
            if let Some(v) = triangle.get(i0, j0) {
                out.values[k] = v.clone();
            }
        }
        Ok(out)
    }

    /// Whether a diamond field is invariant under both mirror reflections.
    pub fn is_mirror_symmetric(&self) -> bool {
        let m = self.n as i64 + 1;
        self.cells().all(|((i, j), v)| {
            self.get(i, 1 - j) == Some(v) && self.get(2 * m + 1 - i, j) == Some(v)
        })
    }

    /// CSV with header `i,j,value`; semi-infinite sublevels as `k,0,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,value\n");
        for ((i, j), v) in self.cells() {
            out.push_str(&format!("{i},{j},{}\n", v.dump()));
        }
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> OrderField<T> {
        OrderField {
            n: self.n,
            variant: self.variant,
            topology: Arc::clone(&self.topology),
            values: self.values.iter().map(f).collect(),
        }
    }
}

impl<S: Scalar> PartialEq for OrderField<S> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.variant == other.variant && self.values == other.values
    }
}

impl<S: Scalar> fmt::Debug for OrderField<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderField")
            .field("n", &self.n)
            .field("variant", &self.variant)
            .field("cells", &self.cells().collect::<Vec<_>>())
            .finish()
    }
}
