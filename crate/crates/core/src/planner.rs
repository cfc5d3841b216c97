//! Traversal cost map and minimum-cost grid search.
//!
//! Cells cost `1 + O β`, or are impassable where `O = 1`. Moves are
//! 8-connected; a move costs its length in cells (1 or √2) times the mean of
//! its two endpoint costs. Diagonal moves may not squeeze past an impassable
//! side cell.
//!
//! Path costs are accumulated exactly: cell costs are quantized to 1e-6 and
//! every total is kept as `a + b√2` with integer `a`, `b`. Two searches that
//! find different optimal paths therefore report bit-identical costs.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::grid::{Cell, Grid, GridSpec};
use crate::occupancy::OccupancyGrid;

const COST_SCALE: f64 = 1e6;

/// Per-cell traversal cost; `f64::INFINITY` marks impassable cells.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMap {
    cost: Grid<f64>,
    quantized: Vec<u64>,
}

impl CostMap {
    /// Wraps raw costs. Finite costs must be at least 1.
    pub fn from_grid(cost: Grid<f64>) -> Result<Self> {
        let quantized = cost
            .as_slice()
            .iter()
            .map(|&c| {
                if c == f64::INFINITY {
                    Ok(u64::MAX)
                } else if c >= 1.0 && c.is_finite() {
                    Ok((c * COST_SCALE).round() as u64)
                } else {
                    Err(Error::domain(format!("cell cost must be >= 1 or infinite, got {c}")))
                }
            })
            .collect::<Result<_>>()?;
        Ok(Self { cost, quantized })
    }

    pub fn spec(&self) -> &GridSpec {
        self.cost.spec()
    }

    pub fn grid(&self) -> &Grid<f64> {
        &self.cost
    }

    #[inline]
    pub fn at(&self, cell: Cell) -> f64 {
        self.cost[cell]
    }

    #[inline]
    pub fn is_passable(&self, cell: Cell) -> bool {
        self.quantized[self.spec().index(cell)] != u64::MAX
    }

    fn q(&self, idx: usize) -> u64 {
        self.quantized[idx]
    }
}

/// Applies `C = ∞` where `O = 1`, else `C = 1 + O β`.
pub fn make_cost_map(occ: &OccupancyGrid, beta: f64) -> Result<CostMap> {
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::domain(format!("beta must be finite and >= 0, got {beta}")));
    }
    CostMap::from_grid(occ.grid().map(|&o| if o >= 1.0 { f64::INFINITY } else { 1.0 + o * beta }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlannedPath {
    pub cells: Vec<Cell>,
    /// Cell centers (m).
    pub world_points: Vec<[f64; 2]>,
    pub total_cost: f64,
}

impl PlannedPath {
    /// Number of moves.
    pub fn moves(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    /// Geometric length in metres.
    pub fn length(&self) -> f64 {
        self.world_points
            .windows(2)
            .map(|w| (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1]))
            .sum()
    }

    /// Thermal exposure: `Σ step · (O[a] + O[b]) / 2` over the moves, the
    /// part of the path cost that `β` multiplies.
    pub fn exposure(&self, occ: &OccupancyGrid) -> f64 {
        self.cells
            .windows(2)
            .map(|w| step_length(w[0], w[1]) * (occ.at(w[0]) + occ.at(w[1])) / 2.0)
            .sum()
    }
}

fn step_length(a: Cell, b: Cell) -> f64 {
    if a.x != b.x && a.y != b.y {
        SQRT_2
    } else {
        1.0
    }
}

/// Exact path cost `(straight + diagonal √2) / (2 · COST_SCALE)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Lattice {
    straight: u64,
    diagonal: u64,
}

impl Lattice {
    fn add(self, o: Lattice) -> Lattice {
        Lattice {
            straight: self.straight + o.straight,
            diagonal: self.diagonal + o.diagonal,
        }
    }

    fn value(self) -> f64 {
        (self.straight as f64 + self.diagonal as f64 * SQRT_2) / (2.0 * COST_SCALE)
    }
}

impl Ord for Lattice {
    fn cmp(&self, o: &Self) -> Ordering {
        // sign of x + y√2
        let x = self.straight as i128 - o.straight as i128;
        let y = self.diagonal as i128 - o.diagonal as i128;
        match (x.signum(), y.signum()) {
            (0, 0) => Ordering::Equal,
            (sx, sy) if sx >= 0 && sy >= 0 => Ordering::Greater,
            (sx, sy) if sx <= 0 && sy <= 0 => Ordering::Less,
            _ => match (x.checked_mul(x), y.checked_mul(y).and_then(|v| v.checked_mul(2))) {
                (Some(x2), Some(y2)) => {
                    if x > 0 {
                        x2.cmp(&y2)
                    } else {
                        y2.cmp(&x2)
                    }
                }
                _ => (x as f64 + y as f64 * SQRT_2).total_cmp(&0.0),
            },
        }
    }
}

impl PartialOrd for Lattice {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Debug, PartialEq, Eq)]
struct Entry {
    f: Lattice,
    g: Lattice,
    idx: usize,
}

impl Ord for Entry {
    // BinaryHeap pops the greatest: smallest f, then largest g, then lowest index.
    fn cmp(&self, o: &Self) -> Ordering {
        o.f.cmp(&self.f)
            .then(self.g.cmp(&o.g))
            .then(o.idx.cmp(&self.idx))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

const NEIGHBORS: [(i64, i64); 8] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)];

fn search(cm: &CostMap, start: Cell, goal: Cell, heuristic: bool) -> Result<Option<PlannedPath>> {
    let spec = *cm.spec();
    for (name, c) in [("start", start), ("goal", goal)] {
        spec.ensure_contains(c)?;
        if !cm.is_passable(c) {
            return Err(Error::domain(format!("{name} cell ({}, {}) is impassable", c.x, c.y)));
        }
    }
    let (w, h) = (spec.width as i64, spec.height as i64);
    let unit = 2 * COST_SCALE as u64;
    let h_of = |idx: usize| -> Lattice {
        if !heuristic {
            return Lattice::default();
        }
        let c = spec.cell_of_index(idx);
        let dx = c.x.abs_diff(goal.x) as u64;
        let dy = c.y.abs_diff(goal.y) as u64;
        let (lo, hi) = (dx.min(dy), dx.max(dy));
        Lattice {
            straight: unit * (hi - lo),
            diagonal: unit * lo,
        }
    };

    let n = spec.len();
    let mut g: Vec<Option<Lattice>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut closed = vec![false; n];
    let mut open = BinaryHeap::new();
    let s = spec.index(start);
    let goal_idx = spec.index(goal);
    g[s] = Some(Lattice::default());
    open.push(Entry {
        f: h_of(s),
        g: Lattice::default(),
        idx: s,
    });

    while let Some(Entry { g: g_cur, idx, .. }) = open.pop() {
        if closed[idx] {
            continue;
        }
        closed[idx] = true;
        if idx == goal_idx {
            break;
        }
        let (x, y) = ((idx % spec.width) as i64, (idx / spec.width) as i64);
        let q_here = cm.q(idx);
        for (dx, dy) in NEIGHBORS {
            let (nx, ny) = (x + dx, y + dy);
            if nx < 0 || ny < 0 || nx >= w || ny >= h {
                continue;
            }
            let nidx = (ny * w + nx) as usize;
            if closed[nidx] || cm.q(nidx) == u64::MAX {
                continue;
            }
            let diagonal = dx != 0 && dy != 0;
            if diagonal {
                let side_a = (y * w + nx) as usize;
                let side_b = (ny * w + x) as usize;
                if cm.q(side_a) == u64::MAX || cm.q(side_b) == u64::MAX {
                    continue;
                }
            }
            let pair = q_here + cm.q(nidx);
            let step = if diagonal {
                Lattice { straight: 0, diagonal: pair }
            } else {
                Lattice { straight: pair, diagonal: 0 }
            };
            let tentative = g_cur.add(step);
            if g[nidx].map_or(true, |old| tentative < old) {
                g[nidx] = Some(tentative);
                parent[nidx] = idx;
                open.push(Entry {
                    f: tentative.add(h_of(nidx)),
                    g: tentative,
                    idx: nidx,
                });
            }
        }
    }

    let Some(total) = g[goal_idx].filter(|_| closed[goal_idx]) else {
        return Ok(None);
    };
    let mut cells = vec![goal];
    let mut cur = goal_idx;
    while cur != s {
        cur = parent[cur];
        cells.push(spec.cell_of_index(cur));
    }
    cells.reverse();
    let world_points = cells.iter().map(|&c| spec.cell_center(c)).collect();
    Ok(Some(PlannedPath {
        cells,
        world_points,
        total_cost: total.value(),
    }))
}

/// A* with the octile distance at unit cell cost as heuristic (admissible and
/// consistent since every cell costs at least 1). `None` when the goal is
/// unreachable. Ties on `f` prefer the deeper node, then row-major order.
pub fn astar(cm: &CostMap, start: Cell, goal: Cell) -> Result<Option<PlannedPath>> {
    search(cm, start, goal, true)
}

/// Uninformed variant of [`astar`], used to certify optimality.
pub fn dijkstra(cm: &CostMap, start: Cell, goal: Cell) -> Result<Option<PlannedPath>> {
    search(cm, start, goal, false)
}

/// Cost of an arbitrary 8-connected cell sequence under the planner's
/// edge model (not quantized).
pub fn path_cost(cm: &CostMap, cells: &[Cell]) -> f64 {
    cells
        .windows(2)
        .map(|w| step_length(w[0], w[1]) * (cm.at(w[0]) + cm.at(w[1])) / 2.0)
        .sum()
}
