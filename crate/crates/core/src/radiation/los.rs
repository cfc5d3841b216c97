use crate::error::Result;
use crate::grid::{Cell, GridSpec};
use crate::occupancy::ObstacleGrid;

/// Integer Bresenham line from `a` to `b`, both endpoints included.
pub fn bresenham(a: Cell, b: Cell) -> Vec<Cell> {
    let mut out = Vec::new();
    walk(a, b, |c| {
        out.push(c);
        true
    });
    out
}

/// Visits the Bresenham cells from `a` to `b` until `visit` returns false.
/// Returns whether the walk completed.
fn walk(a: Cell, b: Cell, mut visit: impl FnMut(Cell) -> bool) -> bool {
    let (mut x, mut y) = (a.x as i64, a.y as i64);
    let (x1, y1) = (b.x as i64, b.y as i64);
    let dx = (x1 - x).abs();
    let dy = -(y1 - y).abs();
    let sx = if x < x1 { 1 } else { -1 };
    let sy = if y < y1 { 1 } else { -1 };
    let mut err = dx + dy;
    loop {
        if !visit(Cell::new(x as usize, y as usize)) {
            return false;
        }
        if x == x1 && y == y1 {
            return true;
        }
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x += sx;
        }
        if e2 <= dx {
            err += dx;
            y += sy;
        }
    }
}

/// Line-of-sight queries against one obstacle grid.
///
/// Rays are always traced from the lexicographically smaller cell `(x, y)`,
/// so visibility is symmetric. Endpoints never occlude. A summed-area table
/// answers the common case of an obstacle-free bounding box without tracing.
pub struct LineOfSight<'a> {
    obstacles: &'a ObstacleGrid,
    // (width + 1) x (height + 1) prefix sums of occupied cells.
    prefix: Vec<u32>,
}

impl<'a> LineOfSight<'a> {
    pub fn new(obstacles: &'a ObstacleGrid) -> Self {
        let spec = obstacles.spec();
        let w = spec.width + 1;
        let mut prefix = vec![0u32; w * (spec.height + 1)];
        for y in 0..spec.height {
            let mut row = 0u32;
            for x in 0..spec.width {
                row += u32::from(obstacles.is_occupied(Cell::new(x, y)));
                prefix[(y + 1) * w + x + 1] = prefix[y * w + x + 1] + row;
            }
        }
        Self { obstacles, prefix }
    }

    pub fn spec(&self) -> &GridSpec {
        self.obstacles.spec()
    }

    fn occupied_in_box(&self, a: Cell, b: Cell) -> u32 {
        let w = self.spec().width + 1;
        let (x0, x1) = (a.x.min(b.x), a.x.max(b.x) + 1);
        let (y0, y1) = (a.y.min(b.y), a.y.max(b.y) + 1);
        self.prefix[y1 * w + x1] + self.prefix[y0 * w + x0]
            - self.prefix[y0 * w + x1]
            - self.prefix[y1 * w + x0]
    }

    /// `true` when no strictly intermediate cell of the ray is occupied.
    /// Both cells must lie inside the grid.
    pub fn visible(&self, a: Cell, b: Cell) -> bool {
        let endpoints = u32::from(self.obstacles.is_occupied(a))
            + if a == b { 0 } else { u32::from(self.obstacles.is_occupied(b)) };
        if self.occupied_in_box(a, b) == endpoints {
            return true;
        }
        let (from, to) = if (a.x, a.y) <= (b.x, b.y) { (a, b) } else { (b, a) };
        walk(from, to, |c| c == from || c == to || !self.obstacles.is_occupied(c))
    }
}

/// Binary line of sight between two cells over the obstacle grid.
pub fn line_of_sight(spec: &GridSpec, obstacles: &ObstacleGrid, from: Cell, to: Cell) -> Result<bool> {
    spec.ensure_same(obstacles.spec())?;
    spec.ensure_contains(from)?;
    spec.ensure_contains(to)?;
    Ok(LineOfSight::new(obstacles).visible(from, to))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::grid::Grid;
    use proptest::prelude::*;

    fn grid(w: usize, h: usize, occupied: &[(usize, usize)]) -> (GridSpec, ObstacleGrid) {
        let spec = GridSpec::new([0.0, 0.0], 1.0, w, h).unwrap();
        let mut g = Grid::filled(spec, false);
        for &(x, y) in occupied {
            g[Cell::new(x, y)] = true;
        }
        (spec, ObstacleGrid::from_grid(g))
    }

    #[test]
    fn collinear_blocker() {
        let (spec, obs) = grid(6, 6, &[(2, 0)]);
        assert!(!line_of_sight(&spec, &obs, Cell::new(0, 0), Cell::new(4, 0)).unwrap());
    }

    #[test]
    fn clear_line() {
        let (spec, obs) = grid(6, 6, &[]);
        assert!(line_of_sight(&spec, &obs, Cell::new(0, 0), Cell::new(4, 0)).unwrap());
    }

    #[test]
    fn blocker_off_the_trace() {
        assert_eq!(
            bresenham(Cell::new(0, 0), Cell::new(5, 3)),
            [(0, 0), (1, 1), (2, 1), (3, 2), (4, 2), (5, 3)]
                .iter()
                .map(|&(x, y)| Cell::new(x, y))
                .collect::<Vec<_>>()
        );
        let (spec, obs) = grid(6, 6, &[(1, 3)]);
        assert!(line_of_sight(&spec, &obs, Cell::new(0, 0), Cell::new(5, 3)).unwrap());
        // ...but the bounding box is not empty, so this exercises the tracer.
        let (spec, obs) = grid(6, 6, &[(2, 1)]);
        assert!(!line_of_sight(&spec, &obs, Cell::new(0, 0), Cell::new(5, 3)).unwrap());
    }

    #[test]
    fn endpoints_do_not_occlude() {
        let (spec, obs) = grid(6, 6, &[(0, 0), (4, 0)]);
        assert!(line_of_sight(&spec, &obs, Cell::new(0, 0), Cell::new(4, 0)).unwrap());
        assert!(line_of_sight(&spec, &obs, Cell::new(0, 0), Cell::new(0, 0)).unwrap());
    }

    #[test]
    fn out_of_grid_is_domain_error() {
        let (spec, obs) = grid(4, 4, &[]);
        let err = line_of_sight(&spec, &obs, Cell::new(0, 0), Cell::new(4, 0)).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    proptest! {
        #[test]
        fn symmetric_and_matches_plain_trace(
            occupied in prop::collection::vec((0usize..12, 0usize..9), 0..25),
            a in (0usize..12, 0usize..9),
            b in (0usize..12, 0usize..9),
        ) {
            let (spec, obs) = grid(12, 9, &occupied);
            let (a, b) = (Cell::new(a.0, a.1), Cell::new(b.0, b.1));
            let ab = line_of_sight(&spec, &obs, a, b).unwrap();
            prop_assert_eq!(ab, line_of_sight(&spec, &obs, b, a).unwrap());
            let (s, t) = if (a.x, a.y) <= (b.x, b.y) { (a, b) } else { (b, a) };
            let traced = bresenham(s, t)
                .into_iter()
                .filter(|&c| c != s && c != t)
                .all(|c| !obs.is_occupied(c));
            prop_assert_eq!(ab, traced);
        }
    }
}
