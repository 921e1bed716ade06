//! Resistance to infinity in the tree of the 10/3 split construction.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoldenValues {
    /// From a degree-3 vertex along its edge to a degree-4 vertex.
    pub x: f64,
    /// From a degree-4 vertex along any one edge.
    pub y: f64,
    /// Whole-tree resistance from a degree-3 vertex.
    pub r3: f64,
    /// Whole-tree resistance from a degree-4 vertex.
    pub r4: f64,
    /// `(2 r3 + r4) / 3`: two degree-3 vertices per degree-4 vertex.
    pub avg: f64,
    pub iterations: usize,
}

/// Fixed point of `x = 1 + y/3`, `y = 1 + 1/(1/x + 1/(1 + x/2))`, iterated
/// from `(1, 1)`.
pub fn golden_recursion() -> GoldenValues {
    let (mut x, mut y) = (1.0f64, 1.0f64);
    let mut iterations = 0;
    while iterations < 10_000 {
        iterations += 1;
        let nx = 1.0 + y / 3.0;
        let ny = 1.0 + 1.0 / (1.0 / x + 1.0 / (1.0 + x / 2.0));
        let delta = (nx - x).abs().max((ny - y).abs());
        x = nx;
        y = ny;
        if delta < 1e-15 {
            break;
        }
    }
    // A degree-3 vertex sees two branches like the one behind x and its
    // split partner, which continues as a 1 + x/2 branch.
    let r3 = 1.0 / (2.0 / x + 1.0 / (1.0 + x / 2.0));
    let r4 = y / 4.0;
    GoldenValues {
        x,
        y,
        r3,
        r4,
        avg: (2.0 * r3 + r4) / 3.0,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let g = golden_recursion();
        let s5 = 5f64.sqrt();
        assert!((g.x - (1.0 + s5) / 2.0).abs() < 1e-12);
        assert!((g.y - (-3.0 + 3.0 * s5) / 2.0).abs() < 1e-12);
        assert!((g.r3 - s5 / 4.0).abs() < 1e-12);
        assert!((g.r4 - 0.4635254915).abs() < 1e-10);
        assert!((g.avg - (-3.0 + 7.0 * s5) / 24.0).abs() < 1e-12);
    }
}
