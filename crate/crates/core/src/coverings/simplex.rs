//! Exact face check showing that S'_10 + L'_7 covers R^3.
//!
//! The upper face x + y + z = 10 of the real tetrahedron is cut into 100 unit
//! triangles. A translate by v = (r, s, t) meets the face in the triangle
//! x >= r, y >= s, z >= t; the check asks that every unit triangle lie in the
//! radius-9 translate of some listed lattice vector.

use serde::{Deserialize, Serialize};

use crate::lattices::Lattice;

pub const FACE_LEVEL: i64 = 10;
const SHRUNK_RADIUS: i64 = 9;

pub fn l7_generators() -> [[i64; 3]; 3] {
    [[-2, 2, 2], [3, -3, 3], [4, 3, -1]]
}

/// Coefficients of v_1, v_2, v_3 for each of v_1 .. v_14.
pub fn l7_combinations() -> [[i64; 3]; 14] {
    [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [-1, 0, 1],
        [-1, 1, 0],
        [0, -1, 1],
        [1, 0, 1],
        [1, 1, 0],
        [2, 1, 0],
        [-1, -1, 1],
        [2, -1, 0],
        [2, 1, -1],
        [1, -1, 1],
        [-2, 0, 1],
    ]
}

/// The listed translate vectors v_1 .. v_14.
pub fn l7_translates() -> [[i64; 3]; 14] {
    [
        [-2, 2, 2],
        [3, -3, 3],
        [4, 3, -1],
        [6, 1, -3],
        [5, -5, 1],
        [1, 6, -4],
        [2, 5, 1],
        [1, -1, 5],
        [-1, 1, 7],
        [3, 4, -6],
        [-7, 7, 1],
        [-5, -2, 8],
        [-1, 8, -2],
        [8, -1, -5],
    ]
}

/// A unit triangle of the face in (x, y) coordinates, z = 10 - x - y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceCell {
    pub i: i64,
    pub j: i64,
    pub up: bool,
}

impl FaceCell {
    pub fn vertices(&self) -> [(i64, i64); 3] {
        let (i, j) = (self.i, self.j);
        if self.up {
            [(i, j), (i + 1, j), (i, j + 1)]
        } else {
            [(i + 1, j), (i, j + 1), (i + 1, j + 1)]
        }
    }

    pub fn all(level: i64) -> Vec<FaceCell> {
        let mut out = Vec::new();
        for i in 0..level {
            for j in 0..level - i {
                out.push(FaceCell { i, j, up: true });
                if i + j < level - 1 {
                    out.push(FaceCell { i, j, up: false });
                }
            }
        }
        out
    }
}

fn inside(v: &[i64; 3], (x, y): (i64, i64), level: i64, radius: i64) -> bool {
    let z = level - x - y;
    let slack = (x - v[0]) + (y - v[1]) + (z - v[2]);
    x >= v[0] && y >= v[1] && z >= v[2] && slack <= radius
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCoverage {
    /// Each cell with the 1-based labels of the translates containing it.
    pub labels: Vec<(FaceCell, Vec<usize>)>,
}

impl FaceCoverage {
    pub fn first_uncovered(&self) -> Option<FaceCell> {
        self.labels.iter().find(|(_, l)| l.is_empty()).map(|(c, _)| *c)
    }
}

pub fn face_coverage(vectors: &[[i64; 3]]) -> FaceCoverage {
    let labels = FaceCell::all(FACE_LEVEL)
        .into_iter()
        .map(|c| {
            let hits = vectors
                .iter()
                .enumerate()
                .filter(|(_, v)| c.vertices().iter().all(|&p| inside(v, p, FACE_LEVEL, SHRUNK_RADIUS)))
                .map(|(i, _)| i + 1)
                .collect();
            (c, hits)
        })
        .collect();
    FaceCoverage { labels }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexCoverCheck {
    pub combinations_hold: bool,
    pub members: bool,
    pub sums_in_range: bool,
    pub uncovered: Option<FaceCell>,
}

impl SimplexCoverCheck {
    pub fn passed(&self) -> bool {
        self.combinations_hold && self.members && self.sums_in_range && self.uncovered.is_none()
    }
}

/// Run the three checks for the lattice spanned by `generators`, with the
/// given translate vectors and their claimed combinations.
pub fn verify_simplex_cover(
    generators: [[i64; 3]; 3],
    vectors: &[[i64; 3]],
    combos: &[[i64; 3]],
) -> SimplexCoverCheck {
    let lattice = Lattice::from_rows(&generators).ok();
    let combinations_hold = vectors.len() == combos.len()
        && vectors.iter().zip(combos).all(|(v, c)| {
            (0..3).all(|j| (0..3).map(|i| c[i] * generators[i][j]).sum::<i64>() == v[j])
        });
    let members = lattice
        .as_ref()
        .is_some_and(|l| vectors.iter().all(|v| l.contains(v).unwrap_or(false)));
    let sums_in_range = vectors.iter().all(|v| (1..=8).contains(&v.iter().sum::<i64>()));
    let uncovered = face_coverage(vectors).first_uncovered();
    SimplexCoverCheck { combinations_hold, members, sums_in_range, uncovered }
}

pub fn verify_simplex_cover_l7() -> bool {
    verify_simplex_cover(l7_generators(), &l7_translates(), &l7_combinations()).passed()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_count() {
        let cells = FaceCell::all(FACE_LEVEL);
        assert_eq!(cells.len(), 100);
        assert_eq!(cells.iter().filter(|c| c.up).count(), 55);
    }

    #[test]
    fn proposition_holds() {
        assert!(verify_simplex_cover_l7());
    }

    #[test]
    fn first_seven_are_not_enough() {
        let v = l7_translates();
        let check = verify_simplex_cover(l7_generators(), &v[..7], &l7_combinations()[..7]);
        assert!(check.uncovered.is_some());
        assert!(!check.passed());
    }
}
