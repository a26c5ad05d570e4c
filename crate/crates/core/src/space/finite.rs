//! Plain finite point spaces with explicit map tables. Used as factor
//! targets and for randomized hierarchy cross-checks.

use super::SpaceError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTableSpace {
    pub size: usize,
    /// `maps[sym][point]` = image point.
    pub maps: Vec<Vec<usize>>,
}

impl FiniteTableSpace {
    pub fn new(size: usize, maps: Vec<Vec<usize>>) -> Result<Self, SpaceError> {
        if size == 0 {
            return Err(SpaceError::BadMap("empty point set".into()));
        }
        for m in &maps {
            if m.len() != size || m.iter().any(|&p| p >= size) {
                return Err(SpaceError::BadMap("map table out of range".into()));
            }
        }
        Ok(FiniteTableSpace { size, maps })
    }

    pub fn apply(&self, sym: u8, p: usize) -> usize {
        self.maps[sym as usize][p]
    }

    pub fn preimage(&self, sym: u8, p: usize) -> Vec<usize> {
        (0..self.size)
            .filter(|&x| self.apply(sym, x) == p)
            .collect()
    }
}
