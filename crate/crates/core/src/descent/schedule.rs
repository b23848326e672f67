use serde::{Deserialize, Serialize};

use crate::error::DescentError;

/// An ordered partition of the coordinates into blocks, swept in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Schedule {
    blocks: Vec<Vec<usize>>,
}

impl Schedule {
    /// Blocks must be nonempty, increasing inside, disjoint, and together
    /// cover `0..dim` once.
    pub fn new(blocks: Vec<Vec<usize>>, dim: usize) -> Result<Self, DescentError> {
        let s = Schedule::try_from(blocks)?;
        let n: usize = s.blocks.iter().map(Vec::len).sum();
        if n != dim || s.blocks.iter().flatten().any(|&i| i >= dim) {
            return Err(DescentError::BadSchedule(format!("blocks do not cover 0..{dim}")));
        }
        Ok(s)
    }

    /// One block per coordinate, in order.
    pub fn coordinatewise(dim: usize) -> Self {
        Schedule { blocks: (0..dim).map(|i| vec![i]).collect() }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }
}

impl TryFrom<Vec<Vec<usize>>> for Schedule {
    type Error = DescentError;

    fn try_from(blocks: Vec<Vec<usize>>) -> Result<Self, Self::Error> {
        if blocks.is_empty() {
            return Err(DescentError::BadSchedule("no blocks".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for b in &blocks {
            if b.is_empty() {
                return Err(DescentError::BadSchedule("empty block".into()));
            }
            if b.windows(2).any(|w| w[0] >= w[1]) {
                return Err(DescentError::BadSchedule(format!("block {b:?} is not increasing")));
            }
            for &i in b {
                if !seen.insert(i) {
                    return Err(DescentError::BadSchedule(format!("coordinate {i} appears twice")));
                }
            }
        }
        let dim = seen.len();
        if seen.iter().next_back() != Some(&(dim - 1)) {
            return Err(DescentError::BadSchedule(format!("blocks do not cover 0..{dim}")));
        }
        Ok(Schedule { blocks })
    }
}

impl From<Schedule> for Vec<Vec<usize>> {
    fn from(s: Schedule) -> Self {
        s.blocks
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Schedule::new(vec![vec![0], vec![1]], 2).is_ok());
        assert!(Schedule::new(vec![vec![0, 1]], 2).is_ok());
        assert!(Schedule::new(vec![vec![1], vec![0]], 2).is_ok());
        assert!(Schedule::new(vec![vec![1, 0]], 2).is_err());
        assert!(Schedule::new(vec![vec![0], vec![0]], 2).is_err());
        assert!(Schedule::new(vec![vec![0]], 2).is_err());
        assert!(Schedule::new(vec![vec![0], vec![2]], 2).is_err());
        assert!(Schedule::new(vec![], 0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = Schedule::coordinatewise(3);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, "[[0],[1],[2]]");
        assert_eq!(serde_json::from_str::<Schedule>(&text).unwrap(), s);
        assert!(serde_json::from_str::<Schedule>("[[0],[0]]").is_err());
    }
}
