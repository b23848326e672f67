//! Enclosure of `min_{x ∈ R} f(x)` by best-first branch and bound.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::corpus::{Objective, Rect};
use crate::error::ArgminError;
use crate::realkit::{Dyadic, Interval};

struct Cell {
    lower: Dyadic,
    rect: Rect,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.lower == other.lower
    }
}

impl Eq for Cell {}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lower.cmp(&other.lower)
    }
}

/// Result of [`global_min_enclosure`] with the work it took.
#[derive(Clone, Debug, PartialEq)]
pub struct GlobalMin {
    pub value: Interval,
    /// A point whose value bounds the minimum from above.
    pub witness: Vec<Dyadic>,
    pub cells: usize,
}

/// Bounds `f` on a cell from its centre: `f(x) ≥ f(c) − Σ L_i w_i / 2`,
/// with `L_i` the Lipschitz constants on that cell.
fn bound_cell(f: &dyn Objective, rect: Rect) -> (Cell, Interval, Vec<Dyadic>) {
    let c = rect.midpoint();
    let v = f.eval(&c);
    let l = f.lipschitz(&rect);
    let slack: Dyadic = (0..rect.dim()).map(|i| (&l[i] * &rect.width(i)).half()).sum();
    let lower = v.lo() - &slack;
    (Cell { lower, rect }, v, c)
}

/// Interval of width at most `tol` containing `min_{x ∈ rect} f(x)`.
///
/// Cost grows like `(L / tol)^dim` in the worst case; per-cell Lipschitz
/// constants shrink near smooth minima, which keeps the corpus cheap.
pub fn global_min_enclosure(f: &dyn Objective, rect: &Rect, tol: &Dyadic) -> Result<GlobalMin, ArgminError> {
    if !tol.is_positive() {
        return Err(ArgminError::Invalid("tolerance must be positive".into()));
    }
    if rect.dim() != f.dim() {
        return Err(ArgminError::Invalid(format!(
            "rectangle has {} axes but {} takes {}",
            rect.dim(),
            f.name(),
            f.dim()
        )));
    }
    let mut heap = BinaryHeap::new();
    let (cell, v, c) = bound_cell(f, rect.clone());
    let mut upper = v.hi().clone();
    let mut witness = c;
    heap.push(Reverse(cell));
    let mut cells = 1;
    while let Some(Reverse(cell)) = heap.pop() {
        if &upper - &cell.lower <= *tol {
            return Ok(GlobalMin { value: Interval::hull_of(cell.lower, upper), witness, cells });
        }
        // split where the bound is loosest
        let l = f.lipschitz(&cell.rect);
        let axis = (0..cell.rect.dim())
            .max_by(|&i, &j| (&l[i] * &cell.rect.width(i)).cmp(&(&l[j] * &cell.rect.width(j))))
            .unwrap_or(0);
        let (a, b) = cell.rect.axes()[axis].clone();
        let m = a.midpoint(&b);
        for half in [(a, m.clone()), (m.clone(), b)] {
            let mut axes = cell.rect.axes().to_vec();
            axes[axis] = half;
            let sub = Rect::new(axes).expect("halves of a nondegenerate axis");
            let (child, v, c) = bound_cell(f, sub);
            if v.hi() < &upper {
                upper = v.hi().clone();
                witness = c;
            }
            cells += 1;
            heap.push(Reverse(child));
        }
    }
    unreachable!("the heap only empties after a split pushed two cells")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{f1_eval, Section, F1};

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn f1_minimum_is_zero() {
        let tol = Dyadic::pow2(-10);
        let g = global_min_enclosure(&F1, &Rect::default_square(), &tol).unwrap();
        assert!(g.value.contains(&d("0")));
        assert!(g.value.width() <= tol);
    }

    #[test]
    fn f1_section_at_x2_one() {
        let tol = Dyadic::pow2(-10);
        let s = Section { inner: &F1, free_axis: 0, fixed: vec![d("0"), d("1")] };
        let r = Rect::new(vec![(d("-2"), d("2"))]).unwrap();
        let g = global_min_enclosure(&s, &r, &tol).unwrap();
        let exact = f1_eval(&d("-1"), &d("1"));
        assert_eq!(exact, d("1"));
        assert!(g.value.contains(&exact));
        // dense grid agrees
        let grid_min = (-256..=256).map(|i| f1_eval(&Dyadic::frac(i, 7), &d("1"))).min().unwrap();
        assert_eq!(grid_min, exact);
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let r = Rect::new(vec![(d("-1"), d("1"))]).unwrap();
        assert!(global_min_enclosure(&F1, &r, &d("1/4")).is_err());
    }
}
