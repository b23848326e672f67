use serde::{Deserialize, Serialize};

use crate::error::CorpusError;
use crate::realkit::Dyadic;
use crate::scalar::Scalar;

/// A closed box `[a_1, b_1] × … × [a_m, b_m]` with `a_i < b_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rect<T = Dyadic> {
    axes: Vec<(T, T)>,
}

impl<T: Scalar> Rect<T> {
    pub fn new(axes: Vec<(T, T)>) -> Result<Self, CorpusError> {
        if axes.is_empty() {
            return Err(CorpusError::BadRect { axis: 0 });
        }
        for (i, (a, b)) in axes.iter().enumerate() {
            // also rejects NaN bounds
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !(a < b) {
                return Err(CorpusError::BadRect { axis: i });
            }
        }
        Ok(Rect { axes })
    }

    /// `[-a, a] × [-b, b]`.
    pub fn symmetric(a: T, b: T) -> Result<Self, CorpusError> {
        Self::new(vec![(-a.clone(), a), (-b.clone(), b)])
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[(T, T)] {
        &self.axes
    }

    pub fn lower(&self, i: usize) -> &T {
        &self.axes[i].0
    }

    pub fn upper(&self, i: usize) -> &T {
        &self.axes[i].1
    }

    pub fn contains(&self, x: &[T]) -> bool {
        x.len() == self.dim() && x.iter().zip(&self.axes).all(|(v, (a, b))| a <= v && v <= b)
    }

    pub fn midpoint(&self) -> Vec<T> {
        self.axes.iter().map(|(a, b)| (a.clone() + b.clone()).half()).collect()
    }

    pub fn clamp_axis(&self, i: usize, v: &T) -> T {
        v.clamp_to(&self.axes[i].0, &self.axes[i].1)
    }

    /// Largest `|x_i|` over the box along axis `i`.
    pub fn max_abs(&self, i: usize) -> T {
        let (a, b) = &self.axes[i];
        T::max_of(a.abs(), b.abs())
    }
}

impl Rect<Dyadic> {
    /// The default rectangle `[-2, 2]²`.
    pub fn default_square() -> Self {
        Rect { axes: vec![(Dyadic::from(-2), Dyadic::from(2)); 2] }
    }

    pub fn width(&self, i: usize) -> Dyadic {
        &self.axes[i].1 - &self.axes[i].0
    }

    pub fn to_scalar<T: Scalar>(&self) -> Rect<T> {
        Rect { axes: self.axes.iter().map(|(a, b)| (T::from_dyadic(a), T::from_dyadic(b))).collect() }
    }
}
