use super::Tolerance;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Outcome of a minimization run.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum<T> {
    pub argmin: Vec<T>,
    pub value: T,
    /// The simplex shrank below the tolerance before the iteration cap.
    pub converged: bool,
    pub iterations: usize,
    pub evaluations: usize,
}

/// Nelder–Mead simplex search with dimension-adaptive coefficients
/// (Gao & Han) for two or more parameters.
///
/// Points where the objective is NaN or infinite are treated as +∞, so an
/// objective may simply return NaN outside its domain.
#[derive(Debug, Clone)]
pub struct NelderMead<T> {
    tol: Tolerance<T>,
    initial_step: Option<Vec<T>>,
}

/// Minimizes `objective` from `start` with the default initial simplex.
pub fn minimize<T, F>(objective: F, start: &[T], tol: &Tolerance<T>) -> Result<Minimum<T>>
where
    T: Real,
    F: FnMut(&[T]) -> T,
{
    NelderMead::new(*tol).minimize(objective, start)
}

impl<T: Real> NelderMead<T> {
    pub fn new(tol: Tolerance<T>) -> Self {
        Self {
            tol,
            initial_step: None,
        }
    }

    /// Per-coordinate offsets of the initial simplex vertices from the start.
    pub fn with_initial_step(mut self, step: Vec<T>) -> Self {
        self.initial_step = Some(step);
        self
    }

    pub fn minimize<F>(&self, mut objective: F, start: &[T]) -> Result<Minimum<T>>
    where
        F: FnMut(&[T]) -> T,
    {
        let k = start.len();
        if k == 0 {
            return Err(Error::Argument("minimize: empty start vector".into()));
        }
        if let Some(step) = &self.initial_step {
            if step.len() != k || step.iter().any(|s| !s.is_finite() || *s == T::zero()) {
                return Err(Error::Argument(
                    "minimize: initial step must be nonzero and match the dimension".into(),
                ));
            }
        }
        let f0 = objective(start);
        if !f0.is_finite() {
            return Err(Error::NonFiniteStart);
        }
        let mut evaluations = 1;
        let mut eval = |x: &[T]| {
            evaluations += 1;
            let v = objective(x);
            if v.is_finite() {
                v
            } else {
                T::infinity()
            }
        };

        let lit = T::lit;
        let kf = T::from_usize(k).unwrap();
        let (reflect, expand, contract, shrink) = if k >= 2 {
            (
                T::one(),
                T::one() + lit(2.0) / kf,
                lit(0.75) - lit(0.5) / kf,
                T::one() - kf.recip(),
            )
        } else {
            (T::one(), lit(2.0), lit(0.5), lit(0.5))
        };

        let mut simplex: Vec<(Vec<T>, T)> = Vec::with_capacity(k + 1);
        simplex.push((start.to_vec(), f0));
        for j in 0..k {
            let mut x = start.to_vec();
            x[j] += match &self.initial_step {
                Some(step) => step[j],
                None if start[j] != T::zero() => lit(0.05) * start[j],
                None => lit(0.00025),
            };
            let f = eval(&x);
            simplex.push((x, f));
        }

        let mut iterations = 0;
        let mut converged = false;
        let mut centroid = vec![T::zero(); k];
        loop {
            simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));

            let best = &simplex[0].0;
            let scale = best.iter().fold(T::zero(), |m, v| m.max(v.abs()));
            let diameter = simplex[1..]
                .iter()
                .flat_map(|(x, _)| x.iter().zip(best).map(|(a, b)| (*a - *b).abs()))
                .fold(T::zero(), T::max);
            if diameter <= self.tol.threshold(scale) {
                converged = true;
                break;
            }
            if iterations >= self.tol.max_iters() {
                break;
            }
            iterations += 1;

            centroid.iter_mut().for_each(|c| *c = T::zero());
            for (x, _) in &simplex[..k] {
                for (c, v) in centroid.iter_mut().zip(x) {
                    *c += *v;
                }
            }
            centroid.iter_mut().for_each(|c| *c /= kf);

            let worst = simplex[k].0.clone();
            let f_best = simplex[0].1;
            let f_second = simplex[k - 1].1;
            let f_worst = simplex[k].1;
            let along = |coef: T| -> Vec<T> {
                centroid
                    .iter()
                    .zip(&worst)
                    .map(|(c, w)| *c + coef * (*c - *w))
                    .collect()
            };

            let xr = along(reflect);
            let fr = eval(&xr);
            if fr < f_best {
                let xe = along(reflect * expand);
                let fe = eval(&xe);
                simplex[k] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < f_second {
                simplex[k] = (xr, fr);
                continue;
            }
            if fr < f_worst {
                let xc = along(reflect * contract);
                let fc = eval(&xc);
                if fc <= fr {
                    simplex[k] = (xc, fc);
                    continue;
                }
            } else {
                let xc = along(-contract);
                let fc = eval(&xc);
                if fc < f_worst {
                    simplex[k] = (xc, fc);
                    continue;
                }
            }

            let anchor = simplex[0].0.clone();
            for vertex in simplex.iter_mut().skip(1) {
                for (v, b) in vertex.0.iter_mut().zip(&anchor) {
                    *v = *b + shrink * (*v - *b);
                }
                vertex.1 = eval(&vertex.0);
            }
        }

        let (argmin, value) = simplex.swap_remove(0);
        Ok(Minimum {
            argmin,
            value,
            converged,
            iterations,
            evaluations,
        })
    }
}
