use super::field::Field;
use crate::scaling::Power;

/// Metadata attached to a trajectory: nonlinearity power, weight label, and a
/// free-form description of the solver settings that produced it.
#[derive(Clone, Debug)]
pub struct TrajectoryMeta {
    pub p: Power,
    pub weight_label: String,
    pub solver_settings: String,
}

/// A time-indexed sequence of field snapshots on one grid. The unit over
/// which space-time norms and virial integrals are computed.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub snapshots: Vec<Field>,
    pub meta: TrajectoryMeta,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, snapshots: Vec<Field>, meta: TrajectoryMeta) -> Self {
        assert_eq!(times.len(), snapshots.len());
        assert!(
            times.windows(2).all(|w| w[1] > w[0]),
            "times must be strictly increasing"
        );
        if let Some(first) = snapshots.first() {
            assert!(
                snapshots.iter().all(|s| s.grid() == first.grid()),
                "all snapshots must share one grid"
            );
        }
        Trajectory {
            times,
            snapshots,
            meta,
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn span(&self) -> (f64, f64) {
        (self.times[0], self.times[self.times.len() - 1])
    }

    /// Indices of snapshots with t in [t0, t1] (small tolerance at the ends).
    pub fn indices_in(&self, t0: f64, t1: f64) -> Vec<usize> {
        let eps = 1e-12 * (1.0 + t1.abs());
        self.times
            .iter()
            .enumerate()
            .filter(|(_, &t)| t >= t0 - eps && t <= t1 + eps)
            .map(|(i, _)| i)
            .collect()
    }

    /// Index of the snapshot closest to time t.
    pub fn nearest_index(&self, t: f64) -> usize {
        let mut best = 0;
        let mut err = f64::INFINITY;
        for (i, &s) in self.times.iter().enumerate() {
            if (s - t).abs() < err {
                err = (s - t).abs();
                best = i;
            }
        }
        best
    }
}
