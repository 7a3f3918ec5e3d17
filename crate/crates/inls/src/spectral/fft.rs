//! Thin deterministic wrapper around rustfft for square 2d transforms.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

thread_local! {
    static PLANS: RefCell<HashMap<usize, (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>)>> =
        RefCell::new(HashMap::new());
}

fn with_plans<R>(n: usize, f: impl FnOnce(&Arc<dyn Fft<f64>>, &Arc<dyn Fft<f64>>) -> R) -> R {
    PLANS.with(|cell| {
        let mut map = cell.borrow_mut();
        let (fw, bw) = map.entry(n).or_insert_with(|| {
            let mut planner = FftPlanner::new();
            (
                planner.plan_fft_forward(n),
                planner.plan_fft_inverse(n),
            )
        });
        f(fw, bw)
    })
}

fn transform_2d(data: &mut [Complex64], n: usize, forward: bool) {
    assert_eq!(data.len(), n * n);
    with_plans(n, |fw, bw| {
        let plan = if forward { fw } else { bw };
        // rows
        for row in data.chunks_exact_mut(n) {
            plan.process(row);
        }
        // columns via transpose
        let mut col = vec![Complex64::default(); n];
        for j in 0..n {
            for i in 0..n {
                col[i] = data[i * n + j];
            }
            plan.process(&mut col);
            for i in 0..n {
                data[i * n + j] = col[i];
            }
        }
    });
}

/// Unnormalized forward 2d DFT in place.
pub fn fft2(data: &mut [Complex64], n: usize) {
    transform_2d(data, n, true);
}

/// Inverse 2d DFT in place, normalized by 1/n^2.
pub fn ifft2(data: &mut [Complex64], n: usize) {
    transform_2d(data, n, false);
    let scale = 1.0 / (n * n) as f64;
    for v in data.iter_mut() {
        *v *= scale;
    }
}
