//! Small 2D FFT helper over row-major square arrays.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

/// Forward/inverse 2D FFT plan for an `m×m` complex array.
pub struct Fft2 {
    m: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl Fft2 {
    pub fn new(m: usize) -> Self {
        let mut planner = FftPlanner::new();
        Fft2 {
            m,
            fwd: planner.plan_fft_forward(m),
            inv: planner.plan_fft_inverse(m),
        }
    }

    fn rows(&self, data: &mut [Complex64], plan: &Arc<dyn Fft<f64>>) {
        for row in data.chunks_exact_mut(self.m) {
            plan.process(row);
        }
    }

    /// Unnormalised forward transform (rows then columns).
    pub fn forward(&self, data: &mut [Complex64]) {
        debug_assert_eq!(data.len(), self.m * self.m);
        self.rows(data, &self.fwd);
        transpose(data, self.m);
        self.rows(data, &self.fwd);
        transpose(data, self.m);
    }

    /// Inverse transform normalised so that `inverse(forward(x)) = x`.
    pub fn inverse(&self, data: &mut [Complex64]) {
        debug_assert_eq!(data.len(), self.m * self.m);
        self.rows(data, &self.inv);
        transpose(data, self.m);
        self.rows(data, &self.inv);
        transpose(data, self.m);
        let scale = 1.0 / (self.m * self.m) as f64;
        for v in data.iter_mut() {
            *v *= scale;
        }
    }
}

fn transpose(data: &mut [Complex64], m: usize) {
    for i in 0..m {
        for j in (i + 1)..m {
            data.swap(i * m + j, j * m + i);
        }
    }
}
