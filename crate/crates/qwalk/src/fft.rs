//! `rustfft` behind the core [`Dft`] trait.

use std::sync::Mutex;

use qwalk_core::dft::Dft;
use qwalk_core::Complex64;
use rustfft::FftPlanner;

/// Plans are created on first use for each length and cached by the planner.
pub struct RustFft {
    planner: Mutex<FftPlanner<f64>>,
}

impl RustFft {
    pub fn new() -> Self {
        Self {
            planner: Mutex::new(FftPlanner::new()),
        }
    }
}

impl Default for RustFft {
    fn default() -> Self {
        Self::new()
    }
}

impl Dft for RustFft {
    fn forward(&self, data: &mut [Complex64]) {
        let plan = self.planner.lock().expect("fft planner poisoned").plan_fft_forward(data.len());
        plan.process(data);
    }

    fn inverse(&self, data: &mut [Complex64]) {
        let plan = self.planner.lock().expect("fft planner poisoned").plan_fft_inverse(data.len());
        plan.process(data);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qwalk_core::dft::NaiveDft;

    #[test]
    fn agrees_with_the_naive_transform() {
        for n in [1usize, 6, 64, 97] {
            let data: Vec<Complex64> = (0..n).map(|m| Complex64::new(m as f64, (m * m % 7) as f64)).collect();
            let (mut a, mut b) = (data.clone(), data.clone());
            RustFft::new().forward(&mut a);
            NaiveDft.forward(&mut b);
            let worst = a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
            assert!(worst < 1e-9 * n as f64, "{n}: {worst}");
        }
    }
}
