//! Thin N-dimensional FFT layer over rustfft, for fields sampled on a
//! periodic box with `m` points per axis (row-major, last axis fastest).

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

pub struct FftEngine {
    m: usize,
    n_dim: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl FftEngine {
    pub fn new(n_dim: usize, m: usize) -> Self {
        let mut planner = FftPlanner::new();
        FftEngine {
            m,
            n_dim,
            forward: planner.plan_fft_forward(m),
            inverse: planner.plan_fft_inverse(m),
        }
    }

    pub fn len(&self) -> usize {
        self.m.pow(self.n_dim as u32)
    }

    /// In-place forward transform along every axis (unnormalized).
    pub fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, true);
    }

    /// In-place inverse transform along every axis, with 1/m^N normalization.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.transform(data, false);
        let scale = 1.0 / self.len() as f64;
        for v in data.iter_mut() {
            *v *= scale;
        }
    }

    fn transform(&self, data: &mut [Complex64], fwd: bool) {
        assert_eq!(data.len(), self.len());
        let m = self.m;
        let fft = if fwd { &self.forward } else { &self.inverse };
        match self.n_dim {
            1 => fft.process(data),
            2 => {
                // axis 1 (contiguous rows)
                for row in data.chunks_exact_mut(m) {
                    fft.process(row);
                }
                // axis 0 (strided columns)
                let mut col = vec![Complex64::default(); m];
                for j in 0..m {
                    for i in 0..m {
                        col[i] = data[i * m + j];
                    }
                    fft.process(&mut col);
                    for i in 0..m {
                        data[i * m + j] = col[i];
                    }
                }
            }
            3 => {
                let m2 = m * m;
                for row in data.chunks_exact_mut(m) {
                    fft.process(row);
                }
                let mut line = vec![Complex64::default(); m];
                for i in 0..m {
                    for k in 0..m {
                        for j in 0..m {
                            line[j] = data[i * m2 + j * m + k];
                        }
                        fft.process(&mut line);
                        for j in 0..m {
                            data[i * m2 + j * m + k] = line[j];
                        }
                    }
                }
                for j in 0..m {
                    for k in 0..m {
                        for i in 0..m {
                            line[i] = data[i * m2 + j * m + k];
                        }
                        fft.process(&mut line);
                        for i in 0..m {
                            data[i * m2 + j * m + k] = line[i];
                        }
                    }
                }
            }
            d => panic!("unsupported dimension {d}"),
        }
    }
}

/// Integer frequency of index `i` on an axis of length `m` (fftfreq * m).
#[inline]
pub fn freq_index(i: usize, m: usize) -> i64 {
    if i <= m / 2 - (1 - m % 2) && i <= (m - 1) / 2 {
        i as i64
    } else {
        i as i64 - m as i64
    }
}
