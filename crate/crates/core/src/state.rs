use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// Largest register simulated as a dense state vector.
pub const STATE_CAP: usize = 24;

/// Dense `2^n` amplitude vector, indexed by basis state.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    fn check_width(n: usize) -> Result<()> {
        if n == 0 || n > STATE_CAP {
            return Err(Error::TooManyQubits { n, cap: STATE_CAP });
        }
        Ok(())
    }

    pub fn basis(n: usize, index: u64) -> Result<Self> {
        Self::check_width(n)?;
        if index >> n != 0 {
            return Err(invalid(alloc::format!("basis index {index} out of range for n = {n}")));
        }
        let mut amps = alloc::vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index as usize] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::uniform_over(n, |_| true)
    }

    /// Equal real amplitudes on the states accepted by `keep`, zero elsewhere.
    pub fn uniform_over(n: usize, keep: impl Fn(u64) -> bool) -> Result<Self> {
        Self::check_width(n)?;
        let support = (0..1u64 << n).filter(|&x| keep(x)).count();
        if support == 0 {
            return Err(invalid("empty support"));
        }
        let a = Complex64::new(1.0 / libm::sqrt(support as f64), 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let amps = (0..1u64 << n).map(|x| if keep(x) { a } else { zero }).collect();
        Ok(Self { n, amps })
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        Self::check_width(n)?;
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch { expected: 1 << n, found: amps.len() });
        }
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }
}
