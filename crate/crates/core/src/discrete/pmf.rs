//! Dense joint pmfs over small finite alphabets and conditional mutual information.

use crate::error::{Result, TwrcError};

/// Normalization tolerance for pmfs and channel rows.
pub const NORM_TOL: f64 = 1e-9;

/// A joint pmf stored row-major: the last variable varies fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    dims: Vec<usize>,
    probs: Vec<f64>,
}

pub(crate) fn check_distribution(probs: &[f64], what: &str) -> Result<()> {
    if let Some(bad) = probs.iter().find(|p| !(0.0..=1.0 + NORM_TOL).contains(*p)) {
        return Err(TwrcError::Domain(format!("{what}: entry {bad} outside [0, 1]")));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > NORM_TOL {
        return Err(TwrcError::Domain(format!("{what}: sums to {total}, expected 1")));
    }
    Ok(())
}

impl Pmf {
    pub fn new(dims: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        if dims.contains(&0) {
            return Err(TwrcError::Domain("pmf alphabets must be nonempty".into()));
        }
        let size: usize = dims.iter().product();
        if probs.len() != size {
            return Err(TwrcError::Domain(format!(
                "pmf table has {} entries, alphabets need {size}",
                probs.len()
            )));
        }
        check_distribution(&probs, "joint pmf")?;
        Ok(Self { dims, probs })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for i in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.dims[i + 1];
        }
        strides
    }

    /// Marginal over `vars`, flattened row-major in the order given.
    pub fn marginal(&self, vars: &[usize]) -> Vec<f64> {
        let strides = self.strides();
        let out_size: usize = vars.iter().map(|&v| self.dims[v]).product();
        let mut out = vec![0.0; out_size];
        for (flat, &p) in self.probs.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let mut idx = 0;
            for &v in vars {
                idx = idx * self.dims[v] + (flat / strides[v]) % self.dims[v];
            }
            out[idx] += p;
        }
        out
    }

    /// `I(A; B | C)` in bits.
    pub fn mutual_information(&self, a: &[usize], b: &[usize], cond: &[usize]) -> Result<f64> {
        mutual_information(self, a, b, cond)
    }
}

/// Conditional mutual information `I(A; B | C)` in bits, with `0·log 0 = 0`.
///
/// Index sets must be disjoint and in range. Results within `-1e-12` of zero
/// are clamped to 0.
pub fn mutual_information(joint: &Pmf, a: &[usize], b: &[usize], cond: &[usize]) -> Result<f64> {
    let n = joint.dims.len();
    let mut seen = vec![false; n];
    for &v in a.iter().chain(b).chain(cond) {
        if v >= n {
            return Err(TwrcError::Argument(format!("variable index {v} out of range (pmf has {n})")));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(TwrcError::Argument(format!("variable {v} appears in more than one group")));
        }
    }
    if a.is_empty() || b.is_empty() {
        return Ok(0.0);
    }

    let size = |vars: &[usize]| -> usize { vars.iter().map(|&v| joint.dims[v]).product() };
    let (na, nb, nc) = (size(a), size(b), size(cond));
    let order: Vec<usize> = a.iter().chain(b).chain(cond).copied().collect();
    // p_abc[(ia·nb + ib)·nc + ic]
    let p_abc = joint.marginal(&order);

    let mut p_ac = vec![0.0; na * nc];
    let mut p_bc = vec![0.0; nb * nc];
    let mut p_c = vec![0.0; nc];
    for ia in 0..na {
        for ib in 0..nb {
            for ic in 0..nc {
                let p = p_abc[(ia * nb + ib) * nc + ic];
                p_ac[ia * nc + ic] += p;
                p_bc[ib * nc + ic] += p;
                p_c[ic] += p;
            }
        }
    }

    let mut total = 0.0;
    for ia in 0..na {
        for ib in 0..nb {
            for ic in 0..nc {
                let p = p_abc[(ia * nb + ib) * nc + ic];
                if p <= 0.0 {
                    continue;
                }
                let denom = p_ac[ia * nc + ic] * p_bc[ib * nc + ic];
                if denom <= 0.0 {
                    return Err(TwrcError::Domain("positive joint mass over a zero marginal".into()));
                }
                total += p * (p * p_c[ic] / denom).log2();
            }
        }
    }
    if total < -1e-12 {
        return Err(TwrcError::Domain(format!("negative mutual information {total}")));
    }
    Ok(total.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h2(p: f64) -> f64 {
        -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
    }

    #[test]
    fn independent_bits() {
        let pmf = Pmf::new(vec![2, 2], vec![0.25; 4]).unwrap();
        assert_eq!(pmf.mutual_information(&[0], &[1], &[]).unwrap(), 0.0);
    }

    #[test]
    fn copied_bit() {
        let pmf = Pmf::new(vec![2, 2], vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!((pmf.mutual_information(&[0], &[1], &[]).unwrap() - 1.0).abs() < 1e-15);
        // I(A; A | A) style overlap is rejected
        assert!(pmf.mutual_information(&[0], &[0], &[]).is_err());
        assert!(pmf.mutual_information(&[0], &[2], &[]).is_err());
    }

    #[test]
    fn binary_symmetric() {
        let e = 0.11;
        let pmf = Pmf::new(vec![2, 2], vec![0.5 * (1.0 - e), 0.5 * e, 0.5 * e, 0.5 * (1.0 - e)]).unwrap();
        let mi = pmf.mutual_information(&[0], &[1], &[]).unwrap();
        assert!((mi - (1.0 - h2(e))).abs() < 1e-12);
        assert!((mi - 0.500_084).abs() < 1e-6);
    }

    #[test]
    fn xor_needs_conditioning() {
        // Z = X xor Y with X, Y uniform: I(X;Z) = 0, I(X;Z|Y) = 1
        let mut probs = vec![0.0; 8];
        for x in 0..2 {
            for y in 0..2 {
                probs[(x * 2 + y) * 2 + (x ^ y)] = 0.25;
            }
        }
        let pmf = Pmf::new(vec![2, 2, 2], probs).unwrap();
        assert!(pmf.mutual_information(&[0], &[2], &[]).unwrap().abs() < 1e-15);
        assert!((pmf.mutual_information(&[0], &[2], &[1]).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(matches!(Pmf::new(vec![2], vec![0.5, 0.6]), Err(TwrcError::Domain(_))));
        assert!(Pmf::new(vec![2], vec![1.5, -0.5]).is_err());
        assert!(Pmf::new(vec![2, 2], vec![1.0]).is_err());
        assert!(Pmf::new(vec![0], vec![]).is_err());
    }

    #[test]
    fn marginal_order() {
        let pmf = Pmf::new(vec![2, 3], vec![0.1, 0.2, 0.0, 0.3, 0.0, 0.4]).unwrap();
        let m = pmf.marginal(&[1, 0]);
        assert_eq!(m.len(), 6);
        assert!((m[0] - 0.1).abs() < 1e-15 && (m[1] - 0.3).abs() < 1e-15);
        let m1 = pmf.marginal(&[1]);
        assert!((m1[2] - 0.4).abs() < 1e-15);
    }
}
