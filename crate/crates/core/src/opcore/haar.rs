use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::opcore::linalg::{c, CMatrix};

/// Haar-distributed unitary from the QR decomposition of a complex Ginibre
/// matrix, with the phases of R's diagonal moved into Q.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<CMatrix> {
    if d == 0 {
        return Err(Error::OutOfRange("unitary dimension must be >= 1".into()));
    }
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let g = CMatrix::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re * scale, im * scale)
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let rjj = r[(j, j)];
        let norm = rjj.norm();
        if norm == 0.0 {
            return Err(Error::Numerical("singular Ginibre sample".into()));
        }
        let phase = rjj / norm;
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    Ok(q)
}

/// Largest entry of |U^dag U - 1|.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.ncols();
    let gram = u.adjoint() * u - CMatrix::identity(n, n);
    gram.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}
