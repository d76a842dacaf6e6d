use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntegralOrthotope, OrthotopeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VolumeMethod {
    /// `2^-d Σ μ_d` over lattice points; needs a generic input.
    MuSum,
    /// `(-1)^d Σ τ(v) Π v_i` over vertices; needs a generic input.
    Determinantal,
    /// Sum of cell volumes.
    VoxelCount,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerMethod {
    /// `2^-d Σ σ(v)` over vertices; needs a generic input.
    SigmaSum,
    /// Alternating count of the closed grid faces.
    CubicalComplex,
}

impl IntegralOrthotope {
    pub fn volume(&self, method: VolumeMethod) -> Result<BigRational, OrthotopeError> {
        let denom = BigInt::from(self.scale).pow(self.dim as u32);
        let scaled = match method {
            VolumeMethod::VoxelCount => BigRational::from_integer(BigInt::from(self.cell_count())),
            VolumeMethod::MuSum => self.mu_sum()?,
            VolumeMethod::Determinantal => return self.determinantal(),
        };
        Ok(scaled / BigRational::from_integer(denom))
    }

    /// Volume of the scaled polytope via the lattice-point formula.
    fn mu_sum(&self) -> Result<BigRational, OrthotopeError> {
        self.require_generic()?;
        let grid = self.point_grid();
        let mut total = BigInt::zero();
        grid.for_each(|g, info| {
            let mu = info.cone.mu();
            if mu > 0 {
                total += BigInt::from(mu) * BigInt::from(grid.lattice_multiplicity(g));
            }
        });
        Ok(BigRational::new(total, BigInt::one() << self.dim))
    }

    /// Expanding `Π((v_i + 1) - v_i)` over unit cells gives each corner the
    /// coefficient `Π(-s_i)`, so the signed orthant count enters with a
    /// factor `(-1)^d`.
    fn determinantal(&self) -> Result<BigRational, OrthotopeError> {
        self.require_generic()?;
        let n = BigInt::from(self.scale);
        let mut total = BigRational::zero();
        for v in self.vertices() {
            let tau = v.cone.tau();
            let product = v
                .point
                .iter()
                .map(|&c| BigRational::new(BigInt::from(c), BigInt::from(2) * &n))
                .fold(BigRational::one(), |acc, x| acc * x);
            total += product * BigRational::from_integer(BigInt::from(tau));
        }
        if self.dim % 2 == 1 {
            total = -total;
        }
        Ok(total)
    }

    pub fn euler(&self, method: EulerMethod) -> Result<i64, OrthotopeError> {
        match method {
            EulerMethod::SigmaSum => {
                let sigma = self.sigma()?;
                let (chi, rem) = sigma.div_rem(&(1i64 << self.dim));
                if rem != 0 {
                    return Err(OrthotopeError::Consistency(format!(
                        "bouquet sign sum {sigma} is not divisible by 2^{}",
                        self.dim
                    )));
                }
                Ok(chi)
            }
            EulerMethod::CubicalComplex => {
                let mut chi = 0i64;
                self.point_grid().for_each(|g, info| {
                    if !info.cone.is_empty() {
                        let odd = g.iter().filter(|x| *x % 2 == 1).count();
                        chi += if odd % 2 == 0 { 1 } else { -1 };
                    }
                });
                Ok(chi)
            }
        }
    }

    /// Sum of bouquet signs over the vertices.
    pub fn sigma(&self) -> Result<i64, OrthotopeError> {
        self.require_generic()?;
        let mut sigma = 0;
        self.point_grid().for_each(|_, info| {
            if info.is_vertex() {
                sigma += info
                    .recognition
                    .diagram()
                    .expect("generic vertex")
                    .bouquet()
                    .sign
                    .value();
            }
        });
        Ok(sigma)
    }
}
