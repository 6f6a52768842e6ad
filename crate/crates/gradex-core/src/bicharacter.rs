//! Commutation factors on the grading group.
//!
//! The factor is determined on generators by b(xi^i, xi^j) =
//! (-1)^{Sigma_ij} q^{Omega_ij} with Sigma symmetric and Omega antisymmetric,
//! and extended to all of G as the unique bicharacter: b(g, h) =
//! (-1)^{g^T Sigma h} q^{g^T Omega h}.

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::scalar::{QSpec, Scalar};

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationFactor {
    sigma: IntMatrix,
    omega: IntMatrix,
    qspec: QSpec,
    rank: usize,
    modulus: u32,
}

/// One named verification in a [`ValidationReport`].
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect()
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(Check { name, passed, detail });
    }
}

fn is_square(m: &IntMatrix, n: usize) -> bool {
    m.len() == n && m.iter().all(|row| row.len() == n)
}

impl CommutationFactor {
    /// Validated constructor: enforces matrix shape, (anti)symmetry and
    /// well-definedness on the quotient group.
    pub fn new(
        sigma: IntMatrix,
        omega: IntMatrix,
        qspec: QSpec,
        rank: usize,
        modulus: u32,
    ) -> Result<CommutationFactor> {
        let cf = CommutationFactor::raw(sigma, omega, qspec, rank, modulus)?;
        let report = cf.validate_structure();
        if !report.passed() {
            return Err(Error::InvalidSpec(report.failures().join("; ")));
        }
        Ok(cf)
    }

    /// Unvalidated constructor, for feeding deliberately bad data to
    /// [`CommutationFactor::validate`]. Shape and basic sanity still checked.
    pub fn raw(
        sigma: IntMatrix,
        omega: IntMatrix,
        qspec: QSpec,
        rank: usize,
        modulus: u32,
    ) -> Result<CommutationFactor> {
        if rank == 0 {
            return Err(Error::InvalidSpec("rank must be at least 1".into()));
        }
        if modulus == 1 {
            return Err(Error::InvalidSpec(
                "modulus must be 0 (for Z^N) or >= 2".into(),
            ));
        }
        if let QSpec::RootOfUnity(n) = qspec {
            if n < 2 {
                return Err(Error::BadOrder(n));
            }
        }
        if !is_square(&sigma, rank) {
            return Err(Error::InvalidSpec(format!("sigma is not {rank}x{rank}")));
        }
        if !is_square(&omega, rank) {
            return Err(Error::InvalidSpec(format!("omega is not {rank}x{rank}")));
        }
        Ok(CommutationFactor { sigma, omega, qspec, rank, modulus })
    }

    /// The flux preset: Sigma_ij = delta_ij + N, Omega = 0, q of order 2,
    /// grading group Z_2^N. On generators b^{ij} = (-1)^{delta_ij + N}.
    pub fn from_flux(n_fluxes: usize) -> Result<CommutationFactor> {
        if n_fluxes == 0 {
            return Err(Error::InvalidSpec("flux preset requires N >= 1".into()));
        }
        let n = n_fluxes;
        let sigma: IntMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { 1 + n as i64 } else { n as i64 })
                    .collect()
            })
            .collect();
        let omega: IntMatrix = vec![vec![0; n]; n];
        CommutationFactor::new(sigma, omega, QSpec::RootOfUnity(2), n, 2)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn qspec(&self) -> QSpec {
        self.qspec
    }

    pub fn sigma(&self) -> &IntMatrix {
        &self.sigma
    }

    pub fn omega(&self) -> &IntMatrix {
        &self.omega
    }

    pub fn generator(&self, i: usize) -> Result<GroupElement> {
        GroupElement::generator(i, self.rank, self.modulus)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.rank, self.modulus)
    }

    fn check_shape(&self, g: &GroupElement) -> Result<()> {
        if g.rank() != self.rank || g.modulus() != self.modulus {
            return Err(Error::ShapeMismatch {
                expected_rank: self.rank,
                expected_modulus: self.modulus,
                got_rank: g.rank(),
                got_modulus: g.modulus(),
            });
        }
        Ok(())
    }

    fn bilinear(m: &IntMatrix, g: &GroupElement, h: &GroupElement) -> i64 {
        let mut acc = 0i64;
        for (i, gi) in g.exps().iter().enumerate() {
            if *gi == 0 {
                continue;
            }
            for (j, hj) in h.exps().iter().enumerate() {
                acc += gi * m[i][j] * hj;
            }
        }
        acc
    }

    /// b(g, h) = (-1)^{g^T Sigma h} q^{g^T Omega h}. Always nonzero.
    pub fn eval(&self, g: &GroupElement, h: &GroupElement) -> Result<Scalar> {
        self.check_shape(g)?;
        self.check_shape(h)?;
        let s = Self::bilinear(&self.sigma, g, h);
        let w = Self::bilinear(&self.omega, g, h);
        let sign = Scalar::from_integer(if s.rem_euclid(2) == 0 { 1 } else { -1 }, self.qspec);
        sign.checked_mul(&Scalar::q_power(w, self.qspec))
    }

    /// b on the generator pair (i, j), 1-based.
    pub fn eval_generators(&self, i: usize, j: usize) -> Result<Scalar> {
        self.eval(&self.generator(i)?, &self.generator(j)?)
    }

    /// The N x N table of b on generators, for report echoes.
    pub fn generator_table(&self) -> Result<Vec<Vec<Scalar>>> {
        (1..=self.rank)
            .map(|i| (1..=self.rank).map(|j| self.eval_generators(i, j)).collect())
            .collect()
    }

    fn validate_structure(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.rank;
        let sym = (0..n).all(|i| (0..n).all(|j| self.sigma[i][j] == self.sigma[j][i]));
        report.push(
            "sigma_symmetric",
            sym,
            if sym { "Sigma = Sigma^T".into() } else { "sigma not symmetric".into() },
        );
        let antisym =
            (0..n).all(|i| (0..n).all(|j| self.omega[i][j] == -self.omega[j][i]));
        report.push(
            "omega_antisymmetric",
            antisym,
            if antisym { "Omega = -Omega^T".into() } else { "omega not antisymmetric".into() },
        );
        let (ok, detail) = self.modulus_compatibility();
        report.push("modulus_compatible", ok, detail);
        report
    }

    fn modulus_compatibility(&self) -> (bool, String) {
        if self.modulus == 0 {
            return (true, "free grading group, nothing to check".into());
        }
        let n = self.modulus as i64;
        for i in 0..self.rank {
            for j in 0..self.rank {
                if (n * self.sigma[i][j]).rem_euclid(2) != 0 {
                    return (
                        false,
                        format!("n*Sigma[{i}][{j}] = {} is odd", n * self.sigma[i][j]),
                    );
                }
                let w = n * self.omega[i][j];
                let ok = match self.qspec {
                    QSpec::Formal => w == 0,
                    QSpec::RootOfUnity(ord) => w.rem_euclid(ord as i64) == 0,
                };
                if !ok {
                    return (
                        false,
                        format!("q^(n*Omega[{i}][{j}]) = q^{w} is not 1"),
                    );
                }
            }
        }
        (true, format!("well defined on Z_{}^{}", self.modulus, self.rank))
    }

    /// Grid of group elements used for law checks: exhaustive when G is
    /// finite and small, otherwise generators plus fixed sample vectors.
    fn check_grid(&self) -> Vec<GroupElement> {
        if self.modulus >= 2 {
            let size = (self.modulus as u64).pow(self.rank as u32);
            if size.pow(3) <= 1 << 18 {
                if let Ok(all) = GroupElement::enumerate(self.rank, self.modulus) {
                    return all;
                }
            }
        }
        let mut grid = vec![self.identity()];
        for i in 1..=self.rank {
            grid.push(self.generator(i).expect("rank-bounded generator"));
        }
        let samples: [Vec<i64>; 3] = [
            vec![1; self.rank],
            (0..self.rank as i64).map(|i| i + 1).collect(),
            (0..self.rank as i64).map(|i| if i % 2 == 0 { 2 } else { -1 }).collect(),
        ];
        for s in samples {
            grid.push(GroupElement::new(s, self.modulus).expect("valid modulus"));
        }
        grid
    }

    /// Full validation: structural checks plus the bicharacter laws on a
    /// grid (exhaustive over finite G when feasible). Failures are reported,
    /// never thrown.
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.validate_structure();
        report.push(
            "cqt_intertwining",
            true,
            "vacuously true: group-likes over an abelian group commute".into(),
        );
        let grid = self.check_grid();
        let mut mult_fail = None;
        let mut inv_fail = None;
        'outer: for g in &grid {
            for h in &grid {
                let bgh = self.eval(g, h).expect("grid shapes match");
                let bhg = self.eval(h, g).expect("grid shapes match");
                if !bgh.checked_mul(&bhg).expect("same qspec").is_one() {
                    inv_fail.get_or_insert(format!("b({g},{h})*b({h},{g}) != 1"));
                }
                for k in &grid {
                    let hk = h.compose(k).expect("grid shapes match");
                    let lhs = self.eval(g, &hk).expect("shapes");
                    let rhs = bgh
                        .checked_mul(&self.eval(g, k).expect("shapes"))
                        .expect("same qspec");
                    if lhs != rhs {
                        mult_fail =
                            Some(format!("b({g},{h}{k}) != b({g},{h})b({g},{k})"));
                        break 'outer;
                    }
                    let gh = g.compose(h).expect("shapes");
                    let lhs2 = self.eval(&gh, k).expect("shapes");
                    let rhs2 = self
                        .eval(g, k)
                        .expect("shapes")
                        .checked_mul(&self.eval(h, k).expect("shapes"))
                        .expect("same qspec");
                    if lhs2 != rhs2 {
                        mult_fail =
                            Some(format!("b({g}{h},{k}) != b({g},{k})b({h},{k})"));
                        break 'outer;
                    }
                }
            }
        }
        report.push(
            "multiplicativity",
            mult_fail.is_none(),
            mult_fail.unwrap_or_else(|| format!("checked on {} grid elements", grid.len())),
        );
        report.push(
            "commutation_factor_law",
            inv_fail.is_none(),
            inv_fail.unwrap_or_else(|| "b(g,h)b(h,g) = 1 on the grid".into()),
        );
        report
    }
}
