//! Hilbert bases of the linear Diophantine systems behind transvectant
//! candidate generation.
//!
//! For source spaces with form orders `a₁…a_p` and `b₁…b_q`, a candidate
//! joint covariant `(f₁^α₁ ⋯ f_p^α_p, g₁^β₁ ⋯ g_q^β_q)^r` leaves remaining
//! orders `u, v` on each side, so the exponents solve
//!
//! ```text
//! Σ αᵢ aᵢ = u + r,    Σ βⱼ bⱼ = v + r
//! ```
//!
//! over nonnegative integers. Only the finitely many irreducible solutions
//! (those not expressible as a sum of two nonzero solutions) matter; this
//! module enumerates them by incremental completion: grow candidates from
//! unit vectors, extend only along coordinates that move the residual
//! toward zero, and discard anything dominated by a solution already
//! found. The search is complete when the frontier empties; `degree_cap`
//! only bounds runaway growth and hitting it is an error, never a silent
//! truncation. A separate boxed brute-force enumeration serves as an
//! independent completeness check.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiophantineError {
    #[error("a system needs at least one equation over at least one unknown")]
    Empty,
    #[error("equation {index} has {found} coefficients, expected {expected}")]
    ShapeMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error(
        "degree cap {cap} reached with {pending} candidate(s) still open; \
         the solution set is incomplete"
    )]
    Incomplete { cap: u64, pending: usize },
}

/// One equality `lhs · x = rhs · x` with nonnegative coefficients over the
/// shared unknown vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Vec<u64>,
    pub rhs: Vec<u64>,
}

/// A solution vector κ ∈ ℕ^m.
pub type Solution = Vec<u64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiophantineSystem {
    equations: Vec<Equation>,
    unknowns: usize,
}

impl DiophantineSystem {
    pub fn new(equations: Vec<Equation>) -> Result<Self, DiophantineError> {
        let unknowns = equations.first().map_or(0, |eq| eq.lhs.len());
        if unknowns == 0 {
            return Err(DiophantineError::Empty);
        }
        for (index, eq) in equations.iter().enumerate() {
            for side in [&eq.lhs, &eq.rhs] {
                if side.len() != unknowns {
                    return Err(DiophantineError::ShapeMismatch {
                        index,
                        expected: unknowns,
                        found: side.len(),
                    });
                }
            }
        }
        Ok(Self {
            equations,
            unknowns,
        })
    }

    /// The system for joint transvectant candidates, with unknowns laid out
    /// as `(α₁…α_p, β₁…β_q, u, v, r)`.
    pub fn gordan(orders_a: &[u64], orders_b: &[u64]) -> Self {
        let (p, q) = (orders_a.len(), orders_b.len());
        let m = p + q + 3;
        let mut eq1 = Equation {
            lhs: vec![0; m],
            rhs: vec![0; m],
        };
        let mut eq2 = eq1.clone();
        eq1.lhs[..p].copy_from_slice(orders_a);
        eq1.rhs[p + q] = 1; // u
        eq1.rhs[p + q + 2] = 1; // r
        eq2.lhs[p..p + q].copy_from_slice(orders_b);
        eq2.rhs[p + q + 1] = 1; // v
        eq2.rhs[p + q + 2] = 1; // r
        Self {
            equations: vec![eq1, eq2],
            unknowns: m,
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn satisfies(&self, x: &[u64]) -> bool {
        x.len() == self.unknowns
            && self.equations.iter().all(|eq| {
                let dot = |side: &[u64]| -> u128 {
                    side.iter()
                        .zip(x)
                        .map(|(&c, &v)| u128::from(c) * u128::from(v))
                        .sum()
                };
                dot(&eq.lhs) == dot(&eq.rhs)
            })
    }

    /// Signed column i of the homogenized system `(lhs − rhs) · x = 0`.
    fn column(&self, i: usize) -> Vec<i128> {
        self.equations
            .iter()
            .map(|eq| i128::from(eq.lhs[i]) - i128::from(eq.rhs[i]))
            .collect()
    }

    /// The complete set of irreducible solutions, sorted lexicographically.
    ///
    /// `degree_cap` bounds the total degree `Σ xᵢ` the search may explore;
    /// if candidates are still open past the cap the result is
    /// [`DiophantineError::Incomplete`].
    pub fn irreducible_solutions(&self, degree_cap: u64) -> Result<Vec<Solution>, DiophantineError> {
        let m = self.unknowns;
        let cols: Vec<Vec<i128>> = (0..m).map(|i| self.column(i)).collect();
        let residual = |x: &[u64]| -> Vec<i128> {
            let mut res = vec![0i128; self.equations.len()];
            for (i, &v) in x.iter().enumerate() {
                if v != 0 {
                    for (r, c) in res.iter_mut().zip(&cols[i]) {
                        *r += c * i128::from(v);
                    }
                }
            }
            res
        };

        let mut basis: Vec<Solution> = Vec::new();
        let mut frontier: Vec<Solution> = (0..m)
            .map(|i| {
                let mut e = vec![0u64; m];
                e[i] = 1;
                e
            })
            .collect();
        let mut degree = 1u64;

        while !frontier.is_empty() {
            if degree > degree_cap {
                return Err(DiophantineError::Incomplete {
                    cap: degree_cap,
                    pending: frontier.len(),
                });
            }
            let mut open: Vec<(Solution, Vec<i128>)> = Vec::new();
            for t in frontier.drain(..) {
                let res = residual(&t);
                if res.iter().all(|&r| r == 0) {
                    basis.push(t);
                } else {
                    open.push((t, res));
                }
            }
            let mut next: Vec<Solution> = Vec::new();
            for (t, res) in &open {
                for i in 0..m {
                    let slope: i128 = res.iter().zip(&cols[i]).map(|(&r, &c)| r * c).sum();
                    if slope < 0 {
                        let mut c = t.clone();
                        c[i] += 1;
                        if !basis.iter().any(|b| dominates(&c, b)) {
                            next.push(c);
                        }
                    }
                }
            }
            next.sort_unstable();
            next.dedup();
            frontier = next;
            degree += 1;
        }

        basis.sort_unstable();
        for sol in &basis {
            assert!(self.satisfies(sol), "enumerated vector fails the system");
        }
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                assert!(
                    i == j || !dominates(a, b),
                    "enumerated solutions are not pairwise irreducible"
                );
            }
        }
        Ok(basis)
    }

    /// Independent completeness check: all irreducible solutions whose
    /// components are ≤ `bound`, found by exhaustive enumeration of the box.
    /// Any solution dominated within the box is dominated by a boxed
    /// solution, so this equals the true basis intersected with the box.
    pub fn brute_force_irreducible(&self, bound: u64) -> Vec<Solution> {
        let m = self.unknowns;
        let mut all: Vec<Solution> = Vec::new();
        let mut x = vec![0u64; m];
        loop {
            // Odometer step.
            let mut i = 0;
            while i < m {
                if x[i] < bound {
                    x[i] += 1;
                    break;
                }
                x[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
            if self.satisfies(&x) {
                all.push(x.clone());
            }
        }
        let mut minimal: Vec<Solution> = all
            .iter()
            .filter(|s| !all.iter().any(|o| o != *s && dominates(s, o)))
            .cloned()
            .collect();
        minimal.sort_unstable();
        minimal
    }
}

fn dominates(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// A transvectant candidate `(f^α, g^β)^r` read off one irreducible
/// solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateTransvectant {
    pub alpha: Vec<u64>,
    pub beta: Vec<u64>,
    pub r: u64,
}

/// One candidate per irreducible solution of the system for the given form
/// orders. Each satisfies `Σ αᵢaᵢ ≥ r` and `Σ βⱼbⱼ ≥ r`, so the named
/// transvectant is not identically zero for order reasons.
pub fn candidate_transvectants(
    orders_a: &[u64],
    orders_b: &[u64],
    degree_cap: u64,
) -> Result<Vec<CandidateTransvectant>, DiophantineError> {
    let (p, q) = (orders_a.len(), orders_b.len());
    let system = DiophantineSystem::gordan(orders_a, orders_b);
    let solutions = system.irreducible_solutions(degree_cap)?;
    Ok(solutions
        .into_iter()
        .map(|kappa| {
            let candidate = CandidateTransvectant {
                alpha: kappa[..p].to_vec(),
                beta: kappa[p..p + q].to_vec(),
                r: kappa[p + q + 2],
            };
            let weight = |exps: &[u64], orders: &[u64]| -> u64 {
                exps.iter().zip(orders).map(|(&e, &o)| e * o).sum()
            };
            assert!(weight(&candidate.alpha, orders_a) >= candidate.r);
            assert!(weight(&candidate.beta, orders_b) >= candidate.r);
            candidate
        })
        .collect())
}
