//! Sparse polynomials in the coupling symbols `J` and `λ`.
//!
//! Hamiltonian terms carry coefficients of the form `±scale·J^a·λ^b`; the
//! structure constants and Hessian entries are sums of such monomials. The
//! expansion is run once symbolically and evaluated per parameter point.

use serde::{Deserialize, Serialize};

/// A single coupling monomial `sign·scale·J^j_power·λ^lambda_power`.
///
/// `sign` and `scale` are kept separate in the serialized form; internally
/// the signed coefficient is `coeff()`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CouplingMonomial {
    pub sign: i8,
    pub j_pow: u8,
    pub lam_pow: u8,
    pub scale: f64,
}

impl CouplingMonomial {
    pub fn new(coeff: f64, j_pow: u8, lam_pow: u8) -> Self {
        debug_assert!(coeff.is_finite());
        Self {
            sign: if coeff < 0.0 { -1 } else { 1 },
            j_pow,
            lam_pow,
            scale: coeff.abs(),
        }
    }

    /// Constant term.
    pub fn constant(coeff: f64) -> Self {
        Self::new(coeff, 0, 0)
    }

    /// `coeff·J`
    pub fn j(coeff: f64) -> Self {
        Self::new(coeff, 1, 0)
    }

    /// `coeff·λ`
    pub fn lambda(coeff: f64) -> Self {
        Self::new(coeff, 0, 1)
    }

    pub fn coeff(&self) -> f64 {
        f64::from(self.sign) * self.scale
    }

    pub fn eval(&self, j: f64, lambda: f64) -> f64 {
        self.coeff() * j.powi(i32::from(self.j_pow)) * lambda.powi(i32::from(self.lam_pow))
    }
}

/// Sum of coupling monomials with distinct `(j_pow, lam_pow)` keys, sorted.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MonomialSum {
    terms: Vec<CouplingMonomial>,
}

impl MonomialSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_monomial(m: CouplingMonomial) -> Self {
        let mut s = Self::zero();
        s.add_monomial(m);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[CouplingMonomial] {
        &self.terms
    }

    pub fn add_monomial(&mut self, m: CouplingMonomial) {
        if m.scale == 0.0 {
            return;
        }
        let key = (m.j_pow, m.lam_pow);
        match self.terms.binary_search_by_key(&key, |t| (t.j_pow, t.lam_pow)) {
            Ok(i) => {
                let c = self.terms[i].coeff() + m.coeff();
                if c == 0.0 {
                    self.terms.remove(i);
                } else {
                    self.terms[i] = CouplingMonomial::new(c, m.j_pow, m.lam_pow);
                }
            }
            Err(i) => self.terms.insert(i, m),
        }
    }

    pub fn add_sum(&mut self, other: &MonomialSum) {
        for &m in &other.terms {
            self.add_monomial(m);
        }
    }

    pub fn add_scaled(&mut self, other: &MonomialSum, factor: f64) {
        for &m in &other.terms {
            self.add_monomial(CouplingMonomial::new(m.coeff() * factor, m.j_pow, m.lam_pow));
        }
    }

    /// Accumulate `factor · a · b` into `self`.
    pub fn add_product(&mut self, a: &MonomialSum, b: &MonomialSum, factor: f64) {
        for &ma in &a.terms {
            for &mb in &b.terms {
                self.add_monomial(CouplingMonomial::new(
                    ma.coeff() * mb.coeff() * factor,
                    ma.j_pow + mb.j_pow,
                    ma.lam_pow + mb.lam_pow,
                ));
            }
        }
    }

    pub fn scaled(&self, factor: f64) -> MonomialSum {
        let mut out = MonomialSum::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn eval(&self, j: f64, lambda: f64) -> f64 {
        self.terms.iter().map(|m| m.eval(j, lambda)).sum()
    }

    /// Sign of the lowest-degree monomial (the registry sign convention).
    /// Zero sums report +1.
    pub fn leading_sign(&self) -> f64 {
        match self.terms.first() {
            Some(m) if m.sign < 0 => -1.0,
            _ => 1.0,
        }
    }
}
