//! Exact algebra of N-site Pauli strings in the binary symplectic encoding.
//!
//! A string is a pair of bit masks `(x, z)`: bit `i` of `x` set means site `i`
//! carries an X factor, bit `i` of `z` a Z factor, both set a Y. The canonical
//! Hermitian string is `i^{|x∧z|} X^x Z^z`, so every `PauliString` is Hermitian
//! with no external phase. Site 0 is the least significant bit; up to 128 sites.
//!
//! Operator sums keep real coefficients only. Anti-Hermitian operators (which
//! arise from commutators of Hermitian ones) are stored as the Hermitian
//! operator they equal after division by i, with the factor tracked in
//! [`Hermiticity`]. This keeps the whole downstream linear algebra real.

use crate::error::AgpError;
use std::collections::HashMap;
use std::fmt;

/// Maximum number of sites representable by the `u128` masks.
pub const MAX_SITES: usize = 128;

/// A tensor product of single-site Pauli operators, canonical Hermitian form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    x: u128,
    z: u128,
}

/// Phase of a product of two canonical strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    PlusOne,
    PlusI,
    MinusOne,
    MinusI,
}

impl Phase {
    fn from_exponent(e: u32) -> Self {
        match e % 4 {
            0 => Phase::PlusOne,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }
}

impl PauliString {
    pub fn identity() -> Self {
        Self { x: 0, z: 0 }
    }

    pub fn from_masks(x: u128, z: u128, n_sites: usize) -> Result<Self, AgpError> {
        if n_sites == 0 || n_sites > MAX_SITES {
            return Err(AgpError::TooManySites(n_sites));
        }
        let width = sites_mask(n_sites);
        if x & !width != 0 || z & !width != 0 {
            return Err(AgpError::MaskOutOfRange { n_sites });
        }
        Ok(Self { x, z })
    }

    /// Single-site X at `site`.
    pub fn x_at(site: usize) -> Self {
        Self { x: 1 << site, z: 0 }
    }

    /// Single-site Y at `site`.
    pub fn y_at(site: usize) -> Self {
        Self { x: 1 << site, z: 1 << site }
    }

    /// Single-site Z at `site`.
    pub fn z_at(site: usize) -> Self {
        Self { x: 0, z: 1 << site }
    }

    pub fn x_mask(&self) -> u128 {
        self.x
    }

    pub fn z_mask(&self) -> u128 {
        self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Number of non-identity site factors.
    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Count of sites carrying a plain Z factor.
    pub fn z_count(&self) -> u32 {
        (self.z & !self.x).count_ones()
    }

    /// Count of sites carrying a plain X factor.
    pub fn x_count(&self) -> u32 {
        (self.x & !self.z).count_ones()
    }

    /// Parse a text label, one character per site from `{I, x, y, z}`
    /// (case-insensitive), site 1 leftmost.
    pub fn parse_label(label: &str, n_sites: usize) -> Result<Self, AgpError> {
        if n_sites == 0 || n_sites > MAX_SITES {
            return Err(AgpError::TooManySites(n_sites));
        }
        let chars: Vec<char> = label.chars().collect();
        if chars.len() != n_sites {
            return Err(AgpError::LabelLength {
                label: label.to_string(),
                expected: n_sites,
                got: chars.len(),
            });
        }
        let mut x = 0u128;
        let mut z = 0u128;
        for (i, c) in chars.iter().enumerate() {
            match c.to_ascii_lowercase() {
                'i' => {}
                'x' => x |= 1 << i,
                'y' => {
                    x |= 1 << i;
                    z |= 1 << i;
                }
                'z' => z |= 1 << i,
                other => {
                    return Err(AgpError::LabelChar { ch: other, pos: i });
                }
            }
        }
        Ok(Self { x, z })
    }

    /// Inverse of [`parse_label`](Self::parse_label).
    pub fn to_label(&self, n_sites: usize) -> String {
        (0..n_sites)
            .map(|i| {
                let xb = (self.x >> i) & 1 == 1;
                let zb = (self.z >> i) & 1 == 1;
                match (xb, zb) {
                    (false, false) => 'I',
                    (true, false) => 'x',
                    (true, true) => 'y',
                    (false, true) => 'z',
                }
            })
            .collect()
    }

    /// True when the strings commute: the symplectic form
    /// `x_p·z_q ⊕ z_p·x_q` has even parity.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2 == 0
    }

    /// Product `self·other = phase · r` with `r` canonical Hermitian.
    ///
    /// Associative; `p·p = (+1, identity)` for every `p`.
    pub fn multiply(&self, other: &PauliString) -> (Phase, PauliString) {
        let r = PauliString {
            x: self.x ^ other.x,
            z: self.z ^ other.z,
        };
        // i^{x1·z1} · i^{x2·z2} · (-1)^{z1·x2} = i^e · i^{xr·zr}
        let e = (self.x & self.z).count_ones()
            + (other.x & other.z).count_ones()
            + 2 * (self.z & other.x).count_ones()
            + 3 * (r.x & r.z).count_ones(); // −1 ≡ +3 (mod 4)
        (Phase::from_exponent(e), r)
    }

    /// Commutator of two canonical strings.
    ///
    /// Returns `None` when they commute; otherwise `[p, q] = coeff · i · r`
    /// with `coeff = ±2` real, `r` canonical Hermitian, and the factor `i`
    /// reported through the boolean (always true: the commutator of Hermitian
    /// operators is anti-Hermitian).
    pub fn commutator(&self, other: &PauliString) -> Option<(f64, PauliString, bool)> {
        if self.commutes_with(other) {
            return None;
        }
        let (phase, r) = self.multiply(other);
        // Anticommuting Hermitian strings multiply to ±i times a Hermitian one.
        let coeff = match phase {
            Phase::PlusI => 2.0,
            Phase::MinusI => -2.0,
            _ => unreachable!("anticommuting Hermitian strings have imaginary product phase"),
        };
        Some((coeff, r, true))
    }

    /// Image under a site permutation: site `i` is sent to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> PauliString {
        let mut x = 0u128;
        let mut z = 0u128;
        let mut rest = self.x | self.z;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let t = perm[i];
            x |= ((self.x >> i) & 1) << t;
            z |= ((self.z >> i) & 1) << t;
        }
        PauliString { x, z }
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = 128 - (self.x | self.z | 1).leading_zeros() as usize;
        write!(f, "PauliString({})", self.to_label(n.max(1)))
    }
}

fn sites_mask(n_sites: usize) -> u128 {
    if n_sites >= 128 {
        u128::MAX
    } else {
        (1u128 << n_sites) - 1
    }
}

/// A weighted string, the unit of operator sums.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliTerm {
    pub string: PauliString,
    pub coeff: f64,
}

/// Whether a stored sum represents the Hermitian operator itself or i times it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hermiticity {
    Hermitian,
    /// The represented (anti-Hermitian) operator is `i ×` the stored sum.
    ITimesHermitian,
}

impl Hermiticity {
    fn flipped(self) -> Self {
        match self {
            Hermiticity::Hermitian => Hermiticity::ITimesHermitian,
            Hermiticity::ITimesHermitian => Hermiticity::Hermitian,
        }
    }
}

/// Real-coefficient sum of Pauli strings.
#[derive(Clone, Debug)]
pub struct PauliSum {
    n_sites: usize,
    herm: Hermiticity,
    terms: HashMap<PauliString, f64>,
}

impl PauliSum {
    pub fn new(n_sites: usize, herm: Hermiticity) -> Self {
        Self {
            n_sites,
            herm,
            terms: HashMap::new(),
        }
    }

    pub fn hermitian(n_sites: usize) -> Self {
        Self::new(n_sites, Hermiticity::Hermitian)
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn hermiticity(&self) -> Hermiticity {
        self.herm
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, s: &PauliString) -> f64 {
        self.terms.get(s).copied().unwrap_or(0.0)
    }

    pub fn add_term(&mut self, string: PauliString, coeff: f64) {
        if coeff == 0.0 {
            return;
        }
        let entry = self.terms.entry(string).or_insert(0.0);
        *entry += coeff;
        if *entry == 0.0 {
            self.terms.remove(&string);
        }
    }

    pub fn add_sum(&mut self, other: &PauliSum) -> Result<(), AgpError> {
        self.check_compatible(other)?;
        for (s, c) in &other.terms {
            self.add_term(*s, *c);
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = PauliTerm> + '_ {
        self.terms.iter().map(|(s, c)| PauliTerm {
            string: *s,
            coeff: *c,
        })
    }

    /// Terms in canonical `(x_mask, z_mask)` order.
    pub fn sorted_terms(&self) -> Vec<PauliTerm> {
        let mut v: Vec<PauliTerm> = self.iter().collect();
        v.sort_by_key(|t| t.string);
        v
    }

    fn check_compatible(&self, other: &PauliSum) -> Result<(), AgpError> {
        if self.n_sites != other.n_sites {
            return Err(AgpError::SizeMismatch {
                left: self.n_sites,
                right: other.n_sites,
            });
        }
        if self.herm != other.herm {
            return Err(AgpError::HermiticityMismatch);
        }
        Ok(())
    }
}

/// Commutator `[h, a]` of the represented operators, `h` Hermitian.
///
/// The result's flag is the flip of `a`'s and its coefficients stay real:
/// for Hermitian `a` the stored sum is `−i[h, a]`, for i×Hermitian `a`
/// (`a_op = i·a_stored`) it is `[h, a_op]·(−1) = ... ` worked out so that
/// `result_op = [h_op, a_op]` exactly.
pub fn commutator_sum(h: &PauliSum, a: &PauliSum) -> Result<PauliSum, AgpError> {
    if h.herm != Hermiticity::Hermitian {
        return Err(AgpError::HermiticityMismatch);
    }
    if h.n_sites != a.n_sites {
        return Err(AgpError::SizeMismatch {
            left: h.n_sites,
            right: a.n_sites,
        });
    }
    let sign = match a.herm {
        Hermiticity::Hermitian => 1.0,
        Hermiticity::ITimesHermitian => -1.0,
    };
    let mut out = PauliSum::new(a.n_sites, a.herm.flipped());
    for (p, hp) in &h.terms {
        for (q, aq) in &a.terms {
            if let Some((c, r, _)) = p.commutator(q) {
                out.add_term(r, sign * c * hp * aq);
            }
        }
    }
    Ok(out)
}

/// Normalized trace inner product `Tr[a·b]/2^N` of two stored sums.
///
/// Requires equal hermiticity flags: comparing a Hermitian operator with an
/// i×Hermitian one is a caller bug, not a zero.
pub fn inner_product(a: &PauliSum, b: &PauliSum) -> Result<f64, AgpError> {
    a.check_compatible(b)?;
    let (small, large) = if a.terms.len() <= b.terms.len() {
        (a, b)
    } else {
        (b, a)
    };
    Ok(small
        .terms
        .iter()
        .map(|(s, c)| c * large.coeff(s))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(label: &str) -> PauliString {
        PauliString::parse_label(label, label.len()).unwrap()
    }

    #[test]
    fn parse_label_example() {
        // σ^x_1 σ^z_2 1_3 σ^y_4 == "xzIy"
        let s = PauliString::parse_label("xzIy", 4).unwrap();
        assert_eq!(s.x_mask(), 0b1001);
        assert_eq!(s.z_mask(), 0b1010);
        assert_eq!(s.to_label(4), "xzIy");
        assert!(PauliString::parse_label("IIII", 4).unwrap().is_identity());
        assert!(PauliString::parse_label("xzy", 4).is_err());
        assert!(PauliString::parse_label("xzqy", 4).is_err());
    }

    #[test]
    fn label_round_trip() {
        for label in ["I", "y", "xzIy", "zzzz", "IxIyIz"] {
            let s = p(label);
            assert_eq!(PauliString::parse_label(&s.to_label(label.len()), label.len()).unwrap(), s);
        }
    }

    #[test]
    fn single_site_products() {
        let (x, y, z) = (p("x"), p("y"), p("z"));
        assert_eq!(x.multiply(&y), (Phase::PlusI, z));
        assert_eq!(y.multiply(&x), (Phase::MinusI, z));
        assert_eq!(y.multiply(&z), (Phase::PlusI, x));
        assert_eq!(z.multiply(&x), (Phase::PlusI, y));
        assert_eq!(x.multiply(&z), (Phase::MinusI, y));
        for s in [x, y, z] {
            assert_eq!(s.multiply(&s), (Phase::PlusOne, PauliString::identity()));
        }
    }

    #[test]
    fn two_site_product_example() {
        // (x⊗z)·(z⊗x): per-site phases (−i)(+i) = +1, value y⊗y
        let (ph, r) = p("xz").multiply(&p("zx"));
        assert_eq!(ph, Phase::PlusOne);
        assert_eq!(r, p("yy"));
    }

    #[test]
    fn commutator_basics() {
        // [X, Y] = 2iZ
        let (c, r, flag) = p("x").commutator(&p("y")).unwrap();
        assert_eq!((c, r, flag), (2.0, p("z"), true));
        // two anticommuting site pairs ⇒ global commute
        assert!(p("xx").commutator(&p("zz")).is_none());
        // [Z⊗Z, Y⊗I] = −2i X⊗Z
        let (c, r, _) = p("zz").commutator(&p("yI")).unwrap();
        assert_eq!(r, p("xz"));
        assert_eq!(c, -2.0);
    }

    #[test]
    fn inner_product_bilinear() {
        let mut a = PauliSum::hermitian(2);
        a.add_term(p("xI"), 2.0);
        a.add_term(p("zI"), 3.0);
        let mut b = PauliSum::hermitian(2);
        b.add_term(p("xI"), 1.0);
        b.add_term(p("zI"), -1.0);
        assert_eq!(inner_product(&a, &b).unwrap(), -1.0);
        let mut unit = PauliSum::hermitian(2);
        unit.add_term(p("xI"), 1.0);
        assert_eq!(inner_product(&unit, &unit).unwrap(), 1.0);
        let mut zi = PauliSum::hermitian(2);
        zi.add_term(p("zI"), 1.0);
        assert_eq!(inner_product(&unit, &zi).unwrap(), 0.0);
    }

    #[test]
    fn inner_product_rejects_flag_mismatch() {
        let a = PauliSum::hermitian(2);
        let b = PauliSum::new(2, Hermiticity::ITimesHermitian);
        assert!(matches!(
            inner_product(&a, &b),
            Err(AgpError::HermiticityMismatch)
        ));
    }

    #[test]
    fn commutator_sum_of_zero_is_zero() {
        let mut h = PauliSum::hermitian(2);
        h.add_term(p("zz"), 1.0);
        let zero = PauliSum::hermitian(2);
        let c = commutator_sum(&h, &zero).unwrap();
        assert!(c.is_empty());
        assert_eq!(c.hermiticity(), Hermiticity::ITimesHermitian);
    }

    #[test]
    fn exact_cancellation_drops_strings() {
        // [zz + xx, xI]: the two contributions both land on strings that do
        // not cancel, so instead test cancellation via explicit opposite terms.
        let mut s = PauliSum::hermitian(1);
        s.add_term(p("x"), 1.5);
        s.add_term(p("x"), -1.5);
        assert!(s.is_empty());
    }

    #[test]
    fn permuted_moves_sites() {
        let s = p("yzI");
        let perm = [2usize, 0, 1];
        assert_eq!(s.permuted(&perm).to_label(3), "zIy");
    }
}
