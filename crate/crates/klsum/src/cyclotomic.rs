//! Exact arithmetic in Z\[zeta_p\] and the Galois action on Q(zeta_p).
//!
//! A [`CycInt`] stores the coefficients of c_0 + c_1*zeta + ... +
//! c_{p-2}*zeta^{p-2} in the power basis {1, zeta, ..., zeta^{p-2}}, which is
//! a module basis of Z\[zeta_p\]: equality is coefficient equality, so every
//! identity check in the crate reduces to exact vector comparison.
//! Coefficients are unbounded integers throughout; there is no fixed-width
//! fast path.
//!
//! Reduction rule: zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}), zeta^p = 1.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// An element of Z\[zeta_p\] in the power basis, constant coefficient first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CycInt {
    p: u64,
    coeffs: Vec<BigInt>,
}

/// Labels the subfield E_d of Q(zeta_p) fixed by the order-d subgroup of
/// F_p^*; E_d has degree (p-1)/d over Q.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SubfieldLabel {
    p: u64,
    d: u64,
}

impl SubfieldLabel {
    pub fn new(p: u64, d: u64) -> Result<Self> {
        arith::check_prime(p)?;
        if d == 0 || !(p - 1).is_multiple_of(d) {
            return Err(Error::NotADivisor {
                divisor: d,
                of: p - 1,
            });
        }
        Ok(SubfieldLabel { p, d })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The order of the fixing subgroup.
    pub fn d(&self) -> u64 {
        self.d
    }

    /// Degree of E_d over Q.
    pub fn degree(&self) -> u64 {
        (self.p - 1) / self.d
    }

    /// E_{p-1} is Q itself.
    pub fn is_rational(&self) -> bool {
        self.d == self.p - 1
    }
}

impl std::fmt::Display for SubfieldLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "E_{} (degree {})", self.d, self.degree())
    }
}

impl CycInt {
    fn check_order(p: u64) -> Result<()> {
        arith::check_prime(p)
    }

    pub fn zero(p: u64) -> Result<Self> {
        Self::check_order(p)?;
        Ok(CycInt {
            p,
            coeffs: vec![BigInt::zero(); (p - 1) as usize],
        })
    }

    pub fn one(p: u64) -> Result<Self> {
        Self::from_integer(p, 1)
    }

    pub fn from_integer(p: u64, v: impl Into<BigInt>) -> Result<Self> {
        let mut out = Self::zero(p)?;
        out.coeffs[0] = v.into();
        Ok(out)
    }

    /// Canonical representation of zeta^k (k taken mod p).
    pub fn root_power(p: u64, k: u64) -> Result<Self> {
        Self::check_order(p)?;
        let k = (k % p) as usize;
        let mut out = Self::zero(p)?;
        if k == (p - 1) as usize {
            for c in out.coeffs.iter_mut() {
                *c = BigInt::from(-1);
            }
        } else {
            out.coeffs[k] = BigInt::from(1);
        }
        Ok(out)
    }

    /// Builds from canonical power-basis coefficients (length must be p - 1).
    pub fn from_coeffs(p: u64, coeffs: Vec<BigInt>) -> Result<Self> {
        Self::check_order(p)?;
        if coeffs.len() != (p - 1) as usize {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                p - 1,
                coeffs.len()
            )));
        }
        Ok(CycInt { p, coeffs })
    }

    /// Collapses a redundant length-p exponent vector (coefficient of zeta^k
    /// at index k, k = 0..p-1) to the canonical basis.
    pub(crate) fn from_redundant(p: u64, w: &[BigInt]) -> Self {
        debug_assert_eq!(w.len(), p as usize);
        let last = &w[(p - 1) as usize];
        let coeffs = w[..(p - 1) as usize].iter().map(|c| c - last).collect();
        CycInt { p, coeffs }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::OrderMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let p = self.p as usize;
        let mut w = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                w[(i + j) % p] += a * b;
            }
        }
        Ok(Self::from_redundant(self.p, &w))
    }

    /// The Galois automorphism sigma_i: zeta -> zeta^i. Requires i to be a
    /// unit mod p.
    pub fn galois(&self, i: u64) -> Result<Self> {
        if i.is_multiple_of(self.p) {
            return Err(Error::NotAUnit { i, p: self.p });
        }
        let i = i % self.p;
        let p = self.p as usize;
        let mut w = vec![BigInt::zero(); p];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                w[(i as usize * k) % p] += c;
            }
        }
        Ok(Self::from_redundant(self.p, &w))
    }

    /// The subgroup {i in F_p^* : sigma_i(x) = x}, sorted ascending.
    ///
    /// Found by walking the divisor lattice of p - 1 from the top: for each
    /// divisor m it suffices to test one generator of the order-m subgroup,
    /// since fixing by some element of order m implies fixing by all of them.
    pub fn stabilizer(&self) -> Vec<u64> {
        let m = self.stabilizer_order();
        if self.p == 2 {
            return vec![1];
        }
        let g = arith::primitive_root_mod(self.p);
        let gen = arith::mod_pow(g, (self.p - 1) / m, self.p);
        let mut subgroup: Vec<u64> = (0..m).map(|j| arith::mod_pow(gen, j, self.p)).collect();
        subgroup.sort_unstable();
        subgroup
    }

    fn stabilizer_order(&self) -> u64 {
        if self.p == 2 {
            return 1;
        }
        let g = arith::primitive_root_mod(self.p);
        let mut divs = arith::divisors(self.p - 1);
        divs.reverse();
        for m in divs {
            let gen = arith::mod_pow(g, (self.p - 1) / m, self.p);
            if self.galois(gen).expect("generator is a unit") == *self {
                return m;
            }
        }
        unreachable!("sigma_1 always fixes x")
    }

    /// The label d of the exact subfield E_d generated by this element:
    /// d = |stabilizer|, and the degree of the element over Q is (p-1)/d.
    pub fn field_label(&self) -> SubfieldLabel {
        SubfieldLabel {
            p: self.p,
            d: self.stabilizer_order(),
        }
    }

    /// Some(c_0) iff the element is rational, i.e. all higher power-basis
    /// coefficients vanish.
    pub fn rational_value(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Advisory floating-point embedding at zeta = e^{2*pi*i/p}, rounded to
    /// `digits` decimals (clamped to f64 range). Never used in any decision.
    pub fn complex_embed(&self, digits: u32) -> (f64, f64) {
        let digits = digits.clamp(1, 15);
        let theta = 2.0 * std::f64::consts::PI / self.p as f64;
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (k, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            re += c * (theta * k as f64).cos();
            im += c * (theta * k as f64).sin();
        }
        let scale = 10f64.powi(digits as i32);
        ((re * scale).round() / scale, (im * scale).round() / scale)
    }
}

impl std::fmt::Display for CycInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != BigInt::from(1) {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "ζ")?;
                    } else {
                        write!(f, "ζ^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! cyc_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait for &CycInt {
            type Output = CycInt;
            fn $method(self, rhs: &CycInt) -> CycInt {
                self.$checked(rhs).expect("mismatched cyclotomic orders")
            }
        }
    };
}

cyc_binop!(Add, add, checked_add);
cyc_binop!(Sub, sub, checked_sub);
cyc_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(p: u64, coeffs: &[i64]) -> CycInt {
        CycInt::from_coeffs(p, coeffs.iter().map(|&c| BigInt::from(c)).collect()).unwrap()
    }

    #[test]
    fn root_powers() {
        assert_eq!(CycInt::root_power(5, 0).unwrap(), cyc(5, &[1, 0, 0, 0]));
        assert_eq!(CycInt::root_power(5, 1).unwrap(), cyc(5, &[0, 1, 0, 0]));
        assert_eq!(CycInt::root_power(5, 4).unwrap(), cyc(5, &[-1, -1, -1, -1]));
        assert_eq!(
            CycInt::root_power(5, 7).unwrap(),
            CycInt::root_power(5, 2).unwrap()
        );
    }

    #[test]
    fn zeta_times_its_inverse_power() {
        for p in [2u64, 3, 5, 7, 11] {
            let z = CycInt::root_power(p, 1).unwrap();
            let z_rest = CycInt::root_power(p, p - 1).unwrap();
            assert_eq!(z.checked_mul(&z_rest).unwrap(), CycInt::one(p).unwrap());
        }
    }

    #[test]
    fn all_root_powers_sum_to_zero() {
        for p in [2u64, 3, 5, 13] {
            let mut acc = CycInt::zero(p).unwrap();
            for k in 0..p {
                acc = acc.checked_add(&CycInt::root_power(p, k).unwrap()).unwrap();
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn hand_expanded_product() {
        // (1 + zeta)(1 + zeta^4) = 2 + zeta + zeta^4 = 1 - zeta^2 - zeta^3.
        let a = cyc(5, &[1, 1, 0, 0]);
        let b = cyc(5, &[1, 0, 0, 0])
            .checked_add(&CycInt::root_power(5, 4).unwrap())
            .unwrap();
        assert_eq!(a.checked_mul(&b).unwrap(), cyc(5, &[1, 0, -1, -1]));
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let a = CycInt::one(5).unwrap();
        let b = CycInt::one(7).unwrap();
        assert!(matches!(a.checked_add(&b), Err(Error::OrderMismatch(5, 7))));
        assert!(matches!(CycInt::zero(6), Err(Error::NonPrime(6))));
    }

    #[test]
    fn galois_action() {
        let x = cyc(5, &[2, 0, 1, 1]);
        assert_eq!(x.galois(1).unwrap(), x);
        assert_eq!(x.galois(2).unwrap(), cyc(5, &[1, 0, -1, -1]));
        // Rationals are fixed by every automorphism.
        let r = cyc(5, &[7, 0, 0, 0]);
        for i in 1..5 {
            assert_eq!(r.galois(i).unwrap(), r);
        }
        assert!(matches!(x.galois(0), Err(Error::NotAUnit { i: 0, p: 5 })));
        assert!(matches!(x.galois(10), Err(Error::NotAUnit { i: 10, p: 5 })));
    }

    #[test]
    fn stabilizers_and_labels() {
        let rational = cyc(5, &[7, 0, 0, 0]);
        assert_eq!(rational.stabilizer(), vec![1, 2, 3, 4]);
        assert_eq!(rational.field_label().d(), 4);
        assert_eq!(rational.field_label().degree(), 1);
        assert_eq!(rational.rational_value(), Some(BigInt::from(7)));

        let zeta = CycInt::root_power(5, 1).unwrap();
        assert_eq!(zeta.stabilizer(), vec![1]);
        assert_eq!(zeta.field_label().degree(), 4);
        assert_eq!(zeta.rational_value(), None);

        // 2 + zeta^2 + zeta^3 is fixed exactly by {1, 4}.
        let x = cyc(5, &[2, 0, 1, 1]);
        assert_eq!(x.stabilizer(), vec![1, 4]);
        assert_eq!(x.field_label().d(), 2);
        assert_eq!(x.field_label().degree(), 2);
        assert_eq!(x.rational_value(), None);
    }

    #[test]
    fn rationality_examples() {
        assert_eq!(
            cyc(5, &[7, 0, 0, 0]).rational_value(),
            Some(BigInt::from(7))
        );
        assert_eq!(cyc(5, &[0, 1, 0, 0]).rational_value(), None);
        assert_eq!(cyc(5, &[2, 0, 1, 1]).rational_value(), None);
    }

    #[test]
    fn label_validation() {
        assert!(SubfieldLabel::new(5, 2).is_ok());
        assert!(matches!(
            SubfieldLabel::new(5, 3),
            Err(Error::NotADivisor { divisor: 3, of: 4 })
        ));
        let l = SubfieldLabel::new(5, 4).unwrap();
        assert!(l.is_rational());
    }

    #[test]
    fn complex_embedding() {
        let one = CycInt::one(5).unwrap();
        assert_eq!(one.complex_embed(9), (1.0, 0.0));

        let (re, im) = CycInt::root_power(5, 4).unwrap().complex_embed(9);
        let theta = 8.0 * std::f64::consts::PI / 5.0;
        assert!((re - theta.cos()).abs() < 1e-8);
        assert!((im - theta.sin()).abs() < 1e-8);

        let (re, im) = cyc(5, &[2, 0, 1, 1]).complex_embed(6);
        assert!((re - 0.381966).abs() < 1e-5);
        assert_eq!(im, 0.0);
    }

    #[test]
    fn p2_degenerate_ring() {
        // Z[zeta_2] = Z: single-coefficient vectors, zeta = -1.
        let z = CycInt::root_power(2, 1).unwrap();
        assert_eq!(z, cyc(2, &[-1]));
        assert_eq!(z.field_label().d(), 1);
        assert!(z.field_label().is_rational());
        assert_eq!(z.stabilizer(), vec![1]);
    }

    #[test]
    fn display_forms() {
        assert_eq!(cyc(5, &[2, 0, 1, 1]).to_string(), "2 + ζ^2 + ζ^3");
        assert_eq!(cyc(5, &[1, 0, -1, -1]).to_string(), "1 - ζ^2 - ζ^3");
        assert_eq!(cyc(5, &[0, 0, 0, 0]).to_string(), "0");
        assert_eq!(cyc(5, &[-3, 2, 0, 0]).to_string(), "-3 + 2ζ");
    }
}
