//! Construction of and arithmetic in small finite fields F_{p^r}.
//!
//! A [`FieldSpec`] pins a fully deterministic realization of F_{p^r}: the
//! modulus is the monic irreducible of degree r whose non-leading
//! coefficients form the smallest base-p integer, and the primitive element
//! is the one with the smallest base-p encoding among all generators of
//! F_{p^r}^*. Two runs therefore produce bit-identical tables.
//!
//! Elements live in the polynomial basis over F_p, constant term first.
//! All operations are pure reads of immutable tables once a `FieldSpec` is
//! built, so one can be shared freely across threads.

use std::collections::HashMap;

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};

/// Default refusal threshold on q - 1. Exhaustive tables stay exact and
/// cheap below this; raise it explicitly if you know what you are doing.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 24;

/// Below this size both the exponent table and the discrete-log table are
/// precomputed in full; above it discrete logs fall back to
/// baby-step/giant-step.
pub const FULL_TABLE_LIMIT: u64 = 1 << 20;

/// An element of F_{p^r} in the polynomial basis, constant term first.
///
/// Plain data: validation against a concrete field happens in the
/// [`FieldSpec`] operations.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

// Order by the base-p integer encoding: most significant coefficient last,
// so compare reversed coefficient sequences.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical JSON description of a field realization.
#[derive(Serialize)]
pub struct FieldDescription {
    pub p: u64,
    pub r: u32,
    pub modulus: Vec<u64>,
    pub gamma: Vec<u64>,
}

struct Bsgs {
    step: u64,
    baby: HashMap<u64, u32>,
    giant: FieldElement, // gamma^{-step}
}

/// A concrete realization of F_{p^r} with precomputed tables.
pub struct FieldSpec {
    p: u64,
    r: u32,
    q: u64,
    modulus: Vec<u64>,
    gamma: FieldElement,
    trace_basis: Vec<u64>,
    qm1_prime_factors: Vec<u64>,
    exp_table: Option<Vec<u32>>,
    dlog_table: Option<Vec<u32>>,
    bsgs: Option<Bsgs>,
}

impl FieldSpec {
    /// Builds F_{p^r} under the default size cap.
    pub fn new(p: u64, r: u32) -> Result<Self> {
        Self::with_cap(p, r, DEFAULT_FIELD_CAP)
    }

    /// Builds F_{p^r}, refusing when q - 1 exceeds `cap`.
    pub fn with_cap(p: u64, r: u32, cap: u64) -> Result<Self> {
        arith::check_prime(p)?;
        if r < 1 {
            return Err(Error::InvalidArgument(
                "extension degree r must be >= 1".into(),
            ));
        }
        let q_big = (p as u128).checked_pow(r).ok_or(Error::FieldCapExceeded {
            q_minus_one: u128::MAX,
            cap,
        })?;
        if q_big - 1 > cap as u128 {
            return Err(Error::FieldCapExceeded {
                q_minus_one: q_big - 1,
                cap,
            });
        }
        let q = q_big as u64;

        let modulus = if r == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, r)
        };
        let mut field = FieldSpec {
            p,
            r,
            q,
            modulus,
            gamma: FieldElement {
                coeffs: vec![0; r as usize],
            },
            trace_basis: Vec::new(),
            qm1_prime_factors: arith::distinct_prime_factors(q - 1),
            exp_table: None,
            dlog_table: None,
            bsgs: None,
        };

        field.trace_basis = (0..r as usize)
            .map(|i| {
                let mut b = vec![0u64; r as usize];
                b[i] = 1;
                let t = field.trace_coeffs(&b);
                debug_assert!(t < p);
                t
            })
            .collect();

        field.gamma = field.find_primitive_element()?;
        if q <= FULL_TABLE_LIMIT {
            field.build_full_tables();
        } else {
            field.build_bsgs();
        }
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Monic modulus polynomial, constant term first (length r + 1).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The distinguished primitive element of F_{p^r}^*.
    pub fn gamma(&self) -> &FieldElement {
        &self.gamma
    }

    pub fn describe(&self) -> FieldDescription {
        FieldDescription {
            p: self.p,
            r: self.r,
            modulus: self.modulus.clone(),
            gamma: self.gamma.coeffs.clone(),
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.r as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_prime_field(1)
    }

    /// Embeds a residue of F_p as a constant polynomial.
    pub fn from_prime_field(&self, c: u64) -> FieldElement {
        let mut coeffs = vec![0u64; self.r as usize];
        coeffs[0] = c % self.p;
        FieldElement { coeffs }
    }

    /// Builds an element from coefficients (reduced mod p). The length must
    /// be exactly r.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.r as usize {
            return Err(Error::WrongField);
        }
        Ok(FieldElement {
            coeffs: coeffs.iter().map(|&c| c % self.p).collect(),
        })
    }

    fn check_member(&self, a: &FieldElement) -> Result<()> {
        if a.coeffs.len() != self.r as usize || a.coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::WrongField);
        }
        Ok(())
    }

    /// Base-p integer encoding of an element; a bijection onto [0, q).
    pub fn element_index(&self, a: &FieldElement) -> u64 {
        a.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn element_from_index(&self, mut idx: u64) -> Result<FieldElement> {
        if idx >= self.q {
            return Err(Error::WrongField);
        }
        let mut coeffs = vec![0u64; self.r as usize];
        for c in coeffs.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        Ok(FieldElement { coeffs })
    }

    /// Iterates every element of the field in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|i| self.element_from_index(i).expect("index in range"))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check_member(a)?;
        self.check_member(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        Ok(FieldElement { coeffs })
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check_member(a)?;
        self.check_member(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        Ok(FieldElement { coeffs })
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement> {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(FieldElement {
            coeffs: self.mul_coeffs(&a.coeffs, &b.coeffs),
        })
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check_member(a)?;
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        // q - 2 = 0 only for q = 2, where a = 1 and pow gives one.
        self.pow(a, self.q - 2)
    }

    /// `a^k` by binary exponentiation. `pow(0, 0)` is 1 (empty product).
    pub fn pow(&self, a: &FieldElement, mut k: u64) -> Result<FieldElement> {
        self.check_member(a)?;
        let mut acc = self.one();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = FieldElement {
                    coeffs: self.mul_coeffs(&acc.coeffs, &base.coeffs),
                };
            }
            base = FieldElement {
                coeffs: self.mul_coeffs(&base.coeffs, &base.coeffs),
            };
            k >>= 1;
        }
        Ok(acc)
    }

    /// `a^k` for an exponent of any size and sign. For a nonzero base the
    /// exponent is reduced mod q - 1; negative exponents invert.
    pub fn pow_int(&self, a: &FieldElement, k: &num_bigint::BigInt) -> Result<FieldElement> {
        use num_bigint::BigInt;
        use num_traits::{Signed, Zero};
        self.check_member(a)?;
        if a.is_zero() {
            return if k.is_zero() {
                Ok(self.one())
            } else if k.is_negative() {
                Err(Error::ZeroInverse)
            } else {
                Ok(self.zero())
            };
        }
        let modulus = BigInt::from(self.q - 1);
        let reduced = ((k % &modulus) + &modulus) % &modulus;
        let (_, digits) = reduced.to_u64_digits();
        let exp = digits.first().copied().unwrap_or(0);
        self.pow(a, exp)
    }

    /// The absolute trace Tr(a) = a + a^p + ... + a^{p^{r-1}} as a residue
    /// mod p, computed by F_p-linearity from precomputed basis traces.
    pub fn absolute_trace(&self, a: &FieldElement) -> Result<u64> {
        self.check_member(a)?;
        Ok(self.trace_slice(&a.coeffs))
    }

    pub(crate) fn trace_slice(&self, coeffs: &[u64]) -> u64 {
        let mut acc = 0u128;
        for (c, t) in coeffs.iter().zip(&self.trace_basis) {
            acc += (*c as u128) * (*t as u128);
        }
        (acc % self.p as u128) as u64
    }

    /// Trace of a basis polynomial computed from the defining Frobenius sum.
    /// Only used during construction, before `trace_basis` exists.
    fn trace_coeffs(&self, b: &[u64]) -> u64 {
        let mut acc = b.to_vec();
        let mut cur = b.to_vec();
        for _ in 1..self.r {
            cur = self.pow_coeffs(&cur, self.p);
            for (x, y) in acc.iter_mut().zip(&cur) {
                *x = (*x + *y) % self.p;
            }
        }
        debug_assert!(acc[1..].iter().all(|&c| c == 0), "trace must land in F_p");
        acc[0]
    }

    /// The Frobenius map a -> a^p.
    pub fn frobenius(&self, a: &FieldElement) -> Result<FieldElement> {
        self.pow(a, self.p)
    }

    /// `a^{p^t}`: t-fold Frobenius.
    pub fn frobenius_power(&self, a: &FieldElement, t: u32) -> Result<FieldElement> {
        self.check_member(a)?;
        let mut cur = a.clone();
        for _ in 0..(t % self.r.max(1)) {
            cur = self.frobenius(&cur)?;
        }
        Ok(cur)
    }

    /// The Frobenius orbit {a, a^p, a^{p^2}, ...} sorted by element index.
    pub fn frobenius_orbit(&self, a: &FieldElement) -> Result<Vec<FieldElement>> {
        self.check_member(a)?;
        let mut orbit = vec![a.clone()];
        let mut cur = self.frobenius(a)?;
        while &cur != a {
            orbit.push(cur.clone());
            cur = self.frobenius(&cur)?;
        }
        orbit.sort();
        Ok(orbit)
    }

    /// True iff a lies in the subfield F_{p^t}, i.e. a^{p^t} = a.
    /// Requires t | r.
    pub fn subfield_membership(&self, a: &FieldElement, t: u32) -> Result<bool> {
        if t == 0 || !self.r.is_multiple_of(t) {
            return Err(Error::NotADivisor {
                divisor: t as u64,
                of: self.r as u64,
            });
        }
        Ok(self.frobenius_power(a, t)? == *a)
    }

    /// The relative trace from F_{p^{et}} down to F_{p^t}:
    /// a + a^{p^t} + ... + a^{p^{t(e-1)}}. Requires e*t | r and a in F_{p^{et}}.
    pub fn relative_trace(&self, a: &FieldElement, e: u32, t: u32) -> Result<FieldElement> {
        if e == 0 || t == 0 {
            return Err(Error::InvalidArgument(
                "relative trace needs e, t >= 1".into(),
            ));
        }
        let et = e
            .checked_mul(t)
            .ok_or_else(|| Error::InvalidArgument("tower degree e*t overflows".into()))?;
        if !self.r.is_multiple_of(et) {
            return Err(Error::NotADivisor {
                divisor: et as u64,
                of: self.r as u64,
            });
        }
        if !self.subfield_membership(a, et)? {
            return Err(Error::OutsideSubfield { degree: et });
        }
        let mut acc = a.clone();
        let mut cur = a.clone();
        for _ in 1..e {
            cur = self.frobenius_power(&cur, t)?;
            acc = self.add(&acc, &cur)?;
        }
        debug_assert!(self.subfield_membership(&acc, t).unwrap());
        Ok(acc)
    }

    /// The canonical generator of F_{p^t}^*: gamma^{(q-1)/(p^t-1)}.
    pub fn subfield_generator(&self, t: u32) -> Result<FieldElement> {
        if t == 0 || !self.r.is_multiple_of(t) {
            return Err(Error::NotADivisor {
                divisor: t as u64,
                of: self.r as u64,
            });
        }
        let sub_order = self.p.pow(t) - 1;
        self.pow(&self.gamma, (self.q - 1) / sub_order)
    }

    /// gamma^k for any k (reduced mod q - 1).
    pub fn gamma_pow(&self, k: u64) -> FieldElement {
        let k = k % (self.q - 1).max(1);
        if let Some(exp) = &self.exp_table {
            return self
                .element_from_index(exp[k as usize] as u64)
                .expect("table index in range");
        }
        self.pow(&self.gamma, k).expect("gamma is a member")
    }

    /// The unique exponent x in [0, q-2] with gamma^x = a.
    pub fn discrete_log(&self, a: &FieldElement) -> Result<u64> {
        self.check_member(a)?;
        if a.is_zero() {
            return Err(Error::ZeroDiscreteLog);
        }
        if let Some(table) = &self.dlog_table {
            return Ok(table[self.element_index(a) as usize] as u64);
        }
        let bsgs = self.bsgs.as_ref().expect("either table or bsgs present");
        let mut y = a.clone();
        let span = (self.q - 1).div_ceil(bsgs.step);
        for i in 0..span {
            if let Some(&j) = bsgs.baby.get(&self.element_index(&y)) {
                return Ok((i * bsgs.step + j as u64) % (self.q - 1));
            }
            y = self.mul(&y, &bsgs.giant)?;
        }
        unreachable!("gamma generates F_q^*, so every nonzero element has a log")
    }

    // ---- internal construction helpers ------------------------------------

    fn mul_coeffs(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        poly_mul_mod(a, b, &self.modulus, self.p)
    }

    fn pow_coeffs(&self, a: &[u64], mut k: u64) -> Vec<u64> {
        let mut acc = vec![0u64; self.r as usize];
        acc[0] = 1;
        let mut base = a.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_coeffs(&acc, &base);
            }
            base = self.mul_coeffs(&base, &base);
            k >>= 1;
        }
        acc
    }

    fn find_primitive_element(&self) -> Result<FieldElement> {
        let qm1 = self.q - 1;
        for idx in 1..self.q {
            let a = self.element_from_index(idx)?;
            let primitive = self.qm1_prime_factors.iter().all(|&l| {
                self.pow(&a, qm1 / l)
                    .map(|b| b != self.one())
                    .unwrap_or(false)
            });
            if primitive {
                return Ok(a);
            }
        }
        unreachable!("F_q^* is cyclic, so a generator exists")
    }

    fn build_full_tables(&mut self) {
        let qm1 = (self.q - 1) as usize;
        let mut exp = vec![0u32; qm1];
        let mut dlog = vec![u32::MAX; self.q as usize];
        let mut cur = self.one();
        for (k, slot) in exp.iter_mut().enumerate() {
            let idx = self.element_index(&cur);
            *slot = idx as u32;
            dlog[idx as usize] = k as u32;
            cur = FieldElement {
                coeffs: self.mul_coeffs(&cur.coeffs, &self.gamma.coeffs),
            };
        }
        debug_assert_eq!(cur, self.one(), "gamma order must be exactly q - 1");
        self.exp_table = Some(exp);
        self.dlog_table = Some(dlog);
    }

    fn build_bsgs(&mut self) {
        let qm1 = self.q - 1;
        let step = (qm1 as f64).sqrt().ceil() as u64;
        let mut baby = HashMap::with_capacity(step as usize);
        let mut cur = self.one();
        for j in 0..step {
            baby.entry(self.element_index(&cur)).or_insert(j as u32);
            cur = FieldElement {
                coeffs: self.mul_coeffs(&cur.coeffs, &self.gamma.coeffs),
            };
        }
        let giant = self
            .inv(&self.pow(&self.gamma, step).expect("member"))
            .expect("gamma^step is nonzero");
        self.bsgs = Some(Bsgs { step, baby, giant });
    }
}

/// Schoolbook multiplication of two length-r coefficient vectors followed by
/// reduction modulo the monic `modulus` (length r + 1), all over F_p.
fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let r = modulus.len() - 1;
    if r == 1 {
        // Modulus is x: elements are constants.
        return vec![a[0] * b[0] % p];
    }
    let mut w = vec![0u128; 2 * r - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            w[i + j] += ai as u128 * bj as u128;
        }
    }
    for i in (r..2 * r - 1).rev() {
        let c = w[i] % p as u128;
        if c != 0 {
            // Subtract c * modulus * x^{i-r}; stay nonnegative by adding
            // c * (p - m_j) instead.
            for j in 0..r {
                w[i - r + j] += c * ((p - modulus[j] % p) % p) as u128;
            }
        }
        w[i] = 0;
    }
    w[..r].iter().map(|&x| (x % p as u128) as u64).collect()
}

/// The monic irreducible of degree r over F_p whose non-leading coefficient
/// vector encodes the smallest base-p integer.
fn smallest_irreducible(p: u64, r: u32) -> Vec<u64> {
    let r = r as usize;
    let total = (p as u128).pow(r as u32);
    let mut code = 0u128;
    while code < total {
        let mut poly = Vec::with_capacity(r + 1);
        let mut c = code;
        for _ in 0..r {
            poly.push((c % p as u128) as u64);
            c /= p as u128;
        }
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
        code += 1;
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

/// Rabin's irreducibility test for a monic polynomial f of degree r over F_p:
/// f is irreducible iff x^{p^r} = x (mod f) and gcd(x^{p^{r/l}} - x, f) = 1
/// for every prime l | r.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let r = (f.len() - 1) as u32;
    if r == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let checkpoints: Vec<u32> = arith::distinct_prime_factors(r as u64)
        .iter()
        .map(|&l| r / l as u32)
        .collect();
    let mut cur = mod_poly(&x, f, p);
    let mut reached = 0u32;
    let mut targets = checkpoints.clone();
    targets.push(r);
    targets.sort_unstable();
    targets.dedup();
    for &stop in &targets {
        while reached < stop {
            cur = poly_powmod(&cur, p, f, p);
            reached += 1;
        }
        if stop == r {
            // x^{p^r} must equal x
            if mod_poly_eq(&cur, &x, f, p) {
                continue;
            }
            return false;
        }
        // gcd(x^{p^{stop}} - x, f) must be 1
        let diff = poly_sub(&cur, &x, p);
        let g = poly_gcd(f, &diff, p);
        if poly_degree(&g) != 0 {
            return false;
        }
    }
    true
}

fn poly_degree(a: &[u64]) -> usize {
    a.iter().rposition(|&c| c != 0).unwrap_or(0)
}

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    poly_trim(out)
}

fn mod_poly(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let df = poly_degree(f);
    let mut a = poly_trim(a.to_vec());
    loop {
        let da = poly_degree(&a);
        if da < df || a.iter().all(|&c| c == 0) {
            return poly_trim(a);
        }
        let inv = arith::mod_inverse(f[df], p).expect("unit leading coefficient");
        let c = a[da] * inv % p;
        for (j, &fj) in f.iter().enumerate().take(df + 1) {
            let idx = da - df + j;
            a[idx] = (a[idx] + p - c * fj % p) % p;
        }
        a = poly_trim(a);
    }
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut w = vec![0u128; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            w[i + j] += ai as u128 * bj as u128;
        }
    }
    poly_trim(w.iter().map(|&x| (x % p as u128) as u64).collect())
}

fn poly_powmod(a: &[u64], mut k: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = mod_poly(a, f, p);
    while k > 0 {
        if k & 1 == 1 {
            acc = mod_poly(&poly_mul(&acc, &base, p), f, p);
        }
        base = mod_poly(&poly_mul(&base, &base, p), f, p);
        k >>= 1;
    }
    acc
}

fn mod_poly_eq(a: &[u64], b: &[u64], f: &[u64], p: u64) -> bool {
    mod_poly(&poly_sub(a, b, p), f, p).iter().all(|&c| c == 0)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while b.iter().any(|&c| c != 0) {
        let rem = mod_poly(&a, &b, p);
        a = b;
        b = rem;
    }
    a
}
