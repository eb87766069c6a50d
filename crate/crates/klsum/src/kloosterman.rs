//! Exact n-dimensional Kloosterman sums over F_q.
//!
//! Two evaluation routes: [`kloosterman_direct`] enumerates the defining sum
//! term by term (the oracle, capped), and [`kloosterman_sweep`] computes the
//! whole table a -> Kl_n(q, a) by staging the convolution
//!
//!   T_0(a) = psi(a),   T_m(a) = sum over x in F_q^* of psi(x) T_{m-1}(a/x),
//!
//! so that Kl_n(q, a) = T_n(a) after n levels, O(n q^2) ring operations in
//! total. The two routes agree entry for entry wherever the direct cap
//! allows, which is the sweep's correctness oracle.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::cyclotomic::CycInt;
use crate::error::{Error, Result};
use crate::finite_field::{FieldElement, FieldSpec};

/// Default cap on the number of character terms a single direct evaluation
/// may enumerate.
pub const DEFAULT_TERM_CAP: u64 = 100_000_000;

/// The canonical additive character psi(a) = zeta_p^{Tr(a)}.
pub fn psi(field: &FieldSpec, a: &FieldElement) -> Result<CycInt> {
    CycInt::root_power(field.p(), field.absolute_trace(a)?)
}

/// The full value table of Kl_n(q, .) for one field, keyed by the discrete
/// log of the point; the a = 0 entry is stored separately.
pub struct KlTable {
    p: u64,
    r: u32,
    q: u64,
    n: u32,
    zero: CycInt,
    by_dlog: Vec<CycInt>,
}

impl KlTable {
    pub fn from_parts(p: u64, r: u32, n: u32, zero: CycInt, by_dlog: Vec<CycInt>) -> Result<Self> {
        crate::arith::check_prime(p)?;
        let q = (p as u128).pow(r);
        if q > u64::MAX as u128 {
            return Err(Error::InvalidArgument("q overflows u64".into()));
        }
        let q = q as u64;
        if by_dlog.len() as u64 != q - 1 {
            return Err(Error::InvalidArgument(format!(
                "table must have q - 1 = {} nonzero entries, got {}",
                q - 1,
                by_dlog.len()
            )));
        }
        if zero.p() != p || by_dlog.iter().any(|v| v.p() != p) {
            return Err(Error::OrderMismatch(p, zero.p()));
        }
        Ok(KlTable {
            p,
            r,
            q,
            n,
            zero,
            by_dlog,
        })
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

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The value at a = 0: always (-1)^n.
    pub fn zero_value(&self) -> &CycInt {
        &self.zero
    }

    /// Values at the nonzero points in discrete-log order.
    pub fn by_dlog(&self) -> &[CycInt] {
        &self.by_dlog
    }

    /// Value at a = gamma^x (x reduced mod q - 1).
    pub fn value_at_dlog(&self, x: u64) -> &CycInt {
        &self.by_dlog[(x % (self.q - 1)) as usize]
    }

    /// Value at an arbitrary point of the matching field.
    pub fn value(&self, field: &FieldSpec, a: &FieldElement) -> Result<&CycInt> {
        if !self.compatible_with(field) {
            return Err(Error::WrongField);
        }
        if a.is_zero() {
            return Ok(&self.zero);
        }
        Ok(self.value_at_dlog(field.discrete_log(a)?))
    }

    pub fn compatible_with(&self, field: &FieldSpec) -> bool {
        self.p == field.p() && self.r == field.r()
    }
}

/// Kl_n(q, a) summed directly from the definition over all (q-1)^n tuples of
/// nonzero elements. Refuses if the term count exceeds `term_cap`.
pub fn kloosterman_direct(
    field: &FieldSpec,
    n: u32,
    a: &FieldElement,
    term_cap: u64,
) -> Result<CycInt> {
    if n < 1 {
        return Err(Error::InvalidArgument("dimension n must be >= 1".into()));
    }
    let p = field.p();
    let q = field.q();
    let qm1 = q - 1;
    let terms = (qm1 as u128).pow(n);
    if terms > term_cap as u128 {
        return Err(Error::TermCapExceeded {
            terms,
            cap: term_cap,
        });
    }
    // Residue-class counting: every term contributes one p-th root of unity,
    // so tally Tr(x_1 + ... + x_n + a/(x_1...x_n)) per residue and reduce at
    // the end. The odometer walks tuples in gamma-power order; each digit
    // change multiplies the tuple product by gamma, so a/(x_1...x_n) just
    // picks up one factor gamma^{-1} per changed digit.
    let n_us = n as usize;
    let r_us = field.r() as usize;
    let gamma = field.gamma().clone();
    let gamma_inv = field.inv(&gamma)?;
    let a_is_zero = a.is_zero();
    let mut a_over_prod = a.clone();
    field.absolute_trace(a)?; // membership check
    let mut coords: Vec<FieldElement> = vec![field.one(); n_us];
    let mut digits = vec![0u64; n_us];
    let mut sum: Vec<u64> = vec![0; r_us];
    sum[0] = n as u64 % p;
    let mut counts = vec![0u64; p as usize];

    let mut remaining = terms;
    loop {
        let t = if a_is_zero {
            field.trace_slice(&sum)
        } else {
            let shifted: Vec<u64> = sum
                .iter()
                .zip(a_over_prod.coeffs())
                .map(|(&s, &c)| (s + c) % p)
                .collect();
            field.trace_slice(&shifted)
        };
        counts[t as usize] += 1;
        remaining -= 1;
        if remaining == 0 {
            break;
        }
        // Advance the odometer.
        let mut pos = 0;
        loop {
            let old = coords[pos].clone();
            digits[pos] += 1;
            let wrapped = digits[pos] == qm1;
            let new = if wrapped {
                digits[pos] = 0;
                field.one()
            } else {
                field.mul(&old, &gamma)?
            };
            for ((s, o), w) in sum.iter_mut().zip(old.coeffs()).zip(new.coeffs()) {
                *s = (*s + p - o + w) % p;
            }
            coords[pos] = new;
            // Either way the tuple product gained a factor gamma.
            if !a_is_zero {
                a_over_prod = field.mul(&a_over_prod, &gamma_inv)?;
            }
            if wrapped {
                pos += 1;
            } else {
                break;
            }
        }
    }

    let redundant: Vec<BigInt> = counts.into_iter().map(BigInt::from).collect();
    Ok(CycInt::from_redundant(p, &redundant))
}

/// Computes the complete table a -> Kl_n(q, a) by the staged convolution.
pub fn kloosterman_sweep(field: &FieldSpec, n: u32) -> Result<KlTable> {
    if n < 1 {
        return Err(Error::InvalidArgument("dimension n must be >= 1".into()));
    }
    let p = field.p() as usize;
    let q = field.q();
    let qm1 = (q - 1) as usize;

    // Traces of gamma powers, walked once.
    let mut tr_exp = vec![0usize; qm1];
    let mut cur = field.one();
    for slot in tr_exp.iter_mut() {
        *slot = field.absolute_trace(&cur)? as usize;
        cur = field.mul(&cur, field.gamma())?;
    }

    let unit = |k: usize| {
        let mut v = vec![BigInt::zero(); p];
        v[k] = BigInt::one();
        v
    };

    // T_0 in the redundant exponent basis (length p per slot).
    let mut slots: Vec<Vec<BigInt>> = (0..qm1).map(|j| unit(tr_exp[j])).collect();
    let mut zero_slot = unit(0);

    for _ in 0..n {
        let mut next = vec![vec![BigInt::zero(); p]; qm1];
        let mut next_zero = vec![BigInt::zero(); p];
        for k in 0..qm1 {
            let t = tr_exp[k];
            for c in 0..p {
                next_zero[(c + t) % p] += &zero_slot[c];
            }
            for (j, dst) in next.iter_mut().enumerate() {
                let src = &slots[(j + qm1 - k) % qm1];
                for c in 0..p {
                    dst[(c + t) % p] += &src[c];
                }
            }
        }
        slots = next;
        zero_slot = next_zero;
    }

    let by_dlog = slots
        .iter()
        .map(|w| CycInt::from_redundant(field.p(), w))
        .collect();
    KlTable::from_parts(
        field.p(),
        field.r(),
        n,
        CycInt::from_redundant(field.p(), &zero_slot),
        by_dlog,
    )
}

/// Outcome of the exhaustive value-distinctness check over F_q^*: holds
/// means equal values only ever occur at Frobenius-conjugate points.
#[derive(Clone, Debug)]
pub struct DistinctnessReport {
    pub holds: bool,
    /// One pair per unordered pair of distinct Frobenius orbits sharing a
    /// value, identified by their smallest discrete logs, ascending.
    pub violations: Vec<(u64, u64)>,
}

/// Checks whether equal table values force Frobenius-conjugate arguments,
/// over the nonzero points.
pub fn check_distinctness(table: &KlTable) -> DistinctnessReport {
    let qm1 = table.q() - 1;
    let p = table.p();
    let orbit_rep = |x: u64| -> u64 {
        let mut best = x;
        let mut cur = x;
        for _ in 1..table.r() {
            cur = (cur as u128 * p as u128 % qm1 as u128) as u64;
            best = best.min(cur);
        }
        best
    };
    let mut groups: BTreeMap<&CycInt, Vec<u64>> = BTreeMap::new();
    for (x, v) in table.by_dlog().iter().enumerate() {
        groups.entry(v).or_default().push(x as u64);
    }
    let mut violations = Vec::new();
    for xs in groups.values() {
        let mut orbits: Vec<u64> = xs.iter().map(|&x| orbit_rep(x)).collect();
        orbits.sort_unstable();
        orbits.dedup();
        for i in 0..orbits.len() {
            for j in i + 1..orbits.len() {
                violations.push((orbits[i], orbits[j]));
            }
        }
    }
    violations.sort_unstable();
    DistinctnessReport {
        holds: violations.is_empty(),
        violations,
    }
}

/// Advisory sufficiency indicators for value-distinctness. None of these
/// ever *refutes* distinctness; only [`check_distinctness`] decides that.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub p: u64,
    pub r: u32,
    pub n: u32,
    /// Distinctness is known to hold when p exceeds (2(n+1)^{2r} + 1)^2.
    pub fischer_threshold: BigUint,
    pub fischer_bound_met: bool,
    /// Claimed sufficient threshold (r-1)(n+1) + 2 for p, subject to an
    /// extra hypothesis that is not checkable here; advisory only.
    pub wan_threshold: u64,
    pub wan_bound_met: bool,
    /// Shortcut flag for one-dimensional sums over at most quartic
    /// extensions. Treat as advisory: small-p counterexamples exist (for
    /// instance q = 5^4 with n = 1), so the classifier prefers the
    /// exhaustive check whenever a table is available.
    pub guaranteed: bool,
}

pub fn distinctness_bounds(p: u64, r: u32, n: u32) -> BoundsReport {
    let base = BigUint::from(n as u64 + 1).pow(2 * r);
    let fischer_threshold = (BigUint::from(2u32) * base + BigUint::one()).pow(2);
    let fischer_bound_met = BigUint::from(p) > fischer_threshold;
    let wan_threshold = (r as u64).saturating_sub(1) * (n as u64 + 1) + 2;
    BoundsReport {
        p,
        r,
        n,
        fischer_threshold,
        fischer_bound_met,
        wan_threshold,
        wan_bound_met: p >= wan_threshold,
        guaranteed: n == 1 && r <= 4,
    }
}
