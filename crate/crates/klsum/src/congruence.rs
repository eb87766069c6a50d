//! Independent congruence machinery behind the coset classification.
//!
//! The classifier decides membership with one modular comparison per point;
//! this module re-derives the same exponent sets the long way around, by
//! solving the underlying linear congruences
//!
//!   (p^s - 1) x = ((n+1)/d) (p^r - 1)/e   (mod p^r - 1)
//!
//! for every shift s, and by evaluating the closed-form description of their
//! union. The two routes are kept strictly separate from the classifier so
//! each can witness the other.
//!
//! All integer arithmetic here is unbounded.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// Guard against enumerating absurdly large solution sets.
const MAX_ENUMERATED_SOLUTIONS: u64 = 1 << 32;

/// One congruence instance: parameters plus the derived quantities shared by
/// the solver and the closed form.
#[derive(Clone, Debug)]
pub struct CongruenceInstance {
    pub p: u64,
    pub r: u32,
    pub n: u32,
    pub e: u64,
    pub s: u32,
    /// gcd(n + 1, p - 1).
    pub d: u64,
    /// t = gcd(r, s).
    pub t: u32,
    /// r / t.
    pub r_over_t: u32,
    /// s / t.
    pub s_over_t: u32,
    /// (p^s - 1) / (p^t - 1).
    pub ratio_s: BigUint,
    /// (p^r - 1) / (p^t - 1).
    pub ratio_r: BigUint,
}

impl CongruenceInstance {
    pub fn new(p: u64, r: u32, n: u32, e: u64, s: u32) -> Result<Self> {
        arith::check_prime(p)?;
        if r < 1 || n < 1 || s < 1 {
            return Err(Error::InvalidArgument("need r, n, s >= 1".into()));
        }
        if e < 2 {
            return Err(Error::InvalidArgument(
                "the trivial case e = 1 is excluded".into(),
            ));
        }
        if !(p - 1).is_multiple_of(e) {
            return Err(Error::NotADivisor {
                divisor: e,
                of: p - 1,
            });
        }
        let d = arith::gcd(n as u64 + 1, p - 1);
        let t = num_integer::gcd(r, s);
        let pt = BigUint::from(p).pow(t) - BigUint::one();
        let ratio_s = (BigUint::from(p).pow(s) - BigUint::one()) / &pt;
        let ratio_r = (BigUint::from(p).pow(r) - BigUint::one()) / &pt;
        // When e sits in the solvable regime e | (p-1)/d, the definition of d
        // forces gcd(e, (n+1)/d) = 1.
        if ((p - 1) / d).is_multiple_of(e) {
            debug_assert_eq!(arith::gcd(e, (n as u64 + 1) / d), 1);
        }
        Ok(CongruenceInstance {
            p,
            r,
            n,
            e,
            s,
            d,
            t,
            r_over_t: r / t,
            s_over_t: s / t,
            ratio_s,
            ratio_r,
        })
    }

    fn modulus(&self) -> BigUint {
        BigUint::from(self.p).pow(self.r) - BigUint::one()
    }
}

/// Constructive lift along the reduction (Z/nZ)* -> (Z/mZ)*: returns x with
/// gcd(x, n) = 1 and x = y (mod m), found by scanning y, y+m, ..., y+(Q-1)m
/// where n = MQ with gcd(Q, m) = 1 and M supported on the primes of m.
pub fn lift_unit(n: u64, m: u64, y: u64) -> Result<u64> {
    if n == 0 || m == 0 || !n.is_multiple_of(m) {
        return Err(Error::NotADivisor { divisor: m, of: n });
    }
    if arith::gcd(y % m.max(1), m) != 1 && m > 1 {
        return Err(Error::NotAUnit { i: y, p: m });
    }
    let mut q_part = n;
    loop {
        let g = arith::gcd(q_part, m);
        if g == 1 {
            break;
        }
        q_part /= g;
    }
    for i in 0..q_part as u128 {
        let x = y as u128 + i * m as u128;
        if gcd_u128(x, n as u128) == 1 {
            return Ok((x % n as u128) as u64);
        }
    }
    unreachable!("the scan always finds a unit: the residues y + im cover Z/QZ")
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The solvability criterion for the instance: e | gcd((p-1)/d, r/t).
pub fn solvability(inst: &CongruenceInstance) -> bool {
    arith::gcd((inst.p - 1) / inst.d, inst.r_over_t as u64).is_multiple_of(inst.e)
}

/// The complete solution set of
/// (p^s - 1) x = ((n+1)/d) (p^r - 1)/e (mod p^r - 1), as residues mod p^r - 1.
/// Empty exactly when the solvability criterion fails.
pub fn solve_shift_congruence(inst: &CongruenceInstance) -> Result<BTreeSet<BigUint>> {
    let modulus = inst.modulus();
    let lhs = BigUint::from(inst.p).pow(inst.s) - BigUint::one();
    let lhs = lhs % &modulus; // s = r collapses to 0
    let rhs = BigUint::from((inst.n as u64 + 1) / inst.d) * (&modulus / inst.e);

    let g = lhs.gcd(&modulus);
    if g.is_zero() {
        // lhs = 0 (s multiple of r): solutions exist only if modulus | rhs.
        return Ok(BTreeSet::new());
    }
    debug_assert_eq!(
        g,
        BigUint::from(inst.p).pow(inst.t) - BigUint::one(),
        "gcd(p^s - 1, p^r - 1) = p^gcd(s, r) - 1"
    );
    if (&rhs % &g) != BigUint::zero() {
        return Ok(BTreeSet::new());
    }
    let reduced_mod = &modulus / &g;
    let reduced_lhs = &lhs / &g;
    let reduced_rhs = (&rhs / &g) % &reduced_mod;
    let inv =
        modular_inverse_big(&reduced_lhs, &reduced_mod).expect("lhs/g is a unit modulo modulus/g");
    let base = (reduced_rhs * inv) % &reduced_mod;

    let copies = g
        .to_u64()
        .filter(|&c| c <= MAX_ENUMERATED_SOLUTIONS)
        .ok_or_else(|| Error::InvalidArgument("solution set too large to enumerate".into()))?;
    let mut out = BTreeSet::new();
    let mut x = base;
    for _ in 0..copies {
        out.insert(x.clone());
        x += &reduced_mod;
    }
    Ok(out)
}

fn modular_inverse_big(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(m.clone());
    let ext = a.extended_gcd(&m);
    if !ext.gcd.is_one() {
        return None;
    }
    let x = ((ext.x % &m) + &m) % &m;
    x.to_biguint()
}

/// The closed-form exponent set
/// { u (p^r - 1)/(e (p^t - 1)) + v (p^r - 1)/(p^t - 1) } over u in [1, e-1]
/// coprime to e and v in [0, p^t - 2]; cardinality phi(e) (p^t - 1).
///
/// Preconditions: d = gcd(n+1, p-1), e > 1 in the solvable regime
/// e | gcd((p-1)/d, r/t), and t | r/e.
pub fn closed_form_solution_set(
    p: u64,
    r: u32,
    n: u32,
    d: u64,
    e: u64,
    t: u32,
) -> Result<BTreeSet<BigUint>> {
    arith::check_prime(p)?;
    if r < 1 || n < 1 {
        return Err(Error::InvalidArgument("need r, n >= 1".into()));
    }
    if d != arith::gcd(n as u64 + 1, p - 1) {
        return Err(Error::InvalidArgument(format!(
            "d = {d} is not gcd(n + 1, p - 1)"
        )));
    }
    if e < 2 {
        return Err(Error::InvalidArgument(
            "the trivial case e = 1 is excluded".into(),
        ));
    }
    if t == 0 || !r.is_multiple_of(t) {
        return Err(Error::NotADivisor {
            divisor: t as u64,
            of: r as u64,
        });
    }
    let regime = arith::gcd((p - 1) / d, (r / t) as u64);
    if !regime.is_multiple_of(e) {
        return Err(Error::NotADivisor {
            divisor: e,
            of: regime,
        });
    }
    // e | r/t makes t | r/e automatic; keep both checks for clear errors.
    if !((r / t) as u64).is_multiple_of(e) {
        return Err(Error::NotADivisor {
            divisor: e,
            of: (r / t) as u64,
        });
    }

    let modulus = BigUint::from(p).pow(r) - BigUint::one();
    let sub_order = BigUint::from(p).pow(t) - BigUint::one();
    let coset_step = &modulus / &sub_order;
    let root_step = &coset_step / e;
    let copies = sub_order
        .to_u64()
        .filter(|&c| c <= MAX_ENUMERATED_SOLUTIONS)
        .ok_or_else(|| Error::InvalidArgument("solution set too large to enumerate".into()))?;

    let mut out = BTreeSet::new();
    for u in 1..e {
        if arith::gcd(u, e) != 1 {
            continue;
        }
        let mut x = BigUint::from(u) * &root_step;
        for _ in 0..copies {
            out.insert(x.clone() % &modulus);
            x += &coset_step;
        }
    }
    debug_assert_eq!(out.len() as u64, arith::euler_phi(e) * copies);
    Ok(out)
}

/// Witness for the residue identity (p^s - 1)/(p^t - 1) = s/t (mod e),
/// valid under p = 1 (mod e) and t | s.
#[derive(Clone, Debug)]
pub struct RatioResidue {
    pub ratio: BigUint,
    /// ratio mod e.
    pub lhs: u64,
    /// (s/t) mod e.
    pub rhs: u64,
}

impl RatioResidue {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn ratio_residue_identity(p: u64, e: u64, s: u32, t: u32) -> Result<RatioResidue> {
    arith::check_prime(p)?;
    if e < 1 {
        return Err(Error::InvalidArgument("e must be >= 1".into()));
    }
    if p % e != 1 {
        return Err(Error::InvalidArgument(format!(
            "hypothesis p = 1 (mod {e}) fails for p = {p}"
        )));
    }
    if t == 0 || !s.is_multiple_of(t) {
        return Err(Error::NotADivisor {
            divisor: t as u64,
            of: s as u64,
        });
    }
    let pt = BigUint::from(p).pow(t) - BigUint::one();
    let ratio = (BigUint::from(p).pow(s) - BigUint::one()) / &pt;
    let lhs = (&ratio % e).to_u64().expect("residue fits");
    let rhs = (s / t) as u64 % e;
    Ok(RatioResidue { ratio, lhs, rhs })
}

/// One row of the union-identity verification: for a fixed (e, t), the union
/// of the per-shift solution sets over all s in [1, r-1] with gcd(r, s) = t
/// must equal the closed-form set.
#[derive(Clone, Debug)]
pub struct UnionIdentityRow {
    pub p: u64,
    pub r: u32,
    pub n: u32,
    pub e: u64,
    pub t: u32,
    pub union_size: usize,
    pub closed_form_size: usize,
    pub equal: bool,
}

/// Computes the union of solution sets over the shifts attached to t and
/// compares it with the closed form.
pub fn union_identity(p: u64, r: u32, n: u32, e: u64, t: u32) -> Result<UnionIdentityRow> {
    let d = arith::gcd(n as u64 + 1, p - 1);
    let mut union: BTreeSet<BigUint> = BTreeSet::new();
    for s in 1..r {
        if num_integer::gcd(r, s) != t {
            continue;
        }
        let inst = CongruenceInstance::new(p, r, n, e, s)?;
        union.extend(solve_shift_congruence(&inst)?);
    }
    let closed = closed_form_solution_set(p, r, n, d, e, t)?;
    let equal = union == closed;
    Ok(UnionIdentityRow {
        p,
        r,
        n,
        e,
        t,
        union_size: union.len(),
        closed_form_size: closed.len(),
        equal,
    })
}

/// The (e, t) pairs in the solvable regime for given (p, r, n): t | r and
/// e | gcd((p-1)/d, r/t) with e > 1, ascending by (t, e).
pub fn admissible_pairs(p: u64, r: u32, n: u32) -> Vec<(u64, u32)> {
    let d = arith::gcd(n as u64 + 1, p - 1);
    let mut pairs = Vec::new();
    for t in arith::divisors(r as u64) {
        let t = t as u32;
        let cap = arith::gcd((p - 1) / d, (r / t) as u64);
        for e in arith::divisors(cap) {
            if e > 1 {
                pairs.push((e, t));
            }
        }
    }
    pairs.sort_unstable_by_key(|&(e, t)| (t, e));
    pairs
}

/// Runs the union identity over a whole parameter grid; one row per
/// admissible (p, r, n, e, t).
pub fn verification_grid(ps: &[u64], r_max: u32, n_max: u32) -> Result<Vec<UnionIdentityRow>> {
    let mut rows = Vec::new();
    for &p in ps {
        for r in 1..=r_max {
            for n in 1..=n_max {
                for (e, t) in admissible_pairs(p, r, n) {
                    rows.push(union_identity(p, r, n, e, t)?);
                }
            }
        }
    }
    Ok(rows)
}
