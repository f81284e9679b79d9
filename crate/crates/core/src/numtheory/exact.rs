//! Exact rationals, interval enclosures and certified comparisons.
//!
//! Inequalities whose sides are rational multiples of square roots of rationals are
//! decided exactly by squaring. Anything involving `e` or nested radicals is decided
//! by interval arithmetic, refining the square-root precision a bounded number of times.

use std::cmp::Ordering;
use std::fmt;
use std::ops;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ceil_int(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

pub fn floor_int(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// Lower and upper rational bounds on Euler's number.
pub fn e_bounds() -> (Rational, Rational) {
    (
        rat(2_718_281_828, 1_000_000_000),
        rat(2_718_281_829, 1_000_000_000),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Greater,
    Equal,
    Less,
    Indeterminate,
}

impl From<Ordering> for Verdict {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Greater => Verdict::Greater,
            Ordering::Equal => Verdict::Equal,
            Ordering::Less => Verdict::Less,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Greater => "greater",
            Verdict::Equal => "equal",
            Verdict::Less => "less",
            Verdict::Indeterminate => "indeterminate",
        };
        f.write_str(s)
    }
}

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    lo: Rational,
    hi: Rational,
}

impl Enclosure {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::invalid(format!("empty enclosure [{lo}, {hi}]")));
        }
        Ok(Enclosure { lo, hi })
    }

    pub fn exact(r: Rational) -> Self {
        Enclosure {
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn e() -> Self {
        let (lo, hi) = e_bounds();
        Enclosure { lo, hi }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn add(&self, o: &Self) -> Self {
        Enclosure {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Enclosure {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub fn neg(&self) -> Self {
        Enclosure {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Enclosure { lo, hi }
    }

    pub fn recip(&self) -> Result<Self> {
        if !self.lo.is_positive() && !self.hi.is_negative() {
            return Err(Error::invalid("division by an enclosure containing zero"));
        }
        Ok(Enclosure {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    /// Square root with endpoints rounded outward to multiples of 2^-bits.
    pub fn sqrt(&self, bits: u32) -> Result<Self> {
        if self.hi.is_negative() {
            return Err(Error::invalid("square root of a negative enclosure"));
        }
        let lo = if self.lo.is_positive() {
            sqrt_floor(&self.lo, bits)
        } else {
            Rational::zero()
        };
        Ok(Enclosure {
            lo,
            hi: sqrt_ceil(&self.hi, bits),
        })
    }

    /// Certified comparison: Greater only if `self.lo > o.hi`.
    pub fn compare(&self, o: &Self) -> Verdict {
        if self.lo > o.hi {
            Verdict::Greater
        } else if self.hi < o.lo {
            Verdict::Less
        } else if self.is_exact() && o.is_exact() && self.lo == o.lo {
            Verdict::Equal
        } else {
            Verdict::Indeterminate
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Serialized as exact endpoint strings plus a floating midpoint for display.
impl Serialize for Enclosure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mid = ((&self.lo + &self.hi) / BigInt::from(2))
            .to_f64()
            .unwrap_or(f64::NAN);
        let mut st = s.serialize_struct("Enclosure", 3)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.serialize_field("approx", &mid)?;
        st.end()
    }
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

fn sqrt_floor(r: &Rational, bits: u32) -> Rational {
    let s = pow2(bits);
    let x = (r * Rational::from_integer(&s * &s)).floor().to_integer();
    Rational::new(x.sqrt(), s)
}

fn sqrt_ceil(r: &Rational, bits: u32) -> Rational {
    let s = pow2(bits);
    let y = (r * Rational::from_integer(&s * &s)).ceil().to_integer();
    let mut b = y.sqrt();
    if &b * &b < y {
        b += 1;
    }
    Rational::new(b, s)
}

/// Expression tree for bound formulas. Leaves are rationals and `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(Rational),
    E,
    Sqrt(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn c(r: Rational) -> Self {
        Expr::Const(r)
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        Expr::Const(int(n))
    }

    pub fn sqrt(self) -> Self {
        Expr::Sqrt(Box::new(self))
    }

    pub fn eval(&self, bits: u32) -> Result<Enclosure> {
        Ok(match self {
            Expr::Const(r) => Enclosure::exact(r.clone()),
            Expr::E => Enclosure::e(),
            Expr::Sqrt(a) => a.eval(bits)?.sqrt(bits)?,
            Expr::Add(a, b) => a.eval(bits)?.add(&b.eval(bits)?),
            Expr::Sub(a, b) => a.eval(bits)?.sub(&b.eval(bits)?),
            Expr::Mul(a, b) => a.eval(bits)?.mul(&b.eval(bits)?),
            Expr::Div(a, b) => a.eval(bits)?.div(&b.eval(bits)?)?,
        })
    }

    /// Returns `(c, r)` with the value equal to `c·√r`, when the expression has that shape
    /// after folding constants.
    pub fn as_surd(&self) -> Option<(Rational, Rational)> {
        match self {
            Expr::Const(r) => Some((r.clone(), Rational::one())),
            Expr::E => None,
            Expr::Sqrt(a) => match a.as_surd()? {
                (c, r) if r.is_one() && !c.is_negative() => Some((Rational::one(), c)),
                _ => None,
            },
            Expr::Mul(a, b) => {
                let (c1, r1) = a.as_surd()?;
                let (c2, r2) = b.as_surd()?;
                if r1.is_one() || r2.is_one() || r1 == r2 {
                    if r1 == r2 && !r1.is_one() {
                        Some((c1 * c2 * r1, Rational::one()))
                    } else {
                        Some((c1 * c2, if r1.is_one() { r2 } else { r1 }))
                    }
                } else {
                    None
                }
            }
            Expr::Div(a, b) => {
                let (c1, r1) = a.as_surd()?;
                let (c2, r2) = b.as_surd()?;
                if r2.is_one() && !c2.is_zero() {
                    Some((c1 / c2, r1))
                } else {
                    None
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (c1, r1) = a.as_surd()?;
                let (c2, r2) = b.as_surd()?;
                let c2 = if matches!(self, Expr::Sub(..)) {
                    -c2
                } else {
                    c2
                };
                if r1 == r2 {
                    Some((c1 + c2, r1))
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(r) => write!(f, "{r}"),
            Expr::E => f.write_str("e"),
            Expr::Sqrt(a) => write!(f, "sqrt({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "({a})/({b})"),
        }
    }
}

macro_rules! expr_binop {
    ($tr:ident, $m:ident, $v:ident) => {
        impl ops::$tr for Expr {
            type Output = Expr;
            fn $m(self, o: Expr) -> Expr {
                Expr::$v(Box::new(self), Box::new(o))
            }
        }
    };
}
expr_binop!(Add, add, Add);
expr_binop!(Sub, sub, Sub);
expr_binop!(Mul, mul, Mul);
expr_binop!(Div, div, Div);

/// Compares `c1√r1` with `c2√r2` exactly (radicands nonnegative).
pub fn compare_surds(a: &(Rational, Rational), b: &(Rational, Rational)) -> Ordering {
    let sa = signum(&a.0) * if a.1.is_zero() { 0 } else { 1 };
    let sb = signum(&b.0) * if b.1.is_zero() { 0 } else { 1 };
    if sa != sb {
        return sa.cmp(&sb);
    }
    let ma = &a.0 * &a.0 * &a.1;
    let mb = &b.0 * &b.0 * &b.1;
    if sa >= 0 {
        ma.cmp(&mb)
    } else {
        mb.cmp(&ma)
    }
}

fn signum(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Square-root precisions tried in turn before giving up as indeterminate.
pub const REFINEMENT_BITS: [u32; 4] = [32, 64, 128, 256];

/// Result of comparing two expressions, with the enclosures used at the deciding precision.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub verdict: Verdict,
    pub lhs: Enclosure,
    pub rhs: Enclosure,
    pub exact: bool,
}

pub fn compare_exprs(lhs: &Expr, rhs: &Expr) -> Result<Comparison> {
    if let (Some(a), Some(b)) = (lhs.as_surd(), rhs.as_surd()) {
        if !a.1.is_negative() && !b.1.is_negative() {
            let bits = REFINEMENT_BITS[0];
            return Ok(Comparison {
                verdict: compare_surds(&a, &b).into(),
                lhs: lhs.eval(bits)?,
                rhs: rhs.eval(bits)?,
                exact: true,
            });
        }
    }
    let mut last = None;
    for bits in REFINEMENT_BITS {
        let (l, r) = (lhs.eval(bits)?, rhs.eval(bits)?);
        let verdict = l.compare(&r);
        if verdict != Verdict::Indeterminate {
            return Ok(Comparison {
                verdict,
                lhs: l,
                rhs: r,
                exact: false,
            });
        }
        last = Some((l, r));
    }
    let (lhs, rhs) = last.expect("at least one refinement level");
    Ok(Comparison {
        verdict: Verdict::Indeterminate,
        lhs,
        rhs,
        exact: false,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootExponent {
    Half,
    Quarter,
}

/// Compares `k` with `2(p−1)^(1/2)` or `2(p−1)^(1/4)` by integer powers.
pub fn cmp_threshold(k: u64, p: u64, exponent: RootExponent) -> Ordering {
    let k = k as u128;
    let pm = (p as u128).saturating_sub(1);
    match exponent {
        RootExponent::Half => (k * k).cmp(&(4 * pm)),
        RootExponent::Quarter => (k * k * k * k).cmp(&(16 * pm)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds() {
        assert_eq!(cmp_threshold(4, 5, RootExponent::Half), Ordering::Equal);
        assert_eq!(cmp_threshold(3, 5, RootExponent::Half), Ordering::Less);
        assert_eq!(cmp_threshold(6, 11, RootExponent::Half), Ordering::Less);
        assert_eq!(cmp_threshold(4, 17, RootExponent::Quarter), Ordering::Equal);
        assert_eq!(
            cmp_threshold(5, 17, RootExponent::Quarter),
            Ordering::Greater
        );
    }

    #[test]
    fn e_enclosure() {
        let e = Enclosure::e();
        assert!(e.lo() < e.hi());
        let inv = Enclosure::exact(int(1)).div(&e).unwrap();
        assert!(inv.lo() > &rat(36787, 100000));
        assert!(inv.hi() < &rat(36788, 100000));
    }

    #[test]
    fn sqrt_brackets() {
        let two = Enclosure::exact(int(2));
        for bits in REFINEMENT_BITS {
            let s = two.sqrt(bits).unwrap();
            assert!(s.lo() * s.lo() <= int(2));
            assert!(s.hi() * s.hi() >= int(2));
        }
        let four = Enclosure::exact(int(4)).sqrt(16).unwrap();
        assert_eq!(four, Enclosure::exact(int(2)));
    }

    #[test]
    fn surd_comparison_is_exact() {
        // 4 vs 2*sqrt(4)
        let lhs = Expr::int(4);
        let rhs = Expr::int(2) * Expr::int(4).sqrt();
        let c = compare_exprs(&lhs, &rhs).unwrap();
        assert_eq!(c.verdict, Verdict::Equal);
        assert!(c.exact);
        let c = compare_exprs(&Expr::int(6), &(Expr::int(2) * Expr::int(10).sqrt())).unwrap();
        assert_eq!(c.verdict, Verdict::Less);
    }

    #[test]
    fn expressions_with_e() {
        // 1/e < 0.37 and sqrt(1/(5e)) > 0.27
        let inv_e = Expr::int(1) / Expr::E;
        let c = compare_exprs(&inv_e, &Expr::c(rat(37, 100))).unwrap();
        assert_eq!(c.verdict, Verdict::Less);
        let h = (Expr::int(1) / (Expr::int(5) * Expr::E)).sqrt();
        let c = compare_exprs(&h, &Expr::c(rat(27, 100))).unwrap();
        assert_eq!(c.verdict, Verdict::Greater);
    }
}
