//! Rationals that stay on machine words until they can't.
//!
//! Almost every coefficient that shows up in a character table is a small
//! integer, so `Rat` keeps an `i64` ratio and only promotes to `BigRational`
//! when a checked operation overflows. Values are always demoted back when
//! they fit, which keeps equality structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rat {
    Small(Ratio<i64>),
    Big(BigRational),
}

fn to_big(r: &Ratio<i64>) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl Rat {
    pub fn int(n: i64) -> Self {
        if n == i64::MIN {
            return Rat::Big(BigRational::from_integer(BigInt::from(n)));
        }
        Rat::Small(Ratio::from_integer(n))
    }

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat::from_big(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Self {
        Rat::int(0)
    }

    pub fn one() -> Self {
        Rat::int(1)
    }

    fn from_big(b: BigRational) -> Self {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            // keep i64::MIN out of the small form so negation can never overflow
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => {
                Rat::Small(Ratio::new_raw(n, d))
            }
            _ => Rat::Big(b),
        }
    }

    pub fn big(&self) -> BigRational {
        match self {
            Rat::Small(r) => to_big(r),
            Rat::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_zero(),
            Rat::Big(b) => b.is_zero(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_integer(),
            Rat::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_negative(),
            Rat::Big(b) => b.is_negative(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rat::Small(r) => BigInt::from(*r.numer()),
            Rat::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rat::Small(r) => BigInt::from(*r.denom()),
            Rat::Big(b) => b.denom().clone(),
        }
    }

    /// The value as an `i64` if it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Rat::Small(r) if r.is_integer() => Some(*r.numer()),
            _ => None,
        }
    }

    /// Reduction modulo a prime `p`, or `None` when `p` divides the denominator.
    pub fn mod_p(&self, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let (n, d) = match self {
            Rat::Small(r) => {
                let pi = p as i128;
                let n = (*r.numer() as i128).rem_euclid(pi) as u64;
                let d = (*r.denom() as i128).rem_euclid(pi) as u64;
                (n, d)
            }
            Rat::Big(b) => {
                let n = ((b.numer() % &pb) + &pb) % &pb;
                let d = ((b.denom() % &pb) + &pb) % &pb;
                (n.to_u64().unwrap(), d.to_u64().unwrap())
            }
        };
        if d == 0 {
            return None;
        }
        Some(crate::arith::mul_mod(n, crate::arith::inv_mod(d, p), p))
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                if let (Rat::Small(a), Rat::Small(b)) = (self, rhs) {
                    if let Some(c) = a.$checked(b) {
                        if *c.numer() != i64::MIN && *c.denom() != i64::MIN {
                            return Rat::Small(c);
                        }
                    }
                }
                Rat::from_big(self.big().$m(rhs.big()))
            }
        }
        impl $tr for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self {
            Rat::Small(r) => Rat::Small(-r),
            Rat::Big(b) => Rat::from_big(-b),
        }
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -self.clone()
    }
}

impl Zero for Rat {
    fn zero() -> Self {
        Rat::int(0)
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
}

impl One for Rat {
    fn one() -> Self {
        Rat::int(1)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

impl From<BigRational> for Rat {
    fn from(b: BigRational) -> Self {
        Rat::from_big(b)
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rat::Small(a), Rat::Small(b)) => a.cmp(b),
            _ => self.big().cmp(&other.big()),
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(r) => write!(f, "{r}"),
            Rat::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
