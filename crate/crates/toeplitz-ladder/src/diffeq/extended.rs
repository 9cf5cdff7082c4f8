//! Scalars for the difference-equation code: `f64` and a software float.

use std::cell::RefCell;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float_num::{BigFloat, Consts, RoundingMode, Sign};

const RM: RoundingMode = RoundingMode::ToEven;
const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;
const WORD_BITS: usize = 64;

/// Real scalar arithmetic shared by `f64` and [`Extended`].
pub trait Real:
    Clone
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `x` at the precision of `self`.
    fn lift(&self, x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;
    /// Unit roundoff of the representation.
    fn epsilon(&self) -> f64;
    fn exp(&self) -> Self;
    fn cos(&self) -> Self;
    fn sin(&self) -> Self;
    /// π at the precision of `self`.
    fn pi(&self) -> Self;
}

impl Real for f64 {
    fn lift(&self, x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn epsilon(&self) -> f64 {
        f64::EPSILON / 2.0
    }

    fn exp(&self) -> Self {
        f64::exp(*self)
    }

    fn cos(&self) -> Self {
        f64::cos(*self)
    }

    fn sin(&self) -> Self {
        f64::sin(*self)
    }

    fn pi(&self) -> Self {
        std::f64::consts::PI
    }
}

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache allocates"));
}

/// A binary floating-point number with a fixed mantissa length.
///
/// The mantissa holds at least the requested number of decimal digits,
/// rounded up to whole 64-bit words.
#[derive(Clone)]
pub struct Extended {
    value: BigFloat,
    bits: usize,
}

/// Mantissa bits used for `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> usize {
    let bits = (digits.max(1) as f64 * BITS_PER_DIGIT).ceil() as usize;
    bits.div_ceil(WORD_BITS) * WORD_BITS
}

impl Extended {
    pub fn from_f64(x: f64, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        Extended {
            value: BigFloat::from_f64(x, bits),
            bits,
        }
    }

    pub fn from_i64(x: i64, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        Extended {
            value: BigFloat::from_i64(x, bits),
            bits,
        }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Decimal digits actually carried by the mantissa.
    pub fn effective_digits(&self) -> f64 {
        self.bits as f64 / BITS_PER_DIGIT
    }

    pub fn abs(&self) -> Self {
        Extended {
            value: self.value.abs(),
            bits: self.bits,
        }
    }

    pub fn sqrt(&self) -> Self {
        Extended {
            value: self.value.sqrt(self.bits, RM),
            bits: self.bits,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative()
    }

    fn with_consts(&self, f: impl FnOnce(&BigFloat, usize, &mut Consts) -> BigFloat) -> Self {
        let value = CONSTS.with(|cc| f(&self.value, self.bits, &mut cc.borrow_mut()));
        Extended { value, bits: self.bits }
    }

    fn wrap(&self, other: &Self, value: BigFloat) -> Self {
        Extended {
            value,
            bits: self.bits.max(other.bits),
        }
    }
}

impl Real for Extended {
    fn lift(&self, x: f64) -> Self {
        Extended {
            value: BigFloat::from_f64(x, self.bits),
            bits: self.bits,
        }
    }

    fn to_f64(&self) -> f64 {
        if self.value.is_zero() {
            return 0.0;
        }
        let Some((words, _, sign, exp, _)) = self.value.as_raw_parts() else {
            return f64::NAN;
        };
        let top = words.last().copied().unwrap_or(0) as f64 / 2f64.powi(64);
        let next = if words.len() > 1 {
            words[words.len() - 2] as f64 / 2f64.powi(128)
        } else {
            0.0
        };
        let mag = if exp > 1000 {
            f64::INFINITY
        } else if exp < -1100 {
            0.0
        } else {
            (top + next) * 2f64.powi(exp)
        };
        match sign {
            Sign::Neg => -mag,
            Sign::Pos => mag,
        }
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn epsilon(&self) -> f64 {
        2f64.powi(1 - self.bits as i32)
    }

    fn exp(&self) -> Self {
        self.with_consts(|v, p, cc| v.exp(p, RM, cc))
    }

    fn cos(&self) -> Self {
        self.with_consts(|v, p, cc| v.cos(p, RM, cc))
    }

    fn sin(&self) -> Self {
        self.with_consts(|v, p, cc| v.sin(p, RM, cc))
    }

    fn pi(&self) -> Self {
        self.with_consts(|_, p, cc| cc.pi(p, RM))
    }
}

impl fmt::Debug for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Extended({:e}, {} bits)", self.to_f64(), self.bits)
    }
}

impl Add for Extended {
    type Output = Extended;
    fn add(self, rhs: Extended) -> Extended {
        let p = self.bits.max(rhs.bits);
        self.wrap(&rhs, self.value.add(&rhs.value, p, RM))
    }
}

impl Sub for Extended {
    type Output = Extended;
    fn sub(self, rhs: Extended) -> Extended {
        let p = self.bits.max(rhs.bits);
        self.wrap(&rhs, self.value.sub(&rhs.value, p, RM))
    }
}

impl Mul for Extended {
    type Output = Extended;
    fn mul(self, rhs: Extended) -> Extended {
        let p = self.bits.max(rhs.bits);
        self.wrap(&rhs, self.value.mul(&rhs.value, p, RM))
    }
}

impl Div for Extended {
    type Output = Extended;
    fn div(self, rhs: Extended) -> Extended {
        let p = self.bits.max(rhs.bits);
        self.wrap(&rhs, self.value.div(&rhs.value, p, RM))
    }
}

impl Neg for Extended {
    type Output = Extended;
    fn neg(self) -> Extended {
        Extended {
            value: self.value.neg(),
            bits: self.bits,
        }
    }
}
