use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_traits::{Num, One, Zero};
use twofloat::TwoFloat;

/// Double-double scalar.
///
/// Arithmetic comes from `twofloat`, except division: its quotient is only
/// accurate to about one double ulp, so each quotient gets one correction
/// step `q + (a - q b) / b`, which restores double-double accuracy.
#[derive(Debug, Clone, Copy, Default, PartialEq, PartialOrd)]
pub struct Dd(pub TwoFloat);

impl Dd {
    pub fn hi(self) -> f64 {
        self.0.hi()
    }

    pub fn lo(self) -> f64 {
        self.0.lo()
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd(TwoFloat::from(x))
    }
}

macro_rules! delegate {
    ($tr:ident, $f:ident) => {
        impl $tr for Dd {
            type Output = Dd;
            #[inline]
            fn $f(self, rhs: Dd) -> Dd {
                Dd($tr::$f(self.0, rhs.0))
            }
        }
    };
}

delegate!(Add, add);
delegate!(Sub, sub);
delegate!(Mul, mul);
delegate!(Rem, rem);

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, rhs: Dd) -> Dd {
        let q = self.0 / rhs.0;
        let r = self.0 - q * rhs.0;
        Dd(q + r / rhs.0)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd(-self.0)
    }
}

impl Zero for Dd {
    fn zero() -> Self {
        Dd(TwoFloat::from(0.0))
    }

    fn is_zero(&self) -> bool {
        self.0.hi() == 0.0 && self.0.lo() == 0.0
    }
}

impl One for Dd {
    fn one() -> Self {
        Dd(TwoFloat::from(1.0))
    }
}

impl Num for Dd {
    type FromStrRadixErr = <TwoFloat as Num>::FromStrRadixErr;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        TwoFloat::from_str_radix(s, radix).map(Dd)
    }
}
