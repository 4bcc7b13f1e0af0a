use std::fmt;

use crate::Q;

/// The operations the matrix kernel needs from its scalars.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Field for Q {
    fn zero() -> Q {
        Q::zero()
    }
    fn one() -> Q {
        Q::one()
    }
    fn from_i64(v: i64) -> Q {
        Q::int(v)
    }
    fn is_zero(&self) -> bool {
        Q::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Q::is_one(self)
    }
    fn add(&self, o: &Q) -> Q {
        self.add_ref(o)
    }
    fn sub(&self, o: &Q) -> Q {
        self.sub_ref(o)
    }
    fn mul(&self, o: &Q) -> Q {
        self.mul_ref(o)
    }
    fn neg(&self) -> Q {
        self.neg_ref()
    }
    fn inv(&self) -> Option<Q> {
        Q::inv(self)
    }
}

/// Integers modulo a prime `P` (not checked; use primes).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u128;
        let mut acc: u128 = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P as u128;
            }
            base = base * base % P as u128;
            e >>= 1;
        }
        Fp(acc as u64)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp(((self.0 as u128 + o.0 as u128) % P as u128) as u64)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - o.0 as u128) % P as u128) as u64)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp((self.0 as u128 * o.0 as u128 % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
}
