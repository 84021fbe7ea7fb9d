use crate::error::{Error, Result};

/// Default primitive polynomial for `GF(2^m)`, as a bitmask including the
/// leading `x^m` term.
pub fn default_primitive_poly(m: u32) -> Option<u32> {
    Some(match m {
        2 => 0b111,
        3 => 0b1011,
        4 => 0b1_0011,
        5 => 0b10_0101,
        6 => 0b100_0011,
        7 => 0b1000_1001,
        8 => 0b1_0001_1101,
        9 => 0x211,
        10 => 0x409,
        11 => 0x805,
        12 => 0x1053,
        13 => 0x201B,
        14 => 0x4443,
        15 => 0x8003,
        16 => 0x1100B,
        _ => return None,
    })
}

/// `GF(2^m)` in polynomial basis with log/antilog tables over `alpha = x`.
#[derive(Clone, Debug)]
pub struct Gf2mField {
    m: u32,
    poly: u32,
    antilog: Vec<u32>,
    log: Vec<u32>,
}

impl Gf2mField {
    pub fn new(m: u32) -> Result<Self> {
        let poly = default_primitive_poly(m)
            .ok_or_else(|| Error::param(format!("field degree m = {m} outside [2, 16]")))?;
        Gf2mField::with_poly(m, poly)
    }

    /// Fails unless `poly` has degree `m` and `x` has order `2^m - 1` modulo it.
    pub fn with_poly(m: u32, poly: u32) -> Result<Self> {
        if !(2..=16).contains(&m) {
            return Err(Error::param(format!("field degree m = {m} outside [2, 16]")));
        }
        if poly >> m != 1 {
            return Err(Error::param(format!("polynomial {poly:#b} does not have degree {m}")));
        }
        let order = (1u32 << m) - 1;
        let mut antilog = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; 1 << m];
        let mut x = 1u32;
        for e in 0..order {
            if log[x as usize] != u32::MAX {
                return Err(Error::param(format!(
                    "polynomial {poly:#b} is not primitive: x has order {e}"
                )));
            }
            log[x as usize] = e;
            antilog.push(x);
            x <<= 1;
            if x >> m != 0 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(Error::param(format!("polynomial {poly:#b} is not primitive")));
        }
        Ok(Gf2mField { m, poly, antilog, log })
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    /// Size of the multiplicative group, `2^m - 1`.
    pub fn order(&self) -> u32 {
        self.antilog.len() as u32
    }

    /// `alpha^e` for any exponent.
    pub fn pow_alpha(&self, e: u64) -> u32 {
        self.antilog[(e % self.order() as u64) as usize]
    }

    pub fn log(&self, x: u32) -> Option<u32> {
        match self.log.get(x as usize) {
            Some(&l) if x != 0 => Some(l),
            _ => None,
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match (self.log(a), self.log(b)) {
            (Some(la), Some(lb)) => self.pow_alpha(la as u64 + lb as u64),
            _ => 0,
        }
    }
}
