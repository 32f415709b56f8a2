//! The eleven c^2 patterns, indexed by Harish-Chandra parameter.

use std::fmt;

use crate::exactmath::{HalfInt, Rational};
use crate::repparams::{triple_from_twice, HCParam};

/// One tabulated pattern. Pattern 1 has two parameter forms, kept apart as
/// `OneA` and `OneB`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    OneA,
    OneB,
    Two,
    Three,
    Four,
    Five,
    Six,
    Seven,
    Eight,
    Nine,
    Ten,
    Eleven,
}

impl Pattern {
    pub const ALL: [Pattern; 12] = [
        Pattern::OneA,
        Pattern::OneB,
        Pattern::Two,
        Pattern::Three,
        Pattern::Four,
        Pattern::Five,
        Pattern::Six,
        Pattern::Seven,
        Pattern::Eight,
        Pattern::Nine,
        Pattern::Ten,
        Pattern::Eleven,
    ];

    /// The pattern number, 1..=11.
    pub fn number(self) -> u32 {
        match self {
            Pattern::OneA | Pattern::OneB => 1,
            p => p as u32,
        }
    }

    pub fn param_names(self) -> [&'static str; 3] {
        match self {
            Pattern::OneA => ["mu1", "mu2", "nu"],
            Pattern::OneB => ["nu1", "nu2", "alpha"],
            Pattern::Two | Pattern::Three | Pattern::Four => ["mu1", "mu2", "alpha"],
            Pattern::Five | Pattern::Six => ["mu", "nu", "beta"],
            Pattern::Seven | Pattern::Eight | Pattern::Nine => ["nu1", "nu2", "beta"],
            Pattern::Ten | Pattern::Eleven => ["mu", "nu", "alpha"],
        }
    }

    /// Twice lambda as a function of the parameters.
    fn twice_lambda(self, v: [u32; 3]) -> [i64; 3] {
        let [x, y, z] = v.map(|k| k as i64);
        match self {
            Pattern::OneA => [-2 * y - 1, -2 * x - 3, 2 * z + 1],
            Pattern::OneB => [2 * x + 3, 2 * y + 1, -2 * z - 1],
            Pattern::Two => [-2 * y - 1, -2 * x - 3, -2 * z + 3],
            Pattern::Three => [-2 * y + 1, -2 * x - 1, -2 * z - 1],
            Pattern::Four => [-2 * y - 1, -2 * x - 1, -2 * z + 1],
            Pattern::Five => [2 * y + 1, -2 * x - 1, 2 * z - 1],
            Pattern::Six => [2 * y - 1, -2 * x - 1, 2 * z + 1],
            Pattern::Seven => [2 * x + 1, 2 * y - 1, 2 * z + 1],
            Pattern::Eight => [2 * x + 3, 2 * y + 1, 2 * z - 3],
            Pattern::Nine => [2 * x + 1, 2 * y + 1, 2 * z - 1],
            Pattern::Ten => [2 * y + 1, -2 * x - 1, -2 * z + 1],
            Pattern::Eleven => [2 * y + 1, -2 * x + 1, -2 * z - 1],
        }
    }

    /// Inverse of `twice_lambda`, ignoring sign constraints.
    fn solve(self, l: [i64; 3]) -> Option<[i64; 3]> {
        let half = |t: i64| (t % 2 == 0).then_some(t / 2);
        let [a, b, c] = l;
        let v = match self {
            Pattern::OneA => [half(-b - 3)?, half(-a - 1)?, half(c - 1)?],
            Pattern::OneB => [half(a - 3)?, half(b - 1)?, half(-c - 1)?],
            Pattern::Two => [half(-b - 3)?, half(-a - 1)?, half(3 - c)?],
            Pattern::Three => [half(-b - 1)?, half(1 - a)?, half(-c - 1)?],
            Pattern::Four => [half(-b - 1)?, half(-a - 1)?, half(1 - c)?],
            Pattern::Five => [half(-b - 1)?, half(a - 1)?, half(c + 1)?],
            Pattern::Six => [half(-b - 1)?, half(a + 1)?, half(c - 1)?],
            Pattern::Seven => [half(a - 1)?, half(b + 1)?, half(c - 1)?],
            Pattern::Eight => [half(a - 3)?, half(b - 1)?, half(c + 3)?],
            Pattern::Nine => [half(a - 1)?, half(b - 1)?, half(c + 1)?],
            Pattern::Ten => [half(-b - 1)?, half(a - 1)?, half(1 - c)?],
            Pattern::Eleven => [half(1 - b)?, half(a - 1)?, half(-c - 1)?],
        };
        Some(v)
    }

    /// The inequalities on the parameters.
    pub fn admits(self, v: [u32; 3]) -> bool {
        let [x, y, z] = v;
        let ge = |a: u32, b: u32, k: u32| a >= b + k;
        match self {
            Pattern::OneA | Pattern::OneB => x >= y,
            Pattern::Two => ge(z, x, 4) && x >= y,
            Pattern::Three => x >= y && ge(y, z, 2),
            Pattern::Four => x >= z && ge(z, y, 2),
            Pattern::Five => ge(z, y, 2),
            Pattern::Six => ge(y, z, 2),
            Pattern::Seven => x >= y && ge(y, z, 2),
            Pattern::Eight => ge(z, x, 4) && x >= y,
            Pattern::Nine => x >= z && ge(z, y, 2),
            Pattern::Ten => ge(z, x, 2),
            Pattern::Eleven => ge(x, z, 2),
        }
    }

    pub fn lambda(self, v: [u32; 3]) -> HCParam {
        HCParam::new(triple_from_twice(self.twice_lambda(v))).expect("pattern parameters give a regular dominant lambda")
    }

    /// Parameters if lambda fits this pattern with its inequalities.
    pub fn match_lambda(self, lambda: &[HalfInt; 3]) -> Option<[u32; 3]> {
        let v = self.solve(lambda.map(|x| x.twice()))?;
        let v = [u32::try_from(v[0]).ok()?, u32::try_from(v[1]).ok()?, u32::try_from(v[2]).ok()?];
        self.admits(v).then_some(v)
    }

    /// The tabulated value of c^2.
    pub fn c_squared(self, v: [u32; 3]) -> Rational {
        let [x, y, z] = v.map(|k| k as i64);
        let q = |num: i64, den: i64| Rational::new(num.into(), den.into());
        match self {
            Pattern::OneA | Pattern::OneB => q(1, 1),
            // (alpha-mu1-3)(alpha-mu2-2) / ((alpha-1) alpha)
            Pattern::Two => q((z - x - 3) * (z - y - 2), (z - 1) * z),
            // (mu2-alpha-1)(mu1-alpha) / ((mu2+alpha)(mu1+alpha+1))
            Pattern::Three => q((y - z - 1) * (x - z), (y + z) * (x + z + 1)),
            // (mu1-mu2)(mu1-alpha+1)(alpha-mu2-1) / ((mu1-mu2+1)(mu1+1) alpha)
            Pattern::Four => q((x - y) * (x - z + 1) * (z - y - 1), (x - y + 1) * (x + 1) * z),
            // (beta+mu)(beta-nu-1) / ((beta+mu+1) beta)
            Pattern::Five => q((z + x) * (z - y - 1), (z + x + 1) * z),
            // (nu-beta-1)(nu+mu) / (nu (nu+mu+1))
            Pattern::Six => q((y - z - 1) * (y + x), y * (y + x + 1)),
            // (nu1-beta)(nu2-beta-1) / ((nu1+1) nu2)
            Pattern::Seven => q((x - z) * (y - z - 1), (x + 1) * y),
            // (beta-nu1-3)(beta-nu2-2) / ((beta-1) beta)
            Pattern::Eight => q((z - x - 3) * (z - y - 2), (z - 1) * z),
            // (nu1-nu2)(nu1-beta+1)(beta-nu2-1) / ((nu1-nu2+1)(nu1+1) beta)
            Pattern::Nine => q((x - y) * (x - z + 1) * (z - y - 1), (x - y + 1) * (x + 1) * z),
            // (alpha+nu)(alpha-mu-1) / ((alpha+nu+1) alpha)
            Pattern::Ten => q((z + y) * (z - x - 1), (z + y + 1) * z),
            // (mu-alpha-1)(mu+nu) / (mu (mu+nu+1))
            Pattern::Eleven => q((x - z - 1) * (x + y), x * (x + y + 1)),
        }
    }

    /// Every admissible parameter triple with entries at most `max`.
    pub fn instances(self, max: u32) -> Vec<[u32; 3]> {
        let mut out = Vec::new();
        for x in 0..=max {
            for y in 0..=max {
                for z in 0..=max {
                    if self.admits([x, y, z]) {
                        out.push([x, y, z]);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::OneA => write!(f, "(1a)"),
            Pattern::OneB => write!(f, "(1b)"),
            p => write!(f, "({})", p.number()),
        }
    }
}

/// All patterns that lambda fits, with their parameters.
pub fn matching_patterns(lambda: &HCParam) -> Vec<(Pattern, [u32; 3])> {
    let l = lambda.lambda();
    Pattern::ALL.into_iter().filter_map(|p| p.match_lambda(&l).map(|v| (p, v))).collect()
}
