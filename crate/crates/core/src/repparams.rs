//! Parameters of discrete series of the metaplectic cover of U(2,1):
//! Harish-Chandra parameters, chambers, Blattner parameters, duality, formal
//! degree, and the dictionary between Fock-side K-types and the six
//! joint-harmonic cases A, B, C1, C2, D1, D2.

use std::fmt;

use num_traits::Signed;
use thiserror::Error;

use crate::exactmath::{HalfInt, HalfIntTriple, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("coordinate {0} is not in 1/2 + Z")]
    NotHalfOdd(HalfInt),
    #[error("parameter {0:?} is not regular: two coordinates coincide")]
    NotRegular(HalfIntTriple),
    #[error("parameter {0:?} is not compact-dominant: need lambda_1 > lambda_2")]
    NotCompactDominant(HalfIntTriple),
    #[error("weight {0:?} matches none of the six joint-harmonic patterns")]
    NoCaseMatch(HalfIntTriple),
    #[error("{0} lies outside every inequality regime of its case")]
    BoundaryParameter(CaseParams),
    #[error("subcase {subcase} is not valid for {params}")]
    WrongSubcase { params: CaseParams, subcase: Chamber },
}

fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn hi(n: i64) -> HalfInt {
    HalfInt::from_int(n)
}

/// Triple of machine integers as half-integers.
pub fn triple_from_twice(t: [i64; 3]) -> HalfIntTriple {
    t.map(HalfInt::from_twice)
}

pub fn format_triple(t: &HalfIntTriple) -> String {
    format!("({}, {}, {})", t[0], t[1], t[2])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Chamber {
    I,
    II,
    III,
}

impl Chamber {
    pub const ALL: [Chamber; 3] = [Chamber::I, Chamber::II, Chamber::III];
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chamber::I => "I",
            Chamber::II => "II",
            Chamber::III => "III",
        })
    }
}

/// Harish-Chandra parameter: distinct coordinates in 1/2 + Z with
/// lambda_1 > lambda_2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HCParam {
    lambda: HalfIntTriple,
    chamber: Chamber,
}

impl HCParam {
    pub fn new(lambda: HalfIntTriple) -> Result<Self, RepError> {
        if let Some(x) = lambda.iter().find(|x| x.is_integer()) {
            return Err(RepError::NotHalfOdd(*x));
        }
        let chamber = classify_chamber(&lambda)?;
        Ok(HCParam { lambda, chamber })
    }

    pub fn from_twice(t: [i64; 3]) -> Result<Self, RepError> {
        Self::new(triple_from_twice(t))
    }

    pub fn lambda(&self) -> HalfIntTriple {
        self.lambda
    }

    pub fn chamber(&self) -> Chamber {
        self.chamber
    }
}

impl fmt::Display for HCParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_triple(&self.lambda))
    }
}

/// Chamber of a regular, compact-dominant triple.
pub fn classify_chamber(l: &HalfIntTriple) -> Result<Chamber, RepError> {
    let [l1, l2, l3] = *l;
    if l1 == l2 || l2 == l3 || l1 == l3 {
        return Err(RepError::NotRegular(*l));
    }
    if l1 < l2 {
        return Err(RepError::NotCompactDominant(*l));
    }
    Ok(if l2 > l3 {
        Chamber::I
    } else if l3 > l1 {
        Chamber::II
    } else {
        Chamber::III
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RhoVectors {
    pub rho_j: HalfIntTriple,
    pub rho_c: HalfIntTriple,
    pub rho_jn: HalfIntTriple,
}

/// Half sums of the positive, compact positive and non-compact positive roots.
pub fn rho_vectors(chamber: Chamber) -> RhoVectors {
    let rho_j = match chamber {
        Chamber::I => [hi(1), hi(0), hi(-1)],
        Chamber::II => [hi(0), hi(-1), hi(1)],
        Chamber::III => [hi(1), hi(-1), hi(0)],
    };
    let rho_c = [h(1), h(-1), hi(0)];
    let rho_jn = std::array::from_fn(|k| rho_j[k] - rho_c[k]);
    RhoVectors { rho_j, rho_c, rho_jn }
}

/// rho_J - 2 rho_c, the shift from lambda to the Blattner parameter.
pub fn blattner_shift(chamber: Chamber) -> HalfIntTriple {
    let r = rho_vectors(chamber);
    std::array::from_fn(|k| r.rho_j[k] - r.rho_c[k].scale(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlattnerParam {
    /// Highest weight Lambda of the minimal K-type.
    pub weight: HalfIntTriple,
    pub r: i64,
    pub s: i64,
    pub chamber: Chamber,
}

impl BlattnerParam {
    /// Build from a highest weight; r and s follow from it.
    pub fn from_weight(weight: HalfIntTriple, chamber: Chamber) -> Self {
        let r = (weight[0] - weight[1]).to_int().expect("Lambda_1 - Lambda_2 integral");
        let s = (weight[1] - weight[2]).to_int().expect("Lambda_2 - Lambda_3 integral");
        BlattnerParam { weight, r, s, chamber }
    }
}

pub fn blattner(lambda: &HCParam) -> BlattnerParam {
    let d = blattner_shift(lambda.chamber);
    let l = lambda.lambda;
    BlattnerParam::from_weight(std::array::from_fn(|k| l[k] + d[k]), lambda.chamber)
}

/// lambda = Lambda - rho_J + 2 rho_c.
pub fn blattner_inverse(weight: &HalfIntTriple, chamber: Chamber) -> HalfIntTriple {
    let d = blattner_shift(chamber);
    std::array::from_fn(|k| weight[k] - d[k])
}

/// (x1, x2, x3) -> (-x2, -x1, -x3); an involution.
pub fn dual_triple(t: &HalfIntTriple) -> HalfIntTriple {
    [-t[1], -t[0], -t[2]]
}

pub fn dual_param(lambda: &HCParam) -> HCParam {
    HCParam::new(dual_triple(&lambda.lambda)).expect("duality preserves regularity and dominance")
}

/// |(l1-l2)(l2-l3)(l1-l3)|.
pub fn formal_degree(lambda: &HCParam) -> Rational {
    let [l1, l2, l3] = lambda.lambda.map(|x| x.to_rational());
    ((&l1 - &l2) * (&l2 - &l3) * (&l1 - &l3)).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseTag {
    A,
    B,
    C1,
    C2,
    D1,
    D2,
}

impl CaseTag {
    pub const ALL: [CaseTag; 6] = [CaseTag::A, CaseTag::B, CaseTag::C1, CaseTag::C2, CaseTag::D1, CaseTag::D2];

    /// Subcases that can occur for this case.
    pub fn subcases(self) -> &'static [Chamber] {
        match self {
            CaseTag::A => &[Chamber::II],
            CaseTag::B => &[Chamber::I],
            CaseTag::C1 | CaseTag::D1 => &[Chamber::I, Chamber::II, Chamber::III],
            CaseTag::C2 => &[Chamber::II, Chamber::III],
            CaseTag::D2 => &[Chamber::I, Chamber::III],
        }
    }

    /// Names of the case parameters, in the order used by [`CaseParams::values`].
    pub fn param_names(self) -> [&'static str; 3] {
        match self {
            CaseTag::A => ["mu1", "mu2", "nu"],
            CaseTag::B => ["nu1", "nu2", "alpha"],
            CaseTag::C1 => ["mu1", "mu2", "alpha"],
            CaseTag::C2 => ["mu", "nu", "beta"],
            CaseTag::D1 => ["nu1", "nu2", "beta"],
            CaseTag::D2 => ["mu", "nu", "alpha"],
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl std::str::FromStr for CaseTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        CaseTag::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown case `{s}` (expected one of A, B, C1, C2, D1, D2)"))
    }
}

/// Non-negative case parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseParams {
    A { mu1: u32, mu2: u32, nu: u32 },
    B { nu1: u32, nu2: u32, alpha: u32 },
    C1 { mu1: u32, mu2: u32, alpha: u32 },
    C2 { mu: u32, nu: u32, beta: u32 },
    D1 { nu1: u32, nu2: u32, beta: u32 },
    D2 { mu: u32, nu: u32, alpha: u32 },
}

impl CaseParams {
    /// Build from a tag and values ordered as in [`CaseTag::param_names`].
    /// Returns `None` when a dominance constraint (mu1 >= mu2, nu1 >= nu2) fails.
    pub fn from_values(tag: CaseTag, v: [u32; 3]) -> Option<Self> {
        let [x, y, z] = v;
        let p = match tag {
            CaseTag::A => CaseParams::A { mu1: x, mu2: y, nu: z },
            CaseTag::B => CaseParams::B { nu1: x, nu2: y, alpha: z },
            CaseTag::C1 => CaseParams::C1 { mu1: x, mu2: y, alpha: z },
            CaseTag::C2 => CaseParams::C2 { mu: x, nu: y, beta: z },
            CaseTag::D1 => CaseParams::D1 { nu1: x, nu2: y, beta: z },
            CaseTag::D2 => CaseParams::D2 { mu: x, nu: y, alpha: z },
        };
        let dominant = match tag {
            CaseTag::A | CaseTag::B | CaseTag::C1 | CaseTag::D1 => x >= y,
            _ => true,
        };
        dominant.then_some(p)
    }

    pub fn tag(&self) -> CaseTag {
        match self {
            CaseParams::A { .. } => CaseTag::A,
            CaseParams::B { .. } => CaseTag::B,
            CaseParams::C1 { .. } => CaseTag::C1,
            CaseParams::C2 { .. } => CaseTag::C2,
            CaseParams::D1 { .. } => CaseTag::D1,
            CaseParams::D2 { .. } => CaseTag::D2,
        }
    }

    pub fn values(&self) -> [u32; 3] {
        match *self {
            CaseParams::A { mu1, mu2, nu } => [mu1, mu2, nu],
            CaseParams::B { nu1, nu2, alpha } => [nu1, nu2, alpha],
            CaseParams::C1 { mu1, mu2, alpha } => [mu1, mu2, alpha],
            CaseParams::C2 { mu, nu, beta } => [mu, nu, beta],
            CaseParams::D1 { nu1, nu2, beta } => [nu1, nu2, beta],
            CaseParams::D2 { mu, nu, alpha } => [mu, nu, alpha],
        }
    }

    /// The Fock-side K-weight sigma^vee of the joint harmonic.
    pub fn sigma_dual(&self) -> HalfIntTriple {
        let [x, y, z] = self.values().map(|v| v as i64);
        let t = match self.tag() {
            CaseTag::A => [2 * x + 3, 2 * y + 3, -2 * z - 3],
            CaseTag::B => [-2 * y - 3, -2 * x - 3, 2 * z + 3],
            CaseTag::C1 => [2 * x + 1, 2 * y + 1, 2 * z - 1],
            CaseTag::C2 => [2 * x + 1, -2 * y + 1, -2 * z - 1],
            CaseTag::D1 => [-2 * y - 1, -2 * x - 1, -2 * z + 1],
            CaseTag::D2 => [2 * x - 1, -2 * y - 1, 2 * z + 1],
        };
        triple_from_twice(t)
    }

    /// The K'-weight sigma' paired with [`Self::sigma_dual`].
    pub fn sigma_prime(&self) -> HalfIntTriple {
        let [x, y, z] = self.values().map(|v| v as i64);
        let t = match self.tag() {
            CaseTag::A => [2 * x + 1, 2 * y + 1, -2 * z + 1],
            CaseTag::B => [2 * z - 1, -2 * y - 1, -2 * x - 1],
            CaseTag::C1 => [2 * x + 1, 2 * y + 1, 2 * z - 1],
            CaseTag::C2 => [2 * x + 1, -2 * z + 1, -2 * y - 1],
            CaseTag::D1 => [-2 * z + 1, -2 * y - 1, -2 * x - 1],
            CaseTag::D2 => [2 * x + 1, 2 * z - 1, -2 * y - 1],
        };
        triple_from_twice(t)
    }

    /// The unique inequality regime the parameters fall in, if any.
    pub fn regime(&self) -> Option<Chamber> {
        let ge = |a: u32, b: u32, k: u32| a >= b + k;
        match *self {
            CaseParams::A { .. } => Some(Chamber::II),
            CaseParams::B { .. } => Some(Chamber::I),
            CaseParams::C1 { mu1, mu2, alpha } => {
                if ge(alpha, mu1, 4) {
                    Some(Chamber::I)
                } else if ge(mu2, alpha, 2) {
                    Some(Chamber::II)
                } else if mu1 >= alpha && ge(alpha, mu2, 2) {
                    Some(Chamber::III)
                } else {
                    None
                }
            }
            CaseParams::C2 { nu, beta, .. } => {
                if ge(beta, nu, 2) {
                    Some(Chamber::II)
                } else if ge(nu, beta, 2) {
                    Some(Chamber::III)
                } else {
                    None
                }
            }
            CaseParams::D1 { nu1, nu2, beta } => {
                if ge(nu2, beta, 2) {
                    Some(Chamber::I)
                } else if ge(beta, nu1, 4) {
                    Some(Chamber::II)
                } else if nu1 >= beta && ge(beta, nu2, 2) {
                    Some(Chamber::III)
                } else {
                    None
                }
            }
            CaseParams::D2 { mu, alpha, .. } => {
                if ge(alpha, mu, 2) {
                    Some(Chamber::I)
                } else if ge(mu, alpha, 2) {
                    Some(Chamber::III)
                } else {
                    None
                }
            }
        }
    }
}

impl fmt::Display for CaseParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.tag().param_names();
        let v = self.values();
        write!(f, "{} ({}={}, {}={}, {}={})", self.tag(), names[0], v[0], names[1], v[1], names[2], v[2])
    }
}

/// A joint-harmonic case with its subcase (the chamber of the discrete
/// series it pairs with).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DualPairCase {
    pub params: CaseParams,
    pub subcase: Chamber,
}

impl DualPairCase {
    /// Attach the subcase determined by the inequality regime.
    pub fn from_params(params: CaseParams) -> Result<Self, RepError> {
        let subcase = params.regime().ok_or(RepError::BoundaryParameter(params))?;
        Ok(DualPairCase { params, subcase })
    }

    /// Like [`Self::from_params`] but insists on the given subcase.
    pub fn with_subcase(params: CaseParams, subcase: Chamber) -> Result<Self, RepError> {
        let c = Self::from_params(params)?;
        if c.subcase != subcase {
            return Err(RepError::WrongSubcase { params, subcase });
        }
        Ok(c)
    }

    pub fn tag(&self) -> CaseTag {
        self.params.tag()
    }

    pub fn sigma_dual(&self) -> HalfIntTriple {
        self.params.sigma_dual()
    }

    /// Blattner parameter of the discrete series: Lambda = (sigma^vee)^vee.
    pub fn blattner(&self) -> BlattnerParam {
        BlattnerParam::from_weight(dual_triple(&self.sigma_dual()), self.subcase)
    }

    /// Harish-Chandra parameter of the discrete series paired with this case.
    pub fn lambda(&self) -> HCParam {
        let b = self.blattner();
        HCParam::new(blattner_inverse(&b.weight, self.subcase)).expect("regime guarantees a regular parameter")
    }
}

impl fmt::Display for DualPairCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, subcase {}", self.params, self.subcase)
    }
}

fn nonneg(x: HalfInt) -> Option<u32> {
    x.to_int().filter(|v| *v >= 0).and_then(|v| u32::try_from(v).ok())
}

/// Solve sigma^vee = pattern(tag) for the case parameters, ignoring regimes.
pub fn match_pattern(tag: CaseTag, s: &HalfIntTriple) -> Option<CaseParams> {
    let [x1, x2, x3] = *s;
    let (a, b, c) = match tag {
        CaseTag::A => (x1 - h(3), x2 - h(3), -x3 - h(3)),
        CaseTag::B => (-x2 - h(3), -x1 - h(3), x3 - h(3)),
        CaseTag::C1 => (x1 - h(1), x2 - h(1), x3 + h(1)),
        CaseTag::C2 => (x1 - h(1), -x2 + h(1), -x3 - h(1)),
        CaseTag::D1 => (-x2 - h(1), -x1 - h(1), -x3 + h(1)),
        CaseTag::D2 => (x1 + h(1), -x2 - h(1), x3 - h(1)),
    };
    let v = [nonneg(a)?, nonneg(b)?, nonneg(c)?];
    let p = CaseParams::from_values(tag, v)?;
    debug_assert_eq!(p.sigma_dual(), *s);
    Some(p)
}

/// Classify a Fock-side K-weight sigma^vee into a case and subcase.
///
/// Patterns are tried in the order A, B, C1, C2, D1, D2; the first one that
/// also lies in an inequality regime wins. A weight that fits some pattern
/// but no regime is a `BoundaryParameter`.
pub fn case_classify(sigma_dual: &HalfIntTriple) -> Result<DualPairCase, RepError> {
    let mut boundary = None;
    for tag in CaseTag::ALL {
        if let Some(p) = match_pattern(tag, sigma_dual) {
            match DualPairCase::from_params(p) {
                Ok(c) => return Ok(c),
                Err(e) => {
                    boundary.get_or_insert(e);
                }
            }
        }
    }
    Err(boundary.unwrap_or(RepError::NoCaseMatch(*sigma_dual)))
}

/// Case attached to a Harish-Chandra parameter: classify the dual of its
/// Blattner parameter.
pub fn case_of_lambda(lambda: &HCParam) -> Result<DualPairCase, RepError> {
    let b = blattner(lambda);
    let c = case_classify(&dual_triple(&b.weight))?;
    debug_assert_eq!(c.subcase, lambda.chamber());
    Ok(c)
}

/// Admissible (r, s) for a chamber: the conditions under which the
/// closed-form radial coefficients are square integrable.
pub fn rs_admissible(chamber: Chamber, r: i64, s: i64) -> bool {
    r >= 0
        && match chamber {
            Chamber::I => s >= 3,
            Chamber::II => r + s <= -3,
            Chamber::III => s < 0 && r + s > 0,
        }
}
