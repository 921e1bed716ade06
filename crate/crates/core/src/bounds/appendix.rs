//! Exact and floating-point checks that the regular-graph chords and the
//! split-construction chord stay below the Queen-Bee lower bound.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn l(x: &BigRational) -> BigRational {
    (x - int(1)) / (x * (x - int(2)))
}

/// Discriminant of `Δl x² + (l − Δl (t + 3/2)) x + 3tΔl/2 − 3l/2 − 1` where
/// `l(x) = (x − 1)/(x(x − 2))`, `l = l(t)` and `Δl = l(t + 1) − l(t)`.
/// Its zeros are where the chord of `l` over `[t, t + 1]` meets
/// `1/(x − 3/2)`.
pub fn appendix_b_discriminant(t: i64) -> Result<BigRational> {
    if t < 4 {
        return Err(Error::InvalidParameter(format!("t = {t} below 4")));
    }
    let tt = int(t);
    let lt = l(&tt);
    let dl = l(&(&tt + int(1))) - &lt;
    let half = BigRational::new(BigInt::from(3), BigInt::from(2));
    let a = dl.clone();
    let b = &lt - &dl * (&tt + &half);
    let c = &half * &tt * &dl - &half * &lt - int(1);
    Ok(&b * &b - int(4) * a * c)
}

/// The discriminant as a ratio of polynomials in `t`.
pub fn appendix_b_t_form(t: i64) -> BigRational {
    let tt = int(t);
    let pow = |k: u32| num_traits::pow(tt.clone(), k as usize);
    let num = int(8) * pow(5) - int(41) * pow(4) + int(66) * pow(3) - int(71) * pow(2) + int(38) * &tt - int(1);
    let sq = |x: BigRational| &x * &x;
    let den = int(4) * sq(&tt + int(1)) * sq(&tt - int(1)) * sq(tt.clone()) * sq(&tt - int(2));
    -(num / den)
}

/// The discriminant in `s = t − 4`, whose numerator has only positive
/// coefficients.
pub fn appendix_b_s_form(s: i64) -> BigRational {
    let ss = int(s);
    let pow = |k: u32| num_traits::pow(ss.clone(), k as usize);
    let num = int(8) * pow(5) + int(119) * pow(4) + int(690) * pow(3) + int(1905) * pow(2) + int(2382) * &ss + int(935);
    let sq = |x: BigRational| &x * &x;
    let den = int(4) * sq(&ss + int(5)) * sq(&ss + int(3)) * sq(&ss + int(4)) * sq(&ss + int(2));
    -(num / den)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscriminantReport {
    pub t_min: i64,
    pub t_max: i64,
    pub checked: usize,
    pub all_negative: bool,
    pub forms_agree: bool,
    /// First `t` where a check failed.
    pub first_failure: Option<i64>,
    /// Exact value at `t_min`, as `numerator/denominator`.
    pub value_at_min: String,
}

/// Checks negativity and agreement of all three forms for every integer
/// `t` in `[t_min, t_max]`.
pub fn check_discriminants(t_min: i64, t_max: i64) -> Result<DiscriminantReport> {
    if t_min < 4 || t_max < t_min {
        return Err(Error::InvalidParameter(format!("bad range [{t_min}, {t_max}]")));
    }
    let mut all_negative = true;
    let mut forms_agree = true;
    let mut first_failure = None;
    for t in t_min..=t_max {
        let d = appendix_b_discriminant(t)?;
        let neg = d.is_negative() && !d.is_zero();
        let agree = d == appendix_b_t_form(t) && d == appendix_b_s_form(t - 4);
        all_negative &= neg;
        forms_agree &= agree;
        if !(neg && agree) && first_failure.is_none() {
            first_failure = Some(t);
        }
    }
    Ok(DiscriminantReport {
        t_min,
        t_max,
        checked: (t_max - t_min + 1) as usize,
        all_negative,
        forms_agree,
        first_failure,
        value_at_min: appendix_b_discriminant(t_min)?.to_string(),
    })
}

/// The two floating-point comparisons on `[10/3, 4]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentReport {
    /// Value used for the split construction at `α = 10/3`.
    pub ten_thirds_value: f64,
    /// Slope of the chord to `(4, 3/8)`.
    pub chord_slope: f64,
    /// `a x² + b x + c = 0` where the chord meets `1/(x − 3/2)`.
    pub quadratic: [f64; 3],
    pub quadratic_discriminant: f64,
    /// `(5 − x)/3 − chord(x) = intercept + slope·x`.
    pub line: [f64; 2],
    pub line_root: f64,
    /// Agreement with the quoted coefficients to four decimals.
    pub quadratic_matches: bool,
    pub line_matches: bool,
}

/// Quoted coefficients: the quadratic, then the linear difference.
pub const QUOTED_QUADRATIC: [f64; 3] = [-0.2295, 1.63725, -2.9395];
pub const QUOTED_LINE: [f64; 2] = [0.373666667, -0.1038333333];

fn close4(a: f64, b: f64) -> bool {
    (a - b).abs() < 5e-5
}

/// Rebuilds both comparisons from the chord through `(10/3, v)` and
/// `(4, 3/8)`.
pub fn segment_checks_at(v: f64) -> SegmentReport {
    let slope = (0.375 - v) / (2.0 / 3.0);
    // chord(x) = slope·x + k
    let k = v - slope * 10.0 / 3.0;
    // (slope·x + k)(x − 3/2) − 1 = 0
    let quadratic = [slope, k - 1.5 * slope, -1.5 * k - 1.0];
    let disc = quadratic[1] * quadratic[1] - 4.0 * quadratic[0] * quadratic[2];
    let line = [5.0 / 3.0 - k, -1.0 / 3.0 - slope];
    SegmentReport {
        ten_thirds_value: v,
        chord_slope: slope,
        quadratic,
        quadratic_discriminant: disc,
        line,
        line_root: -line[0] / line[1],
        quadratic_matches: quadratic.iter().zip(QUOTED_QUADRATIC).all(|(&a, b)| close4(a, b)),
        line_matches: line.iter().zip(QUOTED_LINE).all(|(&a, b)| close4(a, b)),
    }
}

/// The comparisons with the split value rounded to `0.528`, which is how
/// the quoted coefficients were produced.
pub fn appendix_b_segment_checks() -> SegmentReport {
    segment_checks_at(0.528)
}
