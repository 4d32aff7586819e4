//! Threshold scans over the exact expectations and the assembled prediction.

use serde::Serialize;

use super::{asymptotic, AnalyticContext, AnalyticsError};

/// `p` within this factor of `ln(n) n^(-(k-1)^2/k)` is labeled critical.
pub const CRITICAL_BAND: (f64, f64) = (0.5, 2.0);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SxResult {
    pub s_x: usize,
    /// `ln E[X_{s_x}]`.
    pub log_expected: f64,
    /// Whether `E[X_{s_x + 2}] < 1` at these parameters.
    pub side_condition: bool,
}

/// Largest `s` with `E[X_s] > n^(2 epsilon)`.
///
/// `ln E[X_s]` is concave in `s`, so the scan stops at the first `s` past the
/// maximizer where the value is below the cutoff.
pub fn compute_sx(ctx: &AnalyticContext) -> Result<SxResult, AnalyticsError> {
    let cutoff = 2.0 * ctx.epsilon() * ctx.ln_n();
    let mut last = None;
    let mut prev = f64::NEG_INFINITY;
    for s in 0..=ctx.n() {
        let v = ctx.log_expected_xs(s);
        if v > cutoff {
            last = Some((s, v));
        } else if v < prev {
            break;
        }
        prev = v;
    }
    let (s_x, log_expected) = last.ok_or(AnalyticsError::NoThreshold)?;
    Ok(SxResult { s_x, log_expected, side_condition: ctx.log_expected_xs(s_x + 2) < 0.0 })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RmResult {
    pub s: usize,
    /// Argmax over `r` of `E(n, k, s, r)`, smallest on ties.
    pub r_m: usize,
    pub log_e_max: f64,
    /// `ceil(s^(2k-1) p / (k! e^k n^(k-1)) - 1)`, clamped at 0.
    pub predictor: usize,
    /// The expression inside the ceiling.
    pub predictor_raw: f64,
    /// Whether `ln E(n,k,s,r)` rises then falls over the scanned `r`.
    pub unimodal: bool,
}

/// Full scan of `r` in `0..=min(s/(k-1), n-s)`.
pub fn compute_rm(ctx: &AnalyticContext, s: usize) -> Result<RmResult, AnalyticsError> {
    let (n, k) = (ctx.n(), ctx.k());
    if s > n {
        return Err(AnalyticsError::Domain(format!("s={s} exceeds n={n}")));
    }
    let r_max = (s / (k - 1)).min(n - s);
    let values: Vec<f64> =
        (0..=r_max).map(|r| ctx.log_expected_augmented(s, r)).collect::<Result<_, _>>()?;
    let (r_m, log_e_max) = values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (r, v)| if v > best.1 { (r, v) } else { best });
    let unimodal = values[..=r_m].windows(2).all(|w| w[0] <= w[1]) && values[r_m..].windows(2).all(|w| w[0] >= w[1]);
    let predictor_raw = rm_closed_form(ctx, s) - 1.0;
    let predictor = predictor_raw.ceil().max(0.0) as usize;
    Ok(RmResult { s, r_m, log_e_max, predictor, predictor_raw, unimodal })
}

/// `s^(2k-1) p / (k! e^k n^(k-1))`.
pub(crate) fn rm_closed_form(ctx: &AnalyticContext, s: usize) -> f64 {
    let k = ctx.k() as f64;
    ((2.0 * k - 1.0) * (s as f64).ln() + ctx.p().ln() - ctx.ln_factorial(ctx.k()) - k - (k - 1.0) * ctx.ln_n())
        .exp()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SzResult {
    pub s_z: usize,
    pub r_z: usize,
    /// `ln E(n, k, s_z, r_z)`.
    pub log_e: f64,
}

/// Largest `s <= s_x` for which some `r` has `E(n, k, s, r) > n^epsilon`,
/// with `r_z = r_M(s_z)`.
pub fn compute_sz(ctx: &AnalyticContext) -> Result<SzResult, AnalyticsError> {
    let s_x = compute_sx(ctx)?.s_x;
    let cutoff = ctx.epsilon() * ctx.ln_n();
    for s in (0..=s_x).rev() {
        let rm = compute_rm(ctx, s)?;
        if rm.log_e_max > cutoff {
            return Ok(SzResult { s_z: s, r_z: rm.r_m, log_e: rm.log_e_max });
        }
    }
    Err(AnalyticsError::NoThreshold)
}

/// Predicted size of `s_x - s_z`, by regime of `p` relative to
/// `ln(n) n^(-(k-1)^2/k)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum GapRegime {
    /// `p` well above the critical scale: the gap is 0.
    Dense { c: f64, predicted_gap: f64 },
    /// `p = C ln(n) n^(-(k-1)^2/k)` with `C` inside [`CRITICAL_BAND`].
    Critical {
        c: f64,
        xi_lower: f64,
        xi_upper: f64,
        /// The point expression for the gap without its vanishing term,
        /// before rounding up.
        xi_raw: f64,
    },
    /// `p` well below: gap `~ (k! ln d)^(k/(k-1)) / (e^k p^(k/(k-1)) n^(k-1))`.
    Sparse { c: f64, predicted_gap: f64, predicted_gap_from_sx: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct PredictionReport {
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub epsilon: f64,
    pub d: f64,
    pub s_x: usize,
    pub s_z: usize,
    pub r_z: usize,
    pub window: [usize; 2],
    pub gap: usize,
    pub gap_regime: GapRegime,
    /// Central value of the `f^{-1}` asymptotic with its vanishing term set
    /// to zero; `None` when `d <= 1` or the argument is not positive.
    pub asymptotic_alpha: Option<f64>,
    /// Leading-order `(k! ln d / p)^(1/(k-1))`; `None` when `d <= 1`.
    pub ks_alpha: Option<f64>,
    pub log_EXsx: f64,
    pub sx_side_condition: bool,
    /// Closed-form `r_M` predictor at `s_z`, for comparison with `r_z`.
    pub rz_predictor: usize,
}

/// The critical scale `ln(n) n^(-(k-1)^2/k)`.
pub fn critical_p(n: usize, k: usize) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    nf.ln() * nf.powf(-(kf - 1.0) * (kf - 1.0) / kf)
}

fn classify(ctx: &AnalyticContext, sx: &SxResult) -> GapRegime {
    let (n, k) = (ctx.n() as f64, ctx.k() as f64);
    let c = ctx.p() / critical_p(ctx.n(), ctx.k());
    let e_k = k.exp();
    if c > CRITICAL_BAND.1 {
        GapRegime::Dense { c, predicted_gap: 0.0 }
    } else if c >= CRITICAL_BAND.0 {
        let expo = k / (k - 1.0);
        let base = ctx.ln_factorial(ctx.k() - 1).exp().powf(expo) / (c.powf(expo) * e_k);
        GapRegime::Critical {
            c,
            xi_lower: base - expo - 0.5,
            xi_upper: base + 1.5,
            xi_raw: base - expo * sx.log_expected / n.ln() + expo * ctx.epsilon(),
        }
    } else {
        let expo = k / (k - 1.0);
        let k_fact = ctx.ln_factorial(ctx.k()).exp();
        let ln_d = ctx.d().ln();
        let predicted_gap = (k_fact * ln_d).powf(expo) / (e_k * ctx.p().powf(expo) * n.powf(k - 1.0));
        let predicted_gap_from_sx = (sx.s_x as f64).powf(k) / (e_k * n.powf(k - 1.0));
        GapRegime::Sparse { c, predicted_gap, predicted_gap_from_sx }
    }
}

/// Thresholds, window and regime for one parameter point.
pub fn predict(ctx: &AnalyticContext) -> Result<PredictionReport, AnalyticsError> {
    let sx = compute_sx(ctx)?;
    let sz = compute_sz(ctx)?;
    let rz = compute_rm(ctx, sz.s_z)?;
    let asymptotic_alpha = asymptotic::asymptotic_alpha(ctx.n(), ctx.k(), ctx.p()).ok();
    let ks_alpha = asymptotic::ks_alpha_j(ctx.n(), ctx.k(), ctx.k() - 1, ctx.p()).ok();
    Ok(PredictionReport {
        n: ctx.n(),
        k: ctx.k(),
        p: ctx.p(),
        epsilon: ctx.epsilon(),
        d: ctx.d(),
        s_x: sx.s_x,
        s_z: sz.s_z,
        r_z: sz.r_z,
        window: [sz.s_z, sz.s_z + 1],
        gap: sx.s_x - sz.s_z,
        gap_regime: classify(ctx, &sx),
        asymptotic_alpha,
        ks_alpha,
        log_EXsx: sx.log_expected,
        sx_side_condition: sx.side_condition,
        rz_predictor: rz.predictor,
    })
}
