//! Assembled predictions: the smoothed approximation `Lambda_f`, main-term
//! expansions with jump corrections, the density of the comparison measure,
//! moment sets and local laws for `omega(n)` over friable integers, and the
//! saddle points `alpha_z`, `alpha_r`.
//!
//! Everything specializes to the concrete family `f_z(n) = z^{omega(n)}`.

use num_complex::Complex64;

use crate::arith::OmegaProfile;
use crate::coeffs;
use crate::config::Config;
use crate::dde::{self, PsiEvaluator, SolutionTable};
use crate::error::{Error, Result};
use crate::primes::primes_up_to;
use crate::quad;
use crate::series::SeriesPoly;
use crate::specfun;
use crate::zparams::ZParams;

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn u_of(x: f64, y: f64) -> f64 {
    x.ln() / y.ln()
}

/// Powers z^k for k = 0..63, enough for omega(n) of any representable n.
fn z_powers(z: Complex64) -> [Complex64; 64] {
    let mut out = [czero(); 64];
    out[0] = Complex64::new(1.0, 0.0);
    for k in 1..64 {
        out[k] = out[k - 1] * z;
    }
    out
}

// ---------------------------------------------------------------------------
// Lambda_f
// ---------------------------------------------------------------------------

/// The smoothed approximation `Lambda_f(x, y) = x int g_z(u - v) d(M(y^v; f)/y^v)`,
/// evaluated exactly as jump-plus-drift:
/// `sum_{n <= x} g_z(u - log_y n) f_z(n)/n - log y int_0^u g_z(u - v)
/// M(y^v; f_z) y^{-v} dv`, the drift integral split at every integer n and
/// at the breakpoints of g_z.
pub fn lambda_f(
    x: f64,
    y: f64,
    zp: ZParams,
    g_table: &SolutionTable,
    profile: &OmegaProfile,
) -> Result<Complex64> {
    if !(x >= y) || !(y >= 2.0) {
        return Err(Error::Domain("lambda_f needs x >= y >= 2".into()));
    }
    let u = u_of(x, y);
    if g_table.v_max + 1e-9 < u {
        return Err(Error::Range(format!(
            "g_z table reaches {} but u = {u}",
            g_table.v_max
        )));
    }
    let n_max = x.floor() as u64;
    if profile.x_max < n_max {
        return Err(Error::Range("omega profile shorter than x".into()));
    }
    let c = y.ln();
    let zpow = z_powers(zp.z);
    let rule = quad::gauss_legendre(6);
    let mut jump_sum = czero();
    let mut drift = czero();
    let mut m_cum = czero(); // M(n; f_z)
    // Breakpoints of g_z(u - v) at v = u - k.
    let mut gbreaks: Vec<f64> = Vec::new();
    let mut k = 0.0;
    while u - k > 0.0 {
        gbreaks.push(u - k);
        k += 1.0;
    }
    let geval = |v: f64| -> Complex64 { g_table.eval(v).unwrap_or(czero()) };
    for n in 1..=n_max {
        let vn = (n as f64).ln() / c;
        let f_n = zpow[profile.omega[n as usize] as usize];
        jump_sum += geval(u - vn) * f_n / n as f64;
        m_cum += f_n;
        // Drift over [v_n, min(v_{n+1}, u)].
        let v_next = (((n + 1) as f64).ln() / c).min(u);
        if v_next <= vn {
            continue;
        }
        // Split at any g-breakpoint inside.
        let mut pieces: Vec<f64> = vec![vn];
        for &b in &gbreaks {
            if b > vn && b < v_next {
                pieces.push(b);
            }
        }
        pieces.push(v_next);
        pieces.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut seg = czero();
        for w in pieces.windows(2) {
            seg += quad::gl_integrate(w[0], w[1], &rule, |v| geval(u - v) * (-c * v).exp());
        }
        drift += seg * m_cum;
    }
    Ok((jump_sum - drift * c) * x)
}

// ---------------------------------------------------------------------------
// Main-term expansion and corrections
// ---------------------------------------------------------------------------

/// One assembled expansion `x (log y)^{z-1} sum_j a_j psi_z^{(j)}(u)/(log y)^j`.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub zp: ZParams,
    pub j_requested: usize,
    /// `(j, a_j, psi_z^{(j)}(u))` for the terms actually summed.
    pub terms: Vec<(usize, Complex64, Complex64)>,
    /// Main term (without corrections).
    pub main: Complex64,
    /// Jump correction `x U_J` (integer z off the validity set); zero
    /// otherwise or when no sieve profile was supplied.
    pub correction: Complex64,
    /// Reported truncation tail of the correction's W-integrals.
    pub correction_tail: f64,
    /// `|x R_z(u) (log 2u)^{J+1} / (log y)^{J+2-Re z}|`.
    pub error_envelope: f64,
    pub in_g_beta: bool,
    pub in_v_set: bool,
    /// For non-integer z off the validity set the sum stops at `l + m_z - 1`.
    pub restricted_below: Option<usize>,
}

impl Expansion {
    pub fn total(&self) -> Complex64 {
        self.main + self.correction
    }
}

/// Membership in `V_J(y)` under the distance-to-integers reading:
/// `|u - j| >= e_y` for every integer `1 <= j <= min(u, J+1)`.
pub fn in_v_set(u: f64, y: f64, j_cap: usize, cfg: &Config) -> bool {
    let e_y = cfg.e_y(y);
    let top = (u.floor() as usize).min(j_cap + 1);
    for j in 1..=top {
        if (u - j as f64).abs() < e_y {
            return false;
        }
    }
    true
}

/// Assembles the expansion of order `J`. For integer z off the validity set
/// the correction `x U_J` is added when a sieve profile is available; for
/// non-integer z the summation is restricted to `j < l + m_z`.
#[allow(clippy::too_many_arguments)]
pub fn main_expansion(
    x: f64,
    y: f64,
    zp: ZParams,
    j_max: usize,
    psi: &PsiEvaluator,
    a_series: &SeriesPoly,
    profile: Option<&OmegaProfile>,
    cfg: &Config,
) -> Result<Expansion> {
    if !(x >= y) || !(y >= 2.0) {
        return Err(Error::Domain("main_expansion needs x >= y >= 2".into()));
    }
    let u = u_of(x, y);
    if psi.table.v_max + 1e-9 < u {
        return Err(Error::Range(format!(
            "psi table reaches {} but u = {u}",
            psi.table.v_max
        )));
    }
    let z = zp.z;
    let ly = y.ln();
    let j_z = (j_max as i64 + 1 - zp.m_z as i64).max(0) as usize;
    let in_v = in_v_set(u, y, j_z, cfg);
    let ell = if u == u.floor() {
        u as i64 - 1
    } else {
        u.floor() as i64
    };
    let mut restricted_below = None;
    let mut j_top = j_max as i64;
    if !in_v && !zp.is_integer() {
        // summation restricted to 0 <= j < l + m_z (possibly empty)
        j_top = (ell + zp.m_z as i64 - 1).min(j_max as i64);
        restricted_below = Some((ell + zp.m_z as i64).max(0) as usize);
    }
    let mut terms = Vec::new();
    let mut sum = czero();
    let side = if u == u.floor() {
        Some(dde::Side::Right)
    } else {
        None
    };
    for j in 0..=j_top.max(-1) {
        if j < 0 {
            break;
        }
        let a_j = a_series.coeff(j as usize);
        let psid = psi.derivative(j as usize, u, side)?;
        terms.push((j as usize, a_j, psid));
        sum += a_j * psid * (-(j as f64) * ly.ln()).exp();
    }
    let scale = ((z - 1.0) * ly.ln()).exp() * x;
    let main = scale * sum;
    let mut correction = czero();
    let mut correction_tail = 0.0;
    if !in_v && zp.is_integer() && ell >= 1 {
        if let Some(prof) = profile {
            let (c, tail) = correction_terms(x, y, zp, j_max, psi, a_series, prof, cfg)?;
            correction = c * x;
            correction_tail = tail * x;
        }
    }
    let r_z = dde::big_r(zp, u.max(1.0), cfg).unwrap_or(1.0 / u.max(1.0).sqrt());
    let envelope = x * r_z * (2.0 * u).ln().max(1.0_f64.ln()).powi(j_max as i32 + 1)
        / ly.powf(j_max as f64 + 2.0 - z.re).abs();
    Ok(Expansion {
        zp,
        j_requested: j_max,
        terms,
        main,
        correction,
        correction_tail,
        error_envelope: envelope.abs(),
        in_g_beta: cfg.in_g_beta(x, y),
        in_v_set: in_v,
        restricted_below,
    })
}

/// The jump correction `U_J` of the expansion for integer z when u is within
/// `e_y` of an integer: `sum_{l <= j <= J_z} (-1)^{j+1} delta_{z,l,j}/j! *
/// W_j(u - l, y; f)`. Returns `(U_J, reported tail)`, both per unit of x.
#[allow(clippy::too_many_arguments)]
pub fn correction_terms(
    x: f64,
    y: f64,
    zp: ZParams,
    j_max: usize,
    psi: &PsiEvaluator,
    a_series: &SeriesPoly,
    profile: &OmegaProfile,
    cfg: &Config,
) -> Result<(Complex64, f64)> {
    if !zp.is_integer() {
        return Err(Error::Domain(
            "the correction U_J is defined for integer z only".into(),
        ));
    }
    let u = u_of(x, y);
    let ell = if u == u.floor() {
        u as i64 - 1
    } else {
        u.floor() as i64
    };
    let j_z = (j_max as i64 + 1 - zp.m_z as i64).max(0);
    if ell < 1 || ell > j_z {
        return Ok((czero(), 0.0));
    }
    let jumps = psi.table.jump_table(j_z as u32)?;
    let mut total = czero();
    let mut tail_total = 0.0;
    let t = u - ell as f64;
    let w_all = w_weighted_moments(t, y, zp, j_z as usize, a_series, profile, cfg)?;
    let mut fact = 1.0f64;
    for j in 1..=j_z {
        fact *= j as f64;
        if j < ell {
            continue;
        }
        let delta = jumps
            .iter()
            .find(|jm| jm.h as i64 == ell && jm.j as i64 == j)
            .map(|jm| jm.delta)
            .unwrap_or(czero());
        if delta == czero() {
            continue;
        }
        let sign = if (j + 1) % 2 == 0 { 1.0 } else { -1.0 };
        let (wj, wtail) = w_all[j as usize];
        total += delta * (sign / fact) * wj;
        tail_total += (delta.norm() / fact) * wtail;
    }
    Ok((total, tail_total))
}

/// `W_j(t, y; f) = int_t^infty (v - t)^j d nu_{y,f}(v)` for j = 0..=j_max,
/// with `d nu = d(M(y^v; f)/y^v) - polynomial part`. Jumps and drift are
/// paired per integer to keep the summation absolutely convergent; the
/// integral is truncated at the profile end and the dropped tail is
/// estimated from the last summed block.
pub fn w_weighted_moments(
    t: f64,
    y: f64,
    zp: ZParams,
    j_max: usize,
    a_series: &SeriesPoly,
    profile: &OmegaProfile,
    _cfg: &Config,
) -> Result<Vec<(Complex64, f64)>> {
    let c = y.ln();
    let zpow = z_powers(zp.z);
    let n_max = profile.x_max;
    let mut acc = vec![czero(); j_max + 1];
    let mut last_block = vec![0.0f64; j_max + 1];
    let block_start = (n_max as f64 * 0.9) as u64;
    let mut m_cum = czero();
    // Antiderivative of (v-t)^j e^{-cv}:
    // -e^{-cv} sum_{i<=j} j!/(j-i)! (v-t)^{j-i} / c^{i+1}.
    let anti = |j: usize, v: f64, emcv: f64| -> f64 {
        let mut acc = 0.0;
        let mut coef = 1.0 / c;
        let w = v - t;
        for i in 0..=j {
            acc += coef * w.powi((j - i) as i32);
            coef *= (j - i) as f64 / c;
        }
        -emcv * acc
    };
    for n in 1..=n_max {
        let f_n = zpow[profile.omega[n as usize] as usize];
        m_cum += f_n;
        let vn = (n as f64).ln() / c;
        let vn1 = ((n + 1) as f64).ln() / c;
        if vn1 <= t {
            continue;
        }
        let lo = vn.max(t);
        let e_lo = if lo == vn { 1.0 / n as f64 } else { (-c * t).exp() };
        let e_hi = 1.0 / (n + 1) as f64;
        for j in 0..=j_max {
            let mut contrib = czero();
            if vn >= t {
                contrib += f_n * (vn - t).powi(j as i32) / n as f64;
            }
            let drift = anti(j, vn1, e_hi) - anti(j, lo, e_lo);
            contrib -= m_cum * (c * drift);
            acc[j] += contrib;
            if n >= block_start {
                last_block[j] += contrib.norm();
            }
        }
    }
    // Polynomial part of the comparison measure: subtract
    // (log y)^{z-1} sum_{1 <= i < m_z} a_{m-1-i} v^{i-1} /((i-1)! (log y)^{m-1-i})
    // integrated against (v-t)^j over [t, v_cut].
    let v_cut = (n_max as f64 + 1.0).ln() / c;
    let lyz = ((zp.z - 1.0) * c.ln()).exp();
    if zp.m_z > 1 {
        let m = zp.m as i64;
        let mut ifact = 1.0f64;
        for i in 1..zp.m_z as i64 {
            if i > 1 {
                ifact *= (i - 1) as f64;
            }
            let a_idx = m - 1 - i;
            if a_idx < 0 {
                continue;
            }
            let a_v = a_series.coeff(a_idx as usize);
            let coef = lyz * a_v / (ifact * c.powi((m - 1 - i) as i32));
            // int_t^{v_cut} (v-t)^j v^{i-1} dv via binomial expansion.
            for j in 0..=j_max {
                let mut integral = 0.0f64;
                let w1 = v_cut - t;
                // (w + t)^{i-1} = sum_q C(i-1,q) w^q t^{i-1-q}
                let mut binom = 1.0f64;
                for q in 0..=(i - 1) as usize {
                    if q > 0 {
                        binom *= ((i - 1) as usize - q + 1) as f64 / q as f64;
                    }
                    integral +=
                        binom * t.powi((i - 1) as i32 - q as i32) * w1.powi((j + q + 1) as i32)
                            / (j + q + 1) as f64;
                }
                acc[j] -= coef * integral;
            }
        }
    }
    // Tail estimate: the summed contributions decay roughly like the last
    // block's density; extrapolate one decade with a safety factor.
    Ok(acc
        .into_iter()
        .enumerate()
        .map(|(j, v)| (v, 10.0 * last_block[j]))
        .collect())
}

// ---------------------------------------------------------------------------
// Density of the comparison measure
// ---------------------------------------------------------------------------

/// `Z_{y,f}(v) = (log y)^{1-theta_z} Z_{e,f}(v log y)` from the two finite
/// sums of the density formula; the inner integral `int_0^a e^w w^{theta_z-1} dw`
/// runs on Gauss-Jacobi nodes for the weight `w^{theta-1}`.
pub fn z_density(
    v: f64,
    y: f64,
    zp: ZParams,
    profile: &OmegaProfile,
    cfg: &Config,
) -> Result<Complex64> {
    if zp.theta == 0.0 {
        return Err(Error::Domain(
            "the density formula needs Re z not an integer".into(),
        ));
    }
    let c = y.ln();
    let w = v * c;
    let cut = w.exp();
    if (cut - cut.round()).abs() < 1e-9 && cut.round() >= 1.0 {
        return Err(Error::EvalPoint(format!(
            "y^v = {cut} is an integer; the density is defined off integers"
        )));
    }
    let n_max = cut.floor() as u64;
    if profile.x_max < n_max {
        return Err(Error::Range("omega profile shorter than y^v".into()));
    }
    let gamma_tz = specfun::gamma(zp.theta_z)?;
    let zpow = z_powers(zp.z);
    let (nodes, weights) = quad::gauss_jacobi(cfg.cheb_degree.max(48), 0.0, zp.theta - 1.0);
    let inner = |a: f64| -> Complex64 {
        // int_0^a e^t t^{theta_z - 1} dt, weight t^{theta-1} on the nodes,
        // oscillatory factor t^{-i Im z} carried along.
        let scale = (Complex64::new(zp.theta, 0.0) * (a / 2.0).ln()).exp();
        let mut acc = czero();
        for (xk, wk) in nodes.iter().zip(weights.iter()) {
            let tk = a * (1.0 + xk) / 2.0;
            let osc = (Complex64::new(0.0, -zp.z.im) * tk.ln()).exp();
            acc += tk.exp() * osc * *wk;
        }
        scale * acc
    };
    let mut sum1 = czero();
    let mut sum2 = czero();
    for n in 1..=n_max {
        let f_n = zpow[profile.omega[n as usize] as usize];
        let a = w - (n as f64).ln();
        sum1 += f_n * inner(a);
        sum2 += f_n / n as f64 * ((zp.theta_z - 1.0) * a.ln()).exp();
    }
    // Z = G' where G is the fractional convolution of M(e^w) e^{-w}: the
    // product rule gives -G plus the boundary sum (the transform identity
    // pins the sign).
    let z_e = (-(-w).exp() * sum1 + sum2) / gamma_tz;
    Ok(((Complex64::new(1.0, 0.0) - zp.theta_z) * c.ln()).exp() * z_e)
}

// ---------------------------------------------------------------------------
// Moments, local laws, large deviations
// ---------------------------------------------------------------------------

/// `(mu_r, sigma_r^2, L, K_r)` at `(x, y, r)`.
#[derive(Debug, Clone, Copy)]
pub struct MomentSet {
    pub r: f64,
    pub u: f64,
    pub y: f64,
    pub mu_r: f64,
    pub sigma_r2: f64,
    /// `L = log_2 y + I(xi(u/r))`, so `mu_r = r L`.
    pub big_l: f64,
    /// Local-law prefactor; needs the rho tables.
    pub k_r: f64,
}

/// Mean and variance of the tilted model:
/// `mu_r = r log_2 y + r I(xi(u/r))`, `sigma_r^2 = mu_r - u^2 xi'(u/r)/r`.
pub fn moments_basic(x: f64, y: f64, r: f64) -> Result<(f64, f64, f64)> {
    moments_basic_u(u_of(x, y), y, r)
}

/// Same, parametrized by `u` directly (x = y^u may overflow f64).
pub fn moments_basic_u(u: f64, y: f64, r: f64) -> Result<(f64, f64, f64)> {
    if !(r > 0.0) {
        return Err(Error::Domain("r must be positive".into()));
    }
    let (xi, xi_prime) = specfun::solve_xi(u / r)?;
    let big_i = specfun::exp_integral_i(Complex64::new(xi, 0.0))?.re;
    let l = y.ln().ln() + big_i;
    let mu = r * l;
    let sigma2 = mu - u * u * xi_prime / r;
    Ok((mu, sigma2, l))
}

/// Full moment set including the local-law prefactor `K_r(u)`, which needs
/// the solved tables of `rho_r` and `rho = rho_1`.
pub fn moments(
    x: f64,
    y: f64,
    r: f64,
    rho_r: &SolutionTable,
    rho_1: &SolutionTable,
    cfg: &Config,
) -> Result<MomentSet> {
    let u = u_of(x, y);
    let (mu_r, sigma_r2, big_l) = moments_basic(x, y, r)?;
    if !(sigma_r2 > 0.0) {
        return Err(Error::Range(format!(
            "sigma_r^2 = {sigma_r2} not positive at (x, y, r) = ({x}, {y}, {r})"
        )));
    }
    let (xi, _) = specfun::solve_xi(u / r)?;
    let big_i = specfun::exp_integral_i(Complex64::new(xi, 0.0))?.re;
    let prefactor = coeffs::local_law_prefactor(r, cfg.euler_p);
    let rho_r_u = rho_r.eval(u)?.re;
    let rho_1_u = rho_1.eval(u)?.re;
    if rho_1_u == 0.0 {
        return Err(Error::Range("rho(u) underflowed".into()));
    }
    let k_r = prefactor * rho_r_u * ((1.0 - r) * big_i).exp() * mu_r.sqrt()
        / (rho_1_u * sigma_r2.sqrt());
    Ok(MomentSet {
        r,
        u,
        y,
        mu_r,
        sigma_r2,
        big_l,
        k_r,
    })
}

/// Solves `mu_r = k` for r on the given bracket. At desk scale `mu_r` rises
/// and then falls in r, so the bracket is scanned for the leftmost sign
/// change (the branch through r = 1) before bisecting.
pub fn solve_r_for_k(x: f64, y: f64, k: f64, bracket: (f64, f64)) -> Result<f64> {
    let f = |r: f64| moments_basic(x, y, r).map(|(mu, _, _)| mu - k);
    let grid = 64;
    let (b_lo, b_hi) = bracket;
    let mut lo = b_lo;
    let mut flo = f(lo)?;
    let mut hi = b_lo;
    let mut found = false;
    for i in 1..=grid {
        hi = b_lo + (b_hi - b_lo) * i as f64 / grid as f64;
        let fhi = f(hi)?;
        if flo == 0.0 {
            return Ok(lo);
        }
        if flo * fhi <= 0.0 {
            found = true;
            break;
        }
        lo = hi;
        flo = fhi;
    }
    if !found {
        return Err(Error::Range(format!(
            "mu_r = {k} has no root in [{b_lo}, {b_hi}]: mu({b_lo}) = {}, mu({b_hi}) = {}",
            f(b_lo)? + k,
            f(b_hi)? + k
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm == 0.0 || hi - lo < 1e-14 * hi.abs().max(1.0) {
            return Ok(mid);
        }
        if fm * flo <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Erdos-Kac main term: `Phi(v)`.
pub fn predict_ek(v: f64) -> f64 {
    specfun::normal_cdf(v)
}

/// Gaussian local law: `e^{-(mu-k)^2/(2 sigma^2)} / (sqrt(2 pi) sigma)`.
pub fn predict_local_gauss(x: f64, y: f64, k: u32) -> Result<f64> {
    let (mu, sigma2, _) = moments_basic(x, y, 1.0)?;
    let sigma = sigma2.sqrt();
    Ok((-0.5 * (mu - k as f64).powi(2) / sigma2).exp()
        / ((2.0 * std::f64::consts::PI).sqrt() * sigma))
}

/// Whether `(x, y, k)` satisfies the tilted-law range condition:
/// `c1 sigma^2 - c2 u/(log 2u)^2 <= k - I(xi(u)) <= c3 sigma^2`.
pub fn tilted_in_range(x: f64, y: f64, k: u32, cfg: &Config) -> Result<bool> {
    let u = u_of(x, y);
    let (_, sigma2, _) = moments_basic(x, y, 1.0)?;
    let (xi, _) = specfun::solve_xi(u)?;
    let big_i = specfun::exp_integral_i(Complex64::new(xi, 0.0))?.re;
    let lhs = cfg.constant("c1_26") * sigma2 - cfg.constant("c2_26") * u / (2.0 * u).ln().powi(2);
    let rhs = cfg.constant("c3_26") * sigma2;
    let val = k as f64 - big_i;
    Ok(lhs <= val && val <= rhs)
}

/// Tilted local law: `K_r(u) e^{-L} L^k / k!` with r solving
/// `mu_r = k`. Range errors outside the bracket or condition above.
#[allow(clippy::too_many_arguments)]
pub fn predict_local_tilted(
    x: f64,
    y: f64,
    k: u32,
    rho_r: &SolutionTable,
    rho_1: &SolutionTable,
    r: f64,
    cfg: &Config,
) -> Result<f64> {
    if !tilted_in_range(x, y, k, cfg)? {
        return Err(Error::Range(format!(
            "k = {k} outside the tilted-law range at (x, y) = ({x}, {y})"
        )));
    }
    let ms = moments(x, y, r, rho_r, rho_1, cfg)?;
    // log of e^{-L} L^k / k!
    let lgk = specfun::gamma(Complex64::new(k as f64 + 1.0, 0.0))?.re.ln();
    let log_poisson = -ms.big_l + k as f64 * ms.big_l.ln() - lgk;
    Ok(ms.k_r * log_poisson.exp())
}

/// Large-deviation envelope: `e^{-v^2/3} + e^{-c sigma^2/(log sigma)^4}`
/// with the configurable absolute constant `c`.
pub fn large_dev(x: f64, y: f64, v: f64, cfg: &Config) -> Result<f64> {
    let (_, sigma2, _) = moments_basic(x, y, 1.0)?;
    let sigma = sigma2.sqrt();
    let c = cfg.constant("c_28");
    let lg = sigma.ln().abs().max(1e-6);
    Ok((-v * v / 3.0).exp() + (-c * sigma2 / lg.powi(4)).exp())
}

// ---------------------------------------------------------------------------
// Saddle points
// ---------------------------------------------------------------------------

/// `alpha_z = 1 - Re zeta_0(u/z) / log y`.
pub fn saddle_alpha_z(x: f64, y: f64, zp: ZParams, cfg: &Config) -> Result<f64> {
    let u = u_of(x, y);
    let s = specfun::solve_zeta0(u / zp.z, cfg.newton_tol)?;
    Ok(1.0 - s.root.re / y.ln())
}

/// `alpha_r` solving `sum_{p <= y} r log p/(p^alpha - 1) = log x` by
/// bisection on (0, 2].
pub fn saddle_alpha_r(x: f64, y: f64, r: f64) -> Result<f64> {
    let target = x.ln();
    let ps = primes_up_to(y as u64);
    let sum = |alpha: f64| -> f64 {
        ps.iter()
            .map(|&p| {
                let lp = (p as f64).ln();
                r * lp / ((alpha * lp).exp() - 1.0)
            })
            .sum()
    };
    let (mut lo, mut hi) = (1e-6, 2.0);
    if sum(hi) > target {
        return Err(Error::Range("alpha_r bracket (0, 2] does not contain the root".into()));
    }
    if sum(lo) < target {
        return Err(Error::Range("prime sum too small even at alpha -> 0".into()));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if sum(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

// ---------------------------------------------------------------------------
// Characteristic-function diagnostic
// ---------------------------------------------------------------------------

/// `H_r(t) = r(e^{it} - 1) log_2 y + F_r(0) - F_r(t)` with
/// `F_r(t) = u w_t - r e^{it} I(w_t)`, `w_t = zeta_0(e^{-it} u/r)`,
/// together with its quadratic model `i t mu_r - t^2 sigma_r^2 / 2`.
#[derive(Debug, Clone, Copy)]
pub struct CharFnDiag {
    pub h: Complex64,
    pub quadratic: Complex64,
}

pub fn char_fn_diag(x: f64, y: f64, r: f64, t: f64, cfg: &Config) -> Result<CharFnDiag> {
    if t.abs() > std::f64::consts::PI {
        return Err(Error::Domain("char_fn_diag needs |t| <= pi".into()));
    }
    let u = u_of(x, y);
    let f_r = |tt: f64| -> Result<Complex64> {
        let phase = Complex64::new(0.0, tt).exp();
        let u_t = u / r * phase.conj();
        let w_t = specfun::solve_zeta0(u_t, cfg.newton_tol)?.root;
        Ok(w_t * u - phase * r * specfun::exp_integral_i(w_t)?)
    };
    let (mu, sigma2, _) = moments_basic(x, y, r)?;
    let h = (Complex64::new(0.0, t).exp() - 1.0) * r * y.ln().ln() + f_r(0.0)? - f_r(t)?;
    let quadratic = Complex64::new(0.0, t * mu) - Complex64::new(0.5 * t * t * sigma2, 0.0);
    Ok(CharFnDiag { h, quadratic })
}
