//! Method-of-steps solutions of the Dickman-type delay differential systems.
//!
//! All three families satisfy `v f'(v) + a f(v) + b f(v-1) = 0` on `v > 1`
//! with `b = z` and kind-specific local coefficient and initial data:
//!
//! | kind | a        | initial data on (0, 1]          |
//! |------|----------|---------------------------------|
//! | G    | 0        | 1                               |
//! | RHO  | 1 - z    | v^{z-1} / Gamma(z)              |
//! | PHI  | theta_z  | v^{-theta_z} / Gamma(1-theta_z) |
//!
//! Each unit segment `[h, h+1]` is integrated by variation of constants,
//! `f(v) = v^{-a} (f(h) h^a - b int_h^v t^{a-1} f(t-1) dt)`, and stored as a
//! short generalized power series near the left edge plus dyadic Chebyshev
//! pieces. The edge series carries the algebraic branch `(v-h)^{gamma_0+h}`
//! that fractional initial exponents propagate to every integer abscissa, so
//! the dense representation satisfies the equation at spectral accuracy right
//! up to the singular edges. Derivatives of any order come from the equation
//! itself, not from differentiating the polynomial pieces.

use num_complex::Complex64;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::quad;
use crate::series::SeriesPoly;
use crate::specfun;
use crate::zparams::ZParams;
use crate::EULER_GAMMA;

/// Width of the edge-series region at the left end of each segment.
const EDGE_WIDTH: f64 = 0.125;
/// Truncation length of the edge series.
const EDGE_TERMS: usize = 48;

/// Which delay system a table solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    G,
    Rho,
    Phi,
}

/// Side of a one-sided evaluation at an integer abscissa.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Generalized power series around `base`: a polynomial part plus an
/// algebraic branch `w^gamma * polynomial`.
#[derive(Debug, Clone)]
struct EdgeSeries {
    smooth: Vec<Complex64>,
    sing_gamma: Option<Complex64>,
    sing: Vec<Complex64>,
}

impl EdgeSeries {
    fn eval(&self, w: f64) -> Complex64 {
        let mut acc = czero();
        for &c in self.smooth.iter().rev() {
            acc = acc * w + c;
        }
        if let Some(g) = self.sing_gamma {
            if w > 0.0 {
                let mut s = czero();
                for &c in self.sing.iter().rev() {
                    s = s * w + c;
                }
                acc += (g * w.ln()).exp() * s;
            }
        }
        acc
    }

    /// j-th derivative of the series at offset `w >= 0`. At `w = 0` the
    /// branch term is kept only when its exponent has died out.
    fn eval_derivative(&self, j: usize, w: f64, at: f64) -> Result<Complex64> {
        let mut acc = czero();
        for (k, &c) in self.smooth.iter().enumerate().skip(j) {
            let mut fall = 1.0;
            for i in 0..j {
                fall *= (k - i) as f64;
            }
            let wp = if k == j { 1.0 } else { w.powi((k - j) as i32) };
            acc += c * fall * wp;
        }
        if let Some(g) = self.sing_gamma {
            for (k, &c) in self.sing.iter().enumerate() {
                if c.norm() == 0.0 {
                    continue;
                }
                let ex = g + k as f64; // exponent before differentiation
                let mut fall = Complex64::new(1.0, 0.0);
                for i in 0..j {
                    fall *= ex - i as f64;
                }
                let exj = ex - j as f64;
                if w == 0.0 {
                    if fall.norm() == 0.0 {
                        continue;
                    }
                    if exj.re > 0.0 {
                        continue; // branch term vanishes at the edge
                    }
                    if exj.re == 0.0 && exj.im == 0.0 {
                        acc += c * fall;
                        continue;
                    }
                    return Err(Error::Smoothness { order: j, at });
                }
                acc += c * fall * (exj * w.ln()).exp();
            }
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone)]
struct ChebPiece {
    a: f64,
    b: f64,
    coef: Vec<Complex64>,
}

#[derive(Debug, Clone)]
struct Segment {
    /// Left endpoint (an integer as f64).
    start: f64,
    edge: EdgeSeries,
    /// Dyadic pieces covering [start + EDGE_WIDTH, start + 1]; empty for the
    /// initial segment, whose edge series is exact on the whole interval.
    pieces: Vec<ChebPiece>,
}

impl Segment {
    fn eval(&self, v: f64) -> Complex64 {
        let w = v - self.start;
        if self.pieces.is_empty() || w <= EDGE_WIDTH {
            return self.edge.eval(w);
        }
        let last = self.pieces.len() - 1;
        for (i, p) in self.pieces.iter().enumerate() {
            if v <= p.b || i == last {
                return quad::cheb_eval(&p.coef, p.a, p.b, v);
            }
        }
        unreachable!()
    }
}

/// A recorded first-kind jump: derivative order `j` at abscissa `h`.
#[derive(Debug, Clone, Copy)]
pub struct Jump {
    pub h: u32,
    pub j: u32,
    pub delta: Complex64,
}

/// Dense solution of one delay system on `[0, v_max]`.
#[derive(Debug, Clone)]
pub struct SolutionTable {
    pub kind: Kind,
    pub zp: ZParams,
    pub v_max: f64,
    /// Local coefficient `a` of `v f' + a f + b f(v-1) = 0`.
    a_coef: Complex64,
    /// Delay coefficient `b` (always `z`).
    b_coef: Complex64,
    segments: Vec<Segment>,
    /// First-kind jumps, populated for integer `z` up to order 8.
    pub jumps: Vec<Jump>,
}

fn binom_series(c: Complex64, h: f64, n: usize) -> Vec<Complex64> {
    // Coefficients of (1 + s/h)^c.
    let mut out = vec![czero(); n];
    out[0] = Complex64::new(1.0, 0.0);
    for k in 1..n {
        out[k] = out[k - 1] * (c - (k - 1) as f64) / (k as f64 * h);
    }
    out
}

fn convolve(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![czero(); n];
    for i in 0..a.len().min(n) {
        if a[i].norm() == 0.0 {
            continue;
        }
        for j in 0..b.len().min(n - i) {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

impl SolutionTable {
    /// Solves the system of the given kind out to `v_max`.
    pub fn solve(kind: Kind, zp: ZParams, v_max: f64, cfg: &Config) -> Result<SolutionTable> {
        if !(v_max >= 1.0) {
            return Err(Error::Domain(format!("v_max must be >= 1, got {v_max}")));
        }
        if kind == Kind::Rho && !(zp.z.re > 0.0) {
            return Err(Error::Domain(
                "rho_z requires Re z > 0 (initial data v^{z-1}/Gamma(z))".into(),
            ));
        }
        let z = zp.z;
        let (a_coef, edge0) = match kind {
            Kind::G => {
                let mut smooth = vec![czero(); EDGE_TERMS];
                smooth[0] = Complex64::new(1.0, 0.0);
                (
                    czero(),
                    EdgeSeries {
                        smooth,
                        sing_gamma: None,
                        sing: Vec::new(),
                    },
                )
            }
            Kind::Rho => {
                let c = specfun::gamma(z)?.finv();
                if zp.is_positive_integer() {
                    let m = zp.m as usize;
                    let mut smooth = vec![czero(); EDGE_TERMS.max(m)];
                    smooth[m - 1] = c;
                    (
                        Complex64::new(1.0, 0.0) - z,
                        EdgeSeries {
                            smooth,
                            sing_gamma: None,
                            sing: Vec::new(),
                        },
                    )
                } else {
                    let mut sing = vec![czero(); EDGE_TERMS];
                    sing[0] = c;
                    (
                        Complex64::new(1.0, 0.0) - z,
                        EdgeSeries {
                            smooth: vec![czero(); EDGE_TERMS],
                            sing_gamma: Some(z - 1.0),
                            sing,
                        },
                    )
                }
            }
            Kind::Phi => {
                let c = specfun::gamma(Complex64::new(1.0, 0.0) - zp.theta_z)?.finv();
                if zp.theta_z == czero() {
                    let mut smooth = vec![czero(); EDGE_TERMS];
                    smooth[0] = c;
                    (
                        zp.theta_z,
                        EdgeSeries {
                            smooth,
                            sing_gamma: None,
                            sing: Vec::new(),
                        },
                    )
                } else {
                    let mut sing = vec![czero(); EDGE_TERMS];
                    sing[0] = c;
                    (
                        zp.theta_z,
                        EdgeSeries {
                            smooth: vec![czero(); EDGE_TERMS],
                            sing_gamma: Some(-zp.theta_z),
                            sing,
                        },
                    )
                }
            }
        };
        let n_seg = (v_max.ceil() as usize).max(1);
        let mut segments = Vec::with_capacity(n_seg);
        segments.push(Segment {
            start: 0.0,
            edge: edge0,
            pieces: Vec::new(),
        });
        let mut junction = segments[0].edge.eval(1.0); // f(1)
        for h in 1..n_seg {
            let seg = build_segment(
                h as f64,
                junction,
                a_coef,
                z,
                &segments[h - 1],
                cfg.cheb_degree,
            );
            junction = seg.eval(h as f64 + 1.0);
            segments.push(seg);
        }
        let mut table = SolutionTable {
            kind,
            zp,
            v_max,
            a_coef,
            b_coef: z,
            segments,
            jumps: Vec::new(),
        };
        if zp.is_integer() && table.segments.len() >= 3 {
            // Highest order whose jump abscissae (h <= j+1-m or h <= j) stay
            // one full segment inside the table.
            let s = table.segments.len() as i64;
            let cap = match kind {
                Kind::Phi => s - 1,
                _ => s - 2 + zp.m as i64,
            };
            let max_order = 8i64.min(cap).max(0) as u32;
            table.jumps = table.jump_table(max_order).unwrap_or_default();
        }
        Ok(table)
    }

    /// Value at `v` (right-continuous at integers; 0 left of the support).
    pub fn eval(&self, v: f64) -> Result<Complex64> {
        if v > self.v_max + 1e-12 {
            return Err(Error::Range(format!(
                "v = {v} beyond table range {}",
                self.v_max
            )));
        }
        Ok(self.eval_unchecked(v))
    }

    fn eval_unchecked(&self, v: f64) -> Complex64 {
        if v < 0.0 {
            return czero();
        }
        if v == 0.0 {
            // Right-continuous where the limit exists; singular initial data
            // keeps the continuation value 0.
            return match self.kind {
                Kind::G => Complex64::new(1.0, 0.0),
                _ => self.segments[0]
                    .edge
                    .eval_derivative(0, 0.0, 0.0)
                    .unwrap_or(czero()),
            };
        }
        let mut h = v.floor() as usize;
        if h >= self.segments.len() {
            h = self.segments.len() - 1;
        }
        self.segments[h].eval(v)
    }

    /// One-sided value at `v` (meaningful at integer abscissae).
    pub fn eval_side(&self, v: f64, side: Side) -> Result<Complex64> {
        if v < 0.0 || (v == 0.0 && side == Side::Left) {
            return Ok(czero());
        }
        let is_integer = v == v.floor();
        if !is_integer {
            return Ok(self.eval_unchecked(v));
        }
        let h = v as usize;
        match side {
            Side::Right => {
                if h >= self.segments.len() {
                    return Err(Error::Range(format!("right limit at {v} beyond table")));
                }
                self.segments[h].edge.eval_derivative(0, 0.0, v)
            }
            Side::Left => {
                if h == 0 {
                    return Ok(czero());
                }
                Ok(self.segments[h - 1].eval(v))
            }
        }
    }

    /// j-th derivative at `v`, one-sided at integer abscissae when `side` is
    /// given. Uses the differentiated delay equation
    /// `v f^{(j)} + (a + j - 1) f^{(j-1)}(v) + b f^{(j-1)}(v-1) = 0`.
    pub fn derivative(&self, j: usize, v: f64, side: Option<Side>) -> Result<Complex64> {
        if !(v > 0.0) {
            return Err(Error::Domain(format!("derivative needs v > 0, got {v}")));
        }
        if v > self.v_max + 1e-12 {
            return Err(Error::Range(format!(
                "v = {v} beyond table range {}",
                self.v_max
            )));
        }
        if j > 16 {
            return Err(Error::UnsupportedOrder {
                requested: j,
                max: 16,
            });
        }
        let is_integer = v == v.floor();
        if is_integer && side.is_none() && j > 0 {
            return Err(Error::EvalPoint(format!(
                "v = {v} is an integer abscissa; a one-sided evaluation is required"
            )));
        }
        let side = side.unwrap_or(Side::Right);
        // Triangular table D[i][k] = f^{(i)}(v - k), filled bottom-up.
        let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(j + 1);
        let mut base = Vec::with_capacity(j + 1);
        for k in 0..=j {
            base.push(self.point_value(0, v - k as f64, side)?);
        }
        rows.push(base);
        for i in 1..=j {
            let mut row = Vec::with_capacity(j - i + 1);
            for k in 0..=(j - i) {
                let point = v - k as f64;
                if point < 0.0 || (point <= 0.0 && side == Side::Left) {
                    row.push(czero());
                    continue;
                }
                let in_initial =
                    point < 1.0 || (point == 1.0 && side == Side::Left) || point == 0.0;
                if in_initial {
                    row.push(self.point_value(i, point, side)?);
                } else {
                    let prev_here = rows[i - 1][k];
                    let prev_delay = rows[i - 1][k + 1];
                    let val = -((self.a_coef + (i - 1) as f64) * prev_here
                        + self.b_coef * prev_delay)
                        / point;
                    row.push(val);
                }
            }
            rows.push(row);
        }
        Ok(rows[j][0])
    }

    /// Order-i value at a point, handling the initial segment analytically.
    fn point_value(&self, order: usize, point: f64, side: Side) -> Result<Complex64> {
        if point < 0.0 || (point == 0.0 && side == Side::Left) {
            return Ok(czero());
        }
        if point == 0.0 {
            return self.segments[0].edge.eval_derivative(order, 0.0, 0.0);
        }
        if point < 1.0 || (point == 1.0 && side == Side::Left) {
            return self.segments[0].edge.eval_derivative(order, point, point);
        }
        if order == 0 {
            return self.eval_side(point, side);
        }
        self.derivative(order, point, Some(side))
    }

    /// First-kind jumps `delta_{z,h,j} = f^{(j)}(h) - f^{(j)}(h-0)` for
    /// integer `z`: `1 <= h <= j+1-m` for the rho family (z in N*) and
    /// `1 <= h <= j` for the phi family (z in Z^-).
    pub fn jump_table(&self, max_order: u32) -> Result<Vec<Jump>> {
        if !self.zp.is_integer() {
            return Err(Error::Domain(
                "jump tables are defined for integer z only".into(),
            ));
        }
        let m = self.zp.m as i64;
        let mut out = Vec::new();
        for j in 0..=max_order as i64 {
            let h_max = match self.kind {
                Kind::Rho | Kind::G => j + 1 - m,
                Kind::Phi => j,
            };
            for h in 1..=h_max {
                if h + 1 > self.segments.len() as i64 {
                    return Err(Error::Range(format!(
                        "jump at h = {h} needs the table solved past v = {}",
                        h + 1
                    )));
                }
                let right = self.derivative(j as usize, h as f64, Some(Side::Right))?;
                let left = self.derivative(j as usize, h as f64, Some(Side::Left))?;
                out.push(Jump {
                    h: h as u32,
                    j: j as u32,
                    delta: right - left,
                });
            }
        }
        Ok(out)
    }

    /// Truncated Laplace transform `int_0^V f(v) e^{-sv} dv` together with a
    /// bound for the dropped tail `int_V^infty`.
    pub fn laplace_transform(&self, s: Complex64, v_cut: f64) -> Result<(Complex64, f64)> {
        if !(s.re > 0.0) {
            return Err(Error::Domain("Laplace transform needs Re s > 0".into()));
        }
        let v_cut = v_cut.min(self.v_max);
        let rule = quad::gauss_legendre(24);
        let mut acc = czero();
        for seg in &self.segments {
            if seg.start >= v_cut {
                break;
            }
            let edge_end = if seg.pieces.is_empty() {
                (seg.start + 1.0).min(v_cut)
            } else {
                (seg.start + EDGE_WIDTH).min(v_cut)
            };
            acc += edge_laplace(&seg.edge, seg.start, edge_end - seg.start, s);
            for p in &seg.pieces {
                if p.a >= v_cut {
                    break;
                }
                let b = p.b.min(v_cut);
                acc += quad::gl_integrate(p.a, b, &rule, |v| {
                    quad::cheb_eval(&p.coef, p.a, p.b, v) * (-s * v).exp()
                });
            }
        }
        // Tail bound: |f(v)| <= M (v/V)^q beyond V.
        let q = match self.kind {
            Kind::G => (-self.zp.z.re).ceil().max(0.0) as usize + 1,
            _ => 0,
        };
        let mut m_sup = 0.0f64;
        let lo = (v_cut - 1.0).max(0.0);
        for i in 0..=32 {
            let v = lo + (v_cut - lo) * i as f64 / 32.0;
            m_sup = m_sup.max(self.eval_unchecked(v).norm());
        }
        m_sup *= 2.0;
        let sigma = s.re;
        let mut tail = 0.0;
        let mut binom = 1.0;
        let mut fact = 1.0;
        for i in 0..=q {
            if i > 0 {
                binom *= (q - i + 1) as f64 / i as f64;
                fact *= i as f64;
            }
            tail += binom * fact / (sigma.powi(i as i32 + 1) * v_cut.powi(i as i32));
        }
        tail *= m_sup * (-sigma * v_cut).exp();
        Ok((acc, tail))
    }

    /// Uniform sample of the table for CSV export.
    pub fn sample(&self, step: f64) -> Vec<(f64, Complex64)> {
        let mut out = Vec::new();
        let mut v = 0.0;
        while v <= self.v_max + 1e-9 {
            let vc = v.min(self.v_max);
            out.push((vc, self.eval_unchecked(vc)));
            v += step;
        }
        out
    }
}

/// Laplace integral of an edge series over `[start, start+w1]` by expanding
/// `e^{-sw}` against exact power moments.
fn edge_laplace(edge: &EdgeSeries, start: f64, w1: f64, s: Complex64) -> Complex64 {
    if w1 <= 0.0 {
        return czero();
    }
    let pref = (-s * start).exp();
    let mut acc = czero();
    for (k, &c) in edge.smooth.iter().enumerate() {
        if c.norm() == 0.0 {
            continue;
        }
        acc += c * power_moment(Complex64::new(k as f64, 0.0), w1, s);
    }
    if let Some(g) = edge.sing_gamma {
        for (k, &c) in edge.sing.iter().enumerate() {
            if c.norm() == 0.0 {
                continue;
            }
            acc += c * power_moment(g + k as f64, w1, s);
        }
    }
    pref * acc
}

/// `int_0^{w1} w^e exp(-s w) dw` for `Re e > -1`, by the exponential series:
/// `sum_j (-s)^j / j! * w1^{e+j+1} / (e+j+1)`.
fn power_moment(e: Complex64, w1: f64, s: Complex64) -> Complex64 {
    let mut acc = czero();
    let mut term = Complex64::new(1.0, 0.0); // (-s w1)^j / j!
    let w1e = ((e + 1.0) * w1.ln()).exp(); // w1^{e+1}
    for j in 0..300 {
        let expo = e + (j + 1) as f64;
        let add = term * w1e / expo;
        acc += add;
        if add.norm() < 1e-20 * (1.0 + acc.norm()) && j > 3 {
            break;
        }
        term *= -s * w1 / (j as f64 + 1.0);
    }
    acc
}

fn build_segment(
    h: f64,
    f_at_h: Complex64,
    a: Complex64,
    b: Complex64,
    prev: &Segment,
    degree: usize,
) -> Segment {
    let n = EDGE_TERMS;
    let prev_edge = &prev.edge;
    let bin_am1 = binom_series(a - 1.0, h, n);
    let bin_ma = binom_series(-a, h, n);
    let h_pow_am1 = ((a - 1.0) * h.ln()).exp();
    let h_pow_a = (a * h.ln()).exp();
    let h_pow_ma = (-a * h.ln()).exp();

    // Integrand families of t^{a-1} f_{h-1}(t-1), s = t - h.
    let integ_smooth: Vec<Complex64> = convolve(&bin_am1, &prev_edge.smooth, n)
        .into_iter()
        .map(|c| c * h_pow_am1)
        .collect();
    let mut int_smooth = vec![czero(); n];
    for k in 0..n - 1 {
        int_smooth[k + 1] = integ_smooth[k] / (k as f64 + 1.0);
    }
    let (sing_gamma, int_sing) = if let Some(g_prev) = prev_edge.sing_gamma {
        let integ_sing: Vec<Complex64> = convolve(&bin_am1, &prev_edge.sing, n)
            .into_iter()
            .map(|c| c * h_pow_am1)
            .collect();
        let mut int_sing = vec![czero(); n];
        for k in 0..n {
            int_sing[k] = integ_sing[k] / (g_prev + (k + 1) as f64);
        }
        (Some(g_prev + 1.0), int_sing)
    } else {
        (None, Vec::new())
    };

    // f(h+s) = (h+s)^{-a} (f(h) h^a - b * integral)
    let mut inner = vec![czero(); n];
    inner[0] = f_at_h * h_pow_a;
    for k in 0..n {
        inner[k] -= b * int_smooth[k];
    }
    let smooth_out: Vec<Complex64> = convolve(&bin_ma, &inner, n)
        .into_iter()
        .map(|c| c * h_pow_ma)
        .collect();
    let sing_out: Vec<Complex64> = if sing_gamma.is_some() {
        convolve(&bin_ma, &int_sing, n)
            .into_iter()
            .map(|c| c * h_pow_ma * (-b))
            .collect()
    } else {
        Vec::new()
    };
    let edge = EdgeSeries {
        smooth: smooth_out,
        sing_gamma,
        sing: sing_out,
    };

    // Edge integral over [h, h+EDGE_WIDTH] seeds the running prefix.
    let w0 = EDGE_WIDTH;
    let mut prefix = {
        let mut acc = czero();
        let mut wp = 1.0;
        for c in &int_smooth {
            acc += c * wp;
            wp *= w0;
        }
        if let Some(g) = sing_gamma {
            let mut s_acc = czero();
            let mut wp = 1.0;
            for c in &int_sing {
                s_acc += c * wp;
                wp *= w0;
            }
            acc += (g * w0.ln()).exp() * s_acc;
        }
        acc
    };

    // Dyadic Chebyshev pieces past the edge region.
    let bounds = [
        (h + EDGE_WIDTH, h + 0.25),
        (h + 0.25, h + 0.5),
        (h + 0.5, h + 1.0),
    ];
    let c0 = f_at_h * h_pow_a;
    let mut pieces = Vec::with_capacity(3);
    for (p0, p1) in bounds {
        let pts = quad::lobatto_points(degree, p0, p1);
        let integrand: Vec<Complex64> = pts
            .iter()
            .map(|&t| ((a - 1.0) * t.ln()).exp() * prev.eval(t - 1.0))
            .collect();
        let gcoef = quad::cheb_coeffs(&integrand);
        let anti = quad::cheb_antiderivative(&gcoef, p0, p1);
        let values: Vec<Complex64> = pts
            .iter()
            .map(|&t| {
                let cum = prefix + quad::cheb_eval(&anti, p0, p1, t);
                ((-a) * t.ln()).exp() * (c0 - b * cum)
            })
            .collect();
        prefix += quad::cheb_eval(&anti, p0, p1, p1);
        pieces.push(ChebPiece {
            a: p0,
            b: p1,
            coef: quad::cheb_coeffs(&values),
        });
    }
    Segment {
        start: h,
        edge,
        pieces,
    }
}

/// Relatively accurate deep-decay values of `rho_z(v)` by saddle-point
/// quadrature of the Laplace inversion
/// `rho_z(v) = (1/2 pi i) int e^{gamma z + z I(-s) + v s} ds`
/// along the vertical line through the saddle `s = -zeta_0(v/z)`.
///
/// Forward stepping keeps only absolute accuracy (~1e-16), which swamps
/// `rho_z(v)` once it decays below machine precision (v ~ 15 for z = 1); the
/// contour value keeps relative accuracy. Truncation at `|Im s| = pi` drops
/// the secondary saddles, a relative error of order `e^{-2 pi^2 v / xi^2}`.
pub fn rho_contour_value(zp: ZParams, v: f64, cfg: &Config) -> Result<Complex64> {
    if !(zp.z.re > 0.0) {
        return Err(Error::Domain("contour evaluation requires Re z > 0".into()));
    }
    if !(v >= 2.0) {
        return Err(Error::Range(
            "contour evaluation is for v >= 2 (use the table below)".into(),
        ));
    }
    let zeta = specfun::solve_zeta0(v / zp.z, cfg.newton_tol)?.root;
    let z = zp.z;
    let e0 = z * EULER_GAMMA + z * specfun::exp_integral_i(zeta)? - zeta * v;
    let mut integrand = |tau: f64| -> Complex64 {
        let w = zeta - Complex64::new(0.0, tau);
        let e = z * EULER_GAMMA + z * specfun::exp_integral_i(w).unwrap_or(czero())
            + (Complex64::new(0.0, tau) - zeta) * v;
        (e - e0).exp()
    };
    let pi = std::f64::consts::PI;
    let breaks = [
        -2.0 * pi - 1.0,
        -2.0 * pi + 1.0,
        -pi,
        -1.0,
        -0.2,
        0.0,
        0.2,
        1.0,
        pi,
        2.0 * pi - 1.0,
        2.0 * pi + 1.0,
    ];
    let integral =
        quad::adaptive_with_breaks(-3.0 * pi, 3.0 * pi, &breaks, cfg.quad_tol, &mut integrand);
    Ok(e0.exp() * integral / (2.0 * pi))
}

/// Evaluator for `psi_z`: `rho_z` when `Re z > 0`, `phi_z^{(m+1)}` otherwise.
pub struct PsiEvaluator {
    pub table: SolutionTable,
    pub deriv_offset: usize,
}

impl PsiEvaluator {
    pub fn new(zp: ZParams, v_max: f64, cfg: &Config) -> Result<PsiEvaluator> {
        if zp.z.re > 0.0 {
            Ok(PsiEvaluator {
                table: SolutionTable::solve(Kind::Rho, zp, v_max, cfg)?,
                deriv_offset: 0,
            })
        } else {
            Ok(PsiEvaluator {
                table: SolutionTable::solve(Kind::Phi, zp, v_max, cfg)?,
                deriv_offset: zp.m as usize + 1,
            })
        }
    }

    /// `psi_z^{(j)}(u)`.
    pub fn derivative(&self, j: usize, u: f64, side: Option<Side>) -> Result<Complex64> {
        let order = j + self.deriv_offset;
        if order == 0 {
            return match side {
                None => self.table.eval(u),
                Some(s) => self.table.eval_side(u, s),
            };
        }
        self.table.derivative(order, u, side)
    }
}

/// Main term of the saddle-point asymptotic for `rho_z(v)`:
/// `e^{gamma z - v zeta_0(v/z) + z I(zeta_0(v/z))} / sqrt(2 pi v (1 - 1/zeta_0))`.
pub fn rho_asym(zp: ZParams, v: f64, cfg: &Config) -> Result<Complex64> {
    if !(zp.z.re > 0.0) {
        return Err(Error::Domain("rho_asym requires Re z > 0".into()));
    }
    if v < 3.0 + zp.z.norm() {
        return Err(Error::Range(format!(
            "asymptotic form needs v >= 3 + |z| = {}",
            3.0 + zp.z.norm()
        )));
    }
    let w = v / zp.z;
    let saddle = specfun::solve_zeta0(w, cfg.newton_tol)?;
    let zeta = saddle.root;
    let expo = zp.z * EULER_GAMMA - zeta * v + zp.z * specfun::exp_integral_i(zeta)?;
    let denom = (Complex64::new(2.0 * std::f64::consts::PI * v, 0.0)
        * (Complex64::new(1.0, 0.0) - zeta.finv()))
    .sqrt();
    Ok(expo.exp() / denom)
}

/// `R_z(v) = exp(-Re int_{|z|}^{v} zeta_0(t/z) dt) / sqrt(v)`; the lower
/// limit is read as `r = |z|`. For `v <= |z|` the integral is empty.
pub fn big_r(zp: ZParams, v: f64, cfg: &Config) -> Result<f64> {
    if !(v > 0.0) {
        return Err(Error::Domain("R_z needs v > 0".into()));
    }
    let r = zp.z.norm();
    if v <= r {
        return Ok(1.0 / v.sqrt());
    }
    let integral = quad::adaptive(r, v, cfg.quad_tol, &mut |t| {
        let s = specfun::solve_zeta0(t / zp.z, cfg.newton_tol)
            .map(|x| x.root)
            .unwrap_or(czero());
        Complex64::new(s.re, 0.0)
    });
    Ok((-integral.re).exp() / v.sqrt())
}

/// Taylor coefficients `c_0..c_J` of `rho_hat(s)^z = exp(z(gamma + I(-s)))`
/// at the origin.
pub fn taylor_c(zp: ZParams, order: usize) -> SeriesPoly {
    let mut coeffs = vec![czero(); order + 1];
    coeffs[0] = zp.z * EULER_GAMMA;
    let mut fact = 1.0f64;
    for n in 1..=order {
        fact *= n as f64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        coeffs[n] = zp.z * (sign / (n as f64 * fact));
    }
    SeriesPoly::new(coeffs, czero()).exp()
}
