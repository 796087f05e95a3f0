//! Adaptive Gauss-Kronrod integration of complex-valued integrands on real
//! intervals, decaying real lines, oscillatory intervals and piecewise-linear
//! contours in the complex plane.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::DEFAULT_BAND;

/// Tolerances and limits shared by every integral evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Fixed truncation half-width for decaying real-line integrals; derived
    /// from the sampled envelope when `None`.
    pub decay_cutoff: Option<f64>,
    pub max_panels: usize,
    /// Largest phase change allowed across one oscillatory panel.
    pub osc_panel_phase: f64,
    /// Half-width of the excluded band around critical rays.
    pub band: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            decay_cutoff: None,
            max_panels: 1 << 20,
            osc_panel_phase: PI / 4.0,
            band: DEFAULT_BAND,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = self.rel_tol > 0.0
            && self.abs_tol > 0.0
            && self.max_panels > 0
            && self.osc_panel_phase > 0.0
            && self.osc_panel_phase <= PI / 2.0
            && self.band >= 0.0
            && self.decay_cutoff.map_or(true, |b| b > 0.0);
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("invalid quadrature spec {self:?}")))
        }
    }

    /// Tighter copy used where a result feeds finite differences or fits.
    pub fn tight() -> Self {
        QuadratureSpec {
            rel_tol: 1e-12,
            abs_tol: 1e-15,
            ..Default::default()
        }
    }

    pub fn with_band(mut self, band: f64) -> Self {
        self.band = band;
        self
    }
}

/// A value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

impl Estimate {
    pub fn new(value: Complex64, error: f64) -> Self {
        Estimate { value, error }
    }
    pub fn exact(value: Complex64) -> Self {
        Estimate { value, error: 0.0 }
    }
    pub fn zero() -> Self {
        Estimate::default()
    }
    pub fn scale(self, c: Complex64) -> Self {
        Estimate {
            value: self.value * c,
            error: self.error * c.norm(),
        }
    }
}

impl Add for Estimate {
    type Output = Estimate;
    fn add(self, o: Estimate) -> Estimate {
        Estimate {
            value: self.value + o.value,
            error: self.error + o.error,
        }
    }
}

impl Sub for Estimate {
    type Output = Estimate;
    fn sub(self, o: Estimate) -> Estimate {
        Estimate {
            value: self.value - o.value,
            error: self.error + o.error,
        }
    }
}

impl AddAssign for Estimate {
    fn add_assign(&mut self, o: Estimate) {
        *self = *self + o;
    }
}

impl Neg for Estimate {
    type Output = Estimate;
    fn neg(self) -> Estimate {
        Estimate {
            value: -self.value,
            error: self.error,
        }
    }
}

// 15-point Kronrod abscissae and weights with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Rule {
    value: Complex64,
    error: f64,
    resabs: f64,
}

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Rule {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut resabs = fc.norm() * WGK[7];
    let mut fv1 = [Complex64::default(); 7];
    let mut fv2 = [Complex64::default(); 7];
    for j in 0..7 {
        let x = h * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += (f1 + f2) * WGK[j];
        resabs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            resg += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[7] * (fc - mean).norm();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }
    let ah = h.abs();
    let value = resk * h;
    resabs *= ah;
    resasc *= ah;
    let mut error = ((resk - resg) * h).norm();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    if !value.re.is_finite() || !value.im.is_finite() {
        error = f64::INFINITY;
    }
    Rule {
        value,
        error,
        resabs,
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    resabs: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error
            .total_cmp(&o.error)
            .then_with(|| o.a.total_cmp(&self.a))
    }
}

fn make_panel<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let r = gk15(f, a, b);
    Panel {
        a,
        b,
        value: r.value,
        error: r.error,
        resabs: r.resabs,
    }
}

/// Globally adaptive GK15 integration over consecutive breakpoints.
pub fn integrate_breaks<F: Fn(f64) -> Complex64>(
    f: F,
    breaks: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if breaks.len() < 2 {
        return Ok(Estimate::zero());
    }
    if breaks.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(Error::Domain("breakpoints must be nondecreasing".into()));
    }
    if breaks.len() - 1 > spec.max_panels {
        return Err(Error::quad(
            format!("{} initial panels exceed max_panels", breaks.len() - 1),
            f64::INFINITY,
        ));
    }
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Panel> = Vec::new();
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            heap.push(make_panel(&f, w[0], w[1]));
        }
    }
    let totals = |heap: &BinaryHeap<Panel>, frozen: &[Panel]| {
        let mut v = Complex64::default();
        let mut e = 0.0;
        let mut a = 0.0;
        for p in heap.iter().chain(frozen.iter()) {
            v += p.value;
            e += p.error;
            a += p.resabs;
        }
        (v, e, a)
    };
    let (mut val, mut err, mut abs) = totals(&heap, &frozen);
    let mut count = heap.len();
    let mut iter = 0usize;
    loop {
        let tol = spec
            .abs_tol
            .max(spec.rel_tol * val.norm())
            .max(50.0 * f64::EPSILON * abs);
        if err <= tol {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        if !worst.error.is_finite()
            && (worst.b - worst.a) <= 1e-14 * worst.a.abs().max(worst.b.abs()).max(1.0)
        {
            return Err(Error::quad("non-finite integrand", f64::INFINITY));
        }
        let width = worst.b - worst.a;
        if width <= 1e-13 * worst.a.abs().max(worst.b.abs()).max(1e-300) {
            frozen.push(worst);
            continue;
        }
        if count >= spec.max_panels {
            return Err(Error::quad(
                format!("max_panels = {} reached", spec.max_panels),
                err,
            ));
        }
        let m = 0.5 * (worst.a + worst.b);
        let l = make_panel(&f, worst.a, m);
        let r = make_panel(&f, m, worst.b);
        val += l.value + r.value - worst.value;
        err += l.error + r.error - worst.error;
        abs += l.resabs + r.resabs - worst.resabs;
        heap.push(l);
        heap.push(r);
        count += 1;
        iter += 1;
        if iter % 256 == 0 || !err.is_finite() {
            let t = totals(&heap, &frozen);
            val = t.0;
            err = t.1;
            abs = t.2;
        }
    }
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(frozen);
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut value = Complex64::default();
    let mut error = 0.0;
    for p in &panels {
        value += p.value;
        error += p.error;
    }
    if !value.re.is_finite() || !value.im.is_finite() || !error.is_finite() {
        return Err(Error::quad("non-finite integrand", error));
    }
    let tol = spec
        .abs_tol
        .max(spec.rel_tol * value.norm())
        .max(50.0 * f64::EPSILON * abs);
    if error > 1e3 * tol {
        return Err(Error::quad(
            "tolerance not reached at roundoff limit",
            error,
        ));
    }
    Ok(Estimate { value, error })
}

/// Adaptive integration over `[a, b]`.
pub fn integrate_finite<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if b < a {
        return integrate_finite(f, b, a, spec).map(|e| -e);
    }
    integrate_breaks(f, &[a, b], spec)
}

fn uniform_breaks(a: f64, b: f64, max_width: f64) -> Vec<f64> {
    let n = (((b - a) / max_width).ceil() as usize).max(1);
    (0..=n)
        .map(|k| {
            if k == n {
                b
            } else {
                a + (b - a) * k as f64 / n as f64
            }
        })
        .collect()
}

/// Integral over the real line of an integrand bounded by `M e^{-decay_rate |x|}`
/// far out. The truncation half-width comes from the sampled envelope unless
/// the `QuadratureSpec` fixes it.
pub fn integrate_decaying<F: Fn(f64) -> Complex64>(
    f: F,
    decay_rate: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if !(decay_rate > 0.0) {
        return Err(Error::Domain("decay rate must be positive".into()));
    }
    let samples = [0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 4.0, -4.0];
    let mut m_est: f64 = 0.0;
    for &x in &samples {
        let v = f(x).norm();
        if !v.is_finite() {
            return Err(Error::quad("non-finite integrand", f64::INFINITY));
        }
        m_est = m_est.max(v * (decay_rate * x.abs()).exp());
    }
    let floor = spec.abs_tol * 1e-2;
    let b = match spec.decay_cutoff {
        Some(b) => b,
        None if m_est > floor => ((m_est / floor).ln() / decay_rate).max(4.0),
        None => 4.0,
    };
    let (fb, fmb) = (f(b).norm(), f(-b).norm());
    let (f2b, fm2b) = (f(2.0 * b).norm(), f(-2.0 * b).norm());
    let edge = fb.max(fmb);
    let far = f2b.max(fm2b);
    if !(edge.is_finite() && far.is_finite())
        || edge > spec.abs_tol
        || far > (10.0 * edge).max(spec.abs_tol)
    {
        return Err(Error::Decay(format!(
            "envelope at |x| = {b} is {edge:e} but {far:e} at twice that"
        )));
    }
    let mut breaks = uniform_breaks(-b, 0.0, 2.0);
    breaks.pop();
    breaks.extend(uniform_breaks(0.0, b, 2.0));
    let mut est = integrate_breaks(&f, &breaks, spec)?;
    est.error += 2.0 * edge / decay_rate;
    Ok(est)
}

/// Integral over `[a, b]` of an oscillatory integrand whose phase derivative
/// is bounded by `local_freq`. Initial panels keep the phase change below
/// `spec.osc_panel_phase`.
pub fn integrate_oscillatory_finite<F, G>(
    f: F,
    a: f64,
    b: f64,
    local_freq: G,
    spec: &QuadratureSpec,
) -> Result<Estimate>
where
    F: Fn(f64) -> Complex64,
    G: Fn(f64) -> f64,
{
    if b < a {
        return Err(Error::Domain(format!("interval [{a}, {b}] is reversed")));
    }
    if b == a {
        return Ok(Estimate::zero());
    }
    let breaks = phase_breaks(a, b, &local_freq, spec)?;
    integrate_breaks(f, &breaks, spec)
}

pub(crate) fn phase_breaks<G: Fn(f64) -> f64>(
    a: f64,
    b: f64,
    local_freq: &G,
    spec: &QuadratureSpec,
) -> Result<Vec<f64>> {
    let step = spec.osc_panel_phase;
    let mut breaks = vec![a];
    let mut x = a;
    while x < b {
        let w0 = step / local_freq(x).abs().max(1e-300);
        let mut w = w0.min(b - x);
        let end_freq = local_freq(x + w).abs();
        if end_freq * w > step {
            w = w.min(step / end_freq);
        }
        x = if b - (x + w) <= 1e-12 * (b - a) {
            b
        } else {
            x + w
        };
        breaks.push(x);
        if breaks.len() > spec.max_panels {
            return Err(Error::quad(
                "oscillatory paneling exceeds max_panels",
                f64::INFINITY,
            ));
        }
    }
    Ok(breaks)
}

/// Semi-infinite straight line `anchor + s * direction`, `s >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub anchor: Complex64,
    pub direction: Complex64,
}

impl Ray {
    pub fn new(anchor: Complex64, direction: Complex64) -> Self {
        Ray {
            anchor,
            direction: direction / direction.norm(),
        }
    }
}

/// Piecewise-linear path: an optional ray arriving from infinity, a chain of
/// segments, and an optional ray leaving to infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourPath {
    incoming: Option<Ray>,
    segments: Vec<(Complex64, Complex64)>,
    outgoing: Option<Ray>,
    reversed: bool,
}

const JOIN_TOL: f64 = 1e-12;

impl ContourPath {
    /// Validates that consecutive pieces share endpoints.
    pub fn new(
        incoming: Option<Ray>,
        segments: Vec<(Complex64, Complex64)>,
        outgoing: Option<Ray>,
    ) -> Result<Self> {
        let mut cursor: Option<Complex64> = incoming.map(|r| r.anchor);
        for &(s, e) in &segments {
            if let Some(c) = cursor {
                if (c - s).norm() > JOIN_TOL {
                    return Err(Error::Domain(format!("path gap between {c} and {s}")));
                }
            }
            cursor = Some(e);
        }
        if let (Some(c), Some(r)) = (cursor, outgoing) {
            if (c - r.anchor).norm() > JOIN_TOL {
                return Err(Error::Domain(format!(
                    "path gap between {c} and {}",
                    r.anchor
                )));
            }
        }
        if incoming.is_none() && segments.is_empty() && outgoing.is_none() {
            return Err(Error::Domain("empty path".into()));
        }
        Ok(ContourPath {
            incoming,
            segments,
            outgoing,
            reversed: false,
        })
    }

    /// Polyline through the given vertices.
    pub fn polyline(vertices: &[Complex64]) -> Result<Self> {
        let segs = vertices.windows(2).map(|w| (w[0], w[1])).collect();
        Self::new(None, segs, None)
    }

    pub fn reversed(&self) -> Self {
        let mut p = self.clone();
        p.reversed = !p.reversed;
        p
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    pub fn segments(&self) -> &[(Complex64, Complex64)] {
        &self.segments
    }
    pub fn incoming(&self) -> Option<Ray> {
        self.incoming
    }
    pub fn outgoing(&self) -> Option<Ray> {
        self.outgoing
    }
}

/// Integral of `f` along a single segment.
pub fn integrate_segment<F: Fn(Complex64) -> Complex64>(
    f: &F,
    z0: Complex64,
    z1: Complex64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let d = z1 - z0;
    let breaks = uniform_breaks(0.0, 1.0, 1.0 / d.norm().max(1.0));
    integrate_breaks(|s| f(z0 + d * s) * d, &breaks, spec)
}

/// Like [`integrate_segment`] for an integrand that varies on the length
/// `scale` near `z0` and more slowly further on; breakpoints grow
/// geometrically away from `z0`.
pub fn integrate_segment_graded<F: Fn(Complex64) -> Complex64>(
    f: &F,
    z0: Complex64,
    z1: Complex64,
    scale: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let d = z1 - z0;
    let len = d.norm();
    let mut breaks = uniform_breaks(0.0, 1.0, 1.0 / len.max(1.0));
    if scale > 0.0 && scale < len {
        let mut s = scale / len;
        while s < 1.0 {
            breaks.push(s);
            s *= 2.0;
        }
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
    }
    integrate_breaks(|s| f(z0 + d * s) * d, &breaks, spec)
}

const RAY_MAX: f64 = 4096.0;

/// Integral of `f` along a ray from its anchor to infinity. `ray_decay` is a
/// lower bound on the exponential decay rate in arclength.
pub fn integrate_ray<F: Fn(Complex64) -> Complex64>(
    f: &F,
    ray: Ray,
    ray_decay: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let g = |s: f64| f(ray.anchor + ray.direction * s) * ray.direction;
    let env = |s: f64| g(s).norm();
    let floor = spec.abs_tol * 1e-3;
    let mut len = 1.0;
    loop {
        let (e1, e2, e3) = (env(len), env(1.5 * len), env(2.0 * len));
        if e1.is_finite() && e2.is_finite() && e3.is_finite() && e1.max(e2).max(e3) <= floor {
            break;
        }
        len *= 2.0;
        if len > RAY_MAX {
            return Err(Error::Decay(format!(
                "integrand does not decay along ray from {} in direction {}",
                ray.anchor, ray.direction
            )));
        }
    }
    let max_width = if ray_decay > 0.0 {
        (2.0 / ray_decay).min(1.0)
    } else {
        1.0
    };
    let breaks = uniform_breaks(0.0, len, max_width.max(len / 256.0));
    let mut est = integrate_breaks(g, &breaks, spec)?;
    let (e1, e3) = (env(len), env(2.0 * len));
    let tail = if e1 > 0.0 && e3 < e1 && e3 > 0.0 {
        let lambda = (e1 / e3).ln() / len;
        e1 / lambda
    } else {
        e1 * len
    };
    est.error += tail;
    Ok(est)
}

/// Integral of `f` along `path`, honouring its orientation.
pub fn integrate_contour<F: Fn(Complex64) -> Complex64>(
    f: F,
    path: &ContourPath,
    ray_decay: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let mut total = Estimate::zero();
    if let Some(r) = path.incoming {
        total += -integrate_ray(&f, r, ray_decay, spec)?;
    }
    for &(z0, z1) in &path.segments {
        total += integrate_segment(&f, z0, z1, spec)?;
    }
    if let Some(r) = path.outgoing {
        total += integrate_ray(&f, r, ray_decay, spec)?;
    }
    Ok(if path.reversed { -total } else { total })
}
