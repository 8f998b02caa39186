//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;

use osc_ops::hypergeom::contiguous_residual;
use osc_ops::reference::{
    exact_quad_value, oracle_integrate, oracle_integrate_oscillatory, recip, DerivativeCase, QuadratureCase,
};
use osc_ops::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = std::result::Result<(bool, String), Error>;

struct Suite {
    failures: usize,
}

impl Suite {
    fn check(&mut self, id: &str, title: &str, outcome: Outcome) {
        let (ok, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        if !ok {
            self.failures += 1;
        }
        println!("{} [{id}] {title}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).round() as usize;
    (0..=n).map(|k| lo + k as f64 * step).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn slope(hs: &[f64], errs: &[f64]) -> f64 {
    let xs: Vec<f64> = hs.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn amplitudes(scheme: Scheme) -> std::result::Result<(f64, f64), Error> {
    let mut exact: f64 = 0.0;
    let mut est: f64 = 0.0;
    for w in grid(0.0, 80.0, 0.1) {
        let (e, r) = DerivativeCase::error(scheme, w)?;
        exact = exact.max(e.abs());
        est = est.max(r.leading_estimate.abs());
    }
    Ok((exact, est))
}

fn c1_amplitude_d1_2pt() -> Outcome {
    let (a, e) = amplitudes(Scheme::D1TwoPoint)?;
    let ok = rel(a, 0.627e-3) <= 0.01 && rel(e, 0.625e-3) <= 0.005;
    Ok((ok, format!("A2 = {a:.6e} (0.627e-3 +/- 1%), estimate = {e:.6e} (0.625e-3 +/- 0.5%)")))
}

fn c2_amplitude_d1_4pt() -> Outcome {
    let (a, e) = amplitudes(Scheme::D1FourPoint)?;
    let ok = rel(a, 0.633e-5) <= 0.01 && rel(e, 0.625e-5) <= 0.005;
    Ok((ok, format!("A4 = {a:.6e} (0.633e-5 +/- 1%), estimate = {e:.6e} (0.625e-5 +/- 0.5%)")))
}

fn c3_periodicity() -> Outcome {
    let mut worst: f64 = 0.0;
    for scheme in [Scheme::D1TwoPoint, Scheme::D1FourPoint] {
        for w in [0.0, 1.0, 2.5, 7.0] {
            let (a, _) = DerivativeCase::error(scheme, w)?;
            let (b, _) = DerivativeCase::error(scheme, w + 2.0 * PI)?;
            worst = worst.max((a - b).abs());
        }
    }
    Ok((worst <= 1e-12, format!("max |E(w) - E(w + 2pi)| = {worst:.3e} (<= 1e-12)")))
}

fn c4_uniform_bounds() -> Outcome {
    let mut violations = 0;
    let mut worst_ratio: f64 = 0.0;
    for scheme in [Scheme::D1TwoPoint, Scheme::D1FourPoint] {
        for w in grid(0.0, 80.0, 0.1) {
            let (e, r) = DerivativeCase::error(scheme, w)?;
            worst_ratio = worst_ratio.max(e.abs() / r.absolute_error_bound);
            if e.abs() > r.absolute_error_bound {
                violations += 1;
            }
        }
    }
    Ok((violations == 0, format!("{violations} violations over 2 x 801 points, max |E|/M = {worst_ratio:.4}")))
}

fn c5_second_derivative_scaling() -> Outcome {
    let ws = grid(0.0, 80.0, 0.1);
    let mut scaled = Vec::with_capacity(ws.len());
    for &w in &ws {
        let (e, _) = DerivativeCase::error(Scheme::D2ThreePoint, w)?;
        scaled.push(if w > 1.0 { (e / w).abs() } else { e.abs() });
    }
    let peaks: Vec<f64> = (1..ws.len() - 1)
        .filter(|&i| ws[i] > 1.0 && scaled[i] >= scaled[i - 1] && scaled[i] >= scaled[i + 1])
        .map(|i| scaled[i])
        .collect();
    let (hi, lo) = peaks.iter().fold((0.0f64, f64::INFINITY), |(h, l), &p| (h.max(p), l.min(p)));
    let variation = (hi - lo) / hi;

    // unscaled error along w0 + 2k pi
    let w0 = 1.0;
    let ks: Vec<f64> = (0..12).map(f64::from).collect();
    let mut es = Vec::new();
    for &k in &ks {
        es.push(DerivativeCase::error(Scheme::D2ThreePoint, w0 + 2.0 * PI * k)?.0);
    }
    let ws2: Vec<f64> = ks.iter().map(|k| w0 + 2.0 * PI * k).collect();
    let n = ws2.len() as f64;
    let (mx, my) = (ws2.iter().sum::<f64>() / n, es.iter().sum::<f64>() / n);
    let sxy: f64 = ws2.iter().zip(&es).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = ws2.iter().map(|x| (x - mx) * (x - mx)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let resid = ws2.iter().zip(&es).map(|(x, y)| (y - (a + b * x)).abs()).fold(0.0f64, f64::max);
    let spread = es.iter().map(|e| e.abs()).fold(0.0f64, f64::max);
    let fit = resid / spread;

    let ok = peaks.len() >= 10 && variation < 0.05 && fit < 0.02;
    Ok((ok, format!("{} peaks, amplitude variation {:.3}% (< 5%), linear-fit residual {:.2e} (< 2%)", peaks.len(), 100.0 * variation, fit)))
}

fn quad_sweep() -> std::result::Result<Vec<(f64, f64)>, Error> {
    (0..=5000).map(|k| 0.1 * f64::from(k)).map(|w| Ok((w, QuadratureCase::error(w)?.0))).collect()
}

fn c6a_envelope() -> Outcome {
    let k0 = (200.0 * PI).ceil() as usize;
    let sweep = quad_sweep()?;
    let tail = &sweep[k0 + 1..];
    let violations = tail.iter().filter(|(w, d)| d.abs() > 0.0025 / w).count();
    let worst = tail.iter().map(|(w, d)| w * d.abs()).fold(0.0f64, f64::max);
    Ok((violations == 0, format!("{violations} of {} points outside +/-0.0025/w, max w|D| = {worst:.6}", tail.len())))
}

fn c6b_range() -> Outcome {
    let worst = quad_sweep()?.iter().map(|(_, d)| d.abs()).fold(0.0f64, f64::max);
    Ok((worst < 8e-5, format!("max |D| over [0, 500] = {worst:.4e} (< 8e-5)")))
}

fn c7_classical_limits() -> Outcome {
    let osc = Oscillation::new(0.0, 0.0)?;
    let p = HarmonicPair::new(recip, |_| 0.0, Family::Trigonometric, osc);
    let (x, h) = (1.0, 0.1);
    let st = StencilSpec::new(x, h, &osc)?;
    let f = recip;
    let classical = [
        (f(x + h) - f(x - h)) / (2.0 * h),
        (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h),
        (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
    ];
    let mut worst: f64 = 0.0;
    for (scheme, want) in [Scheme::D1TwoPoint, Scheme::D1FourPoint, Scheme::D2ThreePoint].into_iter().zip(classical) {
        worst = worst.max(rel(p.approximate(scheme, &st)?, want));
    }
    let q = quad_basic(f, WeightKind::COS, &osc, 0.9, 1.1, 1.0)?;
    let simpson = h / 3.0 * (f(0.9) + 4.0 * f(1.0) + f(1.1));
    worst = worst.max(rel(q.value, simpson));
    Ok((worst <= 1e-12, format!("max relative deviation {worst:.3e} (<= 1e-12)")))
}

fn c8_hypergeom_identities() -> Outcome {
    let mut anchor: f64 = 0.0;
    let mut residual: f64 = 0.0;
    for lambda in [0.1, 1.0, 5.0, 20.0, 50.0] {
        for fam in [Family::Trigonometric, Family::Hyperbolic] {
            let basis = hyp0f1_basis(lambda, fam, 13)?;
            let (c, s) = match fam {
                Family::Trigonometric => (lambda.cos(), lambda.sin() / lambda),
                Family::Hyperbolic => (lambda.cosh(), lambda.sinh() / lambda),
            };
            anchor = anchor.max(rel(basis[0], c)).max(rel(basis[1], s));
            let z = fam.eta() * lambda * lambda / 4.0;
            for i in 1..basis.len() - 1 {
                residual = residual.max(contiguous_residual(0.5 + i as f64, z, basis[i - 1], basis[i], basis[i + 1]));
            }
        }
    }
    let ok = anchor <= 1e-14 && residual <= 1e-13;
    Ok((ok, format!("anchor deviation {anchor:.2e}, contiguous residual {residual:.2e} (<= 1e-13)")))
}

fn c9_slopes() -> Outcome {
    let p = DerivativeCase::pair(3.0)?;
    let hs: Vec<f64> = (0..5).map(|k| 0.1 / f64::from(1 << k)).collect();
    let deriv_slope = |scheme: Scheme| -> std::result::Result<f64, Error> {
        let exact = match scheme.derivative_order() {
            1 => DerivativeCase::exact_d1(3.0)?,
            _ => DerivativeCase::exact_d2(3.0)?,
        };
        let mut errs = Vec::new();
        for &h in &hs {
            let st = StencilSpec::new(1.0, h, &p.osc)?;
            errs.push((p.approximate(scheme, &st)? - exact).abs());
        }
        Ok(slope(&hs, &errs))
    };
    let s2 = deriv_slope(Scheme::D1TwoPoint)?;
    let s4 = deriv_slope(Scheme::D1FourPoint)?;
    let s22 = deriv_slope(Scheme::D2ThreePoint)?;

    let osc = Oscillation::new(10.0, 0.0)?;
    let quad_slope = |offset: f64| -> std::result::Result<f64, Error> {
        let mut errs = Vec::new();
        for &h in &hs {
            let (a, b) = (1.0 - h, 1.0 + h);
            let q = quad_basic(recip, WeightKind::COS, &osc, a, b, 1.0 + offset * h)?;
            let exact = oracle_integrate(|x| recip(x) * (10.0 * x).cos(), a, b, 1e-14)?;
            errs.push((exact - q.value).abs());
        }
        Ok(slope(&hs, &errs))
    };
    let q1 = quad_slope(0.0)?;
    let q2 = quad_slope(1.0 / 3.0)?;

    let ok = (s2 - 2.0).abs() <= 0.1
        && (s22 - 2.0).abs() <= 0.1
        && (s4 - 4.0).abs() <= 0.1
        && (q1 - 5.0).abs() <= 0.15
        && (q2 - 4.0).abs() <= 0.15;
    Ok((ok, format!("d1_2pt {s2:.3}, d2_3pt {s22:.3}, d1_4pt {s4:.3}, quad rho=1 {q1:.3}, quad rho=2 {q2:.3}")))
}

fn cubic_over_linear(rng: &mut ChaCha8Rng) -> impl Fn(f64) -> f64 {
    let c: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
    let d = rng.gen_range(1.5..3.0);
    move |x: f64| (c[0] + x * (c[1] + x * (c[2] + x * c[3]))) / (d + x)
}

fn c10_oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x05ee_d0f1);
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for _ in 0..40 {
        let f1 = cubic_over_linear(&mut rng);
        let f2 = cubic_over_linear(&mut rng);
        let omega = rng.gen_range(0.0..200.0);
        let delta = rng.gen_range(0.0..2.0 * PI);
        let h = rng.gen_range(0.02..0.2);
        let a = rng.gen_range(-1.0..1.0);
        let b = a + 2.0 * h;
        let osc = Oscillation::new(omega, delta)?;
        let p = HarmonicPair::new(&f1, &f2, Family::Trigonometric, osc);
        let q = quad_harmonic(&p, a, b, a + h)?;
        let phi = |x: f64| f1(x) * osc.phase(x).cos() + f2(x) * osc.phase(x).sin();
        let exact = oracle_integrate_oscillatory(phi, a, b, omega, 1e-13)?;
        let allowed = (3.0 * q.est_error.abs()).max(1e-12);
        let ratio = (exact - q.value).abs() / allowed;
        worst = worst.max(ratio);
        if ratio > 1.0 {
            failures += 1;
        }
    }
    let mut closed: f64 = 0.0;
    for w in [0.0, 1.0, 10.0, 62.9, 250.0, 500.0] {
        let o = oracle_integrate_oscillatory(QuadratureCase::integrand(w), QuadratureCase::A, QuadratureCase::B, w, 1e-13)?;
        closed = closed.max(rel(o, exact_quad_value(w)));
    }
    let ok = failures == 0 && closed <= 1e-11;
    Ok((ok, format!("{failures}/40 outside max(1e-12, 3|est|) (worst ratio {worst:.3}), closed form vs oracle {closed:.2e} (<= 1e-11)")))
}

fn main() -> ExitCode {
    let mut s = Suite { failures: 0 };
    s.check("1", "first-derivative 2-point amplitude", c1_amplitude_d1_2pt());
    s.check("2", "first-derivative 4-point amplitude", c2_amplitude_d1_4pt());
    s.check("3", "exact frequency periodicity", c3_periodicity());
    s.check("4", "uniform error bounds", c4_uniform_bounds());
    s.check("5", "second-derivative linear scaling", c5_second_derivative_scaling());
    s.check("6a", "quadrature envelope beyond 20pi", c6a_envelope());
    s.check("6b", "quadrature error range", c6b_range());
    s.check("7", "classical limits at zero frequency", c7_classical_limits());
    s.check("8", "0F1 identities", c8_hypergeom_identities());
    s.check("9", "order-of-accuracy slopes", c9_slopes());
    s.check("10", "oracle equivalence", c10_oracle_equivalence());
    println!("{} criteria failed", s.failures);
    if s.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
