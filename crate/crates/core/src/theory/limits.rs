use rand::Rng;
use rand_distr::{Exp, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PdmpEventKind {
    Start,
    /// Poisson direction switch in the interior.
    Flip,
    /// Reflection at `w = 0`.
    ReflectLow,
    /// Reflection at `w = 1`.
    ReflectHigh,
    End,
}

/// State of the process right after an event.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PdmpEvent {
    pub time: f64,
    pub position: f64,
    pub velocity: i8,
    pub kind: PdmpEventKind,
}

/// Piecewise-linear path of `(W(t), ε(t))` on `[0,1] × {−1,+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PdmpPath {
    pub events: Vec<PdmpEvent>,
    pub horizon: f64,
}

impl PdmpPath {
    pub fn flip_times(&self) -> Vec<f64> {
        self.times_of(PdmpEventKind::Flip)
    }

    fn times_of(&self, kind: PdmpEventKind) -> Vec<f64> {
        self.events.iter().filter(|e| e.kind == kind).map(|e| e.time).collect()
    }

    /// Gaps between consecutive interior flips; reflections are ignored.
    pub fn inter_flip_times(&self) -> Vec<f64> {
        self.flip_times().windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Durations of excursions `0 → 1 → 0`, measured between hits of `0`.
    pub fn round_trip_times(&self) -> Vec<f64> {
        let mut trips = Vec::new();
        let mut anchor: Option<f64> = None;
        let mut reached_top = false;
        for e in &self.events {
            match e.kind {
                PdmpEventKind::ReflectHigh if anchor.is_some() => reached_top = true,
                PdmpEventKind::ReflectLow => {
                    if let (Some(start), true) = (anchor, reached_top) {
                        trips.push(e.time - start);
                    }
                    if anchor.is_none() || reached_top {
                        anchor = Some(e.time);
                        reached_top = false;
                    }
                }
                _ => {}
            }
        }
        trips
    }

    pub fn position_at(&self, t: f64) -> Result<f64> {
        if !(0.0..=self.horizon).contains(&t) {
            return Err(Error::Config(format!("time {t} is outside [0, {}]", self.horizon)));
        }
        let k = self.events.partition_point(|e| e.time <= t).saturating_sub(1);
        let e = &self.events[k];
        Ok((e.position + f64::from(e.velocity) * (t - e.time)).clamp(0.0, 1.0))
    }

    /// Positions at `spacing, 2·spacing, …` up to the horizon.
    pub fn occupation_samples(&self, spacing: f64) -> Result<Vec<f64>> {
        if spacing.is_nan() || spacing <= 0.0 {
            return Err(Error::Config("the spacing must be positive".into()));
        }
        let mut out = Vec::new();
        let mut k = 0;
        let mut t = spacing;
        while t <= self.horizon {
            while k + 1 < self.events.len() && self.events[k + 1].time <= t {
                k += 1;
            }
            let e = &self.events[k];
            out.push((e.position + f64::from(e.velocity) * (t - e.time)).clamp(0.0, 1.0));
            t += spacing;
        }
        Ok(out)
    }
}

/// Event-driven simulation of the unit-speed PDMP on `[0, 1]` that switches
/// direction at rate `rate(W)` and reflects at both ends. Candidate switches are
/// thinned against `rate_bound`.
pub fn simulate_pdmp<R: Rng + ?Sized>(
    rate: impl Fn(f64) -> f64,
    rate_bound: f64,
    horizon: f64,
    start: (f64, i8),
    rng: &mut R,
) -> Result<PdmpPath> {
    if !(rate_bound >= 0.0 && rate_bound.is_finite()) {
        return Err(Error::Config(format!("rate bound {rate_bound} must be finite and nonnegative")));
    }
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::Config("the horizon must be positive".into()));
    }
    let (mut w, mut v) = start;
    if !(0.0..=1.0).contains(&w) || !(v == 1 || v == -1) {
        return Err(Error::Config("start must lie in [0,1] × {−1,+1}".into()));
    }
    let clock = if rate_bound > 0.0 {
        Some(Exp::new(rate_bound).map_err(|e| Error::Numerical(e.to_string()))?)
    } else {
        None
    };
    let mut t = 0.0;
    let mut events = vec![PdmpEvent {
        time: 0.0,
        position: w,
        velocity: v,
        kind: PdmpEventKind::Start,
    }];
    loop {
        let to_wall = if v > 0 { 1.0 - w } else { w };
        let candidate = clock.map_or(f64::INFINITY, |c| rng.sample(c));
        let step = candidate.min(to_wall);
        if t + step >= horizon {
            w += f64::from(v) * (horizon - t);
            events.push(PdmpEvent {
                time: horizon,
                position: w.clamp(0.0, 1.0),
                velocity: v,
                kind: PdmpEventKind::End,
            });
            break;
        }
        t += step;
        if candidate < to_wall {
            w += f64::from(v) * candidate;
            let r = rate(w);
            if !(r >= 0.0 && r <= rate_bound * (1.0 + 1e-12)) {
                return Err(Error::Numerical(format!(
                    "switching rate {r} at w = {w} is outside [0, {rate_bound}]"
                )));
            }
            if rng.random::<f64>() * rate_bound < r {
                v = -v;
                events.push(PdmpEvent {
                    time: t,
                    position: w,
                    velocity: v,
                    kind: PdmpEventKind::Flip,
                });
            }
        } else {
            let kind = if v > 0 {
                w = 1.0;
                PdmpEventKind::ReflectHigh
            } else {
                w = 0.0;
                PdmpEventKind::ReflectLow
            };
            v = -v;
            events.push(PdmpEvent {
                time: t,
                position: w,
                velocity: v,
                kind,
            });
        }
    }
    Ok(PdmpPath { events, horizon })
}

/// Streaming summary of a reflected Brownian path on `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReflectedBmSummary {
    pub n_steps: u64,
    /// Time average of `W`.
    pub mean: f64,
    /// Time-averaged variance of `W`.
    pub variance: f64,
    pub min: f64,
    pub max: f64,
    /// Times from a visit to `0` until the next visit to `1`.
    pub passage_times: Vec<f64>,
}

fn reflect(mut w: f64) -> f64 {
    loop {
        if w < 0.0 {
            w = -w;
        } else if w > 1.0 {
            w = 2.0 - w;
        } else {
            return w;
        }
    }
}

/// Euler scheme for standard Brownian motion reflected at `0` and `1`.
pub fn simulate_reflected_bm<R: Rng + ?Sized>(horizon: f64, dt: f64, start: f64, rng: &mut R) -> Result<ReflectedBmSummary> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Config("dt must be positive".into()));
    }
    if !(horizon >= dt && horizon.is_finite()) {
        return Err(Error::Config("the horizon must cover at least one step".into()));
    }
    if !(0.0..=1.0).contains(&start) {
        return Err(Error::OutOfRange(start));
    }
    let n_steps = (horizon / dt).round() as u64;
    let sd = dt.sqrt();
    let mut w = start;
    let (mut mean, mut m2) = (0.0, 0.0);
    let (mut lo, mut hi) = (w, w);
    let mut passage_times = Vec::new();
    let mut from_zero: Option<f64> = (start == 0.0).then_some(0.0);
    for k in 1..=n_steps {
        let raw = w + sd * rng.sample::<f64, _>(StandardNormal);
        let t = k as f64 * dt;
        if raw <= 0.0 {
            from_zero = Some(t);
        } else if raw >= 1.0 {
            if let Some(t0) = from_zero.take() {
                passage_times.push(t - t0);
            }
        }
        w = reflect(raw);
        let d = w - mean;
        mean += d / k as f64;
        m2 += d * (w - mean);
        lo = lo.min(w);
        hi = hi.max(w);
    }
    Ok(ReflectedBmSummary {
        n_steps,
        mean,
        variance: m2 / n_steps as f64,
        min: lo,
        max: hi,
        passage_times,
    })
}
