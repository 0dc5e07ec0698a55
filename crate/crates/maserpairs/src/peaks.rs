//! Local maxima of the `1 − S` curve.

use crate::error::SweepError;
use crate::sweep::{SweepConfig, SweepRecord};

const GOLDEN_STEPS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    /// Row of the grid maximum within the sweep output.
    pub index: usize,
    pub theta_over_pi: f64,
    pub phi_over_pi: f64,
    /// Estimated `1 − S` at the maximum.
    pub value: f64,
    /// `θ/π` and `1 − S` of the grid maximum itself.
    pub sampled_theta_over_pi: f64,
    pub sampled_value: f64,
    /// `θ/π` of the grid neighbours enclosing the maximum.
    pub bracket: (f64, f64),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PeakReport {
    pub peaks: Vec<Peak>,
}

impl PeakReport {
    pub fn len(&self) -> usize {
        self.peaks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.peaks.is_empty()
    }
}

/// Grid maxima of `1 − S` refined by a three-point parabola.
///
/// A row is a maximum when it is strictly above its left neighbour, not below
/// its right neighbour, and positive. Fewer than three rows yield no peaks.
pub fn find_peaks(records: &[SweepRecord]) -> PeakReport {
    let mut peaks = Vec::new();
    if records.len() < 3 {
        return PeakReport { peaks };
    }
    for i in 1..records.len() - 1 {
        let (l, c, r) = (&records[i - 1], &records[i], &records[i + 1]);
        let (y0, y1, y2) = (l.one_minus_s, c.one_minus_s, r.one_minus_s);
        if !(y1 > y0 && y1 >= y2 && y1 > 0.0) {
            continue;
        }
        let (offset, value) = parabola_vertex(y0, y1, y2);
        let half_step = if offset < 0.0 {
            c.theta_over_pi - l.theta_over_pi
        } else {
            r.theta_over_pi - c.theta_over_pi
        };
        let theta = c.theta_over_pi + offset * half_step;
        peaks.push(Peak {
            index: i,
            theta_over_pi: theta,
            phi_over_pi: theta * c.phi_over_pi / c.theta_over_pi,
            value,
            sampled_theta_over_pi: c.theta_over_pi,
            sampled_value: y1,
            bracket: (l.theta_over_pi, r.theta_over_pi),
        });
    }
    PeakReport { peaks }
}

/// Vertex of the parabola through `(−1, y0), (0, y1), (1, y2)`, returned as
/// `(offset, height)`. The offset is clamped to the bracket.
fn parabola_vertex(y0: f64, y1: f64, y2: f64) -> (f64, f64) {
    let curvature = y0 - 2.0 * y1 + y2;
    if curvature >= 0.0 {
        return (0.0, y1);
    }
    let offset = (0.5 * (y0 - y2) / curvature).clamp(-1.0, 1.0);
    let height = y1 - 0.25 * (y0 - y2) * offset;
    (offset, height.max(y1))
}

/// Re-locates each peak by a golden-section search of the model itself
/// inside the peak's grid bracket.
///
/// Unlike the parabola this converges on maxima that are cusps rather than
/// smooth tops, so the result does not depend on the grid resolution.
pub fn refine_peaks(config: &SweepConfig, report: &PeakReport) -> Result<PeakReport, SweepError> {
    let mut peaks = Vec::with_capacity(report.len());
    for peak in &report.peaks {
        let f = |theta: f64| config.evaluate(theta).map(|r| r.one_minus_s);
        let (mut a, mut b) = peak.bracket;
        let g = 0.5 * (5.0_f64.sqrt() - 1.0);
        let mut x1 = b - g * (b - a);
        let mut x2 = a + g * (b - a);
        let mut f1 = f(x1)?;
        let mut f2 = f(x2)?;
        for _ in 0..GOLDEN_STEPS {
            if f1 >= f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - g * (b - a);
                f1 = f(x1)?;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (b - a);
                f2 = f(x2)?;
            }
        }
        let (mut theta, mut value) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
        if peak.sampled_value > value {
            theta = peak.sampled_theta_over_pi;
            value = peak.sampled_value;
        }
        peaks.push(Peak {
            theta_over_pi: theta,
            phi_over_pi: config.phi(theta) / std::f64::consts::PI,
            value,
            ..*peak
        });
    }
    Ok(PeakReport { peaks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(theta: f64, y: f64) -> SweepRecord {
        SweepRecord {
            theta_over_pi: theta,
            phi_over_pi: theta,
            s: 0.0,
            t: 0.0,
            u: 0.0,
            v: 0.0,
            trace_norm: 0.0,
            deg_corr: 0.0,
            separable: y == 0.0,
            sep_degree: 1.0 - y,
            one_minus_s: y,
            p: 0.0,
            nbar: 0.0,
            n_max: 0,
        }
    }

    #[test]
    fn monotone_input_has_no_peaks() {
        let up: Vec<_> = (0..50)
            .map(|i| rec(i as f64 * 0.1, i as f64 * 0.01))
            .collect();
        assert!(find_peaks(&up).is_empty());
        let down: Vec<_> = (0..50)
            .map(|i| rec(i as f64 * 0.1, 1.0 - i as f64 * 0.01))
            .collect();
        assert!(find_peaks(&down).is_empty());
        assert!(find_peaks(&up[..2]).is_empty());
    }

    #[test]
    fn parabola_vertex_is_recovered() {
        let records: Vec<_> = (0..40)
            .map(|i| {
                let x = i as f64 * 0.05;
                rec(x, 0.7 - 3.0 * (x - 1.0123).powi(2))
            })
            .collect();
        let report = find_peaks(&records);
        assert_eq!(report.len(), 1);
        let p = report.peaks[0];
        approx::assert_abs_diff_eq!(p.theta_over_pi, 1.0123, epsilon = 1e-12);
        approx::assert_abs_diff_eq!(p.value, 0.7, epsilon = 1e-12);
    }

    #[test]
    fn zero_plateau_is_not_a_peak() {
        let records: Vec<_> = (0..10).map(|i| rec(i as f64, 0.0)).collect();
        assert!(find_peaks(&records).is_empty());
    }
}
