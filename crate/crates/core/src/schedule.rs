//! Time-linear exploration/exploitation schedules.
//!
//! Each parameter moves linearly from its start value to its end value as
//! the elapsed budget fraction goes from 0 to the focus fraction, and stays
//! at the end value afterwards (the focused phase).

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduledParam {
    /// Probability of sampling a fresh random test.
    RandomProbability,
    /// Per-target population capacity.
    PopulationCapacity,
    /// Mutants evaluated per sampled archive test.
    Mutations,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParameterSchedule {
    pub focus_fraction: f64,
    pub pr_start: f64,
    pub pr_end: f64,
    pub n_start: usize,
    pub n_end: usize,
    pub m_start: usize,
    pub m_end: usize,
}

impl Default for ParameterSchedule {
    fn default() -> Self {
        Self {
            focus_fraction: 0.5,
            pr_start: 0.5,
            pr_end: 0.0,
            n_start: 10,
            n_end: 1,
            m_start: 1,
            m_end: 10,
        }
    }
}

impl ParameterSchedule {
    /// Raw (unrounded) interpolation of `start -> end` at elapsed fraction `t`.
    pub fn interpolate(&self, start: f64, end: f64, t: f64) -> f64 {
        let t = t.clamp(0.0, 1.0);
        let progress = if self.focus_fraction <= 0.0 {
            if t > 0.0 {
                1.0
            } else {
                0.0
            }
        } else {
            (t / self.focus_fraction).min(1.0)
        };
        if progress >= 1.0 {
            end
        } else {
            start + (end - start) * progress
        }
    }

    /// Scheduled value of `which` at elapsed fraction `t`. Integer parameters
    /// are rounded half away from zero and kept within their endpoints.
    pub fn value(&self, which: ScheduledParam, t: f64) -> f64 {
        match which {
            ScheduledParam::RandomProbability => self
                .interpolate(self.pr_start, self.pr_end, t)
                .clamp(0.0, 1.0),
            ScheduledParam::PopulationCapacity => self.rounded(self.n_start, self.n_end, t) as f64,
            ScheduledParam::Mutations => self.rounded(self.m_start, self.m_end, t) as f64,
        }
    }

    fn rounded(&self, start: usize, end: usize, t: f64) -> usize {
        let raw = self.interpolate(start as f64, end as f64, t).round();
        let (lo, hi) = (start.min(end) as f64, start.max(end) as f64);
        raw.clamp(lo, hi) as usize
    }

    pub fn random_probability(&self, t: f64) -> f64 {
        self.value(ScheduledParam::RandomProbability, t)
    }

    pub fn capacity(&self, t: f64) -> usize {
        self.rounded(self.n_start, self.n_end, t)
    }

    pub fn mutations(&self, t: f64) -> usize {
        self.rounded(self.m_start, self.m_end, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn half_focus() -> ParameterSchedule {
        ParameterSchedule::default()
    }

    #[test]
    fn pr_after_thirty_percent() {
        let v = half_focus().random_probability(0.3);
        assert!((v - 0.2).abs() < 1e-12, "{v}");
    }

    #[test]
    fn pr_at_start() {
        assert_eq!(half_focus().random_probability(0.0), 0.5);
    }

    #[test]
    fn capacity_rounds_half_away_from_zero() {
        // 10 + (1 - 10) * 0.5 = 5.5
        assert_eq!(half_focus().capacity(0.25), 6);
    }

    #[test]
    fn zero_focus_jumps_to_end() {
        let s = ParameterSchedule {
            focus_fraction: 0.0,
            ..half_focus()
        };
        assert_eq!(s.random_probability(0.0), 0.5);
        assert_eq!(s.capacity(0.0), 10);
        assert_eq!(s.random_probability(1e-9), 0.0);
        assert_eq!(s.capacity(1e-9), 1);
        assert_eq!(s.mutations(0.5), 10);
    }

    #[test]
    fn mutations_increase() {
        let s = half_focus();
        assert_eq!(s.mutations(0.0), 1);
        assert_eq!(s.mutations(0.5), 10);
        assert_eq!(s.mutations(0.9), 10);
    }

    proptest! {
        #[test]
        fn linear_before_focus(a in 0.0f64..0.5, b in 0.0f64..0.5, c in 0.0f64..0.5) {
            let s = half_focus();
            let mut ts = [a, b, c];
            ts.sort_by(f64::total_cmp);
            let ys: Vec<f64> = ts.iter().map(|&t| s.interpolate(0.5, 0.0, t)).collect();
            // Cross product of (t2-t1, y2-y1) and (t3-t1, y3-y1).
            let cross = (ts[1] - ts[0]) * (ys[2] - ys[0]) - (ts[2] - ts[0]) * (ys[1] - ys[0]);
            prop_assert!(cross.abs() < 1e-12);
        }

        #[test]
        fn constant_after_focus(f in 0.0f64..=1.0, t in 0.0f64..=1.0) {
            let s = ParameterSchedule { focus_fraction: f, ..half_focus() };
            prop_assume!(t >= f && t > 0.0);
            prop_assert_eq!(s.random_probability(t), 0.0);
            prop_assert_eq!(s.capacity(t), 1);
            prop_assert_eq!(s.mutations(t), 10);
        }

        #[test]
        fn monotone_and_bounded(t1 in 0.0f64..=1.0, t2 in 0.0f64..=1.0, f in 0.0f64..=1.0) {
            let s = ParameterSchedule { focus_fraction: f, ..half_focus() };
            let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
            prop_assert!(s.random_probability(lo) >= s.random_probability(hi));
            prop_assert!(s.capacity(lo) >= s.capacity(hi));
            prop_assert!(s.mutations(lo) <= s.mutations(hi));
            let p = s.random_probability(t1);
            prop_assert!((0.0..=1.0).contains(&p));
        }
    }
}
