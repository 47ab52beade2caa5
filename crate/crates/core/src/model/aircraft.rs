use super::class::{OperationTask, WakeClass};

/// Window end used for aircraft with no upper time limit.
pub const OPEN_WINDOW_END: i64 = i64::MAX / 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aircraft {
    pub id: u32,
    pub class: WakeClass,
    pub task: OperationTask,
    pub window_min: i64,
    pub window_max: i64,
    /// Scheduled operation time `P_i`.
    pub scheduled: i64,
}

impl Aircraft {
    pub fn new(
        id: u32,
        class: WakeClass,
        task: OperationTask,
        window_min: i64,
        window_max: i64,
        scheduled: i64,
    ) -> Self {
        Self { id, class, task, window_min, window_max, scheduled }
    }

    /// Aircraft with window `[window_min, open)`.
    pub fn open(id: u32, class: WakeClass, task: OperationTask, window_min: i64, scheduled: i64) -> Self {
        Self::new(id, class, task, window_min, OPEN_WINDOW_END, scheduled)
    }

    pub fn base_window(&self) -> Window {
        Window::closed(self.window_min, self.window_max)
    }

    pub fn delay_at(&self, time: i64) -> i64 {
        (time - self.scheduled).max(0)
    }
}

/// Period `[start, end]` during which no operation may take place.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interruption {
    pub start: i64,
    pub end: i64,
}

impl Interruption {
    pub fn new(start: i64, end: i64) -> crate::Result<Self> {
        if start >= end {
            return Err(crate::Error::InvalidInstance(format!(
                "interruption start {start} must precede end {end}"
            )));
        }
        Ok(Self { start, end })
    }
}

/// Allowed operation times: at most two disjoint closed integer intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    parts: Vec<(i64, i64)>,
}

impl Window {
    pub fn closed(lo: i64, hi: i64) -> Self {
        let parts = if lo <= hi { vec![(lo, hi)] } else { Vec::new() };
        Self { parts }
    }

    pub fn parts(&self) -> &[(i64, i64)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn lo(&self) -> Option<i64> {
        self.parts.first().map(|p| p.0)
    }

    pub fn hi(&self) -> Option<i64> {
        self.parts.last().map(|p| p.1)
    }

    pub fn contains(&self, t: i64) -> bool {
        self.parts.iter().any(|&(a, b)| a <= t && t <= b)
    }

    /// Smallest allowed time `>= t`, snapping forward across a gap.
    #[inline]
    pub fn earliest_at_or_after(&self, t: i64) -> Option<i64> {
        for &(a, b) in &self.parts {
            if t <= b {
                return Some(t.max(a));
            }
        }
        None
    }
}

/// Transforms an aircraft window for a runway interruption.
///
/// When the interruption overlaps `[f_min, f_max]` the window is extended by
/// the blocked time at or after `f_min` and the blocked interval is removed;
/// otherwise the window is unchanged. The interruption is closed, so the
/// remaining parts exclude both of its endpoints. An empty result marks an
/// aircraft that can no longer operate.
pub fn apply_interruption(aircraft: &Aircraft, interruption: &Interruption) -> Window {
    let (a, b) = (aircraft.window_min, aircraft.window_max);
    let (g0, g1) = (interruption.start, interruption.end);
    if g1 < a || g0 > b {
        return Window::closed(a, b);
    }
    let extension = g1 - g0.max(a);
    let hi = b.saturating_add(extension).min(OPEN_WINDOW_END.max(b));
    let mut parts = Vec::with_capacity(2);
    if a < g0 {
        parts.push((a, g0 - 1));
    }
    if g1 < hi {
        parts.push((g1 + 1, hi));
    }
    Window { parts }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ac(lo: i64, hi: i64) -> Aircraft {
        Aircraft::new(1, WakeClass::from_ordinal(1), OperationTask::Landing, lo, hi, lo)
    }

    #[test]
    fn interruption_after_window_leaves_it_unchanged() {
        let w = apply_interruption(&ac(0, 100), &Interruption::new(200, 300).unwrap());
        assert_eq!(w.parts(), &[(0, 100)]);
    }

    #[test]
    fn interruption_inside_window_splits_and_extends() {
        let w = apply_interruption(&ac(0, 100), &Interruption::new(50, 80).unwrap());
        // [0,50) and (80,130]
        assert_eq!(w.parts(), &[(0, 49), (81, 130)]);
    }

    #[test]
    fn interruption_covering_window_start_shifts_it() {
        let w = apply_interruption(&ac(10, 20), &Interruption::new(0, 30).unwrap());
        // (30,40]
        assert_eq!(w.parts(), &[(31, 40)]);
    }

    #[test]
    fn degenerate_window_can_vanish() {
        let w = apply_interruption(&ac(5, 5), &Interruption::new(5, 6).unwrap());
        assert!(w.is_empty());
    }

    #[test]
    fn interruption_requires_positive_length() {
        assert!(Interruption::new(5, 5).is_err());
    }

    #[test]
    fn earliest_snaps_across_gap() {
        let w = apply_interruption(&ac(0, 100), &Interruption::new(50, 80).unwrap());
        assert_eq!(w.earliest_at_or_after(-5), Some(0));
        assert_eq!(w.earliest_at_or_after(49), Some(49));
        assert_eq!(w.earliest_at_or_after(50), Some(81));
        assert_eq!(w.earliest_at_or_after(130), Some(130));
        assert_eq!(w.earliest_at_or_after(131), None);
    }
}
