//! JSON file formats for instances, schedules and separation models.
//!
//! Aircraft are referenced by id in files and by index in memory. An absent
//! `window_max_s` means an open window.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    analyze_sequence, Aircraft, Instance, Interruption, OperationTask, RunwayMode, SeparationModel,
    SequenceDiagnostics, WakeClass, OPEN_WINDOW_END,
};
use crate::solution::{SearchBounds, Solution, SolverStats};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub mode: RunwayMode,
    /// Base separation `T_0` of the model.
    #[serde(default = "default_t0")]
    pub t0_s: i64,
    pub aircraft: Vec<AircraftRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interruption: Option<InterruptionRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separations: Option<SeparationOverride>,
}

fn default_t0() -> i64 {
    SeparationModel::default().t0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AircraftRecord {
    pub id: u32,
    pub class: String,
    pub task: OperationTask,
    pub window_min_s: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window_max_s: Option<i64>,
    pub scheduled_s: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterruptionRecord {
    pub start_s: i64,
    pub end_s: i64,
}

/// Replaces both matrices and the four cross-task constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparationOverride {
    pub landing: Vec<Vec<i64>>,
    pub takeoff: Vec<Vec<i64>>,
    pub same_runway_td: i64,
    pub same_runway_dt: i64,
    pub dual_pd: i64,
    pub dual_dp: i64,
}

impl InstanceFile {
    /// Builds the instance on top of `base`, which supplies every model
    /// field the file does not override.
    pub fn into_instance(self, base: &SeparationModel) -> Result<Instance> {
        let mut model = base.clone();
        model.t0 = self.t0_s;
        if let Some(s) = self.separations {
            model.eta = u8::try_from(s.landing.len())
                .map_err(|_| Error::InvalidModel("too many classes".into()))?;
            model.landing = s.landing;
            model.takeoff = s.takeoff;
            model.same_runway_td = s.same_runway_td;
            model.same_runway_dt = s.same_runway_dt;
            model.dual_pd = s.dual_pd;
            model.dual_dp = s.dual_dp;
        }
        let aircraft = self
            .aircraft
            .into_iter()
            .map(|r| {
                Ok(Aircraft::new(
                    r.id,
                    WakeClass::from_letter(&r.class)?,
                    r.task,
                    r.window_min_s,
                    r.window_max_s.unwrap_or(OPEN_WINDOW_END),
                    r.scheduled_s,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let interruption = self.interruption.map(|i| Interruption::new(i.start_s, i.end_s)).transpose()?;
        Instance::new(self.mode, aircraft, model, interruption)
    }

    pub fn from_instance(inst: &Instance) -> Self {
        let m = inst.model();
        let separations = (*m != SeparationModel { t0: m.t0, ..SeparationModel::default() }).then(|| SeparationOverride {
            landing: m.landing.clone(),
            takeoff: m.takeoff.clone(),
            same_runway_td: m.same_runway_td,
            same_runway_dt: m.same_runway_dt,
            dual_pd: m.dual_pd,
            dual_dp: m.dual_dp,
        });
        Self {
            mode: inst.mode(),
            t0_s: m.t0,
            aircraft: inst
                .aircraft()
                .iter()
                .map(|a| AircraftRecord {
                    id: a.id,
                    class: a.class.letter().to_string(),
                    task: a.task,
                    window_min_s: a.window_min,
                    window_max_s: (a.window_max != OPEN_WINDOW_END).then_some(a.window_max),
                    scheduled_s: a.scheduled,
                })
                .collect(),
            interruption: inst.interruption().map(|i| InterruptionRecord { start_s: i.start, end_s: i.end }),
            separations,
        }
    }
}

pub fn parse_instance(text: &str, base: &SeparationModel) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text)?;
    file.into_instance(base)
}

pub fn instance_to_json(inst: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(inst)).expect("instance serializes") + "\n"
}

/// A full separation model as JSON.
pub fn parse_model(text: &str) -> Result<SeparationModel> {
    let m: SeparationModel = serde_json::from_str(text)?;
    m.check_structure()?;
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScheduleFile {
    /// Aircraft ids in sequence order.
    pub order: Vec<u32>,
    pub times_s: Vec<i64>,
    pub delays_s: Vec<i64>,
    pub objective_s: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<SearchBounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<SolverStats>,
    pub diagnostics: SequenceDiagnostics,
}

impl ScheduleFile {
    pub fn from_solution(inst: &Instance, sol: &Solution) -> Self {
        let s = &sol.schedule;
        Self {
            order: s.ids(inst),
            times_s: s.times.clone(),
            delays_s: s.delays.clone(),
            objective_s: s.objective,
            bounds: sol.bounds,
            certified: Some(sol.certified),
            stats: Some(sol.stats.clone()),
            diagnostics: analyze_sequence(inst, s),
        }
    }
}

pub fn solution_to_json(inst: &Instance, sol: &Solution) -> String {
    serde_json::to_string_pretty(&ScheduleFile::from_solution(inst, sol)).expect("schedule serializes") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    const ABF: &str = r#"{"mode":"single","t0_s":60,"aircraft":[
        {"id":1,"class":"A","task":"landing","window_min_s":0,"scheduled_s":0},
        {"id":2,"class":"B","task":"landing","window_min_s":0,"window_max_s":7200,"scheduled_s":0},
        {"id":3,"class":"F","task":"landing","window_min_s":0,"scheduled_s":0}]}"#;

    #[test]
    fn parses_and_reemits() {
        let inst = parse_instance(ABF, &SeparationModel::default()).unwrap();
        assert_eq!(inst.len(), 3);
        assert_eq!(inst.aircraft()[1].window_max, 7200);
        let again = parse_instance(&instance_to_json(&inst), &SeparationModel::default()).unwrap();
        assert_eq!(again.aircraft(), inst.aircraft());
        assert!(!instance_to_json(&inst).contains("separations"));
    }

    #[test]
    fn bad_class_letter_is_malformed() {
        let text = ABF.replace("\"F\"", "\"f\"");
        assert!(matches!(parse_instance(&text, &SeparationModel::default()), Err(Error::InvalidInstance(_))));
    }

    #[test]
    fn unknown_field_is_rejected() {
        let text = ABF.replace("\"t0_s\"", "\"t_zero\"");
        assert!(matches!(parse_instance(&text, &SeparationModel::default()), Err(Error::Json(_))));
    }
}
