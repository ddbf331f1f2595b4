//! The trait/emotion model grid: one selected model per (trait, emotion)
//! cell plus a single emotion model, aggregation to a best cell per trait,
//! prediction, and report rendering.
//!
//! Seven traits times five emotional states gives 35 grid cells. Each cell
//! is trained on one row per participant: the participant's feature vector
//! for that cell's emotion, labeled with the participant's answer for that
//! cell's trait. The emotion model is trained on all participants' rows for
//! all five emotions, labeled with the emotion itself.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::{FeatureRow, FeatureVector};
use crate::learn::{
    confusion, select_best, weighted_metrics, ClassifierSpec, Dataset, Fraction, LearnError,
    MetricValue, MetricsReport, SelectionResult,
};
use crate::session::EmotionState;

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("participant {participant} is missing emotion {emotion}")]
    MissingEmotion {
        participant: String,
        emotion: EmotionState,
    },
    #[error("trait {0} has a single value across the cohort")]
    DegenerateTrait(TraitId),
    #[error("no feature vector for the selected emotion {emotion}")]
    MissingEmotionFeatures { emotion: EmotionState },
    #[error("participant {participant} has no answer for trait {trait_id}")]
    MissingTraitAnswer {
        participant: String,
        trait_id: TraitId,
    },
    #[error("value {value:?} is outside the domain of trait {trait_id}")]
    InvalidTraitValue { trait_id: TraitId, value: String },
    #[error("feature rows reference unknown participant {0}")]
    UnknownParticipant(String),
    #[error(transparent)]
    Learn(#[from] LearnError),
    #[error("csv error: {0}")]
    Csv(String),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed model or report file: {0}")]
    Malformed(String),
}

/// The seven modeled traits, in fixed declaration (and tie-break) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraitId {
    Smoker,
    ReligiousPractitioner,
    FastFoodIntake,
    HighFatIntake,
    HighSugarIntake,
    HeartDiseaseInFamily,
    DiabetesInFamily,
}

impl TraitId {
    pub const ALL: [TraitId; 7] = [
        TraitId::Smoker,
        TraitId::ReligiousPractitioner,
        TraitId::FastFoodIntake,
        TraitId::HighFatIntake,
        TraitId::HighSugarIntake,
        TraitId::HeartDiseaseInFamily,
        TraitId::DiabetesInFamily,
    ];

    /// Snake-case name used in CSV headers and report JSON.
    pub fn column_name(&self) -> &'static str {
        match self {
            TraitId::Smoker => "smoker",
            TraitId::ReligiousPractitioner => "religious_practitioner",
            TraitId::FastFoodIntake => "fast_food_intake",
            TraitId::HighFatIntake => "high_fat_intake",
            TraitId::HighSugarIntake => "high_sugar_intake",
            TraitId::HeartDiseaseInFamily => "heart_disease_in_family",
            TraitId::DiabetesInFamily => "diabetes_in_family",
        }
    }

    /// Human-readable name for table rendering.
    pub fn label(&self) -> &'static str {
        match self {
            TraitId::Smoker => "Smoker",
            TraitId::ReligiousPractitioner => "Practitioner",
            TraitId::FastFoodIntake => "Fastfood intake",
            TraitId::HighFatIntake => "Fat intake",
            TraitId::HighSugarIntake => "Sugar intake",
            TraitId::HeartDiseaseInFamily => "Heart disease",
            TraitId::DiabetesInFamily => "Diabetes",
        }
    }

    /// Legal values: yes/no for six traits, low/medium/high for fast food.
    pub fn domain(&self) -> &'static [TraitValue] {
        match self {
            TraitId::FastFoodIntake => {
                &[TraitValue::Low, TraitValue::Medium, TraitValue::High]
            }
            _ => &[TraitValue::Yes, TraitValue::No],
        }
    }

    pub fn from_column_name(name: &str) -> Option<TraitId> {
        TraitId::ALL
            .into_iter()
            .find(|t| t.column_name() == name)
    }
}

impl std::fmt::Display for TraitId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.column_name())
    }
}

/// An answer to one trait question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraitValue {
    Yes,
    No,
    Low,
    Medium,
    High,
}

impl TraitValue {
    pub fn as_str(&self) -> &'static str {
        match self {
            TraitValue::Yes => "yes",
            TraitValue::No => "no",
            TraitValue::Low => "low",
            TraitValue::Medium => "medium",
            TraitValue::High => "high",
        }
    }

    /// Parses a value, enforcing the trait's domain.
    pub fn parse_for(trait_id: TraitId, text: &str) -> Result<TraitValue, MatrixError> {
        let value = match text.trim().to_ascii_lowercase().as_str() {
            "yes" => TraitValue::Yes,
            "no" => TraitValue::No,
            "low" => TraitValue::Low,
            "medium" => TraitValue::Medium,
            "high" => TraitValue::High,
            _ => {
                return Err(MatrixError::InvalidTraitValue {
                    trait_id,
                    value: text.to_string(),
                })
            }
        };
        if !trait_id.domain().contains(&value) {
            return Err(MatrixError::InvalidTraitValue {
                trait_id,
                value: text.to_string(),
            });
        }
        Ok(value)
    }
}

impl std::fmt::Display for TraitValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gender {
    Female,
    Male,
}

impl Gender {
    pub fn as_str(&self) -> &'static str {
        match self {
            Gender::Female => "female",
            Gender::Male => "male",
        }
    }
}

impl FromStr for Gender {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "female" => Ok(Gender::Female),
            "male" => Ok(Gender::Male),
            other => Err(format!("unknown gender {other:?}")),
        }
    }
}

/// One participant's questionnaire answers and demographics. Age and gender
/// are carried for reporting only; they are never used as features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParticipantRecord {
    pub id: String,
    pub age: u32,
    pub gender: Gender,
    pub answers: BTreeMap<TraitId, TraitValue>,
}

impl ParticipantRecord {
    /// All 7 traits answered, each inside its domain.
    pub fn validate(&self) -> Result<(), MatrixError> {
        for trait_id in TraitId::ALL {
            match self.answers.get(&trait_id) {
                None => {
                    return Err(MatrixError::MissingTraitAnswer {
                        participant: self.id.clone(),
                        trait_id,
                    })
                }
                Some(value) if !trait_id.domain().contains(value) => {
                    return Err(MatrixError::InvalidTraitValue {
                        trait_id,
                        value: value.to_string(),
                    })
                }
                Some(_) => {}
            }
        }
        Ok(())
    }
}

/// One participant's per-emotion feature vectors plus their record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParticipantFeatures {
    pub record: ParticipantRecord,
    pub features: BTreeMap<EmotionState, FeatureVector>,
}

/// The full cohort as consumed by [`train_matrix`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortFeatures {
    pub participants: Vec<ParticipantFeatures>,
}

impl CohortFeatures {
    /// Joins trait records with feature rows by participant id.
    pub fn from_parts(
        records: Vec<ParticipantRecord>,
        rows: &[FeatureRow],
    ) -> Result<Self, MatrixError> {
        let mut features: BTreeMap<&str, BTreeMap<EmotionState, FeatureVector>> = BTreeMap::new();
        for record in &records {
            features.insert(&record.id, BTreeMap::new());
        }
        for row in rows {
            match features.get_mut(row.participant_id.as_str()) {
                Some(map) => {
                    map.insert(row.emotion, row.features());
                }
                None => return Err(MatrixError::UnknownParticipant(row.participant_id.clone())),
            }
        }
        let participants = records
            .iter()
            .map(|record| ParticipantFeatures {
                record: record.clone(),
                features: features.remove(record.id.as_str()).unwrap_or_default(),
            })
            .collect();
        Ok(CohortFeatures { participants })
    }
}

/// A trained and scored grid cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedCell {
    pub trait_id: TraitId,
    pub emotion: EmotionState,
    pub selection: SelectionResult,
    /// Resubstitution metrics of the selected model, Table-3 style.
    pub metrics: MetricsReport,
}

/// The trained emotion model with its resubstitution metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmotionModelCell {
    pub selection: SelectionResult,
    pub metrics: MetricsReport,
}

/// 35 trait cells plus one emotion model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelMatrix {
    pub cells: Vec<TrainedCell>,
    pub emotion_model: EmotionModelCell,
}

impl ModelMatrix {
    pub fn cell(&self, trait_id: TraitId, emotion: EmotionState) -> Option<&TrainedCell> {
        self.cells
            .iter()
            .find(|c| c.trait_id == trait_id && c.emotion == emotion)
    }

    pub fn save(&self, path: &Path) -> Result<(), MatrixError> {
        let file = File::create(path)?;
        serde_json::to_writer(BufWriter::new(file), self)
            .map_err(|e| MatrixError::Malformed(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, MatrixError> {
        let file = File::open(path)?;
        serde_json::from_reader(BufReader::new(file))
            .map_err(|e| MatrixError::Malformed(e.to_string()))
    }
}

fn cell_dataset(
    cohort: &CohortFeatures,
    trait_id: TraitId,
    emotion: EmotionState,
) -> Result<Dataset, MatrixError> {
    let mut rows = Vec::with_capacity(cohort.participants.len());
    for p in &cohort.participants {
        let features = p.features.get(&emotion).ok_or(MatrixError::MissingEmotion {
            participant: p.record.id.clone(),
            emotion,
        })?;
        let answer = p
            .answers(trait_id)
            .ok_or(MatrixError::MissingTraitAnswer {
                participant: p.record.id.clone(),
                trait_id,
            })?;
        rows.push((*features, answer.to_string()));
    }
    Ok(Dataset::new(rows))
}

impl ParticipantFeatures {
    fn answers(&self, trait_id: TraitId) -> Option<TraitValue> {
        self.record.answers.get(&trait_id).copied()
    }
}

/// Trains the 35 trait cells and the emotion model.
///
/// The 36 jobs are independent and run in parallel; the grid is assembled in
/// fixed (trait, emotion) order so the result is schedule-independent.
pub fn train_matrix(
    cohort: &CohortFeatures,
    pool: &[ClassifierSpec],
    k: usize,
    seed: u64,
) -> Result<ModelMatrix, MatrixError> {
    for p in &cohort.participants {
        p.record.validate()?;
        for emotion in EmotionState::ALL {
            if !p.features.contains_key(&emotion) {
                return Err(MatrixError::MissingEmotion {
                    participant: p.record.id.clone(),
                    emotion,
                });
            }
        }
    }
    for trait_id in TraitId::ALL {
        let mut values: Vec<TraitValue> = cohort
            .participants
            .iter()
            .filter_map(|p| p.answers(trait_id))
            .collect();
        values.sort();
        values.dedup();
        if values.len() < 2 {
            return Err(MatrixError::DegenerateTrait(trait_id));
        }
    }

    let jobs: Vec<(TraitId, EmotionState)> = TraitId::ALL
        .into_iter()
        .flat_map(|t| EmotionState::ALL.into_iter().map(move |e| (t, e)))
        .collect();
    let cells: Vec<TrainedCell> = jobs
        .par_iter()
        .map(|&(trait_id, emotion)| -> Result<TrainedCell, MatrixError> {
            let data = cell_dataset(cohort, trait_id, emotion)?;
            let selection = select_best(&data, pool, k, seed)?;
            let cm = confusion(&selection.best_model, &data)?;
            let metrics = weighted_metrics(&cm)?;
            Ok(TrainedCell {
                trait_id,
                emotion,
                selection,
                metrics,
            })
        })
        .collect::<Result<_, _>>()?;

    let mut emotion_rows = Vec::with_capacity(cohort.participants.len() * 5);
    for p in &cohort.participants {
        for emotion in EmotionState::ALL {
            emotion_rows.push((p.features[&emotion], emotion.as_str().to_string()));
        }
    }
    let emotion_data = Dataset::new(emotion_rows);
    let selection = select_best(&emotion_data, pool, k, seed)?;
    let cm = confusion(&selection.best_model, &emotion_data)?;
    let metrics = weighted_metrics(&cm)?;

    Ok(ModelMatrix {
        cells,
        emotion_model: EmotionModelCell { selection, metrics },
    })
}

/// Which accuracy keys the per-trait aggregation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AggregationKey {
    /// Training (resubstitution) accuracy of the selected cell model.
    #[default]
    Resubstitution,
    /// Cross-validation success rate of the selected cell model.
    CvRate,
}

/// Argmax over emotions with ties broken by the fixed emotion order.
pub fn best_emotion(scores: &[(EmotionState, Fraction)]) -> Option<EmotionState> {
    let position = |e: EmotionState| EmotionState::ALL.iter().position(|x| *x == e).unwrap();
    let mut best: Option<(EmotionState, Fraction)> = None;
    for &(emotion, score) in scores {
        let replace = match best {
            None => true,
            Some((be, bs)) => match score.cmp_rate(&bs) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Equal => position(emotion) < position(be),
                std::cmp::Ordering::Less => false,
            },
        };
        if replace {
            best = Some((emotion, score));
        }
    }
    best.map(|(e, _)| e)
}

/// Per trait, the cell with the best training accuracy.
pub fn best_per_trait(matrix: &ModelMatrix) -> BTreeMap<TraitId, &TrainedCell> {
    best_per_trait_by(matrix, AggregationKey::Resubstitution)
}

/// Per trait, the cell with the best accuracy under the chosen key.
pub fn best_per_trait_by(
    matrix: &ModelMatrix,
    key: AggregationKey,
) -> BTreeMap<TraitId, &TrainedCell> {
    let mut out = BTreeMap::new();
    for trait_id in TraitId::ALL {
        let scores: Vec<(EmotionState, Fraction)> = matrix
            .cells
            .iter()
            .filter(|c| c.trait_id == trait_id)
            .map(|c| {
                let score = match key {
                    AggregationKey::Resubstitution => c.selection.resubstitution,
                    AggregationKey::CvRate => c.selection.cv_success,
                };
                (c.emotion, score)
            })
            .collect();
        if let Some(emotion) = best_emotion(&scores) {
            out.insert(trait_id, matrix.cell(trait_id, emotion).unwrap());
        }
    }
    out
}

/// Predicts one trait: the trait's best cell picks the emotion whose feature
/// vector feeds that cell's model.
pub fn predict_trait(
    matrix: &ModelMatrix,
    features: &BTreeMap<EmotionState, FeatureVector>,
    trait_id: TraitId,
) -> Result<TraitValue, MatrixError> {
    let best = best_per_trait(matrix);
    let cell = best
        .get(&trait_id)
        .expect("complete matrix has every trait");
    let fv = features
        .get(&cell.emotion)
        .ok_or(MatrixError::MissingEmotionFeatures {
            emotion: cell.emotion,
        })?;
    let label = cell.selection.best_model.predict(fv);
    TraitValue::parse_for(trait_id, label)
}

/// Predicts the emotional state behind one feature vector.
pub fn predict_emotion(matrix: &ModelMatrix, fv: &FeatureVector) -> EmotionState {
    matrix
        .emotion_model
        .selection
        .best_model
        .predict(fv)
        .parse()
        .expect("emotion model domain is the five emotion names")
}

fn pct(x: f64) -> f64 {
    (x * 10_000.0).round() / 100.0
}

fn pct_metric(m: MetricValue) -> MetricValue {
    MetricValue(m.value().map(pct))
}

/// One grid cell as reported: selected classifier, accuracies, and
/// weighted metrics, all as percentages. Undefined metrics render "NAN".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    #[serde(rename = "trait")]
    pub trait_id: TraitId,
    pub emotion: EmotionState,
    pub classifier: String,
    pub accuracy_percent: f64,
    pub accuracy_fraction: String,
    pub cv_percent: f64,
    pub cv_fraction: String,
    pub tp_rate_percent: f64,
    pub fp_rate_percent: f64,
    pub precision_percent: MetricValue,
    pub recall_percent: f64,
    pub f_measure_percent: MetricValue,
}

/// Per-trait summary row: the best cell under the aggregation rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestTraitReport {
    #[serde(rename = "trait")]
    pub trait_id: TraitId,
    pub emotion: EmotionState,
    pub classifier: String,
    pub accuracy_percent: f64,
    pub accuracy_fraction: String,
}

/// The emotion model's row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmotionModelReport {
    pub classifier: String,
    pub accuracy_percent: f64,
    pub accuracy_fraction: String,
    pub cv_percent: f64,
    pub cv_fraction: String,
    pub tp_rate_percent: f64,
    pub fp_rate_percent: f64,
    pub precision_percent: MetricValue,
    pub recall_percent: f64,
    pub f_measure_percent: MetricValue,
}

/// The full report: 35 cell rows, 7 best-per-trait rows, 1 emotion row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub cells: Vec<CellReport>,
    pub best_per_trait: Vec<BestTraitReport>,
    pub emotion_model: EmotionModelReport,
}

fn metrics_row(selection: &SelectionResult, metrics: &MetricsReport) -> EmotionModelReport {
    EmotionModelReport {
        classifier: selection.best_spec.name().to_string(),
        accuracy_percent: pct(selection.resubstitution.rate()),
        accuracy_fraction: selection.resubstitution.to_string(),
        cv_percent: pct(selection.cv_success.rate()),
        cv_fraction: selection.cv_success.to_string(),
        tp_rate_percent: pct(metrics.tp_rate),
        fp_rate_percent: pct(metrics.fp_rate),
        precision_percent: pct_metric(metrics.precision),
        recall_percent: pct(metrics.recall),
        f_measure_percent: pct_metric(metrics.f1),
    }
}

/// Renders the matrix into the stable report structure.
pub fn render_report(matrix: &ModelMatrix) -> Report {
    let cells = matrix
        .cells
        .iter()
        .map(|cell| {
            let row = metrics_row(&cell.selection, &cell.metrics);
            CellReport {
                trait_id: cell.trait_id,
                emotion: cell.emotion,
                classifier: row.classifier,
                accuracy_percent: row.accuracy_percent,
                accuracy_fraction: row.accuracy_fraction,
                cv_percent: row.cv_percent,
                cv_fraction: row.cv_fraction,
                tp_rate_percent: row.tp_rate_percent,
                fp_rate_percent: row.fp_rate_percent,
                precision_percent: row.precision_percent,
                recall_percent: row.recall_percent,
                f_measure_percent: row.f_measure_percent,
            }
        })
        .collect();

    let best = best_per_trait(matrix);
    let best_per_trait = TraitId::ALL
        .into_iter()
        .filter_map(|t| best.get(&t).map(|cell| (t, *cell)))
        .map(|(trait_id, cell)| BestTraitReport {
            trait_id,
            emotion: cell.emotion,
            classifier: cell.selection.best_spec.name().to_string(),
            accuracy_percent: pct(cell.selection.resubstitution.rate()),
            accuracy_fraction: cell.selection.resubstitution.to_string(),
        })
        .collect();

    Report {
        cells,
        best_per_trait,
        emotion_model: metrics_row(
            &matrix.emotion_model.selection,
            &matrix.emotion_model.metrics,
        ),
    }
}

/// Canonical JSON form of the report; byte-identical for equal matrices.
pub fn report_json(report: &Report) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

/// Aligned-text tables mirroring the report: per-cell training accuracy,
/// per-cell weighted metrics, per-trait best rows, and the emotion model.
pub fn render_table(report: &Report) -> String {
    let mut out = String::new();
    let trait_label = |t: TraitId| t.label();

    out.push_str("Training accuracy per trait-emotion cell\n");
    let _ = writeln!(out, "{:<32} {:>12}", "Trait - Emotion", "Accuracy(%)");
    for cell in &report.cells {
        let _ = writeln!(
            out,
            "{:<32} {:>12.2}",
            format!("{} - {}", trait_label(cell.trait_id), cell.emotion.label()),
            cell.accuracy_percent
        );
    }

    out.push_str("\nSelected classifier and weighted metrics per cell\n");
    let _ = writeln!(
        out,
        "{:<32} {:<16} {:>10} {:>10} {:>12} {:>10} {:>12}",
        "Trait - Emotion", "Classifier", "TP rate", "FP rate", "Precision", "Recall", "F-measure"
    );
    for cell in &report.cells {
        let _ = writeln!(
            out,
            "{:<32} {:<16} {:>10.2} {:>10.2} {:>12} {:>10.2} {:>12}",
            format!("{} - {}", trait_label(cell.trait_id), cell.emotion.label()),
            cell.classifier,
            cell.tp_rate_percent,
            cell.fp_rate_percent,
            cell.precision_percent.to_string(),
            cell.recall_percent,
            cell.f_measure_percent.to_string()
        );
    }

    out.push_str("\nBest cell per trait\n");
    let _ = writeln!(
        out,
        "{:<20} {:<10} {:<16} {:>12}",
        "Trait", "Emotion", "Classifier", "Accuracy(%)"
    );
    for row in &report.best_per_trait {
        let _ = writeln!(
            out,
            "{:<20} {:<10} {:<16} {:>12.2}",
            trait_label(row.trait_id),
            row.emotion.label(),
            row.classifier,
            row.accuracy_percent
        );
    }

    out.push_str("\nEmotion model (weighted averages)\n");
    let em = &report.emotion_model;
    let _ = writeln!(
        out,
        "{:<16} {:>10} {:>10} {:>12} {:>10} {:>12}",
        "Classifier", "TP rate", "FP rate", "Precision", "Recall", "F-measure"
    );
    let _ = writeln!(
        out,
        "{:<16} {:>10.2} {:>10.2} {:>12} {:>10.2} {:>12}",
        em.classifier,
        em.tp_rate_percent,
        em.fp_rate_percent,
        em.precision_percent.to_string(),
        em.recall_percent,
        em.f_measure_percent.to_string()
    );
    out
}

/// Writes the `participant_id,<7 traits>,age,gender` CSV.
pub fn write_traits_csv(records: &[ParticipantRecord], path: &Path) -> Result<(), MatrixError> {
    let mut w = csv::Writer::from_path(path).map_err(|e| MatrixError::Csv(e.to_string()))?;
    let mut header = vec!["participant_id".to_string()];
    header.extend(TraitId::ALL.iter().map(|t| t.column_name().to_string()));
    header.push("age".to_string());
    header.push("gender".to_string());
    w.write_record(&header)
        .map_err(|e| MatrixError::Csv(e.to_string()))?;
    for record in records {
        record.validate()?;
        let mut row = vec![record.id.clone()];
        for trait_id in TraitId::ALL {
            row.push(record.answers[&trait_id].to_string());
        }
        row.push(record.age.to_string());
        row.push(record.gender.as_str().to_string());
        w.write_record(&row)
            .map_err(|e| MatrixError::Csv(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a traits CSV written by [`write_traits_csv`].
pub fn read_traits_csv(path: &Path) -> Result<Vec<ParticipantRecord>, MatrixError> {
    let mut r = csv::Reader::from_path(path).map_err(|e| MatrixError::Csv(e.to_string()))?;
    let headers = r
        .headers()
        .map_err(|e| MatrixError::Csv(e.to_string()))?
        .clone();
    let expected = 3 + TraitId::ALL.len(); // id + traits + age + gender
    if headers.len() != expected {
        return Err(MatrixError::Csv(format!(
            "expected {expected} columns, got {}",
            headers.len()
        )));
    }
    let trait_cols: Vec<TraitId> = headers
        .iter()
        .skip(1)
        .take(7)
        .map(|name| {
            TraitId::from_column_name(name)
                .ok_or_else(|| MatrixError::Csv(format!("unknown trait column {name:?}")))
        })
        .collect::<Result<_, _>>()?;

    let mut records = Vec::new();
    for result in r.records() {
        let row = result.map_err(|e| MatrixError::Csv(e.to_string()))?;
        let id = row[0].to_string();
        let mut answers = BTreeMap::new();
        for (i, trait_id) in trait_cols.iter().enumerate() {
            answers.insert(*trait_id, TraitValue::parse_for(*trait_id, &row[1 + i])?);
        }
        let age: u32 = row[8]
            .parse()
            .map_err(|e| MatrixError::Csv(format!("bad age for {id}: {e}")))?;
        let gender: Gender = row[9]
            .parse()
            .map_err(MatrixError::Csv)?;
        let record = ParticipantRecord {
            id,
            age,
            gender,
            answers,
        };
        record.validate()?;
        records.push(record);
    }
    Ok(records)
}
