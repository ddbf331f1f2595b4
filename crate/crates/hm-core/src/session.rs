//! Sessions of physical-unit samples, experiment timelines, and the
//! timestamp merge that tags each sample with the emotion being induced.
//!
//! A session file is JSON-lines: the first line is a header object
//! `{"participant_id":"P001"}`, every following line is one sample
//! `{"t_ms":0,"acc":[0.0,0.0,0.0],"gyro":[0.0,0.0,0.0]}`. A timeline file is
//! CSV with header `emotion,start_ms,end_ms`. Segment intervals are half-open
//! `[start_ms, end_ms)`, so a sample on a boundary belongs to the segment that
//! starts there.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("unknown emotion name {0:?}")]
    UnknownEmotion(String),
    #[error("segments [{a_start},{a_end}) and [{b_start},{b_end}) overlap")]
    OverlappingSegments {
        a_start: u32,
        a_end: u32,
        b_start: u32,
        b_end: u32,
    },
    #[error("segment interval [{start},{end}) is inverted or empty")]
    InvertedInterval { start: u32, end: u32 },
    #[error("malformed timeline row {line}: {reason}")]
    MalformedRow { line: usize, reason: String },
    #[error("samples are not sorted by t_ms")]
    UnsortedSamples,
    #[error("malformed session line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

/// 3-axis reading: g for acceleration, deg/s for rotation rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn zero() -> Self {
        Vec3::new(0.0, 0.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl From<Vec3> for [f64; 3] {
    fn from(v: Vec3) -> Self {
        [v.x, v.y, v.z]
    }
}

/// One timestamped 6-axis reading in physical units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImuSample {
    pub t_ms: u32,
    pub acc: Vec3,
    pub gyro: Vec3,
}

/// The five induced emotional states. `ALL` is the fixed tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmotionState {
    Happy,
    Sad,
    Neutral,
    Surprise,
    Disgust,
}

impl EmotionState {
    pub const ALL: [EmotionState; 5] = [
        EmotionState::Happy,
        EmotionState::Sad,
        EmotionState::Neutral,
        EmotionState::Surprise,
        EmotionState::Disgust,
    ];

    /// Canonical lowercase name used in files and dataset labels.
    pub fn as_str(&self) -> &'static str {
        match self {
            EmotionState::Happy => "happy",
            EmotionState::Sad => "sad",
            EmotionState::Neutral => "neutral",
            EmotionState::Surprise => "surprise",
            EmotionState::Disgust => "disgust",
        }
    }

    /// Capitalized name for table rendering.
    pub fn label(&self) -> &'static str {
        match self {
            EmotionState::Happy => "Happy",
            EmotionState::Sad => "Sad",
            EmotionState::Neutral => "Neutral",
            EmotionState::Surprise => "Surprise",
            EmotionState::Disgust => "Disgust",
        }
    }
}

impl fmt::Display for EmotionState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EmotionState {
    type Err = SessionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "happy" => Ok(EmotionState::Happy),
            "sad" => Ok(EmotionState::Sad),
            "neutral" => Ok(EmotionState::Neutral),
            "surprise" => Ok(EmotionState::Surprise),
            "disgust" => Ok(EmotionState::Disgust),
            other => Err(SessionError::UnknownEmotion(other.to_string())),
        }
    }
}

/// One contiguous interval during which a single emotion video plays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub emotion: EmotionState,
    pub start_ms: u32,
    pub end_ms: u32,
}

/// Ordered, non-overlapping emotion segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Timeline {
    segments: Vec<Segment>,
}

impl Timeline {
    /// Validates ordering, non-overlap, and non-empty intervals.
    pub fn new(segments: Vec<Segment>) -> Result<Self, SessionError> {
        for seg in &segments {
            if seg.start_ms >= seg.end_ms {
                return Err(SessionError::InvertedInterval {
                    start: seg.start_ms,
                    end: seg.end_ms,
                });
            }
        }
        for pair in segments.windows(2) {
            if pair[1].start_ms < pair[0].end_ms {
                return Err(SessionError::OverlappingSegments {
                    a_start: pair[0].start_ms,
                    a_end: pair[0].end_ms,
                    b_start: pair[1].start_ms,
                    b_end: pair[1].end_ms,
                });
            }
        }
        Ok(Timeline { segments })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// The segment whose half-open interval contains `t_ms`, if any.
    pub fn segment_at(&self, t_ms: u32) -> Option<&Segment> {
        self.segments
            .iter()
            .find(|s| s.start_ms <= t_ms && t_ms < s.end_ms)
    }

    /// Serializes back to the `emotion,start_ms,end_ms` CSV form.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("emotion,start_ms,end_ms\n");
        for seg in &self.segments {
            out.push_str(&format!("{},{},{}\n", seg.emotion, seg.start_ms, seg.end_ms));
        }
        out
    }
}

/// Parses a timeline CSV (`emotion,start_ms,end_ms`, emotion names
/// case-insensitive). Rows must already be sorted by start time.
pub fn parse_timeline(text: &str) -> Result<Timeline, SessionError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut segments = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let line = idx + 2; // 1-based, after the header
        let record = record.map_err(|e| SessionError::MalformedRow {
            line,
            reason: e.to_string(),
        })?;
        if record.len() != 3 {
            return Err(SessionError::MalformedRow {
                line,
                reason: format!("expected 3 fields, got {}", record.len()),
            });
        }
        let emotion: EmotionState = record[0].parse()?;
        let start_ms: u32 = record[1].parse().map_err(|e| SessionError::MalformedRow {
            line,
            reason: format!("bad start_ms: {e}"),
        })?;
        let end_ms: u32 = record[2].parse().map_err(|e| SessionError::MalformedRow {
            line,
            reason: format!("bad end_ms: {e}"),
        })?;
        segments.push(Segment {
            emotion,
            start_ms,
            end_ms,
        });
    }
    Timeline::new(segments)
}

/// Reads a timeline CSV from disk.
pub fn read_timeline(path: &Path) -> Result<Timeline, SessionError> {
    let text = std::fs::read_to_string(path)?;
    parse_timeline(&text)
}

/// Writes a timeline CSV to disk.
pub fn write_timeline(timeline: &Timeline, path: &Path) -> Result<(), SessionError> {
    std::fs::write(path, timeline.to_csv())?;
    Ok(())
}

/// An unlabeled recording: one participant's ordered sample stream.
#[derive(Debug, Clone, PartialEq)]
pub struct Session {
    pub participant_id: String,
    pub samples: Vec<ImuSample>,
}

/// Samples tagged with the emotion induced while they were recorded.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSession {
    pub participant_id: String,
    pub labeled: Vec<(ImuSample, EmotionState)>,
}

/// Tags each sample with the emotion of the segment containing its timestamp.
/// Samples outside every segment are dropped; the count of dropped samples is
/// returned alongside the labeled session so it can surface in reports.
pub fn label_samples(
    participant_id: &str,
    samples: &[ImuSample],
    timeline: &Timeline,
) -> Result<(LabeledSession, usize), SessionError> {
    if samples.windows(2).any(|w| w[1].t_ms < w[0].t_ms) {
        return Err(SessionError::UnsortedSamples);
    }
    let mut labeled = Vec::with_capacity(samples.len());
    let mut dropped = 0usize;
    for sample in samples {
        match timeline.segment_at(sample.t_ms) {
            Some(seg) => labeled.push((*sample, seg.emotion)),
            None => dropped += 1,
        }
    }
    Ok((
        LabeledSession {
            participant_id: participant_id.to_string(),
            labeled,
        },
        dropped,
    ))
}

#[derive(Serialize, Deserialize)]
struct SessionHeader {
    participant_id: String,
}

/// Writes a session as JSON-lines: header object first, one sample per line.
/// Reals are printed in shortest round-trip form, so a read-back is value-equal.
pub fn write_session(session: &Session, path: &Path) -> Result<(), SessionError> {
    let file = File::create(path)?;
    let mut w = BufWriter::new(file);
    let header = SessionHeader {
        participant_id: session.participant_id.clone(),
    };
    serde_json::to_writer(&mut w, &header).map_err(io_from_json)?;
    w.write_all(b"\n")?;
    for sample in &session.samples {
        serde_json::to_writer(&mut w, sample).map_err(io_from_json)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a session written by [`write_session`].
pub fn read_session(path: &Path) -> Result<Session, SessionError> {
    let file = File::open(path)?;
    let reader = BufReader::new(file);
    let mut lines = reader.lines();

    let header_line = match lines.next() {
        Some(l) => l?,
        None => {
            return Err(SessionError::MalformedLine {
                line: 1,
                reason: "missing header line".to_string(),
            })
        }
    };
    let header: SessionHeader =
        serde_json::from_str(&header_line).map_err(|e| SessionError::MalformedLine {
            line: 1,
            reason: e.to_string(),
        })?;

    let mut samples = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let sample: ImuSample =
            serde_json::from_str(&line).map_err(|e| SessionError::MalformedLine {
                line: idx + 2,
                reason: e.to_string(),
            })?;
        if !sample.acc.is_finite() || !sample.gyro.is_finite() {
            return Err(SessionError::MalformedLine {
                line: idx + 2,
                reason: "non-finite component".to_string(),
            });
        }
        samples.push(sample);
    }
    Ok(Session {
        participant_id: header.participant_id,
        samples,
    })
}

fn io_from_json(e: serde_json::Error) -> SessionError {
    SessionError::Io(std::io::Error::other(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(t_ms: u32) -> ImuSample {
        ImuSample {
            t_ms,
            acc: Vec3::new(0.1, 0.2, 0.3),
            gyro: Vec3::new(1.0, 2.0, 3.0),
        }
    }

    #[test]
    fn parse_single_segment() {
        let tl = parse_timeline("emotion,start_ms,end_ms\nhappy,0,1000\n").unwrap();
        assert_eq!(tl.segments().len(), 1);
        assert_eq!(
            tl.segments()[0],
            Segment {
                emotion: EmotionState::Happy,
                start_ms: 0,
                end_ms: 1000
            }
        );
    }

    #[test]
    fn parse_rejects_overlap() {
        let err = parse_timeline("emotion,start_ms,end_ms\nhappy,0,1000\nsad,500,1500\n")
            .unwrap_err();
        assert!(matches!(err, SessionError::OverlappingSegments { .. }));
    }

    #[test]
    fn parse_rejects_unknown_emotion() {
        let err = parse_timeline("emotion,start_ms,end_ms\njoy,0,10\n").unwrap_err();
        assert!(matches!(err, SessionError::UnknownEmotion(name) if name == "joy"));
    }

    #[test]
    fn parse_rejects_inverted_interval() {
        let err = parse_timeline("emotion,start_ms,end_ms\nhappy,1000,1000\n").unwrap_err();
        assert!(matches!(err, SessionError::InvertedInterval { .. }));
    }

    #[test]
    fn parse_rejects_malformed_row() {
        let err = parse_timeline("emotion,start_ms,end_ms\nhappy,zero,10\n").unwrap_err();
        assert!(matches!(err, SessionError::MalformedRow { line: 2, .. }));
    }

    #[test]
    fn emotion_names_case_insensitive() {
        assert_eq!("HAPPY".parse::<EmotionState>().unwrap(), EmotionState::Happy);
        assert_eq!("Disgust".parse::<EmotionState>().unwrap(), EmotionState::Disgust);
    }

    #[test]
    fn label_inside_segment() {
        let tl = parse_timeline("emotion,start_ms,end_ms\nhappy,0,1000\n").unwrap();
        let (session, dropped) = label_samples("P001", &[sample(500)], &tl).unwrap();
        assert_eq!(session.labeled.len(), 1);
        assert_eq!(session.labeled[0].1, EmotionState::Happy);
        assert_eq!(dropped, 0);
    }

    #[test]
    fn label_half_open_boundary() {
        let tl =
            parse_timeline("emotion,start_ms,end_ms\nhappy,0,1000\nsad,1000,2000\n").unwrap();
        let (session, _) = label_samples("P001", &[sample(1000)], &tl).unwrap();
        assert_eq!(session.labeled[0].1, EmotionState::Sad);
    }

    #[test]
    fn label_drops_out_of_range() {
        let tl = parse_timeline("emotion,start_ms,end_ms\nhappy,0,1000\n").unwrap();
        let (session, dropped) = label_samples("P001", &[sample(5000)], &tl).unwrap();
        assert!(session.labeled.is_empty());
        assert_eq!(dropped, 1);
    }

    #[test]
    fn label_rejects_unsorted() {
        let tl = parse_timeline("emotion,start_ms,end_ms\nhappy,0,1000\n").unwrap();
        let err = label_samples("P001", &[sample(500), sample(400)], &tl).unwrap_err();
        assert!(matches!(err, SessionError::UnsortedSamples));
    }

    #[test]
    fn label_conserves_samples() {
        let tl =
            parse_timeline("emotion,start_ms,end_ms\nhappy,0,1000\nsad,2000,3000\n").unwrap();
        let samples: Vec<ImuSample> = (0..40).map(|i| sample(i * 100)).collect();
        let (session, dropped) = label_samples("P001", &samples, &tl).unwrap();
        assert_eq!(session.labeled.len() + dropped, samples.len());
        // order-preserving on t_ms
        assert!(session
            .labeled
            .windows(2)
            .all(|w| w[0].0.t_ms <= w[1].0.t_ms));
    }

    #[test]
    fn session_roundtrip_empty() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.jsonl");
        let session = Session {
            participant_id: "P001".to_string(),
            samples: vec![],
        };
        write_session(&session, &path).unwrap();
        assert_eq!(read_session(&path).unwrap(), session);
    }

    #[test]
    fn session_roundtrip_one_sample() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.jsonl");
        let session = Session {
            participant_id: "P007".to_string(),
            samples: vec![sample(0)],
        };
        write_session(&session, &path).unwrap();
        assert_eq!(read_session(&path).unwrap(), session);
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with("{\"participant_id\":\"P007\"}"));
    }

    #[test]
    fn timeline_csv_roundtrip() {
        let tl =
            parse_timeline("emotion,start_ms,end_ms\nhappy,0,1000\nsad,1000,2500\n").unwrap();
        assert_eq!(parse_timeline(&tl.to_csv()).unwrap(), tl);
    }
}
