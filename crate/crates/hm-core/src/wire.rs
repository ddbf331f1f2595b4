//! Binary packet format of the emulated earable.
//!
//! Every packet is exactly 20 bytes:
//!
//! ```text
//! offset  size  field
//! 0       2     sync marker 0x55 0xAA
//! 2       1     seq (wraps mod 256)
//! 3       4     t_ms, little-endian u32
//! 7       12    gyro x,y,z then acc x,y,z, little-endian i16 each
//! 19      1     checksum = sum(bytes[2..19]) mod 256
//! ```
//!
//! The sync marker plus checksum let a reader resynchronize on a noisy byte
//! stream: on any decode failure the scanner advances a single byte and
//! rescans, so corrupted packets are skipped rather than surfaced.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::session::{ImuSample, Vec3};

/// Wire size of one packet.
pub const PACKET_LEN: usize = 20;

/// Two-byte sync marker that opens every packet.
pub const SYNC: [u8; 2] = [0x55, 0xAA];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WireError {
    #[error("expected {PACKET_LEN} bytes, got {0}")]
    BadLength(usize),
    #[error("bad sync marker")]
    BadSync,
    #[error("checksum mismatch: stored {stored:#04x}, computed {computed:#04x}")]
    BadChecksum { stored: u8, computed: u8 },
}

/// One raw 6-axis reading as it travels on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawImuPacket {
    pub seq: u8,
    pub t_ms: u32,
    pub gyro_raw: [i16; 3],
    pub acc_raw: [i16; 3],
}

/// Conversion factors from raw integer counts to physical units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleConfig {
    pub acc_lsb_per_g: f64,
    pub gyro_lsb_per_dps: f64,
}

impl Default for ScaleConfig {
    /// Mimics a +/-4 g, +/-500 deg/s consumer IMU.
    fn default() -> Self {
        ScaleConfig {
            acc_lsb_per_g: 8192.0,
            gyro_lsb_per_dps: 65.5,
        }
    }
}

impl ScaleConfig {
    /// Panics unless both factors are strictly positive.
    pub fn new(acc_lsb_per_g: f64, gyro_lsb_per_dps: f64) -> Self {
        assert!(
            acc_lsb_per_g > 0.0 && gyro_lsb_per_dps > 0.0,
            "scale factors must be strictly positive"
        );
        ScaleConfig {
            acc_lsb_per_g,
            gyro_lsb_per_dps,
        }
    }
}

/// Encodes a packet into its exact 20-byte wire form.
pub fn encode_packet(pkt: &RawImuPacket) -> [u8; PACKET_LEN] {
    let mut buf = [0u8; PACKET_LEN];
    buf[0] = SYNC[0];
    buf[1] = SYNC[1];
    buf[2] = pkt.seq;
    buf[3..7].copy_from_slice(&pkt.t_ms.to_le_bytes());
    for (i, v) in pkt.gyro_raw.iter().enumerate() {
        buf[7 + 2 * i..9 + 2 * i].copy_from_slice(&v.to_le_bytes());
    }
    for (i, v) in pkt.acc_raw.iter().enumerate() {
        buf[13 + 2 * i..15 + 2 * i].copy_from_slice(&v.to_le_bytes());
    }
    buf[19] = checksum(&buf);
    buf
}

/// Decodes a 20-byte buffer, verifying length, sync marker, and checksum.
pub fn decode_packet(bytes: &[u8]) -> Result<RawImuPacket, WireError> {
    if bytes.len() != PACKET_LEN {
        return Err(WireError::BadLength(bytes.len()));
    }
    if bytes[0..2] != SYNC {
        return Err(WireError::BadSync);
    }
    let computed = checksum(bytes);
    if bytes[19] != computed {
        return Err(WireError::BadChecksum {
            stored: bytes[19],
            computed,
        });
    }
    let mut gyro_raw = [0i16; 3];
    let mut acc_raw = [0i16; 3];
    for i in 0..3 {
        gyro_raw[i] = i16::from_le_bytes([bytes[7 + 2 * i], bytes[8 + 2 * i]]);
        acc_raw[i] = i16::from_le_bytes([bytes[13 + 2 * i], bytes[14 + 2 * i]]);
    }
    Ok(RawImuPacket {
        seq: bytes[2],
        t_ms: u32::from_le_bytes([bytes[3], bytes[4], bytes[5], bytes[6]]),
        gyro_raw,
        acc_raw,
    })
}

fn checksum(bytes: &[u8]) -> u8 {
    bytes[2..19]
        .iter()
        .fold(0u8, |acc, b| acc.wrapping_add(*b))
}

/// Counters accumulated while reframing a noisy stream.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FramerStats {
    /// Bytes discarded while hunting for a sync marker or skipping corruption.
    pub bytes_skipped: u64,
    /// Candidate packets that had a sync marker but failed the checksum.
    pub packets_rejected: u64,
    /// Missing sequence numbers implied by gaps between accepted packets.
    pub seq_gaps: u64,
}

/// Incremental reframer: feed it arbitrary byte chunks, pull out every packet
/// that decodes cleanly. Corruption is skipped and counted, never surfaced.
#[derive(Debug, Default)]
pub struct Framer {
    buf: Vec<u8>,
    pos: usize,
    stats: FramerStats,
    last_seq: Option<u8>,
}

impl Framer {
    pub fn new() -> Self {
        Framer::default()
    }

    pub fn stats(&self) -> FramerStats {
        self.stats
    }

    /// Appends raw bytes to the internal buffer.
    pub fn push(&mut self, bytes: &[u8]) {
        // Compact occasionally so the buffer does not grow with the stream.
        if self.pos > 4096 {
            self.buf.drain(..self.pos);
            self.pos = 0;
        }
        self.buf.extend_from_slice(bytes);
    }

    /// Returns the next cleanly decoded packet, or `None` if more bytes are
    /// needed. On decode failure the scan advances one byte and retries.
    pub fn next_packet(&mut self) -> Option<RawImuPacket> {
        loop {
            // Hunt for the sync marker.
            while self.pos + 2 <= self.buf.len()
                && self.buf[self.pos..self.pos + 2] != SYNC
            {
                self.pos += 1;
                self.stats.bytes_skipped += 1;
            }
            if self.pos + PACKET_LEN > self.buf.len() {
                return None;
            }
            match decode_packet(&self.buf[self.pos..self.pos + PACKET_LEN]) {
                Ok(pkt) => {
                    self.pos += PACKET_LEN;
                    if let Some(last) = self.last_seq {
                        self.stats.seq_gaps += u64::from(pkt.seq.wrapping_sub(last).wrapping_sub(1));
                    }
                    self.last_seq = Some(pkt.seq);
                    return Some(pkt);
                }
                Err(_) => {
                    self.stats.packets_rejected += 1;
                    self.pos += 1;
                    self.stats.bytes_skipped += 1;
                }
            }
        }
    }
}

/// Reframes a complete byte buffer in one call.
pub fn frame_stream(bytes: &[u8]) -> (Vec<RawImuPacket>, FramerStats) {
    let mut framer = Framer::new();
    framer.push(bytes);
    let mut packets = Vec::new();
    while let Some(pkt) = framer.next_packet() {
        packets.push(pkt);
    }
    (packets, framer.stats())
}

/// Converts raw integer counts to physical units: g and deg/s.
pub fn raw_to_physical(pkt: &RawImuPacket, scale: &ScaleConfig) -> ImuSample {
    ImuSample {
        t_ms: pkt.t_ms,
        acc: Vec3::new(
            f64::from(pkt.acc_raw[0]) / scale.acc_lsb_per_g,
            f64::from(pkt.acc_raw[1]) / scale.acc_lsb_per_g,
            f64::from(pkt.acc_raw[2]) / scale.acc_lsb_per_g,
        ),
        gyro: Vec3::new(
            f64::from(pkt.gyro_raw[0]) / scale.gyro_lsb_per_dps,
            f64::from(pkt.gyro_raw[1]) / scale.gyro_lsb_per_dps,
            f64::from(pkt.gyro_raw[2]) / scale.gyro_lsb_per_dps,
        ),
    }
}

/// Quantizes physical units back onto the raw integer grid, saturating at the
/// i16 range. Inverse of [`raw_to_physical`] for values already on the grid.
pub fn physical_to_raw(sample: &ImuSample, scale: &ScaleConfig) -> RawImuPacket {
    let q = |v: f64, lsb: f64| -> i16 {
        (v * lsb).round().clamp(f64::from(i16::MIN), f64::from(i16::MAX)) as i16
    };
    RawImuPacket {
        seq: 0,
        t_ms: sample.t_ms,
        gyro_raw: [
            q(sample.gyro.x, scale.gyro_lsb_per_dps),
            q(sample.gyro.y, scale.gyro_lsb_per_dps),
            q(sample.gyro.z, scale.gyro_lsb_per_dps),
        ],
        acc_raw: [
            q(sample.acc.x, scale.acc_lsb_per_g),
            q(sample.acc.y, scale.acc_lsb_per_g),
            q(sample.acc.z, scale.acc_lsb_per_g),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn packet(seq: u8, t_ms: u32, gyro: [i16; 3], acc: [i16; 3]) -> RawImuPacket {
        RawImuPacket {
            seq,
            t_ms,
            gyro_raw: gyro,
            acc_raw: acc,
        }
    }

    #[test]
    fn encode_zero_packet() {
        let buf = encode_packet(&packet(0, 0, [0; 3], [0; 3]));
        let mut expected = [0u8; 20];
        expected[0] = 0x55;
        expected[1] = 0xAA;
        assert_eq!(buf, expected);
    }

    #[test]
    fn encode_checksum_equals_seq() {
        let buf = encode_packet(&packet(1, 0, [0; 3], [0; 3]));
        assert_eq!(buf[2], 0x01);
        assert_eq!(buf[19], 0x01);
    }

    #[test]
    fn encode_hand_summed_layout() {
        // seq=0, t_ms=1, gyro_x=131: payload bytes are 0x01 at offset 3 and
        // 0x83 0x00 at offsets 7..9, so the checksum is (1 + 0x83) mod 256.
        let buf = encode_packet(&packet(0, 1, [131, 0, 0], [0; 3]));
        assert_eq!(buf[3], 0x01);
        assert_eq!(&buf[7..9], &[0x83, 0x00]);
        assert_eq!(buf[19], 0x84);
    }

    #[test]
    fn decode_rejects_bad_sync() {
        assert_eq!(decode_packet(&[0u8; 20]), Err(WireError::BadSync));
    }

    #[test]
    fn decode_rejects_bad_length() {
        assert_eq!(decode_packet(&[0u8; 19]), Err(WireError::BadLength(19)));
    }

    #[test]
    fn decode_rejects_flipped_checksum() {
        let mut buf = encode_packet(&packet(3, 42, [1, -2, 3], [-4, 5, -6]));
        buf[19] ^= 0xFF;
        assert!(matches!(
            decode_packet(&buf),
            Err(WireError::BadChecksum { .. })
        ));
    }

    #[test]
    fn frame_concatenated_packets() {
        let pkts: Vec<RawImuPacket> = (0..5)
            .map(|i| packet(i as u8, i * 1000, [i as i16; 3], [-(i as i16); 3]))
            .collect();
        let mut stream = Vec::new();
        for p in &pkts {
            stream.extend_from_slice(&encode_packet(p));
        }
        let (framed, stats) = frame_stream(&stream);
        assert_eq!(framed, pkts);
        assert_eq!(stats.bytes_skipped, 0);
        assert_eq!(stats.seq_gaps, 0);
    }

    #[test]
    fn frame_resyncs_after_garbage() {
        let pkt = packet(9, 123, [5, 6, 7], [8, 9, 10]);
        let mut stream = vec![0x13, 0x37, 0x55];
        stream.extend_from_slice(&encode_packet(&pkt));
        let (framed, stats) = frame_stream(&stream);
        assert_eq!(framed, vec![pkt]);
        assert_eq!(stats.bytes_skipped, 3);
    }

    #[test]
    fn frame_drops_corrupted_middle_packet() {
        let a = packet(0, 0, [1, 1, 1], [1, 1, 1]);
        let b = packet(1, 1000, [2, 2, 2], [2, 2, 2]);
        let c = packet(2, 2000, [3, 3, 3], [3, 3, 3]);
        let mut stream = Vec::new();
        stream.extend_from_slice(&encode_packet(&a));
        let mut b_bytes = encode_packet(&b);
        b_bytes[10] ^= 0x01; // corrupt one payload byte; checksum now rejects it
        stream.extend_from_slice(&b_bytes);
        stream.extend_from_slice(&encode_packet(&c));
        let (framed, stats) = frame_stream(&stream);
        assert_eq!(framed, vec![a, c]);
        assert!(stats.packets_rejected >= 1);
        // seq 0 -> 2 implies one missing packet
        assert_eq!(stats.seq_gaps, 1);
    }

    #[test]
    fn raw_to_physical_defaults() {
        let scale = ScaleConfig::default();
        let zero = raw_to_physical(&packet(0, 0, [0; 3], [0; 3]), &scale);
        assert_eq!(zero.acc, Vec3::zero());
        assert_eq!(zero.gyro, Vec3::zero());

        let one_g = raw_to_physical(&packet(0, 0, [0; 3], [8192, 0, 0]), &scale);
        assert_eq!(one_g.acc.x, 1.0);

        let two_dps = raw_to_physical(&packet(0, 0, [0, 131, 0], [0; 3]), &scale);
        assert_eq!(two_dps.gyro.y, 131.0 / 65.5);
        assert!((two_dps.gyro.y - 2.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn roundtrip_identity(seq in any::<u8>(), t_ms in any::<u32>(),
                              gyro in any::<[i16; 3]>(), acc in any::<[i16; 3]>()) {
            let pkt = packet(seq, t_ms, gyro, acc);
            prop_assert_eq!(decode_packet(&encode_packet(&pkt)).unwrap(), pkt);
        }

        #[test]
        fn raw_to_physical_is_linear(gyro in -1000i16..=1000, acc in -1000i16..=1000,
                                     m in 1i16..=30) {
            let scale = ScaleConfig::default();
            let base = raw_to_physical(&packet(0, 0, [gyro, 0, 0], [acc, 0, 0]), &scale);
            let scaled = raw_to_physical(
                &packet(0, 0, [gyro * m, 0, 0], [acc * m, 0, 0]),
                &scale,
            );
            prop_assert!((scaled.acc.x - f64::from(m) * base.acc.x).abs() < 1e-9);
            prop_assert!((scaled.gyro.x - f64::from(m) * base.gyro.x).abs() < 1e-9);
        }
    }
}
