//! Netpbm readers (P1, P2, P4, P5) and plain-text writers (P1, P2).

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::raster::{BinaryRaster, GrayRaster};

/// A decoded netpbm image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetpbmImage {
    /// Bitmap; `1` in the file is foreground.
    Bitmap(BinaryRaster),
    /// Graymap rescaled to `0..=255`.
    Graymap(GrayRaster),
}

struct Header<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while self.pos < self.data.len() {
            match self.data[self.pos] {
                b'#' => {
                    while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                b if b.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.pos < self.data.len() && self.data[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected {what}")));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse(format!("{what} out of range")))
    }
}

/// Decode any of P1, P2, P4 or P5.
pub fn decode(data: &[u8]) -> Result<NetpbmImage> {
    if data.len() < 2 || data[0] != b'P' {
        return Err(Error::Parse("missing netpbm magic number".into()));
    }
    let kind = data[1];
    let mut h = Header { data, pos: 2 };
    let width = h.number("width")?;
    let height = h.number("height")?;
    if width == 0 || height == 0 {
        return Err(Error::InvalidDimensions { width, height });
    }
    let n = width
        .checked_mul(height)
        .ok_or_else(|| Error::Parse("image too large".into()))?;
    match kind {
        b'1' => {
            let mut pixels = Vec::with_capacity(n);
            while pixels.len() < n {
                h.skip_whitespace_and_comments();
                match data.get(h.pos) {
                    Some(b'0') => pixels.push(false),
                    Some(b'1') => pixels.push(true),
                    Some(&b) => {
                        return Err(Error::Parse(format!(
                            "unexpected byte {:?} in P1 raster",
                            b as char
                        )))
                    }
                    None => {
                        return Err(Error::Parse(format!(
                            "P1 raster truncated: {} of {n} pixels",
                            pixels.len()
                        )))
                    }
                }
                h.pos += 1;
            }
            Ok(NetpbmImage::Bitmap(BinaryRaster::from_pixels(
                width, height, pixels,
            )?))
        }
        b'2' => {
            let maxval = read_maxval(&mut h)?;
            let mut pixels = Vec::with_capacity(n);
            for i in 0..n {
                let v = h
                    .number("gray value")
                    .map_err(|_| Error::Parse(format!("P2 raster truncated at sample {i}")))?;
                pixels.push(rescale(v, maxval)?);
            }
            Ok(NetpbmImage::Graymap(GrayRaster::from_pixels(
                width, height, pixels,
            )?))
        }
        b'4' => {
            single_whitespace(&mut h)?;
            let stride = width.div_ceil(8);
            let body = data
                .get(h.pos..h.pos + stride * height)
                .ok_or_else(|| Error::Parse("P4 raster truncated".into()))?;
            let pixels = (0..n)
                .map(|i| {
                    let (r, c) = (i / width, i % width);
                    body[r * stride + c / 8] & (0x80 >> (c % 8)) != 0
                })
                .collect();
            Ok(NetpbmImage::Bitmap(BinaryRaster::from_pixels(
                width, height, pixels,
            )?))
        }
        b'5' => {
            let maxval = read_maxval(&mut h)?;
            single_whitespace(&mut h)?;
            let bytes_per = if maxval < 256 { 1 } else { 2 };
            let body = data
                .get(h.pos..h.pos + n * bytes_per)
                .ok_or_else(|| Error::Parse("P5 raster truncated".into()))?;
            let pixels = body
                .chunks(bytes_per)
                .map(|s| {
                    let v = if bytes_per == 1 {
                        s[0] as usize
                    } else {
                        (s[0] as usize) << 8 | s[1] as usize
                    };
                    rescale(v, maxval)
                })
                .collect::<Result<Vec<u8>>>()?;
            Ok(NetpbmImage::Graymap(GrayRaster::from_pixels(
                width, height, pixels,
            )?))
        }
        other => Err(Error::Parse(format!(
            "unsupported netpbm kind P{}",
            other as char
        ))),
    }
}

fn read_maxval(h: &mut Header<'_>) -> Result<usize> {
    let maxval = h.number("maxval")?;
    if maxval == 0 || maxval > 65535 {
        return Err(Error::Parse(format!("maxval {maxval} outside 1..=65535")));
    }
    Ok(maxval)
}

fn single_whitespace(h: &mut Header<'_>) -> Result<()> {
    match h.data.get(h.pos) {
        Some(b) if b.is_ascii_whitespace() => {
            h.pos += 1;
            Ok(())
        }
        _ => Err(Error::Parse(
            "expected whitespace before binary raster".into(),
        )),
    }
}

fn rescale(v: usize, maxval: usize) -> Result<u8> {
    if v > maxval {
        return Err(Error::Parse(format!("sample {v} exceeds maxval {maxval}")));
    }
    Ok(((v * 255 + maxval / 2) / maxval) as u8)
}

/// Plain-text PBM (P1). Lines are wrapped at 70 characters as the format requires.
pub fn encode_p1(img: &BinaryRaster) -> String {
    let mut out = format!("P1\n{} {}\n", img.width(), img.height());
    for r in 0..img.height() {
        let mut line_len = 0;
        for c in 0..img.width() {
            if line_len > 0 {
                if line_len + 2 > 70 {
                    out.push('\n');
                    line_len = 0;
                } else {
                    out.push(' ');
                    line_len += 1;
                }
            }
            out.push(if img.at(r, c) { '1' } else { '0' });
            line_len += 1;
        }
        out.push('\n');
    }
    out
}

/// Plain-text PGM (P2) with maxval 255.
pub fn encode_p2(img: &GrayRaster) -> String {
    let mut out = format!("P2\n{} {}\n255\n", img.width(), img.height());
    for row in img.pixels().chunks(img.width()) {
        let mut first = true;
        for v in row {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}
