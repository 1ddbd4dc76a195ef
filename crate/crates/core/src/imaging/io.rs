//! PGM (P2/P5) read and write, PNG read.
//!
//! Label images are stored as PGM with gray value = label.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::imaging::{GrayImage, LabelImage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PgmEncoding {
    /// `P2`: decimal values, one image row per line.
    Ascii,
    /// `P5`: one byte per pixel.
    #[default]
    Binary,
}

const PNG_SIGNATURE: &[u8] = b"\x89PNG\r\n\x1a\n";

/// Decodes PGM or PNG bytes, dispatching on the magic number.
pub fn decode_image(bytes: &[u8]) -> Result<GrayImage> {
    if bytes.starts_with(b"P2") || bytes.starts_with(b"P5") {
        decode_pgm(bytes)
    } else if bytes.starts_with(PNG_SIGNATURE) {
        decode_png(bytes)
    } else {
        Err(Error::MalformedImage(
            "not a PGM (P2/P5) or PNG file".into(),
        ))
    }
}

pub fn read_gray(path: impl AsRef<Path>) -> Result<GrayImage> {
    decode_image(&std::fs::read(path)?)
}

/// Reads a label image; every pixel value is its label, background 0.
pub fn read_labels(path: impl AsRef<Path>) -> Result<LabelImage> {
    let g = read_gray(path)?;
    let labels = g.pixels().iter().map(|&v| v as u32).collect();
    LabelImage::new(g.width(), g.height(), labels, 0)
}

pub fn write_gray(path: impl AsRef<Path>, g: &GrayImage, encoding: PgmEncoding) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(&encode_pgm(g, encoding))?;
    Ok(())
}

/// Writes labels as a binary PGM; labels above 255 are rejected.
pub fn write_label(path: impl AsRef<Path>, li: &LabelImage) -> Result<()> {
    let px = li
        .labels()
        .iter()
        .map(|&l| u8::try_from(l).map_err(|_| Error::LabelOutOfRange(l)))
        .collect::<Result<Vec<u8>>>()?;
    write_gray(
        path,
        &GrayImage::new(li.width(), li.height(), px)?,
        PgmEncoding::Binary,
    )
}

/// Canonical PGM bytes: `P2|P5\n<w> <h>\n255\n` followed by the raster.
pub fn encode_pgm(g: &GrayImage, encoding: PgmEncoding) -> Vec<u8> {
    let magic = match encoding {
        PgmEncoding::Ascii => "P2",
        PgmEncoding::Binary => "P5",
    };
    let mut out = format!("{magic}\n{} {}\n255\n", g.width(), g.height()).into_bytes();
    match encoding {
        PgmEncoding::Binary => out.extend_from_slice(g.pixels()),
        PgmEncoding::Ascii => {
            for row in g.pixels().chunks(g.width()) {
                let line: Vec<String> = row.iter().map(u8::to_string).collect();
                out.extend_from_slice(line.join(" ").as_bytes());
                out.push(b'\n');
            }
        }
    }
    out
}

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Header<'a> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u64> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::MalformedImage(format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::MalformedImage(format!("{what} out of range")))
    }
}

pub fn decode_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let binary = match bytes.get(..2) {
        Some(b"P2") => false,
        Some(b"P5") => true,
        _ => return Err(Error::MalformedImage("missing P2/P5 magic".into())),
    };
    let mut hdr = Header { bytes, pos: 2 };
    let width = hdr.number("width")? as usize;
    let height = hdr.number("height")? as usize;
    let maxval = hdr.number("maxval")?;
    if maxval == 0 {
        return Err(Error::MalformedImage("maxval is 0".into()));
    }
    if maxval > 255 {
        return Err(Error::UnsupportedDepth(format!(
            "maxval {maxval} exceeds 255"
        )));
    }
    if width == 0 || height == 0 {
        return Err(Error::MalformedImage(format!(
            "image size {width}x{height}"
        )));
    }
    let n = width
        .checked_mul(height)
        .ok_or_else(|| Error::MalformedImage("image too large".into()))?;

    let pixels = if binary {
        match bytes.get(hdr.pos) {
            Some(c) if c.is_ascii_whitespace() => {}
            _ => return Err(Error::MalformedImage("no whitespace after maxval".into())),
        }
        let start = hdr.pos + 1;
        let data = bytes
            .get(start..start + n)
            .ok_or_else(|| Error::MalformedImage("truncated pixel data".into()))?;
        data.to_vec()
    } else {
        let mut px = Vec::with_capacity(n);
        for _ in 0..n {
            let v = hdr.number("pixel value")?;
            if v > maxval {
                return Err(Error::MalformedImage(format!(
                    "pixel value {v} above maxval {maxval}"
                )));
            }
            px.push(v as u8);
        }
        px
    };
    if binary && pixels.iter().any(|&v| u64::from(v) > maxval) {
        return Err(Error::MalformedImage(format!(
            "pixel value above maxval {maxval}"
        )));
    }
    GrayImage::new(width, height, pixels)
}

/// 8-bit PNG (gray, gray+alpha, RGB, RGBA, palette). Color is converted with
/// `round(0.299 R + 0.587 G + 0.114 B)`; alpha is ignored.
fn decode_png(bytes: &[u8]) -> Result<GrayImage> {
    let mut decoder = png::Decoder::new(std::io::Cursor::new(bytes));
    decoder.set_transformations(png::Transformations::EXPAND);
    let mut reader = decoder
        .read_info()
        .map_err(|e| Error::MalformedImage(e.to_string()))?;
    if reader.info().bit_depth == png::BitDepth::Sixteen {
        return Err(Error::UnsupportedDepth("16-bit PNG".into()));
    }
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| Error::MalformedImage("PNG too large".into()))?;
    let mut buf = vec![0; size];
    let frame = reader
        .next_frame(&mut buf)
        .map_err(|e| Error::MalformedImage(e.to_string()))?;
    let (w, h) = (frame.width as usize, frame.height as usize);
    let channels = frame.color_type.samples();
    let stride = frame.line_size;
    let mut pixels = Vec::with_capacity(w * h);
    for y in 0..h {
        let row = &buf[y * stride..y * stride + w * channels];
        for px in row.chunks_exact(channels) {
            pixels.push(match channels {
                1 | 2 => px[0],
                _ => luma(px[0], px[1], px[2]),
            });
        }
    }
    GrayImage::new(w, h, pixels)
}

fn luma(r: u8, g: u8, b: u8) -> u8 {
    (0.299 * r as f64 + 0.587 * g as f64 + 0.114 * b as f64).round() as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    fn png_bytes(
        w: u32,
        h: u32,
        color: png::ColorType,
        depth: png::BitDepth,
        data: &[u8],
    ) -> Vec<u8> {
        let mut out = Vec::new();
        {
            let mut enc = png::Encoder::new(&mut out, w, h);
            enc.set_color(color);
            enc.set_depth(depth);
            let mut wr = enc.write_header().unwrap();
            wr.write_image_data(data).unwrap();
        }
        out
    }

    #[test]
    fn ascii_pgm_round_trips_bytewise() {
        let src = b"P2\n2 2\n255\n0 1\n2 3\n";
        let g = decode_image(src).unwrap();
        assert_eq!(g.pixels(), &[0, 1, 2, 3]);
        assert_eq!(encode_pgm(&g, PgmEncoding::Ascii), src.to_vec());
    }

    #[test]
    fn ascii_pgm_tolerates_layout_and_comments() {
        let g = decode_pgm(b"P2 # comment\n2 2\n# another\n255 0 1 2 3").unwrap();
        assert_eq!(g.pixels(), &[0, 1, 2, 3]);
    }

    #[test]
    fn binary_pgm_round_trips() {
        let g = GrayImage::from_fn(3, 2, |x, y| (x * 100 + y) as u8).unwrap();
        let bytes = encode_pgm(&g, PgmEncoding::Binary);
        assert_eq!(decode_image(&bytes).unwrap(), g);
    }

    #[test]
    fn sixteen_bit_pgm_is_unsupported() {
        assert!(matches!(
            decode_pgm(b"P2\n1 1\n65535\n7\n"),
            Err(Error::UnsupportedDepth(_))
        ));
    }

    #[test]
    fn malformed_headers() {
        assert!(matches!(
            decode_image(b"P6\n1 1\n255\n"),
            Err(Error::MalformedImage(_))
        ));
        assert!(matches!(
            decode_pgm(b"P2\n2\n"),
            Err(Error::MalformedImage(_))
        ));
        assert!(matches!(
            decode_pgm(b"P5\n2 2\n255\n\x00"),
            Err(Error::MalformedImage(_))
        ));
        assert!(matches!(
            decode_pgm(b"P2\n1 1\n10\n11\n"),
            Err(Error::MalformedImage(_))
        ));
    }

    #[test]
    fn red_png_pixel_is_76() {
        let bytes = png_bytes(
            1,
            1,
            png::ColorType::Rgb,
            png::BitDepth::Eight,
            &[255, 0, 0],
        );
        assert_eq!(decode_image(&bytes).unwrap().pixels(), &[76]);
    }

    #[test]
    fn gray_png() {
        let bytes = png_bytes(
            2,
            1,
            png::ColorType::Grayscale,
            png::BitDepth::Eight,
            &[3, 250],
        );
        assert_eq!(decode_image(&bytes).unwrap().pixels(), &[3, 250]);
    }

    #[test]
    fn sixteen_bit_png_is_unsupported() {
        let bytes = png_bytes(
            1,
            1,
            png::ColorType::Grayscale,
            png::BitDepth::Sixteen,
            &[1, 2],
        );
        assert!(matches!(
            decode_image(&bytes),
            Err(Error::UnsupportedDepth(_))
        ));
    }

    #[test]
    fn large_labels_are_rejected() {
        let li = LabelImage::new(1, 1, vec![300], 0).unwrap();
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            write_label(dir.path().join("l.pgm"), &li),
            Err(Error::LabelOutOfRange(300))
        ));
    }
}
