//! Segmentation pipeline: image IO, median filter, multi-level Otsu and
//! connected components, and conversion of label images to components.

mod io;
mod labeling;
mod median;
mod otsu;

pub use io::{
    decode_image, decode_pgm, encode_pgm, read_gray, read_labels, write_gray, write_label,
    PgmEncoding,
};
pub use labeling::{connected_components, label_to_components, Connectivity};
pub use median::median_filter;
pub use otsu::{multi_otsu, OtsuResult};

use crate::error::{Error, Result};
use crate::geometry::RasterMask;

/// 8-bit grayscale image, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<GrayImage> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidArgument(format!(
                "image size {width}x{height} is empty"
            )));
        }
        if pixels.len() != width * height {
            return Err(Error::InvalidArgument(format!(
                "{} pixels for a {width}x{height} image",
                pixels.len()
            )));
        }
        Ok(GrayImage {
            width,
            height,
            pixels,
        })
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        GrayImage::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    /// Mask of pixels different from `background`.
    pub fn to_mask(&self, background: u8) -> RasterMask {
        RasterMask::from_fn(self.width, self.height, |x, y| self.get(x, y) != background)
    }
}

/// Integer label per pixel; equal non-background labels form one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelImage {
    width: usize,
    height: usize,
    labels: Vec<u32>,
    background: u32,
}

impl LabelImage {
    pub fn new(
        width: usize,
        height: usize,
        labels: Vec<u32>,
        background: u32,
    ) -> Result<LabelImage> {
        if labels.len() != width * height {
            return Err(Error::InvalidArgument(format!(
                "{} labels for a {width}x{height} image",
                labels.len()
            )));
        }
        Ok(LabelImage {
            width,
            height,
            labels,
            background,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn background(&self) -> u32 {
        self.background
    }

    pub fn with_background(mut self, background: u32) -> LabelImage {
        self.background = background;
        self
    }

    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.labels[y * self.width + x]
    }

    /// Distinct non-background labels, ascending.
    pub fn foreground_labels(&self) -> Vec<u32> {
        let mut seen: Vec<u32> = self
            .labels
            .iter()
            .copied()
            .filter(|&l| l != self.background)
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen
    }
}
