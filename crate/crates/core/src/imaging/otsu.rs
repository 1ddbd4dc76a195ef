use crate::error::{Error, Result};
use crate::imaging::{GrayImage, LabelImage};

/// Thresholds and the resulting class image of [`multi_otsu`].
#[derive(Debug, Clone, PartialEq)]
pub struct OtsuResult {
    /// `k - 1` ascending thresholds; class `c` holds `t[c-1] < v <= t[c]`.
    pub thresholds: Vec<u8>,
    /// Pixel count per class, darkest first.
    pub class_counts: Vec<u64>,
    /// Class index per pixel; class 0 (darkest) is the background.
    pub labels: LabelImage,
}

impl OtsuResult {
    /// Relabels so that `class` becomes the background (label 0) and the
    /// remaining classes take labels `1..k` in ascending intensity order.
    pub fn with_background_class(&self, class: u32) -> Result<LabelImage> {
        let k = self.thresholds.len() as u32 + 1;
        if class >= k {
            return Err(Error::InvalidArgument(format!(
                "background class {class} >= {k}"
            )));
        }
        let labels = self
            .labels
            .labels()
            .iter()
            .map(|&c| match c.cmp(&class) {
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Less => c + 1,
                std::cmp::Ordering::Greater => c,
            })
            .collect();
        LabelImage::new(self.labels.width(), self.labels.height(), labels, 0)
    }
}

/// `k`-class Otsu thresholding by exhaustive search over threshold tuples.
///
/// Maximises the between-class variance, equivalently `Σ_c S_c^2 / W_c` with
/// `W_c` the class weight and `S_c` its intensity sum. Among maximisers the
/// lexicographically smallest tuple wins.
pub fn multi_otsu(g: &GrayImage, classes: usize) -> Result<OtsuResult> {
    if !(2..=4).contains(&classes) {
        return Err(Error::InvalidArgument(format!(
            "classes must be 2, 3 or 4, got {classes}"
        )));
    }
    let mut hist = [0u64; 256];
    for &v in g.pixels() {
        hist[v as usize] += 1;
    }
    let populated = hist.iter().filter(|&&c| c > 0).count();
    if populated < classes {
        return Err(Error::DegenerateHistogram { populated, classes });
    }

    // cumulative weight and intensity sum of values < i
    let mut cw = [0u64; 257];
    let mut cs = [0u64; 257];
    for v in 0..256 {
        cw[v + 1] = cw[v] + hist[v];
        cs[v + 1] = cs[v] + hist[v] * v as u64;
    }
    // score[a][b]: values in [a, b)
    let mut score = vec![0.0f64; 257 * 257];
    for a in 0..257 {
        for b in a + 1..257 {
            let w = cw[b] - cw[a];
            if w > 0 {
                let s = (cs[b] - cs[a]) as f64;
                score[a * 257 + b] = s * s / w as f64;
            }
        }
    }

    let mut best = (f64::NEG_INFINITY, Vec::new());
    let mut current = Vec::with_capacity(classes - 1);
    search(&score, classes - 1, 0, 0.0, &mut current, &mut best);
    let thresholds: Vec<u8> = best.1.iter().map(|&t| t as u8).collect();

    let mut class_counts = vec![0u64; classes];
    let labels: Vec<u32> = g
        .pixels()
        .iter()
        .map(|&v| {
            let c = thresholds.iter().filter(|&&t| v > t).count();
            class_counts[c] += 1;
            c as u32
        })
        .collect();
    Ok(OtsuResult {
        thresholds,
        class_counts,
        labels: LabelImage::new(g.width(), g.height(), labels, 0)?,
    })
}

/// Chooses `remaining` more thresholds, each >= `lo`; the open class starts
/// at value `lo`.
fn search(
    score: &[f64],
    remaining: usize,
    lo: usize,
    acc: f64,
    current: &mut Vec<usize>,
    best: &mut (f64, Vec<usize>),
) {
    if remaining == 0 {
        let total = acc + score[lo * 257 + 256];
        if total > best.0 {
            *best = (total, current.clone());
        }
        return;
    }
    // threshold t closes the class [lo, t]; leave room for the rest (t <= 254)
    for t in lo..=(255 - remaining) {
        current.push(t);
        search(
            score,
            remaining - 1,
            t + 1,
            acc + score[lo * 257 + t + 1],
            current,
            best,
        );
        current.pop();
    }
}
