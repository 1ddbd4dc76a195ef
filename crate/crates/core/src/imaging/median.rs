use crate::error::{Error, Result};
use crate::imaging::GrayImage;

/// Median over a `window x window` neighbourhood with edge replication.
///
/// Runs a sliding 256-bin histogram along each row.
pub fn median_filter(g: &GrayImage, window: usize) -> Result<GrayImage> {
    if window < 3 || window % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "median window {window} must be odd and >= 3"
        )));
    }
    let (w, h) = (g.width(), g.height());
    let r = (window / 2) as isize;
    let rank = window * window / 2;
    let cx = |x: isize| x.clamp(0, w as isize - 1) as usize;
    let cy = |y: isize| y.clamp(0, h as isize - 1) as usize;
    let mut out = vec![0u8; w * h];

    for y in 0..h as isize {
        let rows: Vec<usize> = (-r..=r).map(|d| cy(y + d)).collect();
        let mut hist = [0u32; 256];
        for &yy in &rows {
            for dx in -r..=r {
                hist[g.get(cx(dx), yy) as usize] += 1;
            }
        }
        for x in 0..w as isize {
            if x > 0 {
                let (gone, new) = (cx(x - r - 1), cx(x + r));
                for &yy in &rows {
                    hist[g.get(gone, yy) as usize] -= 1;
                    hist[g.get(new, yy) as usize] += 1;
                }
            }
            let mut acc = 0usize;
            let mut v = 0usize;
            while acc + hist[v] as usize <= rank {
                acc += hist[v] as usize;
                v += 1;
            }
            out[y as usize * w + x as usize] = v as u8;
        }
    }
    GrayImage::new(w, h, out)
}
