use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geometry::RasterMask;
use crate::imaging::LabelImage;
use crate::invariants::MultiComponentShape;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    /// Edge neighbours only.
    Four,
    /// Edge and corner neighbours.
    #[default]
    Eight,
}

impl Connectivity {
    pub fn from_neighbours(n: u32) -> Result<Connectivity> {
        match n {
            4 => Ok(Connectivity::Four),
            8 => Ok(Connectivity::Eight),
            _ => Err(Error::InvalidArgument(format!(
                "connectivity must be 4 or 8, got {n}"
            ))),
        }
    }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

fn union(parent: &mut [u32], a: u32, b: u32) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi as usize] = lo;
    }
}

/// Two-pass labelling. Components are numbered `1..=n` in the row-major
/// order of their first pixel; background is 0.
pub fn connected_components(mask: &RasterMask, connectivity: Connectivity) -> LabelImage {
    let (w, h) = (mask.width(), mask.height());
    let mut provisional = vec![0u32; w * h];
    let mut parent: Vec<u32> = vec![0];

    for y in 0..h {
        for x in 0..w {
            if !mask.get(x, y) {
                continue;
            }
            let mut neighbours = [0u32; 4];
            let mut k = 0;
            let mut push = |l: u32| {
                if l != 0 {
                    neighbours[k] = l;
                    k += 1;
                }
            };
            if x > 0 {
                push(provisional[y * w + x - 1]);
            }
            if y > 0 {
                push(provisional[(y - 1) * w + x]);
                if connectivity == Connectivity::Eight {
                    if x > 0 {
                        push(provisional[(y - 1) * w + x - 1]);
                    }
                    if x + 1 < w {
                        push(provisional[(y - 1) * w + x + 1]);
                    }
                }
            }
            let label = match neighbours[..k].iter().min() {
                None => {
                    let l = parent.len() as u32;
                    parent.push(l);
                    l
                }
                Some(&m) => {
                    for &n in &neighbours[..k] {
                        union(&mut parent, m, n);
                    }
                    m
                }
            };
            provisional[y * w + x] = label;
        }
    }

    let mut final_id = vec![0u32; parent.len()];
    let mut next = 1;
    let labels = provisional
        .iter()
        .map(|&p| {
            if p == 0 {
                return 0;
            }
            let root = find(&mut parent, p) as usize;
            if final_id[root] == 0 {
                final_id[root] = next;
                next += 1;
            }
            final_id[root]
        })
        .collect();
    LabelImage::new(w, h, labels, 0).expect("dimensions unchanged")
}

/// One mask per distinct non-background label, in ascending label order.
/// Each mask is cropped to its label's bounding box; its origin keeps the
/// pixels at their image position.
pub fn label_to_components(li: &LabelImage) -> Result<MultiComponentShape<RasterMask>> {
    let mut boxes: BTreeMap<u32, (usize, usize, usize, usize)> = BTreeMap::new();
    for y in 0..li.height() {
        for x in 0..li.width() {
            let l = li.get(x, y);
            if l == li.background() {
                continue;
            }
            boxes
                .entry(l)
                .and_modify(|b| *b = (b.0.min(x), b.1.min(y), b.2.max(x), b.3.max(y)))
                .or_insert((x, y, x, y));
        }
    }
    if boxes.is_empty() {
        return Err(Error::NoComponents);
    }
    let masks = boxes
        .into_iter()
        .map(|(label, (x0, y0, x1, y1))| {
            let mut m = RasterMask::from_fn(x1 - x0 + 1, y1 - y0 + 1, |i, j| {
                li.get(x0 + i, y0 + j) == label
            });
            m = RasterMask::with_origin(
                m.width(),
                m.height(),
                m.grid().to_vec(),
                [x0 as f64, y0 as f64],
            )
            .expect("finite origin");
            m
        })
        .collect();
    MultiComponentShape::new(masks)
}
