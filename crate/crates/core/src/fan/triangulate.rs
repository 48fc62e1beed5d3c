use num_traits::Signed;

use crate::lattice::{det, NVector};

fn orient(a: &NVector, b: &NVector, c: &NVector) -> i8 {
    let d = det(&[a.coords().to_vec(), b.coords().to_vec(), c.coords().to_vec()]);
    if d.is_positive() {
        1
    } else if d.is_negative() {
        -1
    } else {
        0
    }
}

/// Placing triangulation of coplanar rays (on an affine plane missing the
/// origin), inserting points in lexicographic order so that every point is
/// used. Returns index triples into `pts`.
pub(crate) fn place_triangulate(pts: &[NVector]) -> Vec<[usize; 3]> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&i, &j| pts[i].cmp(&pts[j]));
    let mut tris = Vec::new();
    if order.len() < 3 {
        return tris;
    }
    // collinear prefix
    let mut split = 2;
    while split < order.len() && orient(&pts[order[0]], &pts[order[1]], &pts[order[split]]) == 0 {
        split += 1;
    }
    if split == order.len() {
        return tris;
    }
    let chain: Vec<usize> = order[..split].to_vec();
    let p = order[split];
    for w in chain.windows(2) {
        tris.push(sorted3(w[0], w[1], p));
    }
    let mut cycle: Vec<usize> = if orient(&pts[chain[0]], &pts[chain[1]], &pts[p]) > 0 {
        chain.clone()
    } else {
        chain.iter().rev().cloned().collect()
    };
    cycle.push(p);
    // boundary edges are (cycle[i], cycle[i+1 mod n]) with interior on the left
    for &q in &order[split + 1..] {
        let n = cycle.len();
        let visible: Vec<bool> = (0..n)
            .map(|i| orient(&pts[cycle[i]], &pts[cycle[(i + 1) % n]], &pts[q]) < 0)
            .collect();
        let Some(start) = (0..n).find(|&i| visible[i] && !visible[(i + n - 1) % n]) else {
            continue;
        };
        let mut len = 0;
        while len < n && visible[(start + len) % n] {
            let i = (start + len) % n;
            tris.push(sorted3(cycle[i], cycle[(i + 1) % n], q));
            len += 1;
        }
        // vertices strictly inside the visible run leave the boundary
        let mut next = Vec::with_capacity(n + 1);
        let last = (start + len) % n;
        let mut i = last;
        loop {
            next.push(cycle[i]);
            if i == start {
                break;
            }
            i = (i + 1) % n;
        }
        next.push(q);
        cycle = next;
    }
    tris.sort();
    tris
}

fn sorted3(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut t = [a, b, c];
    t.sort();
    t
}

/// Consecutive pairs of rays lying on a common line (the rank-2 analogue).
pub(crate) fn subdivide_segment(pts: &[NVector]) -> Vec<[usize; 2]> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&i, &j| pts[i].cmp(&pts[j]));
    order.windows(2).map(|w| [w[0].min(w[1]), w[0].max(w[1])]).collect()
}
