//! Brute-force geometric oracle for the Z/2 intersection pairing.
//!
//! Each canonical curve is drawn as a closed axis-parallel polyline in the
//! plane model of the surface: crosscaps are discs on a horizontal axis,
//! and a curve passing through crosscap `i` stops at one boundary point and
//! resumes at the antipodal point. The two drawn instances use disjoint
//! coordinate families (heights, depths, clearances, boundary points), so
//! all intersections are transverse axis-parallel crossings, counted
//! exactly in integers. The crossing parity of the two drawings is the
//! geometric Z/2 intersection number of the underlying classes.

const SPACING: i64 = 1000;
const RADIUS: i64 = 300;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pt {
    x: i64,
    y: i64,
}

#[derive(Clone, Copy, Debug)]
struct Seg {
    a: Pt,
    b: Pt,
}

struct Params {
    /// Offset of the upper boundary point from the disc center; the lower
    /// point is its antipode.
    entry: (i64, i64),
    /// Height of the overhead connectors.
    height: i64,
    /// Depth of the closing connector.
    depth: i64,
    /// Horizontal clearance beyond the disc radius.
    gap: i64,
}

fn params(instance: usize) -> Params {
    match instance {
        0 => Params { entry: (-212, 212), height: 650, depth: 700, gap: 60 },
        1 => Params { entry: (-140, 265), height: 820, depth: 870, gap: 110 },
        _ => panic!("two instances only"),
    }
}

fn center(i: usize) -> Pt {
    Pt { x: SPACING * i as i64, y: 0 }
}

/// Axis-parallel polyline segments for one drawn instance of the canonical
/// curve through the crosscaps `indices`.
fn draw(indices: &[usize], instance: usize) -> Vec<Seg> {
    assert!(!indices.is_empty());
    assert!(indices.windows(2).all(|w| w[0] < w[1]));
    let p = params(instance);
    let upper = |i: usize| Pt { x: center(i).x + p.entry.0, y: p.entry.1 };
    let lower = |i: usize| Pt { x: center(i).x - p.entry.0, y: -p.entry.1 };

    let mut pts_runs: Vec<Vec<Pt>> = Vec::new();
    // Overhead connector from the exit of disc `from` to the entry of `to`.
    let overhead = |from: usize, to: usize| -> Vec<Pt> {
        let l = lower(from);
        let u = upper(to);
        let xr = center(from).x + RADIUS + p.gap;
        let xl = center(to).x - RADIUS - p.gap;
        vec![
            l,
            Pt { x: xr, y: l.y },
            Pt { x: xr, y: p.height },
            Pt { x: xl, y: p.height },
            Pt { x: xl, y: u.y },
            u,
        ]
    };
    for w in indices.windows(2) {
        pts_runs.push(overhead(w[0], w[1]));
    }
    // Closing connector under the axis, from the last exit to the first
    // entry.
    let last = *indices.last().unwrap();
    let first = indices[0];
    let l = lower(last);
    let u = upper(first);
    let xr = center(last).x + RADIUS + p.gap;
    let xl = center(first).x - RADIUS - p.gap;
    pts_runs.push(vec![
        l,
        Pt { x: xr, y: l.y },
        Pt { x: xr, y: -p.depth },
        Pt { x: xl, y: -p.depth },
        Pt { x: xl, y: u.y },
        u,
    ]);

    let mut segs = Vec::new();
    for run in pts_runs {
        for w in run.windows(2) {
            assert!(w[0] != w[1]);
            assert!(w[0].x == w[1].x || w[0].y == w[1].y, "axis-parallel only");
            segs.push(Seg { a: w[0], b: w[1] });
        }
    }
    segs
}

fn is_vertical(s: &Seg) -> bool {
    s.a.x == s.b.x
}

/// Count proper transverse crossings between two axis-parallel segments
/// from different instances. Panics on any degeneracy, which the disjoint
/// coordinate families rule out.
fn crossings(s: &Seg, t: &Seg) -> usize {
    match (is_vertical(s), is_vertical(t)) {
        (true, true) => {
            assert_ne!(s.a.x, t.a.x, "vertical overlap between instances");
            0
        }
        (false, false) => {
            assert_ne!(s.a.y, t.a.y, "horizontal overlap between instances");
            0
        }
        (true, false) => crossings(t, s),
        (false, true) => {
            let (hx1, hx2) = (s.a.x.min(s.b.x), s.a.x.max(s.b.x));
            let hy = s.a.y;
            let vx = t.a.x;
            let (vy1, vy2) = (t.a.y.min(t.b.y), t.a.y.max(t.b.y));
            assert!(
                !(hx1 == vx || hx2 == vx) || !(vy1 == hy || vy2 == hy),
                "endpoint touch between instances"
            );
            usize::from(hx1 < vx && vx < hx2 && vy1 < hy && hy < vy2)
        }
    }
}

/// Crossing parity of drawn representatives of the curves through `a` and
/// `b`: the geometric mod-2 intersection number.
pub fn pairing_mod2(a: &[usize], b: &[usize]) -> u8 {
    let sa = draw(a, 0);
    let sb = draw(b, 1);
    let mut count = 0usize;
    for s in &sa {
        for t in &sb {
            count += crossings(s, t);
        }
    }
    (count % 2) as u8
}
