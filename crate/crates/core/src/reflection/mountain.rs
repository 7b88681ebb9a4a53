use super::{points_away, reflect_quiver, Polarity, ReflectionStep};
use crate::error::{Error, Result};
use crate::quiver::{
    analyze_shapes, is_eventually_outward, ray_vertex, Multiplicity, Orientation, QuiverSpec, ShapeClass, VertexRef,
};

/// The parts of a D-infinity quiver: the trivalent vertex `k`, its two
/// leaves, and the long arm (core vertices first, then the ray).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DInfinityFrame {
    pub branch: String,
    pub leaves: [String; 2],
    /// Core vertices of the long arm, walking away from `k`.
    pub arm: Vec<String>,
    pub ray: String,
}

impl DInfinityFrame {
    pub fn of(spec: &QuiverSpec) -> Result<Self> {
        let shapes = analyze_shapes(spec);
        let not = || Error::NotDInfinity;
        if shapes.len() != 1 || shapes[0].class != ShapeClass::DInfinity {
            return Err(not());
        }
        if spec.components()[0].multiplicity != Multiplicity::One {
            return Err(not());
        }
        let a = &shapes[0];
        let branch = a.branch.clone().ok_or_else(not)?;
        let leaves = [a.arms[0].vertices[0].clone(), a.arms[1].vertices[0].clone()];
        let mut prev = branch.clone();
        let mut cur =
            spec.incident(&branch)?.into_iter().map(|i| i.other).find(|o| !leaves.contains(o)).ok_or_else(not)?;
        let mut arm = Vec::new();
        loop {
            match spec.parse_vertex(&cur)? {
                VertexRef::Core(_) => {
                    let next =
                        spec.incident(&cur)?.into_iter().map(|i| i.other).find(|o| *o != prev).ok_or_else(not)?;
                    arm.push(cur.clone());
                    prev = std::mem::replace(&mut cur, next);
                }
                VertexRef::Ray(r, _) => {
                    return Ok(DInfinityFrame { branch, leaves, arm, ray: spec.rays[r].id.clone() });
                }
            }
        }
    }

    /// Vertex at a position along the long arm; `k` sits at 0.
    pub fn vertex_at(&self, pos: usize) -> String {
        match pos {
            0 => self.branch.clone(),
            p if p <= self.arm.len() => self.arm[p - 1].clone(),
            p => ray_vertex(&self.ray, p - self.arm.len()),
        }
    }
}

/// Whether `k` is the only source and every arrow points away from it.
pub fn is_mountain(spec: &QuiverSpec) -> Result<bool> {
    let frame = DInfinityFrame::of(spec)?;
    for leaf in &frame.leaves {
        if !points_away(spec, &frame.branch, leaf)? {
            return Ok(false);
        }
    }
    for pos in 0..=frame.arm.len() {
        if !points_away(spec, &frame.vertex_at(pos), &frame.vertex_at(pos + 1))? {
            return Ok(false);
        }
    }
    let ray = &spec.rays[spec.ray_index(&frame.ray)?];
    Ok(ray.prefix.iter().all(|&o| o == Orientation::Out) && ray.tail == Orientation::Out)
}

/// Reflections taking an eventually outward D-infinity orientation to the
/// mountain orientation.
///
/// Repeatedly take the source on the long arm furthest from the leaves and
/// reflect, as sinks and deepest first, everything reachable from it along
/// arrows pointing toward the leaves; this moves the source one step in.
/// Once no such source is left only leaves can still be sources, and
/// reflecting them finishes the job. Ties between equally deep vertices go
/// to the lower id.
pub fn mountainize(spec: &QuiverSpec) -> Result<Vec<ReflectionStep>> {
    let frame = DInfinityFrame::of(spec)?;
    if !is_eventually_outward(spec).outward {
        return Err(Error::NotEventuallyOutward(spec.name.clone()));
    }
    let r = spec.ray_index(&frame.ray)?;
    let n = frame.arm.len() + spec.rays[r].prefix.len() + 3;
    let mut cur = spec.clone();
    let mut steps = Vec::new();
    for _ in 0..n * n + 2 {
        if is_mountain(&cur)? {
            return Ok(steps);
        }
        let scan = frame.arm.len() + cur.rays[r].prefix.len();
        let mut furthest = None;
        for pos in (1..=scan).rev() {
            if cur.is_source(&frame.vertex_at(pos))? {
                furthest = Some(pos);
                break;
            }
        }
        let mut batch: Vec<(usize, String, Polarity)> = Vec::new();
        if let Some(p) = furthest {
            // walk inward from p while arrows keep pointing toward the leaves
            let mut frontier = vec![(p, frame.vertex_at(p))];
            while let Some((q, u)) = frontier.pop() {
                let inner: Vec<(usize, String)> = match q {
                    0 => frame.leaves.iter().map(|l| (0, l.clone())).collect(),
                    q => vec![(q, frame.vertex_at(q - 1))],
                };
                for (depth, w) in inner {
                    if points_away(&cur, &u, &w)? {
                        // sort key is position plus one, so leaves go first
                        batch.push((depth, w.clone(), Polarity::Plus));
                        if q > 0 {
                            frontier.push((q - 1, w));
                        }
                    }
                }
            }
        } else {
            for leaf in &frame.leaves {
                if cur.is_source(leaf)? {
                    batch.push((0, leaf.clone(), Polarity::Minus));
                }
            }
            if batch.is_empty() {
                return Err(Error::AuditFailure("mountain reduction is stuck".into()));
            }
        }
        batch.sort();
        for (_, v, polarity) in batch {
            let ok = match polarity {
                Polarity::Plus => cur.is_sink(&v)?,
                Polarity::Minus => cur.is_source(&v)?,
            };
            if !ok {
                return Err(Error::AuditFailure(format!("`{v}` has the wrong polarity during reduction")));
            }
            cur = reflect_quiver(&cur, &v)?;
            steps.push(ReflectionStep { vertex: v, polarity });
        }
    }
    Err(Error::AuditFailure("mountain reduction did not terminate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflection::apply_steps;

    fn dinf(leaf_a: bool, leaf_b: bool, arm: &[bool], prefix: &str) -> QuiverSpec {
        // arm[j] true means the j-th long-arm core arrow points outward
        let mut b = QuiverSpec::builder("Dinf").vertices(&["k", "a", "b"]);
        b = if leaf_a { b.arrow("x", "k", "a") } else { b.arrow("x", "a", "k") };
        b = if leaf_b { b.arrow("y", "k", "b") } else { b.arrow("y", "b", "k") };
        let mut prev = "k".to_string();
        for (j, &out) in arm.iter().enumerate() {
            let v = format!("m{j}");
            b = b.vertex(&v);
            let id = format!("e{j}");
            b = if out { b.arrow(&id, &prev, &v) } else { b.arrow(&id, &v, &prev) };
            prev = v;
        }
        b.ray("r", &prev, prefix, 'o').build().unwrap()
    }

    #[test]
    fn mountain_needs_nothing() {
        let s = dinf(true, true, &[true, true], "");
        assert!(is_mountain(&s).unwrap());
        assert!(mountainize(&s).unwrap().is_empty());
    }

    #[test]
    fn reversed_first_arrow() {
        let s = dinf(true, true, &[false, true], "");
        let steps = mountainize(&s).unwrap();
        assert!(!steps.is_empty());
        assert!(is_mountain(&apply_steps(&s, &steps).unwrap()).unwrap());
    }

    #[test]
    fn leaf_sources_end_the_sequence() {
        let s = dinf(false, false, &[true], "ioi");
        let steps = mountainize(&s).unwrap();
        assert!(is_mountain(&apply_steps(&s, &steps).unwrap()).unwrap());
        let leaves = dinf(false, false, &[true], "");
        let steps = mountainize(&leaves).unwrap();
        assert_eq!(steps.len(), 2);
        assert!(steps.iter().all(|s| s.polarity == Polarity::Minus));
        let leaf_only = dinf(false, true, &[], "");
        let steps = mountainize(&leaf_only).unwrap();
        assert_eq!(steps, vec![ReflectionStep { vertex: "a".into(), polarity: Polarity::Minus }]);
    }

    #[test]
    fn rejects_other_shapes() {
        let a = QuiverSpec::builder("A").vertex("0").ray("r", "0", "", 'o').build().unwrap();
        assert_eq!(mountainize(&a).unwrap_err().code(), "not-d-infinity");
        let s = dinf(true, true, &[], "");
        let inward = QuiverSpec::from_parts(
            "in",
            s.vertices.clone(),
            s.arrows.clone(),
            vec![crate::quiver::RaySpec { tail: Orientation::In, ..s.rays[0].clone() }],
            Default::default(),
        )
        .validate()
        .unwrap();
        assert_eq!(mountainize(&inward).unwrap_err().code(), "not-eventually-outward");
    }
}
