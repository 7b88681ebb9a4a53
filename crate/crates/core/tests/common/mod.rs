#![allow(dead_code)]

use std::sync::Arc;

use quivercalc::quiver::QuiverSpec;

/// `A_n` on vertices `1..=n`; `out[i]` says the arrow between `i+1` and
/// `i+2` points right.
pub fn path(n: usize, out: &[bool]) -> Arc<QuiverSpec> {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut b = QuiverSpec::builder(&format!("A{n}"));
    for v in &names {
        b = b.vertex(v);
    }
    for i in 1..n {
        let right = out.get(i - 1).copied().unwrap_or(true);
        let (s, t) = if right { (&names[i - 1], &names[i]) } else { (&names[i], &names[i - 1]) };
        b = b.arrow(&format!("a{i}"), s, t);
    }
    Arc::new(b.build().unwrap())
}

/// A tree given by edges; `true` orients an edge from its first end.
pub fn tree(name: &str, edges: &[(&str, &str, bool)]) -> Arc<QuiverSpec> {
    let mut b = QuiverSpec::builder(name);
    let mut seen = Vec::new();
    for (u, v, _) in edges {
        for x in [u, v] {
            if !seen.contains(x) {
                seen.push(*x);
                b = b.vertex(x);
            }
        }
    }
    for (j, (u, v, fwd)) in edges.iter().enumerate() {
        b = if *fwd { b.arrow(&format!("e{j}"), u, v) } else { b.arrow(&format!("e{j}"), v, u) };
    }
    Arc::new(b.build().unwrap())
}

/// `D_n`: branch `c`, leaves `x`, `y`, arm `m1..m(n-3)`. Arrows alternate
/// direction along the arm.
pub fn d(n: usize) -> Arc<QuiverSpec> {
    let mut edges: Vec<(String, String, bool)> = vec![("x".into(), "c".into(), true), ("c".into(), "y".into(), true)];
    let mut prev = "c".to_string();
    for j in 1..=n - 3 {
        let v = format!("m{j}");
        edges.push((prev.clone(), v.clone(), j % 2 == 1));
        prev = v;
    }
    let refs: Vec<(&str, &str, bool)> = edges.iter().map(|(a, b, f)| (a.as_str(), b.as_str(), *f)).collect();
    tree(&format!("D{n}"), &refs)
}

pub fn e6() -> Arc<QuiverSpec> {
    tree("E6", &[("c", "u", true), ("p1", "c", true), ("p2", "p1", false), ("c", "q1", false), ("q1", "q2", true)])
}

/// D-infinity: branch `k`, leaves `a`, `b`, core arm `m0..`, then ray `r`
/// with the given prefix and an outward tail. `true` points away from `k`.
pub fn dinf(leaf_a: bool, leaf_b: bool, arm: &[bool], prefix: &str) -> Arc<QuiverSpec> {
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
    Arc::new(b.ray("r", &prev, prefix, 'o').build().unwrap())
}

pub fn mountain() -> Arc<QuiverSpec> {
    dinf(true, true, &[true], "")
}

pub fn a_inf() -> Arc<QuiverSpec> {
    Arc::new(QuiverSpec::builder("Ainf").vertex("0").ray("r", "0", "", 'o').build().unwrap())
}

pub fn a_inf_inf() -> Arc<QuiverSpec> {
    Arc::new(
        QuiverSpec::builder("Ainfinf").vertex("0").ray("r", "0", "oi", 'o').ray("s", "0", "i", 'o').build().unwrap(),
    )
}
