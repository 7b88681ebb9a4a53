use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_rational::BigRational;
use serde::Serialize;

use super::{ExtendedInt, RootVector};
use crate::error::{Error, Result};
use crate::quiver::retraction::connected_pieces;
use crate::quiver::{analyze_shapes, enumerate_ic_subquivers, Multiplicity, QuiverSpec, Subquiver};

/// Symmetrized Euler form of two roots on a finite subquiver. With `n = m`
/// this is the Tits value `sum n_i^2 - sum n_s(a) n_t(a)`.
pub fn tits_form_on_subquiver(n: &RootVector, m: &RootVector, s: &Subquiver) -> Result<BigRational> {
    if n.spec() != m.spec() {
        return Err(Error::WindowMismatch);
    }
    let spec = n.spec();
    let mut twice = 0i128;
    for v in &s.vertices {
        spec.parse_vertex(v)?;
        twice += 2 * n.value(v) as i128 * m.value(v) as i128;
    }
    for a in &s.arrows {
        let (src, tgt) = spec.arrow_ends(a)?;
        twice -= n.value(&src) as i128 * m.value(&tgt) as i128 + m.value(&src) as i128 * n.value(&tgt) as i128;
    }
    Ok(BigRational::new(twice.into(), 2.into()))
}

/// Tits value of `n` on a finite subquiver.
pub fn tits_value(n: &RootVector, s: &Subquiver) -> Result<i64> {
    let spec = n.spec();
    let mut q = 0i64;
    for v in &s.vertices {
        spec.parse_vertex(v)?;
        q += n.value(v).pow(2);
    }
    for a in &s.arrows {
        let (src, tgt) = spec.arrow_ends(a)?;
        q -= n.value(&src) * n.value(&tgt);
    }
    Ok(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Homology {
    Finite(usize),
    Infinite,
}

/// The support of a root: its finite part inside the explicit window plus
/// which rays it runs out along, with zeroth and first homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Support {
    pub vertices: Vec<String>,
    /// Ray id to whether the support is infinite along it.
    pub rays: BTreeMap<String, bool>,
    pub h0: Homology,
    pub h1: Homology,
}

impl Support {
    pub fn is_finite(&self) -> bool {
        !self.rays.values().any(|&b| b) && self.h0 != Homology::Infinite
    }
}

fn cycle_rank(spec: &QuiverSpec, vertices: &[String]) -> Result<usize> {
    let set: HashSet<&str> = vertices.iter().map(String::as_str).collect();
    let sub = Subquiver::full(spec, vertices.iter().cloned())?;
    let pieces = connected_pieces(spec, vertices)?.len();
    debug_assert!(sub.vertices.iter().all(|v| set.contains(v.as_str())));
    Ok(sub.arrows.len() + pieces - vertices.len())
}

pub fn support(n: &RootVector) -> Support {
    let spec = n.spec();
    let m = spec.materialize(n.max_explicit_depth() + 1);
    let vertices: Vec<String> = m.vertices.iter().filter(|v| n.value(v) != 0).cloned().collect();
    let rays = spec.rays.iter().map(|r| (r.id.clone(), n.tail(&r.id) != 0)).collect();
    let pieces = connected_pieces(spec, &vertices).expect("materialized vertices");
    let rank = cycle_rank(spec, &vertices).expect("materialized vertices");
    let mut h0 = Homology::Finite(pieces.len());
    let mut h1 = Homology::Finite(rank);
    for piece in &pieces {
        let c = spec.component_of_name(&piece[0]).expect("known vertex");
        if spec.components()[c].multiplicity == Multiplicity::Omega {
            h0 = Homology::Infinite;
            if cycle_rank(spec, piece).expect("materialized vertices") > 0 {
                h1 = Homology::Infinite;
            }
        }
    }
    Support { vertices, rays, h0, h1 }
}

/// The directed limit of the Tits form over finite IC subquivers.
///
/// With finite homology the limit is the value on any finite retraction of
/// the support, here the window reaching one step past every explicit ray
/// label (beyond it each new vertex and arrow cancel). Infinitely many
/// components push it to plus infinity, infinitely many cycles to minus
/// infinity.
pub fn tits_form_limit(n: &RootVector) -> ExtendedInt {
    let s = support(n);
    limit_from_homology(s.h0, s.h1).unwrap_or_else(|| {
        let m = n.spec().materialize(n.max_explicit_depth() + 1);
        let window = Subquiver::full(n.spec(), m.vertices).expect("materialized vertices");
        ExtendedInt::Finite(tits_value(n, &window).expect("materialized vertices"))
    })
}

/// The three cases of the limit by homology; `None` means finite.
pub fn limit_from_homology(h0: Homology, h1: Homology) -> Option<ExtendedInt> {
    match (h0, h1) {
        (Homology::Finite(_), Homology::Finite(_)) => None,
        (Homology::Infinite, Homology::Finite(_)) => Some(ExtendedInt::PlusInfinity),
        (Homology::Finite(_), Homology::Infinite) => Some(ExtendedInt::MinusInfinity),
        (Homology::Infinite, Homology::Infinite) => Some(ExtendedInt::Divergent),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NetEntry {
    pub vertices: Vec<String>,
    pub value: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NetOutcome {
    Stabilized(i64),
    Unstabilized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NetReport {
    pub bound: usize,
    pub entries: Vec<NetEntry>,
    pub outcome: NetOutcome,
    /// Subquivers every enumerated superset of which takes their value.
    pub stabilizing: Vec<Vec<String>>,
}

/// Evaluate the Tits form on every IC subquiver up to `max_vertices` and look
/// for stabilizing subsets.
///
/// A subquiver counts as stabilizing when it contains every explicit vertex,
/// has at most half the bound in vertices, has some strict superset in the
/// net, and every superset in the net agrees with it. Requiring the explicit
/// vertices keeps out sets stranded far down a truncated ray. The net stabilizes when such subquivers exist and
/// agree with each other.
pub fn tits_limit_net_oracle(n: &RootVector, max_vertices: usize) -> Result<NetReport> {
    let s = support(n);
    if s.h0 == Homology::Infinite || s.h1 == Homology::Infinite {
        return Err(Error::InfiniteHomology);
    }
    let spec = n.spec();
    let net = enumerate_ic_subquivers(spec, max_vertices);
    let mut entries = Vec::with_capacity(net.len());
    for sub in &net {
        entries.push(NetEntry { vertices: sub.vertices.clone(), value: tits_value(n, sub)? });
    }
    let sets: Vec<HashSet<&str>> = net.iter().map(|s| s.vertices.iter().map(String::as_str).collect()).collect();
    let mut stabilizing = Vec::new();
    let mut values = Vec::new();
    for (i, small) in sets.iter().enumerate() {
        if 2 * small.len() > max_vertices || !spec.vertices.iter().all(|v| small.contains(v.as_str())) {
            continue;
        }
        let mut strict = false;
        let mut agree = true;
        for (j, big) in sets.iter().enumerate() {
            if i != j && small.is_subset(big) {
                strict = true;
                if entries[j].value != entries[i].value {
                    agree = false;
                    break;
                }
            }
        }
        if strict && agree {
            stabilizing.push(entries[i].vertices.clone());
            values.push(entries[i].value);
        }
    }
    values.sort_unstable();
    values.dedup();
    let outcome = match values.as_slice() {
        [v] => NetOutcome::Stabilized(*v),
        _ => NetOutcome::Unstabilized,
    };
    Ok(NetReport { bound: max_vertices, entries, outcome, stabilizing })
}

/// Outcome of the positive-definiteness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definiteness {
    pub positive_definite: bool,
    /// For a failing spec: a nonzero labelling with non-positive value.
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub labels: Vec<(String, i64)>,
    /// The labelling as a root; absent when it sits on a multiplicity-ω
    /// component, where roots must be constant.
    pub root: Option<RootVector>,
    /// Tits value on the finite support of the labelling.
    pub value: i64,
}

/// The Tits form is positive definite on every finite IC subquiver exactly
/// when each component is of generalized ADE type.
pub fn is_positive_definite(spec: &Arc<QuiverSpec>) -> Definiteness {
    for a in analyze_shapes(spec) {
        if a.class.is_dynkin() {
            continue;
        }
        let labels = a.witness.clone();
        let values: BTreeMap<String, i64> = labels.iter().cloned().collect();
        let sub = Subquiver::full(spec, values.keys().cloned()).expect("witness vertices exist");
        let root = RootVector::new(spec.clone(), values, BTreeMap::new()).ok();
        let get = |v: &str| labels.iter().find(|(w, _)| w == v).map_or(0, |(_, x)| *x);
        let mut value: i64 = labels.iter().map(|(_, x)| x * x).sum();
        for arrow in &sub.arrows {
            let (s, t) = spec.arrow_ends(arrow).expect("witness arrows exist");
            value -= get(&s) * get(&t);
        }
        return Definiteness { positive_definite: false, witness: Some(Witness { labels, root, value }) };
    }
    Definiteness { positive_definite: true, witness: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn spec(b: crate::quiver::QuiverBuilder) -> Arc<QuiverSpec> {
        Arc::new(b.build().unwrap())
    }

    fn dinf() -> Arc<QuiverSpec> {
        spec(
            QuiverSpec::builder("Dinf")
                .vertices(&["k", "a", "b", "m"])
                .arrow("x", "k", "a")
                .arrow("y", "k", "b")
                .arrow("z", "k", "m")
                .ray("r", "m", "", 'o'),
        )
    }

    #[test]
    fn tits_examples() {
        let a2 = spec(QuiverSpec::builder("A2").vertices(&["1", "2"]).arrow("a", "1", "2"));
        let n = RootVector::from_pairs(a2.clone(), &[("1", 1), ("2", 1)], &[]).unwrap();
        let all = Subquiver::full(&a2, ["1", "2"]).unwrap();
        assert_eq!(tits_form_on_subquiver(&n, &n, &all).unwrap(), BigRational::from_integer(1.into()));
        let z = RootVector::zero(a2);
        assert!(tits_form_on_subquiver(&z, &z, &all).unwrap().is_zero());
        let d4 = spec(
            QuiverSpec::builder("D4")
                .vertices(&["c", "x", "y", "z"])
                .arrow("a", "x", "c")
                .arrow("b", "y", "c")
                .arrow("d", "z", "c"),
        );
        let n = RootVector::from_pairs(d4.clone(), &[("c", 2), ("x", 1), ("y", 1), ("z", 1)], &[]).unwrap();
        let all = Subquiver::full(&d4, ["c", "x", "y", "z"]).unwrap();
        assert_eq!(tits_value(&n, &all).unwrap(), 1);
    }

    #[test]
    fn limits_on_dinf() {
        let s = dinf();
        let ones = RootVector::from_pairs(s.clone(), &[("k", 1), ("a", 1), ("b", 1), ("m", 1)], &[("r", 1)]).unwrap();
        assert_eq!(tits_form_limit(&ones), ExtendedInt::Finite(1));
        let sup = support(&ones);
        assert_eq!((sup.h0, sup.h1), (Homology::Finite(1), Homology::Finite(0)));
        // ...,1,1,2,2,2,1,1 read from the leaves outward
        let pattern = RootVector::from_pairs(
            s.clone(),
            &[("a", 1), ("b", 1), ("k", 2), ("m", 2), ("r#1", 2), ("r#2", 1), ("r#3", 1)],
            &[("r", 0)],
        )
        .unwrap();
        assert_eq!(tits_form_limit(&pattern), ExtendedInt::Finite(1));
        let net = tits_limit_net_oracle(&ones, 10).unwrap();
        assert_eq!(net.outcome, NetOutcome::Stabilized(1));
    }

    #[test]
    fn omega_trichotomy() {
        let a1 = spec(QuiverSpec::builder("w").vertex("p").omega("p"));
        let n = RootVector::from_pairs(a1, &[("p", 1)], &[]).unwrap();
        assert_eq!(tits_form_limit(&n), ExtendedInt::PlusInfinity);
        assert_eq!(tits_limit_net_oracle(&n, 4).unwrap_err().code(), "infinite-homology");
        let cyc =
            spec(QuiverSpec::builder("c").vertices(&["p", "q"]).arrow("a", "p", "q").arrow("b", "q", "p").omega("p"));
        let n = RootVector::from_pairs(cyc, &[("p", 1), ("q", 1)], &[]).unwrap();
        assert_eq!(tits_form_limit(&n), ExtendedInt::Divergent);
        assert_eq!(limit_from_homology(Homology::Finite(1), Homology::Infinite), Some(ExtendedInt::MinusInfinity));
    }

    #[test]
    fn definiteness_witnesses() {
        let c3 = spec(
            QuiverSpec::builder("C3")
                .vertices(&["1", "2", "3"])
                .arrow("a", "1", "2")
                .arrow("b", "2", "3")
                .arrow("c", "3", "1"),
        );
        let d = is_positive_definite(&c3);
        assert!(!d.positive_definite);
        let w = d.witness.unwrap();
        assert_eq!(w.value, 0);
        assert!(tits_form_limit(w.root.as_ref().unwrap()).is_nonpositive());
        assert!(is_positive_definite(&dinf()).positive_definite);
    }
}
