//! Named constructions used by the corpus and the tests.

use super::{FiniteGroupoid, GroupoidSpec};

fn build(
    name: &str,
    objects: Vec<String>,
    arrows: Vec<(String, usize, usize)>,
    units: Vec<usize>,
    mul: impl Fn(usize, usize) -> Option<usize>,
) -> FiniteGroupoid {
    let n = arrows.len();
    let mut compose = Vec::new();
    for g in 0..n {
        for h in 0..n {
            if let Some(k) = mul(g, h) {
                compose.push(((arrows[g].0.clone(), arrows[h].0.clone()), arrows[k].0.clone()));
            }
        }
    }
    let spec = GroupoidSpec {
        name: name.to_string(),
        units: units
            .iter()
            .enumerate()
            .map(|(x, &u)| (objects[x].clone(), arrows[u].0.clone()))
            .collect(),
        arrows: arrows
            .iter()
            .map(|(id, s, t)| (id.clone(), objects[*s].clone(), objects[*t].clone()))
            .collect(),
        objects,
        compose,
        inverse: None,
    };
    FiniteGroupoid::new(spec).expect("named construction is a groupoid")
}

pub fn point() -> FiniteGroupoid {
    build("point", vec!["*".into()], vec![("e".into(), 0, 0)], vec![0], |_, _| {
        Some(0)
    })
}

/// The pair groupoid on `n` objects: exactly one arrow between any two.
pub fn pair(n: usize) -> FiniteGroupoid {
    let objects = (0..n).map(|i| i.to_string()).collect();
    // arrow s -> t has index t * n + s
    let arrows = (0..n * n)
        .map(|k| (format!("p{}_{}", k / n, k % n), k % n, k / n))
        .collect();
    let units = (0..n).map(|x| x * n + x).collect();
    build(&format!("pair{n}"), objects, arrows, units, |g, h| {
        let (gt, gs, ht, hs) = (g / n, g % n, h / n, h % n);
        (gs == ht).then_some(gt * n + hs)
    })
}

/// One-object groupoid of a finite group given by its multiplication.
pub fn delooping(
    name: &str,
    elements: &[String],
    identity: usize,
    mul: impl Fn(usize, usize) -> usize,
) -> FiniteGroupoid {
    let arrows = elements.iter().map(|e| (e.clone(), 0, 0)).collect();
    build(name, vec!["*".into()], arrows, vec![identity], |g, h| Some(mul(g, h)))
}

pub fn cyclic_delooping(n: usize) -> FiniteGroupoid {
    let el: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
    delooping(&format!("bz{n}"), &el, 0, |a, b| (a + b) % n)
}

const S3: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
const S3_NAMES: [&str; 6] = ["e", "t01", "t02", "t12", "c012", "c021"];

/// Permutation images of the elements of `symmetric_group_s3`, in order.
pub fn s3_permutations() -> [[usize; 3]; 6] {
    S3
}

pub fn symmetric_group_s3() -> FiniteGroupoid {
    let el: Vec<String> = S3_NAMES.iter().map(|s| s.to_string()).collect();
    delooping("bs3", &el, 0, |a, b| {
        let p = [S3[a][S3[b][0]], S3[a][S3[b][1]], S3[a][S3[b][2]]];
        S3.iter().position(|q| *q == p).expect("closed")
    })
}

/// Action groupoid of a group (`elements`, `mul`) on a finite set through
/// `act(g, x)`. The arrow `(g, x)` goes from `x` to `g·x`.
pub fn action_groupoid(
    name: &str,
    elements: &[String],
    identity: usize,
    mul: impl Fn(usize, usize) -> usize,
    points: &[String],
    act: impl Fn(usize, usize) -> usize,
) -> FiniteGroupoid {
    let np = points.len();
    let arrows: Vec<(String, usize, usize)> = (0..elements.len() * np)
        .map(|k| {
            let (g, x) = (k / np, k % np);
            (format!("{}@{}", elements[g], points[x]), x, act(g, x))
        })
        .collect();
    let units = (0..np).map(|x| identity * np + x).collect();
    build(name, points.to_vec(), arrows, units, |a, b| {
        let (g, x) = (a / np, a % np);
        let (h, y) = (b / np, b % np);
        (act(h, y) == x).then(|| mul(g, h) * np + y)
    })
}

/// Z/2 acting on two points by the swap.
pub fn swap_action() -> FiniteGroupoid {
    let el = ["e".to_string(), "s".to_string()];
    let pts = ["a".to_string(), "b".to_string()];
    action_groupoid("swap", &el, 0, |g, h| g ^ h, &pts, |g, x| x ^ g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(point().num_arrows(), 1);
        assert_eq!(pair(4).num_arrows(), 16);
        assert_eq!(symmetric_group_s3().num_arrows(), 6);
        let sw = swap_action();
        assert_eq!(sw.num_arrows(), 4);
        assert!(sw.is_principal());
        assert_eq!(sw.num_orbits(), 1);
    }

    #[test]
    fn s3_is_nonabelian() {
        let g = symmetric_group_s3();
        let (a, b) = (g.arrow_id("t01").unwrap(), g.arrow_id("t12").unwrap());
        assert_ne!(g.mul(a, b), g.mul(b, a));
    }
}
