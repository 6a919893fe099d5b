//! Brute-force checks written separately from the library, for use as test
//! oracles. Graphs are taken as plain adjacency matrices.

#![allow(dead_code)]

use cyclemod::Graph;

pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Connected after deleting `gone`; an empty remainder counts as connected.
pub fn connected_without(a: &[Vec<bool>], gone: &[usize]) -> bool {
    let n = a.len();
    let alive: Vec<bool> = (0..n).map(|v| !gone.contains(&v)).collect();
    let Some(s) = (0..n).find(|&v| alive[v]) else {
        return true;
    };
    let mut seen = vec![false; n];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if a[v][w] && alive[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    (0..n).all(|v| !alive[v] || seen[v])
}

/// More than `t` vertices and no vertex cut of size below `t`.
pub fn t_connected(a: &[Vec<bool>], t: usize) -> bool {
    let n = a.len();
    if n <= t {
        return false;
    }
    let mut set = Vec::new();
    fn rec(a: &[Vec<bool>], start: usize, left: usize, set: &mut Vec<usize>) -> bool {
        if !connected_without(a, set) {
            return false;
        }
        if left == 0 {
            return true;
        }
        for v in start..a.len() {
            set.push(v);
            let ok = rec(a, v + 1, left - 1, set);
            set.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    rec(a, 0, t - 1, &mut set)
}

pub fn two_connected(a: &[Vec<bool>]) -> bool {
    t_connected(a, 2)
}

/// G + xy is 2-connected.
pub fn rooted_two_connected(a: &[Vec<bool>], x: usize, y: usize) -> bool {
    let mut b = a.to_vec();
    b[x][y] = true;
    b[y][x] = true;
    two_connected(&b)
}

pub fn bipartite(a: &[Vec<bool>]) -> bool {
    let n = a.len();
    let mut col = vec![usize::MAX; n];
    for s in 0..n {
        if col[s] != usize::MAX {
            continue;
        }
        col[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if a[v][w] {
                    if col[w] == usize::MAX {
                        col[w] = 1 - col[v];
                        stack.push(w);
                    } else if col[w] == col[v] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn degree(a: &[Vec<bool>], v: usize) -> usize {
    a[v].iter().filter(|&&b| b).count()
}

fn distinct(vs: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    vs.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

/// Number of edges of a simple x-y path, or `None` if it is not one.
pub fn path_len(a: &[Vec<bool>], p: &[usize], x: usize, y: usize) -> Option<usize> {
    if p.len() < 2 || p[0] != x || *p.last()? != y || !distinct(p, a.len()) {
        return None;
    }
    p.windows(2).all(|w| a[w[0]][w[1]]).then_some(p.len() - 1)
}

/// Length of a simple cycle given by its vertex sequence.
pub fn cycle_len(a: &[Vec<bool>], c: &[usize]) -> Option<usize> {
    if c.len() < 3 || !distinct(c, a.len()) {
        return None;
    }
    let closed = c.windows(2).all(|w| a[w[0]][w[1]]) && a[c[c.len() - 1]][c[0]];
    closed.then_some(c.len())
}

fn diffs(l: &[usize]) -> Vec<isize> {
    l.windows(2).map(|w| w[1] as isize - w[0] as isize).collect()
}

pub fn is_consecutive(l: &[usize]) -> bool {
    diffs(l).iter().all(|&d| d == 1)
}

pub fn is_length_condition(l: &[usize]) -> bool {
    diffs(l).iter().all(|&d| d == 2)
}

/// Steps of 2 except exactly one step of 1.
pub fn is_semi_length(l: &[usize]) -> bool {
    let d = diffs(l);
    d.iter().filter(|&&x| x == 1).count() == 1 && d.iter().all(|&x| x == 1 || x == 2)
}

/// Induced, odd, non-separating, and a triangle or every non-cut vertex of
/// G - C has at most two neighbours on C, two only when they sit at distance
/// two along C.
pub fn good_odd_cycle(a: &[Vec<bool>], c: &[usize]) -> Result<(), String> {
    let len = cycle_len(a, c).ok_or("not a cycle")?;
    if len % 2 == 0 {
        return Err("even".into());
    }
    for i in 0..len {
        for j in i + 2..len {
            if !(i == 0 && j == len - 1) && a[c[i]][c[j]] {
                return Err("chord".into());
            }
        }
    }
    if !connected_without(a, c) {
        return Err("separating".into());
    }
    if len == 3 {
        return Ok(());
    }
    let pos = |v: usize| c.iter().position(|&w| w == v);
    for v in 0..a.len() {
        if pos(v).is_some() {
            continue;
        }
        let mut gone = c.to_vec();
        gone.push(v);
        if !connected_without(a, &gone) {
            continue;
        }
        let on: Vec<usize> = (0..a.len()).filter(|&w| a[v][w]).filter_map(pos).collect();
        match on.len() {
            0 | 1 => {}
            2 => {
                let d = (on[1] + len - on[0]) % len;
                if d != 2 && d != len - 2 {
                    return Err(format!("vertex {v} sees the cycle at distance {d}"));
                }
            }
            _ => return Err(format!("vertex {v} has {} neighbours on the cycle", on.len())),
        }
    }
    Ok(())
}
