//! Cyclotomic fields ℚ[x]/Φ_n with cached reduction tables.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

/// Data shared by every number of a given conductor.
#[derive(Debug)]
pub(crate) struct Field {
    pub n: u32,
    pub deg: usize,
    /// `pow[e]` is x^e reduced mod Φ_n, as sparse (index, coefficient) pairs, for e in 0..n.
    pub pow: Vec<Vec<(u32, i64)>>,
    /// Largest absolute value in `pow`; bounds intermediate growth in the i128 path.
    pub max_pow_coef: i64,
}

type Table = RwLock<HashMap<u32, &'static Field>>;

fn table() -> &'static Table {
    static T: OnceLock<Table> = OnceLock::new();
    T.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Fields are never freed; there are only a few dozen conductors in any run.
pub(crate) fn field(n: u32) -> &'static Field {
    assert!(n >= 1, "conductor must be positive");
    if let Some(f) = table().read().unwrap().get(&n) {
        return f;
    }
    let phi = cyclotomic_poly(n);
    let built = Box::leak(Box::new(Field::new(n, phi)));
    let mut w = table().write().unwrap();
    *w.entry(n).or_insert(built)
}

impl Field {
    fn new(n: u32, phi: Vec<i64>) -> Field {
        let deg = phi.len() - 1;
        let mut pow = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        let mut max_pow_coef = 1;
        for _ in 0..n {
            let sparse: Vec<(u32, i64)> = cur
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(i, c)| (i as u32, *c))
                .collect();
            for (_, c) in &sparse {
                max_pow_coef = max_pow_coef.max(c.abs());
            }
            pow.push(sparse);
            // multiply by x and reduce the overflow term with Φ_n
            let top = cur[deg - 1];
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..deg {
                    cur[i] -= top * phi[i];
                }
            }
        }
        Field { n, deg, pow, max_pow_coef }
    }
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Φ_n by the recursion x^n − 1 = Π_{d | n} Φ_d.
pub(crate) fn cyclotomic_poly(n: u32) -> Vec<i64> {
    static MEMO: OnceLock<RwLock<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = memo.read().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d < n {
            num = exact_div(&num, &cyclotomic_poly(d));
        }
    }
    memo.write().unwrap().insert(n, num.clone());
    num
}

/// Division by a monic polynomial that is known to be exact.
fn exact_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let dq = a.len() - 1 - db;
    let mut q = vec![0i64; dq + 1];
    for k in (0..=dq).rev() {
        let c = rem[k + db];
        q[k] = c;
        if c != 0 {
            for (i, bc) in b.iter().enumerate() {
                rem[k + i] -= c * bc;
            }
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0));
    q
}

pub(crate) fn totient(n: u32) -> usize {
    cyclotomic_poly(n).len() - 1
}
