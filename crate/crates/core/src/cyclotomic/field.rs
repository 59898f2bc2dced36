//! Per-order tables for Q(ζ_M): the cyclotomic polynomial and the reduction of
//! every power ζ^e, 0 ≤ e < M, to power-basis coordinates.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_integer::Integer;

pub(crate) struct FieldTables {
    pub degree: usize,
    /// `powers[e]` holds ζ^e in the power basis, stored sparsely.
    pub powers: Vec<Vec<(usize, i64)>>,
}

thread_local! {
    static POLYS: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
    static TABLES: RefCell<HashMap<u32, Rc<FieldTables>>> = RefCell::new(HashMap::new());
}

pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Φ_n by exact division of t^n − 1 by Φ_d for every proper divisor d.
pub fn cyclotomic_polynomial(n: u32) -> Rc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = POLYS.with(|m| m.borrow().get(&n).cloned()) {
        return p;
    }
    let mut quotient = vec![0i64; n as usize + 1];
    quotient[0] = -1;
    quotient[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let divisor = cyclotomic_polynomial(d);
            quotient = divide_monic(&quotient, &divisor);
        }
    }
    let p = Rc::new(quotient);
    POLYS.with(|m| m.borrow_mut().insert(n, p.clone()));
    p
}

fn divide_monic(dividend: &[i64], divisor: &[i64]) -> Vec<i64> {
    let dd = divisor.len() - 1;
    let mut rem = dividend.to_vec();
    let qlen = dividend.len() - dd;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in divisor.iter().enumerate() {
                rem[i + j] = rem[i + j]
                    .checked_sub(c.checked_mul(dj).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    q
}

pub(crate) fn tables(order: u32) -> Rc<FieldTables> {
    if let Some(t) = TABLES.with(|m| m.borrow().get(&order).cloned()) {
        return t;
    }
    let modulus = cyclotomic_polynomial(order).as_ref().clone();
    let degree = modulus.len() - 1;
    let mut dense: Vec<Vec<i64>> = Vec::with_capacity(order as usize);
    for e in 0..order as usize {
        if e < degree {
            let mut v = vec![0i64; degree];
            v[e] = 1;
            dense.push(v);
        } else {
            // t^e = t · t^(e-1), then fold the t^degree term back with Φ.
            let prev = &dense[e - 1];
            let top = prev[degree - 1];
            let mut v = vec![0i64; degree];
            for i in 1..degree {
                v[i] = prev[i - 1];
            }
            if top != 0 {
                for i in 0..degree {
                    v[i] = v[i]
                        .checked_sub(top.checked_mul(modulus[i]).expect("power table overflow"))
                        .expect("power table overflow");
                }
            }
            dense.push(v);
        }
    }
    let powers = dense
        .into_iter()
        .map(|v| v.into_iter().enumerate().filter(|&(_, c)| c != 0).collect())
        .collect();
    let t = Rc::new(FieldTables { degree, powers });
    TABLES.with(|m| m.borrow_mut().insert(order, t.clone()));
    t
}
