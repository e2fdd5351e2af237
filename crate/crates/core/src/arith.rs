//! Exact friable-integer oracle: segmented divide-out sieve for `omega(n)`
//! and `P^+(n)`, smooth-number enumeration, twisted sums, local counts, and
//! partial sums `M(x; f_z)`.
//!
//! Blocks of 2^22 integers are processed by independent workers and merged
//! in block order, so identical inputs give bit-identical tables whatever
//! the worker count.

use num_complex::Complex64;
use rayon::prelude::*;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::primes::primes_up_to;

const BLOCK: u64 = 1 << 22;
/// Magic header of the smallest-prime-factor cache file.
pub const CACHE_MAGIC: &[u8; 5] = b"FRKT1";

/// How a `FriableTable` was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SieveMode {
    SpfSieve,
    SmoothEnum,
}

/// `omega(n)` for every `n <= x_max` (no friability threshold).
#[derive(Debug, Clone)]
pub struct OmegaProfile {
    pub x_max: u64,
    pub omega: Vec<u8>,
}

/// Per-block divide-out pass: returns `(omega, max_prime_factor)` for the
/// block `[lo, hi)`.
fn sieve_block(lo: u64, hi: u64, small_primes: &[u64]) -> (Vec<u8>, Vec<u64>) {
    let len = (hi - lo) as usize;
    let mut rem: Vec<u64> = (lo..hi).collect();
    let mut omega = vec![0u8; len];
    let mut maxpf = vec![0u64; len];
    for &p in small_primes {
        if p * p >= hi {
            break;
        }
        let mut m = lo.div_ceil(p) * p;
        if m < 2 * p {
            m = 2 * p; // skip n = p itself; handled by the leftover pass
        }
        while m < hi {
            let i = (m - lo) as usize;
            omega[i] += 1;
            maxpf[i] = p;
            let mut r = rem[i];
            while r.is_multiple_of(p) {
                r /= p;
            }
            rem[i] = r;
            m += p;
        }
    }
    for i in 0..len {
        let n = lo + i as u64;
        if n < 2 {
            maxpf[i] = if n == 1 { 1 } else { 0 };
            continue;
        }
        let r = rem[i];
        if r > 1 {
            omega[i] += 1;
            maxpf[i] = maxpf[i].max(r);
        }
    }
    (omega, maxpf)
}

fn small_primes_for(x: u64) -> Vec<u64> {
    primes_up_to((x as f64).sqrt() as u64 + 2)
}

impl OmegaProfile {
    /// `omega(n)` for all `n <= x` by the segmented divide-out sieve.
    pub fn build(x: u64) -> Result<OmegaProfile> {
        if x < 1 {
            return Err(Error::Domain("x must be at least 1".into()));
        }
        let sp = small_primes_for(x);
        let blocks: Vec<u64> = (0..=(x / BLOCK)).collect();
        let parts: Vec<Vec<u8>> = blocks
            .par_iter()
            .map(|&b| {
                let lo = b * BLOCK;
                let hi = ((b + 1) * BLOCK).min(x + 1);
                sieve_block(lo, hi, &sp).0
            })
            .collect();
        let mut omega = Vec::with_capacity(x as usize + 1);
        for part in parts {
            omega.extend_from_slice(&part);
        }
        Ok(OmegaProfile { x_max: x, omega })
    }

    /// `M(x; f_z) = sum_{n <= x} z^{omega(n)}`.
    pub fn partial_m(&self, x: f64, z: Complex64) -> Result<Complex64> {
        if !(x >= 1.0) {
            return Err(Error::Domain("M(x; f) needs x >= 1".into()));
        }
        let cut = (x.floor() as u64).min(self.x_max);
        let mut hist = [0u64; 64];
        for &o in &self.omega[1..=cut as usize] {
            hist[o as usize] += 1;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        let mut zp = Complex64::new(1.0, 0.0);
        for &count in hist.iter() {
            acc += zp * count as f64;
            zp *= z;
        }
        Ok(acc)
    }
}

/// Sieve output at a friability threshold `y`: flags and `omega(n)`.
#[derive(Debug, Clone)]
pub struct FriableTable {
    pub y: f64,
    pub x_max: u64,
    pub mode: SieveMode,
    /// `omega(n)` indexed by n (SPF mode; empty for SMOOTH_ENUM).
    pub omega: Vec<u8>,
    /// Friability bitset indexed by n (SPF mode; empty for SMOOTH_ENUM).
    friable_bits: Vec<u64>,
    /// Sorted friable `(n, omega)` list (SMOOTH_ENUM mode).
    pub friable_list: Vec<(u64, u8)>,
}

/// Builds the table for `n <= x` at threshold `y` in the requested mode.
pub fn build_table(x: u64, y: f64, mode: SieveMode) -> Result<FriableTable> {
    if !(y >= 2.0) {
        return Err(Error::Domain(format!("y must be >= 2, got {y}")));
    }
    if x < 1 {
        return Err(Error::Domain("x must be at least 1".into()));
    }
    match mode {
        SieveMode::SpfSieve => {
            if x > (1 << 34) {
                return Err(Error::Resource(format!(
                    "x = {x} exceeds the flat-table budget; use SMOOTH_ENUM"
                )));
            }
            let mut tabs = build_tables_multi_y(x, &[y])?;
            Ok(tabs.pop().unwrap())
        }
        SieveMode::SmoothEnum => {
            let mut primes = primes_up_to(y.floor() as u64);
            primes.reverse();
            let mut list: Vec<(u64, u8)> = Vec::new();
            // Depth-first over descending primes; each call may multiply by
            // any power of a strictly smaller-index (larger) prime than used
            // at the previous level, so every smooth n appears once.
            fn rec(primes: &[u64], start: usize, prod: u64, om: u8, x: u64, out: &mut Vec<(u64, u8)>) {
                out.push((prod, om));
                for j in start..primes.len() {
                    let p = primes[j];
                    let mut q = prod.saturating_mul(p);
                    while q <= x {
                        rec(primes, j + 1, q, om + 1, x, out);
                        q = q.saturating_mul(p);
                    }
                }
            }
            rec(&primes, 0, 1, 0, x, &mut list);
            list.sort_unstable();
            Ok(FriableTable {
                y,
                x_max: x,
                mode,
                omega: Vec::new(),
                friable_bits: Vec::new(),
                friable_list: list,
            })
        }
    }
}

/// One sieve pass serving several thresholds at once.
pub fn build_tables_multi_y(x: u64, ys: &[f64]) -> Result<Vec<FriableTable>> {
    for &y in ys {
        if !(y >= 2.0) {
            return Err(Error::Domain(format!("y must be >= 2, got {y}")));
        }
    }
    let sp = small_primes_for(x);
    let blocks: Vec<u64> = (0..=(x / BLOCK)).collect();
    let parts: Vec<(Vec<u8>, Vec<u64>)> = blocks
        .par_iter()
        .map(|&b| {
            let lo = b * BLOCK;
            let hi = ((b + 1) * BLOCK).min(x + 1);
            sieve_block(lo, hi, &sp)
        })
        .collect();
    let n_words = (x as usize + 1).div_ceil(64);
    let mut omega = Vec::with_capacity(x as usize + 1);
    let mut bits = vec![vec![0u64; n_words]; ys.len()];
    let mut n = 0u64;
    for (om, maxpf) in parts {
        for (i, &o) in om.iter().enumerate() {
            let mp = maxpf[i];
            for (t, &y) in ys.iter().enumerate() {
                if n >= 1 && mp as f64 <= y {
                    bits[t][(n / 64) as usize] |= 1u64 << (n % 64);
                }
            }
            let _ = o;
            n += 1;
        }
        omega.extend_from_slice(&om);
    }
    Ok(ys
        .iter()
        .zip(bits)
        .map(|(&y, friable_bits)| FriableTable {
            y,
            x_max: x,
            mode: SieveMode::SpfSieve,
            omega: omega.clone(),
            friable_bits,
            friable_list: Vec::new(),
        })
        .collect())
}

impl FriableTable {
    pub fn is_friable(&self, n: u64) -> bool {
        if n < 1 || n > self.x_max {
            return false;
        }
        match self.mode {
            SieveMode::SpfSieve => {
                self.friable_bits[(n / 64) as usize] >> (n % 64) & 1 == 1
            }
            SieveMode::SmoothEnum => self.friable_list.binary_search_by_key(&n, |e| e.0).is_ok(),
        }
    }

    /// `Psi(t, y)` for any `t <= x_max`: exact count of friable `n <= t`.
    pub fn psi_count_upto(&self, t: f64) -> u64 {
        let cut = (t.floor().max(0.0) as u64).min(self.x_max);
        match self.mode {
            SieveMode::SpfSieve => {
                let full_words = ((cut + 1) / 64) as usize;
                let mut acc: u64 = self.friable_bits[..full_words]
                    .iter()
                    .map(|w| w.count_ones() as u64)
                    .sum();
                let rem_bits = (cut + 1) % 64;
                if rem_bits > 0 {
                    let mask = (1u64 << rem_bits) - 1;
                    acc += (self.friable_bits[full_words] & mask).count_ones() as u64;
                }
                acc
            }
            SieveMode::SmoothEnum => match self.friable_list.binary_search_by_key(&cut, |e| e.0) {
                Ok(i) => i as u64 + 1,
                Err(i) => i as u64,
            },
        }
    }

    /// Histogram of `omega` over the friable set (index k = count of n with
    /// `omega(n) = k`).
    pub fn omega_histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; 64];
        match self.mode {
            SieveMode::SpfSieve => {
                for n in 1..=self.x_max {
                    if self.is_friable(n) {
                        hist[self.omega[n as usize] as usize] += 1;
                    }
                }
            }
            SieveMode::SmoothEnum => {
                for &(_, o) in &self.friable_list {
                    hist[o as usize] += 1;
                }
            }
        }
        while hist.len() > 1 && *hist.last().unwrap() == 0 {
            hist.pop();
        }
        hist
    }

    /// Sum of `omega(n)` over the friable set (exact).
    pub fn omega_sum(&self) -> u64 {
        self.omega_histogram()
            .iter()
            .enumerate()
            .map(|(k, &c)| k as u64 * c)
            .sum()
    }
}

/// Summary statistics of a table.
#[derive(Debug, Clone)]
pub struct FriableStats {
    pub psi: u64,
    /// `sum z^{omega(n)}` over the friable set (equals `psi` at z = 1).
    pub psi_f: Complex64,
    /// Count with `omega(n) = k`, when a k was requested.
    pub psi_k: Option<u64>,
    pub mean: f64,
    pub var: f64,
    pub histogram: Vec<u64>,
}

/// Counts, twisted sums, local counts and moments of `omega` over the
/// friable set.
pub fn friable_stats(
    tab: &FriableTable,
    z: Option<Complex64>,
    k: Option<u32>,
) -> Result<FriableStats> {
    if let Some(zv) = z {
        if zv.norm() > 8.0 {
            return Err(Error::Domain(format!(
                "|z| = {} too large for overflow-safe twisted sums (cap 8)",
                zv.norm()
            )));
        }
    }
    let hist = tab.omega_histogram();
    let psi: u64 = hist.iter().sum();
    if psi == 0 {
        return Err(Error::Domain("empty friable set".into()));
    }
    let mut psi_f = Complex64::new(psi as f64, 0.0);
    if let Some(zv) = z {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut zp = Complex64::new(1.0, 0.0);
        for &c in &hist {
            acc += zp * c as f64;
            zp *= zv;
        }
        psi_f = acc;
    }
    let psi_k = k.map(|kk| hist.get(kk as usize).copied().unwrap_or(0));
    let mean = hist
        .iter()
        .enumerate()
        .map(|(j, &c)| j as f64 * c as f64)
        .sum::<f64>()
        / psi as f64;
    let var = hist
        .iter()
        .enumerate()
        .map(|(j, &c)| (j as f64 - mean).powi(2) * c as f64)
        .sum::<f64>()
        / psi as f64;
    Ok(FriableStats {
        psi,
        psi_f,
        psi_k,
        mean,
        var,
        histogram: hist,
    })
}

/// Kolmogorov distance between the empirical law of `(omega - mu)/sigma`
/// over the friable set and the standard normal. With `lattice` set, the
/// comparison runs over half-integer thresholds (the meaningful comparison
/// for an integer-valued variable when `sigma` is of order 1); without it,
/// the raw sup over jump points, which is dominated by the mode's jump.
pub fn kolmogorov_vs_normal(histogram: &[u64], mu: f64, sigma: f64, lattice: bool) -> f64 {
    let total: u64 = histogram.iter().sum();
    let mut cum = 0u64;
    let mut dist = 0.0f64;
    for (k, &c) in histogram.iter().enumerate() {
        let before = cum as f64 / total as f64;
        cum += c;
        let after = cum as f64 / total as f64;
        if lattice {
            let phi = crate::specfun::normal_cdf((k as f64 + 0.5 - mu) / sigma);
            dist = dist.max((after - phi).abs());
        } else {
            let phi = crate::specfun::normal_cdf((k as f64 - mu) / sigma);
            dist = dist.max((after - phi).abs()).max((before - phi).abs());
        }
    }
    dist
}

/// Empirical tail frequency `P(|omega - mu| > v sigma)` over the friable set.
pub fn tail_frequency(histogram: &[u64], mu: f64, sigma: f64, v: f64) -> f64 {
    let total: u64 = histogram.iter().sum();
    let mut tail = 0u64;
    for (k, &c) in histogram.iter().enumerate() {
        if (k as f64 - mu).abs() > v * sigma {
            tail += c;
        }
    }
    tail as f64 / total as f64
}

/// Writes the smallest-prime-factor cache: magic, little-endian u64 x_max,
/// then one little-endian u32 per n (spf(0) = 0, spf(1) = 1, spf(p) = p).
pub fn write_spf_cache<P: AsRef<Path>>(path: P, x: u64) -> Result<()> {
    if x > u32::MAX as u64 {
        return Err(Error::Resource(
            "spf cache stores u32 records; x exceeds u32::MAX".into(),
        ));
    }
    let sp = small_primes_for(x);
    let mut spf: Vec<u32> = vec![0; x as usize + 1];
    if x >= 1 {
        spf[1] = 1;
    }
    for b in 0..=(x / BLOCK) {
        let lo = b * BLOCK;
        let hi = ((b + 1) * BLOCK).min(x + 1);
        for &p in &sp {
            if p * p >= hi {
                break;
            }
            let mut m = (lo.div_ceil(p) * p).max(p * p);
            while m < hi {
                if spf[m as usize] == 0 {
                    spf[m as usize] = p as u32;
                }
                m += p;
            }
        }
        for n in lo.max(2)..hi {
            if spf[n as usize] == 0 {
                spf[n as usize] = n as u32;
            }
        }
    }
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    f.write_all(CACHE_MAGIC)?;
    f.write_all(&x.to_le_bytes())?;
    for v in spf {
        f.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

/// Reads a smallest-prime-factor cache file.
pub fn read_spf_cache<P: AsRef<Path>>(path: P) -> Result<Vec<u32>> {
    let mut f = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut magic = [0u8; 5];
    f.read_exact(&mut magic)?;
    if &magic != CACHE_MAGIC {
        return Err(Error::Resource("bad cache magic".into()));
    }
    let mut xb = [0u8; 8];
    f.read_exact(&mut xb)?;
    let x = u64::from_le_bytes(xb);
    let mut out = vec![0u32; x as usize + 1];
    let mut buf = vec![0u8; 4 * (x as usize + 1)];
    f.read_exact(&mut buf)?;
    for (i, chunk) in buf.chunks_exact(4).enumerate() {
        out[i] = u32::from_le_bytes(chunk.try_into().unwrap());
    }
    Ok(out)
}

/// Rebuilds a friable table from a loaded spf array by chain division.
pub fn table_from_spf(spf: &[u32], y: f64) -> Result<FriableTable> {
    let x = spf.len() as u64 - 1;
    if !(y >= 2.0) {
        return Err(Error::Domain(format!("y must be >= 2, got {y}")));
    }
    let n_words = (x as usize + 1).div_ceil(64);
    let mut omega = vec![0u8; x as usize + 1];
    let mut bits = vec![0u64; n_words];
    for n in 1..=x {
        let mut m = n;
        let mut om = 0u8;
        let mut maxp = 1u64;
        while m > 1 {
            let p = spf[m as usize] as u64;
            om += 1;
            maxp = maxp.max(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        omega[n as usize] = om;
        if maxp as f64 <= y {
            bits[(n / 64) as usize] |= 1u64 << (n % 64);
        }
    }
    Ok(FriableTable {
        y,
        x_max: x,
        mode: SieveMode::SpfSieve,
        omega,
        friable_bits: bits,
        friable_list: Vec::new(),
    })
}
