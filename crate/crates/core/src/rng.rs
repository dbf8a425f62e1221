//! Counter-based splittable random numbers.
//!
//! Streams are keyed by (master seed, experiment label, batch index), so
//! parallel workers draw from independent deterministic substreams without
//! coordination.

/// SplitMix64 stream with a keyed starting state.
#[derive(Debug, Clone)]
pub struct SplitRng {
    state: u64,
}

fn splitmix(z: &mut u64) -> u64 {
    *z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut x = *z;
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn fold_str(label: &str) -> u64 {
    // FNV-1a.
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

impl SplitRng {
    pub fn new(master_seed: u64, experiment: &str, batch: u64) -> Self {
        let mut z = master_seed;
        let a = splitmix(&mut z);
        let mut z2 = a ^ fold_str(experiment);
        let b = splitmix(&mut z2);
        let mut z3 = b ^ batch.wrapping_mul(0xd6e8_feb8_6659_fd93);
        let c = splitmix(&mut z3);
        SplitRng { state: c }
    }

    pub fn next_u64(&mut self) -> u64 {
        splitmix(&mut self.state)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [-1, 1).
    pub fn next_signed(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }

    /// Uniform point in the closed unit disk (rejection sampling).
    pub fn next_unit_disk(&mut self) -> [f64; 2] {
        loop {
            let x = self.next_signed();
            let y = self.next_signed();
            if x * x + y * y <= 1.0 {
                return [x, y];
            }
        }
    }

    /// Standard normal via Box-Muller.
    pub fn next_normal(&mut self) -> f64 {
        let u = self.next_f64().max(1e-300);
        let v = self.next_f64();
        (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
    }
}
