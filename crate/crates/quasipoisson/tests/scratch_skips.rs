use quasipoisson::group::gauss_decompose;
use quasipoisson::linalg::{self, Mat};
use quasipoisson::rational::{int, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn sample(n: usize, seed: u64, index: u64, stream_v: u8, pos_v: u8, entry_v: u8) -> Mat<Rat> {
    let mut rng = match stream_v {
        0 => {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            r.set_stream(index.wrapping_add(1));
            r
        }
        1 => {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            r.set_stream(splitmix(index));
            r
        }
        _ => ChaCha8Rng::seed_from_u64(splitmix(seed ^ splitmix(index))),
    };
    let mut m = linalg::identity::<Rat>(n);
    for _ in 0..8 {
        let (i, j) = match pos_v {
            0 => {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                (i, j)
            }
            _ => loop {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                if i != j {
                    break (i, j);
                }
            },
        };
        let c = match entry_v {
            0 => {
                let v: i64 = rng.gen_range(1..=5);
                if rng.gen_bool(0.5) {
                    int(v)
                } else {
                    int(-v)
                }
            }
            _ => loop {
                let v: i64 = rng.gen_range(-5..=5);
                if v != 0 {
                    break int(v);
                }
            },
        };
        for r in 0..n {
            let add = &m[r][i] * &c;
            m[r][j] = &m[r][j] + &add;
        }
    }
    m
}

#[test]
fn scan_variants() {
    let p3 = [1usize, 1, 1];
    let p2 = [1usize, 1];
    for stream_v in 0..3u8 {
        for pos_v in 0..2u8 {
            for entry_v in 0..2u8 {
                // triangle roles: even index = x (needs gauss of x⁻¹),
                // odd = y (needs gauss of y)
                let mut tri_bad = 0;
                for idx in 0..100u64 {
                    let m = sample(3, 7, idx, stream_v, pos_v, entry_v);
                    let bad = if idx % 2 == 0 {
                        let minv = linalg::inverse(&m).unwrap();
                        gauss_decompose(&p3, &minv).is_err()
                    } else {
                        gauss_decompose(&p3, &m).is_err()
                    };
                    if bad {
                        tri_bad += 1;
                    }
                }
                let mut ann_bad = 0;
                for idx in 0..100u64 {
                    let m = sample(2, 42, idx, stream_v, pos_v, entry_v);
                    if gauss_decompose(&p2, &m).is_err() {
                        ann_bad += 1;
                    }
                }
                println!("stream={stream_v} pos={pos_v} entry={entry_v}: tri_bad={tri_bad} ann_bad={ann_bad}");
            }
        }
    }
}
