//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (visible with `cargo test --test acceptance -- --nocapture`).

use ldcl_core::matrix::{self, CodecParams, MultiplierProfile};
use ldcl_core::metrics::{format_ratio, rmse};
use ldcl_core::numeric::{
    divmod_default, DefaultNumber, GiantNumber, LogDecoder, LogEncoder,
};
use ldcl_core::oracle::naive_subtract_count;
use ldcl_core::sequence::{self, MappedDigits};
use ldcl_core::BitSequence;
use ldcl::bench::{self, BenchSpec, InputSource};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

fn verdict(id: u32, name: &str, ok: bool) {
    println!(
        "ACCEPTANCE {id} ({name}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "acceptance criterion {id} ({name}) failed");
}

/// 1. Lossless-limit round trip: 1000 seeded random inputs of 1..=65536
/// bytes at T=50, p=T+5 reconstruct bit-identically, through the container.
#[test]
fn criterion_1_lossless_roundtrip() {
    let params = CodecParams::new(50, 55, MultiplierProfile::Raw);
    let mut rng = ChaCha8Rng::seed_from_u64(0x1DC1_0001);
    let mut failures = 0;
    for case in 0..1000 {
        let len = rng.gen_range(1..=65536);
        let mut payload = vec![0u8; len];
        rng.fill_bytes(&mut payload);
        let input = BitSequence::from_bytes(&payload);
        let archive = matrix::compress(&input, &params).unwrap();
        let mut bytes = Vec::new();
        ldcl::write_archive(&archive, &mut bytes).unwrap();
        let back = ldcl::read_archive(&mut bytes.as_slice()).unwrap();
        if matrix::decompress(&back) != input {
            eprintln!("case {case} (len {len}) not bit-identical");
            failures += 1;
        }
    }
    verdict(1, "lossless-limit round trip", failures == 0);
}

/// 2. Long division agrees with the literal repeated-subtraction oracle on
/// every s with at most 4 digits against D in {9, 99, 999}.
#[test]
fn criterion_2_oracle_equivalence() {
    let mut disagreements = 0;
    for nines in [1usize, 2, 3] {
        let d = DefaultNumber::new(nines);
        for s in 1u64..=9999 {
            let s = GiantNumber::from(s);
            if divmod_default(&s, &d).unwrap() != naive_subtract_count(&s, &d).unwrap() {
                disagreements += 1;
            }
        }
    }
    verdict(2, "divmod oracle equivalence", disagreements == 0);
}

/// 3. Exhaustive recovery: antilog(log(r)) == r for every r in [1, 998]
/// with D=999 at p=10.
#[test]
fn criterion_3_exhaustive_recovery() {
    let d = DefaultNumber::new(3);
    let enc = LogEncoder::new(&d, 10);
    let dec = LogDecoder::new(&d, 10);
    let mut exact = 0;
    for r in 1u64..=998 {
        let r = GiantNumber::from(r);
        let l = enc.log(&r, &d).unwrap();
        if dec.antilog(&l, &d) == r {
            exact += 1;
        }
    }
    println!("  recovery {exact}/998 exact");
    verdict(3, "exhaustive residue recovery", exact == 998);
}

/// 4. Stage inverses: 10^4 randomized cases each for map/unmap and for the
/// run-length round trip, covering odd lengths and runs of 4, 5, 9, 10, 18.
#[test]
fn criterion_4_stage_inverses() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1DC1_0004);
    let mut failures = 0;

    for _ in 0..10_000 {
        let len = rng.gen_range(0..=257); // odd and even lengths
        let bits: Vec<bool> = (0..len).map(|_| rng.gen()).collect();
        let input = BitSequence::from_bits(bits.iter().copied());
        let mapped = sequence::map_bits(&input);
        if sequence::unmap_digits(&mapped).unwrap() != input {
            failures += 1;
        }
    }

    let run_lengths = [1usize, 2, 3, 4, 5, 9, 10, 18];
    for case in 0..10_000usize {
        // build a digit stream from runs so the interesting lengths occur
        let mut digits: Vec<u8> = Vec::new();
        let runs = rng.gen_range(1..=12);
        for _ in 0..runs {
            let d = rng.gen_range(2u8..=5);
            let r = if case % 2 == 0 {
                run_lengths[rng.gen_range(0..run_lengths.len())]
            } else {
                rng.gen_range(1..=20)
            };
            digits.extend(std::iter::repeat_n(d, r));
        }
        let mapped = MappedDigits {
            digits: digits.clone(),
            odd_pad: false,
        };
        let enc = sequence::rle_encode(&mapped);
        if sequence::rle_decode(&enc).unwrap().digits != digits {
            failures += 1;
        }
    }
    verdict(4, "stage inverses", failures == 0);
}

/// 5. Rate-distortion trend: at p=8 the median RMSE over 10 trials of 1 MiB
/// random input strictly increases across T in {20, 100, 300}; at T=300 it
/// is non-increasing in p through {4, 8, 16, 305} and exactly 0 at p=305.
#[test]
fn criterion_5_rmse_trend() {
    let input = InputSource::Random {
        bytes: 1 << 20,
        seed: 0x1DC1_0005,
    };
    let medians = |set_sizes: Vec<usize>, precisions: Vec<usize>| {
        let spec = BenchSpec {
            set_sizes: set_sizes.clone(),
            precisions: precisions.clone(),
            input: input.clone(),
            trials: 10,
            m_profile: MultiplierProfile::Raw,
        };
        let rows = bench::run_bench(&spec).unwrap();
        let mut out = Vec::new();
        for &t in &set_sizes {
            for &p in &precisions {
                let mut cell: Vec<_> = rows
                    .iter()
                    .filter(|r| r.set_size == t && r.precision == p)
                    .map(|r| r.outcome.as_ref().unwrap().rmse.clone())
                    .collect();
                assert_eq!(cell.len(), 10);
                out.push(bench::median_rmse(&mut cell).unwrap());
            }
        }
        out
    };

    let by_t = medians(vec![20, 100, 300], vec![8]);
    for (t, m) in [20, 100, 300].iter().zip(&by_t) {
        println!("  T={t:<3} p=8   median rmse {}", m.to_scientific(3));
    }
    let increasing_in_t = by_t[0].cmp_value(&by_t[1]).is_lt() && by_t[1].cmp_value(&by_t[2]).is_lt();

    let by_p = medians(vec![300], vec![4, 8, 16, 305]);
    for (p, m) in [4, 8, 16, 305].iter().zip(&by_p) {
        println!("  T=300 p={p:<3} median rmse {}", m.to_scientific(3));
    }
    let nonincreasing_in_p = by_p.windows(2).all(|w| w[0].cmp_value(&w[1]).is_ge());
    let zero_at_lossless = by_p[3].is_zero();

    verdict(
        5,
        "rmse trend over T and p",
        increasing_in_t && nonincreasing_in_p && zero_at_lossless,
    );
}

/// 6. CR size model: measured CR on random input >= 1 MiB is within 5% of
/// T / (4 * (1 + p)) under the raw profile.
#[test]
fn criterion_6_cr_size_model() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1DC1_0006);
    let mut payload = vec![0u8; 1 << 20];
    rng.fill_bytes(&mut payload);
    let mut ok = true;
    for (t, p) in [(300usize, 12usize), (50, 8), (300, 4)] {
        let m = bench::run_cell(&payload, t, p, MultiplierProfile::Raw).unwrap();
        let measured = m.original_bytes as f64 / m.compressed_bytes as f64;
        let predicted = t as f64 / (4.0 * (1.0 + p as f64));
        let rel = (measured - predicted).abs() / predicted;
        println!(
            "  T={t} p={p}: measured CR {measured:.4}, predicted {predicted:.4}, deviation {:.2}%",
            rel * 100.0
        );
        ok &= rel < 0.05;
    }
    verdict(6, "CR size model", ok);
}

/// 7. Metrics formula checks: the displayed ratio for known sizes and
/// hand-computed RMSE values to 12 significant digits.
#[test]
fn criterion_7_metrics_formulas() {
    let ratio_ok = format_ratio(3_221_225_472, 53_687_091).unwrap() == "60.00";

    // single pair differing by 1: rmse exactly 1
    let one = rmse(
        &[GiantNumber::from(329u64)],
        &[GiantNumber::from(330u64)],
    )
    .unwrap();
    let (d1, e1) = one.significant_digits(12);
    let one_ok = e1 == 0 && d1 == vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0];

    // diffs {3, 4} over two pairs: sqrt(12.5) = 3.53553390593(274...)
    let two = rmse(
        &[GiantNumber::from(10u64), GiantNumber::from(20u64)],
        &[GiantNumber::from(13u64), GiantNumber::from(16u64)],
    )
    .unwrap();
    let (d2, e2) = two.significant_digits(12);
    let two_ok = e2 == 0 && d2 == vec![3, 5, 3, 5, 5, 3, 3, 9, 0, 5, 9, 3];

    verdict(7, "metrics formulas", ratio_ok && one_ok && two_ok);
}

/// 8. Determinism: compressing the same input twice, and once with forced
/// parallel per-set execution, yields byte-identical archives.
#[test]
fn criterion_8_determinism() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1DC1_0008);
    let mut payload = vec![0u8; 256 << 10];
    rng.fill_bytes(&mut payload);
    let input = BitSequence::from_bytes(&payload);
    let params = CodecParams::new(300, 12, MultiplierProfile::Raw);

    let digest = |archive: &matrix::Archive| {
        let mut bytes = Vec::new();
        ldcl::write_archive(archive, &mut bytes).unwrap();
        let mut h = Sha256::new();
        h.update(&bytes);
        hex(&h.finalize())
    };

    let a = digest(&matrix::compress(&input, &params).unwrap());
    let b = digest(&matrix::compress(&input, &params).unwrap());
    let par_pool = rayon_pool(4);
    let c = par_pool.install(|| digest(&ldcl::parallel::compress(&input, &params).unwrap()));
    println!("  sequential {a}");
    println!("  repeat     {b}");
    println!("  parallel   {c}");
    verdict(8, "deterministic archives", a == b && a == c);
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn rayon_pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
}
