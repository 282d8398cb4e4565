mod common;

use hgp_erasure_core::sim::{parse_p_grid, run_sweep_on, CodeSource, CSV_HEADER};
use hgp_erasure_core::{run_sweep, write_csv, DecoderKind, PegParams, SweepSpec};

fn spec(workers: usize) -> SweepSpec {
    SweepSpec {
        code_source: CodeSource::Peg(PegParams {
            num_bits: 12,
            num_checks: 8,
            bit_degree: 3,
            seed: 4,
        }),
        p_grid: parse_p_grid("0.1:0.4:4").unwrap(),
        trials: 400,
        decoders: vec![
            DecoderKind::Ml,
            DecoderKind::Peeling,
            DecoderKind::Combined(1),
            DecoderKind::Vh,
            DecoderKind::Pruned(1),
        ],
        seed: 77,
        max_workers: workers,
        record_timing: false,
    }
}

fn csv_text(spec: &SweepSpec) -> String {
    let mut out = Vec::new();
    write_csv(&run_sweep(spec).unwrap(), &mut out).unwrap();
    String::from_utf8(out).unwrap()
}

#[test]
fn worker_count_does_not_change_output() {
    let one = csv_text(&spec(1));
    assert_eq!(one, csv_text(&spec(4)));
    assert_eq!(one, csv_text(&spec(8)));
}

#[test]
fn csv_is_well_formed_and_sorted() {
    let text = csv_text(&spec(2));
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 20);
    let keys: Vec<(f64, String)> = rows.iter().map(|r| (r[0].parse().unwrap(), r[1].to_string())).collect();
    let mut sorted = keys.clone();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    assert_eq!(keys, sorted);
    for r in &rows {
        let trials: u64 = r[2].parse().unwrap();
        let aborts: u64 = r[3].parse().unwrap();
        let logical: u64 = r[4].parse().unwrap();
        let rate: f64 = r[5].parse().unwrap();
        let (lo, hi): (f64, f64) = (r[6].parse().unwrap(), r[7].parse().unwrap());
        assert_eq!(trials, 400);
        assert!((rate - (aborts + logical) as f64 / 400.0).abs() < 1e-6);
        assert!(lo <= rate && rate <= hi);
        assert_eq!(&r[8], "0");
        if &r[1] == "ml" {
            assert_eq!(aborts, 0);
        }
    }
}

#[test]
fn zero_probability_never_fails() {
    let mut s = spec(1);
    s.p_grid = parse_p_grid("0:0:1").unwrap();
    s.trials = 100;
    let result = run_sweep(&s).unwrap();
    assert!(result.points.iter().all(|r| r.failures() == 0 && r.failure_rate == 0.0));
}

#[test]
fn paired_counts_respect_decoder_inclusions() {
    let code = hgp_erasure_core::HgpCode::new(&common::peg(16, 12, 3, 1)).unwrap();
    let mut s = spec(1);
    s.trials = 2000;
    let result = run_sweep_on(&code, &s).unwrap();
    for &p in &s.p_grid {
        let f = |d| result.get(p, d).unwrap().failures();
        assert!(f(DecoderKind::Pruned(1)) <= f(DecoderKind::Peeling));
        assert!(f(DecoderKind::Combined(1)) <= f(DecoderKind::Pruned(1)));
    }
}

#[test]
fn invalid_specs_are_rejected() {
    let mut s = spec(1);
    s.p_grid = vec![1.5];
    assert!(run_sweep(&s).is_err());
    let mut s = spec(1);
    s.trials = 0;
    assert!(run_sweep(&s).is_err());
    let mut s = spec(1);
    s.decoders = vec![DecoderKind::Ml, DecoderKind::Ml];
    assert!(run_sweep(&s).is_err());
    let mut s = spec(0);
    s.max_workers = 0;
    assert!(run_sweep(&s).is_err());
}
