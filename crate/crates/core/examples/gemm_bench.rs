use ndarray::Array2;
use std::time::Instant;

fn bench(m: usize, k: usize, n: usize, reps: usize) {
    let a = Array2::<f64>::from_elem((m, k), 1.000001);
    let b = Array2::<f64>::from_elem((k, n), 0.999999);
    let mut acc = 0.0;
    for _ in 0..3 {
        acc += a.dot(&b)[[0, 0]];
    }
    let t0 = Instant::now();
    for _ in 0..reps {
        acc += a.dot(&b)[[0, 0]];
    }
    let dt = t0.elapsed().as_secs_f64();
    let flops = 2.0 * (m * k * n * reps) as f64;
    println!(
        "dgemm {m:4}x{k:4}x{n:4}: {:8.2} GFLOP/s (acc={acc:.1})",
        flops / dt / 1e9
    );
}

fn main() {
    // row/col map shapes of the spectrum network, single example
    bench(16, 32, 256, 2000);
    bench(256, 16, 64, 2000);
    bench(64, 256, 512, 500);
    bench(512, 64, 128, 500);
    bench(128, 512, 1024, 100);
    bench(1024, 128, 256, 100);
    bench(256, 1024, 512, 100);
    bench(512, 256, 64, 200);
    bench(64, 512, 256, 500);
    bench(1, 512, 1024, 2000);
}
