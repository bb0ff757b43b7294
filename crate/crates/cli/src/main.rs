use std::io::{self, BufWriter, Write};
use std::process;
use std::sync::atomic::{AtomicBool, Ordering};

use areavenn::StopSignal;
use areavenn_cli::{parse_cli, run_pipeline};

fn main() {
    let config = match parse_cli(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };

    // First interrupt: finish the current epoch, revert to the best layout
    // and still write outputs. Second interrupt: give up immediately.
    let stop = StopSignal::new();
    let handler_stop = stop.clone();
    let interrupted = AtomicBool::new(false);
    if let Err(e) = ctrlc::set_handler(move || {
        if interrupted.swap(true, Ordering::SeqCst) {
            process::exit(130);
        }
        handler_stop.raise();
    }) {
        eprintln!("warning: cannot install interrupt handler: {e}");
    }

    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut diag = BufWriter::new(stderr.lock());
    let result = run_pipeline(&config, &stop, &mut out, &mut diag);
    let _ = diag.flush();
    drop(diag);
    match result {
        Ok(_) => {}
        Err(e) => {
            eprintln!("error: {e}");
            process::exit(e.exit_code());
        }
    }
}
