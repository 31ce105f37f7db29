//! Batch front door: check files, print normal forms, run the
//! self-test suites.

use clap::{Parser, Subcommand};

use crate::check::{check_defs, Defs};
use crate::parse::{parse_file, SourceFile};

#[derive(Parser)]
#[command(name = "cutt", about = "Checker for a small cubical type theory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Typecheck every definition in the given files.
    Check {
        files: Vec<String>,
        /// Do not load the shipped library first.
        #[arg(long)]
        no_prelude: bool,
        /// Log one line per composition dispatch.
        #[arg(long)]
        trace_comp: bool,
    },
    /// Print the normal form of a definition.
    Normalize {
        files: Vec<String>,
        /// The definition to normalize.
        #[arg(long)]
        def: String,
        #[arg(long)]
        no_prelude: bool,
        #[arg(long)]
        trace_comp: bool,
    },
    /// Print the normal form of a definition together with its type.
    Eval {
        files: Vec<String>,
        #[arg(long)]
        def: String,
        #[arg(long)]
        no_prelude: bool,
        #[arg(long)]
        trace_comp: bool,
    },
    /// Run the randomized invariant suites deterministically.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

pub fn run_cli() -> i32 {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { files, no_prelude, trace_comp } => {
            crate::comp::set_trace(trace_comp);
            match load_all(&files, no_prelude) {
                Ok(_) => 0,
                Err(code) => code,
            }
        }
        Command::Normalize { files, def, no_prelude, trace_comp } => {
            crate::comp::set_trace(trace_comp);
            print_def(&files, &def, no_prelude, false)
        }
        Command::Eval { files, def, no_prelude, trace_comp } => {
            crate::comp::set_trace(trace_comp);
            print_def(&files, &def, no_prelude, true)
        }
        Command::Selftest { seed } => {
            let report = crate::selftest::run_all(seed);
            for line in &report.lines {
                println!("{line}");
            }
            if report.all_passed {
                0
            } else {
                3
            }
        }
    }
}

/// Load the prelude (unless disabled) and all files, reporting errors in
/// `file:line:col: kind: message` form. Returns exit code on failure.
fn load_all(files: &[String], no_prelude: bool) -> Result<Defs, i32> {
    let mut defs = Defs::new();
    if !no_prelude {
        if let Err(e) = crate::prelude::build_prelude(&mut defs) {
            eprintln!("prelude: {e}");
            return Err(2);
        }
    }
    for path in files {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("{path}: error: {e}");
                return Err(2);
            }
        };
        let source = SourceFile::new(path.clone(), text);
        let parsed = match parse_file(&source.text) {
            Ok(p) => p,
            Err(e) => {
                let (line, col) = source.line_col(e.span.start);
                eprintln!("{path}:{line}:{col}: parse: {}", e.msg);
                return Err(2);
            }
        };
        if let Err(e) = check_defs(&mut defs, &parsed) {
            let (line, col) = source.line_col(e.span.start);
            eprintln!("{path}:{line}:{col}: {e}");
            return Err(1);
        }
    }
    Ok(defs)
}

fn print_def(files: &[String], name: &str, no_prelude: bool, with_type: bool) -> i32 {
    let defs = match load_all(files, no_prelude) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let entry = match defs.lookup(name) {
        Some(e) => e,
        None => {
            eprintln!("error: no definition named `{name}`");
            return 2;
        }
    };
    match crate::readback::readback(&entry.val, &entry.ty) {
        Ok(term) => {
            let pretty = crate::readback::prettify(&term);
            if with_type {
                let ty = crate::readback::show_type(&entry.ty);
                println!("{} : {}", crate::printer::print_term(&pretty), ty);
            } else {
                println!("{}", crate::printer::print_term(&pretty));
            }
            0
        }
        Err(e) => {
            eprintln!("error: readback failed: {e}");
            1
        }
    }
}
