//! Command-line front end. Exit status: 0 success, 1 usage error, 2 data or
//! model error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};

use crate::dataset::{load_csv, write_csv, CsvOptions, LabeledDataset};
use crate::error::Result;
use crate::eval::{self, bench, bench_sizes, holdout, synth_generate};
use crate::tree::{deserialize, feature_importance, print_tree, serialize, Model, DEFAULT_MAX_DEPTH};

#[derive(Debug, Parser)]
#[command(name = "saberpro-cart", version, about = "Depth-limited CART trees for exam records")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Train a tree and write the model file.
    Train {
        #[command(flatten)]
        input: LabeledInput,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify every row of a CSV file with a trained model.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value = ",", value_parser = parse_delimiter)]
        delimiter: u8,
        /// Predictions CSV; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train on a random split and report held-out accuracy.
    Evaluate {
        #[command(flatten)]
        input: LabeledInput,
        #[arg(long, default_value_t = eval::DEFAULT_TEST_FRACTION, value_parser = parse_fraction)]
        test_fraction: f64,
        #[arg(long, default_value_t = eval::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
    },
    /// Render a model as an indented tree.
    Print {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, overrides_with = "no_color", action = ArgAction::SetTrue)]
        color: bool,
        #[arg(long, overrides_with = "color", action = ArgAction::SetTrue)]
        no_color: bool,
    },
    /// Time training and classification across depths or dataset sizes.
    Bench {
        #[command(flatten)]
        input: LabeledInput,
        #[arg(long, value_delimiter = ',', default_value = "3,5,7,9,11")]
        depths: Vec<usize>,
        /// Benchmark prefixes of the data of these sizes instead of depths.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// Depth used with --sizes.
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        /// Also write the machine-readable CSV here.
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
    /// Print feature importance, most important first.
    Importance {
        #[arg(long)]
        model: PathBuf,
    },
    /// Write a synthetic dataset labeled by a random planted tree.
    Synth {
        #[arg(long, default_value_t = 5000)]
        rows: usize,
        #[arg(long, default_value_t = 4)]
        planted_depth: usize,
        #[arg(long, default_value_t = 0.1, value_parser = parse_noise)]
        noise: f64,
        #[arg(long, default_value_t = eval::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct LabeledInput {
    #[arg(long)]
    data: PathBuf,
    /// Numeric score column to binarize against its mean, or a column
    /// already holding successful/unsuccessful.
    #[arg(long)]
    label_column: String,
    #[arg(long, default_value = ",", value_parser = parse_delimiter)]
    delimiter: u8,
    /// Comma-separated columns to leave out of training.
    #[arg(long, value_delimiter = ',')]
    ignore: Vec<String>,
}

impl LabeledInput {
    fn load(&self) -> Result<LabeledDataset> {
        let options = CsvOptions {
            delimiter: self.delimiter,
            ignored: self.ignore.clone(),
        };
        let data = load_csv(&self.data, &options)?;
        LabeledDataset::prepare(&data, &self.label_column)
    }
}

fn parse_delimiter(s: &str) -> std::result::Result<u8, String> {
    match s {
        "\\t" | "tab" => Ok(b'\t'),
        _ if s.len() == 1 && s.is_ascii() => Ok(s.as_bytes()[0]),
        _ => Err(format!("delimiter must be a single ASCII character, got {s:?}")),
    }
}

fn parse_fraction(s: &str) -> std::result::Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x > 0.0 && x < 1.0 {
        Ok(x)
    } else {
        Err(format!("must be strictly between 0 and 1, got {x}"))
    }
}

fn parse_noise(s: &str) -> std::result::Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..0.5).contains(&x) {
        Ok(x)
    } else {
        Err(format!("must be in [0, 0.5), got {x}"))
    }
}

pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn execute(command: Command) -> Result<()> {
    let stdout = io::stdout();
    match command {
        Command::Train {
            input,
            max_depth,
            out,
        } => {
            let labeled = input.load()?;
            let model = Model::fit(&labeled, &labeled.all_rows(), max_depth)?;
            fs::write(&out, serialize(&model))?;
            let mut w = stdout.lock();
            writeln!(w, "trained on {} rows ({} dropped for missing score)", model.trained_rows, labeled.dropped())?;
            if let Some(mean) = model.label_mean {
                writeln!(w, "label mean {mean}")?;
            }
            writeln!(w, "depth {} with {} leaves", model.root.depth(), model.root.n_leaves())?;
            writeln!(w, "model written to {}", out.display())?;
        }
        Command::Predict {
            model,
            data,
            delimiter,
            out,
        } => {
            let model = read_model(&model)?;
            let options = CsvOptions {
                delimiter,
                ignored: Vec::new(),
            };
            let data = load_csv(&data, &options)?;
            let binding = model.bind(&data)?;
            let mut text = String::from("row_index,p_success,predicted_label\n");
            for i in 0..data.n_rows() {
                let leaf = model.classify_row(&data, i, &binding);
                text.push_str(&format!("{i},{:.6},{}\n", leaf.p_success, leaf.prediction()));
            }
            emit(out.as_deref(), &text)?;
        }
        Command::Evaluate {
            input,
            test_fraction,
            seed,
            max_depth,
        } => {
            let labeled = input.load()?;
            let (_, report) = holdout(&labeled, test_fraction, seed, max_depth)?;
            writeln!(stdout.lock(), "{report}")?;
        }
        Command::Print {
            model,
            color,
            no_color,
        } => {
            let model = read_model(&model)?;
            let color = if color {
                true
            } else if no_color {
                false
            } else {
                stdout.is_terminal()
            };
            stdout.lock().write_all(print_tree(&model, color).as_bytes())?;
        }
        Command::Bench {
            input,
            depths,
            sizes,
            max_depth,
            csv_out,
        } => {
            let labeled = input.load()?;
            let report = match sizes {
                Some(sizes) => bench_sizes(&labeled, &sizes, max_depth)?,
                None => bench(&labeled, &depths)?,
            };
            stdout.lock().write_all(report.to_table().as_bytes())?;
            if let Some(path) = csv_out {
                fs::write(path, report.to_csv())?;
            }
        }
        Command::Importance { model } => {
            let model = read_model(&model)?;
            let mut w = stdout.lock();
            for (name, weight) in feature_importance(&model) {
                writeln!(w, "{weight:.6}  {name}")?;
            }
        }
        Command::Synth {
            rows,
            planted_depth,
            noise,
            seed,
            out,
        } => {
            let data = synth_generate(rows, planted_depth, noise, seed);
            let mut buf = Vec::new();
            write_csv(data.labeled.dataset(), &mut buf, b',')?;
            emit(out.as_deref(), &String::from_utf8(buf).expect("csv output is utf-8"))?;
        }
    }
    Ok(())
}

fn read_model(path: &Path) -> Result<Model> {
    let text = fs::read_to_string(path)?;
    deserialize(&text)
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

