use clap::Parser;

fn main() {
    let cli = rle_dict_cli::Cli::parse();
    if let Err(e) = rle_dict_cli::run(cli) {
        eprintln!("rledict: {}", e.message());
        std::process::exit(e.exit_code());
    }
}
