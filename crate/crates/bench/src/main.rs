use clap::Parser;

fn main() -> anyhow::Result<()> {
    nsht_bench::cli::run(nsht_bench::cli::Cli::parse())
}
