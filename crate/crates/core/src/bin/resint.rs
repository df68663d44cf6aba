use clap::Parser;
use resint::cli::{main_with, Cli};
use resint::groebner::DegreeLimitExceeded;

fn main() {
    // degree-guard trips are reported in JSON; keep them off stderr
    let default = std::panic::take_hook();
    std::panic::set_hook(Box::new(move |info| {
        if info.payload().downcast_ref::<DegreeLimitExceeded>().is_none() {
            default(info);
        }
    }));
    std::process::exit(main_with(Cli::parse()));
}
