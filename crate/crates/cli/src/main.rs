fn main() {
    let o = inertia_cli::run_args(std::env::args_os().skip(1));
    if o.code == 2 {
        eprint!("{}", o.out);
    } else {
        print!("{}", o.out);
    }
    std::process::exit(o.code);
}
