fn main() {
    multiform::cli::main()
}
