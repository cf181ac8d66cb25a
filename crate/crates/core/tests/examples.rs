macro_rules! example {
    ($module:ident, $test:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(transcode_basics, transcode_basics_runs, "transcode_basics.rs");
example!(validation, validation_runs, "validation.rs");
example!(error_reporting, error_reporting_runs, "error_reporting.rs");
example!(backend_selection, backend_selection_runs, "backend_selection.rs");
example!(tables_inspection, tables_inspection_runs, "tables_inspection.rs");
example!(kernel_paths, kernel_paths_runs, "kernel_paths.rs");
example!(utf16_registers, utf16_registers_runs, "utf16_registers.rs");
example!(corpus_stats, corpus_stats_runs, "corpus_stats.rs");
example!(benchmark, benchmark_runs, "benchmark.rs");
example!(differential_fuzz, differential_fuzz_runs, "differential_fuzz.rs");
example!(bom_endianness, bom_endianness_runs, "bom_endianness.rs");
