/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "mtt/driver.hpp"

namespace {

std::string exe_dir(const char* argv0) {
    std::error_code ec;
    auto p = std::filesystem::weakly_canonical(std::filesystem::path(argv0), ec);
    if (ec) return {};
    return p.parent_path().string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mtt - a miniature dependent type theory with unification-based\n"
                 "implicit arguments, coercions, and canonical structures"};
    app.require_subcommand(1);

    std::vector<std::string> files;
    std::vector<std::string> prelude_paths;
    std::string trace_mode_str;
    std::string trace_out_path;
    std::string eval_expr;
    bool no_prelude = false;
    mtt::RunOptions opts;

    CLI::App* check = app.add_subcommand("check", "type-check .mtt files in order");
    check->add_option("files", files, "input files")->required()->expected(-1);

    CLI::App* eval = app.add_subcommand("eval", "normalize one term against the prelude");
    eval->add_option("term", eval_expr, "term to evaluate")->required();

    for (CLI::App* sub : {check, eval}) {
        sub->add_option("--prelude", prelude_paths, "prelude file, processed first (repeatable)");
        sub->add_flag("--no-prelude", no_prelude, "start from the built-in environment only");
        sub->add_option("--fuel-conv", opts.fuel_conv, "reduction steps per conversion query");
        sub->add_option("--fuel-unify", opts.fuel_unify, "unfoldings per unification constraint");
        sub->add_flag("--explicit", opts.explicit_print,
                      "print inserted coercions and implicit arguments");
        sub->add_flag("--keep-going", opts.keep_going, "continue a file after the first error");
        sub->add_flag("--deterministic", opts.deterministic, "suppress timing in the report");
        sub->add_option("--trace", trace_mode_str, "emit NDJSON trace records: elab|unify|all");
        sub->add_option("--trace-out", trace_out_path, "trace file (default: stderr)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (!trace_mode_str.empty()) {
        if (trace_mode_str == "elab")
            opts.trace = mtt::TraceMode::Elab;
        else if (trace_mode_str == "unify")
            opts.trace = mtt::TraceMode::Unify;
        else if (trace_mode_str == "all")
            opts.trace = mtt::TraceMode::All;
        else {
            std::cerr << "mtt: unknown trace mode '" << trace_mode_str << "'\n";
            return 2;
        }
    }

    std::ofstream trace_file;
    if (!trace_out_path.empty()) {
        trace_file.open(trace_out_path);
        if (!trace_file) {
            std::cerr << "mtt: cannot open trace output " << trace_out_path << "\n";
            return 2;
        }
        opts.trace_out = &trace_file;
    }

    if (no_prelude)
        opts.prelude_paths.clear();
    else if (!prelude_paths.empty())
        opts.prelude_paths = prelude_paths;
    else
        opts.prelude_paths = mtt::default_prelude_paths(exe_dir(argv[0]));

    try {
        mtt::Driver driver(opts);
        if (eval->parsed()) {
            std::cout << driver.eval_term(eval_expr) << "\n";
            return 0;
        }
        mtt::RunReport report = driver.run_files(files);
        for (const auto& f : report.files) std::cout << f.render(opts.deterministic);
        return report.ok ? 0 : 1;
    } catch (const mtt::Error& e) {
        std::cerr << e.diag().str() << "\n";
        return e.diag().category == mtt::DiagCategory::IoError ||
                       e.diag().category == mtt::DiagCategory::UsageError
                   ? 2
                   : 1;
    }
}
