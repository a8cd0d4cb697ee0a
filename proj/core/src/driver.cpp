/*
Copyright (c) 2026 the mtt developers. All rights reserved.
Released under Apache 2.0 license as described in the file LICENSE.
*/
#include "mtt/driver.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace mtt {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw_error(DiagCategory::IoError, SourceSpan::synthetic(path),
                    "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> default_prelude_paths(const std::string& exe_dir) {
    namespace fs = std::filesystem;
    std::vector<std::string> candidates;
    if (const char* env = std::getenv("MTT_PRELUDE")) candidates.push_back(env);
    candidates.push_back("prelude/prelude.mtt");
    if (!exe_dir.empty()) {
        candidates.push_back(exe_dir + "/../prelude/prelude.mtt");
        candidates.push_back(exe_dir + "/../../prelude/prelude.mtt");
        candidates.push_back(exe_dir + "/../../../prelude/prelude.mtt");
    }
    for (const auto& c : candidates) {
        std::error_code ec;
        if (fs::exists(c, ec)) return {c};
    }
    return {};
}

std::string FileReport::render(bool deterministic) const {
    std::string out;
    for (const auto& c : commands) {
        for (const auto& l : c.lines) out += l + "\n";
        if (c.error) out += c.error->str() + "\n";
    }
    out += path + ": " + (ok ? "ok" : "FAILED") + " (" + std::to_string(commands.size()) +
           " commands, " + std::to_string(unify_steps) + " unify steps";
    if (!deterministic) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), ", %.1f ms", elapsed_ms);
        out += buf;
    }
    out += ")\n";
    return out;
}

Driver::Driver(RunOptions opts) : m_opts(std::move(opts)) {}

TraceSink* Driver::trace_sink() {
    if (m_opts.trace == TraceMode::Off) return nullptr;
    if (!m_trace_sink) {
        std::ostream& out = m_opts.trace_out ? *m_opts.trace_out : std::cerr;
        bool unify_on = m_opts.trace == TraceMode::Unify || m_opts.trace == TraceMode::All;
        bool elab_on = m_opts.trace == TraceMode::Elab || m_opts.trace == TraceMode::All;
        m_trace_sink = std::make_unique<NdjsonTraceSink>(out, unify_on, elab_on);
    }
    return m_trace_sink.get();
}

std::shared_ptr<const Environment> Driver::prelude() {
    if (m_prelude) return m_prelude;
    Environment env = Environment::initial();
    for (const auto& path : m_opts.prelude_paths) {
        std::string source = read_file(path);
        FileReport r = run_source_with_env(path, source, env, /*traced=*/false);
        if (!r.ok) {
            std::string detail;
            for (const auto& c : r.commands)
                if (c.error) {
                    detail = c.error->str();
                    break;
                }
            throw_error(DiagCategory::IoError, SourceSpan::synthetic(path),
                        "prelude failed to check: " + path, detail);
        }
        env = *r.final_env;
    }
    m_prelude = std::make_shared<const Environment>(std::move(env));
    return m_prelude;
}

FileReport Driver::run_file(const std::string& path) {
    return run_source(path, read_file(path));
}

FileReport Driver::run_source(const std::string& path, const std::string& source) {
    return run_source_with_env(path, source, *prelude());
}

namespace {

/// Counts unification records on their way to the real sink, so the report's
/// step count always equals the number of emitted trace records.
class CountingSink : public TraceSink {
public:
    explicit CountingSink(TraceSink* next) : m_next(next) {}
    void record(const TraceRecord& r) override {
        if (r.phase == "unify") ++unify_records;
        if (m_next) m_next->record(r);
    }
    unsigned unify_records = 0;

private:
    TraceSink* m_next;
};

}  // namespace

FileReport Driver::run_source_with_env(const std::string& path, const std::string& source,
                                       const Environment& start, bool traced) {
    auto t0 = std::chrono::steady_clock::now();
    FileReport report;
    report.path = path;
    Environment env = start;

    std::vector<Token> tokens;
    try {
        tokens = tokenize(source, path);
    } catch (const Error& e) {
        CommandReport c;
        c.ok = false;
        c.span = e.diag().span;
        c.error = e.diag();
        report.commands.push_back(std::move(c));
        report.ok = false;
        report.final_env = std::make_shared<const Environment>(std::move(env));
        return report;
    }

    Parser parser(std::move(tokens));
    CountingSink counter(traced ? trace_sink() : nullptr);
    CommandProcessor processor(m_opts.elab_options(), &counter);

    while (!parser.at_eof()) {
        CommandReport c;
        bool parsed = false;
        try {
            CommandPtr cmd = parser.parse_command(env.notations());
            parsed = true;
            c.span = cmd->span;
            CommandOutcome outcome = processor.process(env, cmd);
            env = std::move(outcome.env);
            c.lines = std::move(outcome.lines);
        } catch (const Error& e) {
            c.ok = false;
            c.error = e.diag();
            report.ok = false;
            if (!parsed) parser.skip_to_next_command();
            report.commands.push_back(std::move(c));
            if (!m_opts.keep_going) break;
            continue;
        }
        report.commands.push_back(std::move(c));
    }

    report.unify_steps = counter.unify_records;
    report.final_env = std::make_shared<const Environment>(std::move(env));
    auto t1 = std::chrono::steady_clock::now();
    report.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return report;
}

RunReport Driver::run_files(const std::vector<std::string>& paths) {
    RunReport out;
    if (paths.size() <= 1 || m_opts.trace != TraceMode::Off) {
        // tracing interleaves badly across threads; stay sequential
        for (const auto& p : paths) {
            out.files.push_back(run_file(p));
            out.ok = out.ok && out.files.back().ok;
        }
        return out;
    }
    prelude();  // build once before fanning out
    std::vector<std::future<FileReport>> futures;
    futures.reserve(paths.size());
    for (const auto& p : paths)
        futures.push_back(std::async(std::launch::async, [this, p] { return run_file(p); }));
    for (auto& f : futures) {
        out.files.push_back(f.get());
        out.ok = out.ok && out.files.back().ok;
    }
    return out;
}

std::string Driver::eval_term(const std::string& text) {
    std::string source = "Eval (" + text + ").";
    FileReport r = run_source("<eval>", source);
    for (const auto& c : r.commands) {
        if (c.error) throw Error(*c.error);
        for (const auto& l : c.lines) {
            // strip the "<eval>:l:c: Eval: " prefix
            auto pos = l.find(": Eval: ");
            if (pos != std::string::npos) return l.substr(pos + 8);
        }
    }
    throw_error(DiagCategory::UsageError, SourceSpan::synthetic("<eval>"),
                "no evaluation output produced");
}

}  // namespace mtt
