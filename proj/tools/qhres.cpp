// qhres: residue-lifting analysis of isolated quasihomogeneous singularities.
//
// Exit codes: 0 LIFTS (or success), 10 OBSTRUCTED, 11 INCONCLUSIVE,
// 2 input error, 1 numerical failure.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <atomic>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qhres/qhres.hpp"

namespace fs = std::filesystem;
using namespace qhres;
using io::Json;

namespace {

constexpr int kExitLifts = 0;
constexpr int kExitObstructed = 10;
constexpr int kExitInconclusive = 11;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 1;

int exit_code(criteria::Verdict v) {
    switch (v) {
    case criteria::Verdict::Lifts: return kExitLifts;
    case criteria::Verdict::Obstructed: return kExitObstructed;
    case criteria::Verdict::Inconclusive: return kExitInconclusive;
    }
    return kExitInput;
}

std::string join_k(const std::vector<unsigned>& k) {
    std::string s = "(";
    for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
    return s + ")";
}

residue::ResidueReport run_job(const io::Job& job) {
    return residue::analyze(job.s, job.g, job.weights, {job.spec.options.rescale_weights});
}

std::string render_text(const residue::ResidueReport& r) {
    std::ostringstream os;
    os << "verdict: " << criteria::to_string(r.verdict) << '\n';
    os << "s: " << algebra::to_string(r.s) << '\n';
    os << "g: " << algebra::to_string(r.g) << '\n';
    os << "weights:";
    for (const auto& w : weights::to_strings(r.weights)) os << ' ' << w;
    os << '\n';
    os << "kappa: " << algebra::to_string(r.kappa) << '\n';
    os << "l: " << r.l.str() << '\n';
    os << "C: " << algebra::to_string(r.jacobian_constant) << '\n';
    os << "condition2: " << (r.condition2.holds ? "holds" : "fails");
    if (r.condition2.witness) os << " k=" << join_k(r.condition2.witness->k);
    os << '\n';
    os << "spectrum:";
    for (const auto& e : r.spectrum) os << ' ' << algebra::to_string(e.value) << '@' << join_k(e.k);
    os << '\n';
    os << "leray_residue [" << r.leray.form.variables()[r.leray.chart_index]
       << "]: " << forms::to_string(r.leray.form) << '\n';
    for (const auto& b : r.blowup_exponents)
        os << "blowup_exponent: alpha=" << algebra::to_string(b.alpha) << " exponent=" << b.exponent << '\n';
    if (r.second) {
        os << "second_residue [" << r.second->residue.form.variables()[r.second->residue.chart_index]
           << "]: " << r.second->prefactor << " * " << forms::to_string(r.second->residue.form)
           << "  on " << algebra::to_string(r.second->s_tilde) << " = 0\n";
    }
    for (const auto& w : r.warnings) os << "warning: " << w << '\n';
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ArgumentError("cannot write '" + path + "'");
    out << content;
}

weights::WeightSystem weights_from_args(const std::vector<std::string>& args) {
    if (args.empty()) throw ArgumentError("no weights given");
    return io::parse_weights(args);
}

int cmd_analyze(const std::string& path, const std::string& out, const std::string& format) {
    auto job = io::load_job_file(path);
    auto report = run_job(job);
    std::string body = format == "text" ? render_text(report) : io::dump(io::to_json(report));
    if (out.empty()) {
        std::cout << body;
    } else {
        write_file(out, body);
        std::cout << criteria::to_string(report.verdict) << '\n';
    }
    return exit_code(report.verdict);
}

int cmd_spectrum(const std::vector<std::string>& args, bool dedup, bool json) {
    auto w = weights_from_args(args);
    auto spectrum = criteria::spectrum_nonpositive(w);
    if (json) {
        Json j;
        j["kappa"] = io::to_json(w.kappa());
        if (dedup) {
            Json values = Json::array();
            for (const auto& v : criteria::distinct_values(spectrum)) values.push_back(io::to_json(v));
            j["spectrum"] = values;
        } else {
            j["spectrum"] = io::to_json(spectrum);
        }
        std::cout << io::dump(j);
        return 0;
    }
    if (dedup) {
        for (const auto& v : criteria::distinct_values(spectrum)) std::cout << algebra::to_string(v) << '\n';
    } else {
        for (const auto& e : spectrum) std::cout << algebra::to_string(e.value) << ' ' << join_k(e.k) << '\n';
    }
    return 0;
}

int cmd_condition2(const std::vector<std::string>& args, bool json) {
    auto w = weights_from_args(args);
    auto c = criteria::condition2(w);
    if (json) {
        Json j;
        j["kappa"] = io::to_json(w.kappa());
        j["condition2"] = io::to_json(c);
        std::cout << io::dump(j);
    } else {
        std::cout << (c.holds ? "holds" : "fails");
        if (c.witness) std::cout << " k=" << join_k(c.witness->k);
        std::cout << '\n';
    }
    return 0;
}

int cmd_pullback(const std::string& path, bool json) {
    auto job = io::load_job_file(path);
    std::vector<std::string> warnings;
    auto w = residue::normalized_weights(job.s, job.weights, job.spec.options.rescale_weights, warnings);
    auto probe = criteria::pullback_singularity_probe(job.s, w);
    if (json) {
        Json j = io::to_json(probe);
        j["warnings"] = warnings;
        std::cout << io::dump(j);
    } else {
        std::cout << algebra::to_string(probe.cover_pullback) << '\n' << criteria::to_string(probe.result) << '\n';
        for (const auto& m : warnings) std::cerr << "warning: " << m << '\n';
    }
    return 0;
}

int cmd_integrate(const std::string& path, int steps, const std::string& csv, bool json) {
    auto job = io::load_job_file(path);
    if (steps <= 0) steps = job.spec.options.quadrature_steps;
    std::vector<std::string> warnings;
    auto w = residue::normalized_weights(job.s, job.weights, job.spec.options.rescale_weights, warnings);
    auto result = numint::integrate_second_residue(job.g, job.s, w, steps);
    std::string csv_path = csv;
    if (csv_path.empty() && job.spec.options.emit_trace) csv_path = fs::path(path).replace_extension(".trace.csv").string();
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw ArgumentError("cannot write '" + csv_path + "'");
        numint::write_trace_csv(result.trace, out);
    }
    std::ostringstream value, error;
    value.precision(15);
    error.precision(3);
    value << result.integral.value;
    error << result.integral.error;
    if (json) {
        Json j;
        j["second_residue"] = io::to_json(result.second);
        j["curve"] = algebra::to_string(result.trace.curve);
        j["steps"] = steps;
        j["samples"] = result.trace.samples.size();
        j["closed"] = result.trace.closed;
        j["integral"] = result.integral.value;
        j["error_estimate"] = result.integral.error;
        j["warnings"] = warnings;
        std::cout << io::dump(j);
    } else {
        std::cout << "integral of " << forms::to_string(result.second.residue.form) << " over real "
                  << algebra::to_string(result.trace.curve) << " = 0\n";
        std::cout << value.str() << " +- " << error.str() << '\n';
        if (csv_path.size()) std::cout << "trace written to " << csv_path << '\n';
    }
    return 0;
}

struct BatchItem {
    std::string name;
    int code = kExitInput;
    std::string line;
};

int cmd_batch(const std::string& dir, const std::string& out_dir, unsigned jobs) {
    if (!fs::is_directory(dir)) throw ArgumentError("'" + dir + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (!out_dir.empty()) fs::create_directories(out_dir);

    auto run_one = [&](const fs::path& p) {
        BatchItem item;
        item.name = p.filename().string();
        try {
            auto report = run_job(io::load_job_file(p.string()));
            item.code = exit_code(report.verdict);
            item.line = criteria::to_string(report.verdict);
            if (!out_dir.empty())
                write_file((fs::path(out_dir) / p.stem()).string() + ".report.json", io::dump(io::to_json(report)));
        } catch (const NumericError& e) {
            item.code = kExitNumeric;
            item.line = std::string("ERROR ") + e.what();
        } catch (const std::exception& e) {
            item.code = kExitInput;
            item.line = std::string("ERROR ") + e.what();
        }
        return item;
    };

    std::vector<BatchItem> results(files.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(files.size())));
    for (unsigned t = 0; t < n; ++t)
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < files.size(); i = next++) results[i] = run_one(files[i]);
        });
    for (auto& w : workers) w.join();

    bool failed = false;
    for (const auto& r : results) {
        std::cout << r.name << ": " << r.line << '\n';
        failed = failed || (r.code != kExitLifts && r.code != kExitObstructed && r.code != kExitInconclusive);
    }
    return failed ? kExitInput : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Residue lifting analysis for quasihomogeneous hypersurface singularities"};
    app.require_subcommand(0, 1);

    std::string batch_dir, batch_out;
    unsigned batch_jobs = std::max(1u, std::thread::hardware_concurrency());
    app.add_option("--batch", batch_dir, "Analyze every *.json job in a directory");
    app.add_option("--batch-out", batch_out, "Write one report per job into this directory");
    app.add_option("-j,--jobs", batch_jobs, "Parallel workers for --batch")->check(CLI::PositiveNumber);

    std::string job_path, out_path, format = "json";
    auto* analyze = app.add_subcommand("analyze", "Full lifting analysis of a job file");
    analyze->add_option("job", job_path, "Job file")->required();
    analyze->add_option("--out", out_path, "Write the report here instead of stdout");
    analyze->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));

    std::vector<std::string> weight_args;
    bool dedup = false, json = false;
    auto* spectrum = app.add_subcommand("spectrum", "Nonpositive spectrum of a weight system");
    spectrum->add_option("weights", weight_args, "Weights a0 a1 ... as p/q")->required();
    spectrum->add_flag("--dedup", dedup, "Distinct values only");
    spectrum->add_flag("--json", json, "JSON output");

    auto* cond2 = app.add_subcommand("condition2", "Decide kappa + sum k_i a_i != 1");
    cond2->add_option("weights", weight_args, "Weights a0 a1 ... as p/q")->required();
    cond2->add_flag("--json", json, "JSON output");

    auto* pullback = app.add_subcommand("pullback", "Cover pullback of s and the isolatedness probe");
    pullback->add_option("job", job_path, "Job file")->required();
    pullback->add_flag("--json", json, "JSON output");

    int steps = 0;
    std::string csv;
    auto* integrate = app.add_subcommand("integrate", "Integrate the second residue over the real curve");
    integrate->add_option("job", job_path, "Job file")->required();
    integrate->add_option("--steps", steps, "Trace resolution (default: options.quadrature_steps)");
    integrate->add_option("--trace-csv", csv, "Write the traced curve as CSV");
    integrate->add_flag("--json", json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (!batch_dir.empty()) {
            if (!app.get_subcommands().empty()) throw ArgumentError("--batch cannot be combined with a subcommand");
            return cmd_batch(batch_dir, batch_out, batch_jobs);
        }
        if (analyze->parsed()) return cmd_analyze(job_path, out_path, format);
        if (spectrum->parsed()) return cmd_spectrum(weight_args, dedup, json);
        if (cond2->parsed()) return cmd_condition2(weight_args, json);
        if (pullback->parsed()) return cmd_pullback(job_path, json);
        if (integrate->parsed()) return cmd_integrate(job_path, steps, csv, json);
        std::cout << app.help();
        return kExitInput;
    } catch (const parser::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitInput;
    } catch (const NumericError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    }
}
