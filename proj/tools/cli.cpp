#include "cli.hpp"

#include "graded/analysis.hpp"
#include "graded/catalog.hpp"
#include "graded/errors.hpp"
#include "graded/report.hpp"
#include "graded/scenario.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

namespace graded::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonFlags {
    std::vector<std::string> analyses;
    int grid = 0;  // 0: default
    std::vector<double> interval;
    int degree = 0;
    double tol_scale = 1.0;
    std::uint64_t seed = 42;
    std::string out;
    bool check = false;
    bool csv = false;
    int parallel = 1;
};

void add_common(CLI::App* app, CommonFlags& f) {
    app->add_option("--analyses", f.analyses, "Comma-separated analyses to run")->delimiter(',');
    app->add_option("--grid", f.grid, "Grid node count (odd)");
    app->add_option("--interval", f.interval, "Parameter interval a b")->expected(2);
    app->add_option("--degree", f.degree, "Degree d of the length functional");
    app->add_option("--tol-scale", f.tol_scale, "Multiply every tolerance by this factor");
    app->add_option("--seed", f.seed, "Seed for randomized property runs");
    app->add_option("--out", f.out, "Directory for JSON reports and CSV dumps (GRADED_CURVES_OUT overrides)");
    app->add_flag("--check", f.check, "Compare results with catalog expectations");
    app->add_flag("--csv", f.csv, "Write CSV sample dumps next to the reports");
    app->add_option("--parallel", f.parallel, "Worker threads for independent catalog cases");
}

RunOptions options_from(const CommonFlags& f) {
    RunOptions o;
    if (f.grid != 0) {
        if (f.grid < 3 || f.grid % 2 == 0) throw SchemaError("grid", "node count must be odd and at least 3");
        o.grid = f.grid;
    }
    if (!f.interval.empty()) {
        if (!(f.interval[1] > f.interval[0])) throw SchemaError("interval", "needs a < b");
        o.interval = std::make_pair(f.interval[0], f.interval[1]);
    }
    if (!(f.tol_scale > 0.0)) throw SchemaError("tol-scale", "must be positive");
    if (f.parallel < 1) throw SchemaError("parallel", "must be at least 1");
    o.tol_scale = f.tol_scale;
    o.seed = f.seed;
    return o;
}

std::string out_dir(const CommonFlags& f, const std::optional<std::string>& fallback = {}) {
    if (const char* env = std::getenv("GRADED_CURVES_OUT"); env && *env) return env;
    if (!f.out.empty()) return f.out;
    return fallback.value_or("");
}

std::string file_stem(const std::string& s) {
    std::string out;
    for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_';
    return out;
}

struct Job {
    CatalogEntry entry;
    CatalogCase c;
};

std::vector<std::string> failures(const CaseReport& r) {
    std::vector<std::string> out;
    for (auto& [name, a] : r.json["analyses"].items()) {
        if (a.contains("error")) out.push_back(name + ": error: " + a["error"].get<std::string>());
        if (!a.contains("expectations")) continue;
        for (const auto& e : a["expectations"])
            if (!e["pass"].get<bool>()) out.push_back(name + "." + e["key"].get<std::string>() + ": " + e.value("reason", ""));
    }
    return out;
}

// Writes reports and returns the exit code.
int emit(const std::vector<std::pair<std::string, CaseReport>>& reports, const CommonFlags& f, bool csv,
         const std::string& dir, std::ostream& out, std::ostream& err) {
    bool all_pass = true, any_error = false;
    for (const auto& [name, r] : reports) {
        all_pass = all_pass && r.passed && !r.had_error;
        any_error = any_error || r.had_error;
    }
    std::ostream& summary = dir.empty() ? err : out;
    if (!dir.empty()) {
        fs::create_directories(dir);
        for (const auto& [name, r] : reports) {
            const std::string stem = (fs::path(dir) / file_stem(name)).string();
            std::ofstream js(stem + ".json");
            if (!js) throw InputError("cannot write report '" + stem + ".json'");
            write_json(js, r.json);
            if (!csv) continue;
            for (const auto& [analysis, tables] : r.csv)
                for (const auto& [table, t] : tables) write_csv(stem + "__" + analysis + "_" + table + ".csv", t);
        }
    } else {
        json doc{{"reports", json::array()}, {"passed", all_pass}};
        for (const auto& [name, r] : reports) doc["reports"].push_back(r.json);
        write_json(out, doc);
    }
    if (f.check || !dir.empty()) {
        for (const auto& [name, r] : reports) {
            const std::vector<std::string> bad = failures(r);
            summary << (bad.empty() ? "PASS " : "FAIL ") << name << '\n';
            for (const auto& b : bad) summary << "    " << b << '\n';
        }
    }
    if (f.check) return all_pass ? kOk : kMismatch;
    return any_error ? kInputError : kOk;
}

std::vector<std::pair<std::string, CaseReport>> run_jobs(const std::vector<Job>& jobs, const RunOptions& o,
                                                         const CommonFlags& f) {
    std::vector<std::pair<std::string, CaseReport>> results(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto worker = [&]() {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                CatalogCase c = jobs[i].c;
                if (f.degree != 0) c.degree = f.degree;
                results[i] = {jobs[i].entry.name + "__" + c.name, run_case(jobs[i].entry, c, o, f.analyses)};
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min<int>(f.parallel, static_cast<int>(jobs.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

std::vector<Job> jobs_for(const std::string& ref) {
    const auto slash = ref.find('/');
    const CatalogEntry entry = catalog_get(slash == std::string::npos ? ref : ref.substr(0, slash));
    std::vector<Job> jobs;
    if (slash != std::string::npos) jobs.push_back({entry, entry.find_case(ref.substr(slash + 1))});
    else
        for (const auto& c : entry.cases) jobs.push_back({entry, c});
    return jobs;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Curves in equiregular graded manifolds: regularity, lengths, geodesics", "graded-curves"};
    app.require_subcommand(1);

    CommonFlags run_flags, cat_flags;
    std::string case_ref, scenario_file, cat_name;
    bool cat_all = false;

    CLI::App* run_cmd = app.add_subcommand("run", "Run analyses on a catalog case or a scenario file");
    run_cmd->add_option("--case", case_ref, "Catalog entry, optionally entry/case");
    run_cmd->add_option("--scenario", scenario_file, "Scenario JSON file");
    add_common(run_cmd, run_flags);

    CLI::App* cat_cmd = app.add_subcommand("catalog", "List or run catalog entries");
    cat_cmd->require_subcommand(1);
    CLI::App* list_cmd = cat_cmd->add_subcommand("list", "Print catalog names, descriptions and anchors");
    CLI::App* cat_run = cat_cmd->add_subcommand("run", "Run catalog entries");
    cat_run->add_option("name", cat_name, "Catalog entry, optionally entry/case");
    cat_run->add_flag("--all", cat_all, "Run every catalog entry");
    add_common(cat_run, cat_flags);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return kInputError;
    }

    try {
        if (*run_cmd) {
            if (case_ref.empty() == scenario_file.empty()) throw InputError("run needs exactly one of --case or --scenario");
            const RunOptions o = options_from(run_flags);
            if (!case_ref.empty())
                return emit(run_jobs(jobs_for(case_ref), o, run_flags), run_flags, run_flags.csv, out_dir(run_flags), out, err);
            const Scenario sc = load_scenario(scenario_file);
            RunOptions so = o;
            if (!so.grid) so.grid = sc.grid;
            AnalysisInput in = sc.input;
            if (run_flags.degree != 0) in.degree = run_flags.degree;
            const std::vector<std::string> list = run_flags.analyses.empty() ? sc.analyses : run_flags.analyses;
            CaseReport rep;
            if (sc.entry && sc.catalog_case) {
                CatalogCase c = *sc.catalog_case;
                c.degree = in.degree.value_or(c.degree);
                c.a = in.a;
                c.b = in.b;
                rep = run_case(*sc.entry, c, so, list);
            } else {
                rep = run_input(in, so, list);
            }
            return emit({{file_stem(fs::path(scenario_file).stem().string()), rep}}, run_flags, run_flags.csv || sc.csv,
                        out_dir(run_flags, sc.out_dir), out, err);
        }
        if (*list_cmd) {
            for (const std::string& name : catalog_names()) {
                const CatalogEntry e = catalog_get(name);
                out << name << "\t" << e.description << "\t[" << e.anchor << "]\n";
                for (const auto& c : e.cases) {
                    out << "    " << c.name << ":";
                    for (const auto& a : c.analyses) out << ' ' << a;
                    out << '\n';
                }
            }
            return kOk;
        }
        if (*cat_run) {
            if (cat_all == !cat_name.empty()) throw InputError("catalog run needs a name or --all");
            const RunOptions o = options_from(cat_flags);
            std::vector<Job> jobs;
            if (cat_all) {
                for (const std::string& name : catalog_names())
                    for (auto& j : jobs_for(name)) jobs.push_back(std::move(j));
            } else {
                jobs = jobs_for(cat_name);
            }
            return emit(run_jobs(jobs, o, cat_flags), cat_flags, cat_flags.csv, out_dir(cat_flags), out, err);
        }
    } catch (const SchemaError& e) {
        err << "schema error at " << e.field_path << ": " << e.what() << '\n';
        return kInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kOk;
}

}  // namespace graded::cli
