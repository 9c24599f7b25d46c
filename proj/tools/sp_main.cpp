#include <filesystem>
#include <iostream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "sp/report.hpp"

namespace fs = std::filesystem;

namespace {

int do_run(const std::string& config_path, const std::string& out_override,
           std::uint64_t seed_override, bool have_seed) {
    sp::ProblemConfig cfg = sp::load_config(config_path);
    if (!out_override.empty()) cfg.out_dir = out_override;
    if (have_seed) cfg.run.seed = seed_override;
    fs::create_directories(cfg.out_dir);

    try {
        {
            sp::ModelManifold M = sp::build_geometry(cfg.geometry);
            sp::write_json(cfg.out_dir + "/" + cfg.name + "_geometry.json",
                           sp::manifold_summary(M));
        }
        sp::RunReport rep = sp::run_config(cfg);
        sp::write_json(cfg.out_dir + "/" + cfg.name + "_report.json", sp::to_json(rep));
        if (rep.ran_trace)
            sp::save_trace_csv(cfg.out_dir + "/" + cfg.name + "_trace.csv", rep.trace,
                               cfg.run.monitors);
        std::cout << cfg.name << ": route=" << rep.route_used
                  << " certified=" << (rep.certified ? "yes" : "no");
        if (rep.ran_contractivity)
            std::cout << " contractivity_violations=" << rep.contractivity.violations.size();
        if (rep.ran_sector) std::cout << " sector_pass=" << (rep.sector.pass ? "yes" : "no");
        if (rep.ran_stationary) std::cout << " stationary_ratio=" << rep.stationary_ratio;
        if (rep.ran_mms) std::cout << " mms_order=" << rep.mms.final_order;
        std::cout << "\n";
        return rep.certified ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << cfg.name << ": " << e.what() << "\n";
        return 1;
    }
}

int do_check(const std::string& config_path) {
    sp::ProblemConfig cfg = sp::load_config(config_path);
    sp::RunReport rep = sp::run_hypotheses(cfg);
    std::cout << sp::to_json(rep.hyp).dump(2) << "\n";
    for (const auto& note : rep.notes) std::cout << "note: " << note << "\n";
    if (!rep.certified) {
        std::cout << "FAIL: " << rep.hyp.first_failure << "\n";
        return 1;
    }
    std::cout << "PASS (route " << rep.route_used << ")\n";
    return 0;
}

int do_mms(const std::string& config_path, int levels, const std::string& out_override) {
    sp::ProblemConfig cfg = sp::load_config(config_path);
    if (!out_override.empty()) cfg.out_dir = out_override;
    fs::create_directories(cfg.out_dir);
    sp::MmsTable t = sp::run_mms(cfg, cfg.run.mms_solution, levels);
    std::cout << "level    n        dt           error        order\n";
    for (const auto& r : t.rows) {
        std::printf("%5d %6lld %12.4e %12.5e %8.3f\n", r.level, static_cast<long long>(r.n),
                    r.dt, r.error, r.order);
    }
    std::printf("least-squares order: %.3f%s\n", t.final_order,
                t.monotone ? "" : "  [warning: non-monotone decay]");
    sp::json j;
    j["rows"] = sp::json::array();
    for (const auto& r : t.rows)
        j["rows"].push_back({{"level", r.level}, {"n", r.n}, {"dt", r.dt},
                             {"error", r.error}, {"order", r.order}});
    j["final_order"] = t.final_order;
    sp::write_json(cfg.out_dir + "/" + cfg.name + "_mms.json", j);
    return t.monotone ? 0 : 1;
}

int do_sweep(const std::string& batch_path, const std::string& out_override, int threads) {
    std::ifstream in(batch_path);
    if (!in.good()) {
        std::cerr << "cannot open batch file " << batch_path << "\n";
        return 1;
    }
    sp::json batch;
    in >> batch;
    std::vector<std::string> paths = batch.get<std::vector<std::string>>();
    std::vector<int> results(paths.size(), 0);

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t k = next.fetch_add(1);
            if (k >= paths.size()) return;
            results[k] = do_run(paths[k], out_override, 0, false);
        }
    };
    std::vector<std::thread> pool;
    const int nt = std::max(1, threads);
    for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    int rc = 0;
    for (size_t k = 0; k < paths.size(); ++k) {
        if (results[k] != 0) {
            std::cerr << "sweep: " << paths[k] << " failed\n";
            rc = 1;
        }
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sp: singular elliptic operators on model singular geometries"};
    app.require_subcommand(1);

    std::string config, out_dir, batch;
    std::uint64_t seed = 0;
    bool have_seed = false;
    int levels = 3, threads = 1;

    auto* run = app.add_subcommand("run", "certify, probe and evolve a configured problem");
    run->add_option("config", config)->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--seed", seed, "override probe RNG seed")->each([&](const std::string&) {
        have_seed = true;
    });
    run->add_option("--threads", threads, "accepted for symmetry; runs are sequential");

    auto* check = app.add_subcommand("check", "run the hypothesis checklist only");
    check->add_option("config", config)->required()->check(CLI::ExistingFile);

    auto* mms = app.add_subcommand("mms", "manufactured-solution convergence study");
    mms->add_option("config", config)->required()->check(CLI::ExistingFile);
    mms->add_option("--levels", levels, "refinement levels (>= 3)");
    mms->add_option("--out", out_dir, "output directory");

    auto* sweep = app.add_subcommand("sweep", "run a batch of configs in parallel");
    sweep->add_option("batch", batch)->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--threads", threads, "parallel runs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return do_run(config, out_dir, seed, have_seed);
        if (*check) return do_check(config);
        if (*mms) return do_mms(config, levels, out_dir);
        if (*sweep) return do_sweep(batch, out_dir, threads);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
