#include "modalstab/commands.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "modalstab/errors.hpp"
#include "modalstab/simulate.hpp"

namespace modalstab {

namespace {

SystemAnalysis analyze_from_config(const RunConfig& config) {
    return analyze_system(config.params, config.b_profile(), config.c_profile(), config.window,
                          config.policy);
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void emit_report(const RunConfig& config, const SystemAnalysis& analysis, const FeedbackLaw* law,
                 const SpectrumReport* spectrum, const SimulationSummary* sim,
                 const SweepSummary* sweep, const CommandOptions& opt, std::ostream& out) {
    std::filesystem::create_directories(opt.out_dir);
    const std::string json_path = join_path(opt.out_dir, "report.json");
    std::ofstream json_out(json_path, std::ios::binary);
    if (!json_out) throw Error("cannot open '" + json_path + "' for writing");
    json_out << report_json(config, analysis, law, spectrum, sim, sweep).dump(2) << "\n";
    if (!json_out) throw Error("write to '" + json_path + "' failed");
    out << report_text(config, analysis, law, spectrum, sim, sweep);
    out << "report: " << json_path << "\n";
}

int assertion_exit(const SystemAnalysis& analysis, const CommandOptions& opt, std::ostream& err) {
    if (opt.assert_output_stabilizable &&
        analysis.verdict.output_stabilizable.answer == Answer::no) {
        err << "assertion failed: output is not stabilizable (witness mode "
            << analysis.verdict.output_stabilizable.witness.value_or(-1) << ")\n";
        return kExitAssertion;
    }
    return kExitOk;
}

/// Law + verified spectrum for the synthesize and closed-loop simulate paths.
struct SynthesisResult {
    FeedbackLaw law;
    SpectrumReport spectrum;
    int truncation = 0;
};

SynthesisResult synthesize_from_analysis(const RunConfig& config, const SystemAnalysis& analysis,
                                         bool best_effort) {
    SynthesisResult result;
    TargetPolicy policy;
    policy.explicit_targets = config.feedback_targets;
    result.law = synthesize(config.params, analysis.records, policy, best_effort);
    int n = std::max(config.truncation, n_max_unstable(config.params));
    for (int s : result.law.support) n = std::max(n, s);
    result.truncation = n;
    result.spectrum =
        closed_loop_spectrum(config.params, config.b_profile(), result.law, result.truncation);
    return result;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const NotStateStabilizableError& e) {
        err << "error: " << e.what() << "\n";
        err << "hint: pass --best-effort to act on the reachable modes anyway\n";
        return kExitAssertion;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace

SweepSummary sweep_output_stabilizability(const RunConfig& config, double k_min, double k_max,
                                          int steps, bool refine, int threads) {
    if (steps < 1) throw ConfigError("sweep needs at least one step");
    if (steps == 1) {
        if (k_min != k_max) throw ConfigError("single-step sweep needs k_min == k_max");
    } else if (!(k_min < k_max)) {
        throw ConfigError("sweep needs k_min < k_max");
    }
    if (!std::isfinite(k_min) || !std::isfinite(k_max)) {
        throw ConfigError("sweep bounds must be finite");
    }

    // Coefficients and zero classifications do not depend on k, so classify
    // once at the largest k (widest unstable range) and only swap eigenvalues
    // per grid point.
    const SystemParams top(config.params.alpha, std::max(k_max, config.params.k));
    const int window =
        std::max(config.window.value_or(default_window(top)), n_max_unstable(top));
    const std::vector<ModeRecord> base = classify_modes(top, config.b_profile(),
                                                        config.c_profile(), window,
                                                        config.policy);
    const IndexSetSummary sets =
        build_index_sets(top, base, config.b_profile(), config.c_profile());

    auto verdict_at = [&](double k) {
        const SystemParams params(config.params.alpha, k);
        std::vector<ModeRecord> records = base;
        for (ModeRecord& r : records) r.lambda = eigenvalue(params, r.n);
        return decide_output_stabilizability(params, records, sets);
    };

    SweepSummary summary;
    summary.rows.resize(static_cast<std::size_t>(steps));
    auto k_at = [&](int i) {
        if (steps == 1) return k_min;
        if (i == steps - 1) return k_max;
        return k_min + (k_max - k_min) * (static_cast<double>(i) / (steps - 1));
    };

    unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(steps));
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < steps; i = next.fetch_add(1)) {
                const double k = k_at(i);
                const VerdictComponent v = verdict_at(k);
                SweepRow& row = summary.rows[static_cast<std::size_t>(i)];
                row.k = k;
                row.answer = v.answer;
                row.witness = v.witness;
            }
        });
    }
    for (std::thread& t : pool) t.join();

    for (std::size_t i = 0; i < summary.rows.size(); ++i) {
        if (summary.rows[i].answer != Answer::no) continue;
        summary.bracket_high = summary.rows[i].k;
        if (i > 0 && summary.rows[i - 1].answer == Answer::yes) {
            summary.bracket_low = summary.rows[i - 1].k;
        }
        break;
    }

    if (refine && summary.bracket_low && summary.bracket_high) {
        double lo = *summary.bracket_low;
        double hi = *summary.bracket_high;
        while (hi - lo > 1e-9) {
            const double mid = 0.5 * (lo + hi);
            const Answer a = verdict_at(mid).answer;
            if (a == Answer::yes) {
                lo = mid;
            } else if (a == Answer::no) {
                hi = mid;
            } else {
                break;  // borderline classification: stop rather than guess
            }
        }
        summary.refined_boundary = 0.5 * (lo + hi);
    }
    return summary;
}

int run_analyze(const RunConfig& config, const CommandOptions& opt, std::ostream& out,
                std::ostream& err) {
    return guarded(err, [&]() {
        const SystemAnalysis analysis = analyze_from_config(config);
        emit_report(config, analysis, nullptr, nullptr, nullptr, nullptr, opt, out);
        return assertion_exit(analysis, opt, err);
    });
}

int run_synthesize(const RunConfig& config, const CommandOptions& opt, std::ostream& out,
                   std::ostream& err) {
    return guarded(err, [&]() {
        const SystemAnalysis analysis = analyze_from_config(config);
        SynthesisResult synthesis;
        try {
            synthesis = synthesize_from_analysis(config, analysis, opt.best_effort);
        } catch (const NotStateStabilizableError&) {
            // Publish the analysis before refusing, so the verdict is on disk.
            emit_report(config, analysis, nullptr, nullptr, nullptr, nullptr, opt, out);
            throw;
        }
        emit_report(config, analysis, &synthesis.law, &synthesis.spectrum, nullptr, nullptr, opt,
                    out);
        return assertion_exit(analysis, opt, err);
    });
}

int run_simulate(const RunConfig& config, const CommandOptions& opt, std::ostream& out,
                 std::ostream& err) {
    return guarded(err, [&]() {
        const SystemAnalysis analysis = analyze_from_config(config);

        SimulationSummary sim;
        sim.closed_loop = opt.closed_loop;
        sim.best_effort = opt.best_effort;
        sim.t_final = config.t_final;
        sim.dt = config.dt;

        std::optional<SynthesisResult> synthesis;
        int truncation = config.truncation;
        if (opt.closed_loop) {
            try {
                synthesis = synthesize_from_analysis(config, analysis, opt.best_effort);
            } catch (const NotStateStabilizableError&) {
                emit_report(config, analysis, nullptr, nullptr, nullptr, nullptr, opt, out);
                throw;
            }
            for (int s : synthesis->law.support) truncation = std::max(truncation, s);
        }
        sim.truncation = truncation;

        const ModalState state =
            config.initial.is_mode()
                ? ModalState::unit_mode(truncation, *config.initial.mode)
                : project_initial(*config.initial.profile, config.params, truncation);
        const std::vector<double> grid = make_time_grid(config.t_final, config.dt);

        Trajectory traj;
        if (opt.closed_loop) {
            try {
                traj = simulate_closed_loop(state, config.params, config.b_profile(),
                                            config.c_profile(), synthesis->law, grid, truncation);
            } catch (const DivergenceError& e) {
                traj = e.partial();
                sim.diverged = true;
            }
        } else {
            traj = simulate_open_loop(state, config.params, config.c_profile(), grid);
        }
        sim.samples = traj.size();

        std::filesystem::create_directories(opt.out_dir);
        const std::string csv_path = join_path(opt.out_dir, "trajectory.csv");
        write_trajectory_csv(csv_path, traj);
        sim.trajectory_csv = csv_path;

        try {
            sim.fitted_rate = estimate_decay_rate(traj);
        } catch (const EstimationError&) {
            // Too few usable samples; the report simply omits the rate.
        }

        emit_report(config, analysis, synthesis ? &synthesis->law : nullptr,
                    synthesis ? &synthesis->spectrum : nullptr, &sim, nullptr, opt, out);
        return assertion_exit(analysis, opt, err);
    });
}

int run_sweep(const RunConfig& config, const CommandOptions& opt, std::ostream& out,
              std::ostream& err) {
    return guarded(err, [&]() {
        const SystemAnalysis analysis = analyze_from_config(config);
        SweepSummary sweep = sweep_output_stabilizability(config, opt.k_min, opt.k_max, opt.steps,
                                                          opt.refine, opt.threads);
        std::filesystem::create_directories(opt.out_dir);
        const std::string csv_path = join_path(opt.out_dir, "sweep.csv");
        write_sweep_csv(csv_path, sweep.rows);
        sweep.sweep_csv = csv_path;
        emit_report(config, analysis, nullptr, nullptr, nullptr, &sweep, opt, out);
        return assertion_exit(analysis, opt, err);
    });
}

}  // namespace modalstab
