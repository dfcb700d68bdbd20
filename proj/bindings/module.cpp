#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "modalstab/commands.hpp"
#include "modalstab/errors.hpp"
#include "modalstab/simulate.hpp"

namespace py = pybind11;

namespace {

using modalstab::RunConfig;

py::object json_to_py(const nlohmann::ordered_json& j) {
    using value_t = nlohmann::ordered_json::value_t;
    switch (j.type()) {
        case value_t::object: {
            py::dict d;
            for (const auto& [key, value] : j.items()) d[py::str(key)] = json_to_py(value);
            return d;
        }
        case value_t::array: {
            py::list l;
            for (const auto& value : j) l.append(json_to_py(value));
            return l;
        }
        case value_t::string: return py::str(j.get<std::string>());
        case value_t::boolean: return py::bool_(j.get<bool>());
        case value_t::number_integer: return py::int_(j.get<std::int64_t>());
        case value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
        case value_t::number_float: return py::float_(j.get<double>());
        default: return py::none();
    }
}

RunConfig make_config(double alpha, double k, const std::string& b, const std::string& c) {
    RunConfig config;
    config.params = modalstab::SystemParams(alpha, k);
    config.b = modalstab::parse_profile_descriptor(b);
    config.c = modalstab::parse_profile_descriptor(c);
    config.echo = {{"system.alpha", modalstab::format_double(alpha)},
                   {"system.k", modalstab::format_double(k)},
                   {"profile.b", b},
                   {"profile.c", c}};
    return config;
}

modalstab::SystemAnalysis analyze_config(const RunConfig& config, std::optional<int> window) {
    return modalstab::analyze_system(config.params, config.b_profile(), config.c_profile(),
                                     window, config.policy);
}

py::dict analyze(double alpha, double k, const std::string& b, const std::string& c,
                 std::optional<int> window) {
    const RunConfig config = make_config(alpha, k, b, c);
    const modalstab::SystemAnalysis analysis = analyze_config(config, window);
    return json_to_py(
        modalstab::report_json(config, analysis, nullptr, nullptr, nullptr, nullptr));
}

py::dict synthesize(double alpha, double k, const std::string& b, const std::string& c,
                    const std::vector<double>& targets, bool best_effort, int truncation) {
    const RunConfig config = make_config(alpha, k, b, c);
    const modalstab::SystemAnalysis analysis = analyze_config(config, std::nullopt);
    modalstab::TargetPolicy policy;
    policy.explicit_targets = targets;
    const modalstab::FeedbackLaw law =
        modalstab::synthesize(config.params, analysis.records, policy, best_effort);
    int n = std::max(truncation, modalstab::n_max_unstable(config.params));
    for (int s : law.support) n = std::max(n, s);
    const modalstab::SpectrumReport spectrum =
        modalstab::closed_loop_spectrum(config.params, config.b_profile(), law, n);
    return json_to_py(
        modalstab::report_json(config, analysis, &law, &spectrum, nullptr, nullptr));
}

py::dict simulate(double alpha, double k, const std::string& b, const std::string& c,
                  bool closed_loop, bool best_effort, double t_final, double dt, int truncation,
                  std::optional<int> initial_mode, std::optional<std::string> initial_profile,
                  const std::vector<double>& targets) {
    const RunConfig config = make_config(alpha, k, b, c);
    const modalstab::SystemAnalysis analysis = analyze_config(config, std::nullopt);

    int n = truncation;
    modalstab::FeedbackLaw law;
    if (closed_loop) {
        modalstab::TargetPolicy policy;
        policy.explicit_targets = targets;
        law = modalstab::synthesize(config.params, analysis.records, policy, best_effort);
        for (int s : law.support) n = std::max(n, s);
    }

    modalstab::ModalState state =
        initial_profile
            ? modalstab::project_initial(modalstab::parse_profile_descriptor(*initial_profile),
                                         config.params, n)
            : modalstab::ModalState::unit_mode(n, initial_mode.value_or(1));
    const std::vector<double> grid = modalstab::make_time_grid(t_final, dt);

    bool diverged = false;
    modalstab::Trajectory traj;
    if (closed_loop) {
        try {
            traj = modalstab::simulate_closed_loop(state, config.params, config.b_profile(),
                                                   config.c_profile(), law, grid, n);
        } catch (const modalstab::DivergenceError& e) {
            traj = e.partial();
            diverged = true;
        }
    } else {
        traj = modalstab::simulate_open_loop(state, config.params, config.c_profile(), grid);
    }

    py::dict out;
    out["times"] = traj.times;
    out["y"] = traj.y;
    out["u"] = traj.u;
    out["state_norm"] = traj.state_norm;
    out["diverged"] = diverged;
    try {
        out["fitted_rate"] = modalstab::estimate_decay_rate(traj);
    } catch (const modalstab::EstimationError&) {
        out["fitted_rate"] = py::none();
    }
    return out;
}

py::dict sweep(double alpha, const std::string& b, const std::string& c, double k_min,
               double k_max, int steps, bool refine) {
    RunConfig config = make_config(alpha, std::max(k_min, k_max), b, c);
    const modalstab::SweepSummary summary =
        modalstab::sweep_output_stabilizability(config, k_min, k_max, steps, refine);
    py::list rows;
    for (const modalstab::SweepRow& row : summary.rows) {
        py::dict r;
        r["k"] = row.k;
        r["output_stabilizable"] = std::string(modalstab::to_string(row.answer));
        if (row.witness) {
            r["witness"] = *row.witness;
        } else {
            r["witness"] = py::none();
        }
        rows.append(r);
    }
    py::dict out;
    out["rows"] = rows;
    out["bracket_low"] = summary.bracket_low ? py::object(py::float_(*summary.bracket_low))
                                             : py::object(py::none());
    out["bracket_high"] = summary.bracket_high ? py::object(py::float_(*summary.bracket_high))
                                               : py::object(py::none());
    out["refined_boundary"] = summary.refined_boundary
                                  ? py::object(py::float_(*summary.refined_boundary))
                                  : py::object(py::none());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectral controllability and stabilizability analysis of the 1-D "
              "advection-diffusion-reaction equation";
    m.attr("__version__") = modalstab::kToolVersion;

    // Most-derived exceptions registered last so their translators run first.
    py::register_exception<modalstab::Error>(m, "ModalstabError", PyExc_RuntimeError);
    py::register_exception<modalstab::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<modalstab::NotStateStabilizableError>(m, "NotStateStabilizableError",
                                                                 PyExc_RuntimeError);

    m.def("eigenvalue",
          [](double alpha, double k, int n) {
              return modalstab::eigenvalue(modalstab::SystemParams(alpha, k), n);
          },
          py::arg("alpha"), py::arg("k"), py::arg("n"),
          "n-th eigenvalue k - alpha^2/4 - n^2 pi^2");
    m.def("coefficient",
          [](double alpha, const std::string& profile, int n) {
              return modalstab::coefficient(modalstab::SystemParams(alpha, 0.0),
                                            modalstab::parse_profile_descriptor(profile), n);
          },
          py::arg("alpha"), py::arg("profile"), py::arg("n"),
          "Weighted Fourier coefficient of a profile descriptor against mode n");
    m.def("critical_k",
          [](double alpha, const std::string& b, const std::string& c) {
              const RunConfig config = make_config(alpha, 0.0, b, c);
              return analyze_config(config, std::nullopt).critical_k;
          },
          py::arg("alpha"), py::arg("b"), py::arg("c"),
          "Supremum of reaction rates keeping the output stabilizable (inf if none)");

    m.def("analyze", &analyze, py::arg("alpha"), py::arg("k"), py::arg("b"), py::arg("c"),
          py::arg("window") = py::none(),
          "Full analysis report as a dict (modes, index sets, verdicts, critical_k)");
    m.def("synthesize", &synthesize, py::arg("alpha"), py::arg("k"), py::arg("b"), py::arg("c"),
          py::arg("targets") = std::vector<double>{}, py::arg("best_effort") = false,
          py::arg("truncation") = 64,
          "Analysis report extended with feedback gains and the verified spectrum");
    m.def("simulate", &simulate, py::arg("alpha"), py::arg("k"), py::arg("b"), py::arg("c"),
          py::arg("closed_loop") = false, py::arg("best_effort") = false,
          py::arg("t_final") = 8.0, py::arg("dt") = 0.01, py::arg("truncation") = 64,
          py::arg("initial_mode") = py::none(), py::arg("initial_profile") = py::none(),
          py::arg("targets") = std::vector<double>{},
          "Trajectory dict: times, y, u, state_norm, diverged, fitted_rate");
    m.def("sweep", &sweep, py::arg("alpha"), py::arg("b"), py::arg("c"), py::arg("k_min") = 0.0,
          py::arg("k_max") = 50.0, py::arg("steps") = 51, py::arg("refine") = true,
          "Output-stabilizability verdicts over a k grid with optional bisection refinement");
}
