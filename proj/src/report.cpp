#include "modalstab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "modalstab/errors.hpp"

namespace modalstab {

namespace {

using nlohmann::ordered_json;

ordered_json pattern_json(const PeriodicPattern& pat) {
    ordered_json j;
    j["period"] = pat.period;
    j["residues"] = pat.residues;
    return j;
}

ordered_json verdict_json(const VerdictComponent& v) {
    ordered_json j;
    j["answer"] = to_string(v.answer);
    j["certainty"] = to_string(v.certainty);
    if (v.witness) j["witness"] = *v.witness;
    if (v.window) j["window"] = *v.window;
    if (!v.borderline_modes.empty()) j["borderline_modes"] = v.borderline_modes;
    return j;
}

void verdict_text(std::ostream& out, const char* name, const VerdictComponent& v) {
    out << "  " << name << ": " << to_string(v.answer);
    if (v.witness) out << " (witness mode " << *v.witness << ")";
    if (v.window) out << " (window " << *v.window << ")";
    if (!v.borderline_modes.empty()) {
        out << " (borderline:";
        for (int n : v.borderline_modes) out << ' ' << n;
        out << ")";
    }
    out << " [" << to_string(v.certainty) << "]\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::ordered_json report_json(const RunConfig& config, const SystemAnalysis& analysis,
                                   const FeedbackLaw* law, const SpectrumReport* spectrum,
                                   const SimulationSummary* sim, const SweepSummary* sweep) {
    ordered_json j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};

    ordered_json echo = ordered_json::object();
    for (const auto& [key, value] : config.echo) echo[key] = value;
    j["config"] = std::move(echo);

    j["system"] = {{"alpha", analysis.params.alpha},
                   {"k", analysis.params.k},
                   {"n_max_unstable", n_max_unstable(analysis.params)},
                   {"window", analysis.window}};

    ordered_json modes = ordered_json::array();
    for (const ModeRecord& r : analysis.records) {
        ordered_json m;
        m["n"] = r.n;
        m["lambda"] = r.lambda;
        m["b"] = r.b;
        m["c"] = r.c;
        m["b_zero"] = to_string(r.b_zero.kind);
        m["c_zero"] = to_string(r.c_zero.kind);
        if (r.b_zero.borderline()) m["b_borderline"] = true;
        if (r.c_zero.borderline()) m["c_borderline"] = true;
        modes.push_back(std::move(m));
    }
    j["modes"] = std::move(modes);

    ordered_json sets;
    sets["controllable"] = analysis.summary.controllable;
    sets["uncontrollable"] = analysis.summary.uncontrollable;
    sets["observable"] = analysis.summary.observable;
    sets["k_set"] = analysis.summary.k_set;
    if (analysis.summary.periodic_b_zero) {
        sets["periodic_b_zero"] = pattern_json(*analysis.summary.periodic_b_zero);
    }
    if (analysis.summary.periodic_c_zero) {
        sets["periodic_c_zero"] = pattern_json(*analysis.summary.periodic_c_zero);
    }
    if (analysis.summary.periodic_k) {
        sets["periodic_k"] = pattern_json(*analysis.summary.periodic_k);
    }
    j["index_sets"] = std::move(sets);

    j["verdicts"] = {{"approx_controllable", verdict_json(analysis.verdict.approx_controllable)},
                     {"state_stabilizable", verdict_json(analysis.verdict.state_stabilizable)},
                     {"output_stabilizable", verdict_json(analysis.verdict.output_stabilizable)}};

    if (std::isfinite(analysis.critical_k)) j["critical_k"] = analysis.critical_k;

    if (law != nullptr) {
        ordered_json f;
        f["support"] = law->support;
        f["gains"] = law->gains;
        f["targets"] = law->targets;
        if (spectrum != nullptr) {
            f["spectrum"] = {{"placed", spectrum->placed},
                             {"untouched", spectrum->untouched},
                             {"max_real_part", spectrum->max_real_part},
                             {"max_placement_error", spectrum->max_placement_error},
                             {"max_imag_part", spectrum->max_imag_part}};
        }
        j["feedback"] = std::move(f);
    }

    if (sim != nullptr) {
        ordered_json s;
        s["mode"] = sim->closed_loop ? "closed_loop" : "open_loop";
        if (sim->best_effort) s["best_effort"] = true;
        s["diverged"] = sim->diverged;
        s["truncation"] = sim->truncation;
        s["t_final"] = sim->t_final;
        s["dt"] = sim->dt;
        s["samples"] = sim->samples;
        if (sim->fitted_rate) s["fitted_rate"] = *sim->fitted_rate;
        if (!sim->trajectory_csv.empty()) s["trajectory_csv"] = sim->trajectory_csv;
        j["simulation"] = std::move(s);
    }

    if (sweep != nullptr) {
        ordered_json s;
        ordered_json rows = ordered_json::array();
        for (const SweepRow& row : sweep->rows) {
            ordered_json r;
            r["k"] = row.k;
            r["output_stabilizable"] = to_string(row.answer);
            if (row.witness) r["witness"] = *row.witness;
            rows.push_back(std::move(r));
        }
        s["rows"] = std::move(rows);
        if (sweep->bracket_low) s["bracket_low"] = *sweep->bracket_low;
        if (sweep->bracket_high) s["bracket_high"] = *sweep->bracket_high;
        if (sweep->refined_boundary) s["refined_boundary"] = *sweep->refined_boundary;
        if (!sweep->sweep_csv.empty()) s["sweep_csv"] = sweep->sweep_csv;
        j["sweep"] = std::move(s);
    }
    return j;
}

std::string report_text(const RunConfig& config, const SystemAnalysis& analysis,
                        const FeedbackLaw* law, const SpectrumReport* spectrum,
                        const SimulationSummary* sim, const SweepSummary* sweep) {
    std::ostringstream out;
    out.precision(12);
    out << kToolName << " " << kToolVersion << "\n";
    out << "system: alpha = " << analysis.params.alpha << ", k = " << analysis.params.k
        << ", unstable modes = " << n_max_unstable(analysis.params)
        << ", window = " << analysis.window << "\n";
    out << "profiles: b = " << config.b_profile().describe()
        << ", c = " << config.c_profile().describe() << "\n";

    out << "modes (first " << std::min<std::size_t>(analysis.records.size(), 12) << "):\n";
    out << "    n        lambda             b_n             c_n  flags\n";
    std::size_t shown = 0;
    for (const ModeRecord& r : analysis.records) {
        if (shown++ == 12) break;
        char line[160];
        std::snprintf(line, sizeof(line), "  %3d  %12.6g  %14.8g  %14.8g  %s%s%s%s\n", r.n,
                      r.lambda, r.b, r.c, r.b_zero.zero() ? "b=0 " : "",
                      r.c_zero.zero() ? "c=0 " : "", r.b_zero.borderline() ? "b? " : "",
                      r.c_zero.borderline() ? "c? " : "");
        out << line;
    }

    auto set_line = [&out](const char* name, const std::vector<int>& v) {
        out << "  " << name << " = {";
        const std::size_t shown_max = 16;
        for (std::size_t i = 0; i < v.size() && i < shown_max; ++i) {
            out << (i ? ", " : "") << v[i];
        }
        if (v.size() > shown_max) out << ", ...";
        out << "}\n";
    };
    out << "index sets (window " << analysis.summary.window << "):\n";
    set_line("controllable", analysis.summary.controllable);
    set_line("uncontrollable", analysis.summary.uncontrollable);
    set_line("observable", analysis.summary.observable);
    set_line("k_set", analysis.summary.k_set);
    if (analysis.summary.periodic_k) {
        out << "  periodic k set: period " << analysis.summary.periodic_k->period
            << ", residues {";
        for (std::size_t i = 0; i < analysis.summary.periodic_k->residues.size(); ++i) {
            out << (i ? ", " : "") << analysis.summary.periodic_k->residues[i];
        }
        out << "} (all n)\n";
    }

    out << "verdicts:\n";
    verdict_text(out, "approx_controllable", analysis.verdict.approx_controllable);
    verdict_text(out, "state_stabilizable", analysis.verdict.state_stabilizable);
    verdict_text(out, "output_stabilizable", analysis.verdict.output_stabilizable);
    if (std::isfinite(analysis.critical_k)) {
        out << "critical k (output verdict flips at): " << analysis.critical_k << "\n";
    } else {
        out << "critical k: none (no observed uncontrollable mode)\n";
    }

    if (law != nullptr) {
        if (law->empty()) {
            out << "feedback: empty law (already stable)\n";
        } else {
            out << "feedback:\n";
            for (std::size_t i = 0; i < law->support.size(); ++i) {
                out << "  mode " << law->support[i] << ": gain " << law->gains[i]
                    << ", target " << law->targets[i] << "\n";
            }
            if (spectrum != nullptr) {
                out << "  closed-loop spectrum: max real part " << spectrum->max_real_part
                    << ", max placement error " << spectrum->max_placement_error << "\n";
            }
        }
    }

    if (sim != nullptr) {
        out << "simulation: " << (sim->closed_loop ? "closed loop" : "open loop");
        if (sim->best_effort) out << " (best effort)";
        out << ", truncation " << sim->truncation << ", t_final " << sim->t_final << ", dt "
            << sim->dt << ", samples " << sim->samples << "\n";
        if (sim->diverged) out << "  diverged: state norm crossed the guard\n";
        if (sim->fitted_rate) out << "  fitted output rate: " << *sim->fitted_rate << "\n";
        if (!sim->trajectory_csv.empty()) out << "  trajectory: " << sim->trajectory_csv << "\n";
    }

    if (sweep != nullptr) {
        out << "sweep: " << sweep->rows.size() << " grid points";
        if (!sweep->rows.empty()) {
            out << " over k in [" << sweep->rows.front().k << ", " << sweep->rows.back().k << "]";
        }
        out << "\n";
        if (sweep->bracket_low && sweep->bracket_high) {
            out << "  verdict flips between k = " << *sweep->bracket_low << " and "
                << *sweep->bracket_high << "\n";
        }
        if (sweep->refined_boundary) {
            out << "  refined boundary: " << *sweep->refined_boundary << "\n";
        }
        if (!sweep->sweep_csv.empty()) out << "  rows: " << sweep->sweep_csv << "\n";
    }
    return out.str();
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ostringstream out;
    out << "t,y,u,state_norm\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out << format_double(traj.times[i]) << ',' << format_double(traj.y[i]) << ','
            << format_double(traj.u[i]) << ',' << format_double(traj.state_norm[i]) << '\n';
    }
    write_file(path, out.str());
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "k,output_stabilizable,witness\n";
    for (const SweepRow& row : rows) {
        out << format_double(row.k) << ',' << to_string(row.answer) << ',';
        if (row.witness) out << *row.witness;
        out << '\n';
    }
    write_file(path, out.str());
}

}  // namespace modalstab
