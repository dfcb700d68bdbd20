#include "modalstab/mode_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "modalstab/errors.hpp"

namespace modalstab {

namespace {

/// Three-valued answer for "is this mode in the set": borderline coefficient
/// classifications make membership undecidable at the working precision.
enum class Tri { no, yes, maybe };

struct Membership {
    Tri in_set = Tri::no;
    bool all_exact = true;  // every classification actually consulted was exact
};

/// Membership of a mode in the uncontrollable-but-observable set
/// {n : b_n = 0, c_n != 0}. Consults the cheapest certainty that settles the
/// question, so an irrelevant borderline coefficient does not poison the
/// verdict.
Membership in_k_set(const ModeRecord& r) {
    Membership m;
    if (!r.b_zero.borderline() && !r.b_zero.zero()) {
        m.in_set = Tri::no;  // definitely controllable
        m.all_exact = r.b_zero.exact();
        return m;
    }
    if (!r.c_zero.borderline() && r.c_zero.zero()) {
        m.in_set = Tri::no;  // definitely invisible to the output
        m.all_exact = r.c_zero.exact();
        return m;
    }
    m.all_exact = r.b_zero.exact() && r.c_zero.exact();
    if (!r.b_zero.borderline() && !r.c_zero.borderline()) {
        m.in_set = (r.b_zero.zero() && !r.c_zero.zero()) ? Tri::yes : Tri::no;
    } else {
        m.in_set = Tri::maybe;
    }
    return m;
}

/// Membership in the uncontrollable set {n : b_n = 0}.
Membership in_uncontrollable_set(const ModeRecord& r) {
    Membership m;
    m.all_exact = r.b_zero.exact();
    if (r.b_zero.borderline()) {
        m.in_set = Tri::maybe;
    } else {
        m.in_set = r.b_zero.zero() ? Tri::yes : Tri::no;
    }
    return m;
}

/// Shared verdict assembly: an unstable mode that definitely belongs to the
/// blocking set defeats the property; otherwise any undecidable membership
/// forces "unknown"; otherwise the property holds.
template <typename MembershipFn>
VerdictComponent decide_over_unstable(const std::vector<ModeRecord>& records,
                                      MembershipFn&& membership) {
    VerdictComponent v;
    bool all_exact = true;
    std::optional<int> witness;
    std::vector<int> borderline;
    for (const ModeRecord& r : records) {
        if (r.lambda < 0.0) break;  // eigenvalues decrease in n
        const Membership m = membership(r);
        all_exact = all_exact && m.all_exact;
        if (m.in_set == Tri::yes && !witness) witness = r.n;
        if (m.in_set == Tri::maybe) borderline.push_back(r.n);
    }
    v.certainty = all_exact ? Certainty::exact : Certainty::numeric;
    if (witness) {
        v.answer = Answer::no;
        v.witness = witness;
    } else if (!borderline.empty()) {
        v.answer = Answer::unknown;
        v.borderline_modes = std::move(borderline);
    } else {
        v.answer = Answer::yes;
    }
    return v;
}

PeriodicPattern residue_pattern(std::int64_t period, const Rational& p, const Rational& q) {
    PeriodicPattern pat;
    pat.period = period;
    for (std::int64_t r = 0; r < period; ++r) {
        const std::int64_t representative = (r == 0) ? period : r;
        if (indicator_zero_exact(p, q, representative)) pat.residues.push_back(r);
    }
    return pat;
}

}  // namespace

bool PeriodicPattern::contains(std::int64_t n) const noexcept {
    if (period <= 0 || n < 1) return false;
    const std::int64_t r = n % period;
    return std::find(residues.begin(), residues.end(), r) != residues.end();
}

std::optional<std::int64_t> PeriodicPattern::min_member() const noexcept {
    std::optional<std::int64_t> best;
    for (std::int64_t r : residues) {
        const std::int64_t candidate = (r == 0) ? period : r;
        if (!best || candidate < *best) best = candidate;
    }
    return best;
}

const char* to_string(Answer answer) noexcept {
    switch (answer) {
        case Answer::yes: return "yes";
        case Answer::yes_up_to: return "yes_up_to";
        case Answer::no: return "no";
        case Answer::unknown: return "unknown";
    }
    return "?";
}

const char* to_string(Certainty certainty) noexcept {
    return certainty == Certainty::exact ? "exact" : "numeric";
}

std::vector<ModeRecord> classify_modes(const SystemParams& params, const Profile& b,
                                       const Profile& c, int window,
                                       const ThresholdPolicy& policy,
                                       const QuadratureSettings& settings) {
    if (window < 1) throw ConfigError("analysis window must be >= 1");
    const int n_unstable = n_max_unstable(params);
    if (window < n_unstable) {
        throw ConfigError("analysis window " + std::to_string(window) +
                          " misses unstable modes; need at least " + std::to_string(n_unstable));
    }

    // One threshold per profile, shared by every mode in the window:
    // tau_rel times the largest coefficient magnitude seen.
    auto classify_profile = [&](const Profile& profile) {
        std::vector<ZeroCertainty> out(static_cast<std::size_t>(window));
        if (params.alpha == 0.0 && profile.is_indicator()) {
            for (int n = 1; n <= window; ++n) {
                ZeroCertainty zc;
                zc.kind = indicator_zero_exact(profile.lower(), profile.upper(), n)
                              ? ZeroKind::exact_zero
                              : ZeroKind::exact_nonzero;
                zc.magnitude =
                    std::abs(coeff_indicator(params, profile.lower(), profile.upper(), n));
                out[static_cast<std::size_t>(n - 1)] = zc;
            }
            return out;
        }
        const int scan = std::max(window, policy.window);
        std::vector<double> coeffs(static_cast<std::size_t>(scan));
        double max_mag = 0.0;
        for (int n = 1; n <= scan; ++n) {
            coeffs[static_cast<std::size_t>(n - 1)] = coefficient(params, profile, n, settings);
            max_mag = std::max(max_mag, std::abs(coeffs[static_cast<std::size_t>(n - 1)]));
        }
        const double threshold = policy.tau_rel * max_mag;
        for (int n = 1; n <= window; ++n) {
            out[static_cast<std::size_t>(n - 1)] =
                classify_magnitude(coeffs[static_cast<std::size_t>(n - 1)], threshold);
        }
        return out;
    };

    const std::vector<ZeroCertainty> b_cert = classify_profile(b);
    const std::vector<ZeroCertainty> c_cert = classify_profile(c);

    std::vector<ModeRecord> records(static_cast<std::size_t>(window));
    for (int n = 1; n <= window; ++n) {
        ModeRecord& r = records[static_cast<std::size_t>(n - 1)];
        r.n = n;
        r.lambda = eigenvalue(params, n);
        r.b = coefficient(params, b, n, settings);
        r.c = coefficient(params, c, n, settings);
        r.b_zero = b_cert[static_cast<std::size_t>(n - 1)];
        r.c_zero = c_cert[static_cast<std::size_t>(n - 1)];
    }
    return records;
}

IndexSetSummary build_index_sets(const SystemParams& params,
                                 const std::vector<ModeRecord>& records, const Profile& b,
                                 const Profile& c) {
    IndexSetSummary s;
    s.window = static_cast<int>(records.size());
    for (const ModeRecord& r : records) {
        if (r.b_zero.zero()) {
            s.uncontrollable.push_back(r.n);
        } else {
            s.controllable.push_back(r.n);
        }
        if (!r.c_zero.zero()) {
            s.observable.push_back(r.n);
            if (r.b_zero.zero()) s.k_set.push_back(r.n);
        }
    }

    if (params.alpha == 0.0 && b.is_indicator() && c.is_indicator()) {
        const std::int64_t pb = zero_pattern_period(b.lower(), b.upper());
        const std::int64_t pc = zero_pattern_period(c.lower(), c.upper());
        s.periodic_b_zero = residue_pattern(pb, b.lower(), b.upper());
        s.periodic_c_zero = residue_pattern(pc, c.lower(), c.upper());

        // K is periodic with period lcm(pb, pc): membership needs b zero and
        // c nonzero, and both patterns repeat by then.
        const std::int64_t period = lcm_checked(pb, pc);
        auto member = [&](std::int64_t n) {
            return indicator_zero_exact(b.lower(), b.upper(), n) &&
                   !indicator_zero_exact(c.lower(), c.upper(), n);
        };
        PeriodicPattern k_pat;
        k_pat.period = period;
        for (std::int64_t r = 0; r < period; ++r) {
            const std::int64_t representative = (r == 0) ? period : r;
            if (member(representative)) k_pat.residues.push_back(r);
        }
        s.periodic_k = std::move(k_pat);
    }
    return s;
}

VerdictComponent decide_output_stabilizability(const SystemParams&,
                                               const std::vector<ModeRecord>& records,
                                               const IndexSetSummary&) {
    return decide_over_unstable(records, [](const ModeRecord& r) { return in_k_set(r); });
}

VerdictComponent decide_state_stabilizability(const SystemParams&,
                                              const std::vector<ModeRecord>& records,
                                              const IndexSetSummary&) {
    return decide_over_unstable(records,
                                [](const ModeRecord& r) { return in_uncontrollable_set(r); });
}

VerdictComponent decide_approx_controllability(const std::vector<ModeRecord>& records,
                                               const IndexSetSummary& summary) {
    VerdictComponent v;
    if (summary.periodic_b_zero) {
        // The pattern covers every mode, so the verdict is unconditional.
        v.certainty = Certainty::exact;
        if (const auto witness = summary.periodic_b_zero->min_member()) {
            v.answer = Answer::no;
            v.witness = *witness;
        } else {
            v.answer = Answer::yes;
        }
        return v;
    }

    bool all_exact = true;
    std::optional<int> witness;
    std::vector<int> borderline;
    for (const ModeRecord& r : records) {
        all_exact = all_exact && r.b_zero.exact();
        if (r.b_zero.borderline()) {
            borderline.push_back(r.n);
        } else if (r.b_zero.zero() && !witness) {
            witness = r.n;
        }
    }
    v.certainty = all_exact ? Certainty::exact : Certainty::numeric;
    if (witness) {
        v.answer = Answer::no;
        v.witness = witness;
    } else if (!borderline.empty()) {
        v.answer = Answer::unknown;
        v.borderline_modes = std::move(borderline);
    } else {
        // No vanishing coefficient seen, but only finitely many were checked.
        v.answer = Answer::yes_up_to;
        v.window = static_cast<int>(records.size());
    }
    return v;
}

double critical_k(const SystemParams& params, const IndexSetSummary& summary) {
    std::optional<std::int64_t> min_k;
    if (summary.periodic_k) {
        min_k = summary.periodic_k->min_member();
    } else if (!summary.k_set.empty()) {
        min_k = summary.k_set.front();
    }
    if (!min_k) return std::numeric_limits<double>::infinity();
    const double m = static_cast<double>(*min_k);
    return 0.25 * params.alpha * params.alpha + m * m * kPiSq;
}

int default_window(const SystemParams& params) {
    return std::max(64, 2 * n_max_unstable(params));
}

SystemAnalysis analyze_system(const SystemParams& params, const Profile& b, const Profile& c,
                              std::optional<int> window, const ThresholdPolicy& policy,
                              const QuadratureSettings& settings) {
    SystemAnalysis a;
    a.params = params;
    a.window = window.value_or(default_window(params));
    a.records = classify_modes(params, b, c, a.window, policy, settings);
    a.summary = build_index_sets(params, a.records, b, c);
    a.verdict.approx_controllable = decide_approx_controllability(a.records, a.summary);
    a.verdict.state_stabilizable = decide_state_stabilizability(params, a.records, a.summary);
    a.verdict.output_stabilizable = decide_output_stabilizability(params, a.records, a.summary);
    a.critical_k = critical_k(params, a.summary);
    return a;
}

}  // namespace modalstab
