#include "modalstab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "modalstab/errors.hpp"

namespace modalstab {

Profile Profile::indicator(const Rational& p, const Rational& q) {
    const Rational zero(0, 1);
    const Rational one(1, 1);
    if (!(zero <= p && p < q && q <= one)) {
        throw ConfigError("indicator interval needs 0 <= p < q <= 1, got [" + p.str() + ", " +
                          q.str() + "]");
    }
    Profile prof;
    prof.kind_ = Kind::indicator;
    prof.p_ = p;
    prof.q_ = q;
    return prof;
}

Profile Profile::tabulated(std::vector<double> nodes, std::vector<double> values) {
    if (nodes.size() < 2 || nodes.size() != values.size()) {
        throw ConfigError("tabulated profile needs >= 2 matching nodes and values");
    }
    if (nodes.front() != 0.0 || nodes.back() != 1.0) {
        throw ConfigError("tabulated profile must start at 0 and end at 1");
    }
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (!(nodes[i] < nodes[i + 1])) {
            throw ConfigError("tabulated nodes must be strictly increasing");
        }
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw ConfigError("tabulated values must be finite");
    }
    Profile prof;
    prof.kind_ = Kind::tabulated;
    prof.nodes_ = std::move(nodes);
    prof.values_ = std::move(values);
    return prof;
}

const Rational& Profile::lower() const {
    if (kind_ != Kind::indicator) throw ConfigError("not an indicator profile");
    return p_;
}

const Rational& Profile::upper() const {
    if (kind_ != Kind::indicator) throw ConfigError("not an indicator profile");
    return q_;
}

const std::vector<double>& Profile::nodes() const {
    if (kind_ != Kind::tabulated) throw ConfigError("not a tabulated profile");
    return nodes_;
}

const std::vector<double>& Profile::values() const {
    if (kind_ != Kind::tabulated) throw ConfigError("not a tabulated profile");
    return values_;
}

double Profile::operator()(double xi) const {
    if (kind_ == Kind::indicator) {
        return (xi >= p_.value() && xi <= q_.value()) ? 1.0 : 0.0;
    }
    if (xi <= nodes_.front()) return values_.front();
    if (xi >= nodes_.back()) return values_.back();
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), xi);
    std::size_t hi = static_cast<std::size_t>(it - nodes_.begin());
    std::size_t lo = hi - 1;
    double t = (xi - nodes_[lo]) / (nodes_[hi] - nodes_[lo]);
    return values_[lo] + t * (values_[hi] - values_[lo]);
}

std::vector<double> Profile::breakpoints() const {
    if (kind_ == Kind::indicator) return {p_.value(), q_.value()};
    return nodes_;
}

std::string Profile::describe() const {
    if (kind_ == Kind::indicator) {
        return "indicator " + p_.str() + " " + q_.str();
    }
    std::ostringstream out;
    out << "tabulated";
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        out << " " << nodes_[i] << ":" << values_[i];
    }
    return out.str();
}

}  // namespace modalstab
