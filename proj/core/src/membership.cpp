#include "fuzzmill/membership.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fuzzmill/errors.hpp"

namespace fuzzmill {

MembershipFunction::MembershipFunction(std::vector<Point> points)
    : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw ConfigError("membership function needs at least 2 points, got " +
                          std::to_string(points_.size()));
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!std::isfinite(p.x) || !std::isfinite(p.degree)) {
            throw ConfigError("membership point " + std::to_string(i) + " is not finite");
        }
        if (p.degree < 0.0 || p.degree > 1.0) {
            std::ostringstream os;
            os << "membership degree " << p.degree << " at x=" << p.x << " is outside [0,1]";
            throw ConfigError(os.str());
        }
        if (i > 0 && !(points_[i - 1].x < p.x)) {
            std::ostringstream os;
            os << "membership x coordinates must be strictly increasing, got " << points_[i - 1].x
               << " before " << p.x;
            throw ConfigError(os.str());
        }
    }
}

double MembershipFunction::operator()(double x) const {
    if (x <= points_.front().x) return points_.front().degree;
    if (x >= points_.back().x) return points_.back().degree;
    auto hi = std::upper_bound(points_.begin(), points_.end(), x,
                               [](double v, const Point& p) { return v < p.x; });
    auto lo = std::prev(hi);
    const double t = (x - lo->x) / (hi->x - lo->x);
    const double d = lo->degree + (hi->degree - lo->degree) * t;
    return std::clamp(d, 0.0, 1.0);
}

MembershipFunction triangle(double left, double peak, double right) {
    return MembershipFunction({{left, 0.0}, {peak, 1.0}, {right, 0.0}});
}

MembershipFunction shoulder_left(double peak, double foot) {
    return MembershipFunction({{peak, 1.0}, {foot, 0.0}});
}

MembershipFunction shoulder_right(double foot, double peak) {
    return MembershipFunction({{foot, 0.0}, {peak, 1.0}});
}

LinguisticVariable::LinguisticVariable(std::string name, double lo, double hi,
                                       std::vector<Term> terms)
    : name_(std::move(name)), lo_(lo), hi_(hi), terms_(std::move(terms)) {
    if (name_.empty()) throw ConfigError("linguistic variable needs a name");
    if (!std::isfinite(lo_) || !std::isfinite(hi_) || !(lo_ < hi_)) {
        throw ConfigError("variable '" + name_ + "' has an invalid universe");
    }
    if (terms_.empty()) {
        throw ConfigError("variable '" + name_ + "' needs at least one term");
    }
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto& [label, mf] = terms_[i];
        if (label.empty()) {
            throw ConfigError("variable '" + name_ + "' has an unnamed term");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (terms_[j].first == label) {
                throw ConfigError("variable '" + name_ + "' declares term '" + label + "' twice");
            }
        }
        for (const auto& p : mf.points()) {
            if (p.x < lo_ || p.x > hi_) {
                std::ostringstream os;
                os << "term '" << label << "' of variable '" << name_ << "' has point x=" << p.x
                   << " outside universe [" << lo_ << ", " << hi_ << "]";
                throw ConfigError(os.str());
            }
        }
    }
}

const MembershipFunction* LinguisticVariable::find_term(const std::string& label) const {
    for (const auto& [name, mf] : terms_) {
        if (name == label) return &mf;
    }
    return nullptr;
}

double LinguisticVariable::clamp(double x) const {
    return std::clamp(x, lo_, hi_);
}

std::vector<TermDegree> LinguisticVariable::fuzzify(double x) const {
    const double xc = clamp(x);
    std::vector<TermDegree> out;
    out.reserve(terms_.size());
    for (const auto& [label, mf] : terms_) {
        out.push_back({label, mf(xc)});
    }
    return out;
}

} // namespace fuzzmill
