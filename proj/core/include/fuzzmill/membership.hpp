#ifndef FUZZMILL_MEMBERSHIP_HPP
#define FUZZMILL_MEMBERSHIP_HPP

#include <string>
#include <utility>
#include <vector>

namespace fuzzmill {

/// Piecewise-linear membership function over a real universe.
///
/// Defined by an ordered list of (x, degree) breakpoints with strictly
/// increasing x and degrees in [0, 1]. Evaluation interpolates linearly
/// between adjacent breakpoints; outside the breakpoint range the degree is
/// held flat at the boundary value, so shoulder terms saturate while interior
/// terms that end at degree 0 evaluate to 0 beyond their support.
class MembershipFunction {
public:
    struct Point {
        double x;
        double degree;
        friend bool operator==(const Point&, const Point&) = default;
    };

    /// Validates the breakpoint list (at least 2 points, strictly increasing
    /// x, degrees in [0, 1]); throws ConfigError otherwise.
    explicit MembershipFunction(std::vector<Point> points);

    /// Membership degree at x, always in [0, 1].
    double operator()(double x) const;

    const std::vector<Point>& points() const noexcept { return points_; }

    friend bool operator==(const MembershipFunction&, const MembershipFunction&) = default;

private:
    std::vector<Point> points_;
};

/// Convenience builders for the common term shapes.
MembershipFunction triangle(double left, double peak, double right);
MembershipFunction shoulder_left(double peak, double foot);   // saturated below `peak`
MembershipFunction shoulder_right(double foot, double peak);  // saturated above `peak`

struct TermDegree {
    std::string term;
    double degree;
};

/// A named quantity whose values are linguistic terms, each realized by a
/// MembershipFunction over the closed universe [lo, hi]. Term order is
/// significant and preserved through serialization.
class LinguisticVariable {
public:
    using Term = std::pair<std::string, MembershipFunction>;

    /// Validates the definition (lo < hi, at least one term, unique labels,
    /// all breakpoints inside the universe); throws ConfigError otherwise.
    LinguisticVariable(std::string name, double lo, double hi, std::vector<Term> terms);

    const std::string& name() const noexcept { return name_; }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    /// Term lookup by label; nullptr if absent.
    const MembershipFunction* find_term(const std::string& label) const;

    /// Nearest in-universe value. Out-of-range crisp inputs are clamped
    /// rather than rejected: sensors can briefly exceed nominal range and the
    /// controller must not fault.
    double clamp(double x) const;

    /// Membership degree of every term at x (clamped first), in term order.
    std::vector<TermDegree> fuzzify(double x) const;

    friend bool operator==(const LinguisticVariable&, const LinguisticVariable&) = default;

private:
    std::string name_;
    double lo_;
    double hi_;
    std::vector<Term> terms_;
};

} // namespace fuzzmill

#endif // FUZZMILL_MEMBERSHIP_HPP
