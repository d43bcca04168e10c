#ifndef FEGAMMA_DIVISOR_HPP
#define FEGAMMA_DIVISOR_HPP

#include <optional>
#include <string>
#include <vector>

#include "fegamma/util.hpp"

namespace fegamma {

/// One enumerated divisor element: position and integer multiplicity
/// (negative = pole).
struct DivisorElement {
    cplx position;
    long long multiplicity;
};

/// A step family inside a generator. `repeat` counts how many independent
/// indices march in this direction; r identical rays collapsed this way carry
/// the composition weight binom(m + r - 1, r - 1) at offset m * direction.
struct Step {
    cplx direction;
    int repeat = 1;
};

/// An infinite family {base + sum_i k_i * d_i : k_i >= 0} with a common
/// multiplicity. Step directions must have negative real part, or be purely
/// imaginary; purely imaginary steps within one generator must share the sign
/// of their imaginary part so that enumeration within a radius terminates.
struct Generator {
    cplx base;
    std::vector<Step> steps;
    long long multiplicity = 1;
};

struct DivisorClass {
    bool lld = false;
    bool cld = false;
    double exponent = 0.0;
};

class DivisorSpec {
public:
    DivisorSpec() = default;

    /// Merges into an existing point within 1e-9; drops entries whose
    /// multiplicity cancels to zero.
    void add_point(cplx rho, long long multiplicity);
    void add_generator(Generator g);

    const std::vector<DivisorElement>& points() const { return points_; }
    const std::vector<Generator>& generators() const { return generators_; }
    bool empty() const { return points_.empty() && generators_.empty(); }

    /// All elements with |position| <= radius, merged (1e-9 clustering,
    /// multiplicities summed exactly) and sorted lexicographically by
    /// (Re, Im). Deterministic.
    std::vector<DivisorElement> enumerate(double radius) const;

    /// Same, but gives up once more than `max_raw` raw positions have been
    /// generated (pre-merge).
    std::optional<std::vector<DivisorElement>> enumerate_budget(double radius,
                                                                std::size_t max_raw) const;

    /// Upper estimate of the raw position count within `radius`.
    double count_estimate(double radius) const;

    /// Divisor of s -> f(scale * s): every position divided by `scale`.
    /// Requires scale real positive (keeps left-locatedness).
    DivisorSpec scaled_arg(double scale) const;

    /// Multiplicities negated (divisor of 1/f).
    DivisorSpec negated() const;

    std::string to_json() const;
    static DivisorSpec from_json(const std::string& text);

private:
    std::vector<DivisorElement> points_;
    std::vector<Generator> generators_;
};

/// Merge tolerance for coincident positions.
inline constexpr double kMergeTol = 1e-9;

DivisorClass classify(const DivisorSpec& div);

/// Partial sum  sum_{0 < |rho| <= radius} |n_rho| |rho|^-alpha.
double divisor_norm(const DivisorSpec& div, double alpha, double radius);
double divisor_norm_of(const std::vector<DivisorElement>& elements, double alpha);

/// Upper bound on the tail  sum_{|rho| > radius} |n_rho| |rho|^-beta,
/// via per-generator annulus counting. +inf when beta does not dominate the
/// generator dimension.
double divisor_tail_bound(const DivisorSpec& div, double radius, double beta);

/// Divisor of Gamma^f from the divisor of f: each element (rho, n) spawns the
/// family {rho - k : k >= 0} with multiplicity -n; existing generators gain
/// one more step -1 and flip sign. Rejects non-LLD input.
DivisorSpec propagate(const DivisorSpec& div_f);

/// Smallest alpha on the grid {0.5, 1, ..., 6} whose partial norms at radius
/// 64 and 128 differ by < 5%; 6.5 when none qualifies, 0.5 for the empty
/// divisor. Heuristic input to the genus choice only.
double exponent_estimate(const DivisorSpec& div);

/// Merged multiplicity at `s` from an enumerated, lexicographically sorted
/// element list (1e-9 matching); 0 if absent.
long long multiplicity_at(const std::vector<DivisorElement>& sorted_elements, cplx s);

}  // namespace fegamma

#endif
