#ifndef FEGAMMA_UTIL_HPP
#define FEGAMMA_UTIL_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fegamma {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// ---------------------------------------------------------------------------
// Error signals. Everything derives from fegamma::error so callers can catch
// library failures without swallowing unrelated exceptions.
// ---------------------------------------------------------------------------

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Syntax error from the seed-function parser; `position` is a 0-based
/// character offset into the input text.
struct parse_error : error {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

/// Raised when an evaluation point sits on the divisor. `multiplicity < 0`
/// is a pole, `multiplicity > 0` a zero.
struct divisor_signal : error {
    cplx at;
    long long multiplicity;
    divisor_signal(cplx where, long long mult)
        : error(std::string(mult < 0 ? "pole" : "zero") + " of order " +
                std::to_string(mult < 0 ? -mult : mult) + " at s = (" +
                std::to_string(where.real()) + ", " + std::to_string(where.imag()) + ")"),
          at(where), multiplicity(mult) {}
    bool is_pole() const { return multiplicity < 0; }
};

struct overflow_signal : error {
    using error::error;
};

/// Truncation radius needed to reach the requested tolerance exceeds the cap.
struct truncation_error : error {
    using error::error;
};

/// Correction-polynomial fit failed its holdout residual check.
struct fit_error : error {
    using error::error;
};

/// Requested normalization is incompatible with the seed (e.g. residue
/// normalization when the solution has no simple pole at 0).
struct normalization_error : error {
    using error::error;
};

// ---------------------------------------------------------------------------
// Numeric helpers
// ---------------------------------------------------------------------------

/// Neumaier-compensated accumulator for complex sums. The Weierstrass-product
/// logs sum a few hundred thousand terms whose partial sums can be orders of
/// magnitude above the final value; plain summation drifts past 1e-9.
class KahanSum {
public:
    void add(cplx term) {
        add_part(re_, cre_, term.real());
        add_part(im_, cim_, term.imag());
    }
    cplx value() const { return {re_ + cre_, im_ + cim_}; }

private:
    static void add_part(double& sum, double& comp, double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double re_ = 0.0, im_ = 0.0, cre_ = 0.0, cim_ = 0.0;
};

/// log(1+z) without cancellation for small |z|.
inline cplx log1p_c(cplx z) {
    double x = z.real(), y = z.imag();
    double re = 0.5 * std::log1p(2.0 * x + x * x + y * y);
    double im = std::atan2(y, 1.0 + x);
    return {re, im};
}

inline bool finite_c(cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Exact binomial coefficient; arguments stay small enough for int64.
inline long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

/// Formats a complex number the way the grammar reads it back: `a`, `a+bi`
/// or `a-bi`, shortest round-trippable digits.
std::string format_cnum(cplx z);

/// `%.15g`-style formatting used by the CLI and the CSV writer.
std::string format_double(double v, int significant = 15);

}  // namespace fegamma

#endif
