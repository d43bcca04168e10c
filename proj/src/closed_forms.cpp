#include "fegamma/closed_forms.hpp"

#include <cmath>
#include <numbers>

namespace fegamma {

namespace {

// Stirling series is applied once Re z clears this line; below it the
// recursion Gamma(z) = Gamma(z+n) / prod (z+k) shifts up.
constexpr double kStirlingMin = 24.0;

// B_{2k} / (2k (2k-1)) for k = 1..10.
constexpr double kStirlingCoef[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

cplx stirling_log_gamma(cplx z) {
    cplx lz = std::log(z);
    cplx out = (z - 0.5) * lz - z + 0.5 * std::log(2.0 * std::numbers::pi);
    cplx zi = 1.0 / z;
    cplx zpow = zi;
    cplx zi2 = zi * zi;
    for (double c : kStirlingCoef) {
        out += c * zpow;
        zpow *= zi2;
    }
    return out;
}

bool is_nonpositive_integer(cplx s) {
    if (std::abs(s.imag()) > 1e-12) return false;
    double r = std::round(s.real());
    return r <= 0.0 && std::abs(s.real() - r) <= 1e-12 * std::max(1.0, std::abs(s.real()));
}

// The Mellin printer pins 12 significant digits.
std::string format_cnum_12(cplx z) {
    if (z.imag() == 0.0) return format_double(z.real(), 12);
    std::string s = format_double(z.real(), 12);
    s += std::signbit(z.imag()) ? "-" : "+";
    s += format_double(std::abs(z.imag()), 12);
    s += "i";
    return s;
}

}  // namespace

cplx euler_log_gamma_oracle(cplx s) {
    if (is_nonpositive_integer(s))
        throw divisor_signal(s, -1);
    int shift = 0;
    while (s.real() + shift < kStirlingMin) ++shift;
    cplx lg = stirling_log_gamma(s + cplx(shift));
    for (int k = 0; k < shift; ++k) lg -= std::log(s + cplx(k));
    return lg;
}

cplx euler_gamma_oracle(cplx s) { return std::exp(euler_log_gamma_oracle(s)); }

cplx q_pochhammer_inf(cplx z, double q, double tol) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q_pochhammer_inf: q must be in (0,1)");
    if (!(tol > 0.0)) throw std::invalid_argument("q_pochhammer_inf: tol must be positive");
    cplx p = 1.0;
    double scale = std::abs(z);
    double qk = 1.0;
    while (scale * qk >= tol * (1.0 - q)) {
        p *= (cplx(1.0) - z * qk);
        qk *= q;
    }
    return p;
}

namespace {

// log (z;q)_inf with the same truncation rule; the plain product underflows
// for q close to 1.
cplx log_q_pochhammer_inf(cplx z, double q, double tol = 1e-16) {
    cplx sum = 0;
    double scale = std::abs(z);
    double qk = 1.0;
    while (scale * qk >= tol * (1.0 - q)) {
        sum += log1p_c(-z * qk);
        qk *= q;
    }
    return sum;
}

}  // namespace

cplx q_gamma(double q, cplx s) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q_gamma: q must be in (0,1)");
    double lq = std::log(q);
    cplx qs = std::exp(s * lq);
    // Poles where q^{s+k} = 1 for some k >= 0; beyond the truncation horizon
    // the factors are ~1 and cannot vanish.
    double horizon = std::log(1e-16 * (1.0 - q) / std::max(1e-300, std::abs(qs))) / lq;
    cplx qsk = qs;
    for (int k = 0; k <= static_cast<int>(horizon) + 1; ++k) {
        if (std::abs(cplx(1.0) - qsk) < 1e-12) throw divisor_signal(s, -1);
        qsk *= q;
    }
    cplx lg = log_q_pochhammer_inf(q, q) - log_q_pochhammer_inf(qs, q) +
              (cplx(1.0) - s) * std::log(1.0 - q);
    cplx result = std::exp(lg);
    if (!finite_c(result)) throw overflow_signal("q_gamma: value outside floating range");
    return result;
}

cplx MellinSolution::eval(cplx s) const {
    cplx lg = s * std::log(a) + cplx(0, kTwoPi) * cplx(static_cast<double>(k)) * s;
    for (cplx alpha : roots) lg += euler_log_gamma_oracle(s - alpha);
    for (cplx beta : poles) lg -= euler_log_gamma_oracle(s - beta);
    return std::exp(lg);
}

std::string MellinSolution::print() const {
    auto shifted = [](cplx alpha) {
        std::string v = format_cnum_12(alpha);
        if (alpha.real() < 0 || alpha.imag() != 0.0) v = "(" + v + ")";
        return "Gamma(s-" + v + ")";
    };
    std::string out = format_cnum_12(a) + "^s";
    std::string num;
    for (cplx alpha : roots) {
        if (!num.empty()) num += "*";
        num += shifted(alpha);
    }
    std::string den;
    for (cplx beta : poles) {
        if (!den.empty()) den += "*";
        den += shifted(beta);
    }
    if (!num.empty()) out += " * " + num;
    if (!den.empty()) out += "/(" + den + ")";
    out += " * exp(2πi·" + std::to_string(k) + "·s)";
    return out;
}

MellinSolution mellin_solve(const FunctionSpec& spec, int k) {
    MellinSolution sol;
    sol.k = k;
    for (const Atom& atom : spec.atoms()) {
        if (const auto* lin = std::get_if<LinearAtom>(&atom)) {
            auto& side = lin->m > 0 ? sol.roots : sol.poles;
            for (int i = 0; i < std::abs(lin->m); ++i) side.push_back(lin->alpha);
        } else if (const auto* c = std::get_if<ConstAtom>(&atom)) {
            sol.a *= c->a;
        } else {
            throw error("mellin_solve: seed must be rational (Linear/Const atoms only)");
        }
    }
    return sol;
}

cplx gamma_omega(cplx s, cplx omega, OmegaGammaFlavor flavor) {
    if (!(omega.real() > 0))
        throw std::invalid_argument("gamma_omega: omega must be in the right half-plane");
    cplx lw = std::log(omega);
    cplx t = s / omega;
    cplx g = euler_gamma_oracle(t);
    switch (flavor) {
        case OmegaGammaFlavor::shintani:
            return std::exp((t - 0.5) * lw) * g / std::sqrt(2.0 * std::numbers::pi);
        case OmegaGammaFlavor::barnes:
            return std::exp((t - 1.0) * lw) * g;
        case OmegaGammaFlavor::norm1:
            // barnes rescaled to take the value 1 at s = 1: the exponent uses
            // (s-1)/omega, which is what F(s+w) = s F(s) with F(1) = 1 forces.
            return std::exp((s - 1.0) / omega * lw) * g / euler_gamma_oracle(1.0 / omega);
    }
    throw std::invalid_argument("gamma_omega: unknown flavor");
}

}  // namespace fegamma
