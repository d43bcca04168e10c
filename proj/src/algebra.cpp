#include "fegamma/algebra.hpp"

#include <algorithm>
#include <cstdio>

namespace fegamma {

std::string format_double(double v, int significant) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant, v);
    return buf;
}

std::string format_cnum(cplx z) {
    if (z.imag() == 0.0) return format_double(z.real());
    std::string s = format_double(z.real());
    s += (z.imag() < 0 || std::signbit(z.imag())) ? "-" : "+";
    s += format_double(std::abs(z.imag()));
    s += "i";
    return s;
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<cplx> r(std::max(c_.size(), o.c_.size()), cplx(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (o * cplx(-1)); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<cplx> r(c_.size() + o.c_.size() - 1, cplx(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
}

Poly Poly::operator*(cplx a) const {
    if (a == cplx(0)) return {};
    std::vector<cplx> r = c_;
    for (auto& x : r) x *= a;
    return Poly(std::move(r));
}

Poly Poly::composed_shift(cplx shift) const {
    // Horner on the shifted variable: accumulate result * (s + shift) + a_k.
    Poly res;
    Poly lin({shift, cplx(1)});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        res = res * lin + Poly::constant(*it);
    }
    return res;
}

Poly Poly::composed_scale(cplx scale) const {
    std::vector<cplx> r = c_;
    cplx p = 1;
    for (auto& x : r) {
        x *= p;
        p *= scale;
    }
    return Poly(std::move(r));
}

bool Poly::almost_equal(const Poly& o, double tol) const {
    std::size_t n = std::max(c_.size(), o.c_.size());
    double scale = 0;
    for (std::size_t i = 0; i < n; ++i)
        scale = std::max({scale, std::abs(coeff(i)), std::abs(o.coeff(i))});
    if (scale == 0) return true;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(coeff(i) - o.coeff(i)) > tol * scale) return false;
    return true;
}

cplx omega_descending(cplx s, int k, cplx omega) {
    cplx v = 1;
    for (int j = 0; j < k; ++j) v *= (s - cplx(j) * omega);
    return v;
}

namespace {

// The Newton-basis conversions amplify rounding by the size of the basis
// polynomials at the nodes 0, w, ..., n*w; extended precision internally
// keeps the public roundtrip at coefficient-level accuracy.
using lcplx = std::complex<long double>;

std::vector<lcplx> widen(const std::vector<cplx>& v) {
    std::vector<lcplx> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = {v[i].real(), v[i].imag()};
    return out;
}

std::vector<cplx> narrow(const std::vector<lcplx>& v) {
    std::vector<cplx> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = {static_cast<double>(v[i].real()), static_cast<double>(v[i].imag())};
    return out;
}

// Repeated synthetic division by (s - k*omega): the remainders are the
// Newton coefficients at the nodes 0, omega, 2*omega, ...
std::vector<lcplx> to_newton(std::vector<lcplx> r, lcplx omega) {
    std::vector<lcplx> out;
    int k = 0;
    while (!r.empty()) {
        lcplx x = lcplx(static_cast<long double>(k)) * omega;
        std::size_t n = r.size();
        std::vector<lcplx> q(n > 1 ? n - 1 : 0);
        lcplx acc = 0;
        for (std::size_t i = n; i-- > 1;) {
            acc = (i == n - 1) ? r[i] : r[i] + x * acc;
            q[i - 1] = acc;
        }
        lcplx rem = (n > 1) ? r[0] + x * q[0] : r[0];
        out.push_back(rem);
        r = std::move(q);
        ++k;
    }
    if (out.empty()) out.push_back(lcplx(0));
    return out;
}

// Nested Horner form p = c_0 + (s - 0)(c_1 + (s - w)(c_2 + ...)): the exact
// step-by-step inverse of the synthetic division above.
std::vector<lcplx> from_newton(const std::vector<lcplx>& coeffs, lcplx omega) {
    std::vector<lcplx> res;
    if (coeffs.empty()) return res;
    res.push_back(coeffs.back());
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
        lcplx root = lcplx(static_cast<long double>(k)) * omega;
        std::vector<lcplx> next(res.size() + 1, lcplx(0));
        for (std::size_t i = 0; i < res.size(); ++i) {
            next[i + 1] += res[i];
            next[i] -= root * res[i];
        }
        next[0] += coeffs[k];
        res = std::move(next);
    }
    while (!res.empty() && res.back() == lcplx(0)) res.pop_back();
    return res;
}

}  // namespace

std::vector<cplx> to_omega_basis(const Poly& p, cplx omega) {
    return narrow(to_newton(widen(p.coeffs()), {omega.real(), omega.imag()}));
}

Poly from_omega_basis(const std::vector<cplx>& coeffs, cplx omega) {
    return Poly(narrow(from_newton(widen(coeffs), {omega.real(), omega.imag()})));
}

std::vector<cplx> basis_change(int n, cplx omega) {
    if (n < 0) throw std::invalid_argument("basis_change: n must be nonnegative");
    if (omega == cplx(0)) throw std::invalid_argument("basis_change: omega must be nonzero");
    std::vector<cplx> mono(static_cast<std::size_t>(n) + 1, cplx(0));
    mono.back() = 1;
    auto out = to_omega_basis(Poly(std::move(mono)), omega);
    out.resize(static_cast<std::size_t>(n) + 1, cplx(0));
    return out;
}

Poly omega_antidifference(const Poly& p, cplx omega) {
    if (omega == cplx(0))
        throw std::invalid_argument("omega_antidifference: omega must be nonzero");
    if (p.is_zero()) return {};
    // D_w s^[k+1,w] = (k+1) w s^[k,w], and every s^[k,w] with k >= 1 vanishes
    // at 0, so the constant of integration is already pinned. Whole chain in
    // extended precision.
    lcplx w{omega.real(), omega.imag()};
    auto cs = to_newton(widen(p.coeffs()), w);
    std::vector<lcplx> shifted(cs.size() + 1, lcplx(0));
    for (std::size_t k = 0; k < cs.size(); ++k)
        shifted[k + 1] = cs[k] / (lcplx(static_cast<long double>(k + 1)) * w);
    return Poly(narrow(from_newton(shifted, w)));
}

Poly antidifference(const Poly& p) { return omega_antidifference(p, cplx(1)); }

std::vector<Poly> solution_family_levels(const std::vector<long long>& seeds,
                                         const std::vector<cplx>& omegas) {
    if (seeds.empty()) throw std::invalid_argument("solution_family: seeds must be nonempty");
    if (seeds.size() != omegas.size() + 1)
        throw std::invalid_argument("solution_family: need seeds.size() == omegas.size() + 1");
    for (cplx w : omegas)
        if (w == cplx(0)) throw std::invalid_argument("solution_family: omegas must be nonzero");

    std::vector<Poly> levels;
    levels.push_back(Poly::constant(cplx(static_cast<double>(seeds[0]))));
    for (std::size_t n = 0; n < omegas.size(); ++n) {
        Poly next = omega_antidifference(levels.back(), omegas[n]);
        next = next + Poly::constant(cplx(static_cast<double>(seeds[n + 1])));
        levels.push_back(std::move(next));
    }
    return levels;
}

Poly solution_family(const std::vector<long long>& seeds, const std::vector<cplx>& omegas) {
    return solution_family_levels(seeds, omegas).back();
}

}  // namespace fegamma
