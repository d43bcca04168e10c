#ifndef FEGAMMA_ALGEBRA_HPP
#define FEGAMMA_ALGEBRA_HPP

#include <vector>

#include "fegamma/util.hpp"

namespace fegamma {

// ---------------------------------------------------------------------------
// Poly: complex polynomial, monomial coefficients in ascending degree.
// The zero polynomial is the empty coefficient list; a non-empty list has a
// nonzero leading coefficient.
// ---------------------------------------------------------------------------
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly constant(cplx a) { return Poly(std::vector<cplx>{a}); }
    static Poly identity() { return Poly({cplx(0), cplx(1)}); }  // p(s) = s

    const std::vector<cplx>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    cplx coeff(std::size_t k) const { return k < c_.size() ? c_[k] : cplx(0); }

    cplx operator()(cplx s) const {
        cplx v = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * s + *it;
        return v;
    }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(cplx a) const;
    Poly operator-() const { return *this * cplx(-1); }

    /// p(s + shift), exact binomial expansion.
    Poly composed_shift(cplx shift) const;
    /// p(scale * s), exact.
    Poly composed_scale(cplx scale) const;

    bool almost_equal(const Poly& o, double tol) const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == cplx(0)) c_.pop_back();
    }
    std::vector<cplx> c_;
};

// ---------------------------------------------------------------------------
// Descending-factorial machinery. s^[k,w] = s (s-w) ... (s-(k-1)w) is a
// triangular basis diagonalizing the step-w difference operator.
// ---------------------------------------------------------------------------

/// s (s-omega) ... (s-(k-1) omega); k = 0 gives 1.
cplx omega_descending(cplx s, int k, cplx omega);

/// Expansion of p in the omega-descending basis via synthetic division at the
/// nodes 0, omega, 2*omega, ...  Exact coefficient recurrences (no sampling),
/// so integer inputs keep integer structure.
std::vector<cplx> to_omega_basis(const Poly& p, cplx omega);

/// Inverse of to_omega_basis.
Poly from_omega_basis(const std::vector<cplx>& coeffs, cplx omega);

/// Coefficients B_{n,0..n}(omega) with s^n = sum_k B_{n,k} s^[k,omega];
/// B_{n,n} = 1.
std::vector<cplx> basis_change(int n, cplx omega);

/// The unique q with q(s+1) - q(s) = p(s) and q(0) = 0.
Poly antidifference(const Poly& p);

/// The unique q with q(s+omega) - q(s) = p(s) and q(0) = 0. Rejects omega = 0.
Poly omega_antidifference(const Poly& p, cplx omega);

/// Chain Q_0..Q_N with Q_n(0) = seeds[n] and D_{omega_{n+1}} Q_{n+1} = Q_n.
/// Requires seeds.size() == omegas.size() + 1; returns Q_N.
Poly solution_family(const std::vector<long long>& seeds, const std::vector<cplx>& omegas);

/// All levels of the chain above, Q_0..Q_N.
std::vector<Poly> solution_family_levels(const std::vector<long long>& seeds,
                                         const std::vector<cplx>& omegas);

}  // namespace fegamma

#endif
