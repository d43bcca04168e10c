#ifndef FEGAMMA_GAMMA_CORE_HPP
#define FEGAMMA_GAMMA_CORE_HPP

#include <memory>
#include <string>
#include <vector>

#include "fegamma/algebra.hpp"
#include "fegamma/divisor.hpp"
#include "fegamma/funcspec.hpp"
#include "fegamma/util.hpp"

namespace fegamma {

struct TruncationPolicy {
    double radius = 64.0;  // minimum truncation radius; grown until the tail bound holds
    double tol = 1e-12;    // tail tolerance epsilon
};

inline constexpr double kRadiusCap = 1e6;

/// Exact-zero count and log of the finite part of prod_{k=0}^{count-1} f(s+k).
struct ShiftedProduct {
    long long zero_order = 0;  // net order of exact zeros hit (negative: poles)
    cplx log_value = 0;        // principal-branch log of the remaining factors
};

// ---------------------------------------------------------------------------
// Seed interface. A seed is anything with a value and an exact divisor: a
// parsed FunctionSpec at the bottom of a hierarchy, or an inverse/rescaled
// Gamma solution further up.
// ---------------------------------------------------------------------------
class SeedFunction {
public:
    virtual ~SeedFunction() = default;
    virtual cplx value(cplx s) const = 0;
    virtual cplx log_value(cplx s) const { return std::log(value(s)); }
    virtual const DivisorSpec& divisor() const = 0;
    virtual bool real_analytic() const = 0;
    virtual long long multiplicity_at(cplx s) const;
    virtual ShiftedProduct shifted_log_product(cplx s, int count) const;
    virtual int fit_degree_hint() const { return 0; }
    virtual std::string describe() const = 0;
};

class FuncSpecSeed final : public SeedFunction {
public:
    explicit FuncSpecSeed(FunctionSpec spec);
    cplx value(cplx s) const override { return eval_f(spec_, s); }
    cplx log_value(cplx s) const override { return log_eval_f(spec_, s); }
    const DivisorSpec& divisor() const override { return div_; }
    bool real_analytic() const override { return real_analytic_; }
    long long multiplicity_at(cplx s) const override;
    ShiftedProduct shifted_log_product(cplx s, int count) const override;
    int fit_degree_hint() const override;
    std::string describe() const override { return print(spec_); }
    const FunctionSpec& spec() const { return spec_; }

private:
    FunctionSpec spec_;
    DivisorSpec div_;
    bool real_analytic_;
};

enum class Normalization { value1, residue0, value0, realanalytic };

std::string to_string(Normalization n);

// ---------------------------------------------------------------------------
// GammaSolution: a constructed Gamma^f, immutable after build. Values come
// from exp(psi(s) + c) * Pi(s) on the cached band, where Pi is the truncated
// divisor product; the functional equation extends to Re s < 1.
// ---------------------------------------------------------------------------
class GammaSolution {
public:
    cplx eval(cplx s) const;

    const SeedFunction& seed() const { return *seed_; }
    std::shared_ptr<const SeedFunction> seed_ptr() const { return seed_; }
    const DivisorSpec& divisor() const { return gdiv_; }
    int genus() const { return genus_; }
    const Poly& phi() const { return phi_; }
    const Poly& psi() const { return psi_; }
    cplx constant() const { return c_; }
    Normalization normalization() const { return norm_; }
    int variant_a() const { return variant_a_; }
    cplx variant_b() const { return variant_b_; }
    double band() const { return band_; }
    double radius() const { return radius_; }
    bool real_analytic() const;

    /// Merged divisor multiplicity at s (0 off the divisor).
    long long multiplicity_at(cplx s) const;

    /// Deliberately broken copy (psi += slope * s); verification negative
    /// controls use it and nothing else should.
    GammaSolution perturbed_psi(double slope) const;

private:
    friend class GammaBuilder;
    friend GammaSolution uniqueness_variant(const GammaSolution&, int, cplx);

    cplx log_pi(cplx s) const;  // n0 log s + sum n_rho log(1 - s/rho), ascending |rho|
    cplx eval_banded(cplx s) const;

    std::shared_ptr<const SeedFunction> seed_;
    DivisorSpec gdiv_;
    int genus_ = 0;
    Poly phi_, psi_;
    cplx c_ = 0;
    Normalization norm_ = Normalization::value1;
    int variant_a_ = 0;
    cplx variant_b_ = 0;
    double band_ = 0;
    double radius_ = 0;
    TruncationPolicy policy_;

    long long n0_ = 0;
    std::vector<DivisorElement> prod_;      // ascending |rho|, ties lexicographic
    std::vector<DivisorElement> prod_lex_;  // same elements, lexicographic (lookup)
};

/// Builds Gamma^f for an LLD seed. `band` is the |s| range the cached product
/// covers; evaluations beyond it rebuild at the required radius (correct but
/// slow).
GammaSolution build_gamma(std::shared_ptr<const SeedFunction> seed,
                          Normalization normalization = Normalization::value1,
                          TruncationPolicy policy = {}, double band = 13.0);

GammaSolution build_gamma(const FunctionSpec& spec,
                          Normalization normalization = Normalization::value1,
                          TruncationPolicy policy = {}, double band = 13.0);

/// The e^{2 pi i a s + b} member of the solution family.
GammaSolution uniqueness_variant(const GammaSolution& sol, int a, cplx b);

// ---------------------------------------------------------------------------
// Standalone pieces of the construction, exposed for direct use and testing.
// ---------------------------------------------------------------------------

/// E_d(x) = (1-x) exp(x + x^2/2 + ... + x^d/d).
cplx weierstrass_primary(cplx x, int d);

/// Canonical product g(s) = s^{n0} prod_{0<|rho|<=R} E_d(s/rho)^{n_rho}; the
/// radius grows from policy.radius until the tail bound at s clears
/// policy.tol, capped at 1e6.
cplx weierstrass_eval(const DivisorSpec& gdiv, int d, cplx s, TruncationPolicy policy = {});

/// Correction polynomial phi with e^{phi(s)} = f(s) g(s) / g(s+1) for the
/// genus-d canonical product g of gdiv, fitted from branch-continuous log
/// samples on the real axis and validated on holdout points.
Poly correction_poly(const FunctionSpec& spec, const DivisorSpec& gdiv, int d,
                     TruncationPolicy policy = {});

}  // namespace fegamma

#endif
