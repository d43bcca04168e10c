#ifndef FEGAMMA_HIERARCHY_HPP
#define FEGAMMA_HIERARCHY_HPP

#include <functional>
#include <memory>
#include <vector>

#include "fegamma/gamma_core.hpp"

namespace fegamma {

// One level of a multiple/higher Gamma hierarchy:
//   level 0:  f^{-1}
//   level n+1 solves  G_{n+1}(s + w_{n+1}) = G_n(s)^{-1} G_{n+1}(s),
// normalized G_n(1) = 1, constructed through the change of variables
// t = s / w_{n+1} on the inverse of the previous level.
class HierarchyLevel {
public:
    int level() const { return n_; }
    const std::vector<double>& omegas() const { return omegas_; }
    std::shared_ptr<const HierarchyLevel> parent() const { return parent_; }

    cplx eval(cplx s) const;
    long long multiplicity_at(cplx s) const;
    DivisorSpec divisor() const;  // in s-units
    bool real_analytic() const { return real_analytic_; }

    /// Underlying solution in rescaled units (null at level 0).
    const GammaSolution* solution() const { return sol_.get(); }
    double scale() const { return scale_; }

private:
    friend std::shared_ptr<const HierarchyLevel> multiple_gamma(
        std::shared_ptr<const SeedFunction>, const std::vector<double>&, Normalization);

    int n_ = 0;
    std::vector<double> omegas_;
    std::shared_ptr<const SeedFunction> base_seed_;  // level 0 only
    std::shared_ptr<const GammaSolution> sol_;       // levels >= 1, in t = s/scale units
    double scale_ = 1.0;
    cplx renorm_ = 1.0;
    std::shared_ptr<const HierarchyLevel> parent_;
    bool real_analytic_ = false;
};

/// Builds levels 0..N for steps `omegas` (all positive reals). Requires
/// |f(1) - 1| <= 1e-12. Real-analytic seeds get the canonical normalized
/// hierarchy; otherwise a value1-normalized member of the family is built.
std::shared_ptr<const HierarchyLevel> multiple_gamma(
    std::shared_ptr<const SeedFunction> seed, const std::vector<double>& omegas,
    Normalization normalization = Normalization::realanalytic);
std::shared_ptr<const HierarchyLevel> multiple_gamma(
    const FunctionSpec& spec, const std::vector<double>& omegas,
    Normalization normalization = Normalization::realanalytic);

/// The unit-step tower (omega = 1 repeated): Barnes higher Gamma functions
/// when f(s) = s, Nishizawa's higher q-Gamma functions for the q-factor seed.
std::shared_ptr<const HierarchyLevel> higher_gamma(const FunctionSpec& spec, int levels);
std::shared_ptr<const HierarchyLevel> higher_gamma(std::shared_ptr<const SeedFunction> seed,
                                                   int levels);

/// Vigneras' normalization: G_N = Gamma_N^{(-1)^{N+1}}; zero/pole signals
/// swap roles when the exponent is -1.
std::function<cplx(cplx)> vigneras_convert(std::shared_ptr<const HierarchyLevel> level);

/// Family of hierarchy members differing by exp(2 pi i P_n(s)) where the P_n
/// solve D_{w_{n+1}} P_{n+1} = -P_n with integer anchors `seeds`
/// (seeds.size() == level->level() + 1). Returns evaluators for levels 0..N.
std::vector<std::function<cplx(cplx)>> complex_family(
    std::shared_ptr<const HierarchyLevel> level, const std::vector<long long>& seeds);

// Seed adapters for building hierarchies on top of existing objects.

/// f(t) = Gamma_level(omega * t)^{-1}; the builder's inner seed.
class LevelInverseRescaledSeed final : public SeedFunction {
public:
    LevelInverseRescaledSeed(std::shared_ptr<const HierarchyLevel> prev, double omega);
    cplx value(cplx t) const override;
    cplx log_value(cplx t) const override;
    const DivisorSpec& divisor() const override { return div_; }
    bool real_analytic() const override { return prev_->real_analytic(); }
    long long multiplicity_at(cplx t) const override;
    std::string describe() const override;

private:
    std::shared_ptr<const HierarchyLevel> prev_;
    double omega_;
    DivisorSpec div_;
};

}  // namespace fegamma

#endif
