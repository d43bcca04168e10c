#include "fegamma/hierarchy.hpp"

#include <cmath>

namespace fegamma {

cplx HierarchyLevel::eval(cplx s) const {
    if (n_ == 0) {
        long long m = base_seed_->multiplicity_at(s);
        if (m > 0) throw divisor_signal(s, -m);  // zero of f = pole of f^{-1}
        if (m < 0) return 0.0;
        return 1.0 / base_seed_->value(s);
    }
    return renorm_ * sol_->eval(s / scale_);
}

long long HierarchyLevel::multiplicity_at(cplx s) const {
    if (n_ == 0) return -base_seed_->multiplicity_at(s);
    return sol_->multiplicity_at(s / scale_);
}

DivisorSpec HierarchyLevel::divisor() const {
    if (n_ == 0) return base_seed_->divisor().negated();
    // sol_ lives in t = s/scale units; stretch positions back by scale.
    return sol_->divisor().scaled_arg(1.0 / scale_);
}

std::shared_ptr<const HierarchyLevel> multiple_gamma(std::shared_ptr<const SeedFunction> seed,
                                                     const std::vector<double>& omegas,
                                                     Normalization normalization) {
    if (!seed) throw std::invalid_argument("multiple_gamma: null seed");
    for (double w : omegas)
        if (!(w > 0)) throw std::invalid_argument("multiple_gamma: omegas must be positive reals");
    cplx f1 = seed->value(cplx(1.0));
    if (std::abs(f1 - cplx(1.0)) > 1e-12)
        throw normalization_error("multiple_gamma: seed must satisfy f(1) = 1");

    Normalization level_norm = normalization;
    if (level_norm == Normalization::realanalytic && !seed->real_analytic())
        level_norm = Normalization::value1;  // non-unique family member

    auto level0 = std::make_shared<HierarchyLevel>();
    level0->n_ = 0;
    level0->base_seed_ = seed;
    level0->real_analytic_ = seed->real_analytic();

    // Building level n+1 samples level n at omega_{n+1} * t across the fit
    // window, so each level's cached band must cover the rescaled reach of
    // everything above it.
    std::vector<double> bands(omegas.size(), 13.0);
    for (std::size_t i = omegas.size(); i-- > 1;) {
        bands[i - 1] = std::max(13.0, bands[i] * std::max(1.0, omegas[i]) + 2.0);
    }

    std::shared_ptr<const HierarchyLevel> prev = level0;
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        double w = omegas[i];
        auto inner = std::make_shared<LevelInverseRescaledSeed>(prev, w);
        GammaSolution sol = build_gamma(inner, level_norm, {}, bands[i]);

        auto lvl = std::make_shared<HierarchyLevel>();
        lvl->n_ = static_cast<int>(i) + 1;
        lvl->omegas_.assign(omegas.begin(), omegas.begin() + i + 1);
        lvl->sol_ = std::make_shared<GammaSolution>(std::move(sol));
        lvl->scale_ = w;
        lvl->renorm_ = 1.0 / lvl->sol_->eval(cplx(1.0 / w));
        lvl->parent_ = prev;
        lvl->real_analytic_ = prev->real_analytic();
        prev = lvl;
    }
    return prev;
}

std::shared_ptr<const HierarchyLevel> multiple_gamma(const FunctionSpec& spec,
                                                     const std::vector<double>& omegas,
                                                     Normalization normalization) {
    return multiple_gamma(std::make_shared<FuncSpecSeed>(spec), omegas, normalization);
}

std::shared_ptr<const HierarchyLevel> higher_gamma(std::shared_ptr<const SeedFunction> seed,
                                                   int levels) {
    if (levels < 1) throw std::invalid_argument("higher_gamma: need at least one level");
    return multiple_gamma(std::move(seed), std::vector<double>(levels, 1.0));
}

std::shared_ptr<const HierarchyLevel> higher_gamma(const FunctionSpec& spec, int levels) {
    return higher_gamma(std::make_shared<FuncSpecSeed>(spec), levels);
}

std::function<cplx(cplx)> vigneras_convert(std::shared_ptr<const HierarchyLevel> level) {
    if (!level) throw std::invalid_argument("vigneras_convert: null level");
    bool reciprocal = level->level() % 2 == 0;  // (-1)^{N+1} = -1 for even N
    return [level, reciprocal](cplx s) -> cplx {
        if (!reciprocal) return level->eval(s);
        long long m = level->multiplicity_at(s);
        if (m > 0) throw divisor_signal(s, -m);
        if (m < 0) return 0.0;
        return 1.0 / level->eval(s);
    };
}

std::vector<std::function<cplx(cplx)>> complex_family(
    std::shared_ptr<const HierarchyLevel> level, const std::vector<long long>& seeds) {
    if (!level) throw std::invalid_argument("complex_family: null level");
    const int N = level->level();
    if (seeds.size() != static_cast<std::size_t>(N) + 1)
        throw std::invalid_argument("complex_family: need exactly N+1 integer seeds");

    std::vector<std::shared_ptr<const HierarchyLevel>> chain(N + 1);
    {
        auto lvl = level;
        for (int n = N; n >= 0; --n) {
            chain[n] = lvl;
            lvl = lvl->parent();
        }
    }
    std::vector<cplx> omegas(level->omegas().begin(), level->omegas().end());
    std::vector<Poly> q_levels = solution_family_levels(seeds, omegas);

    std::vector<std::function<cplx(cplx)>> members;
    members.reserve(N + 1);
    for (int n = 0; n <= N; ++n) {
        // Q_n(s) = (-1)^n P_n(s-1), so the phase polynomial is
        // P_n(s) = (-1)^n Q_n(s+1); the chain D_w P_{n+1} = -P_n follows.
        Poly p = q_levels[n].composed_shift(cplx(1.0)) * cplx((n % 2 == 0) ? 1.0 : -1.0);
        auto lvl = chain[n];
        members.push_back([lvl, p](cplx s) -> cplx {
            return std::exp(cplx(0, kTwoPi) * p(s)) * lvl->eval(s);
        });
    }
    return members;
}

LevelInverseRescaledSeed::LevelInverseRescaledSeed(std::shared_ptr<const HierarchyLevel> prev,
                                                   double omega)
    : prev_(std::move(prev)), omega_(omega),
      div_(prev_->divisor().negated().scaled_arg(omega)) {}

cplx LevelInverseRescaledSeed::value(cplx t) const {
    cplx s = t * omega_;
    long long m = prev_->multiplicity_at(s);
    if (m < 0) return 0.0;  // pole of the previous level = zero of this seed
    if (m > 0) throw divisor_signal(t, -m);
    return 1.0 / prev_->eval(s);
}

cplx LevelInverseRescaledSeed::log_value(cplx t) const {
    return -std::log(prev_->eval(t * omega_));
}

long long LevelInverseRescaledSeed::multiplicity_at(cplx t) const {
    return -prev_->multiplicity_at(t * omega_);
}

std::string LevelInverseRescaledSeed::describe() const {
    return "inverse of hierarchy level " + std::to_string(prev_->level()) + " rescaled by " +
           format_double(omega_, 6);
}

}  // namespace fegamma
