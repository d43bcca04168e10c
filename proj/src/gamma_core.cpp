#include "fegamma/gamma_core.hpp"

#include <algorithm>
#include <cmath>

#include "fegamma/closed_forms.hpp"

namespace fegamma {

namespace {

constexpr double kExactZeroTol = 1e-12;

bool sorted_lex(const DivisorElement& a, const DivisorElement& b) {
    if (a.position.real() != b.position.real()) return a.position.real() < b.position.real();
    return a.position.imag() < b.position.imag();
}

bool sorted_by_modulus(const DivisorElement& a, const DivisorElement& b) {
    double ra = std::abs(a.position), rb = std::abs(b.position);
    if (ra != rb) return ra < rb;
    return sorted_lex(a, b);
}

// ---------------------------------------------------------------------------
// Complex least squares via Householder QR. Matrices here are tiny
// (<= ~40 x 17).
// ---------------------------------------------------------------------------
std::vector<cplx> lstsq(std::vector<std::vector<cplx>> A, std::vector<cplx> b) {
    const std::size_t m = A.size();
    const std::size_t n = A.empty() ? 0 : A[0].size();
    for (std::size_t k = 0; k < n; ++k) {
        double norm = 0;
        for (std::size_t i = k; i < m; ++i) norm += std::norm(A[i][k]);
        norm = std::sqrt(norm);
        if (norm == 0) continue;
        cplx akk = A[k][k];
        cplx phase = (akk == cplx(0)) ? cplx(1) : akk / std::abs(akk);
        cplx alpha = -phase * norm;
        std::vector<cplx> v(m - k);
        for (std::size_t i = k; i < m; ++i) v[i - k] = A[i][k];
        v[0] -= alpha;
        double vv = 0;
        for (const cplx& x : v) vv += std::norm(x);
        if (vv == 0) continue;
        auto reflect = [&](auto get, auto set) {
            cplx dot = 0;
            for (std::size_t i = k; i < m; ++i) dot += std::conj(v[i - k]) * get(i);
            cplx f = 2.0 * dot / vv;
            for (std::size_t i = k; i < m; ++i) set(i, get(i) - f * v[i - k]);
        };
        for (std::size_t j = k; j < n; ++j)
            reflect([&](std::size_t i) { return A[i][j]; },
                    [&](std::size_t i, cplx val) { A[i][j] = val; });
        reflect([&](std::size_t i) { return b[i]; },
                [&](std::size_t i, cplx val) { b[i] = val; });
        A[k][k] = alpha;
    }
    std::vector<cplx> x(n, cplx(0));
    for (std::size_t k = n; k-- > 0;) {
        cplx s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= A[k][j] * x[j];
        x[k] = (A[k][k] == cplx(0)) ? cplx(0) : s / A[k][k];
    }
    return x;
}

// ---------------------------------------------------------------------------
// Branch-continuous log sampler. Walks the given real points left to right,
// choosing the 2 pi i branch that stays closest to the previous value and
// refining by bisection when a step is ambiguous.
// ---------------------------------------------------------------------------
class LogWalker {
public:
    explicit LogWalker(std::function<cplx(double)> logh) : logh_(std::move(logh)) {}

    cplx at(double s) {
        cplx w = logh_(s);
        if (!finite_c(w)) throw fit_error("correction fit: log sample not finite");
        if (have_prev_) {
            double k = std::round((prev_.imag() - w.imag()) / kTwoPi);
            w += cplx(0, kTwoPi * k);
            if (std::abs(w.imag() - prev_.imag()) > 2.5 && depth_ < 14 &&
                s - prev_s_ > 1e-4) {
                // Ambiguous jump: resolve the branch at the midpoint first.
                ++depth_;
                at((prev_s_ + s) / 2);
                --depth_;
                w = logh_(s);
                double k2 = std::round((prev_.imag() - w.imag()) / kTwoPi);
                w += cplx(0, kTwoPi * k2);
            }
        }
        prev_ = w;
        prev_s_ = s;
        have_prev_ = true;
        return w;
    }

private:
    std::function<cplx(double)> logh_;
    cplx prev_;
    double prev_s_ = 0;
    bool have_prev_ = false;
    int depth_ = 0;
};

struct FitOptions {
    int degree = 0;
    double lo = 1.0;
    double hi = 12.0;
    int samples = 0;        // 0: max(2*(degree+2), 24)
    double holdout_tol = 1e-8;
};

Poly fit_log_ratio(const std::function<cplx(double)>& logh, const FitOptions& opt) {
    const int D = opt.degree;
    const int M = opt.samples > 0 ? opt.samples : std::max(2 * (D + 2), 24);
    const double mid = 0.5 * (opt.lo + opt.hi);
    const double half = 0.5 * (opt.hi - opt.lo);

    LogWalker walker(logh);
    std::vector<std::vector<cplx>> A(M, std::vector<cplx>(D + 1));
    std::vector<cplx> b(M);
    for (int j = 0; j < M; ++j) {
        double s = (M == 1) ? opt.lo : opt.lo + (opt.hi - opt.lo) * j / (M - 1);
        b[j] = walker.at(s);
        double u = (s - mid) / half;
        cplx p = 1;
        for (int k = 0; k <= D; ++k) {
            A[j][k] = p;
            p *= u;
        }
    }
    std::vector<cplx> cu = lstsq(std::move(A), std::move(b));

    // Expand sum_k cu[k] ((s - mid)/half)^k into monomials in s.
    Poly phi;
    Poly basis = Poly::constant(1);
    Poly lin({cplx(-mid / half), cplx(1.0 / half)});
    for (int k = 0; k <= D; ++k) {
        phi = phi + basis * cu[k];
        basis = basis * lin;
    }

    for (int k = 1; k <= 5; ++k) {
        double s = opt.lo + (opt.hi - opt.lo) * k / 6.0 + 0.037;
        if (s >= opt.hi) s = opt.hi - 0.013 * k;
        cplx resid = std::exp(phi(s) - logh(s)) - cplx(1.0);
        if (!(std::abs(resid) < opt.holdout_tol))
            throw fit_error("correction fit: holdout residual " +
                            format_double(std::abs(resid), 3) + " exceeds " +
                            format_double(opt.holdout_tol, 3));
    }
    return phi;
}

// Shared log of the genus-d canonical product over pre-enumerated elements.
cplx log_weierstrass(const std::vector<DivisorElement>& by_modulus, long long n0, int d,
                     cplx s) {
    KahanSum sum;
    if (n0 != 0) sum.add(cplx(static_cast<double>(n0)) * std::log(s));
    for (const auto& e : by_modulus) {
        cplx x = s / e.position;
        cplx term = log1p_c(-x);
        cplx xp = x;
        for (int j = 1; j <= d; ++j) {
            term += xp / static_cast<double>(j);
            xp *= x;
        }
        sum.add(cplx(static_cast<double>(e.multiplicity)) * term);
    }
    return sum.value();
}

double grow_radius(const DivisorSpec& gdiv, int d, double smax, const TruncationPolicy& policy) {
    double R = std::max(policy.radius, 2.0 * (smax + 1.0));
    for (;;) {
        double bound = 2.0 * std::pow(smax + 1.0, d + 1) * divisor_tail_bound(gdiv, R, d + 1);
        if (bound < policy.tol / 2) return R;
        if (R >= kRadiusCap) return 2 * kRadiusCap;  // caller: bump genus or signal
        R = std::min(R * 2, kRadiusCap);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// SeedFunction defaults and FuncSpecSeed
// ---------------------------------------------------------------------------

long long SeedFunction::multiplicity_at(cplx s) const {
    auto elements = divisor().enumerate(std::abs(s) + 1.0);
    return fegamma::multiplicity_at(elements, s);
}

ShiftedProduct SeedFunction::shifted_log_product(cplx s, int count) const {
    ShiftedProduct out;
    KahanSum sum;
    for (int k = 0; k < count; ++k) {
        cplx x = s + cplx(k);
        long long m = multiplicity_at(x);
        if (m != 0) {
            out.zero_order += m;
            // Reduced value by a small offset; accuracy is limited and only
            // off-grid evaluations land here.
            const double delta = 1e-6;
            sum.add(log_value(x + delta) - cplx(static_cast<double>(m)) * std::log(delta));
        } else {
            sum.add(log_value(x));
        }
    }
    out.log_value = sum.value();
    return out;
}

FuncSpecSeed::FuncSpecSeed(FunctionSpec spec)
    : spec_(std::move(spec)), div_(divisor_of(spec_)), real_analytic_(fegamma::real_analytic(spec_)) {}

long long FuncSpecSeed::multiplicity_at(cplx s) const {
    long long m = 0;
    for (const Atom& a : spec_.atoms()) {
        if (const auto* lin = std::get_if<LinearAtom>(&a)) {
            if (std::abs(s - lin->alpha) <= kMergeTol) m += lin->m;
        } else if (const auto* qf = std::get_if<QFactorAtom>(&a)) {
            double lq = std::log(qf->q);
            double k = std::round(s.imag() * lq / kTwoPi);
            cplx lattice(0.0, kTwoPi * k / lq);
            if (std::abs(s - lattice) <= kMergeTol) m += qf->m;
        }
    }
    return m;
}

ShiftedProduct FuncSpecSeed::shifted_log_product(cplx s, int count) const {
    ShiftedProduct out;
    KahanSum sum;
    for (const Atom& a : spec_.atoms()) {
        if (const auto* lin = std::get_if<LinearAtom>(&a)) {
            for (int k = 0; k < count; ++k) {
                cplx z = s + cplx(k) - lin->alpha;
                if (std::abs(z) <= kExactZeroTol) {
                    out.zero_order += lin->m;
                } else {
                    sum.add(cplx(lin->m) * std::log(z));
                }
            }
        } else if (const auto* c = std::get_if<ConstAtom>(&a)) {
            sum.add(cplx(count) * std::log(c->a));
        } else if (const auto* e = std::get_if<ExpPolyAtom>(&a)) {
            for (int k = 0; k < count; ++k) sum.add(e->p(s + cplx(k)));
        } else {
            const auto& qf = std::get<QFactorAtom>(a);
            double lq = std::log(qf.q);
            for (int k = 0; k < count; ++k) {
                cplx w = std::exp((s + cplx(k)) * lq);
                if (std::abs(cplx(1.0) - w) <= kExactZeroTol) {
                    // 1 - q^{s+k} = -log(q) z (1 + O(z)) at the lattice point;
                    // removing the monic factor z leaves the -log q Jacobian
                    // so cancellations against linear atoms stay exact.
                    out.zero_order += qf.m;
                    sum.add(cplx(qf.m) * (std::log(cplx(-lq)) - std::log(1.0 - qf.q)));
                } else {
                    sum.add(cplx(qf.m) * (log1p_c(-w) - std::log(1.0 - qf.q)));
                }
            }
        }
    }
    out.log_value = sum.value();
    return out;
}

int FuncSpecSeed::fit_degree_hint() const {
    int deg = 0;
    for (const Atom& a : spec_.atoms())
        if (const auto* e = std::get_if<ExpPolyAtom>(&a)) deg = std::max(deg, e->p.degree());
    return deg;
}

std::string to_string(Normalization n) {
    switch (n) {
        case Normalization::value1: return "value1";
        case Normalization::residue0: return "residue0";
        case Normalization::value0: return "value0";
        case Normalization::realanalytic: return "realanalytic";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// GammaSolution evaluation
// ---------------------------------------------------------------------------

cplx GammaSolution::log_pi(cplx s) const {
    KahanSum sum;
    if (n0_ != 0) sum.add(cplx(static_cast<double>(n0_)) * std::log(s));
    for (const auto& e : prod_) {
        sum.add(cplx(static_cast<double>(e.multiplicity)) * log1p_c(-s / e.position));
    }
    return sum.value();
}

cplx GammaSolution::eval_banded(cplx s) const {
    cplx lg = psi_(s) + c_ + log_pi(s);
    if (variant_a_ != 0 || variant_b_ != cplx(0))
        lg += cplx(0, kTwoPi) * cplx(static_cast<double>(variant_a_)) * s + variant_b_;
    return std::exp(lg);
}

long long GammaSolution::multiplicity_at(cplx s) const {
    if (std::abs(s) <= kMergeTol) return n0_;
    if (std::abs(s) <= radius_) return fegamma::multiplicity_at(prod_lex_, s);
    auto elements = gdiv_.enumerate(std::abs(s) + 1.0);
    return fegamma::multiplicity_at(elements, s);
}

cplx GammaSolution::eval(cplx s) const {
    if (!finite_c(s)) throw std::invalid_argument("eval: s must be finite");
    long long m = multiplicity_at(s);
    if (m < 0) throw divisor_signal(s, m);
    if (m > 0) return 0.0;

    if (s.real() >= 1.0) {
        if (std::abs(s) <= band_ || gdiv_.empty()) return eval_banded(s);
        // Out-of-band: rebuild with a band that covers s. Correct but slow.
        GammaSolution wide = build_gamma(seed_, norm_, policy_, std::abs(s) + 2.0);
        wide.variant_a_ = variant_a_;
        wide.variant_b_ = variant_b_;
        return wide.eval_banded(s);
    }

    int n = static_cast<int>(std::ceil(1.0 - s.real()));
    ShiftedProduct sp = seed_->shifted_log_product(s, n);
    if (sp.zero_order != 0) {
        // The shifted product is singular but Gamma itself is regular here
        // (multiplicities cancelled). Average two nearby regular points.
        const cplx d(1e-5, 0.37e-5);
        return 0.5 * (eval(s + d) + eval(s - d));
    }
    cplx up = eval(s + cplx(n));
    return up * std::exp(-sp.log_value);
}

bool GammaSolution::real_analytic() const {
    return norm_ == Normalization::realanalytic && variant_a_ == 0 &&
           variant_b_.imag() == 0.0;
}

GammaSolution GammaSolution::perturbed_psi(double slope) const {
    GammaSolution out = *this;
    out.psi_ = out.psi_ + Poly({cplx(0), cplx(slope)});
    return out;
}

GammaSolution uniqueness_variant(const GammaSolution& sol, int a, cplx b) {
    GammaSolution out = sol;
    out.variant_a_ += a;
    out.variant_b_ += b;
    return out;
}

// ---------------------------------------------------------------------------
// Builder
// ---------------------------------------------------------------------------

class GammaBuilder {
public:
    static GammaSolution build(std::shared_ptr<const SeedFunction> seed, Normalization norm,
                               TruncationPolicy policy, double band) {
        if (!seed) throw std::invalid_argument("build_gamma: null seed");
        const DivisorSpec& divf = seed->divisor();
        if (!classify(divf).lld)
            throw error("build_gamma: seed divisor is not LLD (zeros/poles in the right half-plane)");

        GammaSolution sol;
        sol.seed_ = std::move(seed);
        sol.norm_ = norm;
        sol.policy_ = policy;
        sol.band_ = band;
        sol.gdiv_ = propagate(divf);

        choose_product(sol, policy, band);
        fit_correction(sol, band);
        normalize(sol, norm);
        cross_validate(sol);
        return sol;
    }

private:
    static void choose_product(GammaSolution& sol, const TruncationPolicy& policy, double band) {
        if (sol.gdiv_.empty()) {
            sol.genus_ = 0;
            sol.radius_ = 0;
            sol.n0_ = 0;
            return;
        }
        int d0 = std::min(static_cast<int>(std::ceil(exponent_estimate(sol.gdiv_))) + 1, 8);
        for (int d = d0; d <= 8; ++d) {
            double R = grow_radius(sol.gdiv_, d, band, policy);
            if (R > kRadiusCap) {
                if (d < 8) continue;
                throw truncation_error("build_gamma: truncation radius above 1e6 at genus 8");
            }
            // Prefer a higher genus over an oversized product.
            if (d < 8 && sol.gdiv_.count_estimate(R) > 3e5) continue;
            auto elements = sol.gdiv_.enumerate_budget(R, 30000000);
            if (!elements) {
                if (d < 8) continue;
                throw truncation_error("build_gamma: enumeration budget exhausted at genus 8");
            }
            sol.genus_ = d;
            sol.radius_ = R;
            sol.prod_lex_ = std::move(*elements);
            break;
        }
        sol.prod_.clear();
        sol.n0_ = 0;
        for (const auto& e : sol.prod_lex_) {
            if (std::abs(e.position) <= kMergeTol)
                sol.n0_ = e.multiplicity;
            else
                sol.prod_.push_back(e);
        }
        std::erase_if(sol.prod_lex_,
                      [](const DivisorElement& e) { return std::abs(e.position) <= kMergeTol; });
        std::sort(sol.prod_.begin(), sol.prod_.end(), sorted_by_modulus);
    }

    static void fit_correction(GammaSolution& sol, double band) {
        const SeedFunction& f = *sol.seed_;
        FitOptions opt;
        opt.degree = std::max(sol.genus_, f.fit_degree_hint());
        opt.lo = 1.0;
        opt.hi = band - 1.0;
        auto logh = [&](double s) {
            return f.log_value(cplx(s)) + sol.log_pi(cplx(s)) - sol.log_pi(cplx(s + 1.0));
        };
        // Dodge sample collisions with boundary zeros of f. An LLD seed puts
        // none at s >= 1; the shift is an irrational offset so the dodge is
        // deterministic.
        double shift = 0.0;
        for (int j = 0; j <= 10; ++j) {
            double s = opt.lo + (opt.hi - opt.lo) * j / 10.0;
            if (f.multiplicity_at(cplx(s)) != 0) {
                shift = 0.37;
                break;
            }
        }
        opt.lo += shift;
        opt.hi += shift;
        sol.phi_ = fit_log_ratio(logh, opt);
        sol.psi_ = antidifference(sol.phi_);
    }

    static void normalize(GammaSolution& sol, Normalization norm) {
        switch (norm) {
            case Normalization::realanalytic:
                if (!sol.seed_->real_analytic())
                    throw normalization_error(
                        "realanalytic normalization requires a real-analytic seed");
                [[fallthrough]];
            case Normalization::value1:
                sol.c_ = -sol.psi_(cplx(1.0)) - sol.log_pi(cplx(1.0));
                break;
            case Normalization::value0: {
                if (sol.n0_ != 0)
                    throw normalization_error(
                        "value0 normalization requires Gamma^f regular and nonzero at 0");
                sol.c_ = -sol.psi_(cplx(0.0)) - reduced_log_pi0(sol);
                break;
            }
            case Normalization::residue0: {
                if (sol.n0_ != -1)
                    throw normalization_error(
                        "residue0 normalization requires a simple pole at 0 (f^{-1} with a pole at 0)");
                sol.c_ = -sol.psi_(cplx(0.0)) - reduced_log_pi0(sol);
                break;
            }
        }
        if (norm == Normalization::realanalytic) {
            cplx s(2.3, 1.1);
            cplx a = sol.eval_banded(std::conj(s));
            cplx b = std::conj(sol.eval_banded(s));
            if (std::abs(a - b) > 1e-6 * std::abs(b))
                throw normalization_error(
                    "realanalytic normalization: constructed solution is not conjugation-symmetric");
        }
    }

    // log of prod (1 - s/rho) at s = 0 with the s^{n0} factor removed: exactly 0.
    static cplx reduced_log_pi0(const GammaSolution&) { return cplx(0.0); }

    static void cross_validate(GammaSolution& sol) {
        const auto* fs = dynamic_cast<const FuncSpecSeed*>(sol.seed_.get());
        if (!fs) return;
        for (const Atom& a : fs->spec().atoms()) {
            if (!std::holds_alternative<LinearAtom>(a) && !std::holds_alternative<ConstAtom>(a))
                return;
        }
        // Rational seed: the closed form assembled from the Euler oracle
        // must agree up to the e^{2 pi i a s} family, so compare moduli of
        // normalization-free ratios at real points.
        MellinSolution closed = mellin_solve(fs->spec(), 0);
        const double base = 1.7;
        cplx g0 = sol.eval_banded(cplx(base));
        cplx f0 = closed.eval(cplx(base));
        for (double s : {3.3, 6.1}) {
            double lhs = std::abs(sol.eval_banded(cplx(s)) / g0);
            double rhs = std::abs(closed.eval(cplx(s)) / f0);
            if (std::abs(lhs - rhs) > 1e-6 * std::abs(rhs))
                throw fit_error("build_gamma: Weierstrass path disagrees with the closed form");
        }
    }
};

GammaSolution build_gamma(std::shared_ptr<const SeedFunction> seed, Normalization normalization,
                          TruncationPolicy policy, double band) {
    return GammaBuilder::build(std::move(seed), normalization, policy, band);
}

GammaSolution build_gamma(const FunctionSpec& spec, Normalization normalization,
                          TruncationPolicy policy, double band) {
    return GammaBuilder::build(std::make_shared<FuncSpecSeed>(spec), normalization, policy, band);
}

// ---------------------------------------------------------------------------
// Standalone construction pieces
// ---------------------------------------------------------------------------

cplx weierstrass_primary(cplx x, int d) {
    cplx e = 0;
    cplx xp = x;
    for (int j = 1; j <= d; ++j) {
        e += xp / static_cast<double>(j);
        xp *= x;
    }
    return (cplx(1.0) - x) * std::exp(e);
}

namespace {

struct EnumeratedProduct {
    std::vector<DivisorElement> by_modulus;
    long long n0 = 0;
    double radius = 0;
};

EnumeratedProduct enumerate_product(const DivisorSpec& gdiv, int d, double smax,
                                    const TruncationPolicy& policy) {
    EnumeratedProduct out;
    if (gdiv.empty()) return out;
    double R = grow_radius(gdiv, d, smax, policy);
    if (R > kRadiusCap)
        throw truncation_error("weierstrass_eval: truncation radius above 1e6 for this tolerance");
    out.radius = R;
    for (const auto& e : gdiv.enumerate(R)) {
        if (std::abs(e.position) <= kMergeTol)
            out.n0 = e.multiplicity;
        else
            out.by_modulus.push_back(e);
    }
    std::sort(out.by_modulus.begin(), out.by_modulus.end(), sorted_by_modulus);
    return out;
}

}  // namespace

cplx weierstrass_eval(const DivisorSpec& gdiv, int d, cplx s, TruncationPolicy policy) {
    if (d < 0) throw std::invalid_argument("weierstrass_eval: genus must be nonnegative");
    EnumeratedProduct prod = enumerate_product(gdiv, d, std::max(std::abs(s), 1.0), policy);
    if (std::abs(s) <= kMergeTol && prod.n0 != 0) throw divisor_signal(s, prod.n0);
    for (const auto& e : prod.by_modulus) {
        if (std::abs(e.position - s) <= kMergeTol) throw divisor_signal(s, e.multiplicity);
    }
    return std::exp(log_weierstrass(prod.by_modulus, prod.n0, d, s));
}

Poly correction_poly(const FunctionSpec& spec, const DivisorSpec& gdiv, int d,
                     TruncationPolicy policy) {
    if (!classify(divisor_of(spec)).lld) throw error("correction_poly: spec is not LLD");
    FuncSpecSeed seed(spec);
    FitOptions opt;
    opt.degree = std::max(d, seed.fit_degree_hint());
    opt.lo = 1.0;
    opt.hi = static_cast<double>(opt.degree + 2);
    opt.samples = opt.degree + 2;

    EnumeratedProduct prod = enumerate_product(gdiv, d, opt.hi + 1.5, policy);
    auto logg = [&](cplx s) { return log_weierstrass(prod.by_modulus, prod.n0, d, s); };
    auto logh = [&](double s) {
        return log_eval_f(spec, cplx(s)) + logg(cplx(s)) - logg(cplx(s + 1.0));
    };
    double shift = 0.0;
    for (int j = 0; j < opt.samples; ++j) {
        double s = opt.lo + j;
        if (seed.multiplicity_at(cplx(s)) != 0) {
            shift = 0.37;
            break;
        }
    }
    opt.lo += shift;
    opt.hi += shift;
    // Holdout tolerance follows the truncation quality: the genus-d product
    // carries an O(policy.tol) tail that the fit cannot beat.
    opt.holdout_tol = std::max(1e-8, 20.0 * policy.tol);
    return fit_log_ratio(logh, opt);
}

}  // namespace fegamma
