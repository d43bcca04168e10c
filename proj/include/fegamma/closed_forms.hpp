#ifndef FEGAMMA_CLOSED_FORMS_HPP
#define FEGAMMA_CLOSED_FORMS_HPP

#include <string>
#include <vector>

#include "fegamma/funcspec.hpp"
#include "fegamma/util.hpp"

namespace fegamma {

// Reference implementations, independent of the Weierstrass construction in
// gamma_core, so the oracle-vs-construction comparisons are two-sided.

/// Classical Euler Gamma via the Stirling series plus upward recursion.
/// Relative error below 1e-12 for |s| <= 50; throws divisor_signal at the
/// nonpositive integers.
cplx euler_gamma_oracle(cplx s);

/// log Gamma variant (principal on the positive real axis).
cplx euler_log_gamma_oracle(cplx s);

/// (z; q)_inf = prod_{k>=0} (1 - z q^k), truncated once |z| q^k < tol (1-q).
cplx q_pochhammer_inf(cplx z, double q, double tol = 1e-16);

/// Jackson's q-Gamma: (q;q)_inf / (q^s;q)_inf * (1-q)^{1-s}.
cplx q_gamma(double q, cplx s);

/// Solutions of F(s+1) = R(s) F(s) for rational R, built from Euler Gamma:
/// F(s) = a^s prod Gamma(s-alpha_i) / prod Gamma(s-beta_j) * e^{2 pi i k s}.
struct MellinSolution {
    cplx a = 1.0;
    std::vector<cplx> roots;  // alphas, repeated by multiplicity
    std::vector<cplx> poles;  // betas, repeated by multiplicity
    int k = 0;                // branch index

    cplx eval(cplx s) const;
    std::string print() const;
};

/// Requires a spec made of Linear and Const atoms only.
MellinSolution mellin_solve(const FunctionSpec& spec, int k = 0);

enum class OmegaGammaFlavor {
    shintani,  // Gamma(s|w)   = (2 pi)^{-1/2} e^{(s/w - 1/2) log w} Gamma(s/w)
    barnes,    // Gamma_B(s|w) = e^{(s/w - 1) log w} Gamma(s/w)
    norm1,     // barnes / barnes(1): the Gamma^f(1|w) = 1 normalization,
               // e^{((s-1)/w) log w} Gamma(s/w) / Gamma(1/w)
};

/// N = 1 multiple Gamma closed forms; omega must lie in the open right
/// half-plane (principal log omega, real branch for real positive omega).
cplx gamma_omega(cplx s, cplx omega, OmegaGammaFlavor flavor);

}  // namespace fegamma

#endif
