#ifndef FEGAMMA_FUNCSPEC_HPP
#define FEGAMMA_FUNCSPEC_HPP

#include <string>
#include <variant>
#include <vector>

#include "fegamma/algebra.hpp"
#include "fegamma/divisor.hpp"
#include "fegamma/util.hpp"

namespace fegamma {

// Seed functions are finite products of four atom kinds. The grammar is
// deliberately closed: exact divisors are required downstream.
//
//   expr := atom (('*'|'/') atom)*
//   atom := '(s' ('-'|'+') cnum ')' ['^' int]
//         | 'const(' cnum ')'
//         | 'exp(' poly ')'
//         | 'qfac(' real ')'
//   poly := ['+'|'-'] term (('+'|'-') term)*
//   term := coef ['*' 's' ['^' uint]] | 's' ['^' uint]
//   coef := cnum | '(' cnum ')'
//   cnum := real | real ('+'|'-') real 'i' | real 'i'
//
// Whitespace is ignored between tokens. Division inverts multiplicity.

struct LinearAtom {
    cplx alpha;  // (s - alpha)^m
    int m = 1;
};

struct ConstAtom {
    cplx a;  // nonzero
};

struct ExpPolyAtom {
    Poly p;  // exp(p(s))
};

struct QFactorAtom {
    double q;  // in (0, 1); factor ((1 - q^s)/(1 - q))^m
    int m = 1;
};

using Atom = std::variant<LinearAtom, ConstAtom, ExpPolyAtom, QFactorAtom>;

class FunctionSpec {
public:
    FunctionSpec() = default;
    explicit FunctionSpec(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

    const std::vector<Atom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }  // empty product == 1

    FunctionSpec operator*(const FunctionSpec& o) const;

    std::string to_json() const;
    static FunctionSpec from_json(const std::string& text);

private:
    std::vector<Atom> atoms_;
};

FunctionSpec parse(const std::string& text);
std::string print(const FunctionSpec& spec);

/// Product of atom values; throws divisor_signal at poles of the spec and
/// overflow_signal when the value leaves the floating range.
cplx eval_f(const FunctionSpec& spec, cplx s);

/// Principal-branch logarithm of the product, summed atom-wise; exact (no
/// exp/log round trip) for exp-polynomial atoms.
cplx log_eval_f(const FunctionSpec& spec, cplx s);

DivisorSpec divisor_of(const FunctionSpec& spec);

/// True iff constants and exp-polynomial coefficients are real and the
/// multiset of linear roots is closed under conjugation.
bool real_analytic(const FunctionSpec& spec);

}  // namespace fegamma

#endif
