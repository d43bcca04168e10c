#include "fegamma/funcspec.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <json.hpp>

namespace fegamma {

namespace {

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Cursor {
public:
    explicit Cursor(const std::string& text) : s_(text) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool done() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool accept_word(const char* w) {
        skip_ws();
        std::size_t n = std::string(w).size();
        if (s_.compare(pos_, n, w) == 0) {
            pos_ += n;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos_); }
    std::size_t pos() const { return pos_; }

    double parse_real() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
        bool digits = false;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
            digits = true;
        }
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
                digits = true;
            }
        }
        if (!digits) {
            pos_ = start;
            fail("expected a number");
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            } else {
                pos_ = mark;  // bare 'e' belongs to something else
            }
        }
        return std::stod(s_.substr(start, pos_ - start));
    }

    int parse_int() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected an integer");
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return std::stoi(s_.substr(start, pos_ - start));
    }

    // a, a+bi, a-bi, bi
    cplx parse_cnum() {
        double re = parse_real();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == 'i') {
            ++pos_;
            return {0.0, re};
        }
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
            std::size_t mark = pos_;
            char sign = s_[pos_];
            ++pos_;
            double im;
            try {
                im = parse_real();
            } catch (const parse_error&) {
                pos_ = mark;
                return {re, 0.0};
            }
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == 'i') {
                ++pos_;
                return {re, sign == '-' ? -im : im};
            }
            pos_ = mark;  // it was the next additive term, not an imaginary part
        }
        return {re, 0.0};
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

Poly parse_poly(Cursor& cur) {
    std::vector<cplx> coeffs;
    auto put = [&](int k, cplx c) {
        if (static_cast<std::size_t>(k) >= coeffs.size()) coeffs.resize(k + 1, cplx(0));
        coeffs[k] += c;
    };
    bool first = true;
    for (;;) {
        double sign = 1.0;
        if (cur.accept('+')) {
        } else if (cur.accept('-')) {
            sign = -1.0;
        } else if (!first) {
            break;
        }
        first = false;
        cplx coef(1.0, 0.0);
        bool have_coef = false;
        if (cur.accept('(')) {
            coef = cur.parse_cnum();
            cur.expect(')');
            have_coef = true;
        } else if (cur.peek() != 's') {
            coef = cur.parse_cnum();
            have_coef = true;
        }
        int power = 0;
        bool have_s = false;
        if (have_coef && cur.accept('*')) {
            if (!cur.accept_word("s")) cur.fail("expected 's' after '*'");
            have_s = true;
        } else if (!have_coef && cur.accept_word("s")) {
            have_s = true;
        }
        if (have_s) {
            power = 1;
            if (cur.accept('^')) {
                power = cur.parse_int();
                if (power < 0) cur.fail("negative power inside exp() polynomial");
            }
        }
        put(power, sign * coef);
        if (cur.peek() != '+' && cur.peek() != '-') break;
    }
    return Poly(std::move(coeffs));
}

Atom parse_atom(Cursor& cur, bool inverted) {
    if (cur.accept_word("const(")) {
        cplx a = cur.parse_cnum();
        cur.expect(')');
        if (a == cplx(0)) cur.fail("const() must be nonzero");
        return ConstAtom{inverted ? cplx(1.0) / a : a};
    }
    if (cur.accept_word("exp(")) {
        Poly p = parse_poly(cur);
        cur.expect(')');
        return ExpPolyAtom{inverted ? -p : p};
    }
    if (cur.accept_word("qfac(")) {
        double q = cur.parse_real();
        cur.expect(')');
        if (!(q > 0.0 && q < 1.0)) cur.fail("qfac(q) requires q in (0,1)");
        return QFactorAtom{q, inverted ? -1 : 1};
    }
    if (cur.accept('(')) {
        if (!cur.accept_word("s")) cur.fail("expected 's' after '('");
        cplx alpha;
        if (cur.accept('-')) {
            alpha = cur.parse_cnum();
        } else if (cur.accept('+')) {
            alpha = -cur.parse_cnum();
        } else {
            cur.fail("expected '+' or '-' after '(s'");
        }
        cur.expect(')');
        int m = 1;
        if (cur.accept('^')) {
            m = cur.parse_int();
            if (m == 0) cur.fail("exponent 0 would drop the factor; multiplicity must be nonzero");
        }
        return LinearAtom{alpha, inverted ? -m : m};
    }
    cur.fail("expected an atom: (s±c), const(..), exp(..) or qfac(..)");
}

}  // namespace

FunctionSpec parse(const std::string& text) {
    Cursor cur(text);
    if (cur.done()) throw parse_error("empty input", 0);
    std::vector<Atom> atoms;
    atoms.push_back(parse_atom(cur, false));
    for (;;) {
        if (cur.accept('*')) {
            atoms.push_back(parse_atom(cur, false));
        } else if (cur.accept('/')) {
            atoms.push_back(parse_atom(cur, true));
        } else {
            break;
        }
    }
    if (!cur.done()) cur.fail("unexpected trailing input");
    return FunctionSpec(std::move(atoms));
}

namespace {

std::string print_poly(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = 0; k <= p.degree(); ++k) {
        cplx c = p.coeff(k);
        if (c == cplx(0)) continue;
        if (!out.empty()) out += " + ";
        bool complex_coef = c.imag() != 0.0;
        std::string cs = complex_coef ? "(" + format_cnum(c) + ")" : format_cnum(c);
        if (k == 0) {
            out += cs;
        } else {
            out += cs + "*s";
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace

std::string print(const FunctionSpec& spec) {
    if (spec.empty()) return "const(1)";
    std::string out;
    for (const Atom& a : spec.atoms()) {
        bool divide = false;
        std::string body;
        if (const auto* lin = std::get_if<LinearAtom>(&a)) {
            body = "(s";
            cplx alpha = lin->alpha;
            if (alpha.real() == 0.0 && alpha.imag() == 0.0) {
                body += "-0";
            } else if (alpha.real() < 0 && alpha.imag() == 0.0) {
                body += "+" + format_cnum(-alpha);
            } else {
                body += "-" + format_cnum(alpha);
            }
            body += ")";
            if (lin->m != 1) body += "^" + std::to_string(lin->m);
        } else if (const auto* c = std::get_if<ConstAtom>(&a)) {
            body = "const(" + format_cnum(c->a) + ")";
        } else if (const auto* e = std::get_if<ExpPolyAtom>(&a)) {
            body = "exp(" + print_poly(e->p) + ")";
        } else {
            const auto& qf = std::get<QFactorAtom>(a);
            body = "qfac(" + format_double(qf.q) + ")";
            divide = qf.m < 0;
        }
        if (out.empty()) {
            if (divide) out = "const(1)/" + body;
            else out = body;
        } else {
            out += divide ? "/" : "*";
            out += body;
        }
    }
    return out;
}

FunctionSpec FunctionSpec::operator*(const FunctionSpec& o) const {
    std::vector<Atom> all = atoms_;
    all.insert(all.end(), o.atoms_.begin(), o.atoms_.end());
    return FunctionSpec(std::move(all));
}

cplx eval_f(const FunctionSpec& spec, cplx s) {
    cplx v = 1;
    for (const Atom& a : spec.atoms()) {
        if (const auto* lin = std::get_if<LinearAtom>(&a)) {
            cplx base = s - lin->alpha;
            if (lin->m < 0 && std::abs(base) < 1e-12) throw divisor_signal(s, lin->m);
            v *= std::pow(base, lin->m);
        } else if (const auto* c = std::get_if<ConstAtom>(&a)) {
            v *= c->a;
        } else if (const auto* e = std::get_if<ExpPolyAtom>(&a)) {
            v *= std::exp(e->p(s));
        } else {
            const auto& qf = std::get<QFactorAtom>(a);
            cplx qs = std::exp(s * std::log(qf.q));
            cplx factor = (cplx(1) - qs) / (1.0 - qf.q);
            if (qf.m < 0 && std::abs(cplx(1) - qs) < 1e-12) throw divisor_signal(s, qf.m);
            v *= (qf.m == 1) ? factor : std::pow(factor, qf.m);
        }
    }
    if (!finite_c(v)) throw overflow_signal("eval_f: value outside floating range");
    return v;
}

cplx log_eval_f(const FunctionSpec& spec, cplx s) {
    cplx sum = 0;
    for (const Atom& a : spec.atoms()) {
        if (const auto* lin = std::get_if<LinearAtom>(&a)) {
            sum += cplx(lin->m) * std::log(s - lin->alpha);
        } else if (const auto* c = std::get_if<ConstAtom>(&a)) {
            sum += std::log(c->a);
        } else if (const auto* e = std::get_if<ExpPolyAtom>(&a)) {
            sum += e->p(s);
        } else {
            const auto& qf = std::get<QFactorAtom>(a);
            cplx qs = std::exp(s * std::log(qf.q));
            sum += cplx(qf.m) * (log1p_c(-qs) - std::log(1.0 - qf.q));
        }
    }
    return sum;
}

DivisorSpec divisor_of(const FunctionSpec& spec) {
    DivisorSpec div;
    for (const Atom& a : spec.atoms()) {
        if (const auto* lin = std::get_if<LinearAtom>(&a)) {
            div.add_point(lin->alpha, lin->m);
        } else if (const auto* qf = std::get_if<QFactorAtom>(&a)) {
            // Zeros where q^s = 1: the vertical lattice 2 pi i k / log q. Two
            // one-sided generators cover k >= 0 and k <= -1.
            cplx d = cplx(0, kTwoPi) / std::log(qf->q);
            Generator up;
            up.base = 0;
            up.steps = {{d, 1}};
            up.multiplicity = qf->m;
            Generator down;
            down.base = -d;
            down.steps = {{-d, 1}};
            down.multiplicity = qf->m;
            div.add_generator(std::move(up));
            div.add_generator(std::move(down));
        }
        // const / exp atoms carry no divisor
    }
    return div;
}

bool real_analytic(const FunctionSpec& spec) {
    std::vector<std::pair<cplx, int>> roots;
    for (const Atom& a : spec.atoms()) {
        if (const auto* lin = std::get_if<LinearAtom>(&a)) {
            if (lin->alpha.imag() != 0.0) roots.emplace_back(lin->alpha, lin->m);
        } else if (const auto* c = std::get_if<ConstAtom>(&a)) {
            if (c->a.imag() != 0.0) return false;
        } else if (const auto* e = std::get_if<ExpPolyAtom>(&a)) {
            for (const cplx& coef : e->p.coeffs())
                if (coef.imag() != 0.0) return false;
        }
    }
    // The multiset of non-real roots must be closed under conjugation with
    // matching multiplicities.
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        bool found = false;
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (i == j || used[j]) continue;
            if (std::abs(roots[j].first - std::conj(roots[i].first)) <= 1e-12 &&
                roots[j].second == roots[i].second) {
                used[i] = used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

std::string FunctionSpec::to_json() const {
    nlohmann::json atoms = nlohmann::json::array();
    for (const Atom& a : atoms_) {
        if (const auto* lin = std::get_if<LinearAtom>(&a)) {
            atoms.push_back({{"kind", "linear"},
                             {"alpha", {{"re", lin->alpha.real()}, {"im", lin->alpha.imag()}}},
                             {"m", lin->m}});
        } else if (const auto* c = std::get_if<ConstAtom>(&a)) {
            atoms.push_back(
                {{"kind", "const"}, {"a", {{"re", c->a.real()}, {"im", c->a.imag()}}}});
        } else if (const auto* e = std::get_if<ExpPolyAtom>(&a)) {
            nlohmann::json coeffs = nlohmann::json::array();
            for (const cplx& cf : e->p.coeffs())
                coeffs.push_back({{"re", cf.real()}, {"im", cf.imag()}});
            atoms.push_back({{"kind", "exppoly"}, {"coeffs", coeffs}});
        } else {
            const auto& qf = std::get<QFactorAtom>(a);
            if (qf.m == 1)
                atoms.push_back({{"kind", "qfac"}, {"q", qf.q}});
            else
                atoms.push_back({{"kind", "qfac"}, {"q", qf.q}, {"m", qf.m}});
        }
    }
    nlohmann::json j;
    j["atoms"] = atoms;
    return j.dump();
}

FunctionSpec FunctionSpec::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<Atom> atoms;
    for (const auto& aj : j.at("atoms")) {
        std::string kind = aj.at("kind").get<std::string>();
        if (kind == "linear") {
            LinearAtom lin;
            lin.alpha = {aj.at("alpha").at("re").get<double>(),
                         aj.at("alpha").at("im").get<double>()};
            lin.m = aj.at("m").get<int>();
            if (lin.m == 0) throw error("funcspec json: linear multiplicity must be nonzero");
            atoms.push_back(lin);
        } else if (kind == "const") {
            ConstAtom c{{aj.at("a").at("re").get<double>(), aj.at("a").at("im").get<double>()}};
            if (c.a == cplx(0)) throw error("funcspec json: const must be nonzero");
            atoms.push_back(c);
        } else if (kind == "exppoly") {
            std::vector<cplx> coeffs;
            for (const auto& cj : aj.at("coeffs"))
                coeffs.emplace_back(cj.at("re").get<double>(), cj.at("im").get<double>());
            atoms.push_back(ExpPolyAtom{Poly(std::move(coeffs))});
        } else if (kind == "qfac") {
            QFactorAtom qf{aj.at("q").get<double>(), aj.value("m", 1)};
            if (!(qf.q > 0 && qf.q < 1)) throw error("funcspec json: qfac q must be in (0,1)");
            atoms.push_back(qf);
        } else {
            throw error("funcspec json: unknown atom kind '" + kind + "'");
        }
    }
    return FunctionSpec(std::move(atoms));
}

}  // namespace fegamma
