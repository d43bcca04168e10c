#include "fegamma/divisor.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <unordered_map>

#include <json.hpp>

namespace fegamma {

namespace {

constexpr double kDirTol = 1e-12;

bool is_pure_imaginary(cplx d) { return std::abs(d.real()) <= kDirTol && std::abs(d.imag()) > kDirTol; }

void validate_generator(const Generator& g) {
    if (g.multiplicity == 0) throw std::invalid_argument("generator multiplicity must be nonzero");
    int imag_sign = 0;
    for (const Step& st : g.steps) {
        if (st.repeat < 1) throw std::invalid_argument("generator step repeat must be >= 1");
        cplx d = st.direction;
        bool left = d.real() < -kDirTol;
        bool vertical = is_pure_imaginary(d);
        if (!left && !vertical)
            throw std::invalid_argument(
                "generator step direction must have negative real part or be purely imaginary");
        if (vertical) {
            int s = d.imag() > 0 ? 1 : -1;
            if (imag_sign != 0 && s != imag_sign)
                throw std::invalid_argument(
                    "purely imaginary steps within a generator must share the sign of Im");
            imag_sign = s;
        }
    }
    // A vertical step next to a slanted left step could walk |Im| back down
    // and defeat the per-axis stopping rule, so keep left steps horizontal-Im
    // compatible: any left step with an imaginary part opposing a vertical
    // step is rejected.
    if (imag_sign != 0) {
        for (const Step& st : g.steps) {
            if (!is_pure_imaginary(st.direction) && st.direction.imag() * imag_sign < -kDirTol)
                throw std::invalid_argument(
                    "left-going steps may not oppose the generator's vertical direction");
        }
    }
}

// Positions reached along different index paths of one generator often
// coincide bit-exactly (rays over rationally related steps); collapsing them
// in a hash keyed on the double bit patterns keeps enumeration memory at the
// merged size instead of the raw tuple count.
struct BitKey {
    std::uint64_t re, im;
    bool operator==(const BitKey&) const = default;
};
struct BitKeyHash {
    std::size_t operator()(const BitKey& k) const {
        std::uint64_t h = k.re * 0x9e3779b97f4a7c15ull;
        h ^= k.im + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};
using PositionMap = std::unordered_map<BitKey, DivisorElement, BitKeyHash>;

BitKey bit_key(cplx z) {
    std::uint64_t re, im;
    double r = z.real(), i = z.imag();
    std::memcpy(&re, &r, 8);
    std::memcpy(&im, &i, 8);
    return {re, im};
}

// Enumerate one generator into `acc`; returns false if the raw budget is hit.
bool enumerate_generator(const Generator& g, double radius, std::size_t max_raw,
                         std::size_t& raw_count, PositionMap& acc) {
    const auto& steps = g.steps;
    const std::size_t axes = steps.size();

    // Depth-first over axis indices with per-axis stopping rules. All
    // directions either strictly decrease Re or strictly grow |Im| toward a
    // fixed sign, so each loop below terminates.
    struct Frame {
        cplx z;
        long long weight;
    };

    std::vector<Frame> stack(axes + 1);
    stack[0] = {g.base, g.multiplicity < 0 ? -g.multiplicity : g.multiplicity};
    const long long sign = g.multiplicity < 0 ? -1 : 1;

    auto rec = [&](auto&& self, std::size_t axis) -> bool {
        if (axis == axes) {
            cplx z = stack[axes].z;
            if (++raw_count > max_raw) return false;
            if (std::abs(z) <= radius + kMergeTol) {
                auto [it, fresh] = acc.try_emplace(bit_key(z), DivisorElement{z, 0});
                it->second.multiplicity += sign * stack[axes].weight;
                (void)fresh;
            }
            return true;
        }
        const cplx d = steps[axis].direction;
        const int r = steps[axis].repeat;
        const bool vertical = is_pure_imaginary(d);
        const int vsign = vertical ? (d.imag() > 0 ? 1 : -1) : 0;
        cplx z = stack[axis].z;
        for (int mm = 0;; ++mm) {
            if (vertical) {
                if (std::abs(z.imag()) > radius + 1.0 && z.imag() * vsign > 0) break;
            } else {
                if (z.real() < -(radius + 1.0)) break;
            }
            stack[axis + 1].z = z;
            stack[axis + 1].weight = stack[axis].weight * binomial(mm + r - 1, r - 1);
            if (!self(self, axis + 1)) return false;
            z += d;
        }
        return true;
    };
    return rec(rec, 0);
}

std::vector<DivisorElement> merge_elements(std::vector<DivisorElement> raw) {
    std::sort(raw.begin(), raw.end(), [](const DivisorElement& a, const DivisorElement& b) {
        if (a.position.real() != b.position.real()) return a.position.real() < b.position.real();
        return a.position.imag() < b.position.imag();
    });
    std::vector<DivisorElement> merged;
    std::size_t i = 0;
    while (i < raw.size()) {
        // Cluster by Re within the merge tolerance, then by Im inside the
        // cluster; exact coincidences dominate in practice.
        std::size_t j = i + 1;
        while (j < raw.size() && raw[j].position.real() - raw[j - 1].position.real() <= kMergeTol)
            ++j;
        std::sort(raw.begin() + i, raw.begin() + j,
                  [](const DivisorElement& a, const DivisorElement& b) {
                      if (a.position.imag() != b.position.imag())
                          return a.position.imag() < b.position.imag();
                      return a.position.real() < b.position.real();
                  });
        std::size_t k = i;
        while (k < j) {
            std::size_t l = k + 1;
            long long mult = raw[k].multiplicity;
            while (l < j && raw[l].position.imag() - raw[l - 1].position.imag() <= kMergeTol) {
                mult += raw[l].multiplicity;
                ++l;
            }
            if (mult != 0) merged.push_back({raw[k].position, mult});
            k = l;
        }
        i = j;
    }
    std::sort(merged.begin(), merged.end(), [](const DivisorElement& a, const DivisorElement& b) {
        if (a.position.real() != b.position.real()) return a.position.real() < b.position.real();
        return a.position.imag() < b.position.imag();
    });
    return merged;
}

}  // namespace

void DivisorSpec::add_point(cplx rho, long long multiplicity) {
    if (multiplicity == 0) return;
    for (auto it = points_.begin(); it != points_.end(); ++it) {
        if (std::abs(it->position - rho) <= kMergeTol) {
            it->multiplicity += multiplicity;
            if (it->multiplicity == 0) points_.erase(it);
            return;
        }
    }
    points_.push_back({rho, multiplicity});
}

void DivisorSpec::add_generator(Generator g) {
    validate_generator(g);
    generators_.push_back(std::move(g));
}

std::optional<std::vector<DivisorElement>> DivisorSpec::enumerate_budget(
    double radius, std::size_t max_raw) const {
    if (radius <= 0) throw std::invalid_argument("enumerate: radius must be positive");
    PositionMap acc;
    std::size_t raw_count = 0;
    for (const auto& p : points_) {
        if (++raw_count > max_raw) return std::nullopt;
        if (std::abs(p.position) <= radius + kMergeTol) {
            auto [it, fresh] = acc.try_emplace(bit_key(p.position), DivisorElement{p.position, 0});
            it->second.multiplicity += p.multiplicity;
            (void)fresh;
        }
    }
    for (const auto& g : generators_) {
        if (!enumerate_generator(g, radius, max_raw, raw_count, acc)) return std::nullopt;
    }
    std::vector<DivisorElement> raw;
    raw.reserve(acc.size());
    for (auto& [key, e] : acc) {
        (void)key;
        if (e.multiplicity != 0) raw.push_back(e);
    }
    return merge_elements(std::move(raw));
}

std::vector<DivisorElement> DivisorSpec::enumerate(double radius) const {
    auto r = enumerate_budget(radius, static_cast<std::size_t>(-1));
    return std::move(*r);
}

double DivisorSpec::count_estimate(double radius) const {
    double total = static_cast<double>(points_.size());
    for (const auto& g : generators_) {
        double c = 1.0;
        for (const Step& st : g.steps) {
            double disp = std::max(std::abs(st.direction.real()), std::abs(st.direction.imag()));
            double per_axis = (radius + std::abs(g.base)) / disp + 1.0;
            for (int r = 0; r < st.repeat; ++r) c *= per_axis;
        }
        total += c;
    }
    return total;
}

DivisorSpec DivisorSpec::scaled_arg(double scale) const {
    if (!(scale > 0)) throw std::invalid_argument("scaled_arg: scale must be positive");
    DivisorSpec out;
    for (const auto& p : points_) out.points_.push_back({p.position / scale, p.multiplicity});
    for (const auto& g : generators_) {
        Generator h = g;
        h.base /= scale;
        for (auto& st : h.steps) st.direction /= scale;
        out.generators_.push_back(std::move(h));
    }
    return out;
}

DivisorSpec DivisorSpec::negated() const {
    DivisorSpec out = *this;
    for (auto& p : out.points_) p.multiplicity = -p.multiplicity;
    for (auto& g : out.generators_) g.multiplicity = -g.multiplicity;
    return out;
}

DivisorClass classify(const DivisorSpec& div) {
    DivisorClass cls;
    cls.lld = true;
    cls.cld = true;
    auto point_ok = [&](cplx rho) {
        if (rho.real() > kDirTol) cls.lld = false;
        bool at_origin = std::abs(rho) <= kDirTol;
        if (!at_origin && rho.real() >= -kDirTol) cls.cld = false;  // boundary, nonzero
    };
    for (const auto& p : div.points()) point_ok(p.position);
    for (const auto& g : div.generators()) {
        point_ok(g.base);
        for (const Step& st : g.steps) {
            if (is_pure_imaginary(st.direction)) cls.cld = false;
        }
    }
    if (!cls.lld) cls.cld = false;
    cls.exponent = exponent_estimate(div);
    return cls;
}

double divisor_norm_of(const std::vector<DivisorElement>& elements, double alpha) {
    double sum = 0;
    for (const auto& e : elements) {
        double r = std::abs(e.position);
        if (r <= kMergeTol) continue;
        sum += static_cast<double>(std::llabs(e.multiplicity)) * std::pow(r, -alpha);
    }
    return sum;
}

double divisor_norm(const DivisorSpec& div, double alpha, double radius) {
    if (!(alpha > 0)) throw std::invalid_argument("divisor_norm: alpha must be positive");
    return divisor_norm_of(div.enumerate(radius), alpha);
}

double divisor_tail_bound(const DivisorSpec& div, double radius, double beta) {
    double tail = 0;
    for (const auto& p : div.points()) {
        double r = std::abs(p.position);
        if (r > radius) tail += static_cast<double>(std::llabs(p.multiplicity)) * std::pow(r, -beta);
    }
    for (const auto& g : div.generators()) {
        int dim = 0;
        for (const Step& st : g.steps) dim += st.repeat;
        if (beta <= dim) return std::numeric_limits<double>::infinity();
        // Count bound N(x) <= prod_axes ((x+|b|)/delta + 1)^repeat, summed over
        // dyadic annuli (2^j R, 2^{j+1} R]; crude but safe, and the builder
        // only uses it to grow the radius until it is small.
        double b = std::abs(g.base);
        double mult = static_cast<double>(std::llabs(g.multiplicity));
        for (int j = 0; j < 80; ++j) {
            double lo = radius * std::pow(2.0, j);
            double hi = 2 * lo;
            double count = 1.0;
            for (const Step& st : g.steps) {
                double disp =
                    std::max(std::abs(st.direction.real()), std::abs(st.direction.imag()));
                double per_axis = (hi + b) / disp + 1.0;
                for (int r = 0; r < st.repeat; ++r) count *= per_axis;
            }
            double term = mult * count * std::pow(lo, -beta);
            tail += term;
            if (term < 1e-300) break;
        }
    }
    return tail;
}

DivisorSpec propagate(const DivisorSpec& div_f) {
    if (!classify(div_f).lld)
        throw error("propagate: seed divisor is not left-located (LLD hypothesis violated)");
    DivisorSpec out;
    const cplx back(-1.0, 0.0);
    for (const auto& p : div_f.points()) {
        Generator g;
        g.base = p.position;
        g.steps = {{back, 1}};
        g.multiplicity = -p.multiplicity;
        out.add_generator(std::move(g));
    }
    for (const auto& g : div_f.generators()) {
        Generator h = g;
        h.multiplicity = -h.multiplicity;
        bool appended = false;
        for (Step& st : h.steps) {
            if (st.direction == back) {
                ++st.repeat;
                appended = true;
                break;
            }
        }
        if (!appended) h.steps.push_back({back, 1});
        out.add_generator(std::move(h));
    }
    return out;
}

double exponent_estimate(const DivisorSpec& div) {
    if (div.empty()) return 0.5;
    auto e1 = div.enumerate(64.0);
    auto e2 = div.enumerate(128.0);
    for (double alpha = 0.5; alpha <= 6.0; alpha += 0.5) {
        double n1 = divisor_norm_of(e1, alpha);
        double n2 = divisor_norm_of(e2, alpha);
        if (n2 == 0.0) return 0.5;
        if ((n2 - n1) < 0.05 * n2) return alpha;
    }
    return 6.5;
}

long long multiplicity_at(const std::vector<DivisorElement>& sorted_elements, cplx s) {
    // Binary search the Re window, then scan it for an Im match.
    auto lo = std::lower_bound(sorted_elements.begin(), sorted_elements.end(),
                               s.real() - kMergeTol, [](const DivisorElement& e, double v) {
                                   return e.position.real() < v;
                               });
    for (auto it = lo; it != sorted_elements.end() && it->position.real() <= s.real() + kMergeTol;
         ++it) {
        if (std::abs(it->position - s) <= kMergeTol) return it->multiplicity;
    }
    return 0;
}

std::string DivisorSpec::to_json() const {
    nlohmann::json j;
    j["points"] = nlohmann::json::array();
    for (const auto& p : points_) {
        j["points"].push_back({{"rho", {{"re", p.position.real()}, {"im", p.position.imag()}}},
                               {"n", p.multiplicity}});
    }
    j["families"] = nlohmann::json::array();
    for (const auto& g : generators_) {
        nlohmann::json steps = nlohmann::json::array();
        for (const auto& st : g.steps)
            steps.push_back({{"dir", {{"re", st.direction.real()}, {"im", st.direction.imag()}}},
                             {"repeat", st.repeat}});
        j["families"].push_back({{"base", {{"re", g.base.real()}, {"im", g.base.imag()}}},
                                 {"steps", steps},
                                 {"multiplicity", g.multiplicity}});
    }
    return j.dump();
}

DivisorSpec DivisorSpec::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    DivisorSpec out;
    for (const auto& p : j.at("points")) {
        out.add_point({p.at("rho").at("re").get<double>(), p.at("rho").at("im").get<double>()},
                      p.at("n").get<long long>());
    }
    for (const auto& gj : j.at("families")) {
        Generator g;
        g.base = {gj.at("base").at("re").get<double>(), gj.at("base").at("im").get<double>()};
        g.multiplicity = gj.at("multiplicity").get<long long>();
        for (const auto& sj : gj.at("steps")) {
            g.steps.push_back(
                {{sj.at("dir").at("re").get<double>(), sj.at("dir").at("im").get<double>()},
                 sj.at("repeat").get<int>()});
        }
        out.add_generator(std::move(g));
    }
    return out;
}

}  // namespace fegamma
