// Compares the serial and OpenMP grid-evaluation paths on the verification
// grid: same work, same results, wall-clock side by side.

#include <chrono>
#include <cstdio>

#include "fegamma/verify.hpp"

using namespace fegamma;

namespace {

double time_run(const std::vector<cplx>& pts, const std::function<cplx(cplx)>& fn,
                bool parallel, std::vector<cplx>& out) {
    auto t0 = std::chrono::steady_clock::now();
    out = map_points(pts, fn, parallel);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    struct Case {
        const char* name;
        const char* seed;
    };
    const Case cases[] = {
        {"euler", "(s-0)"},
        {"rational", "(s-0)*(s+1)/const(2)"},
        {"qgamma", "qfac(0.5)"},
    };

    std::printf("%-10s %10s %12s %12s %8s  %s\n", "case", "points", "serial[s]", "openmp[s]",
                "speedup", "match");
    for (const Case& c : cases) {
        GammaSolution sol = build_gamma(parse(c.seed));
        auto divisor = sol.divisor().enumerate(18.0);
        auto pts = grid_points(GridSpec{}, divisor);
        auto fn = [&](cplx s) { return sol.eval(s); };

        std::vector<cplx> serial_out, parallel_out;
        double warm = time_run(pts, fn, true, parallel_out);  // warm caches
        (void)warm;
        double ts = time_run(pts, fn, false, serial_out);
        double tp = time_run(pts, fn, true, parallel_out);

        bool identical = serial_out.size() == parallel_out.size();
        for (std::size_t i = 0; identical && i < serial_out.size(); ++i) {
            bool nan_s = !finite_c(serial_out[i]), nan_p = !finite_c(parallel_out[i]);
            if (nan_s != nan_p) identical = false;
            else if (!nan_s && serial_out[i] != parallel_out[i]) identical = false;
        }
        std::printf("%-10s %10zu %12.4f %12.4f %7.2fx  %s\n", c.name, pts.size(), ts, tp,
                    ts / tp, identical ? "bitwise" : "MISMATCH");
    }
    return 0;
}
