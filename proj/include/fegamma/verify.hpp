#ifndef FEGAMMA_VERIFY_HPP
#define FEGAMMA_VERIFY_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fegamma/gamma_core.hpp"
#include "fegamma/hierarchy.hpp"

namespace fegamma {

struct CheckResult {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool warning = false;  // e.g. empty grid
};

struct VerificationReport {
    std::string suite;
    std::vector<CheckResult> checks;
    std::string grid_description;
    double runtime_seconds = 0.0;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }
};

struct CsvRow {
    std::string suite;
    std::string check;
    double s_re, s_im;
    double value_re, value_im;
    double residual;
};

/// `suite,check,s_re,s_im,value_re,value_im,residual` rows, sorted, 15
/// significant digits; byte-identical across runs with identical inputs.
std::string csv_serialize(std::vector<CsvRow> rows);

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------
struct GridSpec {
    double re_min = 0.1, re_max = 10.0;
    double im_min = -5.0, im_max = 5.0;
    double step = 0.7;
    double exclusion = 0.05;  // radius around divisor points to skip
    std::string describe() const;
};

/// Grid points with both s and s+1 at least `exclusion` away from the
/// divisor elements supplied.
std::vector<cplx> grid_points(const GridSpec& grid, const std::vector<DivisorElement>& divisor);

/// Evaluates fn over points; parallel=true uses OpenMP when compiled in.
/// Exceptions inside fn mark the point as skipped (NaN result). Results are
/// bitwise identical between the serial and parallel paths.
std::vector<cplx> map_points(const std::vector<cplx>& points,
                             const std::function<cplx(cplx)>& fn, bool parallel);

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------
struct VerifyOptions {
    double tol_override = 0.0;  // 0: per-check defaults
    bool parallel = true;
    bool corrupt = false;  // negative-control mode: break each suite's core
    std::string csv_path;  // empty: no artifact
};

/// Max relative residual of Gamma(s+1) = f(s) Gamma(s) over the grid.
CheckResult check_functional_equation(const GammaSolution& sol, const GridSpec& grid,
                                      double tol = 1e-9, bool parallel = true,
                                      std::vector<CsvRow>* rows = nullptr,
                                      const std::string& name = "functional_equation");

CheckResult check_functional_equation_level(const HierarchyLevel& level, const GridSpec& grid,
                                            double tol = 1e-8, bool parallel = true,
                                            std::vector<CsvRow>* rows = nullptr,
                                            const std::string& name = "ladder_equation");

/// |Gamma^{fg} - Gamma^f Gamma^g| / |Gamma^{fg}| over the grid; requires
/// f(1) = g(1) = 1.
CheckResult check_morphism(const FunctionSpec& f, const FunctionSpec& g, const GridSpec& grid,
                           double tol = 1e-8, bool parallel = true,
                           std::vector<CsvRow>* rows = nullptr);

enum class Suite { euler, qgamma, mellin, barnes, multiple, all };

std::optional<Suite> suite_from_name(const std::string& name);
std::string to_string(Suite s);

VerificationReport run_suite(Suite which, const VerifyOptions& options = {});

std::string format_report(const VerificationReport& report);

}  // namespace fegamma

#endif
