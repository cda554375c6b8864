#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "oll/errors.hpp"
#include "oll/ints.hpp"

namespace oll {

// Default C5: the weakest constant satisfying every inequality the potential
// chain needs (25 ln 4 + ln 3).
inline double default_c5() { return 25.0 * std::log(4.0) + std::log(3.0); }

struct ParamOverrides {
    std::optional<double> kappa;
    std::optional<int> d;
    std::optional<double> alpha;
    std::optional<double> gamma;
    std::optional<double> delta_star;
    std::optional<double> lambda;
    std::optional<double> c5;
};

// Strategy parameters of the segment-table adversary, either derived from
// (n, m, n0, mingap0) or overridden field by field.
struct AdversaryParams {
    double delta0 = 0;  // n0 / m
    double kappa = 0;
    int d = 0;
    double alpha = 0;
    double gamma = 0;
    double delta_star = 0;
    double lambda = 1;
    double c5 = 0;

    struct Flags {
        bool kappa = false, d = false, alpha = false, gamma = false, delta_star = false,
             lambda = false, c5 = false;
    } overridden;

    // Which derivation-time hypotheses hold at these values.
    struct Feasibility {
        bool i1 = false;  // delta*/gamma >= 2 (suitable gaps via Lemma 5)
        bool i2 = false;  // kappa >= 2 ln(1/delta0)/ln n
        bool i3 = false;  // d <= ln(gamma sqrt n)/(2 C5)
        bool i4 = false;  // gamma <= 1/4
        bool i5 = false;  // d kappa <= ln(delta0/delta*)/(2 C5)
        bool i6 = false;  // kappa <= 1/(24 ln 4) and kappa <= 1/50
        bool i7 = false;  // alpha >= 2 C5 kappa
        bool delta0_range = false;   // delta0 in (ln(n)^-2, 1 - n^-1/5)
        bool mingap_floor = false;   // mingap0 >= 1 + 12/delta0
        bool d_at_least_8 = false;
    } feasible;
};

// Evaluates the parameter equations; never throws on infeasibility.
inline AdversaryParams derive_params_report(const Int& n, const Int& m, const Int& n0,
                                            const Int& mingap0,
                                            const ParamOverrides& ov = {}) {
    if (n0 < 1) throw std::invalid_argument("derive_params: need n0 >= 1");
    if (n + n0 > m) throw std::invalid_argument("derive_params: need n + n0 <= m");

    AdversaryParams p;
    const double ln_n = ln_big(n);
    p.delta0 = std::exp(ln_big(n0) - ln_big(m));
    const double ln_inv_delta0 = -std::log(p.delta0);

    p.c5 = ov.c5.value_or(default_c5());
    p.overridden.c5 = ov.c5.has_value();

    p.kappa = ov.kappa.value_or(2.0 * ln_inv_delta0 / ln_n);
    p.overridden.kappa = ov.kappa.has_value();

    p.d = ov.d.value_or(static_cast<int>(
        std::floor((1.0 - p.delta0) * ln_n / (8.0 * p.c5 * ln_inv_delta0))));
    p.overridden.d = ov.d.has_value();

    p.alpha = ov.alpha.value_or(2.0 * p.c5 * p.kappa);
    p.overridden.alpha = ov.alpha.has_value();

    p.gamma = ov.gamma.value_or(std::exp(-0.25 * ln_n));
    p.overridden.gamma = ov.gamma.has_value();

    p.delta_star = ov.delta_star.value_or(p.delta0 * std::exp(p.delta0 - 1.0));
    p.overridden.delta_star = ov.delta_star.has_value();

    const bool big_mingap = mingap0 >= (Int(1) << n.convert_to<unsigned>());
    p.lambda = ov.lambda.value_or(big_mingap ? 1.0 : p.delta_star / 2.0);
    p.overridden.lambda = ov.lambda.has_value();

    auto& f = p.feasible;
    f.i1 = p.delta_star / p.gamma >= 2.0;
    f.i2 = p.kappa >= 2.0 * ln_inv_delta0 / ln_n - 1e-12;
    f.i3 = p.d <= std::log(p.gamma * std::exp(0.5 * ln_n)) / (2.0 * p.c5);
    f.i4 = p.gamma <= 0.25;
    f.i5 = p.d * p.kappa <= std::log(p.delta0 / p.delta_star) / (2.0 * p.c5);
    f.i6 = p.kappa <= 1.0 / (24.0 * std::log(4.0)) && p.kappa <= 0.02;
    f.i7 = p.alpha >= 2.0 * p.c5 * p.kappa - 1e-12;
    f.delta0_range = p.delta0 > 1.0 / (ln_n * ln_n) && p.delta0 < 1.0 - std::exp(-0.2 * ln_n);
    f.mingap_floor = to_double(mingap0) >= 1.0 + 12.0 / p.delta0;
    f.d_at_least_8 = p.d >= 8;
    return p;
}

// Throwing variant: d < 2 without an override is unusable (expected whenever
// the paper equations are evaluated at desk scale).
inline AdversaryParams derive_params(const Int& n, const Int& m, const Int& n0,
                                     const Int& mingap0, const ParamOverrides& ov = {}) {
    AdversaryParams p = derive_params_report(n, m, n0, mingap0, ov);
    if (p.d < 2)
        throw InfeasibleParamsError("derived d = " + std::to_string(p.d) +
                                        " (kappa = " + std::to_string(p.kappa) +
                                        ", delta0 = " + std::to_string(p.delta0) +
                                        ", C5 = " + std::to_string(p.c5) + "); override d to run",
                                    p.d);
    return p;
}

// Desk-scale profile: the paper equations yield d < 8 for any feasible n, so
// experiments override the depth to max(2, floor(log2(n)/4)) and rescale
// alpha so that alpha * d stays at 1 - delta0. Everything else keeps the
// derived value.
inline ParamOverrides desk_overrides(const Int& n, const Int& m, const Int& n0) {
    ParamOverrides ov;
    const int d = std::max(2, static_cast<int>(std::floor(log2_big(n))) / 4);
    ov.d = d;
    const double delta0 = std::exp(ln_big(n0) - ln_big(m));
    ov.alpha = (1.0 - delta0) / static_cast<double>(d);
    return ov;
}

}  // namespace oll
