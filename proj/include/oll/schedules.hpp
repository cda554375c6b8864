#pragma once

#include <cmath>
#include <set>
#include <vector>

#include "oll/errors.hpp"
#include "oll/ints.hpp"

namespace oll {

// Prefix load for the unrestricted game: n0 = ceil(N/2) equally spaced keys
// B, 2B, ..., n0*B with B as large as the range allows. After these are
// loaded the partially-loaded-game adversary takes over with mingap(Y0) = B.
inline std::vector<Int> theorem1_prefix(const Int& N, const Int& r) {
    const Int n0 = (N + 1) / 2;
    if (r < 2 * n0) throw std::invalid_argument("theorem1_prefix: need r >= 2*ceil(N/2)");
    const Int b = r / n0;
    std::vector<Int> keys;
    for (Int t = 1; t <= n0; ++t) keys.push_back(b * t);
    return keys;
}

// Phase sizes for the crowded regime n <= N < m < 2N: N_0 = floor(m/3), then
// each phase loads a third of the remaining space, for
// p = floor(ln(1-delta) / (7 ln(2/3))) - 1 phases.
inline std::vector<Int> phase_schedule(const Int& N, const Int& m) {
    if (!(N < m && m < 2 * N))
        throw std::invalid_argument("phase_schedule: need N < m < 2N");
    const double log_one_minus_delta = ln_big(m - N) - ln_big(m);
    const double p_real = log_one_minus_delta / (7.0 * std::log(2.0 / 3.0));
    const long long p = static_cast<long long>(std::floor(p_real)) - 1;
    if (p < 1)
        throw ScheduleInfeasibleError(
            "computed p = " + std::to_string(p) + "; use the sparse-regime adversary instead", p);

    std::vector<Int> sizes;
    Int n0 = m / 3;
    sizes.push_back(n0);
    Int space = m - n0;
    Int total = n0;
    for (long long j = 1; j <= p; ++j) {
        const Int nj = space / 3;
        sizes.push_back(nj);
        space -= nj;
        total += nj;
    }
    if (total > N)
        throw ScheduleInfeasibleError("phases need " + total.str() + " keys but N = " + N.str(),
                                      p);
    return sizes;
}

// The subsampling remark: between every adjacent pair of Y0 keep only
// ceil(12/delta0) equally spaced keys (floor rounding), so the effective
// mingap shrinks by at most a 1 + 12/delta0 factor over the game.
inline std::vector<Int> subsample_equally(const std::vector<Int>& y0, double delta0) {
    if (y0.size() < 2) throw std::invalid_argument("subsample_equally: need at least 2 keys");
    if (delta0 <= 0.0 || delta0 > 1.0)
        throw std::invalid_argument("subsample_equally: delta0 must be in (0, 1]");
    std::vector<Int> sorted(y0);
    std::sort(sorted.begin(), sorted.end());
    const Int c(static_cast<long long>(std::ceil(12.0 / delta0)));

    std::set<Int> out;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        const Int& a = sorted[i];
        const Int& b = sorted[i + 1];
        out.insert(a);
        for (Int j = 1; j <= c; ++j) {
            const Int key = a + j * (b - a) / (c + 1);
            if (!out.insert(key).second || key == a || key >= b)
                throw std::invalid_argument(
                    "subsample_equally: gap " + Int(b - a).str() +
                    " too small for " + c.str() + " interior keys");
        }
    }
    out.insert(sorted.back());
    return std::vector<Int>(out.begin(), out.end());
}

}  // namespace oll
