#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "oll/segment_table.hpp"

namespace oll {

// Auditor over a completed adversary run: structural checks, the properties
// P1-P7, monotone growth along epochs, the per-rebuild balance conclusions
// and the mingap dynamics. Violations are report entries, never errors.
struct PropertyResult {
    enum class Status { Pass, Fail, Vacuous };
    Status status = Status::Vacuous;
    std::int64_t checked = 0;
    std::int64_t violations = 0;
    std::string first_counterexample;

    bool ok() const { return status != Status::Fail; }
    void count(bool pass, const std::string& site) {
        ++checked;
        if (!pass) {
            ++violations;
            if (first_counterexample.empty()) first_counterexample = site;
        }
    }
    void settle() {
        if (checked == 0)
            status = Status::Vacuous;
        else
            status = violations == 0 ? Status::Pass : Status::Fail;
    }
};

struct AuditReport {
    PropertyResult nesting;       // T1 >= S1 >= T2 >= ... down every column
    PropertyResult prefix_green;  // greens form a prefix of each column
    PropertyResult green_copy;    // green site => segments copied to t+1
    PropertyResult conservation;  // sum of epoch charges == chi^n
    PropertyResult p[7];          // P1..P7
    PropertyResult monotonicity;  // Prop.-13 growth along epochs
    PropertyResult lemma9;        // per-rebuild balance conclusions
    PropertyResult mingap;        // mingap(Y^t) >= mingap(Y^0)/2^t
    std::int64_t strictness_degeneracies = 0;  // tiny segments allowed to coincide
    std::int64_t fallbacks = 0;
    std::int64_t truncations = 0;
    std::int64_t busy_disconnects = 0;

    bool structural_pass() const {
        return nesting.ok() && prefix_green.ok() && green_copy.ok() && conservation.ok();
    }
};

namespace detail {

inline std::string site_label(std::int64_t t, int level) {
    std::ostringstream os;
    os << "(level " << level << ", step " << t << ")";
    return os.str();
}

}  // namespace detail

inline AuditReport audit_properties(const RunRecord& record) {
    AuditReport rep;
    rep.fallbacks = record.fallback_count;
    rep.truncations = record.truncation_count;
    rep.busy_disconnects = record.busy_disconnect_count;
    const double eps = 1e-9;
    const AdversaryParams& pr = record.params;
    const double n_real = to_double(record.n);

    // P1 is a parameter fact, not a per-step one.
    rep.p[0].count(pr.d >= 8, "d = " + std::to_string(pr.d));

    for (std::size_t ci = 0; ci < record.columns.size(); ++ci) {
        const ColumnRecord& col = record.columns[ci];
        // Nesting chain with the documented strictness rule: proper inclusion
        // required only when the inner segment has at least 4 cells.
        for (int i = 1; i <= col.depth; ++i) {
            const SiteRecord& site = col.sites[static_cast<std::size_t>(i - 1)];
            auto check_pair = [&](const Segment& outer, const Segment& inner) {
                rep.nesting.count(outer.contains(inner), detail::site_label(col.t, i));
                if (outer == inner && inner.size() >= 4) ++rep.strictness_degeneracies;
            };
            if (i > 1) check_pair(col.sites[static_cast<std::size_t>(i - 2)].s_seg, site.t_seg);
            check_pair(site.t_seg, site.s_seg);
        }
        // Column colors must be a green prefix.
        bool seen_red = false;
        for (int i = 1; i <= col.depth; ++i) {
            const bool green = col.sites[static_cast<std::size_t>(i - 1)].green;
            rep.prefix_green.count(!(green && seen_red), detail::site_label(col.t, i));
            if (!green) seen_red = true;
        }
        // Green sites copy verbatim into the next column.
        if (ci + 1 < record.columns.size()) {
            const ColumnRecord& next = record.columns[ci + 1];
            for (int i = 1; i <= col.depth; ++i) {
                const SiteRecord& site = col.sites[static_cast<std::size_t>(i - 1)];
                if (!site.green) continue;
                const bool present = i <= next.depth;
                const bool copied =
                    present &&
                    next.sites[static_cast<std::size_t>(i - 1)].s_seg == site.s_seg &&
                    next.sites[static_cast<std::size_t>(i - 1)].t_seg == site.t_seg;
                rep.green_copy.count(copied, detail::site_label(next.t, i));
            }
        }
        // P2: table segments no larger than n/2.
        for (int i = 1; i <= col.depth; ++i)
            rep.p[1].count(to_double(col.sites[static_cast<std::size_t>(i - 1)].s_seg.size()) <=
                               n_real / 2.0,
                           detail::site_label(col.t, i));
        // P3: sizes at least halve down the column.
        for (int i = 2; i <= col.depth; ++i)
            rep.p[2].count(2 * col.sites[static_cast<std::size_t>(i - 1)].s_seg.size() <=
                               col.sites[static_cast<std::size_t>(i - 2)].s_seg.size(),
                           detail::site_label(col.t, i));
        // P4: sizes at least 1/gamma.
        for (int i = 1; i <= col.depth; ++i)
            rep.p[3].count(to_double(col.sites[static_cast<std::size_t>(i - 1)].s_seg.size()) >=
                               1.0 / pr.gamma - eps,
                           detail::site_label(col.t, i));
        // P5: densities do not drop much down the column.
        for (int i = 1; i <= col.depth; ++i) {
            const double rho = col.sites[static_cast<std::size_t>(i - 1)].s_density;
            const double floor_val =
                i == 1 ? pr.delta0 * std::exp(-pr.alpha)
                       : std::exp(-pr.alpha) *
                             col.sites[static_cast<std::size_t>(i - 2)].s_density;
            rep.p[4].count(rho >= floor_val - eps, detail::site_label(col.t, i));
        }
        // P6: every table segment at least delta*.
        for (int i = 1; i <= col.depth; ++i)
            rep.p[5].count(col.sites[static_cast<std::size_t>(i - 1)].s_density >=
                               pr.delta_star - eps,
                           detail::site_label(col.t, i));
        // Charge partition adds up per step.
        std::int64_t qsum = 0;
        for (std::int64_t q : col.charges) qsum += q;
        rep.conservation.count(qsum == col.rel_count,
                               "step " + std::to_string(col.t) + " charge sum");
    }

    // P7: non-terminal epochs cost at least an eighth of the start weight.
    for (const EpochRecord& e : record.epochs) {
        if (e.level == 0 || e.terminal) continue;
        rep.p[6].count(static_cast<double>(e.q) >= e.start_weight / 8.0 - eps,
                       detail::site_label(e.close, e.level) + " epoch from " +
                           std::to_string(e.start));
    }

    // Charge conservation across the whole run.
    {
        Int total = 0;
        for (const EpochRecord& e : record.epochs) total += e.q;
        rep.conservation.count(total == record.chi_final, "epoch totals vs chi^n");
    }

    // Prop. 13: density, potential and the ratio to the parent level are
    // nondecreasing while the busy segment stays inside (green steps).
    for (const EpochRecord& e : record.epochs) {
        if (e.level == 0) continue;
        double prev_rho = -1.0, prev_phi = -1e300, prev_ratio = -1.0;
        for (std::int64_t t = e.start; t <= e.close; ++t) {
            const ColumnRecord& col = record.columns[static_cast<std::size_t>(t - 1)];
            if (e.level > col.depth) break;
            const SiteRecord& site = col.sites[static_cast<std::size_t>(e.level - 1)];
            rep.monotonicity.count(site.s_density >= prev_rho - 1e-12,
                                   detail::site_label(t, e.level) + " density");
            rep.monotonicity.count(site.s_log_potential >= prev_phi - 1e-12,
                                   detail::site_label(t, e.level) + " potential");
            prev_rho = site.s_density;
            prev_phi = site.s_log_potential;
            if (e.level >= 2 && e.level - 1 <= col.depth) {
                const double parent = col.sites[static_cast<std::size_t>(e.level - 2)].s_density;
                if (parent > 0.0) {
                    const double ratio = site.s_density / parent;
                    rep.monotonicity.count(ratio >= prev_ratio - 1e-9,
                                           detail::site_label(t, e.level) + " ratio");
                    prev_ratio = ratio;
                }
            }
        }
    }

    // Per-rebuild balance conclusions where the hypotheses held.
    for (const Lemma9Check& chk : record.lemma9) {
        rep.lemma9.count(chk.density_ok, detail::site_label(chk.t, chk.level) + " density");
        rep.lemma9.count(chk.lower_balance_ok,
                         detail::site_label(chk.t, chk.level) + " lower balance");
        rep.lemma9.count(chk.potential_ok, detail::site_label(chk.t, chk.level) + " potential");
    }

    // Mingap dynamics under lambda = 1: mingap(Y^t) >= mingap(Y^0) / 2^t,
    // checked exactly as mingap(Y^t) * 2^t >= mingap(Y^0).
    if (record.params.lambda == 1.0 && record.mingap0 > 0) {
        for (const ColumnRecord& col : record.columns) {
            if (col.mingap_after == 0) continue;
            const bool ok =
                col.mingap_after * pow2(static_cast<unsigned>(col.t)) >= record.mingap0;
            rep.mingap.count(ok, "step " + std::to_string(col.t));
        }
    }

    rep.nesting.settle();
    rep.prefix_green.settle();
    rep.green_copy.settle();
    rep.conservation.settle();
    for (auto& prop : rep.p) prop.settle();
    rep.monotonicity.settle();
    rep.lemma9.settle();
    rep.mingap.settle();
    return rep;
}

}  // namespace oll
