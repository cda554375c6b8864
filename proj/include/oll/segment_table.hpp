#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "oll/adversary_params.hpp"
#include "oll/errors.hpp"
#include "oll/game_core.hpp"
#include "oll/interfaces.hpp"
#include "oll/occupancy.hpp"
#include "oll/segment_math.hpp"

namespace oll {

// One table site: the auxiliary segment T_i^t, the table segment S_i^t, the
// color assigned after the algorithm's response, and the density/potential of
// S under rho^{t-1} (recorded for the auditors).
struct SiteRecord {
    Segment t_seg;
    Segment s_seg;
    bool green = false;
    bool rebuilt = false;
    double s_density = 0.0;
    double s_log_potential = 0.0;
};

struct ColumnRecord {
    std::int64_t t = 0;
    int critical_level = 0;  // j^t; 0 means the whole previous column was green
    int depth = 0;           // levels actually built (< d only after degeneracy)
    std::vector<SiteRecord> sites;
    std::vector<std::int64_t> charges;  // q_0 .. q_d
    std::int64_t rel_count = 0;
    Int chi = 0;
    Segment busy;
    bool busy_connected = true;
    int selected_level = 0;  // level whose segment supplied the gap
    Int mingap_after = 0;    // 0 while fewer than two keys are loaded
};

// Epochs: maximal runs of steps sharing one segment at one level. A red site
// closes its epoch at that step; epochs still open at t = n close as
// terminal. Level 0 is the pseudo-level collecting charges from outside S_1.
struct EpochRecord {
    int level = 0;
    std::int64_t start = 0;
    std::int64_t close = 0;
    Segment s_seg;
    double start_weight = 0.0;  // w^{s(E)-1}(S^E)
    std::int64_t q = 0;         // q_i^E
    bool terminal = false;
};

struct Lemma9Check {
    std::int64_t t = 0;
    int level = 0;
    bool density_ok = false;
    bool lower_balance_ok = false;
    bool potential_ok = false;
};

struct RunRecord {
    AdversaryParams params;
    Int n = 0, m = 0;
    std::size_t n0 = 0;
    Int mingap0 = 0;
    std::vector<ColumnRecord> columns;
    std::vector<EpochRecord> epochs;
    std::vector<Lemma9Check> lemma9;   // rebuilt sites where the hypotheses held
    std::int64_t lemma9_skipped = 0;   // rebuilt sites where they did not
    std::int64_t fallback_count = 0;   // key drawn above the deepest level
    std::int64_t truncation_count = 0; // columns cut short by balance degeneracy
    std::int64_t hull_gap_count = 0;   // T u B unions that were not overlapping
    std::int64_t busy_disconnect_count = 0;
    Int chi_final = 0;
};

// The Adversary(d, kappa) strategy: per step, preserve the green prefix of
// the previous column, rebuild from the critical level down (W-block at level
// one, hull with the previous busy segment at deeper critical levels, middle
// of the parent elsewhere), balance every rebuilt T, then bisect the largest
// suitable gap of the deepest segment.
class SegmentTableAdversary : public Adversary {
public:
    SegmentTableAdversary(const GameConfig& config, AdversaryParams params)
        : n_(config.n), m_(config.m), n0_(config.n0()), params_(std::move(params)),
          tracker_(config.initial_keys) {
        if (n0_ < 1)
            throw std::invalid_argument("segment-table adversary needs a nonempty Y0");
        record_.params = params_;
        record_.n = n_;
        record_.m = m_;
        record_.n0 = n0_;
        record_.mingap0 = n0_ >= 2 ? mingap(config.initial_keys) : Int(0);
        open_epoch_.assign(static_cast<std::size_t>(params_.d) + 1, kNoEpoch);
        level0_.level = 0;
        level0_.start = 1;
    }

    Int choose(std::int64_t t, const Configuration& current) override {
        const WeightedOccupancy occ =
            WeightedOccupancy::from_configuration(current, n0_, params_.lambda);
        build_column(t, occ);
        return select_key(t, current);
    }

    void observe(const StepTrace& trace, const Configuration&) override {
        ColumnRecord& col = record_.columns.back();
        col.busy = trace.busy_hull();
        col.busy_connected = trace.busy_connected();
        if (!col.busy_connected) ++record_.busy_disconnect_count;
        col.rel_count = static_cast<std::int64_t>(trace.relocated.size());
        col.chi = trace.chi;

        // A red site closes its epoch at this very step, so charges must be
        // booked before the coloring pass retires the epoch.
        charge_step(col, trace);
        color_column(col);

        if (pending_gap_) {
            tracker_.on_insert(pending_gap_->left, trace.loaded_key, pending_gap_->right);
            pending_gap_.reset();
        }
        col.mingap_after = tracker_.known() ? tracker_.value() : Int(0);
        record_.chi_final = trace.chi;
        busy_prev_ = col.busy;
        have_busy_prev_ = true;
    }

    void finish(std::int64_t last_step) override {
        for (int i = 1; i <= params_.d; ++i) close_epoch(i, last_step, true);
        level0_.close = last_step;
        level0_.terminal = true;
        record_.epochs.push_back(level0_);
    }

    const RunRecord& record() const { return record_; }

private:
    static constexpr std::ptrdiff_t kNoEpoch = -1;

    void build_column(std::int64_t t, const WeightedOccupancy& occ) {
        ColumnRecord col;
        col.t = t;
        col.charges.assign(static_cast<std::size_t>(params_.d) + 1, 0);

        const ColumnRecord* prev =
            record_.columns.empty() ? nullptr : &record_.columns.back();
        int critical = 1;
        if (prev != nullptr) {
            critical = prev->depth + 1;
            for (int i = 1; i <= prev->depth; ++i) {
                if (!prev->sites[static_cast<std::size_t>(i - 1)].green) {
                    critical = i;
                    break;
                }
            }
        }
        col.critical_level = critical > params_.d ? 0 : critical;

        for (int i = 1; i <= params_.d; ++i) {
            if (i < critical) {  // preservation rule
                SiteRecord site = prev->sites[static_cast<std::size_t>(i - 1)];
                site.green = false;
                site.rebuilt = false;
                refresh_metrics(site, occ);
                col.sites.push_back(std::move(site));
                col.depth = i;
                continue;
            }
            SiteRecord site;
            site.rebuilt = true;
            try {
                if (i == 1) {
                    site.t_seg = pick_W(occ, m_, n_);
                } else if (i == critical && prev != nullptr && i <= prev->depth) {
                    const Segment& old_t = prev->sites[static_cast<std::size_t>(i - 1)].t_seg;
                    if (!old_t.intersects(busy_prev_)) ++record_.hull_gap_count;
                    site.t_seg = old_t.hull(busy_prev_);
                } else {
                    site.t_seg = middle(col.sites[static_cast<std::size_t>(i - 2)].s_seg);
                }
                const Segment dense = densify(occ, site.t_seg, params_.kappa);
                if (dense.size() < 3) throw std::invalid_argument("degenerate densify result");
                site.s_seg = middle(dense);
                refresh_metrics(site, occ);
                audit_rebuild(t, i, occ, site, dense);
            } catch (const std::invalid_argument&) {
                ++record_.truncation_count;
                break;  // column truncated at the last valid level
            }
            col.sites.push_back(std::move(site));
            col.depth = i;
            close_epoch(i, t - 1, false);  // idempotent; red already closed it
            open_epoch(i, t, col.sites.back(), occ);
        }
        record_.columns.push_back(std::move(col));
    }

    void refresh_metrics(SiteRecord& site, const WeightedOccupancy& occ) const {
        site.s_density = density(occ, site.s_seg);
        site.s_log_potential = log_potential(occ, site.s_seg, params_.kappa);
    }

    void audit_rebuild(std::int64_t t, int level, const WeightedOccupancy& occ,
                       const SiteRecord& site, const Segment& dense) {
        const bool applicable =
            params_.kappa <= 1.0 / (24.0 * std::log(4.0)) && site.s_seg.size() >= 4;
        if (!applicable) {
            ++record_.lemma9_skipped;
            return;
        }
        const double rho_t = density(occ, site.t_seg);
        const double rho_d = density(occ, dense);
        const double rho_s = density(occ, site.s_seg);
        const double drop = std::exp(-24.0 * std::log(4.0) * params_.kappa);
        Lemma9Check chk;
        chk.t = t;
        chk.level = level;
        chk.density_ok = rho_s >= drop * rho_d - 1e-9 && rho_d >= rho_t - 1e-9;
        chk.lower_balance_ok = is_lower_balanced(occ, site.s_seg, 25.0 * params_.kappa);
        const double log_phi_t = log_potential(occ, site.t_seg, params_.kappa);
        chk.potential_ok =
            site.s_log_potential >= log_phi_t - (24.0 * std::log(4.0) + std::log(3.0)) - 1e-9;
        record_.lemma9.push_back(chk);
    }

    Int select_key(std::int64_t t, const Configuration& current) {
        ColumnRecord& col = record_.columns.back();
        for (int lvl = col.depth; lvl >= 1; --lvl) {
            const Segment& s = col.sites[static_cast<std::size_t>(lvl - 1)].s_seg;
            if (auto gap = largest_suitable_gap(current, s)) {
                if (lvl != col.depth) ++record_.fallback_count;
                col.selected_level = lvl;
                pending_gap_ = gap;
                return gap_midpoint(*gap);
            }
        }
        // Desk-scale last resort: the whole array.
        if (auto gap = largest_suitable_gap(current, Segment(1, m_))) {
            ++record_.fallback_count;
            col.selected_level = 0;
            pending_gap_ = gap;
            return gap_midpoint(*gap);
        }
        throw AdversaryStuckError("no suitable gap at any level at step " + std::to_string(t));
    }

    void color_column(ColumnRecord& col) {
        // A red close that coincides with t = n is classified terminal.
        const bool last = Int(col.t) == n_;
        for (int i = 1; i <= col.depth; ++i) {
            SiteRecord& site = col.sites[static_cast<std::size_t>(i - 1)];
            site.green = site.s_seg.contains(col.busy);
            if (!site.green) close_epoch(i, col.t, last);
        }
    }

    void charge_step(ColumnRecord& col, const StepTrace& trace) {
        for (const Relocation& rel : trace.relocated) {
            int level = 0;
            if (rel.inserted) {
                level = col.depth;  // y^t belongs to Q_d
            } else {
                for (int i = col.depth; i >= 1; --i) {
                    if (col.sites[static_cast<std::size_t>(i - 1)].s_seg.contains(rel.from)) {
                        level = i;
                        break;
                    }
                }
            }
            ++col.charges[static_cast<std::size_t>(level)];
            if (level == 0)
                ++level0_.q;
            else if (open_epoch_[static_cast<std::size_t>(level)] != kNoEpoch)
                ++record_.epochs[static_cast<std::size_t>(
                                     open_epoch_[static_cast<std::size_t>(level)])]
                      .q;
        }
    }

    void open_epoch(int level, std::int64_t t, const SiteRecord& site,
                    const WeightedOccupancy& occ) {
        EpochRecord e;
        e.level = level;
        e.start = t;
        e.s_seg = site.s_seg;
        e.start_weight = occ.weight(site.s_seg);
        open_epoch_[static_cast<std::size_t>(level)] =
            static_cast<std::ptrdiff_t>(record_.epochs.size());
        record_.epochs.push_back(std::move(e));
    }

    void close_epoch(int level, std::int64_t t, bool terminal) {
        auto& slot = open_epoch_[static_cast<std::size_t>(level)];
        if (slot == kNoEpoch) return;
        EpochRecord& e = record_.epochs[static_cast<std::size_t>(slot)];
        e.close = t;
        e.terminal = terminal;
        slot = kNoEpoch;
    }

    Int n_, m_;
    std::size_t n0_;
    AdversaryParams params_;
    MingapTracker tracker_;
    RunRecord record_;
    Segment busy_prev_;
    bool have_busy_prev_ = false;
    std::optional<Gap> pending_gap_;
    std::vector<std::ptrdiff_t> open_epoch_;  // per level 1..d, index into epochs
    EpochRecord level0_;
};

}  // namespace oll
