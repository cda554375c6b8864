#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "oll/ak.hpp"
#include "oll/direct.hpp"
#include "oll/game.hpp"
#include "oll/lazy.hpp"
#include "oll/midpoint_adversary.hpp"
#include "oll/pma.hpp"

using namespace oll;

namespace {

std::vector<Int> permutation_keys(const std::vector<int>& order) {
    std::vector<Int> keys;
    for (int k : order) keys.emplace_back(k);
    return keys;
}

}  // namespace

TEST_CASE("pma frozen four-insert trace") {
    // keys 1..4 ascending into m = 8: hand-simulated against the threshold
    // schedule tau_h = 1 - h/6 (tau_root = 1/2, H = 3)
    GameConfig cfg;
    cfg.n = 4;
    cfg.m = 8;
    cfg.r = 9;
    auto pma = std::make_shared<PmaAlgorithm>(cfg.m, cfg.n, 0);
    auto adv = std::make_shared<helpers::FixedOrderAdversary>(permutation_keys({1, 2, 3, 4}));
    GameResult res = run_game(cfg, adv, pma);
    REQUIRE(res.traces.size() == 4);
    CHECK(res.traces[0].relocated.size() == 1);
    CHECK(res.traces[1].relocated.size() == 1);
    CHECK(res.traces[2].relocated.size() == 1);
    CHECK(res.traces[3].relocated.size() == 2);
    CHECK(res.chi == 5);
}

TEST_CASE("pma rebalanced node lands within its threshold") {
    GameConfig cfg;
    cfg.n = 40;
    cfg.m = 96;
    cfg.r = Int(1) << 30;
    auto pma = std::make_shared<PmaAlgorithm>(cfg.m, cfg.n, 0);
    auto adv = std::make_shared<helpers::PressureAdversary>(cfg.m, cfg.r);
    RunOptions opts;
    opts.observer = [&](const StepTrace&, const Configuration& now) {
        const auto& rb = pma->last_rebalance();
        CHECK(static_cast<double>(rb.count) <=
              pma->threshold(rb.height) * static_cast<double>(rb.size) + 1e-9);
        // redistribution really put exactly rb.count keys in the node
        auto [first, last] = now.ranks_in_cells(Int(rb.lo), Int(rb.lo + rb.size - 1));
        CHECK(last - first == rb.count);
    };
    GameResult res = run_game(cfg, adv, pma, opts);
    CHECK(res.chi >= 40);
}

TEST_CASE("pma insert into empty array costs one move") {
    GameConfig cfg;
    cfg.n = 1;
    cfg.m = 8;
    cfg.r = 100;
    auto pma = std::make_shared<PmaAlgorithm>(cfg.m, cfg.n, 0);
    auto adv = std::make_shared<helpers::FixedOrderAdversary>(permutation_keys({42}));
    GameResult res = run_game(cfg, adv, pma);
    CHECK(res.chi == 1);
}

TEST_CASE("pma raises array-full") {
    auto store = std::make_shared<KeyStore>();
    PmaAlgorithm pma(Int(4), Int(4), 0);
    Configuration cfg(store);
    for (long long k = 1; k <= 4; ++k)
        cfg.insert_at_rank(static_cast<std::size_t>(k - 1), store->intern(Int(k * 10)), Int(k));
    CHECK_THROWS_AS(pma.place(cfg, store->intern(Int(25)), Int(25)), CapacityError);
}

TEST_CASE("lazy wrapper defers the far move") {
    // Scripted inner: on the single insert it moves a nearby key and a far
    // key; the wrapper must realise only the segment around the new key.
    struct Scripted : LabelingAlgorithm {
        Configuration initialize(const KeyStorePtr& store, const std::vector<KeyId>& init,
                                 const Int&) override {
            Configuration cfg(store);
            cfg.insert_at_rank(0, init[0], Int(4));   // key 100
            cfg.insert_at_rank(1, init[1], Int(6));   // key 200
            cfg.insert_at_rank(2, init[2], Int(20));  // key 300
            return cfg;
        }
        Configuration place(const Configuration& current, KeyId id, const Int& key) override {
            Configuration next = current;
            next.insert_at_rank(next.rank_of(key), id, Int(5));  // y = 150 at cell 5
            next.set_cell_at_rank(0, Int(3));                    // 100: 4 -> 3
            next.set_cell_at_rank(3, Int(25));                   // 300: 20 -> 25
            return next;
        }
    };
    GameConfig cfg;
    cfg.n = 1;
    cfg.m = 32;
    cfg.r = 1000;
    cfg.initial_keys = {Int(100), Int(200), Int(300)};
    auto wrapper = std::make_shared<LazyWrapAlgorithm>(std::make_shared<Scripted>());
    auto adv = std::make_shared<helpers::FixedOrderAdversary>(permutation_keys({150}));
    GameResult res = run_game(cfg, adv, wrapper);
    REQUIRE(res.traces.size() == 1);
    CHECK(res.traces[0].relocated.size() == 1);  // only the new key
    REQUIRE(res.traces[0].busy.size() == 1);
    CHECK(res.traces[0].busy[0] == Segment(5, 5));
    CHECK(res.chi == 1);
    // both side moves deferred
    CHECK(res.final_configuration.cell_of(Int(100)) == Int(4));
    CHECK(res.final_configuration.cell_of(Int(300)) == Int(20));
}

TEST_CASE("lazy over an already-lazy algorithm is the identity") {
    GameConfig cfg;
    cfg.n = 20;
    cfg.m = 4096;
    cfg.r = 4096;
    cfg.initial_keys = {Int(1), Int(4096)};
    auto direct = std::make_shared<DirectStoreAlgorithm>(cfg.m, cfg.r);
    auto wrapped = std::make_shared<LazyWrapAlgorithm>(direct);
    auto adv = std::make_shared<MidpointAdversary>(cfg);
    GameResult res = run_game(cfg, adv, wrapped);
    CHECK(res.chi == 20);
    for (const StepTrace& tr : res.traces) CHECK(tr.relocated.size() == 1);
    for (std::size_t rnk = 0; rnk < res.final_configuration.size(); ++rnk)
        CHECK(res.final_configuration.cell_at_rank(rnk) ==
              wrapped->inner_configuration().cell_at_rank(rnk));
}

TEST_CASE("lazy wrapper dominance on exhaustive small games") {
    // all insertion orders of four keys, several seeds of a random non-lazy
    // inner algorithm: busy stays one segment, per-key counts dominated at
    // every prefix, total emitted cost at most the inner cost
    std::vector<int> order = {2, 4, 6, 8};
    int checked = 0;
    do {
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            GameConfig cfg;
            cfg.n = 4;
            cfg.m = 7;
            cfg.r = 9;
            auto wrapper = std::make_shared<LazyWrapAlgorithm>(
                std::make_shared<helpers::RandomAlgorithm>(seed, cfg.m));
            auto adv = std::make_shared<helpers::FixedOrderAdversary>(permutation_keys(order));
            RunOptions opts;
            opts.observer = [&](const StepTrace& tr, const Configuration&) {
                REQUIRE(tr.busy.size() == 1);
                for (const auto& [id, count] : wrapper->emitted_moves()) {
                    auto it = wrapper->inner_moves().find(id);
                    REQUIRE(it != wrapper->inner_moves().end());
                    REQUIRE(count <= it->second);
                }
            };
            GameResult res = run_game(cfg, adv, wrapper, opts);
            Int inner_total = 0;
            for (const auto& [id, count] : wrapper->inner_moves()) inner_total += count;
            CHECK(res.chi <= inner_total);
            ++checked;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    CHECK(checked == 24 * 12);
}

TEST_CASE("middle cell") {
    CHECK(middle_cell({Int(1), Int(9)}) == 5);
    CHECK(middle_cell({Int(1), Int(4)}) == 2);
    CHECK(middle_cell({Int(1), Int(3)}) == 2);
    CHECK_THROWS_AS(middle_cell({Int(1), Int(2)}), std::invalid_argument);
}

TEST_CASE("even spread guarantees |s|/q per open segment") {
    // worst case |S| = aq + 1: every resulting open segment has length a + 1
    auto cells = even_spread_cells(Segment(1, 9), 3);
    REQUIRE(cells.size() == 3);
    CHECK(cells[0] == 3);
    CHECK(cells[1] == 5);
    CHECK(cells[2] == 7);

    // q = 2 reduces to the middle cell
    auto one = even_spread_cells(Segment(1, 9), 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == middle_cell({Int(1), Int(9)}));

    CHECK(even_spread_cells(Segment(1, 9), 0).empty());
    CHECK_THROWS_AS(even_spread_cells(Segment(1, 4), 3), std::invalid_argument);

    // randomized guarantee check
    CounterRng rng(5, rng_stream::kTests, 77);
    for (int iter = 0; iter < 200; ++iter) {
        const long long size = 3 + static_cast<long long>(rng.next_below(60));
        const std::size_t count = rng.next_below(static_cast<std::uint64_t>(size - 1));
        const Segment s(1, size);
        auto xs = even_spread_cells(s, count);
        const Int q(count + 1);
        Int prev = s.lo;
        for (const Int& x : xs) {
            CHECK((x - prev + 1) * q >= s.size());
            prev = x;
        }
        CHECK((s.hi - prev + 1) * q >= s.size());
    }
}

TEST_CASE("excess decompose") {
    auto marks = [](std::vector<std::pair<int, bool>> v) {
        std::vector<MarkedCell> out;
        for (auto& [c, old] : v) out.push_back({Int(c), old});
        return out;
    };
    // old at {1,5,9}, new at {3,7}: single segment of excess 1
    auto r1 = excess_decompose(marks({{1, true}, {3, false}, {5, true}, {7, false}, {9, true}}));
    REQUIRE(r1.size() == 1);
    CHECK(r1[0] == Segment(1, 9));

    // leading old-only stretch is shed
    auto r2 = excess_decompose(marks({{1, true}, {3, true}, {6, false}, {9, true}}));
    REQUIRE(r2.size() == 1);
    CHECK(r2[0] == Segment(3, 9));

    // no new keys: empty list
    CHECK(excess_decompose(marks({{1, true}, {9, true}})).empty());

    CHECK_THROWS_AS(excess_decompose(marks({{1, false}, {9, true}})), std::invalid_argument);
    CHECK_THROWS_AS(excess_decompose(marks({{1, true}, {2, false}, {9, true}, {10, false}})),
                    std::invalid_argument);
}

TEST_CASE("excess decompose properties on random marks") {
    CounterRng rng(13, rng_stream::kTests, 9);
    int exercised = 0;
    for (int iter = 0; iter < 500; ++iter) {
        const int span = 10 + static_cast<int>(rng.next_below(50));
        std::vector<MarkedCell> marks;
        int olds = 0, news = 0;
        for (int c = 1; c <= span; ++c) {
            const double u = rng.next_unit();
            if (c == 1 || c == span) {
                marks.push_back({Int(c), true});
                ++olds;
            } else if (u < 0.25) {
                marks.push_back({Int(c), true});
                ++olds;
            } else if (u < 0.5) {
                marks.push_back({Int(c), false});
                ++news;
            }
        }
        if (olds - news < 1) continue;
        ++exercised;

        const auto pieces = excess_decompose(marks);
        Int prev_hi = 0;
        for (const Segment& p : pieces) {
            CHECK(p.lo > prev_hi);  // disjoint, left to right
            prev_hi = p.hi;
            int old_in = 0, new_in = 0;
            bool lo_old = false, hi_old = false;
            for (const MarkedCell& mc : marks) {
                if (mc.cell == p.lo && mc.is_old) lo_old = true;
                if (mc.cell == p.hi && mc.is_old) hi_old = true;
                if (mc.cell >= p.lo && mc.cell <= p.hi) (mc.is_old ? old_in : new_in)++;
            }
            CHECK(lo_old);
            CHECK(hi_old);
            CHECK(old_in - new_in == 1);  // excess exactly one
        }
        for (const MarkedCell& mc : marks) {
            if (mc.is_old) continue;
            bool covered = false;
            for (const Segment& p : pieces)
                if (p.contains(mc.cell)) covered = true;
            CHECK(covered);
        }
    }
    CHECK(exercised > 100);
}

TEST_CASE("A_1 under pressure: middle-cell splits, zero relocations") {
    GameConfig cfg;
    cfg.n = 4;
    cfg.m = 24;
    cfg.r = Int(1) << 30;
    auto ak = std::make_shared<AkAlgorithm>(1, cfg.m, cfg.r);
    auto adv = std::make_shared<helpers::PressureAdversary>(cfg.m, cfg.r);
    GameResult res = run_game(cfg, adv, ak);
    CHECK(res.chi == 4);  // cost equals keys loaded
    for (const StepTrace& tr : res.traces) CHECK(tr.relocated.size() == 1);

    // after t - 1 = 4 adversarial loads every open segment still >= m/2^4
    const Configuration& fin = res.final_configuration;
    Int prev_cell = 1;
    for (std::size_t rnk = 0; rnk < fin.size(); ++rnk) {
        CHECK((fin.cell_at_rank(rnk) - prev_cell + 1) * pow2(4) >= cfg.m);
        prev_cell = fin.cell_at_rank(rnk);
    }
    CHECK((Int(24) - prev_cell + 1) * pow2(4) >= cfg.m);

    // a fifth key into the cramped half must fail
    auto ak5 = std::make_shared<AkAlgorithm>(1, cfg.m, cfg.r);
    GameConfig cfg5 = cfg;
    cfg5.n = 5;
    auto adv5 = std::make_shared<helpers::PressureAdversary>(cfg5.m, cfg5.r);
    CHECK_THROWS_AS(run_game(cfg5, adv5, ak5), CapacityError);
}

TEST_CASE("A_1 never relocates on bisection orders") {
    GameConfig cfg;
    cfg.n = 8;
    cfg.m = 1 << 10;
    cfg.r = Int(1) << 40;
    auto ak = std::make_shared<AkAlgorithm>(1, cfg.m, cfg.r);
    auto adv = std::make_shared<MidpointAdversary>(cfg);
    GameResult res = run_game(cfg, adv, ak);
    CHECK(res.chi == 8);
}

TEST_CASE("A_2 stays within amortized 3 per key") {
    GameConfig cfg;
    cfg.n = 25;  // floor(128^(2/3)) = 25
    cfg.m = pow2(128);
    cfg.r = pow2(140);
    auto ak = std::make_shared<AkAlgorithm>(2, cfg.m, cfg.r);
    auto adv = std::make_shared<helpers::PressureAdversary>(cfg.m, cfg.r);
    GameResult res = run_game(cfg, adv, ak);
    CHECK(res.chi <= 3 * 25);
    CHECK(ak->audit().round_size_violations == 0);
}

TEST_CASE("A_3 stays within amortized 5 per key") {
    GameConfig cfg;
    cfg.n = 64;
    cfg.m = pow2(400);
    cfg.r = pow2(440);
    auto ak = std::make_shared<AkAlgorithm>(3, cfg.m, cfg.r);
    auto adv = std::make_shared<helpers::PressureAdversary>(cfg.m, cfg.r);
    GameResult res = run_game(cfg, adv, ak);
    CHECK(res.chi <= 5 * 64);
    CHECK(ak->audit().round_size_violations == 0);
    CHECK(ak->audit().rounds_started > 0);
}

TEST_CASE("A_k regime guards") {
    CHECK_THROWS_AS(AkAlgorithm(0, pow2(30), pow2(40)), UnsupportedRegimeError);
    CHECK_THROWS_AS(AkAlgorithm(2, Int(1000), Int(10000)), UnsupportedRegimeError);
    CHECK_THROWS_AS(AkAlgorithm(3, pow2(100), pow2(110)), UnsupportedRegimeError);
    CHECK_NOTHROW(AkAlgorithm(2, pow2(128), pow2(140)));
}
