#include <doctest.h>

#include <random>
#include <set>

#include "lateral/oracle.hpp"
#include "lateral/patterns.hpp"
#include "lateral/trapspaces.hpp"
#include "support/samples.hpp"

using namespace lateral;

namespace {

State st(const std::string& s) { return State::parse(s); }
Subspace sub(const std::string& s) { return Subspace::parse(s); }

// Every subspace of dimension n, as base/free digit strings.
template <class F>
void for_each_subspace(int n, F&& f) {
    std::vector<int> digits(static_cast<size_t>(n), 0);
    while (true) {
        State base(n);
        Bits free(n);
        for (int i = 0; i < n; ++i) {
            if (digits[static_cast<size_t>(i)] == 1) base.set(i, true);
            if (digits[static_cast<size_t>(i)] == 2) free.set(i, true);
        }
        f(Subspace(base, free));
        int carry = 0;
        while (carry < n && ++digits[static_cast<size_t>(carry)] == 3)
            digits[static_cast<size_t>(carry++)] = 0;
        if (carry == n) break;
    }
}

} // namespace

TEST_SUITE("trapspaces") {

TEST_CASE("reduced membership checks") {
    CellGraph p5 = CellGraph::path(5);
    CHECK(is_trap_space_reduced(p5, sub("01*10")).is_trap);
    CHECK(is_trap_space_reduced(p5, sub("*****")).is_trap);
    CHECK_FALSE(is_trap_space_reduced(p5, sub("11*10")).is_trap); // no fixed point inside
    CellGraph p3 = CellGraph::path(3);
    // Confirmed against the brute-force oracle below: *10 holds.
    CHECK(is_trap_space_reduced(p3, sub("*10")).is_trap);
    CHECK(is_trap_space_bruteforce(build_network(p3, ModelKind::reduced, 1), sub("*10")));
    CHECK_FALSE(is_trap_space_reduced(p3, sub("0**")).is_trap);
    CHECK_THROWS_AS(is_trap_space_reduced(p3, sub("01")), std::invalid_argument);
}

TEST_CASE("full membership checks") {
    CellGraph p3 = CellGraph::path(3);
    CHECK(is_trap_space_full(p3, sub("01010*")).is_trap);
    CHECK(is_trap_space_full(p3, sub("*10*01")).is_trap);
    CHECK(is_trap_space_full(p3, sub("010101")).is_trap);
    CHECK_FALSE(is_trap_space_full(p3, sub("0*010*")).is_trap); // free Notch, fixed Delta
    CellGraph p2 = CellGraph::path(2);
    CHECK_FALSE(is_trap_space_full(p2, sub("01*0")).is_trap);
    CHECK(is_trap_space_full(p2, sub("****")).is_trap);
    CHECK_THROWS_AS(is_trap_space_full(p2, sub("01*")), std::invalid_argument);
}

TEST_CASE("certificates name the failing clause") {
    CellGraph p2 = CellGraph::path(2);
    auto check = is_trap_space_full(p2, sub("01*0"));
    CHECK_FALSE(check.is_trap);
    CHECK(!check.clauses.empty());
    auto ok = is_trap_space_full(p2, sub("0110"));
    CHECK(ok.is_trap);
    REQUIRE(ok.representative.has_value());
    CHECK(*ok.representative == st("0110"));
}

TEST_CASE("membership agrees with brute force on all small instances") {
    for (int L = 1; L <= 3; ++L)
        for (const auto& g : testing::all_connected_graphs(L))
            for (int k : {1, 2}) {
                Network full = build_network(g, ModelKind::full, k);
                for_each_subspace(2 * L, [&](const Subspace& s) {
                    bool expect = is_trap_space_bruteforce(full, s);
                    CHECK(is_trap_space_full(g, s, k).is_trap == expect);
                    CHECK(detail::is_trap_space_full_via_counts(g, s, k).is_trap == expect);
                });
                Network red = build_network(g, ModelKind::reduced, k);
                for_each_subspace(L, [&](const Subspace& s) {
                    CHECK(is_trap_space_reduced(g, s, k).is_trap ==
                          is_trap_space_bruteforce(red, s));
                });
            }
    // Reduced model a bit wider.
    for (const auto& g : testing::all_connected_graphs(5))
        for (int k : {1, 2, 3}) {
            Network red = build_network(g, ModelKind::reduced, k);
            for_each_subspace(5, [&](const Subspace& s) {
                CHECK(is_trap_space_reduced(g, s, k).is_trap ==
                      is_trap_space_bruteforce(red, s));
            });
        }
    // And on ten-cell reduced instances over the full subspace lattice.
    std::mt19937 rng(61);
    for (int rep = 0; rep < 2; ++rep) {
        CellGraph g = testing::random_connected_graph(10, rng);
        for (int k : {1, 2}) {
            Network red = build_network(g, ModelKind::reduced, k);
            auto fps = fixed_points(g, ModelKind::reduced, k).states();
            long long mismatches = 0;
            for_each_subspace(10, [&](const Subspace& s) {
                if (is_trap_space_reduced(g, s, k, fps).is_trap !=
                    is_trap_space_bruteforce(red, s))
                    ++mismatches;
            });
            CHECK(mismatches == 0);
        }
    }
}

TEST_CASE("lifting between the models") {
    CellGraph p3 = CellGraph::path(3);
    CHECK(lift_trap_space(p3, sub("01*")) == sub("01*10*"));
    CHECK(lift_trap_space(p3, sub("***")) == sub("******"));
    CellGraph p5 = CellGraph::path(5);
    CHECK(lift_trap_space(p5, sub("01*10")) == sub("01*1010*01"));
    CHECK_THROWS_AS(lift_trap_space(p3, sub("0**")), std::invalid_argument);

    // Lift then project is the identity; the lift is a full trap space.
    std::mt19937 rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        CellGraph g = testing::random_connected_graph(5, rng);
        for (const auto& s : enumerate_trap_spaces(g, ModelKind::reduced, 1)) {
            Subspace lifted = lift_trap_space(g, s);
            CHECK(is_trap_space_full(g, lifted, 1).is_trap);
            CHECK(project_to_notch(lifted, 5) == s);
        }
    }
}

TEST_CASE("minimal trap space around perturbed cells") {
    CellGraph p5 = CellGraph::path(5);
    CHECK(minimal_trap_space_around(p5, st("01010"), cells1(5, {3}), ModelKind::reduced) ==
          sub("01*10"));
    CHECK(minimal_trap_space_around(p5, st("01010"), cells1(5, {2}), ModelKind::reduced) ==
          sub("***10"));
    CHECK(minimal_trap_space_around(p5, st("10101"), cells1(5, {3}), ModelKind::reduced) ==
          sub("*****"));
    // Full-model wrapping frees the same cells on both blocks.
    CHECK(minimal_trap_space_around(p5, st("0101010101"), cells1(5, {3}), ModelKind::full) ==
          sub("01*1010*01"));
    CHECK_THROWS_AS(minimal_trap_space_around(p5, st("01011"), cells1(5, {3}), ModelKind::reduced),
                    std::invalid_argument);
}

TEST_CASE("minimal trap space around is exactly minimal") {
    std::mt19937 rng(17);
    for (int rep = 0; rep < 12; ++rep) {
        CellGraph g = testing::random_connected_graph(3 + rep % 4, rng);
        int L = g.cell_count();
        Network net = build_network(g, ModelKind::reduced, 1);
        auto all_traps = enumerate_trap_spaces(g, ModelKind::reduced, 1);
        for (const auto& p : fixed_points(g, ModelKind::reduced, 1).patterns) {
            std::uniform_int_distribution<uint64_t> pick(1, (uint64_t{1} << L) - 1);
            CellSet h = CellSet::from_uint(L, pick(rng));
            Subspace perturbed(p.reduced, h);
            Subspace around = minimal_trap_space_around(g, p.reduced, h, ModelKind::reduced);
            CHECK(around.contains(perturbed));
            CHECK(is_trap_space_bruteforce(net, around));
            // Unique minimality: every trap space covering all perturbed
            // states also covers the result.
            for (const auto& t : all_traps)
                if (t.contains(perturbed)) CHECK(t.contains(around));
            // The low cells next to a dropped high cell are genuinely
            // reachable-witnessed from the fully flipped state.
            CellSet h1(L);
            h.for_each([&](int i) {
                if (p.reduced.get(i)) h1.set(i, true);
            });
            g.neighborhood_of_set(h1).minus(h).for_each([&](int cell) {
                if (p.reduced.get(cell)) return;
                bool witnessed = false;
                for (uint32_t r : forward_reachable(net, p.reduced ^ h))
                    if (State::from_uint(L, r).get(cell)) witnessed = true;
                CHECK(witnessed);
            });
        }
    }
}

TEST_CASE("closure-based minimal trap spaces") {
    CellGraph p2 = CellGraph::path(2);
    CHECK(kappa(p2, st("1010"), ModelKind::full) == sub("****"));
    CHECK(kappa(p2, st("0110"), ModelKind::full) == sub("0110"));
    CellGraph p4 = CellGraph::path(4);
    CHECK(kappa(p4, st("10010110"), ModelKind::full).is_full());
    // Fixed points stay points.
    for (const auto& p : fixed_points(p4, ModelKind::full, 1).patterns)
        CHECK(kappa(p4, p.full, ModelKind::full) == Subspace::of_state(p.full));
}

TEST_CASE("closure agrees with the brute-force closure") {
    auto graphs = testing::sample_graphs(3, 8, 4, 5, 55);
    for (const auto& g : graphs)
        for (int k : {1, 2})
            for (ModelKind kind : {ModelKind::full, ModelKind::reduced}) {
                Network net = build_network(g, kind, k);
                if (net.dim() > 10) continue;
                for (uint64_t s = 0; s < (uint64_t{1} << net.dim()); ++s) {
                    State x = State::from_uint(net.dim(), s);
                    CHECK(kappa_net(net, x) == kappa_bruteforce(net, x));
                }
            }
    // Twelve-dimensional instances, sampled states.
    std::mt19937 rng(67);
    for (int rep = 0; rep < 4; ++rep) {
        CellGraph g = testing::random_connected_graph(rep % 2 ? 6 : 12, rng);
        Network net = build_network(g, rep % 2 ? ModelKind::full : ModelKind::reduced, 1 + rep % 2);
        std::uniform_int_distribution<uint64_t> pick(0, (uint64_t{1} << net.dim()) - 1);
        for (int t = 0; t < 60; ++t) {
            State x = State::from_uint(net.dim(), pick(rng));
            CHECK(kappa_net(net, x) == kappa_bruteforce(net, x));
        }
    }
}

TEST_CASE("closure is monotone") {
    std::mt19937 rng(23);
    for (int rep = 0; rep < 10; ++rep) {
        CellGraph g = testing::random_connected_graph(5, rng);
        Network net = build_network(g, ModelKind::full, 1);
        std::uniform_int_distribution<uint64_t> pick(0, (uint64_t{1} << 10) - 1);
        for (int t = 0; t < 20; ++t) {
            State x = State::from_uint(10, pick(rng));
            Subspace kx = kappa_net(net, x);
            for (const State& y : kx.states()) {
                Subspace ky = kappa_net(net, y);
                CHECK(kx.contains(ky));
            }
        }
    }
}

TEST_CASE("maximal proper trap spaces") {
    CellGraph p3 = CellGraph::path(3);
    auto red = maximal_trap_spaces(p3, ModelKind::reduced);
    std::set<Subspace> red_set(red.begin(), red.end());
    CHECK(red_set == std::set<Subspace>{sub("01*"), sub("*10"), sub("101")});
    auto full = maximal_trap_spaces(p3, ModelKind::full);
    std::set<Subspace> full_set(full.begin(), full.end());
    CHECK(full_set.count(sub("*10*01")) == 1);
    CHECK(full_set.count(sub("01*10*")) == 1);

    auto l2 = maximal_trap_spaces(CellGraph::path(2), ModelKind::full);
    std::set<Subspace> l2_set(l2.begin(), l2.end());
    CHECK(l2_set == std::set<Subspace>{sub("0110"), sub("1001")});
    CHECK_THROWS_AS(maximal_trap_spaces(CellGraph::path(1), ModelKind::full),
                    std::invalid_argument);
}

TEST_CASE("maximal lists agree with enumeration") {
    std::mt19937 rng(29);
    for (int rep = 0; rep < 8; ++rep) {
        CellGraph g = testing::random_connected_graph(2 + rep % 4, rng);
        for (ModelKind kind : {ModelKind::full, ModelKind::reduced}) {
            auto all = enumerate_trap_spaces(g, kind, 1);
            std::vector<Subspace> proper(all.begin(), all.end());
            proper.erase(std::remove_if(proper.begin(), proper.end(),
                                        [](const Subspace& s) { return s.is_full(); }),
                         proper.end());
            std::set<Subspace> expect;
            for (const auto& s : proper) {
                bool maximal = true;
                for (const auto& t : proper)
                    if (t != s && t.contains(s)) maximal = false;
                if (maximal) expect.insert(s);
            }
            auto got = maximal_trap_spaces(g, kind);
            CHECK(std::set<Subspace>(got.begin(), got.end()) == expect);
        }
    }
}

TEST_CASE("enumeration of the small examples") {
    auto l1 = enumerate_trap_spaces(CellGraph::path(1), ModelKind::full, 1);
    CHECK(std::set<Subspace>(l1.begin(), l1.end()) ==
          std::set<Subspace>{sub("01"), sub("0*"), sub("**")});

    auto l2 = enumerate_trap_spaces(CellGraph::path(2), ModelKind::full, 1);
    CHECK(std::set<Subspace>(l2.begin(), l2.end()) ==
          std::set<Subspace>{sub("0110"), sub("1001"), sub("****")});

    // The containment diagram of the three-cell path: seven trap spaces.
    auto p3 = enumerate_trap_spaces(CellGraph::path(3), ModelKind::full, 1);
    CHECK(std::set<Subspace>(p3.begin(), p3.end()) ==
          std::set<Subspace>{sub("010101"), sub("101010"), sub("010*01"), sub("01010*"),
                             sub("*10*01"), sub("01*10*"), sub("******")});
}

TEST_CASE("enumeration equals the brute-force subspace scan") {
    for (int L = 1; L <= 4; ++L)
        for (const auto& g : testing::all_connected_graphs(L))
            for (int k : {1, 2}) {
                Network full = build_network(g, ModelKind::full, k);
                std::set<Subspace> expect;
                for_each_subspace(2 * L, [&](const Subspace& s) {
                    if (is_trap_space_bruteforce(full, s)) expect.insert(s);
                });
                auto got = enumerate_trap_spaces(g, ModelKind::full, k);
                CHECK(std::set<Subspace>(got.begin(), got.end()) == expect);
            }
    for (const auto& g : testing::all_connected_graphs(5))
        for (int k : {1, 2}) {
            Network red = build_network(g, ModelKind::reduced, k);
            std::set<Subspace> expect;
            for_each_subspace(5, [&](const Subspace& s) {
                if (is_trap_space_bruteforce(red, s)) expect.insert(s);
            });
            auto got = enumerate_trap_spaces(g, ModelKind::reduced, k);
            CHECK(std::set<Subspace>(got.begin(), got.end()) == expect);
        }
    CHECK_THROWS_AS(enumerate_trap_spaces(CellGraph::grid(4, 4), ModelKind::full, 1, 12),
                    LimitError);
}

TEST_CASE("trap spaces with adjacent free cells hold several patterns") {
    std::mt19937 rng(37);
    for (int rep = 0; rep < 8; ++rep) {
        CellGraph g = testing::random_connected_graph(6, rng);
        auto ps = fixed_points(g, ModelKind::reduced, 1);
        for (const auto& s : enumerate_trap_spaces(g, ModelKind::reduced, 1)) {
            CellSet freed(6);
            s.free().for_each([&](int i) { freed.set(i, true); });
            if (!g.neighborhood_of_set(freed).intersects(freed)) continue;
            int inside = 0;
            for (const auto& p : ps.patterns)
                if (s.contains(p.reduced)) ++inside;
            CHECK(inside >= 2);
        }
    }
}

TEST_CASE("smallest proper full trap spaces free one Delta of a low cell") {
    std::mt19937 rng(41);
    for (int rep = 0; rep < 8; ++rep) {
        CellGraph g = testing::random_connected_graph(5, rng);
        int L = g.cell_count();
        Network net = build_network(g, ModelKind::full, 1);
        for (const auto& s : enumerate_trap_spaces(g, ModelKind::full, 1)) {
            if (s.free_count() != 1) continue;
            int pos = s.free().positions().front();
            CHECK(pos >= L); // the free position is a Delta
            int cell = pos - L;
            CHECK_FALSE(s.base().get(cell)); // of a low-Notch cell
            // Its neighbours keep another high-Delta support.
            for (int j : g.neighbors(cell)) {
                bool support = false;
                for (int other : g.neighbors(j))
                    if (other != cell && s.base().get(L + other)) support = true;
                CHECK(support);
            }
            // The space holds exactly the pattern and its one-flip variant.
            auto states = s.states();
            CHECK(states.size() == 2);
            CHECK(net.is_fixed_point(states[0]) != net.is_fixed_point(states[1]));
        }
    }
}

TEST_CASE("hasse diagram rendering") {
    auto p3 = enumerate_trap_spaces(CellGraph::path(3), ModelKind::full, 1);
    std::string dot = hasse_dot(p3);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("\"******\" -> \"*10*01\"") != std::string::npos);
    CHECK(dot.find("\"*10*01\" -> \"010*01\"") != std::string::npos);
    // Containment skips a level: no direct edge from the full space to a point.
    CHECK(dot.find("\"******\" -> \"010101\"") == std::string::npos);
}

} // TEST_SUITE
