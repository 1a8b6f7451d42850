#include "lateral/threshold.hpp"

#include <stdexcept>

#include "lateral/oracle.hpp"

namespace lateral {

std::string Half::str() const {
    if (halves % 2 == 0) return std::to_string(halves / 2);
    long long num = halves;
    return (num < 0 ? "-" : "") + std::to_string(num < 0 ? -num : num) + "/2";
}

bool ThresholdParams::rule(const State& x, int i) const {
    return margin(x, i).halves > 0;
}

Half ThresholdParams::margin(const State& x, int i) const {
    if (x.size() != graph.cell_count()) throw std::invalid_argument("state dimension mismatch");
    long long ax = 0;
    for (int j : graph.neighbors(i)) ax -= x.get(j) ? 1 : 0;
    return Half{2 * ax} - b(i);
}

ThresholdParams build_threshold_params(const CellGraph& g, int k) {
    if (k < 1) throw std::invalid_argument("threshold k must be at least 1");
    return ThresholdParams{g, k};
}

Half energy(const ThresholdParams& p, const State& x) {
    if (x.size() != p.graph.cell_count()) throw std::invalid_argument("state dimension mismatch");
    // -1/2 x^T A x counts each edge with both endpoints high (A_ij = -1,
    // both orientations): contributes +1 per such edge.
    long long quad = 0;
    for (auto [a, b] : p.graph.edges())
        if (x.get(a) && x.get(b)) ++quad;
    Half e = Half::of_int(quad);
    for (int i = 0; i < p.graph.cell_count(); ++i)
        if (x.get(i)) e = e + p.b(i);
    return e;
}

EnergyReport verify_energy_decrease(const CellGraph& g, int k, int limit) {
    if (g.cell_count() > limit)
        throw LimitError("energy sweep: dimension exceeds limit " + std::to_string(limit));
    ThresholdParams p = build_threshold_params(g, k);
    Network net = build_network(g, ModelKind::reduced, k);
    EnergyReport report;
    uint64_t count = uint64_t{1} << g.cell_count();
    for (uint64_t s = 0; s < count; ++s) {
        State x = State::from_uint(g.cell_count(), s);
        Half ex = energy(p, x);
        for (int pos : net.unstable_positions(x)) {
            Half ey = energy(p, x.flipped(pos));
            Half gap = ex - ey;
            ++report.transition_count;
            if (!(Half{0} < gap)) ++report.violation_count;
            if (!report.any_transition || gap < report.min_gap) report.min_gap = gap;
            report.any_transition = true;
        }
    }
    return report;
}

} // namespace lateral
