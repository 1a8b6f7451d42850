#include "lateral/oracle.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace lateral {

namespace {

void check_limit(const Network& net, int limit, const char* what) {
    int n = net.dim();
    if (n > limit || n > kHardOracleCap)
        throw LimitError(std::string(what) + ": dimension " + std::to_string(n) +
                         " exceeds the oracle limit " + std::to_string(std::min(limit, kHardOracleCap)) +
                         " (raise --limit for small increases)");
}

// Packed evaluator: component values from the integer encoding, one
// popcount per neighbourhood.
struct PackedEval {
    int n = 0;
    int L = 0;
    bool full = false;
    bool all_rule = false;
    int k = 1;
    std::vector<uint32_t> drive_mask; // per cell: neighbour inputs
    std::vector<int> degree;

    explicit PackedEval(const Network& net) {
        n = net.dim();
        L = net.cells();
        full = net.kind() == ModelKind::full;
        all_rule = net.rule() == NeighborRule::all_neighbors;
        k = net.k();
        drive_mask.assign(static_cast<size_t>(L), 0);
        degree.assign(static_cast<size_t>(L), 0);
        for (int c = 0; c < L; ++c) {
            degree[static_cast<size_t>(c)] = net.graph().degree(c);
            for (int j : net.graph().neighbors(c)) {
                int pos = full ? net.delta_pos(j) : j;
                drive_mask[static_cast<size_t>(c)] |= uint32_t{1} << pos;
            }
        }
    }

    bool component(uint32_t x, int pos) const {
        if (full && pos >= L) return !((x >> (pos - L)) & 1u);
        int hi = __builtin_popcount(x & drive_mask[static_cast<size_t>(pos)]);
        if (!full) hi = degree[static_cast<size_t>(pos)] - hi;
        if (all_rule) return hi == degree[static_cast<size_t>(pos)];
        return hi >= k;
    }

    void unstable(uint32_t x, std::vector<int>& out) const {
        out.clear();
        for (int pos = 0; pos < n; ++pos)
            if (component(x, pos) != ((x >> pos) & 1u)) out.push_back(pos);
    }
};

} // namespace

Stg build_stg(const Network& net, int limit) {
    check_limit(net, std::min(limit, 22), "state transition graph");
    PackedEval ev(net);
    Stg stg;
    stg.n = net.dim();
    uint64_t count = stg.state_count();
    stg.offsets.assign(count + 1, 0);
    std::vector<int> flips;
    for (uint64_t s = 0; s < count; ++s) {
        ev.unstable(static_cast<uint32_t>(s), flips);
        stg.offsets[s + 1] = stg.offsets[s] + static_cast<uint32_t>(flips.size());
    }
    stg.targets.resize(stg.offsets[count]);
    for (uint64_t s = 0; s < count; ++s) {
        ev.unstable(static_cast<uint32_t>(s), flips);
        uint32_t at = stg.offsets[s];
        for (int p : flips) stg.targets[at++] = static_cast<uint32_t>(s) ^ (uint32_t{1} << p);
    }
    return stg;
}

// Iterative Tarjan.
std::vector<int32_t> scc_components(const Stg& stg) {
    uint64_t count = stg.state_count();
    std::vector<int32_t> index(count, -1), low(count, 0), comp(count, -1);
    std::vector<uint32_t> stack;
    std::vector<uint8_t> on_stack(count, 0);
    int32_t next_index = 0;
    int32_t comp_count = 0;

    struct Frame {
        uint32_t v;
        uint32_t next_child;
    };
    std::vector<Frame> frames;

    for (uint64_t root = 0; root < count; ++root) {
        if (index[root] >= 0) continue;
        frames.push_back({static_cast<uint32_t>(root), stg.offsets[root]});
        while (!frames.empty()) {
            Frame& f = frames.back();
            uint32_t v = f.v;
            if (index[v] < 0) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            bool descended = false;
            while (f.next_child < stg.offsets[v + 1]) {
                uint32_t w = stg.targets[f.next_child++];
                if (index[w] < 0) {
                    frames.push_back({w, stg.offsets[w]});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                while (true) {
                    uint32_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = comp_count;
                    if (w == v) break;
                }
                ++comp_count;
            }
            frames.pop_back();
            if (!frames.empty()) {
                uint32_t parent = frames.back().v;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    return comp;
}

// Attractors are the SCCs with no edge leaving them.
std::vector<std::vector<State>> attractors_bruteforce(const Stg& stg) {
    uint64_t count = stg.state_count();
    std::vector<int32_t> comp = scc_components(stg);
    int32_t comp_count = 0;
    for (int32_t c : comp) comp_count = std::max(comp_count, c + 1);

    std::vector<uint8_t> terminal(static_cast<size_t>(comp_count), 1);
    for (uint64_t s = 0; s < count; ++s) {
        auto [b, e] = stg.successors(static_cast<uint32_t>(s));
        for (const uint32_t* t = b; t != e; ++t)
            if (comp[*t] != comp[s]) terminal[static_cast<size_t>(comp[s])] = 0;
    }
    std::vector<std::vector<State>> out;
    std::vector<std::vector<uint32_t>> members(static_cast<size_t>(comp_count));
    for (uint64_t s = 0; s < count; ++s)
        if (terminal[static_cast<size_t>(comp[s])])
            members[static_cast<size_t>(comp[s])].push_back(static_cast<uint32_t>(s));
    for (auto& m : members) {
        if (m.empty()) continue;
        std::sort(m.begin(), m.end());
        std::vector<State> a;
        a.reserve(m.size());
        for (uint32_t s : m) a.push_back(stg.unpack(s));
        out.push_back(std::move(a));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

bool stg_has_cycle(const Stg& stg) {
    uint64_t count = stg.state_count();
    std::vector<uint32_t> indeg(count, 0);
    for (uint32_t t : stg.targets) ++indeg[t];
    std::vector<uint32_t> q;
    q.reserve(count);
    for (uint64_t s = 0; s < count; ++s)
        if (indeg[s] == 0) q.push_back(static_cast<uint32_t>(s));
    uint64_t seen = 0;
    while (!q.empty()) {
        uint32_t v = q.back();
        q.pop_back();
        ++seen;
        auto [b, e] = stg.successors(v);
        for (const uint32_t* t = b; t != e; ++t)
            if (--indeg[*t] == 0) q.push_back(*t);
    }
    return seen != count;
}

std::vector<uint32_t> backward_reachable(const Stg& stg, uint32_t target) {
    uint64_t count = stg.state_count();
    std::vector<std::vector<uint32_t>> rev(count);
    for (uint64_t s = 0; s < count; ++s) {
        auto [b, e] = stg.successors(static_cast<uint32_t>(s));
        for (const uint32_t* t = b; t != e; ++t) rev[*t].push_back(static_cast<uint32_t>(s));
    }
    std::vector<uint8_t> seen(count, 0);
    std::vector<uint32_t> out, q{target};
    seen[target] = 1;
    while (!q.empty()) {
        uint32_t v = q.back();
        q.pop_back();
        out.push_back(v);
        for (uint32_t w : rev[v])
            if (!seen[w]) {
                seen[w] = 1;
                q.push_back(w);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string stg_to_dot(const Stg& stg) {
    std::ostringstream os;
    os << "digraph stg {\n";
    for (uint64_t s = 0; s < stg.state_count(); ++s) {
        std::string from = stg.unpack(static_cast<uint32_t>(s)).str();
        auto [b, e] = stg.successors(static_cast<uint32_t>(s));
        if (b == e) {
            os << "  \"" << from << "\" [shape=box];\n";
            continue;
        }
        for (const uint32_t* t = b; t != e; ++t)
            os << "  \"" << from << "\" -> \"" << stg.unpack(*t).str() << "\";\n";
    }
    os << "}\n";
    return os.str();
}

std::string stg_to_json(const Stg& stg) {
    std::ostringstream os;
    os << "{\"n\":" << stg.n << ",\"edges\":[";
    bool first = true;
    for (uint64_t s = 0; s < stg.state_count(); ++s) {
        auto [b, e] = stg.successors(static_cast<uint32_t>(s));
        for (const uint32_t* t = b; t != e; ++t) {
            if (!first) os << ",";
            first = false;
            os << "[\"" << stg.unpack(static_cast<uint32_t>(s)).str() << "\",\""
               << stg.unpack(*t).str() << "\"]";
        }
    }
    os << "]}";
    return os.str();
}

bool is_trap_space_bruteforce(const Network& net, const Subspace& s, int limit) {
    if (s.size() != net.dim()) throw std::invalid_argument("subspace dimension mismatch");
    if (s.free_count() > std::min(limit, kHardOracleCap))
        throw LimitError("trap-space check: subspace too large for enumeration");
    // A transition leaves s exactly when it flips a non-free position.
    for (const State& z : s.states())
        for (int p : net.unstable_positions(z))
            if (!s.free().get(p)) return false;
    return true;
}

Subspace kappa_bruteforce(const Network& net, const State& x, int limit) {
    check_limit(net, limit, "minimal trap space (brute force)");
    net.check_dim(x);
    Bits free(net.dim());
    bool grew = true;
    while (grew) {
        grew = false;
        Subspace cur(x, free);
        for (int p = 0; p < net.dim(); ++p) {
            if (free.get(p)) continue;
            for (const State& z : cur.states()) {
                if (net.component(z, p) != x.get(p)) {
                    free.set(p, true);
                    grew = true;
                    break;
                }
            }
        }
    }
    return Subspace(x, free);
}

std::vector<State> fixed_points_bruteforce(const Network& net, int limit) {
    check_limit(net, limit, "fixed-point scan");
    PackedEval ev(net);
    std::vector<State> out;
    uint64_t count = uint64_t{1} << net.dim();
    std::vector<int> flips;
    for (uint64_t s = 0; s < count; ++s) {
        ev.unstable(static_cast<uint32_t>(s), flips);
        if (flips.empty()) out.push_back(State::from_uint(net.dim(), s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<PathWitness> find_path_bfs(const Network& net, const State& from,
                                         const State& to, int limit) {
    check_limit(net, limit, "reachability search");
    net.check_dim(from);
    net.check_dim(to);
    if (from == to) return PathWitness{from, {}};
    PackedEval ev(net);
    uint64_t count = uint64_t{1} << net.dim();
    // parent_flip[s] = flipped position + 1 on the BFS tree edge into s.
    std::vector<uint8_t> parent_flip(count, 0);
    std::vector<uint8_t> seen(count, 0);
    uint32_t src = Stg::pack(from), dst = Stg::pack(to);
    std::queue<uint32_t> q;
    q.push(src);
    seen[src] = 1;
    std::vector<int> flips;
    while (!q.empty()) {
        uint32_t v = q.front();
        q.pop();
        ev.unstable(v, flips);
        for (int p : flips) {
            uint32_t w = v ^ (uint32_t{1} << p);
            if (seen[w]) continue;
            seen[w] = 1;
            parent_flip[w] = static_cast<uint8_t>(p + 1);
            if (w == dst) {
                std::vector<int> path;
                for (uint32_t s = dst; s != src;) {
                    int fp = parent_flip[s] - 1;
                    path.push_back(fp);
                    s ^= uint32_t{1} << fp;
                }
                std::reverse(path.begin(), path.end());
                return PathWitness{from, std::move(path)};
            }
            q.push(w);
        }
    }
    return std::nullopt;
}

bool path_exists_bfs(const Network& net, const State& from, const State& to, int limit) {
    return find_path_bfs(net, from, to, limit).has_value();
}

std::vector<uint32_t> forward_reachable(const Network& net, const State& from, int limit) {
    check_limit(net, limit, "reachability search");
    net.check_dim(from);
    PackedEval ev(net);
    uint64_t count = uint64_t{1} << net.dim();
    std::vector<uint8_t> seen(count, 0);
    std::vector<uint32_t> out, q{Stg::pack(from)};
    seen[q[0]] = 1;
    std::vector<int> flips;
    while (!q.empty()) {
        uint32_t v = q.back();
        q.pop_back();
        out.push_back(v);
        ev.unstable(v, flips);
        for (int p : flips) {
            uint32_t w = v ^ (uint32_t{1} << p);
            if (!seen[w]) {
                seen[w] = 1;
                q.push_back(w);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

State PathWitness::replay(const Network& net) const {
    State cur = start;
    for (int p : flips) {
        if (net.component(cur, p) == cur.get(p))
            throw std::logic_error("witness replay failed: flip of position " +
                                   std::to_string(p + 1) + " is not enabled at " + cur.str());
        cur.flip(p);
    }
    return cur;
}

bool PathWitness::replays_ok(const Network& net) const {
    try {
        replay(net);
        return true;
    } catch (const std::logic_error&) {
        return false;
    }
}

State PathWitness::endpoint_unchecked() const {
    State cur = start;
    for (int p : flips) cur.flip(p);
    return cur;
}

} // namespace lateral
