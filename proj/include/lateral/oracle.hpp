#pragma once
// Brute-force ground truth on small instances: the explicit asynchronous
// state transition graph, attractors as terminal strongly connected
// components, subspace checks by enumeration, and BFS reachability with
// replayable witnesses. Everything here is exponential in the dimension
// and guarded by an explicit limit.

#include <optional>
#include <string>
#include <vector>

#include "lateral/network.hpp"
#include "lateral/subspace.hpp"
#include "lateral/witness.hpp"

namespace lateral {

inline constexpr int kDefaultOracleLimit = 20;
inline constexpr int kHardOracleCap = 24;

struct LimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Explicit asynchronous transition graph in CSR form. State s is encoded
// as an integer with variable i at bit i.
struct Stg {
    int n = 0;
    std::vector<uint32_t> offsets; // size 2^n + 1
    std::vector<uint32_t> targets;

    uint64_t state_count() const { return uint64_t{1} << n; }
    std::pair<const uint32_t*, const uint32_t*> successors(uint32_t s) const {
        return {targets.data() + offsets[s], targets.data() + offsets[s + 1]};
    }
    State unpack(uint32_t s) const { return State::from_uint(n, s); }
    static uint32_t pack(const State& x) { return static_cast<uint32_t>(x.to_uint()); }
};

Stg build_stg(const Network& net, int limit = kDefaultOracleLimit);

// Strongly connected component id per state.
std::vector<int32_t> scc_components(const Stg& stg);

// Terminal strongly connected components, each as a sorted list of states.
std::vector<std::vector<State>> attractors_bruteforce(const Stg& stg);

bool stg_has_cycle(const Stg& stg);

// States from which `target` is reachable (weak-basin ground truth).
std::vector<uint32_t> backward_reachable(const Stg& stg, uint32_t target);

std::string stg_to_dot(const Stg& stg);
std::string stg_to_json(const Stg& stg);

// True iff every transition from every state of s stays inside s.
bool is_trap_space_bruteforce(const Network& net, const Subspace& s,
                              int limit = kDefaultOracleLimit);

// Minimal trap space containing x: closure that frees a position as soon
// as some member state can flip it, with membership checked by exhaustive
// enumeration of the current subspace.
Subspace kappa_bruteforce(const Network& net, const State& x,
                          int limit = kDefaultOracleLimit);

// All fixed points by scanning the state space.
std::vector<State> fixed_points_bruteforce(const Network& net,
                                           int limit = kDefaultOracleLimit);

// BFS reachability; when a path exists the witness holds a shortest flip
// sequence from `from` to `to`.
std::optional<PathWitness> find_path_bfs(const Network& net, const State& from,
                                         const State& to, int limit = kDefaultOracleLimit);
bool path_exists_bfs(const Network& net, const State& from, const State& to,
                     int limit = kDefaultOracleLimit);

// All states reachable from `from` (forward BFS, packed encoding).
std::vector<uint32_t> forward_reachable(const Network& net, const State& from,
                                        int limit = kDefaultOracleLimit);

} // namespace lateral
