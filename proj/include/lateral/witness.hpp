#pragma once
// Replayable certificates for asynchronous paths: a start state plus the
// sequence of flipped coordinates. A witness is valid for a network when
// every flip is enabled at the moment it is applied.

#include <vector>

#include "lateral/network.hpp"

namespace lateral {

struct PathWitness {
    State start;
    std::vector<int> flips;

    // Applies the flips in order, checking each one is an enabled
    // asynchronous transition. Returns the endpoint; throws on an illegal flip.
    State replay(const Network& net) const;
    bool replays_ok(const Network& net) const;
    State endpoint_unchecked() const;
};

} // namespace lateral
