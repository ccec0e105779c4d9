#pragma once

#include <cstddef>

#include "vanet/graph.hpp"
#include "vanet/spectral.hpp"

namespace vanet {

// Entry (i, j) set iff a walk of exactly k edges leads from i to j. Boolean
// semiring powers by repeated squaring; walk counts never materialize.
Adjacency bool_power_reach(const Adjacency& a, std::size_t k);

// Same, over A OR I: entry set iff a walk of at most k edges exists.
Adjacency bool_power_reach_relaxed(const Adjacency& a, std::size_t k);

// Corner test on the (N-1)th power: a walk of exactly N-1 edges from the first
// vehicle to the last. The relaxed form accepts any walk of length <= N-1.
bool is_connected_exponent(const Adjacency& a, bool relaxed = false);

// Exact component count of a symmetric adjacency by union-find.
ComponentCount oracle_components(const Adjacency& a);

// Directed breadth-first search following set entries (i, j) as i -> j.
// Throws std::out_of_range for bad indices.
bool oracle_reachable(const Adjacency& a, std::size_t src, std::size_t dst);

// Every vehicle links directly to its successor: entries (i, i+1) all set.
bool consecutive_chain(const Adjacency& a);

}  // namespace vanet
