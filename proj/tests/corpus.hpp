#pragma once

// Seeded random walks through the move graph, starting from the boundary of
// the 4-simplex. Every applied command is legal, so the walk doubles as a
// generator of valid move scripts.

#include <random>

#include "pachner/moves.hpp"

namespace corpus {

using namespace pachner;

struct Walk {
  std::vector<Triangulation> states;  // states[0] is the start
  MoveScript script;
};

inline Walk random_walk(std::uint64_t seed, int steps, const Triangulation& start = seed_boundary_4simplex()) {
  std::mt19937_64 rng(seed);
  Walk w{{start}, {}};
  int fresh = 0;
  for (int s = 0; s < steps; ++s) {
    const Triangulation& t = w.states.back();
    std::vector<MoveCommand> options;
    options.push_back(cmd::Move14{rng() % t.tets().size(), "v" + std::to_string(fresh)});
    if (const auto sites = find_sites_23(t); !sites.empty())
      options.push_back(cmd::Move23{rng() % sites.size()});
    for (const Edge& e : t.edges()) {
      try {
        apply_32(t, e);
        options.push_back(cmd::Move32{e});
      } catch (const Error&) {
      }
    }
    for (const Label& v : t.vertices()) {
      try {
        apply_41(t, v);
        options.push_back(cmd::Move41{v});
      } catch (const Error&) {
      }
    }
    const MoveCommand c = options[rng() % options.size()];
    if (std::holds_alternative<cmd::Move14>(c)) ++fresh;
    w.states.push_back(apply_command(t, c).first);
    w.script.push_back(c);
  }
  return w;
}

/// Boundary of the 4-simplex after one 1-4 move (new vertex F in tet 0) and
/// the first 2-3 move that becomes available.
inline Triangulation after_14_23() {
  const Triangulation t1 = apply_command(seed_boundary_4simplex(), cmd::Move14{0, "F"}).first;
  return apply_command(t1, cmd::Move23{0}).first;
}

}  // namespace corpus
