#pragma once

#include <string>
#include <variant>
#include <vector>

#include "pachner/simplicial.hpp"

namespace pachner {

/// Two tetrahedra ABCD (tet1) and EABC (tet2) glued along ABC. A, B, C are
/// ordered so that (A, B, C, D) is an even permutation of tet1.
struct MoveSite23 {
  Tet tet1;
  Tet tet2;
  std::array<Label, 3> shared;  // (A, B, C)
  Label apex_d;
  Label apex_e;

  friend bool operator==(const MoveSite23&, const MoveSite23&) = default;
};

std::vector<MoveSite23> find_sites_23(const Triangulation& t);

/// ABCD, EABC -> ABED, BCED, CAED. Throws EdgeAlreadyPresent or SiteStale.
Triangulation apply_23(const Triangulation& t, const MoveSite23& site);
/// Inverse of apply_23 at the valence-3 edge DE.
/// Throws EdgeNotFound, WrongValence, PatternMismatch or TetAlreadyPresent.
Triangulation apply_32(const Triangulation& t, const Edge& e);
/// ABCD -> ABCE, ABED, AECD, EBCD with E = `label`.
/// Throws TetNotFound or LabelInUse.
Triangulation apply_14(const Triangulation& t, const Tet& tet, const Label& label);
/// Removes a vertex whose star is four tetrahedra forming a subdivided tetrahedron.
/// Throws WrongLinkValence, PatternMismatch or TetAlreadyPresent.
Triangulation apply_41(const Triangulation& t, const Label& v);

enum class MoveKind { M23, M32, M14, M41 };
std::string_view to_string(MoveKind k);  // "2-3", "3-2", "1-4", "4-1"

namespace cmd {
struct Move14 {
  std::size_t tet;
  Label label;
};
struct Move23 {
  std::size_t site;
};
struct Move32 {
  Edge edge;
};
struct Move41 {
  Label vertex;
};
}  // namespace cmd

/// Tetrahedra are addressed by index into the current tet list and 2-3
/// sites by index into find_sites_23, so scripts are reproducible.
using MoveCommand = std::variant<cmd::Move14, cmd::Move23, cmd::Move32, cmd::Move41>;
using MoveScript = std::vector<MoveCommand>;

struct MoveRecord {
  MoveKind kind;
  std::vector<Tet> consumed;
  std::vector<Tet> produced;
  std::vector<Label> added_vertices;
  std::vector<Label> removed_vertices;

  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

using MoveLog = std::vector<MoveRecord>;

/// Applies one command and describes what it did.
std::pair<Triangulation, MoveRecord> apply_command(const Triangulation& t, const MoveCommand& c);

/// Applies the script in order. Failures surface as ScriptError carrying the index.
std::pair<Triangulation, MoveLog> apply_sequence(const Triangulation& t, const MoveScript& script);

/// Re-applies recorded rewrites: removes consumed tetrahedra, appends produced
/// ones, and updates the vertex list. Throws SiteStale if a record does not fit.
Triangulation replay(const Triangulation& t, const MoveLog& log);

}  // namespace pachner
