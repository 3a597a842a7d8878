#include <numbers>

#include "corpus.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "pachner/geometry.hpp"
#include "pachner/random.hpp"

using namespace pachner;
using std::numbers::pi;

namespace {

TetLengths<double> regular() { return TetLengths<double>::Ones(); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::ParseError;
}

std::array<Point, 4> random_points(std::uint64_t seed) {
  Rng rng(seed);
  for (;;) {
    std::array<Point, 4> p;
    for (auto& x : p) x = Point(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
    if (std::abs(signed_volume(p[0], p[1], p[2], p[3])) > 1e-2) return p;
  }
}

const Triangulation kFan = Triangulation::build({Tet{"A", "B", "E", "D"}, Tet{"B", "C", "E", "D"}, Tet{"C", "A", "E", "D"}});

}  // namespace

TEST_CASE("volumes") {
  const std::array<Point, 4> corner{Point(0, 0, 0), Point(1, 0, 0), Point(0, 1, 0), Point(0, 0, 1)};
  CHECK(signed_volume(corner[0], corner[1], corner[2], corner[3]) == doctest::Approx(1.0 / 6));
  CHECK(signed_volume(corner[1], corner[0], corner[2], corner[3]) == doctest::Approx(-1.0 / 6));
  CHECK(volume_from_lengths(regular()) == doctest::Approx(1.0 / (6 * std::sqrt(2.0))).epsilon(1e-14));
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto p = random_points(s);
    const TetLengths<double> l = lengths_from_points(p);
    CHECK(cayley_menger(l) / 288.0 ==
          doctest::Approx(std::pow(signed_volume(p[0], p[1], p[2], p[3]), 2)).epsilon(1e-10));
  }
  TetLengths<double> bad = regular();
  bad(0) = 2.5;  // violates the triangle inequality
  CHECK(kind_of([&] { volume_from_lengths(bad); }) == ErrorKind::NotRealizable);
}

TEST_CASE("dihedral angles") {
  CHECK(dihedral_unsigned(regular(), 0) == doctest::Approx(std::acos(1.0 / 3)).epsilon(1e-14));
  const std::array<Point, 4> corner{Point(0, 0, 0), Point(1, 0, 0), Point(0, 1, 0), Point(0, 0, 1)};
  const TetLengths<double> lc = lengths_from_points(corner);
  for (int e : {0, 1, 2}) CHECK(dihedral_unsigned(lc, e) == doctest::Approx(pi / 2).epsilon(1e-14));

  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto p = random_points(s);
    const TetLengths<double> l = lengths_from_points(p);
    for (int e = 0; e < 6; ++e) {
      const double theta = dihedral_unsigned(l, e);
      CHECK(std::abs(theta - oracle::dihedral_from_points(p, kTetEdges[e][0], kTetEdges[e][1])) < 1e-10);
      CHECK(std::abs(std::sin(theta) - dihedral_sine(l, e)) < 1e-10);
    }
  }
  TetLengths<double> flat = regular();
  flat(3) = 2.0;  // face 012 collapses onto a segment
  CHECK(kind_of([&] { dihedral_unsigned(flat, 0); }) == ErrorKind::DegenerateFace);
}

TEST_CASE("signed dihedral angles") {
  Decoration dec;
  dec.coords = {{"A", Point(0, 0, 0)}, {"B", Point(1, 0, 0)}, {"C", Point(0, 1, 0)}, {"D", Point(0, 0, 1)}};
  const Tet pos{"A", "B", "C", "D"}, neg{"B", "A", "C", "D"};
  CHECK(orientation_sign(dec, pos) == 1);
  CHECK(dihedral_signed(dec, pos, {"A", "B"}) == doctest::Approx(pi / 2));
  CHECK(dihedral_signed(dec, neg, {"A", "B"}) == doctest::Approx(-pi / 2));
}

TEST_CASE("deficit angles") {
  SUBCASE("fan of three regular tetrahedra") {
    LengthMap l;
    for (const Edge& e : kFan.edges()) l[e] = 1.0;
    CHECK(deficit_local(kFan, l, {"D", "E"}) == doctest::Approx(2 * pi - 3 * std::acos(1.0 / 3)).epsilon(1e-12));
    CHECK(std::abs(deficit_local(kFan, l, {"D", "E"}) - 2.5903065) < 1e-6);
    CHECK(kind_of([&] { deficit_local(kFan, l, {"A", "B"}); }) == ErrorKind::StarNotCyclic);
  }
  SUBCASE("flat bipyramid, and a sweep of |DE|") {
    const double r3 = std::sqrt(3.0);
    Decoration dec;
    dec.coords = {{"A", Point(1 / r3, 0, 0)}, {"B", Point(-0.5 / r3, 0.5, 0)}, {"C", Point(-0.5 / r3, -0.5, 0)},
                  {"D", Point(0, 0, 0.8)}, {"E", Point(0, 0, -0.9)}};
    LengthMap l = lengths_of(kFan, dec);
    CHECK(std::abs(deficit_local(kFan, l, {"D", "E"})) < 1e-10);
    CHECK(std::abs(deficit_global_mod2pi(kFan, dec, {"D", "E"})) < 1e-10);
    const double flat = l[{"D", "E"}];
    for (double f : {0.95, 0.99, 0.999}) {
      l[{"D", "E"}] = flat * f;
      CHECK(deficit_local(kFan, l, {"D", "E"}) > 0.0);
      l[{"D", "E"}] = flat / f;
      CHECK(deficit_local(kFan, l, {"D", "E"}) < 0.0);
    }
  }
  SUBCASE("generic realizations of closed triangulations are flat") {
    for (std::uint64_t s = 0; s < 10; ++s) {
      for (const Triangulation& t : {seed_boundary_4simplex(), corpus::after_14_23()}) {
        const Decoration dec = decorate_random(t, s, {1.0, 1e-3, 1000});
        for (const Edge& e : t.edges()) CHECK(std::abs(deficit_global_mod2pi(t, dec, e)) < 1e-9);
      }
    }
  }
}

TEST_CASE("random decorations") {
  const Triangulation t = seed_boundary_4simplex();
  const Decoration a = decorate_random(t, 11), b = decorate_random(t, 11), c = decorate_random(t, 12);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(min_abs_volume(t, a) >= DecorateOptions{}.absolute_floor());
  const Decoration scaled = decorate_random(t, 11, {5.0, 1e-6, 1000});
  for (const auto& [v, p] : scaled.coords) CHECK(p.maxCoeff() <= 5.0);
  CHECK(kind_of([&] { decorate_random(t, 1, {1.0, 1.0, 20}); }) == ErrorKind::GenericityFailed);
}

TEST_CASE("extending a decoration into a tetrahedron") {
  const Triangulation t = seed_boundary_4simplex();
  const Decoration dec = decorate_random(t, 3, {1.0, 1e-3, 1000});
  const Tet parent = t.tets().front();
  const double v = volume_signed(dec, parent);
  const Triangulation t1 = apply_14(t, parent, "F");

  const Decoration bary = decorate_extend_at(dec, "F", parent, Eigen::Vector4d::Constant(0.25));
  double sum = 0.0;
  for (std::size_t i = t.tets().size() - 1; i < t1.tets().size(); ++i) {
    const double w = volume_signed(bary, t1.tets()[i]);
    CHECK(w * v > 0.0);
    sum += w;
  }
  CHECK(std::abs(sum - v) <= 1e-12 * std::abs(v));

  const Decoration random = decorate_extend(dec, "F", parent, 99);
  CHECK(random == decorate_extend(dec, "F", parent, 99));
  CHECK(min_abs_volume(t1, random) > 0.0);
  CHECK(kind_of([&] { decorate_extend(dec, "A", parent, 1); }) == ErrorKind::LabelInUse);

  Decoration flat = dec;
  flat.coords["D"] = (dec.at("A") + dec.at("B") + dec.at("C")) / 3.0;
  CHECK(kind_of([&] { decorate_extend(flat, "F", parent, 1); }) == ErrorKind::GenericityFailed);
}
