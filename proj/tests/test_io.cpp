#include <filesystem>

#include "corpus.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "pachner/io.hpp"

using namespace pachner;
namespace fs = std::filesystem;

namespace {

template <typename T, typename Write, typename Read>
T through_file(const T& value, Write write, Read read, const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("pachner_io_" + name);
  io::write_json(p, write(value));
  T back = read(io::read_json(p));
  fs::remove(p);
  return back;
}

bool bit_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

}  // namespace

TEST_CASE("triangulations round-trip") {
  for (const Triangulation& t : corpus::random_walk(1, 5).states) {
    const auto back = through_file(t, [](const auto& x) { return io::to_json(x); }, io::triangulation_from_json, "t.json");
    CHECK(back == t);
  }
  const auto j = io::to_json(seed_boundary_4simplex());
  CHECK(j.at("tets").size() == 5);
  CHECK(j.at("vertices") == io::json({"A", "B", "C", "D", "E"}));
  CHECK(io::triangulation_from_json(io::json::parse(R"({"tets":[["A","B","C","D"]]})")).tets().size() == 1);
}

TEST_CASE("decorations and lengths round-trip bit-exactly") {
  const Triangulation t = corpus::after_14_23();
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Decoration dec = decorate_random(t, s);
    const auto back = through_file(dec, [](const auto& x) { return io::to_json(x); }, io::decoration_from_json, "d.json");
    for (const auto& [v, p] : dec.coords)
      CHECK(std::memcmp(p.data(), back.at(v).data(), 3 * sizeof(double)) == 0);
    const LengthMap l = lengths_of(t, dec);
    CHECK(io::lengths_from_json(io::json::parse(io::to_json(l).dump())) == l);
  }
}

TEST_CASE("scripts and logs round-trip") {
  const MoveScript script{cmd::Move14{0, "F"}, cmd::Move23{0}, cmd::Move32{{"D", "E"}}, cmd::Move41{"F"}};
  const auto j = io::json::parse(io::to_json(script).dump());
  CHECK(j == io::json::parse(R"([{"move":"1-4","tet":0,"label":"F"},{"move":"2-3","site":0},
                                  {"move":"3-2","edge":["D","E"]},{"move":"4-1","vertex":"F"}])"));
  CHECK(io::to_json(io::script_from_json(j)) == j);

  const auto w = corpus::random_walk(4, 6);
  const auto [final_t, log] = apply_sequence(w.states.front(), w.script);
  const MoveLog back = io::log_from_json(io::json::parse(io::to_json(log).dump()));
  CHECK(back == log);
  CHECK(replay(w.states.front(), back) == final_t);
}

TEST_CASE("Jacobian round-trips through JSON and CSV") {
  const Triangulation t = seed_boundary_4simplex();
  const JacobianA a = assemble_jacobian(t, decorate_random(t, 1, {1.0, 1e-3, 1000}));
  const JacobianA from_json = through_file(a, [](const auto& x) { return io::to_json(x); }, io::jacobian_from_json, "a.json");
  CHECK(from_json.edges == a.edges);
  CHECK(bit_equal(from_json.matrix, a.matrix));
  CHECK(from_json.fd_step == a.fd_step);
  const JacobianA from_csv = io::jacobian_from_csv(io::to_csv(a));
  CHECK(from_csv.edges == a.edges);
  CHECK(bit_equal(from_csv.matrix, a.matrix));
  const auto j = io::to_json(a);
  CHECK(j.at("symmetry_defect").get<double>() == a.symmetry_defect());
  CHECK(j.at("edges").front() == "A-B");
}

TEST_CASE("complexes round-trip") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const BasedComplex c = oracle::random_acyclic({2, 3, 2}, s).complex;
    const BasedComplex back = through_file(c, [](const auto& x) { return io::to_json(x); }, io::complex_from_json, "c.json");
    CHECK(back == c);
  }
  const BasedComplex five = io::complex_from_json(io::json::parse(R"({"dims":[1,1],"boundaries":[[[5]]]})"));
  CHECK(torsion(five).abs_tau == 5.0);
}

TEST_CASE("parse errors") {
  auto kind = [](const std::string& text, auto reader) {
    try {
      reader(io::json::parse(text));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::UnknownSeed;
  };
  CHECK(kind(R"({"tets":[["A","B","C"]]})", io::triangulation_from_json) == ErrorKind::ParseError);
  CHECK(kind(R"({"coords":{"A":[1,2]}})", io::decoration_from_json) == ErrorKind::ParseError);
  CHECK(kind(R"([{"move":"5-0"}])", io::script_from_json) == ErrorKind::ParseError);
  CHECK(kind(R"({"dims":[2,2],"boundaries":[[[1,2]]]})", io::complex_from_json) == ErrorKind::ShapeMismatch);
  const fs::path p = fs::temp_directory_path() / "pachner_io_broken.json";
  io::write_text(p, "{ not json");
  CHECK_THROWS_AS(io::read_json(p), Error);
  fs::remove(p);
  CHECK_THROWS_AS(io::read_text("/nonexistent/pachner.json"), Error);
}

TEST_CASE("reports serialize") {
  const auto tr = io::to_json(torsion(BasedComplex::from_matrices({1, 1}, {Eigen::MatrixXd::Constant(1, 1, 5.0)})));
  CHECK(tr.at("abs_tau") == 5.0);
  CHECK(tr.at("conditioning").at("min_abs_det") == 5.0);
  const auto lf = io::to_json(local_formula_check(sample_bipyramid(1)));
  CHECK(lf.contains("residual"));
  CHECK(lf.at("volumes").size() == 5);
}
