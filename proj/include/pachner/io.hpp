#pragma once

// JSON and CSV persistence. Reals are written in shortest round-trip form,
// so every reader below reproduces the written values bit for bit.

#include <filesystem>
#include <string>

#include "json.hpp"
#include "pachner/complex.hpp"
#include "pachner/experiment.hpp"
#include "pachner/moves.hpp"
#include "pachner/regge.hpp"
#include "pachner/verify.hpp"

namespace pachner::io {

using json = nlohmann::json;

json to_json(const Triangulation& t);
Triangulation triangulation_from_json(const json& j);

json to_json(const Decoration& d);
Decoration decoration_from_json(const json& j);

json to_json(const LengthMap& l);
LengthMap lengths_from_json(const json& j);

json to_json(const MoveCommand& c);
json to_json(const MoveScript& s);
MoveScript script_from_json(const json& j);

json to_json(const MoveLog& log);
MoveLog log_from_json(const json& j);

json to_json(const JacobianA& a);
JacobianA jacobian_from_json(const json& j);
std::string to_csv(const JacobianA& a);
JacobianA jacobian_from_csv(const std::string& csv);

json to_json(const BasedComplex& c);
BasedComplex complex_from_json(const json& j);

json to_json(const TorsionResult& r);
json to_json(const AcyclicityReport& r);
json to_json(const LocalFormulaReport& r);
json to_json(const ExperimentReport& r);
json to_json(const VerifyReport& r);

/// Throws ParseError.
json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace pachner::io
