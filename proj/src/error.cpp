#include "pachner/error.hpp"

namespace pachner {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateTet: return "DegenerateTet";
    case ErrorKind::DuplicateTet: return "DuplicateTet";
    case ErrorKind::NonManifoldTriangle: return "NonManifoldTriangle";
    case ErrorKind::InconsistentOrientation: return "InconsistentOrientation";
    case ErrorKind::InvalidLabel: return "InvalidLabel";
    case ErrorKind::EdgeNotFound: return "EdgeNotFound";
    case ErrorKind::StarNotCyclic: return "StarNotCyclic";
    case ErrorKind::EdgeAlreadyPresent: return "EdgeAlreadyPresent";
    case ErrorKind::SiteStale: return "SiteStale";
    case ErrorKind::WrongValence: return "WrongValence";
    case ErrorKind::PatternMismatch: return "PatternMismatch";
    case ErrorKind::TetAlreadyPresent: return "TetAlreadyPresent";
    case ErrorKind::LabelInUse: return "LabelInUse";
    case ErrorKind::TetNotFound: return "TetNotFound";
    case ErrorKind::WrongLinkValence: return "WrongLinkValence";
    case ErrorKind::ScriptError: return "ScriptError";
    case ErrorKind::GenericityFailed: return "GenericityFailed";
    case ErrorKind::NotRealizable: return "NotRealizable";
    case ErrorKind::DegenerateFace: return "DegenerateFace";
    case ErrorKind::MissingCoordinate: return "MissingCoordinate";
    case ErrorKind::StepUnstable: return "StepUnstable";
    case ErrorKind::NotBipyramid: return "NotBipyramid";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::SamplingFailed: return "SamplingFailed";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotAChainComplex: return "NotAChainComplex";
    case ErrorKind::NotAcyclic: return "NotAcyclic";
    case ErrorKind::SingularMinor: return "SingularMinor";
    case ErrorKind::ChainConditionFailed: return "ChainConditionFailed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownSeed: return "UnknownSeed";
  }
  return "Unknown";
}

}  // namespace pachner
