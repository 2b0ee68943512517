#pragma once

#include <stdexcept>
#include <string>

namespace coframe {

/// Failure codes shared by all modules; the CLI maps these to exit codes.
enum class Errc {
  NotSkew,
  Degenerate,
  OutOfDomain,
  SingularSystem,
  NotRank1,
  LowDimension,
  IdenticallyZero,
  SingularP,
  RankDeficient,
  SearchExhausted,
  Inconsistent,
  NoIndependentChoice,
  JacobianDegenerate,
  DegenerateCoframe,
  DegenerateHypothesis,
  NotAZero,
  FactorVanishes,
  ZeroVector,
  InvalidInput,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotSkew: return "NotSkew";
    case Errc::Degenerate: return "Degenerate";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::SingularSystem: return "SingularSystem";
    case Errc::NotRank1: return "NotRank1";
    case Errc::LowDimension: return "LowDimension";
    case Errc::IdenticallyZero: return "IdenticallyZero";
    case Errc::SingularP: return "SingularP";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::Inconsistent: return "Inconsistent";
    case Errc::NoIndependentChoice: return "NoIndependentChoice";
    case Errc::JacobianDegenerate: return "JacobianDegenerate";
    case Errc::DegenerateCoframe: return "DegenerateCoframe";
    case Errc::DegenerateHypothesis: return "DegenerateHypothesis";
    case Errc::NotAZero: return "NotAZero";
    case Errc::FactorVanishes: return "FactorVanishes";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace coframe
