#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "regdiff/cover.hpp"
#include "regdiff/plmodel.hpp"

namespace regdiff::cli {

enum ExitCode { kOk = 0, kInputError = 2, kVerificationError = 3 };

struct Options {
  long p = 0;
  long n = 0;
  std::string poly;
  std::string format = "text";
  bool include_infinity = true;
  bool verify = true;
  bool timing = false;
};

/// The divisor of zeros of f: x if x | f, and f / x^m if nonconstant.
DivisorSpec divisor_from_poly(long p, const QPoly& f, bool include_infinity);

nlohmann::json model_report(const ModelVals& m, const RegularityReport& rep, const QPoly& f);
std::string model_text(const ModelVals& m, const RegularityReport& rep, const QPoly& f);
std::string tree_text(const ModelVals& m);

nlohmann::json differentials_report(const DifferentialsResult& r);
std::string differentials_text(const DifferentialsResult& r);

int cmd_model(const Options& o, std::ostream& out, std::ostream& err);
int cmd_tree(const Options& o, std::ostream& out, std::ostream& err);
int cmd_differentials(const Options& o, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace regdiff::cli
