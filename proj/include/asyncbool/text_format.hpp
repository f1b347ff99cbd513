#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "asyncbool/bifurcation.hpp"
#include "asyncbool/boolean_core.hpp"
#include "asyncbool/conjugacy.hpp"
#include "asyncbool/omega.hpp"
#include "asyncbool/runs.hpp"

// Text formats. Bit strings list coordinate 1 first, so the table
// Phi(0,0)=(0,0), Phi(0,1)=(1,0), Phi(1,0)=(1,1), Phi(1,1)=(1,1) renders as
//
//   n=2
//   00 -> 00
//   10 -> 11
//   01 -> 10
//   11 -> 11
//
// Rows may appear in any order; '#' starts a comment; blank lines are ignored.
// Bijections use the same layout. Families start with "n=<n> m=<m>" followed by
// blocks "lambda=<bits>" of table rows. Progressive functions are one record
//
//   times: 0,1/2,1; prefix: 10; cycle: 01,11; period: 2
//
// where the prefix may be empty ("prefix: ;" or omitted).

namespace asyncbool {

enum class ParseErrorCode {
  kSyntax,
  kBadHeader,
  kWidthMismatch,
  kDuplicateRow,
  kMissingRow,
  kNotBijective,
  kCountMismatch,
  kNonIncreasingTimes,
  kBadPeriod,
  kNotProgressive,
};

const char* code_name(ParseErrorCode code);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorCode code, std::size_t line, std::size_t column, const std::string& message);

  ParseErrorCode code() const { return code_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  ParseErrorCode code_;
  std::size_t line_;
  std::size_t column_;
};

TruthTable parse_truth_table(std::string_view text);
std::string render_truth_table(const TruthTable& phi);

StateBijection parse_bijection(std::string_view text);
std::string render_bijection(const StateBijection& h);

ParamFamily parse_family(std::string_view text);
std::string render_family(const ParamFamily& f);

ProgressiveFunction parse_rho(std::string_view text);
std::string render_rho(const ProgressiveFunction& rho);

// Two bijection blocks introduced by "[h]" and "[h_prime]" header lines.
ConjugacyWitness parse_witness(std::string_view text);
std::string render_witness(const ConjugacyWitness& w);

}  // namespace asyncbool
