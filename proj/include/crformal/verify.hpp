#pragma once

#include <crformal/hypersurface.hpp>
#include <crformal/verdict.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace crformal {

/// Outcome of one theorem on one instance. Falsified means every hypothesis
/// was certified and a conclusion came back certified false.
enum class SuiteStatus { Confirmed, HypothesisNotCertified, Falsified, Inconclusive };

/// "Confirmed", "HypothesisNotCertified", "FALSIFIED", "Inconclusive".
const char* suite_status_name(SuiteStatus s) noexcept;

struct NamedVerdict {
  std::string name;
  Verdict verdict;
};

struct TheoremSuiteResult {
  std::string suite;
  std::string theorem;
  std::string instance;
  std::vector<NamedVerdict> hypotheses;
  std::vector<NamedVerdict> conclusions;
  SuiteStatus status = SuiteStatus::Inconclusive;
  std::string note;
};

/// Any uncertified hypothesis excludes the instance; otherwise the
/// conclusions decide.
SuiteStatus decide(const std::vector<NamedVerdict>& hypotheses, const std::vector<NamedVerdict>& conclusions);

struct SuiteOptions {
  int degree = 10;
  Convention convention = Convention::TwoI;
  std::uint64_t seed = 0;
};

std::vector<TheoremSuiteResult> suite_finite_type(const SuiteOptions& options);
std::vector<TheoremSuiteResult> suite_infinite_type(const SuiteOptions& options);
std::vector<TheoremSuiteResult> suite_easystuff(const SuiteOptions& options);

/// finite_type, infinite_type, easystuff.
std::vector<std::string> suite_names();
/// Throws InvalidArgument for an unknown name.
std::vector<TheoremSuiteResult> run_suite(const std::string& name, const SuiteOptions& options);

/// Verdict that A(z, chi) = r A(B(z), conj(B)(chi)) up to the known precision.
Verdict pullback_relation(const Series& a, const FormalMap& b, const Scalar& r);

}  // namespace crformal
