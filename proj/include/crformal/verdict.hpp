#pragma once

#include <crformal/multi_index.hpp>
#include <crformal/series.hpp>

#include <optional>
#include <string>

namespace crformal {

enum class Status { CertifiedTrue, CertifiedFalse, UnknownAtTruncation };

const char* status_name(Status s) noexcept;

/// Three-valued answer to a question asked about truncated data.
///
/// `degree_used` records the truncation the answer rests on; an exact
/// precision means no truncation was involved.
struct Verdict {
  Status status = Status::UnknownAtTruncation;
  std::string witness;
  std::optional<MultiIndex> monomial;
  Precision degree_used = Precision::exact();

  static Verdict certified_true(Precision degree, std::string witness = {});
  static Verdict certified_false(Precision degree, std::string witness,
                                 std::optional<MultiIndex> monomial = std::nullopt);
  static Verdict unknown(Precision degree, std::string reason);

  bool is_true() const { return status == Status::CertifiedTrue; }
  bool is_false() const { return status == Status::CertifiedFalse; }
  bool is_unknown() const { return status == Status::UnknownAtTruncation; }

  /// "certified", "certified@D", "false" or "unknown@D".
  std::string label() const;
};

/// Both true -> true; any false -> false; otherwise unknown. Degrees are
/// combined with min().
Verdict conjunction(const Verdict& a, const Verdict& b);

}  // namespace crformal
