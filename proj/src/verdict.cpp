#include <crformal/verdict.hpp>

namespace crformal {

const char* status_name(Status s) noexcept {
  switch (s) {
    case Status::CertifiedTrue:
      return "CertifiedTrue";
    case Status::CertifiedFalse:
      return "CertifiedFalse";
    case Status::UnknownAtTruncation:
      return "UnknownAtTruncation";
  }
  return "?";
}

Verdict Verdict::certified_true(Precision degree, std::string witness) {
  return Verdict{Status::CertifiedTrue, std::move(witness), std::nullopt, degree};
}

Verdict Verdict::certified_false(Precision degree, std::string witness,
                                 std::optional<MultiIndex> monomial) {
  return Verdict{Status::CertifiedFalse, std::move(witness), std::move(monomial), degree};
}

Verdict Verdict::unknown(Precision degree, std::string reason) {
  return Verdict{Status::UnknownAtTruncation, std::move(reason), std::nullopt, degree};
}

std::string Verdict::label() const {
  const std::string at = degree_used.is_exact() ? "" : "@" + std::to_string(degree_used.degree());
  switch (status) {
    case Status::CertifiedTrue:
      return "certified" + at;
    case Status::CertifiedFalse:
      return "false";
    case Status::UnknownAtTruncation:
      return "unknown" + (at.empty() ? std::string("@exact") : at);
  }
  return "?";
}

Verdict conjunction(const Verdict& a, const Verdict& b) {
  if (a.is_false()) return a;
  if (b.is_false()) return b;
  const Precision p = min(a.degree_used, b.degree_used);
  if (a.is_unknown()) return Verdict::unknown(p, a.witness);
  if (b.is_unknown()) return Verdict::unknown(p, b.witness);
  std::string w = a.witness;
  if (!b.witness.empty()) w += (w.empty() ? "" : "; ") + b.witness;
  return Verdict::certified_true(p, w);
}

}  // namespace crformal
